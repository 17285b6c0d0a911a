//! Exact arithmetic in the field tower `F_p ⊂ F_n ⊂ F_{n²} ⊂ F_{q²}` with
//! `n = p^h` and `q = n³`.
//!
//! `F_{n²}` is realized as `F_p[X]/(g2)` for a monic irreducible `g2` of
//! degree `2h`, and `F_{q²}` as `F_{n²}[Y]/(g3)` for a monic irreducible
//! cubic `g3` (note `q² = (n²)³`). Both defining polynomials are the
//! lexicographically least irreducible candidates under a fixed coefficient
//! ordering, so two towers built for the same `(p, h)` are bit-identical.
//!
//! Elements of `F_{q²}` are indices encoding the nested coefficient vectors
//! in little-endian base `p`; multiplication, inversion and powering go
//! through discrete-log tables built from a deterministically chosen
//! generator of `F_{q²}*`.

use thiserror::Error;

/// Hard ceiling on `q²`; towers beyond this would need table space that no
/// check in this crate can consume anyway.
pub const MAX_FIELD_SIZE: u64 = 1 << 22;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("p = {0} is not prime")]
    NonPrime(u64),
    #[error("extension degree h must be at least 1")]
    ZeroExtensionDegree,
    #[error("field size q^2 = {q2} exceeds the limit {limit}")]
    SizeLimit { q2: u128, limit: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("subfield selector k = {0} must be 1 or 2")]
    BadSubfieldIndex(u32),
    #[error("m = {m} does not divide the group order {order}")]
    NotRootOrder { m: u64, order: u64 },
    #[error("n = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("digit vector has wrong length or a digit outside [0, p)")]
    BadDigits,
}

/// Compact identity of a tower: two towers with equal `(p, h)` are
/// interchangeable because construction is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TowerId(u32);

impl TowerId {
    fn new(p: u64, h: u32) -> Self {
        TowerId(((p as u32) << 8) | h)
    }
}

/// Sizes of every floor of the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerParams {
    pub p: u64,
    pub h: u32,
    pub n: u64,
    pub n2: u64,
    pub q: u64,
    pub q2: u64,
}

impl TowerParams {
    pub fn new(p: u64, h: u32) -> Result<Self, TowerError> {
        if h == 0 {
            return Err(TowerError::ZeroExtensionDegree);
        }
        if p < 2 {
            return Err(TowerError::NonPrime(p));
        }
        let mut q2_wide: u128 = 1;
        for _ in 0..6 * h {
            q2_wide *= p as u128;
            if q2_wide > MAX_FIELD_SIZE as u128 {
                return Err(TowerError::SizeLimit {
                    q2: q2_wide,
                    limit: MAX_FIELD_SIZE,
                });
            }
        }
        if !is_prime(p) {
            return Err(TowerError::NonPrime(p));
        }
        let n = p.pow(h);
        Ok(TowerParams {
            p,
            h,
            n,
            n2: n * n,
            q: n * n * n,
            q2: q2_wide as u64,
        })
    }

    /// Factor `n` as a prime power `p^h`.
    pub fn from_n(n: u64) -> Result<Self, TowerError> {
        if n < 2 {
            return Err(TowerError::NotPrimePower(n));
        }
        let mut p = 2;
        while p * p <= n && n % p != 0 {
            p += 1;
        }
        if p * p > n {
            p = n; // n itself is prime
        }
        let mut m = n;
        let mut h = 0;
        while m > 1 {
            if m % p != 0 {
                return Err(TowerError::NotPrimePower(n));
            }
            m /= p;
            h += 1;
        }
        TowerParams::new(p, h)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_{n²}`, as an index encoding its little-endian `F_p`
/// coefficient vector of length `2h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubElem(u16);

impl SubElem {
    pub const ZERO: SubElem = SubElem(0);
    pub const ONE: SubElem = SubElem(1);

    pub fn index(self) -> u64 {
        self.0 as u64
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// An element of `F_{q²}`, tagged with the identity of its owning tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    enc: u32,
    id: TowerId,
}

impl FieldElem {
    /// Integer encoding: the little-endian base-p digit vector read as an
    /// integer.
    pub fn enc(self) -> u64 {
        self.enc as u64
    }

    pub fn is_zero(self) -> bool {
        self.enc == 0
    }
}

const LOG_ZERO: u32 = u32::MAX;

/// The arithmetic context: defining polynomials, subfield tables and
/// discrete-log tables for `F_{q²}`. Immutable after construction.
pub struct TowerField {
    params: TowerParams,
    id: TowerId,
    /// Monic irreducible of degree 2h over F_p (little-endian, leading 1).
    g2: Vec<u64>,
    /// Monic irreducible cubic over F_{n²} (little-endian, leading 1).
    g3: Vec<SubElem>,
    // F_{n²} tables, flattened n² × n².
    sub_add_t: Vec<u16>,
    sub_mul_t: Vec<u16>,
    sub_neg_t: Vec<u16>,
    sub_inv_t: Vec<u16>,
    // Y³ and Y⁴ reduced mod g3, as coefficient triples.
    y3red: [u16; 3],
    y4red: [u16; 3],
    gen: u32,
    exp_t: Vec<u32>,
    log_t: Vec<u32>,
}

impl TowerField {
    /// Build the tower for `(p, h)`. Construction is deterministic: repeated
    /// calls yield identical defining polynomials and generator.
    pub fn new(p: u64, h: u32) -> Result<TowerField, TowerError> {
        let params = TowerParams::new(p, h)?;
        let deg2 = 2 * h as usize;
        let g2 = least_irreducible_fp(p, deg2);

        let n2 = params.n2 as usize;
        let mut sub_add_t = vec![0u16; n2 * n2];
        let mut sub_mul_t = vec![0u16; n2 * n2];
        let mut sub_neg_t = vec![0u16; n2];
        let mut sub_inv_t = vec![0u16; n2];
        for i in 0..n2 {
            let di = fp_digits(i as u64, p, deg2);
            let neg: Vec<u64> = di.iter().map(|&c| (p - c) % p).collect();
            sub_neg_t[i] = fp_index(&neg, p) as u16;
            for j in 0..n2 {
                let dj = fp_digits(j as u64, p, deg2);
                let sum: Vec<u64> = di.iter().zip(&dj).map(|(&a, &b)| (a + b) % p).collect();
                sub_add_t[i * n2 + j] = fp_index(&sum, p) as u16;
                let prod = fp_rem(&fp_mul(&di, &dj, p), &g2, p);
                sub_mul_t[i * n2 + j] = fp_index(&prod, p) as u16;
            }
        }
        for i in 1..n2 {
            for j in 1..n2 {
                if sub_mul_t[i * n2 + j] == 1 {
                    sub_inv_t[i] = j as u16;
                }
            }
        }

        let g3 = least_irreducible_cubic(n2, &sub_mul_t, &sub_add_t);
        // Y³ ≡ −(g3₂Y² + g3₁Y + g3₀), Y⁴ ≡ Y·Y³ reduced again.
        let y3red = [
            sub_neg_t[g3[0].0 as usize],
            sub_neg_t[g3[1].0 as usize],
            sub_neg_t[g3[2].0 as usize],
        ];
        let mul = |a: u16, b: u16| sub_mul_t[a as usize * n2 + b as usize];
        let add = |a: u16, b: u16| sub_add_t[a as usize * n2 + b as usize];
        let y4red = [
            mul(y3red[2], y3red[0]),
            add(y3red[0], mul(y3red[2], y3red[1])),
            add(y3red[1], mul(y3red[2], y3red[2])),
        ];

        let mut tower = TowerField {
            id: TowerId::new(p, h),
            params,
            g2,
            g3: g3.to_vec(),
            sub_add_t,
            sub_mul_t,
            sub_neg_t,
            sub_inv_t,
            y3red,
            y4red,
            gen: 0,
            exp_t: Vec::new(),
            log_t: Vec::new(),
        };
        tower.gen = tower.find_generator();
        tower.fill_log_tables();
        Ok(tower)
    }

    /// Build the tower for `n = p^h` given as a single prime power.
    pub fn from_n(n: u64) -> Result<TowerField, TowerError> {
        let params = TowerParams::from_n(n)?;
        TowerField::new(params.p, params.h)
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    pub fn id(&self) -> TowerId {
        self.id
    }

    pub fn g2(&self) -> &[u64] {
        &self.g2
    }

    pub fn g3(&self) -> &[SubElem] {
        &self.g3
    }

    /// g3 with each `F_{n²}` coefficient expanded to its base-p digits.
    pub fn g3_digits(&self) -> Vec<Vec<u64>> {
        self.g3
            .iter()
            .map(|c| fp_digits(c.0 as u64, self.params.p, 2 * self.params.h as usize))
            .collect()
    }

    // ---- F_{n²} operations ----

    pub fn sub_from_index(&self, i: u64) -> SubElem {
        assert!(i < self.params.n2, "subfield index out of range");
        SubElem(i as u16)
    }

    pub fn sub_elements(&self) -> impl Iterator<Item = SubElem> {
        (0..self.params.n2 as u16).map(SubElem)
    }

    pub fn sub_add(&self, a: SubElem, b: SubElem) -> SubElem {
        SubElem(self.sub_add_t[a.0 as usize * self.params.n2 as usize + b.0 as usize])
    }

    pub fn sub_mul(&self, a: SubElem, b: SubElem) -> SubElem {
        SubElem(self.sub_mul_t[a.0 as usize * self.params.n2 as usize + b.0 as usize])
    }

    pub fn sub_neg(&self, a: SubElem) -> SubElem {
        SubElem(self.sub_neg_t[a.0 as usize])
    }

    pub fn sub_sub(&self, a: SubElem, b: SubElem) -> SubElem {
        self.sub_add(a, self.sub_neg(b))
    }

    pub fn sub_inv(&self, a: SubElem) -> Result<SubElem, TowerError> {
        if a.is_zero() {
            return Err(TowerError::ZeroInverse);
        }
        Ok(SubElem(self.sub_inv_t[a.0 as usize]))
    }

    pub fn sub_pow(&self, a: SubElem, mut e: u64) -> SubElem {
        let mut base = a;
        let mut acc = SubElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.sub_mul(acc, base);
            }
            base = self.sub_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The image of an integer under `F_p → F_{n²}`.
    pub fn sub_from_int(&self, v: u64) -> SubElem {
        SubElem((v % self.params.p) as u16)
    }

    pub fn sub_digits(&self, a: SubElem) -> Vec<u64> {
        fp_digits(a.0 as u64, self.params.p, 2 * self.params.h as usize)
    }

    // ---- F_{q²} operations ----

    pub fn zero(&self) -> FieldElem {
        FieldElem { enc: 0, id: self.id }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem { enc: 1, id: self.id }
    }

    pub fn generator(&self) -> FieldElem {
        FieldElem { enc: self.gen, id: self.id }
    }

    pub fn from_enc(&self, enc: u64) -> FieldElem {
        assert!(enc < self.params.q2, "element encoding out of range");
        FieldElem { enc: enc as u32, id: self.id }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let id = self.id;
        (0..self.params.q2 as u32).map(move |enc| FieldElem { enc, id })
    }

    /// Embed `F_{n²}` into `F_{q²}` as the constant coefficient.
    pub fn embed(&self, a: SubElem) -> FieldElem {
        FieldElem { enc: a.0 as u32, id: self.id }
    }

    /// Inverse of `embed` where defined.
    pub fn project(&self, x: FieldElem) -> Option<SubElem> {
        self.check(x);
        if (x.enc as u64) < self.params.n2 {
            Some(SubElem(x.enc as u16))
        } else {
            None
        }
    }

    #[inline]
    fn check(&self, x: FieldElem) {
        debug_assert_eq!(x.id, self.id, "element belongs to a different tower");
    }

    #[inline]
    fn split(&self, enc: u32) -> (u16, u16, u16) {
        let n2 = self.params.n2 as u32;
        (
            (enc % n2) as u16,
            ((enc / n2) % n2) as u16,
            (enc / (n2 * n2)) as u16,
        )
    }

    #[inline]
    fn join(&self, c: (u16, u16, u16)) -> u32 {
        let n2 = self.params.n2 as u32;
        c.0 as u32 + c.1 as u32 * n2 + c.2 as u32 * n2 * n2
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        let (a0, a1, a2) = self.split(a.enc);
        let (b0, b1, b2) = self.split(b.enc);
        let n2 = self.params.n2 as usize;
        let t = &self.sub_add_t;
        let enc = self.join((
            t[a0 as usize * n2 + b0 as usize],
            t[a1 as usize * n2 + b1 as usize],
            t[a2 as usize * n2 + b2 as usize],
        ));
        FieldElem { enc, id: self.id }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.check(a);
        let (a0, a1, a2) = self.split(a.enc);
        let t = &self.sub_neg_t;
        let enc = self.join((t[a0 as usize], t[a1 as usize], t[a2 as usize]));
        FieldElem { enc, id: self.id }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.check(a);
        self.check(b);
        if a.enc == 0 || b.enc == 0 {
            return self.zero();
        }
        let ord = self.params.q2 - 1;
        let k = (self.log_t[a.enc as usize] as u64 + self.log_t[b.enc as usize] as u64) % ord;
        FieldElem { enc: self.exp_t[k as usize], id: self.id }
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem, TowerError> {
        self.check(a);
        if a.enc == 0 {
            return Err(TowerError::ZeroInverse);
        }
        let ord = self.params.q2 - 1;
        let k = (ord - self.log_t[a.enc as usize] as u64) % ord;
        Ok(FieldElem { enc: self.exp_t[k as usize], id: self.id })
    }

    /// `a^e` with the convention `0^0 = 1`.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        self.check(a);
        if a.enc == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let ord = self.params.q2 - 1;
        let k = (self.log_t[a.enc as usize] as u64 * (e % ord)) % ord;
        FieldElem { enc: self.exp_t[k as usize], id: self.id }
    }

    /// Discrete log with respect to the fixed generator; `None` for zero.
    pub fn log(&self, a: FieldElem) -> Option<u64> {
        self.check(a);
        if a.enc == 0 {
            None
        } else {
            Some(self.log_t[a.enc as usize] as u64)
        }
    }

    pub fn exp(&self, k: u64) -> FieldElem {
        let ord = self.params.q2 - 1;
        FieldElem { enc: self.exp_t[(k % ord) as usize], id: self.id }
    }

    /// Membership in `F_{n^k}` for `k ∈ {1, 2}`, tested as `x^(n^k) = x`.
    pub fn in_subfield(&self, x: FieldElem, k: u32) -> Result<bool, TowerError> {
        if k != 1 && k != 2 {
            return Err(TowerError::BadSubfieldIndex(k));
        }
        let e = if k == 1 { self.params.n } else { self.params.n2 };
        Ok(self.pow(x, e) == x)
    }

    /// A fixed element of multiplicative order exactly `m`; requires
    /// `m | q² − 1`.
    pub fn root_of_unity(&self, m: u64) -> Result<FieldElem, TowerError> {
        let ord = self.params.q2 - 1;
        if m == 0 || ord % m != 0 {
            return Err(TowerError::NotRootOrder { m, order: ord });
        }
        Ok(self.exp(ord / m))
    }

    /// Flat little-endian base-p digit vector of length `6h`.
    pub fn digits(&self, x: FieldElem) -> Vec<u64> {
        self.check(x);
        fp_digits(x.enc as u64, self.params.p, 6 * self.params.h as usize)
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<FieldElem, TowerError> {
        if digits.len() != 6 * self.params.h as usize
            || digits.iter().any(|&d| d >= self.params.p)
        {
            return Err(TowerError::BadDigits);
        }
        Ok(FieldElem { enc: fp_index(digits, self.params.p) as u32, id: self.id })
    }

    // ---- construction internals ----

    fn tri_mul(&self, a: (u16, u16, u16), b: (u16, u16, u16)) -> (u16, u16, u16) {
        let n2 = self.params.n2 as usize;
        let mul = |x: u16, y: u16| self.sub_mul_t[x as usize * n2 + y as usize];
        let add = |x: u16, y: u16| self.sub_add_t[x as usize * n2 + y as usize];
        let av = [a.0, a.1, a.2];
        let bv = [b.0, b.1, b.2];
        let mut c = [0u16; 5];
        for i in 0..3 {
            for j in 0..3 {
                c[i + j] = add(c[i + j], mul(av[i], bv[j]));
            }
        }
        let mut r = [c[0], c[1], c[2]];
        for i in 0..3 {
            r[i] = add(r[i], mul(c[3], self.y3red[i]));
            r[i] = add(r[i], mul(c[4], self.y4red[i]));
        }
        (r[0], r[1], r[2])
    }

    fn tri_pow(&self, a: (u16, u16, u16), mut e: u64) -> (u16, u16, u16) {
        let mut base = a;
        let mut acc = (1u16, 0u16, 0u16);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.tri_mul(acc, base);
            }
            base = self.tri_mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least element of `F_{q²}*` (by integer encoding) whose multiplicative
    /// order is exactly `q² − 1`.
    fn find_generator(&self) -> u32 {
        let ord = self.params.q2 - 1;
        let primes = prime_factors(ord);
        for enc in 1..self.params.q2 as u32 {
            let t = self.split(enc);
            if primes
                .iter()
                .all(|&r| self.tri_pow(t, ord / r) != (1, 0, 0))
            {
                return enc;
            }
        }
        unreachable!("F_{{q^2}}* is cyclic, so a generator exists");
    }

    fn fill_log_tables(&mut self) {
        let ord = (self.params.q2 - 1) as usize;
        let mut exp_t = vec![0u32; ord];
        let mut log_t = vec![LOG_ZERO; self.params.q2 as usize];
        let g = self.split(self.gen);
        let mut cur = (1u16, 0u16, 0u16);
        for (k, slot) in exp_t.iter_mut().enumerate() {
            let enc = self.join(cur);
            *slot = enc;
            log_t[enc as usize] = k as u32;
            cur = self.tri_mul(cur, g);
        }
        debug_assert_eq!(cur, (1, 0, 0), "generator order is not q^2 - 1");
        self.exp_t = exp_t;
        self.log_t = log_t;
    }
}

// ---- dense polynomial arithmetic over F_p (construction only) ----

fn fp_digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    debug_assert_eq!(v, 0);
    out
}

fn fp_index(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` by a monic `m`.
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p * lead - (lead * mi) % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Irreducibility over F_p by exhaustive trial division: monic `f` of degree
/// `d` is irreducible iff no monic polynomial of degree `1..=d/2` divides it.
fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    for deg in 1..=d / 2 {
        for m in 0..p.pow(deg as u32) {
            let mut div = fp_digits(m, p, deg);
            div.push(1);
            if fp_rem(f, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically least monic irreducible of degree `d` over F_p,
/// comparing coefficient tuples `(c₀, …, c_{d−1})` from the constant term up.
fn least_irreducible_fp(p: u64, d: usize) -> Vec<u64> {
    let total = p.pow(d as u32);
    for m in 0..total {
        // c₀ is the most significant digit of the candidate counter, so
        // ascending m is ascending lexicographic order on (c₀, …, c_{d−1}).
        let mut coeffs = vec![0u64; d + 1];
        let mut v = m;
        for j in (0..d).rev() {
            coeffs[d - 1 - j] = v / p.pow(j as u32);
            v %= p.pow(j as u32);
        }
        coeffs[d] = 1;
        if fp_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

/// The lexicographically least monic cubic over `F_{n²}` without roots,
/// comparing `(c₀, c₁, c₂)` with coefficients ordered by their index. A cubic
/// with no roots is irreducible.
fn least_irreducible_cubic(n2: usize, mul_t: &[u16], add_t: &[u16]) -> [SubElem; 4] {
    let mul = |a: u16, b: u16| mul_t[a as usize * n2 + b as usize];
    let add = |a: u16, b: u16| add_t[a as usize * n2 + b as usize];
    for c0 in 0..n2 as u16 {
        for c1 in 0..n2 as u16 {
            'cand: for c2 in 0..n2 as u16 {
                for x in 0..n2 as u16 {
                    // Horner: ((x + c2)·x + c1)·x + c0
                    let v = add(mul(add(mul(add(x, c2), x), c1), x), c0);
                    if v == 0 {
                        continue 'cand;
                    }
                }
                return [SubElem(c0), SubElem(c1), SubElem(c2), SubElem(1)];
            }
        }
    }
    unreachable!("irreducible cubics exist over every finite field");
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_params_validation() {
        assert_eq!(TowerParams::new(4, 1).unwrap_err(), TowerError::NonPrime(4));
        assert_eq!(
            TowerParams::new(2, 0).unwrap_err(),
            TowerError::ZeroExtensionDegree
        );
        assert!(matches!(
            TowerParams::new(2, 8).unwrap_err(),
            TowerError::SizeLimit { .. }
        ));
        assert!(matches!(
            TowerParams::new(1_000_003, 1).unwrap_err(),
            TowerError::SizeLimit { .. }
        ));
        let t = TowerParams::new(3, 1).unwrap();
        assert_eq!((t.n, t.n2, t.q, t.q2), (3, 9, 27, 729));
    }

    #[test]
    fn prime_power_factorization() {
        assert_eq!(TowerParams::from_n(8).unwrap().p, 2);
        assert_eq!(TowerParams::from_n(8).unwrap().h, 3);
        assert_eq!(TowerParams::from_n(9).unwrap().h, 2);
        assert_eq!(TowerParams::from_n(7).unwrap().h, 1);
        assert_eq!(
            TowerParams::from_n(6).unwrap_err(),
            TowerError::NotPrimePower(6)
        );
        assert_eq!(
            TowerParams::from_n(12).unwrap_err(),
            TowerError::NotPrimePower(12)
        );
        assert_eq!(
            TowerParams::from_n(1).unwrap_err(),
            TowerError::NotPrimePower(1)
        );
    }

    #[test]
    fn f4_defining_polynomial_is_unique_quadratic() {
        // Only one monic irreducible quadratic exists over F_2.
        let t = TowerField::new(2, 1).unwrap();
        assert_eq!(t.g2(), &[1, 1, 1]);
    }

    #[test]
    fn f9_defining_polynomial_matches_exhaustive_oracle() {
        // Oracle: scan the 9 monic quadratics over F_3 in lexicographic
        // order (constant coefficient first) and keep the first with no
        // root in F_3.
        let p = 3u64;
        let mut expected = None;
        'outer: for c0 in 0..p {
            for c1 in 0..p {
                let has_root = (0..p).any(|x| (x * x + c1 * x + c0) % p == 0);
                if !has_root {
                    expected = Some(vec![c0, c1, 1]);
                    break 'outer;
                }
            }
        }
        let expected = expected.unwrap();
        assert_eq!(expected, vec![1, 0, 1]); // X² + 1, frozen
        let t = TowerField::new(3, 1).unwrap();
        assert_eq!(t.g2(), expected.as_slice());
    }

    #[test]
    fn f64_cubic_matches_exhaustive_oracle() {
        // Oracle: rebuild F_4 arithmetic from the known g2 = X²+X+1 and scan
        // all 64 monic cubics in lexicographic order for the first without a
        // root in F_4.
        let f4_mul = |a: u64, b: u64| -> u64 {
            // residues 0,1,u,u+1 with u² = u+1
            let table = [
                [0, 0, 0, 0],
                [0, 1, 2, 3],
                [0, 2, 3, 1],
                [0, 3, 1, 2],
            ];
            table[a as usize][b as usize]
        };
        let f4_add = |a: u64, b: u64| a ^ b;
        let mut expected = None;
        'outer: for c0 in 0..4 {
            for c1 in 0..4 {
                for c2 in 0..4 {
                    let has_root = (0..4).any(|x| {
                        let x2 = f4_mul(x, x);
                        let x3 = f4_mul(x2, x);
                        f4_add(f4_add(x3, f4_mul(c2, x2)), f4_add(f4_mul(c1, x), c0)) == 0
                    });
                    if !has_root {
                        expected = Some([c0, c1, c2, 1]);
                        break 'outer;
                    }
                }
            }
        }
        let expected = expected.unwrap();
        assert_eq!(expected, [1, 0, 1, 1]); // X³ + X² + 1, frozen
        let t = TowerField::new(2, 1).unwrap();
        let got: Vec<u64> = t.g3().iter().map(|c| c.index()).collect();
        assert_eq!(got, expected.to_vec());
    }

    #[test]
    fn construction_is_deterministic() {
        for (p, h) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let a = TowerField::new(p, h).unwrap();
            let b = TowerField::new(p, h).unwrap();
            assert_eq!(a.g2(), b.g2());
            assert_eq!(a.g3(), b.g3());
            assert_eq!(a.generator(), b.generator());
        }
    }

    #[test]
    fn field_axioms_exhaustive_f64() {
        let t = TowerField::new(2, 1).unwrap();
        let all: Vec<FieldElem> = t.elements().collect();
        for &x in &all {
            for &y in &all {
                assert_eq!(t.add(x, y), t.add(y, x));
                assert_eq!(t.mul(x, y), t.mul(y, x));
                for &z in &all {
                    assert_eq!(t.add(t.add(x, y), z), t.add(x, t.add(y, z)));
                    assert_eq!(t.mul(t.mul(x, y), z), t.mul(x, t.mul(y, z)));
                    assert_eq!(
                        t.mul(x, t.add(y, z)),
                        t.add(t.mul(x, y), t.mul(x, z))
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive_f64() {
        let t = TowerField::new(2, 1).unwrap();
        let n = t.params().n;
        for x in t.elements() {
            for y in t.elements() {
                assert_eq!(
                    t.pow(t.add(x, y), n),
                    t.add(t.pow(x, n), t.pow(y, n))
                );
            }
        }
    }

    #[test]
    fn inversion() {
        let t = TowerField::new(2, 1).unwrap();
        assert_eq!(t.inv(t.one()).unwrap(), t.one());
        // In F_4 with u² + u + 1 = 0: inv(u) = u + 1.
        let u = t.from_enc(2);
        assert_eq!(t.inv(u).unwrap(), t.from_enc(3));
        for x in t.elements().skip(1) {
            assert_eq!(t.mul(x, t.inv(x).unwrap()), t.one());
        }
        assert_eq!(t.inv(t.zero()).unwrap_err(), TowerError::ZeroInverse);
    }

    #[test]
    fn powers() {
        let t = TowerField::new(2, 1).unwrap();
        let q2 = t.params().q2;
        for x in t.elements() {
            assert_eq!(t.pow(x, q2), x);
        }
        assert_eq!(t.pow(t.zero(), 0), t.one());
        let u = t.from_enc(2);
        assert_eq!(t.pow(u, 2), t.from_enc(3));
        // Generator order is exactly q² − 1 = 63 = 3² · 7.
        let g = t.generator();
        assert_eq!(t.pow(g, 63), t.one());
        for r in [3u64, 7] {
            assert_ne!(t.pow(g, 63 / r), t.one());
        }
    }

    #[test]
    fn subfield_membership() {
        for n in [2u64, 3] {
            let t = TowerField::from_n(n).unwrap();
            assert!(t.in_subfield(t.zero(), 1).unwrap());
            assert!(t.in_subfield(t.zero(), 2).unwrap());
            for k in [1u32, 2] {
                let count = t
                    .elements()
                    .filter(|&x| t.in_subfield(x, k).unwrap())
                    .count() as u64;
                assert_eq!(count, n.pow(k));
            }
        }
        let t = TowerField::new(2, 1).unwrap();
        let g = t.generator();
        assert!(!t.in_subfield(g, 1).unwrap());
        assert!(!t.in_subfield(g, 2).unwrap());
        assert_eq!(
            t.in_subfield(g, 3).unwrap_err(),
            TowerError::BadSubfieldIndex(3)
        );
    }

    #[test]
    fn roots_of_unity() {
        let t = TowerField::new(2, 1).unwrap();
        assert_eq!(t.root_of_unity(1).unwrap(), t.one());
        let rho = t.root_of_unity(9).unwrap();
        let mut acc = t.one();
        for k in 1..9 {
            acc = t.mul(acc, rho);
            if k < 9 {
                assert_ne!(acc, t.one(), "order divides {k}");
            }
        }
        assert_eq!(t.pow(rho, 9), t.one());
        assert!(matches!(
            t.root_of_unity(5).unwrap_err(),
            TowerError::NotRootOrder { m: 5, .. }
        ));
    }

    #[test]
    fn digit_serialization_round_trip() {
        for n in [2u64, 3, 4] {
            let t = TowerField::from_n(n).unwrap();
            let len = 6 * t.params().h as usize;
            for x in t.elements() {
                let d = t.digits(x);
                assert_eq!(d.len(), len);
                assert!(d.iter().all(|&v| v < t.params().p));
                assert_eq!(t.from_digits(&d).unwrap(), x);
            }
        }
        let t = TowerField::new(2, 1).unwrap();
        assert_eq!(t.from_digits(&[0, 1]).unwrap_err(), TowerError::BadDigits);
        assert_eq!(
            t.from_digits(&[2, 0, 0, 0, 0, 0]).unwrap_err(),
            TowerError::BadDigits
        );
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let t = TowerField::new(3, 1).unwrap();
        for a in t.sub_elements() {
            for b in t.sub_elements() {
                assert_eq!(
                    t.embed(t.sub_add(a, b)),
                    t.add(t.embed(a), t.embed(b))
                );
                assert_eq!(
                    t.embed(t.sub_mul(a, b)),
                    t.mul(t.embed(a), t.embed(b))
                );
            }
            assert_eq!(t.project(t.embed(a)), Some(a));
        }
    }
}
