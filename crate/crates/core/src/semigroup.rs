//! Numerical semigroups, telescopic sequences, the Weierstrass semigroup at
//! the infinite point, and Riemann–Roch bases of `L(m·X_∞)` with an exact
//! evaluation-rank independence check.

use thiserror::Error;

use crate::curve::CurvePointSet;
use crate::tower::{FieldElem, TowerField};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive")]
    NonPositiveGenerator,
    #[error("generators have gcd {0}, expected 1")]
    GcdNotOne(u64),
    #[error("sequence is not telescopic")]
    NotTelescopic,
    #[error("m = {0} is a gap of the semigroup")]
    NotAMember(u64),
    #[error("basis of size {basis} cannot be certified on {points} points")]
    CannotCertify { basis: usize, points: usize },
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A numerical semigroup given by generators, with a membership table up to
/// `conductor + max(generators)` and the full (finite) gap list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    membership: Vec<bool>,
    gaps: Vec<u64>,
    conductor: u64,
}

impl NumericalSemigroup {
    /// Dynamic-programming closure of the generators. The table is grown
    /// until a run of `max(generators)` consecutive members appears; the
    /// start of the first such run is the conductor.
    pub fn from_generators(gens: &[u64]) -> Result<NumericalSemigroup, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::NonPositiveGenerator);
        }
        let g = gens.iter().copied().fold(0, gcd);
        if g != 1 {
            return Err(SemigroupError::GcdNotOne(g));
        }
        let mut generators: Vec<u64> = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let max_gen = *generators.last().unwrap() as usize;

        let mut bound = 4 * max_gen;
        loop {
            let mut mem = vec![false; bound + 1];
            mem[0] = true;
            for i in 1..=bound {
                mem[i] = generators
                    .iter()
                    .any(|&a| a as usize <= i && mem[i - a as usize]);
            }
            if let Some(c) = (0..=bound.saturating_sub(max_gen - 1))
                .find(|&c| mem[c..c + max_gen].iter().all(|&b| b))
            {
                mem.truncate(c + max_gen + 1);
                let gaps: Vec<u64> = (0..c as u64).filter(|&i| !mem[i as usize]).collect();
                return Ok(NumericalSemigroup {
                    generators,
                    membership: mem,
                    gaps,
                    conductor: c as u64,
                });
            }
            bound *= 2;
        }
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn contains(&self, m: u64) -> bool {
        if m >= self.conductor {
            true
        } else {
            self.membership[m as usize]
        }
    }

    /// Least c such that every integer ≥ c is a member.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn nongaps_up_to(&self, m: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=m).filter(|&v| self.contains(v))
    }
}

/// The gcd chain of a generator sequence and the telescopic verdict.
/// `d[i-1] = gcd(a₁, …, aᵢ)`; the convention `d₀ = 0` only enters the genus
/// formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelescopicData {
    pub seq: Vec<u64>,
    pub d: Vec<u64>,
    pub telescopic: bool,
}

/// Check the telescopic condition: for each i ≥ 2, `aᵢ/dᵢ` must lie in the
/// semigroup generated by `{a₁/d_{i−1}, …, a_{i−1}/d_{i−1}}`.
pub fn is_telescopic(seq: &[u64]) -> Result<TelescopicData, SemigroupError> {
    if seq.is_empty() {
        return Err(SemigroupError::EmptyGenerators);
    }
    if seq.contains(&0) {
        return Err(SemigroupError::NonPositiveGenerator);
    }
    let mut d = Vec::with_capacity(seq.len());
    let mut acc = 0u64;
    for &a in seq {
        acc = gcd(acc, a);
        d.push(acc);
    }
    if *d.last().unwrap() != 1 {
        return Err(SemigroupError::GcdNotOne(*d.last().unwrap()));
    }
    let mut telescopic = true;
    for i in 1..seq.len() {
        let prev_d = d[i - 1];
        let scaled: Vec<u64> = seq[..i].iter().map(|&a| a / prev_d).collect();
        let sub = NumericalSemigroup::from_generators(&scaled)?;
        if !sub.contains(seq[i] / d[i]) {
            telescopic = false;
            break;
        }
    }
    Ok(TelescopicData {
        seq: seq.to_vec(),
        d,
        telescopic,
    })
}

/// Closed-form genus of a telescopic semigroup:
/// `½(1 + Σᵢ (d_{i−1}/dᵢ − 1)·aᵢ)` with `d₀ = 0`, so the first term
/// contributes `−a₁`.
pub fn genus_telescopic(seq: &[u64]) -> Result<u64, SemigroupError> {
    let data = is_telescopic(seq)?;
    if !data.telescopic {
        return Err(SemigroupError::NotTelescopic);
    }
    let mut sum: i128 = 1 - data.seq[0] as i128;
    for i in 1..data.seq.len() {
        let ratio = (data.d[i - 1] / data.d[i]) as i128;
        sum += (ratio - 1) * data.seq[i] as i128;
    }
    debug_assert!(sum >= 0 && sum % 2 == 0);
    Ok((sum / 2) as u64)
}

/// Pole orders of y, z, x at the infinite point.
pub fn weierstrass_generators(n: u64) -> [u64; 3] {
    let n3 = n * n * n;
    [n3 - n * n + n, n3, n3 + 1]
}

/// The Weierstrass semigroup at the infinite point, generated by
/// `n³−n²+n, n³, n³+1`. Its gap count reproduces the curve genus.
pub fn weierstrass_semigroup(n: u64) -> NumericalSemigroup {
    assert!(n >= 2);
    NumericalSemigroup::from_generators(&weierstrass_generators(n))
        .expect("consecutive generators n^3, n^3+1 are coprime")
}

/// The unique bounded representation `m = Σ jᵢaᵢ` with
/// `0 ≤ jᵢ < d_{i−1}/dᵢ` for `i ≥ 2`, computed greedily from the last
/// generator down. Fails exactly on gaps.
pub fn decompose(seq: &[u64], m: u64) -> Result<Vec<u64>, SemigroupError> {
    let data = is_telescopic(seq)?;
    decompose_with(&data, m)
}

/// `decompose` against a precomputed gcd chain; use this when sweeping many
/// values over the same sequence.
pub fn decompose_with(data: &TelescopicData, m: u64) -> Result<Vec<u64>, SemigroupError> {
    if !data.telescopic {
        return Err(SemigroupError::NotTelescopic);
    }
    let seq = &data.seq;
    let k = seq.len();
    let mut j = vec![0u64; k];
    let mut r = m as i128;
    for i in (1..k).rev() {
        let bound = data.d[i - 1] / data.d[i];
        // jᵢ is pinned by (aᵢ/dᵢ)·jᵢ ≡ r/dᵢ (mod d_{i−1}/dᵢ).
        let a_scaled = (seq[i] / data.d[i]) % bound;
        let r_scaled = ((r / data.d[i] as i128) % bound as i128) as u64;
        let inv = mod_inverse(a_scaled % bound, bound);
        j[i] = (r_scaled * inv) % bound;
        r -= j[i] as i128 * seq[i] as i128;
        if r < 0 {
            return Err(SemigroupError::NotAMember(m));
        }
    }
    debug_assert_eq!(r % seq[0] as i128, 0);
    j[0] = (r / seq[0] as i128) as u64;
    Ok(j)
}

/// Inverse of `a` modulo `m` (gcd(a, m) = 1); extended Euclid.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse requires gcd 1");
    old_s.rem_euclid(m as i128) as u64
}

/// The order sequence at the infinite point, computed as
/// `{n³+1 − s : s a nongap ≤ n³+1}` sorted ascending.
pub fn order_sequence(n: u64) -> Vec<u64> {
    let n3 = n * n * n;
    let sg = weierstrass_semigroup(n);
    let mut orders: Vec<u64> = sg.nongaps_up_to(n3 + 1).map(|s| n3 + 1 - s).collect();
    orders.sort_unstable();
    orders
}

/// What the order sequence must be: `(0, 1, n²−n+1, n³+1)`.
pub fn expected_order_sequence(n: u64) -> [u64; 4] {
    [0, 1, n * n - n + 1, n * n * n + 1]
}

/// Pole order at the infinite point of the monomial `y^{j₁} z^{j₂} x^{j₃}`.
pub fn pole_order(n: u64, j: [u64; 3]) -> u64 {
    let [a1, a2, a3] = weierstrass_generators(n);
    j[0] * a1 + j[1] * a2 + j[2] * a3
}

/// Monomial basis of `L(m·X_∞)`: all `y^{j₁} z^{j₂} x^{j₃}` with pole order
/// at most `m`, `j₂ ≤ n²−n`, `j₃ ≤ n−1`. Sorted by pole order, which is
/// strictly increasing across the basis.
pub fn rr_basis(n: u64, m: u64) -> Vec<[u64; 3]> {
    assert!(n >= 2);
    let [a1, a2, a3] = weierstrass_generators(n);
    let mut basis = Vec::new();
    for j2 in 0..=(n * n - n) {
        let w2 = j2 * a2;
        if w2 > m {
            break;
        }
        for j3 in 0..n {
            let w23 = w2 + j3 * a3;
            if w23 > m {
                break;
            }
            for j1 in 0..=((m - w23) / a1) {
                basis.push([j1, j2, j3]);
            }
        }
    }
    basis.sort_unstable_by_key(|&j| pole_order(n, j));
    basis
}

/// Sizes of `rr_basis(n, m)` for every `m` in `0..=m_max`, computed in one
/// pass by bucketing the bounded monomials by pole order. Matches
/// `rr_basis(n, m).len()` entry by entry at a fraction of the cost.
pub fn rr_basis_size_profile(n: u64, m_max: u64) -> Vec<u64> {
    assert!(n >= 2);
    let [a1, a2, a3] = weierstrass_generators(n);
    let mut hist = vec![0u64; m_max as usize + 1];
    for j2 in 0..=(n * n - n) {
        let w2 = j2 * a2;
        if w2 > m_max {
            break;
        }
        for j3 in 0..n {
            let w23 = w2 + j3 * a3;
            if w23 > m_max {
                break;
            }
            for j1 in 0..=((m_max - w23) / a1) {
                hist[(w23 + j1 * a1) as usize] += 1;
            }
        }
    }
    let mut acc = 0;
    for v in hist.iter_mut() {
        acc += *v;
        *v = acc;
    }
    hist
}

/// Exact rank over `F_{q²}` of the evaluation matrix of the given monomials
/// at the affine points of the set. Starts from a prefix of the points and
/// grows it only while the verdict is still short of full rank, which never
/// changes the result: a full-rank submatrix certifies full rank.
pub fn evaluation_rank(
    t: &TowerField,
    monomials: &[[u64; 3]],
    set: &CurvePointSet,
) -> usize {
    let affine: Vec<[FieldElem; 3]> =
        set.points().iter().filter_map(|p| p.affine(t)).collect();
    if monomials.is_empty() || affine.is_empty() {
        return 0;
    }
    let eval = |j: [u64; 3], pt: [FieldElem; 3]| {
        let [x, y, z] = pt;
        t.mul(t.mul(t.pow(y, j[0]), t.pow(z, j[1])), t.pow(x, j[2]))
    };
    let mut ncols = (monomials.len() + 32).min(affine.len());
    loop {
        let rows: Vec<Vec<FieldElem>> = monomials
            .iter()
            .map(|&j| affine[..ncols].iter().map(|&pt| eval(j, pt)).collect())
            .collect();
        let rank = row_rank(t, rows);
        if rank == monomials.len() || ncols == affine.len() {
            return rank;
        }
        ncols = (ncols * 2).min(affine.len());
    }
}

fn row_rank(t: &TowerField, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let ncols = rows[0].len();
    let nrows = rows.len();
    let mut rank = 0;
    let mut col = 0;
    while rank < nrows && col < ncols {
        if let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(rank, pivot);
            let inv = t.inv(rows[rank][col]).expect("pivot is nonzero");
            for r in rank + 1..nrows {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = t.mul(rows[r][col], inv);
                for c in col..ncols {
                    let s = t.mul(factor, rows[rank][c]);
                    rows[r][c] = t.sub(rows[r][c], s);
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// True iff the `rr_basis(n, m)` monomials evaluate to linearly independent
/// vectors on the affine rational points. Errors when the basis is larger
/// than the number of evaluation points, since independence could then
/// never be certified.
pub fn rr_independence_check(
    t: &TowerField,
    m: u64,
    set: &CurvePointSet,
) -> Result<bool, SemigroupError> {
    let n = t.params().n;
    let basis = rr_basis(n, m);
    let affine_count = set.points().iter().filter(|p| !p.is_infinite()).count();
    if basis.len() > affine_count {
        return Err(SemigroupError::CannotCertify {
            basis: basis.len(),
            points: affine_count,
        });
    }
    Ok(evaluation_rank(t, &basis, set) == basis.len())
}
