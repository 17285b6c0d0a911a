//! Dense univariate polynomials over `F_{n²}` and mechanical verification of
//! the three telescoping identities behind the curve construction.
//!
//! Everything is exact: schoolbook multiplication, no rounding, no hashing.
//! The largest products (n = 9) stay well below a million coefficient
//! operations, so nothing fancier is warranted.

use crate::tower::{SubElem, TowerField};

/// Polynomial over `F_{n²}`, coefficient at index `i` belonging to degree
/// `i`. Trailing zeros are always trimmed, so the zero polynomial is the
/// empty vector and `degree()` is `None` for it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<SubElem>,
}

impl UniPoly {
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly { coeffs: vec![SubElem::ONE] }
    }

    pub fn from_coeffs(mut coeffs: Vec<SubElem>) -> UniPoly {
        while coeffs.last() == Some(&SubElem::ZERO) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// `c · X^d`.
    pub fn monomial(c: SubElem, d: usize) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![SubElem::ZERO; d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    /// `X^d`.
    pub fn x_pow(d: usize) -> UniPoly {
        UniPoly::monomial(SubElem::ONE, d)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[SubElem] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> SubElem {
        self.coeffs.get(d).copied().unwrap_or(SubElem::ZERO)
    }

    pub fn add(&self, other: &UniPoly, t: &TowerField) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(t.sub_add(self.coeff(i), other.coeff(i)));
        }
        UniPoly::from_coeffs(out)
    }

    pub fn neg(&self, t: &TowerField) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|&c| t.sub_neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly, t: &TowerField) -> UniPoly {
        self.add(&other.neg(t), t)
    }

    pub fn mul(&self, other: &UniPoly, t: &TowerField) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![SubElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = t.sub_add(out[i + j], t.sub_mul(a, b));
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u64, t: &TowerField) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, t);
            }
            base = base.mul(&base, t);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a point of `F_{n²}`.
    pub fn eval_sub(&self, x: SubElem, t: &TowerField) -> SubElem {
        let mut acc = SubElem::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = t.sub_add(t.sub_mul(acc, x), c);
        }
        acc
    }

    /// Evaluate at a point of `F_{q²}`, embedding the coefficients.
    pub fn eval_ext(&self, x: crate::tower::FieldElem, t: &TowerField) -> crate::tower::FieldElem {
        let mut acc = t.zero();
        for &c in self.coeffs.iter().rev() {
            acc = t.add(t.mul(acc, x), t.embed(c));
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self, t: &TowerField) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            // multiply by the image of i in F_p
            let factor = t.sub_from_int(i as u64);
            out.push(t.sub_mul(c, factor));
        }
        UniPoly::from_coeffs(out)
    }
}

/// The alternating-sign polynomial `h(X) = Σ_{i=0}^n (−1)^{i+1} X^{i(n−1)}`
/// with coefficients read in `F_{n²}`. Degree `n² − n`, constant term `−1`.
pub fn build_h(t: &TowerField) -> UniPoly {
    let n = t.params().n;
    let mut coeffs = vec![SubElem::ZERO; (n * (n - 1) + 1) as usize];
    let one = SubElem::ONE;
    let minus_one = t.sub_neg(one);
    for i in 0..=n {
        let sign = if i % 2 == 1 { one } else { minus_one };
        coeffs[(i * (n - 1)) as usize] = sign;
    }
    UniPoly::from_coeffs(coeffs)
}

/// Outcome of checking the three exact identities in `F_{n²}[X]`:
///
///   eq2: X^{n²} − X = (X^n + X)·h(X)
///   eq3: X^{n³} + X − (X^n + X)^{n²−n+1} = (X^n + X)·h(X)^{n+1}
///   eq4: (X^n − X)^n (X^{n³} − X + (X^n − X)^{n²−n+1}) = (X^{n²} − X)^{n+1}
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    pub eq2: bool,
    pub eq3: bool,
    pub eq4: bool,
}

impl IdentityCheck {
    pub fn all(&self) -> bool {
        self.eq2 && self.eq3 && self.eq4
    }
}

pub fn verify_identities(t: &TowerField) -> IdentityCheck {
    let n = t.params().n;
    let h = build_h(t);

    let x = UniPoly::x_pow(1);
    let x_n = UniPoly::x_pow(n as usize);
    let x_n2 = UniPoly::x_pow((n * n) as usize);
    let x_n3 = UniPoly::x_pow((n * n * n) as usize);
    let xp = x_n.add(&x, t); // X^n + X
    let xm = x_n.sub(&x, t); // X^n − X
    let m = n * n - n + 1;

    let eq2 = x_n2.sub(&x, t) == xp.mul(&h, t);

    let lhs3 = x_n3.add(&x, t).sub(&xp.pow(m, t), t);
    let rhs3 = xp.mul(&h.pow(n + 1, t), t);
    let eq3 = lhs3 == rhs3;

    let lhs4 = xm
        .pow(n, t)
        .mul(&x_n3.sub(&x, t).add(&xm.pow(m, t), t), t);
    let rhs4 = x_n2.sub(&x, t).pow(n + 1, t);
    let eq4 = lhs4 == rhs4;

    IdentityCheck { eq2, eq3, eq4 }
}
