//! Quotients of the curve by the cyclic subgroups `C_d ≤ C_{n²−n+1}`: genus
//! and induced automorphism count per divisor, with the tame Hurwitz
//! identity re-verified row by row and the `|G₁| > 24g₁²` size criterion.

use crate::aut::full_aut_order;

/// A reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    fn new(num: u64, den: u64) -> Ratio {
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One quotient curve `X/C_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientRow {
    pub d: u64,
    pub g1: u64,
    pub g1_order: u64,
    /// `|G₁| / (24·g₁²)`, reduced; `None` when `g₁ = 0`.
    pub ratio: Option<Ratio>,
    /// `|G₁| > 24·g₁²`; vacuously true when `g₁ = 0`.
    pub large: bool,
    pub vacuous: bool,
}

/// Divisors of `v`, ascending.
pub fn divisors(v: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=v).filter(|d| v % d == 0).collect();
    out.sort_unstable();
    out
}

/// The tame Hurwitz identity for the degree-d cyclic quotient:
/// `(n³+1)(n²−2) = d(2g₁−2) + (d−1)(n³+1)`.
pub fn hurwitz_identity_holds(n: u64, d: u64, g1: u64) -> bool {
    let n3 = (n * n * n) as i128;
    let lhs = (n3 + 1) * (n * n - 2) as i128;
    lhs == d as i128 * (2 * g1 as i128 - 2) + (d as i128 - 1) * (n3 + 1)
}

/// One row per divisor `d` of `n²−n+1`:
/// `g₁ = ½((n³+1)(n²−d−1)/d + 2)` and `|G₁| = |Aut|/d`.
pub fn quotient_table(n: u64) -> Vec<QuotientRow> {
    assert!(n >= 2);
    let n3 = n * n * n;
    divisors(n * n - n + 1)
        .into_iter()
        .map(|d| {
            // d | n²−n+1 | n³+1, so the division is exact.
            debug_assert_eq!((n3 + 1) % d, 0);
            let t = (n3 + 1) / d * (n * n - d - 1);
            debug_assert_eq!(t % 2, 0);
            let g1 = (t + 2) / 2;
            debug_assert!(hurwitz_identity_holds(n, d, g1));
            let g1_order = full_aut_order(n) / d;
            let threshold = 24 * g1 * g1;
            let (ratio, large, vacuous) = if g1 == 0 {
                (None, true, true)
            } else {
                (Some(Ratio::new(g1_order, threshold)), g1_order > threshold, false)
            };
            QuotientRow {
                d,
                g1,
                g1_order,
                ratio,
                large,
                vacuous,
            }
        })
        .collect()
}
