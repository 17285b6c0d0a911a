//! Collineations of `PG(3, q²)` preserving the curve: the lifted unitary
//! generators, the cyclic diagonal group, the extra diagonal element in the
//! `gcd(3, n+1) = 3` case, group closures and fixed-point counts.
//!
//! Every matrix that arises here has third row and third column equal to
//! the third standard basis vector (the `Z` coordinate is fixed), and that
//! shape survives products. The `(3,3) = 1` entry pins the scalar, so exact
//! entry-wise hashing of matrices is collision-free across projective
//! classes — closures never need projective normalization.

use std::collections::HashSet;

use thiserror::Error;

use crate::curve::{CurvePointSet, ProjPoint};
use crate::tower::{FieldElem, TowerField, TowerId};

#[derive(Debug, Error)]
pub enum AutError {
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("third row/column is not the third standard basis vector")]
    BadLift,
    #[error("group closure exceeded the cap of {cap} elements")]
    ClosureCap { cap: usize },
    #[error("generator list is empty")]
    NoGenerators,
}

/// An invertible collineation with the `Z`-fixing shape, stored as the 3×3
/// block acting on `(X, Y, T)`, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Collineation {
    id: TowerId,
    m: [FieldElem; 9],
}

impl Collineation {
    /// Build from the 3×3 block acting on `(X, Y, T)`.
    pub fn from_xyt_block(t: &TowerField, m: [FieldElem; 9]) -> Result<Collineation, AutError> {
        let c = Collineation { id: t.id(), m };
        if c.det(t).is_zero() {
            return Err(AutError::NotInvertible);
        }
        Ok(c)
    }

    /// Build from a full 4×4 matrix on `(X, Y, Z, T)`, validating the lift
    /// shape.
    pub fn from_matrix4(
        t: &TowerField,
        m: [[FieldElem; 4]; 4],
    ) -> Result<Collineation, AutError> {
        for i in 0..4 {
            let want_row = if i == 2 { t.one() } else { t.zero() };
            if m[2][i] != want_row || m[i][2] != want_row {
                return Err(AutError::BadLift);
            }
        }
        // Rows/columns 0, 1, 3 carry the action on (X, Y, T).
        let pick = [0usize, 1, 3];
        let mut block = [t.zero(); 9];
        for (bi, &i) in pick.iter().enumerate() {
            for (bj, &j) in pick.iter().enumerate() {
                block[bi * 3 + bj] = m[i][j];
            }
        }
        Collineation::from_xyt_block(t, block)
    }

    pub fn identity(t: &TowerField) -> Collineation {
        let mut m = [t.zero(); 9];
        m[0] = t.one();
        m[4] = t.one();
        m[8] = t.one();
        Collineation { id: t.id(), m }
    }

    /// The lifted 4×4 matrix on `(X, Y, Z, T)`.
    pub fn matrix4(&self, t: &TowerField) -> [[FieldElem; 4]; 4] {
        let mut out = [[t.zero(); 4]; 4];
        out[2][2] = t.one();
        let pick = [0usize, 1, 3];
        for (bi, &i) in pick.iter().enumerate() {
            for (bj, &j) in pick.iter().enumerate() {
                out[i][j] = self.m[bi * 3 + bj];
            }
        }
        out
    }

    pub fn xyt_block(&self) -> &[FieldElem; 9] {
        &self.m
    }

    fn det(&self, t: &TowerField) -> FieldElem {
        let m = &self.m;
        let minor =
            |a: usize, b: usize, c: usize, d: usize| t.sub(t.mul(m[a], m[b]), t.mul(m[c], m[d]));
        let t0 = t.mul(m[0], minor(4, 8, 5, 7));
        let t1 = t.mul(m[1], minor(3, 8, 5, 6));
        let t2 = t.mul(m[2], minor(3, 7, 4, 6));
        t.add(t.sub(t0, t1), t2)
    }

    /// Matrix product: `self · other` (so `self` acts second on points).
    pub fn compose(&self, other: &Collineation, t: &TowerField) -> Collineation {
        debug_assert_eq!(self.id, other.id);
        let mut out = [t.zero(); 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = t.zero();
                for k in 0..3 {
                    acc = t.add(acc, t.mul(self.m[i * 3 + k], other.m[k * 3 + j]));
                }
                out[i * 3 + j] = acc;
            }
        }
        Collineation { id: self.id, m: out }
    }

    /// Matrix–vector action on homogeneous coordinates, `Z` untouched,
    /// followed by normalization.
    pub fn apply(&self, t: &TowerField, p: &ProjPoint) -> ProjPoint {
        let [x, y, z, tt] = *p.coords();
        let act = |row: usize| {
            let r = row * 3;
            t.add(
                t.add(t.mul(self.m[r], x), t.mul(self.m[r + 1], y)),
                t.mul(self.m[r + 2], tt),
            )
        };
        ProjPoint::new(t, [act(0), act(1), z, act(2)])
            .expect("invertible matrix maps a nonzero vector to a nonzero vector")
    }

    fn key(&self) -> [u32; 9] {
        self.m.map(|e| e.enc() as u32)
    }
}

/// The translation-type generators: one matrix per pair `(a, b)` in
/// `F_{n²}²` with `a^n + a = b^{n+1}`, acting affinely as
/// `(x, y) ↦ (x + b^n y + a, y + b)`. There are exactly `n³` such pairs.
pub fn q_generators(t: &TowerField) -> Vec<Collineation> {
    let n = t.params().n;
    let mut out = Vec::with_capacity(t.params().q as usize);
    for b in t.sub_elements() {
        let norm = t.sub_pow(b, n + 1);
        for a in t.sub_elements() {
            if t.sub_add(t.sub_pow(a, n), a) != norm {
                continue;
            }
            let (zero, one) = (t.zero(), t.one());
            let m = [
                one,
                t.embed(t.sub_pow(b, n)),
                t.embed(a),
                zero,
                one,
                t.embed(b),
                zero,
                zero,
                one,
            ];
            out.push(Collineation { id: t.id(), m });
        }
    }
    out
}

/// The diagonal generators `diag(k^{−n}, k^{n−1}, k)` for `k ∈ F_{n²}*`.
pub fn h_generators(t: &TowerField) -> Vec<Collineation> {
    let n = t.params().n;
    let mut out = Vec::with_capacity(t.params().n2 as usize - 1);
    for k in t.sub_elements().skip(1) {
        let k_inv_n = t.sub_inv(t.sub_pow(k, n)).expect("k is nonzero");
        let zero = t.zero();
        let m = [
            t.embed(k_inv_n),
            zero,
            zero,
            zero,
            t.embed(t.sub_pow(k, n - 1)),
            zero,
            zero,
            zero,
            t.embed(k),
        ];
        out.push(Collineation { id: t.id(), m });
    }
    out
}

/// The involution-like generator swapping `X` and `T` and negating `Y`.
pub fn w_generator(t: &TowerField) -> Collineation {
    let (zero, one) = (t.zero(), t.one());
    let m = [zero, zero, one, zero, t.neg(one), zero, one, zero, zero];
    Collineation { id: t.id(), m }
}

/// All lifted unitary generators together.
pub fn su3_generators(t: &TowerField) -> Vec<Collineation> {
    let mut out = q_generators(t);
    out.extend(h_generators(t));
    out.push(w_generator(t));
    out
}

/// The cyclic group of scalar blocks `diag(λ, λ, 1, λ)` for the
/// `(n²−n+1)`-st roots of unity λ.
pub fn cyclic_generators(t: &TowerField) -> Vec<Collineation> {
    let n = t.params().n;
    let m = n * n - n + 1;
    let zeta = t
        .root_of_unity(m)
        .expect("n^2 - n + 1 divides q^2 - 1");
    let mut out = Vec::with_capacity(m as usize);
    let mut lambda = t.one();
    for _ in 0..m {
        let zero = t.zero();
        let block = [lambda, zero, zero, zero, lambda, zero, zero, zero, lambda];
        out.push(Collineation { id: t.id(), m: block });
        lambda = t.mul(lambda, zeta);
    }
    out
}

/// The extra diagonal collineation `diag(ρ⁻¹, ρ^{n²−n}, 1, ρ⁻¹)` for a
/// primitive `(n³+1)`-st root of unity ρ; present exactly when
/// `gcd(3, n+1) = 3`.
pub fn extra_generator(t: &TowerField) -> Option<Collineation> {
    let n = t.params().n;
    if (n + 1) % 3 != 0 {
        return None;
    }
    let rho = t
        .root_of_unity(n * n * n + 1)
        .expect("n^3 + 1 divides q^2 - 1");
    let rho_inv = t.inv(rho).expect("root of unity is nonzero");
    let zero = t.zero();
    let m = [
        rho_inv,
        zero,
        zero,
        zero,
        t.pow(rho, n * n - n),
        zero,
        zero,
        zero,
        rho_inv,
    ];
    Some(Collineation { id: t.id(), m })
}

/// True iff every generator maps the point set bijectively onto itself.
/// Injectivity is automatic (the matrices are invertible), so image
/// containment suffices.
pub fn verify_preserves(
    t: &TowerField,
    gens: &[Collineation],
    set: &CurvePointSet,
) -> bool {
    let members: HashSet<ProjPoint> = set.points().iter().copied().collect();
    gens.iter().all(|g| {
        set.points()
            .iter()
            .all(|p| members.contains(&g.apply(t, p)))
    })
}

/// A fully enumerated matrix group.
pub struct GroupClosure {
    elements: Vec<Collineation>,
    keys: HashSet<[u32; 9]>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Collineation] {
        &self.elements
    }

    pub fn contains(&self, c: &Collineation) -> bool {
        self.keys.contains(&c.key())
    }

    /// Size of the intersection with another closure over the same tower.
    pub fn intersection_size(&self, other: &GroupClosure) -> usize {
        self.keys.iter().filter(|k| other.keys.contains(*k)).count()
    }
}

/// Breadth-first closure under matrix multiplication, hashing exact matrix
/// entries. Errors out (rather than thrashing) past `cap` elements.
pub fn group_closure(
    t: &TowerField,
    gens: &[Collineation],
    cap: usize,
) -> Result<GroupClosure, AutError> {
    if gens.is_empty() {
        return Err(AutError::NoGenerators);
    }
    let identity = Collineation::identity(t);
    let mut keys = HashSet::new();
    keys.insert(identity.key());
    let mut elements = vec![identity];
    let mut frontier = vec![identity];
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let prod = cur.compose(g, t);
            if keys.insert(prod.key()) {
                if elements.len() + 1 > cap {
                    return Err(AutError::ClosureCap { cap });
                }
                elements.push(prod);
                frontier.push(prod);
            }
        }
    }
    Ok(GroupClosure { elements, keys })
}

/// Number of points of the set fixed by the collineation.
pub fn fixed_points(t: &TowerField, c: &Collineation, set: &CurvePointSet) -> usize {
    set.points()
        .iter()
        .filter(|p| c.apply(t, p) == **p)
        .count()
}

/// Order of the lifted unitary matrix group: `(n³ + 1)·n³·(n² − 1)`.
pub fn su3_order(n: u64) -> u64 {
    let n3 = n * n * n;
    (n3 + 1) * n3 * (n * n - 1)
}

/// Order of the full automorphism group:
/// `n³(n³ + 1)(n² − 1)(n² − n + 1)` in both gcd cases.
pub fn full_aut_order(n: u64) -> u64 {
    su3_order(n) * (n * n - n + 1)
}

/// Genus of the quotient by the cyclic diagonal group: the Hermitian curve
/// genus `½(n² − n)`.
pub fn hermitian_quotient_genus(n: u64) -> u64 {
    (n * n - n) / 2
}

/// The tame-quotient genus bookkeeping:
/// `2g − 2 = (n²−n+1)(2ḡ−2) + (n³+1)(n²−n)` with `ḡ = ½(n²−n)`.
pub fn hurwitz_genus_check(n: u64) -> bool {
    let g = crate::curve::genus(n);
    let gbar = hermitian_quotient_genus(n);
    let n3 = n * n * n;
    // All terms are non-negative for n ≥ 2 except 2ḡ−2 at n = 2, where
    // ḡ = 1 makes it zero; keep the arithmetic in i128 to be safe.
    let lhs = 2 * g as i128 - 2;
    let rhs = (n * n - n + 1) as i128 * (2 * gbar as i128 - 2)
        + (n3 + 1) as i128 * (n * n - n) as i128;
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{enumerate_points, infinite_point, DEFAULT_MAX_Q2};
    use crate::tower::TowerField;

    fn n2_setup() -> (TowerField, CurvePointSet) {
        let t = TowerField::new(2, 1).unwrap();
        let set = enumerate_points(&t, DEFAULT_MAX_Q2).unwrap();
        (t, set)
    }

    #[test]
    fn generator_counts() {
        for n in [2u64, 3] {
            let t = TowerField::from_n(n).unwrap();
            assert_eq!(q_generators(&t).len() as u64, n * n * n);
            assert_eq!(h_generators(&t).len() as u64, n * n - 1);
            assert_eq!(cyclic_generators(&t).len() as u64, n * n - n + 1);
        }
    }

    #[test]
    fn trivial_generators_are_identities() {
        let t = TowerField::new(2, 1).unwrap();
        let id = Collineation::identity(&t);
        // (a, b) = (0, 0) is the first pair produced.
        assert_eq!(q_generators(&t)[0], id);
        // k = 1 is the first diagonal generator.
        assert_eq!(h_generators(&t)[0], id);
        // λ = 1 is the first cyclic element.
        assert_eq!(cyclic_generators(&t)[0], id);
    }

    #[test]
    fn w_swaps_x_and_t_and_negates_y() {
        let (t, set) = n2_setup();
        let w = w_generator(&t);
        for p in set.points().iter().take(40) {
            let [x, y, z, tt] = *p.coords();
            let expected = ProjPoint::new(&t, [tt, t.neg(y), z, x]).unwrap();
            assert_eq!(w.apply(&t, p), expected);
        }
    }

    #[test]
    fn q_generator_affine_action() {
        let (t, set) = n2_setup();
        let n = t.params().n;
        let qs = q_generators(&t);
        // Recover (a, b) from the matrix layout to cross-check the action.
        for q in &qs {
            let b_n = q.xyt_block()[1];
            let a = q.xyt_block()[2];
            let b = q.xyt_block()[5];
            assert_eq!(t.pow(b, n), b_n);
            for p in set.points().iter().take(20) {
                let Some([x, y, z]) = p.affine(&t) else {
                    continue;
                };
                let x1 = t.add(t.add(x, t.mul(b_n, y)), a);
                let y1 = t.add(y, b);
                let expected = ProjPoint::new(&t, [x1, y1, z, t.one()]).unwrap();
                assert_eq!(q.apply(&t, p), expected);
            }
        }
    }

    #[test]
    fn cyclic_elements_commute_with_unitary_generators() {
        for n in [2u64, 3] {
            let t = TowerField::from_n(n).unwrap();
            let su3 = su3_generators(&t);
            for d in cyclic_generators(&t) {
                for g in &su3 {
                    assert_eq!(d.compose(g, &t), g.compose(&d, &t));
                }
            }
        }
    }

    #[test]
    fn extra_generator_case_split() {
        let t2 = TowerField::new(2, 1).unwrap();
        assert!(extra_generator(&t2).is_some());
        let t3 = TowerField::new(3, 1).unwrap();
        assert!(extra_generator(&t3).is_none());
        let t4 = TowerField::new(2, 2).unwrap();
        assert!(extra_generator(&t4).is_none()); // gcd(3, 5) = 1
    }

    #[test]
    fn all_generators_preserve_the_point_set_n2() {
        let (t, set) = n2_setup();
        let mut gens = su3_generators(&t);
        gens.extend(cyclic_generators(&t));
        gens.push(extra_generator(&t).unwrap());
        assert!(verify_preserves(&t, &gens, &set));
        assert!(verify_preserves(&t, &[Collineation::identity(&t)], &set));
    }

    #[test]
    fn a_generic_diagonal_moves_points_off_the_set() {
        let (t, set) = n2_setup();
        let g = t.generator();
        let bad = Collineation::from_xyt_block(
            &t,
            [
                g,
                t.zero(),
                t.zero(),
                t.zero(),
                t.one(),
                t.zero(),
                t.zero(),
                t.zero(),
                t.one(),
            ],
        )
        .unwrap();
        assert!(!verify_preserves(&t, &[bad], &set));
    }

    #[test]
    fn closure_orders_n2() {
        let t = TowerField::new(2, 1).unwrap();
        let su3 = group_closure(&t, &su3_generators(&t), 100_000).unwrap();
        assert_eq!(su3.order(), 216); // (n³+1)·n³·(n²−1)

        let mut full_gens = su3_generators(&t);
        full_gens.extend(cyclic_generators(&t));
        full_gens.push(extra_generator(&t).unwrap());
        let full = group_closure(&t, &full_gens, 100_000).unwrap();
        assert_eq!(full.order(), 648); // n³(n³+1)(n²−1)(n²−n+1)
    }

    #[test]
    fn unitary_and_cyclic_closures_intersect_in_scalars_n2() {
        let t = TowerField::new(2, 1).unwrap();
        let su3 = group_closure(&t, &su3_generators(&t), 100_000).unwrap();
        let cyc = group_closure(&t, &cyclic_generators(&t), 100).unwrap();
        assert_eq!(cyc.order(), 3);
        assert_eq!(su3.intersection_size(&cyc), 3);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let t = TowerField::new(2, 1).unwrap();
        assert!(matches!(
            group_closure(&t, &su3_generators(&t), 100),
            Err(AutError::ClosureCap { cap: 100 })
        ));
        assert!(matches!(
            group_closure(&t, &[], 10),
            Err(AutError::NoGenerators)
        ));
    }

    #[test]
    fn fixed_point_counts_n2() {
        let (t, set) = n2_setup();
        assert_eq!(fixed_points(&t, &Collineation::identity(&t), &set), 225);
        for d in cyclic_generators(&t).iter().skip(1) {
            assert_eq!(fixed_points(&t, d, &set), 9); // n³ + 1
        }
    }

    #[test]
    fn hurwitz_identity_for_desk_range() {
        for n in 2..=9u64 {
            assert!(hurwitz_genus_check(n), "failed at n = {n}");
        }
        assert_eq!(hermitian_quotient_genus(3), 3);
        assert_eq!(hermitian_quotient_genus(2), 1);
    }

    #[test]
    fn matrix4_lift_round_trip() {
        let t = TowerField::new(2, 1).unwrap();
        let w = w_generator(&t);
        let m4 = w.matrix4(&t);
        // Third row and column are the Z basis vector.
        for i in 0..4 {
            let want = if i == 2 { t.one() } else { t.zero() };
            assert_eq!(m4[2][i], want);
            assert_eq!(m4[i][2], want);
        }
        assert_eq!(Collineation::from_matrix4(&t, m4).unwrap(), w);

        // Perturbing the Z column breaks the lift shape.
        let mut bad = m4;
        bad[0][2] = t.one();
        assert!(matches!(
            Collineation::from_matrix4(&t, bad),
            Err(AutError::BadLift)
        ));

        // Singular blocks are rejected.
        assert!(matches!(
            Collineation::from_xyt_block(&t, [t.zero(); 9]),
            Err(AutError::NotInvertible)
        ));
    }

    #[test]
    fn extra_generator_preserves_the_set_n2() {
        let (t, set) = n2_setup();
        let e = extra_generator(&t).unwrap();
        assert!(verify_preserves(&t, &[e], &set));
        // And it fixes the infinite point's orbit size sanity: X_∞ maps to
        // a point of the set.
        let image = e.apply(&t, &infinite_point(&t));
        assert!(set.points().contains(&image));
    }
}
