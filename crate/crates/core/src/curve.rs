//! The curve itself: the complete intersection of `Z^{n²−n+1} = Y·h(X)`
//! with the Hermitian cone `X^n + X = Y^{n+1}` in `PG(3, q²)`, its
//! rational-point enumeration, and the pointwise checks that ride on it.
//!
//! Enumeration never loops over `z` per `(x, y)`: the `z`-fiber over a cone
//! point is a coset of the subgroup of `(n²−n+1)`-th powers, so solutions
//! come straight out of the discrete-log tables.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::build_h;
use crate::tower::{FieldElem, TowerError, TowerField, TowerParams};

/// Default ceiling on `q²` for full point enumeration (n = 5).
pub const DEFAULT_MAX_Q2: u64 = 15_625;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("enumeration refused: q^2 = {q2} exceeds the cap {cap}")]
    EnumerationCap { q2: u64, cap: u64 },
    #[error("all four homogeneous coordinates are zero")]
    ZeroPoint,
    #[error("point dump is missing its header record")]
    MissingHeader,
    #[error("point dump header does not match the tower")]
    HeaderMismatch,
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Genus `g = ½(n³ + 1)(n² − 2) + 1`.
pub fn genus(n: u64) -> u64 {
    let n3 = n * n * n;
    (n3 + 1) * (n * n - 2) / 2 + 1
}

/// The Hasse–Weil upper bound `q² + 1 + 2gq` with `q = n³`; the curve
/// attains it.
pub fn expected_point_count(n: u64) -> u64 {
    let q = n * n * n;
    q * q + 1 + 2 * genus(n) * q
}

/// A point of `PG(3, q²)`, stored with its first nonzero coordinate scaled
/// to 1 so that equality is plain coordinate equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElem; 4],
}

impl ProjPoint {
    pub fn new(t: &TowerField, coords: [FieldElem; 4]) -> Result<ProjPoint, CurveError> {
        let pivot = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(CurveError::ZeroPoint)?;
        let scale = t.inv(coords[pivot]).expect("pivot is nonzero");
        Ok(ProjPoint {
            coords: coords.map(|c| t.mul(c, scale)),
        })
    }

    /// `(x, y, z, t)` in normalized form.
    pub fn coords(&self) -> &[FieldElem; 4] {
        &self.coords
    }

    pub fn is_infinite(&self) -> bool {
        self.coords[3].is_zero()
    }

    /// The representative scaled to `t = 1`; `None` at infinity.
    pub fn affine(&self, t: &TowerField) -> Option<[FieldElem; 3]> {
        let [x, y, z, tt] = self.coords;
        if tt.is_zero() {
            return None;
        }
        let scale = t.inv(tt).expect("t is nonzero");
        Some([t.mul(x, scale), t.mul(y, scale), t.mul(z, scale)])
    }

    /// Flat little-endian base-p serialization of all four coordinates;
    /// the canonical point order is lexicographic on this key.
    pub fn digit_key(&self, t: &TowerField) -> Vec<u8> {
        let mut key = Vec::with_capacity(24 * t.params().h as usize);
        for c in self.coords {
            key.extend(t.digits(c).iter().map(|&d| d as u8));
        }
        key
    }
}

/// The unique infinite point `X_∞ = (1, 0, 0, 0)`.
pub fn infinite_point(t: &TowerField) -> ProjPoint {
    ProjPoint {
        coords: [t.one(), t.zero(), t.zero(), t.zero()],
    }
}

/// A deduplicated, canonically sorted set of rational points.
#[derive(Debug, Clone)]
pub struct CurvePointSet {
    params: TowerParams,
    points: Vec<ProjPoint>,
}

impl CurvePointSet {
    /// Sort canonically and deduplicate. Does not check the curve
    /// equations; `enumerate_points` is the constructor that guarantees
    /// them.
    pub fn from_points(t: &TowerField, pts: Vec<ProjPoint>) -> CurvePointSet {
        let mut keyed: Vec<(Vec<u8>, ProjPoint)> =
            pts.into_iter().map(|p| (p.digit_key(t), p)).collect();
        keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        CurvePointSet {
            params: t.params(),
            points: keyed.into_iter().map(|(_, p)| p).collect(),
        }
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Whether a point satisfies both affine curve equations (for affine
/// points) or is the infinite point.
pub fn on_curve(t: &TowerField, p: &ProjPoint) -> bool {
    let n = t.params().n;
    match p.affine(t) {
        None => *p == infinite_point(t),
        Some([x, y, z]) => {
            let cone = t.add(t.pow(x, n), x) == t.pow(y, n + 1);
            let h = build_h(t);
            let surface = t.pow(z, n * n - n + 1) == t.mul(y, h.eval_ext(x, t));
            cone && surface
        }
    }
}

/// Enumerate every `F_{q²}`-rational point: all affine solutions of
/// `x^n + x = y^{n+1}`, `z^{n²−n+1} = y·h(x)`, plus the infinite point.
/// The cardinality equaling `expected_point_count(n)` is the maximality
/// verification.
pub fn enumerate_points(t: &TowerField, max_q2: u64) -> Result<CurvePointSet, CurveError> {
    let pr = t.params();
    if pr.q2 > max_q2 {
        return Err(CurveError::EnumerationCap {
            q2: pr.q2,
            cap: max_q2,
        });
    }
    let n = pr.n;
    let ord = pr.q2 - 1;
    let m = n * n - n + 1;
    debug_assert_eq!(ord % m, 0);
    let coset_step = ord / m;

    let h = build_h(t);
    let h_vals: Vec<FieldElem> = t.elements().map(|x| h.eval_ext(x, t)).collect();

    // Fibers of x ↦ x^n + x: cone[c] lists every x with x^n + x = c.
    let mut cone: Vec<Vec<u32>> = vec![Vec::new(); pr.q2 as usize];
    for x in t.elements() {
        let c = t.add(t.pow(x, n), x);
        cone[c.enc() as usize].push(x.enc() as u32);
    }

    let mut pts: Vec<ProjPoint> = Vec::with_capacity(expected_point_count(n) as usize);
    for y in t.elements() {
        let c = t.pow(y, n + 1);
        for &xe in &cone[c.enc() as usize] {
            let x = t.from_enc(xe as u64);
            let w = t.mul(y, h_vals[xe as usize]);
            if w.is_zero() {
                // z^{n²−n+1} = 0 has the single solution z = 0.
                pts.push(ProjPoint::new(t, [x, y, t.zero(), t.one()])?);
            } else if let Some(lw) = t.log(w) {
                if lw % m == 0 {
                    for k in 0..m {
                        let z = t.exp(lw / m + k * coset_step);
                        pts.push(ProjPoint::new(t, [x, y, z, t.one()])?);
                    }
                }
            }
        }
    }
    pts.push(infinite_point(t));
    Ok(CurvePointSet::from_points(t, pts))
}

/// Pointwise containment in the Hermitian surface
/// `X^{n³}T + XT^{n³} = Y^{n³+1} + Z^{n³+1}` (homogeneous form).
pub fn verify_on_hermitian_surface(t: &TowerField, set: &CurvePointSet) -> bool {
    let n3 = t.params().q;
    set.points().iter().all(|p| {
        let [x, y, z, tt] = *p.coords();
        let lhs = t.add(t.mul(t.pow(x, n3), tt), t.mul(x, t.pow(tt, n3)));
        let rhs = t.add(t.pow(y, n3 + 1), t.pow(z, n3 + 1));
        lhs == rhs
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub checked: usize,
    pub all_rank2: bool,
}

/// Rank-2 test for a 2×3 matrix: some 2×2 minor is nonzero.
pub fn rank2_2x3(t: &TowerField, r1: [FieldElem; 3], r2: [FieldElem; 3]) -> bool {
    let minor = |i: usize, j: usize| t.sub(t.mul(r1[i], r2[j]), t.mul(r1[j], r2[i]));
    !(minor(0, 1).is_zero() && minor(0, 2).is_zero() && minor(1, 2).is_zero())
}

/// Jacobian rank check at every affine point. With F₁ = Z^{n²−n+1} − Y·h(X)
/// and F₂ = X^n + X − Y^{n+1}, in characteristic p | n the partials reduce
/// to rows (−y·h′(x), −h(x), z^{n²−n}) and (1, −y^n, 0).
pub fn smoothness_affine(t: &TowerField, set: &CurvePointSet) -> SmoothnessReport {
    let n = t.params().n;
    let h = build_h(t);
    let hd = h.derivative(t);
    let mut checked = 0;
    let mut all_rank2 = true;
    for p in set.points() {
        let Some([x, y, z]) = p.affine(t) else {
            continue;
        };
        checked += 1;
        let r1 = [
            t.neg(t.mul(y, hd.eval_ext(x, t))),
            t.neg(h.eval_ext(x, t)),
            t.pow(z, n * n - n),
        ];
        let r2 = [t.one(), t.neg(t.pow(y, n)), t.zero()];
        if !rank2_2x3(t, r1, r2) {
            all_rank2 = false;
        }
    }
    SmoothnessReport { checked, all_rank2 }
}

/// The two covering inequalities. A degree-m covering by the Hermitian
/// curve over `F_{q²}` forces `m ≤ m_max_genus` (Hurwitz) and
/// `m ≥ m_min_count` (point counting); `contradiction` reports whether the
/// two bounds are incompatible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoveringObstruction {
    pub m_max_genus: u64,
    pub m_min_count: u64,
    pub contradiction: bool,
}

pub fn covering_obstruction(n: u64, point_count: u64) -> CoveringObstruction {
    let n3 = n * n * n;
    let n6 = n3 * n3;
    let n9 = n6 * n3;
    let m_max_genus = (n6 - n3 - 2) / ((n3 + 1) * (n * n - 2));
    let m_min_count = (n9 + 1).div_ceil(point_count);
    CoveringObstruction {
        m_max_genus,
        m_min_count,
        contradiction: m_min_count > m_max_genus,
    }
}

// ---- JSONL point dump ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDumpHeader {
    pub p: u64,
    pub h: u32,
    /// Defining polynomial of F_{n²} over F_p, little-endian.
    pub g2: Vec<u64>,
    /// Defining cubic of F_{q²} over F_{n²}; each coefficient as its
    /// little-endian base-p digit vector.
    pub g3: Vec<Vec<u64>>,
}

impl PointDumpHeader {
    pub fn for_tower(t: &TowerField) -> PointDumpHeader {
        PointDumpHeader {
            p: t.params().p,
            h: t.params().h,
            g2: t.g2().to_vec(),
            g3: t.g3_digits(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PointRecord {
    x: Vec<u64>,
    y: Vec<u64>,
    z: Vec<u64>,
    t: Vec<u64>,
}

/// One header record followed by one record per point, each coordinate a
/// flat little-endian base-p digit array.
pub fn write_points_jsonl<W: Write>(
    t: &TowerField,
    set: &CurvePointSet,
    mut w: W,
) -> Result<(), CurveError> {
    let header = PointDumpHeader::for_tower(t);
    serde_json::to_writer(&mut w, &header)?;
    w.write_all(b"\n")?;
    for p in set.points() {
        let [x, y, z, tt] = *p.coords();
        let rec = PointRecord {
            x: t.digits(x),
            y: t.digits(y),
            z: t.digits(z),
            t: t.digits(tt),
        };
        serde_json::to_writer(&mut w, &rec)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_points_jsonl<R: BufRead>(t: &TowerField, r: R) -> Result<CurvePointSet, CurveError> {
    let mut lines = r.lines();
    let header_line = lines.next().ok_or(CurveError::MissingHeader)??;
    let header: PointDumpHeader = serde_json::from_str(&header_line)?;
    if header != PointDumpHeader::for_tower(t) {
        return Err(CurveError::HeaderMismatch);
    }
    let mut pts = Vec::new();
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: PointRecord = serde_json::from_str(&line)?;
        let coords = [
            t.from_digits(&rec.x)?,
            t.from_digits(&rec.y)?,
            t.from_digits(&rec.z)?,
            t.from_digits(&rec.t)?,
        ];
        pts.push(ProjPoint::new(t, coords)?);
    }
    Ok(CurvePointSet::from_points(t, pts))
}
