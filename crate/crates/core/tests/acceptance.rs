//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! Every expected value and time budget is pinned here; run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use maxcurve::aut::{
    cyclic_generators, extra_generator, fixed_points, full_aut_order, group_closure,
    hurwitz_genus_check, su3_generators, su3_order, verify_preserves, Collineation,
};
use maxcurve::curve::{
    covering_obstruction, enumerate_points, expected_point_count, genus, smoothness_affine,
    verify_on_hermitian_surface, CurvePointSet, DEFAULT_MAX_Q2,
};
use maxcurve::poly::verify_identities;
use maxcurve::quotient::{hurwitz_identity_holds, quotient_table};
use maxcurve::semigroup::{
    decompose, genus_telescopic, is_telescopic, expected_order_sequence, order_sequence,
    rr_basis, rr_independence_check, weierstrass_generators, weierstrass_semigroup,
};
use maxcurve::tower::TowerField;

fn report(id: u32, name: &str, pass: bool) {
    println!(
        "criterion {:02} ({}): {}",
        id,
        name,
        if pass { "PASS" } else { "FAIL" }
    );
}

struct Fixture {
    tower: TowerField,
    points: CurvePointSet,
}

static FIX2: OnceLock<Fixture> = OnceLock::new();
static FIX3: OnceLock<Fixture> = OnceLock::new();
static FIX4: OnceLock<Fixture> = OnceLock::new();

fn fixture(n: u64) -> &'static Fixture {
    let slot = match n {
        2 => &FIX2,
        3 => &FIX3,
        4 => &FIX4,
        _ => panic!("no fixture for n = {n}"),
    };
    slot.get_or_init(|| {
        let tower = TowerField::from_n(n).unwrap();
        let points = enumerate_points(&tower, DEFAULT_MAX_Q2).unwrap();
        Fixture { tower, points }
    })
}

#[test]
fn criterion_01_polynomial_identities() {
    let start = Instant::now();
    let mut pass = true;
    for n in [2u64, 3, 4, 5, 7, 8, 9] {
        let t = TowerField::from_n(n).unwrap();
        let r = verify_identities(&t);
        pass &= r.eq2 && r.eq3 && r.eq4;
    }
    let within_budget = start.elapsed() < Duration::from_secs(10);
    pass &= within_budget;
    report(1, "polynomial identities, n in {2,3,4,5,7,8,9}, < 10 s", pass);
    assert!(pass, "within budget: {within_budget}");
}

#[test]
fn criterion_02_maximality_point_counts() {
    let mut pass = true;
    for (n, expected) in [(2u64, 225u64), (3, 6076), (4, 62465)] {
        let started = Instant::now();
        let fx = fixture(n);
        pass &= fx.points.len() as u64 == expected;
        pass &= expected == expected_point_count(n);
        if n == 4 {
            pass &= started.elapsed() < Duration::from_secs(60);
        }
    }
    // The alternative closed form n⁸ − n⁶ + n³ + 1 is NOT the rational
    // point count: at n = 2 it gives 201 while enumeration gives 225. The
    // bound-attaining value n⁸ − n⁶ + n⁵ + 1 is the one enumeration
    // confirms.
    let alt = |n: u64| n.pow(8) - n.pow(6) + n.pow(3) + 1;
    let hw = |n: u64| n.pow(8) - n.pow(6) + n.pow(5) + 1;
    pass &= alt(2) == 201 && fixture(2).points.len() == 225;
    for n in [2u64, 3, 4] {
        pass &= hw(n) == fixture(n).points.len() as u64;
        pass &= alt(n) != fixture(n).points.len() as u64;
    }
    report(2, "maximality: enumerated counts 225 / 6076 / 62465", pass);
    assert!(pass);
}

#[test]
fn criterion_03_hermitian_containment() {
    let mut pass = true;
    for n in [2u64, 3, 4] {
        let fx = fixture(n);
        pass &= verify_on_hermitian_surface(&fx.tower, &fx.points);
    }
    report(3, "Hermitian surface contains all points, n in {2,3,4}", pass);
    assert!(pass);
}

#[test]
fn criterion_04_genus_three_ways() {
    let mut pass = true;
    for n in 2..=9u64 {
        let sg = weierstrass_semigroup(n);
        let telescopic = genus_telescopic(&weierstrass_generators(n)).unwrap();
        pass &= genus(n) == sg.genus() && genus(n) == telescopic;
    }
    pass &= genus(2) == 10;
    pass &= weierstrass_semigroup(2).gaps() == [1, 2, 3, 4, 5, 7, 10, 11, 13, 19];
    pass &= genus(3) == 99;
    report(4, "genus: formula = telescopic = gap count, n in 2..=9", pass);
    assert!(pass);
}

#[test]
fn criterion_05_hurwitz_arithmetic_and_fixed_points() {
    let mut pass = true;
    for n in 2..=9u64 {
        pass &= hurwitz_genus_check(n);
    }
    for (n, expected) in [(2u64, 9usize), (3, 28)] {
        let fx = fixture(n);
        for d in cyclic_generators(&fx.tower).iter().skip(1) {
            pass &= fixed_points(&fx.tower, d, &fx.points) == expected;
        }
    }
    report(5, "Hurwitz identity and fixed-point counts 9 / 28", pass);
    assert!(pass);
}

fn full_generators(t: &TowerField) -> Vec<Collineation> {
    let mut gens = su3_generators(t);
    gens.extend(cyclic_generators(t));
    gens.extend(extra_generator(t));
    gens
}

#[test]
fn criterion_06_automorphism_groups() {
    let mut pass = true;

    for n in [2u64, 3] {
        let fx = fixture(n);
        pass &= verify_preserves(&fx.tower, &full_generators(&fx.tower), &fx.points);
    }

    let t2 = &fixture(2).tower;
    let su3_closure = group_closure(t2, &su3_generators(t2), 1_000_000).unwrap();
    pass &= su3_closure.order() as u64 == 216;
    pass &= su3_closure.order() as u64 == su3_order(2);
    let full2 = group_closure(t2, &full_generators(t2), 1_000_000).unwrap();
    pass &= full2.order() as u64 == 648;
    pass &= full2.order() as u64 == full_aut_order(2);

    let t3 = &fixture(3).tower;
    let full3 = group_closure(t3, &full_generators(t3), 1_000_000).unwrap();
    pass &= full3.order() as u64 == 42336;
    pass &= full3.order() as u64 == full_aut_order(3);

    // The unitary and cyclic closures meet in the scalar subgroup: order 3
    // when gcd(3, n+1) = 3, trivial otherwise.
    let cyc2 = group_closure(t2, &cyclic_generators(t2), 100).unwrap();
    pass &= su3_closure.intersection_size(&cyc2) == 3;
    let su3_closure3 = group_closure(t3, &su3_generators(t3), 1_000_000).unwrap();
    let cyc3 = group_closure(t3, &cyclic_generators(t3), 100).unwrap();
    pass &= su3_closure3.order() as u64 == su3_order(3);
    pass &= su3_closure3.intersection_size(&cyc3) == 1;

    // A pseudorandom sample of 100 closure elements must also permute the
    // n = 3 point set.
    {
        use rand::{rngs::StdRng, seq::SliceRandom, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x6b3a);
        let sample: Vec<Collineation> = full3
            .elements()
            .choose_multiple(&mut rng, 100)
            .copied()
            .collect();
        let fx3 = fixture(3);
        pass &= verify_preserves(&fx3.tower, &sample, &fx3.points);
    }

    report(6, "automorphism closures 216 / 648 / 42336", pass);
    assert!(pass);
}

#[test]
#[ignore = "optional: full closure at n = 4 takes minutes"]
fn criterion_06_optional_closure_n4() {
    let t = TowerField::from_n(4).unwrap();
    let closure = group_closure(&t, &full_generators(&t), 1_000_000).unwrap();
    let pass = closure.order() as u64 == 811_200 && closure.order() as u64 == full_aut_order(4);
    report(6, "optional n = 4 closure order 811200", pass);
    assert!(pass);
}

#[test]
fn criterion_07_covering_obstruction() {
    let mut pass = true;
    // Enumerated counts where enumeration runs, formula counts beyond.
    for n in [3u64, 4] {
        let c = covering_obstruction(n, fixture(n).points.len() as u64);
        pass &= c.contradiction;
    }
    for n in 5..=9u64 {
        pass &= covering_obstruction(n, expected_point_count(n)).contradiction;
    }
    let open_case = covering_obstruction(2, fixture(2).points.len() as u64);
    pass &= !open_case.contradiction;
    pass &= open_case.m_max_genus == 3 && open_case.m_min_count == 3;
    report(7, "covering obstruction: true for n in 3..=9, false for n = 2", pass);
    assert!(pass);
}

/// Exhaustive search for representations respecting the telescopic bounds;
/// independent of the greedy path.
fn bounded_representations(seq: &[u64], d: &[u64], m: u64) -> Vec<Vec<u64>> {
    fn rec(
        seq: &[u64],
        d: &[u64],
        i: usize,
        remaining: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == 0 {
            if remaining % seq[0] == 0 {
                let mut full = vec![remaining / seq[0]];
                full.extend(cur.iter().rev());
                out.push(full);
            }
            return;
        }
        for j in 0..d[i - 1] / d[i] {
            let used = j * seq[i];
            if used > remaining {
                break;
            }
            cur.push(j);
            rec(seq, d, i - 1, remaining - used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(seq, d, seq.len() - 1, m, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_08_weierstrass_semigroup_and_rr_bases() {
    let start = Instant::now();
    let mut pass = true;

    for n in 2..=9u64 {
        pass &= order_sequence(n) == expected_order_sequence(n).to_vec();
    }

    // Greedy decomposition against the exhaustive-search oracle.
    for n in [2u64, 3] {
        let gens = weierstrass_generators(n);
        let sg = weierstrass_semigroup(n);
        let chain = is_telescopic(&gens).unwrap();
        for m in 0..=sg.conductor() + 20 {
            let reps = bounded_representations(&gens, &chain.d, m);
            if sg.contains(m) {
                pass &= reps.len() == 1 && decompose(&gens, m).unwrap() == reps[0];
            } else {
                pass &= reps.is_empty() && decompose(&gens, m).is_err();
            }
        }
    }

    // Basis sizes across the full window, then the evaluation-rank check.
    for n in [2u64, 3] {
        let g = genus(n);
        let sg = weierstrass_semigroup(n);
        for m in 0..=3 * g {
            let size = rr_basis(n, m).len() as u64;
            pass &= size == sg.nongaps_up_to(m).count() as u64;
            if m >= 2 * g - 1 {
                pass &= size == m + 1 - g;
            }
        }
        let fx = fixture(n);
        for m in 0..=2 * g + 10 {
            pass &= rr_independence_check(&fx.tower, m, &fx.points).unwrap();
        }
    }

    let within_budget = start.elapsed() < Duration::from_secs(120);
    pass &= within_budget;
    report(8, "Weierstrass semigroup, decompositions, RR bases, < 120 s", pass);
    assert!(pass, "within budget: {within_budget}");
}

#[test]
fn criterion_09_quotient_tables() {
    let mut pass = true;
    for n in 2..=9u64 {
        for row in quotient_table(n) {
            pass &= hurwitz_identity_holds(n, row.d, row.g1);
            if row.d >= 7 {
                pass &= row.g1_order > 24 * row.g1 * row.g1;
            }
        }
    }
    let n3_d7 = quotient_table(3).into_iter().find(|r| r.d == 7).unwrap();
    pass &= n3_d7.g1_order == 6048 && 24 * n3_d7.g1 * n3_d7.g1 == 216;
    report(9, "quotient rows: Hurwitz exact, d >= 7 implies large", pass);
    assert!(pass);
}

#[test]
fn criterion_10_smoothness() {
    let mut pass = true;
    for n in [2u64, 3] {
        let fx = fixture(n);
        let r = smoothness_affine(&fx.tower, &fx.points);
        pass &= r.all_rank2;
        pass &= r.checked as u64 == expected_point_count(n) - 1;
    }
    report(10, "Jacobian rank 2 at every affine point, n in {2,3}", pass);
    assert!(pass);
}
