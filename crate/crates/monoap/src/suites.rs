//! Seeded self-check suites behind the command-line `verify` command.
//!
//! Each suite re-runs a family of exact checks (table reproduction,
//! counting identities, product recursions, lattice counting) and reports
//! one named pass/fail line per check. Randomized sweeps draw from a seeded
//! generator so runs are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apcount::{
    count_mono_cyclic, pair_intersection, ApFilter, ColorClass, PairMode,
};
use crate::bounds::{m3_closed_form, verify_case2_formula, verify_mix_identity};
use crate::coloring::{Coloring, Group};
use crate::constructions::{
    b11_template, b20, b22, b37_template, b74, check_template_star_property, ltimes, tower_coloring,
    tower_predicted_count, TowerSpec,
};
use crate::lattice::{lattice_points, lattice_points_scaled, random_simple_polygon, Point};
use crate::periodic::{density_upper_bound, generalized_count_table};
use crate::ratio::Ratio;

/// The named check families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Identities,
    Recursion,
    Pick,
    All,
}

impl std::str::FromStr for Suite {
    type Err = ();
    fn from_str(s: &str) -> Result<Suite, ()> {
        match s.to_ascii_lowercase().as_str() {
            "tables" => Ok(Suite::Tables),
            "identities" => Ok(Suite::Identities),
            "recursion" => Ok(Suite::Recursion),
            "pick" => Ok(Suite::Pick),
            "all" => Ok(Suite::All),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// Expected per-class counts for the built-in blocks.
pub mod tables {
    /// B20, k = 4, every odd offset.
    pub const B20_ROW: [u64; 8] = [36, 50, 50, 50, 50, 50, 50, 36];
    /// B22, k = 4, every even nonzero offset.
    pub const B22_ROW: [u64; 8] = [42, 63, 70, 63, 63, 70, 63, 42];
    /// Feasible class indices for k = 5, in order.
    pub const K5_CLASSES: [u32; 14] = [0, 1, 2, 4, 5, 6, 7, 8, 9, 10, 11, 13, 14, 15];
    /// B74, k = 5: even offsets other than 0.
    pub const B74_EVEN_ROW: [u64; 14] = [
        146, 293, 377, 377, 378, 359, 293, 293, 359, 378, 377, 377, 293, 146,
    ];
    /// B74, k = 5: odd offsets other than 37.
    pub const B74_ODD_ROW: [u64; 14] = [
        146, 293, 375, 375, 374, 357, 293, 293, 357, 374, 375, 375, 293, 146,
    ];
    /// B74, k = 5: offset exactly 37.
    pub const B74_HALF_ROW: [u64; 14] = [
        146, 144, 144, 144, 144, 144, 144, 144, 144, 144, 144, 144, 144, 146,
    ];
    /// The 220-element product block, k = 4, even offsets not divisible
    /// by 22.
    pub const B11_B20_ROW: [u64; 8] = [4882, 7563, 8230, 7563, 7563, 8230, 7563, 4882];
}

fn row_check(
    name: &str,
    block: &Coloring,
    k: usize,
    offsets: impl Iterator<Item = usize>,
    classes: &[u32],
    expected: &[u64],
) -> CheckResult {
    for r in offsets {
        let table = generalized_count_table(block, k, r).expect("table");
        let got: Vec<u64> = classes.iter().map(|i| table[i]).collect();
        if got != expected {
            return check(
                name,
                false,
                format!("offset {r}: got {got:?}, expected {expected:?}"),
            );
        }
    }
    check(name, true, "all offsets match")
}

fn density_check(name: &str, block: &Coloring, k: usize, r: usize, expected: Ratio) -> CheckResult {
    let got = density_upper_bound(block, k, r).expect("density");
    check(
        name,
        got == expected,
        format!("got {got}, expected {expected}"),
    )
}

fn suite_tables() -> Vec<CheckResult> {
    let mut out = Vec::new();
    out.push(row_check(
        "tables/b20-odd-offsets",
        &b20(),
        4,
        (1..=19).step_by(2),
        &(0..8).collect::<Vec<_>>(),
        &tables::B20_ROW,
    ));
    out.push(row_check(
        "tables/b22-even-offsets",
        &b22(),
        4,
        (2..=20).step_by(2),
        &(0..8).collect::<Vec<_>>(),
        &tables::B22_ROW,
    ));
    out.push(row_check(
        "tables/b74-even-offsets",
        &b74(),
        5,
        (2..=72).step_by(2),
        &tables::K5_CLASSES,
        &tables::B74_EVEN_ROW,
    ));
    out.push(row_check(
        "tables/b74-odd-offsets",
        &b74(),
        5,
        (1..=73).step_by(2).filter(|&r| r != 37),
        &tables::K5_CLASSES,
        &tables::B74_ODD_ROW,
    ));
    out.push(row_check(
        "tables/b74-half-offset",
        &b74(),
        5,
        std::iter::once(37),
        &tables::K5_CLASSES,
        &tables::B74_HALF_ROW,
    ));
    let product = ltimes(&b11_template(), &b20()).expect("product block");
    out.push(row_check(
        "tables/b11xb20-even-offsets",
        &product,
        4,
        (2..220).step_by(2).filter(|&r| r % 22 != 0),
        &(0..8).collect::<Vec<_>>(),
        &tables::B11_B20_ROW,
    ));

    out.push(density_check("tables/density-b20-odd", &b20(), 4, 1, Ratio::new(17, 150)));
    out.push(density_check("tables/density-b20-divisible", &b20(), 4, 0, Ratio::new(9, 100)));
    out.push(density_check("tables/density-b22-even", &b22(), 4, 2, Ratio::new(175, 1452)));
    out.push(density_check("tables/density-b22-divisible", &b22(), 4, 0, Ratio::new(21, 242)));
    out.push(density_check("tables/density-b74-odd", &b74(), 5, 1, Ratio::new(3629, 65712)));
    out.push(density_check("tables/density-b74-even", &b74(), 5, 2, Ratio::new(3647, 65712)));
    out.push(density_check("tables/density-b74-half", &b74(), 5, 37, Ratio::new(289, 10952)));
    out.push(density_check("tables/density-b74-divisible", &b74(), 5, 0, Ratio::new(73, 2738)));
    out.push(density_check(
        "tables/density-b11xb20-even",
        &product,
        4,
        2,
        Ratio::new(8543, 72600),
    ));
    out
}

fn random_coloring(rng: &mut ChaCha8Rng, n: usize) -> Coloring {
    Coloring::from_fn(Group::Cyclic(n), |_| rng.gen_range(0..=1))
}

fn suite_identities(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut mix_fail = None;
    for _ in 0..1000 {
        let n = rng.gen_range(4..=40);
        let c = random_coloring(&mut rng, n);
        let report = verify_mix_identity(&c).expect("cyclic");
        if !report.holds {
            mix_fail = Some(format!("failed on {c}"));
            break;
        }
    }
    out.push(check(
        "identities/mix",
        mix_fail.is_none(),
        mix_fail.unwrap_or_else(|| "1000 random colorings".into()),
    ));

    let mut case2_fail = None;
    for _ in 0..1000 {
        let n = 2 + 4 * rng.gen_range(1..=9);
        let c = random_coloring(&mut rng, n);
        let report = verify_case2_formula(&c).expect("n = 2 mod 4");
        if !report.holds {
            case2_fail = Some(format!("failed on {c}"));
            break;
        }
    }
    out.push(check(
        "identities/pair-intersections-mod4",
        case2_fail.is_none(),
        case2_fail.unwrap_or_else(|| "1000 random colorings".into()),
    ));

    let mut lemma_fail = None;
    'outer: for _ in 0..1000 {
        let n = rng.gen_range(1..=40);
        let c = random_coloring(&mut rng, n);
        let k = 4;
        for i in 1..k {
            for j in i + 1..=k {
                for class in [ColorClass::Red, ColorClass::Blue] {
                    let brute =
                        pair_intersection(&c, k, i, j, class, PairMode::BruteForce).expect("pair");
                    let formula =
                        pair_intersection(&c, k, i, j, class, PairMode::Formula).expect("pair");
                    if brute != formula {
                        lemma_fail = Some(format!("({i},{j}) {class:?} on {c}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(check(
        "identities/pair-intersection-modes",
        lemma_fail.is_none(),
        lemma_fail.unwrap_or_else(|| "1000 random colorings, all pairs, both colors".into()),
    ));

    let mut m3_fail = None;
    'm3: for &p in &[5usize, 7, 11, 13] {
        for _ in 0..250 {
            let c = random_coloring(&mut rng, p);
            let direct = count_mono_cyclic(&c, 3, ApFilter::All).expect("cyclic");
            let closed = m3_closed_form(p as u64, c.red_count()).expect("prime");
            if direct != closed {
                m3_fail = Some(format!("p={p} coloring {c}"));
                break 'm3;
            }
        }
    }
    out.push(check(
        "identities/m3-closed-form",
        m3_fail.is_none(),
        m3_fail.unwrap_or_else(|| "1000 random colorings over Z_5..Z_13".into()),
    ));

    out
}

fn suite_recursion(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::new();

    out.push(check(
        "recursion/star-property-b11",
        check_template_star_property(&b11_template(), 4).expect("template"),
        "both star fills admit no non-degenerate monochromatic 4-AP",
    ));
    out.push(check(
        "recursion/star-property-b37",
        check_template_star_property(&b37_template(), 5).expect("template"),
        "both star fills admit no non-degenerate monochromatic 5-AP",
    ));

    let template = b11_template();
    let mut fail = None;
    for _ in 0..200 {
        let t = rng.gen_range(1..=30);
        let inner = random_coloring(&mut rng, t);
        let product = ltimes(&template, &inner).expect("product");
        let direct = count_mono_cyclic(&product, 4, ApFilter::All).expect("cyclic");
        let inner_count = count_mono_cyclic(&inner, 4, ApFilter::All).expect("cyclic");
        if direct != 10 * (t as u64) * (t as u64) + inner_count {
            fail = Some(format!("t={t} inner {inner}"));
            break;
        }
    }
    out.push(check(
        "recursion/b11-product-exact",
        fail.is_none(),
        fail.unwrap_or_else(|| "200 random inner colorings, t <= 30".into()),
    ));

    let template = b37_template();
    let mut fail = None;
    for _ in 0..50 {
        let t = rng.gen_range(1..=12);
        let inner = random_coloring(&mut rng, t);
        let product = ltimes(&template, &inner).expect("product");
        let direct = count_mono_cyclic(&product, 5, ApFilter::All).expect("cyclic");
        let inner_count = count_mono_cyclic(&inner, 5, ApFilter::All).expect("cyclic");
        if direct != 36 * (t as u64) * (t as u64) + inner_count {
            fail = Some(format!("t={t} inner {inner}"));
            break;
        }
    }
    out.push(check(
        "recursion/b37-product-exact",
        fail.is_none(),
        fail.unwrap_or_else(|| "50 random inner colorings, t <= 12".into()),
    ));

    let spec = TowerSpec {
        template: b11_template(),
        depth: 2,
        base: Coloring::new(Group::Cyclic(1), vec![1]).expect("base"),
    };
    let predicted = tower_predicted_count(&spec, 4).expect("tower");
    let direct = count_mono_cyclic(&tower_coloring(&spec).expect("tower"), 4, ApFilter::All)
        .expect("cyclic");
    out.push(check(
        "recursion/tower-depth-2",
        predicted == 1221 && direct == 1221,
        format!("predicted {predicted}, direct {direct}, expected 1221"),
    ));

    out
}

fn suite_pick(seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x91c);
    let mut out = Vec::new();

    let mut identity_fail = None;
    for _ in 0..500 {
        let m = rng.gen_range(3..=10);
        let poly = random_simple_polygon(&mut rng, m, 10, 1);
        let counts = lattice_points(&poly);
        if counts.pick_area() != poly.area() {
            identity_fail = Some(format!("{poly:?}"));
            break;
        }
    }
    out.push(check(
        "pick/identity",
        identity_fail.is_none(),
        identity_fail.unwrap_or_else(|| "500 random lattice polygons".into()),
    ));

    let mut bound_fail = None;
    for _ in 0..500 {
        let m = rng.gen_range(3..=10);
        let poly = random_simple_polygon(&mut rng, m, 10, 4);
        let t = rng.gen_range(10..=50u64);
        let v = Point::new(
            Ratio::new(rng.gen_range(-20..=20), rng.gen_range(1..=6)),
            Ratio::new(rng.gen_range(-20..=20), rng.gen_range(1..=6)),
        );
        let counts = lattice_points_scaled(&poly, t, &v);
        let lhs = (counts.interior as f64 - poly.area().to_f64() * (t * t) as f64).abs();
        let rhs = 3.0 * poly.perimeter_f64() * t as f64 + 5.0 * m as f64;
        if lhs > rhs {
            bound_fail = Some(format!("t={t}, |I - A t^2| = {lhs} > {rhs}"));
            break;
        }
    }
    out.push(check(
        "pick/approximation-bound",
        bound_fail.is_none(),
        bound_fail.unwrap_or_else(|| "500 scaled rational polygons, t in 10..=50".into()),
    ));

    out
}

/// Runs the named suite with the given seed for its randomized sweeps.
pub fn run_suite(suite: Suite, seed: u64) -> SuiteReport {
    let checks = match suite {
        Suite::Tables => suite_tables(),
        Suite::Identities => suite_identities(seed),
        Suite::Recursion => suite_recursion(seed),
        Suite::Pick => suite_pick(seed),
        Suite::All => {
            let mut all = suite_tables();
            all.extend(suite_identities(seed));
            all.extend(suite_recursion(seed));
            all.extend(suite_pick(seed));
            all
        }
    };
    SuiteReport { checks }
}
