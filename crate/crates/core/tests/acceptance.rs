//! Acceptance suite: one PASS/FAIL line per criterion, all checks exact.
//!
//! Run with `cargo test -p crossratio --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rayon::prelude::*;

use crossratio::circle::cyclic_ordered;
use crossratio::coarse::{
    busemann_inequality_report, four_point_delta, gromov_product, slim_triangle_delta, tree_catalog, FiniteGraphSpace,
    RayFamily,
};
use crossratio::cocycle::{
    check_axioms, coboundary2, cochain_from_crossratio, crossratio_basis, crossratio_from_cocycle, distinct_triples,
    nu_dependence, space_dimension, ConstraintSet,
};
use crossratio::fixtures::{random_cocycle, random_configuration, random_crossratio, random_measure, random_mobius};
use crossratio::measure::{crossratio_from_measure, psi};
use crossratio::mobius::{basepoint_change_check, canonical_invariance, Orientation};
use crossratio::rng::Lcg64;
use crossratio::words::{brooks_counting, enumerate_reduced, quasimorphism_defect, Generators, Letter};
use crossratio::{BoundaryPoint, Configuration, CrossRatioTable, GroupWord, Rational};

/// Defect of the Brooks function of `gh` on words of length ≤ 3, from an
/// exhaustive enumerator written independently of this crate.
const BROOKS_GH_DEFECT_L3: i64 = 1;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{}; {:.2} s", o.detail, elapsed.as_secs_f64());
    if let Some(limit) = limit {
        if elapsed > limit {
            o.pass = false;
            o.detail = format!("{} exceeds {} s", o.detail, limit.as_secs());
        }
    }
    o
}

fn binom2(n: usize) -> usize {
    n * (n - 1) / 2
}

fn axiom_suite() -> Outcome {
    let mut rng = Lcg64::new(1);
    let mut configs = vec![
        Configuration::standard(6),
        Configuration::from_strs(&["inf", "-3", "1/2", "0", "7/3", "-1/5"]).unwrap(),
    ];
    configs.extend((0..48).map(|_| random_configuration(&mut rng, 6)));
    let mut quads = 0;
    let mut instances = 0;
    let mut violations = 0;
    for cfg in &configs {
        let report = check_axioms(&CrossRatioTable::canonical(cfg));
        quads += report.checked[0];
        instances += report.checked.iter().sum::<usize>();
        violations += report.violations.len();
    }
    let per_config = quads / configs.len();
    outcome(
        violations == 0 && per_config == 360,
        format!(
            "{} six-point configurations, {per_config} quadruples each, {instances} axiom instances, {violations} violations",
            configs.len()
        ),
    )
}

fn nu_independence() -> Outcome {
    let mut rng = Lcg64::new(2);
    let mut bad = 0;
    let mut triples = 0;
    for _ in 0..50 {
        let cfg = random_configuration(&mut rng, 7);
        let t = random_crossratio(&mut rng, &cfg);
        if !check_axioms(&t).is_valid() {
            return outcome(false, "fixture violates the axioms");
        }
        bad += nu_dependence(&t).len();
        triples += distinct_triples(7).count();
    }
    outcome(bad == 0, format!("50 tables on 7 points, {triples} triples x 4 choices of nu, {bad} disagreements"))
}

fn cocycle_identities() -> Outcome {
    let mut rng = Lcg64::new(3);
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 4..=6 {
        for k in 0..20 {
            let cfg = random_configuration(&mut rng, n);
            let t = if k % 4 == 0 {
                CrossRatioTable::canonical(&cfg)
            } else {
                random_crossratio(&mut rng, &cfg)
            };
            let phi = cochain_from_crossratio(&t).expect("valid table");
            checked += 1;
            if let Some(tr) = phi.as_cochain().alternation_defect() {
                failures.push(format!("n={n} not alternating at {tr:?}"));
            }
            if let Some((q, v)) = coboundary2(phi.as_cochain()).first_nonzero() {
                failures.push(format!("n={n} coboundary {v} at {q:?}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} cochains for n = 4..6; {}", summary(&failures)))
}

fn summary(failures: &[String]) -> String {
    match failures.first() {
        None => "no failures".into(),
        Some(f) => format!("{} failures, first: {f}", failures.len()),
    }
}

fn round_trips() -> Outcome {
    let mut rng = Lcg64::new(4);
    let mut failures = Vec::new();
    for k in 0..50 {
        let n = 4 + k % 3;
        let cfg = random_configuration(&mut rng, n);
        let t = random_crossratio(&mut rng, &cfg);
        let back = crossratio_from_cocycle(&cochain_from_crossratio(&t).unwrap()).unwrap();
        if back != t {
            failures.push(format!("table fixture {k} (n={n})"));
        }
    }
    for k in 0..50 {
        let n = 4 + k % 3;
        let phi = random_cocycle(&mut rng, n);
        let back = cochain_from_crossratio(&crossratio_from_cocycle(&phi).unwrap()).unwrap();
        if back != phi {
            failures.push(format!("cocycle fixture {k} (n={n})"));
        }
    }
    let mut dims = Vec::new();
    for n in 4..=6 {
        let d = space_dimension(n, ConstraintSet::AxiomsOnly).unwrap();
        let c = space_dimension(n, ConstraintSet::AlternatingCocycles).unwrap();
        dims.push(d);
        if d != binom2(n) - (n - 1) || c != d {
            failures.push(format!("n={n}: axioms_only {d}, cocycles {c}, expected {}", binom2(n) - (n - 1)));
        }
    }
    outcome(
        failures.is_empty(),
        format!("50 + 50 round trips; axioms_only dims {dims:?}; {}", summary(&failures)),
    )
}

fn canonical_kernel() -> Outcome {
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for n in 4..=6 {
        let d = space_dimension(n, ConstraintSet::AxiomsPlusVanishingOnOrdered).unwrap();
        dims.push(d);
        let basis = crossratio_basis(n, true).unwrap();
        let canonical = CrossRatioTable::canonical(&Configuration::standard(n));
        match basis.as_slice() {
            [v] => match v.multiple_of(&canonical) {
                Some(c) if !c.is_zero() => {}
                _ => failures.push(format!("n={n}: basis vector not a nonzero multiple of the canonical table")),
            },
            _ => failures.push(format!("n={n}: basis of size {}", basis.len())),
        }
    }
    outcome(
        failures.is_empty() && dims == [1, 1, 1],
        format!("dimensions {dims:?}; {}", summary(&failures)),
    )
}

fn measure_correspondence() -> Outcome {
    let mut rng = Lcg64::new(6);
    let mut failures = Vec::new();
    let mut reconstructions = 0;
    for k in 0..50 {
        let n = 4 + k % 3;
        let cfg = random_configuration(&mut rng, n);
        let m = random_measure(&mut rng, &cfg);
        for base in m.rects() {
            reconstructions += 1;
            let t = crossratio_from_measure(&m, base).unwrap();
            if psi(&t, &cfg).unwrap() != m {
                failures.push(format!("measure {k}, base {base:?}: psi of reconstruction differs"));
            }
        }
    }
    let mut kernel_checks = 0;
    for k in 0..50 {
        let n = 4 + k % 3;
        let cfg = random_configuration(&mut rng, n);
        let t = random_crossratio(&mut rng, &cfg);
        let canonical = CrossRatioTable::canonical(&cfg);
        let m = psi(&t, &cfg).unwrap();
        for [a, b, c, d] in m.rects() {
            kernel_checks += 1;
            let r = crossratio_from_measure(&m, [a, b, c, d]).unwrap();
            let expected = t.get([a, c, b, d]);
            match (&t - &r).multiple_of(&canonical) {
                Some(mult) if mult == *expected => {}
                other => failures.push(format!("table {k}, base {:?}: multiple {other:?}, expected {expected}", [a, b, c, d])),
            }
        }
        if !psi(&canonical, &cfg).unwrap().is_zero() {
            failures.push(format!("psi of the canonical table is nonzero on configuration {k}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{reconstructions} measure reconstructions, {kernel_checks} table reconstructions, psi(canonical) = 0 on 50 configurations; {}",
            summary(&failures)
        ),
    )
}

fn mobius_invariance() -> Outcome {
    let mut rng = Lcg64::new(7);
    let maps: Vec<_> = (0..100).map(|_| random_mobius(&mut rng, 9)).collect();
    let configs: Vec<_> = (0..100).map(|_| random_configuration(&mut rng, 5)).collect();
    let (checked, violations) = maps
        .par_iter()
        .map(|m| {
            configs.iter().fold((0, 0), |(c, v), cfg| {
                let r = canonical_invariance(cfg, m);
                (c + r.checked, v + r.violations.len())
            })
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    outcome(
        violations == 0 && checked == 100 * 100 * 120,
        format!("100 maps x 100 five-point configurations, {checked} quadruples, {violations} violations"),
    )
}

fn basepoint_change() -> Outcome {
    let gens = Generators::ping_pong();
    let words = enumerate_reduced(3);
    let elements = gens.evaluate_all(&words);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (xi, eta) in [
        (BoundaryPoint::int(0), BoundaryPoint::Infinity),
        (BoundaryPoint::frac(1, 3), BoundaryPoint::frac(-2, 5)),
    ] {
        let report = basepoint_change_check(&Orientation, &xi, &eta, &elements);
        checked += report.checked;
        if let Some([i, j, k]) = report.violations.first() {
            failures.push(format!(
                "xi={xi}, eta={eta}: {} violations, first at ({}, {}, {})",
                report.violations.len(),
                words[*i],
                words[*j],
                words[*k]
            ));
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} words, {checked} triples over two basepoint pairs; {}", words.len(), summary(&failures)),
    )
}

fn orientation_values() -> Outcome {
    let mut rng = Lcg64::new(9);
    let half = Rational::new(1.into(), 2.into());
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 4..=6 {
        let mut configs = vec![Configuration::standard(n)];
        configs.extend((0..20).map(|_| random_configuration(&mut rng, n)));
        for cfg in configs {
            let phi = cochain_from_crossratio(&CrossRatioTable::canonical(&cfg)).unwrap();
            for [a, b, c] in distinct_triples(n) {
                checked += 1;
                let positive = cyclic_ordered(cfg.point(a), cfg.point(b), cfg.point(c)).unwrap();
                let expected = if positive { half.clone() } else { -half.clone() };
                if *phi.get([a, b, c]) != expected {
                    failures.push(format!("n={n}, triple {:?}", [a, b, c]));
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("{checked} triples on 63 configurations; {}", summary(&failures)))
}

fn quasimorphisms() -> Outcome {
    let rat = |v: i64| Rational::from_integer(v.into());
    let dg = quasimorphism_defect(|w| rat(w.exponent_sum(Letter::G)), 5);
    let dh = quasimorphism_defect(|w| rat(w.exponent_sum(Letter::H)), 5);
    let gh: GroupWord = "gh".parse().unwrap();
    let brooks = quasimorphism_defect(|w| rat(brooks_counting(&gh, w)), 3);
    let pass = dg.defect.is_zero() && dh.defect.is_zero() && brooks.defect == rat(BROOKS_GH_DEFECT_L3);
    outcome(
        pass,
        format!(
            "exponent sums at L=5: {} and {} over {} pairs; Brooks(gh) at L=3: {} (independent enumerator: {BROOKS_GH_DEFECT_L3})",
            dg.defect, dh.defect, dg.pairs, brooks.defect
        ),
    )
}

fn coarse_geometry() -> Outcome {
    let mut failures = Vec::new();
    let trees = tree_catalog(12);
    let nonzero = trees
        .par_iter()
        .filter(|t| !four_point_delta(t).delta.is_zero())
        .count();
    if nonzero > 0 {
        failures.push(format!("{nonzero} trees with positive four-point delta"));
    }
    let c8 = slim_triangle_delta(&FiniteGraphSpace::cycle(8)).unwrap();
    if c8.delta != 2 || c8.capped_pairs > 0 {
        failures.push(format!("slim delta of C8 is {} ({} capped pairs)", c8.delta, c8.capped_pairs));
    }

    let mut fixtures: Vec<FiniteGraphSpace> = trees.clone();
    fixtures.extend((3..=10).map(FiniteGraphSpace::cycle));
    fixtures.extend((1..=6).map(FiniteGraphSpace::complete));
    let grid = |w: usize, h: usize| {
        let mut edges = Vec::new();
        for i in 0..w * h {
            if (i + 1) % w != 0 {
                edges.push((i, i + 1));
            }
            if i + w < w * h {
                edges.push((i, i + w));
            }
        }
        FiniteGraphSpace::new(w * h, &edges).unwrap()
    };
    fixtures.push(grid(3, 4));
    fixtures.push(grid(4, 4));
    let gromov_bad: usize = fixtures
        .par_iter()
        .map(|g| {
            let n = g.n();
            let mut bad = 0;
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let p = gromov_product(g, y, z, x).unwrap();
                        let cap = Rational::from_integer(g.d(x, y).min(g.d(x, z)).into());
                        if p < Rational::zero() || p > cap || p != gromov_product(g, z, y, x).unwrap() {
                            bad += 1;
                        }
                    }
                }
            }
            bad
        })
        .sum();
    if gromov_bad > 0 {
        failures.push(format!("{gromov_bad} Gromov product bound failures"));
    }

    // rays toward one end of a diameter, from every vertex far enough away
    let (mut stabilized_pairs, mut lipschitz_bad, mut bound_bad, mut tree_samples) = (0, 0, 0, 0);
    for t in trees.iter().filter(|t| t.diameter() >= 4) {
        let u = (0..t.n()).max_by_key(|&v| (t.eccentricity(v), v)).unwrap();
        let target = (0..t.n()).max_by_key(|&v| (t.d(u, v), v)).unwrap();
        let starts: Vec<usize> = (0..t.n()).collect();
        let family = RayFamily::toward(t, &starts, target, 100).unwrap();
        let samples: Vec<usize> = (0..t.n()).collect();
        let report = busemann_inequality_report(t, &family, &samples).unwrap();
        tree_samples += 1;
        stabilized_pairs += report.lipschitz_checked;
        lipschitz_bad += report.lipschitz_violations;
        bound_bad += report.bound_violations;
    }
    if lipschitz_bad > 0 || bound_bad > 0 || stabilized_pairs == 0 {
        failures.push(format!(
            "Busemann: {lipschitz_bad} Lipschitz and {bound_bad} bound violations over {stabilized_pairs} stabilized pairs"
        ));
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} trees (four-point delta 0), slim delta C8 = {}, Gromov bounds on {} graphs, {stabilized_pairs} stabilized Busemann pairs on {tree_samples} trees; {}",
            trees.len(),
            c8.delta,
            fixtures.len(),
            summary(&failures)
        ),
    )
}

fn main() -> ExitCode {
    type Check = (&'static str, Option<u64>, fn() -> Outcome);
    let criteria: [Check; 11] = [
        ("canonical cross ratio passes the axiom suite on 6-point configurations", Some(5), axiom_suite),
        ("cocycle value is independent of the auxiliary point", None, nu_independence),
        ("induced cochains are alternating and closed", None, cocycle_identities),
        ("cross ratio <-> cocycle round trips and dimensions", None, round_trips),
        ("vanishing on ordered quadruples forces a multiple of the canonical cross ratio", None, canonical_kernel),
        ("measure <-> cross ratio correspondence modulo the canonical cross ratio", None, measure_correspondence),
        ("canonical cross ratio is Mobius invariant", None, mobius_invariance),
        ("orbit cocycle basepoint change is a coboundary", Some(30), basepoint_change),
        ("canonical cocycle is the orientation cocycle", None, orientation_values),
        ("quasimorphism defects", None, quasimorphisms),
        ("coarse geometry of graphs", None, coarse_geometry),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let o = timed(limit.map(Duration::from_secs), check);
        if !o.pass {
            failed += 1;
        }
        println!("{} [{:>2}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
