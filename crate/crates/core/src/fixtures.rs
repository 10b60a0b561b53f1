//! Seeded random fixtures built on [`Lcg64`], so every fixture can be
//! regenerated from its seed.

use crate::circle::{BoundaryPoint, Configuration};
use crate::cocycle::{alternating_coboundary, CrossRatioTable};
use crate::measure::{crossratio_from_measure, measure_from_atoms, RectMeasure};
use crate::mobius::MobiusMap;
use crate::rng::Lcg64;
use crate::{Quad, Rational};

/// `p/q` with `p ∈ [−num, num]` and `q ∈ [1, den]`.
pub fn random_rational(rng: &mut Lcg64, num: i64, den: i64) -> Rational {
    let p = rng.range(-num, num);
    let q = rng.range(1, den);
    Rational::new(p.into(), q.into())
}

/// `n` distinct points; `∞` is included with probability 1/4.
pub fn random_configuration(rng: &mut Lcg64, n: usize) -> Configuration {
    let mut points: Vec<BoundaryPoint> = Vec::with_capacity(n);
    if n > 0 && rng.below(4) == 0 {
        points.push(BoundaryPoint::Infinity);
    }
    while points.len() < n {
        let p = BoundaryPoint::Finite(random_rational(rng, 20, 6));
        if !points.contains(&p) {
            points.push(p);
        }
    }
    // the position of ∞ in the label order should not be fixed
    for i in (1..n).rev() {
        points.swap(i, rng.below(i + 1));
    }
    Configuration::new(points).expect("points drawn distinct")
}

/// One small rational weight per point.
pub fn random_atoms(rng: &mut Lcg64, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, 4, 3)).collect()
}

/// Sum of two atom-built measures.
pub fn random_measure(rng: &mut Lcg64, cfg: &Configuration) -> RectMeasure {
    let n = cfg.len();
    let mut m = RectMeasure::zero(cfg.clone());
    for _ in 0..2 {
        let rho = random_atoms(rng, n);
        let sigma = random_atoms(rng, n);
        m = &m + &measure_from_atoms(cfg, &rho, &sigma).expect("weights match the configuration");
    }
    m
}

/// A random cyclically ordered quadruple of labels.
pub fn random_ordered_quad(rng: &mut Lcg64, cfg: &Configuration) -> Quad {
    let cyc = cfg.cyclic_labels();
    let n = cyc.len();
    let mut picked: Vec<usize> = Vec::with_capacity(4);
    while picked.len() < 4 {
        let i = rng.below(n);
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked.sort_unstable();
    let start = rng.below(4);
    std::array::from_fn(|k| cyc[picked[(start + k) % 4]])
}

/// Reconstruction of a random measure plus a random multiple of `[,]₀`.
pub fn random_crossratio(rng: &mut Lcg64, cfg: &Configuration) -> CrossRatioTable {
    let m = random_measure(rng, cfg);
    let base = random_ordered_quad(rng, cfg);
    let t = crossratio_from_measure(&m, base).expect("atom-built measures are valid");
    let c = random_rational(rng, 5, 4);
    &t + &CrossRatioTable::canonical(cfg).scaled(&c)
}

/// A random alternating 2-cocycle on `n` labels, as the coboundary of a
/// random 1-cochain.
pub fn random_cocycle(rng: &mut Lcg64, n: usize) -> crate::AltCochain2 {
    let b: Vec<Rational> = (0..n * n).map(|_| random_rational(rng, 6, 4)).collect();
    alternating_coboundary(n, |x, y| b[x * n + y].clone())
}

/// A random Möbius map with entries in `[−bound, bound]` and positive
/// determinant.
pub fn random_mobius(rng: &mut Lcg64, bound: i64) -> MobiusMap {
    loop {
        let [p, q, r, s] = [(); 4].map(|_| rng.range(-bound, bound));
        if let Ok(m) = MobiusMap::from_ints(p, q, r, s) {
            return m;
        }
    }
}
