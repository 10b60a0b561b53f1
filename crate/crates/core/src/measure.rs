//! Finitely additive flip-antiinvariant signed measures on rectangles
//! `[a,b) × [c,d)` of half-open arcs, and their correspondence with cross
//! ratios.
//!
//! Arc endpoints are drawn from a finite configuration. Two half-open arcs
//! with four distinct endpoints are disjoint exactly when `(a, b, c, d)` is
//! cyclically ordered, so the admissible rectangles are indexed by ordered
//! quadruples of labels.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::circle::Configuration;
use crate::cocycle::{
    all_distinct, check_axioms, distinct_quads, permute, CrossRatioTable, QUAD_SYMMETRIES,
};
use crate::error::{Error, Result};
use crate::linalg::{row, Echelon};
use crate::{Quad, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectMeasure {
    config: Configuration,
    // dense over label 4-tuples; only admissible entries are meaningful
    values: Vec<Rational>,
}

impl RectMeasure {
    pub fn zero(config: Configuration) -> Self {
        let n = config.len();
        Self {
            config,
            values: vec![Rational::zero(); n.pow(4)],
        }
    }

    /// Evaluates `f` on every admissible rectangle, given as the ordered
    /// quadruple `(a, b, c, d)` of `[a,b) × [c,d)`.
    pub fn from_fn(config: Configuration, mut f: impl FnMut(Quad) -> Rational) -> Self {
        let mut m = Self::zero(config);
        for q in m.rects() {
            let i = m.index(q);
            m.values[i] = f(q);
        }
        m
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn n(&self) -> usize {
        self.config.len()
    }

    fn index(&self, [a, b, c, d]: Quad) -> usize {
        let n = self.n();
        ((a * n + b) * n + c) * n + d
    }

    pub fn is_admissible(&self, q: Quad) -> bool {
        q.iter().all(|&l| l < self.n()) && self.config.ordered4(q)
    }

    /// Admissible rectangles in lexicographic label order.
    pub fn rects(&self) -> Vec<Quad> {
        distinct_quads(self.n())
            .filter(|q| self.config.ordered4(*q))
            .collect()
    }

    /// `μ[a,b) × [c,d)`.
    pub fn value(&self, q: Quad) -> Result<&Rational> {
        if !self.is_admissible(q) {
            return Err(Error::NotAdmissible(q));
        }
        Ok(&self.values[self.index(q)])
    }

    pub(crate) fn get(&self, q: Quad) -> &Rational {
        debug_assert!(self.is_admissible(q));
        &self.values[self.index(q)]
    }

    pub(crate) fn set(&mut self, q: Quad, v: Rational) {
        let i = self.index(q);
        self.values[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl Add for &RectMeasure {
    type Output = RectMeasure;

    /// Pointwise sum; both measures must live on the same configuration.
    fn add(self, other: &RectMeasure) -> RectMeasure {
        assert_eq!(self.config, other.config, "measures on different configurations");
        RectMeasure {
            config: self.config.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureViolation {
    /// `μ[a,b)×[c,d) ≠ −μ[c,d)×[a,b)`
    Flip { rect: Quad, value: Rational, flipped: Rational },
    /// `μ[a,b)×[c,d) + μ[b,b')×[c,d) ≠ μ[a,b')×[c,d)` for
    /// `args = [a, b, b', c, d]`
    Additivity { args: [usize; 5], lhs: Rational, rhs: Rational },
}

impl fmt::Display for MeasureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureViolation::Flip { rect, value, flipped } => write!(
                f,
                "flip at [{},{})x[{},{}): {value} != -({flipped})",
                rect[0], rect[1], rect[2], rect[3]
            ),
            MeasureViolation::Additivity { args, lhs, rhs } => write!(
                f,
                "additivity at [{},{})+[{},{}) x [{},{}): {lhs} != {rhs}",
                args[0], args[1], args[1], args[2], args[3], args[4]
            ),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MeasureReport {
    /// Flip and additivity instances checked.
    pub checked: [usize; 2],
    pub violations: Vec<MeasureViolation>,
}

impl MeasureReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Additivity instances `[a, b, b', c, d]`: `(a, b, b', c, d)` cyclically
/// ordered, so `[a,b') = [a,b) ∪ [b,b')` is disjoint from `[c,d)`.
fn additivity_instances(cfg: &Configuration) -> Vec<[usize; 5]> {
    let n = cfg.len();
    let mut out = Vec::new();
    for q @ [a, b, b1, c] in distinct_quads(n) {
        if !cfg.ordered4(q) {
            continue;
        }
        for d in 0..n {
            if ![a, b, b1, c].contains(&d) && cfg.ordered4([a, b1, c, d]) && cfg.ordered4([a, b, c, d])
            {
                out.push([a, b, b1, c, d]);
            }
        }
    }
    out
}

/// Exhaustive check of flip-antiinvariance and additivity in the first
/// factor.
pub fn check_measure(m: &RectMeasure) -> MeasureReport {
    let mut report = MeasureReport::default();
    for rect @ [a, b, c, d] in m.rects() {
        report.checked[0] += 1;
        let v = m.get(rect);
        let flipped = m.get([c, d, a, b]);
        if !(v + flipped).is_zero() {
            report.violations.push(MeasureViolation::Flip {
                rect,
                value: v.clone(),
                flipped: flipped.clone(),
            });
        }
    }
    for args @ [a, b, b1, c, d] in additivity_instances(&m.config) {
        report.checked[1] += 1;
        let lhs = m.get([a, b, c, d]) + m.get([b, b1, c, d]);
        let rhs = m.get([a, b1, c, d]);
        if lhs != *rhs {
            report.violations.push(MeasureViolation::Additivity {
                args,
                lhs,
                rhs: rhs.clone(),
            });
        }
    }
    report
}

/// Total weight of the configuration points in `[a, b)`.
pub fn arc_mass(cfg: &Configuration, weights: &[Rational], a: usize, b: usize) -> Rational {
    (0..cfg.len())
        .filter(|&x| cfg.in_arc(a, b, x))
        .map(|x| &weights[x])
        .sum()
}

/// `μ[a,b)×[c,d) = ρ[a,b)·σ[c,d) − σ[a,b)·ρ[c,d)` for atomic measures `ρ`,
/// `σ` with one weight per configuration point.
pub fn measure_from_atoms(
    cfg: &Configuration,
    rho: &[Rational],
    sigma: &[Rational],
) -> Result<RectMeasure> {
    if rho.len() != cfg.len() || sigma.len() != cfg.len() {
        return Err(Error::Mismatch(format!(
            "{} points but {} and {} atom weights",
            cfg.len(),
            rho.len(),
            sigma.len()
        )));
    }
    Ok(RectMeasure::from_fn(cfg.clone(), |[a, b, c, d]| {
        arc_mass(cfg, rho, a, b) * arc_mass(cfg, sigma, c, d)
            - arc_mass(cfg, sigma, a, b) * arc_mass(cfg, rho, c, d)
    }))
}

/// The measure of a cross ratio: `μ[a,b)×[c,d) = t(a,b,c,d)` on ordered
/// quadruples.
pub fn psi(t: &CrossRatioTable, cfg: &Configuration) -> Result<RectMeasure> {
    if t.n() != cfg.len() {
        return Err(Error::Mismatch(format!(
            "table on {} labels, configuration of {} points",
            t.n(),
            cfg.len()
        )));
    }
    if let Some(v) = check_axioms(t).violations.first() {
        return Err(Error::AxiomViolation(v.to_string()));
    }
    Ok(RectMeasure::from_fn(cfg.clone(), |q| t.get(q).clone()))
}

/// Orbit representatives of the 4-subsets of a configuration.
///
/// For a subset `p, q, r, s` listed in cyclic order the three orbits of 4-tuples
/// under axioms i) and ii) are represented by the ordered quadruples
/// `(p,q,r,s)` and `(q,r,s,p)` and the linked quadruple `(p,r,q,s)`.
struct SubsetOrbits {
    subsets: Vec<Quad>,
    by_mask: HashMap<u64, usize>,
}

impl SubsetOrbits {
    fn new(cfg: &Configuration) -> Self {
        let cyc = cfg.cyclic_labels();
        let n = cfg.len();
        let mut subsets = Vec::new();
        let mut by_mask = HashMap::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        let s = [cyc[i], cyc[j], cyc[k], cyc[l]];
                        by_mask.insert(mask(&s), subsets.len());
                        subsets.push(s);
                    }
                }
            }
        }
        Self { subsets, by_mask }
    }

    fn reps(&self, id: usize) -> [Quad; 3] {
        let [p, q, r, s] = self.subsets[id];
        [[p, q, r, s], [q, r, s, p], [p, r, q, s]]
    }

    /// `(subset id, representative index, sign)` with
    /// `t(x) = sign · t(reps[index])` under axioms i) and ii).
    fn locate(&self, x: Quad) -> (usize, usize, i64) {
        let id = self.by_mask[&mask(&x)];
        for (k, rep) in self.reps(id).into_iter().enumerate() {
            for (map, sign) in QUAD_SYMMETRIES {
                if permute(rep, map) == x {
                    return (id, k, sign);
                }
            }
        }
        unreachable!("every arrangement lies in one of the three orbits")
    }
}

fn mask(q: &[usize]) -> u64 {
    q.iter().fold(0, |m, &l| m | (1u64 << l))
}

/// Reconstructs a cross ratio from a valid measure.
///
/// The result agrees with `m` on every ordered quadruple and vanishes on the
/// linked rearrangement `(a, c, b, d)` of `base = (a, b, c, d)`. The
/// remaining linked values are filled in subset by subset, sweeping 4-subsets
/// in lexicographic order of cyclic positions, with the additivity identity
/// `[x,y',z,w] = [x,y,z,w] + [y,y',z,w]` whose right-hand side is already
/// known.
pub fn crossratio_from_measure(m: &RectMeasure, base: Quad) -> Result<CrossRatioTable> {
    let cfg = m.config();
    let n = cfg.len();
    for &l in &base {
        cfg.check_label(l)?;
    }
    if !cfg.ordered4(base) {
        return Err(Error::BaseNotOrdered(base));
    }
    if let Some(v) = check_measure(m).violations.first() {
        return Err(Error::MeasureViolation(v.to_string()));
    }

    let orbits = SubsetOrbits::new(cfg);
    let mut linked: Vec<Option<Rational>> = vec![None; orbits.subsets.len()];
    linked[orbits.by_mask[&mask(&base)]] = Some(Rational::zero());

    let lookup = |linked: &[Option<Rational>], x: Quad| -> Option<Rational> {
        let (id, k, sign) = orbits.locate(x);
        let v = if k < 2 {
            m.get(orbits.reps(id)[k]).clone()
        } else {
            linked[id].clone()?
        };
        Some(if sign > 0 { v } else { -v })
    };

    let mut remaining = linked.iter().filter(|v| v.is_none()).count();
    while remaining > 0 {
        let before = remaining;
        for id in 0..orbits.subsets.len() {
            if linked[id].is_some() {
                continue;
            }
            let subset = orbits.subsets[id];
            let target = orbits.reps(id)[2];
            'arrangements: for (map, sign) in QUAD_SYMMETRIES {
                let [x, y1, z, w] = permute(target, map);
                for y in (0..n).filter(|y| !subset.contains(y)) {
                    let (Some(v1), Some(v2)) = (
                        lookup(&linked, [x, y, z, w]),
                        lookup(&linked, [y, y1, z, w]),
                    ) else {
                        continue;
                    };
                    let v = v1 + v2;
                    linked[id] = Some(if sign > 0 { v } else { -v });
                    remaining -= 1;
                    break 'arrangements;
                }
            }
        }
        if remaining == before {
            return Err(Error::Reconstruction(format!(
                "{remaining} linked values could not be reached from the base"
            )));
        }
    }

    let mut t = CrossRatioTable::zero(n);
    for (id, value) in linked.into_iter().enumerate() {
        let reps = orbits.reps(id);
        let values = [
            m.get(reps[0]).clone(),
            m.get(reps[1]).clone(),
            value.expect("all subsets resolved"),
        ];
        for (rep, v) in reps.into_iter().zip(values) {
            for (map, sign) in QUAD_SYMMETRIES {
                let x = permute(rep, map);
                debug_assert!(all_distinct(&x));
                t.set(x, if sign > 0 { v.clone() } else { -v.clone() });
            }
        }
    }
    if let Some(v) = check_axioms(&t).violations.first() {
        return Err(Error::Reconstruction(v.to_string()));
    }
    Ok(t)
}

/// Dimension of the space of valid rectangle measures on `n` cyclically
/// ordered points, by exact elimination.
pub fn measure_space_dimension(n: usize) -> Result<usize> {
    if !crate::cocycle::DIMENSION_RANGE.contains(&n) {
        return Err(Error::Size {
            what: "measure_space_dimension",
            n,
            min: *crate::cocycle::DIMENSION_RANGE.start(),
            max: *crate::cocycle::DIMENSION_RANGE.end(),
        });
    }
    let cfg = Configuration::standard(n);
    let probe = RectMeasure::zero(cfg.clone());
    let rects = probe.rects();
    let col: HashMap<Quad, usize> = rects.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let mut e = Echelon::new(rects.len());
    for &[a, b, c, d] in &rects {
        e.insert_homogeneous(row([(col[&[a, b, c, d]], 1), (col[&[c, d, a, b]], 1)]));
    }
    for [a, b, b1, c, d] in additivity_instances(&cfg) {
        e.insert_homogeneous(row([
            (col[&[a, b, c, d]], 1),
            (col[&[b, b1, c, d]], 1),
            (col[&[a, b1, c, d]], -1),
        ]));
    }
    Ok(e.nullity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn atoms(n: usize, at: &[(usize, i64)]) -> Vec<Rational> {
        let mut w = vec![rat(0); n];
        for &(i, v) in at {
            w[i] = rat(v);
        }
        w
    }

    fn atom_fixture() -> RectMeasure {
        let cfg = Configuration::standard(4);
        measure_from_atoms(&cfg, &atoms(4, &[(0, 1)]), &atoms(4, &[(2, 1)])).unwrap()
    }

    #[test]
    fn atom_fixture_values() {
        let m = atom_fixture();
        assert_eq!(*m.value([0, 1, 2, 3]).unwrap(), rat(1));
        assert_eq!(*m.value([2, 3, 0, 1]).unwrap(), rat(-1));
        assert!(check_measure(&m).is_valid());
        assert!(matches!(m.value([0, 2, 1, 3]), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn equal_atoms_give_zero() {
        let cfg = Configuration::standard(6);
        let w: Vec<Rational> = (0..6).map(|i| rat(i * i - 2)).collect();
        assert!(measure_from_atoms(&cfg, &w, &w).unwrap().is_zero());
    }

    #[test]
    fn zero_measure_is_valid_and_perturbation_is_not() {
        let cfg = Configuration::standard(5);
        assert!(check_measure(&RectMeasure::zero(cfg.clone())).is_valid());
        let mut m = measure_from_atoms(&cfg, &atoms(5, &[(1, 2), (3, -1)]), &atoms(5, &[(4, 1)])).unwrap();
        let v = m.get([0, 1, 2, 3]) + rat(1);
        m.set([0, 1, 2, 3], v);
        let report = check_measure(&m);
        assert!(!report.is_valid());
        assert!(report.violations.iter().any(|v| matches!(v, MeasureViolation::Flip { rect, .. } if *rect == [0, 1, 2, 3])));
    }

    #[test]
    fn psi_kills_canonical() {
        let cfg = Configuration::from_strs(&["0", "1", "inf", "-2", "1/3"]).unwrap();
        assert!(psi(&CrossRatioTable::canonical(&cfg), &cfg).unwrap().is_zero());
        assert!(psi(&CrossRatioTable::zero(5), &cfg).unwrap().is_zero());
    }

    #[test]
    fn reconstruction_round_trip_on_fixture() {
        let m = atom_fixture();
        let t = crossratio_from_measure(&m, [0, 1, 2, 3]).unwrap();
        assert_eq!(*t.get([0, 1, 2, 3]), rat(1));
        assert_eq!(*t.get([0, 2, 1, 3]), rat(0));
        assert_eq!(psi(&t, m.config()).unwrap(), m);
    }

    #[test]
    fn zero_measure_reconstructs_zero() {
        let cfg = Configuration::standard(6);
        let t = crossratio_from_measure(&RectMeasure::zero(cfg.clone()), [1, 2, 4, 5]).unwrap();
        assert!(t.is_zero());
        assert_ne!(t, CrossRatioTable::canonical(&cfg));
    }

    #[test]
    fn reconstruction_rejects_bad_input() {
        let m = atom_fixture();
        assert!(matches!(
            crossratio_from_measure(&m, [0, 2, 1, 3]),
            Err(Error::BaseNotOrdered(_))
        ));
        let mut bad = m.clone();
        bad.set([0, 1, 2, 3], rat(5));
        assert!(matches!(
            crossratio_from_measure(&bad, [0, 1, 2, 3]),
            Err(Error::MeasureViolation(_))
        ));
    }

    #[test]
    fn measure_dimension_small_cases() {
        assert_eq!(measure_space_dimension(4).unwrap(), 2);
        assert_eq!(measure_space_dimension(5).unwrap(), 5);
        assert_eq!(measure_space_dimension(6).unwrap(), 9);
    }
}
