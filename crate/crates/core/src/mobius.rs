//! Exact `PSL(2,ℚ)` action on `RP¹`, orbit cocycles and the cochain
//! realizing a change of basepoint.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::circle::{canonical_cross_ratio, orientation_cocycle, parse_rational, BoundaryPoint, Configuration};
use crate::cocycle::{delta1, delta2, distinct_quads, CrossRatioTable};
use crate::error::{Error, Result};
use crate::{Quad, Rational};

/// A Möbius map `x ↦ (p·x + q)/(r·x + s)` with `ps − qr > 0`.
///
/// Stored as the canonical integer representative of its projective class:
/// content 1 and first nonzero entry positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MobiusMap {
    m: [BigInt; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Identity => "identity",
            Kind::Elliptic => "elliptic",
            Kind::Parabolic => "parabolic",
            Kind::Hyperbolic => "hyperbolic",
        })
    }
}

/// Open interval `(lo, hi)` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        self.lo < *x && *x < self.hi
    }

    pub fn disjoint(&self, other: &Interval) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPoints {
    /// No fixed point on `RP¹`.
    Elliptic,
    Parabolic(BoundaryPoint),
    Hyperbolic {
        attracting: BoundaryPoint,
        repelling: BoundaryPoint,
    },
    /// Hyperbolic with a non-square discriminant: the fixed points are not
    /// rational and are given by isolating intervals.
    Irrational {
        discriminant: BigInt,
        attracting: Interval,
        repelling: Interval,
    },
}

impl MobiusMap {
    pub fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> Result<Self> {
        let det = &p * &s - &q * &r;
        if !det.is_positive() {
            return Err(Error::Determinant(det.to_string()));
        }
        let mut m = [p, q, r, s];
        let g = m.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let negate = m.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in &mut m {
            *x = &*x / &g;
            if negate {
                *x = -&*x;
            }
        }
        Ok(Self { m })
    }

    pub fn from_ints(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        Self::new(p.into(), q.into(), r.into(), s.into())
    }

    /// Clears denominators of a rational matrix.
    pub fn from_rationals(entries: [Rational; 4]) -> Result<Self> {
        let l = entries
            .iter()
            .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let [p, q, r, s] = entries.map(|x| (x * Rational::from_integer(l.clone())).to_integer());
        Self::new(p, q, r, s)
    }

    pub fn identity() -> Self {
        Self::from_ints(1, 0, 0, 1).expect("det 1")
    }

    /// `[p, q, r, s]` of the canonical representative.
    pub fn entries(&self) -> &[BigInt; 4] {
        &self.m
    }

    pub fn det(&self) -> BigInt {
        let [p, q, r, s] = &self.m;
        p * s - q * r
    }

    pub fn trace(&self) -> BigInt {
        &self.m[0] + &self.m[3]
    }

    /// `tr² − 4·det`.
    pub fn discriminant(&self) -> BigInt {
        let t = self.trace();
        &t * &t - BigInt::from(4) * self.det()
    }

    pub fn apply(&self, x: &BoundaryPoint) -> BoundaryPoint {
        let [p, q, r, s] = &self.m;
        let (num, den) = match x {
            BoundaryPoint::Infinity => (p.clone(), r.clone()),
            BoundaryPoint::Finite(x) => {
                let (a, b) = (x.numer(), x.denom());
                (p * a + q * b, r * a + s * b)
            }
        };
        if den.is_zero() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(Rational::new(num, den))
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Self::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of positive determinants")
    }

    pub fn inverse(&self) -> Self {
        let [p, q, r, s] = &self.m;
        Self::new(s.clone(), -q, -r, p.clone()).expect("adjugate keeps the determinant")
    }

    pub fn is_identity(&self) -> bool {
        let [p, q, r, s] = &self.m;
        q.is_zero() && r.is_zero() && p == s
    }

    pub fn classify(&self) -> Kind {
        if self.is_identity() {
            return Kind::Identity;
        }
        match self.discriminant().sign() {
            num_bigint::Sign::Minus => Kind::Elliptic,
            num_bigint::Sign::NoSign => Kind::Parabolic,
            num_bigint::Sign::Plus => Kind::Hyperbolic,
        }
    }

    /// Derivative of the map at a finite fixed point, or in the chart `1/x`
    /// at `∞`. A fixed point is attracting iff this is `< 1`.
    pub fn derivative_at_fixed(&self, x: &BoundaryPoint) -> Rational {
        let [_, _, r, s] = &self.m;
        let det = Rational::from_integer(self.det());
        match x {
            BoundaryPoint::Infinity => Rational::from_integer(s * s) / det,
            BoundaryPoint::Finite(x) => {
                let d = Rational::from_integer(r.clone()) * x + Rational::from_integer(s.clone());
                det / (&d * &d)
            }
        }
    }

    /// Fixed points on `RP¹`, the roots of `r·x² + (s−p)·x − q = 0` together
    /// with `∞` when `r = 0`.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        let kind = self.classify();
        let [p, q, r, s] = &self.m;
        let int = |x: &BigInt| Rational::from_integer(x.clone());
        let points = match kind {
            Kind::Identity => return Err(Error::IdentityMap),
            Kind::Elliptic => return Ok(FixedPoints::Elliptic),
            Kind::Parabolic => {
                if r.is_zero() {
                    return Ok(FixedPoints::Parabolic(BoundaryPoint::Infinity));
                }
                return Ok(FixedPoints::Parabolic(BoundaryPoint::Finite(
                    int(&(p - s)) / int(&(BigInt::from(2) * r)),
                )));
            }
            Kind::Hyperbolic if r.is_zero() => [
                BoundaryPoint::Infinity,
                BoundaryPoint::Finite(int(q) / int(&(s - p))),
            ],
            Kind::Hyperbolic => {
                let disc = self.discriminant();
                let root = disc.sqrt();
                let two_r = int(&(BigInt::from(2) * r));
                if &root * &root != disc {
                    return Ok(self.irrational_fixed_points(disc));
                }
                let ps = int(&(p - s));
                [
                    BoundaryPoint::Finite((&ps + int(&root)) / &two_r),
                    BoundaryPoint::Finite((ps - int(&root)) / two_r),
                ]
            }
        };
        let [x, y] = points;
        let attracting_first = self.derivative_at_fixed(&x) < Rational::one();
        Ok(if attracting_first {
            FixedPoints::Hyperbolic { attracting: x, repelling: y }
        } else {
            FixedPoints::Hyperbolic { attracting: y, repelling: x }
        })
    }

    // Roots ((p−s) ± √D)/(2r) with r ≠ 0. At a root, r·x + s = (tr ± √D)/2,
    // and the two values multiply to det, so the root whose value is larger
    // in absolute value is attracting: the `+` root iff tr > 0.
    fn irrational_fixed_points(&self, disc: BigInt) -> FixedPoints {
        let [p, _, r, s] = &self.m;
        let int = |x: &BigInt| Rational::from_integer(x.clone());
        let floor = disc.sqrt();
        let mut sqrt = Interval {
            lo: int(&floor),
            hi: int(&(floor + 1)),
        };
        let disc_q = int(&disc);
        let two_r = int(&(BigInt::from(2) * r));
        let ps = int(&(p - s));
        let roots = |w: &Interval| {
            let ends = |sign: i64| {
                let a = (&ps + Rational::from_integer(sign.into()) * &w.lo) / &two_r;
                let b = (&ps + Rational::from_integer(sign.into()) * &w.hi) / &two_r;
                if a < b {
                    Interval { lo: a, hi: b }
                } else {
                    Interval { lo: b, hi: a }
                }
            };
            (ends(1), ends(-1))
        };
        let mut steps = 0;
        loop {
            let (plus, minus) = roots(&sqrt);
            if steps >= 16 && plus.disjoint(&minus) {
                let (attracting, repelling) = if self.trace().is_positive() {
                    (plus, minus)
                } else {
                    (minus, plus)
                };
                return FixedPoints::Irrational {
                    discriminant: disc,
                    attracting,
                    repelling,
                };
            }
            let mid = (&sqrt.lo + &sqrt.hi) / Rational::from_integer(2.into());
            if &mid * &mid < disc_q {
                sqrt.lo = mid;
            } else {
                sqrt.hi = mid;
            }
            steps += 1;
        }
    }
}

impl fmt::Display for MobiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r, s] = &self.m;
        write!(f, "{p} {q} / {r} {s}")
    }
}

impl FromStr for MobiusMap {
    type Err = Error;

    /// Parses `"p q / r s"`; rational entries are accepted and scaled.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected \"p q / r s\", got {s:?}"));
        let cells: Vec<&str> = s.split_whitespace().collect();
        let [p, q, "/", r, t] = cells[..] else {
            return Err(bad());
        };
        let [p, q, r, t] = [p, q, r, t].map(parse_rational);
        Self::from_rationals([p?, q?, r?, t?])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NorthSouthSample {
    pub start: BoundaryPoint,
    /// Iterations until `|u|` fell below `1/1000` of its initial value, where
    /// `u = (x − a)/(x − b)` in coordinates sending the attracting point `a`
    /// to 0 and the repelling point `b` to ∞.
    pub converged_after: Option<usize>,
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NorthSouthReport {
    pub attracting: BoundaryPoint,
    pub repelling: BoundaryPoint,
    pub samples: Vec<NorthSouthSample>,
    /// Starting points equal to a fixed point.
    pub skipped: usize,
}

impl NorthSouthReport {
    pub fn holds(&self) -> bool {
        self.samples
            .iter()
            .all(|s| s.monotone && s.converged_after.is_some())
    }
}

fn attraction_coordinate(x: &BoundaryPoint, a: &BoundaryPoint, b: &BoundaryPoint) -> Rational {
    match (x, a, b) {
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
            ((x - a) / (x - b)).abs()
        }
        (BoundaryPoint::Infinity, _, _) => Rational::one(),
        (BoundaryPoint::Finite(x), BoundaryPoint::Infinity, BoundaryPoint::Finite(b)) => {
            (x - b).abs().recip()
        }
        (BoundaryPoint::Finite(x), BoundaryPoint::Finite(a), BoundaryPoint::Infinity) => {
            (x - a).abs()
        }
        _ => unreachable!("distinct fixed points"),
    }
}

/// Iterates a hyperbolic map with rational fixed points from each start and
/// checks that the distance to the attracting point, measured in the
/// coordinate where the map is a linear contraction, shrinks monotonically.
pub fn north_south_check(
    m: &MobiusMap,
    starts: &[BoundaryPoint],
    max_iter: usize,
) -> Result<NorthSouthReport> {
    let FixedPoints::Hyperbolic { attracting, repelling } = m.fixed_points()? else {
        return Err(Error::NotHyperbolic(m.to_string()));
    };
    let threshold = Rational::new(1.into(), 1000.into());
    let mut samples = Vec::new();
    let mut skipped = 0;
    for start in starts {
        if *start == attracting || *start == repelling {
            skipped += 1;
            continue;
        }
        let u0 = attraction_coordinate(start, &attracting, &repelling);
        let mut x = start.clone();
        let mut u = u0.clone();
        let mut monotone = true;
        let mut converged_after = None;
        for i in 1..=max_iter {
            x = m.apply(&x);
            let next = attraction_coordinate(&x, &attracting, &repelling);
            monotone &= next < u;
            u = next;
            if &u / &u0 < threshold {
                converged_after = Some(i);
                break;
            }
        }
        samples.push(NorthSouthSample {
            start: start.clone(),
            converged_after,
            monotone,
        });
    }
    Ok(NorthSouthReport {
        attracting,
        repelling,
        samples,
        skipped,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvarianceReport {
    pub checked: usize,
    pub violations: Vec<Quad>,
}

impl InvarianceReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares `[Ma, Mb, Mc, Md]₀` with `[a, b, c, d]₀` on all quadruples of the
/// configuration.
pub fn canonical_invariance(cfg: &Configuration, m: &MobiusMap) -> InvarianceReport {
    let image: Vec<BoundaryPoint> = cfg.points().iter().map(|x| m.apply(x)).collect();
    let mut report = InvarianceReport::default();
    for q in distinct_quads(cfg.len()) {
        report.checked += 1;
        let before = canonical_cross_ratio(cfg.point(q[0]), cfg.point(q[1]), cfg.point(q[2]), cfg.point(q[3]));
        let after = canonical_cross_ratio(&image[q[0]], &image[q[1]], &image[q[2]], &image[q[3]]);
        if before != after {
            report.violations.push(q);
        }
    }
    report
}

/// Checks `t ∘ M = t` for a table living on a configuration that `M` maps to
/// itself.
pub fn table_invariance(t: &CrossRatioTable, cfg: &Configuration, m: &MobiusMap) -> Result<InvarianceReport> {
    if t.n() != cfg.len() {
        return Err(Error::Mismatch(format!(
            "table on {} labels, configuration of {} points",
            t.n(),
            cfg.len()
        )));
    }
    let sigma = cfg
        .points()
        .iter()
        .map(|x| {
            let y = m.apply(x);
            cfg.label_of(&y).ok_or_else(|| Error::OrbitEscape(format!("{x} -> {y}")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let mut report = InvarianceReport::default();
    for q in distinct_quads(cfg.len()) {
        report.checked += 1;
        if t.get(q) != t.get(q.map(|l| sigma[l])) {
            report.violations.push(q);
        }
    }
    Ok(report)
}

/// An alternating cocycle defined on all boundary points, extended by 0 on
/// degenerate triples.
pub trait BoundaryCocycle: Sync {
    fn phi(&self, x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Rational;
}

/// The orientation cocycle `φ₀ = ±1/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Orientation;

impl BoundaryCocycle for Orientation {
    fn phi(&self, x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Rational {
        orientation_cocycle(x, y, z)
    }
}

/// A cross ratio that can be evaluated on boundary points.
pub trait BoundaryCrossRatio {
    fn bracket(&self, a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint, d: &BoundaryPoint) -> Result<Rational>;
}

/// The canonical cross ratio `[,]₀`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Canonical;

impl BoundaryCrossRatio for Canonical {
    fn bracket(&self, a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint, d: &BoundaryPoint) -> Result<Rational> {
        canonical_cross_ratio(a, b, c, d)
    }
}

/// A finite table read through the labels of its configuration.
pub struct TableOnConfiguration<'a> {
    pub table: &'a CrossRatioTable,
    pub config: &'a Configuration,
}

impl BoundaryCrossRatio for TableOnConfiguration<'_> {
    fn bracket(&self, a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint, d: &BoundaryPoint) -> Result<Rational> {
        let label = |x: &BoundaryPoint| {
            self.config
                .label_of(x)
                .ok_or_else(|| Error::OrbitEscape(x.to_string()))
        };
        Ok(self.table.get([label(a)?, label(b)?, label(c)?, label(d)?]).clone())
    }
}

/// `μ(γ₁,γ₂,γ₃) = φ(γ₁ξ, γ₂ξ, γ₃ξ)`.
pub fn orbit_cocycle(phi: &impl BoundaryCocycle, xi: &BoundaryPoint, g: [&MobiusMap; 3]) -> Rational {
    phi.phi(&g[0].apply(xi), &g[1].apply(xi), &g[2].apply(xi))
}

/// `ν(γ) = [γξ, η, ξ, γη]`.
pub fn nu_cochain(
    cr: &impl BoundaryCrossRatio,
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    gamma: &MobiusMap,
) -> Result<Rational> {
    let (gxi, geta) = (gamma.apply(xi), gamma.apply(eta));
    let pts = [&gxi, eta, xi, &geta];
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::Collision(format!(
                    "[{gxi}, {eta}, {xi}, {geta}] repeats {}",
                    pts[i]
                )));
            }
        }
    }
    cr.bracket(&gxi, eta, xi, &geta)
}

/// `φ(ξ, η, γξ) + φ(γξ, η, γη)`, the value `ν(γ)` must take when `φ` is the
/// cocycle of the cross ratio.
pub fn nu_from_cocycle(phi: &impl BoundaryCocycle, xi: &BoundaryPoint, eta: &BoundaryPoint, gamma: &MobiusMap) -> Rational {
    let (gxi, geta) = (gamma.apply(xi), gamma.apply(eta));
    phi.phi(xi, eta, &gxi) + phi.phi(&gxi, eta, &geta)
}

/// `h(γ₁,γ₂) = φ(γ₁ξ, γ₁η, γ₂η) − φ(γ₁ξ, γ₂ξ, γ₂η)`, whose coboundary is the
/// difference of the orbit cocycles at basepoints `η` and `ξ`.
pub fn prism_transfer(
    phi: &impl BoundaryCocycle,
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    g1: &MobiusMap,
    g2: &MobiusMap,
) -> Rational {
    let (a1, b1) = (g1.apply(xi), g1.apply(eta));
    let (a2, b2) = (g2.apply(xi), g2.apply(eta));
    phi.phi(&a1, &b1, &b2) - phi.phi(&a1, &a2, &b2)
}

/// Orbit points `γξ` and `γη` for a list of group elements.
struct Orbits {
    xi: Vec<BoundaryPoint>,
    eta: Vec<BoundaryPoint>,
}

impl Orbits {
    fn new(elements: &[MobiusMap], xi: &BoundaryPoint, eta: &BoundaryPoint) -> Self {
        Self {
            xi: elements.iter().map(|g| g.apply(xi)).collect(),
            eta: elements.iter().map(|g| g.apply(eta)).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BasepointReport {
    pub checked: usize,
    /// Index triples into the element list, sorted.
    pub violations: Vec<[usize; 3]>,
}

impl BasepointReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `μ_η − μ_ξ = δh` on every triple of the given group elements, with
/// `h` the prism transfer.
pub fn basepoint_change_check(
    phi: &impl BoundaryCocycle,
    xi: &BoundaryPoint,
    eta: &BoundaryPoint,
    elements: &[MobiusMap],
) -> BasepointReport {
    let k = elements.len();
    let o = Orbits::new(elements, xi, eta);
    let h: Vec<Vec<Rational>> = (0..k)
        .into_par_iter()
        .map(|i| {
            (0..k)
                .map(|j| phi.phi(&o.xi[i], &o.eta[i], &o.eta[j]) - phi.phi(&o.xi[i], &o.xi[j], &o.eta[j]))
                .collect()
        })
        .collect();
    let mut violations: Vec<[usize; 3]> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| {
            let (o, h) = (&o, &h);
            (0..k).flat_map(move |j| {
                (0..k).filter_map(move |l| {
                    let mu = phi.phi(&o.xi[i], &o.xi[j], &o.xi[l]);
                    let mu_eta = phi.phi(&o.eta[i], &o.eta[j], &o.eta[l]);
                    let dh = delta1(|a: usize, b: usize| h[a][b].clone(), i, j, l);
                    (mu_eta - mu != dh).then_some([i, j, l])
                })
            })
        })
        .collect();
    violations.sort_unstable();
    BasepointReport {
        checked: k * k * k,
        violations,
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrbitCocycleReport {
    pub triples: usize,
    pub quadruples: usize,
    pub not_alternating: Vec<[usize; 3]>,
    pub not_closed: Vec<[usize; 4]>,
}

impl OrbitCocycleReport {
    pub fn is_valid(&self) -> bool {
        self.not_alternating.is_empty() && self.not_closed.is_empty()
    }
}

/// Alternation and closedness of the orbit cocycle at `ξ` over all triples
/// and 4-tuples of the given elements.
pub fn orbit_cocycle_check(phi: &impl BoundaryCocycle, xi: &BoundaryPoint, elements: &[MobiusMap]) -> OrbitCocycleReport {
    let k = elements.len();
    let pts: Vec<BoundaryPoint> = elements.iter().map(|g| g.apply(xi)).collect();
    let mu: Vec<Rational> = (0..k * k * k)
        .into_par_iter()
        .map(|i| phi.phi(&pts[i / (k * k)], &pts[i / k % k], &pts[i % k]))
        .collect();
    let at = |a: usize, b: usize, c: usize| mu[(a * k + b) * k + c].clone();
    let mut not_alternating: Vec<[usize; 3]> = (0..k * k * k)
        .filter_map(|i| {
            let (a, b, c) = (i / (k * k), i / k % k, i % k);
            (at(a, b, c) != -at(b, a, c) || at(a, b, c) != -at(a, c, b)).then_some([a, b, c])
        })
        .collect();
    let mut not_closed: Vec<[usize; 4]> = (0..k)
        .into_par_iter()
        .flat_map_iter(|a| {
            let at = &at;
            (0..k * k * k).filter_map(move |i| {
                let (b, c, d) = (i / (k * k), i / k % k, i % k);
                (!delta2(at, a, b, c, d).is_zero()).then_some([a, b, c, d])
            })
        })
        .collect();
    not_alternating.sort_unstable();
    not_closed.sort_unstable();
    OrbitCocycleReport {
        triples: k * k * k,
        quadruples: k * k * k * k,
        not_alternating,
        not_closed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn m(p: i64, q: i64, r: i64, s: i64) -> MobiusMap {
        MobiusMap::from_ints(p, q, r, s).unwrap()
    }

    fn pt(s: &str) -> BoundaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_representative() {
        assert_eq!(m(-2, 0, 0, -4), m(1, 0, 0, 2));
        assert_eq!(m(0, -3, 3, 0).entries(), &[0, 1, -1, 0].map(BigInt::from));
        assert!(matches!(MobiusMap::from_ints(0, 1, 1, 0), Err(Error::Determinant(_))));
        assert!(MobiusMap::from_ints(1, 2, 2, 4).is_err());
        let half = MobiusMap::from_rationals([Rational::new(1.into(), 2.into()), rat(0), rat(0), rat(1)]).unwrap();
        assert_eq!(half, m(1, 0, 0, 2));
    }

    #[test]
    fn apply_examples() {
        let g = m(2, 0, 0, 1);
        assert_eq!(g.apply(&pt("1")), pt("2"));
        assert_eq!(g.apply(&pt("inf")), pt("inf"));
        assert_eq!(m(1, 1, -1, 1).apply(&pt("0")), pt("1"));
        assert_eq!(m(1, 1, -1, 1).apply(&pt("1")), pt("inf"));
        assert_eq!(m(1, 1, -1, 1).apply(&pt("inf")), pt("-1"));
    }

    #[test]
    fn compose_and_inverse() {
        let a = m(2, 0, 0, 1);
        let b = m(1, 1, 0, 1);
        assert_eq!(a.compose(&b), m(2, 2, 0, 1));
        assert!(a.compose(&a.inverse()).is_identity());
        assert_eq!(MobiusMap::identity().compose(&b), b);
        let c = m(3, -1, 5, 2);
        for x in ["0", "inf", "-7/3", "2/5", "1"] {
            let x = pt(x);
            assert_eq!(a.compose(&c).apply(&x), a.apply(&c.apply(&x)));
            assert_eq!(c.inverse().apply(&c.apply(&x)), x);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(m(2, 0, 0, 1).classify(), Kind::Hyperbolic);
        assert_eq!(m(1, 1, 0, 1).classify(), Kind::Parabolic);
        assert_eq!(m(0, 1, -1, 0).classify(), Kind::Elliptic);
        assert_eq!(m(5, 0, 0, 5).classify(), Kind::Identity);
    }

    #[test]
    fn fixed_point_examples() {
        assert_eq!(
            m(2, 0, 0, 1).fixed_points().unwrap(),
            FixedPoints::Hyperbolic { attracting: pt("inf"), repelling: pt("0") }
        );
        assert_eq!(m(1, 1, 0, 1).fixed_points().unwrap(), FixedPoints::Parabolic(pt("inf")));
        assert_eq!(
            m(3, -1, -1, 3).fixed_points().unwrap(),
            FixedPoints::Hyperbolic { attracting: pt("-1"), repelling: pt("1") }
        );
        assert_eq!(m(1, 0, 1, 1).fixed_points().unwrap(), FixedPoints::Parabolic(pt("0")));
        assert_eq!(m(0, 1, -1, 0).fixed_points().unwrap(), FixedPoints::Elliptic);
        assert_eq!(MobiusMap::identity().fixed_points(), Err(Error::IdentityMap));
    }

    #[test]
    fn irrational_fixed_points_are_isolated() {
        // x = (2x+1)/(x+1) has roots (1 ± √5)/2
        let FixedPoints::Irrational { discriminant, attracting, repelling } = m(2, 1, 1, 1).fixed_points().unwrap() else {
            panic!("expected irrational fixed points");
        };
        assert_eq!(discriminant, BigInt::from(5));
        assert!(attracting.disjoint(&repelling));
        // golden ratio lies between 1.618 and 1.6181
        assert!(attracting.lo > Rational::new(1618.into(), 1000.into()));
        assert!(attracting.hi < Rational::new(16181.into(), 10000.into()));
        assert!(repelling.lo > Rational::new((-6181).into(), 10000.into()));
        assert!(repelling.hi < Rational::new((-618).into(), 1000.into()));
        // sign change of r x² + (s−p) x − q = x² − x − 1 across each interval
        let f = |x: &Rational| x * x - x - rat(1);
        for iv in [&attracting, &repelling] {
            assert!(f(&iv.lo) * f(&iv.hi) < rat(0));
        }
    }

    #[test]
    fn north_south_dynamics() {
        let starts: Vec<BoundaryPoint> = ["0", "1", "-1", "1/3", "-5/2", "inf", "7", "-100", "2/9", "3"]
            .iter()
            .map(|s| pt(s))
            .collect();
        for g in [m(2, 0, 0, 1), m(3, -1, -1, 3), m(1, 0, 0, 2)] {
            let report = north_south_check(&g, &starts, 60).unwrap();
            assert!(report.holds(), "{g}: {report:?}");
            assert_eq!(report.samples.len() + report.skipped, starts.len());
        }
        assert!(matches!(north_south_check(&m(1, 1, 0, 1), &starts, 60), Err(Error::NotHyperbolic(_))));
    }

    #[test]
    fn display_round_trip() {
        let g = m(3, -1, -1, 3);
        assert_eq!(g.to_string(), "3 -1 / -1 3");
        assert_eq!("3 -1 / -1 3".parse::<MobiusMap>().unwrap(), g);
        assert_eq!("1/2 0 / 0 1".parse::<MobiusMap>().unwrap(), m(1, 0, 0, 2));
        assert!("1 2 3 4".parse::<MobiusMap>().is_err());
    }

    #[test]
    fn canonical_is_invariant() {
        let cfg = Configuration::from_strs(&["0", "1", "2", "3"]).unwrap();
        assert!(canonical_invariance(&cfg, &m(2, 0, 0, 1)).is_valid());
        let cfg = Configuration::from_strs(&["-3", "1/2", "inf", "4", "-1/7"]).unwrap();
        for g in [m(1, 1, -1, 1), m(5, -2, 3, 7), m(0, -1, 1, 0)] {
            let report = canonical_invariance(&cfg, &g);
            assert_eq!(report.checked, 120);
            assert!(report.is_valid());
        }
    }

    #[test]
    fn table_invariance_needs_a_stable_configuration() {
        // x ↦ −1/x permutes {0, ∞, 1, −1}
        let cfg = Configuration::from_strs(&["0", "inf", "1", "-1"]).unwrap();
        let t = CrossRatioTable::canonical(&cfg);
        assert!(table_invariance(&t, &cfg, &m(0, -1, 1, 0)).unwrap().is_valid());
        assert!(matches!(table_invariance(&t, &cfg, &m(2, 0, 0, 1)), Err(Error::OrbitEscape(_))));
    }

    #[test]
    fn orbit_cocycle_examples() {
        let (g, h, e) = (m(2, 0, 0, 1), m(1, 1, -1, 1), MobiusMap::identity());
        let g2 = g.compose(&g);
        assert_eq!(orbit_cocycle(&Orientation, &pt("0"), [&e, &g, &g2]), rat(0));
        assert_eq!(orbit_cocycle(&Orientation, &pt("1"), [&e, &g, &h]), Rational::new(1.into(), 2.into()));
        assert_eq!(orbit_cocycle(&Orientation, &pt("1"), [&e, &e, &e]), rat(0));
    }

    #[test]
    fn nu_cochain_examples() {
        let (xi, eta) = (pt("0"), pt("1"));
        assert!(matches!(nu_cochain(&Canonical, &xi, &eta, &MobiusMap::identity()), Err(Error::Collision(_))));
        assert!(matches!(nu_cochain(&Canonical, &xi, &pt("inf"), &m(1, 1, 0, 1)), Err(Error::Collision(_))));
        assert!(matches!(nu_cochain(&Canonical, &xi, &eta, &m(2, 1, 1, 1)), Err(Error::Collision(_))));
        // γ = (3 1; 1 2): γ0 = 1/2, γ1 = 4/3, and the chord 0–4/3 does not
        // cross the chord 1/2–1
        let gamma = m(3, 1, 1, 2);
        assert_eq!(nu_cochain(&Canonical, &xi, &eta, &gamma).unwrap(), rat(0));
        assert_eq!(nu_from_cocycle(&Orientation, &xi, &eta, &gamma), rat(0));
    }

    #[test]
    fn nu_matches_cocycle_formula() {
        let (xi, eta) = (pt("1/3"), pt("-2"));
        let mut seen_nonzero = false;
        for (p, q, r, s) in [(2, 0, 0, 1), (3, -1, -1, 3), (1, 5, 0, 1), (4, 1, 3, 1), (1, -3, 2, 1), (7, 2, -3, 1)] {
            let gamma = m(p, q, r, s);
            let Ok(v) = nu_cochain(&Canonical, &xi, &eta, &gamma) else { continue };
            seen_nonzero |= !v.is_zero();
            assert_eq!(v, nu_from_cocycle(&Orientation, &xi, &eta, &gamma), "{gamma}");
        }
        assert!(seen_nonzero);
    }

    #[test]
    fn prism_transfer_small_cases() {
        let elements = vec![
            MobiusMap::identity(),
            m(2, 0, 0, 1),
            m(1, 0, 0, 2),
            m(3, -1, -1, 3),
            m(3, 1, 1, 3),
            m(5, 3, 3, 3),
        ];
        let report = basepoint_change_check(&Orientation, &pt("0"), &pt("inf"), &elements);
        assert_eq!(report.checked, 216);
        assert!(report.is_valid(), "{report:?}");
        let same = basepoint_change_check(&Orientation, &pt("1/2"), &pt("1/2"), &elements);
        assert!(same.is_valid());
        for a in &elements {
            for b in &elements {
                assert!(prism_transfer(&Orientation, &pt("1/2"), &pt("1/2"), a, b).is_zero());
            }
            assert!(prism_transfer(&Orientation, &pt("0"), &pt("inf"), a, a).is_zero());
        }
    }

    #[test]
    fn a_non_cocycle_breaks_the_prism_identity() {
        struct Bent;
        impl BoundaryCocycle for Bent {
            fn phi(&self, x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Rational {
                let base = orientation_cocycle(x, y, z);
                if [x, y, z].iter().any(|p| p.is_infinite()) {
                    base * rat(3)
                } else {
                    base
                }
            }
        }
        let elements = vec![MobiusMap::identity(), m(2, 0, 0, 1), m(3, -1, -1, 3), m(3, 1, 1, 3)];
        assert!(!basepoint_change_check(&Bent, &pt("1/2"), &pt("inf"), &elements).is_valid());
    }

    #[test]
    fn orbit_cocycle_is_a_cocycle() {
        let elements = vec![MobiusMap::identity(), m(2, 0, 0, 1), m(3, -1, -1, 3), m(1, 0, 0, 2), m(3, 1, 1, 3)];
        let report = orbit_cocycle_check(&Orientation, &pt("1/2"), &elements);
        assert_eq!(report.quadruples, 625);
        assert!(report.is_valid());
    }
}
