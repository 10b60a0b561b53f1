//! Cross-ratio tables, homogeneous cochains and the maps between them.
//!
//! A cross-ratio table on `n` labels stores a value for every ordered
//! 4-tuple of labels. The three axioms are
//!
//! ```text
//! i)   [ξ,ξ',η,η'] = −[ξ',ξ,η,η']
//! ii)  [η,η',ξ,ξ'] = −[ξ,ξ',η,η']
//! iii) [ξ,ξ',η,η'] + [ξ',ξ'',η,η'] = [ξ,ξ'',η,η']
//! ```
//!
//! A table satisfying them determines an alternating 2-cocycle
//! `φ(ξ,η,ζ) = ½([ξ,ζ,η,ν] + [ζ,η,ξ,ν] + [η,ξ,ζ,ν])` (any `ν` outside the
//! triple gives the same value), and conversely every alternating cocycle
//! gives back a table via `[g,g',h,h'] = φ(h,g',g) − φ(g',g,h')`.

use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::circle::{canonical_cross_ratio, Configuration};
use crate::error::{Error, Result};
use crate::linalg::{row, Echelon};
use crate::{half, Quad, Rational, Triple};

pub(crate) fn all_distinct(xs: &[usize]) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| a != b))
}

/// All ordered 4-tuples of pairwise distinct labels below `n`, in
/// lexicographic order.
pub fn distinct_quads(n: usize) -> impl Iterator<Item = Quad> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| {
            (0..n).flat_map(move |c| {
                (0..n)
                    .map(move |d| [a, b, c, d])
                    .filter(|q| all_distinct(q))
            })
        })
    })
}

/// All ordered triples of pairwise distinct labels below `n`.
pub fn distinct_triples(n: usize) -> impl Iterator<Item = Triple> {
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c]).filter(|t| all_distinct(t)))
    })
}

/// All ordered 5-tuples of pairwise distinct labels below `n`.
pub fn distinct_quints(n: usize) -> impl Iterator<Item = [usize; 5]> {
    distinct_quads(n).flat_map(move |[a, b, c, d]| {
        (0..n)
            .filter(move |e| ![a, b, c, d].contains(e))
            .map(move |e| [a, b, c, d, e])
    })
}

/// The eight rearrangements generated by axioms i) and ii), as index maps
/// `new[k] = old[map[k]]`, with the sign they impose on the value.
pub const QUAD_SYMMETRIES: [([usize; 4], i64); 8] = [
    ([0, 1, 2, 3], 1),
    ([1, 0, 2, 3], -1),
    ([0, 1, 3, 2], -1),
    ([1, 0, 3, 2], 1),
    ([2, 3, 0, 1], -1),
    ([3, 2, 0, 1], 1),
    ([2, 3, 1, 0], 1),
    ([3, 2, 1, 0], -1),
];

pub(crate) fn permute(q: Quad, map: [usize; 4]) -> Quad {
    [q[map[0]], q[map[1]], q[map[2]], q[map[3]]]
}

/// A function on ordered 4-tuples of `n` labels, stored densely.
///
/// Entries on 4-tuples with repeated labels are kept at zero; in particular
/// the degenerate quadruples `(ξ, ξ, η, ζ)` evaluate to `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossRatioTable {
    n: usize,
    values: Vec<Rational>,
}

impl CrossRatioTable {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            values: vec![Rational::zero(); n.pow(4)],
        }
    }

    /// Evaluates `f` on every 4-tuple of distinct labels.
    pub fn from_fn(n: usize, mut f: impl FnMut(Quad) -> Rational) -> Self {
        let mut t = Self::zero(n);
        for q in distinct_quads(n) {
            let i = t.index(q);
            t.values[i] = f(q);
        }
        t
    }

    /// The canonical order/linking cross ratio restricted to `cfg`.
    pub fn canonical(cfg: &Configuration) -> Self {
        Self::from_fn(cfg.len(), |[a, b, c, d]| {
            canonical_cross_ratio(cfg.point(a), cfg.point(b), cfg.point(c), cfg.point(d))
                .expect("configuration points are distinct")
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, [a, b, c, d]: Quad) -> usize {
        assert!(
            a < self.n && b < self.n && c < self.n && d < self.n,
            "label out of range in {:?} for n = {}",
            [a, b, c, d],
            self.n
        );
        ((a * self.n + b) * self.n + c) * self.n + d
    }

    pub fn get(&self, q: Quad) -> &Rational {
        &self.values[self.index(q)]
    }

    pub(crate) fn set(&mut self, q: Quad, v: Rational) {
        debug_assert!(all_distinct(&q));
        let i = self.index(q);
        self.values[i] = v;
    }

    /// `(quad, value)` over all 4-tuples of distinct labels.
    pub fn entries(&self) -> impl Iterator<Item = (Quad, &Rational)> + '_ {
        distinct_quads(self.n).map(move |q| (q, self.get(q)))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            n: self.n,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Returns `c` with `self = c · other`, if such a `c` exists. A zero
    /// `other` only admits a zero `self`, and then `c = 0`.
    pub fn multiple_of(&self, other: &Self) -> Option<Rational> {
        assert_eq!(self.n, other.n);
        let c = match other.values.iter().position(|v| !v.is_zero()) {
            Some(i) => &self.values[i] / &other.values[i],
            None => Rational::zero(),
        };
        (*self == other.scaled(&c)).then_some(c)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl Add for &CrossRatioTable {
    type Output = CrossRatioTable;

    fn add(self, rhs: &CrossRatioTable) -> CrossRatioTable {
        assert_eq!(self.n, rhs.n);
        CrossRatioTable {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CrossRatioTable {
    type Output = CrossRatioTable;

    fn sub(self, rhs: &CrossRatioTable) -> CrossRatioTable {
        assert_eq!(self.n, rhs.n);
        CrossRatioTable {
            n: self.n,
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `t(a,b,c,d) + t(b,a,c,d) ≠ 0`
    FirstPair { quad: Quad, lhs: Rational, rhs: Rational },
    /// `t(c,d,a,b) + t(a,b,c,d) ≠ 0`
    PairSwap { quad: Quad, lhs: Rational, rhs: Rational },
    /// `t(x,x',η,η') + t(x',x'',η,η') ≠ t(x,x'',η,η')` for
    /// `args = [x, x', x'', η, η']`
    Additivity { args: [usize; 5], lhs: Rational, rhs: Rational },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::FirstPair { quad, lhs, rhs } => {
                write!(f, "axiom i) at {quad:?}: {lhs} != -({rhs})")
            }
            AxiomViolation::PairSwap { quad, lhs, rhs } => {
                write!(f, "axiom ii) at {quad:?}: {lhs} != -({rhs})")
            }
            AxiomViolation::Additivity { args, lhs, rhs } => {
                write!(f, "axiom iii) at {args:?}: {lhs} != {rhs}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Number of instances checked for axioms i), ii), iii).
    pub checked: [usize; 3],
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks the three axioms on every admissible instance.
pub fn check_axioms(t: &CrossRatioTable) -> AxiomReport {
    let mut report = AxiomReport::default();
    for q @ [a, b, c, d] in distinct_quads(t.n) {
        let v = t.get(q);
        let swapped = t.get([b, a, c, d]);
        report.checked[0] += 1;
        if !(v + swapped).is_zero() {
            report.violations.push(AxiomViolation::FirstPair {
                quad: q,
                lhs: v.clone(),
                rhs: swapped.clone(),
            });
        }
        let flipped = t.get([c, d, a, b]);
        report.checked[1] += 1;
        if !(v + flipped).is_zero() {
            report.violations.push(AxiomViolation::PairSwap {
                quad: q,
                lhs: flipped.clone(),
                rhs: v.clone(),
            });
        }
    }
    for args @ [x, x1, x2, e, e1] in distinct_quints(t.n) {
        report.checked[2] += 1;
        let lhs = t.get([x, x1, e, e1]) + t.get([x1, x2, e, e1]);
        let rhs = t.get([x, x2, e, e1]);
        if lhs != *rhs {
            report.violations.push(AxiomViolation::Additivity {
                args,
                lhs,
                rhs: rhs.clone(),
            });
        }
    }
    report
}

/// Homogeneous 1-cochain: a function on ordered pairs of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain1 {
    n: usize,
    values: Vec<Rational>,
}

impl Cochain1 {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut values = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                values.push(f(x, y));
            }
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rational {
        &self.values[x * self.n + y]
    }
}

/// Homogeneous 2-cochain: a function on all ordered triples of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain2 {
    n: usize,
    values: Vec<Rational>,
}

impl Cochain2 {
    pub fn from_fn(n: usize, mut f: impl FnMut(Triple) -> Rational) -> Self {
        let mut values = Vec::with_capacity(n.pow(3));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    values.push(f([a, b, c]));
                }
            }
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, [a, b, c]: Triple) -> &Rational {
        &self.values[(a * self.n + b) * self.n + c]
    }

    /// First triple where an adjacent transposition fails to negate the
    /// value. Checking adjacent transpositions covers every odd permutation.
    pub fn alternation_defect(&self) -> Option<Triple> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.get([a, b, c]);
                    if !(v + self.get([b, a, c])).is_zero() || !(v + self.get([a, c, b])).is_zero()
                    {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }
}

/// Homogeneous 3-cochain: a function on all ordered 4-tuples of labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain3 {
    n: usize,
    values: Vec<Rational>,
}

impl Cochain3 {
    pub fn from_fn(n: usize, mut f: impl FnMut(Quad) -> Rational) -> Self {
        let mut values = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        values.push(f([a, b, c, d]));
                    }
                }
            }
        }
        Self { n, values }
    }

    pub fn get(&self, [a, b, c, d]: Quad) -> &Rational {
        &self.values[((a * self.n + b) * self.n + c) * self.n + d]
    }

    pub fn first_nonzero(&self) -> Option<(Quad, &Rational)> {
        let n = self.n;
        self.values.iter().enumerate().find(|(_, v)| !v.is_zero()).map(|(i, v)| {
            ([i / (n * n * n), (i / (n * n)) % n, (i / n) % n, i % n], v)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }
}

/// `(x, y, z) ↦ b(y,z) − b(x,z) + b(x,y)` for any 1-cochain given as a
/// function.
pub fn delta1<T: Copy>(b: impl Fn(T, T) -> Rational, x: T, y: T, z: T) -> Rational {
    b(y, z) - b(x, z) + b(x, y)
}

/// `(a, b, c, d) ↦ φ(b,c,d) − φ(a,c,d) + φ(a,b,d) − φ(a,b,c)` for any
/// 2-cochain given as a function.
pub fn delta2<T: Copy>(phi: impl Fn(T, T, T) -> Rational, a: T, b: T, c: T, d: T) -> Rational {
    phi(b, c, d) - phi(a, c, d) + phi(a, b, d) - phi(a, b, c)
}

pub fn coboundary1(b: &Cochain1) -> Cochain2 {
    Cochain2::from_fn(b.n, |[x, y, z]| delta1(|u, v| b.get(u, v).clone(), x, y, z))
}

pub fn coboundary2(phi: &Cochain2) -> Cochain3 {
    Cochain3::from_fn(phi.n, |[a, b, c, d]| {
        delta2(|x, y, z| phi.get([x, y, z]).clone(), a, b, c, d)
    })
}

/// An alternating 2-cochain: odd permutations negate the value and triples
/// with a repeated label evaluate to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AltCochain2(Cochain2);

impl AltCochain2 {
    pub fn new(c: Cochain2) -> Result<Self> {
        match c.alternation_defect() {
            None => Ok(Self(c)),
            Some(t) => Err(Error::NotAlternating(format!("at {t:?}"))),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self(Cochain2::from_fn(n, |_| Rational::zero()))
    }

    /// Builds the alternating extension of `f`, which is only evaluated on
    /// increasing triples `a < b < c`.
    pub fn from_increasing(n: usize, mut f: impl FnMut(Triple) -> Rational) -> Self {
        let mut base = vec![Rational::zero(); n.pow(3)];
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    base[(a * n + b) * n + c] = f([a, b, c]);
                }
            }
        }
        Self(Cochain2::from_fn(n, |t| {
            let (sorted, sign) = sort_triple(t);
            if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
                return Rational::zero();
            }
            let v = &base[(sorted[0] * n + sorted[1]) * n + sorted[2]];
            if sign > 0 {
                v.clone()
            } else {
                -v.clone()
            }
        }))
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, t: Triple) -> &Rational {
        self.0.get(t)
    }

    pub fn as_cochain(&self) -> &Cochain2 {
        &self.0
    }

    pub fn is_cocycle(&self) -> bool {
        coboundary2(&self.0).is_zero()
    }

    pub fn sup_norm(&self) -> Rational {
        self.0
            .values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Sorts a triple and returns the parity of the sorting permutation.
pub(crate) fn sort_triple(mut t: Triple) -> (Triple, i64) {
    let mut sign = 1;
    for (i, j) in [(0, 1), (1, 2), (0, 1)] {
        if t[i] > t[j] {
            t.swap(i, j);
            sign = -sign;
        }
    }
    (t, sign)
}

/// `½([ξ,ζ,η,ν] + [ζ,η,ξ,ν] + [η,ξ,ζ,ν])`.
///
/// Degenerate triples give `0`; `ν` must differ from every point of the
/// triple.
pub fn phi_from_crossratio(t: &CrossRatioTable, [xi, eta, zeta]: Triple, nu: usize) -> Result<Rational> {
    for l in [xi, eta, zeta, nu] {
        if l >= t.n {
            return Err(Error::Label { label: l, n: t.n });
        }
    }
    if [xi, eta, zeta].contains(&nu) {
        return Err(Error::Collision(format!(
            "auxiliary point {nu} lies in the triple {:?}",
            [xi, eta, zeta]
        )));
    }
    if !all_distinct(&[xi, eta, zeta]) {
        return Ok(Rational::zero());
    }
    let sum = t.get([xi, zeta, eta, nu]) + t.get([zeta, eta, xi, nu]) + t.get([eta, xi, zeta, nu]);
    Ok(sum * half())
}

/// Triples `(triple, ν₁, ν₂)` on which two admissible auxiliary points give
/// different values of `φ`. Empty for every valid table.
pub fn nu_dependence(t: &CrossRatioTable) -> Vec<(Triple, usize, usize)> {
    let mut out = Vec::new();
    for tr in distinct_triples(t.n) {
        let mut first: Option<(usize, Rational)> = None;
        for nu in (0..t.n).filter(|l| !tr.contains(l)) {
            let v = phi_from_crossratio(t, tr, nu).expect("admissible auxiliary point");
            match &first {
                None => first = Some((nu, v)),
                Some((nu0, v0)) => {
                    if *v0 != v {
                        out.push((tr, *nu0, nu));
                    }
                }
            }
        }
    }
    out
}

/// The alternating cocycle of a valid cross-ratio table.
pub fn cochain_from_crossratio(t: &CrossRatioTable) -> Result<AltCochain2> {
    if t.n < 4 {
        return Err(Error::Size {
            what: "cochain_from_crossratio",
            n: t.n,
            min: 4,
            max: usize::MAX,
        });
    }
    let report = check_axioms(t);
    if let Some(v) = report.violations.first() {
        return Err(Error::AxiomViolation(v.to_string()));
    }
    let n = t.n;
    Ok(AltCochain2(Cochain2::from_fn(n, |tr| {
        if !all_distinct(&tr) {
            return Rational::zero();
        }
        let nu = (0..n).find(|l| !tr.contains(l)).expect("n >= 4");
        phi_from_crossratio(t, tr, nu).expect("admissible auxiliary point")
    })))
}

/// The cross ratio `[g,g',h,h'] = φ(h,g',g) − φ(g',g,h')` of an alternating
/// cocycle.
pub fn crossratio_from_cocycle(phi: &AltCochain2) -> Result<CrossRatioTable> {
    if let Some((tuple, value)) = coboundary2(&phi.0).first_nonzero() {
        return Err(Error::NotACocycle {
            tuple,
            value: value.to_string(),
        });
    }
    Ok(CrossRatioTable::from_fn(phi.n(), |[g, g1, h, h1]| {
        phi.get([h, g1, g]) - phi.get([g1, g, h1])
    }))
}

/// `max |t(q)|` over 4-tuples of distinct labels.
pub fn sup_norm(t: &CrossRatioTable) -> Rational {
    t.entries()
        .map(|(_, v)| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// `max t(q)` over 4-tuples of distinct labels (the norm display without
/// absolute values). Agrees with [`sup_norm`] on tables satisfying axiom i).
pub fn max_value(t: &CrossRatioTable) -> Rational {
    t.entries()
        .map(|(_, v)| v.clone())
        .max()
        .unwrap_or_else(Rational::zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintSet {
    /// Cross-ratio axioms i)–iii).
    AxiomsOnly,
    /// Axioms plus vanishing on every cyclically ordered 4-tuple of the
    /// standard configuration `0 < 1 < … < n−1`.
    AxiomsPlusVanishingOnOrdered,
    /// Alternating 2-cochains with vanishing coboundary.
    AlternatingCocycles,
}

impl FromStr for ConstraintSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "axioms_only" => Ok(Self::AxiomsOnly),
            "axioms_plus_vanishing_on_ordered" => Ok(Self::AxiomsPlusVanishingOnOrdered),
            "alternating_cocycles" => Ok(Self::AlternatingCocycles),
            other => Err(Error::Parse(format!("unknown constraint set {other:?}"))),
        }
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AxiomsOnly => "axioms_only",
            Self::AxiomsPlusVanishingOnOrdered => "axioms_plus_vanishing_on_ordered",
            Self::AlternatingCocycles => "alternating_cocycles",
        })
    }
}

pub const DIMENSION_RANGE: std::ops::RangeInclusive<usize> = 4..=8;

fn check_dim_range(n: usize) -> Result<()> {
    if DIMENSION_RANGE.contains(&n) {
        Ok(())
    } else {
        Err(Error::Size {
            what: "space_dimension",
            n,
            min: *DIMENSION_RANGE.start(),
            max: *DIMENSION_RANGE.end(),
        })
    }
}

/// Column layout for linear systems whose unknowns are the values on
/// distinct tuples.
pub(crate) struct Columns<const K: usize> {
    n: usize,
    pub(crate) tuples: Vec<[usize; K]>,
    index: Vec<usize>,
}

impl<const K: usize> Columns<K> {
    fn new(n: usize, tuples: Vec<[usize; K]>) -> Self {
        let mut index = vec![usize::MAX; n.pow(K as u32)];
        for (col, t) in tuples.iter().enumerate() {
            index[Self::flat(n, t)] = col;
        }
        Self { n, tuples, index }
    }

    fn flat(n: usize, t: &[usize; K]) -> usize {
        t.iter().fold(0, |acc, &x| acc * n + x)
    }

    pub(crate) fn col(&self, t: [usize; K]) -> usize {
        let c = self.index[Self::flat(self.n, &t)];
        debug_assert!(c != usize::MAX, "{t:?} is not a column");
        c
    }
}

pub(crate) fn crossratio_system(n: usize, vanishing: bool) -> (Columns<4>, Echelon) {
    let cols = Columns::new(n, distinct_quads(n).collect());
    let mut e = Echelon::new(cols.tuples.len());
    for q @ [a, b, c, d] in distinct_quads(n) {
        e.insert_homogeneous(row([(cols.col(q), 1), (cols.col([b, a, c, d]), 1)]));
        e.insert_homogeneous(row([(cols.col(q), 1), (cols.col([c, d, a, b]), 1)]));
    }
    for [x, x1, x2, h, h1] in distinct_quints(n) {
        e.insert_homogeneous(row([
            (cols.col([x, x1, h, h1]), 1),
            (cols.col([x1, x2, h, h1]), 1),
            (cols.col([x, x2, h, h1]), -1),
        ]));
    }
    if vanishing {
        let cfg = Configuration::standard(n);
        for q in distinct_quads(n).filter(|q| cfg.ordered4(*q)) {
            e.insert_homogeneous(row([(cols.col(q), 1)]));
        }
    }
    (cols, e)
}

fn cocycle_system(n: usize) -> (Columns<3>, Echelon) {
    let cols = Columns::new(n, distinct_triples(n).collect());
    let mut e = Echelon::new(cols.tuples.len());
    for t @ [a, b, c] in distinct_triples(n) {
        e.insert_homogeneous(row([(cols.col(t), 1), (cols.col([b, a, c]), 1)]));
        e.insert_homogeneous(row([(cols.col(t), 1), (cols.col([a, c, b]), 1)]));
    }
    for [a, b, c, d] in distinct_quads(n) {
        e.insert_homogeneous(row([
            (cols.col([b, c, d]), 1),
            (cols.col([a, c, d]), -1),
            (cols.col([a, b, d]), 1),
            (cols.col([a, b, c]), -1),
        ]));
    }
    (cols, e)
}

/// Dimension of the solution space of the chosen homogeneous system on `n`
/// labels, by exact elimination.
pub fn space_dimension(n: usize, constraints: ConstraintSet) -> Result<usize> {
    check_dim_range(n)?;
    Ok(match constraints {
        ConstraintSet::AxiomsOnly => crossratio_system(n, false).1.nullity(),
        ConstraintSet::AxiomsPlusVanishingOnOrdered => crossratio_system(n, true).1.nullity(),
        ConstraintSet::AlternatingCocycles => cocycle_system(n).1.nullity(),
    })
}

/// A basis of the cross-ratio tables on `n` labels satisfying the axioms
/// (and, if `vanishing`, zero on ordered 4-tuples of `0 < … < n−1`).
pub fn crossratio_basis(n: usize, vanishing: bool) -> Result<Vec<CrossRatioTable>> {
    check_dim_range(n)?;
    let (cols, e) = crossratio_system(n, vanishing);
    Ok(e.nullspace()
        .into_iter()
        .map(|v| {
            let mut t = CrossRatioTable::zero(n);
            for (q, x) in cols.tuples.iter().zip(v) {
                t.set(*q, x);
            }
            t
        })
        .collect())
}

/// A basis of the alternating 2-cocycles on `n` labels.
pub fn cocycle_basis(n: usize) -> Result<Vec<AltCochain2>> {
    check_dim_range(n)?;
    let (cols, e) = cocycle_system(n);
    e.nullspace()
        .into_iter()
        .map(|v| {
            let mut values = vec![Rational::zero(); n.pow(3)];
            for (t, x) in cols.tuples.iter().zip(v) {
                values[Columns::<3>::flat(n, t)] = x;
            }
            AltCochain2::new(Cochain2 { n, values })
        })
        .collect()
}

/// `b(x, y) = f(y) − f(x)`; its coboundary vanishes identically.
pub fn exact_cochain1(n: usize, f: impl Fn(usize) -> Rational) -> Cochain1 {
    Cochain1::from_fn(n, |x, y| f(y) - f(x))
}

/// Coboundary of the antisymmetrisation of `b`. Every alternating 2-cocycle
/// on finitely many labels arises this way.
pub fn alternating_coboundary(n: usize, b: impl Fn(usize, usize) -> Rational) -> AltCochain2 {
    AltCochain2::from_increasing(n, |[x, y, z]| {
        let anti = |u: usize, v: usize| (b(u, v) - b(v, u)) * half();
        anti(y, z) - anti(x, z) + anti(x, y)
    })
}
