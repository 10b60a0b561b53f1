//! The boundary circle as the projective line `RP¹ = ℚ ∪ {∞}`.
//!
//! The cyclic order is the increasing order of the reals closed up by `∞`,
//! which sits between the large positive and the large negative numbers.
//! Möbius maps with positive determinant preserve this cyclic order, which is
//! what makes the canonical cross ratio invariant.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BoundaryPoint {
    Finite(Rational),
    Infinity,
}

impl BoundaryPoint {
    pub fn int(n: i64) -> Self {
        BoundaryPoint::Finite(rat(n))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        BoundaryPoint::Finite(Rational::new(p.into(), q.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Linear order on `RP¹` cut open at `∞`, with `∞` as the largest element.
    /// Any three points are positively cyclically ordered iff some rotation of
    /// them is increasing in this order.
    pub fn line_cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Ordering::Equal,
            (BoundaryPoint::Infinity, _) => Ordering::Greater,
            (_, BoundaryPoint::Infinity) => Ordering::Less,
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => a.cmp(b),
        }
    }
}

impl From<Rational> for BoundaryPoint {
    fn from(q: Rational) -> Self {
        BoundaryPoint::Finite(q)
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Infinity => f.write_str("inf"),
            BoundaryPoint::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for BoundaryPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(BoundaryPoint::Infinity);
        }
        parse_rational(s).map(BoundaryPoint::Finite)
    }
}

/// Parses `"p/q"` or `"p"`; the result is always in lowest terms.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let q: Rational = s
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational: {s:?}")))?;
    Ok(q)
}

fn distinct3(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Result<()> {
    for (a, b) in [(x, y), (x, z), (y, z)] {
        if a == b {
            return Err(Error::DuplicatePoint(a.to_string()));
        }
    }
    Ok(())
}

fn distinct4(pts: [&BoundaryPoint; 4]) -> Result<()> {
    for i in 0..4 {
        for j in i + 1..4 {
            if pts[i] == pts[j] {
                return Err(Error::DuplicatePoint(pts[i].to_string()));
            }
        }
    }
    Ok(())
}

// Assumes pairwise distinct arguments.
fn ordered_unchecked(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> bool {
    let lt = |a: &BoundaryPoint, b: &BoundaryPoint| a.line_cmp(b) == Ordering::Less;
    (lt(x, y) && lt(y, z)) || (lt(y, z) && lt(z, x)) || (lt(z, x) && lt(x, y))
}

/// True iff `(x, y, z)` is positively cyclically ordered.
pub fn cyclic_ordered(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Result<bool> {
    distinct3(x, y, z)?;
    Ok(ordered_unchecked(x, y, z))
}

/// `+1` for positively ordered, `-1` for negatively ordered, `0` when two of
/// the points coincide.
pub fn orientation(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> i8 {
    if x == y || y == z || x == z {
        0
    } else if ordered_unchecked(x, y, z) {
        1
    } else {
        -1
    }
}

/// True iff `(a, b, c, d)` is met in this order when running once around the
/// circle in the positive direction.
pub fn quadruple_ordered(
    a: &BoundaryPoint,
    b: &BoundaryPoint,
    c: &BoundaryPoint,
    d: &BoundaryPoint,
) -> Result<bool> {
    distinct4([a, b, c, d])?;
    // b in (a, c) and c in (a, d); equivalent to all four consecutive
    // triples being positively ordered.
    Ok(ordered_unchecked(a, b, c) && ordered_unchecked(a, c, d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linking {
    Unlinked,
    PositivelyLinked,
    NegativelyLinked,
}

impl Linking {
    pub fn sign(self) -> i64 {
        match self {
            Linking::Unlinked => 0,
            Linking::PositivelyLinked => 1,
            Linking::NegativelyLinked => -1,
        }
    }
}

/// How the chord `c–d` meets the chord `a–b`.
pub fn linking(
    a: &BoundaryPoint,
    b: &BoundaryPoint,
    c: &BoundaryPoint,
    d: &BoundaryPoint,
) -> Result<Linking> {
    distinct4([a, b, c, d])?;
    let c_in = ordered_unchecked(a, c, b);
    let d_in = ordered_unchecked(a, d, b);
    Ok(match (c_in, d_in) {
        (true, true) | (false, false) => Linking::Unlinked,
        // c in (a, b), d in (b, a): (a, c, b, d) is ordered.
        (true, false) => Linking::PositivelyLinked,
        (false, true) => Linking::NegativelyLinked,
    })
}

/// The canonical order/linking cross ratio: `0` on unlinked quadruples, `±1`
/// on linked ones, and `0` on the degenerate quadruples `(ξ, ξ, η, ζ)`.
pub fn canonical_cross_ratio(
    a: &BoundaryPoint,
    b: &BoundaryPoint,
    c: &BoundaryPoint,
    d: &BoundaryPoint,
) -> Result<Rational> {
    if a == b && a != c && a != d && c != d {
        return Ok(Rational::zero());
    }
    Ok(rat(linking(a, b, c, d)?.sign()))
}

/// The alternating cocycle induced by the canonical cross ratio: `±1/2`
/// according to orientation, `0` on degenerate triples.
pub fn orientation_cocycle(x: &BoundaryPoint, y: &BoundaryPoint, z: &BoundaryPoint) -> Rational {
    Rational::new(orientation(x, y, z).into(), 2.into())
}

/// A finite labelled set of pairwise distinct boundary points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    points: Vec<BoundaryPoint>,
    // position of each label when the points are read in cyclic order
    // starting from the smallest one in `line_cmp`
    position: Vec<usize>,
}

impl Configuration {
    pub fn new(points: Vec<BoundaryPoint>) -> Result<Self> {
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&i, &j| points[i].line_cmp(&points[j]));
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                return Err(Error::DuplicatePoint(points[w[0]].to_string()));
            }
        }
        let mut position = vec![0; points.len()];
        for (pos, &label) in order.iter().enumerate() {
            position[label] = pos;
        }
        Ok(Self { points, position })
    }

    /// Configuration of the integers `0, 1, …, n−1`, labelled in order.
    pub fn standard(n: usize) -> Self {
        Self::new((0..n as i64).map(BoundaryPoint::int).collect()).expect("distinct")
    }

    pub fn from_strs(pts: &[&str]) -> Result<Self> {
        Self::new(pts.iter().map(|s| s.parse()).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[BoundaryPoint] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &BoundaryPoint {
        &self.points[label]
    }

    pub fn label_of(&self, p: &BoundaryPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Cyclic position of each label (a rotation of the cyclic order).
    pub fn positions(&self) -> &[usize] {
        &self.position
    }

    /// Labels listed in cyclic order.
    pub fn cyclic_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.len()];
        for (label, &pos) in self.position.iter().enumerate() {
            labels[pos] = label;
        }
        labels
    }

    /// Offset of `x` from `base` going once around in the positive direction.
    pub fn offset(&self, base: usize, x: usize) -> usize {
        let n = self.len();
        (self.position[x] + n - self.position[base]) % n
    }

    /// Label-level cyclic order test; agrees with [`cyclic_ordered`] on the
    /// underlying points.
    pub fn ordered3(&self, a: usize, b: usize, c: usize) -> bool {
        a != b && b != c && a != c && self.offset(a, b) < self.offset(a, c)
    }

    /// Label-level [`quadruple_ordered`].
    pub fn ordered4(&self, q: [usize; 4]) -> bool {
        let [a, b, c, d] = q;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct && {
            let (ob, oc, od) = (self.offset(a, b), self.offset(a, c), self.offset(a, d));
            ob < oc && oc < od
        }
    }

    /// Whether `x` lies in the half-open arc `[a, b)`.
    pub fn in_arc(&self, a: usize, b: usize, x: usize) -> bool {
        self.offset(a, x) < self.offset(a, b)
    }

    pub fn check_label(&self, label: usize) -> Result<()> {
        if label < self.len() {
            Ok(())
        } else {
            Err(Error::Label {
                label,
                n: self.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BoundaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn cyclic_order_examples() {
        assert!(cyclic_ordered(&p("0"), &p("1"), &p("2")).unwrap());
        assert!(cyclic_ordered(&p("1"), &p("inf"), &p("-1")).unwrap());
        assert!(!cyclic_ordered(&p("2"), &p("1"), &p("0")).unwrap());
        assert!(matches!(
            cyclic_ordered(&p("1"), &p("1"), &p("0")),
            Err(Error::DuplicatePoint(_))
        ));
    }

    #[test]
    fn quadruple_examples() {
        let q = |a, b, c, d| quadruple_ordered(&p(a), &p(b), &p(c), &p(d)).unwrap();
        assert!(q("0", "1", "2", "3"));
        assert!(!q("0", "2", "1", "3"));
        assert!(q("1", "2", "3", "0"));
        // consecutive triples (a,b,c) and (b,c,d) alone do not suffice
        assert!(!q("0", "1", "2", "1/2"));
        assert!(quadruple_ordered(&p("0"), &p("0"), &p("1"), &p("2")).is_err());
    }

    #[test]
    fn linking_examples() {
        let l = |a, b, c, d| linking(&p(a), &p(b), &p(c), &p(d)).unwrap();
        assert_eq!(l("0", "1", "2", "3"), Linking::Unlinked);
        assert_eq!(l("0", "2", "1", "3"), Linking::PositivelyLinked);
        assert_eq!(l("0", "2", "3", "1"), Linking::NegativelyLinked);
    }

    #[test]
    fn canonical_examples() {
        let c = |a, b, cc, d| canonical_cross_ratio(&p(a), &p(b), &p(cc), &p(d)).unwrap();
        assert_eq!(c("0", "1", "2", "3"), rat(0));
        assert_eq!(c("0", "2", "1", "3"), rat(1));
        assert_eq!(c("2", "0", "1", "3"), rat(-1));
        assert_eq!(c("0", "0", "1", "3"), rat(0));
        assert!(canonical_cross_ratio(&p("0"), &p("1"), &p("0"), &p("3")).is_err());
    }

    #[test]
    fn point_text_form() {
        assert_eq!(p("4/6").to_string(), "2/3");
        assert_eq!(p("-3").to_string(), "-3");
        assert_eq!(p("inf"), BoundaryPoint::Infinity);
        assert_eq!(p("2/-4").to_string(), "-1/2");
        assert!("x".parse::<BoundaryPoint>().is_err());
        assert!("1/0".parse::<BoundaryPoint>().is_err());
    }

    #[test]
    fn label_order_matches_geometry() {
        let cfg = Configuration::from_strs(&["3", "inf", "-1/2", "0", "7/3"]).unwrap();
        let n = cfg.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    let geo = cyclic_ordered(cfg.point(a), cfg.point(b), cfg.point(c)).unwrap();
                    assert_eq!(cfg.ordered3(a, b, c), geo);
                    for d in 0..n {
                        if [a, b, c].contains(&d) {
                            continue;
                        }
                        let geo4 = quadruple_ordered(
                            cfg.point(a),
                            cfg.point(b),
                            cfg.point(c),
                            cfg.point(d),
                        )
                        .unwrap();
                        assert_eq!(cfg.ordered4([a, b, c, d]), geo4);
                    }
                }
            }
        }
        assert!(Configuration::from_strs(&["1", "2/2"]).is_err());
    }
}
