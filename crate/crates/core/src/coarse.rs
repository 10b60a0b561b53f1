//! Finite graph metric spaces: Gromov products, hyperbolicity constants and
//! Busemann estimates along geodesic ray prefixes.
//!
//! All distances are integers, so Gromov products and the four-point
//! constant are half-integers and everything stays exact.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::Rational;

/// Connected unweighted graph with its all-pairs distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGraphSpace {
    adj: Vec<Vec<usize>>,
    dist: Vec<Vec<u32>>,
}

impl FiniteGraphSpace {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Size {
                what: "graph",
                n,
                min: 1,
                max: usize::MAX,
            });
        }
        let mut adj = vec![BTreeSet::new(); n];
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let dist = (0..n)
            .map(|s| bfs(&adj, s))
            .collect::<Option<Vec<_>>>()
            .ok_or(Error::NotConnected)?;
        Ok(Self { adj, dist })
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("paths are connected")
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges).expect("cycles are connected")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges).expect("stars are connected")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Self::new(n, &edges).expect("complete graphs are connected")
    }

    /// Tree given by `parent[v]` for `v ≥ 1`; vertex 0 is the root.
    pub fn from_parents(parent: &[usize]) -> Result<Self> {
        let edges: Vec<_> = parent.iter().enumerate().skip(1).map(|(v, &p)| (p, v)).collect();
        Self::new(parent.len(), &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|a| self.adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.n()
    }

    pub fn d(&self, x: usize, y: usize) -> u32 {
        self.dist[x][y]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn eccentricity(&self, v: usize) -> u32 {
        self.dist[v].iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        (0..self.n()).map(|v| self.eccentricity(v)).max().unwrap_or(0)
    }

    // 2·(y,z)_x
    fn gromov2(&self, y: usize, z: usize, x: usize) -> i64 {
        self.d(y, x) as i64 + self.d(z, x) as i64 - self.d(y, z) as i64
    }

    /// Every geodesic from `u` to `v` as a vertex list, stopping after `cap`
    /// of them. The flag reports whether the cap was hit.
    pub fn geodesics(&self, u: usize, v: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let mut out = Vec::new();
        let mut path = vec![u];
        let capped = self.extend_geodesics(&mut path, v, cap, &mut out);
        (out, capped)
    }

    fn extend_geodesics(&self, path: &mut Vec<usize>, v: usize, cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
        let cur = *path.last().expect("nonempty");
        if cur == v {
            if out.len() == cap {
                return true;
            }
            out.push(path.clone());
            return false;
        }
        for &w in &self.adj[cur] {
            if self.d(w, v) + 1 == self.d(cur, v) {
                path.push(w);
                let capped = self.extend_geodesics(path, v, cap, out);
                path.pop();
                if capped {
                    return true;
                }
            }
        }
        false
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Option<Vec<u32>> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == u32::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist.iter().all(|&d| d != u32::MAX).then_some(dist)
}

/// `(y,z)_x = ½(d(y,x) + d(z,x) − d(y,z))`.
pub fn gromov_product(space: &FiniteGraphSpace, y: usize, z: usize, x: usize) -> Result<Rational> {
    for v in [x, y, z] {
        space.check_vertex(v)?;
    }
    Ok(Rational::new(space.gromov2(y, z, x).into(), 2.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourPointDelta {
    pub delta: Rational,
    /// `(x, y, z, w)` attaining `min((x,y)_w, (y,z)_w) − (x,z)_w = δ`, the
    /// lexicographically smallest such tuple.
    pub witness: [usize; 4],
}

/// Smallest `δ` with `(x,z)_w ≥ min((x,y)_w, (y,z)_w) − δ` for all vertex
/// 4-tuples.
pub fn four_point_delta(space: &FiniteGraphSpace) -> FourPointDelta {
    let n = space.n();
    let (best, witness) = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best = (i64::MIN, [0; 4]);
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let v = space.gromov2(x, y, w).min(space.gromov2(y, z, w)) - space.gromov2(x, z, w);
                        if v > best.0 {
                            best = (v, [x, y, z, w]);
                        }
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("nonempty graph");
    FourPointDelta {
        delta: Rational::new(best.into(), 2.into()),
        witness,
    }
}

pub const SLIM_MAX_VERTICES: usize = 64;
pub const GEODESIC_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlimDelta {
    pub delta: u32,
    /// `(x, y, z, v)`: `v` lies on a geodesic from `y` to `z` at distance
    /// `delta` from the union of some geodesics `x–y` and `x–z`.
    pub witness: Option<[usize; 4]>,
    /// Vertex pairs whose geodesic enumeration hit the cap.
    pub capped_pairs: usize,
}

/// Smallest integer `δ` such that in every geodesic triangle each side lies
/// in the `δ`-neighborhood of the union of the other two. Triangles range
/// over all vertex triples (repeats allowed, which covers bigons) and all
/// enumerated geodesics for each side.
pub fn slim_triangle_delta(space: &FiniteGraphSpace) -> Result<SlimDelta> {
    let n = space.n();
    if n > SLIM_MAX_VERTICES {
        return Err(Error::Size {
            what: "slim_triangle_delta",
            n,
            min: 1,
            max: SLIM_MAX_VERTICES,
        });
    }
    let geo: Vec<Vec<(Vec<Vec<usize>>, bool)>> = (0..n)
        .into_par_iter()
        .map(|u| (0..n).map(|v| space.geodesics(u, v, GEODESIC_CAP)).collect())
        .collect();
    let capped_pairs = geo.iter().flatten().filter(|(_, c)| *c).count();
    let to_path = |v: usize, path: &[usize]| path.iter().map(|&w| space.d(v, w)).min().expect("nonempty path");
    // D(v; a, b) = max over geodesics a–b of the distance from v to it
    let far = |v: usize, a: usize, b: usize| geo[a][b].0.iter().map(|p| to_path(v, p)).max().expect("connected");

    let triples: Vec<[usize; 3]> = (0..n)
        .flat_map(|x| (x..n).flat_map(move |y| (y..n).map(move |z| [x, y, z])))
        .collect();
    let best = triples
        .par_iter()
        .map(|&[x, y, z]| {
            let mut best: Option<(u32, [usize; 4])> = None;
            // each side in turn, with the opposite vertex first
            for [o, a, b] in [[x, y, z], [y, x, z], [z, x, y]] {
                for side in &geo[a][b].0 {
                    for &v in side {
                        let d = far(v, o, a).min(far(v, o, b));
                        if best.is_none_or(|(bd, _)| d > bd) {
                            best = Some((d, [o, a, b, v]));
                        }
                    }
                }
            }
            best.expect("every side has a vertex")
        })
        .reduce_with(|p, q| if q.0 > p.0 || (q.0 == p.0 && q.1 < p.1) { q } else { p })
        .expect("nonempty graph");
    Ok(SlimDelta {
        delta: best.0,
        witness: (best.0 > 0).then_some(best.1),
        capped_pairs,
    })
}

/// A geodesic ray prefix `v₀, …, v_T` with consecutive vertices adjacent and
/// `d(v₀, v_t) = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayPrefix {
    vertices: Vec<usize>,
}

pub const MIN_RAY_LENGTH: usize = 4;

impl RayPrefix {
    pub fn new(space: &FiniteGraphSpace, vertices: Vec<usize>) -> Result<Self> {
        for &v in &vertices {
            space.check_vertex(v)?;
        }
        let t = vertices.len().saturating_sub(1);
        if t < MIN_RAY_LENGTH {
            return Err(Error::PrefixTooShort(t));
        }
        for (i, &v) in vertices.iter().enumerate() {
            if space.d(vertices[0], v) as usize != i {
                return Err(Error::InvalidRay(format!("d(v0, v{i}) = {} != {i}", space.d(vertices[0], v))));
            }
        }
        Ok(Self { vertices })
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("nonempty")
    }

    /// `T`, the number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BusemannEstimate {
    pub value: i64,
    pub stabilized: bool,
}

/// Estimate of `β(y, γ) = lim sup (d(y, γ(t)) − t)` from a prefix of length
/// `T`: the maximum over the tail `t ≥ ⌈T/2⌉`. It is stabilized iff
/// `d(y, v_t) − t` is constant on that whole tail, in which case the value
/// is that constant.
///
/// Along a geodesic `d(y, v_t) − t` never increases, so constancy on the
/// final quarter alone would let the tail maximum sit above the limit.
pub fn busemann_estimate(space: &FiniteGraphSpace, y: usize, ray: &RayPrefix) -> Result<BusemannEstimate> {
    space.check_vertex(y)?;
    let t_max = ray.len();
    let excess = |t: usize| space.d(y, ray.vertices[t]) as i64 - t as i64;
    let value = (t_max.div_ceil(2)..=t_max).map(excess).max().expect("T ≥ 4");
    let stabilized = excess(t_max) == value;
    Ok(BusemannEstimate { value, stabilized })
}

/// Finite stand-in for the geodesic rays converging to one boundary point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayFamily {
    pub rays: Vec<RayPrefix>,
}

impl RayFamily {
    /// All geodesics from each start to a common far vertex `target`
    /// (at most `cap` per start), as ray prefixes. Starts too close to
    /// `target` are skipped.
    pub fn toward(space: &FiniteGraphSpace, starts: &[usize], target: usize, cap: usize) -> Result<Self> {
        space.check_vertex(target)?;
        let mut rays = Vec::new();
        for &s in starts {
            space.check_vertex(s)?;
            if (space.d(s, target) as usize) < MIN_RAY_LENGTH {
                continue;
            }
            for path in space.geodesics(s, target, cap).0 {
                rays.push(RayPrefix::new(space, path)?);
            }
        }
        Ok(Self { rays })
    }

    pub fn starts(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.rays.iter().map(RayPrefix::start).collect();
        set.into_iter().collect()
    }
}

fn combine(estimates: impl Iterator<Item = BusemannEstimate>) -> Option<BusemannEstimate> {
    estimates.reduce(|a, b| BusemannEstimate {
        value: a.value.max(b.value),
        stabilized: a.stabilized && b.stabilized,
    })
}

/// `β̂(y, x)`: the sup of the estimates over the rays of the family starting
/// at `x`; `None` if no ray starts there.
pub fn relative_estimate(
    space: &FiniteGraphSpace,
    family: &RayFamily,
    y: usize,
    x: usize,
) -> Result<Option<BusemannEstimate>> {
    let estimates = family
        .rays
        .iter()
        .filter(|r| r.start() == x)
        .map(|r| busemann_estimate(space, y, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(estimates.into_iter()))
}

/// `β̂(y)`: the sup of the estimates over the whole family.
pub fn family_estimate(space: &FiniteGraphSpace, family: &RayFamily, y: usize) -> Result<Option<BusemannEstimate>> {
    let estimates = family
        .rays
        .iter()
        .map(|r| busemann_estimate(space, y, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(combine(estimates.into_iter()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Worst<const K: usize> {
    pub value: i64,
    pub witness: [usize; K],
}

fn raise<const K: usize>(slot: &mut Option<Worst<K>>, value: i64, witness: [usize; K]) {
    if slot.as_ref().is_none_or(|w| value > w.value) {
        *slot = Some(Worst { value, witness });
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BusemannReport {
    /// Worst `|β̂(y,x)| − d(y,x)` over samples `y` and ray starts `x`, with
    /// witness `(y, x)`.
    pub bound: Option<Worst<2>>,
    pub bound_violations: usize,
    /// Worst `|β̂(z,y) − β̂(z,x) + β̂(y,x)|`, witness `(z, y, x)`.
    pub cocycle: Option<Worst<3>>,
    /// Worst `|β̂(γ(t),x) + d(γ(t),x)|` along the family's rays, witness
    /// `(γ(t), x)`.
    pub along_ray: Option<Worst<2>>,
    /// `|β̂(y) − β̂(x)| ≤ d(y,x)` failures among stabilized samples.
    pub lipschitz_violations: usize,
    pub lipschitz_checked: usize,
    /// Estimates dropped because they had not stabilized.
    pub excluded: usize,
    pub used: usize,
}

impl BusemannReport {
    /// True when every estimate was excluded.
    pub fn is_empty(&self) -> bool {
        self.used == 0
    }
}

/// Evaluates the standard Busemann inequalities on the sample vertices,
/// using only stabilized estimates.
pub fn busemann_inequality_report(
    space: &FiniteGraphSpace,
    family: &RayFamily,
    samples: &[usize],
) -> Result<BusemannReport> {
    let starts = family.starts();
    let mut report = BusemannReport::default();
    let rel = |report: &mut BusemannReport, y: usize, x: usize| -> Result<Option<i64>> {
        Ok(match relative_estimate(space, family, y, x)? {
            Some(e) if e.stabilized => {
                report.used += 1;
                Some(e.value)
            }
            Some(_) => {
                report.excluded += 1;
                None
            }
            None => None,
        })
    };
    for &y in samples {
        for &x in &starts {
            if let Some(b) = rel(&mut report, y, x)? {
                let slack = b.abs() - space.d(y, x) as i64;
                if slack > 0 {
                    report.bound_violations += 1;
                }
                raise(&mut report.bound, slack, [y, x]);
            }
        }
    }
    for &z in samples {
        for &y in &starts {
            for &x in &starts {
                let (Some(zy), Some(zx), Some(yx)) = (rel(&mut report, z, y)?, rel(&mut report, z, x)?, rel(&mut report, y, x)?) else {
                    continue;
                };
                raise(&mut report.cocycle, (zy - zx + yx).abs(), [z, y, x]);
            }
        }
    }
    for ray in &family.rays {
        let x = ray.start();
        for &v in ray.vertices() {
            if let Some(b) = rel(&mut report, v, x)? {
                raise(&mut report.along_ray, (b + space.d(v, x) as i64).abs(), [v, x]);
            }
        }
    }
    let hat: Vec<(usize, i64)> = samples
        .iter()
        .map(|&y| Ok(family_estimate(space, family, y)?.filter(|e| e.stabilized).map(|e| (y, e.value))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for &(y, by) in &hat {
        for &(x, bx) in &hat {
            report.lipschitz_checked += 1;
            if (by - bx).abs() > space.d(y, x) as i64 {
                report.lipschitz_violations += 1;
            }
        }
    }
    Ok(report)
}

/// Vertices `y` with a stabilized family estimate and `|β̂(y) − β̂(x)| ≤ tol`.
pub fn horosphere_points(space: &FiniteGraphSpace, family: &RayFamily, x: usize, tol: i64) -> Result<Vec<usize>> {
    let bx = match family_estimate(space, family, x)? {
        Some(e) if e.stabilized => e.value,
        _ => return Err(Error::NotStabilized(x)),
    };
    let mut out = Vec::new();
    for y in 0..space.n() {
        if let Some(e) = family_estimate(space, family, y)? {
            if e.stabilized && (e.value - bx).abs() <= tol {
                out.push(y);
            }
        }
    }
    Ok(out)
}

/// Level sequences of all rooted trees on `n` vertices (root at level 0),
/// by the Beyer–Hedetniemi successor rule.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(level.clone());
        let Some(p) = (1..n).rev().find(|&i| level[i] > 1) else {
            return out;
        };
        let q = (0..p).rev().find(|&i| level[i] == level[p] - 1).expect("parent exists");
        for i in p..n {
            level[i] = level[i - (p - q)];
        }
    }
}

fn parents_of(level: &[usize]) -> Vec<usize> {
    let mut parent = vec![0; level.len()];
    for i in 1..level.len() {
        parent[i] = (0..i).rev().find(|&j| level[j] + 1 == level[i]).expect("parent exists");
    }
    parent
}

fn rooted_code(adj: &[Vec<usize>], v: usize, from: Option<usize>) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| Some(w) != from)
        .map(|&w| rooted_code(adj, w, Some(v)))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism invariant of a tree: the smallest rooted code over its
/// centers.
pub fn tree_code(tree: &FiniteGraphSpace) -> String {
    let n = tree.n();
    let ecc: Vec<u32> = (0..n).map(|v| tree.eccentricity(v)).collect();
    let radius = *ecc.iter().min().expect("nonempty");
    (0..n)
        .filter(|&v| ecc[v] == radius)
        .map(|c| rooted_code(&tree.adj, c, None))
        .min()
        .expect("a center exists")
}

/// One representative of every isomorphism class of trees on `n` vertices.
pub fn free_trees(n: usize) -> Vec<FiniteGraphSpace> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for level in rooted_level_sequences(n) {
        let tree = FiniteGraphSpace::from_parents(&parents_of(&level)).expect("level sequences give trees");
        if seen.insert(tree_code(&tree)) {
            out.push(tree);
        }
    }
    out
}

/// All trees with 1 to `max_n` vertices up to isomorphism.
pub fn tree_catalog(max_n: usize) -> Vec<FiniteGraphSpace> {
    (1..=max_n).flat_map(free_trees).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteGraphSpace::new(3, &[(0, 1)]), Err(Error::NotConnected));
        assert_eq!(FiniteGraphSpace::new(2, &[(0, 2)]), Err(Error::UnknownVertex(2)));
        let g = FiniteGraphSpace::new(3, &[(0, 1), (1, 2), (1, 0), (2, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_tree());
    }

    #[test]
    fn gromov_product_examples() {
        let p = FiniteGraphSpace::path(4);
        assert_eq!(gromov_product(&p, 0, 3, 0).unwrap(), rat(0));
        assert_eq!(gromov_product(&p, 2, 3, 2).unwrap(), rat(0));
        // star center 0, leaves 1..3
        let s = FiniteGraphSpace::star(3);
        assert_eq!(gromov_product(&s, 1, 2, 0).unwrap(), rat(0));
        assert_eq!(gromov_product(&s, 1, 2, 3).unwrap(), rat(1));
        assert_eq!(gromov_product(&s, 1, 9, 0), Err(Error::UnknownVertex(9)));
        let c = FiniteGraphSpace::cycle(5);
        assert_eq!(gromov_product(&c, 1, 3, 0).unwrap(), Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn four_point_examples() {
        assert_eq!(four_point_delta(&FiniteGraphSpace::path(2)).delta, rat(0));
        assert_eq!(four_point_delta(&FiniteGraphSpace::star(4)).delta, rat(0));
        let c8 = four_point_delta(&FiniteGraphSpace::cycle(8));
        assert_eq!(c8.delta, rat(2));
        let [x, y, z, w] = c8.witness;
        let c = FiniteGraphSpace::cycle(8);
        let gp = |a, b, o| gromov_product(&c, a, b, o).unwrap();
        assert_eq!(gp(x, y, w).min(gp(y, z, w)) - gp(x, z, w), rat(2));
        assert_eq!(four_point_delta(&FiniteGraphSpace::complete(5)).delta, rat(0));
    }

    #[test]
    fn geodesic_enumeration() {
        let c = FiniteGraphSpace::cycle(8);
        let (g, capped) = c.geodesics(0, 4, 100);
        assert_eq!(g.len(), 2);
        assert!(!capped);
        assert_eq!(c.geodesics(0, 4, 1), (vec![vec![0, 1, 2, 3, 4]], true));
        // 3-cube: 3! geodesics between antipodes
        let cube = FiniteGraphSpace::new(
            8,
            &(0..8usize)
                .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(cube.geodesics(0, 7, 100).0.len(), 6);
    }

    #[test]
    fn slim_examples() {
        assert_eq!(slim_triangle_delta(&FiniteGraphSpace::path(6)).unwrap().delta, 0);
        assert_eq!(slim_triangle_delta(&FiniteGraphSpace::star(5)).unwrap().delta, 0);
        let c8 = slim_triangle_delta(&FiniteGraphSpace::cycle(8)).unwrap();
        assert_eq!(c8.delta, 2);
        assert_eq!(c8.capped_pairs, 0);
        assert!(slim_triangle_delta(&FiniteGraphSpace::complete(5)).unwrap().delta <= 1);
        assert!(matches!(slim_triangle_delta(&FiniteGraphSpace::path(65)), Err(Error::Size { .. })));
    }

    #[test]
    fn rooted_and_free_tree_counts() {
        let rooted: Vec<usize> = (1..=9).map(|n| rooted_level_sequences(n).len()).collect();
        assert_eq!(rooted, vec![1, 1, 2, 4, 9, 20, 48, 115, 286]);
        let free: Vec<usize> = (1..=9).map(|n| free_trees(n).len()).collect();
        assert_eq!(free, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
        assert!(tree_catalog(7).iter().all(FiniteGraphSpace::is_tree));
    }

    #[test]
    fn ray_validation() {
        let p = FiniteGraphSpace::path(8);
        assert!(RayPrefix::new(&p, vec![0, 1, 2, 3, 4]).is_ok());
        assert_eq!(RayPrefix::new(&p, vec![0, 1, 2, 3]), Err(Error::PrefixTooShort(3)));
        assert!(matches!(RayPrefix::new(&p, vec![0, 1, 2, 1, 2]), Err(Error::InvalidRay(_))));
        assert!(matches!(RayPrefix::new(&p, vec![0, 1, 2, 3, 5]), Err(Error::InvalidRay(_))));
    }

    // spine 0..=12 with a branch of length m hanging at spine vertex k
    fn comb(k: usize, m: usize) -> (FiniteGraphSpace, usize) {
        let mut edges: Vec<(usize, usize)> = (1..=12).map(|i| (i - 1, i)).collect();
        let mut prev = k;
        for j in 0..m {
            edges.push((prev, 13 + j));
            prev = 13 + j;
        }
        (FiniteGraphSpace::new(13 + m, &edges).unwrap(), prev)
    }

    #[test]
    fn busemann_estimate_examples() {
        let (tree, tip) = comb(3, 2);
        let ray = RayPrefix::new(&tree, (0..=12).collect()).unwrap();
        for k in 0..=6 {
            let e = busemann_estimate(&tree, k, &ray).unwrap();
            assert_eq!(e, BusemannEstimate { value: -(k as i64), stabilized: true });
        }
        // past the middle the tail still decreases
        let e = busemann_estimate(&tree, 9, &ray).unwrap();
        assert_eq!(e, BusemannEstimate { value: 3 - 6, stabilized: false });
        assert_eq!(busemann_estimate(&tree, tip, &ray).unwrap(), BusemannEstimate { value: 2 - 3, stabilized: true });
    }

    #[test]
    fn wrapped_ray_on_a_cycle() {
        let c8 = FiniteGraphSpace::cycle(8);
        let ray = RayPrefix::new(&c8, vec![0, 1, 2, 3, 4]).unwrap();
        // d(6, v_t) − t = 2, 3−1... : 2, 2, 0, −2, −2 for t = 0..4
        let e = busemann_estimate(&c8, 7, &ray).unwrap();
        assert!(!e.stabilized);
        assert!(busemann_estimate(&c8, 0, &ray).unwrap().stabilized);
    }

    #[test]
    fn tree_report_holds_with_zero_constants() {
        let (tree, tip) = comb(4, 3);
        let family = RayFamily::toward(&tree, &[0, 1, 2, 4, tip], 12, 10).unwrap();
        let report = busemann_inequality_report(&tree, &family, &(0..tree.n()).collect::<Vec<_>>()).unwrap();
        assert!(!report.is_empty());
        assert_eq!(report.bound_violations, 0, "{report:?}");
        assert_eq!(report.cocycle.as_ref().unwrap().value, 0);
        assert_eq!(report.along_ray.as_ref().unwrap().value, 0);
        assert_eq!(report.lipschitz_violations, 0);
    }

    #[test]
    fn horospheres_on_a_comb() {
        let (tree, tip) = comb(4, 3);
        let family = RayFamily::toward(&tree, &[0], 12, 10).unwrap();
        // β̂ = −k on the spine, 3 − 4 = −1 at the tip
        assert_eq!(horosphere_points(&tree, &family, 1, 0).unwrap(), vec![1, tip]);
        let all = horosphere_points(&tree, &family, 1, 100).unwrap();
        // spine vertices past the middle of the ray never stabilize
        assert_eq!(all, vec![0, 1, 2, 3, 4, 5, 6, 13, 14, 15]);
    }
}
