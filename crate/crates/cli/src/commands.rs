use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crossratio::coarse::{
    busemann_inequality_report, four_point_delta, horosphere_points, slim_triangle_delta, FiniteGraphSpace, RayFamily,
    Worst, SLIM_MAX_VERTICES,
};
use crossratio::cocycle::{
    check_axioms, cochain_from_crossratio, crossratio_from_cocycle, distinct_triples, nu_dependence, space_dimension,
    ConstraintSet,
};
use crossratio::io::{cochain_to_json, config_to_json, measure_to_json, table_to_json, CochainJson, GraphJson, MeasureJson, PointRepr, Scalar, TableJson};
use crossratio::measure::{check_measure, crossratio_from_measure, psi};
use crossratio::mobius::{
    basepoint_change_check, canonical_invariance, north_south_check, orbit_cocycle_check, FixedPoints, Orientation,
};
use crossratio::rng::Lcg64;
use crossratio::words::{brooks_counting, enumerate_reduced, quasimorphism_defect, Generators, Letter};
use crossratio::{Error, GroupWord, MobiusMap, Quad, Rational, Result};

use crate::job::{self, Ctx, Source};

/// Witness lists are cut to this length; the counts stay complete.
const MAX_WITNESSES: usize = 20;

pub struct Report {
    pub pass: bool,
    pub counts: Map<String, Value>,
    pub witnesses: Vec<Value>,
    pub result: Value,
}

impl Report {
    fn new(pass: bool) -> Self {
        Self {
            pass,
            counts: Map::new(),
            witnesses: Vec::new(),
            result: Value::Null,
        }
    }

    fn count(mut self, key: &str, n: impl ToString) -> Self {
        self.counts.insert(key.into(), Value::String(n.to_string()));
        self
    }

    fn witnesses<T: ToString>(mut self, items: impl IntoIterator<Item = T>) -> Self {
        self.witnesses = items
            .into_iter()
            .take(MAX_WITNESSES)
            .map(|w| Value::String(w.to_string()))
            .collect();
        self
    }

    fn result(mut self, v: impl serde::Serialize) -> Self {
        self.result = serde_json::to_value(v).expect("report values serialize");
        self
    }
}

fn s(x: impl ToString) -> Value {
    Value::String(x.to_string())
}

pub fn run(ctx: &Ctx, cmd: &str, v: Value) -> Result<Report> {
    let mut rng = None;
    match cmd {
        "axioms" => axioms(ctx, job::params(cmd, v)?, &mut rng),
        "omega" => omega(ctx, job::params(cmd, v)?, &mut rng),
        "inverse" => inverse(ctx, job::params(cmd, v)?, &mut rng),
        "dim" => dim(job::params(cmd, v)?),
        "psi" => psi_cmd(ctx, job::params(cmd, v)?, &mut rng),
        "unpsi" => unpsi(ctx, job::params(cmd, v)?, &mut rng),
        "measure-check" => measure_check(ctx, job::params(cmd, v)?, &mut rng),
        "mobius" => mobius(job::params(cmd, v)?),
        "orbit-cocycle" => orbit_cocycle(job::params(cmd, v)?),
        "prism-check" => prism_check(job::params(cmd, v)?),
        "defect" => defect(job::params(cmd, v)?),
        "delta" => delta(ctx, job::params(cmd, v)?),
        "busemann" => busemann(ctx, job::params(cmd, v)?),
        "horosphere" => horosphere(ctx, job::params(cmd, v)?),
        other => Err(Error::Parse(format!("unknown command {other:?}"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJob {
    config: Option<Vec<PointRepr>>,
    n: Option<usize>,
    table: Source<TableJson>,
}

fn table_input(ctx: &Ctx, j: &TableJob, rng: &mut Option<Lcg64>) -> Result<crossratio::CrossRatioTable> {
    let cfg = match (&j.config, j.n) {
        (None, None) => None,
        _ => Some(job::config_or_random(ctx, &j.config, j.n, rng)?),
    };
    job::table(ctx, &j.table, cfg.as_ref(), rng)
}

fn axioms(ctx: &Ctx, j: TableJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    let t = table_input(ctx, &j, rng)?;
    let r = check_axioms(&t);
    Ok(Report::new(r.is_valid())
        .count("n", t.n())
        .count("axiom_i", r.checked[0])
        .count("axiom_ii", r.checked[1])
        .count("axiom_iii", r.checked[2])
        .count("violations", r.violations.len())
        .witnesses(&r.violations))
}

fn omega(ctx: &Ctx, j: TableJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    let t = table_input(ctx, &j, rng)?;
    let phi = cochain_from_crossratio(&t)?;
    let dependence = nu_dependence(&t);
    let closed = phi.is_cocycle();
    Ok(Report::new(dependence.is_empty() && closed)
        .count("n", t.n())
        .count("triples", distinct_triples(t.n()).count())
        .count("nu_disagreements", dependence.len())
        .witnesses(
            dependence
                .iter()
                .map(|(tr, nu1, nu2)| format!("triple {tr:?}: nu = {nu1} and nu = {nu2} disagree")),
        )
        .result(json!({ "closed": closed, "sup_norm": s(phi.sup_norm()), "cochain": cochain_to_json(&phi) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainJob {
    n: Option<usize>,
    cochain: Source<CochainJson>,
}

fn inverse(ctx: &Ctx, j: CochainJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    let phi = job::cochain(ctx, &j.cochain, j.n, rng)?;
    let t = crossratio_from_cocycle(&phi)?;
    let back = cochain_from_crossratio(&t)?;
    let round_trip = back == phi;
    let axioms_ok = check_axioms(&t).is_valid();
    Ok(Report::new(round_trip && axioms_ok)
        .count("n", phi.n())
        .result(json!({ "round_trip": round_trip, "axioms": axioms_ok, "table": table_to_json(&t) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DimJob {
    n: usize,
    #[serde(default = "default_constraints")]
    constraints: String,
}

fn default_constraints() -> String {
    "axioms_only".into()
}

fn dim(j: DimJob) -> Result<Report> {
    let c: ConstraintSet = j.constraints.parse()?;
    let d = space_dimension(j.n, c)?;
    Ok(Report::new(true)
        .count("n", j.n)
        .result(json!({ "constraints": c.to_string(), "dim": s(d) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiJob {
    config: Option<Vec<PointRepr>>,
    n: Option<usize>,
    table: Source<TableJson>,
}

fn psi_cmd(ctx: &Ctx, j: PsiJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    let cfg = job::config_or_random(ctx, &j.config, j.n, rng)?;
    let t = job::table(ctx, &j.table, Some(&cfg), rng)?;
    let m = psi(&t, &cfg)?;
    let r = check_measure(&m);
    Ok(Report::new(r.is_valid())
        .count("rectangles", m.rects().len())
        .count("violations", r.violations.len())
        .witnesses(&r.violations)
        .result(json!({ "zero": m.is_zero(), "measure": measure_to_json(&m) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureJob {
    config: Option<Vec<PointRepr>>,
    n: Option<usize>,
    measure: Source<MeasureJson>,
    base: Option<Quad>,
}

fn measure_input(ctx: &Ctx, j: &MeasureJob, rng: &mut Option<Lcg64>) -> Result<crossratio::RectMeasure> {
    let cfg = match (&j.config, j.n) {
        (None, None) => None,
        _ => Some(job::config_or_random(ctx, &j.config, j.n, rng)?),
    };
    job::measure(ctx, &j.measure, cfg.as_ref(), rng)
}

fn unpsi(ctx: &Ctx, j: MeasureJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    let base = j
        .base
        .ok_or_else(|| Error::Parse("unpsi: missing field `base`".into()))?;
    let m = measure_input(ctx, &j, rng)?;
    let t = crossratio_from_measure(&m, base)?;
    let round_trip = psi(&t, m.config())? == m;
    let axioms_ok = check_axioms(&t).is_valid();
    Ok(Report::new(round_trip && axioms_ok)
        .count("n", t.n())
        .result(json!({
            "round_trip": round_trip,
            "axioms": axioms_ok,
            "config": config_to_json(m.config()),
            "base": base,
            "table": table_to_json(&t),
        })))
}

fn measure_check(ctx: &Ctx, j: MeasureJob, rng: &mut Option<Lcg64>) -> Result<Report> {
    if j.base.is_some() {
        return Err(Error::Parse("measure-check: unknown field `base`".into()));
    }
    let m = measure_input(ctx, &j, rng)?;
    let r = check_measure(&m);
    Ok(Report::new(r.is_valid())
        .count("flip", r.checked[0])
        .count("additivity", r.checked[1])
        .count("violations", r.violations.len())
        .witnesses(&r.violations))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MobiusJob {
    map: String,
    #[serde(default)]
    apply: Vec<PointRepr>,
    starts: Option<Vec<PointRepr>>,
    #[serde(default = "default_iterations")]
    max_iter: usize,
    config: Option<Vec<PointRepr>>,
}

fn default_iterations() -> usize {
    60
}

const NORTH_SOUTH_STARTS: [&str; 10] = ["-3", "-2", "-1", "-1/2", "0", "1/3", "1", "5/2", "4", "inf"];

fn fixed_points_json(f: &FixedPoints) -> Value {
    match f {
        FixedPoints::Elliptic => json!({ "kind": "none" }),
        FixedPoints::Parabolic(p) => json!({ "kind": "parabolic", "point": s(p) }),
        FixedPoints::Hyperbolic { attracting, repelling } => {
            json!({ "kind": "rational", "attracting": s(attracting), "repelling": s(repelling) })
        }
        FixedPoints::Irrational {
            discriminant,
            attracting,
            repelling,
        } => json!({
            "kind": "irrational",
            "discriminant": s(discriminant),
            "attracting": [s(&attracting.lo), s(&attracting.hi)],
            "repelling": [s(&repelling.lo), s(&repelling.hi)],
        }),
    }
}

fn mobius(j: MobiusJob) -> Result<Report> {
    let m: MobiusMap = j.map.parse()?;
    let images = j
        .apply
        .iter()
        .map(|p| Ok(s(m.apply(&job::parse_point(p)?))))
        .collect::<Result<Vec<_>>>()?;
    let mut report = Report::new(true);
    let mut result = json!({
        "map": s(&m),
        "det": s(m.det()),
        "trace": s(m.trace()),
        "discriminant": s(m.discriminant()),
        "kind": s(m.classify()),
        "images": images,
    });
    if !m.is_identity() {
        let fixed = m.fixed_points()?;
        result["fixed_points"] = fixed_points_json(&fixed);
        if matches!(fixed, FixedPoints::Hyperbolic { .. }) {
            let starts = match &j.starts {
                Some(points) => points.iter().map(job::parse_point).collect::<Result<Vec<_>>>()?,
                None => NORTH_SOUTH_STARTS.iter().map(|p| p.parse()).collect::<Result<Vec<_>>>()?,
            };
            let ns = north_south_check(&m, &starts, j.max_iter)?;
            report.pass &= ns.holds();
            report = report
                .count("north_south_samples", ns.samples.len())
                .count("north_south_skipped", ns.skipped)
                .witnesses(
                    ns.samples
                        .iter()
                        .filter(|x| !x.monotone || x.converged_after.is_none())
                        .map(|x| format!("start {}: monotone {}, converged {:?}", x.start, x.monotone, x.converged_after)),
                );
            result["north_south"] = json!(ns
                .samples
                .iter()
                .map(|x| json!({ "start": s(&x.start), "monotone": x.monotone, "iterations": x.converged_after.map(s) }))
                .collect::<Vec<_>>());
        }
    }
    if let Some(points) = &j.config {
        let cfg = job::parse_config(points)?;
        let inv = canonical_invariance(&cfg, &m);
        report.pass &= inv.is_valid();
        report = report
            .count("invariance_checked", inv.checked)
            .count("invariance_violations", inv.violations.len());
        report.witnesses.extend(
            inv.violations
                .iter()
                .take(MAX_WITNESSES)
                .map(|q| s(format!("[,]0 not invariant at {q:?}"))),
        );
    }
    Ok(report.result(result))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorsJson {
    g: String,
    h: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrbitJob {
    xi: PointRepr,
    eta: Option<PointRepr>,
    #[serde(default = "default_word_length")]
    max_len: usize,
    generators: Option<GeneratorsJson>,
}

fn default_word_length() -> usize {
    3
}

/// Longest words accepted by the orbit commands; the checks are cubic or
/// quartic in the number of words.
const MAX_ORBIT_WORD_LENGTH: usize = 4;

fn orbit_elements(j: &OrbitJob) -> Result<(Vec<GroupWord>, Vec<MobiusMap>)> {
    if j.max_len > MAX_ORBIT_WORD_LENGTH {
        return Err(Error::Size {
            what: "word length",
            n: j.max_len,
            min: 0,
            max: MAX_ORBIT_WORD_LENGTH,
        });
    }
    let gens = match &j.generators {
        None => Generators::ping_pong(),
        Some(g) => Generators {
            g: g.g.parse()?,
            h: g.h.parse()?,
        },
    };
    let words = enumerate_reduced(j.max_len);
    let elements = gens.evaluate_all(&words);
    Ok((words, elements))
}

fn orbit_cocycle(j: OrbitJob) -> Result<Report> {
    if j.eta.is_some() {
        return Err(Error::Parse("orbit-cocycle: unknown field `eta`".into()));
    }
    let xi = job::parse_point(&j.xi)?;
    let (words, elements) = orbit_elements(&j)?;
    let r = orbit_cocycle_check(&Orientation, &xi, &elements);
    let w = |i: usize| words[i].to_string();
    let witnesses = r
        .not_alternating
        .iter()
        .map(|[a, b, c]| format!("not alternating at ({}, {}, {})", w(*a), w(*b), w(*c)))
        .chain(
            r.not_closed
                .iter()
                .map(|[a, b, c, d]| format!("coboundary nonzero at ({}, {}, {}, {})", w(*a), w(*b), w(*c), w(*d))),
        );
    Ok(Report::new(r.is_valid())
        .count("words", words.len())
        .count("triples", r.triples)
        .count("quadruples", r.quadruples)
        .count("not_alternating", r.not_alternating.len())
        .count("not_closed", r.not_closed.len())
        .witnesses(witnesses))
}

fn prism_check(j: OrbitJob) -> Result<Report> {
    let xi = job::parse_point(&j.xi)?;
    let eta = match &j.eta {
        Some(p) => job::parse_point(p)?,
        None => return Err(Error::Parse("prism-check: missing field `eta`".into())),
    };
    let (words, elements) = orbit_elements(&j)?;
    let r = basepoint_change_check(&Orientation, &xi, &eta, &elements);
    let w = |i: usize| words[i].to_string();
    Ok(Report::new(r.is_valid())
        .count("words", words.len())
        .count("triples", r.checked)
        .count("violations", r.violations.len())
        .witnesses(
            r.violations
                .iter()
                .map(|[a, b, c]| format!("basepoint change fails at ({}, {}, {})", w(*a), w(*b), w(*c))),
        ))
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum Quasimorphism {
    Zero,
    ExponentSum(String),
    Brooks(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DefectJob {
    function: Quasimorphism,
    max_len: usize,
    expect: Option<Scalar>,
}

/// Longest words accepted by `defect`; pairs grow like `9^L`.
const MAX_DEFECT_WORD_LENGTH: usize = 6;

fn defect(j: DefectJob) -> Result<Report> {
    if j.max_len > MAX_DEFECT_WORD_LENGTH {
        return Err(Error::Size {
            what: "word length",
            n: j.max_len,
            min: 0,
            max: MAX_DEFECT_WORD_LENGTH,
        });
    }
    let rat = |v: i64| Rational::from_integer(v.into());
    let r = match &j.function {
        Quasimorphism::Zero => quasimorphism_defect(|_| Rational::zero(), j.max_len),
        Quasimorphism::ExponentSum(g) => {
            let letter = match g.as_str() {
                "g" => Letter::G,
                "h" => Letter::H,
                other => return Err(Error::Parse(format!("exponent_sum takes \"g\" or \"h\", not {other:?}"))),
            };
            quasimorphism_defect(|w| rat(w.exponent_sum(letter)), j.max_len)
        }
        Quasimorphism::Brooks(w) => {
            let w: GroupWord = w.parse()?;
            if w.is_empty() {
                return Err(Error::Parse("brooks needs a nonempty word".into()));
            }
            quasimorphism_defect(|x| rat(brooks_counting(&w, x)), j.max_len)
        }
    };
    let pass = match &j.expect {
        None => true,
        Some(e) => e.to_rational()? == r.defect,
    };
    Ok(Report::new(pass)
        .count("pairs", r.pairs)
        .witnesses(r.witness.iter().map(|(a, b)| format!("({a}, {b})")))
        .result(json!({ "defect": s(&r.defect) })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaExpect {
    four_point: Option<Scalar>,
    slim: Option<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaJob {
    graph: Source<GraphJson>,
    #[serde(default = "yes")]
    slim: bool,
    expect: Option<DeltaExpect>,
}

fn yes() -> bool {
    true
}

fn delta(ctx: &Ctx, j: DeltaJob) -> Result<Report> {
    let g = job::graph(ctx, &j.graph)?;
    let fp = four_point_delta(&g);
    let mut pass = true;
    let mut result = json!({
        "four_point": s(&fp.delta),
        "four_point_witness": fp.witness,
    });
    let slim = if j.slim && g.n() <= SLIM_MAX_VERTICES {
        Some(slim_triangle_delta(&g)?)
    } else {
        None
    };
    let mut report = Report::new(true).count("vertices", g.n()).count("edges", g.edge_count());
    if let Some(sd) = &slim {
        result["slim"] = s(sd.delta);
        result["slim_witness"] = json!(sd.witness);
        report = report.count("capped_pairs", sd.capped_pairs);
        // a capped enumeration only gives a lower bound
        pass &= sd.capped_pairs == 0;
    }
    if let Some(e) = &j.expect {
        if let Some(v) = &e.four_point {
            pass &= v.to_rational()? == fp.delta;
        }
        if let Some(v) = e.slim {
            pass &= slim.as_ref().is_some_and(|sd| sd.delta == v);
        }
    }
    report.pass = pass;
    Ok(report.result(result))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BusemannJob {
    graph: Source<GraphJson>,
    target: usize,
    starts: Option<Vec<usize>>,
    samples: Option<Vec<usize>>,
    #[serde(default = "default_cap")]
    cap: usize,
    x: Option<usize>,
    #[serde(default)]
    tol: i64,
}

fn default_cap() -> usize {
    100
}

fn family(g: &FiniteGraphSpace, j: &BusemannJob) -> Result<RayFamily> {
    let all: Vec<usize> = (0..g.n()).collect();
    RayFamily::toward(g, j.starts.as_deref().unwrap_or(&all), j.target, j.cap)
}

fn worst<const K: usize>(w: &Option<Worst<K>>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({ "value": s(w.value), "witness": w.witness.to_vec() }),
    }
}

fn busemann(ctx: &Ctx, j: BusemannJob) -> Result<Report> {
    if j.x.is_some() {
        return Err(Error::Parse("busemann: unknown field `x`".into()));
    }
    let g = job::graph(ctx, &j.graph)?;
    let fam = family(&g, &j)?;
    let all: Vec<usize> = (0..g.n()).collect();
    let samples = j.samples.as_deref().unwrap_or(&all);
    for &y in samples {
        g.check_vertex(y)?;
    }
    let r = busemann_inequality_report(&g, &fam, samples)?;
    let pass = !r.is_empty() && r.bound_violations == 0 && r.lipschitz_violations == 0;
    let mut witnesses = Vec::new();
    if r.is_empty() {
        witnesses.push("every estimate was excluded as not stabilized".to_string());
    }
    Ok(Report::new(pass)
        .count("rays", fam.rays.len())
        .count("used", r.used)
        .count("excluded", r.excluded)
        .count("bound_violations", r.bound_violations)
        .count("lipschitz_checked", r.lipschitz_checked)
        .count("lipschitz_violations", r.lipschitz_violations)
        .witnesses(witnesses)
        .result(json!({
            "bound": worst(&r.bound),
            "cocycle": worst(&r.cocycle),
            "along_ray": worst(&r.along_ray),
        })))
}

fn horosphere(ctx: &Ctx, j: BusemannJob) -> Result<Report> {
    let x = j
        .x
        .ok_or_else(|| Error::Parse("horosphere: missing field `x`".into()))?;
    let g = job::graph(ctx, &j.graph)?;
    let fam = family(&g, &j)?;
    let points = horosphere_points(&g, &fam, x, j.tol)?;
    Ok(Report::new(true)
        .count("rays", fam.rays.len())
        .count("points", points.len())
        .result(json!({ "x": x, "tol": s(j.tol), "points": points })))
}
