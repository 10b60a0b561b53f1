//! Job files: one JSON object with a `cmd` field and command parameters.
//!
//! Inputs that name a table, cochain, measure or graph may be given inline,
//! as a path (relative to the job file), or by keyword: `"canonical"` and
//! `"random"` for tables, `"random"` for cochains and measures, and
//! `"cycle:8"`, `"path:5"`, `"star:4"`, `"complete:4"` for graphs.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crossratio::coarse::FiniteGraphSpace;
use crossratio::fixtures::{random_cocycle, random_configuration, random_crossratio, random_measure};
use crossratio::io::{
    cochain_from_json, config_from_json, graph_from_json, measure_from_json, parse_json, table_from_json, CochainJson,
    GraphJson, MeasureJson, PointRepr, TableJson,
};
use crossratio::rng::Lcg64;
use crossratio::{AltCochain2, BoundaryPoint, Configuration, CrossRatioTable, Error, RectMeasure, Result};

/// Context shared by every command: where relative paths start and the
/// random seed, if any.
pub struct Ctx {
    pub dir: PathBuf,
    pub seed: Option<u64>,
}

impl Ctx {
    pub fn rng(&self, what: &str) -> Result<Lcg64> {
        self.seed
            .map(Lcg64::new)
            .ok_or_else(|| Error::Parse(format!("{what} requested without a seed")))
    }

    fn load<T: DeserializeOwned>(&self, path: &str) -> Result<T> {
        let full = self.dir.join(path);
        let text = std::fs::read_to_string(&full).map_err(|e| Error::Parse(format!("{}: {e}", full.display())))?;
        parse_json(&text)
    }
}

/// Splits a job document into its command name, seed and parameters.
pub fn split(text: &str) -> Result<(String, Option<u64>, Value)> {
    let mut v: Value = parse_json(text)?;
    let obj = v
        .as_object_mut()
        .ok_or_else(|| Error::Parse("job must be a JSON object".into()))?;
    let cmd = match obj.remove("cmd") {
        Some(Value::String(s)) => s,
        _ => return Err(Error::Parse("job needs a string field \"cmd\"".into())),
    };
    let seed = match obj.remove("seed") {
        None => None,
        Some(s) => Some(serde_json::from_value(s).map_err(|e| Error::Parse(format!("seed: {e}")))?),
    };
    Ok((cmd, seed, v))
}

pub fn params<T: DeserializeOwned>(cmd: &str, v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{cmd}: {e}")))
}

pub fn parse_config(points: &[PointRepr]) -> Result<Configuration> {
    config_from_json(points)
}

pub fn parse_point(p: &PointRepr) -> Result<BoundaryPoint> {
    p.to_point()
}

/// The configuration named by the job, or a random one of size `n`.
pub fn config_or_random(ctx: &Ctx, config: &Option<Vec<PointRepr>>, n: Option<usize>, rng: &mut Option<Lcg64>) -> Result<Configuration> {
    match (config, n) {
        (Some(points), _) => parse_config(points),
        (None, Some(n)) => {
            let rng = rng.get_or_insert(ctx.rng("a random configuration")?);
            Ok(random_configuration(rng, n))
        }
        (None, None) => Err(Error::Parse("a \"config\" (or \"n\" with a seed) is required".into())),
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Named(String),
    Inline(T),
}

pub fn table(ctx: &Ctx, src: &Source<TableJson>, cfg: Option<&Configuration>, rng: &mut Option<Lcg64>) -> Result<CrossRatioTable> {
    let need_cfg = || cfg.ok_or_else(|| Error::Parse("this table needs a \"config\"".into()));
    match src {
        Source::Named(s) if s == "canonical" => Ok(CrossRatioTable::canonical(need_cfg()?)),
        Source::Named(s) if s == "random" => {
            let cfg = need_cfg()?;
            let rng = rng.get_or_insert(ctx.rng("a random table")?);
            Ok(random_crossratio(rng, cfg))
        }
        Source::Named(path) => table_from_json(&ctx.load(path)?),
        Source::Inline(json) => table_from_json(json),
    }
}

pub fn cochain(ctx: &Ctx, src: &Source<CochainJson>, n: Option<usize>, rng: &mut Option<Lcg64>) -> Result<AltCochain2> {
    match src {
        Source::Named(s) if s == "random" => {
            let n = n.ok_or_else(|| Error::Parse("a random cochain needs \"n\"".into()))?;
            let rng = rng.get_or_insert(ctx.rng("a random cochain")?);
            Ok(random_cocycle(rng, n))
        }
        Source::Named(path) => cochain_from_json(&ctx.load(path)?),
        Source::Inline(json) => cochain_from_json(json),
    }
}

pub fn measure(ctx: &Ctx, src: &Source<MeasureJson>, cfg: Option<&Configuration>, rng: &mut Option<Lcg64>) -> Result<RectMeasure> {
    match src {
        Source::Named(s) if s == "random" => {
            let cfg = cfg.ok_or_else(|| Error::Parse("a random measure needs a \"config\" or \"n\"".into()))?;
            let rng = rng.get_or_insert(ctx.rng("a random measure")?);
            Ok(random_measure(rng, cfg))
        }
        Source::Named(path) => measure_from_json(&ctx.load(path)?),
        Source::Inline(json) => measure_from_json(json),
    }
}

pub fn graph(ctx: &Ctx, src: &Source<GraphJson>) -> Result<FiniteGraphSpace> {
    match src {
        Source::Named(s) => {
            if let Some((family, size)) = s.split_once(':') {
                let k: usize = size
                    .parse()
                    .map_err(|_| Error::Parse(format!("graph size in {s:?}")))?;
                if k == 0 {
                    return Err(Error::Size {
                        what: "graph",
                        n: 0,
                        min: 1,
                        max: usize::MAX,
                    });
                }
                let g = match family {
                    "path" => FiniteGraphSpace::path(k),
                    "cycle" => FiniteGraphSpace::cycle(k),
                    "star" => FiniteGraphSpace::star(k),
                    "complete" => FiniteGraphSpace::complete(k),
                    _ => return Err(Error::Parse(format!("unknown graph family {family:?}"))),
                };
                return Ok(g);
            }
            graph_from_json(&ctx.load(s)?)
        }
        Source::Inline(json) => graph_from_json(json),
    }
}

pub fn job_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}
