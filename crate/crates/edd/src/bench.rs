//! Parameter sweeps: vary one generator parameter, run every algorithm on
//! the same instances, and emit tidy CSV.
//!
//! ```toml
//! param = "llimit"
//! values = [100, 115, 130, 145, 160]
//! reps = 10
//! seed = 1
//! algorithms = ["exact", "nste", "edd-a", "greedy", "random"]
//!
//! [fixed]
//! n = 40
//! delta = 1.5
//! rho = 0.25
//! gamma = 100
//! llimit = 110
//! ```

use std::time::Instant;

use edd_core::{generate, validate_solution, EddInstance, GeneratorConfig, Weight};
use rayon::prelude::*;
use serde::Deserialize;

use crate::algo::Algorithm;
use crate::error::{Error, Result};

pub const DEFAULT_EXACT_CAP: usize = 30;
pub const EXACT_CAP_ENV: &str = "EDD_EXACT_CAP";
pub const CSV_HEADER: &str = "param,value,rep,seed,algo,total_cost,c2e_cost,e2e_cost,runtime_s,feasible";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    N,
    R,
    Llimit,
    Rho,
    Delta,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::R => "r",
            Param::Llimit => "llimit",
            Param::Rho => "rho",
            Param::Delta => "delta",
        }
    }

    fn is_integer(self) -> bool {
        matches!(self, Param::N | Param::R | Param::Llimit)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixed {
    pub n: usize,
    pub delta: f64,
    /// Destination density; ignored when `r` is given.
    pub rho: Option<f64>,
    /// Absolute destination count, kept fixed as `n` varies.
    pub r: Option<usize>,
    #[serde(default = "default_wmin")]
    pub weight_min: Weight,
    #[serde(default = "default_wmax")]
    pub weight_max: Weight,
    pub gamma: Weight,
    pub llimit: Weight,
}

fn default_wmin() -> Weight {
    1
}

fn default_wmax() -> Weight {
    50
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub param: Param,
    pub values: Vec<f64>,
    pub fixed: Fixed,
    pub algorithms: Vec<Algorithm>,
    #[serde(default = "default_reps")]
    pub reps: u32,
    #[serde(default)]
    pub seed: u64,
    /// Largest `n` the exact solver is run on; `EDD_EXACT_CAP` overrides it.
    pub exact_max_nodes: Option<usize>,
}

fn default_reps() -> u32 {
    1
}

impl SweepSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: SweepSpec = toml::from_str(text).map_err(|e| Error::Spec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_toml(&crate::error::read(path.as_ref())?)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Spec(m.to_string()));
        if self.values.is_empty() {
            return bad("`values` is empty");
        }
        if self.values.windows(2).any(|w| w[0] > w[1]) {
            return bad("`values` must be sorted ascending");
        }
        if self.param.is_integer() && self.values.iter().any(|v| v.fract() != 0.0 || *v < 0.0) {
            return bad("this parameter takes non-negative integer values");
        }
        if self.reps == 0 {
            return bad("`reps` must be at least 1");
        }
        if self.algorithms.is_empty() {
            return bad("`algorithms` is empty");
        }
        if self.fixed.rho.is_none() && self.fixed.r.is_none() && self.param != Param::Rho && self.param != Param::R {
            return bad("give `fixed.rho` or `fixed.r`");
        }
        for &v in &self.values {
            self.config(v, 0).validate().map_err(|e| Error::Spec(format!("at {} = {v}: {e}", self.param.name())))?;
        }
        Ok(())
    }

    /// Exact-solver node cap: the environment, else the spec, else 30.
    pub fn exact_cap(&self) -> usize {
        std::env::var(EXACT_CAP_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .or(self.exact_max_nodes)
            .unwrap_or(DEFAULT_EXACT_CAP)
    }

    /// Generator settings for one sweep point and instance seed.
    pub fn config(&self, value: f64, seed: u64) -> GeneratorConfig {
        let f = &self.fixed;
        let mut cfg = GeneratorConfig {
            n: f.n,
            delta: f.delta,
            rho: 0.0,
            weight_min: f.weight_min,
            weight_max: f.weight_max,
            gamma: f.gamma,
            l_limit: f.llimit,
            seed,
        };
        let mut r = f.r;
        match self.param {
            Param::N => cfg.n = value as usize,
            Param::R => r = Some(value as usize),
            Param::Llimit => cfg.l_limit = value as Weight,
            Param::Rho => {
                r = None;
                cfg.rho = value;
            }
            Param::Delta => cfg.delta = value,
        }
        if self.param != Param::Rho {
            cfg.rho = match r {
                Some(r) if cfg.n > 0 => r as f64 / cfg.n as f64,
                Some(_) => 0.0,
                None => f.rho.unwrap_or(0.0),
            };
        }
        cfg
    }
}

/// Instance seed for a repetition: a SplitMix64 step over the base seed, so
/// repetition `k` sees the same seed at every sweep point.
pub fn instance_seed(base: u64, rep: u32) -> u64 {
    let mut z = base.wrapping_add((rep as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Costs {
    pub total: Weight,
    pub c2e: Weight,
    pub e2e: Weight,
    pub feasible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub point: usize,
    pub value: f64,
    pub rep: u32,
    pub seed: u64,
    pub algo: Algorithm,
    /// `None` when the algorithm was skipped (exact beyond its cap).
    pub costs: Option<Costs>,
    pub runtime_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub records: Vec<Record>,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let cap = spec.exact_cap();
    let jobs: Vec<(usize, u32)> =
        (0..spec.values.len()).flat_map(|p| (0..spec.reps).map(move |r| (p, r))).collect();
    let chunks: Vec<Result<Vec<Record>>> = jobs
        .par_iter()
        .map(|&(point, rep)| {
            let value = spec.values[point];
            let seed = instance_seed(spec.seed, rep);
            let instance = generate(&spec.config(value, seed))?;
            spec.algorithms
                .iter()
                .map(|&algo| run_one(&instance, algo, cap, point, value, rep, seed))
                .collect::<Result<Vec<_>>>()
        })
        .collect();
    let mut records = Vec::with_capacity(jobs.len() * spec.algorithms.len());
    for chunk in chunks {
        records.extend(chunk?);
    }
    Ok(SweepResult { spec: spec.clone(), records })
}

fn run_one(
    instance: &EddInstance,
    algo: Algorithm,
    cap: usize,
    point: usize,
    value: f64,
    rep: u32,
    seed: u64,
) -> Result<Record> {
    let mut record = Record { point, value, rep, seed, algo, costs: None, runtime_s: 0.0 };
    if algo == Algorithm::Exact && instance.node_count() > cap {
        return Ok(record);
    }
    let start = Instant::now();
    let sol = algo.run(instance, seed)?;
    record.runtime_s = start.elapsed().as_secs_f64();
    record.costs = Some(Costs {
        total: sol.total_cost,
        c2e: sol.cost_c2e,
        e2e: sol.cost_e2e,
        feasible: validate_solution(instance, &sol).is_feasible(),
    });
    Ok(record)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mean {
    pub point: usize,
    pub value: f64,
    pub algo: Algorithm,
    /// `(total, c2e, e2e)` averaged over the repetitions that ran.
    pub costs: Option<(f64, f64, f64)>,
    pub runtime_s: f64,
    pub all_feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
    Flat,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Increasing => "increasing",
            Direction::Decreasing => "decreasing",
            Direction::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trend {
    pub algo: Algorithm,
    /// Least-squares slopes of the mean costs against the swept value.
    pub total: f64,
    pub c2e: f64,
    pub e2e: f64,
}

impl Trend {
    pub fn direction(&self) -> Direction {
        const EPS: f64 = 1e-9;
        if self.total > EPS {
            Direction::Increasing
        } else if self.total < -EPS {
            Direction::Decreasing
        } else {
            Direction::Flat
        }
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    if points.len() < 2 {
        return 0.0;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

impl SweepResult {
    pub fn means(&self) -> Vec<Mean> {
        let mut out = Vec::new();
        for (point, &value) in self.spec.values.iter().enumerate() {
            for &algo in &self.spec.algorithms {
                let rows: Vec<&Record> =
                    self.records.iter().filter(|r| r.point == point && r.algo == algo).collect();
                let ran: Vec<Costs> = rows.iter().filter_map(|r| r.costs).collect();
                let k = ran.len() as f64;
                let avg = |f: fn(&Costs) -> Weight| ran.iter().map(|c| f(c) as f64).sum::<f64>() / k;
                out.push(Mean {
                    point,
                    value,
                    algo,
                    costs: (!ran.is_empty()).then(|| (avg(|c| c.total), avg(|c| c.c2e), avg(|c| c.e2e))),
                    runtime_s: rows.iter().map(|r| r.runtime_s).sum::<f64>() / rows.len().max(1) as f64,
                    all_feasible: ran.iter().all(|c| c.feasible),
                });
            }
        }
        out
    }

    pub fn mean(&self, algo: Algorithm, point: usize) -> Option<f64> {
        self.means().into_iter().find(|m| m.algo == algo && m.point == point)?.costs.map(|c| c.0)
    }

    /// One trend per algorithm that ran at every point.
    pub fn trends(&self) -> Vec<Trend> {
        let means = self.means();
        self.spec
            .algorithms
            .iter()
            .filter_map(|&algo| {
                let pts: Vec<(f64, (f64, f64, f64))> = means
                    .iter()
                    .filter(|m| m.algo == algo)
                    .map(|m| m.costs.map(|c| (m.value, c)))
                    .collect::<Option<_>>()?;
                let fit = |f: fn(&(f64, f64, f64)) -> f64| slope(&pts.iter().map(|(x, c)| (*x, f(c))).collect::<Vec<_>>());
                Some(Trend { algo, total: fit(|c| c.0), c2e: fit(|c| c.1), e2e: fit(|c| c.2) })
            })
            .collect()
    }

    pub fn trend(&self, algo: Algorithm) -> Option<Trend> {
        self.trends().into_iter().find(|t| t.algo == algo)
    }

    fn value_label(&self, value: f64) -> String {
        if self.spec.param.is_integer() {
            format!("{}", value as u64)
        } else {
            format!("{value}")
        }
    }

    /// Per-repetition rows, then `rep=mean` rows, then `rep=trend` rows whose
    /// cost columns hold slopes and whose `feasible` column names the
    /// direction.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(CSV_HEADER.split(','))?;
        let param = self.spec.param.name();
        for r in &self.records {
            let (total, c2e, e2e, feasible, runtime) = match r.costs {
                Some(c) => (
                    c.total.to_string(),
                    c.c2e.to_string(),
                    c.e2e.to_string(),
                    c.feasible.to_string(),
                    format!("{:.6}", r.runtime_s),
                ),
                None => (String::new(), String::new(), String::new(), "skipped".into(), String::new()),
            };
            w.write_record([
                param,
                &self.value_label(r.value),
                &r.rep.to_string(),
                &r.seed.to_string(),
                r.algo.name(),
                &total,
                &c2e,
                &e2e,
                &runtime,
                &feasible,
            ])?;
        }
        for m in self.means() {
            let value = self.value_label(m.value);
            let runtime = format!("{:.6}", m.runtime_s);
            match m.costs {
                Some((t, c, e)) => w.write_record([
                    param,
                    &value,
                    "mean",
                    "",
                    m.algo.name(),
                    &format!("{t:.3}"),
                    &format!("{c:.3}"),
                    &format!("{e:.3}"),
                    &runtime,
                    &m.all_feasible.to_string(),
                ])?,
                None => w.write_record([param, &value, "mean", "", m.algo.name(), "", "", "", "", "skipped"])?,
            }
        }
        for t in self.trends() {
            w.write_record([
                param,
                "all",
                "trend",
                "",
                t.algo.name(),
                &format!("{:.6}", t.total),
                &format!("{:.6}", t.c2e),
                &format!("{:.6}", t.e2e),
                "",
                t.direction().name(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
