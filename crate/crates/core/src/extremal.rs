//! Multi-start coordinate pattern search for extreme values of
//! w(E)/w(Kₙ) with E fixed to the identity cycle.
//!
//! Relabeling the points reaches every other cycle, so searching over
//! configurations alone covers all of them. Each restart:
//!
//! 1. draws `random_config(derive_seed(seed, restart), n, dim)` and normalizes it;
//! 2. sweeps the coordinates, trying `+h` then `-h` on each, renormalizing
//!    the candidate and accepting it on strict improvement;
//! 3. halves `h` (starting at 0.25) after a sweep with no improvement, and
//!    stops once `h < 1e-9` or the sweep budget is spent.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{k5_lower, k5_upper};
use crate::cycles::{cycle_weight, enumerate_cycles, total_weight, Cycle};
use crate::error::{degenerate, usage, Error, Result};
use crate::geometry::{normalize, random_config, Configuration, Point};
use crate::rng::derive_seed;

pub const INITIAL_STEP: f64 = 0.25;
pub const STEP_FLOOR: f64 = 1e-9;
pub const MIN_N: usize = 4;
pub const MAX_N: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Maximize,
    Minimize,
}

impl Objective {
    fn improves(self, candidate: f64, current: f64) -> bool {
        match self {
            Objective::Maximize => candidate > current,
            Objective::Minimize => candidate < current,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Maximize => "maximize",
            Objective::Minimize => "minimize",
        })
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" | "maximize" => Ok(Objective::Maximize),
            "min" | "minimize" => Ok(Objective::Minimize),
            other => Err(usage(format!("unknown objective `{other}` (expected max|min)"))),
        }
    }
}

/// w(E)/w(Kₙ).
pub fn ratio(c: &Configuration<f64>, cy: &Cycle) -> Result<f64> {
    let total = total_weight(c);
    if total.is_nan() || total <= 0.0 {
        return Err(degenerate("ratio: total weight is zero"));
    }
    Ok(cycle_weight(c, cy)? / total)
}

/// The proven bound in the direction of `objective`, where one exists.
pub fn theoretical_bound(n: usize, objective: Objective) -> Option<f64> {
    match (n, objective) {
        (4, Objective::Maximize) => Some(1.0),
        (4, Objective::Minimize) => Some(0.5),
        (5, Objective::Maximize) => Some(k5_upper()),
        (5, Objective::Minimize) => Some(k5_lower()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClimbOutcome {
    pub config: Configuration<f64>,
    pub value: f64,
    pub sweeps: usize,
    /// Objective after each accepted move, starting with the initial value.
    pub accepted: Vec<f64>,
}

fn flatten(c: &Configuration<f64>) -> Vec<f64> {
    c.points().iter().flat_map(|p| p.coords().iter().copied()).collect()
}

fn rebuild(coords: &[f64], dim: usize) -> Result<Configuration<f64>> {
    let points = coords
        .chunks(dim)
        .map(|ch| Point::new(ch.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(points)
}

/// One hill climb from `start` with E = identity cycle.
pub fn pattern_search(
    start: &Configuration<f64>,
    objective: Objective,
    budget: usize,
) -> Result<ClimbOutcome> {
    let cycle = Cycle::identity(start.len())?;
    let dim = start.dim();
    let mut current = normalize(start)?;
    let mut value = ratio(&current, &cycle)?;
    let mut accepted = vec![value];
    let mut h = INITIAL_STEP;
    let mut sweeps = 0;
    while h >= STEP_FLOOR && sweeps < budget {
        let mut improved = false;
        let mut coords = flatten(&current);
        for j in 0..coords.len() {
            for delta in [h, -h] {
                let mut trial = coords.clone();
                trial[j] += delta;
                // A candidate that collapses to a point cannot be normalized; skip it.
                let Ok(candidate) = rebuild(&trial, dim).and_then(|c| normalize(&c)) else {
                    continue;
                };
                let v = ratio(&candidate, &cycle)?;
                if objective.improves(v, value) {
                    coords = flatten(&candidate);
                    current = candidate;
                    value = v;
                    accepted.push(v);
                    improved = true;
                    break;
                }
            }
        }
        sweeps += 1;
        if !improved {
            h *= 0.5;
        }
    }
    Ok(ClimbOutcome {
        config: current,
        value,
        sweeps,
        accepted,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub n: usize,
    pub dim: usize,
    pub objective_kind: Objective,
    pub value: f64,
    /// The proven extreme for n = 4, 5.
    pub bound: Option<f64>,
    pub witness_points: Vec<Vec<f64>>,
    pub cycle: Cycle,
    pub restarts: usize,
    /// Sweeps used by the winning restart.
    pub sweeps: usize,
    /// Index of the winning restart.
    pub best_restart: usize,
}

impl OptimizationResult {
    pub fn witness(&self) -> Result<Configuration<f64>> {
        Configuration::from_rows(self.witness_points.clone())
    }
}

fn validate(n: usize, dim: usize, restarts: usize, budget: usize) -> Result<()> {
    if !(MIN_N..=MAX_N).contains(&n) {
        return Err(usage(format!("optimize supports {MIN_N} <= n <= {MAX_N}, got {n}")));
    }
    if !(2..=3).contains(&dim) {
        return Err(usage(format!("dim must be 2 or 3, got {dim}")));
    }
    if restarts == 0 || budget == 0 {
        return Err(usage("restarts and budget must be at least 1"));
    }
    Ok(())
}

/// Best of `restarts` independent climbs; ties go to the lowest restart index.
pub fn optimize(
    seed: u64,
    n: usize,
    dim: usize,
    objective: Objective,
    restarts: usize,
    budget: usize,
) -> Result<OptimizationResult> {
    validate(n, dim, restarts, budget)?;
    let outcomes = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let start = random_config::<f64>(derive_seed(seed, r as u64), n, dim)?;
            pattern_search(&start, objective, budget)
        })
        .collect::<Result<Vec<_>>>()?;
    let (best_restart, best) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|best, next| {
            if objective.improves(next.1.value, best.1.value) {
                next
            } else {
                best
            }
        })
        .expect("restarts >= 1");
    Ok(OptimizationResult {
        n,
        dim,
        objective_kind: objective,
        value: best.value,
        bound: theoretical_bound(n, objective),
        witness_points: best.config.points().iter().map(|p| p.coords().to_vec()).collect(),
        cycle: Cycle::identity(n)?,
        restarts,
        sweeps: best.sweeps,
        best_restart,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProvenBounds {
    pub lower: f64,
    pub upper: f64,
    /// Whether the upper bound is attained (it is not for n = 4).
    pub upper_attained: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub min_witness: Vec<Vec<f64>>,
    pub max_witness: Vec<Vec<f64>>,
    /// Over all cycles of the max witness, the heaviest one; should be the identity.
    pub max_witness_best_cycle: Cycle,
    /// Over all cycles of the min witness, the lightest one; should be the identity.
    pub min_witness_best_cycle: Cycle,
    pub proven: Option<ProvenBounds>,
    /// "proven" for n = 4, 5 and "conjecture" otherwise.
    pub status: &'static str,
}

fn proven_bounds(n: usize) -> Option<ProvenBounds> {
    match n {
        4 => Some(ProvenBounds {
            lower: 0.5,
            upper: 1.0,
            upper_attained: false,
        }),
        5 => Some(ProvenBounds {
            lower: k5_lower(),
            upper: k5_upper(),
            upper_attained: true,
        }),
        _ => None,
    }
}

/// The cycle of `c` that is extreme in the direction of `objective`.
fn extreme_cycle(c: &Configuration<f64>, objective: Objective) -> Result<Cycle> {
    let mut best: Option<(f64, Cycle)> = None;
    for cy in enumerate_cycles(c.len())? {
        let v = ratio(c, &cy)?;
        if best.as_ref().is_none_or(|(b, _)| objective.improves(v, *b)) {
            best = Some((v, cy));
        }
    }
    Ok(best.expect("at least one cycle").1)
}

/// Empirical min and max ratio for each n in `n_range`.
pub fn conjecture_table(
    seed: u64,
    n_range: std::ops::RangeInclusive<usize>,
    dim: usize,
    restarts: usize,
    budget: usize,
) -> Result<Vec<ConjectureRow>> {
    if n_range.is_empty() || *n_range.start() < MIN_N || *n_range.end() > MAX_N {
        return Err(usage(format!("n range must lie within {MIN_N}..={MAX_N}")));
    }
    n_range
        .map(|n| {
            let hi = optimize(seed, n, dim, Objective::Maximize, restarts, budget)?;
            let lo = optimize(seed, n, dim, Objective::Minimize, restarts, budget)?;
            let proven = proven_bounds(n);
            Ok(ConjectureRow {
                n,
                min: lo.value,
                max: hi.value,
                max_witness_best_cycle: extreme_cycle(&hi.witness()?, Objective::Maximize)?,
                min_witness_best_cycle: extreme_cycle(&lo.witness()?, Objective::Minimize)?,
                min_witness: lo.witness_points,
                max_witness: hi.witness_points,
                status: if proven.is_some() { "proven" } else { "conjecture" },
                proven,
            })
        })
        .collect()
}
