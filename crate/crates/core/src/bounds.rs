//! Checkers for the K₄ bound ½·w(K₄) ≤ w(E) < w(K₄), the K₅ bound
//! (5−√5)/10·w(K₅) ≤ w(E) ≤ (5+√5)/10·w(K₅), the E/D duality on K₅, and a
//! seeded fuzz harness over both.
//!
//! Float verdicts compare the ratio w(E)/w(Kₙ) against the bound with an
//! absolute tolerance on the ratio. Rational verdicts are exact; the √5
//! bounds go through [`sign_plus_sqrt5`].

use std::cmp::Ordering;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cycles::{complement_cycle, cycle_weight, enumerate_cycles, total_weight, Cycle};
use crate::error::{usage, Result};
use crate::geometry::{random_config, Configuration};
use crate::report::Verdict;
use crate::rng::derive_seed;
use crate::scalar::{rational, sign_plus_sqrt5, Scalar};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// (5 − √5)/10.
pub fn k5_lower() -> f64 {
    (5.0 - 5f64.sqrt()) / 10.0
}

/// (5 + √5)/10.
pub fn k5_upper() -> f64 {
    (5.0 + 5f64.sqrt()) / 10.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// n = 4: ½ ≤ ratio < 1.
    K4,
    /// n = 5: (5−√5)/10 ≤ ratio ≤ (5+√5)/10.
    K5,
}

impl Theorem {
    pub fn for_n(n: usize) -> Result<Self> {
        match n {
            4 => Ok(Theorem::K4),
            5 => Ok(Theorem::K5),
            _ => Err(usage(format!("bounds are only known for n = 4 or 5, got {n}"))),
        }
    }

    pub fn n(self) -> usize {
        match self {
            Theorem::K4 => 4,
            Theorem::K5 => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactWeights {
    #[serde(rename = "wE")]
    pub w_e: String,
    #[serde(rename = "wD")]
    pub w_d: String,
    #[serde(rename = "wK")]
    pub w_k: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub cycle: Cycle,
    #[serde(rename = "wE")]
    pub w_e: f64,
    #[serde(rename = "wD")]
    pub w_d: f64,
    #[serde(rename = "wK")]
    pub w_k: f64,
    /// w(E)/w(Kₙ); absent when w(Kₙ) = 0.
    pub ratio: Option<f64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactWeights>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trial: u64,
    pub cycle: Cycle,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BoundSummary {
    pub trials: u64,
    pub rows: u64,
    pub violations: u64,
    pub degenerate: u64,
    pub equalities: u64,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    pub min_witness: Option<Witness>,
    pub max_witness: Option<Witness>,
}

impl BoundSummary {
    fn from_rows(trial: u64, rows: &[BoundRow]) -> Self {
        let mut s = BoundSummary {
            trials: 1,
            ..Default::default()
        };
        for row in rows {
            s.rows += 1;
            match row.verdict {
                Verdict::Violated => s.violations += 1,
                Verdict::Degenerate => s.degenerate += 1,
                Verdict::HoldsWithEquality => s.equalities += 1,
                Verdict::Holds => {}
            }
            if let Some(r) = row.ratio {
                let witness = || Some(Witness { trial, cycle: row.cycle.clone() });
                if s.min_ratio.is_none_or(|m| r < m) {
                    s.min_ratio = Some(r);
                    s.min_witness = witness();
                }
                if s.max_ratio.is_none_or(|m| r > m) {
                    s.max_ratio = Some(r);
                    s.max_witness = witness();
                }
            }
        }
        s
    }

    /// Folds `other` into `self`; ties keep the earlier witness.
    fn merge(&mut self, other: BoundSummary) {
        self.trials += other.trials;
        self.rows += other.rows;
        self.violations += other.violations;
        self.degenerate += other.degenerate;
        self.equalities += other.equalities;
        if let Some(r) = other.min_ratio {
            if self.min_ratio.is_none_or(|m| r < m) {
                self.min_ratio = Some(r);
                self.min_witness = other.min_witness;
            }
        }
        if let Some(r) = other.max_ratio {
            if self.max_ratio.is_none_or(|m| r > m) {
                self.max_ratio = Some(r);
                self.max_witness = other.max_witness;
            }
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.violations > 0 {
            Verdict::Violated
        } else if self.degenerate > 0 {
            Verdict::Degenerate
        } else if self.equalities > 0 {
            Verdict::HoldsWithEquality
        } else {
            Verdict::Holds
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    /// Per-cycle rows; empty for fuzz runs, which only keep the summary.
    pub rows: Vec<BoundRow>,
    pub summary: BoundSummary,
    pub verdict: Verdict,
}

struct Weights<S> {
    w_e: S,
    w_d: S,
    w_k: S,
}

fn row<S: Scalar>(cycle: &Cycle, w: Weights<S>, verdict: Verdict) -> BoundRow {
    let w_k = w.w_k.to_f64();
    let ratio = if w.w_k.is_zero() {
        None
    } else {
        Some((w.w_e.clone() / w.w_k.clone()).to_f64())
    };
    BoundRow {
        cycle: cycle.clone(),
        w_e: w.w_e.to_f64(),
        w_d: w.w_d.to_f64(),
        w_k,
        ratio,
        verdict,
        exact: w.w_e.as_exact().map(|_| ExactWeights {
            w_e: w.w_e.to_token(),
            w_d: w.w_d.to_token(),
            w_k: w.w_k.to_token(),
        }),
    }
}

fn k4_verdict<S: Scalar>(w: &Weights<S>, tol: f64) -> Verdict {
    if w.w_k.is_zero() {
        return Verdict::Degenerate;
    }
    if let (Some(e), Some(d), Some(k)) = (w.w_e.as_exact(), w.w_d.as_exact(), w.w_k.as_exact()) {
        let left = (rational(2, 1) * e).cmp(k);
        return match (left, d.cmp(&rational(0, 1))) {
            (Ordering::Less, _) | (_, Ordering::Less) => Verdict::Violated,
            (_, Ordering::Equal) => Verdict::Degenerate,
            (Ordering::Equal, _) => Verdict::HoldsWithEquality,
            _ => Verdict::Holds,
        };
    }
    let (e, d, k) = (w.w_e.to_f64(), w.w_d.to_f64(), w.w_k.to_f64());
    let gap = e - 0.5 * k;
    if gap < -tol * k || d < -tol * k {
        Verdict::Violated
    } else if d <= tol * k {
        Verdict::Degenerate
    } else if gap.abs() <= tol * k {
        Verdict::HoldsWithEquality
    } else {
        Verdict::Holds
    }
}

fn k5_verdict<S: Scalar>(w: &Weights<S>, tol: f64) -> Verdict {
    if w.w_k.is_zero() {
        return Verdict::Degenerate;
    }
    let (lower, upper) = if let (Some(e), Some(k)) = (w.w_e.as_exact(), w.w_k.as_exact()) {
        let ten_e: BigRational = rational(10, 1) * e;
        let five_k: BigRational = rational(5, 1) * k;
        // 10w(E) − 5w(K) + √5·w(K) ≥ 0 and 5w(K) − 10w(E) + √5·w(K) ≥ 0
        (
            sign_plus_sqrt5(&(&ten_e - &five_k), k),
            sign_plus_sqrt5(&(&five_k - &ten_e), k),
        )
    } else {
        let r = w.w_e.to_f64() / w.w_k.to_f64();
        let side = |gap: f64| {
            if gap.abs() <= tol {
                Ordering::Equal
            } else if gap < 0.0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        };
        (side(r - k5_lower()), side(k5_upper() - r))
    };
    match (lower, upper) {
        (Ordering::Less, _) | (_, Ordering::Less) => Verdict::Violated,
        (Ordering::Equal, _) | (_, Ordering::Equal) => Verdict::HoldsWithEquality,
        _ => Verdict::Holds,
    }
}

fn check<S: Scalar>(c: &Configuration<S>, theorem: Theorem, tol: f64) -> Result<Vec<BoundRow>> {
    if c.points().len() != theorem.n() {
        return Err(usage(format!(
            "this check needs n = {}, got {}",
            theorem.n(),
            c.points().len()
        )));
    }
    if !(tol >= 0.0 && tol.is_finite()) {
        return Err(usage(format!("tolerance must be finite and >= 0, got {tol}")));
    }
    let w_k = total_weight(c);
    enumerate_cycles(theorem.n())?
        .iter()
        .map(|cy| {
            let w_e = cycle_weight(c, cy)?;
            let w = Weights {
                w_d: w_k.clone() - w_e.clone(),
                w_e,
                w_k: w_k.clone(),
            };
            let verdict = match theorem {
                Theorem::K4 => k4_verdict(&w, tol),
                Theorem::K5 => k5_verdict(&w, tol),
            };
            Ok(row(cy, w, verdict))
        })
        .collect()
}

fn report(theorem: Theorem, rows: Vec<BoundRow>) -> BoundReport {
    let summary = BoundSummary::from_rows(0, &rows);
    BoundReport {
        theorem,
        verdict: summary.verdict(),
        rows,
        summary,
    }
}

/// Checks all three Hamiltonian cycles of a 4-point configuration.
pub fn check_theorem1<S: Scalar>(c: &Configuration<S>, tolerance: f64) -> Result<BoundReport> {
    Ok(report(Theorem::K4, check(c, Theorem::K4, tolerance)?))
}

/// Checks all twelve Hamiltonian cycles of a 5-point configuration.
pub fn check_theorem2<S: Scalar>(c: &Configuration<S>, tolerance: f64) -> Result<BoundReport> {
    Ok(report(Theorem::K5, check(c, Theorem::K5, tolerance)?))
}

/// The matching bound check for 4 or 5 points.
pub fn check_bounds<S: Scalar>(c: &Configuration<S>, tolerance: f64) -> Result<BoundReport> {
    let theorem = Theorem::for_n(c.points().len())?;
    Ok(report(theorem, check(c, theorem, tolerance)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityRow {
    pub cycle: Cycle,
    pub complement: Cycle,
    pub ratio: f64,
    pub complement_ratio: f64,
    /// ratio(E) + ratio(D) − 1.
    pub sum_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sum_residual_exact: Option<String>,
    pub attains_lower: bool,
    pub complement_attains_upper: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualityReport {
    pub rows: Vec<DualityRow>,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// min over cycles + max over cycles − 1.
    pub extremes_residual: f64,
    pub verdict: Verdict,
}

/// ratio(E) + ratio(D) = 1 for every 5-cycle E with complement D, and E
/// attains the lower bound exactly when D attains the upper one.
pub fn duality_check<S: Scalar>(c: &Configuration<S>) -> Result<DualityReport> {
    if c.points().len() != 5 {
        return Err(usage(format!(
            "duality check needs n = 5, got {}",
            c.points().len()
        )));
    }
    let w_k = total_weight(c);
    let cycles = enumerate_cycles(5)?;
    if w_k.is_zero() {
        return Ok(DualityReport {
            rows: Vec::new(),
            min_ratio: f64::NAN,
            max_ratio: f64::NAN,
            extremes_residual: f64::NAN,
            verdict: Verdict::Degenerate,
        });
    }
    let weights = |cy: &Cycle| -> Result<Weights<S>> {
        let w_e = cycle_weight(c, cy)?;
        Ok(Weights {
            w_d: w_k.clone() - w_e.clone(),
            w_e,
            w_k: w_k.clone(),
        })
    };
    let mut ok = true;
    let mut rows = Vec::with_capacity(cycles.len());
    for cy in &cycles {
        let d = complement_cycle(cy)?;
        let (we, wd) = (weights(cy)?, weights(&d)?);
        let sum = (we.w_e.clone() + wd.w_e.clone()) / w_k.clone() - S::one();
        let sum_ok = match sum.as_exact() {
            Some(exact) => num_traits::Zero::is_zero(exact),
            None => sum.to_f64().abs() <= crate::scalar::VALUE_TOLERANCE,
        };
        let attains_lower = k5_lower_equality(&we);
        let complement_attains_upper = k5_upper_equality(&wd);
        ok &= sum_ok && attains_lower == complement_attains_upper;
        rows.push(DualityRow {
            cycle: cy.clone(),
            complement: d,
            ratio: (we.w_e.clone() / w_k.clone()).to_f64(),
            complement_ratio: (wd.w_e.clone() / w_k.clone()).to_f64(),
            sum_residual: sum.to_f64(),
            sum_residual_exact: sum.as_exact().map(|r| r.to_token()),
            attains_lower,
            complement_attains_upper,
        });
    }
    let min_ratio = rows.iter().map(|r| r.ratio).fold(f64::INFINITY, f64::min);
    let max_ratio = rows.iter().map(|r| r.ratio).fold(f64::NEG_INFINITY, f64::max);
    Ok(DualityReport {
        rows,
        min_ratio,
        max_ratio,
        extremes_residual: min_ratio + max_ratio - 1.0,
        verdict: Verdict::from_bool(ok),
    })
}

fn k5_lower_equality<S: Scalar>(w: &Weights<S>) -> bool {
    match (w.w_e.as_exact(), w.w_k.as_exact()) {
        (Some(e), Some(k)) => {
            sign_plus_sqrt5(&(rational(10, 1) * e - rational(5, 1) * k), k) == Ordering::Equal
        }
        _ => (w.w_e.to_f64() / w.w_k.to_f64() - k5_lower()).abs() <= DEFAULT_TOLERANCE,
    }
}

fn k5_upper_equality<S: Scalar>(w: &Weights<S>) -> bool {
    match (w.w_e.as_exact(), w.w_k.as_exact()) {
        (Some(e), Some(k)) => {
            sign_plus_sqrt5(&(rational(5, 1) * k - rational(10, 1) * e), k) == Ordering::Equal
        }
        _ => (k5_upper() - w.w_e.to_f64() / w.w_k.to_f64()).abs() <= DEFAULT_TOLERANCE,
    }
}

/// Runs the n = 4 or n = 5 checker on `trials` random configurations.
///
/// Trial i uses `random_config(derive_seed(seed, i), n, dim)`. Trials run in
/// parallel; the summary is folded in trial order, so the result does not
/// depend on scheduling.
pub fn fuzz<S: Scalar>(
    seed: u64,
    trials: u64,
    n: usize,
    dim: usize,
    tolerance: f64,
) -> Result<BoundReport> {
    if trials == 0 {
        return Err(usage("fuzz needs at least one trial"));
    }
    let theorem = Theorem::for_n(n)?;
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|i| {
            let c = random_config::<S>(derive_seed(seed, i), n, dim)?;
            let rows = check(&c, theorem, tolerance)?;
            Ok(BoundSummary::from_rows(i, &rows))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut summary = BoundSummary::default();
    for s in per_trial {
        summary.merge(s);
    }
    Ok(BoundReport {
        theorem,
        rows: Vec::new(),
        verdict: summary.verdict(),
        summary,
    })
}
