//! Midpoint iteration on five points.
//!
//! Starting from a K₅ configuration and a Hamiltonian cycle E, the points are
//! listed in the order of the complementary cycle D. One step replaces them
//! by the midpoints of consecutive D-segments; consecutive midpoints again
//! form the next D. At every level `d` is the D-weight and `e` the weight of
//! the other five segments. Three identities are tracked along the way:
//!
//! ```text
//! (A) 4·d[n+1] = e[n]
//! (B) d[n] + 4·e[n+1] = 3·e[n]
//! (C) e[n+2] = (12/16)·e[n+1] − (1/16)·e[n]
//! ```

use std::fmt::Write as _;

use serde::Serialize;

use crate::cycles::{complement_cycle, complement_weight, cycle_weight, total_weight, Cycle};
use crate::error::{degenerate, usage, Result};
use crate::euler::{identity_terms, IdentityTerms, Pairing, QuadLabeling};
use crate::geometry::{mid, sq_dist, Configuration, Point};
use crate::scalar::{relative_residual, Scalar};

pub const MAX_STEPS: usize = 200;

/// Five points in D-cycle order: point k and point k+1 (mod 5) span a D-segment.
#[derive(Clone, Debug, PartialEq)]
pub struct IterationState<S> {
    level: usize,
    points: Vec<Point<S>>,
    d: S,
    e: S,
}

impl<S: Scalar> IterationState<S> {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    /// Sum of squared D-segment lengths.
    pub fn d(&self) -> &S {
        &self.d
    }

    /// Sum of squared lengths of the remaining five segments.
    pub fn e(&self) -> &S {
        &self.e
    }

    fn from_points(level: usize, points: Vec<Point<S>>) -> Self {
        let (d, e) = split_weights(&points);
        Self { level, points, d, e }
    }
}

/// (D-weight, E-weight) for points in D-cycle order.
fn split_weights<S: Scalar>(points: &[Point<S>]) -> (S, S) {
    let mut d = S::zero();
    let mut e = S::zero();
    for k in 0..5 {
        d = d + sq_dist(&points[k], &points[(k + 1) % 5]);
        e = e + sq_dist(&points[k], &points[(k + 2) % 5]);
    }
    (d, e)
}

fn require_five<S: Scalar>(c: &Configuration<S>) -> Result<()> {
    if c.points().len() != 5 {
        return Err(usage(format!(
            "midpoint iteration needs exactly 5 points, got {}",
            c.points().len()
        )));
    }
    Ok(())
}

/// Level-1 state for the cycle `e_cycle` of `c`.
pub fn init_state<S: Scalar>(c: &Configuration<S>, e_cycle: &Cycle) -> Result<IterationState<S>> {
    require_five(c)?;
    if e_cycle.len() != 5 {
        return Err(usage("E-cycle must have 5 vertices"));
    }
    if total_weight(c).is_zero() {
        return Err(degenerate("all five points coincide"));
    }
    let d_cycle = complement_cycle(e_cycle)?;
    let points: Vec<Point<S>> = d_cycle.order().iter().map(|&i| c.point(i).clone()).collect();
    Ok(IterationState {
        level: 1,
        points,
        d: complement_weight(c, e_cycle)?,
        e: cycle_weight(c, e_cycle)?,
    })
}

pub fn step<S: Scalar>(s: &IterationState<S>) -> IterationState<S> {
    let p = &s.points;
    let points = (0..5).map(|k| mid(&p[k], &p[(k + 1) % 5])).collect();
    IterationState::from_points(s.level + 1, points)
}

/// States for levels 1 … steps+1 with residuals of (A), (B) and (C).
///
/// `residual_a[i]` and `residual_b[i]` belong to level i+1 and need level
/// i+2; `residual_c[i]` needs level i+3, so it is one entry shorter.
#[derive(Clone, Debug)]
pub struct Trace<S> {
    states: Vec<IterationState<S>>,
    residual_a: Vec<S>,
    residual_b: Vec<S>,
    residual_c: Vec<S>,
}

impl<S: Scalar> Trace<S> {
    pub fn states(&self) -> &[IterationState<S>] {
        &self.states
    }

    pub fn levels(&self) -> usize {
        self.states.len()
    }

    fn state(&self, level: usize) -> Result<&IterationState<S>> {
        level
            .checked_sub(1)
            .and_then(|i| self.states.get(i))
            .ok_or_else(|| usage(format!("level {level} not in trace 1..={}", self.levels())))
    }

    /// e at the 1-based level `n`.
    pub fn e(&self, n: usize) -> Result<&S> {
        self.state(n).map(|s| &s.e)
    }

    /// d at the 1-based level `n`.
    pub fn d(&self, n: usize) -> Result<&S> {
        self.state(n).map(|s| &s.d)
    }

    pub fn residual_a(&self) -> &[S] {
        &self.residual_a
    }

    pub fn residual_b(&self) -> &[S] {
        &self.residual_b
    }

    pub fn residual_c(&self) -> &[S] {
        &self.residual_c
    }

    pub fn rows(&self) -> Vec<TraceRow<S>> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| TraceRow {
                level: s.level,
                d: s.d.clone(),
                e: s.e.clone(),
                res_a: self.residual_a.get(i).cloned(),
                res_b: self.residual_b.get(i).cloned(),
                res_c: self.residual_c.get(i).cloned(),
            })
            .collect()
    }

    /// Largest residual of (A), (B), (C) relative to its own terms.
    pub fn max_relative_residual(&self) -> f64 {
        self.relative_residuals().fold(0.0, f64::max)
    }

    /// Each residual scaled by `1 + max |term|` of its identity.
    pub fn relative_residuals(&self) -> impl Iterator<Item = f64> + '_ {
        let e = |i: usize| self.states[i].e.to_f64();
        let d = |i: usize| self.states[i].d.to_f64();
        let a = self
            .residual_a
            .iter()
            .enumerate()
            .map(move |(i, r)| relative_residual(r.to_f64(), &[4.0 * d(i + 1), e(i)]));
        let b = self.residual_b.iter().enumerate().map(move |(i, r)| {
            relative_residual(r.to_f64(), &[d(i), 4.0 * e(i + 1), 3.0 * e(i)])
        });
        let c = self.residual_c.iter().enumerate().map(move |(i, r)| {
            relative_residual(r.to_f64(), &[e(i + 2), 0.75 * e(i + 1), e(i) / 16.0])
        });
        a.chain(b).chain(c)
    }

    /// True when every residual is exactly zero (rational) or within
    /// `tolerance` relative (float).
    pub fn identities_hold(&self, tolerance: f64) -> bool {
        let all = || self.residual_a.iter().chain(&self.residual_b).chain(&self.residual_c);
        if S::MODE == crate::Mode::Rational {
            all().all(|r| r.is_zero())
        } else {
            self.max_relative_residual() <= tolerance
        }
    }

    /// CSV with header `level,d,e,resA,resB,resC`; residuals that need
    /// levels beyond the trace are left empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,d,e,resA,resB,resC\n");
        let tok = |v: &Option<S>| v.as_ref().map(Scalar::to_token).unwrap_or_default();
        for row in self.rows() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                row.level,
                row.d.to_token(),
                row.e.to_token(),
                tok(&row.res_a),
                tok(&row.res_b),
                tok(&row.res_c)
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow<S> {
    pub level: usize,
    pub d: S,
    pub e: S,
    pub res_a: Option<S>,
    pub res_b: Option<S>,
    pub res_c: Option<S>,
}

/// Serializable view of a trace row.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRecord {
    pub level: usize,
    pub d: String,
    pub e: String,
    #[serde(rename = "resA")]
    pub res_a: Option<String>,
    #[serde(rename = "resB")]
    pub res_b: Option<String>,
    #[serde(rename = "resC")]
    pub res_c: Option<String>,
}

impl<S: Scalar> From<&TraceRow<S>> for TraceRecord {
    fn from(r: &TraceRow<S>) -> Self {
        TraceRecord {
            level: r.level,
            d: r.d.to_token(),
            e: r.e.to_token(),
            res_a: r.res_a.as_ref().map(Scalar::to_token),
            res_b: r.res_b.as_ref().map(Scalar::to_token),
            res_c: r.res_c.as_ref().map(Scalar::to_token),
        }
    }
}

pub fn trace<S: Scalar>(c: &Configuration<S>, e_cycle: &Cycle, steps: usize) -> Result<Trace<S>> {
    if !(1..=MAX_STEPS).contains(&steps) {
        return Err(usage(format!("steps must be in 1..={MAX_STEPS}, got {steps}")));
    }
    let mut states = Vec::with_capacity(steps + 1);
    states.push(init_state(c, e_cycle)?);
    for _ in 0..steps {
        let next = step(states.last().unwrap());
        states.push(next);
    }
    let four = S::from_i64(4);
    let three = S::from_i64(3);
    let twelve_16 = S::from_i64(12) / S::from_i64(16);
    let one_16 = S::from_i64(1) / S::from_i64(16);
    let residual_a = states
        .windows(2)
        .map(|w| four.clone() * w[1].d.clone() - w[0].e.clone())
        .collect();
    let residual_b = states
        .windows(2)
        .map(|w| w[0].d.clone() + four.clone() * w[1].e.clone() - three.clone() * w[0].e.clone())
        .collect();
    let residual_c = states
        .windows(3)
        .map(|w| {
            w[2].e.clone() - twelve_16.clone() * w[1].e.clone() + one_16.clone() * w[0].e.clone()
        })
        .collect();
    Ok(Trace {
        states,
        residual_a,
        residual_b,
        residual_c,
    })
}

/// The four-point identity on each cyclic 4-subset of the E-cycle
/// v₁…v₅: G(v₁v₂v₃v₄), G(v₂v₃v₄v₅), …, G(v₅v₁v₂v₃).
///
/// Each quadruple is labeled with its E-order as the 4-cycle, so
/// l₁, l₂, l₃ are E-segments, l₄ (closing v_{i+3}v_i) is a D-segment, and
/// the nonadjacent pair l₅, l₆ are the two D-segments inside the quadruple.
/// Their midpoints are level-2 points, which is how e₂ enters.
pub fn five_tetrahedra_decomposition<S: Scalar>(
    c: &Configuration<S>,
    e_cycle: &Cycle,
) -> Result<Vec<IdentityTerms<S>>> {
    require_five(c)?;
    if e_cycle.len() != 5 {
        return Err(usage("E-cycle must have 5 vertices"));
    }
    let v = e_cycle.order();
    (0..5)
        .map(|i| {
            let quad: [Point<S>; 4] =
                std::array::from_fn(|k| c.point(v[(i + k) % 5]).clone());
            QuadLabeling::new(quad, Pairing::ALL[0]).map(|q| identity_terms(&q))
        })
        .collect()
}

/// Weights recovered by regrouping the five identities.
#[derive(Clone, Debug, PartialEq)]
pub struct Regrouped<S> {
    /// Σ l₄²: every D-segment closes exactly one quadruple.
    pub d1: S,
    /// ½ Σ (l₅² + l₆²): every D-segment is a nonadjacent-pair member twice.
    pub d1_from_pairs: S,
    /// ⅓ Σ (l₁² + l₂² + l₃²): every E-segment appears in three quadruples.
    pub e1: S,
    /// Σ r²: the five r are exactly the level-2 E-segments.
    pub e2: S,
    /// d₁ + 4e₂ − 3e₁.
    pub residual: S,
}

pub fn regroup<S: Scalar>(terms: &[IdentityTerms<S>]) -> Result<Regrouped<S>> {
    if terms.len() != 5 {
        return Err(usage(format!("expected 5 identity terms, got {}", terms.len())));
    }
    let sum = |f: &dyn Fn(&IdentityTerms<S>) -> S| terms.iter().fold(S::zero(), |a, t| a + f(t));
    let d1 = sum(&|t| t.lengths_sq[3].clone());
    let d1_from_pairs = sum(&|t| t.lengths_sq[4].clone() + t.lengths_sq[5].clone()).half();
    let e1 = sum(&|t| t.lengths_sq[0].clone() + t.lengths_sq[1].clone() + t.lengths_sq[2].clone())
        / S::from_i64(3);
    let e2 = sum(&|t| t.r_sq.clone());
    let residual = d1.clone() + S::from_i64(4) * e2.clone() - S::from_i64(3) * e1.clone();
    Ok(Regrouped {
        d1,
        d1_from_pairs,
        e1,
        e2,
        residual,
    })
}
