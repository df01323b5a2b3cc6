//! The recurrence a[n+2] = (12/16)·a[n+1] − (1/16)·a[n], a[0] = 0, a[1] = 1,
//! its ratio properties, and the bound expression B(n) = 3 − a[n−1]/(4·a[n]).
//!
//! Everything is exact. Comparisons against (3 ± √5)/8 and (3 + √5)/2 are
//! decided by isolating the radical and comparing squares.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{usage, Result};
use crate::iteration::Trace;
use crate::report::Verdict;
use crate::scalar::{rational, sign_plus_sqrt5, Scalar};

/// lim a[n+1]/a[n] = (3 + √5)/8.
pub fn ratio_limit() -> f64 {
    (3.0 + 5f64.sqrt()) / 8.0
}

/// lim B(n) = (3 + √5)/2.
pub fn bound_limit() -> f64 {
    (3.0 + 5f64.sqrt()) / 2.0
}

/// Exact terms a[0] … a[N].
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceTable {
    terms: Vec<BigRational>,
}

impl SequenceTable {
    /// Largest stored index N.
    pub fn max_index(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[BigRational] {
        &self.terms
    }

    pub fn a(&self, n: usize) -> Result<&BigRational> {
        self.terms
            .get(n)
            .ok_or_else(|| usage(format!("a[{n}] beyond table (N = {})", self.max_index())))
    }

    /// a[n+1]/a[n] for n ≥ 1.
    pub fn ratio(&self, n: usize) -> Result<BigRational> {
        if n == 0 {
            return Err(usage("ratio a[1]/a[0] is undefined"));
        }
        Ok(self.a(n + 1)? / self.a(n)?)
    }

    /// b[n] = a[n−2]/16, the e₁ coefficient in e[n] = a[n−1]·e₂ − b[n]·e₁.
    pub fn b(&self, n: usize) -> Result<BigRational> {
        if n < 2 {
            return Err(usage(format!("b[{n}] needs n >= 2")));
        }
        Ok(self.a(n - 2)? / rational(16, 1))
    }

    /// B(n) = 3 − a[n−1]/(4·a[n]) for n ≥ 2.
    pub fn bound(&self, n: usize) -> Result<BigRational> {
        if n < 2 {
            return Err(usage(format!("B(n) needs n >= 2, got {n}")));
        }
        Ok(rational(3, 1) - self.a(n - 1)? / (rational(4, 1) * self.a(n)?))
    }
}

/// a[0] … a[N] by the recurrence.
pub fn a_seq(n_max: usize) -> Result<SequenceTable> {
    if n_max < 2 {
        return Err(usage(format!("a_seq needs N >= 2, got {n_max}")));
    }
    let c1 = rational(12, 16);
    let c0 = rational(1, 16);
    let mut terms = Vec::with_capacity(n_max + 1);
    terms.push(BigRational::zero());
    terms.push(BigRational::one());
    for n in 2..=n_max {
        let next = &c1 * &terms[n - 1] - &c0 * &terms[n - 2];
        terms.push(next);
    }
    Ok(SequenceTable { terms })
}

/// B(n) as an exact rational.
pub fn bound_expression(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(usage(format!("B(n) needs n >= 2, got {n}")));
    }
    a_seq(n)?.bound(n)
}

/// First index at which a property failed, if any.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    pub first_failure: Option<usize>,
}

impl PropertyCheck {
    fn scan(range: impl IntoIterator<Item = usize>, mut ok: impl FnMut(usize) -> bool) -> Self {
        let first_failure = range.into_iter().find(|&n| !ok(n));
        Self {
            holds: first_failure.is_none(),
            first_failure,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Lemma1Report {
    pub n_max: usize,
    /// a[n] > 0 and a[n+1] < a[n].
    pub positive_decreasing: PropertyCheck,
    /// a[n+1]/a[n] > (3 + √5)/8.
    pub ratio_above_limit: PropertyCheck,
    /// a[n+2]/a[n+1] ≤ a[n+1]/a[n].
    pub ratio_non_increasing: PropertyCheck,
    /// |a[N+1]/a[N] − (3 + √5)/8|.
    pub limit_gap: f64,
    pub verdict: Verdict,
}

/// Checks the positivity, monotonicity and ratio properties for 1 ≤ n ≤ N.
pub fn lemma1_checks(n_max: usize) -> Result<Lemma1Report> {
    if n_max < 3 {
        return Err(usage(format!("lemma1_checks needs N >= 3, got {n_max}")));
    }
    let table = a_seq(n_max + 2)?;
    let a = table.terms();
    let zero = BigRational::zero();

    let positive_decreasing =
        PropertyCheck::scan(1..=n_max, |n| a[n] > zero && a[n + 1] < a[n]);

    // a[n+1]/a[n] > (3+√5)/8  ⟺  (8a[n+1] − 3a[n]) − √5·a[n] > 0 for a[n] > 0.
    let ratio_above_limit = PropertyCheck::scan(1..=n_max, |n| {
        a[n] > zero
            && sign_plus_sqrt5(&(rational(8, 1) * &a[n + 1] - rational(3, 1) * &a[n]), &-&a[n])
                == Ordering::Greater
    });

    // Cross-multiplied, all terms positive: a[n+2]·a[n] ≤ a[n+1]².
    let ratio_non_increasing =
        PropertyCheck::scan(1..=n_max, |n| &a[n + 2] * &a[n] <= &a[n + 1] * &a[n + 1]);

    let limit_gap = (table.ratio(n_max)?.to_f64() - ratio_limit()).abs();
    let ok = positive_decreasing.holds && ratio_above_limit.holds && ratio_non_increasing.holds;
    Ok(Lemma1Report {
        n_max,
        positive_decreasing,
        ratio_above_limit,
        ratio_non_increasing,
        limit_gap,
        verdict: Verdict::from_bool(ok),
    })
}

/// Whether B(n) > (3 + √5)/2, decided exactly.
pub fn bound_exceeds_limit(b: &BigRational) -> bool {
    // B − (3+√5)/2 > 0  ⟺  (2B − 3) − √5 > 0
    sign_plus_sqrt5(&(rational(2, 1) * b - rational(3, 1)), &-BigRational::one())
        == Ordering::Greater
}

/// e[n] − (a[n−1]·e₂ − (a[n−2]/16)·e₁) on a trace, 2 ≤ n ≤ levels.
pub fn lemma2_residual<S: Scalar>(t: &Trace<S>, n: usize) -> Result<S> {
    if n < 2 || n > t.levels() {
        return Err(usage(format!(
            "lemma2_residual needs 2 <= n <= {}, got {n}",
            t.levels()
        )));
    }
    let table = a_seq(n.max(2))?;
    let a = S::from_rational(table.a(n - 1)?);
    let b = S::from_rational(&table.b(n)?);
    let predicted = a * t.e(2)?.clone() - b * t.e(1)?.clone();
    Ok(t.e(n)?.clone() - predicted)
}

/// Relative version of [`lemma2_residual`], scaled by its largest term.
pub fn lemma2_relative_residual<S: Scalar>(t: &Trace<S>, n: usize) -> Result<f64> {
    let r = lemma2_residual(t, n)?.to_f64();
    let table = a_seq(n.max(2))?;
    let terms = [
        t.e(n)?.to_f64(),
        table.a(n - 1)?.to_f64() * t.e(2)?.to_f64(),
        table.b(n)?.to_f64() * t.e(1)?.to_f64(),
    ];
    let scale = terms.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(if scale == 0.0 { r.abs() } else { r.abs() / scale })
}

/// One row of the `sequence` table.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceRow {
    pub n: usize,
    pub a_n: String,
    /// a[n+1]/a[n] as a decimal; absent for n = 0.
    pub ratio: Option<f64>,
    pub bound_exact: Option<String>,
    pub bound: Option<f64>,
}

pub fn sequence_rows(n_max: usize) -> Result<Vec<SequenceRow>> {
    let table = a_seq(n_max.max(2) + 1)?;
    (0..=n_max)
        .map(|n| {
            let bound = (n >= 2).then(|| table.bound(n)).transpose()?;
            Ok(SequenceRow {
                n,
                a_n: table.a(n)?.to_token(),
                ratio: (n >= 1).then(|| table.ratio(n).map(|r| r.to_f64())).transpose()?,
                bound: bound.as_ref().map(|b| b.to_f64()),
                bound_exact: bound.as_ref().map(|b| b.to_token()),
            })
        })
        .collect()
}
