//! The four-point identity 4r² + l₅² + l₆² = l₁² + l₂² + l₃² + l₄² and the
//! midpoint relations it is assembled from.
//!
//! Labels follow one convention throughout. A pairing picks a 4-cycle
//! a→b→c→d→a on the four points; then
//!
//! ```text
//! l1 = ab  l2 = bc  l3 = cd  l4 = da      (cycle edges)
//! l5 = ac  l6 = bd                        (the nonadjacent pair)
//! ```
//!
//! and `L_k` is the midpoint of segment `l_k`. The bimedian lengths are
//! p = |L₁L₃|, q = |L₂L₄|, r = |L₅L₆|. Nothing assumes convexity or planarity:
//! concave, self-intersecting and spatial quadruples all use the same code.

use serde::Serialize;

use crate::error::{usage, Result};
use crate::geometry::{mid, sq_dist, Configuration, Point};
use crate::report::Verdict;
use crate::scalar::{Mode, Scalar};

/// One of the three ways to split the six segments of K₄ into a 4-cycle
/// and a nonadjacent pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Pairing(u8);

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing(0), Pairing(1), Pairing(2)];

    pub fn new(index: u8) -> Result<Self> {
        if index > 2 {
            return Err(usage(format!("pairing must be 0, 1 or 2, got {index}")));
        }
        Ok(Pairing(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    /// Point indices in 4-cycle order (a, b, c, d).
    ///
    /// Pairing 0 takes the points in the given order, so the nonadjacent
    /// pair is {0,2},{1,3}; pairing 1 leaves {0,3},{1,2}; pairing 2 leaves
    /// {0,1},{2,3}.
    pub fn cycle_order(self) -> [usize; 4] {
        match self.0 {
            0 => [0, 1, 2, 3],
            1 => [0, 1, 3, 2],
            _ => [0, 2, 1, 3],
        }
    }
}

/// Four points plus the choice of nonadjacent pair.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadLabeling<S> {
    points: [Point<S>; 4],
    pairing: Pairing,
}

impl<S: Scalar> QuadLabeling<S> {
    pub fn new(points: [Point<S>; 4], pairing: Pairing) -> Result<Self> {
        let dim = points[0].dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(usage("quadrilateral points must share one dimension"));
        }
        Ok(Self { points, pairing })
    }

    pub fn from_configuration(c: &Configuration<S>, pairing: Pairing) -> Result<Self> {
        let pts: [Point<S>; 4] = c
            .points()
            .to_vec()
            .try_into()
            .map_err(|v: Vec<Point<S>>| usage(format!("expected 4 points, got {}", v.len())))?;
        Self::new(pts, pairing)
    }

    pub fn points(&self) -> &[Point<S>; 4] {
        &self.points
    }

    pub fn pairing(&self) -> Pairing {
        self.pairing
    }

    /// Same points, different pairing.
    pub fn with_pairing(&self, pairing: Pairing) -> Self {
        Self {
            points: self.points.clone(),
            pairing,
        }
    }

    fn abcd(&self) -> [&Point<S>; 4] {
        self.pairing.cycle_order().map(|i| &self.points[i])
    }

    /// Midpoints L₁ … L₆ (index 0 holds L₁).
    fn midpoints(&self) -> [Point<S>; 6] {
        let [a, b, c, d] = self.abcd();
        [mid(a, b), mid(b, c), mid(c, d), mid(d, a), mid(a, c), mid(b, d)]
    }

    /// l₁² … l₆².
    fn lengths_sq(&self) -> [S; 6] {
        let [a, b, c, d] = self.abcd();
        [
            sq_dist(a, b),
            sq_dist(b, c),
            sq_dist(c, d),
            sq_dist(d, a),
            sq_dist(a, c),
            sq_dist(b, d),
        ]
    }
}

/// Every quantity entering the identity for one labeling.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityTerms<S> {
    /// l₁² … l₆².
    pub lengths_sq: [S; 6],
    pub p_sq: S,
    pub q_sq: S,
    pub r_sq: S,
    /// 4r² + l₅² + l₆².
    pub lhs: S,
    /// l₁² + l₂² + l₃² + l₄².
    pub rhs: S,
    pub residual: S,
}

impl<S: Scalar> IdentityTerms<S> {
    pub fn four_r_sq(&self) -> S {
        self.r_sq.clone() * S::from_i64(4)
    }

    /// `|lhs − rhs| / (1 + |lhs| + |rhs|)`.
    pub fn relative_residual(&self) -> f64 {
        let (l, r) = (self.lhs.to_f64(), self.rhs.to_f64());
        self.residual.to_f64().abs() / (1.0 + l.abs() + r.abs())
    }
}

pub fn identity_terms<S: Scalar>(q: &QuadLabeling<S>) -> IdentityTerms<S> {
    let l = q.lengths_sq();
    let m = q.midpoints();
    let p_sq = sq_dist(&m[0], &m[2]);
    let q_sq = sq_dist(&m[1], &m[3]);
    let r_sq = sq_dist(&m[4], &m[5]);
    let lhs = r_sq.clone() * S::from_i64(4) + l[4].clone() + l[5].clone();
    let rhs = l[0].clone() + l[1].clone() + l[2].clone() + l[3].clone();
    let residual = lhs.clone() - rhs.clone();
    IdentityTerms {
        lengths_sq: l,
        p_sq,
        q_sq,
        r_sq,
        lhs,
        rhs,
        residual,
    }
}

/// Parallelogram-rule residuals for the three midpoint parallelograms:
///
/// ```text
/// ½(l5² + l6²) − (p² + q²)
/// ½(l1² + l3²) − (q² + r²)
/// ½(l2² + l4²) − (p² + r²)
/// ```
pub fn midpoint_parallelogram_relations<S: Scalar>(q: &QuadLabeling<S>) -> [S; 3] {
    let t = identity_terms(q);
    let l = &t.lengths_sq;
    [
        (l[4].clone() + l[5].clone()).half() - (t.p_sq.clone() + t.q_sq.clone()),
        (l[0].clone() + l[2].clone()).half() - (t.q_sq.clone() + t.r_sq.clone()),
        (l[1].clone() + l[3].clone()).half() - (t.p_sq + t.r_sq),
    ]
}

/// Residuals of the midsegment relations `4|LᵢLⱼ|² − l_k²`.
#[derive(Clone, Debug, PartialEq)]
pub struct MidsegmentResiduals<S> {
    /// Using L₂L₅, L₁L₅, L₂L₆, L₁L₆, L₁L₂, L₁L₄ against l₁ … l₆.
    pub primary: [S; 6],
    /// Using the mirrored segments L₄L₆, L₃L₆, L₄L₅, L₃L₅, L₃L₄, L₂L₃.
    pub mirrored: [S; 6],
}

impl<S: Scalar> MidsegmentResiduals<S> {
    pub fn iter(&self) -> impl Iterator<Item = &S> {
        self.primary.iter().chain(&self.mirrored)
    }
}

pub fn midsegment_relations<S: Scalar>(q: &QuadLabeling<S>) -> MidsegmentResiduals<S> {
    let l = q.lengths_sq();
    let m = q.midpoints();
    let four = S::from_i64(4);
    let rel = |i: usize, j: usize, k: usize| sq_dist(&m[i], &m[j]) * four.clone() - l[k].clone();
    // (i, j) are zero-based midpoint indices, k the zero-based segment index.
    MidsegmentResiduals {
        primary: [
            rel(1, 4, 0),
            rel(0, 4, 1),
            rel(1, 5, 2),
            rel(0, 5, 3),
            rel(0, 1, 4),
            rel(0, 3, 5),
        ],
        mirrored: [
            rel(3, 5, 0),
            rel(2, 5, 1),
            rel(3, 4, 2),
            rel(2, 4, 3),
            rel(2, 3, 4),
            rel(1, 2, 5),
        ],
    }
}

/// One row of the identity report.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub mode: Mode,
    pub pairing: u8,
    pub lengths_sq: [f64; 6],
    pub four_r_sq: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// Exact residual (`p/q`) in rational mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_exact: Option<String>,
    pub relative_residual: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
}

/// Checks the identity for one labeling.
///
/// Float mode holds iff `|residual| <= tolerance·(1 + |lhs| + |rhs|)`;
/// rational mode ignores the tolerance and demands an exact zero.
pub fn verify_identity<S: Scalar>(q: &QuadLabeling<S>, tolerance: f64) -> Result<IdentityReport> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(usage(format!("tolerance must be positive, got {tolerance}")));
    }
    let t = identity_terms(q);
    let holds = match t.residual.as_exact() {
        Some(exact) => num_traits::Zero::is_zero(exact),
        None => t.relative_residual() <= tolerance,
    };
    Ok(IdentityReport {
        mode: S::MODE,
        pairing: q.pairing.index(),
        lengths_sq: t.lengths_sq.clone().map(|v| v.to_f64()),
        four_r_sq: t.four_r_sq().to_f64(),
        lhs: t.lhs.to_f64(),
        rhs: t.rhs.to_f64(),
        residual: t.residual.to_f64(),
        residual_exact: t.residual.as_exact().map(|r| r.to_token()),
        relative_residual: t.relative_residual(),
        tolerance,
        verdict: Verdict::from_bool(holds),
    })
}
