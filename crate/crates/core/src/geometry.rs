//! Points, configurations and the elementary metric operations on them.

use std::f64::consts::PI;

use crate::cycles::total_weight;
use crate::error::{degenerate, usage, Result};
use crate::rng::{SplitMix64, UNIT_BITS};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Point<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Result<Self> {
        if !(2..=3).contains(&coords.len()) {
            return Err(usage(format!("point dimension must be 2 or 3, got {}", coords.len())));
        }
        if let Some(bad) = coords.iter().find(|c| !c.is_valid()) {
            return Err(usage(format!("invalid coordinate {bad:?}")));
        }
        Ok(Self { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    pub fn to_f64(&self) -> Point<f64> {
        Point {
            coords: self.coords.iter().map(Scalar::to_f64).collect(),
        }
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(usage(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

/// Σᵢ (pᵢ − qᵢ)².
pub fn squared_distance<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<S> {
    p.check_dim(q)?;
    Ok(sq_dist(p, q))
}

pub fn midpoint<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Result<Point<S>> {
    p.check_dim(q)?;
    Ok(mid(p, q))
}

// Unchecked variants for callers that already hold a validated configuration.

pub(crate) fn sq_dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    p.coords
        .iter()
        .zip(&q.coords)
        .fold(S::zero(), |acc, (a, b)| {
            let d = a.clone() - b.clone();
            acc + d.clone() * d
        })
}

pub(crate) fn mid<S: Scalar>(p: &Point<S>, q: &Point<S>) -> Point<S> {
    Point {
        coords: p
            .coords
            .iter()
            .zip(&q.coords)
            .map(|(a, b)| (a.clone() + b.clone()).half())
            .collect(),
    }
}

/// An ordered, labeled tuple of at least three points sharing one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<S> {
    points: Vec<Point<S>>,
    dim: usize,
}

impl<S: Scalar> Configuration<S> {
    pub fn new(points: Vec<Point<S>>) -> Result<Self> {
        if points.len() < 3 {
            return Err(usage(format!(
                "a configuration needs at least 3 points, got {}",
                points.len()
            )));
        }
        let dim = points[0].dim();
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(usage(format!(
                "dimension mismatch in configuration: {} vs {}",
                dim,
                p.dim()
            )));
        }
        Ok(Self { points, dim })
    }

    /// Builds from raw coordinate rows.
    pub fn from_rows<I, R>(rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = S>,
    {
        let points = rows
            .into_iter()
            .map(|r| Point::new(r.into_iter().collect()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        S::MODE
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point<S> {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point<S>> {
        self.points
    }

    pub fn to_f64(&self) -> Configuration<f64> {
        Configuration {
            points: self.points.iter().map(Point::to_f64).collect(),
            dim: self.dim,
        }
    }

    /// Applies `f` to every point; the result is revalidated.
    pub fn map_points<F>(&self, f: F) -> Result<Self>
    where
        F: FnMut(&Point<S>) -> Vec<S>,
    {
        let points = self
            .points
            .iter()
            .map(f)
            .map(Point::new)
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }

    /// Reorders points so that `result[k] = self[order[k]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(usage("permutation length does not match configuration"));
        }
        let points = order
            .iter()
            .map(|&i| {
                self.points
                    .get(i)
                    .cloned()
                    .ok_or_else(|| usage(format!("label {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(points)
    }
}

/// `n` points with coordinates uniform in [0, 1), drawn point-major from the
/// SplitMix64 stream seeded with `seed`.
///
/// Draws are dyadic (k·2⁻⁵³), so the float and rational versions of the same
/// seed describe identical points.
pub fn random_config<S: Scalar>(seed: u64, n: usize, dim: usize) -> Result<Configuration<S>> {
    if n < 3 {
        return Err(usage(format!("random_config needs n >= 3, got {n}")));
    }
    if !(2..=3).contains(&dim) {
        return Err(usage(format!("dim must be 2 or 3, got {dim}")));
    }
    let mut rng = SplitMix64::new(seed);
    let points = (0..n)
        .map(|_| Point {
            coords: (0..dim)
                .map(|_| S::from_dyadic(rng.next_mantissa(), UNIT_BITS))
                .collect(),
        })
        .collect();
    Configuration::new(points)
}

/// Vertex k at angle 2πk/n on a circle of the given radius.
pub fn regular_polygon(n: usize, circumradius: f64) -> Result<Configuration<f64>> {
    if n < 3 {
        return Err(usage(format!("regular_polygon needs n >= 3, got {n}")));
    }
    if !(circumradius > 0.0 && circumradius.is_finite()) {
        return Err(usage(format!("circumradius must be positive, got {circumradius}")));
    }
    let points = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            Point::new(vec![circumradius * theta.cos(), circumradius * theta.sin()])
        })
        .collect::<Result<Vec<_>>>()?;
    Configuration::new(points)
}

/// Centroid to the origin and total pairwise squared distance scaled to 1.
pub fn normalize(c: &Configuration<f64>) -> Result<Configuration<f64>> {
    let total = total_weight(c);
    if total.is_nan() || total <= 0.0 {
        return Err(degenerate("normalize: total weight is zero"));
    }
    let n = c.len() as f64;
    let mut centroid = vec![0.0; c.dim()];
    for p in c.points() {
        for (acc, x) in centroid.iter_mut().zip(p.coords()) {
            *acc += x;
        }
    }
    centroid.iter_mut().for_each(|x| *x /= n);
    let scale = total.sqrt().recip();
    c.map_points(|p| {
        p.coords()
            .iter()
            .zip(&centroid)
            .map(|(x, m)| (x - m) * scale)
            .collect()
    })
}
