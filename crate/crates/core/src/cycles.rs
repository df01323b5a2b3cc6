//! Hamiltonian cycles of Kₙ in canonical form, their weights and complements.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::geometry::{sq_dist, Configuration};
use crate::scalar::Scalar;

/// Largest n accepted by [`enumerate_cycles`]; 9!/2 = 181 440 cycles.
pub const MAX_ENUMERATION_N: usize = 10;

/// A Hamiltonian cycle on labels `0..n`, stored so that `order[0] == 0` and
/// `order[1] < order[n-1]`. Two descriptions of the same cycle therefore
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    order: Vec<usize>,
}

impl Cycle {
    pub fn canonicalize(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        if n < 3 {
            return Err(usage(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let mut seen = vec![false; n];
        for &v in sequence {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(usage(format!(
                    "{sequence:?} is not a permutation of 0..{n}"
                )));
            }
        }
        let start = sequence.iter().position(|&v| v == 0).unwrap();
        let mut order: Vec<usize> = (0..n).map(|k| sequence[(start + k) % n]).collect();
        if order[1] > order[n - 1] {
            order[1..].reverse();
        }
        Ok(Self { order })
    }

    /// The cycle 0, 1, …, n−1.
    pub fn identity(n: usize) -> Result<Self> {
        Self::canonicalize(&(0..n).collect::<Vec<_>>())
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Consecutive pairs including the closing edge.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |k| (self.order[k], self.order[(k + 1) % n]))
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet {
            n: self.len(),
            pairs: self.edges().map(|(a, b)| ordered(a, b)).collect(),
        }
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.order.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Cycle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let seq = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("bad vertex label `{t}` in cycle `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::canonicalize(&seq)
    }
}

impl serde::Serialize for Cycle {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.collect_str(self)
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Unordered vertex pairs of Kₙ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl EdgeSet {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a == b || a >= n || b >= n {
                return Err(usage(format!("invalid edge {{{a},{b}}} for n = {n}")));
            }
            if !set.insert(ordered(a, b)) {
                return Err(usage(format!("duplicate edge {{{a},{b}}}")));
            }
        }
        Ok(Self { n, pairs: set })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&ordered(a, b))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    /// All pairs of Kₙ not in `self`.
    pub fn complement(&self) -> EdgeSet {
        let pairs = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.contains(a, b))
            .collect();
        EdgeSet { n: self.n, pairs }
    }
}

/// Every canonical Hamiltonian cycle of Kₙ, in lexicographic order.
pub fn enumerate_cycles(n: usize) -> Result<Vec<Cycle>> {
    if !(3..=MAX_ENUMERATION_N).contains(&n) {
        return Err(usage(format!(
            "enumerate_cycles supports 3 <= n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    let mut order = vec![0usize];
    let mut used = vec![false; n];
    used[0] = true;
    extend(n, &mut order, &mut used, &mut out);
    Ok(out)
}

fn extend(n: usize, order: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Cycle>) {
    if order.len() == n {
        if order[1] < order[n - 1] {
            out.push(Cycle {
                order: order.clone(),
            });
        }
        return;
    }
    for v in 1..n {
        if !used[v] {
            used[v] = true;
            order.push(v);
            extend(n, order, used, out);
            order.pop();
            used[v] = false;
        }
    }
}

fn check_size<S: Scalar>(c: &Configuration<S>, cy: &Cycle) -> Result<()> {
    if c.points().len() != cy.len() {
        return Err(usage(format!(
            "cycle has {} vertices but configuration has {} points",
            cy.len(),
            c.points().len()
        )));
    }
    Ok(())
}

/// w(E): sum of squared lengths of the cycle's edges.
pub fn cycle_weight<S: Scalar>(c: &Configuration<S>, cy: &Cycle) -> Result<S> {
    check_size(c, cy)?;
    Ok(cy
        .edges()
        .fold(S::zero(), |acc, (a, b)| acc + sq_dist(c.point(a), c.point(b))))
}

/// w(Kₙ): sum of squared distances over all pairs.
pub fn total_weight<S: Scalar>(c: &Configuration<S>) -> S {
    let pts = c.points();
    let mut acc = S::zero();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            acc = acc + sq_dist(&pts[i], &pts[j]);
        }
    }
    acc
}

/// w(D) = w(Kₙ) − w(E).
pub fn complement_weight<S: Scalar>(c: &Configuration<S>, cy: &Cycle) -> Result<S> {
    Ok(total_weight(c) - cycle_weight(c, cy)?)
}

/// The Hamiltonian cycle formed by the five pairs missing from a 5-cycle.
///
/// Only defined for n = 5: for larger n the complement is not a cycle.
pub fn complement_cycle(cy: &Cycle) -> Result<Cycle> {
    if cy.len() != 5 {
        return Err(usage(format!(
            "complement_cycle is only defined for n = 5, got n = {}",
            cy.len()
        )));
    }
    let rest = cy.edge_set().complement();
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    while order.len() < 5 {
        let cur = *order.last().unwrap();
        let next = (0..5)
            .find(|&v| v != cur && v != prev && rest.contains(cur, v))
            .expect("complement of a 5-cycle is 2-regular");
        prev = cur;
        order.push(next);
    }
    Cycle::canonicalize(&order)
}
