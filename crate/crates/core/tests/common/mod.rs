//! Independent oracles for the integration tests. Nothing here calls the
//! library's algorithms; only plain coordinates and big rationals go in.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist2_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .fold(BigRational::zero(), |s, t| s + t)
}

pub fn mid_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| (x + y) / q(2, 1)).collect()
}

/// Four-point identity computed straight from coordinates of the 4-cycle
/// a, b, c, d: returns (sides, diagonals, 4·|mid(ac) mid(bd)|²).
pub fn quad_terms_q(p: &[Vec<BigRational>; 4]) -> (BigRational, BigRational, BigRational) {
    let [a, b, c, d] = p;
    let sides = dist2_q(a, b) + dist2_q(b, c) + dist2_q(c, d) + dist2_q(d, a);
    let diagonals = dist2_q(a, c) + dist2_q(b, d);
    let r2 = dist2_q(&mid_q(a, c), &mid_q(b, d));
    (sides, diagonals, q(4, 1) * r2)
}

pub fn quad_terms(p: &[Vec<f64>; 4]) -> (f64, f64, f64) {
    let [a, b, c, d] = p;
    let sides = dist2(a, b) + dist2(b, c) + dist2(c, d) + dist2(d, a);
    let diagonals = dist2(a, c) + dist2(b, d);
    let mac: Vec<f64> = a.iter().zip(c).map(|(x, y)| (x + y) / 2.0).collect();
    let mbd: Vec<f64> = b.iter().zip(d).map(|(x, y)| (x + y) / 2.0).collect();
    (sides, diagonals, 4.0 * dist2(&mac, &mbd))
}

/// Hamiltonian cycles of K_n as edge sets, by brute force over all n!
/// vertex orders.
pub fn brute_force_cycles(n: usize) -> BTreeSet<BTreeSet<(usize, usize)>> {
    fn permute(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            permute(prefix, rest, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut orders = Vec::new();
    permute(&mut Vec::new(), &mut (0..n).collect(), &mut orders);
    orders
        .into_iter()
        .map(|o| {
            (0..n)
                .map(|k| {
                    let (a, b) = (o[k], o[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
                .collect()
        })
        .collect()
}

pub fn edge_set(order: &[usize]) -> BTreeSet<(usize, usize)> {
    let n = order.len();
    (0..n)
        .map(|k| {
            let (a, b) = (order[k], order[(k + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// x + y·√5 with rational x, y.
#[derive(Clone, Debug, PartialEq)]
pub struct QSqrt5 {
    pub x: BigRational,
    pub y: BigRational,
}

impl QSqrt5 {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            x: &self.x * &o.x + q(5, 1) * &self.y * &o.y,
            y: &self.x * &o.y + &self.y * &o.x,
        }
    }

}

/// Closed form of the sequence with a₀ = 0, a₁ = 1 and characteristic roots
/// (3 ± √5)/8: a_n = (r₁ⁿ − r₂ⁿ)/(r₁ − r₂) with r₁ − r₂ = √5/4. Since r₂ is
/// the conjugate of r₁, r₁ⁿ − r₂ⁿ = 2y√5 and a_n = 8y.
pub fn closed_form_terms(n_max: usize) -> Vec<BigRational> {
    let r1 = QSqrt5::new(q(3, 8), q(1, 8));
    let mut power = QSqrt5::new(BigRational::one(), BigRational::zero());
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(q(8, 1) * &power.y);
        power = power.mul(&r1);
    }
    out
}

/// Regular pentagon on the unit circle: side² and diagonal² sums.
pub fn pentagon_e1() -> f64 {
    5.0 * (5.0 - 5f64.sqrt()) / 2.0
}

pub fn pentagon_d1() -> f64 {
    5.0 * (5.0 + 5f64.sqrt()) / 2.0
}

pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap()
}

pub fn is_negative(r: &BigRational) -> bool {
    r.is_negative()
}
