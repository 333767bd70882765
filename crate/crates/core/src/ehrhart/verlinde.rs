//! The trigonometric formula for `L(t)` of a connected cubic graph at odd
//! `t`, its polynomial rewriting through Bernoulli numbers, and the volume.

use std::f64::consts::PI;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{binomial, q, Q};

/// Default largest accepted distance between the certified enclosure and
/// its nearest integer.
pub const PRECISION_BUDGET: f64 = 0.25;

/// A closed interval `[lo, hi]` of reals, widened outward after every
/// operation so it always contains the exact value.
#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: f64,
    hi: f64,
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    fn add(self, o: Interval) -> Self {
        Interval {
            lo: down(self.lo + o.lo),
            hi: up(self.hi + o.hi),
        }
    }

    /// Product of two intervals of positive numbers.
    fn mul_pos(self, o: Interval) -> Self {
        Interval {
            lo: down(self.lo * o.lo),
            hi: up(self.hi * o.hi),
        }
    }

    fn recip_pos(self) -> Self {
        Interval {
            lo: down(1.0 / self.hi),
            hi: up(1.0 / self.lo),
        }
    }

    fn powi_pos(self, n: u32) -> Self {
        (0..n).fold(Interval::point(1.0), |acc, _| acc.mul_pos(self))
    }

    /// `sin` on a subinterval of `(0, π)`. The library sine is assumed
    /// accurate to a few ulps; the enclosure allows eight.
    fn sin_pos(self) -> Self {
        let widen = |y: f64, dir: f64| y + dir * 8.0 * f64::EPSILON * y.abs();
        let (a, b) = (self.lo.sin(), self.hi.sin());
        let mut lo = widen(a.min(b), -1.0);
        let mut hi = widen(a.max(b), 1.0);
        if self.lo <= PI / 2.0 + 1e-12 && self.hi >= PI / 2.0 - 1e-12 {
            hi = 1.0;
        }
        lo = lo.max(0.0);
        hi = hi.min(1.0);
        Interval { lo, hi }
    }
}

/// Enclosure of `π j / d`.
fn angle(j: u64, d: u64) -> Interval {
    let x = PI * j as f64 / d as f64;
    // π itself is off by < 1 ulp; the two roundings add two more.
    let slack = 4.0 * f64::EPSILON * x;
    Interval {
        lo: x - slack,
        hi: x + slack,
    }
}

/// `(t+2)^{n/2} / 2^{n+1} · Σ_{j=1}^{t+1} sin^{-n}(π j / (t+2))`, rounded to
/// the nearest integer once the enclosure is narrower than the budget.
pub fn verlinde_count(n: u32, t: u64) -> Result<u128> {
    verlinde_count_with_budget(n, t, PRECISION_BUDGET)
}

/// As [`verlinde_count`] with a caller-chosen budget in `(0, 1/2]`.
pub fn verlinde_count_with_budget(n: u32, t: u64, budget: f64) -> Result<u128> {
    if !(budget > 0.0 && budget <= 0.5) {
        return Err(Error::Invalid(format!("precision budget {budget} is outside (0, 1/2]")));
    }
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Invalid(format!("n = {n} must be even and positive")));
    }
    if t.is_multiple_of(2) {
        return Err(Error::Invalid(format!("t = {t} must be odd")));
    }
    let d = t + 2;
    let mut sum = Interval::point(0.0);
    for j in 1..=t + 1 {
        let s = angle(j, d).sin_pos();
        if s.lo <= 0.0 {
            return Err(Error::Precision(f64::INFINITY));
        }
        sum = sum.add(s.powi_pos(n).recip_pos());
    }
    let scale = Interval::point(d as f64)
        .powi_pos(n / 2)
        .mul_pos(Interval::point(2f64.powi(n as i32 + 1)).recip_pos());
    let v = sum.mul_pos(scale);
    let k = ((v.lo + v.hi) / 2.0).round();
    let err = (v.lo - k).abs().max((v.hi - k).abs());
    if !(err < budget) {
        return Err(Error::Precision(err));
    }
    k.to_u128().ok_or(Error::Overflow("verlinde count"))
}

/// `B_0, ..., B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Q> {
    let mut b: Vec<Q> = vec![Q::one()];
    for m in 1..=n {
        let s: Q = (0..m).map(|k| binomial(m as i64 + 1, k as u32) * &b[k]).sum();
        b.push(-s / q(m as i64 + 1));
    }
    b
}

fn factorial(n: u32) -> Q {
    (1..=n as i64).map(q).product()
}

/// Power series `Σ a_k x^k`, truncated to `len` terms.
fn series_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inverse(a: &[Q], len: usize) -> Vec<Q> {
    let mut inv = vec![Q::zero(); len];
    inv[0] = a[0].recip();
    for k in 1..len {
        let s: Q = (1..=k.min(a.len() - 1)).map(|i| &a[i] * &inv[k - i]).sum();
        inv[k] = -s * &inv[0];
    }
    inv
}

/// Coefficients of `(x / sin x)^n` up to `x^n`.
pub fn x_over_sin_powers(n: u32) -> Vec<Q> {
    let len = n as usize + 1;
    let sinc: Vec<Q> = (0..len)
        .map(|k| {
            if k % 2 == 1 {
                Q::zero()
            } else {
                let sign = if (k / 2) % 2 == 0 { q(1) } else { q(-1) };
                sign / factorial(k as u32 + 1)
            }
        })
        .collect();
    let base = series_inverse(&sinc, len);
    (0..n).fold(
        {
            let mut one = vec![Q::zero(); len];
            one[0] = Q::one();
            one
        },
        |acc, _| series_mul(&acc, &base, len),
    )
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `(t + 2)^k` in ascending coefficients.
fn shifted_power(k: u32) -> Vec<Q> {
    (0..k).fold(vec![Q::one()], |acc, _| poly_mul(&acc, &[q(2), q(1)]))
}

/// The Verlinde sum rewritten as a polynomial in `t` of degree `3n/2`,
/// coefficients ascending. Valid for odd `t`.
pub fn zagier_polynomial(n: u32) -> Result<Vec<Q>> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::Invalid(format!("n = {n} must be even and positive")));
    }
    let b = bernoulli(n as usize);
    let c = x_over_sin_powers(n);
    let mut inner = vec![Q::zero(); n as usize + 1];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 1 { q(1) } else { q(-1) };
        let coeff = sign * q(1 << (2 * k)) * &b[2 * k as usize] / factorial(2 * k)
            * &c[(n - 2 * k) as usize];
        for (i, p) in shifted_power(2 * k).into_iter().enumerate() {
            inner[i] += &coeff * p;
        }
    }
    let outer: Vec<Q> = shifted_power(n / 2)
        .into_iter()
        .map(|x| x / q(1 << (n + 1)))
        .collect();
    let mut out = poly_mul(&outer, &inner);
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// `|B_n| / (2 · n!)`, the volume of `P_G` for a connected cubic graph on
/// `n` vertices.
pub fn cubic_volume(n: u32) -> Q {
    bernoulli(n as usize)[n as usize].abs() / (q(2) * factorial(n))
}
