//! Lambda-ring operations on [`TruncSeries`].
//!
//! Adams operations act on coefficients by `q -> q^n` and on monomials by
//! `y^a -> y^{na}`. The plethystic exponential is `exp(sum_n psi_n(f)/n)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::RatFun;
use crate::series::{exponents_up_to, sum_all, DimVec, TruncSeries};

/// A partition, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiplicities `b_i` of each part size `i`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<u32> {
        let top = self.parts.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0; top + 1];
        for &p in &self.parts {
            m[p as usize] += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn mobius(n: u32) -> i32 {
    assert!(n > 0);
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn adams(n: u32, f: &TruncSeries) -> TruncSeries {
    assert!(n > 0, "Adams operations are indexed from 1");
    TruncSeries::from_terms(
        f.order(),
        f.terms()
            .filter(|(e, _)| e.total() * n <= f.order())
            .map(|(e, c)| (e.scaled(n), c.adams(n))),
    )
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Ordinary exponential of a series without constant term.
fn exp_series(h: &TruncSeries) -> TruncSeries {
    // Euler operator recurrence: |a| g_a = sum_b |b| h_b g_{a-b}
    let mut g = TruncSeries::one(h.order());
    for alpha in exponents_up_to(h.order()).into_iter().skip(1) {
        let mut parts = Vec::new();
        for (beta, hb) in h.terms() {
            if beta > alpha {
                break;
            }
            if let Some(rest) = alpha.checked_sub(beta) {
                if let Some(gr) = g.coeff_ref(rest) {
                    parts.push((hb * gr).scale(&rat(beta.total() as i64, 1)));
                }
            }
        }
        let s = sum_all(parts).scale(&rat(1, alpha.total() as i64));
        g.set(alpha, s);
    }
    g
}

/// Ordinary logarithm of a series with constant term 1.
fn log_series(g: &TruncSeries) -> TruncSeries {
    let mut h = TruncSeries::zero(g.order());
    for alpha in exponents_up_to(g.order()).into_iter().skip(1) {
        let n = alpha.total() as i64;
        let mut parts = vec![g.coeff(alpha).scale(&rat(n, 1))];
        for (beta, hb) in h.terms() {
            if beta >= alpha {
                break;
            }
            if let Some(rest) = alpha.checked_sub(beta) {
                if let Some(gr) = g.coeff_ref(rest) {
                    parts.push(-(hb * gr).scale(&rat(beta.total() as i64, 1)));
                }
            }
        }
        let s = sum_all(parts).scale(&rat(1, n));
        h.set(alpha, s);
    }
    h
}

pub fn exp_pleth(f: &TruncSeries) -> Result<TruncSeries> {
    if !f.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut arg = TruncSeries::zero(f.order());
    for n in 1..=f.order().max(1) {
        let term = adams(n, f).scale(&RatFun::rational(rat(1, n as i64)));
        arg = arg.add(&term)?;
    }
    Ok(exp_series(&arg))
}

pub fn log_pleth(f: &TruncSeries) -> Result<TruncSeries> {
    if !f.constant_term().is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let l = log_series(f);
    let mut out = TruncSeries::zero(f.order());
    for n in 1..=f.order().max(1) {
        let mu = mobius(n);
        if mu == 0 {
            continue;
        }
        let term = adams(n, &l).scale(&RatFun::rational(rat(mu as i64, n as i64)));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Power structure `Pow(f, g) = Exp(g * Log f)`.
pub fn pow_pleth(f: &TruncSeries, g: &RatFun) -> Result<TruncSeries> {
    exp_pleth(&log_pleth(f)?.scale(g))
}

/// `(L^{-1}; L^{-1})_n`.
pub fn qpochhammer(n: u32) -> RatFun {
    let mut out = RatFun::one();
    for k in 1..=n as i64 {
        out = &out * &(&RatFun::one() - &RatFun::q_pow(-2 * k));
    }
    out
}

/// `L/(L-1) * sum_{1<=n<=order/2} (y0 y1)^n`.
fn diagonal_geometric(order: u32, c: &RatFun) -> TruncSeries {
    TruncSeries::from_terms(order, (1..=order / 2).map(|n| (DimVec::new(n, n), c.clone())))
}

/// Both sides of Hua's formula for the one-loop quiver, in the variable `y0 y1`.
pub fn hua_one_loop(order: u32) -> Result<(TruncSeries, TruncSeries)> {
    let mut lhs = TruncSeries::zero(order);
    for n in 0..=order / 2 {
        for lambda in partitions_of(n) {
            let parts = lambda.parts();
            let mut den = RatFun::one();
            for (i, &p) in parts.iter().enumerate() {
                let next = parts.get(i + 1).copied().unwrap_or(0);
                den = &den * &qpochhammer(p - next);
            }
            lhs.add_to(DimVec::new(n, n), &den.inv()?);
        }
    }
    let l = RatFun::l_pow(1);
    let c = l.checked_div(&(&l - &RatFun::one()))?;
    let rhs = exp_pleth(&diagonal_geometric(order, &c))?;
    Ok((lhs, rhs))
}

/// Both sides of the Heine identity as series in `x = y0`.
pub fn heine_sides(order: u32) -> Result<(TruncSeries, TruncSeries)> {
    let mut lhs = TruncSeries::zero(order);
    for n in 0..=order {
        let c = RatFun::neg_q_pow(-((n * n) as i64)).checked_div(&qpochhammer(n))?;
        lhs.add_to(DimVec::new(n, 0), &c);
    }
    let c = RatFun::q_pow(1).checked_div(&(&RatFun::one() - &RatFun::q_pow(2)))?;
    let rhs = exp_pleth(&TruncSeries::monomial(order, DimVec::new(1, 0), c))?;
    Ok((lhs, rhs))
}
