//! Brute-force point counts over prime fields.
//!
//! Everything here enumerates matrices exhaustively; the motivic formulas are
//! then checked by evaluating them at `L = p`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::conifold::{first_proof_series, universal_series, UniversalForm};
use crate::error::{Error, Result};
use crate::json::int_value;
use crate::plethystic::partitions_of;
use crate::ring::{gl_motive, RatFun};
use crate::series::DimVec;

pub const DEFAULT_CAP: u128 = 1_000_000_000;
pub const CAP_ENV: &str = "CONIFOLD_DT_CAP";

/// The enumeration cap, honouring `CONIFOLD_DT_CAP` when it parses.
pub fn default_cap() -> u128 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountQuery {
    pub alpha: DimVec,
    pub p: u64,
    pub cap: u128,
}

impl CountQuery {
    pub fn new(alpha: DimVec, p: u64) -> Self {
        Self {
            alpha,
            p,
            cap: default_cap(),
        }
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    /// `p^{3 a0 a1}`, the number of matrix triples.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(3 * self.alpha.a0 * self.alpha.a1)
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p < 1 << 16 {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_size(p: u64, exponent: u32, cap: u128) -> Result<()> {
    let size = (p as u128).checked_pow(exponent).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    Ok(())
}

/// Dense row-major matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Mat {
    fn decode(mut idx: u64, rows: usize, cols: usize, p: u64) -> Self {
        let mut data = vec![0; rows * cols];
        for x in &mut data {
            *x = idx % p;
            idx /= p;
        }
        Self { rows, cols, data }
    }

    fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    fn at(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    fn mul(&self, o: &Mat, p: u64) -> Mat {
        debug_assert_eq!(self.cols, o.rows);
        let mut out = Mat::zero(self.rows, o.cols);
        for r in 0..self.rows {
            for c in 0..o.cols {
                let mut s = 0;
                for k in 0..self.cols {
                    s += self.at(r, k) * o.at(k, c);
                }
                out.set(r, c, s % p);
            }
        }
        out
    }

    fn rank(&self, p: u64) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| m[r * cols + c] != 0) else {
                continue;
            };
            for k in 0..cols {
                m.swap(piv * cols + k, rank * cols + k);
            }
            let inv = mod_inv(m[rank * cols + c], p);
            for k in 0..cols {
                m[rank * cols + k] = m[rank * cols + k] * inv % p;
            }
            for r in 0..rows {
                let f = m[r * cols + c];
                if r != rank && f != 0 {
                    for k in 0..cols {
                        m[r * cols + k] = (m[r * cols + k] + (p - f) * m[rank * cols + k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// `#{(A2, B1, B2) : B1 A2 B2 = B2 A2 B1}` over `F_p`.
///
/// For fixed `(A2, B1)` the relation is linear in `B2`; all `B2` are visited
/// in odometer order while the value of that linear map is updated in place.
pub fn count_cut_reps(q: &CountQuery) -> Result<u128> {
    check_prime(q.p)?;
    let (a0, a1) = (q.alpha.a0 as usize, q.alpha.a1 as usize);
    let n = a0 * a1;
    check_size(q.p, 3 * n as u32, q.cap)?;
    if n == 0 {
        return Ok(1);
    }
    let p = q.p;
    let block = p.pow(n as u32);
    let total = (0..block)
        .into_par_iter()
        .map(|ia| {
            let a2 = Mat::decode(ia, a1, a0, p);
            let mut count: u128 = 0;
            let mut images = vec![vec![0u64; n]; n];
            let mut acc = vec![0u64; n];
            let mut digits = vec![0u64; n];
            for ib in 0..block {
                let b1 = Mat::decode(ib, a0, a1, p);
                let s1 = b1.mul(&a2, p);
                let t1 = a2.mul(&b1, p);
                // image of the unit matrix E_ij under B2 -> S1 B2 - B2 T1
                for i in 0..a0 {
                    for j in 0..a1 {
                        let img = &mut images[i * a1 + j];
                        for r in 0..a0 {
                            for c in 0..a1 {
                                let mut v = if c == j { s1.at(r, i) } else { 0 };
                                if r == i {
                                    v += p - t1.at(j, c);
                                }
                                img[r * a1 + c] = v % p;
                            }
                        }
                    }
                }
                acc.iter_mut().for_each(|x| *x = 0);
                digits.iter_mut().for_each(|x| *x = 0);
                count += 1;
                for _ in 1..block {
                    let mut k = 0;
                    loop {
                        digits[k] += 1;
                        for (x, y) in acc.iter_mut().zip(&images[k]) {
                            *x = (*x + y) % p;
                        }
                        if digits[k] == p {
                            digits[k] = 0;
                            k += 1;
                        } else {
                            break;
                        }
                    }
                    if acc.iter().all(|&x| x == 0) {
                        count += 1;
                    }
                }
            }
            count
        })
        .sum();
    Ok(total)
}

/// `A_a [GL_a0][GL_a1] (-q)^{-(a0-a1)^2}` evaluated at `L = p`.
pub fn predicted_motive(alpha: DimVec) -> Result<RatFun> {
    let a = universal_series(alpha.total(), UniversalForm::Exp).coeff(alpha);
    let d = alpha.a0 as i64 - alpha.a1 as i64;
    let m = &(&a * &(&gl_motive(alpha.a0) * &gl_motive(alpha.a1))) * &RatFun::neg_q_pow(-d * d);
    require_polynomial(&m)?;
    Ok(m)
}

fn require_polynomial(m: &RatFun) -> Result<()> {
    if !m.is_laurent() || m.num().min_exp().is_some_and(|e| e < 0) {
        return Err(Error::NotPolynomial);
    }
    Ok(())
}

fn to_integer(v: num_rational::BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::NotPolynomial)
    }
}

pub fn predicted_count(alpha: DimVec, p: u64) -> Result<BigInt> {
    check_prime(p)?;
    to_integer(predicted_motive(alpha)?.evaluate_at_prime(p)?)
}

/// Invertible `n x n` matrices, found by extending independent rows.
pub fn count_gl(n: u32, p: u64, cap: u128) -> Result<u128> {
    check_prime(p)?;
    check_size(p, n * n, cap)?;
    let n = n as usize;
    fn extend(basis: &mut Vec<Vec<u64>>, n: usize, p: u64) -> u128 {
        if basis.len() == n {
            return 1;
        }
        let mut total = 0;
        for idx in 0..p.pow(n as u32) {
            let v = Mat::decode(idx, 1, n, p).data;
            let mut rows = basis.clone();
            rows.push(v.clone());
            let m = Mat {
                rows: rows.len(),
                cols: n,
                data: rows.concat(),
            };
            if m.rank(p) == rows.len() {
                basis.push(v);
                total += extend(basis, n, p);
                basis.pop();
            }
        }
        total
    }
    Ok(extend(&mut Vec::new(), n, p))
}

/// `#{(C1, C2) : C2 invertible, C1 C2 = C2 C1}`.
pub fn count_commuting(a: u32, p: u64, cap: u128) -> Result<u128> {
    check_prime(p)?;
    check_size(p, 2 * a * a, cap)?;
    let n = a as usize;
    let block = p.pow(a * a);
    Ok((0..block)
        .into_par_iter()
        .map(|i2| {
            let c2 = Mat::decode(i2, n, n, p);
            if c2.rank(p) != n {
                return 0;
            }
            (0..block)
                .filter(|&i1| {
                    let c1 = Mat::decode(i1, n, n, p);
                    c1.mul(&c2, p) == c2.mul(&c1, p)
                })
                .count() as u128
        })
        .sum())
}

/// `[GL_a] sum_{p |- a} L^{l(p)}`.
pub fn commuting_motive(a: u32) -> RatFun {
    let s = partitions_of(a)
        .iter()
        .fold(RatFun::zero(), |acc, p| &acc + &RatFun::l_pow(p.len() as i64));
    &gl_motive(a) * &s
}

pub fn commuting_formula(a: u32, p: u64) -> Result<BigInt> {
    to_integer(commuting_motive(a).evaluate_at_prime(p)?)
}

/// Solutions bucketed by half the stable rank of `A2 + B2` on `V0 + V1`.
pub fn count_strata(q: &CountQuery) -> Result<BTreeMap<u32, u128>> {
    check_prime(q.p)?;
    let (a0, a1) = (q.alpha.a0 as usize, q.alpha.a1 as usize);
    let n = a0 * a1;
    check_size(q.p, 3 * n as u32, q.cap)?;
    let p = q.p;
    let block = p.pow(n as u32);
    let dim = a0 + a1;
    let buckets = (0..block)
        .into_par_iter()
        .map(|ia| {
            let a2 = Mat::decode(ia, a1, a0, p);
            let mut local: BTreeMap<u32, u128> = BTreeMap::new();
            for ib in 0..block {
                let b1 = Mat::decode(ib, a0, a1, p);
                let b1a2 = b1.mul(&a2, p);
                let a2b1 = a2.mul(&b1, p);
                for ic in 0..block {
                    let b2 = Mat::decode(ic, a0, a1, p);
                    if b1a2.mul(&b2, p) != b2.mul(&a2b1, p) {
                        continue;
                    }
                    // X = [[0, B2], [A2, 0]] on V0 + V1
                    let mut x = Mat::zero(dim, dim);
                    for r in 0..a0 {
                        for c in 0..a1 {
                            x.set(r, a0 + c, b2.at(r, c));
                        }
                    }
                    for r in 0..a1 {
                        for c in 0..a0 {
                            x.set(a0 + r, c, a2.at(r, c));
                        }
                    }
                    let mut pw = x.clone();
                    for _ in 1..dim.max(1) {
                        pw = pw.mul(&x, p);
                    }
                    let rank = if dim == 0 { 0 } else { pw.rank(p) };
                    *local.entry(rank as u32 / 2).or_default() += 1;
                }
            }
            local
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    Ok(buckets)
}

/// Stratum counts predicted from `I` and `N`:
/// `sum_{p |- a} L^{l(p)} * N_{a - (a,a)} (-q)^{-(a0-a1)^2} [GL_a0][GL_a1]`.
pub fn predicted_strata(alpha: DimVec, p: u64) -> Result<BTreeMap<u32, BigInt>> {
    check_prime(p)?;
    let n = first_proof_series(alpha.total()).n;
    let d = alpha.a0 as i64 - alpha.a1 as i64;
    let common = &(&gl_motive(alpha.a0) * &gl_motive(alpha.a1)) * &RatFun::neg_q_pow(-d * d);
    let mut out = BTreeMap::new();
    for a in 0..=alpha.a0.min(alpha.a1) {
        let beta = DimVec::new(alpha.a0 - a, alpha.a1 - a);
        let parts = partitions_of(a)
            .iter()
            .fold(RatFun::zero(), |acc, pi| &acc + &RatFun::l_pow(pi.len() as i64));
        let m = &(&parts * &n.coeff(beta)) * &common;
        require_polynomial(&m)?;
        let v = to_integer(m.evaluate_at_prime(p)?)?;
        if v != BigInt::from(0) {
            out.insert(a, v);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub alpha: DimVec,
    pub p: u64,
    pub count: u128,
    pub predicted: BigInt,
    pub strata: Option<BTreeMap<u32, u128>>,
}

impl CountReport {
    pub fn run(q: &CountQuery, strata: bool) -> Result<Self> {
        let count = count_cut_reps(q)?;
        let predicted = predicted_count(q.alpha, q.p)?;
        let strata = if strata { Some(count_strata(q)?) } else { None };
        Ok(Self {
            alpha: q.alpha,
            p: q.p,
            count,
            predicted,
            strata,
        })
    }

    pub fn matches(&self) -> bool {
        BigInt::from(self.count) == self.predicted
            && self
                .strata
                .as_ref()
                .is_none_or(|s| s.values().sum::<u128>() == self.count)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "alpha": [self.alpha.a0, self.alpha.a1],
            "p": self.p,
            "count": int_value(&BigInt::from(self.count)),
            "predicted": int_value(&self.predicted),
            "match": self.matches(),
        });
        if let Some(s) = &self.strata {
            let m: serde_json::Map<String, Value> = s
                .iter()
                .map(|(k, c)| (k.to_string(), int_value(&BigInt::from(*c))))
                .collect();
            v["strata"] = Value::Object(m);
        }
        v
    }
}

/// `|GL_n(F_p)|` from the product formula, for cross checks.
pub fn gl_order(n: u32, p: u64) -> BigInt {
    let pn = BigInt::from(p).pow(n);
    (0..n).fold(BigInt::one(), |acc, k| acc * (&pn - BigInt::from(p).pow(k)))
}

/// Converts a count to `u64` when it fits.
pub fn small(n: &BigInt) -> Option<u64> {
    n.to_u64()
}
