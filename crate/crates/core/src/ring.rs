//! Coefficient arithmetic in the single variable `q = L^{1/2}`.
//!
//! [`HalfLaurent`] is a Laurent polynomial in `q` over the rationals and
//! [`RatFun`] a quotient of two of them kept in a canonical reduced form:
//! the denominator is a polynomial in `q` with nonzero constant term, monic
//! in its top degree and coprime to the numerator. Pure powers of `q` always
//! live in the numerator. Two canonical values are equal iff their fields are.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{array, field, int_value, value_i64, value_int};

/// Laurent polynomial in `q` with rational coefficients.
///
/// Exponents count powers of `q`, so `L^k` is stored at exponent `2k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    terms: BTreeMap<i64, BigRational>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }

    /// Builds from integer coefficients listed by exponent.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(pairs.iter().map(|&(k, c)| (k, BigRational::from_integer(c.into()))))
    }

    fn add_term(&mut self, k: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: i64) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k + by, v.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^n`.
    pub fn adams(&self, n: u32) -> Self {
        let n = i64::from(n);
        Self {
            terms: self.terms.iter().map(|(&k, v)| (k * n, v.clone())).collect(),
        }
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Value at `L = q^2 = l`; every exponent must be even.
    pub fn at_l(&self, l: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&k, c) in &self.terms {
            if k % 2 != 0 {
                return Err(Error::HalfPowerResidue);
            }
            acc += c * pow_rational(l, k / 2)?;
        }
        Ok(acc)
    }

    fn fmt_with(&self, compact: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(match (compact, negative) {
                    (true, true) => "-",
                    (true, false) => "+",
                    (false, true) => " - ",
                    (false, false) => " + ",
                });
            }
            let mag = c.abs();
            let q_part = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&q_part);
            } else {
                out.push_str(&format!("{mag}*{q_part}"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&k, c)| json!([k, int_value(c.numer()), int_value(c.denom())]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut out = Self::zero();
        for t in array(v)? {
            let t = array(t)?;
            if t.len() != 3 {
                return Err(Error::Parse("coefficient triple must have 3 entries".into()));
            }
            let den = value_int(&t[2])?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator in coefficient".into()));
            }
            out.add_term(value_i64(&t[0])?, BigRational::new(value_int(&t[1])?, den));
        }
        Ok(out)
    }
}

fn pow_rational(base: &BigRational, e: i64) -> Result<BigRational> {
    if e < 0 {
        if base.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(num_traits::pow(base.recip(), e.unsigned_abs() as usize));
    }
    Ok(num_traits::pow(base.clone(), e as usize))
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(false))
    }
}

impl Add for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl Mul for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = HalfLaurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

/// Dense univariate polynomials, lowest degree first, used for gcd and exact division.
mod dense {
    use super::*;

    pub(super) type Poly = Vec<BigRational>;

    pub(super) fn trim(p: &mut Poly) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub(super) fn degree(p: &Poly) -> usize {
        p.len().saturating_sub(1)
    }

    /// Splits `h = q^shift * p(q)` with `p(0) != 0`.
    pub(super) fn split(h: &HalfLaurent) -> (i64, Poly) {
        let lo = h.min_exp().unwrap_or(0);
        let hi = h.max_exp().unwrap_or(0);
        let mut p = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in h.terms() {
            p[(k - lo) as usize] = c.clone();
        }
        (lo, p)
    }

    pub(super) fn join(shift: i64, p: &Poly) -> HalfLaurent {
        HalfLaurent::from_terms(
            p.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone())),
        )
    }

    /// Exact quotient `a / b`; the caller guarantees divisibility.
    pub(super) fn div_exact(a: &Poly, b: &Poly) -> Poly {
        let db = degree(b);
        if a.len() < b.len() {
            debug_assert!(a.iter().all(|c| c.is_zero()));
            return vec![];
        }
        let lead = b[db].clone();
        let mut rem = a.clone();
        let mut quot = vec![BigRational::zero(); a.len() - db];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + db] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
            quot[i] = c;
        }
        debug_assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
        trim(&mut quot);
        quot
    }

    fn primitive_int(p: &Poly) -> Vec<BigInt> {
        let lcm = p
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * &lcm).to_integer()).collect();
        make_primitive(ints)
    }

    fn make_primitive(mut p: Vec<BigInt>) -> Vec<BigInt> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        let content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return p;
        }
        let sign = if p.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let content = content * sign;
        p.into_iter().map(|c| c / &content).collect()
    }

    /// Pseudo-remainder of `a` by `b` over the integers.
    fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= lb;
            }
            for (j, bj) in b.iter().enumerate() {
                r[dr - db + j] -= &lr * bj;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        r
    }

    /// Monic gcd over the rationals, via primitive remainder sequences in `Z[q]`.
    pub(super) fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = primitive_int(a);
        let mut y = primitive_int(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if y.len() == 1 {
                return vec![BigRational::one()];
            }
            let r = make_primitive(prem(&x, &y));
            x = y;
            y = r;
        }
        let lead = BigRational::from_integer(x.last().cloned().unwrap_or_else(BigInt::one));
        x.into_iter()
            .map(|c| BigRational::from_integer(c) / &lead)
            .collect()
    }
}

/// Reduced rational function in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFun {
    pub fn zero() -> Self {
        Self {
            num: HalfLaurent::zero(),
            den: HalfLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(HalfLaurent::one())
    }

    pub fn from_laurent(num: HalfLaurent) -> Self {
        Self {
            num,
            den: HalfLaurent::one(),
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(c: BigRational) -> Self {
        Self::from_laurent(HalfLaurent::constant(c))
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(HalfLaurent::q_pow(k))
    }

    /// `L^k = q^{2k}`.
    pub fn l_pow(k: i64) -> Self {
        Self::q_pow(2 * k)
    }

    /// `(-q)^k`, i.e. `(-L^{1/2})^k` with the sign kept as a rational scalar.
    pub fn neg_q_pow(k: i64) -> Self {
        let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::from_laurent(HalfLaurent::monomial(BigRational::from_integer(sign.into()), k))
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: HalfLaurent, den: HalfLaurent) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (kn, mut pn) = dense::split(&num);
        let (kd, mut pd) = dense::split(&den);
        if dense::degree(&pd) > 0 && dense::degree(&pn) > 0 {
            let g = dense::gcd(&pn, &pd);
            if dense::degree(&g) > 0 {
                pn = dense::div_exact(&pn, &g);
                pd = dense::div_exact(&pd, &g);
            }
        }
        let lead = pd.last().cloned().expect("nonzero denominator");
        if !lead.is_one() {
            for c in pn.iter_mut().chain(pd.iter_mut()) {
                *c /= &lead;
            }
        }
        Self {
            num: dense::join(kn - kd, &pn),
            den: dense::join(0, &pd),
        }
    }

    pub fn num(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn den(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the reduced denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// The Adams operation `q -> q^n`. Coprimality survives the substitution,
    /// so the result is already canonical.
    pub fn adams(&self, n: u32) -> Self {
        assert!(n >= 1, "Adams operations are indexed from 1");
        Self {
            num: self.num.adams(n),
            den: self.den.adams(n),
        }
    }

    /// Evaluates at `L = q^2 = p`.
    pub fn evaluate_at_prime(&self, p: u64) -> Result<BigRational> {
        let l = BigRational::from_integer(p.into());
        let num = self.num.at_l(&l)?;
        let den = self.den.at_l(&l)?;
        if den.is_zero() {
            return Err(Error::PoleAtPrime(p));
        }
        Ok(num / den)
    }

    /// The Euler-number specialization `q -> 1`.
    pub fn euler_specialize(&self) -> Result<BigRational> {
        let den = self.den.at_one();
        if den.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(self.num.at_one() / den)
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        Self::new(
            HalfLaurent::from_json(field(v, "num")?)?,
            HalfLaurent::from_json(field(v, "den")?)?,
        )
    }
}

/// Order of `GL_n` over a field with `L` elements: `prod_{k<n} (L^n - L^k)`.
pub fn gl_motive(n: u32) -> RatFun {
    let n = i64::from(n);
    let mut acc = HalfLaurent::one();
    for k in 0..n {
        let factor = HalfLaurent::from_ints(&[(2 * n, 1), (2 * k, -1)]);
        acc = &acc * &factor;
    }
    RatFun::from_laurent(acc)
}

impl From<HalfLaurent> for RatFun {
    fn from(h: HalfLaurent) -> Self {
        Self::from_laurent(h)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFun::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_laurent(&self.num * &rhs.num);
        }
        if rhs.num.len() == 1 && rhs.den.is_one() {
            // a monomial factor cannot share a polynomial factor with the denominator
            let (k, c) = rhs.num.terms().next().expect("one term");
            return RatFun {
                num: self.num.scale(c).shift(k),
                den: self.den.clone(),
            };
        }
        if self.num.len() == 1 && self.den.is_one() {
            return rhs * self;
        }
        RatFun::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; see [`RatFun::checked_div`].
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero RatFun")
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $method:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(HalfLaurent, Add add, Sub sub, Mul mul);
forward_owned!(RatFun, Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return f.write_str(&self.num.fmt_with(false));
        }
        let num = self.num.fmt_with(true);
        if self.num.len() > 1 {
            write!(f, "({num})/({})", self.den.fmt_with(true))
        } else {
            write!(f, "{num}/({})", self.den.fmt_with(true))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(s: &str) -> Result<(i64, BigRational)> {
    let (sign, body) = match s.as_bytes().first() {
        Some(b'-') => (-1, &s[1..]),
        Some(b'+') => (1, &s[1..]),
        _ => (1, s),
    };
    let sign = BigRational::from_integer(sign.into());
    if body.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let (coeff, qpart) = match body.find('q') {
        None => (body, None),
        Some(0) => ("1", Some(&body[1..])),
        Some(i) => {
            let c = body[..i]
                .strip_suffix('*')
                .ok_or_else(|| Error::Parse(format!("expected `*` before q in `{s}`")))?;
            (c, Some(&body[i + 1..]))
        }
    };
    let exp = match qpart {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|e| e.parse::<i64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad exponent in `{s}`")))?,
    };
    Ok((exp, sign * parse_rational(coeff)?))
}

impl FromStr for HalfLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(&s);
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = s.as_bytes();
        let mut out = HalfLaurent::zero();
        let mut start = 0;
        for i in 1..=bytes.len() {
            let at_split = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if at_split {
                let (k, c) = parse_term(&s[start..i])?;
                out.add_term(k, c);
                start = i;
            }
        }
        Ok(out)
    }
}

impl FromStr for RatFun {
    type Err = Error;

    /// Accepts the forms produced by `Display`: `<laurent>` or `<numerator>/(<denominator>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 && s[i + 1..].starts_with('(') => split = Some(i),
                _ => {}
            }
        }
        match split {
            None => Ok(RatFun::from_laurent(s.parse()?)),
            Some(i) => RatFun::new(s[..i].parse()?, s[i + 1..].parse()?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> HalfLaurent {
        s.parse().unwrap()
    }

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn gl_motive_small_cases() {
        assert_eq!(gl_motive(0), RatFun::one());
        assert_eq!(gl_motive(1), rf("q^2 - 1"));
        assert_eq!(gl_motive(2), rf("(q^4 - 1)") * rf("q^4 - q^2"));
        assert_eq!(gl_motive(2).evaluate_at_prime(2).unwrap(), r(6));
    }

    #[test]
    fn evaluate_at_prime_examples() {
        let x = RatFun::new(lp("q^6"), lp("q^2 - 1") * lp("q^2 - 1")).unwrap();
        assert_eq!(x.evaluate_at_prime(2).unwrap(), r(8));
        assert_eq!(rf("q^2 - 1").evaluate_at_prime(5).unwrap(), r(4));
        assert_eq!(rf("q^3").evaluate_at_prime(2), Err(Error::HalfPowerResidue));
        let pole = RatFun::new(HalfLaurent::one(), lp("q^2 - 3")).unwrap();
        assert_eq!(pole.evaluate_at_prime(3), Err(Error::PoleAtPrime(3)));
    }

    #[test]
    fn euler_specialize_examples() {
        assert_eq!(rf("q + q^3").euler_specialize().unwrap(), r(2));
        let x = RatFun::new(lp("1 - q^3"), lp("1 - q")).unwrap();
        assert_eq!(x, rf("q^2 + q + 1"));
        assert_eq!(x.euler_specialize().unwrap(), r(3));
        let stacky = RatFun::new(HalfLaurent::one(), lp("q^2 - 1")).unwrap();
        assert_eq!(stacky.euler_specialize(), Err(Error::PoleAtOne));
    }

    #[test]
    fn canonical_form_moves_q_powers_and_makes_monic() {
        let x = RatFun::new(lp("2"), lp("2*q^3 - 2*q")).unwrap();
        assert_eq!(x.num(), &lp("q^-1"));
        assert_eq!(x.den(), &lp("q^2 - 1"));
        assert_eq!(x.to_string(), "q^-1/(q^2-1)");
    }

    #[test]
    fn text_forms() {
        assert_eq!(lp("-q^3 + 2 - q^-1").to_string(), "-q^3 + 2 - q^-1");
        let x = RatFun::new(lp("-q"), lp("q^2 - 1")).unwrap();
        assert_eq!(x.to_string(), "-q/(q^2-1)");
        let y = RatFun::new(lp("3/2*q^2 + q"), lp("q^2 + 1")).unwrap();
        assert_eq!(y.to_string(), "(3/2*q^2+q)/(q^2+1)");
        assert_eq!(rf(&y.to_string()), y);
        assert_eq!(rf("0"), RatFun::zero());
    }

    #[test]
    fn neg_q_powers() {
        assert_eq!(RatFun::neg_q_pow(-1), rf("-q^-1"));
        assert_eq!(RatFun::neg_q_pow(2), rf("q^2"));
        assert_eq!(RatFun::neg_q_pow(0), RatFun::one());
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(RatFun::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(
            RatFun::new(HalfLaurent::one(), HalfLaurent::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn json_round_trip() {
        let x = RatFun::new(lp("-q + 1/3"), lp("q^4 - q^2 + 7")).unwrap();
        let v = x.to_json();
        assert_eq!(RatFun::from_json(&v).unwrap(), x);
        assert_eq!(
            RatFun::integer(-2).to_json().to_string(),
            r#"{"den":[[0,1,1]],"num":[[0,-2,1]]}"#
        );
    }

    fn laurent() -> impl Strategy<Value = HalfLaurent> {
        prop::collection::vec((-4i64..5, -3i64..4), 0..5)
            .prop_map(|pairs| HalfLaurent::from_ints(&pairs))
    }

    fn ratfun() -> impl Strategy<Value = RatFun> {
        (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
            RatFun::new(n, d).ok()
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in ratfun(), b in ratfun(), c in ratfun()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() && !b.is_zero() {
                prop_assert!((&(&a / &b) * &(&b / &a)).is_one());
            }
        }

        #[test]
        fn normalization_is_idempotent(a in ratfun()) {
            let again = RatFun::new(a.num().clone(), a.den().clone()).unwrap();
            prop_assert_eq!(&again, &a);
            prop_assert_eq!(rf(&a.to_string()), a);
        }

        #[test]
        fn cancelling_a_factor_preserves_values(f in laurent(), g in laurent(), p in prop::sample::select(vec![2u64, 3, 5])) {
            prop_assume!(!g.is_zero());
            let even = |h: &HalfLaurent| HalfLaurent::from_terms(h.terms().map(|(k, c)| (2 * k, c.clone())));
            let (f, g) = (even(&f), even(&g));
            let direct = RatFun::from_laurent(f.clone()).evaluate_at_prime(p);
            let via = RatFun::new(&f * &g, g.clone()).unwrap().evaluate_at_prime(p);
            prop_assert_eq!(direct, via);
        }

        #[test]
        fn adams_is_a_ring_map(a in ratfun(), b in ratfun(), n in 1u32..4) {
            prop_assert_eq!((&a * &b).adams(n), &a.adams(n) * &b.adams(n));
            prop_assert_eq!((&a + &b).adams(n), &a.adams(n) + &b.adams(n));
        }
    }
}
