//! Truncated commutative power series over [`RatFun`].
//!
//! [`TruncSeries`] lives in `y0, y1` and keeps monomials of total degree at most
//! its order. [`GeomSeries`] lives in the large radius variables `s, T`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{array, field, value_i64, value_u32};
use crate::ring::RatFun;

/// Dimension vector `(a0, a1)`; ordered by total degree, then by `a0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct DimVec {
    pub a0: u32,
    pub a1: u32,
}

impl DimVec {
    pub const ZERO: DimVec = DimVec { a0: 0, a1: 0 };

    pub const fn new(a0: u32, a1: u32) -> Self {
        Self { a0, a1 }
    }

    pub fn total(self) -> u32 {
        self.a0 + self.a1
    }

    pub fn is_zero(self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    pub fn scaled(self, n: u32) -> Self {
        Self::new(self.a0 * n, self.a1 * n)
    }

    pub fn checked_sub(self, other: Self) -> Option<Self> {
        Some(Self::new(
            self.a0.checked_sub(other.a0)?,
            self.a1.checked_sub(other.a1)?,
        ))
    }

    pub fn component(self, which: Var) -> u32 {
        match which {
            Var::Y0 => self.a0,
            Var::Y1 => self.a1,
        }
    }
}

impl std::ops::Add for DimVec {
    type Output = DimVec;
    fn add(self, rhs: DimVec) -> DimVec {
        DimVec::new(self.a0 + rhs.a0, self.a1 + rhs.a1)
    }
}

impl Ord for DimVec {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.total(), self.a0).cmp(&(other.total(), other.a0))
    }
}

impl PartialOrd for DimVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a0, self.a1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Y0,
    Y1,
}

/// A factor `(1 - coeff * y^base)`, or its inverse.
#[derive(Clone, Debug)]
pub struct LinearFactor {
    pub base: DimVec,
    pub coeff: RatFun,
    pub inverse: bool,
}

impl LinearFactor {
    pub fn new(base: DimVec, coeff: RatFun) -> Self {
        Self {
            base,
            coeff,
            inverse: false,
        }
    }

    pub fn inverted(base: DimVec, coeff: RatFun) -> Self {
        Self {
            base,
            coeff,
            inverse: true,
        }
    }
}

/// Power series in `y0, y1` truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    order: u32,
    coeffs: BTreeMap<DimVec, RatFun>,
}

impl TruncSeries {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::monomial(order, DimVec::ZERO, RatFun::one())
    }

    pub fn constant(order: u32, c: RatFun) -> Self {
        Self::monomial(order, DimVec::ZERO, c)
    }

    pub fn monomial(order: u32, exp: DimVec, c: RatFun) -> Self {
        let mut out = Self::zero(order);
        out.set(exp, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (DimVec, RatFun)>>(order: u32, terms: I) -> Self {
        let mut out = Self::zero(order);
        for (e, c) in terms {
            out.add_to(e, &c);
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, exp: DimVec) -> RatFun {
        self.coeffs.get(&exp).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn coeff_ref(&self, exp: DimVec) -> Option<&RatFun> {
        self.coeffs.get(&exp)
    }

    pub fn constant_term(&self) -> RatFun {
        self.coeff(DimVec::ZERO)
    }

    /// Terms in the order (total degree, a0).
    pub fn terms(&self) -> impl Iterator<Item = (DimVec, &RatFun)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&DimVec::ZERO).is_some_and(RatFun::is_one)
    }

    pub fn set(&mut self, exp: DimVec, c: RatFun) {
        if exp.total() > self.order || c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn add_to(&mut self, exp: DimVec, c: &RatFun) {
        if exp.total() > self.order || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&exp) {
            Some(old) => old + c,
            None => c.clone(),
        };
        self.set(exp, sum);
    }

    /// Drops every term above the new order.
    pub fn truncate(&self, order: u32) -> Self {
        Self {
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.total() <= order)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<F: FnMut(DimVec, &RatFun) -> RatFun>(&self, mut f: F) -> Self {
        Self::from_terms(self.order, self.coeffs.iter().map(|(&e, c)| (e, f(e, c))))
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        self.map_coeffs(|_, x| x * c)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_to(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| -c)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let mut acc: BTreeMap<DimVec, Vec<RatFun>> = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                let e = a + b;
                if e.total() <= self.order {
                    acc.entry(e).or_default().push(x * y);
                }
            }
        }
        Ok(Self::from_sums(self.order, acc))
    }

    fn from_sums(order: u32, acc: BTreeMap<DimVec, Vec<RatFun>>) -> Self {
        let mut out = Self::zero(order);
        for (e, parts) in acc {
            out.set(e, sum_all(parts));
        }
        out
    }

    /// Multiplicative inverse up to the order.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let c0_inv = c0.inv()?;
        let mut out = Self::constant(self.order, c0_inv.clone());
        for gamma in exponents_up_to(self.order).into_iter().skip(1) {
            let mut parts = Vec::new();
            for (&beta, f) in self.coeffs.range(..=gamma) {
                if beta.is_zero() {
                    continue;
                }
                if let Some(rest) = gamma.checked_sub(beta) {
                    if let Some(g) = out.coeffs.get(&rest) {
                        parts.push(f * g);
                    }
                }
            }
            let s = sum_all(parts);
            out.set(gamma, -&(&s * &c0_inv));
        }
        Ok(out)
    }

    /// Substitution `y_which -> c * y_which`.
    pub fn scale_variable(&self, which: Var, c: &RatFun) -> Self {
        let mut powers = vec![RatFun::one()];
        self.map_coeffs(|e, x| {
            let k = e.component(which) as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * c;
                powers.push(next);
            }
            x * &powers[k]
        })
    }

    /// Multiplies in place by `(1 - c*y^base)` or its inverse.
    pub fn mul_linear_factor(&mut self, factor: &LinearFactor) {
        let base = factor.base;
        assert!(!base.is_zero(), "linear factor needs a positive degree monomial");
        if base.total() > self.order || factor.coeff.is_zero() {
            return;
        }
        let keys: Vec<DimVec> = exponents_up_to(self.order);
        if factor.inverse {
            // g = f + c*y^base*g, solved upwards
            for &e in &keys {
                if let Some(src) = e.checked_sub(base) {
                    if let Some(prev) = self.coeffs.get(&src) {
                        let add = prev * &factor.coeff;
                        self.add_to(e, &add);
                    }
                }
            }
        } else {
            for &e in keys.iter().rev() {
                if let Some(src) = e.checked_sub(base) {
                    if let Some(prev) = self.coeffs.get(&src) {
                        let sub = -&(prev * &factor.coeff);
                        self.add_to(e, &sub);
                    }
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| json!({ "exp": [e.a0, e.a1], "coeff": c.to_json() }))
            .collect();
        json!({ "vars": ["y0", "y1"], "order": self.order, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = value_u32(field(v, "order")?)?;
        let mut out = Self::zero(order);
        for t in array(field(v, "terms")?)? {
            let e = array(field(t, "exp")?)?;
            if e.len() != 2 {
                return Err(Error::Parse("series exponent must have 2 entries".into()));
            }
            let exp = DimVec::new(value_u32(&e[0])?, value_u32(&e[1])?);
            if exp.total() > order {
                return Err(Error::Parse(format!("term {exp} exceeds order {order}")));
            }
            out.add_to(exp, &RatFun::from_json(field(t, "coeff")?)?);
        }
        Ok(out)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.coeffs {
            writeln!(f, "y0^{} y1^{} : {c}", e.a0, e.a1)?;
        }
        Ok(())
    }
}

pub(crate) fn sum_all(parts: Vec<RatFun>) -> RatFun {
    // pairwise summation keeps intermediate denominators small
    let mut layer = parts;
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap_or_else(RatFun::zero)
}

/// All exponents of total degree at most `order`, in series order.
pub fn exponents_up_to(order: u32) -> Vec<DimVec> {
    let mut out = Vec::new();
    for d in 0..=order {
        for a0 in 0..=d {
            out.push(DimVec::new(a0, d - a0));
        }
    }
    out
}

/// Truncated product of a family of linear factors.
///
/// Factors whose base monomial exceeds the order are skipped since they
/// cannot contribute.
pub fn product_family<I>(factors: I, order: u32) -> TruncSeries
where
    I: IntoIterator<Item = LinearFactor>,
{
    let mut out = TruncSeries::one(order);
    for f in factors {
        if f.base.total() <= order {
            out.mul_linear_factor(&f);
        }
    }
    out
}

/// Product of one-variable series `prod_{k<=order} (1 - y0^k ...)`-style families is
/// covered by [`product_family`]; this converts to the large radius variables
/// `T = y1^{-1}`, `s = y0 y1`, i.e. `y0^a y1^b -> s^a T^{a-b}`.
pub fn to_geometric(f: &TruncSeries) -> Result<GeomSeries> {
    if let Some((e, _)) = f.terms().find(|(e, _)| e.a0 < e.a1) {
        return Err(Error::NegativeCurveExponent(e));
    }
    Ok(to_geometric_laurent(f))
}

/// Like [`to_geometric`] but allows negative powers of `T`.
pub fn to_geometric_laurent(f: &TruncSeries) -> GeomSeries {
    let mut out = GeomSeries::zero(f.order(), f.order());
    for (e, c) in f.terms() {
        out.add_to(e.a0, e.a0 as i32 - e.a1 as i32, c);
    }
    out
}

/// Power series in `s` and `T` with independent truncations.
///
/// Keys are `(s-exponent, T-exponent)` with `s <= s_order` and `|T| <= t_order`.
/// Negative `T` exponents only arise for chambers on the flop side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomSeries {
    s_order: u32,
    t_order: u32,
    coeffs: BTreeMap<(u32, i32), RatFun>,
}

impl GeomSeries {
    pub fn zero(s_order: u32, t_order: u32) -> Self {
        Self {
            s_order,
            t_order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(s_order: u32, t_order: u32) -> Self {
        let mut out = Self::zero(s_order, t_order);
        out.add_to(0, 0, &RatFun::one());
        out
    }

    pub fn s_order(&self) -> u32 {
        self.s_order
    }

    pub fn t_order(&self) -> u32 {
        self.t_order
    }

    fn in_range(&self, s: u32, t: i32) -> bool {
        s <= self.s_order && t.unsigned_abs() <= self.t_order
    }

    pub fn add_to(&mut self, s: u32, t: i32, c: &RatFun) {
        if !self.in_range(s, t) || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&(s, t)) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&(s, t));
        } else {
            self.coeffs.insert((s, t), sum);
        }
    }

    pub fn coeff(&self, s: u32, t: i32) -> RatFun {
        self.coeffs.get(&(s, t)).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, i32), &RatFun)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn truncate(&self, s_order: u32, t_order: u32) -> Self {
        let mut out = Self::zero(s_order, t_order);
        for (&(s, t), c) in &self.coeffs {
            out.add_to(s, t, c);
        }
        out
    }

    /// The coefficient of `T^t`, as a series in `s` alone.
    pub fn t_slice(&self, t: i32) -> Self {
        let mut out = Self::zero(self.s_order, self.t_order);
        for (&(s, tt), c) in &self.coeffs {
            if tt == t {
                out.add_to(s, 0, c);
            }
        }
        out
    }

    /// Substitution `s -> -s`.
    pub fn negate_s(&self) -> Self {
        let mut out = Self::zero(self.s_order, self.t_order);
        for (&(s, t), c) in &self.coeffs {
            let c = if s % 2 == 1 { -c } else { c.clone() };
            out.add_to(s, t, &c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if (self.s_order, self.t_order) != (other.s_order, other.t_order) {
            return Err(Error::OrderMismatch(self.s_order, other.s_order));
        }
        let mut acc: BTreeMap<(u32, i32), Vec<RatFun>> = BTreeMap::new();
        for (&(s1, t1), x) in &self.coeffs {
            for (&(s2, t2), y) in &other.coeffs {
                let (s, t) = (s1 + s2, t1 + t2);
                if self.in_range(s, t) {
                    acc.entry((s, t)).or_default().push(x * y);
                }
            }
        }
        let mut out = Self::zero(self.s_order, self.t_order);
        for (k, parts) in acc {
            out.add_to(k.0, k.1, &sum_all(parts));
        }
        Ok(out)
    }

    /// Multiplies in place by `(1 - c s^a T^t)` or its inverse; requires `a > 0` and `t >= 0`.
    pub fn mul_linear_factor(&mut self, s_exp: u32, t_exp: i32, c: &RatFun, inverse: bool) {
        assert!(s_exp > 0 && t_exp >= 0, "factor must have positive s-degree");
        let mut keys: Vec<(u32, i32)> = Vec::new();
        let t_lo = -(self.t_order as i32);
        for s in 0..=self.s_order {
            for t in t_lo..=self.t_order as i32 {
                keys.push((s, t));
            }
        }
        let step = |this: &mut Self, key: (u32, i32)| {
            let (s, t) = key;
            if s < s_exp {
                return;
            }
            if let Some(prev) = this.coeffs.get(&(s - s_exp, t - t_exp)) {
                let delta = prev * c;
                let delta = if inverse { delta } else { -&delta };
                this.add_to(s, t, &delta);
            }
        };
        if inverse {
            for k in keys {
                step(self, k);
            }
        } else {
            for k in keys.into_iter().rev() {
                step(self, k);
            }
        }
    }

    /// Applies `q -> 1` to every coefficient.
    pub fn euler_specialize(&self) -> Result<BTreeMap<(u32, i32), BigRational>> {
        let mut out = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let v = c.euler_specialize()?;
            if v != BigRational::from_integer(0.into()) {
                out.insert(k, v);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(&(s, t), c)| json!({ "exp": [s, t], "coeff": c.to_json() }))
            .collect();
        json!({
            "vars": ["s", "T"],
            "s_order": self.s_order,
            "t_order": self.t_order,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut out = Self::zero(
            value_u32(field(v, "s_order")?)?,
            value_u32(field(v, "t_order")?)?,
        );
        for t in array(field(v, "terms")?)? {
            let e = array(field(t, "exp")?)?;
            if e.len() != 2 {
                return Err(Error::Parse("series exponent must have 2 entries".into()));
            }
            let s = value_u32(&e[0])?;
            let tt = i32::try_from(value_i64(&e[1])?)
                .map_err(|_| Error::Parse("T exponent out of range".into()))?;
            out.add_to(s, tt, &RatFun::from_json(field(t, "coeff")?)?);
        }
        Ok(out)
    }
}

impl fmt::Display for GeomSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(s, t), c) in &self.coeffs {
            writeln!(f, "s^{s} T^{t} : {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(s: &str) -> RatFun {
        s.parse().unwrap()
    }

    fn series(order: u32, terms: &[((u32, u32), &str)]) -> TruncSeries {
        TruncSeries::from_terms(
            order,
            terms.iter().map(|&((a, b), c)| (DimVec::new(a, b), rf(c))),
        )
    }

    #[test]
    fn mul_examples() {
        let a = series(3, &[((0, 0), "1"), ((1, 0), "1")]);
        let b = series(3, &[((0, 0), "1"), ((1, 0), "-1")]);
        assert_eq!(a.mul(&b).unwrap(), series(3, &[((0, 0), "1"), ((2, 0), "-1")]));
        assert_eq!(a.mul(&TruncSeries::one(3)).unwrap(), a);

        let c = series(2, &[((0, 0), "1"), ((1, 0), "1")]);
        let d = series(2, &[((0, 0), "1"), ((1, 1), "1")]);
        assert_eq!(
            c.mul(&d).unwrap(),
            series(2, &[((0, 0), "1"), ((1, 0), "1"), ((1, 1), "1")])
        );
        assert_eq!(a.mul(&c), Err(Error::OrderMismatch(3, 2)));
    }

    #[test]
    fn invert_examples() {
        let f = series(4, &[((0, 0), "1"), ((1, 0), "-1")]);
        let geo = TruncSeries::from_terms(4, (0..=4).map(|k| (DimVec::new(k, 0), RatFun::one())));
        assert_eq!(f.invert().unwrap(), geo);
        assert!(TruncSeries::one(4).invert().unwrap().is_one());

        let g = f.scale(&rf("q"));
        assert_eq!(g.invert().unwrap(), geo.scale(&rf("q^-1")));
        assert_eq!(
            series(4, &[((1, 0), "1")]).invert(),
            Err(Error::NonUnitConstantTerm)
        );
    }

    #[test]
    fn scale_variable_examples() {
        let f = series(3, &[((0, 0), "1"), ((1, 0), "1")]);
        assert_eq!(
            f.scale_variable(Var::Y0, &rf("-q")),
            series(3, &[((0, 0), "1"), ((1, 0), "-q")])
        );
        assert_eq!(f.scale_variable(Var::Y0, &RatFun::one()), f);
        let g = series(3, &[((0, 0), "1"), ((1, 1), "1")]);
        assert_eq!(
            g.scale_variable(Var::Y0, &rf("q^2")),
            series(3, &[((0, 0), "1"), ((1, 1), "q^2")])
        );
    }

    #[test]
    fn product_family_examples() {
        let one = product_family(vec![LinearFactor::new(DimVec::new(1, 0), RatFun::one())], 3);
        assert_eq!(one, series(3, &[((0, 0), "1"), ((1, 0), "-1")]));
        assert!(product_family(Vec::new(), 3).is_one());

        // (1 + y0)(1 - q^-1 y0^2 y1)(1 - q y0^2 y1)
        let pt = product_family(
            vec![
                LinearFactor::new(DimVec::new(1, 0), rf("-1")),
                LinearFactor::new(DimVec::new(2, 1), rf("q^-1")),
                LinearFactor::new(DimVec::new(2, 1), rf("q")),
            ],
            3,
        );
        assert_eq!(pt.coeff(DimVec::new(2, 1)), rf("-q - q^-1"));
        assert_eq!(pt.coeff(DimVec::new(1, 0)), RatFun::one());
    }

    #[test]
    fn inverse_linear_factor_is_geometric_series() {
        let f = product_family(vec![LinearFactor::inverted(DimVec::new(1, 1), rf("q"))], 6);
        for k in 0..=3u32 {
            assert_eq!(f.coeff(DimVec::new(k, k)), RatFun::q_pow(k as i64));
        }
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn geometric_conversion() {
        let f = series(3, &[((2, 1), "1"), ((1, 1), "q")]);
        let g = to_geometric(&f).unwrap();
        assert_eq!(g.coeff(2, 1), RatFun::one());
        assert_eq!(g.coeff(1, 0), rf("q"));
        assert_eq!(
            to_geometric(&series(3, &[((0, 1), "1")])),
            Err(Error::NegativeCurveExponent(DimVec::new(0, 1)))
        );
        assert_eq!(to_geometric_laurent(&series(3, &[((0, 1), "1")])).coeff(0, -1), RatFun::one());
    }

    #[test]
    fn json_shape() {
        let f = series(2, &[((1, 0), "-1"), ((0, 0), "1")]);
        let v = f.to_json();
        assert_eq!(v["vars"], json!(["y0", "y1"]));
        assert_eq!(v["terms"][0]["exp"], json!([0, 0]));
        assert_eq!(TruncSeries::from_json(&v).unwrap(), f);
        assert_eq!(f.to_string(), "y0^0 y1^0 : 1\ny0^1 y1^0 : -1\n");
    }

    fn small_series(order: u32) -> impl Strategy<Value = TruncSeries> {
        prop::collection::vec((0u32..4, 0u32..4, -2i64..3, -2i64..3), 0..6).prop_map(
            move |terms| {
                TruncSeries::from_terms(
                    order,
                    terms.into_iter().map(|(a, b, k, c)| {
                        (DimVec::new(a, b), RatFun::q_pow(k).scale(&BigRational::from_integer(c.into())))
                    }),
                )
            },
        )
    }

    fn unit_series(order: u32) -> impl Strategy<Value = TruncSeries> {
        (small_series(order), -2i64..3).prop_map(move |(f, k)| {
            let mut f = f;
            f.set(DimVec::ZERO, RatFun::q_pow(k));
            f
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_laws(f in small_series(4), g in small_series(4), h in small_series(4)) {
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            prop_assert_eq!(f.mul(&TruncSeries::one(4)).unwrap(), f);
        }

        #[test]
        fn invert_round_trip(f in unit_series(5)) {
            prop_assert!(f.mul(&f.invert().unwrap()).unwrap().is_one());
        }

        #[test]
        fn scale_variable_inverts(f in small_series(5), k in -3i64..4) {
            let c = RatFun::neg_q_pow(k);
            let back = f.scale_variable(Var::Y0, &c).scale_variable(Var::Y0, &c.inv().unwrap());
            prop_assert_eq!(back, f);
        }

        #[test]
        fn geometric_map_is_multiplicative(f in small_series(6), g in small_series(6)) {
            let keep = |s: &TruncSeries| TruncSeries::from_terms(
                s.order(), s.terms().filter(|(e, _)| e.a0 >= e.a1).map(|(e, c)| (e, c.clone())));
            let (f, g) = (keep(&f), keep(&g));
            // s-degree <= 3 only depends on y-degree <= 6
            let lhs = to_geometric(&f.mul(&g).unwrap()).unwrap().truncate(3, 3);
            let rhs = to_geometric(&f).unwrap().mul(&to_geometric(&g).unwrap()).unwrap().truncate(3, 3);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
