//! The framed quantum torus of the conifold quiver, stability parameters and
//! ray factorization.
//!
//! Framed monomials `y^(a0, a1, ainf)` multiply by
//! `y^a * y^b = (-q)^<a,b> y^(a+b)` with `<a,b> = a0*b_inf - a_inf*b0`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::{array, field, value_u32};
use crate::ring::RatFun;
use crate::series::{sum_all, DimVec, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct FramedDimVec {
    pub a0: u32,
    pub a1: u32,
    pub ainf: u32,
}

impl FramedDimVec {
    pub const ZERO: FramedDimVec = FramedDimVec::new(0, 0, 0);
    pub const Y_INF: FramedDimVec = FramedDimVec::new(0, 0, 1);

    pub const fn new(a0: u32, a1: u32, ainf: u32) -> Self {
        Self { a0, a1, ainf }
    }

    pub fn unframed(a: DimVec) -> Self {
        Self::new(a.a0, a.a1, 0)
    }

    pub fn base(self) -> DimVec {
        DimVec::new(self.a0, self.a1)
    }

    pub fn degree(self) -> u32 {
        self.a0 + self.a1 + self.ainf
    }

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn checked_sub(self, o: Self) -> Option<Self> {
        Some(Self::new(
            self.a0.checked_sub(o.a0)?,
            self.a1.checked_sub(o.a1)?,
            self.ainf.checked_sub(o.ainf)?,
        ))
    }
}

impl std::ops::Add for FramedDimVec {
    type Output = FramedDimVec;
    fn add(self, o: Self) -> Self {
        Self::new(self.a0 + o.a0, self.a1 + o.a1, self.ainf + o.ainf)
    }
}

impl Ord for FramedDimVec {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.ainf, self.a0).cmp(&(other.degree(), other.ainf, other.a0))
    }
}

impl PartialOrd for FramedDimVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FramedDimVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a0, self.a1, self.ainf)
    }
}

pub fn skew_form(a: FramedDimVec, b: FramedDimVec) -> i64 {
    a.a0 as i64 * b.ainf as i64 - a.ainf as i64 * b.a0 as i64
}

/// Element of the framed quantum torus.
///
/// Truncated at `a0 + a1 <= order` and `ainf <= frame_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedSeries {
    order: u32,
    frame_order: u32,
    coeffs: BTreeMap<FramedDimVec, RatFun>,
}

impl FramedSeries {
    pub fn zero(order: u32, frame_order: u32) -> Self {
        Self {
            order,
            frame_order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32, frame_order: u32) -> Self {
        Self::monomial(order, frame_order, FramedDimVec::ZERO, RatFun::one())
    }

    pub fn monomial(order: u32, frame_order: u32, e: FramedDimVec, c: RatFun) -> Self {
        let mut out = Self::zero(order, frame_order);
        out.add_to(e, &c);
        out
    }

    /// `y_inf` itself.
    pub fn y_inf(order: u32, frame_order: u32) -> Self {
        Self::monomial(order, frame_order, FramedDimVec::Y_INF, RatFun::one())
    }

    /// Embeds an unframed series at `ainf = 0`.
    pub fn from_series(f: &TruncSeries, frame_order: u32) -> Self {
        let mut out = Self::zero(f.order(), frame_order);
        for (e, c) in f.terms() {
            out.add_to(FramedDimVec::unframed(e), c);
        }
        out
    }

    pub fn from_terms<I>(order: u32, frame_order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (FramedDimVec, RatFun)>,
    {
        let mut out = Self::zero(order, frame_order);
        for (e, c) in terms {
            out.add_to(e, &c);
        }
        out
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn frame_order(&self) -> u32 {
        self.frame_order
    }

    fn fits(&self, e: FramedDimVec) -> bool {
        e.a0 + e.a1 <= self.order && e.ainf <= self.frame_order
    }

    pub fn add_to(&mut self, e: FramedDimVec, c: &RatFun) {
        if !self.fits(e) || c.is_zero() {
            return;
        }
        let sum = match self.coeffs.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, sum);
        }
    }

    pub fn coeff(&self, e: FramedDimVec) -> RatFun {
        self.coeffs.get(&e).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (FramedDimVec, &RatFun)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self.coeffs.get(&FramedDimVec::ZERO).is_some_and(RatFun::is_one)
    }

    /// The coefficients at a fixed framing degree, as an unframed series.
    pub fn frame_slice(&self, ainf: u32) -> TruncSeries {
        TruncSeries::from_terms(
            self.order,
            self.coeffs
                .iter()
                .filter(|(e, _)| e.ainf == ainf)
                .map(|(e, c)| (e.base(), c.clone())),
        )
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        if self.frame_order != other.frame_order {
            return Err(Error::OrderMismatch(self.frame_order, other.frame_order));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_to(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_to(e, &-c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        Self::from_terms(
            self.order,
            self.frame_order,
            self.coeffs.iter().map(|(&e, x)| (e, x * c)),
        )
    }

    pub fn twisted_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<FramedDimVec, Vec<RatFun>> = BTreeMap::new();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &other.coeffs {
                let e = a + b;
                if !self.fits(e) {
                    continue;
                }
                let mut c = x * y;
                let k = skew_form(a, b);
                if k != 0 {
                    c = &c * &RatFun::neg_q_pow(k);
                }
                acc.entry(e).or_default().push(c);
            }
        }
        let mut out = Self::zero(self.order, self.frame_order);
        for (e, parts) in acc {
            out.add_to(e, &sum_all(parts));
        }
        Ok(out)
    }

    /// Two-sided inverse for the twisted product.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeff(FramedDimVec::ZERO);
        if c0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let c0_inv = c0.inv()?;
        let mut out = Self::monomial(self.order, self.frame_order, FramedDimVec::ZERO, c0_inv.clone());
        let mut keys = Vec::new();
        for ainf in 0..=self.frame_order {
            for d in 0..=self.order {
                for a0 in 0..=d {
                    keys.push(FramedDimVec::new(a0, d - a0, ainf));
                }
            }
        }
        keys.sort();
        for gamma in keys.into_iter().skip(1) {
            // solve (A * B)_gamma = 0 for B_gamma
            let mut parts = Vec::new();
            for (&beta, a) in &self.coeffs {
                if beta.is_zero() {
                    continue;
                }
                let Some(rest) = gamma.checked_sub(beta) else {
                    continue;
                };
                if let Some(b) = out.coeffs.get(&rest) {
                    parts.push(&(a * b) * &RatFun::neg_q_pow(skew_form(beta, rest)));
                }
            }
            let s = sum_all(parts);
            out.add_to(gamma, &-(&s * &c0_inv));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(e, c)| json!({ "exp": [e.a0, e.a1, e.ainf], "coeff": c.to_json() }))
            .collect();
        json!({
            "vars": ["y0", "y1", "yinf"],
            "order": self.order,
            "frame_order": self.frame_order,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let mut out = Self::zero(
            value_u32(field(v, "order")?)?,
            value_u32(field(v, "frame_order")?)?,
        );
        for t in array(field(v, "terms")?)? {
            let e = array(field(t, "exp")?)?;
            if e.len() != 3 {
                return Err(Error::Parse("framed exponent must have 3 entries".into()));
            }
            let exp = FramedDimVec::new(value_u32(&e[0])?, value_u32(&e[1])?, value_u32(&e[2])?);
            if !out.fits(exp) {
                return Err(Error::Parse(format!("term {exp} exceeds the truncation")));
            }
            out.add_to(exp, &RatFun::from_json(field(t, "coeff")?)?);
        }
        Ok(out)
    }
}

impl fmt::Display for FramedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in &self.coeffs {
            writeln!(f, "y0^{} y1^{} yinf^{} : {c}", e.a0, e.a1, e.ainf)?;
        }
        Ok(())
    }
}

/// `rat + eps * epsilon` with `epsilon` a positive infinitesimal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dual {
    pub rat: BigRational,
    pub eps: BigRational,
}

impl Dual {
    pub fn new(rat: BigRational, eps: BigRational) -> Self {
        Self { rat, eps }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn signum(&self) -> i32 {
        let s = if self.rat.is_zero() { &self.eps } else { &self.rat };
        if s.is_zero() {
            0
        } else if s.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.eps.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.rat * c, &self.eps * c)
    }
}

impl std::ops::Sub for &Dual {
    type Output = Dual;
    fn sub(self, o: &Dual) -> Dual {
        Dual::new(&self.rat - &o.rat, &self.eps - &o.eps)
    }
}

impl Ord for Dual {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.rat, &self.eps).cmp(&(&other.rat, &other.eps))
    }
}

impl PartialOrd for Dual {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.eps.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}e", self.eps),
            (false, false) if self.eps.is_negative() => {
                write!(f, "{} - {}e", self.rat, -&self.eps)
            }
            (false, false) => write!(f, "{} + {}e", self.rat, self.eps),
        }
    }
}

/// Stability parameter `zeta + epsilon * eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub zeta: (BigRational, BigRational),
    pub eps: (BigRational, BigRational),
}

impl Stability {
    pub fn new(zeta: (BigRational, BigRational), eps: (BigRational, BigRational)) -> Result<Self> {
        let s = Self { zeta, eps };
        if s.zeta.0.is_zero() && s.zeta.1.is_zero() && s.eps.0.is_zero() && s.eps.1.is_zero() {
            return Err(Error::ZeroStability);
        }
        Ok(s)
    }

    /// Integer convenience constructor.
    pub fn from_ints(zeta: (i64, i64), eps: (i64, i64)) -> Result<Self> {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        Self::new((r(zeta.0), r(zeta.1)), (r(eps.0), r(eps.1)))
    }

    /// `zeta . a` as a dual number.
    pub fn pairing(&self, a: DimVec) -> Dual {
        let a0 = BigRational::from_integer(a.a0.into());
        let a1 = BigRational::from_integer(a.a1.into());
        Dual::new(
            &self.zeta.0 * &a0 + &self.zeta.1 * &a1,
            &self.eps.0 * &a0 + &self.eps.1 * &a1,
        )
    }

    /// Multiplies both parts by a positive rational.
    pub fn rescale(&self, c: &BigRational) -> Self {
        assert!(c.is_positive());
        Self {
            zeta: (&self.zeta.0 * c, &self.zeta.1 * c),
            eps: (&self.eps.0 * c, &self.eps.1 * c),
        }
    }

    pub fn parse(zeta: &str, eps: Option<&str>) -> Result<Self> {
        let pair = |s: &str| -> Result<(BigRational, BigRational)> {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            if parts.len() != 2 {
                return Err(Error::Parse(format!("expected two comma separated rationals, got `{s}`")));
            }
            let r = |t: &str| {
                t.parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad rational `{t}`")))
            };
            Ok((r(parts[0])?, r(parts[1])?))
        };
        let z = pair(zeta)?;
        let e = match eps {
            Some(e) => pair(e)?,
            None => (BigRational::zero(), BigRational::zero()),
        };
        Self::new(z, e)
    }
}

pub fn slope(zs: &Stability, a: DimVec) -> Result<Dual> {
    if a.is_zero() {
        return Err(Error::ZeroDimension);
    }
    let n = BigRational::new(BigInt::from(1), BigInt::from(a.total()));
    Ok(zs.pairing(a).scale(&n))
}

/// Rays of the framed quantum torus; every framed monomial lies on `Framing`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RayKey {
    Slope(Dual),
    Framing,
}

impl RayKey {
    fn of(zs: &Stability, e: FramedDimVec) -> Result<Self> {
        if e.ainf > 0 {
            Ok(RayKey::Framing)
        } else {
            slope(zs, e.base()).map(RayKey::Slope)
        }
    }

    // rank in product order: positive slopes descending, zero slope, framing, negative slopes
    fn rank(&self) -> (u8, Option<std::cmp::Reverse<&Dual>>) {
        match self {
            RayKey::Slope(d) if d.signum() >= 0 => (0, Some(std::cmp::Reverse(d))),
            RayKey::Framing => (1, None),
            RayKey::Slope(d) => (2, Some(std::cmp::Reverse(d))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RayKey::Slope(d) => json!({
                "slope": { "rat": d.rat.to_string(), "eps": d.eps.to_string() },
                "framing": false,
            }),
            RayKey::Framing => json!({ "slope": null, "framing": true }),
        }
    }
}

impl Ord for RayKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for RayKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RayKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RayKey::Slope(d) => write!(f, "slope {d}"),
            RayKey::Framing => write!(f, "framing"),
        }
    }
}

/// Ordered product of factors.
pub fn ordered_product(factors: &[(RayKey, FramedSeries)], order: u32, frame_order: u32) -> Result<FramedSeries> {
    let mut out = FramedSeries::one(order, frame_order);
    for (_, f) in factors {
        out = out.twisted_mul(f)?;
    }
    Ok(out)
}

/// Factors `a` as an ordered product of single-ray series.
///
/// Factors come in product order and each has constant term 1.
pub fn ray_factorize(a: &FramedSeries, zs: &Stability) -> Result<Vec<(RayKey, FramedSeries)>> {
    if !a.coeff(FramedDimVec::ZERO).is_one() {
        return Err(Error::NonUnitConstantTerm);
    }
    let (order, frame_order) = (a.order(), a.frame_order());
    let mut factors: BTreeMap<RayKey, FramedSeries> = BTreeMap::new();
    for d in 1..=order + frame_order {
        let current: Vec<(RayKey, FramedSeries)> =
            factors.iter().map(|(k, f)| (k.clone(), f.clone())).collect();
        let residual = a.sub(&ordered_product(&current, order, frame_order)?)?;
        for (e, c) in residual.terms() {
            if e.degree() != d {
                continue;
            }
            let key = RayKey::of(zs, e)?;
            factors
                .entry(key)
                .or_insert_with(|| FramedSeries::one(order, frame_order))
                .add_to(e, c);
        }
    }
    Ok(factors.into_iter().filter(|(_, f)| !f.is_one()).collect())
}

pub fn factorization_to_json(factors: &[(RayKey, FramedSeries)]) -> Value {
    Value::Array(
        factors
            .iter()
            .map(|(k, f)| {
                let mut v = k.to_json();
                v["series"] = f.to_json();
                v
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn fd(a0: u32, a1: u32, ainf: u32) -> FramedDimVec {
        FramedDimVec::new(a0, a1, ainf)
    }

    fn mono(e: FramedDimVec) -> FramedSeries {
        FramedSeries::monomial(4, 2, e, RatFun::one())
    }

    #[test]
    fn skew_form_examples() {
        assert_eq!(skew_form(fd(2, 3, 0), fd(1, 4, 0)), 0);
        assert_eq!(skew_form(fd(0, 0, 1), fd(3, 1, 0)), -3);
        assert_eq!(skew_form(fd(2, 1, 1), fd(2, 1, 1)), 0);
    }

    #[test]
    fn twisted_mul_examples() {
        let a = mono(fd(0, 0, 1)).twisted_mul(&mono(fd(1, 0, 0))).unwrap();
        assert_eq!(a, FramedSeries::monomial(4, 2, fd(1, 0, 1), RatFun::neg_q_pow(-1)));

        let x = mono(fd(1, 0, 0)).twisted_mul(&mono(fd(0, 1, 0))).unwrap();
        let y = mono(fd(0, 1, 0)).twisted_mul(&mono(fd(1, 0, 0))).unwrap();
        assert_eq!(x, y);
        assert_eq!(x, mono(fd(1, 1, 0)));

        let l = mono(fd(0, 0, 1)).twisted_mul(&mono(fd(2, 0, 0))).unwrap();
        let r = mono(fd(2, 0, 0)).twisted_mul(&mono(fd(0, 0, 1))).unwrap();
        assert_eq!(l, r.scale(&RatFun::q_pow(-4)));
    }

    #[test]
    fn slope_examples() {
        let ncdt = Stability::from_ints((-1, -1), (0, 0)).unwrap();
        assert_eq!(slope(&ncdt, DimVec::new(1, 1)).unwrap().rat, BigRational::from_integer((-1).into()));
        let dt = Stability::from_ints((-1, 1), (-1, 0)).unwrap();
        let s = slope(&dt, DimVec::new(1, 1)).unwrap();
        assert!(s.rat.is_zero());
        assert_eq!(s.eps, BigRational::new((-1).into(), 2.into()));
        assert_eq!(s.signum(), -1);
        let wall = Stability::from_ints((-1, 1), (0, 0)).unwrap();
        assert!(slope(&wall, DimVec::new(1, 1)).unwrap().is_zero());
        assert_eq!(slope(&wall, DimVec::ZERO), Err(Error::ZeroDimension));
        assert_eq!(Stability::from_ints((0, 0), (0, 0)), Err(Error::ZeroStability));
    }

    #[test]
    fn factorize_trivial_and_two_rays() {
        let zs = Stability::from_ints((-1, 3), (0, 0)).unwrap();
        assert!(ray_factorize(&FramedSeries::one(4, 0), &zs).unwrap().is_empty());

        let one = FramedSeries::one(4, 0);
        let f = one.add(&FramedSeries::monomial(4, 0, fd(1, 0, 0), RatFun::one())).unwrap();
        let g = one.add(&FramedSeries::monomial(4, 0, fd(1, 1, 0), RatFun::one())).unwrap();
        let a = f.twisted_mul(&g).unwrap();
        let factors = ray_factorize(&a, &zs).unwrap();
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, RayKey::Slope(Dual::new(r(1), r(0))));
        assert_eq!(factors[0].1, g);
        assert_eq!(factors[1].0, RayKey::Slope(Dual::new(r(-1), r(0))));
        assert_eq!(factors[1].1, f);
    }

    #[test]
    fn invert_and_json() {
        let one = FramedSeries::one(3, 1);
        let a = one
            .add(&FramedSeries::monomial(3, 1, fd(1, 0, 0), RatFun::q_pow(1)))
            .unwrap()
            .add(&FramedSeries::monomial(3, 1, fd(0, 0, 1), RatFun::integer(2)))
            .unwrap();
        let b = a.invert().unwrap();
        assert!(a.twisted_mul(&b).unwrap().is_one());
        assert!(b.twisted_mul(&a).unwrap().is_one());
        assert_eq!(FramedSeries::from_json(&a.to_json()).unwrap(), a);
        assert_eq!(a.to_json()["terms"][1]["exp"], json!([1, 0, 0]));
    }

    fn arb_framed() -> impl Strategy<Value = FramedSeries> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..2, -2i64..3, -2i64..3), 0..5).prop_map(|t| {
            FramedSeries::from_terms(
                3,
                1,
                t.into_iter().map(|(a, b, c, k, n)| {
                    (fd(a, b, c), RatFun::q_pow(k).scale(&BigRational::from_integer(n.into())))
                }),
            )
        })
    }

    fn arb_stability() -> impl Strategy<Value = Stability> {
        (-4i64..5, -4i64..5, -2i64..3, -2i64..3)
            .prop_filter("nonzero", |&(a, b, c, d)| (a, b, c, d) != (0, 0, 0, 0))
            .prop_map(|(a, b, c, d)| Stability::from_ints((a, b), (c, d)).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn associative(a in arb_framed(), b in arb_framed(), c in arb_framed()) {
            let l = a.twisted_mul(&b).unwrap().twisted_mul(&c).unwrap();
            let r = a.twisted_mul(&b.twisted_mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn skew_antisymmetric(a in (0u32..5, 0u32..5, 0u32..3), b in (0u32..5, 0u32..5, 0u32..3)) {
            let (a, b) = (fd(a.0, a.1, a.2), fd(b.0, b.1, b.2));
            prop_assert_eq!(skew_form(a, b), -skew_form(b, a));
        }

        #[test]
        fn unframed_product_is_commutative_product(a in arb_framed(), b in arb_framed()) {
            let fa = FramedSeries::from_series(&a.frame_slice(0), 1);
            let fb = FramedSeries::from_series(&b.frame_slice(0), 1);
            let want = a.frame_slice(0).mul(&b.frame_slice(0)).unwrap();
            prop_assert_eq!(fa.twisted_mul(&fb).unwrap().frame_slice(0), want);
        }

        #[test]
        fn factorization_round_trips(a in arb_framed(), zs in arb_stability()) {
            let mut a = a;
            a.coeffs.insert(FramedDimVec::ZERO, RatFun::one());
            let factors = ray_factorize(&a, &zs).unwrap();
            prop_assert_eq!(ordered_product(&factors, 3, 1).unwrap(), a);
            for (key, f) in &factors {
                let again = ray_factorize(f, &zs).unwrap();
                prop_assert_eq!(again.len(), 1);
                prop_assert_eq!(&again[0].0, key);
                prop_assert_eq!(&again[0].1, f);
            }
        }
    }
}
