use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::context::{Context, PRECISION_LEVELS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn negate(self) -> Self {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A real number `c0 + Σ ci·θi` with rational `ci` over the generators `θi`
/// of its context.
#[derive(Clone)]
pub struct ExactNumber {
    ctx: Context,
    coeffs: Vec<BigRational>,
}

impl ExactNumber {
    pub fn zero(ctx: &Context) -> Self {
        ExactNumber {
            ctx: ctx.clone(),
            coeffs: vec![BigRational::zero(); ctx.width()],
        }
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_i64(ctx: &Context, v: i64) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(v.into()))
    }

    pub fn from_bigint(ctx: &Context, v: &BigInt) -> Self {
        Self::from_rational(ctx, BigRational::from_integer(v.clone()))
    }

    pub fn from_rational(ctx: &Context, v: BigRational) -> Self {
        let mut n = Self::zero(ctx);
        n.coeffs[0] = v;
        n
    }

    pub fn ratio(ctx: &Context, numer: i64, denom: i64) -> Self {
        Self::from_rational(ctx, BigRational::new(numer.into(), denom.into()))
    }

    pub fn generator(ctx: &Context, name: &str) -> Result<Self> {
        let i = ctx
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
        let mut n = Self::zero(ctx);
        n.coeffs[i + 1] = BigRational::one();
        Ok(n)
    }

    pub fn from_coeffs(ctx: &Context, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != ctx.width() {
            return Err(Error::DimensionMismatch {
                expected: ctx.width(),
                got: coeffs.len(),
            });
        }
        Ok(ExactNumber {
            ctx: ctx.clone(),
            coeffs,
        })
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn has_opaque(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && self.ctx.is_opaque_slot(i))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        ExactNumber {
            ctx: self.ctx.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        ExactNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        ExactNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `(u, v)` with `self = u + v·sqrt(D)`; `None` when opaque generators
    /// are involved. Without a quadratic generator `v = 0`.
    fn to_surd(&self) -> Option<(BigRational, BigRational)> {
        if self.has_opaque() {
            return None;
        }
        match (self.ctx.quadratic_slot(), self.ctx.quadratic_data()) {
            (Some(k), Some((_, p, q))) => {
                let c = &self.coeffs[k];
                Some((&self.coeffs[0] + c * p, c * q))
            }
            _ => Some((self.coeffs[0].clone(), BigRational::zero())),
        }
    }

    fn from_surd(ctx: &Context, u: BigRational, v: BigRational) -> Self {
        let mut n = Self::zero(ctx);
        match (ctx.quadratic_slot(), ctx.quadratic_data()) {
            (Some(k), Some((_, p, q))) => {
                let c = v / q;
                n.coeffs[0] = u - &c * p;
                n.coeffs[k] = c;
            }
            _ => {
                debug_assert!(v.is_zero());
                n.coeffs[0] = u;
            }
        }
        n
    }

    /// Exact product. Defined when one factor is rational or neither
    /// involves an opaque generator.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(q));
        }
        let (Some((a, b)), Some((c, d))) = (self.to_surd(), other.to_surd()) else {
            return Err(Error::NonLinearProduct);
        };
        let (dd, _, _) = self.ctx.quadratic_data().ok_or(Error::NonLinearProduct)?;
        let dd = BigRational::from_integer(dd.clone());
        let u = &a * &c + &b * &d * dd;
        let v = a * d + b * c;
        Ok(Self::from_surd(&self.ctx, u, v))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(&self.ctx, q.recip()));
        }
        let (u, v) = self.to_surd().ok_or(Error::NonLinearProduct)?;
        let (d, _, _) = self.ctx.quadratic_data().ok_or(Error::NonLinearProduct)?;
        let norm = &u * &u - &v * &v * BigRational::from_integer(d.clone());
        Ok(Self::from_surd(&self.ctx, u / &norm, -v / norm))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.recip()?)
    }

    /// Rational enclosure `[lo, hi]` of the value using generator enclosures
    /// with `bits` fractional bits.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        match PRECISION_LEVELS.iter().position(|&b| b == bits) {
            Some(level) => self.enclose_with(self.ctx.cached_enclosures(level)),
            None => self.enclose_with(&self.ctx.enclosures_at(bits)),
        }
    }

    fn enclose_with(&self, gens: &[(BigRational, BigRational)]) -> (BigRational, BigRational) {
        let mut lo = self.coeffs[0].clone();
        let mut hi = self.coeffs[0].clone();
        for (c, (glo, ghi)) in self.coeffs[1..].iter().zip(gens) {
            if c.is_zero() {
                continue;
            }
            if c.is_positive() {
                lo += c * glo;
                hi += c * ghi;
            } else {
                lo += c * ghi;
                hi += c * glo;
            }
        }
        (lo, hi)
    }

    pub fn sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some((u, v)) = self.to_surd() {
            let d = self
                .ctx
                .quadratic_data()
                .map(|(d, _, _)| BigRational::from_integer(d.clone()));
            return Ok(surd_sign(&u, &v, d.as_ref()));
        }
        for level in 0..PRECISION_LEVELS.len() {
            let (lo, hi) = self.enclose_with(self.ctx.cached_enclosures(level));
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
        }
        Err(Error::PrecisionExhausted {
            bits: *PRECISION_LEVELS.last().unwrap(),
        })
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.try_sub(other)?.sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn lt(&self, other: &Self) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn abs(&self) -> Result<Self> {
        Ok(match self.sign()? {
            Sign::Negative => -self,
            _ => self.clone(),
        })
    }

    pub fn min(&self, other: &Self) -> Result<Self> {
        Ok(if other.lt(self)? { other.clone() } else { self.clone() })
    }

    pub fn max(&self, other: &Self) -> Result<Self> {
        Ok(if self.lt(other)? { other.clone() } else { self.clone() })
    }

    pub fn floor(&self) -> Result<BigInt> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        let (lo, hi) = self.enclosure(PRECISION_LEVELS[0]);
        let fl = lo.floor().to_integer();
        let fh = hi.floor().to_integer();
        let mut n = fh;
        while n > fl {
            let diff = self - &ExactNumber::from_bigint(&self.ctx, &n);
            if diff.sign()? != Sign::Negative {
                return Ok(n);
            }
            n -= 1;
        }
        Ok(fl)
    }

    pub fn ceil(&self) -> Result<BigInt> {
        Ok(-(-self).floor()?)
    }

    /// Approximation with roughly `bits` bits of generator precision; for
    /// output only.
    pub fn as_float(&self, bits: u32) -> f64 {
        let (lo, hi) = self.enclosure(bits.max(64));
        let mid = (lo + hi) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_f64(&self) -> f64 {
        self.as_float(64)
    }
}

fn surd_sign(u: &BigRational, v: &BigRational, d: Option<&BigRational>) -> Sign {
    let su = Sign::from_ordering(u.cmp(&BigRational::zero()));
    let sv = Sign::from_ordering(v.cmp(&BigRational::zero()));
    let Some(d) = d else {
        return su;
    };
    match (su, sv) {
        (s, Sign::Zero) => s,
        (Sign::Zero, s) => s,
        (a, b) if a == b => a,
        (a, b) => {
            // opposite signs: compare u^2 with v^2 D
            match (u * u).cmp(&(v * v * d)) {
                Ordering::Greater => a,
                Ordering::Less => b,
                Ordering::Equal => Sign::Zero,
            }
        }
    }
}

impl PartialEq for ExactNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.coeffs == other.coeffs
    }
}

impl Eq for ExactNumber {}

impl Hash for ExactNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Display for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        if !self.coeffs[0].is_zero() {
            terms.push(self.coeffs[0].to_string());
        }
        for (c, g) in self.coeffs[1..].iter().zip(self.ctx.generators()) {
            if c.is_zero() {
                continue;
            }
            terms.push(if c.is_one() {
                g.name.clone()
            } else if (-c).is_one() {
                format!("-{}", g.name)
            } else {
                format!("{c}*{}", g.name)
            });
        }
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in terms.iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => f.write_str(t)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactNumber({self})")
    }
}

impl Add for &ExactNumber {
    type Output = ExactNumber;

    /// Panics when the operands come from different contexts; use
    /// [`ExactNumber::try_add`] at API boundaries.
    fn add(self, rhs: &ExactNumber) -> ExactNumber {
        self.try_add(rhs).expect("ExactNumber addition across contexts")
    }
}

impl Add for ExactNumber {
    type Output = ExactNumber;
    fn add(self, rhs: ExactNumber) -> ExactNumber {
        &self + &rhs
    }
}

impl Sub for &ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: &ExactNumber) -> ExactNumber {
        self.try_sub(rhs).expect("ExactNumber subtraction across contexts")
    }
}

impl Sub for ExactNumber {
    type Output = ExactNumber;
    fn sub(self, rhs: ExactNumber) -> ExactNumber {
        &self - &rhs
    }
}

impl Neg for &ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        ExactNumber {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ExactNumber {
    type Output = ExactNumber;
    fn neg(self) -> ExactNumber {
        -&self
    }
}

/// Sorts by exact comparison, reporting the first undecidable comparison.
pub fn sort_exact<T>(items: &mut [T], key: impl Fn(&T) -> &ExactNumber) -> Result<()> {
    let mut err = None;
    items.sort_by(|a, b| match key(a).try_cmp(key(b)) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    err.map_or(Ok(()), Err)
}
