//! Real intervals with dyadic endpoints and outward rounding.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};

/// `x^n` for `x >= 0` by repeated squaring, rounding every product in `mode`.
fn pow_rounded(x: &Dyadic, mut n: u32, prec: u32, mode: Rounding) -> Dyadic {
    debug_assert!(!x.is_negative());
    let mut base = x.round(prec, mode);
    let mut acc = Dyadic::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base).round(prec, mode);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base).round(prec, mode);
        }
    }
    acc
}

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;
/// Ceiling for automatic precision doubling.
pub const MAX_PRECISION: u32 = 4096;

/// Closed interval `[lo, hi]`; every operation returns an enclosure of the
/// exact result, endpoints rounded outward to `prec` significant bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval {
            lo: lo.round(prec, Rounding::Floor),
            hi: hi.round(prec, Rounding::Ceil),
            prec,
        }
    }

    pub fn point(v: Dyadic, prec: u32) -> Self {
        Interval::new(v.clone(), v, prec)
    }

    pub fn zero(prec: u32) -> Self {
        Interval::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        Interval::point(Dyadic::one(), prec)
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        Interval::point(Dyadic::from_int(v), prec)
    }

    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, prec: u32) -> Self {
        let (num, den) = (num.into(), den.into());
        Interval {
            lo: Dyadic::from_ratio(&num, &den, prec, Rounding::Floor),
            hi: Dyadic::from_ratio(&num, &den, prec, Rounding::Ceil),
            prec,
        }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Interval::from_ratio(r.numer().clone(), r.denom().clone(), prec)
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Interval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn mid(&self) -> Dyadic {
        self.lo.add(&self.hi).shl(-1)
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo.to_rational() <= v && v <= &self.hi.to_rational()
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    /// Every point of `self` is `< other`'s every point.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    fn prec2(&self, other: &Interval) -> u32 {
        self.prec.max(other.prec)
    }

    fn from_candidates(cands: [Dyadic; 4], prec: u32) -> Self {
        let lo = cands.iter().min().expect("nonempty").clone();
        let hi = cands.iter().max().expect("nonempty").clone();
        Interval::new(lo, hi, prec)
    }

    pub fn abs(&self) -> Interval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            -self
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            Interval::new(Dyadic::zero(), hi, self.prec)
        }
    }

    pub fn sqr(&self) -> Interval {
        self.pow_int(2)
    }

    pub fn pow_int(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::one(self.prec);
        }
        let up = |x: &Dyadic| pow_rounded(x, n, self.prec, Rounding::Ceil);
        let down = |x: &Dyadic| pow_rounded(x, n, self.prec, Rounding::Floor);
        let (lo, hi) = if self.lo.signum() >= 0 {
            (down(&self.lo), up(&self.hi))
        } else if self.hi.signum() <= 0 {
            let (a, b) = (self.hi.abs(), self.lo.abs());
            if n % 2 == 0 {
                (down(&a), up(&b))
            } else {
                (up(&b).neg(), down(&a).neg())
            }
        } else if n % 2 == 0 {
            (Dyadic::zero(), up(&self.lo.abs().max(self.hi.clone())))
        } else {
            (up(&self.lo.abs()).neg(), up(&self.hi))
        };
        Interval::new(lo, hi, self.prec)
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.contains_zero() {
            return Err(Error::DivisionByIntervalContainingZero);
        }
        let prec = self.prec2(other);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let f = a.div(b, prec, Rounding::Floor);
                let c = a.div(b, prec, Rounding::Ceil);
                lo = Some(lo.map_or(f.clone(), |l| l.min(f)));
                hi = Some(hi.map_or(c.clone(), |h| h.max(c)));
            }
        }
        Ok(Interval::new(lo.expect("set"), hi.expect("set"), prec))
    }

    pub fn recip(&self) -> Result<Interval> {
        Interval::one(self.prec).div(self)
    }

    /// Real `n`-th root of a nonnegative interval.
    pub fn nth_root(&self, n: u32) -> Result<Interval> {
        if self.lo.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        Ok(Interval::new(
            self.lo.nth_root(n, self.prec, Rounding::Floor),
            self.hi.nth_root(n, self.prec, Rounding::Ceil),
            self.prec,
        ))
    }

    pub fn sqrt(&self) -> Result<Interval> {
        self.nth_root(2)
    }

    /// `self^(num/den)` for `self >= 0` and `den >= 1` via `nth_root(pow)`.
    /// Negative `num` takes a reciprocal.
    pub fn pow_ratio(&self, num: i64, den: u32) -> Result<Interval> {
        let base = self.pow_int(num.unsigned_abs() as u32).nth_root(den)?;
        if num < 0 {
            base.recip()
        } else {
            Ok(base)
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().max(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec2(other),
        )
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().min(other.hi.clone()),
            self.prec2(other),
        )
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
            self.prec2(other),
        )
    }

    /// Widen by `r >= 0` on both sides.
    pub fn inflate(&self, r: &Dyadic) -> Interval {
        Interval::new(self.lo.sub(r), self.hi.add(r), self.prec)
    }

    /// Clamp the lower end at zero (for quantities known to be nonnegative).
    pub fn clamp_nonneg(&self) -> Interval {
        let lo = self.lo.clone().max(Dyadic::zero());
        let hi = self.hi.clone().max(Dyadic::zero());
        Interval::new(lo, hi, self.prec)
    }
}

impl Add<&Interval> for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.add(&rhs.lo), self.hi.add(&rhs.hi), self.prec2(rhs))
    }
}

impl Sub<&Interval> for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(self.lo.sub(&rhs.hi), self.hi.sub(&rhs.lo), self.prec2(rhs))
    }
}

impl Mul<&Interval> for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        Interval::from_candidates(
            [
                self.lo.mul(&rhs.lo),
                self.lo.mul(&rhs.hi),
                self.hi.mul(&rhs.lo),
                self.hi.mul(&rhs.hi),
            ],
            self.prec2(rhs),
        )
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Interval> for Interval {
            type Output = Interval;
            fn $method(self, rhs: &Interval) -> Interval {
                (&self).$method(rhs)
            }
        }
        impl $trait<Interval> for &Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(Dyadic::from_int(lo), Dyadic::from_int(hi), 64)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn endpoint_products() {
        assert_eq!(&iv(1, 2) * &iv(3, 4), iv(3, 8));
        assert_eq!(&iv(-1, 2) * &iv(3, 4), iv(-4, 8));
        assert_eq!(&iv(1, 2) + &iv(3, 4), iv(4, 6));
        assert_eq!(&iv(1, 2) - &iv(3, 4), iv(-3, -1));
    }

    #[test]
    fn division_rules() {
        assert_eq!(
            iv(1, 2).div(&iv(-1, 1)),
            Err(Error::DivisionByIntervalContainingZero)
        );
        let q = iv(1, 1).div(&iv(3, 3)).unwrap();
        assert!(q.contains(&rat(1, 3)));
        assert!(!q.contains(&rat(1, 2)));
    }

    #[test]
    fn roots_and_powers() {
        let r = Interval::from_int(32, 128).nth_root(5).unwrap();
        assert!(r.contains(&rat(2, 1)));
        assert_eq!(iv(-1, 4).nth_root(2), Err(Error::NegativeRadicand));
        assert_eq!(iv(-3, 2).pow_int(2), iv(0, 9));
        assert_eq!(iv(-3, 2).pow_int(3), iv(-27, 8));
        let x = Interval::from_int(8, 128).pow_ratio(-2, 3).unwrap();
        assert!(x.contains(&rat(1, 4)));
    }

    #[test]
    fn precision_tightens_roots() {
        let two = |p| Interval::from_int(2, p).sqrt().unwrap();
        let w64 = two(64).width();
        let w256 = two(256).width();
        assert!(w256 < w64);
        assert!(two(64).contains_interval(&two(256)) || two(256).width() <= w64);
    }
}
