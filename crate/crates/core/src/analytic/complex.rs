//! Rectangular complex intervals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::Result;
use crate::field::OmegaKind;
use crate::quadint::QuadInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        let prec = re.prec();
        ComplexInterval::new(re, Interval::zero(prec))
    }

    pub fn zero(prec: u32) -> Self {
        ComplexInterval::new(Interval::zero(prec), Interval::zero(prec))
    }

    pub fn one(prec: u32) -> Self {
        ComplexInterval::new(Interval::one(prec), Interval::zero(prec))
    }

    pub fn from_dyadic(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        ComplexInterval::new(Interval::point(re, prec), Interval::point(im, prec))
    }

    /// Enclosure of the complex embedding of `x` (with `Im sqrt(d) > 0`).
    pub fn from_quadint(x: &QuadInt, prec: u32) -> Self {
        let field = x.field();
        let root = Interval::from_int(-field.d(), prec + 16)
            .sqrt()
            .expect("positive radicand");
        let a = Interval::from_int(x.a().clone(), prec + 16);
        let b = Interval::from_int(x.b().clone(), prec + 16);
        let (re, im) = match field.omega_kind() {
            OmegaKind::Sqrt => (a, &b * &root),
            OmegaKind::Half => {
                let half = Interval::from_ratio(1, 2, prec + 16);
                (&a + &(&b * &half), &(&b * &root) * &half)
            }
        };
        ComplexInterval::new(re.with_prec(prec), im.with_prec(prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        ComplexInterval::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, k: &Interval) -> Self {
        ComplexInterval::new(&self.re * k, &self.im * k)
    }

    /// `|z|^2`.
    pub fn abs_sq(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    pub fn abs(&self) -> Interval {
        self.abs_sq().sqrt().expect("sum of squares is nonnegative")
    }

    pub fn sqr(&self) -> Self {
        self * self
    }

    pub fn pow_int(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ComplexInterval::one(self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn div(&self, other: &ComplexInterval) -> Result<Self> {
        let den = other.abs_sq();
        let num = self * &other.conj();
        Ok(ComplexInterval::new(num.re.div(&den)?, num.im.div(&den)?))
    }

    /// Midpoint as a degenerate interval.
    pub fn mid(&self) -> Self {
        let prec = self.prec();
        ComplexInterval::from_dyadic(self.re.mid(), self.im.mid(), prec)
    }

    pub fn inflate(&self, r: &Dyadic) -> Self {
        ComplexInterval::new(self.re.inflate(r), self.im.inflate(r))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid().to_f64(), self.im.mid().to_f64())
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        ComplexInterval::real(Interval::from_int(v, prec))
    }
}

impl Add<&ComplexInterval> for &ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&ComplexInterval> for &ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&ComplexInterval> for &ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexInterval::new(re, im)
    }
}

impl Neg for &ComplexInterval {
    type Output = ComplexInterval;
    fn neg(self) -> ComplexInterval {
        ComplexInterval::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {} i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_spec;
    use num_rational::BigRational;

    #[test]
    fn modulus_of_pythagorean_point() {
        let z = ComplexInterval::new(Interval::from_int(3, 128), Interval::from_int(4, 128));
        assert!(z.abs().contains(&BigRational::from_integer(5.into())));
    }

    #[test]
    fn embedding_respects_multiplication() {
        for d in [-1, -3, -11, -163] {
            let f = field_spec(d).unwrap();
            let x = QuadInt::new(f, 3, -2);
            let y = QuadInt::new(f, -5, 7);
            let prod = ComplexInterval::from_quadint(&(&x * &y), 200);
            let iv = &ComplexInterval::from_quadint(&x, 200) * &ComplexInterval::from_quadint(&y, 200);
            let diff = &prod - &iv;
            assert!(diff.re.contains_zero() && diff.im.contains_zero());
            let n = ComplexInterval::from_quadint(&x, 200).abs_sq();
            assert!(n.contains(&BigRational::from_integer(x.norm())));
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = ComplexInterval::from_dyadic(Dyadic::from_int(2), Dyadic::from_int(-1), 128);
        let b = ComplexInterval::from_dyadic(Dyadic::from_int(1), Dyadic::from_int(3), 128);
        let q = (&a * &b).div(&b).unwrap();
        assert!((&q - &a).re.contains_zero());
        assert!((&q - &a).im.contains_zero());
    }
}
