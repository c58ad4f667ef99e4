//! Exact elements `a + b*w` of the ring of integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, OmegaKind};

/// An element `a + b*w` of O_K, coordinates over the integral basis `{1, w}`.
///
/// The `std::ops` impls panic when the operands come from different fields;
/// the `try_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    field: FieldSpec,
    a: BigInt,
    b: BigInt,
}

impl QuadInt {
    pub fn new(field: FieldSpec, a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt {
            field,
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(field: FieldSpec, a: impl Into<BigInt>) -> Self {
        Self::new(field, a, 0)
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::new(field, 0, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::new(field, 1, 0)
    }

    pub fn omega(field: FieldSpec) -> Self {
        Self::new(field, 0, 1)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// True when the element lies in Z.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check_field(&self, other: &QuadInt) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.d(),
                right: other.field.d(),
            })
        }
    }

    pub fn try_add(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_field(other)?;
        Ok(QuadInt::new(self.field, &self.a + &other.a, &self.b + &other.b))
    }

    pub fn try_sub(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_field(other)?;
        Ok(QuadInt::new(self.field, &self.a - &other.a, &self.b - &other.b))
    }

    /// `(a1 + b1 w)(a2 + b2 w)` with `w^2 = c0 + c1 w`.
    pub fn try_mul(&self, other: &QuadInt) -> Result<QuadInt> {
        self.check_field(other)?;
        let (c0, c1) = self.field.omega_relation();
        let bb = &self.b * &other.b;
        let a = &self.a * &other.a + &bb * c0;
        let b = &self.a * &other.b + &self.b * &other.a + bb * c1;
        Ok(QuadInt::new(self.field, a, b))
    }

    pub fn scale(&self, k: &BigInt) -> QuadInt {
        QuadInt::new(self.field, &self.a * k, &self.b * k)
    }

    /// `N(a + b w) = a^2 + c1 a b - c0 b^2`, i.e. `a^2 - d b^2` or
    /// `a^2 + ab + b^2 (1-d)/4`.
    pub fn norm(&self) -> BigInt {
        let (c0, c1) = self.field.omega_relation();
        &self.a * &self.a + &self.a * &self.b * c1 - &self.b * &self.b * c0
    }

    pub fn trace(&self) -> BigInt {
        let (_, c1) = self.field.omega_relation();
        BigInt::from(2) * &self.a + &self.b * c1
    }

    /// Galois conjugate; `conj(w) = c1 - w`.
    pub fn conj(&self) -> QuadInt {
        let (_, c1) = self.field.omega_relation();
        QuadInt::new(self.field, &self.a + &self.b * c1, -&self.b)
    }

    pub fn pow(&self, mut n: u32) -> QuadInt {
        let mut base = self.clone();
        let mut acc = QuadInt::one(self.field);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `Some(q)` with `y = q * self` when `self | y` in O_K.
    ///
    /// Computed as `y * conj(self) / N(self)` with an exact integrality check,
    /// which works in the non-Euclidean fields too.
    pub fn divides(&self, y: &QuadInt) -> Result<Option<QuadInt>> {
        self.check_field(y)?;
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.norm();
        let t = y.try_mul(&self.conj())?;
        let (qa, ra) = t.a.div_rem(&n);
        let (qb, rb) = t.b.div_rem(&n);
        if ra.is_zero() && rb.is_zero() {
            Ok(Some(QuadInt::new(self.field, qa, qb)))
        } else {
            Ok(None)
        }
    }

    /// Real and imaginary parts of the complex embedding with `Im(sqrt(d)) > 0`,
    /// as `f64`. Lossy; only for seeding exact searches.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let a = big_to_f64(&self.a);
        let b = big_to_f64(&self.b);
        let root = ((-self.field.d()) as f64).sqrt();
        match self.field.omega_kind() {
            OmegaKind::Sqrt => (a, b * root),
            OmegaKind::Half => (a + b / 2.0, b * root / 2.0),
        }
    }

    /// `log2 |x|` and `arg x` in `f64`, robust to coordinates beyond `f64` range.
    pub(crate) fn approx_log2_abs_arg(&self) -> (f64, f64) {
        let bits = self.a.bits().max(self.b.bits()) as i64;
        let drop = (bits - 900).max(0) as u64;
        let scaled = QuadInt::new(self.field, &self.a >> drop, &self.b >> drop);
        let (re, im) = scaled.to_complex_f64();
        (re.hypot(im).log2() + drop as f64, im.atan2(re))
    }

    /// Nearest lattice element to the complex number `re + i*im`,
    /// by rounding coordinates. `None` if the input is not finite.
    pub fn round_from_complex(field: FieldSpec, re: f64, im: f64) -> Option<QuadInt> {
        if !re.is_finite() || !im.is_finite() {
            return None;
        }
        let root = ((-field.d()) as f64).sqrt();
        let (a, b) = match field.omega_kind() {
            OmegaKind::Sqrt => (re, im / root),
            OmegaKind::Half => {
                let b = 2.0 * im / root;
                (re - b.round() / 2.0, b)
            }
        };
        let a = BigInt::from_f64_round(a)?;
        let b = BigInt::from_f64_round(b)?;
        Some(QuadInt::new(field, a, b))
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

trait FromF64Round: Sized {
    fn from_f64_round(x: f64) -> Option<Self>;
}

impl FromF64Round for BigInt {
    fn from_f64_round(x: f64) -> Option<Self> {
        num_traits::FromPrimitive::from_f64(x.round())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadInt> for &QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                self.$checked(rhs).expect("QuadInt operands from different fields")
            }
        }
        impl $trait<QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: QuadInt) -> QuadInt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadInt> for QuadInt {
            type Output = QuadInt;
            fn $method(self, rhs: &QuadInt) -> QuadInt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(self.field, -&self.a, -&self.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        -&self
    }
}

/// Canonical text form `a+b*w[d]` (or `a-b*w[d]` for negative `b`).
impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*w[{}]", self.a, sign, self.b.abs(), self.field.d())
    }
}

impl FromStr for QuadInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a+b*w[d], got {s:?}"));
        let s = s.trim();
        let (body, d) = s
            .strip_suffix(']')
            .and_then(|t| t.split_once("*w["))
            .ok_or_else(bad)?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        let field = FieldSpec::new(d)?;
        // the separating sign is the last '+' or '-' not at position 0
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last()
            .ok_or_else(bad)?;
        let (a, rest) = body.split_at(split);
        let negative = rest.starts_with('-');
        let digits = &rest[1..];
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let mut b: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            b = -b;
        }
        Ok(QuadInt::new(field, a, b))
    }
}

impl serde::Serialize for QuadInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_spec;

    fn gauss(a: i64, b: i64) -> QuadInt {
        QuadInt::new(field_spec(-1).unwrap(), a, b)
    }

    #[test]
    fn gaussian_product() {
        assert_eq!(gauss(2, 1) * gauss(2, -1), gauss(5, 0));
        let x = gauss(7, -3);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn half_basis_identity_and_omega_square() {
        let f = field_spec(-11).unwrap();
        let one_plus_w = QuadInt::new(f, 1, 1);
        assert_eq!(&one_plus_w * &QuadInt::one(f), one_plus_w);
        // w^2 = w - 3 when d = -11
        let w = QuadInt::omega(f);
        assert_eq!(&w * &w, QuadInt::new(f, -3, 1));
    }

    #[test]
    fn norms() {
        let f = field_spec(-11).unwrap();
        assert_eq!(QuadInt::omega(f).norm(), 3.into());
        assert_eq!(gauss(0, 0).norm(), 0.into());
        let cube = gauss(2, 1).pow(3);
        assert_eq!(cube, gauss(2, 11));
        assert_eq!(cube.norm(), 125.into());
    }

    #[test]
    fn conjugates() {
        assert_eq!(gauss(0, 1).conj(), gauss(0, -1));
        assert_eq!(gauss(9, 0).conj(), gauss(9, 0));
        let f = field_spec(-7).unwrap();
        assert_eq!(QuadInt::omega(f).conj(), QuadInt::new(f, 1, -1));
        let x = QuadInt::new(f, 4, -9);
        assert_eq!(x.conj().conj(), x);
        assert_eq!(&x * &x.conj(), QuadInt::from_int(f, x.norm()));
    }

    #[test]
    fn powers() {
        assert!(gauss(5, 3).pow(0).is_one());
        assert!(gauss(0, 1).pow(4).is_one());
        assert_eq!(gauss(2, 1).pow(3), gauss(2, 11));
    }

    #[test]
    fn large_powers_are_exact() {
        let f = field_spec(-163).unwrap();
        let x = QuadInt::new(f, 999_999, -1_000_000);
        let p = x.pow(100);
        assert_eq!(p.norm(), x.norm().pow(100));
        assert_eq!(p, x.pow(37) * x.pow(63));
    }

    #[test]
    fn division() {
        assert_eq!(gauss(1, 1).divides(&gauss(2, 0)).unwrap(), Some(gauss(1, -1)));
        assert_eq!(gauss(3, 0).divides(&gauss(5, 0)).unwrap(), None);
        assert_eq!(gauss(3, 4).divides(&gauss(0, 0)).unwrap(), Some(gauss(0, 0)));
        assert_eq!(gauss(0, 0).divides(&gauss(1, 0)), Err(Error::ZeroDivisor));
    }

    #[test]
    fn field_mismatch() {
        let x = gauss(1, 1);
        let y = QuadInt::one(field_spec(-2).unwrap());
        assert_eq!(x.try_add(&y), Err(Error::FieldMismatch { left: -1, right: -2 }));
        assert!(x.try_mul(&y).is_err());
        assert!(x.divides(&y).is_err());
    }

    #[test]
    fn text_form() {
        assert_eq!(gauss(2, 11).to_string(), "2+11*w[-1]");
        assert_eq!(gauss(-2, -11).to_string(), "-2-11*w[-1]");
        assert_eq!("2+11*w[-1]".parse::<QuadInt>().unwrap(), gauss(2, 11));
        assert_eq!("-2-11*w[-1]".parse::<QuadInt>().unwrap(), gauss(-2, -11));
        let f = field_spec(-163).unwrap();
        let x: QuadInt = "-5+0*w[-163]".parse().unwrap();
        assert_eq!(x, QuadInt::from_int(f, -5));
        for bad in ["", "2+11", "2+11*w[-5]", "2+*w[-1]", "a+1*w[-1]", "2+11*w[-1"] {
            assert!(bad.parse::<QuadInt>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn complex_rounding_recovers_element() {
        for f in crate::field::FieldSpec::all() {
            for (a, b) in [(3, -7), (-12, 5), (0, 1), (100, 99)] {
                let x = QuadInt::new(f, a, b);
                let (re, im) = x.to_complex_f64();
                assert_eq!(QuadInt::round_from_complex(f, re, im), Some(x));
            }
        }
    }
}
