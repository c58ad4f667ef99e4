//! Dyadic rationals `mant * 2^exp` with directed rounding to a bit budget.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

/// Exact value `mant * 2^exp`, kept with odd mantissa (or zero with exp 0).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn bit_len(x: &BigInt) -> u64 {
    x.bits()
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Dyadic::new(v.into(), 0)
    }

    /// Exact conversion; `None` for non-finite input.
    pub fn from_f64(v: f64) -> Option<Self> {
        if !v.is_finite() {
            return None;
        }
        if v == 0.0 {
            return Some(Dyadic::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Some(Dyadic::new(BigInt::from(m) * sign, e))
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// `self * 2^k`, exact.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    pub fn pow(&self, n: u32) -> Dyadic {
        Dyadic::new(num_traits::pow(self.mant.clone(), n as usize), self.exp * n as i64)
    }

    /// `floor(log2 |self|)`; `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(bit_len(&self.mant) as i64 - 1 + self.exp)
        }
    }

    /// Round to at most `prec` significant bits in the given direction.
    pub fn round(&self, prec: u32, mode: Rounding) -> Dyadic {
        let bits = bit_len(&self.mant);
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let d = pow2(shift);
        let m = match mode {
            Rounding::Floor => self.mant.div_floor(&d),
            Rounding::Ceil => self.mant.div_ceil(&d),
        };
        Dyadic::new(m, self.exp + shift as i64)
    }

    /// `num / den` rounded to `prec` significant bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, mode: Rounding) -> Dyadic {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Dyadic::zero();
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num.clone(), den.clone())
        };
        let s = (prec as i64 + 2 + bit_len(&den) as i64 - bit_len(&num) as i64).max(0) as u64;
        let scaled = num << s;
        let (q, r) = scaled.div_rem(&den);
        let q = if r.is_zero() {
            q
        } else {
            // div_rem truncates toward zero
            match (mode, scaled.is_negative()) {
                (Rounding::Floor, true) => q - 1,
                (Rounding::Ceil, false) => q + 1,
                _ => q,
            }
        };
        Dyadic::new(q, -(s as i64)).round(prec, mode)
    }

    pub fn from_rational(r: &BigRational, prec: u32, mode: Rounding) -> Dyadic {
        Dyadic::from_ratio(r.numer(), r.denom(), prec, mode)
    }

    pub fn div(&self, other: &Dyadic, prec: u32, mode: Rounding) -> Dyadic {
        assert!(!other.is_zero(), "division by zero");
        let q = Dyadic::from_ratio(&self.mant, &other.mant, prec, mode);
        q.shl(self.exp - other.exp)
    }

    /// `self^(1/n)` for `self >= 0`, rounded to `prec` significant bits.
    pub fn nth_root(&self, n: u32, prec: u32, mode: Rounding) -> Dyadic {
        assert!(!self.is_negative(), "root of negative dyadic");
        assert!(n >= 1);
        if self.is_zero() || n == 1 {
            return self.round(prec, mode);
        }
        let n64 = n as i64;
        let want = n64 * (prec as i64 + 2);
        let mut s = (want - bit_len(&self.mant) as i64).max(0);
        s += (self.exp - s).rem_euclid(n64);
        let y = &self.mant << s as u64;
        let mut r = y.nth_root(n);
        if mode == Rounding::Ceil && num_traits::pow(r.clone(), n as usize) != y {
            r += 1;
        }
        Dyadic::new(r, (self.exp - s) / n64).round(prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), pow2((-self.exp) as u64))
        }
    }

    /// Nearest-ish `f64`; saturates to infinities / zero out of range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = bit_len(&self.mant) as i64;
        let drop = (bits - 60).max(0);
        let m = (&self.mant >> drop as u64).to_f64().unwrap_or(0.0);
        let e = self.exp + drop;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        m * 2f64.powi(e as i32)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.signum().cmp(&other.signum()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        self.sub(other).signum().cmp(&0)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn directed_rounding_brackets_value() {
        for (n, d) in [(1, 3), (-1, 3), (22, 7), (-355, 113), (5, 1), (1, 1 << 20)] {
            let r = rat(n, d);
            let lo = Dyadic::from_rational(&r, 24, Rounding::Floor).to_rational();
            let hi = Dyadic::from_rational(&r, 24, Rounding::Ceil).to_rational();
            assert!(lo <= r && r <= hi, "{n}/{d}");
            assert!(&hi - &lo <= rat(1, 1 << 20) * r.abs().max(rat(1, 1 << 20)) * rat(16, 1));
        }
    }

    #[test]
    fn exact_values_are_not_widened() {
        let x = Dyadic::from_ratio(&BigInt::from(3), &BigInt::from(4), 8, Rounding::Floor);
        assert_eq!(x.to_rational(), rat(3, 4));
        let y = Dyadic::from_ratio(&BigInt::from(3), &BigInt::from(4), 8, Rounding::Ceil);
        assert_eq!(x, y);
    }

    #[test]
    fn roots() {
        let v = Dyadic::from_int(32);
        assert_eq!(v.nth_root(5, 64, Rounding::Floor), Dyadic::from_int(2));
        assert_eq!(v.nth_root(5, 64, Rounding::Ceil), Dyadic::from_int(2));
        let two = Dyadic::from_int(2);
        let lo = two.nth_root(2, 100, Rounding::Floor);
        let hi = two.nth_root(2, 100, Rounding::Ceil);
        assert!(lo.pow(2) < two && two < hi.pow(2));
        assert!(hi.sub(&lo) <= Dyadic::new(BigInt::one(), -98));
        let tiny = Dyadic::new(BigInt::one(), -301);
        let r = tiny.nth_root(3, 53, Rounding::Floor);
        assert!(r.pow(3) <= tiny);
    }

    #[test]
    fn ordering_and_f64() {
        let a = Dyadic::from_f64(0.1).unwrap();
        let b = Dyadic::from_f64(0.2).unwrap();
        assert!(a < b);
        assert!(b.neg() < a.neg());
        assert_eq!(a.to_f64(), 0.1);
        assert_eq!(Dyadic::from_f64(-3.5).unwrap().to_rational(), rat(-7, 2));
        assert_eq!(Dyadic::zero().cmp(&Dyadic::zero()), Ordering::Equal);
    }

    #[test]
    fn division() {
        let a = Dyadic::from_int(1);
        let b = Dyadic::from_int(3);
        let lo = a.div(&b, 40, Rounding::Floor).to_rational();
        let hi = a.div(&b, 40, Rounding::Ceil).to_rational();
        assert!(lo < rat(1, 3) && rat(1, 3) < hi);
        let neg = Dyadic::from_int(-1).div(&b, 40, Rounding::Floor).to_rational();
        assert!(neg < rat(-1, 3));
    }
}
