//! Bounds on `|D (y - a^p F_m(1/a^q))|` where `D = a^{mq-p} q^t`,
//! `m = floor(p/q) + 1` and `t = m + ord_q(m!)`.
//!
//! The quantity is a nonzero algebraic integer, so any certified bound
//! below 1 is a contradiction. The generic bound is
//! `q^{t-(p-2)/2} (2/3 + 1/q)`; three small pairs get dedicated treatment.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::interval::Interval;
use crate::error::{Error, Result};
use crate::primes::{factorial_valuation, is_prime, primes_in};

/// Pairs `(p, q)` singled out for separate treatment in the argument.
pub const SPECIAL_PAIRS: [(u64, u64); 3] = [(5, 3), (7, 3), (7, 5)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecialCase {
    Generic,
    /// `(p, q) = (7, 5)`: coefficient 32/93 replaces 2/3.
    P7Q5,
    /// `(p, q) = (5, 3)`: explicit closed expression.
    Q3P5,
    /// `(p, q) = (7, 3)`: tail sum evaluated precisely with a lower bound on `|x|`.
    Q3P7,
}

impl SpecialCase {
    pub fn of(p: u64, q: u64) -> Self {
        match (p, q) {
            (7, 5) => SpecialCase::P7Q5,
            (5, 3) => SpecialCase::Q3P5,
            (7, 3) => SpecialCase::Q3P7,
            _ => SpecialCase::Generic,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Theorem3Bound {
    pub p: u64,
    pub q: u64,
    pub m: u64,
    /// `ord_q(m!)` by Legendre's formula.
    pub ord: u64,
    /// `t = m + ord_q(m!)`.
    pub t: u64,
    /// `(p-1)/q + 1 + (p-1)/(q(q-1)) + 1/(q-1)`.
    pub t_closed_form: BigRational,
    pub closed_form_agrees: bool,
    /// `t - (p-2)/2`.
    pub exponent: BigRational,
    /// `q^{exponent} (2/3 + 1/q)`, whatever the special case.
    pub generic_bound: Interval,
    pub final_bound: Interval,
    pub special_case: SpecialCase,
    /// `|x| - 3 >= q^{(p-2)/2}` holds at the supplied lower bound on `|x|`.
    pub premise_holds: bool,
}

impl Theorem3Bound {
    pub fn below_one(&self) -> bool {
        self.final_bound.certainly_lt(&Interval::one(self.final_bound.prec()))
    }
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn check_pair(p: u64, q: u64) -> Result<()> {
    for v in [p, q] {
        if !is_prime(v) {
            return Err(Error::NotPrime(v));
        }
    }
    if !(p > q && q >= 3) {
        return Err(Error::InvalidExponents {
            p,
            q,
            reason: "need p > q >= 3",
        });
    }
    Ok(())
}

/// `m = floor(p/q) + 1`.
pub fn series_order(p: u64, q: u64) -> u64 {
    p / q + 1
}

/// `t = m + ord_q(m!)`.
pub fn denominator_exponent(p: u64, q: u64) -> u64 {
    let m = series_order(p, q);
    m + factorial_valuation(m, q)
}

pub fn closed_form_t(p: u64, q: u64) -> BigRational {
    let (p, q) = (p as i64, q as i64);
    rat(p - 1, q) + BigRational::one() + rat(p - 1, q * (q - 1)) + rat(1, q - 1)
}

/// `t - (p-2)/2` with `t` from the definition.
pub fn bound_exponent(p: u64, q: u64) -> BigRational {
    BigRational::from_integer(denominator_exponent(p, q).into()) - rat(p as i64 - 2, 2)
}

/// `q^{e/2}` for integer `e`.
fn q_half_power(q: u64, twice_exp: i64, prec: u32) -> Result<Interval> {
    Interval::from_int(q, prec).pow_ratio(twice_exp, 2)
}

fn q_power(q: u64, exp: &BigRational, prec: u32) -> Result<Interval> {
    let twice = exp * BigRational::from_integer(2.into());
    debug_assert!(twice.is_integer());
    let e: i64 = twice.to_integer().try_into().map_err(|_| Error::DegenerateInput("exponent out of range".into()))?;
    q_half_power(q, e, prec)
}

/// The explicit expression for `(p, q) = (5, 3)`:
/// `3^{7/2} (1/30)(10/27)(1/6) 3^{5/2}/(3^{5/2} - 1) + 3^{7/2}/81`.
pub fn q3p5_expression(prec: u32) -> Result<Interval> {
    let three_7_2 = q_half_power(3, 7, prec)?;
    let three_5_2 = q_half_power(3, 5, prec)?;
    let coeff = Interval::from_rational(&(rat(1, 30) * rat(10, 27) * rat(1, 6)), prec);
    let ratio = three_5_2.div(&(&three_5_2 - &Interval::one(prec)))?;
    let first = &(&three_7_2 * &coeff) * &ratio;
    let second = &three_7_2 * &Interval::from_ratio(1, 81, prec);
    Ok(&first + &second)
}

/// `sum_{r >= m+1} |C(p/q, r)| rho^{r-(m+1)}` with `rho = q^{(2-p)/2}`.
pub fn tail_coefficient_sum(p: u64, q: u64, prec: u32) -> Result<Interval> {
    let m = series_order(p, q);
    let alpha = rat(p as i64, q as i64);
    let rho = q_half_power(q, 2 - p as i64, prec)?;
    let one_minus_rho = &Interval::one(prec) - &rho;
    // |C(alpha, m+1)|
    let mut c = BigRational::one();
    for j in 0..=m {
        c = c * (&alpha - BigRational::from_integer(j.into())) / BigRational::from_integer((j + 1).into());
    }
    let mut term = Interval::from_rational(&c.abs(), prec);
    let tol = term.hi().shl(-(prec as i64));
    let mut sum = Interval::zero(prec);
    let mut r = m + 1;
    loop {
        sum = &sum + &term;
        let f = (&alpha - BigRational::from_integer(r.into())).abs() / BigRational::from_integer((r + 1).into());
        let next = &(&term * &Interval::from_rational(&f, prec)) * &rho;
        r += 1;
        // r > alpha from here on, so each later ratio is < rho
        let rem = Interval::point(next.hi().clone(), prec).div(&one_minus_rho)?;
        if next.hi().is_zero() || rem.hi() <= &tol {
            return Ok(Interval::new(sum.lo().clone(), sum.hi().add(rem.hi()), prec));
        }
        term = next;
    }
}

/// Precise bound using a lower bound `x_lower` on `|x|`:
/// `q^{t-1} (X+1)^{(mq-p)/q} / (X-1)^3 + q^{t-(p-2)/2} S`.
pub fn refined_bound(p: u64, q: u64, x_lower: &Interval, prec: u32) -> Result<Interval> {
    check_pair(p, q)?;
    let m = series_order(p, q);
    let t = denominator_exponent(p, q);
    let x = Interval::point(x_lower.lo().clone(), prec);
    let one = Interval::one(prec);
    let x_minus = &x - &one;
    if !x_minus.is_positive() {
        return Err(Error::DegenerateInput("|x| lower bound must exceed 1".into()));
    }
    let growth = (&x + &one).pow_ratio((m * q - p) as i64, q as u32)?;
    let first = (&Interval::from_int(q, prec).pow_int(t as u32 - 1) * &growth).div(&x_minus.pow_int(3))?;
    let second = &q_power(q, &bound_exponent(p, q), prec)? * &tail_coefficient_sum(p, q, prec)?;
    Ok(&first + &second)
}

/// `q + q^{(p-2)/2}`, the lower bound on `|x|` for any solution.
pub fn cassels_lower_bound(p: u64, q: u64, prec: u32) -> Result<Interval> {
    Ok(&Interval::from_int(q, prec) + &q_half_power(q, p as i64 - 2, prec)?)
}

pub fn theorem3_bound(p: u64, q: u64, x_abs_lower: &Interval, prec: u32) -> Result<Theorem3Bound> {
    check_pair(p, q)?;
    let m = series_order(p, q);
    let ord = factorial_valuation(m, q);
    let t = m + ord;
    let t_closed_form = closed_form_t(p, q);
    let exponent = bound_exponent(p, q);
    let scale = q_power(q, &exponent, prec)?;
    let with_coeff = |c: BigRational| -> Interval {
        let coeff = c + rat(1, q as i64);
        &scale * &Interval::from_rational(&coeff, prec)
    };
    let generic_bound = with_coeff(rat(2, 3));
    let special_case = SpecialCase::of(p, q);
    let final_bound = match special_case {
        SpecialCase::Generic => generic_bound.clone(),
        SpecialCase::P7Q5 => with_coeff(rat(32, 93)),
        SpecialCase::Q3P5 => q3p5_expression(prec)?,
        SpecialCase::Q3P7 => refined_bound(p, q, x_abs_lower, prec)?,
    };
    let three = Interval::from_int(3, prec);
    let premise_holds = q_half_power(q, p as i64 - 2, prec)?.certainly_le(&(x_abs_lower - &three));
    Ok(Theorem3Bound {
        p,
        q,
        m,
        ord,
        t,
        closed_form_agrees: t_closed_form == BigRational::from_integer(t.into()),
        t_closed_form,
        exponent,
        generic_bound,
        final_bound,
        special_case,
        premise_holds,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ExponentScan {
    pub p_max: u64,
    pub q_max: u64,
    pub pairs_checked: usize,
    /// Pairs with `q > 5` where `t - (p-2)/2 >= 0`.
    pub violations_q_gt5: Vec<(u64, u64)>,
    /// Pairs with `q = 5, p > 7` or `q = 3, p > 7` where `t - (p-2)/2 >= 0`.
    pub violations_small_q: Vec<(u64, u64)>,
    /// All pairs with nonnegative exponent, `t` from the definition.
    pub exceptional: Vec<(u64, u64)>,
    /// Same with the closed-form `t`.
    pub exceptional_closed_form: Vec<(u64, u64)>,
    /// Pairs where the definitional and closed-form `t` differ.
    pub closed_form_disagreements: usize,
    /// Exceptional pairs whose refined bound at `|x| = q + q^{(p-2)/2}` is not certified below 1.
    pub refined_not_below_one: Vec<(u64, u64)>,
}

impl ExponentScan {
    pub fn exceptions_match_special_pairs(&self) -> bool {
        let got: BTreeSet<_> = self.exceptional.iter().copied().collect();
        let want: BTreeSet<_> = SPECIAL_PAIRS.iter().copied().collect();
        got == want
    }
}

pub fn theorem3_exponent_scan(p_max: u64, q_max: u64, prec: u32) -> Result<ExponentScan> {
    let mut scan = ExponentScan {
        p_max,
        q_max,
        pairs_checked: 0,
        violations_q_gt5: vec![],
        violations_small_q: vec![],
        exceptional: vec![],
        exceptional_closed_form: vec![],
        closed_form_disagreements: 0,
        refined_not_below_one: vec![],
    };
    for q in primes_in(3, q_max) {
        for p in primes_in(q + 1, p_max) {
            scan.pairs_checked += 1;
            let e = bound_exponent(p, q);
            let nonneg = !e.is_negative();
            let closed = closed_form_t(p, q);
            if closed != BigRational::from_integer(denominator_exponent(p, q).into()) {
                scan.closed_form_disagreements += 1;
            }
            if !(closed - rat(p as i64 - 2, 2)).is_negative() {
                scan.exceptional_closed_form.push((p, q));
            }
            if !nonneg {
                continue;
            }
            scan.exceptional.push((p, q));
            if q > 5 {
                scan.violations_q_gt5.push((p, q));
            } else if p > 7 {
                scan.violations_small_q.push((p, q));
            }
            let x = cassels_lower_bound(p, q, prec)?;
            if !refined_bound(p, q, &x, prec)?.certainly_lt(&Interval::one(prec)) {
                scan.refined_not_below_one.push((p, q));
            }
        }
    }
    Ok(scan)
}

/// `f64` view of an interval midpoint, for reports.
pub fn approx(iv: &Interval) -> f64 {
    iv.mid().to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 256;

    #[test]
    fn generic_pair_eleven_seven() {
        let x = cassels_lower_bound(11, 7, PREC).unwrap();
        let b = theorem3_bound(11, 7, &x, PREC).unwrap();
        assert_eq!((b.m, b.ord, b.t), (2, 0, 2));
        assert_eq!(b.exponent, rat(-5, 2));
        assert!(b.below_one());
        assert_eq!(b.special_case, SpecialCase::Generic);
    }

    #[test]
    fn pair_seven_five_uses_32_over_93() {
        let x = cassels_lower_bound(7, 5, PREC).unwrap();
        let b = theorem3_bound(7, 5, &x, PREC).unwrap();
        assert_eq!(b.special_case, SpecialCase::P7Q5);
        // 5^{-1/2} (32/93 + 1/5)
        let expected = 5f64.powf(-0.5) * (32.0 / 93.0 + 0.2);
        assert!((approx(&b.final_bound) - expected).abs() < 1e-12);
        assert!(b.below_one());
        assert!(!b.closed_form_agrees);
    }

    #[test]
    fn pair_five_three_expression() {
        let v = q3p5_expression(PREC).unwrap();
        let s = 3f64.powf(2.5);
        let expected = 3f64.powf(3.5) / 30.0 * (10.0 / 27.0) / 6.0 * (s / (s - 1.0)) + 3f64.powf(3.5) / 81.0;
        assert!((approx(&v) - expected).abs() < 1e-12);
        assert!((approx(&v) - 0.68).abs() < 0.005);
        let x = cassels_lower_bound(5, 3, PREC).unwrap();
        assert!(theorem3_bound(5, 3, &x, PREC).unwrap().below_one());
    }

    #[test]
    fn pair_seven_three_refined() {
        let x = cassels_lower_bound(7, 3, PREC).unwrap();
        let b = theorem3_bound(7, 3, &x, PREC).unwrap();
        assert_eq!(b.special_case, SpecialCase::Q3P7);
        assert!(b.below_one());
        assert!(!b.generic_bound.certainly_lt(&Interval::one(PREC)));
    }

    /// Brute-force oracle for the tail sum: direct partial sums in f64.
    #[test]
    fn tail_sum_matches_direct_summation() {
        for (p, q) in [(5u64, 3u64), (7, 3), (7, 5), (13, 11)] {
            let m = series_order(p, q);
            let alpha = p as f64 / q as f64;
            let rho = (q as f64).powf((2.0 - p as f64) / 2.0);
            let mut c = 1.0f64;
            for j in 0..=m {
                c *= (alpha - j as f64) / (j as f64 + 1.0);
            }
            let mut total = 0.0;
            let mut term = c.abs();
            for r in (m + 1)..(m + 200) {
                total += term;
                term *= (alpha - r as f64).abs() / (r as f64 + 1.0) * rho;
            }
            let iv = tail_coefficient_sum(p, q, PREC).unwrap();
            assert!((approx(&iv) - total).abs() < 1e-12 * total.max(1e-30), "({p},{q})");
        }
    }

    #[test]
    fn definitional_exponent_values() {
        assert_eq!(bound_exponent(5, 3), rat(1, 2));
        assert_eq!(bound_exponent(7, 3), rat(3, 2));
        assert_eq!(bound_exponent(7, 5), rat(-1, 2));
        assert_eq!(bound_exponent(11, 3), rat(1, 2));
        assert_eq!(closed_form_t(7, 5), rat(11, 4));
    }

    #[test]
    fn scan_small() {
        let scan = theorem3_exponent_scan(97, 97, 128).unwrap();
        assert!(scan.violations_q_gt5.is_empty());
        assert!(scan.refined_not_below_one.is_empty());
        assert!(scan.exceptional.contains(&(5, 3)));
        assert!(scan.exceptional.contains(&(7, 3)));
        assert!(!scan.exceptional.contains(&(7, 5)));
    }

    #[test]
    fn rejects_bad_pairs() {
        let x = Interval::from_int(100, 64);
        assert!(matches!(theorem3_bound(3, 5, &x, 64), Err(Error::InvalidExponents { .. })));
        assert_eq!(theorem3_bound(9, 5, &x, 64).unwrap_err(), Error::NotPrime(9));
    }
}
