//! Certified truncation errors of the binomial series.
//!
//! For `a > 0`, `|z| < 1`, `m >= 1`:
//!
//! * `E1 = (1+z)^a - sum_{r<m} C(a,r) z^r`
//! * `E2 = (1-|z|)^{-a} - sum_{r<m} C(-a,r) (-|z|)^r`
//! * majorant `a(a+1)...(a+m-1)/m! * |z|^m * (1-|z|)^{-a-m}`
//!
//! and the chain `|E1| <= E2 <= majorant` is certified on enclosures.
//! Both tails are summed term by term from index `m` with a geometric bound
//! on what remains, so there is no cancellation against a closed form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::complex::ComplexInterval;
use super::dyadic::{Dyadic, Rounding};
use super::interval::{Interval, MAX_PRECISION};
use crate::error::{Error, Result};

/// Hard cap on summed terms before giving up as inconclusive.
const MAX_TERMS: u32 = 200_000;

#[derive(Debug, Clone)]
pub struct TailBounds {
    pub a: BigRational,
    pub m: u32,
    pub abs_z: Interval,
    pub e1_bound: Interval,
    pub e2_value: Interval,
    pub lemma6_bound: Interval,
}

impl TailBounds {
    /// `|E1| <= E2` certified on the enclosures.
    pub fn first_link(&self) -> bool {
        self.e1_bound.certainly_le(&self.e2_value)
    }

    /// `E2 <= majorant` certified on the enclosures.
    pub fn second_link(&self) -> bool {
        self.e2_value.certainly_le(&self.lemma6_bound)
    }

    pub fn chain_certified(&self) -> bool {
        self.first_link() && self.second_link()
    }
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Complex midpoint-radius enclosure. Multiplying by `z` scales the radius
/// by `|z|`, whereas rectangular boxes grow by up to `sqrt(2)|z|` per step.
#[derive(Debug, Clone)]
struct Disk {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
}

/// Series are summed until the remainder is below `2^-(prec/4)` relative to
/// the first tail term; doubling the precision tightens both.
fn truncation_bits(prec: u32) -> i64 {
    (prec / 4).max(16) as i64
}

/// `x` rounded down to `prec` bits and the (nonnegative) rounding error.
fn round_down(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    let r = x.round(prec, Rounding::Floor);
    let err = x.sub(&r);
    (r, err)
}

impl Disk {
    fn point(re: Dyadic, im: Dyadic) -> Disk {
        Disk {
            re,
            im,
            rad: Dyadic::zero(),
        }
    }

    fn from_box(z: &ComplexInterval) -> Disk {
        let rad = z.re.width().add(&z.im.width()).shl(-1);
        Disk {
            re: z.re.mid(),
            im: z.im.mid(),
            rad,
        }
    }

    fn centre_abs(&self, prec: u32, mode: Rounding) -> Dyadic {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).nth_root(2, prec, mode)
    }

    /// `|re| + |im|`: cheap, at most `sqrt(2)` times too large.
    fn centre_abs_rough(&self) -> Dyadic {
        self.re.abs().add(&self.im.abs())
    }

    fn abs_upper(&self) -> Dyadic {
        self.centre_abs_rough().add(&self.rad)
    }

    /// Product with `other`, whose centre modulus is bounded by `other_abs`.
    /// Only `other_abs` multiplies the running radius, so it must be tight.
    fn mul(&self, other: &Disk, other_abs: &Dyadic, prec: u32) -> Disk {
        let (re, e1) = round_down(&self.re.mul(&other.re).sub(&self.im.mul(&other.im)), prec);
        let (im, e2) = round_down(&self.re.mul(&other.im).add(&self.im.mul(&other.re)), prec);
        let rad = self
            .centre_abs_rough()
            .mul(&other.rad)
            .add(&other_abs.mul(&self.rad))
            .add(&self.rad.mul(&other.rad))
            .add(&e1)
            .add(&e2)
            .round(prec, Rounding::Ceil);
        Disk { re, im, rad }
    }

    fn scale(&self, k: &BigRational, prec: u32) -> Disk {
        let lo = Dyadic::from_rational(k, prec, Rounding::Floor);
        let hi = Dyadic::from_rational(k, prec, Rounding::Ceil);
        let abs = lo.abs().max(hi.abs());
        let real = Disk {
            re: lo.clone(),
            im: Dyadic::zero(),
            rad: hi.sub(&lo),
        };
        self.mul(&real, &abs, prec)
    }

    fn add(&self, other: &Disk, prec: u32) -> Disk {
        let (re, e1) = round_down(&self.re.add(&other.re), prec);
        let (im, e2) = round_down(&self.im.add(&other.im), prec);
        let rad = self.rad.add(&other.rad).add(&e1).add(&e2).round(prec, Rounding::Ceil);
        Disk { re, im, rad }
    }
}

/// Enclosure of `|sum_{r>=m} C(a,r) z^r|`.
fn first_tail(a: &BigRational, z: &ComplexInterval, abs_z: &Interval, m: u32, prec: u32) -> Result<Interval> {
    let ratio = |r: u32| (a - BigRational::from_integer(r.into())) / rat(r + 1, 1);
    let one_minus = &Interval::one(prec) - abs_z;
    let zd = Disk::from_box(z);
    let z_abs = zd.centre_abs(prec, Rounding::Ceil);
    let mut term = Disk::point(Dyadic::one(), Dyadic::zero());
    for r in 0..m {
        term = term.mul(&zd, &z_abs, prec).scale(&ratio(r), prec);
    }
    let tol = term.abs_upper().shl(-truncation_bits(prec));
    let mut sum = Disk::point(Dyadic::zero(), Dyadic::zero());
    let mut r = m;
    let remainder = loop {
        sum = sum.add(&term, prec);
        let next = term.mul(&zd, &z_abs, prec).scale(&ratio(r), prec);
        r += 1;
        // (a - j)/(j + 1) <= 1 in absolute value once 2j + 1 >= a
        if a <= &rat(2 * r + 1, 1) {
            let mag = next.abs_upper();
            if mag.is_zero() {
                break Dyadic::zero();
            }
            let bound = Interval::point(mag, prec).div(&one_minus)?;
            if bound.hi() <= &tol {
                break bound.hi().clone();
            }
        }
        if r > MAX_TERMS {
            return Err(Error::Inconclusive {
                bits: prec,
                what: "binomial tail did not converge".into(),
            });
        }
        term = next;
    };
    let slack = sum.rad.add(&remainder);
    let lo = sum.centre_abs(prec, Rounding::Floor).sub(&slack).max(Dyadic::zero());
    let hi = sum.centre_abs(prec, Rounding::Ceil).add(&slack);
    Ok(Interval::new(lo, hi, prec))
}

/// Enclosure of `sum_{r>=m} (a)_r / r! * x^r` (all terms nonnegative).
fn second_tail(a: &BigRational, x: &Interval, m: u32, prec: u32) -> Result<Interval> {
    let ratio_q = |r: u32| (a + BigRational::from_integer(r.into())) / rat(r + 1, 1);
    let mut term = Interval::one(prec);
    for r in 0..m {
        term = &(&term * x) * &Interval::from_rational(&ratio_q(r), prec);
    }
    let tol = term.hi().shl(-truncation_bits(prec));
    let mut sum = Interval::zero(prec);
    let mut r = m;
    let x_hi = Interval::point(x.hi().clone(), prec);
    let remainder = loop {
        sum = &sum + &term;
        let next = &(&term * x) * &Interval::from_rational(&ratio_q(r), prec);
        r += 1;
        if next.hi().is_zero() {
            break Dyadic::zero();
        }
        // sup_{j >= r} (a + j)/(j + 1) is the j = r value when a >= 1, else 1
        let worst = ratio_q(r).max(BigRational::one());
        let rho = &x_hi * &Interval::from_rational(&worst, prec);
        if rho.hi() < &Dyadic::one() {
            let bound = Interval::point(next.hi().clone(), prec).div(&(&Interval::one(prec) - &rho))?;
            if bound.hi() <= &tol {
                break bound.hi().clone();
            }
        }
        if r > MAX_TERMS {
            return Err(Error::Inconclusive {
                bits: prec,
                what: "majorant tail did not converge".into(),
            });
        }
        term = next;
    };
    Ok(Interval::new(sum.lo().clone(), sum.hi().add(&remainder), prec))
}

/// Enclosure of `a(a+1)...(a+m-1)/m! * x^m * (1-x)^{-a-m}`.
fn majorant(a: &BigRational, x: &Interval, m: u32, prec: u32) -> Result<Interval> {
    let mut poch = BigRational::one();
    for j in 0..m {
        poch = poch * (a + BigRational::from_integer(j.into())) / rat(j + 1, 1);
    }
    let expo = a + BigRational::from_integer(m.into());
    let num = expo
        .numer()
        .to_i64()
        .ok_or_else(|| Error::DegenerateInput("exponent numerator too large".into()))?;
    let den = expo
        .denom()
        .to_u32()
        .ok_or_else(|| Error::DegenerateInput("exponent denominator too large".into()))?;
    let one_minus = &Interval::one(prec) - x;
    let factor = one_minus.pow_ratio(-num, den)?;
    Ok(&(&Interval::from_rational(&poch, prec) * &x.pow_int(m)) * &factor)
}

/// Computes and certifies the tail chain at the precision carried by `z`.
///
/// Returns [`Error::Inconclusive`] when the enclosures are too wide to order.
pub fn tail_bounds(a: &BigRational, z: &ComplexInterval, m: u32) -> Result<TailBounds> {
    let tb = tail_bounds_unchecked(a, z, m)?;
    if tb.chain_certified() {
        Ok(tb)
    } else {
        Err(Error::Inconclusive {
            bits: z.prec(),
            what: format!("tail chain not ordered for a={}, m={}", tb.a, m),
        })
    }
}

/// Like [`tail_bounds`] but returns the enclosures without judging them.
pub fn tail_bounds_unchecked(a: &BigRational, z: &ComplexInterval, m: u32) -> Result<TailBounds> {
    if !a.is_positive() {
        return Err(Error::DegenerateInput(format!("a = {a} must be positive")));
    }
    if m == 0 {
        return Err(Error::DegenerateInput("m must be at least 1".into()));
    }
    let prec = z.prec();
    let abs_z = z.abs();
    if abs_z.hi() >= &Dyadic::one() {
        return Err(Error::NotInUnitDisk);
    }
    let e1_bound = first_tail(a, z, &abs_z, m, prec)?;
    let e2_value = second_tail(a, &abs_z, m, prec)?;
    let lemma6_bound = majorant(a, &abs_z, m, prec)?;
    Ok(TailBounds {
        a: a.clone(),
        m,
        abs_z,
        e1_bound,
        e2_value,
        lemma6_bound,
    })
}

/// Exact rational point `re + i*im` enclosed at `prec` bits.
pub fn rational_point(re: &BigRational, im: &BigRational, prec: u32) -> ComplexInterval {
    ComplexInterval::new(Interval::from_rational(re, prec), Interval::from_rational(im, prec))
}

/// [`tail_bounds`] for an exact rational `z`, doubling the precision from
/// `prec` on inconclusive results up to the global maximum.
pub fn tail_bounds_auto(
    a: &BigRational,
    re: &BigRational,
    im: &BigRational,
    m: u32,
    prec: u32,
) -> Result<(TailBounds, u32)> {
    let mut bits = prec;
    loop {
        match tail_bounds(a, &rational_point(re, im, bits), m) {
            Err(Error::Inconclusive { .. }) if bits < MAX_PRECISION => bits *= 2,
            other => return other.map(|tb| (tb, bits)),
        }
    }
}

/// Exact rational points on the unit circle approximating `2*pi*j/count`,
/// built from rational half-angle tangents so that `c^2 + s^2 = 1` holds exactly.
pub fn rational_directions(count: u32) -> Vec<(BigRational, BigRational)> {
    (0..count)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / count as f64;
            let half = theta / 2.0;
            if (half - std::f64::consts::FRAC_PI_2).abs() < 1e-12 {
                return (-BigRational::one(), BigRational::zero());
            }
            // tan(theta/2) to 1/1024 resolution
            let t = BigRational::new(BigInt::from((half.tan() * 1024.0).round() as i64), BigInt::from(1024));
            let t2 = &t * &t;
            let den = BigRational::one() + &t2;
            ((BigRational::one() - &t2) / &den, (BigRational::from_integer(2.into()) * &t) / den)
        })
        .collect()
}

/// Reduce `num/den` (helper for callers sampling grids).
pub fn ratio(num: i64, den: i64) -> BigRational {
    let g = num.gcd(&den).max(1);
    BigRational::new((num / g).into(), (den / g).into())
}

/// One grid point: `a`, `z = r (c + i s)` with `(c, s)` on the unit circle, and `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSample {
    pub a: BigRational,
    pub radius: BigRational,
    pub direction: (BigRational, BigRational),
    pub m: u32,
}

impl TailSample {
    pub fn z(&self) -> (BigRational, BigRational) {
        (&self.radius * &self.direction.0, &self.radius * &self.direction.1)
    }
}

/// `count` seeded samples with `a = k/den` in `(0, 5]` (`den <= 12`),
/// `|z| = j/20 <= 0.9` over 16 directions, and `1 <= m <= 20`.
pub fn random_grid(count: usize, seed: u64) -> Vec<TailSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs = rational_directions(16);
    (0..count)
        .map(|_| {
            let den = rng.gen_range(1..=12i64);
            let k = rng.gen_range(1..=5 * den);
            TailSample {
                a: ratio(k, den),
                radius: ratio(rng.gen_range(0..=18), 20),
                direction: dirs[rng.gen_range(0..dirs.len())].clone(),
                m: rng.gen_range(1..=20),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct TailSweep {
    pub points: usize,
    pub certified: usize,
    /// Samples still unordered at the maximum precision.
    pub inconclusive: Vec<TailSample>,
    /// Samples whose chain is refuted: an enclosure is strictly out of order.
    pub refuted: Vec<TailSample>,
    /// Largest number of precision doublings used by any sample.
    pub max_doublings: u32,
}

impl TailSweep {
    pub fn all_certified(&self) -> bool {
        self.certified == self.points
    }
}

/// Certify the chain at each sample, starting at `prec` bits.
pub fn sweep(samples: &[TailSample], prec: u32) -> Result<TailSweep> {
    let outcomes: Vec<(usize, Result<(TailBounds, u32)>)> = samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let (re, im) = s.z();
            (i, tail_bounds_auto(&s.a, &re, &im, s.m, prec))
        })
        .collect();
    let mut out = TailSweep {
        points: samples.len(),
        ..TailSweep::default()
    };
    for (i, res) in outcomes {
        match res {
            Ok((_, bits)) => {
                out.certified += 1;
                out.max_doublings = out.max_doublings.max((bits / prec).trailing_zeros());
            }
            Err(Error::Inconclusive { .. }) => {
                let (re, im) = samples[i].z();
                let tb = tail_bounds_unchecked(&samples[i].a, &rational_point(&re, &im, MAX_PRECISION), samples[i].m)?;
                let refuted = tb.e2_value.certainly_lt(&tb.e1_bound) || tb.lemma6_bound.certainly_lt(&tb.e2_value);
                if refuted {
                    out.refuted.push(samples[i].clone());
                } else {
                    out.inconclusive.push(samples[i].clone());
                }
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
