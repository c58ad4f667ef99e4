//! Distance from `b^q` to the `p`-th roots of `(b^p - 1)^q + 1`.
//!
//! Every root is enclosed in a certified disk: a Newton-refined centre `c`
//! and a radius derived from `|c^p - W|` and lower bounds on the spacing of
//! the `p` roots on their circle (`2R sin(pi k/p) >= 4Rk/p`), so no
//! trigonometric enclosures are needed.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::complex::ComplexInterval;
use super::dyadic::Dyadic;
use super::interval::{Interval, MAX_PRECISION};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::quadint::QuadInt;
use crate::search::elements_in_norm_range;

#[derive(Debug, Clone)]
pub struct RootGap {
    /// Enclosure of the smallest distance `|root - b^q|`.
    pub eps_abs: Interval,
    /// Exactly one root lies within 1/2 of `b^q` and every other root lies beyond.
    pub unique_root: bool,
    /// Distance enclosures for all `p` roots.
    pub distances: Vec<Interval>,
    pub prec: u32,
}

impl RootGap {
    /// `0 < |eps| <= 1/2` with a unique qualifying root.
    pub fn holds(&self) -> bool {
        self.unique_root && self.eps_abs.is_positive() && self.eps_abs.hi() <= &half()
    }
}

fn half() -> Dyadic {
    Dyadic::one().shl(-1)
}

fn complex_from_f64(re: f64, im: f64, prec: u32) -> ComplexInterval {
    ComplexInterval::from_dyadic(
        Dyadic::from_f64(re).unwrap_or_else(Dyadic::zero),
        Dyadic::from_f64(im).unwrap_or_else(Dyadic::zero),
        prec,
    )
}

/// Approximate `p`-th roots of `W`, refined by Newton at `prec` bits.
/// Non-rigorous; certification happens in [`root_disks`].
pub(crate) fn approximate_roots(w: &QuadInt, p: u32, prec: u32) -> Vec<ComplexInterval> {
    let (log2, arg) = w.approx_log2_abs_arg();
    let mag_log2 = log2 / p as f64;
    let w_c = ComplexInterval::from_quadint(w, prec).mid();
    let p_iv = Interval::from_int(p, prec);
    let iterations = 3 + (prec as f64 / 40.0).log2().ceil().max(0.0) as u32;
    (0..p)
        .map(|k| {
            let theta = (arg + std::f64::consts::TAU * k as f64) / p as f64;
            // centre scaled by 2^(floor part) to stay in f64 range
            let whole = mag_log2.floor();
            let frac = 2f64.powf(mag_log2 - whole);
            let mut c = complex_from_f64(frac * theta.cos(), frac * theta.sin(), prec);
            let shift = whole as i64;
            c = ComplexInterval::from_dyadic(c.re.mid().shl(shift), c.im.mid().shl(shift), prec);
            for _ in 0..iterations {
                let c_pm1 = c.pow_int(p - 1);
                let f = &(&c_pm1 * &c) - &w_c;
                let df = c_pm1.scale(&p_iv);
                match f.div(&df) {
                    Ok(step) => c = (&c - &step).mid(),
                    Err(_) => break,
                }
            }
            c
        })
        .collect()
}

/// Certified disks `(centre, radius)` around each approximate root.
/// `None` if the radii cannot be certified at this precision.
fn root_disks(w: &QuadInt, p: u32, prec: u32) -> Result<Option<Vec<(ComplexInterval, Dyadic)>>> {
    let centres = approximate_roots(w, p, prec);
    let w_c = ComplexInterval::from_quadint(w, prec);
    // R = |W|^(1/p) = N(W)^(1/(2p))
    let radius = Interval::from_int(w.norm(), prec).nth_root(2 * p)?;
    let r_lo = Interval::point(radius.lo().clone(), prec);
    let p_iv = Interval::from_int(p, prec);
    let mut out = Vec::with_capacity(p as usize);
    for c in centres {
        let delta = (&c.pow_int(p) - &w_c).abs();
        let delta_hi = Interval::point(delta.hi().clone(), prec);
        // some root lies within delta^(1/p) of c
        let r0 = delta_hi.nth_root(p)?;
        let mut denom = Interval::one(prec);
        for k in 1..p {
            let kappa = k.min(p - k);
            let sep = (&(&r_lo * &Interval::from_int(4 * kappa, prec))).div(&p_iv)?;
            let gap = &sep - &r0;
            if !gap.is_positive() {
                return Ok(None);
            }
            denom = &denom * &gap;
        }
        let rad = delta_hi.div(&denom)?;
        out.push((c, rad.hi().clone()));
    }
    // disks pairwise disjoint => one root each
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let d2 = (&out[i].0 - &out[j].0).abs_sq();
            let rsum = Interval::point(out[i].1.add(&out[j].1), prec);
            if !rsum.sqr().certainly_lt(&d2) {
                return Ok(None);
            }
        }
    }
    Ok(Some(out))
}

fn check_exponents(p: u32, q: u32) -> Result<()> {
    if !(p > q && q >= 3) {
        return Err(Error::InvalidExponents {
            p: p as u64,
            q: q as u64,
            reason: "need p > q >= 3",
        });
    }
    Ok(())
}

/// Enclose `|((b^p-1)^q+1)^(1/p) - b^q|` over all `p` branches at `prec` bits.
pub fn theorem1_epsilon(b: &QuadInt, p: u32, q: u32, prec: u32) -> Result<RootGap> {
    check_exponents(p, q)?;
    let norm = b.norm();
    if norm < BigInt::from(4) {
        return Err(Error::AbsTooSmall(norm.to_string()));
    }
    let one = QuadInt::one(b.field());
    let w = &(&b.pow(p) - &one).pow(q) + &one;
    let target = ComplexInterval::from_quadint(&b.pow(q), prec);
    let inconclusive = |what: &str| Error::Inconclusive {
        bits: prec,
        what: format!("{what} for b={b}, p={p}, q={q}"),
    };
    let disks = root_disks(&w, p, prec)?.ok_or_else(|| inconclusive("root disks overlap"))?;
    let distances: Vec<Interval> = disks
        .iter()
        .map(|(c, rad)| {
            let d = (c - &target).abs();
            let lo = d.lo().sub(rad).max(Dyadic::zero());
            Interval::new(lo, d.hi().add(rad), prec)
        })
        .collect();
    let h = half();
    let near: Vec<usize> = (0..distances.len())
        .filter(|&i| distances[i].hi() <= &h)
        .collect();
    let undecided = distances
        .iter()
        .any(|d| d.lo() <= &h && d.hi() > &h);
    if undecided {
        return Err(inconclusive("a root distance straddles 1/2"));
    }
    let eps_abs = distances
        .iter()
        .min_by(|x, y| x.lo().cmp(y.lo()))
        .expect("p >= 1 roots")
        .clone();
    // |eps| = 0 iff b^{pq} = W exactly
    let exact_zero = (&b.pow(p * q) - &w).is_zero();
    if !exact_zero && !eps_abs.is_positive() {
        return Err(inconclusive("|eps| > 0 not separated from zero"));
    }
    Ok(RootGap {
        eps_abs,
        unique_root: near.len() == 1,
        distances,
        prec,
    })
}

/// [`theorem1_epsilon`] with precision doubling on inconclusive results.
pub fn theorem1_epsilon_auto(b: &QuadInt, p: u32, q: u32, prec: u32) -> Result<RootGap> {
    let mut bits = prec;
    loop {
        match theorem1_epsilon(b, p, q, bits) {
            Err(Error::Inconclusive { .. }) if bits < MAX_PRECISION => bits *= 2,
            other => return other,
        }
    }
}

/// Upper bound `|b|^{q-p} + 2|b|^{q-2p} + 4|b|^{-pq}` from the proof, at `|b|^2 = norm`.
pub fn analytic_upper_bound(norm: &BigInt, p: u32, q: u32, prec: u32) -> Result<Interval> {
    let abs_b = Interval::from_int(norm.clone(), prec).sqrt()?;
    let term = |e: i64| -> Result<Interval> {
        let base = abs_b.pow_int(e.unsigned_abs() as u32);
        if e < 0 {
            base.recip()
        } else {
            Ok(base)
        }
    };
    let (p, q) = (p as i64, q as i64);
    let a = term(q - p)?;
    let b = &term(q - 2 * p)? * &Interval::from_int(2, prec);
    let c = &term(-p * q)? * &Interval::from_int(4, prec);
    Ok(&(&a + &b) + &c)
}

/// `f64` estimate of the smallest distance; for reports only.
pub fn epsilon_estimate(gap: &RootGap) -> f64 {
    gap.eps_abs.mid().to_f64()
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Sweep {
    pub field: FieldSpec,
    pub p: u32,
    pub q: u32,
    pub norm_max: u64,
    pub checked: usize,
    pub certified: usize,
    /// Bases where the enclosures are decided but the claim fails.
    pub failures: Vec<QuadInt>,
    /// Bases still undecided at the maximum precision.
    pub inconclusive: Vec<QuadInt>,
    /// Largest `|eps|` seen, as an `f64` estimate.
    pub max_eps: f64,
    pub max_bits: u32,
}

impl Theorem1Sweep {
    pub fn all_certified(&self) -> bool {
        self.certified == self.checked
    }
}

/// Run [`theorem1_epsilon_auto`] on every `b` with `4 <= N(b) <= norm_max`.
pub fn theorem1_sweep(field: FieldSpec, p: u32, q: u32, norm_max: u64, prec: u32) -> Result<Theorem1Sweep> {
    check_exponents(p, q)?;
    let bases = elements_in_norm_range(field, 4, norm_max);
    let outcomes: Vec<(QuadInt, Result<RootGap>)> = bases
        .into_par_iter()
        .map(|b| {
            let r = theorem1_epsilon_auto(&b, p, q, prec);
            (b, r)
        })
        .collect();
    let mut sweep = Theorem1Sweep {
        field,
        p,
        q,
        norm_max,
        checked: outcomes.len(),
        certified: 0,
        failures: vec![],
        inconclusive: vec![],
        max_eps: 0.0,
        max_bits: prec,
    };
    for (b, r) in outcomes {
        match r {
            Ok(gap) => {
                sweep.max_bits = sweep.max_bits.max(gap.prec);
                sweep.max_eps = sweep.max_eps.max(epsilon_estimate(&gap));
                if gap.holds() {
                    sweep.certified += 1;
                } else {
                    sweep.failures.push(b);
                }
            }
            Err(Error::Inconclusive { .. }) => sweep.inconclusive.push(b),
            Err(e) => return Err(e),
        }
    }
    Ok(sweep)
}
