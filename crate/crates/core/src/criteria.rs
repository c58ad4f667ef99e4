//! Unit congruences, gcd criteria, perfect-power extraction and the
//! necessary conditions satisfied by any solution of `x^p - y^q = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::interval::Interval;
use crate::analytic::root_gap::approximate_roots;
use crate::error::{Error, Result};
use crate::field::{units, FieldSpec, OmegaKind};
use crate::ideal::{primes_above, principal_ideal, split_type, Ideal, SplitType};
use crate::primes::{is_prime, primes_in};
use crate::quadint::QuadInt;
use crate::search::elements_with_norm;

/// A nontrivial unit congruent to 1 modulo a prime above `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitCongruence {
    pub unit: QuadInt,
    pub p: u64,
    pub prime: Ideal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma2Report {
    pub field: FieldSpec,
    pub p_max: u64,
    /// Number of `(unit, prime ideal)` pairs examined.
    pub checked: usize,
    pub witnesses: Vec<UnitCongruence>,
}

impl Lemma2Report {
    pub fn holds(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// For every unit `e != 1`, every prime `3 <= p <= p_max` and every prime
/// ideal `P` above `p`, test whether `e - 1` lies in `P`.
pub fn lemma2_verify(field: FieldSpec, p_max: u64) -> Result<Lemma2Report> {
    if p_max < 3 {
        return Err(Error::DegenerateInput(format!("p_max = {p_max} < 3")));
    }
    let one = QuadInt::one(field);
    let mut checked = 0;
    let mut witnesses = Vec::new();
    for p in primes_in(3, p_max) {
        for prime in primes_above(field, p)? {
            for e in units(field).nontrivial() {
                checked += 1;
                if prime.contains(&(e - &one))? {
                    witnesses.push(UnitCongruence {
                        unit: e.clone(),
                        p,
                        prime: prime.clone(),
                    });
                }
            }
        }
    }
    Ok(Lemma2Report {
        field,
        p_max,
        checked,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GcdSign {
    Plus,
    Minus,
}

impl GcdSign {
    fn apply(self, v: &QuadInt) -> QuadInt {
        let one = QuadInt::one(v.field());
        match self {
            GcdSign::Plus => v + &one,
            GcdSign::Minus => v - &one,
        }
    }
}

impl fmt::Display for GcdSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcdSign::Plus => "+",
            GcdSign::Minus => "-",
        })
    }
}

/// `G = <(x^p +- 1)/(x +- 1)> + <x +- 1>`.
pub fn lemma4_gcd(x: &QuadInt, p: u64, sign: GcdSign) -> Result<Ideal> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if sign == GcdSign::Plus && p == 2 {
        return Err(Error::InvalidExponents {
            p,
            q: p,
            reason: "x^p + 1 is divisible by x + 1 only for odd p",
        });
    }
    let shifted = sign.apply(x);
    if shifted.is_zero() {
        return Err(Error::DegenerateInput(format!("x {sign} 1 = 0 for x = {x}")));
    }
    let e = u32::try_from(p).map_err(|_| Error::DegenerateInput("p too large".into()))?;
    let power = sign.apply(&x.pow(e));
    let quotient = shifted
        .divides(&power)?
        .expect("x +- 1 divides x^p +- 1 for odd p");
    principal_ideal(&quotient)?.sum(&principal_ideal(&shifted)?)
}

/// `G` is the unit ideal, or contains `p` with norm `p` or `p^2`.
pub fn lemma4_holds(g: &Ideal, p: u64) -> Result<bool> {
    if g.is_unit() {
        return Ok(true);
    }
    let pb = BigInt::from(p);
    let n = g.norm();
    Ok(g.contains(&QuadInt::from_int(g.field(), p))? && (n == pb || n == &pb * &pb))
}

#[derive(Debug, Clone, Serialize)]
pub struct GcdWitness {
    pub x: QuadInt,
    pub p: u64,
    pub sign: GcdSign,
    pub gcd: Ideal,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Lemma4Sweep {
    pub checked: usize,
    /// Inputs with `x +- 1 = 0`, skipped.
    pub degenerate: usize,
    pub failures: Vec<GcdWitness>,
}

impl Lemma4Sweep {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check [`lemma4_holds`] on every `(x, p, sign)` triple.
pub fn lemma4_sweep(triples: &[(QuadInt, u64, GcdSign)]) -> Result<Lemma4Sweep> {
    let outcomes: Vec<Result<Option<Option<GcdWitness>>>> = triples
        .par_iter()
        .map(|(x, p, sign)| match lemma4_gcd(x, *p, *sign) {
            Err(Error::DegenerateInput(_)) => Ok(None),
            Err(e) => Err(e),
            Ok(g) => Ok(Some((!lemma4_holds(&g, *p)?).then(|| GcdWitness {
                x: x.clone(),
                p: *p,
                sign: *sign,
                gcd: g,
            }))),
        })
        .collect();
    let mut sweep = Lemma4Sweep::default();
    for o in outcomes {
        match o? {
            None => sweep.degenerate += 1,
            Some(w) => {
                sweep.checked += 1;
                sweep.failures.extend(w);
            }
        }
    }
    Ok(sweep)
}

/// Smallest-norm `x` whose gcd ideal is a prime above `p` different from `<p>`.
pub fn remark1_witness(field: FieldSpec, p: u64, norm_max: u64) -> Result<Option<GcdWitness>> {
    let p_ideal = principal_ideal(&QuadInt::from_int(field, p))?;
    let primes = primes_above(field, p)?;
    for n in 1..=norm_max {
        for x in elements_with_norm(field, n) {
            for sign in [GcdSign::Minus, GcdSign::Plus] {
                if sign.apply(&x).is_zero() {
                    continue;
                }
                let g = lemma4_gcd(&x, p, sign)?;
                if g != p_ideal && primes.contains(&g) {
                    return Ok(Some(GcdWitness { x, p, sign, gcd: g }));
                }
            }
        }
    }
    Ok(None)
}

/// Norms up to this bound are enumerated exhaustively when rounding fails.
pub const ENUMERATION_LIMIT: u64 = 1_000_000_000;

/// Nearest lattice point to an approximate complex value.
fn lattice_round(field: FieldSpec, z: &(Interval, Interval)) -> Option<QuadInt> {
    let prec = z.0.prec();
    let root = Interval::from_int(-field.d(), prec).sqrt().ok()?;
    let round = |iv: &Interval| -> BigInt { iv.mid().to_rational().round().to_integer() };
    let b_iv = match field.omega_kind() {
        OmegaKind::Sqrt => z.1.div(&root).ok()?,
        OmegaKind::Half => (&z.1 * &Interval::from_int(2, prec)).div(&root).ok()?,
    };
    let b = round(&b_iv);
    let shift = match field.omega_kind() {
        OmegaKind::Sqrt => Interval::zero(prec),
        OmegaKind::Half => Interval::from_rational(&BigRational::new(b.clone(), 2.into()), prec),
    };
    let a = round(&(&z.0 - &shift));
    Some(QuadInt::new(field, a, b))
}

fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    let r = n.nth_root(q);
    (num_traits::pow(r.clone(), q as usize) == *n).then_some(r)
}

/// All `r` with `r^q = z`, sorted by coordinates.
pub fn qth_roots(z: &QuadInt, q: u32) -> Vec<QuadInt> {
    assert!(q >= 2, "q >= 2");
    let field = z.field();
    if z.is_zero() {
        return vec![QuadInt::zero(field)];
    }
    let Some(n_r) = exact_root(&z.norm(), q) else {
        return vec![];
    };
    let found = root_by_rounding(z, q, &n_r).or_else(|| {
        let n = n_r.to_u64().filter(|&n| n <= ENUMERATION_LIMIT)?;
        elements_with_norm(field, n).into_iter().find(|r| r.pow(q) == *z)
    });
    let Some(r) = found else {
        return vec![];
    };
    let mut roots: Vec<QuadInt> = units(field)
        .iter()
        .filter(|u| u.pow(q).is_one())
        .map(|u| u * &r)
        .collect();
    roots.sort_by(|x, y| (x.a(), x.b()).cmp(&(y.a(), y.b())));
    roots
}

fn root_by_rounding(z: &QuadInt, q: u32, n_r: &BigInt) -> Option<QuadInt> {
    let field = z.field();
    let prec = (n_r.bits() as u32 / 2 + 64).max(64);
    for c in approximate_roots(z, q, prec) {
        let Some(centre) = lattice_round(field, &(c.re, c.im)) else {
            continue;
        };
        for da in -1..=1i32 {
            for db in -1..=1i32 {
                let r = QuadInt::new(field, centre.a() + da, centre.b() + db);
                if r.norm() == *n_r && r.pow(q) == *z {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Some `r` with `r^q = z`, or `None`.
pub fn is_perfect_qth_power(z: &QuadInt, q: u32) -> Option<QuadInt> {
    qth_roots(z, q).into_iter().next()
}

/// Case label of the argument bounding `|x|`, by the splitting of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem2Case {
    /// `q` inert.
    A,
    /// `q` split.
    B,
    /// `q` ramified.
    C,
}

impl fmt::Display for Theorem2Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem2Case::A => "a",
            Theorem2Case::B => "b",
            Theorem2Case::C => "c",
        })
    }
}

pub fn theorem2_case(field: FieldSpec, q: u64) -> Result<Theorem2Case> {
    if q < 3 {
        return Err(Error::InvalidExponents {
            p: q,
            q,
            reason: "need q >= 3",
        });
    }
    Ok(match split_type(field, q)? {
        SplitType::Inert(_) => Theorem2Case::A,
        SplitType::Split(..) => Theorem2Case::B,
        SplitType::Ramified(_) => Theorem2Case::C,
    })
}

/// `A + B sqrt(q) <= n`, decided in integers. Requires `B >= 0`.
pub fn surd_at_most(a: &BigInt, b: &BigInt, q: &BigInt, n: &BigInt) -> bool {
    debug_assert!(!b.is_negative() && !q.is_negative());
    let slack = n - a;
    !slack.is_negative() && &slack * &slack >= b * b * q
}

/// Squared bound `(q + q^{(p-2)/2})^2 = A + B sqrt(q)` for odd `p`.
fn thm2_bound_squared(p: u64, q: u64) -> (BigInt, BigInt) {
    let qb = BigInt::from(q);
    let a = &qb * &qb + num_traits::pow(qb.clone(), (p - 2) as usize);
    let b = BigInt::from(2) * num_traits::pow(qb, ((p - 1) / 2) as usize);
    (a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CasselsReport {
    pub field: FieldSpec,
    pub x: QuadInt,
    pub y: QuadInt,
    pub p: u64,
    pub q: u64,
    /// Some prime ideal above `q` contains `x`.
    pub q_divides_x: bool,
    /// Some prime ideal above `p` contains `y`.
    pub p_divides_y: bool,
    /// `|x| >= q + q^{(p-2)/2}`.
    pub bound_thm2: bool,
    /// `|x| > q + q^{p-2}`; evaluated only for `(p, q) = (5, 3)`.
    pub bound_prop1: Option<bool>,
    /// `|x| >= q^{p-1}/2`; evaluated only when `q` is inert.
    pub bound_inert: Option<bool>,
    pub case: Theorem2Case,
}

impl CasselsReport {
    /// The conditions every genuine solution must meet.
    pub fn consistent(&self) -> bool {
        self.q_divides_x && self.bound_thm2 && self.bound_prop1.unwrap_or(true)
    }
}

fn check_exponents(p: u64, q: u64) -> Result<()> {
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

/// Evaluate every report field without checking that `(x, y)` is a solution.
fn fill_report(x: &QuadInt, y: &QuadInt, p: u64, q: u64) -> Result<CasselsReport> {
    let field = x.field();
    let any_contains = |prime: u64, v: &QuadInt| -> Result<bool> {
        for ideal in primes_above(field, prime)? {
            if ideal.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    let n = x.norm();
    let qb = BigInt::from(q);
    let (a, b) = thm2_bound_squared(p, q);
    let bound_prop1 = ((p, q) == (5, 3)).then(|| {
        let s = &qb + num_traits::pow(qb.clone(), (p - 2) as usize);
        n > &s * &s
    });
    let case = theorem2_case(field, q)?;
    let bound_inert = (case == Theorem2Case::A)
        .then(|| BigInt::from(4) * &n >= num_traits::pow(qb.clone(), (2 * p - 2) as usize));
    Ok(CasselsReport {
        field,
        x: x.clone(),
        y: y.clone(),
        p,
        q,
        q_divides_x: any_contains(q, x)?,
        p_divides_y: any_contains(p, y)?,
        bound_thm2: surd_at_most(&a, &b, &qb, &n),
        bound_prop1,
        bound_inert,
        case,
    })
}

/// Check the necessary conditions on a solution `x^p - y^q = 1`.
pub fn cassels_check(x: &QuadInt, y: &QuadInt, p: u64, q: u64) -> Result<CasselsReport> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch {
            left: x.field().d(),
            right: y.field().d(),
        });
    }
    check_exponents(p, q)?;
    let (pe, qe) = (p as u32, q as u32);
    if !(x.pow(pe) - y.pow(qe)).is_one() {
        return Err(Error::NotASolution);
    }
    fill_report(x, y, p, q)
}

/// `(q + q^{(p-2)/2})^2` as a float, for display.
pub fn thm2_norm_threshold(p: u64, q: u64) -> f64 {
    let (a, b) = thm2_bound_squared(p, q);
    a.to_f64().unwrap_or(f64::INFINITY) + b.to_f64().unwrap_or(f64::INFINITY) * (q as f64).sqrt()
}

/// Smallest integer norm satisfying the bound `|x| >= q + q^{(p-2)/2}`.
pub fn thm2_min_norm(p: u64, q: u64) -> BigInt {
    let (a, b) = thm2_bound_squared(p, q);
    let qb = BigInt::from(q);
    // A + B sqrt(q) lies between A + isqrt(B^2 q) and that plus one
    let mut n = &a + (&b * &b * &qb).sqrt();
    while !surd_at_most(&a, &b, &qb, &n) {
        n += BigInt::one();
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::random_elements;
    use crate::field::field_spec;

    fn f(d: i64) -> FieldSpec {
        field_spec(d).unwrap()
    }

    #[test]
    fn unit_congruences() {
        assert!(lemma2_verify(f(-1), 97).unwrap().holds());
        assert!(lemma2_verify(f(-7), 3).unwrap().holds());
        // w^2 - 1 has norm 3 for w a primitive sixth root of unity, and lies in the prime above 3
        let r = lemma2_verify(f(-3), 5).unwrap();
        assert!(!r.holds());
        assert!(r.witnesses.iter().all(|w| w.p == 3));
        assert!(r.witnesses.iter().any(|w| w.unit == QuadInt::omega(f(-3)).pow(2)));
        assert!(lemma2_verify(f(-1), 2).is_err());
    }

    #[test]
    fn unit_congruences_all_fields_except_minus_three() {
        for field in FieldSpec::all() {
            let r = lemma2_verify(field, 97).unwrap();
            assert_eq!(r.holds(), field.d() != -3, "{field}");
        }
    }

    #[test]
    fn gcd_examples() {
        let g = lemma4_gcd(&QuadInt::from_int(f(-1), 4), 3, GcdSign::Minus).unwrap();
        assert_eq!(g, principal_ideal(&QuadInt::from_int(f(-1), 3)).unwrap());
        assert_eq!(g.norm(), BigInt::from(9));
        assert!(lemma4_holds(&g, 3).unwrap());
        let g = lemma4_gcd(&QuadInt::from_int(f(-1), 2), 3, GcdSign::Minus).unwrap();
        assert!(g.is_unit());
    }

    #[test]
    fn gcd_degenerate() {
        let one = QuadInt::one(f(-2));
        assert!(matches!(lemma4_gcd(&one, 3, GcdSign::Minus), Err(Error::DegenerateInput(_))));
        assert!(matches!(lemma4_gcd(&-one, 3, GcdSign::Plus), Err(Error::DegenerateInput(_))));
        assert!(lemma4_gcd(&QuadInt::from_int(f(-2), 5), 4, GcdSign::Minus).is_err());
    }

    #[test]
    fn proper_prime_gcd_exists() {
        for p in [5, 13] {
            let w = remark1_witness(f(-1), p, 10_000).unwrap().expect("witness");
            assert_eq!(w.gcd.norm(), BigInt::from(p));
            assert!(w.x.norm() <= BigInt::from(10_000));
        }
        let w = remark1_witness(f(-1), 5, 100).unwrap().unwrap();
        assert_eq!(lemma4_gcd(&w.x, 5, w.sign).unwrap(), w.gcd);
        // 3 is inert in Q(i): no proper prime above it
        assert!(remark1_witness(f(-1), 3, 200).unwrap().is_none());
    }

    #[test]
    fn perfect_powers() {
        let g = f(-1);
        let r = is_perfect_qth_power(&QuadInt::new(g, 2, 11), 3).unwrap();
        assert_eq!(r.pow(3), QuadInt::new(g, 2, 11));
        assert_eq!(is_perfect_qth_power(&QuadInt::one(g), 5), Some(QuadInt::one(g)));
        assert_eq!(is_perfect_qth_power(&QuadInt::from_int(g, 3), 2), None);
        assert_eq!(is_perfect_qth_power(&QuadInt::zero(g), 3), Some(QuadInt::zero(g)));
    }

    #[test]
    fn cube_roots_of_unity_give_three_roots() {
        let e = f(-3);
        let z = QuadInt::new(e, 5, -3).pow(3);
        let roots = qth_roots(&z, 3);
        assert_eq!(roots.len(), 3);
        assert!(roots.iter().all(|r| r.pow(3) == z));
    }

    #[test]
    fn huge_powers_round_trip() {
        for d in [-1, -7, -163] {
            let r = QuadInt::new(f(d), BigInt::from(10).pow(20) + 7, -(BigInt::from(3).pow(30)));
            let z = r.pow(7);
            let got = is_perfect_qth_power(&z, 7).unwrap();
            assert_eq!(got.pow(7), z);
            let off = &z + &QuadInt::one(f(d));
            assert!(is_perfect_qth_power(&off, 7).is_none());
        }
    }

    #[test]
    fn cases() {
        assert_eq!(theorem2_case(f(-11), 3).unwrap(), Theorem2Case::B);
        assert_eq!(theorem2_case(f(-3), 3).unwrap(), Theorem2Case::C);
        assert_eq!(theorem2_case(f(-1), 7).unwrap(), Theorem2Case::A);
        assert!(theorem2_case(f(-1), 2).is_err());
    }

    #[test]
    fn surd_comparison() {
        let (a, b, q) = (BigInt::from(2), BigInt::from(3), BigInt::from(2));
        // 2 + 3 sqrt 2 = 6.243
        assert!(!surd_at_most(&a, &b, &q, &BigInt::from(6)));
        assert!(surd_at_most(&a, &b, &q, &BigInt::from(7)));
        assert!(!surd_at_most(&a, &b, &q, &BigInt::from(1)));
        // (3 + 3^{3/2})^2 = 67.18...
        assert_eq!(thm2_min_norm(5, 3), BigInt::from(68));
        assert!((thm2_norm_threshold(5, 3) - (3.0 + 27f64.sqrt()).powi(2)).abs() < 1e-9);
    }

    #[test]
    fn non_solutions_are_rejected() {
        let g = f(-1);
        let two = QuadInt::from_int(g, 2);
        assert_eq!(cassels_check(&two, &QuadInt::one(g), 5, 3), Err(Error::NotASolution));
        assert!(matches!(
            cassels_check(&two, &QuadInt::one(g), 3, 5),
            Err(Error::InvalidExponents { .. })
        ));
    }

    #[test]
    fn report_fields_on_synthetic_input() {
        let g = f(-1);
        // x = 3 * 10, y = 5: 3 | x, 5 | y, N(x) = 900 is not > 900
        let x = QuadInt::from_int(g, 30);
        let y = QuadInt::from_int(g, 5);
        let r = fill_report(&x, &y, 5, 3).unwrap();
        assert!(r.q_divides_x && r.p_divides_y && r.bound_thm2);
        assert_eq!(r.bound_prop1, Some(false));
        assert_eq!(r.case, Theorem2Case::A);
        // 4 * 900 >= 3^8 = 6561 fails
        assert_eq!(r.bound_inert, Some(false));
        let r = fill_report(&QuadInt::new(g, 8, 1), &y, 5, 3).unwrap();
        assert!(!r.bound_thm2);
        assert!(!r.q_divides_x);
    }

    #[test]
    fn unit_solution_in_eisenstein_integers() {
        // w^7 - (-w)^5 = 1 with w a primitive sixth root of unity
        let e = f(-3);
        let w = QuadInt::omega(e);
        let r = cassels_check(&w, &-w.clone(), 7, 5).unwrap();
        assert!(!r.q_divides_x);
        assert!(!r.consistent());
    }

    #[test]
    fn gcd_sweep_over_random_inputs() {
        let mut triples = Vec::new();
        for field in FieldSpec::all() {
            for (i, x) in random_elements(field, 40, 1_000_000, 11).into_iter().enumerate() {
                let p = [3, 5, 7, 11, 13][i % 5];
                let sign = if i % 2 == 0 { GcdSign::Plus } else { GcdSign::Minus };
                triples.push((x, p, sign));
            }
        }
        triples.push((QuadInt::one(f(-1)), 3, GcdSign::Minus));
        let s = lemma4_sweep(&triples).unwrap();
        assert!(s.holds());
        assert_eq!(s.degenerate, 1);
        assert_eq!(s.checked, triples.len() - 1);
    }
}
