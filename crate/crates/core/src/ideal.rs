//! Integral ideals in Hermite normal form and the splitting of rational primes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::primes::{is_prime, kronecker};
use crate::quadint::QuadInt;

/// A nonzero integral ideal with Z-basis `{n, m + k*w}`.
///
/// Canonical: `n > 0`, `k > 0`, `0 <= m < n`, `k | n`, `k | m`. Norm is `n*k`.
/// As a matrix over `{1, w}` with generators in columns this is `[[n, m], [0, k]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    field: FieldSpec,
    n: BigInt,
    m: BigInt,
    k: BigInt,
}

impl Ideal {
    /// Z-module spanned by the given coordinate vectors, reduced to HNF.
    ///
    /// Fails with [`Error::ZeroIdeal`] if the span is not of full rank. The
    /// caller is responsible for the span being closed under `w`.
    fn from_module(field: FieldSpec, gens: impl IntoIterator<Item = (BigInt, BigInt)>) -> Result<Self> {
        // pivot carries the gcd of the w-coordinates seen so far
        let mut pivot: Option<(BigInt, BigInt)> = None;
        let mut n = BigInt::zero();
        for (ga, gb) in gens {
            if gb.is_zero() {
                n = n.gcd(&ga);
                continue;
            }
            match pivot.take() {
                None => pivot = Some((ga, gb)),
                Some((va, vb)) => {
                    let e = vb.extended_gcd(&gb);
                    let h = e.gcd;
                    let (s, t) = (e.x, e.y);
                    let new_a = &s * &va + &t * &ga;
                    let new_b = &s * &vb + &t * &gb;
                    let gq = &gb / &h;
                    let vq = &vb / &h;
                    let w_a = &gq * &va - &vq * &ga;
                    n = n.gcd(&w_a);
                    pivot = Some((new_a, new_b));
                }
            }
        }
        let (va, vb) = pivot.ok_or(Error::ZeroIdeal)?;
        if n.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let (va, k) = if vb.is_negative() { (-va, -vb) } else { (va, vb) };
        let m = va.mod_floor(&n);
        Ok(Ideal { field, n, m, k })
    }

    /// Ideal generated (as an ideal) by the given elements.
    pub fn generated_by(field: FieldSpec, elems: &[QuadInt]) -> Result<Self> {
        let w = QuadInt::omega(field);
        let mut gens = Vec::with_capacity(2 * elems.len());
        for x in elems {
            if x.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.d(),
                    right: x.field().d(),
                });
            }
            let wx = &w * x;
            gens.push((x.a().clone(), x.b().clone()));
            gens.push((wx.a().clone(), wx.b().clone()));
        }
        Self::from_module(field, gens)
    }

    pub fn unit(field: FieldSpec) -> Self {
        Ideal {
            field,
            n: BigInt::one(),
            m: BigInt::zero(),
            k: BigInt::one(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `(n, m, k)`.
    pub fn hnf(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.n, &self.m, &self.k)
    }

    /// Z-basis as elements: `n` and `m + k*w`.
    pub fn basis(&self) -> [QuadInt; 2] {
        [
            QuadInt::from_int(self.field, self.n.clone()),
            QuadInt::new(self.field, self.m.clone(), self.k.clone()),
        ]
    }

    pub fn norm(&self) -> BigInt {
        &self.n * &self.k
    }

    pub fn is_unit(&self) -> bool {
        self.n.is_one()
    }

    fn check_field(&self, field: FieldSpec) -> Result<()> {
        if self.field == field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.d(),
                right: field.d(),
            })
        }
    }

    /// Exact membership: solve `x = s*n + t*(m + k*w)` over Z.
    pub fn contains(&self, x: &QuadInt) -> Result<bool> {
        self.check_field(x.field())?;
        let (t, rb) = x.b().div_rem(&self.k);
        if !rb.is_zero() {
            return Ok(false);
        }
        Ok((x.a() - &t * &self.m).is_multiple_of(&self.n))
    }

    /// `self ⊆ other`, i.e. `other | self`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in self.basis() {
            if !other.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks the HNF shape and closure under multiplication by `w`.
    pub fn is_well_formed(&self) -> bool {
        let shape = self.n.is_positive()
            && self.k.is_positive()
            && !self.m.is_negative()
            && self.m < self.n
            && self.n.is_multiple_of(&self.k)
            && self.m.is_multiple_of(&self.k);
        shape && {
            let w = QuadInt::omega(self.field);
            self.basis()
                .iter()
                .all(|g| self.contains(&(&w * g)).unwrap_or(false))
        }
    }

    /// `I + J`, which is `gcd(I, J)`.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_field(other.field)?;
        let gens = self
            .basis()
            .into_iter()
            .chain(other.basis())
            .map(|g| (g.a().clone(), g.b().clone()));
        Self::from_module(self.field, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_field(other.field)?;
        let mut gens = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                let z = &x * &y;
                gens.push((z.a().clone(), z.b().clone()));
            }
        }
        Self::from_module(self.field, gens)
    }

    pub fn pow(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(self.field);
        for _ in 0..e {
            acc = acc.product(self).expect("same field");
        }
        acc
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hnf[{},{},{}]@{}", self.n, self.m, self.k, self.field.d())
    }
}

impl FromStr for Ideal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected hnf[n,m,k]@d, got {s:?}"));
        let (body, d) = s
            .trim()
            .strip_prefix("hnf[")
            .and_then(|t| t.split_once("]@"))
            .ok_or_else(bad)?;
        let field = FieldSpec::new(d.parse().map_err(|_| bad())?)?;
        let parts: Vec<BigInt> = body
            .split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [n, m, k]: [BigInt; 3] = parts.try_into().map_err(|_| bad())?;
        let ideal = Ideal { field, n, m, k };
        if !ideal.is_well_formed() {
            return Err(Error::Parse(format!("{s:?} is not a canonical ideal HNF")));
        }
        Ok(ideal)
    }
}

impl serde::Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn principal_ideal(x: &QuadInt) -> Result<Ideal> {
    if x.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ideal::generated_by(x.field(), std::slice::from_ref(x))
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.sum(j)
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.product(j)
}

pub fn ideal_norm(i: &Ideal) -> BigInt {
    i.norm()
}

pub fn contains(i: &Ideal, x: &QuadInt) -> Result<bool> {
    i.contains(x)
}

/// How a rational prime factors in O_K.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitType {
    /// `p = P1 * P2`, `P2` the conjugate of `P1`.
    Split(Ideal, Ideal),
    Inert(Ideal),
    /// `p = P^2`.
    Ramified(Ideal),
}

impl SplitType {
    pub fn primes(&self) -> Vec<&Ideal> {
        match self {
            SplitType::Split(a, b) => vec![a, b],
            SplitType::Inert(a) | SplitType::Ramified(a) => vec![a],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SplitType::Split(..) => "split",
            SplitType::Inert(_) => "inert",
            SplitType::Ramified(_) => "ramified",
        }
    }
}

/// Roots of the minimal polynomial `X^2 - c1 X - c0` of `w` modulo `p`.
fn omega_roots_mod(field: FieldSpec, p: u64) -> Vec<u64> {
    let (c0, c1) = field.omega_relation();
    let p_i = p as i128;
    let (c0, c1) = ((c0 as i128).rem_euclid(p_i), (c1 as i128).rem_euclid(p_i));
    (0..p)
        .filter(|&r| {
            let r = r as i128;
            (r * r - c1 * r - c0).rem_euclid(p_i) == 0
        })
        .collect()
}

/// Factor the rational prime `p` in O_K.
///
/// Ramified iff `p | disc`; split iff the Kronecker symbol `(disc/p)` is +1.
/// Primes above `p` are `<p, w - r>` for roots `r` of the minimal polynomial
/// of `w` mod `p`.
pub fn split_type(field: FieldSpec, p: u64) -> Result<SplitType> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let prime_above = |r: u64| {
        let gens = [
            QuadInt::from_int(field, p),
            QuadInt::new(field, -BigInt::from(r), 1),
        ];
        Ideal::generated_by(field, &gens).expect("nonzero generators")
    };
    let roots = omega_roots_mod(field, p);
    let result = match kronecker(field.disc(), p) {
        0 => {
            debug_assert_eq!(roots.len(), 1);
            SplitType::Ramified(prime_above(roots[0]))
        }
        1 => {
            debug_assert_eq!(roots.len(), 2);
            SplitType::Split(prime_above(roots[0]), prime_above(roots[1]))
        }
        _ => {
            debug_assert!(roots.is_empty());
            SplitType::Inert(principal_ideal(&QuadInt::from_int(field, p))?)
        }
    };
    Ok(result)
}

/// All prime ideals above `p`.
pub fn primes_above(field: FieldSpec, p: u64) -> Result<Vec<Ideal>> {
    Ok(split_type(field, p)?.primes().into_iter().cloned().collect())
}
