//! The nine imaginary quadratic fields of class number one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadint::QuadInt;

/// Radicands `d` for which `Q(sqrt(d))` is imaginary quadratic of class number one.
pub const CLASS_NUMBER_ONE: [i64; 9] = [-1, -2, -3, -7, -11, -19, -43, -67, -163];

/// Which integral basis `{1, w}` the ring of integers uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaKind {
    /// `w = sqrt(d)`, used when `d = 2, 3 (mod 4)`.
    Sqrt,
    /// `w = (1 + sqrt(d)) / 2`, used when `d = 1 (mod 4)`.
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    d: i64,
    disc: i64,
    omega_kind: OmegaKind,
}

impl FieldSpec {
    /// Validates `d` against the class-number-one list.
    pub fn new(d: i64) -> Result<Self> {
        if !CLASS_NUMBER_ONE.contains(&d) {
            return Err(Error::NotClassNumberOne(d));
        }
        let half = d.rem_euclid(4) == 1;
        Ok(FieldSpec {
            d,
            disc: if half { d } else { 4 * d },
            omega_kind: if half { OmegaKind::Half } else { OmegaKind::Sqrt },
        })
    }

    /// All nine admissible fields, in the order of [`CLASS_NUMBER_ONE`].
    pub fn all() -> Vec<FieldSpec> {
        CLASS_NUMBER_ONE
            .iter()
            .map(|&d| FieldSpec::new(d).expect("listed radicand"))
            .collect()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.omega_kind
    }

    /// `(c0, c1)` with `w^2 = c0 + c1 * w`.
    ///
    /// The minimal polynomial of `w` is `X^2 - c1 X - c0`, so `tr(w) = c1`
    /// and `N(w) = -c0`.
    pub fn omega_relation(&self) -> (i64, i64) {
        match self.omega_kind {
            OmegaKind::Sqrt => (self.d, 0),
            OmegaKind::Half => ((self.d - 1) / 4, 1),
        }
    }

    /// Order of the unit group: 4 for `d = -1`, 6 for `d = -3`, 2 otherwise.
    pub fn unit_count(&self) -> usize {
        match self.d {
            -1 => 4,
            -3 => 6,
            _ => 2,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.d)
    }
}

/// Construct the field for radicand `d`.
pub fn field_spec(d: i64) -> Result<FieldSpec> {
    FieldSpec::new(d)
}

/// The finite unit group of an imaginary quadratic field (all roots of unity).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    pub elements: Vec<QuadInt>,
}

impl UnitGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuadInt> {
        self.elements.iter()
    }

    /// Units other than 1.
    pub fn nontrivial(&self) -> impl Iterator<Item = &QuadInt> {
        self.elements.iter().filter(|u| !u.is_one())
    }
}

/// Listed as powers of a generator: `i` for `d = -1`, `w` (a primitive sixth
/// root of unity) for `d = -3`, `-1` otherwise.
pub fn units(field: FieldSpec) -> UnitGroup {
    let generator = match field.d() {
        -1 | -3 => QuadInt::omega(field),
        _ => -QuadInt::one(field),
    };
    let mut elements = Vec::with_capacity(field.unit_count());
    let mut cur = QuadInt::one(field);
    for _ in 0..field.unit_count() {
        elements.push(cur.clone());
        cur = &cur * &generator;
    }
    debug_assert!(cur.is_one());
    UnitGroup { elements }
}
