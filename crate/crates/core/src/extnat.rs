//! Arithmetic on the extended naturals `0, 1, 2, ... , inf` and the extended
//! integers with an explicit undefined element.
//!
//! Kernel and cokernel dimensions live in [`ExtNat`]; operator indices live in
//! [`ExtInt`]. Subtraction `inf - inf` is not an error but the first-class
//! value [`ExtInt::Undefined`], so downstream predicates can treat "index
//! undefined" as an ordinary outcome.

use std::cmp::Ordering;
use std::fmt;

/// A natural number or infinity. Dimensions above countable are not
/// distinguished; `Inf` absorbs addition and is the maximum of the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Inf)
    }

    /// Finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(v) => Some(v),
            ExtNat::Inf => None,
        }
    }

    /// Sum with `inf` absorbing.
    pub fn add(self, other: ExtNat) -> ExtNat {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtNat::Fin(a + b),
            _ => ExtNat::Inf,
        }
    }

    /// Sum of a sequence of extended naturals.
    pub fn sum<I: IntoIterator<Item = ExtNat>>(items: I) -> ExtNat {
        items.into_iter().fold(ExtNat::ZERO, ExtNat::add)
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.cmp(b),
            (ExtNat::Fin(_), ExtNat::Inf) => Ordering::Less,
            (ExtNat::Inf, ExtNat::Fin(_)) => Ordering::Greater,
            (ExtNat::Inf, ExtNat::Inf) => Ordering::Equal,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Fin(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(v) => write!(f, "{v}"),
            ExtNat::Inf => write!(f, "inf"),
        }
    }
}

/// An integer, a signed infinity, or the undefined difference `inf - inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Fin(i64),
    PlusInf,
    MinusInf,
    Undefined,
}

impl ExtInt {
    pub fn is_defined(self) -> bool {
        !matches!(self, ExtInt::Undefined)
    }

    /// `<= 0`, false when undefined.
    pub fn le_zero(self) -> bool {
        match self {
            ExtInt::Fin(v) => v <= 0,
            ExtInt::MinusInf => true,
            ExtInt::PlusInf | ExtInt::Undefined => false,
        }
    }

    /// `>= 0`, false when undefined.
    pub fn ge_zero(self) -> bool {
        match self {
            ExtInt::Fin(v) => v >= 0,
            ExtInt::PlusInf => true,
            ExtInt::MinusInf | ExtInt::Undefined => false,
        }
    }

    pub fn neg(self) -> ExtInt {
        match self {
            ExtInt::Fin(v) => ExtInt::Fin(-v),
            ExtInt::PlusInf => ExtInt::MinusInf,
            ExtInt::MinusInf => ExtInt::PlusInf,
            ExtInt::Undefined => ExtInt::Undefined,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PlusInf => write!(f, "inf"),
            ExtInt::MinusInf => write!(f, "-inf"),
            ExtInt::Undefined => write!(f, "undef"),
        }
    }
}

/// The index `alpha - beta`. Defined exactly when one of the operands is
/// finite; `inf - inf` yields [`ExtInt::Undefined`].
pub fn ext_index(alpha: ExtNat, beta: ExtNat) -> ExtInt {
    match (alpha, beta) {
        (ExtNat::Fin(a), ExtNat::Fin(b)) => ExtInt::Fin(a as i64 - b as i64),
        (ExtNat::Inf, ExtNat::Fin(_)) => ExtInt::PlusInf,
        (ExtNat::Fin(_), ExtNat::Inf) => ExtInt::MinusInf,
        (ExtNat::Inf, ExtNat::Inf) => ExtInt::Undefined,
    }
}
