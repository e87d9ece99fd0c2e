//! The closed catalog of symbolic operators on l2 with exactly computable
//! nullity, deficiency and range-closedness at every rational complex point.
//!
//! Every expression denotes a bounded operator on a separable l2 space over
//! the standard basis `e_1, e_2, ...` (direct sums are realized by
//! interleaving the two coordinate sets). For each expression the data of
//! `D - lambda` is decided case by case:
//!
//! * `ForwardShift(k)`: `e_m -> e_{m+k}`. Injective everywhere; deficiency
//!   `k` inside the open unit disk, invertible outside, non-closed range on
//!   the circle (decided exactly by `re^2 + im^2 = 1`).
//! * `BackwardShift(k)`: the adjoint of `ForwardShift(k)`.
//! * `Diagonal`: multiplication by an eventually-constant or convergent
//!   sequence; the convergent tail runs at the harmonic rate `c + r/(m+1)`
//!   so matches against `lambda` reduce to one exact rational equation.
//! * `Spread(k)`: `e_m -> e_{km}`, an isometry. Iterating the map pushes
//!   every fixed coordinate out of each finite window, so the intersection
//!   of the ranges of its powers is trivial and the defect space (indices
//!   not divisible by `k`) is infinite-dimensional: the operator is
//!   unitarily a unilateral shift of infinite multiplicity. Inside the open
//!   unit disk `Spread(k) - lambda` is therefore bounded below with
//!   infinite-dimensional, closed-complement range.
//! * `Zero`, `Identity`: scalar spectra `{0}` and `{1}`.
//! * `DirectSum`: nullities and deficiencies add; the range is closed iff
//!   both summands' are.
//! * `Adjoint`: evaluation at the conjugate point. Internally each case is
//!   tracked as `(alpha, dim R^perp, closed)`; taking adjoints swaps the
//!   first two fields and preserves closedness, which stays exact even at
//!   points where the range is not closed (there the algebraic deficiency
//!   is infinite while `dim R^perp` may be small).

use std::fmt;

use crate::coords::Enumeration;
use crate::extnat::ExtNat;
use crate::rational::{Rational, RationalComplex};

use num_traits::Zero;
use std::cmp::Ordering;

/// Tail behaviour of a diagonal sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// `c, c, c, ...`
    Constant(RationalComplex),
    /// `c + r/(m+1)` for tail position `m = 1, 2, ...`; the values are
    /// pairwise distinct, never equal to `c`, and accumulate exactly at `c`.
    Convergent { limit: RationalComplex, rate: Rational },
}

/// A diagonal sequence: a finite prefix followed by a [`Tail`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceSpec {
    pub prefix: Vec<RationalComplex>,
    pub tail: Tail,
}

impl SequenceSpec {
    pub fn constant(prefix: Vec<RationalComplex>, value: RationalComplex) -> Self {
        SequenceSpec { prefix, tail: Tail::Constant(value) }
    }

    pub fn convergent(prefix: Vec<RationalComplex>, limit: RationalComplex, rate: Rational) -> Self {
        assert!(!rate.is_zero(), "convergent tail needs a nonzero rate");
        SequenceSpec { prefix, tail: Tail::Convergent { limit, rate } }
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Tail::Convergent { rate, .. } = &self.tail {
            if rate.is_zero() {
                return Err("convergent tail rate must be nonzero".into());
            }
        }
        Ok(())
    }

    /// The `m`-th sequence entry, 1-based.
    pub fn entry(&self, m: u64) -> RationalComplex {
        let len = self.prefix.len() as u64;
        if m <= len {
            return self.prefix[m as usize - 1].clone();
        }
        let t = m - len; // tail position, >= 1
        match &self.tail {
            Tail::Constant(c) => c.clone(),
            Tail::Convergent { limit, rate } => {
                let denom = Rational::from_integer((t + 1).into());
                let offset = RationalComplex::new(rate / denom, Rational::zero());
                limit + &offset
            }
        }
    }

    /// Coordinates where the entry equals `lambda`.
    fn matches(&self, lambda: &RationalComplex) -> Enumeration {
        let len = self.prefix.len() as u64;
        let mut head: Vec<u64> =
            (1..=len).filter(|&m| self.prefix[m as usize - 1] == *lambda).collect();
        match &self.tail {
            Tail::Constant(c) if c == lambda => {
                Enumeration::Arithmetic { head, first: len + 1, step: 1 }
            }
            Tail::Constant(_) => Enumeration::Finite(head),
            Tail::Convergent { limit, rate } => {
                // c + r/(t+1) = lambda  <=>  t + 1 = r / (lambda - c)
                let diff = lambda - limit;
                if let Some(q) = RationalComplex::new(rate.clone(), Rational::zero()).div(&diff) {
                    if q.im.is_zero() && q.re.is_integer() && q.re >= Rational::from_integer(2.into())
                    {
                        let t = q.re.to_integer();
                        if let Ok(t) = u64::try_from(t) {
                            head.push(len + (t - 1));
                        }
                    }
                }
                Enumeration::Finite(head)
            }
        }
    }

    /// Whether `lambda` avoids the accumulation point of the off-`lambda`
    /// entries, i.e. whether the range of `D - lambda` is closed.
    fn range_closed(&self, lambda: &RationalComplex) -> bool {
        match &self.tail {
            Tail::Constant(_) => true,
            Tail::Convergent { limit, .. } => lambda != limit,
        }
    }
}

/// Symbolic description of a bounded operator on l2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    /// `e_m -> e_{m+k}`, `k >= 1`.
    ForwardShift(u64),
    /// Adjoint of `ForwardShift(k)`.
    BackwardShift(u64),
    Diagonal(SequenceSpec),
    /// `e_m -> e_{km}`, `k >= 2`.
    Spread(u64),
    Zero,
    Identity,
    DirectSum(Box<OperatorExpr>, Box<OperatorExpr>),
    Adjoint(Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn forward_shift(k: u64) -> Self {
        assert!(k >= 1);
        OperatorExpr::ForwardShift(k)
    }

    pub fn backward_shift(k: u64) -> Self {
        assert!(k >= 1);
        OperatorExpr::BackwardShift(k)
    }

    pub fn spread(k: u64) -> Self {
        assert!(k >= 2);
        OperatorExpr::Spread(k)
    }

    pub fn direct_sum(left: OperatorExpr, right: OperatorExpr) -> Self {
        OperatorExpr::DirectSum(Box::new(left), Box::new(right))
    }

    pub fn adjoint(inner: OperatorExpr) -> Self {
        OperatorExpr::Adjoint(Box::new(inner))
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            OperatorExpr::ForwardShift(k) | OperatorExpr::BackwardShift(k) if *k == 0 => {
                Err("shift step must be >= 1".into())
            }
            OperatorExpr::Spread(k) if *k < 2 => Err("spread factor must be >= 2".into()),
            OperatorExpr::Diagonal(spec) => spec.validate(),
            OperatorExpr::DirectSum(l, r) => {
                l.validate()?;
                r.validate()
            }
            OperatorExpr::Adjoint(inner) => inner.validate(),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorExpr::ForwardShift(k) => write!(f, "S_fwd({k})"),
            OperatorExpr::BackwardShift(k) => write!(f, "S_bwd({k})"),
            OperatorExpr::Diagonal(_) => write!(f, "diag"),
            OperatorExpr::Spread(k) => write!(f, "spread({k})"),
            OperatorExpr::Zero => write!(f, "0"),
            OperatorExpr::Identity => write!(f, "I"),
            OperatorExpr::DirectSum(l, r) => write!(f, "({l} (+) {r})"),
            OperatorExpr::Adjoint(x) => write!(f, "({x})*"),
        }
    }
}

/// Exact `(alpha, beta, range_closed)` of `D - lambda`.
///
/// The two encoded invariants: `beta` finite forces a closed range, and a
/// non-closed range forces `beta = inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FredholmData {
    pub alpha: ExtNat,
    pub beta: ExtNat,
    pub range_closed: bool,
}

impl FredholmData {
    pub fn new(alpha: ExtNat, beta: ExtNat, range_closed: bool) -> Self {
        FredholmData { alpha, beta, range_closed }
    }

    /// The encoding constraint between deficiency and closedness.
    pub fn kato_consistent(&self) -> bool {
        self.range_closed || self.beta.is_infinite()
    }
}

/// Internal evaluation record: nullity, dimension of the orthocomplement of
/// the range closure, and closedness. `beta` is recovered as `coker` when the
/// range is closed and `inf` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct CoreData {
    pub alpha: ExtNat,
    pub coker: ExtNat,
    pub closed: bool,
}

impl CoreData {
    fn new(alpha: ExtNat, coker: ExtNat, closed: bool) -> Self {
        CoreData { alpha, coker, closed }
    }
}

pub(crate) fn core_data(expr: &OperatorExpr, lambda: &RationalComplex) -> CoreData {
    use ExtNat::{Fin, Inf};
    match expr {
        OperatorExpr::ForwardShift(k) => match lambda.modulus_vs_one() {
            Ordering::Less => CoreData::new(Fin(0), Fin(*k), true),
            Ordering::Greater => CoreData::new(Fin(0), Fin(0), true),
            Ordering::Equal => CoreData::new(Fin(0), Fin(0), false),
        },
        OperatorExpr::BackwardShift(k) => match lambda.modulus_vs_one() {
            Ordering::Less => CoreData::new(Fin(*k), Fin(0), true),
            Ordering::Greater => CoreData::new(Fin(0), Fin(0), true),
            Ordering::Equal => CoreData::new(Fin(0), Fin(0), false),
        },
        OperatorExpr::Diagonal(spec) => {
            let matches = spec.matches(lambda).count();
            CoreData::new(matches, matches, spec.range_closed(lambda))
        }
        OperatorExpr::Spread(_) => match lambda.modulus_vs_one() {
            Ordering::Less => CoreData::new(Fin(0), Inf, true),
            Ordering::Greater => CoreData::new(Fin(0), Fin(0), true),
            Ordering::Equal => CoreData::new(Fin(0), Fin(0), false),
        },
        OperatorExpr::Zero => {
            if lambda.is_zero() {
                CoreData::new(Inf, Inf, true)
            } else {
                CoreData::new(Fin(0), Fin(0), true)
            }
        }
        OperatorExpr::Identity => {
            if lambda.is_one() {
                CoreData::new(Inf, Inf, true)
            } else {
                CoreData::new(Fin(0), Fin(0), true)
            }
        }
        OperatorExpr::DirectSum(l, r) => {
            let a = core_data(l, lambda);
            let b = core_data(r, lambda);
            CoreData::new(a.alpha.add(b.alpha), a.coker.add(b.coker), a.closed && b.closed)
        }
        OperatorExpr::Adjoint(inner) => {
            let c = core_data(inner, &lambda.conj());
            CoreData::new(c.coker, c.alpha, c.closed)
        }
    }
}

/// Exact Fredholm data of `D - lambda`. Total on the catalog.
pub fn fredholm_data(expr: &OperatorExpr, lambda: &RationalComplex) -> FredholmData {
    let core = core_data(expr, lambda);
    let beta = if core.closed { core.coker } else { ExtNat::Inf };
    FredholmData { alpha: core.alpha, beta, range_closed: core.closed }
}

/// Raised when a kernel or cokernel is not spanned by standard basis vectors
/// (or, for cokernels, when the range is not closed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unsupported(pub String);

impl fmt::Display for Unsupported {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unsupported basis request: {}", self.0)
    }
}

impl std::error::Error for Unsupported {}

/// Enumeration of the coordinates spanning `ker(D - lambda)`, when that
/// kernel is coordinate-aligned. A supported answer means the enumeration is
/// exhaustive: the kernel contains nothing outside the listed coordinates.
pub fn kernel_enum(
    expr: &OperatorExpr,
    lambda: &RationalComplex,
) -> Result<Enumeration, Unsupported> {
    match expr {
        // Shifts and spreads minus lambda are injective at every point of the
        // closed disk and invertible outside it.
        OperatorExpr::ForwardShift(_) | OperatorExpr::Spread(_) => Ok(Enumeration::empty()),
        OperatorExpr::BackwardShift(k) => {
            if lambda.is_zero() {
                Ok(Enumeration::Finite((1..=*k).collect()))
            } else if lambda.modulus_vs_one() == Ordering::Less {
                // Geometric eigenvectors with full support.
                Err(Unsupported(format!(
                    "kernel of backward shift at interior point {lambda} is not coordinate-aligned"
                )))
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::Diagonal(spec) => Ok(spec.matches(lambda)),
        OperatorExpr::Zero => {
            if lambda.is_zero() {
                Ok(Enumeration::all())
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::Identity => {
            if lambda.is_one() {
                Ok(Enumeration::all())
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::DirectSum(l, r) => {
            let kl = kernel_enum(l, lambda)?.scaled(2, -1);
            let kr = kernel_enum(r, lambda)?.scaled(2, 0);
            Ok(Enumeration::union(kl, kr))
        }
        OperatorExpr::Adjoint(inner) => perp_enum(inner, &lambda.conj()),
    }
}

/// Enumeration of the coordinates spanning the orthocomplement of the
/// closure of `R(D - lambda)`, when that space is coordinate-aligned.
pub fn perp_enum(
    expr: &OperatorExpr,
    lambda: &RationalComplex,
) -> Result<Enumeration, Unsupported> {
    match expr {
        OperatorExpr::ForwardShift(k) => {
            if lambda.is_zero() {
                Ok(Enumeration::Finite((1..=*k).collect()))
            } else if lambda.modulus_vs_one() == Ordering::Less {
                Err(Unsupported(format!(
                    "range complement of forward shift at interior point {lambda} is not coordinate-aligned"
                )))
            } else {
                // Invertible outside the disk; dense range on the circle.
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::BackwardShift(_) => Ok(Enumeration::empty()),
        OperatorExpr::Diagonal(spec) => Ok(spec.matches(lambda)),
        OperatorExpr::Spread(k) => {
            if lambda.is_zero() {
                Ok(Enumeration::non_multiples(*k))
            } else if lambda.modulus_vs_one() == Ordering::Less {
                Err(Unsupported(format!(
                    "range complement of spread at interior point {lambda} is not coordinate-aligned"
                )))
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::Zero => {
            if lambda.is_zero() {
                Ok(Enumeration::all())
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::Identity => {
            if lambda.is_one() {
                Ok(Enumeration::all())
            } else {
                Ok(Enumeration::empty())
            }
        }
        OperatorExpr::DirectSum(l, r) => {
            let pl = perp_enum(l, lambda)?.scaled(2, -1);
            let pr = perp_enum(r, lambda)?.scaled(2, 0);
            Ok(Enumeration::union(pl, pr))
        }
        OperatorExpr::Adjoint(inner) => kernel_enum(inner, &lambda.conj()),
    }
}

/// Kernel-spanning coordinate indices of `D - lambda` among the first `n`
/// coordinates. Enumerating `n -> inf` exhausts the kernel.
pub fn kernel_basis_window(
    expr: &OperatorExpr,
    lambda: &RationalComplex,
    n: u64,
) -> Result<Vec<u64>, Unsupported> {
    kernel_enum(expr, lambda).map(|e| e.window(n))
}

/// Coordinate indices spanning `R(D - lambda)^perp` within the first `n`
/// coordinates. Requires a closed range.
pub fn cokernel_basis_window(
    expr: &OperatorExpr,
    lambda: &RationalComplex,
    n: u64,
) -> Result<Vec<u64>, Unsupported> {
    if !core_data(expr, lambda).closed {
        return Err(Unsupported(format!("range of {expr} - {lambda} is not closed")));
    }
    perp_enum(expr, lambda).map(|e| e.window(n))
}

/// Nonzero entries `(row, value)` of column `m` of the operator itself
/// (without the `- lambda` term), ascending by row.
pub fn op_column(expr: &OperatorExpr, m: u64) -> Vec<(u64, RationalComplex)> {
    match expr {
        OperatorExpr::ForwardShift(k) => vec![(m + k, RationalComplex::one())],
        OperatorExpr::BackwardShift(k) => {
            if m > *k {
                vec![(m - k, RationalComplex::one())]
            } else {
                Vec::new()
            }
        }
        OperatorExpr::Diagonal(spec) => {
            let v = spec.entry(m);
            if v.is_zero() {
                Vec::new()
            } else {
                vec![(m, v)]
            }
        }
        OperatorExpr::Spread(k) => vec![(k * m, RationalComplex::one())],
        OperatorExpr::Zero => Vec::new(),
        OperatorExpr::Identity => vec![(m, RationalComplex::one())],
        OperatorExpr::DirectSum(l, r) => {
            if m % 2 == 1 {
                interleave_coords(op_column(l, m.div_ceil(2)), 2, -1)
            } else {
                interleave_coords(op_column(r, m / 2), 2, 0)
            }
        }
        OperatorExpr::Adjoint(inner) => {
            let mut entries: Vec<(u64, RationalComplex)> =
                op_row(inner, m).into_iter().map(|(c, v)| (c, v.conj())).collect();
            entries.sort_by_key(|&(c, _)| c);
            entries
        }
    }
}

/// Nonzero entries `(column, value)` of row `r` of the operator itself.
pub fn op_row(expr: &OperatorExpr, r: u64) -> Vec<(u64, RationalComplex)> {
    match expr {
        OperatorExpr::ForwardShift(k) => {
            if r > *k {
                vec![(r - k, RationalComplex::one())]
            } else {
                Vec::new()
            }
        }
        OperatorExpr::BackwardShift(k) => vec![(r + k, RationalComplex::one())],
        OperatorExpr::Diagonal(spec) => {
            let v = spec.entry(r);
            if v.is_zero() {
                Vec::new()
            } else {
                vec![(r, v)]
            }
        }
        OperatorExpr::Spread(k) => {
            if r % k == 0 {
                vec![(r / k, RationalComplex::one())]
            } else {
                Vec::new()
            }
        }
        OperatorExpr::Zero => Vec::new(),
        OperatorExpr::Identity => vec![(r, RationalComplex::one())],
        OperatorExpr::DirectSum(l, r_op) => {
            if r % 2 == 1 {
                interleave_coords(op_row(l, r.div_ceil(2)), 2, -1)
            } else {
                interleave_coords(op_row(r_op, r / 2), 2, 0)
            }
        }
        OperatorExpr::Adjoint(inner) => {
            let mut entries: Vec<(u64, RationalComplex)> =
                op_column(inner, r).into_iter().map(|(c, v)| (c, v.conj())).collect();
            entries.sort_by_key(|&(c, _)| c);
            entries
        }
    }
}

fn interleave_coords(
    entries: Vec<(u64, RationalComplex)>,
    mult: u64,
    offset: i64,
) -> Vec<(u64, RationalComplex)> {
    entries
        .into_iter()
        .map(|(c, v)| (((c * mult) as i64 + offset) as u64, v))
        .collect()
}

/// Largest codomain index reachable from the first `n` domain coordinates.
pub fn reach(expr: &OperatorExpr, n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    match expr {
        OperatorExpr::ForwardShift(k) => n + k,
        OperatorExpr::BackwardShift(k) => n.saturating_sub(*k),
        OperatorExpr::Diagonal(_) | OperatorExpr::Identity => n,
        OperatorExpr::Spread(k) => k * n,
        OperatorExpr::Zero => 0,
        OperatorExpr::DirectSum(l, r) => {
            let lw = reach(l, n.div_ceil(2));
            let rw = reach(r, n / 2);
            let li = if lw > 0 { 2 * lw - 1 } else { 0 };
            li.max(2 * rw)
        }
        OperatorExpr::Adjoint(inner) => coreach(inner, n),
    }
}

/// Largest domain index whose image meets the first `n` codomain coordinates.
pub fn coreach(expr: &OperatorExpr, n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    match expr {
        OperatorExpr::ForwardShift(k) => n.saturating_sub(*k),
        OperatorExpr::BackwardShift(k) => n + k,
        OperatorExpr::Diagonal(_) | OperatorExpr::Identity => n,
        OperatorExpr::Spread(k) => n / k,
        OperatorExpr::Zero => 0,
        OperatorExpr::DirectSum(l, r) => {
            let lw = coreach(l, n.div_ceil(2));
            let rw = coreach(r, n / 2);
            let li = if lw > 0 { 2 * lw - 1 } else { 0 };
            li.max(2 * rw)
        }
        OperatorExpr::Adjoint(inner) => reach(inner, n),
    }
}
