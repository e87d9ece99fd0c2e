//! The semi-Fredholm / Fredholm / Weyl classification lattice and pointwise
//! membership in the five associated spectra.
//!
//! Conventions: membership of a point `lambda` in a spectrum of `D` is
//! decided from the data of `D - lambda`; for nullity, deficiency and
//! range-closedness this agrees with `lambda - D`.

use std::fmt;

use crate::extnat::{ext_index, ExtInt};
use crate::opmodel::{fredholm_data, FredholmData, OperatorExpr};
use crate::rational::RationalComplex;

/// Membership of one operator-and-point in each classification class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FredholmClass {
    /// Upper semi-Fredholm: finite nullity and closed range.
    pub in_phi_plus: bool,
    /// Lower semi-Fredholm: finite deficiency.
    pub in_phi_minus: bool,
    /// Fredholm: both.
    pub in_phi: bool,
    /// Upper semi-Fredholm with index <= 0.
    pub in_left_weyl: bool,
    /// Lower semi-Fredholm with index >= 0.
    pub in_right_weyl: bool,
    pub index: ExtInt,
}

/// The input data broke the deficiency/closedness encoding; this indicates a
/// bug in whatever produced it, so it is surfaced rather than patched over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatoViolation(pub FredholmData);

impl fmt::Display for KatoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "finite deficiency {} with non-closed range: inconsistent Fredholm data",
            self.0.beta
        )
    }
}

impl std::error::Error for KatoViolation {}

/// Classify one `(alpha, beta, range_closed)` triple.
pub fn classify(data: &FredholmData) -> Result<FredholmClass, KatoViolation> {
    if !data.kato_consistent() {
        return Err(KatoViolation(*data));
    }
    let in_phi_plus = data.alpha.is_finite() && data.range_closed;
    let in_phi_minus = data.beta.is_finite();
    let index = ext_index(data.alpha, data.beta);
    // Inside Phi+ the nullity is finite, so the index is defined (an integer
    // or -inf); dually inside Phi-.
    let in_left_weyl = in_phi_plus && index.le_zero();
    let in_right_weyl = in_phi_minus && index.ge_zero();
    Ok(FredholmClass {
        in_phi_plus,
        in_phi_minus,
        in_phi: in_phi_plus && in_phi_minus,
        in_left_weyl,
        in_right_weyl,
        index,
    })
}

/// Pointwise membership in the five spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpectraMembership {
    /// Upper semi-Fredholm spectrum.
    pub sf_plus: bool,
    /// Lower semi-Fredholm spectrum.
    pub sf_minus: bool,
    /// Essential spectrum.
    pub essential: bool,
    /// Upper semi-Weyl spectrum.
    pub aw: bool,
    /// Lower semi-Weyl spectrum.
    pub sw: bool,
}

/// Decide membership of `lambda` in each of the five spectra of `expr`.
pub fn spectra_membership(expr: &OperatorExpr, lambda: &RationalComplex) -> SpectraMembership {
    let class = classify(&fredholm_data(expr, lambda))
        .expect("catalog evaluation always yields consistent data");
    SpectraMembership {
        sf_plus: !class.in_phi_plus,
        sf_minus: !class.in_phi_minus,
        essential: !class.in_phi,
        aw: !class.in_left_weyl,
        sw: !class.in_right_weyl,
    }
}
