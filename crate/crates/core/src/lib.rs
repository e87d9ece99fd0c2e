//! Exact Fredholm/Weyl theory for upper-triangular block operator matrices
//! on l2.
//!
//! The crate classifies diagonal tuples of symbolic operators, decides the
//! completion characterizations for each operator class, constructs witness
//! tuples of basis maps, evaluates the perturbation-set formulas with and
//! without their range-closedness families, and cross-checks everything it
//! can against an exact rational truncation oracle. All scalar work happens
//! over Gaussian rationals; there is no floating point in any decision path.

pub mod blockmodel;
pub mod characterization;
pub mod classify;
pub mod completion;
pub mod coords;
pub mod deltasets;
pub mod extnat;
pub mod jsonio;
pub mod opmodel;
pub mod oracle;
pub mod rational;

pub use blockmodel::{assemble_truncation, BasisMap, BlockModel, DiagonalTuple, TruncatedMatrix};
pub use characterization::{check, check_n2_equiv, N2Theorem, TheoremId, TupleProfile, Verdict};
pub use classify::{classify, spectra_membership, FredholmClass, SpectraMembership};
pub use completion::{
    complete, complete_left_weyl_chain, complete_left_weyl_separable, complete_right_dual,
    verify_prediction, CompletionError, CompletionPlan, CompletionTarget, DualRequest, Prediction,
    Strategy, WitnessReport,
};
pub use deltasets::{
    delta_memberships, n2_exact_membership, profile_of, region_scan, DeltaMembership, DeltaTarget,
    GridSpec, N2Target, RegionScan,
};
pub use extnat::{ext_index, ExtInt, ExtNat};
pub use opmodel::{
    cokernel_basis_window, fredholm_data, kernel_basis_window, FredholmData, OperatorExpr,
    SequenceSpec, Tail,
};
pub use oracle::{exact_rank, stabilized_adjoint, stabilized_alpha, RankReport, Stabilization};
pub use rational::{parse_rational, Rational, RationalComplex};
