//! Perturbation-set formulas: the lambda-sets built from nullities,
//! deficiencies and range-closedness of the diagonal entries, whose unions
//! sandwich the intersection of each spectrum over all upper completions.
//!
//! Two formula generations are evaluated side by side. The corrected bounds
//! carry the range-closedness families (`delta_doubleprime_*`); the legacy
//! bounds drop them, which is exactly the defect the corrected versions
//! repair, and are kept behind an explicit flag so the discrepancy set is
//! observable. For each spectrum there is a separable-theory target and a
//! chain-theory target; the essential-spectrum chain target has a lower
//! bound only.

use std::fmt;

use crate::blockmodel::DiagonalTuple;
use crate::characterization::TupleProfile;
use crate::extnat::ExtNat;
use crate::opmodel::fredholm_data;
use crate::rational::{format_rational, parse_rational, Rational, RationalComplex};

use num_traits::Zero;

/// Which corollary family to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaTarget {
    AwSep,
    SwSep,
    SfPlusSep,
    SfMinusSep,
    ESep,
    AwGen,
    SwGen,
    SfPlusGen,
    SfMinusGen,
    EGen,
}

impl DeltaTarget {
    pub const ALL: [DeltaTarget; 10] = [
        DeltaTarget::AwSep,
        DeltaTarget::SwSep,
        DeltaTarget::SfPlusSep,
        DeltaTarget::SfMinusSep,
        DeltaTarget::ESep,
        DeltaTarget::AwGen,
        DeltaTarget::SwGen,
        DeltaTarget::SfPlusGen,
        DeltaTarget::SfMinusGen,
        DeltaTarget::EGen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeltaTarget::AwSep => "aw-sep",
            DeltaTarget::SwSep => "sw-sep",
            DeltaTarget::SfPlusSep => "sfplus-sep",
            DeltaTarget::SfMinusSep => "sfminus-sep",
            DeltaTarget::ESep => "e-sep",
            DeltaTarget::AwGen => "aw-gen",
            DeltaTarget::SwGen => "sw-gen",
            DeltaTarget::SfPlusGen => "sfplus-gen",
            DeltaTarget::SfMinusGen => "sfminus-gen",
            DeltaTarget::EGen => "e-gen",
        }
    }

    pub fn parse(s: &str) -> Option<DeltaTarget> {
        DeltaTarget::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn is_separable(self) -> bool {
        matches!(
            self,
            DeltaTarget::AwSep
                | DeltaTarget::SwSep
                | DeltaTarget::SfPlusSep
                | DeltaTarget::SfMinusSep
                | DeltaTarget::ESep
        )
    }
}

impl fmt::Display for DeltaTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-family membership of one point, plus the bound verdicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaMembership {
    /// `(family name, member)` in canonical column order.
    pub families: Vec<(String, bool)>,
    pub lower: bool,
    /// `None` when the target has no upper bound (chain essential spectrum).
    pub upper: Option<bool>,
    /// Bounds of the formulas without their range-closedness families;
    /// `None` for the chain targets, which have no legacy counterpart.
    pub legacy_lower: Option<bool>,
    pub legacy_upper: Option<bool>,
}

impl DeltaMembership {
    pub fn family(&self, name: &str) -> Option<bool> {
        self.families.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

pub fn profile_of(diag: &DiagonalTuple, lambda: &RationalComplex) -> TupleProfile {
    TupleProfile::new(diag.entries().iter().map(|e| fredholm_data(e, lambda)).collect())
        .expect("catalog data is always consistent")
}

struct Ctx {
    p: TupleProfile,
}

impl Ctx {
    fn sum_beta_below(&self, k: usize) -> ExtNat {
        ExtNat::sum((1..k).map(|s| self.p.beta(s)))
    }

    fn sum_alpha_above(&self, k: usize) -> ExtNat {
        ExtNat::sum((k + 1..=self.p.n()).map(|s| self.p.alpha(s)))
    }

    /// `alpha(D_k - lambda) = inf` with finitely many missed directions
    /// below: the left-side infinite-nullity family.
    fn delta_alpha(&self, k: usize) -> bool {
        self.p.alpha(k).is_infinite() && self.sum_beta_below(k).is_finite()
    }

    /// `beta(D_k - lambda) = inf` with finite nullities above.
    fn delta_beta(&self, k: usize) -> bool {
        self.p.beta(k).is_infinite() && self.sum_alpha_above(k).is_finite()
    }

    fn not_closed(&self, k: usize) -> bool {
        !self.p.closed(k)
    }
}

fn any(families: &[(String, bool)], pred: impl Fn(&str) -> bool) -> bool {
    families.iter().any(|(name, v)| *v && pred(name))
}

/// Evaluate every family membership and the bound verdicts of one target at
/// one point.
pub fn delta_memberships(
    diag: &DiagonalTuple,
    lambda: &RationalComplex,
    target: DeltaTarget,
) -> DeltaMembership {
    delta_memberships_of_profile(profile_of(diag, lambda), target)
}

/// Same evaluation from per-entry data directly; the sets depend on a tuple
/// only through its profile.
pub fn delta_memberships_of_profile(
    profile: TupleProfile,
    target: DeltaTarget,
) -> DeltaMembership {
    let ctx = Ctx { p: profile };
    let p = &ctx.p;
    let n = p.n();
    let mut fam: Vec<(String, bool)> = Vec::new();
    let push = |fam: &mut Vec<(String, bool)>, name: String, v: bool| fam.push((name, v));

    match target {
        DeltaTarget::AwSep | DeltaTarget::SfPlusSep | DeltaTarget::AwGen | DeltaTarget::SfPlusGen => {
            push(&mut fam, "sigma_sf_plus_d1".into(), !p.phi_plus(1));
            for k in 2..=n {
                push(&mut fam, format!("delta_{k}"), ctx.delta_alpha(k));
            }
            let weyl = matches!(target, DeltaTarget::AwSep | DeltaTarget::AwGen);
            if weyl {
                push(&mut fam, format!("delta_{}", n + 1), p.sum_beta() < p.sum_alpha());
            }
            if !target.is_separable() {
                for k in 2..=n {
                    push(&mut fam, format!("delta_prime_{k}"), p.alpha(k) > p.beta(k - 1));
                }
                push(
                    &mut fam,
                    "delta_prime".into(),
                    p.beta(n).is_finite() && p.sum_alpha().is_infinite(),
                );
            }
            for k in 2..=n {
                push(&mut fam, format!("delta_doubleprime_{k}"), ctx.not_closed(k));
            }

            let sf = fam[0].1;
            let deltas = any(&fam, |nm| nm.starts_with("delta_") && !nm.contains("prime"));
            let strict = any(&fam, |nm| nm.starts_with("delta_prime_"));
            let np1 = if weyl {
                fam.iter().any(|(nm, v)| *v && *nm == format!("delta_{}", n + 1))
            } else {
                false
            };
            let dprime = fam.iter().any(|(nm, v)| nm == "delta_prime" && *v);
            let ddp_last = fam
                .iter()
                .any(|(nm, v)| *v && *nm == format!("delta_doubleprime_{n}"));
            let ddp_any = any(&fam, |nm| nm.starts_with("delta_doubleprime_"));

            let lower = sf || deltas || ddp_last;
            let upper = if target.is_separable() {
                sf || deltas || ddp_any
            } else {
                sf || strict || np1 || dprime || ddp_any
            };
            let (legacy_lower, legacy_upper) = if target.is_separable() {
                let legacy = sf || deltas;
                (Some(legacy), Some(legacy))
            } else {
                (None, None)
            };
            DeltaMembership { families: fam, lower, upper: Some(upper), legacy_lower, legacy_upper }
        }
        DeltaTarget::SwSep | DeltaTarget::SfMinusSep | DeltaTarget::SwGen | DeltaTarget::SfMinusGen => {
            push(&mut fam, format!("sigma_sf_minus_d{n}"), !p.phi_minus(n));
            for k in 1..=n - 1 {
                push(&mut fam, format!("delta_{k}"), ctx.delta_beta(k));
            }
            let weyl = matches!(target, DeltaTarget::SwSep | DeltaTarget::SwGen);
            if weyl {
                push(&mut fam, format!("delta_{}", n + 1), p.sum_alpha() < p.sum_beta());
            }
            if !target.is_separable() {
                for k in 1..=n - 1 {
                    push(&mut fam, format!("delta_prime_{k}"), p.beta(k) > p.alpha(k + 1));
                }
                push(
                    &mut fam,
                    "delta_prime".into(),
                    p.alpha(1).is_finite() && p.sum_beta().is_infinite(),
                );
            }
            for k in 1..=n - 1 {
                push(&mut fam, format!("delta_doubleprime_{k}"), ctx.not_closed(k));
            }

            let sf = fam[0].1;
            let deltas = any(&fam, |nm| nm.starts_with("delta_") && !nm.contains("prime"));
            let strict = any(&fam, |nm| nm.starts_with("delta_prime_"));
            let np1 = if weyl {
                fam.iter().any(|(nm, v)| *v && *nm == format!("delta_{}", n + 1))
            } else {
                false
            };
            let dprime = fam.iter().any(|(nm, v)| nm == "delta_prime" && *v);
            let ddp_first =
                fam.iter().any(|(nm, v)| *v && *nm == "delta_doubleprime_1".to_string());
            let ddp_any = any(&fam, |nm| nm.starts_with("delta_doubleprime_"));

            let lower = sf || deltas || ddp_first;
            let upper = if target.is_separable() {
                sf || deltas || ddp_any
            } else {
                sf || strict || np1 || dprime || ddp_any
            };
            let (legacy_lower, legacy_upper) = if target.is_separable() {
                let legacy = sf || deltas;
                (Some(legacy), Some(legacy))
            } else {
                (None, None)
            };
            DeltaMembership { families: fam, lower, upper: Some(upper), legacy_lower, legacy_upper }
        }
        DeltaTarget::ESep | DeltaTarget::EGen => {
            push(&mut fam, "sigma_sf_plus_d1".into(), !p.phi_plus(1));
            push(&mut fam, format!("sigma_sf_minus_d{n}"), !p.phi_minus(n));
            for k in 2..=n - 1 {
                push(
                    &mut fam,
                    format!("delta_{k}"),
                    ctx.delta_alpha(k) || ctx.delta_beta(k),
                );
            }
            push(&mut fam, format!("delta_{n}"), ctx.delta_alpha(n) || ctx.delta_beta(1));
            if target == DeltaTarget::ESep {
                for k in 2..=n - 1 {
                    push(&mut fam, format!("delta_doubleprime_{k}"), ctx.not_closed(k));
                }
            }

            let sf = fam[0].1 || fam[1].1;
            let deltas = any(&fam, |nm| nm.starts_with("delta_") && !nm.contains("prime"));
            let ddp_any = any(&fam, |nm| nm.starts_with("delta_doubleprime_"));
            let lower = sf || deltas;
            match target {
                DeltaTarget::ESep => {
                    let legacy = lower;
                    DeltaMembership {
                        families: fam,
                        lower,
                        upper: Some(lower || ddp_any),
                        legacy_lower: Some(legacy),
                        legacy_upper: Some(legacy),
                    }
                }
                _ => DeltaMembership {
                    families: fam,
                    lower,
                    upper: None,
                    legacy_lower: None,
                    legacy_upper: None,
                },
            }
        }
    }
}

/// The five equality corollaries for `n = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum N2Target {
    Aw2,
    Sw2,
    SfPlus2,
    SfMinus2,
    E2,
}

impl N2Target {
    pub const ALL: [N2Target; 5] =
        [N2Target::Aw2, N2Target::Sw2, N2Target::SfPlus2, N2Target::SfMinus2, N2Target::E2];

    pub fn name(self) -> &'static str {
        match self {
            N2Target::Aw2 => "aw2",
            N2Target::Sw2 => "sw2",
            N2Target::SfPlus2 => "sfplus2",
            N2Target::SfMinus2 => "sfminus2",
            N2Target::E2 => "e2",
        }
    }

    pub fn parse(s: &str) -> Option<N2Target> {
        N2Target::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn separable_target(self) -> DeltaTarget {
        match self {
            N2Target::Aw2 => DeltaTarget::AwSep,
            N2Target::Sw2 => DeltaTarget::SwSep,
            N2Target::SfPlus2 => DeltaTarget::SfPlusSep,
            N2Target::SfMinus2 => DeltaTarget::SfMinusSep,
            N2Target::E2 => DeltaTarget::ESep,
        }
    }
}

/// Exact membership of `lambda` in the intersection spectrum for `n = 2`.
/// With `legacy` set, the range-closedness term is dropped (the uncorrected
/// formula).
pub fn n2_exact_membership(
    diag: &DiagonalTuple,
    lambda: &RationalComplex,
    target: N2Target,
    legacy: bool,
) -> bool {
    assert_eq!(diag.n(), 2, "exact corollaries need n = 2");
    let m = delta_memberships(diag, lambda, target.separable_target());
    if legacy {
        m.legacy_lower.expect("separable targets carry legacy bounds")
    } else {
        // For n = 2 the separable double inclusion is an equality.
        debug_assert_eq!(Some(m.lower), m.upper);
        m.lower
    }
}

/// A rational rectangle with step sizes; scanned row-major (imaginary part
/// ascending in the outer loop, real part in the inner one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub re_min: Rational,
    pub re_max: Rational,
    pub re_step: Rational,
    pub im_min: Rational,
    pub im_max: Rational,
    pub im_step: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridError {
    Parse(String),
    TooManyPoints { points: u64, cap: u64 },
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::Parse(s) => write!(f, "invalid grid spec: {s}"),
            GridError::TooManyPoints { points, cap } => {
                write!(f, "grid has {points} points, above the cap of {cap}")
            }
        }
    }
}

impl std::error::Error for GridError {}

pub const DEFAULT_GRID_CAP: u64 = 1_000_000;

impl GridSpec {
    /// Parse `a..b:step` (applied to both axes) or `a..b:step,c..d:step`.
    pub fn parse(s: &str) -> Result<GridSpec, GridError> {
        fn axis(part: &str) -> Result<(Rational, Rational, Rational), GridError> {
            let (range, step) = part
                .rsplit_once(':')
                .ok_or_else(|| GridError::Parse(format!("missing step in {part:?}")))?;
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| GridError::Parse(format!("missing range in {part:?}")))?;
            let lo = parse_rational(lo).map_err(|e| GridError::Parse(e.to_string()))?;
            let hi = parse_rational(hi).map_err(|e| GridError::Parse(e.to_string()))?;
            let step = parse_rational(step).map_err(|e| GridError::Parse(e.to_string()))?;
            if step <= Rational::zero() {
                return Err(GridError::Parse("step must be positive".into()));
            }
            if hi < lo {
                return Err(GridError::Parse("empty range".into()));
            }
            Ok((lo, hi, step))
        }
        let (re_part, im_part) = match s.split_once(',') {
            Some((a, b)) => (a, b),
            None => (s, s),
        };
        let (re_min, re_max, re_step) = axis(re_part)?;
        let (im_min, im_max, im_step) = axis(im_part)?;
        Ok(GridSpec { re_min, re_max, re_step, im_min, im_max, im_step })
    }

    fn axis_points(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = lo.clone();
        while v <= *hi {
            out.push(v.clone());
            v = &v + step;
        }
        out
    }

    /// Row-major points, bounded by `cap`.
    pub fn points(&self, cap: u64) -> Result<Vec<RationalComplex>, GridError> {
        let res = Self::axis_points(&self.re_min, &self.re_max, &self.re_step);
        let ims = Self::axis_points(&self.im_min, &self.im_max, &self.im_step);
        let total = res.len() as u64 * ims.len() as u64;
        if total > cap {
            return Err(GridError::TooManyPoints { points: total, cap });
        }
        let mut out = Vec::with_capacity(total as usize);
        for im in &ims {
            for re in &res {
                out.push(RationalComplex::new(re.clone(), im.clone()));
            }
        }
        Ok(out)
    }
}

/// One target evaluated over a grid; rows in row-major point order.
#[derive(Clone, Debug)]
pub struct RegionScan {
    pub target: DeltaTarget,
    pub family_names: Vec<String>,
    pub rows: Vec<(RationalComplex, DeltaMembership)>,
}

pub fn region_scan(
    diag: &DiagonalTuple,
    grid: &GridSpec,
    target: DeltaTarget,
    cap: u64,
) -> Result<RegionScan, GridError> {
    let points = grid.points(cap)?;
    let mut rows = Vec::with_capacity(points.len());
    let mut family_names = Vec::new();
    for lambda in points {
        let m = delta_memberships(diag, &lambda, target);
        if family_names.is_empty() {
            family_names = m.families.iter().map(|(n, _)| n.clone()).collect();
        }
        rows.push((lambda, m));
    }
    Ok(RegionScan { target, family_names, rows })
}

impl RegionScan {
    /// Fixed-header CSV: `re,im`, one 0/1 column per family, then the bound
    /// columns (`na` where a bound does not exist).
    pub fn to_csv(&self, legacy: bool) -> String {
        let mut out = String::new();
        out.push_str("re,im");
        for name in &self.family_names {
            out.push(',');
            out.push_str(name);
        }
        out.push_str(",lower,upper");
        if legacy {
            out.push_str(",legacy_lower,legacy_upper");
        }
        out.push('\n');
        for (lambda, m) in &self.rows {
            out.push_str(&format_rational(&lambda.re));
            out.push(',');
            out.push_str(&format_rational(&lambda.im));
            for (_, v) in &m.families {
                out.push_str(if *v { ",1" } else { ",0" });
            }
            let bound = |b: Option<bool>| match b {
                Some(true) => ",1",
                Some(false) => ",0",
                None => ",na",
            };
            out.push_str(bound(Some(m.lower)));
            out.push_str(bound(m.upper));
            if legacy {
                out.push_str(bound(m.legacy_lower));
                out.push_str(bound(m.legacy_upper));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characterization::{check, TheoremId};
    use crate::opmodel::{OperatorExpr, SequenceSpec};

    fn rc(re: i64, im: i64) -> RationalComplex {
        RationalComplex::from_integers(re, im)
    }

    fn harmonic() -> OperatorExpr {
        OperatorExpr::Diagonal(SequenceSpec::convergent(
            vec![],
            RationalComplex::zero(),
            parse_rational("1").unwrap(),
        ))
    }

    fn shift_harmonic_pair() -> DiagonalTuple {
        DiagonalTuple::new(vec![OperatorExpr::forward_shift(1), harmonic()])
    }

    #[test]
    fn headline_correction_at_zero() {
        // The non-closed tail range puts 0 in the corrected intersection
        // while every legacy family misses it.
        let m = delta_memberships(&shift_harmonic_pair(), &rc(0, 0), DeltaTarget::AwSep);
        assert_eq!(m.family("sigma_sf_plus_d1"), Some(false));
        assert_eq!(m.family("delta_2"), Some(false));
        assert_eq!(m.family("delta_3"), Some(false));
        assert_eq!(m.family("delta_doubleprime_2"), Some(true));
        assert!(m.lower);
        assert_eq!(m.upper, Some(true));
        assert_eq!(m.legacy_lower, Some(false));
        assert!(n2_exact_membership(&shift_harmonic_pair(), &rc(0, 0), N2Target::Aw2, false));
        assert!(!n2_exact_membership(&shift_harmonic_pair(), &rc(0, 0), N2Target::Aw2, true));
    }

    #[test]
    fn invertible_pair_is_everywhere_false() {
        let diag = DiagonalTuple::new(vec![OperatorExpr::Identity, OperatorExpr::Identity]);
        let m = delta_memberships(&diag, &rc(0, 0), DeltaTarget::AwSep);
        assert!(m.families.iter().all(|(_, v)| !v));
        assert!(!m.lower && m.upper == Some(false));
    }

    #[test]
    fn n3_sfplus_example() {
        let diag = DiagonalTuple::new(vec![
            OperatorExpr::forward_shift(1),
            OperatorExpr::spread(2),
            OperatorExpr::backward_shift(1),
        ]);
        let m = delta_memberships(&diag, &rc(0, 0), DeltaTarget::SfPlusSep);
        assert!(!m.lower);
        assert_eq!(m.upper, Some(false));
    }

    #[test]
    fn e2_fredholm_pair_excluded() {
        let diag = DiagonalTuple::new(vec![
            OperatorExpr::spread(2),
            OperatorExpr::adjoint(OperatorExpr::spread(2)),
        ]);
        assert!(!n2_exact_membership(&diag, &rc(0, 0), N2Target::E2, false));
    }

    #[test]
    fn necessity_and_sufficiency_links() {
        let tuples = [
            shift_harmonic_pair(),
            DiagonalTuple::new(vec![OperatorExpr::spread(2), OperatorExpr::backward_shift(1)]),
            DiagonalTuple::new(vec![
                OperatorExpr::forward_shift(1),
                OperatorExpr::spread(2),
                OperatorExpr::backward_shift(1),
            ]),
            DiagonalTuple::new(vec![OperatorExpr::Zero, harmonic(), OperatorExpr::Identity]),
        ];
        let lambdas = [
            rc(0, 0),
            rc(1, 0),
            rc(2, 0),
            RationalComplex::from_ratio(1, 2, 0, 1),
            RationalComplex::from_ratio(3, 5, 4, 5),
        ];
        for diag in &tuples {
            for lambda in &lambdas {
                let p = profile_of(diag, lambda);
                // The corrected lower bound is exactly failure of the
                // necessary condition.
                let aw = delta_memberships(diag, lambda, DeltaTarget::AwSep);
                let v = check(&p, TheoremId::LeftWeylSep);
                assert_eq!(aw.lower, !v.condition_iii, "aw link at {lambda} for {diag:?}");
                // Outside the upper bound the sufficient condition holds.
                if aw.upper == Some(false) {
                    assert!(v.condition_i, "aw sufficiency at {lambda}");
                }
                let sw = delta_memberships(diag, lambda, DeltaTarget::SwSep);
                let v = check(&p, TheoremId::RightWeylSep);
                assert_eq!(sw.lower, !v.condition_iii, "sw link at {lambda}");
                if sw.upper == Some(false) {
                    assert!(v.condition_i, "sw sufficiency at {lambda}");
                }
            }
        }
    }

    #[test]
    fn grid_parse_and_scan() {
        let grid = GridSpec::parse("-1..1:1").unwrap();
        let pts = grid.points(DEFAULT_GRID_CAP).unwrap();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], rc(-1, -1));
        assert_eq!(pts[8], rc(1, 1));

        let diag = DiagonalTuple::new(vec![OperatorExpr::Identity, OperatorExpr::Identity]);
        let scan = region_scan(&diag, &grid, DeltaTarget::AwSep, DEFAULT_GRID_CAP).unwrap();
        for (lambda, m) in &scan.rows {
            let expect = lambda.is_one();
            assert_eq!(m.lower, expect, "at {lambda}");
            assert_eq!(m.upper, Some(expect));
        }
        let csv = scan.to_csv(false);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("re,im,sigma_sf_plus_d1,delta_2,delta_3,delta_doubleprime_2,lower,upper"));
        assert_eq!(csv.lines().count(), 10);
    }

    #[test]
    fn unit_circle_point_in_scan() {
        let diag =
            DiagonalTuple::new(vec![OperatorExpr::forward_shift(1), OperatorExpr::Identity]);
        let lambda = RationalComplex::from_ratio(3, 5, 4, 5);
        let m = delta_memberships(&diag, &lambda, DeltaTarget::AwSep);
        assert_eq!(m.family("sigma_sf_plus_d1"), Some(true));
        assert!(m.lower);
    }

    #[test]
    fn shifts_pair_is_not_in_aw2() {
        let diag = DiagonalTuple::new(vec![OperatorExpr::forward_shift(1), OperatorExpr::forward_shift(1)]);
        assert!(!n2_exact_membership(&diag, &rc(0, 0), N2Target::Aw2, false));
    }

    #[test]
    fn profile_level_duality() {
        // The lower-side families on a profile match the upper-side families
        // on the reversed, alpha/beta-swapped profile; so do the bounds.
        use crate::extnat::ExtNat;
        use crate::opmodel::FredholmData;
        let fin = ExtNat::Fin;
        let vals = [
            FredholmData::new(fin(0), fin(0), true),
            FredholmData::new(fin(1), fin(0), true),
            FredholmData::new(fin(0), fin(2), true),
            FredholmData::new(fin(0), ExtNat::Inf, true),
            FredholmData::new(ExtNat::Inf, fin(0), true),
            FredholmData::new(ExtNat::Inf, ExtNat::Inf, true),
            FredholmData::new(fin(0), ExtNat::Inf, false),
            FredholmData::new(fin(2), ExtNat::Inf, false),
        ];
        let pairs = [
            (DeltaTarget::SwSep, DeltaTarget::AwSep),
            (DeltaTarget::SfMinusSep, DeltaTarget::SfPlusSep),
            (DeltaTarget::SwGen, DeltaTarget::AwGen),
            (DeltaTarget::SfMinusGen, DeltaTarget::SfPlusGen),
        ];
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    let p = TupleProfile::new(vec![*a, *b, *c]).unwrap();
                    let dual = p.reversed_swapped();
                    for (sw_side, aw_side) in pairs {
                        let m1 = delta_memberships_of_profile(p.clone(), sw_side);
                        let m2 = delta_memberships_of_profile(dual.clone(), aw_side);
                        assert_eq!(m1.lower, m2.lower, "lower duality {sw_side} on {p:?}");
                        assert_eq!(m1.upper, m2.upper, "upper duality {sw_side} on {p:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn egen_has_no_upper_bound() {
        let diag = DiagonalTuple::new(vec![OperatorExpr::Zero, OperatorExpr::Identity]);
        let m = delta_memberships(&diag, &rc(0, 0), DeltaTarget::EGen);
        assert_eq!(m.upper, None);
        assert_eq!(m.legacy_lower, None);
    }

    #[test]
    fn sandwich_on_dense_tuples() {
        let tuples = [
            shift_harmonic_pair(),
            DiagonalTuple::new(vec![OperatorExpr::spread(2), OperatorExpr::backward_shift(2)]),
            DiagonalTuple::new(vec![
                OperatorExpr::backward_shift(1),
                OperatorExpr::Zero,
                OperatorExpr::spread(3),
            ]),
            DiagonalTuple::new(vec![
                OperatorExpr::adjoint(OperatorExpr::spread(2)),
                harmonic(),
                OperatorExpr::forward_shift(2),
                OperatorExpr::Identity,
            ]),
        ];
        let lambdas = [
            rc(0, 0),
            rc(1, 0),
            rc(-1, 0),
            RationalComplex::from_ratio(1, 2, 1, 2),
            RationalComplex::from_ratio(3, 5, 4, 5),
            RationalComplex::from_ratio(1, 3, 0, 1),
        ];
        for diag in &tuples {
            for lambda in &lambdas {
                for target in DeltaTarget::ALL {
                    let m = delta_memberships(diag, lambda, target);
                    if let Some(upper) = m.upper {
                        assert!(
                            !m.lower || upper,
                            "sandwich violated for {target} at {lambda} on {diag:?}"
                        );
                    }
                    if diag.n() == 2 && target.is_separable() {
                        assert_eq!(Some(m.lower), m.upper, "n=2 collapse for {target}");
                    }
                }
            }
        }
    }
}
