//! Predicates of the completion theorems: the sufficient condition (i) and
//! the necessary condition (iii) for each operator class, over a profile of
//! per-entry Fredholm data at a fixed point.
//!
//! Boundary conventions are encoded as vacuous truth of empty index ranges:
//! a clause quantified over `2 <= s <= j` simply disappears when `j = 1`,
//! and the interior closed-range clause disappears when `n = 2`.
//!
//! For each left/right pair the two sides are implemented independently and
//! literally; their coherence under reversal and adjoint swap is a test, not
//! a definition.

use std::fmt;

use crate::classify::KatoViolation;
use crate::extnat::ExtNat;
use crate::opmodel::FredholmData;

/// Per-entry data `(alpha, beta, range_closed)` of `D_s - lambda` for one
/// tuple at one point, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleProfile(Vec<FredholmData>);

impl TupleProfile {
    pub fn new(entries: Vec<FredholmData>) -> Result<Self, KatoViolation> {
        assert!(entries.len() >= 2, "profile needs n >= 2");
        for d in &entries {
            if !d.kato_consistent() {
                return Err(KatoViolation(*d));
            }
        }
        Ok(TupleProfile(entries))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[FredholmData] {
        &self.0
    }

    /// 1-based access.
    pub fn data(&self, s: usize) -> &FredholmData {
        &self.0[s - 1]
    }

    pub fn alpha(&self, s: usize) -> ExtNat {
        self.data(s).alpha
    }

    pub fn beta(&self, s: usize) -> ExtNat {
        self.data(s).beta
    }

    pub fn closed(&self, s: usize) -> bool {
        self.data(s).range_closed
    }

    /// Upper semi-Fredholm membership of entry `s`.
    pub fn phi_plus(&self, s: usize) -> bool {
        self.alpha(s).is_finite() && self.closed(s)
    }

    /// Lower semi-Fredholm membership of entry `s`.
    pub fn phi_minus(&self, s: usize) -> bool {
        self.beta(s).is_finite()
    }

    pub fn sum_alpha(&self) -> ExtNat {
        ExtNat::sum(self.0.iter().map(|d| d.alpha))
    }

    pub fn sum_beta(&self) -> ExtNat {
        ExtNat::sum(self.0.iter().map(|d| d.beta))
    }

    /// The profile of the dual problem: order reversed, alpha and beta
    /// swapped where the range is closed. Mirrors taking entrywise adjoints.
    pub fn reversed_swapped(&self) -> TupleProfile {
        TupleProfile(
            self.0
                .iter()
                .rev()
                .map(|d| {
                    if d.range_closed {
                        FredholmData::new(d.beta, d.alpha, true)
                    } else {
                        // Non-closed range: the adjoint's range is not closed
                        // either and carries infinite deficiency.
                        FredholmData::new(d.beta, ExtNat::Inf, false)
                    }
                })
                .collect(),
        )
    }
}

/// Which completion theorem to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    LeftWeylSep,
    RightWeylSep,
    LeftFredSep,
    RightFredSep,
    FredSep,
    LeftWeylChain,
    RightWeylChain,
    LeftFredChain,
    RightFredChain,
    FredNecessary,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::LeftWeylSep,
        TheoremId::RightWeylSep,
        TheoremId::LeftFredSep,
        TheoremId::RightFredSep,
        TheoremId::FredSep,
        TheoremId::LeftWeylChain,
        TheoremId::RightWeylChain,
        TheoremId::LeftFredChain,
        TheoremId::RightFredChain,
        TheoremId::FredNecessary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoremId::LeftWeylSep => "left-weyl-sep",
            TheoremId::RightWeylSep => "right-weyl-sep",
            TheoremId::LeftFredSep => "left-fred-sep",
            TheoremId::RightFredSep => "right-fred-sep",
            TheoremId::FredSep => "fred-sep",
            TheoremId::LeftWeylChain => "left-weyl-chain",
            TheoremId::RightWeylChain => "right-weyl-chain",
            TheoremId::LeftFredChain => "left-fred-chain",
            TheoremId::RightFredChain => "right-fred-chain",
            TheoremId::FredNecessary => "fred-necessary",
        }
    }

    pub fn parse(s: &str) -> Option<TheoremId> {
        TheoremId::ALL.into_iter().find(|t| t.name() == s)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of one theorem evaluation. `condition_i` implies `condition_iii`
/// on every Kato-consistent profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub condition_i: bool,
    pub condition_iii: bool,
    /// The disjunct that fired, or the first clause that failed.
    pub witness_clause: String,
}

/// How condition (i) was satisfied; drives the witness constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SufficiencyWitness {
    /// Left-side row construction at row `j` (infinite deficiency there).
    RowLeft { j: usize },
    /// Right-side dual: column `j` carries infinite nullity.
    RowRight { j: usize },
    /// All relevant entries semi-Fredholm (plus the sum inequality for Weyl
    /// targets): the zero tuple completes.
    TrivialZero,
    /// Superdiagonal chain construction.
    Chain,
    /// Fredholm pairing of deficiency row `j` with nullity column `k`.
    Pair { j: usize, k: usize },
}

pub(crate) struct Evaluation {
    pub witness: Option<SufficiencyWitness>,
    pub condition_iii: bool,
    pub clause: String,
}

fn interior_ranges_closed(p: &TupleProfile) -> bool {
    (2..=p.n() - 1).all(|s| p.closed(s))
}

/// Left-side (iii)(c): some row `j <= n-1` has infinite deficiency with
/// finite nullities up to it, or all of `D_2..D_n` are upper semi-Fredholm
/// (with the sum inequality when `weyl` is set).
fn left_iii_c(p: &TupleProfile, weyl: bool) -> bool {
    let n = p.n();
    let disj1 = (1..=n - 1)
        .any(|j| p.beta(j).is_infinite() && (2..=j).all(|s| p.alpha(s).is_finite()));
    let disj2 = (2..=n).all(|s| p.phi_plus(s)) && (!weyl || p.sum_alpha() <= p.sum_beta());
    disj1 || disj2
}

/// Right-side (iii)(c), dual of [`left_iii_c`].
fn right_iii_c(p: &TupleProfile, weyl: bool) -> bool {
    let n = p.n();
    let disj1 = (2..=n)
        .any(|j| p.alpha(j).is_infinite() && (j..=n - 1).all(|s| p.beta(s).is_finite()));
    let disj2 = (1..=n - 1).all(|s| p.phi_minus(s)) && (!weyl || p.sum_beta() <= p.sum_alpha());
    disj1 || disj2
}

fn left_sep(p: &TupleProfile, weyl: bool) -> Evaluation {
    let n = p.n();
    if !p.phi_plus(1) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: "(a) D_1 not upper semi-Fredholm".into(),
        };
    }
    if !p.closed(n) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: format!("(b) R(D_{n}) not closed"),
        };
    }
    let condition_iii = left_iii_c(p, weyl);
    // (i)(c) first disjunct: smallest deficiency-infinite row works iff any.
    let row = (1..=n - 1).find(|&j| p.beta(j).is_infinite());
    let row_ok = row.is_some_and(|j| {
        (2..=j).all(|s| p.alpha(s).is_finite()) && interior_ranges_closed(p)
    });
    if row_ok {
        let j = row.unwrap();
        return Evaluation {
            witness: Some(SufficiencyWitness::RowLeft { j }),
            condition_iii,
            clause: format!("(c) beta(D_{j})=inf with closed interior ranges"),
        };
    }
    let sum_ok = (2..=n).all(|s| p.phi_plus(s)) && (!weyl || p.sum_alpha() <= p.sum_beta());
    if sum_ok {
        return Evaluation {
            witness: Some(SufficiencyWitness::TrivialZero),
            condition_iii,
            clause: if weyl {
                "(c) all D_s upper semi-Fredholm with sum(alpha) <= sum(beta)".into()
            } else {
                "(c) all D_s upper semi-Fredholm".into()
            },
        };
    }
    Evaluation { witness: None, condition_iii, clause: "(c) no disjunct holds".into() }
}

fn right_sep(p: &TupleProfile, weyl: bool) -> Evaluation {
    let n = p.n();
    if !p.phi_minus(n) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: format!("(a) D_{n} not lower semi-Fredholm"),
        };
    }
    if !p.closed(1) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: "(b) R(D_1) not closed".into(),
        };
    }
    let condition_iii = right_iii_c(p, weyl);
    // Largest nullity-infinite column works iff any.
    let col = (2..=n).rev().find(|&j| p.alpha(j).is_infinite());
    let col_ok = col.is_some_and(|j| {
        (j..=n - 1).all(|s| p.beta(s).is_finite()) && interior_ranges_closed(p)
    });
    if col_ok {
        let j = col.unwrap();
        return Evaluation {
            witness: Some(SufficiencyWitness::RowRight { j }),
            condition_iii,
            clause: format!("(c) alpha(D_{j})=inf with closed interior ranges"),
        };
    }
    let sum_ok = (1..=n - 1).all(|s| p.phi_minus(s)) && (!weyl || p.sum_beta() <= p.sum_alpha());
    if sum_ok {
        return Evaluation {
            witness: Some(SufficiencyWitness::TrivialZero),
            condition_iii,
            clause: if weyl {
                "(c) all D_s lower semi-Fredholm with sum(beta) <= sum(alpha)".into()
            } else {
                "(c) all D_s lower semi-Fredholm".into()
            },
        };
    }
    Evaluation { witness: None, condition_iii, clause: "(c) no disjunct holds".into() }
}

fn fred_sep(p: &TupleProfile) -> Evaluation {
    let n = p.n();
    if !p.phi_plus(1) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: "(a) D_1 not upper semi-Fredholm".into(),
        };
    }
    if !p.phi_minus(n) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: format!("(a) D_{n} not lower semi-Fredholm"),
        };
    }
    let iii_disj1 = (1..=n - 1).any(|j| {
        p.beta(j).is_infinite()
            && (2..=j).all(|s| p.alpha(s).is_finite())
            && (j + 1..=n).any(|k| {
                p.alpha(k).is_infinite() && (k..=n - 1).all(|s| p.beta(s).is_finite())
            })
    });
    let all_semi =
        (2..=n).all(|s| p.phi_plus(s)) && (1..=n - 1).all(|s| p.phi_minus(s));
    let condition_iii = iii_disj1 || all_semi;

    // (i)(b) first disjunct, first feasible pair (j, k) lexicographically.
    let mut pair = None;
    'outer: for j in 1..=n - 1 {
        if !(p.beta(j).is_infinite() && p.alpha(j).is_finite()) {
            continue;
        }
        if !(1..=j.saturating_sub(1))
            .all(|s| p.alpha(s).is_finite() && p.beta(s).is_finite())
        {
            continue;
        }
        for k in j + 1..=n {
            if p.alpha(k).is_infinite()
                && p.beta(k).is_finite()
                && (k + 1..=n).all(|s| p.alpha(s).is_finite() && p.beta(s).is_finite())
                && interior_ranges_closed(p)
            {
                pair = Some((j, k));
                break 'outer;
            }
        }
    }
    if let Some((j, k)) = pair {
        return Evaluation {
            witness: Some(SufficiencyWitness::Pair { j, k }),
            condition_iii,
            clause: format!("(b) beta(D_{j})=inf paired with alpha(D_{k})=inf"),
        };
    }
    if all_semi {
        return Evaluation {
            witness: Some(SufficiencyWitness::TrivialZero),
            condition_iii,
            clause: "(b) every entry Fredholm".into(),
        };
    }
    Evaluation { witness: None, condition_iii, clause: "(b) no disjunct holds".into() }
}

/// `alpha(D_s) <= beta(D_{s-1})` for `2 <= s <= n`.
fn left_chain_holds(p: &TupleProfile) -> bool {
    (2..=p.n()).all(|s| p.alpha(s) <= p.beta(s - 1))
}

/// `beta(D_s) <= alpha(D_{s+1})` for `1 <= s <= n-1`.
fn right_chain_holds(p: &TupleProfile) -> bool {
    (1..=p.n() - 1).all(|s| p.beta(s) <= p.alpha(s + 1))
}

fn left_chain(p: &TupleProfile, weyl: bool) -> Evaluation {
    let n = p.n();
    if !p.phi_plus(1) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: "(a) D_1 not upper semi-Fredholm".into(),
        };
    }
    if !p.closed(n) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: format!("(b) R(D_{n}) not closed"),
        };
    }
    let condition_iii = left_iii_c(p, weyl);
    if interior_ranges_closed(p) && left_chain_holds(p) {
        if !weyl {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: "(c) nullity chain".into(),
            };
        }
        if p.beta(n).is_infinite() {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: "(c) nullity chain with beta(D_n)=inf".into(),
            };
        }
        // Alternative form: a strict drop into an infinite deficiency keeps
        // infinitely many cokernel directions uncovered.
        if let Some(t) =
            (2..=n).find(|&t| p.alpha(t) < p.beta(t - 1) && p.beta(t - 1).is_infinite())
        {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: format!("(c) nullity chain with strict gap below beta(D_{})=inf", t - 1),
            };
        }
    }
    let sum_ok = (2..=n).all(|s| p.phi_plus(s)) && (!weyl || p.sum_alpha() <= p.sum_beta());
    if sum_ok {
        return Evaluation {
            witness: Some(SufficiencyWitness::TrivialZero),
            condition_iii,
            clause: if weyl {
                "(c) all D_s upper semi-Fredholm with sum(alpha) <= sum(beta)".into()
            } else {
                "(c) all D_s upper semi-Fredholm".into()
            },
        };
    }
    Evaluation { witness: None, condition_iii, clause: "(c) no disjunct holds".into() }
}

fn right_chain(p: &TupleProfile, weyl: bool) -> Evaluation {
    let n = p.n();
    if !p.phi_minus(n) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: format!("(a) D_{n} not lower semi-Fredholm"),
        };
    }
    if !p.closed(1) {
        return Evaluation {
            witness: None,
            condition_iii: false,
            clause: "(b) R(D_1) not closed".into(),
        };
    }
    let condition_iii = right_iii_c(p, weyl);
    if interior_ranges_closed(p) && right_chain_holds(p) {
        if !weyl {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: "(c) deficiency chain".into(),
            };
        }
        if p.alpha(1).is_infinite() {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: "(c) deficiency chain with alpha(D_1)=inf".into(),
            };
        }
        if let Some(t) =
            (1..=n - 1).find(|&t| p.beta(t) < p.alpha(t + 1) && p.alpha(t + 1).is_infinite())
        {
            return Evaluation {
                witness: Some(SufficiencyWitness::Chain),
                condition_iii,
                clause: format!("(c) deficiency chain with strict gap below alpha(D_{})=inf", t + 1),
            };
        }
    }
    let sum_ok = (1..=n - 1).all(|s| p.phi_minus(s)) && (!weyl || p.sum_beta() <= p.sum_alpha());
    if sum_ok {
        return Evaluation {
            witness: Some(SufficiencyWitness::TrivialZero),
            condition_iii,
            clause: if weyl {
                "(c) all D_s lower semi-Fredholm with sum(beta) <= sum(alpha)".into()
            } else {
                "(c) all D_s lower semi-Fredholm".into()
            },
        };
    }
    Evaluation { witness: None, condition_iii, clause: "(c) no disjunct holds".into() }
}

fn fred_necessary(p: &TupleProfile) -> Evaluation {
    let mut eval = fred_sep(p);
    // Without separability no sufficient condition is available for the
    // Fredholm class; only the necessary direction is exposed.
    eval.witness = None;
    eval.clause = "necessary condition only (no sufficiency without separability)".into();
    eval
}

pub(crate) fn evaluate(p: &TupleProfile, theorem: TheoremId) -> Evaluation {
    match theorem {
        TheoremId::LeftWeylSep => left_sep(p, true),
        TheoremId::LeftFredSep => left_sep(p, false),
        TheoremId::RightWeylSep => right_sep(p, true),
        TheoremId::RightFredSep => right_sep(p, false),
        TheoremId::FredSep => fred_sep(p),
        TheoremId::LeftWeylChain => left_chain(p, true),
        TheoremId::LeftFredChain => left_chain(p, false),
        TheoremId::RightWeylChain => right_chain(p, true),
        TheoremId::RightFredChain => right_chain(p, false),
        TheoremId::FredNecessary => fred_necessary(p),
    }
}

/// Evaluate conditions (i) and (iii) of one theorem on a profile.
pub fn check(profile: &TupleProfile, theorem: TheoremId) -> Verdict {
    let eval = evaluate(profile, theorem);
    Verdict {
        condition_i: eval.witness.is_some(),
        condition_iii: eval.condition_iii,
        witness_clause: eval.clause,
    }
}

/// The five exact characterizations for `n = 2`: these decide existence of a
/// completing tuple outright.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum N2Theorem {
    LeftWeyl2,
    RightWeyl2,
    LeftFred2,
    RightFred2,
    Fred2,
}

impl N2Theorem {
    pub const ALL: [N2Theorem; 5] = [
        N2Theorem::LeftWeyl2,
        N2Theorem::RightWeyl2,
        N2Theorem::LeftFred2,
        N2Theorem::RightFred2,
        N2Theorem::Fred2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            N2Theorem::LeftWeyl2 => "left-weyl-2",
            N2Theorem::RightWeyl2 => "right-weyl-2",
            N2Theorem::LeftFred2 => "left-fred-2",
            N2Theorem::RightFred2 => "right-fred-2",
            N2Theorem::Fred2 => "fred-2",
        }
    }
}

/// Exact existence of a completion for a length-2 profile.
pub fn check_n2_equiv(profile: &TupleProfile, theorem: N2Theorem) -> bool {
    assert_eq!(profile.n(), 2, "n=2 characterizations need a length-2 profile");
    let p = profile;
    match theorem {
        N2Theorem::LeftWeyl2 => {
            p.phi_plus(1)
                && p.closed(2)
                && (p.beta(1).is_infinite()
                    || (p.phi_plus(2) && p.sum_alpha() <= p.sum_beta()))
        }
        N2Theorem::RightWeyl2 => {
            p.phi_minus(2)
                && p.closed(1)
                && (p.alpha(2).is_infinite()
                    || (p.phi_minus(1) && p.sum_alpha() >= p.sum_beta()))
        }
        N2Theorem::LeftFred2 => {
            p.phi_plus(1) && p.closed(2) && (p.beta(1).is_infinite() || p.phi_plus(2))
        }
        N2Theorem::RightFred2 => {
            p.phi_minus(2) && p.closed(1) && (p.alpha(2).is_infinite() || p.phi_minus(1))
        }
        N2Theorem::Fred2 => {
            p.phi_plus(1)
                && p.phi_minus(2)
                && ((p.beta(1).is_infinite() && p.alpha(2).is_infinite())
                    || (p.phi_plus(2) && p.phi_minus(1)))
        }
    }
}
