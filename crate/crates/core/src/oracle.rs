//! Exact rational rank computation on rectangular truncations, and the
//! window-schedule diagnostics built on it.
//!
//! Elimination is plain Gaussian elimination over the field of Gaussian
//! rationals with sparse rows; pivots are chosen by row sparsity (ties by
//! index), which keeps fill-in negligible on the banded matrices the block
//! models produce. No rounding happens anywhere, so rank and nullity are
//! exact and independent of pivot order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::blockmodel::{assemble_truncation, AssemblyError, BlockModel, TruncatedMatrix};
use crate::rational::RationalComplex;

/// Rank data of one truncation. `adjoint_nullity` is the nullity of the
/// conjugate transpose of the same rectangular matrix, i.e. `rows - rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub n: u64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub nullity: usize,
    pub adjoint_nullity: usize,
}

/// Exact rank/nullity of a truncated matrix.
pub fn exact_rank(matrix: &TruncatedMatrix) -> RankReport {
    let rank = sparse_rank(matrix.rows, &matrix.columns);
    RankReport {
        n: matrix.col_window,
        rows: matrix.rows,
        cols: matrix.cols,
        rank,
        nullity: matrix.cols - rank,
        adjoint_nullity: matrix.rows - rank,
    }
}

fn sparse_rank(nrows: usize, columns: &[Vec<(usize, RationalComplex)>]) -> usize {
    // Row-major sparse representation.
    let mut rows: Vec<BTreeMap<usize, RationalComplex>> = vec![BTreeMap::new(); nrows];
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col {
            rows[*r].insert(c, v.clone());
        }
    }
    // Per-column index of active rows holding a nonzero.
    let ncols = columns.len();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows[c].insert(r);
        }
    }

    let mut active = vec![true; nrows];
    let mut rank = 0usize;
    for col in 0..ncols {
        let pivot_row = col_rows[col]
            .iter()
            .filter(|&&r| active[r])
            .min_by_key(|&&r| (rows[r].len(), r))
            .copied();
        let Some(p) = pivot_row else { continue };
        rank += 1;
        active[p] = false;
        let pivot_val = rows[p].get(&col).expect("indexed nonzero").clone();
        let pivot_inv = pivot_val.inv().expect("pivot nonzero");
        let pivot_row_entries: Vec<(usize, RationalComplex)> =
            rows[p].iter().map(|(c, v)| (*c, v.clone())).collect();

        let victims: Vec<usize> =
            col_rows[col].iter().filter(|&&r| active[r]).copied().collect();
        for r in victims {
            let factor = {
                let v = rows[r].get(&col).expect("indexed nonzero");
                v * &pivot_inv
            };
            for (c, pv) in &pivot_row_entries {
                let delta = &factor * pv;
                match rows[r].entry(*c) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let nv = &*e.get() - &delta;
                        if nv.is_zero() {
                            e.remove();
                            col_rows[*c].remove(&r);
                        } else {
                            *e.get_mut() = nv;
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-&delta);
                        col_rows[*c].insert(r);
                    }
                }
            }
            debug_assert!(!rows[r].contains_key(&col));
        }
    }
    rank
}

/// Outcome of a nullity trace over an increasing window schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stabilization {
    /// The last three values agree.
    Stable,
    /// Strictly increasing across the whole schedule: window-scale evidence
    /// for an infinite dimension, reported as evidence and never as a bare
    /// infinity claim.
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullityTrace {
    /// `(window, nullity)` per schedule entry.
    pub trace: Vec<(u64, u64)>,
    pub flag: Stabilization,
    /// Last value when stable.
    pub estimate: Option<u64>,
}

impl NullityTrace {
    fn from_values(trace: Vec<(u64, u64)>) -> Self {
        let vals: Vec<u64> = trace.iter().map(|&(_, v)| v).collect();
        let stable = vals.len() >= 3 && {
            let tail = &vals[vals.len() - 3..];
            tail[0] == tail[1] && tail[1] == tail[2]
        };
        let diverging = vals.windows(2).all(|w| w[0] < w[1]);
        let flag = if stable {
            Stabilization::Stable
        } else if diverging {
            Stabilization::Diverging
        } else {
            Stabilization::Inconclusive
        };
        let estimate = if stable { vals.last().copied() } else { None };
        NullityTrace { trace, flag, estimate }
    }
}

pub const DEFAULT_SCHEDULE: [u64; 4] = [16, 32, 64, 128];

/// Nullity of the model's truncation at each window of the schedule.
///
/// The schedule must be strictly increasing with at least three entries. For
/// models whose kernel is coordinate-aligned the sequence is nondecreasing
/// and, when the nullity is finite, stabilizes at it.
pub fn stabilized_alpha(
    model: &BlockModel,
    schedule: &[u64],
    cap: u64,
) -> Result<NullityTrace, AssemblyError> {
    assert!(schedule.len() >= 3, "schedule needs at least three windows");
    assert!(schedule.windows(2).all(|w| w[0] < w[1]), "schedule must increase");
    let mut trace = Vec::with_capacity(schedule.len());
    for &n in schedule {
        let t = assemble_truncation(model, n, cap)?;
        let report = exact_rank(&t);
        trace.push((n, report.nullity as u64));
    }
    Ok(NullityTrace::from_values(trace))
}

/// Same trace on the adjoint model: window-scale deficiency evidence.
pub fn stabilized_adjoint(
    model: &BlockModel,
    schedule: &[u64],
    cap: u64,
) -> Result<NullityTrace, AssemblyError> {
    stabilized_alpha(&model.adjoint_model(), schedule, cap)
}

impl fmt::Display for Stabilization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stabilization::Stable => write!(f, "stable"),
            Stabilization::Diverging => write!(f, "diverging"),
            Stabilization::Inconclusive => write!(f, "inconclusive"),
        }
    }
}
