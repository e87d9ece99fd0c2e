//! Upper-triangular block models and their exact rectangular truncations.
//!
//! A [`BlockModel`] is a diagonal tuple of catalog operators together with
//! sparse basis maps in strictly upper-triangular positions and a point
//! `lambda` subtracted along the diagonal. Truncation windows are
//! rectangular: the domain of each block column is cut at `n` coordinates
//! while each block row keeps every coordinate the windowed domain can
//! reach, so the truncated matrix never clips an image vector. A square cut
//! of a forward shift would fabricate a kernel vector at the boundary; the
//! reach-sized codomain window is what rules such artifacts out, making
//! truncated nullity exactly the dimension of the kernel inside the window.

use std::collections::BTreeMap;
use std::fmt;

use crate::coords::Enumeration;
use crate::extnat::ExtNat;
use crate::opmodel::{op_column, reach, OperatorExpr};
use crate::rational::RationalComplex;

/// The fixed diagonal entries `D_1, ..., D_n`, `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalTuple(Vec<OperatorExpr>);

impl DiagonalTuple {
    pub fn new(entries: Vec<OperatorExpr>) -> Self {
        assert!(entries.len() >= 2, "diagonal tuple needs n >= 2");
        DiagonalTuple(entries)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// 1-based diagonal entry.
    pub fn get(&self, i: usize) -> &OperatorExpr {
        &self.0[i - 1]
    }

    pub fn entries(&self) -> &[OperatorExpr] {
        &self.0
    }

    /// The tuple of the dual problem: reversed order, entrywise adjoints.
    pub fn reversed_adjoint(&self) -> DiagonalTuple {
        DiagonalTuple(self.0.iter().rev().map(|e| OperatorExpr::adjoint(e.clone())).collect())
    }
}

/// A partial isometry sending selected basis vectors injectively onto
/// selected basis vectors (coefficient 1 on every pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisMap {
    /// Explicit `(source, target)` pairs, sorted by source.
    Pairs(Vec<(u64, u64)>),
    /// Every source `m >= 1` maps to `mult*m + offset`.
    Rule { mult: u64, offset: i64 },
    /// The `t`-th source coordinate maps to the `t`-th target coordinate;
    /// pairs exist while both enumerations are long enough.
    Paired { sources: Enumeration, targets: Enumeration },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidBasisMap(pub String);

impl fmt::Display for InvalidBasisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid basis map: {}", self.0)
    }
}

impl std::error::Error for InvalidBasisMap {}

impl BasisMap {
    pub fn from_pairs(mut pairs: Vec<(u64, u64)>) -> Result<Self, InvalidBasisMap> {
        pairs.sort_by_key(|&(s, _)| s);
        let map = BasisMap::Pairs(pairs);
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<(), InvalidBasisMap> {
        match self {
            BasisMap::Pairs(pairs) => {
                let mut targets: Vec<u64> = Vec::with_capacity(pairs.len());
                for w in pairs.windows(2) {
                    if w[0].0 == w[1].0 {
                        return Err(InvalidBasisMap(format!("duplicate source {}", w[0].0)));
                    }
                }
                for &(s, t) in pairs {
                    if s == 0 || t == 0 {
                        return Err(InvalidBasisMap("coordinates are 1-based".into()));
                    }
                    targets.push(t);
                }
                targets.sort_unstable();
                for w in targets.windows(2) {
                    if w[0] == w[1] {
                        return Err(InvalidBasisMap(format!("duplicate target {}", w[0])));
                    }
                }
                Ok(())
            }
            BasisMap::Rule { mult, offset } => {
                if *mult == 0 || *mult as i64 + offset < 1 {
                    Err(InvalidBasisMap(format!("rule {mult}*m{offset:+} leaves the positive range")))
                } else {
                    Ok(())
                }
            }
            BasisMap::Paired { .. } => Ok(()),
        }
    }

    /// Image of source coordinate `m`, if `m` is mapped.
    pub fn target_of(&self, m: u64) -> Option<u64> {
        match self {
            BasisMap::Pairs(pairs) => pairs
                .binary_search_by_key(&m, |&(s, _)| s)
                .ok()
                .map(|idx| pairs[idx].1),
            BasisMap::Rule { mult, offset } => {
                if m == 0 {
                    None
                } else {
                    Some((m as i64 * *mult as i64 + offset) as u64)
                }
            }
            BasisMap::Paired { sources, targets } => {
                let t = sources.index_of(m)?;
                targets.nth(t)
            }
        }
    }

    /// Number of mapped pairs.
    pub fn pair_count(&self) -> ExtNat {
        match self {
            BasisMap::Pairs(pairs) => ExtNat::Fin(pairs.len() as u64),
            BasisMap::Rule { .. } => ExtNat::Inf,
            BasisMap::Paired { sources, targets } => sources.count().min(targets.count()),
        }
    }

    /// All pairs with source `<= max_source`.
    pub fn pairs_window(&self, max_source: u64) -> Vec<(u64, u64)> {
        match self {
            BasisMap::Pairs(pairs) => {
                pairs.iter().copied().take_while(|&(s, _)| s <= max_source).collect()
            }
            BasisMap::Rule { mult, offset } => (1..=max_source)
                .map(|m| (m, (m as i64 * *mult as i64 + offset) as u64))
                .collect(),
            BasisMap::Paired { sources, .. } => sources
                .window(max_source)
                .into_iter()
                .filter_map(|s| self.target_of(s).map(|t| (s, t)))
                .collect(),
        }
    }

    /// Largest target hit from sources `<= n`.
    pub fn reach(&self, n: u64) -> u64 {
        match self {
            BasisMap::Pairs(pairs) => pairs
                .iter()
                .take_while(|&&(s, _)| s <= n)
                .map(|&(_, t)| t)
                .max()
                .unwrap_or(0),
            BasisMap::Rule { mult, offset } => {
                if n == 0 {
                    0
                } else {
                    (n as i64 * *mult as i64 + offset) as u64
                }
            }
            BasisMap::Paired { sources, targets } => {
                let mut c = sources.count_le(n);
                if let ExtNat::Fin(total) = targets.count() {
                    c = c.min(total);
                }
                if c == 0 {
                    0
                } else {
                    targets.nth(c).unwrap_or(0)
                }
            }
        }
    }

    /// The inverse partial isometry (targets become sources).
    pub fn reversed(&self) -> BasisMap {
        match self {
            BasisMap::Pairs(pairs) => {
                let mut rev: Vec<(u64, u64)> = pairs.iter().map(|&(s, t)| (t, s)).collect();
                rev.sort_by_key(|&(s, _)| s);
                BasisMap::Pairs(rev)
            }
            BasisMap::Rule { mult, offset } => BasisMap::Paired {
                sources: Enumeration::all().scaled(*mult, *offset),
                targets: Enumeration::all(),
            },
            BasisMap::Paired { sources, targets } => {
                BasisMap::Paired { sources: targets.clone(), targets: sources.clone() }
            }
        }
    }

    /// Closed form `m -> mult*m + offset` over all sources, if the map has
    /// one.
    pub fn as_rule(&self) -> Option<(u64, i64)> {
        match self {
            BasisMap::Rule { mult, offset } => Some((*mult, *offset)),
            BasisMap::Paired { sources, targets } => {
                // Only an all-sources map with an affine target stream is a
                // rule in the serialized sense.
                match sources.affine() {
                    Some((1, 0)) => targets.affine(),
                    _ => None,
                }
            }
            BasisMap::Pairs(_) => None,
        }
    }
}

/// A diagonal tuple, upper basis maps, and the point subtracted on the
/// diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockModel {
    pub diag: DiagonalTuple,
    /// Strictly upper-triangular positions `(i, j)`, 1-based, `i < j`.
    pub upper: BTreeMap<(usize, usize), BasisMap>,
    pub shift: RationalComplex,
}

impl BlockModel {
    pub fn new(
        diag: DiagonalTuple,
        upper: BTreeMap<(usize, usize), BasisMap>,
        shift: RationalComplex,
    ) -> Self {
        for &(i, j) in upper.keys() {
            assert!(i >= 1 && i < j && j <= diag.n(), "map position ({i},{j}) not strictly upper");
        }
        BlockModel { diag, upper, shift }
    }

    pub fn block_diagonal(diag: DiagonalTuple, shift: RationalComplex) -> Self {
        BlockModel { diag, upper: BTreeMap::new(), shift }
    }

    pub fn n(&self) -> usize {
        self.diag.n()
    }

    /// Entry of `T - lambda` at block `(i, j)`, local position `(row, col)`.
    pub fn entry(&self, i: usize, row: u64, j: usize, col: u64) -> RationalComplex {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Greater => RationalComplex::zero(),
            Ordering::Equal => {
                let mut v = op_column(self.diag.get(j), col)
                    .into_iter()
                    .find(|&(r, _)| r == row)
                    .map(|(_, v)| v)
                    .unwrap_or_else(RationalComplex::zero);
                if row == col {
                    v = &v - &self.shift;
                }
                v
            }
            Ordering::Less => match self.upper.get(&(i, j)) {
                Some(map) if map.target_of(col) == Some(row) => RationalComplex::one(),
                _ => RationalComplex::zero(),
            },
        }
    }

    /// The adjoint as another upper-triangular model: block order reversed,
    /// diagonal entries adjointed, basis maps inverted and transposed. The
    /// reversal is a unitary permutation of the summands, so ranks and
    /// nullities of truncations are those of the adjoint itself.
    pub fn adjoint_model(&self) -> BlockModel {
        let n = self.n();
        let diag = self.diag.reversed_adjoint();
        let mut upper = BTreeMap::new();
        for (&(i, j), map) in &self.upper {
            upper.insert((n + 1 - j, n + 1 - i), map.reversed());
        }
        BlockModel { diag, upper, shift: self.shift.conj() }
    }
}

/// Exact rectangular truncation of a block model.
#[derive(Clone, Debug)]
pub struct TruncatedMatrix {
    /// Domain window per block column.
    pub col_window: u64,
    /// Codomain window per block row.
    pub row_windows: Vec<u64>,
    pub rows: usize,
    pub cols: usize,
    /// Per global column: `(global_row, value)` sorted by row.
    pub columns: Vec<Vec<(usize, RationalComplex)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssemblyError {
    /// Total codomain size exceeded the configured cap.
    TooLarge { rows: u64, cap: u64 },
}

impl fmt::Display for AssemblyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssemblyError::TooLarge { rows, cap } => {
                write!(f, "truncation needs {rows} rows, above the cap of {cap}")
            }
        }
    }
}

impl std::error::Error for AssemblyError {}

pub const DEFAULT_SIZE_CAP: u64 = 1_000_000;

/// Assemble the exact matrix of `T - lambda` on the first `n` coordinates of
/// each block column, with reach-sized block row windows.
pub fn assemble_truncation(
    model: &BlockModel,
    n: u64,
    cap: u64,
) -> Result<TruncatedMatrix, AssemblyError> {
    assert!(n >= 1);
    let nb = model.n();
    let mut row_windows = vec![0u64; nb];
    for i in 1..=nb {
        let mut w = n.max(reach(model.diag.get(i), n));
        for (&(bi, _), map) in &model.upper {
            if bi == i {
                w = w.max(map.reach(n));
            }
        }
        row_windows[i - 1] = w;
    }
    let total_rows: u64 = row_windows.iter().sum();
    if total_rows > cap {
        return Err(AssemblyError::TooLarge { rows: total_rows, cap });
    }
    let rows = total_rows as usize;
    let cols = nb * n as usize;

    let mut row_offsets = vec![0usize; nb];
    for i in 1..nb {
        row_offsets[i] = row_offsets[i - 1] + row_windows[i - 1] as usize;
    }

    let mut columns: Vec<Vec<(usize, RationalComplex)>> = Vec::with_capacity(cols);
    for j in 1..=nb {
        for m in 1..=n {
            let mut entries: BTreeMap<usize, RationalComplex> = BTreeMap::new();
            // Diagonal block: D_j - lambda.
            for (r, v) in op_column(model.diag.get(j), m) {
                debug_assert!(r <= row_windows[j - 1], "reach bound violated");
                let key = row_offsets[j - 1] + (r - 1) as usize;
                let slot = entries.entry(key).or_insert_with(RationalComplex::zero);
                *slot = &*slot + &v;
            }
            if !model.shift.is_zero() {
                let key = row_offsets[j - 1] + (m - 1) as usize;
                let slot = entries.entry(key).or_insert_with(RationalComplex::zero);
                *slot = &*slot - &model.shift;
            }
            // Basis maps sitting above the diagonal in this block column.
            for (&(bi, bj), map) in &model.upper {
                if bj == j {
                    if let Some(t) = map.target_of(m) {
                        debug_assert!(t <= row_windows[bi - 1], "map reach bound violated");
                        let key = row_offsets[bi - 1] + (t - 1) as usize;
                        let slot = entries.entry(key).or_insert_with(RationalComplex::zero);
                        *slot = &*slot + &RationalComplex::one();
                    }
                }
            }
            columns.push(entries.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    Ok(TruncatedMatrix { col_window: n, row_windows, rows, cols, columns })
}
