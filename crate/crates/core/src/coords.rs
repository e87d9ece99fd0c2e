//! Increasing enumerations of coordinate indices.
//!
//! Kernels and range orthocomplements of the operator catalog, where they are
//! spanned by standard basis vectors at all, are described by an
//! [`Enumeration`]: a strictly increasing, possibly infinite list of 1-based
//! coordinate indices that can be windowed, indexed and counted exactly.
//! Completion witnesses are built by pairing two enumerations, so the same
//! type also underlies basis maps.

use crate::extnat::ExtNat;

/// A strictly increasing enumeration of coordinates `>= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    /// Explicit sorted list.
    Finite(Vec<u64>),
    /// `head` followed by the arithmetic progression `first, first+step, ...`.
    /// Every head element is below `first`; `step >= 1`.
    Arithmetic { head: Vec<u64>, first: u64, step: u64 },
    /// All indices not divisible by `k` (`k >= 2`).
    NonMultiples { k: u64 },
    /// Disjoint merge of two enumerations.
    Union(Box<Enumeration>, Box<Enumeration>),
    /// Image of `inner` under the order-preserving map `m -> mult*m + offset`.
    Scaled { inner: Box<Enumeration>, mult: u64, offset: i64 },
    /// Subsequence `t -> inner[start + (t-1)*stride]` (1-based positions).
    Substream { inner: Box<Enumeration>, stride: u64, start: u64 },
}

impl Enumeration {
    pub fn empty() -> Self {
        Enumeration::Finite(Vec::new())
    }

    /// The identity enumeration `1, 2, 3, ...`.
    pub fn all() -> Self {
        Enumeration::Arithmetic { head: Vec::new(), first: 1, step: 1 }
    }

    /// All indices `>= start`.
    pub fn from_index(start: u64) -> Self {
        Enumeration::Arithmetic { head: Vec::new(), first: start, step: 1 }
    }

    /// Non-multiples of `k`; normalizes `k = 2` to the odd progression.
    pub fn non_multiples(k: u64) -> Self {
        assert!(k >= 2);
        if k == 2 {
            Enumeration::Arithmetic { head: Vec::new(), first: 1, step: 2 }
        } else {
            Enumeration::NonMultiples { k }
        }
    }

    pub fn scaled(self, mult: u64, offset: i64) -> Self {
        assert!(mult >= 1);
        assert!(mult as i64 + offset >= 1, "scaled enumeration must stay >= 1");
        match self {
            // Compose affine images so interleavings of progressions stay in
            // closed form.
            Enumeration::Arithmetic { head, first, step } => Enumeration::Arithmetic {
                head: head.iter().map(|&m| apply_affine(m, mult, offset)).collect(),
                first: apply_affine(first, mult, offset),
                step: step * mult,
            },
            Enumeration::Finite(v) => {
                Enumeration::Finite(v.iter().map(|&m| apply_affine(m, mult, offset)).collect())
            }
            inner => Enumeration::Scaled { inner: Box::new(inner), mult, offset },
        }
    }

    /// Positions `start, start+stride, ...` of `self` as a new enumeration.
    pub fn substream(self, stride: u64, start: u64) -> Self {
        assert!(stride >= 1 && start >= 1);
        match self {
            Enumeration::Arithmetic { head, first, step } if head.is_empty() => {
                // nth(t) = first + (start + (t-1)*stride - 1) * step
                Enumeration::Arithmetic {
                    head: Vec::new(),
                    first: first + (start - 1) * step,
                    step: step * stride,
                }
            }
            Enumeration::Finite(v) => Enumeration::Finite(
                v.iter()
                    .enumerate()
                    .filter(|(i, _)| {
                        let pos = *i as u64 + 1;
                        pos >= start && (pos - start) % stride == 0
                    })
                    .map(|(_, &m)| m)
                    .collect(),
            ),
            inner => Enumeration::Substream { inner: Box::new(inner), stride, start },
        }
    }

    pub fn union(a: Enumeration, b: Enumeration) -> Self {
        match (a, b) {
            (Enumeration::Finite(v), b) if v.is_empty() => b,
            (a, Enumeration::Finite(v)) if v.is_empty() => a,
            (a, b) => Enumeration::Union(Box::new(a), Box::new(b)),
        }
    }

    /// Total number of coordinates.
    pub fn count(&self) -> ExtNat {
        match self {
            Enumeration::Finite(v) => ExtNat::Fin(v.len() as u64),
            Enumeration::Arithmetic { .. } | Enumeration::NonMultiples { .. } => ExtNat::Inf,
            Enumeration::Union(a, b) => a.count().add(b.count()),
            Enumeration::Scaled { inner, .. } => inner.count(),
            Enumeration::Substream { inner, stride, start } => match inner.count() {
                ExtNat::Inf => ExtNat::Inf,
                ExtNat::Fin(c) if c >= *start => ExtNat::Fin((c - start) / stride + 1),
                ExtNat::Fin(_) => ExtNat::Fin(0),
            },
        }
    }

    /// Number of coordinates `<= m`.
    pub fn count_le(&self, m: u64) -> u64 {
        match self {
            Enumeration::Finite(v) => v.partition_point(|&x| x <= m) as u64,
            Enumeration::Arithmetic { head, first, step } => {
                let head_count = head.partition_point(|&x| x <= m) as u64;
                let tail_count = if m >= *first { (m - first) / step + 1 } else { 0 };
                head_count + tail_count
            }
            Enumeration::NonMultiples { k } => m - m / k,
            Enumeration::Union(a, b) => a.count_le(m) + b.count_le(m),
            Enumeration::Scaled { inner, mult, offset } => {
                let x_max = (m as i64 - offset).div_euclid(*mult as i64);
                if x_max < 1 {
                    0
                } else {
                    inner.count_le(x_max as u64)
                }
            }
            Enumeration::Substream { inner, stride, start } => {
                let c = inner.count_le(m);
                if c >= *start {
                    (c - start) / stride + 1
                } else {
                    0
                }
            }
        }
    }

    pub fn contains(&self, m: u64) -> bool {
        if m == 0 {
            return false;
        }
        match self {
            Enumeration::Finite(v) => v.binary_search(&m).is_ok(),
            Enumeration::Arithmetic { head, first, step } => {
                head.binary_search(&m).is_ok() || (m >= *first && (m - first) % step == 0)
            }
            Enumeration::NonMultiples { k } => m % k != 0,
            Enumeration::Union(a, b) => a.contains(m) || b.contains(m),
            Enumeration::Scaled { inner, mult, offset } => {
                let shifted = m as i64 - offset;
                shifted >= *mult as i64
                    && shifted % *mult as i64 == 0
                    && inner.contains((shifted / *mult as i64) as u64)
            }
            Enumeration::Substream { inner, stride, start } => match inner.index_of(m) {
                Some(pos) => pos >= *start && (pos - start) % stride == 0,
                None => false,
            },
        }
    }

    /// 1-based position of coordinate `m`, when present.
    pub fn index_of(&self, m: u64) -> Option<u64> {
        if self.contains(m) {
            Some(self.count_le(m))
        } else {
            None
        }
    }

    /// The `t`-th coordinate (1-based), when the enumeration is long enough.
    pub fn nth(&self, t: u64) -> Option<u64> {
        if t == 0 {
            return None;
        }
        match self {
            Enumeration::Finite(v) => v.get(t as usize - 1).copied(),
            Enumeration::Arithmetic { head, first, step } => {
                let h = head.len() as u64;
                if t <= h {
                    Some(head[t as usize - 1])
                } else {
                    Some(first + (t - h - 1) * step)
                }
            }
            Enumeration::NonMultiples { k } => Some(t + (t - 1) / (k - 1)),
            Enumeration::Union(_, _) => {
                if self.count() < ExtNat::Fin(t) {
                    return None;
                }
                // Smallest m with count_le(m) >= t, by doubling then bisection.
                let mut hi = 1u64;
                while self.count_le(hi) < t {
                    hi *= 2;
                }
                let mut lo = 1u64;
                while lo < hi {
                    let mid = lo + (hi - lo) / 2;
                    if self.count_le(mid) >= t {
                        hi = mid;
                    } else {
                        lo = mid + 1;
                    }
                }
                Some(lo)
            }
            Enumeration::Scaled { inner, mult, offset } => {
                inner.nth(t).map(|m| apply_affine(m, *mult, *offset))
            }
            Enumeration::Substream { inner, stride, start } => {
                inner.nth(start + (t - 1) * stride)
            }
        }
    }

    /// All coordinates `<= n`, ascending.
    pub fn window(&self, n: u64) -> Vec<u64> {
        let size = self.count_le(n);
        let mut out = Vec::with_capacity(size as usize);
        for t in 1..=size {
            out.push(self.nth(t).expect("window within count"));
        }
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]), "enumeration not strictly increasing");
        out
    }

    /// Closed form `t -> mult*t + offset` valid for every position, if one
    /// exists.
    pub fn affine(&self) -> Option<(u64, i64)> {
        match self {
            Enumeration::Arithmetic { head, first, step } if head.is_empty() => {
                Some((*step, *first as i64 - *step as i64))
            }
            Enumeration::Scaled { inner, mult, offset } => {
                let (a, b) = inner.affine()?;
                Some((a * mult, b * *mult as i64 + offset))
            }
            Enumeration::Substream { inner, stride, start } => {
                let (a, b) = inner.affine()?;
                // t -> a*(start + (t-1)*stride) + b
                Some((a * stride, a as i64 * (*start as i64 - *stride as i64) + b))
            }
            _ => None,
        }
    }
}

fn apply_affine(m: u64, mult: u64, offset: i64) -> u64 {
    let v = m as i64 * mult as i64 + offset;
    debug_assert!(v >= 1);
    v as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_even_interleaving() {
        let odds = Enumeration::all().scaled(2, -1);
        let evens = Enumeration::all().scaled(2, 0);
        assert_eq!(odds.window(10), vec![1, 3, 5, 7, 9]);
        assert_eq!(evens.window(10), vec![2, 4, 6, 8, 10]);
        let both = Enumeration::union(odds, evens);
        assert_eq!(both.window(6), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(both.nth(5), Some(5));
        assert_eq!(both.count(), ExtNat::Inf);
    }

    #[test]
    fn non_multiples() {
        let e = Enumeration::non_multiples(3);
        assert_eq!(e.window(10), vec![1, 2, 4, 5, 7, 8, 10]);
        assert_eq!(e.nth(5), Some(7));
        assert_eq!(e.index_of(7), Some(5));
        assert_eq!(e.index_of(6), None);
        assert_eq!(e.count_le(10), 7);
    }

    #[test]
    fn substream_of_progression_is_affine() {
        // Odd coordinates, every 2nd starting at position 2: 3, 7, 11, ...
        let odds = Enumeration::all().scaled(2, -1);
        let sub = odds.substream(2, 2);
        assert_eq!(sub.window(12), vec![3, 7, 11]);
        let (mult, off) = sub.affine().expect("closed form");
        for t in 1..=20u64 {
            assert_eq!(sub.nth(t), Some((mult as i64 * t as i64 + off) as u64));
        }
    }

    #[test]
    fn substream_of_non_multiples() {
        let e = Enumeration::non_multiples(3).substream(2, 1);
        // positions 1,3,5,... of 1,2,4,5,7,8,10,11,...
        assert_eq!(e.window(11), vec![1, 4, 7, 10]);
        assert!(e.affine().is_none());
        assert!(e.contains(7));
        assert!(!e.contains(2));
    }

    #[test]
    fn finite_heads_and_tails() {
        let e = Enumeration::Arithmetic { head: vec![2, 5], first: 9, step: 3 };
        assert_eq!(e.window(16), vec![2, 5, 9, 12, 15]);
        assert_eq!(e.nth(1), Some(2));
        assert_eq!(e.nth(4), Some(12));
        assert_eq!(e.index_of(12), Some(4));
        assert_eq!(e.count_le(8), 2);
        assert!(e.affine().is_none());
    }

    #[test]
    fn finite_substream_and_counts() {
        let f = Enumeration::Finite(vec![4, 8, 15, 16, 23, 42]);
        assert_eq!(f.count(), ExtNat::Fin(6));
        let sub = f.clone().substream(2, 2);
        assert_eq!(sub.window(100), vec![8, 16, 42]);
        assert_eq!(sub.count(), ExtNat::Fin(3));
        assert_eq!(f.index_of(15), Some(3));
    }
}
