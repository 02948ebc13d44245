//! Multi-indices for negative-mode monomials `l^i = ... l_{-2}^{i_2} l_{-1}^{i_1}`,
//! their weight and degree, and the total order used by the maximal-term
//! descent.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeff::Field;
use crate::rep::ModElt;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("the zero element has no support")]
    ZeroElement,
    #[error("malformed multi-index `{0}`")]
    Parse(String),
}

/// A finitely supported exponent vector `(..., i_2, i_1)`.
///
/// `entries[s - 1]` holds `i_s`; trailing zeros are never stored, so equal
/// multi-indices have equal representations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from `[i_1, i_2, ...]`.
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        MultiIndex { entries }
    }

    /// The unit vector `eps_s`, `s >= 1`.
    pub fn eps(s: usize) -> Self {
        assert!(s >= 1, "eps_s is defined for s >= 1");
        let mut e = vec![0; s];
        e[s - 1] = 1;
        MultiIndex { entries: e }
    }

    /// Counts the negative modes of a word such as `[-3, -1, -1]`.
    /// Non-negative modes are ignored.
    pub fn from_modes(modes: &[i64]) -> Self {
        let mut e = Vec::new();
        for &m in modes.iter().filter(|&&m| m < 0) {
            let s = (-m) as usize;
            if e.len() < s {
                e.resize(s, 0);
            }
            e[s - 1] += 1;
        }
        MultiIndex::new(e)
    }

    /// The word of `l^i`, modes non-decreasing: `l_{-s}` repeated `i_s` times,
    /// largest `s` first.
    pub fn modes(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (idx, &n) in self.entries.iter().enumerate().rev() {
            out.extend(std::iter::repeat_n(-(idx as i64 + 1), n as usize));
        }
        out
    }

    /// `[i_1, i_2, ...]`, trailing zeros omitted.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// `i_s` for `s >= 1`.
    pub fn get(&self, s: usize) -> u32 {
        if s == 0 {
            return 0;
        }
        self.entries.get(s - 1).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `w(i) = sum s * i_s`.
    pub fn weight(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, &n)| (k as u64 + 1) * n as u64)
            .sum()
    }

    /// `d(i) = sum i_s`.
    pub fn degree(&self) -> u64 {
        self.entries.iter().map(|&n| n as u64).sum()
    }

    /// `min { s : i_s != 0 }`.
    pub fn min_support(&self) -> Option<usize> {
        self.entries.iter().position(|&n| n > 0).map(|k| k + 1)
    }

    pub fn plus_eps(&self, s: usize) -> Self {
        let mut e = self.entries.clone();
        if e.len() < s {
            e.resize(s, 0);
        }
        e[s - 1] += 1;
        MultiIndex { entries: e }
    }

    /// `self - eps_s`, or `None` when `i_s = 0`.
    pub fn minus_eps(&self, s: usize) -> Option<Self> {
        if self.get(s) == 0 {
            return None;
        }
        let mut e = self.entries.clone();
        e[s - 1] -= 1;
        Some(MultiIndex::new(e))
    }

    /// The order `≺`: weight, then degree, then the larger minimal support
    /// index is smaller, then recurse after removing one copy of the common
    /// minimal part.
    pub fn compare(&self, other: &MultiIndex) -> Ordering {
        let by_weight = self.weight().cmp(&other.weight());
        if by_weight != Ordering::Equal {
            return by_weight;
        }
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        // Stripping eps_p keeps weights and degrees equal, so only the third
        // clause remains: walk both part lists in increasing order.
        let mut a = Parts::new(&self.entries);
        let mut b = Parts::new(&other.entries);
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (Some(p), Some(q)) if p == q => continue,
                (Some(p), Some(q)) => return q.cmp(&p),
                // unreachable with equal degrees
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
            }
        }
    }

    /// All multi-indices of weight exactly `w` (the partitions of `w`).
    pub fn of_weight(w: u64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        partitions(w, w, &mut current, &mut out);
        out
    }

    /// All multi-indices of weight at most `w`, in increasing `≺` order.
    pub fn up_to_weight(w: u64) -> Vec<MultiIndex> {
        let mut all: Vec<MultiIndex> = (0..=w).flat_map(Self::of_weight).collect();
        all.sort();
        all
    }
}

fn partitions(rest: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<MultiIndex>) {
    if rest == 0 {
        let mut e = vec![0u32; current.first().copied().unwrap_or(0) as usize];
        for &p in current.iter() {
            e[p as usize - 1] += 1;
        }
        out.push(MultiIndex::new(e));
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        current.push(p);
        partitions(rest - p, p, current, out);
        current.pop();
    }
}

/// Iterates over the parts `s` of a multi-index with multiplicity, smallest
/// first, without allocating.
struct Parts<'a> {
    entries: &'a [u32],
    s: usize,
    left: u32,
}

impl<'a> Parts<'a> {
    fn new(entries: &'a [u32]) -> Self {
        Parts {
            entries,
            s: 0,
            left: 0,
        }
    }
}

impl Iterator for Parts<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.left == 0 {
            if self.s >= self.entries.len() {
                return None;
            }
            self.left = self.entries[self.s];
            self.s += 1;
        }
        self.left -= 1;
        Some(self.s)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OrderError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(MultiIndex::zero());
        }
        let entries = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiIndex::new(entries))
    }
}

/// `supp(x)` and the maximal term `t(x)` of a nonzero module element.
pub fn support_and_max<F: Field>(
    x: &ModElt<F>,
) -> Result<(BTreeSet<MultiIndex>, MultiIndex), OrderError> {
    let supp: BTreeSet<MultiIndex> = x.terms().map(|(k, _)| k.neg.clone()).collect();
    let t = supp.last().cloned().ok_or(OrderError::ZeroElement)?;
    Ok((supp, t))
}

/// `t(x)` for a nonzero element.
pub fn max_term<F: Field>(x: &ModElt<F>) -> Result<MultiIndex, OrderError> {
    support_and_max(x).map(|(_, t)| t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn weight_and_degree_examples() {
        assert_eq!(MultiIndex::zero().weight(), 0);
        assert_eq!(MultiIndex::eps(3).weight(), 3);
        assert_eq!(mi(&[2, 1]).weight(), 4);
        assert_eq!(MultiIndex::zero().degree(), 0);
        assert_eq!(mi(&[2, 1]).degree(), 3);
        assert_eq!(MultiIndex::eps(7).degree(), 1);
    }

    #[test]
    fn compare_examples() {
        assert_eq!(MultiIndex::eps(1).compare(&MultiIndex::eps(2)), Ordering::Less);
        assert_eq!(MultiIndex::eps(2).compare(&mi(&[2])), Ordering::Less);
        assert_eq!(mi(&[0, 2]).compare(&mi(&[1, 0, 1])), Ordering::Less);
        assert_eq!(MultiIndex::zero().compare(&MultiIndex::eps(5)), Ordering::Less);
    }

    #[test]
    fn fourth_clause_recurses() {
        // weight 6, degree 3, min support 1 on both sides; removing eps_1
        // leaves min supports 2 and 1, and the larger one is smaller
        assert_eq!(mi(&[1, 1, 1]).compare(&mi(&[2, 0, 0, 1])), Ordering::Less);
        assert_eq!(mi(&[0, 1, 1]).compare(&mi(&[1, 0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn modes_round_trip() {
        let i = mi(&[1, 2, 0, 1]);
        assert_eq!(i.modes(), vec![-4, -2, -2, -1]);
        assert_eq!(MultiIndex::from_modes(&i.modes()), i);
    }

    #[test]
    fn text_form() {
        assert_eq!(mi(&[2, 0, 1, 0]).to_string(), "[2,0,1]");
        assert_eq!("[2, 0,1]".parse::<MultiIndex>().unwrap(), mi(&[2, 0, 1]));
        assert_eq!("[]".parse::<MultiIndex>().unwrap(), MultiIndex::zero());
        assert!("2,1".parse::<MultiIndex>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|w| MultiIndex::of_weight(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }
}
