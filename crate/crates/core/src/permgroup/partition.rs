use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
///
/// The empty partition (of 0) is allowed; it indexes the constant Schur
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            // Trailing zeros are padding; interior zeros are not.
            let trimmed: Vec<usize> = parts.iter().copied().take_while(|&p| p > 0).collect();
            if parts[trimmed.len()..].iter().any(|&p| p > 0) {
                return Err(Error::InvalidInput(format!("{parts:?} is not a partition")));
            }
            return Self::new(trimmed);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_unsorted(vec![n])
    }

    /// The one-column partition `(1,…,1)`.
    pub fn column(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Parts padded with zeros to `len` entries.
    pub fn padded(&self, len: usize) -> Result<Vec<usize>> {
        if self.len() > len {
            return Err(Error::InvalidInput(format!(
                "partition {self} has more than {len} parts"
            )));
        }
        let mut v = self.parts.clone();
        v.resize(len, 0);
        Ok(v)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count())
            .collect();
        Self { parts }
    }

    /// Hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(r, &len)| (0..len).map(|c| (len - c - 1) + (conj.parts[c] - r - 1) + 1).collect())
            .collect()
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dimension(&self) -> u64 {
        let n = self.size() as u64;
        let mut num: u128 = (1..=n as u128).product();
        for h in self.hook_lengths().into_iter().flatten() {
            num /= h as u128;
        }
        num as u64
    }

    /// All partitions of `n`, in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        Self::all_bounded(n, n)
    }

    /// Partitions of `n` with at most `max_len` parts, decreasing lex order.
    pub fn all_bounded(n: usize, max_len: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(rem: usize, max_part: usize, max_len: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=rem.min(max_part)).rev() {
                cur.push(p);
                rec(rem - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        rec(n, n, max_len, &mut cur, &mut out);
        out
    }

    /// Multiplicities of the distinct parts, in order of decreasing part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            if i > 0 && self.parts[i - 1] == p {
                *out.last_mut().unwrap() += 1;
            } else {
                out.push(1);
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// A standard Young tableau, stored as the (row, column) cell of each entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    cells: Vec<(usize, usize)>,
}

impl Tableau {
    /// Cell `(row, col)` holding entry `k` (0-based).
    pub fn cell(&self, k: usize) -> (usize, usize) {
        self.cells[k]
    }

    /// Content `col − row` of entry `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.cells[k];
        c as i64 - r as i64
    }

    /// The tableau with entries `k` and `k+1` exchanged (may be non-standard).
    pub fn swapped(&self, k: usize) -> Tableau {
        let mut cells = self.cells.clone();
        cells.swap(k, k + 1);
        Tableau { cells }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let nrows = self.cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let mut rows = vec![Vec::new(); nrows];
        let mut cells: Vec<(usize, (usize, usize))> = self.cells.iter().copied().enumerate().collect();
        cells.sort_by_key(|&(_, (r, c))| (r, c));
        for (k, (r, _)) in cells {
            rows[r].push(k + 1);
        }
        rows
    }
}

/// All standard Young tableaux of shape `p`, in a fixed deterministic order
/// (last-letter order: tableaux are sorted by the row of `n`, then of `n−1`, …).
pub fn standard_tableaux(p: &Partition) -> Vec<Tableau> {
    fn rec(shape: &[usize], memo: &mut HashMap<Vec<usize>, Vec<Vec<(usize, usize)>>>) -> Vec<Vec<(usize, usize)>> {
        let size: usize = shape.iter().sum();
        if size == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = memo.get(shape) {
            return v.clone();
        }
        let mut out = Vec::new();
        for r in 0..shape.len() {
            let removable = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
            if !removable {
                continue;
            }
            let mut smaller = shape.to_vec();
            smaller[r] -= 1;
            for mut cells in rec(&smaller, memo) {
                cells.push((r, shape[r] - 1));
                out.push(cells);
            }
        }
        memo.insert(shape.to_vec(), out.clone());
        out
    }
    let mut memo = HashMap::new();
    rec(p.parts(), &mut memo)
        .into_iter()
        .map(|cells| Tableau { cells })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(part(&[3, 3, 2, 1, 1]).conjugate(), part(&[5, 3, 2]));
        assert_eq!(part(&[4]).conjugate(), part(&[1, 1, 1, 1]));
        assert_eq!(part(&[2, 1]).conjugate(), part(&[2, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn rejects_increasing_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part(&[2, 1]));
    }

    #[test]
    fn partition_counts_and_order() {
        let counts: Vec<usize> = (1..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
        let p3: Vec<Vec<usize>> = Partition::all(3).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p3, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(Partition::all_bounded(4, 2).len(), 3);
    }

    #[test]
    fn hook_dimension_matches_tableau_count() {
        for n in 1..=7 {
            for p in Partition::all(n) {
                assert_eq!(standard_tableaux(&p).len() as u64, p.dimension(), "{p}");
            }
        }
        assert_eq!(part(&[2, 1]).dimension(), 2);
        assert_eq!(part(&[3, 2]).dimension(), 5);
    }

    #[test]
    fn tableaux_are_standard() {
        for t in standard_tableaux(&part(&[3, 2, 1])) {
            let rows = t.rows();
            for row in &rows {
                assert!(row.windows(2).all(|w| w[0] < w[1]));
            }
            for r in 1..rows.len() {
                for c in 0..rows[r].len() {
                    assert!(rows[r - 1][c] < rows[r][c]);
                }
            }
        }
    }

    #[test]
    fn multiplicities_of_parts() {
        assert_eq!(part(&[3, 3, 2, 1, 1]).multiplicities(), vec![2, 1, 2]);
    }
}
