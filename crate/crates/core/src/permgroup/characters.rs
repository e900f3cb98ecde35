use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::config::check_n;
use crate::error::Result;

use super::{Partition, Permutation};

/// Integer character table of 𝔖ₙ.
///
/// Rows are irreducible characters indexed by partitions in decreasing
/// lexicographic order, starting with the trivial character `(n)`. Columns are
/// conjugacy classes indexed by cycle type in increasing lexicographic order,
/// so column 0 is the identity class and holds the dimensions `χ_p(1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterTable {
    pub n: usize,
    pub partitions: Vec<Partition>,
    pub classes: Vec<Partition>,
    pub class_sizes: Vec<u64>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn row_of(&self, p: &Partition) -> Option<usize> {
        self.partitions.iter().position(|q| q == p)
    }

    pub fn class_of(&self, sigma: &Permutation) -> usize {
        let ct = sigma.cycle_type();
        self.classes
            .iter()
            .position(|c| *c == ct)
            .expect("every cycle type is a class")
    }

    /// `χ_p(σ)`.
    pub fn value(&self, p: &Partition, sigma: &Permutation) -> Option<i64> {
        Some(self.values[self.row_of(p)?][self.class_of(sigma)])
    }

    /// `χ_p(1)` for each row.
    pub fn dimensions(&self) -> Vec<i64> {
        self.values.iter().map(|row| row[0]).collect()
    }

    /// Largest |Σ_p χ_p(σ)χ_p(τ)| over pairs of distinct classes; 0 when the
    /// columns are orthogonal.
    pub fn column_orthogonality_defect(&self) -> i64 {
        let k = self.classes.len();
        let mut worst = 0;
        for a in 0..k {
            for b in (a + 1)..k {
                let s: i64 = self.values.iter().map(|row| row[a] * row[b]).sum();
                worst = worst.max(s.abs());
            }
        }
        worst
    }
}

/// Character table by the Murnaghan–Nakayama rule.
pub fn character_table(n: usize) -> Result<CharacterTable> {
    check_n(n)?;
    let partitions = Partition::all(n);
    let mut classes = partitions.clone();
    classes.reverse();
    let n_fact = crate::rational::factorial_u64(n);
    let class_sizes = classes.iter().map(|c| n_fact / centralizer_order(c)).collect();
    let mut memo = HashMap::new();
    let values = partitions
        .iter()
        .map(|p| classes.iter().map(|c| mn_character(p.parts(), c.parts(), &mut memo)).collect())
        .collect();
    Ok(CharacterTable {
        n,
        partitions,
        classes,
        class_sizes,
        values,
    })
}

/// `z_μ = Π_k k^{m_k} m_k!`, the order of the centralizer of cycle type μ.
fn centralizer_order(cycle_type: &Partition) -> u64 {
    let mut z = 1u64;
    let parts = cycle_type.parts();
    for (m, &k) in cycle_type.multiplicities().iter().zip(dedup(parts).iter()) {
        z *= (k as u64).pow(*m as u32) * crate::rational::factorial_u64(*m);
    }
    z
}

fn dedup(parts: &[usize]) -> Vec<usize> {
    let mut v = parts.to_vec();
    v.dedup();
    v
}

type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// χ^λ(μ) via rim-hook removal on the beta-set (abacus) of λ.
fn mn_character(lambda: &[usize], mu: &[usize], memo: &mut Memo) -> i64 {
    if mu.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta: BTreeSet<usize> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i).collect();
    let mut total = 0;
    for &b in &beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.range(b - r + 1..b).count();
        let sign = if height.is_multiple_of(2) { 1 } else { -1 };
        let mut moved = beta.clone();
        moved.remove(&b);
        moved.insert(b - r);
        let smaller = beta_to_partition(&moved);
        total += sign * mn_character(&smaller, rest, memo);
    }
    memo.insert(key, total);
    total
}

fn beta_to_partition(beta: &BTreeSet<usize>) -> Vec<usize> {
    let len = beta.len();
    beta.iter()
        .rev()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i))
        .filter(|&p| p > 0)
        .collect()
}
