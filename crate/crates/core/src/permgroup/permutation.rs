use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::check_n;
use crate::error::{Error, Result};

use super::Partition;

/// A permutation of `{1..n}` in one-line notation.
///
/// Stored 0-based; displayed and serialized 1-based, e.g. `[2,1,3]`.
/// Composition follows functions: `(σ∘τ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidInput(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Self { images: zero_based })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.into_iter().enumerate().all(|(i, x)| i == x)
        });
        Self { images }
    }

    /// The adjacent transposition swapping `k` and `k+1` (0-based `k`).
    pub fn adjacent(n: usize, k: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(k, k + 1);
        p
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.images;
        (0..v.len())
            .map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count())
            .sum()
    }

    pub fn sign(&self) -> i64 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn cycle_type(&self) -> Partition {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            cycles.push(len);
        }
        Partition::from_unsorted(cycles)
    }

    /// The action on coordinate vectors: `(σ·z)_j = z_{σ⁻¹(j)}`.
    ///
    /// The same rule permutes exponent vectors, since `(z ↦ z^m)∘σ⁻¹` is the
    /// monomial with exponent `σ·m`.
    pub fn act<T: Clone>(&self, z: &[T]) -> Vec<T> {
        assert_eq!(z.len(), self.n());
        let mut out = z.to_vec();
        for (i, &target) in self.images.iter().enumerate() {
            out[target] = z[i].clone();
        }
        out
    }

    /// Position of this permutation in lexicographic order of one-line notation.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        let mut fact = crate::rational::factorial_u64(n.saturating_sub(1)) as usize;
        let mut used = vec![false; n];
        for (pos, &x) in self.images.iter().enumerate() {
            let smaller = (0..x).filter(|&y| !used[y]).count();
            rank += smaller * fact;
            used[x] = true;
            if pos + 1 < n {
                fact /= n - 1 - pos;
            }
        }
        rank
    }

    /// All permutations of `n` in lexicographic order.
    pub fn all(n: usize) -> Result<Vec<Permutation>> {
        check_n(n)?;
        Ok(Self::all_unchecked(n))
    }

    pub(crate) fn all_unchecked(n: usize) -> Vec<Permutation> {
        let mut out = Vec::with_capacity(crate::rational::factorial_u64(n) as usize);
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Self::from_zero_based(cur.clone()));
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }

    /// A reduced word `[k₁, …, k_r]` (0-based) with `self = s_{k₁} ∘ ⋯ ∘ s_{k_r}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Bubble-sort the one-line notation; each swap at position k is a
        // right multiplication by s_k.
        let mut v = self.images.clone();
        let mut word = Vec::new();
        let n = v.len();
        for pass in 0..n {
            for k in 0..n.saturating_sub(1 + pass) {
                if v[k] > v[k + 1] {
                    v.swap(k, k + 1);
                    word.push(k);
                }
            }
        }
        word.reverse();
        word
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// `I_n(k)` for `k = 0..=C(n,2)`: the number of permutations with `k` inversions.
///
/// Computed by enumerating 𝔖ₙ.
pub fn inversion_counts(n: usize) -> Result<Vec<u64>> {
    let perms = Permutation::all(n)?;
    let mut counts = vec![0u64; n * (n - 1) / 2 + 1];
    for p in &perms {
        counts[p.length()] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_one_line(v).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p(&[2, 1]).length(), 1);
        assert_eq!(p(&[3, 2, 1]).length(), 3);
    }

    #[test]
    fn inversion_count_examples() {
        assert_eq!(inversion_counts(2).unwrap(), vec![1, 1]);
        assert_eq!(inversion_counts(3).unwrap(), vec![1, 2, 2, 1]);
        let weighted: u64 = inversion_counts(3)
            .unwrap()
            .iter()
            .enumerate()
            .map(|(k, c)| k as u64 * c)
            .sum();
        assert_eq!(weighted, 9);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_one_line(&[1, 1, 2]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[1, 4, 2]).is_err());
    }

    #[test]
    fn compose_inverse_is_identity() {
        for s in Permutation::all(4).unwrap() {
            assert!(s.compose(&s.inverse()).is_identity());
            assert!(s.inverse().compose(&s).is_identity());
        }
    }

    #[test]
    fn action_is_a_left_action() {
        let z = vec!['a', 'b', 'c', 'd'];
        let all = Permutation::all(4).unwrap();
        for s in all.iter().step_by(5) {
            for t in all.iter().step_by(7) {
                assert_eq!(s.act(&t.act(&z)), s.compose(t).act(&z));
            }
        }
        // (σ·z)_j = z_{σ⁻¹(j)}
        let s = p(&[2, 3, 1]);
        assert_eq!(s.act(&['x', 'y', 'z']), vec!['z', 'x', 'y']);
    }

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for (i, s) in Permutation::all(5).unwrap().iter().enumerate() {
            assert_eq!(s.lex_rank(), i);
        }
    }

    #[test]
    fn reduced_words_multiply_back() {
        for s in Permutation::all(4).unwrap() {
            let word = s.reduced_word();
            assert_eq!(word.len(), s.length());
            let rebuilt = word
                .iter()
                .fold(Permutation::identity(4), |acc, &k| acc.compose(&Permutation::adjacent(4, k)));
            assert_eq!(rebuilt, s);
        }
    }

    #[test]
    fn cycle_types() {
        assert_eq!(p(&[2, 3, 1]).cycle_type().parts(), &[3]);
        assert_eq!(p(&[2, 1, 3]).cycle_type().parts(), &[2, 1]);
        assert_eq!(Permutation::identity(3).cycle_type().parts(), &[1, 1, 1]);
    }

    #[test]
    fn serde_uses_one_based_notation() {
        let s = p(&[2, 1, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,1,3]");
        let back: Permutation = serde_json::from_str("[2,1,3]").unwrap();
        assert_eq!(back, s);
    }
}
