//! Labelings: bijections from the vertices `0..n` to the labels `1..=n`,
//! with word parsing/rendering and lexicographic (Lehmer) ranking.

use crate::error::{Error, Result};

/// A bijection between vertices `0..n` and labels `1..=n`.
///
/// Both directions are stored: `forward[v]` is the label on vertex `v`,
/// `inverse[l - 1]` is the vertex carrying label `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labeling {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Labeling {
    /// Wraps a forward word, validating it is a permutation of `1..=n`.
    pub fn new(forward: Vec<usize>) -> Result<Labeling> {
        let n = forward.len();
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut inverse = vec![usize::MAX; n];
        for (v, &label) in forward.iter().enumerate() {
            if !(1..=n).contains(&label) {
                return Err(Error::LabelOutOfRange { label, n });
            }
            if inverse[label - 1] != usize::MAX {
                return Err(Error::DuplicateLabel(label));
            }
            inverse[label - 1] = v;
        }
        Ok(Labeling { forward, inverse })
    }

    /// The labeling with `forward[v] = v + 1`.
    pub fn identity(n: usize) -> Labeling {
        Labeling {
            forward: (1..=n).collect(),
            inverse: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.forward.len()
    }

    /// The label on vertex `v`.
    pub fn label(&self, v: usize) -> usize {
        self.forward[v]
    }

    /// The vertex carrying `label`.
    pub fn vertex_with(&self, label: usize) -> usize {
        self.inverse[label - 1]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    /// The inverse bijection, reread as a labeling: vertex `w` of the
    /// target side gets label `v + 1` where `v` is its preimage.
    pub fn inverted(&self) -> Labeling {
        Labeling::new(self.inverse.iter().map(|&v| v + 1).collect())
            .expect("inverse of a bijection is a bijection")
    }

    /// Renders the word `forward[0] forward[1] ...`: concatenated digits
    /// for `n <= 9`, comma-separated otherwise.
    pub fn word(&self) -> String {
        if self.n() <= 9 {
            self.forward.iter().map(|l| l.to_string()).collect()
        } else {
            let parts: Vec<String> = self.forward.iter().map(|l| l.to_string()).collect();
            parts.join(",")
        }
    }

    /// Parses a word in either digit form (`45123`, only for `n <= 9`) or
    /// comma form (`10,1,2,...`).
    pub fn parse(text: &str, n: usize) -> Result<Labeling> {
        let text = text.trim();
        let forward: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::LabelingSyntax(format!("bad label {t:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            if n > 9 {
                return Err(Error::LabelingSyntax(format!(
                    "n = {n} > 9 requires the comma-separated form"
                )));
            }
            text.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::LabelingSyntax(format!("bad digit {ch:?}")))
                })
                .collect::<Result<_>>()?
        };
        if forward.len() != n {
            return Err(Error::WrongLength {
                expected: n,
                got: forward.len(),
            });
        }
        Labeling::new(forward)
    }

    /// Lexicographic rank of the forward word among all `n!` labelings.
    pub fn rank(&self) -> u64 {
        let n = self.n();
        let mut rank = 0u64;
        for i in 0..n {
            let smaller_later = self.forward[i + 1..]
                .iter()
                .filter(|&&x| x < self.forward[i])
                .count() as u64;
            rank += smaller_later * factorial(n - 1 - i);
        }
        rank
    }

    /// Inverse of [`Labeling::rank`].
    pub fn from_rank(n: usize, mut rank: u64) -> Labeling {
        assert!(n >= 1, "labelings need at least one vertex");
        assert!(rank < factorial(n), "rank {rank} out of range for n = {n}");
        let mut available: Vec<usize> = (1..=n).collect();
        let mut forward = Vec::with_capacity(n);
        for i in 0..n {
            let f = factorial(n - 1 - i);
            let idx = (rank / f) as usize;
            rank %= f;
            forward.push(available.remove(idx));
        }
        Labeling::new(forward).expect("unranking yields a permutation")
    }

    /// Swaps labels `i` and `j` (wherever they sit), unconditionally.
    pub(crate) fn swap_labels(&mut self, i: usize, j: usize) {
        let u = self.inverse[i - 1];
        let v = self.inverse[j - 1];
        self.forward[u] = j;
        self.forward[v] = i;
        self.inverse.swap(i - 1, j - 1);
    }

    /// Swaps the labels sitting on vertices `u` and `v`, unconditionally.
    pub(crate) fn swap_vertices(&mut self, u: usize, v: usize) {
        let a = self.forward[u];
        let b = self.forward[v];
        self.forward[u] = b;
        self.forward[v] = a;
        self.inverse[a - 1] = v;
        self.inverse[b - 1] = u;
    }

    /// Adds `k` to every label modulo `n`, normalized into `1..=n`.
    pub(crate) fn shift_labels(&mut self, k: i64) {
        let n = self.n() as i64;
        let k = k.rem_euclid(n);
        for v in 0..self.forward.len() {
            let label = (self.forward[v] as i64 - 1 + k).rem_euclid(n) as usize + 1;
            self.forward[v] = label;
            self.inverse[label - 1] = v;
        }
    }
}

impl std::fmt::Display for Labeling {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.word())
    }
}

/// `n!` as a `u64`; callers keep `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// All `n!` labelings in rank order.
pub fn all_labelings(n: usize) -> impl Iterator<Item = Labeling> {
    (0..factorial(n)).map(move |r| Labeling::from_rank(n, r))
}
