use crate::error::{Error, Result};

/// A bijection of `0..n` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn new(table: Vec<usize>) -> Result<Self> {
        let n = table.len();
        let mut seen = vec![false; n];
        for (i, &t) in table.iter().enumerate() {
            if t >= n {
                return Err(Error::NotBijective(format!("image {t} of {i} is outside 0..{n}")));
            }
            if std::mem::replace(&mut seen[t], true) {
                return Err(Error::NotBijective(format!("{t} is hit twice")));
            }
        }
        Ok(Perm(table))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &t) in self.0.iter().enumerate() {
            inv[t] = i;
        }
        Perm(inv)
    }

    pub fn pow(&self, m: u32) -> Perm {
        let mut acc = Perm::identity(self.len());
        for _ in 0..m {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// Concatenation acting on the disjoint union `0..n ⊔ 0..m`.
    pub fn concat(&self, other: &Perm) -> Perm {
        let n = self.len();
        Perm(self.0.iter().copied().chain(other.0.iter().map(|&t| t + n)).collect())
    }

    /// Restriction to the first `n` points; they must be invariant.
    pub fn prefix(&self, n: usize) -> Perm {
        debug_assert!(self.0[..n].iter().all(|&t| t < n));
        Perm(self.0[..n].to_vec())
    }

    /// Order of the permutation.
    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut order = 1usize;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }
}
