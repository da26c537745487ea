//! Multi-indices `α ∈ ℕⁿ` in graded lexicographic order.

use std::fmt;

use crate::opcore::C64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut a = vec![0; n];
        a[i] = 1;
        Self(a)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `|α| = α_1 + … + α_n`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn plus_unit(&self, i: usize) -> Self {
        let mut a = self.0.clone();
        a[i] += 1;
        Self(a)
    }

    /// `α − e_i` when `α_i ≥ 1`.
    pub fn minus_unit(&self, i: usize) -> Option<Self> {
        (self.0[i] > 0).then(|| {
            let mut a = self.0.clone();
            a[i] -= 1;
            Self(a)
        })
    }

    /// `α − β` when `β ≤ α` componentwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&a| a > 0)
    }

    /// `|α|! / (α_1! ⋯ α_n!)`, accumulated as a product of binomials.
    pub fn multinomial(&self) -> f64 {
        let mut total = 0u32;
        let mut acc = 1.0;
        for &a in &self.0 {
            total += a;
            acc *= binomial(total, a);
        }
        acc
    }

    /// `z^α`.
    pub fn monomial(&self, z: &[C64]) -> C64 {
        self.0
            .iter()
            .zip(z)
            .fold(C64::new(1.0, 0.0), |acc, (&a, &zi)| acc * zi.powu(a))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    let k = k.min(n - k);
    (1..=k).fold(1.0, |acc, j| acc * f64::from(n - k + j) / f64::from(j))
}

/// All `α ∈ ℕⁿ` with `|α| ≤ max_degree`: by degree, and within a degree in
/// decreasing lexicographic order, so `e_1` precedes `e_2`.
pub fn graded_indices(n: usize, max_degree: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for deg in 0..=max_degree as u32 {
        let mut current = vec![0; n];
        fill(&mut current, 0, deg, &mut out);
    }
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    let n = current.len();
    if pos + 1 == n {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// Number of `α ∈ ℕⁿ` with `|α| ≤ max_degree`, i.e. `C(max_degree + n, n)`.
pub fn count_indices(n: usize, max_degree: usize) -> usize {
    binomial((max_degree + n) as u32, n as u32).round() as usize
}
