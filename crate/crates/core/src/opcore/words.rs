use std::fmt;

use super::linalg::{CMat, C64};
use super::tuple::OperatorTuple;

/// `T_i` or `T_i*` (0-based `index`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub index: usize,
    pub adjoint: bool,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{}", self.index + 1, if self.adjoint { "*" } else { "" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Traces of all words of length `1..=max_len` in `{T_i, T_i*}`.
#[derive(Clone, Debug, PartialEq)]
pub struct WordInvariantVector {
    pub words: Vec<Word>,
    pub traces: Vec<C64>,
}

impl WordInvariantVector {
    /// Largest trace difference; `None` when the word lists differ.
    pub fn max_distance(&self, other: &Self) -> Option<f64> {
        if self.words != other.words {
            return None;
        }
        Some(
            self.traces
                .iter()
                .zip(&other.traces)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Word traces in canonical order: by length, then lexicographically with
/// `T_1 < … < T_n < T_1* < … < T_n*`.
pub fn word_trace_invariants(t: &OperatorTuple, max_len: usize) -> WordInvariantVector {
    let n = t.n();
    let alphabet: Vec<(Letter, CMat)> = (0..2 * n)
        .map(|k| {
            let letter = Letter {
                index: k % n,
                adjoint: k >= n,
            };
            let m = if letter.adjoint {
                t.op(letter.index).adjoint()
            } else {
                t.op(letter.index).clone()
            };
            (letter, m)
        })
        .collect();

    // Depth-first preorder visits each fixed length in lexicographic order;
    // a stable sort by length then yields the canonical order.
    let mut out: Vec<(Vec<Letter>, C64)> = Vec::new();
    let mut stack: Vec<Letter> = Vec::new();
    let id = CMat::identity(t.dim(), t.dim());
    descend(&alphabet, &id, max_len, &mut stack, &mut out);
    out.sort_by_key(|(w, _)| w.len());

    let (words, traces) = out.into_iter().map(|(w, tr)| (Word(w), tr)).unzip();
    WordInvariantVector { words, traces }
}

fn descend(
    alphabet: &[(Letter, CMat)],
    prefix: &CMat,
    remaining: usize,
    stack: &mut Vec<Letter>,
    out: &mut Vec<(Vec<Letter>, C64)>,
) {
    if remaining == 0 {
        return;
    }
    for (letter, m) in alphabet {
        let product = prefix * m;
        stack.push(*letter);
        out.push((stack.clone(), product.trace()));
        descend(alphabet, &product, remaining - 1, stack, out);
        stack.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::linalg::c;

    #[test]
    fn scalar_example() {
        let t = OperatorTuple::scalar(&[c(0.5, 0.0)]).unwrap();
        let w = word_trace_invariants(&t, 2);
        let names: Vec<String> = w.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["T1", "T1*", "T1·T1", "T1·T1*", "T1*·T1", "T1*·T1*"]);
        assert_eq!(w.traces[0], c(0.5, 0.0));
        assert_eq!(w.traces[3], c(0.25, 0.0));
    }

    #[test]
    fn negation_flips_single_letters() {
        let t = crate::opcore::random_commuting_tuple(3, 2, 1, 0.2);
        let a = word_trace_invariants(&t, 1);
        let b = word_trace_invariants(&t.neg(), 1);
        for (x, y) in a.traces.iter().zip(&b.traces) {
            assert!((x + y).norm() < 1e-15);
        }
    }

    #[test]
    fn count_matches_alphabet() {
        let t = crate::opcore::random_commuting_tuple(2, 3, 1, 0.2);
        // 6 + 36 + 216
        assert_eq!(word_trace_invariants(&t, 3).len(), 258);
    }
}
