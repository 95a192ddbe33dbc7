//! Braid words on `n` strands, their free reduction, type-I Markov
//! conjugation and the projection onto the symmetric group.
//!
//! Letters are signed generator indices: `k > 0` is `σ_k`, `k < 0` is
//! `σ_{|k|}⁻¹`. Permutations compose left to right: the first letter of a
//! word acts first. The Artin representation in [`crate::artin`] uses the
//! same convention.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("MalformedToken: {0:?} is not a braid generator")]
    MalformedToken(String),
    #[error("GeneratorOutOfRange: letter {letter} is not a generator of B{strands}")]
    GeneratorOutOfRange { letter: i64, strands: usize },
    #[error("StrandMismatch: B{left} vs B{right}")]
    StrandMismatch { left: usize, right: usize },
    #[error("InvalidStrandCount: a braid needs at least one strand")]
    InvalidStrandCount,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 {
            return Err(BraidError::InvalidStrandCount);
        }
        for &k in &letters {
            if k == 0 || k.unsigned_abs() as usize >= strands {
                return Err(BraidError::GeneratorOutOfRange {
                    letter: k as i64,
                    strands,
                });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, vec![])
    }

    /// `σ_1^p σ_2^{-q}` in `B_3`.
    pub fn sigma1_p_sigma2_neg_q(p: usize, q: usize) -> Self {
        let mut letters = vec![1; p];
        letters.extend(std::iter::repeat(-2).take(q));
        Self { strands: 3, letters }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|k| -k).collect(),
        }
    }

    /// Type-II Markov move `w ↦ w σ_n` into `B_{n+1}`. No invariance claims
    /// are attached to this constructor.
    pub fn stabilize(&self, positive: bool) -> BraidWord {
        let n = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.push(if positive { n } else { -n });
        BraidWord { strands: self.strands + 1, letters }
    }

    /// `Some((p, q))` when the word is literally `σ_1^p σ_2^{-q}` in `B_3`
    /// with `p, q ≥ 1`.
    pub fn as_sigma1_p_sigma2_neg_q(&self) -> Option<(usize, usize)> {
        if self.strands != 3 {
            return None;
        }
        let p = self.letters.iter().take_while(|&&k| k == 1).count();
        let q = self.letters[p..].iter().take_while(|&&k| k == -2).count();
        (p >= 1 && q >= 1 && p + q == self.letters.len()).then_some((p, q))
    }

    fn check_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn parse_token(token: &str) -> Result<i64, BraidError> {
    let malformed = || BraidError::MalformedToken(token.to_string());
    if let Some(rest) = token.strip_prefix('s').or_else(|| token.strip_prefix('S')) {
        let (index, exponent) = match rest.split_once('^') {
            Some((i, e)) => (i, e),
            None => (rest, "1"),
        };
        let index: i64 = index.parse().map_err(|_| malformed())?;
        if index <= 0 {
            return Err(malformed());
        }
        match exponent {
            "1" | "+1" => Ok(index),
            "-1" => Ok(-index),
            _ => Err(malformed()),
        }
    } else {
        token.parse::<i64>().map_err(|_| malformed())
    }
}

/// Parses whitespace/comma separated signed integers, or the alias form
/// `s1 s2^-1 ...`. Letters are kept in order and not reduced.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, BraidError> {
    if strands == 0 {
        return Err(BraidError::InvalidStrandCount);
    }
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',') {
        if token.is_empty() {
            continue;
        }
        let k = parse_token(token)?;
        if k == 0 || k.unsigned_abs() as usize >= strands {
            return Err(BraidError::GeneratorOutOfRange { letter: k, strands });
        }
        letters.push(k as i32);
    }
    Ok(BraidWord { strands, letters })
}

/// Deletes adjacent `(k, -k)` pairs until none remain (single stack pass).
pub fn free_reduce(w: &BraidWord) -> BraidWord {
    let mut out: Vec<i32> = Vec::with_capacity(w.letters.len());
    for &k in &w.letters {
        if out.last() == Some(&-k) {
            out.pop();
        } else {
            out.push(k);
        }
    }
    BraidWord { strands: w.strands, letters: out }
}

/// `freeReduce(a · w · a⁻¹)`.
pub fn markov_conjugate(w: &BraidWord, a: &BraidWord) -> Result<BraidWord, BraidError> {
    w.check_strands(a)?;
    let word = a.concat(w)?.concat(&a.inverse())?;
    Ok(free_reduce(&word))
}

/// Permutation of `{0..n-1}` stored as images; `apply(i) = images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// Builds from zero-based images; `None` if not a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// One-based images, as written in cycle notation.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }

    /// Sorted cycle lengths.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Projection `B_n → S_n`: each letter `±i` swaps strand positions `i, i+1`.
pub fn underlying_permutation(w: &BraidWord) -> Permutation {
    // Track where the strand starting at each position currently sits.
    let mut position: Vec<usize> = (0..w.strands).collect();
    let mut occupant: Vec<usize> = (0..w.strands).collect();
    for &k in &w.letters {
        let i = k.unsigned_abs() as usize - 1;
        let (a, b) = (occupant[i], occupant[i + 1]);
        occupant.swap(i, i + 1);
        position[a] = i + 1;
        position[b] = i;
    }
    Permutation { images: position }
}

/// Number of components of the closure; 1 means a knot.
pub fn closure_components(w: &BraidWord) -> usize {
    underlying_permutation(w).cycle_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_braid("1 1 1", 2).unwrap(), bw(2, &[1, 1, 1]));
        assert_eq!(parse_braid("s1 s2^-1", 3).unwrap(), bw(3, &[1, -2]));
        assert_eq!(parse_braid("1,-2, 2", 3).unwrap(), bw(3, &[1, -2, 2]));
        assert!(matches!(
            parse_braid("3", 3),
            Err(BraidError::GeneratorOutOfRange { letter: 3, strands: 3 })
        ));
        assert!(matches!(parse_braid("0", 3), Err(BraidError::GeneratorOutOfRange { .. })));
        assert!(matches!(parse_braid("1 x", 3), Err(BraidError::MalformedToken(_))));
        assert!(matches!(parse_braid("s1^2", 3), Err(BraidError::MalformedToken(_))));
        assert!(parse_braid("", 3).unwrap().is_empty());
    }

    #[test]
    fn free_reduce_examples() {
        assert!(free_reduce(&bw(2, &[1, -1])).is_empty());
        assert_eq!(free_reduce(&bw(3, &[1, 2, -2, 1])).letters(), &[1, 1]);
        assert_eq!(free_reduce(&bw(3, &[1, -2, 2, -1, 1])).letters(), &[1]);
    }

    #[test]
    fn markov_examples() {
        let w = bw(3, &[1, -2]);
        assert_eq!(markov_conjugate(&w, &bw(3, &[])).unwrap(), w);
        assert_eq!(markov_conjugate(&bw(3, &[1]), &bw(3, &[1])).unwrap().letters(), &[1]);
        assert_eq!(markov_conjugate(&w, &bw(3, &[2])).unwrap().letters(), &[2, 1, -2, -2]);
        assert!(matches!(
            markov_conjugate(&w, &bw(4, &[1])),
            Err(BraidError::StrandMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(underlying_permutation(&bw(3, &[])), Permutation::identity(3));
        assert_eq!(underlying_permutation(&bw(2, &[1, 1, 1])).images(), &[1, 0]);
        let p = underlying_permutation(&bw(3, &[1, -2]));
        assert_eq!(p.cycle_type(), vec![3]);
    }

    #[test]
    fn component_examples() {
        assert_eq!(closure_components(&bw(3, &[])), 3);
        assert_eq!(closure_components(&bw(2, &[1, 1, 1])), 1);
        assert_eq!(closure_components(&bw(2, &[1, 1])), 2);
    }

    #[test]
    fn stabilize_adds_strand() {
        let s = bw(2, &[1, 1, 1]).stabilize(false);
        assert_eq!(s.strands(), 3);
        assert_eq!(s.letters(), &[1, 1, 1, -2]);
    }

    #[test]
    fn detects_example_family() {
        assert_eq!(BraidWord::sigma1_p_sigma2_neg_q(3, 7).as_sigma1_p_sigma2_neg_q(), Some((3, 7)));
        assert_eq!(bw(3, &[1, -2, 1]).as_sigma1_p_sigma2_neg_q(), None);
        assert_eq!(bw(3, &[1]).as_sigma1_p_sigma2_neg_q(), None);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(bw(3, &[1, -2])).unwrap();
        assert_eq!(v, serde_json::json!({"strands": 3, "letters": [1, -2]}));
    }
}
