use std::fmt;

use serde::Serialize;

use super::ArtinError;

/// Freely reduced word in the free group on `x1..xn`.
///
/// Stored as signed letters (`g` for `x_g`, `-g` for `x_g⁻¹`); the syllable
/// view merges runs of the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

fn reduce_into(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        Self { rank, letters: vec![] }
    }

    pub fn generator(rank: usize, g: usize) -> Self {
        debug_assert!(g >= 1 && g <= rank);
        Self { rank, letters: vec![g as i32] }
    }

    /// Builds from signed letters, freely reducing.
    pub fn from_letters(rank: usize, letters: &[i32]) -> Result<Self, ArtinError> {
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(ArtinError::IndexOutOfRange { index: l.unsigned_abs() as usize, rank });
            }
            reduce_into(&mut out, l);
        }
        Ok(Self { rank, letters: out })
    }

    pub fn from_syllables(rank: usize, syllables: &[(usize, i32)]) -> Result<Self, ArtinError> {
        let mut letters = vec![];
        for &(g, e) in syllables {
            let l = if e > 0 { g as i32 } else { -(g as i32) };
            letters.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        Self::from_letters(rank, &letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(generatorIndex, exponent)` pairs; adjacent syllables have distinct
    /// generators.
    pub fn syllables(&self) -> Vec<(usize, i32)> {
        let mut out: Vec<(usize, i32)> = vec![];
        for &l in &self.letters {
            let g = l.unsigned_abs() as usize;
            let e = l.signum();
            match out.last_mut() {
                Some((h, f)) if *h == g => *f += e,
                _ => out.push((g, e)),
            }
        }
        out
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.letters.clone();
        for &l in &other.letters {
            reduce_into(&mut out, l);
        }
        FreeWord { rank: self.rank, letters: out }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Exponent sum of each generator, indexed from 0.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank];
        for &l in &self.letters {
            sums[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        sums
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables()
            .into_iter()
            .map(|(g, e)| if e == 1 { format!("x{g}") } else { format!("x{g}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.syllables().serialize(s)
    }
}

/// Endomorphism of the free group given by generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    rank: usize,
    images: Vec<FreeWord>,
}

impl FreeAutomorphism {
    pub fn identity(rank: usize) -> Self {
        Self {
            rank,
            images: (1..=rank).map(|g| FreeWord::generator(rank, g)).collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> Result<Self, ArtinError> {
        let rank = images.len();
        if let Some(w) = images.iter().find(|w| w.rank != rank) {
            return Err(ArtinError::RankMismatch { expected: rank, found: w.rank });
        }
        Ok(Self { rank, images })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &FreeWord {
        &self.images[g - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters == [(i + 1) as i32])
    }

    /// Substitutes generator images into `w`.
    pub fn apply(&self, w: &FreeWord) -> FreeWord {
        let mut out = Vec::new();
        for &l in &w.letters {
            let image = &self.images[l.unsigned_abs() as usize - 1].letters;
            if l > 0 {
                for &m in image {
                    reduce_into(&mut out, m);
                }
            } else {
                for &m in image.iter().rev() {
                    reduce_into(&mut out, -m);
                }
            }
        }
        FreeWord { rank: self.rank, letters: out }
    }

    /// `self` first, then `next`: `x ↦ next(self(x))`.
    pub fn then(&self, next: &FreeAutomorphism) -> FreeAutomorphism {
        FreeAutomorphism {
            rank: self.rank,
            images: self.images.iter().map(|w| next.apply(w)).collect(),
        }
    }
}

impl fmt::Display for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("x{} -> {}", i + 1, w))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syllables_merge_runs() {
        let w = FreeWord::from_letters(3, &[1, 1, -2, 3, -3, -2, 1]).unwrap();
        assert_eq!(w.syllables(), vec![(1, 2), (2, -2), (1, 1)]);
        assert_eq!(w.to_string(), "x1^2 x2^-2 x1");
    }

    #[test]
    fn reduction_is_idempotent() {
        let w = FreeWord::from_letters(2, &[1, 2, -2, -1, 2]).unwrap();
        assert_eq!(w.letters(), &[2]);
        assert_eq!(FreeWord::from_letters(2, w.letters()).unwrap(), w);
    }

    #[test]
    fn inverse_cancels() {
        let w = FreeWord::from_letters(3, &[1, -3, 2, 2]).unwrap();
        assert!(w.mul(&w.inverse()).is_identity());
        assert!(w.inverse().mul(&w).is_identity());
    }

    #[test]
    fn out_of_range_letter() {
        assert!(FreeWord::from_letters(2, &[3]).is_err());
        assert!(FreeWord::from_letters(2, &[0]).is_err());
    }
}
