use std::fmt;

use serde::Serialize;

use super::free::FreeWord;
use super::snf::invariant_factors;
use super::ArtinError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    #[serde(rename = "rank")]
    generator_count: usize,
    relators: Vec<FreeWord>,
}

impl GroupPresentation {
    /// Relators are already freely reduced by [`FreeWord`]; identity relators
    /// are dropped.
    pub fn new(generator_count: usize, relators: Vec<FreeWord>) -> Result<Self, ArtinError> {
        if let Some(w) = relators.iter().find(|w| w.rank() != generator_count) {
            return Err(ArtinError::RankMismatch { expected: generator_count, found: w.rank() });
        }
        let relators = relators.into_iter().filter(|w| !w.is_identity()).collect();
        Ok(Self { generator_count, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    /// Relator × generator exponent-sum matrix.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(FreeWord::exponent_sums).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("presentation serializes")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generator_count).map(|g| format!("x{g}")).collect();
        let rels: Vec<String> = self.relators.iter().map(|w| w.to_string()).collect();
        write!(f, "⟨{} | {}⟩", gens.join(","), rels.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![];
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H_1` of the presented group from the Smith normal form of the
/// exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    let factors = invariant_factors(&p.exponent_matrix());
    Abelianization {
        free_rank: p.generator_count - factors.len(),
        torsion: factors.into_iter().filter(|&d| d > 1).map(|d| d as u64).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        let p = GroupPresentation::new(1, vec![FreeWord::from_letters(1, &[1; 6]).unwrap()]).unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion, vec![6]);
        assert_eq!(ab.to_string(), "Z/6");
    }

    #[test]
    fn json_rendering() {
        let w = FreeWord::from_letters(2, &[-1, 2, 2]).unwrap();
        let p = GroupPresentation::new(2, vec![w, FreeWord::identity(2)]).unwrap();
        assert_eq!(p.to_json(), serde_json::json!({"rank": 2, "relators": [[[1, -1], [2, 2]]]}));
        assert_eq!(p.to_string(), "⟨x1,x2 | x1^-1 x2^2⟩");
    }

    #[test]
    fn rank_mismatch() {
        let w = FreeWord::from_letters(3, &[3]).unwrap();
        assert!(GroupPresentation::new(2, vec![w]).is_err());
    }
}
