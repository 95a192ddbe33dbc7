//! Artin representation `B_n → Aut(F_n)` and the link-group presentation of
//! a braid closure, with abelianization and low-index subgroup enumeration.

mod free;
mod low_index;
mod presentation;
mod report;
pub mod snf;

use thiserror::Error;

pub use free::{FreeAutomorphism, FreeWord};
pub use low_index::{low_index_subgroups, low_index_subgroups_with_budget, SubgroupRecord, DEFAULT_NODE_BUDGET, MAX_INDEX_GUARD};
pub use presentation::{abelianization, Abelianization, GroupPresentation};
pub use report::{correspondence_report, CorrespondenceReport, CorrespondenceRow};

use crate::braid::BraidWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("IndexOutOfRange: generator {index} not available in rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("RankMismatch: expected rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("BudgetExceeded: coset enumeration visited more than {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("IndexTooLarge: max index {requested} exceeds guard {guard}")]
    IndexTooLarge { requested: usize, guard: usize },
}

/// Automorphism of `F_n` for `σ_i^{sign}`.
///
/// `σ_i`: `x_i ↦ x_i x_{i+1} x_i⁻¹`, `x_{i+1} ↦ x_i`.
/// `σ_i⁻¹`: `x_i ↦ x_{i+1}`, `x_{i+1} ↦ x_{i+1}⁻¹ x_i x_{i+1}`.
pub fn artin_generator(i: usize, positive: bool, strands: usize) -> Result<FreeAutomorphism, ArtinError> {
    if i == 0 || i >= strands {
        return Err(ArtinError::IndexOutOfRange { index: i, rank: strands });
    }
    let mut images: Vec<FreeWord> = (1..=strands).map(|g| FreeWord::generator(strands, g)).collect();
    let (a, b) = (i as i32, i as i32 + 1);
    if positive {
        images[i - 1] = FreeWord::from_letters(strands, &[a, b, -a])?;
        images[i] = FreeWord::generator(strands, i);
    } else {
        images[i - 1] = FreeWord::generator(strands, i + 1);
        images[i] = FreeWord::from_letters(strands, &[-b, a, b])?;
    }
    FreeAutomorphism::from_images(images)
}

/// `r(b)`: the first letter of `b` acts first.
pub fn artin_rep(b: &BraidWord) -> FreeAutomorphism {
    let n = b.strands();
    b.letters().iter().fold(FreeAutomorphism::identity(n), |acc, &k| {
        let g = artin_generator(k.unsigned_abs() as usize, k > 0, n)
            .expect("braid letters are validated on construction");
        acc.then(&g)
    })
}

/// `⟨x_1..x_n | x_i⁻¹ r(b)(x_i)⟩` with identity relators dropped.
pub fn link_group_presentation(b: &BraidWord) -> GroupPresentation {
    let n = b.strands();
    let r = artin_rep(b);
    let relators = (1..=n)
        .map(|g| FreeWord::generator(n, g).inverse().mul(r.image(g)))
        .filter(|w| !w.is_identity())
        .collect();
    GroupPresentation::new(n, relators).expect("relators share the braid rank")
}
