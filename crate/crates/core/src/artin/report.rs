//! Normal subgroups of the link group beside ideals of the braid's field,
//! index by index. Both columns are counted independently; nothing ties
//! them together.

use std::fmt;

use serde::Serialize;

use super::{link_group_presentation, low_index_subgroups, SubgroupRecord};
use crate::braid::BraidWord;
use crate::functor::{field_of, FunctorError};
use crate::numfield::ideals_of_norm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceRow {
    pub m: usize,
    pub normal_subgroups: usize,
    /// Subgroups of index `m` up to conjugacy, normal or not.
    pub subgroup_classes: usize,
    pub ideals: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub braid: BraidWord,
    pub field: String,
    pub rows: Vec<CorrespondenceRow>,
    /// Every enumerated coset table passed relator tracing.
    pub tables_verified: bool,
}

impl CorrespondenceReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "braid": self.braid.to_string(),
            "field": self.field,
            "tables_verified": self.tables_verified,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "m": r.m,
                "normal_subgroups": r.normal_subgroups,
                "subgroup_classes": r.subgroup_classes,
                "ideals_of_norm": r.ideals,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CorrespondenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "braid [{}], field {}", self.braid, self.field)?;
        writeln!(f, "{:>3}  {:>8}  {:>8}  {:>6}", "m", "normal", "classes", "ideals")?;
        for r in &self.rows {
            writeln!(f, "{:>3}  {:>8}  {:>8}  {:>6}", r.m, r.normal_subgroups, r.subgroup_classes, r.ideals)?;
        }
        Ok(())
    }
}

pub fn correspondence_report(b: &BraidWord, max_index: usize) -> Result<CorrespondenceReport, FunctorError> {
    let inv = field_of(b)?;
    let p = link_group_presentation(b);
    let subs: Vec<SubgroupRecord> = low_index_subgroups(&p, max_index).map_err(FunctorError::Artin)?;
    let rows = (1..=max_index)
        .map(|m| {
            let at: Vec<&SubgroupRecord> = subs.iter().filter(|s| s.index == m).collect();
            CorrespondenceRow {
                m,
                normal_subgroups: at.iter().filter(|s| s.is_normal).count(),
                subgroup_classes: at.len(),
                ideals: ideals_of_norm(&inv.field, m as u64),
            }
        })
        .collect();
    Ok(CorrespondenceReport {
        braid: b.clone(),
        field: inv.field.name(),
        rows,
        tables_verified: subs.iter().all(|s| s.is_consistent() && s.satisfies_relators(&p)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_rows_for_the_figure_eight_family() {
        let b = BraidWord::new(3, vec![1, -2]).unwrap();
        let r = correspondence_report(&b, 4).unwrap();
        assert_eq!(r.rows.len(), 4);
        assert_eq!(r.field, "Q(sqrt(5))");
        assert!(r.tables_verified);
        let ideals: Vec<u64> = r.rows.iter().map(|r| r.ideals).collect();
        assert_eq!(ideals, vec![1, 0, 0, 1]);
        assert_eq!(r.rows[0].normal_subgroups, 1);
    }

    #[test]
    fn identity_braid_has_no_field() {
        let b = BraidWord::identity(3).unwrap();
        assert_eq!(correspondence_report(&b, 4), Err(FunctorError::NonHyperbolic { trace: 2 }));
    }

    #[test]
    fn three_rows() {
        let b = BraidWord::new(3, vec![1, 1, 1, -2]).unwrap();
        assert_eq!(correspondence_report(&b, 3).unwrap().rows.len(), 3);
    }
}
