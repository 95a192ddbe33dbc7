//! Stationary AF-algebra data: incidence matrices, Bratteli diagrams,
//! Perron–Frobenius eigenvalues and the dimension-group descriptor.

mod bratteli;
mod perron;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use bratteli::{emit_dot, stationary_diagram, BratteliDiagram};
pub use perron::{
    characteristic_polynomial, dimension_group, perron, DimensionGroupDescriptor, PerronData, QuadraticSurd,
    POWER_ITERATION_MAX, POWER_ITERATION_TOL,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AfError {
    #[error("MalformedMatrix: {0}")]
    MalformedMatrix(String),
    #[error("DeadVertex: {0} has no nonzero entry")]
    DeadVertex(String),
    #[error("NotPrimitive: no power up to {0} is strictly positive")]
    NotPrimitive(usize),
    #[error("NoConvergence: power iteration did not converge in {0} iterations")]
    NoConvergence(usize),
    #[error("InvalidLevels: a diagram needs at least one level")]
    InvalidLevels,
    #[error("ShapeMismatch: level {level} matrix is {rows}x{cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch { level: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
}

/// Square matrix with non-negative integer entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IncidenceMatrix {
    entries: Vec<Vec<u64>>,
}

impl IncidenceMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self, AfError> {
        let r = entries.len();
        if r == 0 {
            return Err(AfError::MalformedMatrix("empty matrix".into()));
        }
        if entries.iter().any(|row| row.len() != r) {
            return Err(AfError::MalformedMatrix(format!("matrix is not {r}x{r}")));
        }
        Ok(Self { entries })
    }

    /// Row-major `"2,1;1,1"`.
    pub fn parse(text: &str) -> Result<Self, AfError> {
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<u64>()
                            .map_err(|_| AfError::MalformedMatrix(format!("bad entry {:?}", x.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn check_no_dead_vertex(&self) -> Result<(), AfError> {
        let r = self.size();
        if let Some(i) = (0..r).find(|&i| self.entries[i].iter().all(|&x| x == 0)) {
            return Err(AfError::DeadVertex(format!("row {}", i + 1)));
        }
        if let Some(j) = (0..r).find(|&j| (0..r).all(|i| self.entries[i][j] == 0)) {
            return Err(AfError::DeadVertex(format!("column {}", j + 1)));
        }
        Ok(())
    }

    /// Some power `A^m`, `m ≤ (r-1)² + 1`, is strictly positive.
    pub fn is_primitive(&self) -> bool {
        let r = self.size();
        let pattern: Vec<Vec<bool>> = self.entries.iter().map(|row| row.iter().map(|&x| x > 0).collect()).collect();
        let mut power = pattern.clone();
        for _ in 0..wielandt_bound(r) {
            if power.iter().all(|row| row.iter().all(|&x| x)) {
                return true;
            }
            power = (0..r)
                .map(|i| (0..r).map(|j| (0..r).any(|k| power[i][k] && pattern[k][j])).collect())
                .collect();
        }
        false
    }
}

pub(crate) fn wielandt_bound(r: usize) -> usize {
    (r - 1) * (r - 1) + 1
}

impl fmt::Display for IncidenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_matrix() {
        let a = IncidenceMatrix::parse("2,1;1,1").unwrap();
        assert_eq!(a.entries(), &[vec![2, 1], vec![1, 1]]);
        assert_eq!(a.to_string(), "2,1;1,1");
        assert!(IncidenceMatrix::parse("2,1;1").is_err());
        assert!(IncidenceMatrix::parse("2,-1;1,1").is_err());
    }

    #[test]
    fn primitivity() {
        assert!(IncidenceMatrix::parse("2,1;1,1").unwrap().is_primitive());
        assert!(IncidenceMatrix::parse("0,1;1,1").unwrap().is_primitive());
        assert!(!IncidenceMatrix::parse("0,1;1,0").unwrap().is_primitive());
        assert!(!IncidenceMatrix::parse("2,0;0,3").unwrap().is_primitive());
        assert!(IncidenceMatrix::parse("1").unwrap().is_primitive());
        assert!(!IncidenceMatrix::parse("0").unwrap().is_primitive());
        // Wielandt matrix: exponent exactly (r-1)^2 + 1
        let w = IncidenceMatrix::parse("0,1,0;0,0,1;1,1,0").unwrap();
        assert!(w.is_primitive());
    }

    #[test]
    fn dead_vertices() {
        assert!(IncidenceMatrix::parse("1,0;1,0").unwrap().check_no_dead_vertex().is_err());
        assert!(IncidenceMatrix::parse("1,1;0,0").unwrap().check_no_dead_vertex().is_err());
        assert!(IncidenceMatrix::parse("2,1;1,1").unwrap().check_no_dead_vertex().is_ok());
    }
}
