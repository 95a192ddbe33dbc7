use std::fmt::Write;

use serde::Serialize;

use super::{AfError, IncidenceMatrix};

/// Leveled multigraph. `edges[l][i][j]` is the number of edges from vertex
/// `i` on level `l` to vertex `j` on level `l + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BratteliDiagram {
    levels: Vec<usize>,
    edges: Vec<Vec<Vec<u64>>>,
}

impl BratteliDiagram {
    pub fn new(levels: Vec<usize>, edges: Vec<Vec<Vec<u64>>>) -> Result<Self, AfError> {
        if levels.is_empty() || edges.len() + 1 != levels.len() {
            return Err(AfError::InvalidLevels);
        }
        for (l, m) in edges.iter().enumerate() {
            let cols = m.first().map_or(0, Vec::len);
            if m.len() != levels[l] || m.iter().any(|row| row.len() != levels[l + 1]) {
                return Err(AfError::ShapeMismatch {
                    level: l,
                    rows: m.len(),
                    cols,
                    want_rows: levels[l],
                    want_cols: levels[l + 1],
                });
            }
        }
        Ok(Self { levels, edges })
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn level_matrices(&self) -> &[Vec<Vec<u64>>] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().sum()
    }

    /// `Some(A)` when every level matrix is the same square matrix.
    pub fn stationary_matrix(&self) -> Option<IncidenceMatrix> {
        let first = self.edges.first()?;
        if self.edges.iter().all(|m| m == first) {
            IncidenceMatrix::new(first.clone()).ok()
        } else {
            None
        }
    }
}

/// `levels` vertex levels joined by `levels - 1` copies of `A`.
pub fn stationary_diagram(a: &IncidenceMatrix, levels: usize) -> Result<BratteliDiagram, AfError> {
    if levels == 0 {
        return Err(AfError::InvalidLevels);
    }
    a.check_no_dead_vertex()?;
    BratteliDiagram::new(vec![a.size(); levels], vec![a.entries().to_vec(); levels - 1])
}

/// Graphviz DOT, one `rank=same` subgraph per level; an edge of
/// multiplicity `m` is drawn once with label `m`.
pub fn emit_dot(d: &BratteliDiagram) -> String {
    let mut out = String::new();
    writeln!(out, "digraph bratteli {{").unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  node [shape=circle, label=\"\", width=0.15];").unwrap();
    for (l, &count) in d.levels.iter().enumerate() {
        let nodes: Vec<String> = (0..count).map(|i| format!("v{l}_{i};")).collect();
        writeln!(out, "  subgraph level_{l} {{ rank=same; {} }}", nodes.join(" ")).unwrap();
    }
    for (l, m) in d.edges.iter().enumerate() {
        for (i, row) in m.iter().enumerate() {
            for (j, &mult) in row.iter().enumerate() {
                if mult > 0 {
                    writeln!(out, "  v{l}_{i} -> v{}_{j} [label=\"{mult}\"];", l + 1).unwrap();
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
