//! Subgroups of small index up to conjugacy, by backtracking over coset
//! tables.
//!
//! Column `2g` of a table holds the action of `x_{g+1}`, column `2g+1` that
//! of its inverse. Coset `0` is the subgroup itself. Tables are built in
//! standard form: the first undefined entry (scanning cosets in order, then
//! generators) either points to an existing coset or opens the next new
//! one, so every subgroup of index `≤ maxIndex` is produced exactly once.

use serde::Serialize;

use super::free::FreeWord;
use super::presentation::GroupPresentation;
use super::ArtinError;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const MAX_INDEX_GUARD: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SubgroupRecord {
    pub index: usize,
    /// `index × 2n`, zero-based cosets.
    pub coset_table: Vec<Vec<usize>>,
    pub is_normal: bool,
    /// Number of distinct conjugates of the subgroup.
    pub conjugates: usize,
}

impl SubgroupRecord {
    /// Every relator traced from every coset returns to that coset.
    pub fn satisfies_relators(&self, p: &GroupPresentation) -> bool {
        p.relators()
            .iter()
            .all(|w| (0..self.index).all(|c| trace(&self.coset_table, c, w) == c))
    }

    /// Each generator column is a permutation and inverse columns invert it.
    pub fn is_consistent(&self) -> bool {
        let gens = self.coset_table.first().map_or(0, |r| r.len() / 2);
        (0..gens).all(|g| {
            let mut seen = vec![false; self.index];
            (0..self.index).all(|c| {
                let d = self.coset_table[c][2 * g];
                let fresh = d < self.index && !seen[d];
                if fresh {
                    seen[d] = true;
                }
                fresh && self.coset_table[d][2 * g + 1] == c
            })
        })
    }
}

fn column(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

fn trace(table: &[Vec<usize>], start: usize, w: &FreeWord) -> usize {
    w.letters().iter().fold(start, |c, &l| table[c][column(l)])
}

type Partial = Vec<Vec<Option<usize>>>;

struct Search {
    relators: Vec<Vec<usize>>,
    columns: usize,
    max_index: usize,
    budget: u64,
    nodes: u64,
    found: Vec<Vec<Vec<usize>>>,
}

fn inverse_column(col: usize) -> usize {
    col ^ 1
}

impl Search {
    fn assign(table: &mut Partial, c: usize, col: usize, d: usize) -> bool {
        match (table[c][col], table[d][inverse_column(col)]) {
            (None, None) => {
                table[c][col] = Some(d);
                table[d][inverse_column(col)] = Some(c);
                true
            }
            (Some(x), Some(y)) => x == d && y == c,
            _ => false,
        }
    }

    /// Scans every relator from every coset, filling single-gap deductions.
    /// Returns false on a contradiction.
    fn deduce(&self, table: &mut Partial, count: usize) -> bool {
        loop {
            let mut changed = false;
            for rel in &self.relators {
                for start in 0..count {
                    let mut f = start;
                    let mut i = 0;
                    while i < rel.len() {
                        match table[f][rel[i]] {
                            Some(n) => f = n,
                            None => break,
                        }
                        i += 1;
                    }
                    if i == rel.len() {
                        if f != start {
                            return false;
                        }
                        continue;
                    }
                    let mut b = start;
                    let mut j = rel.len();
                    while j > i {
                        match table[b][inverse_column(rel[j - 1])] {
                            Some(n) => b = n,
                            None => break,
                        }
                        j -= 1;
                    }
                    if j == i {
                        // forward and backward scans met between letters
                        if f != b {
                            return false;
                        }
                        continue;
                    }
                    if j == i + 1 {
                        if !Self::assign(table, f, rel[i], b) {
                            return false;
                        }
                        changed = true;
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn run(&mut self, table: Partial, count: usize) -> Result<(), ArtinError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ArtinError::BudgetExceeded { budget: self.budget });
        }
        let next = (0..count)
            .flat_map(|c| (0..self.columns).step_by(2).map(move |col| (c, col)))
            .find(|&(c, col)| table[c][col].is_none());
        let Some((c, col)) = next else {
            let complete = table[..count]
                .iter()
                .map(|row| row.iter().map(|e| e.expect("complete table")).collect())
                .collect();
            self.found.push(complete);
            return Ok(());
        };
        for d in 0..=count.min(self.max_index - 1) {
            let new_count = if d == count { count + 1 } else { count };
            if d < count && table[d][inverse_column(col)].is_some() {
                continue;
            }
            let mut t = table.clone();
            if !Self::assign(&mut t, c, col, d) || !self.deduce(&mut t, new_count) {
                continue;
            }
            self.run(t, new_count)?;
        }
        Ok(())
    }
}

/// Renumbers a complete table so that `base` becomes coset 0, using the same
/// scan order as the enumeration.
fn standardize(table: &[Vec<usize>], base: usize) -> Vec<Vec<usize>> {
    let n = table.len();
    let cols = table[0].len();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![base];
    label[base] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for col in (0..cols).step_by(2) {
            let d = table[c][col];
            if label[d] == usize::MAX {
                label[d] = order.len();
                order.push(d);
            }
        }
        k += 1;
    }
    order
        .iter()
        .map(|&c| table[c].iter().map(|&d| label[d]).collect())
        .collect()
}

pub fn low_index_subgroups(p: &GroupPresentation, max_index: usize) -> Result<Vec<SubgroupRecord>, ArtinError> {
    low_index_subgroups_with_budget(p, max_index, DEFAULT_NODE_BUDGET, MAX_INDEX_GUARD)
}

/// All subgroups of index `≤ max_index` up to conjugacy, sorted by index and
/// then coset table.
pub fn low_index_subgroups_with_budget(
    p: &GroupPresentation,
    max_index: usize,
    budget: u64,
    index_guard: usize,
) -> Result<Vec<SubgroupRecord>, ArtinError> {
    if max_index > index_guard {
        return Err(ArtinError::IndexTooLarge { requested: max_index, guard: index_guard });
    }
    if max_index == 0 {
        return Ok(vec![]);
    }
    let columns = 2 * p.generator_count();
    let mut search = Search {
        relators: p
            .relators()
            .iter()
            .map(|w| w.letters().iter().map(|&l| column(l)).collect())
            .collect(),
        columns,
        max_index,
        budget,
        nodes: 0,
        found: vec![],
    };
    let mut start: Partial = vec![vec![None; columns]; max_index];
    if !search.deduce(&mut start, 1) {
        return Ok(vec![]);
    }
    search.run(start, 1)?;

    let mut records = vec![];
    for table in std::mem::take(&mut search.found) {
        let mut forms: Vec<Vec<Vec<usize>>> = (0..table.len()).map(|c| standardize(&table, c)).collect();
        if forms.iter().any(|f| f < &table) {
            continue;
        }
        let is_normal = forms.iter().all(|f| f == &table);
        forms.sort();
        forms.dedup();
        records.push(SubgroupRecord {
            index: table.len(),
            coset_table: table,
            is_normal,
            conjugates: forms.len(),
        });
    }
    records.sort();
    Ok(records)
}
