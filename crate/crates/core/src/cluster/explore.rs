use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write;

use serde::Serialize;

use super::seed::{mutate_seed, CanonicalSeed, Seed};
use super::ClusterError;
use crate::af::BratteliDiagram;

pub const MAX_TREE_DEPTH: usize = 6;
pub const DEFAULT_TREE_BUDGET: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedCount {
    pub count: usize,
    pub finite_type: bool,
}

/// Breadth-first closure under mutation, deduplicated by canonical form.
/// Stops with `finite_type = false` once more than `max_seeds` distinct
/// seeds would be needed.
pub fn enumerate_seeds(s0: &Seed, max_seeds: usize) -> Result<SeedCount, ClusterError> {
    let max_seeds = max_seeds.max(1);
    let mut seen: HashSet<CanonicalSeed> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s0.canonical());
    queue.push_back(s0.clone());
    while let Some(s) = queue.pop_front() {
        for k in 1..=s.rank() {
            let next = mutate_seed(&s, k)?;
            if seen.insert(next.canonical()) {
                if seen.len() > max_seeds {
                    return Ok(SeedCount { count: max_seeds, finite_type: false });
                }
                queue.push_back(next);
            }
        }
    }
    Ok(SeedCount { count: seen.len(), finite_type: true })
}

#[derive(Debug, Clone)]
pub struct TreeVertex {
    pub seed: Seed,
    /// Index into the previous level.
    pub parent: Option<usize>,
    /// Mutation direction (1-based) from the parent.
    pub direction: Option<usize>,
    /// Identifier of the seed up to relabeling; equal ids mean equal seeds.
    pub seed_id: usize,
}

/// Leveled mutation tree: level `l` holds the seeds reached by `l`
/// mutations.
#[derive(Debug, Clone)]
pub struct MutationTree {
    levels: Vec<Vec<TreeVertex>>,
    distinct_seeds: usize,
}

impl MutationTree {
    pub fn levels(&self) -> &[Vec<TreeVertex>] {
        &self.levels
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    /// Number of distinct seeds (up to relabeling) among all vertices.
    pub fn distinct_seeds(&self) -> usize {
        self.distinct_seeds
    }

    /// Some vertex carries a seed already present on an earlier level.
    pub fn revisits_seeds(&self) -> bool {
        let mut earlier: HashSet<usize> = HashSet::new();
        for level in &self.levels {
            if level.iter().any(|v| earlier.contains(&v.seed_id)) {
                return true;
            }
            earlier.extend(level.iter().map(|v| v.seed_id));
        }
        false
    }

    pub fn to_bratteli(&self) -> BratteliDiagram {
        let sizes = self.level_sizes();
        let edges = (1..self.levels.len())
            .map(|l| {
                let mut m = vec![vec![0u64; sizes[l]]; sizes[l - 1]];
                for (j, v) in self.levels[l].iter().enumerate() {
                    m[v.parent.expect("non-root vertex has a parent")][j] += 1;
                }
                m
            })
            .collect();
        BratteliDiagram::new(sizes, edges).expect("tree levels are consistent")
    }

    /// DOT with one `rank=same` subgraph per level and edges labeled by the
    /// mutation direction.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph mutation_tree {{").unwrap();
        writeln!(out, "  node [shape=circle, width=0.3];").unwrap();
        for (l, level) in self.levels.iter().enumerate() {
            let nodes: Vec<String> = level
                .iter()
                .enumerate()
                .map(|(i, v)| format!("v{l}_{i} [label=\"s{}\"];", v.seed_id))
                .collect();
            writeln!(out, "  subgraph level_{l} {{ rank=same; {} }}", nodes.join(" ")).unwrap();
        }
        for (l, level) in self.levels.iter().enumerate().skip(1) {
            for (i, v) in level.iter().enumerate() {
                writeln!(
                    out,
                    "  v{}_{} -> v{l}_{i} [label=\"mu{}\"];",
                    l - 1,
                    v.parent.unwrap(),
                    v.direction.unwrap()
                )
                .unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn mutation_tree(s0: &Seed, depth: usize, prune_backtrack: bool) -> Result<MutationTree, ClusterError> {
    mutation_tree_with_budget(s0, depth, prune_backtrack, DEFAULT_TREE_BUDGET)
}

/// Children of one vertex that carry identical seeds are merged; vertices
/// with different parents are kept apart, so without pruning the tree is
/// the full `rank`-ary mutation tree.
pub fn mutation_tree_with_budget(
    s0: &Seed,
    depth: usize,
    prune_backtrack: bool,
    budget: usize,
) -> Result<MutationTree, ClusterError> {
    if depth > MAX_TREE_DEPTH {
        return Err(ClusterError::BudgetExceeded(format!("depth {depth} exceeds {MAX_TREE_DEPTH}")));
    }
    let mut ids: HashMap<CanonicalSeed, usize> = HashMap::new();
    let mut id_of = |s: &Seed| {
        let n = ids.len();
        *ids.entry(s.canonical()).or_insert(n)
    };
    let root = TreeVertex { seed_id: id_of(s0), seed: s0.clone(), parent: None, direction: None };
    let mut levels = vec![vec![root]];
    let mut total = 1;
    for _ in 0..depth {
        let prev = levels.last().unwrap();
        let mut next: Vec<TreeVertex> = vec![];
        for (pi, v) in prev.iter().enumerate() {
            let mut children: Vec<(usize, Seed)> = vec![];
            for k in 1..=v.seed.rank() {
                if prune_backtrack && v.direction == Some(k) {
                    continue;
                }
                let s = mutate_seed(&v.seed, k)?;
                if !children.iter().any(|(_, c)| c == &s) {
                    children.push((k, s));
                }
            }
            for (k, s) in children {
                total += 1;
                if total > budget {
                    return Err(ClusterError::BudgetExceeded(format!("more than {budget} tree vertices")));
                }
                next.push(TreeVertex { seed_id: id_of(&s), seed: s, parent: Some(pi), direction: Some(k) });
            }
        }
        levels.push(next);
    }
    Ok(MutationTree { levels, distinct_seeds: ids.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::{polygon_seed, surface_seed, SurfaceSpec};

    fn torus() -> Seed {
        surface_seed(&SurfaceSpec::new(1, 1).unwrap()).unwrap()
    }

    #[test]
    fn polygon_counts() {
        let expect = [(4, 2), (5, 5), (6, 14)];
        for (d, n) in expect {
            assert_eq!(enumerate_seeds(&polygon_seed(d).unwrap(), 1000).unwrap(), SeedCount { count: n, finite_type: true });
        }
    }

    #[test]
    fn torus_is_infinite() {
        assert_eq!(enumerate_seeds(&torus(), 100).unwrap(), SeedCount { count: 100, finite_type: false });
    }

    #[test]
    fn exact_bound_still_finite() {
        assert_eq!(enumerate_seeds(&polygon_seed(5).unwrap(), 5).unwrap(), SeedCount { count: 5, finite_type: true });
        assert_eq!(enumerate_seeds(&polygon_seed(5).unwrap(), 4).unwrap(), SeedCount { count: 4, finite_type: false });
    }

    #[test]
    fn torus_tree_levels() {
        let t = mutation_tree(&torus(), 2, false).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 3, 9]);
        assert_eq!(t.to_bratteli().vertex_count(), 13);
        assert!(t.revisits_seeds());
        let pruned = mutation_tree(&torus(), 3, true).unwrap();
        assert_eq!(pruned.level_sizes(), vec![1, 3, 6, 12]);
        assert!(!pruned.revisits_seeds());
    }

    #[test]
    fn depth_zero_and_guard() {
        let t = mutation_tree(&torus(), 0, false).unwrap();
        assert_eq!(t.level_sizes(), vec![1]);
        assert!(matches!(mutation_tree(&torus(), 7, false), Err(ClusterError::BudgetExceeded(_))));
        assert!(matches!(mutation_tree_with_budget(&torus(), 4, false, 50), Err(ClusterError::BudgetExceeded(_))));
    }

    #[test]
    fn pentagon_tree_revisits() {
        let t = mutation_tree(&polygon_seed(5).unwrap(), 5, true).unwrap();
        assert_eq!(t.level_sizes(), vec![1, 2, 2, 2, 2, 2]);
        assert!(t.revisits_seeds());
        assert_eq!(t.distinct_seeds(), 5);
    }

    #[test]
    fn dot_edges_labeled() {
        let dot = mutation_tree(&torus(), 1, false).unwrap().to_dot();
        assert!(dot.contains("v0_0 -> v1_2 [label=\"mu3\"];"));
        assert_eq!(dot.matches("rank=same").count(), 2);
    }
}
