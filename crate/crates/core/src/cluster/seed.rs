use serde::Serialize;

use super::laurent::LaurentFraction;
use super::matrix::{mutate_matrix, ExchangeMatrix};
use super::ClusterError;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    variables: Vec<LaurentFraction>,
    matrix: ExchangeMatrix,
}

/// Seed up to simultaneous renumbering of variables and matrix indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalSeed {
    variables: Vec<LaurentFraction>,
    matrix: ExchangeMatrix,
}

impl Seed {
    /// Initial seed `(x_1, ..., x_m; B)`.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let m = matrix.size();
        Self {
            variables: (0..m).map(|i| LaurentFraction::variable(m, i)).collect(),
            matrix,
        }
    }

    pub fn from_parts(variables: Vec<LaurentFraction>, matrix: ExchangeMatrix) -> Result<Self, ClusterError> {
        if variables.len() != matrix.size() {
            return Err(ClusterError::RankMismatch { variables: variables.len(), matrix: matrix.size() });
        }
        Ok(Self { variables, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.size()
    }

    pub fn variables(&self) -> &[LaurentFraction] {
        &self.variables
    }

    pub fn variable(&self, k: usize) -> &LaurentFraction {
        &self.variables[k - 1]
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    /// Sorts the variables and renumbers `B` to match; among ties the
    /// lexicographically least matrix wins.
    pub fn canonical(&self) -> CanonicalSeed {
        let m = self.rank();
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| self.variables[a].cmp(&self.variables[b]));
        let has_ties = order.windows(2).any(|w| self.variables[w[0]] == self.variables[w[1]]);
        let matrix = if has_ties {
            tie_permutations(&order, &self.variables)
                .into_iter()
                .map(|p| self.matrix.permuted(&p))
                .min()
                .expect("at least one ordering")
        } else {
            self.matrix.permuted(&order)
        };
        CanonicalSeed {
            variables: order.iter().map(|&i| self.variables[i].clone()).collect(),
            matrix,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "B": self.matrix.entries(),
            "vars": self.variables.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl CanonicalSeed {
    pub fn variables(&self) -> &[LaurentFraction] {
        &self.variables
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }
}

/// All orderings that agree with `sorted` up to permuting equal variables.
fn tie_permutations(sorted: &[usize], vars: &[LaurentFraction]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = vec![];
    for &i in sorted {
        match groups.last_mut() {
            Some(g) if vars[g[0]] == vars[i] => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let mut out = vec![vec![]];
    for g in groups {
        let perms = permutations(&g);
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = vec![];
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Seed mutation in direction `k` (1-based):
/// `x_k' = (∏ x_i^{max(b_ik,0)} + ∏ x_i^{max(-b_ik,0)}) / x_k`, in the
/// initial variables.
pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed, ClusterError> {
    s.matrix.check_direction(k)?;
    let kk = k - 1;
    let m = s.rank();
    let one = LaurentFraction::variable(m, 0).pow(0);
    let (mut up, mut down) = (one.clone(), one);
    for i in 0..m {
        let b = s.matrix.get(i, kk);
        if b > 0 {
            up = up.mul(&s.variables[i].pow(b as u32));
        } else if b < 0 {
            down = down.mul(&s.variables[i].pow((-b) as u32));
        }
    }
    let sum = up.add(&down);
    let new_var = sum
        .exact_div(&s.variables[kk])
        .ok_or(ClusterError::NonLaurentResult { direction: k })?;
    let mut variables = s.variables.clone();
    variables[kk] = new_var;
    Ok(Seed { variables, matrix: mutate_matrix(&s.matrix, k)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentReport {
    pub laurent: bool,
    pub positive: bool,
    pub steps: usize,
}

/// Mutates along `directions`, checking every new variable is a reduced
/// Laurent polynomial. Positivity of coefficients is reported separately.
pub fn laurent_report(s0: &Seed, directions: &[usize]) -> Result<LaurentReport, ClusterError> {
    let mut s = s0.clone();
    let mut report = LaurentReport { laurent: true, positive: true, steps: 0 };
    for &k in directions {
        s = mutate_seed(&s, k)?;
        let v = s.variable(k);
        report.laurent &= v.is_reduced();
        report.positive &= v.all_coefficients_positive();
        report.steps += 1;
    }
    Ok(report)
}

pub fn laurent_check(s0: &Seed, directions: &[usize]) -> Result<bool, ClusterError> {
    Ok(laurent_report(s0, directions)?.laurent)
}

/// Fan triangulation of the `d`-gon: path quiver of rank `d - 3`.
pub fn polygon_seed(d: usize) -> Result<Seed, ClusterError> {
    if d < 4 {
        return Err(ClusterError::TooSmall(d));
    }
    let m = d - 3;
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| if j == i + 1 { 1 } else if i == j + 1 { -1 } else { 0 })
                .collect()
        })
        .collect();
    Ok(Seed::initial(ExchangeMatrix::new(entries)?))
}

/// Surface `S_{g,n}` with `2g - 2 + n > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub cusps: u32,
    /// `6g - 6 + 3n`
    pub cluster_rank: u32,
    /// `6g - 6 + 2n`
    pub af_rank: u32,
}

impl SurfaceSpec {
    pub fn new(genus: u32, cusps: u32) -> Result<Self, ClusterError> {
        let (g, n) = (genus as i64, cusps as i64);
        if 2 * g - 2 + n <= 0 {
            return Err(ClusterError::UnsupportedSurface { genus, cusps });
        }
        Ok(Self {
            genus,
            cusps,
            cluster_rank: (6 * g - 6 + 3 * n) as u32,
            af_rank: (6 * g - 6 + 2 * n) as u32,
        })
    }
}

/// Exchange matrix of an ideal triangulation of the once-punctured torus.
pub fn once_punctured_torus_matrix() -> ExchangeMatrix {
    ExchangeMatrix::new(vec![vec![0, 2, -2], vec![-2, 0, 2], vec![2, -2, 0]]).expect("skew-symmetric")
}

/// Only `S_{1,1}` has an explicit matrix.
pub fn surface_seed(spec: &SurfaceSpec) -> Result<Seed, ClusterError> {
    if (spec.genus, spec.cusps) != (1, 1) {
        return Err(ClusterError::UnsupportedSurface { genus: spec.genus, cusps: spec.cusps });
    }
    Ok(Seed::initial(once_punctured_torus_matrix()))
}
