use serde::Serialize;

use super::ClusterError;

/// Skew-symmetric integer exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExchangeMatrix {
    entries: Vec<Vec<i64>>,
}

impl ExchangeMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let m = entries.len();
        if m == 0 || entries.iter().any(|r| r.len() != m) {
            return Err(ClusterError::NotSkewSymmetric("matrix must be square and nonempty".into()));
        }
        for i in 0..m {
            for j in 0..m {
                if entries[i][j] != -entries[j][i] {
                    return Err(ClusterError::NotSkewSymmetric(format!("b[{}][{}] != -b[{}][{}]", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Row-major `"0,1;-1,0"`.
    pub fn parse(text: &str) -> Result<Self, ClusterError> {
        let rows = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<i64>()
                            .map_err(|_| ClusterError::NotSkewSymmetric(format!("bad entry {:?}", x.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(rows)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// `B` with rows and columns renumbered: new index `i` is old `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            entries: perm.iter().map(|&i| perm.iter().map(|&j| self.entries[i][j]).collect()).collect(),
        }
    }

    pub(crate) fn check_direction(&self, k: usize) -> Result<(), ClusterError> {
        if k == 0 || k > self.size() {
            return Err(ClusterError::DirectionOutOfRange { direction: k, rank: self.size() });
        }
        Ok(())
    }
}

/// Matrix mutation in direction `k` (1-based):
/// `b'_ij = -b_ij` if `k ∈ {i, j}`, else `b_ij + (|b_ik| b_kj + b_ik |b_kj|)/2`.
pub fn mutate_matrix(b: &ExchangeMatrix, k: usize) -> Result<ExchangeMatrix, ClusterError> {
    b.check_direction(k)?;
    let k = k - 1;
    let m = b.size();
    let e = &b.entries;
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == k || j == k {
                        -e[i][j]
                    } else {
                        e[i][j] + (e[i][k].abs() * e[k][j] + e[i][k] * e[k][j].abs()) / 2
                    }
                })
                .collect()
        })
        .collect();
    Ok(ExchangeMatrix { entries })
}
