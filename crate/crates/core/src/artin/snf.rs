//! Smith normal form over the integers (diagonal only; transforms are not
//! tracked).

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) of an integer
/// matrix; `r` is its rank.
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<i128> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut diag = vec![];

    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero pivot in the trailing block
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // divisibility condition on the rest of the block
            if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
                for j in t..cols {
                    a[t][j] += a[i][j];
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(invariant_factors(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(invariant_factors(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(invariant_factors(&[vec![0, 0]]), Vec::<i128>::new());
        assert_eq!(invariant_factors(&[]), Vec::<i128>::new());
        assert_eq!(invariant_factors(&[vec![-1, 1], vec![1, -1]]), vec![1]);
    }
}
