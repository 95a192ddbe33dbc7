use std::fmt;

use nalgebra::DMatrix;
use num_integer::Integer;
use serde::Serialize;

use super::{wielandt_bound, AfError, IncidenceMatrix};
use crate::numfield::factorize;

pub const POWER_ITERATION_TOL: f64 = 1e-12;
pub const POWER_ITERATION_MAX: usize = 100_000;

/// `(rational + coeff·√radicand) / denom` with `radicand` square-free (or 1
/// only when `coeff = 0`), `denom > 0` and the three integers coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticSurd {
    pub rational: i64,
    pub coeff: i64,
    pub radicand: u64,
    pub denom: u64,
}

impl QuadraticSurd {
    /// Normalizes `(a + b·√r) / c`.
    pub fn new(a: i64, b: i64, r: u64, c: i64) -> Self {
        assert!(c != 0, "zero denominator");
        let (mut a, mut b, mut c) = (a as i128, b as i128, c as i128);
        let mut r = r;
        if r == 0 {
            b = 0;
        }
        // pull square factors out of the radicand
        if b != 0 {
            let mut square = 1i128;
            let mut free = 1u64;
            for (p, e) in factorize(r) {
                square *= (p as i128).pow(e / 2);
                if e % 2 == 1 {
                    free *= p;
                }
            }
            b *= square;
            r = free;
            if r == 1 {
                a += b;
                b = 0;
            }
        }
        if b == 0 {
            r = 1;
        }
        if c < 0 {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        let g = if g == 0 { 1 } else { g };
        QuadraticSurd {
            rational: (a / g) as i64,
            coeff: (b / g) as i64,
            radicand: r,
            denom: (c / g) as u64,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::new(n, 0, 1, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.coeff == 0
    }

    pub fn to_f64(&self) -> f64 {
        (self.rational as f64 + self.coeff as f64 * (self.radicand as f64).sqrt()) / self.denom as f64
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.coeff == 0 {
            self.rational.to_string()
        } else {
            let root = match self.coeff {
                1 => format!("sqrt({})", self.radicand),
                -1 => format!("-sqrt({})", self.radicand),
                c => format!("{c}*sqrt({})", self.radicand),
            };
            match self.rational {
                0 => root,
                a if root.starts_with('-') => format!("{a}{root}"),
                a => format!("{a}+{root}"),
            }
        };
        match (self.denom, self.coeff != 0 && self.rational != 0) {
            (1, _) => write!(f, "{body}"),
            (d, true) => write!(f, "({body})/{d}"),
            (d, false) => write!(f, "{body}/{d}"),
        }
    }
}

/// Coefficients `[c0, c1, ..., 1]` of `det(xI - A)` (Faddeev–LeVerrier,
/// exact over the integers).
pub fn characteristic_polynomial(a: &IncidenceMatrix) -> Vec<i128> {
    let n = a.size();
    let am: Vec<Vec<i128>> = a.entries().iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| am[i][l] * m[l][j]).sum();
            }
            next[i][i] += coeffs[n - k + 1];
        }
        m = next;
        let trace: i128 = (0..n).map(|i| (0..n).map(|l| am[i][l] * m[l][i]).sum::<i128>()).sum();
        coeffs[n - k] = -trace / k as i128;
    }
    coeffs
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn div_monic(num: &[i128], den: &[i128]) -> Option<Vec<i128>> {
    let (n, d) = (num.len() - 1, den.len() - 1);
    if d > n {
        return None;
    }
    let mut rem = num.to_vec();
    let mut q = vec![0i128; n - d + 1];
    for k in (0..=n - d).rev() {
        let c = rem[k + d];
        q[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    rem.iter().all(|&x| x == 0).then_some(q)
}

fn poly_eval(p: &[i128], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

/// Smallest-degree monic integer factor of `charpoly` vanishing at `lambda`.
///
/// Candidates are products over subsets of the numerically computed roots;
/// each is rounded and accepted only if it divides `charpoly` exactly.
fn minimal_polynomial(charpoly: &[i128], lambda: f64) -> Vec<i128> {
    let n = charpoly.len() - 1;
    if n <= 1 {
        return charpoly.to_vec();
    }
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -(charpoly[i] as f64)
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let roots: Vec<nalgebra::Complex<f64>> = companion.complex_eigenvalues().iter().copied().collect();
    let (lead, _) = roots
        .iter()
        .enumerate()
        .map(|(i, z)| (i, (z - nalgebra::Complex::new(lambda, 0.0)).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one root");
    let others: Vec<_> = (0..n).filter(|&i| i != lead).collect();
    let mut subsets: Vec<u64> = (0..1u64 << others.len()).collect();
    subsets.sort_by_key(|s| s.count_ones());
    for mask in subsets {
        let mut poly = vec![nalgebra::Complex::new(1.0, 0.0)];
        let chosen = std::iter::once(lead).chain(
            others.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i),
        );
        for i in chosen {
            let mut next = vec![nalgebra::Complex::new(0.0, 0.0); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * roots[i];
            }
            poly = next;
        }
        let rounded: Vec<i128> = poly.iter().map(|c| c.re.round() as i128).collect();
        let close = poly
            .iter()
            .zip(&rounded)
            .all(|(c, &r)| c.im.abs() < 1e-6 * (1.0 + c.norm()) && (c.re - r as f64).abs() < 1e-6 * (1.0 + c.norm()));
        if close
            && div_monic(charpoly, &rounded).is_some()
            && poly_eval(&rounded, lambda).abs() < 1e-6 * (1.0 + lambda.powi(rounded.len() as i32 - 1))
        {
            return rounded;
        }
    }
    charpoly.to_vec()
}

/// Collatz–Wielandt bracketing: converged once `max(Av/v) - min(Av/v) ≤
/// tol·max`, then iterated while the bracket still shrinks.
fn power_iteration(a: &IncidenceMatrix) -> Result<f64, AfError> {
    let n = a.size();
    let mut v = vec![1.0f64; n];
    let mut best: Option<(f64, f64)> = None;
    let mut polish = 0;
    for _ in 0..POWER_ITERATION_MAX {
        let w: Vec<f64> = (0..n).map(|i| (0..n).map(|j| a.get(i, j) as f64 * v[j]).sum()).collect();
        let ratios = w.iter().zip(&v).map(|(x, y)| x / y);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        match best {
            Some((spread, mid)) => {
                if hi - lo >= spread || polish == 64 {
                    return Ok(mid);
                }
                best = Some((hi - lo, (lo + hi) / 2.0));
                polish += 1;
            }
            None if hi - lo <= POWER_ITERATION_TOL * hi => best = Some((hi - lo, (lo + hi) / 2.0)),
            None => {}
        }
        let scale = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / scale).collect();
    }
    if let Some((_, mid)) = best {
        return Ok(mid);
    }
    Err(AfError::NoConvergence(POWER_ITERATION_MAX))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronData {
    pub size: usize,
    pub matrix: Vec<Vec<u64>>,
    /// Exact value when `size ≤ 2`.
    pub exact: Option<QuadraticSurd>,
    /// Power-iteration value.
    pub float: f64,
    pub characteristic_polynomial: Vec<i128>,
    pub minimal_polynomial: Vec<i128>,
    /// Degree of the Perron value over `Q`.
    pub degree: usize,
}

impl PerronData {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "size": self.size,
            "matrix": self.matrix,
            "lambda": {
                "exact": self.exact.map(|s| s.to_string()),
                "float": self.float,
                "minpoly": self.minimal_polynomial.iter().map(|&c| c as i64).collect::<Vec<_>>(),
            },
        })
    }
}

/// Perron–Frobenius eigenvalue of a primitive matrix.
pub fn perron(a: &IncidenceMatrix) -> Result<PerronData, AfError> {
    if !a.is_primitive() {
        return Err(AfError::NotPrimitive(wielandt_bound(a.size())));
    }
    let float = power_iteration(a)?;
    let charpoly = characteristic_polynomial(a);
    let (exact, minpoly) = match a.size() {
        1 => (Some(QuadraticSurd::integer(a.get(0, 0) as i64)), charpoly.clone()),
        2 => {
            let t = (a.get(0, 0) + a.get(1, 1)) as i64;
            let det = a.get(0, 0) as i64 * a.get(1, 1) as i64 - a.get(0, 1) as i64 * a.get(1, 0) as i64;
            // (a-d)^2 + 4bc ≥ 0 for non-negative entries
            let disc = (t * t - 4 * det) as u64;
            let surd = QuadraticSurd::new(t, 1, disc, 2);
            let minpoly = if surd.is_rational() { vec![-(surd.rational as i128), 1] } else { charpoly.clone() };
            (Some(surd), minpoly)
        }
        _ => (None, minimal_polynomial(&charpoly, float)),
    };
    Ok(PerronData {
        size: a.size(),
        matrix: a.entries().to_vec(),
        exact,
        float,
        degree: minpoly.len() - 1,
        characteristic_polynomial: charpoly,
        minimal_polynomial: minpoly,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionGroupDescriptor {
    pub rank: usize,
    pub order: String,
    pub minimal_polynomial: Vec<i128>,
    /// `t² - 4 det` for a rank-2 matrix with irreducible characteristic
    /// polynomial.
    pub radicand: Option<u64>,
    pub lambda: Option<QuadraticSurd>,
    pub positivity: String,
    pub unit: String,
}

/// `(Z[λ], Z[λ]⁺, 1)` for the stationary diagram of `a`.
pub fn dimension_group(a: &IncidenceMatrix) -> Result<DimensionGroupDescriptor, AfError> {
    let data = perron(a)?;
    let radicand = match (a.size(), data.exact) {
        (2, Some(s)) if !s.is_rational() => {
            let t = a.get(0, 0) + a.get(1, 1);
            let det = a.get(0, 0) * a.get(1, 1);
            Some((t * t + 4 * a.get(0, 1) * a.get(1, 0)) - 4 * det)
        }
        _ => None,
    };
    let order = match data.exact {
        Some(s) if s.is_rational() => "Z".to_string(),
        Some(s) => format!("Z[{s}]"),
        None => "Z[λ]".to_string(),
    };
    let constant = data.minimal_polynomial[0];
    let unit = if constant.abs() == 1 {
        "λ is a unit of Z[λ]".to_string()
    } else {
        format!("λ is not a unit: norm {}", if data.degree % 2 == 0 { constant } else { -constant })
    };
    Ok(DimensionGroupDescriptor {
        rank: a.size(),
        order,
        positivity: format!("positive cone: elements of {} positive at λ = {:.12}", "Z[λ]", data.float),
        minimal_polynomial: data.minimal_polynomial,
        radicand,
        lambda: data.exact,
        unit,
    })
}
