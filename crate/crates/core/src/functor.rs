//! The composite braid → monodromy → stationary matrix → quadratic field
//! for the once-punctured torus, where `B_3` acts through `SL_2(Z)`:
//! `σ_1 ↦ [[1,1],[0,1]]`, `σ_2 ↦ [[1,0],[-1,1]]`.
//!
//! For `σ_1^p σ_2^{-q}` the monodromy is `[[pq+1, p],[q, 1]]` and the field
//! is `Q(√(pq(pq+4)))`. Other braids in `B_3` go through the same
//! `trace² - 4` rule and are labeled as extrapolated.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::af::{dimension_group, IncidenceMatrix};
use crate::braid::{closure_components, markov_conjugate, BraidError, BraidWord};
use crate::cluster::{enumerate_seeds, polygon_seed, surface_seed, ClusterError, SeedCount, SurfaceSpec};
use crate::numfield::{make_field, FieldError, QuadraticField};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("WrongStrandCount: monodromy is defined on B3, got B{0}")]
    WrongStrandCount(usize),
    #[error("NonHyperbolic: trace {trace} has |trace| <= 2, no real quadratic field")]
    NonHyperbolic { trace: i64 },
    #[error("Overflow: monodromy entries exceed 64 bits")]
    Overflow,
    #[error("InvalidPair: p and q must be positive, got ({0}, {1})")]
    InvalidPair(u64, u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Artin(#[from] crate::artin::ArtinError),
}

/// Element of `SL_2(Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MonodromyMatrix {
    entries: [[i64; 2]; 2],
}

impl MonodromyMatrix {
    pub const IDENTITY: MonodromyMatrix = MonodromyMatrix { entries: [[1, 0], [0, 1]] };
    pub const SIGMA1: MonodromyMatrix = MonodromyMatrix { entries: [[1, 1], [0, 1]] };
    pub const SIGMA2: MonodromyMatrix = MonodromyMatrix { entries: [[1, 0], [-1, 1]] };

    /// `None` unless the determinant is 1.
    pub fn new(entries: [[i64; 2]; 2]) -> Option<Self> {
        let det = entries[0][0] as i128 * entries[1][1] as i128 - entries[0][1] as i128 * entries[1][0] as i128;
        (det == 1).then_some(Self { entries })
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }

    pub fn trace(&self) -> i64 {
        self.entries[0][0] + self.entries[1][1]
    }

    pub fn determinant(&self) -> i64 {
        self.entries[0][0] * self.entries[1][1] - self.entries[0][1] * self.entries[1][0]
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2
    }

    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.entries;
        Self { entries: [[d, -b], [-c, a]] }
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let (a, b) = (self.entries, other.entries);
        let cell = |i: usize, j: usize| a[i][0].checked_mul(b[0][j])?.checked_add(a[i][1].checked_mul(b[1][j])?);
        Some(Self { entries: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]] })
    }

    /// As an incidence matrix when all entries are non-negative.
    pub fn as_incidence(&self) -> Option<IncidenceMatrix> {
        let rows: Option<Vec<Vec<u64>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| u64::try_from(x).ok()).collect())
            .collect();
        IncidenceMatrix::new(rows?).ok()
    }
}

impl fmt::Display for MonodromyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// Product of generator images, first letter leftmost.
pub fn monodromy(b: &BraidWord) -> Result<MonodromyMatrix, FunctorError> {
    if b.strands() != 3 {
        return Err(FunctorError::WrongStrandCount(b.strands()));
    }
    b.letters().iter().try_fold(MonodromyMatrix::IDENTITY, |acc, &k| {
        let g = match k {
            1 => MonodromyMatrix::SIGMA1,
            -1 => MonodromyMatrix::SIGMA1.inverse(),
            2 => MonodromyMatrix::SIGMA2,
            _ => MonodromyMatrix::SIGMA2.inverse(),
        };
        acc.checked_mul(&g).ok_or(FunctorError::Overflow)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `σ_1^p σ_2^{-q}`
    ExampleFamily { p: usize, q: usize },
    /// Any other braid, through the same `trace² - 4` rule.
    Extrapolated,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::ExampleFamily { p, q } => write!(f, "sigma1^{p} sigma2^-{q}"),
            Regime::Extrapolated => write!(f, "extrapolated per B3 -> SL2(Z) homomorphism"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInvariant {
    pub braid: BraidWord,
    pub matrix: MonodromyMatrix,
    /// `trace² - 4`
    pub radicand: u64,
    pub field: QuadraticField,
    pub components: usize,
    pub is_knot: bool,
    pub regime: Regime,
}

impl FieldInvariant {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "radicand": self.radicand,
            "D": self.field.d(),
            "field": self.field.name(),
            "knot": self.is_knot,
        })
    }
}

pub fn field_of(b: &BraidWord) -> Result<FieldInvariant, FunctorError> {
    let matrix = monodromy(b)?;
    let t = matrix.trace();
    if !matrix.is_hyperbolic() {
        return Err(FunctorError::NonHyperbolic { trace: t });
    }
    let radicand = (t as i128 * t as i128 - 4) as u64;
    let field = make_field(radicand)?;
    let components = closure_components(b);
    let regime = match b.as_sigma1_p_sigma2_neg_q() {
        Some((p, q)) => Regime::ExampleFamily { p, q },
        None => Regime::Extrapolated,
    };
    Ok(FieldInvariant {
        braid: b.clone(),
        matrix,
        radicand,
        field,
        components,
        is_knot: components == 1,
        regime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub q: u64,
    /// `pq(pq + 4)`
    pub radicand: u64,
    /// Square-free part.
    pub d: u64,
    pub field: String,
}

/// Rows for `M_{p,q}`, computed through the monodromy of `σ_1^p σ_2^{-q}`.
pub fn table_mpq(pairs: &[(u64, u64)]) -> Result<Vec<TableRow>, FunctorError> {
    pairs
        .iter()
        .map(|&(p, q)| {
            if p == 0 || q == 0 {
                return Err(FunctorError::InvalidPair(p, q));
            }
            let inv = field_of(&BraidWord::sigma1_p_sigma2_neg_q(p as usize, q as usize))?;
            Ok(TableRow { p, q, radicand: inv.radicand, d: inv.field.d(), field: inv.field.name() })
        })
        .collect()
}

pub fn render_table(rows: &[TableRow]) -> String {
    let header = ["manifold", "radicand", "D", "field"];
    let body: Vec<[String; 4]> = rows
        .iter()
        .map(|r| [format!("M{},{}", r.p, r.q), r.radicand.to_string(), r.d.to_string(), r.field.clone()])
        .collect();
    let widths: Vec<usize> = (0..4)
        .map(|i| body.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap())
        .collect();
    let line = |cells: [&str; 4]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(header) + "\n";
    for r in &body {
        out += &line([&r[0], &r[1], &r[2], &r[3]]);
        out.push('\n');
    }
    out
}

/// Radicand of the dimension group of the stationary diagram for the
/// monodromy of `σ_1^p σ_2^{-q}`.
pub fn radicand_via_dimension_group(p: usize, q: usize) -> Result<Option<u64>, FunctorError> {
    let m = monodromy(&BraidWord::sigma1_p_sigma2_neg_q(p, q))?;
    let a = m.as_incidence().expect("non-negative for p, q >= 1");
    Ok(dimension_group(&a).expect("primitive for p, q >= 1").radicand)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereInvariant {
    pub descriptor: String,
    /// `(d, seeds of the d-gon algebra)` for `d = 4, 5, 6`.
    pub witnesses: Vec<(usize, SeedCount)>,
    /// `S_{1,1}` at 100 seeds, for contrast.
    pub contrast: SeedCount,
}

/// `Z`, with finite-type witnesses from the polygon cluster algebras.
pub fn sphere_invariant() -> Result<SphereInvariant, FunctorError> {
    let witnesses = [4, 5, 6]
        .into_iter()
        .map(|d| Ok((d, enumerate_seeds(&polygon_seed(d)?, 1000)?)))
        .collect::<Result<Vec<_>, ClusterError>>()?;
    let torus = surface_seed(&SurfaceSpec::new(1, 1)?)?;
    Ok(SphereInvariant {
        descriptor: "Z".into(),
        witnesses,
        contrast: enumerate_seeds(&torus, 100)?,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovReport {
    pub original: FieldInvariant,
    pub conjugated: FieldInvariant,
    pub traces_equal: bool,
    pub radicands_equal: bool,
    pub matrices_equal: bool,
}

/// Compares the invariants of `b` and `a b a⁻¹`.
pub fn markov_invariance(b: &BraidWord, a: &BraidWord) -> Result<MarkovReport, FunctorError> {
    let original = field_of(b)?;
    let conjugated = field_of(&markov_conjugate(b, a)?)?;
    Ok(MarkovReport {
        traces_equal: original.matrix.trace() == conjugated.matrix.trace(),
        radicands_equal: original.radicand == conjugated.radicand,
        matrices_equal: original.matrix == conjugated.matrix,
        original,
        conjugated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3(l: &[i32]) -> BraidWord {
        BraidWord::new(3, l.to_vec()).unwrap()
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(monodromy(&BraidWord::sigma1_p_sigma2_neg_q(2, 3)).unwrap().entries(), [[7, 2], [3, 1]]);
        let r = MonodromyMatrix::new([[0, 1], [-1, 0]]).unwrap();
        assert_eq!(monodromy(&b3(&[1, 2, 1])).unwrap(), r);
        assert_eq!(monodromy(&b3(&[2, 1, 2])).unwrap(), r);
        assert_eq!(monodromy(&b3(&[])).unwrap(), MonodromyMatrix::IDENTITY);
        assert_eq!(
            monodromy(&BraidWord::new(4, vec![1]).unwrap()),
            Err(FunctorError::WrongStrandCount(4))
        );
        assert!(MonodromyMatrix::new([[2, 0], [0, 1]]).is_none());
    }

    #[test]
    fn field_examples() {
        let f = field_of(&b3(&[1, -2])).unwrap();
        assert_eq!((f.radicand, f.field.d()), (5, 5));
        assert!(f.is_knot);
        assert_eq!(f.regime, Regime::ExampleFamily { p: 1, q: 1 });
        let f = field_of(&BraidWord::sigma1_p_sigma2_neg_q(1, 7)).unwrap();
        assert_eq!(f.radicand, 77);
        assert_eq!(field_of(&b3(&[1])), Err(FunctorError::NonHyperbolic { trace: 2 }));
        assert_eq!(field_of(&b3(&[])), Err(FunctorError::NonHyperbolic { trace: 2 }));
        let e = field_of(&b3(&[1, -2, 1])).unwrap();
        assert_eq!(e.regime, Regime::Extrapolated);
    }

    #[test]
    fn json_example() {
        let v = field_of(&BraidWord::sigma1_p_sigma2_neg_q(1, 1)).unwrap().to_json();
        assert_eq!(v["radicand"], 5);
        assert_eq!(v["D"], 5);
        assert_eq!(v["field"], "Q(sqrt(5))");
        assert_eq!(v["knot"], true);
    }

    #[test]
    fn table_rows() {
        let rows = table_mpq(&[(1, 13), (3, 5), (3, 7)]).unwrap();
        assert_eq!((rows[0].radicand, rows[0].field.as_str()), (221, "Q(sqrt(221))"));
        assert_eq!(rows[1].radicand, 285);
        assert_eq!((rows[2].radicand, rows[2].d), (525, 21));
        assert_eq!(table_mpq(&[(0, 1)]), Err(FunctorError::InvalidPair(0, 1)));
        let text = render_table(&rows);
        assert!(text.lines().nth(3).unwrap().starts_with("M3,7"));
    }

    #[test]
    fn sphere() {
        let s = sphere_invariant().unwrap();
        assert_eq!(s.descriptor, "Z");
        let counts: Vec<usize> = s.witnesses.iter().map(|(_, c)| c.count).collect();
        assert_eq!(counts, vec![2, 5, 14]);
        assert!(s.witnesses.iter().all(|(_, c)| c.finite_type));
        assert!(!s.contrast.finite_type);
    }

    #[test]
    fn markov_examples() {
        let r = markov_invariance(&b3(&[1, -2]), &b3(&[1])).unwrap();
        assert!(r.traces_equal && r.radicands_equal);
        assert_eq!(r.conjugated.radicand, 5);
        let r = markov_invariance(&b3(&[1, -2]), &b3(&[])).unwrap();
        assert!(r.matrices_equal);
        let r = markov_invariance(&b3(&[1, 1, -2]), &b3(&[2, 1])).unwrap();
        assert!(r.radicands_equal);
    }

    #[test]
    fn pipeline_radicands_agree() {
        assert_eq!(radicand_via_dimension_group(1, 1).unwrap(), Some(5));
        assert_eq!(radicand_via_dimension_group(3, 7).unwrap(), Some(525));
    }
}
