//! Real quadratic fields `Q(√D)`: square-free reduction, ring of integers,
//! prime splitting, ideals in factored form and ideal chains.
//!
//! Ideals are held as products of prime-ideal symbols. A split prime `p`
//! has two conjugate symbols (tags 0 and 1), an inert prime one symbol of
//! norm `p²`, a ramified prime one symbol of norm `p`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("PerfectSquare: radicand {0} is a perfect square, the field degenerates to Q")]
    PerfectSquare(u64),
    #[error("RadicandTooSmall: radicand {0} must be at least 2")]
    RadicandTooSmall(u64),
    #[error("TooLargeToFactor: radicand {0} exceeds 2^63")]
    TooLargeToFactor(u64),
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("FieldMismatch: discriminants {0} and {1}")]
    FieldMismatch(u64, u64),
}

const FACTOR_LIMIT: u64 = 1 << 63;

/// Trial-division factorization, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    factorize(n) == [(n, 1)]
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a/p)` for an odd prime `p`: 0, 1 or -1.
pub fn legendre(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Tonelli–Shanks; `a` must be a nonzero residue mod the odd prime `p`.
fn sqrt_mod(a: u64, p: u64) -> u64 {
    let a = a % p;
    let mul = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1).expect("odd prime has a non-residue");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    r.min(p - r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticField {
    radicand_raw: u64,
    d: u64,
    discriminant: u64,
}

impl QuadraticField {
    pub fn radicand_raw(&self) -> u64 {
        self.radicand_raw
    }

    /// Square-free part `D`.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn discriminant(&self) -> u64 {
        self.discriminant
    }

    pub fn basis_description(&self) -> String {
        if self.d % 4 == 1 {
            format!("Z[(1+sqrt({}))/2]", self.d)
        } else {
            format!("Z[sqrt({})]", self.d)
        }
    }

    /// Field as written from the raw radicand, `Q(sqrt(525))`.
    pub fn name(&self) -> String {
        format!("Q(sqrt({}))", self.radicand_raw)
    }

    /// `Q(sqrt(D))` with the square-free radicand.
    pub fn reduced_name(&self) -> String {
        format!("Q(sqrt({}))", self.d)
    }

    /// `f` with `poly_disc = f² · disc`, the index of the order of that
    /// discriminant in `O_K`. `None` if `poly_disc` is not of that form.
    pub fn conductor_of(&self, poly_disc: u64) -> Option<u64> {
        if poly_disc % self.discriminant != 0 {
            return None;
        }
        let f2 = poly_disc / self.discriminant;
        let f = num_integer::Roots::sqrt(&f2);
        (f * f == f2).then_some(f)
    }

    /// Splitting of every prime below `bound`.
    pub fn splitting_table(&self, bound: u64) -> Vec<PrimeSplitting> {
        (2..bound)
            .filter(|&p| is_prime(p))
            .map(|p| split_prime(self, p).expect("p is prime"))
            .collect()
    }

    pub fn to_json(&self, split_bound: u64) -> serde_json::Value {
        let splitting: Vec<_> = self
            .splitting_table(split_bound)
            .into_iter()
            .map(|s| serde_json::json!({"p": s.p, "kind": s.kind}))
            .collect();
        serde_json::json!({
            "radicand": self.radicand_raw,
            "D": self.d,
            "disc": self.discriminant,
            "basis": self.basis_description(),
            "splitting": splitting,
        })
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub fn make_field(radicand_raw: u64) -> Result<QuadraticField, FieldError> {
    if radicand_raw < 2 {
        return Err(FieldError::RadicandTooSmall(radicand_raw));
    }
    if radicand_raw > FACTOR_LIMIT {
        return Err(FieldError::TooLargeToFactor(radicand_raw));
    }
    let d: u64 = factorize(radicand_raw)
        .into_iter()
        .filter(|&(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    if d == 1 {
        return Err(FieldError::PerfectSquare(radicand_raw));
    }
    let discriminant = if d % 4 == 1 { d } else { 4 * d };
    Ok(QuadraticField { radicand_raw, d, discriminant })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitKind {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SplitKind::Split => "split",
            SplitKind::Inert => "inert",
            SplitKind::Ramified => "ramified",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSplitting {
    pub p: u64,
    pub kind: SplitKind,
    /// For split odd `p`: the least `r` with `r² ≡ disc (mod p)`.
    pub root: Option<u64>,
}

pub fn split_prime(k: &QuadraticField, p: u64) -> Result<PrimeSplitting, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let disc = k.discriminant;
    if disc % p == 0 {
        return Ok(PrimeSplitting { p, kind: SplitKind::Ramified, root: None });
    }
    if p == 2 {
        let kind = if k.d % 8 == 1 { SplitKind::Split } else { SplitKind::Inert };
        return Ok(PrimeSplitting { p, kind, root: None });
    }
    if legendre(disc, p) == 1 {
        Ok(PrimeSplitting { p, kind: SplitKind::Split, root: Some(sqrt_mod(disc, p)) })
    } else {
        Ok(PrimeSplitting { p, kind: SplitKind::Inert, root: None })
    }
}

/// Number of ideals of `O_K` of norm `m`.
pub fn ideals_of_norm(k: &QuadraticField, m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    factorize(m)
        .into_iter()
        .map(|(p, e)| match split_prime(k, p).expect("factor is prime").kind {
            SplitKind::Split => e as u64 + 1,
            SplitKind::Inert => u64::from(e % 2 == 0),
            SplitKind::Ramified => 1,
        })
        .product()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PrimeIdealSymbol {
    pub p: u64,
    pub kind: SplitKind,
    /// 0 or 1 for the two primes above a split `p`, else 0.
    pub conjugate: u8,
}

impl PrimeIdealSymbol {
    pub fn norm(&self) -> u128 {
        match self.kind {
            SplitKind::Inert => self.p as u128 * self.p as u128,
            _ => self.p as u128,
        }
    }
}

impl fmt::Display for PrimeIdealSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SplitKind::Split => write!(f, "P{}{}", self.p, if self.conjugate == 0 { "" } else { "'" }),
            _ => write!(f, "P{}", self.p),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactoredIdeal {
    disc: u64,
    factors: Vec<(PrimeIdealSymbol, u32)>,
}

impl FactoredIdeal {
    pub fn unit(k: &QuadraticField) -> Self {
        Self { disc: k.discriminant, factors: vec![] }
    }

    /// Merges repeated symbols and sorts; zero exponents are dropped.
    pub fn new(k: &QuadraticField, factors: Vec<(PrimeIdealSymbol, u32)>) -> Self {
        let mut factors: Vec<_> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        factors.sort();
        let mut merged: Vec<(PrimeIdealSymbol, u32)> = vec![];
        for (s, e) in factors {
            match merged.last_mut() {
                Some((t, f)) if *t == s => *f += e,
                _ => merged.push((s, e)),
            }
        }
        Self { disc: k.discriminant, factors: merged }
    }

    pub fn factors(&self) -> &[(PrimeIdealSymbol, u32)] {
        &self.factors
    }

    pub fn norm(&self) -> u128 {
        self.factors.iter().map(|(s, e)| s.norm().pow(*e)).product()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Prime (equivalently maximal, for nonzero ideals of a Dedekind domain).
    pub fn is_prime(&self) -> bool {
        matches!(self.factors.as_slice(), [(_, 1)])
    }

    fn exponent(&self, s: &PrimeIdealSymbol) -> u32 {
        self.factors.iter().find(|(t, _)| t == s).map_or(0, |&(_, e)| e)
    }
}

impl fmt::Display for FactoredIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "O_K");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// `b ⊆ a`: every exponent of `a` is at most that of `b`.
pub fn contains(a: &FactoredIdeal, b: &FactoredIdeal) -> Result<bool, FieldError> {
    if a.disc != b.disc {
        return Err(FieldError::FieldMismatch(a.disc, b.disc));
    }
    Ok(a.factors.iter().all(|(s, e)| *e <= b.exponent(s)))
}

/// Smallest rational prime that is not inert, with its first prime symbol.
pub fn smallest_non_inert_prime(k: &QuadraticField) -> PrimeIdealSymbol {
    // the primes dividing disc ramify, so the search terminates
    (2..)
        .filter(|&p| is_prime(p))
        .map(|p| split_prime(k, p).expect("p is prime"))
        .find(|s| s.kind != SplitKind::Inert)
        .map(|s| PrimeIdealSymbol { p: s.p, kind: s.kind, conjugate: 0 })
        .expect("a non-inert prime exists")
}

/// `[P^k, P^{k-1}, ..., P]` for the smallest non-inert prime `P`; each entry
/// is strictly contained in the next.
pub fn ideal_chain(k: &QuadraticField, length: u32) -> Vec<FactoredIdeal> {
    let p = smallest_non_inert_prime(k);
    (1..=length)
        .rev()
        .map(|e| FactoredIdeal::new(k, vec![(p, e)]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q5() -> QuadraticField {
        make_field(5).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let k = q5();
        assert_eq!((k.d(), k.discriminant()), (5, 5));
        assert_eq!(k.basis_description(), "Z[(1+sqrt(5))/2]");
        let k = make_field(525).unwrap();
        assert_eq!(k.d(), 21);
        assert_eq!(k.radicand_raw(), 525);
        assert_eq!(make_field(4), Err(FieldError::PerfectSquare(4)));
        assert_eq!(make_field(1), Err(FieldError::RadicandTooSmall(1)));
        assert_eq!(make_field(u64::MAX), Err(FieldError::TooLargeToFactor(u64::MAX)));
        let k = make_field(12).unwrap();
        assert_eq!((k.d(), k.discriminant()), (3, 12));
        assert_eq!(k.basis_description(), "Z[sqrt(3)]");
    }

    #[test]
    fn split_examples() {
        let k = q5();
        assert_eq!(split_prime(&k, 5).unwrap().kind, SplitKind::Ramified);
        let s = split_prime(&k, 11).unwrap();
        assert_eq!((s.kind, s.root), (SplitKind::Split, Some(4)));
        assert_eq!(split_prime(&k, 13).unwrap().kind, SplitKind::Inert);
        assert_eq!(split_prime(&k, 2).unwrap().kind, SplitKind::Inert);
        assert_eq!(split_prime(&k, 12), Err(FieldError::NotPrime(12)));
        assert_eq!(split_prime(&make_field(17).unwrap(), 2).unwrap().kind, SplitKind::Split);
        assert_eq!(split_prime(&make_field(3).unwrap(), 2).unwrap().kind, SplitKind::Ramified);
    }

    #[test]
    fn split_roots_verify() {
        let k = make_field(221).unwrap();
        for s in k.splitting_table(500) {
            if let Some(r) = s.root {
                assert_eq!((r * r) % s.p, k.discriminant() % s.p);
            }
        }
    }

    #[test]
    fn norm_counts() {
        let k = q5();
        assert_eq!(ideals_of_norm(&k, 1), 1);
        assert_eq!(ideals_of_norm(&k, 11), 2);
        assert_eq!(ideals_of_norm(&k, 13), 0);
        assert_eq!(ideals_of_norm(&k, 169), 1);
        assert_eq!(ideals_of_norm(&k, 121), 3);
        assert_eq!(ideals_of_norm(&k, 25), 1);
    }

    #[test]
    fn chains() {
        let k = q5();
        let c = ideal_chain(&k, 1);
        assert_eq!(c.len(), 1);
        assert!(c[0].is_prime());
        assert_eq!(c[0].factors()[0].0, PrimeIdealSymbol { p: 5, kind: SplitKind::Ramified, conjugate: 0 });
        let c = ideal_chain(&k, 3);
        assert_eq!(c.len(), 3);
        assert!(!c[0].is_prime());
        for w in c.windows(2) {
            assert!(contains(&w[1], &w[0]).unwrap());
            assert!(!contains(&w[0], &w[1]).unwrap());
        }
        let k21 = make_field(21).unwrap();
        let c = ideal_chain(&k21, 2);
        assert_eq!(c[0].to_string(), "P3^2");
        assert_eq!(c[1].to_string(), "P3");
    }

    #[test]
    fn containment() {
        let k = make_field(21).unwrap();
        let p3 = FactoredIdeal::new(&k, vec![(PrimeIdealSymbol { p: 3, kind: SplitKind::Ramified, conjugate: 0 }, 1)]);
        let p7 = FactoredIdeal::new(&k, vec![(PrimeIdealSymbol { p: 7, kind: SplitKind::Ramified, conjugate: 0 }, 1)]);
        let p3sq = FactoredIdeal::new(&k, vec![(p3.factors()[0].0, 2)]);
        assert!(contains(&p3, &p3sq).unwrap());
        assert!(!contains(&p3sq, &p3).unwrap());
        assert!(!contains(&p3, &p7).unwrap());
        assert!(contains(&FactoredIdeal::unit(&k), &p7).unwrap());
        let other = FactoredIdeal::unit(&q5());
        assert_eq!(contains(&p3, &other), Err(FieldError::FieldMismatch(21, 5)));
        assert_eq!(p3sq.norm(), 9);
    }

    #[test]
    fn conductor() {
        let k = make_field(525).unwrap();
        assert_eq!(k.conductor_of(525), Some(5));
        assert_eq!(q5().conductor_of(5), Some(1));
        assert_eq!(k.conductor_of(22), None);
    }

    #[test]
    fn json_fields() {
        let v = q5().to_json(8);
        assert_eq!(v["D"], 5);
        assert_eq!(v["disc"], 5);
        assert_eq!(v["splitting"][2], serde_json::json!({"p": 5, "kind": "ramified"}));
    }
}
