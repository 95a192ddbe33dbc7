use std::fmt;

use super::poly::{Monomial, Poly};

/// `numerator · x^shift` with a numerator divisible by no variable.
///
/// Negative entries of `shift` form the monomial denominator. Zero is
/// `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentFraction {
    shift: Vec<i64>,
    numerator: Poly,
}

impl LaurentFraction {
    pub fn zero(nvars: usize) -> Self {
        Self { shift: vec![0; nvars], numerator: Poly::zero(nvars) }
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut shift = vec![0; nvars];
        shift[i] = 1;
        Self { shift, numerator: Poly::one(nvars) }
    }

    /// Normalizes `poly · x^shift`.
    pub fn from_parts(poly: Poly, shift: Vec<i64>) -> Self {
        if poly.is_zero() {
            return Self::zero(poly.nvars());
        }
        let content = poly.monomial_content();
        let shift = shift.iter().zip(&content.0).map(|(s, &c)| s + c as i64).collect();
        Self { shift, numerator: poly.div_monomial(&content) }
    }

    pub fn nvars(&self) -> usize {
        self.shift.len()
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    /// Exponents of the monomial denominator.
    pub fn denominator_exponents(&self) -> Vec<u32> {
        self.shift.iter().map(|&s| if s < 0 { (-s) as u32 } else { 0 }).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Canonical-form invariant: no variable divides the numerator.
    pub fn is_reduced(&self) -> bool {
        if self.numerator.is_zero() {
            return self.shift.iter().all(|&s| s == 0);
        }
        self.numerator.monomial_content().is_one()
    }

    pub fn mul(&self, other: &LaurentFraction) -> LaurentFraction {
        // product of variable-free polynomials is variable-free
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a + b).collect();
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars());
        }
        Self { shift, numerator: self.numerator.mul(&other.numerator) }
    }

    pub fn pow(&self, e: u32) -> LaurentFraction {
        if e == 0 {
            return Self { shift: vec![0; self.nvars()], numerator: Poly::one(self.nvars()) };
        }
        Self {
            shift: self.shift.iter().map(|s| s * e as i64).collect(),
            numerator: self.numerator.pow(e),
        }
    }

    pub fn add(&self, other: &LaurentFraction) -> LaurentFraction {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let base: Vec<i64> = self.shift.iter().zip(&other.shift).map(|(a, b)| *a.min(b)).collect();
        let lift = |f: &LaurentFraction| {
            let m = Monomial(f.shift.iter().zip(&base).map(|(s, b)| (s - b) as u32).collect());
            f.numerator.mul_monomial(&m)
        };
        Self::from_parts(lift(self).add(&lift(other)), base)
    }

    /// `self / other`, or `None` when the quotient is not a Laurent
    /// polynomial.
    pub fn exact_div(&self, other: &LaurentFraction) -> Option<LaurentFraction> {
        let q = self.numerator.exact_div(&other.numerator)?;
        let shift = self.shift.iter().zip(&other.shift).map(|(a, b)| a - b).collect();
        Some(Self::from_parts(q, shift))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.numerator.all_coefficients_positive()
    }
}

fn monomial_string(exps: &[i64]) -> String {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let up: Vec<i64> = self.shift.iter().map(|&s| s.max(0)).collect();
        let down: Vec<i64> = self.shift.iter().map(|&s| (-s).max(0)).collect();
        let up_s = monomial_string(&up);
        let down_s = monomial_string(&down);
        let multi = self.numerator.term_count() > 1;
        let num = match (self.numerator.is_one(), up_s.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => up_s,
            (false, true) if multi && !down_s.is_empty() => format!("({})", self.numerator),
            (false, true) => self.numerator.to_string(),
            (false, false) if multi => format!("{up_s}*({})", self.numerator),
            (false, false) => format!("{up_s}*{}", self.numerator),
        };
        if down_s.is_empty() {
            write!(f, "{num}")
        } else if down.iter().filter(|&&d| d > 0).count() > 1 {
            write!(f, "{num}/({down_s})")
        } else {
            write!(f, "{num}/{down_s}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_form() {
        let x = LaurentFraction::variable(2, 0);
        assert!(x.is_reduced());
        assert_eq!(x.to_string(), "x1");
        assert_eq!(x.denominator_exponents(), vec![0, 0]);
    }

    #[test]
    fn add_and_divide() {
        let x1 = LaurentFraction::variable(2, 0);
        let x2 = LaurentFraction::variable(2, 1);
        let one = x1.pow(0);
        let r = x2.add(&one).exact_div(&x1).unwrap();
        assert_eq!(r.to_string(), "(x2+1)/x1");
        assert_eq!(r.denominator_exponents(), vec![1, 0]);
        let two_over = one.add(&one).exact_div(&x1).unwrap();
        assert_eq!(two_over.to_string(), "2/x1");
        assert!(x1.add(&one).exact_div(&x2.add(&one)).is_none());
    }

    #[test]
    fn content_moves_to_shift() {
        let x1 = LaurentFraction::variable(2, 0);
        let x2 = LaurentFraction::variable(2, 1);
        let s = x1.mul(&x2).add(&x1.pow(2));
        assert!(s.is_reduced());
        assert_eq!(s.shift(), &[1, 0]);
        assert_eq!(s.to_string(), "x1*(x1+x2)");
    }
}
