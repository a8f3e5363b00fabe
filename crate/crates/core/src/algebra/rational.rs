//! Rational matrix functions `M(z) / d(z)` with a scalar monic denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::matpoly::MatrixPolynomial;
use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::Gq;
use crate::error::{Error, Result};

/// Always kept reduced: the denominator is monic and shares no factor with
/// every numerator entry at once.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrixFunction {
    numerator: MatrixPolynomial,
    denominator: Poly,
}

impl RationalMatrixFunction {
    /// Panics if `den` is zero.
    pub fn new(numerator: MatrixPolynomial, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = numerator;
        let mut den = den;
        // make monic
        let lead = den.leading();
        if !lead.is_one() {
            let inv = lead.inv().expect("nonzero leading coefficient");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if num.is_zero() {
            return RationalMatrixFunction {
                numerator: num,
                denominator: Poly::one(),
            };
        }
        let mut g = den.clone();
        for row in num.entries() {
            for e in row {
                if g.is_constant() {
                    break;
                }
                g = Poly::gcd(&g, &e);
            }
        }
        if !g.is_constant() {
            let entries: Vec<Vec<Poly>> = num
                .entries()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.exact_div(&g).expect("gcd divides"))
                        .collect()
                })
                .collect();
            num = MatrixPolynomial::from_entries(&entries);
            den = den.exact_div(&g).expect("gcd divides");
        }
        RationalMatrixFunction {
            numerator: num,
            denominator: den,
        }
    }

    pub fn from_matpoly(m: MatrixPolynomial) -> Self {
        RationalMatrixFunction {
            numerator: m,
            denominator: Poly::one(),
        }
    }

    pub fn zero(size: usize) -> Self {
        RationalMatrixFunction::from_matpoly(MatrixPolynomial::zero(size))
    }

    pub fn identity(size: usize) -> Self {
        RationalMatrixFunction::from_matpoly(MatrixPolynomial::identity(size))
    }

    /// `num(z) / den(z) · I` for scalar data.
    pub fn scalar(size: usize, num: &Poly, den: &Poly) -> Self {
        RationalMatrixFunction::new(MatrixPolynomial::scalar(size, num), den.clone())
    }

    pub fn numerator(&self) -> &MatrixPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn size(&self) -> usize {
        self.numerator.size()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_constant()
    }

    /// Entry `(i, j)` as a reduced scalar fraction `(num, monic den)`.
    pub fn entry(&self, i: usize, j: usize) -> (Poly, Poly) {
        let r = RationalMatrixFunction::new(
            MatrixPolynomial::from_entries(&[vec![self.numerator.entry(i, j)]]),
            self.denominator.clone(),
        );
        (r.numerator.entry(0, 0), r.denominator)
    }

    /// Value at `z`, or `None` at a pole.
    pub fn eval(&self, z: &Gq) -> Option<Matrix> {
        let d = self.denominator.eval(z);
        let inv = d.inv()?;
        Some(self.numerator.eval(z).scale(&inv))
    }

    pub fn scale(&self, c: &Gq) -> Self {
        RationalMatrixFunction::new(self.numerator.scale(c), self.denominator.clone())
    }

    /// Entrywise `f(a z + b)`; `a` must be nonzero.
    pub fn compose_affine(&self, a: &Gq, b: &Gq) -> Self {
        RationalMatrixFunction::new(
            self.numerator.compose_affine(a, b),
            self.denominator.compose_affine(a, b),
        )
    }

    /// `f(z + c)`
    pub fn shift(&self, c: &Gq) -> Self {
        self.compose_affine(&Gq::one(), c)
    }

    /// Coefficientwise conjugate transpose: `z ↦ f(z̄)^*`.
    pub fn adjoint_coeffs(&self) -> Self {
        RationalMatrixFunction::new(self.numerator.adjoint_coeffs(), self.denominator.conj())
    }

    /// Transpose without conjugation.
    pub fn transpose(&self) -> Self {
        RationalMatrixFunction::new(self.numerator.transpose(), self.denominator.clone())
    }

    pub fn mul_matpoly(&self, m: &MatrixPolynomial) -> Self {
        RationalMatrixFunction::new(&self.numerator * m, self.denominator.clone())
    }

    pub fn matpoly_mul(m: &MatrixPolynomial, f: &Self) -> Self {
        RationalMatrixFunction::new(m * &f.numerator, f.denominator.clone())
    }
}

/// Inverse of a square matrix polynomial as `adj(m) / det(m)`.
pub fn matrix_inverse_rational(m: &MatrixPolynomial) -> Result<RationalMatrixFunction> {
    let det = m.det();
    if det.is_zero() {
        return Err(Error::SingularSymbol);
    }
    Ok(RationalMatrixFunction::new(m.adjugate(), det))
}

/// Inverse of a rational matrix function.
pub fn rational_inverse(f: &RationalMatrixFunction) -> Result<RationalMatrixFunction> {
    let inv = matrix_inverse_rational(f.numerator())?;
    Ok(RationalMatrixFunction::new(
        inv.numerator().mul_poly(f.denominator()),
        inv.denominator().clone(),
    ))
}

impl fmt::Display for RationalMatrixFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_constant() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

impl fmt::Debug for RationalMatrixFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rational({self})")
    }
}

fn lcm_parts(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let g = Poly::gcd(a, b);
    let fa = b.exact_div(&g).expect("gcd divides");
    let fb = a.exact_div(&g).expect("gcd divides");
    (&fa * a, fa, fb)
}

impl<'a> Add<&'a RationalMatrixFunction> for &'a RationalMatrixFunction {
    type Output = RationalMatrixFunction;
    fn add(self, o: &RationalMatrixFunction) -> RationalMatrixFunction {
        let (l, fa, fb) = lcm_parts(&self.denominator, &o.denominator);
        RationalMatrixFunction::new(
            &self.numerator.mul_poly(&fa) + &o.numerator.mul_poly(&fb),
            l,
        )
    }
}

impl<'a> Sub<&'a RationalMatrixFunction> for &'a RationalMatrixFunction {
    type Output = RationalMatrixFunction;
    fn sub(self, o: &RationalMatrixFunction) -> RationalMatrixFunction {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RationalMatrixFunction> for &'a RationalMatrixFunction {
    type Output = RationalMatrixFunction;
    fn mul(self, o: &RationalMatrixFunction) -> RationalMatrixFunction {
        if self.is_zero() || o.is_zero() {
            return RationalMatrixFunction::zero(self.size());
        }
        RationalMatrixFunction::new(
            &self.numerator * &o.numerator,
            &self.denominator * &o.denominator,
        )
    }
}

impl Neg for &RationalMatrixFunction {
    type Output = RationalMatrixFunction;
    fn neg(self) -> RationalMatrixFunction {
        RationalMatrixFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}
