//! Reference weights, the weight line, and ellipticity.

use num::BigRational;

use crate::algebra::{rational_roots, Gq, RootSet};
use crate::error::{Error, Result};

use super::operator::{conormal_symbol, FuchsOperator};
use super::symbol::CompleteMellinSymbol;

/// Dimension of the cross-section. The half-line model has a point as its
/// base, so this is the only place the value appears.
pub const DIM_X: i64 = 1;

/// Reference weight `δ` together with the operator order `μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightContext {
    delta: Gq,
    mu: i64,
}

impl WeightContext {
    pub fn new(delta: Gq, mu: i64) -> Result<Self> {
        if !delta.is_real() {
            return Err(Error::InvalidInput(format!("weight {delta} is not real")));
        }
        Ok(WeightContext { delta, mu })
    }

    pub fn delta(&self) -> &Gq {
        &self.delta
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn dim_x() -> Gq {
        Gq::int(DIM_X)
    }

    /// `Re z = dim X/2 − δ`
    pub fn weight_line(&self) -> BigRational {
        (Gq::ratio(DIM_X, 2) - &self.delta).re().clone()
    }

    /// `dim X − 2δ − μ + j`: the adjoint of term `j` evaluates at this
    /// point minus `z̄`.
    pub fn adjoint_center(&self, mu: i64, j: i64) -> Gq {
        &(&Gq::int(DIM_X - mu + j) - &self.delta) - &self.delta
    }

    /// `q = dim X − 2δ − p̄ − μ`
    pub fn reflect(&self, p: &Gq) -> Gq {
        &self.adjoint_center(self.mu, 0) - &p.conj()
    }

    /// Open strip `(line − depth, line)` in real parts.
    pub fn in_strip(&self, p: &Gq, depth: i64) -> bool {
        let top = self.weight_line();
        let bottom = &top - BigRational::from_integer(depth.into());
        p.re() < &top && p.re() > &bottom
    }

    /// Lines `Re z = dim X/2 − δ − μ + j`, `j = 0..=μ`.
    pub fn boundary_lines(&self) -> Vec<BigRational> {
        let top = self.weight_line();
        (0..=self.mu)
            .map(|j| &top - BigRational::from_integer((self.mu - j).into()))
            .collect()
    }

    /// Error if any of `roots` sits on a strip boundary line.
    pub fn check_boundary_lines(&self, roots: &[Gq]) -> Result<()> {
        let lines = self.boundary_lines();
        for r in roots {
            if lines.contains(r.re()) {
                return Err(Error::PreconditionViolation(format!(
                    "exponent {r} lies on the line Re z = {}",
                    Gq::from_rational(r.re().clone())
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticityReport {
    /// `det a_μ(0) ≠ 0` and `det σ^μ ≢ 0`.
    pub interior: bool,
    /// No root of `det σ^μ` on the weight line.
    pub weight_line_clear: bool,
    pub offending_roots: Vec<Gq>,
    /// Invertibility of `a_μ(t)` for `t > 0` is not examined.
    pub interior_checked_only_at_zero: bool,
}

impl EllipticityReport {
    pub fn is_elliptic(&self) -> bool {
        self.interior && self.weight_line_clear
    }
}

/// Roots of `det s^μ(z)`; `roots` overrides the search when supplied.
pub fn leading_roots(s: &CompleteMellinSymbol, supplied: Option<&[Gq]>) -> Result<RootSet> {
    let (num, _) = s.leading_det();
    if num.is_zero() {
        return Err(Error::SingularSymbol);
    }
    let r = match supplied {
        Some(hints) => crate::algebra::roots_with_hints(&num, hints),
        None => rational_roots(&num),
    };
    if r.nonrational_remainder {
        return Err(Error::UnsupportedExponentField(format!(
            "det of the principal symbol keeps the factor {}",
            r.remainder
        )));
    }
    Ok(r)
}

pub fn ellipticity_check(a: &FuchsOperator, w: &WeightContext) -> Result<EllipticityReport> {
    ellipticity_check_with_roots(a, w, None)
}

/// As [`ellipticity_check`], with caller-supplied exponents.
pub fn ellipticity_check_with_roots(
    a: &FuchsOperator,
    w: &WeightContext,
    supplied: Option<&[Gq]>,
) -> Result<EllipticityReport> {
    let det_p = a.principal_matrix().det();
    let det_s = conormal_symbol(a, 0).det();
    let interior = !det_p.is_zero() && !det_s.is_zero();
    if det_s.is_zero() {
        return Ok(EllipticityReport {
            interior,
            weight_line_clear: false,
            offending_roots: Vec::new(),
            interior_checked_only_at_zero: true,
        });
    }
    let s = CompleteMellinSymbol::from_operator(a);
    let roots = leading_roots(&s, supplied)?;
    let line = w.weight_line();
    let offending: Vec<Gq> = roots
        .roots
        .iter()
        .filter(|(r, _)| r.re() == &line)
        .map(|(r, _)| r.clone())
        .collect();
    Ok(EllipticityReport {
        interior,
        weight_line_clear: offending.is_empty(),
        offending_roots: offending,
        interior_checked_only_at_zero: true,
    })
}
