//! The full pipeline from an operator to its Green's formula, with every
//! identity it relies on checked along the way.

use num::BigRational;
use serde::Serialize;

use crate::algebra::{Gq, Matrix};
use crate::asymptotic::{
    conjugate_complete_basis, fundamental_check, generalized_keldysh_check, ConjugateBasis,
    SpecialVector,
};
use crate::error::{Error, Result};
use crate::mellin::{CompleteMellinSymbol, FuchsOperator, WeightContext};

use super::pairing::{
    boundary_pairing, conjugate_jordan_basis, domain_quotient_with_roots, pairing_matrix,
    DomainQuotient,
};
use super::render::{green_formula, GreenFormula};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GreenChecks {
    /// Both sides have the same multiset of chain lengths.
    pub same_characteristic: bool,
    pub nondegenerate: bool,
    /// `[TΦ,Ψ]_A + [Φ,TΨ]_A = 0` on all basis pairs.
    pub skew: bool,
    /// `[T^rΦ_i, T^sΨ_j]_A = (−1)^{s+1}` for `j = τ*(i)`, `r + s = m_i − 1`,
    /// and `0` otherwise.
    pub pattern: bool,
    /// The residue-table route and the Gram-matrix route give the same
    /// conjugate basis.
    pub routes_agree: bool,
    /// Generalized Keldysh bounds at every window point, `j ≤ l < μ`.
    pub keldysh: bool,
    /// Principal parts of the inverse terms `j < μ` rebuilt from both bases.
    pub fundamental: bool,
}

impl GreenChecks {
    pub fn all(&self) -> bool {
        self.same_characteristic
            && self.nondegenerate
            && self.skew
            && self.pattern
            && self.routes_agree
            && self.keldysh
            && self.fundamental
    }

    /// Names of the checks that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.same_characteristic, "same_characteristic"),
            (self.nondegenerate, "nondegenerate"),
            (self.skew, "skew"),
            (self.pattern, "pattern"),
            (self.routes_agree, "routes_agree"),
            (self.keldysh, "keldysh"),
            (self.fundamental, "fundamental"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, n)| n)
        .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GreenReport {
    pub primal: DomainQuotient,
    /// Jordan basis of the adjoint quotient, vectors in canonical order.
    pub adjoint: DomainQuotient,
    /// `tau[i]` is the adjoint vector conjugate to primal vector `i`.
    pub tau: Vec<usize>,
    /// `[primal.jordan_basis[a], adjoint.jordan_basis[b]]_A`.
    pub pairing: Vec<Vec<Gq>>,
    pub checks: GreenChecks,
    pub verified: bool,
    pub formula: GreenFormula,
}

/// Text and structured form of the formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedGreen {
    pub text: String,
    pub formula: GreenFormula,
}

pub fn render_green_formula(report: &GreenReport) -> RenderedGreen {
    RenderedGreen {
        text: report.formula.text(),
        formula: report.formula.clone(),
    }
}

fn expected_entry(
    primal: &DomainQuotient,
    adjoint: &DomainQuotient,
    tau: &[usize],
    a: usize,
    b: usize,
) -> Gq {
    let (i, r) = primal.labels[a];
    let (j, s) = adjoint.labels[b];
    let m = primal.basis.vectors[i].height();
    if tau[i] == j && r + s + 1 == m {
        if s % 2 == 0 {
            Gq::int(-1)
        } else {
            Gq::one()
        }
    } else {
        Gq::zero()
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Window points `γ, γ − 1, …` above `line − μ` for every lattice that
/// carries a primal vector.
fn window_points(vs: &[SpecialVector], w: &WeightContext) -> Vec<Gq> {
    let bottom = &w.weight_line() - BigRational::from_integer(w.mu().into());
    let mut out: Vec<Gq> = Vec::new();
    for v in vs {
        let Some(g) = v.gamma() else { continue };
        let mut x = g.clone();
        while x.re() > &bottom {
            if !out.contains(&x) {
                out.push(x.clone());
            }
            x = &x - &Gq::one();
        }
    }
    out
}

fn keldysh_everywhere(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: &DomainQuotient,
    conj: &ConjugateBasis,
) -> Result<bool> {
    let mu = s.mu().max(0) as usize;
    for p in window_points(&primal.basis.vectors, w) {
        for l in 0..mu {
            for j in 0..=l {
                if !generalized_keldysh_check(s, w, &primal.basis, conj, &p, l, j)?.passed() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn skew_holds(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: &DomainQuotient,
    adjoint: &DomainQuotient,
) -> Result<bool> {
    for phi in &primal.jordan_basis {
        let tphi = phi.shift_t();
        for psi in &adjoint.jordan_basis {
            let a = boundary_pairing(s, w, &tphi, psi)?;
            let b = boundary_pairing(s, w, phi, &psi.shift_t())?;
            if !(&a + &b).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Runs the pipeline for a symbol whose leading roots are known (or can be
/// found), with the quotient already built.
pub fn verify_quotient(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: DomainQuotient,
) -> Result<GreenReport> {
    let w = WeightContext::new(w.delta().clone(), s.mu())?;
    let mu = s.mu().max(0) as usize;
    let conj = conjugate_complete_basis(s, &w, mu, &primal.basis)?;
    let adjoint = DomainQuotient::from_basis(s.mu(), conj.basis.clone());
    let pairing = pairing_matrix(s, &w, &primal.jordan_basis, &adjoint.jordan_basis)?;

    let mut checks = GreenChecks {
        same_characteristic: sorted(primal.characteristic()) == sorted(adjoint.characteristic()),
        ..GreenChecks::default()
    };
    let square = pairing.len() == adjoint.dimension();
    checks.nondegenerate =
        square && (pairing.is_empty() || !Matrix::from_rows(pairing.clone()).det().is_zero());
    checks.pattern = square
        && pairing.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, x)| *x == expected_entry(&primal, &adjoint, &conj.tau, a, b))
        });
    checks.skew = skew_holds(s, &w, &primal, &adjoint)?;
    checks.routes_agree = match conjugate_jordan_basis(s, &w, &primal) {
        Ok(other) => other == conj,
        Err(Error::DegenerateBasis(_)) => false,
        Err(e) => return Err(e),
    };
    checks.keldysh = keldysh_everywhere(s, &w, &primal, &conj)?;
    checks.fundamental = fundamental_check(s, &w, mu, &primal.basis, &conj)?
        .iter()
        .all(|e| e.matches);

    let formula = green_formula(s, &w, &primal, &adjoint)?;
    Ok(GreenReport {
        verified: checks.all(),
        primal,
        adjoint,
        tau: conj.tau,
        pairing,
        checks,
        formula,
    })
}

/// `D(A_max)/D(A_min)`, its conjugate Jordan basis and the Green's formula.
pub fn verify_theorem_main(a: &FuchsOperator, w: &WeightContext) -> Result<GreenReport> {
    verify_theorem_main_with_roots(a, w, None)
}

pub fn verify_theorem_main_with_roots(
    a: &FuchsOperator,
    w: &WeightContext,
    roots: Option<&[Gq]>,
) -> Result<GreenReport> {
    let primal = domain_quotient_with_roots(a, w, roots)?;
    verify_quotient(&CompleteMellinSymbol::from_operator(a), w, primal)
}
