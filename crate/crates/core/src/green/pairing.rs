//! The quotient `D(A_max)/D(A_min)` as strip data, the boundary form on it
//! and the conjugate Jordan basis obtained from the Gram matrix.

use num::BigRational;
use serde::Serialize;

use crate::algebra::{laurent_expand, Gq, Matrix, Solution};
use crate::asymptotic::{strip_basis_with_roots, ConjugateBasis, SpecialVector, StripBasis};
use crate::error::{Error, Result};
use crate::local::ChainVector;
use crate::mellin::{
    adjoint_symbol, ellipticity_check_with_roots, leading_roots, CompleteMellinSymbol,
    FuchsOperator, WeightContext,
};

/// A Jordan basis of `L^δ / L^{δ+μ−0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainQuotient {
    pub weight: Gq,
    pub mu: i64,
    pub basis: StripBasis,
    /// `Φ_1, TΦ_1, …, T^{m_1−1}Φ_1, Φ_2, …`
    pub jordan_basis: Vec<SpecialVector>,
    /// `(i, r)` for each entry of `jordan_basis`.
    pub labels: Vec<(usize, usize)>,
}

impl DomainQuotient {
    pub fn from_basis(mu: i64, basis: StripBasis) -> Self {
        let mut jordan_basis = Vec::new();
        let mut labels = Vec::new();
        for (i, v) in basis.vectors.iter().enumerate() {
            for r in 0..v.height() {
                jordan_basis.push(v.shift_t_pow(r));
                labels.push((i, r));
            }
        }
        DomainQuotient {
            weight: basis.weight.clone(),
            mu,
            basis,
            jordan_basis,
            labels,
        }
    }

    pub fn dimension(&self) -> usize {
        self.jordan_basis.len()
    }

    /// `(m_1, …, m_e)`
    pub fn characteristic(&self) -> Vec<usize> {
        self.basis
            .vectors
            .iter()
            .map(SpecialVector::height)
            .collect()
    }
}

fn context(s: &CompleteMellinSymbol, w: &WeightContext) -> Result<WeightContext> {
    WeightContext::new(w.delta().clone(), s.mu())
}

/// Quotient for a symbol; roots on any line `Re z = line − μ + j` are
/// rejected.
pub fn domain_quotient_for_symbol(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    roots: Option<&[Gq]>,
) -> Result<DomainQuotient> {
    let w = context(s, w)?;
    let found = leading_roots(s, roots)?;
    let rs: Vec<Gq> = found.roots.iter().map(|(r, _)| r.clone()).collect();
    w.check_boundary_lines(&rs)?;
    let mu = s.mu();
    let basis = strip_basis_with_roots(s, &w, mu.max(0) as usize, roots)?;
    Ok(DomainQuotient::from_basis(mu, basis))
}

/// `D(A_max)/D(A_min) ≅ L_A^δ / L_A^{δ+μ−0}`.
pub fn domain_quotient(a: &FuchsOperator, w: &WeightContext) -> Result<DomainQuotient> {
    domain_quotient_with_roots(a, w, None)
}

pub fn domain_quotient_with_roots(
    a: &FuchsOperator,
    w: &WeightContext,
    roots: Option<&[Gq]>,
) -> Result<DomainQuotient> {
    let w = WeightContext::new(w.delta().clone(), a.mu() as i64)?;
    let report = ellipticity_check_with_roots(a, &w, roots)?;
    if !report.interior {
        return Err(Error::PreconditionViolation(
            "the principal coefficient is not invertible at t = 0".into(),
        ));
    }
    if !report.weight_line_clear {
        return Err(Error::PreconditionViolation(format!(
            "exponents on the weight line Re z = {}: {:?}",
            Gq::from_rational(w.weight_line()),
            report.offending_roots
        )));
    }
    domain_quotient_for_symbol(&CompleteMellinSymbol::from_operator(a), &w, roots)
}

/// `[Φ,Ψ]_A = −Σ_{k<μ} Σ_p Res_{z=p} ⟨s^{μ−k}(z)Φ(p)[z−p], IΨ(q+k)[z−p]⟩`
/// over `line − μ + k < Re p < line`, `q = dim X − 2δ − p̄ − μ`. The
/// pairing itself is bilinear; `I` carries the conjugation.
pub fn boundary_pairing(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    phi: &SpecialVector,
    psi: &SpecialVector,
) -> Result<Gq> {
    let w = context(s, w)?;
    let line = w.weight_line();
    let mu = s.mu();
    let mut acc = Gq::zero();
    for k in 0..mu.max(0) {
        let low = &line - BigRational::from_integer((mu - k).into());
        let sk = s.try_term(k as usize)?;
        if sk.is_zero() {
            continue;
        }
        for (p, chain) in phi.points() {
            if !(p.re() > &low && p.re() < &line) {
                continue;
            }
            let q = &w.reflect(&p) + &Gq::int(k);
            let row: ChainVector = psi.at(&q).invol_i();
            if row.is_empty() {
                continue;
            }
            let l = laurent_expand(&sk, &p, row.len() + chain.len());
            let prod = row.laurent_row(&p).mul(&l.mul(&chain.laurent(&p)));
            acc -= prod.residue().get(0, 0);
        }
    }
    Ok(acc)
}

/// `[rows_a, cols_b]_A` for all pairs.
pub fn pairing_matrix(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    rows: &[SpecialVector],
    cols: &[SpecialVector],
) -> Result<Vec<Vec<Gq>>> {
    rows.iter()
        .map(|phi| {
            cols.iter()
                .map(|psi| boundary_pairing(s, w, phi, psi))
                .collect()
        })
        .collect()
}

/// Conjugate Jordan basis through the Gram matrix: starting from any Jordan
/// basis `C` of the adjoint quotient, solve `[T^rΦ_k, Ψ_i] = −δ_{ik}δ_{r,m_i−1}`
/// for each `Ψ_i` in the span of `C`.
pub fn conjugate_jordan_basis(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: &DomainQuotient,
) -> Result<ConjugateBasis> {
    let w = context(s, w)?;
    let r = adjoint_symbol(s, &w);
    let mu = s.mu().max(0) as usize;
    let candidates = DomainQuotient::from_basis(s.mu(), strip_basis_with_roots(&r, &w, mu, None)?);
    let d = primal.dimension();
    if candidates.dimension() != d {
        return Err(Error::DegenerateBasis(format!(
            "quotients of dimension {d} and {} cannot be paired",
            candidates.dimension()
        )));
    }
    if d == 0 {
        return Ok(ConjugateBasis::from_partners(
            w.delta().clone(),
            mu,
            Vec::new(),
        ));
    }
    let g = Matrix::from_rows(pairing_matrix(
        s,
        &w,
        &primal.jordan_basis,
        &candidates.jordan_basis,
    )?);
    let heights = primal.characteristic();
    let mut partners = Vec::new();
    for (i, &m) in heights.iter().enumerate() {
        let target: Vec<Gq> = primal
            .labels
            .iter()
            .map(|&(k, r)| {
                if k == i && r + 1 == m {
                    Gq::int(-1)
                } else {
                    Gq::zero()
                }
            })
            .collect();
        let y = match g.solve(&target) {
            Solution::Unique(y) => y,
            _ => {
                return Err(Error::DegenerateBasis(
                    "the boundary form is degenerate".into(),
                ))
            }
        };
        let n = s.size();
        let mut pts: Vec<(Gq, ChainVector)> = Vec::new();
        for (c, v) in y.iter().zip(&candidates.jordan_basis) {
            if c.is_zero() {
                continue;
            }
            let c = c.conj();
            pts.extend(v.points().into_iter().map(|(p, ch)| (p, ch.scale(&c))));
        }
        let Some((p0, _)) = pts.first() else {
            return Err(Error::DegenerateBasis(format!("vector {i} has no partner")));
        };
        if pts.iter().any(|(p, _)| (p - p0).to_i64().is_none()) {
            return Err(Error::DegenerateBasis(format!(
                "partner of vector {i} spreads over several lattices"
            )));
        }
        partners.push(SpecialVector::from_points(n, &pts));
    }
    Ok(ConjugateBasis::from_partners(
        w.delta().clone(),
        mu,
        partners,
    ))
}
