//! The conjugate complete basis read off from the principal parts of the
//! inverse symbol, and the bilinear relations it satisfies.
//!
//! On one lattice with window points `x_0 > x_1 > …`, write `ht_h(x)` for
//! the height of `Φ_h` over the window points `≥ x`. The unknowns are
//! `X_h(x) = JΨ_{τ*(h)}(q)`, `q = dim X − 2δ − x̄ − μ`, of length
//! `ht_h(bottom) − ht_h(x+1)`. For every window point `x` and `j` with
//! `x − j` still in the window,
//!
//! `[t^{−μ−j}(z+μ)]_x^* = Σ_h (T^{ht_h(x+1)}Φ_h(x−j)) ⊗ (T^{…}X_h(x))[z−x]`,
//!
//! both factors taken with length `ht_h(x−j) − ht_h(x+1)`. The tensor is
//! `φ ψ^*`, so the system is linear in `conj X`.

use serde::Serialize;

use crate::algebra::{laurent_expand, Gq, LaurentExpansion, Matrix, Solution, Vector};
use crate::error::{Error, Result};
use crate::local::ChainVector;
use crate::mellin::{CompleteMellinSymbol, InverseSymbol, WeightContext};

use super::special::SpecialVector;
use super::strip::{theta_at, StripBasis};

/// Conjugate basis together with `τ*`: `tau[h]` indexes the partner of
/// primal vector `h` in `basis.vectors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjugateBasis {
    pub basis: StripBasis,
    pub tau: Vec<usize>,
}

impl ConjugateBasis {
    /// `partners[h]` is the vector conjugate to primal vector `h`.
    pub fn from_partners(weight: Gq, depth: usize, partners: Vec<SpecialVector>) -> Self {
        let mut order: Vec<usize> = (0..partners.len()).collect();
        order.sort_by(|&a, &b| partners[a].canonical_cmp(&partners[b]));
        let mut tau = vec![0; partners.len()];
        for (pos, &h) in order.iter().enumerate() {
            tau[h] = pos;
        }
        ConjugateBasis {
            basis: StripBasis::from_vectors(weight, depth, partners),
            tau,
        }
    }

    /// The vector conjugate to primal vector `h`.
    pub fn partner(&self, h: usize) -> &SpecialVector {
        &self.basis.vectors[self.tau[h]]
    }
}

/// Unknown `X_h(x_i)` lives at `offset .. offset + len * n`.
struct Slot {
    offset: usize,
    len: usize,
}

fn lattice_classes(vs: &[SpecialVector]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (h, v) in vs.iter().enumerate() {
        let Some(g) = v.gamma() else { continue };
        match classes.iter_mut().find(|c| vs[c[0]].same_lattice(g)) {
            Some(c) => c.push(h),
            None => classes.push(vec![h]),
        }
    }
    classes
}

fn window(top: &Gq, bottom: &num::BigRational) -> Vec<Gq> {
    let mut pts = Vec::new();
    let mut x = top.clone();
    while x.re() > bottom {
        pts.push(x.clone());
        x = &x - &Gq::one();
    }
    pts
}

/// Solve one lattice; returns `Ψ_h` for each `h` in `class`.
fn class_conjugates(
    inv: &InverseSymbol,
    w: &WeightContext,
    primal: &[SpecialVector],
    class: &[usize],
    bottom: &num::BigRational,
) -> Result<Vec<SpecialVector>> {
    let n = inv.size();
    let top = class
        .iter()
        .filter_map(|&h| primal[h].gamma())
        .max_by(|a, b| a.re().cmp(b.re()))
        .expect("nonempty class")
        .clone();
    // lattice points above every γ but still below the weight line carry
    // the tails of the conjugate vectors
    let line = w.weight_line();
    let mut top = top;
    while (&top + &Gq::one()).re() < &line {
        top = &top + &Gq::one();
    }
    let pts = window(&top, bottom);
    let np = pts.len();
    // ht[c][i]: height of class member c over x_0..x_i
    let ht: Vec<Vec<usize>> = class
        .iter()
        .map(|&h| {
            let mut acc = 0;
            pts.iter()
                .map(|x| {
                    acc = acc.max(primal[h].at(x).len());
                    acc
                })
                .collect()
        })
        .collect();
    let prev = |c: usize, i: usize| if i == 0 { 0 } else { ht[c][i - 1] };
    let mut slots: Vec<Vec<Slot>> = Vec::new();
    let mut dim = 0;
    for c in 0..class.len() {
        let total = ht[c][np - 1];
        let mut row = Vec::new();
        for i in 0..np {
            let len = total - prev(c, i);
            row.push(Slot { offset: dim, len });
            dim += len * n;
        }
        slots.push(row);
    }

    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<Gq> = Vec::new();
    for i in 0..np {
        for j in 0..np - i {
            let lhs = laurent_expand(&inv.shifted_term(j)?, &pts[i], 0);
            let nu = lhs.pole_order();
            let principal = lhs.principal();
            let mut terms: Vec<(usize, Vec<Vector>)> = Vec::new();
            let mut emax = nu;
            for (c, &h) in class.iter().enumerate() {
                let l = ht[c][i + j] - prev(c, i);
                if l == 0 {
                    continue;
                }
                let a = primal[h].at(&pts[i + j]).shift_t_pow(prev(c, i)).padded(l);
                terms.push((c, a));
                emax = emax.max(l);
            }
            for e in 1..=emax {
                let target = if e <= nu {
                    principal[nu - e].clone()
                } else {
                    Matrix::zeros(n, n)
                };
                for al in 0..n {
                    for be in 0..n {
                        let mut row = vec![Gq::zero(); dim];
                        for (c, a) in &terms {
                            let l = a.len();
                            if e > l {
                                continue;
                            }
                            let slot = &slots[*c][i];
                            for r in 0..=(l - e) {
                                let s = l - e - r;
                                row[slot.offset + s * n + be] += &a[r][al];
                            }
                        }
                        rows.push(row);
                        rhs.push(target.get(al, be).clone());
                    }
                }
            }
        }
    }
    let y = if dim == 0 {
        Vec::new()
    } else {
        match Matrix::from_rows(rows).solve(&rhs) {
            Solution::Unique(y) => y,
            Solution::None => {
                return Err(Error::DegenerateBasis(format!(
                    "principal parts of the inverse at {top} are not spanned by the primal basis"
                )))
            }
            Solution::Family(..) => {
                return Err(Error::DegenerateBasis(format!(
                    "conjugate basis on the lattice of {top} is not unique"
                )))
            }
        }
    };
    let mut out = Vec::new();
    for (c, &h) in class.iter().enumerate() {
        let pairs: Vec<(Gq, ChainVector)> = (0..np)
            .map(|i| {
                let slot = &slots[c][i];
                let x: Vec<Gq> = y[slot.offset..slot.offset + slot.len * n]
                    .iter()
                    .map(Gq::conj)
                    .collect();
                (w.reflect(&pts[i]), ChainVector::from_flat(n, &x).invol_j())
            })
            .collect();
        let psi = SpecialVector::from_points(n, &pairs);
        if psi.is_zero() {
            return Err(Error::DegenerateBasis(format!(
                "primal vector {h} has no partner"
            )));
        }
        out.push(psi);
    }
    Ok(out)
}

/// Conjugate complete basis modulo `L_R^{δ+μ}` for a primal basis of
/// `L_S^δ / L_S^{δ+depth}`; it lives at weight `δ + μ − depth`.
pub fn conjugate_complete_basis(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    depth: usize,
    primal: &StripBasis,
) -> Result<ConjugateBasis> {
    let mu = s.mu();
    let w = WeightContext::new(w.delta().clone(), mu)?;
    let weight = &(w.delta() + &Gq::int(mu)) - &Gq::int(depth as i64);
    if primal.vectors.is_empty() {
        return Ok(ConjugateBasis {
            basis: StripBasis::empty(weight, depth),
            tau: Vec::new(),
        });
    }
    let inv = InverseSymbol::new(s)?;
    let bottom = &w.weight_line() - num::BigRational::from_integer((depth as i64).into());
    let mut psis: Vec<Option<SpecialVector>> = vec![None; primal.vectors.len()];
    for class in lattice_classes(&primal.vectors) {
        let found = class_conjugates(&inv, &w, &primal.vectors, &class, &bottom)?;
        for (h, psi) in class.into_iter().zip(found) {
            psis[h] = Some(psi);
        }
    }
    let psis: Vec<SpecialVector> = psis
        .into_iter()
        .map(|p| p.expect("every vector is in a class"))
        .collect();
    Ok(ConjugateBasis::from_partners(weight, depth, psis))
}

/// One `(p, j)` comparison of the principal-part reconstruction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalEntry {
    pub point: Gq,
    pub j: usize,
    pub matches: bool,
}

/// Compares `[t^{−μ−j}(z+μ)]_p^*` with
/// `Σ_h T^{m_h^{p+1}}Φ_h(p−j) ⊗ T^{m_{h*}^{q+j+1}}JΨ_{h*}(q)[z−p]`
/// at every pole `p` of the inverse (and every window point of the primal
/// lattices) with `p − j` still inside the window, `j < depth`.
pub fn fundamental_check(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    depth: usize,
    primal: &StripBasis,
    conjugate: &ConjugateBasis,
) -> Result<Vec<FundamentalEntry>> {
    let w = WeightContext::new(w.delta().clone(), s.mu())?;
    let n = s.size();
    let inv = InverseSymbol::new(s)?;
    let line = w.weight_line();
    let bottom = &line - num::BigRational::from_integer((depth as i64).into());
    let mut points: Vec<Gq> = Vec::new();
    for v in &primal.vectors {
        if let Some(g) = v.gamma() {
            points.extend(window(g, &bottom));
        }
    }
    let terms = (0..depth)
        .map(|j| inv.shifted_term(j))
        .collect::<Result<Vec<_>>>()?;
    for t in &terms {
        let found = crate::algebra::rational_roots(t.denominator());
        if found.nonrational_remainder {
            return Err(Error::UnsupportedExponentField(format!(
                "denominator keeps the factor {}",
                found.remainder
            )));
        }
        points.extend(
            found
                .roots
                .into_iter()
                .map(|(p, _)| p)
                .filter(|p| p.re() < &line && p.re() > &bottom),
        );
    }
    points.sort();
    points.dedup();
    let mut out = Vec::new();
    for p in &points {
        let q = w.reflect(p);
        for (j, t) in terms.iter().enumerate() {
            let pj = p - &Gq::int(j as i64);
            if pj.re() <= &bottom {
                continue;
            }
            let lhs = laurent_expand(t, p, 0);
            let lhs = LaurentExpansion::from_coeffs(
                p.clone(),
                n,
                n,
                -(lhs.pole_order() as i64),
                lhs.principal(),
                None,
            );
            let mut pairs = Vec::new();
            for (h, phi) in primal.vectors.iter().enumerate() {
                let psi = conjugate.partner(h);
                let a = phi.at(&pj).shift_t_pow(phi.height_from(&(p + &Gq::one())));
                let k = psi.height_from(&(&q + &Gq::int(j as i64 + 1)));
                let b = psi.at(&q).invol_j().shift_t_pow(k).invol_c();
                if !a.is_empty() && !b.is_empty() {
                    pairs.push((a, b));
                }
            }
            let rhs = crate::local::tensor_principal(p, &pairs, n);
            out.push(FundamentalEntry {
                point: p.clone(),
                j,
                matches: lhs.sub(&rhs).is_zero(),
            });
        }
    }
    Ok(out)
}

/// One `(h, h*)` entry of the generalized Keldysh check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeldyshEntry {
    pub primal: usize,
    pub conjugate: usize,
    pub pole_order: usize,
    pub bound: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GeneralizedKeldyshReport {
    pub entries: Vec<KeldyshEntry>,
}

impl GeneralizedKeldyshReport {
    pub fn violations(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|e| e.pole_order > e.bound)
            .map(|e| (e.primal, e.conjugate))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

/// For all `h, h*`:
/// `Σ_{r=j}^{l} ⟨Θ_{l−r}(T^{m_h^{p+l+1}}Φ_h)[z+r], T^{m_{h*}^{q+1}}IΨ_{h*}(q−r)[z−p]⟩
///  − δ_{hh*}(z−p)^{−(m_h^p − m_h^{p+l+1})}`
/// must have pole order at most `m_g^p − m_g^{p+j}` at `p`, where `g` is the
/// primal vector with `τ*(g) = h*`.
#[allow(clippy::too_many_arguments)]
pub fn generalized_keldysh_check(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: &StripBasis,
    conjugate: &ConjugateBasis,
    p: &Gq,
    l: usize,
    j: usize,
) -> Result<GeneralizedKeldyshReport> {
    assert!(j <= l, "need j ≤ l");
    let w = WeightContext::new(w.delta().clone(), s.mu())?;
    let q = w.reflect(p);
    let shift = |x: &Gq, k: i64| x + &Gq::int(k);
    let mut entries = Vec::new();
    for (h, phi) in primal.vectors.iter().enumerate() {
        let m_p = phi.height_from(p);
        let m_top = phi.height_from(&shift(p, l as i64 + 1));
        let phi_t = phi.shift_t_pow(m_top);
        for (hs, psi) in conjugate.basis.vectors.iter().enumerate() {
            // the error term is governed by the primal vector paired with `hs`
            let owner = conjugate
                .tau
                .iter()
                .position(|&t| t == hs)
                .map_or(phi, |k| &primal.vectors[k]);
            let bound = owner.height_from(p) - owner.height_from(&shift(p, j as i64));
            let psi_t = psi.invol_i().shift_t_pow(psi.height_from(&shift(&q, 1)));
            let psi_len = psi_t.height();
            let mut acc = LaurentExpansion::zero(p.clone(), 1, 1);
            for r in j..=l {
                let row = psi_t.at(&shift(&q, -(r as i64)));
                if row.is_empty() {
                    continue;
                }
                let th = theta_at(&phi_t, s, &shift(p, r as i64), l - r, psi_len as i64 + 1)?
                    .at_point(p.clone());
                acc = acc.add(&row.laurent_row(p).mul(&th));
            }
            if conjugate.tau[h] == hs {
                let e = m_p - m_top;
                let mono = LaurentExpansion::from_coeffs(
                    p.clone(),
                    1,
                    1,
                    -(e as i64),
                    vec![Matrix::identity(1)],
                    None,
                );
                acc = acc.sub(&mono);
            }
            entries.push(KeldyshEntry {
                primal: h,
                conjugate: hs,
                pole_order: acc.pole_order(),
                bound,
            });
        }
    }
    Ok(GeneralizedKeldyshReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MatrixPolynomial, Poly, RationalMatrixFunction};
    use crate::asymptotic::strip::strip_basis;

    fn cubic() -> CompleteMellinSymbol {
        CompleteMellinSymbol::finite(
            3,
            1,
            vec![RationalMatrixFunction::from_matpoly(
                MatrixPolynomial::scalar(1, &Poly::from_ints(&[0, -1, -2, -1])),
            )],
        )
    }

    #[test]
    fn cubic_conjugates() {
        let s = cubic();
        let w = WeightContext::new(Gq::int(-1), 3).unwrap();
        let primal = strip_basis(&s, &w, 3).unwrap();
        let conj = conjugate_complete_basis(&s, &w, 3, &primal).unwrap();
        assert_eq!(
            conj.basis.vectors,
            vec![
                SpecialVector::single(Gq::int(1), ChainVector::scalar_ints(&[1, -1])),
                SpecialVector::single(Gq::int(0), ChainVector::scalar_ints(&[1])),
            ]
        );
        assert_eq!(conj.tau, vec![1, 0]);
        for p in [Gq::int(0), Gq::int(-1)] {
            for l in 0..3 {
                for j in 0..=l {
                    let rep = generalized_keldysh_check(&s, &w, &primal, &conj, &p, l, j).unwrap();
                    assert!(rep.passed(), "p={p} l={l} j={j}: {rep:?}");
                }
            }
        }
    }
}
