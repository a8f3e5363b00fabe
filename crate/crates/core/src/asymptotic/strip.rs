//! Characteristic bases of `L_S^δ` modulo `L_S^{δ+depth}`.
//!
//! Each exponent lattice (class mod 1) is handled separately. On one class
//! the window points are `x_0 > x_1 > …` (step 1) inside the strip, and the
//! chain at `x_i` is padded to `M_i`, the number of roots of `det s^μ` (with
//! multiplicity) at or above `x_i`. Membership is the vanishing of the
//! principal part of `Θ` at every window point, a linear system whose
//! kernel is then given a flag-adapted Jordan basis for `T`.

use std::collections::BTreeMap;

use num::BigRational;
use serde::Serialize;

use crate::algebra::matrix::span_rank;
use crate::algebra::{laurent_expand, Gq, LaurentExpansion, Matrix, Vector};
use crate::error::{Error, Result};
use crate::local::jordan::{flag_jordan_basis, is_flag_adapted, Layout};
use crate::local::ChainVector;
use crate::mellin::{leading_roots, CompleteMellinSymbol, WeightContext};

use super::special::SpecialVector;

/// `Θ_l(Φ)` as Laurent data at `γ(Φ) − l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaValue(pub LaurentExpansion);

impl ThetaValue {
    pub fn expansion(&self) -> &LaurentExpansion {
        &self.0
    }

    pub fn pole_order(&self) -> usize {
        self.0.pole_order()
    }

    pub fn is_holomorphic(&self) -> bool {
        self.0.is_holomorphic()
    }
}

/// `Σ_{k=0}^{span} s^{μ−k}(x + k + w) Φ(x + k)[w]`, as a series in `w` placed
/// at `x`, known through `w^order`.
pub fn theta_at(
    phi: &SpecialVector,
    s: &CompleteMellinSymbol,
    x: &Gq,
    span: usize,
    order: i64,
) -> Result<LaurentExpansion> {
    let n = s.size();
    let mut acc = LaurentExpansion::zero(x.clone(), n, 1);
    for k in 0..=span {
        let y = x + &Gq::int(k as i64);
        let chain = phi.at(&y);
        if chain.is_empty() {
            continue;
        }
        let sk = s.try_term(k)?;
        if sk.is_zero() {
            continue;
        }
        let need = (order + chain.len() as i64).max(0) as usize;
        let l = laurent_expand(&sk, &y, need).at_point(x.clone());
        acc = acc.add(&l.mul(&chain.laurent(x)));
    }
    Ok(acc.truncate(order))
}

/// `Θ_l(Φ; S)`, known through `(z − γ + l)^0`.
pub fn theta(phi: &SpecialVector, s: &CompleteMellinSymbol, l: usize) -> Result<ThetaValue> {
    let n = s.size();
    let Some(p) = phi.gamma() else {
        return Ok(ThetaValue(LaurentExpansion::zero(Gq::zero(), n, 1)));
    };
    let x = p - &Gq::int(l as i64);
    Ok(ThetaValue(theta_at(phi, s, &x, l, 0)?))
}

/// A characteristic basis of `L^δ` modulo `L^{δ+depth}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripBasis {
    pub weight: Gq,
    pub depth: usize,
    pub vectors: Vec<SpecialVector>,
    /// `scheme[i][j−1] = m_i^j`: height of `Φ_i` over `Re z > line − j`.
    pub scheme: Vec<Vec<usize>>,
}

impl StripBasis {
    /// Sorts the vectors canonically and fills in the scheme.
    pub fn from_vectors(weight: Gq, depth: usize, mut vectors: Vec<SpecialVector>) -> Self {
        vectors.sort_by(SpecialVector::canonical_cmp);
        let line = line_of(&weight);
        let scheme = vectors
            .iter()
            .map(|v| scheme_row(v, &line, depth))
            .collect();
        StripBasis {
            weight,
            depth,
            vectors,
            scheme,
        }
    }

    pub fn empty(weight: Gq, depth: usize) -> Self {
        StripBasis::from_vectors(weight, depth, Vec::new())
    }

    pub fn weight_line(&self) -> BigRational {
        line_of(&self.weight)
    }

    /// `Σ_i m_i^{depth}`
    pub fn dimension(&self) -> usize {
        self.scheme
            .iter()
            .map(|r| r.last().copied().unwrap_or(0))
            .sum()
    }

    /// Characteristic tuples `(γ(Φ_i); m_i^1, …, m_i^{depth})`.
    pub fn characteristic(&self) -> Vec<(Gq, Vec<usize>)> {
        self.vectors
            .iter()
            .zip(&self.scheme)
            .map(|(v, r)| (v.gamma().cloned().unwrap_or_else(Gq::zero), r.clone()))
            .collect()
    }
}

fn line_of(delta: &Gq) -> BigRational {
    WeightContext::new(delta.clone(), 0)
        .expect("real weight")
        .weight_line()
}

fn cut(line: &BigRational, j: usize) -> BigRational {
    line - BigRational::from_integer((j as i64).into())
}

fn scheme_row(v: &SpecialVector, line: &BigRational, depth: usize) -> Vec<usize> {
    (1..=depth).map(|j| v.height_above(&cut(line, j))).collect()
}

/// Roots of `det s^μ` in the open strip, grouped by lattice, each class
/// sorted by decreasing real part.
fn strip_classes(
    s: &CompleteMellinSymbol,
    line: &BigRational,
    depth: usize,
    supplied: Option<&[Gq]>,
) -> Result<Vec<Vec<(Gq, usize)>>> {
    let roots = leading_roots(s, supplied)?;
    let bottom = cut(line, depth);
    let mut classes: Vec<Vec<(Gq, usize)>> = Vec::new();
    for (r, m) in &roots.roots {
        if r.re() == line || r.re() == &bottom {
            return Err(Error::PreconditionViolation(format!(
                "exponent {r} lies on a boundary line of the strip"
            )));
        }
        if !(r.re() < line && r.re() > &bottom) {
            continue;
        }
        match classes
            .iter_mut()
            .find(|c| (&c[0].0 - r).to_i64().is_some())
        {
            Some(c) => c.push((r.clone(), *m)),
            None => classes.push(vec![(r.clone(), *m)]),
        }
    }
    for c in &mut classes {
        c.sort_by(|a, b| b.0.re().cmp(a.0.re()));
    }
    Ok(classes)
}

/// Window of one class: points `x_i` and padded lengths `M_i`.
fn class_window(class: &[(Gq, usize)], bottom: &BigRational) -> (Vec<Gq>, Vec<usize>) {
    let top = class[0].0.clone();
    let mut pts = Vec::new();
    let mut lens = Vec::new();
    let mut acc = 0;
    let mut x = top;
    while x.re() > bottom {
        acc += class
            .iter()
            .filter(|(r, _)| r == &x)
            .map(|(_, m)| m)
            .sum::<usize>();
        pts.push(x.clone());
        lens.push(acc);
        x = &x - &Gq::one();
    }
    (pts, lens)
}

/// Coefficient rows of the principal parts of `Θ` at every window point.
fn membership_rows(s: &CompleteMellinSymbol, pts: &[Gq], layout: &Layout) -> Result<Vec<Vector>> {
    let n = layout.n;
    let dim = layout.dim();
    let mut blocks: BTreeMap<(usize, i64), Matrix> = BTreeMap::new();
    for i in 0..pts.len() {
        for k in 0..=i {
            let src = i - k;
            let m = layout.lens[src];
            if m == 0 {
                continue;
            }
            let sk = s.try_term(k)?;
            if sk.is_zero() {
                continue;
            }
            let l = laurent_expand(&sk, &pts[src], m);
            let Some(val) = l.valuation() else { continue };
            let off = layout.offset(src);
            for d in 1..=(m as i64 - val) {
                let block = blocks
                    .entry((i, d))
                    .or_insert_with(|| Matrix::zeros(n, dim));
                for r in 0..m {
                    let e = m as i64 - r as i64 - d;
                    if e < val {
                        continue;
                    }
                    let c = l.coeff(e)?;
                    block.add_block(0, off + r * n, &c);
                }
            }
        }
    }
    Ok(blocks
        .into_values()
        .flat_map(|b| b.to_rows())
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect())
}

fn class_basis(
    s: &CompleteMellinSymbol,
    class: &[(Gq, usize)],
    bottom: &BigRational,
) -> Result<Vec<SpecialVector>> {
    let n = s.size();
    let (pts, lens) = class_window(class, bottom);
    let layout = Layout::new(n, lens);
    let rows = membership_rows(s, &pts, &layout)?;
    let kernel = if rows.is_empty() {
        Matrix::identity(layout.dim()).to_rows()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    let expected: usize = class.iter().map(|(_, m)| m).sum();
    if kernel.len() != expected {
        return Err(Error::DegenerateBasis(format!(
            "membership space at {} has dimension {}, expected {expected}",
            pts[0],
            kernel.len()
        )));
    }
    let heads = flag_jordan_basis(&layout, &kernel, pts.len());
    let hs: Vec<Vector> = heads.iter().map(|(h, _)| h.clone()).collect();
    if !is_flag_adapted(&layout, &hs, pts.len(), kernel.len()) {
        return Err(Error::DegenerateBasis(format!(
            "no flag-adapted basis found on the lattice of {}",
            pts[0]
        )));
    }
    Ok(hs
        .iter()
        .map(|h| {
            let chains = (0..pts.len())
                .map(|i| {
                    let o = layout.offset(i);
                    ChainVector::from_flat(n, &h[o..o + layout.lens[i] * n])
                })
                .collect();
            SpecialVector::new(n, pts[0].clone(), chains)
        })
        .collect())
}

/// A characteristic basis of `L_S^δ` modulo `L_S^{δ+depth}`.
pub fn strip_basis(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    depth: usize,
) -> Result<StripBasis> {
    strip_basis_with_roots(s, w, depth, None)
}

/// As [`strip_basis`], with caller-supplied exponents of `det s^μ`.
pub fn strip_basis_with_roots(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    depth: usize,
    roots: Option<&[Gq]>,
) -> Result<StripBasis> {
    let line = w.weight_line();
    let bottom = cut(&line, depth);
    let classes = strip_classes(s, &line, depth, roots)?;
    let per_class: Vec<Result<Vec<SpecialVector>>> = std::thread::scope(|sc| {
        let handles: Vec<_> = classes
            .iter()
            .map(|c| sc.spawn(|| class_basis(s, c, &bottom)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("class worker panicked"))
            .collect()
    });
    let mut vectors = Vec::new();
    for r in per_class {
        vectors.extend(r?);
    }
    Ok(StripBasis::from_vectors(w.delta().clone(), depth, vectors))
}

/// Condition (b) at every depth step: for each `j` the leading chains
/// `T^{m_i^j − 1}Φ_i` over `Re z > line − j` are linearly independent. The
/// stored scheme must also match the vectors.
pub fn properness_check(basis: &StripBasis) -> bool {
    let line = basis.weight_line();
    for (v, row) in basis.vectors.iter().zip(&basis.scheme) {
        if *row != scheme_row(v, &line, basis.depth) {
            return false;
        }
    }
    for j in 1..=basis.depth {
        let c = cut(&line, j);
        let leading: Vec<SpecialVector> = basis
            .vectors
            .iter()
            .filter_map(|v| {
                let m = v.height_above(&c);
                (m > 0).then(|| v.shift_t_pow(m - 1))
            })
            .collect();
        if !independent_above(&leading, &c) {
            return false;
        }
    }
    true
}

/// Linear independence of the restrictions to `Re z > c`.
fn independent_above(vs: &[SpecialVector], c: &BigRational) -> bool {
    if vs.is_empty() {
        return true;
    }
    let mut slots: BTreeMap<Gq, usize> = BTreeMap::new();
    for v in vs {
        for (p, ch) in v.points() {
            if p.re() > c {
                let e = slots.entry(p).or_insert(0);
                *e = (*e).max(ch.len());
            }
        }
    }
    let n = vs[0].size();
    let flat: Vec<Vector> = vs
        .iter()
        .map(|v| {
            slots
                .iter()
                .flat_map(|(p, &m)| v.at(p).flat(m))
                .collect::<Vector>()
        })
        .collect();
    if flat[0].is_empty() {
        return false;
    }
    debug_assert!(flat.iter().all(|f| f.len() % n == 0));
    span_rank(&flat) == vs.len()
}
