//! Local asymptotic types of a holomorphic matrix function at one point.

use serde::Serialize;

use crate::algebra::{
    laurent_expand, rational_inverse, Gq, LaurentExpansion, Matrix, RationalMatrixFunction,
    Solution,
};
use crate::error::{Error, Result};

use super::chain::ChainVector;
use super::jordan::{flag_jordan_basis, Layout};

/// `L_F` at `p` through a characteristic basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalType {
    pub point: Gq,
    pub basis: Vec<ChainVector>,
    pub characteristic: Vec<usize>,
}

impl LocalType {
    pub fn empty(point: Gq) -> Self {
        LocalType {
            point,
            basis: Vec::new(),
            characteristic: Vec::new(),
        }
    }

    /// `Σ m_i`
    pub fn dim(&self) -> usize {
        self.characteristic.iter().sum()
    }
}

/// Multiplicity of `p` as a zero of `det F`, for `F` holomorphic at `p`.
pub fn det_multiplicity(f: &RationalMatrixFunction, p: &Gq) -> Result<usize> {
    let det = f.numerator().det();
    if det.is_zero() {
        return Err(Error::SingularSymbol);
    }
    if f.denominator().eval(p).is_zero() {
        return Err(Error::InvalidInput(format!("function has a pole at {p}")));
    }
    Ok(det.root_multiplicity(p))
}

/// Block-Toeplitz system `Σ_{n+r=l} F_n φ_r = 0`, `l < m`, on padded chains
/// of length `m`.
fn toeplitz(taylor: &[Matrix], n: usize, m: usize) -> Matrix {
    let mut a = Matrix::zeros(m * n, m * n);
    for l in 0..m {
        for r in 0..=l {
            let k = l - r;
            if let Some(fk) = taylor.get(k) {
                a.add_block(l * n, r * n, fk);
            }
        }
    }
    a
}

fn taylor_coeffs(f: &RationalMatrixFunction, p: &Gq, m: usize) -> Vec<Matrix> {
    let l = laurent_expand(f, p, m);
    (0..m as i64)
        .map(|k| l.coeff(k).expect("within order"))
        .collect()
}

/// Characteristic basis of `L_F` at `p`, chains sorted by decreasing
/// length and then lexicographically.
pub fn jordan_chains(f: &RationalMatrixFunction, p: &Gq) -> Result<LocalType> {
    let n = f.size();
    let mult = det_multiplicity(f, p)?;
    if mult == 0 {
        return Ok(LocalType::empty(p.clone()));
    }
    let taylor = taylor_coeffs(f, p, mult);
    let kernel = toeplitz(&taylor, n, mult).kernel();
    let layout = Layout::new(n, vec![mult]);
    let heads = flag_jordan_basis(&layout, &kernel, 0);
    let mut basis: Vec<ChainVector> = heads
        .iter()
        .map(|(h, _)| ChainVector::from_flat(n, h))
        .collect();
    basis.sort_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| a.entries().cmp(b.entries()))
    });
    let characteristic = basis.iter().map(ChainVector::len).collect();
    Ok(LocalType {
        point: p.clone(),
        basis,
        characteristic,
    })
}

/// `Σ_i (Φ_i ⊗ Ψ_i)[z − p]` with the bilinear tensor `φ ψ^t`; each pair is
/// padded to `max(m(Φ_i), m(Ψ_i))`.
pub fn tensor_principal(
    p: &Gq,
    pairs: &[(ChainVector, ChainVector)],
    n: usize,
) -> LaurentExpansion {
    let mut acc = LaurentExpansion::zero(p.clone(), n, n);
    for (phi, psi) in pairs {
        let m = phi.len().max(psi.len());
        let a = phi.padded(m);
        let b = psi.padded(m);
        let coeffs: Vec<Matrix> = (0..m)
            .map(|k| {
                let mut c = Matrix::zeros(n, n);
                for r in 0..=k {
                    c = &c + &(&Matrix::column(&a[r]) * &Matrix::column(&b[k - r]).transpose());
                }
                c
            })
            .collect();
        acc = acc.add(&LaurentExpansion::from_coeffs(
            p.clone(),
            n,
            n,
            -(m as i64),
            coeffs,
            None,
        ));
    }
    acc
}

/// Principal part of `F^{−1}` at `p` as an exact Laurent polynomial.
pub fn inverse_principal(f: &RationalMatrixFunction, p: &Gq) -> Result<LaurentExpansion> {
    let inv = rational_inverse(f)?;
    let l = laurent_expand(&inv, p, 0);
    let nu = l.pole_order();
    let n = f.size();
    Ok(LaurentExpansion::from_coeffs(
        p.clone(),
        n,
        n,
        -(nu as i64),
        l.principal(),
        None,
    ))
}

/// The conjugate basis `Ψ_i` of `L_{F^t}` with
/// `[F^{−1}]_p^* = Σ (Φ_i ⊗ Ψ_i)[z − p]`.
pub fn conjugate_local_basis(
    f: &RationalMatrixFunction,
    p: &Gq,
    primal: &LocalType,
) -> Result<LocalType> {
    let n = f.size();
    if primal.basis.is_empty() {
        return Ok(LocalType::empty(p.clone()));
    }
    let target = inverse_principal(f, p)?;
    let nu = target.pole_order();
    let lens: Vec<usize> = primal.basis.iter().map(ChainVector::len).collect();
    let offsets: Vec<usize> = lens
        .iter()
        .scan(0, |s, &m| {
            let o = *s;
            *s += m * n;
            Some(o)
        })
        .collect();
    let unknowns: usize = lens.iter().sum::<usize>() * n;
    // equation (d, row, col): coefficient of (z−p)^{−d}
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let dmax = nu.max(*lens.iter().max().unwrap_or(&0));
    for d in 1..=dmax {
        let t = target.coeff(-(d as i64)).expect("exact");
        for row in 0..n {
            for col in 0..n {
                let mut eq = vec![Gq::zero(); unknowns];
                for (i, phi) in primal.basis.iter().enumerate() {
                    let m = lens[i];
                    if d > m {
                        continue;
                    }
                    let k = m - d;
                    for r in 0..=k {
                        let s = k - r;
                        let coef = &phi.entry(r)[row];
                        if coef.is_zero() {
                            continue;
                        }
                        eq[offsets[i] + s * n + col] += coef;
                    }
                }
                rows.push(eq);
                rhs.push(t.get(row, col).clone());
            }
        }
    }
    let x = match Matrix::from_rows(rows).solve(&rhs) {
        Solution::Unique(x) => x,
        Solution::None => {
            return Err(Error::DegenerateBasis(
                "principal part of the inverse is not matched by the primal chains".into(),
            ))
        }
        Solution::Family(..) => {
            return Err(Error::DegenerateBasis(
                "conjugate local basis is not unique".into(),
            ))
        }
    };
    let basis: Vec<ChainVector> = lens
        .iter()
        .enumerate()
        .map(|(i, &m)| ChainVector::from_flat(n, &x[offsets[i]..offsets[i] + m * n]))
        .collect();
    let characteristic = basis.iter().map(ChainVector::len).collect();
    Ok(LocalType {
        point: p.clone(),
        basis,
        characteristic,
    })
}

/// `⟨F(z)Φ[z−p], Ψ[z−p]⟩` (bilinear) as an exact-enough Laurent series.
pub fn local_product(
    f: &RationalMatrixFunction,
    p: &Gq,
    phi: &ChainVector,
    psi: &ChainVector,
) -> LaurentExpansion {
    let order = phi.len() + psi.len();
    let fl = laurent_expand(f, p, order);
    psi.laurent_row(p).mul(&fl.mul(&phi.laurent(p)))
}

/// `[Φ, Ψ]_F = Res_{z=p} ⟨F(z)Φ[z−p], Ψ[z−p]⟩`
pub fn local_pairing(
    f: &RationalMatrixFunction,
    p: &Gq,
    phi: &ChainVector,
    psi: &ChainVector,
) -> Gq {
    if phi.is_empty() || psi.is_empty() {
        return Gq::zero();
    }
    local_product(f, p, phi, psi).residue().get(0, 0).clone()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KeldyshReport {
    /// Pairs `(i, j)` whose residual is not holomorphic.
    pub violations: Vec<(usize, usize)>,
}

impl KeldyshReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `⟨F Φ_i, Ψ_j⟩ − δ_ij (z−p)^{−m_i}` must be holomorphic at `p`.
pub fn keldysh_check(
    f: &RationalMatrixFunction,
    p: &Gq,
    primal: &LocalType,
    conjugate: &LocalType,
) -> KeldyshReport {
    let mut violations = Vec::new();
    for (i, phi) in primal.basis.iter().enumerate() {
        for (j, psi) in conjugate.basis.iter().enumerate() {
            let mut r = local_product(f, p, phi, psi);
            if i == j {
                let m = primal.characteristic[i] as i64;
                let mono = LaurentExpansion::from_coeffs(
                    p.clone(),
                    1,
                    1,
                    -m,
                    vec![Matrix::identity(1)],
                    None,
                );
                r = r.sub(&mono);
            }
            if !r.is_holomorphic() {
                violations.push((i, j));
            }
        }
    }
    KeldyshReport { violations }
}

/// `[T^r Φ_i, T^s Ψ_j]_F` for all index quadruples, row-major in
/// `(i, r)` against `(j, s)`.
pub fn local_pairing_matrix(
    f: &RationalMatrixFunction,
    primal: &LocalType,
    conjugate: &LocalType,
) -> Vec<Vec<Gq>> {
    let p = &primal.point;
    let rows: Vec<ChainVector> = orbit(&primal.basis);
    let cols: Vec<ChainVector> = orbit(&conjugate.basis);
    rows.iter()
        .map(|phi| {
            cols.iter()
                .map(|psi| local_pairing(f, p, phi, psi))
                .collect()
        })
        .collect()
}

/// `Φ_1, TΦ_1, …, T^{m_1−1}Φ_1, Φ_2, …`
pub fn orbit(basis: &[ChainVector]) -> Vec<ChainVector> {
    basis
        .iter()
        .flat_map(|b| (0..b.len()).map(move |r| b.shift_t_pow(r)))
        .collect()
}

/// Flattened `(i, r)` labels matching [`orbit`].
pub fn orbit_labels(chars: &[usize]) -> Vec<(usize, usize)> {
    chars
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| (0..m).map(move |r| (i, r)))
        .collect()
}
