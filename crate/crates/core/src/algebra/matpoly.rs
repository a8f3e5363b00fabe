//! Square matrix polynomials `Σ M_k z^k`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::matrix::Matrix;
use super::poly::Poly;
use super::scalar::Gq;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixPolynomial {
    size: usize,
    coeffs: Vec<Matrix>,
}

impl MatrixPolynomial {
    pub fn new(size: usize, mut coeffs: Vec<Matrix>) -> Self {
        assert!(
            coeffs.iter().all(|m| m.rows() == size && m.cols() == size),
            "coefficient shape mismatch"
        );
        while coeffs.last().is_some_and(Matrix::is_zero) {
            coeffs.pop();
        }
        MatrixPolynomial { size, coeffs }
    }

    pub fn zero(size: usize) -> Self {
        MatrixPolynomial {
            size,
            coeffs: Vec::new(),
        }
    }

    pub fn identity(size: usize) -> Self {
        MatrixPolynomial::constant(Matrix::identity(size))
    }

    pub fn constant(m: Matrix) -> Self {
        let n = m.rows();
        MatrixPolynomial::new(n, vec![m])
    }

    /// `p(z)·I`
    pub fn scalar(size: usize, p: &Poly) -> Self {
        MatrixPolynomial::new(
            size,
            p.coeffs().iter().map(|c| Matrix::scalar(size, c)).collect(),
        )
    }

    /// Build from an `N×N` table of entry polynomials.
    pub fn from_entries(entries: &[Vec<Poly>]) -> Self {
        let n = entries.len();
        let deg = entries
            .iter()
            .flatten()
            .filter_map(Poly::degree)
            .max()
            .map_or(0, |d| d + 1);
        let mut coeffs = vec![Matrix::zeros(n, n); deg];
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), n, "entry table must be square");
            for (j, p) in row.iter().enumerate() {
                for (k, c) in p.coeffs().iter().enumerate() {
                    coeffs[k].set(i, j, c.clone());
                }
            }
        }
        MatrixPolynomial::new(n, coeffs)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Matrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size, self.size))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        Poly::new(self.coeffs.iter().map(|m| m.get(i, j).clone()).collect())
    }

    pub fn entries(&self) -> Vec<Vec<Poly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn eval(&self, z: &Gq) -> Matrix {
        let mut acc = Matrix::zeros(self.size, self.size);
        for m in self.coeffs.iter().rev() {
            acc = &acc.scale(z) + m;
        }
        acc
    }

    pub fn scale(&self, c: &Gq) -> Self {
        MatrixPolynomial::new(self.size, self.coeffs.iter().map(|m| m.scale(c)).collect())
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self * &MatrixPolynomial::scalar(self.size, p)
    }

    /// Entrywise `p(a z + b)`.
    pub fn compose_affine(&self, a: &Gq, b: &Gq) -> Self {
        let lin = MatrixPolynomial::scalar(self.size, &Poly::new(vec![b.clone(), a.clone()]));
        let mut acc = MatrixPolynomial::zero(self.size);
        for m in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &MatrixPolynomial::constant(m.clone());
        }
        acc
    }

    /// `M(z + c)`
    pub fn shift(&self, c: &Gq) -> Self {
        self.compose_affine(&Gq::one(), c)
    }

    /// Conjugate transpose of every coefficient.
    pub fn adjoint_coeffs(&self) -> Self {
        MatrixPolynomial::new(self.size, self.coeffs.iter().map(Matrix::adjoint).collect())
    }

    /// Transpose of every coefficient (no conjugation).
    pub fn transpose(&self) -> Self {
        MatrixPolynomial::new(
            self.size,
            self.coeffs.iter().map(Matrix::transpose).collect(),
        )
    }

    /// Taylor coefficients at `p`: `M(p + w) = Σ C_k w^k`.
    pub fn taylor_at(&self, p: &Gq) -> Vec<Matrix> {
        self.shift(p).coeffs
    }

    /// Multiply by a vector of scalar polynomials.
    pub fn mul_poly_vec(&self, v: &[Poly]) -> Vec<Poly> {
        let e = self.entries();
        e.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Poly::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn det(&self) -> Poly {
        det_entries(&self.entries())
    }

    /// Adjugate: `adj(M)·M = M·adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let n = self.size;
        if n == 1 {
            return MatrixPolynomial::identity(1);
        }
        let e = self.entries();
        let mut adj = vec![vec![Poly::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<Poly>> = e
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != i)
                    .map(|(_, row)| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let d = det_entries(&minor);
                adj[j][i] = if (i + j) % 2 == 0 { d } else { -&d };
            }
        }
        MatrixPolynomial::from_entries(&adj)
    }
}

/// Laplace expansion along the first row.
fn det_entries(e: &[Vec<Poly>]) -> Poly {
    let n = e.len();
    match n {
        0 => Poly::one(),
        1 => e[0][0].clone(),
        2 => &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0]),
        _ => {
            let mut acc = Poly::zero();
            for j in 0..n {
                if e[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = e[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let t = &e[0][j] * &det_entries(&minor);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

impl fmt::Display for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size == 1 {
            return write!(f, "{}", self.entry(0, 0));
        }
        write!(f, "[")?;
        for (i, row) in self.entries().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixPolynomial({self})")
    }
}

impl<'a> Add<&'a MatrixPolynomial> for &'a MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn add(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.size, o.size, "matrix polynomial size mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        MatrixPolynomial::new(
            self.size,
            (0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect(),
        )
    }
}

impl<'a> Sub<&'a MatrixPolynomial> for &'a MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn sub(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.size, o.size, "matrix polynomial size mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        MatrixPolynomial::new(
            self.size,
            (0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect(),
        )
    }
}

impl<'a> Mul<&'a MatrixPolynomial> for &'a MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn mul(self, o: &MatrixPolynomial) -> MatrixPolynomial {
        assert_eq!(self.size, o.size, "matrix polynomial size mismatch");
        if self.is_zero() || o.is_zero() {
            return MatrixPolynomial::zero(self.size);
        }
        let mut v =
            vec![Matrix::zeros(self.size, self.size); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        MatrixPolynomial::new(self.size, v)
    }
}

impl Neg for &MatrixPolynomial {
    type Output = MatrixPolynomial;
    fn neg(self) -> MatrixPolynomial {
        MatrixPolynomial::new(self.size, self.coeffs.iter().map(|m| -m).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn det_and_adjugate() {
        let m = MatrixPolynomial::from_entries(&[
            vec![p(&[0, 1]), p(&[1])],
            vec![p(&[0]), p(&[-1, 1])],
        ]);
        assert_eq!(m.det(), p(&[0, -1, 1]));
        let prod = &m * &m.adjugate();
        assert_eq!(prod, MatrixPolynomial::scalar(2, &m.det()));
    }

    #[test]
    fn three_by_three_adjugate() {
        let m = MatrixPolynomial::from_entries(&[
            vec![p(&[1, 1]), p(&[2]), p(&[0, 0, 1])],
            vec![p(&[0]), p(&[0, 1]), p(&[3])],
            vec![p(&[1]), p(&[-1]), p(&[2, 1])],
        ]);
        let d = m.det();
        assert_eq!(&m.adjugate() * &m, MatrixPolynomial::scalar(3, &d));
        let z = Gq::ratio(3, 7);
        assert_eq!(d.eval(&z), m.eval(&z).det());
    }

    #[test]
    fn shift_matches_eval() {
        let m = MatrixPolynomial::from_entries(&[vec![p(&[1, 2, 3])]]);
        let s = m.shift(&Gq::int(2));
        assert_eq!(s.eval(&Gq::int(1)), m.eval(&Gq::int(3)));
    }
}
