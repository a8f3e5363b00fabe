//! Truncated Laurent series of (rectangular) matrices at a point.

use std::fmt;

use super::matrix::Matrix;
use super::poly::Poly;
use super::rational::RationalMatrixFunction;
use super::scalar::Gq;
use crate::error::{Error, Result};

/// `Σ_{k ≥ val} C_k (z − p)^k`, known exactly through exponent `order`.
///
/// `order == None` means the series is a Laurent polynomial and every
/// coefficient beyond the stored ones is zero. The leading stored
/// coefficient is nonzero, so the pole order is tight.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentExpansion {
    point: Gq,
    rows: usize,
    cols: usize,
    val: i64,
    coeffs: Vec<Matrix>,
    order: Option<i64>,
}

impl LaurentExpansion {
    /// Coefficients start at exponent `val`; `order` as in the type docs.
    pub fn from_coeffs(
        point: Gq,
        rows: usize,
        cols: usize,
        val: i64,
        coeffs: Vec<Matrix>,
        order: Option<i64>,
    ) -> Self {
        let mut s = LaurentExpansion {
            point,
            rows,
            cols,
            val,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn zero(point: Gq, rows: usize, cols: usize) -> Self {
        LaurentExpansion::from_coeffs(point, rows, cols, 0, Vec::new(), None)
    }

    pub fn constant(point: Gq, m: Matrix) -> Self {
        let (r, c) = (m.rows(), m.cols());
        LaurentExpansion::from_coeffs(point, r, c, 0, vec![m], None)
    }

    /// Exact expansion of a column-vector chain `Σ_r φ_r (z−p)^{−(m−r)}`.
    pub fn from_chain(point: Gq, n: usize, entries: &[Vec<Gq>]) -> Self {
        let m = entries.len() as i64;
        let coeffs = entries.iter().map(|v| Matrix::column(v)).collect();
        LaurentExpansion::from_coeffs(point, n, 1, -m, coeffs, None)
    }

    fn normalize(&mut self) {
        if let Some(o) = self.order {
            let keep = (o - self.val + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().take_while(|m| m.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        while self.coeffs.last().is_some_and(Matrix::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = match self.order {
                Some(o) => o + 1,
                None => 0,
            };
        }
    }

    pub fn point(&self) -> &Gq {
        &self.point
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Highest exponent with a known coefficient (`None` when exact).
    pub fn truncation_order(&self) -> Option<i64> {
        self.order
    }

    /// True when the known part is identically zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Tight pole order `ν` (zero when holomorphic).
    pub fn pole_order(&self) -> usize {
        match self.valuation() {
            Some(v) if v < 0 => (-v) as usize,
            _ => 0,
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.pole_order() == 0
    }

    /// Coefficient of `(z − p)^k`.
    pub fn coeff(&self, k: i64) -> Result<Matrix> {
        if let Some(o) = self.order {
            if k > o {
                return Err(Error::BeyondTruncation {
                    requested: k,
                    order: o,
                });
            }
        }
        let idx = k - self.val;
        Ok(if idx < 0 || idx as usize >= self.coeffs.len() {
            Matrix::zeros(self.rows, self.cols)
        } else {
            self.coeffs[idx as usize].clone()
        })
    }

    /// `F_0, …, F_{ν−1}`: `F_j` multiplies `(z − p)^{−ν+j}`.
    pub fn principal(&self) -> Vec<Matrix> {
        let nu = self.pole_order() as i64;
        (-nu..0)
            .map(|k| self.coeff(k).expect("principal part is known"))
            .collect()
    }

    /// Taylor coefficients `(z − p)^0 ..= (z − p)^order`; for exact series
    /// through the last nonzero one.
    pub fn taylor(&self) -> Vec<Matrix> {
        let top = match self.order {
            Some(o) => o,
            None => self.val + self.coeffs.len() as i64 - 1,
        };
        (0..=top)
            .map(|k| self.coeff(k).expect("within order"))
            .collect()
    }

    pub fn residue(&self) -> Matrix {
        self.coeff(-1).expect("residue is known")
    }

    /// Drop everything above exponent `o`.
    pub fn truncate(&self, o: i64) -> Self {
        let order = Some(self.order.map_or(o, |x| x.min(o)));
        LaurentExpansion::from_coeffs(
            self.point.clone(),
            self.rows,
            self.cols,
            self.val,
            self.coeffs.clone(),
            order,
        )
    }

    /// The same coefficients read as a series at `p`, i.e. the expansion of
    /// `w ↦ f(self.point + w)` placed at `p`.
    pub fn at_point(&self, p: Gq) -> Self {
        let mut s = self.clone();
        s.point = p;
        s
    }

    /// Multiply by `(z − p)^k`.
    pub fn mul_power(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.val += k;
        s.order = s.order.map(|o| o + k);
        s
    }

    pub fn scale(&self, c: &Gq) -> Self {
        LaurentExpansion::from_coeffs(
            self.point.clone(),
            self.rows,
            self.cols,
            self.val,
            self.coeffs.iter().map(|m| m.scale(c)).collect(),
            self.order,
        )
    }

    pub fn transpose(&self) -> Self {
        LaurentExpansion::from_coeffs(
            self.point.clone(),
            self.cols,
            self.rows,
            self.val,
            self.coeffs.iter().map(Matrix::transpose).collect(),
            self.order,
        )
    }

    fn check_compatible(&self, o: &Self) {
        assert_eq!(self.point, o.point, "Laurent series at different points");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compatible(o);
        assert_eq!(self.shape(), o.shape(), "Laurent sum shape");
        let order = match (self.order, o.order) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => Some(a.min(b)),
        };
        let lo = match (self.valuation(), o.valuation()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => {
                return LaurentExpansion::from_coeffs(
                    self.point.clone(),
                    self.rows,
                    self.cols,
                    0,
                    Vec::new(),
                    order,
                )
            }
        };
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64);
        let hi = order.map_or(hi, |x| hi.min(x + 1));
        let coeffs = (lo..hi)
            .map(|k| &self.coeff_raw(k) + &o.coeff_raw(k))
            .collect();
        LaurentExpansion::from_coeffs(self.point.clone(), self.rows, self.cols, lo, coeffs, order)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Gq::int(-1)))
    }

    fn coeff_raw(&self, k: i64) -> Matrix {
        let idx = k - self.val;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Matrix::zeros(self.rows, self.cols)
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Matrix product of two series at the same point.
    pub fn mul(&self, o: &Self) -> Self {
        self.check_compatible(o);
        assert_eq!(self.cols, o.rows, "Laurent product shape");
        let (rows, cols) = (self.rows, o.cols);
        let exact_zero = |s: &Self| s.is_zero() && s.order.is_none();
        if exact_zero(self) || exact_zero(o) {
            return LaurentExpansion::zero(self.point.clone(), rows, cols);
        }
        let order = match (self.order, o.order) {
            (None, None) => None,
            (Some(a), None) => Some(a + o.val),
            (None, Some(b)) => Some(b + self.val),
            (Some(a), Some(b)) => Some((a + o.val).min(b + self.val)),
        };
        let lo = self.val + o.val;
        let mut len = if self.coeffs.is_empty() || o.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() + o.coeffs.len() - 1
        };
        if let Some(x) = order {
            len = len.min((x - lo + 1).max(0) as usize);
        }
        let mut coeffs = vec![Matrix::zeros(rows, cols); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        LaurentExpansion::from_coeffs(self.point.clone(), rows, cols, lo, coeffs, order)
    }
}

/// Power series of `1/e(w)` through `w^n` (requires `e(0) ≠ 0`).
fn inverse_series(e: &[Gq], n: usize) -> Vec<Gq> {
    let e0inv = e[0].inv().expect("unit constant term");
    let mut out = Vec::with_capacity(n + 1);
    out.push(e0inv.clone());
    for k in 1..=n {
        let mut s = Gq::zero();
        for i in 1..=k.min(e.len() - 1) {
            s += &(&e[i] * &out[k - i]);
        }
        out.push(-(&s * &e0inv));
    }
    out
}

/// Laurent expansion of `f` at `p`, exact through `(z − p)^order`.
pub fn laurent_expand(f: &RationalMatrixFunction, p: &Gq, order: usize) -> LaurentExpansion {
    let n = f.size();
    let order = order as i64;
    let den = f.denominator().taylor_at(p);
    let nu = den.iter().take_while(|c| c.is_zero()).count();
    let e = &den[nu..];
    let num = f.numerator().taylor_at(p);
    // coefficients of w^{-nu} .. w^{order}
    let exact = e.len() == 1;
    let mut total = (order + nu as i64 + 1) as usize;
    if exact {
        total = total.max(num.len());
    }
    let inv = inverse_series(e, total.saturating_sub(1));
    let mut coeffs = vec![Matrix::zeros(n, n); total];
    for (k, c) in coeffs.iter_mut().enumerate() {
        for (i, m) in num.iter().enumerate().take(k + 1) {
            let s = &inv[k - i];
            if !s.is_zero() {
                *c = &*c + &m.scale(s);
            }
        }
    }
    LaurentExpansion::from_coeffs(
        p.clone(),
        n,
        n,
        -(nu as i64),
        coeffs,
        if exact { None } else { Some(order) },
    )
}

/// Scalar convenience: Laurent data of `num/den` at `p` as plain scalars.
pub fn scalar_laurent(num: &Poly, den: &Poly, p: &Gq, order: usize) -> LaurentExpansion {
    laurent_expand(&RationalMatrixFunction::scalar(1, num, den), p, order)
}

impl fmt::Debug for LaurentExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent@{}[", self.point)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "w^{}: {}", self.val + i as i64, c)?;
        }
        match self.order {
            Some(o) => write!(f, "; O(w^{})]", o + 1),
            None => write!(f, "]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: &Matrix) -> Gq {
        m.get(0, 0).clone()
    }

    #[test]
    fn simple_partial_fraction() {
        // 1/(z(z+1)) at 0: 1/z - 1 + z - ...
        let l = scalar_laurent(&Poly::one(), &Poly::from_ints(&[0, 1, 1]), &Gq::zero(), 1);
        let pr: Vec<Gq> = l.principal().iter().map(s).collect();
        let ta: Vec<Gq> = l.taylor().iter().map(s).collect();
        assert_eq!(pr, vec![Gq::one()]);
        assert_eq!(ta, vec![Gq::int(-1), Gq::one()]);
        assert!(matches!(l.coeff(2), Err(Error::BeyondTruncation { .. })));
    }

    #[test]
    fn double_pole() {
        // -1/(z(z+1)^2) at -1: 1/(z+1)^2 + 1/(z+1) + ...
        let l = scalar_laurent(
            &Poly::from_ints(&[-1]),
            &Poly::from_ints(&[0, 1, 2, 1]),
            &Gq::int(-1),
            2,
        );
        let pr: Vec<Gq> = l.principal().iter().map(s).collect();
        assert_eq!(pr, vec![Gq::one(), Gq::one()]);
        assert_eq!(l.pole_order(), 2);
    }

    #[test]
    fn polynomial_is_holomorphic_and_exact() {
        let l = scalar_laurent(&Poly::from_ints(&[1, 2, 3]), &Poly::one(), &Gq::int(5), 0);
        assert!(l.principal().is_empty());
        assert_eq!(l.truncation_order(), None);
        // p(5 + w) = 86 + 32 w + 3 w^2
        assert_eq!(s(&l.coeff(2).unwrap()), Gq::int(3));
    }

    #[test]
    fn tight_pole_order() {
        // z/(z^2) = 1/z
        let l = scalar_laurent(
            &Poly::from_ints(&[0, 1]),
            &Poly::from_ints(&[0, 0, 1]),
            &Gq::zero(),
            3,
        );
        assert_eq!(l.pole_order(), 1);
    }

    #[test]
    fn products_track_order() {
        let a = scalar_laurent(&Poly::one(), &Poly::from_ints(&[0, 1, 1]), &Gq::zero(), 4);
        let b = LaurentExpansion::from_chain(Gq::zero(), 1, &[vec![Gq::one()], vec![Gq::zero()]]);
        let c = a.mul(&b);
        assert_eq!(c.pole_order(), 3);
        assert_eq!(c.truncation_order(), Some(2));
    }
}
