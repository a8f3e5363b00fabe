//! Differential operators in Euler form and their Fuchs-type normal form.
//!
//! Operators are held as `Σ_e t^e P_e(D)` with `D = −t∂_t`, which makes
//! composition purely algebraic: `P(D) t^f = t^f P(D − f)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Gq, Matrix, MatrixPolynomial, Poly};
use crate::error::{Error, Result};

/// `Σ_e t^e P_e(D)` with `N×N` matrix polynomials `P_e`.
#[derive(Clone, PartialEq, Eq)]
pub struct EulerOperator {
    size: usize,
    terms: BTreeMap<i64, MatrixPolynomial>,
}

impl EulerOperator {
    pub fn zero(size: usize) -> Self {
        EulerOperator {
            size,
            terms: BTreeMap::new(),
        }
    }

    /// Multiplication by a constant matrix.
    pub fn constant(m: Matrix) -> Self {
        let n = m.rows();
        EulerOperator::monomial(0, MatrixPolynomial::constant(m)).with_size(n)
    }

    pub fn scalar(size: usize, c: &Gq) -> Self {
        EulerOperator::constant(Matrix::scalar(size, c))
    }

    pub fn identity(size: usize) -> Self {
        EulerOperator::scalar(size, &Gq::one())
    }

    /// `t^e P(D)`
    pub fn monomial(e: i64, p: MatrixPolynomial) -> Self {
        let size = p.size();
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(e, p);
        }
        EulerOperator { size, terms }
    }

    fn with_size(mut self, n: usize) -> Self {
        self.size = n;
        self
    }

    /// Multiplication by `t^e`.
    pub fn t_pow(size: usize, e: i64) -> Self {
        EulerOperator::monomial(e, MatrixPolynomial::identity(size))
    }

    /// `D = −t∂_t`
    pub fn euler_d(size: usize) -> Self {
        EulerOperator::monomial(0, MatrixPolynomial::scalar(size, &Poly::z()))
    }

    /// `θ = t∂_t = −D`
    pub fn theta(size: usize) -> Self {
        EulerOperator::monomial(
            0,
            MatrixPolynomial::scalar(size, &Poly::from_ints(&[0, -1])),
        )
    }

    /// `∂_t = −t^{−1} D`
    pub fn d_t(size: usize) -> Self {
        EulerOperator::monomial(
            -1,
            MatrixPolynomial::scalar(size, &Poly::from_ints(&[0, -1])),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn terms(&self) -> &BTreeMap<i64, MatrixPolynomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: i64, p: MatrixPolynomial) {
        let sum = match self.terms.remove(&e) {
            Some(q) => &q + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size, "operator size mismatch");
        let mut r = self.clone();
        for (e, p) in &o.terms {
            r.insert_add(*e, p.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        EulerOperator {
            size: self.size,
            terms: self.terms.iter().map(|(e, p)| (*e, -p)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Gq) -> Self {
        let mut r = EulerOperator::zero(self.size);
        for (e, p) in &self.terms {
            r.insert_add(*e, p.scale(c));
        }
        r
    }

    /// Composition `self ∘ o`.
    pub fn compose(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size, "operator size mismatch");
        let mut r = EulerOperator::zero(self.size);
        for (e, p) in &self.terms {
            for (f, q) in &o.terms {
                let shifted = p.shift(&Gq::int(-f));
                r.insert_add(e + f, &shifted * q);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = EulerOperator::identity(self.size);
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Highest `D`-degree (0 for the zero operator).
    pub fn order(&self) -> usize {
        self.terms
            .values()
            .filter_map(MatrixPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// Apply to `t^m v`; returns the result as `{power: vector}`.
    pub fn apply_monomial(&self, m: i64, v: &[Gq]) -> BTreeMap<i64, Vec<Gq>> {
        let mut out: BTreeMap<i64, Vec<Gq>> = BTreeMap::new();
        for (e, p) in &self.terms {
            let w = p.eval(&Gq::int(-m)).mul_vec(v);
            if w.iter().all(Gq::is_zero) {
                continue;
            }
            let slot = out
                .entry(e + m)
                .or_insert_with(|| vec![Gq::zero(); v.len()]);
            for (s, x) in slot.iter_mut().zip(&w) {
                *s += x;
            }
        }
        out.retain(|_, w| !w.iter().all(Gq::is_zero));
        out
    }
}

impl fmt::Debug for EulerOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "t^{e}*({p})(D)")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `A = t^{−μ} Σ_j a_j(t) (−t∂_t)^j` with matrix polynomial coefficients in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuchsOperator {
    mu: usize,
    size: usize,
    coeffs: Vec<MatrixPolynomial>,
}

impl FuchsOperator {
    /// `coeffs[j] = a_j(t)`; exactly `μ + 1` slots.
    pub fn new(mu: usize, coeffs: Vec<MatrixPolynomial>) -> Result<Self> {
        if coeffs.len() != mu + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coefficient slots, got {}",
                mu + 1,
                coeffs.len()
            )));
        }
        let size = coeffs[0].size();
        if coeffs.iter().any(|c| c.size() != size) {
            return Err(Error::DimensionMismatch("coefficient sizes differ".into()));
        }
        Ok(FuchsOperator { mu, size, coeffs })
    }

    /// Normal form of an Euler-form operator.
    pub fn from_euler(op: &EulerOperator) -> Result<Self> {
        let mu = op.order();
        let n = op.size();
        if let Some((&e, _)) = op.terms().iter().next() {
            if e < -(mu as i64) {
                return Err(Error::NotFuchsType(format!(
                    "term t^{e} survives below t^-{mu} for an operator of order {mu}"
                )));
            }
        }
        let mut tables: Vec<Vec<Matrix>> = vec![Vec::new(); mu + 1];
        for (e, p) in op.terms() {
            let tpow = (e + mu as i64) as usize;
            for (j, m) in p.coeffs().iter().enumerate() {
                let slot = &mut tables[j];
                if slot.len() <= tpow {
                    slot.resize(tpow + 1, Matrix::zeros(n, n));
                }
                slot[tpow] = &slot[tpow] + m;
            }
        }
        let coeffs = tables
            .into_iter()
            .map(|c| MatrixPolynomial::new(n, c))
            .collect();
        FuchsOperator::new(mu, coeffs)
    }

    pub fn to_euler(&self) -> EulerOperator {
        let mut r = EulerOperator::zero(self.size);
        for (j, a) in self.coeffs.iter().enumerate() {
            for (k, m) in a.coeffs().iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                let e = k as i64 - self.mu as i64;
                let p =
                    MatrixPolynomial::constant(m.clone()).mul_poly(&Poly::monomial(Gq::one(), j));
                r.insert_add(e, p);
            }
        }
        r
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a_0(t), …, a_μ(t)`
    pub fn coeffs(&self) -> &[MatrixPolynomial] {
        &self.coeffs
    }

    /// `a_μ(0)`
    pub fn principal_matrix(&self) -> Matrix {
        self.coeffs[self.mu].coeff(0)
    }

    /// Highest `t`-power among the coefficients.
    pub fn t_degree(&self) -> usize {
        self.coeffs
            .iter()
            .filter_map(MatrixPolynomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn compose(&self, o: &Self) -> Result<Self> {
        FuchsOperator::from_euler(&self.to_euler().compose(&o.to_euler()))
    }

    pub fn apply_monomial(&self, m: i64, v: &[Gq]) -> BTreeMap<i64, Vec<Gq>> {
        self.to_euler().apply_monomial(m, v)
    }
}

/// One summand `c(t) t^{−r} ∂_t^k` of a classical-form operator.
#[derive(Clone, Debug)]
pub struct ClassicalTerm {
    pub coeff: MatrixPolynomial,
    pub t_shift: i64,
    pub derivative: u32,
}

/// Rewrite `Σ c_k(t) t^{−r_k} ∂_t^k` in Fuchs form.
pub fn to_fuchs_form(terms: &[ClassicalTerm]) -> Result<FuchsOperator> {
    let n = terms
        .first()
        .map(|t| t.coeff.size())
        .ok_or_else(|| Error::InvalidInput("empty operator".into()))?;
    let mut acc = EulerOperator::zero(n);
    for term in terms {
        let mut c = EulerOperator::zero(n);
        for (k, m) in term.coeff.coeffs().iter().enumerate() {
            c = c.add(&EulerOperator::monomial(
                k as i64 - term.t_shift,
                MatrixPolynomial::constant(m.clone()),
            ));
        }
        acc = acc.add(&c.compose(&EulerOperator::d_t(n).pow(term.derivative)));
    }
    FuchsOperator::from_euler(&acc)
}

/// `σ_c^{μ−j}(A)(z) = Σ_k [t^j] a_k(t) · z^k`.
pub fn conormal_symbol(a: &FuchsOperator, j: usize) -> MatrixPolynomial {
    let n = a.size();
    MatrixPolynomial::new(n, a.coeffs().iter().map(|c| c.coeff(j)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_mp(c: &[i64]) -> MatrixPolynomial {
        MatrixPolynomial::scalar(1, &Poly::from_ints(c))
    }

    fn example_71() -> FuchsOperator {
        to_fuchs_form(&[
            ClassicalTerm {
                coeff: scalar_mp(&[1]),
                t_shift: 0,
                derivative: 3,
            },
            ClassicalTerm {
                coeff: scalar_mp(&[1]),
                t_shift: 1,
                derivative: 2,
            },
        ])
        .unwrap()
    }

    #[test]
    fn cubic_example_symbol() {
        let a = example_71();
        assert_eq!(a.mu(), 3);
        assert_eq!(conormal_symbol(&a, 0), scalar_mp(&[0, -1, -2, -1]));
        assert!(conormal_symbol(&a, 1).is_zero());
    }

    #[test]
    fn monomial_action_matches_classical() {
        // d^3 t^m = m(m-1)(m-2) t^{m-3}, t^-1 d^2 t^m = m(m-1) t^{m-3}
        let a = example_71();
        for m in 0..7i64 {
            let r = a.apply_monomial(m, &[Gq::one()]);
            let expect = m * (m - 1) * (m - 2) + m * (m - 1);
            let got = r.get(&(m - 3)).map(|v| v[0].clone()).unwrap_or_default();
            assert_eq!(got, Gq::int(expect));
        }
    }

    #[test]
    fn not_fuchs() {
        let r = to_fuchs_form(&[ClassicalTerm {
            coeff: scalar_mp(&[1]),
            t_shift: 2,
            derivative: 1,
        }]);
        assert!(matches!(r, Err(Error::NotFuchsType(_))));
    }

    #[test]
    fn round_trip_euler() {
        let a = example_71();
        assert_eq!(FuchsOperator::from_euler(&a.to_euler()).unwrap(), a);
    }
}
