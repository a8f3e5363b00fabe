//! Complete Mellin symbols, the Mellin translation product and the adjoint.

use std::fmt;

use crate::algebra::{Gq, Poly, RationalMatrixFunction};
use crate::error::{Error, Result};

use super::operator::{conormal_symbol, FuchsOperator};
use super::weight::WeightContext;

/// How far the term sequence is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Support {
    /// Every term past the stored ones is zero.
    Finite,
    /// Terms past the stored ones are unknown.
    Truncated,
}

/// `{s^{μ−j}(z)}_{j ≥ 0}` stored as `terms[j] = s^{μ−j}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CompleteMellinSymbol {
    mu: i64,
    size: usize,
    terms: Vec<RationalMatrixFunction>,
    support: Support,
}

impl CompleteMellinSymbol {
    /// Finite support: trailing zero terms are dropped (term 0 is kept).
    pub fn finite(mu: i64, size: usize, mut terms: Vec<RationalMatrixFunction>) -> Self {
        assert!(
            terms.iter().all(|t| t.size() == size),
            "symbol term size mismatch"
        );
        while terms.len() > 1 && terms.last().is_some_and(RationalMatrixFunction::is_zero) {
            terms.pop();
        }
        if terms.is_empty() {
            terms.push(RationalMatrixFunction::zero(size));
        }
        CompleteMellinSymbol {
            mu,
            size,
            terms,
            support: Support::Finite,
        }
    }

    /// First `terms.len()` terms of a sequence whose tail is unknown.
    pub fn truncated(mu: i64, size: usize, terms: Vec<RationalMatrixFunction>) -> Self {
        assert!(!terms.is_empty(), "truncated symbol needs term 0");
        assert!(
            terms.iter().all(|t| t.size() == size),
            "symbol term size mismatch"
        );
        CompleteMellinSymbol {
            mu,
            size,
            terms,
            support: Support::Truncated,
        }
    }

    /// Conormal symbols of a Fuchs-type operator.
    pub fn from_operator(a: &FuchsOperator) -> Self {
        let terms = (0..=a.t_degree())
            .map(|j| RationalMatrixFunction::from_matpoly(conormal_symbol(a, j)))
            .collect();
        CompleteMellinSymbol::finite(a.mu() as i64, a.size(), terms)
    }

    /// `{id, 0, 0, …}` of order 0.
    pub fn identity(size: usize) -> Self {
        CompleteMellinSymbol::finite(0, size, vec![RationalMatrixFunction::identity(size)])
    }

    pub fn mu(&self) -> i64 {
        self.mu
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn support(&self) -> Support {
        self.support
    }

    pub fn stored_terms(&self) -> &[RationalMatrixFunction] {
        &self.terms
    }

    /// Number of terms that are known (`None` when all are).
    pub fn known_len(&self) -> Option<usize> {
        match self.support {
            Support::Finite => None,
            Support::Truncated => Some(self.terms.len()),
        }
    }

    /// `s^{μ−j}`, or `None` past the truncation.
    pub fn term(&self, j: usize) -> Option<RationalMatrixFunction> {
        match self.terms.get(j) {
            Some(t) => Some(t.clone()),
            None => match self.support {
                Support::Finite => Some(RationalMatrixFunction::zero(self.size)),
                Support::Truncated => None,
            },
        }
    }

    /// `s^{μ−j}` or [`Error::BeyondTruncation`].
    pub fn try_term(&self, j: usize) -> Result<RationalMatrixFunction> {
        self.term(j).ok_or(Error::BeyondTruncation {
            requested: j as i64,
            order: self.terms.len() as i64 - 1,
        })
    }

    /// Keep only the first `k` terms, marking the tail unknown.
    pub fn truncate(&self, k: usize) -> Self {
        let terms = (0..k.max(1))
            .map(|j| self.term(j).expect("known term"))
            .collect();
        CompleteMellinSymbol::truncated(self.mu, self.size, terms)
    }

    /// Equality on the first `k` terms.
    pub fn agrees_to(&self, other: &Self, k: usize) -> bool {
        self.mu == other.mu
            && self.size == other.size
            && (0..k).all(|j| match (self.term(j), other.term(j)) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            })
    }

    /// Equality on every term known to both sides.
    pub fn agrees(&self, other: &Self) -> bool {
        let k = match (self.known_len(), other.known_len()) {
            (None, None) => self.terms.len().max(other.terms.len()),
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.min(b),
        };
        self.agrees_to(other, k)
    }

    /// `det s^μ(z)` as a reduced fraction `(numerator, monic denominator)`.
    pub fn leading_det(&self) -> (Poly, Poly) {
        let t0 = &self.terms[0];
        let num = t0.numerator().det();
        let den = t0.denominator().pow(self.size as u32);
        let g = Poly::gcd(&num, &den);
        if g.is_zero() || g.is_constant() {
            return (num, den);
        }
        (
            num.exact_div(&g).expect("gcd divides"),
            den.exact_div(&g).expect("gcd divides"),
        )
    }
}

impl fmt::Debug for CompleteMellinSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol(order {}; ", self.mu)?;
        for (j, t) in self.terms.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        if self.support == Support::Truncated {
            write!(f, ", …")?;
        }
        write!(f, ")")
    }
}

/// Mellin translation product:
/// `u^{μ+ν−l}(z) = Σ_{j+k=l} s^{μ−j}(z+ν−k) t^{ν−k}(z)`.
pub fn mtp(s: &CompleteMellinSymbol, t: &CompleteMellinSymbol) -> Result<CompleteMellinSymbol> {
    if s.size() != t.size() {
        return Err(Error::DimensionMismatch(format!(
            "symbol sizes {} and {}",
            s.size(),
            t.size()
        )));
    }
    let n = s.size();
    let nu = t.mu();
    let known = match (s.known_len(), t.known_len()) {
        (None, None) => None,
        (Some(a), None) | (None, Some(a)) => Some(a),
        (Some(a), Some(b)) => Some(a.min(b)),
    };
    let len = known.unwrap_or(s.stored_terms().len() + t.stored_terms().len() - 1);
    let mut out = Vec::with_capacity(len);
    for l in 0..len {
        let mut acc = RationalMatrixFunction::zero(n);
        for k in 0..=l {
            let j = l - k;
            let sj = s.term(j).expect("known term");
            let tk = t.term(k).expect("known term");
            if sj.is_zero() || tk.is_zero() {
                continue;
            }
            let shifted = sj.shift(&Gq::int(nu - k as i64));
            acc = &acc + &(&shifted * &tk);
        }
        out.push(acc);
    }
    Ok(match known {
        None => CompleteMellinSymbol::finite(s.mu() + nu, n, out),
        Some(_) => CompleteMellinSymbol::truncated(s.mu() + nu, n, out),
    })
}

/// Formal adjoint: `r^{μ−j}(z) = s^{μ−j}(dim X − 2δ − z̄ − μ + j)^*`.
pub fn adjoint_symbol(s: &CompleteMellinSymbol, w: &WeightContext) -> CompleteMellinSymbol {
    let terms: Vec<RationalMatrixFunction> = s
        .stored_terms()
        .iter()
        .enumerate()
        .map(|(j, t)| {
            let c = w.adjoint_center(s.mu(), j as i64);
            t.adjoint_coeffs().compose_affine(&Gq::int(-1), &c)
        })
        .collect();
    match s.support() {
        Support::Finite => CompleteMellinSymbol::finite(s.mu(), s.size(), terms),
        Support::Truncated => CompleteMellinSymbol::truncated(s.mu(), s.size(), terms),
    }
}
