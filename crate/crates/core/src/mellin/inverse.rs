//! Recursive inversion of complete Mellin symbols.
//!
//! For `S` of order `μ` the inverse `T` of order `−μ` is fixed by
//! `T ∘_M S = id`. Writing `T_l(z) = t^{−μ−l}(z+μ)` this reads
//!
//! `T_l(z) = −[Σ_{j<l} T_j(z − (l−j)) s^{μ−(l−j)}(z)] · s^μ(z)^{−1}`,
//!
//! with `T_0 = (s^μ)^{−1}`.

use std::sync::Mutex;

use crate::algebra::{
    laurent_expand, rational_inverse, rational_roots, Gq, Matrix, RationalMatrixFunction,
};
use crate::error::{Error, Result};

use super::symbol::CompleteMellinSymbol;

/// Lazily materialized inverse; terms are cached as they are requested.
pub struct InverseSymbol {
    symbol: CompleteMellinSymbol,
    lead_inv: RationalMatrixFunction,
    /// Shifted terms `T_l`.
    cache: Mutex<Vec<RationalMatrixFunction>>,
}

impl InverseSymbol {
    pub fn new(symbol: &CompleteMellinSymbol) -> Result<Self> {
        let lead_inv = rational_inverse(&symbol.try_term(0)?)?;
        Ok(InverseSymbol {
            symbol: symbol.clone(),
            lead_inv: lead_inv.clone(),
            cache: Mutex::new(vec![lead_inv]),
        })
    }

    /// Order of the inverse, `−μ`.
    pub fn mu(&self) -> i64 {
        -self.symbol.mu()
    }

    pub fn size(&self) -> usize {
        self.symbol.size()
    }

    /// `T_l(z) = t^{−μ−l}(z + μ)`.
    pub fn shifted_term(&self, l: usize) -> Result<RationalMatrixFunction> {
        let mut cache = self.cache.lock().expect("inverse cache poisoned");
        while cache.len() <= l {
            let next = self.next_term(&cache)?;
            cache.push(next);
        }
        Ok(cache[l].clone())
    }

    /// `t^{−μ−l}(z)`.
    pub fn term(&self, l: usize) -> Result<RationalMatrixFunction> {
        Ok(self.shifted_term(l)?.shift(&Gq::int(-self.symbol.mu())))
    }

    fn next_term(&self, done: &[RationalMatrixFunction]) -> Result<RationalMatrixFunction> {
        let l = done.len();
        let n = self.size();
        let mut acc = RationalMatrixFunction::zero(n);
        for (j, tj) in done.iter().enumerate() {
            let s = self.symbol.try_term(l - j)?;
            if s.is_zero() || tj.is_zero() {
                continue;
            }
            let shifted = tj.shift(&Gq::int(-((l - j) as i64)));
            acc = &acc + &(&shifted * &s);
        }
        Ok(-&(&acc * &self.lead_inv))
    }

    /// The first `k + 1` terms as a truncated symbol.
    pub fn materialize(&self, k: usize) -> Result<CompleteMellinSymbol> {
        let terms = (0..=k).map(|l| self.term(l)).collect::<Result<Vec<_>>>()?;
        Ok(CompleteMellinSymbol::truncated(
            self.mu(),
            self.size(),
            terms,
        ))
    }
}

/// First `k + 1` terms of the inverse of `s`.
pub fn invert_complete_symbol(s: &CompleteMellinSymbol, k: usize) -> Result<CompleteMellinSymbol> {
    InverseSymbol::new(s)?.materialize(k)
}

/// Poles and residues of `t^{−μ−k}(z + μ)` for an inverse symbol of order `−μ`.
pub fn residue_table(sinv: &CompleteMellinSymbol, k: usize) -> Result<Vec<(Gq, Matrix)>> {
    let term = sinv.try_term(k)?.shift(&Gq::int(-sinv.mu()));
    residues(&term)
}

/// Residues of a rational matrix function at all of its poles.
pub fn residues(f: &RationalMatrixFunction) -> Result<Vec<(Gq, Matrix)>> {
    let roots = rational_roots(f.denominator());
    if roots.nonrational_remainder {
        return Err(Error::UnsupportedExponentField(format!(
            "denominator keeps the factor {}",
            roots.remainder
        )));
    }
    Ok(roots
        .roots
        .iter()
        .map(|(p, _)| (p.clone(), laurent_expand(f, p, 0).residue()))
        .collect())
}
