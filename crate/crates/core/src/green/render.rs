//! Green's formula as a sesquilinear expression in named expansion
//! coefficients.
//!
//! Every point `p` of a quotient gets one letter; the coefficient with
//! subscript `l` is entry `l` of the chain at `p`, padded to the longest
//! chain seen there. Through the expansion dictionary, entry `l` of an
//! `m`-chain multiplies `(−1)^k/k! t^{−p} log^k t` with `k = m − 1 − l`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::algebra::Gq;
use crate::asymptotic::SpecialVector;
use crate::error::Result;
use crate::local::ChainVector;
use crate::mellin::{CompleteMellinSymbol, WeightContext};

use super::pairing::{boundary_pairing, DomainQuotient};

const LETTERS: [&str; 19] = [
    "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "ν", "ξ", "ρ", "σ", "φ", "χ", "ψ", "ω",
];

/// One named coordinate: entry `index` (component `component`) of the
/// chain at `exponent`, padded to `length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub name: String,
    pub exponent: Gq,
    pub index: usize,
    pub length: usize,
    pub component: usize,
}

impl Coefficient {
    /// `(−1)^k/k!` and the text of `t^{−p} log^k t`.
    pub fn monomial(&self) -> (Gq, String) {
        let k = self.length - 1 - self.index;
        let fact: i64 = (1..=k as i64).product();
        let c = Gq::ratio(if k % 2 == 0 { 1 } else { -1 }, fact);
        let e = -&self.exponent;
        let mut body = String::new();
        if !e.is_zero() {
            if e.is_one() {
                body.push('t');
            } else if e.to_i64().is_some() {
                let _ = write!(body, "t^{e}");
            } else {
                let _ = write!(body, "t^({e})");
            }
        }
        if k > 0 {
            if !body.is_empty() {
                body.push(' ');
            }
            if k == 1 {
                body.push_str("log t");
            } else {
                let _ = write!(body, "log^{k} t");
            }
        }
        (c, body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenTerm {
    pub coefficient: Gq,
    pub primal: usize,
    pub adjoint: usize,
}

/// `[u,v]_A = Σ c · u_i · conj(v_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenFormula {
    pub size: usize,
    pub primal: Vec<Coefficient>,
    pub adjoint: Vec<Coefficient>,
    pub terms: Vec<GreenTerm>,
}

fn barred(name: &str) -> String {
    let mut cs = name.chars();
    match cs.next() {
        Some(first) => format!("{first}\u{304}{}", cs.as_str()),
        None => String::new(),
    }
}

/// Sign and magnitude text of a coefficient in a sum; `first` drops the
/// leading plus.
fn signed(c: &Gq, first: bool) -> (String, String) {
    let negative = c.is_real() && c.re() < &num::BigRational::from_integer(0.into());
    let mag = if negative { -c } else { c.clone() };
    let sign = match (negative, first) {
        (true, true) => "−".to_string(),
        (true, false) => " − ".to_string(),
        (false, true) => String::new(),
        (false, false) => " + ".to_string(),
    };
    let m = if mag.is_one() {
        String::new()
    } else if mag.is_real() {
        format!("{}·", mag)
    } else {
        format!("({mag})·")
    };
    (sign, m)
}

impl GreenFormula {
    /// `[u,v]_A = …` with Greek coefficient names.
    pub fn text(&self) -> String {
        if self.terms.is_empty() {
            return "[u,v]_A = 0".to_string();
        }
        let mut out = String::from("[u,v]_A = ");
        for (i, t) in self.terms.iter().enumerate() {
            let (sign, mag) = signed(&t.coefficient, i == 0);
            let _ = write!(
                out,
                "{sign}{mag}{}{}",
                self.primal[t.primal].name,
                barred(&self.adjoint[t.adjoint].name)
            );
        }
        out
    }

    fn expansion(&self, coeffs: &[Coefficient], var: &str) -> String {
        let mut out = format!("{var}(t) ~ ");
        let mut first = true;
        for c in coeffs {
            let (k, body) = c.monomial();
            let (sign, mag) = signed(&k, first);
            first = false;
            let comp = if self.size > 1 {
                format!(" e_{}", c.component + 1)
            } else {
                String::new()
            };
            let body = if body.is_empty() {
                String::new()
            } else {
                format!(" {body}")
            };
            let _ = write!(out, "{sign}{mag}{}{body}{comp}", c.name);
        }
        if first {
            out.push('0');
        }
        out
    }

    /// Singular part of `u` in the primal coefficients.
    pub fn primal_expansion(&self) -> String {
        self.expansion(&self.primal, "u")
    }

    /// Singular part of `v` in the adjoint coefficients.
    pub fn adjoint_expansion(&self) -> String {
        self.expansion(&self.adjoint, "v")
    }
}

/// Points of a quotient with the padded chain length at each, ordered by
/// decreasing real part, then increasing imaginary part.
fn slots(q: &DomainQuotient) -> Vec<(Gq, usize)> {
    let mut out: Vec<(Gq, usize)> = Vec::new();
    for v in &q.jordan_basis {
        for (p, c) in v.points() {
            match out.iter_mut().find(|(x, _)| *x == p) {
                Some(e) => e.1 = e.1.max(c.len()),
                None => out.push((p, c.len())),
            }
        }
    }
    out.sort_by(|a, b| b.0.re().cmp(a.0.re()).then_with(|| a.0.im().cmp(b.0.im())));
    out
}

fn letter(i: usize) -> String {
    match LETTERS.get(i) {
        Some(l) => (*l).to_string(),
        None => format!("c{i}"),
    }
}

fn coefficients(slots: &[(Gq, usize)], n: usize, first_letter: usize) -> Vec<Coefficient> {
    let mut out = Vec::new();
    for (i, (p, m)) in slots.iter().enumerate() {
        for index in 0..*m {
            for component in 0..n {
                let mut subs = Vec::new();
                if *m > 1 {
                    subs.push(index.to_string());
                }
                if n > 1 {
                    subs.push((component + 1).to_string());
                }
                let mut name = letter(first_letter + i);
                if !subs.is_empty() {
                    name.push('_');
                    name.push_str(&subs.join(","));
                }
                out.push(Coefficient {
                    name,
                    exponent: p.clone(),
                    index,
                    length: *m,
                    component,
                });
            }
        }
    }
    out
}

fn unit(c: &Coefficient, n: usize) -> SpecialVector {
    let mut entries = vec![vec![Gq::zero(); n]; c.length];
    entries[c.index][c.component] = Gq::one();
    SpecialVector::single(c.exponent.clone(), ChainVector::new(n, entries))
}

/// The boundary form written in the raw chain coordinates of both sides.
pub fn green_formula(
    s: &CompleteMellinSymbol,
    w: &WeightContext,
    primal: &DomainQuotient,
    adjoint: &DomainQuotient,
) -> Result<GreenFormula> {
    let n = s.size();
    let ps = slots(primal);
    let qs = slots(adjoint);
    let pc = coefficients(&ps, n, 0);
    let qc = coefficients(&qs, n, ps.len());
    let mut terms = Vec::new();
    for (i, a) in pc.iter().enumerate() {
        let ua = unit(a, n);
        for (j, b) in qc.iter().enumerate() {
            let c = boundary_pairing(s, w, &ua, &unit(b, n))?;
            if !c.is_zero() {
                terms.push(GreenTerm {
                    coefficient: c,
                    primal: i,
                    adjoint: j,
                });
            }
        }
    }
    Ok(GreenFormula {
        size: n,
        primal: pc,
        adjoint: qc,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_monomial() {
        let c = Coefficient {
            name: "β_0".into(),
            exponent: Gq::int(-1),
            index: 0,
            length: 2,
            component: 0,
        };
        assert_eq!(c.monomial(), (Gq::int(-1), "t log t".to_string()));
        assert_eq!(barred("γ_0"), "γ\u{304}_0");
    }

    #[test]
    fn empty_formula() {
        let f = GreenFormula {
            size: 1,
            primal: Vec::new(),
            adjoint: Vec::new(),
            terms: Vec::new(),
        };
        assert_eq!(f.text(), "[u,v]_A = 0");
    }
}
