//! Invariant suites run against a single operator.
//!
//! `local` checks the local types of the leading conormal symbol at each of
//! its roots, `global` the symbol calculus and the strip data, `green` the
//! whole Green's formula pipeline. Suites are independent and can run on
//! separate threads; results come back ordered by suite name.

use std::fmt;
use std::str::FromStr;
use std::thread;

use serde::Serialize;

use crate::algebra::Gq;
use crate::asymptotic::{
    conjugate_complete_basis, fundamental_check, properness_check, strip_basis_with_roots,
};
use crate::error::{Error, Result};
use crate::green::verify_theorem_main_with_roots;
use crate::local::{
    conjugate_local_basis, det_multiplicity, inverse_principal, jordan_chains, keldysh_check,
    local_pairing_matrix, orbit_labels, tensor_principal,
};
use crate::mellin::{
    adjoint_symbol, invert_complete_symbol, leading_roots, mtp, CompleteMellinSymbol,
    FuchsOperator, WeightContext,
};

/// Number of inverse terms the `global` suite multiplies back.
const INVERSION_TERMS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Global,
    Green,
    Local,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Global, Suite::Green, Suite::Local];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Global => "global",
            Suite::Green => "green",
            Suite::Local => "local",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: String::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn local_suite(a: &FuchsOperator, roots: Option<&[Gq]>) -> Result<Vec<Check>> {
    let s = CompleteMellinSymbol::from_operator(a);
    let f = s.try_term(0)?;
    let n = s.size();
    let mut out = Vec::new();
    for (p, _) in leading_roots(&s, roots)?.roots {
        let primal = jordan_chains(&f, &p)?;
        let mult = det_multiplicity(&f, &p)?;
        out.push(
            Check::new(format!("dimension@{p}"), primal.dim() == mult)
                .detail(format!("{} vs multiplicity {mult}", primal.dim())),
        );
        let conj = conjugate_local_basis(&f, &p, &primal)?;
        let pairs: Vec<_> = primal.basis.iter().cloned().zip(conj.basis.iter().cloned()).collect();
        let rebuilt = inverse_principal(&f, &p)?.sub(&tensor_principal(&p, &pairs, n));
        out.push(Check::new(format!("principal_part@{p}"), rebuilt.is_zero()));
        out.push(Check::new(format!("keldysh@{p}"), keldysh_check(&f, &p, &primal, &conj).passed()));
        let m = local_pairing_matrix(&f, &primal, &conj);
        let labels = orbit_labels(&primal.characteristic);
        let antidiagonal = labels.iter().enumerate().all(|(x, &(i, r))| {
            labels.iter().enumerate().all(|(y, &(j, s))| {
                let want = i == j && r + s + 1 == primal.characteristic[i];
                m[x][y] == if want { Gq::one() } else { Gq::zero() }
            })
        });
        out.push(Check::new(format!("antidiagonal@{p}"), antidiagonal));
    }
    Ok(out)
}

fn global_suite(a: &FuchsOperator, w: &WeightContext, roots: Option<&[Gq]>) -> Result<Vec<Check>> {
    let s = CompleteMellinSymbol::from_operator(a);
    let n = s.size();
    let w = WeightContext::new(w.delta().clone(), s.mu())?;
    let mut out = Vec::new();

    let t = invert_complete_symbol(&s, INVERSION_TERMS)?;
    let id = CompleteMellinSymbol::identity(n);
    let left = mtp(&t, &s)?;
    let right = mtp(&s, &t)?;
    out.push(Check::new("inverse_left", left.agrees_to(&id, INVERSION_TERMS + 1)));
    out.push(Check::new("inverse_right", right.agrees_to(&id, INVERSION_TERMS + 1)));

    let aa = a.compose(a)?;
    let hom = CompleteMellinSymbol::from_operator(&aa).agrees(&mtp(&s, &s)?);
    out.push(Check::new("composition_homomorphism", hom));
    let twice = adjoint_symbol(&adjoint_symbol(&s, &w), &w);
    out.push(Check::new("adjoint_involution", twice.agrees(&s)));

    let mu = s.mu().max(0) as usize;
    let basis = strip_basis_with_roots(&s, &w, mu, roots)?;
    out.push(Check::new("properness", properness_check(&basis)));
    let conj = conjugate_complete_basis(&s, &w, mu, &basis)?;
    let entries = fundamental_check(&s, &w, mu, &basis, &conj)?;
    let bad: Vec<String> = entries
        .iter()
        .filter(|e| !e.matches)
        .map(|e| format!("p={} j={}", e.point, e.j))
        .collect();
    out.push(
        Check::new("principal_parts", bad.is_empty())
            .detail(format!("{} comparisons; mismatches: [{}]", entries.len(), bad.join(", "))),
    );
    Ok(out)
}

fn green_suite(a: &FuchsOperator, w: &WeightContext, roots: Option<&[Gq]>) -> Result<Vec<Check>> {
    let r = verify_theorem_main_with_roots(a, w, roots)?;
    let c = &r.checks;
    Ok(vec![
        Check::new("same_characteristic", c.same_characteristic),
        Check::new("nondegenerate", c.nondegenerate),
        Check::new("skew", c.skew),
        Check::new("pattern", c.pattern),
        Check::new("routes_agree", c.routes_agree),
        Check::new("keldysh", c.keldysh),
        Check::new("fundamental", c.fundamental),
    ])
}

pub fn run_suite(
    suite: Suite,
    a: &FuchsOperator,
    w: &WeightContext,
    roots: Option<&[Gq]>,
) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::Local => local_suite(a, roots)?,
        Suite::Global => global_suite(a, w, roots)?,
        Suite::Green => green_suite(a, w, roots)?,
    };
    Ok(SuiteReport { suite, checks })
}

/// Runs the suites concurrently; results are ordered by suite name.
pub fn run_suites(
    suites: &[Suite],
    a: &FuchsOperator,
    w: &WeightContext,
    roots: Option<&[Gq]>,
) -> Vec<(Suite, Result<SuiteReport>)> {
    let mut list = suites.to_vec();
    list.sort();
    list.dedup();
    thread::scope(|sc| {
        let handles: Vec<_> = list
            .iter()
            .map(|&s| (s, sc.spawn(move || run_suite(s, a, w, roots))))
            .collect();
        handles
            .into_iter()
            .map(|(s, h)| (s, h.join().expect("suite thread panicked")))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MatrixPolynomial, Poly};
    use crate::mellin::{to_fuchs_form, ClassicalTerm};

    #[test]
    fn cubic_suites_pass() {
        let term = |shift, k| ClassicalTerm {
            coeff: MatrixPolynomial::scalar(1, &Poly::from_ints(&[1])),
            t_shift: shift,
            derivative: k,
        };
        let a = to_fuchs_form(&[term(0, 3), term(1, 2)]).unwrap();
        let w = WeightContext::new(Gq::int(-1), 3).unwrap();
        for (s, r) in run_suites(&Suite::ALL, &a, &w, None) {
            let r = r.unwrap();
            assert!(r.passed(), "{s}: {:?}", r.checks);
        }
        assert_eq!("green".parse::<Suite>().unwrap(), Suite::Green);
    }
}
