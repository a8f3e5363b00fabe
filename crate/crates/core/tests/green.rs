mod common;

use cone_green::algebra::Gq;
use cone_green::asymptotic::SpecialVector;
use cone_green::green::{
    boundary_pairing, conjugate_jordan_basis, domain_quotient, render_green_formula,
    verify_theorem_main, DomainQuotient, GreenFormula,
};
use cone_green::local::ChainVector;
use cone_green::mellin::{CompleteMellinSymbol, WeightContext};
use cone_green::Error;

use common::*;

fn at(p: i64, c: &[i64]) -> SpecialVector {
    SpecialVector::single(g(p), ChainVector::scalar_ints(c))
}

fn w(delta: Gq, mu: i64) -> WeightContext {
    WeightContext::new(delta, mu).unwrap()
}

#[test]
fn cubic_quotient() {
    let q = domain_quotient(&cubic_operator(), &w(g(-1), 3)).unwrap();
    assert_eq!(q.dimension(), 3);
    assert_eq!(q.basis.vectors, vec![at(0, &[1]), at(-1, &[1, 0])]);
    assert_eq!(q.characteristic(), vec![1, 2]);
}

#[test]
fn cubic_report() {
    let a = cubic_operator();
    let r = verify_theorem_main(&a, &w(g(-1), 3)).unwrap();
    assert!(r.verified, "{:?}", r.checks.failures());
    assert_eq!(r.adjoint.basis.vectors, vec![at(1, &[1, -1]), at(0, &[1])]);
    assert_eq!(r.tau, vec![1, 0]);

    let text = render_green_formula(&r).text;
    assert_eq!(text, "[u,v]_A = −αδ̄ + β_0γ̄_0 + β_0γ̄_1 − β_1γ̄_0");
    assert_eq!(
        r.formula.primal_expansion(),
        "u(t) ~ α − β_0 t log t + β_1 t"
    );
    assert_eq!(
        r.formula.adjoint_expansion(),
        "v(t) ~ −γ_0 t^-1 log t + γ_1 t^-1 + δ"
    );
}

#[test]
fn cubic_pairings() {
    let s = CompleteMellinSymbol::from_operator(&cubic_operator());
    let w = w(g(-1), 3);
    let (phi1, phi2) = (at(0, &[1]), at(-1, &[1, 0]));
    let (psi1, psi2) = (at(1, &[1, -1]), at(0, &[1]));
    let pair = |a: &SpecialVector, b: &SpecialVector| boundary_pairing(&s, &w, a, b).unwrap();
    assert_eq!(pair(&phi1, &psi2), g(-1));
    assert_eq!(pair(&phi2, &psi1), g(0));
    assert_eq!(pair(&phi2.shift_t(), &psi1), g(-1));
    assert_eq!(pair(&phi2, &psi1.shift_t()), g(1));
    assert_eq!(pair(&phi2.shift_t(), &psi1.shift_t()), g(0));
    assert_eq!(pair(&phi1, &psi1), g(0));
    // D(A_min) pairs to zero
    assert_eq!(pair(&at(-2, &[1]), &psi1), g(0));
}

#[test]
fn rescaled_primal_rescales_partner() {
    let s = CompleteMellinSymbol::from_operator(&cubic_operator());
    let w = w(g(-1), 3);
    let q = domain_quotient(&cubic_operator(), &w).unwrap();
    let mut basis = q.basis.clone();
    basis.vectors[0] = basis.vectors[0].scale(&g(2));
    let scaled = DomainQuotient::from_basis(3, basis);
    let c = conjugate_jordan_basis(&s, &w, &scaled).unwrap();
    assert_eq!(c.partner(0), &at(0, &[1]).scale(&Gq::ratio(1, 2)));
    assert_eq!(c.partner(1), &at(1, &[1, -1]));
}

#[test]
fn formula_round_trips() {
    let r = verify_theorem_main(&cubic_operator(), &w(g(-1), 3)).unwrap();
    let json = serde_json::to_string(&r.formula).unwrap();
    let back: GreenFormula = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r.formula);
    assert_eq!(back.text(), r.formula.text());
}

#[test]
fn forbidden_line() {
    let e = verify_theorem_main(&cubic_operator(), &w(Gq::ratio(1, 2), 3)).unwrap_err();
    assert!(matches!(e, Error::PreconditionViolation(_)), "{e}");
}

#[test]
fn empty_quotient() {
    let r = verify_theorem_main(&cubic_operator(), &w(g(-5), 3)).unwrap();
    assert_eq!(r.primal.dimension(), 0);
    assert!(r.verified);
    assert_eq!(render_green_formula(&r).text, "[u,v]_A = 0");
}

#[test]
fn second_order_report() {
    for (a, b) in samples() {
        let op = second_order_operator(&a, &b);
        let r = verify_theorem_main(&op, &w(g(0), 2)).unwrap();
        assert!(r.verified, "{:?}", r.checks.failures());
        assert_eq!(r.primal.characteristic(), vec![1, 1]);
        assert_eq!(r.primal.basis.vectors, vec![at(0, &[1]), at(-1, &[1])]);
        let v1 = SpecialVector::from_points(
            1,
            &[
                (g(0), ChainVector::scalar_ints(&[1])),
                (g(-1), ChainVector::scalars(&[a.conj()])),
            ],
        );
        let v2 = at(-1, &[-1]);
        assert_eq!(r.adjoint.basis.vectors[r.tau[0]], v2);
        assert_eq!(r.adjoint.basis.vectors[r.tau[1]], v1);
    }
}

#[test]
fn residue_route_matches_classical_form() {
    for (a, b) in samples() {
        let s = CompleteMellinSymbol::from_operator(&second_order_operator(&a, &b));
        let w = w(g(0), 2);
        let [u1, u2, v1, v2] = series(&a, &b, 12);
        // the series really solve the equations
        for (c, (p, q)) in [
            (&u1, (a.clone(), b.clone())),
            (&u2, (a.clone(), b.clone())),
            (&v1, (-&a.conj(), b.conj())),
            (&v2, (-&a.conj(), b.conj())),
        ] {
            for j in 0..=10usize {
                let jj = j as i64;
                let lhs = &(&(&g((jj + 2) * (jj + 1)) * &c[j + 2])
                    + &(&(&p * &g(jj + 1)) * &c[j + 1]))
                    + &(&q * &c[j]);
                assert!(lhs.is_zero());
            }
        }
        let us = [&u1, &u2];
        let vs = [&v1, &v2];
        for u in us {
            for v in vs {
                let residue =
                    boundary_pairing(&s, &w, &series_vector(u), &series_vector(v)).unwrap();
                assert_eq!(residue, classical_form(&a, u, v));
            }
        }
        assert_eq!(classical_form(&a, &u1, &v2), g(-1));
        assert_eq!(classical_form(&a, &u2, &v1), g(-1));
        assert_eq!(classical_form(&a, &u1, &v1), g(0));
        assert_eq!(classical_form(&a, &u2, &v2), g(0));
    }
}
