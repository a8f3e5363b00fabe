//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use cone_green::algebra::{Gq, MatrixPolynomial, Poly};
use cone_green::asymptotic::SpecialVector;
use cone_green::local::ChainVector;
use cone_green::mellin::{to_fuchs_form, ClassicalTerm, FuchsOperator};

pub fn g(n: i64) -> Gq {
    Gq::int(n)
}

fn term(c: Gq, t_shift: i64, derivative: u32) -> ClassicalTerm {
    ClassicalTerm {
        coeff: MatrixPolynomial::scalar(1, &Poly::constant(c)),
        t_shift,
        derivative,
    }
}

/// `∂_t^3 + t^{-1} ∂_t^2`
pub fn cubic_operator() -> FuchsOperator {
    to_fuchs_form(&[term(g(1), 0, 3), term(g(1), 1, 2)]).unwrap()
}

/// `∂_t^2 + a ∂_t + b`
pub fn second_order_operator(a: &Gq, b: &Gq) -> FuchsOperator {
    to_fuchs_form(&[
        term(g(1), 0, 2),
        term(a.clone(), 0, 1),
        term(b.clone(), 0, 0),
    ])
    .unwrap()
}

/// Sample parameters `(a, b)` for the second-order operator.
pub fn samples() -> Vec<(Gq, Gq)> {
    vec![
        (Gq::ratio(3, 2), Gq::complex(-2, 1, 1, 1)),
        (Gq::complex(1, 3, -2, 1), Gq::ratio(5, 7)),
        (Gq::complex(-1, 1, 1, 2), Gq::complex(0, 1, -3, 4)),
    ]
}

/// `Π_0 = 1`, `Π_1 = a`, `Π_j = aΠ_{j−1} − bΠ_{j−2}`.
pub fn pi_table(a: &Gq, b: &Gq, n: usize) -> Vec<Gq> {
    let mut out = vec![g(1), a.clone()];
    while out.len() < n {
        let k = out.len();
        out.push(&(a * &out[k - 1]) - &(b * &out[k - 2]));
    }
    out.truncate(n);
    out
}

fn factorial(j: usize) -> Gq {
    (1..=j as i64).fold(g(1), |acc, k| &acc * &g(k))
}

/// Taylor coefficients `c_0..=c_order` of `u_1, u_2` (solutions of
/// `u'' + au' + bu = 0`) and `v_1, v_2` (solutions of `v'' − āv' + b̄v = 0`).
pub fn series(a: &Gq, b: &Gq, order: usize) -> [Vec<Gq>; 4] {
    let p = pi_table(a, b, order + 1);
    let pc = pi_table(&a.conj(), &b.conj(), order + 1);
    let mut u1 = vec![g(0); order + 1];
    let mut u2 = vec![g(0); order + 1];
    let mut v1 = vec![g(0); order + 1];
    let mut v2 = vec![g(0); order + 1];
    u1[0] = g(1);
    for j in 0..=order {
        let sign = if j % 2 == 0 { g(-1) } else { g(1) };
        let f = factorial(j);
        if j >= 2 {
            u1[j] = &(&sign * &(b * &p[j - 2])) / &f;
        }
        if j >= 1 {
            u2[j] = &(&sign * &p[j - 1]) / &f;
            v2[j] = -&(&pc[j - 1] / &f);
        }
        v1[j] = &pc[j] / &f;
    }
    [u1, u2, v1, v2]
}

/// `t^j ↦ (c_j)` at `−j`.
pub fn series_vector(c: &[Gq]) -> SpecialVector {
    let pts: Vec<(Gq, ChainVector)> = c
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| {
            (
                g(-(j as i64)),
                ChainVector::scalars(std::slice::from_ref(x)),
            )
        })
        .collect();
    SpecialVector::from_points(1, &pts)
}

/// `u(0) v̄′(0) − u′(0) v̄(0) − a u(0) v̄(0)`
pub fn classical_form(a: &Gq, u: &[Gq], v: &[Gq]) -> Gq {
    let (u0, u1, v0, v1) = (&u[0], &u[1], v[0].conj(), v[1].conj());
    &(&(u0 * &v1) - &(u1 * &v0)) - &(&(a * u0) * &v0)
}
pub mod random;
