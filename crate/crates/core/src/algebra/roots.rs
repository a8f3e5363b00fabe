//! Exact roots in `Q(i)` of polynomials over `Q(i)`.
//!
//! Candidates come from the rational root theorem over the Gaussian
//! integers: after clearing denominators, a root `u/v` has `u` dividing the
//! constant term and `v` dividing the leading coefficient. Divisors are
//! enumerated from the Gaussian prime factorization, which in turn comes from
//! factoring the integer norm.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::scalar::Gq;

/// Trial-division budget per integer factorization.
const FACTOR_BUDGET: u128 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct roots with multiplicities, sorted by `Gq`'s order.
    pub roots: Vec<(Gq, usize)>,
    /// Cofactor left after removing every Gaussian-rational root.
    pub remainder: Poly,
    /// Set iff `remainder` is nonconstant.
    pub nonrational_remainder: bool,
}

impl RootSet {
    pub fn multiplicity(&self, z: &Gq) -> usize {
        self.roots
            .iter()
            .find(|(r, _)| r == z)
            .map_or(0, |(_, m)| *m)
    }

    pub fn total(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// All Gaussian-rational roots of `p` with exact multiplicities.
///
/// Panics if `p` is the zero polynomial.
pub fn rational_roots(p: &Poly) -> RootSet {
    roots_with_hints(p, &[])
}

/// Like [`rational_roots`], but tries `hints` first; a good hint list makes
/// the divisor search unnecessary.
pub fn roots_with_hints(p: &Poly, hints: &[Gq]) -> RootSet {
    assert!(!p.is_zero(), "roots of the zero polynomial");
    let mut found: Vec<(Gq, usize)> = Vec::new();
    let mut cur = p.clone();
    let take = |cur: &mut Poly, z: &Gq, found: &mut Vec<(Gq, usize)>| {
        if found.iter().any(|(r, _)| r == z) {
            return;
        }
        let m = cur.root_multiplicity(z);
        if m > 0 {
            *cur = cur
                .exact_div(&Poly::linear_root(z).pow(m as u32))
                .expect("root factor divides");
            found.push((z.clone(), m));
        }
    };
    take(&mut cur, &Gq::zero(), &mut found);
    for h in hints {
        if cur.is_constant() {
            break;
        }
        take(&mut cur, h, &mut found);
    }
    if !cur.is_constant() {
        for c in candidates(&cur) {
            if cur.is_constant() {
                break;
            }
            take(&mut cur, &c, &mut found);
        }
    }
    found.sort();
    let flag = !cur.is_constant();
    RootSet {
        roots: found,
        remainder: cur.monic(),
        nonrational_remainder: flag,
    }
}

/// Scale coefficients to Gaussian integers.
fn gaussian_integer_coeffs(p: &Poly) -> Vec<Gq> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
    let f = Gq::from_rational(BigRational::from_integer(l));
    p.coeffs().iter().map(|c| c * &f).collect()
}

fn candidates(p: &Poly) -> Vec<Gq> {
    let cs = gaussian_integer_coeffs(p);
    let a0 = cs.first().expect("nonzero polynomial").clone();
    let an = cs.last().expect("nonzero polynomial").clone();
    if a0.is_zero() {
        // zero roots are removed before this point
        return Vec::new();
    }
    let units = [Gq::one(), Gq::i(), Gq::int(-1), -Gq::i()];
    let num_divs = gaussian_divisors(&a0);
    let den_divs = gaussian_divisors(&an);
    let mut out = BTreeSet::new();
    for u in &num_divs {
        for e in &units {
            let ue = u * e;
            for v in &den_divs {
                out.insert(&ue / v);
            }
        }
    }
    out.into_iter().collect()
}

fn rational_integer(x: &BigRational) -> BigInt {
    debug_assert!(x.is_integer());
    x.to_integer()
}

/// Divisors of a nonzero Gaussian integer, one per associate class.
fn gaussian_divisors(g: &Gq) -> Vec<Gq> {
    let norm = rational_integer(&g.norm());
    let mut primes: Vec<Gq> = Vec::new();
    for p in integer_prime_factors(&norm) {
        let pm4 = (&p % BigInt::from(4)).to_u32().unwrap_or(0);
        if p == BigInt::from(2) {
            primes.push(Gq::complex(1, 1, 1, 1));
        } else if pm4 == 3 {
            primes.push(Gq::from_rational(BigRational::from_integer(p)));
        } else if let Some((a, b)) = two_squares(&p) {
            let a = BigRational::from_integer(a);
            let b = BigRational::from_integer(b);
            primes.push(Gq::new(a.clone(), b.clone()));
            primes.push(Gq::new(a, -b));
        }
    }
    let mut divs = vec![Gq::one()];
    for pi in primes {
        let mut e = 0u32;
        let mut rest = g.clone();
        loop {
            let q = &rest / &pi;
            if q.is_gaussian_integer() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = Gq::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw = &pw * &pi;
            }
        }
        divs = next;
    }
    divs
}

/// Distinct prime factors of `|n|` by trial division (budgeted; an
/// unfactored cofactor is reported as if it were prime).
fn integer_prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let two = BigInt::from(2);
    if (&n % &two).is_zero() {
        out.push(two.clone());
        while (&n % &two).is_zero() {
            n /= &two;
        }
    }
    let mut d = BigInt::from(3);
    let mut steps: u128 = 0;
    while &d * &d <= n && steps < FACTOR_BUDGET {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 2;
        steps += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// `a^2 + b^2 = p` with `a, b > 0`, for a prime `p ≡ 1 (mod 4)`.
fn two_squares(p: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut a = BigInt::one();
    let mut steps: u128 = 0;
    while &a * &a < *p && steps < FACTOR_BUDGET {
        let r = p - &a * &a;
        let b = r.sqrt();
        if &b * &b == r {
            return Some((a, b));
        }
        a += 1;
        steps += 1;
    }
    None
}
