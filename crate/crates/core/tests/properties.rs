//! Randomized algebraic invariants. Each case draws a seed and builds its
//! instance from the shared generators.

mod common;

use cone_green::algebra::{rational_inverse, Gq, Poly, RationalMatrixFunction};
use cone_green::local::{det_multiplicity, jordan_chains, ChainVector};
use cone_green::mellin::{adjoint_symbol, invert_complete_symbol, mtp, CompleteMellinSymbol, WeightContext};
use proptest::prelude::*;
use rand::Rng;

use common::random;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn wire_format_round_trips(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let x = random::scalar(&mut r);
        prop_assert_eq!(x.to_wire().parse::<Gq>().unwrap(), x.clone());
        prop_assert_eq!(x.to_string().parse::<Gq>().unwrap(), x);
    }

    #[test]
    fn field_laws(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let (a, b, c) = (random::scalar(&mut r), random::scalar(&mut r), random::scalar(&mut r));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(bi) = b.inv() {
            prop_assert_eq!(&(&a * &bi) * &b, a.clone());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn gcd_divides_and_is_maximal(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let (a, b, c) = (random::poly(&mut r, 2), random::poly(&mut r, 2), random::poly(&mut r, 1));
        prop_assume!(!c.is_zero() && !(a.is_zero() && b.is_zero()));
        let g = Poly::gcd(&(&a * &c), &(&b * &c));
        prop_assert!((&a * &c).exact_div(&g).is_some());
        prop_assert!((&b * &c).exact_div(&g).is_some());
        prop_assert!(g.exact_div(&c).is_some());
        prop_assert!(g.leading().is_one());
    }

    #[test]
    fn shifts_compose(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=2);
        let f = RationalMatrixFunction::new(random::matpoly(&mut r, n, 2), random::poly(&mut r, 1));
        prop_assume!(!f.denominator().is_zero());
        let (a, b) = (random::scalar(&mut r), random::scalar(&mut r));
        prop_assert_eq!(f.shift(&a).shift(&b), f.shift(&(&a + &b)));
        let z = random::scalar(&mut r);
        if let (Some(lhs), Some(rhs)) = (f.shift(&a).eval(&z), f.eval(&(&z + &a))) {
            prop_assert_eq!(lhs, rhs);
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn inverse_function_is_two_sided(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=3);
        let f = random::planted_function(&mut r, n, 2);
        let inv = rational_inverse(&f.f).unwrap();
        prop_assert_eq!(&inv, &f.inverse);
        prop_assert_eq!(&inv * &f.f, RationalMatrixFunction::identity(n));
    }

    #[test]
    fn local_dimension_is_determinant_multiplicity(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=3);
        let f = random::planted_function(&mut r, n, 3);
        let local = jordan_chains(&f.f, &f.point).unwrap();
        prop_assert_eq!(local.dim(), det_multiplicity(&f.f, &f.point).unwrap());
        prop_assert_eq!(local.dim(), f.partial.iter().sum::<usize>());
    }

    #[test]
    fn chain_involutions(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let len = r.gen_range(1..=4);
        let xs: Vec<Gq> = (0..len).map(|_| random::scalar(&mut r)).collect();
        let v = ChainVector::scalars(&xs);
        prop_assert_eq!(v.invol_j().invol_j(), v.clone());
        prop_assert_eq!(v.invol_c().invol_c(), v.clone());
        prop_assert_eq!(v.invol_i(), v.invol_j().invol_c());
        // T and J anticommute entrywise: J T v = −T J v
        prop_assert_eq!(v.shift_t().invol_j(), v.invol_j().shift_t().scale(&Gq::int(-1)));
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn symbol_product_is_associative(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=2);
        let ss: Vec<CompleteMellinSymbol> = (0..3)
            .map(|_| {
                let mu = r.gen_range(0..=2);
                CompleteMellinSymbol::from_operator(&random::operator(&mut r, n, mu, 1))
            })
            .collect();
        let left = mtp(&mtp(&ss[0], &ss[1]).unwrap(), &ss[2]).unwrap();
        let right = mtp(&ss[0], &mtp(&ss[1], &ss[2]).unwrap()).unwrap();
        prop_assert!(left.agrees(&right));
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=2);
        let mu = r.gen_range(0..=3);
        let s = CompleteMellinSymbol::from_operator(&random::operator(&mut r, n, mu, 2));
        let w = WeightContext::new(Gq::ratio(r.gen_range(-3..=3), 2), mu as i64).unwrap();
        prop_assert!(adjoint_symbol(&adjoint_symbol(&s, &w), &w).agrees(&s));
    }

    #[test]
    fn symbol_inverse_is_two_sided(seed in any::<u64>()) {
        let mut r = random::rng(seed);
        let n = r.gen_range(1..=2);
        let mu = r.gen_range(-1..=2);
        let s = random::elliptic_symbol(&mut r, n, mu, 1, 2);
        let inv = invert_complete_symbol(&s, 3).unwrap();
        let id = CompleteMellinSymbol::identity(n);
        prop_assert!(mtp(&inv, &s).unwrap().agrees_to(&id, 4));
        prop_assert!(mtp(&s, &inv).unwrap().agrees_to(&id, 4));
    }
}
