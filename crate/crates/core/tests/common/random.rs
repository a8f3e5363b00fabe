//! Seeded generators for randomized instances with planted structure.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use cone_green::algebra::{Gq, Matrix, MatrixPolynomial, Poly, RationalMatrixFunction};
use cone_green::mellin::{CompleteMellinSymbol, FuchsOperator};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational, real with probability 1/2.
pub fn scalar(r: &mut Rng8) -> Gq {
    let den = *[1, 1, 2, 3].choose(r).unwrap();
    let re = Gq::ratio(r.gen_range(-3..=3), den);
    if r.gen_bool(0.5) {
        re
    } else {
        &re + &Gq::complex(0, 1, r.gen_range(-2..=2), 1)
    }
}

/// Gaussian integer with parts in `-2..=2`.
pub fn gaussian_int(r: &mut Rng8) -> Gq {
    Gq::complex(r.gen_range(-2..=2), 1, r.gen_range(-2..=2), 1)
}

pub fn matrix(r: &mut Rng8, n: usize) -> Matrix {
    Matrix::from_rows((0..n).map(|_| (0..n).map(|_| scalar(r)).collect()).collect())
}

pub fn poly(r: &mut Rng8, deg: usize) -> Poly {
    Poly::new((0..=deg).map(|_| scalar(r)).collect())
}

pub fn matpoly(r: &mut Rng8, n: usize, deg: usize) -> MatrixPolynomial {
    MatrixPolynomial::new(n, (0..=deg).map(|_| matrix(r, n)).collect())
}

/// Fuchs operator with `t`-degree at most `tdeg` in every coefficient.
pub fn operator(r: &mut Rng8, n: usize, mu: usize, tdeg: usize) -> FuchsOperator {
    FuchsOperator::new(mu, (0..=mu).map(|_| matpoly(r, n, tdeg)).collect()).unwrap()
}

/// Finite symbol of order `mu` with Gaussian-integer coefficients whose
/// leading term is invertible as a rational function.
pub fn elliptic_symbol(r: &mut Rng8, n: usize, mu: i64, deg: usize, len: usize) -> CompleteMellinSymbol {
    let entry = |r: &mut Rng8| {
        let m: Vec<Matrix> = (0..=deg)
            .map(|_| Matrix::from_rows((0..n).map(|_| (0..n).map(|_| gaussian_int(r)).collect()).collect()))
            .collect();
        RationalMatrixFunction::from_matpoly(MatrixPolynomial::new(n, m))
    };
    loop {
        let terms: Vec<RationalMatrixFunction> = (0..len).map(|_| entry(r)).collect();
        if !terms[0].numerator().det().is_zero() {
            return CompleteMellinSymbol::finite(mu, n, terms);
        }
    }
}

/// `I + c(z) E_ij` with `i ≠ j`, and its inverse.
pub fn elementary(r: &mut Rng8, n: usize, deg: usize) -> (MatrixPolynomial, MatrixPolynomial) {
    let i = r.gen_range(0..n);
    let j = (i + r.gen_range(1..n)) % n;
    let c = poly(r, deg);
    let mut e = vec![vec![Poly::zero(); n]; n];
    let mut f = vec![vec![Poly::zero(); n]; n];
    for k in 0..n {
        e[k][k] = Poly::one();
        f[k][k] = Poly::one();
    }
    e[i][j] = c.clone();
    f[i][j] = -&c;
    (MatrixPolynomial::from_entries(&e), MatrixPolynomial::from_entries(&f))
}

/// Product of `count` elementary factors and the product of their inverses.
pub fn unimodular(r: &mut Rng8, n: usize, count: usize, deg: usize) -> (MatrixPolynomial, MatrixPolynomial) {
    let mut u = MatrixPolynomial::identity(n);
    let mut inv = MatrixPolynomial::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..count {
        let (e, f) = elementary(r, n, deg);
        u = &u * &e;
        inv = &f * &inv;
    }
    (u, inv)
}

/// A matrix function `F = g · U D V` with `D = diag((z−p)^{k_i})`, where
/// `g` is a scalar rational function without zeros or poles at `p`.
pub struct PlantedFunction {
    pub point: Gq,
    pub f: RationalMatrixFunction,
    /// `F^{−1}` assembled from the inverses of the factors.
    pub inverse: RationalMatrixFunction,
    /// Planted partial multiplicities, zeros dropped, decreasing.
    pub partial: Vec<usize>,
}

pub fn planted_function(r: &mut Rng8, n: usize, max_order: usize) -> PlantedFunction {
    let p = scalar(r);
    let mut ks: Vec<usize> = (0..n).map(|_| r.gen_range(0..=max_order)).collect();
    if ks.iter().all(|&k| k == 0) {
        ks[0] = r.gen_range(1..=max_order);
    }
    let lin = Poly::linear_root(&p);
    let mut d = vec![vec![Poly::zero(); n]; n];
    let mut dinv_den = Poly::one();
    let kmax = *ks.iter().max().unwrap();
    let mut dinv = vec![vec![Poly::zero(); n]; n];
    for (i, &k) in ks.iter().enumerate() {
        d[i][i] = lin.pow(k as u32);
        dinv[i][i] = lin.pow((kmax - k) as u32);
    }
    for _ in 0..kmax {
        dinv_den = &dinv_den * &lin;
    }
    let (u, uinv) = unimodular(r, n, 2, 1);
    let (v, vinv) = unimodular(r, n, 2, 1);
    let c = loop {
        let m = matrix(r, n);
        if let Some(mi) = m.inverse() {
            break (m, mi);
        }
    };
    // g = (z − q)/(z − q') with q, q' ≠ p
    let (q, q2) = loop {
        let (a, b) = (scalar(r), scalar(r));
        if a != p && b != p && a != b {
            break (a, b);
        }
    };
    let (gn, gd) = (Poly::linear_root(&q), Poly::linear_root(&q2));
    let cm = MatrixPolynomial::constant(c.0);
    let cinv = MatrixPolynomial::constant(c.1);
    let num = (&(&(&cm * &u) * &MatrixPolynomial::from_entries(&d)) * &v).mul_poly(&gn);
    let f = RationalMatrixFunction::new(num, gd.clone());
    let inv_num = (&(&(&vinv * &MatrixPolynomial::from_entries(&dinv)) * &uinv) * &cinv).mul_poly(&gd);
    let inverse = RationalMatrixFunction::new(inv_num, &dinv_den * &gn);
    let mut partial: Vec<usize> = ks.into_iter().filter(|&k| k > 0).collect();
    partial.sort_unstable_by(|a, b| b.cmp(a));
    PlantedFunction {
        point: p,
        f,
        inverse,
        partial,
    }
}

/// A Fuchs operator whose leading conormal symbol is
/// `P · [triangular with planted diagonal roots] · Q`, `P, Q` constant and
/// unimodular over the integers, plus lower-order symbols with
/// Gaussian-integer coefficients.
pub struct PlantedOperator {
    pub operator: FuchsOperator,
    /// Planted roots of `det σ^μ`, with repetition.
    pub roots: Vec<Gq>,
}

/// Candidate roots: integers and thirds, so that no root meets a
/// half-integer line.
fn planted_root(r: &mut Rng8, mu: usize) -> Gq {
    let base = [Gq::zero(), Gq::zero(), Gq::ratio(1, 3), Gq::ratio(-2, 3)]
        .choose(r)
        .unwrap()
        .clone();
    &base + &Gq::int(r.gen_range(-(mu as i64)..=1))
}

fn integer_unimodular(r: &mut Rng8, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    for _ in 0..2 {
        if n < 2 {
            break;
        }
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let mut e = Matrix::identity(n);
        e.set(i, j, Gq::int(r.gen_range(-2..=2)));
        m = &m * &e;
    }
    m
}

pub fn planted_operator(r: &mut Rng8, n: usize, mu: usize, lower: usize) -> PlantedOperator {
    let mut roots = Vec::new();
    let mut entries = vec![vec![Poly::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        let mut d = Poly::one();
        for _ in 0..mu {
            let x = planted_root(r, mu);
            d = &d * &Poly::linear_root(&x);
            roots.push(x);
        }
        row[i] = d;
        for e in row.iter_mut().skip(i + 1) {
            if mu > 0 && r.gen_bool(0.7) {
                *e = poly(r, mu - 1);
            }
        }
    }
    let lead = &(&MatrixPolynomial::constant(integer_unimodular(r, n))
        * &MatrixPolynomial::from_entries(&entries))
        * &MatrixPolynomial::constant(integer_unimodular(r, n));
    // σ^{μ−j}(z) = Σ_k [t^j] a_k(t) z^k
    let mut symbols = vec![lead];
    for _ in 0..lower {
        let m: Vec<Matrix> = (0..=mu)
            .map(|_| Matrix::from_rows((0..n).map(|_| (0..n).map(|_| gaussian_int(r)).collect()).collect()))
            .collect();
        symbols.push(MatrixPolynomial::new(n, m));
    }
    let coeffs: Vec<MatrixPolynomial> = (0..=mu)
        .map(|k| MatrixPolynomial::new(n, symbols.iter().map(|s| s.coeff(k)).collect()))
        .collect();
    PlantedOperator {
        operator: FuchsOperator::new(mu, coeffs).unwrap(),
        roots,
    }
}
