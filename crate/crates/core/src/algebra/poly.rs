//! Dense univariate polynomials over `Q(i)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Signed, Zero};

use super::scalar::Gq;

/// Coefficients stored low to high with trailing zeros trimmed, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Gq>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Gq>) -> Self {
        while coeffs.last().is_some_and(Gq::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly::new(vec![Gq::zero(), Gq::one()])
    }

    /// `z - a`
    pub fn linear_root(a: &Gq) -> Self {
        Poly::new(vec![-a, Gq::one()])
    }

    /// `c z^k`
    pub fn monomial(c: Gq, k: usize) -> Self {
        let mut v = vec![Gq::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// Integer coefficients, low to high.
    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Gq::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.coeffs
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Gq {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Gq {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, z: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn conj(&self) -> Self {
        Poly::new(self.coeffs.iter().map(Gq::conj).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Gq::int(k as i64))
                .collect(),
        )
    }

    /// `p(a z + b)` by Horner on polynomials.
    pub fn compose_affine(&self, a: &Gq, b: &Gq) -> Self {
        let lin = Poly::new(vec![b.clone(), a.clone()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `p(z + c)`
    pub fn shift(&self, c: &Gq) -> Self {
        self.compose_affine(&Gq::one(), c)
    }

    /// Multiply by `z^k`.
    pub fn mul_z_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gq::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division; panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Gq::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let t = &c * dc;
                    rem[k + i] -= &t;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Scale so the leading coefficient is one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading().inv() {
            Some(l) => self.scale(&l),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.monic(), b.monic());
        // monic remainders keep the coefficients from growing
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Multiplicity of `a` as a root.
    pub fn root_multiplicity(&self, a: &Gq) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let lin = Poly::linear_root(a);
        let mut p = self.clone();
        let mut m = 0;
        while let Some(q) = p.exact_div(&lin) {
            p = q;
            m += 1;
        }
        m
    }

    /// Taylor coefficients at `a`: `p(a + w) = Σ c_k w^k`.
    pub fn taylor_at(&self, a: &Gq) -> Vec<Gq> {
        self.shift(a).coeffs
    }
}

fn fmt_coeff_term(c: &Gq, k: usize, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mono = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    let simple = c.is_real() || c.re().is_zero();
    let (neg, body) = if simple {
        let negative = if c.is_real() {
            c.re().is_negative()
        } else {
            c.im().is_negative()
        };
        let abs = if negative { -c } else { c.clone() };
        (negative, abs)
    } else {
        (false, c.clone())
    };
    let sep = match (first, neg) {
        (true, true) => "-",
        (true, false) => "",
        (false, true) => " - ",
        (false, false) => " + ",
    };
    let body_s = if k > 0 && body.is_one() {
        String::new()
    } else if simple {
        body.to_string()
    } else {
        format!("({body})")
    };
    let star = if !body_s.is_empty() && k > 0 { "*" } else { "" };
    write!(f, "{sep}{body_s}{star}{mono}")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_coeff_term(c, k, first, f)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Gq::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_degrees() {
        let p = Poly::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Poly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // z(z+1)^2 and (z+1)(z-3)
        let a = Poly::from_ints(&[0, 1, 2, 1]);
        let b = Poly::from_ints(&[-3, -2, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[1, 1]));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert_eq!(a.root_multiplicity(&Gq::int(-1)), 2);
        assert_eq!(a.root_multiplicity(&Gq::int(5)), 0);
    }

    #[test]
    fn shift_and_affine() {
        let p = Poly::from_ints(&[0, 1, 1]); // z(z+1)
        assert_eq!(p.shift(&Gq::int(-1)), Poly::from_ints(&[0, -1, 1]));
        // p(1 - z) = (1-z)(2-z)
        assert_eq!(
            p.compose_affine(&Gq::int(-1), &Gq::int(1)),
            Poly::from_ints(&[2, -3, 1])
        );
    }

    #[test]
    fn display() {
        let p = Poly::from_ints(&[0, -1, -2, -1]);
        assert_eq!(p.to_string(), "-z^3 - 2*z^2 - z");
        assert_eq!(
            Poly::new(vec![Gq::complex(1, 1, 1, 1)]).to_string(),
            "(1+i)"
        );
    }
}
