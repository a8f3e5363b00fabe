//! Gaussian rationals: the exact scalar field `Q(i)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Error;

/// An element `re + im*i` with both parts exact rationals.
///
/// `BigRational` keeps both parts in lowest terms with a positive
/// denominator after every operation.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    re: BigRational,
    im: BigRational,
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq::default()
    }

    pub fn one() -> Self {
        Gq::int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Gq::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Gq::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gq::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `(a/b) + (c/d) i`
    pub fn complex(a: i64, b: i64, c: i64, d: i64) -> Self {
        Gq::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        )
    }

    pub fn from_rational(r: BigRational) -> Self {
        Gq::new(r, BigRational::zero())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// True if both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn conj(&self) -> Self {
        Gq::new(self.re.clone(), -self.im.clone())
    }

    /// `re^2 + im^2`
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Gq::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Gq::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        num::integer::lcm(self.re.denom().clone(), self.im.denom().clone())
    }

    /// Real part as an integer if this is an integer-valued real number.
    pub fn to_i64(&self) -> Option<i64> {
        use num::ToPrimitive;
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }

    /// Canonical wire form `a/b+c/d*i` (lowest terms, minus sign folded into
    /// the imaginary separator when negative).
    pub fn to_wire(&self) -> String {
        let re = format!("{}/{}", self.re.numer(), self.re.denom());
        let (sep, im) = if self.im.is_negative() {
            ("-", -self.im.clone())
        } else {
            ("+", self.im.clone())
        };
        format!("{re}{sep}{}/{}*i", im.numer(), im.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let r = if let Some((n, d)) = body.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        BigRational::new(n, d)
    } else if let Some((ip, fp)) = body.split_once('.') {
        let digits = format!("{ip}{fp}");
        let n: BigInt = digits.parse().ok()?;
        let d = num::pow(BigInt::from(10), fp.len());
        BigRational::new(n, d)
    } else {
        BigRational::from_integer(body.trim().parse().ok()?)
    };
    Some(if neg { -r } else { r })
}

impl FromStr for Gq {
    type Err = Error;

    /// Accepts `a/b+c/d*i`, `3/2`, `-2+i`, `1/2-3/4*i`, `i`, `-i`, `2.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidNumber(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace("+-", "-").replace("--", "+");
        if t.is_empty() {
            return Err(bad());
        }
        if !t.ends_with('i') {
            return parse_rational(&t).map(Gq::from_rational).ok_or_else(bad);
        }
        let body = &t[..t.len() - 1];
        let body = body.strip_suffix('*').unwrap_or(body);
        // split at the last sign that is not at position 0
        let split = body
            .char_indices()
            .rev()
            .find(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k);
        let (re_s, im_s) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_s {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other).ok_or_else(bad)?,
        };
        let re = parse_rational(re_s).ok_or_else(bad)?;
        Ok(Gq::new(re, im))
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gq {
    /// Human-readable form: `3/2`, `-2+i`, `1/2-3/4i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        let im_abs = self.im.abs();
        let im_s = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}i", fmt_rat(&im_abs))
        };
        if self.re.is_zero() {
            let sign = if self.im.is_negative() { "-" } else { "" };
            write!(f, "{sign}{im_s}")
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{im_s}", fmt_rat(&self.re))
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl PartialOrd for Gq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(re, im)`; only used for deterministic ordering.
impl Ord for Gq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl serde::Serialize for Gq {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_wire())
    }
}

impl<'de> serde::Deserialize<'de> for Gq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::int(n)
    }
}

impl From<BigRational> for Gq {
    fn from(r: BigRational) -> Self {
        Gq::from_rational(r)
    }
}

impl<'a> Add<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a Gq> for &'a Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        if self.im.is_zero() && o.im.is_zero() {
            return Gq::from_rational(&self.re * &o.re);
        }
        Gq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl<'a> Div<&'a Gq> for &'a Gq {
    type Output = Gq;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Gq> for Gq {
            type Output = Gq;
            fn $m(self, o: &Gq) -> Gq {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Gq> for &'a Gq {
            type Output = Gq;
            fn $m(self, o: Gq) -> Gq {
                self.$m(&o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&Gq> for Gq {
    fn sub_assign(&mut self, o: &Gq) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&Gq> for Gq {
    fn mul_assign(&mut self, o: &Gq) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for Gq {
    fn sum<I: Iterator<Item = Gq>>(iter: I) -> Gq {
        iter.fold(Gq::zero(), |mut a, b| {
            a += &b;
            a
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wire_form_round_trips() {
        let x = Gq::complex(-3, 6, 5, -10);
        assert_eq!(x.to_wire(), "-1/2-1/2*i");
        assert_eq!(x.to_wire().parse::<Gq>().unwrap(), x);
        assert_eq!(
            "1/2+-3/4*i".parse::<Gq>().unwrap(),
            Gq::complex(1, 2, -3, 4)
        );
        assert_eq!(Gq::int(7).to_wire(), "7/1+0/1*i");
    }

    #[test]
    fn lenient_parsing() {
        assert_eq!("-2+i".parse::<Gq>().unwrap(), Gq::complex(-2, 1, 1, 1));
        assert_eq!("i".parse::<Gq>().unwrap(), Gq::i());
        assert_eq!("-i".parse::<Gq>().unwrap(), -Gq::i());
        assert_eq!("3/2".parse::<Gq>().unwrap(), Gq::ratio(3, 2));
        assert_eq!("2.5".parse::<Gq>().unwrap(), Gq::ratio(5, 2));
        assert_eq!("4i".parse::<Gq>().unwrap(), Gq::complex(0, 1, 4, 1));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
    }

    #[test]
    fn inverse_and_conjugation() {
        let x = Gq::complex(3, 1, -4, 1);
        assert_eq!(&x * &x.inv().unwrap(), Gq::one());
        assert_eq!(x.conj().conj(), x);
        assert!(Gq::zero().inv().is_none());
        assert_eq!(Gq::i().pow(2), Gq::int(-1));
    }

    #[test]
    fn display() {
        assert_eq!(Gq::complex(-2, 1, 1, 1).to_string(), "-2+i");
        assert_eq!(Gq::complex(0, 1, -3, 4).to_string(), "-3/4i");
        assert_eq!(Gq::ratio(3, 2).to_string(), "3/2");
    }
}
