//! Special vectors: chains attached to the points `p, p−1, p−2, …` of one
//! exponent lattice.

use std::cmp::Ordering;
use std::fmt;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::algebra::Gq;
use crate::local::ChainVector;

/// `Φ` with `Φ(top − l) = chains[l]`. `chains[0]` is nonempty unless `Φ = 0`,
/// so `top = γ(Φ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecialVector {
    size: usize,
    top: Gq,
    chains: Vec<ChainVector>,
}

impl SpecialVector {
    pub fn new(size: usize, top: Gq, chains: Vec<ChainVector>) -> Self {
        assert!(
            chains.iter().all(|c| c.size() == size),
            "chain size mismatch"
        );
        let lead = chains.iter().take_while(|c| c.is_empty()).count();
        let mut chains = chains[lead..].to_vec();
        while chains.last().is_some_and(ChainVector::is_empty) {
            chains.pop();
        }
        let top = if chains.is_empty() {
            Gq::zero()
        } else {
            &top - &Gq::int(lead as i64)
        };
        SpecialVector { size, top, chains }
    }

    pub fn zero(size: usize) -> Self {
        SpecialVector {
            size,
            top: Gq::zero(),
            chains: Vec::new(),
        }
    }

    /// A vector with one nonempty chain.
    pub fn single(p: Gq, chain: ChainVector) -> Self {
        SpecialVector::new(chain.size(), p, vec![chain])
    }

    /// Build from `(point, chain)` pairs on one lattice.
    ///
    /// # Panics
    /// If two points differ by a non-integer.
    pub fn from_points(size: usize, pts: &[(Gq, ChainVector)]) -> Self {
        let nonempty: Vec<&(Gq, ChainVector)> = pts.iter().filter(|(_, c)| !c.is_empty()).collect();
        let Some(top) = nonempty
            .iter()
            .map(|(p, _)| p)
            .max_by(|a, b| cmp_re(a, b))
            .cloned()
        else {
            return SpecialVector::zero(size);
        };
        let mut chains: Vec<ChainVector> = Vec::new();
        for (p, c) in nonempty {
            let l = (&top - p)
                .to_i64()
                .filter(|&l| l >= 0)
                .expect("points on one lattice") as usize;
            if chains.len() <= l {
                chains.resize(l + 1, ChainVector::empty(size));
            }
            chains[l] = chains[l].add(c);
        }
        SpecialVector::new(size, top, chains)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_zero(&self) -> bool {
        self.chains.is_empty()
    }

    /// `γ(Φ)`
    pub fn gamma(&self) -> Option<&Gq> {
        (!self.is_zero()).then_some(&self.top)
    }

    pub fn chains(&self) -> &[ChainVector] {
        &self.chains
    }

    /// `Φ(x)`; empty off the support.
    pub fn at(&self, x: &Gq) -> ChainVector {
        match self.offset_of(x) {
            Some(l) if l < self.chains.len() => self.chains[l].clone(),
            _ => ChainVector::empty(self.size),
        }
    }

    fn offset_of(&self, x: &Gq) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        (&self.top - x)
            .to_i64()
            .filter(|&l| l >= 0)
            .map(|l| l as usize)
    }

    /// Nonempty `(point, chain)` pairs, top first.
    pub fn points(&self) -> Vec<(Gq, &ChainVector)> {
        self.chains
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(l, c)| (&self.top - &Gq::int(l as i64), c))
            .collect()
    }

    /// True when `x − γ(Φ)` is an integer.
    pub fn same_lattice(&self, x: &Gq) -> bool {
        !self.is_zero() && (&self.top - x).to_i64().is_some()
    }

    /// Largest chain length over the points with `Re > line`.
    pub fn height_above(&self, line: &BigRational) -> usize {
        self.points()
            .iter()
            .filter(|(p, _)| p.re() > line)
            .map(|(_, c)| c.len())
            .max()
            .unwrap_or(0)
    }

    /// `m^x(Φ)`: largest chain length over the lattice points `≥ x`.
    pub fn height_from(&self, x: &Gq) -> usize {
        if !self.same_lattice(x) {
            return 0;
        }
        self.points()
            .iter()
            .filter(|(p, _)| p.re() >= x.re())
            .map(|(_, c)| c.len())
            .max()
            .unwrap_or(0)
    }

    /// Total height `m(Φ)`.
    pub fn height(&self) -> usize {
        self.chains.iter().map(ChainVector::len).max().unwrap_or(0)
    }

    fn map(&self, f: impl Fn(&ChainVector) -> ChainVector) -> Self {
        SpecialVector::new(
            self.size,
            self.top.clone(),
            self.chains.iter().map(f).collect(),
        )
    }

    pub fn shift_t(&self) -> Self {
        self.map(ChainVector::shift_t)
    }

    pub fn shift_t_pow(&self, k: usize) -> Self {
        self.map(|c| c.shift_t_pow(k))
    }

    pub fn invol_c(&self) -> Self {
        self.map(ChainVector::invol_c)
    }

    pub fn invol_j(&self) -> Self {
        self.map(ChainVector::invol_j)
    }

    pub fn invol_i(&self) -> Self {
        self.map(ChainVector::invol_i)
    }

    pub fn scale(&self, c: &Gq) -> Self {
        self.map(|x| x.scale(c))
    }

    /// # Panics
    /// If both are nonzero and live on different lattices.
    pub fn add(&self, o: &Self) -> Self {
        let mut pts: Vec<(Gq, ChainVector)> = self
            .points()
            .into_iter()
            .map(|(p, c)| (p, c.clone()))
            .collect();
        pts.extend(o.points().into_iter().map(|(p, c)| (p, c.clone())));
        SpecialVector::from_points(self.size, &pts)
    }

    /// Sort key: decreasing `Re γ`, increasing `Im γ`, decreasing height,
    /// then the chain data.
    pub fn canonical_cmp(&self, o: &Self) -> Ordering {
        let z = Gq::zero();
        let (a, b) = (self.gamma().unwrap_or(&z), o.gamma().unwrap_or(&z));
        b.re()
            .cmp(a.re())
            .then_with(|| a.im().cmp(b.im()))
            .then_with(|| o.height().cmp(&self.height()))
            .then_with(|| chain_key(self).cmp(&chain_key(o)))
    }
}

fn chain_key(v: &SpecialVector) -> Vec<Vec<Vec<Gq>>> {
    v.chains.iter().map(|c| c.entries().to_vec()).collect()
}

fn cmp_re(a: &Gq, b: &Gq) -> Ordering {
    a.re().cmp(b.re())
}

impl fmt::Debug for SpecialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let pts = self.points();
        for (i, (p, c)) in pts.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}@{p}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    exponent: Gq,
    chains: Vec<ChainVector>,
}

/// Wire form: `{"exponent": γ, "chains": [Φ(γ), Φ(γ−1), …]}`.
impl Serialize for SpecialVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            exponent: self.top.clone(),
            chains: self.chains.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpecialVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let size = w
            .chains
            .iter()
            .find(|c| !c.is_empty())
            .map_or(1, ChainVector::size);
        if w.chains.iter().any(|c| !c.is_empty() && c.size() != size) {
            return Err(serde::de::Error::custom("chains of different sizes"));
        }
        let chains = w
            .chains
            .into_iter()
            .map(|c| {
                if c.is_empty() {
                    ChainVector::empty(size)
                } else {
                    c
                }
            })
            .collect();
        Ok(SpecialVector::new(size, w.exponent, chains))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_top() {
        let v = SpecialVector::new(
            1,
            Gq::int(2),
            vec![
                ChainVector::empty(1),
                ChainVector::scalar_ints(&[1, 0]),
                ChainVector::empty(1),
            ],
        );
        assert_eq!(v.gamma(), Some(&Gq::int(1)));
        assert_eq!(v.chains().len(), 1);
        assert_eq!(v.at(&Gq::int(1)), ChainVector::scalar_ints(&[1, 0]));
        assert!(v.at(&Gq::ratio(1, 2)).is_empty());
        assert_eq!(v.height_from(&Gq::int(2)), 0);
        assert_eq!(v.height_from(&Gq::int(1)), 2);
    }

    #[test]
    fn shift_drops_points() {
        let v = SpecialVector::from_points(
            1,
            &[
                (Gq::int(0), ChainVector::scalar_ints(&[1])),
                (Gq::int(-1), ChainVector::scalar_ints(&[1, 0])),
            ],
        );
        let t = v.shift_t();
        assert_eq!(t.gamma(), Some(&Gq::int(-1)));
        assert_eq!(t.at(&Gq::int(-1)), ChainVector::scalar_ints(&[1]));
        let back: SpecialVector =
            serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(back, v);
    }
}
