//! Finite chains `(φ_0, …, φ_{m−1})` of vectors in `Q(i)^N`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{Gq, LaurentExpansion, Vector};

/// A chain with leading zero vectors removed, so `m(Φ)` is its length.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChainVector {
    size: usize,
    entries: Vec<Vector>,
}

impl ChainVector {
    /// Leading zero entries are dropped.
    pub fn new(size: usize, entries: Vec<Vector>) -> Self {
        assert!(
            entries.iter().all(|e| e.len() == size),
            "chain entry size mismatch"
        );
        let lead = entries
            .iter()
            .take_while(|e| e.iter().all(Gq::is_zero))
            .count();
        ChainVector {
            size,
            entries: entries[lead..].to_vec(),
        }
    }

    pub fn empty(size: usize) -> Self {
        ChainVector {
            size,
            entries: Vec::new(),
        }
    }

    /// Scalar chain from integer entries.
    pub fn scalar_ints(xs: &[i64]) -> Self {
        ChainVector::new(1, xs.iter().map(|&x| vec![Gq::int(x)]).collect())
    }

    /// Scalar chain.
    pub fn scalars(xs: &[Gq]) -> Self {
        ChainVector::new(1, xs.iter().map(|x| vec![x.clone()]).collect())
    }

    /// Unpad a flat vector of `len` consecutive entries.
    pub fn from_flat(size: usize, flat: &[Gq]) -> Self {
        ChainVector::new(size, flat.chunks(size).map(<[Gq]>::to_vec).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `m(Φ)`
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Vector] {
        &self.entries
    }

    pub fn entry(&self, r: usize) -> &Vector {
        &self.entries[r]
    }

    /// Entries left-padded with zeros to length `m ≥ m(Φ)`.
    pub fn padded(&self, m: usize) -> Vec<Vector> {
        assert!(m >= self.len(), "cannot pad a chain to a shorter length");
        let mut out = vec![vec![Gq::zero(); self.size]; m - self.len()];
        out.extend(self.entries.iter().cloned());
        out
    }

    /// Padded entries concatenated into one coordinate vector.
    pub fn flat(&self, m: usize) -> Vector {
        self.padded(m).into_iter().flatten().collect()
    }

    /// `T`: drop the last entry.
    pub fn shift_t(&self) -> Self {
        let mut e = self.entries.clone();
        e.pop();
        ChainVector::new(self.size, e)
    }

    pub fn shift_t_pow(&self, k: usize) -> Self {
        let keep = self.len().saturating_sub(k);
        ChainVector::new(self.size, self.entries[..keep].to_vec())
    }

    /// `C`: conjugate every entry.
    pub fn invol_c(&self) -> Self {
        ChainVector::new(
            self.size,
            self.entries
                .iter()
                .map(|e| e.iter().map(Gq::conj).collect())
                .collect(),
        )
    }

    /// `J`: entry `r` of an `m`-chain is multiplied by `(−1)^{m−r}`.
    pub fn invol_j(&self) -> Self {
        let m = self.len();
        ChainVector::new(
            self.size,
            self.entries
                .iter()
                .enumerate()
                .map(|(r, e)| {
                    if (m - r) % 2 == 0 {
                        e.clone()
                    } else {
                        e.iter().map(|x| -x).collect()
                    }
                })
                .collect(),
        )
    }

    /// `I = C ∘ J`
    pub fn invol_i(&self) -> Self {
        self.invol_j().invol_c()
    }

    pub fn scale(&self, c: &Gq) -> Self {
        ChainVector::new(
            self.size,
            self.entries
                .iter()
                .map(|e| e.iter().map(|x| x * c).collect())
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.len().max(o.len());
        let a = self.padded(m);
        let b = o.padded(m);
        ChainVector::new(
            self.size,
            a.iter()
                .zip(&b)
                .map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect())
                .collect(),
        )
    }

    /// `Φ[z − p]` as an exact `N×1` Laurent series at `p`.
    pub fn laurent(&self, p: &Gq) -> LaurentExpansion {
        LaurentExpansion::from_chain(p.clone(), self.size, &self.entries)
    }

    /// Same as [`laurent`](Self::laurent) but as a `1×N` row.
    pub fn laurent_row(&self, p: &Gq) -> LaurentExpansion {
        self.laurent(p).transpose()
    }
}

impl fmt::Debug for ChainVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if self.size == 1 {
                write!(f, "{}", e[0])?;
            } else {
                write!(f, "{e:?}")?;
            }
        }
        write!(f, ")")
    }
}

/// Wire form: list of entries, each a list of `a/b+c/d*i` strings.
impl Serialize for ChainVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|e| e.iter().map(Gq::to_wire).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChainVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let size = rows.first().map_or(1, Vec::len);
        let entries = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.parse::<Gq>().map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if entries.iter().any(|e| e.len() != size) {
            return Err(serde::de::Error::custom("ragged chain entries"));
        }
        Ok(ChainVector::new(size, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_and_involutions() {
        let phi = ChainVector::scalar_ints(&[1, 0]);
        assert_eq!(phi.shift_t(), ChainVector::scalar_ints(&[1]));
        assert_eq!(
            ChainVector::scalar_ints(&[1, 1]).invol_j(),
            ChainVector::scalar_ints(&[1, -1])
        );
        assert_eq!(
            ChainVector::scalar_ints(&[1, -1]).invol_i(),
            ChainVector::scalar_ints(&[1, 1])
        );
        assert_eq!(ChainVector::scalar_ints(&[0, 0, 3]).len(), 1);
    }

    #[test]
    fn commutation_rules() {
        let x = ChainVector::scalars(&[
            Gq::complex(1, 2, 1, 1),
            Gq::int(3),
            Gq::complex(0, 1, -2, 1),
        ]);
        assert_eq!(x.shift_t().invol_c(), x.invol_c().shift_t());
        // IT + TI = 0 and JT + TJ = 0
        assert!(x.shift_t().invol_i().add(&x.invol_i().shift_t()).is_empty());
        assert!(x.shift_t().invol_j().add(&x.invol_j().shift_t()).is_empty());
        assert_eq!(x.invol_i(), x.invol_c().invol_j());
    }
}
