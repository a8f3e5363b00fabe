//! Jordan bases of the shift `T` on spaces of padded chains, adapted to
//! the flag of "vanishes on the first `a` points".
//!
//! A padded element lists, for each point `i`, a chain of exactly `M_i`
//! entries (leading zeros allowed). `T` acts pointwise by
//! `(φ_0, …, φ_{M−1}) ↦ (0, φ_0, …, φ_{M−2})`, which is the shift on
//! unpadded chains. Every subspace used here is the intersection of the
//! kernel `K` with a coordinate subspace, so all of them are computed by
//! one routine.

use crate::algebra::matrix::span_rank;
use crate::algebra::{Gq, Matrix, Vector};

/// Shape of a padded element: `N` coordinates per entry and `M_i` entries
/// at point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub lens: Vec<usize>,
}

impl Layout {
    pub fn new(n: usize, lens: Vec<usize>) -> Self {
        Layout { n, lens }
    }

    pub fn points(&self) -> usize {
        self.lens.len()
    }

    pub fn dim(&self) -> usize {
        self.lens.iter().sum::<usize>() * self.n
    }

    pub fn offset(&self, i: usize) -> usize {
        self.lens[..i].iter().sum::<usize>() * self.n
    }

    /// Padded entries at point `i`.
    pub fn point_entries(&self, v: &[Gq], i: usize) -> Vec<Vector> {
        let o = self.offset(i);
        (0..self.lens[i])
            .map(|r| v[o + r * self.n..o + (r + 1) * self.n].to_vec())
            .collect()
    }

    pub fn shift(&self, v: &[Gq]) -> Vector {
        let mut out = vec![Gq::zero(); v.len()];
        for i in 0..self.points() {
            let o = self.offset(i);
            let m = self.lens[i];
            for r in 1..m {
                for c in 0..self.n {
                    out[o + r * self.n + c] = v[o + (r - 1) * self.n + c].clone();
                }
            }
        }
        out
    }

    pub fn shift_pow(&self, v: &[Gq], k: usize) -> Vector {
        (0..k).fold(v.to_vec(), |acc, _| self.shift(&acc))
    }

    /// Coordinates that must vanish for `T^g v` to vanish on points `< a`.
    pub fn zero_coords(&self, g: usize, a: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..a.min(self.points()) {
            let o = self.offset(i);
            for r in 0..self.lens[i].saturating_sub(g) {
                out.extend((0..self.n).map(|c| o + r * self.n + c));
            }
        }
        out
    }

    /// Least `g` with `T^g v` vanishing on the points `< a`.
    pub fn height_on(&self, v: &[Gq], a: usize) -> usize {
        let mut h = 0;
        for i in 0..a.min(self.points()) {
            let o = self.offset(i);
            let m = self.lens[i];
            if let Some(r) = (0..m).find(|&r| (0..self.n).any(|c| !v[o + r * self.n + c].is_zero()))
            {
                h = h.max(m - r);
            }
        }
        h
    }

    /// Nilpotency height: least `h` with `T^h v = 0`.
    pub fn height(&self, v: &[Gq]) -> usize {
        self.height_on(v, self.points())
    }
}

/// Nonzero RREF rows spanning the same space as `vs`.
pub fn rref_basis(vs: &[Vector]) -> Vec<Vector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let (r, piv) = Matrix::from_rows(vs.to_vec()).rref();
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Basis (RREF rows) of `span(basis) ∩ {v : v[c] = 0 for c in zeros}`.
pub fn restrict(basis: &[Vector], zeros: &[usize]) -> Vec<Vector> {
    if basis.is_empty() {
        return Vec::new();
    }
    if zeros.is_empty() {
        return rref_basis(basis);
    }
    let sub = Matrix::from_rows(
        zeros
            .iter()
            .map(|&c| basis.iter().map(|b| b[c].clone()).collect())
            .collect(),
    );
    let combos = sub.kernel();
    let dim = basis[0].len();
    let vs: Vec<Vector> = combos
        .iter()
        .map(|c| {
            let mut v = vec![Gq::zero(); dim];
            for (k, b) in basis.iter().enumerate() {
                if c[k].is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(b) {
                    *x += &(&c[k] * y);
                }
            }
            v
        })
        .collect();
    rref_basis(&vs)
}

/// Reduce `v` against RREF rows (clears their pivot coordinates).
pub fn reduce(v: &[Gq], rows: &[Vector]) -> Vector {
    let mut out = v.to_vec();
    for row in rows {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if out[pc].is_zero() {
            continue;
        }
        let f = out[pc].clone();
        for (x, y) in out.iter_mut().zip(row) {
            *x -= &(&f * y);
        }
    }
    out
}

/// Heads of a Jordan basis of `T` on `span(kernel)` (which must be
/// `T`-invariant), adapted where possible to every `V_a` for
/// `a = 1..=flags`. Returned as `(head, height)` pairs, tallest first.
pub fn flag_jordan_basis(layout: &Layout, kernel: &[Vector], flags: usize) -> Vec<(Vector, usize)> {
    let k = rref_basis(kernel);
    let dim_k = k.len();
    let Some(max_h) = k.iter().map(|v| layout.height(v)).max() else {
        return Vec::new();
    };
    let all_points = layout.points();
    let mut heads: Vec<(Vector, usize)> = Vec::new();
    for h in (1..=max_h).rev() {
        let target = restrict(&k, &layout.zero_coords(h, all_points));
        let mut m: Vec<Vector> = restrict(&k, &layout.zero_coords(h - 1, all_points));
        for (head, hh) in &heads {
            m.push(layout.shift_pow(head, hh - h));
        }
        let mut rank = span_rank(&m);
        let need = target.len() - rank;
        if need == 0 {
            continue;
        }
        let mut picked = 0;
        let mut zero_sets: Vec<Vec<usize>> = Vec::new();
        for g in 0..h {
            for a in (1..=flags).rev() {
                zero_sets.push(layout.zero_coords(g, a));
            }
        }
        zero_sets.push(Vec::new());
        for zeros in zero_sets {
            if picked == need {
                break;
            }
            let s = restrict(&target, &zeros);
            if s.is_empty() {
                continue;
            }
            for cand in s {
                if picked == need {
                    break;
                }
                let ms = restrict(&m, &zeros);
                let cand = reduce(&cand, &ms);
                let mut trial = m.clone();
                trial.push(cand.clone());
                let r = span_rank(&trial);
                if r > rank {
                    rank = r;
                    m = trial;
                    heads.push((cand, h));
                    picked += 1;
                }
            }
        }
    }
    debug_assert_eq!(heads.iter().map(|(_, h)| h).sum::<usize>(), dim_k);
    heads
}

/// Condition (b): for each `a`, the last vectors `T^{h_a(Φ)−1}Φ` outside
/// `V_a`, restricted to the first `a` points, are linearly independent;
/// plus the `T`-orbits form a basis of a space of dimension `dim_k`.
pub fn is_flag_adapted(layout: &Layout, heads: &[Vector], flags: usize, dim_k: usize) -> bool {
    let mut orbit = Vec::new();
    for h in heads {
        let ht = layout.height(h);
        for j in 0..ht {
            orbit.push(layout.shift_pow(h, j));
        }
    }
    if orbit.len() != dim_k || span_rank(&orbit) != dim_k {
        return false;
    }
    for a in 1..=flags {
        let keep: Vec<usize> = (0..layout.offset(a.min(layout.points()))).collect();
        let mut leading = Vec::new();
        for h in heads {
            let g = layout.height_on(h, a);
            if g == 0 {
                continue;
            }
            let v = layout.shift_pow(h, g - 1);
            leading.push(keep.iter().map(|&c| v[c].clone()).collect::<Vector>());
        }
        if span_rank(&leading) != leading.len() {
            return false;
        }
    }
    true
}
