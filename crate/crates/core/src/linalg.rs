//! Linear algebra over the chain ring `Z/p^r`.
//!
//! Submodules of `(Z/p^r)^w` are kept in Howell form: a row echelon form
//! whose pivots are powers of `p`, whose entries above each pivot are reduced
//! below that pivot, and which is closed under the annihilator rows
//! `p^(r-v) * row`. The Howell form of a submodule is unique, so it doubles
//! as a canonical key for equality and hashing.

use crate::arith::{inverse_mod, mul_mod};

/// The coefficient ring `Z/p^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChainModulus {
    p: u64,
    r: u32,
    n: u64,
}

impl ChainModulus {
    pub fn new(p: u64, r: u32) -> Self {
        let n = p.checked_pow(r).expect("p^r overflows u64");
        Self { p, r, n }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `p^r`.
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// p-adic valuation of a residue; `r` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        if x.is_multiple_of(self.n) {
            return self.r;
        }
        let mut v = 0;
        let mut x = x;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    pub fn pow_p(&self, v: u32) -> u64 {
        self.p.pow(v)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.n - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.n)
    }

    pub fn inv(&self, u: u64) -> Option<u64> {
        inverse_mod(u % self.n, self.n)
    }

    fn axpy(&self, row: &mut [u64], factor: u64, other: &[u64]) {
        // row -= factor * other
        if factor == 0 {
            return;
        }
        for (x, &y) in row.iter_mut().zip(other) {
            if y != 0 {
                *x = self.sub(*x, self.mul(factor, y));
            }
        }
    }

    fn scale(&self, row: &mut [u64], factor: u64) {
        for x in row.iter_mut() {
            *x = self.mul(*x, factor);
        }
    }
}

/// A submodule of `(Z/p^r)^width` in Howell form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HowellBasis {
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<(usize, u32)>,
}

impl HowellBasis {
    pub fn zero(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Howell form of the row span of `rows`.
    pub fn from_rows(m: &ChainModulus, width: usize, rows: Vec<Vec<u64>>) -> Self {
        let mut pending: Vec<Vec<u64>> = rows
            .into_iter()
            .map(|mut row| {
                assert_eq!(row.len(), width, "row width mismatch");
                row.iter_mut().for_each(|x| *x %= m.n);
                row
            })
            .filter(|row| row.iter().any(|&x| x != 0))
            .collect();
        let mut out_rows = Vec::new();
        let mut pivots = Vec::new();

        for col in 0..width {
            let best = pending
                .iter()
                .enumerate()
                .filter(|(_, row)| row[col] != 0)
                .min_by_key(|(_, row)| m.valuation(row[col]))
                .map(|(i, _)| i);
            let Some(best) = best else { continue };
            let mut piv = pending.swap_remove(best);
            let v = m.valuation(piv[col]);
            let pv = m.pow_p(v);
            let unit = piv[col] / pv;
            m.scale(&mut piv, m.inv(unit).expect("unit part is invertible"));
            debug_assert_eq!(piv[col], pv);

            for row in pending.iter_mut() {
                if row[col] != 0 {
                    let f = row[col] / pv;
                    m.axpy(row, f, &piv);
                    debug_assert_eq!(row[col], 0);
                }
            }
            if v > 0 {
                let mut ann = piv.clone();
                m.scale(&mut ann, m.pow_p(m.r - v));
                pending.push(ann);
            }
            pending.retain(|row| row.iter().any(|&x| x != 0));
            out_rows.push(piv);
            pivots.push((col, v));
        }

        for i in 0..out_rows.len() {
            let (col, v) = pivots[i];
            let pv = m.pow_p(v);
            let (above, rest) = out_rows.split_at_mut(i);
            let piv = &rest[0];
            for row in above.iter_mut() {
                let q = row[col] / pv;
                m.axpy(row, q, piv);
            }
        }

        Self {
            width,
            rows: out_rows,
            pivots,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// `(column, valuation)` of each pivot.
    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    /// The module has `p^log_size` elements.
    pub fn log_size(&self, m: &ChainModulus) -> u32 {
        self.pivots.iter().map(|&(_, v)| m.r - v).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, m: &ChainModulus, x: &[u64]) -> bool {
        let mut x: Vec<u64> = x.iter().map(|&e| e % m.n).collect();
        for (row, &(col, v)) in self.rows.iter().zip(&self.pivots) {
            let e = x[col];
            let pv = m.pow_p(v);
            if !e.is_multiple_of(pv) {
                return false;
            }
            m.axpy(&mut x, e / pv, row);
        }
        x.iter().all(|&e| e == 0)
    }

    /// Submodule sum.
    pub fn join(&self, m: &ChainModulus, other: &HowellBasis) -> HowellBasis {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Self::from_rows(m, self.width, rows)
    }

    pub fn is_submodule_of(&self, m: &ChainModulus, other: &HowellBasis) -> bool {
        self.rows.iter().all(|row| other.contains(m, row))
    }

    /// Every element exactly once, as `sum c_i row_i` with `c_i < p^(r - v_i)`.
    pub fn for_each_element(&self, m: &ChainModulus, mut f: impl FnMut(&[u64])) {
        let bounds: Vec<u64> = self.pivots.iter().map(|&(_, v)| m.pow_p(m.r - v)).collect();
        let mut digits = vec![0u64; self.rows.len()];
        let mut current = vec![0u64; self.width];
        loop {
            f(&current);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return;
                }
                digits[i] += 1;
                for (c, &y) in current.iter_mut().zip(&self.rows[i]) {
                    *c = m.add(*c, y);
                }
                if digits[i] < bounds[i] {
                    break;
                }
                // wrapped: digits[i] * row_i = p^(r-v) * row_i, remove it
                let mut wrapped = self.rows[i].clone();
                m.scale(&mut wrapped, bounds[i]);
                for (c, &y) in current.iter_mut().zip(&wrapped) {
                    *c = m.sub(*c, y);
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Howell basis of `{ v : sum_j a_ij v_j = 0 for every row a_i }`.
pub fn kernel(m: &ChainModulus, functionals: &[Vec<u64>], width: usize) -> HowellBasis {
    let k = functionals.len();
    let aug: Vec<Vec<u64>> = (0..width)
        .map(|j| {
            let mut row = Vec::with_capacity(k + width);
            row.extend(functionals.iter().map(|f| f[j] % m.n));
            row.extend((0..width).map(|t| u64::from(t == j)));
            row
        })
        .collect();
    let h = HowellBasis::from_rows(m, k + width, aug);
    let tails = h
        .rows
        .iter()
        .zip(&h.pivots)
        .filter(|(_, &(col, _))| col >= k)
        .map(|(row, _)| row[k..].to_vec())
        .collect();
    HowellBasis::from_rows(m, width, tails)
}

/// Inverse of a square matrix over `Z/p^r`, `None` when its determinant is not a unit.
pub fn invert(m: &ChainModulus, matrix: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let size = matrix.len();
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), size);
            let mut r: Vec<u64> = row.iter().map(|&x| x % m.n).collect();
            r.extend((0..size).map(|t| u64::from(t == i)));
            r
        })
        .collect();
    for col in 0..size {
        let piv = (col..size).find(|&i| !a[i][col].is_multiple_of(m.p))?;
        a.swap(col, piv);
        let inv = m.inv(a[col][col])?;
        m.scale(&mut a[col], inv);
        let pivot_row = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && row[col] != 0 {
                let f = row[col];
                m.axpy(row, f, &pivot_row);
            }
        }
    }
    Some(a.into_iter().map(|row| row[size..].to_vec()).collect())
}
