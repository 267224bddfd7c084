//! Small dense matrices over `F_p` (word-size `p`).

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{inv_mod, mul_mod};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseModP {
    rows: usize,
    cols: usize,
    p: u64,
    data: Vec<u64>,
}

impl DenseModP {
    pub fn zero(rows: usize, cols: usize, p: u64) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = Self::zero(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let p = self.p;
        let mut out = Self::zero(self.rows, other.cols, p);
        // p < 2^32, so p^2 < 2^64; accumulate with one reduction per term
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for (o, &b) in orow.iter_mut().zip(other.row(k)) {
                    if b != 0 {
                        *o = (*o + a * b % p) % p;
                    }
                }
            }
        }
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: u64, other: &Self) {
        let p = self.p;
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            if y != 0 {
                *x = (*x + mul_mod(c, y, p)) % p;
            }
        }
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b % self.p) % self.p))
            .collect()
    }

    /// Kernel basis of the map `v ↦ M v`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| m[i * cols + c] != 0) else { continue };
            if piv != r {
                for j in 0..cols {
                    m.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(m[r * cols + c], p).expect("nonzero");
            for j in c..cols {
                m[r * cols + j] = mul_mod(m[r * cols + j], inv, p);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let f = m[i * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = mul_mod(f, m[r * cols + j], p);
                    let x = m[i * cols + j];
                    m[i * cols + j] = if x >= t { x - t } else { x + p - t };
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut out = Vec::new();
        for f in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (k, &pc) in pivots.iter().enumerate() {
                let x = m[k * cols + f];
                v[pc] = if x == 0 { 0 } else { p - x };
            }
            out.push(v);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_small_matrix() {
        let mut m = DenseModP::zero(2, 3, 7);
        m.set(0, 0, 1);
        m.set(0, 1, 2);
        m.set(1, 2, 3);
        let k = m.nullspace();
        assert_eq!(k, vec![vec![5, 1, 0]]);
        assert!(m.apply(&k[0]).iter().all(|&x| x == 0));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.transpose().rank(), 2);
    }

    #[test]
    fn product_with_identity() {
        let mut m = DenseModP::zero(3, 3, 11);
        for i in 0..3 {
            for j in 0..3 {
                m.set(i, j, (i * 3 + j) as u64);
            }
        }
        assert_eq!(m.mul(&DenseModP::identity(3, 11)), m);
    }
}
