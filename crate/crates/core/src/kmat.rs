//! Square matrices over the ground field, and the symmetric / skew matrix
//! units that index the octonion-matrix bases.

use alloc::vec::Vec;

use crate::exactnum::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KMatrix {
    n: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl KMatrix {
    pub fn zero(field: Field, n: usize) -> Self {
        Self { n, field, data: (0..n * n).map(|_| field.zero()).collect() }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// `E_uv`, the matrix unit.
    pub fn unit(field: Field, n: usize, u: usize, v: usize) -> Self {
        let mut m = Self::zero(field, n);
        m.data[u * n + v] = field.one();
        m
    }

    /// `S_uv = E_uv + E_vu` for `u < v`, and `S_uu = E_uu`.
    pub fn sym_unit(field: Field, n: usize, u: usize, v: usize) -> Self {
        let mut m = Self::unit(field, n, u, v);
        if u != v {
            m.data[v * n + u] = field.one();
        }
        m
    }

    /// `A_uv = E_uv - E_vu` for `u < v`.
    pub fn skew_unit(field: Field, n: usize, u: usize, v: usize) -> Self {
        assert!(u < v, "skew unit needs u < v");
        let mut m = Self::unit(field, n, u, v);
        m.data[v * n + u] = -field.one();
        m
    }

    pub fn from_fn(field: Field, n: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, field, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i * self.n + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { n: self.n, field: self.field, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { n: self.n, field: self.field, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { n: self.n, field: self.field, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    /// `x ∘ y = (xy + yx)/2`.
    pub fn jordan(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self)).scale(&self.field.half())
    }

    /// `[x, y] = xy - yx`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.add(&self.transpose()).is_zero()
    }
}

/// Index pairs `(u, v)` with `u <= v` in row-major order.
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect()
}

/// Index pairs `(u, v)` with `u < v` in row-major order.
pub fn skew_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Basis of the symmetric matrices `M_n^+`.
pub fn sym_basis(field: Field, n: usize) -> Vec<KMatrix> {
    sym_pairs(n).into_iter().map(|(u, v)| KMatrix::sym_unit(field, n, u, v)).collect()
}

/// Basis of the skew-symmetric matrices `M_n^-`.
pub fn skew_basis(field: Field, n: usize) -> Vec<KMatrix> {
    skew_pairs(n).into_iter().map(|(u, v)| KMatrix::skew_unit(field, n, u, v)).collect()
}

/// Coordinates of a symmetric matrix in [`sym_basis`] order.
pub fn sym_coords(m: &KMatrix) -> Vec<Scalar> {
    sym_pairs(m.n()).into_iter().map(|(u, v)| m.get(u, v).clone()).collect()
}

/// Coordinates of a skew matrix in [`skew_basis`] order.
pub fn skew_coords(m: &KMatrix) -> Vec<Scalar> {
    skew_pairs(m.n()).into_iter().map(|(u, v)| m.get(u, v).clone()).collect()
}

pub fn combine(field: Field, n: usize, basis: &[KMatrix], coeffs: &[Scalar]) -> KMatrix {
    basis.iter().zip(coeffs).fold(KMatrix::zero(field, n), |acc, (b, c)| acc.add(&b.scale(c)))
}
