//! Linear endomorphisms of `K^d` as dense `d × d` matrices acting on column
//! vectors. The flat form used by the linear systems puts entry `(p, q)` at
//! index `p * d + q`.

use alloc::vec::Vec;

use crate::exactnum::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap {
    dim: usize,
    field: Field,
    entries: Vec<Scalar>,
}

#[inline]
pub fn flat_index(dim: usize, p: usize, q: usize) -> usize {
    p * dim + q
}

impl LinearMap {
    pub fn from_flat(field: Field, dim: usize, entries: Vec<Scalar>) -> Self {
        assert_eq!(entries.len(), dim * dim);
        Self { dim, field, entries }
    }

    /// The map sending `b_q` to `images[q]`.
    pub fn from_images(field: Field, images: &[Vec<Scalar>]) -> Self {
        let dim = images.len();
        let mut entries = alloc::vec![field.zero(); dim * dim];
        for (q, col) in images.iter().enumerate() {
            for (p, c) in col.iter().enumerate() {
                entries[flat_index(dim, p, q)] = c.clone();
            }
        }
        Self { dim, field, entries }
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Self { dim, field, entries: alloc::vec![field.zero(); dim * dim] }
    }

    pub fn identity(field: Field, dim: usize) -> Self {
        let mut m = Self::zero(field, dim);
        for i in 0..dim {
            m.entries[flat_index(dim, i, i)] = field.one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, p: usize, q: usize) -> &Scalar {
        &self.entries[flat_index(self.dim, p, q)]
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.dim.max(1)).map(<[Scalar]>::to_vec).collect()
    }

    /// `M b_q`.
    pub fn image(&self, q: usize) -> Vec<Scalar> {
        (0..self.dim).map(|p| self.get(p, q).clone()).collect()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = alloc::vec![self.field.zero(); self.dim];
        for (q, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (p, o) in out.iter_mut().enumerate() {
                let m = self.get(p, q);
                if !m.is_zero() {
                    *o += &(m * x);
                }
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let images: Vec<Vec<Scalar>> = (0..self.dim).map(|q| self.apply(&other.image(q))).collect();
        Self::from_images(self.field, &images)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { dim: self.dim, field: self.field, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { dim: self.dim, field: self.field, entries: self.entries.iter().map(|a| a * s).collect() }
    }

    /// `[self, other] = self ∘ other - other ∘ self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.dim).fold(self.field.zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }
}
