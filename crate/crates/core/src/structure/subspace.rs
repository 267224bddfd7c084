//! Subspaces of `K^d` kept in reduced row echelon form.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

/// A subspace of `K^ambient`. The basis rows are the unique reduced echelon
/// basis, sorted by pivot, so two subspaces are equal iff their rows are.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Self { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let mut s = Self::zero(field, ambient);
        for i in 0..ambient {
            s.insert(&unit(field, ambient, i));
        }
        s
    }

    pub fn span<'a>(field: Field, ambient: usize, vectors: impl IntoIterator<Item = &'a [Scalar]>) -> Result<Self> {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.try_insert(v)?;
        }
        Ok(s)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Reduced echelon basis, in order of increasing pivot.
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along the pivot columns; zero iff `v` lies in
    /// the subspace.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, r) in w.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.ambient && self.residual(v).iter().all(Scalar::is_zero)
    }

    pub fn try_insert(&mut self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, got: v.len() });
        }
        if v.iter().any(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.insert(v))
    }

    /// Adds `v` to the span. Returns the new echelon row (normalized residual)
    /// if the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut w = self.residual(v);
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = w[p].inv().expect("nonzero");
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&w).skip(p) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w.clone());
        Some(w)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// The annihilator `{w : <w, v> = 0 for all v}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        let mut out = Subspace::zero(self.field, self.ambient);
        let free = (0..self.ambient).filter(|c| self.pivots.binary_search(c).is_err());
        for f in free {
            let mut v = alloc::vec![self.field.zero(); self.ambient];
            v[f] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[f];
            }
            out.insert(&v);
        }
        out
    }
}

pub fn unit(field: Field, len: usize, i: usize) -> Vec<Scalar> {
    let mut v = alloc::vec![field.zero(); len];
    v[i] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Field::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn echelon_form_is_canonical() {
        let f = Field::Rationals;
        let a = Subspace::span(f, 3, [q(&[1, 2, 3]).as_slice(), q(&[0, 1, 1]).as_slice()]).unwrap();
        let b = Subspace::span(f, 3, [q(&[1, 3, 4]).as_slice(), q(&[2, 4, 6]).as_slice(), q(&[1, 1, 2]).as_slice()]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), &[q(&[1, 0, 1]), q(&[0, 1, 1])]);
        assert!(a.contains(&q(&[3, -1, 2])));
        assert!(!a.contains(&q(&[0, 0, 1])));
    }

    #[test]
    fn annihilator_pairs_to_zero() {
        let f = Field::Rationals;
        let a = Subspace::span(f, 4, [q(&[1, 2, 0, -1]).as_slice(), q(&[0, 0, 1, 5]).as_slice()]).unwrap();
        let ann = a.annihilator();
        assert_eq!(ann.dim(), 2);
        for v in a.basis() {
            for w in ann.basis() {
                let dot = v.iter().zip(w).fold(f.zero(), |acc, (x, y)| acc + x * y);
                assert!(dot.is_zero());
            }
        }
        assert_eq!(ann.annihilator(), a);
    }

    #[test]
    fn rejects_wrong_length() {
        let mut s = Subspace::zero(Field::Rationals, 2);
        assert!(s.try_insert(&q(&[1])).is_err());
    }
}
