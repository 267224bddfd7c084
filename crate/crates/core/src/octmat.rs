//! Square matrices with octonion entries, the involution `J` (conjugate
//! transpose), the Hermitian / skew-Hermitian split and the trace form.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::kmat::KMatrix;
use crate::octonion::Octonion;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OctMatrix {
    n: usize,
    entries: Vec<Octonion>,
}

impl OctMatrix {
    pub fn zero(field: Field, n: usize) -> Self {
        Self { n, entries: (0..n * n).map(|_| Octonion::zero(field)).collect() }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.entries[i * n + i] = Octonion::one(field);
        }
        m
    }

    /// Row-major entries; the length must be a perfect square and all
    /// entries must share one field.
    pub fn from_entries(entries: Vec<Octonion>) -> Result<Self> {
        let n = (0..=entries.len()).find(|k| k * k >= entries.len()).unwrap_or(0);
        if n * n != entries.len() || n == 0 {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        let field = entries[0].field();
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Octonion) -> Self {
        Self { n, entries: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    /// `x ⊗ a`: the matrix with entries `x_ij a`.
    pub fn tensor(x: &KMatrix, a: &Octonion) -> Self {
        Self::from_fn(x.n(), |i, j| a.scale(x.get(i, j)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.entries[0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &Octonion {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Octonion] {
        &self.entries
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: other.n });
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Ordinary matrix product; each entry sums `a_ik b_kj` for `k = 0..n`
    /// left to right.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.n;
        let mut out = Self::zero(self.field(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self { n: self.n, entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| a.scale(s)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(|a| -a).collect() }
    }

    /// Entrywise conjugation `X̄`.
    pub fn conj(&self) -> Self {
        Self { n: self.n, entries: self.entries.iter().map(Octonion::conj).collect() }
    }

    /// `J: (a_ij) ↦ (conj(a_ji))`.
    pub fn involution(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    /// Octonion-valued trace `Σ a_ii`.
    pub fn trace(&self) -> Octonion {
        (0..self.n).fold(Octonion::zero(self.field()), |acc, i| &acc + self.get(i, i))
    }

    /// `X ∘ Y = (XY + YX)/2`.
    pub fn jordan(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(other)?.add(&other.mul(self)?)?.scale(&self.field().half()))
    }

    /// `[X, Y] = XY - YX`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Octonion::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.involution() == *self
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.involution() == self.neg()
    }
}

pub fn mat_mul(x: &OctMatrix, y: &OctMatrix) -> Result<OctMatrix> {
    x.mul(y)
}

pub fn mat_add(x: &OctMatrix, y: &OctMatrix) -> Result<OctMatrix> {
    x.add(y)
}

pub fn scalar_mul(s: &Scalar, x: &OctMatrix) -> OctMatrix {
    x.scale(s)
}

pub fn mat_conj(x: &OctMatrix) -> OctMatrix {
    x.conj()
}

pub fn involution_j(x: &OctMatrix) -> OctMatrix {
    x.involution()
}

/// `X = P + M` with `P = (X + J(X))/2` Hermitian and `M = (X - J(X))/2`
/// skew-Hermitian.
pub fn herm_split(x: &OctMatrix) -> (OctMatrix, OctMatrix) {
    let half = x.field().half();
    let j = x.involution();
    let plus = x.add(&j).expect("same shape").scale(&half);
    let minus = x.sub(&j).expect("same shape").scale(&half);
    (plus, minus)
}

/// The octonion `Tr(XY + X̄Ȳ)`. Its imaginary part need not vanish on
/// Hermitian inputs; see [`trace_form`].
pub fn trace_form_octonion(x: &OctMatrix, y: &OctMatrix) -> Result<Octonion> {
    Ok(x.mul(y)?.add(&x.conj().mul(&y.conj())?)?.trace())
}

/// The symmetric bilinear form `(X, Y) ↦ Tr(XY + X̄Ȳ)` on `sym^±(M_n(O), J)`,
/// read off as the coefficient of `1`.
///
/// The real part of `X̄Ȳ`'s trace equals that of `XY` (conjugation reverses
/// products and `T(uv) = T(vu)`), so the value is `T(Tr(XY))`: the trace
/// of the octonion `Tr(XY)`. The imaginary part of `Tr(XY + X̄Ȳ)` equals
/// `2 Im Tr(XY)` and is nonzero for pairs such as `(x⊗e1, y⊗e2)`. That part
/// is discarded; use [`trace_form_strict`] to insist on a scalar.
///
/// Both arguments must be Hermitian or both skew-Hermitian.
pub fn trace_form(x: &OctMatrix, y: &OctMatrix) -> Result<Scalar> {
    let same_kind = (x.is_hermitian() && y.is_hermitian()) || (x.is_skew_hermitian() && y.is_skew_hermitian());
    if !same_kind {
        return Err(Error::NotInSubspace("trace_form needs two Hermitian or two skew-Hermitian matrices".into()));
    }
    Ok(trace_form_octonion(x, y)?.real().clone())
}

/// Like [`trace_form`] but fails with [`Error::NonScalarValue`] when
/// `Tr(XY + X̄Ȳ)` has a surviving imaginary component.
pub fn trace_form_strict(x: &OctMatrix, y: &OctMatrix) -> Result<Scalar> {
    let t = trace_form_octonion(x, y)?;
    if !t.is_scalar() {
        return Err(Error::NonScalarValue);
    }
    trace_form(x, y)
}
