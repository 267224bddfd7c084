//! The octonions over an exact field, in the basis `{1, e1, ..., e7}`.
//!
//! Products of distinct imaginary units follow the seven cyclic triples
//! `(1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3)`: for a triple
//! `(a,b,c)` we have `e_a e_b = e_c`, `e_b e_c = e_a`, `e_c e_a = e_b`, and
//! reversing the order flips the sign. Every `e_i` squares to `-1`.

use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

/// The seven oriented lines of the Fano plane used for the product.
pub const FANO_TRIPLES: [[usize; 3]; 7] =
    [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];

/// Sign and index of every basis product: `b_i b_j = sign[i][j] * b_{index[i][j]}`
/// with `b_0 = 1` and `b_k = e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanoTable {
    pub sign: [[i8; 8]; 8],
    pub index: [[u8; 8]; 8],
}

impl FanoTable {
    const fn build() -> Self {
        let mut sign = [[0i8; 8]; 8];
        let mut index = [[0u8; 8]; 8];
        let mut i = 0;
        while i < 8 {
            sign[0][i] = 1;
            index[0][i] = i as u8;
            sign[i][0] = 1;
            index[i][0] = i as u8;
            i += 1;
        }
        let mut i = 1;
        while i < 8 {
            sign[i][i] = -1;
            index[i][i] = 0;
            i += 1;
        }
        let mut t = 0;
        while t < 7 {
            let [a, b, c] = FANO_TRIPLES[t];
            let cyc = [[a, b, c], [b, c, a], [c, a, b]];
            let mut r = 0;
            while r < 3 {
                let [x, y, z] = cyc[r];
                sign[x][y] = 1;
                index[x][y] = z as u8;
                sign[y][x] = -1;
                index[y][x] = z as u8;
                r += 1;
            }
            t += 1;
        }
        FanoTable { sign, index }
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> (i8, usize) {
        (self.sign[i][j], self.index[i][j] as usize)
    }
}

pub const FANO: FanoTable = FanoTable::build();

/// An octonion `c0 + c1 e1 + ... + c7 e7`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Octonion {
    coeffs: [Scalar; 8],
}

impl core::fmt::Debug for Octonion {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl Octonion {
    pub fn from_coeffs(coeffs: [Scalar; 8]) -> Result<Self> {
        let field = coeffs[0].field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { coeffs })
    }

    pub fn zero(field: Field) -> Self {
        Self { coeffs: core::array::from_fn(|_| field.zero()) }
    }

    pub fn one(field: Field) -> Self {
        Self::basis(field, 0)
    }

    pub fn scalar(s: Scalar) -> Self {
        let field = s.field();
        let mut o = Self::zero(field);
        o.coeffs[0] = s;
        o
    }

    /// `b_0 = 1`, `b_k = e_k` for `k = 1..=7`.
    pub fn basis(field: Field, k: usize) -> Self {
        assert!(k < 8, "octonion basis index out of range");
        let mut o = Self::zero(field);
        o.coeffs[k] = field.one();
        o
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    pub fn coeffs(&self) -> &[Scalar; 8] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn real(&self) -> &Scalar {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_imaginary(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { coeffs: core::array::from_fn(|k| &self.coeffs[k] * s) }
    }

    /// `oct_mul` with the field check surfaced as an error.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (sign, k) = FANO.product(i, j);
                let term = a * b;
                if sign > 0 {
                    out.coeffs[k] += &term;
                } else {
                    out.coeffs[k] -= &term;
                }
            }
        }
        out
    }

    /// Conjugation: fixes `1`, negates every `e_i`.
    pub fn conj(&self) -> Self {
        Self { coeffs: core::array::from_fn(|k| if k == 0 { self.coeffs[0].clone() } else { -&self.coeffs[k] }) }
    }

    /// `T(a) = a + conj(a)`, returned as a scalar.
    pub fn trace(&self) -> Scalar {
        &self.coeffs[0] + &self.coeffs[0]
    }

    /// `N(a)` with `a conj(a) = N(a) 1`. A surviving imaginary part means the
    /// multiplication table is broken.
    pub fn norm(&self) -> Result<Scalar> {
        let p = self.mul_unchecked(&self.conj());
        if !p.is_scalar() {
            return Err(Error::NonScalarNorm);
        }
        Ok(p.coeffs[0].clone())
    }

    /// Polarised norm `N(a,b) = N(a) + N(b) - N(a+b)` of imaginary octonions.
    pub fn norm_polar(&self, other: &Self) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if !self.is_imaginary() || !other.is_imaginary() {
            return Err(Error::NotImaginary);
        }
        let sum = self + other;
        Ok(self.norm()? + other.norm()? - sum.norm()?)
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }
}

impl<'a> Mul<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn mul(self, rhs: &Octonion) -> Octonion {
        self.mul_unchecked(rhs)
    }
}

impl<'a> Add<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn add(self, rhs: &Octonion) -> Octonion {
        Octonion { coeffs: core::array::from_fn(|k| &self.coeffs[k] + &rhs.coeffs[k]) }
    }
}

impl<'a> Sub<&'a Octonion> for &'a Octonion {
    type Output = Octonion;
    fn sub(self, rhs: &Octonion) -> Octonion {
        Octonion { coeffs: core::array::from_fn(|k| &self.coeffs[k] - &rhs.coeffs[k]) }
    }
}

impl Neg for &Octonion {
    type Output = Octonion;
    fn neg(self) -> Octonion {
        Octonion { coeffs: core::array::from_fn(|k| -&self.coeffs[k]) }
    }
}

/// Functional aliases mirroring the operation names used in reports.
pub fn oct_mul(a: &Octonion, b: &Octonion) -> Result<Octonion> {
    a.try_mul(b)
}

pub fn oct_conj(a: &Octonion) -> Octonion {
    a.conj()
}

pub fn oct_trace(a: &Octonion) -> Scalar {
    a.trace()
}

pub fn oct_norm(a: &Octonion) -> Result<Scalar> {
    a.norm()
}

pub fn oct_norm_polar(a: &Octonion, b: &Octonion) -> Result<Scalar> {
    a.norm_polar(b)
}
