//! Seeded random inputs for the randomized checks.

use alloc::vec::Vec;

use rand::Rng;

use crate::exactnum::{Field, Scalar};
use crate::kmat::{combine, skew_basis, sym_basis, KMatrix};
use crate::octonion::Octonion;

/// Small random scalar: an integer in `[-6, 6]`, over `Q` occasionally a
/// fraction with denominator up to 4.
pub fn scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    let n = rng.gen_range(-6i64..=6);
    match field {
        Field::Rationals if rng.gen_bool(0.25) => field.from_ratio(n, rng.gen_range(1..=4)).expect("nonzero denominator"),
        _ => field.from_i64(n),
    }
}

pub fn vector<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R) -> Vec<Scalar> {
    (0..len).map(|_| scalar(field, rng)).collect()
}

pub fn octonion<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Octonion {
    Octonion::from_coeffs(core::array::from_fn(|_| scalar(field, rng))).expect("one field")
}

pub fn imaginary<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Octonion {
    let mut c: [Scalar; 8] = core::array::from_fn(|_| scalar(field, rng));
    c[0] = field.zero();
    Octonion::from_coeffs(c).expect("one field")
}

pub fn symmetric<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> KMatrix {
    let basis = sym_basis(field, n);
    combine(field, n, &basis, &vector(field, basis.len(), rng))
}

pub fn skew<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> KMatrix {
    let basis = skew_basis(field, n);
    combine(field, n, &basis, &vector(field, basis.len(), rng))
}
