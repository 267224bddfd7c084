//! Randomized consistency checks of the octonion multiplication table.

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::FormulaCheck;
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::octonion::Octonion;
use crate::sample;
use crate::structure::Subspace;

/// `x` restricted to the span of all basis elements except `1` and `e_i`.
fn in_b(x: &Octonion, i: usize) -> bool {
    x.coeff(0).is_zero() && x.coeff(i).is_zero()
}

fn coords(x: &Octonion) -> Vec<Scalar> {
    x.coeffs().to_vec()
}

/// Runs `cases` random instances of each law over `field`:
///
/// * `a² - T(a)a + N(a)1 = 0`
/// * `ab + ba = N(a,b)1` for imaginary `a, b`
/// * `conj(ab) = conj(b)conj(a)`
/// * `(aa)b = a(ab)` and `(ab)b = a(bb)`
/// * `N(ab) = N(a)N(b)`
/// * `e_i B_i = B_i e_i = B_i`, both as a spanning statement and on random
///   elements of `B_i`
pub fn check_octonion_laws<R: Rng + ?Sized>(field: Field, cases: usize, rng: &mut R) -> Result<Vec<FormulaCheck>> {
    let fail = |law: &'static str, detail: alloc::string::String| Error::FormulaMismatch { formula: law.into(), detail };
    let one = Octonion::one(field);
    let mut out = Vec::new();

    for _ in 0..cases {
        let a = sample::octonion(field, rng);
        let lhs = &(&(&a * &a) - &a.scale(&a.trace())) + &one.scale(&a.norm()?);
        if !lhs.is_zero() {
            return Err(fail("a² - T(a)a + N(a)1 = 0", format!("a={a:?}")));
        }
    }
    out.push(FormulaCheck { name: "a² - T(a)a + N(a)1 = 0", cases });

    for _ in 0..cases {
        let (a, b) = (sample::imaginary(field, rng), sample::imaginary(field, rng));
        if &(&a * &b) + &(&b * &a) != one.scale(&a.norm_polar(&b)?) {
            return Err(fail("ab + ba = N(a,b)1", format!("a={a:?} b={b:?}")));
        }
    }
    out.push(FormulaCheck { name: "ab + ba = N(a,b)1", cases });

    for _ in 0..cases {
        let (a, b) = (sample::octonion(field, rng), sample::octonion(field, rng));
        if (&a * &b).conj() != &b.conj() * &a.conj() {
            return Err(fail("conj(ab) = conj(b)conj(a)", format!("a={a:?} b={b:?}")));
        }
    }
    out.push(FormulaCheck { name: "conj(ab) = conj(b)conj(a)", cases });

    for _ in 0..cases {
        let (a, b) = (sample::octonion(field, rng), sample::octonion(field, rng));
        if &(&a * &a) * &b != &a * &(&a * &b) || &(&a * &b) * &b != &a * &(&b * &b) {
            return Err(fail("(aa)b = a(ab), (ab)b = a(bb)", format!("a={a:?} b={b:?}")));
        }
    }
    out.push(FormulaCheck { name: "(aa)b = a(ab), (ab)b = a(bb)", cases });

    for _ in 0..cases {
        let (a, b) = (sample::octonion(field, rng), sample::octonion(field, rng));
        if (&a * &b).norm()? != a.norm()? * b.norm()? {
            return Err(fail("N(ab) = N(a)N(b)", format!("a={a:?} b={b:?}")));
        }
    }
    out.push(FormulaCheck { name: "N(ab) = N(a)N(b)", cases });

    for i in 1..8 {
        let ei = Octonion::basis(field, i);
        let others: Vec<Octonion> = (1..8).filter(|&j| j != i).map(|j| Octonion::basis(field, j)).collect();
        for images in [
            others.iter().map(|x| &ei * x).collect::<Vec<_>>(),
            others.iter().map(|x| x * &ei).collect::<Vec<_>>(),
        ] {
            let span = Subspace::span(field, 8, images.iter().map(|x| x.coeffs().as_slice()))?;
            if !images.iter().all(|x| in_b(x, i)) || span.dim() != 6 {
                return Err(fail("e_i B_i = B_i e_i = B_i", format!("i={i}")));
            }
        }
    }
    for _ in 0..cases {
        let i = rng.gen_range(1..8);
        let mut c = coords(&sample::octonion(field, rng));
        c[0] = field.zero();
        c[i] = field.zero();
        let x = Octonion::from_coeffs(c.try_into().expect("eight coefficients"))?;
        let ei = Octonion::basis(field, i);
        if !in_b(&(&ei * &x), i) || !in_b(&(&x * &ei), i) {
            return Err(fail("e_i B_i = B_i e_i = B_i", format!("i={i} x={x:?}")));
        }
    }
    out.push(FormulaCheck { name: "e_i B_i = B_i e_i = B_i", cases: cases + 14 });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn laws_hold_over_q_and_f7() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for field in [Field::Rationals, Field::new(crate::exactnum::FieldSpec::prime(7)).unwrap()] {
            let checks = check_octonion_laws(field, 50, &mut rng).unwrap();
            assert_eq!(checks.len(), 6);
        }
    }
}
