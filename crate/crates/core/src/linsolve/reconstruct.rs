//! Chinese remaindering and rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::Rational;

/// Residues modulo a growing product of pairwise coprime moduli.
#[derive(Clone, Debug)]
pub struct Crt {
    modulus: BigInt,
}

impl Crt {
    pub fn new(moduli: &[u64]) -> Self {
        Self { modulus: moduli.iter().fold(BigInt::one(), |acc, &p| acc * p) }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    /// Combines residues `r_i mod p_i` into the unique value in `[0, M)`.
    pub fn combine(residues: &[u64], moduli: &[u64]) -> BigInt {
        let mut value = BigInt::zero();
        let mut m = BigInt::one();
        for (&r, &p) in residues.iter().zip(moduli) {
            // value + m * t ≡ r (mod p)
            let pb = BigInt::from(p);
            let cur = value.mod_floor(&pb);
            let diff = (BigInt::from(r) - cur).mod_floor(&pb);
            let minv = mod_inverse(&m.mod_floor(&pb), &pb).expect("moduli are coprime");
            let t = (diff * minv).mod_floor(&pb);
            value += &m * t;
            m *= pb;
        }
        value
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Finds `a/b ≡ u (mod m)` with `|a|, b ≤ sqrt(m/2)` by the half-extended
/// Euclidean algorithm, or `None` if no such fraction exists.
pub fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let u = u.mod_floor(m);
    if u.is_zero() {
        return Some(Rational::zero());
    }
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = core::mem::replace(&mut r1, r2);
        t0 = core::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::from_big(num_rational::BigRational::new(r1, t1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_combines() {
        let moduli = [7u64, 11, 13];
        let x = 500u64;
        let res: alloc::vec::Vec<u64> = moduli.iter().map(|p| x % p).collect();
        assert_eq!(Crt::combine(&res, &moduli), BigInt::from(500));
    }

    #[test]
    fn reconstructs_small_fractions() {
        let moduli = [2147483647u64, 2147483629];
        let m = Crt::new(&moduli).modulus().clone();
        for (n, d) in [(-3i64, 7i64), (1, 2), (0, 1), (12345, 678), (-1, 1)] {
            let q = Rational::new(n as i128, d as i128);
            let res: alloc::vec::Vec<u64> = moduli.iter().map(|&p| q.reduce_mod(p).unwrap()).collect();
            let u = Crt::combine(&res, &moduli);
            assert_eq!(rational_reconstruct(&u, &m), Some(q));
        }
    }

    #[test]
    fn agrees_with_brute_force_search() {
        let m = 101i64;
        let bound = 7i64; // floor(sqrt(101 / 2))
        for u in 0..m {
            let found = (1..=bound).find_map(|b| {
                let a = (b * u).rem_euclid(m);
                let a = if a > m / 2 { a - m } else { a };
                (a.abs() <= bound && a.gcd(&b) == 1).then_some((a, b))
            });
            let got = rational_reconstruct(&BigInt::from(u), &BigInt::from(m));
            match (found, got) {
                (None, None) => {}
                (Some(_), Some(q)) => {
                    assert_eq!(q.reduce_mod(101), Some(u as u64));
                }
                (f, g) => panic!("u = {u}: brute force {f:?}, reconstruction {g:?}"),
            }
        }
    }
}
