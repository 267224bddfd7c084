//! Exact scalars: rationals (inline `i64` fast path, promoted to big integers
//! on overflow) and residues modulo a prime.
//!
//! Every value knows which field it lives in. Mixing fields inside an
//! arithmetic operator is a logic error and panics; public entry points that
//! accept values from callers check [`Scalar::field`] first and report
//! [`Error::FieldMismatch`].

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields. Residue products must fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

/// User-facing description of a ground field, validated by [`Field::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub kind: FieldKind,
    /// Permits characteristic 3. Nothing theorem-level is asserted there.
    pub exploratory: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    pub const fn rationals() -> Self {
        Self { kind: FieldKind::Rationals, exploratory: false }
    }

    pub const fn prime(p: u64) -> Self {
        Self { kind: FieldKind::PrimeField(p), exploratory: false }
    }

    pub const fn exploratory(mut self) -> Self {
        self.exploratory = true;
        self
    }
}

/// A validated ground field. Cheap to copy; acts as the arithmetic context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// `field_make`: validate a spec and hand back its arithmetic context.
pub fn field_make(spec: FieldSpec) -> Result<Field> {
    Field::new(spec)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        match spec.kind {
            FieldKind::Rationals => Ok(Field::Rationals),
            FieldKind::PrimeField(p) => {
                if p == 2 || (p == 3 && !spec.exploratory) {
                    return Err(Error::CharacteristicForbidden(p));
                }
                if p > MAX_MODULUS {
                    return Err(Error::ModulusOutOfRange(p));
                }
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                Ok(Field::Prime(p))
            }
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn half(self) -> Scalar {
        self.from_ratio(1, 2).expect("characteristic 2 is rejected at construction")
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rational::from_int(n)),
            Field::Prime(p) => Scalar::Fp(Residue::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse(format!("{num}/{den}: zero denominator")));
        }
        self.from_rational(&Rational::new(num as i128, den as i128))
    }

    /// Maps a rational into this field; over `F_p` this fails when `p` divides
    /// the denominator.
    pub fn from_rational(self, q: &Rational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(q.clone())),
            Field::Prime(p) => q
                .reduce_mod(p)
                .map(|v| Scalar::Fp(Residue::new(v, p)))
                .ok_or(Error::PrimeDividesDenominator(p)),
        }
    }

    /// Parses a canonical scalar string. Only `p` or `p/q` with integer `p`,
    /// `q` are accepted; decimals are rejected so nothing is silently rounded.
    pub fn parse(self, s: &str) -> Result<Scalar> {
        let q: Rational = s.parse()?;
        self.from_rational(&q)
    }

    pub fn contains(self, s: &Scalar) -> bool {
        s.field() == self
    }

    pub fn descriptor(self) -> String {
        match self {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---------------------------------------------------------------------------
// Rationals

/// Exact rational in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline;
/// everything else lives in a boxed [`BigRational`]. The representation is
/// canonical: a value that fits inline is never stored boxed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    pub fn from_int(n: i64) -> Self {
        Rational::Small(n, 1)
    }

    pub fn zero() -> Self {
        Rational::Small(0, 1)
    }

    pub fn one() -> Self {
        Rational::Small(1, 1)
    }

    /// Builds `num/den` in canonical form. Panics on a zero denominator.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut n, mut d) = (num, den);
        if d < 0 {
            // i128::MIN never arises: inputs are products of i64 values.
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        // BigRational::new already reduced; only the sign of the denominator
        // and the inline fast path need care.
        let q = if q.denom().is_negative() { BigRational::new(q.numer().clone(), q.denom().clone()) } else { q };
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(q)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Rational::Small(n, _) => n.signum() as i32,
            Rational::Big(b) => match b.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Rational::new(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        })
    }

    /// Residue of this rational modulo `p`, or `None` if `p` divides the denominator.
    pub fn reduce_mod(&self, p: u64) -> Option<u64> {
        match self {
            Rational::Small(n, d) => {
                let pn = n.rem_euclid(p as i64) as u64;
                let pd = d.rem_euclid(p as i64) as u64;
                inv_mod(pd, p).map(|inv| mul_mod(pn, inv, p))
            }
            Rational::Big(b) => {
                let pb = BigInt::from(p);
                let pn = b.numer().mod_floor(&pb).to_u64()?;
                let pd = b.denom().mod_floor(&pb).to_u64()?;
                inv_mod(pd, p).map(|inv| mul_mod(pn, inv, p))
            }
        }
    }

    /// Canonical form. Values are kept canonical by every constructor, so this
    /// only re-derives the representation; it is idempotent.
    pub fn canonicalize(&self) -> Self {
        match self {
            Rational::Small(n, d) => Rational::new(*n as i128, *d as i128),
            Rational::Big(b) => Rational::from_big(BigRational::new(b.numer().clone(), b.denom().clone())),
        }
    }

    fn big_op(&self, other: &Self, op: impl Fn(BigRational, BigRational) -> BigRational) -> Self {
        Rational::from_big(op(self.to_big(), other.to_big()))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        let is_int = |t: &str| {
            let digits = t.strip_prefix('-').or_else(|| t.strip_prefix('+')).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        if !is_int(num) || !is_int(den) {
            return Err(bad());
        }
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Rational::Small(s, 1),
                        None => Rational::new(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::new(a * d + c * b, b * d)
            }
            _ => self.big_op(rhs, |x, y| x + y),
        }
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::new(a * d - c * b, b * d)
            }
            _ => self.big_op(rhs, |x, y| x - y),
        }
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        match (self, rhs) {
            (Rational::Small(0, _), _) | (_, Rational::Small(0, _)) => Rational::zero(),
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(s) => Rational::Small(s, 1),
                        None => Rational::new(*a as i128 * *c as i128, 1),
                    };
                }
                Rational::new(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => self.big_op(rhs, |x, y| x * y),
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational::Small(m, *d),
                None => Rational::new(-(*n as i128), *d as i128),
            },
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

// ---------------------------------------------------------------------------
// Prime-field residues

/// Residue class modulo a prime `p < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        Self { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, other: Self) {
        assert_eq!(self.modulus, other.modulus, "field mismatch");
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

/// Inverse of `a` modulo `p` via the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

// ---------------------------------------------------------------------------
// Scalars

/// An exact scalar of some [`Field`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    Fp(Residue),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp(r) => Field::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => *q == Rational::one(),
            Scalar::Fp(r) => r.value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) => q.recip().map(Scalar::Q),
            Scalar::Fp(r) => inv_mod(r.value, r.modulus).map(|v| Scalar::Fp(Residue::new(v, r.modulus))),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp(_) => None,
        }
    }

    /// Re-expresses a scalar in another field. Rationals map to any field
    /// whose characteristic does not divide their denominator; residues only
    /// map to their own field.
    pub fn to_field(&self, field: Field) -> Result<Scalar> {
        match self {
            Scalar::Q(q) => field.from_rational(q),
            Scalar::Fp(_) if self.field() == field => Ok(self.clone()),
            Scalar::Fp(_) => Err(Error::FieldMismatch),
        }
    }

    pub fn canonicalize(&self) -> Scalar {
        match self {
            Scalar::Q(q) => Scalar::Q(q.canonicalize()),
            Scalar::Fp(r) => Scalar::Fp(Residue::new(r.value, r.modulus)),
        }
    }

    /// Canonical string: `p/q` (or `p`) for rationals, the residue for `F_p`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used for canonical sorting only (rationals by value, residues
/// by representative); it carries no field-theoretic meaning over `F_p`.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp(a), Scalar::Fp(b)) => a.cmp(b),
            (Scalar::Q(_), Scalar::Fp(_)) => Ordering::Less,
            (Scalar::Fp(_), Scalar::Q(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => fmt::Display::fmt(q, f),
            Scalar::Fp(r) => write!(f, "{}", r.value),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp(r) => write!(f, "{r:?}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                a.check(*b);
                let s = a.value + b.value;
                Scalar::Fp(Residue { value: if s >= a.modulus { s - a.modulus } else { s }, modulus: a.modulus })
            }
            _ => panic!("field mismatch"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                a.check(*b);
                let s = a.value + a.modulus - b.value;
                Scalar::Fp(Residue { value: if s >= a.modulus { s - a.modulus } else { s }, modulus: a.modulus })
            }
            _ => panic!("field mismatch"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                a.check(*b);
                Scalar::Fp(Residue { value: mul_mod(a.value, b.value, a.modulus), modulus: a.modulus })
            }
            _ => panic!("field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp(a) => Scalar::Fp(Residue::new(a.modulus - a.value, a.modulus)),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
        let n = rng.gen_range(-50i64..=50);
        let d = rng.gen_range(1i64..=12);
        match field {
            Field::Rationals => field.from_ratio(n, d).unwrap(),
            Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        }
    }

    #[test]
    fn field_make_examples() {
        assert_eq!(field_make(FieldSpec::rationals()).unwrap(), Field::Rationals);
        assert_eq!(field_make(FieldSpec::prime(7)).unwrap(), Field::Prime(7));
        assert_eq!(field_make(FieldSpec::prime(2)), Err(Error::CharacteristicForbidden(2)));
        assert_eq!(field_make(FieldSpec::prime(3)), Err(Error::CharacteristicForbidden(3)));
        assert_eq!(field_make(FieldSpec::prime(3).exploratory()).unwrap(), Field::Prime(3));
        assert_eq!(field_make(FieldSpec::prime(2).exploratory()), Err(Error::CharacteristicForbidden(2)));
        assert_eq!(field_make(FieldSpec::prime(15)), Err(Error::NotPrime(15)));
        assert_eq!(field_make(FieldSpec::prime(1)), Err(Error::NotPrime(1)));
    }

    #[test]
    fn half_is_inverse_of_two() {
        for f in [Field::Rationals, Field::Prime(5), Field::Prime(10007)] {
            assert!((f.half() * f.from_i64(2)).is_one());
        }
    }

    #[test]
    fn field_axioms_random() {
        for field in [Field::Rationals, Field::Prime(7), Field::Prime(10009)] {
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..1000 {
                let [a, b, c]: [Scalar; 3] = core::array::from_fn(|_| random_scalar(field, &mut rng));
                assert_eq!((&a + &b) + &c, &a + (&b + &c));
                assert_eq!((&a * &b) * &c, &a * (&b * &c));
                assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
                assert_eq!(&a + &b, &b + &a);
                assert_eq!(&a * &b, &b * &a);
                assert!((&a - &a).is_zero());
                if let Some(ai) = a.inv() {
                    assert!((&a * &ai).is_one());
                } else {
                    assert!(a.is_zero());
                }
            }
        }
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Rational::Big(_)));
        let back = &sq * &big.recip().unwrap();
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let min = Rational::from_int(i64::MIN);
        assert!(matches!(-&min, Rational::Big(_)));
        assert_eq!(-&(-&min), min);
    }

    #[test]
    fn canonical_strings() {
        let f = Field::Rationals;
        assert_eq!(f.from_ratio(6, -4).unwrap().to_string(), "-3/2");
        assert_eq!(f.from_ratio(8, 4).unwrap().to_string(), "2");
        assert_eq!(f.parse("-10/4").unwrap().to_string(), "-5/2");
        assert_eq!(Field::Prime(7).parse("1/2").unwrap().to_string(), "4");
        assert_eq!(Field::Prime(7).from_i64(-1).to_string(), "6");
        assert!(f.parse("0.5").is_err());
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("").is_err());
        assert_eq!(Field::Prime(7).parse("1/7"), Err(Error::PrimeDividesDenominator(7)));
        let huge = f.parse("123456789012345678901234567891/2").unwrap();
        assert_eq!(huge.to_string(), "123456789012345678901234567891/2");
    }

    #[test]
    fn canonicalize_idempotent_and_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut v: Vec<Rational> = (0..200)
            .map(|_| Rational::new(rng.gen_range(-1000..1000), rng.gen_range(1..50)))
            .collect();
        for q in &v {
            assert_eq!(q.canonicalize().canonicalize(), q.canonicalize());
            assert_eq!(&q.canonicalize(), q);
        }
        v.sort();
        assert!(v.windows(2).all(|w| (&w[1] - &w[0]).signum() >= 0));
    }

    #[test]
    fn reduce_mod_agrees_with_field_map() {
        let q = Rational::new(-7, 6);
        assert_eq!(q.reduce_mod(5), Some(3)); // -7/6 = -7 * 6^{-1} = 3 * 1 = 3 (mod 5)
        assert_eq!(q.reduce_mod(3), None);
    }
}
