use octlab_core::linsolve::{nullspace, Policy, SparseMatrix};
use octlab_core::structure::Subspace;
use octlab_core::{Field, FieldSpec, Octonion, Rational, Scalar};
use proptest::prelude::*;

fn f7() -> Field {
    Field::new(FieldSpec::prime(7)).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i128..50, 1i128..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn scalar(field: Field) -> impl Strategy<Value = Scalar> {
    (-50i64..50, 1i64..12).prop_map(move |(n, d)| field.from_ratio(n, d).unwrap_or_else(|_| field.from_i64(n)))
}

fn octonion(field: Field) -> impl Strategy<Value = Octonion> {
    prop::collection::vec(scalar(field), 8).prop_map(|v| Octonion::from_coeffs(v.try_into().unwrap()).unwrap())
}

fn imaginary(field: Field) -> impl Strategy<Value = Octonion> {
    octonion(field).prop_map(move |a| {
        let mut c = a.coeffs().clone();
        c[0] = field.zero();
        Octonion::from_coeffs(c).unwrap()
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if let Some(inv) = a.recip() {
            prop_assert_eq!(&a * &inv, Rational::one());
        }
    }

    #[test]
    fn rational_display_round_trips(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(a in rational(), b in rational()) {
        let p = 1_000_003;
        if let (Some(x), Some(y), Some(s), Some(m)) =
            (a.reduce_mod(p), b.reduce_mod(p), (&a + &b).reduce_mod(p), (&a * &b).reduce_mod(p))
        {
            prop_assert_eq!((x + y) % p, s);
            prop_assert_eq!(x * y % p, m);
        }
    }

    #[test]
    fn octonions_are_alternative_over_q(a in octonion(Field::Rationals), b in octonion(Field::Rationals)) {
        prop_assert_eq!(&(&a * &a) * &b, &a * &(&a * &b));
        prop_assert_eq!(&(&b * &a) * &a, &b * &(&a * &a));
        prop_assert_eq!(&(&a * &b) * &a, &a * &(&b * &a));
    }

    #[test]
    fn octonion_norm_is_multiplicative(a in octonion(Field::Rationals), b in octonion(Field::Rationals)) {
        prop_assert_eq!((&a * &b).norm().unwrap(), a.norm().unwrap() * b.norm().unwrap());
    }

    #[test]
    fn conjugation_reverses_products_over_f7(a in octonion(f7()), b in octonion(f7())) {
        prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn quadratic_equation(a in octonion(Field::Rationals)) {
        let one = Octonion::one(Field::Rationals);
        let r = &(&(&a * &a) - &a.scale(&a.trace())) + &one.scale(&a.norm().unwrap());
        prop_assert!(r.is_zero());
    }

    #[test]
    fn polar_norm_of_imaginaries(a in imaginary(Field::Rationals), b in imaginary(Field::Rationals)) {
        let s = &(&a * &b) + &(&b * &a);
        prop_assert!(s.is_scalar());
        prop_assert_eq!(s.real().clone(), a.norm_polar(&b).unwrap());
    }

    #[test]
    fn span_annihilator_duality(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 0..6)) {
        let q = Field::Rationals;
        let vecs: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let s = Subspace::span(q, 6, vecs.iter().map(|v| v.as_slice())).unwrap();
        for v in &vecs {
            prop_assert!(s.contains(v));
        }
        let ann = s.annihilator();
        prop_assert_eq!(s.dim() + ann.dim(), 6);
        for u in s.basis() {
            for w in ann.basis() {
                let dot = u.iter().zip(w).fold(q.zero(), |acc, (x, y)| acc + x * y);
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn solver_policies_agree(entries in prop::collection::vec((0usize..5, 0usize..7, -4i64..5), 0..25)) {
        let q = Field::Rationals;
        let triples: Vec<(usize, usize, Scalar)> = entries.iter().map(|&(r, c, x)| (r, c, q.from_i64(x))).collect();
        let dense = {
            let mut d = vec![vec![q.zero(); 7]; 5];
            for (r, c, x) in &triples {
                d[*r][*c] += x;
            }
            d
        };
        let m = SparseMatrix::from_triples(5, 7, q, triples).unwrap();
        let direct = nullspace(&m, Policy::Direct).unwrap();
        let modular = nullspace(&m, Policy::MultiModular).unwrap();
        prop_assert_eq!(direct.dim, modular.dim);
        let span = |b: &[Vec<Scalar>]| Subspace::span(q, 7, b.iter().map(|v| v.as_slice())).unwrap();
        prop_assert_eq!(span(&direct.basis), span(&modular.basis));
        for v in &direct.basis {
            for row in &dense {
                let dot = row.iter().zip(v).fold(q.zero(), |acc, (x, y)| acc + x * y);
                prop_assert!(dot.is_zero());
            }
        }
    }
}
