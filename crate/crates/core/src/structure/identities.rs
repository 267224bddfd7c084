//! Exhaustive checks of multilinear identities on basis tuples.
//!
//! Identities of degree above one in a variable are checked in fully
//! linearized form, which is equivalent to the original in characteristic
//! not 2 or 3, so `Holds` is a proof rather than a sample.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Flavor, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    Commutative,
    Anticommutative,
    /// `(xy)z + (yz)x + (zx)y = 0`
    Jacobi,
    /// `(x²y)x = x²(yx)`, checked as
    /// `Σ_cyc(x,z,w) ((xz)y)w - (xz)(yw) = 0`.
    Jordan,
    /// `J(x,y,xz) = J(x,y,z)x` with `J` the Jacobian, checked as
    /// `J(x,y,wz) + J(w,y,xz) - J(x,y,z)w - J(w,y,z)x = 0`.
    Malcev,
}

impl Identity {
    pub fn as_str(self) -> &'static str {
        match self {
            Identity::Commutative => "commutative",
            Identity::Anticommutative => "anticommutative",
            Identity::Jacobi => "Jacobi",
            Identity::Jordan => "Jordan",
            Identity::Malcev => "Malcev",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Holds { tuples: usize },
    /// First failing basis tuple, in the variable order of the linearized
    /// identity, and the nonzero value it produces.
    Counterexample { indices: Vec<usize>, value: Vec<Scalar> },
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityOutcome::Holds { .. })
    }
}

type Sparse = Vec<(usize, Scalar)>;

struct Ops<'a> {
    a: &'a StructureAlgebra,
    acc: Vec<Scalar>,
    touched: Vec<usize>,
}

impl<'a> Ops<'a> {
    fn new(a: &'a StructureAlgebra) -> Self {
        Self { a, acc: vec![a.field().zero(); a.dim()], touched: Vec::new() }
    }

    fn add(&mut self, k: usize, c: Scalar) {
        if self.acc[k].is_zero() {
            self.touched.push(k);
        }
        self.acc[k] += &c;
    }

    fn take(&mut self) -> Sparse {
        self.touched.sort_unstable();
        self.touched.dedup();
        let zero = self.a.field().zero();
        let out = self
            .touched
            .drain(..)
            .filter_map(|k| {
                let v = core::mem::replace(&mut self.acc[k], zero.clone());
                (!v.is_zero()).then_some((k, v))
            })
            .collect();
        out
    }

    fn mul(&mut self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> Sparse {
        for (i, x) in u {
            for (j, y) in v {
                let t = self.a.product(*i, *j);
                if t.is_empty() {
                    continue;
                }
                let f = x * y;
                for (k, c) in t {
                    self.add(*k, &f * c);
                }
            }
        }
        self.take()
    }

    /// `Σ s_t v_t` over signed terms.
    fn sum(&mut self, terms: &[(&Sparse, bool)]) -> Sparse {
        for (v, positive) in terms {
            for (k, c) in v.iter() {
                self.add(*k, if *positive { c.clone() } else { -c });
            }
        }
        self.take()
    }
}

fn dense(a: &StructureAlgebra, v: &Sparse) -> Vec<Scalar> {
    let mut out = a.zero_vector();
    for (k, c) in v {
        out[*k] = c.clone();
    }
    out
}

pub fn identity_check(a: &StructureAlgebra, identity: Identity) -> Result<IdentityOutcome> {
    let need = |flavor: Flavor| -> Result<()> {
        if a.flavor() != flavor {
            return Err(Error::FlavorMismatch(format!(
                "{} identity needs a {:?} algebra, got {:?}",
                identity.as_str(),
                flavor,
                a.flavor()
            )));
        }
        Ok(())
    };
    let d = a.dim();
    let f = a.field();
    let basis: Vec<Sparse> = (0..d).map(|i| vec![(i, f.one())]).collect();
    let mut ops = Ops::new(a);
    let fail = |indices: Vec<usize>, v: &Sparse| Ok(IdentityOutcome::Counterexample { indices, value: dense(a, v) });
    match identity {
        Identity::Commutative | Identity::Anticommutative => {
            let anti = identity == Identity::Anticommutative;
            for i in 0..d {
                for j in i..d {
                    let p = a.product(i, j).to_vec();
                    let q = a.product(j, i).to_vec();
                    let r = ops.sum(&[(&p, true), (&q, anti)]);
                    if !r.is_empty() {
                        return fail(vec![i, j], &r);
                    }
                }
            }
            Ok(IdentityOutcome::Holds { tuples: d * (d + 1) / 2 })
        }
        Identity::Jacobi => {
            need(Flavor::Anticommutative)?;
            let prods: Vec<Sparse> = (0..d * d).map(|ij| a.product(ij / d, ij % d).to_vec()).collect();
            // anticommutativity makes the Jacobian alternating; i < j < k suffice
            for i in 0..d {
                for j in i + 1..d {
                    for k in j + 1..d {
                        let t1 = ops.mul(&prods[i * d + j], &basis[k]);
                        let t2 = ops.mul(&prods[j * d + k], &basis[i]);
                        let t3 = ops.mul(&prods[k * d + i], &basis[j]);
                        let r = ops.sum(&[(&t1, true), (&t2, true), (&t3, true)]);
                        if !r.is_empty() {
                            return fail(vec![i, j, k], &r);
                        }
                    }
                }
            }
            Ok(IdentityOutcome::Holds { tuples: d * d.saturating_sub(1) * d.saturating_sub(2) / 6 })
        }
        Identity::Jordan => {
            need(Flavor::Commutative)?;
            let prods: Vec<Sparse> = (0..d * d).map(|ij| a.product(ij / d, ij % d).to_vec()).collect();
            // symmetric in (x, z, w): x ≤ z ≤ w, any y
            let mut tuples = 0;
            for y in 0..d {
                // ((uv)y) for all pairs u ≤ v
                let mut py: Vec<Sparse> = vec![Vec::new(); d * d];
                for u in 0..d {
                    for v in u..d {
                        py[u * d + v] = ops.mul(&prods[u * d + v], &basis[y]);
                    }
                }
                let sym = |u: usize, v: usize| if u <= v { u * d + v } else { v * d + u };
                for x in 0..d {
                    for z in x..d {
                        for w in z..d {
                            tuples += 1;
                            let l1 = ops.mul(&py[sym(x, z)], &basis[w]);
                            let l2 = ops.mul(&py[sym(z, w)], &basis[x]);
                            let l3 = ops.mul(&py[sym(w, x)], &basis[z]);
                            let r1 = ops.mul(&prods[sym(x, z)], &prods[y * d + w]);
                            let r2 = ops.mul(&prods[sym(z, w)], &prods[y * d + x]);
                            let r3 = ops.mul(&prods[sym(w, x)], &prods[y * d + z]);
                            let r = ops.sum(&[(&l1, true), (&l2, true), (&l3, true), (&r1, false), (&r2, false), (&r3, false)]);
                            if !r.is_empty() {
                                return fail(vec![x, y, z, w], &r);
                            }
                        }
                    }
                }
            }
            Ok(IdentityOutcome::Holds { tuples })
        }
        Identity::Malcev => {
            need(Flavor::Anticommutative)?;
            let mut tuples = 0;
            let jac = |ops: &mut Ops, x: &Sparse, y: &Sparse, z: &Sparse| -> Sparse {
                let xy = ops.mul(x, y);
                let yz = ops.mul(y, z);
                let zx = ops.mul(z, x);
                let t1 = ops.mul(&xy, z);
                let t2 = ops.mul(&yz, x);
                let t3 = ops.mul(&zx, y);
                ops.sum(&[(&t1, true), (&t2, true), (&t3, true)])
            };
            for x in 0..d {
                for w in x..d {
                    for y in 0..d {
                        for z in 0..d {
                            tuples += 1;
                            let (bx, by, bz, bw) = (&basis[x], &basis[y], &basis[z], &basis[w]);
                            let wz = ops.mul(bw, bz);
                            let xz = ops.mul(bx, bz);
                            let l1 = jac(&mut ops, bx, by, &wz);
                            let l2 = jac(&mut ops, bw, by, &xz);
                            let jx = jac(&mut ops, bx, by, bz);
                            let jw = jac(&mut ops, bw, by, bz);
                            let r1 = ops.mul(&jx, bw);
                            let r2 = ops.mul(&jw, bx);
                            let r = ops.sum(&[(&l1, true), (&l2, true), (&r1, false), (&r2, false)]);
                            if !r.is_empty() {
                                return fail(vec![x, y, z, w], &r);
                            }
                        }
                    }
                }
            }
            Ok(IdentityOutcome::Holds { tuples })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_auxiliary, build_herm_minus, build_herm_plus, Auxiliary};
    use crate::exactnum::Field;

    const Q: Field = Field::Rationals;

    #[test]
    fn classical_jordan_algebras() {
        for n in 2..=3 {
            let a = build_auxiliary(Auxiliary::MatrixJordan(n), Q).unwrap();
            assert!(identity_check(&a, Identity::Jordan).unwrap().holds());
        }
    }

    #[test]
    fn lie_algebras_satisfy_jacobi_and_malcev() {
        let so = build_auxiliary(Auxiliary::SOn(3), Q).unwrap();
        assert!(identity_check(&so, Identity::Jacobi).unwrap().holds());
        let gl = build_auxiliary(Auxiliary::GLn(2), Q).unwrap();
        assert!(identity_check(&gl, Identity::Malcev).unwrap().holds());
        assert!(identity_check(&gl, Identity::Anticommutative).unwrap().holds());
    }

    #[test]
    fn imaginary_octonions_are_malcev_not_lie() {
        let a = build_herm_minus(1, Q).unwrap();
        assert!(identity_check(&a, Identity::Malcev).unwrap().holds());
        match identity_check(&a, Identity::Jacobi).unwrap() {
            IdentityOutcome::Counterexample { indices, value } => {
                assert_eq!(indices.len(), 3);
                assert!(value.iter().any(|c| !c.is_zero()));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_hermitian_cases_are_jordan() {
        let a = build_herm_plus(2, Q).unwrap();
        assert!(identity_check(&a, Identity::Jordan).unwrap().holds());
        assert!(identity_check(&a, Identity::Commutative).unwrap().holds());
    }

    #[test]
    fn flavor_is_enforced() {
        let a = build_herm_plus(2, Q).unwrap();
        assert!(matches!(identity_check(&a, Identity::Malcev), Err(Error::FlavorMismatch(_))));
        let b = build_herm_minus(1, Q).unwrap();
        assert!(matches!(identity_check(&b, Identity::Jordan), Err(Error::FlavorMismatch(_))));
    }
}
