//! δ-derivations: linear maps `D` with `D(xy) = δ D(x) y + δ x D(y)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{build_auxiliary, Auxiliary, Flavor, HermBasis, Sign, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::kmat::{skew_basis, sym_basis, sym_coords, KMatrix};
use crate::linmap::{flat_index, LinearMap};
use crate::linsolve::{nullspace, Certification, Policy, SparseBuilder, SparseMatrix};
use crate::octmat::OctMatrix;
use crate::octonion::Octonion;
use crate::structure::Subspace;

/// The linear system for `Der_δ(A)` in the `dim²` unknowns `D[p][q]`.
#[derive(Clone, Debug)]
pub struct DeltaDerSystem {
    pub delta: Scalar,
    pub dim: usize,
    pub matrix: SparseMatrix,
}

/// One row per basis pair and output coordinate. When the product is
/// commutative or anticommutative the pair `(j, i)` repeats `(i, j)` up to
/// sign and only `i ≤ j` is used; otherwise all ordered pairs are needed.
pub fn assemble_delta_system(a: &StructureAlgebra, delta: &Scalar) -> Result<DeltaDerSystem> {
    let d = a.dim();
    let f = a.field();
    if delta.field() != f {
        return Err(Error::FieldMismatch);
    }
    let mut b = SparseBuilder::new(d * d, f);
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
    let nd = -delta;
    for i in 0..d {
        let j0 = if a.flavor() == Flavor::General { 0 } else { i };
        for j in j0..d {
            // D(b_i b_j): Σ_l c_ij^l D[k][l]
            for (l, c) in a.product(i, j) {
                for (k, row) in rows.iter_mut().enumerate() {
                    row.push((flat_index(d, k, *l), c.clone()));
                }
            }
            // -δ D(b_i) b_j: -δ Σ_p D[p][i] c_pj^k ;  -δ b_i D(b_j): -δ Σ_p D[p][j] c_ip^k
            for p in 0..d {
                for (k, c) in a.product(p, j) {
                    rows[*k].push((flat_index(d, p, i), &nd * c));
                }
                for (k, c) in a.product(i, p) {
                    rows[*k].push((flat_index(d, p, j), &nd * c));
                }
            }
            for row in rows.iter_mut() {
                b.push_row(core::mem::take(row));
            }
        }
    }
    Ok(DeltaDerSystem { delta: delta.clone(), dim: d, matrix: b.finish_dedup() })
}

/// `Der_δ(A)` with a basis of maps, each re-checked on all basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub delta: Scalar,
    pub dim: usize,
    pub maps: Vec<LinearMap>,
    pub certification: Certification,
}

impl DerivationSpace {
    /// The span as a subspace of the flattened `dim²`-dimensional map space.
    pub fn span(&self, algebra_dim: usize, field: Field) -> Subspace {
        let mut s = Subspace::zero(field, algebra_dim * algebra_dim);
        for m in &self.maps {
            s.insert(m.flat());
        }
        s
    }
}

/// First basis pair `(i, j)` on which `D(b_i b_j) ≠ δ(D(b_i) b_j + b_i D(b_j))`.
pub fn delta_violation(a: &StructureAlgebra, m: &LinearMap, delta: &Scalar) -> Option<(usize, usize)> {
    let d = a.dim();
    let images: Vec<Vec<Scalar>> = (0..d).map(|q| m.image(q)).collect();
    for i in 0..d {
        for j in 0..d {
            let mut lhs = a.zero_vector();
            for (l, c) in a.product(i, j) {
                for (x, y) in lhs.iter_mut().zip(&images[*l]) {
                    if !y.is_zero() {
                        *x += &(c * y);
                    }
                }
            }
            let r1 = a.mul_basis_right(&images[i], j);
            let r2 = a.mul_basis_left(i, &images[j]);
            let ok = lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| *l == delta * &(x + y));
            if !ok {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn delta_der_space(a: &StructureAlgebra, delta: &Scalar) -> Result<DerivationSpace> {
    let sys = assemble_delta_system(a, delta)?;
    let ns = nullspace(&sys.matrix, Policy::MultiModular)?;
    let d = a.dim();
    let maps: Vec<LinearMap> = ns.basis.into_iter().map(|v| LinearMap::from_flat(a.field(), d, v)).collect();
    for m in &maps {
        if let Some((i, j)) = delta_violation(a, m, delta) {
            return Err(Error::VerificationFailed(format!(
                "solver map is not a {delta}-derivation on basis pair ({i}, {j})"
            )));
        }
    }
    Ok(DerivationSpace { delta: delta.clone(), dim: maps.len(), maps, certification: ns.certification })
}

pub fn derivation_dimension(a: &StructureAlgebra) -> Result<usize> {
    Ok(delta_der_space(a, &a.field().one())?.dim)
}

#[derive(Clone, Debug)]
pub struct KnownDerivations {
    pub maps: Vec<LinearMap>,
    pub span: Subspace,
}

/// Explicit derivations of `sym^±(M_n(O), J)`: `ad(g⊗1)` for `g` in a basis
/// of `M_n^-`, and the entrywise extensions of a computed basis of `Der(O)`.
/// Each map is checked to preserve the subspace (coordinate extraction
/// fails otherwise) and to be a derivation.
pub fn known_derivations(n: usize, sign: Sign, field: Field) -> Result<KnownDerivations> {
    let basis = HermBasis::new(n, sign, field)?;
    let a = crate::algebra::build_herm(n, sign, field)?;
    let d = basis.dim();
    let mut maps = Vec::new();
    let one = Octonion::one(field);
    for g in skew_basis(field, n) {
        let g = OctMatrix::tensor(&g, &one);
        let images = (0..d)
            .map(|q| {
                let x = basis.representative(q);
                basis.coords(&g.mul(x)?.sub(&x.mul(&g)?)?)
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(LinearMap::from_images(field, &images));
    }
    let oct = build_auxiliary(Auxiliary::Octonions, field)?;
    let der_o = delta_der_space(&oct, &field.one())?;
    for dm in &der_o.maps {
        let act = |o: &Octonion| -> Octonion {
            let v = dm.apply(o.coeffs());
            Octonion::from_coeffs(core::array::from_fn(|k| v[k].clone())).expect("one field")
        };
        let images = (0..d)
            .map(|q| {
                let x = basis.representative(q);
                basis.coords(&OctMatrix::from_fn(n, |i, j| act(x.get(i, j))))
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(LinearMap::from_images(field, &images));
    }
    for (t, m) in maps.iter().enumerate() {
        if let Some((i, j)) = delta_violation(&a, m, &field.one()) {
            return Err(Error::VerificationFailed(format!("constructed map {t} is not a derivation on basis pair ({i}, {j})")));
        }
    }
    let mut span = Subspace::zero(field, d * d);
    for m in &maps {
        span.insert(m.flat());
    }
    Ok(KnownDerivations { maps, span })
}

#[derive(Clone, Debug)]
pub struct DeltaScan {
    pub entries: Vec<DerivationSpace>,
    /// `dim Der_1 + 1`, reported when the scan confirms that only `δ = 1` and
    /// `δ = ½` give nonzero spaces and that `Der_½` is spanned by the
    /// identity.
    pub central_extension_dim: Option<usize>,
}

impl DeltaScan {
    pub fn dim_at(&self, delta: &Scalar) -> Option<usize> {
        self.entries.iter().find(|e| &e.delta == delta).map(|e| e.dim)
    }
}

pub fn delta_scan(a: &StructureAlgebra, deltas: &[Scalar]) -> Result<DeltaScan> {
    for (i, x) in deltas.iter().enumerate() {
        if deltas[..i].contains(x) {
            return Err(Error::InvalidArgument(format!("delta {x} repeated")));
        }
    }
    let entries = deltas.iter().map(|x| delta_der_space(a, x)).collect::<Result<Vec<_>>>()?;
    let f = a.field();
    let (one, half) = (f.one(), f.half());
    let der1 = entries.iter().find(|e| e.delta == one);
    let der_half = entries.iter().find(|e| e.delta == half);
    let others_zero = entries.iter().all(|e| e.delta == one || e.delta == half || e.dim == 0);
    let central_extension_dim = match (der1, der_half) {
        (Some(d1), Some(dh)) if others_zero && dh.dim == 1 && dh.span(a.dim(), f) == identity_span(a) => Some(d1.dim + 1),
        _ => None,
    };
    Ok(DeltaScan { entries, central_extension_dim })
}

fn identity_span(a: &StructureAlgebra) -> Subspace {
    let id = LinearMap::identity(a.field(), a.dim());
    Subspace::span(a.field(), a.dim() * a.dim(), [id.flat()]).expect("well-formed")
}

/// `{a : 2(xy)a - (xa)y - (ya)x = 0 for all basis x, y}` of a unital
/// commutative algebra.
pub fn half_der_elements(a: &StructureAlgebra) -> Result<Subspace> {
    if a.flavor() != Flavor::Commutative {
        return Err(Error::FlavorMismatch(format!("needs a commutative algebra, got {:?}", a.flavor())));
    }
    if a.unit().is_none() {
        return Err(Error::NoUnit);
    }
    let d = a.dim();
    let f = a.field();
    let two = f.from_i64(2);
    let mut b = SparseBuilder::new(d, f);
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
    for x in 0..d {
        for y in x..d {
            let xy = a.mul(&a.basis_vector(x), &a.basis_vector(y));
            for t in 0..d {
                let v1 = a.mul_basis_right(&xy, t);
                let v2 = a.mul_basis_right(&a.product_vector(x, t), y);
                let v3 = a.mul_basis_right(&a.product_vector(y, t), x);
                for k in 0..d {
                    let c = &(&two * &v1[k]) - &(&v2[k] + &v3[k]);
                    if !c.is_zero() {
                        rows[k].push((t, c));
                    }
                }
            }
            for row in rows.iter_mut() {
                b.push_row(core::mem::take(row));
            }
        }
    }
    let ns = nullspace(&b.finish_dedup(), Policy::MultiModular)?;
    Subspace::span(f, d, ns.basis.iter().map(Vec::as_slice))
}

/// `Der_½` of a unital commutative algebra through its elements: every
/// ½-derivation is `R_a: x ↦ xa` with `a = D(1)` satisfying the element
/// equation of [`half_der_elements`].
pub fn half_derivations_via_elements(a: &StructureAlgebra) -> Result<DerivationSpace> {
    let elems = half_der_elements(a)?;
    let d = a.dim();
    let half = a.field().half();
    let maps: Vec<LinearMap> = elems
        .basis()
        .iter()
        .map(|e| {
            let images: Vec<Vec<Scalar>> = (0..d).map(|q| a.mul_basis_left(q, e)).collect();
            LinearMap::from_images(a.field(), &images)
        })
        .collect();
    for m in &maps {
        if let Some((i, j)) = delta_violation(a, m, &half) {
            return Err(Error::VerificationFailed(format!("R_a is not a ½-derivation on basis pair ({i}, {j})")));
        }
    }
    Ok(DerivationSpace { delta: half, dim: maps.len(), maps, certification: Certification::ExactVerified })
}

#[derive(Clone, Debug)]
pub struct XdmSpace {
    pub delta: Scalar,
    /// Solutions `D: M_n^+ → M_n^+` flattened over the symmetric basis.
    pub space: Subspace,
    /// Every solution maps into `K E`.
    pub image_in_identity_span: bool,
}

/// Maps `D: M_n^+ → M_n^+` with `D([x,m]) = δ[x, D(m)]` for `x ∈ M_n^-`,
/// `m ∈ M_n^+`.
pub fn lemma_xdm_space(n: usize, delta: &Scalar, field: Field) -> Result<XdmSpace> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    if delta.is_zero() || delta.is_one() {
        return Err(Error::InvalidArgument("delta must differ from 0 and 1".into()));
    }
    let sym = sym_basis(field, n);
    let skew = skew_basis(field, n);
    let s = sym.len();
    // ad_x on M_n^+ in symmetric coordinates, one matrix per skew basis x
    let ads: Vec<Vec<Vec<Scalar>>> =
        skew.iter().map(|x| sym.iter().map(|m| sym_coords(&x.bracket(m))).collect()).collect();
    let mut b = SparseBuilder::new(s * s, field);
    for ad in &ads {
        for (m, xm) in ad.iter().enumerate() {
            for k in 0..s {
                let mut row = Vec::new();
                // D([x, b_m])_k = Σ_l xm_l D[k][l]
                for (l, c) in xm.iter().enumerate() {
                    if !c.is_zero() {
                        row.push((flat_index(s, k, l), c.clone()));
                    }
                }
                // -δ [x, D(b_m)]_k = -δ Σ_p D[p][m] ad[p]_k
                for (p, col) in ad.iter().enumerate() {
                    if !col[k].is_zero() {
                        row.push((flat_index(s, p, m), -&(delta * &col[k])));
                    }
                }
                b.push_row(row);
            }
        }
    }
    let ns = nullspace(&b.finish_dedup(), Policy::MultiModular)?;
    let e = sym_coords(&KMatrix::identity(field, n));
    let e_span = Subspace::span(field, s, [e.as_slice()])?;
    let image_in_identity_span = ns.basis.iter().all(|v| {
        let m = LinearMap::from_flat(field, s, v.clone());
        (0..s).all(|q| e_span.contains(&m.image(q)))
    });
    let space = Subspace::span(field, s * s, ns.basis.iter().map(Vec::as_slice))?;
    Ok(XdmSpace { delta: delta.clone(), space, image_in_identity_span })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub algebra: String,
    pub delta: Scalar,
    pub expected: usize,
    pub computed: usize,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// `Der_δ(gl_n)` at `δ ∈ {-1, 2}` (expected 1) and `δ = ½` (expected 2);
/// for `n = 2` also `Der_{-1}(sl_2) = 5` and `Der_{-1}(gl_2) = 6`.
pub fn gl_cross_checks(n: usize, field: Field) -> Result<Vec<CrossCheck>> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let gl = build_auxiliary(Auxiliary::GLn(n), field)?;
    let mut out = Vec::new();
    let mut run = |a: &StructureAlgebra, delta: Scalar, expected: usize| -> Result<()> {
        let computed = delta_der_space(a, &delta)?.dim;
        out.push(CrossCheck { algebra: a.descriptor(), delta, expected, computed });
        Ok(())
    };
    if n == 2 {
        let sl = build_auxiliary(Auxiliary::SLn(2), field)?;
        run(&sl, field.from_i64(-1), 5)?;
        run(&gl, field.from_i64(-1), 6)?;
    } else {
        run(&gl, field.from_i64(-1), 1)?;
        run(&gl, field.from_i64(2), 1)?;
    }
    run(&gl, field.half(), 2)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_herm_minus, build_herm_plus};

    const Q: Field = Field::Rationals;

    #[test]
    fn imaginary_octonions_have_g2_derivations() {
        let a = build_auxiliary(Auxiliary::ImaginaryOctonions, Q).unwrap();
        assert_eq!(derivation_dimension(&a).unwrap(), 14);
        let o = build_auxiliary(Auxiliary::Octonions, Q).unwrap();
        assert_eq!(derivation_dimension(&o).unwrap(), 14);
    }

    #[test]
    fn herm_minus_two() {
        let a = build_herm_minus(2, Q).unwrap();
        let half = delta_der_space(&a, &Q.half()).unwrap();
        assert_eq!(half.dim, 1);
        assert_eq!(half.maps[0], LinearMap::identity(Q, a.dim()));
        assert_eq!(delta_der_space(&a, &Q.from_i64(-1)).unwrap().dim, 0);
        assert_eq!(derivation_dimension(&a).unwrap(), 15);
    }

    #[test]
    fn minus_one_derivations_of_gl2() {
        let gl = build_auxiliary(Auxiliary::GLn(2), Q).unwrap();
        assert_eq!(delta_der_space(&gl, &Q.from_i64(-1)).unwrap().dim, 6);
    }

    #[test]
    fn known_derivations_match_solver() {
        let k = known_derivations(1, Sign::Minus, Q).unwrap();
        assert_eq!(k.maps.len(), 14);
        let a = build_herm_minus(1, Q).unwrap();
        assert_eq!(k.span, delta_der_space(&a, &Q.one()).unwrap().span(7, Q));
        assert_eq!(known_derivations(2, Sign::Minus, Q).unwrap().span.dim(), 15);
    }

    #[test]
    fn scan_of_herm_plus_two() {
        let a = build_herm_plus(2, Q).unwrap();
        let deltas: Vec<Scalar> = ["0", "1", "1/2", "-1", "2", "3"].iter().map(|s| Q.parse(s).unwrap()).collect();
        let scan = delta_scan(&a, &deltas).unwrap();
        assert_eq!(scan.dim_at(&Q.half()), Some(1));
        assert!(scan.dim_at(&Q.one()).unwrap() > 0);
        for s in ["0", "-1", "2", "3"] {
            assert_eq!(scan.dim_at(&Q.parse(s).unwrap()), Some(0));
        }
        assert_eq!(scan.central_extension_dim, Some(scan.dim_at(&Q.one()).unwrap() + 1));
        assert!(delta_scan(&a, &[Q.one(), Q.one()]).is_err());
    }

    #[test]
    fn half_derivations_two_ways() {
        for n in 1..=2 {
            let a = build_herm_plus(n, Q).unwrap();
            let elems = half_der_elements(&a).unwrap();
            assert_eq!(elems.dim(), 1);
            assert!(elems.contains(a.unit().unwrap()));
            let via = half_derivations_via_elements(&a).unwrap();
            let direct = delta_der_space(&a, &Q.half()).unwrap();
            assert_eq!(via.span(a.dim(), Q), direct.span(a.dim(), Q));
        }
        let m = build_herm_minus(1, Q).unwrap();
        assert!(matches!(half_der_elements(&m), Err(Error::FlavorMismatch(_))));
    }

    #[test]
    fn xdm_images_lie_in_identity_span() {
        let x = lemma_xdm_space(2, &Q.half(), Q).unwrap();
        assert!(x.image_in_identity_span);
        assert_eq!(x.space.dim(), 1);
        assert!(lemma_xdm_space(2, &Q.one(), Q).is_err());
    }

    #[test]
    fn gl_checks() {
        for c in gl_cross_checks(2, Q).unwrap() {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn commutators_compose_deltas() {
        let a = build_herm_minus(2, Q).unwrap();
        let d1 = delta_der_space(&a, &Q.one()).unwrap();
        let dh = delta_der_space(&a, &Q.half()).unwrap();
        for x in &d1.maps {
            for y in d1.maps.iter().chain(&dh.maps) {
                let delta = if dh.maps.contains(y) { Q.half() } else { Q.one() };
                assert_eq!(delta_violation(&a, &x.commutator(y), &delta), None);
            }
        }
    }
}
