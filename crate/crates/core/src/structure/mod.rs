//! Ideals, simplicity, the centroid, two kernel lemmas about matrices over
//! `K`, and exhaustive checks of polynomial identities.

pub mod identities;
pub mod meataxe;
pub mod subspace;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

pub use identities::{identity_check, Identity, IdentityOutcome};
pub use subspace::Subspace;

use crate::algebra::{Flavor, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::kmat::{skew_basis, sym_basis, KMatrix};
use crate::linmap::{flat_index, LinearMap};
use crate::exactnum::mul_mod;
use crate::linsolve::{nullspace, DenseModP, ModP, NullspaceResult, Policy, SparseBuilder, SparseRref};

/// The smallest two-sided ideal containing `generators`.
///
/// Over `Q` the closure is first run modulo a large prime on the raw
/// products `b_j · (b_k · (... g))`. Those vectors are reductions of exact
/// elements of the rational ideal, so reaching full rank mod `p` proves the
/// rational ideal is everything. Otherwise the exact closure is computed.
pub fn ideal_closure(a: &StructureAlgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    if a.field() == Field::Rationals && !generators.is_empty() {
        let p = crate::linsolve::large_primes(1)[0];
        if full_mod_p(a, generators, p) {
            return Ok(Subspace::full(a.field(), a.dim()));
        }
    }
    ideal_closure_exact(a, generators)
}

/// [`ideal_closure`] by exact multiply-and-reduce only.
pub fn ideal_closure_exact(a: &StructureAlgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut space = Subspace::zero(a.field(), a.dim());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for g in generators {
        if let Some(r) = space.try_insert(g)? {
            queue.push(r);
        }
    }
    // Every accepted vector is multiplied by every basis vector on both sides
    // (one side suffices when the product is (anti)commutative). The accepted
    // vectors form a basis of the final span.
    let mut next = 0;
    while next < queue.len() && !space.is_full() {
        let v = queue[next].clone();
        for j in 0..a.dim() {
            let mut prods = vec![a.mul_basis_left(j, &v)];
            if a.flavor() == Flavor::General {
                prods.push(a.mul_basis_right(&v, j));
            }
            for p in prods {
                if let Some(r) = space.insert(&p) {
                    queue.push(r);
                }
            }
            if space.is_full() {
                break;
            }
        }
        next += 1;
    }
    Ok(space)
}

fn full_mod_p(a: &StructureAlgebra, generators: &[Vec<Scalar>], p: u64) -> bool {
    let reduce = |c: &Scalar| c.as_rational().and_then(|q| q.reduce_mod(p));
    let d = a.dim();
    let mut table: Vec<Vec<(usize, u64)>> = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let mut row = Vec::new();
            for (k, c) in a.product(i, j) {
                match reduce(c) {
                    Some(x) => row.push((*k, x)),
                    None => return false,
                }
            }
            table.push(row);
        }
    }
    let mut rref = SparseRref::new(ModP(p), d);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    let sparse = |w: &[u64]| w.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &x)| (c, x)).collect::<Vec<_>>();
    for g in generators {
        let Some(v) = g.iter().map(reduce).collect::<Option<Vec<u64>>>() else { return false };
        if rref.insert(sparse(&v)) {
            queue.push(v);
        }
    }
    let general = a.flavor() == Flavor::General;
    let mut next = 0;
    while next < queue.len() && !rref.is_full() {
        let v = queue[next].clone();
        for j in 0..d {
            for side in 0..(1 + usize::from(general)) {
                let mut out = vec![0u64; d];
                for (q, &x) in v.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let t = if side == 0 { &table[j * d + q] } else { &table[q * d + j] };
                    for &(k, c) in t {
                        out[k] = (out[k] + mul_mod(x, c, p)) % p;
                    }
                }
                if rref.insert(sparse(&out)) {
                    queue.push(out);
                }
            }
            if rref.is_full() {
                break;
            }
        }
        next += 1;
    }
    rref.is_full()
}

/// Exact check that `s` is a two-sided ideal of `a`.
pub fn is_ideal(a: &StructureAlgebra, s: &Subspace) -> bool {
    s.basis().iter().all(|v| {
        (0..a.dim()).all(|j| s.contains(&a.mul_basis_left(j, v)) && s.contains(&a.mul_basis_right(v, j)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SimpleCertified,
    SimpleEvidence,
    NotSimple,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::SimpleCertified => "SimpleCertified",
            Verdict::SimpleEvidence => "SimpleEvidence",
            Verdict::NotSimple => "NotSimple",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    IrreducibilityTest,
    RandomGeneration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Elements each generating the whole algebra as an ideal.
    Generators(Vec<Vec<Scalar>>),
    /// A proper nonzero ideal.
    Ideal(Subspace),
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityCertificate {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Witness,
    /// Verdicts of the irreducibility test at each prime used.
    pub modular: Vec<(u64, Verdict)>,
}

const MEATAXE_ATTEMPTS: usize = 60;

/// Simplicity of `a`. Over `F_p` the irreducibility test decides; over `Q`
/// ideal closures of every basis vector and `trials` random elements must
/// be full and the reduction modulo each listed prime must be certified
/// irreducible. The rational verdict is evidence, not proof: passing from
/// simplicity mod `p` to simplicity over `Q` would need an integrality
/// argument that is not attempted.
pub fn certify_simple<R: Rng + ?Sized>(
    a: &StructureAlgebra,
    trials: usize,
    primes: &[u64],
    rng: &mut R,
) -> Result<SimplicityCertificate> {
    if a.has_zero_product() {
        return Err(Error::DegenerateAlgebra);
    }
    match a.field() {
        Field::Prime(p) => {
            let (verdict, witness) = certify_mod_p(a, rng)?;
            Ok(SimplicityCertificate { verdict, method: Method::IrreducibilityTest, witness, modular: vec![(p, verdict)] })
        }
        Field::Rationals => {
            let mut generators: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
            generators.extend((0..trials).map(|_| a.random_element(rng)));
            for g in &generators {
                if g.iter().all(Scalar::is_zero) {
                    continue;
                }
                let ideal = ideal_closure(a, core::slice::from_ref(g))?;
                if !ideal.is_full() {
                    if !is_ideal(a, &ideal) {
                        return Err(Error::VerificationFailed("ideal closure is not closed".into()));
                    }
                    return Ok(SimplicityCertificate {
                        verdict: Verdict::NotSimple,
                        method: Method::RandomGeneration,
                        witness: Witness::Ideal(ideal),
                        modular: Vec::new(),
                    });
                }
            }
            let mut modular = Vec::new();
            for &p in primes {
                if !a.reduces_mod(p) {
                    return Err(Error::PrimeDividesDenominator(p));
                }
                let ap = a.reduce_mod(Field::Prime(p))?;
                let (v, _) = certify_mod_p(&ap, rng)?;
                modular.push((p, v));
            }
            if let Some(&(p, _)) = modular.iter().find(|(_, v)| *v != Verdict::SimpleCertified) {
                return Err(Error::VerificationFailed(format!(
                    "ideal closures over Q are full but the reduction mod {p} is reducible"
                )));
            }
            Ok(SimplicityCertificate {
                verdict: Verdict::SimpleEvidence,
                method: Method::RandomGeneration,
                witness: Witness::Generators(generators.split_off(a.dim())),
                modular,
            })
        }
    }
}

/// Left (and, for general products, right) multiplication matrices mod `p`.
pub fn multiplication_matrices(a: &StructureAlgebra) -> Result<Vec<DenseModP>> {
    let Field::Prime(p) = a.field() else { return Err(Error::FieldMismatch) };
    let d = a.dim();
    let residue = |c: &Scalar| match c {
        Scalar::Fp(r) => r.value(),
        Scalar::Q(_) => unreachable!("algebra over F_p"),
    };
    let mut out = Vec::new();
    for j in 0..d {
        let mut l = DenseModP::zero(d, d, p);
        let mut r = DenseModP::zero(d, d, p);
        for q in 0..d {
            for (k, c) in a.product(j, q) {
                l.set(*k, q, residue(c));
            }
            for (k, c) in a.product(q, j) {
                r.set(*k, q, residue(c));
            }
        }
        out.push(l);
        if a.flavor() == Flavor::General {
            out.push(r);
        }
    }
    Ok(out)
}

fn certify_mod_p<R: Rng + ?Sized>(a: &StructureAlgebra, rng: &mut R) -> Result<(Verdict, Witness)> {
    let gens = multiplication_matrices(a)?;
    match meataxe::irreducibility(&gens, MEATAXE_ATTEMPTS, rng) {
        meataxe::Outcome::Irreducible => Ok((Verdict::SimpleCertified, Witness::None)),
        meataxe::Outcome::Reducible(vectors) => {
            let f = a.field();
            let mut ideal = Subspace::zero(f, a.dim());
            for v in vectors {
                let v: Vec<Scalar> = v.into_iter().map(|x| f.from_i64(x as i64)).collect();
                ideal.insert(&v);
            }
            if ideal.dim() == 0 || ideal.is_full() || !is_ideal(a, &ideal) {
                return Err(Error::VerificationFailed("invariant subspace is not a proper ideal".into()));
            }
            Ok((Verdict::NotSimple, Witness::Ideal(ideal)))
        }
        meataxe::Outcome::Inconclusive => {
            Err(Error::VerificationFailed(format!("irreducibility test inconclusive after {MEATAXE_ATTEMPTS} attempts")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centroid {
    pub dim: usize,
    pub maps: Vec<LinearMap>,
    pub solution: NullspaceResult,
}

/// Maps `Γ` with `Γ(b_i b_j) = Γ(b_i) b_j = b_i Γ(b_j)` on all basis pairs.
pub fn centroid(a: &StructureAlgebra) -> Result<Centroid> {
    let d = a.dim();
    let f = a.field();
    let mut b = SparseBuilder::new(d * d, f);
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); d];
    for i in 0..d {
        for j in 0..d {
            // Γ(b_i b_j) - Γ(b_i) b_j  and  Γ(b_i b_j) - b_i Γ(b_j)
            for side in 0..2 {
                for (l, c) in a.product(i, j) {
                    for (k, row) in rows.iter_mut().enumerate() {
                        row.push((flat_index(d, k, *l), c.clone()));
                    }
                }
                for q in 0..d {
                    let t = if side == 0 { a.product(q, j) } else { a.product(i, q) };
                    let src = if side == 0 { i } else { j };
                    for (k, c) in t {
                        rows[*k].push((flat_index(d, q, src), -c));
                    }
                }
                for row in rows.iter_mut() {
                    b.push_row(core::mem::take(row));
                }
            }
        }
    }
    let solution = nullspace(&b.finish_dedup(), Policy::MultiModular)?;
    let maps: Vec<LinearMap> = solution.basis.iter().map(|v| LinearMap::from_flat(f, d, v.clone())).collect();
    for m in &maps {
        let images: Vec<Vec<Scalar>> = (0..d).map(|q| m.image(q)).collect();
        for i in 0..d {
            for j in 0..d {
                let gij = m.apply(&a.mul(&a.basis_vector(i), &a.basis_vector(j)));
                if gij != a.mul_basis_right(&images[i], j) || gij != a.mul_basis_left(i, &images[j]) {
                    return Err(Error::VerificationFailed(format!("centroid map fails on pair ({i}, {j})")));
                }
            }
        }
    }
    Ok(Centroid { dim: maps.len(), maps, solution })
}

/// Kernels from the two lemmas on `M_n(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaKernels {
    pub n: usize,
    /// `{x ∈ M_n^- : x ∘ M_n^- = 0}`, in skew coordinates.
    pub skew_jordan_kernel: Subspace,
    /// `{m ∈ M_n^+ : [m, M_n^-] = 0}`, in symmetric coordinates.
    pub sym_vs_skew_kernel: Subspace,
    /// `{m ∈ M_n^+ : [m, M_n^+] = 0}`, in symmetric coordinates.
    pub sym_vs_sym_kernel: Subspace,
    /// Coordinates of the identity matrix `E`.
    pub identity: Vec<Scalar>,
}

impl LemmaKernels {
    pub fn holds(&self) -> bool {
        let e = Subspace::span(self.identity.first().map_or(Field::Rationals, Scalar::field), self.identity.len(), [self.identity.as_slice()])
            .expect("well-formed");
        self.skew_jordan_kernel.dim() == 0 && self.sym_vs_skew_kernel == e && self.sym_vs_sym_kernel == e
    }
}

fn kernel_of_matrix_map(
    field: Field,
    domain: &[KMatrix],
    against: &[KMatrix],
    op: fn(&KMatrix, &KMatrix) -> KMatrix,
) -> Result<Subspace> {
    // Column t is the image of domain[t], stacked over `against` and written
    // in full matrix entries.
    let n = domain.first().map_or(0, KMatrix::n);
    let mut triples = Vec::new();
    for (t, x) in domain.iter().enumerate() {
        for (j, b) in against.iter().enumerate() {
            for (e, v) in op(x, b).entries().iter().enumerate() {
                if !v.is_zero() {
                    triples.push((j * n * n + e, t, v.clone()));
                }
            }
        }
    }
    let m = crate::linsolve::SparseMatrix::from_triples(against.len() * n * n, domain.len(), field, triples)?;
    let ns = nullspace(&m, Policy::MultiModular)?;
    Subspace::span(field, domain.len(), ns.basis.iter().map(Vec::as_slice))
}

pub fn lemma_kernels(n: usize, field: Field) -> Result<LemmaKernels> {
    if n < 2 {
        return Err(Error::InvalidArgument("kernel lemmas need n >= 2".into()));
    }
    let skew = skew_basis(field, n);
    let sym = sym_basis(field, n);
    Ok(LemmaKernels {
        n,
        skew_jordan_kernel: kernel_of_matrix_map(field, &skew, &skew, KMatrix::jordan)?,
        sym_vs_skew_kernel: kernel_of_matrix_map(field, &sym, &skew, KMatrix::bracket)?,
        sym_vs_sym_kernel: kernel_of_matrix_map(field, &sym, &sym, KMatrix::bracket)?,
        identity: crate::kmat::sym_coords(&KMatrix::identity(field, n)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_auxiliary, build_herm_minus, build_herm_plus, direct_sum, Auxiliary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    #[test]
    fn closures() {
        let a = build_herm_plus(2, Q).unwrap();
        assert_eq!(ideal_closure(&a, &[]).unwrap().dim(), 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = a.random_element(&mut rng);
        assert_eq!(ideal_closure(&a, &[v.clone()]).unwrap().dim(), 10);
        assert_eq!(ideal_closure_exact(&a, &[v]).unwrap().dim(), 10);
        // K·E is an ideal of gl_3
        let gl = build_auxiliary(Auxiliary::GLn(3), Q).unwrap();
        let e: Vec<Scalar> = KMatrix::identity(Q, 3).entries().to_vec();
        let i = ideal_closure(&gl, &[e]).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(is_ideal(&gl, &i));
    }

    #[test]
    fn simplicity_over_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = build_herm_minus(1, Field::Prime(5)).unwrap();
        assert_eq!(certify_simple(&a, 0, &[], &mut rng).unwrap().verdict, Verdict::SimpleCertified);
        let a = build_herm_plus(2, Q).unwrap();
        let c = certify_simple(&a, 5, &[5, 7, 11], &mut rng).unwrap();
        assert_eq!(c.verdict, Verdict::SimpleEvidence);
        assert_eq!(c.modular.len(), 3);
    }

    #[test]
    fn direct_sum_is_not_simple() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for field in [Q, Field::Prime(7)] {
            let a = build_herm_minus(1, field).unwrap();
            let s = direct_sum(&a, &a).unwrap();
            let c = certify_simple(&s, 3, &[7], &mut rng).unwrap();
            assert_eq!(c.verdict, Verdict::NotSimple);
            let Witness::Ideal(i) = c.witness else { panic!("no witness") };
            assert!(i.dim() > 0 && !i.is_full() && is_ideal(&s, &i));
        }
    }

    #[test]
    fn zero_product_is_degenerate() {
        let a = crate::algebra::StructureAlgebra::new(
            crate::algebra::AlgebraKind::Custom,
            Q,
            vec!["x".into()],
            vec![Vec::new()],
            Flavor::Commutative,
            None,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(certify_simple(&a, 1, &[], &mut rng), Err(Error::DegenerateAlgebra));
    }

    #[test]
    fn centroids() {
        assert_eq!(centroid(&build_herm_plus(2, Q).unwrap()).unwrap().dim, 1);
        assert_eq!(centroid(&build_herm_minus(2, Q).unwrap()).unwrap().dim, 1);
        let a = build_herm_minus(1, Q).unwrap();
        assert_eq!(centroid(&direct_sum(&a, &a).unwrap()).unwrap().dim, 2);
    }

    #[test]
    fn kernel_lemmas() {
        for n in 2..=3 {
            let k = lemma_kernels(n, Q).unwrap();
            assert!(k.holds(), "n = {n}");
        }
    }
}
