//! Symmetric associative bilinear forms `φ(xy, z) = φ(x, yz)` and the trace
//! form `Tr(XY + X̄Ȳ)` on `sym^±(M_n(O), J)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{build_auxiliary, build_herm, Auxiliary, HermBasis, Sign, StructureAlgebra};
use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::linsolve::{nullspace, rank, Certification, Policy, SparseBuilder, SparseMatrix};
use crate::octmat::trace_form;

/// A dense symmetric Gram matrix in the algebra's basis.
pub type Gram = Vec<Vec<Scalar>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormSolution {
    pub dim: usize,
    pub grams: Vec<Gram>,
    /// Rank of each basis form; equal to the algebra dimension iff
    /// nondegenerate.
    pub ranks: Vec<usize>,
    pub certification: Certification,
}

impl BilinearFormSolution {
    pub fn nondegenerate(&self, algebra_dim: usize) -> Vec<bool> {
        self.ranks.iter().map(|&r| r == algebra_dim).collect()
    }
}

/// `idx[p][q] = idx[q][p]` numbers the upper-triangle unknowns `G[p][q]`.
fn tri_index(d: usize) -> Vec<Vec<usize>> {
    let mut idx = vec![vec![0; d]; d];
    let mut t = 0;
    for p in 0..d {
        for q in p..d {
            idx[p][q] = t;
            idx[q][p] = t;
            t += 1;
        }
    }
    idx
}

/// `G(b_i b_j, b_k) = G(b_i, b_j b_k)` on every basis triple.
pub fn is_associative(a: &StructureAlgebra, g: &Gram) -> Option<(usize, usize, usize)> {
    let d = a.dim();
    let f = a.field();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let lhs = a.product(i, j).iter().fold(f.zero(), |acc, (l, c)| acc + c * &g[*l][k]);
                let rhs = a.product(j, k).iter().fold(f.zero(), |acc, (l, c)| acc + c * &g[i][*l]);
                if lhs != rhs {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

fn gram_matrix(field: Field, g: &Gram) -> Result<SparseMatrix> {
    let d = g.len();
    let triples = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter(|&(i, j)| !g[i][j].is_zero())
        .map(|(i, j)| (i, j, g[i][j].clone()))
        .collect();
    SparseMatrix::from_triples(d, d, field, triples)
}

pub fn gram_rank(field: Field, g: &Gram) -> Result<usize> {
    rank(&gram_matrix(field, g)?)
}

/// All symmetric `φ` with `φ(xy, z) = φ(x, yz)`, over the upper-triangle
/// unknowns.
pub fn assoc_form_space(a: &StructureAlgebra) -> Result<BilinearFormSolution> {
    let d = a.dim();
    let f = a.field();
    let idx = tri_index(d);
    let mut b = SparseBuilder::new(d * (d + 1) / 2, f);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let mut row: Vec<(usize, Scalar)> = a.product(i, j).iter().map(|(l, c)| (idx[*l][k], c.clone())).collect();
                row.extend(a.product(j, k).iter().map(|(l, c)| (idx[i][*l], -c)));
                b.push_row(row);
            }
        }
    }
    let ns = nullspace(&b.finish_dedup(), Policy::MultiModular)?;
    let grams: Vec<Gram> = ns
        .basis
        .iter()
        .map(|v| (0..d).map(|p| (0..d).map(|q| v[idx[p][q]].clone()).collect()).collect())
        .collect();
    for g in &grams {
        if let Some((i, j, k)) = is_associative(a, g) {
            return Err(Error::VerificationFailed(format!("solver form fails associativity on ({i}, {j}, {k})")));
        }
    }
    let ranks = grams.iter().map(|g| gram_rank(f, g)).collect::<Result<Vec<_>>>()?;
    Ok(BilinearFormSolution { dim: grams.len(), grams, ranks, certification: ns.certification })
}

/// Gram matrix of `(X, Y) ↦ Tr(XY + X̄Ȳ)` on the canonical basis of
/// `sym^±(M_n(O), J)`, checked symmetric and associative.
pub fn trace_form_gram(n: usize, sign: Sign, field: Field) -> Result<Gram> {
    let basis = HermBasis::new(n, sign, field)?;
    let d = basis.dim();
    let mut g: Gram = vec![vec![field.zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            g[i][j] = trace_form(basis.representative(i), basis.representative(j))?;
        }
    }
    for i in 0..d {
        for j in 0..i {
            if g[i][j] != g[j][i] {
                return Err(Error::VerificationFailed(format!("trace form is not symmetric at ({i}, {j})")));
            }
        }
    }
    let a = build_herm(n, sign, field)?;
    if let Some((i, j, k)) = is_associative(&a, &g) {
        return Err(Error::VerificationFailed(format!("trace form fails associativity on ({i}, {j}, {k})")));
    }
    Ok(g)
}

/// The block values of the trace form: on `sym^+`,
/// `(m⊗1, s⊗1) ↦ 2Tr(ms)`, `(m⊗1, x⊗a) ↦ 0`, `(x⊗a, y⊗b) ↦ N(a,b)Tr(xy)`;
/// on `sym^-` the same with the roles of symmetric and skew matrices
/// exchanged. Returns the first basis pair that disagrees.
pub fn trace_form_block_mismatch(n: usize, sign: Sign, field: Field, g: &Gram) -> Result<Option<(usize, usize)>> {
    use crate::kmat::KMatrix;
    use crate::octonion::Octonion;
    let basis = HermBasis::new(n, sign, field)?;
    let mat = |i: usize| {
        let s = basis.slots()[i];
        let sym = (s.k == 0) == (sign == Sign::Plus);
        if sym {
            KMatrix::sym_unit(field, n, s.u, s.v)
        } else {
            KMatrix::skew_unit(field, n, s.u, s.v)
        }
    };
    let two = field.from_i64(2);
    for i in 0..basis.dim() {
        for j in 0..basis.dim() {
            let (ki, kj) = (basis.slots()[i].k, basis.slots()[j].k);
            let tr = mat(i).mul(&mat(j)).trace();
            let expected = match (ki, kj) {
                (0, 0) => &two * &tr,
                (0, _) | (_, 0) => field.zero(),
                _ => Octonion::basis(field, ki).norm_polar(&Octonion::basis(field, kj))? * tr,
            };
            if g[i][j] != expected {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// The `λ` with `solution = λ · gram`, checked on every entry.
pub fn form_match(solution: &BilinearFormSolution, gram: &Gram) -> Result<Scalar> {
    if solution.dim != 1 {
        return Err(Error::InvalidArgument(format!("need a one-dimensional form space, got {}", solution.dim)));
    }
    proportionality(&solution.grams[0], gram)
}

/// `λ` with `x = λ y` entrywise.
pub fn proportionality(x: &Gram, y: &Gram) -> Result<Scalar> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: y.len(), got: x.len() });
    }
    let Some((i, j)) = (0..y.len()).flat_map(|i| (0..y.len()).map(move |j| (i, j))).find(|&(i, j)| !y[i][j].is_zero())
    else {
        return Err(Error::NotProportional("reference form is zero".into()));
    };
    let lambda = &x[i][j] * &y[i][j].inv().expect("nonzero");
    for p in 0..y.len() {
        for q in 0..y.len() {
            if x[p][q] != &lambda * &y[p][q] {
                return Err(Error::NotProportional(format!("entry ({p}, {q}) breaks the ratio {lambda}")));
            }
        }
    }
    Ok(lambda)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingRestriction {
    pub n: usize,
    /// Trace form on the `M_n^-⊗1` block of `sym^-`.
    pub restricted: Gram,
    /// `Tr(ad x ad y)` on `so_n`.
    pub killing: Gram,
    /// `restricted = factor · killing`.
    pub factor: Scalar,
}

/// Compares the trace form on `M_n^-⊗1 ⊂ sym^-(M_n(O), J)` with the Killing
/// form of `so_n` computed from its adjoint matrices.
pub fn killing_restriction_check(n: usize, field: Field) -> Result<KillingRestriction> {
    if n < 3 {
        return Err(Error::InvalidArgument("the Killing form of so_n is nonzero only for n >= 3".into()));
    }
    let so = build_auxiliary(Auxiliary::SOn(n), field)?;
    let d = so.dim();
    let ad: Vec<crate::linmap::LinearMap> = (0..d)
        .map(|x| {
            let images: Vec<Vec<Scalar>> = (0..d).map(|q| so.product_vector(x, q)).collect();
            crate::linmap::LinearMap::from_images(field, &images)
        })
        .collect();
    let killing: Gram = (0..d).map(|i| (0..d).map(|j| ad[i].compose(&ad[j]).trace()).collect()).collect();
    let full = trace_form_gram(n, Sign::Minus, field)?;
    let restricted: Gram = full[..d].iter().map(|row| row[..d].to_vec()).collect();
    let factor = proportionality(&restricted, &killing)?;
    Ok(KillingRestriction { n, restricted, killing, factor })
}
