//! Finite-dimensional algebras given by structure constants, and the
//! builders for `sym^±(M_n(O), J)` and the auxiliary algebras used in
//! cross-checks.
//!
//! The two octonion families use the basis
//!
//! * `sym^+`: `S_uv⊗1` (`u ≤ v`), then `A_uv⊗e_k` (`u < v`) for `k = 1..7`;
//! * `sym^-`: `A_uv⊗1` (`u < v`), then `S_uv⊗e_k` (`u ≤ v`) for `k = 1..7`;
//!
//! where `S_uu = E_uu`, `S_uv = E_uv + E_vu` and `A_uv = E_uv - E_vu`, with
//! index pairs in row-major order. Constants come from exact products of the
//! representing octonion matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};
use crate::kmat::{skew_basis, skew_coords, skew_pairs, sym_pairs, KMatrix};
use crate::octmat::OctMatrix;
use crate::octonion::{Octonion, FANO};
use crate::sample;
use crate::structure::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Commutative,
    Anticommutative,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Auxiliary {
    Octonions,
    ImaginaryOctonions,
    GLn(usize),
    SLn(usize),
    MatrixJordan(usize),
    SOn(usize),
}

/// What an algebra was built as; used for labels in reports and caches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Herm(Sign, usize),
    Aux(Auxiliary),
    DirectSum(String),
    Custom,
}

impl AlgebraKind {
    pub fn descriptor(&self) -> String {
        match self {
            AlgebraKind::Herm(Sign::Plus, n) => format!("herm_plus({n})"),
            AlgebraKind::Herm(Sign::Minus, n) => format!("herm_minus({n})"),
            AlgebraKind::Aux(Auxiliary::Octonions) => "octonions".into(),
            AlgebraKind::Aux(Auxiliary::ImaginaryOctonions) => "imaginary_octonions".into(),
            AlgebraKind::Aux(Auxiliary::GLn(n)) => format!("gl({n})"),
            AlgebraKind::Aux(Auxiliary::SLn(n)) => format!("sl({n})"),
            AlgebraKind::Aux(Auxiliary::MatrixJordan(n)) => format!("matrix_jordan({n})"),
            AlgebraKind::Aux(Auxiliary::SOn(n)) => format!("so({n})"),
            AlgebraKind::DirectSum(s) => s.clone(),
            AlgebraKind::Custom => "custom".into(),
        }
    }
}

/// `b_i b_j = Σ_k c_ij^k b_k`, stored densely over pairs and sparsely over
/// `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    kind: AlgebraKind,
    dim: usize,
    field: Field,
    labels: Vec<String>,
    table: Vec<Vec<(usize, Scalar)>>,
    flavor: Flavor,
    unit: Option<Vec<Scalar>>,
}

impl StructureAlgebra {
    /// `table[i * dim + j]` lists `(k, c_ij^k)`. Entries are summed, sorted
    /// and stripped of zeros; the flavor and the unit are verified.
    pub fn new(
        kind: AlgebraKind,
        field: Field,
        labels: Vec<String>,
        table: Vec<Vec<(usize, Scalar)>>,
        flavor: Flavor,
        unit: Option<Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: table.len() });
        }
        let mut clean = Vec::with_capacity(table.len());
        for entry in table {
            let mut acc: Vec<Scalar> = Vec::new();
            let mut keys: Vec<usize> = Vec::new();
            for (k, c) in entry {
                if k >= dim {
                    return Err(Error::DimensionMismatch { expected: dim, got: k });
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch);
                }
                match keys.iter().position(|&x| x == k) {
                    Some(p) => acc[p] += &c,
                    None => {
                        keys.push(k);
                        acc.push(c);
                    }
                }
            }
            let mut row: Vec<(usize, Scalar)> = keys.into_iter().zip(acc).filter(|(_, c)| !c.is_zero()).collect();
            row.sort_by_key(|e| e.0);
            clean.push(row);
        }
        let alg = Self { kind, dim, field, labels, table: clean, flavor, unit };
        alg.check_flavor()?;
        if let Some(u) = &alg.unit {
            if u.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: u.len() });
            }
            for i in 0..dim {
                let b = alg.basis_vector(i);
                if alg.mul(u, &b) != b || alg.mul(&b, u) != b {
                    return Err(Error::VerificationFailed(format!("unit fails on basis vector {i}")));
                }
            }
        }
        Ok(alg)
    }

    fn check_flavor(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in i..self.dim {
                let a = self.product(i, j);
                let b = self.product(j, i);
                let ok = match self.flavor {
                    Flavor::General => true,
                    Flavor::Commutative => a == b,
                    Flavor::Anticommutative => {
                        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.0 == y.0 && x.1 == -&y.1) && (i != j || a.is_empty())
                    }
                };
                if !ok {
                    return Err(Error::FlavorViolation(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn descriptor(&self) -> String {
        self.kind.descriptor()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn unit(&self) -> Option<&[Scalar]> {
        self.unit.as_deref()
    }

    /// Nonzero `(k, c_ij^k)`, sorted by `k`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    /// All nonzero constants `(i, j, k, c)` in lexicographic order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        self.table.iter().enumerate().flat_map(move |(ij, row)| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            row.iter().map(move |(k, c)| (i, j, *k, c))
        })
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        crate::structure::subspace::unit(self.field, self.dim, i)
    }

    /// `b_i b_j` as a dense coordinate vector.
    pub fn product_vector(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (k, c) in self.product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    /// Bilinear product of coordinate vectors (lengths are not checked; see
    /// [`element_product`]).
    pub fn mul(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        let wnz: Vec<usize> = (0..self.dim).filter(|&j| !w[j].is_zero()).collect();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for &j in &wnz {
                let t = self.product(i, j);
                if t.is_empty() {
                    continue;
                }
                let f = vi * &w[j];
                for (k, c) in t {
                    out[*k] += &(&f * c);
                }
            }
        }
        out
    }

    /// `b_i · v`.
    pub fn mul_basis_left(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] += &(vj * c);
            }
        }
        out
    }

    /// `v · b_j`.
    pub fn mul_basis_right(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (k, c) in self.product(i, j) {
                out[*k] += &(vi * c);
            }
        }
        out
    }

    /// `A · A = 0`.
    pub fn has_zero_product(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    /// Largest denominator-free check: `true` iff every constant reduces
    /// modulo `p`.
    pub fn reduces_mod(&self, p: u64) -> bool {
        self.constants().all(|(_, _, _, c)| c.as_rational().is_none_or(|q| q.reduce_mod(p).is_some()))
    }

    /// The same constants read in `F_p`. Fails if `p` divides a denominator
    /// or the algebra is not over the rationals.
    pub fn reduce_mod(&self, target: Field) -> Result<StructureAlgebra> {
        let conv = |c: &Scalar| -> Result<Scalar> {
            let q = c.as_rational().ok_or(Error::FieldMismatch)?;
            target.from_rational(q)
        };
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|(k, c)| Ok((*k, conv(c)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = match &self.unit {
            Some(u) => Some(u.iter().map(conv).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        StructureAlgebra::new(self.kind.clone(), target, self.labels.clone(), table, self.flavor, unit)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<Scalar> {
        sample::vector(self.field, self.dim, rng)
    }
}

/// A coordinate vector checked against an algebra's dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement(Vec<Scalar>);

impl AlgebraElement {
    pub fn new(a: &StructureAlgebra, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: coords.len() });
        }
        if coords.iter().any(|c| c.field() != a.field()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }
}

pub fn element_product(a: &StructureAlgebra, v: &AlgebraElement, w: &AlgebraElement) -> Result<AlgebraElement> {
    for x in [v, w] {
        if x.0.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), got: x.0.len() });
        }
    }
    Ok(AlgebraElement(a.mul(&v.0, &w.0)))
}

/// Index of the block an `sym^±` basis vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HermSlot {
    pub u: usize,
    pub v: usize,
    /// `0` for the `⊗1` block, otherwise the imaginary unit `e_k`.
    pub k: usize,
}

/// The canonical basis of `sym^±(M_n(O), J)` with its octonion-matrix
/// representatives and coordinate extraction.
#[derive(Clone, Debug)]
pub struct HermBasis {
    n: usize,
    sign: Sign,
    field: Field,
    slots: Vec<HermSlot>,
    reps: Vec<OctMatrix>,
}

impl HermBasis {
    pub fn new(n: usize, sign: Sign, field: Field) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix order must be at least 1".into()));
        }
        let (real_pairs, imag_pairs) = match sign {
            Sign::Plus => (sym_pairs(n), skew_pairs(n)),
            Sign::Minus => (skew_pairs(n), sym_pairs(n)),
        };
        let mut slots: Vec<HermSlot> = real_pairs.iter().map(|&(u, v)| HermSlot { u, v, k: 0 }).collect();
        for k in 1..8 {
            slots.extend(imag_pairs.iter().map(|&(u, v)| HermSlot { u, v, k }));
        }
        let reps = slots
            .iter()
            .map(|s| {
                let sym = (s.k == 0) == (sign == Sign::Plus);
                let x = if sym { KMatrix::sym_unit(field, n, s.u, s.v) } else { KMatrix::skew_unit(field, n, s.u, s.v) };
                OctMatrix::tensor(&x, &Octonion::basis(field, s.k))
            })
            .collect();
        Ok(Self { n, sign, field, slots, reps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[HermSlot] {
        &self.slots
    }

    /// Size of the leading `⊗1` block.
    pub fn real_block(&self) -> usize {
        self.slots.iter().take_while(|s| s.k == 0).count()
    }

    pub fn representative(&self, i: usize) -> &OctMatrix {
        &self.reps[i]
    }

    pub fn labels(&self) -> Vec<String> {
        let (real, imag) = match self.sign {
            Sign::Plus => ("S", "A"),
            Sign::Minus => ("A", "S"),
        };
        self.slots
            .iter()
            .map(|s| {
                if s.k == 0 {
                    format!("{real}{}{}", s.u + 1, s.v + 1)
                } else {
                    format!("{imag}{}{}.e{}", s.u + 1, s.v + 1, s.k)
                }
            })
            .collect()
    }

    /// The matrix `Σ c_i B_i`.
    pub fn matrix(&self, coords: &[Scalar]) -> OctMatrix {
        let n = self.n;
        let mut entries: Vec<[Scalar; 8]> = (0..n * n).map(|_| core::array::from_fn(|_| self.field.zero())).collect();
        let real_sym = self.sign == Sign::Plus;
        for (s, c) in self.slots.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            let sym = (s.k == 0) == real_sym;
            entries[s.u * n + s.v][s.k] += c;
            if s.u != s.v {
                // S_uv⊗a has a at (v,u); A_uv⊗a has -a there
                if sym {
                    entries[s.v * n + s.u][s.k] += c;
                } else {
                    entries[s.v * n + s.u][s.k] -= c;
                }
            }
        }
        OctMatrix::from_fn(n, |i, j| Octonion::from_coeffs(entries[i * n + j].clone()).expect("one field"))
    }

    /// Coordinates of `x` in this basis; [`Error::NotInSubspace`] if `x` is
    /// not (skew-)Hermitian as required.
    pub fn coords(&self, x: &OctMatrix) -> Result<Vec<Scalar>> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.n() });
        }
        if x.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let c: Vec<Scalar> = self.slots.iter().map(|s| x.get(s.u, s.v).coeff(s.k).clone()).collect();
        if self.matrix(&c) != *x {
            let what = match self.sign {
                Sign::Plus => "Hermitian",
                Sign::Minus => "skew-Hermitian",
            };
            return Err(Error::NotInSubspace(format!("matrix is not {what}")));
        }
        Ok(c)
    }

    /// The product of the algebra: `∘` on `sym^+`, `[,]` on `sym^-`.
    pub fn product(&self, x: &OctMatrix, y: &OctMatrix) -> Result<OctMatrix> {
        match self.sign {
            Sign::Plus => x.jordan(y),
            Sign::Minus => x.bracket(y),
        }
    }
}

pub fn build_herm(n: usize, sign: Sign, field: Field) -> Result<StructureAlgebra> {
    let basis = HermBasis::new(n, sign, field)?;
    let dim = basis.dim();
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let p = basis.product(basis.representative(i), basis.representative(j))?;
            let c = basis.coords(&p)?;
            let row: Vec<(usize, Scalar)> = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            if i != j {
                table[j * dim + i] = match sign {
                    Sign::Plus => row.clone(),
                    Sign::Minus => row.iter().map(|(k, x)| (*k, -x)).collect(),
                };
            }
            table[i * dim + j] = row;
        }
    }
    let (flavor, unit) = match sign {
        Sign::Plus => (Flavor::Commutative, Some(basis.coords(&OctMatrix::identity(field, n))?)),
        Sign::Minus => (Flavor::Anticommutative, None),
    };
    StructureAlgebra::new(AlgebraKind::Herm(sign, n), field, basis.labels(), table, flavor, unit)
}

pub fn build_herm_plus(n: usize, field: Field) -> Result<StructureAlgebra> {
    build_herm(n, Sign::Plus, field)
}

pub fn build_herm_minus(n: usize, field: Field) -> Result<StructureAlgebra> {
    build_herm(n, Sign::Minus, field)
}

fn from_matrix_basis(
    kind: AlgebraKind,
    field: Field,
    labels: Vec<String>,
    basis: &[KMatrix],
    product: fn(&KMatrix, &KMatrix) -> KMatrix,
    coords: &dyn Fn(&KMatrix) -> Result<Vec<Scalar>>,
    flavor: Flavor,
    unit: Option<Vec<Scalar>>,
) -> Result<StructureAlgebra> {
    let dim = basis.len();
    let mut table = Vec::with_capacity(dim * dim);
    for x in basis {
        for y in basis {
            let c = coords(&product(x, y))?;
            table.push(c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    StructureAlgebra::new(kind, field, labels, table, flavor, unit)
}

fn full_coords(m: &KMatrix) -> Result<Vec<Scalar>> {
    Ok(m.entries().to_vec())
}

pub fn build_auxiliary(kind: Auxiliary, field: Field) -> Result<StructureAlgebra> {
    let need = |n: usize| {
        if n < 2 {
            Err(Error::InvalidArgument(format!("order {n} is too small; need n >= 2")))
        } else {
            Ok(n)
        }
    };
    let tag = AlgebraKind::Aux(kind);
    match kind {
        Auxiliary::Octonions | Auxiliary::ImaginaryOctonions => {
            let imaginary = kind == Auxiliary::ImaginaryOctonions;
            let range: Vec<usize> = if imaginary { (1..8).collect() } else { (0..8).collect() };
            let offset = usize::from(imaginary);
            let mut table = Vec::new();
            for &i in &range {
                for &j in &range {
                    let (s, k) = FANO.product(i, j);
                    let c = field.from_i64(s as i64);
                    table.push(if !imaginary {
                        vec![(k, c)]
                    } else if i == j {
                        Vec::new()
                    } else {
                        // [e_i, e_j] = 2 e_i e_j for i ≠ j
                        vec![(k - offset, &c + &c)]
                    });
                }
            }
            let labels = range.iter().map(|&k| if k == 0 { "1".to_string() } else { format!("e{k}") }).collect();
            if imaginary {
                StructureAlgebra::new(tag, field, labels, table, Flavor::Anticommutative, None)
            } else {
                let unit = crate::structure::subspace::unit(field, 8, 0);
                StructureAlgebra::new(tag, field, labels, table, Flavor::General, Some(unit))
            }
        }
        Auxiliary::GLn(n) | Auxiliary::MatrixJordan(n) => {
            let n = need(n)?;
            let basis: Vec<KMatrix> =
                (0..n * n).map(|k| KMatrix::unit(field, n, k / n, k % n)).collect();
            let labels = (0..n * n).map(|k| format!("E{}{}", k / n + 1, k % n + 1)).collect();
            if let Auxiliary::GLn(_) = kind {
                from_matrix_basis(tag, field, labels, &basis, KMatrix::bracket, &full_coords, Flavor::Anticommutative, None)
            } else {
                let unit = KMatrix::identity(field, n).entries().to_vec();
                from_matrix_basis(tag, field, labels, &basis, KMatrix::jordan, &full_coords, Flavor::Commutative, Some(unit))
            }
        }
        Auxiliary::SLn(n) => {
            let n = need(n)?;
            let off: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
            let mut basis: Vec<KMatrix> = off.iter().map(|&(i, j)| KMatrix::unit(field, n, i, j)).collect();
            let mut labels: Vec<String> = off.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
            for i in 0..n - 1 {
                basis.push(KMatrix::unit(field, n, i, i).sub(&KMatrix::unit(field, n, i + 1, i + 1)));
                labels.push(format!("H{}", i + 1));
            }
            let coords = move |m: &KMatrix| -> Result<Vec<Scalar>> {
                if !m.trace().is_zero() {
                    return Err(Error::NotInSubspace("matrix is not traceless".into()));
                }
                let mut c: Vec<Scalar> = off.iter().map(|&(i, j)| m.get(i, j).clone()).collect();
                // H_k carries +1 at (k,k) and -1 at (k+1,k+1): coefficient of
                // H_k is the partial sum of the first k+1 diagonal entries
                let mut acc = field.zero();
                for i in 0..n - 1 {
                    acc += m.get(i, i);
                    c.push(acc.clone());
                }
                Ok(c)
            };
            from_matrix_basis(tag, field, labels, &basis, KMatrix::bracket, &coords, Flavor::Anticommutative, None)
        }
        Auxiliary::SOn(n) => {
            let n = need(n)?;
            let labels = skew_pairs(n).iter().map(|&(u, v)| format!("A{}{}", u + 1, v + 1)).collect();
            let coords = |m: &KMatrix| -> Result<Vec<Scalar>> {
                if !m.is_skew() {
                    return Err(Error::NotInSubspace("matrix is not skew".into()));
                }
                Ok(skew_coords(m))
            };
            from_matrix_basis(tag, field, labels, &skew_basis(field, n), KMatrix::bracket, &coords, Flavor::Anticommutative, None)
        }
    }
}

/// `A ⊕ B` with componentwise product.
pub fn direct_sum(a: &StructureAlgebra, b: &StructureAlgebra) -> Result<StructureAlgebra> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let (da, db) = (a.dim(), b.dim());
    let dim = da + db;
    let mut table = vec![Vec::new(); dim * dim];
    for i in 0..da {
        for j in 0..da {
            table[i * dim + j] = a.product(i, j).to_vec();
        }
    }
    for i in 0..db {
        for j in 0..db {
            table[(da + i) * dim + da + j] = b.product(i, j).iter().map(|(k, c)| (da + k, c.clone())).collect();
        }
    }
    let flavor = if a.flavor() == b.flavor() { a.flavor() } else { Flavor::General };
    let unit = match (a.unit(), b.unit()) {
        (Some(u), Some(v)) => Some(u.iter().chain(v).cloned().collect()),
        _ => None,
    };
    let labels = a.labels().iter().map(|l| format!("{l}'")).chain(b.labels().iter().map(|l| format!("{l}''"))).collect();
    let kind = AlgebraKind::DirectSum(format!("{} + {}", a.descriptor(), b.descriptor()));
    StructureAlgebra::new(kind, a.field(), labels, table, flavor, unit)
}

/// The smallest subalgebra containing `generators`, as a reduced echelon
/// subspace.
pub fn subalgebra_closure(a: &StructureAlgebra, generators: &[Vec<Scalar>]) -> Result<Subspace> {
    let mut space = Subspace::zero(a.field(), a.dim());
    let mut added: Vec<Vec<Scalar>> = Vec::new();
    for g in generators {
        if let Some(r) = space.try_insert(g)? {
            added.push(r);
        }
    }
    // Products of every pair of accepted vectors; each accepted vector is
    // paired with all vectors accepted before it (and itself).
    let mut done = 0;
    while done < added.len() {
        let v = added[done].clone();
        for t in 0..=done {
            let w = added[t].clone();
            let mut prods = vec![a.mul(&v, &w)];
            if a.flavor() == Flavor::General && t != done {
                prods.push(a.mul(&w, &v));
            }
            for p in prods {
                if let Some(r) = space.insert(&p) {
                    added.push(r);
                }
            }
        }
        done += 1;
    }
    Ok(space)
}

/// Outcome of one family of random formula checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaCheck {
    pub name: &'static str,
    pub cases: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFormulaReport {
    pub n: usize,
    pub checks: Vec<FormulaCheck>,
    /// `true` when the literal printed form `N(a,b)(x∘y)⊗1 + ½[x,y]⊗[a,b]`
    /// disagrees with `(x⊗a)∘(y⊗b)` on some sampled tuple. It equals
    /// `XY + YX = 2 X∘Y` instead.
    pub printed_jordan_formula_off_by_two: bool,
}

/// Checks the product rules for `(x⊗a)∘(y⊗b)` and `[m⊗a, s⊗b]` (general
/// and `b = a`) and the product tables of `L^±(a)` against direct
/// octonion-matrix products on `trials` random tuples.
pub fn verify_product_formulas<R: Rng + ?Sized>(
    n: usize,
    field: Field,
    trials: usize,
    rng: &mut R,
) -> Result<ProductFormulaReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("product formulas need n >= 2".into()));
    }
    let half = field.half();
    let quarter = &half * &half;
    let one = Octonion::one(field);
    let t = OctMatrix::tensor;
    let mismatch = |formula: &'static str, detail: String| Error::FormulaMismatch { formula: formula.into(), detail };
    let eq = |lhs: &OctMatrix, rhs: &OctMatrix, formula: &'static str, inputs: &dyn Fn() -> String| -> Result<()> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(mismatch(formula, inputs()))
        }
    };
    let mut printed_off = false;
    for _ in 0..trials {
        let x = sample::skew(field, n, rng);
        let y = sample::skew(field, n, rng);
        let m = sample::symmetric(field, n, rng);
        let s = sample::symmetric(field, n, rng);
        let a = sample::imaginary(field, rng);
        let b = sample::imaginary(field, rng);
        let nab = a.norm_polar(&b)?;
        let na = a.norm()?;
        let ab = a.commutator(&b);
        let show = || format!("x={:?} y={:?} m={:?} s={:?} a={:?} b={:?}", x, y, m, s, a, b);

        // (x⊗a)∘(y⊗b) = ½N(a,b)(x∘y)⊗1 + ¼[x,y]⊗[a,b]
        let lhs = t(&x, &a).jordan(&t(&y, &b))?;
        let rhs = t(&x.jordan(&y).scale(&(&half * &nab)), &one).add(&t(&x.bracket(&y).scale(&quarter), &ab))?;
        eq(&lhs, &rhs, "(x⊗a)∘(y⊗b) = ½N(a,b)(x∘y)⊗1 + ¼[x,y]⊗[a,b]", &show)?;
        let printed = t(&x.jordan(&y).scale(&nab), &one).add(&t(&x.bracket(&y).scale(&half), &ab))?;
        if printed != lhs {
            printed_off = true;
            let doubled = lhs.add(&lhs)?;
            eq(&printed, &doubled, "N(a,b)(x∘y)⊗1 + ½[x,y]⊗[a,b] = 2 (x⊗a)∘(y⊗b)", &show)?;
        }

        // (x⊗a)∘(y⊗a) = -N(a)(x∘y)⊗1
        let lhs = t(&x, &a).jordan(&t(&y, &a))?;
        eq(&lhs, &t(&x.jordan(&y).scale(&-&na), &one), "(x⊗a)∘(y⊗a) = -N(a)(x∘y)⊗1", &show)?;

        // [m⊗a, s⊗b] = ½N(a,b)[m,s]⊗1 + (m∘s)⊗[a,b]
        let lhs = t(&m, &a).bracket(&t(&s, &b))?;
        let rhs = t(&m.bracket(&s).scale(&(&half * &nab)), &one).add(&t(&m.jordan(&s), &ab))?;
        eq(&lhs, &rhs, "[m⊗a, s⊗b] = ½N(a,b)[m,s]⊗1 + (m∘s)⊗[a,b]", &show)?;

        // [m⊗a, s⊗a] = N(a)[s,m]⊗1
        let lhs = t(&m, &a).bracket(&t(&s, &a))?;
        eq(&lhs, &t(&s.bracket(&m).scale(&na), &one), "[m⊗a, s⊗a] = N(a)[s,m]⊗1", &show)?;

        // L^+(a) = M_n^+⊗1 + M_n^-⊗a:
        //   (m⊗1)∘(s⊗1) = (m∘s)⊗1, (m⊗1)∘(x⊗a) = (m∘x)⊗a
        let lhs = t(&m, &one).jordan(&t(&s, &one))?;
        eq(&lhs, &t(&m.jordan(&s), &one), "(m⊗1)∘(s⊗1) = (m∘s)⊗1", &show)?;
        let lhs = t(&m, &one).jordan(&t(&x, &a))?;
        eq(&lhs, &t(&m.jordan(&x), &a), "(m⊗1)∘(x⊗a) = (m∘x)⊗a", &show)?;

        // L^-(a) = M_n^-⊗1 + M_n^+⊗a:
        //   [x⊗1, y⊗1] = [x,y]⊗1, [x⊗1, m⊗a] = [x,m]⊗a
        let lhs = t(&x, &one).bracket(&t(&y, &one))?;
        eq(&lhs, &t(&x.bracket(&y), &one), "[x⊗1, y⊗1] = [x,y]⊗1", &show)?;
        let lhs = t(&x, &one).bracket(&t(&m, &a))?;
        eq(&lhs, &t(&x.bracket(&m), &a), "[x⊗1, m⊗a] = [x,m]⊗a", &show)?;
    }
    let names = [
        "(x⊗a)∘(y⊗b) = ½N(a,b)(x∘y)⊗1 + ¼[x,y]⊗[a,b]",
        "(x⊗a)∘(y⊗a) = -N(a)(x∘y)⊗1",
        "[m⊗a, s⊗b] = ½N(a,b)[m,s]⊗1 + (m∘s)⊗[a,b]",
        "[m⊗a, s⊗a] = N(a)[s,m]⊗1",
        "(m⊗1)∘(s⊗1) = (m∘s)⊗1",
        "(m⊗1)∘(x⊗a) = (m∘x)⊗a",
        "[x⊗1, y⊗1] = [x,y]⊗1",
        "[x⊗1, m⊗a] = [x,m]⊗a",
    ];
    Ok(ProductFormulaReport {
        n,
        checks: names.iter().map(|&name| FormulaCheck { name, cases: trials }).collect(),
        printed_jordan_formula_off_by_two: printed_off,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: Field = Field::Rationals;

    #[test]
    fn dimensions() {
        for (n, p, m) in [(1, 1, 7), (2, 10, 22), (3, 27, 45)] {
            let plus = build_herm_plus(n, Q).unwrap();
            let minus = build_herm_minus(n, Q).unwrap();
            assert_eq!((plus.dim(), minus.dim()), (p, m));
            assert_eq!(plus.flavor(), Flavor::Commutative);
            assert_eq!(minus.flavor(), Flavor::Anticommutative);
        }
    }

    #[test]
    fn herm_plus_one_is_the_ground_field() {
        let a = build_herm_plus(1, Q).unwrap();
        assert_eq!(a.product(0, 0), &[(0, Q.one())]);
        assert_eq!(a.unit(), Some(&[Q.one()][..]));
    }

    #[test]
    fn labels_follow_basis_order() {
        let b = HermBasis::new(2, Sign::Plus, Q).unwrap();
        let l = b.labels();
        assert_eq!(&l[..4], &["S11", "S12", "S22", "A12.e1"]);
        assert_eq!(l.last().unwrap(), "A12.e7");
        let b = HermBasis::new(2, Sign::Minus, Q).unwrap();
        assert_eq!(&b.labels()[..2], &["A12", "S11.e1"]);
    }

    #[test]
    fn constants_are_small() {
        let a = build_herm_plus(3, Q).unwrap();
        let allowed: Vec<Scalar> = ["0", "1", "-1", "1/2", "-1/2", "2", "-2"].iter().map(|s| Q.parse(s).unwrap()).collect();
        assert!(a.constants().all(|(_, _, _, c)| allowed.contains(c)));
    }

    #[test]
    fn products_match_matrix_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for sign in [Sign::Plus, Sign::Minus] {
            let basis = HermBasis::new(3, sign, Q).unwrap();
            let a = build_herm(3, sign, Q).unwrap();
            for _ in 0..10 {
                let v = a.random_element(&mut rng);
                let w = a.random_element(&mut rng);
                let direct = basis.product(&basis.matrix(&v), &basis.matrix(&w)).unwrap();
                assert_eq!(basis.matrix(&a.mul(&v, &w)), direct);
                assert_eq!(basis.coords(&direct).unwrap(), a.mul(&v, &w));
            }
        }
    }

    #[test]
    fn unit_and_anticommutativity() {
        let a = build_herm_plus(2, Q).unwrap();
        let u = AlgebraElement::new(&a, a.unit().unwrap().to_vec()).unwrap();
        let v = AlgebraElement::new(&a, (0..10).map(|i| Q.from_i64(i - 3)).collect()).unwrap();
        assert_eq!(element_product(&a, &u, &v).unwrap(), v);
        let m = build_herm_minus(2, Q).unwrap();
        for i in 0..m.dim() {
            assert!(m.product(i, i).is_empty());
        }
        assert!(AlgebraElement::new(&a, vec![Q.one()]).is_err());
    }

    #[test]
    fn coords_reject_wrong_kind() {
        let basis = HermBasis::new(2, Sign::Plus, Q).unwrap();
        let skew = OctMatrix::tensor(&KMatrix::identity(Q, 2), &Octonion::basis(Q, 3));
        assert!(matches!(basis.coords(&skew), Err(Error::NotInSubspace(_))));
    }

    #[test]
    fn auxiliary_dimensions() {
        assert_eq!(build_auxiliary(Auxiliary::SOn(3), Q).unwrap().dim(), 3);
        assert_eq!(build_auxiliary(Auxiliary::GLn(2), Q).unwrap().dim(), 4);
        assert_eq!(build_auxiliary(Auxiliary::SLn(3), Q).unwrap().dim(), 8);
        assert_eq!(build_auxiliary(Auxiliary::MatrixJordan(3), Q).unwrap().dim(), 9);
        let im = build_auxiliary(Auxiliary::ImaginaryOctonions, Q).unwrap();
        assert_eq!((im.dim(), im.flavor()), (7, Flavor::Anticommutative));
        assert!(build_auxiliary(Auxiliary::GLn(1), Q).is_err());
    }

    #[test]
    fn derived_algebra_of_gl2_is_sl2() {
        let gl = build_auxiliary(Auxiliary::GLn(2), Q).unwrap();
        let mut span = Subspace::zero(Q, 4);
        for i in 0..4 {
            for j in 0..4 {
                span.insert(&gl.mul(&gl.basis_vector(i), &gl.basis_vector(j)));
            }
        }
        assert_eq!(span.dim(), 3);
    }

    #[test]
    fn subalgebras() {
        for n in 2..=3 {
            // L^-(e1) = M_n^-⊗1 + M_n^+⊗e1
            let a = build_herm_minus(n, Q).unwrap();
            let basis = HermBasis::new(n, Sign::Minus, Q).unwrap();
            let gens: Vec<_> = (0..a.dim()).filter(|&i| basis.slots()[i].k <= 1).map(|i| a.basis_vector(i)).collect();
            let s = subalgebra_closure(&a, &gens).unwrap();
            assert_eq!(s.dim(), n * n);

            let p = build_herm_plus(n, Q).unwrap();
            let r = HermBasis::new(n, Sign::Plus, Q).unwrap().real_block();
            let gens: Vec<_> = (0..r).map(|i| p.basis_vector(i)).collect();
            assert_eq!(subalgebra_closure(&p, &gens).unwrap().dim(), n * (n + 1) / 2);
            let gens: Vec<_> = (r..p.dim()).map(|i| p.basis_vector(i)).collect();
            assert!(subalgebra_closure(&p, &gens).unwrap().dim() > gens.len());
        }
        // E⊗O^- in herm_minus(2)
        let a = build_herm_minus(2, Q).unwrap();
        let basis = HermBasis::new(2, Sign::Minus, Q).unwrap();
        let gens: Vec<_> = (1..8)
            .map(|k| basis.coords(&OctMatrix::from_fn(2, |i, j| if i == j { Octonion::basis(Q, k) } else { Octonion::zero(Q) })).unwrap())
            .collect();
        assert_eq!(subalgebra_closure(&a, &gens).unwrap().dim(), 7);
    }

    #[test]
    fn product_formulas_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = verify_product_formulas(2, Q, 30, &mut rng).unwrap();
        assert!(r.printed_jordan_formula_off_by_two);
        assert_eq!(r.checks.len(), 8);
    }

    #[test]
    fn direct_sum_and_reduction() {
        let a = build_herm_minus(1, Q).unwrap();
        let s = direct_sum(&a, &a).unwrap();
        assert_eq!(s.dim(), 14);
        let f7 = Field::Prime(7);
        let r = build_herm_plus(2, Q).unwrap().reduce_mod(f7).unwrap();
        assert_eq!(r, build_herm_plus(2, f7).unwrap());
    }
}
