//! Exact sparse linear algebra: rank and certified nullspaces over prime
//! fields and over the rationals.
//!
//! Systems are first split into independent blocks (connected components of
//! the row/column incidence graph); each block is reduced on its own. Over
//! the rationals the `MultiModular` policy reduces every block modulo several
//! word-size primes, lifts the canonical kernel basis by Chinese remaindering
//! and rational reconstruction, and re-checks each lifted vector with exact
//! rational arithmetic.

mod dense;
mod elim;
mod reconstruct;
mod sparse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

pub use dense::DenseModP;
pub use elim::{ElimArith, ModP, PivotRow, QArith, SparseRref};
pub use reconstruct::{rational_reconstruct, Crt};
pub use sparse::{parse_field_descriptor, SparseBuilder, SparseMatrix};

use crate::error::{Error, Result};
use crate::exactnum::{Field, Rational, Residue, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Policy {
    Direct,
    MultiModular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certification {
    /// Every basis vector was checked against every row with exact arithmetic
    /// over the target field.
    ExactVerified,
    /// Agreement across the listed primes only.
    ModularConsensus,
}

impl Certification {
    pub fn as_str(self) -> &'static str {
        match self {
            Certification::ExactVerified => "ExactVerified",
            Certification::ModularConsensus => "ModularConsensus",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullspaceResult {
    pub dim: usize,
    /// Dense basis vectors, each scaled so its first nonzero coordinate is 1,
    /// ordered by the free column they were generated from.
    pub basis: Vec<Vec<Scalar>>,
    pub certification: Certification,
    pub primes_used: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Number of agreeing primes required before lifting.
    pub min_primes: usize,
    /// Hard bound on primes tried per block before giving up or falling back.
    pub max_primes: usize,
    /// Re-check lifted vectors with exact arithmetic.
    pub verify: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { min_primes: 3, max_primes: 16, verify: true }
    }
}

/// The first `k` primes below `2^31`, in decreasing order.
pub fn large_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut n = (1u64 << 31) - 1;
    while out.len() < k {
        if Field::new(crate::exactnum::FieldSpec::prime(n)).is_ok() {
            out.push(n);
        }
        n -= 2;
    }
    out
}

pub fn nullspace(m: &SparseMatrix, policy: Policy) -> Result<NullspaceResult> {
    nullspace_with(m, policy, &SolverOptions::default())
}

pub fn nullspace_with(m: &SparseMatrix, policy: Policy, opts: &SolverOptions) -> Result<NullspaceResult> {
    let blocks = Blocks::of(m);
    let mut vectors: Vec<(usize, Vec<(usize, Scalar)>)> =
        blocks.isolated.iter().map(|&c| (c, vec![(c, m.field().one())])).collect();
    let mut primes_used: Vec<u64> = Vec::new();
    let mut certification = Certification::ExactVerified;
    for block in &blocks.blocks {
        let mut checked = false;
        let solved = match (m.field(), policy) {
            (Field::Prime(p), _) => solve_block_mod_p(m, block, p)?,
            (Field::Rationals, Policy::Direct) => solve_block_direct(m, block),
            (Field::Rationals, Policy::MultiModular) => {
                checked = opts.verify;
                let (sol, primes) = solve_block_multimodular(m, block, opts)?;
                for p in primes {
                    if !primes_used.contains(&p) {
                        primes_used.push(p);
                    }
                }
                sol
            }
        };
        if opts.verify && !checked {
            for (_, v) in &solved {
                if !block_annihilates(m, block, v) {
                    return Err(Error::VerificationFailed(format!(
                        "kernel vector does not annihilate its block ({} columns)",
                        block.cols.len()
                    )));
                }
            }
        } else if !opts.verify {
            certification = Certification::ModularConsensus;
        }
        vectors.extend(solved);
    }
    if let Field::Prime(p) = m.field() {
        primes_used.push(p);
    }
    vectors.sort_by_key(|v| v.0);
    let basis: Vec<Vec<Scalar>> = vectors
        .into_iter()
        .map(|(_, sparse)| {
            let mut dense = vec![m.field().zero(); m.cols()];
            for (c, v) in sparse {
                dense[c] = v;
            }
            normalize_leading(&mut dense);
            dense
        })
        .collect();
    Ok(NullspaceResult { dim: basis.len(), basis, certification, primes_used })
}

/// Exact rank. Over the rationals this is the largest modular rank over at
/// least three primes, cross-checked against the certified nullity.
pub fn rank(m: &SparseMatrix) -> Result<usize> {
    let blocks = Blocks::of(m);
    match m.field() {
        Field::Prime(p) => {
            let mut r = 0;
            for b in &blocks.blocks {
                r += rref_mod_p(m, b, p)?.rank();
            }
            Ok(r)
        }
        Field::Rationals => {
            let primes = large_primes(SolverOptions::default().min_primes);
            let mut r = 0;
            for b in &blocks.blocks {
                let mut best = 0;
                for &p in &primes {
                    best = best.max(rref_mod_p(m, b, p)?.rank());
                }
                r += best;
            }
            let nullity = nullspace(m, Policy::MultiModular)?.dim;
            if r + nullity != m.cols() {
                return Err(Error::VerificationFailed(format!(
                    "rank {r} + nullity {nullity} != {} columns",
                    m.cols()
                )));
            }
            Ok(r)
        }
    }
}

fn normalize_leading(v: &mut [Scalar]) {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else { return };
    if lead.is_one() {
        return;
    }
    let inv = lead.inv().expect("nonzero");
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * &inv;
        }
    }
}

/// A connected block: sorted global columns and the rows touching them,
/// ordered sparsest first.
#[derive(Debug)]
struct Block {
    cols: Vec<usize>,
    rows: Vec<usize>,
}

#[derive(Debug)]
struct Blocks {
    blocks: Vec<Block>,
    /// Columns no row touches; each contributes a unit kernel vector.
    isolated: Vec<usize>,
}

impl Blocks {
    fn of(m: &SparseMatrix) -> Self {
        let mut parent: Vec<usize> = (0..m.cols()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut used = vec![false; m.cols()];
        for r in 0..m.rows() {
            let mut it = m.row(r);
            let Some((first, _)) = it.next() else { continue };
            used[first] = true;
            for (c, _) in it {
                used[c] = true;
                let (a, b) = (find(&mut parent, first), find(&mut parent, c));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut by_root: BTreeMap<usize, Block> = BTreeMap::new();
        let mut isolated = Vec::new();
        for c in 0..m.cols() {
            if !used[c] {
                isolated.push(c);
                continue;
            }
            let root = find(&mut parent, c);
            by_root.entry(root).or_insert_with(|| Block { cols: Vec::new(), rows: Vec::new() }).cols.push(c);
        }
        for r in 0..m.rows() {
            if let Some((c, _)) = m.row(r).next() {
                let root = find(&mut parent, c);
                by_root.get_mut(&root).expect("root of a used column").rows.push(r);
            }
        }
        let mut blocks: Vec<Block> = by_root.into_values().collect();
        for b in &mut blocks {
            b.rows.sort_by_key(|&r| (m.row_len(r), r));
        }
        Blocks { blocks, isolated }
    }
}

fn residue(s: &Scalar, p: u64) -> Result<u64> {
    match s {
        Scalar::Q(q) => q.reduce_mod(p).ok_or(Error::PrimeDividesDenominator(p)),
        Scalar::Fp(r) if r.modulus() == p => Ok(r.value()),
        Scalar::Fp(_) => Err(Error::FieldMismatch),
    }
}

fn rref_mod_p(m: &SparseMatrix, block: &Block, p: u64) -> Result<SparseRref<ModP>> {
    let local = local_index(block);
    let mut rref = SparseRref::new(ModP(p), block.cols.len());
    for &r in &block.rows {
        if rref.is_full() {
            break;
        }
        let mut entries = Vec::with_capacity(m.row_len(r));
        for (c, v) in m.row(r) {
            entries.push((local(c), residue(v, p)?));
        }
        rref.insert(entries);
    }
    Ok(rref)
}

fn local_index(block: &Block) -> impl Fn(usize) -> usize + '_ {
    move |c| block.cols.binary_search(&c).expect("column belongs to block")
}

type SparseVec = Vec<(usize, Scalar)>;

fn solve_block_mod_p(m: &SparseMatrix, block: &Block, p: u64) -> Result<Vec<(usize, SparseVec)>> {
    let rref = rref_mod_p(m, block, p)?;
    Ok(rref
        .kernel()
        .into_iter()
        .map(|(f, v)| {
            let v = v.into_iter().map(|(c, x)| (block.cols[c], Scalar::Fp(Residue::new(x, p)))).collect();
            (block.cols[f], v)
        })
        .collect())
}

fn solve_block_direct(m: &SparseMatrix, block: &Block) -> Vec<(usize, SparseVec)> {
    let local = local_index(block);
    let mut rref = SparseRref::new(QArith, block.cols.len());
    for &r in &block.rows {
        if rref.is_full() {
            break;
        }
        let entries: Vec<(usize, Rational)> = m
            .row(r)
            .map(|(c, v)| (local(c), v.as_rational().expect("rational system").clone()))
            .collect();
        rref.insert(entries);
    }
    rref.kernel()
        .into_iter()
        .map(|(f, v)| (block.cols[f], v.into_iter().map(|(c, x)| (block.cols[c], Scalar::Q(x))).collect()))
        .collect()
}

fn block_annihilates(m: &SparseMatrix, block: &Block, v: &SparseVec) -> bool {
    let mut dense: BTreeMap<usize, &Scalar> = BTreeMap::new();
    for (c, x) in v {
        dense.insert(*c, x);
    }
    block.rows.iter().all(|&r| {
        let mut acc: Option<Scalar> = None;
        for (c, a) in m.row(r) {
            if let Some(x) = dense.get(&c) {
                let t = a * *x;
                acc = Some(match acc {
                    Some(s) => s + t,
                    None => t,
                });
            }
        }
        acc.is_none_or(|s| s.is_zero())
    })
}

/// Solves one block over the rationals by multi-modular lifting. Returns the
/// kernel vectors and the primes whose reductions were used.
fn solve_block_multimodular(
    m: &SparseMatrix,
    block: &Block,
    opts: &SolverOptions,
) -> Result<(Vec<(usize, SparseVec)>, Vec<u64>)> {
    let pool = large_primes(opts.max_primes);
    let mut computed: Vec<(u64, SparseRref<ModP>)> = Vec::new();
    let mut want = opts.min_primes.max(1);
    loop {
        while computed.len() < want.min(pool.len()) {
            let p = pool[computed.len()];
            computed.push((p, rref_mod_p(m, block, p)?));
        }
        // Unlucky primes lose rank or shift pivots right; keep the primes
        // sharing the largest rank and the lexicographically first pivots.
        let best_rank = computed.iter().map(|(_, r)| r.rank()).max().unwrap_or(0);
        let best_pivots = computed
            .iter()
            .filter(|(_, r)| r.rank() == best_rank)
            .map(|(_, r)| r.pivots())
            .min()
            .unwrap_or_default();
        let agreeing: Vec<&(u64, SparseRref<ModP>)> =
            computed.iter().filter(|(_, r)| r.rank() == best_rank && r.pivots() == best_pivots).collect();
        if agreeing.len() < opts.min_primes {
            if computed.len() >= pool.len() {
                return Err(Error::DimensionDisagreement(
                    computed.iter().map(|(p, r)| (*p, r.width() - r.rank())).collect(),
                ));
            }
            want = computed.len() + (opts.min_primes - agreeing.len());
            continue;
        }
        let primes: Vec<u64> = agreeing.iter().map(|(p, _)| *p).collect();
        if let Some(lifted) = lift_kernel(block, &agreeing) {
            let ok = !opts.verify || lifted.iter().all(|(_, v)| block_annihilates(m, block, v));
            if ok {
                return Ok((lifted, primes));
            }
        }
        if computed.len() >= pool.len() {
            // Lifting never stabilised: solve this block directly.
            return Ok((solve_block_direct(m, block), primes));
        }
        want = (computed.len() * 2).min(pool.len());
    }
}

fn lift_kernel(block: &Block, agreeing: &[&(u64, SparseRref<ModP>)]) -> Option<Vec<(usize, SparseVec)>> {
    let primes: Vec<u64> = agreeing.iter().map(|(p, _)| *p).collect();
    let crt = Crt::new(&primes);
    // (pivot, free column) -> residues, one slot per prime.
    let mut table: BTreeMap<(usize, usize), Vec<u64>> = BTreeMap::new();
    for (k, (_, rref)) in agreeing.iter().enumerate() {
        for row in rref.pivot_rows() {
            for (f, v) in &row.rest {
                table.entry((row.pivot, *f)).or_insert_with(|| vec![0; primes.len()])[k] = *v;
            }
        }
    }
    let free = agreeing[0].1.free_columns();
    let mut index_of = BTreeMap::new();
    let mut vecs: Vec<SparseVec> = Vec::with_capacity(free.len());
    for (k, &f) in free.iter().enumerate() {
        index_of.insert(f, k);
        vecs.push(vec![(block.cols[f], Scalar::Q(Rational::one()))]);
    }
    for ((pivot, f), residues) in table {
        let u = Crt::combine(&residues, &primes);
        let q = rational_reconstruct(&u, crt.modulus())?;
        if !q.is_zero() {
            vecs[index_of[&f]].push((block.cols[pivot], Scalar::Q(-&q)));
        }
    }
    Some(
        free.into_iter()
            .zip(vecs)
            .map(|(f, mut v)| {
                v.sort_by_key(|e| e.0);
                (block.cols[f], v)
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    #[test]
    fn identity_has_trivial_kernel() {
        for policy in [Policy::Direct, Policy::MultiModular] {
            let r = nullspace(&SparseMatrix::identity(Field::Rationals, 5), policy).unwrap();
            assert_eq!(r.dim, 0);
        }
        assert_eq!(nullspace(&SparseMatrix::identity(Field::Prime(7), 5), Policy::Direct).unwrap().dim, 0);
    }

    #[test]
    fn single_row() {
        let m = SparseMatrix::from_triples(1, 2, Field::Rationals, vec![(0, 0, q(1)), (0, 1, q(1))]).unwrap();
        for policy in [Policy::Direct, Policy::MultiModular] {
            let r = nullspace(&m, policy).unwrap();
            assert_eq!(r.dim, 1);
            assert_eq!(r.basis, vec![vec![q(1), q(-1)]]);
            assert_eq!(r.certification, Certification::ExactVerified);
        }
    }

    #[test]
    fn zero_matrix_rank() {
        let m = SparseMatrix::from_triples(3, 4, Field::Rationals, vec![]).unwrap();
        assert_eq!(rank(&m).unwrap(), 0);
        assert_eq!(nullspace(&m, Policy::MultiModular).unwrap().dim, 4);
    }

    #[test]
    fn fractional_kernel_lifts() {
        // 3x - 7y = 0, 2z + 5w = 0 (two blocks) plus an untouched column
        let f = Field::Rationals;
        let m = SparseMatrix::from_triples(
            2,
            5,
            f,
            vec![(0, 0, q(3)), (0, 1, q(-7)), (1, 2, q(2)), (1, 4, q(5))],
        )
        .unwrap();
        let r = nullspace(&m, Policy::MultiModular).unwrap();
        assert_eq!(r.dim, 3);
        for v in &r.basis {
            assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
        assert_eq!(r.basis[0], vec![q(1), f.from_ratio(3, 7).unwrap(), q(0), q(0), q(0)]);
        assert_eq!(r.basis[1], vec![q(0), q(0), q(0), q(1), q(0)]);
        assert_eq!(r.basis[2], vec![q(0), q(0), q(1), q(0), f.from_ratio(-2, 5).unwrap()]);
        assert_eq!(r.primes_used.len(), 3);
    }

    #[test]
    fn prime_dividing_denominator_is_rejected() {
        let f = Field::Rationals;
        let m = SparseMatrix::from_triples(1, 1, f, vec![(0, 0, f.from_ratio(1, 7).unwrap())]).unwrap();
        let b = Blocks::of(&m);
        assert_eq!(rref_mod_p(&m, &b.blocks[0], 7).err(), Some(Error::PrimeDividesDenominator(7)));
    }

    #[test]
    fn large_primes_are_prime_and_distinct() {
        let ps = large_primes(16);
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }
}
