//! Irreducibility test for a matrix algebra over `F_p`, in the style of the
//! Parker / Holt–Rees meataxe.
//!
//! Pick a random element `θ` of the algebra generated by `gens` and an
//! irreducible factor `f` of its characteristic polynomial with
//! `dim ker f(θ) = deg f`. Spin a nonzero kernel vector under `gens`; a
//! proper result is an invariant subspace. Otherwise spin a kernel vector
//! of `f(θ)ᵀ` under the transposes; a proper result gives a proper
//! invariant subspace as its annihilator, and a full result proves
//! irreducibility.

use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::exactnum::{inv_mod, mul_mod};
use crate::linsolve::{DenseModP, ModP, SparseRref};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Irreducible,
    /// Basis of a proper nonzero invariant subspace.
    Reducible(Vec<Vec<u64>>),
    Inconclusive,
}

pub fn irreducibility<R: Rng + ?Sized>(gens: &[DenseModP], attempts: usize, rng: &mut R) -> Outcome {
    let Some(first) = gens.first() else { return Outcome::Inconclusive };
    let (d, p) = (first.rows(), first.modulus());
    if d == 0 {
        return Outcome::Inconclusive;
    }
    if d == 1 {
        return Outcome::Irreducible;
    }
    let transposed: Vec<DenseModP> = gens.iter().map(DenseModP::transpose).collect();
    for _ in 0..attempts {
        let theta = random_element(gens, rng);
        let chi = charpoly(&theta);
        for f in small_irreducible_factors(&chi, p, 4) {
            let ft = eval_poly(&f, &theta);
            let kernel = ft.nullspace();
            if kernel.len() != f.len() - 1 {
                continue;
            }
            let span = spin(&kernel[0], gens);
            if span.len() < d {
                return Outcome::Reducible(span);
            }
            let dual_kernel = ft.transpose().nullspace();
            let dual = spin(&dual_kernel[0], &transposed);
            if dual.len() < d {
                return Outcome::Reducible(annihilator(&dual, d, p));
            }
            return Outcome::Irreducible;
        }
    }
    Outcome::Inconclusive
}

fn random_element<R: Rng + ?Sized>(gens: &[DenseModP], rng: &mut R) -> DenseModP {
    let (d, p) = (gens[0].rows(), gens[0].modulus());
    let mut theta = DenseModP::zero(d, d, p);
    for g in gens {
        theta.add_scaled(rng.gen_range(0..p), g);
    }
    for _ in 0..3 {
        let a = &gens[rng.gen_range(0..gens.len())];
        let b = &gens[rng.gen_range(0..gens.len())];
        theta.add_scaled(rng.gen_range(1..p), &a.mul(b));
    }
    theta
}

/// Smallest subspace containing `v` and invariant under `gens`, as a list
/// of independent spanning vectors.
pub fn spin(v: &[u64], gens: &[DenseModP]) -> Vec<Vec<u64>> {
    let (d, p) = (v.len(), gens[0].modulus());
    let mut rref = SparseRref::new(ModP(p), d);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let sparse = |w: &[u64]| w.iter().enumerate().filter(|e| *e.1 != 0).map(|(c, &x)| (c, x)).collect::<Vec<_>>();
    if rref.insert(sparse(v)) {
        basis.push(v.to_vec());
    }
    let mut next = 0;
    while next < basis.len() && !rref.is_full() {
        let w = basis[next].clone();
        for g in gens {
            let gw = g.apply(&w);
            if rref.insert(sparse(&gw)) {
                basis.push(gw);
                if rref.is_full() {
                    break;
                }
            }
        }
        next += 1;
    }
    basis
}

fn annihilator(vectors: &[Vec<u64>], d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = DenseModP::zero(vectors.len(), d, p);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.set(i, j, x);
        }
    }
    m.nullspace()
}

/// Characteristic polynomial (coefficients lowest degree first, monic) via
/// reduction to upper Hessenberg form.
pub fn charpoly(m: &DenseModP) -> Vec<u64> {
    let n = m.rows();
    let p = m.modulus();
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let sub = |x: u64, y: u64| if x >= y { x - y } else { x + p - y };
    for c in 0..n.saturating_sub(2) {
        let Some(piv) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
        if piv != c + 1 {
            h.swap(piv, c + 1);
            for row in h.iter_mut() {
                row.swap(piv, c + 1);
            }
        }
        let inv = inv_mod(h[c + 1][c], p).expect("nonzero");
        for i in c + 2..n {
            let u = mul_mod(h[i][c], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul_mod(u, h[c + 1][j], p);
                h[i][j] = sub(h[i][j], t);
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[c + 1] = (row[c + 1] + t) % p;
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{i<j≤k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (e, &c) in prev.iter().enumerate() {
            next[e + 1] = (next[e + 1] + c) % p;
            next[e] = sub(next[e], mul_mod(c, h[k][k], p));
        }
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = mul_mod(t, h[i + 1][i], p);
            if t == 0 {
                break;
            }
            let f = mul_mod(h[i][k], t, p);
            if f == 0 {
                continue;
            }
            for (e, &c) in polys[i].iter().enumerate() {
                next[e] = sub(next[e], mul_mod(c, f, p));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

fn trim(a: &mut Vec<u64>) {
    while a.len() > 1 && *a.last().expect("nonempty") == 0 {
        a.pop();
    }
}

fn deg(a: &[u64]) -> usize {
    a.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn monic(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    let lead = *a.last().expect("nonempty");
    if lead == 0 {
        return a;
    }
    let inv = inv_mod(lead, p).expect("nonzero");
    a.iter_mut().for_each(|c| *c = mul_mod(*c, inv, p));
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = deg(b);
    let inv = inv_mod(b[db], p).expect("nonzero divisor");
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let f = mul_mod(r[dr], inv, p);
        for (i, &c) in b[..=db].iter().enumerate() {
            let t = mul_mod(f, c, p);
            let x = r[dr - db + i];
            r[dr - db + i] = if x >= t { x - t } else { x + p - t };
        }
        trim(&mut r);
    }
    r
}

fn poly_div(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = deg(b);
    let inv = inv_mod(b[db], p).expect("nonzero divisor");
    let mut q = vec![0u64; deg(&r).saturating_sub(db) + 1];
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let f = mul_mod(r[dr], inv, p);
        q[dr - db] = f;
        for (i, &c) in b[..=db].iter().enumerate() {
            let t = mul_mod(f, c, p);
            let x = r[dr - db + i];
            r[dr - db + i] = if x >= t { x - t } else { x + p - t };
        }
        trim(&mut r);
    }
    q
}

fn poly_mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    poly_rem(&out, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !is_zero(&y) {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(x, p)
}

fn poly_pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mul_mod(&result, &b, m, p);
        }
        b = poly_mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

fn eval_at(f: &[u64], x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Monic irreducible factors of `chi` of degree at most `max_deg` that the
/// distinct-degree split isolates, in increasing degree. Linear factors are
/// always found when `p` is small enough to search for roots directly.
pub fn small_irreducible_factors(chi: &[u64], p: u64, max_deg: usize) -> Vec<Vec<u64>> {
    let mut rest = monic(chi.to_vec(), p);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    for k in 1..=max_deg {
        if deg(&rest) < k {
            break;
        }
        h = poly_pow_mod(&h, p, &rest, p);
        let mut hx = h.clone();
        hx.resize(hx.len().max(2), 0);
        hx[1] = (hx[1] + p - 1) % p;
        let g = poly_gcd(&rest, &hx, p);
        let dg = deg(&g);
        if dg == 0 {
            continue;
        }
        if dg == k {
            out.push(g.clone());
        } else if k == 1 && p <= 100_000 {
            for r in 0..p {
                if eval_at(&g, r, p) == 0 {
                    out.push(vec![(p - r) % p, 1]);
                }
            }
        }
        loop {
            let c = poly_gcd(&rest, &g, p);
            if deg(&c) == 0 {
                break;
            }
            rest = poly_div(&rest, &c, p);
        }
        h = poly_rem(&h, &rest, p);
    }
    out
}

/// `f(M)` by Horner's rule.
pub fn eval_poly(f: &[u64], m: &DenseModP) -> DenseModP {
    let (n, p) = (m.rows(), m.modulus());
    let mut acc = DenseModP::zero(n, n, p);
    let id = DenseModP::identity(n, p);
    for &c in f.iter().rev() {
        acc = acc.mul(m);
        acc.add_scaled(c, &id);
    }
    acc
}
