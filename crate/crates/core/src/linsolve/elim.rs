//! Incremental sparse reduced row echelon form.
//!
//! Rows are inserted one at a time. Each stored pivot row is kept fully
//! reduced: it is zero left of its pivot, `1` at the pivot, and zero at every
//! other pivot column, so its only off-pivot entries sit in free columns.
//! The pivot of a new row is its leading nonzero column, which makes the
//! final echelon form the unique RREF of the row space regardless of the
//! order rows arrive in.

use alloc::vec;
use alloc::vec::Vec;

use crate::exactnum::{inv_mod, mul_mod, Rational};

/// Arithmetic needed by the eliminator.
pub trait ElimArith {
    type E: Clone + PartialEq + core::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn is_zero(&self, x: &Self::E) -> bool;
    fn inv(&self, x: &Self::E) -> Self::E;
    fn mul(&self, x: &Self::E, y: &Self::E) -> Self::E;
    fn neg(&self, x: &Self::E) -> Self::E;
    /// `x - f*y`
    fn sub_mul(&self, x: &Self::E, f: &Self::E, y: &Self::E) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub struct ModP(pub u64);

impl ElimArith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.0).expect("nonzero residue")
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.0)
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.0 - x
        }
    }
    #[inline]
    fn sub_mul(&self, x: &u64, f: &u64, y: &u64) -> u64 {
        let t = mul_mod(*f, *y, self.0);
        if *x >= t {
            x - t
        } else {
            x + self.0 - t
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QArith;

impl ElimArith for QArith {
    type E = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn add(&self, x: &Rational, y: &Rational) -> Rational {
        x + y
    }
    fn is_zero(&self, x: &Rational) -> bool {
        x.is_zero()
    }
    fn inv(&self, x: &Rational) -> Rational {
        x.recip().expect("nonzero rational")
    }
    fn mul(&self, x: &Rational, y: &Rational) -> Rational {
        x * y
    }
    fn neg(&self, x: &Rational) -> Rational {
        -x
    }
    fn sub_mul(&self, x: &Rational, f: &Rational, y: &Rational) -> Rational {
        x - &(f * y)
    }
}

/// A stored pivot row: its pivot column (coefficient 1, implicit) and its
/// remaining nonzero entries, all in free columns, sorted by column.
#[derive(Clone, Debug)]
pub struct PivotRow<E> {
    pub pivot: usize,
    pub rest: Vec<(usize, E)>,
}

#[derive(Debug)]
pub struct SparseRref<A: ElimArith> {
    arith: A,
    width: usize,
    /// `row_of[c]` is the index into `rows` of the pivot row for column `c`.
    row_of: Vec<Option<usize>>,
    rows: Vec<PivotRow<A::E>>,
    scratch: Vec<A::E>,
    mark: Vec<bool>,
    touched: Vec<usize>,
}

impl<A: ElimArith> SparseRref<A> {
    pub fn new(arith: A, width: usize) -> Self {
        let zero = arith.zero();
        Self {
            arith,
            width,
            row_of: vec![None; width],
            rows: Vec::new(),
            scratch: vec![zero; width],
            mark: vec![false; width],
            touched: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    fn touch(&mut self, c: usize) {
        if !self.mark[c] {
            self.mark[c] = true;
            self.touched.push(c);
        }
    }

    /// Reduces `entries` (column, value) against the current pivots and, if
    /// anything survives, adds it as a new pivot row. Returns whether the
    /// rank grew.
    pub fn insert(&mut self, entries: impl IntoIterator<Item = (usize, A::E)>) -> bool {
        if self.is_full() {
            return false;
        }
        let mut pivot_hits: Vec<(usize, A::E)> = Vec::new();
        for (c, v) in entries {
            if self.arith.is_zero(&v) {
                continue;
            }
            if self.row_of[c].is_some() {
                pivot_hits.push((c, v));
            } else {
                self.touch(c);
                self.scratch[c] = self.arith.add(&self.scratch[c], &v);
            }
        }
        // Pivot rows only carry free-column entries, so subtracting them never
        // reintroduces a pivot column.
        for (c, f) in pivot_hits {
            let r = self.row_of[c].expect("pivot");
            for k in 0..self.rows[r].rest.len() {
                let col = self.rows[r].rest[k].0;
                self.touch(col);
                let y = &self.rows[r].rest[k].1;
                self.scratch[col] = self.arith.sub_mul(&self.scratch[col], &f, y);
            }
        }
        let mut touched = core::mem::take(&mut self.touched);
        touched.sort_unstable();
        let mut new_row: Vec<(usize, A::E)> = Vec::new();
        for &c in &touched {
            self.mark[c] = false;
            let v = core::mem::replace(&mut self.scratch[c], self.arith.zero());
            if !self.arith.is_zero(&v) {
                new_row.push((c, v));
            }
        }
        touched.clear();
        self.touched = touched;
        let Some((pivot, lead)) = new_row.first().cloned() else {
            return false;
        };
        let inv = self.arith.inv(&lead);
        let rest: Vec<(usize, A::E)> = new_row[1..].iter().map(|(c, v)| (*c, self.arith.mul(v, &inv))).collect();
        // Clear the new pivot column from existing rows.
        for row in self.rows.iter_mut() {
            let Ok(pos) = row.rest.binary_search_by_key(&pivot, |e| e.0) else { continue };
            let f = row.rest.remove(pos).1;
            row.rest = merge_sub(&self.arith, &row.rest, &f, &rest);
        }
        self.row_of[pivot] = Some(self.rows.len());
        self.rows.push(PivotRow { pivot, rest });
        true
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.pivot).collect();
        p.sort_unstable();
        p
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.width).filter(|&c| self.row_of[c].is_none()).collect()
    }

    pub fn pivot_rows(&self) -> &[PivotRow<A::E>] {
        &self.rows
    }

    /// Canonical kernel basis: one vector per free column `f`, with `1` at
    /// `f` and `-R[c][f]` at each pivot column `c`. Returned sparse, in order
    /// of increasing free column.
    pub fn kernel(&self) -> Vec<(usize, Vec<(usize, A::E)>)> {
        let free = self.free_columns();
        let mut index_of = vec![usize::MAX; self.width];
        for (k, &f) in free.iter().enumerate() {
            index_of[f] = k;
        }
        let one = self.arith.one();
        let mut vecs: Vec<Vec<(usize, A::E)>> = free.iter().map(|&f| vec![(f, one.clone())]).collect();
        for row in &self.rows {
            for (f, v) in &row.rest {
                vecs[index_of[*f]].push((row.pivot, self.arith.neg(v)));
            }
        }
        free.into_iter()
            .zip(vecs)
            .map(|(f, mut v)| {
                v.sort_by_key(|e| e.0);
                (f, v)
            })
            .collect()
    }
}

fn merge_sub<A: ElimArith>(arith: &A, a: &[(usize, A::E)], f: &A::E, b: &[(usize, A::E)]) -> Vec<(usize, A::E)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let zero = arith.zero();
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = arith.sub_mul(&zero, f, &b[j].1);
            out.push((cb, v));
            j += 1;
        } else {
            let v = arith.sub_mul(&a[i].1, f, &b[j].1);
            if !arith.is_zero(&v) {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
