use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::exactnum::{Field, Scalar};

/// Sparse matrix in compressed-row form. Entries within a row are sorted by
/// column and never zero, so iterating rows yields the canonical sorted
/// coordinate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<Scalar>,
}

impl SparseMatrix {
    /// Builds from arbitrary coordinate triples: duplicates are summed, zeros
    /// dropped.
    pub fn from_triples(rows: usize, cols: usize, field: Field, triples: Vec<(usize, usize, Scalar)>) -> Result<Self> {
        let mut builder = SparseBuilder::new(cols, field);
        let mut by_row: Vec<Vec<(usize, Scalar)>> = (0..rows).map(|_| Vec::new()).collect();
        for (r, c, v) in triples {
            if r >= rows || c >= cols {
                return Err(Error::InvalidArgument(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch);
            }
            by_row[r].push((c, v));
        }
        for row in by_row {
            builder.push_row_keep_empty(row);
        }
        Ok(builder.finish())
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_triples(n, n, field, (0..n).map(|i| (i, i, field.one())).collect()).expect("in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        let range = self.row_ptr[r]..self.row_ptr[r + 1];
        self.col_idx[range.clone()].iter().map(|&c| c as usize).zip(&self.values[range])
    }

    pub fn row_len(&self, r: usize) -> usize {
        self.row_ptr[r + 1] - self.row_ptr[r]
    }

    /// Sorted `(row, col, value)` triples.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    /// `M v`, exactly.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r).fold(self.field.zero(), |acc, (c, a)| if v[c].is_zero() { acc } else { acc + a * &v[c] })
            })
            .collect()
    }

    /// Whether `M v = 0` exactly, checking only rows that touch the support of `v`.
    pub fn annihilates(&self, v: &[Scalar]) -> bool {
        (0..self.rows).all(|r| {
            let mut acc = self.field.zero();
            let mut touched = false;
            for (c, a) in self.row(r) {
                if !v[c].is_zero() {
                    acc += &(a * &v[c]);
                    touched = true;
                }
            }
            !touched || acc.is_zero()
        })
    }

    /// Versioned sparse-triple text dump.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        out.push_str("octlab-sparse-v1\n");
        let _ = writeln!(out, "{} {} {}", self.rows, self.cols, self.field.descriptor());
        for (r, c, v) in self.triples() {
            let _ = writeln!(out, "{r} {c} {v}");
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let bad = |msg: &str| Error::Parse(format!("sparse dump: {msg}"));
        if lines.next().map(str::trim) != Some("octlab-sparse-v1") {
            return Err(bad("missing header"));
        }
        let dims: Vec<&str> = lines.next().ok_or_else(|| bad("missing size line"))?.split_whitespace().collect();
        if dims.len() != 3 {
            return Err(bad("size line needs rows, cols, field"));
        }
        let rows: usize = dims[0].parse().map_err(|_| bad("rows"))?;
        let cols: usize = dims[1].parse().map_err(|_| bad("cols"))?;
        let field = parse_field_descriptor(dims[2])?;
        let mut triples = Vec::new();
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(bad(line));
            }
            let r: usize = parts[0].parse().map_err(|_| bad(line))?;
            let c: usize = parts[1].parse().map_err(|_| bad(line))?;
            triples.push((r, c, field.parse(parts[2])?));
        }
        Self::from_triples(rows, cols, field, triples)
    }
}

/// Parses `q` or `fp:<prime>`. Characteristic policy is enforced.
pub fn parse_field_descriptor(s: &str) -> Result<Field> {
    use crate::exactnum::FieldSpec;
    let s = s.trim();
    if s == "q" || s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::Parse(format!("field descriptor {s:?}: expected q or fp:<prime>")))?;
    Field::new(FieldSpec::prime(p))
}

/// Row-at-a-time assembly with optional removal of redundant rows.
#[derive(Debug)]
pub struct SparseBuilder {
    cols: usize,
    field: Field,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    values: Vec<Scalar>,
}

impl SparseBuilder {
    pub fn new(cols: usize, field: Field) -> Self {
        assert!(cols <= u32::MAX as usize);
        Self { cols, field, row_ptr: alloc::vec![0], col_idx: Vec::new(), values: Vec::new() }
    }

    fn canonical_row(&self, mut entries: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
        entries.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            debug_assert!(c < self.cols);
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += &v,
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !v.is_zero());
        merged
    }

    fn push_canonical(&mut self, row: Vec<(usize, Scalar)>) {
        for (c, v) in row {
            self.col_idx.push(c as u32);
            self.values.push(v);
        }
        self.row_ptr.push(self.col_idx.len());
    }

    /// Adds a row; all-zero rows are skipped.
    pub fn push_row(&mut self, entries: Vec<(usize, Scalar)>) {
        let row = self.canonical_row(entries);
        if !row.is_empty() {
            self.push_canonical(row);
        }
    }

    fn push_row_keep_empty(&mut self, entries: Vec<(usize, Scalar)>) {
        let row = self.canonical_row(entries);
        self.push_canonical(row);
    }

    pub fn rows(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn finish(self) -> SparseMatrix {
        SparseMatrix {
            rows: self.row_ptr.len() - 1,
            cols: self.cols,
            field: self.field,
            row_ptr: self.row_ptr,
            col_idx: self.col_idx,
            values: self.values,
        }
    }

    /// Finishes after scaling every row to a leading coefficient of 1 and
    /// removing duplicates. Row order of the result is canonical (sorted).
    pub fn finish_dedup(self) -> SparseMatrix {
        let field = self.field;
        let cols = self.cols;
        let m = self.finish();
        let mut rows: Vec<Vec<(u32, Scalar)>> = (0..m.rows)
            .map(|r| {
                let mut it = m.row(r);
                let Some((_, lead)) = it.next() else { return Vec::new() };
                let inv = lead.inv().expect("stored entries are nonzero");
                m.row(r).map(|(c, v)| (c as u32, v * &inv)).collect()
            })
            .filter(|r: &Vec<(u32, Scalar)>| !r.is_empty())
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let mut out = SparseBuilder::new(cols, field);
        for row in rows {
            out.push_canonical(row.into_iter().map(|(c, v)| (c as usize, v)).collect());
        }
        out.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_are_canonical() {
        let f = Field::Rationals;
        let m = SparseMatrix::from_triples(
            2,
            3,
            f,
            alloc::vec![(1, 2, f.one()), (0, 1, f.one()), (0, 1, -f.one()), (0, 0, f.from_i64(3)), (1, 0, f.one())],
        )
        .unwrap();
        let t: Vec<(usize, usize, String)> = m.triples().map(|(r, c, v)| (r, c, v.to_string())).collect();
        assert_eq!(t, alloc::vec![(0, 0, "3".into()), (1, 0, "1".into()), (1, 2, "1".into())]);
        assert!(SparseMatrix::from_triples(1, 1, f, alloc::vec![(0, 1, f.one())]).is_err());
    }

    #[test]
    fn dump_roundtrip() {
        let f = Field::Prime(7);
        let m = SparseMatrix::from_triples(3, 4, f, alloc::vec![(0, 3, f.from_i64(5)), (2, 1, f.from_i64(6))]).unwrap();
        let text = m.to_dump();
        assert_eq!(text, "octlab-sparse-v1\n3 4 fp:7\n0 3 5\n2 1 6\n");
        assert_eq!(SparseMatrix::from_dump(&text).unwrap(), m);
    }

    #[test]
    fn dedup_removes_scalar_multiples() {
        let f = Field::Rationals;
        let mut b = SparseBuilder::new(3, f);
        b.push_row(alloc::vec![(0, f.from_i64(2)), (2, f.from_i64(4))]);
        b.push_row(alloc::vec![(0, f.from_i64(-1)), (2, f.from_i64(-2))]);
        b.push_row(alloc::vec![(1, f.zero())]);
        b.push_row(alloc::vec![(1, f.from_i64(3))]);
        let m = b.finish_dedup();
        assert_eq!(m.rows(), 2);
    }
}
