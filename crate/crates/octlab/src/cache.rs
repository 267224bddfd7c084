//! Versioned text cache of structure constants.
//!
//! ```text
//! format_version 1
//! n 2
//! sign plus
//! field q
//! dim 10
//! labels S11 S12 S22 A12.e1 ...
//! unit 1 0 1 0 ...
//! constants 64
//! 0 0 0 1
//! 0 1 1 1/2
//! ...
//! ```
//!
//! Quadruples `i j k c` are sorted lexicographically and scalars are written
//! canonically, so rebuilding a file reproduces it byte for byte. The `unit`
//! line is present only for the commutative family.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use octlab_core::algebra::{build_herm, AlgebraKind, HermBasis};
use octlab_core::{Field, Flavor, Scalar, Sign, StructureAlgebra};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

pub fn file_name(n: usize, sign: Sign, field: Field) -> String {
    let f = match field {
        Field::Rationals => "q".to_string(),
        Field::Prime(p) => format!("fp{p}"),
    };
    format!("herm_{}_n{n}_{f}.oct", sign.as_str())
}

pub fn path(dir: &Path, n: usize, sign: Sign, field: Field) -> PathBuf {
    dir.join(file_name(n, sign, field))
}

fn herm_params(a: &StructureAlgebra) -> Option<(usize, Sign)> {
    match a.kind() {
        AlgebraKind::Herm(sign, n) => Some((*n, *sign)),
        _ => None,
    }
}

pub fn render(a: &StructureAlgebra) -> Result<String, CliError> {
    let (n, sign) = herm_params(a).ok_or_else(|| CliError::Config(format!("{} is not cacheable", a.descriptor())))?;
    let mut s = String::new();
    let join = |v: &[Scalar]| v.iter().map(Scalar::to_canonical_string).collect::<Vec<_>>().join(" ");
    writeln!(s, "format_version {FORMAT_VERSION}").unwrap();
    writeln!(s, "n {n}").unwrap();
    writeln!(s, "sign {}", sign.as_str()).unwrap();
    writeln!(s, "field {}", a.field().descriptor()).unwrap();
    writeln!(s, "dim {}", a.dim()).unwrap();
    writeln!(s, "labels {}", a.labels().join(" ")).unwrap();
    if let Some(u) = a.unit() {
        writeln!(s, "unit {}", join(u)).unwrap();
    }
    let mut quads: Vec<(usize, usize, usize, &Scalar)> = a.constants().collect();
    quads.sort_by(|x, y| (x.0, x.1, x.2).cmp(&(y.0, y.1, y.2)));
    writeln!(s, "constants {}", quads.len()).unwrap();
    for (i, j, k, c) in quads {
        writeln!(s, "{i} {j} {k} {}", c.to_canonical_string()).unwrap();
    }
    Ok(s)
}

/// Parses a cache file and checks its header against the requested algebra.
/// The structure constants are re-validated by the algebra constructor
/// (flavor and unit), and the labels against the canonical basis.
pub fn parse(text: &str, n: usize, sign: Sign, field: Field) -> Result<StructureAlgebra, String> {
    let mut lines = text.lines();
    let mut header = |key: &str| -> Result<String, String> {
        let line = lines.next().ok_or_else(|| format!("missing {key}"))?;
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' ').or(if r.is_empty() { Some("") } else { None }))
            .map(str::to_string)
            .ok_or_else(|| format!("expected {key}, found {line:?}"))
    };
    let version = header("format_version")?;
    if version != FORMAT_VERSION.to_string() {
        return Err(format!("unsupported format version {version}"));
    }
    let expect = |key: &str, got: String, want: String| {
        if got == want {
            Ok(())
        } else {
            Err(format!("{key} is {got}, expected {want}"))
        }
    };
    expect("n", header("n")?, n.to_string())?;
    expect("sign", header("sign")?, sign.as_str().to_string())?;
    expect("field", header("field")?, field.descriptor())?;
    let dim: usize = header("dim")?.parse().map_err(|_| "bad dim".to_string())?;
    let basis = HermBasis::new(n, sign, field).map_err(|e| e.to_string())?;
    if dim != basis.dim() {
        return Err(format!("dim is {dim}, expected {}", basis.dim()));
    }
    let labels: Vec<String> = header("labels")?.split_whitespace().map(str::to_string).collect();
    if labels != basis.labels() {
        return Err("labels differ from the canonical basis".into());
    }
    let scalar = |t: &str| field.parse(t).map_err(|e| format!("scalar {t:?}: {e}"));
    let unit = match sign {
        Sign::Plus => Some(header("unit")?.split_whitespace().map(scalar).collect::<Result<Vec<_>, _>>()?),
        Sign::Minus => None,
    };
    let count: usize = header("constants")?.parse().map_err(|_| "bad constant count".to_string())?;
    let mut table = vec![Vec::new(); dim * dim];
    let mut previous = None;
    let mut seen = 0;
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [i, j, k, c] = parts[..] else { return Err(format!("bad constant line {line:?}")) };
        let idx = |t: &str| t.parse::<usize>().ok().filter(|&x| x < dim).ok_or_else(|| format!("bad index in {line:?}"));
        let key = (idx(i)?, idx(j)?, idx(k)?);
        if previous.is_some_and(|p| p >= key) {
            return Err(format!("constants not strictly sorted at {line:?}"));
        }
        previous = Some(key);
        table[key.0 * dim + key.1].push((key.2, scalar(c)?));
        seen += 1;
    }
    if seen != count {
        return Err(format!("{seen} constants, header says {count}"));
    }
    let flavor = match sign {
        Sign::Plus => Flavor::Commutative,
        Sign::Minus => Flavor::Anticommutative,
    };
    StructureAlgebra::new(AlgebraKind::Herm(sign, n), field, labels, table, flavor, unit).map_err(|e| e.to_string())
}

/// Builds the algebra and writes its cache file into `dir`.
pub fn build(dir: &Path, n: usize, sign: Sign, field: Field) -> Result<(PathBuf, StructureAlgebra), CliError> {
    let a = build_herm(n, sign, field).map_err(|e| CliError::Config(e.to_string()))?;
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let p = path(dir, n, sign, field);
    fs::write(&p, render(&a)?).map_err(|e| CliError::io(&p, e))?;
    Ok((p, a))
}

/// The cached algebra if its file exists, otherwise a fresh build that is
/// then cached.
pub fn load_or_build(dir: &Path, n: usize, sign: Sign, field: Field) -> Result<StructureAlgebra, CliError> {
    let p = path(dir, n, sign, field);
    match fs::read_to_string(&p) {
        Ok(text) => parse(&text, n, sign, field).map_err(|detail| CliError::Cache { path: p, detail }),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(build(dir, n, sign, field)?.1),
        Err(e) => Err(CliError::io(p, e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for sign in [Sign::Plus, Sign::Minus] {
            for field in [Field::Rationals, Field::Prime(7)] {
                let a = build_herm(2, sign, field).unwrap();
                let text = render(&a).unwrap();
                let b = parse(&text, 2, sign, field).unwrap();
                assert_eq!(a, b);
                assert_eq!(render(&b).unwrap(), text);
            }
        }
    }

    #[test]
    fn rejects_mismatched_or_corrupt_files() {
        let a = build_herm(1, Sign::Minus, Field::Rationals).unwrap();
        let text = render(&a).unwrap();
        assert!(parse(&text, 2, Sign::Minus, Field::Rationals).is_err());
        assert!(parse(&text, 1, Sign::Plus, Field::Rationals).is_err());
        assert!(parse(&text, 1, Sign::Minus, Field::Prime(7)).is_err());
        assert!(parse(&text.replace("format_version 1", "format_version 2"), 1, Sign::Minus, Field::Rationals).is_err());
        // a sign flip on one constant breaks anticommutativity
        let line = text.lines().find(|l| l.ends_with(" 2")).unwrap();
        let broken = text.replacen(line, &format!("{} -2", &line[..line.len() - 2]), 1);
        assert!(parse(&broken, 1, Sign::Minus, Field::Rationals).is_err());
        let truncated: String = text.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(parse(&truncated, 1, Sign::Minus, Field::Rationals).is_err());
    }
}
