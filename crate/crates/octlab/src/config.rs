use std::path::PathBuf;

use octlab_core::{Field, FieldKind, FieldSpec, Rational, Scalar, Sign};
use serde::Serialize;

use crate::error::CliError;

/// Largest order accepted at all.
pub const MAX_ORDER: usize = 8;
/// Largest order run without raising `max_n`.
pub const DEFAULT_CEILING: usize = 4;
pub const DEFAULT_PRIMES: [u64; 6] = [5, 7, 11, 13, 10007, 10009];
pub const DEFAULT_DELTAS: [&str; 7] = ["0", "1", "1/2", "-1", "2", "3", "-1/2"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignSel {
    Plus,
    Minus,
    Both,
}

impl SignSel {
    pub fn signs(self) -> Vec<Sign> {
        match self {
            SignSel::Plus => vec![Sign::Plus],
            SignSel::Minus => vec![Sign::Minus],
            SignSel::Both => vec![Sign::Plus, Sign::Minus],
        }
    }

    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "plus" | "+" => Ok(SignSel::Plus),
            "minus" | "-" => Ok(SignSel::Minus),
            "both" => Ok(SignSel::Both),
            _ => Err(CliError::Config(format!("sign must be plus, minus or both, got {s:?}"))),
        }
    }
}

/// `q` or `fp:<prime>`.
pub fn parse_field(s: &str) -> Result<FieldKind, CliError> {
    if s == "q" || s == "Q" {
        return Ok(FieldKind::Rationals);
    }
    let p = s
        .strip_prefix("fp:")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| CliError::Config(format!("field must be q or fp:<prime>, got {s:?}")))?;
    Ok(FieldKind::PrimeField(p))
}

/// Exact rationals only: `3`, `-1/2`. Decimals are refused rather than
/// rounded.
pub fn parse_delta(s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>().map_err(|_| CliError::Config(format!("delta must be an exact rational p/q, got {s:?}")))
}

pub fn parse_deltas(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(',').map(|t| parse_delta(t.trim())).collect()
}

pub fn parse_primes(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| CliError::Config(format!("bad prime {t:?}"))))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub n: usize,
    pub max_n: usize,
    pub sign: SignSel,
    pub field: FieldKind,
    pub exploratory_char3: bool,
    pub deltas: Vec<Rational>,
    pub primes: Vec<u64>,
    pub seed: u64,
    /// Random elements whose ideal closures are computed in the simplicity
    /// check.
    pub trials: usize,
    /// Random tuples per product formula.
    pub product_trials: usize,
    /// Random cases per octonion law.
    pub law_cases: usize,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub workers: usize,
    /// Wall-clock budget for a whole run, in seconds.
    pub budget_secs: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 2,
            max_n: DEFAULT_CEILING,
            sign: SignSel::Both,
            field: FieldKind::Rationals,
            exploratory_char3: false,
            deltas: DEFAULT_DELTAS.iter().map(|s| s.parse().expect("literal")).collect(),
            primes: DEFAULT_PRIMES.to_vec(),
            seed: 0x0c7a_0b5e,
            trials: 20,
            product_trials: 500,
            law_cases: 1000,
            cache_dir: None,
            out: None,
            workers: 1,
            budget_secs: None,
        }
    }
}

#[derive(Serialize)]
struct Echo<'a> {
    n: usize,
    max_n: usize,
    sign: SignSel,
    field: String,
    exploratory_char3: bool,
    deltas: Vec<String>,
    primes: &'a [u64],
    seed: u64,
    trials: usize,
    product_trials: usize,
    law_cases: usize,
    workers: usize,
}

impl RunConfig {
    fn spec(&self) -> FieldSpec {
        FieldSpec { kind: self.field, exploratory: self.exploratory_char3 }
    }

    /// Checks every setting and returns the ground field. Nothing is
    /// computed before this succeeds.
    pub fn validate(&self) -> Result<Field, CliError> {
        if self.max_n == 0 || self.max_n > MAX_ORDER {
            return Err(CliError::Config(format!("max-n must lie in 1..={MAX_ORDER}")));
        }
        if self.n == 0 || self.n > MAX_ORDER {
            return Err(CliError::Config(format!("n must lie in 1..={MAX_ORDER}, got {}", self.n)));
        }
        if self.n > self.max_n {
            return Err(CliError::Resource(format!("n = {} is above the ceiling {} (raise --max-n)", self.n, self.max_n)));
        }
        let field = Field::new(self.spec()).map_err(|e| CliError::Config(e.to_string()))?;
        if self.workers == 0 {
            return Err(CliError::Config("workers must be positive".into()));
        }
        for (i, d) in self.deltas.iter().enumerate() {
            if self.deltas[..i].contains(d) {
                return Err(CliError::Config(format!("delta {d} listed twice")));
            }
            field.from_rational(d).map_err(|e| CliError::Config(format!("delta {d}: {e}")))?;
        }
        let mut seen = Vec::new();
        for &p in &self.primes {
            Field::new(FieldSpec::prime(p)).map_err(|e| CliError::Config(format!("prime pool: {e}")))?;
            if seen.contains(&p) {
                return Err(CliError::Config(format!("prime {p} listed twice")));
            }
            seen.push(p);
        }
        if self.primes.len() < 3 {
            return Err(CliError::Config("the prime pool needs at least three primes".into()));
        }
        Ok(field)
    }

    pub fn deltas_in(&self, field: Field) -> Vec<Scalar> {
        self.deltas.iter().map(|d| field.from_rational(d).expect("validated")).collect()
    }

    pub fn echo(&self) -> serde_json::Value {
        let field = match self.field {
            FieldKind::Rationals => "q".to_string(),
            FieldKind::PrimeField(p) => format!("fp:{p}"),
        };
        serde_json::to_value(Echo {
            n: self.n,
            max_n: self.max_n,
            sign: self.sign,
            field,
            exploratory_char3: self.exploratory_char3,
            deltas: self.deltas.iter().map(ToString::to_string).collect(),
            primes: &self.primes,
            seed: self.seed,
            trials: self.trials,
            product_trials: self.product_trials,
            law_cases: self.law_cases,
            workers: self.workers,
        })
        .expect("plain data")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deltas_must_be_exact() {
        assert_eq!(parse_delta("-1/2").unwrap(), Rational::new(-1, 2));
        assert!(parse_delta("0.5").is_err());
        assert!(parse_delta("1e3").is_err());
        assert!(parse_delta("1/0").is_err());
        assert_eq!(parse_deltas("1, 1/2,-1").unwrap().len(), 3);
    }

    #[test]
    fn fields() {
        assert_eq!(parse_field("q").unwrap(), FieldKind::Rationals);
        assert_eq!(parse_field("fp:7").unwrap(), FieldKind::PrimeField(7));
        assert!(parse_field("fp:x").is_err());
        assert!(parse_field("r").is_err());
    }

    #[test]
    fn validation() {
        let ok = RunConfig::default();
        assert_eq!(ok.validate().unwrap(), Field::Rationals);

        let high = RunConfig { n: 5, ..RunConfig::default() };
        assert!(matches!(high.validate(), Err(CliError::Resource(_))));
        let raised = RunConfig { n: 5, max_n: 5, ..RunConfig::default() };
        assert!(raised.validate().is_ok());
        assert!(matches!(RunConfig { n: 9, max_n: 8, ..RunConfig::default() }.validate(), Err(CliError::Config(_))));

        for field in [FieldKind::PrimeField(2), FieldKind::PrimeField(3), FieldKind::PrimeField(15)] {
            assert!(matches!(RunConfig { field, ..RunConfig::default() }.validate(), Err(CliError::Config(_))));
        }
        let char3 = RunConfig { field: FieldKind::PrimeField(3), exploratory_char3: true, ..RunConfig::default() };
        assert!(char3.validate().is_ok());

        assert!(RunConfig { primes: vec![5, 7], ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { primes: vec![5, 7, 7], ..RunConfig::default() }.validate().is_err());
        assert!(RunConfig { primes: vec![5, 7, 9], ..RunConfig::default() }.validate().is_err());
        let dup = RunConfig { deltas: vec![Rational::one(), Rational::new(2, 2)], ..RunConfig::default() };
        assert!(dup.validate().is_err());
    }
}
