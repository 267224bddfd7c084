use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Tag for records whose expected value does not come from a published
/// claim but from an independent computation or an elementary argument.
pub const DERIVED: &str = "derived";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Computed and recorded, nothing asserted.
    Info,
    /// Not run: inapplicable at this order or out of budget.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub expected: Option<Value>,
    pub computed: Value,
    pub verdict: Verdict,
    pub certification: String,
    pub ms: u64,
}

impl Record {
    /// A record asserting `computed == expected`.
    pub fn compare(id: impl Into<String>, anchor: &str, expected: Value, computed: Value, certification: &str) -> Self {
        let verdict = if expected == computed { Verdict::Pass } else { Verdict::Fail };
        Self::with(id, anchor, Some(expected), computed, verdict, certification)
    }

    /// A record whose pass condition is not plain equality of the two values.
    pub fn judged(id: impl Into<String>, anchor: &str, expected: Value, computed: Value, ok: bool, certification: &str) -> Self {
        let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        Self::with(id, anchor, Some(expected), computed, verdict, certification)
    }

    pub fn info(id: impl Into<String>, computed: Value, certification: &str) -> Self {
        Self::with(id, DERIVED, None, computed, Verdict::Info, certification)
    }

    pub fn skipped(id: impl Into<String>, reason: &str) -> Self {
        Self::with(id, DERIVED, None, Value::String(reason.into()), Verdict::Skipped, "none")
    }

    pub fn failed(id: impl Into<String>, anchor: &str, error: String) -> Self {
        Self::with(id, anchor, None, serde_json::json!({ "error": error }), Verdict::Fail, "none")
    }

    pub fn with(
        id: impl Into<String>,
        anchor: &str,
        expected: Option<Value>,
        computed: Value,
        verdict: Verdict,
        certification: &str,
    ) -> Self {
        Self { id: id.into(), anchor: anchor.into(), expected, computed, verdict, certification: certification.into(), ms: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: Value,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(config: Value, records: Vec<Record>) -> Self {
        Self { version: env!("CARGO_PKG_VERSION").to_string(), config, records }
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn first_failure(&self) -> Option<&Record> {
        self.records.iter().find(|r| r.verdict == Verdict::Fail)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    /// The report with every wall time zeroed, which is what repeated runs
    /// with one configuration reproduce exactly.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.records.iter_mut().for_each(|x| x.ms = 0);
        r
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let w = self.records.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &self.records {
            let v = match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Info => "info",
                Verdict::Skipped => "skip",
            };
            let computed = r.computed.to_string();
            let computed = if computed.len() > 60 { format!("{}...", &computed[..57]) } else { computed };
            writeln!(s, "{v}  {:w$}  {:>7} ms  {computed}", r.id, r.ms).unwrap();
        }
        let count = |v: Verdict| self.records.iter().filter(|r| r.verdict == v).count();
        writeln!(
            s,
            "{} records: {} pass, {} fail, {} info, {} skipped",
            self.records.len(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Info),
            count(Verdict::Skipped)
        )
        .unwrap();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn compare_sets_verdict() {
        assert_eq!(Record::compare("a", DERIVED, json!(3), json!(3), "exact").verdict, Verdict::Pass);
        assert_eq!(Record::compare("a", DERIVED, json!(3), json!(4), "exact").verdict, Verdict::Fail);
    }

    #[test]
    fn json_keys_are_stable() {
        let r = Report::new(json!({"n": 1}), vec![Record::compare("dims", "x", json!(7), json!(7), "exact")]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["config", "records", "version"]);
        let rec = v["records"][0].as_object().unwrap();
        for k in ["id", "anchor", "expected", "computed", "verdict", "certification", "ms"] {
            assert!(rec.contains_key(k), "{k}");
        }
        assert_eq!(rec["verdict"], "pass");
        let back: Report = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
