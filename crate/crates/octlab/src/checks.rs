//! The named checks, their expected values, and the scheduler that runs
//! them into an ordered report.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use octlab_core::algebra::{build_herm, verify_product_formulas};
use octlab_core::deltader::{
    delta_der_space, delta_scan, gl_cross_checks, half_der_elements, half_derivations_via_elements, known_derivations,
    lemma_xdm_space, DerivationSpace,
};
use octlab_core::forms::{assoc_form_space, form_match, trace_form_block_mismatch, trace_form_gram, killing_restriction_check};
use octlab_core::laws::check_octonion_laws;
use octlab_core::structure::{centroid, certify_simple, identity_check, lemma_kernels, Identity, IdentityOutcome, Subspace, Verdict as Simple};
use octlab_core::{Field, Scalar, Sign, StructureAlgebra};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cache;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::report::{Record, Report, Verdict, DERIVED};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Check {
    Dims,
    Octonion,
    Products,
    Simplicity,
    Centroid,
    Lemmas,
    Identities,
    Derivations,
    Known,
    Scan,
    Gl,
    Forms,
    Killing,
}

impl Check {
    /// Every check, in the order a full run schedules them.
    pub const ALL: [Check; 13] = [
        Check::Dims,
        Check::Octonion,
        Check::Products,
        Check::Simplicity,
        Check::Derivations,
        Check::Known,
        Check::Scan,
        Check::Gl,
        Check::Lemmas,
        Check::Centroid,
        Check::Identities,
        Check::Forms,
        Check::Killing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Dims => "dims",
            Check::Octonion => "octonion",
            Check::Products => "products",
            Check::Simplicity => "simplicity",
            Check::Centroid => "centroid",
            Check::Lemmas => "lemmas",
            Check::Identities => "identities",
            Check::Derivations => "derivations",
            Check::Known => "known",
            Check::Scan => "scan",
            Check::Gl => "gl",
            Check::Forms => "forms",
            Check::Killing => "killing",
        }
    }

    pub fn parse(s: &str) -> Result<Vec<Check>, CliError> {
        if s == "full-suite" {
            return Ok(Check::ALL.to_vec());
        }
        Check::ALL
            .iter()
            .find(|c| c.name() == s)
            .map(|c| vec![*c])
            .ok_or_else(|| CliError::Config(format!("unknown check {s:?}")))
    }

    /// Whether the check runs once per sign or once per order.
    fn per_sign(self) -> bool {
        !matches!(self, Check::Octonion | Check::Products | Check::Lemmas | Check::Gl | Check::Killing)
    }

    /// Whether the check depends on the order at all.
    fn per_order(self) -> bool {
        self != Check::Octonion
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Task {
    pub check: Check,
    pub n: usize,
    pub sign: Option<Sign>,
}

impl Task {
    fn seed(&self, base: u64) -> u64 {
        let check = Check::ALL.iter().position(|c| *c == self.check).unwrap_or(0) as u64;
        let sign = match self.sign {
            None => 0,
            Some(Sign::Plus) => 1,
            Some(Sign::Minus) => 2,
        };
        base.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (check << 40 | (self.n as u64) << 8 | sign)
    }

    fn prefix(&self) -> String {
        match (self.check.per_order(), self.sign) {
            (false, _) => self.check.name().to_string(),
            (true, None) => format!("{}/n{}", self.check.name(), self.n),
            (true, Some(s)) => format!("{}/{}/n{}", self.check.name(), s.as_str(), self.n),
        }
    }
}

/// Tasks for `checks` over `orders` and `signs`, ordered by check, then
/// order, then sign.
pub fn plan(checks: &[Check], orders: &[usize], signs: &[Sign]) -> Vec<Task> {
    let mut out = Vec::new();
    for &check in checks {
        if !check.per_order() {
            out.push(Task { check, n: 0, sign: None });
            continue;
        }
        for &n in orders {
            if check.per_sign() {
                out.extend(signs.iter().map(|&s| Task { check, n, sign: Some(s) }));
            } else if check != Check::Killing || signs.contains(&Sign::Minus) {
                out.push(Task { check, n, sign: None });
            }
        }
    }
    out
}

enum Fail {
    Cli(CliError),
    Core(octlab_core::Error),
}

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        Fail::Cli(e)
    }
}

impl From<octlab_core::Error> for Fail {
    fn from(e: octlab_core::Error) -> Self {
        Fail::Core(e)
    }
}

type Algebras = HashMap<(usize, Sign), Arc<StructureAlgebra>>;

/// Shared state of one run: the validated configuration and every algebra
/// and derivation space computed so far.
pub struct Context {
    pub cfg: RunConfig,
    pub field: Field,
    algebras: Mutex<Algebras>,
    der1: Mutex<HashMap<(usize, Sign), Arc<DerivationSpace>>>,
}

impl Context {
    pub fn new(cfg: RunConfig) -> Result<Self, CliError> {
        let field = cfg.validate()?;
        Ok(Self { cfg, field, algebras: Mutex::default(), der1: Mutex::default() })
    }

    pub fn algebra(&self, n: usize, sign: Sign) -> Result<Arc<StructureAlgebra>, CliError> {
        if let Some(a) = self.algebras.lock().unwrap().get(&(n, sign)) {
            return Ok(a.clone());
        }
        let a = match &self.cfg.cache_dir {
            Some(dir) => cache::load_or_build(dir, n, sign, self.field)?,
            None => build_herm(n, sign, self.field).map_err(|e| CliError::Config(e.to_string()))?,
        };
        Ok(self.algebras.lock().unwrap().entry((n, sign)).or_insert_with(|| Arc::new(a)).clone())
    }

    fn der1(&self, n: usize, sign: Sign) -> Result<Arc<DerivationSpace>, Fail> {
        if let Some(d) = self.der1.lock().unwrap().get(&(n, sign)) {
            return Ok(d.clone());
        }
        let a = self.algebra(n, sign)?;
        let d = delta_der_space(&a, &self.field.one())?;
        Ok(self.der1.lock().unwrap().entry((n, sign)).or_insert_with(|| Arc::new(d)).clone())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_millis() as u64)
}

fn ms(mut r: Record, ms: u64) -> Record {
    r.ms = ms;
    r
}

/// `dim Der_1` where the claim is published, otherwise `None`.
pub fn expected_der1(n: usize, sign: Sign) -> Option<usize> {
    let g2_so = 14 + n * (n - 1) / 2;
    match (sign, n) {
        (Sign::Minus, _) => Some(g2_so),
        (Sign::Plus, 3) => Some(52),
        (Sign::Plus, n) if n >= 4 => Some(g2_so),
        _ => None,
    }
}

pub fn expected_dim(n: usize, sign: Sign) -> usize {
    match sign {
        Sign::Plus => 4 * n * n - 3 * n,
        Sign::Minus => 4 * n * n + 3 * n,
    }
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

fn run_task(ctx: &Context, task: &Task) -> Result<Vec<Record>, Fail> {
    let f = ctx.field;
    let cfg = &ctx.cfg;
    let n = task.n;
    let id = task.prefix();
    let mut rng = ChaCha8Rng::seed_from_u64(task.seed(cfg.seed));
    let mut out = Vec::new();
    match task.check {
        Check::Dims => {
            let sign = task.sign.expect("per sign");
            let (a, t) = timed(|| ctx.algebra(n, sign));
            let a = a?;
            let want = expected_dim(n, sign);
            out.push(ms(
                Record::compare(
                    id,
                    "dimension formulas 4n^2 - 3n and 4n^2 + 3n",
                    json!({ "dim": want, "labels": want }),
                    json!({ "dim": a.dim(), "labels": a.labels().len() }),
                    "exact",
                ),
                t,
            ));
        }
        Check::Octonion => {
            let (checks, t) = timed(|| check_octonion_laws(f, cfg.law_cases, &mut rng));
            match checks {
                Ok(checks) => {
                    for c in checks {
                        out.push(ms(
                            Record::compare(
                                format!("{id}/{}", c.name),
                                "octonion quadratic law, polar norm and basis properties",
                                json!({ "holds": true }),
                                json!({ "holds": true }),
                                &format!("exact on {} random cases", c.cases),
                            ),
                            t,
                        ));
                    }
                }
                Err(e) => out.push(ms(Record::failed(id, "octonion laws", e.to_string()), t)),
            }
        }
        Check::Products => {
            if n < 2 {
                out.push(Record::skipped(id, "product formulas need n >= 2"));
                return Ok(out);
            }
            let (rep, t) = timed(|| verify_product_formulas(n, f, cfg.product_trials, &mut rng));
            match rep {
                Ok(rep) => {
                    for c in &rep.checks {
                        out.push(ms(
                            Record::compare(
                                format!("{id}/{}", c.name),
                                "product rules of sym^+ and sym^- in tensor form",
                                json!({ "holds": true }),
                                json!({ "holds": true }),
                                &format!("exact on {} random tuples", c.cases),
                            ),
                            t,
                        ));
                    }
                    out.push(Record::info(
                        format!("{id}/printed-jordan-form"),
                        json!({
                            "printed": "N(a,b)(x∘y)⊗1 + ½[x,y]⊗[a,b]",
                            "equals_twice_the_product": rep.printed_jordan_formula_off_by_two,
                            "corrected": "½N(a,b)(x∘y)⊗1 + ¼[x,y]⊗[a,b]",
                        }),
                        "exact",
                    ));
                }
                Err(e) => out.push(ms(Record::failed(id, "product rules", e.to_string()), t)),
            }
        }
        Check::Simplicity => {
            let a = ctx.algebra(n, task.sign.expect("per sign"))?;
            let (cert, t) = timed(|| certify_simple(&a, cfg.trials, &cfg.primes, &mut rng));
            let cert = cert?;
            let modular: serde_json::Map<String, Value> =
                cert.modular.iter().map(|(p, v)| (p.to_string(), json!(v.as_str()))).collect();
            let computed = json!({ "verdict": cert.verdict.as_str(), "modular": modular });
            let (expected, ok) = match f {
                Field::Rationals => {
                    let all: serde_json::Map<String, Value> =
                        cfg.primes.iter().map(|p| (p.to_string(), json!("SimpleCertified"))).collect();
                    let ok = cert.verdict == Simple::SimpleEvidence
                        && cert.modular.len() >= 3
                        && cert.modular.iter().all(|(_, v)| *v == Simple::SimpleCertified);
                    (json!({ "verdict": "SimpleEvidence", "modular": all }), ok)
                }
                Field::Prime(p) => {
                    let ok = cert.verdict == Simple::SimpleCertified;
                    (json!({ "verdict": "SimpleCertified", "modular": { p.to_string(): "SimpleCertified" } }), ok)
                }
            };
            let closures = a.dim() + cfg.trials;
            let how = match f {
                Field::Rationals => format!("full ideal closure of {closures} elements over Q, irreducibility test mod each prime"),
                Field::Prime(_) => "irreducibility test".to_string(),
            };
            out.push(ms(Record::judged(id, "simplicity theorem", expected, computed, ok, &how), t));
        }
        Check::Centroid => {
            let a = ctx.algebra(n, task.sign.expect("per sign"))?;
            let (c, t) = timed(|| centroid(&a));
            let c = c?;
            out.push(ms(
                Record::compare(id, "central simplicity corollary", json!(1), json!(c.dim), c.solution.certification.as_str()),
                t,
            ));
        }
        Check::Lemmas => {
            if n < 2 {
                out.push(Record::skipped(id, "matrix lemmas need n >= 2"));
                return Ok(out);
            }
            let (k, t) = timed(|| lemma_kernels(n, f));
            let k = k?;
            let e = Subspace::span(f, k.identity.len(), [k.identity.as_slice()])?;
            out.push(ms(
                Record::compare(
                    format!("{id}/kernels"),
                    "kernel lemmas on M_n(K)",
                    json!({ "x∘M^- = 0": 0, "[m,M^-] = 0": "KE", "[m,M^+] = 0": "KE" }),
                    json!({
                        "x∘M^- = 0": k.skew_jordan_kernel.dim(),
                        "[m,M^-] = 0": if k.sym_vs_skew_kernel == e { json!("KE") } else { json!(k.sym_vs_skew_kernel.dim()) },
                        "[m,M^+] = 0": if k.sym_vs_sym_kernel == e { json!("KE") } else { json!(k.sym_vs_sym_kernel.dim()) },
                    }),
                    "ExactVerified",
                ),
                t,
            ));
            for delta in [f.half(), -f.one()] {
                let (x, t) = timed(|| lemma_xdm_space(n, &delta, f));
                let x = x?;
                out.push(ms(
                    Record::judged(
                        format!("{id}/xdm/{delta}"),
                        "commutator lemma: the image of D lies in KE",
                        json!({ "image_in_KE": true }),
                        json!({ "image_in_KE": x.image_in_identity_span, "solutions": x.space.dim() }),
                        x.image_in_identity_span,
                        "ExactVerified",
                    ),
                    t,
                ));
            }
            if cfg.sign.signs().contains(&Sign::Plus) {
                let a = ctx.algebra(n, Sign::Plus)?;
                let (h, t) = timed(|| half_der_elements(&a));
                let h = h?;
                let unit = a.unit().expect("unital").to_vec();
                let ok = h.dim() == 1 && h.contains(&unit);
                out.push(ms(
                    Record::judged(
                        format!("{id}/half-der-elements"),
                        "elements with 2(xy)a = (xa)y + (ya)x are multiples of the unit",
                        json!({ "dim": 1, "contains_unit": true }),
                        json!({ "dim": h.dim(), "contains_unit": h.contains(&unit) }),
                        ok,
                        "ExactVerified",
                    ),
                    t,
                ));
            }
        }
        Check::Identities => {
            let sign = task.sign.expect("per sign");
            let a = ctx.algebra(n, sign)?;
            let cases: Vec<(Identity, Option<bool>, &str)> = match sign {
                Sign::Plus if n <= 3 => vec![(Identity::Jordan, Some(true), "Jordan for n <= 3")],
                Sign::Plus => vec![(Identity::Jordan, Some(false), "not Jordan for n >= 4")],
                Sign::Minus if n == 1 => vec![
                    (Identity::Malcev, Some(true), "seven-dimensional simple Malcev algebra"),
                    (Identity::Jacobi, Some(false), "seven-dimensional simple Malcev algebra"),
                ],
                // E⊗O^- is a subalgebra isomorphic to O^-, so Jacobi fails
                Sign::Minus => vec![(Identity::Malcev, None, DERIVED), (Identity::Jacobi, Some(false), DERIVED)],
            };
            for (identity, want, anchor) in cases {
                let (o, t) = timed(|| identity_check(&a, identity));
                let computed = match o? {
                    IdentityOutcome::Holds { tuples } => json!({ "holds": true, "tuples": tuples }),
                    IdentityOutcome::Counterexample { indices, .. } => json!({
                        "holds": false,
                        "witness": indices.iter().map(|&i| a.labels()[i].clone()).collect::<Vec<_>>(),
                    }),
                };
                let rid = format!("{id}/{}", identity.as_str());
                let cert = "exhaustive on basis tuples";
                let r = match want {
                    Some(h) => Record::judged(rid, anchor, json!({ "holds": h }), computed.clone(), computed["holds"] == h, cert),
                    None => Record::info(rid, computed, cert),
                };
                out.push(ms(r, t));
            }
        }
        Check::Derivations => {
            let sign = task.sign.expect("per sign");
            let (d, t) = timed(|| ctx.der1(n, sign));
            let d = d?;
            let r = match expected_der1(n, sign) {
                Some(want) => Record::compare(
                    id,
                    if sign == Sign::Plus && n == 3 { "derivations of the Albert algebra: F4" } else { "derivation algebra G2 + so_n" },
                    json!(want),
                    json!(d.dim),
                    d.certification.as_str(),
                ),
                None => Record::info(id, json!(d.dim), d.certification.as_str()),
            };
            out.push(ms(r, t));
        }
        Check::Known => {
            let sign = task.sign.expect("per sign");
            let (r, t) = timed(|| -> Result<_, Fail> {
                let k = known_derivations(n, sign, f)?;
                let solver = ctx.der1(n, sign)?.span(expected_dim(n, sign), f);
                Ok((k, solver))
            });
            let (k, solver) = r?;
            let contained = k.span.is_subspace_of(&solver);
            let equal = k.span == solver;
            let computed = json!({ "known": k.span.dim(), "solver": solver.dim(), "contained": contained, "equal": equal });
            let g2_so = 14 + n * (n - 1) / 2;
            let r = if sign == Sign::Minus || n >= 4 {
                Record::judged(
                    id,
                    "derivation algebra G2 + so_n",
                    json!({ "known": g2_so, "equal": true }),
                    computed,
                    equal && k.span.dim() == g2_so,
                    "equal reduced echelon forms",
                )
            } else {
                Record::judged(id, DERIVED, json!({ "contained": true }), computed, contained, "reduced echelon containment")
            };
            out.push(ms(r, t));
        }
        Check::Scan => {
            let sign = task.sign.expect("per sign");
            let a = ctx.algebra(n, sign)?;
            let deltas = cfg.deltas_in(f);
            let (scan, t) = timed(|| delta_scan(&a, &deltas));
            let scan = scan?;
            let (one, half) = (f.one(), f.half());
            for e in &scan.entries {
                let rid = format!("{id}/delta={}", e.delta);
                let cert = e.certification.as_str();
                let r = if e.delta == one {
                    match expected_der1(n, sign) {
                        Some(w) => Record::compare(rid, "derivation algebra dimension", json!(w), json!(e.dim), cert),
                        None => Record::info(rid, json!(e.dim), cert),
                    }
                } else if e.delta == half {
                    Record::compare(rid, "delta-derivation theorem: Der_1/2 = K id", json!(1), json!(e.dim), cert)
                } else {
                    Record::compare(rid, "delta-derivation theorem: no delta other than 1 and 1/2", json!(0), json!(e.dim), cert)
                };
                out.push(ms(r, t / scan.entries.len().max(1) as u64));
            }
            if let (Some(d1), Some(_)) = (scan.dim_at(&one), scan.dim_at(&half)) {
                out.push(Record::judged(
                    format!("{id}/central-extension"),
                    "one-dimensional trivial central extension of Der",
                    json!(d1 + 1),
                    json!(scan.central_extension_dim),
                    scan.central_extension_dim == Some(d1 + 1),
                    "ExactVerified",
                ));
            }
            if sign == Sign::Plus && n <= 3 {
                let (r, t) = timed(|| -> Result<_, Fail> {
                    let via = half_derivations_via_elements(&a)?.span(a.dim(), f);
                    let direct = delta_der_space(&a, &half)?.span(a.dim(), f);
                    Ok((via, direct))
                });
                let (via, direct) = r?;
                out.push(ms(
                    Record::judged(
                        format!("{id}/half-via-elements"),
                        DERIVED,
                        json!({ "equal": true }),
                        json!({ "equal": via == direct, "dim": via.dim() }),
                        via == direct,
                        "equal reduced echelon forms",
                    ),
                    t,
                ));
            }
        }
        Check::Gl => {
            if n < 2 {
                out.push(Record::skipped(id, "gl_n cross-checks need n >= 2"));
                return Ok(out);
            }
            let (cc, t) = timed(|| gl_cross_checks(n, f));
            let cc = cc?;
            for c in &cc {
                let anchor = if c.delta == f.half() {
                    "Der_1/2(gl_n) is 2-dimensional"
                } else if n == 2 {
                    "(-1)-derivations of sl_2 and gl_2"
                } else {
                    "Der_delta(gl_n) is 1-dimensional for delta not 1, 1/2"
                };
                out.push(ms(
                    Record::compare(format!("{id}/{}/delta={}", c.algebra, c.delta), anchor, json!(c.expected), json!(c.computed), "ExactVerified"),
                    t / cc.len().max(1) as u64,
                ));
            }
        }
        Check::Forms => {
            let sign = task.sign.expect("per sign");
            let a = ctx.algebra(n, sign)?;
            let (sol, t) = timed(|| assoc_form_space(&a));
            let sol = sol?;
            let nondeg = sol.nondegenerate(a.dim());
            out.push(ms(
                Record::compare(
                    format!("{id}/space"),
                    "invariant form theorem: unique up to scalar, nondegenerate",
                    json!({ "dim": 1, "nondegenerate": [true] }),
                    json!({ "dim": sol.dim, "nondegenerate": nondeg }),
                    sol.certification.as_str(),
                ),
                t,
            ));
            let (g, t) = timed(|| trace_form_gram(n, sign, f));
            let g = g?;
            let r = match form_match(&sol, &g) {
                Ok(lambda) => Record::judged(
                    format!("{id}/trace-form"),
                    "invariant form is proportional to Tr(XY + X̄Ȳ)",
                    json!({ "proportional": true }),
                    json!({ "proportional": true, "lambda": s(&lambda) }),
                    !lambda.is_zero(),
                    "exact, every entry",
                ),
                Err(e) => Record::judged(
                    format!("{id}/trace-form"),
                    "invariant form is proportional to Tr(XY + X̄Ȳ)",
                    json!({ "proportional": true }),
                    json!({ "proportional": false, "reason": e.to_string() }),
                    false,
                    "exact, every entry",
                ),
            };
            out.push(ms(r, t));
            let mismatch = trace_form_block_mismatch(n, sign, f, &g)?;
            out.push(Record::judged(
                format!("{id}/block-table"),
                "trace form block values",
                json!({ "mismatch": null }),
                json!({ "mismatch": mismatch.map(|(i, j)| [a.labels()[i].clone(), a.labels()[j].clone()]) }),
                mismatch.is_none(),
                "exact, every entry",
            ));
        }
        Check::Killing => {
            if n < 3 {
                out.push(Record::skipped(id, "the Killing form of so_n vanishes for n < 3"));
                return Ok(out);
            }
            let (k, t) = timed(|| killing_restriction_check(n, f));
            let r = match k {
                Ok(k) => Record::judged(
                    id,
                    "restriction to M_n^-⊗1 is proportional to the Killing form of so_n",
                    json!({ "proportional": true }),
                    json!({ "proportional": true, "factor": s(&k.factor) }),
                    !k.factor.is_zero(),
                    "exact, every entry",
                ),
                Err(e) => Record::failed(id, "restriction to M_n^-⊗1 is proportional to the Killing form of so_n", e.to_string()),
            };
            out.push(ms(r, t));
        }
    }
    Ok(out)
}

/// Runs one task. Arithmetic failures inside a check become failing
/// records; configuration and IO failures abort the run.
pub fn run_one(ctx: &Context, task: &Task) -> Result<Vec<Record>, CliError> {
    let (r, t) = timed(|| run_task(ctx, task));
    match r {
        Ok(records) => Ok(records),
        Err(Fail::Cli(e)) => Err(e),
        Err(Fail::Core(e)) => Ok(vec![ms(Record::failed(task.prefix(), DERIVED, e.to_string()), t)]),
    }
}

pub struct Outcome {
    pub report: Report,
    /// Some task was skipped because the wall-clock budget ran out.
    pub budget_exhausted: bool,
}

/// Runs `tasks` on `ctx.cfg.workers` threads. Records come back in task
/// order whatever the scheduling.
pub fn run_tasks(ctx: &Context, tasks: &[Task]) -> Result<Outcome, CliError> {
    let deadline = ctx.cfg.budget_secs.map(|s| Instant::now() + Duration::from_secs(s));
    let slots: Vec<Mutex<Option<Result<Vec<Record>, CliError>>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let exhausted = Mutex::new(false);
    let worker = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        let Some(task) = tasks.get(i) else { break };
        let r = if deadline.is_some_and(|d| Instant::now() >= d) {
            *exhausted.lock().unwrap() = true;
            Ok(vec![Record::skipped(task.prefix(), "wall-clock budget exhausted")])
        } else {
            run_one(ctx, task)
        };
        *slots[i].lock().unwrap() = Some(r);
    };
    std::thread::scope(|s| {
        for _ in 0..ctx.cfg.workers.min(tasks.len()).max(1) {
            s.spawn(worker);
        }
    });
    let mut records = Vec::new();
    for slot in slots {
        records.extend(slot.into_inner().unwrap().expect("every task ran")?);
    }
    let budget_exhausted = exhausted.into_inner().unwrap();
    Ok(Outcome { report: Report::new(ctx.cfg.echo(), records), budget_exhausted })
}

/// Validates `cfg`, then runs `checks` at every order in `orders`.
pub fn run(cfg: &RunConfig, checks: &[Check], orders: &[usize]) -> Result<Outcome, CliError> {
    let ctx = Context::new(cfg.clone())?;
    if let Some(&n) = orders.iter().find(|&&n| n == 0 || n > cfg.max_n) {
        return Err(CliError::Resource(format!("order {n} is outside 1..={}", cfg.max_n)));
    }
    let tasks = plan(checks, orders, &cfg.sign.signs());
    run_tasks(&ctx, &tasks)
}

pub fn any_failed(records: &[Record]) -> bool {
    records.iter().any(|r| r.verdict == Verdict::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!(Check::parse("dims").unwrap(), vec![Check::Dims]);
        assert_eq!(Check::parse("full-suite").unwrap().len(), Check::ALL.len());
        assert!(Check::parse("nope").is_err());
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()).unwrap(), vec![c]);
        }
    }

    #[test]
    fn plan_shape() {
        let t = plan(&[Check::Dims, Check::Octonion, Check::Lemmas], &[1, 2], &[Sign::Plus, Sign::Minus]);
        assert_eq!(t.len(), 4 + 1 + 2);
        assert_eq!(t[0].prefix(), "dims/plus/n1");
        assert_eq!(t[4].prefix(), "octonion");
        assert_eq!(t[5].prefix(), "lemmas/n1");
        assert!(plan(&[Check::Killing], &[3], &[Sign::Plus]).is_empty());
    }

    #[test]
    fn expected_tables() {
        assert_eq!((1..=5).map(|n| expected_dim(n, Sign::Plus)).collect::<Vec<_>>(), [1, 10, 27, 52, 85]);
        assert_eq!((1..=5).map(|n| expected_dim(n, Sign::Minus)).collect::<Vec<_>>(), [7, 22, 45, 76, 115]);
        assert_eq!((1..=4).map(|n| expected_der1(n, Sign::Minus).unwrap()).collect::<Vec<_>>(), [14, 15, 17, 20]);
        assert_eq!(expected_der1(3, Sign::Plus), Some(52));
        assert_eq!(expected_der1(4, Sign::Plus), Some(20));
        assert_eq!(expected_der1(2, Sign::Plus), None);
    }
}
