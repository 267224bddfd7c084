//! The eleven acceptance criteria, each evaluated exactly and reported on
//! one line. Expected values are written out here rather than taken from
//! the library's own tables.

use std::time::{Duration, Instant};

use octlab_core::algebra::{build_auxiliary, build_herm, verify_product_formulas, Auxiliary};
use octlab_core::deltader::{delta_der_space, delta_scan, half_der_elements, known_derivations, lemma_xdm_space};
use octlab_core::forms::{assoc_form_space, form_match, killing_restriction_check, trace_form_block_mismatch, trace_form_gram};
use octlab_core::laws::check_octonion_laws;
use octlab_core::linsolve::Certification;
use octlab_core::structure::{centroid, certify_simple, identity_check, lemma_kernels, Identity, IdentityOutcome, Verdict, Witness};
use octlab_core::{Field, FieldSpec, Scalar, Sign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: Field = Field::Rationals;
const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];
const PRIMES: [u64; 6] = [5, 7, 11, 13, 10007, 10009];

type Sub = (String, bool);

fn sub(name: impl Into<String>, ok: bool) -> Sub {
    (name.into(), ok)
}

fn q(num: i64, den: i64) -> Scalar {
    Q.from_ratio(num, den).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn dimensions() -> Vec<Sub> {
    let plus = [1, 10, 27, 52, 85];
    let minus = [7, 22, 45, 76, 115];
    let mut out = Vec::new();
    for n in 1..=5 {
        for (sign, want) in [(Sign::Plus, plus[n - 1]), (Sign::Minus, minus[n - 1])] {
            let a = build_herm(n, sign, Q).unwrap();
            out.push(sub(format!("{} n={n} dim {}", sign.as_str(), a.dim()), a.dim() == want && a.labels().len() == want));
        }
    }
    out
}

fn octonion_laws() -> Vec<Sub> {
    let mut out = Vec::new();
    let mut r = rng(2);
    for field in [Q, Field::new(FieldSpec::prime(7)).unwrap()] {
        match check_octonion_laws(field, 1000, &mut r) {
            Ok(checks) => {
                for c in checks {
                    out.push(sub(format!("{field}: {}", c.name), c.cases >= 1000));
                }
            }
            Err(e) => out.push(sub(format!("{field}: {e}"), false)),
        }
    }
    out.push(sub("six laws over each field", out.len() == 12));
    out
}

fn product_formulas() -> Vec<Sub> {
    let mut out = Vec::new();
    let mut r = rng(3);
    for n in 2..=4 {
        match verify_product_formulas(n, Q, 500, &mut r) {
            Ok(rep) => {
                let has = |name: &str| rep.checks.iter().any(|c| c.name == name && c.cases == 500);
                out.push(sub(format!("n={n} corrected Jordan rule"), has("(x⊗a)∘(y⊗b) = ½N(a,b)(x∘y)⊗1 + ¼[x,y]⊗[a,b]")));
                out.push(sub(format!("n={n} b=a Jordan rule"), has("(x⊗a)∘(y⊗a) = -N(a)(x∘y)⊗1")));
                out.push(sub(format!("n={n} bracket rule"), has("[m⊗a, s⊗b] = ½N(a,b)[m,s]⊗1 + (m∘s)⊗[a,b]")));
                out.push(sub(format!("n={n} b=a bracket rule"), has("[m⊗a, s⊗a] = N(a)[s,m]⊗1")));
                out.push(sub(format!("n={n} printed Jordan rule is off by two"), rep.printed_jordan_formula_off_by_two));
            }
            Err(e) => out.push(sub(format!("n={n}: {e}"), false)),
        }
    }
    out
}

fn simplicity() -> Vec<Sub> {
    let mut out = Vec::new();
    let mut r = rng(4);
    for n in 1..=4 {
        for sign in SIGNS {
            let a = build_herm(n, sign, Q).unwrap();
            let name = format!("{} n={n}", sign.as_str());
            match certify_simple(&a, 20, &PRIMES, &mut r) {
                Ok(c) => {
                    let randoms = matches!(&c.witness, Witness::Generators(g) if g.len() == 20);
                    let certified = c.modular.iter().filter(|(_, v)| *v == Verdict::SimpleCertified).count();
                    out.push(sub(
                        format!("{name}: {} with {certified} primes", c.verdict.as_str()),
                        c.verdict == Verdict::SimpleEvidence && randoms && certified >= 3 && certified == c.modular.len(),
                    ));
                }
                Err(e) => out.push(sub(format!("{name}: {e}"), false)),
            }
        }
    }
    out
}

fn delta_derivations() -> Vec<Sub> {
    let mut out = Vec::new();
    let deltas = [q(1, 1), q(1, 2), q(0, 1), q(-1, 1), q(2, 1), q(3, 1), q(-1, 2)];
    for n in 1..=4 {
        for sign in SIGNS {
            let a = build_herm(n, sign, Q).unwrap();
            let name = format!("{} n={n}", sign.as_str());
            let scan = match delta_scan(&a, &deltas) {
                Ok(s) => s,
                Err(e) => {
                    out.push(sub(format!("{name}: {e}"), false));
                    continue;
                }
            };
            let der1 = scan.dim_at(&q(1, 1)).unwrap();
            let want: Option<usize> = match (sign, n) {
                (Sign::Minus, _) => Some([14, 15, 17, 20][n - 1]),
                (Sign::Plus, 3) => Some(52),
                (Sign::Plus, 4) => Some(20),
                _ => None,
            };
            if let Some(w) = want {
                out.push(sub(format!("{name}: Der_1 = {der1}"), der1 == w));
            }
            out.push(sub(format!("{name}: Der_1/2 = {}", scan.dim_at(&q(1, 2)).unwrap()), scan.dim_at(&q(1, 2)) == Some(1)));
            let zeros = deltas[2..].iter().all(|d| scan.dim_at(d) == Some(0));
            out.push(sub(format!("{name}: Der_delta = 0 for 0, -1, 2, 3, -1/2"), zeros));
            out.push(sub(format!("{name}: Delta = Der_1 + 1"), scan.central_extension_dim == Some(der1 + 1)));
            let exact = scan.entries.iter().all(|e| e.certification == Certification::ExactVerified);
            out.push(sub(format!("{name}: all ExactVerified"), exact));
        }
    }
    out
}

fn cross_checks() -> Vec<Sub> {
    let cases = [
        (Auxiliary::GLn(3), q(-1, 1), 1),
        (Auxiliary::GLn(3), q(1, 2), 2),
        (Auxiliary::SLn(2), q(-1, 1), 5),
        (Auxiliary::GLn(2), q(-1, 1), 6),
    ];
    cases
        .into_iter()
        .map(|(aux, delta, want)| {
            let a = build_auxiliary(aux, Q).unwrap();
            let d = delta_der_space(&a, &delta).map(|s| s.dim);
            sub(format!("{aux:?} delta={delta}: {d:?}"), d == Ok(want))
        })
        .collect()
}

fn kernel_lemmas() -> Vec<Sub> {
    let mut out = Vec::new();
    for n in 2..=4 {
        let k = lemma_kernels(n, Q).unwrap();
        out.push(sub(format!("kernels n={n}"), k.holds()));
    }
    for n in 2..=3 {
        for delta in [q(1, 2), q(-1, 1)] {
            let x = lemma_xdm_space(n, &delta, Q).unwrap();
            out.push(sub(
                format!("xdm n={n} delta={delta}: {} solutions, image in KE", x.space.dim()),
                x.image_in_identity_span,
            ));
        }
    }
    for n in 2..=4 {
        let a = build_herm(n, Sign::Plus, Q).unwrap();
        let h = half_der_elements(&a).unwrap();
        out.push(sub(format!("half-der elements n={n}: dim {}", h.dim()), h.dim() == 1 && h.contains(a.unit().unwrap())));
    }
    out
}

fn centroids() -> Vec<Sub> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for sign in SIGNS {
            let a = build_herm(n, sign, Q).unwrap();
            let c = centroid(&a).map(|c| c.dim);
            out.push(sub(format!("{} n={n}: {c:?}", sign.as_str()), c == Ok(1)));
        }
    }
    out
}

fn identities() -> Vec<Sub> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let a = build_herm(n, Sign::Plus, Q).unwrap();
        let o = identity_check(&a, Identity::Jordan).unwrap();
        let ok = match &o {
            IdentityOutcome::Holds { .. } => n <= 3,
            IdentityOutcome::Counterexample { indices, value } => {
                n == 4 && indices.len() == 4 && value.iter().any(|c| !c.is_zero())
            }
        };
        let witness = match &o {
            IdentityOutcome::Counterexample { indices, .. } => {
                format!(" witness {:?}", indices.iter().map(|&i| a.labels()[i].as_str()).collect::<Vec<_>>())
            }
            _ => String::new(),
        };
        out.push(sub(format!("Jordan plus n={n}: {}{witness}", o.holds()), ok));
    }
    let m = build_herm(1, Sign::Minus, Q).unwrap();
    out.push(sub("Malcev minus n=1", identity_check(&m, Identity::Malcev).unwrap().holds()));
    out.push(sub("Jacobi fails minus n=1", !identity_check(&m, Identity::Jacobi).unwrap().holds()));
    out
}

fn forms() -> Vec<Sub> {
    let mut out = Vec::new();
    let cases: Vec<(usize, Sign)> =
        (1..=3).flat_map(|n| SIGNS.map(|s| (n, s))).chain([(4, Sign::Minus)]).collect();
    for (n, sign) in cases {
        let name = format!("{} n={n}", sign.as_str());
        let a = build_herm(n, sign, Q).unwrap();
        let s = assoc_form_space(&a).unwrap();
        out.push(sub(format!("{name}: {} forms", s.dim), s.dim == 1 && s.nondegenerate(a.dim()) == [true]));
        let g = trace_form_gram(n, sign, Q).unwrap();
        let lambda = form_match(&s, &g);
        out.push(sub(format!("{name}: proportional to the trace form {lambda:?}"), lambda.is_ok_and(|l| !l.is_zero())));
        out.push(sub(format!("{name}: block table"), trace_form_block_mismatch(n, sign, Q, &g).unwrap().is_none()));
    }
    for n in 3..=4 {
        let k = killing_restriction_check(n, Q);
        out.push(sub(format!("Killing form of so_{n}: {:?}", k.as_ref().map(|k| k.factor.to_string())), k.is_ok_and(|k| !k.factor.is_zero())));
    }
    out
}

fn known_spans() -> Vec<Sub> {
    let cases = [(1, Sign::Minus), (2, Sign::Minus), (3, Sign::Minus), (4, Sign::Plus)];
    cases
        .into_iter()
        .map(|(n, sign)| {
            let a = build_herm(n, sign, Q).unwrap();
            let known = known_derivations(n, sign, Q).unwrap().span;
            let solver = delta_der_space(&a, &Q.one()).unwrap().span(a.dim(), Q);
            // Subspace keeps the unique reduced echelon basis: equality of
            // values is equality of echelon forms
            sub(
                format!("{} n={n}: known {} solver {}", sign.as_str(), known.dim(), solver.dim()),
                known.basis() == solver.basis() && known.dim() == 14 + n * (n - 1) / 2,
            )
        })
        .collect()
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Vec<Sub>,
}

/// Sub-checks that fail for a mathematical reason; see the README. The
/// criterion still prints FAIL, and the run only passes if these are exactly
/// the failures observed.
const KNOWN_FALSE: [&str; 1] = ["7: xdm n=2 delta=-1: 3 solutions, image in KE"];

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "dimensions", budget: secs(10), run: dimensions },
        Criterion { id: 2, name: "octonion laws", budget: secs(10), run: octonion_laws },
        Criterion { id: 3, name: "product formulas", budget: secs(60), run: product_formulas },
        Criterion { id: 4, name: "simplicity", budget: secs(15 * 60), run: simplicity },
        Criterion { id: 5, name: "delta-derivations", budget: secs(30 * 60), run: delta_derivations },
        Criterion { id: 6, name: "gl/sl cross-checks", budget: secs(60), run: cross_checks },
        Criterion { id: 7, name: "kernel lemmas", budget: secs(120), run: kernel_lemmas },
        Criterion { id: 8, name: "centroid", budget: secs(10 * 60), run: centroids },
        Criterion { id: 9, name: "identities", budget: secs(10 * 60), run: identities },
        Criterion { id: 10, name: "invariant forms", budget: secs(10 * 60), run: forms },
        Criterion { id: 11, name: "known derivations", budget: secs(10 * 60), run: known_spans },
    ];
    let mut failed: Vec<String> = Vec::new();
    for c in &criteria {
        let t = Instant::now();
        let subs = (c.run)();
        let elapsed = t.elapsed();
        let mut bad: Vec<String> = subs.iter().filter(|s| !s.1).map(|s| format!("{}: {}", c.id, s.0)).collect();
        if elapsed > c.budget {
            bad.push(format!("{}: over budget", c.id));
        }
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {verdict} {:<20} {:>3} checks {:>8.2} s (budget {} s){}",
            c.id,
            c.name,
            subs.len(),
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            if bad.is_empty() { String::new() } else { format!("  failing: {}", bad.join("; ")) }
        );
        failed.extend(bad);
    }
    assert_eq!(failed, KNOWN_FALSE, "unexpected acceptance failures");
}
