use std::sync::Arc;

use serde_json::{json, Map, Value};
use specsupp::algmod::{is_isomorphic, structure_modules, Algebra, AlgebraSpec, Module};
use specsupp::support::{localising_closure, supp, supp_ex};
use specsupp::{FieldSpec, PrimeField};

use crate::commands::socle_names;
use crate::report::{CliResult, Report};

const ALGEBRAS: [(&str, &str); 3] = [
    ("a2", include_str!("../golden/algebras/a2.json")),
    ("dual_numbers", include_str!("../golden/algebras/dual_numbers.json")),
    ("k_times_k", include_str!("../golden/algebras/k_times_k.json")),
];
const EXPECTED: &str = include_str!("../golden/expected.json");

const MAX_TERMS: usize = 16;
const DIM_CAP: usize = 4;

fn sections(alg: &Arc<Algebra<PrimeField>>, seed: u64, budget: usize) -> CliResult<Map<String, Value>> {
    let sm = structure_modules(alg);
    let mut named: Vec<&Module<PrimeField>> = sm.simples.iter().chain(&sm.injectives).collect();
    named.push(&sm.regular);
    let mut out = Map::new();
    out.insert(
        "injectives".into(),
        sm.injectives
            .iter()
            .map(|i| json!({"name": i.display_name(), "dim": i.dim(), "socle": socle_names(i)}))
            .collect(),
    );
    let mut s = Map::new();
    let mut ex = Map::new();
    for m in &named {
        s.insert(m.display_name(), json!(supp(m).names()));
        let e = supp_ex(m, MAX_TERMS, seed)?;
        ex.insert(m.display_name(), json!({"set": e.set.names(), "complete": e.complete}));
    }
    out.insert("supp".into(), Value::Object(s));
    out.insert("supp_ex".into(), Value::Object(ex));
    let mut closures = Map::new();
    for simple in &sm.simples {
        let c = localising_closure(alg, std::slice::from_ref(simple), DIM_CAP, budget, seed)?;
        closures.insert(
            simple.display_name(),
            json!({"corpus": c.corpus_names(), "sigma": c.sigma.names(), "stable": c.stable}),
        );
    }
    out.insert("closures".into(), Value::Object(closures));
    if alg.name() == "a2" {
        let (s1, i1, i2) = (&sm.simples[0], &sm.injectives[0], &sm.injectives[1]);
        let soc = specsupp::algmod::socle_radical(i1).socle;
        let (q, _) = i1.quotient(&soc)?;
        let (sub, _) = i1.submodule(&soc)?;
        out.insert(
            "sequence".into(),
            json!({
                "dim_I1": i1.dim(),
                "socle_is_S1": is_isomorphic(&sub, s1, seed)?,
                "quotient_is_I2": is_isomorphic(&q, i2, seed)?,
            }),
        );
    }
    Ok(out)
}

/// Recomputes every section and compares it with the committed value.
pub fn run(seed: u64, budget: usize) -> CliResult<Report> {
    let expected: Value = serde_json::from_str(EXPECTED).expect("committed expectations are valid JSON");
    let mut checks = Vec::new();
    let mut all = true;
    for (name, text) in ALGEBRAS {
        let spec = AlgebraSpec::from_json(&serde_json::from_str(text).expect("shipped algebra is valid JSON"))?;
        let p = match spec.field {
            FieldSpec::Prime { p } => p,
            FieldSpec::Rational { .. } => unreachable!("shipped algebras are over prime fields"),
        };
        let alg = Arc::new(spec.build(&PrimeField::new(p)?)?);
        for (section, actual) in sections(&alg, seed, budget)? {
            let want = &expected[name][&section];
            let passed = *want == actual;
            all &= passed;
            let mut c = json!({"check": format!("{name}.{section}"), "passed": passed});
            if !passed {
                c["expected"] = want.clone();
                c["actual"] = actual;
            }
            checks.push(c);
        }
        let missing: Vec<&String> = expected[name]
            .as_object()
            .map(|o| o.keys().filter(|k| !checks.iter().any(|c| c["check"] == format!("{name}.{k}"))).collect())
            .unwrap_or_default();
        for k in missing {
            all = false;
            checks.push(json!({"check": format!("{name}.{k}"), "passed": false, "actual": null}));
        }
    }
    Ok(Report::new(json!({"checks": checks, "passed": all})).passed(all))
}
