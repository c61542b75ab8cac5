use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::Value;
use specsupp::algmod::{resolve_module, Algebra, AlgebraSpec, Module};
use specsupp::{Field, FieldSpec, PrimeField};

use crate::args::Global;
use crate::report::{usage, CliResult};

pub fn read_json(flag: &str, path: &Path) -> CliResult<Value> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(flag, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| usage(flag, format!("{}: {e}", path.display())))
}

/// `--algebra` as a file or built-in name; otherwise the algebra named by a
/// module file; otherwise A2.
pub fn algebra_spec(g: &Global) -> CliResult<AlgebraSpec> {
    if let Some(a) = &g.algebra {
        let path = Path::new(a);
        if path.is_file() {
            return AlgebraSpec::from_json(&read_json("--algebra", path)?).map_err(|e| usage("--algebra", e));
        }
        return AlgebraSpec::builtin(a).ok_or_else(|| usage("--algebra", format!("no file or built-in algebra {a:?}")));
    }
    if let Some(m) = &g.module {
        let path = Path::new(m);
        if path.is_file() {
            let v = read_json("--module", path)?;
            if let Some(r) = v.get("algebra_ref").and_then(Value::as_str) {
                return AlgebraSpec::builtin(r)
                    .ok_or_else(|| usage("--algebra", format!("module refers to {r:?}; pass its algebra file")));
            }
        }
    }
    Ok(AlgebraSpec::a2())
}

pub enum FieldChoice {
    Prime(PrimeField),
    Rational,
}

impl FieldChoice {
    pub fn label(&self) -> Value {
        match self {
            FieldChoice::Prime(f) => Value::from(f.p()),
            FieldChoice::Rational => Value::from("Q"),
        }
    }
}

pub fn field_choice(g: &Global, spec: &AlgebraSpec) -> CliResult<FieldChoice> {
    let p = match (g.field_p, spec.field.clone()) {
        (Some(p), _) | (None, FieldSpec::Prime { p }) => p,
        (None, FieldSpec::Rational { .. }) => return Ok(FieldChoice::Rational),
    };
    let flag = if g.field_p.is_some() { "--field-p" } else { "--algebra" };
    PrimeField::new(p).map(FieldChoice::Prime).map_err(|e| usage(flag, e))
}

pub fn build<F: Field>(spec: &AlgebraSpec, field: &F) -> CliResult<Arc<Algebra<F>>> {
    spec.build(field).map(Arc::new).map_err(|e| usage("--algebra", e))
}

/// A module file, or a name understood by `resolve_module`.
pub fn module<F: Field>(alg: &Arc<Algebra<F>>, flag: &str, spec: &str) -> CliResult<Module<F>> {
    let path = Path::new(spec);
    if path.is_file() {
        let v = read_json(flag, path)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("M").to_string();
        let m = Module::from_json(alg.clone(), &v).map_err(|e| usage(flag, e))?;
        return Ok(if m.name().is_some() { m } else { m.with_name(stem) });
    }
    resolve_module(alg, spec, &BTreeMap::new()).map_err(|e| usage(flag, e))
}

pub fn required_module<F: Field>(alg: &Arc<Algebra<F>>, g: &Global) -> CliResult<Module<F>> {
    let spec = g.module.as_deref().ok_or_else(|| usage("--module", "required for this command"))?;
    module(alg, "--module", spec)
}

pub fn budget() -> CliResult<usize> {
    match std::env::var("SPECSUPP_BUDGET") {
        Err(_) => Ok(specsupp::algmod::DEFAULT_BUDGET),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(b) if b > 0 => Ok(b),
            _ => Err(usage("SPECSUPP_BUDGET", format!("expected a positive integer, got {s:?}"))),
        },
    }
}
