use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;

use super::algebra::Algebra;
use super::module::{direct_sum, Module};
use super::structure::{injective, projective, simple};

/// Builds a module from a name such as `"S1"`, `"I1^2+I2"`, `"Lambda"` or
/// `"0"`. Names in `extra` take precedence over the built-in ones.
pub fn resolve_module<F: Field>(
    alg: &Arc<Algebra<F>>,
    name: &str,
    extra: &BTreeMap<String, Module<F>>,
) -> Result<Module<F>> {
    if let Some(m) = extra.get(name) {
        return Ok(m.clone().with_name(name));
    }
    let mut parts = Vec::new();
    for term in name.split('+').map(str::trim) {
        let (base, power) = match term.split_once('^') {
            Some((b, k)) => {
                let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
                (b.trim(), k)
            }
            None => (term, 1),
        };
        let m = resolve_base(alg, base, extra)?;
        parts.extend(std::iter::repeat_n(m, power));
    }
    let refs: Vec<&Module<F>> = parts.iter().collect();
    Ok(direct_sum(alg, &refs).with_name(name))
}

fn resolve_base<F: Field>(
    alg: &Arc<Algebra<F>>,
    base: &str,
    extra: &BTreeMap<String, Module<F>>,
) -> Result<Module<F>> {
    if let Some(m) = extra.get(base) {
        return Ok(m.clone().with_name(base));
    }
    match base {
        "0" => return Ok(Module::zero(alg.clone())),
        "Lambda" => return Ok(Module::regular(alg.clone())),
        _ => {}
    }
    let vertex = |rest: &str| alg.vertices().iter().position(|v| v == rest);
    let unknown = || Error::Parse(format!("unknown module {base:?}"));
    let (kind, rest) = base.split_at(base.char_indices().nth(1).map_or(base.len(), |(i, _)| i));
    let v = vertex(rest).ok_or_else(unknown)?;
    match kind {
        "S" => Ok(simple(alg, v)),
        "P" => Ok(projective(alg, v)),
        "I" => Ok(injective(alg, v)),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algmod::algebra::AlgebraSpec;
    use crate::field::PrimeField;

    #[test]
    fn names() {
        let alg = Arc::new(AlgebraSpec::a2().build(&PrimeField::new(5).unwrap()).unwrap());
        let none = BTreeMap::new();
        assert_eq!(resolve_module(&alg, "I1", &none).unwrap().dim(), 2);
        assert_eq!(resolve_module(&alg, "I1^2+I2", &none).unwrap().dim(), 5);
        assert_eq!(resolve_module(&alg, "Lambda", &none).unwrap().dim(), 3);
        assert!(resolve_module(&alg, "0", &none).unwrap().is_zero());
        assert_eq!(resolve_module(&alg, "S1", &none).unwrap().display_name(), "S1");
        assert!(resolve_module(&alg, "S9", &none).is_err());
        assert!(resolve_module(&alg, "Q1", &none).is_err());
        assert!(resolve_module(&alg, "I1^x", &none).is_err());
        let mut extra = BTreeMap::new();
        extra.insert("X".to_string(), simple(&alg, 1));
        assert_eq!(resolve_module(&alg, "X+S1", &extra).unwrap().dim_vector(), vec![1, 1]);
    }
}
