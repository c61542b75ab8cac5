use std::sync::Arc;

use serde_json::{json, Value};
use specsupp::algmod::{min_inj_resolution, socle_radical, structure_modules, Algebra, Module};
use specsupp::boolring::{adjunction_transpose, disjointify, hasse_dot, BoolElem, BoolHom, BoolRing, BoolRingExt};
use specsupp::datum::{universal_map, verify_datum, verify_universality, SupportDatum, UniversalityStatus};
use specsupp::support::{decomposition_lattice, localising_closure, realize_decomposition, supp, supp_ex, SupportSet};
use specsupp::ziegler::{definable_correspondence_check, ziegler_spectrum};
use specsupp::Field;

use crate::args::{DatumAction, Global, RingArgs, StoneAction};
use crate::load::{self, read_json};
use crate::report::{usage, CliResult, Report};

pub struct Ctx<'a, F: Field> {
    pub alg: Arc<Algebra<F>>,
    pub g: &'a Global,
    pub budget: usize,
}

impl<F: Field> Ctx<'_, F> {
    fn max_terms(&self) -> usize {
        self.g.max_terms as usize
    }

    fn dim_cap(&self) -> usize {
        self.g.dim_cap as usize
    }

    fn module(&self) -> CliResult<Module<F>> {
        load::required_module(&self.alg, self.g)
    }
}

pub fn spectrum<F: Field>(c: &Ctx<F>) -> CliResult<Report> {
    let sm = structure_modules(&c.alg);
    let points: Vec<Value> = sm
        .injectives
        .iter()
        .zip(&sm.spectrum)
        .zip(c.alg.vertices())
        .map(|((i, name), v)| json!({"name": name, "dim": i.dim(), "dim_vector": i.dim_vector(), "socle": format!("S{v}")}))
        .collect();
    Ok(Report::new(json!({"spectrum": points})))
}

pub fn supp_cmd<F: Field>(c: &Ctx<F>) -> CliResult<Report> {
    let m = c.module()?;
    Ok(Report::new(json!({"module": m.display_name(), "supp": supp(&m).names()})))
}

pub fn suppex<F: Field>(c: &Ctx<F>) -> CliResult<Report> {
    let m = c.module()?;
    let ex = supp_ex(&m, c.max_terms(), c.g.seed)?;
    let res = min_inj_resolution(&m, c.max_terms(), c.g.seed)?;
    let terms: Vec<Value> = res.terms.iter().map(|t| t.to_json()).collect();
    Ok(Report::new(json!({
        "module": m.display_name(),
        "supp_ex": ex.set.names(),
        "complete": ex.complete,
        "status": ex.status,
        "terms": terms,
    })))
}

pub fn dlattice<F: Field>(c: &Ctx<F>) -> CliResult<Report> {
    let d = decomposition_lattice(&c.module()?, c.g.seed)?;
    let ok = d.iso.is_bijective();
    Ok(Report::new(d.to_json()).with_dot(d.to_dot()).passed(ok))
}

pub fn realize<F: Field>(c: &Ctx<F>, partition: &[String]) -> CliResult<Report> {
    let m = c.module()?;
    let blocks = partition
        .iter()
        .map(|b| {
            let names: Vec<&str> = b.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            SupportSet::from_names(&c.alg, &names).map_err(|e| usage("--partition", e))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let r = realize_decomposition(&m, &blocks, c.g.seed)?;
    let parts: Vec<Value> = blocks
        .iter()
        .zip(&r.parts)
        .map(|(b, p)| json!({"subset": b.names(), "module": p.display_name(), "dim": p.dim()}))
        .collect();
    let iso = r.isomorphism.is_iso();
    Ok(Report::new(json!({"module": m.display_name(), "parts": parts, "isomorphism": iso})).passed(iso))
}

pub fn closure<F: Field>(c: &Ctx<F>, generators: &[String]) -> CliResult<Report> {
    let gens = if generators.is_empty() {
        vec![c.module()?]
    } else {
        generators.iter().map(|g| load::module(&c.alg, "--generators", g)).collect::<CliResult<Vec<_>>>()?
    };
    let cl = localising_closure(&c.alg, &gens, c.dim_cap(), c.budget, c.g.seed)?;
    Ok(Report::new(cl.to_json()))
}

pub fn datum<F: Field>(c: &Ctx<F>, action: &DatumAction) -> CliResult<Report> {
    let (DatumAction::Verify { datum } | DatumAction::Map { datum }) = action;
    let v = read_json("--datum", datum)?;
    let mut d = SupportDatum::from_json(c.alg.clone(), &v).map_err(|e| usage("--datum", e))?;
    d.max_terms = c.max_terms();
    d.seed = c.g.seed;
    match action {
        DatumAction::Verify { .. } => {
            let r = verify_datum(&d)?;
            let ok = r.passed();
            Ok(Report::new(serde_json::to_value(&r).expect("serializable")).passed(ok))
        }
        DatumAction::Map { .. } => {
            let u = universal_map(&d)?;
            let v = verify_universality(&d)?;
            let ok = u.factorization_ok && v.status == UniversalityStatus::Unique && v.matches_universal_map == Some(true);
            Ok(Report::new(json!({
                "universal_map": u.to_json(&d.space),
                "universality": serde_json::to_value(&v).expect("serializable"),
            }))
            .passed(ok))
        }
    }
}

pub fn ziegler<F: Field>(c: &Ctx<F>, dmax: usize, check: bool, random: usize) -> CliResult<Report> {
    let z = ziegler_spectrum(&c.alg, dmax, c.budget, c.g.seed)?;
    let mut body = z.to_json();
    let mut ok = true;
    if check {
        let r = definable_correspondence_check(&z, dmax, random, c.g.seed)?;
        ok = r.passed();
        body["correspondence"] = serde_json::to_value(&r).expect("serializable");
    }
    Ok(Report::new(body).passed(ok))
}

/// Socle composition factors, one name per copy.
pub fn socle_names<F: Field>(m: &Module<F>) -> Vec<String> {
    let alg = m.algebra();
    socle_radical(m)
        .socle_multiplicities
        .iter()
        .enumerate()
        .flat_map(|(v, &k)| std::iter::repeat_n(format!("S{}", alg.vertices()[v]), k))
        .collect()
}

fn ring(args: &RingArgs) -> CliResult<Arc<BoolRing>> {
    match (&args.ring, args.atoms) {
        (Some(path), _) => BoolRing::from_json(&read_json("--ring", path)?).map_err(|e| usage("--ring", e)),
        (None, Some(n)) => BoolRing::with_atom_count(n).map_err(|e| usage("--atoms", e)),
        (None, None) => Err(usage("--ring", "pass --ring PATH or --atoms N")),
    }
}

fn elem(flag: &str, r: &Arc<BoolRing>, v: &Value) -> CliResult<BoolElem> {
    BoolElem::from_json(r, v).map_err(|e| usage(flag, e))
}

pub fn stone(action: &StoneAction) -> CliResult<Report> {
    match action {
        StoneAction::Spec(args) => {
            let r = ring(args)?;
            let points: Vec<Value> = r
                .spec_points()
                .iter()
                .map(|p| {
                    let gen = r.atom(p.atom()).complement();
                    json!({"point": p.label(), "prime_ideal_generator": gen.indices()})
                })
                .collect();
            Ok(Report::new(json!({"atoms": r.labels(), "points": points})).with_dot(hasse_dot(&r, None, "A")))
        }
        StoneAction::Unit(args) => {
            let r = ring(args)?;
            let u = r.stone_unit_iso();
            let images: serde_json::Map<String, Value> = (0..r.atom_count())
                .map(|i| (r.labels()[i].clone(), json!(u.target().indices(u.apply_mask(1 << i)))))
                .collect();
            let hom = u.check_homomorphism();
            let ok = hom.is_ok() && u.is_bijective();
            Ok(Report::new(json!({
                "atom_images": images,
                "homomorphism": hom.is_ok(),
                "bijective": u.is_bijective(),
            }))
            .with_dot(hasse_dot(u.target(), None, "ClopSpecA"))
            .passed(ok))
        }
        StoneAction::Adjoint { hom } => {
            let v = read_json("--hom", hom)?;
            let source = BoolRing::from_json(&v["source"]).map_err(|e| usage("--hom", e))?;
            let target = BoolRing::from_json(&v["target"]).map_err(|e| usage("--hom", e))?;
            let images = v["images"]
                .as_array()
                .ok_or_else(|| usage("--hom", "missing \"images\""))?
                .iter()
                .map(|im| elem("--hom", &target, &json!({"atoms": im})).map(|e| e.bits()))
                .collect::<CliResult<Vec<u64>>>()?;
            let phi = BoolHom::from_atom_images(source.clone(), target.clone(), &images).map_err(|e| usage("--hom", e))?;
            let points = adjunction_transpose(&phi)?;
            let map: serde_json::Map<String, Value> =
                target.labels().iter().zip(&points).map(|(t, p)| (t.clone(), json!(p.label()))).collect();
            // the transpose pulls clopens back to phi
            let round_trip = source.masks().all(|u| specsupp::boolring::pullback(&points, u) == phi.apply_mask(u));
            Ok(Report::new(json!({"transpose": map, "round_trip": round_trip})).passed(round_trip))
        }
        StoneAction::Disjointify { input } => {
            let v = read_json("--input", input)?;
            let r = BoolRing::from_json(&v["ring"]).map_err(|e| usage("--input", e))?;
            let x = elem("--input", &r, &v["x"])?;
            let family = v["family"]
                .as_array()
                .ok_or_else(|| usage("--input", "missing \"family\""))?
                .iter()
                .map(|f| elem("--input", &r, f))
                .collect::<CliResult<Vec<_>>>()?;
            let ys = disjointify(&x, &family)?;
            let disjoint = ys.iter().enumerate().all(|(i, a)| ys[i + 1..].iter().all(|b| a.bits() & b.bits() == 0));
            let below = ys.iter().zip(&family).all(|(y, f)| y.bits() & !f.bits() == 0);
            let join = ys.iter().fold(0, |acc, y| acc | y.bits()) == x.bits();
            let ok = disjoint && below && join;
            Ok(Report::new(json!({
                "family": ys.iter().map(BoolElem::to_json).collect::<Vec<_>>(),
                "pairwise_disjoint": disjoint,
                "refines": below,
                "join_preserved": join,
            }))
            .passed(ok))
        }
    }
}
