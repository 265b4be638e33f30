//! JSON front end for the model library: group loading, report
//! serialization, and the `verify` invariant suite. Everything here is
//! deterministic for a fixed seed — serde_json sorts object keys, and all
//! randomness flows through the seeded generator.

use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use gmodel_core::burnside::{burnside_multiply, marks_hom, unit as burnside_unit, BurnsideElement};
use gmodel_core::chain::{fixed_points, homology, homology_dims, Complex};
use gmodel_core::dgmod::{box_product, counit_generators, free_module, unit_free_is_iso};
use gmodel_core::lattice::normalizer;
use gmodel_core::model::{
    build_model, consistency_report, endomorphism_check, homotopy_classes, AlgebraicModel,
    ModelObject,
};
use gmodel_core::perm::{named_group, FiniteGroup, Permutation};
use gmodel_core::ratmat::{rat_frac, QMat, Rat};
use gmodel_core::rep::GRepresentation;
use gmodel_core::sample::{rand_complex, SplitMix64};

pub const EXIT_UNKNOWN_GROUP: i32 = 2;
pub const EXIT_MALFORMED_JSON: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

/// The named groups `verify` runs over when no `--group` is given.
pub const CORPUS: &[&str] = &[
    "cyclic-1",
    "cyclic-2",
    "cyclic-3",
    "cyclic-4",
    "cyclic-5",
    "cyclic-6",
    "klein-4",
    "symmetric-3",
    "dihedral-8",
    "quaternion-8",
    "alternating-4",
    "symmetric-4",
];

#[derive(Debug)]
pub struct CliError {
    pub exit_code: i32,
    pub message: String,
}

impl CliError {
    fn unknown_group(msg: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_UNKNOWN_GROUP,
            message: msg.into(),
        }
    }

    fn malformed(msg: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_MALFORMED_JSON,
            message: msg.into(),
        }
    }

    fn truncation(msg: impl Into<String>) -> Self {
        CliError {
            exit_code: EXIT_TRUNCATION,
            message: msg.into(),
        }
    }
}

pub fn rat_string(r: &Rat) -> String {
    // BigRational's Display already prints "p" when q = 1, else "p/q"
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<Rat, CliError> {
    let bad = || CliError::malformed(format!("bad rational {s:?} (expected \"p\" or \"p/q\")"));
    match s.split_once('/') {
        None => Ok(rat_frac(s.trim().parse::<i64>().map_err(|_| bad())?, 1)),
        Some((p, q)) => {
            let p = p.trim().parse::<i64>().map_err(|_| bad())?;
            let q = q.trim().parse::<i64>().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(rat_frac(p, q))
        }
    }
}

fn mat_to_json(m: &QMat) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                Value::Array(
                    (0..m.cols())
                        .map(|c| Value::String(rat_string(m.at(r, c))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn mat_from_json(v: &Value, rows: usize, cols: usize, what: &str) -> Result<QMat, CliError> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::malformed(format!("{what}: expected an array of rows")))?;
    if arr.len() != rows {
        return Err(CliError::malformed(format!(
            "{what}: expected {rows} rows, found {}",
            arr.len()
        )));
    }
    let mut m = QMat::zero(rows, cols);
    for (r, row) in arr.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("{what}: row {r} is not an array")))?;
        if row.len() != cols {
            return Err(CliError::malformed(format!(
                "{what}: row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, e) in row.iter().enumerate() {
            let s = e
                .as_str()
                .ok_or_else(|| CliError::malformed(format!("{what}: entry ({r},{c}) not a string")))?;
            m.set(r, c, parse_rat(s)?);
        }
    }
    Ok(m)
}

/// Load a group by corpus name or from a JSON file
/// `{"degree": n, "generators": [[images], ...]}`.
pub fn load_group(source: &str) -> Result<Arc<FiniteGroup>, CliError> {
    if let Ok(g) = named_group(source) {
        return Ok(g);
    }
    if !std::path::Path::new(source).exists() {
        return Err(CliError::unknown_group(format!("unknown group {source:?}")));
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| CliError::malformed(format!("cannot read {source:?}: {e}")))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::malformed(format!("{source}: {e}")))?;
    let degree = v["degree"]
        .as_u64()
        .ok_or_else(|| CliError::malformed("group file: missing integer \"degree\""))?
        as usize;
    let gens = v["generators"]
        .as_array()
        .ok_or_else(|| CliError::malformed("group file: missing array \"generators\""))?;
    let mut perms = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let images = g
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("generator {i}: not an array")))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| CliError::malformed(format!("generator {i}: bad image")))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        if images.len() != degree {
            return Err(CliError::malformed(format!(
                "generator {i}: {} images for degree {degree}",
                images.len()
            )));
        }
        perms.push(
            Permutation::new(images)
                .map_err(|e| CliError::malformed(format!("generator {i}: {e:?}")))?,
        );
    }
    FiniteGroup::from_generators(degree, perms)
        .map_err(|e| CliError::malformed(format!("group file: {e:?}")))
}

pub fn subgroups_report(group: &Arc<FiniteGroup>) -> Value {
    let model = build_model_checked(group, 1).expect("corpus groups are in bounds");
    let classes = model.marks().classes();
    let class_sizes: Vec<usize> = classes
        .classes()
        .iter()
        .map(|rep| {
            classes
                .subgroups()
                .iter()
                .filter(|s| classes.class_index(s) == classes.class_index(rep))
                .count()
        })
        .collect();
    json!({
        "group_order": group.order(),
        "subgroup_count": classes.subgroups().len(),
        "classes": classes.classes().iter().enumerate().map(|(i, rep)| json!({
            "index": i,
            "order": rep.order(),
            "size": class_sizes[i],
            "representative": rep.members(),
        })).collect::<Vec<_>>(),
    })
}

pub fn weyl_report(group: &Arc<FiniteGroup>) -> Value {
    let model = build_model_checked(group, 1).expect("corpus groups are in bounds");
    json!({
        "group_order": group.order(),
        "classes": model.factors().iter().enumerate().map(|(i, f)| json!({
            "index": i,
            "subgroup_order": f.class_rep.order(),
            "normalizer_order": normalizer(group, &f.class_rep).order(),
            "weyl_order": f.weyl.order(),
        })).collect::<Vec<_>>(),
    })
}

pub fn marks_report(group: &Arc<FiniteGroup>) -> Value {
    let marks = gmodel_core::burnside::table_of_marks(group);
    json!({
        "group_order": group.order(),
        "class_orders": marks.classes().classes().iter().map(|s| s.order()).collect::<Vec<_>>(),
        "marks": mat_to_json(marks.entries()),
    })
}

pub fn idempotents_report(group: &Arc<FiniteGroup>) -> Value {
    let marks = gmodel_core::burnside::table_of_marks(group);
    let items: Vec<Value> = (0..marks.len())
        .map(|i| {
            let e = gmodel_core::burnside::idempotent(&marks, i).expect("class in range");
            json!({
                "class": i,
                "coefficients": e.coeffs.iter().map(rat_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "group_order": group.order(),
        "idempotents": items,
    })
}

fn build_model_checked(
    group: &Arc<FiniteGroup>,
    n_max: usize,
) -> Result<AlgebraicModel, CliError> {
    build_model(group, n_max).map_err(|e| CliError::unknown_group(format!("{e}")))
}

pub fn model_report(group: &Arc<FiniteGroup>, n_max: usize) -> Result<Value, CliError> {
    let model = build_model_checked(group, n_max)?;
    let consistency = consistency_report(&model);
    let factors: Vec<Value> = model
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let endo = endomorphism_check(&model, i).expect("class in range");
            json!({
                "class": i,
                "subgroup_order": f.class_rep.order(),
                "weyl_order": f.weyl.order(),
                "endo_dim": endo.dim,
                "endo_is_group_algebra": endo.is_group_algebra(),
                "idempotent": f.idempotent.coeffs.iter().map(rat_string).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({
        "group_order": group.order(),
        "n_max": n_max,
        "factor_count": model.len(),
        "factors": factors,
        "consistency": {
            "unit_endo_dim": consistency.unit_endo_dim,
            "sum_weyl_orders": consistency.sum_weyl_orders,
            "class_count": consistency.class_count,
            "consistent": consistency.consistent(),
        },
    }))
}

/// Serialize a model object to the documented schema.
pub fn model_object_to_json(obj: &ModelObject) -> Value {
    let comps: Vec<Value> = obj
        .components
        .iter()
        .map(|c| {
            if c.dims().is_empty() {
                return json!({ "lo": 0, "dims": [], "diffs": [], "actions": [] });
            }
            let degrees: Vec<i64> = (c.lo()..=c.hi()).collect();
            json!({
                "lo": c.lo(),
                "dims": degrees.iter().map(|&n| c.dim(n)).collect::<Vec<_>>(),
                "diffs": degrees.iter().skip(1).map(|&n| mat_to_json(&c.diff(n))).collect::<Vec<_>>(),
                "actions": degrees.iter().map(|&n| {
                    (0..c.group().generators().len())
                        .map(|gi| mat_to_json(&c.action_gen(n, gi)))
                        .collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "components": comps })
}

/// Parse and fully validate a model object against the model's factors.
pub fn model_object_from_json(model: &AlgebraicModel, v: &Value) -> Result<ModelObject, CliError> {
    let comps = v["components"]
        .as_array()
        .ok_or_else(|| CliError::malformed("model object: missing array \"components\""))?;
    if comps.len() != model.len() {
        return Err(CliError::malformed(format!(
            "model object: {} components for {} classes",
            comps.len(),
            model.len()
        )));
    }
    let mut components = Vec::new();
    for (i, (cv, f)) in comps.iter().zip(model.factors()).enumerate() {
        let what = format!("component {i}");
        let lo = cv["lo"]
            .as_i64()
            .ok_or_else(|| CliError::malformed(format!("{what}: missing integer \"lo\"")))?;
        let dims: Vec<usize> = cv["dims"]
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("{what}: missing array \"dims\"")))?
            .iter()
            .map(|d| {
                d.as_u64()
                    .map(|n| n as usize)
                    .ok_or_else(|| CliError::malformed(format!("{what}: bad dimension")))
            })
            .collect::<Result<_, _>>()?;
        if dims.is_empty() {
            components.push(Complex::zero(f.weyl.clone()));
            continue;
        }
        let ngens = f.weyl.generators().len();
        let actions = cv["actions"]
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("{what}: missing array \"actions\"")))?;
        if actions.len() != dims.len() {
            return Err(CliError::malformed(format!(
                "{what}: {} action entries for {} degrees",
                actions.len(),
                dims.len()
            )));
        }
        let mut terms = Vec::new();
        for (k, (d, acts)) in dims.iter().zip(actions).enumerate() {
            let acts = acts
                .as_array()
                .ok_or_else(|| CliError::malformed(format!("{what}: actions[{k}] not an array")))?;
            if acts.len() != ngens {
                return Err(CliError::malformed(format!(
                    "{what}: actions[{k}] has {} matrices for {ngens} generators",
                    acts.len()
                )));
            }
            let gens = acts
                .iter()
                .enumerate()
                .map(|(gi, a)| mat_from_json(a, *d, *d, &format!("{what}: actions[{k}][{gi}]")))
                .collect::<Result<Vec<_>, _>>()?;
            terms.push(
                GRepresentation::new(f.weyl.clone(), *d, gens)
                    .map_err(|e| CliError::malformed(format!("{what}: degree {k}: {e:?}")))?,
            );
        }
        let diffs_v = cv["diffs"]
            .as_array()
            .ok_or_else(|| CliError::malformed(format!("{what}: missing array \"diffs\"")))?;
        if diffs_v.len() + 1 != dims.len() {
            return Err(CliError::malformed(format!(
                "{what}: {} differentials for {} degrees",
                diffs_v.len(),
                dims.len()
            )));
        }
        let mut diffs = vec![QMat::zero(0, dims[0])];
        for (k, dv) in diffs_v.iter().enumerate() {
            diffs.push(mat_from_json(
                dv,
                dims[k],
                dims[k + 1],
                &format!("{what}: diffs[{k}]"),
            )?);
        }
        components.push(
            Complex::new(f.weyl.clone(), lo, terms, diffs)
                .map_err(|e| CliError::malformed(format!("{what}: {e:?}")))?,
        );
    }
    Ok(ModelObject { components })
}

fn dims_json(dims: &[(i64, usize)]) -> Value {
    Value::Array(
        dims.iter()
            .map(|(d, k)| json!({ "degree": d, "dim": k }))
            .collect(),
    )
}

pub fn hom_report(
    group: &Arc<FiniteGroup>,
    n_max: usize,
    x_text: &str,
    y_text: &str,
) -> Result<Value, CliError> {
    let model = build_model_checked(group, n_max)?;
    let parse = |text: &str, which: &str| -> Result<ModelObject, CliError> {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| CliError::malformed(format!("{which}: {e}")))?;
        model_object_from_json(&model, &v)
    };
    let x = parse(x_text, "x")?;
    let y = parse(y_text, "y")?;
    let hc = homotopy_classes(&model, &x, &y)
        .map_err(|e| CliError::malformed(format!("{e}")))?;
    Ok(json!({
        "per_class": hc.per_class.iter().map(|d| dims_json(d)).collect::<Vec<_>>(),
        "total": dims_json(&hc.total),
    }))
}

/// Box-product demo: over the class with the largest Weyl group of order
/// at most 4 (keeping the exact relation matrices small), compute
/// `F_a □ F_b` and compare with `F_{a+b}` objectwise.
pub fn demo_box_report(
    group: &Arc<FiniteGroup>,
    n_max: usize,
    a: usize,
    b: usize,
) -> Result<Value, CliError> {
    let model = build_model_checked(group, n_max)?;
    let class = model
        .factors()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.weyl.order() <= 4)
        .max_by_key(|(_, f)| f.weyl.order())
        .map(|(i, _)| i)
        .expect("the whole-group class always qualifies");
    let factor = &model.factors()[class];
    let mk = |x: usize| {
        free_module(&factor.ea, x)
            .map_err(|e| CliError::truncation(format!("{e}")))
    };
    let (fa, fb) = (mk(a)?, mk(b)?);
    let boxed = box_product(&fa, &fb).map_err(|e| CliError::truncation(format!("{e}")))?;
    let target = mk(a + b)?;
    let n_objects = factor.ea.n_objects();
    let box_dims: Vec<usize> = (0..n_objects).map(|x| boxed.value(x).total_dim()).collect();
    let free_dims: Vec<usize> = (0..n_objects).map(|x| target.value(x).total_dim()).collect();
    Ok(json!({
        "class": class,
        "weyl_order": factor.weyl.order(),
        "a": a,
        "b": b,
        "box_dims_per_object": box_dims,
        "free_dims_per_object": free_dims,
        "matches_free_module": box_dims == free_dims,
    }))
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

fn verify_group(name: &str, n_max: usize, seed: u64) -> Result<Vec<Check>, CliError> {
    let group = load_group(name)?;
    let model = build_model_checked(&group, n_max)?;
    let mut checks = Vec::new();

    // Weyl orders against the normalizer quotient
    let weyl_ok = model.factors().iter().all(|f| {
        f.weyl.order() == normalizer(&group, &f.class_rep).order() / f.class_rep.order()
    });
    checks.push(check("weyl-orders", weyl_ok, String::new()));

    // marks matrix is invertible with positive diagonal,
    // top row given by index
    let marks = model.marks();
    let diag_ok = (0..marks.len()).all(|i| {
        marks.entry(i, i) > &gmodel_core::ratmat::rat(0)
    });
    checks.push(check(
        "marks-diagonal",
        diag_ok && marks.entries().is_invertible(),
        String::new(),
    ));

    // idempotents: orthogonal, sum to the unit, 0/1 marks vectors
    let mut idem_ok = true;
    let mut idem_detail = String::new();
    let mut sum = BurnsideElement::zero(model.len());
    for (i, f) in model.factors().iter().enumerate() {
        sum = sum.add(&f.idempotent);
        let mv = marks_hom(marks, &f.idempotent);
        if !mv
            .iter()
            .all(|x| x == &gmodel_core::ratmat::rat(0) || x == &gmodel_core::ratmat::rat(1))
        {
            idem_ok = false;
            let _ = write!(idem_detail, "class {i}: marks vector not 0/1; ");
        }
        for (j, f2) in model.factors().iter().enumerate() {
            let prod = burnside_multiply(marks, &f.idempotent, &f2.idempotent)
                .expect("same class table");
            let expected = if i == j {
                f.idempotent.clone()
            } else {
                BurnsideElement::zero(model.len())
            };
            if prod != expected {
                idem_ok = false;
                let _ = write!(idem_detail, "e_{i} * e_{j} wrong; ");
            }
        }
    }
    if sum != burnside_unit(marks) {
        idem_ok = false;
        idem_detail.push_str("idempotents do not sum to the unit");
    }
    checks.push(check("burnside-idempotents", idem_ok, idem_detail));

    // model consistency: unit endomorphisms vs Weyl orders vs class count
    let cons = consistency_report(&model);
    checks.push(check(
        "model-consistency",
        cons.consistent(),
        format!(
            "unit endo dim {} vs sum of Weyl orders {}",
            cons.unit_endo_dim, cons.sum_weyl_orders
        ),
    ));

    // endomorphism rings of the generators are the Weyl group algebras
    let mut endo_ok = true;
    let mut endo_detail = String::new();
    for i in 0..model.len() {
        let r = endomorphism_check(&model, i).expect("class in range");
        if !r.is_group_algebra() {
            endo_ok = false;
            let _ = write!(
                endo_detail,
                "class {i}: dim {} vs |W| {}; ",
                r.dim, r.weyl_order
            );
        }
    }
    checks.push(check("endomorphism-rings", endo_ok, endo_detail));

    // homology commutes with fixed points on seeded random complexes
    let mut rng = SplitMix64::new(seed ^ group.order() as u64);
    let mut hfix_ok = true;
    let mut hfix_detail = String::new();
    for t in 0..3 {
        let x = rand_complex(&group, &mut rng, -1, 2);
        let route_a = homology_dims(&fixed_points(&x).0);
        let route_b = {
            let h = homology(&x).0;
            fixed_points(&h).0.dims()
        };
        if route_a != route_b {
            hfix_ok = false;
            let _ = write!(hfix_detail, "trial {t}: {route_a:?} vs {route_b:?}; ");
        }
    }
    checks.push(check("homology-fixed-points", hfix_ok, hfix_detail));

    // generator adjunction spot-checks on the small factors
    let mut adj_ok = true;
    let mut adj_detail = String::new();
    for (i, f) in model.factors().iter().enumerate() {
        if f.weyl.order() > 4 {
            continue;
        }
        for a in 0..f.ea.n_objects().min(3) {
            if f.weyl.order().pow(a as u32) > 64 {
                continue;
            }
            match unit_free_is_iso(&f.ea, a) {
                Ok(true) => {}
                other => {
                    adj_ok = false;
                    let _ = write!(adj_detail, "class {i} object {a}: {other:?}; ");
                }
            }
        }
        let x = rand_complex(&f.weyl, &mut rng, 0, 1);
        match counit_generators(&x, &f.ea) {
            Ok((_, eps)) => {
                if !gmodel_core::chain::is_quasi_iso(&eps) {
                    adj_ok = false;
                    let _ = write!(adj_detail, "class {i}: counit not a quasi-iso; ");
                }
            }
            Err(e) => {
                adj_ok = false;
                let _ = write!(adj_detail, "class {i}: {e}; ");
            }
        }
    }
    checks.push(check("generator-adjunction", adj_ok, adj_detail));

    // formality zig-zag is trivial on the combinatorial factors: both
    // legs of the connective-cover span are quasi-isomorphisms
    let mut zz_ok = true;
    for f in model.factors() {
        let (_, i_leg, p_leg) = gmodel_core::dg::connective_cover_category(&f.ea);
        let li = gmodel_core::dg::is_quasi_isomorphism(&i_leg).unwrap_or(false);
        let lp = gmodel_core::dg::is_quasi_isomorphism(&p_leg).unwrap_or(false);
        if !(li && lp) {
            zz_ok = false;
        }
    }
    checks.push(check("formality-zigzag", zz_ok, String::new()));

    Ok(checks)
}

/// Run the invariant suite over one group or the whole corpus. Returns
/// the JSON report and whether everything passed.
pub fn verify_report(
    group: Option<&str>,
    n_max: usize,
    seed: u64,
) -> Result<(Value, bool), CliError> {
    let names: Vec<&str> = match group {
        Some(g) => vec![g],
        None => CORPUS.to_vec(),
    };
    let mut groups = Vec::new();
    let mut all_pass = true;
    let mut first_failure: Option<String> = None;
    for name in names {
        let checks = verify_group(name, n_max, seed)?;
        for c in &checks {
            if !c.pass {
                all_pass = false;
                if first_failure.is_none() {
                    first_failure = Some(format!("{name}: {}: {}", c.name, c.detail));
                }
            }
        }
        groups.push(json!({
            "group": name,
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
            })).collect::<Vec<_>>(),
        }));
    }
    let report = json!({
        "seed": seed,
        "n_max": n_max,
        "groups": groups,
        "all_pass": all_pass,
        "first_failure": first_failure,
    });
    Ok((report, all_pass))
}

/// A deterministic, schema-stable rendering: sorted keys (serde_json's
/// default map), two-space indent, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

// re-exported for integration tests
pub use gmodel_core as core;
