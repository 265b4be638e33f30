//! End-to-end acceptance suite over the whole group corpus. Every
//! numbered criterion prints exactly one pass/fail line; the test fails
//! if any criterion does.

use std::collections::BTreeSet;
use std::panic;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use gmodel_cli::CORPUS;
use gmodel_core::burnside::{
    burnside_multiply, family_idempotent, idempotent, marks_hom, restriction, table_of_marks,
    unit, BurnsideElement,
};
use gmodel_core::chain::{
    cokernel, direct_sum, disk_of, fixed_points, generating_cofibration, homology, homology_dims,
    homotopy_hom, is_quasi_iso, pushout_product, sphere, tensor, tensor_maps, associator,
    ChainMap, Complex,
};
use gmodel_core::dg::{
    build_ea, connective_cover_category, ea_over_weyl, endo_category, is_quasi_isomorphism,
    to_explicit, DgCategory,
};
use gmodel_core::dgmod::{
    counit_generators, coyoneda, dense_module, free_module, is_iso_chainmap, monoidality_check,
    underhom_generators, unit_free_is_iso, DGModule,
};
use gmodel_core::lattice::{conjugacy_classes_of_subgroups, family_below, is_subconjugate, weyl_group};
use gmodel_core::model::{build_model, endomorphism_check, homotopy_classes, ModelObject};
use gmodel_core::perm::{named_group, FiniteGroup};
use gmodel_core::ratmat::rat;
use gmodel_core::rep::GRepresentation;
use gmodel_core::sample::{
    rand_complex, rand_small_complex, rand_small_complex_from, scramble, small_rep_candidates,
    SplitMix64,
};

fn groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    CORPUS
        .iter()
        .map(|&n| (n, named_group(n).expect("corpus group")))
        .collect()
}

fn nonzero(v: &[(i64, usize)]) -> Vec<(i64, usize)> {
    v.iter().copied().filter(|&(_, d)| d > 0).collect()
}

fn c01_burnside_splitting() -> String {
    let mut worst = 0.0f64;
    for (name, g) in groups() {
        let t = Instant::now();
        let marks = table_of_marks(&g);
        let n = marks.len();
        let es: Vec<BurnsideElement> =
            (0..n).map(|c| idempotent(&marks, c).unwrap()).collect();
        let mut sum = BurnsideElement::zero(n);
        for (i, e) in es.iter().enumerate() {
            sum = sum.add(e);
            for (j, f) in es.iter().enumerate() {
                let p = burnside_multiply(&marks, e, f).unwrap();
                let expect = if i == j {
                    e.coeffs.clone()
                } else {
                    vec![rat(0); n]
                };
                assert_eq!(p.coeffs, expect, "{name}: e_{i} * e_{j}");
            }
        }
        assert_eq!(sum.coeffs, unit(&marks).coeffs, "{name}: sum of idempotents");
        let secs = t.elapsed().as_secs_f64();
        assert!(secs < 5.0, "{name}: splitting took {secs:.2}s");
        worst = worst.max(secs);
    }
    format!("exact splitting for all {} groups, slowest {worst:.2}s", CORPUS.len())
}

fn c02_restriction_vanishing() -> String {
    let mut pairs = 0usize;
    for (name, g) in groups() {
        let marks = table_of_marks(&g);
        let classes = marks.classes();
        for (hc, h) in classes.classes().iter().enumerate() {
            let e = idempotent(&marks, hc).unwrap();
            for k in classes.subgroups() {
                if !is_subconjugate(&g, k, h, true) {
                    continue;
                }
                let (_, r) = restriction(&marks, k, &e);
                assert!(
                    r.coeffs.iter().all(|c| *c == rat(0)),
                    "{name}: restriction of e_(class {hc}) to |K|={}",
                    k.order()
                );
                pairs += 1;
            }
        }
    }
    format!("{pairs} strictly subconjugate pairs all restrict to zero")
}

fn c03_family_idempotents() -> String {
    let mut checks = 0usize;
    for (name, g) in groups() {
        let marks = table_of_marks(&g);
        let n = marks.len();
        for h in marks.classes().classes() {
            for strict in [false, true] {
                let fam = family_below(marks.classes(), h, strict);
                let mut manual = BurnsideElement::zero(n);
                for &c in &fam {
                    manual = manual.add(&idempotent(&marks, c).unwrap());
                }
                let fi = family_idempotent(&marks, h, strict).unwrap();
                assert_eq!(fi.coeffs, manual.coeffs, "{name}: |H|={}", h.order());
                // dual route: marks vector is the family indicator
                let mv = marks_hom(&marks, &fi);
                for c in 0..n {
                    let expect = rat(fam.contains(&c) as i64);
                    assert_eq!(mv[c], expect, "{name}: marks of family |H|={}", h.order());
                }
                checks += 1;
            }
        }
    }
    format!("{checks} families, both routes agree")
}

fn c04_pushout_product_cokernel() -> String {
    for (name, g) in groups() {
        let f = generating_cofibration(&g, 0);
        let p = pushout_product(&f, &f).unwrap();
        p.validate().unwrap();
        let cok = cokernel(&p).trimmed();
        assert_eq!(cok.total_dim(), g.order() * g.order(), "{name}: cokernel dim");
        assert_eq!(cok.dims().len(), 1, "{name}: cokernel concentration");
        let rep = cok.term(cok.lo()).unwrap();
        // rank of the averaging projector is its trace (it is idempotent)
        let avg = rep.average_projector();
        let mut tr = rat(0);
        for i in 0..avg.rows() {
            tr = tr + avg.at(i, i).clone();
        }
        assert_eq!(tr, rat(g.order() as i64), "{name}: projector rank");
        if g.order() <= 12 {
            // small groups: rank recomputed by row reduction
            assert_eq!(rep.fixed_subspace().cols(), g.order(), "{name}: fixed rank");
        }
    }
    format!("cokernel |G|^2 and projector rank |G| for all {} groups", CORPUS.len())
}

fn c05_fixed_points_homology() -> String {
    let t0 = Instant::now();
    let mut total = 0usize;
    for (name, g) in groups() {
        let mut rng = SplitMix64::new(5 ^ g.order() as u64);
        let cands = small_rep_candidates(&g, 6);
        for _ in 0..100 {
            let x = rand_small_complex_from(&cands, &g, &mut rng, -2, 2, 6);
            let lhs = homology_dims(&fixed_points(&x).0);
            let rhs = fixed_points(&homology(&x).0).0.dims();
            assert_eq!(nonzero(&lhs), nonzero(&rhs), "{name}");
            total += 1;
        }
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < 30.0, "suite took {secs:.1}s");
    format!("{total} complexes in {secs:.1}s")
}

fn c06_generator_lemma() -> String {
    let mut total = 0usize;
    for (name, g) in groups() {
        let mut rng = SplitMix64::new(6 ^ g.order() as u64);
        let cands = small_rep_candidates(&g, 6);
        let s = sphere(&g, 0);
        for _ in 0..100 {
            let x = rand_small_complex_from(&cands, &g, &mut rng, -2, 2, 6);
            let lhs = homotopy_hom(&s, &x);
            assert_eq!(nonzero(&lhs), nonzero(&homology_dims(&x)), "{name}");
            total += 1;
        }
    }
    format!("{total} complexes")
}

fn c07_formality_zigzag() -> String {
    let mut legs = 0usize;
    for (name, g) in groups() {
        let classes = conjugacy_classes_of_subgroups(&g);
        for h in classes.classes() {
            let ea = build_ea(&g, h, 3);
            let (_, i_leg, p_leg) = connective_cover_category(&ea);
            assert!(is_quasi_isomorphism(&i_leg).unwrap(), "{name}: leg i");
            assert!(is_quasi_isomorphism(&p_leg).unwrap(), "{name}: leg p");
            legs += 2;
            let small = match &ea {
                DgCategory::Ea(e) => e.weyl().order() <= 2,
                DgCategory::Explicit(_) => false,
            };
            if small {
                // materialized route: the cover legs recomputed homwise
                let ex = DgCategory::Explicit(to_explicit(&ea));
                let (_, i2, p2) = connective_cover_category(&ex);
                assert!(is_quasi_isomorphism(&i2).unwrap(), "{name}: explicit leg i");
                assert!(is_quasi_isomorphism(&p2).unwrap(), "{name}: explicit leg p");
                legs += 2;
            }
        }
    }
    // negative control: homology in degree -1 breaks the zig-zag
    let t = FiniteGroup::trivial();
    let x = direct_sum(&sphere(&t, 0), &sphere(&t, -1)).0;
    let ex = DgCategory::Explicit(endo_category(&[x]));
    let (_, i_leg, p_leg) = connective_cover_category(&ex);
    let li = is_quasi_isomorphism(&i_leg).unwrap();
    let lp = is_quasi_isomorphism(&p_leg).unwrap();
    assert!(!(li && lp), "negative control passed both legs");
    format!("{legs} legs quasi-iso, negative control fails")
}

fn c08_endomorphism_rings() -> String {
    let mut rings = 0usize;
    for (name, g) in groups() {
        let model = build_model(&g, 1).unwrap();
        for c in 0..model.len() {
            let r = endomorphism_check(&model, c).unwrap();
            assert!(r.table_matches, "{name} class {c}: table");
            assert_eq!(r.dim, model.factors()[c].weyl.order(), "{name} class {c}: dim");
            assert!(r.is_group_algebra(), "{name} class {c}");
            rings += 1;
        }
    }
    format!("{rings} endomorphism rings match their group algebras")
}

fn distinct_weyl_groups() -> Vec<Arc<FiniteGroup>> {
    let mut sigs = BTreeSet::new();
    let mut weyls = Vec::new();
    for (_, g) in groups() {
        let classes = conjugacy_classes_of_subgroups(&g);
        for h in classes.classes() {
            let w = weyl_group(&g, h);
            let mut orders: Vec<usize> = (0..w.order()).map(|x| w.element_order(x)).collect();
            orders.sort_unstable();
            if sigs.insert((w.order(), orders)) {
                weyls.push(w);
            }
        }
    }
    weyls
}

fn morita_suite(n_max: usize, budget: f64) -> String {
    let t0 = Instant::now();
    let weyls = distinct_weyl_groups();
    let mut rng = SplitMix64::new(909 + n_max as u64);
    let mut counits = 0usize;
    let mut units = 0usize;
    for w in &weyls {
        let base = ea_over_weyl(w.clone(), n_max);
        let cands = small_rep_candidates(w, 4);
        for _ in 0..50 {
            let x = rand_small_complex_from(&cands, w, &mut rng, -1, 1, 4);
            let (_, eval) = counit_generators(&x, &base).unwrap();
            assert!(is_quasi_iso(&eval), "counit at |W|={}", w.order());
            counits += 1;
        }
        for a in 0..base.n_objects() {
            assert!(
                unit_free_is_iso(&base, a).unwrap(),
                "unit at |W|={} object {a}",
                w.order()
            );
            units += 1;
        }
    }
    // constructed monoidality isomorphisms; the box product and its
    // coend are materialized over all objects, which grows like
    // |W|^(2 n_max), so stay with the smallest Weyl groups and the
    // truncation that holds every box product drawn here (a + b <= 2)
    let small: Vec<_> = weyls.iter().filter(|w| w.order() <= 2).cloned().collect();
    let mut pairs = 0usize;
    for k in 0..20usize {
        let w = small[rng.below(small.len())].clone();
        let base = ea_over_weyl(w.clone(), 2);
        let pick = |rng: &mut SplitMix64| -> DGModule {
            match rng.below(3) {
                0 => free_module(&base, 0).unwrap(),
                1 => free_module(&base, 1).unwrap(),
                _ => underhom_generators(&rand_small_complex(&w, rng, 0, 1, 2), &base).unwrap(),
            }
        };
        let m = pick(&mut rng);
        let n = pick(&mut rng);
        let rep = monoidality_check(&m, &n, true).unwrap();
        assert_eq!(nonzero(&rep.lhs_dims), nonzero(&rep.rhs_dims), "pair {k}: dims");
        assert!(rep.iso, "pair {k}: constructed iso at |W|={}", w.order());
        pairs += 1;
    }
    let secs = t0.elapsed().as_secs_f64();
    assert!(secs < budget, "{secs:.1}s over the {budget:.0}s budget");
    format!(
        "{counits} counits, {units} unit objects, {pairs} monoidality pairs ({} Weyl groups) in {secs:.1}s",
        weyls.len()
    )
}

fn c09_morita_adjunction() -> String {
    let fast = morita_suite(2, 60.0);
    let deep = morita_suite(3, 600.0);
    format!("n_max=2: {fast}; n_max=3: {deep}")
}

fn small_piece(t: &Arc<FiniteGroup>, rng: &mut SplitMix64, lo: i64) -> Complex {
    let base = match rng.below(3) {
        0 => sphere(t, lo),
        1 => disk_of(GRepresentation::trivial(t.clone(), 1), lo + 1),
        _ => direct_sum(&sphere(t, lo), &sphere(t, lo + 1)).0,
    };
    scramble(&base, rng)
}

fn tensor_module_by(m: &DGModule, x: &Complex) -> DGModule {
    let k = m.n_objects();
    let values: Vec<Complex> = (0..k).map(|a| tensor(x, &m.value(a))).collect();
    let actions: Vec<Vec<ChainMap>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let e = m.base().hom(a, b);
                    tensor_maps(&ChainMap::identity(x), &m.action(a, b))
                        .compose(&associator(x, &m.value(b), &e))
                })
                .collect()
        })
        .collect();
    dense_module(m.base(), values, actions).unwrap()
}

fn c10_coyoneda_fubini() -> String {
    let t = FiniteGroup::trivial();
    let mut rng = SplitMix64::new(1010);
    for trial in 0..50usize {
        let nobj = 1 + rng.below(3);
        let xs: Vec<Complex> = (0..nobj)
            .map(|_| {
                let lo = -(rng.below(2) as i64);
                small_piece(&t, &mut rng, lo)
            })
            .collect();
        let cat = DgCategory::Explicit(endo_category(&xs));
        let m = if rng.below(4) == 0 {
            free_module(&cat, rng.below(nobj)).unwrap()
        } else {
            // a genuinely non-free module: hom(-, Y) through the
            // enlarged endomorphism category
            let y = small_piece(&t, &mut rng, 0);
            let mut all = xs.clone();
            all.push(y);
            let big = endo_category(&all);
            let values: Vec<Complex> = (0..nobj).map(|a| big.homs[a][nobj].clone()).collect();
            let actions: Vec<Vec<ChainMap>> = (0..nobj)
                .map(|a| (0..nobj).map(|b| big.compose[a][b][nobj].clone()).collect())
                .collect();
            dense_module(&cat, values, actions).unwrap()
        };
        for b0 in 0..nobj {
            let (res, canonical) = coyoneda(&m, b0).unwrap();
            assert_eq!(res.complex.dims(), m.value(b0).dims(), "trial {trial} object {b0}");
            assert!(is_iso_chainmap(&canonical), "trial {trial} object {b0}");
        }
    }
    // Fubini: iterated coends factor through either order
    let mut fubini = 0usize;
    for _ in 0..10usize {
        let xs = [sphere(&t, 0), small_piece(&t, &mut rng, 0)];
        let ys = [sphere(&t, 0), small_piece(&t, &mut rng, -1)];
        let c = DgCategory::Explicit(endo_category(&xs));
        let d = DgCategory::Explicit(endo_category(&ys));
        let mc = free_module(&c, rng.below(2)).unwrap();
        let md = free_module(&d, rng.below(2)).unwrap();
        let (rc, _) = coyoneda(&mc, 0).unwrap();
        let (rd, _) = coyoneda(&md, 0).unwrap();
        let (r1, _) = coyoneda(&tensor_module_by(&mc, &rd.complex), 0).unwrap();
        let (r2, _) = coyoneda(&tensor_module_by(&md, &rc.complex), 0).unwrap();
        assert_eq!(r1.complex.dims(), r2.complex.dims(), "fubini");
        fubini += 1;
    }
    format!("50 co-Yoneda collapses exact, {fubini} Fubini agreements")
}

fn c11_classification_crosscheck() -> String {
    let mut pairs = 0usize;
    for name in ["symmetric-3", "klein-4"] {
        let g = named_group(name).unwrap();
        let model = build_model(&g, 1).unwrap();
        let mut rng = SplitMix64::new(1111);
        for _ in 0..50usize {
            let x = ModelObject {
                components: model
                    .factors()
                    .iter()
                    .map(|f| rand_complex(&f.weyl, &mut rng, -1, 1))
                    .collect(),
            };
            let y = ModelObject {
                components: model
                    .factors()
                    .iter()
                    .map(|f| rand_complex(&f.weyl, &mut rng, 0, 2))
                    .collect(),
            };
            let hc = homotopy_classes(&model, &x, &y).unwrap();
            for (i, per) in hc.per_class.iter().enumerate() {
                let oracle = homotopy_hom(&x.components[i], &y.components[i]);
                assert_eq!(per, &oracle, "{name} class {i}");
            }
            pairs += 1;
        }
    }
    format!("{pairs} object pairs agree degreewise")
}

fn c12_determinism() -> String {
    let exe = env!("CARGO_BIN_EXE_gmodel");
    let run = || {
        Command::new(exe)
            .args(["--nmax", "2", "--seed", "11", "verify"])
            .output()
            .expect("verify run")
    };
    let a = run();
    let b = run();
    assert!(a.status.success(), "verify failed: {}", String::from_utf8_lossy(&a.stderr));
    assert!(!a.stdout.is_empty(), "verify produced no output");
    assert_eq!(a.stdout, b.stdout, "verify output differs between runs");
    format!("{} bytes, byte-identical", a.stdout.len())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> String)> = vec![
        ("burnside-splitting", c01_burnside_splitting),
        ("restriction-vanishing", c02_restriction_vanishing),
        ("family-idempotents", c03_family_idempotents),
        ("pushout-product-cokernel", c04_pushout_product_cokernel),
        ("fixed-points-homology", c05_fixed_points_homology),
        ("generator-lemma", c06_generator_lemma),
        ("formality-zigzag", c07_formality_zigzag),
        ("endomorphism-rings", c08_endomorphism_rings),
        ("morita-adjunction", c09_morita_adjunction),
        ("coyoneda-fubini", c10_coyoneda_fubini),
        ("classification-crosscheck", c11_classification_crosscheck),
        ("determinism", c12_determinism),
    ];
    let mut failures = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match panic::catch_unwind(f) {
            Ok(detail) => println!(
                "criterion {:02} {name}: pass ({:.1}s) {detail}",
                i + 1,
                t.elapsed().as_secs_f64()
            ),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!(
                    "criterion {:02} {name}: fail ({:.1}s) {msg}",
                    i + 1,
                    t.elapsed().as_secs_f64()
                );
                failures.push(format!("{name}: {msg}"));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:#?}");
}
