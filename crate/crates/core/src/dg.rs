//! Chain-complex-enriched categories. Two representations share one
//! interface: small explicit categories carry dense hom complexes and
//! composition matrices, while the categories `E_a^H` on the tensor powers
//! of `QW` are kept combinatorially — their homs have a basis of `W`-orbits
//! on pairs of tuples, so composition never materializes matrices whose
//! size grows like `|W|^{i+j}` squared.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::{
    associator, concentrated, homology_data, insert_left, insert_right, is_quasi_iso, tensor,
    tensor_maps, ChainMap, Complex,
};
use crate::lattice::{weyl_group, Subgroup};
use crate::perm::FiniteGroup;
use crate::ratmat::{quotient_by_columns, rat, QMat};
use crate::rep::GRepresentation;

#[derive(Debug)]
pub enum DgError {
    UnknownObject { index: usize, objects: usize },
    InvalidFunctor(String),
}

impl fmt::Display for DgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DgError::UnknownObject { index, objects } => {
                write!(f, "object {index} out of range ({objects} objects)")
            }
            DgError::InvalidFunctor(why) => write!(f, "invalid enriched functor: {why}"),
        }
    }
}

/// One `W`-orbit of pairs of tuples, the basis elements of
/// `hom((QW)^{(x)i}, (QW)^{(x)j})^W`. The orbit of `(src, dst)` under
/// simultaneous left translation; stored normalized so the first entry of
/// `src ++ dst` is the identity (the action on nonempty pairs is free).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EaOrbit {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
}

/// Formal integer combination of orbits, the result of composing or
/// tensoring basis elements.
pub type EaCombo = BTreeMap<EaOrbit, i64>;

fn combo_add(acc: &mut EaCombo, orbit: EaOrbit, coeff: i64) {
    use alloc::collections::btree_map::Entry;
    match acc.entry(orbit) {
        Entry::Vacant(v) => {
            if coeff != 0 {
                v.insert(coeff);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if *o.get() == 0 {
                o.remove();
            }
        }
    }
}

/// The category `E_a = E_{a}^{H}` on objects `(QW)^{(x)i}`, `0 <= i <=
/// n_max`, for `W` the Weyl group. Homs are concentrated in degree 0 with
/// zero differential.
#[derive(Clone)]
pub struct EaCategory {
    weyl: Arc<FiniteGroup>,
    n_max: usize,
}

impl EaCategory {
    pub fn new(weyl: Arc<FiniteGroup>, n_max: usize) -> Self {
        EaCategory { weyl, n_max }
    }

    pub fn weyl(&self) -> &Arc<FiniteGroup> {
        &self.weyl
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn n_objects(&self) -> usize {
        self.n_max + 1
    }

    /// `|W|^{i+j-1}` for `i + j >= 1`, else 1.
    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        if i + j == 0 {
            1
        } else {
            self.weyl.order().pow((i + j - 1) as u32)
        }
    }

    pub fn normalize(&self, src: Vec<usize>, dst: Vec<usize>) -> EaOrbit {
        let first = src.first().or_else(|| dst.first()).copied();
        match first {
            None => EaOrbit { src, dst },
            Some(f) => {
                let fi = self.weyl.inverse_of(f);
                EaOrbit {
                    src: src.iter().map(|&x| self.weyl.mul(fi, x)).collect(),
                    dst: dst.iter().map(|&x| self.weyl.mul(fi, x)).collect(),
                }
            }
        }
    }

    /// Index of a normalized orbit in the canonical basis order: the
    /// remaining coordinates read as base-`|W|` digits, most significant
    /// first.
    pub fn index_of(&self, o: &EaOrbit) -> usize {
        let mut idx = 0usize;
        for &x in o.src.iter().chain(o.dst.iter()).skip(1) {
            idx = idx * self.weyl.order() + x;
        }
        idx
    }

    pub fn orbit_at(&self, i: usize, j: usize, mut idx: usize) -> EaOrbit {
        let w = self.weyl.order();
        let len = i + j;
        let mut digits = vec![0usize; len];
        if len > 0 {
            for k in (1..len).rev() {
                digits[k] = idx % w;
                idx /= w;
            }
            digits[0] = self.weyl.identity_index();
        }
        EaOrbit {
            src: digits[..i].to_vec(),
            dst: digits[i..].to_vec(),
        }
    }

    /// Composition `hom(b,c) x hom(a,b) -> hom(a,c)` on basis orbits.
    /// Through a positive middle object the composite is zero or a single
    /// orbit; through object 0 it is a sum over `W`.
    pub fn compose_orbits(&self, f1: &EaOrbit, f2: &EaOrbit) -> EaCombo {
        assert_eq!(f1.src.len(), f2.dst.len(), "middle objects differ");
        let mut out = EaCombo::new();
        if !f2.dst.is_empty() {
            // solve h . f1.src = f2.dst; free action makes h unique if any
            let h = self.weyl.mul(f2.dst[0], self.weyl.inverse_of(f1.src[0]));
            let consistent = f1
                .src
                .iter()
                .zip(f2.dst.iter())
                .all(|(&p, &v)| self.weyl.mul(h, p) == v);
            if consistent {
                // landing in hom(0,0) the |W| translates all give the same
                // rank-one matrix, so the scalar is the group order
                let coeff = if f2.src.is_empty() && f1.dst.is_empty() {
                    self.weyl.order() as i64
                } else {
                    1
                };
                let dst = f1.dst.iter().map(|&q| self.weyl.mul(h, q)).collect();
                combo_add(&mut out, self.normalize(f2.src.clone(), dst), coeff);
            }
        } else if f2.src.is_empty() {
            // f2 is the basis element of hom(0,0) or hom(a,0) with a = 0
            combo_add(&mut out, f1.clone(), 1);
        } else if f1.dst.is_empty() {
            combo_add(&mut out, f2.clone(), 1);
        } else {
            // through object 0: sum over relative translations
            for t in 0..self.weyl.order() {
                let dst: Vec<usize> = f1.dst.iter().map(|&q| self.weyl.mul(t, q)).collect();
                combo_add(&mut out, self.normalize(f2.src.clone(), dst), 1);
            }
        }
        out
    }

    /// The identity of object `i` as a combination of orbits (the
    /// `|W|^{i-1}` diagonal orbits; one empty orbit for `i = 0`).
    pub fn identity_combo(&self, i: usize) -> EaCombo {
        let mut out = EaCombo::new();
        if i == 0 {
            combo_add(
                &mut out,
                EaOrbit {
                    src: Vec::new(),
                    dst: Vec::new(),
                },
                1,
            );
            return out;
        }
        for idx in 0..self.weyl.order().pow((i - 1) as u32) {
            let half = self.orbit_at(i, 0, idx).src;
            combo_add(
                &mut out,
                EaOrbit {
                    src: half.clone(),
                    dst: half,
                },
                1,
            );
        }
        out
    }

    /// Monoidal structure on basis orbits: the image of
    /// `f (x) g` under `hom(a,c) (x) hom(b,d) -> hom(a+b, c+d)`.
    pub fn tensor_orbits(&self, f: &EaOrbit, g: &EaOrbit) -> EaCombo {
        let mut out = EaCombo::new();
        if f.src.is_empty() && f.dst.is_empty() {
            combo_add(&mut out, g.clone(), 1);
        } else if g.src.is_empty() && g.dst.is_empty() {
            combo_add(&mut out, f.clone(), 1);
        } else {
            for t in 0..self.weyl.order() {
                let src: Vec<usize> = f
                    .src
                    .iter()
                    .copied()
                    .chain(g.src.iter().map(|&x| self.weyl.mul(t, x)))
                    .collect();
                let dst: Vec<usize> = f
                    .dst
                    .iter()
                    .copied()
                    .chain(g.dst.iter().map(|&x| self.weyl.mul(t, x)))
                    .collect();
                combo_add(&mut out, self.normalize(src, dst), 1);
            }
        }
        out
    }

    /// The symmetry cycle `sigma_{a,b}` in `hom(a+b, a+b)`: the map
    /// swapping the first `a` with the last `b` tensor factors.
    pub fn symmetry_combo(&self, a: usize, b: usize) -> EaCombo {
        let mut out = EaCombo::new();
        let i = a + b;
        if i == 0 {
            return self.identity_combo(0);
        }
        for idx in 0..self.weyl.order().pow((i - 1) as u32) {
            let x = self.orbit_at(i, 0, idx).src;
            let mut dst = x[a..].to_vec();
            dst.extend_from_slice(&x[..a]);
            combo_add(&mut out, self.normalize(x, dst), 1);
        }
        out
    }

    fn compose_combos(&self, f1: &EaCombo, f2: &EaCombo) -> EaCombo {
        let mut out = EaCombo::new();
        for (o1, c1) in f1 {
            for (o2, c2) in f2 {
                for (o, c) in self.compose_orbits(o1, o2) {
                    combo_add(&mut out, o, c * c1 * c2);
                }
            }
        }
        prune(out)
    }

    fn tensor_combos(&self, f: &EaCombo, g: &EaCombo) -> EaCombo {
        let mut out = EaCombo::new();
        for (o1, c1) in f {
            for (o2, c2) in g {
                for (o, c) in self.tensor_orbits(o1, o2) {
                    combo_add(&mut out, o, c * c1 * c2);
                }
            }
        }
        prune(out)
    }

    /// The orbit's matrix `sum_{(x,y) in orbit} E_{y,x}` as a dense
    /// column-major-vectorized column of `hom((QW)^i,(QW)^j)`; used to
    /// cross-check the combinatorics against genuine linear algebra.
    pub fn orbit_matrix(&self, o: &EaOrbit) -> QMat {
        let w = self.weyl.order();
        let (i, j) = (o.src.len(), o.dst.len());
        let rows = w.pow(j as u32);
        let cols = w.pow(i as u32);
        let tuple_index = |t: &[usize]| -> usize {
            t.iter().fold(0usize, |acc, &x| acc * w + x)
        };
        let mut m = QMat::zero(rows, cols);
        let orbit_size = if i + j == 0 { 1 } else { w };
        for g in 0..orbit_size {
            let x: Vec<usize> = o.src.iter().map(|&s| self.weyl.mul(g, s)).collect();
            let y: Vec<usize> = o.dst.iter().map(|&s| self.weyl.mul(g, s)).collect();
            m.set(tuple_index(&y), tuple_index(&x), rat(1));
        }
        m
    }
}

fn prune(c: EaCombo) -> EaCombo {
    c.into_iter().filter(|&(_, v)| v != 0).collect()
}

/// A small DG-category given by dense data.
#[derive(Clone)]
pub struct ExplicitDg {
    /// `homs[a][b] = E(a,b)`, complexes over the trivial group.
    pub homs: Vec<Vec<Complex>>,
    /// `compose[a][b][c]: E(b,c) (x) E(a,b) -> E(a,c)`.
    pub compose: Vec<Vec<Vec<ChainMap>>>,
    /// Degree-0 cycle in `E(a,a)` per object, as a column.
    pub identities: Vec<QMat>,
}

#[derive(Clone)]
pub enum DgCategory {
    Explicit(ExplicitDg),
    Ea(EaCategory),
}

impl DgCategory {
    pub fn n_objects(&self) -> usize {
        match self {
            DgCategory::Explicit(e) => e.homs.len(),
            DgCategory::Ea(e) => e.n_objects(),
        }
    }

    pub fn hom(&self, a: usize, b: usize) -> Complex {
        match self {
            DgCategory::Explicit(e) => e.homs[a][b].clone(),
            DgCategory::Ea(e) => concentrated(
                GRepresentation::trivial(FiniteGroup::trivial(), e.hom_dim(a, b)),
                0,
            ),
        }
    }

    /// Dense composition `E(b,c) (x) E(a,b) -> E(a,c)`. For `E_a` this
    /// materializes the orbit combinatorics; callers keep it to small homs.
    pub fn compose_map(&self, a: usize, b: usize, c: usize) -> ChainMap {
        match self {
            DgCategory::Explicit(e) => e.compose[a][b][c].clone(),
            DgCategory::Ea(e) => {
                let src = tensor(&self.hom(b, c), &self.hom(a, b));
                let tgt = self.hom(a, c);
                let (d1, d2) = (e.hom_dim(b, c), e.hom_dim(a, b));
                let mut m = QMat::zero(tgt.dim(0), d1 * d2);
                for i1 in 0..d1 {
                    let o1 = e.orbit_at(b, c, i1);
                    for i2 in 0..d2 {
                        let o2 = e.orbit_at(a, b, i2);
                        for (o, coeff) in e.compose_orbits(&o1, &o2) {
                            m.set(e.index_of(&o), i1 * d2 + i2, rat(coeff));
                        }
                    }
                }
                ChainMap::new(src, tgt, vec![m]).expect("orbit composition is a chain map")
            }
        }
    }

    pub fn identity_vector(&self, a: usize) -> QMat {
        match self {
            DgCategory::Explicit(e) => e.identities[a].clone(),
            DgCategory::Ea(e) => {
                let mut m = QMat::zero(e.hom_dim(a, a), 1);
                for (o, c) in e.identity_combo(a) {
                    m.set(e.index_of(&o), 0, rat(c));
                }
                m
            }
        }
    }

    /// Associativity, unit laws and chain-map validity of composition.
    /// For `E_a` the check runs on the orbit combinatorics over all object
    /// tuples in range.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            DgCategory::Explicit(e) => validate_explicit(e),
            DgCategory::Ea(e) => validate_ea(e),
        }
    }
}

fn maps_equal(f: &ChainMap, g: &ChainMap) -> bool {
    let lo = f.source().lo().min(g.source().lo());
    let hi = f.source().hi().max(g.source().hi());
    (lo..=hi).all(|n| f.component(n) == g.component(n))
}

fn validate_explicit(e: &ExplicitDg) -> Result<(), String> {
    let n = e.homs.len();
    for a in 0..n {
        let id = &e.identities[a];
        if !e.homs[a][a].diff(0).mul(id).is_zero() {
            return Err(format!("identity of {a} is not a cycle"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let m = &e.compose[a][b][c];
                m.validate()
                    .map_err(|err| format!("compose({a},{b},{c}): {err}"))?;
            }
            // unit laws on E(a,b)
            let hom = &e.homs[a][b];
            let right = e.compose[a][a][b]
                .compose(&insert_right(hom, &e.homs[a][a], &e.identities[a]));
            let left = e.compose[a][b][b]
                .compose(&insert_left(&e.homs[b][b], hom, &e.identities[b]));
            let id_map = ChainMap::identity(hom);
            if !maps_equal(&right, &id_map) {
                return Err(format!("right unit law fails on hom({a},{b})"));
            }
            if !maps_equal(&left, &id_map) {
                return Err(format!("left unit law fails on hom({a},{b})"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = e.compose[a][c][d]
                        .compose(&tensor_maps(
                            &ChainMap::identity(&e.homs[c][d]),
                            &e.compose[a][b][c],
                        ))
                        .compose(&associator(&e.homs[c][d], &e.homs[b][c], &e.homs[a][b]));
                    let rhs = e.compose[a][b][d].compose(&tensor_maps(
                        &e.compose[b][c][d],
                        &ChainMap::identity(&e.homs[a][b]),
                    ));
                    if !maps_equal(&lhs, &rhs) {
                        return Err(format!("associativity fails on ({a},{b},{c},{d})"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn validate_ea(e: &EaCategory) -> Result<(), String> {
    let n = e.n_objects();
    // unit laws
    for a in 0..n {
        for b in 0..n {
            for idx in 0..e.hom_dim(a, b) {
                let f = e.orbit_at(a, b, idx);
                let mut single = EaCombo::new();
                combo_add(&mut single, f.clone(), 1);
                if e.compose_combos(&single, &e.identity_combo(a)) != single {
                    return Err(format!("right unit law fails on hom({a},{b})"));
                }
                if e.compose_combos(&e.identity_combo(b), &single) != single {
                    return Err(format!("left unit law fails on hom({a},{b})"));
                }
            }
        }
    }
    // associativity on all basis triples (budget: skip when the triple
    // loop would exceed ~100k orbit products)
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let work = e.hom_dim(c, d) * e.hom_dim(b, c) * e.hom_dim(a, b);
                    if work > 100_000 {
                        continue;
                    }
                    for i1 in 0..e.hom_dim(c, d) {
                        let f = single_combo(e.orbit_at(c, d, i1));
                        for i2 in 0..e.hom_dim(b, c) {
                            let g = single_combo(e.orbit_at(b, c, i2));
                            let fg = e.compose_combos(&f, &g);
                            for i3 in 0..e.hom_dim(a, b) {
                                let h = single_combo(e.orbit_at(a, b, i3));
                                let lhs = e.compose_combos(&fg, &h);
                                let rhs = e.compose_combos(&f, &e.compose_combos(&g, &h));
                                if lhs != rhs {
                                    return Err(format!(
                                        "associativity fails on ({a},{b},{c},{d})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn single_combo(o: EaOrbit) -> EaCombo {
    let mut c = EaCombo::new();
    combo_add(&mut c, o, 1);
    c
}

/// `E_a^H` for a subgroup class of `G`: the enriched category on the
/// tensor powers of `Q W_GH`, truncated at `n_max`.
pub fn build_ea(group: &Arc<FiniteGroup>, h: &Subgroup, n_max: usize) -> DgCategory {
    let w = weyl_group(group, h);
    DgCategory::Ea(EaCategory::new(w, n_max))
}

/// Same category over an explicitly given Weyl group.
pub fn ea_over_weyl(weyl: Arc<FiniteGroup>, n_max: usize) -> DgCategory {
    DgCategory::Ea(EaCategory::new(weyl, n_max))
}

/// Densify an `E_a` category; only sensible for small `|W|` and `n_max`.
pub fn to_explicit(e: &DgCategory) -> ExplicitDg {
    let n = e.n_objects();
    let homs: Vec<Vec<Complex>> = (0..n)
        .map(|a| (0..n).map(|b| e.hom(a, b)).collect())
        .collect();
    let compose = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| e.compose_map(a, b, c)).collect())
                .collect()
        })
        .collect();
    let identities = (0..n).map(|a| e.identity_vector(a)).collect();
    ExplicitDg {
        homs,
        compose,
        identities,
    }
}

/// The full enriched endomorphism category of a list of complexes over the
/// trivial group: `E(a,b) = hom(X_a, X_b)` with genuine composition.
pub fn endo_category(xs: &[Complex]) -> ExplicitDg {
    let n = xs.len();
    let homs: Vec<Vec<Complex>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| crate::chain::hom_complex(&xs[a], &xs[b]))
                .collect()
        })
        .collect();
    // per hom complex, the offset of block k (maps out of X_a^{(k)}) in
    // degree n, plus dims — recomputed on demand
    let block_off = |a: usize, b: usize, deg: i64, k: i64| -> usize {
        (xs[a].lo()..k)
            .map(|k2| xs[a].dim(k2) * xs[b].dim(deg + k2))
            .sum()
    };
    let mut compose = Vec::new();
    for a in 0..n {
        let mut ca = Vec::new();
        for b in 0..n {
            let mut cab = Vec::new();
            for c in 0..n {
                let bc = &homs[b][c];
                let ab = &homs[a][b];
                let ac = &homs[a][c];
                let src = tensor(bc, ab);
                let comps = (src.lo()..=src.hi())
                    .map(|deg| {
                        let mut m = QMat::zero(ac.dim(deg), src.dim(deg));
                        let mut toff = 0usize; // offset of the (p, deg-p) block
                        for p in crate::chain::tensor_blocks(bc, ab, deg) {
                            let q = deg - p;
                            // F: X_b^{(k)} -> X_c^{(k+p)}, G: X_a^{(l)} -> X_b^{(l+q)},
                            // composable when k = l + q
                            for l in xs[a].lo()..=xs[a].hi() {
                                let k = l + q;
                                let (da, db, dc) =
                                    (xs[a].dim(l), xs[b].dim(k), xs[c].dim(k + p));
                                if da * db * dc == 0 {
                                    continue;
                                }
                                let f_off = block_off(b, c, p, k);
                                let g_off = block_off(a, b, q, l);
                                let h_off = block_off(a, c, deg, l);
                                for r in 0..dc {
                                    for t in 0..db {
                                        for s in 0..da {
                                            // vec is column-major per block
                                            let fi = f_off + t * dc + r;
                                            let gi = g_off + s * db + t;
                                            let hi = h_off + s * dc + r;
                                            m.set(hi, toff + fi * ab.dim(q) + gi, rat(1));
                                        }
                                    }
                                }
                            }
                            toff += bc.dim(p) * ab.dim(q);
                        }
                        m
                    })
                    .collect();
                cab.push(
                    ChainMap::new(src, ac.clone(), comps)
                        .expect("composition of graded maps is a chain map"),
                );
            }
            ca.push(cab);
        }
        compose.push(ca);
    }
    let identities = (0..n)
        .map(|a| {
            let haa = &homs[a][a];
            let mut v = QMat::zero(haa.dim(0), 1);
            for k in xs[a].lo()..=xs[a].hi() {
                let off = block_off(a, a, 0, k);
                let d = xs[a].dim(k);
                for t in 0..d {
                    v.set(off + t * d + t, 0, rat(1));
                }
            }
            v
        })
        .collect();
    ExplicitDg {
        homs,
        compose,
        identities,
    }
}

/// `(H_* E)(a,b) = H_*(E(a,b))` with the induced composition via cycle
/// representatives and class projections.
pub fn homology_category(e: &DgCategory) -> DgCategory {
    match e {
        // already formal: homs concentrated in degree 0, zero differential
        DgCategory::Ea(ea) => DgCategory::Ea(ea.clone()),
        DgCategory::Explicit(ex) => {
            let n = ex.homs.len();
            let data: Vec<Vec<_>> = (0..n)
                .map(|a| (0..n).map(|b| homology_data(&ex.homs[a][b])).collect())
                .collect();
            let class_map = |a: usize, b: usize| -> ChainMap {
                let h = &data[a][b];
                let comps = (h.complex.lo()..=h.complex.hi())
                    .map(|deg| h.classes[(deg - h.complex.lo()) as usize].clone())
                    .collect();
                ChainMap::from_parts(ex.homs[a][b].clone(), h.complex.clone(), comps)
            };
            let reps_map = |a: usize, b: usize| -> ChainMap {
                let h = &data[a][b];
                let comps = (h.complex.lo()..=h.complex.hi())
                    .map(|deg| h.reps[(deg - h.complex.lo()) as usize].clone())
                    .collect();
                ChainMap::from_parts(h.complex.clone(), ex.homs[a][b].clone(), comps)
            };
            let homs: Vec<Vec<Complex>> = (0..n)
                .map(|a| (0..n).map(|b| data[a][b].complex.clone()).collect())
                .collect();
            let compose = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            (0..n)
                                .map(|c| {
                                    class_map(a, c)
                                        .compose(&ex.compose[a][b][c])
                                        .compose(&tensor_maps(&reps_map(b, c), &reps_map(a, b)))
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let identities = (0..n)
                .map(|a| {
                    let h = &data[a][a];
                    let i0 = (0 - h.complex.lo()) as usize;
                    h.classes[i0].mul(&ex.identities[a])
                })
                .collect();
            DgCategory::Explicit(ExplicitDg {
                homs,
                compose,
                identities,
            })
        }
    }
}

#[derive(Clone)]
pub enum FunctorMaps {
    /// Hom-wise identity; legal only between structurally equal categories.
    Identity,
    /// `maps[a][b]: E(a,b) -> D(Fa,Fb)`.
    Explicit(Vec<Vec<ChainMap>>),
}

#[derive(Clone)]
pub struct EnrichedFunctor {
    pub source: DgCategory,
    pub target: DgCategory,
    pub obj_map: Vec<usize>,
    pub maps: FunctorMaps,
}

fn complexes_equal(a: &Complex, b: &Complex) -> bool {
    let lo = a.lo().min(b.lo());
    let hi = a.hi().max(b.hi());
    (lo..=hi).all(|n| a.dim(n) == b.dim(n) && a.diff(n) == b.diff(n))
}

fn categories_equal(a: &DgCategory, b: &DgCategory) -> bool {
    match (a, b) {
        (DgCategory::Ea(x), DgCategory::Ea(y)) => {
            Arc::ptr_eq(x.weyl(), y.weyl()) && x.n_max() == y.n_max()
        }
        (DgCategory::Explicit(x), DgCategory::Explicit(y)) => {
            x.homs.len() == y.homs.len()
                && (0..x.homs.len()).all(|a| {
                    (0..x.homs.len()).all(|b| complexes_equal(&x.homs[a][b], &y.homs[a][b]))
                })
                && (0..x.homs.len()).all(|a| {
                    (0..x.homs.len()).all(|b| {
                        (0..x.homs.len())
                            .all(|c| maps_equal(&x.compose[a][b][c], &y.compose[a][b][c]))
                    })
                })
                && x.identities == y.identities
        }
        _ => false,
    }
}

impl EnrichedFunctor {
    pub fn identity(e: &DgCategory) -> Self {
        EnrichedFunctor {
            source: e.clone(),
            target: e.clone(),
            obj_map: (0..e.n_objects()).collect(),
            maps: FunctorMaps::Identity,
        }
    }

    pub fn hom_map(&self, a: usize, b: usize) -> ChainMap {
        match &self.maps {
            FunctorMaps::Identity => ChainMap::identity(&self.source.hom(a, b)),
            FunctorMaps::Explicit(m) => m[a][b].clone(),
        }
    }

    /// Functor laws: hom-wise chain maps, composition and identity
    /// preservation.
    pub fn validate(&self) -> Result<(), DgError> {
        let n = self.source.n_objects();
        if self.obj_map.len() != n {
            return Err(DgError::InvalidFunctor("object map has wrong length".into()));
        }
        for &o in &self.obj_map {
            if o >= self.target.n_objects() {
                return Err(DgError::InvalidFunctor("object map out of range".into()));
            }
        }
        if let FunctorMaps::Identity = self.maps {
            if !categories_equal(&self.source, &self.target) {
                return Err(DgError::InvalidFunctor(
                    "identity maps between unequal categories".into(),
                ));
            }
            if self.obj_map.iter().enumerate().any(|(i, &o)| i != o) {
                return Err(DgError::InvalidFunctor(
                    "identity maps with nontrivial object map".into(),
                ));
            }
            return Ok(());
        }
        // explicit maps: check against dense composition; practical only
        // for small categories, which is where explicit functors live
        for a in 0..n {
            for b in 0..n {
                let f = self.hom_map(a, b);
                f.validate().map_err(|e| {
                    DgError::InvalidFunctor(format!("hom map ({a},{b}) invalid: {e}"))
                })?;
                if !complexes_equal(f.source(), &self.source.hom(a, b))
                    || !complexes_equal(
                        f.target(),
                        &self.target.hom(self.obj_map[a], self.obj_map[b]),
                    )
                {
                    return Err(DgError::InvalidFunctor(format!(
                        "hom map ({a},{b}) has wrong endpoints"
                    )));
                }
                for c in 0..n {
                    let lhs = self
                        .hom_map(a, c)
                        .compose(&self.source.compose_map(a, b, c));
                    let rhs = self
                        .target
                        .compose_map(self.obj_map[a], self.obj_map[b], self.obj_map[c])
                        .compose(&tensor_maps(&self.hom_map(b, c), &self.hom_map(a, b)));
                    if !maps_equal(&lhs, &rhs) {
                        return Err(DgError::InvalidFunctor(format!(
                            "composition not preserved on ({a},{b},{c})"
                        )));
                    }
                }
            }
            let id_img = self
                .hom_map(a, a)
                .component(0)
                .mul(&self.source.identity_vector(a));
            if id_img != self.target.identity_vector(self.obj_map[a]) {
                return Err(DgError::InvalidFunctor(format!(
                    "identity of {a} not preserved"
                )));
            }
        }
        Ok(())
    }
}

/// Object bijection plus hom-wise homology isomorphism. Invalid functor
/// data is an error, not `false`.
pub fn is_quasi_isomorphism(f: &EnrichedFunctor) -> Result<bool, DgError> {
    f.validate()?;
    let n = f.source.n_objects();
    if f.target.n_objects() != n {
        return Ok(false);
    }
    let mut seen = vec![false; n];
    for &o in &f.obj_map {
        if seen[o] {
            return Ok(false);
        }
        seen[o] = true;
    }
    if let FunctorMaps::Identity = f.maps {
        // identity maps between equal categories (validated above)
        return Ok(true);
    }
    for a in 0..n {
        for b in 0..n {
            if !is_quasi_iso(&f.hom_map(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hom-wise connective cover with the zig-zag legs
/// `E <- C_0 E -> H_0 E` of the formality argument.
pub fn connective_cover_category(
    e: &DgCategory,
) -> (DgCategory, EnrichedFunctor, EnrichedFunctor) {
    match e {
        // homs concentrated in degree 0 with zero differential: the cover
        // and the degree-0 homology category are the category itself
        DgCategory::Ea(_) => {
            let i = EnrichedFunctor::identity(e);
            let p = EnrichedFunctor::identity(e);
            (e.clone(), i, p)
        }
        DgCategory::Explicit(ex) => {
            let n = ex.homs.len();
            let covers: Vec<Vec<(Complex, ChainMap)>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| crate::chain::connective_cover(&ex.homs[a][b]))
                        .collect()
                })
                .collect();
            // factor u: T -> E(a,c) through the cover inclusion
            let factor = |u: &ChainMap, a: usize, c: usize| -> ChainMap {
                let (cov, incl) = &covers[a][c];
                let comps = (u.source().lo()..=u.source().hi())
                    .map(|deg| {
                        if deg > 0 {
                            u.component(deg)
                        } else if deg == 0 {
                            incl.component(0)
                                .solve(&u.component(0))
                                .expect("cover composition lands in degree-0 cycles")
                        } else {
                            QMat::zero(0, u.source().dim(deg))
                        }
                    })
                    .collect();
                ChainMap::from_parts(u.source().clone(), cov.clone(), comps)
            };
            let homs: Vec<Vec<Complex>> = (0..n)
                .map(|a| (0..n).map(|b| covers[a][b].0.clone()).collect())
                .collect();
            let compose: Vec<Vec<Vec<ChainMap>>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            (0..n)
                                .map(|c| {
                                    let u = ex.compose[a][b][c].compose(&tensor_maps(
                                        &covers[b][c].1,
                                        &covers[a][b].1,
                                    ));
                                    factor(&u, a, c)
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let identities: Vec<QMat> = (0..n)
                .map(|a| {
                    covers[a][a]
                        .1
                        .component(0)
                        .solve(&ex.identities[a])
                        .expect("identities are cycles")
                })
                .collect();
            let cover_cat = ExplicitDg {
                homs: homs.clone(),
                compose: compose.clone(),
                identities: identities.clone(),
            };

            // H0: quotient of the cover's degree 0 by the image of d_1
            let h0data: Vec<Vec<_>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let cov = &covers[a][b].0;
                            quotient_by_columns(cov.dim(0), &cov.diff(1))
                        })
                        .collect()
                })
                .collect();
            let h0_homs: Vec<Vec<Complex>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            concentrated(
                                GRepresentation::trivial(
                                    FiniteGroup::trivial(),
                                    h0data[a][b].dim,
                                ),
                                0,
                            )
                        })
                        .collect()
                })
                .collect();
            let h0_compose: Vec<Vec<Vec<ChainMap>>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            (0..n)
                                .map(|c| {
                                    let src = tensor(&h0_homs[b][c], &h0_homs[a][b]);
                                    let comp0 = h0data[a][c].proj.clone().mul(
                                        &compose[a][b][c].component(0).mul(
                                            &h0data[b][c]
                                                .section
                                                .kron(&h0data[a][b].section),
                                        ),
                                    );
                                    ChainMap::from_parts(src, h0_homs[a][c].clone(), vec![comp0])
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let h0_ids: Vec<QMat> = (0..n)
                .map(|a| h0data[a][a].proj.mul(&identities[a]))
                .collect();
            let h0_cat = ExplicitDg {
                homs: h0_homs.clone(),
                compose: h0_compose,
                identities: h0_ids,
            };

            let i_maps: Vec<Vec<ChainMap>> = (0..n)
                .map(|a| (0..n).map(|b| covers[a][b].1.clone()).collect())
                .collect();
            let p_maps: Vec<Vec<ChainMap>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let cov = &covers[a][b].0;
                            let comps = (cov.lo()..=cov.hi())
                                .map(|deg| {
                                    if deg == 0 {
                                        h0data[a][b].proj.clone()
                                    } else {
                                        QMat::zero(
                                            h0_homs[a][b].dim(deg),
                                            cov.dim(deg),
                                        )
                                    }
                                })
                                .collect();
                            ChainMap::from_parts(cov.clone(), h0_homs[a][b].clone(), comps)
                        })
                        .collect()
                })
                .collect();

            let cover_dg = DgCategory::Explicit(cover_cat);
            let i = EnrichedFunctor {
                source: cover_dg.clone(),
                target: e.clone(),
                obj_map: (0..n).collect(),
                maps: FunctorMaps::Explicit(i_maps),
            };
            let p = EnrichedFunctor {
                source: cover_dg.clone(),
                target: DgCategory::Explicit(h0_cat),
                obj_map: (0..n).collect(),
                maps: FunctorMaps::Explicit(p_maps),
            };
            (cover_dg, i, p)
        }
    }
}

pub struct MonoidalReport {
    pub checks: Vec<(String, bool)>,
}

impl MonoidalReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }

    pub fn first_failure(&self) -> Option<&str> {
        self.checks
            .iter()
            .find(|&&(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
    }
}

/// Monoidal coherence of `E_a`: structure maps against composition,
/// units, associativity and symmetry, exhaustively on all in-range object
/// tuples (capped per-tuple workload).
pub fn check_monoidal_ea(e: &EaCategory) -> MonoidalReport {
    let n = e.n_objects();
    let nm = e.n_max();
    let mut checks = Vec::new();

    // compatibility with composition
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for ee in 0..n {
                        for f in 0..n {
                            if a + d > nm || b + ee > nm || c + f > nm {
                                continue;
                            }
                            let work = e.hom_dim(b, c)
                                * e.hom_dim(a, b)
                                * e.hom_dim(ee, f)
                                * e.hom_dim(d, ee);
                            if work > 20_000 {
                                continue;
                            }
                            let mut ok = true;
                            'outer: for i1 in 0..e.hom_dim(b, c) {
                                let f1 = single_combo(e.orbit_at(b, c, i1));
                                for i2 in 0..e.hom_dim(a, b) {
                                    let f2 = single_combo(e.orbit_at(a, b, i2));
                                    for j1 in 0..e.hom_dim(ee, f) {
                                        let g1 = single_combo(e.orbit_at(ee, f, j1));
                                        for j2 in 0..e.hom_dim(d, ee) {
                                            let g2 = single_combo(e.orbit_at(d, ee, j2));
                                            let lhs = e.tensor_combos(
                                                &e.compose_combos(&f1, &f2),
                                                &e.compose_combos(&g1, &g2),
                                            );
                                            let rhs = e.compose_combos(
                                                &e.tensor_combos(&f1, &g1),
                                                &e.tensor_combos(&f2, &g2),
                                            );
                                            if lhs != rhs {
                                                ok = false;
                                                break 'outer;
                                            }
                                        }
                                    }
                                }
                            }
                            checks.push((
                                format!(
                                    "interchange ({a}->{b}->{c}) x ({d}->{ee}->{f})"
                                ),
                                ok,
                            ));
                        }
                    }
                }
            }
        }
    }

    // units: id_a (x) id_b = id_{a+b}
    for a in 0..n {
        for b in 0..n {
            if a + b > nm {
                continue;
            }
            let ok = e.tensor_combos(&e.identity_combo(a), &e.identity_combo(b))
                == e.identity_combo(a + b);
            checks.push((format!("unit id_{a} (x) id_{b}"), ok));
        }
    }

    // associativity of the structure maps
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a + b + c > nm {
                    continue;
                }
                let work = e.hom_dim(a, a) * e.hom_dim(b, b) * e.hom_dim(c, c);
                if work > 20_000 {
                    continue;
                }
                let mut ok = true;
                'aouter: for i1 in 0..e.hom_dim(a, a) {
                    let f = single_combo(e.orbit_at(a, a, i1));
                    for i2 in 0..e.hom_dim(b, b) {
                        let g = single_combo(e.orbit_at(b, b, i2));
                        for i3 in 0..e.hom_dim(c, c) {
                            let h = single_combo(e.orbit_at(c, c, i3));
                            let lhs = e.tensor_combos(&e.tensor_combos(&f, &g), &h);
                            let rhs = e.tensor_combos(&f, &e.tensor_combos(&g, &h));
                            if lhs != rhs {
                                ok = false;
                                break 'aouter;
                            }
                        }
                    }
                }
                checks.push((format!("associativity ({a},{b},{c})"), ok));
            }
        }
    }

    // symmetry naturality: sigma . t(f (x) g) = t(g (x) f) . sigma
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a + c > nm || b + d > nm {
                        continue;
                    }
                    let work = e.hom_dim(a, b) * e.hom_dim(c, d);
                    if work > 20_000 {
                        continue;
                    }
                    let sig_src = e.symmetry_combo(a, c);
                    let sig_dst = e.symmetry_combo(b, d);
                    let mut ok = true;
                    'souter: for i1 in 0..e.hom_dim(a, b) {
                        let f = single_combo(e.orbit_at(a, b, i1));
                        for i2 in 0..e.hom_dim(c, d) {
                            let g = single_combo(e.orbit_at(c, d, i2));
                            let lhs =
                                e.compose_combos(&sig_dst, &e.tensor_combos(&f, &g));
                            let rhs =
                                e.compose_combos(&e.tensor_combos(&g, &f), &sig_src);
                            if lhs != rhs {
                                ok = false;
                                break 'souter;
                            }
                        }
                    }
                    checks.push((format!("symmetry ({a},{b})x({c},{d})"), ok));
                }
            }
        }
    }

    MonoidalReport { checks }
}

/// Dense monoidal data for an explicit category whose homs are
/// concentrated in degree 0 (enough for densified `E_a` categories).
pub struct ExplicitMonoidal {
    pub tensor_obj: Vec<Vec<Option<usize>>>,
    /// `maps[a][b][c][d]: E(a,b) (x) E(c,d) -> E(a+c, b+d)` where defined.
    pub maps: BTreeMap<(usize, usize, usize, usize), ChainMap>,
}

/// Densify the monoidal structure of an `E_a` category.
pub fn explicit_monoidal(e: &EaCategory) -> ExplicitMonoidal {
    let n = e.n_objects();
    let cat = DgCategory::Ea(e.clone());
    let mut tensor_obj = vec![vec![None; n]; n];
    let mut maps = BTreeMap::new();
    for a in 0..n {
        for c in 0..n {
            if a + c <= e.n_max() {
                tensor_obj[a][c] = Some(a + c);
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if a + c > e.n_max() || b + d > e.n_max() {
                        continue;
                    }
                    let src = tensor(&cat.hom(a, b), &cat.hom(c, d));
                    let tgt = cat.hom(a + c, b + d);
                    let (d1, d2) = (e.hom_dim(a, b), e.hom_dim(c, d));
                    let mut m = QMat::zero(tgt.dim(0), d1 * d2);
                    for i1 in 0..d1 {
                        let o1 = e.orbit_at(a, b, i1);
                        for i2 in 0..d2 {
                            let o2 = e.orbit_at(c, d, i2);
                            for (o, coeff) in e.tensor_orbits(&o1, &o2) {
                                m.set(e.index_of(&o), i1 * d2 + i2, rat(coeff));
                            }
                        }
                    }
                    maps.insert(
                        (a, b, c, d),
                        ChainMap::from_parts(src, tgt, vec![m]),
                    );
                }
            }
        }
    }
    ExplicitMonoidal { tensor_obj, maps }
}

/// Check an explicit monoidal structure (degree-0 homs) for compatibility
/// with composition. The report names any violated tuple.
pub fn check_monoidal_explicit(ex: &ExplicitDg, m: &ExplicitMonoidal) -> MonoidalReport {
    let n = ex.homs.len();
    let mut checks = Vec::new();
    // interchange: t(f1 f2 (x) g1 g2) = t(f1 (x) g1) . t(f2 (x) g2)
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e2 in 0..n {
                        for f in 0..n {
                            let (Some(&ref t_outer), Some(&ref t_l), Some(&ref t_r)) = (
                                m.maps.get(&(a, c, d, f)),
                                m.maps.get(&(b, c, e2, f)),
                                m.maps.get(&(a, b, d, e2)),
                            ) else {
                                continue;
                            };
                            let (Some(x), Some(y), Some(z)) = (
                                m.tensor_obj[a][d],
                                m.tensor_obj[b][e2],
                                m.tensor_obj[c][f],
                            ) else {
                                continue;
                            };
                            // both sides as maps on the 4-fold tensor
                            // (E(b,c) (x) E(a,b)) (x) (E(e2,f) (x) E(d,e2))
                            let quad = tensor(
                                &tensor(&ex.homs[b][c], &ex.homs[a][b]),
                                &tensor(&ex.homs[e2][f], &ex.homs[d][e2]),
                            );
                            let lhs = t_outer
                                .component(0)
                                .mul(&ex.compose[a][b][c].component(0).kron(
                                    &ex.compose[d][e2][f].component(0),
                                ));
                            // interchange permutation on degree-0 kron factors
                            let (p, q, r, s) = (
                                ex.homs[b][c].dim(0),
                                ex.homs[a][b].dim(0),
                                ex.homs[e2][f].dim(0),
                                ex.homs[d][e2].dim(0),
                            );
                            let mut perm = QMat::zero(p * r * q * s, p * q * r * s);
                            for i1 in 0..p {
                                for i2 in 0..q {
                                    for j1 in 0..r {
                                        for j2 in 0..s {
                                            perm.set(
                                                ((i1 * r + j1) * q + i2) * s + j2,
                                                ((i1 * q + i2) * r + j1) * s + j2,
                                                rat(1),
                                            );
                                        }
                                    }
                                }
                            }
                            let rhs = ex.compose[x][y][z]
                                .component(0)
                                .mul(&t_l.component(0).kron(&t_r.component(0)))
                                .mul(&perm);
                            let ok = lhs == rhs && quad.dim(0) == p * q * r * s;
                            checks.push((
                                format!("interchange ({a},{b},{c})x({d},{e2},{f})"),
                                ok,
                            ));
                        }
                    }
                }
            }
        }
    }
    // identities tensor to identities
    for a in 0..n {
        for c in 0..n {
            let (Some(t), Some(ac)) = (m.maps.get(&(a, a, c, c)), m.tensor_obj[a][c]) else {
                continue;
            };
            let lhs = t
                .component(0)
                .mul(&ex.identities[a].kron(&ex.identities[c]));
            let ok = lhs == ex.identities[ac];
            checks.push((format!("unit id_{a} (x) id_{c}"), ok));
        }
    }
    MonoidalReport { checks }
}

pub fn check_monoidal(e: &DgCategory) -> MonoidalReport {
    match e {
        DgCategory::Ea(ea) => check_monoidal_ea(ea),
        DgCategory::Explicit(_) => MonoidalReport { checks: Vec::new() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{homology_dims, sphere};
    use crate::lattice::all_subgroups;
    use crate::perm::{named_group, Permutation};
    use crate::sample::SplitMix64;

    fn c3_in_s3() -> (Arc<FiniteGroup>, Subgroup) {
        let g = named_group("symmetric-3").unwrap();
        let c3 = Subgroup::generated(
            g.clone(),
            &[g.index_of(&Permutation::from_cycles(3, &[&[0, 1, 2]])).unwrap()],
        );
        (g, c3)
    }

    #[test]
    fn ea_hom_dims() {
        let (g, c3) = c3_in_s3();
        let e = build_ea(&g, &c3, 2);
        let DgCategory::Ea(ref ea) = e else { panic!() };
        assert_eq!(ea.weyl().order(), 2);
        assert_eq!(ea.hom_dim(0, 0), 1);
        for i in 0..=2usize {
            for j in 0..=2usize {
                if i + j >= 1 {
                    assert_eq!(ea.hom_dim(i, j), 2usize.pow((i + j - 1) as u32));
                }
            }
        }
        // dim hom(1,1) = |W| for every class of a couple of groups
        for name in ["quaternion-8", "dihedral-8"] {
            let g = named_group(name).unwrap();
            for h in all_subgroups(&g) {
                let e = build_ea(&g, &h, 1);
                let DgCategory::Ea(ref ea) = e else { panic!() };
                assert_eq!(ea.hom_dim(1, 1), ea.weyl().order(), "{name}");
            }
        }
    }

    #[test]
    fn ea_category_laws() {
        let (g, c3) = c3_in_s3();
        assert_eq!(build_ea(&g, &c3, 2).validate(), Ok(()));
        let triv = Subgroup::trivial(g.clone());
        // W = S3 itself
        assert_eq!(build_ea(&g, &triv, 1).validate(), Ok(()));
    }

    #[test]
    fn orbit_combinatorics_match_matrices() {
        // composition, identity and tensor of orbits, cross-checked
        // against dense linear algebra on the actual hom spaces
        let g = named_group("symmetric-3").unwrap();
        let w = weyl_group(&g, &Subgroup::trivial(g.clone())); // W = S3
        let e = EaCategory::new(w, 2);
        let mut rng = SplitMix64::new(7);
        for _ in 0..40 {
            let (a, b, c) = (rng.below(3), rng.below(3), rng.below(3));
            let f1 = e.orbit_at(b, c, rng.below(e.hom_dim(b, c)));
            let f2 = e.orbit_at(a, b, rng.below(e.hom_dim(a, b)));
            let lhs = e.orbit_matrix(&f1).mul(&e.orbit_matrix(&f2));
            let mut rhs = QMat::zero(lhs.rows(), lhs.cols());
            for (o, coeff) in e.compose_orbits(&f1, &f2) {
                rhs = rhs.add(&e.orbit_matrix(&o).scale(&rat(coeff)));
            }
            assert_eq!(lhs, rhs, "compose ({a},{b},{c})");
        }
        for i in 0..=2usize {
            let mut id = QMat::zero(
                e.weyl().order().pow(i as u32),
                e.weyl().order().pow(i as u32),
            );
            for (o, coeff) in e.identity_combo(i) {
                id = id.add(&e.orbit_matrix(&o).scale(&rat(coeff)));
            }
            assert!(id.is_identity(), "identity of {i}");
        }
        let mut rng = SplitMix64::new(8);
        for _ in 0..20 {
            let (a, b) = (rng.below(2), rng.below(2));
            let (c, d) = (rng.below(2), rng.below(2));
            let f = e.orbit_at(a, b, rng.below(e.hom_dim(a, b)));
            let gg = e.orbit_at(c, d, rng.below(e.hom_dim(c, d)));
            let lhs = e.orbit_matrix(&f).kron(&e.orbit_matrix(&gg));
            let mut rhs = QMat::zero(lhs.rows(), lhs.cols());
            for (o, coeff) in e.tensor_orbits(&f, &gg) {
                rhs = rhs.add(&e.orbit_matrix(&o).scale(&rat(coeff)));
            }
            assert_eq!(lhs, rhs, "tensor ({a},{b})x({c},{d})");
        }
    }

    #[test]
    fn ea_hom_dim_matches_fixed_point_oracle() {
        // independent route: W-fixed points of the dense hom complex
        let g = named_group("cyclic-3").unwrap();
        let w = weyl_group(&g, &Subgroup::trivial(g.clone()));
        let e = EaCategory::new(w.clone(), 2);
        for i in 0..=2usize {
            for j in 0..=2usize {
                let mut xi = concentrated(GRepresentation::trivial(w.clone(), 1), 0);
                let mut xj = concentrated(GRepresentation::trivial(w.clone(), 1), 0);
                for _ in 0..i {
                    xi = tensor(&xi, &concentrated(GRepresentation::regular(w.clone()), 0));
                }
                for _ in 0..j {
                    xj = tensor(&xj, &concentrated(GRepresentation::regular(w.clone()), 0));
                }
                let (fixed, _) =
                    crate::chain::fixed_points(&crate::chain::hom_complex(&xi, &xj));
                assert_eq!(fixed.dim(0), e.hom_dim(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn densified_ea_is_a_valid_category() {
        let (g, c3) = c3_in_s3();
        let ex = to_explicit(&build_ea(&g, &c3, 2));
        assert!(validate_explicit(&ex).is_ok());
    }

    #[test]
    fn endo_category_is_valid_and_formal_over_q() {
        // small complexes: associativity validation tensors three hom
        // complexes, so dims must stay tiny
        let g = FiniteGroup::trivial();
        let xs = [
            crate::chain::direct_sum(
                &sphere(&g, 0),
                &crate::chain::disk_of(GRepresentation::trivial(g.clone(), 1), 1),
            )
            .0,
            sphere(&g, 1),
        ];
        let e = endo_category(&xs);
        assert!(validate_explicit(&e).is_ok());
        let h = homology_category(&DgCategory::Explicit(e));
        let DgCategory::Explicit(ref hex) = h else { panic!() };
        assert!(validate_explicit(hex).is_ok());
        for a in 0..2 {
            for b in 0..2 {
                // hom dims of H are the homology dims of the input homs
                let e2 = endo_category(&xs);
                assert_eq!(
                    hex.homs[a][b].dims(),
                    homology_dims(&e2.homs[a][b]),
                );
            }
        }
    }

    #[test]
    fn zigzag_on_formal_category() {
        // homs concentrated in degree 0: cover and H0 coincide with E
        let (g, c3) = c3_in_s3();
        let e = build_ea(&g, &c3, 2);
        let (cover, i, p) = connective_cover_category(&e);
        assert_eq!(cover.n_objects(), e.n_objects());
        assert!(is_quasi_isomorphism(&i).unwrap());
        assert!(is_quasi_isomorphism(&p).unwrap());

        // dense cross-check of the same zig-zag
        let ex = DgCategory::Explicit(to_explicit(&e));
        let (_, i2, p2) = connective_cover_category(&ex);
        assert!(is_quasi_isomorphism(&i2).unwrap());
        assert!(is_quasi_isomorphism(&p2).unwrap());
    }

    #[test]
    fn zigzag_negative_control() {
        // a category with homology in degree -1: the inclusion leg cannot
        // be a quasi-isomorphism
        let t = FiniteGroup::trivial();
        let x = crate::chain::direct_sum(&sphere(&t, 0), &sphere(&t, -1)).0;
        let e = DgCategory::Explicit(endo_category(&[x]));
        let (_, i, p) = connective_cover_category(&e);
        assert!(!is_quasi_isomorphism(&i).unwrap());
        // homology is spread over degrees, so p cannot be one either
        assert!(!is_quasi_isomorphism(&p).unwrap());
    }

    #[test]
    fn zigzag_on_degree_zero_homology_category() {
        // homology concentrated in degree 0: both legs pass
        let t = FiniteGroup::trivial();
        let mut rng = SplitMix64::new(21);
        let x = crate::chain::direct_sum(
            &sphere(&t, 0),
            &crate::chain::disk_of(GRepresentation::trivial(t.clone(), 1 + rng.below(2)), 1),
        )
        .0;
        let e = DgCategory::Explicit(endo_category(&[x]));
        let (_, i, p) = connective_cover_category(&e);
        assert!(is_quasi_isomorphism(&i).unwrap());
        assert!(is_quasi_isomorphism(&p).unwrap());
    }

    #[test]
    fn quasi_iso_rejects_zero_map_and_validates_input() {
        let t = FiniteGroup::trivial();
        let x = sphere(&t, 0);
        let e = DgCategory::Explicit(endo_category(&[x]));
        // zero hom maps do not even form a functor (identities not
        // preserved): reported as invalid input, not false
        let zero = EnrichedFunctor {
            source: e.clone(),
            target: e.clone(),
            obj_map: vec![0],
            maps: FunctorMaps::Explicit(vec![vec![ChainMap::zero_map(
                e.hom(0, 0),
                e.hom(0, 0),
            )]]),
        };
        assert!(matches!(
            is_quasi_isomorphism(&zero),
            Err(DgError::InvalidFunctor(_))
        ));
        // identity is a quasi-isomorphism
        assert!(is_quasi_isomorphism(&EnrichedFunctor::identity(&e)).unwrap());
    }

    #[test]
    fn monoidal_checks_pass_on_ea() {
        let (g, c3) = c3_in_s3();
        let e = build_ea(&g, &c3, 2);
        let rep = check_monoidal(&e);
        assert!(!rep.checks.is_empty());
        assert!(rep.all_pass(), "failed: {:?}", rep.first_failure());

        // n_max = 0: vacuous-but-true unit checks only
        let e0 = build_ea(&g, &c3, 0);
        assert!(check_monoidal(&e0).all_pass());
    }

    #[test]
    fn monoidal_check_detects_corruption() {
        let (g, c3) = c3_in_s3();
        let DgCategory::Ea(ea) = build_ea(&g, &c3, 1) else { panic!() };
        let ex = to_explicit(&DgCategory::Ea(ea.clone()));
        let mut m = explicit_monoidal(&ea);
        assert!(check_monoidal_explicit(&ex, &m).all_pass());

        // corrupt one structure map
        let key = (1, 1, 0, 0);
        let bad = m.maps.get(&key).unwrap().clone();
        let mut comp = bad.component(0);
        comp.set(0, 0, comp.at(0, 0).clone() + rat(1));
        m.maps.insert(
            key,
            ChainMap::from_parts(bad.source().clone(), bad.target().clone(), vec![comp]),
        );
        let rep = check_monoidal_explicit(&ex, &m);
        assert!(!rep.all_pass());
        let name = rep.first_failure().unwrap();
        assert!(name.contains('1'), "failure names the tuple: {name}");
    }

    #[test]
    fn endomorphism_ring_of_object_one_is_group_algebra() {
        // right-translation basis multiplies like the Cayley table
        for name in ["symmetric-3", "cyclic-4"] {
            let g = named_group(name).unwrap();
            let w = weyl_group(&g, &Subgroup::trivial(g.clone())); // W = G
            let e = EaCategory::new(w.clone(), 1);
            assert_eq!(e.hom_dim(1, 1), w.order());
            // orbit with dst = (v) corresponds to right translation by v^{-1};
            // composing orbits (e,v) and (e,u) must give (e, ...) per Cayley
            for u in 0..w.order() {
                for v in 0..w.order() {
                    let f1 = EaOrbit { src: vec![w.identity_index()], dst: vec![v] };
                    let f2 = EaOrbit { src: vec![w.identity_index()], dst: vec![u] };
                    let comp = e.compose_orbits(&f1, &f2);
                    assert_eq!(comp.len(), 1);
                    let (o, &c) = comp.iter().next().unwrap();
                    assert_eq!(c, 1);
                    // (x -> xv)(x -> xu)?? composition in matrix terms:
                    // f1 maps basis u' to u'v; applied after f2: e -> u -> uv
                    assert_eq!(o.src, vec![w.identity_index()]);
                    assert_eq!(o.dst, vec![w.mul(u, v)], "{name}");
                }
            }
        }
    }
}
