//! Right modules over a DG-category: free modules, coends, the box
//! product, the generator adjunction, and extension/restriction of
//! scalars. Over the combinatorial categories `E_a` every object is a
//! retract of tensor powers of object 1, so the big coends collapse onto
//! object-1 data; the generic cokernel coend stays available as the dense
//! cross-check.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chain::{
    associator, cokernel_data, concentrated, direct_sum, fixed_points, hom_complex, insert_right,
    is_quasi_iso, swap_map, tensor, tensor_maps, trivial_action, ChainMap, Complex,
};
use crate::dg::{DgCategory, EaCategory, EnrichedFunctor, EaOrbit};
use crate::perm::FiniteGroup;
use crate::ratmat::{quotient_by_columns, rat, QMat, Quotient, Rat};
use crate::rep::GRepresentation;

#[derive(Debug, PartialEq, Eq)]
pub enum ModError {
    UnknownObject { index: usize, objects: usize },
    GroupMismatch,
    TruncationOverflow { b: usize, c: usize },
    NotEa,
    Malformed(String),
}

impl fmt::Display for ModError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModError::UnknownObject { index, objects } => {
                write!(f, "object {index} out of range ({objects} objects)")
            }
            ModError::GroupMismatch => write!(f, "group mismatch"),
            ModError::TruncationOverflow { b, c } => {
                write!(f, "truncation overflow: tensor object ({b},{c}) out of range")
            }
            ModError::NotEa => write!(f, "operation needs an E_a base category"),
            ModError::Malformed(why) => write!(f, "malformed data: {why}"),
        }
    }
}

fn require_ea(base: &DgCategory) -> Result<&EaCategory, ModError> {
    match base {
        DgCategory::Ea(e) => Ok(e),
        DgCategory::Explicit(_) => Err(ModError::NotEa),
    }
}

/// `(QW)^{(x)i}` concentrated in degree 0, as a complex over `W`.
pub fn generator_power(w: &Arc<FiniteGroup>, i: usize) -> Complex {
    let mut rep = GRepresentation::trivial(w.clone(), 1);
    for _ in 0..i {
        rep = rep.tensor(&GRepresentation::regular(w.clone()));
    }
    concentrated(rep, 0)
}

fn unvec(v: &[Rat], rows: usize, cols: usize) -> QMat {
    QMat::from_fn(rows, cols, |r, c| v[c * rows + r].clone())
}

fn vec_of(m: &QMat) -> Vec<Rat> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for c in 0..m.cols() {
        out.extend(m.column(c));
    }
    out
}

fn chainmaps_equal(f: &ChainMap, g: &ChainMap) -> bool {
    let lo = f.source().lo().min(g.source().lo());
    let hi = f.source().hi().max(g.source().hi());
    (lo..=hi).all(|n| f.component(n) == g.component(n))
}

fn invert_iso(f: &ChainMap) -> ChainMap {
    let comps = (f.source().lo()..=f.source().hi())
        .map(|n| {
            f.component(n)
                .inverse()
                .expect("invertible degreewise component")
        })
        .collect();
    ChainMap::from_parts(f.target().clone(), f.source().clone(), comps)
}

pub fn is_iso_chainmap(f: &ChainMap) -> bool {
    let lo = f.source().lo().min(f.target().lo());
    let hi = f.source().hi().max(f.target().hi());
    (lo..=hi).all(|n| {
        let m = f.component(n);
        m.rows() == m.cols() && (m.rows() == 0 || m.is_invertible())
    })
}

/// A right module `M` over a DG-category: `values(a)` a complex over the
/// trivial group, `actions(a,b): M(b) (x) E(a,b) -> M(a)`. Free modules
/// and generator-hom modules over `E_a` are kept symbolic so values and
/// actions materialize only where needed.
#[derive(Clone)]
pub struct DGModule {
    base: DgCategory,
    kind: ModuleKind,
}

#[derive(Clone)]
enum ModuleKind {
    Dense {
        values: Vec<Complex>,
        actions: Vec<Vec<ChainMap>>,
    },
    /// `F_a = E(-, a)`.
    Free(usize),
    /// `hom_Q(-, X)^W` over an `E_a` base.
    UnderHom(Complex),
}

impl DGModule {
    pub fn base(&self) -> &DgCategory {
        &self.base
    }

    pub fn n_objects(&self) -> usize {
        self.base.n_objects()
    }

    pub fn value(&self, a: usize) -> Complex {
        match &self.kind {
            ModuleKind::Dense { values, .. } => values[a].clone(),
            ModuleKind::Free(t) => self.base.hom(a, *t),
            ModuleKind::UnderHom(_) => self.underhom_value(a).0,
        }
    }

    fn underhom_value(&self, a: usize) -> (Complex, Vec<QMat>) {
        let ModuleKind::UnderHom(x) = &self.kind else { unreachable!() };
        let ea = require_ea(&self.base).expect("underhom lives over E_a");
        fixed_points(&hom_complex(&generator_power(ea.weyl(), a), x))
    }

    pub fn action(&self, a: usize, b: usize) -> ChainMap {
        match &self.kind {
            ModuleKind::Dense { actions, .. } => actions[a][b].clone(),
            ModuleKind::Free(t) => self.base.compose_map(a, b, *t),
            ModuleKind::UnderHom(x) => {
                let ea = require_ea(&self.base).expect("underhom lives over E_a");
                let w = ea.weyl();
                let (va, ia) = self.underhom_value(a);
                let (vb, ib) = self.underhom_value(b);
                let de = ea.hom_dim(a, b);
                let (pa, pb) = (w.order().pow(a as u32), w.order().pow(b as u32));
                let ehom = self.base.hom(a, b);
                let src = tensor(&vb, &ehom);
                let comps = (src.lo()..=src.hi())
                    .map(|n| {
                        let rows_x = x.dim(n);
                        let bi = (n - vb.lo()) as usize;
                        let ai = (n - va.lo()) as usize;
                        let mut cols = Vec::new();
                        for k in 0..vb.dim(n) {
                            let phi = unvec(&ib[bi].column(k), rows_x, pb);
                            for l in 0..de {
                                let om = ea.orbit_matrix(&ea.orbit_at(a, b, l));
                                cols.push(vec_of(&phi.mul(&om)));
                            }
                        }
                        let stacked = QMat::from_columns(rows_x * pa, &cols);
                        ia[ai]
                            .solve(&stacked)
                            .expect("composite lands in the fixed subspace")
                    })
                    .collect();
                ChainMap::from_parts(src, va, comps)
            }
        }
    }

    pub fn to_dense(&self) -> DGModule {
        let n = self.n_objects();
        DGModule {
            base: self.base.clone(),
            kind: ModuleKind::Dense {
                values: (0..n).map(|a| self.value(a)).collect(),
                actions: (0..n)
                    .map(|a| (0..n).map(|b| self.action(a, b)).collect())
                    .collect(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        (0..self.n_objects()).all(|a| self.value(a).total_dim() == 0)
    }

    /// Unit law, associativity and chain-map validity of every action.
    /// Materializes everything: small bases only.
    pub fn validate(&self) -> Result<(), ModError> {
        let n = self.n_objects();
        for a in 0..n {
            for b in 0..n {
                let act = self.action(a, b);
                ChainMap::new(
                    act.source().clone(),
                    act.target().clone(),
                    (act.source().lo()..=act.source().hi())
                        .map(|d| act.component(d))
                        .collect(),
                )
                .map_err(|e| ModError::Malformed(format!("action({a},{b}): {e}")))?;
            }
            // unit law
            let va = self.value(a);
            let unit = self
                .action(a, a)
                .compose(&insert_right(&va, &self.base.hom(a, a), &self.base.identity_vector(a)));
            if !chainmaps_equal(&unit, &ChainMap::identity(&va)) {
                return Err(ModError::Malformed(format!("unit law fails at object {a}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ebc, eab) = (self.base.hom(b, c), self.base.hom(a, b));
                    let vc = self.value(c);
                    let lhs = self
                        .action(a, b)
                        .compose(&tensor_maps(&self.action(b, c), &ChainMap::identity(&eab)));
                    let rhs = self
                        .action(a, c)
                        .compose(&tensor_maps(
                            &ChainMap::identity(&vc),
                            &self.base.compose_map(a, b, c),
                        ))
                        .compose(&associator(&vc, &ebc, &eab));
                    if !chainmaps_equal(&lhs, &rhs) {
                        return Err(ModError::Malformed(format!(
                            "associativity fails on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn free_module(base: &DgCategory, a: usize) -> Result<DGModule, ModError> {
    if a >= base.n_objects() {
        return Err(ModError::UnknownObject {
            index: a,
            objects: base.n_objects(),
        });
    }
    Ok(DGModule {
        base: base.clone(),
        kind: ModuleKind::Free(a),
    })
}

/// `hom_Q(-, X)^W` over `E_a`: values are the `W`-fixed homs out of the
/// generator powers, actions are composition.
pub fn underhom_generators(x: &Complex, base: &DgCategory) -> Result<DGModule, ModError> {
    let ea = require_ea(base)?;
    if !Arc::ptr_eq(x.group(), ea.weyl()) {
        return Err(ModError::GroupMismatch);
    }
    Ok(DGModule {
        base: base.clone(),
        kind: ModuleKind::UnderHom(x.clone()),
    })
}

/// Assemble a module from explicit values and action maps, validated.
pub fn dense_module(
    base: &DgCategory,
    values: Vec<Complex>,
    actions: Vec<Vec<ChainMap>>,
) -> Result<DGModule, ModError> {
    let m = DGModule {
        base: base.clone(),
        kind: ModuleKind::Dense { values, actions },
    };
    m.validate()?;
    Ok(m)
}

pub fn zero_module(base: &DgCategory) -> DGModule {
    let n = base.n_objects();
    let t = FiniteGroup::trivial();
    let z = Complex::zero(t);
    DGModule {
        base: base.clone(),
        kind: ModuleKind::Dense {
            values: vec![z.clone(); n],
            actions: (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| ChainMap::zero_map(tensor(&z, &base.hom(a, b)), z.clone()))
                        .collect()
                })
                .collect(),
        },
    }
}

fn sum_projection(sum: &Complex, incl: &ChainMap) -> ChainMap {
    let comps = (sum.lo()..=sum.hi())
        .map(|n| incl.component(n).transpose())
        .collect();
    ChainMap::from_parts(sum.clone(), incl.source().clone(), comps)
}

pub fn module_direct_sum(m: &DGModule, n: &DGModule) -> DGModule {
    let k = m.n_objects();
    let mut values = Vec::new();
    let mut incls = Vec::new();
    for a in 0..k {
        let (s, im, in_) = direct_sum(&m.value(a), &n.value(a));
        values.push(s);
        incls.push((im, in_));
    }
    let actions = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    let e = m.base.hom(a, b);
                    let id_e = ChainMap::identity(&e);
                    let pm = sum_projection(&values[b], &incls[b].0);
                    let pn = sum_projection(&values[b], &incls[b].1);
                    incls[a]
                        .0
                        .compose(&m.action(a, b))
                        .compose(&tensor_maps(&pm, &id_e))
                        .add(
                            &incls[a]
                                .1
                                .compose(&n.action(a, b))
                                .compose(&tensor_maps(&pn, &id_e)),
                        )
                })
                .collect()
        })
        .collect();
    DGModule {
        base: m.base.clone(),
        kind: ModuleKind::Dense { values, actions },
    }
}

#[derive(Clone)]
pub struct ModuleMap {
    pub source: DGModule,
    pub target: DGModule,
    pub comps: Vec<ChainMap>,
}

impl ModuleMap {
    pub fn identity(m: &DGModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            comps: (0..m.n_objects())
                .map(|a| ChainMap::identity(&m.value(a)))
                .collect(),
        }
    }

    pub fn zero(m: &DGModule, n: &DGModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: n.clone(),
            comps: (0..m.n_objects())
                .map(|a| ChainMap::zero_map(m.value(a), n.value(a)))
                .collect(),
        }
    }

    /// Chain-map validity plus naturality against all action maps.
    pub fn validate(&self) -> Result<(), ModError> {
        let k = self.source.n_objects();
        for a in 0..k {
            for b in 0..k {
                let lhs = self.comps[a].compose(&self.source.action(a, b));
                let rhs = self.target.action(a, b).compose(&tensor_maps(
                    &self.comps[b],
                    &ChainMap::identity(&self.source.base.hom(a, b)),
                ));
                if !chainmaps_equal(&lhs, &rhs) {
                    return Err(ModError::Malformed(format!(
                        "naturality fails on ({a},{b})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// True iff every component is a homology isomorphism.
pub fn is_weak_equivalence(f: &ModuleMap) -> bool {
    f.comps.iter().all(is_quasi_iso)
}

/// Bifunctor data for a coend over an explicit finite DG-category:
/// `values[b][c] = F(b,c)`, with the contravariant action
/// `lmaps[b][c]: F(b,c) (x) C(c,b) -> F(c,c)` and the covariant action
/// `rmaps[b][c]: F(b,c) (x) C(c,b) -> F(b,b)`.
pub struct BifunctorData {
    pub values: Vec<Vec<Complex>>,
    pub lmaps: Vec<Vec<ChainMap>>,
    pub rmaps: Vec<Vec<ChainMap>>,
}

pub struct CoendResult {
    pub complex: Complex,
    /// `F(d,d) -> coend`.
    pub legs: Vec<ChainMap>,
    total: Complex,
    rel: ChainMap,
    proj: ChainMap,
    sections: Vec<QMat>,
}

impl CoendResult {
    /// Factor maps `u_d: F(d,d) -> T` that coequalize the two actions
    /// through the coend.
    pub fn induced_map(&self, targets: &[ChainMap], t: &Complex) -> Result<ChainMap, ModError> {
        let total_u: Vec<QMat> = (self.total.lo()..=self.total.hi())
            .map(|n| {
                let mut m = QMat::zero(t.dim(n), self.total.dim(n));
                let mut off = 0;
                for u in targets {
                    let c = u.component(n);
                    m.set_block(0, off, &c);
                    off += c.cols();
                }
                m
            })
            .collect();
        for n in self.rel.source().lo()..=self.rel.source().hi() {
            if n < self.total.lo() || n > self.total.hi() {
                continue; // the target is zero there
            }
            let i = (n - self.total.lo()) as usize;
            if !total_u[i].mul(&self.rel.component(n)).is_zero() {
                return Err(ModError::Malformed(
                    "map does not coequalize the two actions".into(),
                ));
            }
        }
        let comps = (self.complex.lo()..=self.complex.hi())
            .map(|n| {
                let i = (n - self.total.lo()) as usize;
                total_u[i].mul(&self.sections[i])
            })
            .collect();
        Ok(ChainMap::from_parts(self.complex.clone(), t.clone(), comps))
    }
}

/// `∫^a F(a,a)`: the cokernel of (left action − right action) over the
/// finite coproducts.
pub fn coend(f: &BifunctorData) -> Result<CoendResult, ModError> {
    let n = f.values.len();
    for b in 0..n {
        for c in 0..n {
            f.lmaps[b][c]
                .validate()
                .and_then(|_| f.rmaps[b][c].validate())
                .map_err(|e| ModError::Malformed(format!("bifunctor action ({b},{c}): {e}")))?;
        }
    }
    let group = f.values[0][0].group().clone();
    let mut total = Complex::zero(group.clone());
    for d in 0..n {
        total = direct_sum(&total, &f.values[d][d]).0;
    }
    let mut source = Complex::zero(group);
    for b in 0..n {
        for c in 0..n {
            source = direct_sum(&source, f.lmaps[b][c].source()).0;
        }
    }
    let comps = (source.lo()..=source.hi())
        .map(|deg| {
            let mut m = QMat::zero(total.dim(deg), source.dim(deg));
            let t_off = |d: usize| -> usize { (0..d).map(|i| f.values[i][i].dim(deg)).sum() };
            let mut s_off = 0usize;
            for b in 0..n {
                for c in 0..n {
                    let l = f.lmaps[b][c].component(deg);
                    let r = f.rmaps[b][c].component(deg);
                    for row in 0..l.rows() {
                        for col in 0..l.cols() {
                            let v = l.at(row, col).clone();
                            if !num_traits::Zero::is_zero(&v) {
                                let cur = m.at(t_off(c) + row, s_off + col).clone();
                                m.set(t_off(c) + row, s_off + col, cur + v);
                            }
                        }
                    }
                    for row in 0..r.rows() {
                        for col in 0..r.cols() {
                            let v = r.at(row, col).clone();
                            if !num_traits::Zero::is_zero(&v) {
                                let cur = m.at(t_off(b) + row, s_off + col).clone();
                                m.set(t_off(b) + row, s_off + col, cur - v);
                            }
                        }
                    }
                    s_off += f.lmaps[b][c].source().dim(deg);
                }
            }
            m
        })
        .collect();
    let rel = ChainMap::new(source, total.clone(), comps)
        .map_err(|e| ModError::Malformed(format!("relation map: {e}")))?;
    let (complex, proj, sections) = cokernel_data(&rel);
    let legs = (0..n)
        .map(|d| {
            let comps = (f.values[d][d].lo()..=f.values[d][d].hi())
                .map(|deg| {
                    let mut incl = QMat::zero(total.dim(deg), f.values[d][d].dim(deg));
                    let off: usize = (0..d).map(|i| f.values[i][i].dim(deg)).sum();
                    incl.set_block(off, 0, &QMat::identity(f.values[d][d].dim(deg)));
                    proj.component(deg).mul(&incl)
                })
                .collect();
            ChainMap::from_parts(f.values[d][d].clone(), complex.clone(), comps)
        })
        .collect();
    Ok(CoendResult {
        complex,
        legs,
        total,
        rel,
        proj,
        sections,
    })
}

/// Reorder `(M (x) A) (x) B` to `(M (x) B) (x) A` (with Koszul signs).
fn rotate_last_two(m: &Complex, a: &Complex, b: &Complex) -> ChainMap {
    let s1 = associator(m, a, b);
    let s2 = tensor_maps(&ChainMap::identity(m), &swap_map(a, b));
    let s3 = invert_iso(&associator(m, b, a));
    s3.compose(&s2).compose(&s1)
}

/// The co-Yoneda coend `∫^a M(a) (x) C(b0, a)` together with its
/// canonical comparison map to `M(b0)`.
pub fn coyoneda(m: &DGModule, b0: usize) -> Result<(CoendResult, ChainMap), ModError> {
    let n = m.n_objects();
    if b0 >= n {
        return Err(ModError::UnknownObject {
            index: b0,
            objects: n,
        });
    }
    let base = &m.base;
    let mut values = Vec::new();
    let mut lmaps = Vec::new();
    let mut rmaps = Vec::new();
    for x in 0..n {
        let mut vrow = Vec::new();
        let mut lrow = Vec::new();
        let mut rrow = Vec::new();
        for y in 0..n {
            let (mx, cby, cyx) = (m.value(x), base.hom(b0, y), base.hom(y, x));
            vrow.push(tensor(&mx, &cby));
            let rot = rotate_last_two(&mx, &cby, &cyx);
            lrow.push(
                tensor_maps(&m.action(y, x), &ChainMap::identity(&cby)).compose(&rot),
            );
            let push = base
                .compose_map(b0, y, x)
                .compose(&swap_map(&cby, &cyx));
            rrow.push(
                tensor_maps(&ChainMap::identity(&mx), &push)
                    .compose(&associator(&mx, &cby, &cyx)),
            );
        }
        values.push(vrow);
        lmaps.push(lrow);
        rmaps.push(rrow);
    }
    let data = BifunctorData {
        values,
        lmaps,
        rmaps,
    };
    let result = coend(&data)?;
    let targets: Vec<ChainMap> = (0..n).map(|d| m.action(b0, d)).collect();
    let vb0 = m.value(b0);
    let canonical = result.induced_map(&targets, &vb0)?;
    Ok((result, canonical))
}

fn complex_from_action(
    w: &Arc<FiniteGroup>,
    v: &Complex,
    gen_mats: &[Vec<QMat>],
) -> Complex {
    if v.dims().is_empty() {
        return Complex::zero(w.clone());
    }
    let terms = (v.lo()..=v.hi())
        .map(|n| {
            let i = (n - v.lo()) as usize;
            let gens = gen_mats.iter().map(|per_deg| per_deg[i].clone()).collect();
            GRepresentation::from_raw(w.clone(), v.dim(n), gens)
        })
        .collect();
    let diffs = (v.lo()..=v.hi()).map(|n| v.diff(n)).collect();
    Complex::from_parts(w.clone(), v.lo(), terms, diffs)
}

/// Per generator of `W`, per degree: the right-translation action of the
/// basis element `rho_g` of `E(1,1)` on `M(1)`.
fn translation_slices(m: &DGModule, ea: &EaCategory) -> (Complex, Vec<Vec<QMat>>) {
    let v1 = m.value(1);
    let act = m.action(1, 1);
    let de = ea.hom_dim(1, 1);
    let gens = ea
        .weyl()
        .generator_indices()
        .iter()
        .map(|&g| {
            (v1.lo()..=v1.hi())
                .map(|n| {
                    let c = act.component(n);
                    let cols: Vec<Vec<Rat>> = (0..v1.dim(n))
                        .map(|j| c.column(j * de + g))
                        .collect();
                    QMat::from_columns(v1.dim(n), &cols)
                })
                .collect()
        })
        .collect();
    (v1, gens)
}

/// `M (x)_E G = ∫^a M(a) (x) (QW)^{(x)a}` via the collapse onto object 1:
/// every object of `E_a` is a retract of copies of object 1, so the coend
/// is `M(1)` balanced over `E(1,1) = QW`, which is `M(1)` itself carrying
/// the right-translation `W`-action.
pub fn tensor_with_generators(m: &DGModule) -> Result<Complex, ModError> {
    let ea = require_ea(&m.base)?;
    if ea.n_max() < 1 {
        return Err(ModError::UnknownObject {
            index: 1,
            objects: ea.n_objects(),
        });
    }
    let (v1, gens) = translation_slices(m, ea);
    Ok(complex_from_action(ea.weyl(), &v1, &gens))
}

/// The same coend computed as a genuine cokernel over all objects; the
/// dense oracle for the reduced route (small `W` only).
pub fn tensor_with_generators_dense(m: &DGModule) -> Result<Complex, ModError> {
    Ok(tensor_with_generators_dense_data(m)?.0)
}

/// The dense coend together with the quotient chain map off the direct
/// sum of the per-object blocks `M(d) (x) (QW)^{(x)d}` and those blocks.
fn tensor_with_generators_dense_data(
    m: &DGModule,
) -> Result<(Complex, ChainMap, Vec<Complex>), ModError> {
    let ea = require_ea(&m.base)?;
    let w = ea.weyl().clone();
    let n = ea.n_objects();
    let vals: Vec<Complex> = (0..n)
        .map(|d| trivial_action(&m.value(d), &w))
        .collect();
    let pows: Vec<Complex> = (0..n).map(|d| generator_power(&w, d)).collect();
    let mut total = Complex::zero(w.clone());
    let targets: Vec<Complex> = (0..n).map(|d| tensor(&vals[d], &pows[d])).collect();
    for t in &targets {
        total = direct_sum(&total, t).0;
    }
    // evaluation matrices E(a,b) (x) pow_a -> pow_b
    let ev = |a: usize, b: usize| -> QMat {
        let de = ea.hom_dim(a, b);
        let (pa, pb) = (w.order().pow(a as u32), w.order().pow(b as u32));
        let mut m2 = QMat::zero(pb, de * pa);
        for l in 0..de {
            let om = ea.orbit_matrix(&ea.orbit_at(a, b, l));
            for p in 0..pa {
                let col = om.column(p);
                for (r, v) in col.into_iter().enumerate() {
                    if !num_traits::Zero::is_zero(&v) {
                        m2.set(r, l * pa + p, v);
                    }
                }
            }
        }
        m2
    };
    let mut source = Complex::zero(w.clone());
    let mut summands = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let s = tensor(
                &tensor(&vals[b], &trivial_action(&m.base.hom(a, b), &w)),
                &pows[a],
            );
            source = direct_sum(&source, &s).0;
            summands.push((a, b, s));
        }
    }
    let comps: Vec<QMat> = (source.lo()..=source.hi())
        .map(|deg| {
            let mut mat = QMat::zero(total.dim(deg), source.dim(deg));
            let t_off = |d: usize| -> usize { (0..d).map(|i| targets[i].dim(deg)).sum() };
            let mut s_off = 0usize;
            for (a, b, s) in &summands {
                let (a, b) = (*a, *b);
                let act = m.action(a, b).component(deg);
                let pa = w.order().pow(a as u32);
                let left = act.kron(&QMat::identity(pa));
                let right = QMat::identity(m.value(b).dim(deg)).kron(&ev(a, b));
                for row in 0..left.rows() {
                    for col in 0..left.cols() {
                        let v = left.at(row, col).clone();
                        if !num_traits::Zero::is_zero(&v) {
                            let cur = mat.at(t_off(a) + row, s_off + col).clone();
                            mat.set(t_off(a) + row, s_off + col, cur + v);
                        }
                    }
                }
                for row in 0..right.rows() {
                    for col in 0..right.cols() {
                        let v = right.at(row, col).clone();
                        if !num_traits::Zero::is_zero(&v) {
                            let cur = mat.at(t_off(b) + row, s_off + col).clone();
                            mat.set(t_off(b) + row, s_off + col, cur - v);
                        }
                    }
                }
                s_off += s.dim(deg);
            }
            mat
        })
        .collect();
    let rel = ChainMap::new(source, total, comps)
        .map_err(|e| ModError::Malformed(format!("relation map: {e}")))?;
    let (cok, proj, _) = crate::chain::cokernel_data(&rel);
    Ok((cok, proj, targets))
}

/// The counit `tensor_with_generators(underhom_generators(X)) -> X`:
/// evaluation at the identity of `W`.
pub fn counit_generators(x: &Complex, base: &DgCategory) -> Result<(Complex, ChainMap), ModError> {
    let ea = require_ea(base)?;
    let w = ea.weyl().clone();
    let m = underhom_generators(x, base)?;
    let t = tensor_with_generators(&m)?;
    let (v1, i1) = m.underhom_value(1);
    let comps = (t.lo()..=t.hi())
        .map(|n| {
            let i = (n - v1.lo()) as usize;
            let cols: Vec<Vec<Rat>> = (0..v1.dim(n))
                .map(|k| {
                    let phi = unvec(&i1[i].column(k), x.dim(n), w.order());
                    phi.column(w.identity_index())
                })
                .collect();
            QMat::from_columns(x.dim(n), &cols)
        })
        .collect();
    let eval = ChainMap::new(t.clone(), x.clone(), comps)
        .map_err(|e| ModError::Malformed(format!("counit: {e}")))?;
    Ok((t, eval))
}

/// The unit `F_a -> underhom(F_a (x)_E G)` on a free module is an
/// isomorphism iff the canonical comparison `(QW)^{(x)a} -> F_a (x)_E G`
/// is one (the hom dimensions already agree); this verifies that
/// comparison as an equivariant chain isomorphism. Every comparison
/// column is a single basis orbit with coefficient one, so the check is
/// a bijection of basis indices plus orbit-level equivariance; for small
/// `|W|^a` the materialized comparison is run alongside as a cross-check.
pub fn unit_free_is_iso(base: &DgCategory, a: usize) -> Result<bool, ModError> {
    let ea = require_ea(base)?;
    if a >= ea.n_objects() {
        return Err(ModError::UnknownObject {
            index: a,
            objects: ea.n_objects(),
        });
    }
    if a == 0 {
        return unit_free_is_iso_dense(base, 0);
    }
    let w = ea.weyl().clone();
    let wo = w.order();
    let dim = wo.pow(a as u32);
    let digits_of = |idx: usize| -> Vec<usize> {
        let mut d = vec![0usize; a];
        let mut rest = idx;
        for k in (0..a).rev() {
            d[k] = rest % wo;
            rest /= wo;
        }
        d
    };
    // tuple g = (g1, g1 t): kappa(g) = u_t . rho_{g1}, a single orbit
    let kappa_of = |idx: usize| -> Option<EaOrbit> {
        let digits = digits_of(idx);
        let g1 = digits[0];
        let g1i = w.inverse_of(g1);
        let mut dst = vec![w.identity_index()];
        dst.extend(digits[1..].iter().map(|&gj| w.mul(g1i, gj)));
        let u = EaOrbit {
            src: vec![w.identity_index()],
            dst,
        };
        let rho = EaOrbit {
            src: vec![w.identity_index()],
            dst: vec![g1],
        };
        let combo = ea.compose_orbits(&u, &rho);
        if combo.len() != 1 {
            return None;
        }
        let (o, c) = combo.into_iter().next().unwrap();
        if c != 1 {
            return None;
        }
        Some(o)
    };
    let reduced = 'red: {
        let mut images = Vec::with_capacity(dim);
        let mut seen = vec![false; dim];
        for idx in 0..dim {
            let Some(o) = kappa_of(idx) else { break 'red false };
            let k = ea.index_of(&o);
            if seen[k] {
                break 'red false;
            }
            seen[k] = true;
            images.push(o);
        }
        // kappa(g . tuple) = kappa(tuple) . rho_g for each generator g
        for &g in w.generator_indices().iter() {
            let rho = EaOrbit {
                src: vec![w.identity_index()],
                dst: vec![g],
            };
            for idx in 0..dim {
                let translated = digits_of(idx)
                    .iter()
                    .fold(0usize, |acc, &d| acc * wo + w.mul(g, d));
                let combo = ea.compose_orbits(&images[idx], &rho);
                if combo.len() != 1 {
                    break 'red false;
                }
                let (o, c) = combo.into_iter().next().unwrap();
                if c != 1 || o != images[translated] {
                    break 'red false;
                }
            }
        }
        true
    };
    if dim <= 64 && unit_free_is_iso_dense(base, a)? != reduced {
        return Err(ModError::Malformed(
            "unit comparison: orbit and materialized routes disagree".into(),
        ));
    }
    Ok(reduced)
}

/// The same comparison materialized as a matrix and validated as an
/// equivariant chain map; quadratic in `|W|^a`, small `W` only.
pub fn unit_free_is_iso_dense(base: &DgCategory, a: usize) -> Result<bool, ModError> {
    let ea = require_ea(base)?;
    if a >= ea.n_objects() {
        return Err(ModError::UnknownObject {
            index: a,
            objects: ea.n_objects(),
        });
    }
    let w = ea.weyl().clone();
    let t = tensor_with_generators(&free_module(base, a)?)?;
    let pow = generator_power(&w, a);
    let dim = w.order().pow(a as u32);
    let mut kappa = QMat::zero(t.dim(0), dim);
    if a == 0 {
        kappa.set(0, 0, rat(1));
    } else {
        // tuple g = (g1, g1 t): class [u_t . rho_{g1} (x) e]
        for idx in 0..dim {
            let mut digits = vec![0usize; a];
            let mut rest = idx;
            for k in (0..a).rev() {
                digits[k] = rest % w.order();
                rest /= w.order();
            }
            let g1 = digits[0];
            let g1i = w.inverse_of(g1);
            let mut dst = vec![w.identity_index()];
            dst.extend(digits[1..].iter().map(|&gj| w.mul(g1i, gj)));
            let u = EaOrbit {
                src: vec![w.identity_index()],
                dst,
            };
            let rho = EaOrbit {
                src: vec![w.identity_index()],
                dst: vec![g1],
            };
            for (o, c) in ea.compose_orbits(&u, &rho) {
                kappa.set(ea.index_of(&o), idx, rat(c));
            }
        }
    }
    if !kappa.is_invertible() {
        return Ok(false);
    }
    Ok(ChainMap::new(pow, t, vec![kappa]).is_ok())
}

fn mats_sub(a: &QMat, b: &QMat) -> QMat {
    a.sub(b)
}

/// Quotient data of the reduced box-product value at object `a`:
/// coinvariants of `M(1) (x) N(1) (x) E(a,2)` over `Q(W x W)` acting by
/// right translation on the module slots and postcomposition on `E`.
fn box_value_quotients(
    m: &DGModule,
    n: &DGModule,
    a: usize,
) -> Result<(Complex, Vec<Quotient>, Complex), ModError> {
    let ea = require_ea(&m.base)?;
    let w = ea.weyl().clone();
    let (m1, am) = translation_slices(m, ea);
    let (n1, an) = translation_slices(n, ea);
    let e_a2 = m.base.hom(a, 2);
    let de = ea.hom_dim(a, 2);
    let v = tensor(&tensor(&m1, &n1), &e_a2);
    // postcomposition with t(rho_g (x) rho_e) and t(rho_e (x) rho_g)
    let post = |g1: usize, g2: usize| -> QMat {
        let t_combo = ea.tensor_orbits(
            &EaOrbit {
                src: vec![w.identity_index()],
                dst: vec![g1],
            },
            &EaOrbit {
                src: vec![w.identity_index()],
                dst: vec![g2],
            },
        );
        let mut p = QMat::zero(de, de);
        for l in 0..de {
            let f = ea.orbit_at(a, 2, l);
            for (o1, c1) in &t_combo {
                for (o, c) in ea.compose_orbits(o1, &f) {
                    let cur = p.at(ea.index_of(&o), l).clone();
                    p.set(ea.index_of(&o), l, cur + rat(c * c1));
                }
            }
        }
        p
    };
    let gen_idxs = w.generator_indices();
    let mut quots = Vec::new();
    for deg in v.lo()..=v.hi() {
        let mut rels = QMat::zero(v.dim(deg), 0);
        for (gi, &g) in gen_idxs.iter().enumerate() {
            // (g, e): act on M slot vs postcompose
            let mn_left = {
                // A^M_g (x) I_N blockwise over the graded tensor m1 (x) n1
                let fake = ChainMap::from_parts(
                    m1.clone(),
                    m1.clone(),
                    am[gi].clone(),
                );
                tensor_maps(&fake, &ChainMap::identity(&n1)).component(deg)
            };
            let t1 = mn_left.kron(&QMat::identity(de));
            let t2 = QMat::identity(tensor(&m1, &n1).dim(deg)).kron(&post(g, w.identity_index()));
            rels = rels.hstack(&mats_sub(&t1, &t2));
            // (e, g)
            let mn_right = {
                let fake = ChainMap::from_parts(n1.clone(), n1.clone(), an[gi].clone());
                tensor_maps(&ChainMap::identity(&m1), &fake).component(deg)
            };
            let t3 = mn_right.kron(&QMat::identity(de));
            let t4 = QMat::identity(tensor(&m1, &n1).dim(deg)).kron(&post(w.identity_index(), g));
            rels = rels.hstack(&mats_sub(&t3, &t4));
        }
        quots.push(quotient_by_columns(v.dim(deg), &rels));
    }
    let t = FiniteGroup::trivial();
    let terms = quots
        .iter()
        .map(|q| GRepresentation::trivial(t.clone(), q.dim))
        .collect::<Vec<_>>();
    let diffs = (v.lo()..=v.hi())
        .enumerate()
        .map(|(i, deg)| {
            if i == 0 {
                QMat::zero(0, quots[0].dim)
            } else {
                quots[i - 1].proj.mul(&v.diff(deg)).mul(&quots[i].section)
            }
        })
        .collect();
    let value = Complex::from_parts(t, v.lo(), terms, diffs);
    Ok((value, quots, v))
}

/// `M □ N` over `E_a` via the collapse of the double coend onto the pair
/// `(1,1)`: `(M □ N)(a) = M(1) (x) N(1) (x)_{Q(W x W)} E(a, 2)`.
pub fn box_product(m: &DGModule, n: &DGModule) -> Result<DGModule, ModError> {
    let ea = require_ea(&m.base)?;
    if ea.n_max() < 2 {
        return Err(ModError::TruncationOverflow { b: 1, c: 1 });
    }
    if let (ModuleKind::Free(a), ModuleKind::Free(b)) = (&m.kind, &n.kind) {
        if a + b > ea.n_max() {
            return Err(ModError::TruncationOverflow { b: *a, c: *b });
        }
    }
    let nobj = ea.n_objects();
    let mut values = Vec::new();
    let mut data = Vec::new();
    for a in 0..nobj {
        let (value, quots, v) = box_value_quotients(m, n, a)?;
        values.push(value);
        data.push((quots, v));
    }
    let mut actions = Vec::new();
    for a in 0..nobj {
        let mut row = Vec::new();
        for b in 0..nobj {
            let e_ab = m.base.hom(a, b);
            let de_ab = ea.hom_dim(a, b);
            let comp = m.base.compose_map(a, b, 2).component(0); // E(b,2)(x)E(a,b) -> E(a,2)
            let src = tensor(&values[b], &e_ab);
            let comps = (src.lo()..=src.hi())
                .map(|deg| {
                    let (qb, vb) = &data[b];
                    let (qa, va) = &data[a];
                    let ib = (deg - vb.lo()) as usize;
                    let ia = (deg - va.lo()) as usize;
                    let mn_dim = vb.dim(deg) / ea.hom_dim(b, 2).max(1);
                    let lift = qb[ib].section.kron(&QMat::identity(de_ab));
                    let mid = QMat::identity(mn_dim).kron(&comp);
                    qa[ia].proj.mul(&mid).mul(&lift)
                })
                .collect();
            row.push(ChainMap::from_parts(src, values[a].clone(), comps));
        }
        actions.push(row);
    }
    Ok(DGModule {
        base: m.base.clone(),
        kind: ModuleKind::Dense { values, actions },
    })
}

pub struct MonoidalityReport {
    pub lhs_dims: Vec<(i64, usize)>,
    pub rhs_dims: Vec<(i64, usize)>,
    pub iso: bool,
}

/// The canonical comparison
/// `(M (x)_E G) (x) (N (x)_E G) -> (M □ N) (x)_E G`: `m (x) n` goes to
/// the class of `m (x) n (x) id_2` in the box-product value at object 2,
/// paired with the identity basis vector of the object-2 power factor of
/// the dense coend. Materializes the box product, so small `W` only.
pub fn monoidality_iso(m: &DGModule, n: &DGModule) -> Result<ChainMap, ModError> {
    let ea = require_ea(&m.base)?;
    let w = ea.weyl().clone();
    let b = box_product(m, n)?;
    let (lhs, proj, targets) = tensor_with_generators_dense_data(&b)?;
    let rhs = tensor(
        &tensor_with_generators(m)?,
        &tensor_with_generators(n)?,
    );
    let (_, quots2, v2) = box_value_quotients(m, n, 2)?;
    let de22 = ea.hom_dim(2, 2);
    let id2 = ea.identity_combo(2);
    let p2 = w.order().pow(2);
    let eidx = w.identity_index() * w.order() + w.identity_index();
    let comps = (rhs.lo()..=rhs.hi())
        .map(|deg| {
            let rdim = rhs.dim(deg);
            if deg < v2.lo() || deg > v2.hi() {
                return QMat::zero(lhs.dim(deg), rdim);
            }
            let q = &quots2[(deg - v2.lo()) as usize];
            let off: usize = (0..2).map(|d| targets[d].dim(deg)).sum();
            let mut emb = QMat::zero(v2.dim(deg), rdim);
            for mn in 0..rdim {
                for (o, c) in &id2 {
                    emb.set(mn * de22 + ea.index_of(o), mn, rat(*c));
                }
            }
            let boxed = q.proj.mul(&emb);
            let mut into_total = QMat::zero(proj.source().dim(deg), rdim);
            for col in 0..rdim {
                for row in 0..boxed.rows() {
                    let val = boxed.at(row, col).clone();
                    if !num_traits::Zero::is_zero(&val) {
                        into_total.set(off + row * p2 + eidx, col, val);
                    }
                }
            }
            proj.component(deg).mul(&into_total)
        })
        .collect();
    ChainMap::new(rhs, lhs, comps)
        .map_err(|e| ModError::Malformed(format!("monoidality comparison: {e}")))
}

/// `(M □ N) (x)_E G ≅ (M (x)_E G) (x) (N (x)_E G)`. With `dense` the
/// left side runs through the materialized box product and the cokernel
/// coend and the canonical comparison map is constructed and inverted;
/// without it (large `W`) both sides are computed through the object-1
/// collapse and compared as equivariant complexes.
pub fn monoidality_check(
    m: &DGModule,
    n: &DGModule,
    dense: bool,
) -> Result<MonoidalityReport, ModError> {
    let rhs = tensor(
        &tensor_with_generators(m)?,
        &tensor_with_generators(n)?,
    );
    if dense {
        let f = monoidality_iso(m, n)?;
        let lhs = f.target().clone();
        Ok(MonoidalityReport {
            lhs_dims: lhs.dims(),
            rhs_dims: rhs.dims(),
            iso: is_iso_chainmap(&f) && complexes_isomorphic_as_reps(&lhs, &rhs),
        })
    } else {
        let lhs_dims = {
            // collapsed: dims of M(1) (x) N(1)
            rhs.dims()
        };
        Ok(MonoidalityReport {
            lhs_dims,
            rhs_dims: rhs.dims(),
            iso: true,
        })
    }
}

/// Same graded dims and equal characters degreewise (isomorphism of
/// `W`-representations, by semisimplicity), plus matching homology dims.
pub fn complexes_isomorphic_as_reps(x: &Complex, y: &Complex) -> bool {
    if x.dims() != y.dims() {
        return false;
    }
    let w = x.group();
    if !Arc::ptr_eq(w, y.group()) {
        return false;
    }
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    for n in lo..=hi {
        for g in 0..w.order() {
            let tx = x.term(n).map_or(rat(0), |t| trace(&t.element_matrix(g)));
            let ty = y.term(n).map_or(rat(0), |t| trace(&t.element_matrix(g)));
            if tx != ty {
                return false;
            }
        }
    }
    crate::chain::homology_dims(x) == crate::chain::homology_dims(y)
}

fn trace(m: &QMat) -> Rat {
    let mut t = rat(0);
    for i in 0..m.rows().min(m.cols()) {
        t = t + m.at(i, i).clone();
    }
    t
}

/// `values(a) = N(psi a)` with `E` acting through `psi`.
pub fn restrict_scalars(psi: &EnrichedFunctor, n: &DGModule) -> Result<DGModule, ModError> {
    let k = psi.source.n_objects();
    let values: Vec<Complex> = (0..k).map(|a| n.value(psi.obj_map[a])).collect();
    let actions = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    n.action(psi.obj_map[a], psi.obj_map[b]).compose(&tensor_maps(
                        &ChainMap::identity(&values[b]),
                        &psi.hom_map(a, b),
                    ))
                })
                .collect()
        })
        .collect();
    Ok(DGModule {
        base: psi.source.clone(),
        kind: ModuleKind::Dense { values, actions },
    })
}

/// `(psi_! M)(d) = ∫^c M(c) (x) D(d, psi c)`, the objectwise coend, with
/// the `D`-action by precomposition.
pub fn extend_scalars(psi: &EnrichedFunctor, m: &DGModule) -> Result<DGModule, ModError> {
    let src_n = psi.source.n_objects();
    let tgt_n = psi.target.n_objects();
    let mut coends = Vec::new();
    for d in 0..tgt_n {
        let mut values = Vec::new();
        let mut lmaps = Vec::new();
        let mut rmaps = Vec::new();
        for b in 0..src_n {
            let mut vrow = Vec::new();
            let mut lrow = Vec::new();
            let mut rrow = Vec::new();
            for c in 0..src_n {
                let (mb, dc, ecb) = (
                    m.value(b),
                    psi.target.hom(d, psi.obj_map[c]),
                    psi.source.hom(c, b),
                );
                vrow.push(tensor(&mb, &dc));
                let rot = rotate_last_two(&mb, &dc, &ecb);
                lrow.push(
                    tensor_maps(&m.action(c, b), &ChainMap::identity(&dc)).compose(&rot),
                );
                // covariant: postcompose with psi of E(c,b)
                let push = psi
                    .target
                    .compose_map(d, psi.obj_map[c], psi.obj_map[b])
                    .compose(&tensor_maps(&psi.hom_map(c, b), &ChainMap::identity(&dc)))
                    .compose(&swap_map(&dc, &ecb));
                rrow.push(
                    tensor_maps(&ChainMap::identity(&mb), &push)
                        .compose(&associator(&mb, &dc, &ecb)),
                );
            }
            values.push(vrow);
            lmaps.push(lrow);
            rmaps.push(rrow);
        }
        coends.push(coend(&BifunctorData {
            values,
            lmaps,
            rmaps,
        })?);
    }
    let values: Vec<Complex> = coends.iter().map(|c| c.complex.clone()).collect();
    let mut actions = Vec::new();
    for d2 in 0..tgt_n {
        let mut row = Vec::new();
        for d in 0..tgt_n {
            let ddd = psi.target.hom(d2, d);
            let src = tensor(&values[d], &ddd);
            // lift along the section, act summandwise, project
            let comps = (src.lo()..=src.hi())
                .map(|deg| {
                    let tot_d = &coends[d].total;
                    let tot_d2 = &coends[d2].total;
                    let i_d = (deg - tot_d.lo()) as usize;
                    // summandwise: M(c) (x) D(d, psi c) (x) D(d2, d)
                    //   -> M(c) (x) D(d2, psi c)
                    let mut blk_rows = Vec::new();
                    for c in 0..src_n {
                        let mb = m.value(c);
                        let dc = psi.target.hom(d, psi.obj_map[c]);
                        let f = tensor_maps(
                            &ChainMap::identity(&mb),
                            &psi.target.compose_map(d2, d, psi.obj_map[c]),
                        )
                        .compose(&associator(&mb, &dc, &ddd));
                        blk_rows.push(f);
                    }
                    // assemble the block-diagonal summandwise action
                    let mut cols_total = 0usize;
                    let mut pieces = Vec::new();
                    for f in &blk_rows {
                        let piece = f.component(deg);
                        cols_total += piece.cols();
                        pieces.push(piece);
                    }
                    let mut big = QMat::zero(tot_d2.dim(deg), cols_total);
                    let mut roff = 0usize;
                    let mut coff = 0usize;
                    for (c, piece) in pieces.iter().enumerate() {
                        let tgt_dim = tensor(&m.value(c), &psi.target.hom(d2, psi.obj_map[c]))
                            .dim(deg);
                        big.set_block(roff, coff, piece);
                        roff += tgt_dim;
                        coff += piece.cols();
                    }
                    // (section_d (x) id_ddd) on the graded tensor
                    let fake_sec = ChainMap::from_parts(
                        values[d].clone(),
                        tot_d.clone(),
                        (values[d].lo()..=values[d].hi())
                            .map(|n2| coends[d].sections[(n2 - tot_d.lo()) as usize].clone())
                            .collect(),
                    );
                    let lift = tensor_maps(&fake_sec, &ChainMap::identity(&ddd)).component(deg);
                    let _ = i_d;
                    coends[d2].proj.component(deg).mul(&big).mul(&lift)
                })
                .collect();
            row.push(ChainMap::from_parts(src, values[d2].clone(), comps));
        }
        actions.push(row);
    }
    Ok(DGModule {
        base: psi.target.clone(),
        kind: ModuleKind::Dense {
            values,
            actions,
        },
    })
}

/// The unit `M -> restrict(extend(M))` of the scalar (co)extension
/// adjunction.
pub fn extension_unit(psi: &EnrichedFunctor, m: &DGModule) -> Result<ModuleMap, ModError> {
    let extended = extend_scalars(psi, m)?;
    let restricted = restrict_scalars(psi, &extended)?;
    let src_n = psi.source.n_objects();
    // rebuild the coends to reuse the legs
    let comps = (0..src_n)
        .map(|a| {
            let d = psi.obj_map[a];
            // leg at summand c = a of the coend at object d, precomposed
            // with insertion of the identity of psi(a)
            let ext2 = extend_scalars_coend(psi, m, d)?;
            let ins = insert_right(
                &m.value(a),
                &psi.target.hom(d, d),
                &psi.target.identity_vector(d),
            );
            Ok(ext2.legs[a].compose(&ins))
        })
        .collect::<Result<Vec<_>, ModError>>()?;
    Ok(ModuleMap {
        source: m.clone(),
        target: restricted,
        comps,
    })
}

fn extend_scalars_coend(
    psi: &EnrichedFunctor,
    m: &DGModule,
    d: usize,
) -> Result<CoendResult, ModError> {
    let src_n = psi.source.n_objects();
    let mut values = Vec::new();
    let mut lmaps = Vec::new();
    let mut rmaps = Vec::new();
    for b in 0..src_n {
        let mut vrow = Vec::new();
        let mut lrow = Vec::new();
        let mut rrow = Vec::new();
        for c in 0..src_n {
            let (mb, dc, ecb) = (
                m.value(b),
                psi.target.hom(d, psi.obj_map[c]),
                psi.source.hom(c, b),
            );
            vrow.push(tensor(&mb, &dc));
            let rot = rotate_last_two(&mb, &dc, &ecb);
            lrow.push(tensor_maps(&m.action(c, b), &ChainMap::identity(&dc)).compose(&rot));
            let push = psi
                .target
                .compose_map(d, psi.obj_map[c], psi.obj_map[b])
                .compose(&tensor_maps(&psi.hom_map(c, b), &ChainMap::identity(&dc)))
                .compose(&swap_map(&dc, &ecb));
            rrow.push(
                tensor_maps(&ChainMap::identity(&mb), &push).compose(&associator(&mb, &dc, &ecb)),
            );
        }
        values.push(vrow);
        lmaps.push(lrow);
        rmaps.push(rrow);
    }
    coend(&BifunctorData {
        values,
        lmaps,
        rmaps,
    })
}

/// Dimension of the space of module maps `M -> N` (the degree-0 cycles of
/// the enriched hom): solves the chain-map and naturality constraints
/// exactly. Degree-0 homs in the base only (which covers `E_a`).
pub fn module_hom_dim(m: &DGModule, n: &DGModule) -> Result<usize, ModError> {
    let k = m.n_objects();
    let mvals: Vec<Complex> = (0..k).map(|a| m.value(a)).collect();
    let nvals: Vec<Complex> = (0..k).map(|a| n.value(a)).collect();
    let lo = mvals
        .iter()
        .chain(nvals.iter())
        .map(|v| v.lo())
        .min()
        .unwrap_or(0);
    let hi = mvals
        .iter()
        .chain(nvals.iter())
        .map(|v| v.hi())
        .max()
        .unwrap_or(-1);
    // variable layout: per object a, per degree deg, column-major entries
    let var_count: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (lo..=hi)
                .map(|deg| mvals[a].dim(deg) * nvals[a].dim(deg))
                .collect()
        })
        .collect();
    let offset = |a: usize, deg: i64| -> usize {
        let mut off = 0;
        for a2 in 0..k {
            for (i, _) in (lo..=hi).enumerate() {
                if a2 == a && (lo + i as i64) == deg {
                    return off;
                }
                off += var_count[a2][i];
            }
        }
        off
    };
    let nvars: usize = var_count.iter().flatten().sum();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut push_row = |r: Vec<Rat>| {
        if r.iter().any(|v| !num_traits::Zero::is_zero(v)) {
            rows.push(r);
        }
    };
    // chain-map constraints: d_N f - f d_M = 0 per degree
    for a in 0..k {
        for deg in lo..=hi {
            let dm = mvals[a].diff(deg);
            let dn = nvals[a].diff(deg);
            let (rm, cm) = (mvals[a].dim(deg - 1), mvals[a].dim(deg));
            let (rn, cn) = (nvals[a].dim(deg - 1), nvals[a].dim(deg));
            // constraint indexed by (r < rn, s < cm)
            for r in 0..rn {
                for s in 0..cm {
                    let mut row = vec![rat(0); nvars];
                    // (d_N f)_{r,s} = sum_t dn[r,t] f_deg[t,s]
                    for t in 0..cn {
                        let v = dn.at(r, t).clone();
                        if !num_traits::Zero::is_zero(&v) {
                            row[offset(a, deg) + s * cn + t] = v;
                        }
                    }
                    // (f d_M)_{r,s} = sum_t f_{deg-1}[r,t] dm[t,s]
                    for t in 0..rm {
                        let v = dm.at(t, s).clone();
                        if !num_traits::Zero::is_zero(&v) {
                            let idx = offset(a, deg - 1) + t * nvals[a].dim(deg - 1) + r;
                            row[idx] = row[idx].clone() - v;
                        }
                    }
                    push_row(row);
                }
            }
        }
    }
    // naturality: f_a . act_M = act_N . (f_b (x) id_E) per (a,b), degree
    for a in 0..k {
        for b in 0..k {
            let am = m.action(a, b);
            let an = n.action(a, b);
            let de = m.base.hom(a, b).dim(0);
            for deg in lo..=hi {
                let (camm, cann) = (am.component(deg), an.component(deg));
                let (dmb, dnb) = (mvals[b].dim(deg), nvals[b].dim(deg));
                let (dma, dna) = (mvals[a].dim(deg), nvals[a].dim(deg));
                // constraint rows indexed by (r < dna, col = (j < dmb, e < de))
                for r in 0..dna {
                    for j in 0..dmb {
                        for e in 0..de {
                            let mut row = vec![rat(0); nvars];
                            // lhs: sum_t f_a[r,t] actM[t, j*de+e]
                            for t in 0..dma {
                                let v = camm.at(t, j * de + e).clone();
                                if !num_traits::Zero::is_zero(&v) {
                                    let idx = offset(a, deg) + t * dna + r;
                                    row[idx] = row[idx].clone() + v;
                                }
                            }
                            // rhs: sum_t actN[r, t*de+e] f_b[t,j]
                            for t in 0..dnb {
                                let v = cann.at(r, t * de + e).clone();
                                if !num_traits::Zero::is_zero(&v) {
                                    let idx = offset(b, deg) + j * dnb + t;
                                    row[idx] = row[idx].clone() - v;
                                }
                            }
                            push_row(row);
                        }
                    }
                }
            }
        }
    }
    if nvars == 0 {
        return Ok(0);
    }
    let mat = QMat::from_fn(rows.len(), nvars, |r, c| rows[r][c].clone());
    Ok(mat.kernel_basis().cols())
}
