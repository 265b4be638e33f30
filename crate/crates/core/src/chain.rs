//! Bounded chain complexes of rational representations: the closed
//! symmetric monoidal structure (tensor with diagonal action, hom with
//! conjugation action), fixed points, homology, pushouts and
//! pushout-products, connective covers and degree-zero truncation.
//!
//! Sign conventions, fixed once: `d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy`
//! and `(df) = d o f - (-1)^{|f|} f o d`. Hom elements are stored
//! column-stacked, so `vec(A F B) = (B^T (x) A) vec(F)`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::FiniteGroup;
use crate::ratmat::{quotient_by_columns, rat, QMat};
use crate::rep::{is_equivariant, GRepresentation};

#[derive(Debug)]
pub enum ChainError {
    GroupMismatch,
    ShapeMismatch { degree: i64 },
    DifferentialSquare { degree: i64 },
    NotEquivariant { degree: i64 },
    NotChainMap { degree: i64 },
    SourceMismatch,
    CoconeMismatch,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainError::GroupMismatch => write!(f, "complexes live over different groups"),
            ChainError::ShapeMismatch { degree } => {
                write!(f, "matrix shape mismatch in degree {degree}")
            }
            ChainError::DifferentialSquare { degree } => {
                write!(f, "d o d != 0 entering degree {degree}")
            }
            ChainError::NotEquivariant { degree } => {
                write!(f, "map fails equivariance in degree {degree}")
            }
            ChainError::NotChainMap { degree } => {
                write!(f, "map fails d-commutation in degree {degree}")
            }
            ChainError::SourceMismatch => write!(f, "pushout legs have different sources"),
            ChainError::CoconeMismatch => write!(f, "cocone does not commute over the pushout"),
        }
    }
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A bounded complex of `G`-representations. `terms[i]` sits in degree
/// `lo + i`; `diffs[i]` is `d: X_{lo+i} -> X_{lo+i-1}` (the first one has
/// zero rows). Degrees outside the window are zero.
#[derive(Clone)]
pub struct Complex {
    group: Arc<FiniteGroup>,
    lo: i64,
    terms: Vec<GRepresentation>,
    diffs: Vec<QMat>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex[{}..={}] dims {:?}", self.lo, self.hi(), self.dims())
    }
}

/// Two groups are interchangeable as coefficient groups when they are the
/// same shared group or both trivial.
fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || (a.order() == 1 && b.order() == 1)
}

impl Complex {
    pub fn new(
        group: Arc<FiniteGroup>,
        lo: i64,
        terms: Vec<GRepresentation>,
        diffs: Vec<QMat>,
    ) -> Result<Self, ChainError> {
        let x = Complex {
            group,
            lo,
            terms,
            diffs,
        };
        x.validate()?;
        Ok(x)
    }

    pub(crate) fn from_parts(
        group: Arc<FiniteGroup>,
        lo: i64,
        terms: Vec<GRepresentation>,
        diffs: Vec<QMat>,
    ) -> Self {
        Complex {
            group,
            lo,
            terms,
            diffs,
        }
    }

    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        Complex {
            group,
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.terms[(n - self.lo) as usize].dim()
        }
    }

    pub fn term(&self, n: i64) -> Option<&GRepresentation> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some(&self.terms[(n - self.lo) as usize])
        }
    }

    /// `d_n: X_n -> X_{n-1}`, a zero matrix at the window boundaries.
    pub fn diff(&self, n: i64) -> QMat {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            QMat::zero(self.dim(n - 1), self.dim(n))
        }
    }

    /// Matrix of generator `gi` acting in degree `n` (identity of size 0
    /// outside the window).
    pub fn action_gen(&self, n: i64, gi: usize) -> QMat {
        match self.term(n) {
            Some(t) => t.generator_matrices()[gi].clone(),
            None => QMat::identity(0),
        }
    }

    /// Nonzero degrees with their dimensions, in increasing degree.
    pub fn dims(&self) -> Vec<(i64, usize)> {
        (self.lo..=self.hi())
            .filter(|&n| self.dim(n) > 0)
            .map(|n| (n, self.dim(n)))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.terms.iter().map(|t| t.dim()).sum()
    }

    pub fn is_zero_object(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn validate(&self) -> Result<(), ChainError> {
        if self.diffs.len() != self.terms.len() {
            return Err(ChainError::ShapeMismatch { degree: self.lo });
        }
        for n in self.lo..=self.hi() {
            let d = self.diff(n);
            if d.rows() != self.dim(n - 1) || d.cols() != self.dim(n) {
                return Err(ChainError::ShapeMismatch { degree: n });
            }
            if !self.diff(n - 1).mul(&d).is_zero() {
                return Err(ChainError::DifferentialSquare { degree: n - 1 });
            }
            if let (Some(src), Some(tgt)) = (self.term(n), self.term(n - 1)) {
                if !is_equivariant(src, tgt, &d) {
                    return Err(ChainError::NotEquivariant { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Drop zero-dimensional boundary degrees; contents are unchanged.
    pub fn trimmed(&self) -> Complex {
        let mut lo = self.lo;
        let mut hi = self.hi();
        while lo <= hi && self.dim(lo) == 0 {
            lo += 1;
        }
        while hi >= lo && self.dim(hi) == 0 {
            hi -= 1;
        }
        if lo > hi {
            return Complex::zero(self.group.clone());
        }
        Complex {
            group: self.group.clone(),
            lo,
            terms: (lo..=hi)
                .map(|n| self.term(n).unwrap().clone())
                .collect(),
            diffs: (lo..=hi)
                .map(|n| if n == lo { QMat::zero(0, self.dim(lo)) } else { self.diff(n) })
                .collect(),
        }
    }
}

/// Direct sum, with the two canonical inclusions.
pub fn direct_sum(x: &Complex, y: &Complex) -> (Complex, ChainMap, ChainMap) {
    assert!(same_group(&x.group, &y.group));
    let lo = x.lo.min(y.lo);
    let hi = x.hi().max(y.hi());
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let gens = (0..x.group.generators().len())
            .map(|gi| x.action_gen(n, gi).direct_sum(&y.action_gen(n, gi)))
            .collect();
        terms.push(GRepresentation::from_raw(
            x.group.clone(),
            x.dim(n) + y.dim(n),
            gens,
        ));
        diffs.push(if n == lo {
            QMat::zero(0, x.dim(n) + y.dim(n))
        } else {
            x.diff(n).direct_sum(&y.diff(n))
        });
    }
    let sum = Complex::from_parts(x.group.clone(), lo, terms, diffs);
    let inc_x = ChainMap::from_parts(
        x.clone(),
        sum.clone(),
        (x.lo..=x.hi())
            .map(|n| {
                let mut m = QMat::zero(sum.dim(n), x.dim(n));
                m.set_block(0, 0, &QMat::identity(x.dim(n)));
                m
            })
            .collect(),
    );
    let inc_y = ChainMap::from_parts(
        y.clone(),
        sum.clone(),
        (y.lo..=y.hi())
            .map(|n| {
                let mut m = QMat::zero(sum.dim(n), y.dim(n));
                m.set_block(sum.dim(n) - y.dim(n), 0, &QMat::identity(y.dim(n)));
                m
            })
            .collect(),
    );
    (sum, inc_x, inc_y)
}

/// The complex with one representation concentrated in a single degree.
pub fn concentrated(rep: GRepresentation, n: i64) -> Complex {
    let dim = rep.dim();
    Complex::from_parts(rep.group().clone(), n, vec![rep], vec![QMat::zero(0, dim)])
}

/// `S^n QG`: the regular representation in degree `n`.
pub fn sphere(group: &Arc<FiniteGroup>, n: i64) -> Complex {
    concentrated(GRepresentation::regular(group.clone()), n)
}

/// A disk on an arbitrary representation: `R` in degrees `n` and `n-1`
/// with the identity differential.
pub fn disk_of(rep: GRepresentation, n: i64) -> Complex {
    let dim = rep.dim();
    Complex::from_parts(
        rep.group().clone(),
        n - 1,
        vec![rep.clone(), rep],
        vec![QMat::zero(0, dim), QMat::identity(dim)],
    )
}

/// `D^n QG`.
pub fn disk(group: &Arc<FiniteGroup>, n: i64) -> Complex {
    disk_of(GRepresentation::regular(group.clone()), n)
}

/// The generating cofibration `S^{n-1}QG -> D^n QG` (identity in degree
/// `n-1`).
pub fn generating_cofibration(group: &Arc<FiniteGroup>, n: i64) -> ChainMap {
    let src = sphere(group, n - 1);
    let tgt = disk(group, n);
    let mut comp = QMat::zero(tgt.dim(n - 1), src.dim(n - 1));
    comp.set_block(0, 0, &QMat::identity(src.dim(n - 1)));
    ChainMap::from_parts(src, tgt, vec![comp])
}

/// The generating acyclic cofibration `0 -> D^n QG`.
pub fn acyclic_cofibration(group: &Arc<FiniteGroup>, n: i64) -> ChainMap {
    let src = Complex::zero(group.clone());
    let tgt = disk(group, n);
    ChainMap::from_parts(src, tgt, Vec::new())
}

/// A degree-zero map of complexes.
#[derive(Clone)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    comps: Vec<QMat>, // component in degree source.lo + i
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap {:?} -> {:?}", self.source, self.target)
    }
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, comps: Vec<QMat>) -> Result<Self, ChainError> {
        if !same_group(&source.group, &target.group) {
            return Err(ChainError::GroupMismatch);
        }
        let f = ChainMap {
            source,
            target,
            comps,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_parts(source: Complex, target: Complex, comps: Vec<QMat>) -> Self {
        ChainMap {
            source,
            target,
            comps,
        }
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, n: i64) -> QMat {
        if n < self.source.lo || n > self.source.hi() {
            QMat::zero(self.target.dim(n), self.source.dim(n))
        } else {
            self.comps[(n - self.source.lo) as usize].clone()
        }
    }

    pub fn identity(x: &Complex) -> Self {
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            comps: (x.lo..=x.hi()).map(|n| QMat::identity(x.dim(n))).collect(),
        }
    }

    pub fn zero_map(source: Complex, target: Complex) -> Self {
        let comps = (source.lo..=source.hi())
            .map(|n| QMat::zero(target.dim(n), source.dim(n)))
            .collect();
        ChainMap {
            source,
            target,
            comps,
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let comps = (other.source.lo..=other.source.hi())
            .map(|n| self.component(n).mul(&other.component(n)))
            .collect();
        ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let comps = (self.source.lo..=self.source.hi())
            .map(|n| self.component(n).add(&other.component(n)))
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|m| m.is_zero())
    }

    pub fn validate(&self) -> Result<(), ChainError> {
        if self.comps.len() != self.source.terms.len() {
            return Err(ChainError::ShapeMismatch { degree: self.source.lo });
        }
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi {
            let f_n = self.component(n);
            if f_n.rows() != self.target.dim(n) || f_n.cols() != self.source.dim(n) {
                return Err(ChainError::ShapeMismatch { degree: n });
            }
            let lhs = self.component(n - 1).mul(&self.source.diff(n));
            let rhs = self.target.diff(n).mul(&f_n);
            if lhs.sub(&rhs) != QMat::zero(lhs.rows(), lhs.cols()) {
                return Err(ChainError::NotChainMap { degree: n });
            }
            for gi in 0..self.source.group.generators().len() {
                let a = self.target.action_gen(n, gi).mul(&f_n);
                let b = f_n.mul(&self.source.action_gen(n, gi));
                if !a.sub(&b).is_zero() {
                    return Err(ChainError::NotEquivariant { degree: n });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective_degreewise(&self) -> bool {
        (self.source.lo..=self.source.hi())
            .all(|n| self.component(n).rank() == self.source.dim(n))
    }
}

/// Degrees `i` contributing a block `X_i (x) Y_{n-i}` to `(X (x) Y)_n`,
/// in increasing order of `i`; also the block ordering used everywhere.
pub(crate) fn tensor_blocks(x: &Complex, y: &Complex, n: i64) -> Vec<i64> {
    if x.terms.is_empty() || y.terms.is_empty() {
        return Vec::new();
    }
    let lo = x.lo.max(n - y.hi());
    let hi = x.hi().min(n - y.lo);
    (lo..=hi).collect()
}

fn block_offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for &d in dims {
        out.push(acc);
        acc += d;
    }
    out.push(acc);
    out
}

/// `(X (x) Y)_n = (+)_{i+j=n} X_i (x) Y_j` with the diagonal action and
/// the Koszul differential.
pub fn tensor(x: &Complex, y: &Complex) -> Complex {
    assert!(same_group(&x.group, &y.group), "tensor: group mismatch");
    if x.terms.is_empty() || y.terms.is_empty() {
        return Complex::zero(x.group.clone());
    }
    let lo = x.lo + y.lo;
    let hi = x.hi() + y.hi();
    let ngen = x.group.generators().len();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let blocks = tensor_blocks(x, y, n);
        let dims: Vec<usize> = blocks.iter().map(|&i| x.dim(i) * y.dim(n - i)).collect();
        let total: usize = dims.iter().sum();
        let gens = (0..ngen)
            .map(|gi| {
                let mut m = QMat::identity(0);
                for &i in &blocks {
                    m = m.direct_sum(&x.action_gen(i, gi).kron(&y.action_gen(n - i, gi)));
                }
                m
            })
            .collect();
        terms.push(GRepresentation::from_raw(x.group.clone(), total, gens));

        let tblocks = tensor_blocks(x, y, n - 1);
        let tdims: Vec<usize> = tblocks.iter().map(|&i| x.dim(i) * y.dim(n - 1 - i)).collect();
        let roff = block_offsets(&tdims);
        let coff = block_offsets(&dims);
        let mut d = QMat::zero(tdims.iter().sum(), total);
        for (bc, &i) in blocks.iter().enumerate() {
            let j = n - i;
            // d_X (x) id into block (i-1, j)
            if let Some(br) = tblocks.iter().position(|&t| t == i - 1) {
                d.set_block(roff[br], coff[bc], &x.diff(i).kron(&QMat::identity(y.dim(j))));
            }
            // (-1)^i id (x) d_Y into block (i, j-1)
            if let Some(br) = tblocks.iter().position(|&t| t == i) {
                d.set_block(
                    roff[br],
                    coff[bc],
                    &QMat::identity(x.dim(i)).kron(&y.diff(j)).scale(&rat(sign(i))),
                );
            }
        }
        diffs.push(if n == lo { QMat::zero(0, total) } else { d });
    }
    Complex::from_parts(x.group.clone(), lo, terms, diffs)
}

/// Tensor of two degree-zero chain maps, blockwise `f_i (x) g_j`.
pub fn tensor_maps(f: &ChainMap, g: &ChainMap) -> ChainMap {
    let src = tensor(&f.source, &g.source);
    let tgt = tensor(&f.target, &g.target);
    let comps = (src.lo..=src.hi())
        .map(|n| {
            let sblocks = tensor_blocks(&f.source, &g.source, n);
            let tblocks = tensor_blocks(&f.target, &g.target, n);
            let sdims: Vec<usize> = sblocks
                .iter()
                .map(|&i| f.source.dim(i) * g.source.dim(n - i))
                .collect();
            let tdims: Vec<usize> = tblocks
                .iter()
                .map(|&i| f.target.dim(i) * g.target.dim(n - i))
                .collect();
            let roff = block_offsets(&tdims);
            let coff = block_offsets(&sdims);
            let mut m = QMat::zero(tgt.dim(n), src.dim(n));
            for (bc, &i) in sblocks.iter().enumerate() {
                if let Some(br) = tblocks.iter().position(|&t| t == i) {
                    m.set_block(roff[br], coff[bc], &f.component(i).kron(&g.component(n - i)));
                }
            }
            m
        })
        .collect();
    ChainMap::from_parts(src, tgt, comps)
}

/// The strict associativity isomorphism `(X (x) Y) (x) Z -> X (x) (Y (x) Z)`
/// (a permutation of blocks; within a block the Kronecker index is shared).
pub fn associator(x: &Complex, y: &Complex, z: &Complex) -> ChainMap {
    let xy = tensor(x, y);
    let yz = tensor(y, z);
    let src = tensor(&xy, z);
    let tgt = tensor(x, &yz);
    let comps = (src.lo..=src.hi())
        .map(|n| {
            // top-level block offsets of ((X Y) Z)_n, keyed by the XY-degree
            let src_top = |m: i64| -> usize {
                tensor_blocks(&xy, z, n)
                    .into_iter()
                    .take_while(|&m2| m2 < m)
                    .map(|m2| xy.dim(m2) * z.dim(n - m2))
                    .sum()
            };
            // offset of block X_i (x) Y_{m-i} inside (X Y)_m
            let xy_off = |i: i64, m: i64| -> usize {
                tensor_blocks(x, y, m)
                    .into_iter()
                    .take_while(|&i2| i2 < i)
                    .map(|i2| x.dim(i2) * y.dim(m - i2))
                    .sum()
            };
            let tgt_top = |i: i64| -> usize {
                tensor_blocks(x, &yz, n)
                    .into_iter()
                    .take_while(|&i2| i2 < i)
                    .map(|i2| x.dim(i2) * yz.dim(n - i2))
                    .sum()
            };
            let yz_off = |j: i64, m: i64| -> usize {
                tensor_blocks(y, z, m)
                    .into_iter()
                    .take_while(|&j2| j2 < j)
                    .map(|j2| y.dim(j2) * z.dim(m - j2))
                    .sum()
            };
            let mut mat = QMat::zero(tgt.dim(n), src.dim(n));
            for m in tensor_blocks(&xy, z, n) {
                for i in tensor_blocks(x, y, m) {
                    let (j, k) = (m - i, n - m);
                    let (dx, dy, dz) = (x.dim(i), y.dim(j), z.dim(k));
                    if dx * dy * dz == 0 || !tensor_blocks(x, &yz, n).contains(&i) {
                        continue;
                    }
                    let so = src_top(m);
                    let xyo = xy_off(i, m);
                    let to = tgt_top(i);
                    let yzo = yz_off(j, n - i);
                    let yzdim = yz.dim(n - i);
                    for a in 0..dx {
                        for b in 0..dy {
                            for c in 0..dz {
                                let s = so + (xyo + a * dy + b) * dz + c;
                                let t = to + a * yzdim + yzo + b * dz + c;
                                mat.set(t, s, rat(1));
                            }
                        }
                    }
                }
            }
            mat
        })
        .collect();
    ChainMap::from_parts(src, tgt, comps)
}

/// `v |-> v (x) w` for a fixed degree-0 cycle `w` of `Y`, as a chain map
/// `X -> X (x) Y`.
pub fn insert_right(x: &Complex, y: &Complex, w: &QMat) -> ChainMap {
    assert_eq!(w.rows(), y.dim(0));
    assert!(y.diff(0).mul(w).is_zero());
    let tgt = tensor(x, y);
    let comps = (x.lo..=x.hi())
        .map(|n| {
            let blocks = tensor_blocks(x, y, n);
            let dims: Vec<usize> = blocks.iter().map(|&i| x.dim(i) * y.dim(n - i)).collect();
            let off = block_offsets(&dims);
            let mut m = QMat::zero(tgt.dim(n), x.dim(n));
            if let Some(b) = blocks.iter().position(|&i| i == n) {
                m.set_block(off[b], 0, &QMat::identity(x.dim(n)).kron(w));
            }
            m
        })
        .collect();
    ChainMap::from_parts(x.clone(), tgt, comps)
}

/// `v |-> w (x) v` for a fixed degree-0 cycle `w` of `Y`, as a chain map
/// `X -> Y (x) X`.
pub fn insert_left(y: &Complex, x: &Complex, w: &QMat) -> ChainMap {
    assert_eq!(w.rows(), y.dim(0));
    assert!(y.diff(0).mul(w).is_zero());
    let tgt = tensor(y, x);
    let comps = (x.lo..=x.hi())
        .map(|n| {
            let blocks = tensor_blocks(y, x, n);
            let dims: Vec<usize> = blocks.iter().map(|&j| y.dim(j) * x.dim(n - j)).collect();
            let off = block_offsets(&dims);
            let mut m = QMat::zero(tgt.dim(n), x.dim(n));
            if let Some(b) = blocks.iter().position(|&j| j == 0) {
                m.set_block(off[b], 0, &w.kron(&QMat::identity(x.dim(n))));
            }
            m
        })
        .collect();
    ChainMap::from_parts(x.clone(), tgt, comps)
}

/// The Koszul symmetry `X (x) Y -> Y (x) X`, `x (x) y |-> (-1)^{|x||y|}
/// y (x) x`.
pub fn swap_map(x: &Complex, y: &Complex) -> ChainMap {
    let src = tensor(x, y);
    let tgt = tensor(y, x);
    let comps = (src.lo..=src.hi())
        .map(|n| {
            let sblocks = tensor_blocks(x, y, n);
            let tblocks = tensor_blocks(y, x, n);
            let sdims: Vec<usize> = sblocks.iter().map(|&i| x.dim(i) * y.dim(n - i)).collect();
            let tdims: Vec<usize> = tblocks.iter().map(|&j| y.dim(j) * x.dim(n - j)).collect();
            let roff = block_offsets(&tdims);
            let coff = block_offsets(&sdims);
            let mut m = QMat::zero(tgt.dim(n), src.dim(n));
            for (bc, &i) in sblocks.iter().enumerate() {
                let j = n - i;
                let (dx, dy) = (x.dim(i), y.dim(j));
                if let Some(br) = tblocks.iter().position(|&t| t == j) {
                    // commutation matrix: e_a (x) f_b |-> f_b (x) e_a
                    let mut s = QMat::zero(dy * dx, dx * dy);
                    for a in 0..dx {
                        for b in 0..dy {
                            s.set(b * dx + a, a * dy + b, rat(sign(i * j)));
                        }
                    }
                    m.set_block(roff[br], coff[bc], &s);
                }
            }
            m
        })
        .collect();
    ChainMap::from_parts(src, tgt, comps)
}

/// `hom(X,Y)_n = prod_k hom(X_k, Y_{n+k})`, conjugation action, block `k`
/// in increasing order of `k`; each block is column-stacked.
pub fn hom_complex(x: &Complex, y: &Complex) -> Complex {
    assert!(same_group(&x.group, &y.group), "hom_complex: group mismatch");
    if x.terms.is_empty() || y.terms.is_empty() {
        return Complex::zero(x.group.clone());
    }
    let lo = y.lo - x.hi();
    let hi = y.hi() - x.lo;
    let ngen = x.group.generators().len();
    // inverse-transpose of source generator matrices, per degree
    let inv_t: Vec<Vec<QMat>> = (x.lo..=x.hi())
        .map(|k| {
            (0..ngen)
                .map(|gi| {
                    x.action_gen(k, gi)
                        .inverse()
                        .expect("action matrices are invertible")
                        .transpose()
                })
                .collect()
        })
        .collect();
    let blocks_at = |n: i64| -> Vec<i64> {
        (x.lo..=x.hi())
            .filter(|&k| n + k >= y.lo && n + k <= y.hi())
            .collect()
    };
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let blocks = blocks_at(n);
        let dims: Vec<usize> = blocks.iter().map(|&k| x.dim(k) * y.dim(n + k)).collect();
        let total: usize = dims.iter().sum();
        let gens = (0..ngen)
            .map(|gi| {
                let mut m = QMat::identity(0);
                for &k in &blocks {
                    m = m.direct_sum(
                        &inv_t[(k - x.lo) as usize][gi].kron(&y.action_gen(n + k, gi)),
                    );
                }
                m
            })
            .collect();
        terms.push(GRepresentation::from_raw(x.group.clone(), total, gens));

        let tblocks = blocks_at(n - 1);
        let tdims: Vec<usize> = tblocks.iter().map(|&k| x.dim(k) * y.dim(n - 1 + k)).collect();
        let roff = block_offsets(&tdims);
        let coff = block_offsets(&dims);
        let mut d = QMat::zero(tdims.iter().sum(), total);
        for (bc, &k) in blocks.iter().enumerate() {
            // d_Y o f_k stays in block k
            if let Some(br) = tblocks.iter().position(|&t| t == k) {
                d.set_block(
                    roff[br],
                    coff[bc],
                    &QMat::identity(x.dim(k)).kron(&y.diff(n + k)),
                );
            }
            // -(-1)^n f_k o d_{k+1} lands in block k+1
            if let Some(br) = tblocks.iter().position(|&t| t == k + 1) {
                d.set_block(
                    roff[br],
                    coff[bc],
                    &x.diff(k + 1)
                        .transpose()
                        .kron(&QMat::identity(y.dim(n + k)))
                        .scale(&rat(-sign(n))),
                );
            }
        }
        diffs.push(if n == lo { QMat::zero(0, total) } else { d });
    }
    Complex::from_parts(x.group.clone(), lo, terms, diffs)
}

/// Replace each term of a complex over the trivial group by the same space
/// with the trivial `G`-action.
pub fn trivial_action(m: &Complex, group: &Arc<FiniteGroup>) -> Complex {
    assert_eq!(m.group.order(), 1, "trivial_action: source must be over the trivial group");
    let terms = m
        .terms
        .iter()
        .map(|t| GRepresentation::trivial(group.clone(), t.dim()))
        .collect();
    Complex::from_parts(group.clone(), m.lo, terms, m.diffs.clone())
}

/// `M (x) X = eps^*(M) (x) X` for `M` over the trivial group.
pub fn tensor_ch_over_base(m: &Complex, x: &Complex) -> Complex {
    tensor(&trivial_action(m, &x.group), x)
}

/// Fixed points `X^G` as a complex over the trivial group, together with
/// the per-degree inclusion of the fixed basis into `X_n`.
pub fn fixed_points(x: &Complex) -> (Complex, Vec<QMat>) {
    let triv = FiniteGroup::trivial();
    let mut incl: Vec<QMat> = Vec::new();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for n in x.lo..=x.hi() {
        let b = x.term(n).unwrap().fixed_subspace();
        terms.push(GRepresentation::trivial(triv.clone(), b.cols()));
        incl.push(b);
    }
    for (i, n) in (x.lo..=x.hi()).enumerate() {
        let d = if i == 0 {
            QMat::zero(0, terms[0].dim())
        } else {
            // d restricted to fixed bases: solve B_{n-1} d' = d_n B_n
            incl[i - 1]
                .solve(&x.diff(n).mul(&incl[i]))
                .expect("differential preserves fixed points")
        };
        diffs.push(d);
    }
    (Complex::from_parts(triv, x.lo, terms, diffs), incl)
}

/// Homology with all the change-of-basis data: `reps[n]` embeds the
/// homology basis as cycle representatives in `X_n`, and `classes[n]`
/// sends any cycle in `X_n` to its class (its values off the cycle
/// subspace are immaterial).
pub struct HomologyData {
    pub complex: Complex,
    pub reps: Vec<QMat>,
    pub classes: Vec<QMat>,
}

pub fn homology_data(x: &Complex) -> HomologyData {
    let ngen = x.group.generators().len();
    let mut terms = Vec::new();
    let mut reps = Vec::new();
    let mut classes = Vec::new();
    let mut diffs = Vec::new();
    for n in x.lo..=x.hi() {
        let z = x.diff(n).kernel_basis(); // dim(n) x z
        let img_coords = z
            .solve(&x.diff(n + 1))
            .expect("boundaries are cycles");
        let q = quotient_by_columns(z.cols(), &img_coords);
        let gens = (0..ngen)
            .map(|gi| {
                let az = z
                    .solve(&x.action_gen(n, gi).mul(&z))
                    .expect("action preserves cycles");
                q.proj.mul(&az).mul(&q.section)
            })
            .collect();
        terms.push(GRepresentation::from_raw(x.group.clone(), q.dim, gens));
        reps.push(z.mul(&q.section));
        // left inverse of the kernel basis via its (rational) Gram matrix
        let zt = z.transpose();
        let left_inv = match zt.mul(&z).inverse() {
            Some(g) => g.mul(&zt),
            None => QMat::zero(0, z.rows()), // z has no columns
        };
        classes.push(q.proj.mul(&left_inv));
        diffs.push(QMat::zero(
            if n == x.lo { 0 } else { terms[(n - 1 - x.lo) as usize].dim() },
            q.dim,
        ));
    }
    HomologyData {
        complex: Complex::from_parts(x.group.clone(), x.lo, terms, diffs),
        reps,
        classes,
    }
}

/// Homology per degree, with the induced action and a matrix of cycle
/// representatives (columns in `X_n`-coordinates). Differentials of the
/// output are zero.
pub fn homology(x: &Complex) -> (Complex, Vec<QMat>) {
    let h = homology_data(x);
    (h.complex, h.reps)
}

/// Graded dimensions of homology, nonzero degrees only.
pub fn homology_dims(x: &Complex) -> Vec<(i64, usize)> {
    homology(x).0.dims()
}

pub fn is_acyclic(x: &Complex) -> bool {
    homology_dims(x).is_empty()
}

/// A map is a weak equivalence iff it induces isomorphisms on homology.
pub fn is_quasi_iso(f: &ChainMap) -> bool {
    let (hs, rs) = homology(&f.source);
    let (ht, _) = homology(&f.target);
    let lo = hs.lo.min(ht.lo);
    let hi = hs.hi().max(ht.hi());
    for n in lo..=hi {
        if hs.dim(n) != ht.dim(n) {
            return false;
        }
        if hs.dim(n) == 0 {
            continue;
        }
        // induced map in H_n: coordinates of f(cycle reps) against target data
        let zt = f.target.diff(n).kernel_basis();
        let img = f.component(n).mul(&rs[(n - hs.lo) as usize]);
        let coords = match zt.solve(&img) {
            Some(c) => c,
            None => return false,
        };
        let q = quotient_by_columns(zt.cols(), &zt.solve(&f.target.diff(n + 1)).unwrap());
        let induced = q.proj.mul(&coords);
        if !induced.is_invertible() {
            return false;
        }
    }
    true
}

/// A pushout square, retaining enough data to factor cocones through it.
pub struct Pushout {
    pub complex: Complex,
    pub leg_left: ChainMap,  // B -> P
    pub leg_right: ChainMap, // C -> P
    sections: Vec<QMat>,
    lo: i64,
}

/// Degreewise cokernel of `(f, -g): A -> B (+) C` for `f: A -> B`,
/// `g: A -> C`.
pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Pushout, ChainError> {
    if f.source.dims() != g.source.dims() || !same_group(&f.source.group, &g.source.group) {
        return Err(ChainError::SourceMismatch);
    }
    let b = &f.target;
    let c = &g.target;
    let lo = b.lo.min(c.lo);
    let hi = b.hi().max(c.hi());
    let ngen = b.group.generators().len();
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut projs = Vec::new();
    let mut sections = Vec::new();
    for n in lo..=hi {
        let sub = f.component(n).vstack(&g.component(n).neg());
        let q = quotient_by_columns(b.dim(n) + c.dim(n), &sub);
        let gens = (0..ngen)
            .map(|gi| {
                q.proj
                    .mul(&b.action_gen(n, gi).direct_sum(&c.action_gen(n, gi)))
                    .mul(&q.section)
            })
            .collect();
        terms.push(GRepresentation::from_raw(b.group.clone(), q.dim, gens));
        projs.push(q.proj);
        sections.push(q.section);
    }
    for (i, n) in (lo..=hi).enumerate() {
        diffs.push(if i == 0 {
            QMat::zero(0, terms[0].dim())
        } else {
            projs[i - 1]
                .mul(&b.diff(n).direct_sum(&c.diff(n)))
                .mul(&sections[i])
        });
    }
    let p = Complex::from_parts(b.group.clone(), lo, terms, diffs);
    let leg_left = ChainMap::from_parts(
        b.clone(),
        p.clone(),
        (b.lo..=b.hi())
            .map(|n| {
                let i = (n - lo) as usize;
                let mut e = QMat::zero(b.dim(n) + c.dim(n), b.dim(n));
                e.set_block(0, 0, &QMat::identity(b.dim(n)));
                projs[i].mul(&e)
            })
            .collect(),
    );
    let leg_right = ChainMap::from_parts(
        c.clone(),
        p.clone(),
        (c.lo..=c.hi())
            .map(|n| {
                let i = (n - lo) as usize;
                let mut e = QMat::zero(b.dim(n) + c.dim(n), c.dim(n));
                e.set_block(b.dim(n), 0, &QMat::identity(c.dim(n)));
                projs[i].mul(&e)
            })
            .collect(),
    );
    Ok(Pushout {
        complex: p,
        leg_left,
        leg_right,
        sections,
        lo,
    })
}

impl Pushout {
    /// Factor a commuting cocone `u: B -> T`, `v: C -> T` through the
    /// pushout.
    pub fn induced_map(&self, u: &ChainMap, v: &ChainMap) -> Result<ChainMap, ChainError> {
        let t = u.target.clone();
        let p = &self.complex;
        let comps = (p.lo..=p.hi())
            .map(|n| {
                let w = u.component(n).hstack(&v.component(n));
                w.mul(&self.sections[(n - self.lo) as usize])
            })
            .collect();
        let h = ChainMap::from_parts(p.clone(), t, comps);
        // well-definedness: the factored map must still commute with the legs
        for n in p.lo..=p.hi() {
            if h.component(n).mul(&self.leg_left.component(n)) != u.component(n)
                || h.component(n).mul(&self.leg_right.component(n)) != v.component(n)
            {
                return Err(ChainError::CoconeMismatch);
            }
        }
        Ok(h)
    }
}

/// Pushout-product `f <> g: B(x)C (+)_{A(x)C} A(x)D -> B(x)D` of
/// `f: A -> B` and `g: C -> D`.
pub fn pushout_product(f: &ChainMap, g: &ChainMap) -> Result<ChainMap, ChainError> {
    let f_c = tensor_maps(f, &ChainMap::identity(&g.source)); // A(x)C -> B(x)C
    let a_g = tensor_maps(&ChainMap::identity(&f.source), g); // A(x)C -> A(x)D
    let po = pushout(&f_c, &a_g)?;
    let u = tensor_maps(&ChainMap::identity(&f.target), g); // B(x)C -> B(x)D
    let v = tensor_maps(f, &ChainMap::identity(&g.target)); // A(x)D -> B(x)D
    po.induced_map(&u, &v)
}

/// Degreewise cokernel of a chain map, with the induced structure.
pub fn cokernel(f: &ChainMap) -> Complex {
    cokernel_data(f).0
}

/// Cokernel with the quotient chain map and degreewise sections.
pub fn cokernel_data(f: &ChainMap) -> (Complex, ChainMap, Vec<QMat>) {
    let t = &f.target;
    let ngen = t.group.generators().len();
    let mut qs = Vec::new();
    for n in t.lo..=t.hi() {
        qs.push(quotient_by_columns(t.dim(n), &f.component(n)));
    }
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    for (i, n) in (t.lo..=t.hi()).enumerate() {
        let gens = (0..ngen)
            .map(|gi| qs[i].proj.mul(&t.action_gen(n, gi)).mul(&qs[i].section))
            .collect();
        terms.push(GRepresentation::from_raw(t.group.clone(), qs[i].dim, gens));
        diffs.push(if i == 0 {
            QMat::zero(0, qs[0].dim)
        } else {
            qs[i - 1].proj.mul(&t.diff(n)).mul(&qs[i].section)
        });
    }
    let c = Complex::from_parts(t.group.clone(), t.lo, terms, diffs);
    let proj = ChainMap::from_parts(
        t.clone(),
        c.clone(),
        qs.iter().map(|q| q.proj.clone()).collect(),
    );
    let sections = qs.into_iter().map(|q| q.section).collect();
    (c, proj, sections)
}

/// `C_0 X`: `X_n` for `n > 0`, `ker(d_0)` in degree zero, zero below;
/// returns the canonical inclusion into `X` as well.
pub fn connective_cover(x: &Complex) -> (Complex, ChainMap) {
    if x.hi() < 0 {
        let z = Complex::zero(x.group.clone());
        let f = ChainMap::from_parts(z.clone(), x.clone(), Vec::new());
        return (z, f);
    }
    let ngen = x.group.generators().len();
    let k = x.diff(0).kernel_basis(); // dim(0) x k
    let mut terms = Vec::new();
    let mut diffs = Vec::new();
    let mut incl = Vec::new();
    for n in 0..=x.hi() {
        if n == 0 {
            let gens = (0..ngen)
                .map(|gi| {
                    k.solve(&x.action_gen(0, gi).mul(&k))
                        .expect("action preserves the kernel")
                })
                .collect();
            terms.push(GRepresentation::from_raw(x.group.clone(), k.cols(), gens));
            diffs.push(QMat::zero(0, k.cols()));
            incl.push(k.clone());
        } else {
            terms.push(
                x.term(n)
                    .cloned()
                    .unwrap_or_else(|| GRepresentation::trivial(x.group.clone(), 0)),
            );
            diffs.push(if n == 1 {
                k.solve(&x.diff(1)).expect("d_1 lands in ker d_0")
            } else {
                x.diff(n)
            });
            incl.push(QMat::identity(x.dim(n)));
        }
    }
    let c = Complex::from_parts(x.group.clone(), 0, terms, diffs);
    let f = ChainMap::from_parts(c.clone(), x.clone(), incl);
    (c, f)
}

/// `H_0(X)` concentrated in degree zero, with the quotient map from
/// `C_0 X` that kills positive degrees.
pub fn h0_truncation(x: &Complex) -> (Complex, ChainMap) {
    let (cover, _) = connective_cover(x);
    if cover.terms.is_empty() {
        let z = Complex::zero(x.group.clone());
        let f = ChainMap::from_parts(cover, z.clone(), Vec::new());
        return (z, f);
    }
    let ngen = x.group.generators().len();
    // in the cover, degree 0 already consists of cycles
    let q = quotient_by_columns(cover.dim(0), &cover.diff(1));
    let gens = (0..ngen)
        .map(|gi| q.proj.mul(&cover.action_gen(0, gi)).mul(&q.section))
        .collect();
    let h0 = concentrated(
        GRepresentation::from_raw(x.group.clone(), q.dim, gens),
        0,
    );
    let comps = (cover.lo..=cover.hi())
        .map(|n| {
            if n == 0 {
                q.proj.clone()
            } else {
                QMat::zero(0, cover.dim(n))
            }
        })
        .collect();
    let f = ChainMap::from_parts(cover, h0.clone(), comps);
    (h0, f)
}

/// Graded homs in the homotopy category: `H_*(hom(X,Y)^G)`. Valid without
/// cofibrant replacement because `QG` is semisimple.
/// `x[k]`: degree `n` of the shift is degree `n - k` of `x`, with the
/// usual sign `(-1)^k` on the differential.
pub fn shift(x: &Complex, k: i64) -> Complex {
    if x.terms.is_empty() {
        return Complex::zero(x.group.clone());
    }
    let sign = if k.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
    let terms = x.terms.clone();
    let diffs = (x.lo()..=x.hi())
        .map(|n| x.diff(n).scale(&sign))
        .collect();
    Complex::from_parts(x.group.clone(), x.lo() + k, terms, diffs)
}

pub fn homotopy_hom(x: &Complex, y: &Complex) -> Vec<(i64, usize)> {
    let (fixed, _) = fixed_points(&hom_complex(x, y));
    homology_dims(&fixed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::named_group;
    use crate::ratmat::rat_frac;
    use crate::sample::{rand_complex, SplitMix64};

    #[test]
    fn spheres_and_disks() {
        let triv = FiniteGroup::trivial();
        let s = sphere(&triv, 0);
        assert_eq!(s.dims(), vec![(0, 1)]);
        let g = named_group("cyclic-2").unwrap();
        let s3 = sphere(&g, 3);
        assert_eq!(s3.dims(), vec![(3, 2)]);
        assert_eq!(homology_dims(&s3), vec![(3, 2)]);

        let d = disk(&g, 5);
        assert!(d.validate().is_ok());
        assert!(homology_dims(&d).is_empty());
        assert_eq!(disk(&triv, 1).dims(), vec![(0, 1), (1, 1)]);

        let inc = generating_cofibration(&g, 1);
        assert!(inc.validate().is_ok());
        assert!(inc.is_injective_degreewise());
        assert!(acyclic_cofibration(&g, 2).validate().is_ok());
    }

    #[test]
    fn tensor_of_spheres_and_unit_law() {
        let g = named_group("symmetric-3").unwrap();
        let t = tensor(&sphere(&g, 1), &sphere(&g, 2));
        assert!(t.validate().is_ok());
        assert_eq!(homology_dims(&t), vec![(3, 36)]);

        // X (x) S^0 Q is literally X again: single blocks, kron with 1x1
        let mut rng = SplitMix64::new(7);
        let x = rand_complex(&g, &mut rng, -1, 2);
        let unit = trivial_action(&sphere(&FiniteGroup::trivial(), 0), &g);
        let xu = tensor(&x, &unit);
        assert_eq!(xu.dims(), x.dims());
        for n in x.lo()..=x.hi() {
            assert_eq!(xu.diff(n), x.diff(n));
        }
    }

    #[test]
    fn tensor_differential_squares_to_zero() {
        let g = named_group("cyclic-3").unwrap();
        let mut rng = SplitMix64::new(11);
        for _ in 0..3 {
            let x = rand_complex(&g, &mut rng, 0, 2);
            let y = rand_complex(&g, &mut rng, -1, 1);
            assert!(tensor(&x, &y).validate().is_ok());
        }
    }

    #[test]
    fn koszul_swap_is_a_chain_map_and_involution() {
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(3);
        let x = rand_complex(&g, &mut rng, 0, 2);
        let y = rand_complex(&g, &mut rng, -1, 1);
        let s = swap_map(&x, &y);
        assert!(s.validate().is_ok());
        let back = swap_map(&y, &x).compose(&s);
        let id = ChainMap::identity(s.source());
        for n in s.source().lo()..=s.source().hi() {
            assert_eq!(back.component(n), id.component(n));
        }
    }

    #[test]
    fn associator_and_insertions() {
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(19);
        let x = rand_complex(&g, &mut rng, 0, 1);
        let y = rand_complex(&g, &mut rng, -1, 1);
        let z = rand_complex(&g, &mut rng, 0, 2);
        let a = associator(&x, &y, &z);
        assert!(a.validate().is_ok());
        for n in a.source().lo()..=a.source().hi() {
            let c = a.component(n);
            assert_eq!(c.rank(), a.source().dim(n));
        }
        // inserting a cycle is a chain map; inserting the unit of Q is an iso
        let triv = FiniteGroup::trivial();
        let unit = trivial_action(&sphere(&triv, 0), &g);
        let one = QMat::identity(1);
        let r = insert_right(&x, &unit, &one);
        let l = insert_left(&unit, &x, &one);
        assert!(r.validate().is_ok());
        assert!(l.validate().is_ok());
        assert!(r.is_injective_degreewise());
        assert!(l.is_injective_degreewise());
    }

    #[test]
    fn hom_complex_gradings() {
        let triv = FiniteGroup::trivial();
        let h = hom_complex(&sphere(&triv, 1), &sphere(&triv, 0));
        assert_eq!(h.dims(), vec![(-1, 1)]);

        let g = named_group("symmetric-3").unwrap();
        let mut rng = SplitMix64::new(5);
        let y = rand_complex(&g, &mut rng, 0, 2);
        let h = hom_complex(&sphere(&g, 0), &y);
        for n in h.lo()..=h.hi() {
            assert_eq!(h.dim(n), 6 * y.dim(n));
        }
        assert!(h.validate().is_ok());
    }

    #[test]
    fn hom_tensor_adjunction_dims() {
        // dim of G-fixed 0-cycles of hom(X(x)Y, Z) vs hom(X, hom(Y,Z))
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(17);
        for _ in 0..2 {
            let x = rand_complex(&g, &mut rng, 0, 1);
            let y = rand_complex(&g, &mut rng, 0, 1);
            let z = rand_complex(&g, &mut rng, 0, 2);
            let lhs = hom_complex(&tensor(&x, &y), &z);
            let rhs = hom_complex(&x, &hom_complex(&y, &z));
            let (lf, _) = fixed_points(&lhs);
            let (rf, _) = fixed_points(&rhs);
            assert_eq!(
                lf.diff(0).kernel_basis().cols(),
                rf.diff(0).kernel_basis().cols()
            );
            assert_eq!(homology_dims(&lf), homology_dims(&rf));
        }
    }

    #[test]
    fn averaging_projector_on_regular_c2() {
        let g = named_group("cyclic-2").unwrap();
        let reg = GRepresentation::regular(g);
        let av = reg.average_projector();
        let expect = QMat::from_fn(2, 2, |_, _| rat_frac(1, 2));
        assert_eq!(av, expect);
    }

    #[test]
    fn fixed_points_basics() {
        let triv = FiniteGroup::trivial();
        let g = named_group("cyclic-2").unwrap();

        let m = disk(&triv, 1);
        let (f, _) = fixed_points(&trivial_action(&m, &g));
        assert_eq!(f.dims(), m.dims());
        for n in m.lo()..=m.hi() {
            assert_eq!(f.diff(n), m.diff(n));
        }

        let (f, _) = fixed_points(&sphere(&g, 0));
        assert_eq!(f.dims(), vec![(0, 1)]);
    }

    #[test]
    fn homology_commutes_with_fixed_points() {
        let g = named_group("symmetric-3").unwrap();
        let mut rng = SplitMix64::new(23);
        for _ in 0..2 {
            let x = rand_complex(&g, &mut rng, -1, 2);
            let (fx, _) = fixed_points(&x);
            let left = homology_dims(&fx);
            let (hx, _) = homology(&x);
            let right: Vec<(i64, usize)> = (hx.lo()..=hx.hi())
                .filter_map(|n| {
                    let d = hx.term(n).unwrap().fixed_subspace().cols();
                    (d > 0).then_some((n, d))
                })
                .collect();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn homology_basics() {
        let g = named_group("quaternion-8").unwrap();
        assert!(homology_dims(&disk(&g, 2)).is_empty());
        assert_eq!(homology_dims(&sphere(&g, -2)), vec![(-2, 8)]);

        // Q --1--> Q
        let triv = FiniteGroup::trivial();
        let two_term = Complex::new(
            triv.clone(),
            0,
            vec![
                GRepresentation::trivial(triv.clone(), 1),
                GRepresentation::trivial(triv.clone(), 1),
            ],
            vec![QMat::zero(0, 1), QMat::identity(1)],
        )
        .unwrap();
        assert!(homology_dims(&two_term).is_empty());
    }

    #[test]
    fn homology_induced_action_is_an_action() {
        let g = named_group("symmetric-3").unwrap();
        let mut rng = SplitMix64::new(29);
        let x = rand_complex(&g, &mut rng, 0, 2);
        let (hx, _) = homology(&x);
        for n in hx.lo()..=hx.hi() {
            assert!(hx.term(n).unwrap().validate().is_ok());
        }
    }

    #[test]
    fn pushout_degenerate_cases() {
        let g = named_group("cyclic-3").unwrap();
        let mut rng = SplitMix64::new(31);
        let b = rand_complex(&g, &mut rng, 0, 2);

        // pushout of B <-id- B -id-> B is B
        let id = ChainMap::identity(&b);
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.complex.dims(), b.dims());
        assert!(is_quasi_iso(&po.leg_left));

        // pushout of 0 <- 0 -> C is C
        let c = rand_complex(&g, &mut rng, 0, 1);
        let z = Complex::zero(g.clone());
        let f = ChainMap::zero_map(z.clone(), z.clone());
        let h = ChainMap::zero_map(z, c.clone());
        let po = pushout(&f, &h).unwrap();
        assert_eq!(po.complex.dims(), c.dims());
    }

    #[test]
    fn pushout_dims_rank_nullity() {
        // injective legs built as direct-sum inclusions: P = X (+) A (+) Y
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(37);
        let a = rand_complex(&g, &mut rng, 0, 1);
        let xx = rand_complex(&g, &mut rng, 0, 1);
        let yy = rand_complex(&g, &mut rng, 0, 1);
        let (b, _, inc_ab) = direct_sum(&xx, &a);
        let (c, inc_ac, _) = direct_sum(&a, &yy);
        assert!(inc_ab.validate().is_ok());
        let po = pushout(&inc_ab, &inc_ac).unwrap();
        assert!(po.complex.validate().is_ok());
        assert_eq!(
            po.complex.total_dim(),
            b.total_dim() + c.total_dim() - a.total_dim()
        );
        assert!(po.leg_left.validate().is_ok());
        assert!(po.leg_right.validate().is_ok());
    }

    #[test]
    fn pushout_product_cokernel_is_free() {
        for name in ["cyclic-2", "symmetric-3"] {
            let g = named_group(name).unwrap();
            let f = generating_cofibration(&g, 0);
            let p = pushout_product(&f, &f).unwrap();
            assert!(p.validate().is_ok());
            let cok = cokernel(&p).trimmed();
            assert_eq!(cok.total_dim(), g.order() * g.order());
            assert_eq!(cok.dims().len(), 1);
            // free of rank |G|: averaging-projector rank = |G|
            let n = cok.lo();
            assert_eq!(
                cok.term(n).unwrap().fixed_subspace().cols(),
                g.order(),
                "{name}"
            );
        }
    }

    #[test]
    fn pushout_product_with_acyclic_cofibration_is_acyclic() {
        let g = named_group("cyclic-2").unwrap();
        let f = generating_cofibration(&g, 0);
        let j = acyclic_cofibration(&g, 1);
        let p = pushout_product(&f, &j).unwrap();
        assert!(is_acyclic(p.source()));
        assert!(is_acyclic(p.target()));
    }

    #[test]
    fn connective_cover_and_truncation() {
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(41);

        let x = rand_complex(&g, &mut rng, 0, 2);
        let (c, inc) = connective_cover(&x);
        assert!(inc.validate().is_ok());
        assert_eq!(homology_dims(&c), homology_dims(&x));

        let (c0, _) = connective_cover(&disk(&g, 0));
        assert_eq!(c0.dim(0), 0);

        let y = rand_complex(&g, &mut rng, -2, 1);
        let (cy, incy) = connective_cover(&y);
        assert!(incy.validate().is_ok());
        let hy = homology_dims(&y);
        let hcy = homology_dims(&cy);
        assert_eq!(
            hcy,
            hy.into_iter().filter(|&(n, _)| n >= 0).collect::<Vec<_>>()
        );

        // degree-0 complex is its own truncation
        let s = sphere(&g, 0);
        let (h0, q) = h0_truncation(&s);
        assert!(q.validate().is_ok());
        assert_eq!(h0.dims(), s.dims());
        assert!(is_quasi_iso(&q));

        let (h0d, _) = h0_truncation(&disk(&g, 1));
        assert!(h0d.is_zero_object());

        // H concentrated in degree 0: quotient map is a weak equivalence
        let (w, _, _) = direct_sum(&disk(&g, 1), &sphere(&g, 0));
        let (_, qw) = h0_truncation(&w);
        assert!(qw.validate().is_ok());
        assert!(is_quasi_iso(&qw));
    }

    #[test]
    fn homotopy_hom_values() {
        let g = named_group("cyclic-2").unwrap();
        let mut rng = SplitMix64::new(43);
        let y = rand_complex(&g, &mut rng, 0, 2);

        // maps out of S^0 QG see exactly the homology of Y
        assert_eq!(homotopy_hom(&sphere(&g, 0), &y), homology_dims(&y));
        assert_eq!(
            homotopy_hom(&sphere(&g, 0), &sphere(&g, 0)),
            vec![(0, 2)]
        );
        assert!(homotopy_hom(&y, &disk(&g, 1)).is_empty());
    }

    #[test]
    fn formality_over_qg() {
        // [X,Y]_n = degree-n equivariant graded homs between homologies
        let g = named_group("symmetric-3").unwrap();
        let mut rng = SplitMix64::new(47);
        let x = rand_complex(&g, &mut rng, 0, 2);
        let y = rand_complex(&g, &mut rng, -1, 1);
        let lhs = homotopy_hom(&x, &y);
        let (hx, _) = homology(&x);
        let (hy, _) = homology(&y);
        let rhs = homotopy_hom(&hx, &hy);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_over_base_and_acyclicity() {
        let g = named_group("cyclic-3").unwrap();
        let triv = FiniteGroup::trivial();
        let mut rng = SplitMix64::new(53);
        let x = rand_complex(&g, &mut rng, 0, 2);

        let qx = tensor_ch_over_base(&sphere(&triv, 0), &x);
        assert_eq!(qx.dims(), x.dims());

        let dx = tensor_ch_over_base(&disk(&triv, 1), &x);
        assert!(is_acyclic(&dx));
        for n in dx.lo()..=dx.hi() {
            let expect: usize = (0..=1).map(|i| x.dim(n - i)).sum();
            assert_eq!(dx.dim(n), expect);
        }
    }
}
