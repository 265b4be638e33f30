//! The rational Burnside ring `A(G) (x) Q`: table of marks, the splitting
//! into a product of copies of `Q` indexed by conjugacy classes of
//! subgroups, the idempotents realizing the projections, and restriction
//! to subgroups.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::lattice::{
    conjugacy_classes_of_subgroups, family_below, ConjugacyClassTable, LatticeError, Subgroup,
};
use crate::perm::FiniteGroup;
use crate::ratmat::{QMat, Rat};

#[derive(Debug)]
pub enum BurnsideError {
    GroupMismatch,
    InvalidClass { index: usize, classes: usize },
    Lattice(LatticeError),
}

impl fmt::Display for BurnsideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BurnsideError::GroupMismatch => write!(f, "elements belong to different groups"),
            BurnsideError::InvalidClass { index, classes } => {
                write!(f, "class index {index} out of range ({classes} classes)")
            }
            BurnsideError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

/// An element of `A(G) (x) Q` in the basis of transitive `G`-sets `[G/H]`,
/// one coordinate per subgroup conjugacy class.
#[derive(Clone, PartialEq, Eq)]
pub struct BurnsideElement {
    pub coeffs: Vec<Rat>,
}

impl fmt::Debug for BurnsideElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Burnside{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl BurnsideElement {
    pub fn zero(classes: usize) -> Self {
        BurnsideElement {
            coeffs: vec![Rat::zero(); classes],
        }
    }

    pub fn basis(classes: usize, class: usize) -> Self {
        let mut e = Self::zero(classes);
        e.coeffs[class] = Rat::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        BurnsideElement {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Table of marks plus the class data it is indexed by. Entry `(K, H)` is
/// the number of `H`-fixed cosets in `G/K`; rows are the basis elements
/// `[G/K]`, columns the subgroup classes `(H)`.
pub struct MarksMatrix {
    table: ConjugacyClassTable,
    entries: QMat,
}

impl MarksMatrix {
    pub fn classes(&self) -> &ConjugacyClassTable {
        &self.table
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.table.group()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn entries(&self) -> &QMat {
        &self.entries
    }

    pub fn entry(&self, k_row: usize, h_col: usize) -> &Rat {
        self.entries.at(k_row, h_col)
    }
}

/// Count the cosets `gK` in `G/K` fixed by every element of `H`, i.e. with
/// `H <= g K g^{-1}`.
fn fixed_coset_count(group: &Arc<FiniteGroup>, k: &Subgroup, h: &Subgroup) -> usize {
    let reps = coset_reps(group, k);
    reps.iter()
        .filter(|&&g| {
            let gi = group.inverse_of(g);
            h.members()
                .iter()
                .all(|&x| k.contains(group.mul(group.mul(gi, x), g)))
        })
        .count()
}

/// Deterministic left-coset representatives of `K` in `G`.
fn coset_reps(group: &Arc<FiniteGroup>, k: &Subgroup) -> Vec<usize> {
    let mut assigned = vec![false; group.order()];
    let mut reps = Vec::new();
    for g in 0..group.order() {
        if assigned[g] {
            continue;
        }
        reps.push(g);
        for &x in k.members() {
            assigned[group.mul(g, x)] = true;
        }
    }
    reps
}

/// The table of marks for `G`.
pub fn table_of_marks(group: &Arc<FiniteGroup>) -> MarksMatrix {
    let table = conjugacy_classes_of_subgroups(group);
    let n = table.len();
    let mut entries = QMat::zero(n, n);
    for (kr, k) in table.classes().iter().enumerate() {
        for (hc, h) in table.classes().iter().enumerate() {
            let count = fixed_coset_count(group, k, h);
            entries.set(kr, hc, Rat::from_integer(count.into()));
        }
    }
    MarksMatrix { table, entries }
}

/// The marks homomorphism: coefficient vector against the table of marks.
/// This is the tom Dieck splitting written in coordinates.
pub fn marks_hom(marks: &MarksMatrix, x: &BurnsideElement) -> Vec<Rat> {
    assert_eq!(x.coeffs.len(), marks.len());
    let mut out = vec![Rat::zero(); marks.len()];
    for h in 0..marks.len() {
        for k in 0..marks.len() {
            if x.coeffs[k].is_zero() {
                continue;
            }
            out[h] = &out[h] + &x.coeffs[k] * marks.entry(k, h);
        }
    }
    out
}

/// Unique element whose marks vector is the given one (solve the invertible
/// marks system).
pub fn from_marks(marks: &MarksMatrix, v: &[Rat]) -> BurnsideElement {
    let n = marks.len();
    let rhs = QMat::from_fn(n, 1, |r, _| v[r].clone());
    // marks_hom(x)[h] = sum_k x_k m[k][h]  <=>  entries^T x = v
    let sol = marks
        .entries
        .transpose()
        .solve(&rhs)
        .expect("marks matrix is invertible over Q");
    BurnsideElement {
        coeffs: (0..n).map(|i| sol.at(i, 0).clone()).collect(),
    }
}

/// Product in `A(G) (x) Q`: pointwise in marks coordinates, pulled back
/// through the marks system.
pub fn burnside_multiply(
    marks: &MarksMatrix,
    x: &BurnsideElement,
    y: &BurnsideElement,
) -> Result<BurnsideElement, BurnsideError> {
    if x.coeffs.len() != marks.len() || y.coeffs.len() != marks.len() {
        return Err(BurnsideError::GroupMismatch);
    }
    let mx = marks_hom(marks, x);
    let my = marks_hom(marks, y);
    let prod: Vec<Rat> = mx.iter().zip(&my).map(|(a, b)| a * b).collect();
    Ok(from_marks(marks, &prod))
}

/// The unit `[G/G]`.
pub fn unit(marks: &MarksMatrix) -> BurnsideElement {
    BurnsideElement::basis(marks.len(), marks.len() - 1)
}

/// The idempotent `e_H` projecting onto the factor `(H)` of the splitting:
/// the unique element with marks vector the indicator of class `(H)`.
pub fn idempotent(marks: &MarksMatrix, class: usize) -> Result<BurnsideElement, BurnsideError> {
    if class >= marks.len() {
        return Err(BurnsideError::InvalidClass {
            index: class,
            classes: marks.len(),
        });
    }
    let mut v = vec![Rat::zero(); marks.len()];
    v[class] = Rat::one();
    Ok(from_marks(marks, &v))
}

/// Sum of `e_K` over the family `[<=_G H]` (or `[<_G H]` with `strict`).
pub fn family_idempotent(
    marks: &MarksMatrix,
    h: &Subgroup,
    strict: bool,
) -> Result<BurnsideElement, BurnsideError> {
    let fam = family_below(marks.classes(), h, strict);
    let mut acc = BurnsideElement::zero(marks.len());
    for c in fam {
        acc = acc.add(&idempotent(marks, c)?);
    }
    Ok(acc)
}

/// Restriction `A(G) (x) Q -> A(K) (x) Q` along the inclusion of a subgroup,
/// by direct orbit decomposition of each coset space `G/H` into transitive
/// `K`-sets. Returns the marks data of `K` as a standalone group together
/// with the restricted element in its class basis.
pub fn restriction(
    marks: &MarksMatrix,
    k: &Subgroup,
    x: &BurnsideElement,
) -> (MarksMatrix, BurnsideElement) {
    let group = marks.group();
    let (k_group, k_to_g) = k.as_group();
    let k_marks = table_of_marks(&k_group);
    let mut out = BurnsideElement::zero(k_marks.len());

    for (hc, h) in marks.classes().classes().iter().enumerate() {
        if x.coeffs[hc].is_zero() {
            continue;
        }
        // decompose G/H into K-orbits: orbit of gH has stabilizer K âˆ© gHg^{-1}
        let reps = coset_reps(group, h);
        let coset_index = |g: usize| -> usize {
            // index of the coset gH among reps (all reps carry distinct cosets)
            let target: alloc::collections::BTreeSet<usize> =
                h.members().iter().map(|&x| group.mul(g, x)).collect();
            reps.iter()
                .position(|&r| target.contains(&r))
                .expect("every element lies in some coset")
        };
        let mut seen = vec![false; reps.len()];
        for (ri, &r) in reps.iter().enumerate() {
            if seen[ri] {
                continue;
            }
            // K-orbit of the coset rH
            let mut stab_members: Vec<usize> = Vec::new();
            for (ki, &kg) in k_to_g.iter().enumerate() {
                let img = coset_index(group.mul(kg, r));
                seen[img] = true;
                if img == ri {
                    stab_members.push(ki);
                }
            }
            let stab = Subgroup::new(k_group.clone(), stab_members)
                .expect("coset stabilizer is a subgroup");
            let ci = k_marks
                .classes()
                .class_index(&stab)
                .expect("stabilizer has a class");
            out.coeffs[ci] = &out.coeffs[ci] + &x.coeffs[hc];
        }
    }
    (k_marks, out)
}
