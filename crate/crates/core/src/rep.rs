//! Finite-dimensional rational representations of a finite group, kept as
//! matrices for the generators only; matrices for arbitrary elements are
//! reconstructed from generator words.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::lattice::Subgroup;
use crate::perm::FiniteGroup;
use crate::ratmat::{rat_frac, QMat};

#[derive(Debug)]
pub enum RepError {
    DimMismatch { expected: usize, got: usize },
    NotInvertible,
    NotAHomomorphism,
}

impl fmt::Display for RepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::DimMismatch { expected, got } => {
                write!(f, "generator matrix is {got}-dimensional, expected {expected}")
            }
            RepError::NotInvertible => write!(f, "generator matrix is singular"),
            RepError::NotAHomomorphism => write!(f, "matrices do not respect the Cayley table"),
        }
    }
}

#[derive(Clone)]
pub struct GRepresentation {
    group: Arc<FiniteGroup>,
    dim: usize,
    gens: Vec<QMat>,
}

impl GRepresentation {
    pub fn new(group: Arc<FiniteGroup>, dim: usize, gens: Vec<QMat>) -> Result<Self, RepError> {
        assert_eq!(gens.len(), group.generators().len());
        for m in &gens {
            if m.rows() != dim || m.cols() != dim {
                return Err(RepError::DimMismatch {
                    expected: dim,
                    got: m.rows(),
                });
            }
            if !m.is_invertible() {
                return Err(RepError::NotInvertible);
            }
        }
        let rep = GRepresentation { group, dim, gens };
        rep.validate()?;
        Ok(rep)
    }

    /// Construct without the homomorphism check; callers guarantee the
    /// matrices already come from an action.
    pub(crate) fn from_raw(group: Arc<FiniteGroup>, dim: usize, gens: Vec<QMat>) -> Self {
        GRepresentation { group, dim, gens }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_matrices(&self) -> &[QMat] {
        &self.gens
    }

    /// Trivial action on `Q^dim`.
    pub fn trivial(group: Arc<FiniteGroup>, dim: usize) -> Self {
        let gens = vec![QMat::identity(dim); group.generators().len()];
        GRepresentation { group, dim, gens }
    }

    /// The regular representation `QG` with basis the group elements, acting
    /// by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let gens: Vec<QMat> = group
            .generator_indices()
            .iter()
            .map(|&g| {
                // basis vector e_x maps to e_{gx}
                QMat::permutation(&(0..n).map(|x| group.mul(g, x)).collect::<Vec<_>>())
            })
            .collect();
        GRepresentation {
            group,
            dim: n,
            gens,
        }
    }

    /// Permutation representation on the left cosets `G/H`.
    pub fn on_cosets(h: &Subgroup) -> Self {
        let group = h.parent().clone();
        let n = group.order();
        // coset labels: index of the minimal element in each coset
        let mut coset_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &x in h.members() {
                coset_of[group.mul(g, x)] = idx;
            }
        }
        let gens: Vec<QMat> = group
            .generator_indices()
            .iter()
            .map(|&g| {
                QMat::permutation(
                    &reps
                        .iter()
                        .map(|&r| coset_of[group.mul(g, r)])
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        GRepresentation {
            group,
            dim: reps.len(),
            gens,
        }
    }

    /// Matrix of an arbitrary element, rebuilt from its generator word.
    pub fn element_matrix(&self, elem: usize) -> QMat {
        let mut m = QMat::identity(self.dim);
        for &gi in self.group.word(elem) {
            m = m.mul(&self.gens[gi]);
        }
        m
    }

    /// Tensor product of two representations of the same group.
    pub fn tensor(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        GRepresentation {
            group: self.group.clone(),
            dim: self.dim * other.dim,
            gens,
        }
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        GRepresentation {
            group: self.group.clone(),
            dim: self.dim + other.dim,
            gens,
        }
    }

    /// Conjugate by an invertible matrix: `g |-> t rho(g) t^{-1}`.
    pub fn conjugated(&self, t: &QMat) -> Result<Self, RepError> {
        let tinv = t.inverse().ok_or(RepError::NotInvertible)?;
        let gens = self
            .gens
            .iter()
            .map(|m| t.mul(m).mul(&tinv))
            .collect();
        Ok(GRepresentation {
            group: self.group.clone(),
            dim: self.dim,
            gens,
        })
    }

    /// Check the homomorphism property against the full Cayley table:
    /// `rho(g) rho(x) = rho(gx)` for every generator `g` and element `x`.
    pub fn validate(&self) -> Result<(), RepError> {
        let mut mats: Vec<QMat> = Vec::with_capacity(self.group.order());
        for x in 0..self.group.order() {
            mats.push(self.element_matrix(x));
        }
        for (gi, &g) in self.group.generator_indices().iter().enumerate() {
            for x in 0..self.group.order() {
                if self.gens[gi].mul(&mats[x]) != mats[self.group.mul(g, x)] {
                    return Err(RepError::NotAHomomorphism);
                }
            }
        }
        Ok(())
    }

    /// Canonical basis of the fixed subspace `V^G`, as the kernel of the
    /// stacked maps `rho(g) - I` over the generators. Returns a matrix whose
    /// columns are the basis.
    pub fn fixed_subspace(&self) -> QMat {
        if self.gens.is_empty() {
            return QMat::identity(self.dim);
        }
        let mut stacked = QMat::zero(0, self.dim);
        for m in &self.gens {
            stacked = stacked.vstack(&m.sub(&QMat::identity(self.dim)));
        }
        stacked.kernel_basis()
    }

    /// The averaging projector `Av = |G|^{-1} sum_g rho(g)`.
    pub fn average_projector(&self) -> QMat {
        let mut acc = QMat::zero(self.dim, self.dim);
        for x in 0..self.group.order() {
            acc = acc.add(&self.element_matrix(x));
        }
        acc.scale(&rat_frac(1, self.group.order() as i64))
    }

    /// A matrix commutes with the action iff it commutes with all generators.
    pub fn is_equivariant_endo(&self, m: &QMat) -> bool {
        self.gens
            .iter()
            .all(|g| g.mul(m).sub(&m.mul(g)).is_zero())
    }
}

/// The intertwiner condition for a map `f: V -> W` between representations
/// of the same group: `rho_W(g) f = f rho_V(g)` for all generators.
pub fn is_equivariant(v: &GRepresentation, w: &GRepresentation, f: &QMat) -> bool {
    if f.rows() != w.dim || f.cols() != v.dim {
        return false;
    }
    v.gens
        .iter()
        .zip(&w.gens)
        .all(|(gv, gw)| gw.mul(f).sub(&f.mul(gv)).is_zero())
}

/// Restrict a representation along a subgroup inclusion, producing a
/// representation of the subgroup's standalone group.
pub fn restrict(rep: &GRepresentation, h: &Subgroup) -> GRepresentation {
    let (h_group, h_to_g) = h.as_group();
    let gens = h_group
        .generator_indices()
        .iter()
        .map(|&hg| rep.element_matrix(h_to_g[hg]))
        .collect();
    GRepresentation {
        group: h_group,
        dim: rep.dim,
        gens,
    }
}
