//! The assembled model: one chain-complex category per conjugacy class of
//! subgroups, each over the Weyl group of a class representative, together
//! with the graded classification formula and the Burnside-ring bookkeeping
//! tying the factors back to the group.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::burnside::{idempotent, table_of_marks, BurnsideElement, MarksMatrix};
use crate::chain::{fixed_points, hom_complex, homology, sphere, Complex};
use crate::dg::{build_ea, DgCategory, EaOrbit};
use crate::lattice::{weyl_group, Subgroup};
use crate::perm::FiniteGroup;

/// Construction is exact rational arithmetic on |G|^3-sized tables and
/// |W|^(i+j-1)-sized hom spaces; past this order the factors stop being
/// interactively computable.
pub const MAX_GROUP_ORDER: usize = 32;

#[derive(Debug, PartialEq, Eq)]
pub enum ModelError {
    GroupTooLarge { order: usize, bound: usize },
    ClassOutOfRange { index: usize, classes: usize },
    ShapeMismatch(String),
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::GroupTooLarge { order, bound } => {
                write!(f, "group order {order} exceeds the bound {bound}")
            }
            ModelError::ClassOutOfRange { index, classes } => {
                write!(f, "class {index} out of range ({classes} classes)")
            }
            ModelError::ShapeMismatch(why) => write!(f, "shape mismatch: {why}"),
        }
    }
}

/// One factor of the product model: a conjugacy class of subgroups, its
/// Weyl group, the generator category over that Weyl group, and the
/// Burnside idempotent that cuts this factor out of `A(G) ⊗ Q`.
pub struct ModelFactor {
    pub class_rep: Subgroup,
    pub weyl: Arc<FiniteGroup>,
    pub ea: DgCategory,
    pub idempotent: BurnsideElement,
}

pub struct AlgebraicModel {
    group: Arc<FiniteGroup>,
    marks: MarksMatrix,
    factors: Vec<ModelFactor>,
}

impl AlgebraicModel {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn marks(&self) -> &MarksMatrix {
        &self.marks
    }

    pub fn factors(&self) -> &[ModelFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// An object of the product model: one complex per class, over that
/// class's Weyl group.
#[derive(Clone)]
pub struct ModelObject {
    pub components: Vec<Complex>,
}

impl ModelObject {
    pub fn validate(&self, model: &AlgebraicModel) -> Result<(), ModelError> {
        if self.components.len() != model.len() {
            return Err(ModelError::ShapeMismatch(format!(
                "{} components for {} classes",
                self.components.len(),
                model.len()
            )));
        }
        for (i, (c, f)) in self.components.iter().zip(&model.factors).enumerate() {
            if !Arc::ptr_eq(c.group(), &f.weyl) {
                return Err(ModelError::ShapeMismatch(format!(
                    "component {i} is not over the factor's Weyl group"
                )));
            }
        }
        Ok(())
    }
}

pub fn build_model(group: &Arc<FiniteGroup>, n_max: usize) -> Result<AlgebraicModel, ModelError> {
    if group.order() > MAX_GROUP_ORDER {
        return Err(ModelError::GroupTooLarge {
            order: group.order(),
            bound: MAX_GROUP_ORDER,
        });
    }
    let marks = table_of_marks(group);
    let factors = marks
        .classes()
        .classes()
        .iter()
        .enumerate()
        .map(|(i, rep)| {
            let ea = build_ea(group, rep, n_max);
            // share the category's Weyl group so objects built against the
            // factor are accepted by it
            let weyl = match &ea {
                DgCategory::Ea(e) => e.weyl().clone(),
                DgCategory::Explicit(_) => weyl_group(group, rep),
            };
            ModelFactor {
                class_rep: rep.clone(),
                weyl,
                ea,
                idempotent: idempotent(&marks, i).expect("class index in range"),
            }
        })
        .collect();
    Ok(AlgebraicModel {
        group: group.clone(),
        marks,
        factors,
    })
}

/// The unit: `sphere(W, 0)` at every class.
pub fn model_unit(model: &AlgebraicModel) -> ModelObject {
    ModelObject {
        components: model.factors.iter().map(|f| sphere(&f.weyl, 0)).collect(),
    }
}

/// `sphere(W, 0)` at one class, zero elsewhere.
pub fn unit_at(model: &AlgebraicModel, class: usize) -> Result<ModelObject, ModelError> {
    if class >= model.len() {
        return Err(ModelError::ClassOutOfRange {
            index: class,
            classes: model.len(),
        });
    }
    Ok(ModelObject {
        components: model
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                if i == class {
                    sphere(&f.weyl, 0)
                } else {
                    Complex::zero(f.weyl.clone())
                }
            })
            .collect(),
    })
}

pub struct HomotopyClasses {
    /// Graded dimensions of `hom(H_*(X_H), H_*(Y_H))^{W}` per class.
    pub per_class: Vec<Vec<(i64, usize)>>,
    /// Degreewise sum over classes.
    pub total: Vec<(i64, usize)>,
}

impl HomotopyClasses {
    pub fn total_at(&self, degree: i64) -> usize {
        self.total
            .iter()
            .find(|(d, _)| *d == degree)
            .map_or(0, |(_, k)| *k)
    }

    pub fn is_zero(&self) -> bool {
        self.total.is_empty()
    }
}

/// The graded classification: per class, the fixed homs between the
/// homologies of the two components (both carry the zero differential, so
/// the graded dimensions of the fixed hom complex are the answer).
pub fn homotopy_classes(
    model: &AlgebraicModel,
    x: &ModelObject,
    y: &ModelObject,
) -> Result<HomotopyClasses, ModelError> {
    x.validate(model)?;
    y.validate(model)?;
    let mut per_class = Vec::with_capacity(model.len());
    for (xc, yc) in x.components.iter().zip(&y.components) {
        let hx = homology(xc).0;
        let hy = homology(yc).0;
        let (fixed, _) = fixed_points(&hom_complex(&hx, &hy));
        per_class.push(fixed.dims());
    }
    let lo = per_class
        .iter()
        .flatten()
        .map(|(d, _)| *d)
        .min()
        .unwrap_or(0);
    let hi = per_class
        .iter()
        .flatten()
        .map(|(d, _)| *d)
        .max()
        .unwrap_or(-1);
    let mut total = Vec::new();
    for d in lo..=hi {
        let k: usize = per_class
            .iter()
            .flatten()
            .filter(|(d2, _)| *d2 == d)
            .map(|(_, k)| *k)
            .sum();
        if k > 0 {
            total.push((d, k));
        }
    }
    Ok(HomotopyClasses { per_class, total })
}

pub struct EndoReport {
    pub class: usize,
    pub dim: usize,
    pub weyl_order: usize,
    /// Multiplication table of the orbit basis of `E(1,1)` agrees with the
    /// Weyl group's Cayley table under right translation.
    pub table_matches: bool,
}

impl EndoReport {
    pub fn is_group_algebra(&self) -> bool {
        self.dim == self.weyl_order && self.table_matches
    }
}

/// Degree-0 endomorphisms of the generator at one class: the orbit basis
/// element `rho_v = ((e),(v))` of `E(1,1)` multiplies by the Cayley table,
/// `rho_v . rho_u = rho_{uv}`, identifying the ring with `QW`.
pub fn endomorphism_check(model: &AlgebraicModel, class: usize) -> Result<EndoReport, ModelError> {
    if class >= model.len() {
        return Err(ModelError::ClassOutOfRange {
            index: class,
            classes: model.len(),
        });
    }
    let factor = &model.factors[class];
    let ea = match &factor.ea {
        DgCategory::Ea(ea) => ea,
        DgCategory::Explicit(_) => unreachable!("model factors are combinatorial"),
    };
    let w = factor.weyl.clone();
    let dim = ea.hom_dim(1, 1);
    let e = w.identity_index();
    let mut table_matches = dim == w.order();
    if table_matches {
        'outer: for u in 0..w.order() {
            for v in 0..w.order() {
                let prod = ea.compose_orbits(
                    &EaOrbit {
                        src: vec![e],
                        dst: vec![v],
                    },
                    &EaOrbit {
                        src: vec![e],
                        dst: vec![u],
                    },
                );
                let expected = EaOrbit {
                    src: vec![e],
                    dst: vec![w.mul(u, v)],
                };
                if prod.len() != 1 || prod.get(&expected) != Some(&1) {
                    table_matches = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(EndoReport {
        class,
        dim,
        weyl_order: w.order(),
        table_matches,
    })
}

/// The two counts the model must agree on: degree-0 endomorphisms of the
/// unit (`Σ |W_G H|`) and, after idempotent splitting, the number of
/// factors (= number of classes = rank of `A(G) ⊗ Q`).
pub struct ConsistencyReport {
    pub unit_endo_dim: usize,
    pub sum_weyl_orders: usize,
    pub factor_count: usize,
    pub class_count: usize,
}

impl ConsistencyReport {
    pub fn consistent(&self) -> bool {
        self.unit_endo_dim == self.sum_weyl_orders && self.factor_count == self.class_count
    }
}

pub fn consistency_report(model: &AlgebraicModel) -> ConsistencyReport {
    let unit = model_unit(model);
    let hc = homotopy_classes(model, &unit, &unit).expect("unit matches the model");
    ConsistencyReport {
        unit_endo_dim: hc.total_at(0),
        sum_weyl_orders: model.factors.iter().map(|f| f.weyl.order()).sum(),
        factor_count: model.len(),
        class_count: model.marks.classes().len(),
    }
}
