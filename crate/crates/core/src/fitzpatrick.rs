//! Fitzpatrick functions of monotone linear relations.
//!
//! Writing graph points as `G c` for the orthonormal graph basis `G`,
//!
//! ```text
//! F_A(x, x*) = sup_c  ⟨x, G₂c⟩ + ⟨G₁c, x*⟩ - cᵀ Q c,   Q = sym(G₁ᵀ G₂)
//! ```
//!
//! which is a concave quadratic supremum: finite exactly when the linear
//! coefficient lies in `ran Q`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numkernel::{self, sup_linear_minus_quadratic_detailed, symmetrize, FitzValue};
use crate::relation::LinearRelation;

/// A relation together with its graph basis and pairing Gram matrix.
#[derive(Debug, Clone)]
pub struct GraphForm {
    relation: LinearRelation,
    g: DMatrix<f64>,
    q: DMatrix<f64>,
}

/// A Fitzpatrick value plus the near-singular flag of the range test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitzEvaluation {
    pub value: FitzValue,
    pub near_singular: bool,
}

impl GraphForm {
    pub fn new(relation: &LinearRelation) -> Self {
        let g = relation.graph().basis().clone();
        let q = symmetrize(&(relation.domain_block().transpose() * relation.range_block()));
        GraphForm {
            relation: relation.clone(),
            g,
            q,
        }
    }

    pub fn relation(&self) -> &LinearRelation {
        &self.relation
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.g
    }

    /// `Q_ij = ½(⟨a_i, a*_j⟩ + ⟨a_j, a*_i⟩)` over the graph basis.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.q
    }

    fn linear_coefficient(&self, x: &DVector<f64>, xstar: &DVector<f64>) -> DVector<f64> {
        self.relation.range_block().transpose() * x + self.relation.domain_block().transpose() * xstar
    }

    pub fn evaluate(&self, x: &DVector<f64>, xstar: &DVector<f64>) -> Result<FitzEvaluation> {
        let n = self.relation.n();
        for v in [x, xstar] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    context: "fitzpatrick_value",
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let b = self.linear_coefficient(x, xstar);
        match sup_linear_minus_quadratic_detailed(&self.q, &b, self.relation.tol()) {
            Ok(sup) => Ok(FitzEvaluation {
                value: sup.value,
                near_singular: sup.near_singular(),
            }),
            Err(Error::NotPsd { min_eigenvalue }) => Err(Error::NotMonotone { min_eigenvalue }),
            Err(e) => Err(e),
        }
    }
}

pub fn fitzpatrick_eval(a: &LinearRelation, x: &DVector<f64>, xstar: &DVector<f64>) -> Result<FitzEvaluation> {
    GraphForm::new(a).evaluate(x, xstar)
}

/// `F_A(x, x*) = sup_{(a,a*) ∈ gra A} ⟨x, a*⟩ + ⟨a, x*⟩ - ⟨a, a*⟩`.
pub fn fitzpatrick_value(a: &LinearRelation, x: &DVector<f64>, xstar: &DVector<f64>) -> Result<FitzValue> {
    Ok(fitzpatrick_eval(a, x, xstar)?.value)
}

pub fn in_dom_fitz(a: &LinearRelation, x: &DVector<f64>, xstar: &DVector<f64>) -> Result<bool> {
    Ok(fitzpatrick_value(a, x, xstar)?.is_finite())
}

/// Result of probing `dom A × {0} ⊆ dom F_A` on a basis of `dom A`.
#[derive(Debug, Clone, PartialEq)]
pub struct RectangularityProbe {
    pub rectangular: bool,
    /// First unit basis vector `d` of `dom A` with `F_A(d, 0) = +∞`.
    pub witness: Option<DVector<f64>>,
    pub near_singular: bool,
}

/// Probes every vector of the canonical basis of `dom A`. Finiteness on a
/// basis suffices: `F_A` is convex and `F_A(tx, 0) = t² F_A(x, 0)`, so
/// `F_A(x + y, 0) ≤ 2F_A(x, 0) + 2F_A(y, 0)`.
pub fn probe_rectangularity(a: &LinearRelation) -> Result<RectangularityProbe> {
    let form = GraphForm::new(a);
    let zero = DVector::zeros(a.n());
    let mut near_singular = false;
    for d in a.domain().canonical_basis() {
        let d = d.normalize();
        let eval = form.evaluate(&d, &zero)?;
        near_singular |= eval.near_singular;
        if !eval.value.is_finite() {
            return Ok(RectangularityProbe {
                rectangular: false,
                witness: Some(d),
                near_singular,
            });
        }
    }
    Ok(RectangularityProbe {
        rectangular: true,
        witness: None,
        near_singular,
    })
}

/// Rectangularity through `dom A × {0} ⊆ dom F_A`.
pub fn rectangular_via_fitz(a: &LinearRelation) -> Result<(bool, Option<DVector<f64>>)> {
    let probe = probe_rectangularity(a)?;
    Ok((probe.rectangular, probe.witness))
}

/// Fenchel conjugate of `q(y) = ½⟨y, My⟩` at `u`:
/// `sup_y ⟨u, y⟩ - ½ yᵀ M₊ y`.
pub fn quadratic_conjugate(m: &DMatrix<f64>, u: &DVector<f64>, tol: f64) -> Result<FitzValue> {
    numkernel::check_square(m)?;
    let half_sym = symmetrize(m) * 0.5;
    match numkernel::sup_linear_minus_quadratic(&half_sym, u, tol) {
        Err(Error::NotPsd { min_eigenvalue }) => Err(Error::NotMonotone { min_eigenvalue }),
        other => other,
    }
}
