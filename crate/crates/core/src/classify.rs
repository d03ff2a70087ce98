//! Paramonotonicity, rectangularity, strict monotonicity and cocoercivity.
//!
//! Paramonotonicity and rectangularity are each decided by two independent
//! routes. For maximal monotone relations the routes must agree; a
//! disagreement means a rank was misjudged at the current tolerance and is
//! reported as [`Error::MethodDisagreement`], never resolved silently.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::fitzpatrick::{probe_rectangularity, GraphForm};
use crate::numkernel::{self, kernel, spectral_norm, subspace_equal, symmetrize, Subspace};
use crate::relation::{comparison_tol, split, LinearRelation};

/// Named vectors certifying that a property fails.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub vectors: Vec<(String, DVector<f64>)>,
}

impl Witness {
    fn pair(a: DVector<f64>, astar: DVector<f64>) -> Self {
        Witness {
            vectors: vec![("a".to_string(), a), ("a_star".to_string(), astar)],
        }
    }

    fn single(name: &str, v: DVector<f64>) -> Self {
        Witness {
            vectors: vec![(name.to_string(), v)],
        }
    }

    pub fn get(&self, name: &str) -> Option<&DVector<f64>> {
        self.vectors.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// A decision together with the counterexample when it is negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn yes() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    fn no(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Largest `β` with `⟨x, Mx⟩ ≥ β‖Mx‖²`; unbounded for `M = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Modulus {
    Finite(f64),
    PlusInfinity,
}

impl Modulus {
    pub fn to_f64(&self) -> f64 {
        match *self {
            Modulus::Finite(b) => b,
            Modulus::PlusInfinity => f64::INFINITY,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.to_f64() > 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub n: usize,
    pub tol: f64,
    pub monotone: bool,
    pub maximal: Option<bool>,
    pub strictly_monotone: Option<bool>,
    pub paramonotone: Option<bool>,
    pub rectangular: Option<bool>,
    /// Present only for single-valued operators with full domain.
    pub cocoercivity_modulus: Option<Modulus>,
    /// One entry per property reported false, keyed by property name.
    pub witnesses: Vec<(String, Witness)>,
    /// Some infinity decision fell within a factor 10 of its threshold.
    pub near_singular: bool,
}

impl ClassificationReport {
    pub fn witness(&self, property: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|(k, _)| k == property).map(|(_, w)| w)
    }
}

/// Graph points `(a, a*)` with `⟨a, a*⟩ = 0`, i.e. the image of the null
/// space of the pairing Gram matrix.
fn zero_pairing_points(a: &LinearRelation) -> Subspace {
    let form = GraphForm::new(a);
    let null = kernel(form.gram(), a.tol());
    null.image(form.basis())
}

fn scaled_pair(z: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
    let (a, astar) = split(z);
    let s = if a.norm() > 1e-12 { a.norm() } else { astar.norm() };
    if s > 0.0 {
        (a / s, astar / s)
    } else {
        (a, astar)
    }
}

fn require_monotone(a: &LinearRelation) -> Result<()> {
    if a.is_monotone() {
        Ok(())
    } else {
        Err(Error::NotMonotone {
            min_eigenvalue: a.monotonicity_margin().unwrap_or(0.0),
        })
    }
}

/// Null-space route: every zero-pairing graph point must satisfy `a* ∈ A0`.
fn paramonotone_by_graph_points(a: &LinearRelation) -> Verdict {
    let ctol = comparison_tol(a.tol());
    let a0 = a.multivalued_part();
    for z in zero_pairing_points(a).canonical_basis() {
        let (p, pstar) = scaled_pair(&z);
        if !a0.contains(&pstar, ctol) {
            return Verdict::no(Witness::pair(p, pstar));
        }
    }
    Verdict::yes()
}

/// `ker A₊ = ker A`.
pub fn kernels_agree(a: &LinearRelation) -> bool {
    let sym = a.symmetric_part();
    subspace_equal(&sym.kernel(), &a.kernel(), comparison_tol(a.tol())).unwrap_or(false)
}

/// `ran A₊ = ran A`.
pub fn ranges_agree(a: &LinearRelation) -> bool {
    let sym = a.symmetric_part();
    subspace_equal(&sym.range(), &a.range(), comparison_tol(a.tol())).unwrap_or(false)
}

/// Paramonotonicity: `⟨a, a*⟩ = 0` on the graph forces `a* ∈ A0`.
pub fn is_paramonotone(a: &LinearRelation) -> Result<Verdict> {
    require_monotone(a)?;
    let verdict = paramonotone_by_graph_points(a);
    if a.is_maximally_monotone() {
        let by_kernels = kernels_agree(a);
        if by_kernels != verdict.holds {
            return Err(Error::MethodDisagreement {
                property: "paramonotone",
                detail: format!(
                    "zero-pairing test says {}, ker A+ = ker A says {}",
                    verdict.holds, by_kernels
                ),
            });
        }
    }
    Ok(verdict)
}

fn rectangular_with_flag(a: &LinearRelation) -> Result<(Verdict, bool)> {
    require_monotone(a)?;
    let probe = probe_rectangularity(a)?;
    if a.is_maximally_monotone() {
        let by_ranges = ranges_agree(a);
        if by_ranges != probe.rectangular {
            return Err(Error::MethodDisagreement {
                property: "rectangular",
                detail: format!(
                    "ran A+ = ran A says {}, Fitzpatrick domain test says {}",
                    by_ranges, probe.rectangular
                ),
            });
        }
    }
    let verdict = match probe.witness {
        None => Verdict::yes(),
        Some(d) => Verdict::no(Witness::single("d", d)),
    };
    Ok((verdict, probe.near_singular))
}

/// Rectangularity (`dom A × ran A ⊆ dom F_A`).
pub fn is_rectangular(a: &LinearRelation) -> Result<Verdict> {
    Ok(rectangular_with_flag(a)?.0)
}

/// Strict monotonicity: zero-pairing graph points have `a = 0`.
pub fn strict_monotonicity(a: &LinearRelation) -> Result<Verdict> {
    require_monotone(a)?;
    let ctol = comparison_tol(a.tol());
    for z in zero_pairing_points(a).canonical_basis() {
        let (p, pstar) = scaled_pair(&z);
        if p.norm() > ctol {
            return Ok(Verdict::no(Witness::pair(p, pstar)));
        }
    }
    Ok(Verdict::yes())
}

pub fn is_strictly_monotone(a: &LinearRelation) -> Result<bool> {
    Ok(strict_monotonicity(a)?.holds)
}

fn check_matrix_monotone(m: &DMatrix<f64>, tol: f64) -> Result<()> {
    numkernel::check_square(m)?;
    let sym = symmetrize(m);
    let scale = spectral_norm(m).max(1.0);
    let min = numkernel::min_eigenvalue(&sym);
    if min < -tol * scale {
        return Err(Error::NotMonotone {
            min_eigenvalue: min,
        });
    }
    Ok(())
}

/// Cocoercivity modulus of a monotone matrix: the smallest eigenvalue of the
/// pencil `(M₊, MᵀM)` on `(ker M)^⊥`, clamped to zero below `tol`.
pub fn cocoercivity_modulus(m: &DMatrix<f64>, tol: f64) -> Result<Modulus> {
    check_matrix_monotone(m, tol)?;
    // (ker M)^⊥ is the row space of M
    let rows = Subspace::span_of_columns(&m.transpose(), tol);
    if rows.is_zero() {
        return Ok(Modulus::PlusInfinity);
    }
    let k = if rows.is_full() {
        DMatrix::identity(m.nrows(), m.nrows())
    } else {
        rows.basis().clone()
    };
    let mk = m * &k;
    let a = symmetrize(&(k.transpose() * symmetrize(m) * &k));
    let b = symmetrize(&(mk.transpose() * &mk));
    let chol = b.cholesky().ok_or_else(|| {
        Error::InvalidArgument("MᵀM is singular on (ker M)^⊥; adjust the tolerance".into())
    })?;
    let l = chol.l();
    let l_inv = l
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidArgument("Cholesky factor not invertible".into()))?;
    let reduced = symmetrize(&(&l_inv * a * l_inv.transpose()));
    let beta = SymmetricEigen::new(reduced)
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    Ok(Modulus::Finite(if beta <= tol { 0.0 } else { beta }))
}

/// `‖γM − I‖ ≤ 1 + tol`.
pub fn gamma_nonexpansive_check(m: &DMatrix<f64>, gamma: f64, tol: f64) -> Result<bool> {
    let n = numkernel::check_square(m)?;
    if gamma < 0.0 {
        return Err(Error::InvalidArgument(format!("gamma must be nonnegative, got {gamma}")));
    }
    let t = m * gamma - DMatrix::identity(n, n);
    Ok(spectral_norm(&t) <= 1.0 + tol)
}

/// Monotonicity of the relation `M⁻¹ − β Id`.
pub fn inverse_strong_monotonicity_check(m: &DMatrix<f64>, beta: f64, tol: f64) -> Result<bool> {
    if beta < 0.0 {
        return Err(Error::InvalidArgument(format!("beta must be nonnegative, got {beta}")));
    }
    let rel = LinearRelation::from_matrix(m, tol)?;
    let shifted = LinearRelation::combine(1.0, &rel.inverse(), -beta, &LinearRelation::identity(rel.n(), tol))?;
    Ok(shifted.is_monotone())
}

/// All flags for one relation. Predicates beyond monotonicity are evaluated
/// only for monotone input.
pub fn classification_report(a: &LinearRelation) -> Result<ClassificationReport> {
    let mut report = ClassificationReport {
        n: a.n(),
        tol: a.tol(),
        monotone: a.is_monotone(),
        maximal: None,
        strictly_monotone: None,
        paramonotone: None,
        rectangular: None,
        cocoercivity_modulus: None,
        witnesses: Vec::new(),
        near_singular: false,
    };
    if !report.monotone {
        if let Some((p, pstar)) = a.non_monotone_witness() {
            report
                .witnesses
                .push(("monotone".into(), Witness::pair(p, pstar)));
        }
        return Ok(report);
    }

    let maximal = a.is_maximally_monotone();
    report.maximal = Some(maximal);
    if !maximal {
        if let Some((y, ystar)) = a.monotone_extension_witness() {
            report.witnesses.push((
                "maximal".into(),
                Witness {
                    vectors: vec![("y".into(), y), ("y_star".into(), ystar)],
                },
            ));
        }
    }

    let strict = strict_monotonicity(a)?;
    report.strictly_monotone = Some(strict.holds);
    if let Some(w) = strict.witness {
        report.witnesses.push(("strictly_monotone".into(), w));
    }

    let para = is_paramonotone(a)?;
    report.paramonotone = Some(para.holds);
    if let Some(w) = para.witness {
        report.witnesses.push(("paramonotone".into(), w));
    }

    let (rect, near_singular) = rectangular_with_flag(a)?;
    report.rectangular = Some(rect.holds);
    report.near_singular = near_singular;
    if let Some(w) = rect.witness {
        report.witnesses.push(("rectangular".into(), w));
    }

    if let Ok(m) = a.to_matrix() {
        report.cocoercivity_modulus = Some(cocoercivity_modulus(&m, a.tol())?);
    }
    Ok(report)
}

/// [`classification_report`] for a matrix, with the modulus computed from
/// the entries rather than from the reconstructed graph.
pub fn matrix_classification_report(m: &DMatrix<f64>, tol: f64) -> Result<ClassificationReport> {
    let a = LinearRelation::from_matrix(m, tol)?;
    let mut report = classification_report(&a)?;
    if report.monotone {
        report.cocoercivity_modulus = Some(cocoercivity_modulus(m, tol)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::DEFAULT_TOL;
    use approx::assert_abs_diff_eq;

    const TOL: f64 = DEFAULT_TOL;

    fn v(xs: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(xs)
    }

    fn mat(n: usize, rows: &[f64]) -> DMatrix<f64> {
        DMatrix::from_row_slice(n, n, rows)
    }

    fn rotation() -> DMatrix<f64> {
        mat(2, &[0.0, 1.0, -1.0, 0.0])
    }

    fn rel(m: &DMatrix<f64>) -> LinearRelation {
        LinearRelation::from_matrix(m, TOL).unwrap()
    }

    /// Trapezoidal Volterra matrix, written out independently of the gallery.
    fn volterra4() -> DMatrix<f64> {
        DMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                0.125
            } else if j < i {
                0.25
            } else {
                0.0
            }
        })
    }

    #[test]
    fn paramonotone_examples() {
        let r = is_paramonotone(&rel(&rotation())).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_abs_diff_eq!(*w.get("a").unwrap(), v(&[1.0, 0.0]), epsilon = 1e-12);
        assert_abs_diff_eq!(*w.get("a_star").unwrap(), v(&[0.0, -1.0]), epsilon = 1e-12);

        assert!(is_paramonotone(&LinearRelation::identity(2, TOL)).unwrap().holds);

        let vol = volterra4();
        let r = is_paramonotone(&rel(&vol)).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        let (a, astar) = (w.get("a").unwrap(), w.get("a_star").unwrap());
        assert_abs_diff_eq!(a.dot(astar), 0.0, epsilon = 1e-12);
        assert!(astar.norm() > 0.1);
        // the hand-computed witness
        let x = v(&[1.0, -1.0, 0.0, 0.0]);
        let vx = &vol * &x;
        assert_abs_diff_eq!(x.dot(&vx), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(vx, v(&[0.125, 0.125, 0.0, 0.0]), epsilon = 1e-15);
    }

    #[test]
    fn rectangular_examples() {
        assert!(is_rectangular(&LinearRelation::identity(2, TOL)).unwrap().holds);
        let r = is_rectangular(&rel(&rotation())).unwrap();
        assert!(!r.holds);
        assert!(r.witness.unwrap().get("d").is_some());
        assert!(is_rectangular(&rel(&mat(2, &[1.0, 0.0, 0.0, 0.0]))).unwrap().holds);
    }

    #[test]
    fn strict_examples() {
        assert!(is_strictly_monotone(&LinearRelation::identity(2, TOL)).unwrap());
        let s = strict_monotonicity(&rel(&mat(2, &[1.0, 0.0, 0.0, 0.0]))).unwrap();
        assert!(!s.holds);
        assert_abs_diff_eq!(*s.witness.unwrap().get("a").unwrap(), v(&[0.0, 1.0]), epsilon = 1e-12);
        assert!(is_strictly_monotone(&rel(&mat(2, &[1.0, -1.0, 1.0, 0.5]))).unwrap());
    }

    #[test]
    fn predicates_reject_non_monotone() {
        let saddle = rel(&mat(2, &[1.0, 0.0, 0.0, -1.0]));
        assert!(matches!(is_paramonotone(&saddle), Err(Error::NotMonotone { .. })));
        assert!(matches!(is_rectangular(&saddle), Err(Error::NotMonotone { .. })));
        assert!(matches!(
            cocoercivity_modulus(&mat(2, &[1.0, 0.0, 0.0, -1.0]), TOL),
            Err(Error::NotMonotone { .. })
        ));
    }

    #[test]
    fn modulus_examples() {
        assert_abs_diff_eq!(cocoercivity_modulus(&DMatrix::identity(2, 2), TOL).unwrap().to_f64(), 1.0, epsilon = 1e-12);
        assert_eq!(cocoercivity_modulus(&rotation(), TOL).unwrap(), Modulus::Finite(0.0));
        assert_abs_diff_eq!(
            cocoercivity_modulus(&mat(2, &[1.0, 0.0, 0.0, 2.0]), TOL).unwrap().to_f64(),
            0.5,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            cocoercivity_modulus(&mat(2, &[1.0, -1.0, 1.0, 0.5]), TOL).unwrap().to_f64(),
            1.0 / 3.0,
            epsilon = 1e-12
        );
        assert_eq!(cocoercivity_modulus(&DMatrix::zeros(3, 3), TOL).unwrap(), Modulus::PlusInfinity);
    }

    #[test]
    fn modulus_of_singular_symmetric() {
        // diag(2, 0): β = 1/‖A‖ = ½
        assert_abs_diff_eq!(
            cocoercivity_modulus(&mat(2, &[2.0, 0.0, 0.0, 0.0]), TOL).unwrap().to_f64(),
            0.5,
            epsilon = 1e-12
        );
    }

    #[test]
    fn gamma_examples() {
        let id = DMatrix::identity(2, 2);
        assert!(gamma_nonexpansive_check(&id, 2.0, TOL).unwrap());
        assert!(!gamma_nonexpansive_check(&id, 3.0, TOL).unwrap());
        assert!(!gamma_nonexpansive_check(&rotation(), 1.0, TOL).unwrap());
        assert!(gamma_nonexpansive_check(&id, -1.0, TOL).is_err());
    }

    #[test]
    fn inverse_strong_monotonicity_examples() {
        let id = DMatrix::identity(2, 2);
        assert!(inverse_strong_monotonicity_check(&id, 1.0, TOL).unwrap());
        assert!(!inverse_strong_monotonicity_check(&id, 1.5, TOL).unwrap());
        assert!(inverse_strong_monotonicity_check(&mat(2, &[1.0, 0.0, 0.0, 2.0]), 0.5, TOL).unwrap());
    }

    #[test]
    fn report_for_rotation() {
        let r = classification_report(&rel(&rotation())).unwrap();
        assert!(r.monotone);
        assert_eq!(r.maximal, Some(true));
        assert_eq!(r.strictly_monotone, Some(false));
        assert_eq!(r.paramonotone, Some(false));
        assert_eq!(r.rectangular, Some(false));
        assert_eq!(r.cocoercivity_modulus, Some(Modulus::Finite(0.0)));
        let names: Vec<&str> = r.witnesses.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(names, ["strictly_monotone", "paramonotone", "rectangular"]);
    }

    #[test]
    fn report_for_identity() {
        let r = classification_report(&LinearRelation::identity(2, TOL)).unwrap();
        assert_eq!(
            (r.maximal, r.strictly_monotone, r.paramonotone, r.rectangular),
            (Some(true), Some(true), Some(true), Some(true))
        );
        assert_abs_diff_eq!(r.cocoercivity_modulus.unwrap().to_f64(), 1.0, epsilon = 1e-12);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn report_for_non_monotone() {
        let r = classification_report(&rel(&mat(2, &[1.0, 0.0, 0.0, -1.0]))).unwrap();
        assert!(!r.monotone);
        assert!(r.maximal.is_none() && r.paramonotone.is_none() && r.rectangular.is_none());
        assert!(r.witness("monotone").is_some());
    }

    #[test]
    fn report_for_non_maximal_relation() {
        let a = LinearRelation::from_graph_vectors(2, &[v(&[1.0, 0.0, 1.0, 0.0])], TOL).unwrap();
        let r = classification_report(&a).unwrap();
        assert_eq!(r.maximal, Some(false));
        assert!(r.witness("maximal").is_some());
        assert!(r.cocoercivity_modulus.is_none());
    }
}
