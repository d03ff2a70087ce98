//! Linear relations `A: R^n ⇉ R^n`, stored as their graph, a subspace of
//! `R^{2n}` with coordinates ordered `(x_1..x_n, x*_1..x*_n)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numkernel::{
    self, kernel, restricted_max_eigenvector, restricted_min_eigenvalue, subspace_equal, Subspace,
};

/// Tolerance used when comparing computed subspaces or testing membership.
///
/// Rank decisions run at `tol`; geometric comparisons of subspaces that were
/// themselves computed at `tol` run at `sqrt(tol)`.
pub fn comparison_tol(tol: f64) -> f64 {
    tol.sqrt().max(tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRelation {
    n: usize,
    graph: Subspace,
}

/// The set `Ax`: empty, or `point + direction_space`.
#[derive(Debug, Clone, PartialEq)]
pub enum AffineImage {
    Empty,
    Affine {
        point: DVector<f64>,
        direction_space: Subspace,
    },
}

impl AffineImage {
    pub fn is_empty(&self) -> bool {
        matches!(self, AffineImage::Empty)
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        match self {
            AffineImage::Empty => false,
            AffineImage::Affine {
                point,
                direction_space,
            } => direction_space.distance(&(v - point)) <= tol * v.norm().max(1.0),
        }
    }
}

/// `dom A`, `ran A`, `ker A` and the multivalued part `A0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSubspaces {
    pub dom: Subspace,
    pub ran: Subspace,
    pub ker: Subspace,
    pub a0: Subspace,
}

/// `½ [[0, I], [I, 0]]`: the symmetric matrix of `(x, x*) ↦ ⟨x, x*⟩`.
pub fn pairing_matrix(n: usize) -> DMatrix<f64> {
    let mut p = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        p[(i, n + i)] = 0.5;
        p[(n + i, i)] = 0.5;
    }
    p
}

pub(crate) fn stack(x: &DVector<f64>, xstar: &DVector<f64>) -> DVector<f64> {
    let n = x.len();
    DVector::from_fn(2 * n, |i, _| if i < n { x[i] } else { xstar[i - n] })
}

pub(crate) fn split(z: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
    let n = z.len() / 2;
    (z.rows(0, n).into_owned(), z.rows(n, n).into_owned())
}

impl LinearRelation {
    /// Graph `{(x, Mx)}` of a square matrix.
    pub fn from_matrix(m: &DMatrix<f64>, tol: f64) -> Result<Self> {
        let n = numkernel::check_square(m)?;
        let mut g = DMatrix::zeros(2 * n, n);
        g.view_mut((0, 0), (n, n)).copy_from(&DMatrix::identity(n, n));
        g.view_mut((n, 0), (n, n)).copy_from(m);
        Ok(LinearRelation {
            n,
            graph: Subspace::span_of_columns(&g, tol),
        })
    }

    pub fn from_graph(n: usize, graph: Subspace) -> Result<Self> {
        if graph.ambient_dim() != 2 * n {
            return Err(Error::DimensionMismatch {
                context: "relation graph",
                expected: 2 * n,
                found: graph.ambient_dim(),
            });
        }
        Ok(LinearRelation { n, graph })
    }

    /// Relation whose graph is spanned by the given `2n`-vectors.
    pub fn from_graph_vectors(n: usize, vectors: &[DVector<f64>], tol: f64) -> Result<Self> {
        Self::from_graph(n, Subspace::column_space(2 * n, vectors, tol)?)
    }

    pub fn identity(n: usize, tol: f64) -> Self {
        Self::from_matrix(&DMatrix::identity(n, n), tol).expect("identity is square")
    }

    /// The relation with graph `{0} × R^n`.
    pub fn zero_domain(n: usize, tol: f64) -> Self {
        let vectors: Vec<DVector<f64>> = (0..n)
            .map(|i| {
                let mut v = DVector::zeros(2 * n);
                v[n + i] = 1.0;
                v
            })
            .collect();
        Self::from_graph_vectors(n, &vectors, tol).expect("well-formed graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn tol(&self) -> f64 {
        self.graph.tol()
    }

    /// The same relation recomputed under a different tolerance.
    pub fn with_tol(&self, tol: f64) -> Self {
        LinearRelation {
            n: self.n,
            graph: Subspace::span_of_columns(self.graph.basis(), tol),
        }
    }

    /// Domain block of the graph basis (`n × k`).
    pub fn domain_block(&self) -> DMatrix<f64> {
        self.graph.basis().rows(0, self.n).into_owned()
    }

    /// Range block of the graph basis (`n × k`).
    pub fn range_block(&self) -> DMatrix<f64> {
        self.graph.basis().rows(self.n, self.n).into_owned()
    }

    /// Graph points of the orthonormal basis as `(a, a*)` pairs.
    pub fn graph_points(&self) -> Vec<(DVector<f64>, DVector<f64>)> {
        self.graph.basis_vectors().iter().map(split).collect()
    }

    pub fn contains(&self, x: &DVector<f64>, xstar: &DVector<f64>) -> bool {
        self.graph
            .contains(&stack(x, xstar), comparison_tol(self.tol()))
    }

    fn check_same_n(&self, other: &LinearRelation, context: &'static str) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &DVector<f64>, context: &'static str) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                context,
                expected: self.n,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `gra A* = {(y, y*) : (y*, -y) ⊥ gra A}`.
    pub fn adjoint(&self) -> LinearRelation {
        let n = self.n;
        let c = self.graph.complement();
        // (u, v) ∈ (gra A)^⊥  ↦  (-v, u)
        let mut swap_negate = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            swap_negate[(i, n + i)] = -1.0;
            swap_negate[(n + i, i)] = 1.0;
        }
        LinearRelation {
            n,
            graph: c.image(&swap_negate),
        }
    }

    /// `gra A⁻¹ = {(x*, x) : (x, x*) ∈ gra A}`.
    pub fn inverse(&self) -> LinearRelation {
        let n = self.n;
        let mut swap = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            swap[(i, n + i)] = 1.0;
            swap[(n + i, i)] = 1.0;
        }
        LinearRelation {
            n,
            graph: self.graph.image(&swap),
        }
    }

    /// `αA + βB`, defined on `dom A ∩ dom B`.
    pub fn combine(alpha: f64, a: &LinearRelation, beta: f64, b: &LinearRelation) -> Result<LinearRelation> {
        a.check_same_n(b, "combine")?;
        let n = a.n;
        let tol = a.tol();
        let (ga1, ga2) = (a.domain_block(), a.range_block());
        let (gb1, gb2) = (b.domain_block(), b.range_block());
        let (ka, kb) = (ga1.ncols(), gb1.ncols());
        // pairs (c, d) with G_A1 c = G_B1 d parametrize the common domain
        let mut coupling = DMatrix::zeros(n, ka + kb);
        coupling.view_mut((0, 0), (n, ka)).copy_from(&ga1);
        coupling.view_mut((0, ka), (n, kb)).copy_from(&(-&gb1));
        let pairs = kernel(&coupling, tol);
        let mut images = Vec::with_capacity(pairs.dim());
        for p in pairs.basis_vectors() {
            let c = p.rows(0, ka).into_owned();
            let d = p.rows(ka, kb).into_owned();
            let x = &ga1 * &c;
            let xstar = alpha * (&ga2 * &c) + beta * (&gb2 * &d);
            images.push(stack(&x, &xstar));
        }
        LinearRelation::from_graph_vectors(n, &images, tol)
    }

    /// `A₊ = ½A + ½A*`.
    pub fn symmetric_part(&self) -> LinearRelation {
        Self::combine(0.5, self, 0.5, &self.adjoint()).expect("same dimension")
    }

    /// `A∘ = ½A - ½A*`.
    pub fn skew_part(&self) -> LinearRelation {
        Self::combine(0.5, self, -0.5, &self.adjoint()).expect("same dimension")
    }

    pub fn feature_subspaces(&self) -> FeatureSubspaces {
        let tol = self.tol();
        let g1 = self.domain_block();
        let g2 = self.range_block();
        let dom = Subspace::span_of_columns(&g1, tol);
        let ran = Subspace::span_of_columns(&g2, tol);
        let ker = kernel(&g2, tol).image(&g1);
        let a0 = kernel(&g1, tol).image(&g2);
        FeatureSubspaces { dom, ran, ker, a0 }
    }

    pub fn domain(&self) -> Subspace {
        Subspace::span_of_columns(&self.domain_block(), self.tol())
    }

    pub fn range(&self) -> Subspace {
        Subspace::span_of_columns(&self.range_block(), self.tol())
    }

    pub fn kernel(&self) -> Subspace {
        kernel(&self.range_block(), self.tol()).image(&self.domain_block())
    }

    /// The multivalued part `A0 = {x* : (0, x*) ∈ gra A}`.
    pub fn multivalued_part(&self) -> Subspace {
        kernel(&self.domain_block(), self.tol()).image(&self.range_block())
    }

    /// `Ax = x* + A0`, reported with the least-norm particular solution.
    pub fn evaluate(&self, x: &DVector<f64>) -> Result<AffineImage> {
        self.check_vector(x, "evaluate")?;
        let tol = self.tol();
        let g1 = self.domain_block();
        let dom = Subspace::span_of_columns(&g1, tol);
        if !dom.contains(x, comparison_tol(tol)) {
            return Ok(AffineImage::Empty);
        }
        let coeffs = numkernel::pseudo_inverse(&g1, tol) * x;
        let particular = self.range_block() * coeffs;
        let a0 = self.multivalued_part();
        let point = &particular - a0.project(&particular);
        Ok(AffineImage::Affine {
            point,
            direction_space: a0,
        })
    }

    /// Smallest eigenvalue of the pairing form on the orthonormal graph
    /// basis; `None` for the zero graph.
    pub fn monotonicity_margin(&self) -> Option<f64> {
        restricted_min_eigenvalue(&pairing_matrix(self.n), &self.graph).ok()
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_margin()
            .map_or(true, |m| m >= -self.tol())
    }

    /// Monotone with `dim gra A = n`.
    pub fn is_maximally_monotone(&self) -> bool {
        self.is_monotone() && self.graph.dim() == self.n
    }

    /// Graph point with the most negative pairing, when monotonicity fails.
    pub fn non_monotone_witness(&self) -> Option<(DVector<f64>, DVector<f64>)> {
        let (lambda, z) = numkernel::restricted_min_eigenvector(&pairing_matrix(self.n), &self.graph)?;
        (lambda < -self.tol()).then(|| split(&normalize_sign(z)))
    }

    /// A point outside `gra A` that is monotonically related to every graph
    /// point, when `A` is monotone but its graph has dimension below `n`.
    ///
    /// Every `(y, y*)` with `(y*, y) ⊥ gra A` satisfies
    /// `⟨y - a, y* - a*⟩ = ⟨y, y*⟩ + ⟨a, a*⟩`, and this subspace has dimension
    /// `2n - dim gra A > n`, so the pairing form is positive somewhere on it.
    pub fn monotone_extension_witness(&self) -> Option<(DVector<f64>, DVector<f64>)> {
        if !self.is_monotone() || self.graph.dim() >= self.n {
            return None;
        }
        let n = self.n;
        let mut swap = DMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            swap[(i, n + i)] = 1.0;
            swap[(n + i, i)] = 1.0;
        }
        let related = self.graph.complement().image(&swap);
        let (lambda, z) = restricted_max_eigenvector(&pairing_matrix(n), &related)?;
        (lambda > 0.0).then(|| split(&normalize_sign(z)))
    }

    /// The matrix `M` with `gra A = gra M`, if `A` is single-valued with full
    /// domain.
    pub fn to_matrix(&self) -> Result<DMatrix<f64>> {
        let tol = self.tol();
        let g1 = self.domain_block();
        if self.graph.dim() != self.n || numkernel::rank(&g1, tol) != self.n {
            return Err(Error::NotAMatrix);
        }
        let inv = g1.clone().try_inverse().ok_or(Error::NotAMatrix)?;
        Ok(self.range_block() * inv)
    }

    /// Graph equality up to the comparison tolerance.
    pub fn same_graph(&self, other: &LinearRelation) -> bool {
        self.n == other.n
            && subspace_equal(&self.graph, &other.graph, comparison_tol(self.tol())).unwrap_or(false)
    }
}

/// Unit norm, first significant entry positive.
pub(crate) fn normalize_sign(mut z: DVector<f64>) -> DVector<f64> {
    let norm = z.norm();
    if norm > 0.0 {
        z /= norm;
    }
    if let Some(first) = z.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            z = -z;
        }
    }
    z
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

    fn m2(a: f64, b: f64, c: f64, d: f64) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[a, b, c, d])
    }

    fn rotation() -> LinearRelation {
        LinearRelation::from_matrix(&m2(0.0, 1.0, -1.0, 0.0), TOL).unwrap()
    }

    #[test]
    fn from_matrix_examples() {
        let id = LinearRelation::identity(2, TOL);
        assert_eq!(id.graph().dim(), 2);
        assert!(id.contains(&v(&[1.0, 0.0]), &v(&[1.0, 0.0])));
        assert!(id.contains(&v(&[0.0, 1.0]), &v(&[0.0, 1.0])));
        assert!(rotation().contains(&v(&[1.0, 0.0]), &v(&[0.0, -1.0])));
        let zero = LinearRelation::from_matrix(&DMatrix::zeros(2, 2), TOL).unwrap();
        let fs = zero.feature_subspaces();
        assert!(fs.dom.is_full() && fs.ran.is_zero() && fs.ker.is_full() && fs.a0.is_zero());
        assert!(matches!(
            LinearRelation::from_matrix(&DMatrix::zeros(2, 3), TOL),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn adjoint_examples() {
        let nil = LinearRelation::from_matrix(&m2(0.0, 1.0, 0.0, 0.0), TOL).unwrap();
        let expect = LinearRelation::from_matrix(&m2(0.0, 0.0, 1.0, 0.0), TOL).unwrap();
        assert!(nil.adjoint().same_graph(&expect));
        assert_abs_diff_eq!(nil.adjoint().to_matrix().unwrap(), m2(0.0, 0.0, 1.0, 0.0), epsilon = 1e-12);

        // {0} x R^2: complement is R^2 x {0}; (u, 0) maps to (0, u).
        let vert = LinearRelation::zero_domain(2, TOL);
        let by_hand = LinearRelation::from_graph_vectors(2, &[v(&[0.0, 0.0, 1.0, 0.0]), v(&[0.0, 0.0, 0.0, 1.0])], TOL).unwrap();
        assert!(vert.adjoint().same_graph(&by_hand));

        let rot_t = LinearRelation::from_matrix(&m2(0.0, -1.0, 1.0, 0.0), TOL).unwrap();
        assert!(rotation().adjoint().same_graph(&rot_t));
    }

    #[test]
    fn combine_examples() {
        let r = rotation();
        let sym = LinearRelation::combine(0.5, &r, 0.5, &r.adjoint()).unwrap();
        assert!(sym.same_graph(&LinearRelation::from_matrix(&DMatrix::zeros(2, 2), TOL).unwrap()));

        let id = LinearRelation::identity(2, TOL);
        let two = LinearRelation::combine(1.0, &id, 1.0, &id).unwrap();
        assert_abs_diff_eq!(two.to_matrix().unwrap(), DMatrix::identity(2, 2) * 2.0, epsilon = 1e-12);

        let zero = LinearRelation::from_matrix(&DMatrix::zeros(2, 2), TOL).unwrap();
        let vert = LinearRelation::zero_domain(2, TOL);
        let sum = LinearRelation::combine(1.0, &zero, 1.0, &vert).unwrap();
        assert!(sum.same_graph(&vert));
    }

    #[test]
    fn combine_with_trivial_domain_and_trivial_multivalued_parts() {
        // dom A = span{e1}, dom B = span{e2}, both single-valued there.
        let a = LinearRelation::from_graph_vectors(2, &[v(&[1.0, 0.0, 1.0, 0.0])], TOL).unwrap();
        let b = LinearRelation::from_graph_vectors(2, &[v(&[0.0, 1.0, 0.0, 1.0])], TOL).unwrap();
        let s = LinearRelation::combine(1.0, &a, 1.0, &b).unwrap();
        assert_eq!(s.graph().dim(), 0);
        assert!(matches!(
            LinearRelation::combine(1.0, &a, 1.0, &LinearRelation::identity(3, TOL)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        let two = LinearRelation::from_matrix(&(DMatrix::identity(2, 2) * 2.0), TOL).unwrap();
        assert_abs_diff_eq!(two.inverse().to_matrix().unwrap(), DMatrix::identity(2, 2) * 0.5, epsilon = 1e-12);
        let zero = LinearRelation::from_matrix(&DMatrix::zeros(2, 2), TOL).unwrap();
        assert!(zero.inverse().same_graph(&LinearRelation::zero_domain(2, TOL)));
        assert!(rotation().inverse().inverse().same_graph(&rotation()));
    }

    #[test]
    fn feature_subspaces_of_vertical_relation() {
        let fs = LinearRelation::zero_domain(2, TOL).feature_subspaces();
        assert!(fs.dom.is_zero() && fs.ran.is_full() && fs.ker.is_zero() && fs.a0.is_full());
    }

    #[test]
    fn evaluate_examples() {
        match rotation().evaluate(&v(&[1.0, 0.0])).unwrap() {
            AffineImage::Affine { point, direction_space } => {
                assert_abs_diff_eq!(point, v(&[0.0, -1.0]), epsilon = 1e-12);
                assert!(direction_space.is_zero());
            }
            AffineImage::Empty => panic!("rotation has full domain"),
        }
        let vert = LinearRelation::zero_domain(2, TOL);
        assert!(vert.evaluate(&v(&[1.0, 0.0])).unwrap().is_empty());
        match vert.evaluate(&v(&[0.0, 0.0])).unwrap() {
            AffineImage::Affine { point, direction_space } => {
                assert_abs_diff_eq!(point, v(&[0.0, 0.0]), epsilon = 1e-12);
                assert!(direction_space.is_full());
            }
            AffineImage::Empty => panic!("0 is in the domain"),
        }
        assert!(vert.evaluate(&v(&[0.0])).is_err());
    }

    #[test]
    fn monotonicity_examples() {
        assert!(rotation().is_monotone());
        let saddle = LinearRelation::from_matrix(&m2(1.0, 0.0, 0.0, -1.0), TOL).unwrap();
        assert!(!saddle.is_monotone());
        let (a, astar) = saddle.non_monotone_witness().unwrap();
        assert!(a.dot(&astar) < 0.0);
        assert!(LinearRelation::zero_domain(2, TOL).is_monotone());
    }

    #[test]
    fn maximality_examples() {
        assert!(rotation().is_maximally_monotone());
        let origin = LinearRelation::from_graph_vectors(1, &[], TOL).unwrap();
        assert!(origin.is_monotone());
        assert!(!origin.is_maximally_monotone());
        let zero_map = LinearRelation::from_graph_vectors(1, &[v(&[1.0, 0.0])], TOL).unwrap();
        assert!(zero_map.is_maximally_monotone());
    }

    #[test]
    fn extension_witness_for_origin_graph() {
        let origin = LinearRelation::from_graph_vectors(2, &[v(&[1.0, 0.0, 1.0, 0.0])], TOL).unwrap();
        let (y, ystar) = origin.monotone_extension_witness().unwrap();
        assert!(!origin.contains(&y, &ystar));
        // related to every graph point t(1, 0, 1, 0)
        for t in [-3.0, -1.0, 0.0, 0.5, 2.0] {
            let a = v(&[t, 0.0]);
            assert!((&y - &a).dot(&(&ystar - &a)) >= -1e-12);
        }
        assert!(rotation().monotone_extension_witness().is_none());
    }
}
