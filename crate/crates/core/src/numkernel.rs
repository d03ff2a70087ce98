//! Tolerance-aware dense linear algebra: subspaces with orthonormal bases,
//! kernels, restricted eigenvalues and the concave quadratic supremum that
//! sits underneath every Fitzpatrick evaluation.
//!
//! Rank decisions follow one rule throughout: a singular value `s` is
//! nonzero iff `s > tol * max(s_max, 1)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Default tolerance for rank decisions and predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Thin singular value decomposition `m = U diag(s) Vᵀ`.
///
/// nalgebra's bidiagonal iteration occasionally returns factors that do not
/// reproduce rank-deficient input, so every factorization is checked; on
/// failure the transpose is tried, then the symmetric eigenproblem of
/// `[[0, M], [Mᵀ, 0]]`, whose eigenpairs are `±s` with `(u, ±v)/√2`.
pub(crate) struct Svd {
    pub u: DMatrix<f64>,
    pub s: DVector<f64>,
    pub v: DMatrix<f64>,
}

impl Svd {
    pub fn new(m: &DMatrix<f64>) -> Self {
        if let Some(f) = Self::nalgebra(m).filter(|f| f.reproduces(m)) {
            return f;
        }
        let t = m.transpose();
        if let Some(f) = Self::nalgebra(&t).map(Svd::transposed).filter(|f| f.reproduces(m)) {
            return f;
        }
        Self::jordan_wielandt(m)
    }

    fn nalgebra(m: &DMatrix<f64>) -> Option<Self> {
        let f = m.clone().try_svd(true, true, f64::EPSILON, 0)?;
        Some(Svd {
            u: f.u?,
            s: f.singular_values,
            v: f.v_t?.transpose(),
        })
    }

    fn transposed(self) -> Self {
        Svd {
            u: self.v,
            s: self.s,
            v: self.u,
        }
    }

    fn reproduces(&self, m: &DMatrix<f64>) -> bool {
        let slack = 1e-12 * (m.nrows() + m.ncols()) as f64;
        let scaled = &self.u * DMatrix::from_diagonal(&self.s) * self.v.transpose();
        let orthonormal = |q: &DMatrix<f64>| {
            (q.transpose() * q - DMatrix::identity(q.ncols(), q.ncols())).amax() <= slack
        };
        (scaled - m).amax() <= slack * m.amax().max(f64::MIN_POSITIVE) && orthonormal(&self.u) && orthonormal(&self.v)
    }

    fn jordan_wielandt(m: &DMatrix<f64>) -> Self {
        let (d, k) = m.shape();
        let mut h = DMatrix::zeros(d + k, d + k);
        h.view_mut((0, d), (d, k)).copy_from(m);
        h.view_mut((d, 0), (k, d)).copy_from(&m.transpose());
        let eig = SymmetricEigen::new(h);
        let mut idx: Vec<usize> = (0..d + k).filter(|&i| eig.eigenvalues[i] > 0.0).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
        idx.truncate(d.min(k));
        let mut us = Vec::new();
        let mut vs = Vec::new();
        let mut ss = Vec::new();
        for &i in &idx {
            let w = eig.eigenvectors.column(i);
            let (u, v) = (w.rows(0, d).into_owned(), w.rows(d, k).into_owned());
            if u.norm() > 0.0 && v.norm() > 0.0 {
                us.push(u.normalize());
                vs.push(v.normalize());
                ss.push(eig.eigenvalues[i]);
            }
        }
        let stack = |cols: &[DVector<f64>], rows: usize| {
            if cols.is_empty() {
                DMatrix::zeros(rows, 0)
            } else {
                DMatrix::from_columns(cols)
            }
        };
        Svd {
            u: stack(&us, d),
            s: DVector::from_vec(ss),
            v: stack(&vs, k),
        }
    }
}

/// Extended real returned by supremum-type evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitzValue {
    Finite(f64),
    PlusInfinity,
}

impl FitzValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, FitzValue::Finite(_))
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            FitzValue::Finite(v) => Some(v),
            FitzValue::PlusInfinity => None,
        }
    }

    /// Maps `PlusInfinity` to `f64::INFINITY`.
    pub fn to_f64(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

/// A linear subspace of `R^d` stored by an orthonormal basis (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: DMatrix<f64>,
    tol: f64,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, tol: f64) -> Self {
        Subspace {
            ambient_dim,
            basis: DMatrix::zeros(ambient_dim, 0),
            tol,
        }
    }

    pub fn full(ambient_dim: usize, tol: f64) -> Self {
        Subspace {
            ambient_dim,
            basis: DMatrix::identity(ambient_dim, ambient_dim),
            tol,
        }
    }

    /// Span of `vectors` in `R^ambient_dim`.
    pub fn column_space(ambient_dim: usize, vectors: &[DVector<f64>], tol: f64) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "column_space",
                    expected: ambient_dim,
                    found: v.len(),
                });
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim, tol));
        }
        Ok(Self::span_of_columns(&DMatrix::from_columns(vectors), tol))
    }

    /// Span of the columns of `m`.
    pub fn span_of_columns(m: &DMatrix<f64>, tol: f64) -> Self {
        let d = m.nrows();
        if m.ncols() == 0 || d == 0 {
            return Self::zero(d, tol);
        }
        let svd = Svd::new(m);
        let smax = svd.s.iter().cloned().fold(0.0, f64::max);
        let cutoff = tol * smax.max(1.0);
        let mut order: Vec<usize> = (0..svd.s.len()).filter(|&i| svd.s[i] > cutoff).collect();
        order.sort_by(|&a, &b| svd.s[b].partial_cmp(&svd.s[a]).unwrap());
        let u = &svd.u;
        let cols: Vec<DVector<f64>> = order.iter().map(|&i| u.column(i).into_owned()).collect();
        let basis = if cols.is_empty() {
            DMatrix::zeros(d, 0)
        } else {
            DMatrix::from_columns(&cols)
        };
        Subspace {
            ambient_dim: d,
            basis,
            tol,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Orthonormal basis, one vector per column.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<DVector<f64>> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    /// Orthogonal projector onto the subspace.
    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.transpose() * v)
    }

    /// Euclidean distance from `v` to the subspace.
    pub fn distance(&self, v: &DVector<f64>) -> f64 {
        (v - self.project(v)).norm()
    }

    /// Relative membership test: `dist(v, S) <= tol * max(|v|, 1)`.
    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.distance(v) <= tol * v.norm().max(1.0)
    }

    /// Orthogonal complement in the ambient space.
    pub fn complement(&self) -> Subspace {
        let d = self.ambient_dim;
        if self.dim() == 0 {
            return Self::full(d, self.tol);
        }
        if self.dim() == d {
            return Self::zero(d, self.tol);
        }
        let p = DMatrix::identity(d, d) - self.projector();
        let eig = SymmetricEigen::new(p);
        let mut idx: Vec<usize> = (0..d).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
        idx.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
        let cols: Vec<DVector<f64>> = idx
            .iter()
            .map(|&i| eig.eigenvectors.column(i).into_owned())
            .collect();
        Subspace {
            ambient_dim: d,
            basis: if cols.is_empty() {
                DMatrix::zeros(d, 0)
            } else {
                DMatrix::from_columns(&cols)
            },
            tol: self.tol,
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_same_ambient(self, other, "subspace sum")?;
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        Subspace::column_space(self.ambient_dim, &cols, self.tol)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        check_same_ambient(self, other, "subspace intersection")?;
        Ok(self.complement().sum(&other.complement())?.complement())
    }

    /// Image of the subspace under a linear map (`m` has `ambient_dim` columns).
    pub fn image(&self, m: &DMatrix<f64>) -> Subspace {
        Subspace::span_of_columns(&(m * &self.basis), self.tol)
    }

    /// Sine of the largest principal angle to `other` (equal dimensions).
    pub fn max_angle_sine(&self, other: &Subspace) -> Result<f64> {
        check_same_ambient(self, other, "principal angles")?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "principal angles (subspace dimension)",
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if self.dim() == 0 {
            return Ok(0.0);
        }
        let residual = &other.basis - self.projector() * &other.basis;
        Ok(spectral_norm(&residual))
    }

    /// A reproducible basis: reduced row echelon form of the basis rows, so
    /// that the same subspace always yields the same vectors regardless of
    /// which orthonormal basis was computed. Pivot entries equal one.
    pub fn canonical_basis(&self) -> Vec<DVector<f64>> {
        let k = self.dim();
        let d = self.ambient_dim;
        let mut rows = self.basis.transpose();
        let pivot_tol = self.tol.sqrt().max(1e-12);
        let mut pivot_row = 0;
        for col in 0..d {
            if pivot_row == k {
                break;
            }
            let (best, best_val) = (pivot_row..k)
                .map(|r| (r, rows[(r, col)].abs()))
                .fold((pivot_row, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_val <= pivot_tol {
                continue;
            }
            rows.swap_rows(pivot_row, best);
            let p = rows[(pivot_row, col)];
            for j in 0..d {
                rows[(pivot_row, j)] /= p;
            }
            for r in 0..k {
                if r != pivot_row {
                    let f = rows[(r, col)];
                    if f != 0.0 {
                        for j in 0..d {
                            rows[(r, j)] -= f * rows[(pivot_row, j)];
                        }
                    }
                }
            }
            pivot_row += 1;
        }
        (0..pivot_row)
            .map(|r| {
                DVector::from_iterator(
                    d,
                    rows.row(r).iter().map(|&x| if x.abs() < 1e-13 { 0.0 } else { x }),
                )
            })
            .collect()
    }
}

fn check_same_ambient(s: &Subspace, t: &Subspace, context: &'static str) -> Result<()> {
    if s.ambient_dim != t.ambient_dim {
        return Err(Error::DimensionMismatch {
            context,
            expected: s.ambient_dim,
            found: t.ambient_dim,
        });
    }
    Ok(())
}

/// Dimensions equal and largest principal angle below `tol`.
pub fn subspace_equal(s: &Subspace, t: &Subspace, tol: f64) -> Result<bool> {
    check_same_ambient(s, t, "subspace_equal")?;
    if s.dim() != t.dim() {
        return Ok(false);
    }
    Ok(s.max_angle_sine(t)? < tol)
}

/// Null space of `m`, as the complement of its row space.
pub fn kernel(m: &DMatrix<f64>, tol: f64) -> Subspace {
    Subspace::span_of_columns(&m.transpose(), tol).complement()
}

pub fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    Subspace::span_of_columns(m, tol).dim()
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    Svd::new(m).s.iter().cloned().fold(0.0, f64::max)
}

pub fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

pub(crate) fn check_square(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(m.nrows())
}

pub(crate) fn min_eigenvalue(q: &DMatrix<f64>) -> f64 {
    if q.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(symmetrize(q))
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Smallest eigenvalue of `B^T Q B` where `B` is the orthonormal basis of `s`.
pub fn restricted_min_eigenvalue(q: &DMatrix<f64>, s: &Subspace) -> Result<f64> {
    let d = check_square(q)?;
    if s.ambient_dim() != d {
        return Err(Error::DimensionMismatch {
            context: "restricted_min_eigenvalue",
            expected: d,
            found: s.ambient_dim(),
        });
    }
    if s.dim() == 0 {
        return Err(Error::VacuousSubspace);
    }
    let b = s.basis();
    Ok(min_eigenvalue(&(b.transpose() * q * b)))
}

/// Eigenvector for the smallest eigenvalue of the compressed form `B^T Q B`,
/// mapped back to the ambient space.
pub(crate) fn restricted_min_eigenvector(q: &DMatrix<f64>, s: &Subspace) -> Option<(f64, DVector<f64>)> {
    restricted_extreme_eigenvector(q, s, false)
}

pub(crate) fn restricted_max_eigenvector(q: &DMatrix<f64>, s: &Subspace) -> Option<(f64, DVector<f64>)> {
    restricted_extreme_eigenvector(q, s, true)
}

fn restricted_extreme_eigenvector(
    q: &DMatrix<f64>,
    s: &Subspace,
    largest: bool,
) -> Option<(f64, DVector<f64>)> {
    if s.dim() == 0 {
        return None;
    }
    let b = s.basis();
    let eig = SymmetricEigen::new(symmetrize(&(b.transpose() * q * b)));
    let mut best = 0;
    for i in 1..eig.eigenvalues.len() {
        let better = if largest {
            eig.eigenvalues[i] > eig.eigenvalues[best]
        } else {
            eig.eigenvalues[i] < eig.eigenvalues[best]
        };
        if better {
            best = i;
        }
    }
    let v = b * eig.eigenvectors.column(best);
    Some((eig.eigenvalues[best], v))
}

/// Outcome of the concave quadratic supremum together with how close the
/// range-membership test came to its threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSup {
    pub value: FitzValue,
    /// Range residual divided by the acceptance threshold.
    pub residual_ratio: f64,
}

impl QuadraticSup {
    /// Residual within a factor 10 of the threshold on either side.
    pub fn near_singular(&self) -> bool {
        self.residual_ratio > 0.1 && self.residual_ratio < 10.0
    }
}

/// `sup_c (b^T c - c^T Q c)` for PSD `Q`: `b^T Q^+ b / 4` when `b` lies in
/// `ran Q`, `+inf` otherwise.
pub fn sup_linear_minus_quadratic(q: &DMatrix<f64>, b: &DVector<f64>, tol: f64) -> Result<FitzValue> {
    Ok(sup_linear_minus_quadratic_detailed(q, b, tol)?.value)
}

pub fn sup_linear_minus_quadratic_detailed(
    q: &DMatrix<f64>,
    b: &DVector<f64>,
    tol: f64,
) -> Result<QuadraticSup> {
    let k = check_square(q)?;
    if b.len() != k {
        return Err(Error::DimensionMismatch {
            context: "sup_linear_minus_quadratic",
            expected: k,
            found: b.len(),
        });
    }
    if k == 0 {
        return Ok(QuadraticSup {
            value: FitzValue::Finite(0.0),
            residual_ratio: 0.0,
        });
    }
    let eig = SymmetricEigen::new(symmetrize(q));
    let norm = eig.eigenvalues.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
    let scale = norm.max(1.0);
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -tol * scale {
        return Err(Error::NotPsd {
            min_eigenvalue: min_eig,
        });
    }
    let coeffs = eig.eigenvectors.transpose() * b;
    let mut solution_coeffs = DVector::zeros(k);
    // ‖QQ⁺b − b‖: the component of b in the numerical null space
    let mut null_part = 0.0;
    let mut smallest_kept = f64::INFINITY;
    let mut dropped = false;
    for i in 0..k {
        let lambda = eig.eigenvalues[i];
        if lambda > tol * scale {
            solution_coeffs[i] = coeffs[i] / lambda;
            smallest_kept = smallest_kept.min(lambda);
        } else {
            null_part += coeffs[i] * coeffs[i];
            dropped = true;
        }
    }
    let solution = &eig.eigenvectors * &solution_coeffs;
    let residual = null_part.sqrt();
    // eigenvectors on either side of the cutoff mix by about ε‖Q‖/gap
    let mixing = if dropped && smallest_kept.is_finite() {
        16.0 * k as f64 * f64::EPSILON * norm / smallest_kept * b.norm()
    } else {
        0.0
    };
    let threshold = tol * b.norm().max(1.0) + mixing;
    let residual_ratio = residual / threshold;
    let value = if residual <= threshold {
        FitzValue::Finite((0.25 * b.dot(&solution)).max(0.0))
    } else {
        FitzValue::PlusInfinity
    };
    Ok(QuadraticSup {
        value,
        residual_ratio,
    })
}

/// Moore-Penrose pseudoinverse with the crate-wide rank rule.
pub fn pseudo_inverse(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return DMatrix::zeros(m.ncols(), m.nrows());
    }
    let svd = Svd::new(m);
    let smax = svd.s.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * smax.max(1.0);
    let mut out = DMatrix::zeros(m.ncols(), m.nrows());
    for (i, &s) in svd.s.iter().enumerate() {
        if s > cutoff {
            out += svd.v.column(i) * svd.u.column(i).transpose() / s;
        }
    }
    out
}
