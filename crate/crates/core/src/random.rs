//! Random operator generators for property tests and the acceptance suite.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::numkernel::{spectral_norm, Subspace};
use crate::relation::{stack, LinearRelation};

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// Orthonormal basis of a random `r`-dimensional subspace of `R^n`.
pub fn random_subspace<R: Rng + ?Sized>(rng: &mut R, n: usize, r: usize, tol: f64) -> Subspace {
    if r == 0 {
        return Subspace::zero(n, tol);
    }
    Subspace::span_of_columns(&gaussian_matrix(rng, n, r), tol)
}

pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = gaussian_matrix(rng, n, n);
    (&g - g.transpose()) * 0.5
}

/// Orthogonal matrix from the QR factorization of a Gaussian matrix.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    gaussian_matrix(rng, n, n).qr().q()
}

/// `S + K` with `S` PSD of random rank and `K` skew. `K` is zero, compressed
/// to `ran S`, or unrestricted with equal probability; compression keeps the
/// sum paramonotone, the unrestricted case usually does not.
pub fn random_monotone_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let r = rng.random_range(0..=n);
    let factor = gaussian_matrix(rng, n, r);
    let s = &factor * factor.transpose();
    let k = random_skew(rng, n);
    match rng.random_range(0..3) {
        0 => s,
        1 => {
            let p = Subspace::span_of_columns(&factor, 1e-12).projector();
            s + &p * k * &p
        }
        _ => s + k,
    }
}

/// Maximal monotone relation: `M = S + K` as in [`random_monotone_matrix`];
/// with probability ½ the domain is cut to a random proper subspace `D` and
/// the graph becomes `{(d, Md + w) : d ∈ D, w ∈ D^⊥}`, which keeps
/// `dim gra = n` and monotonicity.
pub fn random_maximal_monotone_relation<R: Rng + ?Sized>(rng: &mut R, n: usize, tol: f64) -> LinearRelation {
    let m = random_monotone_matrix(rng, n);
    if rng.random_bool(0.5) {
        return LinearRelation::from_matrix(&m, tol).expect("square");
    }
    let dim = rng.random_range(0..n);
    let d = random_subspace(rng, n, dim, tol);
    let mut vectors: Vec<DVector<f64>> = d.basis_vectors().iter().map(|v| stack(v, &(&m * v))).collect();
    for w in d.complement().basis_vectors() {
        vectors.push(stack(&DVector::zeros(n), &w));
    }
    LinearRelation::from_graph_vectors(n, &vectors, tol).expect("well-formed graph")
}

/// Monotone matrix with a positive cocoercivity modulus: PSD part with
/// eigenvalues in `[0.5, 2]` on a random subspace `U` of dimension ≥ 1, plus
/// a skew part acting inside `U`. Invertible when `U = R^n`.
pub fn random_cocoercive_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let r = rng.random_range(1..=n);
    let u = random_subspace(rng, n, r, 1e-12);
    let basis = u.basis();
    let eig = DMatrix::from_diagonal(&DVector::from_fn(r, |_, _| rng.random_range(0.5..2.0)));
    let s = basis * eig * basis.transpose();
    let k = random_skew(rng, r);
    s + basis * k * basis.transpose()
}

/// Paramonotone matrix: PSD part with eigenvalues in `[0.1, 3]` on a random
/// subspace `U` (possibly `{0}`), plus a skew part compressed to `U`.
pub fn random_paramonotone_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let r = rng.random_range(0..=n);
    if r == 0 {
        return DMatrix::zeros(n, n);
    }
    let basis = random_subspace(rng, n, r, 1e-12).basis().clone();
    let eig = DMatrix::from_diagonal(&DVector::from_fn(r, |_, _| rng.random_range(0.1..3.0)));
    let k = random_skew(rng, r);
    &basis * (eig + k) * basis.transpose()
}

/// Random matrix scaled to spectral norm one, then by a uniform factor in
/// `[0, 1]`.
pub fn random_nonexpansive<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = gaussian_matrix(rng, n, n);
    let norm = spectral_norm(&g);
    g / norm * rng.random::<f64>()
}
