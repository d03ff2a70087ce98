//! Linear nonexpansive maps, resolvents and displacement mappings.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::numkernel::{check_square, spectral_norm};
use crate::relation::LinearRelation;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonexpansivenessClass {
    pub operator_norm: f64,
    pub nonexpansive: bool,
    /// `‖2T − I‖ ≤ 1`.
    pub firmly_nonexpansive: bool,
}

pub fn nonexpansiveness_class(t: &DMatrix<f64>, tol: f64) -> Result<NonexpansivenessClass> {
    let n = check_square(t)?;
    let operator_norm = spectral_norm(t);
    let reflected = t * 2.0 - DMatrix::identity(n, n);
    Ok(NonexpansivenessClass {
        operator_norm,
        nonexpansive: operator_norm <= 1.0 + tol,
        firmly_nonexpansive: spectral_norm(&reflected) <= 1.0 + tol,
    })
}

/// `J_A = (Id + A)⁻¹`.
pub fn resolvent(a: &LinearRelation) -> LinearRelation {
    let id = LinearRelation::identity(a.n(), a.tol());
    LinearRelation::combine(1.0, &id, 1.0, a)
        .expect("identity has the same dimension")
        .inverse()
}

/// `Id − T` for a nonexpansive `T`.
pub fn displacement(t: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let class = nonexpansiveness_class(t, tol)?;
    if !class.nonexpansive {
        return Err(Error::NotNonexpansive {
            norm: class.operator_norm,
        });
    }
    let n = t.nrows();
    Ok(DMatrix::identity(n, n) - t)
}

/// Cyclic right shift on `(R^d)^m`: `(x_1, …, x_m) ↦ (x_m, x_1, …, x_{m−1})`.
pub fn cyclic_shift(m: usize, d: usize) -> Result<DMatrix<f64>> {
    if m == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "cyclic shift needs m >= 1 and d >= 1, got m={m}, d={d}"
        )));
    }
    let size = m * d;
    let mut r = DMatrix::zeros(size, size);
    for block in 0..m {
        let target = (block + 1) % m;
        for k in 0..d {
            r[(target * d + k, block * d + k)] = 1.0;
        }
    }
    Ok(r)
}
