//! Named operators: the planar rotation, the rotation plus the normal cone
//! of the unit ball, discretized Volterra integration, truncated diagonal
//! plus block-skew sums, and cyclic-shift displacements.
//!
//! Each entry carries the classification it is expected to receive. The
//! classifiers never read it; it exists for the acceptance suite and the
//! CLI's `gallery_expected` field.

use nalgebra::{DMatrix, DVector, Vector2};

use crate::classify::{self, ClassificationReport, Witness};
use crate::error::{Error, Result};
use crate::nonexpansive::{cyclic_shift, displacement};
use crate::numkernel::FitzValue;
use crate::relation::LinearRelation;

/// `[[0, 1], [-1, 0]]`.
pub fn rotation() -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0])
}

/// Trapezoidal discretization of `x ↦ ∫₀ᵗ x` on `n` cells:
/// `V_n = h (L − ½I)` with `h = 1/n` and `L` the lower-triangular ones.
///
/// The symmetric part is exactly `(h/2) J` with `J` the all-ones matrix, so
/// `⟨x, V_n x⟩ = (h/2)(Σ xᵢ)²`. Endpoint rules lose this rank-one structure.
pub fn volterra(n: usize) -> Result<DMatrix<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("volterra needs n >= 2, got {n}")));
    }
    let h = 1.0 / n as f64;
    Ok(DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.5 * h
        } else if j < i {
            h
        } else {
            0.0
        }
    }))
}

/// `C_m = D_m + B_m` on `R^{2m}`: `D_m = diag(1, ½, …, 1/(2m))` plus the
/// block-diagonal skew map with blocks `[[0, −1], [1, 0]]`.
///
/// Every truncation is rectangular with a positive cocoercivity modulus;
/// the modulus tends to zero with `m`, and only in the limit does the sum
/// stop being rectangular.
pub fn shift_sum(m: usize) -> Result<DMatrix<f64>> {
    if m == 0 {
        return Err(Error::InvalidArgument("shift_sum needs m >= 1".into()));
    }
    let size = 2 * m;
    let mut c = DMatrix::zeros(size, size);
    for i in 0..size {
        c[(i, i)] = 1.0 / (i + 1) as f64;
    }
    for b in 0..m {
        let (i, j) = (2 * b, 2 * b + 1);
        c[(i, j)] = -1.0;
        c[(j, i)] = 1.0;
    }
    Ok(c)
}

/// Value of `(A + N_B)(x)` for the closed unit ball `B`.
#[derive(Debug, Clone, PartialEq)]
pub enum SetValue {
    Empty,
    Point(Vector2<f64>),
    /// `{base + λ direction : λ ≥ 0}` with `|direction| = 1`.
    Ray {
        base: Vector2<f64>,
        direction: Vector2<f64>,
    },
}

impl SetValue {
    pub fn contains(&self, v: &Vector2<f64>, tol: f64) -> bool {
        match self {
            SetValue::Empty => false,
            SetValue::Point(p) => (v - p).norm() <= tol * v.norm().max(1.0),
            SetValue::Ray { base, direction } => {
                let offset = v - base;
                let lambda = offset.dot(direction).max(0.0);
                (offset - direction * lambda).norm() <= tol * v.norm().max(1.0)
            }
        }
    }
}

/// `x ↦ Ax + N_B(x)` on `R²` with `A` skew and `B` the closed unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallConstrainedOperator {
    a: DMatrix<f64>,
    tol: f64,
}

impl BallConstrainedOperator {
    pub fn new(a: DMatrix<f64>, tol: f64) -> Result<Self> {
        if a.shape() != (2, 2) {
            return Err(Error::DimensionMismatch {
                context: "ball-constrained operator",
                expected: 2,
                found: a.nrows().max(a.ncols()),
            });
        }
        let defect = (&a + a.transpose()).abs().max();
        if defect > tol {
            return Err(Error::NotSkew { defect });
        }
        Ok(BallConstrainedOperator { a, tol })
    }

    /// The rotation plus the normal cone of the unit ball.
    pub fn rotation(tol: f64) -> Self {
        Self::new(rotation(), tol).expect("rotation is skew")
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn apply(&self, x: &Vector2<f64>) -> Vector2<f64> {
        Vector2::new(
            self.a[(0, 0)] * x[0] + self.a[(0, 1)] * x[1],
            self.a[(1, 0)] * x[0] + self.a[(1, 1)] * x[1],
        )
    }

    pub fn evaluate(&self, x: &Vector2<f64>) -> SetValue {
        let r = x.norm();
        if r > 1.0 + self.tol {
            SetValue::Empty
        } else if r < 1.0 - self.tol {
            SetValue::Point(self.apply(x))
        } else {
            SetValue::Ray {
                base: self.apply(x),
                direction: x / r,
            }
        }
    }

    pub fn contains(&self, x: &Vector2<f64>, xstar: &Vector2<f64>) -> bool {
        self.evaluate(x).contains(xstar, self.tol.sqrt())
    }

    /// Least-norm element of `Ax + N_B(x)`; for skew `A` this is `Ax`.
    pub fn least_norm_element(&self, x: &Vector2<f64>) -> Option<Vector2<f64>> {
        match self.evaluate(x) {
            SetValue::Empty => None,
            SetValue::Point(p) => Some(p),
            SetValue::Ray { base, direction } => {
                let lambda = (-base.dot(&direction)).max(0.0);
                Some(base + direction * lambda)
            }
        }
    }

    /// Closed form of the Fitzpatrick function. For `|x| ≤ 1`,
    ///
    /// ```text
    /// F(x, y*) = sup_{|a| ≤ 1, λ ≥ 0} ⟨a, y* − Ax⟩ + λ(⟨x, a⟩ − 1) = |y* − Ax|
    /// ```
    ///
    /// because `⟨a, Aa⟩ = 0` and the `λ` term is nonpositive on the ball.
    /// Outside the ball, `a = x/|x|` with `λ → ∞` drives the value to `+∞`.
    pub fn fitzpatrick(&self, x: &Vector2<f64>, ystar: &Vector2<f64>) -> FitzValue {
        if x.norm() > 1.0 + self.tol {
            FitzValue::PlusInfinity
        } else {
            FitzValue::Finite((ystar - self.apply(x)).norm())
        }
    }

    /// Two graph points with vanishing monotonicity gap whose outputs are not
    /// interchangeable: `(δa, δa*)` and `(0, 0)` with `δ = ½`, where `(a, a*)`
    /// is the paramonotonicity witness of the linear part. `δa` lies in the
    /// open ball, so `δa*` is the unique output there, and `δa* ∉ A0 = {0}`.
    pub fn paramonotone_witness(&self) -> Result<((Vector2<f64>, Vector2<f64>), (Vector2<f64>, Vector2<f64>))> {
        let linear = LinearRelation::from_matrix(&self.a, self.tol)?;
        let verdict = classify::is_paramonotone(&linear)?;
        let witness = verdict.witness.ok_or_else(|| {
            Error::InvalidArgument("linear part is paramonotone; no witness exists".into())
        })?;
        let delta = 0.5;
        let a = witness.get("a").expect("pair witness");
        let astar = witness.get("a_star").expect("pair witness");
        Ok((
            (
                Vector2::new(a[0], a[1]) * delta,
                Vector2::new(astar[0], astar[1]) * delta,
            ),
            (Vector2::zeros(), Vector2::zeros()),
        ))
    }

    /// Probe points used to confirm that `F` is finite on `dom × R²`.
    fn rectangularity_probes() -> Vec<(Vector2<f64>, Vector2<f64>)> {
        let mut probes = Vec::new();
        for k in 0..12 {
            let theta = k as f64 * std::f64::consts::PI / 6.0;
            for radius in [0.0, 0.5, 1.0] {
                let x = Vector2::new(theta.cos(), theta.sin()) * radius;
                for scale in [0.0, 1.0, 100.0] {
                    let y = Vector2::new((2.0 * theta).sin(), (3.0 * theta).cos()) * scale;
                    probes.push((x, y));
                }
            }
        }
        probes
    }

    /// Classification of `A + N_B`. Maximality follows from `A` being linear,
    /// continuous and monotone with `0 ∈ int B`; rectangularity is confirmed
    /// on a fixed probe set of `dom × R²`; paramonotonicity and strict
    /// monotonicity fail on the `δ = ½` witness pair.
    pub fn classification_report(&self) -> Result<ClassificationReport> {
        let linear = LinearRelation::from_matrix(&self.a, self.tol)?;
        let monotone = linear.is_monotone();
        let rectangular = Self::rectangularity_probes()
            .iter()
            .all(|(x, y)| self.fitzpatrick(x, y).is_finite());
        let ((p, pstar), (q, qstar)) = self.paramonotone_witness()?;
        let gap = (p - q).dot(&(pstar - qstar));
        let interchangeable = self.contains(&p, &qstar) && self.contains(&q, &pstar);
        let paramonotone = gap.abs() > self.tol || interchangeable;
        let strictly_monotone = gap.abs() > self.tol || (p - q).norm() == 0.0;
        let to_dvec = |v: Vector2<f64>| DVector::from_column_slice(v.as_slice());
        let pair_witness = Witness {
            vectors: vec![
                ("a".into(), to_dvec(p)),
                ("a_star".into(), to_dvec(pstar)),
                ("b".into(), to_dvec(q)),
                ("b_star".into(), to_dvec(qstar)),
            ],
        };
        let mut witnesses = Vec::new();
        if !strictly_monotone {
            witnesses.push(("strictly_monotone".to_string(), pair_witness.clone()));
        }
        if !paramonotone {
            witnesses.push(("paramonotone".to_string(), pair_witness));
        }
        Ok(ClassificationReport {
            n: 2,
            tol: self.tol,
            monotone,
            maximal: Some(monotone),
            strictly_monotone: Some(strictly_monotone),
            paramonotone: Some(paramonotone),
            rectangular: Some(rectangular),
            cocoercivity_modulus: None,
            witnesses,
            near_singular: false,
        })
    }
}

/// Classification each gallery operator is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedClassification {
    pub monotone: bool,
    pub maximal: bool,
    pub strictly_monotone: bool,
    pub paramonotone: bool,
    pub rectangular: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GalleryOperator {
    Matrix(DMatrix<f64>),
    Ball(BallConstrainedOperator),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub param: Option<usize>,
    pub operator: GalleryOperator,
    pub expected: ExpectedClassification,
}

/// Gallery names and whether each takes a size parameter.
pub const GALLERY: &[(&str, Option<&str>)] = &[
    ("rotation", None),
    ("rotation_ball", None),
    ("volterra", Some("n >= 2: number of grid cells")),
    ("shift_sum", Some("m >= 1: number of 2x2 blocks (dimension 2m)")),
    ("cyclic_shift_displacement", Some("m >= 1: number of scalar blocks")),
];

pub fn build(name: &str, param: Option<usize>, tol: f64) -> Result<GalleryEntry> {
    let need = |p: Option<usize>| {
        p.ok_or_else(|| Error::InvalidArgument(format!("gallery operator '{name}' needs a size parameter")))
    };
    let expected = |strict: bool, para: bool, rect: bool| ExpectedClassification {
        monotone: true,
        maximal: true,
        strictly_monotone: strict,
        paramonotone: para,
        rectangular: rect,
    };
    let entry = match name {
        "rotation" => GalleryEntry {
            name: "rotation",
            param: None,
            operator: GalleryOperator::Matrix(rotation()),
            expected: expected(false, false, false),
        },
        "rotation_ball" => GalleryEntry {
            name: "rotation_ball",
            param: None,
            operator: GalleryOperator::Ball(BallConstrainedOperator::rotation(tol)),
            expected: expected(false, false, true),
        },
        "volterra" => {
            let n = need(param)?;
            GalleryEntry {
                name: "volterra",
                param: Some(n),
                operator: GalleryOperator::Matrix(volterra(n)?),
                expected: expected(false, false, false),
            }
        }
        "shift_sum" => {
            let m = need(param)?;
            GalleryEntry {
                name: "shift_sum",
                param: Some(m),
                operator: GalleryOperator::Matrix(shift_sum(m)?),
                expected: expected(true, true, true),
            }
        }
        "cyclic_shift_displacement" => {
            let m = need(param)?;
            GalleryEntry {
                name: "cyclic_shift_displacement",
                param: Some(m),
                operator: GalleryOperator::Matrix(displacement(&cyclic_shift(m, 1)?, tol)?),
                // constant vectors are fixed by the shift, so Id − R vanishes there
                expected: expected(false, true, true),
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!("unknown gallery operator '{other}'")));
        }
    };
    Ok(entry)
}
