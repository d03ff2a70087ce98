#![allow(dead_code)]

use monofitz::relation::LinearRelation;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng, n: usize) -> DVector<f64> {
    DVector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

/// `(x, x*)` pairs spanning the graph, read off column by column.
pub fn graph_generators(a: &LinearRelation) -> Vec<(DVector<f64>, DVector<f64>)> {
    let n = a.n();
    let basis = a.graph().basis();
    (0..basis.ncols())
        .map(|j| {
            let col = basis.column(j);
            (col.rows(0, n).into_owned(), col.rows(n, n).into_owned())
        })
        .collect()
}

/// Random point of the graph: a Gaussian combination of the generators.
pub fn graph_point(rng: &mut impl Rng, a: &LinearRelation) -> (DVector<f64>, DVector<f64>) {
    let n = a.n();
    let mut x = DVector::zeros(n);
    let mut xs = DVector::zeros(n);
    for (g, gs) in graph_generators(a) {
        let c: f64 = rng.sample(StandardNormal);
        x += g * c;
        xs += gs * c;
    }
    (x, xs)
}

fn coupling(
    gens: &[(DVector<f64>, DVector<f64>)],
    x: &DVector<f64>,
    xstar: &DVector<f64>,
    c: &[f64],
) -> f64 {
    let n = x.len();
    let mut a = DVector::zeros(n);
    let mut astar = DVector::zeros(n);
    for ((g, gs), ci) in gens.iter().zip(c) {
        a += g * *ci;
        astar += gs * *ci;
    }
    x.dot(&astar) + a.dot(xstar) - a.dot(&astar)
}

/// Sampled maximum of `⟨x, a*⟩ + ⟨a, x*⟩ − ⟨a, a*⟩` over graph points
/// `(a, a*)`: `samples` random points with magnitudes spread over
/// `10^-2 .. 10^2`, then the best one polished by parabolic line searches
/// along coordinate and random directions. Uses function values only.
pub fn brute_force_fitzpatrick(
    rng: &mut impl Rng,
    a: &LinearRelation,
    x: &DVector<f64>,
    xstar: &DVector<f64>,
    samples: usize,
) -> f64 {
    let gens = graph_generators(a);
    let k = gens.len();
    if k == 0 {
        return 0.0;
    }
    let f = |c: &[f64]| coupling(&gens, x, xstar, c);
    let mut best = vec![0.0; k];
    let mut best_val = 0.0;
    let mut c = vec![0.0; k];
    for _ in 0..samples {
        let dir = gaussian(rng, k).normalize();
        let mag = 10f64.powf(rng.random_range(-2.0..2.0));
        for i in 0..k {
            c[i] = dir[i] * mag;
        }
        let v = f(&c);
        if v > best_val {
            best_val = v;
            best.copy_from_slice(&c);
        }
    }

    let mut dir = vec![0.0; k];
    let mut trial = vec![0.0; k];
    for _sweep in 0..20_000 {
        let before = best_val;
        for d in 0..=k {
            if d < k {
                dir.iter_mut().for_each(|v| *v = 0.0);
                dir[d] = 1.0;
            } else {
                let r = gaussian(rng, k).normalize();
                dir.copy_from_slice(r.as_slice());
            }
            let h = 1.0 + best.iter().map(|v| v * v).sum::<f64>().sqrt();
            for i in 0..k {
                trial[i] = best[i] + h * dir[i];
            }
            let fp = f(&trial);
            for i in 0..k {
                trial[i] = best[i] - h * dir[i];
            }
            let fm = f(&trial);
            let curvature = (fp + fm - 2.0 * best_val) / (h * h);
            let slope = (fp - fm) / (2.0 * h);
            if curvature < -1e-9 {
                let t = -slope / curvature;
                for i in 0..k {
                    trial[i] = best[i] + t * dir[i];
                }
                let v = f(&trial);
                if v > best_val {
                    best_val = v;
                    best.copy_from_slice(&trial);
                }
            }
        }
        if best_val - before <= 1e-14 * (1.0 + best_val.abs()) {
            break;
        }
    }
    best_val
}

pub fn matrix_scale(m: &DMatrix<f64>) -> f64 {
    1.0 + m.norm()
}
