mod common;

use monofitz::classify::{cocoercivity_modulus, is_paramonotone, is_rectangular};
use monofitz::nonexpansive::{cyclic_shift, displacement, nonexpansiveness_class, resolvent};
use monofitz::random::{random_monotone_matrix, random_nonexpansive, random_orthogonal};
use monofitz::relation::LinearRelation;
use monofitz::Error;
use nalgebra::DMatrix;
use rand::Rng;

const TOL: f64 = 1e-9;

#[test]
fn displacements_of_nonexpansive_maps() {
    let mut g = common::rng(51);
    for _ in 0..200 {
        let n = g.random_range(1..=6);
        let t = random_nonexpansive(&mut g, n);
        let d = displacement(&t, TOL).unwrap();
        let a = LinearRelation::from_matrix(&d, TOL).unwrap();
        assert!(a.is_maximally_monotone());
        assert!(is_rectangular(&a).unwrap().holds);
        assert!(is_paramonotone(&a).unwrap().holds);
        assert!(cocoercivity_modulus(&d, TOL).unwrap().to_f64() >= 0.5 - 1e-8);
    }
}

#[test]
fn isometries_are_sharp() {
    let mut g = common::rng(52);
    for _ in 0..100 {
        let n = g.random_range(2..=6);
        let q = random_orthogonal(&mut g, n);
        let beta = cocoercivity_modulus(&displacement(&q, TOL).unwrap(), TOL).unwrap().to_f64();
        assert!((beta - 0.5).abs() < 1e-9, "{beta}");
    }
}

#[test]
fn cyclic_shifts() {
    for m in 1..=8 {
        for d in 1..=4 {
            let r = cyclic_shift(m, d).unwrap();
            assert_eq!(r.nrows(), m * d);
            assert!((r.transpose() * &r - DMatrix::identity(m * d, m * d)).amax() == 0.0);
            let a = LinearRelation::from_matrix(&displacement(&r, TOL).unwrap(), TOL).unwrap();
            assert!(is_rectangular(&a).unwrap().holds);
            assert!(is_paramonotone(&a).unwrap().holds);
        }
    }
    assert!(cyclic_shift(0, 2).is_err());
}

#[test]
fn resolvents_of_a_relation_and_its_inverse_sum_to_identity() {
    let mut g = common::rng(53);
    for _ in 0..200 {
        let n = g.random_range(1..=6);
        let m = random_monotone_matrix(&mut g, n);
        let a = LinearRelation::from_matrix(&m, TOL).unwrap();
        let j = resolvent(&a).to_matrix().unwrap();
        let k = resolvent(&a.inverse()).to_matrix().unwrap();
        assert!((&j + &k - DMatrix::identity(n, n)).amax() < 1e-8, "{}", &j + &k);
        let class = nonexpansiveness_class(&j, TOL).unwrap();
        assert!(class.nonexpansive && class.firmly_nonexpansive);
    }
}

#[test]
fn expansive_maps_are_rejected() {
    let t = DMatrix::from_diagonal_element(2, 2, 1.5);
    assert!(matches!(displacement(&t, TOL), Err(Error::NotNonexpansive { .. })));
    let class = nonexpansiveness_class(&t, TOL).unwrap();
    assert!(!class.nonexpansive && !class.firmly_nonexpansive);
    let reflection = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&[1.0, -1.0]));
    let class = nonexpansiveness_class(&reflection, TOL).unwrap();
    assert!(class.nonexpansive && !class.firmly_nonexpansive);
}
