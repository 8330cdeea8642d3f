#![allow(dead_code)]

use proptest::prelude::*;
use samelson_core::catalog;
use samelson_core::scalar::{rat, GaussianRational, Rational};
use samelson_core::{Element, LieAlgebra, Matrix};

/// Rationals with small numerator and denominator.
pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_gaussian() -> impl Strategy<Value = GaussianRational> {
    (small_rational(), small_rational())
        .prop_filter("nonzero", |(a, b)| a != &rat(0, 1) || b != &rat(0, 1))
        .prop_map(|(re, im)| GaussianRational::new(re, im))
}

pub fn element(n: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec(small_rational(), n).prop_map(Element::new)
}

/// `L·U` with `L` unit lower triangular and `U` upper triangular with
/// nonzero diagonal; always invertible.
pub fn basis_change(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (
        proptest::collection::vec(small_rational(), n * n),
        proptest::collection::vec(small_rational(), n * n),
        proptest::collection::vec(nonzero_rational(), n),
    )
        .prop_map(move |(l, u, d)| {
            let mut lm = Matrix::identity(n);
            let mut um = Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if j < i {
                        lm[(i, j)] = l[i * n + j].clone();
                    } else if j > i {
                        um[(i, j)] = u[i * n + j].clone();
                    }
                }
                um[(i, i)] = d[i].clone();
            }
            lm.mul(&um)
        })
}

/// A catalog algebra of dimension at most 6 written in a random rational
/// basis.
pub fn random_algebra() -> impl Strategy<Value = LieAlgebra> {
    let algebras = catalog::small_algebras();
    (0..algebras.len())
        .prop_flat_map(move |i| {
            let g = algebras[i].clone();
            let n = g.dim();
            (Just(g), basis_change(n))
        })
        .prop_map(|(g, p)| g.change_basis(&p).expect("invertible"))
}

/// An algebra together with three random elements.
pub fn algebra_with_elements() -> impl Strategy<Value = (LieAlgebra, Element, Element, Element)> {
    random_algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), element(n), element(n), element(n))
    })
}

/// Standard `J0` on `R^{2m}` conjugated by a random invertible matrix.
pub fn random_structure_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    assert!(n.is_multiple_of(2));
    basis_change(n).prop_map(move |p| {
        let mut j0 = Matrix::zeros(n, n);
        for k in 0..n / 2 {
            j0[(2 * k + 1, 2 * k)] = rat(1, 1);
            j0[(2 * k, 2 * k + 1)] = rat(-1, 1);
        }
        p.mul(&j0).mul(&p.inverse().expect("invertible"))
    })
}

/// `Σ x_i y_j c_{ij}^k` computed directly from the structure constants.
pub fn bracket_oracle(g: &LieAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = g.dim();
    let mut out = vec![rat(0, 1); n];
    for i in 0..n {
        for j in 0..n {
            for (k, o) in out.iter_mut().enumerate() {
                *o += x[i].clone() * y[j].clone() * g.structure_constant(i, j, k);
            }
        }
    }
    out
}
