//! Named Lie algebras used as fixtures and test inputs.

use crate::algebra::LieAlgebra;
use crate::scalar::{int, Rational};

/// One 1-based row `(i, j, [(k, c), ...])` of a bracket table.
pub type TableRow<'a> = (usize, usize, &'a [(usize, i64)]);

/// Builds an algebra from a 1-based bracket table.
pub fn from_table(name: &str, dim: usize, table: &[TableRow<'_>]) -> LieAlgebra {
    let entries = table.iter().map(|&(i, j, coeffs)| {
        let coeffs: Vec<(usize, Rational)> = coeffs.iter().map(|&(k, c)| (k - 1, int(c))).collect();
        (i - 1, j - 1, coeffs)
    });
    LieAlgebra::from_brackets(name, dim, entries).expect("catalog table is well formed")
}

/// so(3): `[e1,e2] = -e3`, `[e1,e3] = e2`, `[e2,e3] = -e1`.
pub fn so3() -> LieAlgebra {
    from_table(
        "so(3)",
        3,
        &[(1, 2, &[(3, -1)]), (1, 3, &[(2, 1)]), (2, 3, &[(1, -1)])],
    )
}

/// so(3) with a stray `e1` component in `[e1,e2] = -e3 + e1`; violates the
/// Jacobi identity on the triple (1, 2, 3) with residual `e2`.
pub fn so3_corrupted() -> LieAlgebra {
    from_table(
        "so(3)-corrupted",
        3,
        &[(1, 2, &[(1, 1), (3, -1)]), (1, 3, &[(2, 1)]), (2, 3, &[(1, -1)])],
    )
}

/// so(3) with `c[1][2][3]` flipped to `+1`. This is still a Lie algebra
/// (isomorphic to so(2,1)) but it is not of compact type.
pub fn so3_sign_flipped() -> LieAlgebra {
    from_table(
        "so(3)-flipped",
        3,
        &[(1, 2, &[(3, 1)]), (1, 3, &[(2, 1)]), (2, 3, &[(1, -1)])],
    )
}

/// u(3) in the basis where `e1, e2, e3` span the diagonal torus.
pub fn u3() -> LieAlgebra {
    from_table(
        "u(3)",
        9,
        &[
            (1, 4, &[(7, 1)]),
            (1, 5, &[(8, 1)]),
            (1, 7, &[(4, -1)]),
            (1, 8, &[(5, -1)]),
            (2, 4, &[(7, -1)]),
            (2, 6, &[(9, 1)]),
            (2, 7, &[(4, 1)]),
            (2, 9, &[(6, -1)]),
            (3, 5, &[(8, -1)]),
            (3, 6, &[(9, -1)]),
            (3, 8, &[(5, 1)]),
            (3, 9, &[(6, 1)]),
            (4, 5, &[(6, -1)]),
            (4, 6, &[(5, 1)]),
            (4, 7, &[(1, 2), (2, -2)]),
            (4, 8, &[(9, -1)]),
            (4, 9, &[(8, 1)]),
            (5, 6, &[(4, -1)]),
            (5, 7, &[(9, -1)]),
            (5, 8, &[(1, 2), (3, -2)]),
            (5, 9, &[(7, 1)]),
            (6, 7, &[(8, -1)]),
            (6, 8, &[(7, 1)]),
            (6, 9, &[(2, 2), (3, -2)]),
            (7, 8, &[(6, -1)]),
            (7, 9, &[(5, -1)]),
            (8, 9, &[(4, -1)]),
        ],
    )
}

/// so(3) ⊕ so(3), an even-dimensional compact algebra of rank 2.
pub fn so3_so3() -> LieAlgebra {
    so3().direct_sum(&so3()).with_name("so(3)+so(3)")
}

/// The two-dimensional non-abelian algebra `[e1,e2] = e2`.
pub fn affine_line() -> LieAlgebra {
    from_table("aff(1)", 2, &[(1, 2, &[(2, 1)])])
}

/// Heisenberg algebra `[e1,e2] = e3`.
pub fn heisenberg() -> LieAlgebra {
    from_table("heis(3)", 3, &[(1, 2, &[(3, 1)])])
}

/// sl(2, R): `[h,x] = 2x`, `[h,y] = -2y`, `[x,y] = h`.
pub fn sl2() -> LieAlgebra {
    from_table(
        "sl(2,R)",
        3,
        &[(1, 2, &[(2, 2)]), (1, 3, &[(3, -2)]), (2, 3, &[(1, 1)])],
    )
}

/// Filiform algebra `[x1, xi] = x_{i+1}` for `1 < i < 2n`; admits no
/// integrable almost complex structure for `n >= 2`.
pub fn filiform(n: usize) -> LieAlgebra {
    let dim = 2 * n;
    let entries = (2..dim).map(|i| (0, i - 1, vec![(i, int(1))]));
    LieAlgebra::from_brackets(format!("filiform({dim})"), dim, entries).expect("valid table")
}

/// Small algebras of dimension ≤ 6 used by randomized property checks.
pub fn small_algebras() -> Vec<LieAlgebra> {
    vec![
        LieAlgebra::abelian(2),
        LieAlgebra::abelian(4),
        so3(),
        affine_line(),
        heisenberg(),
        sl2(),
        so3().direct_sum(&LieAlgebra::abelian(1)),
        affine_line().direct_sum(&affine_line()),
        heisenberg().direct_sum(&LieAlgebra::abelian(1)),
        sl2().direct_sum(&affine_line()),
        so3_so3(),
        filiform(2),
        filiform(3),
    ]
}

/// The subset of [`small_algebras`] with dimension exactly 4.
pub fn four_dimensional() -> Vec<LieAlgebra> {
    small_algebras().into_iter().filter(|g| g.dim() == 4).collect()
}
