//! Structural certificates on a Lie algebra: Jacobi identity, compact type,
//! centralizers.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{Element, LieAlgebra};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::report::{Certificate, VerificationItem};
use crate::scalar::Rational;

pub const JACOBI: &str = "jacobi";
pub const COMPACT_TYPE: &str = "compact_type";

/// Jacobi residual `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
pub fn jacobi_residual(g: &LieAlgebra, i: usize, j: usize, k: usize) -> Element {
    let n = g.dim();
    let e = |a: usize| -> Element { Element::basis(n, a) };
    let t1 = g.bracket_unchecked(&g.bracket_unchecked(&e(i), &e(j)), &e(k));
    let t2 = g.bracket_unchecked(&g.bracket_unchecked(&e(j), &e(k)), &e(i));
    let t3 = g.bracket_unchecked(&g.bracket_unchecked(&e(k), &e(i)), &e(j));
    t1 + t2 + t3
}

/// Scans all triples `i < j < k`; the certificate is the lexicographically
/// first failing triple and its residual.
pub fn check_jacobi(g: &LieAlgebra) -> VerificationItem {
    let n = g.dim();
    let triples: Vec<(usize, usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .collect();
    let total = triples.len();
    let first_failure = triples
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let r = jacobi_residual(g, i, j, k);
            (!r.is_zero()).then_some(((i, j, k), r))
        })
        .min_by_key(|(t, _)| *t);
    match first_failure {
        None => VerificationItem::pass(JACOBI, format!("{total}/{total} triples")),
        Some(((i, j, k), r)) => VerificationItem::fail(
            JACOBI,
            format!("triple ({}, {}, {}) has residual {r}", i + 1, j + 1, k + 1),
            Certificate::new(vec![i + 1, j + 1, k + 1], r.into_coords()),
        ),
    }
}

fn form(k: &Matrix<Rational>, u: &[Rational], w: &[Rational]) -> Rational {
    let kw = k.mul_vec(w);
    u.iter().zip(&kw).map(|(a, b)| a * b).sum()
}

/// Searches for `v` with `B(v, v) > 0` by Gram-Schmidt with respect to the
/// symmetric form `k`. `None` means `k` is negative semidefinite.
pub fn positive_vector(k: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let n = k.rows();
    let mut remaining: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    while !remaining.is_empty() {
        let q: Vec<Rational> = remaining.iter().map(|u| form(k, u, u)).collect();
        if let Some(p) = q.iter().position(Signed::is_positive) {
            return Some(remaining.swap_remove(p));
        }
        let Some(p) = q.iter().position(Signed::is_negative) else {
            // Every remaining vector is isotropic; a nonzero pairing between
            // two of them gives B(u + s·w, u + s·w) = 2|B(u, w)| > 0.
            for a in 0..remaining.len() {
                for b in a + 1..remaining.len() {
                    let c = form(k, &remaining[a], &remaining[b]);
                    if !c.is_zero() {
                        let s = c.signum();
                        return Some(
                            remaining[a]
                                .iter()
                                .zip(&remaining[b])
                                .map(|(x, y)| x + &s * y)
                                .collect(),
                        );
                    }
                }
            }
            return None;
        };
        let pivot = remaining.swap_remove(p);
        let qp = form(k, &pivot, &pivot);
        for w in &mut remaining {
            let c = form(k, &pivot, w) / &qp;
            if !c.is_zero() {
                for (x, y) in w.iter_mut().zip(&pivot) {
                    *x -= &c * y;
                }
            }
        }
    }
    None
}

/// Basis of the center `{x : [x, e_j] = 0 ∀ j}`.
pub fn center(g: &LieAlgebra) -> Vec<Element> {
    let basis: Vec<Element> = (0..g.dim()).map(|i| g.basis(i)).collect();
    centralizer(g, &basis).expect("basis elements have the right dimension")
}

/// Compact-type certificate: the Killing form is negative semidefinite and
/// its radical equals the center.
pub fn check_compact_type(g: &LieAlgebra) -> VerificationItem {
    let k = g.killing_matrix();
    if let Some(v) = positive_vector(&k) {
        let b = form(&k, &v, &v);
        let v = Element::new(v);
        return VerificationItem::fail(
            COMPACT_TYPE,
            format!(
                "Killing form is not negative semidefinite: B(v, v) = {} > 0 for v = {v}",
                crate::scalar::format_rational(&b)
            ),
            Certificate::new(Vec::new(), v.into_coords()),
        );
    }
    let radical = k.kernel();
    for r in radical.iter() {
        let r = Element::new(r.clone());
        let moved = (0..g.dim()).find(|&j| !g.bracket_unchecked(&r, &g.basis(j)).is_zero());
        if let Some(j) = moved {
            let residual = g.bracket_unchecked(&r, &g.basis(j));
            return VerificationItem::fail(
                COMPACT_TYPE,
                format!(
                    "Killing radical vector {r} is not central: [{r}, e_{}] = {residual}",
                    j + 1
                ),
                Certificate::new(Vec::new(), r.into_coords()),
            );
        }
    }
    VerificationItem::pass(
        COMPACT_TYPE,
        format!(
            "Killing form negative semidefinite of rank {}; radical = center (dim {})",
            g.dim() - radical.len(),
            radical.len()
        ),
    )
}

/// Exact basis of `{x : [x, s] = 0 ∀ s ∈ set}`, computed as the kernel of the
/// stacked `ad_s` matrices.
pub fn centralizer(g: &LieAlgebra, set: &[Element]) -> Result<Vec<Element>> {
    let n = g.dim();
    let mut stacked = Matrix::<Rational>::zeros(0, n);
    for s in set {
        stacked = stacked.vstack(&g.ad_matrix(s)?);
    }
    Ok(stacked.kernel().into_iter().map(Element::new).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::linalg::in_span;
    use crate::scalar::int;

    #[test]
    fn jacobi_on_fixtures() {
        assert!(check_jacobi(&catalog::so3()).passed);
        assert!(check_jacobi(&catalog::u3()).passed);
        assert!(check_jacobi(&catalog::filiform(3)).passed);
    }

    #[test]
    fn corrupted_so3_fails_jacobi_on_123() {
        let g = catalog::so3_corrupted();
        // Oracle: direct expansion. [[e1,e2],e3] = [e1 - e3, e3] = [e1,e3] = e2;
        // the other two cyclic terms are [-e1,e1] and [-e2,e2], both zero.
        let item = check_jacobi(&g);
        assert!(!item.passed);
        let cert = item.certificate.unwrap();
        assert_eq!(cert.labels, vec![1, 2, 3]);
        assert_eq!(cert.residual, vec![0.into(), 1.into(), 0.into()]);
        assert!(!jacobi_residual(&g, 0, 1, 2).is_zero());
    }

    #[test]
    fn sign_flipped_so3_is_still_a_lie_algebra() {
        // Oracle: each cyclic term is [e_k, e_k] = 0.
        let g = catalog::so3_sign_flipped();
        assert!(jacobi_residual(&g, 0, 1, 2).is_zero());
        assert!(check_jacobi(&g).passed);
        assert!(!check_compact_type(&g).passed);
    }

    #[test]
    fn compact_type_so3() {
        let k = catalog::so3().killing_matrix();
        assert_eq!(k, Matrix::identity(3).scale(&int(-2)));
        assert!(check_compact_type(&catalog::so3()).passed);
    }

    #[test]
    fn compact_type_u3_center() {
        let g = catalog::u3();
        let item = check_compact_type(&g);
        assert!(item.passed, "{}", item.detail);
        let z = center(&g);
        assert_eq!(z.len(), 1);
        let expected: Vec<Rational> = [1, 1, 1, 0, 0, 0, 0, 0, 0].iter().map(|&x| int(x)).collect();
        assert!(in_span(&[z[0].coords().to_vec()], &expected));
    }

    #[test]
    fn affine_line_not_compact() {
        let g = catalog::affine_line();
        assert_eq!(g.killing_form(&g.basis(0), &g.basis(0)).unwrap(), int(1));
        let item = check_compact_type(&g);
        assert!(!item.passed);
        let v = Element::new(
            item.certificate
                .unwrap()
                .residual
                .iter()
                .map(|z| z.re.clone())
                .collect(),
        );
        assert!(g.killing_form(&v, &v).unwrap() > int(0));
    }

    #[test]
    fn heisenberg_radical_not_central() {
        // Killing form vanishes identically but e1 is not central.
        let item = check_compact_type(&catalog::heisenberg());
        assert!(!item.passed);
        assert!(item.detail.contains("not central"));
    }

    #[test]
    fn isotropic_pair_witness() {
        // Hyperbolic plane: both diagonal entries zero.
        let k = Matrix::from_rows(vec![vec![int(0), int(-3)], vec![int(-3), int(0)]]);
        let v = positive_vector(&k).unwrap();
        assert!(form(&k, &v, &v) > int(0));
        assert!(positive_vector(&Matrix::identity(2).scale(&int(-1))).is_none());
    }

    #[test]
    fn centralizers() {
        let g = catalog::so3();
        let c = centralizer(&g, &[g.basis(0)]).unwrap();
        assert_eq!(c, vec![g.basis(0)]);
        assert_eq!(centralizer(&g, &[]).unwrap().len(), 3);
        let u = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| u.basis(i)).collect();
        let c = centralizer(&u, &torus).unwrap();
        assert_eq!(c, torus);
    }
}
