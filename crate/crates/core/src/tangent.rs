//! The tangent Lie algebra `𝔤 ⊕ 𝔤` with bracket
//! `[(X₁,X₂),(Y₁,Y₂)] = ([X₁,Y₁], [X₁,Y₂] + [X₂,Y₁])`, complete and vertical
//! lifts, and iterated towers.
//!
//! The basis of the total algebra is ordered `e_1^c, …, e_n^c, e_1^v, …, e_n^v`.

use num_traits::Zero;

use crate::algebra::{Element, LieAlgebra};
use crate::checks::check_jacobi;
use crate::error::{Error, Result};
use crate::scalar::{Field, Rational};

/// Default bound on the dimension of any tower level.
pub const DEFAULT_DIMENSION_CAP: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct TangentAlgebra {
    base: LieAlgebra,
    total: LieAlgebra,
}

impl TangentAlgebra {
    pub fn base(&self) -> &LieAlgebra {
        &self.base
    }

    pub fn total(&self) -> &LieAlgebra {
        &self.total
    }

    /// Dimension of the base algebra.
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Index of `e_i^c` in the total basis.
    pub fn complete_index(&self, i: usize) -> usize {
        i
    }

    /// Index of `e_i^v` in the total basis.
    pub fn vertical_index(&self, i: usize) -> usize {
        self.base.dim() + i
    }

    /// `X^c = (X, 0)`.
    pub fn complete_lift<F: Field>(&self, x: &Element<F>) -> Result<Element<F>> {
        self.base.check_element(x)?;
        let mut coords = x.coords().to_vec();
        coords.resize(2 * self.base.dim(), F::zero());
        Ok(Element::new(coords))
    }

    /// `X^v = (0, X)`.
    pub fn vertical_lift<F: Field>(&self, x: &Element<F>) -> Result<Element<F>> {
        self.base.check_element(x)?;
        let mut coords = vec![F::zero(); self.base.dim()];
        coords.extend(x.coords().iter().cloned());
        Ok(Element::new(coords))
    }

    /// Splits a total-algebra element into its complete and vertical parts.
    pub fn split<F: Field>(&self, x: &Element<F>) -> Result<(Element<F>, Element<F>)> {
        self.total.check_element(x)?;
        let n = self.base.dim();
        Ok((
            Element::new(x.coords()[..n].to_vec()),
            Element::new(x.coords()[n..].to_vec()),
        ))
    }
}

/// Builds the tangent algebra of `g`; rejects `g` if the Jacobi identity
/// fails.
pub fn tangent_algebra(g: &LieAlgebra) -> Result<TangentAlgebra> {
    let jac = check_jacobi(g);
    if !jac.passed {
        let labels = jac.certificate.map(|c| c.labels).unwrap_or_default();
        let mut triple = [0; 3];
        triple.copy_from_slice(&labels[..3]);
        return Err(Error::JacobiFailure { triple });
    }
    Ok(tangent_algebra_unchecked(g))
}

pub(crate) fn tangent_algebra_unchecked(g: &LieAlgebra) -> TangentAlgebra {
    let n = g.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let b = g.basis_bracket(i, j);
            if b.is_empty() {
                continue;
            }
            // [e_i^c, e_j^c] = [e_i, e_j]^c
            if i < j {
                entries.push((i, j, b.to_vec()));
            }
            // [e_i^c, e_j^v] = [e_i, e_j]^v
            let lifted: Vec<(usize, Rational)> = b.iter().map(|(k, c)| (n + k, c.clone())).collect();
            entries.push((i, n + j, lifted));
        }
    }
    let total = LieAlgebra::from_brackets(format!("T({})", g.name()), 2 * n, entries)
        .expect("lifted table is well formed");
    TangentAlgebra {
        base: g.clone(),
        total,
    }
}

/// The chain `T g, T² g, …, T^k g`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tower {
    levels: Vec<TangentAlgebra>,
}

impl Tower {
    /// Number of levels `k`.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Level `l` (1-based): `T^l g` as the tangent algebra of `T^{l-1} g`.
    pub fn level(&self, l: usize) -> &TangentAlgebra {
        &self.levels[l - 1]
    }

    pub fn levels(&self) -> &[TangentAlgebra] {
        &self.levels
    }

    pub fn top(&self) -> &TangentAlgebra {
        self.levels.last().expect("tower has at least one level")
    }
}

/// Iterates [`tangent_algebra`] `k` times with the default dimension cap.
pub fn tower(g: &LieAlgebra, k: usize) -> Result<Tower> {
    tower_with_cap(g, k, DEFAULT_DIMENSION_CAP)
}

pub fn tower_with_cap(g: &LieAlgebra, k: usize, cap: usize) -> Result<Tower> {
    if k == 0 {
        return Err(Error::InvalidInput("tower height must be at least 1".into()));
    }
    for level in 1..=k {
        let dim = g.dim().checked_shl(level as u32).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(Error::DimensionCap { level, dim, cap });
        }
    }
    // Jacobi on the base implies Jacobi on every level.
    let first = tangent_algebra(g)?;
    let mut levels = vec![first];
    for _ in 1..k {
        let prev = levels.last().expect("nonempty").total().clone();
        levels.push(tangent_algebra_unchecked(&prev));
    }
    Ok(Tower { levels })
}

/// Whether `x` lies in the vertical subspace (complete part zero).
pub fn is_vertical<F: Field>(tg: &TangentAlgebra, x: &Element<F>) -> bool {
    x.coords()[..tg.base_dim()].iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    #[test]
    fn so3_tangent_brackets() {
        let tg = tangent_algebra(&catalog::so3()).unwrap();
        let t = tg.total();
        assert_eq!(t.dim(), 6);
        // [e1^c, e2^v] = -e3^v
        assert_eq!(t.bracket(&t.basis(0), &t.basis(4)).unwrap(), -t.basis::<Rational>(5));
        // [e1^c, e2^c] = -e3^c
        assert_eq!(t.bracket(&t.basis(0), &t.basis(1)).unwrap(), -t.basis::<Rational>(2));
        // [e1^v, e2^v] = 0
        assert!(t.bracket::<Rational>(&t.basis(3), &t.basis(4)).unwrap().is_zero());
        assert!(check_jacobi(t).passed);
    }

    #[test]
    fn abelian_line_tangent() {
        let tg = tangent_algebra(&LieAlgebra::abelian(1)).unwrap();
        assert_eq!(tg.total().dim(), 2);
        assert!(tg.total().is_abelian());
    }

    #[test]
    fn u3_vertical_brackets_vanish() {
        let tg = tangent_algebra(&catalog::u3()).unwrap();
        let t = tg.total();
        assert_eq!(t.dim(), 18);
        assert!(t.bracket::<Rational>(&t.basis(tg.vertical_index(3)), &t.basis(tg.vertical_index(6))).unwrap().is_zero());
        // [e4^c, e7^v] = (2e1 - 2e2)^v
        let b = t.bracket::<Rational>(&t.basis(3), &t.basis(tg.vertical_index(6))).unwrap();
        let mut expected = vec![int(0); 18];
        expected[9] = int(2);
        expected[10] = int(-2);
        assert_eq!(b.into_coords(), expected);
    }

    #[test]
    fn lifts() {
        let tg = tangent_algebra(&catalog::so3()).unwrap();
        let e2: Element = tg.base().basis(1);
        let c: Vec<i64> = vec![0, 1, 0, 0, 0, 0];
        let v: Vec<i64> = vec![0, 0, 0, 0, 1, 0];
        assert_eq!(tg.complete_lift(&e2).unwrap().into_coords(), c.into_iter().map(int).collect::<Vec<_>>());
        assert_eq!(tg.vertical_lift(&e2).unwrap().into_coords(), v.into_iter().map(int).collect::<Vec<_>>());
        assert!(tg.complete_lift(&Element::<Rational>::zero(4)).is_err());
    }

    #[test]
    fn corrupted_base_rejected() {
        assert!(matches!(
            tangent_algebra(&catalog::so3_corrupted()),
            Err(Error::JacobiFailure { triple: [1, 2, 3] })
        ));
    }

    #[test]
    fn towers() {
        let t = tower(&catalog::so3(), 2).unwrap();
        assert_eq!(t.height(), 2);
        assert_eq!(t.level(1), &tangent_algebra(&catalog::so3()).unwrap());
        assert_eq!(t.top().total().dim(), 12);
        assert!(check_jacobi(t.top().total()).passed);
        assert!(matches!(tower(&catalog::u3(), 7), Err(Error::DimensionCap { level: 7, .. })));
        assert!(tower_with_cap(&catalog::so3(), 2, 12).is_ok());
        assert!(tower(&catalog::so3(), 0).is_err());
    }
}
