//! Finite-dimensional real Lie algebras given by exact structure constants.
//!
//! Indices in the Rust API are 0-based. Everything user facing (files,
//! certificates, rendered output) uses 1-based basis labels.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, GaussianRational, Rational};

/// Coordinates of a Lie algebra element in the standard basis.
///
/// `Element<Rational>` lives in the real algebra, `Element<GaussianRational>`
/// in its complexification.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element<F = Rational> {
    coords: Vec<F>,
}

impl<F: Field> Element<F> {
    pub fn new(coords: Vec<F>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![F::zero(); dim])
    }

    /// The basis vector `e_{index+1}`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[index] = F::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<F> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(F::is_zero)
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coords.iter().map(|x| x.clone() * s.clone()).collect())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Self::new(self.coords.iter().map(|x| x.scale(q)).collect())
    }

    /// Indices and values of the nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, &F)> {
        self.coords.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    /// Lowest index with a nonzero coordinate.
    pub fn leading_index(&self) -> Option<usize> {
        self.coords.iter().position(|x| !x.is_zero())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.clone() + other.clone())
    }
}

impl Element<Rational> {
    /// Embeds into the complexification.
    pub fn complexify(&self) -> Element<GaussianRational> {
        Element::new(self.coords.iter().cloned().map(GaussianRational::from).collect())
    }
}

impl Element<GaussianRational> {
    pub fn conj(&self) -> Self {
        Self::new(self.coords.iter().map(GaussianRational::conj).collect())
    }

    /// Real part `X` of `X + iY`.
    pub fn real_part(&self) -> Element<Rational> {
        Element::new(self.coords.iter().map(|z| z.re.clone()).collect())
    }

    /// Imaginary part `Y` of `X + iY`.
    pub fn imag_part(&self) -> Element<Rational> {
        Element::new(self.coords.iter().map(|z| z.im.clone()).collect())
    }

    pub fn is_real(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_real)
    }
}

impl<F: Field> Add for Element<F> {
    type Output = Self;
    /// Panics on dimension mismatch; see [`Element::try_add`].
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Self::new(self.coords.into_iter().zip(rhs.coords).map(|(a, b)| a + b).collect())
    }
}

impl<F: Field> Sub for Element<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        Self::new(self.coords.into_iter().zip(rhs.coords).map(|(a, b)| a - b).collect())
    }
}

impl<F: Field> Neg for Element<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coords.into_iter().map(|a| -a).collect())
    }
}

impl<F: Field> Element<F> {
    /// Renders as a combination of basis labels, e.g. `2e_1 - 2e_2` or
    /// `(1+i)e_3`; `label` maps a 0-based index to its name.
    pub fn render(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (k, c) in self.support() {
            let s = c.to_string();
            let simple = !s[1..].contains(['+', '-']);
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if simple => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            let coeff = match body.as_str() {
                "1" => String::new(),
                b if simple => b.to_string(),
                b => format!("({b})"),
            };
            out.push_str(match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            out.push_str(&coeff);
            out.push_str(&label(k));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|k| format!("e_{}", k + 1)))
    }
}

impl<F: Field> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

/// A real Lie algebra with basis `e_1, …, e_n` and exact structure constants
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
///
/// Only nonzero constants are stored. Antisymmetry is enforced at
/// construction; the Jacobi identity is checked separately by
/// [`check_jacobi`](crate::checks::check_jacobi).
#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    // table[i * dim + j] = sparse coordinates of [e_i, e_j]
    table: Vec<Vec<(usize, Rational)>>,
}

/// One bracket entry `[e_i, e_j] = Σ coeff·e_k`, 0-based.
pub type BracketEntry = (usize, usize, Vec<(usize, Rational)>);

impl LieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j]` with `i < j` (0-based);
    /// the antisymmetric completion is applied.
    pub fn from_brackets(
        name: impl Into<String>,
        dim: usize,
        brackets: impl IntoIterator<Item = BracketEntry>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        let mut table = vec![Vec::new(); dim * dim];
        let mut seen = vec![false; dim * dim];
        for (i, j, coeffs) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket [e_{}, e_{}] out of range for dimension {dim}",
                    i + 1,
                    j + 1
                )));
            }
            if i >= j {
                return Err(Error::InvalidInput(format!(
                    "bracket [e_{}, e_{}] must have i < j",
                    i + 1,
                    j + 1
                )));
            }
            if std::mem::replace(&mut seen[i * dim + j], true) {
                return Err(Error::InvalidInput(format!(
                    "duplicate bracket [e_{}, e_{}]",
                    i + 1,
                    j + 1
                )));
            }
            let mut dense = vec![Rational::zero(); dim];
            for (k, c) in coeffs {
                if k >= dim {
                    return Err(Error::InvalidInput(format!(
                        "coefficient index e_{} out of range in [e_{}, e_{}]",
                        k + 1,
                        i + 1,
                        j + 1
                    )));
                }
                dense[k] += c;
            }
            let sparse: Vec<(usize, Rational)> = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            table[j * dim + i] = sparse.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[i * dim + j] = sparse;
        }
        Ok(Self {
            name: name.into(),
            dim,
            table,
        })
    }

    /// Builds an algebra from a dense tensor `c(i, j, k)` (0-based), which
    /// must be antisymmetric in `(i, j)`.
    pub fn from_structure_tensor(
        name: impl Into<String>,
        dim: usize,
        c: impl Fn(usize, usize, usize) -> Rational,
    ) -> Result<Self> {
        let mut entries = Vec::new();
        for i in 0..dim {
            for k in 0..dim {
                if !c(i, i, k).is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "structure tensor not antisymmetric: c[{0}][{0}][{1}] != 0",
                        i + 1,
                        k + 1
                    )));
                }
            }
            for j in i + 1..dim {
                let mut coeffs = Vec::new();
                for k in 0..dim {
                    let a = c(i, j, k);
                    if a != -c(j, i, k) {
                        return Err(Error::InvalidInput(format!(
                            "structure tensor not antisymmetric at ({}, {}, {})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                    if !a.is_zero() {
                        coeffs.push((k, a));
                    }
                }
                if !coeffs.is_empty() {
                    entries.push((i, j, coeffs));
                }
            }
        }
        Self::from_brackets(name, dim, entries)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::from_brackets(format!("R^{dim}"), dim, Vec::new()).expect("valid abelian algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sparse coordinates of `[e_i, e_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    /// `c[i][j][k]`, 0-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.basis_bracket(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &[(usize, Rational)])> {
        let n = self.dim;
        (0..n)
            .flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(move |(i, j)| {
                let b = self.basis_bracket(i, j);
                (!b.is_empty()).then_some((i, j, b))
            })
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(Vec::is_empty)
    }

    pub fn basis<F: Field>(&self, index: usize) -> Element<F> {
        Element::basis(self.dim, index)
    }

    pub(crate) fn check_element<F: Field>(&self, x: &Element<F>) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// `[x, y] = Σ x_i y_j [e_i, e_j]`.
    pub fn bracket<F: Field>(&self, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked<F: Field>(&self, x: &Element<F>, y: &Element<F>) -> Element<F> {
        let mut out = vec![F::zero(); self.dim];
        let ys: Vec<(usize, &F)> = y.support().collect();
        for (i, xi) in x.support() {
            for &(j, yj) in &ys {
                let b = self.basis_bracket(i, j);
                if b.is_empty() {
                    continue;
                }
                let w = xi.clone() * yj.clone();
                for (k, c) in b {
                    out[*k] = out[*k].clone() + w.scale(c);
                }
            }
        }
        Element::new(out)
    }

    /// Matrix of `ad_h`; column `j` holds the coordinates of `[h, e_j]`.
    pub fn ad_matrix<F: Field>(&self, h: &Element<F>) -> Result<Matrix<F>> {
        self.check_element(h)?;
        let n = self.dim;
        let mut m = Matrix::<F>::zeros(n, n);
        for (i, hi) in h.support() {
            for j in 0..n {
                for (k, c) in self.basis_bracket(i, j) {
                    m[(*k, j)] = m[(*k, j)].clone() + hi.scale(c);
                }
            }
        }
        Ok(m)
    }

    /// `B(x, y) = tr(ad_x ad_y)`.
    pub fn killing_form(&self, x: &Element, y: &Element) -> Result<Rational> {
        let ax = self.ad_matrix(x)?;
        let ay = self.ad_matrix(y)?;
        Ok(ax.mul(&ay).trace())
    }

    /// Gram matrix of the Killing form on the standard basis.
    pub fn killing_matrix(&self) -> Matrix<Rational> {
        let n = self.dim;
        let ads: Vec<Matrix<Rational>> = (0..n)
            .map(|i| self.ad_matrix(&self.basis(i)).expect("basis element"))
            .collect();
        let mut k = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = v.clone();
                k[(j, i)] = v;
            }
        }
        k
    }

    /// Re-expresses the algebra in the basis `f_j = Σ_a p[a][j] e_a`
    /// (columns of `p`). The result is isomorphic to `self`.
    pub fn change_basis(&self, p: &Matrix<Rational>) -> Result<Self> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.rows(),
            });
        }
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::SingularBasis("change-of-basis matrix is singular".into()))?;
        let cols: Vec<Element> = (0..n).map(|j| Element::new(p.column(j))).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let b = self.bracket_unchecked(&cols[i], &cols[j]);
                let coords = pinv.mul_vec(b.coords());
                let sparse: Vec<(usize, Rational)> = coords
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                if !sparse.is_empty() {
                    entries.push((i, j, sparse));
                }
            }
        }
        Self::from_brackets(self.name.clone(), n, entries)
    }

    /// `self ⊕ other` with `other`'s basis appended after `self`'s.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut entries = Vec::new();
        for (i, j, b) in self.nonzero_brackets() {
            entries.push((i, j, b.to_vec()));
        }
        for (i, j, b) in other.nonzero_brackets() {
            entries.push((n + i, n + j, b.iter().map(|(k, c)| (n + k, c.clone())).collect()));
        }
        Self::from_brackets(format!("{}+{}", self.name, other.name), n + other.dim, entries)
            .expect("direct sum of valid algebras")
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {}", self.name, self.dim)?;
        for (i, j, b) in self.nonzero_brackets() {
            let e = {
                let mut v = vec![Rational::zero(); self.dim];
                for (k, c) in b {
                    v[*k] = c.clone();
                }
                Element::new(v)
            };
            write!(f, ", [e_{},e_{}]={e}", i + 1, j + 1)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    fn e(n: usize, i: usize) -> Element {
        Element::basis(n, i - 1)
    }

    fn vec_of(v: &[i64]) -> Element {
        Element::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn so3_brackets() {
        let g = catalog::so3();
        assert_eq!(g.bracket(&e(3, 1), &e(3, 2)).unwrap(), -e(3, 3));
        assert_eq!(g.bracket(&e(3, 2), &e(3, 1)).unwrap(), e(3, 3));
        let x = vec_of(&[1, -2, 5]);
        assert!(g.bracket(&x, &x).unwrap().is_zero());
    }

    #[test]
    fn u3_bracket_e4_e7() {
        let g = catalog::u3();
        assert_eq!(g.bracket(&e(9, 4), &e(9, 7)).unwrap(), vec_of(&[2, -2, 0, 0, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let g = catalog::so3();
        assert!(matches!(
            g.bracket(&e(3, 1), &e(4, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ad_matrix_so3_e1() {
        let g = catalog::so3();
        let ad = g.ad_matrix(&e(3, 1)).unwrap();
        assert_eq!(ad.column(0), vec![int(0); 3]);
        assert_eq!(ad.column(1), vec_of(&[0, 0, -1]).into_coords());
        assert_eq!(ad.column(2), vec_of(&[0, 1, 0]).into_coords());
        assert!(g.ad_matrix(&Element::<Rational>::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn ad_matrix_u3_e1() {
        let g = catalog::u3();
        let ad = g.ad_matrix(&e(9, 1)).unwrap();
        assert_eq!(ad.column(3), e(9, 7).into_coords());
        assert_eq!(ad.column(6), (-e(9, 4)).into_coords());
        assert_eq!(ad.column(4), e(9, 8).into_coords());
        assert_eq!(ad.column(7), (-e(9, 5)).into_coords());
        for j in [0, 1, 2, 5, 8] {
            assert!(ad.column(j).iter().all(Zero::is_zero), "column {j}");
        }
    }

    #[test]
    fn killing_form_values() {
        let g = catalog::so3();
        // Oracle: ad_{e1} squared is diag(0, -1, -1).
        let ad = g.ad_matrix(&e(3, 1)).unwrap();
        let trace_oracle: Rational = (0..3).map(|i| ad.mul(&ad)[(i, i)].clone()).sum();
        assert_eq!(trace_oracle, int(-2));
        assert_eq!(g.killing_form(&e(3, 1), &e(3, 1)).unwrap(), int(-2));
        assert_eq!(g.killing_form(&e(3, 1), &e(3, 2)).unwrap(), int(0));
        let a = LieAlgebra::abelian(4);
        assert!(a.killing_matrix().is_zero());
    }

    #[test]
    fn construction_rejects_bad_tables() {
        let one = || vec![(0, int(1))];
        assert!(LieAlgebra::from_brackets("x", 2, vec![(1, 0, one())]).is_err());
        assert!(LieAlgebra::from_brackets("x", 2, vec![(0, 2, one())]).is_err());
        assert!(LieAlgebra::from_brackets("x", 2, vec![(0, 1, one()), (0, 1, one())]).is_err());
        assert!(LieAlgebra::from_brackets("x", 2, vec![(0, 1, vec![(5, int(1))])]).is_err());
        assert!(LieAlgebra::from_brackets("x", 0, Vec::new()).is_err());
    }

    #[test]
    fn change_basis_preserves_structure() {
        let g = catalog::so3();
        let p = Matrix::from_rows(vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(2)],
            vec![int(0), int(0), int(1)],
        ]);
        let h = g.change_basis(&p).unwrap();
        // Brackets of the new basis vectors, mapped back, agree with g.
        for i in 0..3 {
            for j in 0..3 {
                let lhs = p.mul_vec(h.bracket(&e(3, i + 1), &e(3, j + 1)).unwrap().coords());
                let fi = Element::new(p.column(i));
                let fj = Element::new(p.column(j));
                assert_eq!(lhs, g.bracket(&fi, &fj).unwrap().into_coords());
            }
        }
    }

    #[test]
    fn element_display() {
        assert_eq!(vec_of(&[2, -2, 0]).to_string(), "2e_1 - 2e_2");
        assert_eq!(vec_of(&[0, 0, 0]).to_string(), "0");
        let z = Element::new(vec![
            GaussianRational::from(0),
            GaussianRational::from(1),
            GaussianRational::i(),
        ]);
        assert_eq!(z.to_string(), "e_2 + ie_3");
        assert_eq!(z.conj().to_string(), "e_2 - ie_3");
    }
}
