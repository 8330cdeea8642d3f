//! Samelson-type complex structures as exact rational matrices.
//!
//! * [`build_tangent_samelson`]: on `Lie(TG)`, pairs each torus complete
//!   lift with its vertical lift and acts by `+i` on every positive root
//!   space (complete and vertical). Works for compact `𝔤` of any dimension.
//! * [`build_classic_samelson`]: on an even-dimensional compact `𝔤`, pairs
//!   torus generators `(H_1,H_2), (H_3,H_4), …` and acts by `+i` on positive
//!   root spaces.
//! * [`lift_complex_structure`]: `Ĵ X^c = (JX)^c`, `Ĵ X^v = (JX)^v`.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{Element, LieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::roots::RootDatum;
use crate::scalar::{Field, Rational};
use crate::tangent::{tower_with_cap, TangentAlgebra, DEFAULT_DIMENSION_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    TangentSamelson,
    ClassicSamelson,
    PropositionLift,
    UserSupplied,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::TangentSamelson => "tangent-samelson",
            Self::ClassicSamelson => "classic-samelson",
            Self::PropositionLift => "proposition-lift",
            Self::UserSupplied => "user-supplied",
        })
    }
}

/// A linear endomorphism `J` of a real Lie algebra, meant to satisfy
/// `J² = -id`. Constructions in this module guarantee it; user-supplied
/// matrices are checked by [`verify_j_squared`](crate::verify::verify_j_squared).
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure {
    algebra: LieAlgebra,
    matrix: Matrix<Rational>,
    provenance: Provenance,
    datum: Option<RootDatum>,
}

impl ComplexStructure {
    /// Wraps a user-supplied matrix acting on coordinates of `algebra`.
    pub fn from_matrix(algebra: LieAlgebra, matrix: Matrix<Rational>) -> Result<Self> {
        let n = algebra.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        Ok(Self {
            algebra,
            matrix,
            provenance: Provenance::UserSupplied,
            datum: None,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn datum(&self) -> Option<&RootDatum> {
        self.datum.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `J x`, for real or complexified `x`.
    pub fn apply<F: Field>(&self, x: &Element<F>) -> Result<Element<F>> {
        self.algebra.check_element(x)?;
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked<F: Field>(&self, x: &Element<F>) -> Element<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for (j, xj) in x.support() {
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.matrix[(i, j)];
                if !a.is_zero() {
                    *o = o.clone() + xj.scale(a);
                }
            }
        }
        Element::new(out)
    }

    /// Whether `J² = -id` exactly.
    pub fn squares_to_minus_identity(&self) -> bool {
        self.matrix.mul(&self.matrix) == Matrix::identity(self.dim()).neg()
    }
}

fn ensure_same(a: &LieAlgebra, b: &LieAlgebra, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::AlgebraMismatch(format!(
            "{what}: {} (dim {}) vs {} (dim {})",
            a.name(),
            a.dim(),
            b.name(),
            b.dim()
        )));
    }
    Ok(())
}

/// `J = images · basis⁻¹`.
fn matrix_from_action(basis: &[Vec<Rational>], images: &[Vec<Rational>]) -> Result<Matrix<Rational>> {
    let b = Matrix::from_columns(basis);
    let inv = b
        .inverse()
        .ok_or_else(|| Error::SingularBasis("torus and root vector real parts do not form a basis".into()))?;
    Ok(Matrix::from_columns(images).mul(&inv))
}

fn neg(v: &[Rational]) -> Vec<Rational> {
    v.iter().map(|x| -x.clone()).collect()
}

/// The structure `Ĵ` on the tangent algebra determined by a root datum of
/// its base:
/// `Ĵ H_i^c = H_i^v`, `Ĵ H_i^v = -H_i^c`, and with `E_α = X_α + iY_α`,
/// `Ĵ X_α^c = -Y_α^c`, `Ĵ Y_α^c = X_α^c` (likewise on vertical lifts).
pub fn build_tangent_samelson(tg: &TangentAlgebra, datum: &RootDatum) -> Result<ComplexStructure> {
    ensure_same(datum.algebra(), tg.base(), "root datum and tangent base differ")?;
    let c = |x: &Element| tg.complete_lift(x).expect("base element").into_coords();
    let v = |x: &Element| tg.vertical_lift(x).expect("base element").into_coords();

    let mut basis = Vec::with_capacity(tg.total().dim());
    let mut images = Vec::with_capacity(tg.total().dim());
    for h in datum.torus() {
        basis.push(c(h));
        images.push(v(h));
        basis.push(v(h));
        images.push(neg(&c(h)));
    }
    for e in datum.root_vectors() {
        let (x, y) = (e.real_part(), e.imag_part());
        for lift in [&c as &dyn Fn(&Element) -> Vec<Rational>, &v] {
            basis.push(lift(&x));
            images.push(neg(&lift(&y)));
            basis.push(lift(&y));
            images.push(lift(&x));
        }
    }
    let matrix = matrix_from_action(&basis, &images)?;
    Ok(ComplexStructure {
        algebra: tg.total().clone(),
        matrix,
        provenance: Provenance::TangentSamelson,
        datum: Some(datum.clone()),
    })
}

/// Samelson's structure on an even-dimensional compact algebra.
pub fn build_classic_samelson(g: &LieAlgebra, datum: &RootDatum) -> Result<ComplexStructure> {
    ensure_same(datum.algebra(), g, "root datum and algebra differ")?;
    let k = datum.rank();
    if k % 2 == 1 {
        return Err(Error::OddTorusDimension(k));
    }
    let mut basis = Vec::with_capacity(g.dim());
    let mut images = Vec::with_capacity(g.dim());
    for pair in datum.torus().chunks(2) {
        let (h1, h2) = (pair[0].coords().to_vec(), pair[1].coords().to_vec());
        basis.push(h1.clone());
        images.push(h2.clone());
        basis.push(h2);
        images.push(neg(&h1));
    }
    for e in datum.root_vectors() {
        let (x, y) = (e.real_part().into_coords(), e.imag_part().into_coords());
        basis.push(x.clone());
        images.push(neg(&y));
        basis.push(y);
        images.push(x);
    }
    let matrix = matrix_from_action(&basis, &images)?;
    Ok(ComplexStructure {
        algebra: g.clone(),
        matrix,
        provenance: Provenance::ClassicSamelson,
        datum: Some(datum.clone()),
    })
}

/// Lifts `J` on the base to `diag(J, J)` on the tangent algebra.
pub fn lift_complex_structure(tg: &TangentAlgebra, j: &ComplexStructure) -> Result<ComplexStructure> {
    ensure_same(j.algebra(), tg.base(), "structure lives on a different algebra")?;
    let jj = j.matrix.mul(&j.matrix);
    let minus_id = Matrix::identity(j.dim()).neg();
    if jj != minus_id {
        let column = (0..j.dim()).find(|&c| jj.column(c) != minus_id.column(c)).unwrap_or(0);
        return Err(Error::NotComplexStructure { column: column + 1 });
    }
    let n = j.dim();
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            let a = &j.matrix[(r, c)];
            if !a.is_zero() {
                m[(r, c)] = a.clone();
                m[(n + r, n + c)] = a.clone();
            }
        }
    }
    Ok(ComplexStructure {
        algebra: tg.total().clone(),
        matrix: m,
        provenance: Provenance::PropositionLift,
        datum: j.datum.clone(),
    })
}

/// `Ĵ` on `T^k 𝔤`: the tangent Samelson structure on level 1, lifted
/// `k - 1` times.
pub fn tower_complex_structure(g: &LieAlgebra, datum: &RootDatum, k: usize) -> Result<ComplexStructure> {
    tower_complex_structure_with_cap(g, datum, k, DEFAULT_DIMENSION_CAP)
}

pub fn tower_complex_structure_with_cap(
    g: &LieAlgebra,
    datum: &RootDatum,
    k: usize,
    cap: usize,
) -> Result<ComplexStructure> {
    let tower = tower_with_cap(g, k, cap)?;
    let mut j = build_tangent_samelson(tower.level(1), datum)?;
    for level in &tower.levels()[1..] {
        j = lift_complex_structure(level, &j)?;
    }
    Ok(j)
}
