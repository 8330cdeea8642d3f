//! Exact integrability checks: `J² = -id`, the Nijenhuis tensor
//! `N_J(X,Y) = J[JX,Y] + J[X,JY] + [X,Y] - [JX,JY]`, and a scan organised by
//! the thirteen pair families of the tangent Samelson construction.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Certificate, VerificationItem, VerificationReport};
use crate::roots::RootDatum;
use crate::samelson::ComplexStructure;
use crate::scalar::{Field, GaussianRational, Rational};
use crate::tangent::TangentAlgebra;

pub const J_SQUARED: &str = "j_squared";
pub const NIJENHUIS: &str = "nijenhuis";
pub const CASE_FAMILIES: usize = 13;

/// `N_J(x, y)`.
pub fn nijenhuis<F: Field>(j: &ComplexStructure, x: &Element<F>, y: &Element<F>) -> Result<Element<F>> {
    let g = j.algebra();
    g.check_element(x)?;
    g.check_element(y)?;
    Ok(nijenhuis_unchecked(j, x, y))
}

fn nijenhuis_unchecked<F: Field>(j: &ComplexStructure, x: &Element<F>, y: &Element<F>) -> Element<F> {
    let g = j.algebra();
    let jx = j.apply_unchecked(x);
    let jy = j.apply_unchecked(y);
    let a = j.apply_unchecked(&g.bracket_unchecked(&jx, y));
    let b = j.apply_unchecked(&g.bracket_unchecked(x, &jy));
    let c = g.bracket_unchecked(x, y);
    let d = g.bracket_unchecked(&jx, &jy);
    a + b + c - d
}

/// Lexicographically first failing pair, independent of scan order.
fn first_failure<F: Field, T: Ord + Copy + Send + Sync>(
    pairs: &[T],
    eval: impl Fn(T) -> Element<F> + Sync,
) -> (usize, Option<(T, Element<F>)>) {
    let failures: Vec<(T, Element<F>)> = pairs
        .par_iter()
        .filter_map(|&p| {
            let r = eval(p);
            (!r.is_zero()).then_some((p, r))
        })
        .collect();
    let count = failures.len();
    (count, failures.into_iter().min_by_key(|(p, _)| *p))
}

/// Scans all unordered basis pairs; passes iff every `N_J(e_a, e_b)` is zero.
pub fn verify_integrability(j: &ComplexStructure) -> VerificationItem {
    let n = j.dim();
    let g = j.algebra();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = pairs.len();
    let (failed, first) = first_failure(&pairs, |(a, b)| {
        nijenhuis_unchecked::<Rational>(j, &g.basis(a), &g.basis(b))
    });
    match first {
        None => VerificationItem::pass(NIJENHUIS, format!("{total}/{total} pairs")),
        Some(((a, b), r)) => VerificationItem::fail(
            NIJENHUIS,
            format!(
                "{}/{total} pairs; N_J(e_{}, e_{}) = {r}",
                total - failed,
                a + 1,
                b + 1
            ),
            Certificate::new(vec![a + 1, b + 1], r.into_coords()),
        ),
    }
}

/// Checks `J·J = -id` exactly; the witness is the first offending column of
/// `J² + id`.
pub fn verify_j_squared(j: &ComplexStructure) -> VerificationItem {
    let n = j.dim();
    let m = j.matrix();
    let residual = m.mul(m).add(&Matrix::identity(n));
    match (0..n).find(|&c| residual.column(c).iter().any(|x| !num_traits::Zero::is_zero(x))) {
        None => VerificationItem::pass(J_SQUARED, format!("{n}x{n} exact")),
        Some(c) => VerificationItem::fail(
            J_SQUARED,
            format!("column {} of J^2 + id is nonzero", c + 1),
            Certificate::new(vec![c + 1], residual.column(c)),
        ),
    }
}

/// `j_squared` and `nijenhuis` together.
pub fn verify_structure(j: &ComplexStructure) -> VerificationReport {
    VerificationReport {
        items: vec![verify_j_squared(j), verify_integrability(j)],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lift {
    Complete,
    Vertical,
}

/// Type of a vector of the complex basis `H_i^{c,v}, E_{±α}^{c,v}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisKind {
    Torus(Lift),
    PositiveRoot(Lift),
    NegativeRoot(Lift),
}

/// Element of the complex basis of the complexified tangent algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexBasisVector {
    pub kind: BasisKind,
    /// 1-based torus index or positive-root index.
    pub index: usize,
    pub vector: Element<GaussianRational>,
}

impl fmt::Display for ComplexBasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (sym, lift) = match self.kind {
            BasisKind::Torus(l) => (format!("H_{}", self.index), l),
            BasisKind::PositiveRoot(l) => (format!("E_{}", self.index), l),
            BasisKind::NegativeRoot(l) => (format!("E_-{}", self.index), l),
        };
        let sup = match lift {
            Lift::Complete => "c",
            Lift::Vertical => "v",
        };
        write!(f, "{sym}^{sup}")
    }
}

/// The basis `H_i^c, E_α^c, E_{-α}^c, H_i^v, E_α^v, E_{-α}^v`.
pub fn complex_basis(tg: &TangentAlgebra, datum: &RootDatum) -> Result<Vec<ComplexBasisVector>> {
    if datum.algebra() != tg.base() {
        return Err(Error::AlgebraMismatch("root datum is not on the tangent base".into()));
    }
    let mut out = Vec::with_capacity(tg.total().dim());
    for lift in [Lift::Complete, Lift::Vertical] {
        let embed = |x: &Element<GaussianRational>| match lift {
            Lift::Complete => tg.complete_lift(x).expect("base element"),
            Lift::Vertical => tg.vertical_lift(x).expect("base element"),
        };
        for (i, h) in datum.torus().iter().enumerate() {
            out.push(ComplexBasisVector {
                kind: BasisKind::Torus(lift),
                index: i + 1,
                vector: embed(&h.complexify()),
            });
        }
        for (a, e) in datum.root_vectors().iter().enumerate() {
            out.push(ComplexBasisVector {
                kind: BasisKind::PositiveRoot(lift),
                index: a + 1,
                vector: embed(e),
            });
        }
        for a in 0..datum.roots().len() {
            out.push(ComplexBasisVector {
                kind: BasisKind::NegativeRoot(lift),
                index: a + 1,
                vector: embed(&datum.negative_root_vector(a)),
            });
        }
    }
    Ok(out)
}

/// Case family (1-13) of an unordered pair of basis kinds:
///
/// | family | pair |
/// |---|---|
/// | 1-4 | `H^c` with `E_α^c`, `E_{-α}^c`, `E_α^v`, `E_{-α}^v` |
/// | 5-8 | `H^v` with the same four |
/// | 9 | `E_α^c` with `E_β^c` or `E_β^v` |
/// | 10 | two vertical root vectors |
/// | 11 | positive with negative, at least one complete |
/// | 12 | `E_{-α}^c` with `E_{-β}^c` or `E_{-β}^v` |
/// | 13 | two torus vectors |
pub fn case_family(a: BasisKind, b: BasisKind) -> usize {
    use BasisKind::*;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (Torus(_), Torus(_)) => 13,
        (Torus(t), PositiveRoot(r)) | (Torus(t), NegativeRoot(r)) => {
            let neg = matches!(b, NegativeRoot(_));
            1 + if t == Lift::Vertical { 4 } else { 0 }
                + if r == Lift::Vertical { 2 } else { 0 }
                + usize::from(neg)
        }
        (PositiveRoot(Lift::Vertical), PositiveRoot(Lift::Vertical))
        | (PositiveRoot(Lift::Vertical), NegativeRoot(Lift::Vertical))
        | (NegativeRoot(Lift::Vertical), NegativeRoot(Lift::Vertical)) => 10,
        (PositiveRoot(_), PositiveRoot(_)) => 9,
        (NegativeRoot(_), NegativeRoot(_)) => 12,
        (PositiveRoot(_), NegativeRoot(_)) => 11,
        _ => unreachable!("pairs are sorted so torus kinds come first"),
    }
}

/// `N_Ĵ` on every pair of the complex basis, one item per case family
/// (`case_1` … `case_13`). Families over empty index sets pass vacuously.
/// If the datum's vectors fail to span, the standard basis is scanned as an
/// extra `case_unclassified` family.
pub fn case_suite(tg: &TangentAlgebra, datum: &RootDatum, j: &ComplexStructure) -> Result<Vec<VerificationItem>> {
    if j.algebra() != tg.total() {
        return Err(Error::AlgebraMismatch("structure is not on the tangent algebra".into()));
    }
    let basis = complex_basis(tg, datum)?;
    let m = basis.len();
    let mut families: Vec<Vec<(usize, usize)>> = vec![Vec::new(); CASE_FAMILIES];
    for a in 0..m {
        for b in a + 1..m {
            families[case_family(basis[a].kind, basis[b].kind) - 1].push((a, b));
        }
    }
    let mut items = Vec::with_capacity(CASE_FAMILIES + 1);
    for (f, pairs) in families.iter().enumerate() {
        let name = format!("case_{}", f + 1);
        let total = pairs.len();
        let (failed, first) = first_failure(pairs, |(a, b)| nijenhuis_unchecked(j, &basis[a].vector, &basis[b].vector));
        items.push(match first {
            None if total == 0 => VerificationItem::pass(name, "vacuous (0 pairs)"),
            None => VerificationItem::pass(name, format!("{total}/{total} pairs")),
            Some(((a, b), r)) => VerificationItem::fail(
                name,
                format!("{}/{total} pairs; N({}, {}) = {r}", total - failed, basis[a], basis[b]),
                Certificate::new(vec![a + 1, b + 1], r.into_coords()),
            ),
        });
    }
    let spans = Matrix::from_rows(basis.iter().map(|b| b.vector.coords().to_vec()).collect()).rank() == tg.total().dim();
    if !spans {
        let mut item = verify_integrability(j);
        item.name = "case_unclassified".into();
        items.push(item);
    }
    Ok(items)
}
