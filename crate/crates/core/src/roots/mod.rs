//! Maximal tori, root space decomposition of the complexification, positive
//! systems and conjugate-paired root vectors.
//!
//! Eigenvalues are located in complex floating point, reconstructed as
//! Gaussian rationals, and then re-verified exactly. Every [`RootDatum`]
//! handed out satisfies `ad_{H_i} E_α = α(H_i) E_α` with zero residual.

mod numeric;
pub mod snap;

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, LieAlgebra};
use crate::checks::centralizer;
use crate::error::{Error, Result};
use crate::linalg::{in_span, Matrix};
use crate::report::{Certificate, VerificationItem};
use crate::scalar::{int, rat, Field, GaussianRational, Rational};

pub use snap::{snap_gaussian, snap_rational, DEFAULT_MAX_DENOMINATOR};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const ROOT_EXACTNESS: &str = "root_exactness";

const TORUS_ATTEMPTS: usize = 64;
const GENERIC_ATTEMPTS: usize = 24;
const SPIRAL_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Positivity {
    Positive,
    Negative,
}

/// A root, recorded by its values `α(H_i)` on the torus basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub values: Vec<GaussianRational>,
    pub positivity: Positivity,
}

impl Root {
    pub fn negated(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| -v.clone()).collect(),
            positivity: match self.positivity {
                Positivity::Positive => Positivity::Negative,
                Positivity::Negative => Positivity::Positive,
            },
        }
    }

    /// `α(Σ p_i H_i)`.
    pub fn evaluate(&self, coeffs: &[Rational]) -> GaussianRational {
        self.values
            .iter()
            .zip(coeffs)
            .fold(GaussianRational::zero(), |acc, (v, p)| acc + v.scale(p))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", vals.join(", "))
    }
}

/// Root space decomposition relative to a maximal torus, restricted to a
/// positive system. `E_{-α}` is the conjugate of `E_α` and is not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDatum {
    algebra: LieAlgebra,
    torus: Vec<Element>,
    roots: Vec<Root>,
    root_vectors: Vec<Element<GaussianRational>>,
    regular_element: Element,
}

impl RootDatum {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn torus(&self) -> &[Element] {
        &self.torus
    }

    pub fn rank(&self) -> usize {
        self.torus.len()
    }

    /// Positive roots, in canonical order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root_vectors(&self) -> &[Element<GaussianRational>] {
        &self.root_vectors
    }

    /// `E_{-α} = conj(E_α)` for the `index`-th positive root.
    pub fn negative_root_vector(&self, index: usize) -> Element<GaussianRational> {
        self.root_vectors[index].conj()
    }

    pub fn regular_element(&self) -> &Element {
        &self.regular_element
    }

    /// Replaces each `E_α` by `λ_α E_α`. Every factor must be nonzero.
    pub fn rescale_root_vectors(&self, factors: &[GaussianRational]) -> Result<Self> {
        if factors.len() != self.roots.len() {
            return Err(Error::DimensionMismatch {
                expected: self.roots.len(),
                found: factors.len(),
            });
        }
        if factors.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput("root vector scale factor must be nonzero".into()));
        }
        let mut out = self.clone();
        for (e, l) in out.root_vectors.iter_mut().zip(factors) {
            *e = e.scale(l);
        }
        Ok(out)
    }

    /// Coordinates of the regular element in the torus basis.
    pub fn regular_coefficients(&self) -> Vec<Rational> {
        torus_coefficients(&self.torus, &self.regular_element).expect("regular element lies in the torus")
    }

    /// Index of the positive root whose values equal `values`.
    pub fn find_root(&self, values: &[GaussianRational]) -> Option<usize> {
        self.roots.iter().position(|r| r.values == values)
    }

    /// Whether `values` is a root (positive or negative).
    pub fn is_root(&self, values: &[GaussianRational]) -> bool {
        let neg: Vec<GaussianRational> = values.iter().map(|v| -v.clone()).collect();
        self.find_root(values).is_some() || self.find_root(&neg).is_some()
    }

    /// Exact re-verification of every structural invariant of the datum.
    pub fn verify_exact(&self) -> VerificationItem {
        let g = &self.algebra;
        let n = g.dim();
        let k = self.rank();
        let m = self.roots.len();
        if k + 2 * m != n {
            return VerificationItem::fail(
                ROOT_EXACTNESS,
                format!("dimension count {k} + 2*{m} != {n}"),
                Certificate::new::<Rational>(Vec::new(), vec![int((k + 2 * m) as i64)]),
            );
        }
        let ads: Vec<Matrix<GaussianRational>> = self
            .torus
            .iter()
            .map(|h| g.ad_matrix(&h.complexify()).expect("torus element"))
            .collect();
        let h0 = self.regular_coefficients();
        for (a, (root, e)) in self.roots.iter().zip(&self.root_vectors).enumerate() {
            if e.is_zero() {
                return VerificationItem::fail(
                    ROOT_EXACTNESS,
                    format!("root vector {} is zero", a + 1),
                    Certificate::new::<GaussianRational>(vec![a + 1], e.coords().to_vec()),
                );
            }
            if let Some(v) = root.values.iter().find(|v| !v.is_imaginary()) {
                return VerificationItem::fail(
                    ROOT_EXACTNESS,
                    format!("root {} value {v} is not purely imaginary", a + 1),
                    Certificate::new(vec![a + 1], vec![v.clone()]),
                );
            }
            for (i, ad) in ads.iter().enumerate() {
                for (vec, val) in [(e.clone(), root.values[i].clone()), (e.conj(), -root.values[i].clone())] {
                    let lhs = Element::new(ad.mul_vec(vec.coords()));
                    let residual = lhs - vec.scale(&val);
                    if !residual.is_zero() {
                        return VerificationItem::fail(
                            ROOT_EXACTNESS,
                            format!("ad_(H_{}) E - ({val}) E = {residual} for root {}", i + 1, a + 1),
                            Certificate::new(vec![a + 1, i + 1], residual.into_coords()),
                        );
                    }
                }
            }
            if !root.evaluate(&h0).im.is_positive() {
                return VerificationItem::fail(
                    ROOT_EXACTNESS,
                    format!("root {} is not positive on the regular element", a + 1),
                    Certificate::new(vec![a + 1], vec![root.evaluate(&h0)]),
                );
            }
        }
        // Closure: a sum of two positive roots is never a negative root.
        for a in 0..m {
            for b in a..m {
                let sum: Vec<GaussianRational> = self.roots[a]
                    .values
                    .iter()
                    .zip(&self.roots[b].values)
                    .map(|(x, y)| x.clone() + y.clone())
                    .collect();
                let neg: Vec<GaussianRational> = sum.iter().map(|v| -v.clone()).collect();
                if self.find_root(&neg).is_some() {
                    return VerificationItem::fail(
                        ROOT_EXACTNESS,
                        format!("roots {} + {} is a negative root", a + 1, b + 1),
                        Certificate::new(vec![a + 1, b + 1], sum),
                    );
                }
            }
        }
        VerificationItem::pass(
            ROOT_EXACTNESS,
            format!("rank {k}, {m} positive roots, all eigen equations exact"),
        )
    }
}

fn check_dims(g: &LieAlgebra, elems: &[Element]) -> Result<()> {
    for e in elems {
        if e.dim() != g.dim() {
            return Err(Error::DimensionMismatch {
                expected: g.dim(),
                found: e.dim(),
            });
        }
    }
    Ok(())
}

fn first_noncommuting(g: &LieAlgebra, elems: &[Element]) -> Option<(usize, usize)> {
    (0..elems.len())
        .flat_map(|a| (a + 1..elems.len()).map(move |b| (a, b)))
        .find(|&(a, b)| !g.bracket_unchecked(&elems[a], &elems[b]).is_zero())
}

fn rank_of(elems: &[Element]) -> usize {
    if elems.is_empty() {
        return 0;
    }
    Matrix::from_rows(elems.iter().map(|e| e.coords().to_vec()).collect()).rank()
}

/// Checks that `torus` is a linearly independent, abelian, self-centralizing
/// family.
pub fn validate_torus(g: &LieAlgebra, torus: &[Element]) -> Result<()> {
    check_dims(g, torus)?;
    if torus.is_empty() {
        return Err(Error::InvalidInput("torus basis is empty".into()));
    }
    if rank_of(torus) != torus.len() {
        return Err(Error::InvalidInput("torus elements are linearly dependent".into()));
    }
    if let Some((a, b)) = first_noncommuting(g, torus) {
        return Err(Error::NotAbelian { a: a + 1, b: b + 1 });
    }
    let cent = centralizer(g, torus)?;
    if cent.len() > torus.len() {
        let span: Vec<Vec<Rational>> = torus.iter().map(|t| t.coords().to_vec()).collect();
        let witness = cent
            .iter()
            .find(|c| !in_span(&span, c.coords()))
            .expect("larger centralizer has an element outside the span");
        return Err(Error::NotMaximal {
            witness: witness.to_string(),
        });
    }
    Ok(())
}

fn sample_coefficient(rng: &mut ChaCha8Rng) -> Rational {
    const CHOICES: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (3, 1), (-3, 1)];
    let (p, q) = CHOICES[rng.gen_range(0..CHOICES.len())];
    rat(p, q)
}

/// Returns a rational basis of a maximal abelian subalgebra.
///
/// A `hint` is validated (abelian and self-centralizing) and returned
/// unchanged. Otherwise random elements `X` with small rational coordinates
/// are drawn deterministically from `seed`; the first whose centralizer is
/// abelian yields the torus. Early attempts use sparse `X` so that tori
/// aligned with the given basis are preferred.
pub fn find_maximal_torus(g: &LieAlgebra, seed: Option<u64>, hint: Option<&[Element]>) -> Result<Vec<Element>> {
    if let Some(hint) = hint {
        validate_torus(g, hint)?;
        return Ok(hint.to_vec());
    }
    let n = g.dim();
    if g.is_abelian() {
        return Ok((0..n).map(|i| g.basis(i)).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    let mut last = String::from("no attempts made");
    for attempt in 0..TORUS_ATTEMPTS {
        let support = (1 + attempt / 4).min(n);
        let mut coords = vec![Rational::zero(); n];
        for _ in 0..support {
            coords[rng.gen_range(0..n)] = sample_coefficient(&mut rng);
        }
        let x = Element::new(coords);
        if x.is_zero() {
            continue;
        }
        let cent = centralizer(g, std::slice::from_ref(&x))?;
        match first_noncommuting(g, &cent) {
            None => return Ok(cent),
            Some(_) => {
                last = format!("centralizer of {x} has dimension {} and is not abelian", cent.len());
            }
        }
    }
    Err(Error::RetryBudgetExhausted {
        attempts: TORUS_ATTEMPTS,
        diagnostic: last,
    })
}

/// Coordinates of `x` in the torus basis, if `x` lies in its span.
pub fn torus_coefficients(torus: &[Element], x: &Element) -> Option<Vec<Rational>> {
    let k = torus.len();
    let n = x.dim();
    // Solve T p = x with T the n x k matrix of torus columns.
    let cols: Vec<Vec<Rational>> = torus.iter().map(|t| t.coords().to_vec()).collect();
    let mut aug = Matrix::<Rational>::zeros(n, k + 1);
    for i in 0..n {
        for (j, col) in cols.iter().enumerate() {
            aug[(i, j)] = col[i].clone();
        }
        aug[(i, k)] = x.coords()[i].clone();
    }
    let (r, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut p = vec![Rational::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        p[c] = r[(row, k)].clone();
    }
    Some(p)
}

fn combine(torus: &[Element], coeffs: &[Rational]) -> Element {
    let n = torus[0].dim();
    torus
        .iter()
        .zip(coeffs)
        .fold(Element::zero(n), |acc, (h, p)| acc + h.scale(p))
}

fn complex_str(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

struct ExactRoot {
    values: Vec<GaussianRational>,
    vector: Element<GaussianRational>,
}

/// Finds an exact eigenvector of all `ad_{H_i}` with the snapped eigenvalues.
fn exact_root_vector(
    ads: &[Matrix<GaussianRational>],
    values: &[GaussianRational],
    approx: &nalgebra::DVector<Complex64>,
    tol: f64,
) -> Result<Element<GaussianRational>> {
    let is_eigen = |v: &Element<GaussianRational>| {
        !v.is_zero()
            && ads
                .iter()
                .zip(values)
                .all(|(ad, val)| Element::new(ad.mul_vec(v.coords())) == v.scale(val))
    };
    // Entrywise snap after dividing by the largest entry.
    let pivot = approx
        .iter()
        .enumerate()
        .fold((0, 0.0_f64), |(bi, bm), (i, z)| if z.norm() > bm * (1.0 + 1e-9) { (i, z.norm()) } else { (bi, bm) })
        .0;
    let p = approx[pivot];
    if p.norm() > 0.0 {
        let snapped: Option<Vec<GaussianRational>> = approx
            .iter()
            .map(|z| {
                let w = z / p;
                snap_gaussian(w.re, w.im, tol, DEFAULT_MAX_DENOMINATOR)
            })
            .collect();
        if let Some(coords) = snapped {
            let v = Element::new(coords);
            if is_eigen(&v) {
                return Ok(v);
            }
        }
    }
    // Exact kernel of the stacked (ad_{H_i} - α(H_i) id).
    let n = approx.len();
    let mut stacked = Matrix::<GaussianRational>::zeros(0, n);
    for (ad, val) in ads.iter().zip(values) {
        stacked = stacked.vstack(&ad.sub(&Matrix::identity(n).scale(val)));
    }
    let kernel = stacked.kernel();
    match kernel.len() {
        1 => Ok(Element::new(kernel.into_iter().next().expect("one vector"))),
        0 => Err(Error::ExactVerification(format!(
            "no exact simultaneous eigenvector for snapped root values ({})",
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ))),
        d => Err(Error::ExactVerification(format!(
            "root space for ({}) has dimension {d} > 1",
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Computes the root space decomposition of `g` relative to `torus`.
///
/// The returned datum carries a positive system chosen by the deterministic
/// regular-element search and normalized root vectors.
pub fn root_space_decomposition(g: &LieAlgebra, torus: &[Element], tol: f64) -> Result<RootDatum> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    validate_torus(g, torus)?;
    let n = g.dim();
    let k = torus.len();
    let ads_q: Vec<Matrix<Rational>> = torus.iter().map(|h| g.ad_matrix(h)).collect::<Result<_>>()?;
    let ads_f: Vec<DMatrix<f64>> = ads_q.iter().map(numeric::to_f64).collect();
    let ads_g: Vec<Matrix<GaussianRational>> = ads_q.iter().map(|m| m.map(|x| GaussianRational::from(x.clone()))).collect();

    let mut roots: Vec<ExactRoot> = Vec::new();
    if k < n {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut found = None;
        for _ in 0..GENERIC_ATTEMPTS {
            let coeffs: Vec<f64> = (0..k).map(|_| rng.gen_range(1..=97) as f64 * if rng.gen_bool(0.5) { 1.0 } else { -1.0 }).collect();
            let a = ads_f.iter().zip(&coeffs).fold(DMatrix::zeros(n, n), |acc, (m, c)| acc + m * *c);
            let scale = 1.0 + numeric::max_abs(&a);
            let eig = numeric::eigenvalues(&a);
            let zero_tol = 1e-7 * scale;
            let zeros = eig.iter().filter(|z| z.norm() <= zero_tol).count();
            let nonzero: Vec<Complex64> = eig.iter().copied().filter(|z| z.norm() > zero_tol).collect();
            let separated = nonzero.iter().enumerate().all(|(i, x)| {
                nonzero[i + 1..].iter().all(|y| (x - y).norm() > 1e-6 * scale)
            });
            if zeros == k && separated {
                found = Some((a, nonzero));
                break;
            }
        }
        let (a, nonzero) = found.ok_or_else(|| {
            Error::ExactVerification(
                "no torus element separates the root spaces (root spaces may not be one-dimensional)".into(),
            )
        })?;
        for lambda in nonzero {
            let v = numeric::eigenvector(&a, lambda).ok_or_else(|| {
                Error::ExactVerification(format!("inverse iteration failed for eigenvalue {}", complex_str(lambda)))
            })?;
            if numeric::relative_residual(&a, lambda, &v) > 1e-6 {
                return Err(Error::ExactVerification(format!(
                    "floating-point eigenvector residual too large for {}",
                    complex_str(lambda)
                )));
            }
            let mut values = Vec::with_capacity(k);
            for (i, adf) in ads_f.iter().enumerate() {
                let z = numeric::rayleigh(adf, &v);
                let snapped = snap_gaussian(z.re, z.im, tol, DEFAULT_MAX_DENOMINATOR).ok_or_else(|| Error::SnapFailure {
                    value: format!("alpha(H_{}) ~ {}", i + 1, complex_str(z)),
                    tol,
                    max_denominator: DEFAULT_MAX_DENOMINATOR,
                })?;
                values.push(snapped);
            }
            let vector = exact_root_vector(&ads_g, &values, &v, tol)?;
            roots.push(ExactRoot { values, vector });
        }
    }

    if let Some(r) = roots.iter().find(|r| r.values.iter().any(|v| !v.is_imaginary())) {
        return Err(Error::NotCompactType(format!(
            "root ({}) has a nonzero real part",
            r.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        )));
    }
    for (a, r) in roots.iter().enumerate() {
        if roots[a + 1..].iter().any(|s| s.values == r.values) {
            return Err(Error::ExactVerification("two eigenvalue clusters snapped to the same root".into()));
        }
        let neg: Vec<GaussianRational> = r.values.iter().map(|v| -v.clone()).collect();
        if !roots.iter().any(|s| s.values == neg) {
            return Err(Error::ExactVerification("roots do not come in ± pairs".into()));
        }
    }

    // Keep one representative per ± pair; the sign is fixed below.
    let mut half: Vec<(Root, Element<GaussianRational>)> = Vec::new();
    for r in roots {
        let neg: Vec<GaussianRational> = r.values.iter().map(|v| -v.clone()).collect();
        if half.iter().any(|(s, _)| s.values == neg) {
            continue;
        }
        half.push((
            Root {
                values: r.values,
                positivity: Positivity::Positive,
            },
            r.vector,
        ));
    }
    let (roots, root_vectors): (Vec<Root>, Vec<Element<GaussianRational>>) = half.into_iter().unzip();
    let datum = RootDatum {
        algebra: g.clone(),
        torus: torus.to_vec(),
        roots,
        root_vectors,
        regular_element: torus[0].clone(),
    };
    let datum = choose_positive_system(&datum, None)?;
    let item = datum.verify_exact();
    if !item.passed {
        return Err(Error::ExactVerification(item.detail));
    }
    Ok(datum)
}

fn from_key(k: i64) -> i64 {
    if k % 2 == 1 {
        (k + 1) / 2
    } else {
        -k / 2
    }
}

fn is_regular(roots: &[Root], coeffs: &[Rational]) -> bool {
    roots.iter().all(|r| !r.evaluate(coeffs).im.is_zero())
}

/// Deterministic search for a regular element: integer tuples by increasing
/// max-norm, each shell in lexicographic order of `0, 1, -1, 2, -2, …`, with
/// a geometric fallback `(1, M, M², …)`.
pub fn find_regular_coefficients(roots: &[Root], rank: usize) -> Vec<Rational> {
    if rank == 0 {
        return Vec::new();
    }
    let mut budget = SPIRAL_BUDGET;
    for r in 1_i64.. {
        let width = 2 * r + 1;
        let shell = (width as usize).checked_pow(rank as u32).unwrap_or(usize::MAX);
        if shell > budget {
            break;
        }
        budget -= shell;
        let mut digits = vec![0_i64; rank];
        'shell: loop {
            let tuple: Vec<i64> = digits.iter().map(|&d| from_key(d)).collect();
            if tuple.iter().any(|p| p.abs() == r) {
                let coeffs: Vec<Rational> = tuple.iter().map(|&p| int(p)).collect();
                if is_regular(roots, &coeffs) {
                    return coeffs;
                }
            }
            // Odometer; the first digit is the most significant.
            let mut pos = rank;
            loop {
                if pos == 0 {
                    break 'shell;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < width {
                    continue 'shell;
                }
                digits[pos] = 0;
            }
        }
    }
    for m in 2_i64.. {
        let coeffs: Vec<Rational> = (0..rank as u32).map(|i| int(m).pow(i as i32)).collect();
        if is_regular(roots, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("a geometric tuple is eventually regular")
}

fn canonical_order(a: &(Root, Element<GaussianRational>), b: &(Root, Element<GaussianRational>)) -> Ordering {
    a.1.leading_index()
        .cmp(&b.1.leading_index())
        .then_with(|| a.0.values.cmp(&b.0.values))
}

/// Re-selects `Δ⁺ = {α : Im α(H₀) > 0}` for the regular element `H₀`
/// (searched deterministically when `regular` is `None`).
pub fn choose_positive_system(datum: &RootDatum, regular: Option<&Element>) -> Result<RootDatum> {
    let coeffs = match regular {
        Some(h0) => {
            check_dims(&datum.algebra, std::slice::from_ref(h0))?;
            let coeffs = torus_coefficients(&datum.torus, h0)
                .ok_or_else(|| Error::InvalidInput(format!("regular element {h0} is not in the torus")))?;
            if let Some(r) = datum.roots.iter().find(|r| r.evaluate(&coeffs).im.is_zero()) {
                return Err(Error::NonRegular { root: r.to_string() });
            }
            coeffs
        }
        None => find_regular_coefficients(&datum.roots, datum.rank()),
    };
    let mut pairs: Vec<(Root, Element<GaussianRational>)> = datum
        .roots
        .iter()
        .zip(&datum.root_vectors)
        .map(|(r, e)| {
            if r.evaluate(&coeffs).im.is_positive() {
                (r.clone(), e.clone())
            } else {
                let mut neg = r.negated();
                neg.positivity = Positivity::Positive;
                (neg, e.conj())
            }
        })
        .collect();
    pairs.sort_by(canonical_order);
    let (roots, root_vectors) = pairs.into_iter().unzip();
    let out = RootDatum {
        algebra: datum.algebra.clone(),
        torus: datum.torus.clone(),
        roots,
        root_vectors,
        regular_element: combine(&datum.torus, &coeffs),
    };
    Ok(normalize_root_vectors(&out))
}

/// Scales each `E_α` so that its lowest-index nonzero coordinate is `1`.
pub fn normalize_root_vectors(datum: &RootDatum) -> RootDatum {
    let mut out = datum.clone();
    for e in &mut out.root_vectors {
        if let Some(lead) = e.leading_index() {
            let s = GaussianRational::one() / e.coords()[lead].clone();
            *e = e.scale(&s);
        }
    }
    let mut pairs: Vec<(Root, Element<GaussianRational>)> =
        out.roots.into_iter().zip(out.root_vectors).collect();
    pairs.sort_by(canonical_order);
    (out.roots, out.root_vectors) = pairs.into_iter().unzip();
    out
}

/// Options for [`decompose`].
#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    pub torus: Option<Vec<Element>>,
    pub regular: Option<Element>,
    pub tol: f64,
    /// Number of seeds tried when no torus is given.
    pub seed_attempts: u64,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            torus: None,
            regular: None,
            tol: DEFAULT_TOL,
            seed_attempts: 16,
        }
    }
}

/// Torus search, root decomposition, positive system and normalization in
/// one call. Without a torus hint, consecutive seeds are tried until the
/// decomposition snaps exactly.
pub fn decompose(g: &LieAlgebra, opts: &DecomposeOptions) -> Result<RootDatum> {
    let datum = match &opts.torus {
        Some(hint) => {
            let torus = find_maximal_torus(g, None, Some(hint))?;
            root_space_decomposition(g, &torus, opts.tol)?
        }
        None => {
            let mut last_err = None;
            let mut found = None;
            for s in 0..opts.seed_attempts.max(1) {
                let torus = find_maximal_torus(g, Some(opts.seed.wrapping_add(s)), None)?;
                match root_space_decomposition(g, &torus, opts.tol) {
                    Ok(d) => {
                        found = Some(d);
                        break;
                    }
                    Err(e @ (Error::SnapFailure { .. } | Error::ExactVerification(_))) => last_err = Some(e),
                    Err(e) => return Err(e),
                }
            }
            match found {
                Some(d) => d,
                None => return Err(last_err.expect("at least one attempt")),
            }
        }
    };
    match &opts.regular {
        Some(h0) => choose_positive_system(&datum, Some(h0)),
        None => Ok(datum),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn gi(im: i64) -> GaussianRational {
        GaussianRational::imaginary(int(im))
    }

    fn coords(v: &[i64]) -> Element {
        Element::new(v.iter().map(|&x| int(x)).collect())
    }

    fn gvec(entries: &[(i64, i64)]) -> Element<GaussianRational> {
        Element::new(entries.iter().map(|&(re, im)| GaussianRational::new(int(re), int(im))).collect())
    }

    #[test]
    fn so3_torus_hint() {
        let g = catalog::so3();
        let t = find_maximal_torus(&g, None, Some(&[g.basis(0)])).unwrap();
        assert_eq!(t, vec![g.basis(0)]);
    }

    #[test]
    fn u3_torus_hint_accepted() {
        let g = catalog::u3();
        let hint: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        assert_eq!(find_maximal_torus(&g, None, Some(&hint)).unwrap(), hint);
    }

    #[test]
    fn torus_hint_errors() {
        let g = catalog::u3();
        assert!(matches!(
            find_maximal_torus(&g, None, Some(&[g.basis(0), g.basis(3)])),
            Err(Error::NotAbelian { a: 1, b: 2 })
        ));
        assert!(matches!(
            find_maximal_torus(&g, None, Some(&[g.basis(0), g.basis(1)])),
            Err(Error::NotMaximal { .. })
        ));
    }

    #[test]
    fn abelian_torus_is_everything() {
        let g = LieAlgebra::abelian(3);
        assert_eq!(find_maximal_torus(&g, Some(7), None).unwrap().len(), 3);
        let d = root_space_decomposition(&g, &find_maximal_torus(&g, None, None).unwrap(), DEFAULT_TOL).unwrap();
        assert!(d.roots().is_empty());
        assert_eq!(d.rank(), 3);
    }

    #[test]
    fn random_torus_search_is_abelian_and_maximal() {
        for g in [catalog::so3(), catalog::u3(), catalog::so3_so3()] {
            for seed in 0..4 {
                let t = find_maximal_torus(&g, Some(seed), None).unwrap();
                validate_torus(&g, &t).unwrap();
            }
        }
    }

    #[test]
    fn so3_roots() {
        let g = catalog::so3();
        let d = root_space_decomposition(&g, &[g.basis(0)], DEFAULT_TOL).unwrap();
        assert_eq!(d.roots().len(), 1);
        assert_eq!(d.roots()[0].values, vec![gi(1)]);
        assert_eq!(d.root_vectors()[0], gvec(&[(0, 0), (1, 0), (0, 1)]));
        assert_eq!(d.negative_root_vector(0), gvec(&[(0, 0), (1, 0), (0, -1)]));
        assert_eq!(d.regular_element(), &g.basis(0));
        assert!(d.verify_exact().passed);
    }

    #[test]
    fn u3_roots_with_regular_element_2_1_3() {
        let g = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        let d = root_space_decomposition(&g, &torus, DEFAULT_TOL).unwrap();
        let h0 = coords(&[2, 1, 3, 0, 0, 0, 0, 0, 0]);
        let d = choose_positive_system(&d, Some(&h0)).unwrap();
        let values: Vec<Vec<GaussianRational>> = d.roots().iter().map(|r| r.values.clone()).collect();
        assert_eq!(
            values,
            vec![vec![gi(1), gi(-1), gi(0)], vec![gi(-1), gi(0), gi(1)], vec![gi(0), gi(-1), gi(1)]]
        );
        let e = d.root_vectors();
        assert_eq!(e[0], gvec(&[(0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (0, 0), (0, -1), (0, 0), (0, 0)]));
        assert_eq!(e[1], gvec(&[(0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (0, 0), (0, 1), (0, 0)]));
        assert_eq!(e[2], gvec(&[(0, 0), (0, 0), (0, 0), (0, 0), (0, 0), (1, 0), (0, 0), (0, 0), (0, 1)]));
        // Oracle: Im α(H0) = 2 - 1, Im β(H0) = -2 + 3, Im γ(H0) = -1 + 3.
        let c = d.regular_coefficients();
        let ims: Vec<Rational> = d.roots().iter().map(|r| r.evaluate(&c).im).collect();
        assert_eq!(ims, vec![int(1), int(1), int(2)]);
    }

    #[test]
    fn negated_regular_swaps_positive_system() {
        let g = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        let d = root_space_decomposition(&g, &torus, DEFAULT_TOL).unwrap();
        let h0 = coords(&[2, 1, 3, 0, 0, 0, 0, 0, 0]);
        let pos = choose_positive_system(&d, Some(&h0)).unwrap();
        let neg = choose_positive_system(&d, Some(&-h0.clone())).unwrap();
        for r in pos.roots() {
            let minus: Vec<GaussianRational> = r.values.iter().map(|v| -v.clone()).collect();
            assert!(neg.find_root(&minus).is_some());
            assert!(neg.find_root(&r.values).is_none());
        }
    }

    #[test]
    fn non_regular_element_rejected() {
        let g = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        let d = root_space_decomposition(&g, &torus, DEFAULT_TOL).unwrap();
        let h0 = coords(&[1, 1, 1, 0, 0, 0, 0, 0, 0]);
        assert!(matches!(choose_positive_system(&d, Some(&h0)), Err(Error::NonRegular { .. })));
        let outside = coords(&[0, 0, 0, 1, 0, 0, 0, 0, 0]);
        assert!(matches!(choose_positive_system(&d, Some(&outside)), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn bracket_of_root_vectors_lands_in_sum_space() {
        let g = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        let d = root_space_decomposition(&g, &torus, DEFAULT_TOL).unwrap();
        let ads: Vec<Matrix<GaussianRational>> =
            torus.iter().map(|h| g.ad_matrix(&h.complexify()).unwrap()).collect();
        let all: Vec<(Vec<GaussianRational>, Element<GaussianRational>)> = d
            .roots()
            .iter()
            .zip(d.root_vectors())
            .flat_map(|(r, e)| [(r.values.clone(), e.clone()), (r.negated().values, e.conj())])
            .collect();
        for (a, ea) in &all {
            for (b, eb) in &all {
                let sum: Vec<GaussianRational> = a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect();
                let br = g.bracket(ea, eb).unwrap();
                let is_zero_root = sum.iter().all(Zero::is_zero);
                if !is_zero_root && !d.is_root(&sum) {
                    assert!(br.is_zero());
                    continue;
                }
                for (ad, s) in ads.iter().zip(&sum) {
                    assert_eq!(Element::new(ad.mul_vec(br.coords())), br.scale(s));
                }
            }
        }
    }

    #[test]
    fn normalization_is_idempotent_and_conjugation_involutive() {
        let g = catalog::so3_so3();
        let d = decompose(&g, &DecomposeOptions::default()).unwrap();
        assert_eq!(normalize_root_vectors(&d), d);
        for e in d.root_vectors() {
            assert_eq!(e.conj().conj(), *e);
        }
        let scaled = d
            .rescale_root_vectors(&vec![GaussianRational::new(int(2), int(-3)); d.roots().len()])
            .unwrap();
        assert_eq!(normalize_root_vectors(&scaled), d);
    }

    #[test]
    fn positive_system_independent_of_root_order() {
        let g = catalog::u3();
        let torus: Vec<Element> = (0..3).map(|i| g.basis(i)).collect();
        let d = root_space_decomposition(&g, &torus, DEFAULT_TOL).unwrap();
        let mut shuffled = d.clone();
        shuffled.roots.reverse();
        shuffled.root_vectors.reverse();
        assert_eq!(choose_positive_system(&shuffled, None).unwrap(), choose_positive_system(&d, None).unwrap());
    }

    #[test]
    fn non_maximal_torus_rejected() {
        let g = catalog::so3_so3();
        assert!(matches!(
            root_space_decomposition(&g, &[g.basis(0)], DEFAULT_TOL),
            Err(Error::NotMaximal { .. })
        ));
    }

    #[test]
    fn irrational_roots_fail_to_snap() {
        // Torus spanned by e1 + e2 in so(3): α = ±i√2.
        let g = catalog::so3();
        let h = coords(&[1, 1, 0]);
        let err = root_space_decomposition(&g, &[h], DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, Error::SnapFailure { .. }), "{err:?}");
    }

    #[test]
    fn decompose_without_hint() {
        for g in [catalog::so3(), catalog::u3(), catalog::so3_so3()] {
            let d = decompose(&g, &DecomposeOptions::default()).unwrap();
            assert_eq!(d.rank() + 2 * d.roots().len(), g.dim());
            assert!(d.verify_exact().passed);
        }
    }

    #[test]
    fn spiral_order() {
        let keys: Vec<i64> = (0..5).map(from_key).collect();
        assert_eq!(keys, vec![0, 1, -1, 2, -2]);
    }
}
