//! Randomized invariants over small algebras in random rational bases.

mod common;

use common::*;
use proptest::prelude::*;
use samelson_core::catalog;
use samelson_core::checks::check_jacobi;
use samelson_core::roots::{choose_positive_system, root_space_decomposition, DEFAULT_TOL};
use samelson_core::samelson::{build_tangent_samelson, lift_complex_structure, ComplexStructure};
use samelson_core::scalar::{int, rat, GaussianRational};
use samelson_core::tangent::{is_vertical, tangent_algebra};
use samelson_core::verify::nijenhuis;
use samelson_core::{Element, LieAlgebra, RootDatum};

fn u3_datum() -> RootDatum {
    static CELL: std::sync::OnceLock<RootDatum> = std::sync::OnceLock::new();
    CELL.get_or_init(build_u3_datum).clone()
}

fn build_u3_datum() -> RootDatum {
    let alg = catalog::u3();
    let torus: Vec<Element> = (0..3).map(|i| alg.basis(i)).collect();
    let d = root_space_decomposition(&alg, &torus, DEFAULT_TOL).unwrap();
    let h0 = Element::new([2, 1, 3, 0, 0, 0, 0, 0, 0].into_iter().map(int).collect());
    choose_positive_system(&d, Some(&h0)).unwrap()
}

fn so3_datum() -> RootDatum {
    let alg = catalog::so3();
    root_space_decomposition(&alg, &[alg.basis(0)], DEFAULT_TOL).unwrap()
}

fn even_algebra_with_structure() -> impl Strategy<Value = (LieAlgebra, ComplexStructure, Element, Element)> {
    random_algebra()
        .prop_filter("even dimension", |g| g.dim() % 2 == 0)
        .prop_flat_map(|g| {
            let n = g.dim();
            (Just(g), random_structure_matrix(n), element(n), element(n))
        })
        .prop_map(|(g, m, x, y)| {
            let j = ComplexStructure::from_matrix(g.clone(), m).unwrap();
            (g, j, x, y)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_antisymmetric_and_matches_structure_constants((g, x, y, _) in algebra_with_elements()) {
        let xy = g.bracket(&x, &y).unwrap();
        prop_assert_eq!(xy.clone(), -g.bracket(&y, &x).unwrap());
        prop_assert_eq!(xy.into_coords(), bracket_oracle(&g, x.coords(), y.coords()));
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                prop_assert_eq!(g.basis_bracket(i, j).is_empty(), g.basis_bracket(j, i).is_empty());
                for k in 0..g.dim() {
                    prop_assert_eq!(g.structure_constant(i, j, k), -g.structure_constant(j, i, k));
                }
            }
        }
    }

    #[test]
    fn ad_is_a_derivation((g, x, y, _) in algebra_with_elements()) {
        prop_assert!(check_jacobi(&g).passed);
        let adx = g.ad_matrix(&x).unwrap();
        let ady = g.ad_matrix(&y).unwrap();
        let lhs = g.ad_matrix(&g.bracket(&x, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, adx.mul(&ady).sub(&ady.mul(&adx)));
    }

    #[test]
    fn killing_form_is_ad_invariant((g, x, y, z) in algebra_with_elements()) {
        let lhs = g.killing_form(&g.bracket(&x, &y).unwrap(), &z).unwrap();
        let rhs = -g.killing_form(&y, &g.bracket(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(g.killing_form(&x, &y).unwrap(), g.killing_form(&y, &x).unwrap());
    }

    #[test]
    fn vertical_subspace_is_abelian_ideal((g, x, y, z) in algebra_with_elements()) {
        let tg = tangent_algebra(&g).unwrap();
        let t = tg.total();
        let whole = tg.complete_lift(&x).unwrap() + tg.vertical_lift(&z).unwrap();
        let yv = tg.vertical_lift(&y).unwrap();
        prop_assert!(is_vertical(&tg, &t.bracket(&whole, &yv).unwrap()));
        prop_assert!(t.bracket(&tg.vertical_lift(&x).unwrap(), &yv).unwrap().is_zero());
    }

    #[test]
    fn lifts_respect_brackets((g, x, y, _) in algebra_with_elements()) {
        let tg = tangent_algebra(&g).unwrap();
        let t = tg.total();
        let (xc, yc) = (tg.complete_lift(&x).unwrap(), tg.complete_lift(&y).unwrap());
        let xy = g.bracket(&x, &y).unwrap();
        prop_assert_eq!(t.bracket(&xc, &yc).unwrap(), tg.complete_lift(&xy).unwrap());
        prop_assert_eq!(t.bracket(&xc, &tg.vertical_lift(&y).unwrap()).unwrap(), tg.vertical_lift(&xy).unwrap());
    }

    #[test]
    fn tangent_algebra_satisfies_jacobi(g in random_algebra()) {
        prop_assert!(check_jacobi(tangent_algebra(&g).unwrap().total()).passed);
    }

    #[test]
    fn nijenhuis_is_antisymmetric_and_tensorial(
        (_g, j, x, y) in even_algebra_with_structure(),
        l in small_rational(),
    ) {
        let nxy = nijenhuis(&j, &x, &y).unwrap();
        prop_assert_eq!(nxy.clone(), -nijenhuis(&j, &y, &x).unwrap());
        prop_assert!(nijenhuis(&j, &x, &x).unwrap().is_zero());
        prop_assert_eq!(nijenhuis(&j, &x.scale(&l), &y).unwrap(), nxy.scale(&l));
        let sum = nijenhuis(&j, &(x.clone() + y.clone()), &y).unwrap();
        prop_assert_eq!(sum, nxy + nijenhuis(&j, &y, &y).unwrap());
    }

    #[test]
    fn lifted_nijenhuis_restricts_to_base(
        (g, m, x, y) in proptest::sample::select(catalog::four_dimensional())
            .prop_flat_map(|g| (Just(g), random_structure_matrix(4), element(4), element(4))),
    ) {
        let j = ComplexStructure::from_matrix(g.clone(), m).unwrap();
        let tg = tangent_algebra(&g).unwrap();
        let lifted = lift_complex_structure(&tg, &j).unwrap();
        let base = nijenhuis(&j, &x, &y).unwrap();
        let (xc, yc, yv) = (
            tg.complete_lift(&x).unwrap(),
            tg.complete_lift(&y).unwrap(),
            tg.vertical_lift(&y).unwrap(),
        );
        prop_assert_eq!(nijenhuis(&lifted, &xc, &yc).unwrap(), tg.complete_lift(&base).unwrap());
        prop_assert_eq!(nijenhuis(&lifted, &xc, &yv).unwrap(), tg.vertical_lift(&base).unwrap());
    }

    #[test]
    fn tangent_structure_ignores_root_vector_scaling(
        u3 in any::<bool>(),
        factors in proptest::collection::vec(nonzero_gaussian(), 3),
    ) {
        let d = if u3 { u3_datum() } else { so3_datum() };
        let tg = tangent_algebra(d.algebra()).unwrap();
        let reference = build_tangent_samelson(&tg, &d).unwrap();
        let scaled = d.rescale_root_vectors(&factors[..d.roots().len()]).unwrap();
        let j = build_tangent_samelson(&tg, &scaled).unwrap();
        prop_assert_eq!(j.matrix(), reference.matrix());
    }
}

#[test]
fn tangent_structure_has_prescribed_plus_i_eigenspace() {
    let i = GaussianRational::i();
    for d in [so3_datum(), u3_datum()] {
        let tg = tangent_algebra(d.algebra()).unwrap();
        let j = build_tangent_samelson(&tg, &d).unwrap();
        let mut eigen: Vec<Element<GaussianRational>> = Vec::new();
        for h in d.torus() {
            let h = h.complexify();
            eigen.push(tg.complete_lift(&h).unwrap() - tg.vertical_lift(&h).unwrap().scale(&i));
        }
        for e in d.root_vectors() {
            eigen.push(tg.complete_lift(e).unwrap());
            eigen.push(tg.vertical_lift(e).unwrap());
        }
        assert_eq!(eigen.len(), tg.total().dim() / 2);
        for v in &eigen {
            assert_eq!(j.apply(v).unwrap(), v.scale(&i));
            // Conjugates span the -i eigenspace.
            assert_eq!(j.apply(&v.conj()).unwrap(), v.conj().scale(&-i.clone()));
        }
    }
}

#[test]
fn tangent_structure_block_sparsity() {
    for d in [so3_datum(), u3_datum()] {
        let tg = tangent_algebra(d.algebra()).unwrap();
        let j = build_tangent_samelson(&tg, &d).unwrap();
        for e in d.root_vectors() {
            for part in [e.real_part(), e.imag_part()] {
                let jc = j.apply(&tg.complete_lift(&part).unwrap()).unwrap();
                let (_, v) = tg.split(&jc).unwrap();
                assert!(v.is_zero(), "root plane leaks out of the c-block");
                let jv = j.apply(&tg.vertical_lift(&part).unwrap()).unwrap();
                assert!(is_vertical(&tg, &jv));
            }
        }
        for h in d.torus() {
            let jhv = j.apply(&tg.vertical_lift(h).unwrap()).unwrap();
            assert_eq!(jhv, -tg.complete_lift(h).unwrap());
        }
    }
}

#[test]
fn random_structure_matrices_square_to_minus_one() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::deterministic();
    for _ in 0..20 {
        let m = random_structure_matrix(4).new_tree(&mut runner).unwrap().current();
        let j = ComplexStructure::from_matrix(LieAlgebra::abelian(4), m).unwrap();
        assert!(j.squares_to_minus_identity());
    }
    assert_eq!(rat(2, 4), rat(1, 2));
}
