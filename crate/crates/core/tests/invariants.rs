use proptest::prelude::*;

use superh_core::diffops::{generators, laplace_beltrami, nabla2, r2};
use superh_core::harmonic::{harmonic_basis, harmonic_pieces, projection_q, shared_basis};
use superh_core::integration::pizzetti;
use superh_core::linalg::{kernel, rank, rank_mod_p, SparseVec};
use superh_core::modules::{normal_form, submodule_closure, RepSpace, SpaceKind, SpaceSpec};
use superh_core::{Rational, SuperPolynomial, Superspace};

fn cell() -> impl Strategy<Value = (usize, usize, usize)> {
    (1usize..=3, 0usize..=2, 0usize..=4)
}

fn combination(vectors: &[SuperPolynomial], coeffs: &[i64]) -> SuperPolynomial {
    vectors.iter().zip(coeffs.iter().cycle()).map(|(v, &c)| v.scale(&Rational::from(c))).sum()
}

fn random_in_pk(m: usize, n: usize, k: usize, coeffs: &[i64]) -> SuperPolynomial {
    let basis = shared_basis(m, n, k);
    let polys: Vec<_> = (0..basis.len()).map(|i| basis.element(i)).collect();
    combination(&polys, coeffs)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-5i64..=5, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_commute_with_laplace_beltrami((m, n, k) in cell(), c in coeffs()) {
        let f = random_in_pk(m, n, k, &c);
        let lb = laplace_beltrami(m, n);
        for (_, g, _) in generators(&Superspace::new(m, n)) {
            prop_assert_eq!(lb.apply(&g.apply(&f)), g.apply(&lb.apply(&f)));
        }
    }

    #[test]
    fn generators_preserve_harmonics((m, n, k) in cell(), c in coeffs()) {
        let h = combination(&harmonic_basis(m, n, k).polynomials(), &c);
        let lap = nabla2(m, n);
        for (_, g, _) in generators(&Superspace::new(m, n)) {
            prop_assert!(lap.apply(&g.apply(&h)).is_zero());
        }
    }

    #[test]
    fn integral_is_invariant((m, n, k) in cell(), c in coeffs()) {
        let f = random_in_pk(m, n, k, &c);
        for (_, g, _) in generators(&Superspace::new(m, n)) {
            prop_assert!(pizzetti(&g.apply(&f), m, n).unwrap().is_zero());
        }
        prop_assert_eq!(pizzetti(&(&r2(m, n) * &f), m, n).unwrap(), pizzetti(&f, m, n).unwrap());
    }

    #[test]
    fn projections_resolve_the_identity((m, n, k) in cell(), c in coeffs()) {
        let h = combination(&harmonic_basis(m, n, k).polynomials(), &c);
        let total: SuperPolynomial = harmonic_pieces(m, n, k)
            .unwrap()
            .iter()
            .map(|pc| projection_q(pc.l, pc.q, k, m, n).unwrap().apply(&h))
            .sum();
        prop_assert_eq!(total, h);
    }

    #[test]
    fn closures_are_submodules((m, n, k) in (2usize..=3, 0usize..=2, 0usize..=3), c in coeffs()) {
        let rep = RepSpace::new(SpaceSpec::new(SpaceKind::HkModSub, m, n, k)).unwrap();
        prop_assume!(rep.dim() > 0);
        let seed: SparseVec = (0..rep.dim()).map(|i| (i, Rational::from(c[i % c.len()]))).collect();
        let closure = submodule_closure(&rep, std::slice::from_ref(&seed));
        prop_assert!(closure.contains(&seed));
        for g in &rep.generators {
            for v in closure.basis() {
                prop_assert!(closure.contains(&g.matrix.apply(v)));
            }
        }
    }

    #[test]
    fn normal_form_is_a_projection_killing_radial_multiples((m, n, k) in (2usize..=3, 0usize..=2, 0usize..=3), c in coeffs()) {
        let f = random_in_pk(m, n, k, &c);
        prop_assert!(normal_form(&(&r2(m, n) * &f), m, n).is_zero());
        let nf = normal_form(&f, m, n);
        prop_assert_eq!(normal_form(&nf, m, n), nf);
    }

    #[test]
    fn kernel_and_modular_rank(entries in prop::collection::vec(-3i64..=3, 12..=30)) {
        let rows = 4;
        let cols: Vec<SparseVec> = entries
            .chunks(rows)
            .map(|ch| (0..ch.len()).map(|i| (i, Rational::from(ch[i]))).filter(|(_, c)| *c != Rational::from(0)).collect())
            .collect();
        let ker = kernel(&cols);
        let r = rank(&cols, rows);
        prop_assert_eq!(ker.dim() + r, cols.len());
        prop_assert_eq!(rank_mod_p(&cols), Some(r));
        for v in ker.basis() {
            let mut image = SparseVec::zero();
            for (j, a) in v.iter() {
                image = image.axpy(a, &cols[j]);
            }
            prop_assert!(image.is_zero());
        }
    }
}
