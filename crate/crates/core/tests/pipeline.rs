use derham_core::factor::{build_quotient, split, verify, SplitOptions};
use derham_core::genericity::{
    check_reduced, groebner_basis, prepare, CoeffIdeal, Reducedness, Witness,
};
use derham_core::{build_system, count_factors, is_generic, nullspace, Error, Polynomial};
use derham_oracle::{
    oracle_tuples, random_instance, random_linear_change, random_linear_form, random_polynomial,
    rng,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_tuples_span_the_kernel(seed in any::<u64>(), n in 2usize..4, k in 1usize..4) {
        let inst = random_instance(&mut rng(seed), n, k, 0);
        let sys = build_system(&inst.product).unwrap();
        let basis = nullspace(&sys).unwrap();
        prop_assert_eq!(basis.dim(), k);
        for t in oracle_tuples(&inst.factors) {
            prop_assert!(sys.contains(&t.parts));
            prop_assert!(t.parts.is_closed(&inst.product));
        }
    }

    #[test]
    fn count_of_linear_products(seed in any::<u64>(), n in 2usize..5, k in 1usize..5) {
        let inst = random_instance(&mut rng(seed), n, k, 0);
        prop_assert_eq!(count_factors(&inst.product).unwrap(), k);
    }

    #[test]
    fn count_is_coordinate_free(seed in any::<u64>(), k in 1usize..4, q in 0usize..2) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 3, k, q.min(k));
        let t = random_linear_change(&mut r, 3);
        let moved = inst.product.apply_change(&t).unwrap();
        prop_assert_eq!(count_factors(&moved).unwrap(), k);
    }

    #[test]
    fn quotient_components_are_orthogonal_idempotents(seed in any::<u64>(), k in 1usize..4) {
        let inst = random_instance(&mut rng(seed), 3, k, 0);
        let prep = prepare(&inst.product).unwrap();
        let w = &prep.working;
        let v = prep.variable;
        let factors: Vec<Polynomial> = match &prep.change {
            Some(t) => inst.factors.iter().map(|f| f.apply_change(t).unwrap()).collect(),
            None => inst.factors.clone(),
        };
        let parts: Vec<Polynomial> =
            oracle_tuples(&factors).iter().map(|t| t.parts.part(v).clone()).collect();
        let dw = w.derivative(v);
        for (i, a) in parts.iter().enumerate() {
            prop_assert!((&(a * a) - &(&dw * a)).normal_form(w).unwrap().is_zero());
            for b in &parts[i + 1..] {
                prop_assert!((a * b).normal_form(w).unwrap().is_zero());
            }
        }
        let basis = nullspace(&build_system(w).unwrap()).unwrap();
        let ctx = build_quotient(w, &basis, v).unwrap();
        prop_assert_eq!(ctx.component_classes().len(), k);
    }

    #[test]
    fn split_round_trip(seed in any::<u64>(), n in 2usize..4, k in 1usize..4, q in 0usize..2) {
        let inst = random_instance(&mut rng(seed), n, k, q.min(k));
        let r = split(&inst.product, SplitOptions { seed, max_retries: 8 }).unwrap();
        prop_assert!(r.is_complete());
        prop_assert!(r.residual.is_one());
        prop_assert!(verify(&inst.product, &r));
        for f in &inst.factors {
            prop_assert_eq!(r.factors.iter().filter(|g| g.is_associate(f)).count(), 1);
        }
    }

    #[test]
    fn genericity_agrees_with_groebner(seed in any::<u64>(), var in 0usize..3) {
        let p = random_polynomial(&mut rng(seed), 3, 4, 4);
        prop_assume!(p.contains_var(var));
        let report = is_generic(&p, var).unwrap();
        let gb = groebner_basis(&CoeffIdeal::of(&p, var).generators).unwrap();
        let unit = gb.len() == 1 && gb[0].is_one();
        prop_assert_eq!(report.is_generic, unit);
        if let Witness::Basis(g) = &report.witness {
            prop_assert_eq!(g, &gb);
        }
    }

    #[test]
    fn squares_are_caught(seed in any::<u64>(), k in 1usize..3) {
        let mut r = rng(seed);
        let inst = random_instance(&mut r, 3, k, 0);
        let l = random_linear_form(&mut r, 3);
        prop_assume!(!l.is_constant());
        let p = &inst.product * &(&l * &l);
        match prepare(&p) {
            Err(Error::NotReduced { witness }) => prop_assert!(l.divides(&witness)),
            other => prop_assert!(false, "expected NotReduced, got {:?}", other.map(|_| ())),
        }
        let prep = prepare(&inst.product).unwrap();
        prop_assert_eq!(check_reduced(&prep.working, prep.variable).unwrap(), Reducedness::Reduced);
    }
}
