use derham_core::poly::{gcd, rat};
use derham_core::{parse, print, Polynomial, Rational, VarTable};
use derham_oracle::{random_linear_change, random_polynomial, rng};
use proptest::prelude::*;
use rand::Rng;

fn poly(seed: u64, n: usize, terms: usize, deg: u32) -> Polynomial {
    random_polynomial(&mut rng(seed), n, terms, deg)
}

fn point(seed: u64, n: usize) -> Vec<Rational> {
    let mut r = rng(seed);
    (0..n).map(|_| rat(r.random_range(-9..=9))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivative_is_a_derivation(a in any::<u64>(), b in any::<u64>(), var in 0usize..3) {
        let (p, q) = (poly(a, 3, 6, 4), poly(b, 3, 6, 4));
        let lhs = (&p * &q).derivative(var);
        let rhs = &(&p.derivative(var) * &q) + &(&p * &q.derivative(var));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&p + &q).derivative(var), &p.derivative(var) + &q.derivative(var));
    }

    #[test]
    fn division_contract(a in any::<u64>(), b in any::<u64>()) {
        let (p, d) = (poly(a, 3, 8, 5), poly(b, 3, 4, 3));
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, p);
        let lm = d.leading_monomial().unwrap();
        prop_assert!(r.terms().iter().all(|(m, _)| !lm.divides(m)));
    }

    #[test]
    fn exact_division_of_products(a in any::<u64>(), b in any::<u64>()) {
        let (p, d) = (poly(a, 3, 5, 3), poly(b, 3, 4, 3));
        prop_assume!(!d.is_zero());
        prop_assert_eq!((&p * &d).div_exact(&d), Some(p));
    }

    #[test]
    fn gcd_contract(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (p, q, common) = (poly(a, 3, 4, 3), poly(b, 3, 4, 3), poly(c, 3, 3, 2));
        prop_assume!(!p.is_zero() && !q.is_zero() && !common.is_zero());
        let (pc, qc) = (&p * &common, &q * &common);
        let g = gcd(&pc, &qc).unwrap();
        prop_assert!(g.divides(&pc) && g.divides(&qc));
        prop_assert!(common.divides(&g));
        let cofactors = (pc.div_exact(&g).unwrap(), qc.div_exact(&g).unwrap());
        prop_assert!(gcd(&cofactors.0, &cofactors.1).unwrap().is_constant());
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in any::<u64>(), b in any::<u64>(), s in any::<u64>()) {
        let (p, q) = (poly(a, 3, 6, 4), poly(b, 3, 6, 4));
        let x = point(s, 3);
        let (ep, eq) = (p.evaluate(&x).unwrap(), q.evaluate(&x).unwrap());
        prop_assert_eq!((&p * &q).evaluate(&x).unwrap(), &ep * &eq);
        prop_assert_eq!((&p - &q).evaluate(&x).unwrap(), &ep - &eq);
    }

    #[test]
    fn linear_changes_invert_and_multiply(a in any::<u64>(), b in any::<u64>(), s in any::<u64>()) {
        let (p, q) = (poly(a, 3, 5, 3), poly(b, 3, 5, 3));
        let t = random_linear_change(&mut rng(s), 3);
        let tp = p.apply_change(&t).unwrap();
        prop_assert_eq!(tp.apply_change(&t.inverse()).unwrap(), p.clone());
        prop_assert_eq!((&p * &q).apply_change(&t).unwrap(), &tp * &q.apply_change(&t).unwrap());
    }

    #[test]
    fn print_then_parse_is_identity(a in any::<u64>(), n in 1usize..5) {
        let names = ["x", "y", "z", "w"];
        let vars = VarTable::new(&names[..n]).unwrap();
        let p = poly(a, n, 10, 6);
        let text = print(&p, &vars).unwrap();
        prop_assert_eq!(parse(&text, &vars).unwrap(), p);
    }
}
