mod common;

use borderbasis::field::{rat, rf_derive, QPoly, RationalFunction, VarTable};
use common::*;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NV: usize = 3;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_poly(r: &mut ChaCha8Rng, deg: u16, terms: usize) -> QPoly {
    loop {
        let p = random_poly(r, NV, NV, deg, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

fn point(r: &mut ChaCha8Rng) -> Vec<BigRational> {
    (0..NV)
        .map(|_| BigRational::new(r.gen_range(-9..=9).into(), r.gen_range(1..=5).into()))
        .collect()
}

/// Equality by cross-multiplication, independent of the canonical form.
fn cross_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.num().mul(&b.den()) == b.num().mul(&a.den())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn common_factors_cancel(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let p = random_poly(r, NV, NV, 2, 3);
        let q = nonzero_poly(r, 2, 3);
        let g = nonzero_poly(r, 1, 2);
        let lhs = RationalFunction::make(&p.mul(&g), &q.mul(&g)).unwrap();
        let rhs = RationalFunction::make(&p, &q).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(cross_equal(&lhs, &RationalFunction::make(&p, &q).unwrap()));
    }

    #[test]
    fn inverse_gives_one(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let a = random_nonzero_rf(r, NV, NV);
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_rf(r, NV, NV);
        let g = random_rf(r, NV, NV);
        let i = r.gen_range(0..NV);
        let lhs = f.mul(&g).derive(i);
        let rhs = f.derive(i).mul(&g).add(&f.mul(&g.derive(i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_commute(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_rf(r, NV, NV);
        let (i, j) = (r.gen_range(0..NV), r.gen_range(0..NV));
        prop_assert_eq!(f.derive(i).derive(j), f.derive(j).derive(i));
    }

    #[test]
    fn evaluation_is_a_homomorphism(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let f = random_rf(r, NV, NV);
        let g = random_rf(r, NV, NV);
        let x = point(r);
        if let (Some(fx), Some(gx)) = (f.eval(&x), g.eval(&x)) {
            // the sum and product are defined wherever both summands are
            prop_assert_eq!(f.add(&g).eval(&x), Some(&fx + &gx));
            prop_assert_eq!(f.mul(&g).eval(&x), Some(&fx * &gx));
        }
    }

    #[test]
    fn zero_is_neutral(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let a = random_rf(r, NV, NV);
        prop_assert_eq!(RationalFunction::zero(NV).add(&a), a.clone());
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division_of_products(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let a = random_poly(r, NV, NV, 2, 3);
        let b = nonzero_poly(r, 2, 3);
        prop_assert_eq!(a.mul(&b).exact_div(&b), Some(a));
    }

    #[test]
    fn parameters_are_constants(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let vars = VarTable::new(["x1", "x2"], ["s"]).unwrap();
        let f = random_rf(r, NV, NV);
        prop_assert!(rf_derive(&f, 2, &vars).is_err());
        let s = RationalFunction::var(NV, 2);
        prop_assert!(rf_derive(&s, 0, &vars).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Structural equality agrees with cross-multiplication.
    #[test]
    fn canonical_form_is_unique(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let a = random_rf(r, NV, NV);
        // either the same function in a different presentation, or another one
        let b = if r.gen_bool(0.5) {
            let g = nonzero_poly(r, 1, 2);
            let k = rat(r.gen_range(1..=4));
            RationalFunction::make(&a.num().mul(&g).scale(&k), &a.den().mul(&g).scale(&k)).unwrap()
        } else {
            random_rf(r, NV, NV)
        };
        prop_assert_eq!(a == b, cross_equal(&a, &b));
    }
}

#[test]
fn quotient_rule_examples() {
    let x = RationalFunction::var(1, 0);
    let inv = x.inv().unwrap();
    assert_eq!(inv.derive(0), inv.pow(2).neg());
    let vars = VarTable::new(["x1", "x2"], ["s12"]).unwrap();
    let f = vars.var("s12").unwrap().div(&vars.var("x1").unwrap()).unwrap();
    assert!(rf_derive(&f, 1, &vars).unwrap().is_zero());
}
