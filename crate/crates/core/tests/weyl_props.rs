mod common;

use borderbasis::field::{RationalFunction, VarTable};
use borderbasis::text::{parse_operator, print_operator, Context};
use borderbasis::weyl::{Operator, RingKind};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const N: usize = 2;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn op(r: &mut ChaCha8Rng, deg: u16) -> Operator {
    random_operator(r, N, N, RingKind::Weyl, deg, 3)
}

fn ctx() -> Context {
    Context::new(VarTable::new(["x1", "x2"], Vec::<String>::new()).unwrap(), RingKind::Weyl)
}

fn x(i: usize) -> Operator {
    Operator::from_coeff(N, RationalFunction::var(N, i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn action_is_a_module_action(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let (p, q) = (op(r, 3), op(r, 3));
        let f = random_rf(r, N, N);
        prop_assert_eq!(p.mul(&q).apply(&f), p.apply(&q.apply(&f)));
    }

    #[test]
    fn sums_add_coefficients(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let (f, g) = (random_rf(r, N, N), random_rf(r, N, N));
        let d1 = Operator::d(N, N, 0);
        let lhs = d1.scale_left(&f).add(&d1.scale_left(&g));
        prop_assert_eq!(lhs, d1.scale_left(&f.add(&g)));
    }

    #[test]
    fn derivation_past_reciprocal(seed in any::<u64>()) {
        // d1^2 * (1/x1) = (1/x1) d1^2 - (2/x1^2) d1 + 2/x1^3, checked by its action
        let r = &mut rng(seed);
        let d1 = Operator::d(N, N, 0);
        let inv = RationalFunction::var(N, 0).inv().unwrap();
        let lhs = d1.pow(2).mul(&Operator::from_coeff(N, inv.clone()));
        for _ in 0..20 {
            let f = random_rf(r, N, N);
            let expected = inv.mul(&f.derive(0).derive(0))
                .sub(&inv.pow(2).mul(&f.derive(0)).scale_by(&borderbasis::field::rat(2)))
                .add(&inv.pow(3).mul(&f).scale_by(&borderbasis::field::rat(2)));
            prop_assert_eq!(lhs.apply(&f), expected);
        }
    }

    #[test]
    fn print_then_parse_is_the_identity(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let c = ctx();
        let p = op(r, 3);
        let text = print_operator(&p, &c);
        let back = parse_operator(&text, &c, 1).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(print_operator(&back, &c), text);
    }

    #[test]
    fn commutator_is_antisymmetric(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let (p, q) = (op(r, 2), op(r, 2));
        prop_assert_eq!(p.commutator(&q), q.commutator(&p).neg());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let (p, q, s) = (op(r, 3), op(r, 3), op(r, 3));
        prop_assert_eq!(p.mul(&q).mul(&s), p.mul(&q.mul(&s)));
    }
}

#[test]
fn euler_operator_commutator() {
    let theta = x(0).mul(&Operator::d(N, N, 0));
    assert_eq!(theta.commutator(&x(0)), x(0));
}

#[test]
fn mixed_order_input_is_normalized() {
    let c = ctx();
    let p = parse_operator("d1*x1*d2 - x1*d2*d1", &c, 1).unwrap();
    assert_eq!(print_operator(&p, &c), "d2");
}
