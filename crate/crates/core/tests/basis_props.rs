mod common;

use borderbasis::basis::{
    corner_subset, ideal_equal, is_border_basis_comm, is_border_basis_weyl, membership,
    mult_matrices,
};
use borderbasis::division::{border_divide, BorderPrebasis};
use borderbasis::field::{rat, RationalFunction};
use borderbasis::weyl::{Operator, RingKind};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn perturbed(g: &BorderPrebasis, j: usize, i: usize) -> BorderPrebasis {
    let mut coeffs: Vec<Vec<RationalFunction>> =
        (0..g.border().len()).map(|s| g.coeff_column(s).to_vec()).collect();
    coeffs[j][i] = coeffs[j][i].add(&RationalFunction::one(g.nvars()));
    BorderPrebasis::new(g.order().clone(), coeffs, g.ring(), g.nvars()).unwrap()
}

/// The same coefficients read as a prebasis of the other ring.
fn in_ring(g: &BorderPrebasis, ring: RingKind) -> BorderPrebasis {
    let coeffs = (0..g.border().len()).map(|s| g.coeff_column(s).to_vec()).collect();
    BorderPrebasis::new(g.order().clone(), coeffs, ring, g.nvars()).unwrap()
}

fn pairwise_commute(g: &BorderPrebasis) -> bool {
    let mm = mult_matrices(g);
    (0..g.n()).all(|i| (i + 1..g.n()).all(|j| mm.mats[i].commutator(&mm.mats[j]).is_zero()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Column k of M_i is the remainder of X_i t_k (resp. d_i t_k).
    #[test]
    fn matrices_agree_with_division(seed in any::<u64>()) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let ring = if r.gen_bool(0.5) { RingKind::Weyl } else { RingKind::Commutative };
        let n = r.gen_range(1..=3);
        let extra = r.gen_range(0..=4);
        let o = random_order_ideal(r, n, extra);
        let g = random_prebasis(r, &o, ring);
        let mm = mult_matrices(&g);
        for i in 0..n {
            for (k, t) in o.elements().iter().enumerate() {
                let f = Operator::monomial(t.times_var(i), n);
                let rem = border_divide(&f, &g).unwrap().remainder;
                prop_assert_eq!(rem, mm.mats[i].column(k));
            }
        }
    }

    /// With constant coefficients the Weyl criterion is commutation.
    #[test]
    fn constant_weyl_criterion_is_commutation(seed in any::<u64>()) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=3);
        let extra = r.gen_range(0..=3);
        let o = random_order_ideal(r, n, extra);
        let g = random_prebasis(r, &o, RingKind::Commutative);
        let w = in_ring(&g, RingKind::Weyl);
        prop_assert_eq!(is_border_basis_weyl(&w), pairwise_commute(&g));
        prop_assert_eq!(is_border_basis_comm(&g), pairwise_commute(&g));
    }

    #[test]
    fn multiples_of_generators_are_members(seed in any::<u64>()) {
        let r = &mut ChaCha8Rng::seed_from_u64(seed);
        let f = ["commutative/border_basis.session", "running/j_o1.session", "stringy/o1.session"]
            [r.gen_range(0..3)];
        let g = load(f).prebasis().unwrap();
        let b = g.verify().unwrap();
        let j = r.gen_range(0..g.border().len());
        let h = random_operator(r, g.n(), g.nvars(), g.ring(), 2, 3);
        prop_assert!(membership(&h.mul_in(&g.generator(j), g.ring()), &b).unwrap());
    }
}

/// Two border bases of one ideal for one order ideal coincide: the basis
/// is recovered from its own multiplication matrices.
#[test]
fn basis_is_determined_by_its_matrices() {
    for f in [
        "commutative/border_basis.session",
        "running/j_o1.session",
        "stringy/o1.session",
        "cosmological/o2.session",
    ] {
        let g = load(f).prebasis().unwrap();
        let mm = mult_matrices(&g);
        let o = g.order();
        let coeffs = g
            .border()
            .iter()
            .map(|b| {
                // b = X_i t_k for some t_k in O
                let (i, k) = b
                    .support()
                    .find_map(|i| b.div_var(i).and_then(|t| o.position(&t)).map(|k| (i, k)))
                    .unwrap();
                mm.mats[i].column(k)
            })
            .collect();
        let rebuilt = BorderPrebasis::new(o.clone(), coeffs, g.ring(), g.nvars()).unwrap();
        assert_eq!(rebuilt, g, "{f}");
    }
}

#[test]
fn perturbations_break_the_criterion() {
    let g = load("commutative/border_basis.session").prebasis().unwrap();
    assert!(is_border_basis_comm(&g));
    for j in 0..g.border().len() {
        for i in 0..g.order().len() {
            assert!(!is_border_basis_comm(&perturbed(&g, j, i)), "g_{j}, t_{i}");
        }
    }
    let s = load("stringy/o1.session").prebasis().unwrap();
    assert!(is_border_basis_weyl(&s));
    assert!(!is_border_basis_weyl(&perturbed(&s, 1, 0)));
}

#[test]
fn changed_generator_leaves_the_ideal() {
    let s = load("running/j_o1.session");
    let g = s.prebasis().unwrap();
    let b = g.verify().unwrap();
    let dy = borderbasis::text::parse_monomial("dy", &s.ctx, 1).unwrap();
    let j = g.marker_position(&dy).unwrap();
    let changed = g.generator(j).add(&Operator::from_coeff(2, RationalFunction::constant(2, rat(1))));
    assert!(!membership(&changed, &b).unwrap());
    // a verified basis equals itself and its copy in the other order ideal
    let b2 = load("running/j_o2.session").prebasis().unwrap().verify().unwrap();
    assert!(ideal_equal(&b, &b).unwrap());
    assert!(ideal_equal(&b, &b2).unwrap());
}

#[test]
fn corner_elements_are_marked_by_corners() {
    for f in ["commutative/border_basis.session", "stringy/o1.session", "cosmological/o2.session"] {
        let b = load(f).prebasis().unwrap().verify().unwrap();
        let sub = corner_subset(&b);
        let markers: Vec<_> = sub.iter().map(|(m, _)| m.clone()).collect();
        assert_eq!(markers, b.order().corners(), "{f}");
        for (m, p) in &sub {
            assert!(!p.coeff(m).is_zero());
            assert_eq!(p.coeff(m), RationalFunction::one(b.nvars()));
        }
    }
}
