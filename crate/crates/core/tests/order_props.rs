mod common;

use std::collections::BTreeSet;

use borderbasis::field::{Monomial, RationalFunction};
use borderbasis::order::{is_order_ideal, OrderIdeal};
use borderbasis::weyl::Operator;
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ideal(seed: u64) -> OrderIdeal {
    let r = &mut ChaCha8Rng::seed_from_u64(seed);
    let n = r.gen_range(1..=4);
    let extra = r.gen_range(0..=11);
    random_order_ideal(r, n, extra)
}

/// Degrevlex written out independently: degree, then the reversed
/// exponents with the sign flipped.
fn degrevlex_key(m: &Monomial) -> (u32, Vec<i32>) {
    (m.degree(), m.exponents().iter().rev().map(|&e| -(e as i32)).collect())
}

fn all_monomials(n: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut layer = out.clone();
    for _ in 0..max_deg {
        let next: BTreeSet<Monomial> = layer
            .iter()
            .flat_map(|m| (0..n).map(move |i| m.times_var(i)))
            .collect();
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn border_is_outside_and_closes_down(seed in any::<u64>()) {
        let o = ideal(seed);
        let border = o.border();
        prop_assert!(border.iter().all(|b| !o.contains(b)));
        let union: Vec<Monomial> = o.elements().iter().chain(border.iter()).cloned().collect();
        prop_assert!(is_order_ideal(&union));
    }

    #[test]
    fn enumerations_ascend_in_degrevlex(seed in any::<u64>()) {
        let o = ideal(seed);
        let asc = |v: &[Monomial]| v.windows(2).all(|w| degrevlex_key(&w[0]) < degrevlex_key(&w[1]));
        prop_assert!(asc(o.elements()));
        prop_assert!(asc(&o.border()));
    }

    #[test]
    fn borders_partition_low_degrees(seed in any::<u64>()) {
        let o = ideal(seed);
        let top = 4u32;
        let layers: Vec<Vec<Monomial>> = (0..=top + 4).map(|k| o.kth_border(k)).collect();
        let mut seen = BTreeSet::new();
        for layer in &layers {
            for m in layer {
                prop_assert!(seen.insert(m.clone()), "{:?} in two borders", m);
            }
        }
        // a monomial of degree d lies in some border of index at most d
        for m in all_monomials(o.n(), top) {
            let k = o.index_mono(&m);
            prop_assert!(k <= m.degree());
            prop_assert!(layers[k as usize].contains(&m));
        }
    }

    #[test]
    fn corners_minimally_generate(seed in any::<u64>()) {
        let o = ideal(seed);
        let corners = o.corners();
        let border = o.border();
        prop_assert!(corners.iter().all(|c| border.contains(c)));
        for c in &corners {
            // dropping c loses c itself from the generated monomial ideal
            prop_assert!(!corners.iter().any(|d| d != c && d.divides(c)));
        }
        // and together they generate everything outside O
        for m in all_monomials(o.n(), 4) {
            prop_assert_eq!(o.contains(&m), !corners.iter().any(|c| c.divides(&m)));
        }
    }
}

#[test]
fn index_of_operators_on_the_square() {
    let o = OrderIdeal::from_exponents(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let d = |e: &[u16]| Operator::monomial(mono(e), 2);
    let inv = RationalFunction::var(2, 0).inv().unwrap();
    let f = d(&[2, 0]).add(&d(&[1, 0]).scale_left(&inv));
    assert_eq!(o.index_op(&f).unwrap(), 1);
    let g = d(&[3, 0]).add(&d(&[0, 2]));
    assert_eq!(o.index_op(&g).unwrap(), 2);
}
