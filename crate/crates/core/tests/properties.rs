use proptest::prelude::*;

use sea_roots::harness::{AxiomId, Harness};
use sea_roots::{
    map_f, map_g, map_g3, oracle_full_product, parse_element, AlgebraConfig, Branch, E0Instance, Element, Int,
    SampleWindow, TruncPoly,
};

/// Coefficients far outside any window, including values that overflow i64
/// once multiplied.
fn coeff() -> impl Strategy<Value = Int> {
    prop_oneof![
        3 => -3i64..=3,
        1 => any::<i64>(),
    ]
    .prop_map(Int::from)
}

fn poly(cfg: AlgebraConfig) -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(coeff(), cfg.width()).prop_map(move |mut ks| {
        if ks.iter().find(|k| **k != Int::ZERO).is_some_and(|k| *k < Int::ZERO) {
            ks.iter_mut().for_each(|k| *k = -k.clone());
        }
        TruncPoly::new(cfg, ks).unwrap()
    })
}

fn element(cfg: AlgebraConfig) -> impl Strategy<Value = Element> {
    (any::<bool>(), poly(cfg), poly(cfg), coeff()).prop_map(move |(g, p, q, m)| {
        let branch = if g { Branch::G } else { Branch::F };
        let m = if p.is_zero() && q.is_zero() && m < Int::ZERO { -m } else { m };
        Element::make(cfg, branch, p, q, m).unwrap()
    })
}

fn config() -> impl Strategy<Value = AlgebraConfig> {
    (2usize..=6).prop_map(|n| AlgebraConfig::new(n).unwrap())
}

fn pair() -> impl Strategy<Value = (Element, Element)> {
    config().prop_flat_map(|c| (element(c), element(c)))
}

fn triple() -> impl Strategy<Value = (Element, Element, Element)> {
    config().prop_flat_map(|c| (element(c), element(c), element(c)))
}

proptest! {
    #[test]
    fn oplus_commutes((a, b) in pair()) {
        prop_assert_eq!(a.oplus(&b).unwrap(), b.oplus(&a).unwrap());
    }

    #[test]
    fn oplus_associates((a, b, c) in triple()) {
        let left = a.oplus(&b).unwrap().into_option().and_then(|ab| ab.oplus(&c).unwrap().into_option());
        let right = b.oplus(&c).unwrap().into_option().and_then(|bc| a.oplus(&bc).unwrap().into_option());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn orthosupplement_is_the_complement(a in config().prop_flat_map(element)) {
        let one = Element::one(a.config());
        let comp = a.orthosupplement();
        prop_assert_eq!(a.oplus(&comp).unwrap().into_option(), Some(one));
        prop_assert_eq!(comp.orthosupplement(), a);
    }

    #[test]
    fn seq_is_commutative_and_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.seq(&b).unwrap(), b.seq(&a).unwrap());
        let left = a.seq(&b).unwrap().seq(&c).unwrap();
        let right = a.seq(&b.seq(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn seq_distributes_over_oplus((a, b, c) in triple()) {
        if let Some(bc) = b.oplus(&c).unwrap().into_option() {
            let lhs = a.seq(&bc).unwrap();
            let rhs = a.seq(&b).unwrap().oplus(&a.seq(&c).unwrap()).unwrap().into_option();
            prop_assert_eq!(Some(lhs), rhs);
        }
    }

    #[test]
    fn constants((a, _) in pair()) {
        let cfg = a.config();
        prop_assert_eq!(Element::one(cfg).seq(&a).unwrap(), a.clone());
        prop_assert!(Element::zero(cfg).le(&a).unwrap());
        prop_assert!(a.le(&Element::one(cfg)).unwrap());
    }

    #[test]
    fn order_matches_difference((a, b) in pair()) {
        // a ≤ a ⊕ b whenever defined, and the difference recovers b
        if let Some(sum) = a.oplus(&b).unwrap().into_option() {
            prop_assert!(a.le(&sum).unwrap());
            prop_assert_eq!(sum.ominus(&a).unwrap(), b.clone());
        }
        if a.le(&b).unwrap() {
            let d = b.ominus(&a).unwrap();
            prop_assert_eq!(a.oplus(&d).unwrap().into_option(), Some(b.clone()));
        } else {
            prop_assert!(b.ominus(&a).is_err());
        }
        prop_assert_eq!(a.oplus(&b).unwrap().is_defined(), a.le(&b.orthosupplement()).unwrap());
    }

    #[test]
    fn powers_agree_with_repeated_products(a in config().prop_flat_map(element), k in 1u64..6) {
        let mut acc = a.clone();
        for _ in 1..k {
            acc = a.seq(&acc).unwrap();
        }
        prop_assert_eq!(a.power(k).unwrap(), acc);
    }

    #[test]
    fn f_and_g_match_the_full_product(
        (p1, p2, p3) in config().prop_flat_map(|c| (poly(c), poly(c), poly(c)))
    ) {
        let full = oracle_full_product(&[&p1, &p2]).unwrap();
        let f = map_f(&p1, &p2).unwrap();
        prop_assert_eq!(f.coeffs().to_vec(), full.truncated());
        prop_assert_eq!(map_g(&p1, &p2).unwrap(), full.degree_n());
        let full3 = oracle_full_product(&[&p1, &p2, &p3]).unwrap();
        prop_assert_eq!(map_g3(&p1, &p2, &p3).unwrap(), full3.degree_n());
    }

    #[test]
    fn text_round_trips(a in config().prop_flat_map(element)) {
        let text = a.to_string();
        prop_assert_eq!(parse_element(a.config(), &text).unwrap(), a);
    }

    #[test]
    fn sampled_reports_are_deterministic(seed in any::<u64>(), n in 2usize..=4) {
        let inst = E0Instance::new(AlgebraConfig::new(n).unwrap());
        let w = SampleWindow::sampled(2, 2, 200, seed);
        let harness = Harness::default();
        let run = || serde_json::to_string(&harness.run_suite(&inst, &[AxiomId::Ea2, AxiomId::Sea4], &w).unwrap()).unwrap();
        prop_assert_eq!(run(), run());
    }
}

#[test]
fn window_count_golden() {
    let cfg = AlgebraConfig::new(2).unwrap();
    let w = SampleWindow::exhaustive(1, 1);
    assert_eq!(sea_roots::window::elements(cfg, &w).len(), 22);
    assert_eq!(sea_roots::window::element_count(cfg, &w), Some(22));
    let cfg3 = AlgebraConfig::new(3).unwrap();
    assert_eq!(sea_roots::window::element_count(cfg3, &SampleWindow::exhaustive(2, 2)), Some(1686));
}
