use num_bigint::BigInt;
use proptest::prelude::*;

use spingw::algebra::{format_rational, parse_rational, DegreeSeries, Rational, SymbolicCombo};
use spingw::closed_forms::{mp_descendant, InvariantKey, Parity, SpinKey};
use spingw::partitions::partitions_of;
use spingw::sum_engine::{reduce_genus_zero, separating_split, verify_mp_reduction};
use spingw::trr::{Flavor, MixedExpr, PurePhiSymbol, Reducer, Strategy as Order};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(max_order: usize) -> impl Strategy<Value = DegreeSeries> {
    (1..=max_order).prop_flat_map(|order| {
        prop::collection::vec(small_rational(), order).prop_map(move |cs| {
            DegreeSeries::from_coeffs(order, cs.into_iter().enumerate().map(|(i, c)| (i + 1, c)))
                .unwrap()
        })
    })
}

fn combo() -> impl Strategy<Value = SymbolicCombo> {
    prop::collection::vec((0usize..5, small_rational()), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .fold(SymbolicCombo::zero(), |acc, (i, c)| {
                acc.add(&SymbolicCombo::symbol(["A", "B", "C", "D", "E"][i]).scale(&c))
            })
    })
}

fn spin_key(h_max: u32) -> impl Strategy<Value = SpinKey> {
    (0..=h_max, any::<bool>()).prop_map(|(h, odd)| {
        let p = if odd && h > 0 {
            Parity::Odd
        } else {
            Parity::Even
        };
        SpinKey::new(h, p).unwrap()
    })
}

fn mixed_expr() -> impl Strategy<Value = MixedExpr> {
    (
        1u32..=5,
        0u32..=3,
        prop::collection::vec((0u32..=3, 0u32..=2), 3..=5),
        any::<bool>(),
    )
        .prop_map(|(d, g, ins, rel)| {
            let flavor = if rel {
                Flavor::Relative
            } else {
                Flavor::Absolute
            };
            MixedExpr::new(d, g, ins, flavor).unwrap()
        })
}

proptest! {
    #[test]
    fn log_inverts_exp(s in series(12)) {
        prop_assert_eq!(s.exp().log(), s);
    }

    #[test]
    fn exp_is_multiplicative(a in series(8), b in series(8)) {
        prop_assert_eq!(a.add(&b).exp(), a.exp().one_plus_product(&b.exp()));
    }

    #[test]
    fn combos_form_a_vector_space(a in combo(), b in combo(), c in combo(), x in small_rational(), y in small_rational()) {
        prop_assert_eq!(a.scale(&(&x + &y)), a.scale(&x).add(&a.scale(&y)));
        prop_assert_eq!(a.add(&b).scale(&x), a.scale(&x).add(&b.scale(&x)));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.iter().all(|(_, v)| *v != Rational::from_integer(0.into())));
    }

    #[test]
    fn combo_json_round_trips(a in combo()) {
        prop_assert_eq!(SymbolicCombo::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rationals_round_trip(x in small_rational(), y in small_rational()) {
        for v in [&x + &y, &x - &y, &x * &y] {
            prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
        if y != Rational::from_integer(0.into()) {
            let v = &x / &y;
            prop_assert_eq!(parse_rational(&format_rational(&v)).unwrap(), v);
        }
    }

    #[test]
    fn split_is_symmetric(k1 in spin_key(20), k2 in spin_key(20)) {
        prop_assert_eq!(separating_split(k1, k2).unwrap(), separating_split(k2, k1).unwrap());
    }

    #[test]
    fn genus_reduction_closed_form(s in spin_key(48)) {
        let (c, trace) = reduce_genus_zero(s);
        let mag = Rational::from_integer(BigInt::from(1) << s.genus());
        let expected = if s.parity() == Parity::Odd { -mag } else { mag };
        prop_assert_eq!(c, expected);
        prop_assert!(trace.is_chained() && trace.len() as u32 >= s.genus());
    }

    #[test]
    fn mp_is_symmetric_and_reduces(s in spin_key(10), d in 1u32..=2, mut ks in prop::collection::vec(0u32..=4, 0..4)) {
        let v = mp_descendant(d, s, &ks).unwrap();
        ks.reverse();
        prop_assert_eq!(mp_descendant(d, s, &ks).unwrap(), v);
        prop_assert!(verify_mp_reduction(s, d, &ks).unwrap().holds);
    }

    #[test]
    fn invariant_keys_round_trip(s in spin_key(12), d in 1u32..=4, ks in prop::collection::vec(0u32..=5, 0..4)) {
        let key = InvariantKey::absolute(s, d).unwrap()
            .with_insertions(spingw::closed_forms::InsertionKind::Tau, ks).unwrap();
        prop_assert_eq!(key.canonical().parse::<InvariantKey>().unwrap(), key);
    }

    #[test]
    fn expr_serialization_round_trips(e in mixed_expr()) {
        prop_assert_eq!(e.canonical().parse::<MixedExpr>().unwrap(), e);
    }

    #[test]
    fn reduction_is_order_independent_and_pure(e in mixed_expr(), seed in any::<u64>()) {
        let left = Reducer::new(Order::LeftmostFirst).reduce(&e).unwrap();
        let right = Reducer::new(Order::RightmostFirst).reduce(&e).unwrap();
        let random = Reducer::new(Order::Seeded(seed)).reduce(&e).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &random);
        for (sym, _) in left.iter() {
            let phi: PurePhiSymbol = sym.factors()[0].parse().unwrap();
            let x = phi.expr();
            prop_assert_eq!(x.flavor(), e.flavor());
            prop_assert_eq!(x.genus(), e.genus());
            prop_assert_eq!(x.len(), e.len());
            prop_assert!(x.degree() <= e.degree());
            // each step keeps sum (s + t) - d fixed, so on-shell stays on-shell
            prop_assert_eq!(x.weight() as i64 - x.degree() as i64, e.weight() as i64 - e.degree() as i64);
            prop_assert_eq!(x.is_on_shell(), e.is_on_shell());
        }
    }

    #[test]
    fn reduction_steps_are_bounded(e in mixed_expr()) {
        let r = Reducer::default();
        r.reduce(&e).unwrap();
        let partitions = partitions_of(e.degree()).unwrap().len();
        prop_assert!(r.steps_taken() <= (e.tau_weight() as usize).max(1) * partitions * 64);
    }
}

#[test]
fn partitions_are_distinct_sorted_and_complete() {
    for d in 1..=16u32 {
        let parts = partitions_of(d).unwrap();
        for p in &parts {
            assert_eq!(p.parts().iter().sum::<u32>(), d);
            assert!(p.parts().windows(2).all(|w| w[0] <= w[1]));
        }
        let mut sorted = parts.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, parts, "lexicographic and distinct at d={d}");
    }
}
