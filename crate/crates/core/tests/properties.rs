use std::sync::OnceLock;

use gnknot::ffield::FieldSpec;
use gnknot::gdihedral::{LambdaElem, LambdaGroup};
use gnknot::group::{FiniteGroup, Group};
use gnknot::knotpres::{bezout_cd, gn_presentation, KnotKind, Presentation};
use gnknot::wreath::target::WElem;
use gnknot::wreath::{TargetWreath, WreathError};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lambda_11_5() -> &'static LambdaGroup {
    static G: OnceLock<LambdaGroup> = OnceLock::new();
    G.get_or_init(|| LambdaGroup::new(11, 5).unwrap())
}

fn lambda_2_5() -> &'static LambdaGroup {
    static G: OnceLock<LambdaGroup> = OnceLock::new();
    G.get_or_init(|| LambdaGroup::new(2, 5).unwrap())
}

fn w_11_5_2_3() -> &'static TargetWreath {
    static W: OnceLock<TargetWreath> = OnceLock::new();
    W.get_or_init(|| TargetWreath::new(11, 5, 2, 3).unwrap())
}

fn lambda_elem(lam: &'static LambdaGroup) -> impl Strategy<Value = LambdaElem> {
    (0..lam.order_of_group() as usize).prop_map(move |k| lam.element_at(k))
}

fn welem() -> impl Strategy<Value = WElem> {
    any::<u64>().prop_map(|seed| w_11_5_2_3().random_elem(&mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lambda_is_a_group(
        a in lambda_elem(lambda_11_5()),
        b in lambda_elem(lambda_11_5()),
        c in lambda_elem(lambda_11_5()),
    ) {
        let g = lambda_11_5();
        prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
        prop_assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
        prop_assert_eq!(g.mul(&g.identity(), &a), a.clone());
        prop_assert!(g.contains(&g.mul(&a, &b)));
    }

    #[test]
    fn lambda_orders_divide_q_or_r(a in lambda_elem(lambda_11_5())) {
        let g = lambda_11_5();
        let ord = g.lorder(&a);
        prop_assert_eq!(ord, g.order(&a));
        prop_assert!(matches!(ord, 1 | 5 | 11));
    }

    #[test]
    fn nth_root_is_the_only_root(a in lambda_elem(lambda_2_5()), n in 2u64..12) {
        let g = lambda_2_5();
        prop_assume!(!g.is_identity(&a));
        let roots: Vec<LambdaElem> = g.elements().into_iter().filter(|x| g.pow(x, n as i64) == a).collect();
        match g.nth_root(&a, n).unwrap() {
            Some(x) => prop_assert_eq!(roots, vec![x]),
            None => prop_assert!(roots.is_empty()),
        }
    }

    #[test]
    fn class_key_is_conjugation_invariant(a in lambda_elem(lambda_11_5()), h in lambda_elem(lambda_11_5())) {
        let g = lambda_11_5();
        let c = g.conjugate(&h, &a);
        prop_assert_eq!(g.class_key(&a), g.class_key(&c));
        prop_assert!(g.conj_class(&a).contains(&c));
    }

    #[test]
    fn wreath_is_a_group(a in welem(), b in welem(), c in welem()) {
        let w = w_11_5_2_3();
        prop_assert_eq!(w.mul(&w.mul(&a, &b), &c), w.mul(&a, &w.mul(&b, &c)));
        prop_assert!(w.is_identity(&w.mul(&a, &w.inv(&a))));
        prop_assert_eq!(w.mul(&w.identity(), &a), a.clone());
    }

    #[test]
    fn bracket_is_additive(a in welem(), b in welem()) {
        let w = w_11_5_2_3();
        prop_assert_eq!(w.bracket2(&w.mul(&a, &b)), (w.bracket2(&a) + w.bracket2(&b)) % 5);
        prop_assert_eq!(w.bracket2(&w.inv(&a)), (5 - w.bracket2(&a)) % 5);
    }

    #[test]
    fn rsf_is_a_conjugate(a in welem()) {
        let w = w_11_5_2_3();
        match w.to_rsf(&a) {
            Ok((gamma, sigma)) => {
                prop_assert_eq!(w.conjugate(&sigma, &a), gamma.clone());
                prop_assert_eq!(gamma.hat, a.hat);
                prop_assert!(w.wreath().is_rsf(&gamma));
                prop_assert_eq!(sigma.hat, w.wreath().top().identity_index());
            }
            Err(WreathError::NotCoprime { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn roots_of_powers(a in welem()) {
        let w = w_11_5_2_3();
        let Ok((alpha, _)) = w.to_a(&w.pow(&a, 11)) else {
            return Ok(());
        };
        prop_assume!(alpha.hat != w.wreath().top().identity_index());
        let roots = w.nth_roots(&alpha, 11).unwrap();
        prop_assert_eq!(roots.len() as u128, w.nth_root_count(&alpha, 11).unwrap());
        for eta in &roots {
            prop_assert_eq!(&w.pow(eta, 11), &alpha);
        }
    }

    #[test]
    fn field_arithmetic(x in 0usize..81, y in 0usize..81) {
        let f = FieldSpec::build(3, 5).unwrap();
        prop_assert_eq!(f.size(), 81);
        let (a, b) = (f.element_at(x), f.element_at(y));
        prop_assert_eq!(f.index_of(&a), x);
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a.clone());
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.pow(&a, 81), a.clone());
    }

    #[test]
    fn bezout(a in 2u64..60, b in 2u64..60) {
        prop_assume!(gnknot::arith::gcd(a, b) == 1);
        let (c, d) = bezout_cd(a, b).unwrap();
        prop_assert_eq!((d * a) as i64 - (c * b) as i64, 1);
    }
}

#[test]
fn zeta_is_a_primitive_root_of_unity() {
    for (q, r) in [(2, 3), (2, 5), (11, 5), (7, 3), (3, 7), (2, 7)] {
        let f = FieldSpec::build(q, r).unwrap();
        let z = f.zeta();
        assert_ne!(*z, f.one());
        assert_eq!(f.pow(z, r as u64), f.one(), "GF({q})({r})");
        assert!(f.modulus().len() - 1 == f.degree());
    }
}

#[test]
fn presentation_round_trip() {
    for kind in [KnotKind::GK, KnotKind::SK] {
        let p = gn_presentation(2, 3, 11, kind).unwrap();
        let back = Presentation::from_json(&p.to_json()).unwrap();
        assert_eq!(p, back);
        back.validate().unwrap();
    }
    assert!(Presentation::from_json(r#"{"gens":["x"],"rels":[[[3,1]]]}"#).is_err());
}
