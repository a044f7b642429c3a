use lambda_skeletons::closable::{closable2motzkin, motzkin2closable};
use lambda_skeletons::lambda::{self, Lmt};
use lambda_skeletons::motzkin::{self, Motzkin};
use lambda_skeletons::ucs::{motzkin2ucs, ucs2motzkin};
use lambda_skeletons::{Error, OpenTerm};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn motzkin_tree() -> impl Strategy<Value = Motzkin> {
    Just(motzkin::v()).prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(motzkin::l),
            (inner.clone(), inner).prop_map(|(x, y)| motzkin::a(x, y)),
        ]
    })
}

fn lmt_term() -> impl Strategy<Value = Lmt> {
    (0u64..4).prop_map(lambda::var).prop_recursive(8, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(lambda::lam),
            (inner.clone(), inner).prop_map(|(x, y)| lambda::app(x, y)),
        ]
    })
}

proptest! {
    #[test]
    fn motzkin_text_roundtrip(t in motzkin_tree()) {
        prop_assert_eq!(t.to_string().parse::<Motzkin>().unwrap(), t);
    }

    #[test]
    fn lmt_text_and_json_roundtrip(t in lmt_term()) {
        prop_assert_eq!(t.to_string().parse::<Lmt>().unwrap(), t.clone());
        let json = serde_json::to_string(&t).unwrap();
        prop_assert_eq!(serde_json::from_str::<Lmt>(&json).unwrap(), t);
    }

    #[test]
    fn sizes_differ_by_one(t in motzkin_tree(), u in lmt_term()) {
        prop_assert_eq!(t.size111(), t.size012() + 1);
        prop_assert_eq!(u.size111(), u.size012() + 1);
    }

    #[test]
    fn closable_converter_agrees_with_predicate(t in motzkin_tree()) {
        match motzkin2closable(&t) {
            Ok(c) => {
                prop_assert!(motzkin::is_closable(&t));
                prop_assert_eq!(closable2motzkin(&c), t);
            }
            Err(Error::NotClosable { .. }) => prop_assert!(!motzkin::is_closable(&t)),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn ucs_converter_agrees_with_predicate(t in motzkin_tree()) {
        match motzkin2ucs(&t) {
            Ok(u) => {
                prop_assert!(motzkin::is_ucs(&t));
                prop_assert_eq!(ucs2motzkin(&u), t);
            }
            Err(Error::NotUcs { .. }) => prop_assert!(!motzkin::is_ucs(&t)),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn minimal_openness_is_the_threshold(t in lmt_term(), extra in 0u64..4) {
        let min = lambda::minimal_openness(&t);
        prop_assert!(lambda::is_open(min + extra, &t));
        if min > 0 {
            prop_assert!(!lambda::is_open(min - 1, &t));
        }
        let open = lambda::lmt_to_open(min + extra, &t).unwrap();
        prop_assert_eq!(open.to_string().parse::<OpenTerm>().unwrap(), open);
    }

    #[test]
    fn skeleton_labels_its_term(t in lmt_term()) {
        let m = lambda::minimal_openness(&t);
        let sk = lambda::skeleton(&t);
        prop_assert!(lambda::label_check(m, &sk, &t));
        prop_assert_eq!(sk.size111(), t.size111());
    }

    #[test]
    fn labeling_count_is_leaf_product(t in motzkin_tree(), m in 0u64..3) {
        prop_assume!(t.size111() <= 9);
        let listed = lambda::enumerate_labelings(m, &t);
        prop_assert_eq!(lambda::count_labelings(m, &t).to_usize(), Some(listed.len()));
        prop_assert_eq!(lambda::leaf_product(m, &t).to_usize(), Some(listed.len()));
        prop_assert!(listed.iter().all(|x| lambda::label_check(m, &t, x) && lambda::is_open(m, x)));
    }
}
