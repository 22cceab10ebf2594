use proptest::prelude::*;

use miflab::grigorchuk::{
    acts_trivially_to_depth, act, is_trivial_grig, reduce_grig, reduced_words_up_to, split, Gen, GrigWord,
};

/// The first-level table applied letter by letter, written out literally.
fn table_act(g: Gen, s: &[u8]) -> Vec<u8> {
    let Some((&head, tail)) = s.split_first() else { return Vec::new() };
    let mut out = vec![head];
    let rest = match (g, head) {
        (Gen::A, _) => {
            out[0] = 1 - head;
            tail.to_vec()
        }
        (Gen::B, 0) | (Gen::C, 0) => table_act(Gen::A, tail),
        (Gen::B, _) => table_act(Gen::C, tail),
        (Gen::C, _) => table_act(Gen::D, tail),
        (Gen::D, 0) => tail.to_vec(),
        (Gen::D, _) => table_act(Gen::B, tail),
    };
    out.extend(rest);
    out
}

fn gen() -> impl Strategy<Value = Gen> {
    prop::sample::select(Gen::ALL.to_vec())
}

fn grig_word(max_len: usize) -> impl Strategy<Value = GrigWord> {
    prop::collection::vec(gen(), 0..=max_len).prop_map(GrigWord::new)
}

fn bits(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn generators_follow_the_table(g in gen(), s in bits(16)) {
        prop_assert_eq!(act(&GrigWord::new(vec![g]), &s), table_act(g, &s));
    }

    #[test]
    fn action_is_right_to_left(u in grig_word(6), v in grig_word(6), s in bits(10)) {
        prop_assert_eq!(act(&u.concat(&v), &s), act(&u, &act(&v, &s)));
    }

    #[test]
    fn reduction_preserves_the_action(w in grig_word(14), s in bits(12)) {
        let r = reduce_grig(&w);
        prop_assert!(r.is_reduced());
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(act(&r, &s), act(&w, &s));
    }

    #[test]
    fn splitting_matches_the_action(w in grig_word(12), s in bits(10)) {
        let w = if w.in_stabilizer() { w } else { w.concat(&GrigWord::new(vec![Gen::A])) };
        let (left, right) = split(&w).unwrap();
        for (head, section) in [(0u8, &left), (1u8, &right)] {
            let mut input = vec![head];
            input.extend(&s);
            let mut expected = vec![head];
            expected.extend(act(section, &s));
            prop_assert_eq!(act(&w, &input), expected);
        }
    }

    #[test]
    fn inverse_cancels(w in grig_word(12)) {
        prop_assert!(is_trivial_grig(&w.concat(&w.inverse())));
    }
}

#[test]
fn solver_agrees_with_depth_twelve_oracle() {
    for w in reduced_words_up_to(8) {
        assert_eq!(is_trivial_grig(&w), acts_trivially_to_depth(&w, 12), "{w}");
    }
}
