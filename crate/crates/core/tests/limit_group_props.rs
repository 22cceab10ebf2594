use std::sync::OnceLock;

use proptest::prelude::*;

use miflab::coset_enum::{enumerate, regular_table};
use miflab::limit_group::{AWord, ElementKey, GElement, InstanceConfig, LimitGroup, Order};
use miflab::presentations::{build_window_presentation, CSequence, Letter, Window};

fn default_group() -> &'static LimitGroup {
    static G: OnceLock<LimitGroup> = OnceLock::new();
    G.get_or_init(LimitGroup::default_instance)
}

/// p = 3, c = 2: every window group has class 2 < p.
fn regular_group() -> &'static LimitGroup {
    static G: OnceLock<LimitGroup> = OnceLock::new();
    G.get_or_init(|| LimitGroup::with(3, CSequence::constant(2).unwrap()).unwrap())
}

fn aword(p: u64, radius: i64, max_len: usize) -> impl Strategy<Value = AWord> {
    prop::collection::vec((-radius..=radius, 1..p as i64), 0..=max_len)
        .prop_map(move |letters| AWord::from_letters(letters, p))
}

fn gelement(p: u64, radius: i64, max_beta: i64) -> impl Strategy<Value = GElement> {
    (aword(p, radius, 8), -max_beta..=max_beta).prop_map(|(a, beta)| GElement { a, beta })
}

/// The element of `a` in `B(window)`, located without going through the
/// least-window logic.
fn key_in(g: &LimitGroup, a: &AWord, window: Window) -> ElementKey {
    let wg = g.window_group(window.width()).unwrap();
    let word: Vec<Letter> = a
        .letters()
        .iter()
        .flat_map(|&(i, e)| std::iter::repeat(Letter { gen: (i - window.lo) as u32, inv: false }).take(e as usize))
        .collect();
    wg.locate(&word).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn retraction_consistency(u in aword(2, 1, 8), v in aword(2, 1, 8), grow_lo in 0i64..2, grow_hi in 0i64..2) {
        let g = default_group();
        let small = Window::centered(1);
        let large = Window::new(-1 - grow_lo, 1 + grow_hi).unwrap();
        let equal_small = key_in(g, &u, small) == key_in(g, &v, small);
        let equal_large = key_in(g, &u, large) == key_in(g, &v, large);
        prop_assert_eq!(equal_small, equal_large);
    }

    #[test]
    fn canonical_forms_commute_with_shift(u in aword(2, 2, 10), k in -3i64..=3) {
        let g = default_group();
        let shifted_first = g.canonical_a(&u.shift(k).unwrap()).unwrap();
        let canonical_first = g.canonical_a(&u).unwrap().shift(k).unwrap();
        prop_assert_eq!(shifted_first, canonical_first);
    }

    #[test]
    fn canonical_forms_are_stable(x in gelement(2, 2, 3)) {
        let g = default_group();
        let c = g.canonical(&x).unwrap();
        prop_assert_eq!(g.canonical(&c).unwrap(), c.clone());
        prop_assert!(g.equal(&x, &c).unwrap());
    }

    #[test]
    fn group_laws(x in gelement(2, 2, 1), y in gelement(2, 2, 1), z in gelement(2, 2, 1)) {
        let g = default_group();
        let left = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let inv = g.inverse(&x).unwrap();
        prop_assert!(g.is_trivial(&g.mul_raw(&x, &inv).unwrap()).unwrap());
        prop_assert!(g.is_trivial(&g.mul_raw(&inv, &x).unwrap()).unwrap());
    }

    #[test]
    fn shift_is_a_homomorphism(u in aword(2, 2, 8), v in aword(2, 2, 8), k in -2i64..=2) {
        let g = default_group();
        let p = g.p();
        let lhs = u.concat(&v, p).shift(k).unwrap();
        let rhs = u.shift(k).unwrap().concat(&v.shift(k).unwrap(), p);
        prop_assert_eq!(g.canonical_a(&lhs).unwrap(), g.canonical_a(&rhs).unwrap());
        // Conjugation by t^k realizes the shift.
        let conj = g.mul_raw(&g.mul_raw(&GElement::t_power(k), &GElement::from_a(u.clone())).unwrap(), &GElement::t_power(-k)).unwrap();
        prop_assert!(g.equal(&conj, &GElement::from_a(u.shift(k).unwrap())).unwrap());
    }

    #[test]
    fn order_dichotomy(x in gelement(2, 2, 3)) {
        let g = default_group();
        match g.order(&x).unwrap() {
            Order::Infinite => prop_assert!(x.beta != 0),
            Order::Finite(n) => {
                prop_assert_eq!(x.beta, 0);
                prop_assert!(n.is_power_of_two());
                prop_assert!(g.is_trivial(&g.pow_raw(&x, n as i64).unwrap()).unwrap());
                if n > 1 {
                    prop_assert!(!g.is_trivial(&g.pow_raw(&x, (n / 2) as i64).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn abelian_image_is_sound(x in gelement(2, 2, 2)) {
        let g = default_group();
        let image = g.abelianize(&x);
        if !image.is_zero() {
            prop_assert!(!g.is_trivial(&x).unwrap());
        }
        if g.is_trivial(&x).unwrap() {
            prop_assert!(image.is_zero());
        }
    }

    #[test]
    fn abelian_image_is_a_homomorphism(x in gelement(2, 2, 2), y in gelement(2, 2, 2)) {
        let g = default_group();
        let sum = g.abelianize(&g.multiply(&x, &y).unwrap());
        let (ix, iy) = (g.abelianize(&x), g.abelianize(&y));
        let mut expected = ix.vector.clone();
        for (&i, &e) in &iy.vector {
            let slot = expected.entry(i + x.beta).or_insert(0);
            *slot = (*slot + e) % 2;
        }
        expected.retain(|_, e| *e != 0);
        prop_assert_eq!(sum.vector, expected);
        prop_assert_eq!(sum.beta, x.beta + y.beta);
    }

    #[test]
    fn exponent_p_below_class(u in aword(3, 1, 10)) {
        let g = regular_group();
        let x = GElement::from_a(u);
        prop_assert!(g.is_trivial(&g.pow_raw(&x, 3).unwrap()).unwrap());
    }
}

#[test]
fn pc_and_coset_tables_agree() {
    for (p, c, width) in [(2, "1", 3), (2, "1,2", 3), (2, "2", 2), (3, "2", 1), (3, "1,2", 2), (2, "1,2,3", 3), (5, "1", 2)] {
        let c: CSequence = c.parse().unwrap();
        let group = LimitGroup::new(InstanceConfig { table_limit: 0, ..InstanceConfig::new(p, c.clone()) }).unwrap();
        let wg = group.window_group(width).unwrap();
        let pres = build_window_presentation(p, &c, Window::new(0, width as i64).unwrap()).unwrap();
        let tc = enumerate(&pres, 1 << 20).unwrap();
        let from_pc = regular_table(&wg.pc, 1 << 20).unwrap();
        assert_eq!(tc, from_pc, "p={p} c={c} width={width}");
    }
}
