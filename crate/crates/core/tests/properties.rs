use proptest::prelude::*;

use cousinet::atcat::{build, Desc};
use cousinet::gmod::{Atom, Module};
use cousinet::qlinalg::{q, qf, Matrix, Q};
use cousinet::resolve::{ext_at, Shuffle};
use cousinet::rings::Subgroup;
use cousinet::text::{parse_atom, parse_object};
use cousinet::{Error, Exec};

fn entry() -> impl Strategy<Value = Q> {
    prop_oneof![3 => (-3i64..=3).prop_map(q), 1 => (-5i64..=5, 1i64..=4).prop_map(|(a, b)| qf(a, b))]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(entry(), c), r).prop_map(move |rows| {
            if r == 0 {
                Matrix::zeros(0, c)
            } else {
                Matrix::from_rows(rows)
            }
        })
    })
}

/// Finite sums of shifted `k[c]/cⁿ` and `k[c]^∨`.
fn rank1_atom() -> impl Strategy<Value = Atom> {
    let leaf = prop_oneof![
        (-8i64..=8, 1u32..=4).prop_map(|(a, n)| Atom::Cyclic(a, n)),
        (-4i64..=4).prop_map(|a| Atom::Susp(2 * a, Box::new(Atom::Dual(1)))),
    ];
    proptest::collection::vec(leaf, 1..=3).prop_map(|mut v| if v.len() == 1 { v.pop().unwrap() } else { Atom::Sum(v) })
}

fn finite_atom() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (-6i64..=6, 1u32..=4).prop_map(|(a, n)| Atom::Cyclic(a, n)),
        (1u32..=3).prop_map(|n| Atom::KoszulQuot(2, n)),
        (1u32..=4).prop_map(Atom::Trunc),
    ]
}

fn rank1_desc() -> impl Strategy<Value = Desc> {
    (rank1_atom(), 0..3usize, -2i64..=2).prop_map(|(t, k, j)| match k {
        0 => Desc::F(Subgroup::trivial(), t),
        1 => Desc::A(Subgroup::trivial(), t),
        _ => Desc::Prod(vec![
            Desc::F(Subgroup::trivial(), t),
            Desc::F(Subgroup::whole(), Atom::Susp(2 * j, Box::new(Atom::Dual(0)))),
        ]),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in matrix(5)) {
        let k = a.kernel();
        prop_assert_eq!(a.rank() + k.cols(), a.cols());
        prop_assert!(a.dot(&k).is_zero());
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn solve_finds_preimages(a in matrix(4), x in proptest::collection::vec(entry(), 4)) {
        let x = Matrix::from_cols(a.cols(), &[x[..a.cols()].to_vec()]);
        let b = a.dot(&x);
        let y = a.solve(&b).expect("b is in the image");
        prop_assert_eq!(a.dot(&y), b);
    }

    #[test]
    fn inverses_are_two_sided(a in matrix(4)) {
        if let Some(inv) = a.inverse() {
            prop_assert_eq!(a.dot(&inv), Matrix::identity(a.rows()));
            prop_assert_eq!(inv.dot(&a), Matrix::identity(a.rows()));
        } else {
            prop_assert!(a.rows() != a.cols() || a.rank() < a.rows());
        }
    }

    #[test]
    fn atoms_print_and_parse(t in rank1_atom()) {
        prop_assert_eq!(parse_atom(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn objects_print_and_parse(d in rank1_desc()) {
        prop_assert_eq!(parse_object(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn tables_round_trip(t in rank1_atom()) {
        let m = t.realize(None).unwrap();
        let text = m.to_table();
        let back = Module::from_table(&text).unwrap();
        prop_assert_eq!(back.to_table(), text);
        prop_assert_eq!(back, m);
    }

    #[test]
    fn matlis_duality_is_an_involution(t in finite_atom()) {
        let m = t.realize(None).unwrap();
        prop_assert_eq!(m.matlis_dual().unwrap().matlis_dual().unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// The same table with either strategy and under reshuffled choices.
    #[test]
    fn ext_is_independent_of_strategy_and_choices(x in rank1_desc(), y in rank1_desc(), seed in 0u64..1000) {
        let (x, y) = (build(1, &x).unwrap(), build(1, &y).unwrap());
        let degrees: Vec<i64> = (-6..=6).collect();
        let seq = match ext_at(&x, &y, &degrees, None, Exec::Sequential) {
            Ok(t) => t,
            Err(e) => {
                // pairs with an infinite Hom are refused either way
                prop_assert!(matches!(e, Error::Unsupported(_)), "{e}");
                prop_assert_eq!(ext_at(&x, &y, &degrees, None, Exec::auto()).unwrap_err(), e);
                return Ok(());
            }
        };
        let par = ext_at(&x, &y, &degrees, None, Exec::auto()).unwrap();
        let shuffled = ext_at(&x, &y, &degrees, Some(Shuffle { seed }), Exec::auto()).unwrap();
        prop_assert_eq!(&seq.dims, &par.dims);
        prop_assert_eq!(&seq.dims, &shuffled.dims);
        prop_assert!(seq.top_row().is_none_or(|s| s <= 2));
    }
}
