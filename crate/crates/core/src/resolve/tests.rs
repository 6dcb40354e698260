use super::*;
use crate::atcat::{build, hom_at, mk_f_presented, AtObject};
use crate::exec::Exec;
use crate::gmod::{Atom, MatlisPresented, Module};
use crate::homalg::ext_tate;
use crate::qlinalg::Matrix;
use crate::rings::{Poly, PolyMatrix};
use crate::text::parse_object;

const EX: Exec = Exec::Sequential;

fn obj(rank: usize, s: &str) -> AtObject {
    build(rank, &parse_object(s).unwrap()).unwrap()
}

#[test]
fn semifree_recipe_lengths() {
    for (s, len) in [
        ("a(G,(susp(2,dual(Q))))", 0),
        ("f(G,(dual(Q)))", 0),
        ("f(1,(cyc(3)))", 2),
        ("f(1,(sum(cyc(2),cyc(3,1))))", 2),
        ("a(1,(dual))", 1),
        ("f(1,(susp(2,dual)))", 1),
        ("b(G,0,1)", 1),
        ("b(G,e[(1)^2],1)", 1),
        ("prod(b(G,0,1),f(1,(cyc(-1,2))))", 2),
    ] {
        let x = obj(1, s);
        let r = inj_res_sf_rank1(&x, EX).unwrap();
        assert_eq!(r.length(), len, "{s}");
        assert!(r.is_exact(EX).unwrap(), "{s}");
        for t in &r.terms {
            assert!(t.invariants().unwrap().all());
        }
    }
    let z = AtObject::zero(1, crate::atcat::Isotropy::Connected);
    assert!(inj_res_sf_rank1(&z, EX).unwrap().terms.is_empty());
}

#[test]
fn shuffled_resolutions_are_exact() {
    for s in ["f(1,(cyc(3)))", "a(1,(sum(cyc(2),dual)))", "b(G,0,1)", "f(G,(dual(Q)))"] {
        let x = obj(1, s);
        for seed in 0..3 {
            let r = inj_res_explicit(&x, Some(Shuffle { seed }), EX).unwrap();
            assert!(r.length() <= 2, "{s}");
            assert!(r.is_exact(EX).unwrap(), "{s} seed {seed}");
        }
    }
}

#[test]
fn rank_two_without_bottom() {
    for s in ["a(circle(1,0),(cyc(2)))", "prod(f(circle(1,1),(susp(1,dual))),f(G,(dual(Q))))"] {
        let x = obj(2, s);
        let r = inj_res_explicit(&x, None, EX).unwrap();
        assert!(r.length() <= 2 && r.is_exact(EX).unwrap(), "{s}");
    }
    assert!(inj_res_sf_rank1(&obj(2, "f(G,(dual(Q)))"), EX).is_err());
}

#[test]
fn ext_zero_is_hom() {
    let xs = ["b(G,0,1)", "f(G,(dual(Q)))", "f(1,(cyc(2)))", "f(1,(susp(2,dual)))"];
    let ys = ["a(1,(cyc(2)))", "b(G,e[(1)],1)", "f(1,(susp(2,dual)))"];
    let degs: Vec<i64> = (-6..=6).collect();
    for x in xs {
        for y in ys {
            let (x, y) = (obj(1, x), obj(1, y));
            let e = ext_at(&x, &y, &degs, None, EX).unwrap();
            for &t in &degs {
                assert_eq!(e.get(0, t), hom_at(&x, &y, t, EX).unwrap().dim(), "{x} {y} {t}");
            }
            assert!(e.top_row().is_none_or(|s| s <= 2));
        }
    }
}

#[test]
fn ext_is_resolution_independent() {
    let degs: Vec<i64> = (-5..=5).collect();
    for (x, y) in [("b(G,0,1)", "f(1,(cyc(3)))"), ("f(G,(dual(Q)))", "b(G,e[(1)^2],1)"), ("f(1,(cyc(2)))", "b(G,0,1)")] {
        let (x, y) = (obj(1, x), obj(1, y));
        let a = ext_at(&x, &y, &degs, None, EX).unwrap();
        for seed in [1, 7] {
            let b = ext_at(&x, &y, &degs, Some(Shuffle { seed }), EX).unwrap();
            assert_eq!(a.dims, b.dims, "{x} {y} seed {seed}");
        }
    }
}

#[test]
fn ext_out_of_the_vertex_is_concentrated() {
    let fg = obj(1, "f(G,(dual(Q)))");
    let degs: Vec<i64> = (-8..=8).collect();
    for a in ["cyc(3)", "dual", "sum(cyc(1,2),susp(3,dual))"] {
        let t = Atom::realize(&crate::text::parse_atom(a).unwrap(), None).unwrap();
        let y = obj(1, &format!("a(1,({a}))"));
        let e = ext_at(&fg, &y, &degs, None, EX).unwrap();
        let oracle = ext_tate(&t, &degs, 12, EX).unwrap();
        let want = oracle.ext_res.clone().unwrap();
        assert_eq!(e.dims[2], want, "{a}");
        assert!(e.dims[0].iter().chain(&e.dims[1]).all(|&d| d == 0));
    }
}

/// `Ext^{s,t}_P(k, T)` from the Koszul complex `T_t → T_{t−2}² → T_{t−4}`.
fn koszul_ext(t: &Module, deg: i64) -> [usize; 3] {
    let x = |d: i64| t.act_at(0, d).unwrap();
    let y = |d: i64| t.act_at(1, d).unwrap();
    let d0 = Matrix::vstack(&[&x(deg), &y(deg)]).unwrap();
    let d1 = Matrix::hstack(&[&y(deg - 2), &x(deg - 2).scale(&crate::qlinalg::q(-1))]).unwrap();
    let n0 = t.dim(deg).unwrap();
    let n1 = 2 * t.dim(deg - 2).unwrap();
    let n2 = t.dim(deg - 4).unwrap();
    let (r0, r1) = (d0.rank(), d1.rank());
    [n0 - r0, n1 - r0 - r1, n2 - r1]
}

#[test]
fn bottom_ext_matches_koszul() {
    let k = obj(2, "f(1,(koszul(Q[x,y],1)))");
    let degs: Vec<i64> = (-8..=8).collect();
    for a in ["koszul(Q[x,y],1)", "koszul(Q[x,y],2)", "susp(2,koszul(Q[x,y],3))"] {
        let y = obj(2, &format!("f(1,({a}))"));
        let tm = Atom::realize(&crate::text::parse_atom(a).unwrap(), None).unwrap();
        let e = ext_at(&k, &y, &degs, None, EX).unwrap();
        assert_eq!(e.method, ExtMethod::Bottom { length: 2 });
        for &t in &degs {
            let want = koszul_ext(&tm.extend(t - 6, t + 2).unwrap(), t);
            for s in 0..3 {
                assert_eq!(e.get(s, t), want[s], "{a} s={s} t={t}");
            }
        }
        assert!(e.dims[3..].iter().flatten().all(|&d| d == 0));
    }
}

#[test]
fn injective_targets_have_no_higher_ext() {
    let degs: Vec<i64> = (-4..=4).collect();
    let y = obj(2, "a(1,(dual(Q[x,y])))");
    let x = obj(2, "f(G,(dual(Q)))");
    let e = ext_at(&x, &y, &degs, None, EX).unwrap();
    assert_eq!(e.method, ExtMethod::Injective);
    assert!(e.dims[1..].iter().flatten().all(|&d| d == 0));
    let x = obj(2, "f(circle(1,0),(cyc(2)))");
    assert!(ext_at(&x, &obj(2, "f(1,(koszul(Q[x,y],1)))"), &degs, None, EX).is_err());
}

fn dual_of_line() -> MatlisPresented {
    // (P/(y))^∨, injective dimension 1
    let y = Poly::var(2, 1);
    MatlisPresented::new(PolyMatrix::new(2, vec![0], vec![-2], vec![vec![y]]).unwrap())
}

#[test]
fn general_resolution_certificates() {
    let w = (-12, 12);
    let cases: Vec<(AtObject, usize)> = vec![
        (obj(2, "f(1,(koszul(Q[x,y],1)))"), 4),
        (obj(2, "a(1,(dual(Q[x,y])))"), 2),
        (mk_f_presented(&dual_of_line()).unwrap(), 3),
        (obj(2, "a(circle(1,0),(cyc(2)))"), 2),
        (obj(2, "f(G,(dual(Q)))"), 0),
        (obj(1, "f(1,(cyc(3)))"), 2),
        (obj(1, "a(1,(dual))"), 1),
    ];
    for (x, len) in cases {
        let r = inj_res_general(&x, w, EX).unwrap();
        assert!(r.certified(), "{x}: {:?}", r.certs);
        assert!(r.exact, "{x}");
        assert_eq!(r.length(), len, "{x}");
    }
    let z = inj_res_general(&AtObject::zero(2, crate::atcat::Isotropy::Connected), w, EX).unwrap();
    assert_eq!((z.length(), z.stages.len()), (0, 1));
    assert_eq!(dual_of_line().injective_dim().unwrap(), Some(1));
}

#[test]
fn witness_growth() {
    let r = id_lower_witness(1, 6, 4, EX).unwrap();
    assert_eq!(r.interval, (2, 2));
    assert_eq!(r.control_lim1, Some(0));
    assert!(r.annihilated);
    assert_eq!(r.rows[0].image_dims, vec![1, 0, 0, 0, 0]);
    assert!(r.rows.iter().all(WitnessRow::matches_closed_form));
    assert_eq!(r.growth(), vec![0, 0, 0, 0, 1, 2]);
    let r2 = id_lower_witness(2, 6, 3, EX).unwrap();
    assert_eq!(r2.interval, (3, 4));
    let un: Vec<usize> = r2.rows.iter().map(|w| w.unsettled).collect();
    assert_eq!(un, vec![0, 0, 0, 1, 3, 6]);
}
