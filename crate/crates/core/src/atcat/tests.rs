use super::*;
use crate::exec::Exec;
use crate::gmod::{Atom, Module};
use crate::qlinalg::Matrix;
use crate::rings::{ConnSubgroup, EulerClass, Subgroup};
use crate::text::parse_object;

const EX: Exec = Exec::Sequential;

fn one() -> Subgroup {
    Subgroup::trivial()
}

fn g() -> Subgroup {
    Subgroup::whole()
}

fn m(a: Atom) -> Module {
    a.realize(None).unwrap()
}

fn obj(rank: usize, s: &str) -> AtObject {
    build(rank, &parse_object(s).unwrap()).unwrap()
}

fn dims(x: &Module, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi).map(|d| x.dim(d).unwrap()).collect()
}

/// Rank-one objects used throughout: the catalogue shapes plus products.
fn rank1_corpus() -> Vec<AtObject> {
    [
        "b(G,0,1)",
        "b(G,e[(1)^2],1)",
        "f(1,(susp(2,dual)))",
        "f(G,(dual(Q)))",
        "f(1,(cyc(2,1)))",
        "f(1,(cyc(3)))",
        "a(1,(dual))",
        "a(1,(sum(cyc(2),susp(-3,dual))))",
        "prod(f(G,(susp(1,dual(Q)))),a(1,(cyc(-2,2))))",
        "prod(b(G,e[(1)],1),f(1,(cyc(1,2))))",
    ]
    .iter()
    .map(|s| obj(1, s))
    .collect()
}

#[test]
fn skyscrapers() {
    let fg = obj(1, "f(G,(dual(Q)))");
    assert_eq!(fg.support().unwrap(), vec![g()]);
    assert!(fg.legs.is_empty() && fg.top.dim(0).unwrap() == 1);
    let f1 = obj(1, "f(1,(cyc(3)))");
    assert!(f1.top.is_zero());
    assert_eq!(dims(&f1.leg(&one()).unwrap().module, -4, 0), vec![1, 0, 1, 0, 1]);
    let z = mk_f(1, one(), &Module::zero(1)).unwrap();
    assert!(z.is_zero().unwrap());
    assert!(mk_f(1, one(), &m(Atom::Free(0))).is_err());
}

#[test]
fn a_one_of_dual_sits_in_its_extension() {
    // 0 → f_1(T) → a_1(T) → f_G(T^t) → 0 for T = k[c]^∨
    let t = m(Atom::Dual(1));
    let a = mk_a(1, one(), &t).unwrap();
    assert_eq!(dims(&a.top, -3, 3), vec![0, 1, 0, 1, 0, 1, 0]);
    let f1 = mk_f(1, one(), &t).unwrap();
    let fg = mk_f(1, g(), &vector_space(&t.tate_dual().unwrap()).unwrap()).unwrap();
    let inc = AtMorphism::new(&f1, &a, 0, |_| Ok(Matrix::zeros(0, 0)), vec![(one(), t.identity())], None).unwrap();
    let proj = AtMorphism::new(&a, &fg, 0, |d| Ok(Matrix::identity(a.top.dim(d)?)), vec![], None).unwrap();
    assert!(proj.after(&inc).unwrap().is_zero());
    // and a_1 of finite length is f_1
    let c = m(Atom::Cyclic(0, 3));
    assert_eq!(mk_a(1, one(), &c).unwrap(), mk_f(1, one(), &c).unwrap());
    assert_eq!(mk_a(1, g(), &m(Atom::Dual(0))).unwrap(), mk_f(1, g(), &m(Atom::Dual(0))).unwrap());
}

#[test]
fn hom_out_of_f_g_is_the_kernel_of_q() {
    let fg = obj(1, "f(G,(dual(Q)))");
    for (y, want) in [("b(G,0,1)", 0), ("a(1,(dual))", 0), ("prod(f(G,(dual(Q))),a(1,(dual)))", 1), ("f(G,(dual(Q)))", 1)] {
        let y = obj(1, y);
        assert_eq!(hom_at(&fg, &y, 0, EX).unwrap().dim(), want, "{y}");
    }
}

#[test]
fn solver_agrees_with_adjunction() {
    let targets: Vec<AtObject> = [
        "a(1,(dual))",
        "a(1,(sum(cyc(2),susp(2,dual))))",
        "f(1,(cyc(2)))",
        "f(1,(susp(2,dual)))",
        "f(G,(dual(Q)))",
        "a(G,(susp(2,dual(Q))))",
        "prod(a(1,(susp(-1,dual))),f(G,(dual(Q))))",
    ]
    .iter()
    .map(|s| obj(1, s))
    .collect();
    for x in rank1_corpus() {
        for y in &targets {
            for t in -5..=5 {
                let solver = hom_at(&x, y, t, EX).unwrap().dim();
                let adj = hom_adjoint_dim(&x, y, t, (-40, 40), EX).unwrap().unwrap();
                assert_eq!(solver, adj, "Hom_{t}({x}, {y})");
            }
        }
    }
}

#[test]
fn hom_from_zero_vanishes() {
    let z = AtObject::zero(1, Isotropy::Connected);
    for y in rank1_corpus() {
        for t in -3..=3 {
            assert_eq!(hom_at(&z, &y, t, EX).unwrap().dim(), 0);
        }
    }
}

#[test]
fn composition_lands_in_hom() {
    let xs = rank1_corpus();
    let (a, b, c) = (&xs[0], &xs[6], &xs[9]);
    for t1 in -2..=2 {
        for t2 in -2..=2 {
            let h1 = hom_at(a, b, t1, EX).unwrap();
            let h2 = hom_at(b, c, t2, EX).unwrap();
            let h = hom_at(a, c, t1 + t2, EX).unwrap();
            for f in &h1.basis {
                assert!(f.commutes(a, b).unwrap());
                for g2 in &h2.basis {
                    let gf = g2.after(f).unwrap();
                    assert!(gf.commutes(a, c).unwrap());
                    h.coords(&gf).unwrap();
                }
            }
        }
    }
}

#[test]
fn coordinates_recover_basis() {
    let xs = rank1_corpus();
    for y in &xs[..6] {
        let h = hom_at(&xs[0], y, 0, EX).unwrap();
        for (i, b) in h.basis.iter().enumerate() {
            let c = h.coords(b).unwrap();
            for (j, v) in c.iter().enumerate() {
                assert_eq!(*v, crate::qlinalg::q(i64::from(i == j)));
            }
        }
    }
}

#[test]
fn products() {
    let xs = rank1_corpus();
    let p = product(&[&xs[0], &xs[6]]).unwrap();
    for w in &xs {
        for t in -3..=3 {
            let lhs = hom_at(w, &p, t, EX).unwrap().dim();
            let rhs = hom_at(w, &xs[0], t, EX).unwrap().dim() + hom_at(w, &xs[6], t, EX).unwrap().dim();
            assert_eq!(lhs, rhs, "{w} t={t}");
        }
    }
    let pr = projections(&[&xs[0], &xs[6]], &p).unwrap();
    assert_eq!(pr.len(), 2);
    assert_eq!(product(&[&xs[3]]).unwrap(), xs[3]);
    let z = AtObject::zero(1, Isotropy::Connected);
    let pz = product(&[&xs[0], &z]).unwrap();
    assert_eq!(pz.legs.len(), 1);
    assert_eq!(dims(&pz.top, -4, 4), dims(&xs[0].top, -4, 4));
    let f12 = product(&[&obj(1, "f(1,(cyc(2)))"), &obj(1, "f(1,(cyc(1,3)))")]).unwrap();
    let direct = obj(1, "f(1,(sum(cyc(2),cyc(1,3))))");
    assert_eq!(dims(&f12.leg(&one()).unwrap().module, -8, 4), dims(&direct.leg(&one()).unwrap().module, -8, 4));
    let full = mk_f(1, Subgroup::cyclic(3), &m(Atom::Cyclic(0, 1))).unwrap();
    assert!(matches!(product(&[&full, &xs[0]]), Err(crate::Error::MixedIsotropy)));
}

#[test]
fn fixed_points() {
    let x = obj(1, "prod(b(G,0,1),f(1,(cyc(2))))");
    let pg = phi_fixed(&x, g()).unwrap();
    assert_eq!(pg.rank, 0);
    assert_eq!(pg.top, x.top);
    assert_eq!(phi_fixed(&x, one()).unwrap(), x);
    let h = Subgroup::connected(ConnSubgroup::circle(1, 0).unwrap());
    let y = obj(2, "prod(a(circle(1,0),(dual)),f(1,(koszul(Q[x,y],1))))");
    let ph = phi_fixed(&y, h).unwrap();
    assert_eq!(ph.rank, 1);
    assert_eq!(ph.support().unwrap(), vec![g(), one()]);
    assert!(ph.bottom.is_none());
}

#[test]
fn c_k_cokernels() {
    let w = (-20, 20);
    let t = m(Atom::Cyclic(-2, 3));
    let f1 = mk_f(1, one(), &t).unwrap();
    assert_eq!(dims(&c_k_cokernel(&f1, one(), w, EX).unwrap(), -10, 2), dims(&t, -10, 2));
    let a = obj(1, "a(1,(dual))");
    assert!(c_k_cokernel(&a, one(), w, EX).unwrap().is_zero());
    let s0 = obj(1, "b(G,0,1)");
    assert!(c_k_cokernel(&s0, one(), w, EX).unwrap().is_zero());
    assert_eq!(c_k_cokernel(&s0, g(), w, EX).unwrap(), s0.top);
    // S^{-2z}: ℚ generates the copy of k[c]^∨ from degree −2 up, nothing is left
    let s2 = obj(1, "b(G,e[(1)^2],1)");
    assert!(c_k_cokernel(&s2, one(), w, EX).unwrap().is_zero());
    // odd part of the leg is not hit
    let x = obj(1, "prod(b(G,0,1),f(1,(susp(1,dual))))");
    let c = c_k_cokernel(&x, one(), w, EX).unwrap();
    assert_eq!(dims(&c, 1, 6), vec![1, 0, 1, 0, 1, 0]);
}

#[test]
fn b_objects() {
    let b1 = b_object(1, one(), &EulerClass::default(), 3).unwrap();
    assert_eq!(b1.leg(&one()).unwrap().module, m(Atom::Cyclic(0, 3)));
    let b2 = b_object(1, g(), &nz(2), 1).unwrap();
    assert_eq!(dims(&b2.leg(&one()).unwrap().module, -4, 0), vec![0, 0, 1, 0, 1]);
    assert!(b_object(1, g(), &nz(2), 0).unwrap().is_zero().unwrap());
    assert!(b_object(1, one(), &nz(1), 1).is_err());
    let b0 = b_object(1, g(), &nz(0), 1).unwrap();
    b_transition(&b2, &b0).unwrap();
    let r2 = b_object(2, one(), &EulerClass::default(), 2).unwrap();
    assert!(r2.bottom.is_some());
    let circle = Subgroup::connected(ConnSubgroup::circle(1, 1).unwrap());
    assert!(b_object(2, circle, &EulerClass::new(vec![(vec![1, 0], 1)]), 1).is_err());
    assert_eq!(dims(&b_component(2, circle, 3).unwrap(), -4, 0), vec![1, 0, 1, 0, 1]);
}

#[test]
fn evaluation_recovers_components() {
    let w = (-6, 6);
    let f = obj(1, "f(1,(cyc(3)))");
    let r = eval_via_colim(&f, one(), 4, w, EX).unwrap();
    assert!(r.certified());
    assert_eq!(r.stable_from, Some(3));
    assert_eq!(r.annihilator_bound, Some(3));
    let a = obj(1, "a(1,(dual))");
    let r = eval_via_colim(&a, one(), 5, w, EX).unwrap();
    assert!(r.certified());
    assert_eq!(r.stable_from, Some(4));
    assert_eq!(r.recovered(), r.target_dims);
    let s0 = obj(1, "b(G,0,1)");
    let r = eval_via_colim(&s0, g(), 3, w, EX).unwrap();
    assert!(r.certified());
    let short = eval_via_colim(&a, one(), 2, w, EX).unwrap();
    assert!(!short.certified());
    let z = AtObject::zero(1, Isotropy::Connected);
    assert!(eval_via_colim(&z, one(), 2, w, EX).unwrap().recovered().iter().all(|&d| d == 0));
    let x = obj(2, "f(1,(koszul(Q[x,y],2)))");
    let r = eval_via_colim(&x, one(), 3, w, EX).unwrap();
    assert!(r.certified());
    assert_eq!(r.stable_from, Some(2));
}

#[test]
fn invariants_and_round_trip() {
    let rank2 = [
        "f(circle(1,0),(cyc(2)))",
        "a(circle(1,-2),(sum(dual,cyc(1,2))))",
        "f(1,(koszul(Q[x,y],2)))",
        "a(1,(dual(Q[x,y])))",
        "f(1,(susp(4,dual(Q[x,y]))))",
        "prod(a(circle(0,1),(cyc(3))),f(G,(dual(Q))),f(1,(koszul(Q[x,y],1))))",
    ];
    for s in rank2 {
        let x = obj(2, s);
        assert!(x.invariants().unwrap().all(), "{s}");
        assert_eq!(x.to_string(), s);
        assert_eq!(obj(2, &x.to_string()), x);
    }
    for x in rank1_corpus() {
        assert!(x.invariants().unwrap().all());
        assert_eq!(obj(1, &x.to_string()), x);
    }
    let a1 = obj(2, "a(1,(dual(Q[x,y])))");
    assert_eq!(a1.formal.len(), 1);
    assert!(matches!(a1.component(&g(), (-4, 4)), Err(crate::Error::Unsupported(_))));
}
