use super::*;
use crate::atcat::AtObject;
use crate::exec::Exec;
use crate::gmod::Module;
use crate::resolve::Shuffle;
use crate::rings::{ConnSubgroup, Subgroup};

const EX: Exec = Exec::Sequential;

fn dims(m: &Module, lo: i64, hi: i64) -> Vec<usize> {
    (lo..=hi).map(|d| m.dim(d).unwrap()).collect()
}

/// `1` exactly at even degrees in `[from, to]` of `[lo, hi]`.
fn evens(lo: i64, hi: i64, from: i64, to: i64) -> Vec<usize> {
    (lo..=hi).map(|d| usize::from(d % 2 == 0 && d >= from && d <= to)).collect()
}

fn leg1(x: &AtObject) -> &Module {
    &x.leg(&Subgroup::trivial()).unwrap().module
}

#[test]
fn rank_one_entries_match_their_formulas() {
    let (lo, hi) = (-12, 12);
    let eg = catalogue(1, "EG+").unwrap().object;
    assert!(eg.top.is_zero());
    assert_eq!(dims(leg1(&eg), lo, hi), evens(lo, hi, 2, hi));

    let ef = catalogue(1, "EF~").unwrap().object;
    assert!(ef.legs.is_empty());
    assert_eq!(dims(&ef.top, lo, hi), evens(lo, hi, 0, 0));

    for (name, shift) in [("S0", 2), ("S^1z", 4), ("S^-1z", 0), ("S^-2z", -2)] {
        let s = catalogue(1, name).unwrap().object;
        assert_eq!(dims(&s.top, lo, hi), evens(lo, hi, 0, 0), "{name}");
        assert_eq!(dims(leg1(&s), lo, hi), evens(lo, hi, shift, hi), "{name}");
        assert_eq!(s.legs[0].q_at(0).unwrap().rank(), 1, "{name}");
    }

    let gp = catalogue(1, "G+").unwrap().object;
    assert_eq!(dims(leg1(&gp), lo, hi), evens(lo, hi, 2, 2));
    for n in 1..=3 {
        let ds = catalogue(1, &format!("DS({n}z)+")).unwrap().object;
        assert_eq!(dims(leg1(&ds), lo, hi), evens(lo, hi, -2 * (n - 1), 0));
        assert!(ds.top.is_zero());
    }
    // E<1> is EG+ and E<G> is EF~
    let e1 = catalogue(1, "E<1>").unwrap().object;
    assert_eq!(dims(leg1(&e1), lo, hi), dims(leg1(&eg), lo, hi));
    let eg_ = catalogue(1, "E<G>").unwrap().object;
    assert_eq!(dims(&eg_.top, lo, hi), dims(&ef.top, lo, hi));
}

#[test]
fn rank_two_entries() {
    let e1 = catalogue(2, "E<1>").unwrap().object;
    let b = e1.bottom.as_ref().unwrap().realize(0, 8).unwrap();
    // Σ⁴ P^∨ over two variables: d/2 − 1 monomials in degree d ≥ 4
    for d in 0..=8 {
        let want = if d >= 4 && d % 2 == 0 { (d / 2 - 1) as usize } else { 0 };
        assert_eq!(b.dim(d).unwrap(), want, "{d}");
    }
    let k = Subgroup::connected(ConnSubgroup::circle(1, 1).unwrap());
    let ec = catalogue(2, "E<circle(1,1)>").unwrap().object;
    assert_eq!(dims(&ec.leg(&k).unwrap().module, -4, 6), evens(-4, 6, 2, 6));
    assert!(catalogue(2, "E<G>").unwrap().object.top.dim(0).unwrap() == 1);
    for name in RANK2 {
        assert!(catalogue(2, name).unwrap().object.invariants().unwrap().all(), "{name}");
    }
    assert!(catalogue(2, "S0").is_err());
    assert!(catalogue(1, "S^z").is_err());
    assert!(catalogue(1, "DS(0z)+").is_err());
}

#[test]
fn rank_two_pages() {
    let w = (-6, 6);
    let p = |x: &str, y: &str| {
        let (a, b) = (catalogue(2, x).unwrap(), catalogue(2, y).unwrap());
        adams_e2((x, &a.object), (y, &b.object), w, None, EX).unwrap()
    };
    let entries = |pg: &E2Page| pg.table.entries();
    // End of Σ² k[c]^∨ over the circle's ring is k[[c]]
    for c in ["E<circle(1,0)>", "E<circle(1,1)>"] {
        assert_eq!(entries(&p(c, c)), (-3..=0).map(|k| (0, 2 * k, 1)).collect::<Vec<_>>(), "{c}");
    }
    // the rank-two shadow of [EF~, EG+]: one class in every odd stem
    let g = p("E<G>", "E<circle(1,0)>");
    assert_eq!(entries(&g), (-3..=3).map(|k| (1, 2 * k, 1)).collect::<Vec<_>>());
    assert_eq!(entries(&p("E<G>", "E<G>")), vec![(0, 0, 1)]);
    assert!(entries(&p("E<circle(1,0)>", "E<circle(1,1)>")).is_empty());
    let b = p("B(1,0,2)", "B(1,0,2)");
    assert!(b.is_finite() && b.collapse.is_none());
}

fn page(x: &str, y: &str, w: (i64, i64), shuffle: Option<Shuffle>) -> E2Page {
    let (a, b) = (catalogue(1, x).unwrap(), catalogue(1, y).unwrap());
    adams_e2((x, &a.object), (y, &b.object), w, shuffle, EX).unwrap()
}

/// `dim [X, Y]_n` for stems in `[lo, hi]`, read off the collapsed page.
fn stems(p: &E2Page, lo: i64, hi: i64) -> Vec<usize> {
    let c = p.collapse.as_ref().unwrap();
    assert!(c.d2_candidates.is_empty());
    (lo..=hi)
        .map(|n| {
            let b = c.stems.iter().find(|b| b.stem == n).unwrap();
            assert_eq!(b.lo, b.hi);
            b.hi
        })
        .collect()
}

#[test]
fn pages_agree_with_known_homotopy() {
    let w = (-10, 10);
    // tom Dieck splitting: [S0, S0]_n = ℚ for n = 0 and n odd positive
    let want: Vec<usize> = (-8..=8).map(|n| usize::from(n == 0 || (n > 0 && n % 2 == 1))).collect();
    assert_eq!(stems(&page("S0", "S0", w, None), -8, 8), want);
    // Adams isomorphism: π_n(EG+) = H_{n−1}(BG)
    let want: Vec<usize> = (-8..=8).map(|n| usize::from(n > 0 && n % 2 == 1)).collect();
    assert_eq!(stems(&page("S0", "EG+", w, None), -8, 8), want);
    // [EG+, S0]_n = H^{−n}(BG)
    let want: Vec<usize> = (-8..=8).map(|n| usize::from(n <= 0 && n % 2 == 0)).collect();
    assert_eq!(stems(&page("EG+", "S0", w, None), -8, 8), want);
    // [EF~, Σ^{−1}EG+] is the Tate module: every odd stem
    let want: Vec<usize> = (-8..=8).map(|n| usize::from(n % 2 != 0)).collect();
    assert_eq!(stems(&page("EF~", "EG+", w, None), -8, 8), want);
    assert!(page("EG+", "EF~", w, None).table.entries().is_empty());
}

#[test]
fn geometric_isotropy_page_is_one_point() {
    let p = page("EF~", "EF~", (-6, 6), None);
    assert_eq!(p.table.entries(), vec![(0, 0, 1)]);
    assert_eq!(p.edge().iter().filter(|e| e.1 > 0).count(), 1);
}

#[test]
fn text_forms() {
    let p = page("S0", "S0", (-3, 3), None);
    let tsv = p.to_tsv();
    let mut lines = tsv.lines();
    assert_eq!(lines.next(), Some(FORMAT_TAG));
    assert!(tsv.contains("\ns\tt\tdim\n0\t0\t1\n1\t2\t1\n"));
    assert!(tsv.contains("collapses at E3"));
    let pretty = p.to_pretty();
    assert!(pretty.starts_with(FORMAT_TAG) && pretty.contains(" 0* |"));
    assert_eq!(tsv, page("S0", "S0", (-3, 3), Some(Shuffle { seed: 5 })).to_tsv());
}

#[test]
fn every_rank_one_pair_is_finite() {
    for x in RANK1 {
        for y in RANK1 {
            let p = page(x, y, (-4, 4), None);
            assert!(p.is_finite(), "{x} {y}");
            assert!(p.table.dims[3..].iter().flatten().all(|&d| d == 0));
        }
    }
}
