//! Criteria 1 to 6: module-level algebra.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::corpus::{rank1_atoms, rank1_objects};
use super::{verdict, SEED};
use crate::atcat::{build, Desc};
use crate::error::Result;
use crate::exec::Exec;
use crate::gmod::{completion_by, witness_module, witness_tower, Atom, Module, Tower, TowerAt};
use crate::homalg::{ext_tate, gorenstein_embed, koszul_self_duality, lcoh_floor, next_form, polynomial_ring, stable_koszul_lcoh};
use crate::qlinalg::Matrix;
use crate::resolve::{ext_at, inj_res_sf_rank1, SAMPLE_CIRCLES};
use crate::rings::{ConnSubgroup, MultSet, Poly, Subgroup};

const WINDOW: (i64, i64) = (-30, 30);

/// Criterion 1: fifty seeded semifree objects resolve in at most two steps, exactly.
pub fn semifree_resolutions(ex: Exec) -> Result<(bool, String)> {
    let corpus = rank1_objects(SEED, 50)?;
    let mut bad = Vec::new();
    let mut longest = 0;
    for (s, x) in &corpus {
        let r = inj_res_sf_rank1(x, ex)?;
        longest = longest.max(r.length());
        if r.length() > 2 {
            bad.push(format!("{s}: length {}", r.length()));
            continue;
        }
        if !r.is_exact(ex)? {
            bad.push(format!("{s}: not exact"));
            continue;
        }
        // the acyclicity above covers every degree; spell out the window
        for k in r.vertices() {
            let c = r.complex_at(&k)?;
            for i in 0..c.len() {
                let h = c.cohomology(i, ex)?;
                if let Some(d) = (WINDOW.0..=WINDOW.1).find(|&d| h.dim(d).map_or(true, |n| n > 0)) {
                    bad.push(format!("{s}: H^{i} at {k} in degree {d}"));
                }
            }
        }
        if !r.terms.iter().all(|t| t.invariants().is_ok_and(|i| i.all())) {
            bad.push(format!("{s}: a term fails the object invariants"));
        }
    }
    let (ok, mut d) = verdict(corpus.len(), "objects", bad);
    d.push_str(&format!(", longest resolution {longest}, window [{}, {}]", WINDOW.0, WINDOW.1));
    Ok((ok, d))
}

/// Criterion 2: `Ext(f_G(ℚ), a_1(T))` sits in row 2 and equals `Ext¹_{k[c]}(t, T)`.
pub fn ext_concentration(ex: Exec) -> Result<(bool, String)> {
    let atoms = rank1_atoms(SEED, 50);
    let fg = build(1, &Desc::F(Subgroup::whole(), Atom::Dual(0)))?;
    let degrees: Vec<i64> = (WINDOW.0..=WINDOW.1).collect();
    let mut bad = Vec::new();
    let mut nonzero = 0;
    for t in &atoms {
        let y = build(1, &Desc::A(Subgroup::trivial(), t.clone()))?;
        let e = ext_at(&fg, &y, &degrees, None, ex)?;
        let tm = t.realize(None)?;
        let oracle = ext_tate(&tm, &degrees, 24, ex)?;
        let Some(want) = oracle.ext_res.clone() else {
            bad.push(format!("{t}: no independent Ext"));
            continue;
        };
        if !oracle.agree() {
            bad.push(format!("{t}: the two Ext pipelines disagree"));
        }
        if e.dims[2] != want {
            bad.push(format!("{t}: row 2 differs from Ext^1(t, T)"));
        }
        if e.dims.iter().enumerate().any(|(s, row)| s != 2 && row.iter().any(|&d| d > 0)) {
            bad.push(format!("{t}: nonzero outside row 2"));
        }
        nonzero += want.iter().sum::<usize>();
    }
    let (ok, mut d) = verdict(atoms.len(), "modules", bad);
    d.push_str(&format!(", total dim of row 2: {nonzero}"));
    Ok((ok, d))
}

/// The first `n` forms not vanishing on `k`, in the fixed search order.
fn forms_for(rank: usize, k: ConnSubgroup, n: usize) -> Result<MultSet> {
    let mut ms = MultSet::new(rank, k, vec![])?;
    for _ in 0..n {
        match next_form(&ms) {
            Some(f) => ms = ms.enlarged(f)?,
            None => break,
        }
    }
    Ok(ms)
}

/// Criterion 3: the Gorenstein embedding is an isomorphism degreewise, and stays one
/// when `S` grows by one form.
pub fn gorenstein(ex: Exec) -> Result<(bool, String)> {
    let w = (-12, 12);
    let mut cases = vec![(1, ConnSubgroup::Trivial, 0), (2, ConnSubgroup::Trivial, 0)];
    for (p, q) in SAMPLE_CIRCLES {
        for n in 1..=3 {
            cases.push((2, ConnSubgroup::circle(p, q)?, n));
        }
    }
    let mut bad = Vec::new();
    let mut enlarged = 0;
    for &(rank, k, n) in &cases {
        let ms = forms_for(rank, k, n)?;
        let r = gorenstein_embed(&ms, w, 3, ex)?;
        if !r.certified() {
            bad.push(format!("{k} in rank {rank} with {} forms: not an isomorphism", ms.forms.len()));
        }
        match &r.enlargement {
            Some(e) if !e.stable() => bad.push(format!("{k} in rank {rank}: changes when {} is inverted", e.form)),
            Some(_) => enlarged += 1,
            // no form is a unit at the trivial subgroup
            None if k == ConnSubgroup::Trivial => {}
            None => bad.push(format!("{k}: no form to enlarge by")),
        }
    }
    let (ok, mut d) = verdict(cases.len(), "subgroup and denominator choices", bad);
    d.push_str(&format!(", {enlarged} enlargements stable"));
    Ok((ok, d))
}

/// Negative monomials `x^{−a} y^{−b}` (`a, b ≥ 1`) of degree `d`, counted by
/// enumeration with `deg x = −2`.
fn negative_monomials(d: i64) -> usize {
    let mut n = 0;
    for a in 1..=d.abs() {
        for b in 1..=d.abs() {
            if 2 * (a + b) == d {
                n += 1;
            }
        }
    }
    n
}

/// Criterion 4: local cohomology of the polynomial rings.
pub fn local_cohomology(ex: Exec) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    // one variable against the atom Σ² k[c]^∨
    let degs: Vec<i64> = (-20..=20).collect();
    let h = 12;
    let p = polynomial_ring(1, lcoh_floor(&degs, 1, h))?;
    let lc = stable_koszul_lcoh(&p, &[0], &degs, h, ex)?;
    let dual = Atom::Susp(2, Box::new(Atom::Dual(1))).realize(None)?;
    for (k, &d) in degs.iter().enumerate() {
        if lc.dims[0][k] != 0 || lc.dims[1][k] != dual.dim(d)? || !lc.stabilized[1][k] {
            bad.push(format!("Q[x] in degree {d}"));
        }
    }
    // two variables, on the requested window and its mirror image, where
    // the negative monomials live with generators in degree −2
    let mut nonzero = 0;
    for degs in [(-20..=-4).collect::<Vec<i64>>(), (4..=20).collect()] {
        let h = 12;
        let p = polynomial_ring(2, lcoh_floor(&degs, 2, h))?;
        let lc = stable_koszul_lcoh(&p, &[0, 1], &degs, h, ex)?;
        for (k, &d) in degs.iter().enumerate() {
            let want = negative_monomials(d);
            nonzero += want;
            if (lc.dims[0][k], lc.dims[1][k], lc.dims[2][k]) != (0, 0, want) || !lc.stabilized[2][k] {
                bad.push(format!("Q[x,y] in degree {d}: {} vs {want}", lc.dims[2][k]));
            }
        }
    }
    let (ok, mut d) = verdict(41 + 34, "degrees", bad);
    d.push_str(&format!(", H^2 total {nonzero} on [-20,-4] and [4,20]"));
    Ok((ok, d))
}

/// Criterion 5: `P/𝔪^[n]` is self-dual and its annihilator in `H^s_𝔪(P)` is the box.
pub fn self_duality(ex: Exec) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for s in 1..=2usize {
        for n in 1..=3u32 {
            let sd = koszul_self_duality(s, n, ex)?;
            let gen = vec![-(n as i64); s];
            if !(sd.invertible() && sd.balanced && sd.generated && sd.is_box() && sd.generator == gen) {
                bad.push(format!("s={s} n={n}"));
            }
        }
    }
    Ok(verdict(6, "pairs (s, n)", bad))
}

/// A random surjection `k^a → k^b`, `b ≤ a`.
fn surjection(rng: &mut ChaCha8Rng, b: usize, a: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<i64>> = (0..b).map(|_| (0..a).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = if b == 0 { Matrix::zeros(0, a) } else { Matrix::from_i64(&refs) };
        if m.rank() == b {
            return m;
        }
    }
}

/// Criterion 6: lim¹ of Mittag-Leffler towers, the witness tower, and completion.
pub fn lim1_laws(ex: Exec) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut checked = 0;
    // seeded towers of surjections, constant from some stage on
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..20 {
        let h = rng.gen_range(3..=7);
        let mut dims = vec![rng.gen_range(0..=2)];
        for _ in 0..h - 2 {
            let last = *dims.last().unwrap();
            dims.push(last + rng.gen_range(0..=2));
        }
        let top = *dims.last().unwrap();
        dims.extend([top, top]);
        let maps = (0..h).map(|j| surjection(&mut rng, dims[j], dims[j + 1])).collect();
        let r = TowerAt::new(0, dims, maps)?.report()?;
        checked += 1;
        if !r.mittag_leffler || !r.stabilized || r.lim1 != Some(0) || r.lim != Some(top) {
            bad.push(format!("surjective tower {i}"));
        }
    }
    // towers of modules under c: the dual and the Tate module are onto
    for m in [Atom::Dual(1), Atom::Tate, Atom::Susp(3, Box::new(Atom::Dual(1)))] {
        let t = Tower::of_powers(&m.realize(None)?, &Poly::var(1, 0), 6, -10, 10)?;
        for r in t.lim_lim1(&(-10..=10).collect::<Vec<_>>(), ex)? {
            checked += 1;
            if r.stabilized && r.lim1 != Some(0) {
                bad.push(format!("{m} in degree {}", r.degree));
            }
        }
    }
    // the truncated witness tower in degree 2: image dims N − k
    for n in [3u32, 6, 10] {
        let t = witness_tower(n, n as usize, 0, 2 * n as i64)?;
        let r = &t.lim_lim1(&[2], ex)?[0];
        let want: Vec<usize> = (0..=n as usize).map(|k| n as usize - k).collect();
        checked += 1;
        if r.image_dims != want {
            bad.push(format!("witness N={n}: images {:?}", r.image_dims));
        }
    }
    // completion cokernel against lim¹ where both are known
    let mut both = 0;
    let modules: Vec<(String, Module, Poly)> = vec![
        ("witness(1,4)".into(), witness_module(1, 4)?, Poly::var(1, 0)),
        ("witness(2,3)".into(), witness_module(2, 3)?, Poly::var(2, 0)),
        ("k[c]".into(), Atom::Free(0).realize(Some((-12, 0)))?, Poly::var(1, 0)),
        ("k[c]/c^3".into(), Atom::Cyclic(0, 3).realize(None)?, Poly::var(1, 0)),
        ("dual".into(), Atom::Dual(1).realize(Some((-4, 12)))?, Poly::var(1, 0)),
    ];
    for (name, m, e) in &modules {
        let c = completion_by(m, e, 8, ex)?;
        for row in &c.degrees {
            if let (Some(a), Some(b)) = (row.cokernel, row.lim1) {
                both += 1;
                if a != b {
                    bad.push(format!("{name} in degree {}: cokernel {a}, lim^1 {b}", row.degree));
                }
            }
        }
    }
    checked += both;
    let (ok, mut d) = verdict(checked, "towers and degrees", bad);
    d.push_str(&format!(", {both} completion degrees compared"));
    Ok((ok, d))
}
