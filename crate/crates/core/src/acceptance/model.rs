//! Criteria 7 to 10: the torsion model.

use super::corpus::{rank1_atoms, rank2_objects};
use super::{verdict, SEED};
use crate::adams::{adams_e2, catalogue, RANK1};
use crate::atcat::{build, eval_via_colim, mk_a_presented, presented_of_atom, AtObject};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gmod::{Atom, MatlisPresented};
use crate::homalg::inj_res_kc;
use crate::resolve::{ext_at, inj_res_general, Shuffle};
use crate::rings::Subgroup;
use crate::text::parse_object;

fn obj(rank: usize, s: &str) -> Result<AtObject> {
    build(rank, &parse_object(s)?)
}

/// Criterion 7: twenty rank-two objects with at most five injective stages, both
/// certificate families at every stage, exact computed parts.
pub fn general_resolutions(ex: Exec) -> Result<(bool, String)> {
    let corpus = rank2_objects(SEED, 20)?;
    let mut bad = Vec::new();
    let mut lengths = [0usize; 5];
    for (s, x) in &corpus {
        let r = inj_res_general(x, (-12, 12), ex)?;
        let stages = r.length() + 1;
        if let Some(n) = lengths.get_mut(r.length()) {
            *n += 1;
        }
        if stages > 5 {
            bad.push(format!("{s}: {stages} stages"));
        }
        if let Some(c) = r.certs.iter().find(|c| !c.holds) {
            bad.push(format!("{s}: stage {} phase {}: {}", c.stage, c.phase, c.detail));
        }
        if !r.certified() || !r.exact {
            bad.push(format!("{s}: certified {} exact {}", r.certified(), r.exact));
        }
    }
    let (ok, mut d) = verdict(corpus.len(), "objects", bad);
    d.push_str(&format!(", lengths 0..4: {lengths:?}"));
    Ok((ok, d))
}

struct Probe {
    name: String,
    target: AtObject,
    /// Stated injective dimension of `T`.
    id: usize,
    /// The same, computed from a resolution of `T`.
    computed: usize,
}

fn one_variable(rank: usize, l: &str, t: &Atom, id: usize) -> Result<Probe> {
    let s = format!("a({l},({t}))");
    let computed = inj_res_kc(&t.realize(None)?, Exec::Sequential)?.length();
    Ok(Probe { name: s.clone(), target: obj(rank, &s)?, id, computed })
}

fn plane(name: &str, m: &MatlisPresented, id: usize) -> Result<Probe> {
    let computed = m.injective_dim()?.unwrap_or(0);
    Ok(Probe { name: name.into(), target: mk_a_presented(m)?, id, computed })
}

/// Criterion 8: `Ext^s(X, a_L(T)) = 0` for `s > id(T)`.
pub fn ext_vanishing(ex: Exec) -> Result<(bool, String)> {
    let mut probes = Vec::new();
    for t in rank1_atoms(SEED + 1, 10) {
        let id = match &t {
            Atom::Susp(_, _) => 0,
            Atom::Sum(ps) if ps.iter().all(|p| matches!(p, Atom::Susp(..))) => 0,
            _ => 1,
        };
        probes.push((1, one_variable(1, "1", &t, id)?));
    }
    probes.push((1, Probe { name: "a(G,(dual(Q)))".into(), target: obj(1, "a(G,(dual(Q)))")?, id: 0, computed: 0 }));
    probes.push((2, one_variable(2, "circle(1,0)", &Atom::Cyclic(0, 2), 1)?));
    probes.push((2, one_variable(2, "circle(1,-1)", &Atom::Susp(2, Box::new(Atom::Dual(1))), 0)?));
    probes.push((2, plane("a(1,(dual(Q[x,y])))", &MatlisPresented::injective(2, &[0]), 0)?));
    probes.push((2, plane("a(1,(koszul(Q[x,y],1)))", &presented_of_atom(&Atom::KoszulQuot(2, 1))?, 2)?));
    probes.push((2, plane("a(1,(koszul(Q[x,y],2)))", &presented_of_atom(&Atom::KoszulQuot(2, 2))?, 2)?));

    let sources1 = ["f(G,(dual(Q)))", "f(1,(cyc(2)))", "f(1,(susp(2,dual)))", "b(G,0,1)", "a(1,(cyc(-1,3)))"];
    let sources2 = [
        "f(1,(koszul(Q[x,y],1)))",
        "f(1,(susp(2,koszul(Q[x,y],2))))",
        "f(G,(dual(Q)))",
        "f(circle(1,0),(cyc(2)))",
    ];
    let degrees: Vec<i64> = (-12..=12).collect();
    let mut bad = Vec::new();
    let (mut checked, mut refused) = (0, 0);
    for (rank, p) in &probes {
        if p.id != p.computed {
            bad.push(format!("{}: stated id {} but the resolution has length {}", p.name, p.id, p.computed));
        }
        let sources: &[&str] = if *rank == 1 { &sources1 } else { &sources2 };
        for s in sources {
            let x = obj(*rank, s)?;
            match ext_at(&x, &p.target, &degrees, None, ex) {
                Ok(e) => {
                    checked += 1;
                    if let Some(top) = e.top_row().filter(|&s| s > p.id) {
                        bad.push(format!("Ext^{top}({s}, {}) is nonzero", p.name));
                    }
                }
                Err(Error::Unsupported(_)) => refused += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let (ok, mut d) = verdict(checked, "pairs", bad);
    d.push_str(&format!(", {} targets, {refused} pairs outside the exact Ext cases", probes.len()));
    Ok((ok, d))
}

/// Criterion 9: evaluation at `K` recovered from `Hom(B_K(V, n), –)`.
pub fn evaluation(ex: Exec) -> Result<(bool, String)> {
    let w = (-8, 8);
    let mut cases: Vec<(String, AtObject, Subgroup)> = Vec::new();
    for name in RANK1 {
        let x = catalogue(1, name)?.object;
        for k in [Subgroup::trivial(), Subgroup::whole()] {
            cases.push((name.to_string(), x.clone(), k));
        }
    }
    for (s, k) in [
        ("f(1,(koszul(Q[x,y],1)))", Subgroup::trivial()),
        ("f(1,(koszul(Q[x,y],2)))", Subgroup::trivial()),
        ("f(1,(susp(2,koszul(Q[x,y],3))))", Subgroup::trivial()),
        ("f(1,(sum(koszul(Q[x,y],1),susp(-2,koszul(Q[x,y],2)))))", Subgroup::trivial()),
        ("f(G,(susp(2,dual(Q))))", Subgroup::whole()),
    ] {
        cases.push((s.to_string(), obj(2, s)?, k));
    }
    let mut bad = Vec::new();
    let mut settled = Vec::new();
    for (name, x, k) in &cases {
        let r = eval_via_colim(x, *k, 12, w, ex)?;
        if !r.certified() || r.recovered() != r.target_dims {
            bad.push(format!("{name} at {k}: stable from {:?}", r.stable_from));
        }
        settled.push(r.stable_from.unwrap_or(0));
    }
    let (ok, mut d) = verdict(cases.len(), "objects and subgroups", bad);
    d.push_str(&format!(", horizon 12, latest stabilization at stage {}", settled.iter().max().unwrap_or(&0)));
    Ok((ok, d))
}

/// Criterion 10: for every ordered pair of rank-one catalogue entries, pages
/// vanish above row 2 and print identically across runs and re-shuffled resolutions.
pub fn adams_pipeline(ex: Exec) -> Result<(bool, String)> {
    let entries = RANK1.iter().map(|n| catalogue(1, n)).collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(usize, usize)> = (0..entries.len()).flat_map(|i| (0..entries.len()).map(move |j| (i, j))).collect();
    let w = (-10, 10);
    let bad = exec::try_map(ex, &pairs, |&(i, j)| -> Result<Option<String>> {
        let (x, y) = (&entries[i], &entries[j]);
        let run = |sh: Option<Shuffle>| adams_e2((&x.name, &x.object), (&y.name, &y.object), w, sh, Exec::Sequential);
        let first = run(None)?;
        let tsv = first.to_tsv();
        let again = run(None)?.to_tsv() == tsv;
        let shuffled = [3, 11].iter().all(|&seed| run(Some(Shuffle { seed })).is_ok_and(|p| p.to_tsv() == tsv));
        let finite = first.is_finite() && first.table.dims.iter().skip(3).flatten().all(|&d| d == 0);
        Ok((!(again && shuffled && finite)).then(|| {
            format!("[{}, {}]: repeatable {again}, shuffle-invariant {shuffled}, finite {finite}", x.name, y.name)
        }))
    })?;
    Ok(verdict(pairs.len(), "ordered pairs", bad.into_iter().flatten().collect()))
}
