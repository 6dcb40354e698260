//! Products, geometric fixed points, the cokernels `C_K X`, the objects
//! `B_K(V, n)` and construction from descriptions.

use super::object::{
    mk_a, mk_a_presented, mk_f, mk_f_presented, presented_sum, ring_vars, vector_space, AtObject, Bottom, Desc,
    Isotropy, Leg,
};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{Atom, MatlisPresented, ModMap, Module};
use crate::qlinalg::{GradedSpace, Matrix, Tail};
use crate::rings::{ConnSubgroup, EulerClass, PolyMatrix, Subgroup};

/// Componentwise product of finitely many objects. With finite support the
/// torsion functor Γ is the identity on it.
pub fn product(xs: &[&AtObject]) -> Result<AtObject> {
    let Some(first) = xs.first() else {
        return Err(Error::Invalid("empty product needs a rank".into()));
    };
    let (rank, mode) = (first.rank, first.mode);
    for x in xs {
        if x.mode != mode {
            return Err(Error::MixedIsotropy);
        }
        if x.rank != rank {
            return Err(Error::Invalid("product of objects of different rank".into()));
        }
    }
    if xs.len() == 1 {
        return Ok((*xs[0]).clone());
    }
    let top = Module::direct_sum(&xs.iter().map(|x| &x.top).collect::<Vec<_>>())?;
    let mut subs: Vec<Subgroup> = xs.iter().flat_map(|x| x.legs.iter().map(|l| l.sub)).collect();
    subs.sort();
    subs.dedup();
    let mut out = AtObject::zero(rank, mode);
    out.top = top.clone();
    for sub in subs {
        let zero = Module::zero(1);
        let mods: Vec<&Module> = xs.iter().map(|x| x.leg(&sub).map_or(&zero, |l| &l.module)).collect();
        let t = Module::direct_sum(&mods)?;
        let leg = Leg::new(&top, sub, t, |d| {
            let blocks = xs
                .iter()
                .map(|x| match x.leg(&sub) {
                    Some(l) => l.q_at(d),
                    None => Ok(Matrix::zeros(0, x.top.dim(d)?)),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::block_diag(&blocks.iter().collect::<Vec<_>>()))
        })?;
        out.legs.push(leg);
    }
    let bottoms: Vec<&Bottom> = xs.iter().filter_map(|x| x.bottom.as_ref()).collect();
    if !bottoms.is_empty() {
        if bottoms.iter().all(|b| matches!(b, Bottom::Finite(_))) {
            let ms: Vec<&Module> = bottoms
                .iter()
                .map(|b| match b {
                    Bottom::Finite(m) => m,
                    Bottom::Presented(_) => unreachable!(),
                })
                .collect();
            out.bottom = Some(Bottom::Finite(Module::direct_sum(&ms)?));
        } else {
            let ps = bottoms.iter().map(|b| b.presented()).collect::<Result<Vec<_>>>()?;
            out.bottom = Some(Bottom::Presented(presented_sum(&ps.iter().collect::<Vec<_>>())?));
        }
    }
    out.formal = xs.iter().flat_map(|x| x.formal.iter().cloned()).collect();
    let descs: Option<Vec<Desc>> = xs.iter().map(|x| x.desc.clone()).collect();
    out.desc = descs.map(Desc::Prod);
    out.normalized().validate()
}

/// Geometric fixed points `Φ^K X`, an object over `G/K`: the components
/// at subgroups containing `K`, re-indexed.
pub fn phi_fixed(x: &AtObject, k: Subgroup) -> Result<AtObject> {
    if k == Subgroup::trivial() {
        return Ok(x.clone());
    }
    if !x.formal.is_empty() {
        return Err(Error::Unsupported("fixed points of formal components".into()));
    }
    if k == Subgroup::whole() {
        let mut out = AtObject::zero(0, Isotropy::Connected);
        out.top = x.top.clone();
        return Ok(out);
    }
    let mut out = AtObject::zero(x.rank - k.conn.dim(x.rank), Isotropy::Connected);
    if k.order > 1 {
        out.rank = 1;
    }
    out.top = x.top.clone();
    if let Some(l) = x.leg(&k) {
        out.legs.push(Leg { sub: Subgroup::trivial(), module: l.module.clone(), q: l.q.clone() });
    }
    out.normalized().validate()
}

/// `C_K X`: the cokernel of the total horizontal map into the component
/// at `K` from larger subgroups. For a leg this is the cokernel of the
/// evaluation `t ⊗ V → T`, whose image is `ev(t·q(V))`.
pub fn c_k_cokernel(x: &AtObject, k: Subgroup, window: (i64, i64), ex: Exec) -> Result<Module> {
    if k == Subgroup::whole() {
        return x.component(&k, window);
    }
    if x.rank == 2 && k == Subgroup::trivial() {
        return x.component(&k, window);
    }
    if !x.formal.is_empty() {
        return Err(Error::Unsupported("cokernels at circles of formal components".into()));
    }
    let Some(leg) = x.leg(&k) else { return Ok(Module::zero(1)) };
    let t = &leg.module;
    let tt = t.tate_dual()?;
    if tt.is_zero() {
        return Ok(t.clone());
    }
    // the t-submodule generated by q(V) is periodic: one subspace per parity
    let (lo, hi) = (leg.q.src.lo - 2, leg.q.src.hi + 2);
    let mut spans: Vec<Matrix> = Vec::new();
    for e in [tt.hi() - 1, tt.hi()] {
        let blocks = (lo..=hi)
            .filter(|d| (d - e).rem_euclid(2) == 0)
            .map(|d| leg.q_at(d))
            .collect::<Result<Vec<_>>>()?;
        let rows = tt.dim(e)?;
        let all = blocks.into_iter().fold(Matrix::zeros(rows, 0), |acc, b| {
            Matrix::hstack(&[&acc, &b]).expect("same row count")
        });
        spans.push(all.image());
    }
    let space = GradedSpace::new(tt.hi() - 1, tt.hi(), spans.iter().map(|m| m.cols()).collect(), Tail::Periodic, Tail::Periodic)?;
    let s = Module::new(1, space, vec![vec![]])?;
    let iota = ModMap::from_fn(&s, &tt, |d| {
        let e = if (d - tt.hi()).rem_euclid(2) == 0 { tt.hi() } else { tt.hi() - 1 };
        Ok(spans[(e - tt.hi() + 1) as usize].clone())
    })?;
    let ev = t.tate_ev()?.compose(&iota)?;
    let (c, _, _) = ev.cokernel(ex)?;
    c.trimmed()
}

/// The Artinian module described by an atom over two variables.
pub fn presented_of_atom(a: &Atom) -> Result<MatlisPresented> {
    match a {
        Atom::Dual(2) => Ok(MatlisPresented::injective(2, &[0])),
        Atom::LocCohTop(2) => Ok(MatlisPresented::injective(2, &[4])),
        Atom::Susp(s, x) => {
            let p = presented_of_atom(x)?;
            let pres = PolyMatrix {
                n: p.pres.n,
                tgt_deg: p.pres.tgt_deg.iter().map(|g| g - s).collect(),
                src_deg: p.pres.src_deg.iter().map(|g| g - s).collect(),
                entries: p.pres.entries.clone(),
            };
            Ok(MatlisPresented::new(pres))
        }
        Atom::Sum(parts) => {
            let ps = parts.iter().map(presented_of_atom).collect::<Result<Vec<_>>>()?;
            presented_sum(&ps.iter().collect::<Vec<_>>())
        }
        _ => {
            let m = a.realize(None)?;
            if m.nvars != 2 {
                return Err(Error::Invalid(format!("{a} is not a module over two variables")));
            }
            MatlisPresented::from_module(&m)
        }
    }
}

fn atom_is_finite(a: &Atom) -> Result<bool> {
    Ok(match a {
        Atom::Dual(s) | Atom::LocCohTop(s) => *s == 0,
        Atom::Susp(_, x) => atom_is_finite(x)?,
        Atom::Sum(ps) => ps.iter().map(atom_is_finite).collect::<Result<Vec<_>>>()?.into_iter().all(|b| b),
        _ => a.realize(None)?.is_finite(),
    })
}

fn atom_module(rank: usize, k: &Subgroup, a: &Atom) -> Result<Module> {
    let want = ring_vars(rank, k);
    let have = a.nvars()?;
    if have != want {
        return Err(Error::Invalid(format!("{a} has {have} variables; the ring at {k} has {want}")));
    }
    a.realize(None)
}

/// Builds an object from its description.
pub fn build(rank: usize, d: &Desc) -> Result<AtObject> {
    let x = match d {
        Desc::F(k, a) | Desc::A(k, a) => {
            let is_f = matches!(d, Desc::F(..));
            if ring_vars(rank, k) == 2 && !atom_is_finite(a)? {
                let p = presented_of_atom(a)?;
                if is_f {
                    mk_f_presented(&p)?
                } else {
                    mk_a_presented(&p)?
                }
            } else {
                let m = atom_module(rank, k, a)?;
                if is_f {
                    mk_f(rank, *k, &m)?
                } else {
                    mk_a(rank, *k, &m)?
                }
            }
        }
        Desc::B(k, v, n) => b_object(rank, *k, v, *n)?,
        Desc::Prod(parts) => {
            if parts.is_empty() {
                AtObject::zero(rank, Isotropy::Connected)
            } else {
                let xs = parts.iter().map(|p| build(rank, p)).collect::<Result<Vec<_>>>()?;
                product(&xs.iter().collect::<Vec<_>>())?
            }
        }
    };
    Ok(x.with_desc(d.clone()))
}

/// `B_K(V, n)`, corepresenting evaluation at `K` in the colimit over
/// `(V, n)`. Rank one: `B_1(0, n) = f_1(k[c]/cⁿ)` and
/// `B_G(V, n) = (ℚ → Σ^{2−|V|}k[c]^∨)` with `q` the generator. Rank two:
/// only `B_1(0, n) = f_1(P/𝔪^[n])` is built as an object.
pub fn b_object(rank: usize, k: Subgroup, v: &EulerClass, n: u32) -> Result<AtObject> {
    if v.fixed_dim(k.conn) != 0 {
        return Err(Error::Invalid(format!("the representation has nonzero {k}-fixed points")));
    }
    if k.order > 1 {
        return Err(Error::Unsupported("B objects for finite subgroups".into()));
    }
    let desc = Desc::B(k, v.clone(), n);
    if n == 0 {
        return Ok(AtObject::zero(rank, Isotropy::Connected).with_desc(desc));
    }
    let x = match (rank, k.conn) {
        (_, ConnSubgroup::Trivial) => mk_f(rank, k, &b_component(rank, k, n)?)?,
        (1, ConnSubgroup::Full) => sphere_rank1(-v.real_dim())?,
        _ => {
            return Err(Error::Unsupported(format!(
                "B_{k} in rank {rank}: only its component at {k} is built (see b_component)"
            )))
        }
    };
    Ok(x.with_desc(desc))
}

/// Rank one: the sphere `S^V` of a representation with `V^G = 0` and real
/// dimension `dim` (negative for `S^{−V}`), `ℚ → Σ^{2+dim}k[c]^∨` with `q`
/// the generator.
pub fn sphere_rank1(dim: i64) -> Result<AtObject> {
    let leg = Atom::Susp(2 + dim, Box::new(Atom::Dual(1))).realize(None)?;
    let mut x = AtObject::zero(1, Isotropy::Connected);
    x.top = vector_space(&Atom::Dual(0).realize(None)?)?;
    let top = x.top.clone();
    let tt = leg.tate_dual()?;
    x.legs.push(Leg::new(&top, Subgroup::trivial(), leg, |d| {
        let (r, c) = (tt.dim(d)?, top.dim(d)?);
        Ok(if r * c > 0 { Matrix::identity(1) } else { Matrix::zeros(r, c) })
    })?);
    x.normalized().validate()
}

/// The component of `B_K(V, n)` at `K`: `H*(BG/K)/𝔪^[n]`.
pub fn b_component(rank: usize, k: Subgroup, n: u32) -> Result<Module> {
    let s = ring_vars(rank, &k);
    Atom::KoszulQuot(s, n).realize(None)
}

/// Rank one: the transition `B_G(V ⊕ U) → B_G(V)`, identity at the top and
/// the quotient `Σ^{2−|V|−|U|}k[c]^∨ → Σ^{2−|V|}k[c]^∨` on the leg (the
/// generator in the tail goes to the generator).
pub fn b_transition(big: &AtObject, small: &AtObject) -> Result<super::hom::AtMorphism> {
    let (Some(lb), Some(ls)) = (big.leg(&Subgroup::trivial()), small.leg(&Subgroup::trivial())) else {
        return Err(Error::Invalid("transition between B objects without legs".into()));
    };
    let leg = ModMap::from_fn(&lb.module, &ls.module, |d| {
        let (r, c) = (ls.module.dim(d)?, lb.module.dim(d)?);
        Ok(if r * c > 0 { Matrix::identity(1) } else { Matrix::zeros(r, c) })
    })?;
    super::hom::AtMorphism::new(big, small, 0, |d| Ok(Matrix::identity(big.top.dim(d)?)), vec![(Subgroup::trivial(), leg)], None)
}

/// Rank-one catalogue shorthand `nz`.
pub fn nz(n: u32) -> EulerClass {
    EulerClass::multiple_z(n)
}
