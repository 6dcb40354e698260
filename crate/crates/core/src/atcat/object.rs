//! Objects of the torsion model in adjoint form.
//!
//! Rank one: a vertex-G vector space `V` and one leg per proper subgroup
//! (just the trivial subgroup in the connected variant, the cyclic groups in
//! the full variant) holding a torsion k[c]-module `T` with a structure map
//! `q: V → T^t`. Rank two adds legs at circles (modules over the one-variable
//! ring of G/H) and a bottom P-module at the trivial subgroup, into which all
//! horizontal maps vanish.

use std::fmt;

use crate::error::{Error, Result};
use crate::gmod::{Atom, MatlisPresented, Module};
use crate::qlinalg::{GradedMap, GradedSpace, Matrix};
use crate::rings::{ConnSubgroup, EulerClass, PolyMatrix, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Isotropy {
    Connected,
    Full,
}

/// A one-variable component with its structure map from the top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leg {
    pub sub: Subgroup,
    pub module: Module,
    /// `V → T^t` in degree 0, both sides extended to a common window.
    pub q: GradedMap,
}

impl Leg {
    pub fn new(top: &Module, sub: Subgroup, module: Module, f: impl Fn(i64) -> Result<Matrix>) -> Result<Leg> {
        let tt = module.tate_dual()?;
        let lo = top.lo().min(tt.lo());
        let hi = top.hi().max(tt.hi());
        let src = top.space.extend(lo, hi)?;
        let tgt = tt.space.extend(lo, hi)?;
        let q = GradedMap::from_fn(src, tgt, 0, f)?;
        Ok(Leg { sub, module, q })
    }

    pub fn q_at(&self, d: i64) -> Result<Matrix> {
        self.q.block_at(d)
    }
}

/// The component at the trivial subgroup in rank two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bottom {
    Finite(Module),
    Presented(MatlisPresented),
}

impl Bottom {
    /// The module on a window (exact for finite length).
    pub fn realize(&self, lo: i64, hi: i64) -> Result<Module> {
        match self {
            Bottom::Finite(m) => {
                if m.is_zero() {
                    Ok(m.clone())
                } else {
                    m.extend(lo, hi)
                }
            }
            Bottom::Presented(p) => p.realize(lo, hi),
        }
    }

    pub fn presented(&self) -> Result<MatlisPresented> {
        match self {
            Bottom::Finite(m) => MatlisPresented::from_module(m),
            Bottom::Presented(p) => Ok(p.clone()),
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        match self {
            Bottom::Finite(m) => Ok(m.is_zero()),
            Bottom::Presented(p) => Ok(p.injective_dim()?.is_none()),
        }
    }
}

/// The components strictly above the trivial subgroup of `a_1(I)` for an
/// injective `I = ⊕Σ^a P^∨`. These are degreewise infinite and are kept
/// symbolically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPart {
    pub hull: MatlisPresented,
}

/// How an object was built; used for the adjunction formulas and for the
/// text format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Desc {
    F(Subgroup, Atom),
    A(Subgroup, Atom),
    B(Subgroup, EulerClass, u32),
    Prod(Vec<Desc>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtObject {
    pub rank: usize,
    pub mode: Isotropy,
    /// The vertex-G component, a graded vector space.
    pub top: Module,
    /// Sorted by subgroup, nonzero modules only.
    pub legs: Vec<Leg>,
    pub bottom: Option<Bottom>,
    pub formal: Vec<FormalPart>,
    pub desc: Option<Desc>,
}

/// Result of the mechanical invariant checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub torsion: bool,
    pub cochain: bool,
    pub locally_finite: bool,
    pub cotoral: bool,
}

impl Invariants {
    pub fn all(&self) -> bool {
        self.torsion && self.cochain && self.locally_finite && self.cotoral
    }
}

/// A graded vector space viewed as a module over the ground field.
pub fn vector_space(m: &Module) -> Result<Module> {
    Module::trivial(0, m.space.clone())
}

fn check_rank(rank: usize) -> Result<()> {
    if rank > 2 {
        return Err(Error::Unsupported(format!("rank {rank}: only ranks up to 2")));
    }
    Ok(())
}

impl AtObject {
    pub fn zero(rank: usize, mode: Isotropy) -> AtObject {
        AtObject {
            rank,
            mode,
            top: Module::zero(0),
            legs: vec![],
            bottom: None,
            formal: vec![],
            desc: None,
        }
    }

    pub fn is_zero(&self) -> Result<bool> {
        let bottom = match &self.bottom {
            Some(b) => b.is_zero()?,
            None => true,
        };
        Ok(self.top.is_zero() && self.legs.is_empty() && bottom && self.formal.is_empty())
    }

    pub fn leg(&self, sub: &Subgroup) -> Option<&Leg> {
        self.legs.iter().find(|l| &l.sub == sub)
    }

    /// True when every component is exactly computable (no symbolic parts
    /// and no presented bottom of infinite length).
    pub fn is_concrete(&self) -> Result<bool> {
        let bottom = match &self.bottom {
            Some(Bottom::Presented(p)) => p.is_finite_length()?,
            _ => true,
        };
        Ok(self.formal.is_empty() && bottom)
    }

    /// Subgroups with a nonzero component. Formal parts live at every
    /// circle and at G; only G is listed for them.
    pub fn support(&self) -> Result<Vec<Subgroup>> {
        let mut out = Vec::new();
        if let Some(b) = &self.bottom {
            if !b.is_zero()? {
                out.push(Subgroup::trivial());
            }
        }
        out.extend(self.legs.iter().map(|l| l.sub));
        if !self.top.is_zero() || !self.formal.is_empty() {
            out.push(Subgroup::whole());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn with_desc(mut self, d: Desc) -> AtObject {
        self.desc = Some(d);
        self
    }

    /// Drops zero legs and sorts the rest.
    pub fn normalized(mut self) -> AtObject {
        self.legs.retain(|l| !l.module.is_zero());
        self.legs.sort_by_key(|a| a.sub);
        if let Some(Bottom::Finite(m)) = &self.bottom {
            if m.is_zero() {
                self.bottom = None;
            }
        }
        self
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let mut torsion = true;
        for l in &self.legs {
            torsion &= l.module.nvars == 1 && l.module.is_torsion()?;
        }
        if let Some(Bottom::Finite(m)) = &self.bottom {
            torsion &= m.is_finite() && m.nvars == self.rank;
        }
        torsion &= self.top.nvars == 0;
        // the only cotoral chains of length two are G ⊃ H ⊃ 1 in rank two,
        // and the maps into the bottom are zero by construction
        let cochain = self.rank == 2 || self.bottom.is_none();
        let mut locally_finite = true;
        for w in self.legs.windows(2) {
            locally_finite &= w[0].sub < w[1].sub;
        }
        let mut cotoral = true;
        for l in &self.legs {
            cotoral &= Subgroup::whole().cotoral(&l.sub) && l.sub != Subgroup::whole();
            cotoral &= l.sub.conn.valid_in(self.rank);
            cotoral &= match (self.rank, self.mode) {
                (1, Isotropy::Connected) => l.sub == Subgroup::trivial(),
                (1, Isotropy::Full) => l.sub.conn == ConnSubgroup::Trivial,
                (2, _) => matches!(l.sub.conn, ConnSubgroup::Circle(..)) && l.sub.order == 1,
                _ => false,
            };
            let tt = l.module.tate_dual()?;
            for d in l.q.src.degrees() {
                cotoral &= l.q.src.dim_in(d) == self.top.dim(d)? && l.q.tgt.dim_in(d) == tt.dim(d)?;
            }
        }
        if self.rank < 2 {
            cotoral &= self.bottom.is_none() && self.formal.is_empty();
        }
        Ok(Invariants { torsion, cochain, locally_finite, cotoral })
    }

    pub fn validate(self) -> Result<AtObject> {
        let inv = self.invariants()?;
        if !inv.torsion {
            return Err(Error::TorsionRequired("a component is not torsion".into()));
        }
        if !inv.all() {
            return Err(Error::Invalid(format!("object fails its invariants: {inv:?}")));
        }
        Ok(self)
    }

    /// The component at `sub` as a module, realized on `window` where it is
    /// not already exact. Symbolic parts are refused.
    pub fn component(&self, sub: &Subgroup, window: (i64, i64)) -> Result<Module> {
        if *sub == Subgroup::whole() {
            if !self.formal.is_empty() {
                return Err(Error::Unsupported("the G component of a_1 of an injective is not finite".into()));
            }
            return Ok(self.top.clone());
        }
        if self.rank == 2 && *sub == Subgroup::trivial() {
            return match &self.bottom {
                Some(b) => b.realize(window.0, window.1),
                None => Ok(Module::zero(2)),
            };
        }
        if self.rank == 2 && !self.formal.is_empty() {
            return Err(Error::Unsupported("circle components of a_1 of an injective are not finite".into()));
        }
        Ok(self.leg(sub).map_or_else(|| Module::zero(1), |l| l.module.clone()))
    }
}

/// Mode implied by a subgroup: cyclic groups of order > 1 need the full
/// variant.
fn mode_for(k: &Subgroup) -> Isotropy {
    if k.order > 1 {
        Isotropy::Full
    } else {
        Isotropy::Connected
    }
}

fn check_sub(rank: usize, k: &Subgroup) -> Result<()> {
    check_rank(rank)?;
    if !k.conn.valid_in(rank) {
        return Err(Error::Lattice(format!("{k} is not a subgroup of the rank {rank} torus")));
    }
    if k.order > 1 && (rank != 1 || k.conn != ConnSubgroup::Trivial) {
        return Err(Error::Unsupported("the full variant is implemented for finite subgroups in rank 1".into()));
    }
    Ok(())
}

/// Number of variables of the ring at `k`: `dim(G/k)`.
pub fn ring_vars(rank: usize, k: &Subgroup) -> usize {
    k.conn.codim(rank)
}

/// The skyscraper `f_K(T)`.
pub fn mk_f(rank: usize, k: Subgroup, t: &Module) -> Result<AtObject> {
    check_sub(rank, &k)?;
    let n = ring_vars(rank, &k);
    if t.nvars != n && !(n == 0 && t.is_zero()) {
        return Err(Error::Invalid(format!("the component at {k} is a module in {n} variables")));
    }
    let mut x = AtObject::zero(rank, mode_for(&k));
    match n {
        0 => x.top = vector_space(t)?,
        1 => {
            if !t.is_torsion()? {
                return Err(Error::TorsionRequired(format!("component at {k}")));
            }
            let top = x.top.clone();
            x.legs.push(Leg::new(&top, k, t.clone(), |d| {
                Ok(Matrix::zeros(t.tate_dual()?.dim(d)?, top.dim(d)?))
            })?);
        }
        _ => {
            if !t.is_finite() {
                return Err(Error::TorsionRequired("windowed bottom modules must have finite length".into()));
            }
            x.bottom = Some(Bottom::Finite(t.clone()));
        }
    }
    x.normalized().validate()
}

/// `f_1(M)` for an Artinian module given by its dual presentation (rank 2).
pub fn mk_f_presented(m: &MatlisPresented) -> Result<AtObject> {
    if m.nvars() != 2 {
        return Err(Error::Invalid("presented bottoms live over two variables".into()));
    }
    let mut x = AtObject::zero(2, Isotropy::Connected);
    x.bottom = Some(if m.is_finite_length()? { Bottom::Finite(m.realize(-60, 60)?.trimmed()?) } else { Bottom::Presented(m.clone()) });
    x.normalized().validate()
}

/// The right adjoint `a_L(T)` of evaluation at `L`.
pub fn mk_a(rank: usize, l: Subgroup, t: &Module) -> Result<AtObject> {
    check_sub(rank, &l)?;
    let n = ring_vars(rank, &l);
    match n {
        0 => mk_f(rank, l, t),
        1 => {
            if t.nvars != 1 || !t.is_torsion()? {
                return Err(Error::TorsionRequired(format!("component at {l}")));
            }
            let tt = t.tate_dual()?;
            let mut x = AtObject::zero(rank, mode_for(&l));
            x.top = vector_space(&tt)?;
            let top = x.top.clone();
            x.legs.push(Leg::new(&top, l, t.clone(), |d| Ok(Matrix::identity(tt.dim(d)?)))?);
            x.normalized().validate()
        }
        _ => {
            if t.is_finite() {
                // Hom(ℰ⁻¹P, T) = 0 since every Euler class acts nilpotently
                mk_f(rank, l, t)
            } else {
                Err(Error::Unsupported("a_1 of an infinite windowed module; give it as a presented module".into()))
            }
        }
    }
}

/// `a_1(M)` in rank 2 for an Artinian `M` given by its dual presentation.
/// Finite length gives `f_1(M)`; an injective gives the bottom plus formal
/// components above it.
pub fn mk_a_presented(m: &MatlisPresented) -> Result<AtObject> {
    if m.is_finite_length()? {
        return mk_f_presented(m);
    }
    if m.injective_dim()? != Some(0) {
        return Err(Error::Unsupported("a_1 of an Artinian module that is neither finite nor injective".into()));
    }
    let mut x = AtObject::zero(2, Isotropy::Connected);
    x.bottom = Some(Bottom::Presented(m.clone()));
    x.formal.push(FormalPart { hull: m.clone() });
    x.normalized().validate()
}

/// Block sum of dual presentations.
pub fn presented_sum(parts: &[&MatlisPresented]) -> Result<MatlisPresented> {
    let n = parts.first().map_or(2, |p| p.nvars());
    let mut tgt = Vec::new();
    let mut src = Vec::new();
    for p in parts {
        if p.nvars() != n {
            return Err(Error::Invalid("sum of presented modules over different rings".into()));
        }
        tgt.extend(p.pres.tgt_deg.iter().copied());
        src.extend(p.pres.src_deg.iter().copied());
    }
    let mut entries = vec![vec![crate::rings::Poly::zero(n); src.len()]; tgt.len()];
    let (mut r0, mut c0) = (0, 0);
    for p in parts {
        for (i, row) in p.pres.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                entries[r0 + i][c0 + j] = e.clone();
            }
        }
        r0 += p.pres.tgt_deg.len();
        c0 += p.pres.src_deg.len();
    }
    Ok(MatlisPresented::new(PolyMatrix { n, tgt_deg: tgt, src_deg: src, entries }))
}

impl fmt::Display for AtObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.desc {
            return write!(f, "{d}");
        }
        write!(f, "object(rank {}, top {:?}", self.rank, self.top.space.dims)?;
        for l in &self.legs {
            write!(f, ", {}: {:?}", l.sub, l.module.space.dims)?;
        }
        if self.bottom.is_some() {
            f.write_str(", bottom")?;
        }
        if !self.formal.is_empty() {
            write!(f, ", {} formal", self.formal.len())?;
        }
        f.write_str(")")
    }
}

/// A graded vector space with dimensions `dims` from degree `lo`.
pub fn ground(lo: i64, dims: Vec<usize>) -> Result<Module> {
    Module::trivial(0, GradedSpace::finite(lo, dims))
}
