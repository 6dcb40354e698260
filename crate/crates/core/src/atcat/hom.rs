//! Morphisms and graded Hom in the torsion model.
//!
//! A degree-`t` map `X → Y` is a family `Φ_d: V_d → V'_{d+t}` at the top,
//! module maps `φ_K: T_K → Σ^{−t}T'_K` on matched legs and a module map of
//! bottoms, subject to `q'_K Φ = φ_K^t q_K`. Maps into the bottom are zero on
//! both sides, so the bottom part is independent.
//!
//! The solver runs degree by degree. In degree `d` write the constraint as
//! `A_d vec(Φ_d) = B_d λ`, with `λ` the coordinates of the leg maps in a
//! basis of `Hom_t(T_K, T'_K)`. Then `λ` must satisfy `L_d B_d λ = 0` for a
//! left annihilator `L_d` of `A_d`, and each admissible `λ` lifts to a
//! particular `Φ`, up to the kernels of the `A_d`.

use super::object::{AtObject, Bottom, Desc};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gmod::{hom_degree, kron, HomSpace, ModMap, Module};
use crate::qlinalg::{GradedMap, GradedSpace, Matrix, Tail, Q};
use crate::rings::Subgroup;

/// The top part of a morphism: blocks on a window, periodic beyond it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopMap {
    pub t: i64,
    pub src: GradedSpace,
    pub tgt: GradedSpace,
    pub lo: i64,
    pub blocks: Vec<Matrix>,
}

impl TopMap {
    pub fn hi(&self) -> i64 {
        self.lo + self.blocks.len() as i64 - 1
    }

    pub fn block_at(&self, d: i64) -> Result<Matrix> {
        let (r, c) = (self.tgt.dim(d + self.t)?, self.src.dim(d)?);
        if r * c == 0 {
            return Ok(Matrix::zeros(r, c));
        }
        let hi = self.hi();
        let rep = if d > hi {
            if (d - hi) % 2 == 0 { hi } else { hi - 1 }
        } else if d < self.lo {
            if (self.lo - d) % 2 == 0 { self.lo } else { self.lo + 1 }
        } else {
            d
        };
        Ok(self.blocks[(rep - self.lo) as usize].clone())
    }

    fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtMorphism {
    pub t: i64,
    pub top: TopMap,
    /// Maps `T_K → Σ^{−t}T'_K` on legs present at both ends.
    pub legs: Vec<(Subgroup, ModMap)>,
    pub bottom: Option<ModMap>,
}

/// Degrees on which a degree-`t` map `X → Y` is determined: everything
/// beyond is a copy of an edge degree or zero.
pub fn solve_window(x: &AtObject, y: &AtObject, t: i64) -> (i64, i64) {
    let mut lo = x.top.lo().min(y.top.lo() - t);
    let mut hi = x.top.hi().max(y.top.hi() - t);
    for l in &x.legs {
        lo = lo.min(l.q.src.lo);
        hi = hi.max(l.q.src.hi);
    }
    for l in &y.legs {
        lo = lo.min(l.q.src.lo - t);
        hi = hi.max(l.q.src.hi - t);
    }
    (lo - 2, hi + 2)
}

impl AtMorphism {
    /// A morphism from explicit data, checked against the structure maps.
    pub fn new(
        x: &AtObject,
        y: &AtObject,
        t: i64,
        top: impl Fn(i64) -> Result<Matrix>,
        legs: Vec<(Subgroup, ModMap)>,
        bottom: Option<ModMap>,
    ) -> Result<AtMorphism> {
        let (lo, hi) = solve_window(x, y, t);
        let blocks = (lo..=hi)
            .map(|d| {
                let (r, c) = (y.top.dim(d + t)?, x.top.dim(d)?);
                if r * c == 0 {
                    Ok(Matrix::zeros(r, c))
                } else {
                    top(d)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let top = TopMap { t, src: x.top.space.clone(), tgt: y.top.space.clone(), lo, blocks };
        let m = AtMorphism { t, top, legs, bottom };
        if !m.commutes(x, y)? {
            return Err(Error::MalformedMap("morphism does not commute with the structure maps".into()));
        }
        Ok(m)
    }

    pub fn zero(x: &AtObject, y: &AtObject, t: i64) -> Result<AtMorphism> {
        let (lo, hi) = solve_window(x, y, t);
        let blocks = (lo..=hi)
            .map(|d| Ok(Matrix::zeros(y.top.dim(d + t)?, x.top.dim(d)?)))
            .collect::<Result<Vec<_>>>()?;
        let top = TopMap { t, src: x.top.space.clone(), tgt: y.top.space.clone(), lo, blocks };
        Ok(AtMorphism { t, top, legs: vec![], bottom: None })
    }

    pub fn identity(x: &AtObject) -> Result<AtMorphism> {
        let legs = x.legs.iter().map(|l| (l.sub, l.module.identity())).collect();
        let bottom = match &x.bottom {
            Some(Bottom::Finite(m)) => Some(m.identity()),
            _ => None,
        };
        AtMorphism::new(x, x, 0, |d| Ok(Matrix::identity(x.top.dim(d)?)), legs, bottom)
    }

    pub fn leg(&self, sub: &Subgroup) -> Option<&ModMap> {
        self.legs.iter().find(|(s, _)| s == sub).map(|(_, m)| m)
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero()
            && self.legs.iter().all(|(_, m)| m.is_zero())
            && self.bottom.as_ref().is_none_or(|m| m.is_zero())
    }

    /// `q'_K Φ = φ_K^t q_K` for every leg of the target.
    pub fn commutes(&self, x: &AtObject, y: &AtObject) -> Result<bool> {
        let (lo, hi) = solve_window(x, y, self.t);
        for ly in &y.legs {
            let phi_t = match (x.leg(&ly.sub), self.leg(&ly.sub)) {
                (Some(_), Some(m)) => Some(m.tate()?),
                _ => None,
            };
            for d in lo..=hi {
                let phi = self.top.block_at(d)?;
                let lhs = ly.q_at(d + self.t)?.mul(&phi)?;
                let rhs = match (&phi_t, x.leg(&ly.sub)) {
                    (Some(p), Some(lx)) => p.block(d)?.mul(&lx.q_at(d)?)?,
                    _ => Matrix::zeros(lhs.rows(), lhs.cols()),
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &AtMorphism) -> Result<AtMorphism> {
        let t = f.t + self.t;
        let lo = f.top.lo.min(self.top.lo - f.t);
        let hi = f.top.hi().max(self.top.hi() - f.t);
        let blocks = (lo..=hi)
            .map(|d| self.top.block_at(d + f.t)?.mul(&f.top.block_at(d)?))
            .collect::<Result<Vec<_>>>()?;
        let top = TopMap { t, src: f.top.src.clone(), tgt: self.top.tgt.clone(), lo, blocks };
        let mut legs = Vec::new();
        for (s, a) in &f.legs {
            if let Some(b) = self.leg(s) {
                legs.push((*s, b.shifted(-f.t).compose(a)?));
            }
        }
        let bottom = match (&f.bottom, &self.bottom) {
            (Some(a), Some(b)) => Some(b.shifted(-f.t).compose(a)?),
            _ => None,
        };
        Ok(AtMorphism { t, top, legs, bottom })
    }
}

/// A basis of `Hom_t(X, Y)` with a coordinate map.
#[derive(Clone, Debug)]
pub struct AtHom {
    pub t: i64,
    pub basis: Vec<AtMorphism>,
    lo: i64,
    legs: Vec<(Subgroup, HomSpace)>,
    /// Admissible leg coordinates, one column per basis element.
    lambda: Matrix,
    /// Kernel of `A_d` per degree (columns), for the free top parts.
    kernels: Vec<Matrix>,
    bottom: Option<HomSpace>,
}

impl AtHom {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism of the same degree in the basis.
    pub fn coords(&self, m: &AtMorphism) -> Result<Vec<Q>> {
        let mut raw = Vec::new();
        for (s, hs) in &self.legs {
            match m.leg(s) {
                Some(f) => raw.extend(hs.coords(f)?),
                None => raw.extend(std::iter::repeat_n(Q::from_integer(0.into()), hs.dim())),
            }
        }
        let a = if self.lambda.cols() == 0 {
            vec![]
        } else {
            self.lambda
                .solve(&Matrix::from_cols(raw.len(), &[raw]))
                .ok_or_else(|| Error::Invalid("leg maps are not admissible".into()))?
                .col(0)
        };
        let mut out = a.clone();
        for (k, kern) in self.kernels.iter().enumerate() {
            if kern.cols() == 0 {
                continue;
            }
            let d = self.lo + k as i64;
            let mut v = vec_of(&m.top.block_at(d)?);
            for (i, ai) in a.iter().enumerate() {
                let w = vec_of(&self.basis[i].top.block_at(d)?);
                for (x, y) in v.iter_mut().zip(w) {
                    *x -= ai * y;
                }
            }
            let c = kern
                .solve(&Matrix::from_cols(v.len(), &[v]))
                .ok_or_else(|| Error::Invalid("top map is not in the Hom space".into()))?;
            out.extend(c.col(0));
        }
        if let Some(hs) = &self.bottom {
            match &m.bottom {
                Some(f) => out.extend(hs.coords(f)?),
                None => out.extend(std::iter::repeat_n(Q::from_integer(0.into()), hs.dim())),
            }
        }
        Ok(out)
    }
}

fn vec_of(m: &Matrix) -> Vec<Q> {
    (0..m.cols()).flat_map(|j| m.col(j)).collect()
}

fn unvec(v: &[Q], rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = v[j * rows + i].clone();
        }
    }
    m
}

/// `Σ c_j β_j` for a basis of module maps on a shared window.
fn combo(hs: &HomSpace, c: &[Q]) -> Result<ModMap> {
    let mut f = GradedMap::zero(hs.src.space.clone(), hs.tgt.space.clone(), 0)?;
    for (b, cj) in hs.basis.iter().zip(c) {
        if *cj != Q::from_integer(0.into()) {
            f = f.add(&b.f.scale(cj))?;
        }
    }
    ModMap::new(hs.src.clone(), hs.tgt.clone(), f)
}

fn periodic_both(a: Tail, b: Tail) -> bool {
    a == Tail::Periodic && b == Tail::Periodic
}

/// `Hom_t(X, Y)` by the commutation solver.
pub fn hom_at(x: &AtObject, y: &AtObject, t: i64, ex: Exec) -> Result<AtHom> {
    if x.rank != y.rank {
        return Err(Error::Invalid("Hom between objects of different rank".into()));
    }
    if x.mode != y.mode {
        return Err(Error::MixedIsotropy);
    }
    let only_bottom = y.top.is_zero() && y.legs.is_empty() && y.formal.is_empty();
    if !only_bottom && (!x.formal.is_empty() || !y.formal.is_empty()) {
        return Err(Error::Unsupported("Hom with formal components outside the adjunction formulas".into()));
    }
    let bottom = match (&x.bottom, &y.bottom) {
        (Some(bx), Some(by)) => Some(bottom_hom(bx, by, t)?),
        _ => None,
    };
    let (lo, hi) = if only_bottom { (0, 1) } else { solve_window(x, y, t) };
    for (a, b, edge) in [(x.top.space.below, y.top.space.below, lo), (x.top.space.above, y.top.space.above, hi)] {
        if a == Tail::Unknown || b == Tail::Unknown {
            return Err(Error::Poisoned { op: "hom_at", degree: edge });
        }
    }
    let legs: Vec<(Subgroup, HomSpace)> = y
        .legs
        .iter()
        .filter_map(|ly| x.leg(&ly.sub).map(|lx| (ly.sub, lx, ly)))
        .map(|(s, lx, ly)| Ok((s, hom_degree(&lx.module, &ly.module, t)?)))
        .collect::<Result<_>>()?;
    let tates: Vec<Vec<ModMap>> =
        legs.iter().map(|(_, hs)| hs.basis.iter().map(|b| b.tate()).collect()).collect::<Result<_>>()?;
    let nraw: usize = legs.iter().map(|(_, h)| h.dim()).sum();
    let degs: Vec<i64> = (lo..=hi).collect();
    // per degree: (A_d, B_d) with vec(Φ_d) unknown and the raw λ on the right
    let systems = exec::try_map(ex, &degs, |&d| -> Result<(Matrix, Matrix)> {
        let (r, c) = (if only_bottom { 0 } else { y.top.dim(d + t)? }, if only_bottom { 0 } else { x.top.dim(d)? });
        let mut a_rows = Vec::new();
        let mut b_rows = Vec::new();
        for ly in &y.legs {
            let qy = ly.q_at(d + t)?;
            if qy.rows() * c == 0 {
                continue;
            }
            a_rows.push(kron(&Matrix::identity(c), &qy));
            let mut b = Matrix::zeros(qy.rows() * c, nraw);
            let mut col = 0;
            for (k, (s, hs)) in legs.iter().enumerate() {
                if *s == ly.sub {
                    let qx = x.leg(s).expect("matched leg").q_at(d)?;
                    for (j, bt) in tates[k].iter().enumerate() {
                        let v = vec_of(&bt.block(d)?.mul(&qx)?);
                        for (i, e) in v.into_iter().enumerate() {
                            b[(i, col + j)] = e;
                        }
                    }
                }
                col += hs.dim();
            }
            b_rows.push(b);
        }
        if a_rows.is_empty() {
            return Ok((Matrix::zeros(0, r * c), Matrix::zeros(0, nraw)));
        }
        Ok((
            Matrix::vstack(&a_rows.iter().collect::<Vec<_>>())?,
            Matrix::vstack(&b_rows.iter().collect::<Vec<_>>())?,
        ))
    })?;
    // tails: a free direction of Φ in a degree that repeats forever means
    // the Hom is not finite dimensional
    for (&d, (a, _)) in degs.iter().zip(&systems) {
        let beyond = d < lo + 2 || d > hi - 2;
        if beyond && a.cols() > 0 && !a.is_injective() {
            let below = d < lo + 2 && periodic_both(x.top.space.below, y.top.space.below);
            let above = d > hi - 2 && periodic_both(x.top.space.above, y.top.space.above);
            if below || above {
                return Err(Error::Unsupported(format!("Hom in degree {t} is not finite dimensional")));
            }
        }
    }
    let mut cons = Vec::new();
    for (a, b) in &systems {
        if a.rows() == 0 {
            continue;
        }
        let left = a.transpose().kernel().transpose();
        if left.rows() > 0 {
            cons.push(left.dot(b));
        }
    }
    let lambda = if cons.is_empty() {
        Matrix::identity(nraw)
    } else {
        Matrix::vstack(&cons.iter().collect::<Vec<_>>())?.kernel()
    };
    let mut basis = Vec::new();
    for j in 0..lambda.cols() {
        let lam = lambda.col(j);
        let blocks = degs
            .iter()
            .zip(&systems)
            .map(|(&d, (a, b))| {
                let (r, c) = (y.top.dim(d + t)?, x.top.dim(d)?);
                if r * c == 0 || only_bottom {
                    return Ok(Matrix::zeros(r, c));
                }
                if a.rows() == 0 {
                    return Ok(Matrix::zeros(r, c));
                }
                let rhs = b.dot(&Matrix::from_cols(nraw, std::slice::from_ref(&lam)));
                let sol = a.solve(&rhs).expect("admissible λ");
                Ok(unvec(&sol.col(0), r, c))
            })
            .collect::<Result<Vec<_>>>()?;
        basis.push(assemble(x, y, t, lo, blocks, &legs, &lam)?);
    }
    let mut kernels = Vec::new();
    for (k, (&d, (a, _))) in degs.iter().zip(&systems).enumerate() {
        let (r, c) = if only_bottom { (0, 0) } else { (y.top.dim(d + t)?, x.top.dim(d)?) };
        let kern = if r * c == 0 {
            Matrix::zeros(0, 0)
        } else if a.rows() == 0 {
            Matrix::identity(r * c)
        } else {
            a.kernel()
        };
        let beyond = d < lo + 2 || d > hi - 2;
        if beyond && kern.cols() > 0 {
            // a copy of an edge degree: the free part lives at the edge
            kernels.push(Matrix::zeros(r * c, 0));
            continue;
        }
        for j in 0..kern.cols() {
            let mut blocks: Vec<Matrix> = degs
                .iter()
                .map(|&e| Ok(Matrix::zeros(y.top.dim(e + t)?, x.top.dim(e)?)))
                .collect::<Result<_>>()?;
            blocks[k] = unvec(&kern.col(j), r, c);
            let zero = vec![Q::from_integer(0.into()); nraw];
            basis.push(assemble(x, y, t, lo, blocks, &legs, &zero)?);
        }
        kernels.push(kern);
    }
    if let Some(hs) = &bottom {
        for b in &hs.basis {
            let mut m = AtMorphism::zero(x, y, t)?;
            m.bottom = Some(b.clone());
            basis.push(m);
        }
    }
    Ok(AtHom { t, basis, lo, legs, lambda, kernels, bottom })
}

fn assemble(
    x: &AtObject,
    y: &AtObject,
    t: i64,
    lo: i64,
    blocks: Vec<Matrix>,
    legs: &[(Subgroup, HomSpace)],
    lam: &[Q],
) -> Result<AtMorphism> {
    let top = TopMap { t, src: x.top.space.clone(), tgt: y.top.space.clone(), lo, blocks };
    let mut out = Vec::new();
    let mut col = 0;
    for (s, hs) in legs {
        out.push((*s, combo(hs, &lam[col..col + hs.dim()])?));
        col += hs.dim();
    }
    Ok(AtMorphism { t, top, legs: out, bottom: None })
}

fn bottom_hom(bx: &Bottom, by: &Bottom, t: i64) -> Result<HomSpace> {
    let Bottom::Finite(mx) = bx else {
        return Err(Error::Unsupported("Hom out of an infinite Artinian bottom".into()));
    };
    if mx.is_zero() {
        return hom_degree(mx, &Module::zero(mx.nvars), t);
    }
    let my = by.realize(mx.lo() + t - 2, mx.hi() + t + 2)?;
    hom_degree(mx, &my, t)
}

/// `dim Hom_t(X, Y)` through the adjunctions: `Hom(X, f_K T) = Hom(C_K X, T)`
/// and `Hom(X, a_L T) = Hom(X(L), T)`, summed over a product. `None` when
/// `Y` carries no usable description.
pub fn hom_adjoint_dim(x: &AtObject, y: &AtObject, t: i64, window: (i64, i64), ex: Exec) -> Result<Option<usize>> {
    let Some(d) = &y.desc else { return Ok(None) };
    adjoint_dim(x, y.rank, d, t, window, ex)
}

fn adjoint_dim(x: &AtObject, rank: usize, d: &Desc, t: i64, window: (i64, i64), ex: Exec) -> Result<Option<usize>> {
    Ok(match d {
        Desc::F(k, _) | Desc::A(k, _) => {
            let y = super::functors::build(rank, d)?;
            let source = if matches!(d, Desc::F(..)) {
                super::functors::c_k_cokernel(x, *k, window, ex)?
            } else {
                x.component(k, window)?
            };
            if source.is_zero() {
                return Ok(Some(0));
            }
            let target = y.component(k, (source.lo() + t - 2, source.hi() + t + 2))?;
            if target.nvars == 0 {
                let inf = |a: Tail, b: Tail| a == Tail::Periodic && b == Tail::Periodic;
                if inf(source.space.below, target.space.below) || inf(source.space.above, target.space.above) {
                    return Err(Error::Unsupported(format!("Hom in degree {t} is not finite dimensional")));
                }
            }
            Some(hom_degree(&source, &target, t)?.dim())
        }
        Desc::Prod(parts) => {
            let mut total = 0;
            for p in parts {
                match adjoint_dim(x, rank, p, t, window, ex)? {
                    Some(n) => total += n,
                    None => return Ok(None),
                }
            }
            Some(total)
        }
        Desc::B(..) => None,
    })
}

/// Projections out of a product, in factor order.
pub fn projections(xs: &[&AtObject], prod: &AtObject) -> Result<Vec<AtMorphism>> {
    let mut out = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        let sel = |dims: Vec<usize>| -> Matrix {
            let before: usize = dims[..i].iter().sum();
            let mut m = Matrix::zeros(dims[i], dims.iter().sum());
            for k in 0..dims[i] {
                m[(k, before + k)] = Q::from_integer(1.into());
            }
            m
        };
        let top = |d: i64| -> Result<Matrix> {
            Ok(sel(xs.iter().map(|y| y.top.dim(d)).collect::<Result<Vec<_>>>()?))
        };
        let mut legs = Vec::new();
        for l in &x.legs {
            let pl = prod.leg(&l.sub).expect("leg of a factor");
            let f = ModMap::from_fn(&pl.module, &l.module, |d| {
                Ok(sel(xs
                    .iter()
                    .map(|y| y.leg(&l.sub).map_or(Ok(0), |m| m.module.dim(d)))
                    .collect::<Result<Vec<_>>>()?))
            })?;
            legs.push((l.sub, f));
        }
        let bottom = match (&x.bottom, &prod.bottom) {
            (Some(Bottom::Finite(b)), Some(Bottom::Finite(pb))) => Some(ModMap::from_fn(pb, b, |d| {
                Ok(sel(xs
                    .iter()
                    .map(|y| match &y.bottom {
                        Some(Bottom::Finite(m)) => m.dim(d),
                        _ => Ok(0),
                    })
                    .collect::<Result<Vec<_>>>()?))
            })?),
            _ => None,
        };
        out.push(AtMorphism::new(prod, x, 0, top, legs, bottom)?);
    }
    Ok(out)
}
