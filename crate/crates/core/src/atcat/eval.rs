//! Evaluation at a subgroup recovered as a colimit of Hom out of the
//! objects `B_K(V, n)`, with the map `e(θ) = θ(K)(ι)`.

use super::functors::{b_component, b_object, nz};
use super::hom::hom_at;
use super::object::AtObject;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{hom_degree, Module};
use crate::qlinalg::Matrix;
use crate::rings::{EulerClass, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalStage {
    /// The index of the stage: `n` for `B_1(0, n)`, the multiple of `z`
    /// for `B_G(nz, 1)`, `n` for `P/𝔪^[n]` in rank 2.
    pub n: u32,
    pub hom_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    /// `e` is injective in every degree of the window.
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalReport {
    pub sub: Subgroup,
    pub window: (i64, i64),
    pub target_dims: Vec<usize>,
    pub stages: Vec<EvalStage>,
    /// Images grow along the colimit.
    pub nested: bool,
    /// First stage from which `e` is onto the component on the window.
    pub stable_from: Option<u32>,
    /// For a finite component, the least `n` with `𝔪^[n]` acting as zero.
    pub annihilator_bound: Option<u32>,
}

impl EvalReport {
    pub fn certified(&self) -> bool {
        self.nested && self.stable_from.is_some() && self.stages.iter().all(|s| s.injective)
    }

    /// Dimensions of the colimit on the window (the last stage).
    pub fn recovered(&self) -> Vec<usize> {
        self.stages.last().map_or_else(|| vec![0; self.target_dims.len()], |s| s.image_dims.clone())
    }
}

/// The images `e(θ)` of a Hom basis as the columns of a matrix.
type Images = Vec<Matrix>;

/// Computes `colim Hom(B_K(V, n), X)` up to `horizon` stages with its
/// evaluation map. Rank 1: any concrete object, `K ∈ {1, G}`. Rank 2: objects
/// concentrated at `K`, where `Hom(B, f_K T) = Hom(B(K), T)`.
pub fn eval_via_colim(x: &AtObject, k: Subgroup, horizon: u32, window: (i64, i64), ex: Exec) -> Result<EvalReport> {
    if horizon == 0 {
        return Err(Error::Horizon("the colimit needs at least one stage".into()));
    }
    let degs: Vec<i64> = (window.0..=window.1).collect();
    let target = x.component(&k, window)?;
    let target_dims = degs.iter().map(|&t| target.dim(t)).collect::<Result<Vec<_>>>()?;
    let mut all: Vec<(u32, Vec<usize>, Images)> = Vec::new();
    for step in 0..horizon {
        let (n, per_t) = match (x.rank, k) {
            (1, s) if s == Subgroup::trivial() => {
                let n = step + 1;
                let b = b_object(1, s, &EulerClass::default(), n)?;
                (n, stage_rank1(&b, x, &target, &degs, ex, |m| m.leg(&s).map(|f| f.block(0)))?)
            }
            (1, s) if s == Subgroup::whole() => {
                let b = b_object(1, s, &nz(step), 1)?;
                (step, stage_rank1(&b, x, &target, &degs, ex, |m| Some(m.top.block_at(0)))?)
            }
            (2, s) => {
                let supp = x.support()?;
                if !x.formal.is_empty() || supp.iter().any(|h| *h != s) {
                    return Err(Error::Unsupported("rank-2 evaluation for objects concentrated at one subgroup".into()));
                }
                let n = step + 1;
                let bc = b_component(2, s, n)?;
                (n, stage_module(&bc, &target, &degs)?)
            }
            _ => return Err(Error::Unsupported(format!("evaluation at {k} in rank {}", x.rank))),
        };
        all.push((n, per_t.0, per_t.1));
    }
    let mut stages = Vec::new();
    let mut nested = true;
    let mut stable_from = None;
    for (i, (n, hom_dims, imgs)) in all.iter().enumerate() {
        let image_dims: Vec<usize> = imgs.iter().map(|m| m.rank()).collect();
        let injective = image_dims == *hom_dims;
        if i + 1 < all.len() {
            for (a, b) in imgs.iter().zip(&all[i + 1].2) {
                let both = Matrix::hstack(&[a, b])?;
                nested &= both.rank() == b.rank();
            }
        }
        let full = image_dims == target_dims;
        if full && stable_from.is_none() {
            stable_from = Some(*n);
        } else if !full {
            stable_from = None;
        }
        stages.push(EvalStage { n: *n, hom_dims: hom_dims.clone(), image_dims, injective });
    }
    let annihilator_bound = annihilator_exponent(&target, window)?;
    Ok(EvalReport { sub: k, window, target_dims, stages, nested, stable_from, annihilator_bound })
}

fn stage_rank1(
    b: &AtObject,
    x: &AtObject,
    target: &Module,
    degs: &[i64],
    ex: Exec,
    eval: impl Fn(&super::hom::AtMorphism) -> Option<Result<Matrix>>,
) -> Result<(Vec<usize>, Images)> {
    let mut dims = Vec::new();
    let mut imgs = Vec::new();
    for &t in degs {
        let h = hom_at(b, x, t, ex)?;
        dims.push(h.dim());
        let rows = target.dim(t)?;
        let mut cols = Vec::new();
        for m in &h.basis {
            let col = match eval(m) {
                Some(blk) => {
                    let blk = blk?;
                    if blk.cols() > 0 { blk.col(0) } else { vec![] }
                }
                None => vec![],
            };
            if !col.is_empty() && col.len() != rows {
                return Err(Error::MalformedMap("evaluation lands outside the component".into()));
            }
            cols.push(if col.is_empty() { vec![crate::qlinalg::q(0); rows] } else { col });
        }
        imgs.push(Matrix::from_cols(rows, &cols));
    }
    Ok((dims, imgs))
}

fn stage_module(bc: &Module, target: &Module, degs: &[i64]) -> Result<(Vec<usize>, Images)> {
    let mut dims = Vec::new();
    let mut imgs = Vec::new();
    for &t in degs {
        let h = hom_degree(bc, target, t)?;
        dims.push(h.dim());
        let rows = target.dim(t)?;
        let cols = h
            .basis
            .iter()
            .map(|f| {
                let blk = f.block(0)?;
                Ok(if blk.cols() > 0 { blk.col(0) } else { vec![crate::qlinalg::q(0); rows] })
            })
            .collect::<Result<Vec<_>>>()?;
        imgs.push(Matrix::from_cols(rows, &cols));
    }
    Ok((dims, imgs))
}

/// Least `n` with every `x_iⁿ` acting as zero, for a finite module.
fn annihilator_exponent(m: &Module, window: (i64, i64)) -> Result<Option<u32>> {
    if !m.is_finite() {
        return Ok(None);
    }
    if m.is_zero() || m.nvars == 0 {
        return Ok(Some(u32::from(!m.is_zero())));
    }
    let (lo, hi) = (m.lo().min(window.0), m.hi().max(window.1));
    for n in 1..=((hi - lo) / 2 + 2) as u32 {
        let mut zero = true;
        for i in 0..m.nvars {
            for d in lo..=hi {
                zero &= m.power(i, n as u64, d)?.is_zero();
            }
        }
        if zero {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
