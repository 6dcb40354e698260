//! Lower bound for the injective dimension from `a_1(M)`,
//! `M = ⊕_n Σ^{2n} k[c₁]/c₁ⁿ`.
//!
//! The infinite sum is not complete, which makes `lim¹` of the tower
//! `M ← M ← ⋯` under `c₁` nonzero and gives `Ext²` in rank one. Truncations
//! `M_N` are finite, so everything here is a finite shadow: the image
//! dimensions of the truncated tower in a fixed degree keep growing with
//! `N`, and the part that has not settled by the horizon is reported.
//! The other generators act by zero on `M`, which raises the bound by
//! `r − 1`.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{completion_by, witness_module, witness_tower, Module, TowerAt};
use crate::qlinalg::Matrix;
use crate::rings::Poly;

/// The degree in which every summand of `M_N` is nonzero.
pub const WITNESS_DEGREE: i64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessRow {
    pub n: u32,
    /// `dim im(V_k → V_0)` in the witness degree, `k = 0..=horizon`.
    pub image_dims: Vec<usize>,
    pub stabilized: bool,
    pub lim1: Option<usize>,
    /// `dim (c₁^h M_N)` in the witness degree for `M_N` over `r` variables.
    pub unsettled: usize,
}

impl WitnessRow {
    /// `image_dims[k] = max(0, N − k)`.
    pub fn matches_closed_form(&self) -> bool {
        self.image_dims.iter().enumerate().all(|(k, &d)| d == (self.n as usize).saturating_sub(k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub rank: usize,
    pub horizon: usize,
    pub rows: Vec<WitnessRow>,
    /// lim¹ of a tower of surjections, which must vanish; `None` when the
    /// horizon is too short for the tower to settle.
    pub control_lim1: Option<usize>,
    /// `c₂, …, c_r` act by zero on `M` regarded over `r` variables.
    pub annihilated: bool,
    /// `[r + 1, 2r]`: the witness bound and the resolution length.
    pub interval: (usize, usize),
}

impl WitnessReport {
    /// Non-stabilization: the image at the horizon grows with `N`.
    pub fn growth(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.image_dims.last().copied().unwrap_or(0)).collect()
    }
}

/// Truncations `M_1, …, M_{n_max}` against a tower of the given horizon.
pub fn id_lower_witness(rank: usize, n_max: u32, horizon: usize, ex: Exec) -> Result<WitnessReport> {
    if !(1..=2).contains(&rank) {
        return Err(Error::Unsupported(format!("witness in rank {rank}")));
    }
    if horizon < 2 {
        return Err(Error::Invalid("witness horizon must be at least 2".into()));
    }
    let d = WITNESS_DEGREE;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let t = witness_tower(n, horizon, 0, 2 * n as i64 + 2)?;
        let rep = t.at(d)?.report()?;
        let m = witness_module(rank, n)?;
        let c = completion_by(&m, &Poly::var(rank, 0), horizon, ex)?;
        let unsettled = c.degrees.iter().find(|r| r.degree == d).map_or(0, |r| r.unsettled);
        rows.push(WitnessRow { n, image_dims: rep.image_dims, stabilized: rep.stabilized, lim1: rep.lim1, unsettled });
    }
    // control: k ↞ k² ↞ k³ ↞ k³ ↞ ⋯, all onto
    let mut dims = vec![1, 2];
    dims.resize(horizon + 1, 3);
    let maps = (0..horizon)
        .map(|j| {
            let (r, c) = (dims[j], dims[j + 1]);
            Matrix::from_cols(r, &(0..c).map(|k| (0..r).map(|i| crate::qlinalg::q(i64::from(i == k))).collect()).collect::<Vec<_>>())
        })
        .collect();
    let ctl = TowerAt::new(d, dims, maps)?.report()?;
    let control_lim1 = ctl.lim1;
    let annihilated = extra_generators_vanish(rank, n_max)?;
    Ok(WitnessReport { rank, horizon, rows, control_lim1, annihilated, interval: (rank + 1, 2 * rank) })
}

/// `M_N` over `k[c₁, …, c_r]` through `k[c₁]`: the extra generators act by 0.
fn extra_generators_vanish(rank: usize, n: u32) -> Result<bool> {
    let m1 = witness_module(1, n)?;
    let m = Module::from_fn(rank, m1.space.clone(), |i, d| {
        let a = m1.act_at(0, d).expect("inside the window");
        if i == 0 {
            a
        } else {
            Matrix::zeros(a.rows(), a.cols())
        }
    })?;
    for i in 1..rank {
        for d in m.lo()..=m.hi() {
            if !m.act_at(i, d)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
