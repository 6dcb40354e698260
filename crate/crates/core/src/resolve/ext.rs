//! `Ext^{s,t}` in the torsion model as the cohomology of `Hom_t(X, 𝕀_•)`.

use super::recipe::{inj_res_explicit, Shuffle};
use crate::atcat::{hom_adjoint_dim, hom_at, AtObject, Bottom, Desc};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gmod::{hom_degree, Atom, ModMap, Module};
use crate::qlinalg::Matrix;

/// How a table was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtMethod {
    /// `Hom(X, –)` applied to the explicit resolution of the target, with
    /// its length and choice log.
    Explicit { length: usize, log: Vec<String> },
    /// The source is `f_1(S)`, so `Ext(f_1 S, Y) = Ext_P(S, Y(1))`,
    /// computed from the dual free resolution of `Y(1)`.
    Bottom { length: usize },
    /// The target is injective; only `Ext^0` is nonzero.
    Injective,
}

/// `dims[s][i] = dim Ext^{s, degrees[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub degrees: Vec<i64>,
    pub dims: Vec<Vec<usize>>,
    pub method: ExtMethod,
}

impl ExtTable {
    pub fn get(&self, s: usize, t: i64) -> usize {
        let Some(i) = self.degrees.iter().position(|&d| d == t) else { return 0 };
        self.dims.get(s).map_or(0, |row| row[i])
    }

    /// Largest `s` with a nonzero entry.
    pub fn top_row(&self) -> Option<usize> {
        self.dims.iter().rposition(|row| row.iter().any(|&d| d > 0))
    }

    /// `(s, t, dim)` for every nonzero entry, by `s` then `t`.
    pub fn entries(&self) -> Vec<(usize, i64, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.dims.iter().enumerate() {
            for (&t, &d) in self.degrees.iter().zip(row) {
                if d > 0 {
                    out.push((s, t, d));
                }
            }
        }
        out
    }
}

/// `Ext^{s,t}(X, Y)` for `t` in `degrees` and `s ≤ 2·rank`.
///
/// Exact in three situations: `Y` has no bottom component (explicit
/// resolution), `X = f_1(S)` with `S` of finite length, or `Y` is a product
/// of `a_L(I)` with `I` injective. Anything else is refused.
pub fn ext_at(x: &AtObject, y: &AtObject, degrees: &[i64], shuffle: Option<Shuffle>, ex: Exec) -> Result<ExtTable> {
    if x.rank != y.rank {
        return Err(Error::Invalid("Ext between objects of different rank".into()));
    }
    let rows = 2 * x.rank.max(1) + 1;
    let no_bottom = y.formal.is_empty() && y.bottom.as_ref().map_or(Ok(true), |b| b.is_zero())?;
    if no_bottom {
        return ext_explicit(x, y, degrees, rows, shuffle, ex);
    }
    if let Some(s) = bottom_only(x)? {
        return ext_bottom(&s, y, degrees, rows, ex);
    }
    if injective_target(y)? {
        let h = exec::try_map(ex, degrees, |&t| match hom_adjoint_dim(x, y, t, window_for(x, t), Exec::Sequential)? {
            Some(d) => Ok(d),
            None => hom_at(x, y, t, Exec::Sequential).map(|h| h.dim()),
        })?;
        let mut dims = vec![vec![0; degrees.len()]; rows];
        dims[0] = h;
        return Ok(ExtTable { degrees: degrees.to_vec(), dims, method: ExtMethod::Injective });
    }
    Err(Error::Unsupported(format!("Ext({x}, {y}): the target has a bottom component and the source is not f_1 of a finite module")))
}

fn window_for(x: &AtObject, t: i64) -> (i64, i64) {
    let lo = x.top.lo().min(x.legs.iter().map(|l| l.module.lo()).min().unwrap_or(0));
    let hi = x.top.hi().max(x.legs.iter().map(|l| l.module.hi()).max().unwrap_or(0));
    (lo + t - 20, hi + t + 20)
}

fn ext_explicit(
    x: &AtObject,
    y: &AtObject,
    degrees: &[i64],
    rows: usize,
    shuffle: Option<Shuffle>,
    ex: Exec,
) -> Result<ExtTable> {
    let res = inj_res_explicit(y, shuffle, ex)?;
    let diffs = (0..res.length()).map(|s| res.differential(s)).collect::<Result<Vec<_>>>()?;
    let cols = exec::try_map(ex, degrees, |&t| -> Result<Vec<usize>> {
        let homs = res
            .terms
            .iter()
            .map(|term| hom_at(x, term, t, Exec::Sequential))
            .collect::<Result<Vec<_>>>()?;
        // D_s: Hom(X, 𝕀_s) → Hom(X, 𝕀_{s+1}) in the solver bases
        let mut ranks = Vec::new();
        for (s, d) in diffs.iter().enumerate() {
            let (src, tgt) = (&homs[s], &homs[s + 1]);
            if src.dim() == 0 || tgt.dim() == 0 {
                ranks.push(0);
                continue;
            }
            let cs = src
                .basis
                .iter()
                .map(|phi| tgt.coords(&d.after(phi)?))
                .collect::<Result<Vec<_>>>()?;
            ranks.push(Matrix::from_cols(tgt.dim(), &cs).rank());
        }
        let mut out = vec![0; rows];
        for (s, h) in homs.iter().enumerate() {
            let out_rank = ranks.get(s).copied().unwrap_or(0);
            let in_rank = if s == 0 { 0 } else { ranks[s - 1] };
            if s < rows {
                out[s] = h.dim() - out_rank - in_rank;
            } else if h.dim() != out_rank + in_rank {
                return Err(Error::Invalid("Ext beyond the injective dimension bound".into()));
            }
        }
        Ok(out)
    })?;
    Ok(ExtTable {
        degrees: degrees.to_vec(),
        dims: transpose(&cols, rows),
        method: ExtMethod::Explicit { length: res.length(), log: res.log },
    })
}

fn transpose(cols: &[Vec<usize>], rows: usize) -> Vec<Vec<usize>> {
    (0..rows).map(|s| cols.iter().map(|c| c[s]).collect()).collect()
}

/// `Some(S)` when `X = f_1(S)` in rank two with `S` of finite length.
fn bottom_only(x: &AtObject) -> Result<Option<Module>> {
    if x.rank != 2 || !x.top.is_zero() || !x.legs.is_empty() || !x.formal.is_empty() {
        return Ok(None);
    }
    Ok(match &x.bottom {
        Some(Bottom::Finite(m)) => Some(m.clone()),
        Some(Bottom::Presented(p)) if p.is_finite_length()? => Some(p.realize(-60, 60)?.trimmed()?),
        None => Some(Module::zero(2)),
        _ => None,
    })
}

fn ext_bottom(s: &Module, y: &AtObject, degrees: &[i64], rows: usize, ex: Exec) -> Result<ExtTable> {
    let yp = y.bottom.as_ref().expect("target has a bottom").presented()?;
    let length = yp.injective_dim()?.unwrap_or(0);
    if s.is_zero() {
        return Ok(ExtTable {
            degrees: degrees.to_vec(),
            dims: vec![vec![0; degrees.len()]; rows],
            method: ExtMethod::Bottom { length },
        });
    }
    let cols = exec::try_map(ex, degrees, |&t| -> Result<Vec<usize>> {
        // Hom_t(S, I) only sees I on [S.lo + t, S.hi + t]
        let (lo, hi) = (s.lo() + t - 4, s.hi() + t + 4);
        let r = yp.injective_resolution(lo, hi)?;
        let terms: Vec<Module> = r.terms.iter().map(|m| m.extend(lo, hi)).collect::<Result<_>>()?;
        let homs = terms.iter().map(|m| hom_degree(s, &cut(m, lo, hi)?, t)).collect::<Result<Vec<_>>>()?;
        let mut ranks = Vec::new();
        for (j, d) in r.maps.iter().enumerate() {
            let (src, tgt) = (&homs[j], &homs[j + 1]);
            if src.dim() == 0 || tgt.dim() == 0 {
                ranks.push(0);
                continue;
            }
            let dm = ModMap::from_fn(&src.tgt, &tgt.tgt, |e| {
                if (lo..=hi).contains(&(e + t)) {
                    d.block(e + t)
                } else {
                    Ok(Matrix::zeros(tgt.tgt.dim(e)?, src.tgt.dim(e)?))
                }
            })?;
            let cs = src.basis.iter().map(|phi| tgt.coords(&dm.compose(phi)?)).collect::<Result<Vec<_>>>()?;
            ranks.push(Matrix::from_cols(tgt.dim(), &cs).rank());
        }
        let mut out = vec![0; rows];
        for (j, h) in homs.iter().enumerate().take(rows) {
            let out_rank = ranks.get(j).copied().unwrap_or(0);
            let in_rank = if j == 0 { 0 } else { ranks[j - 1] };
            out[j] = h.dim() - out_rank - in_rank;
        }
        Ok(out)
    })?;
    Ok(ExtTable { degrees: degrees.to_vec(), dims: transpose(&cols, rows), method: ExtMethod::Bottom { length } })
}

/// A windowed module made finite: zero tails outside `[lo, hi]`.
fn cut(m: &Module, lo: i64, hi: i64) -> Result<Module> {
    let dims = (lo..=hi).map(|d| m.dim(d)).collect::<Result<Vec<_>>>()?;
    let space = crate::qlinalg::GradedSpace::finite(lo, dims);
    Module::from_fn(m.nvars, space, |i, d| m.act_at(i, d).unwrap_or_else(|_| Matrix::zeros(0, 0)))
}

/// A product of `a_L(I)` with every `I` injective.
fn injective_target(y: &AtObject) -> Result<bool> {
    fn atom_injective(a: &Atom) -> bool {
        match a {
            Atom::Dual(_) | Atom::LocCohTop(_) => true,
            Atom::Susp(_, x) => atom_injective(x),
            Atom::Sum(ps) => ps.iter().all(atom_injective),
            _ => false,
        }
    }
    fn desc_injective(d: &Desc) -> bool {
        match d {
            Desc::A(_, a) => atom_injective(a),
            Desc::Prod(ps) => ps.iter().all(desc_injective),
            _ => false,
        }
    }
    Ok(y.desc.as_ref().is_some_and(desc_injective))
}
