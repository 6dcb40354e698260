//! Inverse systems of graded spaces, their lim and lim¹, and completion.
//!
//! Every stage is degreewise finite, so lim¹ vanishes for the infinite
//! tower as soon as it is Mittag-Leffler, which finite stages always are.
//! What a truncated tower cannot show is where the images settle. A degree
//! is reported stabilized when the last two transitions are isomorphisms;
//! for towers built from modules this is exact once the stages run into a
//! tail of the module.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::qlinalg::{GradedMap, GradedSpace, Matrix, Tail};
use crate::rings::{Mono, MultSet, Poly};

use super::atoms::monomial_quotient;
use super::module::{ModMap, Module};

/// `V_0 ← V_1 ← ⋯ ← V_h`: `maps[j]` goes from stage `j + 1` to stage `j`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<GradedSpace>,
    pub maps: Vec<GradedMap>,
}

/// One degree of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerAt {
    pub degree: i64,
    pub maps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimReport {
    pub degree: i64,
    pub stage_dims: Vec<usize>,
    /// `dim im(V_k → V_0)` for `k = 0..=h`.
    pub image_dims: Vec<usize>,
    /// Every transition is onto.
    pub mittag_leffler: bool,
    pub stabilized: bool,
    pub lim: Option<usize>,
    pub lim1: Option<usize>,
}

impl Tower {
    pub fn new(stages: Vec<GradedSpace>, maps: Vec<GradedMap>) -> Result<Self> {
        if stages.is_empty() || maps.len() + 1 != stages.len() {
            return Err(Error::Invalid("a tower needs one map between consecutive stages".into()));
        }
        for (j, f) in maps.iter().enumerate() {
            if f.shift != 0 || f.src != stages[j + 1] || f.tgt != stages[j] {
                return Err(Error::MalformedMap(format!("tower map {j} does not join stages {} and {j}", j + 1)));
            }
        }
        Ok(Tower { stages, maps })
    }

    pub fn horizon(&self) -> usize {
        self.maps.len()
    }

    /// `V ← V ← ⋯` with identities.
    pub fn constant(s: &GradedSpace, h: usize) -> Tower {
        Tower { stages: vec![s.clone(); h + 1], maps: vec![GradedMap::identity(s); h] }
    }

    /// `M ← Σ^{2e}M ← Σ^{4e}M ← ⋯` with transitions multiplication by `p`,
    /// where `p` has degree `2e` (negative). Stage `k` in degree `d` is
    /// `M_{d − 2ek}`. Stages share a window containing `[lo, hi]`.
    pub fn of_powers(m: &Module, p: &Poly, h: usize, lo: i64, hi: i64) -> Result<Tower> {
        let deg = p.degree().ok_or_else(|| Error::Grading("tower needs a nonzero homogeneous polynomial".into()))?;
        let raw: Vec<GradedSpace> = (0..=h).map(|k| m.space.shifted(deg * k as i64)).collect();
        let lo = raw.iter().map(|s| s.lo).fold(lo, i64::min);
        let hi = raw.iter().map(|s| s.hi).fold(hi, i64::max);
        let stages = raw.iter().map(|s| s.extend(lo, hi)).collect::<Result<Vec<_>>>()?;
        let maps = (0..h)
            .map(|j| {
                let off = -deg * (j as i64 + 1);
                GradedMap::from_fn(stages[j + 1].clone(), stages[j].clone(), 0, |d| m.poly_action(p, d + off))
            })
            .collect::<Result<Vec<_>>>()?;
        Tower::new(stages, maps)
    }

    pub fn at(&self, d: i64) -> Result<TowerAt> {
        let maps = self.maps.iter().map(|f| f.block_at(d)).collect::<Result<Vec<_>>>()?;
        let dims = self.stages.iter().map(|s| s.dim(d)).collect::<Result<Vec<_>>>()?;
        TowerAt::new(d, dims, maps)
    }

    /// lim and lim¹ in each requested degree.
    pub fn lim_lim1(&self, degrees: &[i64], ex: Exec) -> Result<Vec<LimReport>> {
        exec::try_map(ex, degrees, |&d| self.at(d)?.report())
    }
}

impl TowerAt {
    pub fn new(degree: i64, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.len() != maps.len() + 1 {
            return Err(Error::Invalid("stage count does not match map count".into()));
        }
        for (j, f) in maps.iter().enumerate() {
            if f.shape() != (dims[j], dims[j + 1]) {
                return Err(Error::MalformedMap(format!("tower map {j} in degree {degree} has the wrong shape")));
            }
        }
        Ok(TowerAt { degree, maps })
    }

    pub fn horizon(&self) -> usize {
        self.maps.len()
    }

    pub fn stage_dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.maps.iter().map(|f| f.rows()).collect();
        v.push(self.maps.last().map_or(0, |f| f.cols()));
        v
    }

    /// Composite `V_k → V_0`.
    pub fn to_base(&self, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.stage_dims()[k]);
        for j in (0..k).rev() {
            acc = self.maps[j].dot(&acc);
        }
        acc
    }

    pub fn report(&self) -> Result<LimReport> {
        let h = self.horizon();
        if h < 2 {
            return Err(Error::Invalid("tower horizon must be at least 2".into()));
        }
        let stage_dims = self.stage_dims();
        let mut image_dims = vec![stage_dims[0]];
        let mut acc = Matrix::identity(stage_dims[0]);
        for f in &self.maps {
            acc = acc.dot(f);
            image_dims.push(acc.rank());
        }
        let mittag_leffler = self.maps.iter().all(|f| f.is_surjective());
        let stabilized = self.maps[h - 2..].iter().all(|f| f.is_invertible());
        let (lim, lim1) = if stabilized { (Some(stage_dims[h]), Some(0)) } else { (None, None) };
        Ok(LimReport { degree: self.degree, stage_dims, image_dims, mittag_leffler, stabilized, lim, lim1 })
    }
}

impl Module {
    /// Multiplication by a homogeneous polynomial, from degree `d`.
    pub fn poly_action(&self, p: &Poly, d: i64) -> Result<Matrix> {
        let deg = p.degree().ok_or_else(|| Error::Grading("inhomogeneous polynomial".into()))?;
        let mut acc = Matrix::zeros(self.space.dim(d + deg)?, self.space.dim(d)?);
        for (m, c) in &p.terms {
            acc = acc.add(&self.mono_action(&m.0, d)?.scale(c))?;
        }
        Ok(acc)
    }

    /// Basis of `(pM)_d` inside `M_d`.
    pub fn multiple_span(&self, p: &Poly, d: i64) -> Result<Matrix> {
        let deg = p.degree().unwrap_or(0);
        Ok(self.poly_action(p, d - deg)?.image())
    }

    /// The tower `M ⊇ eM ⊇ e²M ⊇ ⋯` in degree `d`, with inclusions.
    pub fn multiple_tower(&self, e: &Poly, h: usize, d: i64) -> Result<TowerAt> {
        let spans = (0..=h as u32)
            .map(|k| self.multiple_span(&e.pow(k), d))
            .collect::<Result<Vec<_>>>()?;
        let dims: Vec<usize> = spans.iter().map(|s| s.cols()).collect();
        let maps = (0..h)
            .map(|k| {
                spans[k]
                    .solve(&spans[k + 1])
                    .ok_or_else(|| Error::Invalid("multiples do not form a chain".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        TowerAt::new(d, dims, maps)
    }
}

/// `⊕_{n=1..N} Σ^{2n} P/𝔪ⁿ` for `P` on `r` generators. Every summand reaches
/// down to degree 2.
pub fn witness_module(r: usize, n: u32) -> Result<Module> {
    if n == 0 {
        return Ok(Module::zero(r));
    }
    let parts = (1..=n)
        .map(|k| {
            let std: Vec<Mono> = (0..k).flat_map(|t| Mono::of_total(r, t)).collect();
            Ok(monomial_quotient(r, &std)?.shifted(2 * k as i64))
        })
        .collect::<Result<Vec<_>>>()?;
    Module::direct_sum(&parts.iter().collect::<Vec<_>>())
}

/// The witness family as a tower under multiplication by the first generator.
pub fn witness_tower(n: u32, h: usize, lo: i64, hi: i64) -> Result<Tower> {
    let m = witness_module(1, n)?;
    Tower::of_powers(&m, &Poly::var(1, 0), h, lo, hi)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionDegree {
    pub degree: i64,
    pub dim: usize,
    /// `dim (M/e^h M)_d`.
    pub quotient_dim: usize,
    pub stabilized: bool,
    /// Comparison cokernel, known once the degree stabilized.
    pub cokernel: Option<usize>,
    /// lim¹ of the `e^k M` tower, for the cross-check.
    pub lim1: Option<usize>,
    /// `dim (e^h M)_d` in a degree that has not settled by the horizon:
    /// what the truncated comparison cannot decide yet. Zero when stabilized.
    pub unsettled: usize,
    pub multiple_dims: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub element: Poly,
    pub horizon: usize,
    /// `M/e^h M`, which agrees with the completion in stabilized degrees.
    pub module: Module,
    pub comparison: ModMap,
    pub degrees: Vec<CompletionDegree>,
}

impl Completion {
    pub fn all_stabilized(&self) -> bool {
        self.degrees.iter().all(|c| c.stabilized)
    }
}

/// Completion along the powers of `e = ∏` (forms of `s`), reported in the
/// degrees of `M`'s window.
pub fn completion(m: &Module, s: &MultSet, h: usize, ex: Exec) -> Result<Completion> {
    if m.space.below == Tail::Unknown || m.space.above == Tail::Unknown {
        return Err(Error::Poisoned { op: "completion", degree: m.lo() });
    }
    if s.rank != m.nvars {
        return Err(Error::Invalid("multiplicative set and module have different ranks".into()));
    }
    let e = s.polys().iter().fold(Poly::one(m.nvars), |a, b| a.mul(b));
    completion_by(m, &e, h, ex)
}

pub fn completion_by(m: &Module, e: &Poly, h: usize, ex: Exec) -> Result<Completion> {
    if h < 2 {
        return Err(Error::Invalid("completion horizon must be at least 2".into()));
    }
    let deg = e.degree().ok_or_else(|| Error::Grading("inhomogeneous element".into()))?;
    let eh = e.pow(h as u32);
    let src = m.shifted(deg * h as i64);
    let (a, b) = Module::common_window(&src, m)?;
    let off = deg * h as i64;
    let mult = ModMap::from_fn(&a, &b, |d| m.poly_action(&eh, d - off))?;
    let (q, proj, _) = mult.cokernel(ex)?;
    let degs: Vec<i64> = m.space.degrees().collect();
    let rows = exec::try_map(ex, &degs, |&d| {
        let t = m.multiple_tower(e, h, d)?;
        let r = t.report()?;
        let dim = m.space.dim(d)?;
        let last = r.stage_dims[h];
        Ok(CompletionDegree {
            degree: d,
            dim,
            quotient_dim: dim - last,
            stabilized: r.stabilized,
            // M_d → (M/e^h M)_d, which is M^∧_d once the degree settled
            cokernel: if r.stabilized { Some(q.dim(d)? - proj.block(d)?.rank()) } else { None },
            lim1: r.lim1,
            unsettled: if r.stabilized { 0 } else { last },
            multiple_dims: r.stage_dims,
        })
    })?;
    Ok(Completion { element: e.clone(), horizon: h, module: q, comparison: proj, degrees: rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::Atom;
    use crate::rings::{ConnSubgroup, LinearForm};

    #[test]
    fn constant_tower_is_stable() {
        let s = GradedSpace::finite(0, vec![2, 0, 1]);
        let t = Tower::constant(&s, 3);
        let r = t.lim_lim1(&[0, 2], Exec::Sequential).unwrap();
        assert_eq!(r[0].lim, Some(2));
        assert_eq!(r[1].lim, Some(1));
        assert!(r.iter().all(|x| x.stabilized && x.lim1 == Some(0)));
    }

    #[test]
    fn surjections_are_mittag_leffler() {
        // k^3 → k^2 → k^1 then isomorphisms
        let maps = vec![
            Matrix::from_i64(&[&[1, 0]]),
            Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]),
            Matrix::identity(3),
            Matrix::identity(3),
        ];
        let t = TowerAt::new(0, vec![1, 2, 3, 3, 3], maps).unwrap();
        let r = t.report().unwrap();
        assert!(r.mittag_leffler && r.stabilized);
        assert_eq!(r.image_dims, vec![1, 1, 1, 1, 1]);
        assert_eq!((r.lim, r.lim1), (Some(3), Some(0)));
    }

    #[test]
    fn witness_images_shrink() {
        for n in [3u32, 6] {
            let t = witness_tower(n, n as usize - 1, 0, 2 * n as i64).unwrap();
            let r = &t.lim_lim1(&[2], Exec::Sequential).unwrap()[0];
            let want: Vec<usize> = (0..n as usize).map(|k| n as usize - k).collect();
            assert_eq!(r.image_dims, want);
            assert!(!r.stabilized);
            let t = witness_tower(n, n as usize + 2, 0, 2 * n as i64).unwrap();
            let r = &t.lim_lim1(&[2], Exec::Sequential).unwrap()[0];
            assert!(r.stabilized);
            assert_eq!(r.lim, Some(0));
        }
    }

    #[test]
    fn periodic_tower_stabilizes() {
        // the dual of k[c] under c: onto everywhere, iso far up
        let m = Atom::Dual(1).realize(None).unwrap();
        let t = Tower::of_powers(&m, &Poly::var(1, 0), 4, -2, 6).unwrap();
        let r = t.lim_lim1(&[0, 2, 4], Exec::Sequential).unwrap();
        for x in &r {
            assert!(x.mittag_leffler && x.stabilized);
            assert_eq!(x.lim, Some(1));
        }
    }

    #[test]
    fn finite_length_is_complete() {
        let m = Atom::Cyclic(0, 3).realize(None).unwrap();
        let s = MultSet::new(1, ConnSubgroup::Full, vec![LinearForm::new(&[1]).unwrap()]).unwrap();
        let c = completion(&m, &s, 5, Exec::Sequential).unwrap();
        assert!(c.all_stabilized());
        assert!(c.comparison.is_iso().unwrap());
    }

    #[test]
    fn polynomial_ring_completes_to_itself() {
        let m = Atom::Free(0).realize(Some((-8, 0))).unwrap();
        let c = completion_by(&m, &Poly::var(1, 0), 8, Exec::Sequential).unwrap();
        for row in c.degrees.iter().filter(|r| r.degree >= -8) {
            assert!(row.stabilized, "degree {}", row.degree);
            assert_eq!(row.quotient_dim, row.dim);
            assert_eq!(row.cokernel, row.lim1);
        }
    }

    #[test]
    fn witness_unsettled_grows() {
        // rank 2, e = x: (x^h M)_2 has dimension (N−h)(N−h+1)/2
        let h = 2;
        let mut prev = 0;
        for n in [3u32, 4, 5] {
            let m = witness_module(2, n).unwrap();
            let c = completion_by(&m, &Poly::var(2, 0), h, Exec::Sequential).unwrap();
            let row = c.degrees.iter().find(|r| r.degree == 2).unwrap();
            let k = n as usize - h;
            assert_eq!(row.unsettled, k * (k + 1) / 2);
            assert!(row.unsettled > prev);
            prev = row.unsettled;
        }
    }
}
