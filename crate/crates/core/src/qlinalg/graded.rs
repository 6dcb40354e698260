//! Windowed graded vector spaces and degreewise maps.
//!
//! A [`GradedSpace`] stores dimensions on a window `[lo, hi]` and a tail tag
//! on each side. A `Periodic` tail means the degrees beyond the edge are
//! copies of the edge degree of the same parity: degree `d > hi` is
//! identified with `hi` or `hi - 1`, and likewise below. A `Zero` tail means
//! nothing lives beyond the edge; `Unknown` means the window does not
//! determine it and anything that needs those degrees fails.
//!
//! A [`GradedMap`] carries one block per source degree of the window and is
//! extended beyond the window by the same identification, so maps between
//! periodic tails are translation invariant. Source and target windows are
//! aligned: the target window is the source window moved by the shift.

use std::fmt;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exec::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tail {
    Zero,
    Periodic,
    Unknown,
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Zero => "zero",
            Tail::Periodic => "periodic",
            Tail::Unknown => "unknown",
        })
    }
}

/// Where a degree lives relative to a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Loc {
    Inside,
    /// Beyond the window in a periodic tail; the payload is the edge degree
    /// it is identified with.
    Copy(i64),
    Zero,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedSpace {
    pub lo: i64,
    pub hi: i64,
    pub dims: Vec<usize>,
    pub below: Tail,
    pub above: Tail,
}

impl GradedSpace {
    pub fn new(lo: i64, hi: i64, dims: Vec<usize>, below: Tail, above: Tail) -> Result<Self> {
        if hi < lo {
            return Err(Error::Invalid(format!("empty window [{lo},{hi}]")));
        }
        if dims.len() as i64 != hi - lo + 1 {
            return Err(Error::Invalid("dims length does not match window".into()));
        }
        if (below == Tail::Periodic || above == Tail::Periodic) && hi < lo + 1 {
            return Err(Error::Invalid("periodic tails need a window of width at least 2".into()));
        }
        Ok(GradedSpace { lo, hi, dims, below, above })
    }

    pub fn zero() -> Self {
        GradedSpace { lo: 0, hi: 1, dims: vec![0, 0], below: Tail::Zero, above: Tail::Zero }
    }

    /// Dimensions given on a window with zero tails.
    pub fn finite(lo: i64, dims: Vec<usize>) -> Self {
        let mut dims = dims;
        if dims.len() < 2 {
            dims.resize(2, 0);
        }
        let hi = lo + dims.len() as i64 - 1;
        GradedSpace { lo, hi, dims, below: Tail::Zero, above: Tail::Zero }
    }

    pub fn locate(&self, d: i64) -> Loc {
        if d >= self.lo && d <= self.hi {
            return Loc::Inside;
        }
        if d > self.hi {
            match self.above {
                Tail::Zero => Loc::Zero,
                Tail::Unknown => Loc::Unknown,
                Tail::Periodic => Loc::Copy(if (d - self.hi) % 2 == 0 { self.hi } else { self.hi - 1 }),
            }
        } else {
            match self.below {
                Tail::Zero => Loc::Zero,
                Tail::Unknown => Loc::Unknown,
                Tail::Periodic => {
                    Loc::Copy(if (self.lo - d) % 2 == 0 { self.lo } else { self.lo + 1 })
                }
            }
        }
    }

    pub fn dim(&self, d: i64) -> Result<usize> {
        match self.locate(d) {
            Loc::Inside => Ok(self.dims[(d - self.lo) as usize]),
            Loc::Copy(e) => Ok(self.dims[(e - self.lo) as usize]),
            Loc::Zero => Ok(0),
            Loc::Unknown => Err(Error::Poisoned { op: "dim", degree: d }),
        }
    }

    /// Dimension on the window only; panics outside it.
    pub fn dim_in(&self, d: i64) -> usize {
        self.dims[(d - self.lo) as usize]
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.below == Tail::Zero && self.above == Tail::Zero
    }

    pub fn total_dim(&self) -> Option<usize> {
        self.is_finite().then(|| self.dims.iter().sum())
    }

    /// True when the space is zero in every degree.
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
            && self.below != Tail::Unknown
            && self.above != Tail::Unknown
    }

    /// Smallest and largest degree carrying something, if the space is
    /// finite and nonzero.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = self.degrees().filter(|&d| self.dim_in(d) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    pub fn shifted(&self, a: i64) -> GradedSpace {
        GradedSpace { lo: self.lo + a, hi: self.hi + a, ..self.clone() }
    }

    /// Same space on a larger window; the new degrees are read off the tails.
    pub fn extend(&self, lo: i64, hi: i64) -> Result<GradedSpace> {
        let (lo, hi) = (lo.min(self.lo), hi.max(self.hi));
        let dims = (lo..=hi).map(|d| self.dim(d)).collect::<Result<Vec<_>>>()?;
        GradedSpace::new(lo, hi, dims, self.below, self.above)
    }

    /// Same space cut down to a smaller window. Tails that are not zero become
    /// unknown unless the cut keeps the edge.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<GradedSpace> {
        let dims = (lo..=hi).map(|d| self.dim(d)).collect::<Result<Vec<_>>>()?;
        let below = if lo <= self.lo { self.below } else { Tail::Unknown };
        let above = if hi >= self.hi { self.above } else { Tail::Unknown };
        GradedSpace::new(lo, hi, dims, below, above)
    }

    pub fn direct_sum(parts: &[&GradedSpace]) -> Result<GradedSpace> {
        let Some(first) = parts.first() else {
            return Ok(GradedSpace::zero());
        };
        let (lo, hi) = GradedSpace::sum_window(parts);
        let ext = parts.iter().map(|p| p.extend(lo, hi)).collect::<Result<Vec<_>>>()?;
        let _ = first;
        GradedSpace::sum_aligned(&ext.iter().collect::<Vec<_>>())
    }

    /// Direct sum of spaces already stored on one common window.
    pub fn sum_aligned(parts: &[&GradedSpace]) -> Result<GradedSpace> {
        let (lo, hi) = (parts[0].lo, parts[0].hi);
        let dims = (0..parts[0].dims.len()).map(|i| parts.iter().map(|p| p.dims[i]).sum()).collect();
        let below = combine_tails(parts.iter().map(|p| p.below));
        let above = combine_tails(parts.iter().map(|p| p.above));
        GradedSpace::new(lo, hi, dims, below, above)
    }

    /// A window on which a direct sum can be stored: the union of the
    /// windows, widened by two on sides where some summand is periodic so
    /// that the copied edge degrees see zero from the finite summands.
    pub fn sum_window(parts: &[&GradedSpace]) -> (i64, i64) {
        let mut lo = parts.iter().map(|p| p.lo).min().unwrap_or(0);
        let mut hi = parts.iter().map(|p| p.hi).max().unwrap_or(1);
        if parts.iter().any(|p| p.below == Tail::Periodic) && parts.iter().any(|p| p.below != Tail::Periodic) {
            lo -= 2;
        }
        if parts.iter().any(|p| p.above == Tail::Periodic) && parts.iter().any(|p| p.above != Tail::Periodic) {
            hi += 2;
        }
        (lo, hi)
    }

    /// Widens the window by two on every periodic side, so that the new edges
    /// sit inside the copied zone.
    pub fn padded(&self) -> GradedSpace {
        let lo = if self.below == Tail::Periodic { self.lo - 2 } else { self.lo };
        let hi = if self.above == Tail::Periodic { self.hi + 2 } else { self.hi };
        self.extend(lo, hi).expect("periodic tails extend")
    }
}

pub fn combine_tails(it: impl Iterator<Item = Tail>) -> Tail {
    let mut out = Tail::Zero;
    for t in it {
        out = match (out, t) {
            (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
            (Tail::Periodic, _) | (_, Tail::Periodic) => Tail::Periodic,
            _ => Tail::Zero,
        };
    }
    out
}

/// Degreewise linear map `src_d -> tgt_{d+shift}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub src: GradedSpace,
    pub tgt: GradedSpace,
    pub shift: i64,
    blocks: Vec<Matrix>,
}

impl GradedMap {
    pub fn new(src: GradedSpace, tgt: GradedSpace, shift: i64, blocks: Vec<Matrix>) -> Result<Self> {
        if tgt.lo != src.lo + shift || tgt.hi != src.hi + shift {
            return Err(Error::MalformedMap(format!(
                "windows not aligned: [{},{}] -> [{},{}] with shift {}",
                src.lo, src.hi, tgt.lo, tgt.hi, shift
            )));
        }
        if blocks.len() != src.dims.len() {
            return Err(Error::MalformedMap("one block per source degree expected".into()));
        }
        for (i, b) in blocks.iter().enumerate() {
            let d = src.lo + i as i64;
            let want = (tgt.dim_in(d + shift), src.dim_in(d));
            if b.shape() != want {
                return Err(Error::MalformedMap(format!(
                    "block in degree {d} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(GradedMap { src, tgt, shift, blocks })
    }

    pub fn from_fn(
        src: GradedSpace,
        tgt: GradedSpace,
        shift: i64,
        f: impl Fn(i64) -> Result<Matrix>,
    ) -> Result<Self> {
        let blocks = src.degrees().map(&f).collect::<Result<Vec<_>>>()?;
        GradedMap::new(src, tgt, shift, blocks)
    }

    pub fn zero(src: GradedSpace, tgt: GradedSpace, shift: i64) -> Result<Self> {
        let blocks =
            src.degrees().map(|d| Matrix::zeros(tgt.dim_in(d + shift), src.dim_in(d))).collect();
        GradedMap::new(src, tgt, shift, blocks)
    }

    pub fn identity(s: &GradedSpace) -> Self {
        let blocks = s.degrees().map(|d| Matrix::identity(s.dim_in(d))).collect();
        GradedMap { src: s.clone(), tgt: s.clone(), shift: 0, blocks }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn block(&self, d: i64) -> &Matrix {
        &self.blocks[(d - self.src.lo) as usize]
    }

    /// Block in any degree, using the tail identification off the window.
    pub fn block_at(&self, d: i64) -> Result<Matrix> {
        let rows = self.tgt.dim(d + self.shift)?;
        match self.src.locate(d) {
            Loc::Inside => Ok(self.block(d).clone()),
            Loc::Zero => Ok(Matrix::zeros(rows, 0)),
            Loc::Unknown => Err(Error::Poisoned { op: "block", degree: d }),
            Loc::Copy(e) => match self.tgt.locate(d + self.shift) {
                Loc::Zero => Ok(Matrix::zeros(0, self.src.dim_in(e))),
                Loc::Unknown => Err(Error::Poisoned { op: "block", degree: d }),
                _ => Ok(self.block(e).clone()),
            },
        }
    }

    /// The map on a larger source window (target moves along).
    pub fn extend(&self, lo: i64, hi: i64) -> Result<GradedMap> {
        let (lo, hi) = (lo.min(self.src.lo), hi.max(self.src.hi));
        let src = self.src.extend(lo, hi)?;
        let tgt = self.tgt.extend(lo + self.shift, hi + self.shift)?;
        let blocks = (lo..=hi).map(|d| self.block_at(d)).collect::<Result<Vec<_>>>()?;
        GradedMap::new(src, tgt, self.shift, blocks)
    }

    /// Extends by two on each side where either end has a periodic tail, so
    /// that derived spaces (kernel, cokernel) get correct tails.
    pub fn settled(&self) -> Result<GradedMap> {
        let per = |a: Tail, b: Tail| a == Tail::Periodic || b == Tail::Periodic;
        let unknown = |a: Tail, b: Tail| a == Tail::Unknown || b == Tail::Unknown;
        let mut lo = self.src.lo;
        let mut hi = self.src.hi;
        if per(self.src.below, self.tgt.below) && !unknown(self.src.below, self.tgt.below) {
            lo -= 2;
        }
        if per(self.src.above, self.tgt.above) && !unknown(self.src.above, self.tgt.above) {
            hi += 2;
        }
        self.extend(lo, hi)
    }

    /// `self ∘ f`. The target window of `f` must be the source window here.
    pub fn compose(&self, f: &GradedMap) -> Result<GradedMap> {
        if f.tgt.lo != self.src.lo || f.tgt.hi != self.src.hi {
            return Err(Error::MalformedMap("compose: windows differ".into()));
        }
        let blocks = f
            .src
            .degrees()
            .map(|d| self.block(d + f.shift).mul(f.block(d)))
            .collect::<Result<Vec<_>>>()?;
        GradedMap::new(f.src.clone(), self.tgt.clone(), self.shift + f.shift, blocks)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.src != other.src || self.tgt != other.tgt || self.shift != other.shift {
            return Err(Error::MalformedMap("add: different shapes".into()));
        }
        let blocks =
            self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(GradedMap { blocks, ..self.clone() })
    }

    pub fn scale(&self, s: &super::Q) -> GradedMap {
        GradedMap { blocks: self.blocks.iter().map(|b| b.scale(s)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    /// Relabels every degree by `a`.
    pub fn shifted(&self, a: i64) -> GradedMap {
        GradedMap {
            src: self.src.shifted(a),
            tgt: self.tgt.shifted(a),
            shift: self.shift,
            blocks: self.blocks.clone(),
        }
    }

    /// Restriction to a smaller source window.
    pub fn restrict(&self, lo: i64, hi: i64) -> Result<GradedMap> {
        let src = self.src.restrict(lo, hi)?;
        let tgt = self.tgt.restrict(lo + self.shift, hi + self.shift)?;
        let blocks = (lo..=hi).map(|d| self.block_at(d)).collect::<Result<Vec<_>>>()?;
        GradedMap::new(src, tgt, self.shift, blocks)
    }

    /// Direct sum of maps with identical shift, windows widened to a common one.
    pub fn direct_sum(parts: &[&GradedMap]) -> Result<GradedMap> {
        let shift = parts.first().map_or(0, |p| p.shift);
        if parts.iter().any(|p| p.shift != shift) {
            return Err(Error::MalformedMap("direct sum of maps with different shifts".into()));
        }
        let (lo0, hi0) = GradedSpace::sum_window(&parts.iter().map(|p| &p.src).collect::<Vec<_>>());
        let (lo1, hi1) = GradedSpace::sum_window(&parts.iter().map(|p| &p.tgt).collect::<Vec<_>>());
        let (lo, hi) = (lo0.min(lo1 - shift), hi0.max(hi1 - shift));
        let ext = parts.iter().map(|p| p.extend(lo, hi)).collect::<Result<Vec<_>>>()?;
        if ext.is_empty() {
            return Err(Error::MalformedMap("empty direct sum of maps".into()));
        }
        let src = GradedSpace::sum_aligned(&ext.iter().map(|p| &p.src).collect::<Vec<_>>())?;
        let tgt = GradedSpace::sum_aligned(&ext.iter().map(|p| &p.tgt).collect::<Vec<_>>())?;
        let blocks = (0..src.dims.len())
            .map(|i| Matrix::block_diag(&ext.iter().map(|p| &p.blocks[i]).collect::<Vec<_>>()))
            .collect();
        GradedMap::new(src, tgt, shift, blocks)
    }

    /// Per-degree rank and kernel basis on the source window.
    pub fn rank_kernel(&self, ex: Exec) -> Vec<(i64, usize, Matrix)> {
        let degs: Vec<i64> = self.src.degrees().collect();
        exec::map(ex, &degs, |&d| {
            let b = self.block(d);
            (d, b.rank(), b.kernel())
        })
    }

    /// Kernel as a space with its inclusion.
    pub fn kernel(&self, ex: Exec) -> Result<(GradedSpace, GradedMap)> {
        let m = self.settled()?;
        let ks: Vec<Matrix> = m.rank_kernel(ex).into_iter().map(|(_, _, k)| k).collect();
        let below = kernel_tail(m.src.below, m.tgt.below);
        let above = kernel_tail(m.src.above, m.tgt.above);
        let sp = GradedSpace::new(m.src.lo, m.src.hi, ks.iter().map(|k| k.cols()).collect(), below, above)?;
        let inc = GradedMap::new(sp.clone(), m.src.clone(), 0, ks)?;
        Ok((sp, inc))
    }

    /// Image as a space with its inclusion into the target.
    pub fn image(&self, ex: Exec) -> Result<(GradedSpace, GradedMap)> {
        let m = self.settled()?;
        let degs: Vec<i64> = m.src.degrees().collect();
        let ims = exec::map(ex, &degs, |&d| m.block(d).image());
        let below = image_tail(m.src.below, m.tgt.below);
        let above = image_tail(m.src.above, m.tgt.above);
        let sp = GradedSpace::new(
            m.tgt.lo,
            m.tgt.hi,
            ims.iter().map(|k| k.cols()).collect(),
            below,
            above,
        )?;
        let inc = GradedMap::new(sp.clone(), m.tgt.clone(), 0, ims)?;
        Ok((sp, inc))
    }

    /// Cokernel with projection from the target and a degreewise section.
    pub fn cokernel(&self, ex: Exec) -> Result<Cokernel> {
        let m = self.settled()?;
        let degs: Vec<i64> = m.src.degrees().collect();
        let qs = exec::map(ex, &degs, |&d| m.block(d).quotient());
        let sp = GradedSpace::new(
            m.tgt.lo,
            m.tgt.hi,
            qs.iter().map(|(p, _)| p.rows()).collect(),
            m.tgt.below,
            m.tgt.above,
        )?;
        let proj = GradedMap::new(m.tgt.clone(), sp.clone(), 0, qs.iter().map(|x| x.0.clone()).collect())?;
        let section = GradedMap::new(sp.clone(), m.tgt.clone(), 0, qs.into_iter().map(|x| x.1).collect())?;
        Ok(Cokernel { space: sp, proj, section })
    }

    pub fn is_injective(&self) -> Result<bool> {
        let m = self.settled()?;
        Ok(m.blocks.iter().all(|b| b.is_injective()))
    }

    pub fn is_surjective(&self) -> Result<bool> {
        let m = self.settled()?;
        Ok(m.blocks.iter().all(|b| b.is_surjective()))
    }

    pub fn is_iso(&self) -> Result<bool> {
        let m = self.settled()?;
        Ok(m.blocks.iter().all(|b| b.is_invertible()))
    }
}

fn kernel_tail(src: Tail, tgt: Tail) -> Tail {
    match (src, tgt) {
        (Tail::Zero, _) => Tail::Zero,
        (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
        _ => Tail::Periodic,
    }
}

fn image_tail(src: Tail, tgt: Tail) -> Tail {
    match (src, tgt) {
        (Tail::Zero, _) | (_, Tail::Zero) => Tail::Zero,
        (Tail::Unknown, _) | (_, Tail::Unknown) => Tail::Unknown,
        _ => Tail::Periodic,
    }
}

pub struct Cokernel {
    pub space: GradedSpace,
    pub proj: GradedMap,
    pub section: GradedMap,
}

/// Homology of `A -f-> B -g-> C` at `B`: a space with basis lifts into `B`.
pub struct Homology {
    pub space: GradedSpace,
    pub lifts: GradedMap,
}

pub fn homology_at(f: &GradedMap, g: &GradedMap, ex: Exec) -> Result<Homology> {
    let per = |t: Tail| t == Tail::Periodic;
    let pad_lo = if [f.tgt.below, g.src.below, g.tgt.below, f.src.below].into_iter().any(per) { 2 } else { 0 };
    let pad_hi = if [f.tgt.above, g.src.above, g.tgt.above, f.src.above].into_iter().any(per) { 2 } else { 0 };
    let lo = f.tgt.lo.min(g.src.lo) - pad_lo;
    let hi = f.tgt.hi.max(g.src.hi) + pad_hi;
    let f = f.extend(lo - f.shift, hi - f.shift)?;
    let g = g.extend(lo, hi)?;
    let degs: Vec<i64> = g.src.degrees().collect();
    let res = exec::try_map(ex, &degs, |&d| -> Result<Matrix> {
        let fb = f.block(d - f.shift);
        let gb = g.block(d);
        if !gb.mul(fb)?.is_zero() {
            return Err(Error::NotAComplex { degree: d });
        }
        let k = gb.kernel();
        let coords = k.solve(fb).expect("image lies in kernel");
        let (_, s) = coords.quotient();
        Ok(k.dot(&s))
    })?;
    let below = kernel_tail(g.src.below, g.tgt.below);
    let above = kernel_tail(g.src.above, g.tgt.above);
    let space = GradedSpace::new(g.src.lo, g.src.hi, res.iter().map(|m| m.cols()).collect(), below, above)?;
    let lifts = GradedMap::new(space.clone(), g.src.clone(), 0, res)?;
    Ok(Homology { space, lifts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    fn sp(lo: i64, dims: Vec<usize>) -> GradedSpace {
        GradedSpace::finite(lo, dims)
    }

    #[test]
    fn rank_nullity_every_degree() {
        let s = sp(0, vec![2, 3]);
        let t = sp(0, vec![2, 1]);
        let f = GradedMap::new(
            s.clone(),
            t,
            0,
            vec![Matrix::from_i64(&[&[1, 2], &[2, 4]]), Matrix::from_i64(&[&[1, 0, 1]])],
        )
        .unwrap();
        for (d, r, k) in f.rank_kernel(Exec::Sequential) {
            assert_eq!(r + k.cols(), s.dim(d).unwrap());
            assert!(f.block(d).dot(&k).is_zero());
        }
    }

    #[test]
    fn malformed_block_rejected() {
        let s = sp(0, vec![2, 0]);
        let r = GradedMap::new(s.clone(), s, 0, vec![Matrix::zeros(1, 2), Matrix::zeros(0, 0)]);
        assert!(matches!(r, Err(Error::MalformedMap(_))));
    }

    #[test]
    fn cokernel_of_surjection_and_zero() {
        let s = sp(0, vec![2, 1]);
        let t = sp(0, vec![1, 1]);
        let f = GradedMap::new(s.clone(), t.clone(), 0, vec![Matrix::from_i64(&[&[1, 1]]), Matrix::identity(1)])
            .unwrap();
        let c = f.cokernel(Exec::Sequential).unwrap();
        assert!(c.space.is_zero());
        let z = GradedMap::zero(s, t.clone(), 0).unwrap();
        let c = z.cokernel(Exec::Sequential).unwrap();
        assert_eq!(c.space.dims, t.dims);
        assert_eq!(c.proj.block(0), &Matrix::identity(1));
    }

    #[test]
    fn homology_trivial_cases() {
        let a = sp(0, vec![1, 2]);
        let f = GradedMap::zero(a.clone(), a.clone(), 0).unwrap();
        let h = homology_at(&f, &f, Exec::Sequential).unwrap();
        assert_eq!(h.space.dims, a.dims);
        let id = GradedMap::identity(&a);
        let z = GradedMap::zero(a.clone(), sp(0, vec![0, 0]), 0).unwrap();
        let h = homology_at(&id, &z, Exec::Sequential).unwrap();
        assert!(h.space.is_zero());
    }

    #[test]
    fn not_a_complex_reports_degree() {
        let a = sp(3, vec![0, 1]);
        let id = GradedMap::identity(&a);
        match homology_at(&id, &id, Exec::Sequential) {
            Err(Error::NotAComplex { degree }) => assert_eq!(degree, 4),
            _ => panic!("expected not-a-complex"),
        }
    }

    #[test]
    fn periodic_tail_folds() {
        let s = GradedSpace::new(0, 3, vec![0, 1, 1, 1], Tail::Zero, Tail::Periodic).unwrap();
        assert_eq!(s.dim(100).unwrap(), 1);
        assert_eq!(s.dim(-5).unwrap(), 0);
        let f = GradedMap::from_fn(s.clone(), s.clone(), 0, |d| {
            Ok(Matrix::identity(s.dim(d)?).scale(&q(d + 1)))
        })
        .unwrap();
        assert_eq!(f.block_at(10).unwrap(), Matrix::identity(1).scale(&q(3)));
        assert_eq!(f.block_at(11).unwrap(), Matrix::identity(1).scale(&q(4)));
        let u = GradedSpace::new(0, 1, vec![1, 1], Tail::Unknown, Tail::Zero).unwrap();
        assert!(matches!(u.dim(-1), Err(Error::Poisoned { .. })));
    }

    #[test]
    fn kernel_tail_after_settling() {
        // identity on a periodic space followed by projection to a finite one
        let s = GradedSpace::new(0, 1, vec![1, 1], Tail::Zero, Tail::Periodic).unwrap();
        let t = GradedSpace::new(0, 1, vec![1, 1], Tail::Zero, Tail::Zero).unwrap();
        let f = GradedMap::new(s, t, 0, vec![Matrix::identity(1), Matrix::identity(1)]).unwrap();
        let (k, _) = f.kernel(Exec::Sequential).unwrap();
        assert_eq!(k.dim(0).unwrap(), 0);
        assert_eq!(k.dim(2).unwrap(), 1);
        assert_eq!(k.dim(101).unwrap(), 1);
    }
}
