//! Windowed graded modules over ℚ[x₁,…,x_s] with generators in degree −2.
//!
//! Beyond a periodic edge every generator acts as the identity between
//! identified degrees (the bases there are `(cᵏ)^∨` above and `cᵏ` below),
//! so a module with periodic tails is determined by its window. Periodic
//! tails are only allowed for at most one generator.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::qlinalg::{GradedMap, GradedSpace, Loc, Matrix, Tail};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub nvars: usize,
    pub space: GradedSpace,
    /// `act[i][k]` is generator `i` from degree `lo + 2 + k` to `lo + k`.
    act: Vec<Vec<Matrix>>,
}

impl Module {
    pub fn new(nvars: usize, space: GradedSpace, act: Vec<Vec<Matrix>>) -> Result<Self> {
        if act.len() != nvars {
            return Err(Error::Invalid(format!("{} action lists for {nvars} generators", act.len())));
        }
        let periodic = space.below == Tail::Periodic || space.above == Tail::Periodic;
        if periodic && nvars > 1 {
            return Err(Error::Unsupported("periodic tails with more than one generator".into()));
        }
        let m = Module { nvars, space, act };
        let stored: Vec<i64> = m.stored_degrees().collect();
        for (i, a) in m.act.iter().enumerate() {
            if a.len() != stored.len() {
                return Err(Error::MalformedMap(format!("generator {i}: wrong number of action blocks")));
            }
            for (b, &d) in a.iter().zip(&stored) {
                if b.shape() != (m.space.dim_in(d - 2), m.space.dim_in(d)) {
                    return Err(Error::MalformedMap(format!("generator {i}: bad block shape in degree {d}")));
                }
            }
        }
        for i in 0..nvars {
            for j in i + 1..nvars {
                let from = if m.space.below == Tail::Unknown { m.space.lo + 4 } else { m.space.lo };
                let to = if m.space.above == Tail::Unknown { m.space.hi } else { m.space.hi + 4 };
                for d in from..=to {
                    let a = m.act_at(i, d - 2)?.dot(&m.act_at(j, d)?);
                    let b = m.act_at(j, d - 2)?.dot(&m.act_at(i, d)?);
                    if a != b {
                        return Err(Error::MalformedMap(format!(
                            "generators {i} and {j} do not commute in degree {d}"
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Builds the action blocks from a function of (generator, degree).
    pub fn from_fn(nvars: usize, space: GradedSpace, f: impl Fn(usize, i64) -> Matrix) -> Result<Self> {
        let lo = space.lo;
        let hi = space.hi;
        let act = (0..nvars).map(|i| (lo + 2..=hi).map(|d| f(i, d)).collect()).collect();
        Module::new(nvars, space, act)
    }

    pub fn zero(nvars: usize) -> Self {
        Module { nvars, space: GradedSpace::zero(), act: vec![vec![]; nvars] }
    }

    /// A graded vector space with zero action.
    pub fn trivial(nvars: usize, space: GradedSpace) -> Result<Self> {
        let s = space.clone();
        Module::from_fn(nvars, space, move |_, d| Matrix::zeros(s.dim_in(d - 2), s.dim_in(d)))
    }

    fn stored_degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.space.lo + 2..=self.space.hi
    }

    pub fn lo(&self) -> i64 {
        self.space.lo
    }

    pub fn hi(&self) -> i64 {
        self.space.hi
    }

    pub fn dim(&self, d: i64) -> Result<usize> {
        self.space.dim(d)
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.space.is_finite()
    }

    /// Generator `i` from degree `d` to `d − 2`, in any degree.
    pub fn act_at(&self, i: usize, d: i64) -> Result<Matrix> {
        let src = self.space.locate(d);
        let tgt = self.space.locate(d - 2);
        if src == Loc::Unknown || tgt == Loc::Unknown {
            return Err(Error::Poisoned { op: "action", degree: d });
        }
        if d >= self.space.lo + 2 && d <= self.space.hi {
            return Ok(self.act[i][(d - self.space.lo - 2) as usize].clone());
        }
        let (r, c) = (self.space.dim(d - 2)?, self.space.dim(d)?);
        if r == 0 || c == 0 {
            return Ok(Matrix::zeros(r, c));
        }
        // both ends nonzero outside the stored range: a periodic tail
        debug_assert_eq!(r, c);
        Ok(Matrix::identity(c))
    }

    /// `x_i^k` from degree `d` to `d − 2k`.
    pub fn power(&self, i: usize, k: u64, d: i64) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.space.dim(d)?);
        let mut k = k;
        let mut d = d;
        if self.space.above == Tail::Periodic && d > self.space.hi + 2 {
            let j = (((d - self.space.hi - 1) / 2) as u64).min(k);
            d -= 2 * j as i64;
            k -= j;
        }
        while k > 0 {
            if self.space.below == Tail::Periodic && d <= self.space.lo + 1 {
                return Ok(acc);
            }
            let a = self.act_at(i, d)?;
            acc = a.dot(&acc);
            if acc.rows() == 0 || acc.is_zero() {
                let rows = self.space.dim(d - 2 * k as i64)?;
                return Ok(Matrix::zeros(rows, acc.cols()));
            }
            d -= 2;
            k -= 1;
        }
        Ok(acc)
    }

    /// Multiplication by a monomial `∏ x_i^{e_i}` from degree `d`.
    pub fn mono_action(&self, exps: &[u32], d: i64) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.space.dim(d)?);
        let mut d = d;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                acc = self.power(i, e as u64, d)?.dot(&acc);
                d -= 2 * e as i64;
            }
        }
        Ok(acc)
    }

    /// Σ^a: every degree moves up by `a`.
    pub fn shifted(&self, a: i64) -> Module {
        Module { nvars: self.nvars, space: self.space.shifted(a), act: self.act.clone() }
    }

    /// Same module on a larger window.
    pub fn extend(&self, lo: i64, hi: i64) -> Result<Module> {
        let space = self.space.extend(lo, hi)?;
        let act = (0..self.nvars)
            .map(|i| (space.lo + 2..=space.hi).map(|d| self.act_at(i, d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Module { nvars: self.nvars, space, act })
    }

    /// The window widened by two on every periodic side.
    pub fn padded(&self) -> Result<Module> {
        let p = self.space.padded();
        self.extend(p.lo, p.hi)
    }

    /// Smallest window carrying the module: zero degrees at finite edges are
    /// dropped.
    pub fn trimmed(&self) -> Result<Module> {
        let s = &self.space;
        let mut lo = s.lo;
        let mut hi = s.hi;
        if s.below == Tail::Zero {
            while lo + 1 < hi && s.dim_in(lo) == 0 {
                lo += 1;
            }
        }
        if s.above == Tail::Zero {
            while hi - 1 > lo && s.dim_in(hi) == 0 {
                hi -= 1;
            }
        }
        if lo == s.lo && hi == s.hi {
            return Ok(self.clone());
        }
        let dims = (lo..=hi).map(|d| s.dim_in(d)).collect();
        let space = GradedSpace::new(lo, hi, dims, s.below, s.above)?;
        let act = (0..self.nvars)
            .map(|i| (lo + 2..=hi).map(|d| self.act_at(i, d)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Module { nvars: self.nvars, space, act })
    }

    pub fn direct_sum(parts: &[&Module]) -> Result<Module> {
        let Some(first) = parts.first() else {
            return Err(Error::Invalid("empty direct sum needs a ring".into()));
        };
        let n = first.nvars;
        if parts.iter().any(|p| p.nvars != n) {
            return Err(Error::Invalid("direct sum over different rings".into()));
        }
        let (lo, hi) = GradedSpace::sum_window(&parts.iter().map(|p| &p.space).collect::<Vec<_>>());
        let ext = parts.iter().map(|p| p.extend(lo, hi)).collect::<Result<Vec<_>>>()?;
        let space = GradedSpace::sum_aligned(&ext.iter().map(|p| &p.space).collect::<Vec<_>>())?;
        let act = (0..n)
            .map(|i| {
                (0..ext[0].act[i].len())
                    .map(|k| Matrix::block_diag(&ext.iter().map(|p| &p.act[i][k]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        Module::new(n, space, act)
    }

    /// Graded vector-space dual: `(M^∨)_d = (M_{−d})^*`, actions transposed.
    pub fn matlis_dual(&self) -> Result<Module> {
        let s = &self.space;
        let dims = (-s.hi..=-s.lo).map(|d| s.dim_in(-d)).collect();
        let space = GradedSpace::new(-s.hi, -s.lo, dims, s.above, s.below)?;
        let act = (0..self.nvars)
            .map(|i| {
                (space.lo + 2..=space.hi)
                    .map(|d| Ok(self.act_at(i, 2 - d)?.transpose()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Module::new(self.nvars, space, act)
    }

    /// Multiplication by generator `i` as a degree-preserving map `M → Σ²M`.
    pub fn mult_map(&self, i: usize) -> Result<ModMap> {
        let t = self.shifted(2);
        ModMap::from_fn(self, &t, |d| self.act_at(i, d))
    }

    /// Both modules moved to the union of their windows.
    pub fn common_window(a: &Module, b: &Module) -> Result<(Module, Module)> {
        let lo = a.lo().min(b.lo());
        let hi = a.hi().max(b.hi());
        Ok((a.extend(lo, hi)?, b.extend(lo, hi)?))
    }

    /// Identity map.
    pub fn identity(&self) -> ModMap {
        ModMap { src: self.clone(), tgt: self.clone(), f: GradedMap::identity(&self.space) }
    }

    /// The torsion submodule for one generator: elements killed by a power
    /// of `x_i`. Only meaningful for one-variable modules or finite ones.
    pub fn gamma_torsion(&self, ex: Exec) -> Result<(Module, ModMap)> {
        if self.space.below == Tail::Unknown || self.space.above == Tail::Unknown {
            return Err(Error::Poisoned { op: "gamma_torsion", degree: self.lo() });
        }
        if self.space.below != Tail::Periodic {
            // everything is eventually pushed below the window
            return Ok((self.clone(), self.identity()));
        }
        // the localization: lower tail copied everywhere, generator invertible
        let loc = self.localization()?;
        let lo = self.lo();
        let (m, l) = Module::common_window(self, &loc)?;
        let f = GradedMap::from_fn(m.space.clone(), l.space.clone(), 0, |d| {
            let k = if d >= lo + 2 { ((d - lo) / 2) as u64 } else { 0 };
            m.power(0, k, d)
        })?;
        let g = ModMap::new(m, l, f)?;
        g.kernel(ex)
    }

    /// The module with the lower periodic tail copied into every degree and
    /// the generator acting invertibly (`M[1/c]` for one variable).
    pub fn localization(&self) -> Result<Module> {
        if self.nvars != 1 || self.space.below != Tail::Periodic {
            return Err(Error::Unsupported("localization needs one generator and a periodic lower tail".into()));
        }
        let lo = self.lo();
        let space = GradedSpace::new(
            lo,
            lo + 1,
            vec![self.space.dim_in(lo), self.space.dim_in(lo + 1)],
            Tail::Periodic,
            Tail::Periodic,
        )?;
        Module::new(1, space, vec![vec![]])
    }

    /// Torsion check: every element is killed by some power of each generator.
    pub fn is_torsion(&self) -> Result<bool> {
        let (t, _) = self.gamma_torsion(Exec::Sequential)?;
        Ok(t.space.extend(self.lo(), self.hi())?.dims == self.space.dims
            || self.space.below != Tail::Periodic)
    }
}

/// A degree-preserving module map. Source and target share a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMap {
    pub src: Module,
    pub tgt: Module,
    pub f: GradedMap,
}

impl ModMap {
    pub fn new(src: Module, tgt: Module, f: GradedMap) -> Result<Self> {
        if f.shift != 0 || f.src != src.space || f.tgt != tgt.space {
            return Err(Error::MalformedMap("module map does not match its modules".into()));
        }
        if src.nvars != tgt.nvars {
            return Err(Error::MalformedMap("module map between different rings".into()));
        }
        let m = ModMap { src, tgt, f };
        m.check_linear()?;
        Ok(m)
    }

    /// Builds a map after moving both modules to a common window.
    pub fn from_fn(src: &Module, tgt: &Module, f: impl Fn(i64) -> Result<Matrix>) -> Result<Self> {
        let (s, t) = Module::common_window(src, tgt)?;
        let g = GradedMap::from_fn(s.space.clone(), t.space.clone(), 0, f)?;
        ModMap::new(s, t, g)
    }

    pub fn zero(src: &Module, tgt: &Module) -> Result<Self> {
        ModMap::from_fn(src, tgt, |d| Ok(Matrix::zeros(tgt.dim(d)?, src.dim(d)?)))
    }

    fn check_linear(&self) -> Result<()> {
        let unknown = |a: Tail, b: Tail| a == Tail::Unknown || b == Tail::Unknown;
        let from = if unknown(self.src.space.below, self.tgt.space.below) { self.src.lo() + 2 } else { self.src.lo() };
        let to = if unknown(self.src.space.above, self.tgt.space.above) { self.src.hi() } else { self.src.hi() + 2 };
        for i in 0..self.src.nvars {
            for d in from..=to {
                let a = self.f.block_at(d - 2)?.dot(&self.src.act_at(i, d)?);
                let b = self.tgt.act_at(i, d)?.dot(&self.f.block_at(d)?);
                if a != b {
                    return Err(Error::MalformedMap(format!("map is not linear in degree {d}")));
                }
            }
        }
        Ok(())
    }

    pub fn block(&self, d: i64) -> Result<Matrix> {
        self.f.block_at(d)
    }

    /// The same map on a larger window.
    pub fn extend(&self, lo: i64, hi: i64) -> Result<ModMap> {
        let f = self.f.extend(lo, hi)?;
        let src = self.src.extend(f.src.lo, f.src.hi)?;
        let tgt = self.tgt.extend(f.src.lo, f.src.hi)?;
        Ok(ModMap { src, tgt, f })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &ModMap) -> Result<ModMap> {
        let lo = self.src.lo().min(g.src.lo());
        let hi = self.src.hi().max(g.src.hi());
        let a = self.extend(lo, hi)?;
        let b = g.extend(lo, hi)?;
        let f = a.f.compose(&b.f)?;
        Ok(ModMap { src: b.src, tgt: a.tgt, f })
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_injective(&self) -> Result<bool> {
        self.f.is_injective()
    }

    pub fn is_surjective(&self) -> Result<bool> {
        self.f.is_surjective()
    }

    pub fn is_iso(&self) -> Result<bool> {
        self.f.is_iso()
    }

    pub fn shifted(&self, a: i64) -> ModMap {
        ModMap { src: self.src.shifted(a), tgt: self.tgt.shifted(a), f: self.f.shifted(a) }
    }

    pub fn direct_sum(parts: &[&ModMap]) -> Result<ModMap> {
        let f = GradedMap::direct_sum(&parts.iter().map(|p| &p.f).collect::<Vec<_>>())?;
        let src = Module::direct_sum(&parts.iter().map(|p| &p.src).collect::<Vec<_>>())?;
        let tgt = Module::direct_sum(&parts.iter().map(|p| &p.tgt).collect::<Vec<_>>())?;
        let src = src.extend(f.src.lo, f.src.hi)?;
        let tgt = tgt.extend(f.src.lo, f.src.hi)?;
        ModMap::new(src, tgt, f)
    }

    /// Kernel module with its inclusion.
    pub fn kernel(&self, ex: Exec) -> Result<(Module, ModMap)> {
        let (ksp, inc) = self.f.kernel(ex)?;
        let m = self.src.extend(ksp.lo, ksp.hi)?;
        let degs: Vec<i64> = (ksp.lo + 2..=ksp.hi).collect();
        let act = (0..m.nvars)
            .map(|i| {
                exec::try_map(ex, &degs, |&d| {
                    let img = m.act_at(i, d)?.dot(inc.block(d));
                    inc.block(d - 2)
                        .solve(&img)
                        .ok_or_else(|| Error::MalformedMap("kernel not closed under the action".into()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let k = Module::new(m.nvars, ksp, act)?;
        let inc = ModMap::new(k.clone(), m, inc)?;
        Ok((k, inc))
    }

    /// Cokernel module with projection and a degreewise section.
    pub fn cokernel(&self, ex: Exec) -> Result<(Module, ModMap, GradedMap)> {
        let c = self.f.cokernel(ex)?;
        let n = self.tgt.extend(c.space.lo, c.space.hi)?;
        let degs: Vec<i64> = (c.space.lo + 2..=c.space.hi).collect();
        let act = (0..n.nvars)
            .map(|i| {
                exec::try_map(ex, &degs, |&d| {
                    Ok(c.proj.block(d - 2).dot(&n.act_at(i, d)?).dot(c.section.block(d)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let q = Module::new(n.nvars, c.space.clone(), act)?;
        let proj = ModMap::new(n, q.clone(), c.proj)?;
        Ok((q, proj, c.section))
    }

    /// Image module with its inclusion into the target.
    pub fn image(&self, ex: Exec) -> Result<(Module, ModMap)> {
        let (isp, inc) = self.f.image(ex)?;
        let n = self.tgt.extend(isp.lo, isp.hi)?;
        let degs: Vec<i64> = (isp.lo + 2..=isp.hi).collect();
        let act = (0..n.nvars)
            .map(|i| {
                exec::try_map(ex, &degs, |&d| {
                    let img = n.act_at(i, d)?.dot(inc.block(d));
                    inc.block(d - 2)
                        .solve(&img)
                        .ok_or_else(|| Error::MalformedMap("image not closed under the action".into()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Module::new(n.nvars, isp, act)?;
        let inc = ModMap::new(m.clone(), n, inc)?;
        Ok((m, inc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kc() -> Module {
        // k[c]: degrees 0, −2, … with c the identity on the basis cᵏ
        let s = GradedSpace::new(-1, 0, vec![0, 1], Tail::Periodic, Tail::Zero).unwrap();
        Module::new(1, s, vec![vec![]]).unwrap()
    }

    fn kc_dual() -> Module {
        let s = GradedSpace::new(0, 1, vec![1, 0], Tail::Zero, Tail::Periodic).unwrap();
        Module::new(1, s, vec![vec![]]).unwrap()
    }

    #[test]
    fn tail_actions() {
        let m = kc();
        assert_eq!(m.act_at(0, 0).unwrap(), Matrix::identity(1));
        assert_eq!(m.act_at(0, -40).unwrap(), Matrix::identity(1));
        assert_eq!(m.act_at(0, 2).unwrap().shape(), (1, 0));
        let d = kc_dual();
        assert_eq!(d.act_at(0, 0).unwrap().shape(), (0, 1));
        assert_eq!(d.act_at(0, 2).unwrap(), Matrix::identity(1));
        assert_eq!(d.power(0, 3, 100).unwrap(), Matrix::identity(1));
        assert_eq!(d.power(0, 3, 4).unwrap().shape(), (0, 1));
        assert_eq!(m.power(0, 7, 0).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn dual_swaps_tails() {
        let d = kc().matlis_dual().unwrap();
        assert_eq!(d.space.above, Tail::Periodic);
        assert_eq!(d.space.below, Tail::Zero);
        for deg in -4..8 {
            assert_eq!(d.dim(deg).unwrap(), kc_dual().dim(deg).unwrap());
        }
        assert_eq!(d.matlis_dual().unwrap(), kc());
    }

    #[test]
    fn torsion_part_of_free_is_zero() {
        let (t, _) = kc().gamma_torsion(Exec::Sequential).unwrap();
        assert!(t.is_zero());
        let (t, _) = kc_dual().gamma_torsion(Exec::Sequential).unwrap();
        assert_eq!(t.space, kc_dual().space);
    }

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        let ex = Exec::Sequential;
        let (k, _) = kc_dual().mult_map(0).unwrap().kernel(ex).unwrap();
        assert_eq!((k.dim(0).unwrap(), k.dim(2).unwrap(), k.dim(-2).unwrap()), (1, 0, 0));
        let (c, _, _) = kc().mult_map(0).unwrap().cokernel(ex).unwrap();
        assert_eq!((c.dim(2).unwrap(), c.dim(0).unwrap(), c.dim(-20).unwrap()), (1, 0, 0));
        let (k, _) = kc().identity().kernel(ex).unwrap();
        assert!(k.is_zero());
        let z = ModMap::zero(&kc(), &kc()).unwrap();
        let (k, inc) = z.kernel(ex).unwrap();
        assert_eq!(k.dim(-30).unwrap(), 1);
        assert!(inc.is_injective().unwrap());
    }

    #[test]
    fn non_linear_map_rejected() {
        // identity in degree 0 only, zero in degree −2: not k[c]-linear
        let m = kc().extend(-3, 0).unwrap();
        let r = ModMap::from_fn(&m, &m, |d| {
            Ok(if d == 0 { Matrix::identity(1) } else { Matrix::zeros(m.dim(d)?, m.dim(d)?) })
        });
        assert!(matches!(r, Err(Error::MalformedMap(_))));
    }
}
