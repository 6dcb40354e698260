//! Injective resolutions over k[c] and `Ext_{k[c]}(t, T)`.
//!
//! Over k[c] every torsion module has injective dimension at most one and
//! the injective hull is read off the socle: one copy of `Σ^d k[c]^∨` for
//! each socle element in degree `d`.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{Atom, LimReport, ModMap, Module, Tower};
use crate::qlinalg::{Matrix, Tail};
use crate::rings::Poly;

use super::complex::{probe_degrees, ChainComplex};

/// `0 → T → I → J → 0` with `I`, `J` sums of shifted `k[c]^∨`.
#[derive(Clone, Debug)]
pub struct KcResolution {
    pub t: Module,
    /// Shifts of the summands of `I` and `J`, in summand order.
    pub i_shifts: Vec<i64>,
    pub j_shifts: Vec<i64>,
    pub i: Module,
    pub j: Module,
    pub f: ModMap,
    pub g: ModMap,
}

/// Socle degrees with multiplicity and, per socle degree, a retraction
/// `T_d → soc_d`.
fn socle(t: &Module) -> Result<(Vec<i64>, Vec<(i64, Matrix)>)> {
    let mut shifts = Vec::new();
    let mut retr = Vec::new();
    for d in t.lo()..=t.hi() {
        let n = t.dim(d)?;
        if n == 0 {
            continue;
        }
        let k = t.act_at(0, d)?.kernel();
        if k.cols() == 0 {
            continue;
        }
        // extend the socle basis to a basis of T_d and keep its first coordinates
        let (_, comp) = k.quotient();
        let full = Matrix::hstack(&[&k, &comp])?;
        let inv = full.inverse().expect("basis extension is invertible");
        let rows: Vec<usize> = (0..k.cols()).collect();
        shifts.extend(std::iter::repeat_n(d, k.cols()));
        retr.push((d, inv.select_rows(&rows)));
    }
    Ok((shifts, retr))
}

/// `⊕ Σ^{d_i} k[c]^∨`.
pub fn dual_sum(shifts: &[i64]) -> Result<Module> {
    if shifts.is_empty() {
        return Ok(Module::zero(1));
    }
    let parts: Vec<Atom> = shifts.iter().map(|&d| Atom::Susp(d, Box::new(Atom::Dual(1)))).collect();
    Atom::Sum(parts).realize(None)
}

/// The socle embedding `T → ⊕ Σ^{d_i} k[c]^∨`.
fn hull(t: &Module) -> Result<(Vec<i64>, Module, ModMap)> {
    if t.nvars != 1 {
        return Err(Error::Unsupported("injective hulls are computed over k[c]".into()));
    }
    match t.space.below {
        Tail::Periodic => return Err(Error::TorsionRequired("the module has a periodic lower tail".into())),
        Tail::Unknown => return Err(Error::Poisoned { op: "inj_res_kc", degree: t.lo() - 1 }),
        Tail::Zero => {}
    }
    if t.space.above == Tail::Unknown {
        return Err(Error::Poisoned { op: "inj_res_kc", degree: t.hi() + 1 });
    }
    let (shifts, retr) = socle(t)?;
    let i = dual_sum(&shifts)?;
    // summand index → (socle degree, row of the retraction)
    let mut owner = Vec::new();
    for (d, r) in &retr {
        for k in 0..r.rows() {
            owner.push((*d, k));
        }
    }
    let f = ModMap::from_fn(t, &i, |e| {
        let cols = t.dim(e)?;
        let rows: Vec<Vec<crate::qlinalg::Q>> = owner
            .iter()
            .filter(|(d, _)| e >= *d && (e - d) % 2 == 0)
            .map(|(d, k)| -> Result<Vec<_>> {
                let lam = &retr.iter().find(|(dd, _)| dd == d).expect("socle degree").1;
                let p = t.power(0, ((e - d) / 2) as u64, e)?;
                Ok(lam.select_rows(&[*k]).dot(&p).row(0))
            })
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Ok(Matrix::zeros(0, cols));
        }
        Ok(Matrix::from_rows(rows))
    })?;
    Ok((shifts, i, f))
}

/// The socle-driven minimal injective resolution of a torsion k[c]-module.
pub fn inj_res_kc(t: &Module, ex: Exec) -> Result<KcResolution> {
    let (i_shifts, i, f) = hull(t)?;
    let (c, proj, _) = f.cokernel(ex)?;
    let (j_shifts, j, psi) = hull(&c)?;
    if !psi.is_iso()? {
        return Err(Error::MalformedMap("cokernel of the hull is not injective".into()));
    }
    let g = psi.compose(&proj)?;
    Ok(KcResolution { t: t.clone(), i_shifts, j_shifts, i, j, f, g })
}

impl KcResolution {
    /// Injective dimension: 0 when `J` vanishes.
    pub fn length(&self) -> usize {
        usize::from(!self.j_shifts.is_empty())
    }

    /// `0 → T → I → J → 0` is exact in every degree (tails included).
    pub fn is_exact(&self, ex: Exec) -> Result<bool> {
        let z = Module::zero(1);
        let (_, f) = (self.f.src.clone(), self.f.clone());
        let inc = ModMap::zero(&z, &self.t)?;
        let out = ModMap::zero(&self.j, &z)?;
        let cx = ChainComplex::new(
            vec![z.clone(), self.t.clone(), self.i.clone(), self.j.clone(), z],
            vec![inc, f, self.g.clone(), out],
        )?;
        cx.is_acyclic(ex)
    }
}

/// `Hom(t, T)` and `Ext¹(t, T)` in a range of degrees, computed twice.
#[derive(Clone, Debug)]
pub struct ExtTate {
    pub degrees: Vec<i64>,
    /// From `0 → T^t → I^t → J^t → Ext → 0`; `None` when the resolution
    /// does not apply.
    pub hom_res: Option<Vec<usize>>,
    pub ext_res: Option<Vec<usize>>,
    /// lim and lim¹ of `T_d ← T_{d+2} ← ⋯` under `c`.
    pub towers: Vec<LimReport>,
}

impl ExtTate {
    /// Both pipelines agree in every degree where the tower stabilized.
    pub fn agree(&self) -> bool {
        let (Some(h), Some(e)) = (&self.hom_res, &self.ext_res) else { return true };
        self.towers.iter().enumerate().all(|(k, r)| {
            !r.stabilized || (r.lim == Some(h[k]) && r.lim1 == Some(e[k]))
        })
    }

    /// Degrees whose tower did not stabilize within the horizon.
    pub fn unsettled(&self) -> Vec<i64> {
        self.towers.iter().filter(|r| !r.stabilized).map(|r| r.degree).collect()
    }
}

/// `Ext^*_{k[c]}(t, T)` by the resolution sequence and by the lim/lim¹ tower.
pub fn ext_tate(t: &Module, degrees: &[i64], horizon: usize, ex: Exec) -> Result<ExtTate> {
    let (hom_res, ext_res) = match inj_res_kc(t, ex) {
        Ok(r) => {
            let it = r.g.tate()?;
            let (k, _) = it.kernel(ex)?;
            let (e, _, _) = it.cokernel(ex)?;
            let h = degrees.iter().map(|&d| k.dim(d)).collect::<Result<Vec<_>>>()?;
            let x = degrees.iter().map(|&d| e.dim(d)).collect::<Result<Vec<_>>>()?;
            (Some(h), Some(x))
        }
        Err(Error::TorsionRequired(_)) => (None, None),
        Err(e) => return Err(e),
    };
    let lo = degrees.iter().copied().min().unwrap_or(0);
    let hi = degrees.iter().copied().max().unwrap_or(0);
    let tower = Tower::of_powers(t, &Poly::var(1, 0), horizon, lo, hi)?;
    let towers = tower.lim_lim1(degrees, ex)?;
    Ok(ExtTate { degrees: degrees.to_vec(), hom_res, ext_res, towers })
}

/// Degrees deciding exactness of a map between k[c]-modules.
pub fn decisive_degrees(ms: &[&Module]) -> Vec<i64> {
    probe_degrees(ms).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: Atom) -> Module {
        a.realize(None).unwrap()
    }

    const EX: Exec = Exec::Sequential;

    #[test]
    fn cyclic_resolution_shifts() {
        for (a, n) in [(0, 1), (3, 2), (-4, 3), (6, 5)] {
            let res = inj_res_kc(&r(Atom::Cyclic(a, n)), EX).unwrap();
            assert_eq!(res.i_shifts, vec![a - 2 * (n as i64 - 1)]);
            assert_eq!(res.j_shifts, vec![a + 2]);
            assert!(res.is_exact(EX).unwrap());
        }
    }

    #[test]
    fn dual_is_already_injective() {
        let res = inj_res_kc(&r(Atom::Dual(1)), EX).unwrap();
        assert_eq!(res.i_shifts, vec![0]);
        assert!(res.j_shifts.is_empty());
        assert!(res.f.is_iso().unwrap());
        assert!(res.is_exact(EX).unwrap());
    }

    #[test]
    fn mixed_sum_is_exact() {
        let t = r(Atom::Sum(vec![
            Atom::Cyclic(1, 3),
            Atom::Susp(-3, Box::new(Atom::Dual(1))),
            Atom::Cyclic(-2, 1),
            Atom::Cyclic(1, 3),
        ]));
        let res = inj_res_kc(&t, EX).unwrap();
        let mut i = res.i_shifts.clone();
        i.sort();
        assert_eq!(i, vec![-3, -3, -3, -2]);
        let mut j = res.j_shifts.clone();
        j.sort();
        assert_eq!(j, vec![0, 3, 3]);
        assert!(res.is_exact(EX).unwrap());
    }

    #[test]
    fn free_module_is_not_torsion() {
        assert!(matches!(inj_res_kc(&r(Atom::Free(0)), EX), Err(Error::TorsionRequired(_))));
        assert!(matches!(inj_res_kc(&r(Atom::Tate), EX), Err(Error::TorsionRequired(_))));
    }

    #[test]
    fn ext_of_tate_into_dual_and_finite() {
        let degs: Vec<i64> = (-6..=6).collect();
        let e = ext_tate(&r(Atom::Dual(1)), &degs, 12, EX).unwrap();
        let h = e.hom_res.clone().unwrap();
        for (k, d) in degs.iter().enumerate() {
            assert_eq!(h[k], usize::from(d % 2 == 0));
        }
        assert!(e.ext_res.as_ref().unwrap().iter().all(|&x| x == 0));
        assert!(e.agree());

        let f = ext_tate(&r(Atom::Cyclic(2, 3)), &degs, 12, EX).unwrap();
        assert!(f.hom_res.as_ref().unwrap().iter().all(|&x| x == 0));
        assert!(f.ext_res.as_ref().unwrap().iter().all(|&x| x == 0));
        assert!(f.unsettled().is_empty());
        assert!(f.agree());
    }

    #[test]
    fn truncated_family_failure_grows() {
        let degs: Vec<i64> = (-10..=10).collect();
        let top = |n: u32| {
            let e = ext_tate(&r(Atom::Trunc(n)), &degs, 6, EX).unwrap();
            assert!(e.agree());
            e.unsettled().into_iter().max()
        };
        let (a, b) = (top(2), top(5));
        assert!(a < b, "{a:?} vs {b:?}");
    }
}
