//! Graded Hom between windowed modules and the Tate construction
//! `T^t = Hom(t, T)`.
//!
//! A map of degree `t` is a family `f_d: M_d → N_{d+t}` with
//! `f_{d−2} x_i = x_i f_d`. Between periodic tails the actions are
//! identities, so such a family is itself periodic there and is determined
//! by its values on a padded common window. The unknowns are introduced
//! one degree at a time and each commutation equation is solved as soon as
//! both of its unknowns exist, which keeps the parameter space small.

use super::module::{ModMap, Module};
use crate::error::{Error, Result};
use crate::qlinalg::{GradedMap, GradedSpace, Matrix, Tail, Q};

/// A basis of `Hom_t(M, N)` as module maps `M → Σ^{−t} N` on a common window.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub t: i64,
    pub src: Module,
    pub tgt: Module,
    pub basis: Vec<ModMap>,
    /// `vec(f_d) = param[d − lo] · p`, for coordinates.
    param: Vec<Matrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map `M → Σ^{−t} N` in the basis.
    pub fn coords(&self, f: &ModMap) -> Result<Vec<Q>> {
        let lo = self.src.lo();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (k, e) in self.param.iter().enumerate() {
            let d = lo + k as i64;
            rows.push(e.clone());
            rhs.push(vec_of(&f.block(d)?));
        }
        let a = Matrix::vstack(&rows.iter().collect::<Vec<_>>())?;
        let b = Matrix::from_cols(a.rows(), &[rhs.concat()]);
        let x = a.solve(&b).ok_or_else(|| Error::Invalid("map is not in the Hom space".into()))?;
        Ok(x.col(0))
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

/// `A ⊗ B` (Kronecker product).
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)] == Q::from_integer(0.into()) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    m[(i * b.rows() + k, j * b.cols() + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    m
}

/// The source must be known wherever a constraint reaches it; the target
/// only matters where the source is nonzero.
fn side_ok(m: Tail, n: Tail) -> bool {
    m != Tail::Unknown && (n != Tail::Unknown || m == Tail::Zero)
}

/// Basis of `Hom_t(M, N)`: maps `M_d → N_{d+t}` raising degrees by `t`, so
/// that `Hom(k[c], T) ≅ T` as graded modules.
pub fn hom_degree(m: &Module, n: &Module, t: i64) -> Result<HomSpace> {
    if m.nvars != n.nvars {
        return Err(Error::Invalid("Hom between modules over different rings".into()));
    }
    let nt = n.shifted(-t);
    let (ms, ns) = Module::common_window(m, &nt)?;
    if !side_ok(ms.space.above, ns.space.above) {
        return Err(Error::Poisoned { op: "hom", degree: ms.hi() + 1 });
    }
    if !side_ok(ms.space.below, ns.space.below) || ns.space.below == Tail::Unknown {
        return Err(Error::Poisoned { op: "hom", degree: ms.lo() - 1 });
    }
    let pad = |a: Tail, b: Tail| if a == Tail::Periodic || b == Tail::Periodic { 2 } else { 0 };
    let lo = ms.lo() - pad(ms.space.below, ns.space.below);
    let hi = ms.hi() + pad(ms.space.above, ns.space.above);
    let ms = ms.extend(lo, hi)?;
    let ns = ns.extend(lo, hi)?;
    let per_below = ms.space.below == Tail::Periodic && ns.space.below == Tail::Periodic;
    let per_above = ms.space.above == Tail::Periodic && ns.space.above == Tail::Periodic;
    let shape = |d: i64| -> Result<(usize, usize)> { Ok((ns.dim(d)?, ms.dim(d)?)) };

    let width = (hi - lo + 1) as usize;
    let mut param: Vec<Matrix> = Vec::with_capacity(width);
    let mut p = 0usize;
    // the parametrization of f_d for any degree, folding beyond the window
    let fold = |param: &Vec<Matrix>, p: usize, d: i64| -> Result<Option<Matrix>> {
        let (r, c) = shape(d)?;
        if r * c == 0 {
            return Ok(Some(Matrix::zeros(0, p)));
        }
        if d >= lo && d <= hi {
            return Ok(param.get((d - lo) as usize).cloned());
        }
        let rep = if d > hi {
            if !per_above {
                return Ok(Some(Matrix::zeros(r * c, p)));
            }
            if (d - hi) % 2 == 0 { hi } else { hi - 1 }
        } else {
            if !per_below {
                return Ok(Some(Matrix::zeros(r * c, p)));
            }
            if (lo - d) % 2 == 0 { lo } else { lo + 1 }
        };
        Ok(param.get((rep - lo) as usize).cloned())
    };

    let apply = |param: &mut Vec<Matrix>, p: &mut usize, d: i64| -> Result<()> {
        let (Some(prev), Some(cur)) = (fold(param, *p, d - 2)?, fold(param, *p, d)?) else {
            return Ok(());
        };
        let (r2, c2) = shape(d - 2)?;
        let (r, c) = shape(d)?;
        if r2 * c == 0 {
            return Ok(());
        }
        let mut eqs = Vec::with_capacity(ms.nvars);
        for i in 0..ms.nvars {
            let mut terms = Matrix::zeros(r2 * c, *p);
            if r2 * c2 > 0 {
                let cm = ms.act_at(i, d)?;
                terms = terms.add(&kron(&cm.transpose(), &Matrix::identity(r2)).dot(&prev))?;
            }
            if r * c > 0 {
                let cn = ns.act_at(i, d)?;
                terms = terms.sub(&kron(&Matrix::identity(c), &cn).dot(&cur))?;
            }
            eqs.push(terms);
        }
        let terms = Matrix::vstack(&eqs.iter().collect::<Vec<_>>())?;
        if terms.is_zero() {
            return Ok(());
        }
        let k = terms.kernel();
        for e in param.iter_mut() {
            *e = e.dot(&k);
        }
        *p = k.cols();
        Ok(())
    };

    for d in lo..=hi {
        let (r, c) = shape(d)?;
        let fresh = r * c;
        for e in param.iter_mut() {
            *e = Matrix::hstack(&[e, &Matrix::zeros(e.rows(), fresh)])?;
        }
        let new = Matrix::hstack(&[&Matrix::zeros(fresh, p), &Matrix::identity(fresh)])?;
        param.push(new);
        p += fresh;
        apply(&mut param, &mut p, d)?;
    }
    for d in [hi + 1, hi + 2] {
        apply(&mut param, &mut p, d)?;
    }

    let mut basis = Vec::with_capacity(p);
    for j in 0..p {
        let blocks = (lo..=hi)
            .map(|d| {
                let (r, c) = shape(d)?;
                Ok(unvec(&param[(d - lo) as usize].col(j), r, c))
            })
            .collect::<Result<Vec<_>>>()?;
        let f = GradedMap::new(ms.space.clone(), ns.space.clone(), 0, blocks)?;
        basis.push(ModMap::new(ms.clone(), ns.clone(), f)?);
    }
    Ok(HomSpace { t, src: ms, tgt: ns, basis, param })
}

/// Dimensions of `Hom_t(M, N)` for `t` in a range.
pub fn hom_dims(m: &Module, n: &Module, ts: std::ops::RangeInclusive<i64>) -> Result<Vec<(i64, usize)>> {
    ts.map(|t| Ok((t, hom_degree(m, n, t)?.dim()))).collect()
}

impl Module {
    /// `T^t = Hom(t, T)`: the upper tail of `T` copied into every degree,
    /// with `c` invertible. Zero when the upper tail is zero.
    pub fn tate_dual(&self) -> Result<Module> {
        check_one_var(self)?;
        match self.space.above {
            Tail::Zero => Ok(Module::zero(1)),
            Tail::Unknown => Err(Error::Poisoned { op: "tate_dual", degree: self.hi() + 1 }),
            Tail::Periodic => {
                let hi = self.hi();
                let s = GradedSpace::new(
                    hi - 1,
                    hi,
                    vec![self.space.dim_in(hi - 1), self.space.dim_in(hi)],
                    Tail::Periodic,
                    Tail::Periodic,
                )?;
                Module::new(1, s, vec![vec![]])
            }
        }
    }

    /// Evaluation `T^t → T`: in degree `d`, `c^k` from a tail degree `d + 2k`.
    pub fn tate_ev(&self) -> Result<ModMap> {
        let tt = self.tate_dual()?;
        let hi = self.hi();
        ModMap::from_fn(&tt, self, |d| {
            if tt.dim(d)? == 0 {
                return Ok(Matrix::zeros(self.dim(d)?, 0));
            }
            let k = if d > hi { 0 } else { ((hi - d) / 2 + 1) as u64 };
            self.power(0, k, d + 2 * k as i64)
        })
    }
}

fn check_one_var(m: &Module) -> Result<()> {
    if m.nvars != 1 {
        return Err(Error::Unsupported("the Tate construction is for k[c]-modules".into()));
    }
    Ok(())
}

impl ModMap {
    /// `f^t: S^t → T^t`, the block of `f` far up in the tail.
    pub fn tate(&self) -> Result<ModMap> {
        check_one_var(&self.src)?;
        let a = self.src.tate_dual()?;
        let b = self.tgt.tate_dual()?;
        let top = self.src.hi().max(self.tgt.hi()) + 2;
        ModMap::from_fn(&a, &b, |d| {
            let (r, c) = (b.dim(d)?, a.dim(d)?);
            if r * c == 0 {
                return Ok(Matrix::zeros(r, c));
            }
            let far = if (top - d) % 2 == 0 { top } else { top + 1 };
            self.f.block_at(far)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::Atom;

    fn r(a: Atom) -> Module {
        a.realize(None).unwrap()
    }

    #[test]
    fn hom_from_free_is_the_target() {
        let t = r(Atom::Sum(vec![Atom::Cyclic(2, 3), Atom::Dual(1)]));
        for deg in -8..=8 {
            let h = hom_degree(&r(Atom::Free(0)), &t, deg).unwrap();
            // a map from k[c] is the image of 1 ∈ degree 0, landing in T_t
            assert_eq!(h.dim(), t.dim(deg).unwrap(), "t = {deg}");
        }
    }

    #[test]
    fn hom_from_tate() {
        let t = r(Atom::Tate);
        for deg in -6..=6 {
            let into_dual = hom_degree(&t, &r(Atom::Dual(1)), deg).unwrap().dim();
            assert_eq!(into_dual, usize::from(deg % 2 == 0));
            let into_cyc = hom_degree(&t, &r(Atom::Cyclic(0, 4)), deg).unwrap().dim();
            assert_eq!(into_cyc, 0);
        }
    }

    #[test]
    fn endomorphisms_of_dual_are_power_series() {
        let d = r(Atom::Dual(1));
        for deg in -8..=4 {
            let h = hom_degree(&d, &d, deg).unwrap().dim();
            assert_eq!(h, usize::from(deg <= 0 && deg % 2 == 0), "t = {deg}");
        }
    }

    #[test]
    fn tensor_hom_adjunction_on_bases() {
        // Hom(t ⊗ V, T) = Hom_k(V, T^t) for V = ℚ in degrees 0 and 3
        let v_t = r(Atom::Sum(vec![Atom::Tate, Atom::Susp(3, Box::new(Atom::Tate))]));
        for target in [Atom::Dual(1), Atom::Cyclic(1, 2), Atom::Sum(vec![Atom::Dual(1), Atom::Susp(5, Box::new(Atom::Dual(1)))])] {
            let tm = r(target);
            let tt = tm.tate_dual().unwrap();
            for deg in -5..=5 {
                let lhs = hom_degree(&v_t, &tm, deg).unwrap().dim();
                let rhs = tt.dim(deg).unwrap() + tt.dim(3 + deg).unwrap();
                assert_eq!(lhs, rhs, "t = {deg}");
            }
        }
    }

    #[test]
    fn ev_is_surjective_onto_dual() {
        let d = r(Atom::Susp(2, Box::new(Atom::Dual(1))));
        let ev = d.tate_ev().unwrap();
        assert!(ev.is_surjective().unwrap());
        let (k, _) = ev.kernel(crate::exec::Exec::Sequential).unwrap();
        // kernel of t → Σ²k[c]^∨ is Σ^0 k[c]
        assert_eq!((k.dim(0).unwrap(), k.dim(-10).unwrap(), k.dim(2).unwrap()), (1, 1, 0));
    }

    #[test]
    fn coords_recover_basis() {
        let d = r(Atom::Dual(1));
        let h = hom_degree(&d, &d, -4).unwrap();
        assert_eq!(h.coords(&h.basis[0]).unwrap(), vec![crate::qlinalg::q(1)]);
    }
}
