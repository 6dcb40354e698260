//! Symbolic building blocks for torsion modules and their realizations.

use std::collections::HashMap;
use std::fmt;

use super::module::Module;
use crate::error::{Error, Result};
use crate::qlinalg::{GradedSpace, Matrix, Tail};
use crate::rings::Mono;

/// Window used for atoms whose upper tail cannot be made periodic
/// (duals over two variables), when no window is requested.
pub const DEFAULT_TOP: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// Σ^a k[c].
    Free(i64),
    /// Σ^a k[c]/cⁿ.
    Cyclic(i64, u32),
    /// The graded dual P^∨ of the polynomial ring in `s` variables.
    Dual(usize),
    /// t = k[c, c⁻¹].
    Tate,
    /// P/(x₁ⁿ, …, x_sⁿ).
    KoszulQuot(usize, u32),
    /// Top local cohomology H^s_𝔪(P) = Σ^{2s} P^∨.
    LocCohTop(usize),
    Susp(i64, Box<Atom>),
    Sum(Vec<Atom>),
    /// ⊕_{s=1..N} Σ^{2s} k[c]/c^s.
    Trunc(u32),
}

impl Atom {
    pub fn nvars(&self) -> Result<usize> {
        Ok(match self {
            Atom::Free(_) | Atom::Cyclic(..) | Atom::Tate | Atom::Trunc(_) => 1,
            Atom::Dual(s) | Atom::KoszulQuot(s, _) | Atom::LocCohTop(s) => *s,
            Atom::Susp(_, a) => a.nvars()?,
            Atom::Sum(parts) => {
                let Some(first) = parts.first() else { return Ok(1) };
                let n = first.nvars()?;
                for p in parts {
                    if p.nvars()? != n {
                        return Err(Error::Invalid("sum of atoms over different rings".into()));
                    }
                }
                n
            }
        })
    }

    /// The module on its natural window, widened to contain `window`.
    pub fn realize(&self, window: Option<(i64, i64)>) -> Result<Module> {
        let top = window.map_or(DEFAULT_TOP, |w| w.1);
        let m = self.build(top)?;
        match window {
            Some((lo, hi)) if m.space.below != Tail::Unknown && m.space.above != Tail::Unknown => {
                m.extend(lo, hi)
            }
            _ => Ok(m),
        }
    }

    fn build(&self, top: i64) -> Result<Module> {
        match self {
            Atom::Free(a) => {
                let s = GradedSpace::new(a - 1, *a, vec![0, 1], Tail::Periodic, Tail::Zero)?;
                Module::new(1, s, vec![vec![]])
            }
            Atom::Cyclic(a, n) => {
                if *n == 0 {
                    return Err(Error::Invalid("cyclic torsion needs n ≥ 1".into()));
                }
                let std: Vec<Mono> = (0..*n).map(|k| Mono(vec![k])).collect();
                Ok(monomial_quotient(1, &std)?.shifted(*a))
            }
            Atom::Dual(0) | Atom::KoszulQuot(0, _) | Atom::LocCohTop(0) => {
                monomial_quotient(0, &[Mono(vec![])])
            }
            Atom::Dual(1) => {
                let s = GradedSpace::new(0, 1, vec![1, 0], Tail::Zero, Tail::Periodic)?;
                Module::new(1, s, vec![vec![]])
            }
            Atom::Dual(s) => truncated_dual(*s, top),
            Atom::Tate => {
                let s = GradedSpace::new(0, 1, vec![1, 0], Tail::Periodic, Tail::Periodic)?;
                Module::new(1, s, vec![vec![]])
            }
            Atom::KoszulQuot(s, n) => {
                if *n == 0 {
                    return Ok(Module::zero(*s));
                }
                let std = box_monomials(*s, *n);
                monomial_quotient(*s, &std)
            }
            Atom::LocCohTop(s) => {
                let k = 2 * *s as i64;
                Ok(Atom::Dual(*s).build(top - k)?.shifted(k))
            }
            Atom::Susp(a, x) => Ok(x.build(top - a)?.shifted(*a)),
            Atom::Sum(parts) => {
                if parts.is_empty() {
                    return Ok(Module::zero(1));
                }
                let ms = parts.iter().map(|p| p.build(top)).collect::<Result<Vec<_>>>()?;
                Module::direct_sum(&ms.iter().collect::<Vec<_>>())
            }
            Atom::Trunc(n) => {
                if *n == 0 {
                    return Ok(Module::zero(1));
                }
                let parts: Vec<Atom> = (1..=*n as i64).map(|s| Atom::Cyclic(2 * s, s as u32)).collect();
                Atom::Sum(parts).build(top)
            }
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Free(0) => f.write_str("free"),
            Atom::Free(a) => write!(f, "free({a})"),
            Atom::Cyclic(0, n) => write!(f, "cyc({n})"),
            Atom::Cyclic(a, n) => write!(f, "cyc({a},{n})"),
            Atom::Dual(1) => f.write_str("dual"),
            Atom::Dual(s) => write!(f, "dual({})", ring_name(*s)),
            Atom::Tate => f.write_str("tate"),
            Atom::KoszulQuot(s, n) => write!(f, "koszul({},{n})", ring_name(*s)),
            Atom::LocCohTop(s) => write!(f, "lcoh({})", ring_name(*s)),
            Atom::Susp(a, x) => write!(f, "susp({a},{x})"),
            Atom::Sum(parts) => {
                f.write_str("sum(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            Atom::Trunc(n) => write!(f, "trunc({n})"),
        }
    }
}

pub fn ring_name(s: usize) -> &'static str {
    match s {
        0 => "Q",
        1 => "Q[c]",
        _ => "Q[x,y]",
    }
}

/// Exponent vectors with every entry below `n`.
pub fn box_monomials(s: usize, n: u32) -> Vec<Mono> {
    let mut out = vec![Mono(vec![])];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..n).map(move |e| {
                    let mut v = m.0.clone();
                    v.push(e);
                    Mono(v)
                })
            })
            .collect();
    }
    out.sort();
    out
}

/// P/I for a monomial ideal I, given by its standard monomials (a finite
/// set closed under division). Basis in each degree: standard monomials in
/// grlex order.
pub fn monomial_quotient(s: usize, std: &[Mono]) -> Result<Module> {
    let by_deg = group_by_degree(std);
    let top = 0;
    let bottom = std.iter().map(|m| m.degree()).min().unwrap_or(0);
    let lo = bottom.min(top - 1);
    let dims: Vec<usize> = (lo..=top).map(|d| by_deg.get(&d).map_or(0, |v| v.len())).collect();
    let space = GradedSpace::new(lo, top, dims, Tail::Zero, Tail::Zero)?;
    let index = index_of(&by_deg);
    Module::from_fn(s, space.clone(), |i, d| {
        let mut m = Matrix::zeros(space.dim_in(d - 2), space.dim_in(d));
        for (col, mono) in by_deg.get(&d).into_iter().flatten().enumerate() {
            let img = mono.mul(&Mono::var(s, i));
            if let Some(&row) = index.get(&img) {
                m[(row, col)] = crate::qlinalg::q(1);
            }
        }
        m
    })
}

fn group_by_degree(monos: &[Mono]) -> HashMap<i64, Vec<Mono>> {
    let mut by_deg: HashMap<i64, Vec<Mono>> = HashMap::new();
    for m in monos {
        by_deg.entry(m.degree()).or_default().push(m.clone());
    }
    for v in by_deg.values_mut() {
        v.sort();
    }
    by_deg
}

fn index_of(by_deg: &HashMap<i64, Vec<Mono>>) -> HashMap<Mono, usize> {
    by_deg
        .values()
        .flat_map(|v| v.iter().enumerate().map(|(i, m)| (m.clone(), i)))
        .collect()
}

/// P^∨ for `s ≥ 2` variables on `[0, top]`, with an unknown upper tail.
/// Basis in degree 2k: duals of monomials of total degree k; `x_i` sends
/// `m^∨` to `(m/x_i)^∨`.
fn truncated_dual(s: usize, top: i64) -> Result<Module> {
    let top = top.max(1);
    let monos: Vec<Mono> = (0..=top / 2).flat_map(|k| Mono::of_total(s, k as u32)).collect();
    let by_deg = group_by_degree(&monos);
    let dims: Vec<usize> = (0..=top).map(|d| by_deg.get(&-d).map_or(0, |v| v.len())).collect();
    let space = GradedSpace::new(0, top, dims, Tail::Zero, Tail::Unknown)?;
    let index = index_of(&by_deg);
    Module::from_fn(s, space.clone(), |i, d| {
        let mut m = Matrix::zeros(space.dim_in(d - 2), space.dim_in(d));
        for (col, mono) in by_deg.get(&-d).into_iter().flatten().enumerate() {
            if let Some(q) = mono.div(&Mono::var(s, i)) {
                m[(index[&q], col)] = crate::qlinalg::q(1);
            }
        }
        m
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tate_is_bijective() {
        let t = Atom::Tate.realize(Some((-4, 4))).unwrap();
        for d in -4..=4 {
            assert_eq!(t.dim(d).unwrap(), usize::from(d % 2 == 0));
            if d % 2 == 0 {
                assert!(t.act_at(0, d).unwrap().is_invertible());
            }
        }
    }

    #[test]
    fn cyclic_torsion() {
        let m = Atom::Cyclic(0, 2).realize(None).unwrap();
        assert_eq!((m.dim(0).unwrap(), m.dim(-2).unwrap(), m.dim(-4).unwrap(), m.dim(2).unwrap()), (1, 1, 0, 0));
        assert!(m.act_at(0, 0).unwrap().is_invertible());
        assert!(m.act_at(0, -2).unwrap().shape().0 == 0);
    }

    #[test]
    fn dual_of_kc() {
        // dualizing k[c] degreewise: degrees 0, 2, 4, … with c onto and a
        // one-dimensional kernel in degree 0
        let oracle = Atom::Free(0).realize(None).unwrap().matlis_dual().unwrap();
        let d = Atom::Dual(1).realize(Some((-6, 12))).unwrap();
        for k in -6..=12 {
            assert_eq!(d.dim(k).unwrap(), oracle.dim(k).unwrap());
            assert_eq!(d.act_at(0, k).unwrap(), oracle.act_at(0, k).unwrap());
        }
        assert_eq!(d.act_at(0, 0).unwrap().shape(), (0, 1));
    }

    #[test]
    fn koszul_quotient_dims() {
        let m = Atom::KoszulQuot(2, 2).realize(None).unwrap();
        assert_eq!(m.space.total_dim(), Some(4));
        assert_eq!(m.dim(-2).unwrap(), 2);
        let x = m.act_at(0, 0).unwrap();
        let y = m.act_at(1, 0).unwrap();
        assert_ne!(x, y);
        // x·y·1 = xy is the socle
        assert_eq!(m.mono_action(&[1, 1], 0).unwrap().rank(), 1);
        assert!(m.mono_action(&[2, 0], 0).unwrap().is_zero());
    }

    #[test]
    fn sums_add_dims() {
        let a = Atom::Sum(vec![Atom::Cyclic(2, 3), Atom::Dual(1), Atom::Susp(-3, Box::new(Atom::Free(0)))]);
        let m = a.realize(Some((-10, 10))).unwrap();
        for d in -10..=10 {
            let want = [Atom::Cyclic(2, 3), Atom::Dual(1), Atom::Free(-3)]
                .iter()
                .map(|x| x.realize(None).unwrap().dim(d).unwrap())
                .sum::<usize>();
            assert_eq!(m.dim(d).unwrap(), want);
        }
    }

    #[test]
    fn two_variable_dual_counts() {
        let d = Atom::Dual(2).realize(Some((0, 10))).unwrap();
        assert_eq!(d.dim(8).unwrap(), 5);
        assert!(matches!(d.dim(12), Err(Error::Poisoned { .. })));
        let l = Atom::LocCohTop(2).realize(Some((0, 10))).unwrap();
        assert_eq!(l.dim(4).unwrap(), 1);
        assert_eq!(l.dim(10).unwrap(), 4);
    }

    #[test]
    fn display_is_compact() {
        let a = Atom::Sum(vec![Atom::Susp(2, Box::new(Atom::Cyclic(0, 3))), Atom::Dual(1)]);
        assert_eq!(a.to_string(), "sum(susp(2,cyc(3)),dual)");
    }
}
