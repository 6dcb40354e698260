//! Artinian modules as graded duals `M = N^∨` of finitely presented
//! modules `N = coker(F₁ → F₀)`.
//!
//! Injective hulls, cosyzygies and injective dimension of `M` are read off
//! a minimal free resolution of `N`: the dual of `… → F₁ → F₀ → N` is an
//! injective resolution `M → F₀^∨ → F₁^∨ → …` by sums of shifted `P^∨`,
//! with `P(g)^∨ = Σ^{−g}P^∨`.

use super::module::{ModMap, Module};
use crate::error::{Error, Result};
use crate::qlinalg::{GradedSpace, Matrix, Tail, Q};
use crate::rings::{free_basis, minimal_generators, minimal_resolution, FreeResolution, Mono, Poly, PolyMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatlisPresented {
    /// The presentation of the dual `N`.
    pub pres: PolyMatrix,
}

impl MatlisPresented {
    pub fn new(pres: PolyMatrix) -> Self {
        MatlisPresented { pres }
    }

    pub fn nvars(&self) -> usize {
        self.pres.n
    }

    /// `⊕ Σ^{a} P^∨` over `n` variables.
    pub fn injective(n: usize, shifts: &[i64]) -> Self {
        let gens: Vec<i64> = shifts.iter().map(|a| -a).collect();
        let rows = vec![vec![]; gens.len()];
        MatlisPresented { pres: PolyMatrix { n, tgt_deg: gens, src_deg: vec![], entries: rows } }
    }

    pub fn zero(n: usize) -> Self {
        MatlisPresented::injective(n, &[])
    }

    /// The Matlis dual of a finite-length module, as a presented module.
    pub fn from_module(m: &Module) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::Unsupported("presenting a module that is not of finite length".into()));
        }
        let n = m.nvars;
        let dual = m.matlis_dual()?;
        // generators: complements of x_i·N_{e+2} in N_e, top degree first
        let mut gens: Vec<(i64, Vec<Q>)> = Vec::new();
        for e in (dual.lo()..=dual.hi()).rev() {
            let dim = dual.dim(e)?;
            if dim == 0 {
                continue;
            }
            let mut cols: Vec<Matrix> = (0..n).map(|i| dual.act_at(i, e + 2)).collect::<Result<_>>()?;
            cols.retain(|c| c.cols() > 0);
            let dec = if cols.is_empty() {
                Matrix::zeros(dim, 0)
            } else {
                Matrix::hstack(&cols.iter().collect::<Vec<_>>())?
            };
            let span = dec.image();
            let (_, s) = span.quotient();
            for v in s.col_vectors() {
                gens.push((e, v));
            }
        }
        let gdeg: Vec<i64> = gens.iter().map(|g| g.0).collect();
        // relations: kernel of F₀ → N in degrees lo − 2 ..= hi
        let mut rels: Vec<(Vec<Poly>, i64)> = Vec::new();
        for e in (dual.lo() - 2..=dual.hi()).rev() {
            let basis = free_basis(n, &gdeg, e);
            if basis.is_empty() {
                continue;
            }
            let dim = dual.dim(e)?;
            let mut ev = Matrix::zeros(dim, basis.len());
            for (col, (j, mono)) in basis.iter().enumerate() {
                if dim == 0 {
                    break;
                }
                let (g, v) = &gens[*j];
                let a = dual.mono_action(&mono.0, *g)?;
                let img = a.dot(&Matrix::from_cols(v.len(), std::slice::from_ref(v)));
                for r in 0..dim {
                    ev[(r, col)] = img[(r, 0)].clone();
                }
            }
            for k in ev.kernel().col_vectors() {
                rels.push((crate::rings::column_from_coords(n, &gdeg, e, &k), e));
            }
        }
        let min = minimal_generators(n, &gdeg, &rels);
        let src: Vec<i64> = min.iter().map(|(_, e)| *e).collect();
        let entries = (0..gdeg.len()).map(|i| min.iter().map(|(c, _)| c[i].clone()).collect()).collect();
        Ok(MatlisPresented { pres: PolyMatrix::new(n, gdeg, src, entries)? })
    }

    pub fn resolution(&self) -> Result<FreeResolution> {
        minimal_resolution(&self.pres)
    }

    /// Injective dimension of `M`, equal to the projective dimension of
    /// `N`; `None` for the zero module.
    pub fn injective_dim(&self) -> Result<Option<usize>> {
        Ok(self.resolution()?.pd())
    }

    /// Shifts `a` of the injective hull `⊕ Σ^a P^∨`.
    pub fn hull_shifts(&self) -> Result<Vec<i64>> {
        let r = self.resolution()?;
        Ok(r.gens[0].iter().map(|g| -g).collect())
    }

    /// The `j`-th cosyzygy: the cokernel of the `(j−1)`-st map of the
    /// dual injective resolution (`j = 0` is `M` itself, minimally presented).
    pub fn cosyzygy(&self, j: usize) -> Result<MatlisPresented> {
        let r = self.resolution()?;
        if j < r.maps.len() {
            Ok(MatlisPresented { pres: r.maps[j].clone() })
        } else if j < r.gens.len() {
            let shifts: Vec<i64> = r.gens[j].iter().map(|g| -g).collect();
            Ok(MatlisPresented::injective(r.n, &shifts))
        } else {
            Ok(MatlisPresented::zero(r.n))
        }
    }

    /// True when `M` has finite length, read off the Hilbert series of `N`:
    /// its numerator must be divisible by `(1 − t^{−2})^n`.
    pub fn is_finite_length(&self) -> Result<bool> {
        let r = self.resolution()?;
        let n = r.n;
        for parity in 0..2 {
            // numerator restricted to one parity, as a polynomial in s = t^{-2}
            let mut terms: Vec<(i64, i64)> = Vec::new();
            for (i, g) in r.gens.iter().enumerate() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for &d in g.iter().filter(|d| d.rem_euclid(2) == parity) {
                    terms.push((-d.div_euclid(2), sign));
                }
            }
            for j in 0..n as u32 {
                let s: i128 = terms.iter().map(|&(e, c)| c as i128 * (e as i128).pow(j)).sum();
                if s != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `N` realized on `[lo, hi]`: exact above (where `N` vanishes past its
    /// top generator); below the window the tail is zero if `N` has finite
    /// length and the window reaches its bottom, unknown otherwise.
    pub fn n_module(&self, lo: i64, hi: i64) -> Result<Module> {
        let n = self.pres.n;
        let gens = &self.pres.tgt_deg;
        let top = gens.iter().copied().max().unwrap_or(lo);
        let hi = hi.max(top).max(lo + 1);
        let mut below = Tail::Unknown;
        if n == 0 || self.is_finite_length()? {
            let r = self.resolution()?;
            let bottom = r.gens.iter().flatten().copied().min().unwrap_or(0) + 2 * n as i64;
            if lo <= bottom {
                below = Tail::Zero;
            }
        }
        let degs: Vec<i64> = (lo..=hi).collect();
        let quots: Vec<(Matrix, Matrix)> = degs
            .iter()
            .map(|&e| {
                let rows = free_basis(n, gens, e).len();
                let rel = self.pres.block(e);
                let rel = if rel.rows() == rows { rel } else { Matrix::zeros(rows, 0) };
                rel.image().quotient()
            })
            .collect();
        let dims: Vec<usize> = quots.iter().map(|(p, _)| p.rows()).collect();
        let space = GradedSpace::new(lo, hi, dims, below, Tail::Zero)?;
        let shifted: Vec<i64> = gens.iter().map(|g| g - 2).collect();
        let idx = |d: i64| (d - lo) as usize;
        Module::from_fn(n, space, |i, d| {
            let mult = var_diag(n, i, gens, &shifted).block(d - 2);
            let (p, _) = &quots[idx(d - 2)];
            let (_, s) = &quots[idx(d)];
            p.dot(&mult).dot(s)
        })
    }

    /// `M = N^∨` on `[lo, hi]`.
    pub fn realize(&self, lo: i64, hi: i64) -> Result<Module> {
        self.n_module(-hi, -lo)?.matlis_dual()
    }

    /// The dual injective resolution `M → I₀ → I₁ → …` realized on
    /// `[lo, hi]`, with the coaugmentation as the first map.
    pub fn injective_resolution(&self, lo: i64, hi: i64) -> Result<RealizedResolution> {
        let r = self.resolution()?;
        let m = self.realize(lo, hi)?.extend(lo, hi)?;
        let (lo, hi) = (m.lo(), m.hi());
        let terms: Vec<Module> =
            r.gens.iter().map(|g| free_dual(r.n, g, lo, hi)).collect::<Result<_>>()?;
        // M → I₀ dual to F₀ → N
        let n_mod = self.n_module(-hi, -lo)?;
        let aug = ModMap::from_fn(&m, &terms[0], |d| {
            let rows = free_basis(r.n, &r.gens[0], -d).len();
            let rel = self.pres.block(-d);
            let rel = if rel.rows() == rows { rel } else { Matrix::zeros(rows, 0) };
            let (p, _) = rel.image().quotient();
            debug_assert_eq!(p.rows(), n_mod.dim(-d)?);
            Ok(p.transpose())
        })?;
        let maps = r
            .maps
            .iter()
            .enumerate()
            .filter(|(j, _)| j + 1 < terms.len())
            .map(|(j, d)| ModMap::from_fn(&terms[j], &terms[j + 1], |e| Ok(d.block(-e).transpose())))
            .collect::<Result<Vec<_>>>()?;
        Ok(RealizedResolution { module: m, aug, terms, maps })
    }
}

/// An injective resolution realized on a window.
#[derive(Clone, Debug)]
pub struct RealizedResolution {
    pub module: Module,
    pub aug: ModMap,
    pub terms: Vec<Module>,
    pub maps: Vec<ModMap>,
}

impl RealizedResolution {
    /// Checks `0 → M → I₀ → I₁ → ⋯ → 0` is exact in every degree of
    /// `[lo, hi]`.
    pub fn is_exact_on(&self, lo: i64, hi: i64) -> Result<bool> {
        for d in lo..=hi {
            let mut blocks = vec![self.aug.block(d)?];
            for m in &self.maps {
                blocks.push(m.block(d)?);
            }
            if !blocks[0].is_injective() {
                return Ok(false);
            }
            for w in blocks.windows(2) {
                let prod = w[1].mul(&w[0])?;
                if !prod.is_zero() || w[1].cols() - w[1].rank() != w[0].rank() {
                    return Ok(false);
                }
            }
            if let Some(last) = blocks.last() {
                if !last.is_surjective() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// `(⊕ P(g))^∨ = ⊕ Σ^{−g} P^∨` on `[lo, hi]`, unknown above unless `n = 0`.
pub fn free_dual(n: usize, gens: &[i64], lo: i64, hi: i64) -> Result<Module> {
    let hi = hi.max(lo + 1);
    let dims: Vec<usize> = (lo..=hi).map(|d| free_basis(n, gens, -d).len()).collect();
    let above = if n == 0 || gens.is_empty() { Tail::Zero } else { Tail::Unknown };
    let below = if gens.iter().all(|g| -g >= lo) { Tail::Zero } else { Tail::Unknown };
    let space = GradedSpace::new(lo, hi, dims, below, above)?;
    let shifted: Vec<i64> = gens.iter().map(|g| g - 2).collect();
    Module::from_fn(n, space, |i, d| var_diag(n, i, gens, &shifted).block(-d).transpose())
}

/// Multiplication by `x_i` as a degree-preserving map `⊕P(g−2) → ⊕P(g)`.
fn var_diag(n: usize, i: usize, gens: &[i64], shifted: &[i64]) -> PolyMatrix {
    let k = gens.len();
    let entries = (0..k)
        .map(|r| (0..k).map(|c| if r == c { Poly::var(n, i) } else { Poly::zero(n) }).collect())
        .collect();
    PolyMatrix { n, tgt_deg: gens.to_vec(), src_deg: shifted.to_vec(), entries }
}

/// The monomial `x^e` as a polynomial in `n` variables.
pub fn monomial(exps: &[u32]) -> Poly {
    Poly::monomial(Mono(exps.to_vec()), crate::qlinalg::q(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::{box_monomials, monomial_quotient, Atom};

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn residue_field_has_injective_dimension_two() {
        let k = monomial_quotient(2, &[Mono(vec![0, 0])]).unwrap();
        let m = MatlisPresented::from_module(&k).unwrap();
        assert_eq!(m.pres.tgt_deg, vec![0]);
        assert_eq!(m.injective_dim().unwrap(), Some(2));
        assert!(m.is_finite_length().unwrap());
        assert_eq!(m.hull_shifts().unwrap(), vec![0]);
        let r = m.realize(-4, 10).unwrap();
        for d in -4..=10 {
            assert_eq!(r.dim(d).unwrap(), k.dim(d).unwrap());
        }
    }

    #[test]
    fn presentation_round_trips_dimensions() {
        for n in 1..=3 {
            let q = monomial_quotient(2, &box_monomials(2, n)).unwrap();
            let m = MatlisPresented::from_module(&q).unwrap();
            let back = m.realize(-12, 12).unwrap();
            for d in -12..=12 {
                assert_eq!(back.dim(d).unwrap(), q.dim(d).unwrap(), "n={n} d={d}");
            }
            assert_eq!(m.injective_dim().unwrap(), Some(2));
        }
    }

    #[test]
    fn injective_resolution_is_exact() {
        let q = monomial_quotient(2, &box_monomials(2, 2)).unwrap();
        let m = MatlisPresented::from_module(&q).unwrap();
        let r = m.injective_resolution(-6, 14).unwrap();
        assert_eq!(r.terms.len(), 3);
        assert!(r.is_exact_on(-6, 14).unwrap());
    }

    #[test]
    fn injectives_and_partial_duals() {
        let pv = MatlisPresented::injective(2, &[0]);
        assert_eq!(pv.injective_dim().unwrap(), Some(0));
        assert!(!pv.is_finite_length().unwrap());
        assert_eq!(pv.realize(0, 8).unwrap().dim(8).unwrap(), 5);
        // (P/x)^∨ = k[y]^∨ has injective dimension one
        let p = PolyMatrix::infer(2, vec![0], vec![vec![x()]]).unwrap();
        let m = MatlisPresented::new(p);
        assert_eq!(m.injective_dim().unwrap(), Some(1));
        assert!(!m.is_finite_length().unwrap());
        let r = m.injective_resolution(0, 12).unwrap();
        assert!(r.is_exact_on(0, 12).unwrap());
        assert_eq!(m.cosyzygy(1).unwrap().injective_dim().unwrap(), Some(0));
        assert_eq!(m.cosyzygy(2).unwrap().injective_dim().unwrap(), None);
    }

    #[test]
    fn dual_agrees_with_atom() {
        let pv = MatlisPresented::injective(2, &[0]).realize(0, 10).unwrap();
        let a = Atom::Dual(2).realize(Some((0, 10))).unwrap();
        for d in 0..=10 {
            assert_eq!(pv.dim(d).unwrap(), a.dim(d).unwrap());
        }
        let m = MatlisPresented::new(PolyMatrix::infer(2, vec![0], vec![vec![x().pow(2), x().mul(&y()), y().pow(2)]]).unwrap());
        assert!(m.is_finite_length().unwrap());
        assert_eq!(m.realize(-2, 6).unwrap().space.total_dim(), Some(3));
    }
}
