//! Local cohomology by the stable Koszul complex.
//!
//! `H^i_𝔪(M)` for `𝔪 = (x_{j_1}, …, x_{j_s})` is the colimit over `n` of the
//! cohomology of `K(x^n; M)`, whose term in cohomological degree `p` and
//! internal degree `d` is `⊕_{|σ|=p} M_{d − 2n|σ|}` (the summand of
//! `m / x_σ^n`). The transition `n → n+1` multiplies the `σ` summand by
//! `x_σ`. Generators are oriented in the order given.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gmod::{MatlisPresented, Module};
use crate::qlinalg::Matrix;
use crate::rings::{free_basis, Mono};

/// Subsets of `0..s` as bitmasks, grouped by size.
fn subsets_of_size(s: usize, p: usize) -> Vec<u32> {
    (0u32..1 << s).filter(|m| m.count_ones() as usize == p).collect()
}

fn members(mask: u32, s: usize) -> Vec<usize> {
    (0..s).filter(|&k| mask & (1 << k) != 0).collect()
}

/// One degree of the Koszul complex `K(x^n; M)`.
struct KoszulDegree {
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

fn koszul_degree(m: &Module, ideal: &[usize], n: u32, d: i64) -> Result<KoszulDegree> {
    let s = ideal.len();
    let comp = |mask: u32| d - 2 * n as i64 * mask.count_ones() as i64;
    let levels: Vec<Vec<u32>> = (0..=s).map(|p| subsets_of_size(s, p)).collect();
    let dims = levels
        .iter()
        .map(|lv| lv.iter().map(|&sg| m.dim(comp(sg))).sum::<Result<usize>>())
        .collect::<Result<Vec<_>>>()?;
    let mut diffs = Vec::with_capacity(s);
    for p in 0..s {
        let mut out = Matrix::zeros(dims[p + 1], dims[p]);
        let mut col = 0;
        for &sg in &levels[p] {
            let w = m.dim(comp(sg))?;
            let mut row = 0;
            for &tg in &levels[p + 1] {
                let h = m.dim(comp(tg))?;
                if tg & sg == sg {
                    let j = (tg ^ sg).trailing_zeros() as usize;
                    let before = (sg & ((1 << j) - 1)).count_ones();
                    let mut block = m.power(ideal[j], n as u64, comp(sg))?;
                    if before % 2 == 1 {
                        block = block.scale(&-crate::qlinalg::q(1));
                    }
                    for a in 0..h {
                        for b in 0..w {
                            out[(row + a, col + b)] = block[(a, b)].clone();
                        }
                    }
                }
                row += h;
            }
            col += w;
        }
        diffs.push(out);
    }
    Ok(KoszulDegree { dims, diffs })
}

/// The transition `K(x^n; M) → K(x^{n+1}; M)` in degree `d` and level `p`.
fn transition(m: &Module, ideal: &[usize], n: u32, d: i64, p: usize) -> Result<Matrix> {
    let s = ideal.len();
    let nv = m.nvars;
    let mut blocks = Vec::new();
    for sg in subsets_of_size(s, p) {
        let mut exps = vec![0u32; nv];
        for k in members(sg, s) {
            exps[ideal[k]] += 1;
        }
        blocks.push(m.mono_action(&exps, d - 2 * n as i64 * p as i64)?);
    }
    Ok(Matrix::block_diag(&blocks.iter().collect::<Vec<_>>()))
}

/// Representatives of a basis of `ker g / im f`, as columns.
fn cohomology_basis(f: &Matrix, g: &Matrix) -> Matrix {
    let k = g.kernel();
    let coords = k.solve(f).expect("image lies in the kernel");
    let (_, s) = coords.image().quotient();
    k.dot(&s)
}

fn incoming(k: &KoszulDegree, p: usize) -> Matrix {
    if p == 0 {
        Matrix::zeros(k.dims[0], 0)
    } else {
        k.diffs[p - 1].clone()
    }
}

fn outgoing(k: &KoszulDegree, p: usize) -> Matrix {
    k.diffs.get(p).cloned().unwrap_or_else(|| Matrix::zeros(0, k.dims[p]))
}

/// `H^p` of the Koszul complex at two consecutive `n`, and whether the
/// transition between them is an isomorphism.
fn step(m: &Module, ideal: &[usize], n: u32, d: i64, p: usize, a: &KoszulDegree, b: &KoszulDegree) -> Result<(usize, bool)> {
    let ha = cohomology_basis(&incoming(a, p), &outgoing(a, p));
    let bnd = incoming(b, p);
    let t = transition(m, ideal, n, d, p)?.dot(&ha);
    let hb = cohomology_basis(&bnd, &outgoing(b, p)).cols();
    let rank = Matrix::hstack(&[&bnd, &t])?.rank() - bnd.rank();
    Ok((ha.cols(), ha.cols() == hb && rank == hb))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCohomology {
    pub ideal: Vec<usize>,
    pub degrees: Vec<i64>,
    /// Largest power used.
    pub horizon: u32,
    /// `dims[i][k]`: `dim H^i` in `degrees[k]`, read off at the horizon.
    pub dims: Vec<Vec<usize>>,
    /// The last two transitions are isomorphisms.
    pub stabilized: Vec<Vec<bool>>,
}

impl LocalCohomology {
    pub fn dim(&self, i: usize, d: i64) -> Option<usize> {
        let k = self.degrees.iter().position(|&e| e == d)?;
        self.dims.get(i).map(|v| v[k])
    }

    pub fn all_stabilized(&self) -> bool {
        self.stabilized.iter().flatten().all(|&b| b)
    }
}

/// Lowest degree of `M` the computation reads.
pub fn lcoh_floor(degrees: &[i64], ideal_len: usize, horizon: u32) -> i64 {
    degrees.iter().copied().min().unwrap_or(0) - 2 * horizon as i64 * ideal_len as i64
}

/// `H^*_𝔪(M)` on the given degrees, with `𝔪` generated by the listed
/// variables. `M` must be known down to [`lcoh_floor`].
pub fn stable_koszul_lcoh(m: &Module, ideal: &[usize], degrees: &[i64], horizon: u32, ex: Exec) -> Result<LocalCohomology> {
    if ideal.iter().any(|&j| j >= m.nvars) {
        return Err(Error::Invalid("ideal generator outside the ring".into()));
    }
    if horizon < 3 {
        return Err(Error::Invalid("local cohomology horizon must be at least 3".into()));
    }
    let s = ideal.len();
    let per = exec::try_map(ex, degrees, |&d| -> Result<Vec<(usize, bool)>> {
        let ks = (horizon - 2..=horizon)
            .map(|n| koszul_degree(m, ideal, n, d))
            .collect::<Result<Vec<_>>>()?;
        (0..=s)
            .map(|p| {
                let (_, s0) = step(m, ideal, horizon - 2, d, p, &ks[0], &ks[1])?;
                let (_, s1) = step(m, ideal, horizon - 1, d, p, &ks[1], &ks[2])?;
                let h = cohomology_basis(&incoming(&ks[2], p), &outgoing(&ks[2], p)).cols();
                Ok((h, s0 && s1))
            })
            .collect()
    })?;
    let dims = (0..=s).map(|p| per.iter().map(|v| v[p].0).collect()).collect();
    let stabilized = (0..=s).map(|p| per.iter().map(|v| v[p].1).collect()).collect();
    Ok(LocalCohomology { ideal: ideal.to_vec(), degrees: degrees.to_vec(), horizon, dims, stabilized })
}

/// The polynomial ring in `n` variables, known on `[lo, 0]` and below.
pub fn polynomial_ring(n: usize, lo: i64) -> Result<Module> {
    MatlisPresented::injective(n, &[0]).n_module(lo.min(-1), 0)
}

/// `H^*_𝔪(P)` for the maximal ideal of `P = ℚ[x_1..x_n]`, with a monomial
/// basis of the top group: exponent vectors, all entries negative.
pub fn lcoh_polynomial(n: usize, degrees: &[i64], horizon: u32, ex: Exec) -> Result<(LocalCohomology, Vec<Vec<Vec<i64>>>)> {
    let ideal: Vec<usize> = (0..n).collect();
    let p = polynomial_ring(n, lcoh_floor(degrees, n, horizon))?;
    let lc = stable_koszul_lcoh(&p, &ideal, degrees, horizon, ex)?;
    // top cohomology at the horizon is P/(x^N) · x^{−N}; its standard
    // monomials give the basis
    let big = horizon as i64;
    let bases = degrees
        .iter()
        .map(|&d| {
            let e = d - 2 * big * n as i64;
            let k = koszul_degree(&p, &ideal, horizon, d)?;
            let h = cohomology_basis(&incoming(&k, n), &outgoing(&k, n));
            let monos: Vec<Mono> = free_basis(n, &[0], e).into_iter().map(|(_, m)| m).collect();
            let mut out = Vec::new();
            for c in 0..h.cols() {
                let col = h.col(c);
                let nz: Vec<usize> = (0..col.len()).filter(|&i| col[i] != crate::qlinalg::q(0)).collect();
                if nz.len() != 1 {
                    return Err(Error::Invalid("top cohomology basis is not monomial".into()));
                }
                out.push(monos[nz[0]].0.iter().map(|&a| a as i64 - big).collect());
            }
            out.sort();
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((lc, bases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::Atom;

    const EX: Exec = Exec::Sequential;

    #[test]
    fn one_variable_is_shifted_dual() {
        let degs: Vec<i64> = (-8..=12).collect();
        let (lc, basis) = lcoh_polynomial(1, &degs, 8, EX).unwrap();
        assert!(lc.all_stabilized());
        let dual = Atom::Susp(2, Box::new(Atom::Dual(1))).realize(None).unwrap();
        for (k, &d) in degs.iter().enumerate() {
            assert_eq!(lc.dims[0][k], 0);
            assert_eq!(lc.dims[1][k], dual.dim(d).unwrap(), "degree {d}");
        }
        let at2 = degs.iter().position(|&d| d == 2).unwrap();
        assert_eq!(basis[at2], vec![vec![-1]]);
    }

    #[test]
    fn two_variables_top_class() {
        let degs: Vec<i64> = (-4..=10).collect();
        let (lc, basis) = lcoh_polynomial(2, &degs, 7, EX).unwrap();
        assert!(lc.all_stabilized());
        for (k, &d) in degs.iter().enumerate() {
            assert_eq!((lc.dims[0][k], lc.dims[1][k]), (0, 0));
            let want = if d >= 4 && d % 2 == 0 { (d / 2 - 1) as usize } else { 0 };
            assert_eq!(lc.dims[2][k], want, "degree {d}");
        }
        let at4 = degs.iter().position(|&d| d == 4).unwrap();
        assert_eq!(basis[at4], vec![vec![-1, -1]]);
    }

    #[test]
    fn torsion_module_is_its_own_h0() {
        let m = Atom::KoszulQuot(2, 2).realize(None).unwrap();
        let degs: Vec<i64> = (-6..=2).collect();
        let lc = stable_koszul_lcoh(&m, &[0, 1], &degs, 4, EX).unwrap();
        for (k, &d) in degs.iter().enumerate() {
            assert_eq!(lc.dims[0][k], m.dim(d).unwrap());
            assert_eq!((lc.dims[1][k], lc.dims[2][k]), (0, 0));
        }
    }

    #[test]
    fn partial_ideal_is_not_degreewise_finite() {
        // H^1_{(x)}(k[x,y]) has x^{-i}y^j for every j in each even degree
        let degs = [2i64];
        let at = |h: u32| {
            let p = polynomial_ring(2, lcoh_floor(&degs, 1, h)).unwrap();
            stable_koszul_lcoh(&p, &[0], &degs, h, EX).unwrap()
        };
        let (a, b) = (at(5), at(8));
        assert!(!a.stabilized[1][0] && !b.stabilized[1][0]);
        assert!(a.dims[1][0] < b.dims[1][0]);
        assert!(a.stabilized[0][0] && a.dims[0][0] == 0);
    }
}
