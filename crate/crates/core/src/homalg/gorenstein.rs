//! Gorenstein duality for localized polynomial rings, by residues.
//!
//! For a connected subgroup `K` of codimension `s` choose coordinates
//! `z_1..z_s` cutting out `K` and `w_1..w_t` on `K`, so that
//! `P = k[z] ⊗ k[w]` and `k_K = S⁻¹k[w]`. The check compares
//!
//! * `ann((z^A), H^s_{(z)}(S⁻¹P)) = (S⁻¹P/(z^A)) · (z_1⋯z_s)^{−A}`, computed in
//!   the original coordinates as a colimit over the pole order along `S`, with
//! * `Σ^{2s} Hom_{k_K}(S⁻¹P/(z^A), k_K)`, the `(z^A)`-torsion of the dual,
//!
//! through the residue pairing `⟨g, f⟩ = Res_z(g f)`, the coefficient of
//! `(z_1⋯z_s)^{−1}` after expanding denominators in powers of `z`.

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::qlinalg::{q, Matrix, Q};
use crate::rings::{free_basis, ConnSubgroup, LinearForm, Mono, MultSet, Poly, PolyMatrix};

use super::laurent::{inverse_form, Laurent};

/// Adapted coordinates for `K` in the rank `r` torus.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub rank: usize,
    pub k: ConnSubgroup,
    /// Generators of the ideal of `G/K`, as forms in the original variables.
    pub z: Vec<Poly>,
    /// Number of coordinates on `K`.
    pub t: usize,
    /// Row `i`: original variable `i` in terms of `(z…, w…)`.
    pub subst: Vec<Vec<i64>>,
    /// Row `i`: new variable `i` (`z…` then `w…`) in the original variables.
    pub forward: Vec<Vec<i64>>,
}

impl Coordinates {
    pub fn new(rank: usize, k: ConnSubgroup) -> Result<Self> {
        if !k.valid_in(rank) || rank == 0 || rank > 2 {
            return Err(Error::Lattice(format!("{k} is not a subgroup of the rank {rank} torus")));
        }
        let id: Vec<Vec<i64>> = (0..rank).map(|i| (0..rank).map(|j| i64::from(i == j)).collect()).collect();
        Ok(match k {
            ConnSubgroup::Full => Coordinates { rank, k, z: vec![], t: rank, subst: id.clone(), forward: id },
            ConnSubgroup::Trivial => {
                let z = (0..rank).map(|i| Poly::var(rank, i)).collect();
                Coordinates { rank, k, z, t: 0, subst: id.clone(), forward: id }
            }
            ConnSubgroup::Circle(p, qq) => {
                let (u, v) = k.complement().expect("circle");
                Coordinates {
                    rank,
                    k,
                    z: vec![Poly::linear(&[p, qq])],
                    t: 1,
                    subst: vec![vec![v, -qq], vec![-u, p]],
                    forward: vec![vec![p, qq], vec![u, v]],
                }
            }
        })
    }

    pub fn s(&self) -> usize {
        self.z.len()
    }

    /// `α·z + β·w` for a form in the original variables (`s = t = 1`).
    fn split_form(&self, f: &LinearForm) -> (Q, Q) {
        let (a, b) = (f.0[0], f.0[1]);
        let (sx, sy) = (&self.subst[0], &self.subst[1]);
        (q(a * sx[0] + b * sy[0]), q(a * sx[1] + b * sy[1]))
    }
}

/// `P/(z^A)` in one degree: projection, section and monomial basis of `P_e`.
struct QuotDegree {
    e: i64,
    proj: Matrix,
    section: Matrix,
    monos: Vec<Mono>,
}

fn quot_degree(pres: &PolyMatrix, n: usize, e: i64) -> QuotDegree {
    let monos: Vec<Mono> = free_basis(n, &[0], e).into_iter().map(|(_, m)| m).collect();
    let rel = pres.block(e);
    let rel = if rel.rows() == monos.len() { rel } else { Matrix::zeros(monos.len(), 0) };
    let (proj, section) = rel.image().quotient();
    QuotDegree { e, proj, section, monos }
}

/// Multiplication by `h` from `P_e` to `P_{e + deg h}` in monomial bases.
fn mult(h: &Poly, n: usize, e: i64) -> Matrix {
    let dh = h.degree().unwrap_or(0);
    let src: Vec<Mono> = free_basis(n, &[0], e).into_iter().map(|(_, m)| m).collect();
    let tgt: Vec<Mono> = free_basis(n, &[0], e + dh).into_iter().map(|(_, m)| m).collect();
    let cols: Vec<Vec<Q>> = src.iter().map(|m| h.mul_mono(m).coords(&tgt)).collect();
    Matrix::from_cols(tgt.len(), &cols)
}

/// `h` on the quotients `Q_a → Q_b`.
fn induced(h: &Poly, n: usize, a: &QuotDegree, b: &QuotDegree) -> Matrix {
    b.proj.dot(&mult(h, n, a.e)).dot(&a.section)
}

struct Setup {
    co: Coordinates,
    n: usize,
    layers: u32,
    pres: PolyMatrix,
    forms: Vec<LinearForm>,
    euler: Poly,
}

impl Setup {
    fn new(ms: &MultSet, layers: u32) -> Result<Self> {
        let co = Coordinates::new(ms.rank, ms.top)?;
        let n = ms.rank;
        let entries = vec![co.z.iter().map(|z| z.pow(layers)).collect::<Vec<_>>()];
        let pres = PolyMatrix::infer(n, vec![0], entries)?;
        let euler = ms.polys().iter().fold(Poly::one(n), |a, f| a.mul(f));
        Ok(Setup { co, n, layers, pres, forms: ms.forms.clone(), euler })
    }

    fn s(&self) -> i64 {
        self.co.s() as i64
    }

    /// Numerator degree for internal degree `d` at pole order `m`.
    fn num_degree(&self, d: i64, m: usize) -> i64 {
        d - 2 * self.s() * self.layers as i64 - 2 * m as i64 * self.forms.len() as i64
    }

    fn lhs(&self, d: i64, m: usize) -> QuotDegree {
        quot_degree(&self.pres, self.n, self.num_degree(d, m))
    }

    /// Smallest pole order from which the colimit is constant in degree `d`.
    fn pole_order(&self, d: i64, cap: usize) -> Result<usize> {
        if self.forms.is_empty() {
            return Ok(0);
        }
        let iso = |m: usize| {
            let (a, b) = (self.lhs(d, m), self.lhs(d, m + 1));
            induced(&self.euler, self.n, &a, &b).is_invertible()
        };
        // below this order degree d is out of reach and the spaces are
        // zero, so the maps between them are vacuously invertible
        let reach = d.max(0) as usize / (2 * self.forms.len());
        (reach..cap)
            .find(|&m| iso(m) && iso(m + 1))
            .ok_or_else(|| Error::EnlargeS(format!("pole order along S did not settle in degree {d} by {cap}")))
    }

    /// Residue matrix from the LHS basis at pole order `m` to the dual basis
    /// `δ_i` of `Hom_{k_K}(S⁻¹P/(z^A), k_K)` in degree `d`.
    fn residues(&self, d: i64, m: usize, lhs: &QuotDegree) -> Matrix {
        let s = self.co.s();
        let a = self.layers as i64;
        let top: Vec<(usize, i64)> = (0..s).map(|i| (i, a - 1)).collect();
        let mut inv = Laurent::one(s + self.co.t);
        for f in &self.forms {
            let (al, be) = self.co.split_form(f);
            let l = inverse_form(&al, &be, a - 1);
            for _ in 0..m {
                inv = inv.mul_capped(&l, &top);
            }
        }
        let box_: Vec<Vec<i64>> = box_exponents(s, self.layers);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for i in &box_ {
            let tot: i64 = i.iter().sum();
            let e = d - 2 * s as i64 - 2 * tot;
            let ok = match self.co.t {
                0 => e == 0,
                _ => e % 2 == 0 && (!self.forms.is_empty() || e <= 0),
            };
            if ok {
                let mut r = i.clone();
                if self.co.t == 1 {
                    r.push(-e / 2);
                }
                rows.push(r);
            }
        }
        let mut out = Matrix::zeros(rows.len(), lhs.proj.rows());
        for c in 0..lhs.section.cols() {
            let col = lhs.section.col(c);
            let mut g = Laurent::zero(s + self.co.t);
            for (k, v) in col.iter().enumerate() {
                if *v != q(0) {
                    let f = Laurent::from_poly(&Poly::monomial(lhs.monos[k].clone(), v.clone()));
                    g = g.add(&f.substitute_linear(&self.co.subst));
                }
            }
            let g = g.mul_capped(&inv, &top);
            for (r, row) in rows.iter().enumerate() {
                let zi: Vec<i64> = row[..s].to_vec();
                let mut want: Vec<i64> = zi.iter().map(|x| a - 1 - x).collect();
                want.extend_from_slice(&row[s..]);
                out[(r, c)] = g.coeff(&want);
            }
        }
        out
    }

    /// `dim ann(𝔪^j)` on one degree of the left-hand side, for `j = 0..=A`.
    fn ann_dims(&self, lhs: &QuotDegree) -> Vec<usize> {
        let s = self.co.s();
        (0..=self.layers)
            .map(|j| {
                if j == 0 {
                    return 0;
                }
                let blocks: Vec<Matrix> = Mono::of_total(s, j)
                    .iter()
                    .map(|mu| {
                        let h = (0..s).fold(Poly::one(self.n), |acc, k| acc.mul(&self.co.z[k].pow(mu.0[k])));
                        let tgt = quot_degree(&self.pres, self.n, lhs.e - 2 * j as i64);
                        induced(&h, self.n, lhs, &tgt)
                    })
                    .collect();
                let st = Matrix::vstack(&blocks.iter().collect::<Vec<_>>()).expect("same width");
                st.cols() - st.rank()
            })
            .collect()
    }
}

/// Exponent vectors in `[0, A−1]^s`.
pub fn box_exponents(s: usize, a: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..s {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..a as i64).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinDegree {
    pub degree: i64,
    pub pole_order: usize,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    /// The residue map is injective and onto in this degree.
    pub iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enlargement {
    pub form: LinearForm,
    pub same_dims: bool,
    pub iso: bool,
    /// `S⁻¹ → (S ∪ {f})⁻¹` is an isomorphism on the left-hand side.
    pub comparison_iso: bool,
}

impl Enlargement {
    pub fn stable(&self) -> bool {
        self.same_dims && self.iso && self.comparison_iso
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub rank: usize,
    pub k: ConnSubgroup,
    /// Codimension of `K`.
    pub s: usize,
    pub forms: Vec<LinearForm>,
    /// Number of 𝔪-adic layers checked.
    pub layers: u32,
    pub degrees: Vec<GorensteinDegree>,
    /// Free rank over `k_K` of layer `a`, measured on the left-hand side.
    pub layer_ranks: Vec<usize>,
    /// Number of negative monomials of total degree `−s−a`.
    pub expected_layer_ranks: Vec<usize>,
    /// Layer ranks agree in every degree of the window that carries them.
    pub layers_uniform: bool,
    pub enlargement: Option<Enlargement>,
}

impl GorensteinReport {
    pub fn certified(&self) -> bool {
        self.degrees.iter().all(|d| d.iso) && self.layer_ranks == self.expected_layer_ranks && self.layers_uniform
    }

    pub fn stable(&self) -> bool {
        self.enlargement.as_ref().is_none_or(|e| e.stable())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The first small primitive form not vanishing on `K` and not in `S`.
pub fn next_form(ms: &MultSet) -> Option<LinearForm> {
    let cands: Vec<Vec<i64>> = if ms.rank == 1 {
        vec![vec![1]]
    } else {
        let mut v = Vec::new();
        for r in 1..=4i64 {
            for a in 0..=r {
                for b in -r..=r {
                    if a.max(b.abs()) == r && num::integer::gcd(a, b) == 1 && (a > 0 || b > 0) {
                        v.push(vec![a, b]);
                    }
                }
            }
        }
        v
    };
    cands
        .into_iter()
        .filter_map(|c| LinearForm::new(&c).ok())
        .find(|f| !ms.forms.contains(f) && crate::rings::char_nontrivial_on(&f.0, ms.top))
}

struct Core {
    degrees: Vec<GorensteinDegree>,
    ann: Vec<(i64, Vec<usize>)>,
}

fn run(setup: &Setup, window: (i64, i64), cap: usize, ex: Exec) -> Result<Core> {
    let degs: Vec<i64> = (window.0..=window.1).collect();
    let per = exec::try_map(ex, &degs, |&d| -> Result<(GorensteinDegree, Vec<usize>)> {
        let m = setup.pole_order(d, cap)?;
        let lhs = setup.lhs(d, m);
        let res = setup.residues(d, m, &lhs);
        let (r, c) = res.shape();
        let ann = setup.ann_dims(&lhs);
        Ok((GorensteinDegree { degree: d, pole_order: m, lhs_dim: c, rhs_dim: r, iso: r == c && res.is_invertible() }, ann))
    })?;
    let (degrees, ann): (Vec<_>, Vec<_>) = per.into_iter().map(|(g, a)| (g.clone(), (g.degree, a))).unzip();
    Ok(Core { degrees, ann })
}

/// Maximal pole order tried before asking for a larger `S`.
pub const POLE_CAP: usize = 64;

/// Verifies `H^s_𝔪(S⁻¹P) ≅ Σ^{2s} Γ Hom_{k_K}(S⁻¹P, k_K)` on the first
/// `layers` layers in every degree of `window`, then repeats with one more
/// form in `S`.
pub fn gorenstein_embed(ms: &MultSet, window: (i64, i64), layers: u32, ex: Exec) -> Result<GorensteinReport> {
    if layers == 0 {
        return Err(Error::Invalid("at least one layer is needed".into()));
    }
    let setup = Setup::new(ms, layers)?;
    let s = setup.co.s();
    let mut report = GorensteinReport {
        rank: ms.rank,
        k: ms.top,
        s,
        forms: ms.forms.clone(),
        layers,
        degrees: vec![],
        layer_ranks: vec![],
        expected_layer_ranks: vec![],
        layers_uniform: true,
        enlargement: None,
    };
    if s == 0 {
        // 𝔪 = 0: both sides are S⁻¹P and the map is the identity
        return Ok(report);
    }
    let core = run(&setup, window, POLE_CAP, ex)?;
    report.expected_layer_ranks = (0..layers as usize).map(|a| binomial(a + s - 1, s - 1)).collect();
    let layer = |ann: &Vec<usize>| -> Vec<usize> { (0..layers as usize).map(|a| ann[a + 1] - ann[a]).collect() };
    if setup.co.t == 0 {
        // k_K = k: layer a sits in the single degree 2(s + a)
        let mut acc = vec![0; layers as usize];
        for (_, ann) in &core.ann {
            for (a, v) in layer(ann).into_iter().enumerate() {
                acc[a] += v;
            }
        }
        report.layer_ranks = acc;
        let top = 2 * (s as i64 + layers as i64 - 1);
        report.layers_uniform = window.0 <= 2 * s as i64 && window.1 >= top;
    } else {
        let even: Vec<Vec<usize>> = core.ann.iter().filter(|(d, _)| d % 2 == 0).map(|(_, a)| layer(a)).collect();
        report.layer_ranks = even.first().cloned().unwrap_or_default();
        report.layers_uniform = even.iter().all(|v| *v == report.layer_ranks);
    }
    report.degrees = core.degrees;
    if let Some(f) = next_form(ms) {
        let bigger = ms.enlarged(f.clone())?;
        let s2 = Setup::new(&bigger, layers)?;
        let core2 = run(&s2, window, POLE_CAP, ex)?;
        let same_dims = report.degrees.iter().zip(&core2.degrees).all(|(a, b)| a.lhs_dim == b.lhs_dim && a.rhs_dim == b.rhs_dim);
        let iso = core2.degrees.iter().all(|d| d.iso);
        let mut comparison_iso = true;
        for (a, b) in report.degrees.iter().zip(&core2.degrees) {
            let m = a.pole_order.max(b.pole_order);
            let src = setup.lhs(a.degree, m);
            let tgt = s2.lhs(a.degree, m);
            let h = f.poly().pow(m as u32);
            let c = induced(&h, setup.n, &src, &tgt);
            if !(c.rows() == c.cols() && c.is_invertible()) {
                comparison_iso = false;
            }
        }
        report.enlargement = Some(Enlargement { form: f, same_dims, iso, comparison_iso });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: Exec = Exec::Sequential;

    fn ms(rank: usize, k: ConnSubgroup, forms: &[&[i64]]) -> MultSet {
        MultSet::new(rank, k, forms.iter().map(|f| LinearForm::new(f).unwrap()).collect()).unwrap()
    }

    #[test]
    fn rank_one_trivial_subgroup() {
        let r = gorenstein_embed(&ms(1, ConnSubgroup::Trivial, &[]), (-12, 12), 4, EX).unwrap();
        assert!(r.certified(), "{r:?}");
        assert_eq!(r.layer_ranks, vec![1, 1, 1, 1]);
        assert!(r.enlargement.is_none());
        // H^1_{(c)}(k[c]) truncated at c^{-4}: degrees 2, 4, 6, 8
        let nz: Vec<i64> = r.degrees.iter().filter(|d| d.lhs_dim > 0).map(|d| d.degree).collect();
        assert_eq!(nz, vec![2, 4, 6, 8]);
    }

    #[test]
    fn rank_one_whole_group_is_identity_level() {
        let r = gorenstein_embed(&ms(1, ConnSubgroup::Full, &[&[1]]), (-12, 12), 2, EX).unwrap();
        assert_eq!(r.s, 0);
        assert!(r.certified() && r.stable());
    }

    #[test]
    fn circle_with_two_forms() {
        let k = ConnSubgroup::circle(1, 0).unwrap();
        let r = gorenstein_embed(&ms(2, k, &[&[0, 1], &[1, 1]]), (-10, 10), 3, EX).unwrap();
        assert!(r.certified(), "{r:?}");
        assert_eq!(r.layer_ranks, vec![1, 1, 1]);
        for d in &r.degrees {
            assert_eq!(d.lhs_dim, if d.degree % 2 == 0 { 3 } else { 0 });
        }
        assert!(r.stable(), "{:?}", r.enlargement);
    }

    #[test]
    fn skew_circle_is_stable() {
        let k = ConnSubgroup::circle(2, 3).unwrap();
        let r = gorenstein_embed(&ms(2, k, &[&[1, 0], &[1, -1], &[0, 1]]), (-6, 6), 2, EX).unwrap();
        assert!(r.certified() && r.stable(), "{r:?}");
    }

    #[test]
    fn trivial_subgroup_rank_two() {
        let r = gorenstein_embed(&ms(2, ConnSubgroup::Trivial, &[]), (-12, 12), 3, EX).unwrap();
        assert!(r.certified(), "{r:?}");
        assert_eq!(r.layer_ranks, vec![1, 2, 3]);
    }

    #[test]
    fn one_form_reaches_the_top_of_the_window() {
        let k = ConnSubgroup::circle(1, 0).unwrap();
        let r = gorenstein_embed(&ms(2, k, &[&[0, 1]]), (-12, 12), 3, EX).unwrap();
        assert!(r.certified(), "{r:?}");
        let top = r.degrees.iter().find(|d| d.degree == 12).unwrap();
        assert_eq!((top.lhs_dim, top.rhs_dim), (3, 3));
    }

    #[test]
    fn empty_set_at_a_circle_is_not_stable() {
        let k = ConnSubgroup::circle(1, 1).unwrap();
        let r = gorenstein_embed(&ms(2, k, &[]), (-6, 6), 2, EX).unwrap();
        assert!(r.degrees.iter().all(|d| d.iso));
        assert!(!r.stable());
    }
}
