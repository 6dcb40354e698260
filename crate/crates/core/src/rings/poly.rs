//! Polynomials over ℚ in a fixed list of generators, each of degree −2.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qlinalg::{q, Q};

/// Exponent vector, ordered graded-lexicographically: by total degree, then
/// lexicographically with the first generator largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(n: usize) -> Self {
        Mono(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Mono(e)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Internal degree: every generator has degree −2.
    pub fn degree(&self) -> i64 {
        -2 * self.total() as i64
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, o: &Mono) -> Option<Mono> {
        o.divides(self).then(|| Mono(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect()))
    }

    /// All monomials in `n` variables of total degree `k`, in grlex order.
    pub fn of_total(n: usize, k: u32) -> Vec<Mono> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Mono>) {
            let n = cur.len();
            if n == 0 {
                if left == 0 {
                    out.push(Mono(vec![]));
                }
                return;
            }
            if i == n - 1 {
                cur[i] = left;
                out.push(Mono(cur.clone()));
                return;
            }
            for a in (0..=left).rev() {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
        }
        rec(0, k, &mut cur, &mut out);
        out.sort();
        out
    }
}

impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        self.total().cmp(&o.total()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// The polynomial ring ℚ[x₁,…,xₙ] with named generators of degree −2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub vars: Vec<String>,
}

impl Ring {
    pub fn new(vars: &[&str]) -> Self {
        Ring { vars: vars.iter().map(|s| s.to_string()).collect() }
    }

    pub fn ground() -> Self {
        Ring { vars: vec![] }
    }

    pub fn kc() -> Self {
        Ring::new(&["c"])
    }

    pub fn kxy() -> Self {
        Ring::new(&["x", "y"])
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Dimension of the degree `d` part.
    pub fn dim(&self, d: i64) -> usize {
        if d > 0 || d % 2 != 0 {
            return 0;
        }
        Mono::of_total(self.nvars(), (-d / 2) as u32).len()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub n: usize,
    pub terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(Mono::one(n), c);
        }
        p
    }

    pub fn one(n: usize) -> Self {
        Poly::constant(n, Q::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        Poly::monomial(Mono::var(n, i), Q::one())
    }

    pub fn monomial(m: Mono, c: Q) -> Self {
        let n = m.0.len();
        let mut p = Poly::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Linear form Σ aᵢxᵢ.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Poly::zero(n);
        for (i, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                p.terms.insert(Mono::var(n, i), q(a));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.total());
        match it.next() {
            None => true,
            Some(t) => it.all(|u| u == t),
        }
    }

    /// Internal degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Option<i64> {
        if !self.is_homogeneous() {
            return None;
        }
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    fn insert_add(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.insert_add(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly { n: self.n, terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Leading monomial in the grlex order (largest).
    pub fn leading(&self) -> Option<(&Mono, &Q)> {
        self.terms.iter().next_back()
    }

    /// Exact division; `None` if `o` does not divide `self`.
    pub fn div_exact(&self, o: &Poly) -> Option<Poly> {
        let (lm, lc) = o.leading()?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.n);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let t = m.div(lm)?;
            let coef = c / lc;
            quo.insert_add(t.clone(), coef.clone());
            rem = rem.sub(&o.mul_mono(&t).scale(&coef));
        }
        Some(quo)
    }

    /// Substitutes `vals[i]` for generator `i`.
    pub fn eval(&self, vals: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, v) in m.0.iter().zip(vals) {
                for _ in 0..*e {
                    t *= v;
                }
            }
            s += t;
        }
        s
    }

    /// Substitutes a polynomial (in another ring) for each generator.
    pub fn compose(&self, images: &[Poly], target_n: usize) -> Poly {
        let mut out = Poly::zero(target_n);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_n, c.clone());
            for (e, img) in m.0.iter().zip(images) {
                t = t.mul(&img.pow(*e));
            }
            out = out.add(&t);
        }
        out
    }

    /// Coefficient vector on the monomial basis of a degree.
    pub fn coords(&self, basis: &[Mono]) -> Vec<Q> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{a}*"));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

/// A matrix of homogeneous polynomials representing a graded map between
/// free modules `⊕ P(src_deg[j]) -> ⊕ P(tgt_deg[i])`, where `P(g)` has its
/// generator in degree `g`. Entry `(i, j)` has degree `src_deg[j] - tgt_deg[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub tgt_deg: Vec<i64>,
    pub src_deg: Vec<i64>,
    pub entries: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    pub fn new(n: usize, tgt_deg: Vec<i64>, src_deg: Vec<i64>, entries: Vec<Vec<Poly>>) -> Result<Self> {
        if entries.len() != tgt_deg.len() || entries.iter().any(|r| r.len() != src_deg.len()) {
            return Err(Error::Grading("matrix shape does not match degree lists".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                match p.degree() {
                    Some(d) if d == src_deg[j] - tgt_deg[i] => {}
                    _ => {
                        return Err(Error::Grading(format!(
                            "entry ({i},{j}) is not homogeneous of degree {}",
                            src_deg[j] - tgt_deg[i]
                        )))
                    }
                }
            }
        }
        Ok(PolyMatrix { n, tgt_deg, src_deg, entries })
    }

    /// Builds a matrix from entries, inferring source degrees from the
    /// target degrees and the first nonzero entry of each column.
    pub fn infer(n: usize, tgt_deg: Vec<i64>, entries: Vec<Vec<Poly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        let mut src_deg = Vec::with_capacity(cols);
        for j in 0..cols {
            let d = (0..tgt_deg.len())
                .find_map(|i| entries[i][j].degree().filter(|_| !entries[i][j].is_zero()).map(|e| e + tgt_deg[i]))
                .ok_or_else(|| Error::Grading(format!("column {j} is zero; give its degree explicitly")))?;
            src_deg.push(d);
        }
        PolyMatrix::new(n, tgt_deg, src_deg, entries)
    }

    pub fn rows(&self) -> usize {
        self.tgt_deg.len()
    }

    pub fn cols(&self) -> usize {
        self.src_deg.len()
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        let mut entries = vec![vec![Poly::zero(self.n); o.cols()]; self.rows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for k in 0..self.cols() {
                    *e = e.add(&self.entries[i][k].mul(&o.entries[k][j]));
                }
            }
        }
        PolyMatrix { n: self.n, tgt_deg: self.tgt_deg.clone(), src_deg: o.src_deg.clone(), entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// The ℚ-linear block in degree `d`: from `(⊕P(src))_d` to `(⊕P(tgt))_d`
    /// on monomial bases (columns/rows ordered by summand, then grlex).
    pub fn block(&self, d: i64) -> crate::qlinalg::Matrix {
        let sb = free_basis(self.n, &self.src_deg, d);
        let tb = free_basis(self.n, &self.tgt_deg, d);
        let index: std::collections::HashMap<(usize, Mono), usize> =
            tb.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = crate::qlinalg::Matrix::zeros(tb.len(), sb.len());
        for (col, (j, mono)) in sb.iter().enumerate() {
            for i in 0..self.rows() {
                for (t, c) in &self.entries[i][*j].terms {
                    let key = (i, t.mul(mono));
                    if let Some(&r) = index.get(&key) {
                        m[(r, col)] += c;
                    }
                }
            }
        }
        m
    }
}

/// Basis of `(⊕ⱼ P(gⱼ))_d` as pairs (summand, monomial).
pub fn free_basis(n: usize, gens: &[i64], d: i64) -> Vec<(usize, Mono)> {
    let mut out = Vec::new();
    for (j, &g) in gens.iter().enumerate() {
        let e = d - g;
        if e > 0 || e % 2 != 0 {
            continue;
        }
        if n == 0 {
            if e == 0 {
                out.push((j, Mono(vec![])));
            }
            continue;
        }
        for m in Mono::of_total(n, (-e / 2) as u32) {
            out.push((j, m));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order_and_enumeration() {
        let ms = Mono::of_total(2, 2);
        assert_eq!(ms.len(), 3);
        assert!(Mono(vec![0, 1]) < Mono(vec![1, 0]));
        assert!(Mono(vec![1, 0]) < Mono(vec![0, 2]));
        assert_eq!(Mono::of_total(0, 0).len(), 1);
        assert_eq!(Mono::of_total(0, 1).len(), 0);
    }

    #[test]
    fn exact_division() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.mul(&x.add(&y));
        assert_eq!(f.div_exact(&x.add(&y)).unwrap(), x);
        assert!(f.div_exact(&y).is_none());
    }

    #[test]
    fn block_of_row_matrix() {
        let n = 2;
        let m = PolyMatrix::infer(n, vec![0], vec![vec![Poly::var(n, 0), Poly::var(n, 1)]]).unwrap();
        assert_eq!(m.src_deg, vec![-2, -2]);
        let b = m.block(-2);
        assert_eq!(b.shape(), (2, 2));
        assert_eq!(b.rank(), 2);
        let b = m.block(-4);
        assert_eq!(b.shape(), (3, 4));
        assert_eq!(b.rank(), 3);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let n = 2;
        let bad = Poly::var(n, 0).add(&Poly::var(n, 0).mul(&Poly::var(n, 1)));
        assert!(matches!(PolyMatrix::infer(n, vec![0], vec![vec![bad]]), Err(Error::Grading(_))));
    }
}
