//! Laurent polynomials with exact coefficients, and truncated expansions of
//! inverse linear forms.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::qlinalg::Q;
use crate::rings::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Laurent {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<i64>, Q>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: BTreeMap::new() }
    }

    pub fn monomial(exps: Vec<i64>, c: Q) -> Self {
        let mut l = Laurent::zero(exps.len());
        l.add_term(exps, c);
        l
    }

    pub fn one(nvars: usize) -> Self {
        Laurent::monomial(vec![0; nvars], Q::one())
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut l = Laurent::zero(p.n);
        for (m, c) in &p.terms {
            l.add_term(m.0.iter().map(|&e| e as i64).collect(), c.clone());
        }
        l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: &[i64]) -> Q {
        self.terms.get(exps).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (k, v) in &o.terms {
            r.add_term(k.clone(), v.clone());
        }
        r
    }

    pub fn scale(&self, s: &Q) -> Laurent {
        let mut r = Laurent::zero(self.nvars);
        for (k, v) in &self.terms {
            r.add_term(k.clone(), v * s);
        }
        r
    }

    /// Product, keeping only terms whose exponent in each variable of
    /// `cap` is at most the given bound.
    pub fn mul_capped(&self, o: &Laurent, cap: &[(usize, i64)]) -> Laurent {
        let mut r = Laurent::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if cap.iter().all(|&(i, m)| e[i] <= m) {
                    r.add_term(e, x * y);
                }
            }
        }
        r
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        self.mul_capped(o, &[])
    }

    /// Substitutes the linear change of variables `x_i = Σ_j m[i][j] y_j`.
    pub fn substitute_linear(&self, m: &[Vec<i64>]) -> Laurent {
        let n = m.first().map_or(0, |r| r.len());
        let mut out = Laurent::zero(n);
        for (e, c) in &self.terms {
            let mut t = Laurent::monomial(vec![0; n], c.clone());
            for (i, &k) in e.iter().enumerate() {
                assert!(k >= 0, "linear substitution of a negative power");
                let lin = Laurent {
                    nvars: n,
                    terms: (0..n)
                        .filter(|&j| m[i][j] != 0)
                        .map(|j| {
                            let mut v = vec![0; n];
                            v[j] = 1;
                            (v, Q::from_integer(m[i][j].into()))
                        })
                        .collect(),
                };
                for _ in 0..k {
                    t = t.mul(&lin);
                }
            }
            out = out.add(&t);
        }
        out
    }
}

/// `(α·z + β·w)^{−1}` expanded in powers of `z` with coefficients in
/// `k[w^{±1}]`, up to `z^top`. Variables are `(z, w)`; `β ≠ 0`.
pub fn inverse_form(alpha: &Q, beta: &Q, top: i64) -> Laurent {
    let mut l = Laurent::zero(2);
    let r = -(alpha / beta);
    let mut c = beta.recip();
    for k in 0..=top {
        l.add_term(vec![k, -1 - k], c.clone());
        c *= &r;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    #[test]
    fn inverse_times_form_is_one_up_to_truncation() {
        let (a, b) = (q(3), q(-2));
        let inv = inverse_form(&a, &b, 6);
        let form = Laurent::from_poly(&Poly::linear(&[3, -2]));
        let p = form.mul_capped(&inv, &[(0, 6)]);
        assert_eq!(p, Laurent::one(2));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let f = Laurent::from_poly(&Poly::linear(&[1, 2]).pow(2));
        let m = vec![vec![2, -1], vec![-1, 1]];
        let lhs = f.substitute_linear(&m);
        let g = Laurent::from_poly(&Poly::linear(&[1, 2]));
        let gs = g.substitute_linear(&m);
        assert_eq!(lhs, gs.mul(&gs));
    }
}
