//! Arithmetic in a localization `S⁻¹P` where `S` is generated by finitely
//! many linear forms. Fractions are kept with their denominator as a
//! product of the allowed forms and the numerator coprime to every form.

use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::qlinalg::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denoms {
    pub n: usize,
    pub forms: Vec<Poly>,
}

impl Denoms {
    pub fn new(n: usize, forms: Vec<Poly>) -> Result<Self> {
        for f in &forms {
            if f.is_zero() || f.degree() != Some(-2) || !f.is_homogeneous() {
                return Err(Error::Invalid("denominators must be nonzero linear forms".into()));
            }
        }
        Ok(Denoms { n, forms })
    }

    /// Writes `p = c · ∏ formsᵢ^eᵢ` with `c` a nonzero constant, or fails.
    pub fn factor(&self, p: &Poly) -> Result<(Q, Vec<u32>)> {
        if p.is_zero() {
            return Err(Error::DenominatorNotAllowed("division by zero".into()));
        }
        let mut rest = p.clone();
        let mut exps = vec![0u32; self.forms.len()];
        'outer: loop {
            if rest.degree() == Some(0) {
                break;
            }
            for (i, f) in self.forms.iter().enumerate() {
                if let Some(r) = rest.div_exact(f) {
                    rest = r;
                    exps[i] += 1;
                    continue 'outer;
                }
            }
            return Err(Error::DenominatorNotAllowed(format!(
                "{} is not a product of allowed forms",
                p.fmt_with(&default_names(self.n))
            )));
        }
        let c = rest.coeff(&super::poly::Mono::one(self.n));
        Ok((c, exps))
    }

    fn product(&self, exps: &[u32]) -> Poly {
        let mut p = Poly::one(self.n);
        for (f, &e) in self.forms.iter().zip(exps) {
            p = p.mul(&f.pow(e));
        }
        p
    }
}

fn default_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["c".into()],
        _ => ["x", "y", "z", "w"].iter().take(n).map(|s| s.to_string()).collect(),
    }
}

/// A fraction `num / ∏ formsᵢ^den[i]`.
#[derive(Clone, Debug)]
pub struct Frac<'a> {
    pub ctx: &'a Denoms,
    pub num: Poly,
    pub den: Vec<u32>,
}

impl<'a> Frac<'a> {
    pub fn from_poly(ctx: &'a Denoms, p: Poly) -> Self {
        Frac { ctx, num: p, den: vec![0; ctx.forms.len()] }.reduced()
    }

    pub fn inv_form(ctx: &'a Denoms, i: usize) -> Self {
        let mut den = vec![0; ctx.forms.len()];
        den[i] = 1;
        Frac { ctx, num: Poly::one(ctx.n), den }
    }

    /// `num / den` where `den` must factor over the allowed forms.
    pub fn new(ctx: &'a Denoms, num: Poly, den: &Poly) -> Result<Self> {
        let (c, exps) = ctx.factor(den)?;
        Ok(Frac { ctx, num: num.scale(&(Q::from_integer(1.into()) / c)), den: exps }.reduced())
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return self;
        }
        for i in 0..self.den.len() {
            while self.den[i] > 0 {
                match self.num.div_exact(&self.ctx.forms[i]) {
                    Some(r) => {
                        self.num = r;
                        self.den[i] -= 1;
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Degree of a homogeneous fraction; forms have degree −2.
    pub fn degree(&self) -> Option<i64> {
        let d = self.num.degree()?;
        Some(d + 2 * self.den.iter().map(|&e| e as i64).sum::<i64>())
    }

    fn common(&self, o: &Frac) -> (Vec<u32>, Poly, Poly) {
        let den: Vec<u32> = self.den.iter().zip(&o.den).map(|(a, b)| *a.max(b)).collect();
        let lift = |f: &Frac| {
            let extra: Vec<u32> = den.iter().zip(&f.den).map(|(a, b)| a - b).collect();
            f.num.mul(&self.ctx.product(&extra))
        };
        let (a, b) = (lift(self), lift(o));
        (den, a, b)
    }

    pub fn add(&self, o: &Frac<'a>) -> Frac<'a> {
        let (den, a, b) = self.common(o);
        Frac { ctx: self.ctx, num: a.add(&b), den }.reduced()
    }

    pub fn sub(&self, o: &Frac<'a>) -> Frac<'a> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Frac<'a> {
        Frac { ctx: self.ctx, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Frac<'a>) -> Frac<'a> {
        let den = self.den.iter().zip(&o.den).map(|(a, b)| a + b).collect();
        Frac { ctx: self.ctx, num: self.num.mul(&o.num), den }.reduced()
    }

    /// Division by a polynomial that factors over the allowed forms.
    pub fn div_poly(&self, p: &Poly) -> Result<Frac<'a>> {
        Ok(self.mul(&Frac::new(self.ctx, Poly::one(self.ctx.n), p)?))
    }

    /// The denominator as a polynomial.
    pub fn den_poly(&self) -> Poly {
        self.ctx.product(&self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.iter().all(|&e| e == 0)
    }
}

impl PartialEq for Frac<'_> {
    fn eq(&self, o: &Self) -> bool {
        let (_, a, b) = self.common(o);
        a == b
    }
}

impl fmt::Display for Frac<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.ctx.n);
        if self.is_polynomial() {
            return f.write_str(&self.num.fmt_with(&names));
        }
        write!(f, "({})/({})", self.num.fmt_with(&names), self.den_poly().fmt_with(&names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    fn ctx() -> Denoms {
        Denoms::new(2, vec![Poly::linear(&[1, 0]), Poly::linear(&[0, 1]), Poly::linear(&[1, 1])]).unwrap()
    }

    #[test]
    fn cancellation() {
        let s = ctx();
        let xy = Poly::linear(&[1, 1]);
        let f = Frac::new(&s, xy.clone(), &xy).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f, Frac::from_poly(&s, Poly::one(2)));
        let x = Poly::var(2, 0);
        let g = Frac::new(&s, x.clone(), &x.mul(&xy)).unwrap();
        assert_eq!(g.den, vec![0, 0, 1]);
    }

    #[test]
    fn sum_of_inverses() {
        let s = ctx();
        let a = Frac::inv_form(&s, 0).add(&Frac::inv_form(&s, 1));
        assert_eq!(a.num, Poly::linear(&[1, 1]));
        assert_eq!(a.den, vec![1, 1, 0]);
        assert_eq!(a.degree(), Some(2));
    }

    #[test]
    fn forbidden_denominator() {
        let s = ctx();
        let bad = Poly::linear(&[1, -1]);
        assert!(matches!(
            Frac::new(&s, Poly::one(2), &bad),
            Err(Error::DenominatorNotAllowed(_))
        ));
        let scaled = Poly::linear(&[2, 2]);
        let f = Frac::new(&s, Poly::one(2), &scaled).unwrap();
        assert_eq!(f.num, Poly::constant(2, crate::qlinalg::qf(1, 2)));
        assert_eq!(f.mul(&Frac::from_poly(&s, scaled)), Frac::from_poly(&s, Poly::constant(2, q(1))));
    }
}
