//! Subgroups of a torus of rank one or two, the inflation maps between their
//! cohomology rings, linear forms and Euler classes.

use std::fmt;

use num::integer::gcd;

use super::poly::{Poly, Ring};
use crate::error::{Error, Result};

/// A connected subgroup of the rank `r` torus.
///
/// `Circle(p, q)` (rank two only) is the identity component of the kernel of
/// the character `(z₁, z₂) ↦ z₁ᵖ z₂^q`, stored with `(p, q)` primitive and
/// `p > 0`, or `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConnSubgroup {
    Full,
    Circle(i64, i64),
    Trivial,
}

impl ConnSubgroup {
    pub fn circle(p: i64, q: i64) -> Result<Self> {
        if p == 0 && q == 0 {
            return Err(Error::Lattice("the zero character does not cut out a circle".into()));
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if p < 0 || (p == 0 && q < 0) {
            p = -p;
            q = -q;
        }
        Ok(ConnSubgroup::Circle(p, q))
    }

    pub fn dim(&self, rank: usize) -> usize {
        match self {
            ConnSubgroup::Full => rank,
            ConnSubgroup::Circle(..) => 1,
            ConnSubgroup::Trivial => 0,
        }
    }

    pub fn codim(&self, rank: usize) -> usize {
        rank - self.dim(rank)
    }

    pub fn valid_in(&self, rank: usize) -> bool {
        !matches!(self, ConnSubgroup::Circle(..)) || rank == 2
    }

    pub fn contains(&self, o: &ConnSubgroup) -> bool {
        match (self, o) {
            (ConnSubgroup::Full, _) => true,
            (_, ConnSubgroup::Trivial) => true,
            (a, b) => a == b,
        }
    }

    /// The ring H*(BG/K): no generators for K = G, one for a circle, all of
    /// them for the trivial group.
    pub fn ring(&self, rank: usize) -> Ring {
        match (self, rank) {
            (ConnSubgroup::Full, _) => Ring::ground(),
            (ConnSubgroup::Circle(..), _) => Ring::new(&["z"]),
            (ConnSubgroup::Trivial, 1) => Ring::kc(),
            (ConnSubgroup::Trivial, _) => Ring::kxy(),
        }
    }

    /// For a circle, a complementary character `(u, v)` with `p·v − q·u = 1`.
    pub fn complement(&self) -> Option<(i64, i64)> {
        let ConnSubgroup::Circle(p, q) = *self else { return None };
        let (g, a, b) = ext_gcd(p, q);
        debug_assert_eq!(g, 1);
        // a·p + b·q = 1, so (u, v) = (−b, a) gives p·a − q·(−b) = 1
        Some((-b, a))
    }

    /// Whether the linear form `a·x + b·y` restricts nontrivially to this
    /// subgroup (rank two), i.e. lies in the Euler set of the subgroup.
    pub fn form_nonvanishing(&self, a: i64, b: i64) -> bool {
        match self {
            ConnSubgroup::Full => a != 0 || b != 0,
            ConnSubgroup::Circle(p, q) => p * b - q * a != 0,
            ConnSubgroup::Trivial => false,
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        (a.abs(), s, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl fmt::Display for ConnSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConnSubgroup::Full => f.write_str("G"),
            ConnSubgroup::Circle(p, q) => write!(f, "circle({p},{q})"),
            ConnSubgroup::Trivial => f.write_str("1"),
        }
    }
}

/// The inflation map H*(BG/K) → H*(BG/L) for L ⊆ K, as images of the
/// generators of the source ring.
pub fn inflation(rank: usize, k: ConnSubgroup, l: ConnSubgroup) -> Result<Vec<Poly>> {
    if !k.valid_in(rank) || !l.valid_in(rank) {
        return Err(Error::Lattice("circles only exist in rank two".into()));
    }
    if !k.contains(&l) {
        return Err(Error::Lattice(format!("{l} is not contained in {k}")));
    }
    let tn = l.ring(rank).nvars();
    Ok(match (k, l) {
        (ConnSubgroup::Full, _) => vec![],
        (a, b) if a == b => (0..tn).map(|i| Poly::var(tn, i)).collect(),
        (ConnSubgroup::Circle(p, q), ConnSubgroup::Trivial) => vec![Poly::linear(&[p, q])],
        _ => unreachable!("containment covers the remaining cases"),
    })
}

/// Applies an inflation to a polynomial.
pub fn inflate(rank: usize, k: ConnSubgroup, l: ConnSubgroup, f: &Poly) -> Result<Poly> {
    let imgs = inflation(rank, k, l)?;
    Ok(f.compose(&imgs, l.ring(rank).nvars()))
}

/// A subgroup in the full-isotropy variant: an identity component together
/// with the order of the component group. In rank one these are G and the
/// cyclic groups `C_n` (`Trivial` with order `n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    pub conn: ConnSubgroup,
    pub order: u64,
}

impl Subgroup {
    pub fn connected(conn: ConnSubgroup) -> Self {
        Subgroup { conn, order: 1 }
    }

    pub fn whole() -> Self {
        Subgroup::connected(ConnSubgroup::Full)
    }

    pub fn cyclic(n: u64) -> Self {
        Subgroup { conn: ConnSubgroup::Trivial, order: n }
    }

    pub fn trivial() -> Self {
        Subgroup::cyclic(1)
    }

    /// `l` is cotoral in `self`: contained with a torus quotient. For
    /// rank-one finite subgroups this means `self = G` or `self = l`.
    pub fn cotoral(&self, l: &Subgroup) -> bool {
        if self == l {
            return true;
        }
        if !self.conn.contains(&l.conn) || self.conn == l.conn {
            return false;
        }
        // a quotient by a connected subgroup is a torus exactly when the
        // component groups agree
        self.order == 1 && (l.order == 1 || self.conn == ConnSubgroup::Full)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.conn, self.order) {
            (c, 1) => write!(f, "{c}"),
            (ConnSubgroup::Trivial, n) => write!(f, "C{n}"),
            (c, n) => write!(f, "{c}x{n}"),
        }
    }
}

/// A nonzero integral linear form in H*(BG), stored primitive with first
/// nonzero coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm(pub Vec<i64>);

impl LinearForm {
    pub fn new(c: &[i64]) -> Result<Self> {
        let g = c.iter().fold(0i64, |a, &b| gcd(a, b));
        if g == 0 {
            return Err(Error::Invalid("the zero form is not allowed".into()));
        }
        let sign = if c.iter().find(|&&v| v != 0).copied().unwrap_or(1) < 0 { -1 } else { 1 };
        Ok(LinearForm(c.iter().map(|v| sign * v / g).collect()))
    }

    pub fn poly(&self) -> Poly {
        Poly::linear(&self.0)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = match self.0.len() {
            1 => vec!["c".into()],
            _ => vec!["x".into(), "y".into()],
        };
        f.write_str(&self.poly().fmt_with(&names))
    }
}

/// A representation given by characters with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EulerClass {
    pub chars: Vec<(Vec<i64>, u32)>,
}

impl EulerClass {
    pub fn new(chars: Vec<(Vec<i64>, u32)>) -> Self {
        EulerClass { chars }
    }

    /// `n` copies of the standard character of the circle.
    pub fn multiple_z(n: u32) -> Self {
        if n == 0 {
            return EulerClass::default();
        }
        EulerClass { chars: vec![(vec![1], n)] }
    }

    pub fn sum(&self, o: &EulerClass) -> EulerClass {
        let mut chars = self.chars.clone();
        chars.extend(o.chars.iter().cloned());
        EulerClass { chars }
    }

    /// Real dimension of the representation.
    pub fn real_dim(&self) -> i64 {
        2 * self.chars.iter().map(|(_, m)| *m as i64).sum::<i64>()
    }

    /// Real dimension of the fixed points under a connected subgroup.
    pub fn fixed_dim(&self, k: ConnSubgroup) -> i64 {
        2 * self
            .chars
            .iter()
            .filter(|(c, _)| !char_nontrivial_on(c, k))
            .map(|(_, m)| *m as i64)
            .sum::<i64>()
    }

    /// Product of the linear forms, in H*(BG).
    pub fn value(&self, rank: usize) -> Poly {
        let mut p = Poly::one(rank);
        for (c, m) in &self.chars {
            p = p.mul(&Poly::linear(c).pow(*m));
        }
        p
    }

    /// The Euler class as an element of the Euler set of `k`: every
    /// character must be nontrivial on `k`.
    pub fn unit_for(&self, rank: usize, k: ConnSubgroup) -> Result<Poly> {
        for (c, _) in &self.chars {
            if !char_nontrivial_on(c, k) {
                return Err(Error::NotEulerUnit(format!("{c:?} on {k}")));
            }
        }
        Ok(self.value(rank))
    }
}

/// Whether a character is nontrivial on the connected subgroup `k`.
pub fn char_nontrivial_on(c: &[i64], k: ConnSubgroup) -> bool {
    if c.iter().all(|&v| v == 0) {
        return false;
    }
    match (k, c.len()) {
        (ConnSubgroup::Trivial, _) => false,
        (ConnSubgroup::Full, _) => true,
        (ConnSubgroup::Circle(..), 2) => k.form_nonvanishing(c[0], c[1]),
        _ => false,
    }
}

/// A finite set of linear forms approximating the Euler set of a connected
/// subgroup `top`: every form restricts nontrivially to `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSet {
    pub rank: usize,
    pub top: ConnSubgroup,
    pub forms: Vec<LinearForm>,
}

impl MultSet {
    pub fn new(rank: usize, top: ConnSubgroup, forms: Vec<LinearForm>) -> Result<Self> {
        let mut fs: Vec<LinearForm> = Vec::new();
        for f in forms {
            if f.0.len() != rank {
                return Err(Error::Invalid(format!("form {f} has the wrong number of coefficients")));
            }
            if !char_nontrivial_on(&f.0, top) {
                return Err(Error::NotEulerUnit(format!("{f} on {top}")));
            }
            if !fs.contains(&f) {
                fs.push(f);
            }
        }
        Ok(MultSet { rank, top, forms: fs })
    }

    /// The set with one more form.
    pub fn enlarged(&self, f: LinearForm) -> Result<Self> {
        let mut forms = self.forms.clone();
        forms.push(f);
        MultSet::new(self.rank, self.top, forms)
    }

    /// Compatibility for a chain H ⊇ K: the forms for H are forms for K.
    pub fn contained_in(&self, other: &MultSet) -> bool {
        self.forms.iter().all(|f| other.forms.contains(f))
    }

    pub fn polys(&self) -> Vec<Poly> {
        self.forms.iter().map(|f| f.poly()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::q;

    fn sample_lattice() -> Vec<ConnSubgroup> {
        let mut v = vec![ConnSubgroup::Full, ConnSubgroup::Trivial];
        for (p, q) in [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3)] {
            v.push(ConnSubgroup::circle(p, q).unwrap());
        }
        v
    }

    #[test]
    fn canonical_circles() {
        assert_eq!(ConnSubgroup::circle(-2, 4).unwrap(), ConnSubgroup::Circle(1, -2));
        assert_eq!(ConnSubgroup::circle(0, -3).unwrap(), ConnSubgroup::Circle(0, 1));
        assert!(ConnSubgroup::circle(0, 0).is_err());
        for (p, q) in [(1, 0), (0, 1), (1, 1), (1, -2), (2, 3), (5, 7)] {
            let c = ConnSubgroup::circle(p, q).unwrap();
            let (u, v) = c.complement().unwrap();
            let ConnSubgroup::Circle(p, q) = c else { unreachable!() };
            assert_eq!(p * v - q * u, 1);
        }
    }

    #[test]
    fn inflation_is_functorial() {
        for k in sample_lattice() {
            for l in sample_lattice() {
                if !k.contains(&l) {
                    assert!(inflation(2, k, l).is_err());
                    continue;
                }
                for m in sample_lattice() {
                    if !l.contains(&m) {
                        continue;
                    }
                    let n = k.ring(2).nvars();
                    for i in 0..n {
                        let g = Poly::var(n, i);
                        let two = inflate(2, l, m, &inflate(2, k, l, &g).unwrap()).unwrap();
                        let one = inflate(2, k, m, &g).unwrap();
                        assert_eq!(two, one);
                    }
                }
            }
        }
        assert_eq!(inflation(1, ConnSubgroup::Full, ConnSubgroup::Trivial).unwrap(), vec![]);
    }

    #[test]
    fn circle_inflation_kills_the_circle() {
        // z ↦ p x + q y vanishes on the Lie algebra direction (−q, p) of the circle
        let c = ConnSubgroup::circle(1, -2).unwrap();
        let z = &inflation(2, c, ConnSubgroup::Trivial).unwrap()[0];
        assert_eq!(z.eval(&[q(2), q(1)]), q(0));
        assert!(!c.form_nonvanishing(1, -2));
        assert!(c.form_nonvanishing(0, 1));
    }

    #[test]
    fn euler_values() {
        let v = EulerClass::multiple_z(3);
        assert_eq!(v.value(1), Poly::var(1, 0).pow(3));
        assert_eq!(EulerClass::default().value(1), Poly::one(1));
        let w = EulerClass::new(vec![(vec![1, 0], 1), (vec![1, 1], 1)]);
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(w.value(2), x.mul(&x.add(&y)));
        assert_eq!(w.sum(&v_2()).value(2), w.value(2).mul(&v_2().value(2)));
        assert!(w.unit_for(2, ConnSubgroup::circle(1, 0).unwrap()).is_err());
        assert!(w.unit_for(2, ConnSubgroup::circle(0, 1).unwrap()).is_ok());
    }

    fn v_2() -> EulerClass {
        EulerClass::new(vec![(vec![2, -1], 2)])
    }

    #[test]
    fn cotorality() {
        let g = Subgroup::whole();
        let c3 = Subgroup::cyclic(3);
        assert!(g.cotoral(&c3));
        assert!(c3.cotoral(&c3));
        assert!(!Subgroup::cyclic(6).cotoral(&c3));
        assert!(!c3.cotoral(&g));
    }

    #[test]
    fn mult_set_membership() {
        let h = ConnSubgroup::circle(1, 0).unwrap();
        assert!(MultSet::new(2, h, vec![LinearForm::new(&[0, 1]).unwrap()]).is_ok());
        assert!(matches!(
            MultSet::new(2, h, vec![LinearForm::new(&[2, 0]).unwrap()]),
            Err(Error::NotEulerUnit(_))
        ));
        let small = MultSet::new(2, ConnSubgroup::Full, vec![LinearForm::new(&[1, 1]).unwrap()]).unwrap();
        let big = small.enlarged(LinearForm::new(&[1, 0]).unwrap()).unwrap();
        assert!(small.contained_in(&big));
    }
}
