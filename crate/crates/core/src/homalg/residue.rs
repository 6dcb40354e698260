//! The residue pairing on top local cohomology, the self-duality of
//! `P/𝔪^{[n]}` and relative residues along chains of subgroups.
//!
//! Sign convention: generators are ordered, and the class of
//! `(x_1⋯x_s)^{−1}` has residue `+1` for the Koszul orientation in that
//! order. An iterated residue removes a block of variables at a time; its
//! sign is the sign of the shuffle putting the removed blocks, innermost
//! first, back into generator order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::qlinalg::{q, Matrix};
use crate::rings::{free_basis, ConnSubgroup, Mono, Poly};

use super::gorenstein::Coordinates;
use super::laurent::Laurent;
use super::lcoh::lcoh_polynomial;

/// The residue pairing `H^s_𝔪(P)_d ⊗ P_{2s−d} → k` in one degree.
#[derive(Clone, Debug)]
pub struct ResidueDatum {
    pub nvars: usize,
    pub degree: i64,
    /// Basis of `H^s_𝔪(P)_d`: exponent vectors, all negative.
    pub classes: Vec<Vec<i64>>,
    /// Basis of `P_{2s−d}`.
    pub polys: Vec<Mono>,
    /// `pairing[i][j] = Res(class_i · poly_j)`.
    pub pairing: Matrix,
}

impl ResidueDatum {
    pub fn nondegenerate(&self) -> bool {
        self.pairing.is_invertible()
    }
}

/// Coefficient of `(x_1⋯x_s)^{−1}`.
pub fn total_residue(f: &Laurent) -> crate::qlinalg::Q {
    f.coeff(&vec![-1; f.nvars])
}

/// The residue pairing in degree `d`, with classes from the stable Koszul
/// complex.
pub fn residue_datum(s: usize, d: i64, horizon: u32, ex: Exec) -> Result<ResidueDatum> {
    let (_, bases) = lcoh_polynomial(s, &[d], horizon, ex)?;
    let classes = bases.into_iter().next().unwrap_or_default();
    let polys: Vec<Mono> = free_basis(s, &[0], 2 * s as i64 - d).into_iter().map(|(_, m)| m).collect();
    let mut pairing = Matrix::zeros(classes.len(), polys.len());
    for (i, c) in classes.iter().enumerate() {
        for (j, m) in polys.iter().enumerate() {
            let prod = Laurent::monomial(c.clone(), q(1)).mul(&Laurent::from_poly(&Poly::monomial(m.clone(), q(1))));
            pairing[(i, j)] = total_residue(&prod);
        }
    }
    Ok(ResidueDatum { nvars: s, degree: d, classes, polys, pairing })
}

#[derive(Clone, Debug)]
pub struct SelfDuality {
    pub s: usize,
    pub n: u32,
    /// `P/𝔪^{[n]} ≅ Σ^a (P/𝔪^{[n]})^∨`.
    pub shift: i64,
    /// Pairing `Q_e × Q_{a−e} → k` for each degree `e` of `Q`.
    pub pairings: Vec<(i64, Matrix)>,
    /// `⟨x_i f, g⟩ = ⟨f, x_i g⟩` for all basis elements.
    pub balanced: bool,
    /// `ann(𝔪^{[n]}, H^s_𝔪(P))` as exponent vectors.
    pub annihilator: Vec<Vec<i64>>,
    pub generator: Vec<i64>,
    /// The annihilator is the submodule generated by `generator`.
    pub generated: bool,
}

impl SelfDuality {
    pub fn invertible(&self) -> bool {
        self.pairings.iter().all(|(_, m)| m.is_invertible())
    }

    /// The annihilator is exactly the exponent box `[−n, −1]^s`.
    pub fn is_box(&self) -> bool {
        let n = self.n as i64;
        self.annihilator.len() == (self.n as usize).pow(self.s as u32)
            && self.annihilator.iter().all(|e| e.iter().all(|&x| (-n..=-1).contains(&x)))
    }
}

fn in_box(m: &Mono, n: u32) -> bool {
    m.0.iter().all(|&e| e < n)
}

/// Self-duality of `Q = P/𝔪^{[n]}` through the socle pairing, and the
/// annihilator of `𝔪^{[n]}` in top local cohomology.
pub fn koszul_self_duality(s: usize, n: u32, ex: Exec) -> Result<SelfDuality> {
    if n == 0 || s == 0 {
        return Err(Error::Invalid("self-duality needs s ≥ 1 and n ≥ 1".into()));
    }
    let shift = -2 * s as i64 * (n as i64 - 1);
    let socle = Laurent::monomial(vec![n as i64 - 1; s], q(1));
    let basis = |e: i64| -> Vec<Mono> { free_basis(s, &[0], e).into_iter().map(|(_, m)| m).filter(|m| in_box(m, n)).collect() };
    let pair = |a: &Mono, b: &Mono| {
        let p = Laurent::from_poly(&Poly::monomial(a.mul(b), q(1)));
        // the product vanishes in Q once an exponent reaches n
        if p.terms.keys().any(|k| k.iter().any(|&x| x >= n as i64)) {
            q(0)
        } else {
            p.coeff(socle.terms.keys().next().expect("monomial"))
        }
    };
    let mut pairings = Vec::new();
    let mut balanced = true;
    for e in shift..=0 {
        let (l, r) = (basis(e), basis(shift - e));
        let mut m = Matrix::zeros(l.len(), r.len());
        for (i, a) in l.iter().enumerate() {
            for (j, b) in r.iter().enumerate() {
                m[(i, j)] = pair(a, b);
            }
        }
        pairings.push((e, m));
        // balance against the neighbouring degree
        for a in &l {
            for b in &basis(shift - e + 2) {
                for v in 0..s {
                    let xa = a.mul(&Mono::var(s, v));
                    let xb = b.mul(&Mono::var(s, v));
                    let lhs = if in_box(&xa, n) { pair(&xa, b) } else { q(0) };
                    let rhs = if in_box(&xb, n) { pair(a, &xb) } else { q(0) };
                    if lhs != rhs {
                        balanced = false;
                    }
                }
            }
        }
    }
    // the annihilator inside the computed top cohomology, by brute force
    let big = n as i64 + 2;
    let degs: Vec<i64> = (2 * s as i64..=2 * s as i64 * big).step_by(2).collect();
    let (_, bases) = lcoh_polynomial(s, &degs, (s as u32 * big as u32).max(3), ex)?;
    let ambient: BTreeSet<Vec<i64>> = bases.into_iter().flatten().filter(|e| e.iter().all(|&x| x >= -big)).collect();
    // x^e = 0 in H^s as soon as some exponent is nonnegative
    let kills = |e: &Vec<i64>| (0..s).all(|v| e[v] + n as i64 >= 0);
    let annihilator: Vec<Vec<i64>> = ambient.iter().filter(|e| kills(e)).cloned().collect();
    let generator = vec![-(n as i64); s];
    let generated_set: BTreeSet<Vec<i64>> = ambient
        .iter()
        .filter(|e| e.iter().zip(&generator).all(|(a, g)| a >= g))
        .cloned()
        .collect();
    let generated = generated_set == annihilator.iter().cloned().collect();
    Ok(SelfDuality { s, n, shift, pairings, balanced, annihilator, generator, generated })
}

/// The relative residue from level `L` to level `K` along a chain
/// `H ⊇ K ⊇ L`, acting on Laurent classes written in coordinates adapted
/// to the chain: first the coordinates of `G/K`, then those of `K/L`
/// (the rest are kept).
#[derive(Clone, Debug)]
pub struct RelativeResidue {
    pub rank: usize,
    pub chain: [ConnSubgroup; 3],
    /// Variables of the level-`L` coordinates that are removed.
    pub removed: Vec<usize>,
    /// Total number of variables at level `L`.
    pub nvars: usize,
}

fn level_vars(rank: usize, k: ConnSubgroup) -> usize {
    k.codim(rank)
}

pub fn relative_residue(rank: usize, h: ConnSubgroup, k: ConnSubgroup, l: ConnSubgroup) -> Result<RelativeResidue> {
    for x in [h, k, l] {
        if !x.valid_in(rank) {
            return Err(Error::Lattice(format!("{x} is not a subgroup of the rank {rank} torus")));
        }
    }
    if !h.contains(&k) || !k.contains(&l) {
        return Err(Error::Lattice(format!("{h} ⊇ {k} ⊇ {l} is not a chain")));
    }
    let nl = level_vars(rank, l);
    let nk = level_vars(rank, k);
    // level-L coordinates are (G/K coordinates, K/L coordinates)
    let removed: Vec<usize> = (nk..nl).collect();
    Ok(RelativeResidue { rank, chain: [h, k, l], removed, nvars: nl })
}

impl RelativeResidue {
    /// Takes the coefficient of the product of the removed variables to the
    /// power −1; the kept variables stay.
    pub fn apply(&self, f: &Laurent) -> Result<Laurent> {
        if f.nvars != self.nvars {
            return Err(Error::Invalid("class has the wrong number of variables".into()));
        }
        let keep: Vec<usize> = (0..self.nvars).filter(|v| !self.removed.contains(v)).collect();
        let mut out = Laurent::zero(keep.len());
        for (e, c) in &f.terms {
            if self.removed.iter().all(|&v| e[v] == -1) {
                out.add_term(keep.iter().map(|&v| e[v]).collect(), c.clone());
            }
        }
        Ok(out)
    }

    /// Adapted coordinates at level `L` in terms of the original variables,
    /// one row per coordinate; their determinant is 1, so residues do not
    /// depend on the choice.
    pub fn coordinates(&self) -> Result<Vec<Vec<i64>>> {
        let [_, k, l] = self.chain;
        match (k, l) {
            (ConnSubgroup::Circle(..), ConnSubgroup::Trivial) => Ok(Coordinates::new(self.rank, k)?.forward),
            (_, ConnSubgroup::Trivial) => Ok(Coordinates::new(self.rank, l)?.forward),
            _ => Ok((0..self.nvars).map(|i| (0..self.nvars).map(|j| i64::from(i == j)).collect()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: Exec = Exec::Sequential;

    #[test]
    fn residue_pairing_is_perfect() {
        for s in 1..=2 {
            for d in [2 * s as i64, 2 * s as i64 + 2, 2 * s as i64 + 6] {
                let r = residue_datum(s, d, 6, EX).unwrap();
                assert!(r.nondegenerate(), "s = {s}, d = {d}");
            }
        }
    }

    #[test]
    fn self_duality_small_cases() {
        for s in 1..=2 {
            for n in 1..=3 {
                let sd = koszul_self_duality(s, n, EX).unwrap();
                assert_eq!(sd.shift, -2 * s as i64 * (n as i64 - 1));
                assert!(sd.invertible() && sd.balanced && sd.generated && sd.is_box(), "s={s} n={n}");
            }
        }
        let sd = koszul_self_duality(2, 2, EX).unwrap();
        assert_eq!(sd.generator, vec![-2, -2]);
        assert_eq!(sd.annihilator.len(), 4);
    }

    #[test]
    fn cubic_pairing_matrix() {
        let sd = koszul_self_duality(1, 3, EX).unwrap();
        // k[c]/c³ ≅ Σ^{-4} dual: 1 pairs with c², c with c
        let at = |e: i64| sd.pairings.iter().find(|(d, _)| *d == e).unwrap().1.clone();
        assert_eq!(at(0), Matrix::from_i64(&[&[1]]));
        assert_eq!(at(-2), Matrix::from_i64(&[&[1]]));
        assert_eq!(at(-4), Matrix::from_i64(&[&[1]]));
    }

    #[test]
    fn equal_levels_give_identity() {
        let k = ConnSubgroup::circle(1, 2).unwrap();
        let r = relative_residue(2, ConnSubgroup::Full, k, k).unwrap();
        let f = Laurent::monomial(vec![-3], q(5));
        assert_eq!(r.apply(&f).unwrap(), f);
    }

    #[test]
    fn iterated_residue_is_total_residue() {
        let k = ConnSubgroup::circle(1, 0).unwrap();
        let inner = relative_residue(2, ConnSubgroup::Full, k, ConnSubgroup::Trivial).unwrap();
        let outer = relative_residue(2, ConnSubgroup::Full, ConnSubgroup::Full, k).unwrap();
        let total = relative_residue(2, ConnSubgroup::Full, ConnSubgroup::Full, ConnSubgroup::Trivial).unwrap();
        for a in -3..=1 {
            for b in -3..=1 {
                let f = Laurent::monomial(vec![a, b], q(a - 2 * b + 7));
                let two = outer.apply(&inner.apply(&f).unwrap()).unwrap();
                let one = total.apply(&f).unwrap();
                assert_eq!(two, one);
                assert_eq!(one.coeff(&[]), if (a, b) == (-1, -1) { q(8) } else { q(0) });
            }
        }
    }

    #[test]
    fn rank_one_residue_is_evaluation() {
        // c^i ⊗ c^j ↦ coefficient of c^{-1} in c^{i+j}: nonzero iff degrees add to 2
        let r = relative_residue(1, ConnSubgroup::Full, ConnSubgroup::Full, ConnSubgroup::Trivial).unwrap();
        for i in -4..=4 {
            for j in -4..=4 {
                let p = Laurent::monomial(vec![i], q(1)).mul(&Laurent::monomial(vec![j], q(1)));
                let v = r.apply(&p).unwrap().coeff(&[]);
                assert_eq!(v, if -2 * (i + j) == 2 { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn non_chain_is_rejected() {
        let k = ConnSubgroup::circle(1, 0).unwrap();
        assert!(matches!(
            relative_residue(2, k, ConnSubgroup::Full, ConnSubgroup::Trivial),
            Err(Error::Lattice(_))
        ));
    }

    #[test]
    fn adapted_coordinates_are_unimodular() {
        for (p, qq) in [(1, 0), (0, 1), (1, 1), (2, -3), (3, 5)] {
            let k = ConnSubgroup::circle(p, qq).unwrap();
            let r = relative_residue(2, ConnSubgroup::Full, k, ConnSubgroup::Trivial).unwrap();
            let m = r.coordinates().unwrap();
            assert_eq!(m[0][0] * m[1][1] - m[0][1] * m[1][0], 1);
        }
    }
}
