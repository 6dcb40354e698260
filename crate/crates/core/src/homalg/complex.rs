//! Bounded cochain complexes of windowed modules.

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{ModMap, Module};
use crate::qlinalg::{homology_at, GradedMap, GradedSpace, Matrix};

/// `C^0 → C^1 → ⋯ → C^n`, cohomologically indexed; `diffs[i]: C^i → C^{i+1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub terms: Vec<Module>,
    pub diffs: Vec<ModMap>,
}

impl ChainComplex {
    /// Checks shapes and `d∘d = 0` in every degree (tails included).
    pub fn new(terms: Vec<Module>, diffs: Vec<ModMap>) -> Result<Self> {
        if terms.is_empty() || diffs.len() + 1 != terms.len() {
            return Err(Error::Invalid("a complex needs one differential between consecutive terms".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.src.nvars != terms[i].nvars || d.tgt.nvars != terms[i + 1].nvars {
                return Err(Error::MalformedMap(format!("differential {i} joins modules over different rings")));
            }
            for deg in probe_degrees(&[&terms[i], &terms[i + 1]]) {
                if (d.src.dim(deg)?, d.tgt.dim(deg)?) != (terms[i].dim(deg)?, terms[i + 1].dim(deg)?) {
                    return Err(Error::MalformedMap(format!("differential {i} has the wrong shape in degree {deg}")));
                }
            }
        }
        for i in 0..diffs.len().saturating_sub(1) {
            let (f, g) = (&diffs[i], &diffs[i + 1]);
            for deg in probe_degrees(&[&f.src, &f.tgt, &g.tgt]) {
                if !g.f.block_at(deg)?.mul(&f.f.block_at(deg)?)?.is_zero() {
                    return Err(Error::NotAComplex { degree: deg });
                }
            }
        }
        Ok(ChainComplex { terms, diffs })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn window(&self) -> (i64, i64) {
        // contains the window [0, 1] of the zero space at the ends
        let lo = self.terms.iter().map(|m| m.lo()).fold(0, i64::min);
        let hi = self.terms.iter().map(|m| m.hi()).fold(1, i64::max);
        (lo, hi)
    }

    fn incoming(&self, i: usize) -> Result<GradedMap> {
        let (lo, hi) = self.window();
        if i == 0 {
            let t = self.terms[0].space.extend(lo, hi)?;
            GradedMap::zero(GradedSpace::zero().extend(lo, hi)?, t, 0)
        } else {
            self.diffs[i - 1].f.extend(lo, hi)
        }
    }

    fn outgoing(&self, i: usize) -> Result<GradedMap> {
        let (lo, hi) = self.window();
        match self.diffs.get(i) {
            Some(d) => d.f.extend(lo, hi),
            None => {
                let s = self.terms[i].space.extend(lo, hi)?;
                GradedMap::zero(s, GradedSpace::zero().extend(lo, hi)?, 0)
            }
        }
    }

    /// `H^i` as a graded space (tails included).
    pub fn cohomology(&self, i: usize, ex: Exec) -> Result<GradedSpace> {
        if i >= self.terms.len() {
            return Ok(GradedSpace::zero());
        }
        Ok(homology_at(&self.incoming(i)?, &self.outgoing(i)?, ex)?.space)
    }

    /// True when every `H^i` vanishes in every degree.
    pub fn is_acyclic(&self, ex: Exec) -> Result<bool> {
        for i in 0..self.terms.len() {
            if !self.cohomology(i, ex)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Degrees that decide a degreewise property of modules with tails: the
/// union of windows padded by two on each side.
pub fn probe_degrees(ms: &[&Module]) -> std::ops::RangeInclusive<i64> {
    let lo = ms.iter().map(|m| m.lo()).min().unwrap_or(0) - 2;
    let hi = ms.iter().map(|m| m.hi()).max().unwrap_or(0) + 2;
    lo..=hi
}

/// Dimension of the cohomology of `A -f-> B -g-> C` in one degree.
pub fn cohomology_dim(f: &Matrix, g: &Matrix) -> Result<usize> {
    if !g.mul(f)?.is_zero() {
        return Err(Error::NotAComplex { degree: 0 });
    }
    Ok(f.rows() - g.rank() - f.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::Atom;
    use crate::qlinalg::Matrix;

    #[test]
    fn mult_by_c_on_free_is_a_complex_with_cokernel_k() {
        let p = Atom::Free(0).realize(None).unwrap();
        let c = p.mult_map(0).unwrap();
        let cx = ChainComplex::new(vec![c.src.clone(), c.tgt.clone()], vec![c]).unwrap();
        let h0 = cx.cohomology(0, Exec::Sequential).unwrap();
        let h1 = cx.cohomology(1, Exec::Sequential).unwrap();
        assert!(h0.is_zero());
        // the cokernel of c: k[c] → Σ²k[c] is k in degree 2
        let dims: Vec<usize> = (-6..=6).map(|d| h1.dim(d).unwrap()).collect();
        assert_eq!(dims, (-6..=6).map(|d| usize::from(d == 2)).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_nonzero_composite() {
        let p = Atom::Free(0).realize(None).unwrap();
        let id = p.identity();
        assert!(matches!(
            ChainComplex::new(vec![p.clone(), p.clone(), p.clone()], vec![id.clone(), id]),
            Err(Error::NotAComplex { .. })
        ));
    }

    #[test]
    fn cohomology_dim_counts() {
        let f = Matrix::from_i64(&[&[1], &[0]]);
        let g = Matrix::from_i64(&[&[0, 1]]);
        assert_eq!(cohomology_dim(&f, &g).unwrap(), 0);
        assert_eq!(cohomology_dim(&Matrix::zeros(2, 0), &Matrix::zeros(0, 2)).unwrap(), 2);
    }
}
