//! Kernels of maps between graded free modules and minimal free
//! resolutions, computed degree by degree with rational linear algebra.
//!
//! Over a polynomial ring in at most two variables the kernel of a map of
//! free modules is free, so its minimal generators number exactly
//! `cols − generic rank`. Degrees are scanned from the top down and a
//! generator is added whenever the span of the ones found so far misses part
//! of the kernel; by graded Nakayama these are minimal generators, so the
//! scan stops as soon as the expected count is reached.

use super::poly::{free_basis, Mono, Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::qlinalg::{Matrix, Q};

/// How many degrees below the top a kernel scan may go.
pub const DEGREE_CAP: i64 = 400;

/// Rank over the fraction field, by fraction-free elimination.
pub fn generic_rank(m: &PolyMatrix) -> usize {
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = Poly::one(m.n);
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..cols {
                let num = a[row][col].mul(&a[i][j]).sub(&a[i][col].mul(&a[row][j]));
                a[i][j] = num.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
            a[i][col] = Poly::zero(m.n);
        }
        prev = a[row][col].clone();
        row += 1;
    }
    row
}

/// Coordinates of a polynomial column of degree `d` in the monomial basis of
/// `(⊕ P(gens))_d`.
pub fn column_coords(n: usize, gens: &[i64], d: i64, col: &[Poly]) -> Vec<Q> {
    free_basis(n, gens, d)
        .iter()
        .map(|(j, m)| col[*j].coeff(m))
        .collect()
}

/// The polynomial column with the given coordinates in degree `d`.
pub fn column_from_coords(n: usize, gens: &[i64], d: i64, v: &[Q]) -> Vec<Poly> {
    let mut col = vec![Poly::zero(n); gens.len()];
    for ((j, m), c) in free_basis(n, gens, d).into_iter().zip(v) {
        if *c != Q::from_integer(0.into()) {
            col[j] = col[j].add(&Poly::monomial(m, c.clone()));
        }
    }
    col
}

/// Columns spanning, in degree `d`, the submodule generated by `elems`
/// (each a column with its degree).
pub fn span_in_degree(n: usize, gens: &[i64], elems: &[(Vec<Poly>, i64)], d: i64) -> Matrix {
    let basis_len = free_basis(n, gens, d).len();
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for (g, e) in elems {
        let gap = e - d;
        if gap < 0 || gap % 2 != 0 {
            continue;
        }
        let monos = if n == 0 {
            if gap == 0 { vec![Mono(vec![])] } else { vec![] }
        } else {
            Mono::of_total(n, (gap / 2) as u32)
        };
        for m in monos {
            let shifted: Vec<Poly> = g.iter().map(|p| p.mul_mono(&m)).collect();
            cols.push(column_coords(n, gens, d, &shifted));
        }
    }
    Matrix::from_cols(basis_len, &cols)
}

fn with_col(span: &Matrix, v: Vec<Q>) -> Matrix {
    let c = Matrix::from_cols(v.len(), &[v]);
    Matrix::hstack(&[span, &c]).expect("same height")
}

/// Minimal generators of the submodule of `⊕ P(gens)` generated by `elems`.
pub fn minimal_generators(n: usize, gens: &[i64], elems: &[(Vec<Poly>, i64)]) -> Vec<(Vec<Poly>, i64)> {
    let mut degs: Vec<i64> = elems.iter().map(|(_, e)| *e).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    degs.dedup();
    let mut kept: Vec<(Vec<Poly>, i64)> = Vec::new();
    for d in degs {
        let mut span = span_in_degree(n, gens, &kept, d);
        let mut r = span.rank();
        for (g, e) in elems.iter().filter(|(_, e)| *e == d) {
            let v = column_coords(n, gens, d, g);
            let trial = with_col(&span, v);
            let r2 = trial.rank();
            if r2 > r {
                span = trial;
                r = r2;
                kept.push((g.clone(), *e));
            }
        }
    }
    kept
}

/// Minimal generators of the kernel of `m`, as the columns of a matrix into
/// the source of `m`.
pub fn syzygy_basis(m: &PolyMatrix) -> Result<PolyMatrix> {
    let n = m.n;
    let want = m.cols() - generic_rank(m);
    let mut found: Vec<(Vec<Poly>, i64)> = Vec::new();
    if want > 0 {
        let top = *m.src_deg.iter().max().expect("a kernel needs a nonzero source");
        let mut d = top;
        while found.len() < want {
            if top - d > DEGREE_CAP {
                return Err(Error::Horizon(format!(
                    "kernel generators not found within {DEGREE_CAP} degrees"
                )));
            }
            let ker = m.block(d).kernel();
            if ker.cols() > 0 {
                let mut span = span_in_degree(n, &m.src_deg, &found, d);
                let mut r = span.rank();
                for v in ker.col_vectors() {
                    let trial = with_col(&span, v.clone());
                    let r2 = trial.rank();
                    if r2 > r {
                        span = trial;
                        r = r2;
                        found.push((column_from_coords(n, &m.src_deg, d, &v), d));
                    }
                }
            }
            d -= 1;
        }
        // the kernel is free of rank `want`, so these generate; spot-check
        for e in (d - 3)..=d {
            let span = span_in_degree(n, &m.src_deg, &found, e);
            if span.rank() != m.block(e).kernel().cols() {
                return Err(Error::Horizon(format!("kernel Hilbert function mismatch in degree {e}")));
            }
        }
    }
    let src_deg: Vec<i64> = found.iter().map(|(_, e)| *e).collect();
    let mut entries = vec![vec![Poly::zero(n); found.len()]; m.cols()];
    for (j, (col, _)) in found.iter().enumerate() {
        for (i, p) in col.iter().enumerate() {
            entries[i][j] = p.clone();
        }
    }
    PolyMatrix::new(n, m.src_deg.clone(), src_deg, entries)
}

/// A minimal free resolution `… → F₂ → F₁ → F₀` of `coker(d₁)`.
/// `maps[j]` is `d_{j+1}: F_{j+1} → F_j`; `gens[j]` are the generator
/// degrees of `F_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub n: usize,
    pub gens: Vec<Vec<i64>>,
    pub maps: Vec<PolyMatrix>,
}

impl FreeResolution {
    /// Projective dimension, `None` for the zero module.
    pub fn pd(&self) -> Option<usize> {
        if self.gens[0].is_empty() {
            return None;
        }
        Some(self.gens.iter().rposition(|g| !g.is_empty()).unwrap_or(0))
    }

    /// Betti numbers `rank F_j`.
    pub fn betti(&self) -> Vec<usize> {
        self.gens.iter().map(|g| g.len()).collect()
    }

    /// The presentation `F₁ → F₀`.
    pub fn presentation(&self) -> PolyMatrix {
        self.maps[0].clone()
    }
}

/// Removes generators killed by a relation with a unit coefficient.
pub fn prune_units(p: &PolyMatrix) -> PolyMatrix {
    let mut m = p.clone();
    loop {
        let hit = (0..m.rows()).find_map(|i| {
            (0..m.cols()).find(|&j| m.entries[i][j].degree() == Some(0) && !m.entries[i][j].is_zero()).map(|j| (i, j))
        });
        let Some((i, j)) = hit else { return m };
        let c = m.entries[i][j].coeff(&Mono::one(m.n));
        let inv = Q::from_integer(1.into()) / c;
        let mut entries = Vec::new();
        for k in (0..m.rows()).filter(|&k| k != i) {
            let row: Vec<Poly> = (0..m.cols())
                .filter(|&l| l != j)
                .map(|l| {
                    let corr = m.entries[k][j].mul(&m.entries[i][l]).scale(&inv);
                    m.entries[k][l].sub(&corr)
                })
                .collect();
            entries.push(row);
        }
        let tgt: Vec<i64> = (0..m.rows()).filter(|&k| k != i).map(|k| m.tgt_deg[k]).collect();
        let src: Vec<i64> = (0..m.cols()).filter(|&l| l != j).map(|l| m.src_deg[l]).collect();
        m = PolyMatrix { n: m.n, tgt_deg: tgt, src_deg: src, entries };
    }
}

/// Minimal free resolution of the cokernel of a presentation matrix.
pub fn minimal_resolution(pres: &PolyMatrix) -> Result<FreeResolution> {
    let n = pres.n;
    let pruned = prune_units(pres);
    let elems: Vec<(Vec<Poly>, i64)> = (0..pruned.cols())
        .map(|j| ((0..pruned.rows()).map(|i| pruned.entries[i][j].clone()).collect(), pruned.src_deg[j]))
        .collect();
    let min = minimal_generators(n, &pruned.tgt_deg, &elems);
    let src: Vec<i64> = min.iter().map(|(_, e)| *e).collect();
    let entries = (0..pruned.rows())
        .map(|i| min.iter().map(|(c, _)| c[i].clone()).collect())
        .collect();
    let d1 = PolyMatrix::new(n, pruned.tgt_deg.clone(), src, entries)?;
    let mut gens = vec![d1.tgt_deg.clone()];
    let mut maps = Vec::new();
    let mut cur = d1;
    loop {
        gens.push(cur.src_deg.clone());
        if cur.cols() == 0 {
            maps.push(cur);
            break;
        }
        let next = if cur.rows() == 0 {
            // everything is a syzygy of the zero map
            let k = cur.cols();
            let entries = (0..k).map(|i| (0..k).map(|j| if i == j { Poly::one(n) } else { Poly::zero(n) }).collect()).collect();
            PolyMatrix::new(n, cur.src_deg.clone(), cur.src_deg.clone(), entries)?
        } else {
            syzygy_basis(&cur)?
        };
        maps.push(cur);
        if gens.len() > n + 2 {
            return Err(Error::Horizon("resolution longer than the number of variables".into()));
        }
        cur = next;
    }
    while gens.len() > 1 && gens.last().is_some_and(|g| g.is_empty()) {
        gens.pop();
        maps.pop();
    }
    if maps.is_empty() {
        maps.push(PolyMatrix::new(n, gens[0].clone(), vec![], vec![vec![]; gens[0].len()])?);
        gens.push(vec![]);
    }
    Ok(FreeResolution { n, gens, maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }

    #[test]
    fn generic_rank_of_small_matrices() {
        let m = PolyMatrix::infer(2, vec![0, 2], vec![vec![x(), y()], vec![x().mul(&x()), x().mul(&y())]]).unwrap();
        assert_eq!(generic_rank(&m), 1);
        let m = PolyMatrix::infer(2, vec![0], vec![vec![x(), y()]]).unwrap();
        assert_eq!(generic_rank(&m), 1);
    }

    #[test]
    fn koszul_syzygy() {
        let m = PolyMatrix::infer(2, vec![0], vec![vec![x(), y()]]).unwrap();
        let k = syzygy_basis(&m).unwrap();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.src_deg, vec![-4]);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn resolution_of_residue_field() {
        let m = PolyMatrix::infer(2, vec![0], vec![vec![x(), y()]]).unwrap();
        let r = minimal_resolution(&m).unwrap();
        assert_eq!(r.betti(), vec![1, 2, 1]);
        assert_eq!(r.pd(), Some(2));
    }

    #[test]
    fn resolution_prunes_and_drops_redundancy() {
        // generators e0 (deg 0), e1 (deg -2) with e1 = x e0, plus relations
        // y e0 and x y e0 (redundant): cokernel is P/(y)
        let one = Poly::one(2);
        let m = PolyMatrix::infer(
            2,
            vec![0, -2],
            vec![
                vec![x(), y(), x().mul(&y())],
                vec![one.neg(), Poly::zero(2), Poly::zero(2)],
            ],
        )
        .unwrap();
        let r = minimal_resolution(&m).unwrap();
        assert_eq!(r.betti(), vec![1, 1]);
        assert_eq!(r.pd(), Some(1));
    }

    #[test]
    fn free_and_zero_modules() {
        let free = PolyMatrix::new(2, vec![0, 2], vec![], vec![vec![], vec![]]).unwrap();
        assert_eq!(minimal_resolution(&free).unwrap().pd(), Some(0));
        let zero = PolyMatrix::infer(2, vec![0], vec![vec![Poly::one(2)]]).unwrap();
        assert_eq!(minimal_resolution(&zero).unwrap().pd(), None);
    }

    #[test]
    fn finite_length_quotient() {
        // P/(x², xy, y³) has projective dimension 2
        let m = PolyMatrix::infer(2, vec![0], vec![vec![x().pow(2), x().mul(&y()), y().pow(3)]]).unwrap();
        let r = minimal_resolution(&m).unwrap();
        assert_eq!(r.betti(), vec![1, 3, 2]);
        for w in r.maps.windows(2) {
            assert!(w[0].mul(&w[1]).is_zero());
        }
    }
}
