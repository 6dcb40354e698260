//! The `E₂` page `Ext^{s,t}(πX, πY) ⇒ [X, Y]_{t−s}` and its text forms.
//!
//! Differentials run `d_r: (s, t) → (s + r, t + r − 1)`. In rank one the page
//! lives in rows `0..=2`, so only `d₂: (0, t) → (2, t + 1)` can be nonzero and
//! the sequence collapses at `E₃`.

use std::fmt::Write as _;

use crate::atcat::AtObject;
use crate::error::Result;
use crate::exec::Exec;
use crate::resolve::{ext_at, ExtTable, Shuffle};

/// Leading line of every text output.
pub const FORMAT_TAG: &str = "# cousinet-v1";

/// What the page says about one stem `n = t − s` of the abutment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StemBound {
    pub stem: i64,
    /// `dim [X, Y]_n` lies in `[lo, hi]`.
    pub lo: usize,
    pub hi: usize,
}

/// Rank-one bookkeeping from collapse at `E₃`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    /// `((0, t), (2, t + 1))` where both ends are nonzero.
    pub d2_candidates: Vec<((usize, i64), (usize, i64))>,
    pub stems: Vec<StemBound>,
}

#[derive(Clone, Debug)]
pub struct E2Page {
    pub x: String,
    pub y: String,
    pub rank: usize,
    pub table: ExtTable,
    /// Rows above `2·rank` vanish.
    pub finite_bound: usize,
    pub collapse: Option<Collapse>,
}

impl E2Page {
    pub fn get(&self, s: usize, t: i64) -> usize {
        self.table.get(s, t)
    }

    /// No nonzero entry above the finiteness bound.
    pub fn is_finite(&self) -> bool {
        self.table.top_row().is_none_or(|s| s <= self.finite_bound)
    }

    /// The `s = 0` row, `Hom(πX, πY)`, which carries the degree of a map
    /// (the d-invariant) through the edge homomorphism.
    pub fn edge(&self) -> Vec<(i64, usize)> {
        self.table.degrees.iter().map(|&t| (t, self.get(0, t))).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{FORMAT_TAG}").unwrap();
        writeln!(out, "# E2 X={} Y={} rank={} rows<={}", self.x, self.y, self.rank, self.finite_bound).unwrap();
        out.push_str(&table_tsv(&self.table));
        writeln!(out, "# edge s=0 (d-invariant): Hom(pi X, pi Y)").unwrap();
        if let Some(c) = &self.collapse {
            writeln!(out, "# collapses at E3").unwrap();
            for ((s0, t0), (s1, t1)) in &c.d2_candidates {
                writeln!(out, "# d2 candidate\t{s0},{t0}\t{s1},{t1}").unwrap();
            }
            for b in c.stems.iter().filter(|b| b.hi > 0) {
                writeln!(out, "# stem\t{}\t{}\t{}", b.stem, b.lo, b.hi).unwrap();
            }
        }
        out
    }

    /// The page as a grid, `s` upwards and `t` across.
    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{FORMAT_TAG}").unwrap();
        writeln!(out, "E2 for [{}, {}]  (rank {}, s <= {})", self.x, self.y, self.rank, self.finite_bound).unwrap();
        out.push_str(&grid(&self.table, Some("0*")));
        writeln!(out, "* edge row: Hom(pi X, pi Y), the d-invariant").unwrap();
        if let Some(c) = &self.collapse {
            writeln!(out, "collapses at E3; d2 candidates: {}", c.d2_candidates.len()).unwrap();
            for ((s0, t0), (s1, t1)) in &c.d2_candidates {
                writeln!(out, "  d2: ({s0},{t0}) -> ({s1},{t1})").unwrap();
            }
            for b in c.stems.iter().filter(|b| b.hi > 0) {
                writeln!(out, "  stem {}: dim in [{}, {}]", b.stem, b.lo, b.hi).unwrap();
            }
        }
        out
    }
}

/// `s<TAB>t<TAB>dim` rows for the nonzero entries, under the header.
pub fn table_tsv(table: &ExtTable) -> String {
    let mut out = String::from("s\tt\tdim\n");
    for (s, t, d) in table.entries() {
        writeln!(out, "{s}\t{t}\t{d}").unwrap();
    }
    out
}

/// A bigraded table as a grid with `s` upwards; `zero_label` replaces the
/// label of row 0.
pub fn grid(table: &ExtTable, zero_label: Option<&str>) -> String {
    let mut out = String::new();
    let degs = &table.degrees;
    let w = degs.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(2);
    for s in (0..table.dims.len()).rev() {
        let label = match zero_label {
            Some(l) if s == 0 => l.to_string(),
            _ => s.to_string(),
        };
        write!(out, "{label:>3} |").unwrap();
        for &t in degs {
            let d = table.get(s, t);
            let cell = if d == 0 { ".".to_string() } else { d.to_string() };
            write!(out, " {cell:>w$}").unwrap();
        }
        writeln!(out).unwrap();
    }
    writeln!(out, "    +{}", "-".repeat(degs.len() * (w + 1))).unwrap();
    write!(out, "  t  ").unwrap();
    for t in degs {
        write!(out, " {t:>w$}").unwrap();
    }
    writeln!(out).unwrap();
    out
}

/// `Ext^{s,t}(πX, πY)` for `t` in `[lo, hi]`.
pub fn adams_e2(
    x: (&str, &AtObject),
    y: (&str, &AtObject),
    window: (i64, i64),
    shuffle: Option<Shuffle>,
    ex: Exec,
) -> Result<E2Page> {
    let degrees: Vec<i64> = (window.0..=window.1).collect();
    let table = ext_at(x.1, y.1, &degrees, shuffle, ex)?;
    let rank = x.1.rank;
    let collapse = (rank == 1).then(|| collapse(&table, window));
    Ok(E2Page { x: x.0.to_string(), y: y.0.to_string(), rank, table, finite_bound: 2 * rank, collapse })
}

fn collapse(table: &ExtTable, window: (i64, i64)) -> Collapse {
    let e = |s: usize, t: i64| table.get(s, t);
    let d2_candidates = (window.0..window.1)
        .filter(|&t| e(0, t) > 0 && e(2, t + 1) > 0)
        .map(|t| ((0, t), (2, t + 1)))
        .collect();
    // stems whose whole contribution lies in the window
    let stems = (window.0..=window.1 - 2)
        .map(|n| {
            let hi = e(0, n) + e(1, n + 1) + e(2, n + 2);
            let out = e(0, n).min(e(2, n + 1));
            let inc = e(0, n + 1).min(e(2, n + 2));
            StemBound { stem: n, lo: hi - out - inc, hi }
        })
        .collect();
    Collapse { d2_candidates, stems }
}
