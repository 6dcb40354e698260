//! Line-oriented text form of a windowed module.
//!
//! ```text
//! # cousinet-v1
//! module nvars=1 window=-4:4 below=zero above=periodic
//! d=-4 dim=1
//! act 0 d=-2 1x1 1
//! ```
//!
//! One `d=` line per degree of the window, then one `act i d=k RxC …` line
//! per nonempty action block of generator `i` from degree `k` to `k − 2`,
//! entries row-major as exact rationals. Empty blocks are omitted.

use std::fmt::Write as _;

use super::module::Module;
use crate::error::{Error, Result};
use crate::qlinalg::{GradedSpace, Matrix, Tail, Q};

pub const TABLE_TAG: &str = "# cousinet-v1";

fn tail_name(t: Tail) -> String {
    t.to_string()
}

fn parse_tail(s: &str) -> Option<Tail> {
    match s {
        "zero" => Some(Tail::Zero),
        "periodic" => Some(Tail::Periodic),
        "unknown" => Some(Tail::Unknown),
        _ => None,
    }
}

impl Module {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{TABLE_TAG}").unwrap();
        let s = &self.space;
        writeln!(
            out,
            "module nvars={} window={}:{} below={} above={}",
            self.nvars,
            s.lo,
            s.hi,
            tail_name(s.below),
            tail_name(s.above)
        )
        .unwrap();
        for d in s.lo..=s.hi {
            writeln!(out, "d={d} dim={}", s.dim_in(d)).unwrap();
        }
        for i in 0..self.nvars {
            for d in s.lo + 2..=s.hi {
                let m = self.act_at(i, d).expect("stored block");
                if m.rows() * m.cols() == 0 {
                    continue;
                }
                write!(out, "act {i} d={d} {}x{}", m.rows(), m.cols()).unwrap();
                for e in m.entries() {
                    write!(out, " {e}").unwrap();
                }
                writeln!(out).unwrap();
            }
        }
        out
    }

    pub fn from_table(text: &str) -> Result<Module> {
        let mut header: Option<(usize, i64, i64, Tail, Tail)> = None;
        let mut dims: Vec<(i64, usize)> = Vec::new();
        let mut blocks: Vec<(usize, usize, i64, Matrix)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let err = |col: usize, msg: &str| Error::Parse { line: n + 1, col: col + 1, msg: msg.to_string() };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let words: Vec<(usize, &str)> = words(raw);
            let field = |k: usize, key: &str| -> Result<&str> {
                let (c, w) = *words.get(k).ok_or_else(|| err(raw.len(), &format!("missing {key}")))?;
                w.strip_prefix(key).and_then(|v| v.strip_prefix('=')).ok_or_else(|| err(c, &format!("expected {key}=")))
            };
            let int = |k: usize, v: &str| -> Result<i64> { v.parse().map_err(|_| err(words[k].0, "expected an integer")) };
            match words[0].1 {
                "module" => {
                    let nvars = int(1, field(1, "nvars")?)? as usize;
                    let w = field(2, "window")?;
                    let (lo, hi) = w.split_once(':').ok_or_else(|| err(words[2].0, "expected lo:hi"))?;
                    let tail = |k: usize, key: &str| -> Result<Tail> {
                        parse_tail(field(k, key)?).ok_or_else(|| err(words[k].0, "expected zero, periodic or unknown"))
                    };
                    header = Some((nvars, int(2, lo)?, int(2, hi)?, tail(3, "below")?, tail(4, "above")?));
                }
                w if w.starts_with("d=") => {
                    let d = int(0, field(0, "d")?)?;
                    let dim = int(1, field(1, "dim")?)?;
                    dims.push((d, usize::try_from(dim).map_err(|_| err(words[1].0, "negative dimension"))?));
                }
                "act" => {
                    let i = int(1, words.get(1).ok_or_else(|| err(raw.len(), "missing generator"))?.1)? as usize;
                    let d = int(2, field(2, "d")?)?;
                    let (c0, shape) = *words.get(3).ok_or_else(|| err(raw.len(), "missing shape"))?;
                    let (r, c) = shape.split_once('x').ok_or_else(|| err(c0, "expected RxC"))?;
                    let (r, c): (usize, usize) =
                        (r.parse().map_err(|_| err(c0, "bad row count"))?, c.parse().map_err(|_| err(c0, "bad column count"))?);
                    let entries: Vec<Q> = words[4..]
                        .iter()
                        .map(|&(col, w)| w.parse::<Q>().map_err(|_| err(col, "expected a rational")))
                        .collect::<Result<_>>()?;
                    if entries.len() != r * c {
                        return Err(err(c0, &format!("expected {} entries, found {}", r * c, entries.len())));
                    }
                    let rows = entries.chunks(c.max(1)).map(|row| row.to_vec()).take(r).collect();
                    blocks.push((n + 1, i, d, Matrix::from_rows(rows)));
                }
                other => return Err(err(words[0].0, &format!("unknown record '{other}'"))),
            }
        }
        let (nvars, lo, hi, below, above) =
            header.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing module header".into() })?;
        let expect: Vec<i64> = (lo..=hi).collect();
        if dims.iter().map(|x| x.0).collect::<Vec<_>>() != expect {
            return Err(Error::Parse { line: 2, col: 1, msg: format!("expected one d= line per degree {lo}..{hi}") });
        }
        let space = GradedSpace::new(lo, hi, dims.iter().map(|x| x.1).collect(), below, above)?;
        let mut act: Vec<Vec<Matrix>> = (0..nvars)
            .map(|_| (lo + 2..=hi).map(|d| Matrix::zeros(space.dim_in(d - 2), space.dim_in(d))).collect())
            .collect();
        for (line, i, d, m) in blocks {
            let slot = act
                .get_mut(i)
                .and_then(|a| a.get_mut((d - lo - 2) as usize).filter(|_| d >= lo + 2))
                .ok_or_else(|| Error::Parse { line, col: 1, msg: format!("no action block for generator {i} in degree {d}") })?;
            if slot.shape() != m.shape() {
                return Err(Error::Parse { line, col: 1, msg: format!("block shape {:?} should be {:?}", m.shape(), slot.shape()) });
            }
            *slot = m;
        }
        Module::new(nvars, space, act)
    }
}

/// Whitespace-separated words with their byte columns.
fn words(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmod::Atom;
    use crate::text::parse_atom;

    #[test]
    fn round_trips() {
        for a in ["dual", "sum(cyc(3),susp(2,dual))", "tate", "koszul(Q[x,y],2)", "cyc(-3,1)", "trunc(3)", "sum()"] {
            let m = parse_atom(a).unwrap().realize(None).unwrap();
            let t = m.to_table();
            let back = Module::from_table(&t).unwrap();
            assert_eq!(back, m, "{a}");
            assert_eq!(back.to_table(), t);
        }
        let m = Atom::Dual(2).realize(Some((-2, 8))).unwrap();
        assert_eq!(Module::from_table(&m.to_table()).unwrap(), m);
    }

    #[test]
    fn fractions_survive() {
        let space = GradedSpace::finite(-2, vec![1, 0, 1]);
        let m = Module::new(1, space, vec![vec![Matrix::from_rows(vec![vec![crate::qlinalg::qf(-3, 7)]])]]).unwrap();
        let t = m.to_table();
        assert!(t.contains("act 0 d=0 1x1 -3/7"));
        assert_eq!(Module::from_table(&t).unwrap(), m);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "# cousinet-v1\nmodule nvars=1 window=0:0 below=zero above=sideways\n";
        match Module::from_table(bad) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 38)),
            other => panic!("{other:?}"),
        }
        assert!(Module::from_table("module nvars=1 window=0:2 below=zero above=zero\nd=0 dim=1\n").is_err());
    }
}
