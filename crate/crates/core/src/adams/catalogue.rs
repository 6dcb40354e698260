//! Algebraic images of standard spectra.
//!
//! ```text
//! name  = "S0" | "S^" int "z" | "EG+" | "EF~" | "G+" | "DS(" int "z)+"
//!       | "E<" sub ">" | "B(" sub "," euler "," int ")"
//! ```
//!
//! `S^nz` is the sphere of `n` copies of the natural representation
//! (`n` may be negative), `EF~` is the cofibre of `EG+ → S0`, `DS(nz)+`
//! the functional dual of the unit sphere bundle. Rank two only has the
//! structural entries `E<K>` and `B(1, 0, n)`.

use crate::atcat::{b_object, build, nz, sphere_rank1, AtObject, Desc};
use crate::error::{Error, Result};
use crate::gmod::Atom;
use crate::rings::{ConnSubgroup, Subgroup};
use crate::text::{parse_euler, parse_subgroup};

/// A named catalogue object.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub object: AtObject,
    /// The formula the object is built from.
    pub formula: String,
}

/// Rank-one entries used by the pipeline checks.
pub const RANK1: [&str; 9] = ["S0", "S^1z", "S^-1z", "S^-2z", "EG+", "EF~", "G+", "DS(1z)+", "DS(2z)+"];

/// Rank-two structural entries.
pub const RANK2: [&str; 5] = ["E<1>", "E<circle(1,0)>", "E<circle(1,1)>", "E<G>", "B(1,0,2)"];

pub fn catalogue(rank: usize, name: &str) -> Result<Entry> {
    let name = name.trim();
    let unknown = || Error::UnknownEntry(format!("{name} in rank {rank}"));
    let (object, formula) = if let Some(inner) = name.strip_prefix("E<").and_then(|s| s.strip_suffix('>')) {
        let k = parse_subgroup(inner)?;
        e_family(rank, k)?
    } else if let Some(inner) = name.strip_prefix("B(").and_then(|s| s.strip_suffix(')')) {
        let parts = split_top(inner);
        let [k, v, n] = parts.as_slice() else { return Err(unknown()) };
        let n: u32 = n.trim().parse().map_err(|_| unknown())?;
        let (k, v) = (parse_subgroup(k)?, parse_euler(v)?);
        (b_object(rank, k, &v, n)?, format!("B_{k}({}, {n})", crate::text::euler_string(&v)))
    } else if rank == 1 {
        rank1(name).ok_or_else(unknown)??
    } else {
        return Err(unknown());
    };
    Ok(Entry { name: name.to_string(), object, formula })
}

fn rank1(name: &str) -> Option<Result<(AtObject, String)>> {
    let f = |d: &str, formula: &str| Some(obj(1, d).map(|o| (o, formula.to_string())));
    match name {
        "S0" => Some(b_object(1, Subgroup::whole(), &nz(0), 1).map(|o| (o, "Q -> S^2 k[c]^v".into()))),
        "EG+" => f("f(1,(susp(2,dual)))", "S^2 f_1(k[c]^v)"),
        "EF~" => f("f(G,(dual(Q)))", "f_G(Q)"),
        "G+" => f("f(1,(cyc(2,1)))", "f_1(S^2 Q)"),
        _ => {
            if let Some(n) = name.strip_prefix("S^").and_then(|s| s.strip_suffix('z')) {
                let n: i64 = n.parse().ok()?;
                return Some(sphere_rank1(2 * n).map(|o| (o, format!("Q -> S^{} k[c]^v", 2 + 2 * n))));
            }
            let n = name.strip_prefix("DS(")?.strip_suffix("z)+")?;
            let n: u32 = n.parse().ok().filter(|&n| n > 0)?;
            f(&format!("f(1,(cyc({n})))"), &format!("f_1(k[c]/c^{n})"))
        }
    }
}

/// `E<K> = f_K(Σ^{2 dim(G/K)} H_*(BG/K))`.
fn e_family(rank: usize, k: Subgroup) -> Result<(AtObject, String)> {
    if k.order > 1 {
        return Err(Error::Unsupported("E<K> for finite subgroups".into()));
    }
    let codim = k.conn.codim(rank);
    let a = Atom::Susp(2 * codim as i64, Box::new(Atom::Dual(codim)));
    let o = build(rank, &Desc::F(k, a))?;
    let formula = match k.conn {
        ConnSubgroup::Full => format!("f_{k}(Q)"),
        _ => format!("f_{k}(S^{} H_*(BG/{k}))", 2 * codim),
    };
    Ok((o, formula))
}

fn obj(rank: usize, s: &str) -> Result<AtObject> {
    build(rank, &crate::text::parse_object(s)?)
}

/// Splits at top-level commas.
fn split_top(s: &str) -> Vec<&str> {
    let (mut out, mut depth, mut start) = (Vec::new(), 0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
