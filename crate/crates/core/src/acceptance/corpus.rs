//! Seeded corpora. Objects are generated as text and parsed, so every entry
//! has a printable description.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atcat::{build, AtObject};
use crate::error::Result;
use crate::gmod::Atom;
use crate::resolve::SAMPLE_CIRCLES;
use crate::text::parse_object;

/// A finite sum of `Σ^a k[c]/cⁿ` and `Σ^a k[c]^∨` with `|a| ≤ 10`, `n ≤ 5`.
pub fn rank1_atom(rng: &mut ChaCha8Rng) -> Atom {
    let parts = rng.gen_range(1..=3);
    let mut out = Vec::new();
    for _ in 0..parts {
        let a = rng.gen_range(-10..=10);
        if rng.gen_bool(0.6) {
            out.push(Atom::Cyclic(a, rng.gen_range(1..=5)));
        } else {
            out.push(Atom::Susp(a, Box::new(Atom::Dual(1))));
        }
    }
    if out.len() == 1 {
        out.pop().unwrap()
    } else {
        Atom::Sum(out)
    }
}

pub fn rank1_atoms(seed: u64, count: usize) -> Vec<Atom> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rank1_atom(&mut rng)).collect()
}

/// Semifree rank-one objects: `f_1(T)`, `a_1(T)`, and products of those with
/// `f_G`, `a_G` of a shifted `ℚ` or with a sphere.
pub fn rank1_objects(seed: u64, count: usize) -> Result<Vec<(String, AtObject)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let t = rank1_atom(&mut rng);
        let j = 2 * rng.gen_range(-3..=3);
        let s = match rng.gen_range(0..5) {
            0 => format!("f(1,({t}))"),
            1 => format!("a(1,({t}))"),
            2 => format!("prod(f(1,({t})),f(G,(susp({j},dual(Q)))))"),
            3 => format!("prod(a(1,({t})),b(G,0,1))"),
            _ => format!("prod(f(1,({t})),a(G,(susp({j},dual(Q)))))"),
        };
        out.push((s.clone(), build(1, &parse_object(&s)?)?));
    }
    Ok(out)
}

/// A finite-length or Artinian module over `ℚ[x,y]`.
fn plane_atom(rng: &mut ChaCha8Rng) -> String {
    let a = 2 * rng.gen_range(-3..=3);
    match rng.gen_range(0..3) {
        0 => format!("susp({a},koszul(Q[x,y],{}))", rng.gen_range(1..=3)),
        1 => format!("susp({a},dual(Q[x,y]))"),
        _ => format!("sum(koszul(Q[x,y],{}),susp({a},koszul(Q[x,y],1)))", rng.gen_range(1..=2)),
    }
}

fn circle_atom(rng: &mut ChaCha8Rng) -> String {
    let a = rng.gen_range(-4..=4);
    match rng.gen_range(0..3) {
        0 => format!("cyc({a},{})", rng.gen_range(1..=3)),
        1 => format!("susp({a},dual)"),
        _ => format!("sum(cyc({a},2),dual)"),
    }
}

fn rank2_piece(rng: &mut ChaCha8Rng) -> String {
    let (p, q) = *SAMPLE_CIRCLES.choose(rng).unwrap();
    match rng.gen_range(0..6) {
        0 | 1 => format!("f(1,({}))", plane_atom(rng)),
        2 => format!("a(1,(susp({},dual(Q[x,y]))))", 2 * rng.gen_range(-2..=2)),
        3 => format!("f(circle({p},{q}),({}))", circle_atom(rng)),
        4 => format!("a(circle({p},{q}),({}))", circle_atom(rng)),
        _ => format!("f(G,(susp({},dual(Q))))", 2 * rng.gen_range(-2..=2)),
    }
}

/// Finitely supported Artinian rank-two objects: one or two pieces at the
/// trivial subgroup, the sample circles and `G`.
pub fn rank2_objects(seed: u64, count: usize) -> Result<Vec<(String, AtObject)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let s = if rng.gen_bool(0.6) {
            rank2_piece(&mut rng)
        } else {
            format!("prod({},{})", rank2_piece(&mut rng), rank2_piece(&mut rng))
        };
        out.push((s.clone(), build(2, &parse_object(&s)?)?));
    }
    Ok(out)
}
