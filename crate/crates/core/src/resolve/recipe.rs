//! Explicit injective resolutions for objects without a bottom component.
//!
//! Each step embeds `X_s` into `∏_K a_K(I_K) × a_G(V_s)`, where `T_K → I_K`
//! is the socle hull of the leg at `K` and `V_s` is the top. The top map is
//! `(f_K^t q_K, id)`, which makes the embedding commute and be injective.
//! The cokernel is taken vertex by vertex with the induced structure maps.
//! Since hulls of one-variable modules have injective cokernels, the
//! sequence stops after at most three terms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atcat::{mk_a, product, AtMorphism, AtObject, Leg};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::gmod::{ModMap, Module};
use crate::homalg::{dual_sum, inj_res_kc, ChainComplex};
use crate::qlinalg::{Matrix, Q};
use crate::rings::Subgroup;

/// `0 → X → 𝕀_0 → ⋯ → 𝕀_m → 0` with the cokernels `X_s` and the maps
/// `X_s → 𝕀_s → X_{s+1}` it was assembled from.
#[derive(Clone, Debug)]
pub struct InjResolution {
    pub source: AtObject,
    /// `X_0 = source`, …, `X_{m+1} = 0`.
    pub cokernels: Vec<AtObject>,
    pub terms: Vec<AtObject>,
    pub embeds: Vec<AtMorphism>,
    pub projs: Vec<AtMorphism>,
    /// One line per choice made.
    pub log: Vec<String>,
}

/// Choices that do not change the resolution up to homotopy: a seeded
/// reordering of every hull and one split summand `Σ^a k[c]^∨` added at
/// stage 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub seed: u64,
}

impl InjResolution {
    /// Index of the last term; 0 for an injective, and for the zero object.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// `d_s: 𝕀_s → 𝕀_{s+1}`.
    pub fn differential(&self, s: usize) -> Result<AtMorphism> {
        let (Some(p), Some(e)) = (self.projs.get(s), self.embeds.get(s + 1)) else {
            return Err(Error::Invalid(format!("no differential out of stage {s}")));
        };
        e.after(p)
    }

    /// Vertices where some term is nonzero.
    pub fn vertices(&self) -> Vec<Subgroup> {
        let mut v: Vec<Subgroup> = self
            .cokernels
            .iter()
            .chain(&self.terms)
            .flat_map(|x| x.legs.iter().map(|l| l.sub))
            .collect();
        v.push(Subgroup::whole());
        v.sort();
        v.dedup();
        v
    }

    /// `0 → X(K) → 𝕀_0(K) → ⋯ → 𝕀_m(K) → 0` at a vertex.
    pub fn complex_at(&self, k: &Subgroup) -> Result<ChainComplex> {
        let comp = |x: &AtObject| -> Module {
            if *k == Subgroup::whole() {
                x.top.clone()
            } else {
                x.leg(k).map_or_else(|| Module::zero(1), |l| l.module.clone())
            }
        };
        let map = |m: &AtMorphism, x: &AtObject, y: &AtObject| -> Result<ModMap> {
            let (a, b) = (comp(x), comp(y));
            if *k == Subgroup::whole() {
                ModMap::from_fn(&a, &b, |d| m.top.block_at(d))
            } else {
                match m.leg(k) {
                    Some(f) => ModMap::from_fn(&a, &b, |d| f.block(d)),
                    None => ModMap::zero(&a, &b),
                }
            }
        };
        let mut terms = vec![comp(&self.source)];
        let mut diffs = Vec::new();
        if let Some(first) = self.terms.first() {
            diffs.push(map(&self.embeds[0], &self.source, first)?);
        }
        for (s, t) in self.terms.iter().enumerate() {
            terms.push(comp(t));
            if s + 1 < self.terms.len() {
                diffs.push(map(&self.differential(s)?, t, &self.terms[s + 1])?);
            }
        }
        ChainComplex::new(terms, diffs)
    }

    /// Exact at every vertex, tails included.
    pub fn is_exact(&self, ex: Exec) -> Result<bool> {
        if !self.cokernels.last().is_none_or(|x| x.is_zero().unwrap_or(false)) {
            return Ok(false);
        }
        for k in self.vertices() {
            if !self.complex_at(&k)?.is_acyclic(ex)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The resolution of a rank-one semifree object (legs only at the trivial
/// subgroup): `0 → T → I → J → 0` gives `X → a_1(I) × a_G(V)`, then
/// `a_1(J) × a_G(V′)`, then `a_G(V″)`.
pub fn inj_res_sf_rank1(x: &AtObject, ex: Exec) -> Result<InjResolution> {
    if x.rank != 1 || x.legs.iter().any(|l| l.sub != Subgroup::trivial()) {
        return Err(Error::Invalid("inj_res_sf_rank1 needs a rank-one semifree object".into()));
    }
    inj_res_explicit(x, None, ex)
}

/// The explicit resolution of any object without bottom or formal parts.
pub fn inj_res_explicit(x: &AtObject, shuffle: Option<Shuffle>, ex: Exec) -> Result<InjResolution> {
    if x.bottom.as_ref().map_or(Ok(false), |b| b.is_zero().map(|z| !z))? || !x.formal.is_empty() {
        return Err(Error::Unsupported("explicit resolutions need an object without a bottom component".into()));
    }
    let mut rng = shuffle.map(|s| ChaCha8Rng::seed_from_u64(s.seed));
    let mut res = InjResolution {
        source: x.clone(),
        cokernels: vec![x.clone()],
        terms: vec![],
        embeds: vec![],
        projs: vec![],
        log: vec![],
    };
    let mut cur = x.clone();
    while !cur.is_zero()? {
        let s = res.terms.len();
        if s > 3 {
            return Err(Error::Horizon("explicit resolution did not stop after three terms".into()));
        }
        let extra = match rng.as_mut() {
            Some(r) if s == 0 => Some(r.gen_range(-6..=6) * 2 + r.gen_range(0..=1)),
            _ => None,
        };
        let st = step(&cur, rng.as_mut(), extra, ex)?;
        res.log.extend(st.log);
        res.terms.push(st.term);
        res.embeds.push(st.embed);
        res.projs.push(st.proj);
        res.cokernels.push(st.next.clone());
        cur = st.next;
    }
    Ok(res)
}

struct Step {
    term: AtObject,
    embed: AtMorphism,
    next: AtObject,
    proj: AtMorphism,
    log: Vec<String>,
}

/// A hull `T → I` with the shifts of `I`.
struct Hull {
    sub: Subgroup,
    shifts: Vec<i64>,
    i: Module,
    f: ModMap,
}

fn hulls(x: &AtObject, rng: Option<&mut ChaCha8Rng>, extra: Option<i64>, ex: Exec) -> Result<Vec<Hull>> {
    let mut out = Vec::new();
    for l in &x.legs {
        let kc = inj_res_kc(&l.module, ex)?;
        out.push(Hull { sub: l.sub, shifts: kc.i_shifts, i: kc.i, f: kc.f });
    }
    let Some(rng) = rng else { return Ok(out) };
    for h in &mut out {
        let mut perm: Vec<usize> = (0..h.shifts.len()).collect();
        perm.shuffle(rng);
        *h = permuted(h, &perm)?;
    }
    if let Some(a) = extra {
        let k = out.first().map_or_else(Subgroup::trivial, |h| h.sub);
        if x.rank == 1 || k != Subgroup::trivial() {
            let pos = out.iter().position(|h| h.sub == k);
            let base = match pos {
                Some(p) => out.remove(p),
                None => {
                    let z = Module::zero(1);
                    Hull { sub: k, shifts: vec![], i: z.clone(), f: z.identity() }
                }
            };
            out.push(with_split_summand(base, a)?);
            out.sort_by_key(|a| a.sub);
        }
    }
    Ok(out)
}

/// Dimensions of each summand of `⊕Σ^{a_j}k[c]^∨` in degree `d`.
fn summand_dims(shifts: &[i64], d: i64) -> Vec<usize> {
    shifts.iter().map(|&a| usize::from(d >= a && (d - a) % 2 == 0)).collect()
}

fn permuted(h: &Hull, perm: &[usize]) -> Result<Hull> {
    let shifts: Vec<i64> = perm.iter().map(|&j| h.shifts[j]).collect();
    let i2 = dual_sum(&shifts)?;
    let p = ModMap::from_fn(&h.i, &i2, |d| {
        let old = summand_dims(&h.shifts, d);
        let new: Vec<usize> = perm.iter().map(|&j| old[j]).collect();
        let pos = |dims: &[usize], j: usize| dims[..j].iter().sum::<usize>();
        let n: usize = old.iter().sum();
        let mut m = Matrix::zeros(n, n);
        for (new_j, &old_j) in perm.iter().enumerate() {
            if new[new_j] == 1 {
                m[(pos(&new, new_j), pos(&old, old_j))] = Q::from_integer(1.into());
            }
        }
        Ok(m)
    })?;
    let f = p.compose(&h.f)?;
    Ok(Hull { sub: h.sub, shifts, i: i2, f })
}

fn with_split_summand(h: Hull, a: i64) -> Result<Hull> {
    let mut shifts = h.shifts.clone();
    shifts.push(a);
    let i2 = dual_sum(&shifts)?;
    let f = ModMap::from_fn(&h.f.src, &i2, |d| {
        let b = h.f.block(d)?;
        let pad = i2.dim(d)? - b.rows();
        Matrix::vstack(&[&b, &Matrix::zeros(pad, b.cols())])
    })?;
    Ok(Hull { sub: h.sub, shifts, i: i2, f })
}

fn step(x: &AtObject, rng: Option<&mut ChaCha8Rng>, extra: Option<i64>, ex: Exec) -> Result<Step> {
    let hs = hulls(x, rng, extra, ex)?;
    let mut log = Vec::new();
    let mut factors = Vec::new();
    for h in &hs {
        log.push(format!("hull at {}: shifts {:?}", h.sub, h.shifts));
        let mut a = mk_a(x.rank, h.sub, &h.i)?;
        a.mode = x.mode;
        factors.push(a);
    }
    let mut ag = mk_a(x.rank, Subgroup::whole(), &x.top)?;
    ag.mode = x.mode;
    factors.push(ag);
    let term = product(&factors.iter().collect::<Vec<_>>())?;

    // X → 𝕀: (f_K^t q_K, id) at the top, the hulls on the legs
    let tates = hs.iter().map(|h| h.f.tate()).collect::<Result<Vec<_>>>()?;
    let top_fn = |d: i64| -> Result<Matrix> {
        let mut rows = Vec::new();
        for (h, ft) in hs.iter().zip(&tates) {
            let blk = match x.leg(&h.sub) {
                Some(l) => ft.block(d)?.mul(&l.q_at(d)?)?,
                None => Matrix::zeros(h.i.tate_dual()?.dim(d)?, x.top.dim(d)?),
            };
            rows.push(blk);
        }
        rows.push(Matrix::identity(x.top.dim(d)?));
        Matrix::vstack(&rows.iter().collect::<Vec<_>>())
    };
    let mut legs = Vec::new();
    for h in &hs {
        let tgt = &term.leg(&h.sub).expect("hull leg is present").module;
        let src = x.leg(&h.sub).map_or_else(|| Module::zero(1), |l| l.module.clone());
        legs.push((h.sub, ModMap::from_fn(&src, tgt, |d| h.f.block(d))?));
    }
    let embed = AtMorphism::new(x, &term, 0, top_fn, legs, None)?;

    // cokernel vertex by vertex
    let top_map = ModMap::from_fn(&x.top, &term.top, |d| embed.top.block_at(d))?;
    let (v1, p_top, sec) = top_map.cokernel(ex)?;
    let v1 = v1.trimmed()?;
    let mut next = AtObject::zero(x.rank, x.mode);
    next.top = v1.clone();
    let mut proj_legs = Vec::new();
    for (sub, f) in &embed.legs {
        let il = term.leg(sub).expect("hull leg is present");
        let (j, p, _) = f.cokernel(ex)?;
        let j = j.trimmed()?;
        let p = ModMap::from_fn(&il.module, &j, |d| p.block(d))?;
        let pt = p.tate()?;
        let leg = Leg::new(&v1, *sub, j, |d| {
            pt.block(d)?.mul(&il.q_at(d)?)?.mul(&sec.block_at(d)?)
        })?;
        next.legs.push(leg);
        proj_legs.push((*sub, p));
    }
    let next = next.normalized().validate()?;
    let proj = AtMorphism::new(&term, &next, 0, |d| p_top.block(d), proj_legs, None)?;
    Ok(Step { term, embed, next, proj, log })
}
