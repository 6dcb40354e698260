//! The acceptance suite: ten exact checks, shared by the `acceptance` test
//! target and `cousinet selftest`.

mod algebra;
pub mod corpus;
mod model;

use std::time::{Duration, Instant};

use crate::error::Result;
use crate::exec::Exec;

/// Seed of every corpus in the suite.
pub const SEED: u64 = 20_241;

/// Wall-clock budget for the whole suite.
pub const BUDGET: Duration = Duration::from_secs(300);

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl Outcome {
    /// `criterion  3 PASS  Gorenstein duality: …`, without timing.
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {verdict}  {}: {}", self.id, self.name, self.detail)
    }

    pub fn timed_line(&self) -> String {
        format!("{} [{:.1}s]", self.line(), self.elapsed.as_secs_f64())
    }
}

type Check = fn(Exec) -> Result<(bool, String)>;

pub const NAMES: [&str; 10] = [
    "rank-1 semifree resolutions",
    "Ext concentration out of the vertex",
    "Gorenstein duality",
    "local cohomology of P",
    "self-duality of P/m^[n]",
    "lim^1 laws",
    "two-phase resolution certificates",
    "Ext vanishing above the injective dimension",
    "evaluation as a colimit",
    "Adams pipeline",
];

fn checks() -> [Check; 10] {
    [
        algebra::semifree_resolutions,
        algebra::ext_concentration,
        algebra::gorenstein,
        algebra::local_cohomology,
        algebra::self_duality,
        algebra::lim1_laws,
        model::general_resolutions,
        model::ext_vanishing,
        model::evaluation,
        model::adams_pipeline,
    ]
}

/// Runs criterion `id` (1-based).
pub fn run(id: usize, ex: Exec) -> Outcome {
    let start = Instant::now();
    let (pass, detail) = match checks()[id - 1](ex) {
        Ok(r) => r,
        Err(e) => (false, format!("error ({}): {e}", e.reason())),
    };
    Outcome { id, name: NAMES[id - 1], pass, detail, elapsed: start.elapsed() }
}

/// Runs all ten in order. The last criterion also requires the whole suite
/// to finish within [`BUDGET`].
pub fn run_all(ex: Exec, mut report: impl FnMut(&Outcome)) -> Vec<Outcome> {
    let start = Instant::now();
    let mut out = Vec::new();
    for id in 1..=10 {
        let mut o = run(id, ex);
        if id == 10 {
            let within = start.elapsed() <= BUDGET;
            o.pass &= within;
            o.detail.push_str(if within { "; suite within budget" } else { "; suite over budget" });
        }
        report(&o);
        out.push(o);
    }
    out
}

/// Collects failures into a detail string.
pub(crate) fn verdict(checked: usize, what: &str, bad: Vec<String>) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{checked} {what}"))
    } else {
        let n = bad.len();
        let shown: Vec<String> = bad.into_iter().take(3).collect();
        (false, format!("{n} of {checked} {what} failed: {}", shown.join("; ")))
    }
}
