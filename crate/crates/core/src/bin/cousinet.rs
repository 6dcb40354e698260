//! `cousinet`: command-line front end.
//!
//! Exit codes: 0 on success, 1 on bad input or a failed check, 2 when a
//! window, horizon or denominator set was too small to decide the answer.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cousinet::acceptance;
use cousinet::adams::{adams_e2, catalogue, grid, table_tsv, FORMAT_TAG};
use cousinet::atcat::{build, AtObject};
use cousinet::homalg::{gorenstein_embed, lcoh_floor, polynomial_ring, stable_koszul_lcoh};
use cousinet::resolve::{ext_at, id_lower_witness, inj_res_explicit, inj_res_general, Shuffle};
use cousinet::rings::MultSet;
use cousinet::text::{parse_atom, parse_forms, parse_object, parse_ring, parse_subgroup, parse_window};
use cousinet::{Error, Exec, Result};

#[derive(Parser, Debug)]
#[command(name = "cousinet", version, about = "Exact homological algebra in the torsion model of rational torus-equivariant spectra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Degree window `lo:hi`.
    #[arg(long, global = true, value_parser = window_arg, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Linear forms to invert, e.g. `x,x+y`.
    #[arg(long, global = true)]
    denoms: Option<String>,
    /// Largest power, stage or layer to compute.
    #[arg(long, global = true)]
    horizon: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Seed for the shuffled resolution choices.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Rank of the torus.
    #[arg(long, global = true, default_value_t = 1)]
    rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the module table of an atom.
    Realize { atom: String },
    /// Local cohomology of a polynomial ring, by stable Koszul complexes.
    Lcoh {
        #[arg(long, default_value = "Q[x,y]")]
        ring: String,
        /// Comma-separated variables generating the ideal.
        #[arg(long)]
        ideal: Option<String>,
        /// Connected subgroup for the Gorenstein check (with --denoms).
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Injective resolution of an object.
    Res { object: String },
    /// `Ext^{s,t}(πX, πY)` over the window.
    Ext { x: String, y: String },
    /// The Adams `E₂` page for `[X, Y]`; arguments `X=<obj> Y=<obj>`.
    E2 { x: String, y: String },
    /// The witness tower for the injective dimension lower bound.
    Witness {
        /// Largest `N`.
        #[arg(long, default_value_t = 6)]
        n: u32,
    },
    /// Run the acceptance suite.
    Selftest,
}

fn window_arg(s: &str) -> std::result::Result<(i64, i64), String> {
    parse_window(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let ex = match exec_of(cli.jobs) {
        Ok(ex) => ex,
        Err(e) => return fail(&e),
    };
    match run(&cli, ex) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error[{}]: {e}", e.reason());
    ExitCode::from(if e.is_stabilization() { 2 } else { 1 })
}

fn exec_of(jobs: Option<usize>) -> Result<Exec> {
    match jobs {
        Some(0) => Err(Error::Invalid("--jobs must be positive".into())),
        Some(1) => Ok(Exec::Sequential),
        #[cfg(feature = "parallel")]
        Some(n) => {
            // a second call only fails if the pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(Exec::Parallel)
        }
        #[cfg(not(feature = "parallel"))]
        Some(_) => Ok(Exec::Sequential),
        None => Ok(Exec::auto()),
    }
}

/// A catalogue name or an object description.
fn object(rank: usize, s: &str) -> Result<(String, AtObject)> {
    match catalogue(rank, s) {
        Ok(e) => Ok((e.name, e.object)),
        Err(Error::UnknownEntry(_)) => Ok((s.to_string(), build(rank, &parse_object(s)?)?)),
        Err(e) => Err(e),
    }
}

fn run(cli: &Cli, ex: Exec) -> Result<(String, u8)> {
    let shuffle = cli.seed.map(|seed| Shuffle { seed });
    let mut out = String::new();
    if !matches!(cli.cmd, Cmd::Realize { .. } | Cmd::Selftest) {
        writeln!(out, "{FORMAT_TAG}").unwrap();
    }
    let mut code = 0;
    match &cli.cmd {
        Cmd::Realize { atom } => out.push_str(&parse_atom(atom)?.realize(cli.window)?.to_table()),
        Cmd::Lcoh { ring, ideal, subgroup } => code = lcoh(cli, ring, ideal.as_deref(), subgroup.as_deref(), ex, &mut out)?,
        Cmd::Res { object: s } => resolution(cli, s, shuffle, ex, &mut out)?,
        Cmd::Ext { x, y } => {
            let (xn, xo) = object(cli.rank, x)?;
            let (yn, yo) = object(cli.rank, y)?;
            let (lo, hi) = cli.window.unwrap_or((-10, 10));
            let degrees: Vec<i64> = (lo..=hi).collect();
            let table = ext_at(&xo, &yo, &degrees, shuffle, ex)?;
            writeln!(out, "# Ext X={xn} Y={yn} rank={}", cli.rank).unwrap();
            match cli.format {
                Format::Tsv => out.push_str(&table_tsv(&table)),
                Format::Pretty => out.push_str(&grid(&table, None)),
            }
        }
        Cmd::E2 { x, y } => {
            let x = x.strip_prefix("X=").unwrap_or(x);
            let y = y.strip_prefix("Y=").unwrap_or(y);
            let (xn, xo) = object(cli.rank, x)?;
            let (yn, yo) = object(cli.rank, y)?;
            let page = adams_e2((&xn, &xo), (&yn, &yo), cli.window.unwrap_or((-10, 10)), shuffle, ex)?;
            out.clear();
            out.push_str(&match cli.format {
                Format::Tsv => page.to_tsv(),
                Format::Pretty => page.to_pretty(),
            });
        }
        Cmd::Witness { n } => {
            let horizon = cli.horizon.unwrap_or(8) as usize;
            let r = id_lower_witness(cli.rank, *n, horizon, ex)?;
            writeln!(out, "# witness rank={} horizon={} interval={}..{}", r.rank, r.horizon, r.interval.0, r.interval.1).unwrap();
            writeln!(out, "N\timages\tstabilized\tlim1\tclosed_form").unwrap();
            for row in &r.rows {
                let lim1 = row.lim1.map_or("-".to_string(), |l| l.to_string());
                writeln!(out, "{}\t{}\t{}\t{lim1}\t{}", row.n, join(&row.image_dims), row.stabilized, row.matches_closed_form())
                    .unwrap();
            }
            let ctl = r.control_lim1.map_or("unsettled".to_string(), |l| l.to_string());
            writeln!(out, "# control lim1 {ctl}, annihilated {}", r.annihilated).unwrap();
        }
        Cmd::Selftest => {
            let outcomes = acceptance::run_all(ex, |o| println!("{}", o.line()));
            let passed = outcomes.iter().filter(|o| o.pass).count();
            writeln!(out, "acceptance: {passed} of {} passed", outcomes.len()).unwrap();
            if passed < outcomes.len() {
                code = 1;
            }
        }
    }
    Ok((out, code))
}

/// Variable names of `Q[..]`, for the ideal and the forms.
fn ring_vars(ring: &str) -> Result<Vec<&str>> {
    let n = parse_ring(ring)?;
    let names: Vec<&str> = ring
        .split_once('[')
        .map(|(_, r)| r.trim_end_matches(']').split(',').map(str::trim).collect())
        .unwrap_or_default();
    debug_assert_eq!(names.len(), n);
    Ok(names)
}

fn lcoh(cli: &Cli, ring: &str, ideal: Option<&str>, sub: Option<&str>, ex: Exec, out: &mut String) -> Result<u8> {
    let vars = ring_vars(ring)?;
    let n = vars.len();
    if n == 0 {
        return Err(Error::Invalid("local cohomology needs at least one variable".into()));
    }
    let (lo, hi) = cli.window.unwrap_or((-20, 20));
    if let Some(denoms) = &cli.denoms {
        let top = parse_subgroup(sub.unwrap_or("1"))?.conn;
        let ms = MultSet::new(n, top, parse_forms(denoms, &vars)?)?;
        let r = gorenstein_embed(&ms, (lo, hi), cli.horizon.unwrap_or(3), ex)?;
        writeln!(out, "# gorenstein K={} s={} layers={}", r.k, r.s, r.layers).unwrap();
        writeln!(out, "t\tpole_order\tlhs\trhs\tiso").unwrap();
        for d in &r.degrees {
            writeln!(out, "{}\t{}\t{}\t{}\t{}", d.degree, d.pole_order, d.lhs_dim, d.rhs_dim, d.iso).unwrap();
        }
        writeln!(out, "# layer ranks {:?}, expected {:?}", r.layer_ranks, r.expected_layer_ranks).unwrap();
        writeln!(out, "# certified {}, stable {}", r.certified(), r.stable()).unwrap();
        if !r.stable() {
            return Err(Error::EnlargeS(format!("adjoining {} changes the answer", r.enlargement.map(|e| e.form.to_string()).unwrap_or_default())));
        }
        return Ok(if r.certified() { 0 } else { 1 });
    }
    let ideal: Vec<usize> = match ideal {
        None => (0..n).collect(),
        Some(s) => s
            .split(',')
            .map(|v| {
                let v = v.trim();
                vars.iter().position(|&w| w == v).ok_or_else(|| Error::Invalid(format!("unknown variable '{v}' in {ring}")))
            })
            .collect::<Result<_>>()?,
    };
    let degrees: Vec<i64> = (lo..=hi).collect();
    let horizon = cli.horizon.unwrap_or(12);
    let m = polynomial_ring(n, lcoh_floor(&degrees, ideal.len(), horizon))?;
    let r = stable_koszul_lcoh(&m, &ideal, &degrees, horizon, ex)?;
    writeln!(out, "# lcoh {ring} ideal=({}) horizon={}", ideal.iter().map(|&i| vars[i]).collect::<Vec<_>>().join(","), r.horizon).unwrap();
    writeln!(out, "s\tt\tdim").unwrap();
    for (i, row) in r.dims.iter().enumerate() {
        for (k, &d) in row.iter().enumerate() {
            if d > 0 {
                writeln!(out, "{i}\t{}\t{d}", r.degrees[k]).unwrap();
            }
        }
    }
    if !r.all_stabilized() {
        let bad: Vec<String> = r
            .stabilized
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().filter(|x| !*x.1).map(move |(k, _)| (i, k)))
            .map(|(i, k)| format!("H^{i} in degree {}", r.degrees[k]))
            .take(3)
            .collect();
        return Err(Error::Horizon(format!("not stable by power {}: {}", r.horizon, bad.join(", "))));
    }
    Ok(0)
}

fn resolution(cli: &Cli, s: &str, shuffle: Option<Shuffle>, ex: Exec, out: &mut String) -> Result<()> {
    let (name, x) = object(cli.rank, s)?;
    let window = cli.window.unwrap_or((-8, 8));
    match inj_res_explicit(&x, shuffle, ex) {
        Ok(r) => {
            writeln!(out, "# resolution of {name}: explicit, length {}", r.length()).unwrap();
            for (i, t) in r.terms.iter().enumerate() {
                writeln!(out, "# I{i} = {t}").unwrap();
            }
            writeln!(out, "vertex\tt\tdims\tranks").unwrap();
            for k in r.vertices() {
                let c = r.complex_at(&k)?;
                for d in window.0..=window.1 {
                    let dims = c.terms.iter().map(|m| m.dim(d)).collect::<Result<Vec<_>>>()?;
                    let ranks = c.diffs.iter().map(|f| f.block(d).map(|b| b.rank())).collect::<Result<Vec<_>>>()?;
                    if dims.iter().any(|&n| n > 0) {
                        writeln!(out, "{k}\t{d}\t{}\t{}", join(&dims), join(&ranks)).unwrap();
                    }
                }
            }
            for l in &r.log {
                writeln!(out, "# {l}").unwrap();
            }
        }
        Err(Error::Unsupported(_)) => {
            let r = inj_res_general(&x, window, ex)?;
            writeln!(out, "# resolution of {name}: two-phase, length {}", r.length()).unwrap();
            writeln!(out, "stage\tvertex\tcodim\tid\tformal").unwrap();
            for (i, st) in r.stages.iter().enumerate() {
                for v in st.iter().filter(|v| !v.is_zero()) {
                    let id = v.id().map_or("-".to_string(), |n| n.to_string());
                    writeln!(out, "{i}\t{}\t{}\t{id}\t{}", v.sub, v.codim, v.formal).unwrap();
                }
            }
            for c in &r.certs {
                writeln!(out, "# cert stage {} phase {}: {} ({})", c.stage, c.phase, if c.holds { "holds" } else { "FAILS" }, c.detail).unwrap();
            }
            writeln!(out, "# certified {}, exact {}", r.certified(), r.exact).unwrap();
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

fn join(v: &[usize]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}
