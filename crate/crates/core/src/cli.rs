//! Command-line front end. `run` returns the exit status and everything
//! that would go to stdout, so tests can drive it without a process.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};

use crate::construct::{construct, target_count};
use crate::cube::{AugmentedCube, Vertex};
use crate::error::Error;
use crate::flow::connectivity;
use crate::format::{parse_family, write_family};
use crate::graph::{parse_edge_list, write_edge_list, ExplicitGraph, Graph, GraphHeader};
use crate::oracle::{
    self, common_neighbors, max_common, max_dpaths, pi3_exact, witness_triple, Pi3Mode, Pi3Options,
    DEFAULT_BUDGET,
};
use crate::verify::{check_family, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "aqpath",
    version,
    about = "Disjoint paths through vertex triples of augmented cubes"
)]
struct Cli {
    /// Worker threads; defaults to AQPATH_JOBS, then to the number of CPUs.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the edge list of AQ_n.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<String>,
    },
    /// List the neighbours of a vertex with their mask labels.
    Neighbors {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        v: String,
    },
    /// Build and verify a D-path family.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        triple: String,
        #[arg(long)]
        trace: bool,
    },
    /// Check a family file against AQ_n.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        family: String,
    },
    /// Exact maximum number of disjoint D-paths for one triple.
    Oracle {
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        graph: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        triple: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Minimum over triples of the exact value.
    Pi3 {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Counting bound next to the constructive count.
    Bounds {
        #[arg(long)]
        n: u32,
    },
    /// Triple with four common neighbours.
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        printed_variant: bool,
    },
    /// Run the acceptance sweep up to dimension `nmax`.
    Report {
        #[arg(long, default_value_t = 5)]
        nmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

type Outcome = Result<(i32, String), Error>;

fn error_status(e: &Error) -> i32 {
    match e {
        Error::Construction(_) => EXIT_REFUTED,
        _ => EXIT_USAGE,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    let jobs = cli
        .jobs
        .or_else(|| {
            std::env::var("AQPATH_JOBS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return (EXIT_USAGE, format!("error: {e}\n")),
    };
    match pool.install(|| dispatch(cli.cmd)) {
        Ok(r) => r,
        Err(e) => (error_status(&e), format!("error: {e}\n")),
    }
}

fn dispatch(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Gen { n, out } => gen(n, out),
        Cmd::Neighbors { n, v } => neighbors(n, &v),
        Cmd::Construct { n, triple, trace } => construct_cmd(n, &triple, trace),
        Cmd::Verify { n, family } => verify_cmd(n, &family),
        Cmd::Oracle {
            graph,
            n,
            triple,
            budget,
        } => oracle_cmd(graph, n, &triple, budget),
        Cmd::Pi3 {
            n,
            mode,
            seed,
            count,
            budget,
        } => pi3_cmd(n, mode, seed, count, budget),
        Cmd::Bounds { n } => bounds(n),
        Cmd::Witness { n, printed_variant } => witness(n, printed_variant),
        Cmd::Report { nmax, seed } => report(nmax, seed),
    }
}

fn read(path: &str) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn parse_triple(s: &str, bits: u32) -> Result<[Vertex; 3], Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Invalid(format!(
            "expected three comma-separated vertices, got {s:?}"
        )));
    }
    let mut out = [Vertex(0); 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = Vertex::parse_binary(p.trim(), bits)?;
    }
    Ok(out)
}

fn triple_text(d: [Vertex; 3], bits: u32) -> String {
    d.map(|v| v.to_binary(bits)).join(",")
}

fn gen(n: u32, out: Option<String>) -> Outcome {
    let cube = AugmentedCube::new(n)?;
    let text = write_edge_list(&cube, GraphHeader::Cube(n));
    match out {
        Some(path) => {
            fs::write(&path, text).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
            Ok((EXIT_OK, String::new()))
        }
        None => Ok((EXIT_OK, text)),
    }
}

fn neighbors(n: u32, v: &str) -> Outcome {
    let cube = AugmentedCube::new(n)?;
    let x = Vertex::parse_binary(v, n)?;
    let mut out = String::new();
    for (mask, w) in cube.labeled_neighbors(x) {
        writeln!(out, "{} {}", mask.label(), w.to_binary(n)).unwrap();
    }
    Ok((EXIT_OK, out))
}

fn construct_cmd(n: u32, triple: &str, trace: bool) -> Outcome {
    let d = parse_triple(triple, n)?;
    let fam = construct(n, d)?;
    let cube = AugmentedCube::new(n)?;
    let comments = if trace { fam.trace.lines() } else { Vec::new() };
    let mut out = write_family(n, d, &fam.paths, &comments);
    match check_family(&cube, d, &fam.paths) {
        Verdict::Accept(k) => {
            if fam.trace.fallback() {
                out.push_str("# fallback used\n");
            }
            writeln!(out, "OK {k}").unwrap();
            Ok((EXIT_OK, out))
        }
        Verdict::Reject(v) => {
            writeln!(out, "VIOLATION {} {}", v.kind, v.detail(n)).unwrap();
            Ok((EXIT_REFUTED, out))
        }
    }
}

fn verify_cmd(n: u32, family: &str) -> Outcome {
    let cube = AugmentedCube::new(n)?;
    let parsed = parse_family(&read(family)?, n)?;
    Ok(match check_family(&cube, parsed.terminals, &parsed.paths) {
        Verdict::Accept(k) => (EXIT_OK, format!("OK {k}\n")),
        Verdict::Reject(v) => (
            EXIT_REFUTED,
            format!("VIOLATION {} {}\n", v.kind, v.detail(n)),
        ),
    })
}

fn oracle_cmd(graph: Option<String>, n: Option<u32>, triple: &str, budget: u64) -> Outcome {
    let (name, g): (String, ExplicitGraph) = match (graph, n) {
        (Some(path), _) => {
            let (header, g) = parse_edge_list(&read(&path)?)?;
            let name = match header {
                GraphHeader::Cube(n) => format!("AQ{n}"),
                GraphHeader::General(_) => path.clone(),
            };
            (name, g)
        }
        (None, Some(n)) => (
            format!("AQ{n}"),
            ExplicitGraph::from_graph(&AugmentedCube::new(n)?),
        ),
        (None, None) => return Err(Error::Invalid("need --graph or --n".into())),
    };
    let bits = g.label_bits();
    let d = parse_triple(triple, bits)?;
    let r = max_dpaths(&g, d, budget)?;
    let mut out = write_family(bits, d, &r.paths, &[]);
    writeln!(
        out,
        "PI {} {} {} nodes={}",
        name,
        triple_text(d, bits),
        r.count,
        r.nodes
    )
    .unwrap();
    Ok((EXIT_OK, out))
}

fn pi3_cmd(n: u32, mode: Mode, seed: Option<u64>, count: Option<usize>, budget: u64) -> Outcome {
    let mode = match mode {
        Mode::Exhaustive => Pi3Mode::Exhaustive,
        Mode::Sampled => {
            let (Some(seed), Some(count)) = (seed, count) else {
                return Err(Error::Invalid(
                    "sampled mode needs --seed and --count".into(),
                ));
            };
            Pi3Mode::Sampled { seed, count }
        }
    };
    let cube = AugmentedCube::new(n)?;
    let r = pi3_exact(
        &cube,
        mode,
        Pi3Options {
            budget,
            pin_zero: true,
        },
    )?;
    Ok((
        EXIT_OK,
        format!(
            "PI3 AQ{} {} {}\nTRIPLES {}\n",
            n,
            r.value,
            triple_text(r.argmin, n),
            r.triples
        ),
    ))
}

fn bounds(n: u32) -> Outcome {
    let b = oracle::cube_packing_bound(n)?;
    let t = target_count(n)?;
    let code = if b == t { EXIT_OK } else { EXIT_REFUTED };
    Ok((code, format!("BOUND {n} {b}\nTARGET {n} {t}\n")))
}

fn witness(n: u32, printed: bool) -> Outcome {
    let w = witness_triple(n, printed)?;
    let cube = AugmentedCube::new(n)?;
    let common = common_neighbors(&cube, &w.terminals)?;
    let mut out = String::new();
    writeln!(out, "WITNESS {} {}", n, triple_text(w.terminals, n)).unwrap();
    let cn: Vec<String> = common.iter().map(|v| v.to_binary(n)).collect();
    writeln!(out, "COMMON {} {}", common.len(), cn.join(" ")).unwrap();
    for (t, e, ok) in &w.certificate {
        writeln!(
            out,
            "ADJ {} {} {}",
            t.to_binary(n),
            e.to_binary(n),
            if *ok { "yes" } else { "no" }
        )
        .unwrap();
    }
    if w.certified() && common.len() == 4 {
        return Ok((EXIT_OK, out));
    }
    let fixed = witness_triple(n, false)?;
    writeln!(
        out,
        "DEVIATION z={} has {} common neighbours; z={} has the expected four",
        w.terminals[2].to_binary(n),
        common.len(),
        fixed.terminals[2].to_binary(n)
    )
    .unwrap();
    Ok((EXIT_REFUTED, out))
}

/// One summary row per check; any refuted row makes the exit status 1.
fn report(nmax: u32, seed: u64) -> Outcome {
    if !(4..=7).contains(&nmax) {
        return Err(Error::ResourceGuard(format!(
            "report supports 4 <= nmax <= 7, got {nmax}"
        )));
    }
    let mut rows: Vec<(String, String, bool)> = Vec::new();
    let opts = Pi3Options {
        budget: DEFAULT_BUDGET,
        pin_zero: true,
    };
    for n in 3..=nmax.min(5) {
        let cube = AugmentedCube::new(n)?;
        let k = connectivity(&cube);
        let want = if n == 3 { 4 } else { 2 * n as usize - 1 };
        rows.push((format!("connectivity AQ{n}"), k.to_string(), k == want));
    }
    for n in 3..=nmax.min(6) {
        let cube = AugmentedCube::new(n)?;
        let (pair, _) = max_common(&cube, 2, true)?;
        let ok = if n >= 4 { pair == 4 } else { pair <= 4 };
        rows.push((format!("pair common AQ{n}"), pair.to_string(), ok));
        if n >= 4 {
            let (tri, _) = max_common(&cube, 3, true)?;
            rows.push((format!("triple common AQ{n}"), tri.to_string(), tri == 4));
        }
    }
    let mut bound_ok = true;
    for n in 4..=64 {
        bound_ok &= oracle::cube_packing_bound(n)? == target_count(n)?;
    }
    rows.push((
        "bound identity 4..64".into(),
        bound_ok.to_string(),
        bound_ok,
    ));
    let mut pi3_lines = Vec::new();
    for n in 4..=nmax.min(6) {
        let cube = AugmentedCube::new(n)?;
        let r = pi3_exact(&cube, Pi3Mode::Exhaustive, opts)?;
        let t = target_count(n)?;
        rows.push((format!("pi3 AQ{n}"), r.value.to_string(), r.value == t));
        pi3_lines.push(format!(
            "PI3 AQ{} {} {}",
            n,
            r.value,
            triple_text(r.argmin, n)
        ));
    }
    for n in 4..=nmax {
        let (checked, bad, fallbacks) = construct_sweep(n, seed)?;
        rows.push((
            format!("construct AQ{n} ({checked} triples, {fallbacks} fallbacks)"),
            format!("{bad} rejected"),
            bad == 0 && fallbacks * 100 < checked,
        ));
    }
    for n in 4..=nmax.min(6) {
        let w = witness_triple(n, false)?;
        let cube = AugmentedCube::new(n)?;
        let r = max_dpaths(&cube, w.terminals, DEFAULT_BUDGET)?;
        rows.push((
            format!("witness AQ{n}"),
            r.count.to_string(),
            r.count == target_count(n)?,
        ));
    }
    let mut out = String::new();
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    let mut all = true;
    for (name, value, ok) in &rows {
        all &= ok;
        writeln!(
            out,
            "{:<width$}  {:>12}  {}",
            name,
            value,
            if *ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
    }
    for line in &pi3_lines {
        writeln!(out, "{line}").unwrap();
    }
    for n in 4..=nmax {
        writeln!(out, "BOUND {} {}", n, oracle::cube_packing_bound(n)?).unwrap();
    }
    Ok((if all { EXIT_OK } else { EXIT_REFUTED }, out))
}

/// Constructs every pinned triple for `n <= 6` and a seeded sample of
/// 2000 triples above. Returns (triples, rejected, fallbacks).
pub fn construct_sweep(n: u32, seed: u64) -> Result<(usize, usize, usize), Error> {
    use rayon::prelude::*;
    let triples = sweep_triples(n, seed, 2000)?;
    let cube = AugmentedCube::new(n)?;
    let target = target_count(n)?;
    let results: Vec<(bool, bool)> = triples
        .par_iter()
        .map(|&d| match construct(n, d) {
            Ok(f) => (
                matches!(check_family(&cube, d, &f.paths), Verdict::Accept(k) if k == target),
                f.trace.fallback(),
            ),
            Err(_) => (false, false),
        })
        .collect();
    let bad = results.iter().filter(|r| !r.0).count();
    let fb = results.iter().filter(|r| r.1).count();
    Ok((triples.len(), bad, fb))
}

/// Pinned triples `{0, u, v}` for small cubes, a seeded sample otherwise.
pub fn sweep_triples(n: u32, seed: u64, count: usize) -> Result<Vec<[Vertex; 3]>, Error> {
    use rand::seq::index::sample;
    use rand::SeedableRng;
    let order = 1usize << n;
    if n <= 6 {
        let mut out = Vec::new();
        for u in 1..order as u32 {
            for v in u + 1..order as u32 {
                out.push([Vertex(0), Vertex(u), Vertex(v)]);
            }
        }
        return Ok(out);
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let idx = sample(&mut rng, order, 3);
            [
                Vertex(idx.index(0) as u32),
                Vertex(idx.index(1) as u32),
                Vertex(idx.index(2) as u32),
            ]
        })
        .collect())
}
