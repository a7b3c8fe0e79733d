//! Command-line front end.
//!
//! Every subcommand reads the edge-list/window format (or generates it),
//! writes a deterministic report, and maps the outcome to an exit code:
//! 0 for success or pass, 1 for a violation, 2 for usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::format::{parse_window, write_graph, write_window};
use crate::generators::{
    cayley_ball, close_window, fixture, grandparent_window_with_branching, permutation_from_cycles,
    schreier_graph, ActionSpec, Fixture, GroupSpec,
};
use crate::graph::{Edge, Graph, Window};
use crate::layered::{build_nets, build_schedule, run_layered_matching};
use crate::matching::{max_matching, MatchingState};
use crate::orientation::{
    balanced_orientation_via_gadget, build_window_gadget, check_gadget_hall_expansion, eulerian_orientation,
    verify_balanced, GadgetGraph, GadgetNode, HallMinimum, SideAudit,
};
use crate::tutte::{check_tutte_eps_k, expansion_constant, verify_expansion_lemma, TutteReport};
use crate::Rational;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "TUTTELAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "tuttelab", version, about = "Perfect matchings, Tutte conditions and balanced orientations on graph windows")]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit a window or graph in edge-list format.
    Generate(GenerateArgs),
    /// Maximum matching.
    Match {
        input: PathBuf,
    },
    /// Exhaustive Tutte_{eps,k} check over |X| <= max-x.
    VerifyTutte {
        input: PathBuf,
        #[arg(long, default_value = "0", value_parser = parse_rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_x: usize,
        /// Violation lines to print; the total is always reported.
        #[arg(long, default_value_t = 20)]
        show: usize,
    },
    /// Edge expansion lower bound, optionally with the expansion lemma check.
    Expansion {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_f: usize,
        #[arg(long)]
        connected_only: bool,
        /// Regular degree d; together with --delta runs the lemma check.
        #[arg(long, requires = "delta")]
        degree: Option<usize>,
        #[arg(long, requires = "degree", value_parser = parse_rational)]
        delta: Option<Rational>,
        #[arg(long, default_value_t = 4)]
        max_x: usize,
        #[arg(long, default_value_t = 20)]
        show: usize,
    },
    /// Layered matching with per-level certificates.
    Layered {
        input: PathBuf,
        #[arg(long, default_value = "1/2", value_parser = parse_rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 2)]
        levels: usize,
        #[arg(long, default_value_t = 4)]
        cert_max_x: usize,
    },
    /// Balanced orientation of an even-degree graph.
    Orient {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Gadget)]
        method: Method,
    },
    /// Hall expansion audit of the orientation gadget.
    GadgetAudit {
        input: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        epsilon: Rational,
        #[arg(long, default_value_t = 4)]
        max_f: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Gadget,
    Euler,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Ball in the free group of this rank (needs --radius).
    #[arg(long)]
    pub free_rank: Option<usize>,
    /// Ball in a free product of cyclic groups, orders like "2,2,2".
    #[arg(long, value_name = "ORDERS")]
    pub free_product: Option<String>,
    /// Ball in Z^D (needs --radius).
    #[arg(long, value_name = "D")]
    pub grid: Option<usize>,
    #[arg(long)]
    pub radius: Option<usize>,
    /// Truncated grandparent graph of this depth.
    #[arg(long, value_name = "DEPTH")]
    pub grandparent: Option<usize>,
    #[arg(long, default_value_t = 2)]
    pub branching: usize,
    /// Point count of a permutation action (with one --perm per generator).
    #[arg(long)]
    pub points: Option<usize>,
    /// Generator in cycle notation, e.g. "0 1,2 3".
    #[arg(long = "perm", value_name = "CYCLES")]
    pub perms: Vec<String>,
    /// Named graph: path:N, cycle:N, complete:N, star:N, petersen, random-regular:N:D:SEED.
    #[arg(long, value_name = "SPEC")]
    pub fixture: Option<Fixture>,
    /// Close the window into a finite even-order graph.
    #[arg(long)]
    pub close: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| format!("expected a rational like 1/2: {e}"))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    Violation,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Violation => 1,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Success
        } else {
            Status::Violation
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: Status,
    /// Informational lines for stderr.
    pub notes: Vec<String>,
}

/// Parses `args` (program name first), runs, writes the report and returns
/// the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return 2;
    }
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = fs::write(path, &outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.text),
    }
    outcome.status.code()
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // a second initialization in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let mut notes = Vec::new();
    let (text, status) = match &cli.command {
        Command::Generate(args) => (generate(args, &mut notes)?, Status::Success),
        Command::Match { input } => (match_report(&read_window(input)?.graph), Status::Success),
        Command::VerifyTutte {
            input,
            epsilon,
            k,
            max_x,
            show,
        } => {
            let w = read_window(input)?;
            let report = check_tutte_eps_k(&w, *epsilon, *k, *max_x)?;
            (tutte_report(&report, *show), Status::from_pass(report.passed()))
        }
        Command::Expansion {
            input,
            max_f,
            connected_only,
            degree,
            delta,
            max_x,
            show,
        } => {
            let w = read_window(input)?;
            let report = expansion_constant::<Rational>(&w, *max_f, *connected_only)?;
            let mut out = format!(
                "delta_lower={} witness={} boundary={} max_f={} connected_only={} exhaustive={} candidates={}\n",
                q(&report.delta_lower),
                set(&report.delta_witness),
                report.witness_boundary,
                report.max_f,
                yes(report.connected_only),
                yes(report.exhaustive),
                report.candidates
            );
            let mut status = Status::Success;
            if let (Some(d), Some(delta)) = (degree, delta) {
                let lemma = verify_expansion_lemma(&w, *d, *delta, *max_x)?;
                write!(out, "lemma={} degree={d} delta={} ", lemma.verdict().as_str(), q(delta)).unwrap();
                out.push_str(&tutte_report(&lemma, *show));
                status = Status::from_pass(lemma.passed());
            }
            (out, status)
        }
        Command::Layered {
            input,
            epsilon,
            levels,
            cert_max_x,
        } => layered_report(&read_window(input)?, *epsilon, *levels, *cert_max_x)?,
        Command::Orient { input, method } => {
            let g = read_window(input)?.graph;
            let o = match method {
                Method::Gadget => balanced_orientation_via_gadget(&g)?,
                Method::Euler => eulerian_orientation(&g)?,
            };
            let all: Vec<usize> = g.vertices().collect();
            let balanced = verify_balanced(&g, &o, &all).passed();
            (o.to_string(), Status::from_pass(balanced))
        }
        Command::GadgetAudit { input, epsilon, max_f } => {
            let w = read_window(input)?;
            let gadget = build_window_gadget(&w)?;
            let audit = check_gadget_hall_expansion(&gadget, w.external_stubs(), *epsilon, *max_f)?;
            let mut out = format!(
                "epsilon={} max_f={} with_credit={} without_credit={}\n",
                q(&audit.epsilon),
                audit.max_f,
                verdict(audit.passed_with_credit()),
                verdict(audit.passed_without_credit())
            );
            for side in [&audit.edge_side, &audit.vertex_side] {
                out.push_str(&side_line(&gadget, side));
            }
            (out, Status::from_pass(audit.passed_with_credit()))
        }
    };
    Ok(Outcome { text, status, notes })
}

fn read_window(path: &Path) -> Result<Window> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_window(&text)
}

fn generate(args: &GenerateArgs, notes: &mut Vec<String>) -> Result<String> {
    let group = [
        args.free_rank.map(|rank| GroupSpec::Free { rank }),
        args.grid.map(|dimension| GroupSpec::AbelianGrid { dimension }),
        args.free_product
            .as_deref()
            .map(parse_orders)
            .transpose()?
            .map(|orders| GroupSpec::FreeProductOfCyclic { orders }),
    ];
    let sources = group.iter().filter(|g| g.is_some()).count()
        + usize::from(args.grandparent.is_some())
        + usize::from(args.points.is_some())
        + usize::from(args.fixture.is_some());
    if sources != 1 {
        return Err(Error::InvalidInput(
            "give exactly one of --free-rank, --free-product, --grid, --grandparent, --points, --fixture".into(),
        ));
    }
    if args.points.is_none() && !args.perms.is_empty() {
        return Err(Error::InvalidInput("--perm needs --points".into()));
    }
    let window = if let Some(spec) = group.into_iter().flatten().next() {
        let radius = args
            .radius
            .ok_or_else(|| Error::InvalidInput("group balls need --radius".into()))?;
        cayley_ball(&spec, radius)?
    } else if let Some(depth) = args.grandparent {
        grandparent_window_with_branching(depth, args.branching)?
    } else if let Some(points) = args.points {
        let generators = args
            .perms
            .iter()
            .map(|c| permutation_from_cycles(points, c))
            .collect::<Result<Vec<_>>>()?;
        let s = schreier_graph(&ActionSpec {
            point_count: points,
            generators,
        })?;
        notes.push(format!(
            "loops_dropped={} duplicates_collapsed={}",
            s.collapsed.loops_dropped, s.collapsed.duplicates_collapsed
        ));
        Window::closed(s.graph)
    } else {
        Window::closed(fixture(args.fixture.as_ref().expect("one source is set"))?)
    };
    if args.close {
        return Ok(write_graph(&close_window(&window, args.seed)?));
    }
    Ok(write_window(&window))
}

fn parse_orders(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad cyclic order {t:?}")))
        })
        .collect()
}

fn q(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn set(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn matching_lines(g: &Graph, m: &MatchingState) -> String {
    let mut out = String::new();
    for e in m.edges() {
        writeln!(out, "{e}").unwrap();
    }
    writeln!(out, "size={} perfect={}", m.len(), yes(m.is_perfect_for(g))).unwrap();
    out
}

fn match_report(g: &Graph) -> String {
    matching_lines(g, &max_matching(g))
}

fn tutte_report(report: &TutteReport<Rational>, show: usize) -> String {
    let mut out = format!(
        "verdict={} epsilon={} k={} max_x={} candidates={} violations={}\n",
        report.verdict().as_str(),
        q(&report.epsilon),
        report.k,
        report.max_x,
        report.candidates,
        report.violations.len()
    );
    let shown = &report.violations[..report.violations.len().min(show)];
    for v in shown {
        write!(
            out,
            "violation x={} kind={} components={} hull={} slack={}",
            set(&v.x),
            v.kind.as_str(),
            v.components,
            v.hull_size,
            q(&v.slack)
        )
        .unwrap();
        if let Some(c) = &v.component {
            write!(out, " component={}", set(c)).unwrap();
        }
        out.push('\n');
    }
    if !shown.is_empty() {
        writeln!(out, "# {:<16} {:<18} {:>10} {:>6} {:>8}", "X", "kind", "components", "hull", "slack").unwrap();
        for v in shown {
            writeln!(
                out,
                "# {:<16} {:<18} {:>10} {:>6} {:>8}",
                set(&v.x),
                v.kind.as_str(),
                v.components,
                v.hull_size,
                q(&v.slack)
            )
            .unwrap();
        }
    }
    out
}

fn layered_report(w: &Window, epsilon: Rational, levels: usize, cert_max_x: usize) -> Result<(String, Status)> {
    let schedule = build_schedule(epsilon, levels)?;
    let nets = build_nets(w, &schedule);
    let cert = run_layered_matching(w, &schedule, &nets, cert_max_x)?;
    let mut out = format!(
        "epsilon={} levels={} scale={} cert_max_x={}\n",
        q(&epsilon),
        levels,
        schedule.scale,
        cert_max_x
    );
    for level in &cert.levels {
        writeln!(
            out,
            "level={} chosen={} tutte={} odd_components={} f={} eps={} nets={} nets_covered={} separated={}",
            level.level,
            level.chosen.len(),
            level.tutte.verdict().as_str(),
            level.odd_components,
            level.radius,
            q(&level.eps),
            nets.levels[level.level].len(),
            yes(level.nets_covered),
            yes(level.separated)
        )
        .unwrap();
    }
    if let Some(reason) = &cert.aborted {
        writeln!(out, "aborted={}", reason.replace(' ', "_")).unwrap();
    }
    writeln!(
        out,
        "verdict={} coverage={} residual={}",
        verdict(cert.passed()),
        q(&cert.coverage()),
        nets.residual.len()
    )
    .unwrap();
    out.push_str(&matching_lines(&w.graph, &cert.matching));
    Ok((out, Status::from_pass(cert.passed())))
}

fn node_label(gadget: &GadgetGraph, node: usize) -> String {
    match gadget.project(node) {
        GadgetNode::Edge(e) => edge_label(e),
        GadgetNode::Copy { vertex, index } => format!("{vertex}#{index}"),
    }
}

fn edge_label(e: Edge) -> String {
    format!("{}-{}", e.u(), e.v())
}

fn side_line(gadget: &GadgetGraph, side: &SideAudit<Rational>) -> String {
    let describe = |prefix: &str, m: &Option<HallMinimum<Rational>>| match m {
        Some(m) => {
            let labels: Vec<String> = m.witness.iter().map(|&x| node_label(gadget, x)).collect();
            format!(
                " {prefix}min_ratio={} {prefix}witness={{{}}} {prefix}neighbors={}",
                q(&m.ratio),
                labels.join(","),
                m.neighbors
            )
        }
        None => format!(" {prefix}min_ratio=none"),
    };
    let credit = side
        .credited
        .as_ref()
        .map(|m| format!(" credited_stub_credit={}", q(&m.stub_credit)))
        .unwrap_or_default();
    format!(
        "side={} candidates={}{}{}{}\n",
        side.side.as_str(),
        side.candidates,
        describe("", &side.plain),
        describe("credited_", &side.credited),
        credit
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    fn exec(args: &[&str]) -> Result<Outcome> {
        execute(&Cli::try_parse_from(std::iter::once("tuttelab").chain(args.iter().copied())).unwrap())
    }

    const STAR3: &str = "4 3\n0 1\n0 2\n0 3\n";
    const CYCLE4: &str = "4 4\n0 1\n0 3\n1 2\n2 3\n";

    #[test]
    fn verify_tutte_on_star_reports_witness() {
        let f = file(STAR3);
        let o = exec(&["verify-tutte", f.path().to_str().unwrap(), "--epsilon", "0"]).unwrap();
        assert_eq!(o.status, Status::Violation);
        assert!(o.text.starts_with("verdict=fail epsilon=0/1 k=1 max_x=4"));
        assert!(o.text.contains("violation x={0} kind=tutte components=3"));
    }

    #[test]
    fn orient_euler_on_cycle() {
        let f = file(CYCLE4);
        let o = exec(&["orient", f.path().to_str().unwrap(), "--method", "euler"]).unwrap();
        assert_eq!(o.status, Status::Success);
        assert_eq!(o.text, "0 1 -> 1\n0 3 -> 0\n1 2 -> 2\n2 3 -> 3\n");
    }

    #[test]
    fn layered_on_cycle() {
        let f = file(CYCLE4);
        let o = exec(&["layered", f.path().to_str().unwrap(), "--epsilon", "1/2", "--levels", "2"]).unwrap();
        assert_eq!(o.status, Status::Success);
        let lines: Vec<&str> = o.text.lines().collect();
        assert!(lines[1].starts_with("level=0 chosen=1 tutte=pass odd_components=0 f=32 eps=3/8"));
        assert!(lines[2].starts_with("level=1 chosen=0 tutte=pass odd_components=0 f=64 eps=5/16"));
        assert_eq!(lines[lines.len() - 1], "size=1 perfect=no");
    }

    #[test]
    fn match_output_format() {
        let f = file(CYCLE4);
        let o = exec(&["match", f.path().to_str().unwrap()]).unwrap();
        assert_eq!(o.text, "0 1\n2 3\nsize=2 perfect=yes\n");
    }

    #[test]
    fn generate_round_trips() {
        let o = exec(&["generate", "--free-rank", "2", "--radius", "2"]).unwrap();
        let w = parse_window(&o.text).unwrap();
        assert_eq!(w.graph.vertex_count(), 17);
        assert!(exec(&["generate", "--free-rank", "2"]).is_err());
        assert!(exec(&["generate", "--fixture", "cycle:4", "--grid", "2", "--radius", "1"]).is_err());
        let o = exec(&["generate", "--points", "4", "--perm", "0 1,2 3", "--perm", "1 2"]).unwrap();
        assert_eq!(o.text, "4 3\n0 1\n1 2\n2 3\n");
        assert_eq!(o.notes, vec!["loops_dropped=2 duplicates_collapsed=3"]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let f = file("3 2\n0 1\n1 x\n");
        let err = exec(&["match", f.path().to_str().unwrap()]).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(Cli::try_parse_from(["tuttelab", "match", "a", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["tuttelab", "verify-tutte", "a", "--epsilon", "1/0"]).is_err());
    }
}
