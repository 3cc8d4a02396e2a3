//! Command-line front end.
//!
//! Exit codes: 0 yes / root found / verified, 1 no / refuted, 2 usage or
//! parse error, 3 inconclusive.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::construct::build_root;
use crate::error::Error;
use crate::graph::Graph;
use crate::io::{parse_graph, parse_tree, serialize_tree, write_graph, TreeFormat};
use crate::oracle::{oracle_root, RootVerdict, SearchLimits};
use crate::patterns::{find_induced, load_pattern_file, PatternSet};
use crate::recognize::{recognize_2, recognize_3, recognize_4, reduce_similar, Verdict, Witness};
use crate::tree::verify_root;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "leafpower", version, about = "Recognize k-leaf powers and build k-leaf roots")]
struct Cli {
    /// More log output on stderr (repeat for more).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide membership for k = 2, 3 or 4.
    Recognize {
        #[arg(short, value_parser = clap::value_parser!(u8).range(2..=4))]
        k: u8,
        graph: PathBuf,
    },
    /// Build a k-leaf root.
    Root {
        #[arg(short)]
        k: usize,
        graph: PathBuf,
        /// Write the tree here instead of stdout.
        #[arg(short)]
        o: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check that a tree is a k-leaf root of a graph.
    Verify {
        #[arg(short)]
        k: usize,
        graph: PathBuf,
        tree: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
    },
    /// Exhaustive search for a k-leaf root.
    Oracle {
        #[arg(short)]
        k: usize,
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Delete similar vertices until none remain.
    Reduce { graph: PathBuf },
    /// Forbidden-pattern queries.
    Patterns {
        #[command(subcommand)]
        action: PatternsCommand,
    },
}

#[derive(Debug, Subcommand)]
enum PatternsCommand {
    /// Report every shipped (or given) pattern occurring in the graph.
    Check {
        graph: PathBuf,
        /// Use this pattern file instead of the shipped sets.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    max_weight: Option<usize>,
    #[arg(long)]
    max_internal: Option<usize>,
    /// Time budget in whole seconds.
    #[arg(long)]
    budget: Option<u64>,
}

impl SearchArgs {
    fn limits(&self) -> SearchLimits {
        let d = SearchLimits::default();
        SearchLimits {
            max_internal: self.max_internal.unwrap_or(d.max_internal),
            max_weight: self.max_weight.unwrap_or(d.max_weight),
            time_budget: self.budget.map_or(d.time_budget, Duration::from_secs),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
    Newick,
}

impl From<Format> for TreeFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Edgelist => TreeFormat::Edgelist,
            Format::Dot => TreeFormat::Dot,
            Format::Newick => TreeFormat::Newick,
        }
    }
}

/// Failure of a subcommand, already mapped to its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_USAGE,
            Error::Inconclusive(_) | Error::TooLarge { .. } | Error::Construction(_) => EXIT_INCONCLUSIVE,
            Error::NotLeafPower(_) | Error::LabelMismatch => EXIT_NO,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn read_text(path: &Path) -> Result<String, Fail> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    Ok(s)
}

fn read_graph(path: &Path) -> Result<Graph, Fail> {
    parse_graph(&read_text(path)?).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn check_k(k: usize) -> Result<(), Fail> {
    if k < 2 {
        return Err(Fail(EXIT_USAGE, format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).target(env_logger::Target::Stderr).try_init();
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Fail> {
    let io = |e: std::io::Error| Fail(EXIT_USAGE, e.to_string());
    match cmd {
        Command::Recognize { k, graph } => {
            let g = read_graph(&graph)?;
            let verdict = match k {
                2 => recognize_2(&g),
                3 => recognize_3(&g),
                _ => recognize_4(&g),
            };
            writeln!(out, "k: {k}").map_err(io)?;
            report_verdict(&verdict, out).map_err(io)?;
            Ok(if verdict.is_member() { EXIT_YES } else { EXIT_NO })
        }
        Command::Root { k, graph, o, format, search } => {
            check_k(k)?;
            let g = read_graph(&graph)?;
            let limits = search.limits();
            let (tree, method) = build_root(&g, k, &limits)?;
            let text = serialize_tree(&tree, format.into());
            let report: &mut dyn Write = match &o {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
                    out
                }
                None => {
                    out.write_all(text.as_bytes()).map_err(io)?;
                    err
                }
            };
            writeln!(report, "k: {k}\nresult: root\nmethod: {method}\nnodes: {}", tree.node_count()).map_err(io)?;
            Ok(EXIT_YES)
        }
        Command::Verify { k, graph, tree, format } => {
            check_k(k)?;
            let g = read_graph(&graph)?;
            let t = parse_tree(&read_text(&tree)?, format.into())
                .map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", tree.display())))?;
            writeln!(out, "k: {k}").map_err(io)?;
            match verify_root(&g, &t, k) {
                Ok(None) => {
                    writeln!(out, "verified: yes").map_err(io)?;
                    Ok(EXIT_YES)
                }
                Ok(Some(v)) => {
                    writeln!(out, "verified: no").map_err(io)?;
                    let adj = if v.adjacent { "yes" } else { "no" };
                    writeln!(out, "violation: {} {} distance {} adjacent {adj}", v.u, v.v, v.distance).map_err(io)?;
                    Ok(EXIT_NO)
                }
                Err(e) => {
                    writeln!(out, "verified: no\nreason: {e}").map_err(io)?;
                    Ok(EXIT_NO)
                }
            }
        }
        Command::Oracle { k, graph, format, search } => {
            check_k(k)?;
            let g = read_graph(&graph)?;
            let limits = search.limits();
            limits.validate()?;
            writeln!(out, "k: {k}").map_err(io)?;
            match oracle_root(&g, k, &limits)? {
                RootVerdict::Root(t) => {
                    writeln!(out, "result: root").map_err(io)?;
                    out.write_all(serialize_tree(&t, format.into()).as_bytes()).map_err(io)?;
                    Ok(EXIT_YES)
                }
                RootVerdict::NoRoot => {
                    writeln!(out, "result: none").map_err(io)?;
                    Ok(EXIT_NO)
                }
                RootVerdict::Inconclusive(r) => {
                    writeln!(out, "result: inconclusive\nexplored: {}", r.topologies_explored).map_err(io)?;
                    if let Some(total) = r.topologies_total {
                        writeln!(out, "total: {total}").map_err(io)?;
                    }
                    writeln!(out, "reason: {}", r.reason).map_err(io)?;
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Reduce { graph } => {
            let g = read_graph(&graph)?;
            let red = reduce_similar(&g);
            for &(kept, deleted) in &red.steps {
                writeln!(out, "# removed {deleted} (similar to {kept})").map_err(io)?;
            }
            writeln!(out, "# kept {}", join(&red.kept)).map_err(io)?;
            out.write_all(write_graph(&red.reduced).as_bytes()).map_err(io)?;
            Ok(EXIT_YES)
        }
        Command::Patterns { action: PatternsCommand::Check { graph, file } } => {
            let g = read_graph(&graph)?;
            let sets = match file {
                Some(path) => vec![load_pattern_file(read_text(&path)?.as_bytes())
                    .map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))?],
                None => vec![PatternSet::three_leaf(), PatternSet::figure1()],
            };
            let mut found = false;
            for p in sets.iter().flat_map(|s| s.patterns()) {
                match find_induced(&g, &p.graph) {
                    Some(emb) => {
                        found = true;
                        writeln!(out, "{}: {}", p.name, join(&emb)).map_err(io)?;
                    }
                    None => writeln!(out, "{}: none", p.name).map_err(io)?,
                }
            }
            Ok(if found { EXIT_NO } else { EXIT_YES })
        }
    }
}

fn report_verdict(v: &Verdict, out: &mut dyn Write) -> std::io::Result<()> {
    match v {
        Verdict::Member => writeln!(out, "member: yes"),
        Verdict::NotMember(w) => {
            writeln!(out, "member: no")?;
            match w {
                Witness::InducedP3(p) => writeln!(out, "witness: induced-p3 {}", join(p)),
                Witness::ChordlessCycle(c) => writeln!(out, "witness: chordless-cycle {}", join(c)),
                Witness::Pattern(hit) => writeln!(out, "witness: pattern {} {}", hit.name, join(&hit.embedding)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::t0_tree;
    use std::fs;

    fn cli(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["leafpower"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_owned()
    }

    #[test]
    fn bull_is_not_a_3_leaf_power() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "bull", "5 5\n0 1\n1 2\n0 2\n0 3\n1 4\n");
        let (code, out, _) = cli(&["recognize", "-k", "3", &g]);
        assert_eq!(code, EXIT_NO);
        assert!(out.contains("member: no"));
        assert!(out.contains("witness: pattern bull 0 1 2 3 4"), "{out}");
    }

    #[test]
    fn star_root_closes_through_verify() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "star", "4 3\n0 1\n0 2\n0 3\n");
        let t = dir.path().join("t").to_str().unwrap().to_owned();
        let (code, out, _) = cli(&["root", "-k", "5", &g, "-o", &t]);
        assert_eq!(code, EXIT_YES);
        assert!(out.contains("result: root"));
        let (code, out, _) = cli(&["verify", "-k", "5", &g, &t]);
        assert_eq!(code, EXIT_YES, "{out}");
        assert!(out.contains("verified: yes"));
    }

    #[test]
    fn gadget_tree_verifies() {
        // clique {0, 1} with pendant 2 on vertex 0 is P3
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "g", "3 2\n0 1\n0 2\n");
        let t = write(dir.path(), "t", &serialize_tree(&t0_tree(2).unwrap(), TreeFormat::Newick));
        let (code, out, _) = cli(&["verify", "-k", "5", &g, &t, "--format", "newick"]);
        assert_eq!(code, EXIT_YES, "{out}");
        let (code, out, _) = cli(&["verify", "-k", "4", &g, &t, "--format", "newick"]);
        assert_eq!(code, EXIT_NO);
        assert!(out.contains("violation: "));
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let (code, _, err) = cli(&["frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
        let bad = write(dir.path(), "bad", "2 1\n0 0\n");
        assert_eq!(cli(&["reduce", &bad]).0, EXIT_USAGE);
        assert_eq!(cli(&["recognize", "-k", "5", &bad]).0, EXIT_USAGE);
        let c4 = write(dir.path(), "c4", "4 4\n0 1\n1 2\n2 3\n3 0\n");
        let (code, out, _) = cli(&["root", "-k", "4", &c4]);
        assert_eq!((code, out.as_str()), (EXIT_NO, ""));
        let (code, out, _) = cli(&["oracle", "-k", "3", &c4]);
        assert_eq!(code, EXIT_NO);
        assert!(out.contains("result: none"));
        let p5 = write(dir.path(), "p5", "5 4\n0 1\n1 2\n2 3\n3 4\n");
        assert_eq!(cli(&["oracle", "-k", "5", &p5, "--max-internal", "0"]).0, EXIT_USAGE);
        let (code, out, _) = cli(&["oracle", "-k", "5", &p5, "--max-internal", "1"]);
        assert_eq!(code, EXIT_INCONCLUSIVE, "{out}");
        assert!(out.contains("result: inconclusive"));
    }

    #[test]
    fn reduce_and_patterns() {
        let dir = tempfile::tempdir().unwrap();
        let k3 = write(dir.path(), "k3", "3 3\n0 1\n1 2\n0 2\n");
        let (code, out, _) = cli(&["reduce", &k3]);
        assert_eq!(code, EXIT_YES);
        assert_eq!(parse_graph(&out).unwrap(), Graph::complete(1));
        let (code, out, _) = cli(&["patterns", "check", &k3]);
        assert_eq!(code, EXIT_YES);
        assert!(out.contains("gem: none"));
    }
}
