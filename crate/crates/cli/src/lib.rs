//! The `sdm` command line.
//!
//! Exit codes: 0 yes / valid / holds, 1 no / invalid / violated,
//! 2 usage, I/O or format error, 3 step budget exhausted.

mod bench;
mod gen;

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use sdm_core::format::{
    parse_graph, parse_instance, parse_solution, write_graph, write_instance, write_matching_line, write_solution,
    Solution,
};
use sdm_core::lebensold::{k_disjoint_saturating, lebensold_condition, DEFAULT_SUBSET_LIMIT};
use sdm_core::reductions::{
    decode_spair_to_assignment, parse_dimacs_cnf, parse_mapping, reduce_3sat_to_sdm, reduce_sdm_to_dm, write_mapping,
};
use sdm_core::sdm::{
    count_spairs_exact, solve, SolveConfig, SolveError, DEFAULT_BOUNDED_DISPATCH, DEFAULT_ORACLE_EDGE_LIMIT,
};
use sdm_core::verify_spair;

pub use bench::{run_suite, SuiteReport, SUITES};
pub use gen::generate;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const AFTER_HELP: &str = "Exit codes: 0 = yes/valid/holds, 1 = no/invalid/violated, 2 = error, 3 = budget exhausted.\n\
Files may be given as `-` to read standard input.";

#[derive(Debug, Parser)]
#[command(name = "sdm", version, about = "Disjoint bipartite matchings: S-pairs, factors and reductions", after_help = AFTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether an instance has an S-pair and print one if so.
    Solve {
        instance: PathBuf,
        /// Step budget for the exponential searches.
        #[arg(long)]
        budget: Option<u64>,
        /// Largest |S| routed to the bounded-S enumeration.
        #[arg(long, default_value_t = DEFAULT_BOUNDED_DISPATCH)]
        bounded_dispatch: usize,
    },
    /// Check a solution file against an instance.
    Verify { instance: PathBuf, solution: PathBuf },
    /// Check the k-disjoint-matchings condition and construct the matchings.
    Lebensold {
        graph: PathBuf,
        #[arg(short = 'k', default_value_t = 2)]
        k: usize,
        /// Largest |X| for subset enumeration.
        #[arg(long, default_value_t = DEFAULT_SUBSET_LIMIT)]
        limit: usize,
    },
    /// Reduce a DIMACS CNF to an SDM instance plus a mapping sidecar.
    #[command(name = "reduce-3sat")]
    Reduce3Sat {
        cnf: PathBuf,
        /// Where to write the mapping sidecar.
        #[arg(long)]
        map: PathBuf,
        /// Where to write the instance (default: standard output).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an SDM instance with |S| < |X| - 1 to a DM pair (G1, G2).
    #[command(name = "reduce-dm")]
    ReduceDm {
        instance: PathBuf,
        #[arg(long, requires = "g2")]
        g1: Option<PathBuf>,
        #[arg(long, requires = "g1")]
        g2: Option<PathBuf>,
    },
    /// Turn a solution of a reduced 3SAT instance into a truth assignment.
    Decode { mapping: PathBuf, solution: PathBuf },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        nx: usize,
        #[arg(long)]
        ny: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        s_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count S-pairs by exhaustive enumeration.
    Oracle {
        instance: PathBuf,
        /// Maximum number of edges.
        #[arg(long, default_value_t = DEFAULT_ORACLE_EDGE_LIMIT)]
        limit: usize,
    },
    /// Run a cross-check suite; the table goes to stdout, timings to stderr.
    Bench {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {msg}")]
    Format { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &Path) -> Result<String, CliError> {
        if path == Path::new("-") {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s).map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(s)
        } else {
            fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
        }
    }

    fn out(&mut self, text: &str) -> Result<(), CliError> {
        self.stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    }

    fn err(&mut self, text: &str) {
        let _ = self.stderr.write_all(text.as_bytes());
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn format_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    let path = if path == Path::new("-") { "<stdin>".into() } else { path.display().to_string() };
    CliError::Format { path, msg: e.to_string() }
}

/// Runs one invocation. `args[0]` is the program name.
pub fn run<S: AsRef<str>>(args: &[S], stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut io = Io { stdin, stdout, stderr };
    let cli = match Cli::try_parse_from(args.iter().map(AsRef::as_ref)) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                io.err(&text);
                EXIT_ERROR
            } else {
                let _ = io.out(&text);
                EXIT_YES
            };
        }
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            io.err(&format!("error: {e}\n"));
            EXIT_ERROR
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> Result<i32, CliError> {
    match cmd {
        Command::Solve { instance, budget, bounded_dispatch } => {
            let inst = parse_instance(&io.read(&instance)?).map_err(|e| format_err(&instance, e))?;
            let config = SolveConfig { bounded_dispatch, budget };
            match solve(&inst, &config) {
                Ok(outcome) => {
                    let yes = outcome.spair.is_some();
                    let sol = outcome.spair.map_or(Solution::No, Solution::Yes);
                    io.out(&write_solution(&sol))?;
                    io.out(&format!("c method {}\n", outcome.method.name()))?;
                    Ok(if yes { EXIT_YES } else { EXIT_NO })
                }
                Err(e @ SolveError::BudgetExhausted(_)) => {
                    io.err(&format!("{e}\n"));
                    Ok(EXIT_BUDGET)
                }
                Err(e) => Err(CliError::Usage(e.to_string())),
            }
        }
        Command::Verify { instance, solution } => {
            let inst = parse_instance(&io.read(&instance)?).map_err(|e| format_err(&instance, e))?;
            let sol = parse_solution(&io.read(&solution)?).map_err(|e| format_err(&solution, e))?;
            match sol {
                Solution::Yes(pair) => match verify_spair(&inst, &pair) {
                    Ok(()) => {
                        io.out("VALID\n")?;
                        Ok(EXIT_YES)
                    }
                    Err(v) => {
                        io.out(&format!("INVALID: {v}\n"))?;
                        Ok(EXIT_NO)
                    }
                },
                Solution::No => {
                    let outcome = solve(&inst, &SolveConfig::default()).map_err(|e| CliError::Usage(e.to_string()))?;
                    if outcome.spair.is_some() {
                        io.out("INVALID: claims no S-pair, but one exists\n")?;
                        Ok(EXIT_NO)
                    } else {
                        io.out("VALID\n")?;
                        Ok(EXIT_YES)
                    }
                }
            }
        }
        Command::Lebensold { graph, k, limit } => {
            let g = parse_graph(&io.read(&graph)?).map_err(|e| format_err(&graph, e))?;
            let verdict = lebensold_condition(&g, k, limit).map_err(|e| CliError::Usage(e.to_string()))?;
            let built = k_disjoint_saturating(&g, k);
            if verdict.holds != built.is_some() {
                return Err(CliError::Usage("subset check and construction disagree".into()));
            }
            match (verdict.violating_set, built) {
                (None, Some(ms)) => {
                    io.out(&format!("HOLDS k={k}\n"))?;
                    for (i, m) in ms.iter().enumerate() {
                        io.out(&write_matching_line(&format!("M{}", i + 1), m))?;
                    }
                    Ok(EXIT_YES)
                }
                (Some(w), _) => {
                    let ids: Vec<String> = w.iter().map(|x| (x + 1).to_string()).collect();
                    io.out(&format!("VIOLATED k={k} witness {}\n", ids.join(" ")))?;
                    Ok(EXIT_NO)
                }
                (None, None) => unreachable!("checked above"),
            }
        }
        Command::Reduce3Sat { cnf, map, out } => {
            let formula = parse_dimacs_cnf(&io.read(&cnf)?).map_err(|e| format_err(&cnf, e))?;
            if formula.clauses().is_empty() {
                io.out("c trivially satisfiable: no clauses, nothing to reduce\n")?;
                return Ok(EXIT_YES);
            }
            let (inst, gadgets) = reduce_3sat_to_sdm(&formula).map_err(|e| format_err(&cnf, e))?;
            let text = format!(
                "c reduced from {} variables, {} clauses\n{}",
                formula.num_vars(),
                formula.clauses().len(),
                write_instance(&inst)
            );
            write_file(&map, &write_mapping(&gadgets))?;
            match out {
                Some(path) => write_file(&path, &text)?,
                None => io.out(&text)?,
            }
            Ok(EXIT_YES)
        }
        Command::ReduceDm { instance, g1, g2 } => {
            let inst = parse_instance(&io.read(&instance)?).map_err(|e| format_err(&instance, e))?;
            let dm = reduce_sdm_to_dm(&inst).map_err(|e| format_err(&instance, e))?;
            let (t1, t2) = (write_graph(dm.g1()), write_graph(dm.g2()));
            match (g1, g2) {
                (Some(p1), Some(p2)) => {
                    write_file(&p1, &t1)?;
                    write_file(&p2, &t2)?;
                }
                _ => io.out(&format!("c G1\n{t1}c G2\n{t2}"))?,
            }
            Ok(EXIT_YES)
        }
        Command::Decode { mapping, solution } => {
            let gadgets = parse_mapping(&io.read(&mapping)?).map_err(|e| format_err(&mapping, e))?;
            let sol = parse_solution(&io.read(&solution)?).map_err(|e| format_err(&solution, e))?;
            match sol {
                Solution::No => {
                    io.out("s UNSATISFIABLE\n")?;
                    Ok(EXIT_NO)
                }
                Solution::Yes(pair) => {
                    let a = decode_spair_to_assignment(&gadgets, &pair).map_err(|e| format_err(&solution, e))?;
                    io.out(&format!("s SATISFIABLE\n{a}\n"))?;
                    Ok(EXIT_YES)
                }
            }
        }
        Command::Gen { nx, ny, density, s_size, seed } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(CliError::Usage(format!("density {density} is outside [0, 1]")));
            }
            if s_size > nx {
                return Err(CliError::Usage(format!("--s-size {s_size} exceeds --nx {nx}")));
            }
            let inst = generate(nx, ny, density, s_size, seed);
            io.out(&format!(
                "c gen chacha8 seed={seed} nx={nx} ny={ny} density={density} s-size={s_size}\n{}",
                write_instance(&inst)
            ))?;
            Ok(EXIT_YES)
        }
        Command::Oracle { instance, limit } => {
            let inst = parse_instance(&io.read(&instance)?).map_err(|e| format_err(&instance, e))?;
            let n = count_spairs_exact(&inst, limit).map_err(|e| CliError::Usage(e.to_string()))?;
            io.out(&format!("{n}\n"))?;
            Ok(EXIT_YES)
        }
        Command::Bench { suite } => {
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else if SUITES.contains(&suite.as_str()) {
                vec![suite.as_str()]
            } else {
                return Err(CliError::Usage(format!(
                    "unknown suite `{suite}`; choose one of: all, {}",
                    SUITES.join(", ")
                )));
            };
            io.out(&format!("{:<10} {:>10} {:>10}  {}\n", "suite", "instances", "agree", "status"))?;
            let mut all_ok = true;
            for name in names {
                let start = std::time::Instant::now();
                let r = run_suite(name).expect("known suite");
                let ok = r.agree == r.instances;
                all_ok &= ok;
                io.out(&format!(
                    "{:<10} {:>10} {:>10}  {}\n",
                    name,
                    r.instances,
                    r.agree,
                    if ok { "PASS" } else { "FAIL" }
                ))?;
                io.err(&format!("c {name} {} ms\n", start.elapsed().as_millis()));
            }
            Ok(if all_ok { EXIT_YES } else { EXIT_NO })
        }
    }
}
