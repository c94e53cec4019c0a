use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minorcover::chimera::{apply_faults, build_chimera, virtualize, ChimeraSpec, FaultSet};
use minorcover::embedder::{chain_stats, choi_lower_bound, embed_clique, verify_embedding};
use minorcover::faulty::{
    attempt_with, check_no_clique_criteria, AttemptConfig, IncompleteBipartite, MatchingPolicy,
    TrialOutcome,
};
use minorcover::graph::{complement, isolated_vertices, Graph};
use minorcover::io;
use minorcover::msc::{clique_number, msc_complete_bipartite, verify_msc};
use minorcover::oracle::{is_minor, largest_clique_minor, MinorSearch, DEFAULT_BUDGET};
use minorcover::Error;

#[derive(Parser)]
#[command(name = "minorcover", version)]
#[command(about = "Minor set covers, Chimera clique embeddings and faulty-graph checks")]
struct Cli {
    /// Worker threads for embedding attempts.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Print progress to stderr; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true, env = "MINORCOVER_OUT_DIR")]
    out_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chimera hardware graphs.
    #[command(subcommand)]
    Chimera(ChimeraCmd),
    /// Minor set covers of complete bipartite graphs.
    #[command(subcommand)]
    Msc(MscCmd),
    /// Clique embeddings into ideal Chimera hardware.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Check an embedding of a logical graph into a target graph.
    Verify {
        #[arg(long)]
        logical: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        embedding: PathBuf,
    },
    /// Incomplete bipartite graphs.
    #[command(subcommand)]
    Faulty(FaultyCmd),
    /// Exhaustive minor search on small graphs.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Plain-text data tables.
    #[command(subcommand)]
    Report(ReportCmd),
}

#[derive(Args)]
struct Dims {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    c: usize,
}

impl Dims {
    fn spec(&self) -> Result<ChimeraSpec, Error> {
        ChimeraSpec::new(self.n, self.m, self.c)
    }
}

#[derive(Subcommand)]
enum ChimeraCmd {
    /// Write C(n,m,c), optionally with dead qubits and couplers.
    Gen {
        #[command(flatten)]
        dims: Dims,
        /// Linear index of a dead qubit; repeatable.
        #[arg(long = "dead", value_name = "QUBIT")]
        dead: Vec<usize>,
        /// Dead coupler as `a-b` linear indices; repeatable.
        #[arg(long = "dead-coupler", value_name = "A-B")]
        dead_couplers: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Contract the intercell chains of a Chimera file.
    Virtualize {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MscCmd {
    /// Build the minor sequence of K_{left,right} into an archive directory.
    Build {
        #[arg(long)]
        left: usize,
        #[arg(long)]
        right: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an archive and print its report.
    Verify {
        #[arg(long)]
        archive: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    /// Embed K_k into ideal C(n,m,c) and print the chain statistics.
    Clique {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FaultyCmd {
    /// Apply the edge-count and cover criteria.
    Check {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Search for a K_{N+1} witness by repeated random contractions.
    Attempt {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = minorcover::faulty::DEFAULT_ATTEMPTS)]
        attempts: usize,
        #[arg(long)]
        seed: u64,
        /// Draw matchings without covering incomplete vertices first.
        #[arg(long)]
        unconstrained: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Decide whether H is a minor of G.
    Minor {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Largest clique minor of G.
    Clique {
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Chain statistics, complement evolution and attempt tallies.
    Figures {
        #[arg(long)]
        seed: u64,
        /// Write one file per table here instead of printing.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

enum Failure {
    BadInput(String),
    Bound(String),
    Budget(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::BadInput(_) => 2,
            Failure::Bound(_) => 3,
            Failure::Budget(_) => 4,
            Failure::Verification(_) => 5,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CliqueBound { .. } => Failure::Bound(e.to_string()),
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            _ => Failure::BadInput(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::BadInput(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Ctx {
    jobs: usize,
    verbose: u8,
    out_dir: Option<PathBuf>,
}

impl Ctx {
    fn resolve(&self, p: &Path) -> PathBuf {
        match &self.out_dir {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.to_path_buf(),
        }
    }

    /// Writes to `path` if given, otherwise to stdout.
    fn emit(&self, path: Option<&Path>, text: &str) -> Outcome {
        match path {
            Some(p) => {
                let p = self.resolve(p);
                if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(parent)?;
                }
                fs::write(&p, text)?;
                self.note(1, &format!("wrote {}", p.display()));
            }
            None => print!("{text}"),
        }
        Ok(())
    }

    fn note(&self, level: u8, msg: &str) {
        if self.verbose >= level {
            eprintln!("{msg}");
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

/// Reads an edge list, honouring a Chimera header so dead qubits stay dead.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    let tagged = |e: Error| Failure::BadInput(format!("{}: {e}", path.display()));
    if text
        .lines()
        .any(|l| l.trim_start().starts_with("# chimera"))
    {
        Ok(io::read_chimera(&text).map_err(tagged)?.1)
    } else {
        io::read_edge_list(&text).map_err(tagged)
    }
}

fn read_bipartite(path: &Path) -> Result<IncompleteBipartite, Failure> {
    io::read_bipartite(&read(path)?)
        .map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        jobs: cli.jobs.max(1),
        verbose: cli.verbose,
        out_dir: cli.out_dir,
    };
    match run(&ctx, cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (class, msg) = match &f {
                Failure::BadInput(m) => ("bad input", m),
                Failure::Bound(m) => ("bound violation", m),
                Failure::Budget(m) => ("budget exceeded", m),
                Failure::Verification(m) => ("verification failure", m),
            };
            eprintln!("error: {class}: {msg}");
            ExitCode::from(f.code())
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> Outcome {
    match command {
        Command::Chimera(ChimeraCmd::Gen {
            dims,
            dead,
            dead_couplers,
            output,
        }) => {
            let spec = dims.spec()?;
            let mut faults = FaultSet::default();
            for q in dead {
                faults.dead_qubits.insert(spec.coord(q)?);
            }
            for pair in &dead_couplers {
                let (a, b) = pair
                    .split_once('-')
                    .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                    .ok_or_else(|| Failure::BadInput(format!("bad coupler '{pair}', want A-B")))?;
                faults
                    .dead_couplers
                    .insert((spec.coord(a)?, spec.coord(b)?));
            }
            let g = apply_faults(&build_chimera(&spec), &spec, &faults)?;
            ctx.note(
                1,
                &format!("{spec}: {} qubits, {} couplers", g.order(), g.size()),
            );
            ctx.emit(output.as_deref(), &io::write_chimera(&g, &spec))
        }
        Command::Chimera(ChimeraCmd::Virtualize { input, output }) => {
            let (spec, g) = io::read_chimera(&read(&input)?)?;
            let vh = virtualize(&g, &spec);
            ctx.note(
                1,
                &format!(
                    "virtual hardware: {}+{} vertices, {} edges",
                    vh.labeling.left.len(),
                    vh.labeling.right.len(),
                    vh.graph.size()
                ),
            );
            ctx.emit(output.as_deref(), &io::write_virtual_hardware(&vh))
        }
        Command::Msc(MscCmd::Build {
            left,
            right,
            seed,
            out,
        }) => {
            let seq = msc_complete_bipartite(left, right, seed)?;
            let dir = ctx.resolve(&out);
            io::write_minor_sequence(&seq, &dir)?;
            ctx.note(
                1,
                &format!("wrote {} minors to {}", seq.len(), dir.display()),
            );
            Ok(())
        }
        Command::Msc(MscCmd::Verify { archive, output }) => {
            let seq = io::read_minor_sequence(&archive)?;
            let report = verify_msc(&seq);
            ctx.emit(output.as_deref(), &io::format_msc_report(&report))?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Verification(report.failures.join("; ")))
            }
        }
        Command::Embed(EmbedCmd::Clique {
            dims,
            k,
            seed,
            output,
        }) => {
            let spec = dims.spec()?;
            let e = embed_clique(&spec, k, seed)?;
            let verdict = verify_embedding(&Graph::complete(k), &build_chimera(&spec), &e);
            if !verdict.is_valid() {
                return Err(Failure::Verification(verdict.to_string()));
            }
            let stats = chain_stats(&e);
            match output {
                Some(p) => {
                    ctx.emit(Some(&p), &io::write_embedding(&e))?;
                    println!("{stats}");
                }
                None => print!("{}", io::write_embedding(&e)),
            }
            ctx.note(1, &io::format_chain_stats(&stats));
            Ok(())
        }
        Command::Verify {
            logical,
            target,
            embedding,
        } => {
            let logical = read_graph(&logical)?;
            let target = read_graph(&target)?;
            let e = io::read_embedding(&read(&embedding)?)?;
            let verdict = verify_embedding(&logical, &target, &e);
            print!("{}", io::format_verdict(&verdict));
            if verdict.is_valid() {
                Ok(())
            } else {
                Err(Failure::Verification(verdict.to_string()))
            }
        }
        Command::Faulty(FaultyCmd::Check { graph }) => {
            let b = read_bipartite(&graph)?;
            let report = check_no_clique_criteria(&b)?;
            print!("{}", io::format_criteria_report(&report));
            Ok(())
        }
        Command::Faulty(FaultyCmd::Attempt {
            graph,
            attempts,
            seed,
            unconstrained,
            output,
        }) => {
            let b = read_bipartite(&graph)?;
            let cfg = AttemptConfig {
                attempts,
                seed,
                policy: if unconstrained {
                    MatchingPolicy::Unconstrained
                } else {
                    MatchingPolicy::CoverFirst
                },
                jobs: ctx.jobs,
            };
            let out = attempt_with(&b, &cfg)?;
            for (t, trial) in out.trials.iter().enumerate() {
                ctx.note(1, &format!("trial {t} {}", trial_label(trial)));
            }
            match out.witness {
                Some(w) => {
                    println!("witness found trial {}", out.trials.len() - 1);
                    ctx.emit(output.as_deref(), &io::write_bag_map(&w))
                }
                None => {
                    println!("witness none trials {}", out.trials.len());
                    Err(Failure::Verification(format!(
                        "no K_{} witness in {attempts} trials",
                        b.balanced_order()? + 1
                    )))
                }
            }
        }
        Command::Oracle(OracleCmd::Minor {
            h,
            g,
            budget,
            output,
        }) => {
            let h = read_graph(&h)?;
            let g = read_graph(&g)?;
            match is_minor(&h, &g, budget) {
                MinorSearch::Found(w) => {
                    println!("minor yes");
                    ctx.emit(output.as_deref(), &io::write_bag_map(&w))
                }
                MinorSearch::NotMinor => {
                    println!("minor no");
                    Ok(())
                }
                MinorSearch::BudgetExceeded { vertices, budget } => Err(Failure::Budget(format!(
                    "host has {vertices} vertices, budget {budget}"
                ))),
            }
        }
        Command::Oracle(OracleCmd::Clique { g, budget, output }) => {
            let g = read_graph(&g)?;
            let (k, w) = largest_clique_minor(&g, budget)?;
            println!("{k}");
            ctx.emit(output.as_deref(), &io::write_bag_map(&w))
        }
        Command::Report(ReportCmd::Figures { seed, dir }) => figures(ctx, seed, dir.as_deref()),
    }
}

fn trial_label(t: &TrialOutcome) -> String {
    match t {
        TrialOutcome::Success(_) => "success".into(),
        TrialOutcome::ShortMatching { found } => format!("short-matching {found}"),
        TrialOutcome::Dimer { step } => format!("dimer step {step}"),
        TrialOutcome::NotComplete => "not-complete".into(),
    }
}

fn figures(ctx: &Ctx, seed: u64, dir: Option<&Path>) -> Outcome {
    let mut tables: Vec<(&str, String)> = Vec::new();

    let mut chains =
        String::from("# n m c k chains total_qubits max_chain bound_per_qubit bound_total\n");
    let rows = [
        (2, 2, 2, 5),
        (2, 2, 3, 7),
        (3, 3, 3, 10),
        (3, 3, 4, 13),
        (4, 4, 4, 17),
        (2, 2, 20, 41),
        (12, 12, 4, 49),
    ];
    for (n, m, c, k) in rows {
        let spec = ChimeraSpec::new(n, m, c)?;
        let stats = chain_stats(&embed_clique(&spec, k, seed)?);
        let choi = choi_lower_bound(k, c)?;
        let _ = writeln!(
            chains,
            "{n} {m} {c} {k} {} {} {} {} {}",
            stats.to_string().replace(' ', ","),
            stats.total_qubits,
            stats.max_chain,
            choi.per_qubit,
            choi.total
        );
    }
    tables.push(("chain_stats.txt", chains));

    let mut evolution = String::from("# N i order size clique_number complement_isolated\n");
    for n in [3, 5] {
        let seq = msc_complete_bipartite(n, n, seed)?;
        for (i, minor) in seq.minors.iter().enumerate() {
            let iso = isolated_vertices(&complement(&minor.graph)).len();
            let _ = writeln!(
                evolution,
                "{n} {i} {} {} {} {iso}",
                minor.graph.order(),
                minor.graph.size(),
                clique_number(&minor.graph)?
            );
        }
    }
    tables.push(("complement_evolution.txt", evolution));

    let mut tallies = String::from("# graph policy seeds success short dimer not_complete\n");
    let k55e = IncompleteBipartite::complete_minus(5, 5, &[(0, 5)])?;
    for (name, policy) in [
        ("cover-first", MatchingPolicy::CoverFirst),
        ("unconstrained", MatchingPolicy::Unconstrained),
    ] {
        let mut counts = [0usize; 4];
        for s in 0..20 {
            let cfg = AttemptConfig {
                attempts: 100,
                seed: seed.wrapping_add(s),
                policy,
                jobs: ctx.jobs,
            };
            for t in attempt_with(&k55e, &cfg)?.trials {
                counts[match t {
                    TrialOutcome::Success(_) => 0,
                    TrialOutcome::ShortMatching { .. } => 1,
                    TrialOutcome::Dimer { .. } => 2,
                    TrialOutcome::NotComplete => 3,
                }] += 1;
            }
        }
        let _ = writeln!(
            tallies,
            "K55-e {name} 20 {} {} {} {}",
            counts[0], counts[1], counts[2], counts[3]
        );
    }
    tables.push(("attempt_tallies.txt", tallies));

    match dir {
        Some(d) => {
            for (name, text) in &tables {
                ctx.emit(Some(&d.join(name)), text)?;
            }
        }
        None => {
            for (name, text) in &tables {
                println!("## {name}");
                print!("{text}");
            }
        }
    }
    Ok(())
}
