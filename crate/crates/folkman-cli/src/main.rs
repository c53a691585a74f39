//! Command-line surface for the modified vertex Folkman search engine.
//!
//! Exit codes: 0 on success or PASS, 1 on verification FAIL, 2 on usage
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use folkman_core::arrowing::{self, ArrowSpec, ArrowTuple};
use folkman_core::g6;
use folkman_core::graph::Graph;
use folkman_core::pipeline::{
    self, brute_force_folkman, lift_upper_bound, parse_expected, report_main_theorem,
    run_schedule, verify_tables, Manifest, RunOptions, Schedule,
};
use folkman_core::search::{
    edge_removal_closure, extend_independent, is_plus_kt, maximal_ktfree_subsets, AlphaMode,
    ExtensionJob,
};

#[derive(Parser)]
#[command(
    name = "folkman",
    about = "Exhaustive search engine for modified vertex Folkman numbers",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// graph6 file, one graph per line
    file: PathBuf,
    /// tolerate nonzero padding bits in third-party graph6 files
    #[arg(long)]
    lenient: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, size, clique, independence and chromatic numbers
    Props(FileArg),
    /// Decide arrowing per graph, for one tuple or the universal form
    Arrow {
        #[command(flatten)]
        file: FileArg,
        /// clique-size tuple, e.g. 6,3
        #[arg(long, value_name = "A1,A2,...")]
        tuple: Option<String>,
        /// universal form m|p, e.g. 8,6
        #[arg(long, value_name = "M,P")]
        uni: Option<String>,
    },
    /// List the maximal K_t-free vertex subsets per graph
    Subsets {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        t: usize,
    },
    /// Test whether each added edge would create a new t-clique
    PlusKt {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        t: usize,
    },
    /// Add k independent vertices to every seed and keep the maximal
    /// graphs of H~(m|p; q)
    Extend {
        /// seed graphs: the (+K_{q-1})-graphs of the previous class
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// restrict to independence number exactly 2
        #[arg(long)]
        alpha2: bool,
        /// check membership against the full tuple set
        #[arg(long)]
        audit_full_tuples: bool,
        /// output file (canonical stage format); stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
    /// Collect the (+K_t)-graphs of H~(m|p; q) under the given maximal
    /// graphs by edge removal
    Closure {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long = "plus-t")]
        plus_t: usize,
        #[arg(long)]
        alpha2: bool,
        #[arg(long)]
        audit_full_tuples: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
    /// Enumerate the (+K_t)-graphs of H~(m|p; q; n) from scratch
    Base {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "plus-t")]
        plus_t: usize,
        /// restrict to independence number at most 2
        #[arg(long)]
        alpha2: bool,
        #[arg(long)]
        audit_full_tuples: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a schedule config, persisting stage files and a manifest
    Run {
        #[arg(long)]
        schedule: PathBuf,
        /// reuse completed stages with matching checksums
        #[arg(long)]
        resume: bool,
        /// stop after the last stage with this label
        #[arg(long, value_name = "LABEL")]
        until: Option<String>,
        /// include stages marked extended
        #[arg(long)]
        extended: bool,
        /// check membership against the full tuple set
        #[arg(long)]
        audit_full_tuples: bool,
        /// output directory (default: runs/<schedule-name>)
        #[arg(long = "out-dir")]
        out_dir: Option<PathBuf>,
    },
    /// Compare a run manifest against an expected-counts table
    Verify {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long)]
        expected: PathBuf,
    },
    /// Brute-force a vertex Folkman number over all labeled graphs
    Brute {
        #[arg(long, value_name = "A1,A2,...")]
        tuple: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Join K_t onto a class member and verify the lifted membership
    Lift {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Assemble the theorem chain from run manifests
    Report {
        #[arg(long, num_args = 1.., value_name = "MANIFEST")]
        manifests: Vec<PathBuf>,
        /// 18-vertex witness graph (graph6) for the upper bound
        #[arg(long)]
        witness: Option<PathBuf>,
    },
}

fn read_graphs(path: &Path, lenient: bool) -> Result<Vec<Graph>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = if lenient {
            g6::decode_graph6_lenient(line)
        } else {
            g6::decode_graph6(line)
        }
        .with_context(|| format!("{}:{}", path.display(), i + 1))?;
        out.push(g);
    }
    Ok(out)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .with_context(|| format!("bad number `{x}`"))
        })
        .collect()
}

fn emit_graphs(graphs: &[Graph], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            g6::write_stage_file(path, graphs)?;
            eprintln!("{} graphs -> {}", graphs.len(), path.display());
        }
        None => {
            g6::write_graph6_lines(std::io::stdout().lock(), graphs)?;
            eprintln!("{} graphs", graphs.len());
        }
    }
    Ok(())
}

fn alpha_mode(alpha2: bool) -> AlphaMode {
    if alpha2 {
        AlphaMode::ExactlyTwo
    } else {
        AlphaMode::Unrestricted
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Props(args) => {
            for g in read_graphs(&args.file, args.lenient)? {
                let chi = match g.chromatic_number() {
                    Some(c) => c.to_string(),
                    None => "?".to_string(),
                };
                println!(
                    "{} n={} e={} omega={} alpha={} chi={}",
                    g6::encode_graph6(&g)?,
                    g.n(),
                    g.edge_count(),
                    g.clique_number(),
                    g.independence_number(),
                    chi
                );
            }
        }
        Command::Arrow { file, tuple, uni } => {
            let graphs = read_graphs(&file.file, file.lenient)?;
            match (tuple, uni) {
                (Some(t), None) => {
                    let tuple = ArrowTuple::new(parse_usize_list(&t)?)?;
                    for g in graphs {
                        match arrowing::arrows_witness(&g, &tuple) {
                            None => println!("{} true", g6::encode_graph6(&g)?),
                            Some(colors) => {
                                let w: Vec<String> =
                                    colors.iter().map(|c| c.to_string()).collect();
                                println!(
                                    "{} false witness={}",
                                    g6::encode_graph6(&g)?,
                                    w.join(",")
                                );
                            }
                        }
                    }
                }
                (None, Some(mp)) => {
                    let nums = parse_usize_list(&mp)?;
                    if nums.len() != 2 {
                        bail!("--uni takes two numbers m,p");
                    }
                    let spec = ArrowSpec::new(nums[0], nums[1])?;
                    for g in graphs {
                        println!(
                            "{} {}",
                            g6::encode_graph6(&g)?,
                            arrowing::arrows_uni(&g, &spec)
                        );
                    }
                }
                _ => bail!("pass exactly one of --tuple or --uni"),
            }
        }
        Command::Subsets { file, t } => {
            if t < 2 {
                bail!("--t must be at least 2");
            }
            for g in read_graphs(&file.file, file.lenient)? {
                let sets = maximal_ktfree_subsets(&g, t);
                let rendered: Vec<String> = sets
                    .iter()
                    .map(|s| {
                        let vs: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                        format!("{{{}}}", vs.join(","))
                    })
                    .collect();
                println!(
                    "{} {} subsets: {}",
                    g6::encode_graph6(&g)?,
                    sets.len(),
                    rendered.join(" ")
                );
            }
        }
        Command::PlusKt { file, t } => {
            if t < 2 {
                bail!("--t must be at least 2");
            }
            for g in read_graphs(&file.file, file.lenient)? {
                println!("{} {}", g6::encode_graph6(&g)?, is_plus_kt(&g, t));
            }
        }
        Command::Extend {
            input,
            k,
            m,
            p,
            q,
            alpha2,
            audit_full_tuples,
            out,
            lenient,
        } => {
            let job = ExtensionJob {
                seeds: read_graphs(&input, lenient)?,
                k,
                spec: ArrowSpec::new(m, p)?,
                q,
                alpha_mode: alpha_mode(alpha2),
                audit_full_tuples,
            };
            let graphs = extend_independent(&job)?;
            emit_graphs(&graphs, out.as_deref())?;
        }
        Command::Closure {
            input,
            m,
            p,
            q,
            plus_t,
            alpha2,
            audit_full_tuples,
            out,
            lenient,
        } => {
            if plus_t < 2 {
                bail!("--plus-t must be at least 2");
            }
            let maximal = read_graphs(&input, lenient)?;
            let graphs = edge_removal_closure(
                &maximal,
                &ArrowSpec::new(m, p)?,
                q,
                plus_t,
                alpha_mode(alpha2),
                audit_full_tuples,
            );
            emit_graphs(&graphs, out.as_deref())?;
        }
        Command::Base {
            m,
            p,
            q,
            n,
            plus_t,
            alpha2,
            audit_full_tuples,
            out,
        } => {
            let graphs = pipeline::base_enumerate(
                &ArrowSpec::new(m, p)?,
                q,
                n,
                plus_t,
                alpha_mode(alpha2),
                audit_full_tuples,
            )?;
            emit_graphs(&graphs, out.as_deref())?;
        }
        Command::Run {
            schedule,
            resume,
            until,
            extended,
            audit_full_tuples,
            out_dir,
        } => {
            let text = fs::read_to_string(&schedule)
                .with_context(|| format!("cannot read {}", schedule.display()))?;
            let schedule = Schedule::parse(&text)?;
            let opts = RunOptions {
                out_dir: out_dir.unwrap_or_else(|| PathBuf::from("runs").join(&schedule.name)),
                resume,
                until_label: until,
                include_extended: extended,
                audit_full_tuples,
                verbose: true,
            };
            let manifest = run_schedule(&schedule, &opts)?;
            println!(
                "{}: {} of {} stages complete, manifest at {}",
                manifest.schedule_name,
                manifest.records.len(),
                manifest.stages_total,
                opts.out_dir.join("manifest.txt").display()
            );
        }
        Command::Verify { manifest, expected } => {
            let manifest = Manifest::load(&manifest)?;
            let rows = parse_expected(
                &fs::read_to_string(&expected)
                    .with_context(|| format!("cannot read {}", expected.display()))?,
            )?;
            let report = verify_tables(&manifest, &rows);
            println!("{}", report.render());
            if report.failed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Brute { tuple, q, nmax } => {
            let tuple = ArrowTuple::new(parse_usize_list(&tuple)?)?;
            let res = brute_force_folkman(&tuple, q, nmax)?;
            match res.value {
                Some(v) => {
                    println!("value={v} extremal={}", res.extremal.len());
                    for g in &res.extremal {
                        println!("{}", g6::encode_graph6(g)?);
                    }
                }
                None => println!("value=none (no graph up to {nmax} vertices)"),
            }
        }
        Command::Lift { file, t, m, p, q } => {
            for g in read_graphs(&file.file, file.lenient)? {
                let lifted = lift_upper_bound(&g, t, &ArrowSpec::new(m, p)?, q)?;
                println!("{}", g6::encode_graph6(&lifted)?);
            }
            eprintln!("lift verified: members of H~({}|{}; {})", m + t, p, q + t);
        }
        Command::Report { manifests, witness } => {
            let loaded: Vec<Manifest> = manifests
                .iter()
                .map(|p| Manifest::load(p))
                .collect::<Result<Vec<_>, _>>()?;
            let witness = witness
                .map(|p| -> Result<Graph> {
                    let graphs = read_graphs(&p, false)?;
                    match graphs.len() {
                        1 => Ok(graphs.into_iter().next().unwrap()),
                        n => bail!("witness file must hold exactly one graph, got {n}"),
                    }
                })
                .transpose()?;
            let report = report_main_theorem(&loaded, witness.as_ref());
            println!("{}", report.render());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
