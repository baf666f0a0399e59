//! Command-line front end.
//!
//! Every run writes its outputs plus a `manifest.json` into the output
//! directory. `replay --manifest` re-runs a recorded command and checks that
//! each output comes out byte-identical.

use std::ffi::OsString;
use std::fmt;
use std::io::Cursor;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use shellwalk_core::cascade::run_independent_cascade_with;
use shellwalk_core::experiment::{compare_targets_with, run_experiment_with};
use shellwalk_core::generate::{barabasi_albert, erdos_renyi, planted_core_periphery};
use shellwalk_core::{
    k_shell_decompose, rng, walk, Algorithm, CascadeConfig, ExperimentConfig, ExperimentError, Graph, Label, NodeId,
    PlantedParams, ShellAssignment, ShellProfile, TargetSet, WalkConfig,
};

use crate::error::{Error, Result};
use crate::io::{read_edge_list, write_canonical_edge_list, write_csv_file, write_file, write_shell_assignment, IngestOptions};
use crate::manifest::{sha256_hex, FileRecord, Manifest, MANIFEST_FILE};
use crate::parallel::Parallel;
use crate::report::{self, write_json};

#[derive(Parser, Debug)]
#[command(name = "shellwalk", version, about = "k-shell structure, cascades and periphery-to-core walks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Command {
    /// Shell index of every node.
    Decompose(DecomposeArgs),
    /// Per-shell density, cascading power, leakage power and pseudo-cores.
    Profile(ProfileArgs),
    /// Cascading power per shell, or one cascade from given seed nodes.
    Cascade(CascadeArgs),
    /// A single walk with a step-by-step trace.
    Walk(WalkArgs),
    /// Step-count CDFs over all periphery instances.
    Experiment(ExperimentArgs),
    /// Seeded synthetic graph.
    Generate(GenerateArgs),
    /// Re-run a recorded command and check its outputs match.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct Common {
    /// Directory receiving every output file.
    #[arg(long, short = 'o', env = "SHELLWALK_OUTPUT_DIR", default_value = ".")]
    pub output_dir: PathBuf,
    /// Master seed; generated and printed when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; defaults to the available cores. Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct InputArgs {
    /// Edge list: two labels per line, '#' comments.
    #[arg(long, short = 'i')]
    pub input: PathBuf,
    /// Keep every component instead of only the largest.
    #[arg(long)]
    pub all_components: bool,
    /// Accept non-numeric node labels.
    #[arg(long)]
    pub text_labels: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct CascadeParams {
    /// Infection probability per edge attempt.
    #[arg(long = "p", default_value_t = shellwalk_core::cascade::DEFAULT_P_INFECT)]
    pub p: f64,
    /// Cascades per shell.
    #[arg(long, default_value_t = 200)]
    pub samples: u64,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    /// Also write the cleaned graph as a canonical edge list.
    #[arg(long)]
    pub write_edges: bool,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub cascade: CascadeParams,
    /// Pseudo-core threshold on the ratio to the core's cascading power.
    #[arg(long, default_value_t = shellwalk_core::metrics::DEFAULT_THETA)]
    pub theta: f64,
    /// Scale constant of leakage power.
    #[arg(long, default_value_t = shellwalk_core::metrics::DEFAULT_KAPPA)]
    pub kappa: f64,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct CascadeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub cascade: CascadeParams,
    /// Shells to estimate; all nonempty shells when omitted.
    #[arg(long, value_delimiter = ',')]
    pub shells: Vec<u32>,
    /// Run one cascade from these node labels instead.
    #[arg(long, value_delimiter = ',')]
    pub seed_nodes: Vec<String>,
    #[arg(long)]
    pub max_iterations: Option<u32>,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct PseudoParams {
    #[command(flatten)]
    pub cascade: CascadeParams,
    #[arg(long, default_value_t = shellwalk_core::metrics::DEFAULT_THETA)]
    pub theta: f64,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct WalkArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = parse_algorithm)]
    pub algorithm: Algorithm,
    /// Label of the start node.
    #[arg(long)]
    pub start: String,
    /// core, pseudo, or a comma-separated list of shell indices.
    #[arg(long, default_value = "core")]
    pub targets: Targets,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[command(flatten)]
    pub pseudo: PseudoParams,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',', default_value = "rw,dhc,sh,sa", value_parser = parse_algorithm)]
    pub algorithms: Vec<Algorithm>,
    /// core, pseudo, compare, or a comma-separated list of shell indices.
    #[arg(long, default_value = "core")]
    pub targets: Targets,
    /// Largest k of the reported CDF.
    #[arg(long, default_value_t = shellwalk_core::experiment::DEFAULT_K_MAX)]
    pub kmax: usize,
    /// Keep start nodes adjacent to a target node.
    #[arg(long)]
    pub include_adjacent: bool,
    /// Uniformly subsample at most this many instances.
    #[arg(long)]
    pub sample_limit: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[command(flatten)]
    pub pseudo: PseudoParams,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKindArg {
    Ba,
    Er,
    Planted,
}

#[derive(Args, Clone, Debug, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub kind: GraphKindArg,
    /// Node count for ba and er.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub attachments: usize,
    /// Edge probability for er.
    #[arg(long, default_value_t = 0.01)]
    pub edge_p: f64,
    #[arg(long, default_value_t = 20)]
    pub core_size: usize,
    #[arg(long, default_value_t = 1.0)]
    pub core_density: f64,
    #[arg(long, default_value_t = 0)]
    pub mid_size: usize,
    #[arg(long, default_value_t = 0)]
    pub mid_links: usize,
    #[arg(long, default_value_t = 200)]
    pub trees: usize,
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
}

#[derive(Args, Clone, Debug)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output directory for the re-run; the recorded one when absent.
    #[arg(long, short = 'o')]
    pub output_dir: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Skip the byte comparison against recorded output hashes.
    #[arg(long)]
    pub no_verify: bool,
}

fn parse_algorithm(s: &str) -> std::result::Result<Algorithm, String> {
    s.parse().map_err(|e: shellwalk_core::walk::UnknownAlgorithm| e.to_string())
}

/// Target shells chosen on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Targets {
    Core,
    /// Detected pseudo-cores together with the core.
    Pseudo,
    /// Core and pseudo-core targets on the same instances.
    Compare,
    Shells(Vec<u32>),
}

impl fmt::Display for Targets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Targets::Core => f.write_str("core"),
            Targets::Pseudo => f.write_str("pseudo"),
            Targets::Compare => f.write_str("compare"),
            Targets::Shells(s) => {
                let parts: Vec<String> = s.iter().map(u32::to_string).collect();
                f.write_str(&parts.join(","))
            }
        }
    }
}

impl FromStr for Targets {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "core" => Ok(Targets::Core),
            "pseudo" => Ok(Targets::Pseudo),
            "compare" => Ok(Targets::Compare),
            _ => {
                let shells = s
                    .split(',')
                    .map(|t| t.trim().parse::<u32>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| format!("expected core, pseudo, compare or shell indices, found {s:?}"))?;
                Ok(Targets::Shells(shells))
            }
        }
    }
}

impl From<Targets> for String {
    fn from(t: Targets) -> String {
        t.to_string()
    }
}

impl TryFrom<String> for Targets {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl Command {
    fn common_mut(&mut self) -> Option<&mut Common> {
        match self {
            Command::Decompose(a) => Some(&mut a.common),
            Command::Profile(a) => Some(&mut a.common),
            Command::Cascade(a) => Some(&mut a.common),
            Command::Walk(a) => Some(&mut a.common),
            Command::Experiment(a) => Some(&mut a.common),
            Command::Generate(a) => Some(&mut a.common),
            Command::Replay(_) => None,
        }
    }

    fn input_mut(&mut self) -> Option<&mut InputArgs> {
        match self {
            Command::Decompose(a) => Some(&mut a.input),
            Command::Profile(a) => Some(&mut a.input),
            Command::Cascade(a) => Some(&mut a.input),
            Command::Walk(a) => Some(&mut a.input),
            Command::Experiment(a) => Some(&mut a.input),
            Command::Generate(_) | Command::Replay(_) => None,
        }
    }
}

/// Files written by one run, relative to the output directory.
struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    fn path(&mut self, name: &str) -> PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let path = self.path(name);
        write_file(&path, |w| write_json(value, w))
    }
}

struct Loaded {
    graph: Graph,
    input: report::InputSummary,
    record: FileRecord,
}

fn load(args: &InputArgs) -> Result<Loaded> {
    let bytes = std::fs::read(&args.input).map_err(|e| Error::io(&args.input, e))?;
    let options = IngestOptions {
        numeric_labels: !args.text_labels,
    };
    let loaded = read_edge_list(Cursor::new(&bytes), &args.input, options)?;
    let input = report::InputSummary::new(&loaded.graph, &loaded.cleaning, loaded.comment_lines);
    let graph = if args.all_components {
        loaded.graph
    } else {
        loaded.graph.largest_connected_component()?
    };
    let path = std::fs::canonicalize(&args.input).map_err(|e| Error::io(&args.input, e))?;
    Ok(Loaded {
        graph,
        input,
        record: FileRecord {
            path,
            sha256: sha256_hex(&bytes),
        },
    })
}

fn find_node(g: &Graph, label: &str) -> Result<NodeId> {
    g.find(&Label::parse(label))
        .ok_or_else(|| Error::Usage(format!("node {label:?} is not in the analysed graph")))
}

fn cascade_config(params: &CascadeParams, seed: u64) -> Result<CascadeConfig> {
    let cfg = CascadeConfig::new(params.p, seed);
    cfg.validate()?;
    if params.samples == 0 {
        return Err(shellwalk_core::CascadeError::NoSamples.into());
    }
    Ok(cfg)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta > 0.0 && theta <= 1.0 {
        Ok(())
    } else {
        Err(shellwalk_core::MetricsError::BadTheta(theta).into())
    }
}

/// Profile with cascades on every shell plus the pseudo-core shells it implies.
fn pseudo_profile(
    par: &Parallel,
    g: &Graph,
    a: &ShellAssignment,
    params: &PseudoParams,
    seed: u64,
) -> Result<(ShellProfile, TargetSet)> {
    check_theta(params.theta)?;
    let cfg = cascade_config(&params.cascade, seed)?;
    let profile = par.profile(g, a, shellwalk_core::metrics::DEFAULT_KAPPA, params.cascade.samples, &cfg)?;
    let pseudo = profile.detect_pseudo_cores(params.theta)?;
    Ok((profile, pseudo))
}

fn explicit_targets(a: &ShellAssignment, shells: &[u32]) -> Result<TargetSet> {
    let set: TargetSet = shells.iter().copied().collect();
    if set.is_empty() {
        return Err(shellwalk_core::WalkError::NoTargets.into());
    }
    if let Some(s) = set.iter().find(|&s| a.members(s).is_empty()) {
        return Err(Error::Usage(format!("target shell {s} has no nodes")));
    }
    Ok(set)
}

fn write_profile_files(out: &mut Outputs, profile: &ShellProfile, pseudo: &TargetSet, params: &PseudoParams) -> Result<()> {
    let path = out.path("profile.csv");
    write_csv_file(&path, |w| report::write_profile_csv(profile, Some(pseudo), w))?;
    out.json(
        "profile.json",
        &report::ProfileSummary {
            n: profile.n,
            m: profile.m,
            core_index: profile.core_index,
            kappa: profile.kappa,
            theta: params.theta,
            p_infect: params.cascade.p,
            samples: params.cascade.samples,
            densest_shell: profile.densest_shell(),
            pseudo_core_indices: pseudo,
            shells: &profile.shells,
        },
    )
}

fn write_cdf_files(out: &mut Outputs, stem: &str, report: &shellwalk_core::CdfReport) -> Result<()> {
    let path = out.path(&format!("{stem}.csv"));
    write_csv_file(&path, |w| report::write_cdf_csv(report, w))?;
    out.json(&format!("{stem}.json"), report)?;
    let path = out.path(&format!("{stem}.dat"));
    write_file(&path, |w| report::write_cdf_dat(report, w))
}

fn decompose(args: &DecomposeArgs, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let a = k_shell_decompose(g);
    let path = out.path("shells.txt");
    write_file(&path, |w| write_shell_assignment(g, &a, w))?;
    let summary = report::DecompositionSummary::new(g, &a, !args.input.all_components, loaded.input);
    out.json("decomposition.json", &summary)?;
    if args.write_edges {
        let path = out.path("edges.txt");
        write_file(&path, |w| write_canonical_edge_list(g, w))?;
    }
    let msg = format!("{} nodes, {} edges, core index {}", g.node_count(), g.edge_count(), a.core_index());
    Ok((msg, Some(loaded.record)))
}

fn profile(args: &ProfileArgs, seed: u64, par: &Parallel, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    check_theta(args.theta)?;
    let cfg = cascade_config(&args.cascade, seed)?;
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let a = k_shell_decompose(g);
    let profile = par.profile(g, &a, args.kappa, args.cascade.samples, &cfg)?;
    let pseudo = profile.detect_pseudo_cores(args.theta)?;
    let params = PseudoParams {
        cascade: args.cascade.clone(),
        theta: args.theta,
    };
    write_profile_files(out, &profile, &pseudo, &params)?;
    let msg = format!(
        "{} shells, core index {}, pseudo-cores {:?}",
        profile.shells.len(),
        profile.core_index,
        pseudo.iter().collect::<Vec<_>>()
    );
    Ok((msg, Some(loaded.record)))
}

#[derive(Serialize)]
struct SingleCascade {
    seed_nodes: Vec<String>,
    p_infect: f64,
    infected_count: usize,
    iterations: u32,
    infected: Vec<String>,
}

fn cascade(args: &CascadeArgs, seed: u64, par: &Parallel, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    let mut cfg = cascade_config(&args.cascade, seed)?;
    cfg.max_iterations = args.max_iterations;
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let a = k_shell_decompose(g);
    if !args.seed_nodes.is_empty() {
        let seeds = args.seed_nodes.iter().map(|s| find_node(g, s)).collect::<Result<Vec<_>>>()?;
        let mut rng = rng::stream(seed, 0);
        let r = run_independent_cascade_with(g, &seeds, &cfg, &mut rng, true)?;
        let mut infected: Vec<NodeId> = r.infected_set.unwrap_or_default();
        infected.sort_unstable();
        out.json(
            "cascade.json",
            &SingleCascade {
                seed_nodes: args.seed_nodes.clone(),
                p_infect: cfg.p_infect,
                infected_count: r.infected_count,
                iterations: r.iterations,
                infected: infected.iter().map(|&u| g.label(u).to_string()).collect(),
            },
        )?;
        let msg = format!("{} infected after {} rounds", r.infected_count, r.iterations);
        return Ok((msg, Some(loaded.record)));
    }
    let shells: Vec<u32> = if args.shells.is_empty() {
        a.nonempty_shells().collect()
    } else {
        args.shells.clone()
    };
    let mut profile = ShellProfile::structural(g, &a, shellwalk_core::metrics::DEFAULT_KAPPA);
    for &s in &shells {
        let stats = par.cascading_power(g, &a, s, args.cascade.samples, &cfg)?;
        profile.set_cascade(s, stats);
    }
    let path = out.path("cascading_power.csv");
    write_csv_file(&path, |w| report::write_cascading_power_csv(&profile, cfg.p_infect, w))?;
    Ok((format!("cascading power of {} shells", shells.len()), Some(loaded.record)))
}

#[derive(Serialize)]
struct WalkSummary<'a> {
    algorithm: Algorithm,
    start: String,
    targets: &'a TargetSet,
    status: shellwalk_core::WalkStatus,
    numsteps: usize,
    path: Vec<String>,
}

fn walk_cmd(args: &WalkArgs, seed: u64, par: &Parallel, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let a = k_shell_decompose(g);
    let start = find_node(g, &args.start)?;
    let targets = match &args.targets {
        Targets::Core => TargetSet::core(&a),
        Targets::Pseudo => {
            let (_, pseudo) = pseudo_profile(par, g, &a, &args.pseudo, seed)?;
            if pseudo.is_empty() {
                return Err(ExperimentError::NoPseudoCores.into());
            }
            pseudo.union(&TargetSet::core(&a))
        }
        Targets::Compare => return Err(Error::Usage("compare targets apply to experiments only".into())),
        Targets::Shells(s) => explicit_targets(&a, s)?,
    };
    let cfg = WalkConfig {
        max_steps: args.max_steps,
        ..WalkConfig::new(args.algorithm, targets.clone(), seed)
    };
    if cfg.max_steps == Some(0) {
        return Err(shellwalk_core::WalkError::ZeroStepCap.into());
    }
    let result = walk(g, &a, start, &cfg)?;
    let path = out.path("walk_trace.csv");
    write_csv_file(&path, |w| report::write_walk_trace(g, &a, &result, w))?;
    out.json(
        "walk.json",
        &WalkSummary {
            algorithm: args.algorithm,
            start: args.start.clone(),
            targets: &targets,
            status: result.status,
            numsteps: result.numsteps,
            path: result.path.iter().map(|&u| g.label(u).to_string()).collect(),
        },
    )?;
    Ok((format!("{:?} after {} steps", result.status, result.numsteps), Some(loaded.record)))
}

#[derive(Serialize)]
struct NotApplicable<'a> {
    applicable: bool,
    reason: &'a str,
    theta: f64,
    pseudo_core_indices: &'a TargetSet,
}

fn experiment(args: &ExperimentArgs, seed: u64, par: &Parallel, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    let cfg = ExperimentConfig {
        algorithms: args.algorithms.clone(),
        exclude_adjacent: !args.include_adjacent,
        k_max: args.kmax,
        master_seed: seed,
        sample_limit: args.sample_limit,
        max_steps: args.max_steps,
    };
    cfg.validate()?;
    let loaded = load(&args.input)?;
    let g = &loaded.graph;
    let a = k_shell_decompose(g);
    let core = TargetSet::core(&a);
    let record = Some(loaded.record.clone());
    let targets = match &args.targets {
        Targets::Core => core,
        Targets::Shells(s) => explicit_targets(&a, s)?,
        Targets::Pseudo | Targets::Compare => {
            let (profile, pseudo) = pseudo_profile(par, g, &a, &args.pseudo, seed)?;
            write_profile_files(out, &profile, &pseudo, &args.pseudo)?;
            if args.targets == Targets::Compare {
                if pseudo.is_empty() {
                    out.json(
                        "compare.json",
                        &NotApplicable {
                            applicable: false,
                            reason: "no pseudo-core shells detected",
                            theta: args.pseudo.theta,
                            pseudo_core_indices: &pseudo,
                        },
                    )?;
                    return Ok(("no pseudo-core shells detected; comparison not applicable".into(), record));
                }
                let pseudo_targets = pseudo.union(&core);
                let paired = compare_targets_with(par, g, &a, &core, &pseudo_targets, &cfg)?;
                write_cdf_files(out, "cdf_core", &paired.core)?;
                write_cdf_files(out, "cdf_pseudo", &paired.pseudo)?;
                out.json("compare.json", &report::CompareSummary::new(&paired))?;
                let ratios: Vec<String> = paired
                    .mean_step_ratio
                    .iter()
                    .map(|(alg, r)| format!("{alg}={}", r.map_or("n/a".into(), |x| format!("{x:.3}"))))
                    .collect();
                let msg = format!(
                    "{} instances, core/pseudo mean-step ratio {}",
                    paired.core.instance_count,
                    ratios.join(" ")
                );
                return Ok((msg, record));
            }
            if pseudo.is_empty() {
                return Err(ExperimentError::NoPseudoCores.into());
            }
            pseudo.union(&core)
        }
    };
    let report = run_experiment_with(par, g, &a, &targets, &cfg)?;
    write_cdf_files(out, "cdf", &report)?;
    let reached: Vec<String> = report
        .algorithms
        .iter()
        .map(|r| format!("{}={}/{}", r.algorithm, r.reached, r.instances))
        .collect();
    Ok((format!("{} instances, reached {}", report.instance_count, reached.join(" ")), record))
}

#[derive(Serialize)]
struct GeneratedSummary {
    kind: GraphKindArg,
    seed: u64,
    n: usize,
    m: usize,
    core_index: u32,
    shell_sizes: Vec<usize>,
}

fn generate_cmd(args: &GenerateArgs, seed: u64, out: &mut Outputs) -> Result<(String, Option<FileRecord>)> {
    let g = match args.kind {
        GraphKindArg::Ba => barabasi_albert(args.n, args.attachments, seed)?,
        GraphKindArg::Er => erdos_renyi(args.n, args.edge_p, seed)?,
        GraphKindArg::Planted => planted_core_periphery(
            &PlantedParams {
                core_size: args.core_size,
                core_density: args.core_density,
                mid_size: args.mid_size,
                mid_core_links: args.mid_links,
                tree_count: args.trees,
                tree_depth: args.depth,
            },
            seed,
        )?,
    };
    let a = k_shell_decompose(&g);
    let path = out.path("edges.txt");
    write_file(&path, |w| write_canonical_edge_list(&g, w))?;
    out.json(
        "graph.json",
        &GeneratedSummary {
            kind: args.kind,
            seed,
            n: g.node_count(),
            m: g.edge_count(),
            core_index: a.core_index(),
            shell_sizes: a.shells().iter().map(Vec::len).collect(),
        },
    )?;
    Ok((format!("{} nodes, {} edges", g.node_count(), g.edge_count()), None))
}

/// Result of one executed command.
#[derive(Debug)]
pub struct RunOutcome {
    pub output_dir: PathBuf,
    pub manifest: Manifest,
    pub message: String,
}

/// Runs a non-replay command and writes its manifest.
pub fn execute(mut command: Command) -> Result<RunOutcome> {
    if let Command::Replay(r) = &command {
        return replay(r);
    }
    let common = command.common_mut().expect("non-replay command");
    let seed = match common.seed {
        Some(s) => s,
        None => {
            let s = rand::random::<u64>();
            println!("generated seed {s}");
            common.seed = Some(s);
            s
        }
    };
    let dir = common.output_dir.clone();
    let par = Parallel::new(common.threads)?;
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    let mut out = Outputs {
        dir: dir.clone(),
        files: Vec::new(),
    };
    let (message, input) = match &command {
        Command::Decompose(a) => decompose(a, &mut out)?,
        Command::Profile(a) => profile(a, seed, &par, &mut out)?,
        Command::Cascade(a) => cascade(a, seed, &par, &mut out)?,
        Command::Walk(a) => walk_cmd(a, seed, &par, &mut out)?,
        Command::Experiment(a) => experiment(a, seed, &par, &mut out)?,
        Command::Generate(a) => generate_cmd(a, seed, &mut out)?,
        Command::Replay(_) => unreachable!(),
    };
    if let (Some(args), Some(rec)) = (command.input_mut(), &input) {
        args.input = rec.path.clone();
    }
    let manifest = Manifest::new(command, par.threads(), input, &dir, &out.files)?;
    manifest.write(&dir)?;
    Ok(RunOutcome {
        output_dir: dir,
        manifest,
        message,
    })
}

fn replay(args: &ReplayArgs) -> Result<RunOutcome> {
    let recorded = Manifest::load(&args.manifest)?;
    let mut command = recorded.args.clone();
    if let (Some(input), Some(rec)) = (command.input_mut(), &recorded.input) {
        let now = crate::manifest::sha256_file(&input.input)?;
        if now != rec.sha256 {
            return Err(Error::Manifest(format!("{} changed since the recorded run", input.input.display())));
        }
    }
    let common = command
        .common_mut()
        .ok_or_else(|| Error::Manifest("recorded command cannot be replayed".into()))?;
    if common.seed.is_none() {
        return Err(Error::Manifest("recorded command has no seed".into()));
    }
    if let Some(dir) = &args.output_dir {
        common.output_dir = dir.clone();
    }
    if args.threads.is_some() {
        common.threads = args.threads;
    }
    let outcome = execute(command)?;
    if !args.no_verify {
        recorded.verify_outputs(&outcome.output_dir)?;
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

fn report_error(kind: &str, message: String, exit_code: i32) {
    let line = serde_json::to_string(&Diagnostic {
        error: kind,
        message,
        exit_code,
    })
    .expect("diagnostic serializes");
    eprintln!("{line}");
}

/// Parses `argv`, runs the command and returns the process exit status.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            eprint!("{}", e.render());
            report_error("usage", e.kind().to_string(), 2);
            return 2;
        }
    };
    match execute(cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.message);
            println!(
                "wrote {} files and {} to {}",
                outcome.manifest.outputs.len(),
                MANIFEST_FILE,
                outcome.output_dir.display()
            );
            0
        }
        Err(e) => {
            let code = e.exit_code();
            report_error(e.kind(), e.to_string(), code);
            code
        }
    }
}
