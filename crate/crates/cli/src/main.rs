//! Command-line front end for the AVR controller tuning studies: runs the
//! multi-objective optimization cases, re-evaluates published solutions and
//! sweeps the generator-parameter robustness grid, emitting CSV/JSON
//! artifacts for plotting.

mod genes;
mod manifest;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use foavr::avr::{DisturbanceInjection, ProtocolKind, SimProtocol};
use foavr::lti::{step_metrics, SimTrace};
use foavr::moea::nsga2_run;
use foavr::objectives::{evaluate, CaseId, ControlDeviationMode, EvalSettings};
use foavr::{AvrPlantParams64, ChaoticRng64, ControllerGenes64, NsgaConfig64, OustaloupConfig64};

use genes::{fmt_f64, read_genes_csv, GeneRow};
use manifest::RunManifest;

#[derive(Parser)]
#[command(name = "foavr", version, about = "PID/FOPID tuning for AVR systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the chaotic NSGA-II optimization for one case and controller mode.
    Optimize(OptimizeArgs),
    /// Re-evaluate controller gene rows under the case's objectives.
    Evaluate(EvaluateArgs),
    /// Sweep the generator gain/time-constant grid and report step metrics.
    Robustness(RobustnessArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
    #[value(name = "III", alias = "iii")]
    III,
}

impl From<CaseArg> for CaseId {
    fn from(c: CaseArg) -> CaseId {
        match c {
            CaseArg::I => CaseId::I,
            CaseArg::II => CaseId::II,
            CaseArg::III => CaseId::III,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Pid,
    Fopid,
}

impl ModeArg {
    fn as_str(self) -> &'static str {
        match self {
            ModeArg::Pid => "pid",
            ModeArg::Fopid => "fopid",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InjectionArg {
    GeneratorInput,
    GeneratorOutput,
}

impl From<InjectionArg> for DisturbanceInjection {
    fn from(i: InjectionArg) -> DisturbanceInjection {
        match i {
            InjectionArg::GeneratorInput => DisturbanceInjection::GeneratorInput,
            InjectionArg::GeneratorOutput => DisturbanceInjection::GeneratorOutput,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum J2ModeArg {
    Deviation,
    Increment,
}

impl From<J2ModeArg> for ControlDeviationMode {
    fn from(m: J2ModeArg) -> ControlDeviationMode {
        match m {
            J2ModeArg::Deviation => ControlDeviationMode::Deviation,
            J2ModeArg::Increment => ControlDeviationMode::Increment,
        }
    }
}

/// Flags shared by every command that evaluates the closed loop.
#[derive(Args)]
struct EvalFlags {
    /// Plant parameter JSON file (keys KA,tauA,KE,tauE,KG,tauG,KS,tauS);
    /// nominal values when omitted.
    #[arg(long)]
    plant: Option<PathBuf>,
    /// Simulation step in seconds.
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Simulation horizon in seconds (case default when omitted).
    #[arg(long)]
    horizon: Option<f64>,
    /// Where the unit load disturbance enters the loop.
    #[arg(long = "disturbance-at", value_enum, default_value_t = InjectionArg::GeneratorInput)]
    disturbance_at: InjectionArg,
    /// Control-deviation reading for J2.
    #[arg(long = "j2-mode", value_enum, default_value_t = J2ModeArg::Deviation)]
    j2_mode: J2ModeArg,
}

impl EvalFlags {
    fn plant(&self) -> Result<AvrPlantParams64> {
        let params = match &self.plant {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read plant file {}", path.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("bad plant JSON in {}", path.display()))?
            }
            None => AvrPlantParams64::nominal(),
        };
        for warning in params.validate().map_err(|e| anyhow!("{e}"))? {
            eprintln!("warning: {warning}");
        }
        Ok(params)
    }

    fn settings(&self) -> EvalSettings<f64> {
        EvalSettings {
            dt: self.dt,
            injection: self.disturbance_at.into(),
            j2_mode: self.j2_mode.into(),
            horizon: self.horizon,
        }
    }
}

#[derive(Args)]
struct OptimizeArgs {
    /// Objective case: I = (J1,J2) tracking/control cost, II = (J1,J3)
    /// tracking/load disturbance, III = all three.
    #[arg(long, value_enum, required_unless_present = "manifest")]
    case: Option<CaseArg>,
    /// Controller structure to tune.
    #[arg(long, value_enum, required_unless_present = "manifest")]
    mode: Option<ModeArg>,
    /// Population size.
    #[arg(long, default_value_t = 100)]
    pop: usize,
    /// Generation cap.
    #[arg(long = "max-gens", default_value_t = 500)]
    max_gens: usize,
    /// Initial value of the chaotic logistic stream.
    #[arg(long = "seed-x0", default_value_t = 0.2027)]
    seed_x0: f64,
    /// Disable the per-generation Pareto-fraction cap on rank-1 survivors.
    #[arg(long = "no-front-truncation")]
    no_front_truncation: bool,
    /// Re-run from a previously written manifest, ignoring the tuning flags.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    eval: EvalFlags,
    /// Output directory for front.csv, genlog.csv and manifest.json.
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Headed CSV of gene rows (columns Kp,Ki,Kd[,lambda,mu]; extra columns
    /// ignored, so the transcribed table fixtures work as-is).
    #[arg(long)]
    genes: PathBuf,
    /// Also write one t,r,y,u,e trace CSV per row and protocol.
    #[arg(long)]
    traces: bool,
    #[command(flatten)]
    eval: EvalFlags,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct RobustnessArgs {
    /// Headed CSV of gene rows; the sweep uses one row (see --row).
    #[arg(long)]
    genes: PathBuf,
    /// 1-based data row of the genes file to sweep.
    #[arg(long, default_value_t = 1)]
    row: usize,
    /// Generator gains to sweep (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.7, 0.8, 0.9, 1.0])]
    kg: Vec<f64>,
    /// Generator time constants to sweep (comma separated).
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 1.333, 1.667, 2.0])]
    taug: Vec<f64>,
    #[command(flatten)]
    eval: EvalFlags,
    #[arg(long = "out-dir")]
    out_dir: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Optimize(args) => cmd_optimize(args),
        Command::Evaluate(args) => cmd_evaluate(args),
        Command::Robustness(args) => cmd_robustness(args),
    };
    if let Err(err) = outcome {
        eprintln!("error: {err:#}");
        std::process::exit(1);
    }
}

fn genes_from_slice(g: &[f64], mode: ModeArg) -> ControllerGenes64 {
    match mode {
        ModeArg::Pid => ControllerGenes64::pid(g[0], g[1], g[2]),
        ModeArg::Fopid => ControllerGenes64::new(g[0], g[1], g[2], g[3], g[4]),
    }
}

fn gene_bounds(mode: ModeArg) -> Vec<(f64, f64)> {
    let mut bounds = vec![(0.0, 100.0); 3];
    if mode == ModeArg::Fopid {
        bounds.extend([(0.0, 2.0); 2]);
    }
    bounds
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn front_header(case: CaseId) -> String {
    format!("{},Kp,Ki,Kd,lambda,mu\n", case.labels().join(","))
}

fn gene_cells(genes: &ControllerGenes64) -> String {
    [genes.kp, genes.ki, genes.kd, genes.lambda, genes.mu]
        .map(fmt_f64)
        .join(",")
}

fn cmd_optimize(args: OptimizeArgs) -> Result<()> {
    let from_manifest = match &args.manifest {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read manifest {}", path.display()))?;
            let m: RunManifest = serde_json::from_str(&text)
                .with_context(|| format!("bad manifest JSON in {}", path.display()))?;
            if m.command != "optimize" {
                bail!("manifest {} is not an optimize manifest", path.display());
            }
            Some(m)
        }
        None => None,
    };

    let (case, mode, config, plant, oustaloup, settings, seed_x0) = match from_manifest {
        Some(m) => {
            let mode = match m.mode.as_deref() {
                Some("pid") => ModeArg::Pid,
                Some("fopid") => ModeArg::Fopid,
                other => bail!("manifest has unusable mode {other:?}"),
            };
            (
                m.case.ok_or_else(|| anyhow!("manifest is missing case"))?,
                mode,
                m.nsga.ok_or_else(|| anyhow!("manifest is missing nsga"))?,
                m.plant,
                m.oustaloup,
                m.eval,
                m.seed_x0.ok_or_else(|| anyhow!("manifest is missing seed_x0"))?,
            )
        }
        None => {
            let case: CaseId = args.case.expect("required by clap").into();
            let mode = args.mode.expect("required by clap");
            let mut config = NsgaConfig64::new(gene_bounds(mode));
            config.pop_size = args.pop;
            config.max_generations = args.max_gens;
            config.truncate_every_generation = !args.no_front_truncation;
            (
                case,
                mode,
                config,
                args.eval.plant()?,
                OustaloupConfig64::default(),
                args.eval.settings(),
                args.seed_x0,
            )
        }
    };

    let mut rng = ChaoticRng64::seed(4.0, seed_x0).map_err(|e| anyhow!("{e}"))?;
    let evaluator = |g: &[f64]| {
        evaluate(&genes_from_slice(g, mode), case, &plant, &oustaloup, &settings).values
    };

    let start = Instant::now();
    let (front, log) = nsga2_run(&evaluator, &config, &mut rng);
    let wall = start.elapsed().as_secs_f64();

    let mut members = front.members;
    members.sort_by(|a, b| a.objectives.partial_cmp(&b.objectives).unwrap());

    fs::create_dir_all(&args.out_dir)?;

    let mut front_csv = front_header(case);
    for m in &members {
        let objectives: Vec<String> = m.objectives.iter().copied().map(fmt_f64).collect();
        let genes = genes_from_slice(&m.genes, mode);
        front_csv.push_str(&format!("{},{}\n", objectives.join(","), gene_cells(&genes)));
    }
    write_file(&args.out_dir.join("front.csv"), &front_csv)?;

    let mut genlog = String::from("generation,front_size,hypervolume,stall_metric\n");
    for row in &log {
        genlog.push_str(&format!(
            "{},{},{},{}\n",
            row.generation,
            row.front_size,
            fmt_f64(row.hypervolume),
            fmt_f64(row.stall_metric)
        ));
    }
    write_file(&args.out_dir.join("genlog.csv"), &genlog)?;

    let manifest = RunManifest {
        command: "optimize".into(),
        case: Some(case),
        mode: Some(mode.as_str().into()),
        nsga: Some(config),
        plant,
        oustaloup,
        eval: settings,
        seed_x0: Some(seed_x0),
        version: env!("CARGO_PKG_VERSION").into(),
        wall_clock_seconds: wall,
    };
    write_manifest(&args.out_dir, &manifest)?;

    println!(
        "case {case:?} {}: {} front members over {} generations ({wall:.1} s)",
        mode.as_str(),
        members.len(),
        log.len() - 1
    );
    Ok(())
}

fn cmd_evaluate(args: EvaluateArgs) -> Result<()> {
    let case: CaseId = args.case.into();
    let plant = args.eval.plant()?;
    let oustaloup = OustaloupConfig64::default();
    let settings = args.eval.settings();
    let rows = in_bounds_rows(read_genes_csv(&args.genes)?);

    fs::create_dir_all(&args.out_dir)?;
    let start = Instant::now();

    let mut csv = front_header(case);
    for row in &rows {
        let v = evaluate(&row.genes, case, &plant, &oustaloup, &settings);
        let objectives: Vec<String> = v.values.iter().copied().map(fmt_f64).collect();
        csv.push_str(&format!("{},{}\n", objectives.join(","), gene_cells(&row.genes)));

        if args.traces {
            let horizon = settings.horizon.unwrap_or_else(|| case.horizon());
            let proto = SimProtocol::new(horizon, settings.dt, ProtocolKind::Tracking);
            let trace = foavr::avr::simulate_tracking(&row.genes, &plant, &proto, &oustaloup)
                .map_err(|e| anyhow!("row {}: {e}", row.line))?;
            let name = format!("trace_{:03}_tracking.csv", row.line);
            write_file(&args.out_dir.join(name), &trace_csv(&trace))?;

            if case.needs_disturbance() {
                let proto = SimProtocol::new(horizon, settings.dt, ProtocolKind::Disturbance);
                let trace = foavr::avr::simulate_disturbance(
                    &row.genes,
                    &plant,
                    &proto,
                    &oustaloup,
                    settings.injection,
                    1.0,
                )
                .map_err(|e| anyhow!("row {}: {e}", row.line))?;
                let name = format!("trace_{:03}_disturbance.csv", row.line);
                write_file(&args.out_dir.join(name), &trace_csv(&trace))?;
            }
        }
    }
    write_file(&args.out_dir.join("objectives.csv"), &csv)?;

    let manifest = RunManifest {
        command: "evaluate".into(),
        case: Some(case),
        mode: None,
        nsga: None,
        plant,
        oustaloup,
        eval: settings,
        seed_x0: None,
        version: env!("CARGO_PKG_VERSION").into(),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    write_manifest(&args.out_dir, &manifest)?;
    println!("evaluated {} rows for case {case:?}", rows.len());
    Ok(())
}

fn cmd_robustness(args: RobustnessArgs) -> Result<()> {
    let base_plant = args.eval.plant()?;
    let oustaloup = OustaloupConfig64::default();
    let settings = args.eval.settings();
    let rows = in_bounds_rows(read_genes_csv(&args.genes)?);
    let row = rows
        .iter()
        .find(|r| r.line == args.row)
        .ok_or_else(|| anyhow!("no usable gene row {} in {}", args.row, args.genes.display()))?;

    for (name, values) in [("kg", &args.kg), ("taug", &args.taug)] {
        if values.is_empty() {
            bail!("--{name} grid is empty");
        }
    }

    // "stable" means the run completed without divergence and the output
    // settled into the 2% band inside the horizon (20 s by default)
    let horizon = settings.horizon.unwrap_or(20.0);
    let proto = SimProtocol::new(horizon, settings.dt, ProtocolKind::Tracking);

    fs::create_dir_all(&args.out_dir)?;
    let start = Instant::now();
    let mut csv = String::from("KG,tauG,overshoot,settling,rise,peak,stable\n");
    for &kg in &args.kg {
        for &taug in &args.taug {
            let mut plant = base_plant;
            plant.k_g = kg;
            plant.tau_g = taug;
            let cells = match foavr::avr::simulate_tracking(&row.genes, &plant, &proto, &oustaloup)
            {
                Ok(trace) => {
                    let m = step_metrics(&trace);
                    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
                    format!(
                        "{},{},{},{},{}",
                        fmt_f64(m.overshoot),
                        opt(m.settling_time_2pct),
                        opt(m.rise_time_10_90),
                        fmt_f64(m.peak_time),
                        m.settling_time_2pct.is_some()
                    )
                }
                Err(_) => ",,,,false".into(),
            };
            csv.push_str(&format!("{},{},{cells}\n", fmt_f64(kg), fmt_f64(taug)));
        }
    }
    write_file(&args.out_dir.join("robustness.csv"), &csv)?;

    let manifest = RunManifest {
        command: "robustness".into(),
        case: None,
        mode: None,
        nsga: None,
        plant: base_plant,
        oustaloup,
        eval: settings,
        seed_x0: None,
        version: env!("CARGO_PKG_VERSION").into(),
        wall_clock_seconds: start.elapsed().as_secs_f64(),
    };
    write_manifest(&args.out_dir, &manifest)?;
    println!(
        "swept {} cells for gene row {}",
        args.kg.len() * args.taug.len(),
        args.row
    );
    Ok(())
}

fn in_bounds_rows(rows: Vec<GeneRow>) -> Vec<GeneRow> {
    rows.into_iter()
        .filter(|r| {
            let ok = r.genes.in_bounds();
            if !ok {
                eprintln!("warning: row {} out of bounds, skipped", r.line);
            }
            ok
        })
        .collect()
}

fn trace_csv(trace: &SimTrace<f64>) -> String {
    let mut out = String::from("t,r,y,u,e\n");
    for k in 0..trace.len() {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_f64(trace.t[k]),
            fmt_f64(trace.r[k]),
            fmt_f64(trace.y[k]),
            fmt_f64(trace.u[k]),
            fmt_f64(trace.e[k])
        ));
    }
    out
}

fn write_manifest(out_dir: &Path, manifest: &RunManifest) -> Result<()> {
    let mut json = serde_json::to_string_pretty(manifest)?;
    json.push('\n');
    let path = out_dir.join("manifest.json");
    let mut file = fs::File::create(&path)?;
    file.write_all(json.as_bytes())?;
    Ok(())
}
