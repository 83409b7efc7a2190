use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use mdcckit::batch::{self, CurveConfig, RunManifest, SampleConfig};
use mdcckit::complementarity::{
    alpha_grid, measure_state, theorem_check, verify_batch, BoundKind, BoundReport, ClassTag,
    RecordOptions, GGM_BOUND_TOL,
};
use mdcckit::densecoding::advantage;
use mdcckit::io::{self as rio, Format};
use mdcckit::linalg::C64;
use mdcckit::measures::MeasuredParty;
use mdcckit::states::{self, NamedState, PureState3Q, RngStream, SamplerClass};
use mdcckit::Party;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "mdcckit",
    version,
    about = "Multipartite correlations and dense-coding advantage of three-qubit pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print every measure of one state.
    StateMeasures(StateArgs),
    /// Emit the MDCC family over an α-range.
    MdccCurve(CurveArgs),
    /// Sample random states and record their measures.
    Sample(SampleArgs),
    /// Check record files against the complementarity bounds.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum PartyArg {
    A,
    B,
    C,
}

impl From<PartyArg> for Party {
    fn from(p: PartyArg) -> Self {
        match p {
            PartyArg::A => Party::A,
            PartyArg::B => Party::B,
            PartyArg::C => Party::C,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Second,
    First,
}

impl From<ConventionArg> for MeasuredParty {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Second => MeasuredParty::Second,
            ConventionArg::First => MeasuredParty::First,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Haar,
    GhzClass,
    WClass,
}

impl From<ClassArg> for SamplerClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Haar => SamplerClass::Haar,
            ClassArg::GhzClass => SamplerClass::GhzClass,
            ClassArg::WClass => SamplerClass::WClass,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundArg {
    Ggm,
    Tangle,
}

#[derive(Args, Clone)]
struct MeasureFlags {
    /// Sender of the dense-coding advantage and hub of the discord score.
    #[arg(long, value_enum, default_value = "a", ignore_case = true)]
    sender: PartyArg,
    /// Which party of each pair is measured in the discord terms.
    #[arg(
        long = "measured-party-convention",
        value_enum,
        default_value = "second"
    )]
    convention: ConventionArg,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct StateSource {
    /// ghz, w, product000 or bell_ab_times_0.
    #[arg(long)]
    named: Option<String>,
    /// MDCC state with this α.
    #[arg(long, allow_hyphen_values = true)]
    mdcc: Option<f64>,
    /// JSON file with 8 amplitudes (numbers or [re, im] pairs).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    flags: MeasureFlags,
}

#[derive(Args)]
struct OutputFlags {
    #[arg(long)]
    out: PathBuf,
    /// Defaults to json for a .json path, csv otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads; falls back to MDCCKIT_JOBS.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    with_discord: bool,
}

impl OutputFlags {
    fn format(&self) -> Format {
        self.format
            .map(Format::from)
            .unwrap_or_else(|| Format::from_path(&self.out))
    }
}

#[derive(Args)]
struct CurveArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha_max: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[command(flatten)]
    output: OutputFlags,
    #[command(flatten)]
    flags: MeasureFlags,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long, value_enum, default_value = "haar")]
    class: ClassArg,
    #[arg(long)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputFlags,
    #[command(flatten)]
    flags: MeasureFlags,
}

#[derive(Args)]
struct VerifyArgs {
    /// Record files written by `sample` or `mdcc-curve`.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, default_value_t = GGM_BOUND_TOL)]
    tolerance: f64,
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["ggm", "tangle"])]
    bounds: Vec<BoundArg>,
    /// Write the reports as JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

type CliResult<T> = Result<T, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    let result = match cli.command {
        Command::StateMeasures(a) => state_measures(a),
        Command::MdccCurve(a) => mdcc_curve(a),
        Command::Sample(a) => sample(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Amplitude {
    Real(f64),
    Pair([f64; 2]),
    Object { re: f64, im: f64 },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AmplitudeFile {
    Bare(Vec<Amplitude>),
    Wrapped { amplitudes: Vec<Amplitude> },
}

fn read_amplitudes(path: &Path) -> CliResult<PureState3Q> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: AmplitudeFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let amps = match file {
        AmplitudeFile::Bare(a) | AmplitudeFile::Wrapped { amplitudes: a } => a,
    };
    if amps.len() != 8 {
        return Err(format!("expected 8 amplitudes, found {}", amps.len()));
    }
    let amps: Vec<C64> = amps
        .into_iter()
        .map(|a| match a {
            Amplitude::Real(x) => C64::new(x, 0.0),
            Amplitude::Pair([re, im]) | Amplitude::Object { re, im } => C64::new(re, im),
        })
        .collect();
    let amps: [C64; 8] = amps.try_into().expect("length checked");
    PureState3Q::new(amps).map_err(|e| e.to_string())
}

fn state_measures(args: StateArgs) -> CliResult<u8> {
    let src = &args.source;
    let (state, class, alpha) = if let Some(name) = &src.named {
        let n: NamedState = name.parse().map_err(|e: mdcckit::Error| e.to_string())?;
        (states::named_state(n), None, None)
    } else if let Some(a) = src.mdcc {
        (
            states::mdcc(a).map_err(|e| e.to_string())?,
            Some(ClassTag::Mdcc),
            Some(a),
        )
    } else if let Some(path) = &src.file {
        (read_amplitudes(path)?, None, None)
    } else {
        return Err("one of --named, --mdcc, --file is required".into());
    };
    let sender: Party = args.flags.sender.into();
    let opts = RecordOptions {
        sender,
        with_discord: true,
        measured: args.flags.convention.into(),
    };
    let err = |e: mdcckit::Error| e.to_string();
    let rec = measure_state(&state, 0, class.unwrap_or(ClassTag::Haar), alpha, &opts)
        .map_err(err)?
        .record;
    let adv = advantage(&state, sender).map_err(err)?;
    let ggm_slack = mdcckit::complementarity::ggm_bound_slack(&rec).map_err(err)?;
    let tangle_slack = mdcckit::complementarity::tangle_bound_slack(&rec).map_err(err)?;
    let thm = theorem_check(&state).map_err(err)?;

    let f = |x: f64| format!("{x:.11e}");
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut line = |k: &str, v: String| writeln!(out, "{k:<16}{v}").map_err(|e| e.to_string());
    if let Some(a) = alpha {
        line("alpha", f(a))?;
    }
    line("s_a", f(rec.s_a))?;
    line("s_b", f(rec.s_b))?;
    line("s_c", f(rec.s_c))?;
    line("ggm", f(rec.ggm))?;
    line("tangle", f(rec.tangle))?;
    line("discord_score", f(rec.discord_score.unwrap_or(f64::NAN)))?;
    line("c_adv", f(rec.c_adv))?;
    line(
        "best_receiver",
        adv.best_receiver
            .map_or("none".to_string(), |p| p.to_string()),
    )?;
    line("ggm_slack", f(ggm_slack))?;
    line("tangle_slack", f(tangle_slack))?;
    line("theorem_margin", f(thm))?;
    Ok(EXIT_OK)
}

fn write_batch(
    path: &Path,
    format: Format,
    records: &[mdcckit::complementarity::MeasureRecord],
    manifest: &RunManifest,
) -> CliResult<()> {
    let show = |e: rio::IoError| format!("{}: {e}", path.display());
    rio::write_atomically(path, |w| rio::write_records(w, records, format)).map_err(show)?;
    let mpath = batch::manifest_path(path);
    rio::write_atomically(&mpath, |w| {
        serde_json::to_writer_pretty(&mut *w, manifest)?;
        writeln!(w)?;
        Ok(())
    })
    .map_err(|e| {
        let _ = fs::remove_file(path);
        format!("{}: {e}", mpath.display())
    })
}

fn bound_label(b: BoundKind) -> &'static str {
    match b {
        BoundKind::Ggm => "ggm",
        BoundKind::Tangle => "tangle",
    }
}

fn summarize(reports: &[BoundReport]) {
    for r in reports {
        eprintln!(
            "{} bound: max slack {:.3e}, {} violation(s) at tolerance {:.1e}",
            bound_label(r.bound_name),
            r.max_slack,
            r.violations,
            r.tolerance
        );
    }
}

fn mdcc_curve(args: CurveArgs) -> CliResult<u8> {
    if !(2..=1_000_000).contains(&args.points) {
        return Err(format!(
            "--points must lie in [2, 1000000], got {}",
            args.points
        ));
    }
    if !(args.alpha_min.is_finite() && args.alpha_max.is_finite())
        || args.alpha_min > args.alpha_max
    {
        return Err("need finite --alpha-min <= --alpha-max".into());
    }
    let config = CurveConfig {
        alpha_min: args.alpha_min,
        alpha_max: args.alpha_max,
        points: args.points,
        with_discord: args.output.with_discord,
        sender: args.flags.sender.into(),
        measured: args.flags.convention.into(),
        output_path: args.output.out.clone(),
        format: args.output.format(),
    };
    let jobs = batch::resolve_jobs(args.output.jobs);
    let start = Instant::now();
    let alphas = alpha_grid(config.alpha_min, config.alpha_max, config.points);
    let out = batch::run_curve(&config, &alphas, jobs).map_err(|e| e.to_string())?;
    let reports = batch::default_reports(&out.records);
    let manifest = RunManifest {
        tool: "mdcckit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "mdcc-curve".into(),
        config: serde_json::to_value(&config).map_err(|e| e.to_string())?,
        rng: "none".into(),
        records: out.records.len(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        jobs,
        discord_unconverged: out.discord_unconverged,
        violations: reports.clone(),
    };
    write_batch(&config.output_path, config.format, &out.records, &manifest)?;
    eprintln!(
        "wrote {} rows to {}",
        out.records.len(),
        config.output_path.display()
    );
    summarize(&reports);
    Ok(EXIT_OK)
}

fn sample(args: SampleArgs) -> CliResult<u8> {
    if args.count == 0 {
        return Err("--count must be at least 1".into());
    }
    let config = SampleConfig {
        class_tag: args.class.into(),
        count: args.count,
        base_seed: args.seed,
        with_discord: args.output.with_discord,
        sender: args.flags.sender.into(),
        measured: args.flags.convention.into(),
        output_path: args.output.out.clone(),
        format: args.output.format(),
    };
    let jobs = batch::resolve_jobs(args.output.jobs);
    let start = Instant::now();
    let out = batch::run_sample(&config, jobs).map_err(|e| e.to_string())?;
    let reports = batch::default_reports(&out.records);
    let manifest = RunManifest {
        tool: "mdcckit".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "sample".into(),
        config: serde_json::to_value(&config).map_err(|e| e.to_string())?,
        rng: format!(
            "{} seeded per sample from splitmix64(mix64(seed, index))",
            RngStream::ALGORITHM
        ),
        records: out.records.len(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        jobs,
        discord_unconverged: out.discord_unconverged,
        violations: reports.clone(),
    };
    write_batch(&config.output_path, config.format, &out.records, &manifest)?;
    eprintln!(
        "wrote {} rows to {} in {:.2}s",
        out.records.len(),
        config.output_path.display(),
        manifest.wall_time_seconds
    );
    summarize(&reports);
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs) -> CliResult<u8> {
    if !(args.tolerance.is_finite() && args.tolerance >= 0.0) {
        return Err(format!("bad --tolerance {}", args.tolerance));
    }
    let mut records = Vec::new();
    for path in &args.inputs {
        let mut r = rio::read_records(path).map_err(|e| format!("{}: {e}", path.display()))?;
        records.append(&mut r);
    }
    if records.is_empty() {
        return Err("no records in input".into());
    }
    let mut bounds: Vec<BoundKind> = args
        .bounds
        .iter()
        .map(|b| match b {
            BoundArg::Ggm => BoundKind::Ggm,
            BoundArg::Tangle => BoundKind::Tangle,
        })
        .collect();
    bounds.dedup();
    let reports = verify_batch(&records, &bounds, args.tolerance);
    summarize(&reports);
    for r in &reports {
        if let (false, Some(id)) = (r.passed(), r.worst_state_id) {
            eprintln!("{} bound: worst state_id {id}", bound_label(r.bound_name));
        }
    }
    let json = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
    match &args.out {
        Some(p) => fs::write(p, json + "\n").map_err(|e| format!("{}: {e}", p.display()))?,
        None => println!("{json}"),
    }
    Ok(if reports.iter().all(BoundReport::passed) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}
