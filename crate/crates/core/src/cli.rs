//! Command-line front end. Machine-readable JSON goes to stdout, human
//! diagnostics to stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::construct::{compile, CompileResult, ConstructError, FaceMap, Mode};
use crate::foldsim::verify::search_alignment;
use crate::foldsim::{evaluate, verify, VerificationReport};
use crate::io::{export_fold, export_obj, export_svg, parse_fold, FoldDocument, FoldExportOptions, ObjOptions, SvgOptions};
use crate::pattern::CreasePattern;
use crate::polycube::{parse_polycube, Face, Polycube};

#[derive(Parser, Debug)]
#[command(name = "boxpleat", version, about = "Fold polycubes from box-pleated tetrakis crease patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compile a polycube into a crease pattern.
    Fold(FoldArgs),
    /// Check that a pattern (or a fresh compilation) folds into a polycube.
    Verify(VerifyArgs),
    /// Convert a pattern or polycube to FOLD, SVG or OBJ.
    Export(ExportArgs),
    /// Print compilation statistics as one JSON line.
    Stats(CompileArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    RectSeam,
    RectSeamless,
    Square,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::RectSeam => Mode::RectSeam,
            ModeArg::RectSeamless => Mode::RectSeamless,
            ModeArg::Square => Mode::Square,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Fold,
    Svg,
    Obj,
}

#[derive(Args, Debug, Clone)]
pub struct CompileArgs {
    /// Polycube file: one `x y z` cell per line.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "square")]
    pub mode: ModeArg,
    /// Seam face for rect-seam mode, e.g. "0 0 0 -z".
    #[arg(long)]
    pub seam: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "fold")]
    pub format: Format,
    /// Emit the paper boundary as B edges in FOLD output.
    #[arg(long)]
    pub border: bool,
    /// SVG pixels per paper unit.
    #[arg(long, default_value_t = 40)]
    pub scale: u32,
    /// OBJ layer separation in paper units.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
}

#[derive(Args, Debug)]
pub struct FoldArgs {
    #[command(flatten)]
    pub compile: CompileArgs,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A FOLD file, or a polycube file to compile and check.
    pub input: PathBuf,
    /// Target polycube when the input is a FOLD file.
    #[arg(long)]
    pub against: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub seam: Option<String>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    /// A FOLD file or a polycube file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "square")]
    pub mode: ModeArg,
    #[arg(long)]
    pub seam: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("bad seam face {0:?}; expected \"x y z dir\" with dir one of -x +x -y +y -z +z")]
    Seam(String),
    #[error("--against is required when verifying a FOLD file")]
    MissingTarget,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// Exit status: verification failure.
pub const EXIT_FAIL: i32 = 1;
/// Exit status: usage, I/O or parse error.
pub const EXIT_ERROR: i32 = 2;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_polycube(path: &Path) -> Result<Polycube, CliError> {
    let parsed = parse_polycube(&read(path)?).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
    if parsed.duplicates > 0 {
        eprintln!("warning: {}: dropped {} duplicate cells", path.display(), parsed.duplicates);
    }
    Ok(parsed.polycube)
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn parse_seam(s: &Option<String>) -> Result<Option<Face>, CliError> {
    s.as_ref().map(|s| Face::parse(s).ok_or_else(|| CliError::Seam(s.clone()))).transpose()
}

fn compile_from(args: &CompileArgs) -> Result<CompileResult, CliError> {
    let p = load_polycube(&args.input)?;
    Ok(compile(&p, args.mode.into(), parse_seam(&args.seam)?)?)
}

fn write_output(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
        }
    }
}

fn render(out: &OutputArgs, pattern: &CreasePattern, fm: Option<&FaceMap>, mode: Option<Mode>) -> Result<String, CliError> {
    Ok(match out.format {
        Format::Fold => export_fold(pattern, fm, mode, FoldExportOptions { include_border: out.border }),
        Format::Svg => export_svg(pattern, SvgOptions { scale: out.scale.max(1) }),
        Format::Obj => {
            let fs = evaluate(pattern).map_err(ConstructError::from)?;
            let fs = match fm.and_then(|m| crate::foldsim::verify::alignment_from_face_map(&fs, m)) {
                Some(a) => fs.transformed(&a),
                None => fs,
            };
            export_obj(&fs, ObjOptions { epsilon: out.epsilon })
        }
    })
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("json values serialize"));
}

fn report_json(report: &VerificationReport) -> serde_json::Value {
    let mut v = serde_json::to_value(report).expect("report serializes");
    v["passed"] = serde_json::Value::Bool(report.passed());
    v
}

fn load_fold(path: &Path) -> Result<FoldDocument, CliError> {
    parse_fold(&read(path)?).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

fn run_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let text = read(&args.input)?;
    if !looks_like_json(&text) {
        let compile_args = CompileArgs {
            input: args.input.clone(),
            mode: args.mode.unwrap_or(ModeArg::Square),
            seam: args.seam.clone(),
        };
        return match compile_from(&compile_args) {
            Ok(r) => {
                print_json(&report_json(&r.report));
                Ok(0)
            }
            Err(CliError::Construct(ConstructError::VerificationFailed(report))) => {
                print_json(&report_json(&report));
                Ok(EXIT_FAIL)
            }
            Err(e) => Err(e),
        };
    }
    let doc = load_fold(&args.input)?;
    let target = load_polycube(args.against.as_deref().ok_or(CliError::MissingTarget)?)?;
    let fm = doc.face_map.clone().unwrap_or_default();
    let mode = args.mode.map(Mode::from).or(doc.mode).unwrap_or(if fm.seamed.is_some() { Mode::RectSeam } else { Mode::Square });
    let fs = match evaluate(&doc.pattern) {
        Ok(fs) => fs,
        Err(e) => {
            eprintln!("error: {e}");
            print_json(&serde_json::json!({ "passed": false, "error": e.to_string() }));
            return Ok(EXIT_FAIL);
        }
    };
    if fm.entries.is_empty() && search_alignment(&fs, &target).is_none() {
        eprintln!("warning: no face map and no rigid alignment found");
    }
    let report = verify(&fs, &target, &fm, mode);
    for d in &report.details {
        eprintln!("{d}");
    }
    print_json(&report_json(&report));
    Ok(if report.passed() { 0 } else { EXIT_FAIL })
}

fn run_command(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Fold(args) => {
            let r = compile_from(&args.compile)?;
            let text = render(&args.out, &r.pattern, Some(&r.face_map), Some(r.mode))?;
            write_output(&args.out, &text)?;
            if args.out.output.is_some() {
                print_json(&serde_json::to_value(&r.stats).expect("stats serialize"));
            }
            Ok(0)
        }
        Command::Verify(args) => run_verify(&args),
        Command::Export(args) => {
            let text = read(&args.input)?;
            let rendered = if looks_like_json(&text) {
                let doc = load_fold(&args.input)?;
                render(&args.out, &doc.pattern, doc.face_map.as_ref(), doc.mode)?
            } else {
                let r = compile_from(&CompileArgs { input: args.input.clone(), mode: args.mode, seam: args.seam.clone() })?;
                render(&args.out, &r.pattern, Some(&r.face_map), Some(r.mode))?
            };
            write_output(&args.out, &rendered)?;
            Ok(0)
        }
        Command::Stats(args) => {
            let r = compile_from(&args)?;
            print_json(&serde_json::to_value(&r.stats).expect("stats serialize"));
            Ok(0)
        }
    }
}

/// Parse arguments and run; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { 0 };
        }
    };
    match run_command(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Construct(ConstructError::VerificationFailed(_)) => EXIT_FAIL,
                _ => EXIT_ERROR,
            }
        }
    }
}
