//! Command-line arguments and their validated form.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mubs_core::construct::{check_symplectic_params, default_symplectic_s};
use mubs_core::verify::FULL_MODE_MAX_Q;
use mubs_core::Construction;

use crate::error::CliError;

/// Default number of sampled pairs per basis and per basis pair.
pub const DEFAULT_SAMPLES: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "mubs", version, about = "Complete sets of mutually unbiased bases: build, verify, audit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Build a family and write it out.
    Construct(RunArgs),
    /// Check orthonormality and unbiasedness with exact arithmetic.
    Verify(RunArgs),
    /// Module structure of the exponent set.
    Audit(RunArgs),
    /// Projective points spanned by the exponent set.
    Geometry(RunArgs),
    /// Construct, verify, audit and geometry in one report.
    All(RunArgs),
    /// Compare the derived exponent sets of two families.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Planar,
    Alltop,
    Symplectic,
    GaloisRing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// Full for q ≤ 81, sampled above.
    Auto,
    Full,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Floating-point complex vectors, for debugging.
    Complex,
}

#[derive(Clone, Debug, Default, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub construction: Option<ConstructionArg>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Symplectic shift; defaults to the smallest valid value.
    #[arg(long)]
    pub s: Option<u32>,
    /// Planar polynomial coefficients over Z_p, constant term first.
    #[arg(long, value_delimiter = ',')]
    pub planar_poly: Option<Vec<u32>>,
    /// Modulus coefficients, constant term first, leading 1 included.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Read the family from a JSON file instead of building it.
    #[arg(long, conflicts_with = "construction")]
    pub input: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Default, Args)]
pub struct OutputArgs {
    /// Artifact path; `-` writes to standard output.
    #[arg(long)]
    pub output: Option<String>,
    /// Directory for artifacts written under their default name.
    #[arg(long, env = "MUBS_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct CompareArgs {
    /// Family spec such as `alltop:p=5,n=1` or `planar:p=5,n=1,poly=0+0+1`.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Construct,
    Verify,
    Audit,
    Geometry,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Verify => "verify",
            Command::Audit => "audit",
            Command::Geometry => "geometry",
            Command::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySource {
    Build {
        construction: Construction,
        p: u32,
        n: usize,
        modulus: Option<Vec<u32>>,
    },
    File(PathBuf),
}

impl FamilySource {
    /// Stem for default artifact names, e.g. `planar-p3-n1`.
    pub fn stem(&self) -> String {
        match self {
            FamilySource::Build { construction: Construction::GaloisRing, n, .. } => format!("galois-ring-n{n}"),
            FamilySource::Build { construction, p, n, .. } => format!("{}-p{p}-n{n}", construction.tag()),
            FamilySource::File(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "family".to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeSetting {
    Auto { samples: usize },
    Full,
    Sampled { samples: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Output {
    Stdout,
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: FamilySource,
    pub mode: ModeSetting,
    pub seed: u64,
    pub format: Format,
    pub output: Output,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompareConfig {
    pub left: FamilySource,
    pub right: FamilySource,
    pub output: Output,
}

fn resolve_output(args: &OutputArgs, default_name: String) -> Output {
    match (&args.output, &args.output_dir) {
        (Some(o), _) if o == "-" => Output::Stdout,
        (Some(o), Some(dir)) => Output::File(dir.join(o)),
        (Some(o), None) => Output::File(PathBuf::from(o)),
        (None, Some(dir)) => Output::File(dir.join(default_name)),
        (None, None) => Output::Stdout,
    }
}

/// Checks the parameter combination without building anything.
pub fn family_source(args: &FamilyArgs) -> Result<FamilySource, CliError> {
    if let Some(path) = &args.input {
        return Ok(FamilySource::File(path.clone()));
    }
    let tag = args
        .construction
        .ok_or_else(|| CliError::usage("either --construction or --input is required"))?;
    let n = args.n.unwrap_or(1);
    if args.planar_poly.is_some() && tag != ConstructionArg::Planar {
        return Err(CliError::usage("--planar-poly only applies to the planar construction"));
    }
    if args.s.is_some() && tag != ConstructionArg::Symplectic {
        return Err(CliError::usage("--s only applies to the symplectic construction"));
    }
    let construction = match tag {
        ConstructionArg::Planar => Construction::Planar { poly: args.planar_poly.clone() },
        ConstructionArg::Alltop => Construction::Alltop,
        ConstructionArg::Symplectic => {
            let s = match args.s {
                Some(s) => s,
                None => default_symplectic_s(n)
                    .ok_or_else(|| CliError::usage(format!("no valid symplectic shift for n = {n}")))?,
            };
            check_symplectic_params(n, s)?;
            Construction::Symplectic { s }
        }
        ConstructionArg::GaloisRing => Construction::GaloisRing,
    };
    let p = match tag {
        ConstructionArg::GaloisRing => match args.p {
            None | Some(2) => 2,
            Some(_) => return Err(CliError::usage("the galois-ring construction has p = 2")),
        },
        _ => args.p.ok_or_else(|| CliError::usage("--p is required for field constructions"))?,
    };
    if tag == ConstructionArg::Alltop && p < 5 {
        return Err(mubs_core::Error::CharacteristicTooSmall(p).into());
    }
    Ok(FamilySource::Build { construction, p, n, modulus: args.modulus.clone() })
}

impl RunConfig {
    pub fn from_args(command: Command, args: &RunArgs) -> Result<RunConfig, CliError> {
        let source = family_source(&args.family)?;
        if args.samples == 0 {
            return Err(CliError::usage("--samples must be positive"));
        }
        let mode = match args.mode {
            ModeArg::Auto => ModeSetting::Auto { samples: args.samples },
            ModeArg::Full => ModeSetting::Full,
            ModeArg::Sampled => ModeSetting::Sampled { samples: args.samples },
        };
        if args.format != Format::Json && command != Command::Construct {
            return Err(CliError::usage("--format csv/complex only applies to construct"));
        }
        let ext = match args.format {
            Format::Csv => "csv",
            _ => "json",
        };
        let output = resolve_output(&args.output, format!("{}.{}.{ext}", source.stem(), command.name()));
        Ok(RunConfig { command, source, mode, seed: args.seed, format: args.format, output })
    }
}

impl ModeSetting {
    pub fn resolve(self, q: usize, seed: u64) -> mubs_core::VerifyMode {
        use mubs_core::VerifyMode;
        match self {
            ModeSetting::Full => VerifyMode::Full,
            ModeSetting::Auto { .. } if q <= FULL_MODE_MAX_Q => VerifyMode::Full,
            ModeSetting::Auto { samples } | ModeSetting::Sampled { samples } => VerifyMode::Sampled { samples, seed },
        }
    }
}

fn parse_list(value: &str) -> Result<Vec<u32>, CliError> {
    value
        .split('+')
        .map(|c| c.trim().parse().map_err(|_| CliError::usage(format!("bad coefficient {c:?}"))))
        .collect()
}

/// Parses `construction:key=value,...`; list values are joined with `+`.
pub fn parse_family_spec(spec: &str) -> Result<FamilySource, CliError> {
    let (tag, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let construction = ConstructionArg::from_str(tag.trim(), true)
        .map_err(|_| CliError::usage(format!("unknown construction {tag:?}")))?;
    let mut args = FamilyArgs { construction: Some(construction), ..FamilyArgs::default() };
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("expected key=value, got {item:?}")))?;
        let int = || value.trim().parse().map_err(|_| CliError::usage(format!("bad value for {key}: {value:?}")));
        match key.trim() {
            "p" => args.p = Some(int()?),
            "n" => args.n = Some(int()? as usize),
            "s" => args.s = Some(int()?),
            "poly" | "planar_poly" | "planar-poly" => args.planar_poly = Some(parse_list(value)?),
            "modulus" => args.modulus = Some(parse_list(value)?),
            other => return Err(CliError::usage(format!("unknown key {other:?}"))),
        }
    }
    family_source(&args)
}

impl CompareConfig {
    pub fn from_args(args: &CompareArgs) -> Result<CompareConfig, CliError> {
        let left = parse_family_spec(&args.left)?;
        let right = parse_family_spec(&args.right)?;
        let name = format!("{}.vs.{}.compare.json", left.stem(), right.stem());
        Ok(CompareConfig { left, right, output: resolve_output(&args.output, name) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_specs() {
        assert_eq!(
            parse_family_spec("planar:p=5,n=1,poly=0+0+1").unwrap(),
            FamilySource::Build {
                construction: Construction::Planar { poly: Some(vec![0, 0, 1]) },
                p: 5,
                n: 1,
                modulus: None,
            }
        );
        assert_eq!(
            parse_family_spec("symplectic:p=3,n=3").unwrap(),
            FamilySource::Build { construction: Construction::Symplectic { s: 1 }, p: 3, n: 3, modulus: None }
        );
        assert!(parse_family_spec("alltop:p=3").is_err());
        assert!(parse_family_spec("planar:p=5,q=2").is_err());
        assert!(parse_family_spec("symplectic:p=3,n=4").is_err());
        assert!(parse_family_spec("galois-ring:p=3,n=2").is_err());
    }

    #[test]
    fn output_resolution() {
        let args = OutputArgs { output: Some("-".into()), output_dir: Some("/tmp".into()) };
        assert_eq!(resolve_output(&args, "x".into()), Output::Stdout);
        let args = OutputArgs { output: None, output_dir: Some("/tmp".into()) };
        assert_eq!(resolve_output(&args, "x.json".into()), Output::File("/tmp/x.json".into()));
        assert_eq!(resolve_output(&OutputArgs::default(), "x".into()), Output::Stdout);
    }

    #[test]
    fn auto_mode_switches_at_81() {
        let m = ModeSetting::Auto { samples: 4 };
        assert_eq!(m.resolve(81, 9), mubs_core::VerifyMode::Full);
        assert_eq!(m.resolve(125, 9), mubs_core::VerifyMode::Sampled { samples: 4, seed: 9 });
    }
}
