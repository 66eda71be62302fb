use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use unipow::genfun::{SeriesKind, SeriesRequest, DEFAULT_TRUNCATION};
use unipow::oracle::{BuildOptions, ClassFamily, DEFAULT_SCAN_BOUND};
use unipow::PrimePower;

pub const SCAN_BOUND_VAR: &str = "UPC_SCAN_BOUND";

#[derive(Parser, Debug)]
#[command(name = "unipow", version, about = "M-th powers in finite unitary groups U(n, q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Polynomial counts for d = 1..d_max.
    Counts,
    /// Coefficients of one generating function for n = 0..T.
    Series,
    /// Compare series coefficients with brute-force counts for n ≤ n_max.
    Verify,
    /// Brute-force M-th power counts for n ≤ n_max.
    Table,
}

#[derive(Args, Debug)]
pub struct Opts {
    /// Prime power q; the groups live over F_{q²}.
    #[arg(long, global = true)]
    pub q: Option<u64>,
    /// Power exponent M ≥ 2.
    #[arg(long = "M", global = true)]
    pub m: Option<u64>,
    /// Series truncation.
    #[arg(long = "T", global = true)]
    pub t: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub d_max: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub family: Option<FamilyArg>,
    #[arg(long, value_enum, global = true)]
    pub kind: Option<KindArg>,
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    Sep,
    Cyc,
    Ss,
}

impl From<FamilyArg> for ClassFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Sep => ClassFamily::Separable,
            FamilyArg::Cyc => ClassFamily::Cyclic,
            FamilyArg::Ss => ClassFamily::Semisimple,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum KindArg {
    Classes,
    Elements,
}

impl From<KindArg> for SeriesKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Classes => SeriesKind::Classes,
            KindArg::Elements => SeriesKind::Elements,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub q: PrimePower,
    pub m: u64,
    pub t: usize,
    pub n_max: usize,
    pub d_max: u64,
    /// `None` means every family whose hypotheses hold.
    pub family: Option<ClassFamily>,
    pub kind: Option<SeriesKind>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub build: BuildOptions,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl RunConfig {
    pub fn from_cli(cli: Cli, scan_bound: Option<&str>) -> Result<Self, UsageError> {
        let o = cli.opts;
        let q = o.q.ok_or_else(|| UsageError("--q is required".into()))?;
        let q = PrimePower::from_q(q).map_err(|e| UsageError(format!("--q {q}: {e}")))?;
        let m = o.m.ok_or_else(|| UsageError("--M is required".into()))?;
        if m < 2 {
            return Err(UsageError(format!("--M must be ≥ 2, got {m}")));
        }
        let build = BuildOptions {
            scan_bound: match scan_bound {
                Some(s) => s.trim().parse().map_err(|_| {
                    UsageError(format!("{SCAN_BOUND_VAR} must be a non-negative integer, got {s:?}"))
                })?,
                None => DEFAULT_SCAN_BOUND,
            },
            ..BuildOptions::default()
        };
        let cfg = RunConfig {
            command: cli.command,
            q,
            m,
            t: o.t.unwrap_or(DEFAULT_TRUNCATION),
            n_max: o.n_max.unwrap_or(3),
            d_max: o.d_max.unwrap_or(6),
            family: o.family.map(Into::into),
            kind: o.kind.map(Into::into),
            format: o.format,
            out: o.out,
            build,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), UsageError> {
        if self.command == Command::Series {
            let family = self
                .family
                .ok_or_else(|| UsageError("series needs --family {sep|cyc|ss}".into()))?;
            let kind = self
                .kind
                .ok_or_else(|| UsageError("series needs --kind {classes|elements}".into()))?;
            self.request(family, kind).validate().map_err(|e| UsageError(e.to_string()))?;
        }
        if matches!(self.command, Command::Verify | Command::Table) {
            if self.n_max == 0 {
                return Err(UsageError("--n-max must be ≥ 1".into()));
            }
            if let (Command::Verify, Some(family)) = (self.command, self.family) {
                self.request(family, SeriesKind::Classes)
                    .validate()
                    .map_err(|e| UsageError(format!("--family {family}: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn request(&self, family: ClassFamily, kind: SeriesKind) -> SeriesRequest {
        SeriesRequest { q: self.q, m: self.m, t: self.t, family, kind }
    }

    /// Requested families, or all whose hypotheses hold for `(q, M)`.
    pub fn families(&self) -> Vec<ClassFamily> {
        match self.family {
            Some(f) => vec![f],
            None => ClassFamily::ALL
                .into_iter()
                .filter(|&f| self.request(f, SeriesKind::Classes).validate().is_ok())
                .collect(),
        }
    }

    pub fn kinds(&self) -> Vec<SeriesKind> {
        match self.kind {
            Some(k) => vec![k],
            None => vec![SeriesKind::Classes, SeriesKind::Elements],
        }
    }
}
