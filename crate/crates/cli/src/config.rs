use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ybe::io::MatrixFormat;
use ybe::{Backend, RhatMethod};

#[derive(Debug, Parser)]
#[command(name = "ybe", version, about = "Construct and verify constant Yang-Baxter solutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Exact,
    Float,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Exact => Backend::Exact,
            BackendArg::Float => Backend::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Mm,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Product,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    R,
    Rhat,
}

/// Where the parameters come from: a file, or seeded random draws.
#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Dimension n of the qudit space (matrices are n² × n²)
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum)]
    pub backend: Option<BackendArg>,
    /// Residual tolerance (float backend only; exact runs always use 0)
    #[arg(long)]
    pub tol: Option<f64>,
    /// Parameter file (JSON) instead of random parameters
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "mm")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Write the solution matrix R
    GenR {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Write the swap matrix S
    GenS {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        #[command(flatten)]
        output: Output,
    },
    /// Write R̂ = RS
    GenRhat {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
        #[arg(long, value_enum, default_value = "direct")]
        method: MethodArg,
    },
    /// Check the braid equation for R
    VerifyBraid {
        #[command(flatten)]
        source: Source,
    },
    /// Check the quantum Yang-Baxter equation for R̂
    VerifyQuantum {
        #[command(flatten)]
        source: Source,
    },
    /// Check the braid-group relations on k strands
    BraidCheck {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        strands: usize,
    },
    /// Evaluate the unitarity conditions
    CheckUnitary {
        #[command(flatten)]
        source: Source,
    },
    /// Draw parameters of a unitary member (float backend)
    SampleUnitary {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the parameter file here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Test whether R or R̂ is a tensor product X ⊗ Y
    CheckFactor {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "rhat")]
        target: TargetArg,
    },
    /// Decide whether R is an entangling gate
    CheckEntangling {
        #[command(flatten)]
        source: Source,
        /// Random product states to try after the basis states
        #[arg(long, default_value_t = 64)]
        trials: usize,
        /// Accept a non-unitary R as invertible
        #[arg(long)]
        assume_invertible: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    GenR,
    GenS,
    GenRhat(RhatMethod),
    VerifyBraid,
    VerifyQuantum,
    BraidCheck,
    CheckUnitary,
    SampleUnitary,
    CheckFactor { rhat: bool },
    CheckEntangling { assume_invertible: bool },
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::GenR => "gen-r",
            Action::GenS => "gen-s",
            Action::GenRhat(_) => "gen-rhat",
            Action::VerifyBraid => "verify-braid",
            Action::VerifyQuantum => "verify-quantum",
            Action::BraidCheck => "braid-check",
            Action::CheckUnitary => "check-unitary",
            Action::SampleUnitary => "sample-unitary",
            Action::CheckFactor { .. } => "check-factor",
            Action::CheckEntangling { .. } => "check-entangling",
        }
    }
}

/// Flattened, validated form of a command line.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub action: Action,
    pub n: Option<usize>,
    pub backend: Option<Backend>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub params: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: MatrixFormat,
    pub strands: usize,
    pub trials: usize,
}

impl RunConfig {
    fn base(action: Action) -> Self {
        RunConfig {
            action,
            n: None,
            backend: None,
            seed: 0,
            tol: None,
            params: None,
            out: None,
            format: MatrixFormat::MatrixMarket,
            strands: 3,
            trials: 0,
        }
    }

    fn with_source(mut self, s: Source) -> Self {
        self.n = s.n;
        self.seed = s.seed;
        self.backend = s.backend.map(Into::into);
        self.tol = s.tol;
        self.params = s.params;
        self
    }

    fn with_output(mut self, o: Output) -> Self {
        self.out = Some(o.out);
        self.format = match o.format {
            FormatArg::Mm => MatrixFormat::MatrixMarket,
            FormatArg::Json => MatrixFormat::Json,
        };
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.n == Some(0) {
            return Err("--n must be at least 1".into());
        }
        if self.strands < 3 {
            return Err("--strands must be at least 3".into());
        }
        if let Some(t) = self.tol {
            if t.is_nan() || t < 0.0 {
                return Err(format!("--tol must be nonnegative, got {t}"));
            }
        }
        Ok(())
    }
}

impl From<Command> for RunConfig {
    fn from(cmd: Command) -> Self {
        match cmd {
            Command::GenR { source, output } => RunConfig::base(Action::GenR).with_source(source).with_output(output),
            Command::GenS { n, backend, output } => {
                let mut c = RunConfig::base(Action::GenS).with_output(output);
                c.n = Some(n);
                c.backend = backend.map(Into::into);
                c
            }
            Command::GenRhat { source, output, method } => {
                let method = match method {
                    MethodArg::Product => RhatMethod::Product,
                    MethodArg::Direct => RhatMethod::Direct,
                };
                RunConfig::base(Action::GenRhat(method)).with_source(source).with_output(output)
            }
            Command::VerifyBraid { source } => RunConfig::base(Action::VerifyBraid).with_source(source),
            Command::VerifyQuantum { source } => RunConfig::base(Action::VerifyQuantum).with_source(source),
            Command::BraidCheck { source, strands } => {
                let mut c = RunConfig::base(Action::BraidCheck).with_source(source);
                c.strands = strands;
                c
            }
            Command::CheckUnitary { source } => RunConfig::base(Action::CheckUnitary).with_source(source),
            Command::SampleUnitary { n, seed, out } => {
                let mut c = RunConfig::base(Action::SampleUnitary);
                c.n = Some(n);
                c.seed = seed;
                c.backend = Some(Backend::Float);
                c.out = out;
                c
            }
            Command::CheckFactor { source, target } => {
                RunConfig::base(Action::CheckFactor { rhat: target == TargetArg::Rhat }).with_source(source)
            }
            Command::CheckEntangling { source, trials, assume_invertible } => {
                let mut c = RunConfig::base(Action::CheckEntangling { assume_invertible }).with_source(source);
                c.trials = trials;
                c
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        let cli = Cli::try_parse_from(std::iter::once("ybe").chain(args.iter().copied())).unwrap();
        RunConfig::from(cli.command)
    }

    #[test]
    fn defaults() {
        let c = parse(&["verify-braid", "--n", "3"]);
        assert_eq!(c.action, Action::VerifyBraid);
        assert_eq!((c.n, c.seed, c.backend, c.tol), (Some(3), 0, None, None));
        assert!(c.validate().is_ok());
        let c = parse(&["gen-rhat", "--n", "2", "--out", "m.json", "--format", "json"]);
        assert_eq!(c.action, Action::GenRhat(RhatMethod::Direct));
        assert_eq!(c.format, MatrixFormat::Json);
        let c = parse(&["check-entangling", "--n", "2"]);
        assert_eq!(c.trials, 64);
    }

    #[test]
    fn invariants() {
        assert!(parse(&["verify-braid", "--n", "0"]).validate().is_err());
        assert!(parse(&["braid-check", "--n", "2", "--strands", "2"]).validate().is_err());
        assert!(parse(&["braid-check", "--n", "2", "--strands", "3"]).validate().is_ok());
        assert!(parse(&["verify-braid", "--n", "2", "--tol=-1e-3"]).validate().is_err());
        assert!(parse(&["verify-braid", "--n", "2", "--tol", "NaN"]).validate().is_err());
    }

    #[test]
    fn sample_unitary_is_float() {
        assert_eq!(parse(&["sample-unitary", "--n", "4"]).backend, Some(Backend::Float));
    }
}
