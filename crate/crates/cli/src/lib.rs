//! Command-line front end. Every command prints its result on stdout and
//! writes the same bytes, plus a run manifest, into the output directory.

mod args;
mod commands;
mod output;

use std::io::Write;

pub use args::{
    Cli, Command, CorrelateArgs, CorrelationArg, DistributionArgs, ExactCheckArgs, Format, GraphInput, MainPathArgs,
    MethodArg, OutputArgs, PointArgs, SamplingArgs, ScoreArgs, SweepArgs, VariantArg,
};
pub use output::RunManifest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] intermediacy::Error),

    #[error("{0}")]
    Usage(String),

    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),

    #[error("serializing output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for bad input, 3 when exact evaluation was refused for size, 1
    /// otherwise.
    pub fn exit_code(&self) -> u8 {
        use intermediacy::Error as E;
        match self {
            CliError::Core(E::TooLarge { .. }) => 3,
            CliError::Core(
                E::CycleDetected { .. }
                | E::DuplicateEdge { .. }
                | E::SelfLoop(_)
                | E::DuplicateNode(_)
                | E::UnknownNode(_)
                | E::DegenerateSourceTarget(_)
                | E::NoSourceTargetPath { .. }
                | E::NoPath { .. }
                | E::InvalidProbability(_)
                | E::WouldCreateCycle { .. }
                | E::PreconditionViolated { .. }
                | E::InvalidConfig(_)
                | E::Parse { .. }
                | E::InvalidInput(_)
                | E::Io(_)
                | E::Csv(_),
            ) => 2,
            CliError::Usage(_) => 2,
            CliError::Output(_) | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Runs one command, writing its primary output to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    let rendered = match &cli.command {
        Command::Score(a) => commands::score(a)?,
        Command::Sweep(a) => commands::sweep(a)?,
        Command::SuggestP(a) => commands::suggest_p(a)?,
        Command::Correlate(a) => commands::correlate(a)?,
        Command::Cdf(a) => commands::cdf(a)?,
        Command::Mainpath(a) => commands::mainpath(a)?,
        Command::Epc(a) => commands::epc(a)?,
        Command::Resistance(a) => commands::resistance(a)?,
        Command::ExactCheck(a) => commands::exact_check(a)?,
    };
    let manifest = RunManifest::new(&cli.command);
    output::emit(&rendered, &manifest, cli.command.output(), stdout)
}
