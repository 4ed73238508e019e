use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "chowkit", version, about = "Rebuild and check the Chow ring of M(4,1) and its Euler characteristics")]
pub struct Cli {
    /// Verification checks stored relations; discovery also regenerates them.
    #[arg(long, value_enum, global = true, default_value_t = ModeArg::Verification)]
    pub mode: ModeArg,

    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for table generation (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Cap on Gröbner reduction steps in discovery mode.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Directory whose fixture files replace the embedded copies of the same name.
    #[arg(long, global = true)]
    pub fixtures: Option<PathBuf>,

    /// Report wall-clock time per stage (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run stages with their prerequisites and report every check.
    Verify {
        /// Stage to run (repeatable); all stages when omitted.
        #[arg(long = "stage", value_name = "NAME")]
        stages: Vec<String>,
    },
    /// Run a single stage.
    Stage { name: String },
    /// Euler characteristics χ(M, (m − 3k)α − kβ) over a grid.
    Donaldson {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(i64).range(1..))]
        mmax: i64,
        /// Compare against the embedded table.
        #[arg(long)]
        check: bool,
    },
    /// One Euler characteristic χ(M, (m − 3k)α − kβ).
    Euler {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
    },
    /// Write a ring in the exchange format (always JSON).
    Export { ring: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Verification,
    Discovery,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Markdown,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["chowkit", "verify"]).unwrap();
        assert_eq!(cli.mode, ModeArg::Verification);
        assert_eq!(cli.format, Format::Text);
        assert!(matches!(cli.command, Command::Verify { ref stages } if stages.is_empty()));
    }

    #[test]
    fn negative_euler_arguments() {
        let cli = Cli::try_parse_from(["chowkit", "euler", "--k", "-1", "--m", "2"]).unwrap();
        assert!(matches!(cli.command, Command::Euler { k: -1, m: 2 }));
    }
}
