use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

mod commands;

use commands::CliError;

#[derive(Parser)]
#[command(name = "fibcomp")]
#[command(about = "Fibonacci and Fibonacci's complement numeration systems")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum System {
    /// Zeckendorf representations of nonnegative integers
    Fib,
    /// Fibonacci's complement representations of all integers
    Fibc,
    /// Two's complement
    #[value(name = "2c")]
    TwosComplement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AddSystem {
    Fib,
    Fibc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Int,
    Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MachineFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MachineName {
    /// The Berstel adder
    #[value(name = "B")]
    B,
    /// The Berstel adder with a `start` state
    #[value(name = "T")]
    T,
    /// The adder derived from the class recursion
    #[value(name = "Z")]
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Convert between integers and words
    Convert {
        #[arg(long, value_enum)]
        system: System,
        #[arg(long, value_enum)]
        from: Source,
        #[arg(allow_negative_numbers = true)]
        value: String,
    },
    /// Add two integers with a transducer
    Add {
        #[arg(long, value_enum, default_value = "fibc")]
        system: AddSystem,
        /// Print every transition taken
        #[arg(long)]
        trace: bool,
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
    },
    /// Subtract two integers in Fibonacci's complement
    Sub {
        #[arg(long)]
        trace: bool,
        #[arg(allow_negative_numbers = true)]
        a: BigInt,
        #[arg(allow_negative_numbers = true)]
        b: BigInt,
    },
    /// Both adders on every ternary word of length 1 to 3
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Write a machine as Graphviz or JSON
    ExportMachine {
        #[arg(long, value_enum)]
        machine: MachineName,
        #[arg(long, value_enum, default_value = "dot")]
        format: MachineFormat,
    },
    /// Run a machine on a ternary word, one transition per line
    Trace {
        #[arg(long, value_enum, default_value = "B")]
        machine: MachineName,
        word: String,
    },
    /// Run the verification suites
    Verify {
        /// Longest word length of the exhaustive checks
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Integer sweeps cover [-range, range]
        #[arg(long, default_value_t = 300)]
        range: i64,
        /// Check this JSON machine in place of the Berstel adder
        #[arg(long)]
        berstel_json: Option<std::path::PathBuf>,
        /// Check this JSON machine in place of the modified adder
        #[arg(long)]
        modified_json: Option<std::path::PathBuf>,
    },
}

fn dispatch(command: Command) -> Result<String, CliError> {
    match command {
        Command::Convert {
            system,
            from,
            value,
        } => commands::convert(system, from, &value),
        Command::Add {
            system,
            trace,
            a,
            b,
        } => commands::add(system, a, b, trace),
        Command::Sub { trace, a, b } => commands::add(AddSystem::Fibc, a, -b, trace),
        Command::Table { format } => Ok(commands::table(format)),
        Command::ExportMachine { machine, format } => commands::export_machine(machine, format),
        Command::Trace { machine, word } => commands::trace(machine, &word),
        Command::Verify {
            depth,
            range,
            berstel_json,
            modified_json,
        } => commands::verify(depth, range, berstel_json, modified_json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed { report, reason }) => {
            print!("{report}");
            eprintln!("error: {reason}");
            ExitCode::from(1)
        }
    }
}
