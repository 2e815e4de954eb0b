use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::Signed;

use fibcomp_core::adders::{
    add_f_detailed, add_fc_detailed, berstel, modified, table3, table3_csv, table3_text, Addition,
};
use fibcomp_core::derivation::derive_z;
use fibcomp_core::fib::{rep_2c, val_2c};
use fibcomp_core::mealy::{isomorphism_mismatch, MealyMachine};
use fibcomp_core::verify::{run_all, Machines, VerifyConfig};
use fibcomp_core::{
    rep_f, rep_fc, val_f, val_fc, DomainError, Error, MachineError, RunError, Word,
};

use crate::{AddSystem, MachineFormat, MachineName, Source, System, TableFormat};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed { report: String, reason: String },
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(Error, DomainError, MachineError, RunError);

fn eps(word: &Word) -> String {
    if word.is_empty() {
        "eps".to_owned()
    } else {
        word.to_string()
    }
}

fn parse_word(text: &str) -> Result<Word, CliError> {
    // accept "eps" for the empty word
    if text == "eps" {
        return Ok(Word::empty());
    }
    Ok(text.parse::<Word>()?)
}

fn parse_int(text: &str) -> Result<BigInt, CliError> {
    text.parse()
        .map_err(|_| CliError::Usage(format!("{text:?} is not a decimal integer")))
}

pub fn convert(system: System, from: Source, value: &str) -> Result<String, CliError> {
    let out = match (system, from) {
        (System::Fib, Source::Int) => eps(rep_f(parse_int(value)?)?.as_word()),
        (System::Fibc, Source::Int) => rep_fc(parse_int(value)?).to_string(),
        (System::TwosComplement, Source::Int) => rep_2c(&parse_int(value)?).to_string(),
        (System::Fib, Source::Word) => val_f(&parse_word(value)?).to_string(),
        (System::Fibc, Source::Word) => val_fc(&parse_word(value)?)?.to_string(),
        (System::TwosComplement, Source::Word) => val_2c(&parse_word(value)?)?.to_string(),
    };
    Ok(out + "\n")
}

fn render_addition(d: &Addition, machine: &MealyMachine, trace: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "left    {}", d.left);
    let _ = writeln!(out, "right   {}", d.right);
    let _ = writeln!(out, "sum     {}", d.sum);
    if trace {
        for step in &d.steps {
            let _ = writeln!(out, "step    {step}");
        }
    } else {
        let last = d.steps.last().map_or_else(
            || machine.state_name(machine.initial()).to_owned(),
            |s| s.to.clone(),
        );
        let _ = writeln!(out, "run     {} steps, last state {last}", d.steps.len());
    }
    let _ = writeln!(out, "raw     {}·{}", eps(&d.output), eps(&d.final_output));
    let _ = writeln!(out, "value   {}", d.value);
    let _ = writeln!(out, "result  {}", eps(&d.result));
    out
}

pub fn add(system: AddSystem, a: BigInt, b: BigInt, trace: bool) -> Result<String, CliError> {
    match system {
        AddSystem::Fib => {
            if a.is_negative() || b.is_negative() {
                return Err(CliError::Usage(
                    "the fib system only adds nonnegative integers".into(),
                ));
            }
            let d = add_f_detailed(berstel(), a, b)?;
            Ok(render_addition(&d, berstel(), trace))
        }
        AddSystem::Fibc => {
            let d = add_fc_detailed(modified(), a, b)?;
            Ok(render_addition(&d, modified(), trace))
        }
    }
}

pub fn table(format: TableFormat) -> String {
    let rows = table3();
    match format {
        TableFormat::Text => table3_text(&rows),
        TableFormat::Csv => table3_csv(&rows),
    }
}

fn machine(name: MachineName) -> Result<MealyMachine, CliError> {
    match name {
        MachineName::B => Ok(berstel().clone()),
        MachineName::T => Ok(modified().clone()),
        MachineName::Z => {
            let z = derive_z().map_err(|e| CliError::Failed {
                report: String::new(),
                reason: format!("derivation failed: {e}"),
            })?;
            if let Some(diff) = isomorphism_mismatch(&z, berstel()) {
                return Err(CliError::Failed {
                    report: String::new(),
                    reason: format!("derived machine differs from the Berstel adder: {diff}"),
                });
            }
            Ok(z)
        }
    }
}

pub fn export_machine(name: MachineName, format: MachineFormat) -> Result<String, CliError> {
    let m = machine(name)?;
    Ok(match format {
        MachineFormat::Dot => m.export_dot(),
        MachineFormat::Json => m.export_json() + "\n",
    })
}

pub fn trace(name: MachineName, word: &str) -> Result<String, CliError> {
    let m = machine(name)?;
    let u = parse_word(word)?;
    let mut out = String::new();
    for step in m.trace(&u)? {
        let _ = writeln!(out, "{step}");
    }
    let run = m.run(&u)?;
    let _ = writeln!(out, "output  {}", eps(&run.output));
    let _ = writeln!(out, "last    {}", m.state_name(run.last_state));
    let _ = writeln!(out, "final   {}", eps(&run.final_output));
    Ok(out)
}

fn load(path: &PathBuf) -> Result<MealyMachine, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(MealyMachine::import_json(&text)?)
}

pub fn verify(
    depth: usize,
    range: i64,
    berstel_json: Option<PathBuf>,
    modified_json: Option<PathBuf>,
) -> Result<String, CliError> {
    let b = berstel_json.as_ref().map(load).transpose()?;
    let t = modified_json.as_ref().map(load).transpose()?;
    let machines = Machines {
        b: b.as_ref().unwrap_or(berstel()),
        t: t.as_ref().unwrap_or(modified()),
    };
    let cfg = VerifyConfig { depth, range };
    let outcomes = run_all(&cfg, machines);
    let mut report = String::new();
    for o in &outcomes {
        let _ = writeln!(report, "{o}");
    }
    match outcomes.iter().find(|o| !o.passed()) {
        None => {
            let _ = writeln!(report, "all {} checks passed", outcomes.len());
            Ok(report)
        }
        Some(first) => Err(CliError::Failed {
            reason: format!(
                "{} failed; first counterexample: {}",
                first.name,
                first.counterexample.as_deref().unwrap_or("")
            ),
            report,
        }),
    }
}
