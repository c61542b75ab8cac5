mod args;
mod commands;
mod golden;
mod load;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;
use specsupp::{Field, Rationals};

use args::{Cli, Command, Global};
use commands::Ctx;
use load::FieldChoice;
use report::{CliError, CliResult, Report};

fn algebra_command<F: Field>(field: &F, cli: &Cli, budget: usize) -> CliResult<Report> {
    let spec = load::algebra_spec(&cli.global)?;
    let alg = load::build(&spec, field)?;
    let c = Ctx { alg, g: &cli.global, budget };
    let mut r = match &cli.command {
        Command::Spectrum => commands::spectrum(&c),
        Command::Supp => commands::supp_cmd(&c),
        Command::Suppex => commands::suppex(&c),
        Command::Dlattice => commands::dlattice(&c),
        Command::Realize { partition } => commands::realize(&c, partition),
        Command::Closure { generators } => commands::closure(&c, generators),
        Command::Datum { action } => commands::datum(&c, action),
        Command::Ziegler { dmax, check, random } => commands::ziegler(&c, *dmax, *check, *random),
        Command::Stone { .. } | Command::Golden => unreachable!("handled without an algebra"),
    }?;
    r.header("algebra", json!(c.alg.name()));
    Ok(r)
}

fn execute(cli: &Cli) -> CliResult<Report> {
    let budget = load::budget()?;
    let mut r = match &cli.command {
        Command::Stone { action } => commands::stone(action)?,
        Command::Golden => golden::run(cli.global.seed, budget)?,
        _ => {
            let spec = load::algebra_spec(&cli.global)?;
            let choice = load::field_choice(&cli.global, &spec)?;
            let mut r = match &choice {
                FieldChoice::Prime(f) => algebra_command(f, cli, budget)?,
                FieldChoice::Rational => algebra_command(&Rationals, cli, budget)?,
            };
            r.header("field", choice.label());
            r
        }
    };
    r.header("seed", json!(cli.global.seed));
    Ok(r)
}

fn emit(g: &Global, text: &str) -> std::io::Result<()> {
    match &g.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match execute(&cli).and_then(|r| Ok((r.render(cli.global.format)?, r.passed))) {
        Ok((text, passed)) => (text, u8::from(!passed)),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e}");
            let mut v = report::error_report(&e);
            v["seed"] = json!(cli.global.seed);
            (report::json(&v), 1)
        }
    };
    if let Err(e) = emit(&cli.global, &text) {
        eprintln!("error: --out: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
