mod args;
mod commands;
mod demo;
mod manifest;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::{Ctx, Failure, Outcome, Report};

fn dispatch(cli: &Cli) -> Outcome {
    let ctx = Ctx { seed: cli.seed, strict: cli.strict };
    match &cli.command {
        Command::Qrf(c) => commands::qrf(c, &ctx),
        Command::Cccd(c) => commands::cccd(c),
        Command::Quiver(c) => commands::quiver(c),
        Command::Cobord(c) => commands::cobord(c, &ctx),
        Command::Tqnn(c) => commands::tqnn(c),
        Command::Index { inputs, cross_check } => commands::index(inputs, *cross_check),
        Command::Demo { which } => demo::run(*which),
        Command::Run { manifest } => manifest::run(manifest).and_then(|inner| dispatch(&inner)),
    }
}

fn render_json(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) => v.to_string(),
        _ => serde_json::to_string_pretty(v).expect("serializable"),
    }
}

/// The rendering requested, or None when the command has no such form.
fn render(r: &Report, format: Format) -> Option<String> {
    match format {
        Format::Json => Some(render_json(&r.json)),
        Format::Text => Some(r.text.clone().unwrap_or_else(|| render_json(&r.json))),
        Format::Dot => r.dot.clone(),
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn out(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn emit(r: &Report, format: Format) -> Result<(), ExitCode> {
    match render(r, format) {
        Some(s) => {
            out(s.trim_end());
            Ok(())
        }
        None => {
            eprintln!("error: this command has no {format:?} rendering");
            Err(ExitCode::from(2))
        }
    }
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    // A manifest stands in for the whole invocation, its format included.
    if let Command::Run { manifest } = &cli.command {
        match manifest::run(manifest) {
            Ok(inner) => cli = inner,
            Err(e) => return fail(e, cli.format),
        }
    }
    let format = cli.format;
    match dispatch(&cli) {
        Ok(r) => match emit(&r, format) {
            Ok(()) => ExitCode::SUCCESS,
            Err(code) => code,
        },
        Err(e) => fail(e, format),
    }
}

fn fail(e: Failure, format: Format) -> ExitCode {
    match e {
        Failure::Negative(r) => match emit(&r, format) {
            Ok(()) => ExitCode::from(1),
            Err(code) => code,
        },
        Failure::Domain(e) => {
            let v = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            out(&serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::from(1)
        }
        Failure::Io(m) | Failure::Parse(m) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
