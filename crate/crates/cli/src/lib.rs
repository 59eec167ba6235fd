//! The `grassmin` command-line front end.
//!
//! Exit codes: 0 success, 1 a verification or assertion failed, 2 the input
//! was rejected, 3 internal error.

pub mod analyze;
pub mod args;
pub mod catalog;
pub mod eval;
pub mod json;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;

use clap::Parser;

use grassmin_core::dsl::{load, DslError, ElabOptions, ImmersionSpec};
use grassmin_core::{Error, GaussianRational};

use args::{CatalogCommand, Cli, Command};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Internal = 3,
}

#[derive(Clone, Debug)]
pub struct CliError {
    pub exit: Exit,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Internal,
            message: message.into(),
        }
    }
}

/// Set `GRASSMIN_FAULT=<stage>` to panic inside that stage; exercises the internal-error path.
pub fn fault_injection(stage: &str) {
    if std::env::var("GRASSMIN_FAULT").is_ok_and(|s| s == stage) {
        panic!("injected fault in {stage}");
    }
}

/// `path:line:col: kind: message`, then the source line with a caret under the column.
pub fn render_dsl_error(path: &Path, text: &str, e: &DslError) -> String {
    let mut s = format!("{}:{e}", path.display());
    // An error at end of input sits on the empty line after a final newline.
    let line = text
        .split('\n')
        .nth(e.line().saturating_sub(1))
        .map(|l| l.trim_end_matches('\r'));
    if let Some(src) = line {
        let pad: String = src
            .chars()
            .take(e.col().saturating_sub(1))
            .map(|c| if c == '\t' { '\t' } else { ' ' })
            .collect();
        s.push_str(&format!("\n  {src}\n  {pad}^"));
    }
    s
}

pub fn load_script(path: &Path, theta: Option<&GaussianRational>) -> Result<ImmersionSpec, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut opts = ElabOptions::default();
    if let Some(t) = theta {
        opts.theta = t.clone();
    }
    load(&text, &opts).map_err(|e| CliError::usage(render_dsl_error(path, &text, &e)))
}

/// Failures caused by the map itself are input errors; anything else is internal.
pub fn geometry_error(path: &Path, e: Error) -> CliError {
    let msg = format!("{}: {e}", path.display());
    match e {
        Error::DegenerateMetric
        | Error::ConstantMap
        | Error::Pole(_)
        | Error::DivisionByZero
        | Error::ReducibleImage
        | Error::ZeroLogArgument => CliError::usage(msg),
        _ => CliError::internal(msg),
    }
}

pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display())))
}

pub fn dispatch(cli: &Cli) -> Result<Exit, CliError> {
    fault_injection("dispatch");
    match &cli.command {
        Command::Verify(a) => verify::run(a),
        Command::Analyze(a) => analyze::run(a),
        Command::Eval(a) => eval::run(a),
        Command::Catalog {
            command: CatalogCommand::List,
        } => {
            print!("{}", catalog::render_list());
            Ok(Exit::Success)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Exit::Usage } else { Exit::Success };
            let _ = e.print();
            return code as i32;
        }
    };
    panic::set_hook(Box::new(|info| eprintln!("grassmin: internal error: {info}")));
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli))) {
        Ok(Ok(exit)) => exit as i32,
        Ok(Err(e)) => {
            eprintln!("grassmin: {}", e.message);
            e.exit as i32
        }
        Err(_) => Exit::Internal as i32,
    }
}
