//! Expression language and command-line front end for `virasoro-core`.

pub mod app;
pub mod eval;
pub mod parse;
pub mod render;

pub use app::{run, Cli, CliError, Outcome, Verb};
pub use eval::{Context, EvalError, Value};
pub use parse::{parse, Expr, ExprKind, ParseError};
pub use render::{render, Format};
