//! Library side of the `derham-factor` command: plane sections, the run
//! report and one function per subcommand. The binary is a thin clap
//! wrapper around [`commands`].

pub mod commands;
pub mod plane;
pub mod report;

pub use commands::{run, Command, Format, Options, Outcome};
pub use plane::Plane2;
pub use report::RunReport;
