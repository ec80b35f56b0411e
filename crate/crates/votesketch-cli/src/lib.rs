//! Command-line experiment runner: configuration, data generators, file
//! formats and the pipeline registry behind the `votesketch` binary.

pub mod config;
pub mod gen;
pub mod io;
pub mod output;
pub mod pipeline;

/// Stable error tag for machine-readable error output.
pub fn error_kind(e: &anyhow::Error) -> &'static str {
    if let Some(e) = e.downcast_ref::<votesketch::Error>() {
        return e.kind();
    }
    if let Some(e) = e.downcast_ref::<clap::Error>() {
        return match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => "help",
            _ => "usage",
        };
    }
    if e.downcast_ref::<std::io::Error>().is_some() {
        return "io";
    }
    "error"
}
