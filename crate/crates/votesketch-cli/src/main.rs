use std::process::ExitCode;

use votesketch_cli::config::ExperimentConfig;
use votesketch_cli::output::emit;
use votesketch_cli::pipeline::PipelineRegistry;

fn run() -> anyhow::Result<()> {
    let cfg = ExperimentConfig::from_args(std::env::args_os())?;
    let registry = PipelineRegistry::default();
    if cfg.command == "list" {
        for p in registry.iter() {
            println!("{:<16} {}", p.name(), p.about());
        }
        return Ok(());
    }
    let output = registry.run(&cfg)?;
    emit(&cfg, &output)
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = votesketch_cli::error_kind(&e);
            if kind == "help" {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", serde_json::json!({ "error": format!("{e:#}"), "kind": kind }));
            ExitCode::FAILURE
        }
    }
}
