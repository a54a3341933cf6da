mod args;
mod commands;
mod fetch;
mod pipeline;
mod render;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{AnalyzeArgs, EXIT_ERROR};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            // usage errors share the generic failure code, 2 is reserved for the gate
            let _ = e.print();
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> anyhow::Result<u8> {
    match &command {
        Command::Kcore {
            input,
            gate,
            output,
        } => commands::kcore(input, gate, output),
        Command::Analyze {
            input,
            pipeline,
            cavities,
            emit_dot,
            verify,
            search,
            output,
        } => commands::analyze(AnalyzeArgs {
            input,
            pipeline,
            cavities: *cavities,
            emit_dot: emit_dot.as_deref(),
            verify: *verify,
            search,
            output,
        }),
        Command::Cavities {
            input,
            pipeline,
            order,
            emit_dot,
            verify,
            search,
            output,
        } => commands::cavities(
            AnalyzeArgs {
                input,
                pipeline,
                cavities: true,
                emit_dot: emit_dot.as_deref(),
                verify: *verify,
                search,
                output,
            },
            *order,
        ),
        Command::SmallestCavity {
            k,
            network_out,
            output,
        } => commands::smallest_cavity(*k, network_out.as_deref(), output),
        Command::RandomEr {
            nodes,
            edges,
            seed,
            output,
        } => commands::random_er(*nodes, *edges, *seed, output.as_deref()),
        Command::Fetch {
            name,
            url,
            data_dir,
            repin,
        } => {
            let lock = fetch::fetch(name, url.as_deref(), data_dir, *repin)?;
            println!(
                "{}: {} nodes, {} edges, archive sha256 {}, written to {}",
                lock.name,
                lock.nodes,
                lock.edges,
                lock.archive_sha256,
                fetch::edges_path(data_dir, &lock.name).display()
            );
            Ok(commands::EXIT_OK)
        }
        Command::Verify {
            input,
            pipeline,
            certificates,
            output,
        } => commands::verify(input, pipeline, certificates, output),
    }
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn arguments_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn emit_dot_needs_cavities() {
        let r = Cli::try_parse_from(["netcavity", "analyze", "-i", "x", "--emit-dot", "d"]);
        assert_eq!(r.unwrap_err().kind(), ErrorKind::MissingRequiredArgument);
    }
}
