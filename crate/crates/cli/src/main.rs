use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zipzeta::btgl::BTParams;
use zipzeta::Execution;
use zipzeta_cli::render::render_text;
use zipzeta_cli::{parse_config, run, status_of, CliError, Command, RunOptions};

#[derive(Parser, Debug)]
#[command(name = "zipzeta", version)]
#[command(about = "Strata and zeta functions of stacks of G-zips and truncated Barsotti-Tate groups")]
struct Args {
    #[command(subcommand)]
    command: Cmd,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Run single-threaded
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify the strata of a datum
    Strata {
        /// Config path, `-` for stdin, or inline JSON
        config: String,
    },
    /// Zeta function as a product, optionally with its power series
    Zeta {
        config: String,
        /// Numeric value of q (defaults to q0^e from the config)
        #[arg(long)]
        q: Option<u64>,
        /// Expand the series through t^N
        #[arg(long, value_name = "N")]
        series: Option<usize>,
    },
    /// Predicted groupoid cardinalities N_1, ..., N_v
    Count {
        config: String,
        #[arg(long, value_name = "N")]
        v: u32,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Strata and zeta function of BT_n with height h and dimension d
    Bt {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, value_name = "N")]
        series: Option<usize>,
    },
    /// Extended length ell_IJ for every pair of subsets I, J
    Lengths { config: String },
    /// Compare a brute-force census over F_{p^k} with the strata
    Oracle {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

fn build(cmd: Cmd) -> Result<Command, CliError> {
    Ok(match cmd {
        Cmd::Strata { config } => Command::Strata { config: parse_config(&config)? },
        Cmd::Zeta { config, q, series } => Command::Zeta { config: parse_config(&config)?, q, series },
        Cmd::Count { config, v, q } => Command::Count { config: parse_config(&config)?, v, q },
        Cmd::Bt { h, d, p, n, series } => Command::Bt { params: BTParams::new(h, d, p, n)?, series },
        Cmd::Lengths { config } => Command::Lengths { config: parse_config(&config)? },
        Cmd::Oracle { h, d, p, k, n } => Command::Oracle { params: BTParams::new(h, d, p, n)?, k },
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = build(args.command).and_then(|cmd| run(&cmd, RunOptions { exec }));
    match result {
        Ok(doc) => {
            match args.format {
                Format::Json => println!("{}", doc.to_json()),
                Format::Text => print!("{}", render_text(&doc)),
            }
            ExitCode::from(status_of(&doc) as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
