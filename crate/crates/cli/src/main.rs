use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hgm_hodge_cli::report::{
    compute_report, convert, padic, render_compute, render_padic, render_verify, verify,
    MethodSelection, OutputFormat,
};
use hgm_hodge_cli::scan::{default_output, run_scan};
use hgm_hodge_cli::{parse_gamma, parse_input, CliError, CliResult, EXIT_VALIDATION, EXIT_VERIFY};
use hodge_core::zigzag::render_zigzag_named;
use hodge_core::ZigzagProfile;

/// Hodge numbers of hypergeometric data defined over Q.
///
/// INPUT is a gamma vector such as `3,-1,-1,-1` or a datum `alpha;beta`
/// such as `1/3,2/3,1;1,1,1`.
#[derive(Debug, Parser)]
#[command(name = "hgm-hodge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the Hodge vector.
    Hodge {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// zigzag, genfun, cone or all.
        #[arg(long, default_value = "zigzag")]
        method: MethodSelection,
        #[command(flatten)]
        format: FormatFlags,
    },
    /// Convert between the gamma and datum forms.
    Convert {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check methods, the cone partition and the p-adic bridges.
    Verify {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// Largest weight for the partition check (default n).
        #[arg(long)]
        k_max: Option<usize>,
        /// Prime p = 1 mod M (default: the smallest one).
        #[arg(long)]
        padic_prime: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Write one record per canonical gamma vector with L <= MAX_LEN.
    Scan {
        #[arg(long)]
        max_len: u64,
        /// Output file (default: scan-L<MAX_LEN>.jsonl in $HGM_HODGE_OUT_DIR).
        #[arg(long)]
        output: Option<PathBuf>,
        /// Worker threads (0 uses all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// p-adic orders of the Pochhammer ratios.
    Padic {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Draw the zig-zag diagram.
    Plot {
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// ascii or svg.
        #[arg(long, default_value = "ascii")]
        format: String,
        /// Plot the reduced datum, normalised to start at weight 0.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct FormatFlags {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

impl FormatFlags {
    fn format(&self) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else {
            OutputFormat::Human
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(&p.display().to_string(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::io("stdout", e))
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Hodge {
            input,
            method,
            format,
        } => {
            let g = parse_gamma(&input)?;
            let report = compute_report(&g, &method.0);
            write_out(None, &render_compute(&report, format.format())?)?;
            if report.agree == Some(false) {
                return Err(CliError::new(EXIT_VERIFY, "methods disagree"));
            }
            Ok(())
        }
        Command::Convert { input, json } => {
            let (report, other) = convert(&parse_input(&input)?)?;
            let text = if json {
                serde_json::to_string_pretty(&report).expect("serializable") + "\n"
            } else {
                other + "\n"
            };
            write_out(None, &text)
        }
        Command::Verify {
            input,
            k_max,
            padic_prime,
            json,
        } => {
            let g = parse_gamma(&input)?;
            let report = verify(&g, k_max, padic_prime)?;
            write_out(None, &render_verify(&report, json))?;
            match report.first_failure() {
                None => Ok(()),
                Some(c) => Err(CliError::new(
                    EXIT_VERIFY,
                    format!("{} failed: {}", c.name, c.detail),
                )),
            }
        }
        Command::Scan {
            max_len,
            output,
            jobs,
        } => {
            let path = output.unwrap_or_else(|| default_output(max_len));
            let summary = run_scan(max_len, &path, jobs)?;
            println!(
                "{} records written to {} ({} already present)",
                summary.written,
                summary.path.display(),
                summary.already_present
            );
            Ok(())
        }
        Command::Padic { input, prime, json } => {
            let g = parse_gamma(&input)?;
            write_out(None, &render_padic(&padic(&g, prime)?, json))
        }
        Command::Plot {
            input,
            format,
            reduced,
            output,
        } => {
            let g = parse_gamma(&input)?;
            let profile = if reduced {
                ZigzagProfile::of_reduced(&g.to_datum())?
            } else {
                ZigzagProfile::of_gamma(&g)
            };
            let text = render_zigzag_named(&profile, &format)?;
            write_out(output.as_ref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("hgm-hodge: {err}");
            let code = if err.code == 0 {
                EXIT_VALIDATION
            } else {
                err.code
            };
            ExitCode::from(code)
        }
    }
}
