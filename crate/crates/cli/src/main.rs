use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use curveaut::Caps;

mod commands;

/// Automorphism groups of curves: Hurwitz data, fullness, braid orbits and
/// locus tables.
#[derive(Parser, Debug)]
#[command(name = "curveaut", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Group catalog file; defaults to the bundled one.
    #[arg(long, global = true, env = "CURVEAUT_CATALOG")]
    catalog: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest group order materialized from generators.
    #[arg(long, global = true, default_value_t = Caps::default().elements)]
    max_elements: usize,
    /// Largest group order whose subgroup lattice is computed.
    #[arg(long, global = true, default_value_t = Caps::default().lattice)]
    max_lattice: usize,
    /// Largest group order whose automorphism group is enumerated.
    #[arg(long, global = true, default_value_t = Caps::default().automorphisms)]
    max_aut: usize,
    /// Nielsen tuples held by one braid-orbit computation.
    #[arg(long, global = true, default_value_t = Caps::default().tuple_budget)]
    tuple_budget: usize,
    /// Backtracking nodes per generating-system search.
    #[arg(long, global = true, default_value_t = Caps::default().node_budget)]
    node_budget: u64,
}

impl Global {
    fn caps(&self) -> Caps {
        Caps {
            elements: self.max_elements,
            lattice: self.max_lattice,
            automorphisms: self.max_aut,
            tuple_budget: self.tuple_budget,
            node_budget: self.node_budget,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Dot,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Modulo {
    Inner,
    Aut,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Genus of a curve with a given group order and signature.
    Rh {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        g0: u32,
        /// Comma-separated periods, e.g. 2,3,7 or 2^6.
        #[arg(long)]
        periods: String,
    },
    /// Dimension 3g0 - 3 + r of a locus.
    Delta {
        #[arg(long)]
        g0: u32,
        #[arg(long)]
        r: u32,
    },
    /// Number of braid orbits on Nielsen tuples of a genus-0 signature.
    BraidOrbits {
        /// Catalog name or ID such as "(54,6)".
        #[arg(long)]
        group: String,
        /// Periods, optionally prefixed with g0=N;
        #[arg(long)]
        signature: String,
        #[arg(long = "mod", value_enum, default_value_t = Modulo::Aut)]
        modulo: Modulo,
        /// Also print one representative tuple per orbit.
        #[arg(long)]
        verbose: bool,
    },
    /// Restrict a ramification type to a subgroup.
    Restrict {
        #[arg(long)]
        group: String,
        /// `order=N` or `order=N#k` (k-th class of subgroups of that order),
        /// or generators as cycles separated by `;`.
        #[arg(long)]
        subgroup: String,
        /// Class labels, e.g. 2A,3A,7A, optionally prefixed with g0=N;
        #[arg(long = "type")]
        ty: String,
        /// Genus of the curve, to fix the orbit genus.
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Decide whether the group is the full automorphism group of the
    /// generic curve of each type of a signature.
    Full {
        #[arg(long)]
        group: String,
        #[arg(long)]
        signature: String,
        /// Only this type (class labels).
        #[arg(long = "type")]
        ty: Option<String>,
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Tabulate the loci of one genus.
    Classify {
        #[arg(long)]
        genus: u32,
        /// Only groups with |G| > 4(g-1).
        #[arg(long)]
        large_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
        /// Print the row numbering of the published large-group table
        /// next to ours instead of the table.
        #[arg(long)]
        crosswalk: bool,
    },
    /// The genus-3 table over the bundled genus-3 groups.
    Genus3 {
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = commands::run(&cli.command, &cli.global);
    let (text, code) = match outcome {
        Ok(report) => (report.text, if report.partial { 2 } else { 0 }),
        Err(e) => {
            eprintln!("curveaut: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("curveaut: {e}");
        return ExitCode::from(1);
    }
    if code == 2 {
        eprintln!(
            "curveaut: some searches exceeded their caps; see UNRESOLVED or Indeterminate entries"
        );
    }
    ExitCode::from(code)
}
