//! Command-line front end: argument parsing, subcommand dispatch and the
//! bound-table cache.
//!
//! Exit codes: 0 on success, 1 when a verification fails (a lemma witness,
//! a realization gap, a monotonicity violation), 2 on usage or input errors.

mod commands;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use apolar::Field;
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::Report;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(
    name = "apolar",
    version,
    about = "Hilbert functions of apolar algebras and certified bounds on f_e(r)",
    after_help = "EXAMPLES:\n\
                  \n  apolar hf --form \"y0^4+y1^4\" --vars 2\
                  \n  apolar restrict --form \"y0^2*y1 + y1^2*y2 + y2^3\" --vars 3 --H 1,0,1\
                  \n  apolar check-lemmas --seed 7 --trials 100\
                  \n  apolar search-f --e 4 --r 15 --budget 32\
                  \n  apolar realize --e 4 --r 5\
                  \n  apolar gic --e 4 --rmin 3 --rmax 13"
)]
struct Cli {
    #[command(flatten)]
    session: SessionArgs,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct SessionArgs {
    /// Coefficient field: `q` for the rationals or `p:MOD` for GF(MOD)
    #[arg(long, global = true, default_value = "p:2147483647")]
    pub field: Field,
    /// Base seed of every random stream
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound-table file
    #[arg(long, global = true, env = "APOLAR_CACHE")]
    pub cache: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of the apolar algebra of a form
    Hf {
        #[arg(long)]
        form: String,
        #[arg(long)]
        vars: usize,
    },
    /// Restrict a form modulo a linear form H (random when omitted)
    Restrict {
        #[arg(long)]
        form: String,
        #[arg(long)]
        vars: usize,
        /// Coefficients "a0,a1,..." of H
        #[arg(long = "H")]
        h: Option<String>,
    },
    /// Run the gcd-lemma, divisibility and codimension-descent suites
    CheckLemmas {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Search for an upper bound on f_e(r) and store improvements
    SearchF {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Certificates for every admissible h_2 in codimension r
    Realize {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        r: usize,
    },
    /// Check the bound table for monotonicity of f_e over [rmin, rmax]
    Gic {
        #[arg(long)]
        e: u32,
        #[arg(long)]
        rmin: usize,
        #[arg(long)]
        rmax: usize,
        /// Search budget for codimensions missing from the table
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
}

impl SessionArgs {
    pub fn cache_path(&self) -> PathBuf {
        self.cache.clone().unwrap_or_else(default_cache_path)
    }
}

/// `$XDG_CACHE_HOME/apolar/bounds.json`, else under `$HOME/.cache`.
pub fn default_cache_path() -> PathBuf {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
    match base {
        Some(dir) => dir.join("apolar").join("bounds.json"),
        None => PathBuf::from("apolar-bounds.json"),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let session = cli.session;
    let outcome = match cli.command {
        Command::Hf { form, vars } => commands::hf(&session, &form, vars),
        Command::Restrict { form, vars, h } => commands::restrict(&session, &form, vars, h.as_deref()),
        Command::CheckLemmas { trials } => commands::check_lemmas(&session, trials),
        Command::SearchF { e, r, budget } => commands::search_f(&session, e, r, budget, err),
        Command::Realize { e, r } => commands::realize(&session, e, r),
        Command::Gic { e, rmin, rmax, budget } => commands::gic(&session, e, rmin, rmax, budget, err),
    };
    match outcome {
        Ok(report) => {
            if let Err(e) = out.write_all(report.render(&session).as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
