use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::{CliError, Format};

#[derive(Debug, Parser)]
#[command(
    name = "steinkit",
    version,
    about = "Legendrian, Brieskorn and Stein handlebody invariants"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = FormatArg::Table)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Front diagram files.
    #[command(subcommand)]
    Front(FrontCommand),
    /// Maximal-tb front of the torus knot T(p,q).
    #[command(name = "torus-knot")]
    TorusKnot(TorusKnotArgs),
    /// Brieskorn spheres and Milnor fibers.
    #[command(subcommand)]
    Brieskorn(BrieskornCommand),
    /// Kirby files.
    #[command(subcommand)]
    Handlebody(HandlebodyCommand),
    /// Generalized nucleus N(p,q,n).
    Nucleus(NucleusArgs),
    /// Embedding and filling criteria.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Subcommand)]
enum FrontCommand {
    /// Components, invariants and linking numbers.
    Stats { file: String },
    /// Add one zig-zag and print the resulting front file.
    Stabilize(StabilizeArgs),
}

#[derive(Debug, Args)]
struct StabilizeArgs {
    file: String,
    #[arg(long)]
    component: usize,
    #[arg(long, value_parser = ["up", "down"])]
    dir: String,
    /// Insert just before this event index.
    #[arg(long)]
    at: usize,
}

#[derive(Debug, Args)]
struct TorusKnotArgs {
    p: i64,
    q: i64,
    /// Add `a` up and `b` down zig-zags, written `a,b`.
    #[arg(long, value_name = "A,B")]
    stabilize: Option<String>,
}

#[derive(Debug, Subcommand)]
enum BrieskornCommand {
    /// b2, χ, σ and boundary θ of the Milnor fiber.
    #[command(allow_negative_numbers = true)]
    Invariants { p1: i64, p2: i64, p3: i64 },
    /// Seifert data (q1, q2, q3).
    #[command(allow_negative_numbers = true)]
    Seifert { p1: i64, p2: i64, p3: i64 },
    /// Brieskorn sphere from ±1/n surgery on T(p,q).
    #[command(allow_negative_numbers = true)]
    Surgery {
        p: i64,
        q: i64,
        n: i64,
        /// `+` or `-`.
        #[arg(allow_hyphen_values = true)]
        sign: String,
    },
    /// Lattice signature against the closed forms over (p, q, npq-1).
    #[command(name = "sigma-sweep")]
    SigmaSweep(SweepArgs),
    /// Casson-Harer family members.
    #[command(name = "casson-harer")]
    CassonHarer(SweepArgs),
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    pmax: i64,
    #[arg(long)]
    nmax: i64,
}

#[derive(Debug, Subcommand)]
enum HandlebodyCommand {
    /// Intersection form data of a Kirby file.
    Analyze { file: String },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct NucleusArgs {
    p: i64,
    q: i64,
    n: i64,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Section-class embedding in a ruled surface S_m.
    #[command(allow_negative_numbers = true)]
    Hirz {
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: u64,
    },
    /// Zig-zag plan embedding Σ(p, q, pq+ε).
    #[command(allow_negative_numbers = true)]
    Embed { p: i64, q: i64, eps: i64 },
    /// Compare θ of the embedding and Milnor fiber contact structures.
    #[command(name = "prop-theta", allow_negative_numbers = true)]
    PropTheta { p: i64, q: i64, eps: i64 },
    /// Pseudoconcave filling from the mirror's invariants.
    #[command(allow_negative_numbers = true)]
    Cave {
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        k: i64,
    },
    /// Flip zig-zags to reach a rotation number.
    #[command(allow_negative_numbers = true)]
    Flip {
        #[arg(long)]
        r0: i64,
        #[arg(long)]
        up: u64,
        #[arg(long)]
        down: u64,
        #[arg(long)]
        target: i64,
    },
    /// Slice-genus bound tb + |r| <= 2g - 1.
    #[command(allow_negative_numbers = true)]
    Slice {
        #[arg(long)]
        tb: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        g: u64,
    },
}

fn run(cli: Cli) -> Result<output::Output, CliError> {
    use commands as c;
    match cli.command {
        Command::Front(FrontCommand::Stats { file }) => c::front_stats(&file),
        Command::Front(FrontCommand::Stabilize(a)) => {
            c::front_stabilize(&a.file, a.component, &a.dir, a.at)
        }
        Command::TorusKnot(a) => c::torus_knot(a.p, a.q, a.stabilize.as_deref()),
        Command::Brieskorn(b) => match b {
            BrieskornCommand::Invariants { p1, p2, p3 } => c::brieskorn_invariants(p1, p2, p3),
            BrieskornCommand::Seifert { p1, p2, p3 } => c::brieskorn_seifert(p1, p2, p3),
            BrieskornCommand::Surgery { p, q, n, sign } => c::brieskorn_surgery(p, q, n, &sign),
            BrieskornCommand::SigmaSweep(s) => c::sigma_sweep(s.pmax, s.nmax),
            BrieskornCommand::CassonHarer(s) => c::casson_harer(s.pmax, s.nmax),
        },
        Command::Handlebody(HandlebodyCommand::Analyze { file }) => c::handlebody_analyze(&file),
        Command::Nucleus(a) => c::nucleus(a.p, a.q, a.n),
        Command::Check(check) => match check {
            CheckCommand::Hirz { tb, r, n, m } => c::check_hirz(tb, r, n, m),
            CheckCommand::Embed { p, q, eps } => c::check_embed(p, q, eps),
            CheckCommand::PropTheta { p, q, eps } => c::check_prop_theta(p, q, eps),
            CheckCommand::Cave { tb, r, k } => c::check_cave(tb, r, k),
            CheckCommand::Flip {
                r0,
                up,
                down,
                target,
            } => c::check_flip(r0, up, down, target),
            CheckCommand::Slice { tb, r, g } => c::check_slice(tb, r, g),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprint!(
                "UsageError: {}",
                msg.strip_prefix("error: ").unwrap_or(&msg)
            );
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
