//! slicegap: exact verification toolkit for Arf invariants, formal group
//! laws, cyclic group cohomology, Bredon homology of representation spheres,
//! slice-cell combinatorics, and RO(G)-graded degree bookkeeping.

mod cmds;
mod render;
mod verify;

use clap::{Parser, Subcommand};
use render::Status;

#[derive(Parser)]
#[command(name = "slicegap", version, about = "Exact equivariant bookkeeping toolkit")]
struct Cli {
    /// Spaces of indentation for JSON output (0 = compact)
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Include elapsed milliseconds in the output envelope
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Arf invariant and Witt class of an F_2 quadratic space
    Arf(cmds::ArfArgs),
    /// Formal group law operations
    Fgl(cmds::FglArgs),
    /// H^s(C_m; M) via the periodic resolution
    Cohomology(cmds::CohomologyArgs),
    /// Detection-map image symbols and monomial nonvanishing
    Detect(cmds::DetectArgs),
    /// The target group H^2(C_8; R_{2^j})
    KervaireTarget(cmds::KervaireTargetArgs),
    /// G-set calculus: restriction, table of marks, products
    Gset(cmds::GsetArgs),
    /// Real representation calculus
    Rep(cmds::RepArgs),
    /// Bredon homology or cohomology of a representation sphere
    Bredon(cmds::BredonArgs),
    /// Cell Lemma instance for Ind_K^G S^{m rho_K}
    CellLemma(cmds::CellLemmaArgs),
    /// Slice cell algebra: dim, smash, norm-wedge, census, gap
    Slice(cmds::SliceArgs),
    /// Gap check (alias for `slice gap`)
    Gap(cmds::GapArgs),
    /// RO(G)-graded degree calculus fixtures
    Classes(cmds::ClassesArgs),
    /// Run the bundled verification suites
    Verify(verify::VerifyArgs),
}

fn main() {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    let outcome = match cli.command {
        Command::Arf(a) => cmds::run_arf(a),
        Command::Fgl(a) => cmds::run_fgl(a),
        Command::Cohomology(a) => cmds::run_cohomology(a),
        Command::Detect(a) => cmds::run_detect(a),
        Command::KervaireTarget(a) => cmds::run_kervaire_target(a),
        Command::Gset(a) => cmds::run_gset(a),
        Command::Rep(a) => cmds::run_rep(a),
        Command::Bredon(a) => cmds::run_bredon(a),
        Command::CellLemma(a) => cmds::run_cell_lemma(a),
        Command::Slice(a) => cmds::run_slice(a),
        Command::Gap(a) => cmds::run_gap(a),
        Command::Classes(a) => cmds::run_classes(a),
        Command::Verify(a) => {
            let code = verify::run(a);
            std::process::exit(code);
        }
    };
    let mut result = match outcome {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {}", msg);
            std::process::exit(Status::Error.exit_code());
        }
    };
    result.elapsed_ms = started.elapsed().as_millis();
    println!("{}", result.render(cli.json_indent, cli.timing));
    std::process::exit(result.status.exit_code());
}
