//! Command-line interface.
//!
//! Every command prints one JSON report document to standard output (see
//! `serre_weights::report` for the schema) and direct diagnostics to
//! standard error.  Exit status: 0 on success, 1 when a computation
//! fails a mathematical check (invalid inertial datum, failed congruence,
//! axiom violation, sweep counterexample), 2 on malformed command lines.

use clap::{Parser, Subcommand};

use serre_weights::report::{
    derive_report, predict_report, rank_one_report, reduce_mj_report, verify_report,
    ResultSection,
};
use serre_weights::tame::FieldParams;

#[derive(Parser)]
#[command(
    name = "serre-weights",
    about = "Predicted Serre weight sets, crystalline lifts, and Breuil module checks \
             for totally ramified p-adic fields",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the predicted weight set of a residual inertial datum.
    Predict {
        /// Residue characteristic (odd prime).
        #[arg(long)]
        p: u64,
        /// Ramification index of the base field.
        #[arg(long)]
        e: u64,
        /// Inertial datum: "red:a,b" (split reducible) or "irr:c".
        #[arg(long)]
        inertia: String,
    },
    /// Derive the provably modular part of the predicted set.
    Derive {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        /// Inertial datum: "red:a,b" (split reducible) or "irr:c".
        #[arg(long)]
        inertia: String,
        /// Assume the ordinary-types modularity statement.
        #[arg(long)]
        ordinary_lift: bool,
    },
    /// Breuil module computations.
    Breuil {
        #[command(subcommand)]
        command: BreuilCommand,
    },
    /// Consistency sweeps over a parameter grid; exit 1 on any failure.
    Verify {
        /// Largest residue characteristic to sweep (odd primes from 3 up).
        #[arg(long)]
        p_max: u64,
        /// Largest ramification index to sweep.
        #[arg(long)]
        e_max: u64,
        /// Worker threads (output does not depend on this).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum BreuilCommand {
    /// Build one rank-two family member, check its axioms, and compute
    /// the reduction characters.
    ReduceMj {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        /// Family parameter, 0 ≤ j ≤ (p−1)e.
        #[arg(long)]
        j: u64,
    },
    /// Validate rank-one module data and report its generic fibre.
    RankOne {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u64,
        /// Descent exponent, 0 ≤ κ < p²−1.
        #[arg(long)]
        kappa: u64,
        /// Filtration height, 0 ≤ r ≤ (p²−1)e.
        #[arg(long)]
        r: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> serre_weights::Result<i32> {
    match cli.command {
        Command::Predict { p, e, inertia } => {
            let params = FieldParams::new(p, e)?;
            print!("{}", predict_report(&params, &inertia)?.to_json());
            Ok(0)
        }
        Command::Derive {
            p,
            e,
            inertia,
            ordinary_lift,
        } => {
            let params = FieldParams::new(p, e)?;
            print!("{}", derive_report(&params, &inertia, ordinary_lift)?.to_json());
            Ok(0)
        }
        Command::Breuil { command } => {
            let doc = match command {
                BreuilCommand::ReduceMj { p, e, j } => {
                    reduce_mj_report(&FieldParams::new(p, e)?, j)?
                }
                BreuilCommand::RankOne { p, e, kappa, r } => {
                    rank_one_report(&FieldParams::new(p, e)?, kappa, r)?
                }
            };
            print!("{}", doc.to_json());
            Ok(0)
        }
        Command::Verify { p_max, e_max, jobs } => {
            let (doc, ok) = verify_report(p_max, e_max, jobs)?;
            print!("{}", doc.to_json());
            if ok {
                Ok(0)
            } else {
                if let ResultSection::Sweep { cells, .. } = &doc.result {
                    if let Some(failure) =
                        cells.iter().flat_map(|c| c.failures.iter()).next()
                    {
                        eprintln!("verification failed: {failure}");
                    }
                }
                Ok(1)
            }
        }
    }
}
