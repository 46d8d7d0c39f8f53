use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use torika::run::LatticeChoice;
use torika::{run_files, Command, Format, LoadOptions, RunOptions, Status};
use torika_core::group::Limits;

/// Invariants of smooth toric varieties with a finite Galois action.
#[derive(Parser, Debug)]
#[command(name = "torika", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Check the fan axioms and the group action.
    Validate(Common),
    /// Smoothness of every cone.
    Smooth(Common),
    /// Emit the subfan of cones of dimension at most one.
    Truncate(Common),
    /// Emit the standard fan of the ray orbits and the covering matrix.
    Standard(Common),
    /// Class group and Brauer kernel.
    Invariants(Common),
    /// Group cohomology of the character or cocharacter lattice.
    Cohomology {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = LatticeArg::Character)]
        lattice: LatticeArg,
    },
    /// Compare lattice points of the support with the image of the standard fan.
    CheckInt(Common),
    /// Everything.
    Report(Common),
}

#[derive(clap::Args, Debug)]
struct Common {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Box bound for check-int and report.
    #[arg(long, default_value_t = 5)]
    bound: u64,
    /// Divide rays by their content instead of rejecting them.
    #[arg(long)]
    normalize_rays: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Group preset for files without one; must match the file's group otherwise.
    #[arg(long, value_name = "PRESET")]
    splitting_group: Option<String>,
    /// Largest group order accepted by cohomology computations.
    #[arg(long, default_value_t = Limits::default().max_group_order)]
    max_group_order: usize,
    /// Largest lattice rank accepted by cohomology computations.
    #[arg(long, default_value_t = Limits::default().max_rank)]
    max_rank: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeArg {
    Character,
    Cocharacter,
}

fn options(c: &Common) -> RunOptions {
    RunOptions {
        load: LoadOptions {
            normalize_rays: c.normalize_rays,
            splitting_group: c.splitting_group.clone(),
        },
        format: match c.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        bound: c.bound,
        limits: Limits {
            max_group_order: c.max_group_order,
            max_rank: c.max_rank,
        },
        ..RunOptions::default()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, common, extra): (Command, &Common, Option<(usize, LatticeArg)>) = match &cli.command {
        Sub::Validate(c) => (Command::Validate, c, None),
        Sub::Smooth(c) => (Command::Smooth, c, None),
        Sub::Truncate(c) => (Command::Truncate, c, None),
        Sub::Standard(c) => (Command::Standard, c, None),
        Sub::Invariants(c) => (Command::Invariants, c, None),
        Sub::Cohomology { common, degree, lattice } => (Command::Cohomology, common, Some((*degree, *lattice))),
        Sub::CheckInt(c) => (Command::CheckInt, c, None),
        Sub::Report(c) => (Command::Report, c, None),
    };
    let mut opts = options(common);
    if let Some((degree, lattice)) = extra {
        opts.degree = degree;
        opts.lattice = match lattice {
            LatticeArg::Character => LatticeChoice::Character,
            LatticeArg::Cocharacter => LatticeChoice::Cocharacter,
        };
    }

    let outcomes = run_files(cmd, &common.files, &opts);
    let multiple = outcomes.len() > 1;
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut worst = Status::Ok;
    for o in &outcomes {
        let mut out = stdout.lock();
        if multiple && opts.format == Format::Text && !o.stdout.is_empty() {
            let _ = writeln!(out, "== {} ==", o.path.display());
        }
        let _ = out.write_all(o.stdout.as_bytes());
        drop(out);
        let _ = stderr.lock().write_all(o.stderr.as_bytes());
        worst = worst.max(o.status);
    }
    ExitCode::from(worst.exit_code() as u8)
}
