use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use refsusy::conditions;
use refsusy::config::Config;
use refsusy::report::VerificationReport;
use refsusy::spectral::{self, GridSpec};
use refsusy::{Coeff, Error};

/// Construct and verify partner Hamiltonians with reflection operators.
#[derive(Parser)]
#[command(name = "refsusy", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a model from a JSON config and verify it.
    Verify(VerifyArgs),
    /// Check the coefficient-independent operator identities.
    Identities(IdentitiesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Symbolic,
    Numeric,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Model configuration (JSON).
    #[arg(long)]
    config: PathBuf,

    /// Which checks to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,

    /// Write the paired spectra as CSV.
    #[arg(long)]
    emit_spectra: Option<PathBuf>,

    /// Write a JSON verification report.
    #[arg(long)]
    report: Option<PathBuf>,

    /// Reject the formal odd-constant degenerate family outright.
    #[arg(long)]
    strict_case33: bool,

    /// Half-width L of the symmetric grid [-L, L].
    #[arg(long, default_value_t = 8.0)]
    half_width: f64,

    /// Number of grid points (even).
    #[arg(long, default_value_t = 600)]
    points: usize,

    /// Finite-difference order of the derivative stencil (2 or 4).
    #[arg(long, default_value_t = 4)]
    stencil_order: u32,
}

#[derive(Args)]
struct IdentitiesArgs {
    /// Write a JSON verification report.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => run_verify(&args),
        Command::Identities(args) => run_identities(&args),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_entry(report: &VerificationReport) {
    let e = report.entries.last().expect("entry just recorded");
    let tag = if matches!(e.verdict, refsusy::report::Verdict::Pass) {
        "PASS"
    } else {
        "FAIL"
    };
    println!("{tag} {} ({}) residual={} [{} ms]", e.id, e.anchor, e.residual, e.wall_ms);
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Error> {
    let mut cfg = Config::load(&args.config)?;
    if args.strict_case33 {
        cfg.options.strict_case33 = true;
    }
    let model = cfg.build_model()?;
    let mut report = VerificationReport::new();

    if args.suite != Suite::Numeric {
        let t = Instant::now();
        let iw = conditions::check_intertwining(&model)?;
        report.record(
            "intertwining",
            "P_N^- H^- - H^+ P_N^- vanishes identically",
            iw.is_zero(),
            format!("{:?}", iw.primary),
            t.elapsed().as_millis(),
        );
        print_entry(&report);

        let t = Instant::now();
        let (upper, lower) = conditions::check_superalgebra(&model)?;
        report.record(
            "superalgebra",
            "P_N^-+ P_N^+- equals the closure polynomial in H^+-",
            upper.is_zero() && lower.is_zero(),
            format!("upper: {upper:?}; lower: {lower:?}"),
            t.elapsed().as_millis(),
        );
        print_entry(&report);

        if model.order_n == 2 {
            let t = Instant::now();
            let named = conditions::check_named_conditions(&model)?;
            for (id, residual) in &named.residuals {
                report.record(
                    id.name(),
                    id.anchor(),
                    residual.is_zero(),
                    format!("{residual}"),
                    t.elapsed().as_millis(),
                );
                print_entry(&report);
            }
        }
    }

    if args.suite != Suite::Symbolic {
        let grid = GridSpec::new(args.half_width, args.points, args.stencil_order);

        let t = Instant::now();
        let pairing = spectral::pair_spectra(&model, &grid, 8, 1e-3)?;
        let max_gap = pairing
            .rows
            .iter()
            .filter_map(|r| r.gap)
            .fold(0.0_f64, |a, g| a.max(g.abs()));
        let n = model.order_n as usize;
        report.record(
            "spectral-pairing",
            "partner spectra agree level by level away from the kernel",
            pairing.unmatched_minus <= n && pairing.unmatched_plus <= n,
            format!(
                "max matched gap {max_gap:.3e}; unmatched -:{} +:{}",
                pairing.unmatched_minus, pairing.unmatched_plus
            ),
            t.elapsed().as_millis(),
        );
        print_entry(&report);
        if let Some(path) = &args.emit_spectra {
            spectral::export_spectra(&pairing, path)?;
        }

        let t = Instant::now();
        let coarse = GridSpec::new(args.half_width, args.points / 2, args.stencil_order);
        let r_coarse = spectral::intertwining_residual(&model, &coarse)?;
        let r_fine = spectral::intertwining_residual(&model, &grid)?;
        report.record(
            "intertwining-convergence",
            "discrete intertwining residual shrinks under grid refinement",
            r_fine <= 1e-10 || r_fine < r_coarse,
            format!("coarse {r_coarse:.3e} -> fine {r_fine:.3e}"),
            t.elapsed().as_millis(),
        );
        print_entry(&report);

        if model.order_n == 2 {
            let t = Instant::now();
            let dev = spectral::representation_agreement(&model, &grid)?;
            report.record(
                "representation-agreement",
                "folded grid operators equal the two-component matrices",
                dev <= 1e-10,
                format!("{dev:.3e}"),
                t.elapsed().as_millis(),
            );
            print_entry(&report);
        }
    }

    if let Some(path) = &args.report {
        report.write_json(path)?;
    }
    println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(report.passed())
}

fn run_identities(args: &IdentitiesArgs) -> Result<bool, Error> {
    let mut report = VerificationReport::new();
    let t = Instant::now();
    let app = conditions::check_appendix_identities()?;
    for e in &app.entries {
        report.record(e.name, e.anchor, e.zero, &*e.detail, t.elapsed().as_millis());
        print_entry(&report);
    }
    let t = Instant::now();
    let dep = conditions::check_dependency_identities()?;
    for e in &dep.entries {
        report.record(e.name, e.anchor, e.zero, &*e.detail, t.elapsed().as_millis());
        print_entry(&report);
    }
    if let Some(path) = &args.report {
        report.write_json(path)?;
    }
    println!("overall: {}", if report.passed() { "PASS" } else { "FAIL" });
    Ok(report.passed())
}
