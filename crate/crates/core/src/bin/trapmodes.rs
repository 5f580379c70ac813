use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use trapmodes::fdoracle::{bracketed_eigenvalue, BracketOptions};
use trapmodes::harness::{
    fit_rate, lemma_checks, read_csv, render, sweep, verify, write_csv, write_plot, Config, LemmaSet, Method, ReportFormat, ResultStore,
    StoreEntry, SweepOptions,
};
use trapmodes::modematch::{eigenvalues_below_threshold, SolveOptions};
use trapmodes::rayleigh::{build_multimode_family, minimax_upper_bounds, rayleigh_quotient, TrialFunction};
use trapmodes::{eigen_count, m_of_a, predict, Geometry, Regime, Result, SymmetryVariant};

#[derive(Parser)]
#[command(name = "trapmodes", version, about = "Trapped modes below pi^2/4 in a strip with a thick obstacle")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    N,
    D,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Naive,
    Optimal,
    Multi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Leading-order prediction, regime and eigenvalue counts.
    Predict {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Mode-matching eigenvalues below the threshold.
    Solve {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, value_enum, default_value = "both")]
        variant: VariantArg,
        /// Minimum number of strip modes.
        #[arg(long)]
        modes: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Finite-difference bracket for one eigenvalue.
    Oracle {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value = "N")]
        variant: SymmetryVariant,
        /// 1-based index within the variant; the top one by default.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        h_list: Option<Vec<f64>>,
        #[arg(long = "X")]
        x_end: Option<f64>,
    },
    /// Rayleigh quotients and min-max upper bounds.
    Rayleigh {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, value_enum, default_value = "multi")]
        family: Family,
    },
    /// Spot checks of the one-dimensional inequalities.
    Lemmas {
        #[arg(long, default_value = "all")]
        which: LemmaSet,
    },
    /// Sweep over delta; writes CSV.
    Sweep {
        #[arg(long)]
        a: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(long, default_value = "modematch")]
        method: Method,
        /// Variant of the top eigenvalue by default.
        #[arg(long)]
        variant: Option<SymmetryVariant>,
        /// Record every eigenvalue, not only the top one.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append the records to this JSON-lines store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Rate fit of a sweep CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        /// Write `<stem>.dat` and `<stem>.gp`.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Full check of the asymptotic statements for one a; prints JSON.
    Verify {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        store: Option<PathBuf>,
        /// Print the default configuration and exit.
        #[arg(long)]
        print_config: bool,
    },
    /// Summary of a result store.
    Report {
        #[arg(long)]
        store: PathBuf,
        #[arg(long, default_value = "md")]
        format: ReportFormat,
    },
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Predict { a, delta } => {
            let g = Geometry::new(a, delta)?;
            print_json(&json!({"prediction": predict(&g), "count": eigen_count(a)}));
        }
        Cmd::Solve { a, delta, variant, modes, tol } => {
            let g = Geometry::new(a, delta)?;
            let mut opts = SolveOptions::default();
            if let Some(m) = modes {
                opts.n_right = m;
            }
            if let Some(t) = tol {
                opts.tol = t;
            }
            let variants: Vec<SymmetryVariant> = match variant {
                VariantArg::N => vec![SymmetryVariant::NeumannAtCut],
                VariantArg::D => vec![SymmetryVariant::DirichletAtCut],
                VariantArg::Both => SymmetryVariant::ALL.to_vec(),
            };
            for v in variants {
                let r = eigenvalues_below_threshold(&g, v, &opts)?;
                for w in &r.warnings {
                    eprintln!("warning: {w}");
                }
                for (i, (l, res)) in r.values.iter().zip(&r.residuals).enumerate() {
                    println!("{v} {} {l:.12} {res:.2e} converged={}", i + 1, r.converged[i]);
                }
            }
        }
        Cmd::Oracle { a, delta, variant, index, h_list, x_end } => {
            let g = Geometry::new(a, delta)?;
            let mut opts = BracketOptions { x_end, ..BracketOptions::default() };
            if let Some(h) = h_list {
                opts.h_list = h;
            }
            let index = index.unwrap_or_else(|| eigen_count(a).from_variant(variant).max(1));
            print_json(&serde_json::to_value(bracketed_eigenvalue(&g, variant, index, &opts)?)?);
        }
        Cmd::Rayleigh { a, delta, family } => {
            let g = Geometry::new(a, delta)?;
            let integer = Regime::of(a) == Regime::IntegerA;
            let fam = match family {
                Family::Naive => vec![TrialFunction::naive(&g)],
                Family::Optimal if integer => vec![TrialFunction::integer_a1(&g)?],
                Family::Optimal => vec![TrialFunction::fractional_optimal(&g)?],
                Family::Multi if integer => vec![TrialFunction::integer_a1(&g)?],
                Family::Multi => build_multimode_family(a, delta)?,
            };
            let quotients: Vec<f64> = fam.iter().map(|f| rayleigh_quotient(f, &g)).collect::<Result<_>>()?;
            let bounds = minimax_upper_bounds(&fam, &g)?;
            let leading = predict(&g).lambda_leading;
            print_json(&json!({
                "members": fam,
                "quotients": quotients,
                "bounds": bounds.bounds,
                "dropped": bounds.dropped(),
                "leading_order": leading,
                "m": m_of_a(a).ok(),
            }));
        }
        Cmd::Lemmas { which } => {
            let checks = lemma_checks(which)?;
            for c in &checks {
                println!(
                    "{} {} value={:.6e} target={:.6e} tol={:.1e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.value,
                    c.target,
                    c.tol
                );
            }
            return Ok(checks.iter().all(|c| c.pass));
        }
        Cmd::Sweep { a, deltas, method, variant, all, out, store } => {
            let variant = variant.unwrap_or_else(|| eigen_count(a).top_variant());
            let opts = SweepOptions { all, ..SweepOptions::default() };
            let recs = sweep(a, &deltas, variant, method, &opts)?;
            match &out {
                Some(p) => write_csv(&recs, std::fs::File::create(p)?)?,
                None => write_csv(&recs, std::io::stdout().lock())?,
            }
            if let Some(s) = store {
                let inputs = json!({"a": a, "deltas": deltas, "variant": variant.label(), "method": method.label(), "options": opts});
                ResultStore::new(s).append(&StoreEntry::new("sweep", inputs, serde_json::to_value(&recs)?))?;
            }
        }
        Cmd::Fit { input, plot } => {
            let recs = read_csv(std::fs::File::open(&input)?)?;
            let fit = fit_rate(&recs)?;
            if let Some(stem) = plot {
                let m = m_of_a(fit.a).unwrap_or(fit.m_hat);
                let (dat, gp) = write_plot(&fit, &stem, m)?;
                eprintln!("wrote {} and {}", dat.display(), gp.display());
            }
            print_json(&serde_json::to_value(&fit)?);
        }
        Cmd::Verify { a, config, store, print_config } => {
            let cfg = match config {
                Some(p) => Config::load(&p)?,
                None => Config::default(),
            };
            if print_config {
                print!("{}", cfg.render());
                return Ok(true);
            }
            let report = verify(a, &cfg);
            for c in &report.checks {
                eprintln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            }
            let value = serde_json::to_value(&report)?;
            if let Some(s) = store {
                ResultStore::new(s).append(&StoreEntry::new("verify", report.inputs.clone(), value.clone()))?;
            }
            print_json(&value);
            return Ok(report.all_pass());
        }
        Cmd::Report { store, format } => {
            print!("{}", render(&ResultStore::new(store).load()?, format));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
