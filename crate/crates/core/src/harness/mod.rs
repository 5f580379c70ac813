//! Sweeps, rate fits, verification reports and result persistence.

pub mod config;
pub mod fit;
pub mod lemmas;
pub mod plot;
pub mod records;
pub mod report;
pub mod store;
pub mod sweep;
pub mod verify;

pub use config::Config;
pub use fit::{fit_rate, two_term_fit, FitResult, TwoTermFit};
pub use lemmas::{lemma_checks, LemmaSet};
pub use plot::{gnuplot_script, plot_data, write_plot};
pub use records::{fmt17, read_csv, to_csv_string, write_csv, Method, SweepRecord, CODE_VERSION};
pub use report::{render, ReportFormat};
pub use store::{content_key, ResultStore, StoreEntry};
pub use sweep::{sweep, trial_family, SweepOptions};
pub use verify::{verify, Check, Report};
