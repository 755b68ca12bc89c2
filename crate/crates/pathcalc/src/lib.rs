//! Pathwise stochastic calculus for sampled price paths.
//!
//! Everything here operates on concrete continuous paths observed on finite
//! grids, with no probabilistic model attached: integrals and covariations
//! are computed along level-crossing stopping-time partitions, and the
//! classical identities (integration by parts, polarization, the
//! change-of-variable expansion, stochastic exponentials and logarithms,
//! numeraire changes and drift corrections, equity-premium and realized-beta
//! relations) are verified numerically path by path or over seeded
//! ensembles.
//!
//! Module map:
//! - [`path`]: sampled paths, market frames, linear-interpolation evaluation
//! - [`generate`]: seeded Brownian / exponential-martingale generators and ensembles
//! - [`csv_io`]: CSV ingestion and 17-digit export
//! - [`partition`]: level-crossing stopping-time partitions and fineness checks
//! - [`calculus`]: integral and covariation approximants, convergence reports
//! - [`doleans`]: stochastic exponential and logarithm, round trips
//! - [`numeraire`]: capital processes, self-financing expansion, drift correction
//! - [`time_change`]: variation-clock time change and upper-expectation estimates
//! - [`capm`]: relative growth and covariation, CLT and iterated-logarithm diagnostics
//! - [`report`]: deterministic JSON/CSV report writing

pub mod calculus;
pub mod capm;
pub mod csv_io;
pub mod doleans;
pub mod error;
pub mod generate;
pub mod numeraire;
pub mod partition;
pub mod path;
pub mod report;
pub mod stats;
pub mod time_change;

pub use calculus::{
    by_parts_residual, converge, covariation_approx, ito_approx, ito_formula_residual,
    polarization, quadratic_variation, stieltjes_integral, ConvergenceReport, ScalarField,
};
pub use capm::{
    capm_beta, capm_deviation, clt_bound_check, exp_test_process, lil_ratio, relative_covariation,
    relative_growth, relative_quadratic_variation, CapmReport, CltBoundReport, LilRatioReport,
};
pub use csv_io::{export_csv, ingest_csv, CsvSpec};
pub use doleans::{doleans_exp, doleans_log, doleans_log_integral, sde_residual};
pub use error::{Error, Result};
pub use generate::{generate_paths, Ensemble, GeneratorSpec, PathModel, TestShape};
pub use numeraire::{
    capital_process, discount_by_numeraire, expand_self_financing, girsanov_correct,
    martingale_test, GirsanovMethod, MartingaleTestReport, SimpleStrategy,
};
pub use partition::{
    lebesgue_partition, partition_sequence, verify_fineness, FinenessReport, PartitionLevel,
};
pub use path::{build_path, sample_at, MarketFrame, SampledPath};
pub use report::{to_json_bytes, write_path_csv, write_report, ReportFormat};
pub use time_change::{
    brownian_law_test, qv_time_change, upper_expectation_estimate, BrownianLawReport,
    UpperExpectationEstimate,
};
