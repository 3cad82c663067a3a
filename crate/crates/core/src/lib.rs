//! Infinite divisibility of laws on the non-negative integers.
//!
//! A law on `{0, 1, 2, ...}` is the sum of `n` i.i.d. integer-valued
//! components for every `n` exactly when it is a Poisson compound of a jump
//! law on `{1, 2, ...}`; this forces an atom at zero and an unbounded
//! support. The crate tests that property on truncated pmfs, extracts the
//! compound Poisson form and convolution roots, detects translated laws,
//! and analyzes supports for gaps.
//!
//! ```
//! use idlattice::{families, test_id, IdVerdict};
//!
//! let p = families::geometric(0.5, 0, 256).unwrap();
//! match test_id(&p).unwrap() {
//!     IdVerdict::IdIntegerComponents(form) => {
//!         assert!((form.rate() - 2f64.ln()).abs() < 1e-12);
//!     }
//!     other => panic!("unexpected verdict {other}"),
//! }
//! ```

pub mod analysis;
pub mod error;
pub mod exec;
pub mod families;
pub mod pmf;
pub mod series;
pub mod support;
pub mod tolerance;
pub mod verify;

pub use analysis::{
    compose, convolution_root, convolution_root_with, detect_shift, detect_shift_with, factorize,
    factorize_with, test_id, test_id_with, CompoundPoissonForm, IdVerdict, InconclusiveReason,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use pmf::{
    convolve, convolve_power, pgf_eval, total_variation_distance, PgfEnclosure, Pmf,
    TotalVariation,
};
pub use series::{exp_series, log_pgf, LogSeries};
pub use support::{
    check_gap_theorem, check_gap_theorem_with, semigroup_closure, support_report,
    support_report_with, Gap, GapCheck, GapViolation, SupportReport,
};
pub use tolerance::{Tolerances, DEFAULT_TRUNCATION};
