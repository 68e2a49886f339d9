//! Probability and information entropy of sample spaces that expand or
//! contract exponentially over time.
//!
//! When a space of alternatives grows as `s(t) = s0 * e^(lambda t)`, the
//! probability that an outcome stays inside the initial reference partition
//! decays as `p = e^(-lambda t)`, and the information entropy gained by
//! observing the outcome grows linearly: `H = -ln p = lambda t` nats. This
//! crate provides that mono-exponential core plus three extensions:
//!
//! * [`processes`]: several independent processes expanding one space
//!   combine by adding rates (probabilities multiply, entropies add);
//! * [`multiexp`]: mixtures `p(T) = sum A_i e^(-c_i T)` with weighted decay
//!   channels, their entropy, its large-`T` asymptote, and the mean
//!   residence time of the initial partition;
//! * [`contraction`]: spaces that shrink by halving, where entropy change is
//!   negative and the trajectory ends at a hard feasibility horizon.
//!
//! [`fitting`] estimates `s0` and `lambda` from observed time series by
//! log-linear least squares, [`ingest`] reads series and model files,
//! [`oracle`] cross-checks the closed forms by brute-force enumeration and
//! adaptive quadrature, and [`figures`] produces the canonical datasets
//! behind the crate's reference figures. All entropies are in nats.
//!
//! ```
//! use expspace::multiexp::MultiExpModel;
//!
//! let model = MultiExpModel::try_from(vec![
//!     (0.4, 1.0),
//!     (0.3, 0.1),
//!     (0.2, 0.01),
//!     (0.1, 0.001),
//! ])?;
//! let p = model.probability(10.0)?;
//! let h = model.entropy(10.0)?;
//! assert!((h + p.ln()).abs() < 1e-12);
//! assert!((model.mean_residence_time() - 826.8265802269044).abs() < 1e-9);
//! # Ok::<(), expspace::Error>(())
//! ```

pub mod cli;
pub mod contraction;
pub mod error;
pub mod figures;
pub mod fitting;
pub mod ingest;
pub mod mono;
pub mod multiexp;
pub mod oracle;
pub mod processes;
pub mod report;
pub mod svg;

pub use contraction::ContractionModel;
pub use error::{Error, Result};
pub use fitting::{fit_mono_exponential, FitResult, TimeSeries};
pub use ingest::{load_model, load_series, ModelConfig, OriginPolicy, SeriesFileSpec};
pub use mono::MonoExpModel;
pub use multiexp::{ExpComponent, MultiExpModel};
pub use oracle::QuadratureSpec;
pub use processes::{ProcessContribution, ProcessSet};
