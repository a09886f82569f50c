//! trialkit: trial-set engineering for verification benchmarks.
//!
//! The toolkit covers the lifecycle of a verification evaluation protocol:
//!
//! - [`trials`]: trial data model, cross-pairing generation, Kaldi/VoxCeleb
//!   trial-list formats.
//! - [`scores`]: per-system score files aligned into a trial-by-system
//!   matrix.
//! - [`metrics`]: ROC sweep, EER, minDCF, fixed-threshold FAR/FRR, and
//!   relative system comparisons.
//! - [`sim`]: the easy-trial-injection bias study with Gaussian score
//!   models, with CSV and SVG exports.
//! - [`svm`]: a deterministic soft-margin linear SVM trained by SMO.
//! - [`miner`]: hard-trial mining by extracting the support vectors of an
//!   SVM trained on multi-system score vectors.
//! - [`rng`]: the counter-based random number streams behind every
//!   stochastic component.
//!
//! Everything seeded is reproducible bit-for-bit across runs and platforms.

pub mod metrics;
pub mod miner;
pub mod rng;
pub mod scores;
pub mod sim;
pub mod svm;
pub mod trials;
