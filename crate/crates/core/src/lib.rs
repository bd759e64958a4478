//! Signal-density measures, coherence certificates and orthogonal matching
//! pursuit with a density-based recovery guarantee.
//!
//! The δ-density `δ(x) = ‖x‖₁ / ‖x‖∞` is a scale-invariant surrogate for the
//! number of significant entries of a signal. It never exceeds `‖x‖₀`, so
//! every condition phrased in terms of δ is at least as permissive as its
//! sparsity counterpart:
//!
//! * a nonzero `x` with `δ(x) < 1 + 1/μ` is not in the kernel of a
//!   dictionary with coherence `μ` ([`certificates::kernel_certificate`]);
//! * OMP recovers the largest entries in order whenever every tail density
//!   stays below a shrinking threshold ([`certificates::omp_guarantee`]),
//!   which admits fast-decaying signals with up to twice as many nonzeros
//!   as the classical `‖x‖₀ < ½(1 + 1/μ)` condition.
//!
//! Indices are zero-based everywhere, including files and CLI output.
//!
//! ```
//! use lowdensity::{coherence::coherence, dictionary::identity_hadamard, density::delta_density, signal::Signal};
//!
//! let a = identity_hadamard(64).unwrap();
//! assert_eq!(coherence(&a).mu, 0.125);
//! let x = Signal::from_real(&[1.0, 0.5, 0.25, 0.125]).unwrap();
//! assert_eq!(delta_density(&x), 1.875);
//! ```

pub mod certificates;
pub mod cli;
pub mod coherence;
pub mod density;
pub mod dictionary;
pub mod error;
pub mod experiment;
pub mod io;
pub mod linalg;
pub mod omp;
pub mod oracle;
pub mod rng;
pub mod signal;

pub use error::{Error, Result};
pub use signal::{Signal, SupportSet};
pub use dictionary::Dictionary;
