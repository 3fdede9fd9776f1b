//! Units-aware consistency engine and simulator for a fluctuation-driven
//! cosmology. Everything is computed in Gaussian CGS.
//!
//! The crate is organised as a pipeline:
//!
//! * [`quantity`]: dimensional algebra with exact rational exponents and the
//!   dex (order-of-magnitude) distance used by every comparison.
//! * [`registry`]: provenance-tracked store of fundamental constants and
//!   observed cosmological magnitudes, with file-based overrides.
//! * [`relations`]: a catalog of closed-form relations (horizon scales,
//!   large-number ratios, the mass/radius/age/Hubble chain), each evaluated
//!   as an LHS/RHS pair with a verdict at a configured dex tolerance.
//! * [`growth`]: exact, Runge-Kutta, and stochastic integration of the
//!   particle-number growth law dN/dt = sqrt(N)/tau.
//! * [`ensemble`]: Monte Carlo checks of random-phase expectation values and
//!   the Gaussian-suppressed count-fluctuation sampler.

pub mod ensemble;
pub mod growth;
pub mod quantity;
pub mod registry;
pub mod relations;

pub use quantity::{Dimension, Quantity, QuantityError, Rational};
pub use registry::{ConfigError, ConstantRecord, Registry, RegistryError, Source};
pub use relations::{Catalog, EngineError, HorizonResult, Relation, RelationReport, Verdict};
