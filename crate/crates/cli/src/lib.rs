//! Library half of the verification CLI: validated run configuration,
//! section runners producing check records, and deterministic renderers.

pub mod checks;
pub mod config;
pub mod render;

pub use checks::{run, CheckRecord, VerificationReport};
pub use config::{OutputFormat, RawConfig, RunConfig, Section, UsageError};
pub use render::render;
