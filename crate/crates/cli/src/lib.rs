//! Rendering and serialization used by the `minmax` binary.

pub mod output;
pub mod render;

pub use output::OutputFormat;
pub use render::{export_dot, render_ascii};
