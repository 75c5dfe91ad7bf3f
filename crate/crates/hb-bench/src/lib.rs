//! Shared setup for the benchmark targets. The measurements themselves
//! live in `benches/`.

pub use hb_core::{Grid, Preset};
