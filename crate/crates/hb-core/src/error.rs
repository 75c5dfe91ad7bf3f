//! Error type shared by every fallible operation in the crate.

use num_complex::Complex64;

/// Errors raised by grid construction, transforms, the H(b) calculus and the
/// completeness experiments.
#[derive(Debug, Clone, thiserror::Error)]
pub enum HbError {
    /// A sample vector does not match the grid it claims to live on.
    #[error("input length {got} does not match grid size {expected}")]
    LengthMismatch { got: usize, expected: usize },

    /// A precondition on an argument failed (non-real input, |alpha| != 1, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A product or shift would need modes beyond the truncation degree.
    #[error("degree overflow: needed degree {needed} exceeds truncation {max}")]
    DegreeOverflow { needed: usize, max: usize },

    /// An evaluation or kernel point sits too close to the unit circle for the
    /// retained number of modes.
    #[error("point with modulus {modulus:.6} is outside the reliable region (limit {limit:.6})")]
    Conditioning { modulus: f64, limit: f64 },

    /// log w is not integrable at grid resolution (w vanishes on too much of
    /// the circle), so no outer function can be built from it.
    #[error("log of the modulus is not integrable at this resolution: {floored} of {total} samples floored")]
    LogIntegrability { floored: usize, total: usize },

    /// 1 - |b|^2 is numerically zero on most of the grid; b behaves like an
    /// extreme point of the unit ball and has no Pythagorean mate here.
    #[error("symbol is numerically extreme: 1 - |b|^2 floored on {floored} of {total} samples")]
    NotNonExtreme { floored: usize, total: usize },

    /// The Toeplitz solve left a residual far beyond truncation noise; f is
    /// outside H(b) at this resolution, or the grid is too small for it.
    #[error(
        "f is outside H(b) at this resolution: lift residual {residual:.3e} exceeds {limit:.3e}"
    )]
    NotInHb { residual: f64, limit: f64 },

    /// a(lambda) is numerically zero, which only happens when truncation has
    /// destroyed the outer mate; point functionals would be meaningless.
    #[error("a({lambda}) is numerically zero; point functionals are unreliable")]
    Singularity { lambda: Complex64 },

    /// 1 - conj(alpha) * b vanishes on a large part of the grid, so the Clark
    /// quotient a / (1 - conj(alpha) b) cannot be formed.
    #[error("degenerate Clark symbol: 1 - conj(alpha)*b vanishes on {count} of {total} samples")]
    DegenerateSymbol { count: usize, total: usize },

    /// The geometric series behind the g_r approximant diverges.
    #[error("series diverges: r * shift_norm = {product:.6} is not below 1")]
    Divergence { product: f64 },

    /// Two H(b) elements built over different Pythagorean pairs were combined.
    #[error("elements belong to different Pythagorean pairs")]
    PairMismatch,
}

pub type Result<T> = std::result::Result<T, HbError>;
