/// Numerical tolerances shared by every stage of the pipeline.
///
/// The defaults are what the test suites run at. The CLI's `--tol` flag only
/// touches [`perron_tie`](Self::perron_tie) and [`sign_band`](Self::sign_band).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Jacobi stops once the off-diagonal Frobenius norm is below `eig · ‖A‖_F`.
    pub eig: f64,
    /// Power iteration stops once successive Rayleigh quotients differ by at
    /// most `perron · max(1, ρ)`.
    pub perron: f64,
    /// Power iteration additionally requires `‖Ax − ρx‖_∞ ≤ perron_residual · max(1, ρ)`.
    pub perron_residual: f64,
    /// Acceptable `‖A·A⁻¹ − I‖_max` for the Cholesky inverse.
    pub inverse_residual: f64,
    /// Smallest Cholesky pivot accepted as positive.
    pub pivot_floor: f64,
    /// Relative band under which two branch spectral radii count as tied.
    pub perron_tie: f64,
    /// Bisection stops when `|h(γ)|` drops to this value...
    pub bisect_h: f64,
    /// ...or when the bracket is narrower than this.
    pub bisect_width: f64,
    /// Values with `|x| ≤ sign_band · ‖x‖_∞` are read as zero.
    pub sign_band: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eig: 1e-12,
            perron: 1e-13,
            perron_residual: 1e-12,
            inverse_residual: 1e-9,
            pivot_floor: 1e-13,
            perron_tie: 1e-9,
            bisect_h: 1e-12,
            bisect_width: 1e-14,
            sign_band: 1e-9,
        }
    }
}

impl Tolerances {
    /// Copy with the classification tie band and the sign zero band replaced.
    pub fn with_tie(self, tol: f64) -> Self {
        Self {
            perron_tie: tol,
            sign_band: tol,
            ..self
        }
    }
}

pub(crate) const JACOBI_MAX_SWEEPS: usize = 100;
pub(crate) const PERRON_MAX_ITERATIONS: usize = 1_000_000;
pub(crate) const BISECTION_MAX_ITERATIONS: usize = 200;
