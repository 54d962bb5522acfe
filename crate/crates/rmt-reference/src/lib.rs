pub mod airy;
pub mod contour;
pub mod error;
pub mod hermite;
pub mod sampling;
pub mod spectral;
pub mod tracy_widom;

pub use airy::{airy, airy_ai, airy_ai_prime};
pub use contour::{ContourQuadrature, gue_kernel, gue_kernel_matrix, gue_m_cdf_contour};
pub use error::RmtError;
pub use hermite::{gue_m_cdf, gue_m_cdf_estimate, oscillator_functions};
pub use sampling::{largest_tridiagonal_eigenvalue, sample_gue_matrix, sample_gue_max, sample_gue_max_tridiagonal};
pub use spectral::{Evaluation, Method, SpectralCdf};
pub use tracy_widom::{Beta, airy_kernel, tracy_widom_cdf, tracy_widom_estimate};
