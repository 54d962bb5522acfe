pub mod critical;
pub mod error;
pub mod finite_time;
pub mod nystrom;
pub mod quadrature;
pub mod rescaled;
pub mod shock_direct;

pub use critical::{CriticalPoints, critical_points, f0};
pub use error::FredholmError;
pub use finite_time::{CdfValue, Contours, FiniteTimeParams, finite_time_cdf, finite_time_cdf_with, finite_time_kernel, finite_time_matrix};
pub use nystrom::{BatchKernel, DetEstimate, Domain, KernelSpec, det_on_interval, fredholm_det};
pub use quadrature::{ContourRule, composite_gauss_legendre, gauss_legendre, gauss_legendre_on};
pub use rescaled::{RescaledKernel, RescaledParams, RescaledQuadrature, rescaled_kernel, rescaled_kernel_gap, sigma, site_of};
pub use shock_direct::{ShockParams, ShockPieces, shock_direct_cdf, shock_direct_parts, shock_scalar_term};
