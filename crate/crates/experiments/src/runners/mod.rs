pub mod direct_cdf;
pub mod finite_kernel;
pub mod gue_cdf;
pub mod kernel_limit;
pub mod localization;
pub mod min_identity;
pub mod shock_law;
pub mod slow_decorrelation;
pub mod system_a;
pub mod tails;
