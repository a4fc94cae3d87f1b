pub mod fit;
pub mod inner;
pub mod oracle;
pub mod peak;

pub use fit::{fit_power_law, linear_regression, FitResult, LinearFit};
pub use inner::{compare_profiles, extract_inner_profile, InnerProfile, ProfileDistance};
pub use oracle::{oracle_a0, truncated_odd_lorentzian_hilbert, OracleA0, OraclePoint};
pub use peak::{peak_summary, PeakSummary};
