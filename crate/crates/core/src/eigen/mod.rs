//! Eigentopes: fixed points of word maps, their spins and word scans.

pub mod catalog;
pub mod scan;
pub mod solver;
pub mod spin;

pub use catalog::EigentopeRecord;
pub use scan::{period_census, scan_words, PeriodCensus, ScanConfig, ScanReport};
pub use solver::{find_fixed_points, FixedPointResult, SolverConfig};
pub use spin::{conformal_check, lambda_sixfold_A, spin, ConformalReport, SpinConfig, SpinResult};
