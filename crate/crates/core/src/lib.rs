//! Exact pseudo-effective and effective cones of Grassmann bundles `Gr_r(E)`
//! over a curve.
//!
//! The Néron–Severi space of `Gr_r(E)` has basis `η = c₁(O(1))` and the fiber
//! class `f`. Its pseudo-effective cone is spanned by `f` and `η - λ f`, where
//! `λ` is read off the Harder–Narasimhan type of `E` (or, in characteristic
//! `p`, of a Frobenius pullback whose filtration has stabilized). This crate
//! computes `λ` and the cone exactly, checks the formula against brute force
//! on split bundles over `P¹`, and builds replayable certificates that the
//! boundary ray is effective.

pub mod bundle;
pub mod certificate;
pub mod cone;
pub mod document;
pub mod error;
pub mod oracle;
pub mod rational;

pub use bundle::{
    dual_split, exterior_power_split, frobenius_split, hn_of_split, lambda_char0, lambda_strong,
    shift_strong, slope, BundleDescriptor, HnBlock, HnType, SplitBundle, StrongHnData,
};
pub use certificate::{
    build_certificate, cross_check, verify_certificate, CertificateChecks, CoverModel, CrossCheck,
    EffectivityCertificate,
};
pub use cone::{contains, on_boundary, pseff_cone, pullback_class, Cone2D, NsClass, Ray};
pub use document::{parse_input, InputDocument};
pub use error::{Error, Result};
pub use oracle::{
    h0_line_genus0, h0_taut_twist, max_subset_sum, verify_theorem_split, OracleReport,
};
pub use rational::Rational;

pub use num_bigint::BigInt;
