//! Exact computation with finitely presented groups: words and
//! presentations, integer matrix normal forms, first and second homology
//! certificates, coset enumeration and low-index subgroups, truncated
//! finite-quotient spectra, and fibre-product certification.

pub mod enumerator;
pub mod presentations;
pub mod grothendieck;
pub mod homology;
pub mod recipes;
pub mod spectrum;
pub mod zlinalg;
