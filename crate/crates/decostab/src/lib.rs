//! Exact-arithmetic semistability calculator for decorated generalized
//! parabolic bundles on nodal curves.
//!
//! A nodal curve is traded for its normalization carrying a generalized
//! parabolic structure; principal Higgs data is traded for a tensor
//! decoration `φ: (E^{⊗a})^{⊕b} ⊗ (det E)^{⊗-c} → L`. This crate evaluates
//! every numerical (semi)stability criterion attached to such objects over
//! finite subobject catalogs:
//!
//! * [`stability`] — parabolic degrees, γ weight vectors, tensor
//!   μ-functionals, the P-functional, δ- and (δ1, δ2)-semistability, the
//!   slope-style fr-semistability, Segre combination of decorations, and the
//!   boundedness/threshold constants;
//! * [`jh`] — Jordan-Hölder filtrations, graded objects and S-equivalence
//!   for fr-semistable models;
//! * [`gitpoint`] — Hilbert polynomials, linearizations and the
//!   Hilbert-Mumford point-stability criterion for the parameter-scheme
//!   model, with the reduction back to bundle semistability;
//! * [`enumerate`] — exhaustive desk-scale instance generators and the
//!   brute-force verification suites for the structural theorems;
//! * [`document`] — the JSON document format consumed by the CLI.
//!
//! All arithmetic is exact rational ([`rational::Q`]); nothing is rounded.

pub mod document;
pub mod enumerate;
pub mod error;
pub mod gitpoint;
pub mod jh;
pub mod model;
pub mod rational;
pub mod stability;

pub use error::Error;
pub use model::{
    BundleData, BundleModel, DecorationType, ProfileData, SubIdx, SubobjectDescriptor,
    WeightedFiltration,
};
pub use rational::{format_q, parse_q, Q};
pub use stability::{Verdict, WeightGrid};
