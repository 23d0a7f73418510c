//! Exact decision procedures for the generic dimension of steady-state
//! varieties of mass-action reaction networks and for finiteness of steady
//! states within stoichiometric compatibility classes.
//!
//! The pipeline is: parse a network ([`netmodel`]), build its matrices,
//! test whether `ker N` meets the positive orthant ([`cone`]), then decide
//! generic nondegeneracy by randomized and symbolic rank tests
//! ([`nondegen`]). All arithmetic is over the rationals.

pub mod cone;
pub mod config;
pub mod error;
pub mod mpoly;
pub mod netmodel;
pub mod nondegen;
pub mod rational;
pub mod ratmat;
pub mod synth;

pub use config::SamplerConfig;
pub use error::{Error, ParseError, Result};
pub use netmodel::{build_matrices, parse_network, NetworkMatrices, ReactionNetwork};
pub use nondegen::{analyze, analyze_matrices, AnalysisReport};
pub use rational::Rational;
pub use ratmat::RatMatrix;
