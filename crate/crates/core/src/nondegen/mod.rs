//! Generic nondegeneracy of steady states and the verdicts built on it.
//!
//! Writing positive steady states as `w = κ ∘ x^B ∈ ker N` with `w = G u`
//! for a kernel basis `G`, the Jacobian of `f = N(κ ∘ x^B)` becomes
//! `N diag(G u) Bᵀ diag(x⁻¹)`. Its rank is therefore a generic property
//! decided by the symbolic matrix `N diag(G u) Bᵀ`, and for the system
//! restricted to compatibility classes by `[N diag(G u) Bᵀ diag(h); W]`.

mod jacobian;
mod steady;

pub use jacobian::{symbolic_jacobian_F, symbolic_jacobian_f};
pub use rank_test::{generic_rank_test, GenericRankVerdict, RankStatus, VarSpace};
pub use steady::{check_steady_state, evaluate_f, SteadyStateCheck};

use serde::{Deserialize, Serialize};

use crate::config::SamplerConfig;
use crate::cone::{positive_kernel_vector, ConeResult};
use crate::error::{Error, Result};
use crate::netmodel::{build_matrices, NetworkMatrices, ReactionNetwork};
use crate::ratmat::RatMatrix;

pub const SCHEMA_VERSION: u32 = 1;

const F_STREAM: u64 = 1;
const CLASS_STREAM: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkSummary {
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub d: usize,
    pub species: Vec<String>,
    pub reactions: Vec<String>,
}

impl NetworkSummary {
    pub fn of(net: &ReactionNetwork, mats: &NetworkMatrices) -> Self {
        NetworkSummary {
            n: mats.n,
            r: mats.r,
            s: mats.s,
            d: mats.d,
            species: net.species().to_vec(),
            reactions: (0..net.num_reactions()).map(|i| net.render_reaction(i)).collect(),
        }
    }

    /// Summary for raw matrices without names.
    pub fn anonymous(mats: &NetworkMatrices) -> Self {
        NetworkSummary {
            n: mats.n,
            r: mats.r,
            s: mats.s,
            d: mats.d,
            species: (1..=mats.n).map(|i| format!("x{i}")).collect(),
            reactions: (1..=mats.r).map(|i| format!("k{i}")).collect(),
        }
    }
}

/// Dimension of the steady-state variety for almost all rate constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyConclusion {
    /// Nonempty of the expected dimension `n - s`.
    #[serde(rename = "generic_dimension_n_minus_s")]
    GenericDimensionNminusS,
    /// Empty or of dimension larger than `n - s`.
    EmptyOrHigherDimensional,
    NoPositiveSteadyStates,
}

/// Size of the steady-state set within a compatibility class for almost all
/// rate constants and total amounts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassConclusion {
    GenericallyFinite,
    GenericallyEmptyOrInfinite,
    NoPositiveSteadyStates,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusions {
    pub steady_state_variety: VarietyConclusion,
    pub compatibility_classes: ClassConclusion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub network: NetworkSummary,
    pub cone: ConeResult,
    #[serde(rename = "f_test")]
    pub f_verdict: GenericRankVerdict,
    #[serde(rename = "F_test")]
    pub class_verdict: GenericRankVerdict,
    pub conclusions: Conclusions,
    pub notes: Vec<String>,
}

/// Runs the full pipeline on a parsed network.
pub fn analyze(net: &ReactionNetwork, cfg: &SamplerConfig) -> Result<AnalysisReport> {
    let mats = build_matrices(net);
    analyze_matrices(&mats, NetworkSummary::of(net, &mats), cfg)
}

/// Runs the full pipeline on precomputed matrices.
pub fn analyze_matrices(
    mats: &NetworkMatrices,
    network: NetworkSummary,
    cfg: &SamplerConfig,
) -> Result<AnalysisReport> {
    cfg.validate()?;
    let cone = positive_kernel_vector(&mats.n_mat)?;
    let g = mats.n_mat.kernel_basis();
    let k = g.cols();

    let f_matrix = symbolic_jacobian_f(mats, &g);
    let mut f_verdict = generic_rank_test(
        &f_matrix,
        mats.s,
        VarSpace { u: k, h: 0 },
        cfg,
        &mut cfg.rng(F_STREAM),
    )?;
    fill_kernel_witness(&mut f_verdict, &g);

    let class_matrix = symbolic_jacobian_F(mats, &g);
    let mut class_verdict = generic_rank_test(
        &class_matrix,
        mats.n,
        VarSpace { u: k, h: mats.n },
        cfg,
        &mut cfg.rng(CLASS_STREAM),
    )?;
    fill_kernel_witness(&mut class_verdict, &g);

    if class_verdict.is_nondegenerate() && !f_verdict.is_nondegenerate() {
        return Err(Error::Internal(
            "class test nondegenerate while the steady-state test is not".into(),
        ));
    }

    let mut notes = Vec::new();
    let conclusions = if cone.exists() {
        Conclusions {
            steady_state_variety: if f_verdict.is_nondegenerate() {
                VarietyConclusion::GenericDimensionNminusS
            } else {
                VarietyConclusion::EmptyOrHigherDimensional
            },
            compatibility_classes: if class_verdict.is_nondegenerate() {
                ClassConclusion::GenericallyFinite
            } else {
                ClassConclusion::GenericallyEmptyOrInfinite
            },
        }
    } else {
        notes.push(
            "ker(N) has no positive vector, so there are no positive steady states for any rate constants; \
             the rank tests below describe the complex torus only"
                .into(),
        );
        Conclusions {
            steady_state_variety: VarietyConclusion::NoPositiveSteadyStates,
            compatibility_classes: ClassConclusion::NoPositiveSteadyStates,
        }
    };

    if mats.s == 0 {
        notes.push(format!(
            "stoichiometric matrix is zero: the steady-state system is empty and every point is a steady state (dimension n = {})",
            mats.n
        ));
    }
    if cone.exists() {
        let dim = mats.n - mats.s;
        if f_verdict.is_nondegenerate() {
            notes.push(format!(
                "for almost all rate constants the positive steady states form a nonempty set of dimension {dim}, all nondegenerate"
            ));
        } else {
            notes.push(format!(
                "every positive steady state is degenerate; for almost all rate constants the steady-state set is empty or has dimension above {dim}"
            ));
        }
        if class_verdict.is_nondegenerate() {
            notes.push(
                "for almost all rate constants and total amounts each compatibility class meets the steady states in finitely many nondegenerate points"
                    .into(),
            );
        } else if f_verdict.is_nondegenerate() {
            notes.push(
                "steady states are nondegenerate for the steady-state system but degenerate within compatibility classes"
                    .into(),
            );
        }
    }

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        network,
        cone,
        f_verdict,
        class_verdict,
        conclusions,
        notes,
    })
}

fn fill_kernel_witness(v: &mut GenericRankVerdict, g: &RatMatrix) {
    if let Some(u) = &v.witness_u {
        v.witness_w = Some(g.mul_vec(u));
    }
}
