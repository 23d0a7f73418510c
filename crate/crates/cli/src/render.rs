use std::fmt::Write;

use serde_json::{json, Value};
use steadydim::nondegen::{
    AnalysisReport, ClassConclusion, GenericRankVerdict, RankStatus, SteadyStateCheck, VarietyConclusion,
};
use steadydim::rational::format_vector;
use steadydim::{NetworkMatrices, RatMatrix, Rational, ReactionNetwork};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn matrix_value(m: &RatMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| json!(strings(m.row(i)))).collect())
}

fn write_matrix(out: &mut String, name: &str, m: &RatMatrix) {
    let (rows, cols) = m.shape();
    writeln!(out, "{name} ({rows}x{cols}):").unwrap();
    if rows > 0 {
        writeln!(out, "{m}").unwrap();
    }
}

fn variety_text(c: VarietyConclusion, dim: usize) -> String {
    match c {
        VarietyConclusion::GenericDimensionNminusS => format!("generic dimension n-s = {dim}"),
        VarietyConclusion::EmptyOrHigherDimensional => {
            "empty or higher-dimensional for almost all rate constants".into()
        }
        VarietyConclusion::NoPositiveSteadyStates => "no positive steady states".into(),
    }
}

fn class_text(c: ClassConclusion) -> &'static str {
    match c {
        ClassConclusion::GenericallyFinite => "generically finite",
        ClassConclusion::GenericallyEmptyOrInfinite => "generically empty or infinite",
        ClassConclusion::NoPositiveSteadyStates => "no positive steady states",
    }
}

fn write_verdict(out: &mut String, name: &str, v: &GenericRankVerdict) {
    let status = match v.status {
        RankStatus::NondegenerateExists => "nondegenerate exists",
        RankStatus::AllDegenerate => "all degenerate",
    };
    writeln!(
        out,
        "{name}: {status} (target rank {}, samples tried {})",
        v.target_rank, v.samples_tried
    )
    .unwrap();
    for (label, vector) in [("witness_u", &v.witness_u), ("witness_h", &v.witness_h), ("witness_w", &v.witness_w)] {
        if let Some(vector) = vector {
            writeln!(out, "  {label}: {}", format_vector(vector)).unwrap();
        }
    }
    for line in v.certificate.iter().flatten() {
        writeln!(out, "  certificate: {line}").unwrap();
    }
}

pub fn analysis_text(rep: &AnalysisReport) -> String {
    let net = &rep.network;
    let mut out = String::new();
    writeln!(out, "network: n = {}, r = {}, s = {}, d = {}", net.n, net.r, net.s, net.d).unwrap();
    writeln!(out, "species: {}", net.species.join(", ")).unwrap();
    for reaction in &net.reactions {
        writeln!(out, "  {reaction}").unwrap();
    }
    match &rep.cone.witness {
        Some(w) => writeln!(out, "cone: positive kernel vector {}", format_vector(w)).unwrap(),
        None => writeln!(out, "cone: empty").unwrap(),
    }
    write_verdict(&mut out, "f_test", &rep.f_verdict);
    write_verdict(&mut out, "F_test", &rep.class_verdict);
    writeln!(
        out,
        "conclusion_f: {}",
        variety_text(rep.conclusions.steady_state_variety, net.n - net.s)
    )
    .unwrap();
    writeln!(out, "conclusion_F: {}", class_text(rep.conclusions.compatibility_classes)).unwrap();
    for note in &rep.notes {
        writeln!(out, "note: {note}").unwrap();
    }
    out
}

pub fn matrices_text(net: &ReactionNetwork, mats: &NetworkMatrices) -> String {
    let mut out = String::new();
    writeln!(out, "species: {}", net.species().join(", ")).unwrap();
    writeln!(out, "reactions:").unwrap();
    for i in 0..net.num_reactions() {
        writeln!(out, "  {}", net.render_reaction(i)).unwrap();
    }
    writeln!(out, "n = {}, r = {}, s = {}, d = {}", mats.n, mats.r, mats.s, mats.d).unwrap();
    if let Some(gamma) = &mats.gamma {
        write_matrix(&mut out, "Gamma", gamma);
    }
    write_matrix(&mut out, "B", &mats.b);
    write_matrix(&mut out, "N", &mats.n_mat);
    write_matrix(&mut out, "W", &mats.w_mat);
    out
}

pub fn matrices_json(net: &ReactionNetwork, mats: &NetworkMatrices) -> Value {
    json!({
        "species": net.species(),
        "reactions": (0..net.num_reactions()).map(|i| net.render_reaction(i)).collect::<Vec<_>>(),
        "n": mats.n,
        "r": mats.r,
        "s": mats.s,
        "d": mats.d,
        "gamma": mats.gamma.as_ref().map(matrix_value),
        "B": matrix_value(&mats.b),
        "N": matrix_value(&mats.n_mat),
        "W": matrix_value(&mats.w_mat),
    })
}

pub fn check_text(c: &SteadyStateCheck) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "steady state: {}; degenerate: {}",
        yes_no(c.residual_zero),
        yes_no(c.degenerate)
    )
    .unwrap();
    writeln!(out, "residual: {}", format_vector(&c.residual)).unwrap();
    writeln!(out, "stacked rank: {}", c.stacked_rank).unwrap();
    write_matrix(&mut out, "Jacobian", &c.jacobian);
    if !c.residual_zero {
        writeln!(out, "note: x is not a steady state; degeneracy is reported for the Jacobian only").unwrap();
    }
    out
}

pub fn check_json(c: &SteadyStateCheck) -> Value {
    json!({
        "kappa": strings(&c.kappa),
        "x": strings(&c.x),
        "residual": strings(&c.residual),
        "residual_zero": c.residual_zero,
        "jacobian": matrix_value(&c.jacobian),
        "stacked_rank": c.stacked_rank,
        "degenerate": c.degenerate,
    })
}
