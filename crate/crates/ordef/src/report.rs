//! Report documents for the single-problem commands.
//!
//! Every document has the shape `{kind, input, results, warnings}` with an
//! extra `passed` flag for checks. Object keys are emitted in sorted order, so
//! identical input gives byte-identical output.

use ordef_core::cohomology::{d0_cocycle, h1_closed_form, h1_local, LocalActionSpec, MElement};
use ordef_core::deformation::{
    classify_point, global_hull_dim, hurwitz_genus, is_obstructed_point, DimensionReport, PointClass,
};
use ordef_core::graph::{analytic_dims, consistency_check, group_order, AnalyticReport, GroupLabel};
use ordef_core::{ExtField, FieldElement};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::problem::{AlgebraicInput, AnalyticInput, CohomologyInput, ConsistencyInput, LabelInput};

fn document(kind: &str, input: Value, results: Value, warnings: Vec<String>) -> Value {
    json!({ "kind": kind, "input": input, "results": results, "warnings": warnings })
}

fn echo<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("input types serialize infallibly")
}

fn algebraic_results(input: &AlgebraicInput) -> Result<(Value, DimensionReport), CliError> {
    let data = input.to_core();
    let rep = global_hull_dim(&data)?;
    let genus = match data.group_order {
        Some(_) => Some(hurwitz_genus(&data)?),
        None => None,
    };
    let points: Vec<Value> = data
        .branch
        .iter()
        .zip(&rep.local_dims)
        .map(|(d, &local)| {
            let class = match classify_point(data.p, d) {
                PointClass::Tame => "tame",
                PointClass::Wild => "wild",
            };
            json!({
                "t": d.t,
                "n": d.n,
                "class": class,
                "local_dim": local,
                "obstructed": is_obstructed_point(data.p, d),
            })
        })
        .collect();
    let results = json!({
        "hull_dim": rep.hull_dim,
        "tangent_dim": rep.tangent_dim,
        "delta": rep.delta,
        "h0_correction": rep.h0_correction,
        "free_parameters": rep.free_parameters,
        "obstructed_points": rep.obstructed_points,
        "exceptional_case": rep.exceptional_case.map(|c| c.number()),
        "points": points,
        "genus_x": genus,
    });
    Ok((results, rep))
}

pub fn algebraic(input: &AlgebraicInput) -> Result<Value, CliError> {
    let (results, rep) = algebraic_results(input)?;
    Ok(document("algebraic", echo(input), results, rep.warnings))
}

fn label_entry(label: GroupLabel, p: u64, (h, t): (i64, i64)) -> Value {
    json!({
        "label": echo(&LabelInput::from(label)),
        "name": label.to_string(),
        "order": group_order(&label, p).ok(),
        "h": h,
        "t": t,
    })
}

fn analytic_results(input: &AnalyticInput) -> Result<(Value, AnalyticReport), CliError> {
    let g = input.to_core();
    let rep = analytic_dims(&g)?;
    let vertices: Vec<Value> =
        g.vertices.iter().zip(&rep.vertex_values).map(|(&l, &v)| label_entry(l, g.p, v)).collect();
    let edges: Vec<Value> = g
        .edges
        .iter()
        .zip(&rep.edge_values)
        .map(|(&(a, b, l), &v)| {
            let mut e = label_entry(l, g.p, v);
            e["ends"] = json!([a, b]);
            e
        })
        .collect();
    let results = json!({
        "cyclomatic": rep.cyclomatic,
        "hull_dim": rep.hull_dim,
        "tangent_dim": rep.tangent_dim,
        "vertices": vertices,
        "edges": edges,
    });
    Ok((results, rep))
}

pub fn analytic(input: &AnalyticInput) -> Result<Value, CliError> {
    let (results, rep) = analytic_results(input)?;
    Ok(document("analytic", echo(input), results, rep.warnings))
}

/// The document and whether the two sides agree.
pub fn consistency(input: &ConsistencyInput) -> Result<(Value, bool), CliError> {
    let rep = consistency_check(&input.algebraic.to_core(), &input.analytic.to_core())?;
    let (alg, alg_rep) = algebraic_results(&input.algebraic)?;
    let (ana, ana_rep) = analytic_results(&input.analytic)?;
    let results = json!({
        "algebraic": alg,
        "analytic": ana,
        "hull_agrees": rep.algebraic_hull == rep.analytic_hull,
        "tangent_agrees": rep.algebraic_tangent == rep.analytic_tangent,
    });
    let warnings = alg_rep
        .warnings
        .into_iter()
        .map(|w| format!("algebraic: {w}"))
        .chain(ana_rep.warnings.into_iter().map(|w| format!("analytic: {w}")))
        .collect();
    let mut doc = document("consistency", echo(input), results, warnings);
    doc["passed"] = json!(rep.consistent);
    Ok((doc, rep.consistent))
}

pub fn field_element(f: &ExtField, a: FieldElement) -> Value {
    json!(f.coeffs(a))
}

fn m_element(f: &ExtField, m: &MElement) -> Value {
    Value::Array(m.as_array().iter().map(|&a| field_element(f, a)).collect())
}

/// The document and whether brute force agrees with the closed form.
pub fn cohomology(input: &CohomologyInput) -> Result<(Value, bool), CliError> {
    let spec = LocalActionSpec::new(input.p, input.t, input.n)?;
    let f = spec.field();
    let rep = h1_local(&spec)?;
    let closed = h1_closed_form(spec.p(), input.t, input.n)?;
    let d0 = d0_cocycle(&spec).ok().map(|c| c.generator_values().iter().map(|m| m_element(f, m)).collect::<Vec<_>>());
    let basis: Vec<Value> = spec.v_basis().iter().map(|&u| field_element(f, u)).collect();
    let results = json!({
        "field": { "p": f.p(), "degree": f.degree(), "modulus": f.modulus() },
        "v_basis": basis,
        "zeta": field_element(f, spec.zeta()),
        "dim_z1": rep.dim_z1,
        "dim_b1": rep.dim_b1,
        "dim_h1": rep.dim_h1,
        "dim_h1_normal": rep.dim_h1_normal,
        "dim_h1_invariants": rep.dim_h1_invariants,
        "closed_form": closed,
        "d0_nontrivial": rep.d0_nontrivial,
        "d0_on_basis": d0,
    });
    let passed = rep.dim_h1 == closed;
    let mut doc = document("cohomology", echo(input), results, Vec::new());
    doc["passed"] = json!(passed);
    Ok((doc, passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::BranchInput;

    #[test]
    fn drinfeld_document() {
        let input = AlgebraicInput {
            p: 5,
            g_y: 0,
            branch: vec![BranchInput { t: 0, n: 6 }, BranchInput { t: 2, n: 4 }],
            group_order: None,
        };
        let doc = algebraic(&input).unwrap();
        assert_eq!(doc["results"]["hull_dim"], json!(1));
        assert_eq!(doc["results"]["points"][1]["class"], json!("wild"));
        assert_eq!(doc["input"]["g_Y"], json!(0));
    }

    #[test]
    fn cohomology_document() {
        let (doc, ok) = cohomology(&CohomologyInput { p: 5, t: 2, n: 1 }).unwrap();
        assert!(ok);
        assert_eq!(doc["results"]["dim_h1"], json!(2));
        assert_eq!(doc["results"]["field"]["degree"], json!(2));
    }
}
