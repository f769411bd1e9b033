//! Input documents: a bare payload or a `{kind, schema_version, payload}`
//! envelope, both JSON.

use ordef_core::deformation::{BranchDatum, CurveQuotientData};
use ordef_core::graph::{GraphOfGroups, GroupLabel};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Algebraic,
    Analytic,
    Consistency,
    Cohomology,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebraic => "algebraic",
            Kind::Analytic => "analytic",
            Kind::Consistency => "consistency",
            Kind::Cohomology => "cohomology",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    kind: Kind,
    schema_version: u64,
    payload: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchInput {
    pub t: u32,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraicInput {
    pub p: u64,
    #[serde(rename = "g_Y", alias = "g_y")]
    pub g_y: u64,
    #[serde(default)]
    pub branch: Vec<BranchInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LabelInput {
    Trivial,
    Cyclic {
        n: u64,
    },
    Dihedral {
        n: u64,
    },
    #[serde(alias = "elem_ab")]
    Elemab {
        t: u32,
    },
    #[serde(alias = "semi_dir")]
    Semidir {
        t: u32,
        n: u64,
    },
    Pgl {
        t: u32,
    },
    Psl {
        t: u32,
    },
    Alt4,
    Sym4,
    Alt5,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyticInput {
    pub p: u64,
    pub vertices: Vec<LabelInput>,
    #[serde(default)]
    pub edges: Vec<(usize, usize, LabelInput)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConsistencyInput {
    pub algebraic: AlgebraicInput,
    pub analytic: AnalyticInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyInput {
    pub p: u64,
    pub t: u32,
    pub n: u64,
}

impl From<LabelInput> for GroupLabel {
    fn from(l: LabelInput) -> Self {
        match l {
            LabelInput::Trivial => GroupLabel::Trivial,
            LabelInput::Cyclic { n } => GroupLabel::Cyclic(n),
            LabelInput::Dihedral { n } => GroupLabel::Dihedral(n),
            LabelInput::Elemab { t } => GroupLabel::ElemAb(t),
            LabelInput::Semidir { t, n } => GroupLabel::SemiDir(t, n),
            LabelInput::Pgl { t } => GroupLabel::ProjGL(t),
            LabelInput::Psl { t } => GroupLabel::ProjSL(t),
            LabelInput::Alt4 => GroupLabel::Alt4,
            LabelInput::Sym4 => GroupLabel::Sym4,
            LabelInput::Alt5 => GroupLabel::Alt5,
        }
    }
}

impl From<GroupLabel> for LabelInput {
    fn from(l: GroupLabel) -> Self {
        match l {
            GroupLabel::Trivial => LabelInput::Trivial,
            GroupLabel::Cyclic(n) => LabelInput::Cyclic { n },
            GroupLabel::Dihedral(n) => LabelInput::Dihedral { n },
            GroupLabel::ElemAb(t) => LabelInput::Elemab { t },
            GroupLabel::SemiDir(t, n) => LabelInput::Semidir { t, n },
            GroupLabel::ProjGL(t) => LabelInput::Pgl { t },
            GroupLabel::ProjSL(t) => LabelInput::Psl { t },
            GroupLabel::Alt4 => LabelInput::Alt4,
            GroupLabel::Sym4 => LabelInput::Sym4,
            GroupLabel::Alt5 => LabelInput::Alt5,
        }
    }
}

impl AlgebraicInput {
    pub fn to_core(&self) -> CurveQuotientData {
        let branch = self.branch.iter().map(|b| BranchDatum::new(b.t, b.n)).collect();
        let data = CurveQuotientData::new(self.p, self.g_y, branch);
        match self.group_order {
            Some(g) => data.with_group_order(g),
            None => data,
        }
    }
}

impl AnalyticInput {
    pub fn to_core(&self) -> GraphOfGroups {
        GraphOfGroups::new(
            self.p,
            self.vertices.iter().map(|&l| l.into()).collect(),
            self.edges.iter().map(|&(a, b, l)| (a, b, l.into())).collect(),
        )
    }

    pub fn from_core(g: &GraphOfGroups) -> Self {
        AnalyticInput {
            p: g.p,
            vertices: g.vertices.iter().map(|&l| l.into()).collect(),
            edges: g.edges.iter().map(|&(a, b, l)| (a, b, l.into())).collect(),
        }
    }
}

/// Parses `text` as a payload of the given kind, unwrapping an envelope when present.
pub fn parse_problem<T: DeserializeOwned>(text: &str, kind: Kind) -> Result<T, CliError> {
    let value: Value = serde_json::from_str(text).map_err(CliError::Parse)?;
    let payload = match &value {
        Value::Object(m) if m.contains_key("payload") || m.contains_key("schema_version") => {
            let file: ProblemFile = serde_json::from_value(value).map_err(schema)?;
            if file.kind != kind {
                return Err(CliError::Schema(format!(
                    "expected a {} problem, found {}",
                    kind.name(),
                    file.kind.name()
                )));
            }
            if file.schema_version != SCHEMA_VERSION {
                return Err(CliError::Schema(format!(
                    "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                    file.schema_version
                )));
            }
            file.payload
        }
        _ => value,
    };
    serde_json::from_value(payload).map_err(schema)
}

fn schema(e: serde_json::Error) -> CliError {
    CliError::Schema(e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_and_bare_payload_agree() {
        let bare = r#"{"p": 5, "g_Y": 2, "branch": []}"#;
        let wrapped = r#"{"kind": "algebraic", "schema_version": 1, "payload": {"p": 5, "g_Y": 2, "branch": []}}"#;
        let a: AlgebraicInput = parse_problem(bare, Kind::Algebraic).unwrap();
        let b: AlgebraicInput = parse_problem(wrapped, Kind::Algebraic).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn labels_parse() {
        let g: AnalyticInput = parse_problem(
            r#"{"p": 5, "vertices": [{"kind": "semidir", "t": 1, "n": 4}, {"kind": "dihedral", "n": 4}],
                "edges": [[0, 1, {"kind": "cyclic", "n": 4}]]}"#,
            Kind::Analytic,
        )
        .unwrap();
        let core = g.to_core();
        assert_eq!(core.vertices, vec![GroupLabel::SemiDir(1, 4), GroupLabel::Dihedral(4)]);
        assert_eq!(AnalyticInput::from_core(&core), g);
    }

    #[test]
    fn schema_errors() {
        let unknown = parse_problem::<AlgebraicInput>(r#"{"p": 5, "g_Y": 0, "extra": 1}"#, Kind::Algebraic);
        assert_eq!(unknown.unwrap_err().exit_code(), 2);
        let wrong_kind = parse_problem::<AlgebraicInput>(
            r#"{"kind": "analytic", "schema_version": 1, "payload": {}}"#,
            Kind::Algebraic,
        );
        assert!(matches!(wrong_kind, Err(CliError::Schema(_))));
        let version = parse_problem::<AlgebraicInput>(
            r#"{"kind": "algebraic", "schema_version": 7, "payload": {"p": 5, "g_Y": 0}}"#,
            Kind::Algebraic,
        );
        assert!(matches!(version, Err(CliError::Schema(_))));
        assert!(matches!(parse_problem::<AlgebraicInput>("{", Kind::Algebraic), Err(CliError::Parse(_))));
    }
}
