//! JSON shapes. Field order is the serialization order, so goldens are byte-stable.

use a1h::bilinear::GWClass;
use a1h::hurwitz::{Check, Locus, RHReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub hyperbolic: usize,
    pub residual: Vec<String>,
}

impl From<&GWClass> for ClassJson {
    fn from(c: &GWClass) -> Self {
        ClassJson { hyperbolic: c.hyperbolic_count(), residual: c.residual_strings() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub got: i64,
    pub want: i64,
    pub pass: bool,
}

impl From<&Check> for CheckJson {
    fn from(c: &Check) -> Self {
        CheckJson { got: c.got, want: c.want, pass: c.pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterJson {
    pub chart: String,
    /// Cluster polynomial, or `"infinity"`.
    pub pi: String,
    pub multiplicity: usize,
    pub residue_degree: usize,
    pub index: ClassJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhJson {
    pub field: String,
    pub map: String,
    pub degree: usize,
    pub separable: bool,
    pub clusters: Vec<ClusterJson>,
    pub total: ClassJson,
    pub expected: ClassJson,
    pub verdict: bool,
    pub rank_check: CheckJson,
    pub signature_check: Option<CheckJson>,
}

impl From<&RHReport> for RhJson {
    fn from(r: &RHReport) -> Self {
        let clusters = r
            .clusters
            .iter()
            .map(|c| ClusterJson {
                chart: c.chart.to_string(),
                pi: match &c.locus {
                    Locus::Finite(p) => p.to_string(),
                    Locus::AtInfinity => "infinity".into(),
                },
                multiplicity: c.multiplicity,
                residue_degree: c.residue_degree,
                index: ClassJson::from(c.local_index.as_ref().expect("filled by rh_verify")),
            })
            .collect();
        RhJson {
            field: r.field.to_string(),
            map: r.map.to_string(),
            degree: r.degree,
            separable: r.separable,
            clusters,
            total: ClassJson::from(&r.total),
            expected: ClassJson::from(&r.expected),
            verdict: r.verdict,
            rank_check: CheckJson::from(&r.rank_check),
            signature_check: r.signature_check.as_ref().map(CheckJson::from),
        }
    }
}
