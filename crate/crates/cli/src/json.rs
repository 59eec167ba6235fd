//! Machine-readable reports. Rationals and functions are always strings.

use serde::Serialize;

use grassmin_core::algebra::rational_to_string;
use grassmin_core::catalog::{CatalogCase, Mismatch, VerificationOutcome};
use grassmin_core::invariants::Witness;
use grassmin_core::{GeometryReport, Invariant, WeightedSpace};

#[derive(Clone, Debug, Serialize)]
pub struct InvariantJson {
    pub constant: bool,
    pub value: String,
}

impl From<&Invariant> for InvariantJson {
    fn from(i: &Invariant) -> Self {
        Self {
            constant: i.constant,
            value: i.value.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RanksJson {
    pub dprime: usize,
    pub dsecond: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagsJson {
    pub harmonic: bool,
    pub eq31: bool,
    pub eq32: bool,
    pub kahler: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub residual: &'static str,
    pub entry: Option<[usize; 2]>,
    pub point: String,
    pub value: String,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            residual: w.residual,
            entry: w.entry.map(|(r, c)| [r, c]),
            point: w.point.to_string(),
            value: w.value.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MismatchJson {
    pub field: String,
    pub expected: String,
    pub actual: String,
}

impl From<&Mismatch> for MismatchJson {
    fn from(m: &Mismatch) -> Self {
        Self {
            field: m.field.clone(),
            expected: m.expected.clone(),
            actual: m.actual.clone(),
        }
    }
}

/// The geometric part shared by case and script reports; all `None` when no report exists.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GeometryJson {
    pub weights: Option<Vec<String>>,
    #[serde(rename = "K")]
    pub k: Option<InvariantJson>,
    #[serde(rename = "B2")]
    pub b2: Option<InvariantJson>,
    pub lambda2: Option<String>,
    pub ranks: Option<RanksJson>,
    pub flags: Option<FlagsJson>,
    pub isotropy: Option<String>,
    pub witnesses: Vec<WitnessJson>,
}

impl GeometryJson {
    pub fn new(space: Option<&WeightedSpace>, rep: Option<&GeometryReport>) -> Self {
        let mut g = GeometryJson {
            weights: space.map(|s| s.weights().iter().map(rational_to_string).collect()),
            ..Default::default()
        };
        if let Some(r) = rep {
            g.k = Some((&r.k).into());
            g.b2 = Some((&r.b2).into());
            g.lambda2 = Some(r.lambda2.to_string());
            g.ranks = Some(RanksJson {
                dprime: r.ranks.0,
                dsecond: r.ranks.1,
            });
            g.flags = Some(FlagsJson {
                harmonic: r.harmonic_residual_zero,
                eq31: r.eq31_first_zero && r.eq31_second_zero,
                eq32: r.eq32_zero,
                kahler: r.kahler.flag.as_str(),
            });
            g.isotropy = Some(r.isotropy.order.label());
            g.witnesses = r.witnesses.iter().map(Into::into).collect();
        }
        g
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseJson {
    pub id: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(flatten)]
    pub geometry: GeometryJson,
    pub pass: bool,
    pub mismatches: Vec<MismatchJson>,
    pub citation: &'static str,
}

impl CaseJson {
    pub fn new(c: &CatalogCase, out: &VerificationOutcome) -> Self {
        Self {
            id: out.id.clone(),
            n: c.n,
            geometry: GeometryJson::new(out.space.as_ref(), out.report.as_ref()),
            pass: out.pass,
            mismatches: out.mismatches.iter().map(Into::into).collect(),
            citation: c.citation,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryJson {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyJson {
    pub cases: Vec<CaseJson>,
    pub summary: SummaryJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationJson {
    pub key: &'static str,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeJson {
    pub name: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(flatten)]
    pub geometry: GeometryJson,
    pub l_in: String,
    pub l_out: String,
    pub eq32_residual: String,
    pub expectations: Vec<ExpectationJson>,
    pub pass: bool,
}

/// Pretty-printed with a trailing newline.
pub fn to_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report values always serialize");
    s.push('\n');
    s
}
