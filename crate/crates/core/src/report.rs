//! Verification reports: JSON schema (versioned) and human-readable text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize, Serializer};

use crate::fan::FanStats;
use crate::orlik_solomon::DegreeFragment;

pub const SCHEMA_VERSION: u32 = 1;

/// Check identifiers, in report order. Every report lists each exactly once.
pub const BATTERY: &[&str] = &[
    "theorem.affine",
    "theorem.projective",
    "theorem.perfect_pairing",
    "theorem.affine_oracle",
    "lemma.flag_reduction",
    "lemma.flag_expansion",
    "lemma.flat_partition",
    "lemma.leibniz_generators",
    "lemma.rank_exact_generators",
    "lemma.top_degree",
    "lemma.intersection_over_flats",
    "lemma.projective_generation",
    "lemma.ideal_property",
    "lemma.boundary_complex",
    "lemma.adjointness",
    "lemma.balanced",
    "lemma.leibniz_rule_random",
    "lemma.double_annihilator_random",
];

/// Integers as JSON numbers when they fit in `i64`, as decimal strings otherwise.
pub fn serialize_ints<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(int_value))
}

pub fn serialize_matrix<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        rows.iter()
            .map(|r| r.iter().map(int_value).collect::<Vec<_>>()),
    )
}

fn int_value(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => v.into(),
        Err(_) => x.to_string().into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Ranks of the two sides of a comparison in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeComparison {
    pub degree: usize,
    pub left_rank: usize,
    pub right_rank: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckResult {
    pub check_id: String,
    pub status: Status,
    pub details: String,
    #[serde(default)]
    pub degrees: Vec<DegreeComparison>,
    /// Element separating the two sides, in multivector text format.
    #[serde(default)]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn new(check_id: &str) -> Self {
        CheckResult {
            check_id: check_id.to_string(),
            status: Status::Pass,
            details: String::new(),
            degrees: Vec::new(),
            witness: None,
        }
    }

    pub fn skipped(check_id: &str, reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skipped,
            details: reason.into(),
            ..Self::new(check_id)
        }
    }

    pub fn fail(&mut self, details: impl Into<String>, witness: Option<String>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.details = details.into();
            self.witness = witness;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSummary {
    pub affine: FanStatsRecord,
    pub bergman: FanStatsRecord,
}

/// JSON form of [`FanStats`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanStatsRecord {
    pub ambient_rank: usize,
    pub kind: String,
    pub rays: usize,
    pub connected_rays: Option<usize>,
    pub cones_by_dimension: Vec<usize>,
    pub distinct_cone_multivectors: Vec<usize>,
}

impl From<FanStats> for FanStatsRecord {
    fn from(s: FanStats) -> Self {
        FanStatsRecord {
            ambient_rank: s.ambient_rank,
            kind: serde_json::to_value(s.kind)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            rays: s.rays,
            connected_rays: s.connected_rays,
            cones_by_dimension: s.cones_by_dimension,
            distinct_cone_multivectors: s.distinct_cone_multivectors,
        }
    }
}

/// Per-degree ranks of tropical homology and the Orlik-Solomon algebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRecord {
    pub degree: usize,
    pub os_rank: usize,
    pub os0_rank: usize,
    pub ideal_rank: usize,
    pub torsion: Vec<serde_json::Value>,
    pub fk_affine_rank: usize,
    pub fk_projective_rank: usize,
}

impl DegreeRecord {
    pub fn new(
        fragment: &DegreeFragment,
        fk_affine_rank: usize,
        fk_projective_rank: usize,
    ) -> Self {
        DegreeRecord {
            degree: fragment.degree,
            os_rank: fragment.os_rank,
            os0_rank: fragment.os0_rank,
            ideal_rank: fragment.ideal_rank,
            torsion: fragment.torsion.iter().map(int_value).collect(),
            fk_affine_rank,
            fk_projective_rank,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub artifact_version: String,
    pub matroid_name: String,
    pub source: String,
    pub ground_size: usize,
    pub rank: usize,
    pub validated: bool,
    pub fans: FanSummary,
    pub degrees: Vec<DegreeRecord>,
    pub checks: Vec<CheckResult>,
    /// Wall time per check in milliseconds; the only nondeterministic field.
    pub timing_ms: BTreeMap<String, f64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "matroid {} ({}, ground size {}, rank {})",
            self.matroid_name, self.source, self.ground_size, self.rank
        );
        let _ = writeln!(
            out,
            "  Bergman fan: {} rays ({} from connected flats), cones by dimension {:?}, distinct cone multivectors {:?}",
            self.fans.bergman.rays,
            self.fans.bergman.connected_rays.unwrap_or(0),
            self.fans.bergman.cones_by_dimension,
            self.fans.bergman.distinct_cone_multivectors
        );
        let _ = writeln!(out, "  degree  F_k(Σ)  OS ideal  OS^k  F_k(Σ₀)  OS₀^k");
        for d in &self.degrees {
            let _ = writeln!(
                out,
                "  {:>6}  {:>6}  {:>8}  {:>4}  {:>7}  {:>5}",
                d.degree,
                d.fk_affine_rank,
                d.ideal_rank,
                d.os_rank,
                d.fk_projective_rank,
                d.os0_rank
            );
        }
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            let _ = writeln!(out, "  [{status}] {:<32} {}", c.check_id, c.details);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "         witness: {w}");
            }
        }
        let _ = writeln!(
            out,
            "  result: {}",
            if self.passed() {
                "all checks passed"
            } else {
                "FAILED"
            }
        );
        out
    }
}

/// Parses a JSON report and checks it against the schema: known fields only, the current
/// schema version, and every battery check present exactly once, in order.
pub fn validate_report_json(json: &str) -> Result<VerificationReport, String> {
    let report: VerificationReport =
        serde_json::from_str(json).map_err(|e| format!("schema mismatch: {e}"))?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema version {}",
            report.schema_version
        ));
    }
    let ids: Vec<&str> = report.checks.iter().map(|c| c.check_id.as_str()).collect();
    if ids != BATTERY {
        return Err(format!("check list {ids:?} does not match the battery"));
    }
    for c in &report.checks {
        if c.status == Status::Fail && c.witness.is_none() && c.degrees.iter().all(|d| d.equal) {
            return Err(format!("failed check {} carries no witness", c.check_id));
        }
    }
    for d in &report.degrees {
        if d.torsion.iter().any(|t| !(t.is_i64() || t.is_string())) {
            return Err(format!(
                "degree {}: torsion entries must be integers",
                d.degree
            ));
        }
    }
    Ok(report)
}
