//! Named verification suites producing structured reports.

mod classical;
mod degeneration;
mod equivalences;
mod flatness;
mod g2;
mod genfun;
mod kernel;
mod limit;
mod reduced;

pub use classical::{suite_classical_realization, suite_classical_realization_at, truncation_for};
pub use degeneration::{suite_degeneration, DegenerationBounds};
pub use equivalences::suite_equivalences;
pub use flatness::{default_relation_set, flatness_certificate, FlatnessConfig};
pub use g2::{graded_top, s_chain, serre_word, suite_g2, ChainStep, G2Config};
pub use genfun::suite_genfun_match;
pub use kernel::{suite_jacobi, suite_table1, table1_expected};
pub use reduced::{membership_with_escalation, suite_reduced_presentation, Membership, MembershipOracle, ReducedConfig};
pub use limit::{classical_counterpart, compare_with_classical, suite_yangian_classical_limit, suite_yangian_classical_limit_at};

use crate::grobner::CellRecord;
use crate::rootdata::CartanData;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub key: String,
    pub status: Status,
    /// "0" when the residual vanishes, else the rendered element or a note.
    pub residual: String,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub params: BTreeMap<String, Value>,
    pub records: Vec<InstanceRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellRecord>,
    pub summary: Summary,
    pub status: Status,
    #[serde(skip)]
    pub wall_time_ms: u128,
}

impl VerificationReport {
    pub fn new(suite: &str, cartan_type: &str) -> Self {
        Self {
            suite: suite.into(),
            cartan_type: cartan_type.into(),
            params: BTreeMap::new(),
            records: Vec::new(),
            cells: Vec::new(),
            summary: Summary::default(),
            status: Status::Pass,
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, k: &str, v: impl Serialize) -> Self {
        self.params.insert(k.into(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn push(&mut self, key: impl Into<String>, status: Status, residual: impl Into<String>) {
        self.records.push(InstanceRecord { key: key.into(), status, residual: residual.into() });
    }

    /// Record a zero-residual check: the rendered residual is kept when nonzero.
    pub fn push_residual(&mut self, key: impl Into<String>, residual: String, is_zero: bool) {
        let r = if is_zero { "0".to_string() } else { residual };
        self.push(key, Status::of(is_zero), r);
    }

    /// Sort records by key, count statuses, set the overall status.
    pub fn finish(mut self, started: Instant) -> Self {
        self.records.sort_by(|a, b| a.key.cmp(&b.key));
        let mut s = Summary::default();
        let all = self.records.iter().map(|r| r.status).chain(self.cells.iter().map(|c| match c.verdict {
            crate::grobner::CellVerdict::Pass => Status::Pass,
            crate::grobner::CellVerdict::Fail => Status::Fail,
            crate::grobner::CellVerdict::Inconclusive => Status::Inconclusive,
        }));
        for st in all {
            match st {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Inconclusive => s.inconclusive += 1,
            }
        }
        self.status = if s.fail > 0 {
            Status::Fail
        } else if s.inconclusive > 0 {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        self.summary = s;
        self.wall_time_ms = started.elapsed().as_millis();
        self
    }

    /// Human-readable table, one line per record or cell.
    pub fn table(&self) -> String {
        let mut out = format!(
            "== {} [{}] {:?}  pass={} fail={} inconclusive={}\n",
            self.suite, self.cartan_type, self.status, self.summary.pass, self.summary.fail, self.summary.inconclusive
        );
        for r in &self.records {
            let res = if r.residual.chars().count() > 80 {
                format!("{}...", r.residual.chars().take(80).collect::<String>())
            } else {
                r.residual.clone()
            };
            out.push_str(&format!("  {:<13} {:<48} {}\n", format!("{:?}", r.status), r.key, res));
        }
        for c in &self.cells {
            out.push_str(&format!(
                "  {:<13} n={} L={} S={} words={} rank={} normal={} pbw={}\n",
                format!("{:?}", c.verdict),
                c.n,
                c.l,
                c.s,
                c.words,
                c.rank,
                c.normal,
                c.pbw
            ));
        }
        out
    }
}

/// Worst status of a collection (Fail > Inconclusive > Pass).
pub fn aggregate(statuses: impl IntoIterator<Item = Status>) -> Status {
    statuses.into_iter().max().unwrap_or(Status::Pass)
}

/// Stable rendering of an index record.
pub(crate) fn key(parts: &[(&str, String)]) -> String {
    parts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Suite names accepted by `run_suite`.
pub const SUITES: &[&str] =
    &["jacobi", "table1", "classical", "limit", "equivalences", "genfun", "degeneration", "reduced", "g2", "flatness"];

/// Optional overrides shared by all suites; unset fields take per-suite
/// defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    /// index bound (shift bound |k| for degeneration)
    pub k: Option<u32>,
    /// truncation degree of the current algebra
    pub d: Option<u32>,
    /// loop-algebra window
    pub m: Option<i32>,
    /// degree bound (r bound for degeneration)
    pub n: Option<u32>,
    /// length bound
    pub l: Option<usize>,
    /// slack
    pub s: Option<usize>,
    /// generating-function window
    pub window: Option<u32>,
}

fn has_triple_edge(c: &CartanData) -> bool {
    let n = c.rank();
    (0..n).any(|i| (0..n).any(|j| c.cij(i, j) == -3))
}

/// Whether a suite has something to check for this type: the G2 suite needs
/// a c_ij = -3 pair, the reduced one needs none.
pub fn applicable(suite: &str, cartan: &CartanData) -> bool {
    match suite {
        "g2" => has_triple_edge(cartan),
        "reduced" => cartan.rank() > 1 && !has_triple_edge(cartan),
        _ => true,
    }
}

/// Default flatness window per type.
pub fn default_flatness_window(label: &str) -> (u32, usize) {
    match label {
        "A1" => (3, 3),
        "B2" | "C2" => (2, 4),
        l if l.starts_with("G2") => (2, 5),
        _ => (2, 3),
    }
}

pub fn run_suite(suite: &str, cartan: &CartanData, p: &SuiteParams) -> Result<VerificationReport, String> {
    let label = cartan.label.as_str();
    let default_k = if has_triple_edge(cartan) { 1 } else { 2 };
    Ok(match suite {
        "jacobi" => suite_jacobi(label),
        "table1" => suite_table1(label),
        "classical" => {
            let k = p.k.unwrap_or(default_k);
            suite_classical_realization_at(cartan, k, p.d.unwrap_or_else(|| truncation_for(cartan, k)))
        }
        "limit" => {
            let k = p.k.unwrap_or(default_k);
            suite_yangian_classical_limit_at(cartan, k, p.d.unwrap_or_else(|| truncation_for(cartan, k)))
        }
        "equivalences" => suite_equivalences(cartan, p.k.unwrap_or(3)),
        "genfun" => suite_genfun_match(cartan, p.window.unwrap_or(3)),
        "degeneration" => {
            let d = DegenerationBounds::default();
            suite_degeneration(
                cartan,
                DegenerationBounds {
                    r_max: p.n.unwrap_or(d.r_max),
                    k_max: p.k.map_or(d.k_max, |k| k as i32),
                    loop_bound: p.m,
                },
            )
        }
        "reduced" => {
            let d = ReducedConfig::default();
            suite_reduced_presentation(
                cartan,
                ReducedConfig { index_bound: p.k.unwrap_or(d.index_bound), slack: p.s.unwrap_or(d.slack), ..d },
            )
        }
        "flatness" => {
            let (n, l) = default_flatness_window(label);
            let cfg = FlatnessConfig { n_max: p.n.unwrap_or(n), l_max: p.l.unwrap_or(l), slack: p.s.unwrap_or(2), slack_cap: 4 };
            flatness_certificate(cartan, default_relation_set(cartan), cfg)
        }
        "g2" => {
            let d = G2Config::default();
            let (n, l) = default_flatness_window(label);
            let flatness =
                FlatnessConfig { n_max: p.n.unwrap_or(n), l_max: p.l.unwrap_or(l), slack: p.s.unwrap_or(2), slack_cap: 4 };
            suite_g2(cartan, G2Config { k: p.k.unwrap_or(d.k), flatness, ..d })
        }
        other => return Err(format!("unknown suite '{other}'")),
    })
}
