//! The report file format. `schema/report.schema.json` describes it.

use hgx_core::report::{CheckEntry, Report, Status, Witness};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub name: String,
    pub status: String,
    pub config: serde_json::Map<String, serde_json::Value>,
    pub checks: Vec<CheckJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CheckJson {
    pub name: String,
    pub status: String,
    pub bound: Option<u32>,
    pub cases: usize,
    pub witness: Option<WitnessJson>,
    pub note: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub input: String,
    pub residue: String,
}

impl From<&Report> for ReportJson {
    fn from(r: &Report) -> Self {
        ReportJson {
            name: r.name.clone(),
            status: r.status().as_str().into(),
            config: r.config.iter().map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone()))).collect(),
            checks: r
                .entries
                .iter()
                .map(|e| CheckJson {
                    name: e.name.clone(),
                    status: e.status.as_str().into(),
                    bound: e.bound,
                    cases: e.cases,
                    witness: e.witness.as_ref().map(|w| WitnessJson { input: w.input.clone(), residue: w.residue.clone() }),
                    note: e.note.clone(),
                })
                .collect(),
            timing_ms: r.timing_ms,
        }
    }
}

impl TryFrom<ReportJson> for Report {
    type Error = String;

    fn try_from(j: ReportJson) -> Result<Self, String> {
        let status = |s: &str| Status::parse(s).ok_or_else(|| format!("unknown status `{s}`"));
        let mut entries = Vec::new();
        for c in j.checks {
            let st = status(&c.status)?;
            if st == Status::Fail && c.witness.as_ref().is_none_or(|w| w.input.is_empty() && w.residue.is_empty()) {
                return Err(format!("failed check `{}` has no witness", c.name));
            }
            entries.push(CheckEntry {
                name: c.name,
                status: st,
                bound: c.bound,
                cases: c.cases,
                witness: c.witness.map(|w| Witness { input: w.input, residue: w.residue }),
                note: c.note,
            });
        }
        let config = j
            .config
            .into_iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => Ok((k, s)),
                other => Err(format!("config value for `{k}` must be a string, found {other}")),
            })
            .collect::<Result<_, _>>()?;
        let r = Report { name: j.name, config, entries, timing_ms: j.timing_ms };
        if r.status() != status(&j.status)? {
            return Err(format!("overall status `{}` disagrees with the checks ({})", j.status, r.status()));
        }
        Ok(r)
    }
}

pub fn to_json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&ReportJson::from(r)).expect("report serializes");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<Report, String> {
    let j: ReportJson = serde_json::from_str(s).map_err(|e| e.to_string())?;
    Report::try_from(j)
}

/// 0 when every check passes, 2 when something is undecided but nothing
/// fails, 1 otherwise.
pub fn exit_code(r: &Report) -> i32 {
    match r.status() {
        Status::Pass => 0,
        Status::NotDecidedAtBound => 2,
        Status::Fail => 1,
    }
}
