//! Machine-readable check reports.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(passed: bool) -> Self {
        if passed {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_ms: u64,
}

impl From<Duration> for Timings {
    fn from(d: Duration) -> Self {
        Timings {
            elapsed_ms: d.as_millis() as u64,
        }
    }
}

/// Outcome of one check. Field order is fixed and `witnesses` is a JSON
/// value with sorted keys, so serialisation is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub n: usize,
    pub status: Status,
    pub anchor: String,
    pub witnesses: Value,
    pub timings: Timings,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: &str, n: usize, anchor: &str, passed: bool, witnesses: impl Serialize) -> Result<Self> {
        Ok(CheckReport {
            check: check.to_string(),
            n,
            status: Status::from_bool(passed),
            anchor: anchor.to_string(),
            witnesses: serde_json::to_value(witnesses)?,
            timings: Timings::default(),
            notes: Vec::new(),
        })
    }

    /// A failing report for a check that raised an error.
    pub fn from_error(check: &str, n: usize, anchor: &str, error: &Error) -> Self {
        let witnesses = match error {
            Error::Verification { invariant, detail } => {
                serde_json::json!({ "invariant": invariant, "detail": detail })
            }
            other => serde_json::json!({ "error": other.to_string() }),
        };
        CheckReport {
            check: check.to_string(),
            n,
            status: Status::Fail,
            anchor: anchor.to_string(),
            witnesses,
            timings: Timings::default(),
            notes: Vec::new(),
        }
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.timings = elapsed.into();
        self
    }

    pub fn with_notes(mut self, notes: Vec<String>) -> Self {
        self.notes.extend(notes);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A list of check reports with an overall status.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub status: Status,
    pub reports: Vec<CheckReport>,
}

impl RunReport {
    pub fn new(reports: Vec<CheckReport>) -> Self {
        RunReport {
            status: Status::from_bool(reports.iter().all(CheckReport::passed)),
            reports,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_order_is_stable() {
        let r = CheckReport::new(
            "basis",
            5,
            "standard-module:basis",
            true,
            serde_json::json!({"z": 1, "a": [2]}),
        )
        .unwrap()
        .with_elapsed(Duration::from_millis(12));
        let json = r.to_json().unwrap();
        assert_eq!(
            json,
            r#"{"check":"basis","n":5,"status":"pass","anchor":"standard-module:basis","witnesses":{"a":[2],"z":1},"timings":{"elapsed_ms":12},"notes":[]}"#
        );
    }

    #[test]
    fn error_reports_name_the_invariant() {
        let e = Error::verification("symmetric", "arc 3 -> 17");
        let r = CheckReport::from_error("graph", 5, "graph:structure", &e);
        assert!(!r.passed());
        assert_eq!(r.witnesses["invariant"], "symmetric");
        assert!(!RunReport::new(vec![r]).passed());
        assert!(RunReport::new(vec![]).passed());
    }

    proptest! {
        #[test]
        fn json_round_trip_is_byte_identical(
            check in "[a-z-]{1,12}",
            n in 0usize..20,
            pass in any::<bool>(),
            ms in any::<u32>(),
            notes in prop::collection::vec("[ -~]{0,20}", 0..3),
            values in prop::collection::btree_map("[a-z]{1,5}", -1000i64..1000, 0..5),
        ) {
            let r = CheckReport::new(&check, n, "anchor", pass, &values)
                .unwrap()
                .with_elapsed(Duration::from_millis(ms as u64))
                .with_notes(notes);
            let json = r.to_json().unwrap();
            let back = CheckReport::from_json(&json).unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert_eq!(back.to_json().unwrap(), json);
        }
    }
}
