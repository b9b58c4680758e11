use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Comparison of one coefficient of `T^power`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientCheck {
    pub power: usize,
    pub lhs: String,
    pub rhs: String,
    pub deviation: f64,
    pub bound: f64,
}

/// Outcome of one verification.
///
/// For numeric identities `pass` holds when every coefficient deviation is
/// within the summed error bounds of its two sides and those bounds are
/// within `tolerance`. Exact identities report `method = "exact"`, zero
/// bounds, and a deviation of 1 for each mismatch.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub method: String,
    pub checks: u64,
    pub coefficients: Vec<CoefficientCheck>,
    pub max_deviation: f64,
    pub bound: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
    pub note: Option<String>,
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::parse(format!("report: {e}")))
    }

    pub fn params_text(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.identity, self.params_text())?;
        if let Some(e) = &self.error {
            return write!(f, " error: {e}");
        }
        if self.method == "exact" {
            write!(f, " exact, {} checks", self.checks)?;
        } else {
            write!(
                f,
                " max deviation {:.2e}, bound {:.2e}, tolerance {:.0e}",
                self.max_deviation, self.bound, self.tolerance
            )?;
        }
        write!(f, " ({:.2}s)", self.seconds)?;
        if let Some(n) = &self.note {
            write!(f, "\n    note: {n}")?;
        }
        Ok(())
    }
}
