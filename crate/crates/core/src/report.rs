//! JSON documents emitted by the command-line front end.

use serde::Serialize;

use crate::poly::ComplexPolynomial;
use crate::routh::{RhLevel, RhTable};
use crate::scalar::{Mode, Scalar, Tolerance};
use crate::shaft::ShaftParams;
use crate::verdict::{Stability, StabilityVerdict};

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub polynomial: String,
    pub degree: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<RhLevel>>,
    pub pivots: Vec<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scaling_log: Option<Vec<f64>>,
    pub verdict: Stability,
    pub first_failing_index: Option<usize>,
    pub marginal: bool,
}

impl TableReport {
    /// Everything in the table, verdict included.
    pub fn full(table: &RhTable, tol: Tolerance) -> Self {
        let v = table.verdict(tol);
        TableReport {
            polynomial: table.polynomial.to_string(),
            degree: table.degree(),
            mode: table.mode(),
            xi: None,
            method: None,
            levels: Some(table.levels.clone()),
            pivots: table.pivot_values(),
            scaling_log: Some(table.scaling_log.clone()),
            verdict: v.stability,
            first_failing_index: v.first_failing_index,
            marginal: v.marginal,
        }
    }

    /// Pivot chain plus a verdict that may come from another test.
    pub fn summary(table: &RhTable, method: &str, verdict: StabilityVerdict) -> Self {
        TableReport {
            polynomial: table.polynomial.to_string(),
            degree: table.degree(),
            mode: table.mode(),
            xi: None,
            method: Some(method.to_string()),
            levels: None,
            pivots: table.pivot_values(),
            scaling_log: None,
            verdict: verdict.stability,
            first_failing_index: verdict.first_failing_index,
            marginal: verdict.marginal,
        }
    }

    pub fn with_xi(mut self, xi: Option<Scalar>) -> Self {
        self.xi = xi;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShaftReport {
    pub params: ShaftParams,
    pub polynomial: String,
    pub conditions: [Scalar; 3],
    pub pivots: Vec<Scalar>,
    pub verdict: Stability,
    pub first_failing_index: Option<usize>,
    pub marginal: bool,
    /// `null` when the root finder did not converge.
    pub abscissa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_verdict: Option<Stability>,
}

impl ShaftReport {
    pub fn new(
        params: &ShaftParams,
        polynomial: &ComplexPolynomial,
        conditions: [Scalar; 3],
        table: &RhTable,
        verdict: StabilityVerdict,
        abscissa: Option<f64>,
    ) -> Self {
        ShaftReport {
            params: params.clone(),
            polynomial: polynomial.to_string(),
            conditions,
            pivots: table.pivot_values(),
            verdict: verdict.stability,
            first_failing_index: verdict.first_failing_index,
            marginal: verdict.marginal,
            abscissa,
            oracle_verdict: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routh::build_table;

    #[test]
    fn full_report_json() {
        let p = ComplexPolynomial::from_integer_pairs(&[(3, 0), (3, 1)]).unwrap();
        let json = serde_json::to_value(TableReport::full(&build_table(&p), Tolerance::default())).unwrap();
        assert_eq!(json["pivots"], serde_json::json!(["3", "26"]));
        assert_eq!(json["verdict"], "hurwitz");
        assert_eq!(json["mode"], "exact");
        assert_eq!(json["levels"][0]["p"], 1);
        assert!(json["first_failing_index"].is_null());
        assert!(json.get("xi").is_none());
    }
}
