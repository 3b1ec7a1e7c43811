//! Cross-checks every applicable distance method on a single word.

use crate::closed_form::{closed_form_distance, ClosedFormCase};
use crate::code::{hamming_distance, ReceivedWord};
use crate::engine::{DistanceEngine, DistanceResult, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;

pub type ClosedFormFn = fn(&Field, &ClosedFormCase) -> Result<DistanceResult>;

/// What each method reported. `None` means the method does not apply or is
/// over its size cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub closed_form: Option<DistanceResult>,
    pub subset_dp: Option<DistanceResult>,
    pub oracle: Option<DistanceResult>,
}

impl ConsistencyReport {
    /// The exact distance, when some exact method ran.
    pub fn truth(&self) -> Option<usize> {
        [&self.oracle, &self.subset_dp, &self.closed_form]
            .into_iter()
            .flatten()
            .find_map(|r| r.verdict.exact())
    }

    fn describe(&self) -> String {
        let show =
            |r: &Option<DistanceResult>| r.as_ref().map_or("n/a".to_string(), |r| r.to_json());
        format!(
            "closed_form={} subset_dp={} oracle={}",
            show(&self.closed_form),
            show(&self.subset_dp),
            show(&self.oracle)
        )
    }
}

pub struct ConsistencyChecker<'a> {
    engine: &'a DistanceEngine,
    closed_form: ClosedFormFn,
}

impl<'a> ConsistencyChecker<'a> {
    pub fn new(engine: &'a DistanceEngine) -> ConsistencyChecker<'a> {
        ConsistencyChecker {
            engine,
            closed_form: closed_form_distance,
        }
    }

    /// Replaces the closed-form table, e.g. with a deliberately wrong one.
    pub fn with_closed_form(mut self, f: ClosedFormFn) -> Self {
        self.closed_form = f;
        self
    }

    fn run_closed_form(&self, u: &ReceivedWord) -> Result<Option<DistanceResult>> {
        let code = self.engine.code();
        let outcome = match self.engine.closed_form_case(u) {
            Some(case) => (self.closed_form)(code.field(), &case),
            None => self.engine.closed_form(u),
        };
        match outcome {
            Ok(r) => Ok(Some(r)),
            Err(Error::OutOfClosedFormRange(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Runs all methods and checks that they agree, that bounds hold and that
    /// every certificate verifies.
    pub fn check(&self, u: &ReceivedWord) -> Result<ConsistencyReport> {
        let subset_dp = match self.engine.subset_distance(u) {
            Ok(r) => Some(r),
            Err(Error::DegreeOutOfRange { .. }) | Err(Error::TooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        let oracle = match self.engine.oracle(u) {
            Ok(r) => Some(r),
            Err(Error::TooLarge(_)) => None,
            Err(e) => return Err(e),
        };
        let report = ConsistencyReport {
            closed_form: self.run_closed_form(u)?,
            subset_dp,
            oracle,
        };
        match self.problems(u, &report) {
            Some(msg) => Err(Error::InconsistencyDetected(format!(
                "{msg}; {}",
                report.describe()
            ))),
            None => Ok(report),
        }
    }

    fn problems(&self, u: &ReceivedWord, report: &ConsistencyReport) -> Option<String> {
        let code = self.engine.code();
        let (n, k) = (code.n(), code.k());
        let all: Vec<&DistanceResult> = [&report.closed_form, &report.subset_dp, &report.oracle]
            .into_iter()
            .flatten()
            .collect();
        let exact: Vec<usize> = all.iter().filter_map(|r| r.verdict.exact()).collect();
        if exact.windows(2).any(|w| w[0] != w[1]) {
            return Some(format!("exact verdicts disagree: {exact:?}"));
        }
        if let Some(truth) = report.truth() {
            if let Some(r) = all.iter().find(|r| !r.verdict.admits(truth)) {
                return Some(format!(
                    "{:?} does not admit the exact distance {truth}",
                    r.verdict
                ));
            }
            let lower = u.degree().filter(|&d| d >= k).map_or(0, |d| n - d);
            let upper = if u.degree().is_some_and(|d| d >= k) {
                n - k
            } else {
                0
            };
            if truth < lower || truth > upper {
                return Some(format!("distance {truth} outside [{lower}, {upper}]"));
            }
        }
        for r in &all {
            if let (Some(w), Verdict::Exact(d)) = (&r.witness, r.verdict) {
                if !w.verify(code, u) || w.elements.len() + d != n {
                    return Some(format!("witness {:?} does not certify {d}", w.elements));
                }
            }
            if let (Some(f), Verdict::Exact(d)) = (&r.nearest_codeword, r.verdict) {
                let ok = code
                    .word_from_poly(f)
                    .ok()
                    .filter(|_| f.degree().is_none_or(|deg| deg < k))
                    .and_then(|cw| hamming_distance(cw.values(), u.values()).ok())
                    == Some(d);
                if !ok {
                    return Some(format!("nearest codeword is not at distance {d}"));
                }
            }
        }
        None
    }
}
