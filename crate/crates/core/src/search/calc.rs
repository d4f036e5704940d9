//! The two numerical inequalities used to close the proof, evaluated in
//! exact integer arithmetic.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{SearchReport, Status};
use crate::error::{invalid, Result};

/// Either a single point, or a sweep up to the caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObsCalcQuery {
    pub m: Option<u64>,
    pub n: Option<u64>,
    pub t: Option<u64>,
    pub n_cap: u64,
    pub m_cap: u64,
    pub t_cap: u64,
}

impl Default for ObsCalcQuery {
    fn default() -> Self {
        ObsCalcQuery {
            m: None,
            n: None,
            t: None,
            n_cap: 500,
            m_cap: 40,
            t_cap: 40,
        }
    }
}

/// `(m+1)(n-m)² >= (n-1)(2n + 30m + 32)`.
fn first_holds(m: u64, n: u64) -> bool {
    let (m, n) = (m as i128, n as i128);
    (m + 1) * (n - m) * (n - m) >= (n - 1) * (2 * n + 30 * m + 32)
}

/// `t(n-m)² >= (n-1)(2(n-m) + 32t)`.
fn second_holds(t: u64, m: u64, n: u64) -> bool {
    let (t, m, n) = (t as i128, m as i128, n as i128);
    t * (n - m) * (n - m) >= (n - 1) * (2 * (n - m) + 32 * t)
}

fn first_in_domain(m: u64, n: u64) -> bool {
    m >= 2 && 2 * m <= n && n >= 136
}

fn second_in_domain(t: u64, m: u64, n: u64) -> bool {
    t >= 3 && n >= 4 * m + 94
}

/// Checks both inequalities. With `n` and `m` given (and optionally `t`)
/// a single point is evaluated; points outside the hypotheses are reported
/// as out of domain rather than as failures. Otherwise every in-domain
/// point up to the caps is checked.
pub fn check_obs_calc(q: &ObsCalcQuery) -> Result<SearchReport> {
    let started = Instant::now();
    let params = serde_json::to_value(q).expect("query serializes");
    let mut report = SearchReport::new("obs-calc", params);
    match (q.m, q.n, q.t) {
        (Some(m), Some(n), None) => {
            report.checked = 1;
            let holds = first_holds(m, n);
            let inside = first_in_domain(m, n);
            report.findings.push(point_text("first", &format!("m = {m}, n = {n}"), holds, inside));
            if inside && !holds {
                report.violation_note();
            }
        }
        (Some(m), Some(n), Some(t)) => {
            report.checked = 1;
            if n <= m {
                return Err(invalid(format!("need n > m, got n = {n}, m = {m}")));
            }
            let holds = second_holds(t, m, n);
            let inside = second_in_domain(t, m, n);
            report.findings.push(point_text("second", &format!("t = {t}, m = {m}, n = {n}"), holds, inside));
            if inside && !holds {
                report.violation_note();
            }
        }
        (None, None, None) => {
            let mut bad = Vec::new();
            for n in 136..=q.n_cap {
                for m in 2..=n / 2 {
                    report.checked += 1;
                    if !first_holds(m, n) {
                        bad.push(format!("first: m = {m}, n = {n}"));
                    }
                }
            }
            for t in 3..=q.t_cap {
                for m in 0..=q.m_cap {
                    for n in 4 * m + 94..=q.n_cap.max(4 * m + 94) {
                        report.checked += 1;
                        if !second_holds(t, m, n) {
                            bad.push(format!("second: t = {t}, m = {m}, n = {n}"));
                        }
                    }
                }
            }
            for b in bad {
                report.violation_note();
                if report.findings.len() < super::MAX_STORED {
                    report.findings.push(format!("fails at {b}"));
                }
            }
            if report.violations == 0 {
                report.findings.push(format!(
                    "both inequalities hold on every in-domain point with n <= {}, m <= {}, t <= {}",
                    q.n_cap, q.m_cap, q.t_cap
                ));
            }
        }
        _ => return Err(invalid("give m and n (and optionally t), or none of them for a sweep")),
    }
    Ok(report.finish(started))
}

fn point_text(which: &str, at: &str, holds: bool, inside: bool) -> String {
    let verdict = if holds { "holds" } else { "fails" };
    if inside {
        format!("{which} inequality {verdict} at {at}")
    } else {
        format!("{which} inequality {verdict} at {at}, which is outside its hypotheses (out of domain)")
    }
}

impl SearchReport {
    fn violation_note(&mut self) {
        self.violations += 1;
        self.status = Status::Counterexamples;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_from_the_text() {
        // m = 2: (3)(n-2)^2 - (n-1)(2n+92) = n^2 - 102n + 104.
        for n in 0..300u64 {
            let lhs = 3 * (n as i128 - 2).pow(2) - (n as i128 - 1) * (2 * n as i128 + 92);
            assert_eq!(lhs, (n as i128).pow(2) - 102 * n as i128 + 104);
        }
        assert!(first_holds(2, 136));
        let r = check_obs_calc(&ObsCalcQuery { m: Some(2), n: Some(136), ..Default::default() }).unwrap();
        assert!(r.is_verified());
        let r = check_obs_calc(&ObsCalcQuery { m: Some(2), n: Some(50), ..Default::default() }).unwrap();
        assert!(r.is_verified());
        assert!(r.findings[0].contains("out of domain"));
        assert!(second_holds(3, 0, 94));
        let r = check_obs_calc(&ObsCalcQuery { m: Some(0), n: Some(94), t: Some(3), ..Default::default() }).unwrap();
        assert!(r.is_verified());
    }

    #[test]
    fn sweep() {
        let r = check_obs_calc(&ObsCalcQuery::default()).unwrap();
        assert!(r.is_verified(), "{:?}", r.findings);
        assert!(r.checked > 10_000);
    }
}
