//! Independent check of a solution file against its instance.

use std::fmt;

use itsp_core::eval::{evaluate, ObjectiveBreakdown, Schedule};
use itsp_core::oracle::{simulate_timeline, TemperatureViolation};
use itsp_core::temperature::Instance;

use crate::files::{schedule_from_visits, FileError, SolutionDoc};

#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    /// The genotype breaks a structural rule.
    Genotype(String),
    /// The genotype cannot be decoded under the temperature limit.
    Decode(String),
    ObjectiveMismatch {
        declared: ObjectiveBreakdown,
        decoded: ObjectiveBreakdown,
    },
    Schedule(String),
    Temperature(TemperatureViolation),
    Unfinished { node: usize, done: u64, need: u64 },
    TotalMismatch { declared: u64, simulated: u64 },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::Genotype(s) => write!(f, "invalid genotype: {s}"),
            Problem::Decode(s) => write!(f, "cannot decode: {s}"),
            Problem::ObjectiveMismatch { declared, decoded } => write!(
                f,
                "objective mismatch: file says {}/{}/{}/{}, decoding gives {}/{}/{}/{} \
                 (processing/travel/waiting/total)",
                declared.processing,
                declared.travel,
                declared.waiting,
                declared.total,
                decoded.processing,
                decoded.travel,
                decoded.waiting,
                decoded.total
            ),
            Problem::Schedule(s) => write!(f, "bad schedule: {s}"),
            Problem::Temperature(v) => write!(f, "temperature violation: {v}"),
            Problem::Unfinished { node, done, need } => {
                write!(f, "node {node} processed {done} of {need} units")
            }
            Problem::TotalMismatch {
                declared,
                simulated,
            } => write!(f, "declared total {declared}, simulated {simulated}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub problems: Vec<Problem>,
    /// Simulated duration, when the schedule could be replayed.
    pub duration: Option<u64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks `doc` against `inst`. The solution's own profile, if it records
/// one, overrides the instance's. A schedule stored in the file is replayed
/// as is; otherwise the decoded schedule is replayed.
pub fn verify_solution(inst: &Instance, doc: &SolutionDoc) -> Result<VerifyReport, FileError> {
    let repr = doc.representation()?;
    let inst = match doc.profile_pair()? {
        Some(p) => inst.with_profile(p),
        None => inst.clone(),
    };
    let declared: ObjectiveBreakdown = doc.objective.into();
    let mut report = VerifyReport::default();

    let violations = repr.check_valid(&inst);
    report
        .problems
        .extend(violations.iter().map(|v| Problem::Genotype(v.to_string())));

    let mut decoded: Option<Schedule> = None;
    if violations.is_empty() {
        match evaluate(&repr, &inst) {
            Ok((sched, obj)) => {
                if obj != declared {
                    report.problems.push(Problem::ObjectiveMismatch {
                        declared,
                        decoded: obj,
                    });
                }
                decoded = Some(sched);
            }
            Err(e) => report.problems.push(Problem::Decode(e.to_string())),
        }
    }

    let sched = match (&doc.schedule, decoded) {
        (Some(visits), _) => schedule_from_visits(visits, declared.total),
        (None, Some(s)) => Schedule {
            duration: declared.total,
            ..s
        },
        (None, None) => return Ok(report),
    };
    // Replay against the simulated length rather than the declared one so
    // the mismatch is reported with both numbers alongside other findings.
    let mut open = sched.clone();
    open.duration = 0;
    match simulate_timeline(&open, &inst) {
        Err(itsp_core::oracle::ScheduleError::DurationMismatch { simulated, .. }) => {
            open.duration = simulated;
            let trace = simulate_timeline(&open, &inst)
                .map_err(|e| FileError::Schema(e.to_string()))?;
            record_trace(&mut report, &trace, &inst, declared.total);
        }
        Ok(trace) => record_trace(&mut report, &trace, &inst, declared.total),
        Err(e) => report.problems.push(Problem::Schedule(e.to_string())),
    }
    Ok(report)
}

fn record_trace(
    report: &mut VerifyReport,
    trace: &itsp_core::oracle::TimelineTrace,
    inst: &Instance,
    declared_total: u64,
) {
    report.duration = Some(trace.duration);
    report
        .problems
        .extend(trace.violations.iter().cloned().map(Problem::Temperature));
    report.problems.extend(
        trace
            .unfinished(inst)
            .into_iter()
            .map(|(node, done, need)| Problem::Unfinished { node, done, need }),
    );
    if trace.duration != declared_total {
        report.problems.push(Problem::TotalMismatch {
            declared: declared_total,
            simulated: trace.duration,
        });
    }
}
