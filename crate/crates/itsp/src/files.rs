//! JSON file formats: instances, solutions and schedules.
//!
//! Instance files hold a single compact JSON object with the keys `n`, `p`,
//! `d`, `B` and `profile`, in that order, with no trailing data. Solution
//! files carry the genotype, its objective breakdown, the decoded schedule
//! and the profile pair the solution was computed under.

use std::fs;
use std::path::{Path, PathBuf};

use itsp_core::eval::{ObjectiveBreakdown, Schedule, Visit};
use itsp_core::repr::{OneList, Representation, RepresentationKind, ThreeList, TwoList};
use itsp_core::temperature::{Instance, InstanceViolation, ProfileKind, ProfilePair, ShapeError};
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Malformed(#[source] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("bad matrix shape: {0}")]
    Shape(#[from] ShapeError),
    #[error("invalid instance: {}", join(.0))]
    Invalid(Vec<InstanceViolation>),
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn classify(e: serde_json::Error) -> FileError {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => FileError::Schema(e.to_string()),
        Category::Syntax | Category::Eof | Category::Io => FileError::Malformed(e),
    }
}

fn read(path: &Path) -> Result<String, FileError> {
    fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), FileError> {
    fs::write(path, contents).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub increase: char,
    pub decrease: char,
}

impl From<ProfilePair> for ProfileDoc {
    fn from(p: ProfilePair) -> Self {
        Self {
            increase: p.increase.code(),
            decrease: p.decrease.code(),
        }
    }
}

impl TryFrom<ProfileDoc> for ProfilePair {
    type Error = FileError;

    fn try_from(doc: ProfileDoc) -> Result<Self, FileError> {
        let parse = |c: char| {
            ProfileKind::from_code(c.encode_utf8(&mut [0; 4]))
                .ok_or_else(|| FileError::Schema(format!("unknown profile code {c:?}")))
        };
        Ok(ProfilePair {
            increase: parse(doc.increase)?,
            decrease: parse(doc.decrease)?,
        })
    }
}

fn serialize_temperature<S: Serializer>(b: &f64, s: S) -> Result<S::Ok, S::Error> {
    if b.fract() == 0.0 && *b >= 0.0 && *b < 9.0e15 {
        s.serialize_u64(*b as u64)
    } else {
        s.serialize_f64(*b)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    n: usize,
    p: Vec<u64>,
    d: Vec<Vec<u64>>,
    #[serde(rename = "B", serialize_with = "serialize_temperature")]
    b: f64,
    profile: ProfileDoc,
}

pub fn instance_to_json(inst: &Instance) -> String {
    let doc = InstanceDoc {
        n: inst.n(),
        p: inst.processing().to_vec(),
        d: inst.distance_rows(),
        b: inst.max_temp(),
        profile: inst.profile().into(),
    };
    serde_json::to_string(&doc).expect("instance serializes")
}

/// Parses and validates an instance document.
pub fn instance_from_json(text: &str) -> Result<Instance, FileError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(classify)?;
    if doc.p.len() != doc.n {
        return Err(FileError::Schema(format!(
            "n = {} but p has {} entries",
            doc.n,
            doc.p.len()
        )));
    }
    let inst = Instance::new(doc.p, &doc.d, doc.b, doc.profile.try_into()?)?;
    let violations = inst.validate();
    if !violations.is_empty() {
        return Err(FileError::Invalid(violations));
    }
    Ok(inst)
}

pub fn write_instance(path: &Path, inst: &Instance) -> Result<(), FileError> {
    write(path, &instance_to_json(inst))
}

pub fn read_instance(path: &Path) -> Result<Instance, FileError> {
    instance_from_json(&read(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveDoc {
    pub processing: u64,
    pub travel: u64,
    pub waiting: u64,
    pub total: u64,
}

impl From<ObjectiveBreakdown> for ObjectiveDoc {
    fn from(b: ObjectiveBreakdown) -> Self {
        Self {
            processing: b.processing,
            travel: b.travel,
            waiting: b.waiting,
            total: b.total,
        }
    }
}

impl From<ObjectiveDoc> for ObjectiveBreakdown {
    fn from(d: ObjectiveDoc) -> Self {
        ObjectiveBreakdown {
            processing: d.processing,
            travel: d.travel,
            waiting: d.waiting,
            total: d.total,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VisitDoc {
    pub node: usize,
    pub arrive: u64,
    pub process: u64,
    pub wait: u64,
    pub depart: u64,
}

impl From<&Visit> for VisitDoc {
    fn from(v: &Visit) -> Self {
        Self {
            node: v.node,
            arrive: v.arrive,
            process: v.process,
            wait: v.wait,
            depart: v.depart,
        }
    }
}

impl From<&VisitDoc> for Visit {
    fn from(v: &VisitDoc) -> Self {
        Visit {
            node: v.node,
            arrive: v.arrive,
            process: v.process,
            wait: v.wait,
            depart: v.depart,
        }
    }
}

/// Standalone schedule export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    pub visits: Vec<VisitDoc>,
    pub objective: ObjectiveDoc,
}

pub fn schedule_doc(sched: &Schedule, objective: ObjectiveBreakdown) -> ScheduleDoc {
    ScheduleDoc {
        visits: sched.visits.iter().map(VisitDoc::from).collect(),
        objective: objective.into(),
    }
}

/// Rebuilds a schedule; the tour starts at the first visit and its duration
/// is the objective total.
pub fn schedule_from_visits(visits: &[VisitDoc], total: u64) -> Schedule {
    Schedule {
        start: visits.first().map_or(0, |v| v.node),
        visits: visits.iter().map(Visit::from).collect(),
        duration: total,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub representation: String,
    pub nl: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ptl: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl: Option<Vec<u64>>,
    pub objective: ObjectiveDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<VisitDoc>>,
}

impl SolutionDoc {
    pub fn new(
        repr: &Representation,
        objective: ObjectiveBreakdown,
        profile: ProfilePair,
        schedule: &Schedule,
    ) -> Self {
        Self {
            representation: repr.kind().label().to_string(),
            nl: repr.nl().to_vec(),
            ptl: repr.ptl().map(<[u64]>::to_vec),
            sl: repr.sl().map(<[u64]>::to_vec),
            objective: objective.into(),
            profile: Some(profile.into()),
            schedule: Some(schedule.visits.iter().map(VisitDoc::from).collect()),
        }
    }

    pub fn representation(&self) -> Result<Representation, FileError> {
        let kind = RepresentationKind::from_label(&self.representation).ok_or_else(|| {
            FileError::Schema(format!("unknown representation {:?}", self.representation))
        })?;
        let need = |field: &Option<Vec<u64>>, name: &str| {
            field
                .clone()
                .ok_or_else(|| FileError::Schema(format!("{kind} solution lacks `{name}`")))
        };
        let nl = self.nl.clone();
        Ok(match kind {
            RepresentationKind::OneList => Representation::One(OneList { nl }),
            RepresentationKind::TwoList => Representation::Two(TwoList {
                nl,
                ptl: need(&self.ptl, "ptl")?,
            }),
            RepresentationKind::ThreeList => Representation::Three(ThreeList {
                nl,
                ptl: need(&self.ptl, "ptl")?,
                sl: need(&self.sl, "sl")?,
            }),
        })
    }

    pub fn profile_pair(&self) -> Result<Option<ProfilePair>, FileError> {
        self.profile.map(ProfilePair::try_from).transpose()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(classify)
    }
}

pub fn write_solution(path: &Path, doc: &SolutionDoc) -> Result<(), FileError> {
    write(path, &doc.to_json())
}

pub fn read_solution(path: &Path) -> Result<SolutionDoc, FileError> {
    SolutionDoc::from_json(&read(path)?)
}
