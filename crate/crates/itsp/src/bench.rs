//! Benchmark harness: runs every (instance, genotype, profile) cell and
//! averages the results.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use itsp_core::ga::{run, GaParams};
use itsp_core::gen::derive_seed;
use itsp_core::repr::RepresentationKind;
use itsp_core::temperature::{Instance, ProfilePair};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// GA settings shared by all cells; rates left `None` use the genotype's
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchSettings {
    pub seed: u64,
    pub budget: usize,
    pub population_size: usize,
    pub elite_size: usize,
    pub m_nl: Option<f64>,
    pub m_ptl: Option<f64>,
    pub m_sl: Option<f64>,
}

impl BenchSettings {
    pub fn new(seed: u64) -> Self {
        let d = GaParams::defaults(RepresentationKind::OneList);
        Self {
            seed,
            budget: d.budget,
            population_size: d.population_size,
            elite_size: d.elite_size,
            m_nl: None,
            m_ptl: None,
            m_sl: None,
        }
    }

    pub fn params(&self, kind: RepresentationKind, seed: u64) -> GaParams {
        let d = GaParams::defaults(kind);
        GaParams {
            population_size: self.population_size,
            elite_size: self.elite_size,
            m_nl: self.m_nl.unwrap_or(d.m_nl),
            m_ptl: self.m_ptl.unwrap_or(d.m_ptl),
            m_sl: self.m_sl.unwrap_or(d.m_sl),
            budget: self.budget,
            kind,
            seed,
        }
    }
}

/// Outcome of one GA run.
#[derive(Debug, Clone, PartialEq)]
pub struct CellRun {
    pub instance: usize,
    pub kind: RepresentationKind,
    pub profile: ProfilePair,
    pub outcome: Result<itsp_core::ObjectiveBreakdown, String>,
}

/// One row of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub repr: String,
    pub profile: String,
    #[serde(rename = "AvDur")]
    pub av_dur: f64,
    pub mean_travel: f64,
    pub mean_wait: f64,
    pub n_instances: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub runs: Vec<CellRun>,
    pub seed: u64,
    pub budget: usize,
    pub instance_count: usize,
}

impl BenchReport {
    pub fn failures(&self) -> impl Iterator<Item = &CellRun> {
        self.runs.iter().filter(|r| r.outcome.is_err())
    }

    pub fn row(&self, kind: RepresentationKind, profile: ProfilePair) -> Option<&BenchRow> {
        let (r, p) = (kind.label(), profile.to_string());
        self.rows.iter().find(|row| row.repr == r && row.profile == p)
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.rows)
    }

    pub fn metadata_json(&self) -> String {
        serde_json::json!({
            "seed": self.seed,
            "budget": self.budget,
            "instance_count": self.instance_count,
            "failed_runs": self.failures().count(),
        })
        .to_string()
    }
}

/// Seed of the run on instance `index` with the given genotype and profile.
pub fn run_seed(master: u64, index: usize, kind: RepresentationKind, profile: ProfilePair) -> u64 {
    derive_seed(
        master,
        &[
            index as u64,
            kind as u64,
            profile.increase as u64,
            profile.decrease as u64,
        ],
    )
}

/// Runs every cell in parallel. Results are ordered by genotype, profile
/// and instance regardless of scheduling, so the report is reproducible.
pub fn run_bench(
    instances: &[Instance],
    kinds: &[RepresentationKind],
    profiles: &[ProfilePair],
    settings: &BenchSettings,
) -> BenchReport {
    let mut jobs = Vec::new();
    for &kind in kinds {
        for &profile in profiles {
            for index in 0..instances.len() {
                jobs.push((kind, profile, index));
            }
        }
    }
    let runs: Vec<CellRun> = jobs
        .par_iter()
        .map(|&(kind, profile, index)| {
            let inst = instances[index].with_profile(profile);
            let params = settings.params(kind, run_seed(settings.seed, index, kind, profile));
            let outcome = run(&inst, &params)
                .map(|r| r.best.objective)
                .map_err(|e| e.to_string());
            CellRun {
                instance: index,
                kind,
                profile,
                outcome,
            }
        })
        .collect();

    let mut rows = Vec::new();
    for &kind in kinds {
        for &profile in profiles {
            let done: Vec<_> = runs
                .iter()
                .filter(|r| r.kind == kind && r.profile == profile)
                .filter_map(|r| r.outcome.as_ref().ok())
                .collect();
            let count = done.len();
            let mean = |f: fn(&itsp_core::ObjectiveBreakdown) -> u64| {
                if count == 0 {
                    f64::NAN
                } else {
                    done.iter().map(|b| f(b) as f64).sum::<f64>() / count as f64
                }
            };
            rows.push(BenchRow {
                repr: kind.label().to_string(),
                profile: profile.to_string(),
                av_dur: mean(|b| b.total),
                mean_travel: mean(|b| b.travel),
                mean_wait: mean(|b| b.waiting),
                n_instances: count,
            });
        }
    }
    BenchReport {
        rows,
        runs,
        seed: settings.seed,
        budget: settings.budget,
        instance_count: instances.len(),
    }
}

fn fmt_mean(v: f64) -> String {
    format!("{v:.2}")
}

pub fn rows_to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["repr", "profile", "AvDur", "mean_travel", "mean_wait", "n_instances"])
        .expect("in-memory write");
    for r in rows {
        w.write_record([
            r.repr.clone(),
            r.profile.clone(),
            fmt_mean(r.av_dur),
            fmt_mean(r.mean_travel),
            fmt_mean(r.mean_wait),
            r.n_instances.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn rows_from_csv<R: Read>(reader: R) -> Result<Vec<BenchRow>, csv::Error> {
    csv::Reader::from_reader(reader).deserialize().collect()
}

/// Merges reports over disjoint instance sets: means are weighted by
/// instance counts. Row order follows first appearance.
pub fn merge_rows(reports: &[Vec<BenchRow>]) -> Vec<BenchRow> {
    let mut order = Vec::new();
    let mut acc: BTreeMap<(String, String), (f64, f64, f64, usize)> = BTreeMap::new();
    for rows in reports {
        for r in rows {
            let key = (r.repr.clone(), r.profile.clone());
            if !acc.contains_key(&key) {
                order.push(key.clone());
            }
            let e = acc.entry(key).or_insert((0.0, 0.0, 0.0, 0));
            if r.n_instances > 0 {
                let w = r.n_instances as f64;
                e.0 += r.av_dur * w;
                e.1 += r.mean_travel * w;
                e.2 += r.mean_wait * w;
                e.3 += r.n_instances;
            }
        }
    }
    order
        .into_iter()
        .map(|key| {
            let (dur, travel, wait, count) = acc[&key];
            let div = |x: f64| if count == 0 { f64::NAN } else { x / count as f64 };
            BenchRow {
                repr: key.0,
                profile: key.1,
                av_dur: div(dur),
                mean_travel: div(travel),
                mean_wait: div(wait),
                n_instances: count,
            }
        })
        .collect()
}

pub fn write_csv<W: Write>(mut out: W, rows: &[BenchRow]) -> std::io::Result<()> {
    out.write_all(rows_to_csv(rows).as_bytes())
}
