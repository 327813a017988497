//! Independent ground truth for the decoders.
//!
//! [`simulate_timeline`] replays a schedule one time unit at a time and
//! applies the counter and temperature rules literally to every node.
//! [`brute_force_optimum`] enumerates every split pattern and visit order of
//! tiny instances. [`held_karp_tsp`] gives the exact TSP tour length, a lower
//! bound on travel for any schedule.
//!
//! None of this code calls into [`crate::eval`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::eval::{Schedule, Visit};
use crate::temperature::{profile_value, Instance, ThermalState};
use crate::{Node, Units};

/// What the salesman does during one time unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Activity {
    Travel { from: Node, to: Node },
    /// Present at a node without working and without being forced to wait.
    Idle(Node),
    Process(Node),
    Wait(Node),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureViolation {
    pub t: Units,
    pub node: Node,
    pub temperature: f64,
}

impl fmt::Display for TemperatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "node {} reaches temperature {} at t = {}",
            self.node, self.temperature, self.t
        )
    }
}

/// Full per-unit replay of a schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct TimelineTrace {
    /// `counters[t][i]` is `c_it`; row 0 is the all-zero initial state.
    pub counters: Vec<Vec<Units>>,
    /// `temperatures[t][i]` is `B_it`.
    pub temperatures: Vec<Vec<f64>>,
    /// `activity[t - 1]` is what happens during unit `t`.
    pub activity: Vec<Activity>,
    pub duration: Units,
    pub violations: Vec<TemperatureViolation>,
    /// Units processed per node.
    pub processed: Vec<Units>,
    pub travel: Units,
    pub waiting: Units,
    pub idle: Units,
}

impl TimelineTrace {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn peak_temperature(&self, node: Node) -> f64 {
        self.temperatures
            .iter()
            .map(|row| row[node])
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Nodes whose processed amount differs from their processing time, as
    /// `(node, processed, required)`.
    pub fn unfinished(&self, inst: &Instance) -> Vec<(Node, Units, Units)> {
        self.processed
            .iter()
            .zip(inst.processing())
            .enumerate()
            .filter(|(_, (done, need))| done != need)
            .map(|(i, (&done, &need))| (i, done, need))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    UnknownNode { visit: usize, node: Node },
    /// `depart - arrive != process + wait`.
    VisitLength { visit: usize },
    /// The visit starts before the salesman can get there.
    EarlyArrival { visit: usize, earliest: Units, arrive: Units },
    DurationMismatch { declared: Units, simulated: Units },
}

impl fmt::Display for ScheduleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScheduleError::UnknownNode { visit, node } => {
                write!(f, "visit {visit} names unknown node {node}")
            }
            ScheduleError::VisitLength { visit } => {
                write!(f, "visit {visit}: depart - arrive differs from process + wait")
            }
            ScheduleError::EarlyArrival {
                visit,
                earliest,
                arrive,
            } => write!(
                f,
                "visit {visit} arrives at {arrive} but cannot be reached before {earliest}"
            ),
            ScheduleError::DurationMismatch {
                declared,
                simulated,
            } => write!(f, "declared duration {declared}, simulated {simulated}"),
        }
    }
}

impl core::error::Error for ScheduleError {}

struct Recorder<'a> {
    inst: &'a Instance,
    state: ThermalState,
    trace: TimelineTrace,
}

impl<'a> Recorder<'a> {
    fn new(inst: &'a Instance) -> Self {
        let n = inst.n();
        let state = ThermalState::new(n);
        let row0 = (0..n).map(|i| state.temperature(i, false, inst.profile())).collect();
        Self {
            inst,
            trace: TimelineTrace {
                counters: vec![vec![0; n]],
                temperatures: vec![row0],
                activity: Vec::new(),
                duration: 0,
                violations: Vec::new(),
                processed: vec![0; n],
                travel: 0,
                waiting: 0,
                idle: 0,
            },
            state,
        }
    }

    fn tick(&mut self, activity: Activity) {
        let processed = match activity {
            Activity::Process(i) => Some(i),
            _ => None,
        };
        match activity {
            Activity::Travel { .. } => self.trace.travel += 1,
            Activity::Idle(_) => self.trace.idle += 1,
            Activity::Wait(_) => self.trace.waiting += 1,
            Activity::Process(i) => self.trace.processed[i] += 1,
        }
        self.state.advance(processed);
        self.trace.duration += 1;
        let t = self.trace.duration;
        let max_temp = self.inst.max_temp();
        let profile = self.inst.profile();
        let row: Vec<f64> = (0..self.inst.n())
            .map(|i| self.state.temperature(i, processed == Some(i), profile))
            .collect();
        for (node, &temperature) in row.iter().enumerate() {
            if temperature > max_temp {
                self.trace.violations.push(TemperatureViolation {
                    t,
                    node,
                    temperature,
                });
            }
        }
        self.trace.counters.push(self.state.counters().to_vec());
        self.trace.temperatures.push(row);
        self.trace.activity.push(activity);
    }

    fn travel(&mut self, from: Node, to: Node) {
        for _ in 0..self.inst.distance(from, to) {
            self.tick(Activity::Travel { from, to });
        }
    }
}

/// Replays `sched` unit by unit.
///
/// Within a visit, a unit is processed whenever the node can take it
/// without exceeding `B`; otherwise one of the visit's declared waiting
/// units is spent. When the declared waiting runs out the unit is processed
/// anyway and the overheating is recorded as a violation. Declared waiting
/// left after the work is done is spent at the node. Gaps between the end
/// of travel and a later declared arrival are idle time.
pub fn simulate_timeline(sched: &Schedule, inst: &Instance) -> Result<TimelineTrace, ScheduleError> {
    let n = inst.n();
    let mut rec = Recorder::new(inst);
    if sched.visits.is_empty() {
        return if sched.duration == 0 {
            Ok(rec.trace)
        } else {
            Err(ScheduleError::DurationMismatch {
                declared: sched.duration,
                simulated: 0,
            })
        };
    }
    if sched.start >= n {
        return Err(ScheduleError::UnknownNode {
            visit: 0,
            node: sched.start,
        });
    }
    let max_temp = inst.max_temp();
    let increase = inst.profile().increase;
    let mut pos = sched.start;
    for (k, v) in sched.visits.iter().enumerate() {
        if v.node >= n {
            return Err(ScheduleError::UnknownNode {
                visit: k,
                node: v.node,
            });
        }
        if v.depart < v.arrive || v.depart - v.arrive != v.process + v.wait {
            return Err(ScheduleError::VisitLength { visit: k });
        }
        rec.travel(pos, v.node);
        pos = v.node;
        let earliest = rec.trace.duration;
        if v.arrive < earliest {
            return Err(ScheduleError::EarlyArrival {
                visit: k,
                earliest,
                arrive: v.arrive,
            });
        }
        while rec.trace.duration < v.arrive {
            rec.tick(Activity::Idle(v.node));
        }
        let mut left = v.process;
        let mut waits = v.wait;
        while left > 0 || waits > 0 {
            let c = rec.state.counter(v.node);
            let cool_enough = profile_value(increase, c + 1) <= max_temp;
            if left > 0 && (cool_enough || waits == 0) {
                rec.tick(Activity::Process(v.node));
                left -= 1;
            } else {
                rec.tick(Activity::Wait(v.node));
                waits -= 1;
            }
        }
    }
    rec.travel(pos, sched.start);
    let trace = rec.trace;
    if trace.duration != sched.duration {
        return Err(ScheduleError::DurationMismatch {
            declared: sched.duration,
            simulated: trace.duration,
        });
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceLimits {
    pub max_nodes: usize,
    pub max_total_processing: Units,
}

impl Default for BruteForceLimits {
    fn default() -> Self {
        Self {
            max_nodes: 4,
            max_total_processing: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    TooLarge { n: usize, total_processing: Units },
    InvalidInstance,
    Simulation(ScheduleError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge {
                n,
                total_processing,
            } => write!(
                f,
                "instance too large for exhaustive search (n = {n}, total processing = {total_processing})"
            ),
            OracleError::InvalidInstance => write!(f, "instance violates the model assumptions"),
            OracleError::Simulation(e) => write!(f, "witness replay failed: {e}"),
        }
    }
}

impl core::error::Error for OracleError {}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub duration: Units,
    pub schedule: Schedule,
}

/// Unit-step visit of `q` units, waiting only when forced. Returns elapsed
/// time and the final counter.
fn forced_wait_visit(c0: Units, q: Units, inst: &Instance) -> (Units, Units) {
    let increase = inst.profile().increase;
    let max_temp = inst.max_temp();
    let (mut c, mut left, mut elapsed) = (c0, q, 0);
    while left > 0 {
        if profile_value(increase, c + 1) <= max_temp {
            c += 1;
            left -= 1;
        } else {
            c = c.saturating_sub(1);
        }
        elapsed += 1;
    }
    (elapsed, c)
}

struct Search<'a> {
    inst: &'a Instance,
    remaining: Vec<Units>,
    counter: Vec<Units>,
    left_at: Vec<Units>,
    clock: Units,
    start: Node,
    path: Vec<(Node, Units)>,
    best: Units,
    best_path: Vec<(Node, Units)>,
}

impl Search<'_> {
    fn bound(&self, pos: Node) -> Units {
        let work: Units = self.remaining.iter().sum();
        let mut travel = self.inst.distance(pos, self.start);
        for (j, &left) in self.remaining.iter().enumerate() {
            if left > 0 && j != pos {
                travel = travel.max(self.inst.distance(pos, j) + self.inst.distance(j, self.start));
            }
        }
        self.clock + work + travel
    }

    fn dfs(&mut self, pos: Option<Node>) {
        if let Some(p) = pos {
            if self.bound(p) >= self.best {
                return;
            }
            if self.remaining.iter().all(|&r| r == 0) {
                self.best = self.clock + self.inst.distance(p, self.start);
                self.best_path = self.path.clone();
                return;
            }
        }
        for j in 0..self.inst.n() {
            let left = self.remaining[j];
            if left == 0 || pos == Some(j) {
                continue;
            }
            let leg = pos.map_or(0, |p| self.inst.distance(p, j));
            if pos.is_none() {
                self.start = j;
            }
            for q in (1..=left).rev() {
                let saved = (self.clock, self.counter[j], self.left_at[j]);
                self.clock += leg;
                let c = self.counter[j].saturating_sub(self.clock - self.left_at[j]);
                let (elapsed, c_end) = forced_wait_visit(c, q, self.inst);
                self.clock += elapsed;
                self.counter[j] = c_end;
                self.left_at[j] = self.clock;
                self.remaining[j] -= q;
                self.path.push((j, q));

                self.dfs(Some(j));

                self.path.pop();
                self.remaining[j] += q;
                (self.clock, self.counter[j], self.left_at[j]) = saved;
            }
        }
    }
}

/// Rebuilds the timed schedule of a `(node, amount)` sequence.
fn witness_schedule(path: &[(Node, Units)], inst: &Instance) -> Schedule {
    let n = inst.n();
    let mut counter = vec![0; n];
    let mut left_at = vec![0; n];
    let mut clock = 0;
    let start = path.first().map_or(0, |&(j, _)| j);
    let mut pos = start;
    let mut visits = Vec::with_capacity(path.len());
    for &(j, q) in path {
        clock += inst.distance(pos, j);
        let c = Units::saturating_sub(counter[j], clock - left_at[j]);
        let (elapsed, c_end) = forced_wait_visit(c, q, inst);
        visits.push(Visit {
            node: j,
            arrive: clock,
            process: q,
            wait: elapsed - q,
            depart: clock + elapsed,
        });
        clock += elapsed;
        counter[j] = c_end;
        left_at[j] = clock;
        pos = j;
    }
    clock += inst.distance(pos, start);
    Schedule {
        start,
        visits,
        duration: clock,
    }
}

/// Exact optimum of a tiny instance.
///
/// Enumerates every visit sequence: each node's processing time split into
/// any composition of positive parts, the parts interleaved in every order
/// and every node tried as the start. Two consecutive visits to the same
/// node are never generated since they replay identically to one merged
/// visit. Waiting happens only when the next unit would overheat the node.
/// Branches whose admissible lower bound cannot beat the incumbent are cut.
/// The best sequence is replayed through [`simulate_timeline`].
pub fn brute_force_optimum(
    inst: &Instance,
    limits: BruteForceLimits,
) -> Result<BruteForceResult, OracleError> {
    let n = inst.n();
    let total = inst.total_processing();
    if n > limits.max_nodes || total > limits.max_total_processing {
        return Err(OracleError::TooLarge {
            n,
            total_processing: total,
        });
    }
    if !inst.is_valid() {
        return Err(OracleError::InvalidInstance);
    }
    let mut search = Search {
        inst,
        remaining: inst.processing().to_vec(),
        counter: vec![0; n],
        left_at: vec![0; n],
        clock: 0,
        start: 0,
        path: Vec::new(),
        best: Units::MAX,
        best_path: Vec::new(),
    };
    search.dfs(None);
    let schedule = witness_schedule(&search.best_path, inst);
    let trace = simulate_timeline(&schedule, inst).map_err(OracleError::Simulation)?;
    debug_assert!(trace.is_feasible());
    debug_assert_eq!(trace.duration, search.best);
    Ok(BruteForceResult {
        duration: trace.duration,
        schedule,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TspTooLarge {
    pub n: usize,
}

impl fmt::Display for TspTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Held-Karp limited to {} nodes, got {}", HELD_KARP_MAX_NODES, self.n)
    }
}

impl core::error::Error for TspTooLarge {}

pub const HELD_KARP_MAX_NODES: usize = 15;

/// Length of the shortest closed tour through all nodes, by dynamic
/// programming over subsets anchored at node 0.
pub fn held_karp_tsp(inst: &Instance) -> Result<Units, TspTooLarge> {
    let n = inst.n();
    if n > HELD_KARP_MAX_NODES {
        return Err(TspTooLarge { n });
    }
    if n <= 1 {
        return Ok(0);
    }
    // Subsets of nodes 1..n; bit k stands for node k + 1.
    let m = n - 1;
    let full = 1usize << m;
    let mut cost = vec![Units::MAX; full * m];
    for k in 0..m {
        cost[(1 << k) * m + k] = inst.distance(0, k + 1);
    }
    for set in 1..full {
        for last in 0..m {
            if set & (1 << last) == 0 {
                continue;
            }
            let here = cost[set * m + last];
            if here == Units::MAX {
                continue;
            }
            for next in 0..m {
                if set & (1 << next) != 0 {
                    continue;
                }
                let to = set | (1 << next);
                let cand = here + inst.distance(last + 1, next + 1);
                let slot = &mut cost[to * m + next];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    Ok((0..m)
        .map(|last| cost[(full - 1) * m + last] + inst.distance(last + 1, 0))
        .min()
        .unwrap_or(0))
}
