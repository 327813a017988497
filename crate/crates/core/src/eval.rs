//! Decoding genotypes into timed schedules.
//!
//! The salesman starts at the first node of the decoded visit order at time
//! zero and must end back there. Between two distinct nodes it travels for
//! `d[i][j]` units; at a node it processes the requested amount one unit at
//! a time, waiting a unit whenever the next processed unit would push the
//! node above the maximum temperature. Every node not being processed cools
//! down by one counter step per time unit, including while the salesman is
//! busy elsewhere.

use alloc::vec;
use alloc::vec::Vec;

use crate::repr::{OneList, Representation};
use crate::temperature::{max_consecutive, Instance, ProfileKind, TemperatureError};
use crate::{Node, Units};

/// One stint of the salesman at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Visit {
    pub node: Node,
    pub arrive: Units,
    pub process: Units,
    pub wait: Units,
    pub depart: Units,
}

/// Decoded phenotype of a genotype.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    /// Node where the tour starts and ends.
    pub start: Node,
    pub visits: Vec<Visit>,
    /// Time at which the salesman is back at `start` with all work done.
    pub duration: Units,
}

impl Schedule {
    /// Nodes in visit order.
    pub fn order(&self) -> impl Iterator<Item = Node> + '_ {
        self.visits.iter().map(|v| v.node)
    }
}

/// Objective value split into its components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ObjectiveBreakdown {
    pub processing: Units,
    pub travel: Units,
    pub waiting: Units,
    pub total: Units,
}

impl ObjectiveBreakdown {
    pub fn new(processing: Units, travel: Units, waiting: Units) -> Self {
        Self {
            processing,
            travel,
            waiting,
            total: processing + travel + waiting,
        }
    }
}

/// Result of a single visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VisitOutcome {
    pub elapsed: Units,
    /// Counter value when the salesman leaves.
    pub counter: Units,
}

impl VisitOutcome {
    pub fn waiting(&self, processed: Units) -> Units {
        self.elapsed - processed
    }
}

/// Counter after `elapsed` idle units.
pub fn decay(c: Units, elapsed: Units) -> Units {
    c.saturating_sub(elapsed)
}

/// Processes `q` units at a node whose counter is `c0` on arrival, waiting
/// a unit whenever `f1(c + 1) > B`.
pub fn visit_time(
    c0: Units,
    q: Units,
    kind: ProfileKind,
    max_temp: f64,
) -> Result<VisitOutcome, TemperatureError> {
    let burst = max_consecutive(kind, max_temp)?;
    Ok(visit_with_burst(c0, q, burst))
}

/// [`visit_time`] with the burst length already known. Because `f1` is
/// increasing, `f1(c + 1) <= B` is equivalent to `c + 1 <= burst`.
pub fn visit_with_burst(c0: Units, q: Units, burst: Units) -> VisitOutcome {
    debug_assert!(burst >= 1);
    let mut c = c0;
    let mut left = q;
    let mut elapsed = 0;
    // A hot node first has to cool down below the burst limit.
    while left > 0 {
        if c < burst {
            let run = (burst - c).min(left);
            c += run;
            left -= run;
            elapsed += run;
        } else {
            c -= 1;
            elapsed += 1;
        }
    }
    VisitOutcome { elapsed, counter: c }
}

/// Total travel of a closed tour visiting `order` and returning to `start`.
/// Repeated consecutive nodes cost nothing.
pub fn tour_travel(order: &[Node], inst: &Instance, start: Node) -> Units {
    let mut total = 0;
    let mut pos = start;
    for &node in order {
        total += inst.distance(pos, node);
        pos = node;
    }
    total + inst.distance(pos, start)
}

/// Shared bookkeeping of both decoders.
struct Tour<'a> {
    inst: &'a Instance,
    burst: Units,
    counter: Vec<Units>,
    left_at: Vec<Units>,
    clock: Units,
    pos: Option<Node>,
    start: Node,
    visits: Vec<Visit>,
    travel: Units,
    waiting: Units,
    processing: Units,
}

impl<'a> Tour<'a> {
    fn new(inst: &'a Instance, burst: Units, capacity: usize) -> Self {
        let n = inst.n();
        Self {
            inst,
            burst,
            counter: vec![0; n],
            left_at: vec![0; n],
            clock: 0,
            pos: None,
            start: 0,
            visits: Vec::with_capacity(capacity),
            travel: 0,
            waiting: 0,
            processing: 0,
        }
    }

    /// Moves to `node` and returns its counter on arrival.
    fn arrive(&mut self, node: Node) -> Units {
        match self.pos {
            None => self.start = node,
            Some(from) => {
                let leg = self.inst.distance(from, node);
                self.travel += leg;
                self.clock += leg;
            }
        }
        self.pos = Some(node);
        decay(self.counter[node], self.clock - self.left_at[node])
    }

    fn work(&mut self, node: Node, c: Units, q: Units) {
        let outcome = visit_with_burst(c, q, self.burst);
        let arrive = self.clock;
        let wait = outcome.waiting(q);
        self.clock += outcome.elapsed;
        self.counter[node] = outcome.counter;
        self.left_at[node] = self.clock;
        self.processing += q;
        self.waiting += wait;
        self.visits.push(Visit {
            node,
            arrive,
            process: q,
            wait,
            depart: self.clock,
        });
    }

    fn finish(mut self) -> (Schedule, ObjectiveBreakdown) {
        if let Some(last) = self.pos {
            let leg = self.inst.distance(last, self.start);
            self.travel += leg;
            self.clock += leg;
        }
        let breakdown = ObjectiveBreakdown::new(self.processing, self.travel, self.waiting);
        debug_assert_eq!(breakdown.total, self.clock);
        (
            Schedule {
                start: self.start,
                visits: self.visits,
                duration: self.clock,
            },
            breakdown,
        )
    }
}

/// Greedy decoder of the single-list genotype.
///
/// Each visit processes as much as the node's current counter allows
/// without waiting. A node's last occurrence in the list finishes its
/// remaining work, waiting where needed. Occurrences of finished nodes are
/// skipped. Arriving at a node that is still at its burst limit on a
/// non-final occurrence processes one unit after the forced cool-down.
pub fn evaluate_greedy(
    ol: &OneList,
    inst: &Instance,
) -> Result<(Schedule, ObjectiveBreakdown), TemperatureError> {
    let burst = inst.max_consecutive()?;
    let n = inst.n();
    let mut last = vec![usize::MAX; n];
    for (idx, &node) in ol.nl.iter().enumerate() {
        last[node] = idx;
    }
    let mut remaining = inst.processing().to_vec();
    let mut tour = Tour::new(inst, burst, ol.nl.len());
    for (idx, &node) in ol.nl.iter().enumerate() {
        let left = remaining[node];
        if left == 0 {
            continue;
        }
        let c = tour.arrive(node);
        let q = if idx == last[node] {
            left
        } else {
            left.min(burst - c).max(1)
        };
        tour.work(node, c, q);
        remaining[node] -= q;
    }
    Ok(tour.finish())
}

/// Decoder of the two- and three-list genotypes: every occurrence processes
/// exactly its listed amount. Zero-amount occurrences are still travelled
/// to.
pub fn evaluate_ptl(
    nl: &[Node],
    ptl: &[Units],
    inst: &Instance,
) -> Result<(Schedule, ObjectiveBreakdown), TemperatureError> {
    let burst = inst.max_consecutive()?;
    let mut tour = Tour::new(inst, burst, nl.len());
    for (&node, &q) in nl.iter().zip(ptl) {
        let c = tour.arrive(node);
        tour.work(node, c, q);
    }
    Ok(tour.finish())
}

/// Decodes any genotype with the decoder matching its kind.
pub fn evaluate(
    repr: &Representation,
    inst: &Instance,
) -> Result<(Schedule, ObjectiveBreakdown), TemperatureError> {
    match repr {
        Representation::One(r) => evaluate_greedy(r, inst),
        Representation::Two(r) => evaluate_ptl(&r.nl, &r.ptl, inst),
        Representation::Three(r) => evaluate_ptl(&r.nl, &r.ptl, inst),
    }
}
