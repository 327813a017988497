//! Solution genotypes.
//!
//! Three encodings are supported:
//!
//! - [`OneList`] (1L): a node list in which node `i` appears once per greedy
//!   split, `⌈p_i / max_consecutive⌉` times. The decoder decides how much to
//!   process at each visit.
//! - [`TwoList`] (2L): a node list with `p_i` copies of node `i` and an
//!   aligned processing-time list. Amounts may be zero.
//! - [`ThreeList`] (3L): a split list fixing the visit count of each node,
//!   plus node and processing-time lists of matching length with strictly
//!   positive amounts.
//!
//! Crossover and mutation can break the per-node totals and occurrence
//! counts; [`repair_ptl`] and [`repair_splits`] restore them.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::temperature::{Instance, TemperatureError};
use crate::{Node, Units};

/// Smallest legal amount in a two-list processing-time list.
pub const TWO_LIST_FLOOR: Units = 0;
/// Smallest legal amount in a three-list processing-time list.
pub const THREE_LIST_FLOOR: Units = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepresentationKind {
    OneList,
    TwoList,
    ThreeList,
}

impl RepresentationKind {
    pub const ALL: [RepresentationKind; 3] = [
        RepresentationKind::OneList,
        RepresentationKind::TwoList,
        RepresentationKind::ThreeList,
    ];

    pub fn label(self) -> &'static str {
        match self {
            RepresentationKind::OneList => "1L",
            RepresentationKind::TwoList => "2L",
            RepresentationKind::ThreeList => "3L",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "1L" | "1l" => Some(RepresentationKind::OneList),
            "2L" | "2l" => Some(RepresentationKind::TwoList),
            "3L" | "3l" => Some(RepresentationKind::ThreeList),
            _ => None,
        }
    }
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneList {
    pub nl: Vec<Node>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoList {
    pub nl: Vec<Node>,
    pub ptl: Vec<Units>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeList {
    pub nl: Vec<Node>,
    pub ptl: Vec<Units>,
    pub sl: Vec<Units>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Representation {
    One(OneList),
    Two(TwoList),
    Three(ThreeList),
}

impl Representation {
    pub fn kind(&self) -> RepresentationKind {
        match self {
            Representation::One(_) => RepresentationKind::OneList,
            Representation::Two(_) => RepresentationKind::TwoList,
            Representation::Three(_) => RepresentationKind::ThreeList,
        }
    }

    pub fn nl(&self) -> &[Node] {
        match self {
            Representation::One(r) => &r.nl,
            Representation::Two(r) => &r.nl,
            Representation::Three(r) => &r.nl,
        }
    }

    pub fn ptl(&self) -> Option<&[Units]> {
        match self {
            Representation::One(_) => None,
            Representation::Two(r) => Some(&r.ptl),
            Representation::Three(r) => Some(&r.ptl),
        }
    }

    pub fn sl(&self) -> Option<&[Units]> {
        match self {
            Representation::Three(r) => Some(&r.sl),
            _ => None,
        }
    }

    /// Draws a random genotype of the requested kind.
    pub fn random<R: Rng + ?Sized>(
        kind: RepresentationKind,
        inst: &Instance,
        rng: &mut R,
    ) -> Result<Self, TemperatureError> {
        Ok(match kind {
            RepresentationKind::OneList => Representation::One(random_one_list(inst, rng)?),
            RepresentationKind::TwoList => Representation::Two(random_two_list(inst, rng)),
            RepresentationKind::ThreeList => Representation::Three(random_three_list(inst, rng)),
        })
    }

    pub fn check_valid(&self, inst: &Instance) -> Vec<ReprViolation> {
        match self {
            Representation::One(r) => check_one_list(r, inst),
            Representation::Two(r) => check_two_list(r, inst),
            Representation::Three(r) => check_three_list(r, inst),
        }
    }
}

/// A broken genotype invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum ReprViolation {
    UnknownNode { position: usize, node: Node },
    OccurrenceCount { node: Node, expected: Units, found: Units },
    LengthMismatch { nl: usize, ptl: usize },
    PtlSum { node: Node, expected: Units, found: Units },
    ZeroAmount { position: usize, node: Node },
    SplitOutOfRange { node: Node, splits: Units, p: Units },
    SplitListLength { expected: usize, found: usize },
    Temperature(TemperatureError),
}

impl fmt::Display for ReprViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReprViolation::UnknownNode { position, node } => {
                write!(f, "position {position} names unknown node {node}")
            }
            ReprViolation::OccurrenceCount {
                node,
                expected,
                found,
            } => write!(f, "node {node} occurs {found} times, expected {expected}"),
            ReprViolation::LengthMismatch { nl, ptl } => {
                write!(f, "node list has {nl} entries but processing list has {ptl}")
            }
            ReprViolation::PtlSum {
                node,
                expected,
                found,
            } => write!(f, "node {node} processing amounts sum to {found}, expected {expected}"),
            ReprViolation::ZeroAmount { position, node } => {
                write!(f, "zero processing amount for node {node} at position {position}")
            }
            ReprViolation::SplitOutOfRange { node, splits, p } => {
                write!(f, "node {node} has {splits} splits, allowed range is 1..={p}")
            }
            ReprViolation::SplitListLength { expected, found } => {
                write!(f, "split list has {found} entries, expected {expected}")
            }
            ReprViolation::Temperature(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepairError {
    UnknownNode { position: usize, node: Node },
    LengthMismatch { nl: usize, ptl: usize },
    SplitListLength { expected: usize, found: usize },
    /// The node has work left but no occurrence to carry it.
    NoOccurrence { node: Node },
    /// Floors alone already exceed the node's processing time.
    Unreachable { node: Node, occurrences: usize, p: Units },
}

impl fmt::Display for RepairError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepairError::UnknownNode { position, node } => {
                write!(f, "position {position} names unknown node {node}")
            }
            RepairError::LengthMismatch { nl, ptl } => {
                write!(f, "node list has {nl} entries but processing list has {ptl}")
            }
            RepairError::SplitListLength { expected, found } => {
                write!(f, "split list has {found} entries, expected {expected}")
            }
            RepairError::NoOccurrence { node } => {
                write!(f, "node {node} has no occurrence to carry its processing time")
            }
            RepairError::Unreachable {
                node,
                occurrences,
                p,
            } => write!(
                f,
                "node {node}: {occurrences} occurrences cannot share {p} units with the amount floor"
            ),
        }
    }
}

impl core::error::Error for RepairError {}

/// Node list with `count(i)` copies of every node, shuffled uniformly.
fn shuffled_multiset<R: Rng + ?Sized>(counts: &[Units], rng: &mut R) -> Vec<Node> {
    let mut nl: Vec<Node> = counts
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| core::iter::repeat_n(i, c as usize))
        .collect();
    nl.shuffle(rng);
    nl
}

/// Throws `total` units independently onto `parts` bins.
fn random_weak_composition<R: Rng + ?Sized>(total: Units, parts: usize, rng: &mut R) -> Vec<Units> {
    let mut out = vec![0; parts];
    if parts == 0 {
        return out;
    }
    for _ in 0..total {
        out[rng.gen_range(0..parts)] += 1;
    }
    out
}

/// Uniform random composition of `total` into `parts` positive parts.
pub(crate) fn random_composition<R: Rng + ?Sized>(
    total: Units,
    parts: usize,
    rng: &mut R,
) -> Vec<Units> {
    debug_assert!(parts >= 1 && parts as Units <= total);
    // Choose parts-1 distinct cut points in 1..total.
    let mut cuts: Vec<Units> = rand::seq::index::sample(rng, (total - 1) as usize, parts - 1)
        .into_iter()
        .map(|c| c as Units + 1)
        .collect();
    cuts.sort_unstable();
    let mut out = Vec::with_capacity(parts);
    let mut prev = 0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(total - prev);
    out
}

/// Writes per-node amounts into `ptl` following each node's occurrence
/// order in `nl`.
fn scatter_amounts(nl: &[Node], per_node: &[Vec<Units>]) -> Vec<Units> {
    let mut cursor = vec![0usize; per_node.len()];
    nl.iter()
        .map(|&i| {
            let v = per_node[i][cursor[i]];
            cursor[i] += 1;
            v
        })
        .collect()
}

pub fn greedy_split_counts(inst: &Instance) -> Result<Vec<Units>, TemperatureError> {
    (0..inst.n()).map(|i| inst.max_splits(i)).collect()
}

pub fn random_one_list<R: Rng + ?Sized>(
    inst: &Instance,
    rng: &mut R,
) -> Result<OneList, TemperatureError> {
    let counts = greedy_split_counts(inst)?;
    Ok(OneList {
        nl: shuffled_multiset(&counts, rng),
    })
}

pub fn random_two_list<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> TwoList {
    let nl = shuffled_multiset(inst.processing(), rng);
    let per_node: Vec<Vec<Units>> = inst
        .processing()
        .iter()
        .map(|&p| random_weak_composition(p, p as usize, rng))
        .collect();
    let ptl = scatter_amounts(&nl, &per_node);
    TwoList { nl, ptl }
}

pub fn random_three_list<R: Rng + ?Sized>(inst: &Instance, rng: &mut R) -> ThreeList {
    let sl: Vec<Units> = inst
        .processing()
        .iter()
        .map(|&p| rng.gen_range(1..=p))
        .collect();
    three_list_with_splits(inst, sl, rng)
}

/// Random three-list genotype with a fixed split list.
pub fn three_list_with_splits<R: Rng + ?Sized>(
    inst: &Instance,
    sl: Vec<Units>,
    rng: &mut R,
) -> ThreeList {
    let nl = shuffled_multiset(&sl, rng);
    let per_node: Vec<Vec<Units>> = inst
        .processing()
        .iter()
        .zip(&sl)
        .map(|(&p, &s)| random_composition(p, s as usize, rng))
        .collect();
    let ptl = scatter_amounts(&nl, &per_node);
    ThreeList { nl, ptl, sl }
}

fn occurrence_counts(nl: &[Node], n: usize, out: &mut Vec<ReprViolation>) -> Vec<Units> {
    let mut counts = vec![0; n];
    for (position, &node) in nl.iter().enumerate() {
        if node < n {
            counts[node] += 1;
        } else {
            out.push(ReprViolation::UnknownNode { position, node });
        }
    }
    counts
}

fn check_ptl_sums(nl: &[Node], ptl: &[Units], inst: &Instance, out: &mut Vec<ReprViolation>) {
    if nl.len() != ptl.len() {
        out.push(ReprViolation::LengthMismatch {
            nl: nl.len(),
            ptl: ptl.len(),
        });
        return;
    }
    let n = inst.n();
    let mut sums = vec![0 as Units; n];
    for (&node, &amount) in nl.iter().zip(ptl) {
        if node < n {
            sums[node] += amount;
        }
    }
    for (node, (&found, &expected)) in sums.iter().zip(inst.processing()).enumerate() {
        if found != expected {
            out.push(ReprViolation::PtlSum {
                node,
                expected,
                found,
            });
        }
    }
}

fn check_counts(counts: &[Units], expected: &[Units], out: &mut Vec<ReprViolation>) {
    for (node, (&found, &expected)) in counts.iter().zip(expected).enumerate() {
        if found != expected {
            out.push(ReprViolation::OccurrenceCount {
                node,
                expected,
                found,
            });
        }
    }
}

pub fn check_one_list(ol: &OneList, inst: &Instance) -> Vec<ReprViolation> {
    let mut out = Vec::new();
    let counts = occurrence_counts(&ol.nl, inst.n(), &mut out);
    match greedy_split_counts(inst) {
        Ok(expected) => check_counts(&counts, &expected, &mut out),
        Err(e) => out.push(ReprViolation::Temperature(e)),
    }
    out
}

pub fn check_two_list(tl: &TwoList, inst: &Instance) -> Vec<ReprViolation> {
    let mut out = Vec::new();
    let counts = occurrence_counts(&tl.nl, inst.n(), &mut out);
    check_counts(&counts, inst.processing(), &mut out);
    check_ptl_sums(&tl.nl, &tl.ptl, inst, &mut out);
    out
}

pub fn check_three_list(tl: &ThreeList, inst: &Instance) -> Vec<ReprViolation> {
    let mut out = Vec::new();
    let n = inst.n();
    let counts = occurrence_counts(&tl.nl, n, &mut out);
    if tl.sl.len() != n {
        out.push(ReprViolation::SplitListLength {
            expected: n,
            found: tl.sl.len(),
        });
    } else {
        for (node, (&splits, &p)) in tl.sl.iter().zip(inst.processing()).enumerate() {
            if splits < 1 || splits > p {
                out.push(ReprViolation::SplitOutOfRange { node, splits, p });
            }
        }
        check_counts(&counts, &tl.sl, &mut out);
    }
    check_ptl_sums(&tl.nl, &tl.ptl, inst, &mut out);
    for (position, (&node, &amount)) in tl.nl.iter().zip(&tl.ptl).enumerate() {
        if amount == 0 {
            out.push(ReprViolation::ZeroAmount { position, node });
        }
    }
    out
}

fn positions_by_node(nl: &[Node], n: usize) -> Result<Vec<Vec<usize>>, RepairError> {
    let mut by_node = vec![Vec::new(); n];
    for (position, &node) in nl.iter().enumerate() {
        if node >= n {
            return Err(RepairError::UnknownNode { position, node });
        }
        by_node[node].push(position);
    }
    Ok(by_node)
}

/// Restores `Σ ptl[occurrences of i] = p_i` for every node by random unit
/// steps: while a node's sum is too large a random occurrence above `floor`
/// loses one unit, while it is too small a random occurrence gains one.
/// Entries below `floor` are first raised to it.
///
/// Lists that already satisfy the sums are left untouched and no random
/// numbers are drawn for them.
pub fn repair_ptl<R: Rng + ?Sized>(
    nl: &[Node],
    ptl: &mut [Units],
    inst: &Instance,
    floor: Units,
    rng: &mut R,
) -> Result<(), RepairError> {
    if nl.len() != ptl.len() {
        return Err(RepairError::LengthMismatch {
            nl: nl.len(),
            ptl: ptl.len(),
        });
    }
    let by_node = positions_by_node(nl, inst.n())?;
    for (node, positions) in by_node.iter().enumerate() {
        let p = inst.p(node);
        if positions.is_empty() {
            if p > 0 {
                return Err(RepairError::NoOccurrence { node });
            }
            continue;
        }
        if floor.saturating_mul(positions.len() as Units) > p {
            return Err(RepairError::Unreachable {
                node,
                occurrences: positions.len(),
                p,
            });
        }
        for &pos in positions {
            if ptl[pos] < floor {
                ptl[pos] = floor;
            }
        }
        let mut sum: Units = positions.iter().map(|&pos| ptl[pos]).sum();
        if sum > p {
            let mut reducible: Vec<usize> =
                positions.iter().copied().filter(|&pos| ptl[pos] > floor).collect();
            while sum > p {
                let k = rng.gen_range(0..reducible.len());
                let pos = reducible[k];
                ptl[pos] -= 1;
                sum -= 1;
                if ptl[pos] == floor {
                    reducible.swap_remove(k);
                }
            }
        }
        while sum < p {
            let pos = positions[rng.gen_range(0..positions.len())];
            ptl[pos] += 1;
            sum += 1;
        }
    }
    Ok(())
}

pub fn repair_two_list<R: Rng + ?Sized>(
    tl: &mut TwoList,
    inst: &Instance,
    rng: &mut R,
) -> Result<(), RepairError> {
    repair_ptl(&tl.nl, &mut tl.ptl, inst, TWO_LIST_FLOOR, rng)
}

/// Makes the node and processing lists agree with the split list.
///
/// Surplus occurrences of a node are removed at random and their amounts
/// are handed to random surviving occurrences of the same node. Missing
/// occurrences are inserted at uniformly random positions, each taking one
/// unit from a random occurrence that can spare it. [`repair_ptl`] then
/// restores the per-node sums. The split list itself is never changed.
pub fn repair_splits<R: Rng + ?Sized>(
    tl: &mut ThreeList,
    inst: &Instance,
    rng: &mut R,
) -> Result<(), RepairError> {
    let n = inst.n();
    if tl.sl.len() != n {
        return Err(RepairError::SplitListLength {
            expected: n,
            found: tl.sl.len(),
        });
    }
    if tl.nl.len() != tl.ptl.len() {
        return Err(RepairError::LengthMismatch {
            nl: tl.nl.len(),
            ptl: tl.ptl.len(),
        });
    }
    let by_node = positions_by_node(&tl.nl, n)?;

    // Removals.
    let mut keep = vec![true; tl.nl.len()];
    let mut removed_any = false;
    for (node, positions) in by_node.iter().enumerate() {
        let target = tl.sl[node] as usize;
        if positions.len() <= target || target == 0 {
            continue;
        }
        removed_any = true;
        let mut shuffled = positions.clone();
        shuffled.shuffle(rng);
        let (survivors, dropped) = shuffled.split_at(target);
        for &pos in dropped {
            keep[pos] = false;
            let heir = survivors[rng.gen_range(0..survivors.len())];
            tl.ptl[heir] += tl.ptl[pos];
        }
    }
    if removed_any {
        let mut k = 0;
        tl.nl.retain(|_| {
            k += 1;
            keep[k - 1]
        });
        let mut k = 0;
        tl.ptl.retain(|_| {
            k += 1;
            keep[k - 1]
        });
    }

    // Insertions.
    let mut counts = vec![0 as Units; n];
    for &node in &tl.nl {
        counts[node] += 1;
    }
    for node in 0..n {
        while counts[node] < tl.sl[node] {
            let donors: Vec<usize> = tl
                .nl
                .iter()
                .zip(&tl.ptl)
                .enumerate()
                .filter(|&(_, (&i, &amount))| i == node && amount > THREE_LIST_FLOOR)
                .map(|(pos, _)| pos)
                .collect();
            if let Some(&donor) = donors.choose(rng) {
                tl.ptl[donor] -= 1;
            }
            let at = rng.gen_range(0..=tl.nl.len());
            tl.nl.insert(at, node);
            tl.ptl.insert(at, THREE_LIST_FLOOR);
            counts[node] += 1;
        }
    }

    repair_ptl(&tl.nl, &mut tl.ptl, inst, THREE_LIST_FLOOR, rng)
}

/// Full three-list repair: occurrence counts, then amounts.
pub fn repair_three_list<R: Rng + ?Sized>(
    tl: &mut ThreeList,
    inst: &Instance,
    rng: &mut R,
) -> Result<(), RepairError> {
    repair_splits(tl, inst, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temperature::{ProfileKind, ProfilePair};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn example() -> Instance {
        let rows = vec![vec![0, 4, 5], vec![4, 0, 3], vec![5, 3, 0]];
        Instance::new(vec![5, 6, 2], &rows, 3.0, ProfilePair::uniform(ProfileKind::Linear)).unwrap()
    }

    fn single(p: Units) -> Instance {
        Instance::new(vec![p], &[vec![0]], 3.0, ProfilePair::uniform(ProfileKind::Linear)).unwrap()
    }

    fn sorted(mut v: Vec<Node>) -> Vec<Node> {
        v.sort_unstable();
        v
    }

    #[test]
    fn one_list_multiset_matches_greedy_splits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ol = random_one_list(&example(), &mut rng).unwrap();
        assert_eq!(sorted(ol.nl), vec![0, 0, 1, 1, 2]);
        assert_eq!(random_one_list(&single(3), &mut rng).unwrap().nl, vec![0]);
    }

    #[test]
    fn one_list_two_unit_jobs() {
        let rows = vec![vec![0, 5], vec![5, 0]];
        for kind in ProfileKind::ALL {
            let inst = Instance::new(vec![1, 1], &rows, 3.0, ProfilePair::uniform(kind)).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            let ol = random_one_list(&inst, &mut rng).unwrap();
            assert_eq!(sorted(ol.nl), vec![0, 1]);
        }
    }

    #[test]
    fn two_list_lengths() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let tl = random_two_list(&example(), &mut rng);
        assert_eq!(tl.nl.len(), 13);
        assert_eq!(tl.ptl.len(), 13);
        assert!(check_two_list(&tl, &example()).is_empty());

        let tl = random_two_list(&single(2), &mut rng);
        assert_eq!(tl.nl, vec![0, 0]);
        assert_eq!(tl.ptl.iter().sum::<Units>(), 2);
    }

    #[test]
    fn three_list_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let tl = three_list_with_splits(&single(2), vec![1], &mut rng);
        assert_eq!((tl.nl, tl.ptl), (vec![0], vec![2]));

        let tl = three_list_with_splits(&example(), vec![2, 3, 1], &mut rng);
        assert_eq!(tl.nl.len(), 6);
        assert!(check_three_list(&tl, &example()).is_empty());

        let tl = three_list_with_splits(&example(), vec![5, 6, 2], &mut rng);
        assert!(tl.ptl.iter().all(|&a| a == 1));
    }

    #[test]
    fn worked_example_lists_are_valid() {
        let inst = example();
        let two = TwoList {
            nl: vec![0, 0, 1, 1, 1, 0, 2, 2, 1, 1, 0, 0, 1],
            ptl: vec![2, 0, 1, 0, 1, 2, 2, 0, 1, 3, 0, 1, 0],
        };
        assert!(check_two_list(&two, &inst).is_empty());
        let three = ThreeList {
            nl: vec![0, 1, 0, 1, 2, 1],
            ptl: vec![3, 1, 2, 2, 2, 3],
            sl: vec![2, 3, 1],
        };
        assert!(check_three_list(&three, &inst).is_empty());
        let one = OneList {
            nl: vec![1, 0, 2, 0, 1],
        };
        assert!(check_one_list(&one, &inst).is_empty());
    }

    #[test]
    fn repair_ptl_increments_short_sum() {
        let inst = single(5);
        let nl = vec![0; 5];
        let mut ptl = vec![2, 0, 1, 0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        repair_ptl(&nl, &mut ptl, &inst, TWO_LIST_FLOOR, &mut rng).unwrap();
        assert_eq!(ptl.iter().sum::<Units>(), 5);
        let changed: Vec<_> = ptl
            .iter()
            .zip([2, 0, 1, 0, 1])
            .filter(|(a, b)| **a != *b)
            .collect();
        assert_eq!(changed.len(), 1);
    }

    #[test]
    fn repair_ptl_decrements_long_sum() {
        let inst = single(5);
        let nl = vec![0; 5];
        for seed in 0..50 {
            let mut ptl = vec![3, 0, 2, 0, 2];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            repair_ptl(&nl, &mut ptl, &inst, TWO_LIST_FLOOR, &mut rng).unwrap();
            assert_eq!(ptl.iter().sum::<Units>(), 5);
            assert!(ptl.iter().zip([3, 0, 2, 0, 2]).all(|(a, b)| *a <= b));
        }
    }

    #[test]
    fn repair_ptl_three_list_floor() {
        // Every reachable outcome of (3,3) -> sum 4 with entries >= 1.
        let inst = single(4);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let mut ptl = vec![3, 3];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            repair_ptl(&[0, 0], &mut ptl, &inst, THREE_LIST_FLOOR, &mut rng).unwrap();
            seen.insert((ptl[0], ptl[1]));
        }
        let expected: std::collections::BTreeSet<_> = [(1, 3), (2, 2), (3, 1)].into_iter().collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn repair_ptl_unreachable_floor() {
        let inst = single(2);
        let mut ptl = vec![1, 1, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(
            repair_ptl(&[0, 0, 0], &mut ptl, &inst, THREE_LIST_FLOOR, &mut rng),
            Err(RepairError::Unreachable {
                node: 0,
                occurrences: 3,
                p: 2
            })
        );
    }

    #[test]
    fn repair_splits_removes_surplus() {
        let inst = single(4);
        let mut tl = ThreeList {
            nl: vec![0, 0, 0],
            ptl: vec![1, 1, 2],
            sl: vec![2],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        repair_splits(&mut tl, &inst, &mut rng).unwrap();
        assert_eq!(tl.nl, vec![0, 0]);
        assert_eq!(tl.ptl.iter().sum::<Units>(), 4);
        assert!(check_three_list(&tl, &inst).is_empty());
    }

    #[test]
    fn repair_splits_inserts_missing() {
        // Compositions of 4 into 3 positive parts: (1,1,2),(1,2,1),(2,1,1).
        let inst = single(4);
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let mut tl = ThreeList {
                nl: vec![0],
                ptl: vec![4],
                sl: vec![3],
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            repair_splits(&mut tl, &inst, &mut rng).unwrap();
            assert_eq!(tl.nl, vec![0, 0, 0]);
            assert!(check_three_list(&tl, &inst).is_empty());
            seen.insert(tl.ptl.clone());
        }
        assert_eq!(seen.len(), 3);
    }

    #[test]
    fn repair_splits_identity_on_valid() {
        let inst = example();
        let tl = ThreeList {
            nl: vec![0, 1, 0, 1, 2, 1],
            ptl: vec![3, 1, 2, 2, 2, 3],
            sl: vec![2, 3, 1],
        };
        let mut fixed = tl.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        repair_splits(&mut fixed, &inst, &mut rng).unwrap();
        assert_eq!(fixed, tl);
    }

    #[test]
    fn check_valid_reports_named_node() {
        let inst = example();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut two = random_two_list(&inst, &mut rng);
        let pos = two.nl.iter().position(|&i| i == 2).unwrap();
        two.ptl[pos] += 1;
        let v = check_two_list(&two, &inst);
        assert_eq!(
            v,
            vec![ReprViolation::PtlSum {
                node: 2,
                expected: 2,
                found: 3
            }]
        );

        let three = ThreeList {
            nl: vec![0, 1, 0, 1, 2, 1],
            ptl: vec![3, 1, 2, 2, 2, 0],
            sl: vec![2, 3, 1],
        };
        let v = check_three_list(&three, &inst);
        assert!(v.contains(&ReprViolation::ZeroAmount { position: 5, node: 1 }));
    }

    #[test]
    fn labels_round_trip() {
        for kind in RepresentationKind::ALL {
            assert_eq!(RepresentationKind::from_label(kind.label()), Some(kind));
        }
        assert_eq!(RepresentationKind::from_label("4L"), None);
    }
}
