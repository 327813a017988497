//! Elitist genetic algorithm over the three genotypes.
//!
//! Each generation draws parent pairs (one by a four-way tournament over
//! the whole population, one uniformly from the elite set), applies a
//! one-point crossover, mutates and repairs each child, and evaluates it.
//! Once `|P| - |R|` children exist, the `|R|` elites of the previous
//! generation and the best children form the next population. The search
//! stops when the evaluation budget is spent.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{evaluate, ObjectiveBreakdown};
use crate::repr::{
    greedy_split_counts, repair_ptl, repair_splits, repair_two_list, OneList, RepairError,
    Representation, RepresentationKind, ThreeList, TwoList, THREE_LIST_FLOOR, TWO_LIST_FLOOR,
};
use crate::temperature::{Instance, TemperatureError};
use crate::{Node, Units};

/// Tournament size for the first parent.
pub const TOURNAMENT_SIZE: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub elite_size: usize,
    pub m_nl: f64,
    pub m_ptl: f64,
    pub m_sl: f64,
    /// Number of evaluated solutions, initial population included.
    pub budget: usize,
    pub kind: RepresentationKind,
    pub seed: u64,
}

impl GaParams {
    /// Tuned defaults per genotype.
    pub fn defaults(kind: RepresentationKind) -> Self {
        let (m_nl, m_ptl, m_sl) = match kind {
            RepresentationKind::OneList => (0.90, 0.0, 0.0),
            RepresentationKind::TwoList => (0.90, 0.05, 0.0),
            RepresentationKind::ThreeList => (0.10, 0.02, 0.01),
        };
        Self {
            population_size: 50,
            elite_size: 5,
            m_nl,
            m_ptl,
            m_sl,
            budget: 5000,
            kind,
            seed: 0,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_budget(self, budget: usize) -> Self {
        Self { budget, ..self }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.elite_size == 0 || self.elite_size >= self.population_size {
            return Err(ParamError::EliteSize {
                elite: self.elite_size,
                population: self.population_size,
            });
        }
        for (name, rate) in [("m_nl", self.m_nl), ("m_ptl", self.m_ptl), ("m_sl", self.m_sl)] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(ParamError::Rate { name, rate });
            }
        }
        if self.budget < self.population_size {
            return Err(ParamError::Budget {
                budget: self.budget,
                population: self.population_size,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParamError {
    EliteSize { elite: usize, population: usize },
    Rate { name: &'static str, rate: f64 },
    Budget { budget: usize, population: usize },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::EliteSize { elite, population } => write!(
                f,
                "elite size {elite} must satisfy 0 < |R| < |P| = {population}"
            ),
            ParamError::Rate { name, rate } => write!(f, "{name} = {rate} is not in [0, 1]"),
            ParamError::Budget { budget, population } => write!(
                f,
                "budget {budget} is smaller than the population size {population}"
            ),
        }
    }
}

impl core::error::Error for ParamError {}

#[derive(Debug, Clone, PartialEq)]
pub enum GaError {
    Params(ParamError),
    Temperature(TemperatureError),
    Repair(RepairError),
}

impl fmt::Display for GaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaError::Params(e) => write!(f, "invalid parameters: {e}"),
            GaError::Temperature(e) => write!(f, "{e}"),
            GaError::Repair(e) => write!(f, "repair failed: {e}"),
        }
    }
}

impl core::error::Error for GaError {}

impl From<ParamError> for GaError {
    fn from(e: ParamError) -> Self {
        GaError::Params(e)
    }
}

impl From<TemperatureError> for GaError {
    fn from(e: TemperatureError) -> Self {
        GaError::Temperature(e)
    }
}

impl From<RepairError> for GaError {
    fn from(e: RepairError) -> Self {
        GaError::Repair(e)
    }
}

/// A genotype with its cached objective.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub repr: Representation,
    pub objective: ObjectiveBreakdown,
}

impl Individual {
    pub fn evaluate(repr: Representation, inst: &Instance) -> Result<Self, TemperatureError> {
        let (_, objective) = evaluate(&repr, inst)?;
        Ok(Self { repr, objective })
    }

    pub fn total(&self) -> Units {
        self.objective.total
    }
}

/// Members plus the indices of the `|R|` best, best first. Ties go to the
/// lower index.
#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    members: Vec<Individual>,
    elite: Vec<usize>,
}

fn ranked(members: &[Individual]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..members.len()).collect();
    idx.sort_by_key(|&i| members[i].total());
    idx
}

impl Population {
    pub fn new(members: Vec<Individual>, elite_size: usize) -> Self {
        let mut elite = ranked(&members);
        elite.truncate(elite_size.min(members.len()));
        Self { members, elite }
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn elite_indices(&self) -> &[usize] {
        &self.elite
    }

    pub fn elite(&self) -> impl Iterator<Item = &Individual> {
        self.elite.iter().map(|&i| &self.members[i])
    }

    pub fn best(&self) -> &Individual {
        &self.members[self.elite[0]]
    }

    pub fn mean_total(&self) -> f64 {
        let sum: Units = self.members.iter().map(Individual::total).sum();
        sum as f64 / self.members.len() as f64
    }
}

/// Index of the best contender; the first one drawn wins ties.
pub fn tournament_winner(pop: &Population, contenders: &[usize]) -> usize {
    let mut best = contenders[0];
    for &i in &contenders[1..] {
        if pop.members[i].total() < pop.members[best].total() {
            best = i;
        }
    }
    best
}

/// First parent: best of four distinct uniformly drawn members. Second
/// parent: a uniform draw from the elite set. The two may coincide.
pub fn select_parents<'a, R: Rng + ?Sized>(
    pop: &'a Population,
    rng: &mut R,
) -> (&'a Individual, &'a Individual) {
    let k = TOURNAMENT_SIZE.min(pop.len());
    let drawn = rand::seq::index::sample(rng, pop.len(), k).into_vec();
    let first = tournament_winner(pop, &drawn);
    let second = *pop.elite.choose(rng).expect("elite set is never empty");
    (&pop.members[first], &pop.members[second])
}

#[derive(Clone, Copy)]
enum Source {
    First(usize),
    Second(usize),
}

/// Child layout of a one-point crossover: `first[..cut]` verbatim, then the
/// entries of `second` in order, skipping for each node as many of its
/// leading occurrences as the prefix already holds and stopping once the
/// node reaches `quota`.
fn splice(first: &[Node], second: &[Node], cut: usize, quota: &[Units]) -> Vec<Source> {
    let mut held = vec![0 as Units; quota.len()];
    let mut out = Vec::with_capacity(first.len().max(second.len()));
    for (k, &node) in first[..cut].iter().enumerate() {
        held[node] += 1;
        out.push(Source::First(k));
    }
    let prefix = held.clone();
    let mut seen = vec![0 as Units; quota.len()];
    for (k, &node) in second.iter().enumerate() {
        let rank = seen[node];
        seen[node] += 1;
        if rank < prefix[node] || held[node] >= quota[node] {
            continue;
        }
        held[node] += 1;
        out.push(Source::Second(k));
    }
    out
}

fn occurrence_counts(nl: &[Node], n: usize) -> Vec<Units> {
    let mut counts = vec![0; n];
    for &i in nl {
        counts[i] += 1;
    }
    counts
}

/// One-point crossover of node lists sharing the same multiset.
///
/// The child keeps `p1[..point]` and is completed from `p2` in order,
/// skipping the occurrences of each node that the prefix already covers.
pub fn crossover_nl(p1: &[Node], p2: &[Node], point: usize, n: usize) -> Vec<Node> {
    let quota = occurrence_counts(p1, n);
    splice(p1, p2, point, &quota)
        .into_iter()
        .map(|s| match s {
            Source::First(k) => p1[k],
            Source::Second(k) => p2[k],
        })
        .collect()
}

fn splice_lists(
    first: (&[Node], &[Units]),
    second: (&[Node], &[Units]),
    cut: usize,
    quota: &[Units],
) -> (Vec<Node>, Vec<Units>) {
    splice(first.0, second.0, cut, quota)
        .into_iter()
        .map(|s| match s {
            Source::First(k) => (first.0[k], first.1[k]),
            Source::Second(k) => (second.0[k], second.1[k]),
        })
        .unzip()
}

pub fn crossover_one_list<R: Rng + ?Sized>(
    p1: &OneList,
    p2: &OneList,
    inst: &Instance,
    rng: &mut R,
) -> (OneList, OneList) {
    let point = rng.gen_range(0..=p1.nl.len());
    (
        OneList {
            nl: crossover_nl(&p1.nl, &p2.nl, point, inst.n()),
        },
        OneList {
            nl: crossover_nl(&p2.nl, &p1.nl, point, inst.n()),
        },
    )
}

/// One-point crossover of two-list genotypes with a single cut shared by
/// both lists. Amounts travel with their node occurrences; per-node sums
/// are repaired afterwards.
pub fn crossover_2l<R: Rng + ?Sized>(
    p1: &TwoList,
    p2: &TwoList,
    inst: &Instance,
    rng: &mut R,
) -> Result<(TwoList, TwoList), RepairError> {
    let point = rng.gen_range(0..=p1.nl.len());
    let quota = inst.processing();
    let mut children = [(&p1, &p2), (&p2, &p1)].map(|(a, b)| {
        let (nl, ptl) = splice_lists((&a.nl, &a.ptl), (&b.nl, &b.ptl), point, quota);
        TwoList { nl, ptl }
    });
    for child in children.iter_mut() {
        repair_two_list(child, inst, rng)?;
    }
    let [a, b] = children;
    Ok((a, b))
}

/// Crossover of three-list genotypes.
///
/// The split lists are cut at a point drawn in `0..=n`. The node and
/// amount lists are cut at the same fraction of each parent's own length,
/// then completed from the other parent up to the child's split counts.
/// [`repair_splits`] makes the lists agree with the child's split list.
pub fn crossover_3l<R: Rng + ?Sized>(
    p1: &ThreeList,
    p2: &ThreeList,
    inst: &Instance,
    rng: &mut R,
) -> Result<(ThreeList, ThreeList), RepairError> {
    let n = inst.n();
    let sl_point = rng.gen_range(0..=n);
    let fraction: f64 = rng.gen();
    let cut = |len: usize| -> usize { (libm::round(fraction * len as f64) as usize).min(len) };
    let mut build = |a: &ThreeList, b: &ThreeList| -> Result<ThreeList, RepairError> {
        let sl: Vec<Units> = a.sl[..sl_point].iter().chain(&b.sl[sl_point..]).copied().collect();
        let (nl, ptl) = splice_lists((&a.nl, &a.ptl), (&b.nl, &b.ptl), cut(a.nl.len()), &sl);
        let mut child = ThreeList { nl, ptl, sl };
        repair_splits(&mut child, inst, rng)?;
        Ok(child)
    };
    let c1 = build(p1, p2)?;
    let c2 = build(p2, p1)?;
    Ok((c1, c2))
}

fn random_swap<R: Rng + ?Sized>(len: usize, rate: f64, rng: &mut R) -> Option<(usize, usize)> {
    if len < 2 || !rng.gen_bool(rate) {
        return None;
    }
    let i = rng.gen_range(0..len);
    let mut j = rng.gen_range(0..len - 1);
    if j >= i {
        j += 1;
    }
    Some((i, j))
}

/// Two-position swap applied with probability `rate`.
pub fn mutate_nl<R: Rng + ?Sized>(nl: &mut [Node], rate: f64, rng: &mut R) {
    if let Some((i, j)) = random_swap(nl.len(), rate, rng) {
        nl.swap(i, j);
    }
}

/// [`mutate_nl`] for aligned lists: the amounts move with their nodes.
pub fn mutate_nl_paired<R: Rng + ?Sized>(
    nl: &mut [Node],
    ptl: &mut [Units],
    rate: f64,
    rng: &mut R,
) {
    if let Some((i, j)) = random_swap(nl.len(), rate, rng) {
        nl.swap(i, j);
        ptl.swap(i, j);
    }
}

/// Per node, with probability `rate`, sets one random occurrence to a
/// different amount in `floor..=p_i`, then repairs the sums.
pub fn mutate_ptl<R: Rng + ?Sized>(
    nl: &[Node],
    ptl: &mut [Units],
    inst: &Instance,
    floor: Units,
    rate: f64,
    rng: &mut R,
) -> Result<(), RepairError> {
    let mut positions = vec![Vec::new(); inst.n()];
    for (k, &i) in nl.iter().enumerate() {
        positions[i].push(k);
    }
    let mut touched = false;
    for (node, occ) in positions.iter().enumerate() {
        if !rng.gen_bool(rate) {
            continue;
        }
        let p = inst.p(node);
        if occ.is_empty() || p <= floor {
            continue;
        }
        let pos = *occ.choose(rng).expect("non-empty");
        let current = ptl[pos];
        let mut v = rng.gen_range(floor..p);
        if v >= current {
            v += 1;
        }
        ptl[pos] = v;
        touched = true;
    }
    if touched {
        repair_ptl(nl, ptl, inst, floor, rng)?;
    }
    Ok(())
}

/// Per node, with probability `rate`, sets the split count to a different
/// value in `1..=p_i`, then repairs the lists. Nodes with `p_i = 1` have
/// no alternative and are left alone.
pub fn mutate_sl<R: Rng + ?Sized>(
    tl: &mut ThreeList,
    inst: &Instance,
    rate: f64,
    rng: &mut R,
) -> Result<(), RepairError> {
    let mut touched = false;
    for node in 0..inst.n() {
        if !rng.gen_bool(rate) {
            continue;
        }
        let p = inst.p(node);
        if p < 2 {
            continue;
        }
        let current = tl.sl[node];
        let mut v = rng.gen_range(1..p);
        if v >= current {
            v += 1;
        }
        tl.sl[node] = v;
        touched = true;
    }
    if touched {
        repair_splits(tl, inst, rng)?;
    }
    Ok(())
}

/// All mutation operators of the genotype's lists, each followed by its
/// repair.
pub fn mutate<R: Rng + ?Sized>(
    repr: &mut Representation,
    inst: &Instance,
    params: &GaParams,
    rng: &mut R,
) -> Result<(), RepairError> {
    match repr {
        Representation::One(r) => mutate_nl(&mut r.nl, params.m_nl, rng),
        Representation::Two(r) => {
            mutate_nl_paired(&mut r.nl, &mut r.ptl, params.m_nl, rng);
            mutate_ptl(&r.nl, &mut r.ptl, inst, TWO_LIST_FLOOR, params.m_ptl, rng)?;
        }
        Representation::Three(r) => {
            mutate_nl_paired(&mut r.nl, &mut r.ptl, params.m_nl, rng);
            mutate_ptl(&r.nl, &mut r.ptl, inst, THREE_LIST_FLOOR, params.m_ptl, rng)?;
            mutate_sl(r, inst, params.m_sl, rng)?;
        }
    }
    Ok(())
}

/// Crossover matching the genotype of the parents.
pub fn crossover<R: Rng + ?Sized>(
    p1: &Representation,
    p2: &Representation,
    inst: &Instance,
    rng: &mut R,
) -> Result<(Representation, Representation), RepairError> {
    Ok(match (p1, p2) {
        (Representation::One(a), Representation::One(b)) => {
            let (x, y) = crossover_one_list(a, b, inst, rng);
            (Representation::One(x), Representation::One(y))
        }
        (Representation::Two(a), Representation::Two(b)) => {
            let (x, y) = crossover_2l(a, b, inst, rng)?;
            (Representation::Two(x), Representation::Two(y))
        }
        (Representation::Three(a), Representation::Three(b)) => {
            let (x, y) = crossover_3l(a, b, inst, rng)?;
            (Representation::Three(x), Representation::Three(y))
        }
        _ => panic!("parents must share a genotype"),
    })
}

/// Next generation: the `elite_size` best of `pop` plus the best
/// `pop.len() - elite_size` children. If fewer children are supplied, the
/// best remaining members of `pop` fill the gap.
pub fn update_population(pop: &Population, offspring: Vec<Individual>, elite_size: usize) -> Population {
    let size = pop.len();
    let keep = elite_size.min(size);
    let mut next: Vec<Individual> = pop.elite.iter().take(keep).map(|&i| pop.members[i].clone()).collect();

    let order = ranked(&offspring);
    let mut slots: Vec<Option<Individual>> = offspring.into_iter().map(Some).collect();
    for i in order.into_iter().take(size - keep) {
        next.push(slots[i].take().expect("each child taken once"));
    }
    if next.len() < size {
        let ranked_old = ranked(&pop.members);
        for i in ranked_old.into_iter().filter(|i| !pop.elite[..keep].contains(i)) {
            if next.len() == size {
                break;
            }
            next.push(pop.members[i].clone());
        }
    }
    Population::new(next, elite_size)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationStats {
    pub generation: usize,
    pub evaluations: usize,
    pub best_total: Units,
    pub mean_total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best: Individual,
    pub stats: Vec<GenerationStats>,
    pub evaluations: usize,
}

fn stats(pop: &Population, generation: usize, evaluations: usize) -> GenerationStats {
    GenerationStats {
        generation,
        evaluations,
        best_total: pop.best().total(),
        mean_total: pop.mean_total(),
    }
}

/// Runs the genetic algorithm until `params.budget` solutions have been
/// evaluated. Deterministic in `params.seed`.
pub fn run(inst: &Instance, params: &GaParams) -> Result<RunResult, GaError> {
    run_with_observer(inst, params, |_| {})
}

/// [`run`], calling `observe` on every evaluated individual.
pub fn run_with_observer<F: FnMut(&Individual)>(
    inst: &Instance,
    params: &GaParams,
    mut observe: F,
) -> Result<RunResult, GaError> {
    params.validate()?;
    // Fail early on an unprocessable instance.
    greedy_split_counts(inst)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut members = Vec::with_capacity(params.population_size);
    for _ in 0..params.population_size {
        let ind = Individual::evaluate(Representation::random(params.kind, inst, &mut rng)?, inst)?;
        observe(&ind);
        members.push(ind);
    }
    let mut evaluations = members.len();
    let mut pop = Population::new(members, params.elite_size);
    let mut history = vec![stats(&pop, 0, evaluations)];

    let brood = params.population_size - params.elite_size;
    let mut generation = 0;
    while evaluations < params.budget {
        let mut offspring = Vec::with_capacity(brood);
        'fill: while offspring.len() < brood {
            let (a, b) = select_parents(&pop, &mut rng);
            let (x, y) = crossover(&a.repr, &b.repr, inst, &mut rng)?;
            for mut child in [x, y] {
                if offspring.len() == brood || evaluations >= params.budget {
                    break 'fill;
                }
                mutate(&mut child, inst, params, &mut rng)?;
                let ind = Individual::evaluate(child, inst)?;
                evaluations += 1;
                observe(&ind);
                offspring.push(ind);
            }
        }
        pop = update_population(&pop, offspring, params.elite_size);
        generation += 1;
        history.push(stats(&pop, generation, evaluations));
    }

    Ok(RunResult {
        best: pop.best().clone(),
        stats: history,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{check_three_list, check_two_list, random_three_list, random_two_list};
    use crate::temperature::{ProfileKind, ProfilePair};

    fn example() -> Instance {
        let rows = vec![vec![0, 4, 5], vec![4, 0, 3], vec![5, 3, 0]];
        Instance::new(vec![5, 6, 2], &rows, 3.0, ProfilePair::uniform(ProfileKind::Linear)).unwrap()
    }

    fn fake(total: Units) -> Individual {
        Individual {
            repr: Representation::One(OneList { nl: vec![] }),
            objective: ObjectiveBreakdown::new(total, 0, 0),
        }
    }

    #[test]
    fn crossover_nl_examples() {
        let p1 = [1, 0, 2, 0, 1];
        let p2 = [0, 1, 0, 1, 2];
        assert_eq!(crossover_nl(&p1, &p2, 2, 3), vec![1, 0, 0, 1, 2]);
        assert_eq!(crossover_nl(&p1, &p2, 0, 3), p2.to_vec());
        assert_eq!(crossover_nl(&p1, &p2, 5, 3), p1.to_vec());
        for point in 0..=5 {
            assert_eq!(crossover_nl(&p1, &p1, point, 3), p1.to_vec());
        }
    }

    #[test]
    fn tournament_first_drawn_wins_ties() {
        let pop = Population::new(vec![fake(30), fake(25), fake(40), fake(25)], 1);
        assert_eq!(tournament_winner(&pop, &[0, 1, 2, 3]), 1);
        assert_eq!(tournament_winner(&pop, &[3, 2, 1, 0]), 3);
    }

    #[test]
    fn single_elite_is_incumbent() {
        let pop = Population::new(vec![fake(30), fake(25), fake(40), fake(26), fake(50)], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (_, second) = select_parents(&pop, &mut rng);
            assert_eq!(second.total(), 25);
        }
    }

    #[test]
    fn parents_can_coincide() {
        let pop = Population::new(vec![fake(1), fake(25), fake(40), fake(26), fake(50)], 2);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let hit = (0..200).any(|_| {
            let (a, b) = select_parents(&pop, &mut rng);
            core::ptr::eq(a, b)
        });
        assert!(hit);
    }

    #[test]
    fn identical_parents_reproduce() {
        let inst = example();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let two = random_two_list(&inst, &mut rng);
            let (a, b) = crossover_2l(&two, &two, &inst, &mut rng).unwrap();
            assert_eq!((&a, &b), (&two, &two));
            let three = random_three_list(&inst, &mut rng);
            let (a, b) = crossover_3l(&three, &three, &inst, &mut rng).unwrap();
            assert_eq!((&a, &b), (&three, &three));
        }
    }

    #[test]
    fn crossover_children_are_valid() {
        let inst = example();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..300 {
            let (x, y) = (random_two_list(&inst, &mut rng), random_two_list(&inst, &mut rng));
            let (a, b) = crossover_2l(&x, &y, &inst, &mut rng).unwrap();
            assert!(check_two_list(&a, &inst).is_empty());
            assert!(check_two_list(&b, &inst).is_empty());
            let (x, y) = (random_three_list(&inst, &mut rng), random_three_list(&inst, &mut rng));
            let (a, b) = crossover_3l(&x, &y, &inst, &mut rng).unwrap();
            assert!(check_three_list(&a, &inst).is_empty(), "{a:?}");
            assert!(check_three_list(&b, &inst).is_empty(), "{b:?}");
        }
    }

    #[test]
    fn mutation_rate_zero_is_identity() {
        let inst = example();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let three = random_three_list(&inst, &mut rng);
        let mut m = three.clone();
        mutate_nl_paired(&mut m.nl, &mut m.ptl, 0.0, &mut rng);
        mutate_ptl(&m.nl.clone(), &mut m.ptl, &inst, THREE_LIST_FLOOR, 0.0, &mut rng).unwrap();
        mutate_sl(&mut m, &inst, 0.0, &mut rng).unwrap();
        assert_eq!(m, three);
    }

    #[test]
    fn swap_of_two_elements() {
        let mut nl = vec![0, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        mutate_nl(&mut nl, 1.0, &mut rng);
        assert_eq!(nl, vec![1, 0]);
    }

    #[test]
    fn ptl_mutation_flips_unit_job() {
        // p = 1 under the two-list floor: the touched entry must flip and
        // repair moves the unit so the sum is 1 again.
        let inst = Instance::new(vec![1], &[vec![0]], 3.0, ProfilePair::default()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let nl = vec![0, 0];
            let mut ptl = vec![1, 0];
            mutate_ptl(&nl, &mut ptl, &inst, TWO_LIST_FLOOR, 1.0, &mut rng).unwrap();
            assert_eq!(ptl.iter().sum::<Units>(), 1);
            seen.insert(ptl);
        }
        assert_eq!(seen.len(), 2);
    }

    #[test]
    fn sl_mutation_skips_unit_jobs() {
        let inst = Instance::new(vec![1, 1], &[vec![0, 2], vec![2, 0]], 3.0, ProfilePair::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let mut t = random_three_list(&inst, &mut rng);
        let before = t.clone();
        mutate_sl(&mut t, &inst, 1.0, &mut rng).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn update_keeps_elites() {
        let pop = Population::new(vec![fake(10), fake(20), fake(30), fake(40), fake(50)], 2);
        let next = update_population(&pop, vec![fake(90), fake(80), fake(70)], 2);
        let totals: Vec<_> = next.members().iter().map(Individual::total).collect();
        assert_eq!(totals, vec![10, 20, 70, 80, 90]);
        assert_eq!(next.best().total(), 10);

        let next = update_population(&pop, vec![fake(5), fake(80), fake(1)], 2);
        assert_eq!(next.best().total(), 1);
        assert_eq!(next.len(), 5);
    }

    #[test]
    fn budget_equal_to_population_returns_initial_best() {
        let inst = example();
        let params = GaParams::defaults(RepresentationKind::TwoList)
            .with_budget(50)
            .with_seed(5);
        let res = run(&inst, &params).unwrap();
        assert_eq!(res.evaluations, 50);
        assert_eq!(res.stats.len(), 1);
        assert_eq!(res.best.total(), res.stats[0].best_total);
    }

    #[test]
    fn run_is_deterministic_and_elitist() {
        let inst = example();
        for kind in RepresentationKind::ALL {
            let params = GaParams::defaults(kind).with_budget(1000).with_seed(21);
            let a = run(&inst, &params).unwrap();
            let b = run(&inst, &params).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.evaluations, 1000);
            for w in a.stats.windows(2) {
                assert!(w[1].best_total <= w[0].best_total);
            }
        }
    }

    #[test]
    fn params_validation() {
        let base = GaParams::defaults(RepresentationKind::OneList);
        assert!(base.validate().is_ok());
        assert!(GaParams { elite_size: 50, ..base }.validate().is_err());
        assert!(GaParams { m_nl: 1.5, ..base }.validate().is_err());
        assert!(GaParams { budget: 10, ..base }.validate().is_err());
    }
}
