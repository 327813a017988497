//! Temperature profiles, the consecutive-processing counter and problem
//! instances.
//!
//! A node's state is a counter `c` of consecutively processed time units.
//! Processing a unit raises it by one; any other unit lowers it by one,
//! floored at zero. The node temperature is `f1(c)` while the node is being
//! processed and `f2(c)` otherwise, and must never exceed the instance's
//! maximum temperature `B`. Since idle nodes only cool down, checking the
//! node under processing is sufficient when `f1 = f2`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Node, Units};

/// Shape of a temperature function `f(c)` over the consecutive-unit counter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProfileKind {
    /// `f(c) = c`
    Linear,
    /// `f(c) = c²`
    Quadratic,
    /// `f(c) = eᶜ`
    Exponential,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 3] = [
        ProfileKind::Linear,
        ProfileKind::Quadratic,
        ProfileKind::Exponential,
    ];

    /// Single-letter code used in files and on the command line.
    pub fn code(self) -> char {
        match self {
            ProfileKind::Linear => 'L',
            ProfileKind::Quadratic => 'Q',
            ProfileKind::Exponential => 'E',
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        match code {
            "L" | "l" => Some(ProfileKind::Linear),
            "Q" | "q" => Some(ProfileKind::Quadratic),
            "E" | "e" => Some(ProfileKind::Exponential),
            _ => None,
        }
    }

    /// Temperature reached after `c` consecutive units.
    pub fn value(self, c: Units) -> f64 {
        profile_value(self, c)
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code())
    }
}

/// Increase (`f1`) and decrease (`f2`) functions of a node.
///
/// The two may differ, but every shipped configuration uses the same shape
/// for both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProfilePair {
    pub increase: ProfileKind,
    pub decrease: ProfileKind,
}

impl ProfilePair {
    pub const fn uniform(kind: ProfileKind) -> Self {
        Self {
            increase: kind,
            decrease: kind,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.increase == self.decrease
    }
}

impl Default for ProfilePair {
    fn default() -> Self {
        Self::uniform(ProfileKind::Linear)
    }
}

impl fmt::Display for ProfilePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_uniform() {
            write!(f, "{}", self.increase)
        } else {
            write!(f, "{}{}", self.increase, self.decrease)
        }
    }
}

/// `f(c)` for the given profile. Linear and quadratic values are exact
/// integers carried in an `f64`.
pub fn profile_value(kind: ProfileKind, c: Units) -> f64 {
    match kind {
        ProfileKind::Linear => c as f64,
        ProfileKind::Quadratic => c.saturating_mul(c) as f64,
        ProfileKind::Exponential => libm::exp(c as f64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TemperatureError {
    /// Not even a single unit can be processed: `f1(1) > B`.
    Unprocessable { kind: ProfileKind, max_temp: f64 },
}

impl fmt::Display for TemperatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemperatureError::Unprocessable { kind, max_temp } => write!(
                f,
                "maximum temperature {max_temp} is below {kind}(1) = {}; no unit can be processed",
                profile_value(*kind, 1)
            ),
        }
    }
}

impl core::error::Error for TemperatureError {}

/// Largest `k` with `f(k) <= B`: the longest burst of processing a cool
/// node can take.
///
/// The closed-form inverse gives a first guess which is then corrected by
/// evaluating `f` directly, so rounding in `sqrt`/`ln` never shifts the
/// answer.
pub fn max_consecutive(kind: ProfileKind, max_temp: f64) -> Result<Units, TemperatureError> {
    if !(profile_value(kind, 1) <= max_temp) {
        return Err(TemperatureError::Unprocessable { kind, max_temp });
    }
    let guess = match kind {
        ProfileKind::Linear => libm::floor(max_temp),
        ProfileKind::Quadratic => libm::floor(libm::sqrt(max_temp)),
        ProfileKind::Exponential => libm::floor(libm::log(max_temp)),
    };
    // Saturating float-to-int cast; the guard loops below fix any overshoot.
    let mut k = (guess as Units).max(1);
    while k > 1 && profile_value(kind, k) > max_temp {
        k -= 1;
    }
    while k < Units::MAX && profile_value(kind, k + 1) <= max_temp {
        k += 1;
    }
    Ok(k)
}

/// Number of visits a node needs when every visit processes a full burst:
/// `⌈p / max_consecutive⌉`.
pub fn max_splits(p: Units, kind: ProfileKind, max_temp: f64) -> Result<Units, TemperatureError> {
    let burst = max_consecutive(kind, max_temp)?;
    Ok(p.div_ceil(burst))
}

/// Consecutive-unit counters of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThermalState {
    counters: Vec<Units>,
}

impl ThermalState {
    /// All counters start at zero.
    pub fn new(n: usize) -> Self {
        Self {
            counters: vec![0; n],
        }
    }

    pub fn counter(&self, node: Node) -> Units {
        self.counters[node]
    }

    pub fn counters(&self) -> &[Units] {
        &self.counters
    }

    /// Advance one time unit during which `processed` (if any) is worked on.
    pub fn advance(&mut self, processed: Option<Node>) {
        for (i, c) in self.counters.iter_mut().enumerate() {
            if Some(i) == processed {
                *c += 1;
            } else {
                *c = c.saturating_sub(1);
            }
        }
    }

    /// Temperature of `node` given whether it is being processed right now.
    pub fn temperature(&self, node: Node, processing: bool, profile: ProfilePair) -> f64 {
        let kind = if processing {
            profile.increase
        } else {
            profile.decrease
        };
        profile_value(kind, self.counters[node])
    }
}

/// A problem instance: processing times, a symmetric distance matrix,
/// the maximum temperature and the temperature profile pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    p: Vec<Units>,
    d: Vec<Units>,
    max_temp: f64,
    profile: ProfilePair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeError {
    /// Distance matrix has `rows` rows but `p` has `n` entries.
    RowCount { n: usize, rows: usize },
    /// Row `row` has `len` entries instead of `n`.
    RowLength { row: usize, len: usize, n: usize },
}

impl fmt::Display for ShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeError::RowCount { n, rows } => {
                write!(f, "distance matrix has {rows} rows, expected {n}")
            }
            ShapeError::RowLength { row, len, n } => {
                write!(f, "distance row {row} has {len} entries, expected {n}")
            }
        }
    }
}

impl core::error::Error for ShapeError {}

impl Instance {
    /// Builds an instance from a square distance matrix given as rows.
    ///
    /// Only the shape is checked here; use [`Instance::validate`] for the
    /// model assumptions.
    pub fn new(
        p: Vec<Units>,
        rows: &[Vec<Units>],
        max_temp: f64,
        profile: ProfilePair,
    ) -> Result<Self, ShapeError> {
        let n = p.len();
        if rows.len() != n {
            return Err(ShapeError::RowCount {
                n,
                rows: rows.len(),
            });
        }
        let mut d = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(ShapeError::RowLength {
                    row,
                    len: r.len(),
                    n,
                });
            }
            d.extend_from_slice(r);
        }
        Ok(Self {
            p,
            d,
            max_temp,
            profile,
        })
    }

    /// Builds an instance from a row-major `n × n` matrix.
    pub fn from_flat(
        p: Vec<Units>,
        d: Vec<Units>,
        max_temp: f64,
        profile: ProfilePair,
    ) -> Result<Self, ShapeError> {
        let n = p.len();
        if d.len() != n * n {
            return Err(ShapeError::RowCount {
                n,
                rows: d.len().checked_div(n).unwrap_or(d.len()),
            });
        }
        Ok(Self {
            p,
            d,
            max_temp,
            profile,
        })
    }

    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn processing(&self) -> &[Units] {
        &self.p
    }

    pub fn p(&self, node: Node) -> Units {
        self.p[node]
    }

    pub fn total_processing(&self) -> Units {
        self.p.iter().sum()
    }

    #[inline]
    pub fn distance(&self, from: Node, to: Node) -> Units {
        self.d[from * self.n() + to]
    }

    /// Row-major distance matrix.
    pub fn distances(&self) -> &[Units] {
        &self.d
    }

    pub fn distance_rows(&self) -> Vec<Vec<Units>> {
        let n = self.n();
        if n == 0 {
            return Vec::new();
        }
        self.d.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn max_temp(&self) -> f64 {
        self.max_temp
    }

    pub fn profile(&self) -> ProfilePair {
        self.profile
    }

    /// Same data under a different profile pair.
    pub fn with_profile(&self, profile: ProfilePair) -> Self {
        Self {
            profile,
            ..self.clone()
        }
    }

    /// Same data under a different maximum temperature.
    pub fn with_max_temp(&self, max_temp: f64) -> Self {
        Self {
            max_temp,
            ..self.clone()
        }
    }

    /// Longest burst under the increase profile.
    pub fn max_consecutive(&self) -> Result<Units, TemperatureError> {
        max_consecutive(self.profile.increase, self.max_temp)
    }

    /// Greedy split count of `node`.
    pub fn max_splits(&self, node: Node) -> Result<Units, TemperatureError> {
        max_splits(self.p[node], self.profile.increase, self.max_temp)
    }

    /// Returns every violated model assumption; empty means valid.
    pub fn validate(&self) -> Vec<InstanceViolation> {
        validate_instance(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

/// A broken model assumption found by [`validate_instance`].
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceViolation {
    /// The instance has no nodes.
    Empty,
    ZeroProcessing { node: Node },
    NonZeroDiagonal { node: Node, value: Units },
    Asymmetric { i: Node, j: Node, d_ij: Units, d_ji: Units },
    /// `d[i][j] > d[i][k] + d[k][j]`.
    TriangleInequality { i: Node, j: Node, k: Node },
    /// `B < f1(1)` (or `B` is not a number).
    Unprocessable { max_temp: f64, kind: ProfileKind },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceViolation::Empty => write!(f, "instance has no nodes"),
            InstanceViolation::ZeroProcessing { node } => {
                write!(f, "node {node} has processing time 0")
            }
            InstanceViolation::NonZeroDiagonal { node, value } => {
                write!(f, "d[{node}][{node}] = {value}, expected 0")
            }
            InstanceViolation::Asymmetric { i, j, d_ij, d_ji } => {
                write!(f, "asymmetric distances: d[{i}][{j}] = {d_ij} but d[{j}][{i}] = {d_ji}")
            }
            InstanceViolation::TriangleInequality { i, j, k } => {
                write!(f, "triangle inequality violated: d[{i}][{j}] > d[{i}][{k}] + d[{k}][{j}]")
            }
            InstanceViolation::Unprocessable { max_temp, kind } => write!(
                f,
                "maximum temperature {max_temp} is below {kind}(1); nodes are unprocessable"
            ),
        }
    }
}

/// Checks symmetry, zero diagonal, the triangle inequality, `p_i >= 1`
/// and `B >= f1(1)`.
pub fn validate_instance(inst: &Instance) -> Vec<InstanceViolation> {
    let mut out = Vec::new();
    let n = inst.n();
    if n == 0 {
        out.push(InstanceViolation::Empty);
    }
    for (node, &p) in inst.p.iter().enumerate() {
        if p == 0 {
            out.push(InstanceViolation::ZeroProcessing { node });
        }
    }
    for i in 0..n {
        let v = inst.distance(i, i);
        if v != 0 {
            out.push(InstanceViolation::NonZeroDiagonal { node: i, value: v });
        }
        for j in (i + 1)..n {
            let (a, b) = (inst.distance(i, j), inst.distance(j, i));
            if a != b {
                out.push(InstanceViolation::Asymmetric {
                    i,
                    j,
                    d_ij: a,
                    d_ji: b,
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let dij = inst.distance(i, j);
            for k in 0..n {
                if dij > inst.distance(i, k).saturating_add(inst.distance(k, j)) {
                    out.push(InstanceViolation::TriangleInequality { i, j, k });
                }
            }
        }
    }
    let kind = inst.profile.increase;
    if !(profile_value(kind, 1) <= inst.max_temp) {
        out.push(InstanceViolation::Unprocessable {
            max_temp: inst.max_temp,
            kind,
        });
    }
    out
}
