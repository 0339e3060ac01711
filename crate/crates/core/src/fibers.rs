//! Exact-sum search for fiber decompositions of the involution layers.
//!
//! The non-trivial partitions of `n` are split into `floor(n/2)` fibers so
//! that the degrees in fiber `k` add up to the layer value `A_k`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::partitions::{degree, enumerate_partitions, layer_a, layer_count, Partition, PartitionError};
use crate::report::big_json;

pub const MIN_FIBER_DEGREE: usize = 4;
pub const DEFAULT_FIBER_BOUND: usize = 12;
pub const DEFAULT_MAX_SOLUTIONS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    /// Top fiber is exactly `{(n-1,1), (n-2,1,1)}`.
    pub fix_top: bool,
    /// Second fiber is exactly `{(n-2,2), (n-3,2,1), (n-3,1,1,1), (n-4,2,1,1)}`.
    pub fix_second: bool,
    /// `(n-i-1, i-1)` lies in fiber `kmax - i` whenever that is a partition of `n`.
    pub containment: bool,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub constraints: Constraints,
    pub max_solutions: usize,
    /// Count every decomposition instead of stopping at the cap.
    pub count_all: bool,
    pub timeout: Option<Duration>,
    pub max_degree: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            constraints: Constraints::default(),
            max_solutions: DEFAULT_MAX_SOLUTIONS,
            count_all: false,
            timeout: None,
            max_degree: DEFAULT_FIBER_BOUND,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberDecomposition {
    pub n: usize,
    pub fibers: Vec<Vec<Partition>>,
    pub layer_values: Vec<BigUint>,
    pub certificate: Vec<BigUint>,
}

impl FiberDecomposition {
    pub fn to_json(&self) -> serde_json::Value {
        let fibers: Vec<serde_json::Value> = self
            .fibers
            .iter()
            .enumerate()
            .map(|(k, fiber)| {
                serde_json::json!({
                    "k": k,
                    "partitions": fiber.iter().map(Partition::to_string).collect::<Vec<_>>(),
                    "sum": big_json(&BigInt::from(self.certificate[k].clone())),
                })
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "layers": self.layer_values.iter().map(|v| big_json(&BigInt::from(v.clone()))).collect::<Vec<_>>(),
            "fibers": fibers,
        })
    }

    /// Rows `n, partition, degree, fiber`, one per partition, fiber-major.
    pub fn csv_rows(&self) -> Result<Vec<[String; 4]>, FiberError> {
        let mut rows = Vec::new();
        for (k, fiber) in self.fibers.iter().enumerate() {
            for lambda in fiber {
                rows.push([self.n.to_string(), lambda.to_string(), degree(lambda)?.to_string(), k.to_string()]);
            }
        }
        Ok(rows)
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub n: usize,
    pub constraints: Constraints,
    pub solutions: Vec<FiberDecomposition>,
    /// The whole search space was explored, so `solutions` is complete.
    pub exhausted: bool,
    pub total_count: Option<u128>,
    pub timed_out: bool,
    pub notes: Vec<String>,
    /// Search nodes visited; varies with scheduling and is kept out of reports.
    pub nodes: u64,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "constraints": self.constraints,
            "solutions": self.solutions.iter().map(FiberDecomposition::to_json).collect::<Vec<_>>(),
            "exhausted": self.exhausted,
            "total_count": self.total_count.map(|c| c.to_string()),
            "timed_out": self.timed_out,
            "notes": self.notes,
        })
    }
}

fn top_fiber(n: usize) -> Vec<Partition> {
    vec![Partition::new(vec![n - 1, 1]).expect("n >= 4"), Partition::new(vec![n - 2, 1, 1]).expect("n >= 4")]
}

fn named(n: usize, parts: &[isize]) -> (String, Option<Partition>) {
    let shown: Vec<String> = parts.iter().map(isize::to_string).collect();
    (format!("[{}]", shown.join(",")), Partition::checked(n, parts))
}

fn second_fiber_spec(n: usize) -> Vec<(String, Option<Partition>)> {
    let n = n as isize;
    [vec![n - 2, 2], vec![n - 3, 2, 1], vec![n - 3, 1, 1, 1], vec![n - 4, 2, 1, 1]]
        .iter()
        .map(|p| named(n as usize, p))
        .collect()
}

/// As displayed, including the repeated `(n-6,2,2,2)`.
fn third_fiber_spec(n: usize) -> Vec<(String, Option<Partition>)> {
    let n = n as isize;
    [
        vec![n - 3, 3],
        vec![n - 4, 3, 1],
        vec![n - 4, 2, 2],
        vec![n - 4, 1, 1, 1, 1],
        vec![n - 5, 3, 2],
        vec![n - 5, 2, 2, 1],
        vec![n - 5, 2, 1, 1, 1],
        vec![n - 5, 1, 1, 1, 1, 1],
        vec![n - 6, 3, 3],
        vec![n - 6, 2, 2, 2],
        vec![n - 6, 2, 2, 2],
        vec![n - 6, 2, 1, 1, 1],
    ]
    .iter()
    .map(|p| named(n as usize, p))
    .collect()
}

fn containment_spec(n: usize, i: usize) -> (String, Option<Partition>) {
    named(n, &[n as isize - i as isize - 1, i as isize - 1])
}

struct Problem {
    items: Vec<(Partition, u64)>,
    capacities: Vec<u64>,
    /// Item index to the only fiber it may enter.
    forced: HashMap<usize, usize>,
    /// Fibers that accept nothing beyond their forced items.
    closed: Vec<bool>,
    /// Bin trial order: largest layer first.
    bin_order: Vec<usize>,
    /// `reachable[i]` marks the sums attainable by subsets of `items[i..]`.
    reachable: Vec<Vec<u64>>,
}

fn bit(set: &[u64], v: u64) -> bool {
    set[(v / 64) as usize] >> (v % 64) & 1 == 1
}

impl Problem {
    fn build(n: usize, constraints: Constraints, notes: &mut Vec<String>) -> Result<Option<Self>, FiberError> {
        let kmax = layer_count(n) - 1;
        let capacities: Vec<u64> = (0..=kmax)
            .map(|k| layer_a(n, k).map(|v| v.to_u64().expect("layer fits in u64")))
            .collect::<Result<_, _>>()?;
        let mut items = Vec::new();
        for lambda in enumerate_partitions(n).into_iter().skip(1) {
            let f = degree(&lambda)?.to_u64().expect("degree fits in u64");
            items.push((lambda, f));
        }
        // stable: equal degrees keep reverse-lexicographic order
        items.sort_by_key(|item| std::cmp::Reverse(item.1));
        let mut forced = HashMap::new();
        let mut closed = vec![false; kmax + 1];
        let index_of = |lambda: &Partition| items.iter().position(|(p, _)| p == lambda).expect("valid partition of n");
        let pin = |fiber: usize, set: &[Partition], forced: &mut HashMap<usize, usize>, closed: &mut Vec<bool>| {
            for lambda in set {
                forced.insert(index_of(lambda), fiber);
            }
            closed[fiber] = true;
        };
        if constraints.fix_top {
            pin(kmax, &top_fiber(n), &mut forced, &mut closed);
        }
        if constraints.fix_second {
            let spec = second_fiber_spec(n);
            if kmax >= 1 && spec.iter().all(|(_, p)| p.is_some()) {
                let set: Vec<Partition> = spec.into_iter().filter_map(|(_, p)| p).collect();
                if set.iter().any(|p| forced.contains_key(&index_of(p))) {
                    return Ok(None);
                }
                pin(kmax - 1, &set, &mut forced, &mut closed);
            } else {
                notes.push("fix_second not applicable at this n; constraint ignored".into());
            }
        }
        if constraints.containment {
            let mut applied = 0;
            for i in 2..=kmax {
                if let (_, Some(p)) = containment_spec(n, i) {
                    let idx = index_of(&p);
                    if forced.get(&idx).is_some_and(|&f| f != kmax - i) {
                        return Ok(None);
                    }
                    forced.insert(idx, kmax - i);
                    applied += 1;
                }
            }
            if applied == 0 {
                notes.push("containment names no partition of n at this n; constraint is vacuous".into());
            }
        }
        let mut bin_order: Vec<usize> = (0..=kmax).collect();
        bin_order.sort_by(|&a, &b| capacities[b].cmp(&capacities[a]).then(b.cmp(&a)));
        let max_cap = *capacities.iter().max().unwrap_or(&0);
        let words = (max_cap / 64 + 1) as usize;
        let mut reachable = vec![vec![0u64; words]; items.len() + 1];
        reachable[items.len()][0] = 1;
        for i in (0..items.len()).rev() {
            let f = items[i].1;
            let mut next = reachable[i + 1].clone();
            for v in (f..=max_cap).rev() {
                if bit(&reachable[i + 1], v - f) {
                    next[(v / 64) as usize] |= 1 << (v % 64);
                }
            }
            reachable[i] = next;
        }
        Ok(Some(Problem { items, capacities, forced, closed, bin_order, reachable }))
    }

    fn allowed(&self, idx: usize, bin: usize) -> bool {
        match self.forced.get(&idx) {
            Some(&b) => b == bin,
            None => !self.closed[bin],
        }
    }

    fn viable(&self, idx: usize, residual: &[u64]) -> bool {
        residual.iter().all(|&r| bit(&self.reachable[idx], r))
    }

    fn decomposition(&self, n: usize, assignment: &[usize]) -> FiberDecomposition {
        let mut fibers = vec![Vec::new(); self.capacities.len()];
        for (i, &bin) in assignment.iter().enumerate() {
            fibers[bin].push(self.items[i].0.clone());
        }
        for fiber in &mut fibers {
            fiber.sort_by(|a, b| b.cmp(a));
        }
        let certificate = fibers.iter().map(|f| f.iter().map(|p| degree(p).expect("valid partition")).sum()).collect();
        FiberDecomposition {
            n,
            fibers,
            layer_values: self.capacities.iter().map(|&c| BigUint::from(c)).collect(),
            certificate,
        }
    }
}

struct Worker<'a> {
    problem: &'a Problem,
    cap: usize,
    dead: HashSet<(usize, Vec<u64>)>,
    assignment: Vec<usize>,
    found: Vec<Vec<usize>>,
    nodes: u64,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

impl Worker<'_> {
    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        if self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.stop.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Returns whether any solution exists below this node.
    fn dfs(&mut self, idx: usize, residual: &mut Vec<u64>) -> bool {
        if self.out_of_time() {
            return false;
        }
        let p = self.problem;
        if idx == p.items.len() {
            debug_assert!(residual.iter().all(|&r| r == 0));
            self.found.push(self.assignment.clone());
            return true;
        }
        if !p.viable(idx, residual) || self.dead.contains(&(idx, residual.clone())) {
            return false;
        }
        let f = p.items[idx].1;
        let mut any = false;
        for &bin in &p.bin_order {
            if residual[bin] < f || !p.allowed(idx, bin) {
                continue;
            }
            residual[bin] -= f;
            self.assignment.push(bin);
            any |= self.dfs(idx + 1, residual);
            self.assignment.pop();
            residual[bin] += f;
            if self.found.len() >= self.cap || self.stop.load(Ordering::Relaxed) {
                return any;
            }
        }
        if !any {
            self.dead.insert((idx, residual.clone()));
        }
        any
    }
}

struct Counter<'a> {
    problem: &'a Problem,
    memo: HashMap<(usize, Vec<u64>), u128>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl Counter<'_> {
    fn count(&mut self, idx: usize, residual: &mut Vec<u64>) -> u128 {
        self.nodes += 1;
        if self.timed_out || (self.nodes.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() >= d)) {
            self.timed_out = true;
            return 0;
        }
        let p = self.problem;
        if idx == p.items.len() {
            return 1;
        }
        if !p.viable(idx, residual) {
            return 0;
        }
        if let Some(&c) = self.memo.get(&(idx, residual.clone())) {
            return c;
        }
        let f = p.items[idx].1;
        let mut total = 0u128;
        for bin in 0..residual.len() {
            if residual[bin] < f || !p.allowed(idx, bin) {
                continue;
            }
            residual[bin] -= f;
            total = total.saturating_add(self.count(idx + 1, residual));
            residual[bin] += f;
        }
        if !self.timed_out {
            self.memo.insert((idx, residual.clone()), total);
        }
        total
    }
}

/// Backtracking search for decompositions, in a fixed depth-first order.
///
/// Top-level branches run in parallel waves; each branch yields its own
/// first solutions and the merge keeps branch order, so the returned list
/// equals the sequential result for every thread count.
pub fn search_decomposition(n: usize, config: &SearchConfig) -> Result<SearchOutcome, FiberError> {
    if !(MIN_FIBER_DEGREE..=config.max_degree).contains(&n) {
        return Err(FiberError::OutOfRange { n, min: MIN_FIBER_DEGREE, max: config.max_degree });
    }
    let start = Instant::now();
    let deadline = config.timeout.map(|t| start + t);
    let mut notes = Vec::new();
    let Some(problem) = Problem::build(n, config.constraints, &mut notes)? else {
        notes.push("constraints pin one partition to two fibers".into());
        return Ok(SearchOutcome {
            n,
            constraints: config.constraints,
            solutions: Vec::new(),
            exhausted: true,
            total_count: config.count_all.then_some(0),
            timed_out: false,
            notes,
            nodes: 0,
            elapsed: start.elapsed(),
        });
    };
    let cap = config.max_solutions;
    let stop = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let branches: Vec<usize> = problem
        .bin_order
        .iter()
        .copied()
        .filter(|&b| problem.capacities[b] >= problem.items[0].1 && problem.allowed(0, b))
        .collect();
    let wave = rayon::current_num_threads().max(1);
    let mut solutions: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    for chunk in branches.chunks(wave) {
        if solutions.len() >= cap {
            complete = false;
            break;
        }
        let results: Vec<Vec<Vec<usize>>> = chunk
            .par_iter()
            .map(|&bin| {
                let mut residual = problem.capacities.clone();
                residual[bin] -= problem.items[0].1;
                let mut worker = Worker {
                    problem: &problem,
                    cap,
                    dead: HashSet::new(),
                    assignment: vec![bin],
                    found: Vec::new(),
                    nodes: 0,
                    deadline,
                    stop: &stop,
                };
                worker.dfs(1, &mut residual);
                nodes.fetch_add(worker.nodes, Ordering::Relaxed);
                worker.found
            })
            .collect();
        for found in results {
            if found.len() >= cap {
                complete = false;
            }
            solutions.extend(found);
        }
    }
    if solutions.len() > cap {
        complete = false;
        solutions.truncate(cap);
    }
    let timed_out = stop.load(Ordering::Relaxed);
    let mut total_nodes = nodes.load(Ordering::Relaxed);
    let total_count = if config.count_all && !timed_out {
        let mut counter = Counter { problem: &problem, memo: HashMap::new(), nodes: 0, deadline, timed_out: false };
        let mut residual = problem.capacities.clone();
        let c = counter.count(0, &mut residual);
        total_nodes += counter.nodes;
        if counter.timed_out {
            notes.push("counting timed out".into());
            None
        } else {
            Some(c)
        }
    } else {
        None
    };
    let timed_out = timed_out || (config.count_all && total_count.is_none());
    if timed_out {
        notes.push(format!("timed out; {} solution(s) found before the deadline", solutions.len()));
    }
    Ok(SearchOutcome {
        n,
        constraints: config.constraints,
        solutions: solutions.iter().map(|a| problem.decomposition(n, a)).collect(),
        exhausted: complete && !timed_out,
        total_count,
        timed_out,
        notes,
        nodes: total_nodes,
        elapsed: start.elapsed(),
    })
}

/// Standard-tableau count by removing the cell holding the largest entry.
fn syt_count(shape: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
    if shape.iter().sum::<usize>() <= 1 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(shape) {
        return v.clone();
    }
    let mut total = BigUint::zero();
    for r in 0..shape.len() {
        let is_corner = r + 1 == shape.len() || shape[r + 1] < shape[r];
        if is_corner {
            let mut smaller = shape.to_vec();
            smaller[r] -= 1;
            if smaller[r] == 0 {
                smaller.pop();
            }
            total += syt_count(&smaller, memo);
        }
    }
    memo.insert(shape.to_vec(), total.clone());
    total
}

/// `C(n, 2m) (2m-1)!!` with `m` transpositions, `m` determined by the layer index.
fn layer_by_matchings(n: usize, k: usize) -> BigUint {
    let m = n / 2 - k;
    let mut binom = BigUint::one();
    for i in 0..2 * m {
        binom = binom * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    let double_fact: BigUint = (1..2 * m).step_by(2).map(BigUint::from).product();
    binom * double_fact
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub passed: bool,
    pub fiber_count_ok: bool,
    pub missing: Vec<String>,
    pub duplicates: Vec<String>,
    pub foreign: Vec<String>,
    /// Degree sum minus layer value, per fiber.
    pub residuals: Vec<String>,
    pub layers_ok: bool,
    pub certificate_ok: bool,
}

/// Recomputes degrees and layers along separate code paths and rechecks coverage.
pub fn verify_decomposition(d: &FiberDecomposition) -> Verification {
    let n = d.n;
    let expected_fibers = layer_count(n);
    let layers: Vec<BigUint> = (0..expected_fibers).map(|k| layer_by_matchings(n, k)).collect();
    let mut memo = HashMap::new();
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut foreign = Vec::new();
    let mut sums = Vec::new();
    for fiber in &d.fibers {
        let mut sum = BigUint::zero();
        for lambda in fiber {
            let parts = lambda.parts().to_vec();
            if lambda.size() != n || parts.len() == 1 {
                foreign.push(lambda.to_string());
                continue;
            }
            *seen.entry(parts.clone()).or_insert(0) += 1;
            sum += syt_count(&parts, &mut memo);
        }
        sums.push(sum);
    }
    let universe: Vec<Partition> = enumerate_partitions(n).into_iter().skip(1).collect();
    let missing: Vec<String> =
        universe.iter().filter(|p| !seen.contains_key(p.parts())).map(Partition::to_string).collect();
    let mut duplicates: Vec<String> = seen
        .iter()
        .filter(|(_, &c)| c > 1)
        .map(|(p, _)| Partition::new(p.clone()).expect("validated").to_string())
        .collect();
    duplicates.sort();
    let residuals: Vec<BigInt> = sums
        .iter()
        .enumerate()
        .map(|(k, s)| BigInt::from(s.clone()) - BigInt::from(layers.get(k).cloned().unwrap_or_default()))
        .collect();
    let fiber_count_ok = d.fibers.len() == expected_fibers;
    let layers_ok = d.layer_values == layers;
    let certificate_ok = d.certificate == sums;
    let passed = fiber_count_ok
        && missing.is_empty()
        && duplicates.is_empty()
        && foreign.is_empty()
        && residuals.iter().all(Zero::is_zero)
        && layers_ok
        && certificate_ok;
    Verification {
        passed,
        fiber_count_ok,
        missing,
        duplicates,
        foreign,
        residuals: residuals.iter().map(BigInt::to_string).collect(),
        layers_ok,
        certificate_ok,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementCheck {
    pub partition: String,
    pub valid: bool,
    pub member: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub property: u8,
    pub fiber: Option<usize>,
    pub status: Status,
    pub detail: String,
    pub elements: Vec<ElementCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObservationReport {
    pub n: usize,
    pub kmax: usize,
    pub checks: Vec<PropertyCheck>,
}

fn elements(spec: &[(String, Option<Partition>)], fiber: Option<&Vec<Partition>>) -> Vec<ElementCheck> {
    spec.iter()
        .map(|(label, p)| ElementCheck {
            partition: label.clone(),
            valid: p.is_some(),
            member: p.as_ref().and_then(|p| fiber.map(|f| f.contains(p))),
        })
        .collect()
}

fn set_check(
    property: u8,
    fiber_index: Option<usize>,
    spec: Vec<(String, Option<Partition>)>,
    d: &FiberDecomposition,
    per_element: bool,
) -> PropertyCheck {
    let fiber = fiber_index.and_then(|k| d.fibers.get(k));
    let elems = elements(&spec, fiber);
    let Some(fiber) = fiber else {
        return PropertyCheck {
            property,
            fiber: None,
            status: Status::NotApplicable,
            detail: "fiber index below zero".into(),
            elements: elems,
        };
    };
    let valid: Vec<&Partition> = spec.iter().filter_map(|(_, p)| p.as_ref()).collect();
    let partial = valid.len() < spec.len();
    if valid.is_empty() || (partial && !per_element) {
        return PropertyCheck {
            property,
            fiber: fiber_index,
            status: Status::NotApplicable,
            detail: "listed shapes are not all partitions of n".into(),
            elements: elems,
        };
    }
    let mut distinct: Vec<&Partition> = valid.clone();
    distinct.sort();
    distinct.dedup();
    let mut detail = String::new();
    if distinct.len() < valid.len() {
        let _ = write!(detail, "list has {} entries, {} distinct; compared as a set. ", valid.len(), distinct.len());
    }
    if partial {
        let _ = write!(
            detail,
            "{} of {} listed shapes are partitions of n; membership checked per element. ",
            valid.len(),
            spec.len()
        );
    }
    let extra: Vec<String> = fiber.iter().filter(|p| !distinct.contains(p)).map(Partition::to_string).collect();
    let missing: Vec<String> = distinct.iter().filter(|p| !fiber.contains(p)).map(|p| p.to_string()).collect();
    // a partial list says nothing about what else the fiber may hold
    let holds = missing.is_empty() && (partial || extra.is_empty());
    if !missing.is_empty() || !extra.is_empty() {
        let _ = write!(detail, "missing [{}], extra [{}]", missing.join(" "), extra.join(" "));
    }
    PropertyCheck {
        property,
        fiber: fiber_index,
        status: if holds { Status::Holds } else { Status::Fails },
        detail: detail.trim_end().to_string(),
        elements: elems,
    }
}

/// Checks the four fiber properties against one decomposition, each marked
/// not applicable when its named shapes are not partitions of `n`.
pub fn check_observations(n: usize, d: &FiberDecomposition) -> ObservationReport {
    let kmax = layer_count(n).saturating_sub(1);
    let mut checks = Vec::new();
    let one: Vec<(String, Option<Partition>)> =
        [vec![n as isize - 1, 1], vec![n as isize - 2, 1, 1]].iter().map(|p| named(n, p)).collect();
    checks.push(set_check(1, Some(kmax), one, d, false));
    checks.push(set_check(2, kmax.checked_sub(1), second_fiber_spec(n), d, false));
    checks.push(set_check(3, kmax.checked_sub(2), third_fiber_spec(n), d, true));
    for i in 1..=kmax {
        let (label, p) = containment_spec(n, i);
        let fiber = d.fibers.get(kmax - i);
        let elems = elements(&[(label.clone(), p.clone())], fiber);
        let (status, detail) = if i == 1 {
            (Status::NotApplicable, "second part is zero; read as applying from i = 2".to_string())
        } else {
            match (&p, fiber) {
                (Some(p), Some(f)) if f.contains(p) => (Status::Holds, String::new()),
                (Some(_), Some(_)) => (Status::Fails, format!("{label} not in fiber {}", kmax - i)),
                _ => (Status::NotApplicable, format!("{label} is not a partition of {n}")),
            }
        };
        checks.push(PropertyCheck { property: 4, fiber: Some(kmax - i), status, detail, elements: elems });
    }
    ObservationReport { n, kmax, checks }
}

/// `f(n-1,1) + f(n-2,1,1)` and the top layer value.
pub fn top_fiber_identity(n: usize) -> Result<(BigUint, BigUint), FiberError> {
    if n < MIN_FIBER_DEGREE {
        return Err(FiberError::OutOfRange { n, min: MIN_FIBER_DEGREE, max: usize::MAX });
    }
    let lhs: BigUint = top_fiber(n).iter().map(degree).sum::<Result<BigUint, _>>()?;
    let rhs = layer_a(n, layer_count(n) - 1)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::total_degree_sum;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn n4_decomposition() -> FiberDecomposition {
        FiberDecomposition {
            n: 4,
            fibers: vec![vec![p(&[2, 2]), p(&[1, 1, 1, 1])], vec![p(&[3, 1]), p(&[2, 1, 1])]],
            layer_values: vec![3u32.into(), 6u32.into()],
            certificate: vec![3u32.into(), 6u32.into()],
        }
    }

    #[test]
    fn search_examples() {
        let out = search_decomposition(4, &SearchConfig::default()).unwrap();
        assert!(out.exhausted);
        assert_eq!(out.solutions.len(), 3);
        assert_eq!(out.solutions[0], n4_decomposition());
        let cfg = SearchConfig {
            constraints: Constraints { fix_top: true, ..Constraints::default() },
            ..SearchConfig::default()
        };
        let out = search_decomposition(4, &cfg).unwrap();
        assert_eq!(out.solutions[0].fibers[1], vec![p(&[3, 1]), p(&[2, 1, 1])]);
        let out = search_decomposition(5, &SearchConfig::default()).unwrap();
        assert!(out.solutions.iter().any(|d| d.fibers[1] == vec![p(&[4, 1]), p(&[3, 1, 1])]));
        assert!(matches!(search_decomposition(3, &SearchConfig::default()), Err(FiberError::OutOfRange { .. })));
        assert!(search_decomposition(13, &SearchConfig::default()).is_err());
    }

    #[test]
    fn verification_examples() {
        assert!(verify_decomposition(&n4_decomposition()).passed);
        let mut moved = n4_decomposition();
        moved.fibers = vec![vec![p(&[1, 1, 1, 1])], vec![p(&[3, 1]), p(&[2, 1, 1]), p(&[2, 2])]];
        let v = verify_decomposition(&moved);
        assert!(!v.passed);
        assert_eq!(v.residuals, vec!["-2", "2"]);
        let mut empty = n4_decomposition();
        empty.fibers = vec![Vec::new(), Vec::new()];
        let v = verify_decomposition(&empty);
        assert!(!v.passed);
        assert_eq!(v.missing.len(), 4);
    }

    #[test]
    fn every_solution_verifies() {
        for n in 4..=8 {
            let cfg = SearchConfig { max_solutions: 25, ..SearchConfig::default() };
            let out = search_decomposition(n, &cfg).unwrap();
            assert!(!out.solutions.is_empty(), "n = {n}");
            for d in &out.solutions {
                assert!(verify_decomposition(d).passed);
            }
        }
    }

    #[test]
    fn independent_paths_agree() {
        let mut memo = HashMap::new();
        for n in 1..=12 {
            for lambda in enumerate_partitions(n) {
                assert_eq!(syt_count(lambda.parts(), &mut memo), degree(&lambda).unwrap());
            }
        }
        for n in 2..=14 {
            for k in 0..layer_count(n) {
                assert_eq!(layer_by_matchings(n, k), layer_a(n, k).unwrap());
            }
        }
    }

    #[test]
    fn layers_sum_to_degree_sum_minus_one() {
        for n in 2..=14 {
            let total: BigUint = (0..layer_count(n)).map(|k| layer_a(n, k).unwrap()).sum();
            assert_eq!(total + 1u32, total_degree_sum(n).unwrap());
        }
    }

    #[test]
    fn top_identity_and_residual_sums() {
        for n in 4..=12 {
            let (lhs, rhs) = top_fiber_identity(n).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(rhs, BigUint::from(n * (n - 1) / 2));
            let rest: BigUint = (0..layer_count(n) - 1).map(|k| layer_a(n, k).unwrap()).sum();
            assert_eq!(rest, total_degree_sum(n).unwrap() - 1u32 - rhs);
        }
    }

    #[test]
    fn count_all_matches_listing() {
        for n in 4..=7 {
            let cfg = SearchConfig { max_solutions: usize::MAX, count_all: true, ..SearchConfig::default() };
            let out = search_decomposition(n, &cfg).unwrap();
            assert!(out.exhausted);
            assert_eq!(out.total_count, Some(out.solutions.len() as u128));
            let mut sorted = out.solutions.clone();
            sorted.dedup();
            assert_eq!(sorted.len(), out.solutions.len());
        }
    }

    #[test]
    fn observation_applicability() {
        let r = check_observations(4, &n4_decomposition());
        assert_eq!(r.checks[0].status, Status::Holds);
        assert_eq!(r.checks[1].status, Status::NotApplicable);
        assert_eq!(r.checks[2].status, Status::NotApplicable);
        assert_eq!(r.checks[3].status, Status::NotApplicable);
        let cfg = SearchConfig {
            constraints: Constraints { fix_top: true, ..Constraints::default() },
            ..SearchConfig::default()
        };
        let d = &search_decomposition(10, &cfg).unwrap().solutions[0];
        let r = check_observations(10, d);
        let three = r.checks.iter().find(|c| c.property == 3).unwrap();
        assert!(three.detail.contains("11 entries, 10 distinct"), "{}", three.detail);
        assert!(three.detail.contains("11 of 12 listed shapes"));
        assert!(!three.elements[11].valid);
        let four: Vec<_> = r.checks.iter().filter(|c| c.property == 4).collect();
        assert_eq!(four.len(), 4);
        assert!(four.iter().all(|c| c.status == Status::NotApplicable));
        assert_eq!(four[1].elements[0].partition, "[7,1]");
    }

    #[test]
    fn second_fiber_sums_short_of_its_layer() {
        for n in 6..=12 {
            let kmax = layer_count(n) - 1;
            let sum: BigUint = second_fiber_spec(n).iter().map(|(_, p)| degree(p.as_ref().unwrap()).unwrap()).sum();
            assert_eq!(sum + 1u32, layer_a(n, kmax - 1).unwrap());
        }
        let cfg = SearchConfig {
            constraints: Constraints { fix_top: true, fix_second: true, containment: false },
            ..SearchConfig::default()
        };
        let out = search_decomposition(8, &cfg).unwrap();
        assert!(out.solutions.is_empty() && out.exhausted);
    }

    #[test]
    fn output_is_deterministic_across_pools() {
        let cfg = SearchConfig {
            constraints: Constraints { fix_top: true, ..Constraints::default() },
            ..SearchConfig::default()
        };
        let base = search_decomposition(9, &cfg).unwrap().to_json();
        for threads in [1, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let again = pool.install(|| search_decomposition(9, &cfg).unwrap().to_json());
            assert_eq!(base, again);
        }
    }

    #[test]
    fn csv_rows_cover_every_partition() {
        let rows = n4_decomposition().csv_rows().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0], ["4".to_string(), "[2,2]".into(), "2".into(), "0".into()]);
    }
}
