//! Brute-force counts of twisted involutions `{g : alpha(g) = g^-1}` and the
//! checks built on them.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::automorphisms::{all_outer_s6, class_representative, Automorphism, AutomorphismError, VerifyMode};
use crate::partitions::{enumerate_partitions, total_degree_sum, PartitionError};
use crate::perm::{factorial_u64, rank_chunks, visit_range, Permutation};

pub const DEFAULT_TWISTED_BOUND: usize = 10;
/// Largest degree reachable with `allow_extended`.
pub const EXTENDED_TWISTED_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistedError {
    #[error("n = {n} exceeds the scan bound {bound}")]
    OverBound { n: usize, bound: usize },
    #[error("automorphism {auto} acts on S_{got}, expected S_{expected}")]
    DegreeMismatch { auto: String, expected: usize, got: usize },
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub max_degree: usize,
    /// Lifts the bound to [`EXTENDED_TWISTED_BOUND`]; expect minutes at n = 11 and hours at n = 12.
    pub allow_extended: bool,
    pub chunk_len: u64,
    pub witness_cap: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig { max_degree: DEFAULT_TWISTED_BOUND, allow_extended: false, chunk_len: 8192, witness_cap: 1000 }
    }
}

impl ScanConfig {
    fn bound(&self) -> usize {
        if self.allow_extended {
            EXTENDED_TWISTED_BOUND
        } else {
            self.max_degree.min(EXTENDED_TWISTED_BOUND)
        }
    }
}

#[derive(Debug, Clone)]
pub struct TwistedCount {
    pub automorphism: String,
    pub n: usize,
    pub count: u64,
    /// First `witness_cap` members in rank order.
    pub witnesses: Vec<Permutation>,
    pub elapsed: Duration,
}

fn twisted_test(alpha: &Automorphism) -> impl Fn(&Permutation) -> bool + Sync + '_ {
    move |g: &Permutation| {
        let gi = g.images0();
        match alpha {
            Automorphism::Identity(_) => gi.iter().enumerate().all(|(i, &v)| gi[v as usize] as usize == i),
            // x g x^-1 = g^-1  <=>  g(x(g(i))) = x(i)
            Automorphism::Inner(x) => {
                let xi = x.images0();
                (0..gi.len()).all(|i| gi[xi[gi[i] as usize] as usize] == xi[i])
            }
            Automorphism::OuterS6(table) => {
                let image = table.apply(g);
                image.compose_unchecked(g).is_identity()
            }
        }
    }
}

/// Exact `|S_alpha|`; identical for every chunking of the rank space.
pub fn enumerate_twisted(alpha: &Automorphism, config: &ScanConfig) -> Result<TwistedCount, TwistedError> {
    let n = alpha.degree();
    let bound = config.bound();
    if n > bound {
        return Err(TwistedError::OverBound { n, bound });
    }
    let start = Instant::now();
    let test = twisted_test(alpha);
    let cap = config.witness_cap;
    let partials: Vec<(u64, Vec<Permutation>)> = rank_chunks(n, config.chunk_len)
        .into_par_iter()
        .map(|range| {
            let mut count = 0u64;
            let mut witnesses = Vec::new();
            visit_range(n, range, |g| {
                if test(g) {
                    count += 1;
                    if witnesses.len() < cap {
                        witnesses.push(g.clone());
                    }
                }
            });
            (count, witnesses)
        })
        .collect();
    let mut count = 0;
    let mut witnesses = Vec::new();
    for (c, w) in partials {
        count += c;
        let room = cap - witnesses.len();
        witnesses.extend(w.into_iter().take(room));
    }
    Ok(TwistedCount { automorphism: alpha.spec(), n, count, witnesses, elapsed: start.elapsed() })
}

/// `T(S_n)` as a machine integer; exact for every degree a scan can reach.
pub fn degree_sum_u64(n: usize) -> Result<u64, TwistedError> {
    Ok(total_degree_sum(n)?.to_u64().expect("T(S_n) fits in u64 for scannable n"))
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundEntry {
    pub n: usize,
    pub automorphism: String,
    pub count: u64,
    #[serde(rename = "T")]
    pub t: u64,
    pub bound_ok: bool,
    pub equality: bool,
    /// `ord(x)` for inner automorphisms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_order: Option<u64>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub n: usize,
    #[serde(rename = "T")]
    pub t: u64,
    pub entries: Vec<BoundEntry>,
    pub all_ok: bool,
}

/// Checks `|S_alpha| <= T(S_n)` for each automorphism.
pub fn verify_bound(n: usize, autos: &[Automorphism], config: &ScanConfig) -> Result<BoundReport, TwistedError> {
    let t = degree_sum_u64(n)?;
    let mut entries = Vec::with_capacity(autos.len());
    for alpha in autos {
        if alpha.degree() != n {
            return Err(TwistedError::DegreeMismatch { auto: alpha.spec(), expected: n, got: alpha.degree() });
        }
        let count = enumerate_twisted(alpha, config)?.count;
        let x_order = match alpha {
            Automorphism::Inner(x) => Some(x.order() as u64),
            Automorphism::Identity(_) => Some(1),
            Automorphism::OuterS6(_) => None,
        };
        entries.push(BoundEntry {
            n,
            automorphism: alpha.spec(),
            count,
            t,
            bound_ok: count <= t,
            equality: count == t,
            x_order,
        });
    }
    let all_ok = entries.iter().all(|e| e.bound_ok);
    Ok(BoundReport { n, t, entries, all_ok })
}

/// Identity followed by conjugation by one representative of every class,
/// classes in reverse-lexicographic cycle-type order.
pub fn inner_class_sweep(n: usize) -> Vec<Automorphism> {
    std::iter::once(Automorphism::Identity(n))
        .chain(enumerate_partitions(n).iter().map(|mu| Automorphism::Inner(class_representative(n, mu.parts()))))
        .collect()
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OuterSweepReport {
    pub automorphisms: usize,
    /// Count value to number of automorphisms attaining it.
    pub count_multiset: BTreeMap<u64, usize>,
    pub max: u64,
    pub identity_count: u64,
    pub max_below_identity: bool,
    pub all_within_bound: bool,
    pub per_automorphism: Vec<(String, u64)>,
}

/// Builds all 720 outer automorphisms of `S_6` and counts each `|S_gamma|`.
pub fn sweep_outer_s6(mode: VerifyMode) -> Result<OuterSweepReport, TwistedError> {
    let autos = all_outer_s6(mode)?;
    let per_automorphism: Vec<(String, u64)> = autos
        .iter()
        .map(|a| match a {
            Automorphism::OuterS6(t) => (t.spec(), t.count_twisted()),
            _ => unreachable!("sweep only builds outer automorphisms"),
        })
        .collect();
    let mut count_multiset = BTreeMap::new();
    for (_, c) in &per_automorphism {
        *count_multiset.entry(*c).or_insert(0) += 1;
    }
    let max = per_automorphism.iter().map(|(_, c)| *c).max().unwrap_or(0);
    let identity_count = enumerate_twisted(&Automorphism::Identity(6), &ScanConfig::default())?.count;
    let t = degree_sum_u64(6)?;
    Ok(OuterSweepReport {
        automorphisms: autos.len(),
        count_multiset,
        max,
        identity_count,
        max_below_identity: max < identity_count,
        all_within_bound: per_automorphism.iter().all(|(_, c)| *c <= t),
        per_automorphism,
    })
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct OddOrderReport {
    pub n: usize,
    /// Degree 6 is outside the covered range; results there are informational.
    pub informational: bool,
    pub elements_checked: u64,
    pub twisted_members_checked: u64,
    pub counterexamples: Vec<(String, String)>,
}

impl OddOrderReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// For every `x` of odd order at least 3, every `y` with `x y x^-1 = y^-1` has order at most 2.
pub fn verify_odd_order_structure(n: usize, config: &ScanConfig) -> Result<OddOrderReport, TwistedError> {
    let bound = config.bound().min(8);
    if n > bound {
        return Err(TwistedError::OverBound { n, bound });
    }
    let all = crate::perm::all_permutations(n);
    let xs: Vec<&Permutation> = all.iter().filter(|x| x.order() >= 3 && x.order() % 2 == 1).collect();
    let results: Vec<(u64, Vec<(String, String)>)> = xs
        .par_iter()
        .map(|x| {
            let alpha = Automorphism::Inner((*x).clone());
            let test = twisted_test(&alpha);
            let mut members = 0u64;
            let mut bad = Vec::new();
            for y in &all {
                if test(y) {
                    members += 1;
                    if y.order() > 2 {
                        bad.push((x.to_string(), y.to_string()));
                    }
                }
            }
            (members, bad)
        })
        .collect();
    let mut report = OddOrderReport {
        n,
        informational: n == 6,
        elements_checked: xs.len() as u64,
        twisted_members_checked: 0,
        counterexamples: Vec::new(),
    };
    for (members, bad) in results {
        report.twisted_members_checked += members;
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub automorphism: String,
    pub count: u64,
    pub identity_count: u64,
    /// `|S_alpha| > |S_id|`, which would certify a non-real irreducible.
    pub fires: bool,
    /// Every irreducible of `S_n` is real, so the criterion is expected never to fire.
    pub expected_fires: bool,
}

pub fn complex_rep_criterion(alpha: &Automorphism, config: &ScanConfig) -> Result<CriterionReport, TwistedError> {
    let n = alpha.degree();
    let count = enumerate_twisted(alpha, config)?.count;
    let identity_count = enumerate_twisted(&Automorphism::Identity(n), config)?.count;
    Ok(CriterionReport {
        n,
        automorphism: alpha.spec(),
        count,
        identity_count,
        fires: count > identity_count,
        expected_fires: false,
    })
}

/// `n!/2`, the ceiling on twisted counts for `n > 3`.
pub fn half_order(n: usize) -> u64 {
    factorial_u64(n) / 2
}

pub fn degree_sum_big(n: usize) -> Result<BigUint, TwistedError> {
    Ok(total_degree_sum(n)?)
}
