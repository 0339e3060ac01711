//! Cycle types, class sizes, Murnaghan–Nakayama characters and twisted
//! Frobenius–Schur indicators of `S_n`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::automorphisms::{Automorphism, AutomorphismError};
use crate::partitions::{enumerate_partitions, factorial, Partition, PartitionError};
use crate::perm::{factorial_u64, rank_chunks, visit_range, Permutation};
use crate::twisted::{self, TwistedError};

/// Largest degree for which indicators are computed by a full group scan.
pub const DEFAULT_INDICATOR_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error("shape {lambda} and class {mu} have different sizes")]
    SizeMismatch { lambda: Partition, mu: Partition },
    #[error("n = {n} exceeds the brute-force bound {bound}")]
    OverBound { n: usize, bound: usize },
    #[error("character table check failed: {0}")]
    TableCheck(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
}

/// Sorted cycle lengths, fixed points counted as parts of size 1.
pub fn cycle_type(p: &Permutation) -> Partition {
    Partition::from_unsorted(p.cycle_lengths()).expect("cycle lengths sum to n")
}

/// `n! / z_mu` with `z_mu = prod k^{m_k} m_k!`.
pub fn class_size(mu: &Partition) -> BigUint {
    let mut multiplicity: HashMap<usize, usize> = HashMap::new();
    for &k in mu.parts() {
        *multiplicity.entry(k).or_default() += 1;
    }
    let z =
        multiplicity.iter().fold(BigUint::one(), |acc, (&k, &m)| acc * BigUint::from(k).pow(m as u32) * factorial(m));
    factorial(mu.size()) / z
}

/// Strictly decreasing beta-numbers `lambda_i + (len - 1 - i)`.
fn beta_set(parts: &[usize]) -> Vec<usize> {
    let len = parts.len();
    parts.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect()
}

fn from_beta(beta: &[usize]) -> Vec<usize> {
    let len = beta.len();
    beta.iter().enumerate().map(|(i, &b)| b - (len - 1 - i)).filter(|&p| p > 0).collect()
}

/// Border-strip recursion with a shared memo keyed by `(shape, remaining class)`.
///
/// Removing a border strip of length `r` moves one bead of the beta-set down
/// by `r`; the strip height is the number of beads jumped over and the sign is
/// `(-1)^height`.
type MnMemo = HashMap<(Vec<usize>, Vec<usize>), i64>;

#[derive(Default)]
pub struct MnEngine {
    memo: RwLock<MnMemo>,
}

impl MnEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Result<i64, CharacterError> {
        if lambda.size() != mu.size() {
            return Err(CharacterError::SizeMismatch { lambda: lambda.clone(), mu: mu.clone() });
        }
        Ok(self.eval(lambda.parts(), mu.parts()))
    }

    fn eval(&self, lambda: &[usize], mu: &[usize]) -> i64 {
        if mu.is_empty() {
            return 1;
        }
        let key = (lambda.to_vec(), mu.to_vec());
        if let Some(&v) = self.memo.read().expect("memo lock").get(&key) {
            return v;
        }
        let r = mu[0];
        let beta = beta_set(lambda);
        let mut total = 0i64;
        for (idx, &b) in beta.iter().enumerate() {
            if b < r || beta.contains(&(b - r)) {
                continue;
            }
            let target = b - r;
            let height = beta.iter().filter(|&&c| c > target && c < b).count();
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|x, y| y.cmp(x));
            let sub = self.eval(&from_beta(&next), &mu[1..]);
            total += if height % 2 == 0 { sub } else { -sub };
        }
        self.memo.write().expect("memo lock").insert(key, total);
        total
    }
}

fn shared_engine() -> &'static MnEngine {
    static ENGINE: OnceLock<MnEngine> = OnceLock::new();
    ENGINE.get_or_init(MnEngine::new)
}

/// `chi^lambda` evaluated on the class of cycle type `mu`.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64, CharacterError> {
    shared_engine().value(lambda, mu)
}

/// Full character table of `S_n`; rows are irreducibles, columns classes,
/// both in reverse-lexicographic partition order.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
    class_sizes: Vec<BigUint>,
    index: HashMap<Vec<usize>, usize>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let partitions = enumerate_partitions(n);
        let engine = MnEngine::new();
        let values = partitions
            .iter()
            .map(|lambda| partitions.iter().map(|mu| engine.eval(lambda.parts(), mu.parts())).collect())
            .collect();
        let class_sizes = partitions.iter().map(class_size).collect();
        let index = partitions.iter().enumerate().map(|(i, p)| (p.parts().to_vec(), i)).collect();
        CharacterTable { n, partitions, values, class_sizes, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn classes(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn class_sizes(&self) -> &[BigUint] {
        &self.class_sizes
    }

    pub fn value(&self, irrep: usize, class: usize) -> i64 {
        self.values[irrep][class]
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    pub fn class_index(&self, mu: &Partition) -> usize {
        self.index[mu.parts()]
    }

    /// Column of the class containing `g`.
    pub fn class_of(&self, g: &Permutation) -> usize {
        let mut lengths = g.cycle_lengths();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        self.index[&lengths]
    }

    /// Degree column, row orthogonality and class-size total, all exact.
    pub fn verify(&self) -> Result<(), CharacterError> {
        let identity_class = self.partitions.len() - 1;
        for (i, lambda) in self.partitions.iter().enumerate() {
            let degree = crate::partitions::degree(lambda)?;
            if BigInt::from(self.values[i][identity_class]) != BigInt::from(degree.clone()) {
                return Err(CharacterError::TableCheck(format!("chi^{lambda}(1) != {degree}")));
            }
        }
        let order = BigInt::from(factorial(self.n));
        for a in 0..self.partitions.len() {
            for b in a..self.partitions.len() {
                let inner: BigInt = (0..self.partitions.len())
                    .map(|c| {
                        BigInt::from(self.class_sizes[c].clone())
                            * BigInt::from(self.values[a][c])
                            * BigInt::from(self.values[b][c])
                    })
                    .sum();
                let expected = if a == b { order.clone() } else { BigInt::zero() };
                if inner != expected {
                    return Err(CharacterError::TableCheck(format!(
                        "<chi^{}, chi^{}> = {inner}",
                        self.partitions[a], self.partitions[b]
                    )));
                }
            }
        }
        let total: BigUint = self.class_sizes.iter().sum();
        if total != factorial(self.n) {
            return Err(CharacterError::TableCheck(format!("class sizes sum to {total}")));
        }
        Ok(())
    }
}

/// Histogram over classes of `g * alpha(g)` for all `g` in `S_n`.
fn product_class_histogram(alpha: &Automorphism, table: &CharacterTable) -> Result<Vec<u64>, CharacterError> {
    let n = alpha.degree();
    let classes = table.classes().len();
    let chunks = rank_chunks(n, 4096);
    let partials: Vec<Result<Vec<u64>, AutomorphismError>> = chunks
        .into_par_iter()
        .map(|range| {
            let mut hist = vec![0u64; classes];
            let mut failure = None;
            visit_range(n, range, |g| {
                if failure.is_some() {
                    return;
                }
                match alpha.apply(g) {
                    Ok(image) => hist[table.class_of(&g.compose_unchecked(&image))] += 1,
                    Err(e) => failure = Some(e),
                }
            });
            failure.map_or(Ok(hist), Err)
        })
        .collect();
    let mut hist = vec![0u64; classes];
    for partial in partials {
        for (h, v) in hist.iter_mut().zip(partial?) {
            *h += v;
        }
    }
    Ok(hist)
}

fn check_bound(n: usize, bound: usize) -> Result<(), CharacterError> {
    if n > bound {
        Err(CharacterError::OverBound { n, bound })
    } else {
        Ok(())
    }
}

/// `(1/n!) sum_g chi^lambda(g alpha(g))` by a full scan of `S_n`.
pub fn twisted_fs_indicator(alpha: &Automorphism, lambda: &Partition) -> Result<BigRational, CharacterError> {
    let n = alpha.degree();
    check_bound(n, DEFAULT_INDICATOR_BOUND)?;
    if lambda.size() != n {
        return Err(CharacterError::SizeMismatch { lambda: lambda.clone(), mu: Partition::single_column(n) });
    }
    let table = CharacterTable::new(n);
    let hist = product_class_histogram(alpha, &table)?;
    let row = table.irreps().iter().position(|p| p == lambda).expect("lambda is a partition of n");
    Ok(indicator_from_histogram(&table, &hist, row))
}

fn indicator_from_histogram(table: &CharacterTable, hist: &[u64], row: usize) -> BigRational {
    let sum: BigInt =
        hist.iter().enumerate().map(|(c, &count)| BigInt::from(count) * BigInt::from(table.value(row, c))).sum();
    BigRational::new(sum, BigInt::from(factorial_u64(table.n())))
}

#[derive(Debug, Clone)]
pub struct IndicatorEntry {
    pub lambda: Partition,
    pub value: BigRational,
}

#[derive(Debug, Clone)]
pub struct IndicatorReport {
    pub n: usize,
    pub automorphism: String,
    pub indicators: Vec<IndicatorEntry>,
    pub weighted_sum: BigRational,
    pub twisted_count: BigUint,
    /// Every indicator is real here because `S_n` characters are integer valued.
    pub all_real: bool,
}

impl IndicatorReport {
    pub fn identity_holds(&self) -> bool {
        self.weighted_sum == BigRational::from_integer(BigInt::from(self.twisted_count.clone()))
    }

    pub fn bound_holds(&self) -> bool {
        self.indicators.iter().all(|e| e.value.abs() <= BigRational::one())
    }

    pub fn to_json(&self) -> serde_json::Value {
        use crate::report::big_json;
        serde_json::json!({
            "n": self.n,
            "automorphism": self.automorphism,
            "indicators": self.indicators.iter().map(|e| serde_json::json!({
                "lambda": e.lambda.to_string(),
                "value_num": big_json(e.value.numer()),
                "value_den": big_json(e.value.denom()),
            })).collect::<Vec<_>>(),
            "weighted_sum": big_json(&self.weighted_sum.to_integer()),
            "weighted_sum_is_integer": self.weighted_sum.is_integer(),
            "twisted_count": big_json(&BigInt::from(self.twisted_count.clone())),
            "identity_holds": self.identity_holds(),
            "bound_holds": self.bound_holds(),
            "all_real": self.all_real,
        })
    }
}

/// Indicators for every irreducible, their degree-weighted sum, and the
/// independently enumerated twisted-involution count.
pub fn verify_indicator_identity(alpha: &Automorphism) -> Result<IndicatorReport, CharacterError> {
    verify_indicator_identity_with(alpha, &CharacterTable::new(alpha.degree()))
}

/// As [`verify_indicator_identity`] with a caller-supplied table, for sweeps.
pub fn verify_indicator_identity_with(
    alpha: &Automorphism,
    table: &CharacterTable,
) -> Result<IndicatorReport, CharacterError> {
    let n = alpha.degree();
    check_bound(n, DEFAULT_INDICATOR_BOUND)?;
    let hist = product_class_histogram(alpha, table)?;
    let identity_class = table.classes().len() - 1;
    let mut weighted_sum = BigRational::zero();
    let mut indicators = Vec::with_capacity(table.irreps().len());
    for (row, lambda) in table.irreps().iter().enumerate() {
        let value = indicator_from_histogram(table, &hist, row);
        weighted_sum += &value * BigRational::from_integer(BigInt::from(table.value(row, identity_class)));
        indicators.push(IndicatorEntry { lambda: lambda.clone(), value });
    }
    let count = twisted::enumerate_twisted(alpha, &twisted::ScanConfig::default())?;
    Ok(IndicatorReport {
        n,
        automorphism: alpha.spec(),
        indicators,
        weighted_sum,
        twisted_count: BigUint::from(count.count),
        all_real: true,
    })
}
