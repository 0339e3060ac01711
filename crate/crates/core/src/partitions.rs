//! Integer partitions, hook lengths and the degree sums built from them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid partition {parts:?}: {reason}")]
    Invalid { parts: Vec<usize>, reason: &'static str },
    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(
        "hook formulas disagree for {shape} at row {row}, column {col}: arm/leg {classic} vs counting form {counted}"
    )]
    HookMismatch { shape: Partition, row: usize, col: usize, classic: u64, counted: u64 },
    #[error("row count mismatch for {shape}: counting form gives {counted}, shape has {rows}")]
    RowCountMismatch { shape: Partition, counted: usize, rows: usize },
    #[error("hook product {product} does not divide {n}!")]
    NonExactDivision { n: usize, product: BigUint },
    #[error("degree sum for n = {n} disagrees: counting form {formula}, plain sum {plain}")]
    DegreeSumMismatch { n: usize, formula: BigUint, plain: BigUint },
    #[error("layer index {k} out of range for n = {n} (valid 0..{count})")]
    LayerOutOfRange { n: usize, k: usize, count: usize },
}

/// Weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Invalid { parts, reason: "no parts" });
        }
        if parts.contains(&0) {
            return Err(PartitionError::Invalid { parts, reason: "parts must be positive" });
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::Invalid { parts, reason: "parts must be weakly decreasing" });
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts and drops zeros; used for cycle types.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    /// `(n)`.
    pub fn single_row(n: usize) -> Self {
        Partition { parts: vec![n] }
    }

    /// `(1^n)`.
    pub fn single_column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (1..=cols).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Partition of `n` read from a possibly-invalid list, `None` when the list
    /// is not weakly decreasing positive or does not sum to `n`.
    pub fn checked(n: usize, parts: &[isize]) -> Option<Partition> {
        if parts.iter().any(|&p| p <= 0) {
            return None;
        }
        let parts: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
        let p = Partition::new(parts).ok()?;
        (p.size() == n).then_some(p)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PartitionError::Parse { input: s.to_string(), reason: reason.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .or_else(|| t.strip_prefix('(').and_then(|b| b.strip_suffix(')')))
            .ok_or_else(|| err("expected brackets"))?;
        let parts = body
            .split(',')
            .map(|x| x.parse::<usize>().map_err(|_| err(&format!("bad part {x:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and `(1^n)` last.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "partitions of n need n >= 1");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: current.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// Hook lengths of every cell, row-major; `hooks[l][j]` is the 0-based cell `(l, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HookGrid {
    shape: Partition,
    hooks: Vec<Vec<u64>>,
}

impl HookGrid {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn hooks(&self) -> &[Vec<u64>] {
        &self.hooks
    }

    pub fn product(&self) -> BigUint {
        self.hooks.iter().flatten().fold(BigUint::one(), |acc, &h| acc * h)
    }
}

fn classic_hooks(shape: &Partition) -> Vec<Vec<u64>> {
    let parts = shape.parts();
    let conj = shape.conjugate();
    parts
        .iter()
        .enumerate()
        .map(|(l, &row)| {
            (0..row)
                .map(|j| {
                    let arm = row - j - 1;
                    let leg = conj.parts()[j] - l - 1;
                    (arm + leg + 1) as u64
                })
                .collect()
        })
        .collect()
}

/// Hook lengths through the row-indicator counting form: the shape is padded
/// to `n` rows `i_1..i_n`, `omega(j, i)` tests whether a row of length `i`
/// reaches column `j`, `gamma(l, j)` counts such rows below row `l`, and the
/// number of occupied rows is the sum of the positivity indicators.
struct CountingForm {
    rows: Vec<usize>,
}

impl CountingForm {
    fn new(shape: &Partition) -> Self {
        let n = shape.size();
        let mut rows = shape.parts().to_vec();
        rows.resize(n, 0);
        CountingForm { rows }
    }

    fn omega(j: usize, i_k: usize) -> usize {
        usize::from(i_k >= j)
    }

    fn lambda(i_k: usize) -> usize {
        usize::from(i_k > 0)
    }

    /// 1-based `l`, `j`.
    fn gamma(&self, l: usize, j: usize) -> usize {
        let n = self.rows.len();
        if l < n {
            (l + 1..=n).map(|k| Self::omega(j, self.rows[k - 1])).sum()
        } else {
            0
        }
    }

    fn delta(&self) -> usize {
        self.rows.iter().map(|&i| Self::lambda(i)).sum()
    }

    fn hooks(&self) -> Vec<Vec<u64>> {
        (1..=self.delta())
            .map(|l| {
                let i_l = self.rows[l - 1];
                (1..=i_l).map(|j| ((i_l - j) + 1 + self.gamma(l, j)) as u64).collect()
            })
            .collect()
    }
}

/// Computes the hook grid by arm/leg counting and by the counting form, and
/// checks that both agree cell by cell.
pub fn hook_grid(shape: &Partition) -> Result<HookGrid, PartitionError> {
    let classic = classic_hooks(shape);
    let form = CountingForm::new(shape);
    if form.delta() != shape.len() {
        return Err(PartitionError::RowCountMismatch {
            shape: shape.clone(),
            counted: form.delta(),
            rows: shape.len(),
        });
    }
    let counted = form.hooks();
    for (l, (a, b)) in classic.iter().zip(&counted).enumerate() {
        for (j, (&x, &y)) in a.iter().zip(b).enumerate() {
            if x != y {
                return Err(PartitionError::HookMismatch {
                    shape: shape.clone(),
                    row: l + 1,
                    col: j + 1,
                    classic: x,
                    counted: y,
                });
            }
        }
    }
    Ok(HookGrid { shape: shape.clone(), hooks: classic })
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn exact_div(n: usize, numerator: BigUint, product: BigUint) -> Result<BigUint, PartitionError> {
    let (q, r) = numerator.div_rem(&product);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(PartitionError::NonExactDivision { n, product })
    }
}

/// `n! / prod(hooks)`, the number of standard tableaux of this shape.
pub fn degree(shape: &Partition) -> Result<BigUint, PartitionError> {
    let grid = hook_grid(shape)?;
    let n = shape.size();
    exact_div(n, factorial(n), grid.product())
}

fn counting_form_degree(shape: &Partition) -> Result<BigUint, PartitionError> {
    let n = shape.size();
    let product = CountingForm::new(shape).hooks().iter().flatten().fold(BigUint::one(), |acc, &h| acc * h);
    exact_div(n, factorial(n), product)
}

/// Sum of all irreducible degrees of `S_n`.
///
/// Evaluated as one plus the counting-form sum over shapes with first row
/// shorter than `n`, and independently as the plain sum of `n!/prod(hooks)`
/// over every shape; the two must agree.
pub fn total_degree_sum(n: usize) -> Result<BigUint, PartitionError> {
    let partitions = enumerate_partitions(n);
    let mut formula = BigUint::one();
    let mut plain = BigUint::zero();
    for p in &partitions {
        if p.parts()[0] < n {
            formula += counting_form_degree(p)?;
        }
        plain += degree(p)?;
    }
    if formula != plain {
        return Err(PartitionError::DegreeSumMismatch { n, formula, plain });
    }
    Ok(formula)
}

/// `a_0 = a_1 = 1`, `a_n = a_{n-1} + (n-1) a_{n-2}`.
pub fn recurrence_a(n: usize) -> BigUint {
    let mut prev = BigUint::one();
    let mut cur = BigUint::one();
    for k in 2..=n {
        let next = &cur + &prev * (k as u64 - 1);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Number of layers `floor(n/2)` in the involution-count expansion.
pub fn layer_count(n: usize) -> usize {
    n / 2
}

/// `n! / (2^m m! (n - 2m)!)` where `m` is the number of transpositions the
/// layer counts; `m = (n - 2k)/2` for even `n` and `(n - 2k - 1)/2` for odd `n`.
pub fn layer_a(n: usize, k: usize) -> Result<BigUint, PartitionError> {
    let count = layer_count(n);
    if k >= count {
        return Err(PartitionError::LayerOutOfRange { n, k, count });
    }
    let fixed = if n.is_multiple_of(2) { 2 * k } else { 2 * k + 1 };
    let m = (n - fixed) / 2;
    let denom = (BigUint::one() << m) * factorial(m) * factorial(fixed);
    exact_div(n, factorial(n), denom)
}

/// Number of elements of order exactly 2 in `S_n`, summed layer by layer.
pub fn involution_count_closed_form(n: usize) -> BigUint {
    (0..layer_count(n)).map(|k| layer_a(n, k).expect("k in range")).sum()
}
