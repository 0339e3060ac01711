//! Permutations of `{1..n}` in one-line form.
//!
//! Points are 1-based at every public boundary (parsing, display, `image`,
//! cycle lists) and 0-based inside the `images` buffer. Products apply the
//! right factor first: `p.compose(&q)` maps `i` to `p(q(i))`.

use std::fmt;
use std::ops::{Mul, Range};
use std::str::FromStr;

use thiserror::Error;

/// Largest degree accepted by [`enumerate_group`] unless a caller opts into
/// a larger bound with [`enumerate_group_with_limit`].
pub const DEFAULT_MAX_ENUM_DEGREE: usize = 10;

/// Hard ceiling for ranked enumeration; `20!` is the last factorial below `u64::MAX`.
pub const MAX_RANKABLE_DEGREE: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation of 1..{n}: {detail}")]
    NotBijective { n: usize, detail: String },
    #[error("degree {0} is outside the supported range 1..=255")]
    BadDegree(usize),
    #[error("rank range {start}..{end} is out of bounds for {n}! = {total}")]
    RankOutOfBounds { n: usize, start: u64, end: u64, total: u64 },
    #[error("degree {n} exceeds the enumeration limit {limit}")]
    DegreeTooLarge { n: usize, limit: usize },
    #[error("cannot parse permutation {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

/// Disjoint cycles in canonical order: every cycle starts at its smallest
/// point and cycles are sorted by that point. Fixed points are omitted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn into_cycles(self) -> Vec<Vec<usize>> {
        self.cycles
    }

    /// Rebuilds the permutation these cycles describe.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("canonical cycles always describe a permutation")
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn check_degree(n: usize) -> Result<(), PermError> {
    if n == 0 || n > 255 {
        Err(PermError::BadDegree(n))
    } else {
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!((1..=255).contains(&n), "degree {n} out of range");
        Permutation { images: (0..n as u8).collect() }
    }

    /// Builds from 1-based one-line notation: `one_line[i]` is the image of `i + 1`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self, PermError> {
        let n = one_line.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        let mut images = Vec::with_capacity(n);
        for &v in one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(PermError::NotBijective { n, detail: format!("image {v} is repeated or out of range") });
            }
            seen[v - 1] = true;
            images.push((v - 1) as u8);
        }
        Ok(Permutation { images })
    }

    /// Builds from 0-based images.
    pub fn from_images0(images: Vec<u8>) -> Result<Self, PermError> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n || seen[v] {
                return Err(PermError::NotBijective {
                    n,
                    detail: format!("0-based image {v} is repeated or out of range"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based disjoint cycles; a cycle `(a, b, c)` sends a to b, b to c, c to a.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        check_degree(n)?;
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > n {
                    return Err(PermError::NotBijective { n, detail: format!("point {p} is outside 1..{n}") });
                }
                if used[p - 1] {
                    return Err(PermError::NotBijective {
                        n,
                        detail: format!("point {p} appears in more than one cycle position"),
                    });
                }
                used[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// Transposition `(a, b)` on 1-based points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, PermError> {
        Self::from_cycles(n, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn images0(&self) -> &[u8] {
        &self.images
    }

    /// 1-based one-line form.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `result(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch { left: self.degree(), right: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&q| self.images[q as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `x * y * x^-1`.
    pub fn conjugate(x: &Permutation, y: &Permutation) -> Result<Permutation, PermError> {
        if x.degree() != y.degree() {
            return Err(PermError::DegreeMismatch { left: x.degree(), right: y.degree() });
        }
        // (x y x^-1)(x(i)) = x(y(i))
        let mut images = vec![0u8; x.degree()];
        for i in 0..x.degree() {
            images[x.images[i] as usize] = x.images[y.images[i] as usize];
        }
        Ok(Permutation { images })
    }

    pub fn pow(&self, exp: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            e >>= 1;
        }
        result
    }

    /// Lengths of all cycles, fixed points included, in point order of first appearance.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.images[p] as usize;
                len += 1;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Least `m >= 1` with `self^m = e`, i.e. the lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, len| num_integer::lcm(acc, len as u128))
    }

    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        // Scanning starts in increasing order, so each cycle is discovered from
        // its smallest point and cycles come out already sorted.
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { n, cycles }
    }

    /// Lexicographic rank of the one-line form among all of `S_n`.
    pub fn rank(&self) -> u64 {
        let n = self.degree();
        assert!(n <= MAX_RANKABLE_DEGREE, "rank is only defined for n <= {MAX_RANKABLE_DEGREE}");
        let mut used = 0u32;
        let mut rank = 0u64;
        for (i, &v) in self.images.iter().enumerate() {
            let smaller_unused = (v as u32 - (used & ((1u32 << v) - 1)).count_ones()) as u64;
            rank += smaller_unused * factorial_u64(n - 1 - i);
            used |= 1 << v;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`] via the factorial number system.
    pub fn unrank(n: usize, rank: u64) -> Result<Permutation, PermError> {
        check_degree(n)?;
        if n > MAX_RANKABLE_DEGREE {
            return Err(PermError::DegreeTooLarge { n, limit: MAX_RANKABLE_DEGREE });
        }
        let total = factorial_u64(n);
        if rank >= total {
            return Err(PermError::RankOutOfBounds { n, start: rank, end: rank + 1, total });
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut images = Vec::with_capacity(n);
        let mut r = rank;
        for i in 0..n {
            let f = factorial_u64(n - 1 - i);
            let idx = (r / f) as usize;
            r %= f;
            images.push(pool.remove(idx));
        }
        Ok(Permutation { images })
    }

    /// Advances to the lexicographic successor in place; returns false at the last permutation.
    pub fn advance(&mut self) -> bool {
        next_permutation(&mut self.images)
    }

    /// Parses one-line `[3,1,2]` or cycle `(1,3,2)(4,5)` notation.
    ///
    /// Cycle notation needs a degree when the largest moved point is not `n`;
    /// pass `degree = None` to infer it from the largest point mentioned.
    pub fn parse(input: &str, degree: Option<usize>) -> Result<Permutation, PermError> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| PermError::Parse { input: input.to_string(), reason: reason.to_string() };
        if let Some(body) = s.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or_else(|| err("missing closing ']'"))?;
            let values = parse_list(body).map_err(|e| err(&e))?;
            let p = Permutation::from_one_line(&values)?;
            if let Some(n) = degree {
                if n != p.degree() {
                    return Err(PermError::DegreeMismatch { left: n, right: p.degree() });
                }
            }
            return Ok(p);
        }
        if !s.starts_with('(') {
            return Err(err("expected '[' or '('"));
        }
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = inner.find(')').ok_or_else(|| err("missing ')'"))?;
            let values = parse_list(&inner[..close]).map_err(|e| err(&e))?;
            if !values.is_empty() {
                cycles.push(values);
            }
            rest = &inner[close + 1..];
        }
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0);
        let n = match degree {
            Some(n) if n < max_point => {
                return Err(err(&format!("point {max_point} exceeds degree {n}")));
            }
            Some(n) => n,
            None if max_point == 0 => return Err(err("identity in cycle form needs an explicit degree")),
            None => max_point,
        };
        Permutation::from_cycles(n, &cycles)
    }
}

fn parse_list(body: &str) -> Result<Vec<usize>, String> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',').map(|t| t.parse::<usize>().map_err(|_| format!("bad integer {t:?}"))).collect()
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Permutation::parse(s, None)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.cycle_decomposition().fmt(f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}{}", self.degree(), self)
    }
}

/// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub fn factorial_u64(n: usize) -> u64 {
    assert!(n <= MAX_RANKABLE_DEGREE, "{n}! overflows u64");
    (1..=n as u64).product()
}

/// Permutations of lexicographic rank in `ranks`, each exactly once.
pub struct GroupEnumeration {
    current: Option<Permutation>,
    remaining: u64,
}

impl Iterator for GroupEnumeration {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let cur = self.current.as_mut()?;
        let out = cur.clone();
        if self.remaining > 0 {
            cur.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

pub fn enumerate_group(n: usize, ranks: Range<u64>) -> Result<GroupEnumeration, PermError> {
    enumerate_group_with_limit(n, ranks, DEFAULT_MAX_ENUM_DEGREE)
}

pub fn enumerate_group_with_limit(n: usize, ranks: Range<u64>, limit: usize) -> Result<GroupEnumeration, PermError> {
    check_degree(n)?;
    if n > limit.min(MAX_RANKABLE_DEGREE) {
        return Err(PermError::DegreeTooLarge { n, limit: limit.min(MAX_RANKABLE_DEGREE) });
    }
    let total = factorial_u64(n);
    if ranks.start > ranks.end || ranks.end > total {
        return Err(PermError::RankOutOfBounds { n, start: ranks.start, end: ranks.end, total });
    }
    let current = if ranks.start < ranks.end { Some(Permutation::unrank(n, ranks.start)?) } else { None };
    Ok(GroupEnumeration { current, remaining: ranks.end - ranks.start })
}

/// Splits `0..n!` into consecutive chunks of at most `chunk_len` ranks.
pub fn rank_chunks(n: usize, chunk_len: u64) -> Vec<Range<u64>> {
    let total = factorial_u64(n);
    let step = chunk_len.max(1);
    (0..total.div_ceil(step)).map(|i| i * step..((i + 1) * step).min(total)).collect()
}

/// Calls `visit` on every permutation with rank in `ranks`, reusing one buffer.
pub(crate) fn visit_range(n: usize, ranks: Range<u64>, mut visit: impl FnMut(&Permutation)) {
    if ranks.start >= ranks.end {
        return;
    }
    let mut p = Permutation::unrank(n, ranks.start).expect("range validated by caller");
    for i in ranks.clone() {
        visit(&p);
        if i + 1 < ranks.end {
            p.advance();
        }
    }
}

/// All permutations of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::with_capacity(factorial_u64(n) as usize);
    visit_range(n, 0..factorial_u64(n), |p| out.push(p.clone()));
    out
}
