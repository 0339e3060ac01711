//! Automorphisms of `S_n`: identity, inner, and the outer automorphisms of
//! `S_6` built from pentads of synthemes, plus the explicit maps from twisted
//! involutions into ordinary involutions.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::perm::{all_permutations, PermError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("pentad index {0} out of range 1..=6")]
    BadPentadIndex(usize),
    #[error("ordering {0:?} is not a permutation of 2..=6")]
    BadOrdering(Vec<usize>),
    #[error("invalid pentad: {0}")]
    InvalidPentad(String),
    #[error("generator images do not extend to a homomorphism: image of {g} * {h} differs")]
    NotWellDefined { g: String, h: String },
    #[error("extended map is not bijective: {0} has two preimages")]
    NotBijective(String),
    #[error("extended map sends (1,2) to the transposition {0}, so it is inner")]
    TurnsOutInner(String),
    #[error("automorphism acts on S_{auto} but element lies in S_{elem}")]
    DegreeMismatch { auto: usize, elem: usize },
    #[error("cannot parse automorphism spec {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InjectionError {
    #[error("{y} is not a twisted involution of conjugation by {x}")]
    NotTwisted { x: String, y: String },
    #[error("ord({x}) = {order} is a multiple of 4; the three-case map does not cover it")]
    UncoveredCase { x: String, order: u128 },
    #[error("ord({x}) = {order} is not a multiple of 4")]
    NotMultipleOfFour { x: String, order: u128 },
    #[error("structure outside the covered subcases: {0}")]
    UncoveredSubcase(String),
    #[error("combined cycle word has odd length {0}; no pairing adjustment is defined")]
    AdjustmentUnspecified(usize),
    #[error("image {image} of {y} has order {order} > 2")]
    PostconditionViolated { y: String, image: String, order: u128 },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// How much of the homomorphism law an outer-automorphism construction checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// `phi(g h) = phi(g) phi(h)` for all 720 x 720 pairs.
    Full,
    /// `phi(g s) = phi(g) phi(s)` for every `g` and every generator `s = (1,i)`;
    /// by induction on word length this already implies the full law.
    Generators,
}

/// Five synthemes (fixed-point-free involutions of `S_6`) sharing no transposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pentad {
    synthemes: [Permutation; 5],
}

impl Pentad {
    pub fn new(synthemes: [Permutation; 5]) -> Result<Self, AutomorphismError> {
        let mut seen = HashSet::new();
        for s in &synthemes {
            let cycles = s.cycle_decomposition();
            if s.degree() != 6 || cycles.cycles().len() != 3 || cycles.cycles().iter().any(|c| c.len() != 2) {
                return Err(AutomorphismError::InvalidPentad(format!("{s} is not a syntheme")));
            }
            for c in cycles.cycles() {
                if !seen.insert((c[0], c[1])) {
                    return Err(AutomorphismError::InvalidPentad(format!(
                        "transposition ({},{}) appears twice",
                        c[0], c[1]
                    )));
                }
            }
        }
        Ok(Pentad { synthemes })
    }

    pub fn synthemes(&self) -> &[Permutation; 5] {
        &self.synthemes
    }
}

const PENTAD_TABLE: [[&str; 5]; 6] = [
    ["(1,2)(3,4)(5,6)", "(1,3)(2,5)(4,6)", "(1,4)(2,6)(3,5)", "(1,5)(2,4)(3,6)", "(1,6)(2,3)(4,5)"],
    ["(1,2)(3,4)(5,6)", "(1,3)(2,6)(4,5)", "(1,4)(2,5)(3,6)", "(1,5)(2,3)(4,6)", "(1,6)(2,4)(3,5)"],
    ["(1,2)(3,5)(4,6)", "(1,3)(2,4)(5,6)", "(1,4)(2,5)(3,6)", "(1,5)(2,6)(3,4)", "(1,6)(2,3)(4,5)"],
    ["(1,2)(3,5)(4,6)", "(1,3)(2,6)(4,5)", "(1,4)(2,3)(5,6)", "(1,5)(2,4)(3,6)", "(1,6)(2,5)(3,4)"],
    ["(1,2)(3,6)(4,5)", "(1,3)(2,4)(5,6)", "(1,4)(2,6)(3,5)", "(1,5)(2,3)(4,6)", "(1,6)(2,5)(3,4)"],
    ["(1,2)(3,6)(4,5)", "(1,3)(2,5)(4,6)", "(1,4)(2,3)(5,6)", "(1,5)(2,6)(3,4)", "(1,6)(2,4)(3,5)"],
];

/// The six pentads of `S_6`, row by row as tabulated in the classical construction.
pub fn pentad_catalog() -> &'static [Pentad; 6] {
    static CATALOG: OnceLock<[Pentad; 6]> = OnceLock::new();
    CATALOG.get_or_init(|| {
        PENTAD_TABLE.map(|row| {
            let synthemes = row.map(|s| Permutation::parse(s, Some(6)).expect("static syntheme"));
            Pentad::new(synthemes).expect("static pentad is valid")
        })
    })
}

/// Multiplication and inversion tables of `S_6` indexed by lexicographic rank.
struct S6Tables {
    elements: Vec<Permutation>,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

fn s6_tables() -> &'static S6Tables {
    static TABLES: OnceLock<S6Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let elements = all_permutations(6);
        let mut mul = vec![0u16; 720 * 720];
        for (a, g) in elements.iter().enumerate() {
            for (b, h) in elements.iter().enumerate() {
                mul[a * 720 + b] = g.compose_unchecked(h).rank() as u16;
            }
        }
        let inv = elements.iter().map(|g| g.inverse().rank() as u16).collect();
        S6Tables { elements, mul, inv }
    })
}

/// Word in the generators `(1,i)`, listed by `i`, whose product (right factor
/// first) equals `g`. The cycle through 1 is peeled first; a cycle
/// `(a1 .. ak)` becomes `(a1 ak) .. (a1 a2)` and each `(a b)` with `a != 1`
/// becomes `(1 a)(1 b)(1 a)`.
pub fn generator_word(g: &Permutation) -> Vec<usize> {
    let mut word = Vec::new();
    for cycle in g.cycle_decomposition().cycles() {
        let a1 = cycle[0];
        for &aj in cycle[1..].iter().rev() {
            if a1 == 1 {
                word.push(aj);
            } else {
                word.extend([a1, aj, a1]);
            }
        }
    }
    word
}

/// An outer automorphism of `S_6` materialized as a rank-indexed table.
pub struct OuterS6 {
    pentad: usize,
    ordering: [usize; 5],
    table: Vec<u16>,
}

impl OuterS6 {
    /// 1-based pentad index in [`pentad_catalog`].
    pub fn pentad(&self) -> usize {
        self.pentad
    }

    /// `ordering[t]` is the point `i` whose generator `(1,i)` is sent to syntheme `t + 1`.
    pub fn ordering(&self) -> [usize; 5] {
        self.ordering
    }

    pub fn apply_rank(&self, rank: usize) -> usize {
        self.table[rank] as usize
    }

    pub fn apply(&self, g: &Permutation) -> Permutation {
        s6_tables().elements[self.table[g.rank() as usize] as usize].clone()
    }

    /// Number of `g` with `phi(g) = g^-1`, read straight from the tables.
    pub fn count_twisted(&self) -> u64 {
        let inv = &s6_tables().inv;
        (0..720).filter(|&r| self.table[r] == inv[r]).count() as u64
    }

    pub fn spec(&self) -> String {
        let o: String = self.ordering.iter().map(usize::to_string).collect();
        format!("outer6:p{}:o{}", self.pentad, o)
    }
}

impl fmt::Debug for OuterS6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

/// Sends `(1, ordering[t])` to syntheme `t + 1` of the chosen pentad and
/// extends along [`generator_word`], then verifies the result.
pub fn build_outer_s6(
    pentad: usize,
    ordering: [usize; 5],
    mode: VerifyMode,
) -> Result<Automorphism, AutomorphismError> {
    let catalog = pentad_catalog();
    if !(1..=6).contains(&pentad) {
        return Err(AutomorphismError::BadPentadIndex(pentad));
    }
    let mut sorted = ordering;
    sorted.sort_unstable();
    if sorted != [2, 3, 4, 5, 6] {
        return Err(AutomorphismError::BadOrdering(ordering.to_vec()));
    }
    let synthemes = catalog[pentad - 1].synthemes();
    let mut generator_image: Vec<Option<&Permutation>> = vec![None; 7];
    for (t, &i) in ordering.iter().enumerate() {
        generator_image[i] = Some(&synthemes[t]);
    }

    let tables = s6_tables();
    let mut table = vec![0u16; 720];
    let mut hit = vec![false; 720];
    for (r, g) in tables.elements.iter().enumerate() {
        let image = generator_word(g)
            .into_iter()
            .fold(Permutation::identity(6), |acc, i| acc.compose_unchecked(generator_image[i].unwrap()));
        let ir = image.rank() as usize;
        if hit[ir] {
            return Err(AutomorphismError::NotBijective(image.to_string()));
        }
        hit[ir] = true;
        table[r] = ir as u16;
    }

    let mul = |a: usize, b: usize| tables.mul[a * 720 + b] as usize;
    let check = |a: usize, b: usize| -> Result<(), AutomorphismError> {
        if table[mul(a, b)] as usize != mul(table[a] as usize, table[b] as usize) {
            return Err(AutomorphismError::NotWellDefined {
                g: tables.elements[a].to_string(),
                h: tables.elements[b].to_string(),
            });
        }
        Ok(())
    };
    match mode {
        VerifyMode::Full => {
            for a in 0..720 {
                for b in 0..720 {
                    check(a, b)?;
                }
            }
        }
        VerifyMode::Generators => {
            let gens: Vec<usize> =
                (2..=6).map(|i| Permutation::transposition(6, 1, i).unwrap().rank() as usize).collect();
            for a in 0..720 {
                for &s in &gens {
                    check(a, s)?;
                }
            }
        }
    }

    let t12 = Permutation::transposition(6, 1, 2)?;
    let image = &tables.elements[table[t12.rank() as usize] as usize];
    if image.cycle_decomposition().cycles().len() == 1 {
        return Err(AutomorphismError::TurnsOutInner(image.to_string()));
    }
    Ok(Automorphism::OuterS6(Arc::new(OuterS6 { pentad, ordering, table })))
}

/// All 120 orderings of `2..=6` in lexicographic order.
pub fn all_orderings() -> Vec<[usize; 5]> {
    all_permutations(5)
        .into_iter()
        .map(|p| {
            let v = p.one_line();
            [v[0] + 1, v[1] + 1, v[2] + 1, v[3] + 1, v[4] + 1]
        })
        .collect()
}

/// All 720 outer automorphisms, pentad-major then ordering.
pub fn all_outer_s6(mode: VerifyMode) -> Result<Vec<Automorphism>, AutomorphismError> {
    use rayon::prelude::*;
    let jobs: Vec<(usize, [usize; 5])> =
        (1..=6).flat_map(|p| all_orderings().into_iter().map(move |o| (p, o))).collect();
    jobs.into_par_iter().map(|(p, o)| build_outer_s6(p, o, mode)).collect()
}

#[derive(Clone)]
pub enum Automorphism {
    Identity(usize),
    /// `g -> x g x^-1`.
    Inner(Permutation),
    OuterS6(Arc<OuterS6>),
}

impl Automorphism {
    pub fn degree(&self) -> usize {
        match self {
            Automorphism::Identity(n) => *n,
            Automorphism::Inner(x) => x.degree(),
            Automorphism::OuterS6(_) => 6,
        }
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation, AutomorphismError> {
        if g.degree() != self.degree() {
            return Err(AutomorphismError::DegreeMismatch { auto: self.degree(), elem: g.degree() });
        }
        Ok(match self {
            Automorphism::Identity(_) => g.clone(),
            Automorphism::Inner(x) => Permutation::conjugate(x, g)?,
            Automorphism::OuterS6(table) => table.apply(g),
        })
    }

    pub fn is_outer(&self) -> bool {
        matches!(self, Automorphism::OuterS6(_))
    }

    /// `id:n`, `inner:n:(cycles)` or `outer6:p<k>:o<ordering>`.
    pub fn spec(&self) -> String {
        match self {
            Automorphism::Identity(n) => format!("id:{n}"),
            Automorphism::Inner(x) => format!("inner:{}:{}", x.degree(), x),
            Automorphism::OuterS6(t) => t.spec(),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec())
    }
}

impl FromStr for Automorphism {
    type Err = AutomorphismError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| AutomorphismError::Parse { input: s.to_string(), reason: reason.to_string() };
        let mut fields = s.splitn(3, ':');
        let kind = fields.next().unwrap_or_default();
        match kind {
            "id" => {
                let n: usize = fields.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("expected id:<n>"))?;
                if n == 0 || n > 255 || fields.next().is_some() {
                    return Err(err("expected id:<n> with 1 <= n <= 255"));
                }
                Ok(Automorphism::Identity(n))
            }
            "inner" => {
                let n: usize =
                    fields.next().and_then(|t| t.parse().ok()).ok_or_else(|| err("expected inner:<n>:<perm>"))?;
                let body = fields.next().ok_or_else(|| err("expected inner:<n>:<perm>"))?;
                Ok(Automorphism::Inner(Permutation::parse(body, Some(n))?))
            }
            "outer6" => {
                let p = fields
                    .next()
                    .and_then(|t| t.strip_prefix('p'))
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected outer6:p<1-6>:o<ordering>"))?;
                let o = fields
                    .next()
                    .and_then(|t| t.strip_prefix('o'))
                    .ok_or_else(|| err("expected outer6:p<1-6>:o<ordering>"))?;
                let digits: Vec<usize> = o.chars().filter_map(|c| c.to_digit(10)).map(|d| d as usize).collect();
                if digits.len() != 5 || o.len() != 5 {
                    return Err(AutomorphismError::BadOrdering(digits));
                }
                build_outer_s6(p, [digits[0], digits[1], digits[2], digits[3], digits[4]], VerifyMode::Generators)
            }
            _ => Err(err("unknown kind; expected id, inner or outer6")),
        }
    }
}

fn is_twisted_for_inner(x: &Permutation, y: &Permutation) -> bool {
    Permutation::conjugate(x, y).map(|c| c == y.inverse()).unwrap_or(false)
}

/// Injects `S_{Inner(x)}` into the involutions of `S_n`:
/// `x y` when `ord(x) = 2`, `x y x^-1` when `ord(x)` is odd, and
/// `x^(ord(x)/2) y` when `ord(x)/2` is odd. Orders divisible by 4 are refused.
pub fn alpha_injection(x: &Permutation, y: &Permutation) -> Result<Permutation, InjectionError> {
    if x.degree() != y.degree() {
        return Err(PermError::DegreeMismatch { left: x.degree(), right: y.degree() }.into());
    }
    if !is_twisted_for_inner(x, y) {
        return Err(InjectionError::NotTwisted { x: x.to_string(), y: y.to_string() });
    }
    let order = x.order();
    let image = if order == 2 {
        x.compose_unchecked(y)
    } else if order % 2 == 1 {
        // ord(x) = 1 lands here too; conjugation by e is the identity map
        Permutation::conjugate(x, y)?
    } else if (order / 2) % 2 == 1 {
        x.pow((order / 2) as u64).compose_unchecked(y)
    } else {
        return Err(InjectionError::UncoveredCase { x: x.to_string(), order });
    };
    let image_order = image.order();
    if image_order > 2 {
        return Err(InjectionError::PostconditionViolated {
            y: y.to_string(),
            image: image.to_string(),
            order: image_order,
        });
    }
    Ok(image)
}

/// Which branch of the multiple-of-4 map produced an image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Mult4Case {
    /// `ord(y) <= 2`; `y` maps to itself.
    Involution,
    /// Long cycles of `y` have pairwise distinct lengths.
    DistinctLengths,
    /// `m` long cycles of common length `j`, chained by conjugation.
    EqualLengths { j: usize, m: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mult4Image {
    pub image: Permutation,
    pub case: Mult4Case,
}

/// Maps a twisted involution `y` of conjugation by `x`, `ord(x) = 0 mod 4`,
/// to an involution.
///
/// Let `y'` be the cycles of `y` of length at least 3 and `x'` the cycles of
/// `x` inside their support. Then `y'' = y x'`, its canonical cycles are
/// concatenated into one word, and consecutive entries are paired into
/// disjoint transpositions. Covered structures: long cycles of distinct
/// lengths, or `m >= 2` long cycles of a common length `j` (not both odd)
/// where `x` carries the support of each cycle onto the next one in
/// canonical order, the last onto the first.
pub fn map_mult4(x: &Permutation, y: &Permutation) -> Result<Mult4Image, InjectionError> {
    if x.degree() != y.degree() {
        return Err(PermError::DegreeMismatch { left: x.degree(), right: y.degree() }.into());
    }
    let order = x.order();
    if !order.is_multiple_of(4) {
        return Err(InjectionError::NotMultipleOfFour { x: x.to_string(), order });
    }
    if !is_twisted_for_inner(x, y) {
        return Err(InjectionError::NotTwisted { x: x.to_string(), y: y.to_string() });
    }
    if y.order() <= 2 {
        return Ok(Mult4Image { image: y.clone(), case: Mult4Case::Involution });
    }

    let n = y.degree();
    let long: Vec<Vec<usize>> = y.cycle_decomposition().into_cycles().into_iter().filter(|c| c.len() >= 3).collect();
    let mut in_long = vec![false; n + 1];
    for &p in long.iter().flatten() {
        in_long[p] = true;
    }
    let x_restricted: Vec<Vec<usize>> =
        x.cycle_decomposition().into_cycles().into_iter().filter(|c| in_long[c[0]]).collect();
    if x_restricted.iter().flatten().any(|&p| !in_long[p]) {
        return Err(InjectionError::UncoveredSubcase("a cycle of x straddles the long-cycle support".into()));
    }
    let x_prime = Permutation::from_cycles(n, &x_restricted)?;

    let lengths: Vec<usize> = long.iter().map(Vec::len).collect();
    let distinct = lengths.iter().collect::<HashSet<_>>().len() == lengths.len();
    let case = if distinct {
        if x_prime.order() > 2 {
            return Err(InjectionError::UncoveredSubcase(format!("x' = {x_prime} is not an involution")));
        }
        Mult4Case::DistinctLengths
    } else if lengths.iter().all(|&l| l == lengths[0]) {
        let (j, m) = (lengths[0], long.len());
        if j % 2 == 1 && m % 2 == 1 {
            return Err(InjectionError::UncoveredSubcase(format!("j = {j} and m = {m} are both odd")));
        }
        for t in 0..m {
            let next = &long[(t + 1) % m];
            let mut image: Vec<usize> = long[t].iter().map(|&p| x.image(p)).collect();
            let mut target = next.clone();
            image.sort_unstable();
            target.sort_unstable();
            if image != target {
                return Err(InjectionError::UncoveredSubcase(format!(
                    "conjugation by x does not carry cycle {} onto the next cycle",
                    t + 1
                )));
            }
        }
        Mult4Case::EqualLengths { j, m }
    } else {
        return Err(InjectionError::UncoveredSubcase("long cycles mix repeated and distinct lengths".into()));
    };

    let y2 = y.compose_unchecked(&x_prime);
    let comb: Vec<usize> = y2.cycle_decomposition().into_cycles().into_iter().flatten().collect();
    if comb.len() % 2 == 1 {
        return Err(InjectionError::AdjustmentUnspecified(comb.len()));
    }
    let pairs: Vec<Vec<usize>> = comb.chunks(2).map(<[usize]>::to_vec).collect();
    let image = Permutation::from_cycles(n, &pairs)?;
    let image_order = image.order();
    if image_order > 2 {
        return Err(InjectionError::PostconditionViolated {
            y: y.to_string(),
            image: image.to_string(),
            order: image_order,
        });
    }
    Ok(Mult4Image { image, case })
}

/// Canonical representative of the conjugacy class with cycle type `shape`:
/// consecutive points fill the cycles in order.
pub fn class_representative(n: usize, cycle_type: &[usize]) -> Permutation {
    let mut cycles = Vec::new();
    let mut next = 1;
    for &len in cycle_type {
        cycles.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    Permutation::from_cycles(n, &cycles).expect("cycle type sums to n")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn catalog_entries() {
        let catalog = pentad_catalog();
        assert_eq!(catalog.len(), 6);
        assert_eq!(catalog[0].synthemes()[0], cyc(6, "(1,2)(3,4)(5,6)"));
        assert_eq!(catalog[2].synthemes()[1], cyc(6, "(1,3)(2,4)(5,6)"));
        // validation would have failed on construction otherwise
        for pentad in catalog {
            assert!(Pentad::new(pentad.synthemes().clone()).is_ok());
        }
    }

    #[test]
    fn pentad_validation_rejects_bad_input() {
        let s = cyc(6, "(1,2)(3,4)(5,6)");
        let dup = [s.clone(), s.clone(), s.clone(), s.clone(), s];
        assert!(Pentad::new(dup).is_err());
        let t = cyc(6, "(1,2)");
        let bad = [t.clone(), t.clone(), t.clone(), t.clone(), t];
        assert!(Pentad::new(bad).is_err());
    }

    #[test]
    fn exactly_six_pentads_exist() {
        // brute force over the 15 synthemes
        let synthemes: Vec<Permutation> = all_permutations(6)
            .into_iter()
            .filter(|g| g.order() == 2 && g.cycle_decomposition().cycles().len() == 3)
            .collect();
        assert_eq!(synthemes.len(), 15);
        let share = |a: &Permutation, b: &Permutation| {
            a.cycle_decomposition().cycles().iter().any(|c| b.cycle_decomposition().cycles().contains(c))
        };
        let mut count = 0;
        let idx: Vec<usize> = (0..15).collect();
        fn choose(k: usize, from: &[usize], acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 0 {
                out.push(acc.clone());
                return;
            }
            for (i, &v) in from.iter().enumerate() {
                acc.push(v);
                choose(k - 1, &from[i + 1..], acc, out);
                acc.pop();
            }
        }
        let mut subsets = Vec::new();
        choose(5, &idx, &mut Vec::new(), &mut subsets);
        let mut found = Vec::new();
        for s in subsets {
            let ok = (0..5).all(|a| (a + 1..5).all(|b| !share(&synthemes[s[a]], &synthemes[s[b]])));
            if ok {
                count += 1;
                found.push(s.iter().map(|&i| synthemes[i].clone()).collect::<HashSet<_>>());
            }
        }
        assert_eq!(count, 6);
        for pentad in pentad_catalog() {
            let set: HashSet<_> = pentad.synthemes().iter().cloned().collect();
            assert!(found.contains(&set));
        }
    }

    #[test]
    fn generator_words_reproduce_elements() {
        for g in all_permutations(6) {
            let product = generator_word(&g)
                .into_iter()
                .fold(Permutation::identity(6), |acc, i| &acc * &Permutation::transposition(6, 1, i).unwrap());
            assert_eq!(product, g);
        }
    }

    #[test]
    fn outer_natural_ordering_sends_first_generator_to_first_syntheme() {
        let auto = build_outer_s6(1, [2, 3, 4, 5, 6], VerifyMode::Full).unwrap();
        assert_eq!(auto.apply(&cyc(6, "(1,2)")).unwrap(), cyc(6, "(1,2)(3,4)(5,6)"));
        assert_eq!(auto.spec(), "outer6:p1:o23456");
        for g in all_permutations(6) {
            assert_eq!(auto.apply(&g).unwrap().order(), g.order());
        }
    }

    #[test]
    fn all_outer_automorphisms_are_distinct() {
        let autos = all_outer_s6(VerifyMode::Generators).unwrap();
        assert_eq!(autos.len(), 720);
        let tables: HashSet<Vec<u16>> = autos
            .iter()
            .map(|a| match a {
                Automorphism::OuterS6(t) => t.table.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(tables.len(), 720);
        let t12 = cyc(6, "(1,2)");
        for a in &autos {
            let img = a.apply(&t12).unwrap();
            assert_eq!(img.cycle_decomposition().cycles().len(), 3);
            assert_eq!(img.order(), 2);
        }
    }

    #[test]
    fn bad_outer_arguments() {
        assert!(matches!(
            build_outer_s6(7, [2, 3, 4, 5, 6], VerifyMode::Generators),
            Err(AutomorphismError::BadPentadIndex(7))
        ));
        assert!(matches!(
            build_outer_s6(1, [2, 2, 4, 5, 6], VerifyMode::Generators),
            Err(AutomorphismError::BadOrdering(_))
        ));
    }

    #[test]
    fn apply_examples() {
        let inner = Automorphism::Inner(cyc(3, "(1,2)"));
        assert_eq!(inner.apply(&cyc(3, "(1,2,3)")).unwrap(), cyc(3, "(1,3,2)"));
        let id = Automorphism::Identity(4);
        assert_eq!(id.apply(&cyc(4, "(1,4)(2,3)")).unwrap(), cyc(4, "(1,4)(2,3)"));
        assert!(matches!(id.apply(&Permutation::identity(3)), Err(AutomorphismError::DegreeMismatch { .. })));
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in ["id:5", "inner:6:(1,2,3)(4,5)", "inner:4:()", "outer6:p3:o65432"] {
            assert_eq!(s.parse::<Automorphism>().unwrap().spec(), s);
        }
        for bad in ["id", "id:x", "inner:3:(1,4)", "outer6:p0:o23456", "outer6:p1:o2345", "bogus:1"] {
            assert!(bad.parse::<Automorphism>().is_err(), "{bad}");
        }
    }

    #[test]
    fn automorphisms_preserve_class_sizes() {
        use crate::characters::{class_size, cycle_type};
        let mut autos = all_outer_s6(VerifyMode::Generators).unwrap();
        autos.push(Automorphism::Inner(cyc(6, "(1,2,3)(4,5)")));
        for a in autos.iter().step_by(7) {
            for g in all_permutations(6) {
                let image = a.apply(&g).unwrap();
                assert_eq!(class_size(&cycle_type(&g)), class_size(&cycle_type(&image)));
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let x = cyc(3, "(1,2)");
        let image = alpha_injection(&x, &cyc(3, "(1,2,3)")).unwrap();
        assert_eq!(image, cyc(3, "(2,3)"));
        assert_eq!(image.order(), 2);
        assert_eq!(alpha_injection(&x, &Permutation::identity(3)).unwrap(), x);

        let x = cyc(4, "(1,2,3)");
        let twisted: Vec<_> =
            all_permutations(4).into_iter().filter(|y| Permutation::conjugate(&x, y).unwrap() == y.inverse()).collect();
        for y in twisted.iter().filter(|y| y.order() == 2) {
            let image = alpha_injection(&x, y).unwrap();
            assert_eq!(image, Permutation::conjugate(&x, y).unwrap());
            assert_eq!(image.order(), 2);
        }

        assert!(matches!(
            alpha_injection(&cyc(4, "(1,2,3,4)"), &Permutation::identity(4)),
            Err(InjectionError::UncoveredCase { order: 4, .. })
        ));
        assert!(matches!(alpha_injection(&cyc(3, "(1,2)"), &cyc(3, "(1,3)")), Err(InjectionError::NotTwisted { .. })));
    }

    #[test]
    fn alpha_is_injective_into_involutions() {
        for n in 1..=6 {
            let all = all_permutations(n);
            for x in &all {
                if x.order() % 4 == 0 {
                    continue;
                }
                let mut images = HashSet::new();
                let mut domain = 0;
                for y in all.iter().filter(|y| is_twisted_for_inner(x, y)) {
                    let image = alpha_injection(x, y).unwrap();
                    assert!(image.order() <= 2);
                    assert!(images.insert(image));
                    domain += 1;
                }
                if x.order() == 2 {
                    let involutions = all.iter().filter(|g| g.order() <= 2).count();
                    assert_eq!(domain, involutions);
                }
            }
        }
    }

    #[test]
    fn mult4_examples() {
        // ord(y) <= 2 maps to itself
        let x = cyc(4, "(1,2,3,4)");
        let y = cyc(4, "(1,3)(2,4)");
        assert!(is_twisted_for_inner(&x, &y));
        assert_eq!(map_mult4(&x, &y).unwrap(), Mult4Image { image: y, case: Mult4Case::Involution });

        // a 5-cycle reversed by (1,5)(2,4), with a 4-cycle on other points
        let x = cyc(9, "(1,5)(2,4)(6,7,8,9)");
        let y = cyc(9, "(1,2,3,4,5)");
        let out = map_mult4(&x, &y).unwrap();
        assert_eq!(out.case, Mult4Case::DistinctLengths);
        assert_eq!(out.image, cyc(9, "(2,5)(3,4)"));

        // j = 4, m = 2 chain in S_8 with x an 8-cycle
        let x = cyc(8, "(1,8,4,5,3,6,2,7)");
        let y = cyc(8, "(1,2,3,4)(5,6,7,8)");
        assert_eq!(x.order(), 8);
        assert!(is_twisted_for_inner(&x, &y));
        let out = map_mult4(&x, &y).unwrap();
        assert_eq!(out.case, Mult4Case::EqualLengths { j: 4, m: 2 });
        // brute force: y x as a map, then pair its one 8-cycle
        let yx: Vec<usize> = (1..=8).map(|i| y.image(x.image(i))).collect();
        assert_eq!(yx, vec![5, 8, 7, 6, 4, 3, 2, 1]);
        assert_eq!(out.image, cyc(8, "(1,5)(2,8)(3,7)(4,6)"));
        assert_eq!(out.image.cycle_decomposition().cycles().len(), 4);
        assert_eq!(out.image.order(), 2);

        assert!(matches!(
            map_mult4(&cyc(4, "(1,2)"), &Permutation::identity(4)),
            Err(InjectionError::NotMultipleOfFour { .. })
        ));
    }

    fn mult4_collisions(x: &Permutation) -> Vec<(Permutation, Permutation)> {
        let mut seen: std::collections::HashMap<Permutation, Permutation> = Default::default();
        let mut collisions = Vec::new();
        for y in all_permutations(x.degree()) {
            if !is_twisted_for_inner(x, &y) {
                continue;
            }
            let image = map_mult4(x, &y).expect("every twisted y is covered up to degree 8").image;
            if let Some(prev) = seen.insert(image, y.clone()) {
                collisions.push((prev, y));
            }
        }
        collisions
    }

    #[test]
    fn mult4_injectivity_scan() {
        for n in 4..=7 {
            for x in all_permutations(n).iter().filter(|x| x.order() % 4 == 0) {
                assert!(mult4_collisions(x).is_empty(), "x = {x}");
            }
        }
        // degree 8: the map depends on labels, so every x of type (4,4) is scanned;
        // each collision pairs an equal-length image with an involution mapped to itself
        let mut total = 0;
        for x in all_permutations(8).iter().filter(|x| x.cycle_lengths() == [4, 4]) {
            for (a, b) in mult4_collisions(x) {
                assert_eq!(a.order().max(b.order()), 4);
                assert_eq!(a.order().min(b.order()), 2);
                total += 1;
            }
        }
        assert_eq!(total, 2520);
    }

    #[test]
    fn class_representatives() {
        assert_eq!(class_representative(5, &[3, 2]), cyc(5, "(1,2,3)(4,5)"));
        assert!(class_representative(4, &[1, 1, 1, 1]).is_identity());
    }
}
