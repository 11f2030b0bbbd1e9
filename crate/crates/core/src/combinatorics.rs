//! Partitions, overpartitions and their crank statistics, computed by direct
//! enumeration. Everything here is deliberately naive: it is the oracle the
//! product formulas in [`crate::cranks`] are checked against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest weight the brute-force routines will enumerate.
pub const ENUMERATION_LIMIT: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("enumeration up to n = {requested} exceeds the budget of {limit}")]
    EnumerationBudgetExceeded { requested: usize, limit: usize },
    #[error("precondition violated by part {part}: {reason}")]
    PreconditionViolated { part: u32, reason: &'static str },
    #[error("invalid overpartition: {0}")]
    Invalid(String),
}

fn check_budget(n: usize, limit: usize) -> Result<(), CombinatoricsError> {
    if n > limit {
        return Err(CombinatoricsError::EnumerationBudgetExceeded {
            requested: n,
            limit,
        });
    }
    Ok(())
}

/// An ordinary partition, parts stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into non-increasing order. Zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts equal to one.
    pub fn ones(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// True for the single-part partition `(1)`, where the combinatorial crank
    /// and the generating function disagree.
    pub fn is_single_one(&self) -> bool {
        self.parts == [1]
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// One entry of an overpartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OverEntry {
    pub part: u32,
    pub overlined: bool,
}

/// An overpartition: parts non-increasing, the overlined copy of a value (at
/// most one) stored before its plain copies.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Overpartition {
    entries: Vec<OverEntry>,
}

impl Overpartition {
    /// Validates and normalizes a list of `(part, overlined)` pairs.
    pub fn new(entries: impl IntoIterator<Item = (u32, bool)>) -> Result<Self, CombinatoricsError> {
        let mut entries: Vec<OverEntry> = entries
            .into_iter()
            .map(|(part, overlined)| OverEntry { part, overlined })
            .collect();
        if entries.iter().any(|e| e.part == 0) {
            return Err(CombinatoricsError::Invalid("parts must be positive".into()));
        }
        entries.sort_by(|a, b| b.part.cmp(&a.part).then(b.overlined.cmp(&a.overlined)));
        for w in entries.windows(2) {
            if w[0].part == w[1].part && w[0].overlined && w[1].overlined {
                return Err(CombinatoricsError::Invalid(format!(
                    "part {} is overlined twice",
                    w[0].part
                )));
            }
        }
        Ok(Overpartition { entries })
    }

    pub fn entries(&self) -> &[OverEntry] {
        &self.entries
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|e| u64::from(e.part)).sum()
    }

    pub fn non_overlined(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().filter(|e| !e.overlined).map(|e| e.part)
    }

    pub fn overlined(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().filter(|e| e.overlined).map(|e| e.part)
    }

    /// Tokens such as `["4", "2o", "1"]`.
    pub fn tokens(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                if e.overlined {
                    format!("{}o", e.part)
                } else {
                    e.part.to_string()
                }
            })
            .collect()
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tokens().join(", "))
    }
}

impl FromStr for Overpartition {
    type Err = CombinatoricsError;

    /// Accepts tokens separated by commas and/or whitespace, optionally
    /// wrapped in parentheses: `"(4, 2o, 1)"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let (digits, overlined) = match t.strip_suffix('o') {
                    Some(d) => (d, true),
                    None => (t, false),
                };
                digits
                    .parse::<u32>()
                    .map(|p| (p, overlined))
                    .map_err(|_| CombinatoricsError::Invalid(format!("bad token {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Overpartition::new(entries)
    }
}

impl Serialize for Overpartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.tokens().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Overpartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let tokens = Vec::<String>::deserialize(deserializer)?;
        tokens
            .join(" ")
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Calls `visit` on every partition of `n`, largest parts first, in reverse
/// lexicographic order: `(3), (2, 1), (1, 1, 1)`.
pub fn for_each_partition(n: usize, mut visit: impl FnMut(&Partition)) {
    fn rec(rem: u32, max: u32, cur: &mut Partition, visit: &mut dyn FnMut(&Partition)) {
        if rem == 0 {
            visit(cur);
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.parts.push(p);
            rec(rem - p, p, cur, visit);
            cur.parts.pop();
        }
    }
    let n = u32::try_from(n).expect("weight fits in u32");
    rec(n, n, &mut Partition::empty(), &mut visit);
}

pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |p| out.push(p.clone()));
    out
}

/// Calls `visit` on every overpartition of `n`.
///
/// Order: the part sequence is generated largest value first; for each value
/// the overlined choice precedes the plain one, and fewer plain copies
/// precede more. For `n = 3` this gives
/// `(3o), (3), (2o, 1o), (2o, 1), (2, 1o), (2, 1), (1o, 1, 1), (1, 1, 1)`.
pub fn for_each_overpartition(n: usize, mut visit: impl FnMut(&Overpartition)) {
    fn rec(rem: u32, max: u32, cur: &mut Overpartition, visit: &mut dyn FnMut(&Overpartition)) {
        if rem == 0 {
            visit(cur);
            return;
        }
        // Choose the next distinct value v <= max, then how it occurs.
        for v in (1..=rem.min(max)).rev() {
            for overlined in [true, false] {
                let base = if overlined { v } else { 0 };
                if base > rem {
                    continue;
                }
                let max_plain = (rem - base) / v;
                let min_plain = u32::from(!overlined);
                for plain in min_plain..=max_plain {
                    let used = base + plain * v;
                    let pushed = usize::from(overlined) + plain as usize;
                    if overlined {
                        cur.entries.push(OverEntry { part: v, overlined: true });
                    }
                    for _ in 0..plain {
                        cur.entries.push(OverEntry { part: v, overlined: false });
                    }
                    rec(rem - used, v - 1, cur, visit);
                    let keep = cur.entries.len() - pushed;
                    cur.entries.truncate(keep);
                }
            }
        }
    }
    let n = u32::try_from(n).expect("weight fits in u32");
    rec(n, n, &mut Overpartition::default(), &mut visit);
}

pub fn enumerate_overpartitions(n: usize) -> Vec<Overpartition> {
    let mut out = Vec::new();
    for_each_overpartition(n, |o| out.push(o.clone()));
    out
}

/// The crank of a partition: the largest part when there are no ones,
/// otherwise the number of parts exceeding the number of ones, minus the
/// number of ones.
///
/// The empty partition has crank 0 by convention (no ones, largest part 0);
/// callers that need to distinguish it check [`Partition::is_empty`].
pub fn crank(p: &Partition) -> i64 {
    let ones = p.ones();
    if ones == 0 {
        i64::from(p.largest())
    } else {
        let bigger = p.parts.iter().filter(|&&x| x as usize > ones).count();
        bigger as i64 - ones as i64
    }
}

/// How the partition `(1)` is counted in crank tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrankConvention {
    /// `(1)` contributes `z^{-1} - 1 + z`, matching the product formula.
    #[default]
    GeneratingFunction,
    /// `(1)` contributes its combinatorial crank `-1` once.
    Raw,
}

/// The signed crank multiset contributed by one (residual) partition.
pub fn crank_contribution(p: &Partition, convention: CrankConvention) -> Vec<(i64, i64)> {
    match convention {
        CrankConvention::GeneratingFunction if p.is_single_one() => {
            vec![(-1, 1), (0, -1), (1, 1)]
        }
        _ => vec![(crank(p), 1)],
    }
}

/// Non-overlined parts divisible by `k`, each divided by `k`.
pub fn residual_partition(o: &Overpartition, k: u32) -> Partition {
    assert!(k >= 1, "residual modulus must be positive");
    Partition::new(
        o.non_overlined()
            .filter(|p| p % k == 0)
            .map(|p| p / k)
            .collect(),
    )
}

/// The k-th residual crank (raw combinatorial value).
pub fn residual_crank(o: &Overpartition, k: u32) -> i64 {
    crank(&residual_partition(o, k))
}

/// Number of non-overlined occurrences of `k`.
pub fn omega_k(o: &Overpartition, k: u32) -> usize {
    o.entries
        .iter()
        .filter(|e| !e.overlined && e.part == k)
        .count()
}

/// Exact counts `M[k](m, n)` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrankTable {
    pub k: u32,
    pub n_max: usize,
    /// `columns[n]` maps crank `m` to its (nonzero) count.
    columns: Vec<BTreeMap<i64, BigInt>>,
}

/// One disagreement between two tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableMismatch {
    pub n: usize,
    pub m: i64,
    pub left: BigInt,
    pub right: BigInt,
}

impl CrankTable {
    pub fn new(k: u32, n_max: usize) -> Self {
        CrankTable {
            k,
            n_max,
            columns: vec![BTreeMap::new(); n_max + 1],
        }
    }

    pub fn add(&mut self, m: i64, n: usize, by: &BigInt) {
        if by.is_zero() {
            return;
        }
        let slot = self.columns[n].entry(m).or_insert_with(BigInt::zero);
        *slot += by;
        if slot.is_zero() {
            self.columns[n].remove(&m);
        }
    }

    pub fn count(&self, m: i64, n: usize) -> BigInt {
        self.columns[n].get(&m).cloned().unwrap_or_default()
    }

    pub fn column(&self, n: usize) -> &BTreeMap<i64, BigInt> {
        &self.columns[n]
    }

    pub fn column_sum(&self, n: usize) -> BigInt {
        self.columns[n].values().sum()
    }

    /// `sum_m m^ell M[k](m, n)`.
    pub fn moment(&self, ell: u32, n: usize) -> BigInt {
        self.columns[n]
            .iter()
            .map(|(&m, c)| BigInt::from(m).pow(ell) * c)
            .sum()
    }

    /// `sum_{m >= 1} m^ell M[k](m, n)`.
    pub fn positive_moment(&self, ell: u32, n: usize) -> BigInt {
        self.columns[n]
            .range(1..)
            .map(|(&m, c)| BigInt::from(m).pow(ell) * c)
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.columns
            .iter()
            .all(|col| col.iter().all(|(m, c)| col.get(&-m) == Some(c)))
    }

    /// Entries restricted to the common range of `n`, compared both ways.
    pub fn diff(&self, other: &CrankTable) -> Vec<TableMismatch> {
        let top = self.n_max.min(other.n_max);
        let mut out = Vec::new();
        for n in 0..=top {
            let mut ms: Vec<i64> = self.columns[n].keys().copied().collect();
            ms.extend(other.columns[n].keys().copied());
            ms.sort_unstable();
            ms.dedup();
            for m in ms {
                let (a, b) = (self.count(m, n), other.count(m, n));
                if a != b {
                    out.push(TableMismatch {
                        n,
                        m,
                        left: a,
                        right: b,
                    });
                }
            }
        }
        out
    }

    /// Rows `(k, n, m, count)` ordered by `n` then `m`.
    pub fn rows(&self) -> impl Iterator<Item = (u32, usize, i64, &BigInt)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(move |(n, col)| col.iter().map(move |(&m, c)| (self.k, n, m, c)))
    }

    /// Largest `|m|` with a nonzero count in column `n`.
    pub fn max_abs_crank(&self, n: usize) -> Option<i64> {
        self.columns[n].keys().map(|m| m.abs()).max()
    }

    /// True when all counts are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.columns
            .iter()
            .all(|col| col.values().all(|c| !c.is_negative()))
    }
}

/// Tabulates `M[k](m, n)` by enumerating every overpartition of `n <= n_max`.
pub fn crank_table_bruteforce(
    k: u32,
    n_max: usize,
    convention: CrankConvention,
) -> Result<CrankTable, CombinatoricsError> {
    check_budget(n_max, ENUMERATION_LIMIT)?;
    let mut table = CrankTable::new(k, n_max);
    for n in 0..=n_max {
        for_each_overpartition(n, |o| {
            let residual = residual_partition(o, k);
            for (m, w) in crank_contribution(&residual, convention) {
                table.add(m, n, &BigInt::from(w));
            }
        });
    }
    Ok(table)
}

/// Tabulates the ordinary crank `M(m, n)` by enumerating partitions.
pub fn ordinary_crank_table_bruteforce(
    n_max: usize,
    convention: CrankConvention,
) -> Result<CrankTable, CombinatoricsError> {
    check_budget(n_max, ENUMERATION_LIMIT)?;
    let mut table = CrankTable::new(1, n_max);
    for n in 0..=n_max {
        for_each_partition(n, |p| {
            for (m, w) in crank_contribution(p, convention) {
                table.add(m, n, &BigInt::from(w));
            }
        });
    }
    Ok(table)
}

/// Total of the non-overlined parts divisible by `k`, over all overpartitions of `n`.
pub fn nov(k: u32, n: usize) -> Result<u64, CombinatoricsError> {
    check_budget(n, ENUMERATION_LIMIT)?;
    let mut total = 0u64;
    for_each_overpartition(n, |o| {
        total += o.non_overlined().filter(|p| p % k == 0).map(u64::from).sum::<u64>();
    });
    Ok(total)
}

/// Total of the overlined parts divisible by `k`, over all overpartitions of `n`.
pub fn ov(k: u32, n: usize) -> Result<u64, CombinatoricsError> {
    check_budget(n, ENUMERATION_LIMIT)?;
    let mut total = 0u64;
    for_each_overpartition(n, |o| {
        total += o.overlined().filter(|p| p % k == 0).map(u64::from).sum::<u64>();
    });
    Ok(total)
}

/// `sum_{lambda |- n} omega_k(lambda) * crbar_k(lambda)`.
///
/// Under [`CrankConvention::GeneratingFunction`] an overpartition whose
/// residual partition is `(1)` contributes `omega_k` times the weighted crank
/// of its correction vector, which is zero.
pub fn omega_weighted_crank_sum(
    k: u32,
    n: usize,
    convention: CrankConvention,
) -> Result<i64, CombinatoricsError> {
    check_budget(n, ENUMERATION_LIMIT)?;
    let mut total = 0i64;
    for_each_overpartition(n, |o| {
        let w = omega_k(o, k) as i64;
        if w == 0 {
            return;
        }
        let residual = residual_partition(o, k);
        let weighted: i64 = crank_contribution(&residual, convention)
            .into_iter()
            .map(|(m, c)| m * c)
            .sum();
        total += w * weighted;
    });
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DilationDirection {
    /// Distinct multiples of `k` to multiples of `k` that are odd multiples.
    Forward,
    Inverse,
}

/// The dilated Euler bijection between partitions into distinct multiples of
/// `k` and partitions into parts `k * (odd)`.
///
/// Forward: a part `k * 2^a * m` with `m` odd becomes `2^a` copies of `k * m`.
/// Inverse: `c` copies of `k * m` are merged along the binary expansion of `c`.
pub fn euler_dilation(
    p: &Partition,
    k: u32,
    direction: DilationDirection,
) -> Result<Partition, CombinatoricsError> {
    assert!(k >= 1, "dilation factor must be positive");
    match direction {
        DilationDirection::Forward => {
            let mut out = Vec::new();
            for (i, &part) in p.parts.iter().enumerate() {
                if part % k != 0 {
                    return Err(CombinatoricsError::PreconditionViolated {
                        part,
                        reason: "not divisible by k",
                    });
                }
                if i > 0 && p.parts[i - 1] == part {
                    return Err(CombinatoricsError::PreconditionViolated {
                        part,
                        reason: "repeated part",
                    });
                }
                let q = part / k;
                let a = q.trailing_zeros();
                let odd = q >> a;
                out.extend(std::iter::repeat_n(k * odd, 1usize << a));
            }
            Ok(Partition::new(out))
        }
        DilationDirection::Inverse => {
            let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
            for &part in &p.parts {
                if part % k != 0 || (part / k) % 2 == 0 {
                    return Err(CombinatoricsError::PreconditionViolated {
                        part,
                        reason: "not an odd multiple of k",
                    });
                }
                *mult.entry(part).or_default() += 1;
            }
            let mut out = Vec::new();
            for (part, c) in mult {
                for bit in 0..64 {
                    if c >> bit & 1 == 1 {
                        out.push(part << bit);
                    }
                }
            }
            Ok(Partition::new(out))
        }
    }
}

/// All partitions of weight exactly `n` into distinct parts divisible by `k`.
pub fn distinct_multiples(n: usize, k: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |p| {
        if p.parts.iter().all(|x| x % k == 0) && p.parts.windows(2).all(|w| w[0] != w[1]) {
            out.push(p.clone());
        }
    });
    out
}

/// All partitions of weight exactly `n` into parts `k * (odd)`.
pub fn odd_multiples(n: usize, k: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    for_each_partition(n, |p| {
        if p.parts.iter().all(|x| x % k == 0 && (x / k) % 2 == 1) {
            out.push(p.clone());
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    #[test]
    fn overpartitions_of_three_in_documented_order() {
        let got: Vec<String> = enumerate_overpartitions(3).iter().map(|o| o.to_string()).collect();
        assert_eq!(
            got,
            [
                "(3o)", "(3)", "(2o, 1o)", "(2o, 1)", "(2, 1o)", "(2, 1)", "(1o, 1, 1)", "(1, 1, 1)"
            ]
        );
    }

    #[test]
    fn empty_overpartition() {
        let all = enumerate_overpartitions(0);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].weight(), 0);
    }

    #[test]
    fn crank_examples() {
        assert_eq!(crank(&Partition::new(vec![4])), 4);
        assert_eq!(crank(&Partition::new(vec![2, 1, 1])), -2);
        assert_eq!(crank(&Partition::new(vec![1])), -1);
        assert_eq!(crank(&Partition::empty()), 0);
        assert_eq!(crank(&Partition::new(vec![2, 1])), 0);
    }

    #[test]
    fn residual_examples() {
        let o = op("4 2o 1");
        assert_eq!(residual_partition(&o, 1), Partition::new(vec![4, 1]));
        assert_eq!(residual_crank(&o, 1), 0);
        assert_eq!(residual_partition(&o, 2), Partition::new(vec![2]));
        assert_eq!(residual_crank(&o, 2), 2);
        assert!(residual_partition(&op("3o 2o 1o"), 2).is_empty());
        assert_eq!(residual_crank(&op("3o"), 3), 0);
    }

    #[test]
    fn small_table_with_correction() {
        let t = crank_table_bruteforce(1, 1, CrankConvention::GeneratingFunction).unwrap();
        assert_eq!(t.column(0).len(), 1);
        assert_eq!(t.count(0, 0), BigInt::from(1));
        assert_eq!(t.count(-1, 1), BigInt::from(1));
        assert_eq!(t.count(0, 1), BigInt::from(0));
        assert_eq!(t.count(1, 1), BigInt::from(1));

        let raw = crank_table_bruteforce(1, 1, CrankConvention::Raw).unwrap();
        assert_eq!(raw.count(-1, 1), BigInt::from(1));
        assert_eq!(raw.count(0, 1), BigInt::from(1));
        assert_eq!(raw.count(1, 1), BigInt::from(0));
        assert!(!raw.is_symmetric());
    }

    #[test]
    fn column_sums_are_overpartition_counts() {
        let t = crank_table_bruteforce(2, 4, CrankConvention::GeneratingFunction).unwrap();
        let sums: Vec<BigInt> = (0..=4).map(|n| t.column_sum(n)).collect();
        assert_eq!(sums, [1, 2, 4, 8, 14].map(BigInt::from));
    }

    #[test]
    fn budget_guard() {
        assert_eq!(
            crank_table_bruteforce(1, 41, CrankConvention::Raw),
            Err(CombinatoricsError::EnumerationBudgetExceeded {
                requested: 41,
                limit: ENUMERATION_LIMIT
            })
        );
        assert!(nov(1, 50).is_err());
        assert!(ov(1, 50).is_err());
    }

    #[test]
    fn nov_ov_anchor_values() {
        // (2o, 1o), (2o, 1), (2, 1o), (2, 1) are the overpartitions of 3 with a 2.
        assert_eq!(nov(2, 3).unwrap(), 4);
        assert_eq!(ov(2, 3).unwrap(), 4);
        assert_eq!(nov(1, 3).unwrap(), 14);
        assert_eq!(nov(3, 0).unwrap(), 0);
        // (2), (2o), (1, 1), (1o, 1): overlined parts total 0 + 2 + 0 + 1.
        assert_eq!(ov(1, 2).unwrap(), 3);
        for k in 1..5 {
            for n in 0..k as usize {
                assert_eq!(ov(k, n).unwrap(), 0);
                assert_eq!(nov(k, n).unwrap(), 0);
            }
        }
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_k(&op("2 2 1o"), 2), 2);
        assert_eq!(omega_k(&op("2o 1"), 2), 0);
        let total: usize = enumerate_overpartitions(3).iter().map(|o| omega_k(o, 1)).sum();
        // (2o, 1), (2, 1), (1o, 1, 1), (1, 1, 1) contribute 1 + 1 + 2 + 3.
        assert_eq!(total, 7);
    }

    #[test]
    fn dilation_examples() {
        let p = Partition::new(vec![4, 2]);
        let image = euler_dilation(&p, 2, DilationDirection::Forward).unwrap();
        assert_eq!(image, Partition::new(vec![2, 2, 2]));
        assert_eq!(euler_dilation(&image, 2, DilationDirection::Inverse).unwrap(), p);
        assert_eq!(
            euler_dilation(&Partition::empty(), 3, DilationDirection::Forward).unwrap(),
            Partition::empty()
        );
        assert_eq!(
            euler_dilation(&Partition::new(vec![3, 3]), 3, DilationDirection::Forward),
            Err(CombinatoricsError::PreconditionViolated {
                part: 3,
                reason: "repeated part"
            })
        );
        assert!(matches!(
            euler_dilation(&Partition::new(vec![4]), 2, DilationDirection::Inverse),
            Err(CombinatoricsError::PreconditionViolated { part: 4, .. })
        ));
    }

    #[test]
    fn parse_and_render() {
        let o = op("(1, 2o, 4)");
        assert_eq!(o.tokens(), ["4", "2o", "1"]);
        assert!("2o 2o".parse::<Overpartition>().is_err());
        assert!("0".parse::<Overpartition>().is_err());
        assert!("x".parse::<Overpartition>().is_err());
    }
}
