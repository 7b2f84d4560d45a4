//! Integer partitions, Young-diagram combinatorics and hook machinery.
//!
//! Cells of a diagram are addressed 1-based as `(row, col)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The empty partition is the unique partition of zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

/// Shape classes used when analysing characters on two half-length cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    Hook,
    NearHook,
    TwoLayerHook,
    Other,
}

/// An edgewise connected strip of boundary cells whose removal leaves a
/// smaller Young diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewHook {
    /// Cells in boundary order, from the top-right end to the bottom-left end.
    pub cells: Vec<(usize, usize)>,
    pub rows_spanned: usize,
    /// The diagram left after removing the strip.
    pub remainder: Partition,
}

impl SkewHook {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// One less than the number of rows the strip occupies; the exponent of
    /// the sign in the Murnaghan–Nakayama rule.
    pub fn height(&self) -> usize {
        self.rows_spanned - 1
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition parts must be positive: {parts:?}")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from any multiset of positive integers by sorting.
    pub fn from_multiset(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `[n]`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The one-column partition `[1^n]`.
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The weight `n`, i.e. the sum of the parts.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row length `i` (0-based), zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn contains_cell(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && self.part(row - 1) >= col
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.conjugate()
    }

    pub fn classify_shape(&self) -> Shape {
        let k = self.len();
        if k == 0 || self.parts[1..].iter().all(|&p| p == 1) {
            return Shape::Hook;
        }
        if self.parts[0] > 1 && self.parts[1] == 2 && self.parts[2..].iter().all(|&p| p == 1) {
            return Shape::NearHook;
        }
        let conj = self.conjugate();
        let s = self.part(0) - self.part(1);
        let t = conj.part(0) - conj.part(1);
        if k >= 3 && self.part(1) + conj.part(1) >= 5 && self.part(2) <= 2 && s == t && s > 0 {
            Shape::TwoLayerHook
        } else {
            Shape::Other
        }
    }

    /// Hook lengths listed row by row.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.weight());
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigUint {
        self.hook_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, h| acc * BigUint::from(h))
    }

    /// Dimension of the Specht module, `n! / hl(λ)`.
    pub fn specht_dimension(&self) -> BigUint {
        factorial(self.weight()) / self.hook_product()
    }

    /// The boundary cells, walked from the end of the first row to the
    /// bottom of the first column.
    pub fn rim(&self) -> Vec<(usize, usize)> {
        let mut rim = Vec::new();
        for (i, &row) in self.parts.iter().enumerate() {
            let next = self.part(i + 1).max(1);
            for col in (next..=row).rev() {
                rim.push((i + 1, col));
            }
        }
        rim
    }

    /// All skew hooks of length exactly `m`.
    pub fn skew_hooks(&self, m: usize) -> Vec<SkewHook> {
        let rim = self.rim();
        if m == 0 || m > rim.len() {
            return Vec::new();
        }
        let mut hooks = Vec::new();
        for window in rim.windows(m) {
            let mut rows = self.parts.clone();
            for &(r, _) in window {
                rows[r - 1] -= 1;
            }
            // The strip must occupy the right end of each row it touches.
            let right_aligned = window.iter().all(|&(r, c)| c > rows[r - 1]);
            let decreasing = rows.windows(2).all(|w| w[0] >= w[1]);
            if !(right_aligned && decreasing) {
                continue;
            }
            while rows.last() == Some(&0) {
                rows.pop();
            }
            let first_row = window[0].0;
            let last_row = window[m - 1].0;
            hooks.push(SkewHook {
                cells: window.to_vec(),
                rows_spanned: last_row - first_row + 1,
                remainder: Partition { parts: rows },
            });
        }
        hooks
    }

    /// Checks `dim(λ) > 2n − 2` on two-layer hooks and symmetric near hooks
    /// of weight at least 8.
    pub fn dimension_bound_check(&self) -> Result<bool> {
        let n = self.weight();
        let in_domain = match self.classify_shape() {
            Shape::TwoLayerHook => true,
            Shape::NearHook => self.is_symmetric() && n >= 8,
            _ => false,
        };
        if !in_domain {
            return Err(Error::domain(format!(
                "{self} is neither a two-layer hook nor a symmetric near hook of weight >= 8"
            )));
        }
        Ok(self.specht_dimension() > BigUint::from(2 * n - 2))
    }

    /// All partitions of `n` in decreasing lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(n, n, &mut current, &mut out);
        out
    }

    /// Number of partitions of `n`.
    pub fn count(n: usize) -> usize {
        let mut p = vec![0usize; n + 1];
        p[0] = 1;
        for k in 1..=n {
            for m in k..=n {
                p[m] += p[m - k];
            }
        }
        p[n]
    }
}

fn fill_partitions(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for k in (1..=rest.min(max)).rev() {
        current.push(k);
        fill_partitions(rest - k, k, current, out);
        current.pop();
    }
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `a!! = a (a−2) (a−4) …` down to 1 or 2; `0!! = 1`.
pub fn double_factorial(n: usize) -> BigUint {
    (1..=n)
        .rev()
        .step_by(2)
        .fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Accepts `"5,3,3,2,1,1"` and the exponent shorthand `"4,2^2,1^2"`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in s.split(',') {
            let token = token.trim();
            let (base, exp) = match token.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim()),
                None => (token, "1"),
            };
            let base: usize = base
                .parse()
                .map_err(|_| Error::Parse(format!("bad partition part `{token}`")))?;
            let exp: usize = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{token}`")))?;
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Partition::new(parts)
    }
}
