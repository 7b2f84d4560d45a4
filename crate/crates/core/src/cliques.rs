//! Maximum cliques of `Γ(Alt(n))` built from arc decompositions of the
//! complete digraph, and the character sums over them.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::characters::{alt_character_table, split_pair_values, AltCharLabel, CharacterTable};
use crate::error::{Error, Result};
use crate::partitions::{double_factorial, Partition};
use crate::permgroup::{split_tag_of, CycleType, Permutation, SplitTag};
use crate::quadratic::{QuadraticNumber, QuadraticSum};

pub const MAX_ODD_CLIQUE_DEGREE: usize = 11;
pub const MAX_EVEN_CLIQUE_DEGREE: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CliqueKind {
    /// `n − 1` arc-disjoint directed Hamiltonian cycles.
    OddCycles,
    /// `n − 1` arc-disjoint pairs of directed `n/2`-cycles.
    EvenPairs,
    /// Even derangements of mixed cycle types, used where no pair
    /// decomposition exists.
    EvenMixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Provenance {
    Constructed,
    Searched,
    Cached,
}

/// A clique of size `n` in `Γ(Alt(n))`: the identity followed by the
/// permutations of an arc decomposition of `K_n*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub n: usize,
    pub members: Vec<Permutation>,
    pub kind: CliqueKind,
    pub provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    n: usize,
    kind: CliqueKind,
    members: Vec<Vec<usize>>,
}

impl CliqueWitness {
    fn from_images(n: usize, kind: CliqueKind, provenance: Provenance, images: Vec<Vec<u8>>) -> Result<Self> {
        let mut members: Vec<Permutation> = images
            .into_iter()
            .map(Permutation::from_images0)
            .collect::<Result<_>>()?;
        members.sort_by_key(|p| p.images0().to_vec());
        members.insert(0, Permutation::identity(n));
        let witness = CliqueWitness {
            n,
            members,
            kind,
            provenance,
        };
        witness.validate()?;
        Ok(witness)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn non_identity(&self) -> &[Permutation] {
        &self.members[1..]
    }

    /// Independent re-validation of every witness invariant.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.members.len() != n {
            return Err(Error::verification(
                "clique size",
                format!("{} members, expected {n}", self.members.len()),
            ));
        }
        if !self.members[0].is_identity() {
            return Err(Error::verification("identity first", self.members[0].to_string()));
        }
        for p in &self.members {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: p.degree(),
                    right: n,
                });
            }
            if !p.is_even() {
                return Err(Error::verification("members are even", p.to_string()));
            }
        }
        for (k, a) in self.members.iter().enumerate() {
            if let Some(b) = self.members[k + 1..].iter().find(|b| a.agrees_somewhere(b)) {
                return Err(Error::verification("pairwise non-intersecting", format!("{a} and {b}")));
            }
        }
        let mut arcs = vec![0u32; n * n];
        for p in self.non_identity() {
            for x in 0..n {
                arcs[x * n + p.apply0(x)] += 1;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let expected = u32::from(x != y);
                if arcs[x * n + y] != expected {
                    return Err(Error::verification(
                        "arc partition",
                        format!("arc ({}, {}) used {} times", x + 1, y + 1, arcs[x * n + y]),
                    ));
                }
            }
        }
        let expected_type = match self.kind {
            CliqueKind::OddCycles => Some(CycleType::new(vec![n])?),
            CliqueKind::EvenPairs => Some(CycleType::new(vec![n / 2, n / 2])?),
            CliqueKind::EvenMixed => None,
        };
        if let Some(t) = expected_type {
            if let Some(p) = self.non_identity().iter().find(|p| p.cycle_type() != t) {
                return Err(Error::verification(
                    "member cycle type",
                    format!("{p} is not of type {t}"),
                ));
            }
        }
        Ok(())
    }

    /// Tallies of members in the classes `(n)′` and `(n)″`.
    pub fn split_tallies(&self) -> Result<(usize, usize)> {
        let n_cycle = CycleType::new(vec![self.n])?;
        let mut tally = (0, 0);
        for p in self.non_identity().iter().filter(|p| p.cycle_type() == n_cycle) {
            match split_tag_of(p)? {
                SplitTag::Prime => tally.0 += 1,
                SplitTag::DoublePrime => tally.1 += 1,
                SplitTag::NonSplit => {}
            }
        }
        Ok(tally)
    }

    /// The witness obtained by relabelling points with `g`.
    pub fn relabel(&self, g: &Permutation) -> Result<Self> {
        let images = self
            .non_identity()
            .iter()
            .map(|p| p.conjugate_by(g).images0().to_vec())
            .collect();
        CliqueWitness::from_images(self.n, self.kind, self.provenance, images)
    }

    pub fn to_cache_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CacheFile {
            n: self.n,
            kind: self.kind,
            members: self.members.iter().map(Permutation::images).collect(),
        })?)
    }

    pub fn from_cache_json(text: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(text)?;
        let members: Vec<Permutation> = file
            .members
            .iter()
            .map(|m| Permutation::from_images(m))
            .collect::<Result<_>>()?;
        let witness = CliqueWitness {
            n: file.n,
            members,
            kind: file.kind,
            provenance: Provenance::Cached,
        };
        witness.validate()?;
        Ok(witness)
    }
}

impl fmt::Display for CliqueWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", members.join("\n"))
    }
}

/// Walecki's decomposition of `K_n*` for odd `n`: the zigzag Hamiltonian
/// cycles on `{∞} ∪ Z_{n−1}` and their reverses.
fn walecki(n: usize) -> Vec<Vec<u8>> {
    let m = (n - 1) / 2;
    let modulus = 2 * m as i64;
    let infinity = (n - 1) as u8;
    let mut zigzag = vec![0i64];
    for step in 1..=m as i64 {
        zigzag.push(step);
        if step < m as i64 {
            zigzag.push(-step);
        }
    }
    let mut out = Vec::new();
    for shift in 0..m as i64 {
        let path: Vec<u8> = zigzag.iter().map(|z| (z + shift).rem_euclid(modulus) as u8).collect();
        let mut cycle = vec![infinity];
        cycle.extend(path);
        for order in [cycle.clone(), cycle.iter().rev().copied().collect()] {
            let mut images = vec![0u8; n];
            for k in 0..n {
                images[order[k] as usize] = order[(k + 1) % n];
            }
            out.push(images);
        }
    }
    out
}

/// Backtracking over members mapping point `0` to `1, 2, …, n − 1` in turn,
/// each member drawn from `candidates(target, used)`. `accept` may reject a
/// complete decomposition to continue the search.
type Candidates<'a> = dyn Fn(usize, &[bool]) -> Vec<Vec<u8>> + 'a;

struct ArcSearch<'a> {
    n: usize,
    used: Vec<bool>,
    chosen: Vec<Vec<u8>>,
    candidates: &'a Candidates<'a>,
    accept: &'a mut dyn FnMut(&[Vec<u8>]) -> bool,
    nodes: u64,
    node_limit: u64,
}

impl ArcSearch<'_> {
    fn run(&mut self, target: usize) -> Option<bool> {
        if target == self.n {
            return Some((self.accept)(&self.chosen));
        }
        for cand in (self.candidates)(target, &self.used) {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return None;
            }
            self.set_arcs(&cand, true);
            self.chosen.push(cand);
            let found = self.run(target + 1);
            let cand = self.chosen.pop().expect("pushed above");
            self.set_arcs(&cand, false);
            match found {
                Some(true) => {
                    self.chosen.push(cand);
                    return Some(true);
                }
                None => return None,
                Some(false) => {}
            }
        }
        Some(false)
    }

    fn set_arcs(&mut self, images: &[u8], value: bool) {
        for (x, &y) in images.iter().enumerate() {
            self.used[x * self.n + y as usize] = value;
        }
    }
}

/// All permutations with the given cycle lengths (the first cycle through
/// `0`, then each cycle through its least free point) mapping `0 ↦ target`
/// and using only unused arcs.
fn cycle_candidates(n: usize, lengths: &[usize], target: usize, used: &[bool]) -> Vec<Vec<u8>> {
    fn extend(
        n: usize,
        lengths: &[usize],
        used: &[bool],
        images: &mut Vec<u8>,
        visited: &mut Vec<bool>,
        cycle: &mut Vec<usize>,
        out: &mut Vec<Vec<u8>>,
    ) {
        let len = lengths[0];
        let head = cycle[0];
        let last = *cycle.last().expect("cycle nonempty");
        if cycle.len() == len {
            if used[last * n + head] {
                return;
            }
            images[last] = head as u8;
            if lengths.len() == 1 {
                out.push(images.clone());
                return;
            }
            let Some(next_head) = (0..n).find(|&x| !visited[x]) else {
                return;
            };
            visited[next_head] = true;
            let saved = std::mem::replace(cycle, vec![next_head]);
            extend(n, &lengths[1..], used, images, visited, cycle, out);
            *cycle = saved;
            visited[next_head] = false;
            return;
        }
        for y in 0..n {
            if visited[y] || used[last * n + y] {
                continue;
            }
            visited[y] = true;
            images[last] = y as u8;
            cycle.push(y);
            extend(n, lengths, used, images, visited, cycle, out);
            cycle.pop();
            visited[y] = false;
        }
    }

    if used[target] || target == 0 {
        return Vec::new();
    }
    let mut images = vec![0u8; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    visited[target] = true;
    images[0] = target as u8;
    let mut cycle = vec![0, target];
    let mut out = Vec::new();
    if lengths[0] >= 2 {
        extend(n, lengths, used, &mut images, &mut visited, &mut cycle, &mut out);
    }
    out
}

/// Even derangements mapping `0 ↦ target` that use only unused arcs.
fn derangement_candidates(n: usize, target: usize, used: &[bool]) -> Vec<Vec<u8>> {
    fn extend(n: usize, x: usize, used: &[bool], images: &mut [u8], taken: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if x == n {
            let p = Permutation::from_images0(images.to_vec()).expect("bijection");
            if p.is_even() {
                out.push(images.to_vec());
            }
            return;
        }
        for y in 0..n {
            if y == x || taken[y] || used[x * n + y] {
                continue;
            }
            taken[y] = true;
            images[x] = y as u8;
            extend(n, x + 1, used, images, taken, out);
            taken[y] = false;
        }
    }
    if target == 0 || used[target] {
        return Vec::new();
    }
    let mut images = vec![0u8; n];
    let mut taken = vec![false; n];
    images[0] = target as u8;
    taken[target] = true;
    let mut out = Vec::new();
    extend(n, 1, used, &mut images, &mut taken, &mut out);
    out
}

const SEARCH_NODE_LIMIT: u64 = 200_000_000;

fn search(
    n: usize,
    first: Option<Vec<u8>>,
    candidates: &Candidates<'_>,
    accept: &mut dyn FnMut(&[Vec<u8>]) -> bool,
) -> Result<Option<Vec<Vec<u8>>>> {
    let mut s = ArcSearch {
        n,
        used: vec![false; n * n],
        chosen: Vec::new(),
        candidates,
        accept,
        nodes: 0,
        node_limit: SEARCH_NODE_LIMIT,
    };
    let start = if let Some(first) = first {
        s.set_arcs(&first, true);
        s.chosen.push(first);
        2
    } else {
        1
    };
    match s.run(start) {
        Some(true) => Ok(Some(std::mem::take(&mut s.chosen))),
        Some(false) => Ok(None),
        None => Err(Error::Resource(format!(
            "clique search for n = {n} exceeded its node budget"
        ))),
    }
}

/// A clique of size `n` from a directed Hamiltonian decomposition of `K_n*`.
pub fn odd_clique(n: usize) -> Result<CliqueWitness> {
    if n.is_multiple_of(2) || !(5..=MAX_ODD_CLIQUE_DEGREE).contains(&n) {
        return Err(Error::domain(format!(
            "odd cliques need odd n with 5 <= n <= {MAX_ODD_CLIQUE_DEGREE}"
        )));
    }
    if let Ok(w) = CliqueWitness::from_images(n, CliqueKind::OddCycles, Provenance::Constructed, walecki(n)) {
        return Ok(w);
    }
    let lengths = [n];
    let found = search(n, None, &|t, used| cycle_candidates(n, &lengths, t, used), &mut |_| {
        true
    })?
    .ok_or_else(|| {
        Error::verification(
            "Hamiltonian decomposition exists",
            format!("search exhausted at n = {n}"),
        )
    })?;
    CliqueWitness::from_images(n, CliqueKind::OddCycles, Provenance::Searched, found)
}

/// The canonical first member `(1 2 … n/2)(n/2+1 … n)`.
fn canonical_pair_member(n: usize) -> Vec<u8> {
    let m = n / 2;
    (0..n)
        .map(|x| {
            if x % m == m - 1 {
                (x + 1 - m) as u8
            } else {
                (x + 1) as u8
            }
        })
        .collect()
}

/// Searches for a decomposition of `K_n*` into pairs of disjoint `n/2`-cycles.
pub fn search_even_pairs(n: usize) -> Result<Option<CliqueWitness>> {
    let lengths = [n / 2, n / 2];
    let found = search(
        n,
        Some(canonical_pair_member(n)),
        &|t, used| cycle_candidates(n, &lengths, t, used),
        &mut |_| true,
    )?;
    found
        .map(|images| CliqueWitness::from_images(n, CliqueKind::EvenPairs, Provenance::Searched, images))
        .transpose()
}

/// Searches for a clique of even derangements whose character sums vanish
/// only on the standard character.
pub fn search_even_mixed(n: usize) -> Result<Option<CliqueWitness>> {
    let table = alt_character_table(n)?;
    let mut accept = |images: &[Vec<u8>]| {
        CliqueWitness::from_images(n, CliqueKind::EvenMixed, Provenance::Searched, images.to_vec())
            .and_then(|w| verify_clique_character_nonvanishing_with(&w, &table))
            .is_ok_and(|r| r.passed())
    };
    let found = search(n, None, &|t, used| derangement_candidates(n, t, used), &mut accept)?;
    found
        .map(|images| CliqueWitness::from_images(n, CliqueKind::EvenMixed, Provenance::Searched, images))
        .transpose()
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("even-clique-n{n}.json"))
}

/// A clique of size `n` for even `n`, read from `cache_dir` when a valid
/// cached witness exists and written back after a search.
pub fn even_clique(n: usize, cache_dir: Option<&Path>) -> Result<CliqueWitness> {
    if n % 2 == 1 || !(6..=MAX_EVEN_CLIQUE_DEGREE).contains(&n) {
        return Err(Error::domain(format!(
            "even cliques need even n with 6 <= n <= {MAX_EVEN_CLIQUE_DEGREE}"
        )));
    }
    if let Some(dir) = cache_dir {
        if let Ok(text) = fs::read_to_string(cache_path(dir, n)) {
            if let Ok(w) = CliqueWitness::from_cache_json(&text) {
                if w.n == n {
                    return Ok(w);
                }
            }
        }
    }
    let witness = match search_even_pairs(n)? {
        Some(w) => w,
        None => search_even_mixed(n)?
            .ok_or_else(|| Error::verification("even clique exists", format!("search exhausted at n = {n}")))?,
    };
    if let Some(dir) = cache_dir {
        fs::create_dir_all(dir)?;
        fs::write(cache_path(dir, n), witness.to_cache_json()?)?;
    }
    Ok(witness)
}

/// `odd_clique` or `even_clique` by parity.
pub fn clique_for(n: usize, cache_dir: Option<&Path>) -> Result<CliqueWitness> {
    if n % 2 == 1 {
        odd_clique(n)
    } else {
        even_clique(n, cache_dir)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterSum {
    pub character: AltCharLabel,
    pub sum: QuadraticNumber,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonvanishingReport {
    pub n: usize,
    pub kind: CliqueKind,
    /// Members in `(n)′` and `(n)″`.
    pub split_tallies: (usize, usize),
    pub sums: Vec<CharacterSum>,
    pub standard_sum: QuadraticNumber,
    /// Non-standard characters with a vanishing sum.
    pub vanishing: Vec<AltCharLabel>,
    pub notes: Vec<String>,
}

impl NonvanishingReport {
    pub fn passed(&self) -> bool {
        self.vanishing.is_empty()
    }
}

pub fn verify_clique_character_nonvanishing(witness: &CliqueWitness) -> Result<NonvanishingReport> {
    witness.validate()?;
    let table = alt_character_table(witness.n)?;
    verify_clique_character_nonvanishing_with(witness, &table)
}

fn verify_clique_character_nonvanishing_with(
    witness: &CliqueWitness,
    table: &CharacterTable,
) -> Result<NonvanishingReport> {
    let counts = table.class_counts(&witness.members)?;
    let mut sums = Vec::new();
    let mut vanishing = Vec::new();
    let mut standard_sum = QuadraticNumber::zero();
    for (row, chi) in table.rows.iter().enumerate() {
        let sum = table.sum_with_counts(row, &counts)?;
        if chi.is_standard() {
            standard_sum = sum.clone();
        } else if sum.is_zero() {
            vanishing.push(chi.clone());
        }
        sums.push(CharacterSum {
            character: chi.clone(),
            sum,
        });
    }
    let mut notes = Vec::new();
    if witness.n.is_multiple_of(2) {
        notes.push(
            "split characters exist only for symmetric partitions; the case of a split character on an even clique is read with λ symmetric".to_string(),
        );
    }
    if witness.kind == CliqueKind::EvenMixed {
        notes.push(format!(
            "no decomposition of K_{}* into pairs of {}-cycles exists; the clique uses even derangements of mixed type",
            witness.n,
            witness.n / 2
        ));
    }
    Ok(NonvanishingReport {
        n: witness.n,
        kind: witness.kind,
        split_tallies: witness.split_tallies()?,
        sums,
        standard_sum,
        vanishing,
        notes,
    })
}

/// Checks for the split hook `λ = [(n+1)/2, 1^{(n−1)/2}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HookSplitReport {
    pub n: usize,
    pub hook: Partition,
    pub dimension: String,
    /// `χ^λ(1)·(n−1)!! = 2^{n−1}·(n−2)!!`.
    pub dimension_identity: bool,
    /// `½χ^λ(1) + r′x + (n−1−r′)y ≠ 0` for every `0 ≤ r′ ≤ n − 1`.
    pub split_sums_nonzero: bool,
    /// `2^{2(n−1)} > n^5`, decided for `n ≥ 9`.
    pub power_inequality: Option<bool>,
}

impl HookSplitReport {
    pub fn passed(&self) -> bool {
        self.dimension_identity && self.split_sums_nonzero && self.power_inequality != Some(false)
    }
}

pub fn hook_split_inequality_check(n: usize) -> Result<HookSplitReport> {
    if n.is_multiple_of(2) || !(5..=31).contains(&n) {
        return Err(Error::domain("hook check needs odd n with 5 <= n <= 31"));
    }
    let mut parts = vec![n.div_ceil(2)];
    parts.extend(std::iter::repeat_n(1, (n - 1) / 2));
    let hook = Partition::new(parts)?;
    let dimension = hook.specht_dimension();
    let dimension_identity =
        &dimension * double_factorial(n - 1) == (BigUint::one() << (n - 1)) * double_factorial(n - 2);

    let (x, y) = split_pair_values(&CycleType::new(vec![n])?)?;
    let half_dim = QuadraticNumber::from_rational(BigRational::new(BigInt::from(dimension.clone()), BigInt::from(2)));
    let mut split_sums_nonzero = true;
    for r in 0..n {
        let mut sum = QuadraticSum::new();
        sum.add(&half_dim);
        sum.add_scaled(&BigRational::from_integer(BigInt::from(r)), &x);
        sum.add_scaled(&BigRational::from_integer(BigInt::from(n - 1 - r)), &y);
        if sum.finish()?.is_zero() {
            split_sums_nonzero = false;
        }
    }
    let power_inequality = (n >= 9).then(|| (BigUint::one() << (2 * (n - 1))) > BigUint::from(n).pow(5));
    Ok(HookSplitReport {
        n,
        hook,
        dimension: dimension.to_string(),
        dimension_identity,
        split_sums_nonzero,
        power_inequality,
    })
}
