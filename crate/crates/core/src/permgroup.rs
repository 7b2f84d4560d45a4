//! Permutations of `{1..n}`, conjugacy classes of `Sym(n)` and `Alt(n)`,
//! split-class detection, derangements and point-stabilizer cosets.
//!
//! Permutations compose right to left: `(πσ)(x) = π(σ(x))`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{factorial, Partition};

/// Largest degree for which a whole group is enumerated in memory.
pub const MAX_ENUMERATED_DEGREE: usize = 10;

/// A bijection of `{1..n}`, stored as 0-based images.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images0(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::Parse(format!("not a bijection: {images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, `images[i-1] = π(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.len() > u8::MAX as usize {
            return Err(Error::Resource(format!("degree {} too large", images.len())));
        }
        let zero_based = images
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(Error::Parse("points are 1-based".into()))
                } else {
                    Ok((x - 1) as u8)
                }
            })
            .collect::<Result<Vec<u8>>>()?;
        Permutation::from_images0(zero_based)
    }

    /// From 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x] {
                    return Err(Error::Parse(format!("bad cycle {cycle:?} for degree {n}")));
                }
                touched[x] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
            let body = &open[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad point `{t}`"))))
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Permutation::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images0(&self) -> &[u8] {
        &self.images
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `π(x)` for a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    pub fn apply0(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    /// Disjoint cycles (1-based), each starting at its minimum, sorted by
    /// minimum; fixed points included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let lengths = self.cycles().iter().map(Vec::len).collect();
        CycleType(Partition::from_multiset(lengths).expect("cycle lengths are positive"))
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if !seen[start] {
                count += 1;
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    x = self.images[x] as usize;
                }
            }
        }
        count
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.num_cycles()).is_multiple_of(2)
    }

    /// `(−1)^{n − #cycles}`.
    pub fn sign(&self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &x)| i == x as usize)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.fixed_points() == self.degree()
    }

    pub fn is_derangement(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i != x as usize)
    }

    /// True iff `π(i) = σ(i)` for some point, i.e. `πσ⁻¹` has a fixed point.
    pub fn is_intersecting(&self, other: &Permutation) -> Result<bool> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.agrees_somewhere(other))
    }

    #[inline]
    pub(crate) fn agrees_somewhere(&self, other: &Permutation) -> bool {
        self.images.iter().zip(&other.images).any(|(a, b)| a == b)
    }

    /// Position in the lexicographic order of all permutations of degree `n`.
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut used = 0u32;
        let mut rank = 0usize;
        for (i, &x) in self.images.iter().enumerate() {
            let smaller_unused = (0..x).filter(|&y| used & (1 << y) == 0).count();
            rank += smaller_unused * small_factorial(n - 1 - i);
            used |= 1 << x;
        }
        rank
    }

    /// Cycle notation with each cycle starting at its minimum, cycles sorted
    /// by decreasing length and then by minimum, 1-cycles omitted.
    pub fn canonical_cycle_word(&self) -> Vec<Vec<usize>> {
        let mut cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    }
}

pub(crate) fn small_factorial(n: usize) -> usize {
    (2..=n).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// The multiset of cycle lengths of a permutation, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Partition);

impl CycleType {
    pub fn new(lengths: Vec<usize>) -> Result<Self> {
        Ok(CycleType(Partition::from_multiset(lengths)?))
    }

    pub fn degree(&self) -> usize {
        self.0.weight()
    }

    pub fn lengths(&self) -> &[usize] {
        self.0.parts()
    }

    pub fn fixed_points(&self) -> usize {
        self.lengths().iter().filter(|&&l| l == 1).count()
    }

    pub fn is_even(&self) -> bool {
        self.lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    pub fn sign(&self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// All cycle lengths odd and pairwise distinct.
    pub fn is_split(&self) -> Result<bool> {
        if !self.is_even() {
            return Err(Error::domain(format!("cycle type {self} is odd and not an Alt class")));
        }
        let l = self.lengths();
        Ok(l.iter().all(|&q| q % 2 == 1) && l.windows(2).all(|w| w[0] != w[1]))
    }

    /// Number of cycles `r` (all odd) and `m = (n − r)/2` for a split type.
    pub fn split_parameters(&self) -> Result<(usize, usize)> {
        if !self.is_split()? {
            return Err(Error::domain(format!("cycle type {self} is not split")));
        }
        let r = self.lengths().len();
        Ok((r, (self.degree() - r) / 2))
    }

    /// The symmetric partition whose diagonal hooks are the cycle lengths:
    /// `q_i = 2λ_i − (2i − 1)`.
    pub fn split_class_partition(&self) -> Result<Partition> {
        if !self.is_split()? {
            return Err(Error::domain(format!("cycle type {self} is not split")));
        }
        let arms: Vec<usize> = self.lengths().iter().map(|q| (q - 1) / 2).collect();
        let r = arms.len();
        let rows: Vec<usize> = arms.iter().enumerate().map(|(i, a)| a + i + 1).collect();
        let mut parts = rows.clone();
        let height = rows.first().copied().unwrap_or(0);
        for j in (r + 1)..=height {
            parts.push(rows.iter().filter(|&&c| c >= j).count());
        }
        Partition::new(parts)
    }

    /// Inverse of [`CycleType::split_class_partition`].
    pub fn from_symmetric_partition(lambda: &Partition) -> Result<CycleType> {
        if !lambda.is_symmetric() {
            return Err(Error::domain(format!("{lambda} is not symmetric")));
        }
        let lengths = lambda
            .parts()
            .iter()
            .enumerate()
            .take_while(|&(i, &l)| l > i)
            .map(|(i, &l)| 2 * l - 2 * i - 1)
            .collect();
        CycleType::new(lengths)
    }

    /// Size of the `Sym(n)` class: `n! / Π l^{m_l} m_l!`.
    pub fn sym_class_size(&self) -> BigUint {
        let mut centralizer = BigUint::one();
        let l = self.lengths();
        let mut i = 0;
        while i < l.len() {
            let mut j = i;
            while j < l.len() && l[j] == l[i] {
                j += 1;
            }
            let mult = j - i;
            centralizer *= BigUint::from(l[i]).pow(mult as u32) * factorial(mult);
            i = j;
        }
        factorial(self.degree()) / centralizer
    }

    /// A permutation of this type with cycles on consecutive points, longest
    /// cycle first.
    pub fn standard_representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for &l in self.lengths() {
            cycles.push((next..next + l).collect::<Vec<_>>());
            next += l;
        }
        Permutation::from_cycles(self.degree(), &cycles).expect("consecutive cycles are disjoint")
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Sym,
    Alt,
}

impl GroupKind {
    pub fn order(self, n: usize) -> BigUint {
        match self {
            GroupKind::Sym => factorial(n),
            GroupKind::Alt => factorial(n) / 2u32,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SplitTag {
    NonSplit,
    Prime,
    DoublePrime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub group: GroupKind,
    pub cycle_type: CycleType,
    pub split_tag: SplitTag,
    pub size: BigUint,
    pub representative: Permutation,
}

impl ConjugacyClass {
    pub fn is_identity(&self) -> bool {
        self.cycle_type.fixed_points() == self.cycle_type.degree()
    }

    pub fn label(&self) -> String {
        match self.split_tag {
            SplitTag::NonSplit => self.cycle_type.to_string(),
            SplitTag::Prime => format!("{}'", self.cycle_type),
            SplitTag::DoublePrime => format!("{}''", self.cycle_type),
        }
    }
}

/// Row of the exported class list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub cycle_type: Vec<usize>,
    pub split_tag: SplitTag,
    pub size: String,
}

impl From<&ConjugacyClass> for ClassSummary {
    fn from(c: &ConjugacyClass) -> Self {
        ClassSummary {
            cycle_type: c.cycle_type.lengths().to_vec(),
            split_tag: c.split_tag,
            size: c.size.to_string(),
        }
    }
}

/// Canonical representative of one class of a split pair.
///
/// The `Prime` class is the one containing the lexicographically least cycle
/// word over the whole `Sym(n)` class, which is the permutation with
/// consecutive cycles. Its twin is obtained by conjugating with the
/// transposition of the last two points of the longest cycle.
pub fn canonical_split_representative(cycle_type: &CycleType, tag: SplitTag) -> Result<Permutation> {
    if !cycle_type.is_split()? {
        return Err(Error::domain(format!("{cycle_type} is not a split type")));
    }
    let rep = cycle_type.standard_representative();
    match tag {
        SplitTag::Prime => Ok(rep),
        SplitTag::DoublePrime => {
            let q = cycle_type.lengths()[0];
            if q < 2 {
                return Err(Error::domain("split pair needs a cycle of length at least 3"));
            }
            let t = Permutation::from_cycles(cycle_type.degree(), &[vec![q - 1, q]])?;
            Ok(rep.conjugate_by(&t))
        }
        SplitTag::NonSplit => Err(Error::domain("a split representative needs a Prime/DoublePrime tag")),
    }
}

/// Which class of a split pair contains `perm`.
///
/// The centralizer of a split-type element lies inside `Alt(n)`, so every
/// conjugator from the `Prime` representative has the same sign.
pub fn split_tag_of(perm: &Permutation) -> Result<SplitTag> {
    let ct = perm.cycle_type();
    if !ct.is_split()? {
        return Ok(SplitTag::NonSplit);
    }
    let mut target = perm.cycles();
    target.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let rep_cycles = {
        let mut c = ct.standard_representative().cycles();
        c.sort_by_key(|c| std::cmp::Reverse(c.len()));
        c
    };
    let n = perm.degree();
    let mut images = vec![0usize; n];
    for (src, dst) in rep_cycles.iter().zip(&target) {
        for (&a, &b) in src.iter().zip(dst) {
            images[a - 1] = b;
        }
    }
    let g = Permutation::from_images(&images)?;
    Ok(if g.is_even() {
        SplitTag::Prime
    } else {
        SplitTag::DoublePrime
    })
}

/// All cycle types of degree `n`, identity type first.
pub fn cycle_types(n: usize) -> Vec<CycleType> {
    let mut all: Vec<CycleType> = Partition::all(n).into_iter().map(CycleType).collect();
    all.reverse();
    all
}

/// The complete class list of `Sym(n)` or `Alt(n)` with exact sizes.
///
/// Classes follow [`cycle_types`]; a split pair lists `Prime` before
/// `DoublePrime`.
pub fn conjugacy_classes(n: usize, group: GroupKind) -> Result<Vec<ConjugacyClass>> {
    match group {
        GroupKind::Sym if n < 1 => return Err(Error::domain("Sym(n) needs n >= 1")),
        GroupKind::Alt if n < 3 => return Err(Error::domain("Alt(n) needs n >= 3")),
        _ => {}
    }
    let mut classes = Vec::new();
    for ct in cycle_types(n) {
        let size = ct.sym_class_size();
        match group {
            GroupKind::Sym => classes.push(ConjugacyClass {
                group,
                representative: ct.standard_representative(),
                cycle_type: ct,
                split_tag: SplitTag::NonSplit,
                size,
            }),
            GroupKind::Alt => {
                if !ct.is_even() {
                    continue;
                }
                if ct.is_split()? {
                    let half = size / 2u32;
                    for tag in [SplitTag::Prime, SplitTag::DoublePrime] {
                        classes.push(ConjugacyClass {
                            group,
                            representative: canonical_split_representative(&ct, tag)?,
                            cycle_type: ct.clone(),
                            split_tag: tag,
                            size: half.clone(),
                        });
                    }
                } else {
                    classes.push(ConjugacyClass {
                        group,
                        representative: ct.standard_representative(),
                        cycle_type: ct,
                        split_tag: SplitTag::NonSplit,
                        size,
                    });
                }
            }
        }
    }
    Ok(classes)
}

/// A fully enumerated `Sym(n)` or `Alt(n)`.
///
/// Elements are listed in lexicographic image order and indexed from zero;
/// every vector or matrix over the group uses this order.
#[derive(Clone, Debug)]
pub struct GroupTable {
    n: usize,
    kind: GroupKind,
    elements: Vec<Permutation>,
    /// Lexicographic rank in `Sym(n)` to element index (`u32::MAX` if absent).
    rank_to_index: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<u16>,
}

impl GroupTable {
    pub fn new(n: usize, kind: GroupKind) -> Result<Self> {
        if n > MAX_ENUMERATED_DEGREE {
            return Err(Error::Resource(format!("refusing to enumerate a group of degree {n}")));
        }
        let classes = conjugacy_classes(n, kind)?;
        let mut lookup: HashMap<(CycleType, SplitTag), u16> = HashMap::new();
        for (k, c) in classes.iter().enumerate() {
            lookup.insert((c.cycle_type.clone(), c.split_tag), k as u16);
        }

        let total = small_factorial(n);
        let mut elements = Vec::with_capacity(match kind {
            GroupKind::Sym => total,
            GroupKind::Alt => total / 2,
        });
        let mut rank_to_index = vec![u32::MAX; total];
        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut rank = 0usize;
        loop {
            let perm = Permutation { images: images.clone() };
            if kind == GroupKind::Sym || perm.is_even() {
                rank_to_index[rank] = elements.len() as u32;
                elements.push(perm);
            }
            rank += 1;
            if !next_permutation(&mut images) {
                break;
            }
        }

        let class_of = elements
            .iter()
            .map(|p| {
                let ct = p.cycle_type();
                let tag = match kind {
                    GroupKind::Sym => SplitTag::NonSplit,
                    GroupKind::Alt => split_tag_of(p)?,
                };
                Ok(lookup[&(ct, tag)])
            })
            .collect::<Result<Vec<u16>>>()?;

        Ok(GroupTable {
            n,
            kind,
            elements,
            rank_to_index,
            classes,
            class_of,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn index_of(&self, perm: &Permutation) -> Option<usize> {
        if perm.degree() != self.n {
            return None;
        }
        match self.rank_to_index[perm.lex_rank()] {
            u32::MAX => None,
            i => Some(i as usize),
        }
    }

    /// Class index (into [`GroupTable::classes`]) of the element at `index`.
    pub fn class_index(&self, index: usize) -> usize {
        self.class_of[index] as usize
    }

    pub fn class_index_of(&self, perm: &Permutation) -> Option<usize> {
        self.index_of(perm).map(|i| self.class_index(i))
    }

    /// Index of `a⁻¹ ∘ b`.
    pub fn quotient_index(&self, a: usize, b: usize) -> usize {
        let pa = &self.elements[a].images;
        let pb = &self.elements[b].images;
        let mut inv = [0u8; 16];
        for (i, &x) in pa.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        let mut used = 0u32;
        let mut rank = 0usize;
        let n = self.n;
        for i in 0..n {
            let x = inv[pb[i] as usize];
            let smaller_unused = (used & ((1u32 << x) - 1)).count_ones() as usize;
            rank += (x as usize - smaller_unused) * FACTORIALS[n - 1 - i];
            used |= 1 << x;
        }
        self.rank_to_index[rank] as usize
    }

    /// Tallies the members of `set` by conjugacy class.
    pub fn class_counts<'a>(&self, set: impl IntoIterator<Item = &'a Permutation>) -> Result<Vec<usize>> {
        let mut counts = vec![0usize; self.classes.len()];
        for p in set {
            let c = self
                .class_index_of(p)
                .ok_or_else(|| Error::domain(format!("{p} is not an element of the group")))?;
            counts[c] += 1;
        }
        Ok(counts)
    }

    /// The indicator of `set` as a 0/1 vector in element order.
    pub fn indicator<'a>(&self, set: impl IntoIterator<Item = &'a Permutation>) -> Result<Vec<u8>> {
        let mut v = vec![0u8; self.order()];
        for p in set {
            let i = self
                .index_of(p)
                .ok_or_else(|| Error::domain(format!("{p} is not an element of the group")))?;
            v[i] = 1;
        }
        Ok(v)
    }

    pub fn derangement_indices(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.elements[i].is_derangement())
            .collect()
    }

    /// The coset `S_{i,j} = {π : π(i) = j}` (1-based points).
    pub fn coset_family(&self, i: usize, j: usize) -> CosetFamily {
        let members = self.elements.iter().filter(|p| p.apply(i) == j).cloned().collect();
        CosetFamily { i, j, members }
    }
}

const FACTORIALS: [usize; 13] = [
    1, 1, 2, 6, 24, 120, 720, 5040, 40320, 362880, 3628800, 39916800, 479001600,
];

/// Advances to the next permutation in lexicographic order.
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

/// `S_{i,j}`: the permutations of the group mapping `i` to `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetFamily {
    pub i: usize,
    pub j: usize,
    pub members: Vec<Permutation>,
}

impl CosetFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_intersecting(&self) -> bool {
        self.members
            .iter()
            .enumerate()
            .all(|(k, a)| self.members[k + 1..].iter().all(|b| a.agrees_somewhere(b)))
    }
}

/// The fixed-point-free elements of `Alt(n)`.
pub fn derangement_set(n: usize) -> Result<Vec<Permutation>> {
    if n < 3 {
        return Err(Error::domain("derangements of Alt(n) need n >= 3"));
    }
    let table = GroupTable::new(n, GroupKind::Alt)?;
    Ok(table
        .derangement_indices()
        .into_iter()
        .map(|i| table.element(i).clone())
        .collect())
}

/// Number of even derangements, from the class list (no enumeration).
pub fn alt_derangement_count(n: usize) -> Result<BigUint> {
    Ok(conjugacy_classes(n, GroupKind::Alt)?
        .iter()
        .filter(|c| c.cycle_type.fixed_points() == 0)
        .map(|c| c.size.clone())
        .sum())
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sym" | "s" => Ok(GroupKind::Sym),
            "alt" | "a" => Ok(GroupKind::Alt),
            _ => Err(Error::Parse(format!("unknown group `{s}`"))),
        }
    }
}

pub(crate) fn biguint_to_usize(x: &BigUint) -> usize {
    x.to_usize().expect("value fits in usize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn perm(n: usize, text: &str) -> Permutation {
        Permutation::parse_cycles(n, text).unwrap()
    }

    /// Orbit of `x` under conjugation by the elements of `table`.
    fn conjugation_orbit(table: &GroupTable, x: &Permutation) -> HashSet<Permutation> {
        table.elements().iter().map(|g| x.conjugate_by(g)).collect()
    }

    #[test]
    fn intersecting_examples() {
        let p = perm(5, "(1 2)(3 4)");
        let s = perm(5, "(1 3)(2 4)");
        assert!(p.is_intersecting(&p).unwrap());
        assert!(!perm(5, "(1 2 3 4 5)")
            .is_intersecting(&Permutation::identity(5))
            .unwrap());
        assert!(p.is_intersecting(&s).unwrap());
        assert_eq!(
            p.is_intersecting(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 5, right: 4 })
        );
    }

    #[test]
    fn split_examples() {
        assert!(CycleType::new(vec![5]).unwrap().is_split().unwrap());
        assert!(!CycleType::new(vec![3, 1, 1]).unwrap().is_split().unwrap());
        for n in (4..=12).step_by(2) {
            assert!(!CycleType::new(vec![n / 2, n / 2]).unwrap().is_split().unwrap());
        }
        assert!(matches!(
            CycleType::new(vec![2, 1]).unwrap().is_split(),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn split_class_partition_examples() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(
            CycleType::new(vec![11, 9, 3]).unwrap().split_class_partition().unwrap(),
            p(&[6, 6, 4, 3, 2, 2])
        );
        assert_eq!(
            CycleType::new(vec![5]).unwrap().split_class_partition().unwrap(),
            p(&[3, 1, 1])
        );
        for n in 1..10 {
            let mut hook = vec![n];
            hook.extend(std::iter::repeat_n(1, n - 1));
            assert_eq!(
                CycleType::new(vec![2 * n - 1])
                    .unwrap()
                    .split_class_partition()
                    .unwrap(),
                p(&hook)
            );
        }
        assert!(CycleType::new(vec![3, 3]).unwrap().split_class_partition().is_err());
    }

    #[test]
    fn split_correspondence_is_a_bijection() {
        for n in 1..=14 {
            let symmetric: Vec<Partition> = Partition::all(n).into_iter().filter(|l| l.is_symmetric()).collect();
            let split: Vec<CycleType> = cycle_types(n)
                .into_iter()
                .filter(|t| t.is_even() && t.is_split().unwrap())
                .collect();
            assert_eq!(symmetric.len(), split.len(), "n = {n}");
            for lam in &symmetric {
                let t = CycleType::from_symmetric_partition(lam).unwrap();
                assert_eq!(&t.split_class_partition().unwrap(), lam);
            }
            for t in &split {
                let lam = t.split_class_partition().unwrap();
                assert!(lam.is_symmetric());
                assert_eq!(&CycleType::from_symmetric_partition(&lam).unwrap(), t);
            }
        }
    }

    #[test]
    fn alt5_classes() {
        let classes = conjugacy_classes(5, GroupKind::Alt).unwrap();
        let summary: Vec<(String, usize)> = classes.iter().map(|c| (c.label(), biguint_to_usize(&c.size))).collect();
        assert_eq!(
            summary,
            vec![
                ("(1,1,1,1,1)".to_string(), 1),
                ("(2,2,1)".to_string(), 15),
                ("(3,1,1)".to_string(), 20),
                ("(5)'".to_string(), 12),
                ("(5)''".to_string(), 12),
            ]
        );
        let a3: Vec<usize> = conjugacy_classes(3, GroupKind::Alt)
            .unwrap()
            .iter()
            .map(|c| biguint_to_usize(&c.size))
            .collect();
        assert_eq!(a3, vec![1, 1, 1]);
    }

    #[test]
    fn class_sizes_sum_to_group_order() {
        for n in 3..=12 {
            for kind in [GroupKind::Sym, GroupKind::Alt] {
                let classes = conjugacy_classes(n, kind).unwrap();
                let total: BigUint = classes.iter().map(|c| c.size.clone()).sum();
                assert_eq!(total, kind.order(n), "{kind:?} {n}");
            }
            assert_eq!(conjugacy_classes(n, GroupKind::Sym).unwrap().len(), Partition::count(n));
        }
    }

    #[test]
    fn class_sizes_match_orbit_counts() {
        for n in 3..=7 {
            let alt = GroupTable::new(n, GroupKind::Alt).unwrap();
            for class in alt.classes() {
                let orbit = conjugation_orbit(&alt, &class.representative);
                assert_eq!(BigUint::from(orbit.len()), class.size, "{}", class.label());
                let sym_size = class.cycle_type.sym_class_size();
                let split = class.cycle_type.is_split().unwrap();
                assert_eq!(sym_size == BigUint::from(2 * orbit.len()), split, "{}", class.label());
                for p in &orbit {
                    assert_eq!(alt.class_index_of(p).map(|k| &alt.classes()[k]), Some(class));
                }
            }
        }
    }

    #[test]
    fn derangement_examples() {
        assert_eq!(derangement_set(5).unwrap().len(), 24);
        assert!(derangement_set(5)
            .unwrap()
            .iter()
            .all(|p| p.cycle_type().lengths() == [5]));
        assert_eq!(derangement_set(6).unwrap().len(), 130);
        assert_eq!(derangement_set(3).unwrap().len(), 2);
        for n in 3..=8 {
            assert_eq!(
                BigUint::from(derangement_set(n).unwrap().len()),
                alt_derangement_count(n).unwrap()
            );
        }
    }

    #[test]
    fn split_representatives() {
        let five = CycleType::new(vec![5]).unwrap();
        let prime = canonical_split_representative(&five, SplitTag::Prime).unwrap();
        assert_eq!(prime, perm(5, "(1 2 3 4 5)"));
        assert_eq!(split_tag_of(&prime).unwrap(), SplitTag::Prime);
        let twin = prime.conjugate_by(&perm(5, "(4 5)"));
        assert_eq!(split_tag_of(&twin).unwrap(), SplitTag::DoublePrime);
        assert_eq!(
            canonical_split_representative(&five, SplitTag::DoublePrime).unwrap(),
            twin
        );
        let seven = perm(7, "(1 2 3 4 5 6 7)");
        assert_eq!(split_tag_of(&seven).unwrap(), SplitTag::Prime);
        assert!(canonical_split_representative(&CycleType::new(vec![3, 1, 1]).unwrap(), SplitTag::Prime).is_err());
    }

    #[test]
    fn prime_class_holds_the_least_cycle_word() {
        for n in 3..=7 {
            let alt = GroupTable::new(n, GroupKind::Alt).unwrap();
            let mut least: HashMap<CycleType, (Vec<Vec<usize>>, SplitTag)> = HashMap::new();
            for (k, p) in alt.elements().iter().enumerate() {
                let class = &alt.classes()[alt.class_index(k)];
                if class.split_tag == SplitTag::NonSplit {
                    continue;
                }
                let word = p.canonical_cycle_word();
                let entry = least
                    .entry(class.cycle_type.clone())
                    .or_insert((word.clone(), class.split_tag));
                if word < entry.0 {
                    *entry = (word, class.split_tag);
                }
            }
            assert!(least.values().all(|(_, tag)| *tag == SplitTag::Prime));
        }
    }

    #[test]
    fn odd_conjugation_swaps_split_pairs() {
        let t = perm(7, "(1 2)");
        for ct in cycle_types(7) {
            if !ct.is_even() || !ct.is_split().unwrap() {
                continue;
            }
            let p = canonical_split_representative(&ct, SplitTag::Prime).unwrap();
            let d = canonical_split_representative(&ct, SplitTag::DoublePrime).unwrap();
            assert_eq!(split_tag_of(&p.conjugate_by(&t)).unwrap(), SplitTag::DoublePrime);
            assert_eq!(split_tag_of(&d.conjugate_by(&t)).unwrap(), SplitTag::Prime);
        }
    }

    #[test]
    fn coset_families() {
        for n in 3..=7 {
            let alt = GroupTable::new(n, GroupKind::Alt).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    let s = alt.coset_family(i, j);
                    assert_eq!(s.len(), small_factorial(n - 1) / 2);
                    if n <= 6 || (i, j) == (1, 1) || (i, j) == (2, 5) {
                        assert!(s.is_intersecting());
                    }
                }
            }
        }
    }

    #[test]
    fn coset_families_of_alt8() {
        let alt = GroupTable::new(8, GroupKind::Alt).unwrap();
        for (i, j) in [(1, 1), (3, 7)] {
            let s = alt.coset_family(i, j);
            assert_eq!(s.len(), 2520);
            assert!(s.is_intersecting());
        }
    }

    #[test]
    fn group_table_indexing() {
        let alt = GroupTable::new(6, GroupKind::Alt).unwrap();
        assert_eq!(alt.order(), 360);
        assert_eq!(alt.element(0), &Permutation::identity(6));
        for (k, p) in alt.elements().iter().enumerate() {
            assert_eq!(alt.index_of(p), Some(k));
        }
        assert!(alt.elements().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(alt.index_of(&perm(6, "(1 2)")), None);
        for a in [0, 17, 200] {
            for b in [0, 5, 359] {
                let q = alt.element(a).inverse().compose(alt.element(b));
                assert_eq!(alt.quotient_index(a, b), alt.index_of(&q).unwrap());
            }
        }
    }

    #[test]
    fn cycle_notation() {
        let p = perm(6, "(1 2 3)(4 5)");
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.images(), vec![2, 3, 1, 5, 4, 6]);
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,3,1,5,4,6]");
        assert!(Permutation::parse_cycles(3, "(1 2 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u8).collect::<Vec<u8>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images0(v).unwrap())
    }

    proptest! {
        #[test]
        fn sign_matches_cycle_count(p in arb_perm(9)) {
            prop_assert_eq!(p.sign(), p.cycle_type().sign());
            prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(9));
        }

        #[test]
        fn text_and_json_forms_round_trip(p in arb_perm(8)) {
            prop_assert_eq!(Permutation::parse_cycles(8, &p.to_string()).unwrap(), p.clone());
            let json = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
        }

        #[test]
        fn split_tag_is_a_class_invariant(p in arb_perm(7), g in arb_perm(7)) {
            let ct = p.cycle_type();
            if ct.is_even() && ct.is_split().unwrap() {
                let q = p.conjugate_by(&g);
                let same = split_tag_of(&p).unwrap() == split_tag_of(&q).unwrap();
                prop_assert_eq!(same, g.is_even());
            }
        }
    }
}
