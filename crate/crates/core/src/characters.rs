//! Exact character values: the Murnaghan–Nakayama recursion for `Sym(n)` and
//! the irreducible characters of `Alt(n)` over a quadratic field.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{Partition, Shape};
use crate::permgroup::{
    conjugacy_classes, split_tag_of, ClassSummary, ConjugacyClass, CycleType, GroupKind, Permutation, SplitTag,
};
use crate::quadratic::{QuadraticNumber, QuadraticSum};

pub use crate::quadratic::QuadraticNumber as CharacterValue;

type MemoKey = (Vec<usize>, Vec<usize>);

/// Memo table for the Murnaghan–Nakayama recursion, keyed on the shape and
/// the cycles still to be stripped. Concurrent readers share it; writers
/// only ever insert values identical to what any other writer computes.
#[derive(Default)]
pub struct MnCache {
    memo: RwLock<HashMap<MemoKey, BigInt>>,
}

impl MnCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static MnCache {
        static CACHE: OnceLock<MnCache> = OnceLock::new();
        CACHE.get_or_init(MnCache::new)
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `χ^λ` on the class with the given cycle lengths (sorted decreasingly).
    fn value(&self, lambda: &Partition, cycles: &[usize]) -> BigInt {
        let Some((&m, rest)) = cycles.split_first() else {
            return if lambda.is_empty() {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        };
        let key = (lambda.parts().to_vec(), cycles.to_vec());
        if let Some(v) = self.memo.read().expect("memo lock").get(&key) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for hook in lambda.skew_hooks(m) {
            let v = self.value(&hook.remainder, rest);
            if hook.height() % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.write().expect("memo lock").insert(key, total.clone());
        total
    }
}

/// The `Sym(n)` character `χ^λ` on permutations of cycle type `t`.
///
/// Cycles are stripped longest first.
pub fn mn_character(lambda: &Partition, t: &CycleType) -> Result<BigInt> {
    if lambda.weight() != t.degree() {
        return Err(Error::DegreeMismatch {
            left: lambda.weight(),
            right: t.degree(),
        });
    }
    Ok(MnCache::global().value(lambda, t.lengths()))
}

/// Labels of the irreducible characters of `Alt(n)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AltCharLabel {
    /// Restriction of `χ^λ` for non-symmetric `λ`; `λ` is the
    /// lexicographically larger of `λ` and its conjugate.
    Restricted(Partition),
    SplitPlus(Partition),
    SplitMinus(Partition),
}

impl AltCharLabel {
    /// The restricted character of `λ` or its conjugate, canonicalised.
    pub fn restricted(lambda: Partition) -> Result<Self> {
        let conj = lambda.conjugate();
        if conj == lambda {
            return Err(Error::domain(format!("{lambda} is symmetric; its restriction splits")));
        }
        Ok(AltCharLabel::Restricted(if lambda > conj { lambda } else { conj }))
    }

    pub fn split_plus(lambda: Partition) -> Result<Self> {
        if !lambda.is_symmetric() {
            return Err(Error::domain(format!("{lambda} is not symmetric")));
        }
        Ok(AltCharLabel::SplitPlus(lambda))
    }

    pub fn split_minus(lambda: Partition) -> Result<Self> {
        if !lambda.is_symmetric() {
            return Err(Error::domain(format!("{lambda} is not symmetric")));
        }
        Ok(AltCharLabel::SplitMinus(lambda))
    }

    pub fn trivial(n: usize) -> Self {
        AltCharLabel::Restricted(Partition::row(n))
    }

    /// Restriction of the `[n−1, 1]` character (needs `n ≥ 4`).
    pub fn standard(n: usize) -> Self {
        AltCharLabel::Restricted(Partition::new(vec![n - 1, 1]).expect("n >= 2"))
    }

    pub fn partition(&self) -> &Partition {
        match self {
            AltCharLabel::Restricted(l) | AltCharLabel::SplitPlus(l) | AltCharLabel::SplitMinus(l) => l,
        }
    }

    pub fn degree(&self) -> usize {
        self.partition().weight()
    }

    pub fn is_split(&self) -> bool {
        !matches!(self, AltCharLabel::Restricted(_))
    }

    pub fn is_trivial(&self) -> bool {
        *self == AltCharLabel::trivial(self.degree())
    }

    pub fn is_standard(&self) -> bool {
        self.degree() >= 4 && *self == AltCharLabel::standard(self.degree())
    }

    /// `χ(1)`.
    pub fn dimension(&self) -> BigUint {
        let d = self.partition().specht_dimension();
        if self.is_split() {
            d / 2u32
        } else {
            d
        }
    }

    /// The label of the twin character under `√d ↦ −√d`.
    pub fn galois_twin(&self) -> AltCharLabel {
        match self {
            AltCharLabel::Restricted(l) => AltCharLabel::Restricted(l.clone()),
            AltCharLabel::SplitPlus(l) => AltCharLabel::SplitMinus(l.clone()),
            AltCharLabel::SplitMinus(l) => AltCharLabel::SplitPlus(l.clone()),
        }
    }
}

impl fmt::Display for AltCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AltCharLabel::Restricted(l) => write!(f, "χ[{l}]"),
            AltCharLabel::SplitPlus(l) => write!(f, "χ'[{l}]"),
            AltCharLabel::SplitMinus(l) => write!(f, "χ''[{l}]"),
        }
    }
}

impl fmt::Debug for AltCharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All irreducible character labels of `Alt(n)`, trivial first; the two
/// halves of a split pair are adjacent.
pub fn alt_irreducible_labels(n: usize) -> Vec<AltCharLabel> {
    let mut out = Vec::new();
    for lambda in Partition::all(n) {
        let conj = lambda.conjugate();
        if conj == lambda {
            out.push(AltCharLabel::SplitPlus(lambda.clone()));
            out.push(AltCharLabel::SplitMinus(lambda));
        } else if lambda > conj {
            out.push(AltCharLabel::Restricted(lambda));
        }
    }
    out
}

/// The values `x, y = ½[(−1)^m ± √((−1)^m q₁⋯q_r)]` on the split pair of type `t`.
pub fn split_pair_values(t: &CycleType) -> Result<(QuadraticNumber, QuadraticNumber)> {
    let (_, m) = t.split_parameters()?;
    let eps: i64 = if m % 2 == 0 { 1 } else { -1 };
    let product = t
        .lengths()
        .iter()
        .try_fold(1i64, |acc, &q| acc.checked_mul(q as i64))
        .ok_or_else(|| Error::Resource("cycle-length product overflows".into()))?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let a = half.clone() * BigInt::from(eps);
    let x = QuadraticNumber::new(a.clone(), half.clone(), eps * product)?;
    let y = QuadraticNumber::new(a, -half, eps * product)?;
    Ok((x, y))
}

/// Value of an irreducible character of `Alt(n)` on a class.
pub fn alt_character_value(chi: &AltCharLabel, class: &ConjugacyClass) -> Result<QuadraticNumber> {
    if class.group != GroupKind::Alt {
        return Err(Error::domain("class must belong to Alt(n)"));
    }
    if chi.degree() != class.cycle_type.degree() {
        return Err(Error::DegreeMismatch {
            left: chi.degree(),
            right: class.cycle_type.degree(),
        });
    }
    let lambda = chi.partition();
    let sym_value = mn_character(lambda, &class.cycle_type)?;
    match chi {
        AltCharLabel::Restricted(_) => Ok(QuadraticNumber::from_integer(sym_value)),
        AltCharLabel::SplitPlus(_) | AltCharLabel::SplitMinus(_) => {
            let corresponds =
                class.split_tag != SplitTag::NonSplit && class.cycle_type.split_class_partition()? == *lambda;
            if !corresponds {
                return Ok(QuadraticNumber::from_rational(BigRational::new(
                    sym_value,
                    BigInt::from(2),
                )));
            }
            let (x, y) = split_pair_values(&class.cycle_type)?;
            let plus = matches!(chi, AltCharLabel::SplitPlus(_));
            let prime = class.split_tag == SplitTag::Prime;
            Ok(if plus == prime { x } else { y })
        }
    }
}

/// The character table of `Alt(n)`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub n: usize,
    pub rows: Vec<AltCharLabel>,
    pub cols: Vec<ConjugacyClass>,
    pub values: Vec<Vec<QuadraticNumber>>,
    column_lookup: HashMap<(CycleType, SplitTag), usize>,
}

/// JSON export of a [`CharacterTable`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterTableExport {
    pub n: usize,
    pub characters: Vec<String>,
    pub classes: Vec<ClassSummary>,
    pub values: Vec<Vec<QuadraticNumber>>,
}

pub const MAX_TABLE_DEGREE: usize = 12;

pub fn alt_character_table(n: usize) -> Result<CharacterTable> {
    CharacterTable::new(n)
}

impl CharacterTable {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=MAX_TABLE_DEGREE).contains(&n) {
            return Err(Error::domain(format!(
                "Alt(n) tables are built for 3 <= n <= {MAX_TABLE_DEGREE}"
            )));
        }
        let rows = alt_irreducible_labels(n);
        let cols = conjugacy_classes(n, GroupKind::Alt)?;
        let values = rows
            .iter()
            .map(|chi| {
                cols.iter()
                    .map(|c| alt_character_value(chi, c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let column_lookup = cols
            .iter()
            .enumerate()
            .map(|(k, c)| ((c.cycle_type.clone(), c.split_tag), k))
            .collect();
        Ok(CharacterTable {
            n,
            rows,
            cols,
            values,
            column_lookup,
        })
    }

    pub fn row_of(&self, chi: &AltCharLabel) -> Option<usize> {
        self.rows.iter().position(|r| r == chi)
    }

    pub fn value(&self, chi: &AltCharLabel, col: usize) -> Result<&QuadraticNumber> {
        let row = self
            .row_of(chi)
            .ok_or_else(|| Error::domain(format!("{chi} is not a character of Alt({})", self.n)))?;
        Ok(&self.values[row][col])
    }

    /// Column of the class containing `perm`.
    pub fn column_of(&self, perm: &Permutation) -> Result<usize> {
        if perm.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: perm.degree(),
                right: self.n,
            });
        }
        if !perm.is_even() {
            return Err(Error::domain(format!("{perm} is not in Alt({})", self.n)));
        }
        let key = (perm.cycle_type(), split_tag_of(perm)?);
        Ok(self.column_lookup[&key])
    }

    /// Members of `set` tallied by column.
    pub fn class_counts<'a>(&self, set: impl IntoIterator<Item = &'a Permutation>) -> Result<Vec<usize>> {
        let mut counts = vec![0usize; self.cols.len()];
        for p in set {
            counts[self.column_of(p)?] += 1;
        }
        Ok(counts)
    }

    /// `Σ_c counts[c] · χ(c)`.
    pub fn sum_with_counts(&self, row: usize, counts: &[usize]) -> Result<QuadraticNumber> {
        let mut sum = QuadraticSum::new();
        for (value, &count) in self.values[row].iter().zip(counts) {
            if count > 0 {
                sum.add_scaled(&BigRational::from_integer(BigInt::from(count)), value);
            }
        }
        sum.finish()
    }

    /// `χ(S) = Σ_{x ∈ S} χ(x)`.
    pub fn sum_over_set<'a>(
        &self,
        chi: &AltCharLabel,
        set: impl IntoIterator<Item = &'a Permutation>,
    ) -> Result<QuadraticNumber> {
        let row = self
            .row_of(chi)
            .ok_or_else(|| Error::domain(format!("{chi} is not a character of Alt({})", self.n)))?;
        let counts = self.class_counts(set)?;
        self.sum_with_counts(row, &counts)
    }

    pub fn group_order(&self) -> BigUint {
        GroupKind::Alt.order(self.n)
    }

    /// Exact row and column orthogonality, and `Σ χ(1)² = |Alt(n)|`.
    pub fn check_orthogonality(&self) -> Result<()> {
        let order = BigRational::from_integer(BigInt::from(self.group_order()));
        let sizes: Vec<BigRational> = self
            .cols
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(c.size.clone())))
            .collect();

        for (i, chi) in self.values.iter().enumerate() {
            for (j, psi) in self.values.iter().enumerate().skip(i) {
                let mut sum = QuadraticSum::new();
                for ((x, y), size) in chi.iter().zip(psi).zip(&sizes) {
                    sum.add_scaled(size, &x.try_mul(&y.complex_conjugate())?);
                }
                let total = sum.finish()?;
                let expected = if i == j { order.clone() } else { BigRational::zero() };
                if total != QuadraticNumber::from_rational(expected) {
                    return Err(Error::verification(
                        "row orthogonality",
                        format!("<{}, {}> = {total}", self.rows[i], self.rows[j]),
                    ));
                }
            }
        }

        for a in 0..self.cols.len() {
            for b in a..self.cols.len() {
                let mut sum = QuadraticSum::new();
                for row in &self.values {
                    sum.add(&row[a].try_mul(&row[b].complex_conjugate())?);
                }
                let total = sum.finish()?;
                let expected = if a == b {
                    &order / &sizes[a]
                } else {
                    BigRational::zero()
                };
                if total != QuadraticNumber::from_rational(expected) {
                    return Err(Error::verification(
                        "column orthogonality",
                        format!("columns {} and {}: {total}", self.cols[a].label(), self.cols[b].label()),
                    ));
                }
            }
        }

        let dims: BigUint = self.rows.iter().map(|r| r.dimension().pow(2)).sum();
        if dims != self.group_order() {
            return Err(Error::verification("sum of squared dimensions", dims.to_string()));
        }
        Ok(())
    }

    pub fn export(&self) -> CharacterTableExport {
        CharacterTableExport {
            n: self.n,
            characters: self.rows.iter().map(|r| r.to_string()).collect(),
            classes: self.cols.iter().map(ClassSummary::from).collect(),
            values: self.values.clone(),
        }
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec![format!("Alt({})", self.n)];
        header.extend(self.cols.iter().map(|c| c.label()));
        grid.push(header);
        let mut sizes = vec!["size".to_string()];
        sizes.extend(self.cols.iter().map(|c| c.size.to_string()));
        grid.push(sizes);
        for (label, row) in self.rows.iter().zip(&self.values) {
            let mut line = vec![label.to_string()];
            line.extend(row.iter().map(|v| v.to_string()));
            grid.push(line);
        }
        let width = (0..grid[0].len())
            .map(|k| grid.iter().map(|r| r[k].chars().count()).max().unwrap_or(0))
            .collect::<Vec<_>>();
        let mut out = String::new();
        for row in &grid {
            let cells: Vec<String> = row.iter().zip(&width).map(|(cell, &w)| format!("{cell:>w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// `χ(S)` for an arbitrary subset of `Alt(n)`, computed by bucketing the
/// members of `S` by class.
pub fn character_sum_over_set(chi: &AltCharLabel, set: &[Permutation]) -> Result<QuadraticNumber> {
    let n = chi.degree();
    let classes = conjugacy_classes(n, GroupKind::Alt)?;
    let mut counts: HashMap<(CycleType, SplitTag), usize> = HashMap::new();
    for p in set {
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: n,
            });
        }
        if !p.is_even() {
            return Err(Error::domain(format!("{p} is not in Alt({n})")));
        }
        *counts.entry((p.cycle_type(), split_tag_of(p)?)).or_default() += 1;
    }
    let mut sum = QuadraticSum::new();
    for class in &classes {
        if let Some(&k) = counts.get(&(class.cycle_type.clone(), class.split_tag)) {
            sum.add_scaled(
                &BigRational::from_integer(BigInt::from(k)),
                &alt_character_value(chi, class)?,
            );
        }
    }
    sum.finish()
}

/// One `λ` whose character takes the value −2 on two half-length cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinusTwoCase {
    pub partition: Partition,
    pub shape: Shape,
    pub symmetric: bool,
    pub dimension: String,
    pub exceeds_2n_minus_2: bool,
}

/// Scan of `χ^λ(σ)` for `σ` a product of two disjoint `n/2`-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLayerReport {
    pub n: usize,
    pub partitions_scanned: usize,
    /// Counts of each value in `{−2, −1, 0, 1, 2}`.
    pub value_counts: Vec<(i64, usize)>,
    pub minus_two: Vec<MinusTwoCase>,
    pub violations: Vec<String>,
}

impl TwoLayerReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn two_layer_minus_two_classification(n: usize) -> Result<TwoLayerReport> {
    if !n.is_multiple_of(2) || !(8..=14).contains(&n) {
        return Err(Error::domain("classification scan needs even n with 8 <= n <= 14"));
    }
    let sigma = CycleType::new(vec![n / 2, n / 2])?;
    let mut counts: HashMap<i64, usize> = HashMap::new();
    let mut minus_two = Vec::new();
    let mut violations = Vec::new();
    let partitions = Partition::all(n);
    for lambda in &partitions {
        let value = mn_character(lambda, &sigma)?;
        let v = value.to_i64().filter(|v| v.abs() <= 2);
        let Some(v) = v else {
            violations.push(format!("χ^{lambda}(σ) = {value} lies outside {{0, ±1, ±2}}"));
            continue;
        };
        *counts.entry(v).or_default() += 1;
        if v == 2 && lambda.len() == 2 && lambda.part(0) != lambda.part(1) {
            violations.push(format!("two-row {lambda} with distinct rows has value 2"));
        }
        if v == -2 {
            let shape = lambda.classify_shape();
            let symmetric = lambda.is_symmetric();
            let admissible = shape == Shape::TwoLayerHook || (shape == Shape::NearHook && symmetric);
            if !admissible {
                violations.push(format!("χ^{lambda}(σ) = −2 but {lambda} is {shape:?}"));
            }
            let exceeds = if admissible {
                lambda.dimension_bound_check()?
            } else {
                false
            };
            if admissible && !exceeds {
                violations.push(format!("dim {lambda} does not exceed 2n − 2"));
            }
            minus_two.push(MinusTwoCase {
                partition: lambda.clone(),
                shape,
                symmetric,
                dimension: lambda.specht_dimension().to_string(),
                exceeds_2n_minus_2: exceeds,
            });
        }
    }
    let half_rows = Partition::new(vec![n / 2, n / 2])?;
    if mn_character(&half_rows, &sigma)? != BigInt::from(2) {
        violations.push(format!("χ^{half_rows}(σ) ≠ 2"));
    }
    let mut value_counts: Vec<(i64, usize)> = counts.into_iter().collect();
    value_counts.sort_unstable();
    Ok(TwoLayerReport {
        n,
        partitions_scanned: partitions.len(),
        value_counts,
        minus_two,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::factorial;
    use crate::permgroup::canonical_split_representative;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn t(lengths: &[usize]) -> CycleType {
        CycleType::new(lengths.to_vec()).unwrap()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    fn class(n: usize, lengths: &[usize], tag: SplitTag) -> ConjugacyClass {
        conjugacy_classes(n, GroupKind::Alt)
            .unwrap()
            .into_iter()
            .find(|c| c.cycle_type == t(lengths) && c.split_tag == tag)
            .unwrap()
    }

    #[test]
    fn mn_examples() {
        for n in 2..=10 {
            for a in 1..=n {
                let mut hook = vec![a];
                hook.extend(std::iter::repeat_n(1, n - a));
                let expected = if (n - a) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&p(&hook), &t(&[n])).unwrap(), BigInt::from(expected));
            }
            for lambda in Partition::all(n) {
                if lambda.classify_shape() != Shape::Hook {
                    assert!(mn_character(&lambda, &t(&[n])).unwrap().is_zero());
                }
            }
        }
        for n in [4usize, 6, 8, 10, 12] {
            assert_eq!(
                mn_character(&p(&[n / 2, n / 2]), &t(&[n / 2, n / 2])).unwrap(),
                BigInt::from(2)
            );
        }
        // [λ₁, λ₁, 2, …, 2]
        assert_eq!(mn_character(&p(&[3, 3, 2]), &t(&[4, 4])).unwrap(), BigInt::from(2));
        assert_eq!(mn_character(&p(&[4, 4, 2, 2]), &t(&[6, 6])).unwrap(), BigInt::from(2));
        assert_eq!(mn_character(&p(&[3, 2]), &t(&[2, 2, 1])).unwrap(), BigInt::from(1));
        assert!(mn_character(&p(&[3, 2]), &t(&[4])).is_err());
    }

    #[test]
    fn mn_on_identity_is_dimension() {
        for n in 0..=10 {
            let id = CycleType(Partition::column(n));
            for lambda in Partition::all(n) {
                assert_eq!(
                    mn_character(&lambda, &id).unwrap(),
                    BigInt::from(lambda.specht_dimension())
                );
            }
        }
    }

    #[test]
    fn mn_conjugate_twist() {
        for n in 1..=8 {
            for lambda in Partition::all(n) {
                for ct in crate::permgroup::cycle_types(n) {
                    let a = mn_character(&lambda, &ct).unwrap();
                    let b = mn_character(&lambda.conjugate(), &ct).unwrap() * ct.sign();
                    assert_eq!(a, b, "{lambda:?} {ct}");
                }
            }
        }
    }

    #[test]
    fn alt5_values() {
        let plus = AltCharLabel::split_plus(p(&[3, 1, 1])).unwrap();
        let five_prime = class(5, &[5], SplitTag::Prime);
        let five_second = class(5, &[5], SplitTag::DoublePrime);
        let golden = QuadraticNumber::new(half(), half(), 5).unwrap();
        assert_eq!(alt_character_value(&plus, &five_prime).unwrap(), golden);
        assert_eq!(
            alt_character_value(&plus, &five_second).unwrap(),
            golden.galois_conjugate()
        );

        let standard = AltCharLabel::restricted(p(&[4, 1])).unwrap();
        assert_eq!(standard, AltCharLabel::standard(5));
        assert_eq!(
            alt_character_value(&standard, &five_prime).unwrap(),
            QuadraticNumber::from_integer(-1)
        );
        assert_eq!(
            alt_character_value(&standard, &five_second).unwrap(),
            QuadraticNumber::from_integer(-1)
        );

        let three = class(5, &[3, 1, 1], SplitTag::NonSplit);
        let sym = mn_character(&p(&[3, 1, 1]), &t(&[3, 1, 1])).unwrap();
        assert_eq!(
            alt_character_value(&plus, &three).unwrap(),
            QuadraticNumber::from_rational(BigRational::new(sym, 2.into()))
        );
    }

    #[test]
    fn identity_values_are_positive_dimensions() {
        for n in 3..=9 {
            let id = class(n, &vec![1; n], SplitTag::NonSplit);
            for chi in alt_irreducible_labels(n) {
                let v = alt_character_value(&chi, &id).unwrap();
                assert_eq!(v, QuadraticNumber::from_integer(BigInt::from(chi.dimension())));
                assert!(!chi.dimension().is_zero());
            }
        }
    }

    #[test]
    fn alt5_table_shape() {
        let table = alt_character_table(5).unwrap();
        let mut dims: Vec<u64> = table.rows.iter().map(|r| r.dimension().to_u64().unwrap()).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 3, 3, 4, 5]);
        let a3 = alt_character_table(3).unwrap();
        assert_eq!(a3.rows.len(), 3);
        assert!(a3.rows.iter().all(|r| r.dimension().is_one()));
    }

    #[test]
    fn one_split_pair_per_symmetric_partition() {
        for n in 3..=12 {
            let labels = alt_irreducible_labels(n);
            let symmetric = Partition::all(n).into_iter().filter(|l| l.is_symmetric()).count();
            let plus = labels
                .iter()
                .filter(|l| matches!(l, AltCharLabel::SplitPlus(_)))
                .count();
            let minus = labels
                .iter()
                .filter(|l| matches!(l, AltCharLabel::SplitMinus(_)))
                .count();
            assert_eq!((plus, minus), (symmetric, symmetric));
            let classes = conjugacy_classes(n, GroupKind::Alt).unwrap();
            assert_eq!(labels.len(), classes.len(), "n = {n}");
        }
    }

    #[test]
    fn tables_are_orthogonal() {
        for n in 3..=8 {
            alt_character_table(n).unwrap().check_orthogonality().unwrap();
        }
    }

    #[test]
    fn galois_conjugation_swaps_split_rows() {
        for n in 3..=8 {
            let table = alt_character_table(n).unwrap();
            for (row, label) in table.rows.iter().enumerate() {
                let twin = table.row_of(&label.galois_twin()).unwrap();
                for col in 0..table.cols.len() {
                    assert_eq!(table.values[row][col].galois_conjugate(), table.values[twin][col]);
                }
            }
        }
    }

    #[test]
    fn split_values_have_rational_trace_and_norm() {
        for n in 3..=12 {
            for ct in crate::permgroup::cycle_types(n) {
                if !ct.is_even() || !ct.is_split().unwrap() {
                    continue;
                }
                let (x, y) = split_pair_values(&ct).unwrap();
                let (r, m) = ct.split_parameters().unwrap();
                assert_eq!(r, ct.lengths().len());
                let eps = if m % 2 == 0 { 1i64 } else { -1 };
                let product: i64 = ct.lengths().iter().map(|&q| q as i64).product();
                assert_eq!(&x + &y, QuadraticNumber::from_integer(eps));
                // (z − x)(z − y) = z² − εz + (1 − ε·q₁⋯q_r)/4
                let norm = BigRational::new(BigInt::from(1 - eps * product), BigInt::from(4));
                assert_eq!(&x * &y, QuadraticNumber::from_rational(norm));
            }
        }
    }

    #[test]
    fn character_sums_over_sets() {
        let trivial = AltCharLabel::trivial(5);
        let set: Vec<Permutation> = ["()", "(1 2 3)", "(1 2)(3 4)"]
            .iter()
            .map(|s| Permutation::parse_cycles(5, s).unwrap())
            .collect();
        assert_eq!(
            character_sum_over_set(&trivial, &set).unwrap(),
            QuadraticNumber::from_integer(3)
        );
        let plus = AltCharLabel::split_plus(p(&[3, 1, 1])).unwrap();
        let id = vec![Permutation::identity(5)];
        assert_eq!(
            character_sum_over_set(&plus, &id).unwrap(),
            QuadraticNumber::from_integer(3)
        );

        let five = t(&[5]);
        let c1 = canonical_split_representative(&five, SplitTag::Prime).unwrap();
        let table = alt_character_table(5).unwrap();
        let mixed = vec![Permutation::identity(5), c1.clone(), c1.inverse()];
        assert_eq!(
            table.sum_over_set(&plus, &mixed).unwrap(),
            character_sum_over_set(&plus, &mixed).unwrap()
        );
        let odd = vec![Permutation::parse_cycles(5, "(1 2)").unwrap()];
        assert!(character_sum_over_set(&trivial, &odd).is_err());
    }

    #[test]
    fn two_layer_scan() {
        for n in [8, 10, 12, 14] {
            let report = two_layer_minus_two_classification(n).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
            assert!(report.value_counts.iter().all(|(v, _)| v.abs() <= 2));
        }
        let eight = two_layer_minus_two_classification(8).unwrap();
        assert_eq!(eight.partitions_scanned, 22);
        assert!(two_layer_minus_two_classification(9).is_err());
    }

    #[test]
    fn dimensions_through_factorials() {
        let table = alt_character_table(7).unwrap();
        let total: BigUint = table.rows.iter().map(|r| r.dimension().pow(2)).sum();
        assert_eq!(total, factorial(7) / 2u32);
    }

    #[test]
    fn labels_reject_wrong_shapes() {
        assert!(AltCharLabel::restricted(p(&[2, 1])).is_err());
        assert!(AltCharLabel::split_plus(p(&[3, 1])).is_err());
        assert_eq!(
            AltCharLabel::restricted(p(&[2, 1, 1])).unwrap(),
            AltCharLabel::standard(4)
        );
    }

    #[test]
    fn table_export() {
        let table = alt_character_table(4).unwrap();
        let json = serde_json::to_string(&table.export()).unwrap();
        let back: CharacterTableExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, table.export());
        assert!(table.to_text().lines().count() == table.rows.len() + 2);
        assert!(json.contains(r#""d":-3"#));
    }
}
