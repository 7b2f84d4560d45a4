//! The derangement graph of `Alt(n)`, its conjugacy-class scheme and the
//! eigenvalue bounds built on it.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{AltCharLabel, CharacterTable};
use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix, LdlCertificate, PsdVerdict};
use crate::partitions::factorial;
use crate::permgroup::{GroupKind, GroupTable, Permutation};
use crate::quadratic::{QuadraticNumber, QuadraticSum};

pub const MIN_GRAPH_DEGREE: usize = 4;
pub const MAX_GRAPH_DEGREE: usize = 8;
pub const MAX_SPECTRUM_DEGREE: usize = 9;
pub const MAX_PROJECTION_DEGREE: usize = 7;
pub const MAX_CHARPOLY_DEGREE: usize = 6;

const MAGIC: &[u8; 4] = b"EKRG";
const FORMAT_VERSION: u16 = 1;

/// `Γ(Alt(n))`: vertices are the elements of `Alt(n)` in table order, and
/// `π ~ σ` iff `πσ⁻¹` has no fixed point.
#[derive(Clone)]
pub struct DerangementGraph {
    table: GroupTable,
    words: usize,
    bits: Vec<u64>,
    valency: usize,
}

impl DerangementGraph {
    pub fn build(n: usize) -> Result<Self> {
        check_graph_degree(n)?;
        Ok(Self::from_table(GroupTable::new(n, GroupKind::Alt)?))
    }

    /// The derangement graph of an already enumerated group, `Sym(n)` or `Alt(n)`.
    pub fn from_table(table: GroupTable) -> Self {
        let order = table.order();
        let words = order.div_ceil(64);
        let derangements: Vec<&Permutation> = table
            .derangement_indices()
            .into_iter()
            .map(|i| table.element(i))
            .collect();
        let mut bits = vec![0u64; order * words];
        bits.par_chunks_mut(words.max(1)).enumerate().for_each(|(a, row)| {
            let pa = table.element(a);
            for d in &derangements {
                let b = table.index_of(&pa.compose(d)).expect("closed under composition");
                row[b / 64] |= 1 << (b % 64);
            }
        });
        DerangementGraph {
            valency: derangements.len(),
            table,
            words,
            bits,
        }
    }

    pub fn n(&self) -> usize {
        self.table.degree()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn vertex_count(&self) -> usize {
        self.table.order()
    }

    /// Number of derangements in the group, the expected valency.
    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.words..(a + 1) * self.words]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.vertex_count();
        (0..n).filter(move |&b| self.has_edge(a, b))
    }

    /// Flips the single arc `a → b`. Used to exercise [`DerangementGraph::validate`].
    pub fn toggle_arc(&mut self, a: usize, b: usize) {
        self.bits[a * self.words + b / 64] ^= 1 << (b % 64);
    }

    /// Checks every structural invariant, naming the first that fails.
    pub fn validate(&self) -> Result<()> {
        let v = self.vertex_count();
        if let Some(a) = (0..v).find(|&a| self.has_edge(a, a)) {
            return Err(Error::verification(
                "loopless",
                format!("vertex {} has a loop", self.table.element(a)),
            ));
        }
        let asym = (0..v)
            .into_par_iter()
            .find_first(|&a| (0..a).any(|b| self.has_edge(a, b) != self.has_edge(b, a)));
        if let Some(a) = asym {
            let b = (0..a)
                .find(|&b| self.has_edge(a, b) != self.has_edge(b, a))
                .expect("found above");
            return Err(Error::verification(
                "symmetric",
                format!(
                    "arc {} -> {} has no reverse",
                    self.table.element(a),
                    self.table.element(b)
                ),
            ));
        }
        if let Some(a) = (0..v).find(|&a| self.degree(a) != self.valency) {
            return Err(Error::verification(
                "regular",
                format!(
                    "vertex {} has degree {} not {}",
                    self.table.element(a),
                    self.degree(a),
                    self.valency
                ),
            ));
        }
        let bad = (0..v).into_par_iter().find_first(|&a| {
            let pa = self.table.element(a);
            (0..v).any(|b| self.has_edge(a, b) == pa.agrees_somewhere(self.table.element(b)))
        });
        if let Some(a) = bad {
            let pa = self.table.element(a);
            let b = (0..v)
                .find(|&b| self.has_edge(a, b) == pa.agrees_somewhere(self.table.element(b)))
                .expect("found above");
            return Err(Error::verification(
                "adjacency matches non-intersection",
                format!("{} and {}", pa, self.table.element(b)),
            ));
        }
        Ok(())
    }

    /// `Ok` if the vertices are pairwise non-adjacent, else the offending pair.
    pub fn check_independent(&self, set: &[usize]) -> Result<()> {
        for (k, &a) in set.iter().enumerate() {
            if let Some(&b) = set[k + 1..].iter().find(|&&b| self.has_edge(a, b)) {
                return Err(Error::verification(
                    "independent set",
                    format!("{} and {} are adjacent", self.table.element(a), self.table.element(b)),
                ));
            }
        }
        Ok(())
    }

    pub fn to_i64_matrix(&self) -> Vec<Vec<i64>> {
        let v = self.vertex_count();
        (0..v)
            .map(|a| (0..v).map(|b| i64::from(self.has_edge(a, b))).collect())
            .collect()
    }

    /// Graphviz rendering with vertices labelled in cycle notation.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph derangement_alt{} {{\n", self.n());
        for (i, p) in self.table.elements().iter().enumerate() {
            out.push_str(&format!("  {i} [label=\"{p}\"];\n"));
        }
        for a in 0..self.vertex_count() {
            for b in self.neighbors(a).filter(|&b| b > a) {
                out.push_str(&format!("  {a} -- {b};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Binary form: a 16-byte little-endian header (`EKRG`, version, `n`,
    /// vertex count) followed by adjacency rows packed LSB-first.
    pub fn write_binary(&self, mut w: impl Write) -> Result<()> {
        let v = self.vertex_count();
        let mut header = Vec::with_capacity(16);
        header.extend_from_slice(MAGIC);
        header.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        header.extend_from_slice(&(self.n() as u16).to_le_bytes());
        header.extend_from_slice(&(v as u64).to_le_bytes());
        w.write_all(&header)?;
        let row_bytes = v.div_ceil(8);
        for a in 0..v {
            let bytes: Vec<u8> = self
                .row(a)
                .iter()
                .flat_map(|x| x.to_le_bytes())
                .take(row_bytes)
                .collect();
            w.write_all(&bytes)?;
        }
        Ok(())
    }

    /// Reads the binary form. The result is not validated.
    pub fn read_binary(mut r: impl Read) -> Result<Self> {
        let mut header = [0u8; 16];
        r.read_exact(&mut header)?;
        if &header[..4] != MAGIC {
            return Err(Error::Parse("bad magic".into()));
        }
        let version = u16::from_le_bytes([header[4], header[5]]);
        if version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported version {version}")));
        }
        let n = u16::from_le_bytes([header[6], header[7]]) as usize;
        check_graph_degree(n).map_err(|_| Error::Parse(format!("degree {n} out of range")))?;
        let count = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes"));
        let table = GroupTable::new(n, GroupKind::Alt)?;
        if count != table.order() as u64 {
            return Err(Error::Parse(format!("vertex count {count} does not match Alt({n})")));
        }
        let v = table.order();
        let words = v.div_ceil(64);
        let row_bytes = v.div_ceil(8);
        let mut bits = vec![0u64; v * words];
        let mut buf = vec![0u8; row_bytes];
        for a in 0..v {
            r.read_exact(&mut buf)?;
            for (k, chunk) in buf.chunks(8).enumerate() {
                let mut word = [0u8; 8];
                word[..chunk.len()].copy_from_slice(chunk);
                bits[a * words + k] = u64::from_le_bytes(word);
            }
        }
        let valency = table.derangement_indices().len();
        Ok(DerangementGraph {
            table,
            words,
            bits,
            valency,
        })
    }
}

impl fmt::Debug for DerangementGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DerangementGraph(Alt({}), {} vertices, valency {})",
            self.n(),
            self.vertex_count(),
            self.valency
        )
    }
}

fn check_graph_degree(n: usize) -> Result<()> {
    if !(MIN_GRAPH_DEGREE..=MAX_GRAPH_DEGREE).contains(&n) {
        return Err(Error::Resource(format!(
            "explicit derangement graphs are built for {MIN_GRAPH_DEGREE} <= n <= {MAX_GRAPH_DEGREE}"
        )));
    }
    Ok(())
}

/// Eigenvalue `(1/χ(1)) Σ_{d ∈ D} χ(d)` of one irreducible character.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub character: AltCharLabel,
    pub dimension: BigUint,
    pub eigenvalue: QuadraticNumber,
}

/// The spectrum of `Γ(Alt(n))` derived from the character table.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub n: usize,
    pub valency: BigUint,
    pub per_character: Vec<SpectrumEntry>,
    /// Distinct eigenvalues, descending, with multiplicities.
    pub eigenvalues: Vec<(BigInt, BigUint)>,
}

impl Spectrum {
    pub fn least(&self) -> &BigInt {
        &self.eigenvalues.last().expect("nonempty spectrum").0
    }

    pub fn vertex_count(&self) -> BigUint {
        GroupKind::Alt.order(self.n)
    }

    /// `|V| / (1 − k/τ)`.
    pub fn ratio_bound(&self) -> BigRational {
        let v = BigRational::from_integer(BigInt::from(self.vertex_count()));
        let k = BigRational::from_integer(BigInt::from(self.valency.clone()));
        let tau = BigRational::from_integer(self.least().clone());
        v / (BigRational::one() - k / tau)
    }

    pub fn multiplicity_of(&self, theta: i64) -> BigUint {
        let theta = BigInt::from(theta);
        self.eigenvalues
            .iter()
            .find(|(t, _)| *t == theta)
            .map(|(_, m)| m.clone())
            .unwrap_or_default()
    }

    /// Roots for [`linalg::divide_out_roots`].
    pub fn as_roots(&self) -> Result<Vec<(BigInt, usize)>> {
        self.eigenvalues
            .iter()
            .map(|(t, m)| {
                m.to_usize()
                    .map(|m| (t.clone(), m))
                    .ok_or_else(|| Error::Resource("multiplicity overflows".into()))
            })
            .collect()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.eigenvalues.iter().map(|(t, m)| format!("{t}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Spectrum of `Γ(Alt(n))` from class sums over the derangement classes.
///
/// Each eigenvalue is asserted to be an integer, multiplicities to sum to
/// `n!/2` and the trace to vanish.
pub fn graph_spectrum(n: usize) -> Result<Spectrum> {
    if !(MIN_GRAPH_DEGREE..=MAX_SPECTRUM_DEGREE).contains(&n) {
        return Err(Error::domain(format!(
            "spectra are computed for {MIN_GRAPH_DEGREE} <= n <= {MAX_SPECTRUM_DEGREE}"
        )));
    }
    let table = CharacterTable::new(n)?;
    let counts: Vec<usize> = table
        .cols
        .iter()
        .map(|c| {
            if c.cycle_type.fixed_points() == 0 {
                crate::permgroup::biguint_to_usize(&c.size)
            } else {
                0
            }
        })
        .collect();
    let valency: BigUint = table
        .cols
        .iter()
        .filter(|c| c.cycle_type.fixed_points() == 0)
        .map(|c| c.size.clone())
        .sum();

    let mut per_character = Vec::new();
    let mut grouped: BTreeMap<BigInt, BigUint> = BTreeMap::new();
    for (row, label) in table.rows.iter().enumerate() {
        let dimension = label.dimension();
        let sum = table.sum_with_counts(row, &counts)?;
        let eigenvalue = sum.scale(&BigRational::new(BigInt::one(), BigInt::from(dimension.clone())));
        let integral = eigenvalue
            .to_rational()
            .filter(|r| r.is_integer())
            .ok_or_else(|| Error::verification("integral eigenvalue", format!("{label} gives {eigenvalue}")))?;
        *grouped.entry(integral.to_integer()).or_default() += dimension.pow(2);
        per_character.push(SpectrumEntry {
            character: label.clone(),
            dimension,
            eigenvalue,
        });
    }
    let eigenvalues: Vec<(BigInt, BigUint)> = grouped.into_iter().rev().collect();

    let total: BigUint = eigenvalues.iter().map(|(_, m)| m.clone()).sum();
    if total != GroupKind::Alt.order(n) {
        return Err(Error::verification("multiplicities sum to |Alt(n)|", total.to_string()));
    }
    let trace: BigInt = eigenvalues.iter().map(|(t, m)| t * BigInt::from(m.clone())).sum();
    if !trace.is_zero() {
        return Err(Error::verification("zero trace", trace.to_string()));
    }
    if eigenvalues[0].0 != BigInt::from(valency.clone()) {
        return Err(Error::verification(
            "valency is the largest eigenvalue",
            eigenvalues[0].0.to_string(),
        ));
    }
    Ok(Spectrum {
        n,
        valency,
        per_character,
        eigenvalues,
    })
}

/// Outcome of comparing the character-derived spectrum with the explicit
/// adjacency matrix.
#[derive(Clone, Debug)]
pub struct CharpolyCrossCheck {
    pub n: usize,
    pub vertices: usize,
    pub valency: usize,
    pub spectrum: Spectrum,
    pub characteristic_polynomial: linalg::IntPoly,
}

/// Divides `det(xI − A(Γ))` by `Π (x − θ)^m` over the character spectrum and
/// requires the quotient to be exactly 1.
pub fn spectrum_charpoly_crosscheck(n: usize) -> Result<CharpolyCrossCheck> {
    if !(MIN_GRAPH_DEGREE..=MAX_CHARPOLY_DEGREE).contains(&n) {
        return Err(Error::Resource(format!(
            "characteristic polynomials are computed for {MIN_GRAPH_DEGREE} <= n <= {MAX_CHARPOLY_DEGREE}"
        )));
    }
    let graph = DerangementGraph::build(n)?;
    graph.validate()?;
    let spectrum = graph_spectrum(n)?;
    let poly = linalg::charpoly_integer(&graph.to_i64_matrix())?;
    let quotient = linalg::divide_out_roots(&poly, &spectrum.as_roots()?)?;
    if quotient != vec![BigInt::one()] {
        return Err(Error::verification(
            "characteristic polynomial matches spectrum",
            format!("quotient of degree {}", quotient.len().saturating_sub(1)),
        ));
    }
    Ok(CharpolyCrossCheck {
        n,
        vertices: graph.vertex_count(),
        valency: graph.valency(),
        spectrum,
        characteristic_polynomial: poly,
    })
}

/// The conjugacy-class scheme of `Alt(n)`: group table plus character table,
/// sharing one class order.
pub struct ClassScheme {
    table: GroupTable,
    chars: CharacterTable,
}

impl ClassScheme {
    pub fn new(n: usize) -> Result<Self> {
        if !(MIN_GRAPH_DEGREE..=MAX_GRAPH_DEGREE).contains(&n) {
            return Err(Error::Resource(format!(
                "class schemes are enumerated for {MIN_GRAPH_DEGREE} <= n <= {MAX_GRAPH_DEGREE}"
            )));
        }
        let table = GroupTable::new(n, GroupKind::Alt)?;
        let chars = CharacterTable::new(n)?;
        debug_assert!(table
            .classes()
            .iter()
            .zip(&chars.cols)
            .all(|(a, b)| a.cycle_type == b.cycle_type && a.split_tag == b.split_tag));
        Ok(ClassScheme { table, chars })
    }

    pub fn n(&self) -> usize {
        self.table.degree()
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn characters(&self) -> &CharacterTable {
        &self.chars
    }

    fn row_of(&self, chi: &AltCharLabel) -> Result<usize> {
        self.chars
            .row_of(chi)
            .ok_or_else(|| Error::domain(format!("{chi} is not a character of Alt({})", self.n())))
    }

    /// Per-row class buckets `B[π][c] = Σ_{σ : π⁻¹σ ∈ c} v_σ`, for `v`
    /// given as integers over a common denominator.
    fn buckets(&self, v: &[i64]) -> Vec<Vec<i128>> {
        let classes = self.chars.cols.len();
        let support: Vec<usize> = (0..v.len()).filter(|&b| v[b] != 0).collect();
        (0..self.table.order())
            .into_par_iter()
            .map(|a| {
                let mut bucket = vec![0i128; classes];
                for &b in &support {
                    bucket[self.table.class_index(self.table.quotient_index(a, b))] += v[b] as i128;
                }
                bucket
            })
            .collect()
    }

    fn combine(&self, row: usize, buckets: &[Vec<i128>], denominator: &BigInt) -> Result<Vec<QuadraticNumber>> {
        let label = &self.chars.rows[row];
        let scale = BigRational::new(
            BigInt::from(label.dimension()),
            BigInt::from(self.table.order()) * denominator,
        );
        buckets
            .par_iter()
            .map(|bucket| {
                let mut sum = QuadraticSum::new();
                for (value, &count) in self.chars.values[row].iter().zip(bucket) {
                    if count != 0 {
                        sum.add_scaled(&BigRational::from_integer(BigInt::from(count)), value);
                    }
                }
                Ok(sum.finish()?.scale(&scale))
            })
            .collect()
    }

    fn check_vector(&self, len: usize) -> Result<()> {
        if self.n() > MAX_PROJECTION_DEGREE {
            return Err(Error::Resource(format!(
                "projections are streamed for n <= {MAX_PROJECTION_DEGREE}"
            )));
        }
        if len != self.table.order() {
            return Err(Error::DegreeMismatch {
                left: len,
                right: self.table.order(),
            });
        }
        Ok(())
    }

    /// `E_χ v` with `(E_χ)_{π,σ} = χ(1)/|G| · χ(π⁻¹σ)`, streamed row by row.
    pub fn project(&self, chi: &AltCharLabel, v: &[BigRational]) -> Result<Vec<QuadraticNumber>> {
        self.check_vector(v.len())?;
        let row = self.row_of(chi)?;
        let (ints, denominator) = common_denominator(v)?;
        self.combine(row, &self.buckets(&ints), &denominator)
    }

    /// `E_χ v` for every irreducible `χ`, sharing one bucketing pass.
    pub fn project_all(&self, v: &[BigRational]) -> Result<Vec<(AltCharLabel, Vec<QuadraticNumber>)>> {
        self.check_vector(v.len())?;
        let (ints, denominator) = common_denominator(v)?;
        let buckets = self.buckets(&ints);
        (0..self.chars.rows.len())
            .map(|row| Ok((self.chars.rows[row].clone(), self.combine(row, &buckets, &denominator)?)))
            .collect()
    }

    /// `E_χ v` for `v` with entries in a quadratic field, by linearity over
    /// its rational and radical parts.
    pub fn project_quadratic(&self, chi: &AltCharLabel, v: &[QuadraticNumber]) -> Result<Vec<QuadraticNumber>> {
        let d = v.iter().map(|x| x.radicand()).find(|&d| d != 1).unwrap_or(1);
        if v.iter().any(|x| x.radicand() != 1 && x.radicand() != d) {
            return Err(Error::domain("vector mixes quadratic fields"));
        }
        let rational: Vec<BigRational> = v.iter().map(|x| x.rational_part().clone()).collect();
        let radical: Vec<BigRational> = v.iter().map(|x| x.radical_coefficient().clone()).collect();
        let a = self.project(chi, &rational)?;
        if d == 1 {
            return Ok(a);
        }
        let b = self.project(chi, &radical)?;
        let root = QuadraticNumber::sqrt_of(d)?;
        a.iter().zip(&b).map(|(x, y)| x.try_add(&y.try_mul(&root)?)).collect()
    }

    /// `Σ_χ E_χ v == v`.
    pub fn check_resolution_of_identity(&self, v: &[BigRational]) -> Result<()> {
        let projections = self.project_all(v)?;
        for (i, target) in v.iter().enumerate() {
            let mut sum = QuadraticSum::new();
            for (_, p) in &projections {
                sum.add(&p[i]);
            }
            let total = sum.finish()?;
            if total != QuadraticNumber::from_rational(target.clone()) {
                return Err(Error::verification(
                    "sum of idempotents is the identity",
                    format!(
                        "entry {} of Σ E_χ v is {total}, expected {target}",
                        self.table.element(i)
                    ),
                ));
            }
        }
        Ok(())
    }

    /// `E_χ (E_χ v) == E_χ v`.
    pub fn check_idempotent(&self, chi: &AltCharLabel, v: &[BigRational]) -> Result<()> {
        let once = self.project(chi, v)?;
        let twice = self.project_quadratic(chi, &once)?;
        if let Some(i) = (0..once.len()).find(|&i| once[i] != twice[i]) {
            return Err(Error::verification(
                "idempotent projection",
                format!("{chi} at {}: {} then {}", self.table.element(i), once[i], twice[i]),
            ));
        }
        Ok(())
    }

    /// Both resolution checks on `trials` random integer vectors.
    pub fn check_random_vectors(&self, trials: usize, seed: u64) -> Result<()> {
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..trials {
            let v: Vec<BigRational> = (0..self.table.order())
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
                .collect();
            self.check_resolution_of_identity(&v)?;
            for chi in &self.chars.rows {
                self.check_idempotent(chi, &v)?;
            }
        }
        Ok(())
    }

    /// Number of ordered pairs `(π, σ)` of `set` with `π⁻¹σ` in each class.
    pub fn pair_class_counts(&self, set: &[usize]) -> Vec<u64> {
        let classes = self.chars.cols.len();
        set.par_iter()
            .map(|&a| {
                let mut counts = vec![0u64; classes];
                for &b in set {
                    counts[self.table.class_index(self.table.quotient_index(a, b))] += 1;
                }
                counts
            })
            .reduce(
                || vec![0u64; classes],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(p, q)| *p += q);
                    x
                },
            )
    }

    /// `v_Sᵀ E_χ v_S = ‖E_χ v_S‖²` from pair class counts.
    pub fn quadratic_form(&self, chi: &AltCharLabel, counts: &[u64]) -> Result<QuadraticNumber> {
        let row = self.row_of(chi)?;
        let mut sum = QuadraticSum::new();
        for (value, &c) in self.chars.values[row].iter().zip(counts) {
            if c > 0 {
                sum.add_scaled(&BigRational::from_integer(BigInt::from(c)), value);
            }
        }
        let scale = BigRational::new(BigInt::from(chi.dimension()), BigInt::from(self.table.order()));
        Ok(sum.finish()?.scale(&scale))
    }

    pub fn indices_of(&self, set: &[Permutation]) -> Result<Vec<usize>> {
        set.iter()
            .map(|p| {
                self.table
                    .index_of(p)
                    .ok_or_else(|| Error::domain(format!("{p} is not an element of Alt({})", self.n())))
            })
            .collect()
    }
}

/// Integers `k_i` and `L > 0` with `v_i = k_i / L`.
fn common_denominator(v: &[BigRational]) -> Result<(Vec<i64>, BigInt)> {
    use num_integer::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v
        .iter()
        .map(|x| {
            (x.numer() * (&lcm / x.denom()))
                .to_i64()
                .filter(|k| k.unsigned_abs() < 1 << 40)
                .ok_or_else(|| Error::Resource("vector entries too large to stream".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ints, lcm))
}

/// Quadratic forms of one character against the clique and the coclique.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterForms {
    pub character: AltCharLabel,
    pub clique_form: QuadraticNumber,
    pub coclique_form: QuadraticNumber,
}

impl CharacterForms {
    pub fn product_vanishes(&self) -> bool {
        self.clique_form.is_zero() || self.coclique_form.is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CliqueCocliqueReport {
    pub n: usize,
    pub clique_size: usize,
    pub coclique_size: usize,
    pub group_order: usize,
    pub equality: bool,
    /// Non-trivial characters, filled only at equality.
    pub forms: Vec<CharacterForms>,
}

impl CliqueCocliqueReport {
    pub fn passed(&self) -> bool {
        self.clique_size * self.coclique_size <= self.group_order
            && (!self.equality || self.forms.iter().all(CharacterForms::product_vanishes))
    }
}

fn check_members(n: usize, set: &[Permutation], what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for p in set {
        if p.degree() != n {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: n,
            });
        }
        if !p.is_even() {
            return Err(Error::domain(format!("{what} member {p} is odd")));
        }
        if !seen.insert(p) {
            return Err(Error::domain(format!("{what} repeats {p}")));
        }
    }
    Ok(())
}

/// Verifies that `clique` is a clique and `coclique` is independent in
/// `Γ(Alt(n))`, that `|C||S| ≤ n!/2`, and at equality that every
/// non-trivial `χ` has `(v_Cᵀ E_χ v_C)(v_Sᵀ E_χ v_S) = 0`.
pub fn clique_coclique_check(
    clique: &[Permutation],
    coclique: &[Permutation],
    n: usize,
) -> Result<CliqueCocliqueReport> {
    check_members(n, clique, "clique")?;
    check_members(n, coclique, "coclique")?;
    for (k, a) in clique.iter().enumerate() {
        if let Some(b) = clique[k + 1..].iter().find(|b| a.agrees_somewhere(b)) {
            return Err(Error::verification("clique", format!("{a} and {b} intersect")));
        }
    }
    let witness = coclique.par_iter().enumerate().find_map_first(|(k, a)| {
        coclique[k + 1..]
            .iter()
            .find(|b| !a.agrees_somewhere(b))
            .map(|b| (a.clone(), b.clone()))
    });
    if let Some((a, b)) = witness {
        return Err(Error::verification(
            "independent set",
            format!("{a} and {b} do not intersect"),
        ));
    }

    let group_order = crate::permgroup::small_factorial(n) / 2;
    let product = clique.len() * coclique.len();
    if product > group_order {
        return Err(Error::verification(
            "clique-coclique bound",
            format!("{} · {} exceeds {group_order}", clique.len(), coclique.len()),
        ));
    }
    let equality = product == group_order;
    let mut forms = Vec::new();
    if equality {
        let scheme = ClassScheme::new(n)?;
        let clique_counts = scheme.pair_class_counts(&scheme.indices_of(clique)?);
        let coclique_counts = scheme.pair_class_counts(&scheme.indices_of(coclique)?);
        for chi in scheme.characters().rows.iter().filter(|c| !c.is_trivial()) {
            forms.push(CharacterForms {
                character: chi.clone(),
                clique_form: scheme.quadratic_form(chi, &clique_counts)?,
                coclique_form: scheme.quadratic_form(chi, &coclique_counts)?,
            });
        }
    }
    Ok(CliqueCocliqueReport {
        n,
        clique_size: clique.len(),
        coclique_size: coclique.len(),
        group_order,
        equality,
        forms,
    })
}

/// A small simple graph held as a dense adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGraph {
    adj: Vec<Vec<bool>>,
    labels: Vec<String>,
}

impl SmallGraph {
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        SmallGraph {
            adj: vec![vec![false; n]; n],
            labels,
        }
    }

    pub fn unlabelled(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::unlabelled(n);
        for a in 0..n {
            for b in 0..a {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not allowed");
        self.adj[a][b] = true;
        self.adj[b][a] = true;
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a][b]
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        (0..self.vertex_count()).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn to_i64_matrix(&self) -> Vec<Vec<i64>> {
        self.adj
            .iter()
            .map(|r| r.iter().map(|&x| i64::from(x)).collect())
            .collect()
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_integers(self.vertex_count(), self.vertex_count(), |i, j| {
            i64::from(self.adj[i][j])
        })
    }

    pub fn least_eigenvalue(&self) -> Result<Option<i64>> {
        linalg::least_integer_eigenvalue(&self.to_i64_matrix())
    }
}

/// Certified lower bound on the least eigenvalue from an edge-uniform
/// clique cover.
#[derive(Clone, Debug)]
pub struct CoverBound {
    pub valency: usize,
    pub clique_size: usize,
    pub cover_size: usize,
    /// Cliques through each edge.
    pub edge_multiplicity: usize,
    /// Cliques through each vertex.
    pub vertex_multiplicity: usize,
    /// `−k/(w − 1)`.
    pub bound: BigRational,
    /// `LDLᵀ` certificate for `A + (k/(w − 1))·I ⪰ 0`.
    pub certificate: LdlCertificate,
    pub exact_least_eigenvalue: Option<i64>,
}

pub fn clique_cover_eigen_bound(g: &SmallGraph, cover: &[Vec<usize>]) -> Result<CoverBound> {
    let v = g.vertex_count();
    if v == 0 || cover.is_empty() {
        return Err(Error::domain("empty graph or cover"));
    }
    let k = g
        .regular_degree()
        .ok_or_else(|| Error::verification("regular graph", "degrees differ"))?;
    let w = cover[0].len();
    if w < 2 {
        return Err(Error::domain("cover cliques need at least two vertices"));
    }
    let mut edge_counts = vec![vec![0usize; v]; v];
    let mut vertex_counts = vec![0usize; v];
    for clique in cover {
        if clique.len() != w {
            return Err(Error::verification(
                "equal clique sizes",
                format!("found sizes {w} and {}", clique.len()),
            ));
        }
        for (i, &a) in clique.iter().enumerate() {
            vertex_counts[a] += 1;
            for &b in &clique[i + 1..] {
                if !g.has_edge(a, b) {
                    return Err(Error::verification(
                        "cover consists of cliques",
                        format!("{} and {} are not adjacent", g.label(a), g.label(b)),
                    ));
                }
                edge_counts[a][b] += 1;
                edge_counts[b][a] += 1;
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..v)
        .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
        .filter(|&(a, b)| g.has_edge(a, b))
        .collect();
    let y = edges.first().map_or(0, |&(a, b)| edge_counts[a][b]);
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| edge_counts[a][b] != y) {
        return Err(Error::verification(
            "edge-uniform cover",
            format!(
                "edge {} -- {} lies in {} cliques, expected {y}",
                g.label(a),
                g.label(b),
                edge_counts[a][b]
            ),
        ));
    }
    if y == 0 {
        return Err(Error::verification("edge-uniform cover", "no edge is covered"));
    }
    if !(y * k).is_multiple_of(w - 1) {
        return Err(Error::verification(
            "vertex multiplicity",
            format!("{y}·{k}/({w} − 1) is not an integer"),
        ));
    }
    let per_vertex = y * k / (w - 1);
    if let Some(a) = (0..v).find(|&a| vertex_counts[a] != per_vertex) {
        return Err(Error::verification(
            "vertex multiplicity",
            format!(
                "vertex {} lies in {} cliques, expected {per_vertex}",
                g.label(a),
                vertex_counts[a]
            ),
        ));
    }
    let shift = BigRational::new(BigInt::from(k), BigInt::from(w - 1));
    let shifted = g.to_matrix().add_scaled(&shift, &ExactMatrix::identity(v))?;
    let certificate = match shifted.ldl_psd()? {
        PsdVerdict::Psd(cert) => cert,
        PsdVerdict::NotPsd(witness) => {
            return Err(Error::verification(
                "A + (k/(w − 1))·I is positive semidefinite",
                format!("witness vector gives {}", witness.value),
            ))
        }
    };
    if !certificate.verify(&shifted) {
        return Err(Error::verification(
            "LDL certificate",
            "L D Lᵀ does not reproduce the matrix",
        ));
    }
    Ok(CoverBound {
        valency: k,
        clique_size: w,
        cover_size: cover.len(),
        edge_multiplicity: y,
        vertex_multiplicity: per_vertex,
        bound: -shift,
        certificate,
        exact_least_eigenvalue: g.least_eigenvalue()?,
    })
}

/// `(n − 1)!/2`, the size of a point-stabiliser coset in `Alt(n)`.
pub fn stabiliser_size(n: usize) -> BigUint {
    factorial(n - 1) / 2u32
}

/// Whether `|V|/(1 − k/τ)` equals `(n − 1)!/2`.
pub fn ratio_bound_is_tight(spectrum: &Spectrum) -> bool {
    let target = BigRational::from_integer(BigInt::from(stabiliser_size(spectrum.n)));
    spectrum.least().is_negative() && spectrum.ratio_bound() == target
}
