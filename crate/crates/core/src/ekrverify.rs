//! Step-by-step verification that maximum intersecting families in `Alt(n)`
//! are cosets of point stabilisers: the standard-module basis, the block
//! system `Ā`, the rank of `M`, the pair graph `X`, reconstruction of a
//! family from its characteristic vector, and exhaustive enumeration.

use std::collections::{BTreeMap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{integer_rank, ExactMatrix, PsdVerdict, Solution};
use crate::permgroup::{small_factorial, GroupKind, GroupTable, Permutation};
use crate::scheme::{clique_cover_eigen_bound, ClassScheme, DerangementGraph, SmallGraph};

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn fact(n: usize) -> i64 {
    small_factorial(n) as i64
}

fn check_range(n: usize, lo: usize, hi: usize, what: &str) -> Result<()> {
    if !(lo..=hi).contains(&n) {
        return Err(Error::domain(format!("{what} needs {lo} <= n <= {hi}")));
    }
    Ok(())
}

/// How two ordered pairs `(i, j)` and `(k, l)` meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairRelation {
    Same,
    /// `i = l` and `j = k`.
    Reversed,
    /// `i = k`, `j ≠ l`.
    SameTail,
    /// `j = l`, `i ≠ k`.
    SameHead,
    /// `i = l`, `j ≠ k`: the path `k → i → j`.
    ChainIntoFirst,
    /// `j = k`, `i ≠ l`: the path `i → j → l`.
    ChainOutOfFirst,
    Disjoint,
}

impl PairRelation {
    pub fn of(a: (usize, usize), b: (usize, usize)) -> Self {
        let ((i, j), (k, l)) = (a, b);
        if a == b {
            PairRelation::Same
        } else if i == l && j == k {
            PairRelation::Reversed
        } else if i == k {
            PairRelation::SameTail
        } else if j == l {
            PairRelation::SameHead
        } else if i == l {
            PairRelation::ChainIntoFirst
        } else if j == k {
            PairRelation::ChainOutOfFirst
        } else {
            PairRelation::Disjoint
        }
    }

    /// Adjacency in the pair graph.
    pub fn is_adjacent(self) -> bool {
        matches!(
            self,
            PairRelation::Disjoint | PairRelation::ChainIntoFirst | PairRelation::ChainOutOfFirst
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            PairRelation::Same => "(i,j) = (k,l)",
            PairRelation::Reversed => "i = l and j = k",
            PairRelation::SameTail => "i = k and j != l",
            PairRelation::SameHead => "j = l and i != k",
            PairRelation::ChainIntoFirst => "i = l and j != k",
            PairRelation::ChainOutOfFirst => "j = k and i != l",
            PairRelation::Disjoint => "{i,j} and {k,l} disjoint",
        }
    }
}

/// Ordered pairs of distinct points of `{1, …, n − 1}` in lexicographic order.
pub fn off_diagonal_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n)
        .flat_map(|i| (1..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect()
}

/// The graph `X` on ordered pairs of distinct points of `{1, …, n − 1}`.
#[derive(Clone, Debug)]
pub struct PairGraph {
    pub n: usize,
    pub vertices: Vec<(usize, usize)>,
    pub graph: SmallGraph,
}

impl PairGraph {
    pub fn new(n: usize) -> Result<Self> {
        check_range(n, 4, 10, "the pair graph")?;
        let vertices = off_diagonal_pairs(n);
        let mut graph = SmallGraph::new(vertices.iter().map(|(i, j)| format!("({i},{j})")).collect());
        for a in 0..vertices.len() {
            for b in 0..a {
                if PairRelation::of(vertices[a], vertices[b]).is_adjacent() {
                    graph.add_edge(a, b);
                }
            }
        }
        Ok(PairGraph { n, vertices, graph })
    }

    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.vertices.iter().position(|&p| p == pair)
    }

    /// `(n − 2)(n − 3)`.
    pub fn expected_valency(&self) -> usize {
        (self.n - 2) * (self.n - 3)
    }

    /// One clique `{(i₁,i₂), (i₂,i₃), …, (i_{n−1},i₁)}` per cyclic order of
    /// `{1, …, n − 1}`.
    pub fn cyclic_cover(&self) -> Vec<Vec<usize>> {
        let mut rest: Vec<usize> = (2..self.n).collect();
        let mut cover = Vec::new();
        loop {
            let mut order = vec![1];
            order.extend(&rest);
            let clique = (0..order.len())
                .map(|k| {
                    self.index_of((order[k], order[(k + 1) % order.len()]))
                        .expect("pair vertex")
                })
                .collect();
            cover.push(clique);
            if !next_permutation(&mut rest) {
                break;
            }
        }
        cover
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
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

fn table_for(n: usize) -> Result<GroupTable> {
    GroupTable::new(n, GroupKind::Alt)
}

/// The vectors `v_{i,j}`, `i, j ∈ {1, …, n − 1}`, as columns of `H`.
pub struct StandardModuleBasis {
    pub n: usize,
    pub columns: Vec<(usize, usize)>,
    table: GroupTable,
    gram: ExactMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisReport {
    pub n: usize,
    pub vectors: usize,
    pub column_size: usize,
    pub rank_h: usize,
    pub diagonal: String,
    pub off_diagonal: String,
    pub least_eigenvalue: String,
}

impl StandardModuleBasis {
    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// `HᵀH`.
    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    fn column_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * (self.n - 1) + (j - 1)
    }

    pub fn h_matrix(&self) -> ExactMatrix {
        let cols = self.columns.len();
        ExactMatrix::from_integers(self.table.order(), cols, |r, c| {
            let (i, j) = self.columns[c];
            i64::from(self.table.element(r).apply(i) == j)
        })
    }

    /// Checks the Gram identity, the rank of `H` and the least eigenvalue.
    pub fn verify(&self) -> Result<BasisReport> {
        let n = self.n;
        let k = self.columns.len();
        let diag = fact(n - 1) / 2;
        let off = fact(n - 2) / 2;
        for a in 0..k {
            for b in 0..k {
                let (i, j) = self.columns[a];
                let (p, q) = self.columns[b];
                let kron = i64::from(i != p) * i64::from(j != q);
                let expected = if a == b { diag } else { off * kron };
                if *self.gram.get(a, b) != rat(expected) {
                    return Err(Error::verification(
                        "HᵀH identity",
                        format!("entry ({i},{j}),({p},{q}) is {} not {expected}", self.gram.get(a, b)),
                    ));
                }
            }
        }
        let h = self.h_matrix();
        for c in 0..k {
            let ones: BigRational = h.column(c).iter().sum();
            if ones != rat(diag) {
                return Err(Error::verification(
                    "column sums",
                    format!("column {c} has {ones} ones"),
                ));
            }
        }
        let rank_h = h.rank();
        if rank_h != k {
            return Err(Error::verification(
                "H has full column rank",
                format!("rank {rank_h} < {k}"),
            ));
        }
        let least = rat(off);
        let shifted = self.gram.add_scaled(&-least.clone(), &ExactMatrix::identity(k))?;
        match shifted.ldl_psd()? {
            PsdVerdict::Psd(cert) if cert.verify(&shifted) && cert.rank() < k => {}
            PsdVerdict::Psd(cert) => {
                return Err(Error::verification(
                    "least eigenvalue of HᵀH",
                    format!("HᵀH − {least}·I has rank {} of {k}", cert.rank()),
                ))
            }
            PsdVerdict::NotPsd(w) => {
                return Err(Error::verification(
                    "least eigenvalue of HᵀH",
                    format!("HᵀH − {least}·I is indefinite (value {})", w.value),
                ))
            }
        }
        Ok(BasisReport {
            n,
            vectors: k,
            column_size: diag as usize,
            rank_h,
            diagonal: diag.to_string(),
            off_diagonal: off.to_string(),
            least_eigenvalue: least.to_string(),
        })
    }
}

pub fn build_standard_basis(n: usize) -> Result<StandardModuleBasis> {
    check_range(n, 4, 7, "the standard basis")?;
    let table = table_for(n)?;
    let columns: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let k = columns.len();
    let mut gram = vec![0i64; k * k];
    for p in table.elements() {
        let hits: Vec<usize> = (1..n)
            .filter(|&i| p.apply(i) < n)
            .map(|i| (i - 1) * (n - 1) + (p.apply(i) - 1))
            .collect();
        for &a in &hits {
            for &b in &hits {
                gram[a * k + b] += 1;
            }
        }
    }
    let basis = StandardModuleBasis {
        n,
        columns,
        table,
        gram: ExactMatrix::from_integers(k, k, |a, b| gram[a * k + b]),
    };
    debug_assert_eq!(basis.column_index(1, 1), 0);
    Ok(basis)
}

fn check_max_intersecting(n: usize, set: &[Permutation]) -> Result<()> {
    let target = small_factorial(n - 1) / 2;
    if set.len() != target {
        return Err(Error::verification(
            "maximum independent set",
            format!("{} elements, expected {target}", set.len()),
        ));
    }
    let mut seen = HashSet::new();
    for p in set {
        if p.degree() != n || !p.is_even() {
            return Err(Error::domain(format!("{p} is not an element of Alt({n})")));
        }
        if !seen.insert(p) {
            return Err(Error::domain(format!("{p} is repeated")));
        }
    }
    for (k, a) in set.iter().enumerate() {
        if let Some(b) = set[k + 1..].iter().find(|b| !a.agrees_somewhere(b)) {
            return Err(Error::verification(
                "independent set",
                format!("{a} and {b} are adjacent"),
            ));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipReport {
    pub n: usize,
    pub size: usize,
    /// Characters whose projection of `v_S − (1/n)𝟏` is nonzero.
    pub supported_on: Vec<String>,
    /// Coordinates of `v_S − (1/n)𝟏` in the basis `{v_{i,j} − (1/n)𝟏}`.
    pub coordinates: Vec<String>,
}

/// `v_S − (1/n)𝟏` lies in the standard module, both by projection and by
/// an exact solve in the basis `{v_{i,j} − (1/n)𝟏}`.
pub fn verify_standard_module_membership(set: &[Permutation]) -> Result<MembershipReport> {
    let n = set
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::domain("empty set"))?;
    check_range(n, 4, 6, "membership")?;
    check_max_intersecting(n, set)?;
    let scheme = ClassScheme::new(n)?;
    let table = scheme.table();
    let indicator = table.indicator(set)?;
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    let target: Vec<BigRational> = indicator.iter().map(|&b| rat(b as i64) - &inv_n).collect();

    let mut supported_on = Vec::new();
    for (chi, proj) in scheme.project_all(&target)? {
        if proj.iter().any(|x| !x.is_zero()) {
            if !chi.is_standard() {
                return Err(Error::verification(
                    "projection outside the standard module",
                    format!("E_χ(v_S − 𝟏/n) ≠ 0 for {chi}"),
                ));
            }
            supported_on.push(chi.to_string());
        }
    }

    let columns: Vec<(usize, usize)> = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).collect();
    let b = ExactMatrix::from_fn(table.order(), columns.len(), |r, c| {
        let (i, j) = columns[c];
        rat(i64::from(table.element(r).apply(i) == j)) - &inv_n
    });
    let coordinates = match b.solve(&target)? {
        Solution::Unique(x) => x,
        Solution::Underdetermined(_) => {
            return Err(Error::verification(
                "basis is independent",
                "the system is underdetermined",
            ))
        }
        Solution::Inconsistent => {
            return Err(Error::verification(
                "membership in the standard module",
                "v_S − 𝟏/n is not in the span",
            ))
        }
    };
    Ok(MembershipReport {
        n,
        size: set.len(),
        supported_on,
        coordinates: coordinates.iter().map(|x| x.to_string()).collect(),
    })
}

/// `Ā` with rows ordered identity, derangements, rest and columns ordered
/// `(1,1), …, (n,n)` then the off-diagonal pairs of `{1, …, n − 1}`.
pub struct BlockSystem {
    pub n: usize,
    table: GroupTable,
    /// Table indices in row order.
    pub row_order: Vec<usize>,
    pub derangement_rows: usize,
    pub columns: Vec<(usize, usize)>,
}

impl BlockSystem {
    pub fn new(n: usize) -> Result<Self> {
        check_range(n, 4, 7, "the block system")?;
        let table = table_for(n)?;
        let identity = table.index_of(&Permutation::identity(n)).expect("identity");
        let derangements = table.derangement_indices();
        let mut row_order = vec![identity];
        row_order.extend(&derangements);
        row_order.extend((0..table.order()).filter(|&i| i != identity && !table.element(i).is_derangement()));
        let mut columns: Vec<(usize, usize)> = (1..=n).map(|i| (i, i)).collect();
        columns.extend(off_diagonal_pairs(n));
        Ok(BlockSystem {
            n,
            table,
            row_order,
            derangement_rows: derangements.len(),
            columns,
        })
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn row_element(&self, row: usize) -> &Permutation {
        self.table.element(self.row_order[row])
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        let (i, j) = self.columns[col];
        i64::from(self.row_element(row).apply(i) == j)
    }

    pub fn abar_rows(&self) -> Vec<Vec<i64>> {
        (0..self.row_order.len())
            .map(|r| (0..self.columns.len()).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// Derangement rows restricted to the off-diagonal columns.
    pub fn m_rows(&self) -> Vec<Vec<i64>> {
        (1..=self.derangement_rows)
            .map(|r| (self.n..self.columns.len()).map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// Identity row `[𝟏 | 0]`, derangement rows `[0 | M]`.
    pub fn check_block_shape(&self) -> Result<()> {
        let n = self.n;
        for c in 0..self.columns.len() {
            let expected = i64::from(c < n);
            if self.entry(0, c) != expected {
                return Err(Error::verification(
                    "identity row of Ā",
                    format!("column {:?}", self.columns[c]),
                ));
            }
        }
        for r in 1..=self.derangement_rows {
            if let Some(c) = (0..n).find(|&c| self.entry(r, c) != 0) {
                return Err(Error::verification(
                    "zero block under the diagonal columns",
                    format!("{} at {:?}", self.row_element(r), self.columns[c]),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbarReport {
    pub n: usize,
    /// Elements of `Alt(n)` per case of the `v`/`w` table.
    pub cases: BTreeMap<String, usize>,
    pub rank_a: usize,
    pub rank_abar: usize,
    pub expected_rank: usize,
}

/// Checks the `v`, `w` case table, `v − w = (n − 2)·A_{1,n}`, and that `A`
/// and `Ā` have the same column space.
pub fn verify_abar_reduction(n: usize) -> Result<AbarReport> {
    check_range(n, 4, 7, "the Ā reduction")?;
    let blocks = BlockSystem::new(n)?;
    blocks.check_block_shape()?;
    let table = blocks.table();
    let m = n as i64;
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    for p in table.elements() {
        let v = (2..n).filter(|&i| p.apply(i) != n).count() as i64;
        let w = (m - 3) * i64::from(p.apply(1) != n) + i64::from(p.apply(n) == n);
        let (case, ev, ew) = if p.apply(1) == n {
            ("pi(1) = n", m - 2, 0)
        } else if p.apply(n) == n {
            ("pi(n) = n", m - 2, m - 2)
        } else {
            ("otherwise", m - 3, m - 3)
        };
        if (v, w) != (ev, ew) {
            return Err(Error::verification(
                "v and w case table",
                format!("{p} ({case}): v = {v}, w = {w}, expected {ev}, {ew}"),
            ));
        }
        let a1n = i64::from(p.apply(1) == n);
        if v - w != (m - 2) * a1n {
            return Err(Error::verification("v − w = (n − 2)·A_{1,n}", p.to_string()));
        }
        *cases.entry(case.to_string()).or_default() += 1;
    }
    let a_rows: Vec<Vec<i64>> = table
        .elements()
        .iter()
        .map(|p| {
            (1..=n)
                .flat_map(|i| (1..=n).map(move |j| i64::from(p.apply(i) == j)))
                .collect()
        })
        .collect();
    let rank_a = integer_rank(&a_rows);
    let rank_abar = integer_rank(&blocks.abar_rows());
    let expected_rank = (n - 1) * (n - 1) + 1;
    if rank_a != expected_rank || rank_abar != expected_rank {
        return Err(Error::verification(
            "rank A = rank Ā = (n − 1)² + 1",
            format!("rank A = {rank_a}, rank Ā = {rank_abar}"),
        ));
    }
    Ok(AbarReport {
        n,
        cases,
        rank_a,
        rank_abar,
        expected_rank,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GramCase {
    pub case: String,
    pub value: String,
    pub entries: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RankMReport {
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// `T` over `n`-cycle rows for odd `n`, `U` over `(n/2, n/2)` rows for even `n`.
    pub gram: String,
    pub gram_rows: usize,
    pub cases: Vec<GramCase>,
    /// Certified lower bound on the least eigenvalue of the Gram matrix.
    pub least_eigenvalue_at_least: String,
}

/// `rank M = (n − 1)(n − 2)`, directly and through the Gram identity for `T`
/// (odd `n`) or `U` (even `n`).
pub fn verify_m_fullrank(n: usize) -> Result<RankMReport> {
    check_range(n, 5, 7, "the rank of M")?;
    let blocks = BlockSystem::new(n)?;
    let m_rows = blocks.m_rows();
    let pairs = off_diagonal_pairs(n);
    let cols = pairs.len();
    let rank = integer_rank(&m_rows);
    if rank != cols {
        return Err(Error::verification(
            "rank M = (n − 1)(n − 2)",
            format!("rank {rank} < {cols}"),
        ));
    }

    let half = n / 2;
    let selected: Vec<usize> = (1..=blocks.derangement_rows)
        .filter(|&r| {
            let t = blocks.row_element(r).cycle_type();
            if n % 2 == 1 {
                t.lengths() == [n]
            } else {
                t.lengths() == [half, half]
            }
        })
        .collect();
    let mut gram = vec![0i64; cols * cols];
    for &r in &selected {
        let hits: Vec<usize> = (0..cols).filter(|&c| m_rows[r - 1][c] == 1).collect();
        for &a in &hits {
            for &b in &hits {
                gram[a * cols + b] += 1;
            }
        }
    }
    let (name, diag, adj) = if n % 2 == 1 {
        ("T", rat(fact(n - 2)), rat(fact(n - 3)))
    } else {
        let nn = BigInt::from(n);
        (
            "U",
            BigRational::new(BigInt::from(2 * fact(n - 2)), nn.clone()),
            BigRational::new(BigInt::from(2 * fact(n - 3)), nn),
        )
    };
    let mut cases: BTreeMap<PairRelation, (BigRational, usize)> = BTreeMap::new();
    for a in 0..cols {
        for b in 0..cols {
            let rel = PairRelation::of(pairs[a], pairs[b]);
            let expected = match rel {
                PairRelation::Same => diag.clone(),
                r if r.is_adjacent() => adj.clone(),
                _ => BigRational::zero(),
            };
            let actual = rat(gram[a * cols + b]);
            if actual != expected {
                return Err(Error::verification(
                    format!("{name} = c₁·I + c₂·A(X)"),
                    format!(
                        "{name}[{:?},{:?}] = {actual}, expected {expected} (case {})",
                        pairs[a],
                        pairs[b],
                        rel.label()
                    ),
                ));
            }
            cases.entry(rel).or_insert((expected, 0)).1 += 1;
        }
    }
    // diag − (n − 3)·adj is the bound implied by τ(X) ≥ −(n − 3).
    let lower = &diag - &adj * BigInt::from(n - 3);
    if !lower.is_positive() {
        return Err(Error::verification(
            "Gram matrix is positive definite",
            format!("bound {lower}"),
        ));
    }
    let matrix = ExactMatrix::from_integers(cols, cols, |a, b| gram[a * cols + b]);
    let shifted = matrix.add_scaled(&-lower.clone(), &ExactMatrix::identity(cols))?;
    match shifted.ldl_psd()? {
        PsdVerdict::Psd(cert) if cert.verify(&shifted) => {}
        _ => {
            return Err(Error::verification(
                "Gram matrix is positive definite",
                format!("{name} − {lower}·I is not certified PSD"),
            ))
        }
    }
    Ok(RankMReport {
        n,
        rows: m_rows.len(),
        cols,
        rank,
        gram: name.to_string(),
        gram_rows: selected.len(),
        cases: cases
            .into_iter()
            .map(|(rel, (value, entries))| GramCase {
                case: rel.label().to_string(),
                value: value.to_string(),
                entries,
            })
            .collect(),
        least_eigenvalue_at_least: lower.to_string(),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XBoundReport {
    pub n: usize,
    pub vertices: usize,
    pub valency: usize,
    pub cover_size: usize,
    pub edge_multiplicity: usize,
    /// Edges checked per case: disjoint pairs, and pairs forming a path.
    pub disjoint_edges: usize,
    pub path_edges: usize,
    pub vertex_multiplicity: usize,
    pub bound: String,
    pub exact_least_eigenvalue: Option<i64>,
}

/// `τ(X) ≥ −(n − 3)` from the cover by the cliques `C_α`.
pub fn verify_x_bound(n: usize) -> Result<XBoundReport> {
    check_range(n, 5, 8, "the X bound")?;
    let x = PairGraph::new(n)?;
    let k = x
        .graph
        .regular_degree()
        .ok_or_else(|| Error::verification("X is regular", "degrees differ"))?;
    if k != x.expected_valency() {
        return Err(Error::verification("valency (n − 2)(n − 3)", k.to_string()));
    }
    let cover = x.cyclic_cover();
    if cover.len() != small_factorial(n - 2) {
        return Err(Error::verification("(n − 2)! cyclic orders", cover.len().to_string()));
    }
    let expected = small_factorial(n - 4);
    let v = x.vertices.len();
    let mut counts = vec![0usize; v * v];
    for clique in &cover {
        for &a in clique {
            for &b in clique {
                if a != b {
                    counts[a * v + b] += 1;
                }
            }
        }
    }
    let (mut disjoint_edges, mut path_edges) = (0, 0);
    for a in 0..v {
        for b in a + 1..v {
            if !x.graph.has_edge(a, b) {
                continue;
            }
            let rel = PairRelation::of(x.vertices[a], x.vertices[b]);
            if counts[a * v + b] != expected {
                return Err(Error::verification(
                    "every edge in (n − 4)! cliques",
                    format!(
                        "edge {:?} -- {:?} ({}) lies in {} cliques",
                        x.vertices[a],
                        x.vertices[b],
                        rel.label(),
                        counts[a * v + b]
                    ),
                ));
            }
            if rel == PairRelation::Disjoint {
                disjoint_edges += 1;
            } else {
                path_edges += 1;
            }
        }
    }
    let bound = clique_cover_eigen_bound(&x.graph, &cover)?;
    if bound.bound != rat(-(n as i64 - 3)) {
        return Err(Error::verification("bound −(n − 3)", bound.bound.to_string()));
    }
    if let Some(tau) = bound.exact_least_eigenvalue {
        if rat(tau) < bound.bound {
            return Err(Error::verification("exact τ(X) respects the bound", tau.to_string()));
        }
    }
    Ok(XBoundReport {
        n,
        vertices: v,
        valency: k,
        cover_size: cover.len(),
        edge_multiplicity: bound.edge_multiplicity,
        disjoint_edges,
        path_edges,
        vertex_multiplicity: bound.vertex_multiplicity,
        bound: bound.bound.to_string(),
        exact_least_eigenvalue: bound.exact_least_eigenvalue,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub n: usize,
    /// `S` was replaced by `S·s₀⁻¹`, which contains the identity.
    pub translation: Permutation,
    /// The point `i` with `S·s₀⁻¹ = S_{i,i}`.
    pub fixed_point: usize,
    /// `S = S_{a,b}`.
    pub coset: (usize, usize),
    /// `g_x`, an element whose only fixed point is `x`, for each `x`.
    pub fixed_point_rows: Vec<Permutation>,
}

/// Recovers the coset label of a maximum intersecting family by solving
/// `Ā·[v; w] = v_S` exactly.
pub fn reconstruct_from_blocks(set: &[Permutation]) -> Result<Reconstruction> {
    let n = set
        .first()
        .map(Permutation::degree)
        .ok_or_else(|| Error::domain("empty set"))?;
    check_range(n, 4, 7, "reconstruction")?;
    check_max_intersecting(n, set)?;
    let blocks = BlockSystem::new(n)?;
    blocks.check_block_shape()?;

    let s0 = set.iter().min_by_key(|p| p.lex_rank()).expect("nonempty").clone();
    let s0_inv = s0.inverse();
    let translated: HashSet<Permutation> = set.iter().map(|p| p.compose(&s0_inv)).collect();
    let rows = blocks.row_order.len();
    let rhs: Vec<BigRational> = (0..rows)
        .map(|r| rat(i64::from(translated.contains(blocks.row_element(r)))))
        .collect();
    let abar = ExactMatrix::from_integers(rows, blocks.columns.len(), |r, c| blocks.entry(r, c));
    let solution = match abar.solve(&rhs)? {
        Solution::Unique(x) => x,
        Solution::Underdetermined(_) => return Err(Error::verification("Ā has full column rank", "underdetermined")),
        Solution::Inconsistent => {
            return Err(Error::verification(
                "v_S in the column space of Ā",
                format!("no solution after translating by {s0}"),
            ))
        }
    };
    let (v, w) = solution.split_at(n);
    let total: BigRational = v.iter().sum();
    if !total.is_one() {
        return Err(Error::verification("𝟏ᵀv = 1", total.to_string()));
    }
    let m_rows = blocks.m_rows();
    if integer_rank(&m_rows) != w.len() {
        return Err(Error::verification("M has full column rank", "rank deficient"));
    }
    for (r, row) in m_rows.iter().enumerate() {
        let mw: BigRational = row
            .iter()
            .zip(w)
            .filter(|(a, _)| **a != 0)
            .map(|(_, x)| x.clone())
            .sum();
        if !mw.is_zero() || !rhs[r + 1].is_zero() {
            return Err(Error::verification(
                "Mw = 0",
                format!("row {}", blocks.row_element(r + 1)),
            ));
        }
    }
    if let Some(x) = w.iter().find(|x| !x.is_zero()) {
        return Err(Error::verification("w = 0", x.to_string()));
    }
    let mut fixed_point_rows = Vec::new();
    for x in 1..=n {
        let r = (blocks.derangement_rows + 1..rows)
            .find(|&r| {
                let p = blocks.row_element(r);
                p.fixed_points() == 1 && p.apply(x) == x
            })
            .ok_or_else(|| Error::verification("g_x exists", format!("no element fixes only {x}")))?;
        // Row g_x of the diagonal block is e_x, so v_x = (v_S)_{g_x}.
        if (0..n).any(|c| blocks.entry(r, c) != i64::from(c + 1 == x)) || v[x - 1] != rhs[r] {
            return Err(Error::verification("v_x = v_S(g_x)", format!("x = {x}")));
        }
        fixed_point_rows.push(blocks.row_element(r).clone());
    }
    if v.iter().any(|x| !x.is_zero() && !x.is_one()) {
        return Err(Error::verification("v is a 0/1 vector", format!("{v:?}")));
    }
    let i = v.iter().position(|x| x.is_one()).expect("sum is one") + 1;
    let coset = (s0_inv.apply(i), i);
    let expected: HashSet<Permutation> = blocks
        .table()
        .coset_family(coset.0, coset.1)
        .members
        .into_iter()
        .collect();
    let original: HashSet<Permutation> = set.iter().cloned().collect();
    if expected != original {
        return Err(Error::verification("S is the coset S_{a,b}", format!("{coset:?}")));
    }
    Ok(Reconstruction {
        n,
        translation: s0,
        fixed_point: i,
        coset,
        fixed_point_rows,
    })
}

/// All independent sets of size at least `target`, found by branch and
/// bound for cliques in the complement with a greedy colouring bound.
#[derive(Clone, Debug)]
pub struct IndependentSetSearch {
    /// Sets of the largest size found, each sorted, in lexicographic order.
    pub sets: Vec<Vec<usize>>,
    pub max_size: usize,
    /// False if the node budget ran out; the sets are then partial.
    pub complete: bool,
    pub nodes: u64,
}

struct Cliquer<'a> {
    adj: &'a [Vec<u64>],
    target: usize,
    found: Vec<Vec<usize>>,
    nodes: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
}

/// Greedy colouring of `p`; returns vertices with colours in increasing order.
fn colour_order(adj: &[Vec<u64>], p: &[u64]) -> Vec<(usize, usize)> {
    let mut uncoloured = p.to_vec();
    let mut order = Vec::new();
    let mut colour = 0;
    while uncoloured.iter().any(|w| *w != 0) {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = first_bit(&q) {
            q[v / 64] &= !(1 << (v % 64));
            uncoloured[v / 64] &= !(1 << (v % 64));
            for (qw, aw) in q.iter_mut().zip(&adj[v]) {
                *qw &= !aw;
            }
            order.push((v, colour));
        }
    }
    order
}

impl Cliquer<'_> {
    fn expand(&mut self, r: &mut Vec<usize>, mut p: Vec<u64>) {
        if self.aborted.load(Ordering::Relaxed) {
            return;
        }
        if self.nodes.fetch_add(1, Ordering::Relaxed) > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        for &(v, colour) in colour_order(self.adj, &p).iter().rev() {
            if r.len() + colour < self.target {
                return;
            }
            r.push(v);
            let next: Vec<u64> = p.iter().zip(&self.adj[v]).map(|(a, b)| a & b).collect();
            if next.iter().all(|w| *w == 0) {
                if r.len() >= self.target {
                    self.found.push(r.clone());
                }
            } else {
                self.expand(r, next);
            }
            r.pop();
            p[v / 64] &= !(1 << (v % 64));
        }
    }
}

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;

pub fn independent_sets_of_size(graph: &DerangementGraph, target: usize, budget: u64) -> IndependentSetSearch {
    let v = graph.vertex_count();
    let words = v.div_ceil(64);
    let mut mask = vec![u64::MAX; words];
    if !v.is_multiple_of(64) {
        mask[words - 1] = (1u64 << (v % 64)) - 1;
    }
    let complement: Vec<Vec<u64>> = (0..v)
        .map(|a| {
            let mut row: Vec<u64> = graph.row(a).iter().zip(&mask).map(|(r, m)| !r & m).collect();
            row[a / 64] &= !(1 << (a % 64));
            row
        })
        .collect();
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let order = colour_order(&complement, &mask);
    let position: Vec<usize> = {
        let mut pos = vec![0; v];
        for (k, &(x, _)) in order.iter().enumerate() {
            pos[x] = k;
        }
        pos
    };
    // Branch k takes order[k] and excludes every vertex later in the order.
    let branches: Vec<Vec<Vec<usize>>> = (0..order.len())
        .into_par_iter()
        .filter(|&k| order[k].1 >= target)
        .map(|k| {
            let (x, _) = order[k];
            let mut p = complement[x].clone();
            for (y, &pos) in position.iter().enumerate() {
                if pos > k {
                    p[y / 64] &= !(1 << (y % 64));
                }
            }
            let mut c = Cliquer {
                adj: &complement,
                target,
                found: Vec::new(),
                nodes: &nodes,
                budget,
                aborted: &aborted,
            };
            let mut r = vec![x];
            if p.iter().all(|w| *w == 0) {
                if target <= 1 {
                    c.found.push(r);
                }
            } else {
                c.expand(&mut r, p);
            }
            c.found
        })
        .collect();
    let mut all: Vec<Vec<usize>> = branches.into_iter().flatten().collect();
    for s in all.iter_mut() {
        s.sort_unstable();
    }
    let max_size = all.iter().map(Vec::len).max().unwrap_or(0);
    all.retain(|s| s.len() == max_size);
    all.sort();
    all.dedup();
    IndependentSetSearch {
        sets: all,
        max_size,
        complete: !aborted.load(Ordering::Relaxed),
        nodes: nodes.load(Ordering::Relaxed),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub n: usize,
    pub group: GroupKind,
    pub max_size: usize,
    pub count: usize,
    pub all_cosets: bool,
    pub closed_under_translation: bool,
    pub complete: bool,
    pub nodes: u64,
}

impl EnumerationReport {
    pub fn passed(&self) -> bool {
        self.complete && self.all_cosets && self.closed_under_translation && self.count == self.n * self.n
    }
}

/// Enumerates every maximum independent set of the derangement graph of
/// `Sym(n)` or `Alt(n)` and compares them with the cosets `S_{i,j}`.
pub fn enumerate_group(n: usize, kind: GroupKind, budget: u64) -> Result<(EnumerationReport, Vec<Vec<Permutation>>)> {
    let table = GroupTable::new(n, kind)?;
    let target = table.order() / n;
    let graph = DerangementGraph::from_table(table);
    let search = independent_sets_of_size(&graph, target, budget);
    let table = graph.table();
    for s in &search.sets {
        graph.check_independent(s)?;
    }
    let found: HashSet<Vec<usize>> = search.sets.iter().cloned().collect();
    let mut cosets: HashSet<Vec<usize>> = HashSet::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut idx: Vec<usize> = table
                .coset_family(i, j)
                .members
                .iter()
                .map(|p| table.index_of(p).expect("member"))
                .collect();
            idx.sort_unstable();
            cosets.insert(idx);
        }
    }
    let closed = search.sets.iter().all(|s| {
        table.elements().iter().all(|g| {
            let mut right: Vec<usize> = s
                .iter()
                .map(|&x| table.index_of(&table.element(x).compose(g)).expect("closed"))
                .collect();
            let mut left: Vec<usize> = s
                .iter()
                .map(|&x| table.index_of(&g.compose(table.element(x))).expect("closed"))
                .collect();
            right.sort_unstable();
            left.sort_unstable();
            found.contains(&right) && found.contains(&left)
        })
    });
    let report = EnumerationReport {
        n,
        group: kind,
        max_size: search.max_size,
        count: search.sets.len(),
        all_cosets: search.max_size == target && found == cosets,
        closed_under_translation: closed,
        complete: search.complete,
        nodes: search.nodes,
    };
    let sets = search
        .sets
        .iter()
        .map(|s| s.iter().map(|&x| table.element(x).clone()).collect())
        .collect();
    Ok((report, sets))
}

/// Maximum independent sets of `Γ(Alt(n))`; `n = 6` needs `long`.
pub fn enumerate_max_independent_sets(n: usize, long: bool) -> Result<(EnumerationReport, Vec<Vec<Permutation>>)> {
    match n {
        5 => enumerate_group(5, GroupKind::Alt, DEFAULT_NODE_BUDGET),
        6 if long => enumerate_group(6, GroupKind::Alt, u64::MAX),
        6 => Err(Error::Resource(
            "enumeration at n = 6 is long-running; pass the long flag".into(),
        )),
        _ => Err(Error::domain(
            "enumeration is supported for n = 5 (and n = 6 when long)",
        )),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferReport {
    pub n: usize,
    pub h_order: usize,
    /// `|H|/(n(n − 1))`.
    pub expected_count: usize,
    /// Triples `(α, π, β)` checked.
    pub triples: u64,
    /// `(n − 2)·|H|/(n(n − 1))` and `|H|/n`.
    pub union_bound: (usize, usize),
    /// Strict EKR for `Sym(5)` by enumeration, run at `n = 5`.
    pub sym5: Option<EnumerationReport>,
}

/// For `H = Alt(n)`, `G = Sym(n)`: `|G_β ∩ H_α π⁻¹| = |H|/(n(n − 1))` for
/// every `α`, every `π ∈ G` moving `α` and every `β ∉ {α, π(α)}`.
pub fn transfer_strict_ekr_check(n: usize) -> Result<TransferReport> {
    check_range(n, 5, 7, "the transfer check")?;
    let h = table_for(n)?;
    let g = GroupTable::new(n, GroupKind::Sym)?;
    // count[α][γ][β] = #{σ ∈ H_α : σ(γ) = β}
    let idx = |a: usize, c: usize, b: usize| (a * n + c) * n + b;
    let mut count = vec![0usize; n * n * n];
    for s in h.elements() {
        for a in 0..n {
            if s.apply0(a) == a {
                for c in 0..n {
                    count[idx(a, c, s.apply0(c))] += 1;
                }
            }
        }
    }
    let expected = h.order() / (n * (n - 1));
    let mut triples = 0u64;
    for pi in g.elements() {
        let inv = pi.inverse();
        for a in 0..n {
            if pi.apply0(a) == a {
                continue;
            }
            for b in (0..n).filter(|&b| b != a && b != pi.apply0(a)) {
                triples += 1;
                let got = count[idx(a, inv.apply0(b), b)];
                if got != expected {
                    return Err(Error::verification(
                        "|G_β ∩ H_α π⁻¹| = |H|/(n(n − 1))",
                        format!("α = {}, β = {}, π = {pi}: {got}", a + 1, b + 1),
                    ));
                }
            }
        }
    }
    let union_bound = ((n - 2) * expected, h.order() / n);
    if union_bound.0 >= union_bound.1 {
        return Err(Error::verification(
            "(n − 2)·|H|/(n(n − 1)) < |H|/n",
            format!("{union_bound:?}"),
        ));
    }
    let sym5 = if n == 5 {
        let (report, _) = enumerate_group(5, GroupKind::Sym, DEFAULT_NODE_BUDGET)?;
        if !report.passed() {
            return Err(Error::verification(
                "strict EKR for Sym(5)",
                format!("{} maximum families of size {}", report.count, report.max_size),
            ));
        }
        Some(report)
    } else {
        None
    };
    Ok(TransferReport {
        n,
        h_order: h.order(),
        expected_count: expected,
        triples,
        union_bound,
        sym5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_relations() {
        assert_eq!(PairRelation::of((1, 2), (2, 1)), PairRelation::Reversed);
        assert_eq!(PairRelation::of((1, 2), (3, 1)), PairRelation::ChainIntoFirst);
        assert_eq!(PairRelation::of((1, 2), (2, 3)), PairRelation::ChainOutOfFirst);
        assert_eq!(PairRelation::of((1, 2), (1, 3)), PairRelation::SameTail);
        assert_eq!(PairRelation::of((1, 2), (3, 2)), PairRelation::SameHead);
        assert_eq!(PairRelation::of((1, 2), (3, 4)), PairRelation::Disjoint);
        for a in off_diagonal_pairs(6) {
            for b in off_diagonal_pairs(6) {
                assert_eq!(
                    PairRelation::of(a, b).is_adjacent(),
                    PairRelation::of(b, a).is_adjacent()
                );
            }
        }
    }

    #[test]
    fn pair_graph_shape() {
        for n in 5..=8 {
            let x = PairGraph::new(n).unwrap();
            assert_eq!(x.vertices.len(), (n - 1) * (n - 2));
            assert_eq!(x.graph.regular_degree(), Some(x.expected_valency()));
            assert_eq!(x.cyclic_cover().len(), small_factorial(n - 2));
        }
        assert_eq!(PairGraph::new(5).unwrap().expected_valency(), 6);
    }

    #[test]
    fn basis_at_five() {
        let b = build_standard_basis(5).unwrap();
        let r = b.verify().unwrap();
        assert_eq!(
            (
                r.rank_h,
                r.diagonal.as_str(),
                r.off_diagonal.as_str(),
                r.least_eigenvalue.as_str()
            ),
            (16, "12", "3", "3")
        );
    }

    #[test]
    fn membership_at_five() {
        let table = table_for(5).unwrap();
        for (i, j) in [(1, 1), (2, 3)] {
            let s = table.coset_family(i, j).members;
            let r = verify_standard_module_membership(&s).unwrap();
            assert_eq!(r.supported_on.len(), 1);
            assert_eq!(r.coordinates.len(), 16);
        }
        let mut bad = table.coset_family(1, 1).members;
        bad[0] = table.elements().iter().find(|p| p.is_derangement()).unwrap().clone();
        let err = verify_standard_module_membership(&bad).unwrap_err().to_string();
        assert!(err.contains("adjacent"), "{err}");
    }

    #[test]
    fn abar_at_five() {
        let r = verify_abar_reduction(5).unwrap();
        assert_eq!((r.rank_a, r.rank_abar), (17, 17));
        assert_eq!(r.cases["pi(1) = n"], 12);
        assert_eq!(r.cases["pi(n) = n"], 12);
    }

    #[test]
    fn rank_m_small() {
        let five = verify_m_fullrank(5).unwrap();
        assert_eq!(
            (five.rank, five.gram.as_str(), five.least_eigenvalue_at_least.as_str()),
            (12, "T", "2")
        );
        let reversed = five
            .cases
            .iter()
            .find(|c| c.case == PairRelation::Reversed.label())
            .unwrap();
        assert_eq!(reversed.value, "0");
        let six = verify_m_fullrank(6).unwrap();
        assert_eq!((six.rank, six.gram.as_str()), (20, "U"));
        let same = six.cases.iter().find(|c| c.case == PairRelation::Same.label()).unwrap();
        assert_eq!(same.value, "8");
    }

    #[test]
    fn x_bound_small() {
        let five = verify_x_bound(5).unwrap();
        assert_eq!((five.vertices, five.valency, five.bound.as_str()), (12, 6, "-2"));
        let six = verify_x_bound(6).unwrap();
        assert_eq!(six.edge_multiplicity, 2);
        assert!(verify_x_bound(9).is_err());
    }

    #[test]
    fn reconstruct_cosets() {
        let table = table_for(5).unwrap();
        for (i, j) in [(1, 1), (3, 3), (2, 5)] {
            let s = table.coset_family(i, j).members;
            let r = reconstruct_from_blocks(&s).unwrap();
            assert_eq!(r.coset, (i, j));
            if i == j {
                assert!(r.translation.is_identity() || r.fixed_point == i);
            }
        }
    }

    #[test]
    fn enumeration_at_five() {
        let (report, sets) = enumerate_max_independent_sets(5, false).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!((report.max_size, report.count), (12, 25));
        for s in &sets {
            reconstruct_from_blocks(s).unwrap();
        }
        assert!(matches!(
            enumerate_max_independent_sets(6, false),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn transfer_counts() {
        let r = transfer_strict_ekr_check(6).unwrap();
        assert_eq!(r.expected_count, 12);
        assert_eq!(r.union_bound, (48, 60));
    }
}
