//! Exact linear algebra: fraction-free elimination, rational `LDLᵀ`
//! certificates and multimodular characteristic polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense matrix of rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_integers(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self::from_fn(rows, cols, |i, j| rat(f(i, j)))
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::domain("ragged rows"));
        }
        let n = rows.len();
        Ok(ExactMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::DegreeMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, k: &BigRational, other: &ExactMatrix) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DegreeMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + k * b).collect(),
        })
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rows scaled by their denominators' lcm, so elimination stays integral.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.integer_rows();
        bareiss_echelon(&mut rows, self.cols).len()
    }

    /// Solves `self · x = b` exactly.
    pub fn solve(&self, b: &[BigRational]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DegreeMismatch {
                left: self.rows,
                right: b.len(),
            });
        }
        let mut augmented = self.clone();
        augmented.cols += 1;
        augmented.data = (0..self.rows)
            .flat_map(|i| self.row(i).iter().cloned().chain(std::iter::once(b[i].clone())))
            .collect();
        let mut rows = augmented.integer_rows();
        let pivots = bareiss_echelon(&mut rows, self.cols);
        let rank = pivots.len();
        if rows[rank..].iter().any(|r| !r[self.cols].is_zero()) {
            return Ok(Solution::Inconsistent);
        }
        let mut x = vec![BigRational::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate().rev() {
            let mut acc = BigRational::from_integer(rows[r][self.cols].clone());
            for (cc, xv) in x.iter().enumerate().skip(c + 1) {
                if !xv.is_zero() && !rows[r][cc].is_zero() {
                    acc -= xv * &rows[r][cc];
                }
            }
            x[c] = acc / &rows[r][c];
        }
        Ok(if rank == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Underdetermined(x)
        })
    }

    /// Text form: a `rows cols` header line followed by one line per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Integer entries, if every entry is an integer that fits in `i64`.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| if x.is_integer() { x.numer().to_i64() } else { None })
                    .collect()
            })
            .collect()
    }

    pub fn ldl_psd(&self) -> Result<PsdVerdict> {
        ldl_psd(self)
    }
}

impl FromStr for ExactMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension {t:?}"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(Error::Parse("header must be `rows cols`".into()));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for line in lines {
            let before = data.len();
            for tok in line.split_whitespace() {
                data.push(
                    tok.parse::<BigRational>()
                        .map_err(|_| Error::Parse(format!("bad entry {tok:?}")))?,
                );
            }
            if data.len() - before != cols {
                return Err(Error::Parse(format!(
                    "row has {} entries, expected {cols}",
                    data.len() - before
                )));
            }
        }
        if data.len() != rows * cols {
            return Err(Error::Parse(format!("expected {rows} rows")));
        }
        Ok(ExactMatrix { rows, cols, data })
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            write!(f, "\n{}", self.to_text())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// A particular solution, free variables set to zero.
    Underdetermined(Vec<BigRational>),
    Inconsistent,
}

/// Fraction-free Gaussian elimination on the first `cols` columns.
/// Leaves `rows` in echelon form and returns the pivot columns.
pub fn bareiss_echelon(rows: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let m = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..width {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix given by rows.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    bareiss_echelon(&mut big, cols).len()
}

/// `P A Pᵀ = L D Lᵀ` with `L` unit lower triangular and `D ≥ 0`.
#[derive(Clone, Debug)]
pub struct LdlCertificate {
    /// `perm[k]` is the original index placed at position `k`.
    pub perm: Vec<usize>,
    pub l: ExactMatrix,
    pub d: Vec<BigRational>,
}

impl LdlCertificate {
    /// Recomputes `L D Lᵀ` and compares it with `P A Pᵀ`.
    pub fn verify(&self, a: &ExactMatrix) -> bool {
        let n = self.d.len();
        if a.rows() != n || !a.is_square() || self.d.iter().any(|x| x.is_negative()) {
            return false;
        }
        for i in 0..n {
            if !self.l.get(i, i).is_one() || (i + 1..n).any(|j| !self.l.get(i, j).is_zero()) {
                return false;
            }
            for j in 0..=i {
                let mut s = BigRational::zero();
                for k in 0..=j {
                    let (x, y) = (self.l.get(i, k), self.l.get(j, k));
                    if !x.is_zero() && !y.is_zero() && !self.d[k].is_zero() {
                        s += x * y * &self.d[k];
                    }
                }
                if &s != a.get(self.perm[i], self.perm[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of positive pivots, equal to the rank.
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| x.is_positive()).count()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.rank() == self.d.len()
    }
}

/// A vector `x` with `xᵀ A x < 0`.
#[derive(Clone, Debug)]
pub struct NotPsdWitness {
    pub vector: Vec<BigRational>,
    pub value: BigRational,
}

impl NotPsdWitness {
    pub fn verify(&self, a: &ExactMatrix) -> bool {
        quadratic_form(a, &self.vector).is_ok_and(|v| v == self.value && v.is_negative())
    }
}

#[derive(Clone, Debug)]
pub enum PsdVerdict {
    Psd(LdlCertificate),
    NotPsd(NotPsdWitness),
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd(_))
    }
}

pub fn quadratic_form(a: &ExactMatrix, x: &[BigRational]) -> Result<BigRational> {
    let ax = a.mul_vec(x)?;
    Ok(ax.iter().zip(x).map(|(p, q)| p * q).sum())
}

/// Exact `LDLᵀ` with symmetric pivoting on the largest remaining diagonal.
#[allow(clippy::needless_range_loop)]
pub fn ldl_psd(a: &ExactMatrix) -> Result<PsdVerdict> {
    if !a.is_symmetric() {
        return Err(Error::domain("LDL needs a symmetric matrix"));
    }
    let n = a.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    // Schur complement, indexed by position.
    let mut s: Vec<Vec<BigRational>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut l = ExactMatrix::identity(n);
    let mut d = vec![BigRational::zero(); n];

    for k in 0..n {
        let best = (k..n)
            .max_by(|&i, &j| s[i][i].cmp(&s[j][j]).then(j.cmp(&i)))
            .expect("k < n");
        if s[best][best].is_negative() {
            let mut u = vec![BigRational::zero(); n];
            u[best] = BigRational::one();
            return Ok(PsdVerdict::NotPsd(lift_witness(a, &l, &perm, k, u)?));
        }
        if s[best][best].is_zero() {
            let nonzero = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[i][j].is_zero());
            if let Some((i, j)) = nonzero {
                // Diagonals are all zero here, so (t·e_i + e_j)ᵀ S (t·e_i + e_j) = 2t·S_ij.
                let mut u = vec![BigRational::zero(); n];
                u[i] = -s[i][j].recip();
                u[j] = BigRational::one();
                return Ok(PsdVerdict::NotPsd(lift_witness(a, &l, &perm, k, u)?));
            }
            break;
        }
        if best != k {
            s.swap(best, k);
            for row in s.iter_mut() {
                row.swap(best, k);
            }
            perm.swap(best, k);
            for j in 0..k {
                let (x, y) = (l.get(best, j).clone(), l.get(k, j).clone());
                l.set(best, j, y);
                l.set(k, j, x);
            }
        }
        let pivot = s[k][k].clone();
        for i in k + 1..n {
            if s[i][k].is_zero() {
                continue;
            }
            let factor = &s[i][k] / &pivot;
            for j in k + 1..=i {
                if !s[k][j].is_zero() {
                    let delta = &factor * &s[k][j];
                    s[i][j] -= &delta;
                    if i != j {
                        s[j][i] -= delta;
                    }
                }
            }
            l.set(i, k, factor);
        }
        d[k] = pivot;
    }
    Ok(PsdVerdict::Psd(LdlCertificate { perm, l, d }))
}

/// Maps a vector `u` supported on Schur positions `k..` back to `x` with
/// `xᵀ A x = uᵀ S u`.
#[allow(clippy::needless_range_loop)]
fn lift_witness(
    a: &ExactMatrix,
    l: &ExactMatrix,
    perm: &[usize],
    k: usize,
    u: Vec<BigRational>,
) -> Result<NotPsdWitness> {
    let n = u.len();
    // Solve L_kᵀ z = u where L_k has unit columns beyond k.
    let mut z = u;
    for i in (0..k).rev() {
        let mut acc = z[i].clone();
        for j in i + 1..n {
            let lji = l.get(j, i);
            if !lji.is_zero() && !z[j].is_zero() {
                acc -= lji * &z[j];
            }
        }
        z[i] = acc;
    }
    let mut x = vec![BigRational::zero(); n];
    for (pos, &orig) in perm.iter().enumerate() {
        x[orig] = z[pos].clone();
    }
    let value = quadratic_form(a, &x)?;
    if !value.is_negative() {
        return Err(Error::verification(
            "LDL witness",
            format!("lifted witness has value {value}"),
        ));
    }
    Ok(NotPsdWitness { vector: x, value })
}

/// Polynomials with integer coefficients, lowest degree first.
pub type IntPoly = Vec<BigInt>;

struct Modulus {
    p: u64,
    m: u64,
}

impl Modulus {
    fn new(p: u64) -> Self {
        Modulus { p, m: u64::MAX / p }
    }

    #[inline]
    fn reduce(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn reduce_i64(&self, x: i64) -> u64 {
        (x.rem_euclid(self.p as i64)) as u64
    }
}

fn is_prime_u32(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Primes below `2^31` in decreasing order.
fn primes_below_2_31() -> impl Iterator<Item = u64> {
    ((1u64 << 30)..(1u64 << 31))
        .rev()
        .filter(|&k| k % 2 == 1 && is_prime_u32(k))
}

/// Characteristic polynomial `det(xI − A)` modulo `p` via Hessenberg reduction.
fn charpoly_mod(a: &[Vec<i64>], p: u64) -> Vec<u64> {
    let md = Modulus::new(p);
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a
        .iter()
        .map(|r| r.iter().map(|&x| md.reduce_i64(x)).collect())
        .collect();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = md.inv(h[m][m - 1]);
        for i in m + 1..n {
            if h[i][m - 1] == 0 {
                continue;
            }
            let u = md.mul(h[i][m - 1], inv);
            let neg_u = p - u;
            let (upper, lower) = h.split_at_mut(i);
            let row_m = &upper[m];
            let row_i = &mut lower[0];
            for k in m - 1..n {
                row_i[k] = md.reduce(row_i[k] + neg_u * row_m[k]);
            }
            for row in h.iter_mut() {
                row[m] = md.reduce(row[m] + u * row[i]);
            }
        }
    }
    // p_k = (x − h_{k−1,k−1}) p_{k−1} − Σ_i (Π subdiagonal) h_{k−i−1,k−1} p_{k−i−1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (j, &c) in prev.iter().enumerate() {
            next[j + 1] = (next[j + 1] + c) % p;
            next[j] = (next[j] + md.mul(p - h[k - 1][k - 1], c)) % p;
        }
        let mut t = 1u64;
        for i in 1..k {
            t = md.mul(t, h[k - i][k - i - 1]);
            if t == 0 {
                break;
            }
            let coef = md.mul(t, h[k - i - 1][k - 1]);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[k - i - 1].iter().enumerate() {
                next[j] = (next[j] + md.mul(p - coef, c)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Upper bound on the absolute values of the characteristic polynomial's
/// coefficients: `C(N, j)·R^j` with `R` the largest row norm, rounded up.
pub fn charpoly_coefficient_bound(a: &[Vec<i64>]) -> BigUint {
    let n = a.len();
    let norm_sq = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigUint::from(x.unsigned_abs()).pow(2))
                .sum::<BigUint>()
        })
        .max()
        .unwrap_or_default();
    let mut r = norm_sq.sqrt();
    if &r * &r < norm_sq {
        r += 1u32;
    }
    let mut best = BigUint::one();
    let mut binom = BigUint::one();
    let mut power = BigUint::one();
    for j in 1..=n {
        binom = binom * BigUint::from(n - j + 1) / BigUint::from(j);
        power *= &r;
        best = best.max(&binom * &power);
    }
    best
}

/// Exact `det(xI − A)` for a square integer matrix.
pub fn charpoly_integer(a: &[Vec<i64>]) -> Result<IntPoly> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::domain("characteristic polynomial needs a square matrix"));
    }
    let target = charpoly_coefficient_bound(a) * 2u32 + 1u32;
    let mut primes = Vec::new();
    let mut modulus = BigUint::one();
    for p in primes_below_2_31() {
        if modulus > target {
            break;
        }
        primes.push(p);
        modulus *= p;
    }
    let residues: Vec<Vec<u64>> = primes.par_iter().map(|&p| charpoly_mod(a, p)).collect();

    let mut values: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut m = BigInt::one();
    for (&p, res) in primes.iter().zip(&residues) {
        let md = Modulus::new(p);
        let m_inv = md.inv((&m % p).to_u64().expect("reduced mod p"));
        for (v, &r) in values.iter_mut().zip(res) {
            let current = v.mod_floor(&BigInt::from(p)).to_u64().expect("reduced mod p");
            let t = md.mul((r + p - current) % p, m_inv);
            *v += &m * t;
        }
        m *= p;
    }
    let half = &m >> 1;
    for v in values.iter_mut() {
        if *v > half {
            *v -= &m;
        }
    }
    Ok(values)
}

/// `Π (x − θ)^mult`.
pub fn poly_from_roots(roots: &[(BigInt, usize)]) -> IntPoly {
    let mut poly = vec![BigInt::one()];
    for (theta, mult) in roots {
        for _ in 0..*mult {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (j, c) in poly.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * theta;
            }
            poly = next;
        }
    }
    poly
}

/// Divides by `(x − θ)`, returning the quotient and the remainder.
pub fn synthetic_division(poly: &[BigInt], theta: &BigInt) -> (IntPoly, BigInt) {
    let Some((lead, rest)) = poly.split_last() else {
        return (Vec::new(), BigInt::zero());
    };
    let mut quotient = vec![BigInt::zero(); rest.len()];
    let mut carry = lead.clone();
    for (j, c) in rest.iter().enumerate().rev() {
        quotient[j] = carry.clone();
        carry = c + &carry * theta;
    }
    (quotient, carry)
}

/// Divides `poly` by `Π (x − θ)^mult`, failing on any nonzero remainder.
pub fn divide_out_roots(poly: &[BigInt], roots: &[(BigInt, usize)]) -> Result<IntPoly> {
    let mut current = poly.to_vec();
    for (theta, mult) in roots {
        for step in 0..*mult {
            let (q, r) = synthetic_division(&current, theta);
            if !r.is_zero() {
                return Err(Error::verification(
                    "characteristic polynomial division",
                    format!("(x − {theta}) does not divide with multiplicity {}", step + 1),
                ));
            }
            current = q;
        }
    }
    Ok(current)
}

/// Integer roots in `[−bound, bound]` with multiplicities, ascending.
pub fn integer_roots(poly: &[BigInt], bound: u64) -> Vec<(BigInt, usize)> {
    let mut current = poly.to_vec();
    let mut roots = Vec::new();
    for t in -(bound as i64)..=(bound as i64) {
        let theta = BigInt::from(t);
        let mut mult = 0;
        while current.len() > 1 {
            let (q, r) = synthetic_division(&current, &theta);
            if !r.is_zero() {
                break;
            }
            current = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((theta, mult));
        }
    }
    roots
}

/// Least eigenvalue of a symmetric integer matrix whose spectrum is integral.
/// Returns `None` when some eigenvalue is not an integer.
pub fn least_integer_eigenvalue(a: &[Vec<i64>]) -> Result<Option<i64>> {
    let poly = charpoly_integer(a)?;
    let bound = a
        .iter()
        .map(|r| r.iter().map(|x| x.unsigned_abs()).sum::<u64>())
        .max()
        .unwrap_or(0);
    let roots = integer_roots(&poly, bound);
    let total: usize = roots.iter().map(|(_, m)| m).sum();
    if total != a.len() {
        return Ok(None);
    }
    Ok(roots.first().and_then(|(t, _)| t.to_i64()))
}
