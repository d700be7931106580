//! Exact rational scalars, lattice and rational vectors, symmetric forms and
//! the small amount of dense linear algebra the rest of the crate needs.
//!
//! Everything here is exact. Ranks never exceed four in practice, so
//! matrices are stored densely as rows of [`Rational`].

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Text encoding `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// A point of the lattice `Z^g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// `s_i`, with 1-based index as in the usual basis notation.
    pub fn unit(rank: usize, index: usize) -> Self {
        Self::from_indices(rank, &[index])
    }

    /// `s_I = sum_{i in I} s_i` for a set of 1-based indices.
    pub fn from_indices(rank: usize, indices: &[usize]) -> Self {
        let mut v = vec![0; rank];
        for &i in indices {
            assert!(i >= 1 && i <= rank, "basis index {i} out of range");
            v[i - 1] += 1;
        }
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(|&x| rat(x)).collect())
    }

    /// Divides out the gcd of the coordinates.
    pub fn primitive(&self) -> Self {
        let g = self.0.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return self.clone();
        }
        Self(self.0.iter().map(|&x| x / g).collect())
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A point of `Q^g`; houses holes and centers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn zero(rank: usize) -> Self {
        Self(vec![Rational::zero(); rank])
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense rational matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
        .expect("ragged integer matrix literal")
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RationalVector) -> Result<RationalVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(RationalVector(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect(),
        ))
    }

    pub fn scale(&self, k: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pivot;
                for c in col..n {
                    let v = &f * &a[(col, c)];
                    a[(r, c)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self[(row, col)].recip();
            for c in col..self.cols {
                self[(row, c)] *= &inv;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in col..self.cols {
                    let v = &f * &self[(row, c)];
                    self[(r, c)] -= v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<RationalVector> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    x[p] = -m[(r, f)].clone();
                }
                RationalVector(x)
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Solves `M x = b` for square invertible `M`.
pub fn solve_linear(m: &Matrix, b: &RationalVector) -> Result<RationalVector> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if b.dim() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: b.dim(),
        });
    }
    let n = m.rows();
    let mut aug = Matrix::zeros(n, n + 1);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = b.0[i].clone();
    }
    let pivots = aug.rref();
    if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
        return Err(Error::Singular);
    }
    Ok(RationalVector((0..n).map(|i| aug[(i, n)].clone()).collect()))
}

/// Definiteness class of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
}

/// A symmetric bilinear form on `Z^g`, given by its Gram matrix
/// `B(s_i, s_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    entries: Matrix,
}

impl QuadraticForm {
    pub fn new(entries: Matrix) -> Result<Self> {
        if entries.rows() != entries.cols() {
            return Err(Error::NotSquare {
                rows: entries.rows(),
                cols: entries.cols(),
            });
        }
        for i in 0..entries.rows() {
            for j in i + 1..entries.cols() {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(Matrix::from_rows(rows)?)
    }

    /// Panics on non-symmetric input; intended for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::new(Matrix::from_i64(rows)).expect("symmetric integer literal")
    }

    pub fn identity(rank: usize) -> Self {
        Self {
            entries: Matrix::identity(rank),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            entries: Matrix::zeros(rank, rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[(i, j)]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        self.entries.to_rows()
    }

    /// `x^T B y`.
    pub fn evaluate(&self, x: &RationalVector, y: &RationalVector) -> Result<Rational> {
        let g = self.rank();
        for v in [x, y] {
            if v.dim() != g {
                return Err(Error::DimensionMismatch {
                    expected: g,
                    found: v.dim(),
                });
            }
        }
        let mut acc = Rational::zero();
        for i in 0..g {
            if x.0[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..g {
                if !y.0[j].is_zero() {
                    row += &self.entries[(i, j)] * &y.0[j];
                }
            }
            acc += &x.0[i] * row;
        }
        Ok(acc)
    }

    pub fn evaluate_lattice(&self, x: &LatticeVector, y: &LatticeVector) -> Result<Rational> {
        self.evaluate(&x.to_rational(), &y.to_rational())
    }

    /// `B(x, x)` for a lattice vector.
    pub fn norm(&self, x: &LatticeVector) -> Rational {
        self.evaluate_lattice(x, x).expect("dimension checked by caller")
    }

    /// Exact classification by symmetric elimination with diagonal pivoting.
    pub fn definiteness(&self) -> Definiteness {
        let n = self.rank();
        let mut a = self.entries.clone();
        let mut remaining: Vec<usize> = (0..n).collect();
        let mut saw_zero_pivot = false;
        while !remaining.is_empty() {
            // Pick any nonzero diagonal entry among the remaining indices.
            let pick = remaining
                .iter()
                .position(|&i| !a[(i, i)].is_zero());
            let Some(pos) = pick else {
                // All remaining diagonal entries vanish: the residual block
                // must be zero, otherwise a 2x2 minor is negative.
                for &i in &remaining {
                    for &j in &remaining {
                        if !a[(i, j)].is_zero() {
                            return Definiteness::Indefinite;
                        }
                    }
                }
                saw_zero_pivot = true;
                break;
            };
            let p = remaining.remove(pos);
            let pivot = a[(p, p)].clone();
            if pivot.is_negative() {
                return Definiteness::Indefinite;
            }
            for &i in &remaining {
                if a[(i, p)].is_zero() {
                    continue;
                }
                let f = &a[(i, p)] / &pivot;
                for &j in &remaining {
                    let v = &f * &a[(p, j)];
                    a[(i, j)] -= v;
                }
            }
        }
        if saw_zero_pivot {
            Definiteness::PositiveSemidefinite
        } else {
            Definiteness::PositiveDefinite
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.definiteness() == Definiteness::PositiveDefinite
    }

    /// `A^T B A`.
    pub fn congruence(&self, a: &Matrix) -> Result<QuadraticForm> {
        if a.rows() != self.rank() || a.cols() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: a.rows(),
            });
        }
        if a.determinant()?.is_zero() {
            return Err(Error::Singular);
        }
        let m = a.transpose().mul(&self.entries)?.mul(a)?;
        QuadraticForm::new(m)
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.rank() != other.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        let mut m = self.entries.clone();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                m[(i, j)] += &other.entries[(i, j)];
            }
        }
        Ok(QuadraticForm { entries: m })
    }

    pub fn scale(&self, k: &Rational) -> QuadraticForm {
        QuadraticForm {
            entries: self.entries.scale(k),
        }
    }

    /// Upper-triangular entries `(b_11, b_12, .., b_1g, b_22, ..)`; the
    /// coordinates used when forms are treated as points of a cone.
    pub fn upper_coordinates(&self) -> Vec<Rational> {
        let g = self.rank();
        let mut out = Vec::with_capacity(g * (g + 1) / 2);
        for i in 0..g {
            for j in i..g {
                out.push(self.entries[(i, j)].clone());
            }
        }
        out
    }

    /// A positive multiple of the form with integer entries, together with
    /// the multiplier. Delaunay decompositions are invariant under positive
    /// scaling, so the engine works with this matrix.
    pub fn integer_scaled(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let g = self.rank();
        let mut l = BigInt::one();
        for i in 0..g {
            for j in 0..g {
                l = l.lcm(self.entries[(i, j)].denom());
            }
        }
        let rows = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        let e = &self.entries[(i, j)];
                        e.numer() * (&l / e.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, l)
    }

    /// Multiplies by the lcm of denominators and divides by the gcd of
    /// numerators, giving the primitive integral form on the same ray.
    pub fn primitive_integral(&self) -> Vec<Vec<BigInt>> {
        let (rows, _) = self.integer_scaled();
        let mut g = BigInt::zero();
        for r in &rows {
            for x in r {
                g = g.gcd(x);
            }
        }
        if g.is_zero() {
            return rows;
        }
        rows.into_iter()
            .map(|r| r.into_iter().map(|x| x / &g).collect())
            .collect()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rank() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.rank() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Integer determinant of a square matrix given by rows (Bareiss).
pub fn integer_determinant(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

pub fn to_i64(x: &BigInt) -> Option<i64> {
    x.to_i64()
}
