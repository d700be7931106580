//! Delaunay cells of a positive definite form and the star `Del(0)` of all
//! maximal cells through the origin.
//!
//! A sphere through the origin is stored as a linear functional `w`, with
//! `q(e) = B(e, e) - w . e`; its center is `c = B^{-1} w / 2`. Empty spheres
//! have `q >= 0` on the lattice, and the cell is the zero set of `q`.
//!
//! The star is built by walking: starting from a sphere through the origin
//! alone, the sphere is pushed along a direction orthogonal to its current
//! vertices until it becomes full dimensional, and from each cell the walk
//! crosses every facet through the origin. Candidates are the lattice points
//! with `B(e, e) <= g * tr(B)`, which contains every vertex of every cell
//! through the origin since the squared circumradius is at most
//! `g * tr(B) / 4`. Each orbit representative is certified afterwards.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::enumerate::points_within;
use crate::error::{Error, Result};
use crate::exact::{integer_determinant, rat, LatticeVector, Matrix, QuadraticForm, Rational, RationalVector};
use crate::polytope::{affine_dimension, facets, linear_rank};

/// A Delaunay cell: its sorted vertex set, affine dimension and, when full
/// dimensional, its center and squared circumradius.
///
/// Equality, ordering and hashing look at the vertex set only.
#[derive(Clone, Debug)]
pub struct DelaunayCell {
    pub vertices: Vec<LatticeVector>,
    pub dim: usize,
    pub center: Option<RationalVector>,
    pub sq_radius: Option<Rational>,
}

impl DelaunayCell {
    /// A cell from its vertices, without center data.
    pub fn new(mut vertices: Vec<LatticeVector>) -> Self {
        vertices.sort();
        vertices.dedup();
        let dim = affine_dimension(&vertices);
        Self {
            vertices,
            dim,
            center: None,
            sq_radius: None,
        }
    }

    /// A cell with its center and radius for `form` when full dimensional.
    pub fn with_form(form: &QuadraticForm, vertices: Vec<LatticeVector>) -> Result<Self> {
        let mut cell = Self::new(vertices);
        if cell.dim == form.rank() && !cell.vertices.is_empty() {
            let (c, r2) = cell_center(form, &cell.vertices)?;
            cell.center = Some(c);
            cell.sq_radius = Some(r2);
        }
        Ok(cell)
    }

    pub fn rank(&self) -> usize {
        self.vertices.first().map_or(0, LatticeVector::dim)
    }

    pub fn contains_vertex(&self, v: &LatticeVector) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn contains_origin(&self) -> bool {
        self.vertices.iter().any(LatticeVector::is_zero)
    }

    /// The cell moved by `v`.
    pub fn translate(&self, v: &LatticeVector) -> Self {
        let vertices: Vec<LatticeVector> = self.vertices.iter().map(|a| a + v).collect();
        Self {
            vertices,
            dim: self.dim,
            center: self.center.as_ref().map(|c| c.add(&v.to_rational())),
            sq_radius: self.sq_radius.clone(),
        }
    }
}

impl PartialEq for DelaunayCell {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for DelaunayCell {}

impl PartialOrd for DelaunayCell {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DelaunayCell {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.vertices.cmp(&other.vertices)
    }
}

impl std::hash::Hash for DelaunayCell {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl fmt::Display for DelaunayCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ">")
    }
}

/// Center `c` and `r^2` of the ellipsoid through the given vertices:
/// `B(a - a_0, a - a_0) = 2 B(a - a_0, c - a_0)` for every vertex `a`.
pub fn cell_center(form: &QuadraticForm, vertices: &[LatticeVector]) -> Result<(RationalVector, Rational)> {
    let g = form.rank();
    let Some(base) = vertices.first() else {
        return Err(Error::Singular);
    };
    if let Some(v) = vertices.iter().find(|v| v.dim() != g) {
        return Err(Error::DimensionMismatch {
            expected: g,
            found: v.dim(),
        });
    }
    let rel: Vec<RationalVector> = vertices
        .iter()
        .map(|v| v - base)
        .filter(|v| !v.is_zero())
        .map(|v| v.to_rational())
        .collect();
    let mut aug = Matrix::zeros(rel.len(), g + 1);
    let two = rat(2);
    for (i, a) in rel.iter().enumerate() {
        let ba = form.matrix().mul_vec(a)?;
        for j in 0..g {
            aug[(i, j)] = &ba.0[j] * &two;
        }
        aug[(i, g)] = form.evaluate(a, a)?;
    }
    let pivots = aug.rref();
    if pivots.iter().filter(|&&p| p < g).count() < g {
        return Err(Error::Singular);
    }
    if pivots.contains(&g) {
        return Err(Error::NotCospherical);
    }
    let rel_center = RationalVector((0..g).map(|i| aug[(i, g)].clone()).collect());
    let r2 = form.evaluate(&rel_center, &rel_center)?;
    Ok((rel_center.add(&base.to_rational()), r2))
}

/// Reasons a cell fails the empty sphere test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotPositiveDefinite,
    NotFullDimensional,
    NotCospherical,
    /// A lattice point strictly inside the circumscribed ellipsoid.
    Inside(LatticeVector),
    /// A lattice point on the ellipsoid that is not a listed vertex.
    OnSphere(LatticeVector),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPositiveDefinite => write!(f, "form is not positive definite"),
            Violation::NotFullDimensional => write!(f, "cell is not full dimensional"),
            Violation::NotCospherical => write!(f, "not_cospherical"),
            Violation::Inside(e) => write!(f, "lattice point {e} inside the sphere"),
            Violation::OnSphere(e) => write!(f, "lattice point {e} on the sphere but not a vertex"),
        }
    }
}

/// Outcome of an exhaustive empty sphere check.
#[derive(Clone, Debug)]
pub struct EmptySphereCertificate {
    pub cell: DelaunayCell,
    /// Norm bound, relative to the first vertex, up to which every lattice
    /// point was examined.
    pub checked_norm_bound: Rational,
    pub violations: Vec<Violation>,
}

impl EmptySphereCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every lattice point `e` (relative to the first vertex) with
/// `B(e, e) <= 4 r^2`: `B(e, e) - 2 B(e, c) >= 0`, with equality exactly at
/// the vertices. Any violator lies in this range by the triangle inequality.
pub fn certify_cell(form: &QuadraticForm, cell: &DelaunayCell) -> EmptySphereCertificate {
    let mut cert = EmptySphereCertificate {
        cell: cell.clone(),
        checked_norm_bound: Rational::zero(),
        violations: Vec::new(),
    };
    if !form.is_positive_definite() {
        cert.violations.push(Violation::NotPositiveDefinite);
        return cert;
    }
    let Some(base) = cell.vertices.first() else {
        cert.violations.push(Violation::NotFullDimensional);
        return cert;
    };
    let (center, r2) = match cell_center(form, &cell.vertices) {
        Ok(x) => x,
        Err(Error::NotCospherical) => {
            cert.violations.push(Violation::NotCospherical);
            return cert;
        }
        Err(_) => {
            cert.violations.push(Violation::NotFullDimensional);
            return cert;
        }
    };
    cert.cell.center = Some(center.clone());
    cert.cell.sq_radius = Some(r2.clone());
    let rel_center = center.sub(&base.to_rational());
    let bc = form.matrix().mul_vec(&rel_center).expect("rank checked");
    let bound = &r2 * rat(4);
    let g = form.rank();
    let candidates = points_within(form, &RationalVector::zero(g), &bound).expect("definite");
    let rel_vertices: BTreeSet<LatticeVector> = cell.vertices.iter().map(|v| v - base).collect();
    for e in candidates {
        let cross = e
            .0
            .iter()
            .zip(&bc.0)
            .fold(Rational::zero(), |acc, (&x, y)| acc + y * rat(x));
        let q = form.norm(&e) - cross * rat(2);
        if q.is_negative() {
            cert.violations.push(Violation::Inside(&e + base));
        } else if q.is_zero() && !rel_vertices.contains(&e) {
            cert.violations.push(Violation::OnSphere(&e + base));
        }
    }
    cert.checked_norm_bound = bound;
    cert
}

/// The translate of the cell that puts its lexicographically least vertex
/// at the origin, so all other vertices are lexicographically positive.
pub fn canonical_orbit_rep(cell: &DelaunayCell) -> DelaunayCell {
    match cell.vertices.iter().min() {
        Some(m) => cell.translate(&-m),
        None => cell.clone(),
    }
}

/// `g + 1` vertices whose differences form a lattice basis.
pub fn is_basic_simplex(cell: &DelaunayCell) -> bool {
    let g = cell.rank();
    if cell.vertices.len() != g + 1 {
        return false;
    }
    let base = &cell.vertices[0];
    let rows: Vec<Vec<i64>> = cell.vertices[1..].iter().map(|v| (v - base).0).collect();
    integer_determinant(&rows).abs().is_one()
}

/// Maximal Delaunay cells through the origin.
#[derive(Clone, Debug)]
pub struct DelaunayStar {
    pub form: QuadraticForm,
    pub cells: Vec<DelaunayCell>,
    pub orbit_reps: Vec<DelaunayCell>,
}

impl DelaunayStar {
    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// Every facet through the origin of a star cell lies in exactly two
    /// star cells.
    pub fn is_locally_complete(&self) -> bool {
        locally_complete(&self.cells)
    }

    /// Certificates for the orbit representatives. Every star cell is a
    /// lattice translate of one of them, so this covers the whole star.
    pub fn certify(&self) -> Vec<EmptySphereCertificate> {
        self.orbit_reps.iter().map(|c| certify_cell(&self.form, c)).collect()
    }
}

fn facets_through_origin(vertices: &[LatticeVector]) -> Vec<Vec<LatticeVector>> {
    facets(vertices)
        .into_iter()
        .filter(|f| f.offset == 0)
        .map(|f| f.vertices.iter().map(|&i| vertices[i].clone()).collect())
        .collect()
}

fn locally_complete(cells: &[DelaunayCell]) -> bool {
    let mut count: BTreeMap<Vec<LatticeVector>, usize> = BTreeMap::new();
    for c in cells {
        if !c.contains_origin() {
            return false;
        }
        for f in facets_through_origin(&c.vertices) {
            *count.entry(f).or_default() += 1;
        }
    }
    count.values().all(|&n| n == 2)
}

/// Computes `Del(0)` for a positive definite form of rank 1 to 4.
pub fn delaunay_star(form: &QuadraticForm) -> Result<DelaunayStar> {
    let g = form.rank();
    if !(1..=4).contains(&g) {
        return Err(Error::UnsupportedRank(g));
    }
    if !form.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let (bz, _) = form.integer_scaled();
    let trace = (0..g).fold(Rational::zero(), |acc, i| acc + form.entry(i, i));
    let mut bound = trace * rat(g as i64);
    for _ in 0..4 {
        let points = points_within(form, &RationalVector::zero(g), &bound)?;
        let walked = match walk::<i128>(&bz, &points) {
            Err(WalkError::Overflow) => walk::<BigInt>(&bz, &points),
            r => r,
        };
        if let Ok(vertex_sets) = walked {
            let star = assemble(form, vertex_sets)?;
            if star.is_locally_complete() && star.certify().iter().all(EmptySphereCertificate::passed) {
                return Ok(star);
            }
        }
        bound *= rat(4);
    }
    Err(Error::CertificationFailed {
        radius: bound.to_integer().to_i64().unwrap_or(i64::MAX),
    })
}

fn assemble(form: &QuadraticForm, vertex_sets: Vec<Vec<LatticeVector>>) -> Result<DelaunayStar> {
    let mut cells = vertex_sets
        .into_iter()
        .map(|vs| DelaunayCell::with_form(form, vs))
        .collect::<Result<Vec<_>>>()?;
    cells.sort();
    let reps: BTreeSet<DelaunayCell> = cells.iter().map(canonical_orbit_rep).collect();
    Ok(DelaunayStar {
        form: form.clone(),
        cells,
        orbit_reps: reps.into_iter().collect(),
    })
}

#[derive(Debug)]
enum WalkError {
    Overflow,
    Incomplete,
}

struct Overflow;

impl From<Overflow> for WalkError {
    fn from(_: Overflow) -> Self {
        WalkError::Overflow
    }
}

/// Integer arithmetic for the walk: checked `i128` first, `BigInt` when
/// that overflows.
trait Ring: Clone + Ord + Sized {
    fn lift(x: &BigInt) -> std::result::Result<Self, Overflow>;
    fn small(x: i64) -> Self;
    fn plus(&self, o: &Self) -> std::result::Result<Self, Overflow>;
    fn minus(&self, o: &Self) -> std::result::Result<Self, Overflow>;
    fn times(&self, o: &Self) -> std::result::Result<Self, Overflow>;
    fn gcd_with(&self, o: &Self) -> Self;
    fn exact_div(&self, o: &Self) -> Self;
}

impl Ring for i128 {
    fn lift(x: &BigInt) -> std::result::Result<Self, Overflow> {
        x.to_i128().ok_or(Overflow)
    }
    fn small(x: i64) -> Self {
        x as i128
    }
    fn plus(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn minus(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn times(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn gcd_with(&self, o: &Self) -> Self {
        self.gcd(o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Ring for BigInt {
    fn lift(x: &BigInt) -> std::result::Result<Self, Overflow> {
        Ok(x.clone())
    }
    fn small(x: i64) -> Self {
        BigInt::from(x)
    }
    fn plus(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        Ok(self + o)
    }
    fn minus(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        Ok(self - o)
    }
    fn times(&self, o: &Self) -> std::result::Result<Self, Overflow> {
        Ok(self * o)
    }
    fn gcd_with(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Sphere through the origin with functional `num / den` (`den > 0`) for
/// the integer-scaled form.
#[derive(Clone)]
struct Sphere<T> {
    num: Vec<T>,
    den: T,
}

struct Scanner<T> {
    points: Vec<LatticeVector>,
    norms: Vec<T>,
}

impl<T: Ring> Scanner<T> {
    fn new(bz: &[Vec<BigInt>], points: &[LatticeVector]) -> std::result::Result<Self, Overflow> {
        let norms = points
            .iter()
            .map(|p| {
                let mut acc = BigInt::zero();
                for (i, row) in bz.iter().enumerate() {
                    for (j, b) in row.iter().enumerate() {
                        acc += b * (p.0[i] * p.0[j]);
                    }
                }
                T::lift(&acc)
            })
            .collect::<std::result::Result<Vec<T>, Overflow>>()?;
        Ok(Self {
            points: points.to_vec(),
            norms,
        })
    }

    /// `den * q(e)`.
    fn excess(&self, s: &Sphere<T>, k: usize) -> std::result::Result<T, Overflow> {
        let mut acc = s.den.times(&self.norms[k])?;
        for (w, &c) in s.num.iter().zip(&self.points[k].0) {
            if c != 0 {
                acc = acc.minus(&w.times(&T::small(c))?)?;
            }
        }
        Ok(acc)
    }

    fn vertices(&self, s: &Sphere<T>) -> std::result::Result<Vec<LatticeVector>, Overflow> {
        let zero = T::small(0);
        let mut out = Vec::new();
        for k in 0..self.points.len() {
            if self.excess(s, k)? == zero {
                out.push(self.points[k].clone());
            }
        }
        out.sort();
        Ok(out)
    }

    /// Grows the sphere along `n` until it meets a new point with
    /// `n . e > 0`. Vertices orthogonal to `n` stay on the sphere.
    fn advance(&self, s: &Sphere<T>, n: &[i64]) -> std::result::Result<Sphere<T>, WalkError> {
        let mut best: Option<(T, T)> = None;
        for k in 0..self.points.len() {
            let q = self.points[k].dot(n);
            if q <= 0 {
                continue;
            }
            let p = self.excess(s, k)?;
            let q = T::small(q);
            let better = match &best {
                None => true,
                Some((bp, bq)) => p.times(bq)? < bp.times(&q)?,
            };
            if better {
                best = Some((p, q));
            }
        }
        let (p, q) = best.ok_or(WalkError::Incomplete)?;
        let mut num = Vec::with_capacity(n.len());
        for (w, &c) in s.num.iter().zip(n) {
            num.push(w.times(&q)?.plus(&p.times(&T::small(c))?)?);
        }
        let den = s.den.times(&q)?;
        let g = num.iter().fold(den.clone(), |acc, x| acc.gcd_with(x));
        Ok(Sphere {
            num: num.iter().map(|x| x.exact_div(&g)).collect(),
            den: den.exact_div(&g),
        })
    }
}

/// A primitive integer vector orthogonal to all of `vs`.
fn orthogonal_direction(vs: &[LatticeVector], g: usize) -> Vec<i64> {
    let mut rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.to_rational().0).collect();
    rows.push(vec![Rational::zero(); g]);
    let m = Matrix::from_rows(rows).expect("uniform rows");
    let v = m.nullspace().into_iter().next().expect("rank below g");
    let l = v.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v
        .0
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer().to_i64().expect("small normal"))
        .collect();
    LatticeVector(ints).primitive().0
}

fn walk<T: Ring>(bz: &[Vec<BigInt>], points: &[LatticeVector]) -> std::result::Result<Vec<Vec<LatticeVector>>, WalkError> {
    let g = bz.len();
    let scanner = Scanner::<T>::new(bz, points)?;
    let mut sphere = Sphere {
        num: vec![T::small(0); g],
        den: T::small(1),
    };
    let mut verts = scanner.vertices(&sphere)?;
    while linear_rank(&verts) < g {
        let n = orthogonal_direction(&verts, g);
        sphere = scanner.advance(&sphere, &n)?;
        verts = scanner.vertices(&sphere)?;
    }
    let mut seen: BTreeSet<Vec<LatticeVector>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(verts.clone());
    queue.push_back((verts, sphere));
    while let Some((vs, s)) = queue.pop_front() {
        for f in facets(&vs).into_iter().filter(|f| f.offset == 0) {
            let next = scanner.advance(&s, &f.normal)?;
            let nv = scanner.vertices(&next)?;
            if seen.insert(nv.clone()) {
                queue.push_back((nv, next));
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    fn a2() -> QuadraticForm {
        QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]])
    }

    fn v1_sample() -> QuadraticForm {
        QuadraticForm::from_i64(&[
            &[4, -1, -1, -1],
            &[-1, 4, -1, -1],
            &[-1, -1, 4, -1],
            &[-1, -1, -1, 4],
        ])
    }

    fn cell(vs: &[&[i64]]) -> DelaunayCell {
        DelaunayCell::new(vs.iter().map(|v| lv(v)).collect())
    }

    #[test]
    fn center_examples() {
        let sq = [lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1]), lv(&[1, 1])];
        let (c, r2) = cell_center(&QuadraticForm::identity(2), &sq).unwrap();
        assert_eq!(c, RationalVector(vec![ratio(1, 2), ratio(1, 2)]));
        assert_eq!(r2, ratio(1, 2));

        let s1 = [lv(&[0, 0]), lv(&[1, 0]), lv(&[1, 1])];
        let (c, r2) = cell_center(&a2(), &s1).unwrap();
        assert_eq!(c, RationalVector(vec![ratio(2, 3), ratio(1, 3)]));
        assert_eq!(r2, ratio(2, 3));

        assert_eq!(cell_center(&a2(), &sq), Err(Error::NotCospherical));
        assert_eq!(cell_center(&a2(), &[lv(&[0, 0]), lv(&[1, 0])]), Err(Error::Singular));
    }

    #[test]
    fn center_of_translated_cell() {
        let s = [lv(&[3, -2]), lv(&[4, -2]), lv(&[4, -1])];
        let (c, r2) = cell_center(&a2(), &s).unwrap();
        assert_eq!(c, RationalVector(vec![ratio(11, 3), ratio(-5, 3)]));
        assert_eq!(r2, ratio(2, 3));
    }

    #[test]
    fn certify_examples() {
        let sigma1234 = cell(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 1, 1]]);
        assert!(certify_cell(&v1_sample(), &sigma1234).passed());

        let sq = cell(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let cert = certify_cell(&a2(), &sq);
        assert_eq!(cert.violations, vec![Violation::NotCospherical]);

        let seg = cell(&[&[0], &[2]]);
        let cert = certify_cell(&QuadraticForm::identity(1), &seg);
        assert_eq!(cert.violations, vec![Violation::Inside(lv(&[1]))]);

        // A non-Delaunay triangle of the square lattice: the fourth corner
        // lies on its circle.
        let tri = cell(&[&[0, 0], &[1, 0], &[0, 1]]);
        let cert = certify_cell(&QuadraticForm::identity(2), &tri);
        assert_eq!(cert.violations, vec![Violation::OnSphere(lv(&[1, 1]))]);
    }

    #[test]
    fn canonical_rep_examples() {
        let c = canonical_orbit_rep(&cell(&[&[1, 0], &[1, 1]]));
        assert_eq!(c.vertices, vec![lv(&[0, 0]), lv(&[0, 1])]);

        let s1 = cell(&[&[0, 0], &[1, 0], &[1, 1]]);
        assert_eq!(canonical_orbit_rep(&s1), s1);

        // Oracle: all three translates putting a vertex at the origin; the
        // representative is the one whose other vertices are all
        // lexicographically positive.
        let s4 = cell(&[&[1, 0], &[0, 1], &[1, 1]]);
        let translates: Vec<DelaunayCell> = s4.vertices.iter().map(|v| s4.translate(&-v)).collect();
        let positive: Vec<&DelaunayCell> = translates
            .iter()
            .filter(|t| t.vertices.iter().all(|v| v.is_zero() || v > &lv(&[0, 0])))
            .collect();
        assert_eq!(positive.len(), 1);
        assert_eq!(&canonical_orbit_rep(&s4), positive[0]);
        let rep = canonical_orbit_rep(&s4);
        assert_eq!(canonical_orbit_rep(&rep), rep);
    }

    #[test]
    fn basic_simplex_examples() {
        let sigma1234 = cell(&[&[0, 0, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0], &[1, 1, 1, 0], &[1, 1, 1, 1]]);
        assert!(is_basic_simplex(&sigma1234));
        assert!(!is_basic_simplex(&cell(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])));
        assert!(is_basic_simplex(&cell(&[&[1, 0], &[0, 1], &[1, 1]])));
        assert!(!is_basic_simplex(&cell(&[&[0, 0], &[2, 1], &[1, 2]])));
    }

    #[test]
    fn star_dim1() {
        let star = delaunay_star(&QuadraticForm::identity(1)).unwrap();
        assert_eq!(star.cells, vec![cell(&[&[-1], &[0]]), cell(&[&[0], &[1]])]);
        assert_eq!(star.orbit_reps, vec![cell(&[&[0], &[1]])]);
        assert!(star.is_locally_complete());
    }

    #[test]
    fn star_a2() {
        let star = delaunay_star(&a2()).unwrap();
        assert_eq!(star.cells.len(), 6);
        assert_eq!(
            star.orbit_reps,
            vec![cell(&[&[0, 0], &[0, 1], &[1, 1]]), cell(&[&[0, 0], &[1, 0], &[1, 1]])]
        );
        for c in &star.cells {
            assert!(c.contains_origin());
            assert_eq!(c.sq_radius, Some(ratio(2, 3)));
        }
    }

    #[test]
    fn star_square_lattice() {
        let star = delaunay_star(&QuadraticForm::identity(2)).unwrap();
        assert_eq!(star.cells.len(), 4);
        assert_eq!(star.orbit_reps, vec![cell(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]])]);
    }

    #[test]
    fn star_v1_has_all_staircases() {
        let star = delaunay_star(&v1_sample()).unwrap();
        assert_eq!(star.orbit_reps.len(), 24);
        assert_eq!(star.cells.len(), 120);
        let mut want = BTreeSet::new();
        for p in permutations4() {
            let mut vs = vec![LatticeVector::zero(4)];
            for k in 1..=4 {
                vs.push(LatticeVector::from_indices(4, &p[..k]));
            }
            want.insert(canonical_orbit_rep(&DelaunayCell::new(vs)));
        }
        let got: BTreeSet<DelaunayCell> = star.orbit_reps.iter().cloned().collect();
        assert_eq!(got, want);
        assert!(star.orbit_reps.iter().all(is_basic_simplex));
    }

    fn permutations4() -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    for d in 1..=4 {
                        let p = vec![a, b, c, d];
                        let set: BTreeSet<_> = p.iter().collect();
                        if set.len() == 4 {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn star_rejects_bad_input() {
        let semi = QuadraticForm::from_i64(&[&[1, -1], &[-1, 1]]);
        assert!(matches!(delaunay_star(&semi), Err(Error::NotPositiveDefinite)));
        assert!(matches!(
            delaunay_star(&QuadraticForm::identity(5)),
            Err(Error::UnsupportedRank(5))
        ));
    }

    #[test]
    fn star_rational_form() {
        let f = QuadraticForm::from_rows(vec![
            vec![ratio(1, 2), ratio(-1, 3)],
            vec![ratio(-1, 3), ratio(5, 7)],
        ])
        .unwrap();
        let star = delaunay_star(&f).unwrap();
        assert!(star.is_locally_complete());
        assert!(star.certify().iter().all(EmptySphereCertificate::passed));
    }
}
