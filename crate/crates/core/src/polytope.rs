//! Exact geometry of small lattice point sets: facets, pulling
//! triangulations, lattice-normalized volume and separation tests.
//!
//! Point sets here have at most a few dozen points in dimension at most
//! four, so facets are found by brute force over affinely independent
//! subsets. Arithmetic is in `i128`, which is ample for coordinates of the
//! size the Delaunay engine produces.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;

use crate::exact::LatticeVector;

/// A supporting hyperplane `normal . x <= offset` of a full-dimensional
/// point set, with the indices of the points it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: Vec<usize>,
}

impl Facet {
    pub fn contains(&self, p: &LatticeVector) -> bool {
        p.dot(&self.normal) == self.offset
    }
}

/// A facet `normal . x >= 0` of a pointed cone, with the indices of the rays
/// on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeFacet {
    pub normal: Vec<i64>,
    pub rays: Vec<usize>,
}

fn widen(v: &LatticeVector) -> Vec<i128> {
    v.0.iter().map(|&x| x as i128).collect()
}

/// Determinant by fraction-free elimination.
pub fn det_i128(rows: &[Vec<i128>]) -> i128 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    let mut a = rows.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let (x, y) = (a[rank][col], a[r][col]);
            let mut g = 0i128;
            for c in 0..cols {
                a[r][c] = a[r][c] * x - a[rank][c] * y;
                g = g.gcd(&a[r][c]);
            }
            if g > 1 {
                a[r].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

pub fn linear_rank(vectors: &[LatticeVector]) -> usize {
    let rows: Vec<Vec<i128>> = vectors.iter().map(widen).collect();
    rank_i128(&rows)
}

/// Affine dimension of a nonempty point set.
pub fn affine_dimension(points: &[LatticeVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<LatticeVector> = points[1..].iter().map(|p| p - first).collect();
    linear_rank(&diffs)
}

/// Primitive normal of the hyperplane spanned by `g - 1` vectors in `Z^g`
/// (generalized cross product); the zero vector when they are dependent.
fn normal_of(vectors: &[Vec<i128>], g: usize) -> Vec<i128> {
    debug_assert_eq!(vectors.len() + 1, g);
    let mut n: Vec<i128> = (0..g)
        .map(|k| {
            let minor: Vec<Vec<i128>> = vectors
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect())
                .collect();
            let d = det_i128(&minor);
            if k % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let g = n.iter().fold(0i128, |acc, x| acc.gcd(x));
    if g > 1 {
        n.iter_mut().for_each(|x| *x /= g);
    }
    n
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn narrow(v: Vec<i128>) -> Vec<i64> {
    v.into_iter()
        .map(|x| i64::try_from(x).expect("normal coordinate fits i64"))
        .collect()
}

/// All facets of a full-dimensional point set in `Z^g`, sorted.
pub fn facets(points: &[LatticeVector]) -> Vec<Facet> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let g = first.dim();
    let wide: Vec<Vec<i128>> = points.iter().map(widen).collect();
    let mut found = BTreeSet::new();
    for subset in (0..points.len()).combinations(g) {
        let base = &wide[subset[0]];
        let diffs: Vec<Vec<i128>> = subset[1..]
            .iter()
            .map(|&i| wide[i].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let n = normal_of(&diffs, g);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let off = dot128(&n, base);
        let vals: Vec<i128> = wide.iter().map(|p| dot128(&n, p) - off).collect();
        let (n, off) = if vals.iter().all(|&v| v <= 0) {
            (n, off)
        } else if vals.iter().all(|&v| v >= 0) {
            (n.iter().map(|x| -x).collect(), -off)
        } else {
            continue;
        };
        let on: Vec<usize> = (0..points.len()).filter(|&i| vals[i] == 0).collect();
        found.insert(Facet {
            normal: narrow(n),
            offset: i64::try_from(off).expect("offset fits i64"),
            vertices: on,
        });
    }
    found.into_iter().collect()
}

/// Whether `x` satisfies every facet inequality.
pub fn inside(facets: &[Facet], x: &LatticeVector) -> bool {
    facets.iter().all(|f| x.dot(&f.normal) <= f.offset)
}

/// Facets of the pointed cone generated by `rays` (assumed to span `R^g`).
pub fn cone_facets(rays: &[LatticeVector]) -> Vec<ConeFacet> {
    let Some(first) = rays.first() else {
        return Vec::new();
    };
    let g = first.dim();
    let wide: Vec<Vec<i128>> = rays.iter().map(widen).collect();
    let mut found = BTreeSet::new();
    for subset in (0..rays.len()).combinations(g - 1) {
        let vs: Vec<Vec<i128>> = subset.iter().map(|&i| wide[i].clone()).collect();
        let n = normal_of(&vs, g);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let vals: Vec<i128> = wide.iter().map(|r| dot128(&n, r)).collect();
        let n = if vals.iter().all(|&v| v >= 0) {
            n
        } else if vals.iter().all(|&v| v <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let on: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] == 0).collect();
        found.insert(ConeFacet {
            normal: narrow(n),
            rays: on,
        });
    }
    found.into_iter().collect()
}

pub fn in_cone(facets: &[ConeFacet], x: &LatticeVector) -> bool {
    facets.iter().all(|f| x.dot(&f.normal) >= 0)
}

/// Pulling triangulation of a full-dimensional point set: `first` is pulled
/// first, then the remaining points in index order. Returns simplices as
/// sorted index lists; every simplex contains `first`.
pub fn pulling_triangulation(points: &[LatticeVector], first: usize) -> Vec<Vec<usize>> {
    let g = points.first().map_or(0, LatticeVector::dim);
    let fs = facets(points);
    let all: Vec<usize> = (0..points.len()).collect();
    let mut out = Vec::new();
    pull(points, &fs, &all, g, first, &mut out);
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    out
}

fn pull(
    points: &[LatticeVector],
    fs: &[Facet],
    face: &[usize],
    dim: usize,
    first: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if face.len() == dim + 1 {
        out.push(face.to_vec());
        return;
    }
    let apex = if face.contains(&first) { first } else { face[0] };
    let mut subfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in fs {
        let sub: Vec<usize> = face.iter().copied().filter(|i| f.vertices.contains(i)).collect();
        if sub.contains(&apex) || sub.len() < dim {
            continue;
        }
        let pts: Vec<LatticeVector> = sub.iter().map(|&i| points[i].clone()).collect();
        if affine_dimension(&pts) + 1 == dim {
            subfaces.insert(sub);
        }
    }
    for sub in subfaces {
        let mut inner = Vec::new();
        pull(points, fs, &sub, dim - 1, first, &mut inner);
        for mut s in inner {
            s.push(apex);
            out.push(s);
        }
    }
}

/// `|det(a_1 - a_0, .., a_g - a_0)|` of a simplex.
pub fn simplex_normalized_volume(simplex: &[LatticeVector]) -> i128 {
    let base = widen(&simplex[0]);
    let rows: Vec<Vec<i128>> = simplex[1..]
        .iter()
        .map(|p| widen(p).iter().zip(&base).map(|(a, b)| a - b).collect())
        .collect();
    det_i128(&rows).abs()
}

/// `g!` times the Euclidean volume; a basic simplex has volume one.
pub fn normalized_volume(points: &[LatticeVector]) -> i128 {
    pulling_triangulation(points, 0)
        .iter()
        .map(|s| {
            let pts: Vec<LatticeVector> = s.iter().map(|&i| points[i].clone()).collect();
            simplex_normalized_volume(&pts)
        })
        .sum()
}

/// Whether the vectors lie in a closed half-space through the origin, that
/// is, whether some nonzero `l` has `l . d >= 0` for all of them.
pub fn in_closed_halfspace(vectors: &[Vec<i128>], g: usize) -> bool {
    if rank_i128(vectors) < g {
        return true;
    }
    if g == 1 {
        return vectors.iter().all(|v| v[0] >= 0) || vectors.iter().all(|v| v[0] <= 0);
    }
    let distinct: Vec<Vec<i128>> = vectors
        .iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    for subset in (0..distinct.len()).combinations(g - 1) {
        let vs: Vec<Vec<i128>> = subset.iter().map(|&i| distinct[i].clone()).collect();
        let n = normal_of(&vs, g);
        if n.iter().all(|&x| x == 0) {
            continue;
        }
        let vals = distinct.iter().map(|d| dot128(&n, d));
        let (mut pos, mut neg) = (false, false);
        for v in vals {
            pos |= v > 0;
            neg |= v < 0;
            if pos && neg {
                break;
            }
        }
        if !(pos && neg) {
            return true;
        }
    }
    false
}

/// Two polytopes (given by points) have disjoint interiors iff the origin is
/// not interior to their difference body.
pub fn interiors_disjoint(p: &[LatticeVector], q: &[LatticeVector]) -> bool {
    let g = p.first().or(q.first()).map_or(0, LatticeVector::dim);
    let diffs: Vec<Vec<i128>> = p
        .iter()
        .flat_map(|a| q.iter().map(move |b| widen(&(a - b))))
        .collect();
    in_closed_halfspace(&diffs, g)
}

/// Two cones (given by rays) have disjoint interiors iff some hyperplane
/// through the origin separates them.
pub fn cone_interiors_disjoint(a: &[LatticeVector], b: &[LatticeVector]) -> bool {
    let g = a.first().or(b.first()).map_or(0, LatticeVector::dim);
    let vs: Vec<Vec<i128>> = a
        .iter()
        .map(widen)
        .chain(b.iter().map(|v| widen(&-v)))
        .collect();
    in_closed_halfspace(&vs, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<LatticeVector> {
        v.iter().map(|c| LatticeVector(c.to_vec())).collect()
    }

    #[test]
    fn square_facets_and_triangulation() {
        let sq = pts(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let fs = facets(&sq);
        assert_eq!(fs.len(), 4);
        let tri = pulling_triangulation(&sq, 0);
        assert_eq!(tri, vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(normalized_volume(&sq), 2);
    }

    #[test]
    fn octahedron_volume() {
        let oct = pts(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ]);
        assert_eq!(facets(&oct).len(), 8);
        // Euclidean volume 4/3, times 3! = 8.
        assert_eq!(normalized_volume(&oct), 8);
        for s in pulling_triangulation(&oct, 0) {
            assert!(s.contains(&0));
        }
    }

    #[test]
    fn cube_triangulation_covers_volume() {
        let mut cube = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        cube.push(LatticeVector(vec![a, b, c, d]));
                    }
                }
            }
        }
        assert_eq!(facets(&cube).len(), 8);
        assert_eq!(normalized_volume(&cube), 24);
    }

    #[test]
    fn cone_facets_of_quadrant() {
        let rays = pts(&[&[1, 0], &[0, 1], &[1, 1]]);
        let fs = cone_facets(&rays);
        assert_eq!(fs.len(), 2);
        assert!(in_cone(&fs, &LatticeVector(vec![3, 5])));
        assert!(!in_cone(&fs, &LatticeVector(vec![-1, 5])));
    }

    #[test]
    fn disjointness() {
        let a = pts(&[&[0, 0], &[1, 0], &[1, 1]]);
        let b = pts(&[&[0, 0], &[0, 1], &[1, 1]]);
        let c = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(interiors_disjoint(&a, &b));
        assert!(!interiors_disjoint(&a, &c));
        // Touching at a single vertex.
        let d = pts(&[&[1, 1], &[2, 1], &[2, 2]]);
        assert!(interiors_disjoint(&a, &d));
        assert!(cone_interiors_disjoint(&pts(&[&[1, 0], &[1, 1]]), &pts(&[&[0, 1], &[1, 1]])));
        assert!(!cone_interiors_disjoint(&pts(&[&[1, 0], &[0, 1]]), &pts(&[&[1, 1], &[1, 2]])));
    }

    #[test]
    fn one_dimensional_cases() {
        let seg = pts(&[&[0], &[2]]);
        assert_eq!(facets(&seg).len(), 2);
        assert_eq!(normalized_volume(&seg), 2);
        let fs = cone_facets(&pts(&[&[2]]));
        assert_eq!(fs.len(), 1);
        assert!(interiors_disjoint(&pts(&[&[0], &[1]]), &pts(&[&[-1], &[0]])));
        assert!(!interiors_disjoint(&pts(&[&[0], &[2]]), &pts(&[&[1], &[3]])));
    }
}
