//! Semigroup generation of the cone `C(0, sigma)` over a lattice cell.
//!
//! A cell through the origin is totally generating when every lattice point
//! of its cone is a nonnegative integer combination of the cell's vertices.
//! It is simplicially generating when it splits into pieces through the
//! origin that are totally generating and whose cones tile its cone.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::delaunay::DelaunayCell;
use crate::error::{Error, Result};
use crate::exact::{integer_determinant, LatticeVector, Matrix, Rational};
use crate::polytope::{
    affine_dimension, cone_facets, cone_interiors_disjoint, facets, in_cone, inside, interiors_disjoint,
    linear_rank, pulling_triangulation, ConeFacet,
};

/// The cone over a cell at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeAtZero {
    /// Primitive extremal rays, sorted.
    pub rays: Vec<LatticeVector>,
    /// Generators of the semigroup: the nonzero vertices of the cell.
    pub lattice_points: Vec<LatticeVector>,
    facets: Vec<ConeFacet>,
}

impl ConeAtZero {
    pub fn facets(&self) -> &[ConeFacet] {
        &self.facets
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        in_cone(&self.facets, x)
    }

    /// A linear form positive on every nonzero point of the cone.
    pub fn grading(&self) -> Vec<i64> {
        let g = self.rays.first().map_or(0, LatticeVector::dim);
        let mut l = vec![0i64; g];
        for f in &self.facets {
            for (a, b) in l.iter_mut().zip(&f.normal) {
                *a += b;
            }
        }
        l
    }
}

fn require_origin(cell: &DelaunayCell) -> Result<()> {
    if cell.contains_origin() {
        Ok(())
    } else {
        Err(Error::OriginNotVertex)
    }
}

fn require_full(cell: &DelaunayCell) -> Result<()> {
    let g = cell.rank();
    if cell.dim != g {
        return Err(Error::NotFullDimensional { dim: cell.dim, rank: g });
    }
    Ok(())
}

/// Extremal rays of `C(0, cell)`.
pub fn cone_rays(cell: &DelaunayCell) -> Result<ConeAtZero> {
    require_origin(cell)?;
    require_full(cell)?;
    let g = cell.rank();
    let lattice_points: Vec<LatticeVector> = cell.vertices.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut dirs: Vec<LatticeVector> = lattice_points.iter().map(LatticeVector::primitive).collect();
    dirs.sort();
    dirs.dedup();
    let fs = cone_facets(&dirs);
    let rays: Vec<LatticeVector> = dirs
        .iter()
        .filter(|r| {
            let normals: Vec<LatticeVector> = fs
                .iter()
                .filter(|f| r.dot(&f.normal) == 0)
                .map(|f| LatticeVector(f.normal.clone()))
                .collect();
            linear_rank(&normals) + 1 == g
        })
        .cloned()
        .collect();
    let facets = cone_facets(&rays);
    Ok(ConeAtZero {
        rays,
        lattice_points,
        facets,
    })
}

/// Lattice points of the half-open parallelepiped spanned by independent
/// rays, sorted.
pub fn parallelepiped_points(rays: &[LatticeVector]) -> Result<Vec<LatticeVector>> {
    let g = rays.first().map_or(0, LatticeVector::dim);
    if rays.len() != g || g == 0 || linear_rank(rays) < g {
        return Err(Error::DependentRays);
    }
    // Columns of V are the rays; lambda = V^{-1} x = adj(V) x / det.
    let v = Matrix::from_rows(
        (0..g)
            .map(|i| rays.iter().map(|r| Rational::from_integer(r.0[i].into())).collect())
            .collect(),
    )?;
    let det = v.determinant()?;
    let adj = v.inverse()?.scale(&det);
    let det: i128 = det.to_integer().try_into().expect("small determinant");
    let sign = det.signum();
    let adj: Vec<Vec<i128>> = (0..g)
        .map(|i| {
            (0..g)
                .map(|j| adj[(i, j)].to_integer().try_into().expect("small adjugate"))
                .collect()
        })
        .collect();
    let lo: Vec<i64> = (0..g).map(|j| rays.iter().map(|r| r.0[j].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..g).map(|j| rays.iter().map(|r| r.0[j].max(0)).sum()).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let inside = adj.iter().all(|row| {
            let t = sign * row.iter().zip(&x).map(|(a, &b)| a * b as i128).sum::<i128>();
            t >= 0 && t < det.abs()
        });
        if inside {
            out.push(LatticeVector(x.clone()));
        }
        let mut k = 0;
        loop {
            if k == g {
                out.sort();
                return Ok(out);
            }
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k];
            k += 1;
        }
    }
}

/// Membership in the semigroup generated by `generators` inside a pointed
/// cone. Recursion on `x - s` terminates because the grading drops by at
/// least one at every step; results are memoized.
pub struct Semigroup {
    generators: Vec<LatticeVector>,
    facets: Vec<ConeFacet>,
    memo: RefCell<HashMap<LatticeVector, bool>>,
}

impl Semigroup {
    pub fn new(cone: &ConeAtZero) -> Self {
        Self {
            generators: cone.lattice_points.clone(),
            facets: cone.facets.clone(),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        if x.is_zero() {
            return true;
        }
        if !in_cone(&self.facets, x) {
            return false;
        }
        if let Some(&known) = self.memo.borrow().get(x) {
            return known;
        }
        let found = self.generators.iter().any(|s| self.contains(&(x - s)));
        self.memo.borrow_mut().insert(x.clone(), found);
        found
    }
}

/// Certified answer about nilpotency: one when simplicial generation holds,
/// otherwise not decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nilpotency {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub totally_generating: bool,
    /// A lattice point of the cone outside the semigroup.
    pub witness: Option<LatticeVector>,
    /// The pieces through the origin used for simplicial generation.
    pub pieces: Vec<DelaunayCell>,
    pub simplicially_generating: Option<bool>,
    /// Which condition failed, when simplicial generation fails.
    pub failure: Option<String>,
}

impl GenerationReport {
    pub fn nilpotency(&self) -> Nilpotency {
        if self.simplicially_generating == Some(true) {
            Nilpotency::One
        } else {
            Nilpotency::Unknown
        }
    }
}

/// Smallest non-member by grading then lexicographic order, if any.
fn generation_witness(cell: &DelaunayCell) -> Result<Option<LatticeVector>> {
    let cone = cone_rays(cell)?;
    let semi = Semigroup::new(&cone);
    let l = cone.grading();
    let origin = cell
        .vertices
        .iter()
        .position(LatticeVector::is_zero)
        .expect("origin checked");
    let mut witness: Option<(i64, LatticeVector)> = None;
    for simplex in pulling_triangulation(&cell.vertices, origin) {
        let gens: Vec<LatticeVector> = simplex
            .iter()
            .filter(|&&i| i != origin)
            .map(|&i| cell.vertices[i].clone())
            .collect();
        for p in parallelepiped_points(&gens)? {
            if semi.contains(&p) {
                continue;
            }
            let key = (p.dot(&l), p);
            if witness.as_ref().is_none_or(|w| key < *w) {
                witness = Some(key);
            }
        }
    }
    Ok(witness.map(|(_, p)| p))
}

/// Whether `C(0, cell) ∩ X` is generated by the vertices of the cell.
pub fn is_totally_generating(cell: &DelaunayCell) -> Result<GenerationReport> {
    let witness = generation_witness(cell)?;
    Ok(GenerationReport {
        totally_generating: witness.is_none(),
        witness,
        pieces: Vec::new(),
        simplicially_generating: None,
        failure: None,
    })
}

fn pieces_through_origin(pieces: &[DelaunayCell]) -> Vec<DelaunayCell> {
    let mut out: Vec<DelaunayCell> = pieces.iter().filter(|p| p.contains_origin()).cloned().collect();
    out.sort();
    out.dedup();
    out
}

/// `|det V| / prod l(v_i)` summed over the simplicial cones of a pulling
/// triangulation at the origin: `g!` times the volume of the cone cut by
/// `l <= 1`.
fn section_volume(cell: &DelaunayCell, l: &[i64]) -> Rational {
    let origin = cell
        .vertices
        .iter()
        .position(LatticeVector::is_zero)
        .expect("origin vertex");
    pulling_triangulation(&cell.vertices, origin)
        .iter()
        .map(|s| {
            let gens: Vec<Vec<i64>> = s.iter().filter(|&&i| i != origin).map(|&i| cell.vertices[i].0.clone()).collect();
            let heights: i64 = gens.iter().map(|v| LatticeVector(v.clone()).dot(l)).product();
            Rational::new(integer_determinant(&gens).magnitude().clone().into(), heights.into())
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Lattice points up to this sup-norm are spot-checked for coverage, on
/// top of the exact volume argument.
const COVER_SPOT_RADIUS: i64 = 3;

/// Whether the cones over the pieces through the origin tile `C(0, coarse)`:
/// their rays lie in it, their interiors are pairwise disjoint and their
/// sections by `l <= 1` add up to its section.
pub fn cone_cover_check(coarse: &DelaunayCell, pieces: &[DelaunayCell]) -> bool {
    cover_failure(coarse, pieces).is_none()
}

fn cover_failure(coarse: &DelaunayCell, pieces: &[DelaunayCell]) -> Option<String> {
    let Ok(cone) = cone_rays(coarse) else {
        return Some("coarse cell is not a full-dimensional cell through the origin".into());
    };
    let selected = pieces_through_origin(pieces);
    if selected.is_empty() {
        return Some("no piece contains the origin".into());
    }
    let mut cones = Vec::with_capacity(selected.len());
    for p in &selected {
        let Ok(c) = cone_rays(p) else {
            return Some(format!("piece {p} is not full dimensional"));
        };
        if let Some(r) = c.rays.iter().find(|r| !cone.contains(r)) {
            return Some(format!("ray {r} of piece {p} leaves the coarse cone"));
        }
        cones.push(c);
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            if !cone_interiors_disjoint(&cones[i].rays, &cones[j].rays) {
                return Some(format!("cones over {} and {} overlap", selected[i], selected[j]));
            }
        }
    }
    let l = cone.grading();
    let total = selected
        .iter()
        .map(|p| section_volume(p, &l))
        .fold(Rational::zero(), |a, b| a + b);
    let whole = section_volume(coarse, &l);
    if total != whole {
        return Some(format!("piece cones have section volume {total}, coarse cone {whole}"));
    }
    let g = coarse.rank();
    let mut x = vec![-COVER_SPOT_RADIUS; g];
    loop {
        let p = LatticeVector(x.clone());
        if cone.contains(&p) && !cones.iter().any(|c| c.contains(&p)) {
            return Some(format!("lattice point {p} of the coarse cone is not covered"));
        }
        let mut k = 0;
        loop {
            if k == g {
                return None;
            }
            x[k] += 1;
            if x[k] <= COVER_SPOT_RADIUS {
                break;
            }
            x[k] = -COVER_SPOT_RADIUS;
            k += 1;
        }
    }
}

/// Decides simplicial generation of `cell` by the pieces of a refinement
/// that contain the origin.
pub fn is_simplicially_generating(cell: &DelaunayCell, pieces: &[DelaunayCell]) -> Result<GenerationReport> {
    require_origin(cell)?;
    require_full(cell)?;
    let g = cell.rank();
    let fs = facets(&cell.vertices);
    for p in pieces {
        if p.rank() != g || affine_dimension(&p.vertices) != g {
            return Err(Error::NotARefinement(format!("piece {p} is not full dimensional")));
        }
        if let Some(v) = p.vertices.iter().find(|v| !inside(&fs, v)) {
            return Err(Error::NotARefinement(format!("vertex {v} of piece {p} lies outside {cell}")));
        }
    }
    let own = generation_witness(cell)?;
    let selected = pieces_through_origin(pieces);
    let mut failure = None;
    let mut witness = None;
    'pairs: for i in 0..selected.len() {
        for j in i + 1..selected.len() {
            if !interiors_disjoint(&selected[i].vertices, &selected[j].vertices) {
                failure = Some(format!("pieces {} and {} overlap", selected[i], selected[j]));
                break 'pairs;
            }
        }
    }
    if failure.is_none() {
        for p in &selected {
            if let Some(w) = generation_witness(p)? {
                failure = Some(format!("piece {p} is not totally generating"));
                witness = Some(w);
                break;
            }
        }
    }
    if failure.is_none() {
        failure = cover_failure(cell, &selected);
    }
    Ok(GenerationReport {
        totally_generating: own.is_none(),
        witness: witness.or(own),
        simplicially_generating: Some(failure.is_none()),
        pieces: selected,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector(c.to_vec())
    }

    fn cell(vs: &[&[i64]]) -> DelaunayCell {
        DelaunayCell::new(vs.iter().map(|v| lv(v)).collect())
    }

    fn sigma(order: [usize; 4]) -> DelaunayCell {
        let mut vs = vec![LatticeVector::zero(4)];
        for k in 1..=4 {
            vs.push(LatticeVector::from_indices(4, &order[..k]));
        }
        DelaunayCell::new(vs)
    }

    fn sigma1() -> DelaunayCell {
        cell(&[&[0, 0], &[1, 0], &[1, 1]])
    }
    fn sigma2() -> DelaunayCell {
        cell(&[&[0, 0], &[0, 1], &[1, 1]])
    }
    fn sigma3() -> DelaunayCell {
        cell(&[&[0, 0], &[1, 0], &[0, 1]])
    }
    fn sigma4() -> DelaunayCell {
        cell(&[&[1, 0], &[0, 1], &[1, 1]])
    }
    fn sigma5() -> DelaunayCell {
        cell(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn rays_examples() {
        assert_eq!(cone_rays(&sigma1()).unwrap().rays, vec![lv(&[1, 0]), lv(&[1, 1])]);
        assert_eq!(cone_rays(&sigma5()).unwrap().rays, vec![lv(&[0, 1]), lv(&[1, 0])]);
        let rays = cone_rays(&sigma([1, 2, 3, 4])).unwrap().rays;
        assert_eq!(
            rays,
            vec![lv(&[1, 0, 0, 0]), lv(&[1, 1, 0, 0]), lv(&[1, 1, 1, 0]), lv(&[1, 1, 1, 1])]
        );
        assert_eq!(cone_rays(&sigma4()), Err(Error::OriginNotVertex));
    }

    #[test]
    fn parallelepiped_examples() {
        assert_eq!(parallelepiped_points(&[lv(&[1, 0]), lv(&[1, 1])]).unwrap(), vec![lv(&[0, 0])]);
        // Oracle: brute force over [0, 2)^2 with lambda = V^{-1} x.
        let mut want = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                // x = l1 (1,0) + l2 (1,2): l2 = b/2, l1 = a - b/2.
                let (l1, l2) = (2 * a - b, b);
                if (0..2).contains(&l1) && (0..2).contains(&l2) {
                    want.push(lv(&[a, b]));
                }
            }
        }
        assert_eq!(parallelepiped_points(&[lv(&[1, 0]), lv(&[1, 2])]).unwrap(), want);
        assert_eq!(want, vec![lv(&[0, 0]), lv(&[1, 1])]);
        assert_eq!(parallelepiped_points(&[lv(&[2])]).unwrap(), vec![lv(&[0]), lv(&[1])]);
        assert_eq!(
            parallelepiped_points(&[lv(&[1, 1]), lv(&[2, 2])]),
            Err(Error::DependentRays)
        );
    }

    #[test]
    fn total_generation_examples() {
        assert!(is_totally_generating(&sigma([1, 2, 3, 4])).unwrap().totally_generating);
        assert!(is_totally_generating(&sigma5()).unwrap().totally_generating);
        let tau = cell(&[&[0, 0], &[1, 0], &[1, 2]]);
        let r = is_totally_generating(&tau).unwrap();
        assert!(!r.totally_generating);
        assert_eq!(r.witness, Some(lv(&[1, 1])));
    }

    #[test]
    fn simplicial_generation_examples() {
        let r = is_simplicially_generating(&sigma5(), &[sigma1(), sigma2()]).unwrap();
        assert_eq!(r.simplicially_generating, Some(true));
        assert_eq!(r.pieces, vec![sigma2(), sigma1()]);
        assert_eq!(r.nilpotency(), Nilpotency::One);

        let r = is_simplicially_generating(&sigma5(), &[sigma3(), sigma4()]).unwrap();
        assert_eq!(r.simplicially_generating, Some(true));
        assert_eq!(r.pieces, vec![sigma3()]);

        let s = sigma([2, 4, 1, 3]);
        let r = is_simplicially_generating(&s, std::slice::from_ref(&s)).unwrap();
        assert_eq!(r.simplicially_generating, Some(true));
    }

    #[test]
    fn not_a_refinement() {
        let big = cell(&[&[0, 0], &[2, 0], &[0, 2]]);
        assert!(matches!(
            is_simplicially_generating(&sigma1(), &[big]),
            Err(Error::NotARefinement(_))
        ));
    }

    #[test]
    fn cover_examples() {
        assert!(cone_cover_check(&sigma5(), &[sigma1(), sigma2()]));
        assert!(cone_cover_check(&sigma5(), &[sigma3()]));
        assert!(!cone_cover_check(&sigma5(), &[sigma1()]));
        assert!(!cone_cover_check(&sigma5(), &[sigma1(), sigma3()]));
        let a = sigma([1, 2, 3, 4]);
        let b = sigma([2, 1, 3, 4]);
        let mut fused: Vec<LatticeVector> = a.vertices.clone();
        fused.extend(b.vertices.iter().cloned());
        let fused = DelaunayCell::new(fused);
        assert_eq!(fused.vertices.len(), 6);
        assert!(cone_cover_check(&fused, &[a.clone(), b.clone()]));
        assert!(cone_cover_check(&fused, &[b, a]));
    }

    #[test]
    fn semigroup_is_closed_under_addition() {
        let tau = cell(&[&[0, 0], &[1, 0], &[1, 2]]);
        let cone = cone_rays(&tau).unwrap();
        let semi = Semigroup::new(&cone);
        let pts: Vec<LatticeVector> = (0..5)
            .flat_map(|a| (0..5).map(move |b| lv(&[a, b])))
            .filter(|p| semi.contains(p))
            .collect();
        for x in &pts {
            for y in &pts {
                assert!(semi.contains(&(x + y)));
            }
        }
        assert!(!semi.contains(&lv(&[1, 1])));
        assert!(semi.contains(&lv(&[2, 2])));
    }
}
