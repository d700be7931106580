//! Brute-force oracles shared by the integration tests. None of them uses
//! the walk, the semigroup recursion or the polytope helpers of the crate.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use deldec_core::delaunay::DelaunayCell;
use deldec_core::exact::{rat, ratio, LatticeVector, QuadraticForm, Rational};
use num_traits::{Signed, Zero};

/// Ten positive definite forms of rank one and two.
pub fn corpus() -> Vec<QuadraticForm> {
    let f = |rows: &[&[i64]]| QuadraticForm::from_i64(rows);
    let q = |rows: Vec<Vec<Rational>>| QuadraticForm::from_rows(rows).unwrap();
    vec![
        f(&[&[3]]),
        q(vec![vec![ratio(7, 2)]]),
        f(&[&[1, 0], &[0, 1]]),
        f(&[&[2, -1], &[-1, 2]]),
        f(&[&[2, 1], &[1, 2]]),
        f(&[&[3, 1], &[1, 2]]),
        f(&[&[3, -1], &[-1, 5]]),
        f(&[&[1, 0], &[0, 3]]),
        f(&[&[4, 1], &[1, 4]]),
        q(vec![vec![ratio(7, 3), ratio(1, 2)], vec![ratio(1, 2), rat(2)]]),
    ]
}

fn points(g: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..g {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn value(form: &QuadraticForm, x: &[i64]) -> Rational {
    let g = x.len();
    let mut s = Rational::zero();
    for i in 0..g {
        for j in 0..g {
            s += form.entry(i, j) * rat(x[i] * x[j]);
        }
    }
    s
}

/// Solves `w . a_k = B(a_k, a_k)` for `g <= 2` points by Cramer's rule.
fn sphere(form: &QuadraticForm, pts: &[&Vec<i64>]) -> Option<Vec<Rational>> {
    match pts.len() {
        1 => {
            let a = pts[0][0];
            (a != 0).then(|| vec![value(form, pts[0]) / rat(a)])
        }
        2 => {
            let (a, b) = (pts[0], pts[1]);
            let det = a[0] * b[1] - a[1] * b[0];
            if det == 0 {
                return None;
            }
            let (ra, rb) = (value(form, a), value(form, b));
            let d = rat(det);
            Some(vec![
                (&ra * rat(b[1]) - &rb * rat(a[1])) / &d,
                (&rb * rat(a[0]) - &ra * rat(b[0])) / &d,
            ])
        }
        _ => None,
    }
}

/// Maximal cells through the origin found by trying every sphere through
/// the origin and `g` lattice points of sup-norm at most `r`, keeping the
/// empty ones. Emptiness is tested on sup-norm at most `2r + 2`.
pub fn brute_force_star(form: &QuadraticForm, r: i64) -> BTreeSet<Vec<Vec<i64>>> {
    let g = form.rank();
    let near: Vec<Vec<i64>> = points(g, r).into_iter().filter(|p| p.iter().any(|&x| x != 0)).collect();
    let far = points(g, 2 * r + 2);
    let mut out = BTreeSet::new();
    let mut tried = HashSet::new();
    let choices: Vec<Vec<&Vec<i64>>> = if g == 1 {
        near.iter().map(|p| vec![p]).collect()
    } else {
        near.iter()
            .enumerate()
            .flat_map(|(i, a)| near[i + 1..].iter().map(move |b| vec![a, b]))
            .collect()
    };
    for pts in choices {
        let Some(w) = sphere(form, &pts) else { continue };
        if !tried.insert(w.clone()) {
            continue;
        }
        let q = |x: &Vec<i64>| value(form, x) - x.iter().zip(&w).map(|(a, b)| b * rat(*a)).sum::<Rational>();
        let mut on = Vec::new();
        let mut empty = true;
        for x in &far {
            let v = q(x);
            if v.is_negative() {
                empty = false;
                break;
            }
            if v.is_zero() {
                on.push(x.clone());
            }
        }
        if empty {
            on.sort();
            out.insert(on);
        }
    }
    out
}

fn in_cone(gens: &[&Vec<i64>], x: &[i64]) -> bool {
    if x.iter().all(|&c| c == 0) {
        return true;
    }
    match x.len() {
        1 => gens.iter().any(|v| v[0] * x[0] > 0),
        2 => {
            for v in gens {
                let cross = v[0] * x[1] - v[1] * x[0];
                if cross == 0 && v[0] * x[0] + v[1] * x[1] > 0 {
                    return true;
                }
            }
            for (i, a) in gens.iter().enumerate() {
                for b in &gens[i + 1..] {
                    let det = a[0] * b[1] - a[1] * b[0];
                    if det == 0 {
                        continue;
                    }
                    let la = x[0] * b[1] - x[1] * b[0];
                    let lb = a[0] * x[1] - a[1] * x[0];
                    if la * det >= 0 && lb * det >= 0 {
                        return true;
                    }
                }
            }
            false
        }
        _ => panic!("oracle covers ranks one and two"),
    }
}

/// Total generation by listing every sum of at most `degree` nonzero
/// vertices and comparing with the cone points of sup-norm at most `r`.
pub fn naive_totally_generating(cell: &[Vec<i64>], r: i64, degree: usize) -> bool {
    let g = cell[0].len();
    let gens: Vec<&Vec<i64>> = cell.iter().filter(|v| v.iter().any(|&c| c != 0)).collect();
    let mut reached: HashSet<Vec<i64>> = HashSet::from([vec![0; g]]);
    let mut layer = reached.clone();
    for _ in 0..degree {
        let mut next = HashSet::new();
        for p in &layer {
            for v in &gens {
                let s: Vec<i64> = p.iter().zip(v.iter()).map(|(a, b)| a + b).collect();
                if s.iter().all(|c| c.abs() <= 4 * r) && reached.insert(s.clone()) {
                    next.insert(s);
                }
            }
        }
        layer = next;
    }
    points(g, r)
        .iter()
        .filter(|x| in_cone(&gens, x))
        .all(|x| reached.contains(x))
}

pub fn cell_vertices(cell: &DelaunayCell) -> Vec<Vec<i64>> {
    cell.vertices.iter().map(|v| v.0.clone()).collect()
}

pub fn cell_of(vs: &[Vec<i64>]) -> DelaunayCell {
    DelaunayCell::new(vs.iter().map(|v| LatticeVector(v.clone())).collect())
}

/// `|det|` of the edge vectors from the first vertex, by cofactor expansion.
pub fn edge_determinant(cell: &[Vec<i64>]) -> i128 {
    let base = &cell[0];
    let rows: Vec<Vec<i128>> = cell[1..]
        .iter()
        .map(|v| v.iter().zip(base).map(|(a, b)| (a - b) as i128).collect())
        .collect();
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum()
    }
    if rows.len() != base.len() {
        return 0;
    }
    det(&rows).abs()
}
