mod common;

use std::collections::BTreeSet;

use common::{brute_force_star, cell_of, cell_vertices, corpus, naive_totally_generating};
use deldec_core::catalog::catalog_entries;
use deldec_core::delaunay::{canonical_orbit_rep, delaunay_star};
use deldec_core::generation::is_totally_generating;
use deldec_core::verify::{Sampling, StarCache};

#[test]
fn star_agrees_with_brute_force_on_corpus() {
    for form in corpus() {
        let star = delaunay_star(&form).unwrap();
        let got: BTreeSet<Vec<Vec<i64>>> = star.cells.iter().map(cell_vertices).collect();
        let want = brute_force_star(&form, 3);
        assert_eq!(got, want, "form {:?}", form.to_rows());
    }
}

#[test]
fn total_generation_agrees_on_corpus_cells() {
    for form in corpus() {
        for cell in delaunay_star(&form).unwrap().cells {
            let ours = is_totally_generating(&cell).unwrap().totally_generating;
            assert_eq!(ours, naive_totally_generating(&cell_vertices(&cell), 4, 16), "{cell}");
        }
    }
}

#[test]
fn total_generation_agrees_on_lattice_triangles() {
    let cells: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![0, 0], vec![1, 0], vec![1, 2]],
        vec![vec![0, 0], vec![1, 0], vec![1, 3]],
        vec![vec![0, 0], vec![2, 1], vec![1, 2]],
        vec![vec![0, 0], vec![1, 0], vec![0, 1]],
        vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]],
        vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![1, 2]],
        vec![vec![0, 0], vec![3, 1], vec![1, 3], vec![1, 1]],
        vec![vec![0, 0], vec![-1, 2], vec![2, -1]],
        vec![vec![0], vec![2]],
        vec![vec![-1], vec![0]],
    ];
    for vs in cells {
        let cell = cell_of(&vs);
        let report = is_totally_generating(&cell).unwrap();
        assert_eq!(report.totally_generating, naive_totally_generating(&vs, 4, 16), "{cell}");
        assert_eq!(report.witness.is_none(), report.totally_generating);
    }
}

#[test]
fn samples_with_different_weights_agree() {
    let ones = StarCache::new(Sampling::Ones);
    let ramp = StarCache::new(Sampling::Ramp);
    for cone in catalog_entries().iter().filter(|c| c.voronoi) {
        let reps = |cache: &StarCache| -> BTreeSet<_> {
            cache
                .star(&cone.name)
                .unwrap()
                .orbit_reps
                .iter()
                .map(canonical_orbit_rep)
                .collect()
        };
        assert_eq!(reps(&ones), reps(&ramp), "{}", cone.name);
    }
}
