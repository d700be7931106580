//! End-to-end checks: fusion of cells when a form moves from a cone to one
//! of its faces, the two fusion tables of rank four, and the verification
//! suites built on top of them.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::rc::Rc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::catalog::{catalog, sample_interior, verify_matrix_identities, NamedCone};
use crate::delaunay::{canonical_orbit_rep, certify_cell, delaunay_star, is_basic_simplex, DelaunayCell, DelaunayStar};
use crate::error::{Error, Result};
use crate::exact::{rat, LatticeVector, QuadraticForm, Rational};
use crate::faces::{
    cone_type, enumerate_faces, face_of_cone, group_g, group_generators, orbit_classify, OrbitName, Shape,
    SignedPair, VoronoiType,
};
use crate::generation::{cone_rays, is_simplicially_generating, Nilpotency};
use crate::polytope::{interiors_disjoint, normalized_volume};

/// Interior weights for the generators of a cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Every weight one.
    Ones,
    /// Weights `1, 2, 3, ...`.
    Ramp,
}

impl Sampling {
    pub fn weights(self, n: usize) -> Vec<Rational> {
        match self {
            Sampling::Ones => vec![rat(1); n],
            Sampling::Ramp => (1..=n as i64).map(rat).collect(),
        }
    }
}

/// Stars of interior samples of catalog cones, computed once each.
pub struct StarCache {
    sampling: Sampling,
    stars: RefCell<BTreeMap<String, Rc<DelaunayStar>>>,
}

impl StarCache {
    pub fn new(sampling: Sampling) -> Self {
        Self {
            sampling,
            stars: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn sampling(&self) -> Sampling {
        self.sampling
    }

    pub fn form(&self, cone: &NamedCone) -> Result<QuadraticForm> {
        sample_interior(cone, &self.sampling.weights(cone.generators.len()))
    }

    pub fn star(&self, name: &str) -> Result<Rc<DelaunayStar>> {
        if let Some(s) = self.stars.borrow().get(name) {
            return Ok(Rc::clone(s));
        }
        let star = Rc::new(delaunay_star(&self.form(&catalog(name)?)?)?);
        self.stars.borrow_mut().insert(name.to_string(), Rc::clone(&star));
        Ok(star)
    }
}

/// The translate whose coordinatewise minimum is zero. Two cells are
/// translates of each other iff these agree.
pub fn cube_normal(cell: &DelaunayCell) -> DelaunayCell {
    let Some(first) = cell.vertices.first() else {
        return cell.clone();
    };
    let t: Vec<i64> = (0..first.dim())
        .map(|k| cell.vertices.iter().map(|v| v.0[k]).min().expect("nonempty"))
        .collect();
    cell.translate(&-&LatticeVector(t))
}

/// `<0, s_a, s_ab, s_abc, ..., s_12..g>` for a permutation `order` of `1..=g`.
pub fn staircase(order: &[usize]) -> DelaunayCell {
    let g = order.len();
    let vs = (0..=g).map(|k| LatticeVector::from_indices(g, &order[..k])).collect();
    DelaunayCell::new(vs)
}

fn vertex_name(v: &LatticeVector) -> Option<String> {
    if v.0.iter().any(|&x| x != 0 && x != 1) {
        return None;
    }
    if v.is_zero() {
        return Some("0".into());
    }
    let idx: String = v.0.iter().enumerate().filter(|(_, &x)| x == 1).map(|(i, _)| (i + 1).to_string()).collect();
    Some(format!("s{idx}"))
}

/// Name of a cell up to translation: `σabcd` for a staircase of rank four,
/// otherwise the vertex list `⟨0,s1,s12,...⟩` of its 0/1 translate, or the
/// raw coordinates.
pub fn cell_name(cell: &DelaunayCell) -> String {
    let c = cube_normal(cell);
    let g = c.rank();
    if g == 4 && c.vertices.len() == 5 {
        for p in (1..=4).permutations(4) {
            if staircase(&p) == c {
                return format!("σ{}", p.iter().join(""));
            }
        }
    }
    let names: Option<Vec<(usize, String)>> = c
        .vertices
        .iter()
        .map(|v| vertex_name(v).map(|n| (v.0.iter().sum::<i64>() as usize, n)))
        .collect();
    match names {
        Some(mut ns) => {
            ns.sort();
            format!("⟨{}⟩", ns.into_iter().map(|(_, n)| n).join(","))
        }
        None => c.to_string(),
    }
}

fn parse_vertex(text: &str, rank: usize) -> Result<LatticeVector> {
    let t = text.trim();
    if t == "0" {
        return Ok(LatticeVector::zero(rank));
    }
    let digits = t
        .strip_prefix('s')
        .ok_or_else(|| Error::Parse(format!("bad vertex '{t}'")))?;
    let mut idx = Vec::new();
    for ch in digits.chars() {
        let d = ch
            .to_digit(10)
            .map(|d| d as usize)
            .filter(|d| (1..=rank).contains(d))
            .ok_or_else(|| Error::Parse(format!("bad vertex '{t}'")))?;
        idx.push(d);
    }
    if idx.is_empty() || idx.iter().duplicates().next().is_some() {
        return Err(Error::Parse(format!("bad vertex '{t}'")));
    }
    Ok(LatticeVector::from_indices(rank, &idx))
}

/// Parses `σabcd`, `sigmaabcd` or a vertex list `⟨0,s1,s12⟩` (also with
/// `<`, `>`).
pub fn parse_cell_name(text: &str, rank: usize) -> Result<DelaunayCell> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('σ').or_else(|| t.strip_prefix("sigma")) {
        let order: Vec<usize> = rest
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad staircase name '{t}'")))?;
        let sorted: Vec<usize> = order.iter().copied().sorted().collect();
        if sorted != (1..=rank).collect::<Vec<_>>() {
            return Err(Error::Parse(format!("'{t}' is not a permutation of 1..{rank}")));
        }
        return Ok(staircase(&order));
    }
    let inner = t
        .strip_prefix('⟨')
        .or_else(|| t.strip_prefix('<'))
        .and_then(|s| s.strip_suffix('⟩').or_else(|| s.strip_suffix('>')))
        .ok_or_else(|| Error::Parse(format!("bad cell '{t}'")))?;
    let vs = inner.split(',').map(|v| parse_vertex(v, rank)).collect::<Result<Vec<_>>>()?;
    Ok(DelaunayCell::new(vs))
}

/// Parses `A ∪ B ∪ ...` (also `A u B`) into its parts.
pub fn parse_union(text: &str, rank: usize) -> Result<Vec<DelaunayCell>> {
    text.split('∪')
        .flat_map(|p| p.split(" u "))
        .map(|p| parse_cell_name(p, rank))
        .collect()
}

fn union_cell(parts: &[DelaunayCell]) -> DelaunayCell {
    DelaunayCell::new(parts.iter().flat_map(|p| p.vertices.iter().cloned()).collect())
}

/// One orbit representative of the coarse star and the fine cells, placed
/// inside it, that tile it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fusion {
    pub coarse: DelaunayCell,
    pub pieces: Vec<DelaunayCell>,
}

#[derive(Clone, Debug)]
pub struct FusionReport {
    pub coarse_cone: String,
    pub fine_cone: String,
    /// Coarse cells made of two or more fine cells.
    pub fusions: Vec<Fusion>,
    /// Cells of both stars.
    pub unchanged: Vec<DelaunayCell>,
    pub volume_conserved: bool,
    pub problems: Vec<String>,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }

    /// Pieces of a coarse cell, placed inside that cell.
    pub fn pieces_of(&self, coarse: &DelaunayCell) -> Option<Vec<DelaunayCell>> {
        let rep = canonical_orbit_rep(coarse);
        let shift = coarse.vertices.iter().min()?.clone();
        let pieces = if let Some(f) = self.fusions.iter().find(|f| f.coarse == rep) {
            f.pieces.clone()
        } else if self.unchanged.contains(&rep) {
            vec![rep]
        } else {
            return None;
        };
        Some(pieces.iter().map(|p| p.translate(&shift)).collect())
    }

    /// `(coarse, pieces)` for every coarse orbit representative.
    pub fn groups(&self) -> Vec<Fusion> {
        let mut out = self.fusions.clone();
        out.extend(self.unchanged.iter().map(|c| Fusion {
            coarse: c.clone(),
            pieces: vec![c.clone()],
        }));
        out.sort_by(|a, b| a.coarse.cmp(&b.coarse));
        out
    }
}

/// Places the fine orbit representatives inside the coarse ones and checks
/// the tiling: each fine orbit used exactly once, pieces of a coarse cell
/// pairwise interior disjoint, and volumes adding up.
pub fn fusion_from_stars(
    coarse_cone: &str,
    fine_cone: &str,
    coarse: &DelaunayStar,
    fine: &DelaunayStar,
) -> Result<FusionReport> {
    if coarse.rank() != fine.rank() {
        return Err(Error::DimensionMismatch {
            expected: coarse.rank(),
            found: fine.rank(),
        });
    }
    let fine_reps: Vec<DelaunayCell> = fine.orbit_reps.iter().map(canonical_orbit_rep).collect();
    let mut used = vec![0usize; fine_reps.len()];
    let mut report = FusionReport {
        coarse_cone: coarse_cone.to_string(),
        fine_cone: fine_cone.to_string(),
        fusions: Vec::new(),
        unchanged: Vec::new(),
        volume_conserved: true,
        problems: Vec::new(),
    };
    let mut coarse_reps: Vec<DelaunayCell> = coarse.orbit_reps.iter().map(canonical_orbit_rep).collect();
    coarse_reps.sort();
    for c in coarse_reps {
        let mut pieces = BTreeSet::new();
        for (k, f) in fine_reps.iter().enumerate() {
            for t in &c.vertices {
                let moved = f.translate(t);
                if moved.vertices.iter().all(|v| c.contains_vertex(v)) && pieces.insert(moved) {
                    used[k] += 1;
                }
            }
        }
        let pieces: Vec<DelaunayCell> = pieces.into_iter().collect();
        if pieces.is_empty() {
            report.problems.push(format!("{c} contains no cell of {fine_cone}"));
            continue;
        }
        let whole = normalized_volume(&c.vertices);
        let sum: i128 = pieces.iter().map(|p| normalized_volume(&p.vertices)).sum();
        if whole != sum {
            report.volume_conserved = false;
            report.problems.push(format!("{c} has volume {whole} but its pieces add up to {sum}"));
        }
        for (a, b) in pieces.iter().tuple_combinations() {
            if !interiors_disjoint(&a.vertices, &b.vertices) {
                report.problems.push(format!("pieces {a} and {b} of {c} overlap"));
            }
        }
        if pieces.len() == 1 && pieces[0] == c {
            report.unchanged.push(c);
        } else {
            report.fusions.push(Fusion { coarse: c, pieces });
        }
    }
    for (f, n) in fine_reps.iter().zip(&used) {
        if *n != 1 {
            report.problems.push(format!("{f} of {fine_cone} lies in {n} coarse cells"));
        }
    }
    Ok(report)
}

/// Fusion of the cells of `fine` when its sample moves to the face `coarse`.
/// The generators of `coarse` must be among those of `fine`.
pub fn fusion_check(coarse: &str, fine: &str, cache: &StarCache) -> Result<FusionReport> {
    let c = catalog(coarse)?;
    let f = catalog(fine)?;
    if c.rank != f.rank || c.generators.iter().any(|g| !f.generators.contains(g)) {
        return Err(Error::Fusion(format!("{coarse} is not spanned by generators of {fine}")));
    }
    fusion_from_stars(coarse, fine, &*cache.star(coarse)?, &*cache.star(fine)?)
}

/// A table row in `σabcd` / `⟨0,s1,..⟩` notation. An empty middle continues the fused cell
/// of the previous row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub no: Option<u32>,
    pub left: String,
    pub middle: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub row: u32,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableDiff {
    pub which: u8,
    pub columns: [String; 3],
    pub expected: Vec<TableRow>,
    pub computed: Vec<TableRow>,
    /// Expected rows that disagree with the computation.
    pub mismatches: Vec<Mismatch>,
    /// Computed cells or groups no expected row accounts for.
    pub unaccounted: Vec<String>,
}

impl TableDiff {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unaccounted.is_empty()
    }
}

const TABLE1: &[RawRow] = &[
    (1, "σ1234", "σ1234 ∪ σ2134", "⟨0,s1,s2,s123,s1234⟩"),
    (2, "σ2134", "", "⟨s1,s2,s12,s123,s1234⟩"),
    (3, "σ1243", "σ1243 ∪ σ2143", "⟨0,s1,s2,s124,s1234⟩"),
    (4, "σ2143", "", "⟨s1,s2,s12,s124,s1234⟩"),
    (5, "σ3124", "σ3124 ∪ σ3214", "⟨0,s3,s13,s23,s1234⟩"),
    (6, "σ3214", "", "⟨0,s13,s23,s123,s1234⟩"),
    (7, "σ4123", "σ4123 ∪ σ4213", "⟨0,s4,s14,s24,s1234⟩"),
    (8, "σ4213", "", "⟨0,s14,s24,s124,s1234⟩"),
    (9, "σ3412", "σ3412 ∪ σ3421", "⟨0,s3,s34,s134,s234⟩"),
    (10, "σ3421", "", "⟨0,s3,s134,s234,s1234⟩"),
    (11, "σ4312", "σ4312 ∪ σ4321", "⟨0,s4,s34,s134,s234⟩"),
    (12, "σ4321", "", "⟨0,s4,s134,s234,s1234⟩"),
    (13, "σ1324", "σ1324", "σ1324"),
    (14, "σ1423", "σ1423", "σ1423"),
    (15, "σ2314", "σ2314", "σ2314"),
    (16, "σ2413", "σ2413", "σ2413"),
    (17, "σ1342", "σ1342", "σ1342"),
    (18, "σ1432", "σ1432", "σ1432"),
    (19, "σ2341", "σ2341", "σ2341"),
    (20, "σ2431", "σ2431", "σ2431"),
    (21, "σ3142", "σ3142", "σ3142"),
    (22, "σ4132", "σ4132", "σ4132"),
    (23, "σ3241", "σ3241", "σ3241"),
    (24, "σ4231", "σ4231", "σ4231"),
];

const TABLE2: &[RawRow] = &[
    (
        2,
        "⟨s1,s2,s12,s123,s1234⟩",
        "⟨s1,s2,s12,s123,s1234⟩ ∪ ⟨s1,s2,s12,s124,s1234⟩",
        "⟨s1,s2,s12,s123,s124⟩",
    ),
    (4, "⟨s1,s2,s12,s124,s1234⟩", "", "⟨s1,s2,s123,s124,s1234⟩"),
    (
        9,
        "⟨0,s3,s34,s134,s234⟩",
        "⟨0,s3,s34,s134,s234⟩ ∪ ⟨0,s4,s34,s134,s234⟩",
        "⟨0,s3,s4,s134,s234⟩",
    ),
    (11, "⟨0,s4,s34,s134,s234⟩", "", "⟨s3,s4,s34,s134,s234⟩"),
    (17, "σ1342", "σ1342 ∪ σ1432", "⟨0,s1,s13,s14,s1234⟩"),
    (18, "σ1432", "", "⟨0,s13,s14,s134,s1234⟩"),
    (19, "σ2341", "σ2341 ∪ σ2431", "⟨0,s2,s23,s24,s1234⟩"),
    (20, "σ2431", "", "⟨0,s23,s24,s234,s1234⟩"),
    (1, "⟨0,s1,s2,s123,s1234⟩", "⟨0,s1,s2,s123,s1234⟩", "⟨0,s1,s2,s123,s1234⟩"),
    (3, "⟨0,s1,s2,s124,s1234⟩", "⟨0,s1,s2,s124,s1234⟩", "⟨0,s1,s2,s124,s1234⟩"),
    (5, "⟨0,s3,s13,s23,s1234⟩", "⟨0,s3,s13,s23,s1234⟩", "⟨0,s3,s13,s23,s1234⟩"),
    (6, "⟨0,s13,s23,s123,s1234⟩", "⟨0,s13,s23,s123,s1234⟩", "⟨0,s13,s23,s123,s1234⟩"),
    (7, "⟨0,s4,s14,s24,s1234⟩", "⟨0,s4,s14,s24,s1234⟩", "⟨0,s4,s14,s24,s1234⟩"),
    (8, "⟨0,s14,s24,s124,s1234⟩", "⟨0,s14,s24,s124,s1234⟩", "⟨0,s14,s24,s124,s1234⟩"),
    (10, "⟨0,s3,s134,s234,s1234⟩", "⟨0,s3,s134,s234,s1234⟩", "⟨0,s3,s134,s234,s1234⟩"),
    (12, "⟨0,s4,s134,s234,s1234⟩", "⟨0,s4,s134,s234,s1234⟩", "⟨0,s4,s134,s234,s1234⟩"),
    (13, "σ1324", "σ1324", "σ1324"),
    (14, "σ1423", "σ1423", "σ1423"),
    (15, "σ2314", "σ2314", "σ2314"),
    (16, "σ2413", "σ2413", "σ2413"),
    (21, "σ3142", "σ3142", "σ3142"),
    (22, "σ4132", "σ4132", "σ4132"),
    (23, "σ3241", "σ3241", "σ3241"),
    (24, "σ4231", "σ4231", "σ4231"),
];

type RawRow = (u32, &'static str, &'static str, &'static str);

fn table_layout(which: u8) -> Result<(&'static [RawRow], [&'static str; 3])> {
    match which {
        1 => Ok((TABLE1, ["dim4.V1", "dim4.V1capV2", "dim4.V2"])),
        2 => Ok((TABLE2, ["dim4.V2", "dim4.V2capV3", "dim4.V3"])),
        _ => Err(Error::Parse(format!("there is no table {which}"))),
    }
}

/// The published rows of table 1 or 2.
pub fn expected_table(which: u8) -> Result<Vec<TableRow>> {
    let (rows, _) = table_layout(which)?;
    Ok(rows
        .iter()
        .map(|&(no, l, m, r)| TableRow {
            no: Some(no),
            left: l.into(),
            middle: m.into(),
            right: r.into(),
        })
        .collect())
}

/// Recomputes a table from the stars and compares it with the published
/// rows.
pub fn reproduce_table(which: u8, cache: &StarCache) -> Result<TableDiff> {
    reproduce_table_against(which, expected_table(which)?, cache)
}

struct Group {
    coarse: DelaunayCell,
    left: Vec<DelaunayCell>,
    right: Vec<DelaunayCell>,
}

/// As [`reproduce_table`], against the given expected rows.
pub fn reproduce_table_against(which: u8, expected: Vec<TableRow>, cache: &StarCache) -> Result<TableDiff> {
    let (_, cols) = table_layout(which)?;
    let [left_cone, mid_cone, right_cone] = cols;
    let left_fusion = fusion_check(mid_cone, left_cone, cache)?;
    let right_fusion = fusion_check(mid_cone, right_cone, cache)?;
    let lp = left_fusion.groups();
    let rp = right_fusion.groups();
    let mut groups = Vec::new();
    for (l, r) in lp.iter().zip(&rp) {
        if l.coarse != r.coarse {
            return Err(Error::Invariant("the two fusions see different coarse cells".into()));
        }
        groups.push(Group {
            coarse: cube_normal(&l.coarse),
            left: l.pieces.iter().map(cube_normal).collect(),
            right: r.pieces.iter().map(cube_normal).collect(),
        });
    }
    let computed = render_groups(&groups);

    let rank = 4;
    let table1_right: BTreeMap<u32, String> = TABLE1.iter().map(|&(n, _, _, r)| (n, r.to_string())).collect();
    let mut mismatches = Vec::new();
    let mut seen_left = BTreeSet::new();
    let mut seen_right = BTreeSet::new();
    let mut group_rows: BTreeMap<usize, usize> = BTreeMap::new();
    let mut current: Option<Result<DelaunayCell>> = None;
    for (i, row) in expected.iter().enumerate() {
        let no = row.no.unwrap_or(i as u32 + 1);
        if !row.middle.trim().is_empty() {
            current = Some(parse_union(&row.middle, rank).map(|p| cube_normal(&union_cell(&p))));
        }
        let mut reasons = Vec::new();
        let gi = match &current {
            None => {
                reasons.push("no fused cell above this row".to_string());
                None
            }
            Some(Err(e)) => {
                reasons.push(format!("middle column: {e}"));
                None
            }
            Some(Ok(m)) => {
                let gi = groups.iter().position(|g| &g.coarse == m);
                if gi.is_none() {
                    reasons.push(format!("{} is not a cell of {mid_cone}", cell_name(m)));
                }
                gi
            }
        };
        if let Some(gi) = gi {
            *group_rows.entry(gi).or_default() += 1;
        }
        for (text, side, cone, seen) in [
            (&row.left, true, left_cone, &mut seen_left),
            (&row.right, false, right_cone, &mut seen_right),
        ] {
            match parse_cell_name(text, rank) {
                Err(e) => reasons.push(format!("{e}")),
                Ok(c) => {
                    let c = cube_normal(&c);
                    seen.insert(c.clone());
                    if let Some(gi) = gi {
                        let pieces = if side { &groups[gi].left } else { &groups[gi].right };
                        if !pieces.contains(&c) {
                            reasons.push(format!("{} is not a cell of {cone} inside the fused cell", cell_name(&c)));
                        }
                    }
                }
            }
        }
        if which == 2 {
            let agrees = table1_right.get(&no).map(|r| {
                let a = parse_cell_name(r, rank).map(|c| cube_normal(&c)).ok();
                let b = parse_cell_name(&row.left, rank).map(|c| cube_normal(&c)).ok();
                a.is_some() && a == b
            });
            if agrees != Some(true) {
                reasons.push(format!("left cell is not cell {no} of the first table"));
            }
        }
        if !reasons.is_empty() {
            mismatches.push(Mismatch {
                row: no,
                reason: reasons.join("; "),
            });
        }
    }

    let mut unaccounted = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let name = cell_name(&g.coarse);
        match group_rows.get(&gi) {
            None => unaccounted.push(format!("cell {name} of {mid_cone} has no row")),
            Some(&n) if n != g.left.len().max(g.right.len()) => {
                unaccounted.push(format!("cell {name} of {mid_cone} spans {n} rows"))
            }
            _ => {}
        }
        for (pieces, seen, cone) in [(&g.left, &seen_left, left_cone), (&g.right, &seen_right, right_cone)] {
            for p in pieces {
                if !seen.contains(p) {
                    unaccounted.push(format!("cell {} of {cone} has no row", cell_name(p)));
                }
            }
        }
    }
    Ok(TableDiff {
        which,
        columns: cols.map(String::from),
        expected,
        computed,
        mismatches,
        unaccounted,
    })
}

fn render_groups(groups: &[Group]) -> Vec<TableRow> {
    let mut order: Vec<&Group> = groups.iter().collect();
    order.sort_by_key(|g| (std::cmp::Reverse(g.left.len().max(g.right.len())), cell_name(&g.left[0])));
    let mut rows = Vec::new();
    for g in order {
        let left: Vec<String> = g.left.iter().map(cell_name).sorted().collect();
        let right: Vec<String> = g.right.iter().map(cell_name).sorted().collect();
        let middle = if g.left.len() > 1 {
            left.join(" ∪ ")
        } else {
            cell_name(&g.coarse)
        };
        for k in 0..left.len().max(right.len()) {
            rows.push(TableRow {
                no: None,
                left: left.get(k).cloned().unwrap_or_default(),
                middle: if k == 0 { middle.clone() } else { String::new() },
                right: right.get(k).cloned().unwrap_or_default(),
            });
        }
    }
    rows
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub details: Vec<String>,
}

struct Checker {
    pass: bool,
    details: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Self {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.pass &= ok;
        self.details.push(format!("{}: {}", what.into(), if ok { "ok" } else { "FAILED" }));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }

    fn finish(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            pass: self.pass,
            details: self.details,
        }
    }
}

pub const SUITES: [&str; 6] = ["dim2", "dim3", "dim4", "faces", "tables", "theorem"];

fn rep_set(star: &DelaunayStar) -> BTreeSet<DelaunayCell> {
    star.orbit_reps.iter().map(cube_normal).collect()
}

fn names(cells: &BTreeSet<DelaunayCell>, known: &[(&str, DelaunayCell)]) -> String {
    let ns: Vec<String> = cells
        .iter()
        .map(|c| {
            known
                .iter()
                .find(|(_, k)| k == c)
                .map_or_else(|| cell_name(c), |(n, _)| n.to_string())
        })
        .sorted()
        .collect();
    format!("{{{}}}", ns.join(", "))
}

fn certify_star(ck: &mut Checker, name: &str, star: &DelaunayStar) {
    let certs = star.certify();
    let ok = certs.iter().all(|c| c.passed());
    ck.check(ok, format!("{name}: empty sphere certificates for {} orbit representatives", certs.len()));
    ck.check(star.is_locally_complete(), format!("{name}: star is locally complete"));
}

fn dim2_cells() -> Vec<(&'static str, DelaunayCell)> {
    let c = |vs: &[[i64; 2]]| DelaunayCell::new(vs.iter().map(|v| LatticeVector(v.to_vec())).collect());
    vec![
        ("σ1", c(&[[0, 0], [1, 0], [1, 1]])),
        ("σ2", c(&[[0, 0], [0, 1], [1, 1]])),
        ("σ3", c(&[[0, 0], [1, 0], [0, 1]])),
        ("σ4", c(&[[1, 0], [0, 1], [1, 1]])),
        ("σ5", c(&[[0, 0], [1, 0], [0, 1], [1, 1]])),
    ]
}

/// Ranks one and two: orbit representatives of each cone, both fusions and
/// the comparison of cones at the origin.
pub fn dim2_suite(cache: &StarCache) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let d1 = cache.star("dim1.V")?;
    let unit = BTreeSet::from([DelaunayCell::new(vec![LatticeVector(vec![0]), LatticeVector(vec![1])])]);
    ck.check(rep_set(&d1) == unit, "dim1.V orbit representatives = {[0,1]}");
    certify_star(&mut ck, "dim1.V", &d1);

    let known = dim2_cells();
    let get = |n: &str| known.iter().find(|(k, _)| *k == n).expect("named").1.clone();
    for (cone, want) in [
        ("dim2.V1", vec!["σ1", "σ2"]),
        ("dim2.V2", vec!["σ3", "σ4"]),
        ("dim2.V1capV2", vec!["σ5"]),
    ] {
        let star = cache.star(cone)?;
        let got = rep_set(&star);
        let exp: BTreeSet<DelaunayCell> = want.iter().map(|n| get(n)).collect();
        ck.check(
            got == exp,
            format!("{cone} orbit representatives = {}", names(&got, &known)),
        );
        certify_star(&mut ck, cone, &star);
    }
    for (fine, a, b) in [("dim2.V1", "σ1", "σ2"), ("dim2.V2", "σ3", "σ4")] {
        let rep = fusion_check("dim2.V1capV2", fine, cache)?;
        let groups = rep.groups();
        let ok = rep.passed()
            && groups.len() == 1
            && cube_normal(&groups[0].coarse) == get("σ5")
            && groups[0].pieces.iter().map(cube_normal).collect::<BTreeSet<_>>() == BTreeSet::from([get(a), get(b)])
            && union_cell(&groups[0].pieces) == groups[0].coarse;
        ck.check(ok, format!("σ5 = {a} ∪ {b}"));
    }
    let same_cone = match (cone_rays(&get("σ5")), cone_rays(&get("σ3"))) {
        (Ok(a), Ok(b)) => a.rays == b.rays,
        _ => false,
    };
    ck.check(same_cone, "C(0,σ5) = C(0,σ3)");
    let v2 = fusion_check("dim2.V1capV2", "dim2.V2", cache)?;
    let sigma4_placed = v2
        .groups()
        .first()
        .and_then(|g| g.pieces.iter().find(|p| cube_normal(p) == get("σ4")).cloned());
    ck.check(
        sigma4_placed.is_some_and(|p| !p.contains_origin()),
        "0 ∉ σ4 inside σ5",
    );
    Ok(ck.finish("dim2"))
}

/// Rank three: the six staircase simplices.
pub fn dim3_suite(cache: &StarCache) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let star = cache.star("dim3.V")?;
    let want: BTreeSet<DelaunayCell> = (1..=3).permutations(3).map(|p| staircase(&p)).collect();
    let got = rep_set(&star);
    ck.check(got == want, format!("dim3.V orbit representatives are the {} simplices ⟨0,s_i,s_ij,s_ijk⟩", want.len()));
    ck.check(got.iter().all(is_basic_simplex), "dim3.V orbit representatives are basic simplices");
    certify_star(&mut ck, "dim3.V", &star);
    Ok(ck.finish("dim3"))
}

pub const TOP_CONES: [&str; 4] = ["dim4.V1", "dim4.V2", "dim4.V3", "dim4.V4"];

/// Refinements checked for fusion: `(face, cone, fusions, unchanged)`.
pub const FUSIONS: [(&str, &str, usize, usize); 5] = [
    ("dim4.V1capV2", "dim4.V1", 6, 12),
    ("dim4.V1capV2", "dim4.V2", 6, 12),
    ("dim4.V2capV3", "dim4.V2", 4, 16),
    ("dim4.V2capV3", "dim4.V3", 4, 16),
    ("dim4.W0", "dim4.V3", 0, 0),
];

/// Rank four: the top cones decompose into basic simplices and the fusions
/// onto the faces conserve volume.
pub fn dim4_suite(cache: &StarCache) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for cone in TOP_CONES {
        let star = cache.star(cone)?;
        let basic = star.orbit_reps.iter().all(|c| c.vertices.len() == 5 && is_basic_simplex(c));
        ck.check(
            star.orbit_reps.len() == 24 && star.cells.len() == 120 && basic,
            format!(
                "{cone}: {} orbit representatives, all basic simplices; {} cells through 0",
                star.orbit_reps.len(),
                star.cells.len()
            ),
        );
        certify_star(&mut ck, cone, &star);
    }
    for (face, cone, fused, same) in FUSIONS {
        let rep = fusion_check(face, cone, cache)?;
        let counts_ok = (fused == 0 && same == 0) || (rep.fusions.len() == fused && rep.unchanged.len() == same);
        ck.check(
            rep.passed() && counts_ok,
            format!(
                "{cone} -> {face}: {} fusions, {} unchanged cells",
                rep.fusions.len(),
                rep.unchanged.len()
            ),
        );
        ck.check(rep.volume_conserved, format!("{cone} -> {face}: volume conserved"));
        for p in &rep.problems {
            ck.note(p.clone());
        }
        let star = cache.star(face)?;
        certify_star(&mut ck, face, &star);
    }
    Ok(ck.finish("dim4"))
}

/// The two fusion tables.
pub fn tables_suite(cache: &StarCache) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    for which in [1, 2] {
        let diff = reproduce_table(which, cache)?;
        ck.check(
            diff.passed(),
            format!(
                "table {which}: {} rows, {} mismatches, {} unaccounted",
                diff.expected.len(),
                diff.mismatches.len(),
                diff.unaccounted.len()
            ),
        );
        for m in &diff.mismatches {
            ck.note(format!("table {which} row {}: {}", m.row, m.reason));
        }
        for u in &diff.unaccounted {
            ck.note(format!("table {which}: {u}"));
        }
    }
    Ok(ck.finish("tables"))
}

/// Faces whose cells are checked for simplicial generation, with the cone
/// that refines them.
pub const THEOREM_FACES: [(&str, &str); 3] = [
    ("dim4.V1capV2", "dim4.V1"),
    ("dim4.V2capV3", "dim4.V3"),
    ("dim4.W0", "dim4.V3"),
];

/// Simplicial generation of every cell through the origin: the top cones by
/// themselves, the faces by the cells of a refining top cone.
pub fn theorem_suite(cache: &StarCache) -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let mut pairs: Vec<(&str, &str)> = TOP_CONES.iter().map(|c| (*c, *c)).collect();
    pairs.extend(THEOREM_FACES);
    for (cone, refining) in pairs {
        let star = cache.star(cone)?;
        let fusion = if cone == refining {
            None
        } else {
            Some(fusion_check(cone, refining, cache)?)
        };
        let mut ok = fusion.as_ref().is_none_or(FusionReport::passed);
        let mut nilpotent = true;
        for cell in &star.cells {
            let pieces = match &fusion {
                None => Some(vec![cell.clone()]),
                Some(f) => f.pieces_of(cell),
            };
            let Some(pieces) = pieces else {
                ok = false;
                ck.note(format!("{cone}: no pieces for {cell}"));
                continue;
            };
            let report = is_simplicially_generating(cell, &pieces)?;
            nilpotent &= report.nilpotency() == Nilpotency::One;
            if report.simplicially_generating != Some(true) {
                ok = false;
                ck.note(format!(
                    "{cone}: {cell} fails: {}",
                    report.failure.unwrap_or_else(|| "unknown".into())
                ));
            }
        }
        ck.check(
            ok,
            format!(
                "{cone}: {} cells through 0 simplicially generating by cells of {refining}",
                star.cells.len()
            ),
        );
        ck.check(nilpotent, format!("{cone}: nilpotency 1"));
    }
    Ok(ck.finish("theorem"))
}

fn sp(p: usize, q: usize, plus: bool) -> SignedPair {
    SignedPair::new(p, q, plus)
}

/// Facets of the perfect cone, their orbits and the types of the top cones,
/// plus the matrix identities among the generators.
pub fn faces_suite() -> Result<SuiteReport> {
    let mut ck = Checker::new();
    let faces = enumerate_faces();
    let tri = faces.iter().filter(|f| f.shape() == Shape::Triangle).count();
    let fork = faces.iter().filter(|f| f.shape() == Shape::Fork).count();
    ck.check(faces.len() == 64, format!("{} certified facets of K", faces.len()));
    ck.check(tri == 32 && fork == 32, format!("{tri} triangles, {fork} forks"));
    let g = group_g()?;
    ck.check(g.len() == 1152, format!("|G| = {}", g.len()));
    let orbits = orbit_classify(&faces, &group_generators())?;
    ck.check(
        orbits.bf.len() == 48 && orbits.rt.len() == 16,
        format!("orbit sizes BF = {}, RT = {}", orbits.bf.len(), orbits.rt.len()),
    );
    let w0 = face_of_cone(&catalog("dim4.W0")?)?;
    let drop = [sp(1, 3, true), sp(1, 4, true), sp(3, 4, false)];
    ck.check(
        w0.as_ref().is_some_and(|f| f.dropped == drop && orbits.orbit_of(&f.dropped) == Some(OrbitName::RT)),
        "dim4.W0 drops (x1+x3)^2, (x1+x4)^2, (x3-x4)^2 and is RT",
    );
    let meet = face_of_cone(&catalog("dim4.V1capV2")?)?;
    ck.check(
        meet.is_some_and(|f| orbits.orbit_of(&f.dropped) == Some(OrbitName::BF)),
        "dim4.V1capV2 is BF",
    );
    for (cone, want) in [
        ("dim4.V2", VoronoiType::II),
        ("dim4.V3", VoronoiType::III),
        ("dim4.V4", VoronoiType::III),
    ] {
        let t = cone_type(&catalog(cone)?, &orbits)?;
        ck.check(t == Some(want), format!("{cone} has type {want}"));
    }
    for id in verify_matrix_identities() {
        ck.check(id.holds, id.name.clone());
    }
    Ok(ck.finish("faces"))
}

/// Runs the named suites (`all` for every one), sorted by name.
pub fn run_suites(requested: &[&str], cache: &StarCache) -> Result<Vec<SuiteReport>> {
    let mut names = BTreeSet::new();
    for r in requested {
        if *r == "all" {
            names.extend(SUITES);
        } else if let Some(s) = SUITES.iter().find(|s| *s == r) {
            names.insert(*s);
        } else {
            return Err(Error::Parse(format!("unknown suite '{r}'")));
        }
    }
    names
        .into_iter()
        .map(|n| match n {
            "dim2" => dim2_suite(cache),
            "dim3" => dim3_suite(cache),
            "dim4" => dim4_suite(cache),
            "faces" => faces_suite(),
            "tables" => tables_suite(cache),
            "theorem" => theorem_suite(cache),
            _ => unreachable!("suite names are checked"),
        })
        .collect()
}

/// The rank one to three suites.
pub fn verify_lowdim(cache: &StarCache) -> Result<Vec<SuiteReport>> {
    run_suites(&["dim2", "dim3"], cache)
}

/// Basic simplices in the top cones and simplicial generation on the faces.
pub fn verify_main_theorem(cache: &StarCache) -> Result<Vec<SuiteReport>> {
    run_suites(&["dim4", "theorem"], cache)
}

/// Certificates for every orbit representative of a cone's star, recomputed
/// from the form.
pub fn certify_cone(name: &str, cache: &StarCache) -> Result<bool> {
    let star = cache.star(name)?;
    let form = cache.form(&catalog(name)?)?;
    Ok(star.orbit_reps.iter().all(|c| certify_cell(&form, c).passed()))
}
