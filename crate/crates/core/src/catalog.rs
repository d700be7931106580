//! Named cones of forms in ranks one to four, their generators, interior
//! samples, membership and the chamber coordinates of rank four.
//!
//! Generator matrices of rank four are written out entry by entry. Relabeled
//! copies used by the chambers (`e_abcd5`, `f_abcd`) are obtained from the
//! printed `e_12345` and `f_1234` by permuting coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_rational, parse_rational, rat, Matrix, QuadraticForm, Rational};

/// A cone in the space of symmetric forms, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedCone {
    pub name: String,
    pub rank: usize,
    pub generators: Vec<QuadraticForm>,
    /// Symbolic names of the generators, e.g. `e13`, `e12345`, `f1234`.
    pub labels: Vec<String>,
    /// Whether the interior of the cone carries a single Delaunay
    /// decomposition.
    pub voronoi: bool,
}

impl NamedCone {
    /// Dimension of the linear span of the generators.
    pub fn dimension(&self) -> usize {
        coordinate_matrix(&self.generators).rank()
    }

    pub fn generator(&self, label: &str) -> Option<&QuadraticForm> {
        self.labels.iter().position(|l| l == label).map(|i| &self.generators[i])
    }
}

fn m(rows: [[i64; 4]; 4]) -> QuadraticForm {
    let r: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
    QuadraticForm::from_i64(&r)
}

/// The printed rank-four generators.
fn printed4() -> BTreeMap<&'static str, QuadraticForm> {
    let mut t = BTreeMap::new();
    t.insert("e12", m([[1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    t.insert("e13", m([[1, 0, -1, 0], [0, 0, 0, 0], [-1, 0, 1, 0], [0, 0, 0, 0]]));
    t.insert("e14", m([[1, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [-1, 0, 0, 1]]));
    t.insert("e23", m([[0, 0, 0, 0], [0, 1, -1, 0], [0, -1, 1, 0], [0, 0, 0, 0]]));
    t.insert("e24", m([[0, 0, 0, 0], [0, 1, 0, -1], [0, 0, 0, 0], [0, -1, 0, 1]]));
    t.insert("e34", m([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]]));
    t.insert("e15", m([[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    t.insert("e25", m([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]));
    t.insert("e35", m([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]));
    t.insert("e45", m([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]));
    t.insert("e12345", m([[2, 1, -1, -1], [1, 2, -1, -1], [-1, -1, 2, 0], [-1, -1, 0, 2]]));
    t.insert("f1234", m([[1, 1, -1, -1], [1, 1, -1, -1], [-1, -1, 1, 1], [-1, -1, 1, 1]]));
    t.insert("g123", m([[1, 1, -1, 0], [1, 1, -1, 0], [-1, -1, 1, 0], [0, 0, 0, 0]]));
    t.insert("g124", m([[1, 1, 0, -1], [1, 1, 0, -1], [0, 0, 0, 0], [-1, -1, 0, 1]]));
    t
}

/// `omega = e_12345`.
pub fn omega() -> QuadraticForm {
    printed4()["e12345"].clone()
}

/// A printed rank-four generator by label (`e13`, `e25`, `e12345`,
/// `f1234`, `g123`, `g124`), or a relabeled `e_abcd5` / `f_abcd`.
pub fn generator4(label: &str) -> Option<QuadraticForm> {
    if let Some(f) = printed4().get(label) {
        return Some(f.clone());
    }
    let digits: Vec<usize> = label.get(1..)?.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()?;
    match (label.chars().next()?, digits.len()) {
        ('e', 5) if digits[4] == 5 => {
            let p = split_from_digits(&digits[..4]).ok()?;
            Some(relabel(&omega(), p))
        }
        ('f', 4) => {
            let p = split_from_digits(&digits).ok()?;
            Some(relabel(&printed4()["f1234"], p))
        }
        _ => None,
    }
}

/// The form whose `(p(i), p(j))` entry is the `(i, j)` entry of `b`.
fn relabel(b: &QuadraticForm, p: [usize; 4]) -> QuadraticForm {
    let mut out = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            out[(p[i] - 1, p[j] - 1)] = b.entry(i, j).clone();
        }
    }
    QuadraticForm::new(out).expect("relabeling keeps symmetry")
}

fn split_from_digits(d: &[usize]) -> Result<[usize; 4]> {
    let s: String = d.iter().map(|x| x.to_string()).collect();
    parse_split(&s)
}

/// Parses an index split `abcd`, a permutation of `1234`.
pub fn parse_split(s: &str) -> Result<[usize; 4]> {
    let d: Vec<usize> = s
        .chars()
        .map(|c| c.to_digit(10).map(|x| x as usize))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidSplit(s.to_string()))?;
    if d.len() != 4 || d.iter().sorted().ne([1, 2, 3, 4].iter()) {
        return Err(Error::InvalidSplit(s.to_string()));
    }
    Ok([d[0], d[1], d[2], d[3]])
}

fn pair_label(i: usize, j: usize) -> String {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    format!("e{a}{b}")
}

/// Labels of the ten `e_ij`, `i < j <= 5`, in catalog order.
fn all_e_labels() -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in i + 1..=5 {
            out.push(format!("e{i}{j}"));
        }
    }
    out
}

fn e_labels_except(skip: &[(usize, usize)]) -> Vec<String> {
    let skip: Vec<String> = skip.iter().map(|&(i, j)| pair_label(i, j)).collect();
    all_e_labels().into_iter().filter(|l| !skip.contains(l)).collect()
}

fn cone4(name: &str, labels: Vec<String>, voronoi: bool) -> NamedCone {
    let generators = labels
        .iter()
        .map(|l| generator4(l).unwrap_or_else(|| panic!("unknown generator {l}")))
        .collect();
    NamedCone {
        name: name.to_string(),
        rank: 4,
        generators,
        labels,
        voronoi,
    }
}

fn with(mut labels: Vec<String>, extra: &[&str]) -> Vec<String> {
    labels.extend(extra.iter().map(|s| s.to_string()));
    labels
}

fn split_name(p: [usize; 4]) -> String {
    p.iter().map(|x| x.to_string()).collect()
}

fn small(name: &str, rank: usize, entries: Vec<(&str, Vec<Vec<i64>>)>, voronoi: bool) -> NamedCone {
    let (labels, generators) = entries
        .into_iter()
        .map(|(l, rows)| {
            let r: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            (l.to_string(), QuadraticForm::from_i64(&r))
        })
        .unzip();
    NamedCone {
        name: name.to_string(),
        rank,
        generators,
        labels,
        voronoi,
    }
}

fn dim2_generators() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![
        ("e13", vec![vec![1, 0], vec![0, 0]]),
        ("e23", vec![vec![0, 0], vec![0, 1]]),
        ("e12", vec![vec![1, -1], vec![-1, 1]]),
        ("f12", vec![vec![1, 1], vec![1, 1]]),
    ]
}

fn dim2_pick(labels: &[&str]) -> Vec<(&'static str, Vec<Vec<i64>>)> {
    let all = dim2_generators();
    labels
        .iter()
        .map(|l| all.iter().find(|(k, _)| k == l).cloned().expect("dim2 label"))
        .collect()
}

fn dim3_generators() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    // Index 4 plays the role of the square terms: e_i4 = x_i^2.
    vec![
        ("e12", vec![vec![1, -1, 0], vec![-1, 1, 0], vec![0, 0, 0]]),
        ("e13", vec![vec![1, 0, -1], vec![0, 0, 0], vec![-1, 0, 1]]),
        ("e14", vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]),
        ("e23", vec![vec![0, 0, 0], vec![0, 1, -1], vec![0, -1, 1]]),
        ("e24", vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]),
        ("e34", vec![vec![0, 0, 0], vec![0, 0, 0], vec![0, 0, 1]]),
    ]
}

/// The three pair splits `{a,b} | {c,d}` with `a = 1`.
pub const CHAMBER_SPLITS: [[usize; 4]; 3] = [[1, 2, 3, 4], [1, 3, 2, 4], [1, 4, 2, 3]];

fn build() -> Vec<NamedCone> {
    let mut out = vec![
        small("dim1.V", 1, vec![("e12", vec![vec![1]])], true),
        small("dim2.V1", 2, dim2_pick(&["e13", "e23", "e12"]), true),
        small("dim2.V2", 2, dim2_pick(&["e13", "e23", "f12"]), true),
        small("dim2.V1capV2", 2, dim2_pick(&["e13", "e23"]), true),
        small("dim3.V", 3, dim3_generators(), true),
        cone4("dim4.V1", all_e_labels(), true),
        cone4("dim4.V1capV2", e_labels_except(&[(1, 2)]), true),
        cone4("dim4.V2", with(e_labels_except(&[(1, 2)]), &["e12345"]), true),
        cone4("dim4.V2capV3", with(e_labels_except(&[(1, 2), (3, 4)]), &["e12345"]), true),
        cone4("dim4.V3", with(e_labels_except(&[(1, 2), (3, 4)]), &["e12345", "f1234"]), true),
        cone4("dim4.V4", with(e_labels_except(&[(1, 2), (3, 4)]), &["e34125", "f1234"]), true),
        cone4("dim4.W0", with(e_labels_except(&[(1, 2), (3, 4)]), &["f1234"]), true),
        cone4("dim4.K", with(e_labels_except(&[(1, 2)]), &["g123", "g124", "f1234"]), false),
    ];
    for s in CHAMBER_SPLITS {
        for p in [s, [s[2], s[3], s[0], s[1]]] {
            let [a, b, c, d] = p;
            out.push(cone4(
                &format!("dim4.F{a}{b}"),
                with(e_labels_except(&[(a, b)]), &[&format!("e{a}{b}{c}{d}5")]),
                true,
            ));
        }
    }
    for s in CHAMBER_SPLITS {
        let [a, b, c, d] = s;
        out.push(cone4(
            &format!("dim4.G{}", split_name(s)),
            with(
                e_labels_except(&[(a, b), (c, d)]),
                &[&format!("e{a}{b}{c}{d}5"), &format!("e{c}{d}{a}{b}5")],
            ),
            false,
        ));
    }
    for s in CHAMBER_SPLITS {
        for p in [s, [s[2], s[3], s[0], s[1]]] {
            let [a, b, c, d] = p;
            out.push(cone4(
                &format!("dim4.F{}", split_name(p)),
                with(
                    e_labels_except(&[(a, b), (c, d)]),
                    &[&format!("e{a}{b}{c}{d}5"), &format!("f{}", split_name(s))],
                ),
                true,
            ));
        }
    }
    out
}

/// All named cones, in catalog order.
pub fn catalog_entries() -> &'static [NamedCone] {
    static CATALOG: OnceLock<Vec<NamedCone>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn catalog(name: &str) -> Result<NamedCone> {
    catalog_entries()
        .iter()
        .find(|c| c.name == name)
        .cloned()
        .ok_or_else(|| Error::UnknownCone(name.to_string()))
}

/// `sum_k w_k gen_k` for strictly positive weights.
pub fn sample_interior(cone: &NamedCone, weights: &[Rational]) -> Result<QuadraticForm> {
    if weights.len() != cone.generators.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} generators",
            weights.len(),
            cone.generators.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
    }
    let mut acc = QuadraticForm::zero(cone.rank);
    for (w, g) in weights.iter().zip(&cone.generators) {
        acc = acc.add(&g.scale(w))?;
    }
    Ok(acc)
}

/// Sample with every weight equal to one.
pub fn default_sample(cone: &NamedCone) -> QuadraticForm {
    sample_interior(cone, &vec![rat(1); cone.generators.len()]).expect("unit weights")
}

/// Columns are the upper coordinates of the forms.
fn coordinate_matrix(forms: &[QuadraticForm]) -> Matrix {
    let d = forms.first().map_or(0, |f| f.upper_coordinates().len());
    let coords: Vec<Vec<Rational>> = forms.iter().map(QuadraticForm::upper_coordinates).collect();
    let mut out = Matrix::zeros(d, forms.len());
    for (j, c) in coords.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            out[(i, j)] = x.clone();
        }
    }
    out
}

/// Coefficients `x` with `sum x_k forms_k = b`, if `b` is in the span of
/// linearly independent forms.
pub fn expand_in_basis(forms: &[QuadraticForm], b: &QuadraticForm) -> Option<Vec<Rational>> {
    let n = forms.len();
    let aug = coordinate_matrix(forms);
    let rhs = b.upper_coordinates();
    let mut full = Matrix::zeros(aug.rows(), n + 1);
    for i in 0..aug.rows() {
        for j in 0..n {
            full[(i, j)] = aug[(i, j)].clone();
        }
        full[(i, n)] = rhs[i].clone();
    }
    let pivots = full.rref();
    if pivots.contains(&n) || pivots.len() < n {
        return None;
    }
    Some((0..n).map(|i| full[(i, n)].clone()).collect())
}

/// Nonnegative coefficients expressing `b` in the generators, or `None`
/// when `b` lies outside the cone. The witness is a basic solution: it is
/// supported on linearly independent generators.
pub fn contains(cone: &NamedCone, b: &QuadraticForm) -> Result<Option<Vec<Rational>>> {
    if b.rank() != cone.rank {
        return Err(Error::DimensionMismatch {
            expected: cone.rank,
            found: b.rank(),
        });
    }
    let r = cone.dimension();
    for subset in (0..cone.generators.len()).combinations(r) {
        let forms: Vec<QuadraticForm> = subset.iter().map(|&i| cone.generators[i].clone()).collect();
        if coordinate_matrix(&forms).rank() < r {
            continue;
        }
        let Some(x) = expand_in_basis(&forms, b) else {
            // Independent subsets all span the same space.
            return Ok(None);
        };
        if x.iter().all(|c| !c.is_negative()) {
            let mut full = vec![Rational::zero(); cone.generators.len()];
            for (k, &i) in subset.iter().enumerate() {
                full[i] = x[k].clone();
            }
            return Ok(Some(full));
        }
    }
    Ok(None)
}

/// Outcome of an exact matrix identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

fn sum(forms: &[QuadraticForm]) -> QuadraticForm {
    let g = forms.first().map_or(0, QuadraticForm::rank);
    forms.iter().fold(QuadraticForm::zero(g), |acc, f| acc.add(f).expect("same rank"))
}

fn gens(labels: &[String]) -> Vec<QuadraticForm> {
    labels.iter().map(|l| generator4(l).expect("label")).collect()
}

/// `e_12345 + e_34125 = extra + sum_{(i,j) != (1,2),(3,4)} e_ij`; the
/// printed identity has `extra = f_1234`.
pub fn sum_identity_holds(extra: &QuadraticForm) -> bool {
    let lhs = omega().add(&generator4("e34125").expect("e34125")).expect("rank 4");
    let mut rhs = gens(&e_labels_except(&[(1, 2), (3, 4)]));
    rhs.push(extra.clone());
    lhs == sum(&rhs)
}

fn label_set(cone: &str) -> Vec<String> {
    catalog(cone).expect("catalog cone").labels.into_iter().sorted().collect()
}

/// Whether two cones have the same generator set.
pub fn same_generators(a: &str, b: &str) -> bool {
    let ga: Vec<QuadraticForm> = catalog(a).expect("cone").generators;
    let gb: Vec<QuadraticForm> = catalog(b).expect("cone").generators;
    ga.len() == gb.len() && ga.iter().all(|f| gb.contains(f))
}

/// The rank-four identities among generators and cones, plus the rank-two
/// analog.
pub fn verify_matrix_identities() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let mut rhs = gens(&e_labels_except(&[(1, 2)]));
    rhs.extend(["f1234", "g123", "g124"].iter().map(|l| generator4(l).expect("printed")));
    out.push(IdentityCheck {
        name: "omega = (sum e_ij + f1234 + g123 + g124) / 3".into(),
        holds: omega() == sum(&rhs).scale(&Rational::new(1.into(), 3.into())),
    });
    out.push(IdentityCheck {
        name: "e12345 + e34125 = f1234 + sum e_ij".into(),
        holds: sum_identity_holds(&generator4("f1234").expect("printed")),
    });
    let v3 = label_set("dim4.V3");
    let v4 = label_set("dim4.V4");
    let meet: Vec<String> = v3.iter().filter(|l| v4.contains(l)).cloned().collect();
    out.push(IdentityCheck {
        name: "V3 ∩ V4 = W0".into(),
        holds: meet == label_set("dim4.W0"),
    });
    for (a, b) in [("dim4.F12", "dim4.V2"), ("dim4.F1234", "dim4.V3"), ("dim4.F3412", "dim4.V4")] {
        out.push(IdentityCheck {
            name: format!("{} = {}", &a[5..], &b[5..]),
            holds: same_generators(a, b),
        });
    }
    let d2 = catalog("dim2.V2").expect("dim2.V2");
    let d1 = catalog("dim2.V1").expect("dim2.V1");
    let lhs = d1.generator("e12").expect("e12").add(d2.generator("f12").expect("f12")).expect("rank 2");
    let rhs = d1.generator("e13").expect("e13").add(d1.generator("e23").expect("e23")).expect("rank 2");
    out.push(IdentityCheck {
        name: "dim2: e12 + f12 = 2 (e13 + e23)".into(),
        holds: lhs == rhs.scale(&rat(2)),
    });
    out
}

/// Coefficients of a form in the ten generators of `G_abcd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberCoordinates {
    pub split: [usize; 4],
    /// Labels of the basis, `e_ij` first, then `e_abcd5` and `e_cdab5`.
    pub labels: Vec<String>,
    pub coefficients: Vec<Rational>,
}

impl ChamberCoordinates {
    pub fn y_ab(&self) -> &Rational {
        &self.coefficients[8]
    }

    pub fn y_cd(&self) -> &Rational {
        &self.coefficients[9]
    }

    pub fn reconstruct(&self) -> QuadraticForm {
        let forms = gens(&self.labels);
        let scaled: Vec<QuadraticForm> = forms.iter().zip(&self.coefficients).map(|(f, c)| f.scale(c)).collect();
        sum(&scaled)
    }
}

pub fn chamber_coordinates(split: [usize; 4], b: &QuadraticForm) -> Result<ChamberCoordinates> {
    if b.rank() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: b.rank(),
        });
    }
    let [a, bb, c, d] = split;
    let mut labels = e_labels_except(&[(a, bb), (c, d)]);
    labels.push(format!("e{a}{bb}{c}{d}5"));
    labels.push(format!("e{c}{d}{a}{bb}5"));
    let coefficients = expand_in_basis(&gens(&labels), b).ok_or(Error::NotInSpan)?;
    Ok(ChamberCoordinates {
        split,
        labels,
        coefficients,
    })
}

/// Where a form sits relative to the chambers `F_abcd`, `F_cdab`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberSide {
    /// Inside the chamber named by the split, e.g. `F1234`.
    Chamber([usize; 4]),
    /// On the common wall `y_ab = y_cd`.
    Boundary,
    Outside,
}

impl fmt::Display for ChamberSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChamberSide::Chamber(p) => write!(f, "F{}", split_name(*p)),
            ChamberSide::Boundary => write!(f, "boundary"),
            ChamberSide::Outside => write!(f, "outside"),
        }
    }
}

/// `G_abcd` is the union of `F_abcd` and `F_cdab`, which share the wall
/// spanned by `f_abcd` and the eight `e_ij`. Writing `f_abcd` through the
/// sum identity, a form lies in the union iff `m = min(y_ab, y_cd) >= 0`
/// and every `e_ij` coefficient plus `m` is nonnegative; it lies in
/// `F_abcd` when moreover `y_ab >= y_cd`.
pub fn chamber_side(split: [usize; 4], b: &QuadraticForm) -> Result<ChamberSide> {
    let coords = chamber_coordinates(split, b)?;
    let (yab, ycd) = (coords.y_ab(), coords.y_cd());
    let m = yab.min(ycd);
    if m.is_negative() || coords.coefficients[..8].iter().any(|a| (a + m).is_negative()) {
        return Ok(ChamberSide::Outside);
    }
    let [a, bb, c, d] = split;
    Ok(match yab.cmp(ycd) {
        std::cmp::Ordering::Greater => ChamberSide::Chamber(split),
        std::cmp::Ordering::Less => ChamberSide::Chamber([c, d, a, bb]),
        std::cmp::Ordering::Equal => ChamberSide::Boundary,
    })
}

#[derive(Serialize, Deserialize)]
struct ConeRecord {
    name: String,
    rank: usize,
    generators: Vec<Vec<Vec<String>>>,
}

/// The catalog as JSON: a list of `{name, rank, generators}` with entries
/// encoded as `p/q` strings.
pub fn catalog_json() -> String {
    let records: Vec<ConeRecord> = catalog_entries()
        .iter()
        .map(|c| ConeRecord {
            name: c.name.clone(),
            rank: c.rank,
            generators: c
                .generators
                .iter()
                .map(|g| g.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect())
                .collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&records).expect("serializable");
    s.push('\n');
    s
}

/// Reads a catalog file. Generator labels and the Voronoi flag are taken
/// from the built-in entry of the same name when there is one.
pub fn parse_catalog_json(text: &str) -> Result<Vec<NamedCone>> {
    let records: Vec<ConeRecord> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    records
        .into_iter()
        .map(|r| {
            let generators = r
                .generators
                .iter()
                .map(|g| {
                    let rows = g
                        .iter()
                        .map(|row| row.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    QuadraticForm::from_rows(rows)
                })
                .collect::<Result<Vec<_>>>()?;
            let builtin = catalog_entries().iter().find(|c| c.name == r.name);
            let labels = match builtin {
                Some(c) if c.generators == generators => c.labels.clone(),
                _ => (1..=generators.len()).map(|i| format!("g{i}")).collect(),
            };
            Ok(NamedCone {
                name: r.name,
                rank: r.rank,
                generators,
                labels,
                voronoi: builtin.is_some_and(|c| c.voronoi),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, Definiteness};

    #[test]
    fn lookup_examples() {
        let v1 = catalog("dim2.V1").unwrap();
        assert_eq!(v1.labels, vec!["e13", "e23", "e12"]);
        assert_eq!(v1.generator("e12").unwrap(), &QuadraticForm::from_i64(&[&[1, -1], &[-1, 1]]));
        let w0 = catalog("dim4.W0").unwrap();
        assert_eq!(w0.labels, vec!["e13", "e14", "e15", "e23", "e24", "e25", "e35", "e45", "f1234"]);
        assert_eq!(catalog("dim5.V1"), Err(Error::UnknownCone("dim5.V1".into())));
    }

    #[test]
    fn transcription_spot_checks() {
        // Entries read off the printed matrices.
        let e = |l: &str| generator4(l).unwrap();
        assert_eq!(e("e23").entry(1, 2), &rat(-1));
        assert_eq!(e("e35").entry(2, 2), &rat(1));
        assert_eq!(e("g124").entry(0, 3), &rat(-1));
        assert_eq!(e("g124").entry(2, 2), &rat(0));
        assert_eq!(
            e("e34125"),
            QuadraticForm::from_i64(&[&[2, 0, -1, -1], &[0, 2, -1, -1], &[-1, -1, 2, 1], &[-1, -1, 1, 2]])
        );
        assert_eq!(e("f3412"), e("f1234"));
        assert_eq!(e("e12345"), omega());
    }

    #[test]
    fn dimensions() {
        for (name, d) in [
            ("dim4.V1", 10),
            ("dim4.V2", 10),
            ("dim4.V3", 10),
            ("dim4.V4", 10),
            ("dim4.K", 10),
            ("dim4.V1capV2", 9),
            ("dim4.V2capV3", 9),
            ("dim4.W0", 9),
            ("dim2.V1", 3),
            ("dim2.V1capV2", 2),
            ("dim3.V", 6),
        ] {
            assert_eq!(catalog(name).unwrap().dimension(), d, "{name}");
        }
    }

    #[test]
    fn generators_are_semidefinite() {
        for c in catalog_entries() {
            for g in &c.generators {
                assert_ne!(g.definiteness(), Definiteness::Indefinite, "{}", c.name);
            }
        }
    }

    #[test]
    fn sample_examples() {
        let v1 = catalog("dim2.V1").unwrap();
        assert_eq!(default_sample(&v1), QuadraticForm::from_i64(&[&[2, -1], &[-1, 2]]));
        let meet = catalog("dim2.V1capV2").unwrap();
        assert_eq!(default_sample(&meet), QuadraticForm::identity(2));
        assert!(matches!(
            sample_interior(&v1, &[rat(1), rat(0), rat(1)]),
            Err(Error::InvalidWeights(_))
        ));
        assert!(matches!(sample_interior(&v1, &[rat(1)]), Err(Error::InvalidWeights(_))));
        for c in catalog_entries() {
            assert!(default_sample(c).is_positive_definite(), "{}", c.name);
        }
    }

    #[test]
    fn membership_examples() {
        let k = catalog("dim4.K").unwrap();
        let w = contains(&k, &omega()).unwrap().expect("omega in K");
        let rebuilt = sum(&k.generators.iter().zip(&w).map(|(g, c)| g.scale(c)).collect::<Vec<_>>());
        assert_eq!(rebuilt, omega());
        // The printed combination: every coefficient 1/3.
        let third = vec![ratio(1, 3); 12];
        let printed = sum(&k.generators.iter().zip(&third).map(|(g, c)| g.scale(c)).collect::<Vec<_>>());
        assert_eq!(printed, omega());

        let w0 = catalog("dim4.W0").unwrap();
        assert!(contains(&w0, &generator4("f1234").unwrap()).unwrap().is_some());
        let v1 = catalog("dim4.V1").unwrap();
        let neg = generator4("e15").unwrap().scale(&rat(-1));
        assert_eq!(contains(&v1, &neg).unwrap(), None);
        assert!(contains(&v1, &omega()).unwrap().is_none());
    }

    #[test]
    fn every_generator_is_contained() {
        for c in catalog_entries() {
            for g in &c.generators {
                assert!(contains(c, g).unwrap().is_some(), "{}", c.name);
            }
        }
    }

    #[test]
    fn identities() {
        for check in verify_matrix_identities() {
            assert!(check.holds, "{}", check.name);
        }
        assert!(!sum_identity_holds(&generator4("g123").unwrap()));
    }

    #[test]
    fn chamber_examples() {
        let c = chamber_coordinates([1, 2, 3, 4], &omega()).unwrap();
        assert_eq!((c.y_ab(), c.y_cd()), (&rat(1), &rat(0)));
        assert_eq!(c.reconstruct(), omega());
        assert_eq!(chamber_side([1, 2, 3, 4], &omega()).unwrap(), ChamberSide::Chamber([1, 2, 3, 4]));
        assert_eq!(
            chamber_side([1, 2, 3, 4], &generator4("e34125").unwrap()).unwrap(),
            ChamberSide::Chamber([3, 4, 1, 2])
        );
        let f = generator4("f1234").unwrap();
        let c = chamber_coordinates([1, 2, 3, 4], &f).unwrap();
        assert_eq!((c.y_ab(), c.y_cd()), (&rat(1), &rat(1)));
        assert_eq!(chamber_side([1, 2, 3, 4], &f).unwrap(), ChamberSide::Boundary);
        assert_eq!(
            chamber_side([1, 2, 3, 4], &generator4("e12").unwrap()).unwrap(),
            ChamberSide::Outside
        );
        assert_eq!(ChamberSide::Chamber([3, 4, 1, 2]).to_string(), "F3412");
    }

    #[test]
    fn chamber_side_of_relabeled_omega() {
        for s in CHAMBER_SPLITS {
            for p in [s, [s[2], s[3], s[0], s[1]]] {
                let [a, b, c, d] = p;
                let e = generator4(&format!("e{a}{b}{c}{d}5")).unwrap();
                assert_eq!(chamber_side(p, &e).unwrap(), ChamberSide::Chamber(p));
            }
        }
    }

    #[test]
    fn splits() {
        assert_eq!(parse_split("3412").unwrap(), [3, 4, 1, 2]);
        assert!(parse_split("1123").is_err());
        assert!(parse_split("12345").is_err());
    }

    #[test]
    fn json_round_trip() {
        let parsed = parse_catalog_json(&catalog_json()).unwrap();
        assert_eq!(parsed, catalog_entries());
    }

    #[test]
    fn shipped_file_matches_embedded_defaults() {
        assert_eq!(include_str!("../data/catalog.json"), catalog_json());
    }
}
