//! Codimension-one faces of the perfect cone `K` in rank four.
//!
//! After the change of variables `x = T y` the twelve generators of `K`
//! become the forms `(y_p + y_q)^2` and `(y_p - y_q)^2`. A facet drops three
//! of them; recording each dropped `(y_p + y_q)^2` as a black edge `pq` and
//! each dropped `(y_p - y_q)^2` as a red edge gives a three-edge graph on
//! four vertices. The group generated by sign changes, transpositions and
//! `y -> J y / 2 - y` permutes the twelve forms and hence the facets.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::catalog::{generator4, omega, NamedCone};
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Matrix, QuadraticForm, Rational};

/// `(y_p + y_q)^2` when `plus`, else `(y_p - y_q)^2`, with `1 <= p < q <= 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPair {
    pub p: usize,
    pub q: usize,
    pub plus: bool,
}

impl SignedPair {
    pub fn new(p: usize, q: usize, plus: bool) -> Self {
        assert!(p != q && (1..=4).contains(&p) && (1..=4).contains(&q));
        let (p, q) = if p < q { (p, q) } else { (q, p) };
        Self { p, q, plus }
    }

    pub fn color(&self) -> Color {
        if self.plus {
            Color::Black
        } else {
            Color::Red
        }
    }

    pub fn sign(&self) -> &'static str {
        if self.plus {
            "+"
        } else {
            "-"
        }
    }

    pub fn form(&self) -> QuadraticForm {
        let mut m = Matrix::zeros(4, 4);
        let (a, b) = (self.p - 1, self.q - 1);
        m[(a, a)] = rat(1);
        m[(b, b)] = rat(1);
        let off = if self.plus { rat(1) } else { rat(-1) };
        m[(a, b)] = off.clone();
        m[(b, a)] = off;
        QuadraticForm::new(m).expect("symmetric")
    }
}

impl fmt::Display for SignedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(y{} {} y{})^2", self.p, self.sign(), self.q)
    }
}

/// The twelve signed pairs in a fixed order.
pub fn signed_pairs() -> Vec<SignedPair> {
    let mut out = Vec::with_capacity(12);
    for p in 1..=4 {
        for q in p + 1..=4 {
            out.push(SignedPair::new(p, q, true));
            out.push(SignedPair::new(p, q, false));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    Red,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Triangle,
    Fork,
    /// Paths, disconnected graphs and graphs with a doubled edge.
    Other,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Triangle => "triangle",
            Shape::Fork => "fork",
            Shape::Other => "other",
        })
    }
}

/// Three colored edges on the vertices `1..=4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    pub edges: Vec<SignedPair>,
}

impl ColoredGraph {
    pub fn shape(&self) -> Shape {
        let pairs: BTreeSet<(usize, usize)> = self.edges.iter().map(|e| (e.p, e.q)).collect();
        if pairs.len() != 3 {
            return Shape::Other;
        }
        let mut degree = BTreeMap::new();
        for &(p, q) in &pairs {
            *degree.entry(p).or_insert(0) += 1;
            *degree.entry(q).or_insert(0) += 1;
        }
        match degree.len() {
            3 => Shape::Triangle,
            4 if degree.values().any(|&d| d == 3) => Shape::Fork,
            _ => Shape::Other,
        }
    }

    pub fn is_monochrome(&self, c: Color) -> bool {
        self.edges.iter().all(|e| e.color() == c)
    }
}

/// `x = T y` with `(x1, x2, x3, x4) = (y1 + y2, y1 - y2, y1 - y3, y1 - y4)`.
pub fn voronoi_matrix() -> Matrix {
    Matrix::from_i64(&[&[1, 1, 0, 0], &[1, -1, 0, 0], &[1, 0, -1, 0], &[1, 0, 0, -1]])
}

/// `T^T B T`: the form in the variables `y`.
pub fn voronoi_transform(b: &QuadraticForm) -> Result<QuadraticForm> {
    b.congruence(&voronoi_matrix())
}

/// The signed pair whose form spans the same ray as `b`, if any.
pub fn identify_pair(b: &QuadraticForm) -> Option<SignedPair> {
    if b.rank() != 4 {
        return None;
    }
    let target = b.primitive_integral();
    let positive = (0..4).any(|i| b.entry(i, i).is_positive());
    if !positive {
        return None;
    }
    signed_pairs().into_iter().find(|s| s.form().primitive_integral() == target)
}

/// Labels of the twelve generators of `K`.
pub fn k_generator_labels() -> Vec<String> {
    crate::catalog::catalog("dim4.K").expect("K in catalog").labels
}

/// Image of each generator of `K` among the signed pairs, with its scalar.
pub fn k_generator_images() -> Result<Vec<(String, SignedPair, Rational)>> {
    let k = crate::catalog::catalog("dim4.K")?;
    k.labels
        .iter()
        .zip(&k.generators)
        .map(|(l, g)| {
            let img = voronoi_transform(g)?;
            let s = identify_pair(&img).ok_or_else(|| Error::Invariant(format!("{l} has no signed pair image")))?;
            let scale = img.entry(s.p - 1, s.p - 1).clone();
            Ok((l.clone(), s, scale))
        })
        .collect()
}

fn coordinates(forms: &[QuadraticForm]) -> Matrix {
    let rows: Vec<Vec<Rational>> = forms.iter().map(QuadraticForm::upper_coordinates).collect();
    Matrix::from_rows(rows).expect("uniform")
}

/// A linear functional on upper coordinates of symmetric matrices that
/// vanishes on the kept forms and is positive on the dropped ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialCertificate {
    pub functional: Vec<Rational>,
}

impl FacialCertificate {
    pub fn evaluate(&self, b: &QuadraticForm) -> Rational {
        self.functional
            .iter()
            .zip(b.upper_coordinates())
            .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
    }
}

/// Certificate that dropping `dropped` from the twelve signed-pair forms
/// leaves a codimension-one face, or `None` (not a face).
pub fn facial_certificate(dropped: &[SignedPair]) -> Option<FacialCertificate> {
    let set: BTreeSet<SignedPair> = dropped.iter().copied().collect();
    if set.len() != 3 || dropped.len() != 3 {
        return None;
    }
    let kept: Vec<QuadraticForm> = signed_pairs()
        .into_iter()
        .filter(|s| !set.contains(s))
        .map(|s| s.form())
        .collect();
    let m = coordinates(&kept);
    if m.rank() != 9 {
        return None;
    }
    let null = m.nullspace();
    let mut l = null.into_iter().next()?.0;
    let cert = FacialCertificate { functional: l.clone() };
    let first = cert.evaluate(&dropped[0].form());
    if first.is_zero() {
        return None;
    }
    if first.is_negative() {
        l.iter_mut().for_each(|x| *x = -x.clone());
    }
    let cert = FacialCertificate { functional: l };
    dropped
        .iter()
        .all(|d| cert.evaluate(&d.form()).is_positive())
        .then_some(cert)
}

/// A facet of `K` in signed-pair coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KFace {
    /// Sorted.
    pub dropped: [SignedPair; 3],
    pub certificate: FacialCertificate,
}

impl KFace {
    pub fn graph(&self) -> ColoredGraph {
        ColoredGraph {
            edges: self.dropped.to_vec(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.graph().shape()
    }

    pub fn kept(&self) -> Vec<SignedPair> {
        signed_pairs().into_iter().filter(|s| !self.dropped.contains(s)).collect()
    }
}

fn sorted3(mut d: Vec<SignedPair>) -> [SignedPair; 3] {
    d.sort();
    [d[0], d[1], d[2]]
}

/// All codimension-one faces, found by testing every triple of generators.
pub fn enumerate_faces() -> Vec<KFace> {
    signed_pairs()
        .into_iter()
        .combinations(3)
        .filter_map(|d| {
            let certificate = facial_certificate(&d)?;
            Some(KFace {
                dropped: sorted3(d),
                certificate,
            })
        })
        .collect()
}

fn tau(i: usize) -> Matrix {
    let mut m = Matrix::identity(4);
    m[(i - 1, i - 1)] = rat(-1);
    m
}

fn swap(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for k in 0..4 {
        let t = if k == i - 1 {
            j - 1
        } else if k == j - 1 {
            i - 1
        } else {
            k
        };
        m[(k, t)] = rat(1);
    }
    m
}

/// `y_i -> -y_i + (y_1 + y_2 + y_3 + y_4) / 2`.
pub fn sigma() -> Matrix {
    let mut m = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = if i == j { ratio(-1, 2) } else { ratio(1, 2) };
        }
    }
    m
}

/// The generators `tau_i`, `tau_ij` and `sigma`.
pub fn group_generators() -> Vec<Matrix> {
    let mut out: Vec<Matrix> = (1..=4).map(tau).collect();
    for i in 1..=4 {
        for j in i + 1..=4 {
            out.push(swap(i, j));
        }
    }
    out.push(sigma());
    out
}

pub const GROUP_BOUND: usize = 10_000;

/// Closure of the generators under multiplication.
pub fn group_g() -> Result<Vec<Matrix>> {
    let gens = group_generators();
    let id = Matrix::identity(4);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in &gens {
            let b = a.mul(g)?;
            if seen.insert(b.clone()) {
                if seen.len() > GROUP_BOUND {
                    return Err(Error::GroupClosure(GROUP_BOUND));
                }
                order.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Ok(order)
}

/// Where `y -> gamma y` sends each signed-pair form under `F -> gamma^T F
/// gamma`, or `None` if some image is not a signed-pair form.
pub fn pair_permutation(gamma: &Matrix) -> Option<BTreeMap<SignedPair, SignedPair>> {
    signed_pairs()
        .into_iter()
        .map(|s| {
            let img = s.form().congruence(gamma).ok()?;
            let t = identify_pair(&img)?;
            (img == t.form()).then_some((s, t))
        })
        .collect()
}

fn act(perm: &BTreeMap<SignedPair, SignedPair>, dropped: &[SignedPair; 3]) -> [SignedPair; 3] {
    sorted3(dropped.iter().map(|d| perm[d]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitName {
    BF,
    RT,
}

impl fmt::Display for OrbitName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitName::BF => "BF",
            OrbitName::RT => "RT",
        })
    }
}

/// The two orbits of the group on the facets.
#[derive(Clone, Debug)]
pub struct FaceOrbits {
    pub bf: Vec<KFace>,
    pub rt: Vec<KFace>,
}

impl FaceOrbits {
    pub fn orbit_of(&self, dropped: &[SignedPair; 3]) -> Option<OrbitName> {
        if self.bf.iter().any(|f| &f.dropped == dropped) {
            Some(OrbitName::BF)
        } else if self.rt.iter().any(|f| &f.dropped == dropped) {
            Some(OrbitName::RT)
        } else {
            None
        }
    }
}

/// Splits the faces into orbits of the group generated by `gens`. The orbit
/// holding the all-red triangles is RT, the other BF; any other pattern is
/// an error.
pub fn orbit_classify(faces: &[KFace], gens: &[Matrix]) -> Result<FaceOrbits> {
    let perms: Vec<BTreeMap<SignedPair, SignedPair>> = gens
        .iter()
        .map(|g| pair_permutation(g).ok_or_else(|| Error::Invariant("group element does not permute the forms".into())))
        .collect::<Result<_>>()?;
    let index: BTreeMap<[SignedPair; 3], usize> = faces.iter().enumerate().map(|(i, f)| (f.dropped, i)).collect();
    let mut label = vec![usize::MAX; faces.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..faces.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        label[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for p in &perms {
                let img = act(p, &faces[i].dropped);
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::Invariant("group maps a face to a non-face".into()))?;
                if label[j] == usize::MAX {
                    label[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        orbits.push(members);
    }
    if orbits.len() != 2 {
        return Err(Error::Invariant(format!("expected two face orbits, found {}", orbits.len())));
    }
    let red = |o: &Vec<usize>| {
        o.iter().any(|&i| {
            let g = faces[i].graph();
            g.shape() == Shape::Triangle && g.is_monochrome(Color::Red)
        })
    };
    let (rt, bf) = if red(&orbits[0]) {
        (&orbits[0], &orbits[1])
    } else {
        (&orbits[1], &orbits[0])
    };
    let pick = |o: &Vec<usize>| o.iter().map(|&i| faces[i].clone()).collect();
    Ok(FaceOrbits {
        bf: pick(bf),
        rt: pick(rt),
    })
}

/// Voronoi type of the cone spanned by a facet and `omega`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VoronoiType {
    II,
    III,
}

impl fmt::Display for VoronoiType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VoronoiType::II => "II",
            VoronoiType::III => "III",
        })
    }
}

pub fn classify_type(face: &KFace, orbits: &FaceOrbits) -> Option<VoronoiType> {
    match orbits.orbit_of(&face.dropped)? {
        OrbitName::BF => Some(VoronoiType::II),
        OrbitName::RT => Some(VoronoiType::III),
    }
}

/// The facet of `K` spanned by the given forms, when they are exactly nine
/// generators of `K` cutting out a certified facet.
pub fn face_of_generators(forms: &[QuadraticForm]) -> Result<Option<KFace>> {
    let mut kept = BTreeSet::new();
    for f in forms {
        let Some(s) = identify_pair(&voronoi_transform(f)?) else {
            return Ok(None);
        };
        kept.insert(s);
    }
    if kept.len() != 9 || forms.len() != 9 {
        return Ok(None);
    }
    let dropped: Vec<SignedPair> = signed_pairs().into_iter().filter(|s| !kept.contains(s)).collect();
    Ok(facial_certificate(&dropped).map(|certificate| KFace {
        dropped: sorted3(dropped),
        certificate,
    }))
}

pub fn face_of_cone(cone: &NamedCone) -> Result<Option<KFace>> {
    if cone.rank != 4 {
        return Ok(None);
    }
    face_of_generators(&cone.generators)
}

fn relabel(b: &QuadraticForm, p: &[usize]) -> QuadraticForm {
    let mut out = Matrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            out[(p[i], p[j])] = b.entry(i, j).clone();
        }
    }
    QuadraticForm::new(out).expect("symmetric")
}

/// For a cone that is, after some coordinate permutation, a facet of `K`
/// together with `omega`: that facet and the permuted generators.
pub fn omega_face(cone: &NamedCone) -> Result<Option<KFace>> {
    if cone.rank != 4 {
        return Ok(None);
    }
    let w = omega();
    for p in (0..4).permutations(4) {
        let moved: Vec<QuadraticForm> = cone.generators.iter().map(|g| relabel(g, &p)).collect();
        if moved.iter().filter(|g| **g == w).count() != 1 {
            continue;
        }
        let rest: Vec<QuadraticForm> = moved.into_iter().filter(|g| *g != w).collect();
        if let Some(face) = face_of_generators(&rest)? {
            return Ok(Some(face));
        }
    }
    Ok(None)
}

/// Type of a cone spanned by `omega` and a facet of `K`, up to relabeling
/// coordinates.
pub fn cone_type(cone: &NamedCone, orbits: &FaceOrbits) -> Result<Option<VoronoiType>> {
    Ok(omega_face(cone)?.and_then(|f| classify_type(&f, orbits)))
}

/// `(x1 - x2)^2`, the generator of the first perfect cone missing from `K`.
pub fn e12() -> QuadraticForm {
    generator4("e12").expect("printed")
}
