//! Seifert matrices from diagrams.
//!
//! A diagram is first made braided by Vogel moves (a Reidemeister II move
//! inside a face whose boundary has two edges of distinct Seifert circles
//! running the same way). The braid is then read off the concentric Seifert
//! circles, and the matrix comes from the braid by the standard band-surface
//! formula.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::braid::BraidWord;
use super::diagram::{Crossing, LinkDiagram};
use super::LinkError;
use crate::linalg::Matrix;

/// Integer Seifert matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    #[serde(rename = "V")]
    pub v: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(v: Vec<Vec<i64>>) -> Result<Self, LinkError> {
        let n = v.len();
        if v.iter().any(|r| r.len() != n) {
            return Err(LinkError::NotBraided("Seifert matrix must be square".into()));
        }
        Ok(Self { v })
    }

    pub fn size(&self) -> usize {
        self.v.len()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        Self { v: (0..n).map(|i| (0..n).map(|j| self.v[j][i]).collect()).collect() }
    }

    /// Exact determinant of `a V + b V^T`.
    pub fn det_combination(&self, a: i64, b: i64) -> BigRational {
        let n = self.size();
        let m = Matrix::from_fn(n, n, BigRational::zero(), |i, j| {
            BigRational::from_integer((a * self.v[i][j] + b * self.v[j][i]).into())
        });
        m.determinant()
    }
}

/// Seifert matrix of a braid closure whose every generator occurs.
pub fn braid_seifert_matrix(word: &BraidWord) -> Result<SeifertMatrix, LinkError> {
    let x = &word.letters;
    let used: BTreeSet<u64> = x.iter().map(|l| l.unsigned_abs()).collect();
    if used.len() + 1 != word.strands.max(1) {
        return Err(LinkError::Disconnected);
    }
    let len = x.len();
    let next: Vec<Option<usize>> = (0..len).map(|k| (k + 1..len).find(|&l| x[l].abs() == x[k].abs())).collect();
    let idx: Vec<usize> = (0..len).filter(|&k| next[k].is_some()).collect();
    let n = idx.len();
    let mut v = vec![vec![0i64; n]; n];
    for a in 0..n {
        let k = idx[a];
        let hk = next[k].unwrap();
        v[a][a] = -(x[k] + x[hk]).signum();
        for b in a + 1..n {
            let l = idx[b];
            let hl = next[l].unwrap();
            if hk > hl || hk < l {
                continue;
            }
            if hk == l {
                if x[l] > 0 {
                    v[a][b] = 1;
                } else {
                    v[b][a] = -1;
                }
                continue;
            }
            match x[k].abs() - x[l].abs() {
                1 => v[b][a] = -1,
                -1 => v[a][b] = 1,
                _ => {}
            }
        }
    }
    Ok(SeifertMatrix { v })
}

/// Seifert circles as lists of edges, and the circle of every edge.
fn seifert_circles(d: &LinkDiagram) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = d.edge_count();
    let mut circle_of = vec![usize::MAX; n];
    let mut circles = Vec::new();
    for start in 0..n {
        if circle_of[start] != usize::MAX {
            continue;
        }
        let mut edges = Vec::new();
        let mut e = start;
        while circle_of[e] == usize::MAX {
            circle_of[e] = circles.len();
            edges.push(e);
            e = seifert_next(d, e);
        }
        circles.push(edges);
    }
    (circles, circle_of)
}

/// Smoothing: under-in continues as over-out, over-in as under-out.
fn seifert_next(d: &LinkDiagram, e: usize) -> usize {
    let (c, s) = d.head(e);
    let x = &d.crossings()[c];
    let out = if s == 0 { x.over_out_slot() } else { 2 };
    x.edges[out]
}

/// Face containing two edges of distinct Seifert circles traversed the same way.
fn find_defect(d: &LinkDiagram, circle_of: &[usize]) -> Option<(usize, usize, bool)> {
    for face in d.faces() {
        for i in 0..face.len() {
            for j in i + 1..face.len() {
                let ((e1, f1), (e2, f2)) = (face[i], face[j]);
                if f1 == f2 && circle_of[e1] != circle_of[e2] {
                    return Some((e1, e2, f1));
                }
            }
        }
    }
    None
}

/// Reidemeister II move pushing a finger of `e1` over `e2` through their
/// common face. `left` says the face lies to the left of both edges.
pub(crate) fn vogel_move(d: &LinkDiagram, e1: usize, e2: usize, left: bool) -> LinkDiagram {
    let base = d.edge_count();
    let [e1a, e1b, e1c, e2a, e2b, e2c] = [base, base + 1, base + 2, base + 3, base + 4, base + 5];
    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    for (e, t, h) in [(e1, e1a, e1c), (e2, e2a, e2c)] {
        let (tc, ts) = d.tail(e);
        let (hc, hs) = d.head(e);
        crossings[tc].edges[ts] = t;
        crossings[hc].edges[hs] = h;
    }
    if left {
        crossings.push(Crossing { edges: [e2b, e1a, e2c, e1b], over_forward: true });
        crossings.push(Crossing { edges: [e2a, e1c, e2b, e1b], over_forward: false });
    } else {
        crossings.push(Crossing { edges: [e2a, e1b, e2b, e1c], over_forward: true });
        crossings.push(Crossing { edges: [e2b, e1b, e2c, e1a], over_forward: false });
    }
    LinkDiagram::from_oriented(crossings, d.free_loops()).expect("Vogel move keeps the diagram valid")
}

/// Applies Vogel moves until the diagram is braided.
pub(crate) fn braided_form(d: &LinkDiagram) -> Result<LinkDiagram, LinkError> {
    let n = d.crossing_count();
    let limit = 4 * (n + 2) * (n + 2);
    let mut cur = d.clone();
    for _ in 0..limit {
        let (_, circle_of) = seifert_circles(&cur);
        match find_defect(&cur, &circle_of) {
            None => return Ok(cur),
            Some((e1, e2, left)) => cur = vogel_move(&cur, e1, e2, left),
        }
    }
    Err(LinkError::VogelLimit(limit))
}

/// Reads the braid of a braided, connected diagram.
fn read_braid(d: &LinkDiagram) -> Result<BraidWord, LinkError> {
    let (circles, circle_of) = seifert_circles(d);
    let k = circles.len();
    if d.crossing_count() == 0 {
        return BraidWord::new(1, Vec::new());
    }
    // Seifert graph: circles joined by crossings.
    let mut neighbours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    let mut pair_of = Vec::new();
    for x in d.crossings() {
        let a = circle_of[x.edges[0]];
        let b = circle_of[x.edges[x.over_in_slot()]];
        neighbours[a].insert(b);
        neighbours[b].insert(a);
        pair_of.push((a, b));
    }
    let start = (0..k)
        .find(|&c| neighbours[c].len() <= 1)
        .ok_or_else(|| LinkError::NotBraided("Seifert graph has a cycle".into()))?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let nexts: Vec<usize> = neighbours[cur].iter().copied().filter(|&c| c != prev).collect();
        match nexts.as_slice() {
            [] => break,
            [c] => {
                prev = cur;
                cur = *c;
                order.push(cur);
            }
            _ => return Err(LinkError::NotBraided("Seifert graph is not a path".into())),
        }
        if order.len() > k {
            return Err(LinkError::NotBraided("Seifert graph has a cycle".into()));
        }
    }
    if order.len() != k {
        return Err(LinkError::NotBraided("Seifert graph is not connected".into()));
    }
    let mut level = vec![0usize; k];
    for (i, &c) in order.iter().enumerate() {
        level[c] = i;
    }

    // A ray from the inside of the first circle outwards crosses each circle
    // once; cut every circle there.
    let faces = d.faces();
    let mut face_of: BTreeMap<(usize, bool), usize> = BTreeMap::new();
    for (f, face) in faces.iter().enumerate() {
        for &dart in face {
            face_of.insert(dart, f);
        }
    }
    let face_has_level = |f: usize, lv: usize| faces[f].iter().any(|&(e, _)| level[circle_of[e]] == lv);
    let mut cuts = Vec::with_capacity(k);
    let first = circles[order[0]][0];
    let mut outer = [face_of[&(first, true)], face_of[&(first, false)]]
        .into_iter()
        .find(|&f| k == 1 || face_has_level(f, 1))
        .ok_or_else(|| LinkError::NotBraided("no face between the first two circles".into()))?;
    cuts.push(first);
    for lv in 1..k {
        let e = faces[outer]
            .iter()
            .map(|&(e, _)| e)
            .find(|&e| level[circle_of[e]] == lv)
            .ok_or_else(|| LinkError::NotBraided(format!("circle {lv} does not border the previous face")))?;
        cuts.push(e);
        let sides = [face_of[&(e, true)], face_of[&(e, false)]];
        outer = if sides[0] == outer { sides[1] } else { sides[0] };
    }

    // Crossing order along each circle from its cut, merged topologically.
    let n = d.crossing_count();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut indegree = vec![0usize; n];
    for &cut in &cuts {
        let mut seq = Vec::new();
        let mut e = cut;
        loop {
            seq.push(d.head(e).0);
            e = seifert_next(d, e);
            if e == cut {
                break;
            }
        }
        for w in seq.windows(2) {
            if succ[w[0]].insert(w[1]) {
                indegree[w[1]] += 1;
            }
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&c| indegree[c] == 0).collect();
    let mut letters = Vec::with_capacity(n);
    while let Some(c) = ready.pop_first() {
        let (a, b) = pair_of[c];
        let gen = level[a].min(level[b]) as i64 + 1;
        if level[a].abs_diff(level[b]) != 1 {
            return Err(LinkError::NotBraided("crossing between non-adjacent circles".into()));
        }
        letters.push(gen * d.crossings()[c].sign());
        for &s in &succ[c] {
            indegree[s] -= 1;
            if indegree[s] == 0 {
                ready.insert(s);
            }
        }
    }
    if letters.len() != n {
        return Err(LinkError::NotBraided("circle orders are inconsistent".into()));
    }
    BraidWord::new(k, letters)
}

/// Braid whose closure is isotopic to the diagram (Vogel's algorithm).
pub fn diagram_braid(d: &LinkDiagram) -> Result<BraidWord, LinkError> {
    if !d.is_connected() {
        return Err(LinkError::Disconnected);
    }
    read_braid(&braided_form(d)?)
}

/// Seifert matrix of the surface from Seifert's algorithm on the braided
/// form of a connected diagram.
pub fn seifert_from_diagram(d: &LinkDiagram) -> Result<SeifertMatrix, LinkError> {
    if d.crossing_count() == 0 {
        return if d.is_connected() { Ok(SeifertMatrix::default()) } else { Err(LinkError::Disconnected) };
    }
    braid_seifert_matrix(&diagram_braid(d)?)
}
