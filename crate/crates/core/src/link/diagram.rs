use std::collections::BTreeMap;

use serde::Serialize;

use super::LinkError;

/// A crossing with explicit orientation of its over-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    /// Edge ids in clockwise order from the incoming under-strand.
    pub edges: [usize; 4],
    /// Over-strand runs from slot 1 to slot 3.
    pub over_forward: bool,
}

impl Crossing {
    pub fn sign(&self) -> i64 {
        if self.over_forward {
            1
        } else {
            -1
        }
    }

    /// Whether the strand at `slot` enters the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        match slot {
            0 => true,
            2 => false,
            1 => self.over_forward,
            _ => !self.over_forward,
        }
    }

    pub fn over_in_slot(&self) -> usize {
        if self.over_forward {
            1
        } else {
            3
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }
}

/// `(crossing, slot)`.
pub type Endpoint = (usize, usize);

/// Face-boundary step: an edge and whether it is traversed along its orientation.
pub type Dart = (usize, bool);

/// An oriented link diagram on the sphere. Edges run between crossings and
/// are numbered `0..2n`; crossing-free unknotted circles are counted
/// separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    tail: Vec<Endpoint>,
    head: Vec<Endpoint>,
    edge_component: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl LinkDiagram {
    /// Builds a diagram from oriented crossings. Edge ids may be arbitrary;
    /// they are renumbered in increasing order.
    pub fn from_oriented(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, LinkError> {
        let mut ids: Vec<usize> = crossings.iter().flat_map(|c| c.edges).collect();
        ids.sort_unstable();
        ids.dedup();
        let index: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let crossings: Vec<Crossing> = crossings
            .into_iter()
            .map(|c| Crossing { edges: c.edges.map(|e| index[&e]), over_forward: c.over_forward })
            .collect();
        let n_edges = ids.len();
        let mut tail = vec![None; n_edges];
        let mut head = vec![None; n_edges];
        for (ci, c) in crossings.iter().enumerate() {
            for s in 0..4 {
                let e = c.edges[s];
                let slot = if c.is_incoming(s) { &mut head[e] } else { &mut tail[e] };
                if slot.replace((ci, s)).is_some() {
                    return Err(LinkError::Orientation { label: ids[e] as i64 });
                }
            }
        }
        let mut t = Vec::with_capacity(n_edges);
        let mut h = Vec::with_capacity(n_edges);
        for e in 0..n_edges {
            match (tail[e], head[e]) {
                (Some(a), Some(b)) => {
                    t.push(a);
                    h.push(b);
                }
                _ => return Err(LinkError::Orientation { label: ids[e] as i64 }),
            }
        }
        let mut d = Self {
            crossings,
            free_loops,
            tail: t,
            head: h,
            edge_component: vec![usize::MAX; n_edges],
            components: Vec::new(),
        };
        d.trace_components();
        d.check_planar()?;
        Ok(d)
    }

    fn trace_components(&mut self) {
        for start in 0..self.tail.len() {
            if self.edge_component[start] != usize::MAX {
                continue;
            }
            let comp = self.components.len();
            let mut edges = Vec::new();
            let mut e = start;
            loop {
                self.edge_component[e] = comp;
                edges.push(e);
                e = self.next_edge(e);
                if e == start {
                    break;
                }
            }
            self.components.push(edges);
        }
    }

    fn check_planar(&self) -> Result<(), LinkError> {
        let pieces = self.pieces();
        let mut faces_per_piece = vec![0usize; pieces.len()];
        let mut crossings_per_piece = vec![0usize; pieces.len()];
        let piece_of = self.piece_index();
        for c in 0..self.crossings.len() {
            crossings_per_piece[piece_of[c]] += 1;
        }
        for face in self.faces() {
            let (e, _) = face[0];
            faces_per_piece[piece_of[self.tail[e].0]] += 1;
        }
        if faces_per_piece.iter().zip(&crossings_per_piece).any(|(&f, &v)| f != v + 2) {
            return Err(LinkError::NonPlanar);
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.tail.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Components through crossings, followed by the free loops.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    /// Edges of component `k` in order; empty for free loops.
    pub fn component_edges(&self, k: usize) -> &[usize] {
        self.components.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn edge_component(&self, e: usize) -> usize {
        self.edge_component[e]
    }

    pub fn tail(&self, e: usize) -> Endpoint {
        self.tail[e]
    }

    pub fn head(&self, e: usize) -> Endpoint {
        self.head[e]
    }

    /// Edge that continues `e` through the crossing at its head.
    pub fn next_edge(&self, e: usize) -> usize {
        let (c, s) = self.head[e];
        self.crossings[c].edges[(s + 2) % 4]
    }

    fn other_endpoint(&self, e: usize, p: Endpoint) -> Endpoint {
        if self.tail[e] == p {
            self.head[e]
        } else {
            self.tail[e]
        }
    }

    /// Faces as cyclic lists of darts, each with the face on its left.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.crossings.len();
        let mut seen = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c0 in 0..n {
            for s0 in 0..4 {
                if seen[c0][s0] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut c, mut s) = (c0, s0);
                while !seen[c][s] {
                    seen[c][s] = true;
                    let e = self.crossings[c].edges[s];
                    face.push((e, self.tail[e] == (c, s)));
                    let (c2, s2) = self.other_endpoint(e, (c, s));
                    c = c2;
                    s = (s2 + 1) % 4;
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Connected pieces of the crossing graph, as lists of crossings.
    pub fn pieces(&self) -> Vec<Vec<usize>> {
        let piece_of = self.piece_index();
        let count = piece_of.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); count];
        for (c, &p) in piece_of.iter().enumerate() {
            out[p].push(c);
        }
        out
    }

    fn piece_index(&self) -> Vec<usize> {
        let n = self.crossings.len();
        let mut piece = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if piece[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            piece[start] = next;
            while let Some(c) = stack.pop() {
                for &e in &self.crossings[c].edges {
                    for (d, _) in [self.tail[e], self.head[e]] {
                        if piece[d] == usize::MAX {
                            piece[d] = next;
                            stack.push(d);
                        }
                    }
                }
            }
            next += 1;
        }
        piece
    }

    /// A diagram is connected when it has one piece and no extra loops, or
    /// is a single free loop.
    pub fn is_connected(&self) -> bool {
        let pieces = self.pieces().len();
        pieces + self.free_loops == 1
    }

    /// The two components meeting at a crossing: (under, over).
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let x = &self.crossings[c];
        (self.edge_component[x.edges[0]], self.edge_component[x.edges[1]])
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn linking_number(&self, a: usize, b: usize) -> Result<i64, LinkError> {
        let k = self.component_count();
        for x in [a, b] {
            if x >= k {
                return Err(LinkError::UnknownComponent(x));
            }
        }
        if a == b {
            return Err(LinkError::SameComponent);
        }
        let twice: i64 = (0..self.crossings.len())
            .filter(|&c| {
                let (u, o) = self.crossing_components(c);
                (u == a && o == b) || (u == b && o == a)
            })
            .map(|c| self.crossings[c].sign())
            .sum();
        Ok(twice / 2)
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .map(|x| {
                let [a, b, c, d] = x.edges;
                if x.over_forward {
                    Crossing { edges: [b, c, d, a], over_forward: false }
                } else {
                    Crossing { edges: [d, a, b, c], over_forward: true }
                }
            })
            .collect();
        Self::from_oriented(crossings, self.free_loops).expect("mirror of a valid diagram")
    }

    /// Reverses the orientation of component `k`.
    pub fn reverse_component(&self, k: usize) -> Result<Self, LinkError> {
        if k >= self.component_count() {
            return Err(LinkError::UnknownComponent(k));
        }
        let crossings = (0..self.crossings.len())
            .map(|ci| {
                let x = self.crossings[ci];
                let (u, o) = self.crossing_components(ci);
                let [a, b, c, d] = x.edges;
                match (u == k, o == k) {
                    (false, false) => x,
                    (false, true) => Crossing { edges: x.edges, over_forward: !x.over_forward },
                    (true, false) => Crossing { edges: [c, d, a, b], over_forward: !x.over_forward },
                    (true, true) => Crossing { edges: [c, d, a, b], over_forward: x.over_forward },
                }
            })
            .collect();
        Self::from_oriented(crossings, self.free_loops)
    }

    /// Adds a Reidemeister I kink on edge `e`; `positive` selects the sign of
    /// the new crossing.
    pub fn add_kink(&self, e: usize, positive: bool) -> Self {
        let (e_in, loop_edge, e_out) = (usize::MAX - 2, usize::MAX - 1, usize::MAX);
        let mut crossings = self.replace_edge_ends(e, e_in, e_out);
        // The loop leaves and re-enters on one side; which side and which
        // strand is over fix the sign.
        let x = if positive {
            Crossing { edges: [e_in, loop_edge, loop_edge, e_out], over_forward: true }
        } else {
            Crossing { edges: [e_in, e_out, loop_edge, loop_edge], over_forward: false }
        };
        crossings.push(x);
        Self::from_oriented(crossings, self.free_loops).expect("kink keeps the diagram valid")
    }

    /// Copy of the crossings where the tail end of `e` is renamed `new_tail`
    /// and the head end `new_head`.
    pub(crate) fn replace_edge_ends(&self, e: usize, new_tail: usize, new_head: usize) -> Vec<Crossing> {
        let mut crossings = self.crossings.clone();
        let (tc, ts) = self.tail[e];
        let (hc, hs) = self.head[e];
        crossings[tc].edges[ts] = new_tail;
        crossings[hc].edges[hs] = new_head;
        crossings
    }

    /// Clockwise PD tuples with edges numbered from 1.
    pub fn pd_tuples(&self) -> Vec<[usize; 4]> {
        self.crossings.iter().map(|c| c.edges.map(|e| e + 1)).collect()
    }
}

/// A diagram with a color in `1..=m` for every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredLinkDiagram {
    pub diagram: LinkDiagram,
    colors: Vec<usize>,
}

impl ColoredLinkDiagram {
    /// Every component gets color 1.
    pub fn monochrome(diagram: LinkDiagram) -> Self {
        let colors = vec![1; diagram.component_count()];
        Self { diagram, colors }
    }

    /// Component `k` gets its own color `k + 1`.
    pub fn by_component(diagram: LinkDiagram) -> Self {
        let colors = (1..=diagram.component_count()).collect();
        Self { diagram, colors }
    }

    pub fn new(diagram: LinkDiagram, colors: Vec<usize>) -> Result<Self, LinkError> {
        if colors.len() != diagram.component_count() {
            return Err(LinkError::Coloring(format!(
                "{} colors for {} components",
                colors.len(),
                diagram.component_count()
            )));
        }
        let m = colors.iter().copied().max().unwrap_or(0);
        if colors.contains(&0) {
            return Err(LinkError::Coloring("colors are numbered from 1".into()));
        }
        for c in 1..=m {
            if !colors.contains(&c) {
                return Err(LinkError::Coloring(format!("color {c} is unused")));
            }
        }
        Ok(Self { diagram, colors })
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_of(&self, component: usize) -> usize {
        self.colors[component]
    }

    /// Number of colors in use.
    pub fn m(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// Parses `"0:1,1:2"` (component index, then color) into a color list.
/// Components not mentioned get color 1.
pub fn parse_coloring(text: &str, components: usize) -> Result<Vec<usize>, LinkError> {
    let mut colors = vec![1; components];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, c) =
            part.split_once(':').ok_or_else(|| LinkError::Coloring(format!("expected index:color, got {part:?}")))?;
        let k: usize = k.trim().parse().map_err(|_| LinkError::Coloring(format!("bad component index {k:?}")))?;
        let c: usize = c.trim().parse().map_err(|_| LinkError::Coloring(format!("bad color {c:?}")))?;
        if k >= components {
            return Err(LinkError::UnknownComponent(k));
        }
        colors[k] = c;
    }
    Ok(colors)
}
