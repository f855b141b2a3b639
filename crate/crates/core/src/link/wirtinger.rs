use serde::Serialize;

use crate::chain_complex::{validate_complex, ChainError, GroupRingComplex, LaurentMatrix};
use crate::laurent::Laurent;

use super::diagram::ColoredLinkDiagram;

/// Generator index and exponent `+1` or `-1`.
pub type Letter = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WirtingerPresentation {
    /// Component of the arc behind each generator.
    pub generator_component: Vec<usize>,
    pub relators: Vec<Vec<Letter>>,
}

impl WirtingerPresentation {
    pub fn generator_count(&self) -> usize {
        self.generator_component.len()
    }

    /// Exponent sum of a word per component.
    pub fn abelianize(&self, word: &[Letter], components: usize) -> Vec<i64> {
        let mut v = vec![0; components];
        for &(g, e) in word {
            v[self.generator_component[g]] += e as i64;
        }
        v
    }
}

/// One generator per over-arc (plus one per crossing-free component) and one
/// relator `x_k^e x_i x_k^-e x_j^-1` per crossing, where `x_i`, `x_j` are the
/// incoming and outgoing under-arcs, `x_k` the over-arc and `e` the sign.
pub fn wirtinger(d: &ColoredLinkDiagram) -> WirtingerPresentation {
    let diag = &d.diagram;
    let n_edges = diag.edge_count();
    let mut arc_of_edge = vec![usize::MAX; n_edges];
    let mut generator_component = Vec::new();
    for comp in 0..diag.component_count() {
        let edges = diag.component_edges(comp);
        if edges.is_empty() {
            generator_component.push(comp);
            continue;
        }
        // Start each component right after an under-crossing when possible.
        let start = edges.iter().position(|&e| diag.tail(e).1 == 2).unwrap_or(0);
        for k in 0..edges.len() {
            let e = edges[(start + k) % edges.len()];
            if k == 0 || diag.tail(e).1 == 2 {
                generator_component.push(comp);
            }
            arc_of_edge[e] = generator_component.len() - 1;
        }
    }
    let relators = diag
        .crossings()
        .iter()
        .map(|x| {
            let i = arc_of_edge[x.edges[0]];
            let j = arc_of_edge[x.edges[2]];
            let k = arc_of_edge[x.edges[1]];
            let e = x.sign() as i8;
            vec![(k, e), (i, 1), (k, -e), (j, -1)]
        })
        .collect();
    WirtingerPresentation { generator_component, relators }
}

fn monomial_of(exps: &[i32]) -> Laurent {
    Laurent::monomial(1.into(), exps.to_vec())
}

/// Presentation complex with abelianized Fox derivatives as boundaries:
/// ranks `(1, #generators, #relators)` in degrees 0, 1, 2.
pub fn fox_complex(w: &WirtingerPresentation, d: &ColoredLinkDiagram) -> Result<GroupRingComplex, ChainError> {
    let m = d.m();
    let gens = w.generator_count();
    let color = |g: usize| d.color_of(w.generator_component[g]);
    let mut d1 = LaurentMatrix::zeros(1, gens);
    for g in 0..gens {
        d1.set(0, g, Laurent::var(color(g)).sub(&Laurent::one()));
    }
    let mut d2 = LaurentMatrix::zeros(gens, w.relators.len());
    for (r, word) in w.relators.iter().enumerate() {
        let mut prefix = vec![0i32; m];
        for &(g, e) in word {
            let c = color(g) - 1;
            let term = if e > 0 {
                monomial_of(&prefix)
            } else {
                prefix[c] -= 1;
                monomial_of(&prefix).neg()
            };
            if e > 0 {
                prefix[c] += 1;
            }
            let sum = d2.get(g, r).add(&term);
            d2.set(g, r, sum);
        }
    }
    let c = GroupRingComplex { m, ranks: vec![1, gens, w.relators.len()], boundaries: vec![d1, d2] };
    validate_complex(&c)?;
    Ok(c)
}
