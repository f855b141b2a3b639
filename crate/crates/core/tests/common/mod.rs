//! Shared knot and link corpus.
//!
//! PD codes are read with the crate's clockwise convention. Table codes
//! written for the counterclockwise reading describe the mirror image, which is
//! why some pairs below compare a PD code against a mirrored braid.

#![allow(dead_code)]

use twisig::link::{braid_to_diagram, parse_braid, parse_pd, seifert_from_diagram, LinkDiagram, SeifertMatrix};

pub struct Entry {
    pub name: &'static str,
    pub braid: &'static str,
    pub strands: usize,
    pub components: usize,
    /// Known `sigma(-1)` in the crate convention (positive trefoil is `-2`).
    pub sigma_half: i64,
    /// Genus of the Seifert surface of the braid closure.
    pub seifert_genus: u64,
}

pub const CORPUS: &[Entry] = &[
    Entry { name: "unknot", braid: "1", strands: 2, components: 1, sigma_half: 0, seifert_genus: 0 },
    Entry { name: "3_1", braid: "1,1,1", strands: 2, components: 1, sigma_half: -2, seifert_genus: 1 },
    Entry { name: "4_1", braid: "1,-2,1,-2", strands: 3, components: 1, sigma_half: 0, seifert_genus: 1 },
    Entry { name: "5_1", braid: "1,1,1,1,1", strands: 2, components: 1, sigma_half: -4, seifert_genus: 2 },
    Entry { name: "5_2", braid: "1,1,1,2,-1,2", strands: 3, components: 1, sigma_half: -2, seifert_genus: 2 },
    Entry { name: "6_1", braid: "1,1,2,-1,-3,2,-3", strands: 4, components: 1, sigma_half: 0, seifert_genus: 2 },
    Entry { name: "6_2", braid: "1,1,1,-2,1,-2", strands: 3, components: 1, sigma_half: -2, seifert_genus: 2 },
    Entry { name: "6_3", braid: "1,1,-2,1,-2,-2", strands: 3, components: 1, sigma_half: 0, seifert_genus: 2 },
    Entry { name: "7_1", braid: "1,1,1,1,1,1,1", strands: 2, components: 1, sigma_half: -6, seifert_genus: 3 },
    Entry { name: "hopf", braid: "1,1", strands: 2, components: 2, sigma_half: -1, seifert_genus: 0 },
    Entry { name: "T(2,4)", braid: "1,1,1,1", strands: 2, components: 2, sigma_half: -3, seifert_genus: 1 },
    Entry { name: "T(3,3)", braid: "1,2,1,2,1,2", strands: 3, components: 3, sigma_half: -4, seifert_genus: 1 },
];

pub const TREFOIL_PD: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";
pub const HOPF_PD: &str = "[[1,4,2,3],[3,2,4,1]]";
pub const FIGURE_EIGHT_PD: &str = "X[4,2,5,1], X[8,6,1,5], X[6,3,7,4], X[2,7,3,8]";
pub const FIVE_TWO_PD: &str = "X[1,4,2,5], X[3,8,4,9], X[5,10,6,1], X[9,6,10,7], X[7,2,8,3]";

pub fn knots() -> impl Iterator<Item = &'static Entry> {
    CORPUS.iter().filter(|e| e.components == 1)
}

pub fn diagram(e: &Entry) -> LinkDiagram {
    braid_to_diagram(&parse_braid(e.braid, Some(e.strands)).unwrap())
}

pub fn braid_diagram(word: &str, strands: usize) -> LinkDiagram {
    braid_to_diagram(&parse_braid(word, Some(strands)).unwrap())
}

pub fn pd_diagram(pd: &str) -> LinkDiagram {
    parse_pd(pd).unwrap().to_diagram().unwrap()
}

pub fn seifert(d: &LinkDiagram) -> SeifertMatrix {
    seifert_from_diagram(d).unwrap()
}

/// Sample weights `k/den`, all nontrivial.
pub fn samples() -> Vec<String> {
    ["1/2", "1/3", "2/3", "1/5", "2/5", "1/6", "5/6", "3/7", "1/8", "5/12"].iter().map(|s| s.to_string()).collect()
}
pub mod complexes;
