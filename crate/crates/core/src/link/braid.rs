use std::fmt;

use super::diagram::{Crossing, LinkDiagram};
use super::pd::PdCode;
use super::LinkError;

/// Braid word on `strands` strands; letter `i` is `s_i`, `-i` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self, LinkError> {
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands.max(1) {
                return Err(LinkError::BraidIndex { index: l, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        at
    }

    /// Number of cycles of the permutation, i.e. components of the closure.
    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for s in 0..self.strands {
            if !seen[s] {
                cycles += 1;
                let mut x = s;
                while !seen[x] {
                    seen[x] = true;
                    x = perm[x];
                }
            }
        }
        cycles
    }

    pub fn mirror(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"1,1,-2"` or `"1 1 -2"`.
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord, LinkError> {
    let letters: Result<Vec<i64>, _> = text
        .split(|c: char| c == ',' || c.is_whitespace() || c == '[' || c == ']')
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect();
    let letters = letters.map_err(|_| LinkError::BraidSyntax(text.to_string()))?;
    let strands = strands.unwrap_or_else(|| letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1));
    BraidWord::new(strands, letters)
}

/// Closure of the braid, strands running upward, with untouched strands
/// recorded as free loops.
pub fn braid_to_diagram(word: &BraidWord) -> LinkDiagram {
    let k = word.strands;
    let mut current: Vec<usize> = (0..k).collect();
    let mut next_label = k;
    let mut touched = vec![false; k];
    let mut crossings = Vec::new();
    for &l in &word.letters {
        let i = l.unsigned_abs() as usize - 1;
        touched[i] = true;
        touched[i + 1] = true;
        let (left_in, right_in) = (current[i], current[i + 1]);
        let (new_left, new_right) = (next_label, next_label + 1);
        next_label += 2;
        let x = if l > 0 {
            // left strand passes over, bottom-left to top-right
            Crossing { edges: [right_in, left_in, new_left, new_right], over_forward: true }
        } else {
            Crossing { edges: [left_in, new_left, new_right, right_in], over_forward: false }
        };
        crossings.push(x);
        current[i] = new_left;
        current[i + 1] = new_right;
    }
    // Close up: the top label at position p is identified with the bottom one.
    let mut alias: Vec<usize> = (0..next_label).collect();
    for p in 0..k {
        alias[current[p]] = p;
    }
    for x in &mut crossings {
        x.edges = x.edges.map(|e| alias[e]);
    }
    // Strands that never cross pick up their own label only; they are free loops.
    let free = touched.iter().filter(|t| !**t).count();
    LinkDiagram::from_oriented(crossings, free).expect("braid closures are valid diagrams")
}

pub fn braid_to_pd(word: &BraidWord) -> PdCode {
    PdCode::from(&braid_to_diagram(word))
}
