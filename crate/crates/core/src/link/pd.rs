use std::collections::BTreeMap;
use std::fmt;

use super::diagram::{Crossing, LinkDiagram};
use super::LinkError;

/// Planar diagram code: clockwise 4-tuples of arc labels, starting at the
/// incoming under-strand. The empty code is the crossing-free unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdCode {
    pub crossings: Vec<[i64; 4]>,
}

/// Parses `[[1,4,2,5],...]`, `X[1,4,2,5] X[...]` or `PD[X[...], ...]`.
pub fn parse_pd(text: &str) -> Result<PdCode, LinkError> {
    let mut stack: Vec<String> = Vec::new();
    let mut groups: Vec<String> = Vec::new();
    let mut opened = false;
    for ch in text.chars() {
        match ch {
            '[' | '(' | '{' => {
                stack.push(String::new());
                opened = true;
            }
            ']' | ')' | '}' => {
                let g = stack.pop().ok_or_else(|| LinkError::Syntax("unbalanced brackets".into()))?;
                if g.chars().any(|c| c.is_ascii_digit()) {
                    groups.push(g);
                }
                if let Some(parent) = stack.last_mut() {
                    parent.push(' ');
                }
            }
            c if c.is_ascii_digit() || c == '-' || c == ',' || c.is_whitespace() => match stack.last_mut() {
                Some(g) => g.push(c),
                None if c.is_whitespace() || c == ',' => {}
                None => return Err(LinkError::Syntax("numbers outside brackets".into())),
            },
            'X' | 'P' | 'D' => {}
            other => return Err(LinkError::Syntax(format!("unexpected character {other:?}"))),
        }
    }
    if !stack.is_empty() {
        return Err(LinkError::Syntax("unbalanced brackets".into()));
    }
    if !opened && !text.trim().is_empty() {
        return Err(LinkError::Syntax("no bracketed tuples".into()));
    }
    let mut crossings = Vec::new();
    for (index, g) in groups.iter().enumerate() {
        // Nested groups leave their own numbers behind; only innermost ones carry digits here.
        let nums: Result<Vec<i64>, _> =
            g.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(str::parse).collect();
        let nums = nums.map_err(|_| LinkError::Syntax(format!("bad number in {g:?}")))?;
        if nums.len() != 4 {
            return Err(LinkError::Arity { index, found: nums.len() });
        }
        crossings.push([nums[0], nums[1], nums[2], nums[3]]);
    }
    let pd = PdCode { crossings };
    pd.to_diagram()?;
    Ok(pd)
}

impl PdCode {
    /// Orients every strand and builds the diagram. Strands that pass under
    /// somewhere take their orientation from the under-crossings; strands
    /// that only pass over run from slot 1 to slot 3 at their first crossing.
    pub fn to_diagram(&self) -> Result<LinkDiagram, LinkError> {
        if self.crossings.is_empty() {
            return LinkDiagram::from_oriented(Vec::new(), 1);
        }
        let mut where_: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in self.crossings.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                where_.entry(l).or_default().push((c, s));
            }
        }
        for (&label, occ) in &where_ {
            if occ.len() != 2 {
                return Err(LinkError::LabelMultiplicity { label, count: occ.len() });
            }
        }
        let n = self.crossings.len();
        // visited[c][0] under pass, visited[c][1] over pass
        let mut visited = vec![[false; 2]; n];
        let mut over_forward = vec![None; n];
        for c0 in 0..n {
            for pass in 0..2 {
                if visited[c0][pass] {
                    continue;
                }
                // Trace the strand, recording entry slots.
                let mut entries = Vec::new();
                let start = (c0, pass);
                let (mut c, mut s) = start;
                loop {
                    visited[c][s % 2] = true;
                    entries.push((c, s));
                    let exit = (s + 2) % 4;
                    let label = self.crossings[c][exit];
                    let occ = &where_[&label];
                    let next = if occ[0] == (c, exit) { occ[1] } else { occ[0] };
                    (c, s) = next;
                    if (c, s) == start {
                        break;
                    }
                }
                let forward = match entries.iter().find(|&&(_, s)| s % 2 == 0) {
                    Some(&(_, s)) => s == 0,
                    None => {
                        let &(_, s) = entries.iter().min_by_key(|&&(c, _)| c).unwrap();
                        s == 1
                    }
                };
                for &(c, s) in &entries {
                    let s = if forward { s } else { (s + 2) % 4 };
                    match s {
                        0 => {}
                        2 => return Err(LinkError::Orientation { label: self.crossings[c][0] }),
                        1 => over_forward[c] = Some(true),
                        _ => over_forward[c] = Some(false),
                    }
                }
            }
        }
        let crossings = self
            .crossings
            .iter()
            .zip(over_forward)
            .map(|(t, f)| Crossing {
                edges: t.map(|l| l as usize),
                over_forward: f.expect("every over pass is traced"),
            })
            .collect();
        // Labels may be negative; shift them before using them as ids.
        let min = self.crossings.iter().flatten().copied().min().unwrap_or(0).min(0);
        let crossings = shift_labels(crossings, min);
        LinkDiagram::from_oriented(crossings, 0)
    }
}

fn shift_labels(crossings: Vec<Crossing>, min: i64) -> Vec<Crossing> {
    if min >= 0 {
        return crossings;
    }
    crossings
        .into_iter()
        .map(|c| Crossing { edges: c.edges.map(|e| (e as i64 - min) as usize), over_forward: c.over_forward })
        .collect()
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[{},{},{},{}]", t[0], t[1], t[2], t[3])?;
        }
        write!(f, "]")
    }
}

impl From<&LinkDiagram> for PdCode {
    fn from(d: &LinkDiagram) -> Self {
        Self { crossings: d.pd_tuples().into_iter().map(|t| t.map(|e| e as i64)).collect() }
    }
}
