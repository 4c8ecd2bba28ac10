//! Entanglement families as integer partitions, the descendant order between
//! them, and the family graph (Hasse diagram of that order).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::majorana::to_constellation;
use crate::state::SymmetricState;

/// Largest N accepted by the combinatorial routines.
pub const MAX_QUBITS: usize = 64;

/// Degeneracy configuration of a Majorana constellation: the coincidence
/// multiplicities as a partition of N in non-increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegeneracyConfiguration {
    parts: Vec<usize>,
}

impl DegeneracyConfiguration {
    /// Parts in any order; stored sorted non-increasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a partition needs at least one part"));
        }
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(DegeneracyConfiguration { parts })
    }

    /// `(n)`, the separable family.
    pub fn separable(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `(1, ..., 1)`, the generic family.
    pub fn generic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("N must be at least 1"));
        }
        Self::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// N.
    pub fn n_qubits(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Diversity degree: the number of distinct Majorana points.
    pub fn diversity(&self) -> usize {
        self.parts.len()
    }

    /// Comma-separated parts, e.g. `2,1,1`.
    pub fn to_list_string(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// The family together with everything that descends from it, in
    /// enumeration order.
    pub fn closure(&self) -> Vec<DegeneracyConfiguration> {
        enumerate_partitions(self.n_qubits())
            .expect("n >= 1")
            .into_iter()
            .filter(|d| d == self || descends(self, d).expect("same n"))
            .collect()
    }
}

impl fmt::Display for DegeneracyConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D_{{{}}}", self.to_list_string())
    }
}

impl FromStr for DegeneracyConfiguration {
    type Err = Error;

    /// Parses `n1,n2,...` with parts in any order.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Format(format!("bad partition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DegeneracyConfiguration::new(parts)
    }
}

// Serialized as the comma-separated part list.
impl Serialize for DegeneracyConfiguration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_list_string())
    }
}

impl<'de> Deserialize<'de> for DegeneracyConfiguration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Diversity degree of a family.
pub fn diversity(d: &DegeneracyConfiguration) -> usize {
    d.diversity()
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::domain(format!("N = {n} outside 1..={MAX_QUBITS}")));
    }
    Ok(())
}

/// All partitions of `n` in reverse-lexicographic order, starting with `(n)`
/// and ending with `(1, ..., 1)`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<DegeneracyConfiguration>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<DegeneracyConfiguration>,
) {
    if remaining == 0 {
        out.push(DegeneracyConfiguration {
            parts: current.clone(),
        });
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}

/// Whether `to` descends from `from`: `to` is a strict coarsening of `from`,
/// i.e. the parts of `from` can be grouped into blocks whose sums are the
/// parts of `to`.
pub fn descends(from: &DegeneracyConfiguration, to: &DegeneracyConfiguration) -> Result<bool> {
    if from.n_qubits() != to.n_qubits() {
        return Err(Error::domain(format!(
            "partitions of different N ({} vs {})",
            from.n_qubits(),
            to.n_qubits()
        )));
    }
    if from == to || to.diversity() >= from.diversity() {
        return Ok(false);
    }
    let mut capacity = to.parts.clone();
    Ok(pack(&from.parts, &mut capacity))
}

// Places parts (largest first) into blocks with the given remaining capacity.
fn pack(parts: &[usize], capacity: &mut [usize]) -> bool {
    let Some((&part, rest)) = parts.split_first() else {
        return capacity.iter().all(|&c| c == 0);
    };
    for i in 0..capacity.len() {
        if capacity[i] < part || capacity[..i].contains(&capacity[i]) {
            continue;
        }
        capacity[i] -= part;
        let ok = pack(rest, capacity);
        capacity[i] += part;
        if ok {
            return true;
        }
    }
    false
}

/// The family graph for N qubits: every family, with an edge `D -> D'`
/// whenever `D'` is obtained from `D` by merging two parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyGraph {
    n_qubits: usize,
    nodes: Vec<DegeneracyConfiguration>,
    edges: Vec<(usize, usize)>,
}

impl FamilyGraph {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn nodes(&self) -> &[DegeneracyConfiguration] {
        &self.nodes
    }

    /// Index pairs into [`nodes`](Self::nodes), sources from the generic family down.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_families(
        &self,
    ) -> impl Iterator<Item = (&DegeneracyConfiguration, &DegeneracyConfiguration)> {
        self.edges
            .iter()
            .map(|&(a, b)| (&self.nodes[a], &self.nodes[b]))
    }

    /// Node indices grouped by diversity degree, highest degree first.
    pub fn layers(&self) -> Vec<(usize, Vec<usize>)> {
        let mut layers: Vec<(usize, Vec<usize>)> = Vec::new();
        for d in (1..=self.n_qubits).rev() {
            let members: Vec<usize> = (0..self.nodes.len())
                .filter(|&i| self.nodes[i].diversity() == d)
                .collect();
            if !members.is_empty() {
                layers.push((d, members));
            }
        }
        layers
    }

    /// Families directly below node `i`.
    pub fn children(&self, i: usize) -> impl Iterator<Item = &DegeneracyConfiguration> {
        self.edges
            .iter()
            .filter(move |(a, _)| *a == i)
            .map(|&(_, b)| &self.nodes[b])
    }

    /// DOT digraph with one rank layer per diversity degree, top layer `d = N`.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph families_n{} {{\n", self.n_qubits));
        out.push_str("  rankdir=TB;\n");
        out.push_str("  node [shape=box];\n");
        for (d, members) in self.layers() {
            out.push_str(&format!("  subgraph d{d} {{\n    rank=same;\n"));
            for i in members {
                out.push_str(&format!("    \"{}\";\n", self.nodes[i]));
            }
            out.push_str("  }\n");
        }
        for (a, b) in self.edge_families() {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the family graph: nodes are all partitions of `n`, edges merge
/// exactly two parts.
pub fn hasse_graph(n: usize) -> Result<FamilyGraph> {
    let nodes = enumerate_partitions(n)?;
    let index = |d: &DegeneracyConfiguration| {
        nodes
            .binary_search_by(|x| d.cmp(x))
            .expect("all partitions present")
    };
    let mut edges = BTreeSet::new();
    for (i, node) in nodes.iter().enumerate() {
        let parts = node.parts();
        for a in 0..parts.len() {
            for b in a + 1..parts.len() {
                let mut merged: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != a && k != b)
                    .map(|(_, &p)| p)
                    .collect();
                merged.push(parts[a] + parts[b]);
                let target = DegeneracyConfiguration::new(merged)?;
                edges.insert((i, index(&target)));
            }
        }
    }
    // Top-down: generic family's edges first.
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    Ok(FamilyGraph {
        n_qubits: n,
        nodes,
        edges,
    })
}

/// Family of a pure state: the multiplicity pattern of its constellation.
pub fn classify_pure(s: &SymmetricState, coincidence_tol: f64) -> Result<DegeneracyConfiguration> {
    Ok(to_constellation(s, coincidence_tol)?.degeneracy())
}
