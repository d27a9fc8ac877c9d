//! Labeled qubit/check bipartite graphs and their 4-cycle graphs.

use crate::gf4::F4;
use crate::stabilizer::ParityCheck;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    n_qubits: usize,
    n_checks: usize,
    edges: Vec<(u32, u32, F4)>,
    by_qubit: Vec<Vec<(u32, F4)>>,
    by_check: Vec<Vec<(u32, F4)>>,
}

impl TannerGraph {
    /// Edges are `(qubit, check, label)`; duplicates and zero labels are rejected.
    pub fn new(n_qubits: usize, n_checks: usize, mut edges: Vec<(u32, u32, F4)>) -> Result<Self> {
        edges.sort_unstable_by_key(|&(q, c, _)| (c, q));
        let mut by_qubit = vec![Vec::new(); n_qubits];
        let mut by_check = vec![Vec::new(); n_checks];
        for (i, &(q, c, l)) in edges.iter().enumerate() {
            if q as usize >= n_qubits || c as usize >= n_checks {
                return Err(Error::Construction(format!("edge ({q}, {c}) out of range")));
            }
            if l.is_zero() {
                return Err(Error::Construction(format!("edge ({q}, {c}) has a zero label")));
            }
            if i > 0 && edges[i - 1].0 == q && edges[i - 1].1 == c {
                return Err(Error::Construction(format!("duplicate edge ({q}, {c})")));
            }
            by_qubit[q as usize].push((c, l));
            by_check[c as usize].push((q, l));
        }
        for adj in by_qubit.iter_mut() {
            adj.sort_unstable_by_key(|&(c, _)| c);
        }
        Ok(TannerGraph {
            n_qubits,
            n_checks,
            edges,
            by_qubit,
            by_check,
        })
    }

    pub fn from_parity_check(m: &ParityCheck) -> Self {
        let edges = m
            .rows()
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(c, s)| (c, i as u32, s)))
            .collect();
        TannerGraph::new(m.n(), m.m(), edges).expect("parity-check rows are valid edges")
    }

    pub fn to_parity_check(&self) -> Result<ParityCheck> {
        ParityCheck::new(
            self.n_qubits,
            self.by_check.iter().map(|adj| adj.to_vec()).collect(),
        )
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_checks(&self) -> usize {
        self.n_checks
    }

    /// Edges sorted by `(check, qubit)`.
    pub fn edges(&self) -> &[(u32, u32, F4)] {
        &self.edges
    }

    pub fn qubit_adj(&self, q: usize) -> &[(u32, F4)] {
        &self.by_qubit[q]
    }

    pub fn check_adj(&self, c: usize) -> &[(u32, F4)] {
        &self.by_check[c]
    }

    /// `(a, b)` when every qubit has degree `a` and every check degree `b`.
    pub fn regular_degrees(&self) -> Option<(usize, usize)> {
        let a = self.by_qubit.first()?.len();
        let b = self.by_check.first()?.len();
        (self.by_qubit.iter().all(|v| v.len() == a) && self.by_check.iter().all(|v| v.len() == b))
            .then_some((a, b))
    }

    pub fn label(&self, q: usize, c: usize) -> F4 {
        self.by_qubit[q]
            .binary_search_by_key(&(c as u32), |&(c, _)| c)
            .map_or(F4::Zero, |k| self.by_qubit[q][k].1)
    }
}

/// Graph on qubits joining two qubits that sit on a common pair of checks,
/// with anticommuting labels at both positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourCycleGraph {
    pub adjacency: Vec<Vec<u32>>,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl FourCycleGraph {
    pub fn degree(&self, q: usize) -> usize {
        self.adjacency[q].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

pub fn four_cycle_graph(t: &TannerGraph) -> FourCycleGraph {
    let mut adjacency = vec![Vec::new(); t.n_qubits()];
    for (q, adj) in adjacency.iter_mut().enumerate() {
        let checks = t.qubit_adj(q);
        for (i, &(c1, l1)) in checks.iter().enumerate() {
            for &(c2, l2) in &checks[i + 1..] {
                if !l1.herm(l2) {
                    continue;
                }
                // partners: other qubits on both c1 and c2 with anticommuting labels
                for &(q2, m1) in t.check_adj(c1 as usize) {
                    if q2 as usize == q {
                        continue;
                    }
                    let m2 = t.label(q2 as usize, c2 as usize);
                    if !m2.is_zero() && m1.herm(m2) {
                        adj.push(q2);
                    }
                }
            }
        }
        adj.sort_unstable();
        adj.dedup();
    }
    let min_degree = adjacency.iter().map(Vec::len).min().unwrap_or(0);
    let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
    FourCycleGraph {
        adjacency,
        min_degree,
        max_degree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use F4::{Omega as W, OmegaBar as B};

    #[test]
    fn rejects_duplicates_and_zero_labels() {
        assert!(TannerGraph::new(2, 1, vec![(0, 0, W), (0, 0, B)]).is_err());
        assert!(TannerGraph::new(2, 1, vec![(0, 0, F4::Zero)]).is_err());
        assert!(TannerGraph::new(2, 1, vec![(2, 0, W)]).is_err());
    }

    #[test]
    fn round_trip_through_parity_check() {
        let t = TannerGraph::new(3, 2, vec![(0, 0, W), (1, 0, B), (1, 1, W), (2, 1, W)]).unwrap();
        let m = t.to_parity_check().unwrap();
        assert_eq!(TannerGraph::from_parity_check(&m), t);
        assert_eq!(t.regular_degrees(), None);
        assert_eq!(t.label(1, 0), B);
        assert_eq!(t.label(0, 1), F4::Zero);
    }

    #[test]
    fn no_mixed_labels_means_no_four_cycles() {
        let t = TannerGraph::new(
            3,
            2,
            vec![(0, 0, W), (1, 0, W), (2, 0, W), (0, 1, W), (1, 1, W), (2, 1, W)],
        )
        .unwrap();
        let g = four_cycle_graph(&t);
        assert_eq!((g.min_degree, g.max_degree), (0, 0));
    }

    #[test]
    fn mixed_four_cycle_detected() {
        // q0: ω on c0, ω̄ on c1; q1: ω̄ on c0, ω on c1
        let t = TannerGraph::new(3, 2, vec![(0, 0, W), (0, 1, B), (1, 0, B), (1, 1, W), (2, 0, W)])
            .unwrap();
        let g = four_cycle_graph(&t);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert_eq!(g.degree(2), 0);
        assert_eq!(g.edge_count(), 1);
    }
}
