//! Sparse F4 parity-check matrices and the stabilizer-group queries built on
//! their binary symplectic image: commutation audit, syndromes, GF(2) rank and
//! span membership.

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use crate::gf2::{BitRow, EchelonBasis};
use crate::gf4::{F4Vector, F4};
use crate::{Error, Result};

/// Sparse parity-check matrix: row `i` lists its nonzero `(column, symbol)` entries.
#[derive(Debug)]
pub struct ParityCheck {
    n: usize,
    rows: Vec<Vec<(u32, F4)>>,
    cols: Vec<Vec<(u32, F4)>>,
    basis: OnceLock<EchelonBasis>,
}

impl Clone for ParityCheck {
    fn clone(&self) -> Self {
        ParityCheck {
            n: self.n,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            basis: self.basis.clone(),
        }
    }
}

impl PartialEq for ParityCheck {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows
    }
}

impl Eq for ParityCheck {}

impl ParityCheck {
    /// Validates and normalizes (sorts) the rows. Zero entries are rejected.
    pub fn new(n: usize, mut rows: Vec<Vec<(u32, F4)>>) -> Result<Self> {
        let mut cols = vec![Vec::new(); n];
        for (i, row) in rows.iter_mut().enumerate() {
            if row.is_empty() {
                return Err(Error::Domain(format!("row {i} is empty")));
            }
            row.sort_unstable_by_key(|&(c, _)| c);
            for w in row.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::Domain(format!(
                        "row {i} repeats column {}",
                        w[0].0
                    )));
                }
            }
            for &(c, s) in row.iter() {
                if c as usize >= n {
                    return Err(Error::Domain(format!(
                        "row {i}: column {c} out of range for n = {n}"
                    )));
                }
                if s.is_zero() {
                    return Err(Error::Domain(format!("row {i}: explicit zero at column {c}")));
                }
                cols[c as usize].push((i as u32, s));
            }
        }
        Ok(ParityCheck {
            n,
            rows,
            cols,
            basis: OnceLock::new(),
        })
    }

    pub fn from_dense(rows: &[F4Vector]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let sparse = rows
            .iter()
            .map(|r| {
                if r.len() != n {
                    return Err(Error::Dimension {
                        expected: n,
                        got: r.len(),
                    });
                }
                Ok(r.symbols()
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero())
                    .map(|(c, &s)| (c as u32, s))
                    .collect())
            })
            .collect::<Result<Vec<_>>>()?;
        ParityCheck::new(n, sparse)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(u32, F4)>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[(u32, F4)] {
        &self.rows[i]
    }

    /// Nonzero `(row, symbol)` entries of column `c`.
    pub fn col(&self, c: usize) -> &[(u32, F4)] {
        &self.cols[c]
    }

    pub fn entry(&self, row: usize, col: usize) -> F4 {
        self.rows[row]
            .binary_search_by_key(&(col as u32), |&(c, _)| c)
            .map_or(F4::Zero, |k| self.rows[row][k].1)
    }

    pub fn dense_row(&self, i: usize) -> F4Vector {
        let mut v = F4Vector::zeros(self.n);
        for &(c, s) in &self.rows[i] {
            v.0[c as usize] = s;
        }
        v
    }

    pub fn row_symplectic(&self, i: usize) -> BitRow {
        let mut bits = BitRow::zeros(2 * self.n);
        for &(c, s) in &self.rows[i] {
            if s.x() {
                bits.set(c as usize);
            }
            if s.z() {
                bits.set(self.n + c as usize);
            }
        }
        bits
    }

    /// Echelon basis of the symplectic row space, computed on first use.
    pub fn basis(&self) -> &EchelonBasis {
        self.basis.get_or_init(|| {
            let mut basis = EchelonBasis::new(2 * self.n);
            for i in 0..self.m() {
                basis.insert(self.row_symplectic(i));
            }
            basis
        })
    }

    /// Computes the cached basis so later queries are read-only.
    pub fn freeze(&self) -> &Self {
        self.basis();
        self
    }

    pub fn summary(&self) -> CodeSummary {
        let lc = logical_count(self);
        let uniform = |mut it: Box<dyn Iterator<Item = usize> + '_>| {
            let first = it.next()?;
            it.all(|d| d == first).then_some(first)
        };
        let a = uniform(Box::new(self.cols.iter().map(Vec::len)));
        let b = uniform(Box::new(self.rows.iter().map(Vec::len)));
        CodeSummary {
            n: self.n,
            m: self.m(),
            k: lc.k,
            rank: lc.rank,
            a,
            b,
        }
    }

    /// `⟨e, Mⱼ⟩` for every row `j`.
    pub fn syndrome(&self, e: &F4Vector) -> Result<SyndromeVector> {
        if e.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                got: e.len(),
            });
        }
        Ok(SyndromeVector(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .fold(false, |acc, &(c, s)| acc ^ e.0[c as usize].herm(s))
                })
                .collect(),
        ))
    }
}

/// Parameters of a stabilizer code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSummary {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub rank: usize,
    /// Column weight, when constant.
    pub a: Option<usize>,
    /// Row weight, when constant.
    pub b: Option<usize>,
}

impl CodeSummary {
    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.k as f64 / self.n as f64
        }
    }
}

impl fmt::Display for CodeSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: Option<usize>| x.map_or("irregular".to_string(), |v| v.to_string());
        write!(
            f,
            "n={} m={} rank={} k={} a={} b={} rate={:.4}",
            self.n,
            self.m,
            self.rank,
            self.k,
            opt(self.a),
            opt(self.b),
            self.rate()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SyndromeVector(pub Vec<bool>);

impl SyndromeVector {
    pub fn zeros(m: usize) -> Self {
        SyndromeVector(vec![false; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn xor(&self, other: &SyndromeVector) -> SyndromeVector {
        SyndromeVector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }
}

/// Lists every pair `(i, j)`, `i < j`, of anticommuting rows.
pub fn verify_orthogonality(m: &ParityCheck) -> Vec<(usize, usize)> {
    let mut parity = vec![false; m.m()];
    let mut touched = Vec::new();
    let mut out = Vec::new();
    for i in 0..m.m() {
        for &(c, s) in m.row(i) {
            for &(j, t) in m.col(c as usize) {
                let j = j as usize;
                if j <= i {
                    continue;
                }
                if !parity[j] && !touched.contains(&j) {
                    touched.push(j);
                }
                parity[j] ^= s.herm(t);
            }
        }
        touched.sort_unstable();
        for &j in &touched {
            if parity[j] {
                out.push((i, j));
            }
            parity[j] = false;
        }
        touched.clear();
    }
    out
}

pub fn syndrome(m: &ParityCheck, e: &F4Vector) -> Result<SyndromeVector> {
    m.syndrome(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalCount {
    pub k: usize,
    pub rank: usize,
    pub dependencies: usize,
}

/// `k = n − rank₂(symplectic image)`. For rows that do not commute the rank
/// can exceed `n`; `k` is then reported as 0.
pub fn logical_count(m: &ParityCheck) -> LogicalCount {
    let rank = m.basis().rank();
    LogicalCount {
        k: m.n().saturating_sub(rank),
        rank,
        dependencies: m.m() - rank,
    }
}

/// Whether `r` lies in the GF(2) span of the rows (as symplectic vectors).
pub fn in_stabilizer(m: &ParityCheck, r: &F4Vector) -> Result<bool> {
    if r.len() != m.n() {
        return Err(Error::Dimension {
            expected: m.n(),
            got: r.len(),
        });
    }
    if r.is_zero() {
        return Ok(true);
    }
    let mut bits = r.to_symplectic().bits;
    Ok(m.basis().contains_in_place(&mut bits))
}

/// Undetectable, non-stabilizer error supported on a cycle of ω-labeled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaWitness {
    pub error: F4Vector,
    pub weight: usize,
    /// Qubits along the cycle, in walk order.
    pub qubits: Vec<usize>,
    /// Checks along the cycle, in walk order.
    pub checks: Vec<usize>,
}

/// Searches the subgraph of ω-labeled Tanner edges for a shortest cycle whose
/// qubits, each carrying ω̄, give a syndrome-free error outside the stabilizer.
///
/// ω̄ is the symbol that anticommutes with ω and commutes with ω̄, so every
/// check on the cycle sees exactly two anticommuting positions. Candidates
/// are tried in order of (length, start qubit); `None` when the ω-subgraph is
/// acyclic or no candidate passes.
pub fn find_omega_cycle_error(m: &ParityCheck) -> Option<OmegaWitness> {
    let n = m.n();
    // nodes: qubits 0..n, checks n..n+m
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n + m.m()];
    for (i, row) in m.rows().iter().enumerate() {
        for &(c, s) in row {
            if s == F4::Omega {
                adj[c as usize].push((n + i) as u32);
                adj[n + i].push(c);
            }
        }
    }

    let mut search = CycleSearch::new(adj.len());
    let mut candidates: Vec<Vec<u32>> = Vec::new();
    let mut best = usize::MAX;
    for root in 0..n {
        if adj[root].len() < 2 {
            continue;
        }
        // allow slightly longer cycles in case the shortest ones are stabilizers
        let bound = best.saturating_add(4);
        if let Some(cycle) = search.shortest_through(&adj, root, bound) {
            best = best.min(cycle.len());
            candidates.push(cycle);
        }
    }
    // stable sort keeps root order among equal lengths
    candidates.sort_by_key(Vec::len);

    for cycle in candidates {
        let mut error = F4Vector::zeros(n);
        let mut qubits = Vec::new();
        let mut checks = Vec::new();
        for &node in &cycle {
            if (node as usize) < n {
                error.0[node as usize] = F4::OmegaBar;
                qubits.push(node as usize);
            } else {
                checks.push(node as usize - n);
            }
        }
        let clean = m.syndrome(&error).map(|s| s.is_zero()).unwrap_or(false);
        if clean && !in_stabilizer(m, &error).unwrap_or(true) {
            let weight = qubits.len();
            return Some(OmegaWitness {
                error,
                weight,
                qubits,
                checks,
            });
        }
    }
    None
}

struct CycleSearch {
    dist: Vec<u32>,
    parent: Vec<u32>,
    branch: Vec<u32>,
    visited: Vec<u32>,
    queue: VecDeque<u32>,
}

impl CycleSearch {
    fn new(total: usize) -> Self {
        CycleSearch {
            dist: vec![u32::MAX; total],
            parent: vec![u32::MAX; total],
            branch: vec![u32::MAX; total],
            visited: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn reset(&mut self) {
        for &v in &self.visited {
            self.dist[v as usize] = u32::MAX;
            self.parent[v as usize] = u32::MAX;
            self.branch[v as usize] = u32::MAX;
        }
        self.visited.clear();
        self.queue.clear();
    }

    /// Shortest simple cycle through `root` with at most `bound` nodes, as a
    /// node sequence starting at `root`.
    ///
    /// Every node is tagged with the root neighbour its BFS path starts from;
    /// the first edge joining two different branches closes a shortest cycle.
    fn shortest_through(&mut self, adj: &[Vec<u32>], root: usize, bound: usize) -> Option<Vec<u32>> {
        self.reset();
        self.dist[root] = 0;
        self.visited.push(root as u32);
        for &v in &adj[root] {
            self.dist[v as usize] = 1;
            self.parent[v as usize] = root as u32;
            self.branch[v as usize] = v;
            self.visited.push(v);
            self.queue.push_back(v);
        }
        let mut best: Option<(usize, u32, u32)> = None;
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u as usize] as usize;
            let limit = best.map_or(bound, |(l, _, _)| l.min(bound));
            if 2 * du + 1 > limit {
                break;
            }
            for &v in &adj[u as usize] {
                if v as usize == root || v == self.parent[u as usize] {
                    continue;
                }
                if self.dist[v as usize] == u32::MAX {
                    self.dist[v as usize] = du as u32 + 1;
                    self.parent[v as usize] = u;
                    self.branch[v as usize] = self.branch[u as usize];
                    self.visited.push(v);
                    self.queue.push_back(v);
                } else if self.branch[v as usize] != self.branch[u as usize] {
                    let len = du + self.dist[v as usize] as usize + 1;
                    if len <= bound && best.is_none_or(|(l, _, _)| len < l) {
                        best = Some((len, u, v));
                    }
                }
            }
        }
        let (_, u, v) = best?;
        let path_to_root = |mut x: u32| {
            let mut path = Vec::new();
            while x as usize != root {
                path.push(x);
                x = self.parent[x as usize];
            }
            path
        };
        let mut left = path_to_root(u);
        left.reverse();
        let right = path_to_root(v);
        let mut cycle = vec![root as u32];
        cycle.extend(left);
        cycle.extend(right);
        Some(cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf4::vec_inner;
    use F4::{Omega as W, OmegaBar as B, One as Y};

    fn pc(n: usize, rows: &[&[(u32, F4)]]) -> ParityCheck {
        ParityCheck::new(n, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    // [[5,1,3]] code: XZZXI and its cyclic shifts
    fn five_qubit() -> ParityCheck {
        let base = [W, B, B, W, F4::Zero];
        let rows: Vec<F4Vector> = (0..4)
            .map(|s| F4Vector((0..5).map(|i| base[(i + 5 - s) % 5]).collect()))
            .collect();
        ParityCheck::from_dense(&rows).unwrap()
    }

    #[test]
    fn rejects_malformed_rows() {
        assert!(ParityCheck::new(2, vec![vec![]]).is_err());
        assert!(ParityCheck::new(2, vec![vec![(2, W)]]).is_err());
        assert!(ParityCheck::new(2, vec![vec![(1, W), (1, B)]]).is_err());
        assert!(ParityCheck::new(2, vec![vec![(1, F4::Zero)]]).is_err());
        let m = pc(3, &[&[(2, W), (0, B)]]);
        assert_eq!(m.row(0), &[(0, B), (2, W)]);
        assert_eq!(m.entry(0, 2), W);
        assert_eq!(m.entry(0, 1), F4::Zero);
    }

    #[test]
    fn orthogonality_examples() {
        assert!(verify_orthogonality(&pc(1, &[&[(0, W)]])).is_empty());
        assert_eq!(verify_orthogonality(&pc(1, &[&[(0, W)], &[(0, B)]])), vec![(0, 1)]);
        assert!(verify_orthogonality(&five_qubit()).is_empty());
        // brute force agreement on a random-ish dense matrix
        let rows = [
            F4Vector(vec![W, B, Y, F4::Zero]),
            F4Vector(vec![B, B, W, Y]),
            F4Vector(vec![Y, F4::Zero, W, W]),
        ];
        let m = ParityCheck::from_dense(&rows).unwrap();
        let mut expect = Vec::new();
        for i in 0..3 {
            for j in i + 1..3 {
                if vec_inner(&rows[i], &rows[j]).unwrap() {
                    expect.push((i, j));
                }
            }
        }
        assert_eq!(verify_orthogonality(&m), expect);
    }

    #[test]
    fn syndrome_examples() {
        let m = five_qubit();
        assert!(m.syndrome(&F4Vector::zeros(5)).unwrap().is_zero());
        for i in 0..m.m() {
            assert!(m.syndrome(&m.dense_row(i)).unwrap().is_zero());
        }
        let m1 = pc(2, &[&[(1, B)]]);
        let mut e = F4Vector::zeros(2);
        e.0[1] = W;
        assert_eq!(m1.syndrome(&e).unwrap(), SyndromeVector(vec![true]));
        assert!(m1.syndrome(&F4Vector::zeros(3)).is_err());
    }

    #[test]
    fn logical_counts() {
        let m = five_qubit();
        let lc = logical_count(&m);
        assert_eq!((lc.k, lc.rank, lc.dependencies), (1, 4, 0));
        let empty = ParityCheck::new(7, vec![]).unwrap();
        assert_eq!(logical_count(&empty).k, 7);
        // duplicated row is a dependency
        let dup = pc(2, &[&[(0, W), (1, W)], &[(0, W), (1, W)]]);
        assert_eq!(logical_count(&dup).dependencies, 1);
        let s = m.summary();
        assert_eq!((s.n, s.m, s.k, s.a, s.b), (5, 4, 1, None, Some(4)));
    }

    #[test]
    fn stabilizer_membership() {
        let m = five_qubit();
        assert!(in_stabilizer(&m, &F4Vector::zeros(5)).unwrap());
        let combo = m
            .dense_row(0)
            .add(&m.dense_row(2))
            .unwrap()
            .add(&m.dense_row(3))
            .unwrap();
        assert!(in_stabilizer(&m, &combo).unwrap());
        // logical X̄ = XXXXX commutes with every generator but is not one
        let logical = F4Vector(vec![W; 5]);
        assert!(m.syndrome(&logical).unwrap().is_zero());
        assert!(!in_stabilizer(&m, &logical).unwrap());
    }

    #[test]
    fn logical_count_of_anticommuting_rows() {
        let m = pc(1, &[&[(0, W)], &[(0, B)]]);
        assert_eq!(verify_orthogonality(&m), vec![(0, 1)]);
        let lc = logical_count(&m);
        assert_eq!((lc.rank, lc.k, lc.dependencies), (2, 0, 0));
    }

    #[test]
    fn omega_witness_not_applicable_on_tree() {
        // ω-subgraph is a path: q0 - c0 - q1 - c1 - q2
        let m = pc(3, &[&[(0, W), (1, W)], &[(1, W), (2, W)]]);
        assert_eq!(find_omega_cycle_error(&m), None);
    }

    #[test]
    fn omega_witness_on_small_cycle() {
        // Two checks sharing qubits 0 and 1 with ω: a 4-cycle in the ω-subgraph.
        let m = pc(4, &[&[(0, W), (1, W), (2, W)], &[(0, W), (1, W), (3, W)]]);
        assert!(verify_orthogonality(&m).is_empty());
        let w = find_omega_cycle_error(&m).expect("witness");
        assert_eq!(w.weight, 2);
        assert_eq!(w.qubits, vec![0, 1]);
        assert!(m.syndrome(&w.error).unwrap().is_zero());
        assert!(!in_stabilizer(&m, &w.error).unwrap());
    }
}
