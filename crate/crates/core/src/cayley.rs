//! (4,8)-regular codes from a 4-regular Cayley graph of
//! `G = {M ∈ GL₂(F_p) : (det M)² = ±1}` with `S = {g₊, g₊⁻¹, g₋, g₋⁻¹}`.
//!
//! Each check is a closed 8-walk alternating two generators, and each qubit
//! (group element) lies on four of them. Labels follow the determinant class
//! of the qubit; the result is always re-verified for commutation.

use std::collections::HashMap;
use std::fmt;

use crate::gf4::F4;
use crate::matgroup::{enumerate_group, sqrt_minus_one, GroupKind, GroupTable, Mat2};
use crate::stabilizer::verify_orthogonality;
use crate::tanner::TannerGraph;
use crate::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CayleySpec {
    pub p: u32,
    pub g_plus: Mat2,
    pub g_minus: Mat2,
}

impl CayleySpec {
    pub fn new(p: u32, g_plus: [i64; 4], g_minus: [i64; 4]) -> Self {
        CayleySpec {
            p,
            g_plus: Mat2::new(p, g_plus),
            g_minus: Mat2::new(p, g_minus),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DetClass {
    /// `det ∈ {1, −1}`
    PlusMinusOne,
    /// `det ∈ {i, −i}`
    PlusMinusI,
    Outside,
}

impl fmt::Display for DetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetClass::PlusMinusOne => "+-1",
            DetClass::PlusMinusI => "+-i",
            DetClass::Outside => "outside",
        })
    }
}

pub fn det_class(det: u32, p: u32) -> DetClass {
    let i = sqrt_minus_one(p).unwrap_or(0);
    if det == 1 || det == p - 1 {
        DetClass::PlusMinusOne
    } else if i != 0 && (det == i || det == p - i) {
        DetClass::PlusMinusI
    } else {
        DetClass::Outside
    }
}

/// The four alternating relations, named by the pair of steps taken from the base vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CycleType {
    /// steps `g₊, g₋` repeated
    PlusMinus,
    /// steps `g₋, g₊` repeated
    MinusPlus,
    /// steps `g₋, g₊⁻¹` repeated
    MinusPlusInv,
    /// steps `g₋⁻¹, g₊` repeated
    MinusInvPlus,
}

pub const CYCLE_TYPES: [CycleType; 4] = [
    CycleType::PlusMinus,
    CycleType::MinusPlus,
    CycleType::MinusPlusInv,
    CycleType::MinusInvPlus,
];

impl CycleType {
    /// Positions in `[g₊, g₊⁻¹, g₋, g₋⁻¹]` of the two alternating steps.
    fn steps(self) -> [usize; 2] {
        match self {
            CycleType::PlusMinus => [0, 2],
            CycleType::MinusPlus => [2, 0],
            CycleType::MinusPlusInv => [2, 1],
            CycleType::MinusInvPlus => [3, 0],
        }
    }

    /// Positions of the generators leading to the two cycle neighbours of the
    /// base vertex: the first step, and the inverse of the second step.
    fn neighbour_steps(self) -> [usize; 2] {
        let [a, b] = self.steps();
        let mut pair = [a, b ^ 1];
        pair.sort_unstable();
        pair
    }

    /// Whether a qubit with determinant in `{±1}` gets ω on this cycle.
    fn omega_on_first_class(self) -> bool {
        matches!(self, CycleType::PlusMinus | CycleType::MinusPlus)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CycleType::PlusMinus => "(g+ g-)",
            CycleType::MinusPlus => "(g- g+)",
            CycleType::MinusPlusInv => "(g- g+^-1)",
            CycleType::MinusInvPlus => "(g-^-1 g+)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyReport {
    pub p: u32,
    pub plus_in_group: bool,
    pub minus_in_group: bool,
    pub distinct_generators: bool,
    pub reached: usize,
    pub group_order: usize,
    /// Order of `g₊g₋⁻¹`.
    pub order_plus_minus_inv: usize,
    /// Order of `g₋g₊`.
    pub order_minus_plus: usize,
    pub det_plus: u32,
    pub det_minus: u32,
    pub class_plus: DetClass,
    pub class_minus: DetClass,
}

impl CayleyReport {
    pub fn generates(&self) -> bool {
        self.reached == self.group_order
    }

    /// Every Cayley edge joins the two determinant classes.
    pub fn bipartition_proper(&self) -> bool {
        self.class_plus == DetClass::PlusMinusI && self.class_minus == DetClass::PlusMinusI
    }

    pub fn passes(&self) -> bool {
        self.plus_in_group
            && self.minus_in_group
            && self.distinct_generators
            && self.generates()
            && self.order_plus_minus_inv == 4
            && self.order_minus_plus == 4
    }
}

impl fmt::Display for CayleyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "p = {}", self.p)?;
        writeln!(f, "g+ in group: {}", mark(self.plus_in_group))?;
        writeln!(f, "g- in group: {}", mark(self.minus_in_group))?;
        writeln!(f, "|S| = 4: {}", mark(self.distinct_generators))?;
        writeln!(
            f,
            "S generates: {} ({}/{})",
            mark(self.generates()),
            self.reached,
            self.group_order
        )?;
        writeln!(f, "order(g+ g-^-1) = {}", self.order_plus_minus_inv)?;
        writeln!(f, "order(g- g+) = {}", self.order_minus_plus)?;
        writeln!(f, "det g+ = {} (class {})", self.det_plus, self.class_plus)?;
        writeln!(f, "det g- = {} (class {})", self.det_minus, self.class_minus)?;
        writeln!(f, "edges cross determinant classes: {}", mark(self.bipartition_proper()))
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p % 4 != 1 {
        return Err(Error::Precondition(format!("p = {p} is not 1 mod 4")));
    }
    Ok(())
}

fn report_with(group: &GroupTable, spec: &CayleySpec) -> CayleyReport {
    let p = spec.p;
    let plus = group.index_of_mats(&[spec.g_plus]);
    let minus = group.index_of_mats(&[spec.g_minus]);
    let (det_plus, det_minus) = (spec.g_plus.det(), spec.g_minus.det());
    let mut report = CayleyReport {
        p,
        plus_in_group: plus.is_some(),
        minus_in_group: minus.is_some(),
        distinct_generators: false,
        reached: 0,
        group_order: group.len(),
        order_plus_minus_inv: 0,
        order_minus_plus: 0,
        det_plus,
        det_minus,
        class_plus: det_class(det_plus, p),
        class_minus: det_class(det_minus, p),
    };
    if let (Some(a), Some(b)) = (plus, minus) {
        let mut s = [a, group.inv(a), b, group.inv(b)];
        s.sort_unstable();
        report.distinct_generators = s.windows(2).all(|w| w[0] != w[1]);
        report.reached = group.closure(&s).len();
        report.order_plus_minus_inv = group.order(group.mul(a, group.inv(b)));
        report.order_minus_plus = group.order(group.mul(b, a));
    }
    report
}

pub fn validate_cayley(spec: &CayleySpec) -> Result<CayleyReport> {
    check_prime(spec.p)?;
    let group = enumerate_group(GroupKind::Det4 { p: spec.p })?;
    Ok(report_with(&group, spec))
}

/// 4-regular Cayley graph; `neighbors[x][i] = x·s_i` with `s = [g₊, g₊⁻¹, g₋, g₋⁻¹]`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    pub group: GroupTable,
    pub generators: [u32; 4],
    pub neighbors: Vec<[u32; 4]>,
    pub report: CayleyReport,
}

impl CayleyGraph {
    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        let mut count = 0;
        for (x, nb) in self.neighbors.iter().enumerate() {
            for &y in nb {
                // each undirected edge once, from its smaller endpoint
                if (x as u32) < y {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn degree(&self, x: usize) -> usize {
        let mut nb = self.neighbors[x];
        nb.sort_unstable();
        nb.iter().enumerate().filter(|&(i, &y)| i == 0 || nb[i - 1] != y).count()
    }

    pub fn class(&self, x: u32) -> DetClass {
        det_class(self.group.det(x), self.report.p)
    }
}

pub fn build_cayley_graph(spec: &CayleySpec) -> Result<CayleyGraph> {
    check_prime(spec.p)?;
    let group = enumerate_group(GroupKind::Det4 { p: spec.p })?;
    let report = report_with(&group, spec);
    if !report.passes() {
        return Err(Error::Construction(format!("Cayley generators rejected:\n{report}")));
    }
    let a = group.index_of_mats(&[spec.g_plus]).unwrap();
    let b = group.index_of_mats(&[spec.g_minus]).unwrap();
    let generators = [a, group.inv(a), b, group.inv(b)];
    let neighbors = (0..group.len() as u32)
        .map(|x| generators.map(|s| group.mul(x, s)))
        .collect();
    Ok(CayleyGraph {
        group,
        generators,
        neighbors,
        report,
    })
}

/// A check: an 8-cycle of the Cayley graph in canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckCycle {
    pub vertices: [u32; 8],
    /// Relation type as seen from `vertices[0]`.
    pub cycle_type: CycleType,
}

fn canonical_rotation(walk: &[u32; 8]) -> [u32; 8] {
    let mut best = *walk;
    for start in 0..8 {
        for dir in [1usize, 7] {
            let cand: [u32; 8] = std::array::from_fn(|k| walk[(start + dir * k) % 8]);
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

fn walk(graph: &CayleyGraph, x: u32, t: CycleType) -> Result<[u32; 8]> {
    let steps = t.steps();
    let mut out = [0u32; 8];
    let mut v = x;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = v;
        v = graph.neighbors[v as usize][steps[k % 2]];
    }
    if v != x {
        return Err(Error::Construction(format!(
            "walk {t} from vertex {x} does not close after 8 steps"
        )));
    }
    let mut sorted = out;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Construction(format!(
            "walk {t} from vertex {x} revisits a vertex before closing"
        )));
    }
    Ok(out)
}

/// The distinct check cycles, sorted by canonical vertex sequence, and for
/// every vertex the index of its incident cycle of each type (in [`CYCLE_TYPES`] order).
pub fn enumerate_check_cycles(graph: &CayleyGraph) -> Result<(Vec<CheckCycle>, Vec<[u32; 4]>)> {
    let mut seen: HashMap<[u32; 8], u32> = HashMap::new();
    let mut order: Vec<[u32; 8]> = Vec::new();
    let mut incidence_raw = vec![[0u32; 4]; graph.len()];
    for x in 0..graph.len() as u32 {
        for (ti, &t) in CYCLE_TYPES.iter().enumerate() {
            let canon = canonical_rotation(&walk(graph, x, t)?);
            let id = *seen.entry(canon).or_insert_with(|| {
                order.push(canon);
                order.len() as u32 - 1
            });
            incidence_raw[x as usize][ti] = id;
        }
    }
    // renumber by sorted canonical sequence
    let mut sorted: Vec<(usize, [u32; 8])> = order.iter().copied().enumerate().collect();
    sorted.sort_unstable_by(|a, b| a.1.cmp(&b.1));
    let mut renumber = vec![0u32; sorted.len()];
    for (new, &(old, _)) in sorted.iter().enumerate() {
        renumber[old] = new as u32;
    }
    let incidence: Vec<[u32; 4]> = incidence_raw
        .iter()
        .map(|ids| ids.map(|id| renumber[id as usize]))
        .collect();

    let mut cycles = Vec::with_capacity(sorted.len());
    for (_, verts) in sorted {
        let base = verts[0];
        let nb = graph.neighbors[base as usize];
        let mut pair = [
            nb.iter().position(|&y| y == verts[1]),
            nb.iter().position(|&y| y == verts[7]),
        ];
        pair.sort_unstable();
        let cycle_type = CYCLE_TYPES
            .iter()
            .copied()
            .find(|t| t.neighbour_steps().map(Some) == pair)
            .ok_or_else(|| {
                Error::Construction(format!("cycle at base {base} matches no relation type"))
            })?;
        cycles.push(CheckCycle {
            vertices: verts,
            cycle_type,
        });
    }

    // every vertex on four distinct cycles, each typed consistently
    for (x, ids) in incidence.iter().enumerate() {
        let mut s = *ids;
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Construction(format!(
                "vertex {x} lies on fewer than four distinct cycles"
            )));
        }
        for (ti, &id) in ids.iter().enumerate() {
            let pos = cycles[id as usize].vertices.iter().position(|&v| v == x as u32);
            let Some(pos) = pos else {
                return Err(Error::Construction(format!("vertex {x} missing from cycle {id}")));
            };
            let verts = &cycles[id as usize].vertices;
            let mut pair = [
                graph.neighbors[x].iter().position(|&y| y == verts[(pos + 1) % 8]),
                graph.neighbors[x].iter().position(|&y| y == verts[(pos + 7) % 8]),
            ];
            pair.sort_unstable();
            if CYCLE_TYPES[ti].neighbour_steps().map(Some) != pair {
                return Err(Error::Construction(format!(
                    "cycle {id} does not use the {} edge pair at vertex {x}",
                    CYCLE_TYPES[ti]
                )));
            }
        }
    }
    Ok((cycles, incidence))
}

#[derive(Clone, Debug)]
pub struct CayleyCode {
    pub graph: CayleyGraph,
    pub cycles: Vec<CheckCycle>,
    pub tanner: TannerGraph,
}

/// Builds the labeled (4,8) Tanner graph and verifies column type, row weight and commutation.
pub fn build_48_code(spec: &CayleySpec) -> Result<CayleyCode> {
    let graph = build_cayley_graph(spec)?;
    let (cycles, incidence) = enumerate_check_cycles(&graph)?;
    let mut edges = Vec::with_capacity(4 * graph.len());
    for (x, ids) in incidence.iter().enumerate() {
        let first_class = graph.class(x as u32) == DetClass::PlusMinusOne;
        for (t, &id) in CYCLE_TYPES.iter().zip(ids) {
            let label = if t.omega_on_first_class() == first_class {
                F4::Omega
            } else {
                F4::OmegaBar
            };
            edges.push((x as u32, id, label));
        }
    }
    let tanner = TannerGraph::new(graph.len(), cycles.len(), edges)?;

    for q in 0..tanner.n_qubits() {
        let w = tanner.qubit_adj(q).iter().filter(|e| e.1 == F4::Omega).count();
        if w != 2 {
            return Err(Error::Construction(format!("qubit {q} has {w} omega labels, expected 2")));
        }
    }
    for c in 0..tanner.n_checks() {
        let adj = tanner.check_adj(c);
        let w = adj.iter().filter(|e| e.1 == F4::Omega).count();
        if adj.len() != 8 || w != 4 {
            return Err(Error::Construction(format!(
                "check {c} has weight {} with {w} omega labels",
                adj.len()
            )));
        }
    }
    let m = tanner.to_parity_check()?;
    if let Some(&(i, j)) = verify_orthogonality(&m).first() {
        return Err(Error::NotOrthogonal(i, j));
    }
    Ok(CayleyCode {
        graph,
        cycles,
        tanner,
    })
}

/// One line per check: index, relation type at the base vertex, vertex indices.
pub fn dump_cycles(cycles: &[CheckCycle]) -> String {
    let mut out = String::new();
    for (i, c) in cycles.iter().enumerate() {
        let verts: Vec<String> = c.vertices.iter().map(u32::to_string).collect();
        out.push_str(&format!("{i} {} {}\n", c.cycle_type, verts.join(" ")));
    }
    out
}
