//! Coset construction of (a, b)-regular codes: qubits are left cosets `xH`,
//! checks are left cosets `yK`, and `xH - yK` is an edge labeled ω (resp. ω̄)
//! when `xgH ∩ yK ≠ ∅` for a generator `g ∈ G_ω` (resp. `G_ω̄`).

use std::fmt;

use crate::gf4::F4;
use crate::matgroup::{coset_partition, CosetTable, GroupTable, Subgroup};
use crate::tanner::TannerGraph;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct GenericSpec {
    pub group: GroupTable,
    pub h: Subgroup,
    pub k: Subgroup,
    pub g_omega: Vec<u32>,
    pub g_omegabar: Vec<u32>,
}

impl GenericSpec {
    /// All generators, ω part first.
    pub fn generators(&self) -> impl Iterator<Item = (u32, F4)> + '_ {
        self.g_omega
            .iter()
            .map(|&g| (g, F4::Omega))
            .chain(self.g_omegabar.iter().map(|&g| (g, F4::OmegaBar)))
    }
}

/// Outcome of each structural requirement on a [`GenericSpec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecReport {
    pub k_larger_than_h: bool,
    pub parts_disjoint: bool,
    pub generates_group: bool,
    /// `G_ω` and `G_ω̄` are each closed under inversion.
    pub inverse_closed: bool,
    /// Every `g_ω` commutes with every `g_ω̄`.
    pub parts_commute: bool,
    /// `ghk = g'h'k'` forces `g = g'`, i.e. no `g'⁻¹g` with `g ≠ g'` lies in `HKH`.
    pub simple_edges: bool,
    pub messages: Vec<String>,
}

impl SpecReport {
    pub fn passes(&self) -> bool {
        self.k_larger_than_h
            && self.parts_disjoint
            && self.generates_group
            && self.inverse_closed
            && self.parts_commute
            && self.simple_edges
    }
}

impl fmt::Display for SpecReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAIL" };
        writeln!(f, "|K| > |H|: {}", mark(self.k_larger_than_h))?;
        writeln!(f, "G_w and G_W disjoint: {}", mark(self.parts_disjoint))?;
        writeln!(f, "G generates the group: {}", mark(self.generates_group))?;
        writeln!(f, "inverse closed: {}", mark(self.inverse_closed))?;
        writeln!(f, "G_w commutes with G_W: {}", mark(self.parts_commute))?;
        writeln!(f, "no multiple edges: {}", mark(self.simple_edges))?;
        for m in &self.messages {
            writeln!(f, "  {m}")?;
        }
        Ok(())
    }
}

pub fn validate_spec(spec: &GenericSpec) -> SpecReport {
    let g = &spec.group;
    let mut messages = Vec::new();

    let k_larger_than_h = spec.k.len() > spec.h.len();
    if !k_larger_than_h {
        messages.push(format!("|K| = {} <= |H| = {}", spec.k.len(), spec.h.len()));
    }

    let parts_disjoint = spec.g_omega.iter().all(|x| !spec.g_omegabar.contains(x));
    if !parts_disjoint {
        messages.push("a generator appears in both parts".into());
    }

    let all: Vec<u32> = spec.generators().map(|(x, _)| x).collect();
    let reach = g.closure(&all).len();
    let generates_group = reach == g.len();
    if !generates_group {
        messages.push(format!("generators reach {reach} of {} elements", g.len()));
    }

    let mut inverse_closed = true;
    for part in [&spec.g_omega, &spec.g_omegabar] {
        for &x in part.iter() {
            if !part.contains(&g.inv(x)) {
                inverse_closed = false;
                messages.push(format!("inverse of {} missing from its part", g.element(x)));
            }
        }
    }

    let mut parts_commute = true;
    for &a in &spec.g_omega {
        for &b in &spec.g_omegabar {
            if !g.commute(a, b) {
                parts_commute = false;
                messages.push(format!("{} and {} do not commute", g.element(a), g.element(b)));
            }
        }
    }

    let mut in_hkh = vec![false; g.len()];
    for &h1 in spec.h.elements() {
        for &k in spec.k.elements() {
            let hk = g.mul(h1, k);
            for &h2 in spec.h.elements() {
                in_hkh[g.mul(hk, h2) as usize] = true;
            }
        }
    }
    let mut simple_edges = true;
    for (i, &a) in all.iter().enumerate() {
        for (j, &b) in all.iter().enumerate() {
            if i != j && in_hkh[g.mul(g.inv(b), a) as usize] {
                simple_edges = false;
                messages.push(format!(
                    "{}^-1 * {} lies in HKH",
                    g.element(b),
                    g.element(a)
                ));
            }
        }
    }

    SpecReport {
        k_larger_than_h,
        parts_disjoint,
        generates_group,
        inverse_closed,
        parts_commute,
        simple_edges,
        messages,
    }
}

/// A constructed code together with the coset tables that index it.
#[derive(Clone, Debug)]
pub struct CosetCode {
    pub tanner: TannerGraph,
    pub qubits: CosetTable,
    pub checks: CosetTable,
}

/// Builds the labeled Tanner graph. Qubit `i` is the `i`-th coset of `H`
/// (ordered by smallest element), check `j` the `j`-th coset of `K`.
pub fn build_tanner(spec: &GenericSpec) -> Result<CosetCode> {
    let report = validate_spec(spec);
    if !report.passes() {
        return Err(Error::Construction(format!(
            "coset construction rejected:\n{report}"
        )));
    }
    let g = &spec.group;
    let qubits = coset_partition(g, &spec.h)?;
    let checks = coset_partition(g, &spec.k)?;
    let gens: Vec<(u32, F4)> = spec.generators().collect();

    let mut edges = Vec::with_capacity(qubits.len() * gens.len());
    // (check, generator slot) reached from the current qubit
    let mut reached: Vec<(u32, usize)> = Vec::new();
    for q in 0..qubits.len() {
        let x = qubits.rep(q);
        reached.clear();
        for (slot, &(gen, _)) in gens.iter().enumerate() {
            let xg = g.mul(x, gen);
            for &h in spec.h.elements() {
                let c = checks.coset_of(g.mul(xg, h)) as u32;
                match reached.iter().find(|&&(c2, _)| c2 == c) {
                    Some(&(_, s)) if s != slot => {
                        return Err(Error::Construction(format!(
                            "qubit {q} reaches check {c} through two generators ({} and {})",
                            g.element(gens[s].0),
                            g.element(gen)
                        )));
                    }
                    Some(_) => {}
                    None => reached.push((c, slot)),
                }
            }
        }
        edges.extend(reached.iter().map(|&(c, slot)| (q as u32, c, gens[slot].1)));
    }
    let tanner = TannerGraph::new(qubits.len(), checks.len(), edges)?;
    Ok(CosetCode {
        tanner,
        qubits,
        checks,
    })
}

/// Degrees predicted by the construction: `a = |G||H|/|H∩K|`, `b = |G||K|/|H∩K|`.
pub fn predicted_degrees(spec: &GenericSpec) -> (usize, usize) {
    let gens = spec.g_omega.len() + spec.g_omegabar.len();
    let hk = spec.h.intersection(&spec.k).len();
    (gens * spec.h.len() / hk, gens * spec.k.len() / hk)
}

/// Lower bound `|G_ω||G_ω̄||H|²/|H∩K|²` on the 4-cycle graph degree.
pub fn four_cycle_degree_bound(spec: &GenericSpec) -> usize {
    let hk = spec.h.intersection(&spec.k).len();
    spec.g_omega.len() * spec.g_omegabar.len() * spec.h.len() * spec.h.len() / (hk * hk)
}
