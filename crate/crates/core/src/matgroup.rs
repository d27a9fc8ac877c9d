//! Finite 2×2 matrix groups over prime fields: `PSL₂(F_p)`, `PSL₂(F_p)²` and
//! `{M ∈ GL₂(F_p) : (det M)² = ±1}`, plus subgroups and left coset partitions.
//!
//! Group elements are indexed by their rank in the lexicographic order of
//! their (canonical) entries, so every index derived from a table is
//! reproducible.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::{Error, Result};

/// 2×2 matrix over `F_p`, entries `[a, b, c, d]` for `[[a, b], [c, d]]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    p: u32,
    e: [u32; 4],
}

impl Mat2 {
    /// Builds a matrix, reducing (possibly negative) entries modulo `p`.
    pub fn new(p: u32, entries: [i64; 4]) -> Mat2 {
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        Mat2 {
            p,
            e: [r(entries[0]), r(entries[1]), r(entries[2]), r(entries[3])],
        }
    }

    pub fn identity(p: u32) -> Mat2 {
        Mat2 { p, e: [1, 0, 0, 1] }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let [w, x, y, z] = o.e.map(u64::from);
        let m = |v: u64| (v % p) as u32;
        Mat2 {
            p: self.p,
            e: [m(a * w + b * y), m(a * x + b * z), m(c * w + d * y), m(c * x + d * z)],
        }
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        ((a * d % p + p - b * c % p) % p) as u32
    }

    pub fn neg(&self) -> Mat2 {
        let p = self.p;
        Mat2 {
            p,
            e: self.e.map(|x| (p - x) % p),
        }
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if det == 0 {
            return Err(Error::Singular { p: self.p });
        }
        let di = inv_mod(det, self.p) as u64;
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let m = |v: u64| (v * di % p) as u32;
        Ok(Mat2 {
            p: self.p,
            e: [m(d), m((p - b) % p), m((p - c) % p), m(a)],
        })
    }

    pub fn is_identity(&self) -> bool {
        self.e == [1, 0, 0, 1]
    }

    fn key(&self) -> u64 {
        let p = self.p as u64;
        self.e.iter().fold(0, |k, &x| k * p + x as u64)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.e;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(x: u32, p: u32) -> u32 {
    pow_mod(x as u64, p as u64 - 2, p as u64) as u32
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Square root of −1 in `F_p`, when `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(p: u32) -> Option<u32> {
    (1..p).find(|&x| (x as u64 * x as u64) % p as u64 == (p - 1) as u64)
}

/// Representative of `{m, −m}` in `PSL₂(F_p)`: the lexicographically smaller one.
pub fn psl2_canonicalize(m: &Mat2) -> Result<Mat2> {
    if m.det() != 1 {
        return Err(Error::Domain(format!(
            "{m} has determinant {} mod {}, expected 1",
            m.det(),
            m.p
        )));
    }
    Ok(canon_sign(m))
}

fn canon_sign(m: &Mat2) -> Mat2 {
    let n = m.neg();
    if n.e < m.e {
        n
    } else {
        *m
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Psl2 { p: u32 },
    Psl2Squared { p: u32 },
    Det4 { p: u32 },
}

impl GroupKind {
    pub fn modulus(&self) -> u32 {
        match *self {
            GroupKind::Psl2 { p } | GroupKind::Psl2Squared { p } | GroupKind::Det4 { p } => p,
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GroupKind::Psl2Squared { .. } => 2,
            _ => 1,
        }
    }

    /// `p(p²−1)/2`, `(p(p²−1)/2)²` or `4p(p²−1)`.
    pub fn expected_order(&self) -> usize {
        let p = self.modulus() as usize;
        let psl = p * (p * p - 1) / 2;
        match self {
            GroupKind::Psl2 { .. } => psl,
            GroupKind::Psl2Squared { .. } => psl * psl,
            GroupKind::Det4 { .. } => 4 * p * (p * p - 1),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Psl2 { p } => write!(f, "PSL2({p})"),
            GroupKind::Psl2Squared { p } => write!(f, "PSL2({p})xPSL2({p})"),
            GroupKind::Det4 { p } => write!(f, "DET4({p})"),
        }
    }
}

/// A group element: one matrix, or a pair for direct products.
#[derive(Copy, Clone, Debug)]
pub struct GroupElement {
    parts: [Mat2; 2],
    arity: u8,
    pub canonical: bool,
}

impl GroupElement {
    pub fn single(m: Mat2) -> Self {
        GroupElement {
            parts: [m, Mat2::identity(m.p)],
            arity: 1,
            canonical: false,
        }
    }

    pub fn pair(a: Mat2, b: Mat2) -> Self {
        GroupElement {
            parts: [a, b],
            arity: 2,
            canonical: false,
        }
    }

    pub fn parts(&self) -> &[Mat2] {
        &self.parts[..self.arity as usize]
    }

    fn key(&self) -> u64 {
        let p = self.parts[0].p as u64;
        let p4 = p * p * p * p;
        self.parts().iter().fold(0, |k, m| k * p4 + m.key())
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.parts() == other.parts()
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts().hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts().cmp(other.parts())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts() {
            [m] => write!(f, "{m}"),
            [a, b] => write!(f, "({a}, {b})"),
            _ => unreachable!(),
        }
    }
}

/// Enumerated finite group with canonical, sorted element indexing.
#[derive(Clone, Debug)]
pub struct GroupTable {
    kind: GroupKind,
    elements: Vec<GroupElement>,
    index_of: HashMap<u64, u32>,
    inverse: Vec<u32>,
    identity: u32,
}

impl GroupTable {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    /// Applies the representative choice of this group (sign quotient for PSL₂).
    pub fn canonicalize(&self, g: &GroupElement) -> GroupElement {
        let mut out = *g;
        if !matches!(self.kind, GroupKind::Det4 { .. }) {
            for m in out.parts[..out.arity as usize].iter_mut() {
                *m = canon_sign(m);
            }
        }
        out.canonical = true;
        out
    }

    /// Index of `g` (canonicalized first), if it belongs to the group.
    pub fn index(&self, g: &GroupElement) -> Option<u32> {
        if g.arity as usize != self.kind.arity() || g.parts[0].p != self.kind.modulus() {
            return None;
        }
        self.index_of.get(&self.canonicalize(g).key()).copied()
    }

    /// Index of the element made of the given matrices.
    pub fn index_of_mats(&self, mats: &[Mat2]) -> Option<u32> {
        match mats {
            [m] => self.index(&GroupElement::single(*m)),
            [a, b] => self.index(&GroupElement::pair(*a, *b)),
            _ => None,
        }
    }

    pub fn mul_elements(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut out = *a;
        for (m, n) in out.parts.iter_mut().zip(b.parts.iter()) {
            *m = m.mul(n);
        }
        self.canonicalize(&out)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.mul_elements(&self.elements[a as usize], &self.elements[b as usize]);
        self.index_of[&prod.key()]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Determinant of a single-matrix element.
    pub fn det(&self, a: u32) -> u32 {
        self.elements[a as usize].parts[0].det()
    }

    /// Breadth-first closure of `gens` under right multiplication, starting at the identity.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([self.identity]);
        seen[self.identity as usize] = true;
        let mut out = Vec::new();
        while let Some(x) = queue.pop_front() {
            out.push(x);
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    fn from_sorted(kind: GroupKind, elements: Vec<GroupElement>) -> Result<GroupTable> {
        let index_of: HashMap<u64, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.key(), i as u32))
            .collect();
        let p = kind.modulus();
        let id = match kind.arity() {
            1 => GroupElement::single(Mat2::identity(p)),
            _ => GroupElement::pair(Mat2::identity(p), Mat2::identity(p)),
        };
        let identity = index_of[&id.key()];
        let mut table = GroupTable {
            kind,
            elements,
            index_of,
            inverse: Vec::new(),
            identity,
        };
        let mut inverse = Vec::with_capacity(table.len());
        for g in &table.elements {
            let mut inv = *g;
            for m in inv.parts.iter_mut() {
                *m = m.inv()?;
            }
            inverse.push(table.index_of[&table.canonicalize(&inv).key()]);
        }
        table.inverse = inverse;
        Ok(table)
    }
}

/// Enumerates the whole group, duplicate free and sorted.
pub fn enumerate_group(kind: GroupKind) -> Result<GroupTable> {
    let p = kind.modulus();
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    let all = || {
        (0..p).flat_map(move |a| {
            (0..p).flat_map(move |b| {
                (0..p).flat_map(move |c| (0..p).map(move |d| Mat2 { p, e: [a, b, c, d] }))
            })
        })
    };
    let canonical = |m: Mat2| {
        let mut g = GroupElement::single(m);
        g.canonical = true;
        g
    };
    let elements: Vec<GroupElement> = match kind {
        GroupKind::Psl2 { .. } => psl2_matrices(p).into_iter().map(canonical).collect(),
        GroupKind::Psl2Squared { .. } => {
            let base = psl2_matrices(p);
            base.iter()
                .flat_map(|a| {
                    base.iter().map(move |b| {
                        let mut g = GroupElement::pair(*a, *b);
                        g.canonical = true;
                        g
                    })
                })
                .collect()
        }
        GroupKind::Det4 { .. } => {
            let i = sqrt_minus_one(p).ok_or_else(|| {
                Error::Precondition(format!("p = {p} is not 1 mod 4, so sqrt(-1) does not exist"))
            })?;
            let allowed = [1, p - 1, i, p - i];
            all().filter(|m| allowed.contains(&m.det())).map(canonical).collect()
        }
    };
    GroupTable::from_sorted(kind, elements)
}

fn psl2_matrices(p: u32) -> Vec<Mat2> {
    let mut set = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Mat2 { p, e: [a, b, c, d] };
                    if m.det() == 1 {
                        set.insert(canon_sign(&m));
                    }
                }
            }
        }
    }
    set.into_iter().collect()
}

/// A subgroup, as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    pub fn trivial(g: &GroupTable) -> Self {
        Subgroup {
            elements: vec![g.identity()],
        }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Subgroup {
            elements: (0..g.len() as u32).collect(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &GroupTable, gens: &[u32]) -> Self {
        Subgroup {
            elements: g.closure(gens),
        }
    }

    /// Checks that `elements` contains the identity and is closed under products and inverses.
    pub fn from_elements(g: &GroupTable, elements: &[u32]) -> Result<Self> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        validate_subgroup(g, &elements)?;
        Ok(Subgroup { elements })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: sorted_intersection(&self.elements, &other.elements),
        }
    }
}

fn validate_subgroup(g: &GroupTable, elements: &[u32]) -> Result<()> {
    if let Some(&bad) = elements.iter().find(|&&x| x as usize >= g.len()) {
        return Err(Error::InvalidSubgroup(format!("index {bad} out of range")));
    }
    if elements.binary_search(&g.identity()).is_err() {
        return Err(Error::InvalidSubgroup("identity missing".into()));
    }
    for &x in elements {
        if elements.binary_search(&g.inv(x)).is_err() {
            return Err(Error::InvalidSubgroup(format!(
                "inverse of {} missing",
                g.element(x)
            )));
        }
        for &y in elements {
            if elements.binary_search(&g.mul(x, y)).is_err() {
                return Err(Error::InvalidSubgroup(format!(
                    "not closed: {} * {}",
                    g.element(x),
                    g.element(y)
                )));
            }
        }
    }
    Ok(())
}

/// Partition of a group into left cosets `xH`, ordered by representative.
#[derive(Clone, Debug)]
pub struct CosetTable {
    subgroup: Vec<u32>,
    cosets: Vec<Vec<u32>>,
    coset_of: Vec<u32>,
}

impl CosetTable {
    pub fn subgroup(&self) -> &[u32] {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }

    /// Sorted elements of coset `i`.
    pub fn coset(&self, i: usize) -> &[u32] {
        &self.cosets[i]
    }

    pub fn cosets(&self) -> &[Vec<u32>] {
        &self.cosets
    }

    /// Canonical representative: the smallest element index in the coset.
    pub fn rep(&self, i: usize) -> u32 {
        self.cosets[i][0]
    }

    #[inline]
    pub fn coset_of(&self, x: u32) -> usize {
        self.coset_of[x as usize] as usize
    }
}

pub fn coset_partition(g: &GroupTable, sub: &Subgroup) -> Result<CosetTable> {
    validate_subgroup(g, &sub.elements)?;
    let mut coset_of = vec![u32::MAX; g.len()];
    let mut cosets = Vec::with_capacity(g.len() / sub.len());
    for x in 0..g.len() as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let idx = cosets.len() as u32;
        let mut members: Vec<u32> = sub.elements.iter().map(|&h| g.mul(x, h)).collect();
        members.sort_unstable();
        for &m in &members {
            coset_of[m as usize] = idx;
        }
        cosets.push(members);
    }
    Ok(CosetTable {
        subgroup: sub.elements.clone(),
        cosets,
        coset_of,
    })
}

/// `xH ∩ yK` for two cosets given as sorted element lists.
pub fn coset_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    sorted_intersection(a, b)
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
