#![allow(dead_code)]

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;

use qldpc::cayley::{build_48_code, CayleyCode};
use qldpc::config::{cayley_p13_alt, coset_psl2_5_squared};
use qldpc::coset::{build_tanner, CosetCode, GenericSpec};
use qldpc::gf4::{vec_inner, F4Vector, F4};
use qldpc::stabilizer::{ParityCheck, SyndromeVector};

pub struct Coset {
    pub spec: GenericSpec,
    pub code: CosetCode,
    pub parity: ParityCheck,
}

pub struct Cayley {
    pub code: CayleyCode,
    pub parity: ParityCheck,
}

pub fn coset() -> &'static Coset {
    static C: OnceLock<Coset> = OnceLock::new();
    C.get_or_init(|| {
        let spec = coset_psl2_5_squared().to_spec().unwrap();
        let code = build_tanner(&spec).unwrap();
        let parity = code.tanner.to_parity_check().unwrap();
        parity.freeze();
        Coset { spec, code, parity }
    })
}

pub fn cayley() -> &'static Cayley {
    static C: OnceLock<Cayley> = OnceLock::new();
    C.get_or_init(|| {
        let code = build_48_code(&cayley_p13_alt().to_spec()).unwrap();
        let parity = code.tanner.to_parity_check().unwrap();
        parity.freeze();
        Cayley { code, parity }
    })
}

pub const NONZERO: [F4; 3] = [F4::Omega, F4::OmegaBar, F4::One];

/// Random orthogonal matrix whose Tanner graph is a forest.
///
/// Each check joins qubits from distinct components, so no cycle can form.
/// Every qubit carries one fixed symbol in all its checks, which makes any
/// two rows commute.
pub fn random_tree_code<R: Rng>(rng: &mut R, n: usize, m: usize) -> ParityCheck {
    let symbol: Vec<F4> = (0..n).map(|_| NONZERO[rng.random_range(0..3)]).collect();
    let mut comp: Vec<usize> = (0..n).collect();
    let find = |comp: &mut Vec<usize>, mut x: usize| {
        while comp[x] != x {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        x
    };
    let mut rows = Vec::new();
    for _ in 0..m {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let want = rng.random_range(1..=4usize);
        let mut picked: Vec<usize> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for q in order {
            let r = find(&mut comp, q);
            if !roots.contains(&r) {
                roots.push(r);
                picked.push(q);
            }
            if picked.len() == want {
                break;
            }
        }
        for w in roots.windows(2) {
            let (a, b) = (find(&mut comp, w[0]), find(&mut comp, w[1]));
            comp[a] = b;
        }
        picked.sort_unstable();
        rows.push(picked.iter().map(|&q| (q as u32, symbol[q])).collect());
    }
    ParityCheck::new(n, rows).unwrap()
}

/// All `4ⁿ` errors in index order, symbols read little-endian in base 4.
pub fn all_errors(n: usize) -> impl Iterator<Item = F4Vector> {
    (0..1usize << (2 * n)).map(move |idx| {
        F4Vector((0..n).map(|i| F4::from_code((idx >> (2 * i) & 3) as u8)).collect())
    })
}

/// Dense syndrome straight from the inner product.
pub fn dense_syndrome(m: &ParityCheck, e: &F4Vector) -> SyndromeVector {
    SyndromeVector((0..m.m()).map(|i| vec_inner(&m.dense_row(i), e).unwrap()).collect())
}

pub fn syndrome_from_index(m: usize, bits: usize) -> SyndromeVector {
    SyndromeVector((0..m).map(|j| bits >> j & 1 == 1).collect())
}

/// Lexicographic key under the symbol order `0, ω, ω̄, 1`.
pub fn lex_key(e: &F4Vector) -> Vec<u8> {
    e.symbols().iter().map(|s| s.code()).collect()
}

/// Minimum-weight error with syndrome `s`, ties to the lexicographically
/// first, found by scanning every error.
pub fn naive_ml(m: &ParityCheck, s: &SyndromeVector) -> Option<F4Vector> {
    all_errors(m.n())
        .filter(|e| dense_syndrome(m, e) == *s)
        .min_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| lex_key(a).cmp(&lex_key(b))))
}
