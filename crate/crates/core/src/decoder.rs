//! Syndrome message passing on the labeled Tanner graph.
//!
//! Variables are quaternary (the error symbol on a qubit) while every check
//! only constrains the parity of the edge indicator bits `tr(e·L̄)`, so check
//! updates are ordinary binary parity updates in the log-likelihood-ratio
//! domain. A message on edge `(v, c)` is `log P(t = 0) / P(t = 1)` for the
//! indicator bit `t` of that edge.

use std::fmt;
use std::str::FromStr;

use crate::gf4::{F4Vector, F4, SYMBOLS};
use crate::stabilizer::{ParityCheck, SyndromeVector};
use crate::{Error, Result};

// floor for log-probabilities so p = 0 stays finite
const LOG_FLOOR: f64 = -700.0;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DepolarizingPrior {
    p: f64,
}

impl DepolarizingPrior {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..0.75).contains(&p) {
            return Err(Error::ChannelParameter(p));
        }
        Ok(DepolarizingPrior { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Probabilities of `0, ω, ω̄, 1`.
    pub fn probs(&self) -> [f64; 4] {
        let q = self.p / 3.0;
        [1.0 - self.p, q, q, q]
    }

    pub fn log_probs(&self) -> [f64; 4] {
        self.probs().map(|x| x.ln().max(LOG_FLOOR))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    SumProduct,
    MinSum,
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum_product" | "sum-product" => Ok(Algorithm::SumProduct),
            "min_sum" | "min-sum" => Ok(Algorithm::MinSum),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::SumProduct => "sum_product",
            Algorithm::MinSum => "min_sum",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DecoderConfig {
    pub algorithm: Algorithm,
    pub max_iterations: usize,
    /// Multiplier on min-sum check messages, in `(0, 1]`.
    pub min_sum_scale: f64,
    /// Symmetric bound on message magnitudes.
    pub message_clamp: f64,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            algorithm: Algorithm::MinSum,
            max_iterations: 100,
            min_sum_scale: 1.0,
            message_clamp: 30.0,
        }
    }
}

impl DecoderConfig {
    pub fn sum_product() -> Self {
        DecoderConfig {
            algorithm: Algorithm::SumProduct,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::Config("max_iterations must be positive".into()));
        }
        if !(self.min_sum_scale > 0.0 && self.min_sum_scale <= 1.0) {
            return Err(Error::Config("min_sum_scale must lie in (0, 1]".into()));
        }
        if !(self.message_clamp > 0.0 && self.message_clamp.is_finite()) {
            return Err(Error::Config("message_clamp must be a positive real".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: F4Vector,
    /// The estimate reproduces the target syndrome.
    pub converged: bool,
    pub iterations: usize,
}

/// Indicator bit `tr(e·L̄)` of an edge labeled `label`.
pub fn edge_indicator(label: F4, e: F4) -> Result<bool> {
    if label.is_zero() {
        return Err(Error::Domain("edge label must be nonzero".into()));
    }
    Ok(e.herm(label))
}

/// Reusable message buffers for one parity-check matrix.
///
/// Edges are numbered row by row; `masks[e]` has bit `s` set when symbol
/// code `s` anticommutes with the edge label.
pub struct Decoder<'a> {
    code: &'a ParityCheck,
    check_start: Vec<usize>,
    edge_var: Vec<u32>,
    masks: Vec<u8>,
    var_start: Vec<usize>,
    var_edges: Vec<u32>,
    v2c: Vec<f64>,
    c2v: Vec<f64>,
    totals: Vec<[f64; 4]>,
    scratch: Vec<f64>,
}

impl<'a> Decoder<'a> {
    pub fn new(code: &'a ParityCheck) -> Self {
        let mut check_start = Vec::with_capacity(code.m() + 1);
        let mut edge_var = Vec::new();
        let mut masks = Vec::new();
        check_start.push(0);
        for row in code.rows() {
            for &(c, label) in row {
                edge_var.push(c);
                masks.push(
                    SYMBOLS
                        .iter()
                        .fold(0u8, |m, &s| m | ((s.herm(label) as u8) << s.code())),
                );
            }
            check_start.push(edge_var.len());
        }
        let mut degree = vec![0usize; code.n()];
        edge_var.iter().for_each(|&v| degree[v as usize] += 1);
        let mut var_start = vec![0usize; code.n() + 1];
        for v in 0..code.n() {
            var_start[v + 1] = var_start[v] + degree[v];
        }
        let mut fill = var_start.clone();
        let mut var_edges = vec![0u32; edge_var.len()];
        for (e, &v) in edge_var.iter().enumerate() {
            var_edges[fill[v as usize]] = e as u32;
            fill[v as usize] += 1;
        }
        let n_edges = edge_var.len();
        let max_row = code.rows().iter().map(Vec::len).max().unwrap_or(0);
        Decoder {
            code,
            check_start,
            edge_var,
            masks,
            var_start,
            var_edges,
            v2c: vec![0.0; n_edges],
            c2v: vec![0.0; n_edges],
            totals: vec![[0.0; 4]; code.n()],
            scratch: vec![0.0; 2 * max_row + 2],
        }
    }

    pub fn code(&self) -> &ParityCheck {
        self.code
    }

    fn check_inputs(&self, s: &SyndromeVector, cfg: &DecoderConfig) -> Result<()> {
        if s.len() != self.code.m() {
            return Err(Error::Dimension {
                expected: self.code.m(),
                got: s.len(),
            });
        }
        cfg.validate()
    }

    pub fn decode(
        &mut self,
        s: &SyndromeVector,
        prior: &DepolarizingPrior,
        cfg: &DecoderConfig,
    ) -> Result<DecodeResult> {
        self.check_inputs(s, cfg)?;
        let log_prior = prior.log_probs();
        self.c2v.iter_mut().for_each(|x| *x = 0.0);
        self.update_totals(&log_prior);
        let mut estimate = F4Vector::zeros(self.code.n());
        self.hard_decision(&mut estimate);
        if self.satisfies(&estimate, s) {
            return Ok(DecodeResult {
                estimate,
                converged: true,
                iterations: 0,
            });
        }
        for it in 1..=cfg.max_iterations {
            self.round(s, &log_prior, cfg);
            self.hard_decision(&mut estimate);
            if self.satisfies(&estimate, s) {
                return Ok(DecodeResult {
                    estimate,
                    converged: true,
                    iterations: it,
                });
            }
        }
        Ok(DecodeResult {
            estimate,
            converged: false,
            iterations: cfg.max_iterations,
        })
    }

    /// Runs exactly `rounds` flooding rounds without early stopping and
    /// returns normalized per-qubit beliefs over `0, ω, ω̄, 1`.
    pub fn beliefs(
        &mut self,
        s: &SyndromeVector,
        prior: &DepolarizingPrior,
        cfg: &DecoderConfig,
        rounds: usize,
    ) -> Result<Vec<[f64; 4]>> {
        self.check_inputs(s, cfg)?;
        let log_prior = prior.log_probs();
        self.c2v.iter_mut().for_each(|x| *x = 0.0);
        self.update_totals(&log_prior);
        for _ in 0..rounds {
            self.round(s, &log_prior, cfg);
        }
        Ok(self
            .totals
            .iter()
            .map(|t| {
                let mx = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let w = t.map(|x| (x - mx).exp());
                let z: f64 = w.iter().sum();
                w.map(|x| x / z)
            })
            .collect())
    }

    /// Check→variable messages of the last round, by edge (row-major order).
    pub fn check_messages(&self) -> &[f64] {
        &self.c2v
    }

    /// Unnormalized per-qubit log-beliefs of the last round.
    pub fn log_beliefs(&self) -> &[[f64; 4]] {
        &self.totals
    }

    fn round(&mut self, s: &SyndromeVector, log_prior: &[f64; 4], cfg: &DecoderConfig) {
        self.variable_update(cfg);
        self.check_update(s, cfg);
        self.update_totals(log_prior);
    }

    fn update_totals(&mut self, log_prior: &[f64; 4]) {
        for v in 0..self.code.n() {
            let mut t = *log_prior;
            for &e in &self.var_edges[self.var_start[v]..self.var_start[v + 1]] {
                let (mask, msg) = (self.masks[e as usize], self.c2v[e as usize]);
                for (s, ts) in t.iter_mut().enumerate() {
                    if mask >> s & 1 == 1 {
                        *ts -= msg;
                    }
                }
            }
            self.totals[v] = t;
        }
    }

    fn variable_update(&mut self, cfg: &DecoderConfig) {
        let clamp = cfg.message_clamp;
        let combine = match cfg.algorithm {
            Algorithm::SumProduct => log_add,
            Algorithm::MinSum => f64::max,
        };
        for e in 0..self.edge_var.len() {
            let v = self.edge_var[e] as usize;
            let (mask, msg) = (self.masks[e], self.c2v[e]);
            let t = &self.totals[v];
            let mut even = [f64::NEG_INFINITY; 2];
            let mut odd = [f64::NEG_INFINITY; 2];
            let (mut ne, mut no) = (0, 0);
            for (s, &ts) in t.iter().enumerate() {
                if mask >> s & 1 == 1 {
                    // remove this edge's own contribution
                    odd[no] = ts + msg;
                    no += 1;
                } else {
                    even[ne] = ts;
                    ne += 1;
                }
            }
            let llr = combine(even[0], even[1]) - combine(odd[0], odd[1]);
            self.v2c[e] = if llr.is_nan() { 0.0 } else { llr.clamp(-clamp, clamp) };
        }
    }

    fn check_update(&mut self, s: &SyndromeVector, cfg: &DecoderConfig) {
        let clamp = cfg.message_clamp;
        for c in 0..self.code.m() {
            let (lo, hi) = (self.check_start[c], self.check_start[c + 1]);
            let flip = if s.0[c] { -1.0 } else { 1.0 };
            let inputs = &self.v2c[lo..hi];
            match cfg.algorithm {
                Algorithm::SumProduct => {
                    // prefix/suffix products of tanh(λ/2) avoid dividing by zero
                    let d = hi - lo;
                    let (pre, suf) = self.scratch.split_at_mut(d + 1);
                    pre[0] = 1.0;
                    for (k, &x) in inputs.iter().enumerate() {
                        pre[k + 1] = pre[k] * (x / 2.0).tanh();
                    }
                    suf[d] = 1.0;
                    for k in (0..d).rev() {
                        suf[k] = suf[k + 1] * (inputs[k] / 2.0).tanh();
                    }
                    for k in 0..d {
                        let prod = (pre[k] * suf[k + 1]).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
                        let msg = flip * 2.0 * prod.atanh();
                        self.c2v[lo + k] = msg.clamp(-clamp, clamp);
                    }
                }
                Algorithm::MinSum => {
                    let mut sign = flip;
                    let (mut min1, mut min2, mut arg) = (f64::INFINITY, f64::INFINITY, usize::MAX);
                    for (k, &x) in inputs.iter().enumerate() {
                        if x < 0.0 {
                            sign = -sign;
                        }
                        let a = x.abs();
                        if a < min1 {
                            min2 = min1;
                            min1 = a;
                            arg = k;
                        } else if a < min2 {
                            min2 = a;
                        }
                    }
                    for k in 0..hi - lo {
                        let x = inputs[k];
                        let own = if x < 0.0 { -1.0 } else { 1.0 };
                        let mag = if k == arg { min2 } else { min1 };
                        let msg = sign * own * cfg.min_sum_scale * mag;
                        self.c2v[lo + k] = msg.clamp(-clamp, clamp);
                    }
                }
            }
        }
    }

    /// Per-qubit argmax, ties resolved towards the earlier symbol of `0, ω, ω̄, 1`.
    fn hard_decision(&self, out: &mut F4Vector) {
        for (v, t) in self.totals.iter().enumerate() {
            let mut best = 0;
            for s in 1..4 {
                if t[s] > t[best] {
                    best = s;
                }
            }
            out.0[v] = F4::from_code(best as u8);
        }
    }

    fn satisfies(&self, est: &F4Vector, s: &SyndromeVector) -> bool {
        (0..self.code.m()).all(|c| {
            let parity = (self.check_start[c]..self.check_start[c + 1]).fold(false, |acc, e| {
                acc ^ (self.masks[e] >> est.0[self.edge_var[e] as usize].code() & 1 == 1)
            });
            parity == s.0[c]
        })
    }
}

#[inline]
fn log_add(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + (-(a - b).abs()).exp().ln_1p()
}

/// One-shot decoding; allocates fresh buffers.
pub fn decode(
    m: &ParityCheck,
    s: &SyndromeVector,
    prior: &DepolarizingPrior,
    cfg: &DecoderConfig,
) -> Result<DecodeResult> {
    Decoder::new(m).decode(s, prior, cfg)
}

const BRUTE_FORCE_LIMIT: usize = 14;

/// Syndrome contribution of each `(column, symbol)` as a bit mask over rows.
fn column_masks(m: &ParityCheck) -> Result<Vec<[u128; 4]>> {
    if m.n() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge(m.n()));
    }
    if m.m() > 128 {
        return Err(Error::Domain(format!(
            "brute force supports at most 128 checks, got {}",
            m.m()
        )));
    }
    let mut masks = vec![[0u128; 4]; m.n()];
    for (i, row) in m.rows().iter().enumerate() {
        for &(c, label) in row {
            for s in SYMBOLS {
                if s.herm(label) {
                    masks[c as usize][s.code() as usize] |= 1 << i;
                }
            }
        }
    }
    Ok(masks)
}

fn syndrome_mask(m: &ParityCheck, s: &SyndromeVector) -> Result<u128> {
    if s.len() != m.m() {
        return Err(Error::Dimension {
            expected: m.m(),
            got: s.len(),
        });
    }
    Ok(s.0
        .iter()
        .enumerate()
        .fold(0u128, |acc, (i, &b)| acc | ((b as u128) << i)))
}

/// Most likely error with the given syndrome, by exhaustive search (n ≤ 14).
///
/// For `p < 3/4` the likelihood strictly decreases with weight, so this is
/// the minimum-weight solution; ties go to the lexicographically first
/// sequence under the symbol order `0, ω, ω̄, 1`. `None` if no error has
/// this syndrome.
pub fn brute_force_decode(
    m: &ParityCheck,
    s: &SyndromeVector,
    _prior: &DepolarizingPrior,
) -> Result<Option<F4Vector>> {
    let masks = column_masks(m)?;
    let target = syndrome_mask(m, s)?;
    let n = m.n();
    let mut current = vec![F4::Zero; n];
    for w in 0..=n {
        if search_weight(&masks, target, 0, w, 0, &mut current) {
            return Ok(Some(F4Vector(current)));
        }
    }
    Ok(None)
}

// Lexicographic DFS over vectors of weight exactly `remaining` from `pos` on.
fn search_weight(
    masks: &[[u128; 4]],
    target: u128,
    pos: usize,
    remaining: usize,
    acc: u128,
    current: &mut [F4],
) -> bool {
    let n = masks.len();
    if pos == n {
        return remaining == 0 && acc == target;
    }
    if remaining > n - pos {
        return false;
    }
    for s in SYMBOLS {
        let nonzero = !s.is_zero() as usize;
        if nonzero > remaining {
            continue;
        }
        current[pos] = s;
        if search_weight(
            masks,
            target,
            pos + 1,
            remaining - nonzero,
            acc ^ masks[pos][s.code() as usize],
            current,
        ) {
            return true;
        }
    }
    current[pos] = F4::Zero;
    false
}

/// Exact per-qubit posterior `P(eᵢ = s | syndrome)` by enumerating all `4ⁿ` errors.
pub fn brute_force_marginals(
    m: &ParityCheck,
    s: &SyndromeVector,
    prior: &DepolarizingPrior,
) -> Result<Option<Vec<[f64; 4]>>> {
    let masks = column_masks(m)?;
    let target = syndrome_mask(m, s)?;
    let probs = prior.probs();
    let n = m.n();
    let mut marg = vec![[0.0f64; 4]; n];
    let mut total = 0.0;
    for idx in 0..(1u64 << (2 * n)) {
        let mut acc = 0u128;
        let mut pr = 1.0;
        for (i, mask) in masks.iter().enumerate() {
            let code = (idx >> (2 * i) & 3) as usize;
            acc ^= mask[code];
            pr *= probs[code];
        }
        if acc != target {
            continue;
        }
        total += pr;
        for (i, mg) in marg.iter_mut().enumerate() {
            mg[(idx >> (2 * i) & 3) as usize] += pr;
        }
    }
    if total == 0.0 {
        return Ok(None);
    }
    for mg in marg.iter_mut() {
        mg.iter_mut().for_each(|x| *x /= total);
    }
    Ok(Some(marg))
}

/// Symbol-wise argmax of a belief vector with the usual tie order.
pub fn argmax_symbols(beliefs: &[[f64; 4]], tol: f64) -> F4Vector {
    F4Vector(
        beliefs
            .iter()
            .map(|b| {
                let mut best = 0;
                for s in 1..4 {
                    if b[s] > b[best] + tol {
                        best = s;
                    }
                }
                F4::from_code(best as u8)
            })
            .collect(),
    )
}
