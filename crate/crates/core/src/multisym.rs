//! Multisymmetric polynomials: `S_n` permuting coordinates of `V = F^n`,
//! acting diagonally on `V^m`.
//!
//! Over GF(2) a point of `V^m` is `m` bitsets of length `n`, and the orbit of
//! a point is determined by how many coordinates carry each column pattern in
//! `{0,1}^m`. The representatives `e_τ` list those counts `τ ∈ N^{2^m}`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{Group, Mat, OrbitDecomp, DEFAULT_POINT_CAP};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::mvpoly::{Poly, VarNaming};
use crate::sepcore::{self, BetaSep};

/// Cap on the number of `τ` vectors enumerated by exhaustive checks.
pub const TAU_CAP: u128 = 2_000_000;

/// Bit `r` of `i`, or the binary digit sum of `i` when `r` is `None`.
pub fn xi(i: u64, r: Option<u32>) -> u64 {
    match r {
        Some(r) if r >= 64 => 0,
        Some(r) => (i >> r) & 1,
        None => i.count_ones() as u64,
    }
}

pub fn nu_factorial_digits(i: u64) -> u64 {
    i - xi(i, None)
}

pub fn nu_factorial_legendre(i: u64) -> u64 {
    let mut total = 0;
    let mut pow = 2u64;
    while pow <= i {
        total += i / pow;
        pow = match pow.checked_mul(2) {
            Some(p) => p,
            None => break,
        };
    }
    total
}

/// 2-adic valuation of `i!`; both formulas are computed and must agree.
pub fn nu_factorial(i: u64) -> u64 {
    let a = nu_factorial_digits(i);
    assert_eq!(a, nu_factorial_legendre(i), "valuation formulas disagree at {i}");
    a
}

/// `⌊log₂ n⌋` for `n ≥ 1`.
pub fn floor_log2(n: usize) -> u32 {
    assert!(n >= 1);
    usize::BITS - 1 - n.leading_zeros()
}

/// `C(a, t) mod 2` by Lucas' theorem.
pub fn binom_parity(a: u64, t: u64) -> bool {
    t & !a == 0
}

/// `σ_t(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SigmaSpec {
    pub t: usize,
    pub alpha: Vec<u32>,
}

impl SigmaSpec {
    pub fn new(t: usize, alpha: Vec<u32>) -> SigmaSpec {
        SigmaSpec { t, alpha }
    }

    pub fn weight(&self) -> u32 {
        self.alpha.iter().sum()
    }

    /// Expands the polynomial in variables `x{i}_{j}` (value of slot `j` at
    /// coordinate `i`), failing above `cap` terms.
    pub fn to_poly(&self, n: usize, spec: &FieldSpec, cap: usize) -> Result<Poly> {
        let m = self.alpha.len();
        if self.t == 0 || self.t > n {
            return Err(Error::TOutOfRange { t: self.t, n });
        }
        let count = binom(n as u64, self.t as u64);
        if count > cap as u128 {
            return Err(Error::CapExceeded(format!("{count} terms in {self}")));
        }
        let mut terms = Vec::new();
        for subset in subsets(n, self.t) {
            let mut exps = vec![0u32; n * m];
            for &i in &subset {
                for (j, &a) in self.alpha.iter().enumerate() {
                    exps[j * n + i] += a;
                }
            }
            terms.push((exps, Fe::ONE));
        }
        Ok(Poly::from_terms(n * m, spec, terms))
    }

    /// Text form with variables `x{i}_{j}`.
    pub fn poly_text(&self, n: usize, spec: &FieldSpec, cap: usize) -> Result<String> {
        Ok(self.to_poly(n, spec, cap)?.format_with(VarNaming::Double { n }))
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(u32::to_string).collect();
        write!(f, "sigma_{}({})", self.t, a.join(","))
    }
}

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < t - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, t, &mut Vec::new(), &mut out);
    out
}

/// A point `(w_1, …, w_m)` of `V^m`, `V = F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointVm {
    spec: FieldSpec,
    n: usize,
    slots: Vec<Vec<Fe>>,
}

impl PointVm {
    pub fn new(spec: &FieldSpec, slots: Vec<Vec<Fe>>) -> Result<PointVm> {
        let n = slots.first().map_or(0, Vec::len);
        for s in &slots {
            if s.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: s.len() });
            }
            if let Some(x) = s.iter().find(|x| x.index() >= spec.q()) {
                return Err(Error::ElementOutOfRange { index: x.index() as u64, q: spec.q() });
            }
        }
        Ok(PointVm { spec: spec.clone(), n, slots })
    }

    /// A GF(2) point from `m` bit masks; bit `i` is coordinate `i + 1`.
    pub fn from_bits(n: usize, bits: &[u64]) -> PointVm {
        let spec = FieldSpec::of_order(2).expect("GF(2)");
        let slots = bits.iter().map(|&b| (0..n).map(|i| Fe(((b >> i) & 1) as u32)).collect()).collect();
        PointVm { spec, n, slots }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[Vec<Fe>] {
        &self.slots
    }

    /// Flat coordinates, slot `j` occupying positions `j·n .. (j+1)·n`.
    pub fn flatten(&self) -> Vec<Fe> {
        self.slots.concat()
    }

    fn bits(&self) -> Option<Vec<u64>> {
        if self.spec.q() != 2 || self.n > 64 {
            return None;
        }
        Some(self.slots.iter().map(|s| s.iter().enumerate().fold(0u64, |b, (i, x)| b | ((x.index() as u64) << i))).collect())
    }

    /// The column patterns, slot 1 as the most significant bit.
    fn columns(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.slots.iter().fold(0u64, |c, s| c * self.spec.q() as u64 + s[i].index() as u64))
            .collect()
    }
}

impl fmt::Display for PointVm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|s| format!("({})", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// `σ_t` of `values` by the recurrence for `∏(1 + y_i z)`.
pub fn elementary_symmetric(spec: &FieldSpec, values: &[Fe], t: usize) -> Fe {
    let mut e = vec![Fe::ZERO; t + 1];
    e[0] = Fe::ONE;
    for (i, &y) in values.iter().enumerate() {
        if y.is_zero() {
            continue;
        }
        for k in (1..=t.min(i + 1)).rev() {
            e[k] = spec.add(e[k], spec.mul(e[k - 1], y));
        }
    }
    e[t]
}

/// `σ_t(α)` at `pt`.
pub fn sigma_eval(sigma: &SigmaSpec, pt: &PointVm) -> Result<Fe> {
    if sigma.alpha.len() != pt.m() {
        return Err(Error::DimensionMismatch { expected: pt.m(), got: sigma.alpha.len() });
    }
    if sigma.t == 0 || sigma.t > pt.n {
        return Err(Error::TOutOfRange { t: sigma.t, n: pt.n });
    }
    if let Some(bits) = pt.bits() {
        return Ok(Fe(sigma_bits(sigma.t as u64, &sigma.alpha, &bits, pt.n) as u32));
    }
    let spec = &pt.spec;
    let y: Vec<Fe> = (0..pt.n)
        .map(|i| {
            sigma.alpha.iter().zip(&pt.slots).fold(Fe::ONE, |acc, (&a, s)| spec.mul(acc, spec.pow(s[i], a as u64)))
        })
        .collect();
    Ok(elementary_symmetric(spec, &y, sigma.t))
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// GF(2) fast path: `y` is the AND of the slots in the support of `α`, and
/// `σ_t = C(|y|, t) mod 2`.
fn sigma_bits(t: u64, alpha: &[u32], bits: &[u64], n: usize) -> bool {
    let y = alpha.iter().zip(bits).filter(|(&a, _)| a > 0).fold(full_mask(n), |acc, (_, &b)| acc & b);
    binom_parity(y.count_ones() as u64, t)
}

/// `τ ∈ N^{2^m}` with `|τ| = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TauVector(pub Vec<usize>);

impl TauVector {
    pub fn validate(&self, n: usize, m: usize) -> Result<()> {
        let len = 1usize << m;
        if self.0.len() != len {
            return Err(Error::BadTauLength { expected: len, got: self.0.len() });
        }
        let s: usize = self.0.iter().sum();
        if s != n {
            return Err(Error::BadTauSum { expected: n, got: s });
        }
        Ok(())
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for TauVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Slot `j` (1-based) of column `c` (1-based) in the block pattern: bit
/// `m − j` of `2^m − c`.
fn column_bit(c: usize, j: usize, m: usize) -> u64 {
    xi(((1usize << m) - c) as u64, Some((m - j) as u32))
}

fn e_tau_bits(tau: &[usize], m: usize) -> Vec<u64> {
    let mut slots = vec![0u64; m];
    let mut pos = 0;
    for (c0, &count) in tau.iter().enumerate() {
        for j in 1..=m {
            if column_bit(c0 + 1, j, m) == 1 {
                slots[j - 1] |= full_mask(count) << pos;
            }
        }
        pos += count;
    }
    slots
}

/// The representative `e_τ`: column pattern `c` (read as bit `m − j` of
/// `2^m − c` in slot `j`) repeated `τ_c` times, in order of `c`.
pub fn e_tau(tau: &TauVector, m: usize, n: usize) -> Result<PointVm> {
    tau.validate(n, m)?;
    if n > 64 {
        return Err(Error::CapExceeded(format!("n = {n} exceeds 64 coordinates")));
    }
    Ok(PointVm::from_bits(n, &e_tau_bits(&tau.0, m)))
}

/// The `τ` with `e_τ` in the orbit of the GF(2) point `pt`.
pub fn tau_of(pt: &PointVm) -> Result<TauVector> {
    if pt.spec.q() != 2 {
        return Err(Error::SpecMismatch);
    }
    let m = pt.m();
    let mut tau = vec![0usize; 1 << m];
    for b in pt.columns() {
        tau[(1usize << m) - b as usize - 1] += 1;
    }
    Ok(TauVector(tau))
}

/// Removes slot `j` (1-based).
pub fn del_j(pt: &PointVm, j: usize) -> Result<PointVm> {
    if j == 0 || j > pt.m() {
        return Err(Error::IndexOutOfRange { index: j, m: pt.m() });
    }
    let mut slots = pt.slots.clone();
    slots.remove(j - 1);
    Ok(PointVm { spec: pt.spec.clone(), n: pt.n, slots })
}

/// All `τ ∈ N^{parts}` with `|τ| = n`, in lexicographically decreasing order.
pub fn compositions(n: usize, parts: usize) -> Result<Vec<Vec<usize>>> {
    let count = binom((n + parts - 1) as u64, (parts - 1) as u64);
    if count > TAU_CAP {
        return Err(Error::CapExceeded(format!("{count} compositions of {n} into {parts} parts")));
    }
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts - 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(left - a, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    rec(n, parts, &mut Vec::with_capacity(parts), &mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub deltas: Vec<i64>,
    pub holds_a: bool,
    pub holds_a_prime: bool,
    pub holds_b: bool,
    pub holds_c: bool,
}

impl ConditionReport {
    pub fn consistent(&self) -> bool {
        self.holds_a == self.holds_a_prime && self.holds_a == self.holds_b && self.holds_a == self.holds_c
    }
}

/// All `α ∈ {0,1}^m` (over GF(2), `x^k = x` for `k ≥ 1`, so exponents
/// above one add nothing).
fn binary_alphas(m: usize) -> impl Iterator<Item = Vec<u32>> {
    (0u64..1 << m).map(move |mask| (0..m).map(|j| ((mask >> (m - 1 - j)) & 1) as u32).collect())
}

fn check_pair(tau: &TauVector, theta: &TauVector, n: usize, m: usize) -> Result<()> {
    if tau.0.len() != theta.0.len() {
        return Err(Error::BadTauLength { expected: tau.0.len(), got: theta.0.len() });
    }
    if tau.sum() != theta.sum() {
        return Err(Error::SumMismatch);
    }
    tau.validate(n, m)?;
    theta.validate(n, m)
}

/// Condition A: `σ_{2^r}(α)` agrees on `e_τ, e_θ` for every slot `j`,
/// `2^r ≤ n` and `α` vanishing at `j`.
fn holds_a(pt: &PointVm, qt: &PointVm, n: usize, m: usize) -> Result<bool> {
    for j in 0..m {
        for r in 0..=floor_log2(n) {
            for alpha in binary_alphas(m).filter(|a| a[j] == 0) {
                let s = SigmaSpec::new(1 << r, alpha);
                if sigma_eval(&s, pt)? != sigma_eval(&s, qt)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Condition A′: `Del_j(e_τ)` and `Del_j(e_θ)` have equal column multisets
/// for every `j`.
fn holds_a_prime(pt: &PointVm, qt: &PointVm, m: usize) -> Result<bool> {
    for j in 1..=m {
        let mut a = del_j(pt, j)?.columns();
        let mut b = del_j(qt, j)?.columns();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sign(i: usize) -> i64 {
    if xi((i - 1) as u64, None).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `I_j`: the odd-numbered `2^{m−j}`-intervals of `1..=2^m`.
fn interval_set(j: usize, m: usize) -> Vec<usize> {
    let w = 1usize << (m - j);
    (1..=1usize << m).filter(|i| ((i - 1) / w).is_multiple_of(2)).collect()
}

/// Evaluates the four conditions independently.
pub fn conditions(tau: &TauVector, theta: &TauVector, n: usize, m: usize) -> Result<ConditionReport> {
    check_pair(tau, theta, n, m)?;
    let deltas: Vec<i64> = tau.0.iter().zip(&theta.0).map(|(&a, &b)| a as i64 - b as i64).collect();
    let pt = e_tau(tau, m, n)?;
    let qt = e_tau(theta, m, n)?;
    let holds_a = holds_a(&pt, &qt, n, m)?;
    let holds_a_prime = holds_a_prime(&pt, &qt, m)?;
    let holds_b = (2..=1usize << m).all(|i| deltas[i - 1] == sign(i) * deltas[0]);
    let holds_c = (1..=m).all(|j| {
        let w = 1usize << (m - j);
        interval_set(j, m)
            .into_iter()
            .all(|i| tau.0[i - 1] + tau.0[i - 1 + w] == theta.0[i - 1] + theta.0[i - 1 + w])
    });
    Ok(ConditionReport { deltas, holds_a, holds_a_prime, holds_b, holds_c })
}

/// Per-`τ` keys: each condition holds for `(τ, θ)` iff the keys agree.
fn condition_keys(tau: &[usize], n: usize, m: usize) -> [Vec<i64>; 4] {
    let bits = e_tau_bits(tau, m);
    let mut a = Vec::new();
    for j in 0..m {
        for r in 0..=floor_log2(n) {
            for alpha in binary_alphas(m).filter(|al| al[j] == 0) {
                a.push(sigma_bits(1 << r, &alpha, &bits, n) as i64);
            }
        }
    }
    let pt = PointVm::from_bits(n, &bits);
    let mut a_prime = Vec::new();
    for j in 1..=m {
        let mut cols = del_j(&pt, j).expect("slot in range").columns();
        cols.sort_unstable();
        a_prime.extend(cols.into_iter().map(|c| c as i64));
        a_prime.push(-1);
    }
    let b = (2..=1usize << m).map(|i| tau[i - 1] as i64 - sign(i) * tau[0] as i64).collect();
    let mut c = Vec::new();
    for j in 1..=m {
        let w = 1usize << (m - j);
        c.extend(interval_set(j, m).into_iter().map(|i| (tau[i - 1] + tau[i - 1 + w]) as i64));
    }
    [a, a_prime, b, c]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyLemmaReport {
    pub n: usize,
    pub m: usize,
    pub tau_count: usize,
    /// Number of classes of the relation defined by A, A′, B and C.
    pub classes: [usize; 4],
    pub equivalent: bool,
}

/// Checks over all `τ, θ` that A, A′, B and C define the same relation.
/// Each condition is equality of a per-`τ` key, so the relations agree iff
/// the four partitions coincide.
pub fn key_lemma_exhaustive(n: usize, m: usize) -> Result<KeyLemmaReport> {
    let taus = compositions(n, 1 << m)?;
    let mut ids: Vec<HashMap<Vec<i64>, usize>> = vec![HashMap::new(); 4];
    let mut joint: HashSet<[usize; 4]> = HashSet::new();
    for tau in &taus {
        let keys = condition_keys(tau, n, m);
        let mut tuple = [0usize; 4];
        for (c, key) in keys.into_iter().enumerate() {
            let next = ids[c].len();
            tuple[c] = *ids[c].entry(key).or_insert(next);
        }
        joint.insert(tuple);
    }
    let classes = [ids[0].len(), ids[1].len(), ids[2].len(), ids[3].len()];
    let equivalent = classes.iter().all(|&c| c == joint.len());
    Ok(KeyLemmaReport { n, m, tau_count: taus.len(), classes, equivalent })
}

/// Runs [`conditions`] on every ordered pair and counts inconsistent reports.
pub fn key_lemma_pairwise(n: usize, m: usize) -> Result<(usize, usize)> {
    let taus: Vec<TauVector> = compositions(n, 1 << m)?.into_iter().map(TauVector).collect();
    let mut bad = 0;
    let mut pairs = 0;
    for a in &taus {
        for b in &taus {
            pairs += 1;
            if !conditions(a, b, n, m)?.consistent() {
                bad += 1;
            }
        }
    }
    Ok((pairs, bad))
}

/// `S_{n,m} = {σ_{2^r}(α) : α ∈ {0,1}^m, |α| ≥ 1, r + |α| − 1 ≤ ⌊log₂ n⌋}`,
/// ordered by `|α|`, then `α` decreasing, then `r`.
pub fn build_s_nm(n: usize, m: usize) -> Vec<SigmaSpec> {
    let l = floor_log2(n.max(1)) as usize;
    let mut alphas: Vec<Vec<u32>> = binary_alphas(m).filter(|a| a.iter().any(|&x| x > 0)).collect();
    alphas.sort_by(|a, b| {
        let wa: u32 = a.iter().sum();
        let wb: u32 = b.iter().sum();
        wa.cmp(&wb).then_with(|| b.cmp(a))
    });
    let mut out = Vec::new();
    for alpha in alphas {
        let w = alpha.iter().sum::<u32>() as usize;
        if w > l + 1 {
            continue;
        }
        for r in 0..=l + 1 - w {
            out.push(SigmaSpec::new(1 << r, alpha.clone()));
        }
    }
    out
}

fn signature(set: &[SigmaSpec], bits: &[u64], n: usize) -> Vec<bool> {
    set.iter().map(|s| sigma_bits(s.t as u64, &s.alpha, bits, n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub removed: SigmaSpec,
    pub tau: TauVector,
    pub theta: TauVector,
    /// `closed-form` or `search`.
    pub source: String,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnmReport {
    pub n: usize,
    pub m: usize,
    pub size: usize,
    pub tau_count: usize,
    pub separating: bool,
    pub collision: Option<(TauVector, TauVector)>,
    pub witnesses: Vec<Witness>,
    pub minimal: bool,
}

/// The proof's pair for `σ_{2^r}(1, …, 1)` in `V^{w}`, `a = n − 2^{r+w−1}`.
pub fn closed_form_witness(n: usize, r: u32, w: usize) -> Option<(TauVector, TauVector)> {
    let p = 1usize << r;
    let a = n.checked_sub(1usize << (r as usize + w - 1))?;
    if w == 1 {
        return Some((TauVector(vec![p, a]), TauVector(vec![0, p + a])));
    }
    let len = 1usize << w;
    let mut tau = vec![0; len];
    let mut theta = vec![0; len];
    for i in 1..=len {
        let even = xi((i - 1) as u64, None).is_multiple_of(2);
        if i == 4 {
            tau[i - 1] = p + a;
            theta[i - 1] = a;
        } else if even {
            tau[i - 1] = p;
        } else {
            theta[i - 1] = p;
        }
    }
    Some((TauVector(tau), TauVector(theta)))
}

/// Places a `V^w` point into the support slots of `alpha`, zero elsewhere.
fn embed(bits: &[u64], alpha: &[u32]) -> Vec<u64> {
    let mut it = bits.iter();
    alpha.iter().map(|&a| if a > 0 { *it.next().expect("one slot per support entry") } else { 0 }).collect()
}

fn validates(set: &[SigmaSpec], idx: usize, u: &[u64], v: &[u64], n: usize) -> bool {
    let su = signature(set, u, n);
    let sv = signature(set, v, n);
    (0..set.len()).all(|i| (su[i] == sv[i]) == (i != idx))
}

fn bits_to_tau(bits: &[u64], n: usize) -> TauVector {
    tau_of(&PointVm::from_bits(n, bits)).expect("GF(2) point")
}

/// Checks that `S_{n,m}` separates all `e_τ` and that every member is needed.
pub fn verify_s_nm(n: usize, m: usize) -> Result<SnmReport> {
    if n < 2 || m < 1 {
        return Err(Error::CapExceeded(format!("S_(n,m) needs n >= 2 and m >= 1, got n = {n}, m = {m}")));
    }
    if n > 64 {
        return Err(Error::CapExceeded(format!("n = {n} exceeds 64 coordinates")));
    }
    let set = build_s_nm(n, m);
    let taus = compositions(n, 1 << m)?;
    let sigs: Vec<Vec<bool>> = taus.iter().map(|t| signature(&set, &e_tau_bits(t, m), n)).collect();
    let mut seen: HashMap<&[bool], usize> = HashMap::new();
    let mut collision = None;
    for (i, s) in sigs.iter().enumerate() {
        if let Some(&j) = seen.get(s.as_slice()) {
            collision = Some((TauVector(taus[j].clone()), TauVector(taus[i].clone())));
            break;
        }
        seen.insert(s, i);
    }
    let separating = collision.is_none();

    let mut witnesses = Vec::new();
    for (idx, f) in set.iter().enumerate() {
        let w = f.weight() as usize;
        let r = f.t.trailing_zeros();
        let closed = closed_form_witness(n, r, w).map(|(t, th)| {
            let u = embed(&e_tau_bits(&t.0, w), &f.alpha);
            let v = embed(&e_tau_bits(&th.0, w), &f.alpha);
            (u, v)
        });
        if let Some((u, v)) = closed.filter(|(u, v)| validates(&set, idx, u, v, n)) {
            witnesses.push(Witness {
                removed: f.clone(),
                tau: bits_to_tau(&u, n),
                theta: bits_to_tau(&v, n),
                source: "closed-form".into(),
                valid: true,
            });
            continue;
        }
        // two e_τ agreeing off `f` but differing at `f`
        let mut by_rest: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut found = None;
        for (i, s) in sigs.iter().enumerate() {
            let mut rest = s.clone();
            rest.remove(idx);
            match by_rest.get(&rest) {
                Some(&j) if sigs[j][idx] != s[idx] => {
                    found = Some((j, i));
                    break;
                }
                Some(_) => {}
                None => {
                    by_rest.insert(rest, i);
                }
            }
        }
        if let Some((j, i)) = found {
            let u = e_tau_bits(&taus[j], m);
            let v = e_tau_bits(&taus[i], m);
            if !validates(&set, idx, &u, &v, n) {
                return Err(Error::WitnessValidationFailed(f.to_string()));
            }
            witnesses.push(Witness {
                removed: f.clone(),
                tau: TauVector(taus[j].clone()),
                theta: TauVector(taus[i].clone()),
                source: "search".into(),
                valid: true,
            });
        }
    }
    let minimal = witnesses.len() == set.len();
    Ok(SnmReport { n, m, size: set.len(), tau_count: taus.len(), separating, collision, witnesses, minimal })
}

/// If `s_t` separates `e_a, e_b`, so does some `s_{2^r}` with `2^r ≤ t`.
pub fn claim1_check(n: usize) -> bool {
    let n = n as u64;
    for t in 1..=n {
        for a in 0..=n {
            for b in a + 1..=n {
                if binom_parity(a, t) != binom_parity(b, t) {
                    let ok = (0..=floor_log2(t as usize))
                        .any(|r| binom_parity(a, 1 << r) != binom_parity(b, 1 << r));
                    if !ok {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The point `e_i = (1^i, 0^{n−i})` of `V = GF(2)^n`.
pub fn e_i(i: usize, n: usize) -> PointVm {
    PointVm::from_bits(n, &[full_mask(i)])
}

/// `s_{2^r}(e_i)` equals bit `r` of `i` for all `i ≤ n`, `2^r ≤ n`.
pub fn digit_lemma_check(n: usize) -> Result<bool> {
    for i in 0..=n {
        for r in 0..=floor_log2(n) {
            let v = sigma_eval(&SigmaSpec::new(1 << r, vec![1]), &e_i(i, n))?;
            if v.index() as u64 != xi(i as u64, Some(r)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For `b < a ≤ n`, some `s_{2^r}` with `r ≤ ⌊log₂(a − b)⌋` separates `e_a, e_b`.
pub fn difference_lemma_check(n: usize) -> Result<bool> {
    for a in 0..=n {
        for b in 0..a {
            let mut ok = false;
            for r in 0..=floor_log2(a - b) {
                let s = SigmaSpec::new(1 << r, vec![1]);
                if sigma_eval(&s, &e_i(a, n))? != sigma_eval(&s, &e_i(b, n))? {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetCheck {
    pub members: Vec<usize>,
    pub orbits: usize,
    pub gamma: u32,
    pub separating: bool,
    pub minimal: bool,
    pub size_equals_gamma: bool,
}

/// Separation and inclusion-minimality of `{s_t : t ∈ members}` on `reps`.
fn symmetric_set_check(spec: &FieldSpec, members: &[usize], reps: &[PointVm]) -> Result<SetCheck> {
    let table: Vec<Vec<Fe>> = members
        .iter()
        .map(|&t| reps.iter().map(|p| sigma_eval(&SigmaSpec::new(t, vec![1]), p)).collect())
        .collect::<Result<_>>()?;
    let separates = |skip: Option<usize>| -> bool {
        let cols: HashSet<Vec<Fe>> = (0..reps.len())
            .map(|c| table.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, r)| r[c]).collect())
            .collect();
        cols.len() == reps.len()
    };
    let separating = separates(None);
    let minimal = separating && (0..members.len()).all(|i| !separates(Some(i)));
    let gamma = sepcore::gamma(spec.q() as u64, reps.len() as u64);
    Ok(SetCheck {
        members: members.to_vec(),
        orbits: reps.len(),
        gamma,
        separating,
        minimal,
        size_equals_gamma: members.len() == gamma as usize,
    })
}

/// Orbit representatives of `S_n` on `F_q^n`: sorted vectors, one per
/// multiset of entries.
pub fn sorted_reps(spec: &FieldSpec, n: usize) -> Result<Vec<PointVm>> {
    let q = spec.q() as usize;
    compositions(n, q)?
        .into_iter()
        .map(|counts| {
            let v: Vec<Fe> = counts.iter().enumerate().flat_map(|(x, &c)| std::iter::repeat_n(Fe(x as u32), c)).collect();
            PointVm::new(spec, vec![v])
        })
        .collect()
}

/// `M_{1,n} = {s_1, s_2} ∪ {s_{3r} : 1 ≤ r ≤ n/3}` over GF(3), checked on
/// all `C(n+2, 2)` orbits of `S_n` on `F_3^n`.
pub fn f3_remark_check(n: usize) -> Result<SetCheck> {
    if !(2..=14).contains(&n) {
        return Err(Error::OutOfRemarkRange(n));
    }
    let spec = FieldSpec::of_order(3)?;
    let mut members = vec![1, 2];
    members.extend((1..=n / 3).map(|r| 3 * r));
    symmetric_set_check(&spec, &members, &sorted_reps(&spec, n)?)
}

/// `{s_1, s_2, s_3}` over GF(4) with `n = 3`, on all orbits of `S_3` on `F_4^3`.
pub fn f4_remark_check() -> Result<SetCheck> {
    let spec = FieldSpec::of_order(4)?;
    symmetric_set_check(&spec, &[1, 2, 3], &sorted_reps(&spec, 3)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub samples: usize,
    pub identity_holds: bool,
    pub combined_separates: Option<bool>,
}

/// Checks `s_l(u′) = σ_l(α)(u)` with `u′_i = ∏_j u(j)_i^{α_j}` on random
/// points, and whether `{σ_j(α) : j ∈ J, α ∈ A}` separates all `e_τ` when
/// `spec` is GF(2).
pub fn reduction_property_check(
    spec: &FieldSpec,
    n: usize,
    m: usize,
    j_set: &[usize],
    a_set: &[Vec<u32>],
    samples: usize,
    seed: u64,
) -> Result<ReductionReport> {
    if n == 0 || m == 0 {
        return Err(Error::CapExceeded("empty instance".into()));
    }
    for a in a_set {
        if a.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: a.len() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = spec.q();
    let mut identity_holds = true;
    for _ in 0..samples {
        let slots: Vec<Vec<Fe>> = (0..m).map(|_| (0..n).map(|_| Fe(rng.gen_range(0..q))).collect()).collect();
        let u = PointVm::new(spec, slots)?;
        for alpha in a_set {
            let prime: Vec<Fe> = (0..n)
                .map(|i| alpha.iter().zip(u.slots()).fold(Fe::ONE, |acc, (&a, s)| spec.mul(acc, spec.pow(s[i], a as u64))))
                .collect();
            for l in 1..=n {
                if elementary_symmetric(spec, &prime, l) != sigma_eval(&SigmaSpec::new(l, alpha.clone()), &u)? {
                    identity_holds = false;
                }
            }
        }
    }
    let combined_separates = if spec.q() == 2 && n <= 64 {
        let set: Vec<SigmaSpec> =
            a_set.iter().flat_map(|a| j_set.iter().map(move |&j| SigmaSpec::new(j, a.clone()))).collect();
        if set.iter().any(|s| s.t == 0 || s.t > n) {
            return Err(Error::TOutOfRange { t: set.iter().map(|s| s.t).max().unwrap_or(0), n });
        }
        let taus = compositions(n, 1 << m)?;
        let sigs: HashSet<Vec<bool>> = taus.iter().map(|t| signature(&set, &e_tau_bits(t, m), n)).collect();
        Some(sigs.len() == taus.len())
    } else {
        None
    };
    Ok(ReductionReport { samples, identity_holds, combined_separates })
}

/// `S_n` acting diagonally on `V^m`, coordinate `(i, j)` at flat position
/// `(j − 1)·n + (i − 1)`.
pub fn diagonal_sym_group(spec: &FieldSpec, n: usize, m: usize, cap: usize) -> Result<Group> {
    let lift = |pi: &[usize]| -> Vec<usize> { (0..m).flat_map(|j| pi.iter().map(move |&p| j * n + p)).collect() };
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(Mat::permutation(spec, &lift(&swap)));
        gens.push(Mat::permutation(spec, &lift(&cycle)));
    }
    Group::closure(spec, n * m, gens, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub n: usize,
    pub m: usize,
    /// Largest total degree `2^r·|α|` of a member of `S_{n,m}`.
    pub max_degree: u64,
    pub beta_formula: u64,
    pub beta_brute_force: Option<BetaSep>,
    pub sigma_n: u32,
    pub sigma_formula: u32,
}

/// Compares the degree and `σ(n)` formulas with `S_{n,m}` and, for small
/// cases, with a brute-force `β_sep`.
pub fn corollary_report(n: usize, m: usize) -> Result<CorollaryReport> {
    if n < 2 || m < 1 {
        return Err(Error::CapExceeded(format!("needs n >= 2 and m >= 1, got n = {n}, m = {m}")));
    }
    let l = floor_log2(n);
    let set = build_s_nm(n, m);
    let max_degree = set.iter().map(|s| s.t as u64 * s.weight() as u64).max().unwrap_or(0);
    let wide = build_s_nm(n, m.max(l as usize + 1));
    let sigma_n = wide.iter().map(SigmaSpec::weight).max().unwrap_or(0);
    let beta_brute_force = if (m == 1 && n <= 8) || (m == 2 && n <= 4) {
        let spec = FieldSpec::of_order(2)?;
        let group = diagonal_sym_group(&spec, n, m, crate::action::DEFAULT_ORDER_CAP)?;
        let dec = OrbitDecomp::new(&group, DEFAULT_POINT_CAP)?;
        Some(sepcore::beta_sep(&group, &dec, (1u32 << l) + 1, None)?)
    } else {
        None
    };
    Ok(CorollaryReport {
        n,
        m,
        max_degree,
        beta_formula: 1 << l,
        beta_brute_force,
        sigma_n,
        sigma_formula: l + 1,
    })
}

/// Checks that the `e_τ` meet every orbit of the diagonal action exactly
/// once, by full orbit enumeration over GF(2).
pub fn representatives_complete(n: usize, m: usize) -> Result<bool> {
    if n * m > 20 {
        return Err(Error::CapExceeded(format!("2^{} points", n * m)));
    }
    let spec = FieldSpec::of_order(2)?;
    let group = diagonal_sym_group(&spec, n, m, crate::action::DEFAULT_ORDER_CAP)?;
    let dec = OrbitDecomp::new(&group, DEFAULT_POINT_CAP)?;
    let taus = compositions(n, 1 << m)?;
    let mut hit = HashSet::new();
    for t in taus {
        let p = e_tau(&TauVector(t), m, n)?;
        if !hit.insert(dec.orbit_of(&p.flatten())?) {
            return Ok(false);
        }
    }
    Ok(hit.len() == dec.k())
}
