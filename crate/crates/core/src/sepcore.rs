//! Separating sets built from orbit indicators, and their certification.
//!
//! For a group `G` with orbits `W_1, …, W_k` on `V = F_q^n`, every orbit has
//! an indicator polynomial `f_j` of per-variable degree `q − 1`. Three
//! invariant versions of it are available:
//!
//! * the norm `n_j = ∏_{g∈G} g·f_j` (always),
//! * `f_j` itself when `G` consists of monomial matrices,
//! * the Reynolds average `h_j = |G|⁻¹ ∑_{g∈G} g·f_j` when `p ∤ |G|`.
//!
//! Mixing the `k` indicators with a `γ × k` matrix whose columns are pairwise
//! distinct yields `γ = ⌈log_q k⌉` separating invariants, which is the least
//! possible number.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{Group, Mat, OrbitDecomp};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::linalg;
use crate::mvpoly::Poly;

pub const DEFAULT_EXPANSION_CAP: usize = 100_000;
pub const DEFAULT_LINALG_CAP: usize = 4_000;
pub const DEFAULT_ORBIT_SUM_CAP: usize = 2_000_000;

/// `⌈log_q k⌉`, the least `γ` with `k ≤ q^γ`.
pub fn gamma(q: u64, k: u64) -> u32 {
    assert!(q >= 2 && k >= 1, "gamma needs q >= 2 and k >= 1");
    let mut g = 0;
    let mut pow: u128 = 1;
    while pow < k as u128 {
        pow *= q as u128;
        g += 1;
    }
    g
}

/// `1 − (x − c)^{q−1}` written as `−∏_{a≠c}(x − a)`, coefficients low degree first.
fn point_indicator_1d(spec: &FieldSpec, c: Fe) -> Vec<Fe> {
    let mut coeffs = vec![spec.neg(Fe::ONE)];
    for a in spec.elements().filter(|&a| a != c) {
        // multiply by (x − a)
        let na = spec.neg(a);
        let mut next = vec![Fe::ZERO; coeffs.len() + 1];
        for (i, &ci) in coeffs.iter().enumerate() {
            next[i + 1] = spec.add(next[i + 1], ci);
            next[i] = spec.add(next[i], spec.mul(ci, na));
        }
        coeffs = next;
    }
    coeffs
}

fn accumulate_indicator(spec: &FieldSpec, factors: &[Vec<Fe>], w: &[Fe], acc: &mut HashMap<Vec<u32>, Fe>) {
    let n = w.len();
    let mut exps = vec![0u32; n];
    fn rec(
        spec: &FieldSpec,
        factors: &[Vec<Fe>],
        w: &[Fe],
        i: usize,
        coeff: Fe,
        exps: &mut Vec<u32>,
        acc: &mut HashMap<Vec<u32>, Fe>,
    ) {
        if i == w.len() {
            let slot = acc.entry(exps.clone()).or_insert(Fe::ZERO);
            *slot = spec.add(*slot, coeff);
            return;
        }
        for (d, &c) in factors[w[i].index() as usize].iter().enumerate() {
            if !c.is_zero() {
                exps[i] = d as u32;
                rec(spec, factors, w, i + 1, spec.mul(coeff, c), exps, acc);
            }
        }
        exps[i] = 0;
    }
    rec(spec, factors, w, 0, Fe::ONE, &mut exps, acc);
}

fn indicator_sum<'a>(spec: &FieldSpec, n: usize, points: impl Iterator<Item = &'a [Fe]>) -> Poly {
    let factors: Vec<Vec<Fe>> = spec.elements().map(|c| point_indicator_1d(spec, c)).collect();
    let mut acc = HashMap::new();
    for w in points {
        accumulate_indicator(spec, &factors, w, &mut acc);
    }
    Poly::from_terms(n, spec, acc)
}

/// `f_w = (−1)^n ∏_i ∏_{a≠w_i} (x_i − a)`: 1 at `w`, 0 elsewhere.
pub fn indicator_fw(spec: &FieldSpec, w: &[Fe]) -> Poly {
    indicator_sum(spec, w.len(), std::iter::once(w))
}

/// `f_j = ∑_{w∈W_j} f_w`, the indicator function of orbit `j`.
pub fn orbit_indicator(dec: &OrbitDecomp, j: usize) -> Poly {
    let pts = dec.orbit(j);
    indicator_sum(dec.spec(), dec.n(), pts.iter().map(Vec::as_slice))
}

/// The factors `g · f` for every `g ∈ G`, in group order.
pub fn translates(group: &Group, f: &Poly) -> Result<Vec<Poly>> {
    group.elements().par_iter().map(|g| f.act(g)).collect()
}

/// Distinct translates with their multiplicities, in order of first appearance.
fn translate_powers(group: &Group, f: &Poly) -> Result<Vec<(Poly, u64)>> {
    let mut out: Vec<(Poly, u64)> = Vec::new();
    for t in translates(group, f)? {
        match out.iter_mut().find(|(p, _)| *p == t) {
            Some((_, e)) => *e += 1,
            None => out.push((t, 1)),
        }
    }
    Ok(out)
}

/// Expanded norm `∏_{g∈G} g·f`, failing with `ExpansionTooLarge` above `cap` terms.
pub fn norm_invariant(group: &Group, f: &Poly, cap: usize) -> Result<Poly> {
    expand_product(&translate_powers(group, f)?, cap)
}

fn pow_capped(f: &Poly, mut e: u64, cap: usize) -> Result<Poly> {
    let too_large = || Error::ExpansionTooLarge { cap };
    let mut acc = Poly::one(f.n(), f.spec());
    let mut base = f.clone();
    loop {
        if e & 1 == 1 {
            acc = acc.mul_capped(&base, cap)?.ok_or_else(too_large)?;
        }
        e >>= 1;
        if e == 0 {
            return Ok(acc);
        }
        base = base.mul_capped(&base, cap)?.ok_or_else(too_large)?;
    }
}

fn expand_product(factors: &[(Poly, u64)], cap: usize) -> Result<Poly> {
    let (first, rest) = factors.split_first().expect("a group has at least one element");
    let mut acc = pow_capped(&first.0, first.1, cap)?;
    for (f, e) in rest {
        let p = pow_capped(f, *e, cap)?;
        acc = acc.mul_capped(&p, cap)?.ok_or(Error::ExpansionTooLarge { cap })?;
    }
    Ok(acc)
}

/// `|G|⁻¹ ∑_{g∈G} g·f`; requires `p ∤ |G|`.
pub fn reynolds_invariant(group: &Group, f: &Poly) -> Result<Poly> {
    let spec = group.spec();
    let order = group.order();
    if order.is_multiple_of(spec.p() as usize) {
        return Err(Error::ModularCase { order, p: spec.p() });
    }
    let mut acc = Poly::zero(f.n(), spec);
    for t in translates(group, f)? {
        acc.add_assign(&t)?;
    }
    let scale = spec.inv(spec.from_int(order as i64))?;
    Ok(acc.scale(scale))
}

/// `γ × k` matrix with pairwise distinct columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixingMatrix {
    pub rows: Vec<Vec<Fe>>,
}

impl MixingMatrix {
    /// Column `j` holds the base-`q` digits of `j`, most significant digit in
    /// the first row, digit `d` read as the field element with index `d`.
    pub fn base_q(q: u32, k: usize, gamma: usize) -> Result<MixingMatrix> {
        let capacity = (q as u128).checked_pow(gamma as u32).unwrap_or(u128::MAX);
        if k as u128 > capacity {
            return Err(Error::TooManyColumns { q, k, rows: gamma });
        }
        let mut rows = vec![vec![Fe::ZERO; k]; gamma];
        for (i, row) in rows.iter_mut().enumerate() {
            let place = (q as u64).pow((gamma - 1 - i) as u32);
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = Fe((j as u64 / place % q as u64) as u32);
            }
        }
        Ok(MixingMatrix { rows })
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        self.rows.iter().map(|r| r[j]).collect()
    }
}

/// A linear combination of products of polynomial powers, kept unexpanded.
#[derive(Clone, Debug, PartialEq)]
pub struct LazyProducts {
    n: usize,
    spec: FieldSpec,
    terms: Vec<(Fe, Vec<(Poly, u64)>)>,
}

impl LazyProducts {
    pub fn evaluate(&self, v: &[Fe]) -> Fe {
        let s = &self.spec;
        self.terms.iter().fold(Fe::ZERO, |acc, (c, factors)| {
            let mut t = *c;
            for (f, e) in factors {
                if t.is_zero() {
                    break;
                }
                t = s.mul(t, s.pow(f.eval_unchecked(v), *e));
            }
            s.add(acc, t)
        })
    }

    /// Upper bound on the total degree; exact for a single product.
    pub fn formal_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|(_, fs)| fs.iter().map(|(f, e)| f.degrees().total.unwrap_or(0) * *e as u32).sum())
            .max()
    }

    /// `g` permutes the factors of every product, respecting multiplicities.
    fn fixed_by(&self, g: &Mat) -> Result<bool> {
        for (_, factors) in &self.terms {
            let mut moved = factors.iter().map(|(f, e)| Ok((f.act(g)?.to_string(), *e))).collect::<Result<Vec<_>>>()?;
            let mut orig: Vec<(String, u64)> = factors.iter().map(|(f, e)| (f.to_string(), *e)).collect();
            moved.sort();
            orig.sort();
            if moved != orig {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for LazyProducts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, fs)| {
                let body: Vec<String> = fs
                    .iter()
                    .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
                    .collect();
                if *c == Fe::ONE {
                    body.join("*")
                } else {
                    format!("{c}*{}", body.join("*"))
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A candidate invariant: either an explicit polynomial or an unexpanded
/// combination of norm products.
#[derive(Clone, Debug, PartialEq)]
pub enum Invariant {
    Poly(Poly),
    Lazy(LazyProducts),
}

impl Invariant {
    pub fn evaluate(&self, v: &[Fe]) -> Fe {
        match self {
            Invariant::Poly(p) => p.eval_unchecked(v),
            Invariant::Lazy(l) => l.evaluate(v),
        }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Invariant::Poly(p) => p.degrees().total,
            Invariant::Lazy(l) => l.formal_degree(),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Invariant::Poly(p) => Some(p),
            Invariant::Lazy(_) => None,
        }
    }

    /// Symbolic check against a single group element. Polynomials are
    /// compared after reduction modulo `x_i^q − x_i`.
    pub fn fixed_by(&self, g: &Mat) -> Result<bool> {
        match self {
            Invariant::Poly(p) => Ok(p.act(g)?.normal_form() == p.normal_form()),
            Invariant::Lazy(l) => l.fixed_by(g),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Poly(p) => write!(f, "{p}"),
            Invariant::Lazy(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Norm,
    Reynolds,
    Monomial,
    Custom,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "norm" => Ok(Method::Norm),
            "reynolds" => Ok(Method::Reynolds),
            "monomial" => Ok(Method::Monomial),
            "custom" => Ok(Method::Custom),
            _ => Err(format!("unknown method {s:?}")),
        }
    }
}

/// Bitset over the `C(k, 2)` unordered pairs of orbit indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairMask {
    k: usize,
    words: Vec<u64>,
}

impl PairMask {
    pub fn empty(k: usize) -> PairMask {
        let bits = k * k.saturating_sub(1) / 2;
        PairMask { k, words: vec![0; bits.div_ceil(64)] }
    }

    pub fn full(k: usize) -> PairMask {
        let mut m = PairMask::empty(k);
        for a in 0..k {
            for b in a + 1..k {
                m.set(a, b);
            }
        }
        m
    }

    fn index(&self, a: usize, b: usize) -> usize {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        a * self.k - a * (a + 1) / 2 + (b - a - 1)
    }

    pub fn set(&mut self, a: usize, b: usize) {
        let i = self.index(a, b);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, a: usize, b: usize) -> bool {
        let i = self.index(a, b);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &PairMask) {
        for (x, y) in self.words.iter_mut().zip(&other.words) {
            *x |= y;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Pairs from the mask, in order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for a in 0..self.k {
            for b in a + 1..self.k {
                if self.get(a, b) {
                    v.push((a, b));
                }
            }
        }
        v
    }
}

/// Pairs of columns that differ in `row`.
pub fn pair_mask_of_row(row: &[Fe]) -> PairMask {
    let k = row.len();
    let mut m = PairMask::empty(k);
    for a in 0..k {
        for b in a + 1..k {
            if row[a] != row[b] {
                m.set(a, b);
            }
        }
    }
    m
}

/// A candidate set of invariants together with its values on the orbit representatives.
#[derive(Clone, Debug)]
pub struct SepCertificate {
    pub method: Method,
    pub invariants: Vec<Invariant>,
    /// `r × k`: rows are invariants, columns orbit representatives.
    pub eval_matrix: Vec<Vec<Fe>>,
    pub separating: bool,
    pub size: usize,
    pub gamma: u32,
    pub degree_bound_claimed: Option<u64>,
    pub degree_bound_observed: Option<u32>,
    pub orbit_reps: Vec<Vec<Fe>>,
    /// Orbit pairs separated by each invariant.
    pub pair_masks: Vec<PairMask>,
}

impl SepCertificate {
    /// Pairs of orbits that no invariant in the set separates.
    pub fn unseparated_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.orbit_reps.len();
        let mut all = PairMask::empty(k);
        for m in &self.pair_masks {
            all.union_with(m);
        }
        let mut out = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if !all.get(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            method: self.method,
            gamma: self.gamma,
            size: self.size,
            separating: self.separating,
            degree_bound_claimed: self.degree_bound_claimed,
            degree_bound_observed: self.degree_bound_observed,
            eval_matrix: idx_matrix(&self.eval_matrix),
            invariants: self.invariants.iter().map(|i| i.to_string()).collect(),
            orbit_reps: idx_matrix(&self.orbit_reps),
        }
    }
}

pub(crate) fn idx_matrix(m: &[Vec<Fe>]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.iter().map(|x| x.index()).collect()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub method: Method,
    pub gamma: u32,
    pub size: usize,
    pub separating: bool,
    pub degree_bound_claimed: Option<u64>,
    pub degree_bound_observed: Option<u32>,
    pub eval_matrix: Vec<Vec<u32>>,
    pub invariants: Vec<String>,
    pub orbit_reps: Vec<Vec<u32>>,
}

/// Evaluates `invs` on the orbit representatives after checking, symbolically
/// on the generators, that each one is invariant.
pub fn certify(method: Method, invs: Vec<Invariant>, group: &Group, dec: &OrbitDecomp) -> Result<SepCertificate> {
    for (i, inv) in invs.iter().enumerate() {
        for g in group.generators() {
            if !inv.fixed_by(g)? {
                return Err(Error::NotInvariant { index: i, poly: truncate(&inv.to_string()), generator: g.to_string() });
            }
        }
    }
    let reps = dec.reps();
    let eval_matrix: Vec<Vec<Fe>> =
        invs.par_iter().map(|inv| reps.iter().map(|v| inv.evaluate(v)).collect()).collect();
    let k = reps.len();
    let distinct: HashSet<Vec<Fe>> = (0..k).map(|j| eval_matrix.iter().map(|r| r[j]).collect()).collect();
    let separating = distinct.len() == k;
    let pair_masks = eval_matrix.iter().map(|r| pair_mask_of_row(r)).collect();
    let degree_bound_observed = invs.iter().filter_map(Invariant::degree).max();
    let size = invs.len();
    let gamma = gamma(dec.spec().q() as u64, k as u64);
    if separating {
        debug_assert!(size as u32 >= gamma);
    }
    Ok(SepCertificate {
        method,
        invariants: invs,
        eval_matrix,
        separating,
        size,
        gamma,
        degree_bound_claimed: None,
        degree_bound_observed,
        orbit_reps: reps,
        pair_masks,
    })
}

fn truncate(s: &str) -> String {
    if s.len() > 200 {
        format!("{}…", &s[..s.char_indices().nth(200).map_or(s.len(), |(i, _)| i)])
    } else {
        s.to_string()
    }
}

/// Certifies an explicit list of polynomials.
pub fn check_separating(invs: &[Poly], group: &Group, dec: &OrbitDecomp) -> Result<SepCertificate> {
    certify(Method::Custom, invs.iter().cloned().map(Invariant::Poly).collect(), group, dec)
}

#[derive(Clone, Copy, Debug)]
pub struct BuildOptions {
    pub expansion_cap: usize,
    /// Keep norms as unexpanded products when expansion exceeds the cap.
    pub allow_lazy: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { expansion_cap: DEFAULT_EXPANSION_CAP, allow_lazy: true }
    }
}

/// The invariant orbit indicators for `method`, before mixing.
pub fn orbit_invariants(group: &Group, dec: &OrbitDecomp, method: Method, opts: BuildOptions) -> Result<Vec<Invariant>> {
    let spec = group.spec();
    match method {
        Method::Monomial => {
            if let Some(g) = group.elements().iter().find(|g| !g.is_monomial()) {
                return Err(Error::NotMonomialGroup { element: g.to_string() });
            }
            Ok((0..dec.k()).map(|j| Invariant::Poly(orbit_indicator(dec, j))).collect())
        }
        Method::Reynolds => {
            if group.order().is_multiple_of(spec.p() as usize) {
                return Err(Error::ModularCase { order: group.order(), p: spec.p() });
            }
            (0..dec.k()).map(|j| Ok(Invariant::Poly(reynolds_invariant(group, &orbit_indicator(dec, j))?))).collect()
        }
        Method::Norm => (0..dec.k())
            .map(|j| {
                let factors = translate_powers(group, &orbit_indicator(dec, j))?;
                match expand_product(&factors, opts.expansion_cap) {
                    Ok(p) => Ok(Invariant::Poly(p)),
                    Err(Error::ExpansionTooLarge { .. }) if opts.allow_lazy => Ok(Invariant::Lazy(LazyProducts {
                        n: dec.n(),
                        spec: spec.clone(),
                        terms: vec![(Fe::ONE, factors)],
                    })),
                    Err(e) => Err(e),
                }
            })
            .collect(),
        Method::Custom => Err(Error::UnknownGroup("custom is not a construction method".into())),
    }
}

fn mix(spec: &FieldSpec, n: usize, mixing: &MixingMatrix, xs: &[Invariant]) -> Result<Vec<Invariant>> {
    let all_poly = xs.iter().all(|x| matches!(x, Invariant::Poly(_)));
    mixing
        .rows
        .iter()
        .map(|row| {
            if all_poly {
                let mut acc = Poly::zero(n, spec);
                for (a, x) in row.iter().zip(xs) {
                    if !a.is_zero() {
                        acc.add_assign(&x.as_poly().expect("all expanded").scale(*a))?;
                    }
                }
                Ok(Invariant::Poly(acc))
            } else {
                let mut terms = Vec::new();
                for (a, x) in row.iter().zip(xs) {
                    if a.is_zero() {
                        continue;
                    }
                    match x {
                        Invariant::Poly(p) => terms.push((*a, vec![(p.clone(), 1)])),
                        Invariant::Lazy(l) => {
                            terms.extend(l.terms.iter().map(|(c, fs)| (spec.mul(*a, *c), fs.clone())))
                        }
                    }
                }
                Ok(Invariant::Lazy(LazyProducts { n, spec: spec.clone(), terms }))
            }
        })
        .collect()
}

/// Builds `γ` separating invariants `t_i = ∑_j a_ij X_j` from the orbit
/// invariants `X_j` of `method`, mixed by [`MixingMatrix::base_q`].
pub fn build_separating(group: &Group, dec: &OrbitDecomp, method: Method, opts: BuildOptions) -> Result<SepCertificate> {
    let spec = group.spec();
    let n = dec.n();
    let q = spec.q();
    let k = dec.k();
    let xs = orbit_invariants(group, dec, method, opts)?;
    let gamma = gamma(q as u64, k as u64) as usize;
    let mixing = MixingMatrix::base_q(q, k, gamma)?;
    let ts = mix(spec, n, &mixing, &xs)?;
    let mut cert = certify(method, ts, group, dec)?;
    let base = n as u64 * (q as u64 - 1);
    cert.degree_bound_claimed = Some(match method {
        Method::Norm => group.order() as u64 * base,
        _ => base,
    });
    Ok(cert)
}

/// All inclusion-minimal subsets of `masks` (of size at most `max_size`) that
/// separate every pair the whole family separates.
pub fn minimal_covers(masks: &[PairMask], max_size: usize) -> Result<Vec<Vec<usize>>> {
    let r = masks.len();
    if r > 20 {
        return Err(Error::TooManyInvariants(r));
    }
    if r == 0 {
        return Ok(vec![vec![]]);
    }
    let mut target = masks[0].clone();
    for m in &masks[1..] {
        target.union_with(m);
    }
    let covers: Vec<bool> = (0u32..1 << r)
        .into_par_iter()
        .map(|s| {
            if s.count_ones() as usize > max_size {
                return false;
            }
            let mut u = PairMask::empty(target.k);
            for (i, m) in masks.iter().enumerate() {
                if s >> i & 1 == 1 {
                    u.union_with(m);
                }
            }
            u == target
        })
        .collect();
    let mut out: Vec<Vec<usize>> = (0u32..1 << r)
        .filter(|&s| covers[s as usize] && (0..r).filter(|i| s >> i & 1 == 1).all(|i| !covers[(s ^ (1 << i)) as usize]))
        .map(|s| (0..r).filter(|i| s >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Inclusion-minimal separating subsets of `invs` on the orbits of `group`.
pub fn minimal_subsets(invs: &[Poly], group: &Group, dec: &OrbitDecomp, max_size: usize) -> Result<Vec<Vec<usize>>> {
    if invs.len() > 20 {
        return Err(Error::TooManyInvariants(invs.len()));
    }
    let cert = check_separating(invs, group, dec)?;
    minimal_covers(&cert.pair_masks, max_size)
}

/// Outcome of the degree-by-degree separation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BetaSep {
    /// Least separating degree, or `None` when not reached by `d_max`.
    pub value: Option<u32>,
    pub d_max: u32,
    /// Dimension of the homogeneous invariants in each degree `1..`.
    pub dims: Vec<usize>,
    /// Orbit pairs still unseparated after all degrees `≤ d`, for each `d`.
    pub unseparated: Vec<usize>,
    /// A pair of orbit indices unseparated in degrees below `value`.
    pub witness_below: Option<(usize, usize)>,
}

/// How the fixed space of each degree is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedSpaceRoute {
    /// Orbit sums of monomials; only valid for permutation groups.
    OrbitSums,
    /// Kernel of the stacked maps `g − id` over the generators.
    Kernel,
}

/// Exponent vectors of total degree `d` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in (0..=d).rev() {
            prefix.push(a);
            rec(n, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn binom_u128(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Degree-`d` exponent vectors and a basis of the fixed space in those coordinates.
pub type FixedSpace = (Vec<Vec<u32>>, Vec<Vec<Fe>>);

/// A basis of the homogeneous invariants of degree `d`, as coefficient vectors
/// over `monomials_of_degree(n, d)`.
pub fn fixed_space_basis(group: &Group, d: u32, route: FixedSpaceRoute, cap: usize) -> Result<FixedSpace> {
    let n = group.n();
    let count = binom_u128(n as u64 + d as u64 - 1, d as u64);
    if count > cap as u128 {
        return Err(Error::LinearAlgebraCapExceeded { degree: d, monomials: count.min(usize::MAX as u128) as usize, cap });
    }
    let monos = monomials_of_degree(n, d);
    let index: HashMap<&[u32], usize> = monos.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let spec = group.spec();
    match route {
        FixedSpaceRoute::OrbitSums => {
            assert!(group.is_permutation_group(), "orbit sums need a permutation group");
            let perms: Vec<Vec<usize>> =
                group.generators().iter().map(|g| g.inverse().unwrap().monomial_rows().unwrap().0).collect();
            let mut parent: Vec<usize> = (0..monos.len()).collect();
            fn find(p: &mut [usize], mut x: usize) -> usize {
                while p[x] != x {
                    p[x] = p[p[x]];
                    x = p[x];
                }
                x
            }
            for (i, m) in monos.iter().enumerate() {
                for perm in &perms {
                    let mut img = vec![0u32; n];
                    for (v, &e) in m.iter().enumerate() {
                        img[perm[v]] = e;
                    }
                    let j = index[img.as_slice()];
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
            let mut classes: Vec<Vec<usize>> = Vec::new();
            let mut class_of: HashMap<usize, usize> = HashMap::new();
            for i in 0..monos.len() {
                let r = find(&mut parent, i);
                let c = *class_of.entry(r).or_insert_with(|| {
                    classes.push(Vec::new());
                    classes.len() - 1
                });
                classes[c].push(i);
            }
            let basis = classes
                .into_iter()
                .map(|cls| {
                    let mut v = vec![Fe::ZERO; monos.len()];
                    for i in cls {
                        v[i] = Fe::ONE;
                    }
                    v
                })
                .collect();
            Ok((monos, basis))
        }
        FixedSpaceRoute::Kernel => {
            // Column m of the block for g holds the coefficients of g·m − m.
            let mut rows: Vec<Vec<Fe>> = Vec::new();
            for g in group.generators() {
                let mut block = vec![vec![Fe::ZERO; monos.len()]; monos.len()];
                for (c, m) in monos.iter().enumerate() {
                    let img = Poly::monomial(spec, m.clone(), Fe::ONE).act(g)?;
                    for (e, coeff) in img.terms() {
                        block[index[e.as_slice()]][c] = spec.add(block[index[e.as_slice()]][c], coeff);
                    }
                    block[c][c] = spec.sub(block[c][c], Fe::ONE);
                }
                rows.extend(block);
            }
            let basis = linalg::kernel(spec, &rows, monos.len());
            Ok((monos, basis))
        }
    }
}

/// Least `d` such that the homogeneous invariants of degree `≤ d` separate
/// all orbits, searching `d = 1, …, d_max`.
pub fn beta_sep(group: &Group, dec: &OrbitDecomp, d_max: u32, route: Option<FixedSpaceRoute>) -> Result<BetaSep> {
    let route = route.unwrap_or(if group.is_permutation_group() {
        FixedSpaceRoute::OrbitSums
    } else {
        FixedSpaceRoute::Kernel
    });
    let cap = match route {
        FixedSpaceRoute::OrbitSums => DEFAULT_ORBIT_SUM_CAP,
        FixedSpaceRoute::Kernel => DEFAULT_LINALG_CAP,
    };
    let spec = group.spec();
    let reps = dec.reps();
    let k = reps.len();
    let mut signatures: Vec<Vec<Fe>> = vec![Vec::new(); k];
    let mut dims = Vec::new();
    let mut unseparated = Vec::new();
    let mut prev_witness = None;
    let count_unseparated = |sigs: &[Vec<Fe>]| -> (usize, Option<(usize, usize)>) {
        let mut groups: HashMap<&[Fe], Vec<usize>> = HashMap::new();
        for (j, s) in sigs.iter().enumerate() {
            groups.entry(s.as_slice()).or_default().push(j);
        }
        let mut total = 0;
        let mut witness = None;
        for g in groups.values() {
            total += g.len() * (g.len() - 1) / 2;
            if g.len() > 1 {
                let w = (g[0], g[1]);
                witness = Some(witness.map_or(w, |x: (usize, usize)| x.min(w)));
            }
        }
        (total, witness)
    };
    if k <= 1 {
        return Ok(BetaSep { value: Some(0), d_max, dims, unseparated, witness_below: None });
    }
    for d in 1..=d_max {
        let (monos, basis) = fixed_space_basis(group, d, route, cap)?;
        dims.push(basis.len());
        // values of each monomial at each rep
        let mono_vals: Vec<Vec<Fe>> = monos
            .par_iter()
            .map(|m| {
                reps.iter()
                    .map(|v| {
                        m.iter().zip(v).fold(Fe::ONE, |acc, (&e, &x)| if e == 0 { acc } else { spec.mul(acc, spec.pow(x, e as u64)) })
                    })
                    .collect()
            })
            .collect();
        for b in &basis {
            let vals: Vec<Fe> = (0..k)
                .map(|j| {
                    b.iter().zip(&mono_vals).fold(Fe::ZERO, |acc, (&c, mv)| {
                        if c.is_zero() {
                            acc
                        } else {
                            spec.add(acc, spec.mul(c, mv[j]))
                        }
                    })
                })
                .collect();
            if vals.iter().any(|&x| x != vals[0]) {
                for (s, v) in signatures.iter_mut().zip(vals) {
                    s.push(v);
                }
            }
        }
        let (left, witness) = count_unseparated(&signatures);
        unseparated.push(left);
        if left == 0 {
            return Ok(BetaSep { value: Some(d), d_max, dims, unseparated, witness_below: prev_witness });
        }
        prev_witness = witness;
    }
    Ok(BetaSep { value: None, d_max, dims, unseparated, witness_below: prev_witness })
}

/// For a non-monomial `g`, a variable index `i` with `deg_{x_i}(g·f_0) > q − 1`,
/// where `f_0` is the indicator of the origin.
pub fn origin_indicator_degree_excess(g: &Mat) -> Result<Option<usize>> {
    let spec = g.spec();
    let f0 = indicator_fw(spec, &vec![Fe::ZERO; g.n()]);
    let degs = f0.act(g)?.degrees();
    Ok(degs.per_var.iter().position(|&d| d > spec.q() - 1))
}
