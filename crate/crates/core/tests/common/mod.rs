//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use sepinv::action::decode;
use sepinv::{Fe, FieldSpec, Group};

/// Smallest `g` with `q^g >= k`, by repeated multiplication.
pub fn gamma_oracle(q: u64, k: u64) -> u32 {
    let mut g = 0;
    let mut reach = 1u64;
    while reach < k {
        reach = reach.saturating_mul(q);
        g += 1;
    }
    g
}

/// Orbit label of every point of `F_q^n`, from the full element list.
pub fn orbit_labels(group: &Group) -> Vec<usize> {
    let spec = group.spec();
    let n = group.n();
    let total = (spec.q() as u64).pow(n as u32);
    let mut label = vec![usize::MAX; total as usize];
    let mut next = 0;
    for code in 0..total {
        if label[code as usize] != usize::MAX {
            continue;
        }
        let v = decode(spec, n, code);
        for g in group.elements() {
            let w = g.act_vec(&v).unwrap();
            let c = w.iter().fold(0u64, |acc, x| acc * spec.q() as u64 + x.index() as u64);
            label[c as usize] = next;
        }
        next += 1;
    }
    label
}

pub fn all_points(spec: &FieldSpec, n: usize) -> impl Iterator<Item = Vec<Fe>> + '_ {
    (0..(spec.q() as u64).pow(n as u32)).map(move |c| decode(spec, n, c))
}

/// Number of isomorphism classes of simple graphs on `n` vertices, via the
/// least adjacency mask over all relabellings.
pub fn graph_classes(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).fold(0u32, |acc, (_, &(i, j))| {
                    let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                    acc | 1 << pairs.iter().position(|&e| e == (a, b)).unwrap()
                })
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.len()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `σ_t(α)` over GF(2) as the sum over `t`-subsets of products of the
/// monomials `x_i^α = ∏_j w_{j,i}^{α_j}`.
pub fn sigma_definitional(t: usize, alpha: &[u32], slots: &[u64], n: usize) -> u32 {
    let mono: Vec<u32> = (0..n)
        .map(|i| {
            alpha.iter().zip(slots).fold(1u32, |acc, (&a, &w)| {
                let bit = (w >> i & 1) as u32;
                acc * if a == 0 { 1 } else { bit }
            })
        })
        .collect();
    let mut sum = 0u32;
    for subset in 0u32..(1 << n) {
        if subset.count_ones() as usize == t {
            let prod = (0..n).filter(|i| subset >> i & 1 == 1).fold(1u32, |acc, i| acc * mono[i]);
            sum ^= prod;
        }
    }
    sum
}

/// All prime powers `q <= limit` that have a built-in field.
pub fn builtin_orders(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| FieldSpec::of_order(q).is_ok()).collect()
}
