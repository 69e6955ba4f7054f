//! Acceptance suite: one PASS/FAIL line per criterion, with pinned limits.

mod common;

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use sepinv::graphs::{self, GraphReport};
use sepinv::multisym::{self, PointVm, TauVector};
use sepinv::sepcore::{self, BuildOptions, Method};
use sepinv::{golden, Fe, FieldSpec, Group, Mat, OrbitDecomp, Poly, SigmaSpec, DEFAULT_ORDER_CAP, DEFAULT_POINT_CAP};

use common::{all_points, gamma_oracle, graph_classes, orbit_labels, sigma_definitional};

type Check = Result<String, String>;
type Criterion = (u32, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn gf(q: u64) -> FieldSpec {
    FieldSpec::of_order(q).unwrap()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn matrix_u32(rows: &[[u32; 11]]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

fn check_graph_report(r: &GraphReport) -> Result<(), String> {
    if let Some((name, _)) = r.checks.iter().find(|(_, pass)| !**pass) {
        return Err(format!("report check {name} failed"));
    }
    Ok(())
}

fn criterion_1() -> Check {
    let r = ok(graphs::theorem_report(4))?;
    check_graph_report(&r)?;
    let k_oracle = graph_classes(4);
    ensure!(r.k == 11 && k_oracle == golden::CLASSES_N4, "k = {}, brute force {}", r.k, k_oracle);
    ensure!(r.gamma == gamma_oracle(2, 11), "gamma = {}", r.gamma);
    ensure!(r.matrix == matrix_u32(&golden::F_MATRIX), "evaluation matrix differs");
    let expected: Vec<Vec<String>> =
        golden::MINIMAL_SUBSETS.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect();
    ensure!(r.minimal_subsets == expected, "minimal subsets {:?}", r.minimal_subsets);
    ensure!(r.beta_sep.value == Some(golden::BETA_SEP_N4), "beta_sep {:?}", r.beta_sep.value);

    // S_3, S_4 and the full set separate, checked against brute-force labels.
    let spec = gf(2);
    let group = ok(graphs::edge_group(4, &spec, DEFAULT_ORDER_CAP))?;
    let labels = orbit_labels(&group);
    let named = ok(graphs::builtin_invariants(4))?;
    let by_label: HashMap<&str, &Poly> = named.iter().map(|ni| (ni.label.as_str(), &ni.poly)).collect();
    let f4_plus_f8 = ok(by_label["f4"].add(by_label["f8"]))?;
    let f5_plus_f8 = ok(by_label["f5"].add(by_label["f8"]))?;
    let s3 = vec![by_label["f1"].clone(), by_label["f2"].clone(), by_label["f3"].clone(), f4_plus_f8];
    let s4 = vec![by_label["f1"].clone(), by_label["f2"].clone(), by_label["f3"].clone(), f5_plus_f8];
    for (name, set) in [("S_3", &s3), ("S_4", &s4)] {
        ensure!(set.len() == 4, "{name} has size {}", set.len());
        ensure!(separates_labels(set, &spec, 6, &labels)?, "{name} does not separate");
    }
    Ok(format!("k = 11, gamma = 4, matrix 10x11 exact, 2 minimal subsets, beta_sep = {}", golden::BETA_SEP_N4))
}

/// Whether `invs` take distinct value vectors on distinct labels and
/// constant ones within a label.
fn separates_labels(invs: &[Poly], spec: &FieldSpec, n: usize, labels: &[usize]) -> Result<bool, String> {
    let mut seen: HashMap<usize, Vec<Fe>> = HashMap::new();
    for (code, v) in all_points(spec, n).enumerate() {
        let vals: Vec<Fe> = invs.iter().map(|f| f.evaluate(&v)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        match seen.get(&labels[code]) {
            Some(prev) if *prev != vals => return Ok(false),
            _ => {
                seen.insert(labels[code], vals);
            }
        }
    }
    let distinct: HashSet<&Vec<Fe>> = seen.values().collect();
    Ok(distinct.len() == seen.len())
}

fn criterion_2() -> Check {
    let r = ok(graphs::theorem_report(5))?;
    check_graph_report(&r)?;
    let k_oracle = graph_classes(5);
    ensure!(r.k == 34 && k_oracle == golden::CLASSES_N5, "k = {}, brute force {}", r.k, k_oracle);
    ensure!(r.gamma == 6 && gamma_oracle(2, 34) == 6, "gamma = {}", r.gamma);
    let spec = gf(2);
    let group = ok(graphs::edge_group(5, &spec, DEFAULT_ORDER_CAP))?;
    let labels = orbit_labels(&group);
    let g: Vec<Poly> = ok(graphs::builtin_invariants(5))?.into_iter().map(|ni| ni.poly).collect();
    ensure!(g.len() == 6, "{} invariants", g.len());
    ensure!(separates_labels(&g, &spec, 10, &labels)?, "g_1..g_6 do not separate");
    let beta = r.beta_sep.value;
    ensure!(beta.is_some_and(|b| b <= golden::BETA_SEP_N5_UPPER), "beta_sep {:?}", beta);
    Ok(format!("k = 34, gamma = 6, g_1..g_6 separate, beta_sep = {}", beta.unwrap()))
}

struct ZooEntry {
    name: String,
    group: Group,
}

fn zoo() -> Result<Vec<ZooEntry>, String> {
    let mut out = Vec::new();
    for q in [2, 3] {
        let spec = gf(q);
        out.push(ZooEntry { name: format!("trivial:2/F{q}"), group: Group::trivial(&spec, 2) });
        for n in 1..=5 {
            out.push(ZooEntry { name: format!("sym:{n}/F{q}"), group: ok(Group::symmetric(&spec, n, DEFAULT_ORDER_CAP))? });
        }
    }
    let f2 = gf(2);
    out.push(ZooEntry { name: "edge-sym:4/F2".into(), group: ok(graphs::edge_group(4, &f2, DEFAULT_ORDER_CAP))? });
    let f4 = gf(4);
    let omega = ok(f4.element(2))?;
    let scalar = Mat::diag(&f4, &[omega, omega]);
    out.push(ZooEntry { name: "<diag(w,w)>/F4".into(), group: ok(Group::closure(&f4, 2, vec![scalar], DEFAULT_ORDER_CAP))? });
    let rot = ok(Mat::from_index_rows(&f2, &[vec![0, 1], vec![1, 1]]))?;
    out.push(ZooEntry { name: "<[[0,1],[1,1]]>/F2".into(), group: ok(Group::closure(&f2, 2, vec![rot], DEFAULT_ORDER_CAP))? });
    Ok(out)
}

fn criterion_3() -> Check {
    let mut runs = 0;
    for entry in zoo()? {
        let group = &entry.group;
        let spec = group.spec().clone();
        let (n, q) = (group.n(), spec.q() as u64);
        let dec = ok(OrbitDecomp::new(group, DEFAULT_POINT_CAP))?;
        let labels = orbit_labels(group);
        let k = labels.iter().max().unwrap() + 1;
        ensure!(dec.k() == k, "{}: k = {} vs brute force {k}", entry.name, dec.k());
        let gamma = gamma_oracle(q, k as u64) as usize;
        let mut methods = vec![Method::Norm];
        if group.is_monomial() {
            methods.push(Method::Monomial);
        }
        if !(group.order() as u64).is_multiple_of(spec.p() as u64) {
            methods.push(Method::Reynolds);
        }
        for method in methods {
            let cert = ok(sepcore::build_separating(group, &dec, method, BuildOptions::default()))?;
            let tag = format!("{} {method:?}", entry.name);
            ensure!(cert.size == gamma && cert.invariants.len() == gamma, "{tag}: size {} vs gamma {gamma}", cert.size);
            ensure!(cert.separating, "{tag}: certificate not separating");
            let bound = match method {
                Method::Norm => group.order() as u64 * n as u64 * (q - 1),
                _ => n as u64 * (q - 1),
            };
            for inv in &cert.invariants {
                let d = inv.degree().unwrap_or(0) as u64;
                ensure!(d <= bound, "{tag}: degree {d} above {bound}");
            }
            // Pointwise: constant on brute-force orbits, distinct across them.
            let mut by_label: HashMap<usize, Vec<Fe>> = HashMap::new();
            for (code, v) in all_points(&spec, n).enumerate() {
                let vals: Vec<Fe> = cert.invariants.iter().map(|f| f.evaluate(&v)).collect();
                if let Some(prev) = by_label.insert(labels[code], vals.clone()) {
                    ensure!(prev == vals, "{tag}: not constant on an orbit");
                }
            }
            let distinct: HashSet<&Vec<Fe>> = by_label.values().collect();
            ensure!(distinct.len() == k, "{tag}: separates only {} of {k} orbits", distinct.len());
            let polys: Option<Vec<Poly>> = cert.invariants.iter().map(|i| i.as_poly().cloned()).collect();
            if let Some(polys) = polys {
                let again = ok(sepcore::check_separating(&polys, group, &dec))?;
                ensure!(again.separating, "{tag}: check_separating failed");
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} constructions over {} groups, all of size gamma", zoo()?.len()))
}

/// `∏ (1 − x_i^{q−1})`, built directly from the ring operations.
fn origin_indicator(spec: &FieldSpec, n: usize) -> Poly {
    (0..n).fold(Poly::one(n, spec), |acc, i| {
        let term = Poly::one(n, spec).sub(&Poly::var(n, spec, i).pow(spec.q() - 1)).unwrap();
        acc.mul(&term).unwrap()
    })
}

fn random_non_monomial(rng: &mut ChaCha8Rng, spec: &FieldSpec) -> Mat {
    loop {
        let n = rng.gen_range(2..=3);
        let entries: Vec<Fe> = (0..n * n).map(|_| spec.element(rng.gen_range(0..spec.q() as u64)).unwrap()).collect();
        if let Ok(m) = Mat::new(spec, n, entries) {
            if !m.is_monomial() {
                return m;
            }
        }
    }
}

fn criterion_4() -> Check {
    let mut checks = 0;
    for entry in zoo()?.into_iter().filter(|e| e.group.is_monomial()) {
        let group = &entry.group;
        let spec = group.spec().clone();
        let dec = ok(OrbitDecomp::new(group, DEFAULT_POINT_CAP))?;
        let labels = orbit_labels(group);
        for j in 0..dec.k() {
            let f = sepcore::orbit_indicator(&dec, j);
            let label = labels[sepinv::action::encode(&spec, &dec.rep(j)) as usize];
            for (code, v) in all_points(&spec, group.n()).enumerate() {
                let want = if labels[code] == label { Fe::ONE } else { Fe::ZERO };
                ensure!(ok(f.evaluate(&v))? == want, "{}: f_{j} is not the orbit indicator", entry.name);
            }
            for g in group.generators() {
                let moved = ok(f.act(g))?.normal_form();
                ensure!(moved == f.normal_form(), "{}: generator moves f_{j}", entry.name);
                checks += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9a_0001);
    let mut excess = 0;
    for q in [2, 3] {
        let spec = gf(q);
        for _ in 0..100 {
            let g = random_non_monomial(&mut rng, &spec);
            let direct = ok(origin_indicator(&spec, g.n()).act(&g))?;
            let over = direct.degrees().per_var.iter().any(|&d| d > spec.q() - 1);
            let lib = ok(sepcore::origin_indicator_degree_excess(&g))?;
            ensure!(over && lib.is_some(), "no degree excess for {g}");
            excess += 1;
        }
    }
    Ok(format!("{checks} generator/orbit invariance checks, {excess} non-monomial matrices exceed q - 1"))
}

fn slot_bits(pt: &PointVm) -> Vec<u64> {
    pt.slots().iter().map(|s| s.iter().enumerate().fold(0u64, |b, (i, x)| b | (x.index() as u64) << i)).collect()
}

/// Independent check of S_(n,m) on the e_tau: separation via definitional
/// sigma values, and for each member a pair it alone separates.
fn snm_oracle(n: usize, m: usize) -> Result<(), String> {
    let taus = ok(multisym::compositions(n, 1 << m))?;
    ensure!(taus.len() as u64 == binomial((n + (1 << m) - 1) as u64, ((1 << m) - 1) as u64), "composition count");
    let mut columns_seen = HashSet::new();
    let set = multisym::build_s_nm(n, m);
    let mut table = Vec::new();
    for tau in &taus {
        let pt = ok(multisym::e_tau(&TauVector(tau.clone()), m, n))?;
        let bits = slot_bits(&pt);
        let mut cols: Vec<u64> = (0..n).map(|i| bits.iter().fold(0, |c, b| c << 1 | (b >> i & 1))).collect();
        cols.sort_unstable();
        ensure!(columns_seen.insert(cols), "two e_tau in one orbit");
        table.push(set.iter().map(|s| sigma_definitional(s.t, &s.alpha, &bits, n)).collect::<Vec<u32>>());
    }
    let distinct: HashSet<&Vec<u32>> = table.iter().collect();
    ensure!(distinct.len() == taus.len(), "S_({n},{m}) does not separate");
    for (drop, member) in set.iter().enumerate() {
        let reduced: HashSet<Vec<u32>> =
            table.iter().map(|row| row.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect()).collect();
        ensure!(reduced.len() < taus.len(), "S_({n},{m}) minus {member} still separates");
    }
    Ok(())
}

fn criterion_5() -> Check {
    ensure!(ok(multisym::digit_lemma_check(64))?, "digit lemma fails");
    for i in 0..=64u64 {
        for r in 0..7 {
            let pt = multisym::e_i(i as usize, 64);
            let s = ok(multisym::sigma_eval(&SigmaSpec::new(1 << r, vec![1]), &pt))?.index() as u64;
            ensure!(s == (i >> r & 1), "s_(2^{r})(e_{i})");
        }
    }
    let pairs: Vec<(usize, usize)> = [2usize, 3].iter().flat_map(|&m| (1..=10).map(move |n| (n, m))).collect();
    let lemma: Vec<Result<bool, String>> =
        pairs.par_iter().map(|&(n, m)| ok(multisym::key_lemma_exhaustive(n, m)).map(|r| r.equivalent)).collect();
    for ((n, m), r) in pairs.iter().zip(lemma) {
        ensure!(r?, "key lemma classes disagree at n = {n}, m = {m}");
    }
    for (n, m) in [(2, 2), (3, 2), (4, 2), (5, 2), (2, 3), (3, 3)] {
        let (total, bad) = ok(multisym::key_lemma_pairwise(n, m))?;
        ensure!(bad == 0 && total > 0, "pairwise key lemma at n = {n}, m = {m}");
    }
    let grid: Vec<(usize, usize)> = (1..=3).flat_map(|m| (2..=10).map(move |n| (n, m))).collect();
    let reports: Vec<Result<multisym::SnmReport, String>> =
        grid.par_iter().map(|&(n, m)| ok(multisym::verify_s_nm(n, m))).collect();
    for r in reports {
        let r = r?;
        ensure!(r.separating && r.minimal, "S_({},{}) separating {} minimal {}", r.n, r.m, r.separating, r.minimal);
        ensure!(r.witnesses.iter().all(|w| w.valid), "invalid witness for S_({},{})", r.n, r.m);
    }
    for (n, m) in [(2, 1), (5, 1), (8, 1), (2, 2), (4, 2), (6, 2), (3, 3), (4, 3)] {
        snm_oracle(n, m)?;
    }
    ensure!(multisym::claim1_check(64), "claim1_check(64) is false");
    Ok("digit lemma n <= 64, key lemma m in {2,3} n <= 10, S_(n,m) for m <= 3, 2 <= n <= 10, claim1(64)".into())
}

fn criterion_6() -> Check {
    let cases: Vec<(usize, usize)> = (2..=8).map(|n| (n, 1)).chain((2..=4).map(|n| (n, 2))).collect();
    let reports: Vec<Result<multisym::CorollaryReport, String>> =
        cases.par_iter().map(|&(n, m)| ok(multisym::corollary_report(n, m))).collect();
    for r in reports {
        let r = r?;
        let expected = 1u32 << (usize::BITS - 1 - r.n.leading_zeros());
        let brute = r.beta_brute_force.as_ref().and_then(|b| b.value);
        ensure!(brute == Some(expected), "beta_sep for n = {}, m = {}: {brute:?} vs {expected}", r.n, r.m);
        ensure!(r.beta_formula == expected as u64, "formula at n = {}", r.n);
    }
    for n in 2..=64usize {
        let r = ok(multisym::corollary_report(n, 1))?;
        let expected = usize::BITS - n.leading_zeros();
        ensure!(r.sigma_n == expected, "sigma({n}) = {} vs {expected}", r.sigma_n);
    }
    Ok("beta_sep = 2^floor(log2 n) for 10 brute-force cases, sigma(n) for n <= 64".into())
}

/// Members of `{s_t : t ∈ members}` over GF(3) whose removal keeps the set
/// separating on the sorted representatives, by direct mod-3 arithmetic.
fn f3_redundant_members(n: usize, members: &[usize]) -> Vec<usize> {
    let esym = |vals: &[u32], t: usize| {
        let mut e = vec![0u32; t + 1];
        e[0] = 1;
        for &y in vals {
            for k in (1..=t).rev() {
                e[k] = (e[k] + e[k - 1] * y) % 3;
            }
        }
        e[t]
    };
    let mut table = Vec::new();
    for ones in 0..=n {
        for twos in 0..=n - ones {
            let mut v = vec![1u32; ones];
            v.extend(std::iter::repeat_n(2, twos));
            table.push(members.iter().map(|&t| esym(&v, t)).collect::<Vec<u32>>());
        }
    }
    (0..members.len())
        .filter(|&drop| {
            let rest: HashSet<Vec<u32>> =
                table.iter().map(|r| r.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| *x).collect()).collect();
            rest.len() == table.len()
        })
        .map(|i| members[i])
        .collect()
}

fn criterion_7() -> Check {
    let mut not_minimal = Vec::new();
    let mut redundant = HashSet::new();
    for n in 2..=14usize {
        let r = ok(multisym::f3_remark_check(n))?;
        let orbits = binomial(n as u64 + 2, 2);
        let mut members = vec![1, 2];
        members.extend((1..=n / 3).map(|r| 3 * r));
        ensure!(r.members == members, "members at n = {n}");
        ensure!(r.orbits as u64 == orbits, "n = {n}: {} orbits vs {orbits}", r.orbits);
        ensure!(r.separating, "n = {n}: not separating");
        let tight = members.len() as u32 == gamma_oracle(3, orbits);
        ensure!(r.size_equals_gamma == tight && tight == (n <= 8), "n = {n}: size {} gamma {}", members.len(), r.gamma);
        let extra = f3_redundant_members(n, &members);
        ensure!(r.minimal == extra.is_empty(), "n = {n}: minimality disagrees with the mod-3 oracle");
        if !r.minimal {
            not_minimal.push(n);
            redundant.extend(extra);
        }
    }
    let r = ok(multisym::f4_remark_check())?;
    ensure!(r.orbits as u64 == binomial(6, 3), "F_4 orbit count {}", r.orbits);
    ensure!(r.gamma == 3 && gamma_oracle(4, 20) == 3, "F_4 gamma {}", r.gamma);
    ensure!(r.separating, "F_4: s_1, s_2, s_3 do not separate");
    if !not_minimal.is_empty() {
        let mut redundant: Vec<usize> = redundant.into_iter().collect();
        redundant.sort_unstable();
        return Err(format!("M_(1,n) not minimal for n in {not_minimal:?}, redundant s_t for t in {redundant:?}"));
    }
    Ok("M_(1,n) separating and minimal for 2 <= n <= 14, tight iff n <= 8 (k = C(n+2,2)); F_4 gamma = 3".into())
}

fn criterion_8() -> Check {
    for q in common::builtin_orders(27) {
        let f = gf(q);
        let el: Vec<Fe> = f.elements().collect();
        for &a in &el {
            ensure!(f.add(a, f.neg(a)) == f.zero() && f.mul(a, f.one()) == a, "identities in GF({q})");
            if !a.is_zero() {
                ensure!(f.mul(a, ok(f.inv(a))?) == f.one(), "inverse in GF({q})");
            }
            for &b in &el {
                ensure!(f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a), "commutativity in GF({q})");
                for &c in &el {
                    ensure!(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "associativity in GF({q})");
                    ensure!(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)), "associativity in GF({q})");
                    ensure!(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)), "distributivity in GF({q})");
                }
            }
        }
    }
    let orders = common::builtin_orders(1 << 16);
    let bad: Vec<u64> = orders
        .par_iter()
        .filter(|&&q| {
            let f = gf(q);
            f.elements().skip(1).fold(f.one(), |acc, x| f.mul(acc, x)) != f.neg(f.one())
        })
        .copied()
        .collect();
    ensure!(bad.is_empty(), "unit product is not -1 for q in {bad:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(0x5e9a_0008);
    for q in [2u64, 3, 4, 5, 9] {
        let spec = gf(q);
        let rand_poly = |rng: &mut ChaCha8Rng, n: usize, max_exp: u32| {
            let terms: Vec<(Vec<u32>, Fe)> = (0..rng.gen_range(0..6))
                .map(|_| {
                    let e = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
                    (e, spec.element(rng.gen_range(0..q)).unwrap())
                })
                .collect();
            Poly::from_terms(n, &spec, terms)
        };
        let rand_mat = |rng: &mut ChaCha8Rng| loop {
            let entries = (0..4).map(|_| spec.element(rng.gen_range(0..q)).unwrap()).collect();
            if let Ok(m) = Mat::new(&spec, 2, entries) {
                return m;
            }
        };
        let points: Vec<Vec<Fe>> = all_points(&spec, 2).collect();
        for _ in 0..60 {
            let p = rand_poly(&mut rng, 2, 3 * spec.q());
            let nf = p.normal_form();
            ensure!(nf.within_var_degree(spec.q() - 1) && nf.normal_form() == nf, "normal form in GF({q})");
            for v in &points {
                ensure!(ok(p.evaluate(v))? == ok(nf.evaluate(v))?, "normal form changes values in GF({q})");
            }
            let f = rand_poly(&mut rng, 2, 4);
            let (g, h) = (rand_mat(&mut rng), rand_mat(&mut rng));
            let lhs = ok(ok(f.act(&h))?.act(&g))?.normal_form();
            let rhs = ok(f.act(&ok(g.mul(&h))?))?.normal_form();
            ensure!(lhs == rhs, "act composition fails in GF({q})");
        }
    }
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(1..=4);
        let slots: Vec<u64> = (0..m).map(|_| rng.gen_range(0..1u64 << n)).collect();
        let alpha: Vec<u32> = (0..m).map(|_| rng.gen_range(0..4)).collect();
        let t = rng.gen_range(1..=n);
        let fast = ok(multisym::sigma_eval(&SigmaSpec::new(t, alpha.clone()), &PointVm::from_bits(n, &slots)))?;
        ensure!(fast.index() == sigma_definitional(t, &alpha, &slots, n), "sigma fast path at t = {t}, alpha = {alpha:?}");
    }
    Ok(format!("field axioms q <= 27, unit product over {} orders, normal form, act law, 10^4 sigma instances", orders.len()))
}

/// Failures that reproduce a counterexample to the stated criterion. They
/// still print FAIL; the suite exits successfully only if the failure
/// message matches exactly.
const DOCUMENTED_FAILURES: &[(u32, &str)] =
    &[(7, "M_(1,n) not minimal for n in [12, 13, 14], redundant s_t for t in [12]")];

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, criterion_1, Duration::from_secs(5)),
        (2, criterion_2, Duration::from_secs(60)),
        (3, criterion_3, Duration::from_secs(120)),
        (4, criterion_4, Duration::from_secs(30)),
        (5, criterion_5, Duration::from_secs(600)),
        (6, criterion_6, Duration::from_secs(600)),
        (7, criterion_7, Duration::from_secs(60)),
        (8, criterion_8, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    let mut documented = 0;
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS ({:.2}s, limit {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs()),
            Ok(detail) => format!("FAIL ({:.2}s exceeds {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs()),
            Err(why) if DOCUMENTED_FAILURES.contains(&(id, why.as_str())) && elapsed <= limit => {
                documented += 1;
                format!("FAIL ({:.2}s, documented): {why}", elapsed.as_secs_f64())
            }
            Err(why) => format!("FAIL ({:.2}s): {why}", elapsed.as_secs_f64()),
        };
        if verdict.starts_with("FAIL") && !verdict.contains("documented") {
            failed += 1;
        }
        println!("criterion {id}: {verdict}");
    }
    if documented > 0 {
        println!("{documented} criterion fails as documented");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
