//! The symmetric group acting on the edges of the complete graph `K_n`.
//!
//! Points of `F_2^{C(n,2)}` are simple graphs on `n` labelled vertices and
//! orbits are isomorphism classes. Invariants are built as orbit sums `o(m)`
//! of square-free monomials in the edge variables `x_ij`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::action::{Group, Mat, OrbitDecomp, DEFAULT_POINT_CAP};
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::golden;
use crate::mvpoly::Poly;
use crate::sepcore::{self, BetaSep, Invariant, Method};

pub type Edge = (usize, usize);

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Flat 0-based position of edge `{i, j}` (1-based vertices, `i < j`) in
/// lexicographic order.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::BadEdge((i, j)));
    }
    Ok((i - 1) * n - (i - 1) * i / 2 + (j - i - 1))
}

/// All edges in lexicographic order.
pub fn edges(n: usize) -> Vec<Edge> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

fn normalize(e: Edge) -> Edge {
    (e.0.min(e.1), e.0.max(e.1))
}

/// Image of each edge position under the vertex permutation `pi` (0-based).
fn edge_permutation(pi: &[usize]) -> Vec<usize> {
    let n = pi.len();
    edges(n)
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = normalize((pi[i - 1] + 1, pi[j - 1] + 1));
            edge_index(a, b, n).expect("image of an edge is an edge")
        })
        .collect()
}

/// The edge action of `S_n`, generated by the images of `(1 2)` and `(1 2 … n)`.
pub fn edge_group(n: usize, spec: &FieldSpec, cap: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::UnsupportedN(n));
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let gens = [swap, cycle].iter().map(|pi| Mat::permutation(spec, &edge_permutation(pi))).collect();
    Group::closure(spec, edge_count(n), gens, cap)
}

fn vertex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
        heap(k - 1, cur, out);
    }
    heap(n, &mut cur, &mut out);
    out
}

fn edge_set(edges: &[Edge], n: usize) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for &e in edges {
        let (i, j) = normalize(e);
        let idx = edge_index(i, j, n).map_err(|_| Error::BadEdge(e))?;
        if !set.insert(idx) {
            return Err(Error::NotSquareFree((i, j)));
        }
    }
    Ok(set)
}

/// `o(m)`: the sum, each term once, of the distinct images of the square-free
/// monomial `∏_{e∈edges} x_e` under vertex permutations.
pub fn orbit_sum(edges: &[Edge], n: usize, spec: &FieldSpec) -> Result<Poly> {
    let set = edge_set(edges, n)?;
    let nvars = edge_count(n);
    let images: BTreeSet<Vec<usize>> = vertex_permutations(n)
        .iter()
        .map(|pi| {
            let perm = edge_permutation(pi);
            let mut img: Vec<usize> = set.iter().map(|&e| perm[e]).collect();
            img.sort_unstable();
            img
        })
        .collect();
    Ok(Poly::from_terms(
        nvars,
        spec,
        images.into_iter().map(|img| {
            let mut exps = vec![0u32; nvars];
            for e in img {
                exps[e] = 1;
            }
            (exps, Fe::ONE)
        }),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedInvariant {
    pub label: String,
    pub poly: Poly,
}

/// `f_1, …, f_10` for `n = 4`, or `g_1, …, g_6` for `n = 5`, over GF(2).
pub fn builtin_invariants(n: usize) -> Result<Vec<NamedInvariant>> {
    let (prefix, table): (&str, &[&[&[Edge]]]) = match n {
        4 => ("f", &golden::F_EDGES),
        5 => ("g", &golden::G_EDGES),
        _ => return Err(Error::UnsupportedN(n)),
    };
    let spec = FieldSpec::of_order(2)?;
    table
        .iter()
        .enumerate()
        .map(|(i, sums)| {
            let mut poly = Poly::zero(edge_count(n), &spec);
            for edges in sums.iter() {
                poly.add_assign(&orbit_sum(edges, n, &spec)?)?;
            }
            Ok(NamedInvariant { label: format!("{prefix}{}", i + 1), poly })
        })
        .collect()
}

/// The indicator vector of a graph over GF(2).
pub fn graph_point(edges: &[Edge], n: usize) -> Result<Vec<Fe>> {
    let set = edge_set(edges, n)?;
    let mut v = vec![Fe::ZERO; edge_count(n)];
    for e in set {
        v[e] = Fe::ONE;
    }
    Ok(v)
}

/// Parses lines `i j` (1-based vertices). Blank lines and lines starting
/// with `#` are skipped.
pub fn parse_edge_list(text: &str, n: usize) -> Result<Vec<Edge>> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::MalformedEdgeList { line: ln + 1, msg: msg.to_string() };
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| bad("expected two vertex numbers")))
            .collect::<Result<_>>()?;
        let [a, b] = nums[..] else {
            return Err(bad("expected two vertex numbers"));
        };
        let e = normalize((a, b));
        if a == b || a == 0 || e.1 > n {
            return Err(bad(&format!("{a} {b} is not an edge on {n} vertices")));
        }
        if !seen.insert(e) {
            return Err(bad("repeated edge"));
        }
        out.push(e);
    }
    Ok(out)
}

/// Evaluates a minimal separating set: `{f_1, f_2, f_3, f_4 + f_8}` for four
/// vertices and `{g_1, …, g_6}` for five. Two graphs are isomorphic iff their
/// fingerprints agree.
#[derive(Clone, Debug)]
pub struct Fingerprinter {
    n: usize,
    invariants: Vec<Poly>,
}

impl Fingerprinter {
    pub fn new(n: usize) -> Result<Fingerprinter> {
        let named = builtin_invariants(n)?;
        let invariants = match n {
            4 => {
                let f = |i: usize| named[i - 1].poly.clone();
                vec![f(1), f(2), f(3), f(4).add(&f(8))?]
            }
            _ => named.into_iter().map(|ni| ni.poly).collect(),
        };
        Ok(Fingerprinter { n, invariants })
    }

    pub fn invariants(&self) -> &[Poly] {
        &self.invariants
    }

    pub fn fingerprint(&self, edges: &[Edge]) -> Result<Vec<u8>> {
        let v = graph_point(edges, self.n)?;
        Ok(self.fingerprint_point(&v))
    }

    pub fn fingerprint_point(&self, v: &[Fe]) -> Vec<u8> {
        self.invariants.iter().map(|p| p.eval_unchecked(v).index() as u8).collect()
    }
}

pub fn fingerprint(edges: &[Edge], n: usize) -> Result<Vec<u8>> {
    Fingerprinter::new(n)?.fingerprint(edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub n: usize,
    pub k: usize,
    pub gamma: u32,
    /// Rows are invariants; for `n = 4` columns follow `p_1, …, p_11`,
    /// otherwise the canonical orbit representatives.
    pub matrix: Vec<Vec<u32>>,
    pub row_labels: Vec<String>,
    pub minimal_subsets: Vec<Vec<String>>,
    pub beta_sep: BetaSep,
    pub checks: BTreeMap<String, bool>,
}

impl GraphReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    /// Fails with the name of the first check that did not pass.
    pub fn verify(&self) -> Result<()> {
        match self.checks.iter().find(|(_, &ok)| !ok) {
            Some((name, _)) => Err(Error::GoldenMismatch(name.clone())),
            None => Ok(()),
        }
    }
}

fn rows_of(cert: &sepcore::SepCertificate, order: &[usize]) -> Vec<Vec<u32>> {
    cert.eval_matrix.iter().map(|r| order.iter().map(|&j| r[j].index()).collect()).collect()
}

/// Recomputes every claim about four- or five-vertex graphs.
pub fn theorem_report(n: usize) -> Result<GraphReport> {
    match n {
        4 => report4(),
        5 => report5(),
        _ => Err(Error::UnsupportedN(n)),
    }
}

fn report4() -> Result<GraphReport> {
    let spec = FieldSpec::of_order(2)?;
    let group = edge_group(4, &spec, crate::action::DEFAULT_ORDER_CAP)?;
    let dec = OrbitDecomp::new(&group, DEFAULT_POINT_CAP)?;
    let named = builtin_invariants(4)?;
    let polys: Vec<Poly> = named.iter().map(|ni| ni.poly.clone()).collect();
    let mut checks = BTreeMap::new();

    let p_points: Vec<Vec<Fe>> = golden::P_POINTS.iter().map(|p| p.iter().map(|&x| Fe(x)).collect()).collect();
    let p_orbits: Vec<usize> = p_points.iter().map(|p| dec.orbit_of(p)).collect::<Result<_>>()?;
    let distinct: BTreeSet<usize> = p_orbits.iter().copied().collect();
    checks.insert("class_count".into(), dec.k() == golden::CLASSES_N4);
    checks.insert("points_cover_orbits".into(), distinct.len() == dec.k() && p_orbits.len() == dec.k());

    let cert = sepcore::check_separating(&polys, &group, &dec)?;
    let matrix = rows_of(&cert, &p_orbits);
    let golden_matrix: Vec<Vec<u32>> = golden::F_MATRIX.iter().map(|r| r.to_vec()).collect();
    checks.insert("matrix".into(), matrix == golden_matrix);
    checks.insert("generators_separate".into(), cert.separating);

    let pick = |idx: &[usize]| -> Vec<Vec<u32>> { idx.iter().map(|&i| matrix[i - 1].clone()).collect() };
    let s1: Vec<Vec<u32>> = golden::S1_MATRIX.iter().map(|r| r.to_vec()).collect();
    let s2: Vec<Vec<u32>> = golden::S2_MATRIX.iter().map(|r| r.to_vec()).collect();
    checks.insert("s1_submatrix".into(), pick(&[1, 2, 3, 4, 8]) == s1);
    checks.insert("s2_submatrix".into(), pick(&[1, 2, 3, 5, 8]) == s2);

    let minimal = sepcore::minimal_covers(&cert.pair_masks, polys.len())?;
    let minimal_labels: Vec<Vec<String>> =
        minimal.iter().map(|s| s.iter().map(|&i| named[i].label.clone()).collect()).collect();
    let golden_minimal: BTreeSet<Vec<String>> =
        golden::MINIMAL_SUBSETS.iter().map(|s| s.iter().map(|x| x.to_string()).collect()).collect();
    checks.insert("minimal_subsets".into(), minimal_labels.iter().cloned().collect::<BTreeSet<_>>() == golden_minimal);

    let gamma = sepcore::gamma(2, dec.k() as u64);
    for (name, extra) in [("s3", 4usize), ("s4", 5)] {
        let set = vec![polys[0].clone(), polys[1].clone(), polys[2].clone(), polys[extra - 1].add(&polys[7])?];
        let c = sepcore::check_separating(&set, &group, &dec)?;
        checks.insert(format!("{name}_separates"), c.separating);
        checks.insert(format!("{name}_size_is_gamma"), set.len() == gamma as usize);
    }

    let beta = sepcore::beta_sep(&group, &dec, golden::BETA_SEP_N4 + 1, None)?;
    checks.insert("beta_sep".into(), beta.value == Some(golden::BETA_SEP_N4));
    checks.insert("degree_below_fails".into(), beta.witness_below.is_some());

    Ok(GraphReport {
        n: 4,
        k: dec.k(),
        gamma,
        matrix,
        row_labels: named.iter().map(|ni| ni.label.clone()).collect(),
        minimal_subsets: minimal_labels,
        beta_sep: beta,
        checks,
    })
}

fn report5() -> Result<GraphReport> {
    let spec = FieldSpec::of_order(2)?;
    let group = edge_group(5, &spec, crate::action::DEFAULT_ORDER_CAP)?;
    let dec = OrbitDecomp::new(&group, DEFAULT_POINT_CAP)?;
    let named = builtin_invariants(5)?;
    let polys: Vec<Poly> = named.iter().map(|ni| ni.poly.clone()).collect();
    let mut checks = BTreeMap::new();
    checks.insert("class_count".into(), dec.k() == golden::CLASSES_N5);

    let cert = sepcore::certify(Method::Custom, polys.iter().cloned().map(Invariant::Poly).collect(), &group, &dec)?;
    let order: Vec<usize> = (0..dec.k()).collect();
    let matrix = rows_of(&cert, &order);
    let gamma = sepcore::gamma(2, dec.k() as u64);
    checks.insert("g_separates".into(), cert.separating);
    checks.insert("size_is_gamma".into(), polys.len() == gamma as usize);
    checks.insert("degree_at_most_6".into(), cert.degree_bound_observed.is_some_and(|d| d <= golden::BETA_SEP_N5_UPPER));

    let minimal = sepcore::minimal_covers(&cert.pair_masks, polys.len())?;
    let minimal_labels: Vec<Vec<String>> =
        minimal.iter().map(|s| s.iter().map(|&i| named[i].label.clone()).collect()).collect();

    let beta = sepcore::beta_sep(&group, &dec, golden::BETA_SEP_N5_UPPER, None)?;
    checks.insert("beta_sep_at_most_6".into(), beta.value.is_some_and(|b| b <= golden::BETA_SEP_N5_UPPER));

    Ok(GraphReport {
        n: 5,
        k: dec.k(),
        gamma,
        matrix,
        row_labels: named.iter().map(|ni| ni.label.clone()).collect(),
        minimal_subsets: minimal_labels,
        beta_sep: beta,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::DEFAULT_ORDER_CAP;

    fn f2() -> FieldSpec {
        FieldSpec::of_order(2).unwrap()
    }

    #[test]
    fn edge_indexing() {
        let want = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        assert_eq!(edges(4), want);
        for (pos, &(i, j)) in want.iter().enumerate() {
            assert_eq!(edge_index(i, j, 4).unwrap(), pos);
        }
        for n in 2..8 {
            for (pos, (i, j)) in edges(n).into_iter().enumerate() {
                assert_eq!(edge_index(i, j, n).unwrap(), pos);
            }
        }
        assert!(edge_index(2, 2, 4).is_err());
    }

    #[test]
    fn edge_group_orders() {
        let s = f2();
        let g4 = edge_group(4, &s, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!((g4.order(), g4.n()), (24, 6));
        let g5 = edge_group(5, &s, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!((g5.order(), g5.n()), (120, 10));
        let g2 = edge_group(2, &s, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!((g2.order(), g2.n()), (1, 1));
        assert!(g4.is_permutation_group());
    }

    #[test]
    fn orbit_sum_examples() {
        let s = f2();
        let o = orbit_sum(&[(1, 2)], 4, &s).unwrap();
        assert_eq!(o.len(), 6);
        assert_eq!(o.degrees().total, Some(1));
        let all = orbit_sum(&edges(4), 4, &s).unwrap();
        assert_eq!(all.to_string(), "x1*x2*x3*x4*x5*x6");
        assert_eq!(orbit_sum(&[], 4, &s).unwrap(), Poly::one(6, &s));
        assert_eq!(orbit_sum(&[(1, 2), (2, 1)], 4, &s), Err(Error::NotSquareFree((1, 2))));
        // stars and triangles
        assert_eq!(orbit_sum(&[(1, 2), (1, 3), (1, 4)], 4, &s).unwrap().len(), 4);
        assert_eq!(orbit_sum(&[(1, 2), (1, 3), (2, 3)], 4, &s).unwrap().len(), 4);
        assert_eq!(orbit_sum(&[(1, 2), (3, 4)], 4, &s).unwrap().len(), 3);
    }

    #[test]
    fn builtin_lists() {
        let f = builtin_invariants(4).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(f[2].poly, orbit_sum(&[(1, 2), (3, 4)], 4, &f2()).unwrap());
        let g = builtin_invariants(5).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g[0].label, "g1");
        assert_eq!(g[0].poly, orbit_sum(&[(1, 2)], 5, &f2()).unwrap());
        assert!(matches!(builtin_invariants(6), Err(Error::UnsupportedN(6))));
        let grp = edge_group(5, &f2(), DEFAULT_ORDER_CAP).unwrap();
        for ni in &g {
            for gen in grp.generators() {
                assert_eq!(ni.poly.act(gen).unwrap(), ni.poly, "{}", ni.label);
            }
        }
    }

    #[test]
    fn edge_list_parsing() {
        assert_eq!(parse_edge_list("1 2\n# c\n\n3 2\n", 4).unwrap(), vec![(1, 2), (2, 3)]);
        assert!(matches!(parse_edge_list("1 2 3", 4), Err(Error::MalformedEdgeList { line: 1, .. })));
        assert!(matches!(parse_edge_list("1 5", 4), Err(Error::MalformedEdgeList { .. })));
        assert!(matches!(parse_edge_list("1 2\n2 1", 4), Err(Error::MalformedEdgeList { line: 2, .. })));
    }

    #[test]
    fn fingerprint_examples() {
        assert_eq!(fingerprint(&[], 4).unwrap(), vec![0, 0, 0, 0]);
        let k4 = edges(4);
        let p4 = [(1, 2), (2, 3), (3, 4)];
        assert_ne!(fingerprint(&k4, 4).unwrap(), fingerprint(&p4, 4).unwrap());
        let relabelled = [(2, 4), (4, 1), (1, 3)];
        assert_eq!(fingerprint(&p4, 4).unwrap(), fingerprint(&relabelled, 4).unwrap());
    }

    #[test]
    fn report4_entry() {
        let r = theorem_report(4).unwrap();
        assert_eq!(r.matrix[0][1], 1);
        assert_eq!(r.minimal_subsets.len(), 2);
        assert!(r.all_pass(), "{:?}", r.checks);
    }
}
