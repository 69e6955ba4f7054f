//! Finite matrix groups over GF(q) and their orbits on `V = F_q^n`.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};
use crate::linalg;

pub const DEFAULT_ORDER_CAP: usize = 100_000;
pub const DEFAULT_POINT_CAP: u64 = 10_000_000;

/// An invertible `n × n` matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    spec: FieldSpec,
    entries: Vec<Fe>,
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", r.join(","))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{self}")
    }
}

impl Mat {
    /// Validates invertibility.
    pub fn new(spec: &FieldSpec, n: usize, entries: Vec<Fe>) -> Result<Mat> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        if let Some(&bad) = entries.iter().find(|x| x.index() >= spec.q()) {
            return Err(Error::ElementOutOfRange { index: bad.index() as u64, q: spec.q() });
        }
        if linalg::det(spec, &entries, n).is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Mat { n, spec: spec.clone(), entries })
    }

    pub fn from_rows(spec: &FieldSpec, rows: &[Vec<Fe>]) -> Result<Mat> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: r.len() });
        }
        Mat::new(spec, n, rows.concat())
    }

    /// Rows given as enumeration indices.
    pub fn from_index_rows(spec: &FieldSpec, rows: &[Vec<u32>]) -> Result<Mat> {
        let rows: Vec<Vec<Fe>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| spec.element(x as u64)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        Mat::from_rows(spec, &rows)
    }

    pub fn identity(spec: &FieldSpec, n: usize) -> Mat {
        let mut entries = vec![Fe::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = Fe::ONE;
        }
        Mat { n, spec: spec.clone(), entries }
    }

    /// Matrix sending `e_i` to `e_{perm[i]}`. Its action on coordinates is `x_i ↦ x_{perm[i]}`.
    pub fn permutation(spec: &FieldSpec, perm: &[usize]) -> Mat {
        let n = perm.len();
        let mut entries = vec![Fe::ZERO; n * n];
        for (i, &j) in perm.iter().enumerate() {
            entries[j * n + i] = Fe::ONE;
        }
        Mat { n, spec: spec.clone(), entries }
    }

    /// Panics on a zero entry.
    pub fn diag(spec: &FieldSpec, alpha: &[Fe]) -> Mat {
        assert!(alpha.iter().all(|a| !a.is_zero()), "diagonal entries must be nonzero");
        let n = alpha.len();
        let mut entries = vec![Fe::ZERO; n * n];
        for (i, &a) in alpha.iter().enumerate() {
            entries[i * n + i] = a;
        }
        Mat { n, spec: spec.clone(), entries }
    }

    /// The monomial matrix `g = (σ; α)` with `g · x_i = α_i x_{σ(i)}`.
    pub fn from_monomial(spec: &FieldSpec, sigma: &[usize], alpha: &[Fe]) -> Result<Mat> {
        let n = sigma.len();
        if alpha.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: alpha.len() });
        }
        let mut inv = vec![Fe::ZERO; n * n];
        for i in 0..n {
            inv[i * n + sigma[i]] = alpha[i];
        }
        Mat::new(spec, n, inv)?.inverse()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.entries
    }

    pub fn index_rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.n).map(|r| r.iter().map(|x| x.index()).collect()).collect()
    }

    pub fn det(&self) -> Fe {
        linalg::det(&self.spec, &self.entries, self.n)
    }

    pub fn inverse(&self) -> Result<Mat> {
        let entries = linalg::inverse(&self.spec, &self.entries, self.n)?;
        Ok(Mat { n: self.n, spec: self.spec.clone(), entries })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.n != other.n || self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let n = self.n;
        let s = &self.spec;
        let mut entries = vec![Fe::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.entries[k * n + j];
                    if !b.is_zero() {
                        let e = &mut entries[i * n + j];
                        *e = s.add(*e, s.mul(a, b));
                    }
                }
            }
        }
        Ok(Mat { n, spec: self.spec.clone(), entries })
    }

    /// `g · v` as a matrix-vector product.
    pub fn act_vec(&self, v: &[Fe]) -> Result<Vec<Fe>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(self.act_vec_unchecked(v))
    }

    pub(crate) fn act_vec_unchecked(&self, v: &[Fe]) -> Vec<Fe> {
        let s = &self.spec;
        self.entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Fe::ZERO, |acc, (&a, &b)| s.add(acc, s.mul(a, b)))
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(&self.spec, self.n)
    }

    /// `(perm, values)` when every row has exactly one nonzero entry, at column `perm[i]`.
    pub(crate) fn monomial_rows(&self) -> Option<(Vec<usize>, Vec<Fe>)> {
        let mut perm = Vec::with_capacity(self.n);
        let mut vals = Vec::with_capacity(self.n);
        for row in self.entries.chunks(self.n) {
            let mut nz = row.iter().enumerate().filter(|(_, x)| !x.is_zero());
            let (j, &a) = nz.next()?;
            if nz.next().is_some() {
                return None;
            }
            perm.push(j);
            vals.push(a);
        }
        Some((perm, vals))
    }

    pub fn is_monomial(&self) -> bool {
        self.monomial_rows().is_some()
    }

    pub fn is_permutation(&self) -> bool {
        self.monomial_rows().is_some_and(|(_, a)| a.iter().all(|&x| x == Fe::ONE))
    }
}

/// Decomposes a monomial `g` as `(σ; α)` with `g · x_i = α_i x_{σ(i)}`; `None` otherwise.
pub fn monomial_decompose(g: &Mat) -> Option<(Vec<usize>, Vec<Fe>)> {
    g.inverse().ok()?.monomial_rows()
}

/// A finite matrix group with its full element list, sorted by entries.
#[derive(Clone, Debug)]
pub struct Group {
    spec: FieldSpec,
    n: usize,
    generators: Vec<Mat>,
    elements: Vec<Mat>,
}

impl Group {
    /// Breadth-first product closure of `gens`.
    pub fn closure(spec: &FieldSpec, n: usize, gens: Vec<Mat>, cap: usize) -> Result<Group> {
        for (i, g) in gens.iter().enumerate() {
            if g.n != n || g.spec != *spec {
                return Err(Error::SpecMismatch);
            }
            if g.det().is_zero() {
                return Err(Error::SingularGenerator { index: i });
            }
        }
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let id = Mat::identity(spec, n);
        let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.mul(&x)?;
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    order.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        order.sort();
        Ok(Group { spec: spec.clone(), n, generators: gens, elements: order })
    }

    pub fn trivial(spec: &FieldSpec, n: usize) -> Group {
        Group::closure(spec, n, Vec::new(), 1).expect("trivial group")
    }

    /// Permutation matrices of `S_n`, generated by `(1 2)` and `(1 2 … n)`.
    pub fn symmetric(spec: &FieldSpec, n: usize, cap: usize) -> Result<Group> {
        Group::closure(spec, n, sym_generators(spec, n), cap)
    }

    /// All monomial matrices: `S_n` together with `diag(ζ, 1, …, 1)` for a generator ζ of F*.
    pub fn monomial_full(spec: &FieldSpec, n: usize, cap: usize) -> Result<Group> {
        let mut gens = sym_generators(spec, n);
        if spec.q() > 2 && n > 0 {
            let zeta = primitive_element(spec);
            let mut alpha = vec![Fe::ONE; n];
            alpha[0] = zeta;
            gens.push(Mat::diag(spec, &alpha));
        }
        Group::closure(spec, n, gens, cap)
    }

    /// Resolves `trivial`, `sym:N`, `edge-sym:N` and `monomial-full:N`.
    /// `n` is required for `trivial` only.
    pub fn named(name: &str, spec: &FieldSpec, n: Option<usize>, cap: usize) -> Result<Group> {
        let unknown = || Error::UnknownGroup(name.to_string());
        let (kind, arg) = match name.split_once(':') {
            Some((k, a)) => (k, Some(a.parse::<usize>().map_err(|_| unknown())?)),
            None => (name, None),
        };
        match (kind, arg) {
            ("trivial", None) => Ok(Group::trivial(spec, n.ok_or_else(unknown)?)),
            ("trivial", Some(k)) => Ok(Group::trivial(spec, k)),
            ("sym", Some(k)) => Group::symmetric(spec, k, cap),
            ("edge-sym", Some(k)) => crate::graphs::edge_group(k, spec, cap),
            ("monomial-full", Some(k)) => Group::monomial_full(spec, k, cap),
            _ => Err(unknown()),
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// True when every element is monomial; checked on the closed group.
    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(Mat::is_monomial)
    }

    pub fn is_permutation_group(&self) -> bool {
        self.generators.iter().all(Mat::is_permutation)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            spec: self.spec.clone(),
            n: self.n,
            generators: self.generators.iter().map(Mat::index_rows).collect(),
        }
    }
}

/// Group file format: `{spec, n, generators: [row-major index matrices]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub spec: FieldSpec,
    pub n: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
}

impl GroupJson {
    pub fn into_group(self, cap: usize) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                Mat::from_index_rows(&self.spec, rows).map_err(|e| match e {
                    Error::SingularMatrix => Error::SingularGenerator { index: i },
                    e => e,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Group::closure(&self.spec, self.n, gens, cap)
    }
}

pub(crate) fn sym_generators(spec: &FieldSpec, n: usize) -> Vec<Mat> {
    if n < 2 {
        return Vec::new();
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    vec![Mat::permutation(spec, &swap), Mat::permutation(spec, &cycle)]
}

/// The first element of multiplicative order `q - 1`.
pub fn primitive_element(spec: &FieldSpec) -> Fe {
    let qm1 = spec.q() as u64 - 1;
    spec.elements()
        .skip(1)
        .find(|&a| {
            let mut x = a;
            for k in 1..qm1 {
                if x == Fe::ONE {
                    return k == qm1;
                }
                x = spec.mul(x, a);
            }
            x == Fe::ONE
        })
        .expect("F* is cyclic")
}

/// Radix-`q` code of a vector, first coordinate most significant, so that
/// numeric order equals lexicographic order.
pub fn encode(spec: &FieldSpec, v: &[Fe]) -> u64 {
    v.iter().fold(0u64, |acc, x| acc * spec.q() as u64 + x.index() as u64)
}

pub fn decode(spec: &FieldSpec, n: usize, mut code: u64) -> Vec<Fe> {
    let q = spec.q() as u64;
    let mut v = vec![Fe::ZERO; n];
    for x in v.iter_mut().rev() {
        *x = Fe((code % q) as u32);
        code /= q;
    }
    v
}

/// Partition of `V` into orbits, each orbit a sorted list of point codes.
#[derive(Clone, Debug)]
pub struct OrbitDecomp {
    spec: FieldSpec,
    n: usize,
    orbits: Vec<Vec<u64>>,
    labels: Vec<u32>,
}

impl OrbitDecomp {
    pub fn new(group: &Group, cap_points: u64) -> Result<OrbitDecomp> {
        let spec = group.spec();
        let n = group.n();
        let total = (spec.q() as u128).pow(n as u32);
        if total > cap_points as u128 {
            return Err(Error::PointCapExceeded { points: total, cap: cap_points as u128 });
        }
        let total = total as usize;
        const UNSEEN: u32 = u32::MAX;
        let mut labels = vec![UNSEEN; total];
        let mut orbits = Vec::new();
        let mut stack = Vec::new();
        for start in 0..total {
            if labels[start] != UNSEEN {
                continue;
            }
            let id = orbits.len() as u32;
            labels[start] = id;
            let mut orbit = vec![start as u64];
            stack.push(start as u64);
            while let Some(c) = stack.pop() {
                let v = decode(spec, n, c);
                for g in group.generators() {
                    let w = encode(spec, &g.act_vec_unchecked(&v));
                    if labels[w as usize] == UNSEEN {
                        labels[w as usize] = id;
                        orbit.push(w);
                        stack.push(w);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        Ok(OrbitDecomp { spec: spec.clone(), n, orbits, labels })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of orbits.
    pub fn k(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_codes(&self, j: usize) -> &[u64] {
        &self.orbits[j]
    }

    pub fn orbit(&self, j: usize) -> Vec<Vec<Fe>> {
        self.orbits[j].iter().map(|&c| decode(&self.spec, self.n, c)).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    /// Lexicographically smallest point of orbit `j`.
    pub fn rep(&self, j: usize) -> Vec<Fe> {
        decode(&self.spec, self.n, self.orbits[j][0])
    }

    pub fn reps(&self) -> Vec<Vec<Fe>> {
        (0..self.k()).map(|j| self.rep(j)).collect()
    }

    /// Index of the orbit containing `v`.
    pub fn orbit_of(&self, v: &[Fe]) -> Result<usize> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(self.labels[encode(&self.spec, v) as usize] as usize)
    }
}
