//! Sparse multivariate polynomials over a finite field.
//!
//! Terms are kept in graded-lexicographic order (total degree first, then
//! lexicographic with `x1 > x2 > ...`). Iteration and text output run from
//! the largest term down, so every polynomial has exactly one rendering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::Mat;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldSpec};

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<u32>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How variables are spelled in polynomial text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum VarNaming {
    /// `x1, ..., xN`.
    #[default]
    Single,
    /// `x{i}_{j}` for coordinate `i` of vector copy `j`, stored at `(j-1)*n + (i-1)`.
    Double { n: usize },
}

impl VarNaming {
    fn name(self, idx: usize) -> String {
        match self {
            VarNaming::Single => format!("x{}", idx + 1),
            VarNaming::Double { n } => format!("x{}_{}", idx % n + 1, idx / n + 1),
        }
    }
}

/// Degree summary. `total` is `None` for the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub total: Option<u32>,
    pub per_var: Vec<u32>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    spec: FieldSpec,
    terms: BTreeMap<ExpVec, Fe>,
}

impl Poly {
    pub fn zero(n: usize, spec: &FieldSpec) -> Poly {
        Poly { n, spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, spec: &FieldSpec, c: Fe) -> Poly {
        let mut p = Poly::zero(n, spec);
        if !c.is_zero() {
            p.terms.insert(ExpVec::zeros(n), c);
        }
        p
    }

    pub fn one(n: usize, spec: &FieldSpec) -> Poly {
        Poly::constant(n, spec, Fe::ONE)
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(n: usize, spec: &FieldSpec, i: usize) -> Poly {
        let mut e = vec![0; n];
        e[i] = 1;
        Poly::monomial(spec, e, Fe::ONE)
    }

    pub fn monomial(spec: &FieldSpec, exps: Vec<u32>, c: Fe) -> Poly {
        let n = exps.len();
        let mut p = Poly::zero(n, spec);
        if !c.is_zero() {
            p.terms.insert(ExpVec(exps), c);
        }
        p
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(n: usize, spec: &FieldSpec, terms: impl IntoIterator<Item = (Vec<u32>, Fe)>) -> Poly {
        let mut p = Poly::zero(n, spec);
        for (e, c) in terms {
            debug_assert_eq!(e.len(), n);
            p.add_term(ExpVec(e), c);
        }
        p
    }

    fn add_term(&mut self, e: ExpVec, c: Fe) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = self.spec.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, Fe)> {
        self.terms.iter().rev().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exps: &[u32]) -> Fe {
        self.terms.get(&ExpVec(exps.to_vec())).copied().unwrap_or(Fe::ZERO)
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.n != other.n || self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut r = self.clone();
        for (e, &c) in &other.terms {
            r.add_term(e.clone(), c);
        }
        Ok(r)
    }

    pub fn add_assign(&mut self, other: &Poly) -> Result<()> {
        self.check_compatible(other)?;
        for (e, &c) in &other.terms {
            self.add_term(e.clone(), c);
        }
        Ok(())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.spec.neg(Fe::ONE))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n, &self.spec);
        }
        let terms = self.terms.iter().map(|(e, &a)| (e.clone(), self.spec.mul(a, c))).collect();
        Poly { n: self.n, spec: self.spec.clone(), terms }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut acc: HashMap<Vec<u32>, Fe> = HashMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Vec<u32> = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                let c = self.spec.mul(ca, cb);
                let slot = acc.entry(e).or_insert(Fe::ZERO);
                *slot = self.spec.add(*slot, c);
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (ExpVec(e), c)).collect();
        Ok(Poly { n: self.n, spec: self.spec.clone(), terms })
    }

    /// Product, or `None` when the work (`|a|·|b|`) or the result size would exceed `cap`.
    pub fn mul_capped(&self, other: &Poly, cap: usize) -> Result<Option<Poly>> {
        self.check_compatible(other)?;
        if self.len().saturating_mul(other.len()) > cap.saturating_mul(10) {
            return Ok(None);
        }
        let r = self.mul(other)?;
        Ok((r.len() <= cap).then_some(r))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.n, &self.spec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Value at `v`, a plain sum of term products.
    pub fn evaluate(&self, v: &[Fe]) -> Result<Fe> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(self.eval_unchecked(v))
    }

    pub(crate) fn eval_unchecked(&self, v: &[Fe]) -> Fe {
        let s = &self.spec;
        let mut acc = Fe::ZERO;
        'terms: for (e, &c) in &self.terms {
            let mut t = c;
            for (&x, &k) in v.iter().zip(&e.0) {
                if k == 0 {
                    continue;
                }
                if x.is_zero() {
                    continue 'terms;
                }
                if x != Fe::ONE {
                    t = s.mul(t, s.pow(x, k as u64));
                }
            }
            acc = s.add(acc, t);
        }
        acc
    }

    /// `g · f`, defined by `(g·f)(v) = f(g⁻¹ v)`: each `x_i` is replaced by
    /// row `i` of `g⁻¹` read as a linear form.
    pub fn act(&self, g: &Mat) -> Result<Poly> {
        if g.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: g.n() });
        }
        if *g.spec() != self.spec {
            return Err(Error::SpecMismatch);
        }
        let ginv = g.inverse()?;
        if let Some((perm, alpha)) = ginv.monomial_rows() {
            return Ok(self.act_monomial(&perm, &alpha));
        }
        let forms: Vec<Poly> = (0..self.n)
            .map(|i| {
                let terms = (0..self.n).map(|k| {
                    let mut e = vec![0; self.n];
                    e[k] = 1;
                    (e, ginv.get(i, k))
                });
                Poly::from_terms(self.n, &self.spec, terms)
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(self.n, &self.spec);
        for (e, &c) in &self.terms {
            let mut t = Poly::constant(self.n, &self.spec, c);
            for (i, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pw = powers.entry((i, k)).or_insert_with(|| forms[i].pow(k));
                t = t.mul(pw)?;
            }
            out.add_assign(&t)?;
        }
        Ok(out)
    }

    /// Substitution `x_i ↦ alpha[i] · x_{perm[i]}`.
    fn act_monomial(&self, perm: &[usize], alpha: &[Fe]) -> Poly {
        let s = &self.spec;
        let mut out = Poly::zero(self.n, s);
        for (e, &c) in &self.terms {
            let mut ne = vec![0; self.n];
            let mut nc = c;
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    ne[perm[i]] = k;
                    if alpha[i] != Fe::ONE {
                        nc = s.mul(nc, s.pow(alpha[i], k as u64));
                    }
                }
            }
            out.add_term(ExpVec(ne), nc);
        }
        out
    }

    /// Reduction modulo `(x_i^q - x_i)`: every exponent `a ≥ 1` becomes
    /// `((a - 1) mod (q - 1)) + 1`.
    pub fn normal_form(&self) -> Poly {
        let qm1 = self.spec.q() - 1;
        let terms = self.terms.iter().map(|(e, &c)| {
            let r = e.0.iter().map(|&a| if a == 0 { 0 } else { (a - 1) % qm1 + 1 }).collect();
            (r, c)
        });
        Poly::from_terms(self.n, &self.spec, terms)
    }

    pub fn degrees(&self) -> Degrees {
        let mut per_var = vec![0; self.n];
        let mut total = None;
        for e in self.terms.keys() {
            for (d, &k) in per_var.iter_mut().zip(&e.0) {
                *d = (*d).max(k);
            }
            total = Some(total.unwrap_or(0).max(e.total()));
        }
        Degrees { total, per_var }
    }

    /// True when every `deg_{x_i}` is at most `d`.
    pub fn within_var_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.0.iter().all(|&k| k <= d))
    }

    pub fn parse(text: &str, n: usize, spec: &FieldSpec) -> Result<Poly> {
        Self::parse_with(text, n, spec, VarNaming::Single)
    }

    pub fn parse_with(text: &str, nvars: usize, spec: &FieldSpec, naming: VarNaming) -> Result<Poly> {
        Parser { s: text.as_bytes(), pos: 0, nvars, spec, naming }.poly()
    }

    pub fn format_with(&self, naming: VarNaming) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::with_capacity(self.len());
        for (e, c) in self.terms() {
            let mut factors = Vec::new();
            let constant = e.total() == 0;
            if c != Fe::ONE || constant {
                factors.push(c.to_string());
            }
            for (i, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(naming.name(i)),
                    _ => factors.push(format!("{}^{}", naming.name(i), k)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(VarNaming::Single))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{:?}, n={}]({})", self.spec, self.n, self)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
    spec: &'a FieldSpec,
    naming: VarNaming,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::SyntaxError { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("number too large"))
    }

    fn poly(mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.nvars, self.spec);
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let save = self.pos;
        if let Ok(0) = self.number() {
            if self.peek().is_none() {
                return Ok(out);
            }
        }
        self.pos = save;
        let mut negate = false;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            negate = true;
        }
        loop {
            let t = self.term()?;
            out.add_assign(&if negate { t.neg() } else { t })?;
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => return self.err(format!("unexpected {:?}", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut coeff = Fe::ONE;
        let mut exps = vec![0u32; self.nvars];
        loop {
            match self.peek() {
                Some(b'x') => {
                    let (idx, name) = self.variable()?;
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self.number()?;
                        if k > u32::MAX as u64 / 2 {
                            return self.err("exponent too large");
                        }
                    }
                    if idx >= self.nvars {
                        return Err(Error::VariableOutOfRange { name, n: self.nvars });
                    }
                    exps[idx] += k as u32;
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = self.number()?;
                    if v == 0 {
                        return Err(Error::ZeroCoefficientRejected);
                    }
                    coeff = self.spec.mul(coeff, self.spec.element(v)?);
                }
                _ => return self.err("expected a coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Poly::monomial(self.spec, exps, coeff))
    }

    fn variable(&mut self) -> Result<(usize, String)> {
        let start = self.pos;
        self.pos += 1;
        let i = self.digits()?;
        let double = self.s.get(self.pos) == Some(&b'_');
        let j = if double {
            self.pos += 1;
            Some(self.digits()?)
        } else {
            None
        };
        let name = String::from_utf8_lossy(&self.s[start..self.pos]).into_owned();
        let idx = match (self.naming, j) {
            (VarNaming::Single, None) if i >= 1 => i - 1,
            (VarNaming::Double { n }, Some(j)) if i >= 1 && j >= 1 => {
                if i > n {
                    return Err(Error::VariableOutOfRange { name, n });
                }
                (j - 1) * n + (i - 1)
            }
            (_, _) if i == 0 || j == Some(0) => return Err(Error::VariableOutOfRange { name, n: self.nvars }),
            _ => return self.err(format!("variable {name} does not match the naming scheme")),
        };
        Ok((idx, name))
    }

    fn digits(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected variable index");
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("index too large"))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: u32,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    spec: FieldSpec,
    terms: Vec<TermJson>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            n: self.n,
            spec: self.spec.clone(),
            terms: self.terms().map(|(e, c)| TermJson { exps: e.0.clone(), coeff: c.index() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in j.terms {
            if t.exps.len() != j.n {
                return Err(D::Error::custom("exponent vector length differs from n"));
            }
            let c = j.spec.element(t.coeff as u64).map_err(D::Error::custom)?;
            terms.push((t.exps, c));
        }
        Ok(Poly::from_terms(j.n, &j.spec, terms))
    }
}
