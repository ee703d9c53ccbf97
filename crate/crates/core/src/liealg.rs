//! The simple Lie algebra in a rescaled Chevalley basis, its Chevalley
//! involution, and a digest-checked structure-constant cache.

use crate::rootdata::{build_root_system, CartanData, Root, RootError, RootSystem};
use crate::scalars::{int, rational_string, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error("element does not belong to this algebra")]
    ForeignElement,
    #[error("cache is corrupt: {0}")]
    CorruptCache(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    F(usize),
    H(usize),
    E(usize),
}

/// Sparse Lie algebra element keyed by basis index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LieElement {
    terms: BTreeMap<usize, Rational>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn basis(idx: usize) -> Self {
        Self::term(idx, Rational::one())
    }
    pub fn term(idx: usize, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(idx, &c);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }
    pub fn coeff(&self, idx: usize) -> Rational {
        self.terms.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn add_term(&mut self, idx: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }
    pub fn add(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(*k, v);
        }
        out
    }
    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&-Rational::one()))
    }
    pub fn scale(&self, c: &Rational) -> LieElement {
        let mut out = LieElement::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }
}

pub struct LieAlgebra {
    pub rootsys: RootSystem,
    npos: usize,
    rank: usize,
    table: Vec<Vec<Vec<(usize, Rational)>>>,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, dim {})", self.rootsys.cartan.label, self.dim())
    }
}

impl LieAlgebra {
    pub fn dim(&self) -> usize {
        2 * self.npos + self.rank
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn num_positive(&self) -> usize {
        self.npos
    }
    pub fn cartan(&self) -> &CartanData {
        &self.rootsys.cartan
    }
    pub fn index(&self, l: BasisLabel) -> usize {
        match l {
            BasisLabel::F(k) => k,
            BasisLabel::H(i) => self.npos + i,
            BasisLabel::E(k) => self.npos + self.rank + k,
        }
    }
    pub fn label(&self, idx: usize) -> BasisLabel {
        if idx < self.npos {
            BasisLabel::F(idx)
        } else if idx < self.npos + self.rank {
            BasisLabel::H(idx - self.npos)
        } else {
            BasisLabel::E(idx - self.npos - self.rank)
        }
    }
    pub fn label_name(&self, idx: usize) -> String {
        match self.label(idx) {
            BasisLabel::F(k) => format!("f{:?}", self.rootsys.positive_roots[k]),
            BasisLabel::H(i) => format!("h{}", i + 1),
            BasisLabel::E(k) => format!("e{:?}", self.rootsys.positive_roots[k]),
        }
    }
    pub fn f(&self, root: usize) -> LieElement {
        LieElement::basis(self.index(BasisLabel::F(root)))
    }
    pub fn e(&self, root: usize) -> LieElement {
        LieElement::basis(self.index(BasisLabel::E(root)))
    }
    pub fn h(&self, i: usize) -> LieElement {
        LieElement::basis(self.index(BasisLabel::H(i)))
    }
    /// Simple generators by node.
    pub fn f_simple(&self, i: usize) -> LieElement {
        self.f(self.rootsys.simple_index(i))
    }
    pub fn e_simple(&self, i: usize) -> LieElement {
        self.e(self.rootsys.simple_index(i))
    }
    /// Height of the root attached to a basis index; 0 for Cartan elements.
    pub fn basis_height(&self, idx: usize) -> u32 {
        match self.label(idx) {
            BasisLabel::F(k) | BasisLabel::E(k) => self.rootsys.height[k],
            BasisLabel::H(_) => 0,
        }
    }
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.table[a][b]
    }
    pub fn check(&self, x: &LieElement) -> Result<(), LieError> {
        match x.max_index() {
            Some(m) if m >= self.dim() => Err(LieError::ForeignElement),
            _ => Ok(()),
        }
    }
    pub fn try_bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, LieError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket(x, y))
    }
    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let cab = ca * cb;
                for (t, c) in &self.table[a][b] {
                    out.add_term(*t, &(c * &cab));
                }
            }
        }
        out
    }
    /// Chevalley involution: f_α ↦ −e_α, e_α ↦ −f_α, h ↦ −h.
    pub fn omega0(&self, x: &LieElement) -> LieElement {
        let mut out = LieElement::zero();
        for (a, c) in x.terms() {
            out.add_term(self.omega0_index(a), &-c);
        }
        out
    }
    pub fn omega0_index(&self, a: usize) -> usize {
        match self.label(a) {
            BasisLabel::F(k) => self.index(BasisLabel::E(k)),
            BasisLabel::E(k) => self.index(BasisLabel::F(k)),
            h => self.index(h),
        }
    }
    /// Dimension of the +1 eigenspace of ω₀, via the rank of ω₀ − 1.
    pub fn fixed_point_dimension(&self) -> usize {
        let n = self.dim();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for a in 0..n {
            let img = self.omega0(&LieElement::basis(a));
            let mut row = vec![Rational::zero(); n];
            for (k, v) in img.terms() {
                row[k] += v;
            }
            row[a] -= Rational::one();
            rows.push(row);
        }
        n - dense_rank(rows)
    }
    /// Exhaustive Jacobi identity over basis triples.
    pub fn verify_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    self.jacobi_triple(a, b, c)?;
                }
            }
        }
        Ok(())
    }
    /// Jacobi identity with one argument among the Chevalley generators.
    pub fn verify_jacobi_generators(&self) -> Result<(), LieError> {
        let n = self.dim();
        let mut gens = Vec::new();
        for i in 0..self.rank {
            let s = self.rootsys.simple_index(i);
            gens.push(self.index(BasisLabel::F(s)));
            gens.push(self.index(BasisLabel::E(s)));
        }
        for a in gens {
            for b in 0..n {
                for c in b + 1..n {
                    self.jacobi_triple(a, b, c)?;
                }
            }
        }
        Ok(())
    }
    fn jacobi_triple(&self, a: usize, b: usize, c: usize) -> Result<(), LieError> {
        let (x, y, z) = (LieElement::basis(a), LieElement::basis(b), LieElement::basis(c));
        let s = self
            .bracket(&x, &self.bracket(&y, &z))
            .add(&self.bracket(&y, &self.bracket(&z, &x)))
            .add(&self.bracket(&z, &self.bracket(&x, &y)));
        if s.is_zero() {
            Ok(())
        } else {
            Err(LieError::Jacobi(self.label_name(a), self.label_name(b), self.label_name(c)))
        }
    }
    /// Nested bracket [x_1,[x_2,…[x_{k−1},x_k]…]].
    pub fn nested(&self, xs: &[LieElement]) -> LieElement {
        let mut it = xs.iter().rev();
        let mut acc = match it.next() {
            Some(x) => x.clone(),
            None => return LieElement::zero(),
        };
        for x in it {
            acc = self.bracket(x, &acc);
        }
        acc
    }
    pub fn format(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .map(|(k, v)| format!("{}*{}", rational_string(v), self.label_name(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Rank of a dense rational matrix.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|r| !rows[*r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let piv = rows[rank][col].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &piv;
                for c in col..ncols {
                    let v = &rows[rank][c] * &f;
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Carter's structure constants N_{r,s} for roots r, s (either sign) with
/// r + s a root, signs fixed by N = p+1 on extraspecial pairs.
struct Carter<'a> {
    rs: &'a RootSystem,
    memo: HashMap<(usize, usize), i64>,
}

fn neg(r: &[i64]) -> Root {
    r.iter().map(|x| -x).collect()
}

fn add(a: &[i64], b: &[i64]) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_pos(r: &[i64]) -> bool {
    r.iter().all(|x| *x >= 0)
}

impl<'a> Carter<'a> {
    fn norm(&self, r: &[i64]) -> i64 {
        self.rs.cartan.form(r, r)
    }

    fn n(&mut self, r: &[i64], s: &[i64]) -> i64 {
        let rp = is_pos(r);
        let sp = is_pos(s);
        if rp && sp {
            let (a, b) = (self.rs.root_index(r).unwrap(), self.rs.root_index(s).unwrap());
            return if a < b { self.special(a, b) } else { -self.special(b, a) };
        }
        if !rp && !sp {
            return -self.n(&neg(r), &neg(s));
        }
        let t = neg(&add(r, s));
        let tp = is_pos(&t);
        let (num, den, val) = match (rp, tp) {
            (true, true) => (self.norm(&t), self.norm(s), self.n(&t, r)),
            (true, false) => (self.norm(&t), self.norm(r), self.n(s, &t)),
            (false, true) => (self.norm(&t), self.norm(r), self.n(s, &t)),
            (false, false) => (self.norm(&t), self.norm(s), self.n(&t, r)),
        };
        debug_assert_eq!((num * val) % den, 0);
        num * val / den
    }

    fn special(&mut self, a: usize, b: usize) -> i64 {
        if let Some(v) = self.memo.get(&(a, b)) {
            return *v;
        }
        let rs = self.rs;
        let alpha = rs.positive_roots[a].clone();
        let beta = rs.positive_roots[b].clone();
        let xi = add(&alpha, &beta);
        let g = (0..rs.num_positive())
            .find(|k| {
                let d: Root = xi.iter().zip(&rs.positive_roots[*k]).map(|(x, y)| x - y).collect();
                rs.is_positive_root(&d)
            })
            .unwrap();
        let gamma = rs.positive_roots[g].clone();
        let delta: Root = xi.iter().zip(&gamma).map(|(x, y)| x - y).collect();
        let mut p = 0;
        loop {
            let cand: Root = delta.iter().zip(&gamma).map(|(d, c)| d - (p + 1) * c).collect();
            if rs.is_root(&cand) {
                p += 1;
            } else {
                break;
            }
        }
        let n_gd = p + 1;
        let val = if alpha == gamma {
            n_gd
        } else {
            let mut acc = Rational::zero();
            let bg: Root = beta.iter().zip(&gamma).map(|(x, y)| x - y).collect();
            if rs.is_root(&bg) {
                let t = self.n(&beta, &neg(&gamma)) * self.n(&alpha, &neg(&delta));
                acc += Rational::new(t.into(), self.norm(&bg).into());
            }
            let ag: Root = alpha.iter().zip(&gamma).map(|(x, y)| x - y).collect();
            if rs.is_root(&ag) {
                let t = self.n(&neg(&gamma), &alpha) * self.n(&beta, &neg(&delta));
                acc += Rational::new(t.into(), self.norm(&ag).into());
            }
            let v = acc * int(self.norm(&xi)) / int(n_gd);
            assert!(v.is_integer(), "non-integral structure constant");
            v.to_integer().try_into().unwrap()
        };
        self.memo.insert((a, b), val);
        val
    }
}

pub fn build_lie_algebra(cartan: &CartanData) -> Result<LieAlgebra, LieError> {
    let rs = build_root_system(cartan)?;
    let alg = from_root_system(rs);
    alg.verify_jacobi_generators()?;
    Ok(alg)
}

pub fn from_root_system(rs: RootSystem) -> LieAlgebra {
    let npos = rs.num_positive();
    let rank = rs.rank();
    let mut carter = Carter { rs: &rs, memo: HashMap::new() };
    // f_α = λ_α e_{-α} in Carter's Chevalley basis
    let mut lambda = vec![Rational::one(); npos];
    for k in 0..npos {
        let seq = &rs.decomposition[k];
        if seq.len() > 1 {
            let i1 = seq[0];
            let mut rest = rs.positive_roots[k].clone();
            rest[i1] -= 1;
            let mut ai = vec![0; rank];
            ai[i1] = 1;
            let rk = rs.root_index(&rest).unwrap();
            lambda[k] = &lambda[rk] * int(carter.n(&neg(&ai), &neg(&rest)));
        }
    }
    let dim = 2 * npos + rank;
    let fi = |k: usize| k;
    let hi = |i: usize| npos + i;
    let ei = |k: usize| npos + rank + k;
    let mut table: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); dim]; dim];
    let roots = rs.positive_roots.clone();
    let set = |table: &mut Vec<Vec<Vec<(usize, Rational)>>>, x: usize, y: usize, v: Vec<(usize, Rational)>| {
        let negv = v.iter().map(|(t, c)| (*t, -c)).collect();
        table[x][y] = v;
        table[y][x] = negv;
    };
    for a in 0..npos {
        for b in 0..npos {
            let sum = add(&roots[a], &roots[b]);
            if a < b {
                if let Some(c) = rs.root_index(&sum) {
                    let lab = &lambda[a] * &lambda[b] / &lambda[c];
                    let ne = int(carter.n(&roots[a], &roots[b]));
                    let nf = int(carter.n(&neg(&roots[a]), &neg(&roots[b])));
                    set(&mut table, ei(a), ei(b), vec![(ei(c), &lab * ne)]);
                    set(&mut table, fi(a), fi(b), vec![(fi(c), &lab * nf)]);
                }
            }
            // [e_a, f_b]
            let v = if a == b {
                let r = &roots[a];
                let nr = rs.cartan.form(r, r);
                let l2 = &lambda[a] * &lambda[a];
                (0..rank)
                    .filter(|k| r[*k] != 0)
                    .map(|k| (hi(k), &l2 * Rational::new((r[k] * 2 * rs.cartan.d[k]).into(), nr.into())))
                    .collect()
            } else {
                let diff: Root = roots[a].iter().zip(&roots[b]).map(|(x, y)| x - y).collect();
                if rs.is_root(&diff) {
                    let nn = int(carter.n(&roots[a], &neg(&roots[b])));
                    if is_pos(&diff) {
                        let c = rs.root_index(&diff).unwrap();
                        vec![(ei(c), &lambda[a] * &lambda[b] * nn / &lambda[c])]
                    } else {
                        let c = rs.root_index(&neg(&diff)).unwrap();
                        vec![(fi(c), &lambda[a] * &lambda[b] * nn / &lambda[c])]
                    }
                } else {
                    Vec::new()
                }
            };
            set(&mut table, ei(a), fi(b), v);
        }
        for i in 0..rank {
            let p = int(rs.cartan.pairing(&roots[a], i));
            set(&mut table, hi(i), ei(a), vec![(ei(a), p.clone())]);
            set(&mut table, hi(i), fi(a), vec![(fi(a), -p)]);
        }
    }
    drop(carter);
    LieAlgebra { rootsys: rs, npos, rank, table }
}

/// Versioned, digest-carrying serialization of the structure constants.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct StructureCache {
    pub schema: String,
    pub root_system: RootSystem,
    pub triples: Vec<(usize, usize, usize, String)>,
    pub digest: String,
}

pub const CACHE_SCHEMA: &str = "tyang-structure-constants/1";

fn triples_digest(rs: &RootSystem, triples: &[(usize, usize, usize, String)]) -> String {
    let payload = serde_json::to_string(&(rs, triples)).expect("serializable");
    hex::encode(Sha256::digest(payload.as_bytes()))
}

impl LieAlgebra {
    pub fn to_cache(&self) -> StructureCache {
        let mut triples = Vec::new();
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                for (t, c) in &self.table[a][b] {
                    triples.push((a, b, *t, rational_string(c)));
                }
            }
        }
        let digest = triples_digest(&self.rootsys, &triples);
        StructureCache { schema: CACHE_SCHEMA.into(), root_system: self.rootsys.clone(), triples, digest }
    }

    /// Rebuild from a cache document, checking schema, digest and Jacobi.
    pub fn from_cache_json(text: &str) -> Result<LieAlgebra, LieError> {
        let corrupt = |m: String| LieError::CorruptCache(m);
        let cache: StructureCache = serde_json::from_str(text).map_err(|e| corrupt(e.to_string()))?;
        if cache.schema != CACHE_SCHEMA {
            return Err(corrupt(format!("unknown schema {}", cache.schema)));
        }
        let rs = RootSystem::from_json(&serde_json::to_string(&cache.root_system).unwrap())
            .map_err(|e| corrupt(e.to_string()))?;
        if triples_digest(&rs, &cache.triples) != cache.digest {
            return Err(corrupt("digest mismatch".into()));
        }
        let npos = rs.num_positive();
        let rank = rs.rank();
        let dim = 2 * npos + rank;
        let mut table: Vec<Vec<Vec<(usize, Rational)>>> = vec![vec![Vec::new(); dim]; dim];
        for (a, b, t, c) in &cache.triples {
            if *a >= dim || *b >= dim || *t >= dim {
                return Err(corrupt("index out of range".into()));
            }
            let v: Rational = c.parse().map_err(|_| corrupt(format!("bad rational {c}")))?;
            table[*a][*b].push((*t, v));
        }
        let alg = LieAlgebra { rootsys: rs, npos, rank, table };
        alg.verify_jacobi().map_err(|e| corrupt(e.to_string()))?;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_cartan;
    use crate::scalars::q;

    fn alg(l: &str) -> LieAlgebra {
        build_lie_algebra(&build_cartan(l).unwrap()).unwrap()
    }

    #[test]
    fn sl2_triple() {
        let g = alg("A1");
        let (e, f, h) = (g.e_simple(0), g.f_simple(0), g.h(0));
        assert_eq!(g.bracket(&e, &f), h);
        assert_eq!(g.bracket(&h, &e), e.scale(&int(2)));
        assert_eq!(g.bracket(&h, &f), f.scale(&int(-2)));
        assert!(g.bracket(&e, &e).is_zero());
    }

    #[test]
    fn a2_nested_root_vector_and_serre() {
        let g = alg("A2");
        let (f1, f2) = (g.f_simple(0), g.f_simple(1));
        assert_eq!(g.bracket(&f1, &f2), g.f(2));
        assert!(g.bracket(&f1, &g.bracket(&f1, &f2)).is_zero());
        assert_eq!(g.omega0(&g.f(2)), g.e(2).scale(&int(-1)));
    }

    #[test]
    fn generator_relations_all_types() {
        for l in ["A3", "B3", "C3", "D4", "F4", "G2", "G2-paper"] {
            let g = alg(l);
            let c = g.cartan().clone();
            for i in 0..g.rank() {
                assert_eq!(g.bracket(&g.e_simple(i), &g.f_simple(i)), g.h(i), "{l}");
                for j in 0..g.rank() {
                    let cij = int(c.c[i][j]);
                    assert_eq!(g.bracket(&g.h(i), &g.e_simple(j)), g.e_simple(j).scale(&cij));
                    assert_eq!(g.bracket(&g.h(i), &g.f_simple(j)), g.f_simple(j).scale(&-cij));
                }
            }
            // stored f_α equals the nested bracket along the decomposition
            for k in 0..g.num_positive() {
                let xs: Vec<LieElement> =
                    g.rootsys.decomposition[k].iter().map(|i| g.f_simple(*i)).collect();
                assert_eq!(g.nested(&xs), g.f(k), "{l} root {k}");
                let ek = g.omega0(&g.nested(&xs)).scale(&int(-1));
                assert_eq!(ek, g.e(k));
            }
        }
    }

    #[test]
    fn omega0_is_involutive_automorphism() {
        for l in ["B2", "G2"] {
            let g = alg(l);
            for a in 0..g.dim() {
                let x = LieElement::basis(a);
                assert_eq!(g.omega0(&g.omega0(&x)), x);
                for b in 0..g.dim() {
                    let y = LieElement::basis(b);
                    assert_eq!(g.omega0(&g.bracket(&x, &y)), g.bracket(&g.omega0(&x), &g.omega0(&y)));
                }
            }
        }
    }

    #[test]
    fn jacobi_small_types() {
        for l in ["A1", "A2", "B2", "G2", "C3"] {
            alg(l).verify_jacobi().unwrap();
        }
    }

    #[test]
    fn fixed_points() {
        assert_eq!(alg("A2").fixed_point_dimension(), 3);
        assert_eq!(alg("B2").fixed_point_dimension(), 4);
        assert_eq!(alg("G2").fixed_point_dimension(), 6);
        assert_eq!(alg("G2").dim(), 14);
    }

    #[test]
    fn cache_roundtrip_and_corruption() {
        let g = alg("B2");
        let text = serde_json::to_string(&g.to_cache()).unwrap();
        let back = LieAlgebra::from_cache_json(&text).unwrap();
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                assert_eq!(back.bracket_basis(a, b), g.bracket_basis(a, b));
            }
        }
        let mut cache = g.to_cache();
        cache.triples[3].3 = rational_string(&q(7, 3));
        let bad = serde_json::to_string(&cache).unwrap();
        assert!(matches!(LieAlgebra::from_cache_json(&bad), Err(LieError::CorruptCache(_))));
        assert!(LieAlgebra::from_cache_json("{").is_err());
    }

    #[test]
    fn foreign_elements_rejected() {
        let g = alg("A1");
        let x = LieElement::basis(17);
        assert!(matches!(g.try_bracket(&x, &g.h(0)), Err(LieError::ForeignElement)));
    }
}
