//! Noncommutative polynomials over ℚ[ħ] in generator symbols, graded by
//! deg ħ = 1 and deg(symbol) = level, with word-length bookkeeping, plus
//! lazily evaluated generating series with free-algebra coefficients.

use crate::scalars::{rational_string, HbarPoly, Rational, ScalarSeries};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    B = 0,
    H = 1,
    T = 2,
    X = 3,
}

/// A generator symbol packed as kind | node | level, so the derived order
/// is lexicographic in (kind, node, level).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(u32);

impl Sym {
    pub fn new(kind: SymKind, node: usize, level: u32) -> Sym {
        debug_assert!(node < 256 && level < 65536);
        Sym(((kind as u32) << 24) | ((node as u32) << 16) | level)
    }
    pub fn kind(self) -> SymKind {
        match self.0 >> 24 {
            0 => SymKind::B,
            1 => SymKind::H,
            2 => SymKind::T,
            _ => SymKind::X,
        }
    }
    pub fn node(self) -> usize {
        ((self.0 >> 16) & 0xff) as usize
    }
    pub fn level(self) -> u32 {
        self.0 & 0xffff
    }
    pub fn with_level(self, level: u32) -> Sym {
        Sym::new(self.kind(), self.node(), level)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind() {
            SymKind::B => "B",
            SymKind::H => "H",
            SymKind::T => "T",
            SymKind::X => "X",
        };
        write!(f, "{}({},{})", k, self.node() + 1, self.level())
    }
}

pub type Word = Vec<Sym>;

pub fn word_degree(w: &[Sym]) -> u32 {
    w.iter().map(|s| s.level()).sum()
}

#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct FreeElement {
    terms: BTreeMap<Word, HbarPoly>,
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FreeElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(Vec::new(), HbarPoly::one())
    }
    pub fn constant(c: HbarPoly) -> Self {
        Self::monomial(Vec::new(), c)
    }
    pub fn hbar(power: u32) -> Self {
        Self::constant(HbarPoly::hbar_pow(power))
    }
    pub fn monomial(w: Word, c: HbarPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(w, &c);
        out
    }
    pub fn sym(s: Sym) -> Self {
        Self::monomial(vec![s], HbarPoly::one())
    }
    /// B(i,r)
    pub fn b(i: usize, r: u32) -> Self {
        Self::sym(Sym::new(SymKind::B, i, r))
    }
    /// H(i,s); zero unless s is odd.
    pub fn h(i: usize, s: i64) -> Self {
        if s < 0 || s % 2 == 0 {
            Self::zero()
        } else {
            Self::sym(Sym::new(SymKind::H, i, s as u32))
        }
    }
    /// T(i,r); zero unless r is odd.
    pub fn t(i: usize, r: i64) -> Self {
        if r < 0 || r % 2 == 0 {
            Self::zero()
        } else {
            Self::sym(Sym::new(SymKind::T, i, r as u32))
        }
    }
    /// X(i,m)
    pub fn x(i: usize, m: u32) -> Self {
        Self::sym(Sym::new(SymKind::X, i, m))
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &HbarPoly)> {
        self.terms.iter()
    }
    pub fn coeff(&self, w: &[Sym]) -> HbarPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }
    pub fn add_term(&mut self, w: Word, c: &HbarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }
    pub fn add_assign(&mut self, o: &FreeElement) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c);
        }
    }
    pub fn add(&self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
    pub fn sub(&self, o: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
    pub fn neg(&self) -> FreeElement {
        self.scale(&-Rational::one())
    }
    pub fn scale(&self, c: &Rational) -> FreeElement {
        if c.is_zero() {
            return FreeElement::zero();
        }
        FreeElement {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v.scale(c))).collect(),
        }
    }
    pub fn scale_poly(&self, c: &HbarPoly) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &(v * c));
        }
        out
    }
    pub fn mul(&self, o: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.add_term(w, &(c1 * c2));
            }
        }
        out
    }
    /// [a,b] = ab − ba
    pub fn commutator(&self, o: &FreeElement) -> FreeElement {
        self.mul(o).sub(&o.mul(self))
    }
    /// {a,b} = ab + ba
    pub fn anticommutator(&self, o: &FreeElement) -> FreeElement {
        self.mul(o).add(&o.mul(self))
    }
    /// (degree, length) of each term: degree = ħ-power + Σ levels.
    pub fn bidegrees(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::new();
        for (w, c) in &self.terms {
            for (p, _) in c.terms() {
                out.push((p + word_degree(w), w.len()));
            }
        }
        out
    }
    /// The common degree if every term has the same one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let degs: Vec<u32> = self.bidegrees().into_iter().map(|d| d.0).collect();
        match degs.first() {
            None => Some(0),
            Some(d) if degs.iter().all(|x| x == d) => Some(*d),
            _ => None,
        }
    }
    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }
    pub fn min_length(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(0)
    }
    pub fn set_hbar_zero(&self) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &HbarPoly::constant(c.eval_zero()));
        }
        out
    }
    /// Keep only the ħ^p part of each coefficient.
    pub fn hbar_slice(&self, p: u32) -> FreeElement {
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &HbarPoly::monomial(p, c.coeff(p)));
        }
        out
    }
    /// Algebra homomorphism determined by an image for each symbol.
    pub fn substitute(&self, f: &dyn Fn(Sym) -> FreeElement) -> FreeElement {
        let mut cache: BTreeMap<Sym, FreeElement> = BTreeMap::new();
        let mut out = FreeElement::zero();
        for (w, c) in &self.terms {
            let mut acc = FreeElement::constant(c.clone());
            for s in w {
                let img = cache.entry(*s).or_insert_with(|| f(*s)).clone();
                acc = acc.mul(&img);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }
    /// Terms whose weight equals the maximum weight present.
    pub fn top_part(&self, weight: &dyn Fn(&[Sym], u32) -> i64) -> FreeElement {
        let mut best: Option<i64> = None;
        for (w, c) in &self.terms {
            for (p, _) in c.terms() {
                let x = weight(w, p);
                best = Some(best.map_or(x, |b: i64| b.max(x)));
            }
        }
        let mut out = FreeElement::zero();
        if let Some(b) = best {
            for (w, c) in &self.terms {
                for (p, v) in c.terms() {
                    if weight(w, p) == b {
                        out.add_term(w.clone(), &HbarPoly::monomial(p, v.clone()));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            for (p, v) in c.terms() {
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", rational_string(v))?;
                if p > 0 {
                    write!(f, "*ħ^{}", p)?;
                }
                for s in w {
                    write!(f, "*{}", s)?;
                }
            }
        }
        Ok(())
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Sum of the template over all orderings of the bound values.
pub fn sym(values: &[u32], template: &dyn Fn(&[u32]) -> FreeElement) -> FreeElement {
    let mut out = FreeElement::zero();
    for p in permutations(values.len()) {
        let v: Vec<u32> = p.iter().map(|i| values[*i]).collect();
        out.add_assign(&template(&v));
    }
    out
}

/// Sum of the template over the cyclic rotations of the bound values.
pub fn cyc(values: &[u32], template: &dyn Fn(&[u32]) -> FreeElement) -> FreeElement {
    let n = values.len();
    let mut out = FreeElement::zero();
    for s in 0..n {
        let v: Vec<u32> = (0..n).map(|i| values[(i + s) % n]).collect();
        out.add_assign(&template(&v));
    }
    out
}

pub fn permutation_list(n: usize) -> Vec<Vec<usize>> {
    permutations(n)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("coefficient at {0:?} lies outside the expansion window")]
    OutOfWindow(Vec<i32>),
    #[error("coefficient at {0:?} needs an unbounded sum")]
    Unbounded(Vec<i32>),
}

/// Generating series in several variables with free-algebra coefficients,
/// kept as an expression and evaluated coefficientwise on demand.
#[derive(Clone, Debug)]
pub enum FreeSeries {
    /// ħ d Σ_{r≥0} B(i,r) x^{−r−1}
    B { var: usize, node: usize, d: i64 },
    /// 1 + ħ d Σ_{r≥0} H(i,r) x^{−r−1}, even levels vanishing
    H { var: usize, node: usize, d: i64 },
    Const(FreeElement),
    /// Scalar series with its per-variable maximal exponents.
    Scalar(Arc<ScalarSeries>, Arc<Vec<i32>>),
    Prod(Vec<FreeSeries>),
    Sum(Vec<FreeSeries>),
}

type Range = (Option<i32>, i32);

impl FreeSeries {
    pub fn b(var: usize, node: usize, d: i64) -> Self {
        FreeSeries::B { var, node, d }
    }
    pub fn h(var: usize, node: usize, d: i64) -> Self {
        FreeSeries::H { var, node, d }
    }
    pub fn constant(x: FreeElement) -> Self {
        FreeSeries::Const(x)
    }
    pub fn scalar(s: ScalarSeries) -> Self {
        let hi = s.max_exponents().into_iter().map(|h| h.max(s.cutoff)).collect();
        FreeSeries::Scalar(Arc::new(s), Arc::new(hi))
    }
    pub fn mul(a: FreeSeries, b: FreeSeries) -> Self {
        FreeSeries::Prod(vec![a, b])
    }
    pub fn scaled(c: HbarPoly, a: FreeSeries) -> Self {
        FreeSeries::Prod(vec![FreeSeries::Const(FreeElement::constant(c)), a])
    }
    pub fn neg(a: FreeSeries) -> Self {
        Self::scaled(HbarPoly::constant(-Rational::one()), a)
    }
    pub fn commutator(a: FreeSeries, b: FreeSeries) -> Self {
        FreeSeries::Sum(vec![
            FreeSeries::Prod(vec![a.clone(), b.clone()]),
            Self::neg(FreeSeries::Prod(vec![b, a])),
        ])
    }
    pub fn anticommutator(a: FreeSeries, b: FreeSeries) -> Self {
        FreeSeries::Sum(vec![FreeSeries::Prod(vec![a.clone(), b.clone()]), FreeSeries::Prod(vec![b, a])])
    }
    pub fn sub(a: FreeSeries, b: FreeSeries) -> Self {
        FreeSeries::Sum(vec![a, Self::neg(b)])
    }

    /// Rename variables: variable v becomes perm[v].
    pub fn permute_vars(&self, perm: &[usize]) -> FreeSeries {
        match self {
            FreeSeries::B { var, node, d } => FreeSeries::B { var: perm[*var], node: *node, d: *d },
            FreeSeries::H { var, node, d } => FreeSeries::H { var: perm[*var], node: *node, d: *d },
            FreeSeries::Const(x) => FreeSeries::Const(x.clone()),
            FreeSeries::Scalar(s, _) => FreeSeries::scalar(ScalarSeries {
                cutoff: s.cutoff,
                poly: s.poly.permute_vars(perm),
            }),
            FreeSeries::Prod(v) => FreeSeries::Prod(v.iter().map(|x| x.permute_vars(perm)).collect()),
            FreeSeries::Sum(v) => FreeSeries::Sum(v.iter().map(|x| x.permute_vars(perm)).collect()),
        }
    }

    /// Per-variable exponent range (lower bound None = unbounded below).
    pub fn ranges(&self, nvars: usize) -> Vec<Range> {
        match self {
            FreeSeries::B { var, .. } | FreeSeries::H { var, .. } => {
                let top = if matches!(self, FreeSeries::B { .. }) { -1 } else { 0 };
                (0..nvars).map(|v| if v == *var { (None, top) } else { (Some(0), 0) }).collect()
            }
            FreeSeries::Const(_) => vec![(Some(0), 0); nvars],
            FreeSeries::Scalar(s, hi) => hi.iter().map(|h| (Some(s.cutoff), *h)).collect(),
            FreeSeries::Prod(v) => {
                let mut acc = vec![(Some(0), 0); nvars];
                for x in v {
                    for (a, b) in acc.iter_mut().zip(x.ranges(nvars)) {
                        a.0 = match (a.0, b.0) {
                            (Some(p), Some(q)) => Some(p + q),
                            _ => None,
                        };
                        a.1 += b.1;
                    }
                }
                acc
            }
            FreeSeries::Sum(v) => {
                let mut acc: Vec<Range> = vec![(Some(i32::MAX), i32::MIN); nvars];
                for x in v {
                    for (a, b) in acc.iter_mut().zip(x.ranges(nvars)) {
                        a.0 = match (a.0, b.0) {
                            (Some(p), Some(q)) => Some(p.min(q)),
                            _ => None,
                        };
                        a.1 = a.1.max(b.1);
                    }
                }
                acc
            }
        }
    }

    /// Coefficient of Π x_v^{e_v}.
    pub fn coefficient(&self, e: &[i32]) -> Result<FreeElement, SeriesError> {
        match self {
            FreeSeries::B { var, node, d } => {
                if e.iter().enumerate().any(|(v, x)| v != *var && *x != 0) || e[*var] > -1 {
                    return Ok(FreeElement::zero());
                }
                let r = (-e[*var] - 1) as u32;
                Ok(FreeElement::b(*node, r).scale_poly(&HbarPoly::monomial(1, Rational::from_integer((*d).into()))))
            }
            FreeSeries::H { var, node, d } => {
                if e.iter().enumerate().any(|(v, x)| v != *var && *x != 0) || e[*var] > 0 {
                    return Ok(FreeElement::zero());
                }
                if e[*var] == 0 {
                    return Ok(FreeElement::one());
                }
                let r = (-e[*var] - 1) as i64;
                Ok(FreeElement::h(*node, r).scale_poly(&HbarPoly::monomial(1, Rational::from_integer((*d).into()))))
            }
            FreeSeries::Const(x) => {
                if e.iter().all(|v| *v == 0) {
                    Ok(x.clone())
                } else {
                    Ok(FreeElement::zero())
                }
            }
            FreeSeries::Scalar(s, _) => match s.coeff(e) {
                Some(c) => Ok(FreeElement::constant(c)),
                None => Err(SeriesError::OutOfWindow(e.to_vec())),
            },
            FreeSeries::Sum(v) => {
                let mut out = FreeElement::zero();
                for x in v {
                    out.add_assign(&x.coefficient(e)?);
                }
                Ok(out)
            }
            FreeSeries::Prod(v) => product_coefficient(v, e),
        }
    }
}

fn product_coefficient(factors: &[FreeSeries], e: &[i32]) -> Result<FreeElement, SeriesError> {
    match factors.len() {
        0 => {
            return Ok(if e.iter().all(|x| *x == 0) { FreeElement::one() } else { FreeElement::zero() });
        }
        1 => return factors[0].coefficient(e),
        _ => {}
    }
    let nvars = e.len();
    let head = &factors[0];
    let rest = &factors[1..];
    let rest_ranges = {
        let prod = FreeSeries::Prod(rest.to_vec());
        prod.ranges(nvars)
    };
    let head_ranges = head.ranges(nvars);
    // Required exponent box for the head factor.
    let mut lo = Vec::with_capacity(nvars);
    let mut hi = Vec::with_capacity(nvars);
    for v in 0..nvars {
        let need_lo = e[v] - rest_ranges[v].1;
        let l = match head_ranges[v].0 {
            Some(h) => need_lo.max(h),
            None => need_lo,
        };
        let upper = rest_ranges[v].0.map(|r| e[v] - r);
        let h = match upper {
            Some(u) => u.min(head_ranges[v].1),
            None => head_ranges[v].1,
        };
        if let FreeSeries::Scalar(s, _) = head {
            if need_lo < s.cutoff && need_lo <= h {
                return Err(SeriesError::OutOfWindow(e.to_vec()));
            }
        }
        if l > h {
            return Ok(FreeElement::zero());
        }
        lo.push(l);
        hi.push(h);
    }
    let mut out = FreeElement::zero();
    if let FreeSeries::Scalar(s, _) = head {
        for (p, c) in s.poly.terms() {
            if p.iter().enumerate().all(|(v, x)| *x >= lo[v] && *x <= hi[v]) {
                let rest_e: Vec<i32> = e.iter().zip(p).map(|(a, b)| a - b).collect();
                let r = product_coefficient(rest, &rest_e)?;
                if !r.is_zero() {
                    out.add_assign(&r.scale_poly(c));
                }
            }
        }
        return Ok(out);
    }
    let mut point = lo.clone();
    loop {
        let a = head.coefficient(&point)?;
        if !a.is_zero() {
            let rest_e: Vec<i32> = e.iter().zip(&point).map(|(x, y)| x - y).collect();
            let r = product_coefficient(rest, &rest_e)?;
            if !r.is_zero() {
                out.add_assign(&a.mul(&r));
            }
        }
        // advance odometer
        let mut v = 0;
        loop {
            if v == nvars {
                return Ok(out);
            }
            if point[v] < hi[v] {
                point[v] += 1;
                break;
            }
            point[v] = lo[v];
            v += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{expand_rational_region, int, DenFactor, MultiPoly};
    use proptest::prelude::*;

    #[test]
    fn commutators_and_grading() {
        let x = FreeElement::b(0, 0);
        assert!(x.commutator(&x).is_zero());
        assert_eq!(x.anticommutator(&x), x.mul(&x).scale(&int(2)));
        let t = FreeElement::hbar(1).mul(&FreeElement::b(0, 2)).mul(&FreeElement::h(0, 1));
        assert_eq!(t.bidegrees(), vec![(4, 2)]);
        assert!(FreeElement::h(0, 2).is_zero());
        assert!(FreeElement::h(0, -1).is_zero());
        assert_eq!(format!("{}", t), "1*ħ^1*B(1,2)*H(1,1)");
    }

    #[test]
    fn sym_and_cyc_counts() {
        let one = |_: &[u32]| FreeElement::one();
        assert_eq!(sym(&[0, 1, 2], &one), FreeElement::one().scale(&int(6)));
        assert_eq!(cyc(&[0, 1, 2], &one), FreeElement::one().scale(&int(3)));
        let symmetric = |k: &[u32]| FreeElement::b(0, k[0] + k[1]);
        assert_eq!(sym(&[1, 2], &symmetric), FreeElement::b(0, 3).scale(&int(2)));
    }

    #[test]
    fn generating_series_coefficients() {
        let b = FreeSeries::b(0, 0, 2);
        assert_eq!(b.coefficient(&[-1]).unwrap(), FreeElement::b(0, 0).scale_poly(&HbarPoly::monomial(1, int(2))));
        let h = FreeSeries::h(0, 0, 1);
        assert_eq!(h.coefficient(&[0]).unwrap(), FreeElement::one());
        assert_eq!(h.coefficient(&[-2]).unwrap(), FreeElement::h(0, 1).scale_poly(&HbarPoly::hbar_pow(1)));
        assert!(h.coefficient(&[-1]).unwrap().is_zero());
    }

    #[test]
    fn series_product_is_convolution() {
        // b(u) b(v) coefficient of u^-1 v^-2 = ħ² B(1,0) B(1,1)
        let p = FreeSeries::mul(FreeSeries::b(0, 0, 1), FreeSeries::b(1, 0, 1));
        let c = p.coefficient(&[-1, -2]).unwrap();
        assert_eq!(c, FreeElement::b(0, 0).mul(&FreeElement::b(0, 1)).scale_poly(&HbarPoly::hbar_pow(2)));
        // 1/(u+v) · b(u): coefficient of u^-3 v^1 = Σ_k (-1)^k [v^k u^{-k-1}] · [u^{-3+k+1}] at k = 1
        let den = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1));
        let s = expand_rational_region(&MultiPoly::one(2), &[DenFactor::in_region(den, &[0, 1])], -8).unwrap();
        let q = FreeSeries::mul(FreeSeries::scalar(s), FreeSeries::b(0, 0, 1));
        let c = q.coefficient(&[-3, 1]).unwrap();
        assert_eq!(c, FreeElement::b(0, 0).scale_poly(&HbarPoly::monomial(1, int(-1))));
        assert!(matches!(q.coefficient(&[-12, 0]), Err(SeriesError::OutOfWindow(_))));
    }

    fn arb_elem() -> impl Strategy<Value = FreeElement> {
        proptest::collection::vec(
            (proptest::collection::vec((0usize..2, 0u32..3), 0..3), 0u32..2, -3i64..4),
            0..4,
        )
        .prop_map(|v| {
            let mut out = FreeElement::zero();
            for (w, p, c) in v {
                let word: Word = w.into_iter().map(|(i, r)| Sym::new(SymKind::B, i, r)).collect();
                out.add_term(word, &HbarPoly::monomial(p, int(c)));
            }
            out
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
            let jac = a.commutator(&b.commutator(&c))
                .add(&b.commutator(&c.commutator(&a)))
                .add(&c.commutator(&a.commutator(&b)));
            prop_assert!(jac.is_zero());
        }

        #[test]
        fn bidegree_additive(a in arb_elem(), b in arb_elem()) {
            let p = a.mul(&b);
            if let (Some(da), Some(db), Some(dp)) = (a.homogeneous_degree(), b.homogeneous_degree(), p.homogeneous_degree()) {
                if !p.is_zero() { prop_assert_eq!(dp, da + db); }
            }
        }
    }
}
