//! Exact scalars: rationals, polynomials in ħ, Laurent polynomials in t,
//! truncated expansions at t = 1 + ε, and multivariate Laurent series with
//! ħ-polynomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator factor is not invertible in the requested region: {0}")]
    NotInvertible(String),
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational, ScalarError> {
    if b.is_zero() {
        Err(ScalarError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

/// Binomial coefficient C(n, k) for integer `n` (possibly negative) and `k >= 0`.
pub fn binom(n: i64, k: u32) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k as i64 {
        acc = acc * int(n - j) / int(j + 1);
    }
    acc
}

pub fn sign(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn rational_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Polynomial in ħ with rational coefficients, keyed by ħ-exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct HbarPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl HbarPoly {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::constant(Rational::one())
    }
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }
    pub fn monomial(power: u32, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(power, c);
        }
        Self { coeffs }
    }
    /// ħ^power
    pub fn hbar_pow(power: u32) -> Self {
        Self::monomial(power, Rational::one())
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }
    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }
    pub fn coeff(&self, power: u32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }
    pub fn add_term(&mut self, power: u32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&power);
        }
    }
    pub fn add_assign_ref(&mut self, other: &HbarPoly) {
        for (k, v) in &other.coeffs {
            self.add_term(*k, v);
        }
    }
    pub fn scale(&self, c: &Rational) -> HbarPoly {
        if c.is_zero() {
            return HbarPoly::zero();
        }
        HbarPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
    pub fn shift(&self, by: u32) -> HbarPoly {
        HbarPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + by, v.clone())).collect(),
        }
    }
    /// Value at ħ = 0.
    pub fn eval_zero(&self) -> Rational {
        self.coeff(0)
    }
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, v) in &self.coeffs {
            acc += v * num_traits::pow(x.clone(), *k as usize);
        }
        acc
    }
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }
}

impl Add for &HbarPoly {
    type Output = HbarPoly;
    fn add(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &HbarPoly {
    type Output = HbarPoly;
    fn sub(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl Neg for &HbarPoly {
    type Output = HbarPoly;
    fn neg(self) -> HbarPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &HbarPoly {
    type Output = HbarPoly;
    fn mul(self, rhs: &HbarPoly) -> HbarPoly {
        let mut out = HbarPoly::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for HbarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", rational_string(v))?,
                _ => write!(f, "{}*ħ^{}", rational_string(v), k)?,
            }
        }
        Ok(())
    }
}

/// Laurent polynomial in t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LaurentT {
    coeffs: BTreeMap<i32, Rational>,
}

impl LaurentT {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn monomial(power: i32, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(power, &c);
        out
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeff(&self, power: i32) -> Rational {
        self.coeffs.get(&power).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }
    pub fn add_term(&mut self, power: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(power).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&power);
        }
    }
    pub fn scale(&self, c: &Rational) -> LaurentT {
        let mut out = LaurentT::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, &(v * c));
        }
        out
    }
    /// (a t + b)^n for n >= 0.
    pub fn linear_pow(a: &Rational, b: &Rational, n: u32) -> LaurentT {
        let mut out = LaurentT::zero();
        for j in 0..=n {
            let c = binom(n as i64, j)
                * num_traits::pow(a.clone(), j as usize)
                * num_traits::pow(b.clone(), (n - j) as usize);
            out.add_term(j as i32, &c);
        }
        out
    }
    pub fn min_power(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }
    pub fn max_power(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }
}

impl Add for &LaurentT {
    type Output = LaurentT;
    fn add(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, v);
        }
        out
    }
}

impl Sub for &LaurentT {
    type Output = LaurentT;
    fn sub(self, rhs: &LaurentT) -> LaurentT {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl Mul for &LaurentT {
    type Output = LaurentT;
    fn mul(self, rhs: &LaurentT) -> LaurentT {
        let mut out = LaurentT::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

/// Power series in ε truncated after `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSeries {
    coeffs: Vec<Rational>,
}

impl EpsSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }
    /// Smallest k with nonzero coefficient, if any within the truncation.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

/// Substitute t = 1 + ε and expand through ε^order.  Negative powers use
/// (1 + ε)^{-m} = Σ C(-m, j) ε^j.
pub fn laurent_substitute_t(p: &LaurentT, order: usize) -> EpsSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (k, c) in p.terms() {
        for (j, slot) in coeffs.iter_mut().enumerate() {
            *slot += c * binom(k as i64, j as u32);
        }
    }
    EpsSeries { coeffs }
}

/// Exponent vector: one entry per series variable plus a trailing ħ power.
pub type Monomial = Vec<i32>;

/// Finite Laurent polynomial in `nvars` variables with ħ-polynomial
/// coefficients.  Used both as numerators and as truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    pub nvars: usize,
    terms: BTreeMap<Vec<i32>, HbarPoly>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }
    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], HbarPoly::one())
    }
    pub fn monomial(exps: Vec<i32>, c: HbarPoly) -> Self {
        let nvars = exps.len();
        let mut out = Self::zero(nvars);
        out.add_term(exps, &c);
        out
    }
    /// c · ħ^h · Π x_v^{e_v}
    pub fn term(exps: &[i32], hbar: u32, c: Rational) -> Self {
        Self::monomial(exps.to_vec(), HbarPoly::monomial(hbar, c))
    }
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        Self::monomial(e, HbarPoly::one())
    }
    pub fn constant(nvars: usize, c: HbarPoly) -> Self {
        Self::monomial(vec![0; nvars], c)
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
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &HbarPoly)> {
        self.terms.iter()
    }
    pub fn coeff(&self, exps: &[i32]) -> HbarPoly {
        self.terms.get(exps).cloned().unwrap_or_default()
    }
    pub fn add_term(&mut self, exps: Vec<i32>, c: &HbarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(e) => {
                e.add_assign_ref(c);
                if e.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c.clone());
            }
        }
    }
    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
    pub fn scale(&self, c: &HbarPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &(v * c));
        }
        out
    }
    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
    /// Keep terms whose every variable exponent is at least `cutoff`.
    pub fn prune(&mut self, cutoff: i32) {
        self.terms.retain(|e, _| e.iter().all(|x| *x >= cutoff));
    }
    pub fn permute_vars(&self, perm: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (v, x) in e.iter().enumerate() {
                ne[perm[v]] = *x;
            }
            out.add_term(ne, c);
        }
        out
    }
}

/// A denominator factor together with the term it is expanded around.
#[derive(Clone, Debug)]
pub struct DenFactor {
    pub poly: MultiPoly,
    /// Exponent vector and ħ-power of the dominant term.
    pub dominant: (Vec<i32>, u32),
}

impl DenFactor {
    pub fn new(poly: MultiPoly, dominant: Vec<i32>, hbar: u32) -> Self {
        Self { poly, dominant: (dominant, hbar) }
    }

    /// Dominant term chosen by comparing exponents lexicographically along
    /// `order` (largest variable first), ħ counted as infinitesimal.
    pub fn in_region(poly: MultiPoly, order: &[usize]) -> Self {
        let mut best: Option<(Vec<i32>, u32)> = None;
        for (e, c) in poly.terms() {
            for (h, _) in c.terms() {
                let better = match &best {
                    None => true,
                    Some((be, bh)) => {
                        let key = |x: &Vec<i32>| order.iter().map(|v| x[*v]).collect::<Vec<_>>();
                        (key(e), -(h as i64)) > (key(be), -(*bh as i64))
                    }
                };
                if better {
                    best = Some((e.clone(), h));
                }
            }
        }
        let dominant = best.unwrap_or((vec![0; poly.nvars], 0));
        Self { poly, dominant }
    }
}

/// Truncated Laurent series in several variables.  Every stored exponent is
/// at least `cutoff`; coefficients with any exponent below it are unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    pub cutoff: i32,
    pub poly: MultiPoly,
}

impl ScalarSeries {
    pub fn nvars(&self) -> usize {
        self.poly.nvars
    }
    pub fn coeff(&self, exps: &[i32]) -> Option<HbarPoly> {
        if exps.iter().any(|x| *x < self.cutoff) {
            None
        } else {
            Some(self.poly.coeff(exps))
        }
    }
    /// Product; the result is valid on the smaller of the two windows.
    pub fn mul(&self, other: &ScalarSeries) -> ScalarSeries {
        let cutoff = self.cutoff.max(other.cutoff);
        let mut poly = self.poly.mul(&other.poly);
        poly.prune(cutoff);
        ScalarSeries { cutoff, poly }
    }
    pub fn add(&self, other: &ScalarSeries) -> ScalarSeries {
        let cutoff = self.cutoff.max(other.cutoff);
        let mut poly = self.poly.add(&other.poly);
        poly.prune(cutoff);
        ScalarSeries { cutoff, poly }
    }
    /// Largest exponent per variable among stored terms.
    pub fn max_exponents(&self) -> Vec<i32> {
        let mut m = vec![i32::MIN; self.poly.nvars];
        for (e, _) in self.poly.terms() {
            for (v, x) in e.iter().enumerate() {
                m[v] = m[v].max(*x);
            }
        }
        m
    }
}

/// Expand num / Π dens as a Laurent series, each factor expanded as a
/// geometric series around its dominant term, and keep every term whose
/// variable exponents are all at least `cutoff`.
pub fn expand_rational_region(
    num: &MultiPoly,
    dens: &[DenFactor],
    cutoff: i32,
) -> Result<ScalarSeries, ScalarError> {
    let nvars = num.nvars;
    let mut acc = num.clone();
    for f in dens {
        if f.poly.nvars != nvars {
            return Err(ScalarError::VarMismatch(f.poly.nvars, nvars));
        }
        let inv = invert_factor(f, cutoff)?;
        acc = acc.mul(&inv);
        acc.prune(cutoff - expansion_margin(cutoff));
    }
    acc.prune(cutoff);
    Ok(ScalarSeries { cutoff, poly: acc })
}

fn expansion_margin(cutoff: i32) -> i32 {
    2 * cutoff.abs() + 8
}

fn invert_factor(f: &DenFactor, cutoff: i32) -> Result<MultiPoly, ScalarError> {
    let nvars = f.poly.nvars;
    let (dom_e, dom_h) = &f.dominant;
    let dom_c = f.poly.coeff(dom_e).coeff(*dom_h);
    if dom_c.is_zero() {
        return Err(ScalarError::NotInvertible("dominant term absent".into()));
    }
    if *dom_h != 0 {
        return Err(ScalarError::NotInvertible("dominant term carries ħ".into()));
    }
    let rest = f.poly.sub(&MultiPoly::term(dom_e, 0, dom_c.clone()));
    if rest.is_zero() && dom_e.iter().any(|x| *x != 0) {
        return Err(ScalarError::NotInvertible("bare monomial factor".into()));
    }
    let neg_dom: Vec<i32> = dom_e.iter().map(|x| -x).collect();
    let inv_dom = MultiPoly::term(&neg_dom, 0, Rational::one() / &dom_c);
    // ratio = -rest / dominant
    let ratio = rest.mul(&inv_dom).scale(&HbarPoly::constant(-Rational::one()));
    let pivot = (0..nvars).find(|v| ratio.terms().all(|(e, _)| e[*v] < 0));
    if !ratio.is_zero() && pivot.is_none() {
        return Err(ScalarError::NotInvertible(
            "no variable dominates every correction term".into(),
        ));
    }
    let bound = cutoff.abs() + expansion_margin(cutoff) + dom_e.iter().map(|x| x.abs()).sum::<i32>();
    let mut series = MultiPoly::one(nvars);
    let mut power = MultiPoly::one(nvars);
    for _ in 0..bound {
        power = power.mul(&ratio);
        power.prune(cutoff - expansion_margin(cutoff));
        if power.is_zero() {
            break;
        }
        series = series.add(&power);
    }
    Ok(series.mul(&inv_dom))
}

impl Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<i32>, &HbarPoly)> = self.terms.iter().collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_normalizes() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert!(checked_div(&q(1, 1), &q(0, 1)).is_err());
    }

    #[test]
    fn hbar_poly_arithmetic() {
        let a = &HbarPoly::one() + &HbarPoly::hbar_pow(1);
        let sq = &a * &a;
        assert_eq!(sq.coeff(0), int(1));
        assert_eq!(sq.coeff(1), int(2));
        assert_eq!(sq.coeff(2), int(1));
        assert_eq!(sq.eval_zero(), int(1));
        assert!((&a - &a).is_zero());
        assert_eq!(format!("{}", sq), "1 + 2*ħ^1 + 1*ħ^2");
    }

    #[test]
    fn laurent_expansion_matches_binomial_example() {
        // t^-1 at t = 1 + ε through ε^3: 1 - ε + ε² - ε³
        let s = laurent_substitute_t(&LaurentT::monomial(-1, int(1)), 3);
        assert_eq!(s.coeffs(), &[int(1), int(-1), int(1), int(-1)]);
    }

    #[test]
    fn closed_form_theta_starts_at_order_r() {
        // (t-1)^3 t^k - (1-t)^3 t^{-3-k} vanishes to order 3 with leading coefficient 2.
        for k in -2..=2 {
            let a = &LaurentT::linear_pow(&int(1), &int(-1), 3) * &LaurentT::monomial(k, int(1));
            let b = &LaurentT::linear_pow(&int(-1), &int(1), 3) * &LaurentT::monomial(-3 - k, int(1));
            let s = laurent_substitute_t(&(&a - &b), 5);
            assert_eq!(s.valuation(), Some(3));
            assert_eq!(s.coeff(3), int(2));
        }
    }

    #[test]
    fn geometric_expansion_of_u_plus_v() {
        // 1/(u+v) in |v|<|u| = Σ (-1)^k v^k u^{-k-1}
        let num = MultiPoly::one(2);
        let den = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1));
        let f = DenFactor::in_region(den, &[0, 1]);
        let s = expand_rational_region(&num, &[f], -6).unwrap();
        for k in 0..5 {
            assert_eq!(s.coeff(&[-k - 1, k]).unwrap(), HbarPoly::constant(sign(k as i64)));
        }
        assert!(s.coeff(&[-1, 1]).unwrap().is_zero());
        assert!(s.coeff(&[-7, 0]).is_none());
    }

    #[test]
    fn bare_monomial_is_rejected() {
        let den = MultiPoly::var(2, 1);
        let f = DenFactor::in_region(den, &[0, 1]);
        assert!(matches!(
            expand_rational_region(&MultiPoly::one(2), &[f], -4),
            Err(ScalarError::NotInvertible(_))
        ));
    }

    #[test]
    fn expansion_times_denominator_is_one() {
        // (4u² - ħ²) · expansion(1/(4u² - ħ²)) = 1 in the trusted window.
        let den = MultiPoly::term(&[2], 0, int(4)).add(&MultiPoly::term(&[0], 2, int(-1)));
        let f = DenFactor::new(den.clone(), vec![2], 0);
        let s = expand_rational_region(&MultiPoly::one(1), &[f], -12).unwrap();
        let mut prod = den.mul(&s.poly);
        prod.prune(-10);
        assert_eq!(prod, MultiPoly::one(1));
    }

    proptest! {
        #[test]
        fn hbar_poly_ring_laws(a in proptest::collection::vec(-5i64..5, 0..4),
                               b in proptest::collection::vec(-5i64..5, 0..4),
                               c in proptest::collection::vec(-5i64..5, 0..4)) {
            let mk = |v: &Vec<i64>| {
                let mut p = HbarPoly::zero();
                for (i, x) in v.iter().enumerate() { p.add_term(i as u32, &int(*x)); }
                p
            };
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn substitution_is_multiplicative(a in -4i32..4, b in -4i32..4) {
            let pa = LaurentT::monomial(a, int(1));
            let pb = LaurentT::monomial(b, int(1));
            let sa = laurent_substitute_t(&pa, 4);
            let sb = laurent_substitute_t(&pb, 4);
            let sab = laurent_substitute_t(&(&pa * &pb), 4);
            for n in 0..=4usize {
                let mut conv = Rational::zero();
                for j in 0..=n { conv += sa.coeff(j) * sb.coeff(n - j); }
                prop_assert_eq!(conv, sab.coeff(n));
            }
        }
    }
}
