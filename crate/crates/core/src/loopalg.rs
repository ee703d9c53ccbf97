//! The loop algebra g[t,t⁻¹] with bounded t-powers, its involution ω, the
//! twisted generators, the degeneration elements and leading-term
//! extraction at t = 1 + ε.

use crate::currentalg::CurrentLieElement;
use crate::liealg::{LieAlgebra, LieElement};
use crate::scalars::{binom, int, laurent_substitute_t, rational_string, sign, LaurentT, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("t-power {0} outside bound {1}")]
    BoundOverflow(i64, i32),
    #[error("nonzero coefficient at ε-order {0} below the claimed order {1}")]
    BelowOrder(usize, usize),
    #[error("binomial form disagrees with closed form for {0}")]
    ClosedFormMismatch(String),
    #[error("index out of range: {0}")]
    Index(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct LoopElement {
    terms: BTreeMap<(usize, i32), Rational>,
}

impl LoopElement {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = ((usize, i32), &Rational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }
    pub fn coeff(&self, a: usize, k: i32) -> Rational {
        self.terms.get(&(a, k)).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn add_term(&mut self, key: (usize, i32), c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v);
        }
        out
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }
    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }
    fn max_abs_power(&self) -> i32 {
        self.terms.keys().map(|(_, k)| k.abs()).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct LoopAlgebra {
    pub lie: Arc<LieAlgebra>,
    pub bound: i32,
}

impl LoopAlgebra {
    pub fn new(lie: Arc<LieAlgebra>, bound: i32) -> Self {
        Self { lie, bound }
    }

    fn checked(&self, x: LoopElement) -> Result<LoopElement, LoopError> {
        let m = x.max_abs_power();
        if m > self.bound {
            Err(LoopError::BoundOverflow(m as i64, self.bound))
        } else {
            Ok(x)
        }
    }

    fn node(&self, i: usize) -> Result<(), LoopError> {
        if i < self.lie.rank() {
            Ok(())
        } else {
            Err(LoopError::Index(format!("node {i}")))
        }
    }

    /// g ⊗ p(t).
    pub fn from_lie_laurent(&self, g: &LieElement, p: &LaurentT) -> Result<LoopElement, LoopError> {
        let mut out = LoopElement::zero();
        for (a, c) in g.terms() {
            for (k, d) in p.terms() {
                out.add_term((a, k), &(c * d));
            }
        }
        self.checked(out)
    }

    pub fn monomial(&self, g: &LieElement, k: i32) -> Result<LoopElement, LoopError> {
        self.from_lie_laurent(g, &LaurentT::monomial(k, Rational::one()))
    }

    pub fn bracket(&self, x: &LoopElement, y: &LoopElement) -> Result<LoopElement, LoopError> {
        let mut out = LoopElement::zero();
        for ((a, ka), ca) in x.terms() {
            for ((b, kb), cb) in y.terms() {
                let tbl = self.lie.bracket_basis(a, b);
                let cab = ca * cb;
                for (t, c) in tbl {
                    out.add_term((*t, ka + kb), &(c * &cab));
                }
            }
        }
        self.checked(out)
    }

    /// ω: g t^k ↦ ω₀(g) t^{−k}.
    pub fn omega(&self, x: &LoopElement) -> LoopElement {
        let mut out = LoopElement::zero();
        for ((a, k), c) in x.terms() {
            out.add_term((self.lie.omega0_index(a), -k), &-c);
        }
        out
    }

    /// θ_{i,m} = h_i t^m − h_i t^{−m}
    pub fn theta(&self, i: usize, m: i32) -> Result<LoopElement, LoopError> {
        self.node(i)?;
        let h = self.lie.h(i);
        Ok(self.monomial(&h, m)?.sub(&self.monomial(&h, -m)?))
    }

    /// b_{i,k} = f_i t^{−k} − e_i t^k
    pub fn b_gen(&self, i: usize, k: i32) -> Result<LoopElement, LoopError> {
        self.node(i)?;
        self.b_root(self.lie.rootsys.simple_index(i), k)
    }

    /// b_{β,k} = f_β t^{−k} − e_β t^k
    pub fn b_root(&self, root: usize, k: i32) -> Result<LoopElement, LoopError> {
        if root >= self.lie.num_positive() {
            return Err(LoopError::Index(format!("root {root}")));
        }
        Ok(self.monomial(&self.lie.f(root), -k)?.sub(&self.monomial(&self.lie.e(root), k)?))
    }

    /// g_{r,k} = Σ_s (−1)^{r−s} C(r,s) g t^{s+k}
    pub fn degeneration_element(&self, g: &LieElement, r: u32, k: i32) -> Result<LoopElement, LoopError> {
        let mut out = LoopElement::zero();
        for s in 0..=r {
            let c = sign((r - s) as i64) * binom(r as i64, s);
            out = out.add(&self.monomial(g, s as i32 + k)?.scale(&c));
        }
        Ok(out)
    }

    /// θ_{i,r,l} = Σ_s (−1)^{r−s} C(r,s) θ_{i,s+l}, checked against
    /// h_i (t−1)^r t^l − h_i (1−t)^r t^{−r−l}.
    pub fn theta_filtered(&self, i: usize, r: u32, l: i32) -> Result<LoopElement, LoopError> {
        let mut out = LoopElement::zero();
        for s in 0..=r {
            let c = sign((r - s) as i64) * binom(r as i64, s);
            out = out.add(&self.theta(i, s as i32 + l)?.scale(&c));
        }
        let closed = self.closed_form(&self.lie.h(i), &self.lie.h(i), r, l)?;
        if closed != out {
            return Err(LoopError::ClosedFormMismatch(format!("theta({i},{r},{l})")));
        }
        Ok(out)
    }

    /// β_{i,r,k} = Σ_s (−1)^{r−s} C(r,s) b_{i,s+k}, checked against
    /// f_i (1−t)^r t^{−r−k} − e_i (t−1)^r t^k.
    pub fn beta_filtered(&self, i: usize, r: u32, k: i32) -> Result<LoopElement, LoopError> {
        let mut out = LoopElement::zero();
        for s in 0..=r {
            let c = sign((r - s) as i64) * binom(r as i64, s);
            out = out.add(&self.b_gen(i, s as i32 + k)?.scale(&c));
        }
        let closed = self
            .closed_form(&self.lie.e_simple(i), &self.lie.f_simple(i), r, k)?
            .scale(&int(-1));
        if closed != out {
            return Err(LoopError::ClosedFormMismatch(format!("beta({i},{r},{k})")));
        }
        Ok(out)
    }

    /// x (t−1)^r t^k − y (1−t)^r t^{−r−k}
    fn closed_form(&self, x: &LieElement, y: &LieElement, r: u32, k: i32) -> Result<LoopElement, LoopError> {
        let a = &LaurentT::linear_pow(&int(1), &int(-1), r) * &LaurentT::monomial(k, int(1));
        let b = &LaurentT::linear_pow(&int(-1), &int(1), r) * &LaurentT::monomial(-(r as i32) - k, int(1));
        Ok(self.from_lie_laurent(x, &a)?.sub(&self.from_lie_laurent(y, &b)?))
    }

    /// β_{α,m,l}: nested bracket of β_{i,0,0} along the decomposition of α
    /// with innermost β_{i_k,m,l}.  All entries are Lie elements, so the
    /// commutator in U(g[t,t⁻¹]) is this Lie bracket.
    pub fn beta_root_filtered(&self, root: usize, m: u32, l: i32) -> Result<LoopElement, LoopError> {
        let seq = self.lie.rootsys.decomposition.get(root).ok_or(LoopError::Index(format!("root {root}")))?;
        let k = seq.len();
        let mut acc = self.beta_filtered(seq[k - 1], m, l)?;
        for i in seq[..k - 1].iter().rev() {
            acc = self.bracket(&self.beta_filtered(*i, 0, 0)?, &acc)?;
        }
        Ok(acc)
    }

    /// Substitute t = 1 + ε, require orders below r to vanish, and return
    /// the order-r coefficient as an element of g·u^r.
    pub fn kappa_leading_term(&self, x: &LoopElement, r: u32) -> Result<CurrentLieElement, LoopError> {
        let mut per_basis: BTreeMap<usize, LaurentT> = BTreeMap::new();
        for ((a, k), c) in x.terms() {
            per_basis.entry(a).or_default().add_term(k, c);
        }
        let mut out = CurrentLieElement::zero();
        for (a, p) in per_basis {
            let s = laurent_substitute_t(&p, r as usize);
            if let Some(v) = s.valuation() {
                if v < r as usize {
                    return Err(LoopError::BelowOrder(v, r as usize));
                }
            }
            out.add_term((a, r), &s.coeff(r as usize));
        }
        Ok(out)
    }

    /// [z_{r,k}, y_{s,l}] = [z,y]_{r+s,k+l}
    pub fn check_bracket_identity(&self, z: &LieElement, y: &LieElement, r: u32, s: u32, k: i32, l: i32) -> Result<bool, LoopError> {
        let lhs = self.bracket(&self.degeneration_element(z, r, k)?, &self.degeneration_element(y, s, l)?)?;
        let rhs = self.degeneration_element(&self.lie.bracket(z, y), r + s, k + l)?;
        Ok(lhs == rhs)
    }

    pub fn format(&self, x: &LoopElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .map(|((a, k), c)| format!("{}*{}t^{}", rational_string(c), self.lie.label_name(a), k))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_lie_algebra;
    use crate::rootdata::build_cartan;
    use proptest::prelude::*;

    fn lp(l: &str) -> LoopAlgebra {
        LoopAlgebra::new(Arc::new(build_lie_algebra(&build_cartan(l).unwrap()).unwrap()), 16)
    }

    #[test]
    fn generators_match_definitions_and_are_fixed() {
        let a = lp("A2");
        let g = &a.lie;
        let th = a.theta(0, 1).unwrap();
        assert_eq!(th.coeff(g.index(crate::liealg::BasisLabel::H(0)), 1), int(1));
        assert_eq!(th.coeff(g.index(crate::liealg::BasisLabel::H(0)), -1), int(-1));
        assert_eq!(a.omega(&th), th);
        let b0 = a.b_gen(1, 0).unwrap();
        assert_eq!(b0, a.monomial(&g.f_simple(1).sub(&g.e_simple(1)), 0).unwrap());
        for k in 0..g.num_positive() {
            for t in -2..=2 {
                let b = a.b_root(k, t).unwrap();
                assert_eq!(a.omega(&b), b);
            }
        }
        let b12 = a.b_root(2, 1).unwrap();
        let f12 = g.bracket(&g.f_simple(0), &g.f_simple(1));
        let e12 = g.omega0(&f12).scale(&int(-1));
        assert_eq!(b12, a.monomial(&f12, -1).unwrap().sub(&a.monomial(&e12, 1).unwrap()));
    }

    #[test]
    fn bound_overflow() {
        let a = LoopAlgebra::new(lp("A1").lie, 2);
        assert!(matches!(a.theta(0, 3), Err(LoopError::BoundOverflow(3, 2))));
    }

    #[test]
    fn degeneration_elements() {
        let a = lp("A1");
        let h = a.lie.h(0);
        assert_eq!(a.degeneration_element(&h, 0, 3).unwrap(), a.monomial(&h, 3).unwrap());
        assert_eq!(
            a.degeneration_element(&h, 1, 0).unwrap(),
            a.monomial(&h, 1).unwrap().sub(&a.monomial(&h, 0).unwrap())
        );
        let t1 = a.theta_filtered(0, 1, 1).unwrap();
        assert_eq!(t1, a.theta(0, 2).unwrap().sub(&a.theta(0, 1).unwrap()));
        assert_eq!(a.beta_filtered(0, 0, 2).unwrap(), a.b_gen(0, 2).unwrap());
    }

    #[test]
    fn leading_terms() {
        let a = lp("B2");
        let g = a.lie.clone();
        for i in 0..2 {
            for k in -2..=2 {
                let z = a.kappa_leading_term(&a.theta_filtered(i, 2, k).unwrap(), 2).unwrap();
                assert!(z.is_zero());
                let one = a.kappa_leading_term(&a.theta_filtered(i, 1, k).unwrap(), 1).unwrap();
                assert_eq!(one, CurrentLieElement::from_lie(&g.h(i).scale(&int(2)), 1));
                let b = a.kappa_leading_term(&a.beta_filtered(i, 2, k).unwrap(), 2).unwrap();
                assert_eq!(b, CurrentLieElement::from_lie(&g.f_simple(i).sub(&g.e_simple(i)), 2));
            }
        }
        assert!(matches!(
            a.kappa_leading_term(&a.beta_filtered(0, 1, 0).unwrap(), 2),
            Err(LoopError::BelowOrder(1, 2))
        ));
    }

    #[test]
    fn bracket_identity_examples() {
        let a = lp("A1");
        let g = &a.lie;
        assert!(a.check_bracket_identity(&g.e_simple(0), &g.f_simple(0), 1, 1, 0, 0).unwrap());
        assert!(a.check_bracket_identity(&g.h(0), &g.h(0), 2, 3, -1, 1).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn bracket_identity_random(p in 0usize..8, q in 0usize..8, r in 0u32..3, s in 0u32..3, k in -2i32..3, l in -2i32..3) {
            let a = lp("A2");
            let z = LieElement::basis(p);
            let y = LieElement::basis(q);
            prop_assert!(a.check_bracket_identity(&z, &y, r, s, k, l).unwrap());
        }

        #[test]
        fn omega_is_involution(p in 0usize..10, q in 0usize..10, k in -3i32..4, l in -3i32..4) {
            let a = lp("B2");
            let x = a.monomial(&LieElement::basis(p), k).unwrap();
            let y = a.monomial(&LieElement::basis(q), l).unwrap();
            prop_assert_eq!(a.omega(&a.omega(&x)), x.clone());
            prop_assert_eq!(a.omega(&a.bracket(&x, &y).unwrap()), a.bracket(&a.omega(&x), &a.omega(&y)).unwrap());
        }
    }
}
