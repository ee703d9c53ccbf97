//! Relation expressions kept as bracket trees, so that they can be expanded
//! in the free algebra or evaluated with Lie-algebra shortcuts in U(g[u]).

use crate::currentalg::{CurrentAlgebra, CurrentError, CurrentGen, CurrentLieElement, PolyCurrentElement, Straightener};
use crate::freealg::{permutation_list, FreeElement, Sym, SymKind};
use crate::scalars::{int, HbarPoly, Rational};
use num_traits::Zero;

#[derive(Clone, Debug)]
pub enum Expr {
    Gen(Sym),
    /// Scalar multiple of the unit.
    Unit(HbarPoly),
    Lin(Vec<(HbarPoly, Expr)>),
    Prod(Box<Expr>, Box<Expr>),
    Comm(Box<Expr>, Box<Expr>),
    Anti(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Lin(Vec::new())
    }
    pub fn b(i: usize, r: u32) -> Expr {
        Expr::Gen(Sym::new(SymKind::B, i, r))
    }
    /// H(i,s); zero for even or negative s.
    pub fn h(i: usize, s: i64) -> Expr {
        if s < 0 || s % 2 == 0 {
            Expr::zero()
        } else {
            Expr::Gen(Sym::new(SymKind::H, i, s as u32))
        }
    }
    pub fn t(i: usize, r: i64) -> Expr {
        if r < 0 || r % 2 == 0 {
            Expr::zero()
        } else {
            Expr::Gen(Sym::new(SymKind::T, i, r as u32))
        }
    }
    pub fn x(i: usize, m: u32) -> Expr {
        Expr::Gen(Sym::new(SymKind::X, i, m))
    }
    pub fn comm(a: Expr, b: Expr) -> Expr {
        Expr::Comm(Box::new(a), Box::new(b))
    }
    pub fn anti(a: Expr, b: Expr) -> Expr {
        Expr::Anti(Box::new(a), Box::new(b))
    }
    pub fn prod(a: Expr, b: Expr) -> Expr {
        Expr::Prod(Box::new(a), Box::new(b))
    }
    pub fn scaled(c: HbarPoly, a: Expr) -> Expr {
        Expr::Lin(vec![(c, a)])
    }
    pub fn times(c: Rational, a: Expr) -> Expr {
        Expr::Lin(vec![(HbarPoly::constant(c), a)])
    }
    pub fn sum(parts: Vec<Expr>) -> Expr {
        Expr::Lin(parts.into_iter().map(|e| (HbarPoly::one(), e)).collect())
    }
    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Lin(vec![(HbarPoly::one(), a), (HbarPoly::constant(int(-1)), b)])
    }
    /// Right-nested commutator [a₁,[a₂,…[a_{k−1},a_k]…]].
    pub fn nest(parts: Vec<Expr>) -> Expr {
        let mut it = parts.into_iter().rev();
        let mut acc = it.next().expect("nonempty nest");
        for a in it {
            acc = Expr::comm(a, acc);
        }
        acc
    }

    pub fn expand(&self) -> FreeElement {
        match self {
            Expr::Gen(s) => FreeElement::sym(*s),
            Expr::Unit(c) => FreeElement::constant(c.clone()),
            Expr::Lin(v) => {
                let mut out = FreeElement::zero();
                for (c, e) in v {
                    if !c.is_zero() {
                        out.add_assign(&e.expand().scale_poly(c));
                    }
                }
                out
            }
            Expr::Prod(a, b) => a.expand().mul(&b.expand()),
            Expr::Comm(a, b) => a.expand().commutator(&b.expand()),
            Expr::Anti(a, b) => a.expand().anticommutator(&b.expand()),
        }
    }

    /// Replace generators and map coefficients.
    pub fn map(&self, leaf: &dyn Fn(Sym) -> Expr, coeff: &dyn Fn(&HbarPoly) -> HbarPoly) -> Expr {
        match self {
            Expr::Gen(s) => leaf(*s),
            Expr::Unit(c) => Expr::Unit(coeff(c)),
            Expr::Lin(v) => Expr::Lin(v.iter().map(|(c, e)| (coeff(c), e.map(leaf, coeff))).collect()),
            Expr::Prod(a, b) => Expr::prod(a.map(leaf, coeff), b.map(leaf, coeff)),
            Expr::Comm(a, b) => Expr::comm(a.map(leaf, coeff), b.map(leaf, coeff)),
            Expr::Anti(a, b) => Expr::anti(a.map(leaf, coeff), b.map(leaf, coeff)),
        }
    }

    /// ħ ↦ 0, H(i,s) ↦ 2T(i,s), B(i,r) ↦ X(i,r).
    pub fn classical(&self) -> Expr {
        self.map(
            &|s| match s.kind() {
                SymKind::H => Expr::times(int(2), Expr::t(s.node(), s.level() as i64)),
                SymKind::B => Expr::x(s.node(), s.level()),
                _ => Expr::Gen(s),
            },
            &|c| HbarPoly::constant(c.eval_zero()),
        )
    }

    /// Image under ρ in U(g[u]); only T and X symbols and ħ-free
    /// coefficients are allowed.
    pub fn rho(&self, alg: &CurrentAlgebra) -> Result<PolyCurrentElement, CurrentError> {
        let mut st = Straightener::new(alg);
        Ok(self.rho_value(alg, &mut st)?.into_poly())
    }

    fn rho_value(&self, alg: &CurrentAlgebra, st: &mut Straightener) -> Result<Value, CurrentError> {
        Ok(match self {
            Expr::Gen(s) => {
                let g = match s.kind() {
                    SymKind::T => CurrentGen::T(s.node(), s.level()),
                    SymKind::X => CurrentGen::X(s.node(), s.level()),
                    _ => return Err(CurrentError::Precondition(format!("no realization for {}", s))),
                };
                Value::Lie(alg.rho(g)?)
            }
            Expr::Unit(c) => Value::Poly(PolyCurrentElement::constant(scalar(c)?)),
            Expr::Lin(v) => {
                let mut vals = Vec::with_capacity(v.len());
                for (c, e) in v {
                    let k = scalar(c)?;
                    if k.is_zero() {
                        continue;
                    }
                    vals.push((k, e.rho_value(alg, st)?));
                }
                if vals.iter().all(|(_, x)| matches!(x, Value::Lie(_))) {
                    let mut out = CurrentLieElement::zero();
                    for (k, x) in vals {
                        if let Value::Lie(l) = x {
                            out = out.add(&l.scale(&k));
                        }
                    }
                    Value::Lie(out)
                } else {
                    let mut out = PolyCurrentElement::zero();
                    for (k, x) in vals {
                        out = out.add(&x.into_poly().scale(&k));
                    }
                    Value::Poly(out)
                }
            }
            Expr::Comm(a, b) => match (a.rho_value(alg, st)?, b.rho_value(alg, st)?) {
                (Value::Lie(x), Value::Lie(y)) => Value::Lie(alg.lie_bracket(&x, &y)?),
                (x, y) => Value::Poly(st.commutator(&x.into_poly(), &y.into_poly())?),
            },
            Expr::Anti(a, b) => {
                let (x, y) = (a.rho_value(alg, st)?.into_poly(), b.rho_value(alg, st)?.into_poly());
                Value::Poly(st.anticommutator(&x, &y)?)
            }
            Expr::Prod(a, b) => {
                let (x, y) = (a.rho_value(alg, st)?.into_poly(), b.rho_value(alg, st)?.into_poly());
                Value::Poly(st.multiply(&x, &y)?)
            }
        })
    }
}

fn scalar(c: &HbarPoly) -> Result<Rational, CurrentError> {
    c.as_constant()
        .ok_or_else(|| CurrentError::Precondition(format!("coefficient {} depends on ħ", c)))
}

enum Value {
    Lie(CurrentLieElement),
    Poly(PolyCurrentElement),
}

impl Value {
    fn into_poly(self) -> PolyCurrentElement {
        match self {
            Value::Lie(l) => PolyCurrentElement::from_lie(&l),
            Value::Poly(p) => p,
        }
    }
}

/// Σ over all orderings of the bound values.
pub fn sym_expr(values: &[u32], template: &dyn Fn(&[u32]) -> Expr) -> Expr {
    Expr::sum(
        permutation_list(values.len())
            .into_iter()
            .map(|p| template(&p.iter().map(|i| values[*i]).collect::<Vec<_>>()))
            .collect(),
    )
}

/// Σ over cyclic rotations of the bound values.
pub fn cyc_expr(values: &[u32], template: &dyn Fn(&[u32]) -> Expr) -> Expr {
    let n = values.len();
    Expr::sum((0..n).map(|s| template(&(0..n).map(|i| values[(i + s) % n]).collect::<Vec<_>>())).collect())
}
