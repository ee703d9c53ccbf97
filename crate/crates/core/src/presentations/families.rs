//! Relation families of the twisted current algebra and of the twisted
//! Yangian, instantiated at explicit indices.

use super::expr::{cyc_expr, sym_expr, Expr};
use crate::freealg::FreeElement;
use crate::rootdata::CartanData;
use crate::scalars::{binom, int, q, sign, HbarPoly, Rational};

use serde::{Deserialize, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{family:?} needs c_ij = {need} at ({i},{j}), found {found}")]
    CartanMismatch { family: Family, i: usize, j: usize, need: i64, found: i64 },
    #[error("malformed indices for {0:?}: {1}")]
    Indices(Family, String),
    #[error("{0:?} instance is not homogeneous")]
    Inhomogeneous(Family),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Classical1,
    Classical2,
    Classical3,
    Classical4Prime,
    Classical4,
    Classical5,
    Classical6,
    Classical7a,
    Classical7,
    Classical8,
    Classical9,
    /// [x_{i,s}, x_{i,r}] for s, r even.
    ClassicalEvenCommute,
    /// Shifted Cartan currents t̃ for c_ij = −2; variant in k[0].
    ClassicalTilde,
    Ty0,
    Ty5,
    Ty1,
    Ty2,
    Ty3,
    Ty4,
    Ty6,
    FSerre0,
    FSerre1,
    FSerre2,
    TyG2_1,
    TyG2_2,
    BbAlt,
    BhAlt,
}

impl Family {
    pub fn is_classical(self) -> bool {
        use Family::*;
        matches!(
            self,
            Classical1
                | Classical2
                | Classical3
                | Classical4Prime
                | Classical4
                | Classical5
                | Classical6
                | Classical7a
                | Classical7
                | Classical8
                | Classical9
                | ClassicalEvenCommute
                | ClassicalTilde
        )
    }

    /// Required off-diagonal Cartan entry, if the family is Serre-type.
    pub fn required_cij(self) -> Option<i64> {
        use Family::*;
        match self {
            Classical4Prime | Classical7a | Ty3 | FSerre0 => Some(0),
            Classical4 | Classical7 | Ty4 | FSerre1 | TyG2_1 => Some(-1),
            Classical5 | Classical8 | Ty6 | FSerre2 | ClassicalTilde => Some(-2),
            Classical6 | Classical9 | TyG2_2 => Some(-3),
            _ => None,
        }
    }

    /// Number of k-indices used.
    pub fn k_len(self) -> usize {
        use Family::*;
        match self {
            Classical4Prime | ClassicalTilde => 1,
            Classical4 | Ty4 => 2,
            Classical5 | Ty6 => 3,
            Classical6 => 4,
            _ => 0,
        }
    }

    pub fn name(self) -> String {
        serde_json::to_value(self).unwrap().as_str().unwrap().to_string()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Index tuple; fields that a family does not use are left at zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelIndices {
    pub i: usize,
    pub j: usize,
    pub r: u32,
    pub s: u32,
    pub k: Vec<u32>,
}

impl RelIndices {
    pub fn new(i: usize, j: usize, r: u32, s: u32, k: &[u32]) -> Self {
        Self { i, j, r, s, k: k.to_vec() }
    }
    pub fn pair(i: usize, j: usize) -> Self {
        Self { i, j, ..Default::default() }
    }
    pub fn with_r(mut self, r: u32) -> Self {
        self.r = r;
        self
    }
    pub fn with_s(mut self, s: u32) -> Self {
        self.s = s;
        self
    }
    pub fn with_k(mut self, k: &[u32]) -> Self {
        self.k = k.to_vec();
        self
    }
}

impl fmt::Display for RelIndices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i={} j={} r={} s={} k={:?}", self.i + 1, self.j + 1, self.r, self.s, self.k)
    }
}

fn as_string<S: Serializer>(x: &FreeElement, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationInstance {
    pub family: Family,
    pub cartan: CartanData,
    pub indices: RelIndices,
    /// LHS − RHS
    #[serde(serialize_with = "as_string")]
    pub element: FreeElement,
    #[serde(skip)]
    pub expr: Expr,
}

fn c(n: i64) -> HbarPoly {
    HbarPoly::constant(int(n))
}
fn cq(x: Rational) -> HbarPoly {
    HbarPoly::constant(x)
}
fn hb(p: u32, x: Rational) -> HbarPoly {
    HbarPoly::monomial(p, x)
}
fn odd(n: u32) -> bool {
    n % 2 == 1
}

pub fn instantiate(family: Family, cartan: &CartanData, idx: &RelIndices) -> Result<RelationInstance, PresentationError> {
    use Family::*;
    let n = cartan.rank();
    let bad = |m: &str| PresentationError::Indices(family, m.to_string());
    if idx.i >= n || idx.j >= n {
        return Err(bad("node out of range"));
    }
    if idx.k.len() != family.k_len() {
        return Err(bad("wrong number of k indices"));
    }
    let (i, j, r, s) = (idx.i, idx.j, idx.r, idx.s);
    let cij = cartan.cij(i, j);
    if let Some(need) = family.required_cij() {
        if i == j || cij != need {
            return Err(PresentationError::CartanMismatch { family, i, j, need, found: cij });
        }
    }
    let di = int(cartan.di(i));
    let cr = int(cij);
    let delta = i == j;
    let k = &idx.k;

    let expr = match family {
        Classical1 => {
            if !odd(r) || !odd(s) {
                return Err(bad("levels of t must be odd"));
            }
            Expr::comm(Expr::t(i, r as i64), Expr::t(j, s as i64))
        }
        Classical2 => {
            if !odd(r) {
                return Err(bad("level of t must be odd"));
            }
            // [t_{i,r}, x_{j,m}] − c_ij x_{j,m+r}, m = s
            Expr::sub(
                Expr::comm(Expr::t(i, r as i64), Expr::x(j, s)),
                Expr::times(cr.clone(), Expr::x(j, s + r)),
            )
        }
        Classical3 => {
            // k = s, m = r
            let lhs = Expr::sub(
                Expr::comm(Expr::x(i, s), Expr::x(j, r + 1)),
                Expr::comm(Expr::x(i, s + 1), Expr::x(j, r)),
            );
            if delta {
                let coef = int(2) * (sign(s as i64) + sign(r as i64));
                Expr::sub(lhs, Expr::times(coef, Expr::t(i, (r + s + 1) as i64)))
            } else {
                lhs
            }
        }
        Classical4Prime => Expr::comm(Expr::x(i, k[0]), Expr::x(j, r)),
        Classical4 => {
            let lhs = sym_expr(k, &|v| Expr::nest(vec![Expr::x(i, v[0]), Expr::x(i, v[1]), Expr::x(j, r)]));
            let coef = -(sign(k[0] as i64) + sign(k[1] as i64));
            Expr::sub(lhs, Expr::times(coef, Expr::x(j, k[0] + k[1] + r)))
        }
        Classical5 => {
            let kk = k[0] + k[1] + k[2];
            let lhs = sym_expr(k, &|v| {
                Expr::nest(vec![Expr::x(i, v[0]), Expr::x(i, v[1]), Expr::x(i, v[2]), Expr::x(j, r)])
            });
            let rhs = sym_expr(k, &|v| {
                Expr::times(int(4) * -sign(v[0] as i64), Expr::comm(Expr::x(i, kk), Expr::x(j, r)))
            });
            Expr::sub(lhs, rhs)
        }
        Classical6 => {
            let kk: u32 = k.iter().sum();
            let lhs = sym_expr(k, &|v| {
                Expr::nest(vec![
                    Expr::x(i, v[0]),
                    Expr::x(i, v[1]),
                    Expr::x(i, v[2]),
                    Expr::x(i, v[3]),
                    Expr::x(j, r),
                ])
            });
            let rhs = sym_expr(k, &|v| {
                Expr::sum(vec![
                    Expr::times(
                        int(10) * -sign(v[1] as i64),
                        Expr::nest(vec![Expr::x(i, v[0]), Expr::x(i, v[1] + v[2] + v[3]), Expr::x(j, r)]),
                    ),
                    Expr::times(int(-9) * sign((v[0] + v[1]) as i64), Expr::x(j, kk + r)),
                ])
            });
            Expr::sub(lhs, rhs)
        }
        Classical7a => Expr::comm(Expr::x(i, 0), Expr::x(j, 0)),
        Classical7 => Expr::sum(vec![Expr::nest(vec![Expr::x(i, 0), Expr::x(i, 0), Expr::x(j, 0)]), Expr::x(j, 0)]),
        Classical8 => Expr::sum(vec![
            Expr::nest(vec![Expr::x(i, 0), Expr::x(i, 0), Expr::x(i, 0), Expr::x(j, 0)]),
            Expr::times(int(4), Expr::comm(Expr::x(i, 0), Expr::x(j, 0))),
        ]),
        Classical9 => Expr::sum(vec![
            Expr::nest(vec![Expr::x(i, 0), Expr::x(i, 0), Expr::x(i, 0), Expr::x(i, 0), Expr::x(j, 0)]),
            Expr::times(int(10), Expr::nest(vec![Expr::x(i, 0), Expr::x(i, 0), Expr::x(j, 0)])),
            Expr::times(int(9), Expr::x(j, 0)),
        ]),
        ClassicalEvenCommute => {
            if i != j || odd(r) || odd(s) {
                return Err(bad("needs i = j and even levels"));
            }
            Expr::comm(Expr::x(i, s), Expr::x(i, r))
        }
        ClassicalTilde => {
            if !odd(r) {
                return Err(bad("level of t must be odd"));
            }
            let tj = Expr::sum(vec![Expr::t(j, r as i64), Expr::times(q(1, 2), Expr::t(i, r as i64))]);
            let ti = Expr::sum(vec![Expr::t(i, r as i64), Expr::t(j, r as i64)]);
            match k[0] {
                0 => Expr::sub(Expr::comm(tj, Expr::x(j, s)), Expr::x(j, s + r)),
                1 => Expr::comm(tj, Expr::x(i, s)),
                2 => Expr::sub(Expr::comm(ti, Expr::x(i, s)), Expr::x(i, s + r)),
                3 => Expr::comm(ti, Expr::x(j, s)),
                _ => return Err(bad("variant must be 0..3")),
            }
        }
        Ty0 => {
            if !odd(r) || !odd(s) {
                return Err(bad("levels of h must be odd"));
            }
            Expr::comm(Expr::h(i, s as i64), Expr::h(j, r as i64))
        }
        Ty5 => Expr::sub(
            Expr::comm(Expr::h(i, 1), Expr::b(j, r)),
            Expr::times(int(2) * &cr, Expr::b(j, r + 1)),
        ),
        Ty1 => {
            if !odd(s) {
                return Err(bad("level of h must be odd"));
            }
            let hs = Expr::h(i, s as i64);
            Expr::Lin(vec![
                (c(1), Expr::comm(Expr::b(j, r), Expr::h(i, s as i64 + 2))),
                (c(-1), Expr::comm(Expr::b(j, r + 2), hs.clone())),
                (hb(1, &di * &cr), Expr::anti(Expr::b(j, r + 1), hs.clone())),
                (hb(2, -(&di * &di * &cr * &cr) / int(4)), Expr::comm(Expr::b(j, r), hs)),
            ])
        }
        Ty2 => {
            let mut parts = vec![
                (c(1), Expr::comm(Expr::b(i, s), Expr::b(j, r + 1))),
                (c(-1), Expr::comm(Expr::b(i, s + 1), Expr::b(j, r))),
                (hb(1, &di * &cr / int(2)), Expr::anti(Expr::b(j, r), Expr::b(i, s))),
            ];
            if delta {
                parts.push((cq(int(-2) * sign(s as i64)), Expr::h(i, (r + s + 1) as i64)));
            }
            Expr::Lin(parts)
        }
        Ty3 => Expr::comm(Expr::b(i, s), Expr::b(j, r)),
        Ty4 => ty4(i, j, r, k[0], k[1], &di),
        Ty6 => ty6(i, j, r, k, &di),
        FSerre0 => Expr::comm(Expr::b(i, 0), Expr::b(j, 0)),
        FSerre1 => Expr::sum(vec![Expr::nest(vec![Expr::b(i, 0), Expr::b(i, 0), Expr::b(j, 0)]), Expr::b(j, 0)]),
        FSerre2 => Expr::sum(vec![
            Expr::nest(vec![Expr::b(i, 0), Expr::b(i, 0), Expr::b(i, 0), Expr::b(j, 0)]),
            Expr::times(int(4), Expr::comm(Expr::b(i, 0), Expr::b(j, 0))),
        ]),
        TyG2_1 => {
            if cartan.cij(j, i) != -3 {
                return Err(bad("needs c_ji = -3"));
            }
            Expr::sum(vec![Expr::nest(vec![Expr::b(i, 0), Expr::b(i, 0), Expr::b(j, r)]), Expr::b(j, r)])
        }
        TyG2_2 => {
            if cartan.cij(j, i) != -1 {
                return Err(bad("needs c_ji = -1"));
            }
            Expr::sum(vec![
                Expr::nest(vec![Expr::b(i, 0), Expr::b(i, 0), Expr::b(i, 0), Expr::b(i, 0), Expr::b(j, r)]),
                Expr::times(int(10), Expr::nest(vec![Expr::b(i, 0), Expr::b(i, 0), Expr::b(j, r)])),
                Expr::times(int(9), Expr::b(j, r)),
            ])
        }
        BbAlt => {
            if i != j || s > r + 1 {
                return Err(bad("needs i = j and s <= r + 1"));
            }
            let mut parts = vec![(c(1), Expr::comm(Expr::b(i, s), Expr::b(i, r + 1)))];
            for t in 0..(r + 1).saturating_sub(s) {
                parts.push((hb(1, di.clone()), Expr::prod(Expr::b(i, r - t), Expr::b(i, s + t))));
            }
            parts.push((cq(-sign(s as i64)), Expr::h(i, (r + s + 1) as i64)));
            Expr::Lin(parts)
        }
        BhAlt => {
            if !odd(s) {
                return Err(bad("level of h must be odd"));
            }
            // [b_{j,r}, h_{i,s}] and its correction sums
            let mut parts = vec![(c(1), Expr::comm(Expr::b(j, r), Expr::h(i, s as i64)))];
            for t in 1..=s / 2 {
                let h = Expr::h(i, (s - 2 * t) as i64);
                parts.push((hb(1, &di * &cr), Expr::anti(Expr::b(j, r + 2 * t - 1), h.clone())));
                parts.push((hb(2, -(&di * &di * &cr * &cr) / int(4)), Expr::comm(Expr::b(j, r + 2 * t - 2), h)));
            }
            parts.push((cq(int(2) * &cr), Expr::b(j, r + s)));
            Expr::Lin(parts)
        }
    };
    let element = expr.expand();
    if element.homogeneous_degree().is_none() {
        return Err(PresentationError::Inhomogeneous(family));
    }
    Ok(RelationInstance { family, cartan: cartan.clone(), indices: idx.clone(), element, expr })
}

/// Current Serre relation for c_ij = −1.
fn ty4(i: usize, j: usize, r: u32, k1: u32, k2: u32, di: &Rational) -> Expr {
    let lhs = sym_expr(&[k1, k2], &|v| Expr::nest(vec![Expr::b(i, v[0]), Expr::b(i, v[1]), Expr::b(j, r)]));
    let kk = k1 + k2;
    if kk % 2 == 1 {
        return lhs;
    }
    let half = di / int(2);
    let mut rhs = vec![(hb(kk, int(2) * half.pow(kk as i32)), Expr::b(j, r))];
    for t in 0..kk / 2 {
        let h = Expr::h(i, (kk - 2 * t - 1) as i64);
        rhs.push((hb(2 * t, half.pow((2 * t) as i32)), Expr::comm(Expr::b(j, r + 1), h.clone())));
        let w = di.pow((2 * t + 1) as i32) / int(4).pow(t as i32);
        rhs.push((hb(2 * t + 1, w), Expr::anti(h, Expr::b(j, r))));
    }
    let sgn = -sign(k1 as i64);
    Expr::Lin(vec![(c(1), lhs), (cq(-sgn), Expr::Lin(rhs))])
}

/// Current Serre relation for c_ij = −2.
fn ty6(i: usize, j: usize, r: u32, k: &[u32], di: &Rational) -> Expr {
    let lhs = sym_expr(k, &|v| {
        Expr::nest(vec![Expr::b(i, v[0]), Expr::b(i, v[1]), Expr::b(i, v[2]), Expr::b(j, r)])
    });
    let first = cyc_expr(k, &|v| {
        let (k1, k2, k3) = (v[0], v[1], v[2]);
        let mut parts = Vec::new();
        let mut s = 0u32;
        // h level k2+k3−2s−1 must stay positive
        while 2 * s < k2 + k3 {
            let m = (k2 + k3 - 2 * s - 1) as i64;
            for p in 0..=s {
                let coef = sign((k3 + p + 1) as i64) * binom(s as i64, p) / int(3).pow((p + 1) as i32);
                let h = || Expr::h(i, m);
                let a = Expr::b(i, k1 + 2 * p);
                let a1 = Expr::b(i, k1 + 2 * p + 1);
                let brace = Expr::Lin(vec![
                    (c(3), Expr::comm(Expr::comm(a.clone(), Expr::b(j, r + 1)), h())),
                    (c(1), Expr::comm(Expr::comm(a1.clone(), Expr::b(j, r)), h())),
                    (c(6), Expr::comm(a.clone(), Expr::comm(Expr::b(j, r + 1), h()))),
                    (c(2), Expr::comm(a1, Expr::comm(Expr::b(j, r), h()))),
                    (hb(1, int(3) * di), Expr::comm(Expr::anti(a.clone(), h()), Expr::b(j, r))),
                    (hb(1, int(9) * di), Expr::comm(a, Expr::anti(h(), Expr::b(j, r)))),
                ]);
                parts.push((hb(2 * s - 2 * p, coef), brace));
            }
            s += 1;
        }
        Expr::Lin(parts)
    });
    let second = cyc_expr(k, &|v| {
        let (k1, k2, k3) = (v[0], v[1], v[2]);
        if (k2 + k3) % 2 == 1 {
            return Expr::zero();
        }
        let half = (k2 + k3) / 2;
        let parts = (0..=half)
            .map(|p| {
                let coef = int(8) * sign((k3 + p + 1) as i64) * binom(half as i64, p) / int(3).pow(p as i32);
                (hb(k2 + k3 - 2 * p, coef), Expr::comm(Expr::b(i, k1 + 2 * p), Expr::b(j, r)))
            })
            .collect();
        Expr::Lin(parts)
    });
    Expr::Lin(vec![(c(1), lhs), (c(-1), first), (c(-1), second)])
}

/// b_{α,r}: nested commutator along the stored decomposition of α.
pub fn b_alpha_expr(decomposition: &[usize], r: u32) -> Expr {
    let k = decomposition.len();
    let mut parts: Vec<Expr> = decomposition[..k - 1].iter().map(|i| Expr::b(*i, 0)).collect();
    parts.push(Expr::b(decomposition[k - 1], r));
    Expr::nest(parts)
}
