//! Generating-function forms of the twisted Yangian relations, assembled as
//! lazily evaluated free series.

use crate::freealg::{permutation_list, FreeElement, FreeSeries};
use crate::rootdata::CartanData;
use crate::scalars::{expand_rational_region, int, DenFactor, HbarPoly, MultiPoly, Rational, ScalarError, ScalarSeries};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenFamily {
    Gconj1,
    Gconj2,
    Gconj4,
    Gconj5,
    Gconj6,
    Gconj7,
}

impl GenFamily {
    pub const ALL: [GenFamily; 6] =
        [GenFamily::Gconj1, GenFamily::Gconj2, GenFamily::Gconj4, GenFamily::Gconj5, GenFamily::Gconj6, GenFamily::Gconj7];

    pub fn nvars(self) -> usize {
        match self {
            GenFamily::Gconj6 => 3,
            GenFamily::Gconj7 => 4,
            _ => 2,
        }
    }
    pub fn required_cij(self) -> Option<i64> {
        match self {
            GenFamily::Gconj5 => Some(0),
            GenFamily::Gconj6 => Some(-1),
            GenFamily::Gconj7 => Some(-2),
            _ => None,
        }
    }
    /// Largest exponent extracted per variable.  The Serre-type series are
    /// compared only on strictly negative exponents; their right-hand sides
    /// carry polynomial parts that the relation does not constrain.
    pub fn top_exponent(self) -> i32 {
        match self {
            GenFamily::Gconj6 | GenFamily::Gconj7 => -1,
            _ => 0,
        }
    }
    pub fn name(self) -> String {
        serde_json::to_value(self).unwrap().as_str().unwrap().to_string()
    }
}

impl fmt::Display for GenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("{family} needs c_ij = {need}, found {found}")]
    CartanMismatch { family: GenFamily, need: i64, found: i64 },
    #[error("denominator cannot be expanded: {0}")]
    Region(#[from] ScalarError),
    #[error("window too small")]
    Window,
}

/// Window: exponents −window..=top per variable, series truncated at `cutoff`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GenWindow {
    pub window: u32,
    pub cutoff: i32,
}

impl GenWindow {
    pub fn new(window: u32) -> Self {
        Self { window, cutoff: -(4 * window as i32 + 8) }
    }
}

const POLY_CUTOFF: i32 = -100_000;

fn poly_series(p: MultiPoly) -> FreeSeries {
    FreeSeries::scalar(ScalarSeries { cutoff: POLY_CUTOFF, poly: p })
}

fn hq(p: u32, c: Rational) -> HbarPoly {
    HbarPoly::monomial(p, c)
}

fn konst(x: FreeElement) -> FreeSeries {
    FreeSeries::constant(x)
}

fn prod(v: Vec<FreeSeries>) -> FreeSeries {
    FreeSeries::Prod(v)
}

fn comm(a: FreeSeries, b: FreeSeries) -> FreeSeries {
    FreeSeries::commutator(a, b)
}

fn anti(a: FreeSeries, b: FreeSeries) -> FreeSeries {
    FreeSeries::anticommutator(a, b)
}

fn scaled(c: HbarPoly, a: FreeSeries) -> FreeSeries {
    FreeSeries::scaled(c, a)
}

/// LHS − RHS of a generating-function relation.
pub fn genfun_relation(
    family: GenFamily,
    cartan: &CartanData,
    i: usize,
    j: usize,
    w: &GenWindow,
) -> Result<FreeSeries, GenError> {
    if let Some(need) = family.required_cij() {
        let found = cartan.cij(i, j);
        if i == j || found != need {
            return Err(GenError::CartanMismatch { family, need, found });
        }
    }
    if w.cutoff > -(w.window as i32) - 2 {
        return Err(GenError::Window);
    }
    let di = int(cartan.di(i));
    let dj = int(cartan.di(j));
    let cij = int(cartan.cij(i, j));
    let dn = cartan.di(i);
    let nv = family.nvars();
    let var = |v: usize| MultiPoly::var(nv, v);
    let cst = |p: u32, c: Rational| MultiPoly::constant(nv, hq(p, c));
    Ok(match family {
        GenFamily::Gconj1 => comm(FreeSeries::h(0, i, dn), FreeSeries::h(1, j, cartan.di(j))),
        GenFamily::Gconj5 => comm(FreeSeries::b(0, i, dn), FreeSeries::b(1, j, cartan.di(j))),
        GenFamily::Gconj2 => {
            let h = || FreeSeries::h(0, i, dn);
            let b = || FreeSeries::b(1, j, cartan.di(j));
            let u2v2 = var(0).mul(&var(0)).sub(&var(1).mul(&var(1)));
            let bj0 = || konst(FreeElement::b(j, 0));
            let bj1 = konst(FreeElement::b(j, 1));
            let v = var(1);
            FreeSeries::Sum(vec![
                prod(vec![poly_series(u2v2), comm(h(), b())]),
                prod(vec![poly_series(v.scale(&hq(1, -(&di * &cij)))), anti(h(), b())]),
                scaled(hq(2, -(&di * &di * &cij * &cij) / int(4)), comm(h(), b())),
                scaled(hq(1, dj.clone()), comm(h(), bj1)),
                prod(vec![poly_series(v.scale(&hq(1, dj.clone()))), comm(h(), bj0())]),
                scaled(hq(2, &di * &dj * &cij), anti(h(), bj0())),
            ])
        }
        GenFamily::Gconj4 => {
            let bi = || FreeSeries::b(0, i, dn);
            let bj = || FreeSeries::b(1, j, cartan.di(j));
            let umv = var(0).sub(&var(1));
            let mut parts = vec![
                prod(vec![poly_series(umv.clone()), comm(bi(), bj())]),
                scaled(hq(1, -(&di * &cij) / int(2)), anti(bi(), bj())),
                scaled(hq(1, -di.clone()), comm(konst(FreeElement::b(i, 0)), bj())),
                scaled(hq(1, dj.clone()), comm(bi(), konst(FreeElement::b(j, 0)))),
            ];
            if i == j {
                let upv = var(0).add(&var(1));
                let s = expand_rational_region(
                    &umv.scale(&hq(1, di.clone())),
                    &[DenFactor::in_region(upv, &[0, 1])],
                    w.cutoff,
                )?;
                parts.push(prod(vec![
                    FreeSeries::scalar(s),
                    FreeSeries::sub(FreeSeries::h(0, i, dn), FreeSeries::h(1, i, dn)),
                ]));
                parts.push(scaled(
                    hq(1, di.clone()),
                    FreeSeries::Sum(vec![
                        FreeSeries::h(0, i, dn),
                        FreeSeries::h(1, j, dn),
                        konst(FreeElement::constant(HbarPoly::constant(int(-2)))),
                    ]),
                ));
            }
            FreeSeries::Sum(parts)
        }
        GenFamily::Gconj6 => {
            // variables u1 = 0, u2 = 1, t = 2
            let b = |v: usize, node: usize| FreeSeries::b(v, node, cartan.di(node));
            let mut lhs = Vec::new();
            for p in permutation_list(2) {
                lhs.push(comm(b(p[0], i), comm(b(p[1], i), b(2, j))));
            }
            let mut parts = vec![FreeSeries::Sum(lhs)];
            let d2 = &di * &di;
            for x in [0usize, 1] {
                let den_q = var(x).mul(&var(x)).scale(&hq(0, int(4))).sub(&cst(2, d2.clone()));
                let dens = [
                    DenFactor::in_region(var(0).add(&var(1)), &[0, 1, 2]),
                    DenFactor::new(den_q, dom(nv, &[(x, 2)]), 0),
                ];
                let pre = var(x).scale(&hq(1, int(4) * &di));
                let num_a = pre.mul(&var(2).sub(&cst(1, di.clone())));
                let num_b = pre.mul(&var(2).add(&cst(1, di.clone())));
                let sa = expand_rational_region(&num_a, &dens, w.cutoff)?;
                let sb = expand_rational_region(&num_b, &dens, w.cutoff)?;
                let h = || FreeSeries::h(x, i, dn);
                parts.push(FreeSeries::neg(prod(vec![FreeSeries::scalar(sa), h(), b(2, j)])));
                parts.push(prod(vec![FreeSeries::scalar(sb), b(2, j), h()]));
            }
            FreeSeries::Sum(parts)
        }
        GenFamily::Gconj7 => {
            // variables u1 = 0, u2 = 1, u3 = 2, t = 3
            let b = |v: usize, node: usize| FreeSeries::b(v, node, cartan.di(node));
            let mut parts = Vec::new();
            for p in permutation_list(3) {
                parts.push(comm(b(p[0], i), comm(b(p[1], i), comm(b(p[2], i), b(3, j)))));
            }
            for p in permutation_list(3) {
                let (a1, a2, a3) = (p[0], p[1], p[2]);
                // 3u₂² − 3ħ² + u₁², expanded around its u₂² term
                let quad = var(a2)
                    .mul(&var(a2))
                    .scale(&hq(0, int(3)))
                    .sub(&cst(2, int(3)))
                    .add(&var(a1).mul(&var(a1)));
                let dens = [
                    DenFactor::in_region(var(a2).add(&var(a3)), &[0, 1, 2, 3]),
                    DenFactor::new(quad, dom(nv, &[(a2, 2)]), 0),
                ];
                let s = expand_rational_region(&var(a2).scale(&hq(1, -di.clone())), &dens, w.cutoff)?;
                let lin = poly_series(var(3).scale(&hq(0, int(3))).add(&var(a1)));
                let bu = || b(a1, i);
                let bt = || b(3, j);
                let hu = || FreeSeries::h(a2, i, dn);
                let brace = FreeSeries::Sum(vec![
                    prod(vec![lin.clone(), comm(comm(bu(), bt()), hu())]),
                    prod(vec![lin.clone(), scaled(hq(0, int(2)), comm(bu(), comm(bt(), hu())))]),
                    scaled(hq(1, int(3) * &di), comm(anti(bu(), hu()), bt())),
                    scaled(hq(1, int(9) * &di), comm(bu(), anti(hu(), bt()))),
                ]);
                parts.push(FreeSeries::neg(prod(vec![FreeSeries::scalar(s), brace])));
            }
            FreeSeries::Sum(parts)
        }
    })
}

fn dom(nv: usize, at: &[(usize, i32)]) -> Vec<i32> {
    let mut e = vec![0; nv];
    for (v, x) in at {
        e[*v] = *x;
    }
    e
}

/// Exponent tuples compared for a family at a window.
pub fn window_exponents(family: GenFamily, window: u32) -> Vec<Vec<i32>> {
    let nv = family.nvars();
    let top = family.top_exponent();
    let lo = -(window as i32);
    let mut out = Vec::new();
    let mut cur = vec![lo; nv];
    loop {
        out.push(cur.clone());
        let mut v = 0;
        loop {
            if v == nv {
                return out;
            }
            if cur[v] < top {
                cur[v] += 1;
                break;
            }
            cur[v] = lo;
            v += 1;
        }
    }
}
