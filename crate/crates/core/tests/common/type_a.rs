//! Matrix-unit model of sl(n+1) for checking type A structure constants.
#![allow(dead_code)]

use tyang_core::liealg::{build_lie_algebra, BasisLabel, LieAlgebra, LieElement};
use tyang_core::rootdata::build_cartan;
use tyang_core::scalars::{int, Rational};

pub type Mat = Vec<Vec<Rational>>;

pub fn zero(n: usize) -> Mat {
    vec![vec![int(0); n]; n]
}

pub fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = zero(n);
    m[i][j] = int(1);
    m
}

pub fn axpy(a: &Rational, x: &Mat, y: &mut Mat) {
    for (r, xr) in y.iter_mut().zip(x) {
        for (v, xv) in r.iter_mut().zip(xr) {
            *v += a * xv;
        }
    }
}

pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut c = zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == int(0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    c
}

pub fn comm(a: &Mat, b: &Mat) -> Mat {
    let mut c = mul(a, b);
    axpy(&int(-1), &mul(b, a), &mut c);
    c
}

pub fn scaled(a: &Rational, x: &Mat) -> Mat {
    let mut y = zero(x.len());
    axpy(a, x, &mut y);
    y
}

/// The only basis index present in x, with its coefficient.
pub fn single(x: &LieElement) -> (usize, Rational) {
    let t: Vec<_> = x.terms().collect();
    assert_eq!(t.len(), 1, "expected a single basis vector");
    (t[0].0, t[0].1.clone())
}

/// Images of every basis vector, fixed on the generators and propagated
/// along the stored root decompositions.
pub fn images(g: &LieAlgebra) -> Vec<Mat> {
    let n = g.rank() + 1;
    let mut out = vec![zero(n); g.dim()];
    for i in 0..g.rank() {
        out[g.index(BasisLabel::H(i))] = {
            let mut m = unit(n, i, i);
            axpy(&int(-1), &unit(n, i + 1, i + 1), &mut m);
            m
        };
    }
    for a in 0..g.num_positive() {
        let d = &g.rootsys.decomposition[a];
        for (pos, simple) in [(true, unit as fn(usize, usize, usize) -> Mat), (false, unit)] {
            let gens: Vec<LieElement> = d.iter().map(|&i| if pos { g.e_simple(i) } else { g.f_simple(i) }).collect();
            let (idx, lam) = single(&g.nested(&gens));
            let mats: Vec<Mat> = d.iter().map(|&i| if pos { simple(n, i, i + 1) } else { simple(n, i + 1, i) }).collect();
            let mut m = mats.last().unwrap().clone();
            for x in mats.iter().rev().skip(1) {
                m = comm(x, &m);
            }
            out[idx] = scaled(&(int(1) / lam), &m);
        }
    }
    out
}

pub fn image_of(x: &LieElement, imgs: &[Mat]) -> Mat {
    let mut m = zero(imgs[0].len());
    for (i, c) in x.terms() {
        axpy(c, &imgs[i], &mut m);
    }
    m
}

/// Every basis bracket of type `label` against matrix commutators, and
/// every root vector against ± one matrix unit.
pub fn check_type_a(label: &str) -> Result<(), String> {
    let g = build_lie_algebra(&build_cartan(label).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let imgs = images(&g);
    let n = g.rank() + 1;
    for a in 0..g.num_positive() {
        let root = &g.rootsys.positive_roots[a];
        let p = root.iter().position(|&c| c != 0).unwrap();
        let q = root.iter().rposition(|&c| c != 0).unwrap() + 1;
        for (lab, (i, j)) in [(BasisLabel::E(a), (p, q)), (BasisLabel::F(a), (q, p))] {
            let m = &imgs[g.index(lab)];
            let s = m[i][j].clone();
            if !(s == int(1) || s == int(-1)) || m != &scaled(&s, &unit(n, i, j)) {
                return Err(format!("{label}: {lab:?} is not a signed matrix unit"));
            }
        }
    }
    for a in 0..g.dim() {
        for b in 0..g.dim() {
            let lhs = image_of(&g.bracket(&LieElement::basis(a), &LieElement::basis(b)), &imgs);
            if lhs != comm(&imgs[a], &imgs[b]) {
                return Err(format!("{label}: [{}, {}] differs", g.label_name(a), g.label_name(b)));
            }
        }
    }
    Ok(())
}
