//! Normal form modulo [t,t] = 0 and [t_{i,r}, x_{j,m}] = c_ij x_{j,m+r}:
//! every word becomes (x-word)·(sorted t-word).

use crate::freealg::{FreeElement, Sym, SymKind};
use crate::rootdata::CartanData;
use crate::scalars::{int, HbarPoly};

pub fn normalize_cartan_right(x: &FreeElement, cartan: &CartanData) -> FreeElement {
    let mut out = FreeElement::zero();
    let mut work: Vec<(Vec<Sym>, HbarPoly)> = x.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    while let Some((w, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        let pos = (0..w.len().saturating_sub(1)).find(|&p| {
            let (a, b) = (w[p], w[p + 1]);
            a.kind() == SymKind::T && (b.kind() != SymKind::T || b < a)
        });
        let Some(p) = pos else {
            out.add_term(w, &c);
            continue;
        };
        let (a, b) = (w[p], w[p + 1]);
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        work.push((swapped, c.clone()));
        if b.kind() == SymKind::X {
            let k = cartan.cij(a.node(), b.node());
            if k != 0 {
                let mut shifted = w[..p].to_vec();
                shifted.push(Sym::new(SymKind::X, b.node(), b.level() + a.level()));
                shifted.extend_from_slice(&w[p + 2..]);
                work.push((shifted, c.scale(&int(k))));
            }
        }
    }
    out
}
