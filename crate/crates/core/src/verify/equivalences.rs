use super::{key, VerificationReport};
use crate::freealg::FreeElement;
use crate::presentations::{instantiate, Family, RelIndices};
use crate::rootdata::CartanData;
use crate::scalars::q;
use std::time::Instant;

fn el(f: Family, c: &CartanData, idx: RelIndices) -> Result<FreeElement, String> {
    instantiate(f, c, &idx).map(|x| x.element).map_err(|e| e.to_string())
}

/// Telescoping identities linking the alternative [b,b] and [b,h] forms
/// to the defining relations, for 0 ≤ s ≤ r ≤ k.
pub fn suite_equivalences(cartan: &CartanData, k: u32) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("equivalences", &cartan.label).param("K", k);
    let n = cartan.rank();
    let check = |rep: &mut VerificationReport, name: String, v: Result<FreeElement, String>| match v {
        Ok(x) => rep.push_residual(name, x.to_string(), x.is_zero()),
        Err(e) => rep.push(name, super::Status::Fail, e),
    };
    for i in 0..n {
        for r in 0..=k {
            for s in 0..=r {
                let bb = |s, r| el(Family::BbAlt, cartan, RelIndices::new(i, i, r, s, &[]));
                let ty2 = el(Family::Ty2, cartan, RelIndices::new(i, i, r, s, &[]));
                let v = if s == r {
                    // base: the alternative form is half the defining one
                    bb(s, s).and_then(|a| ty2.map(|b| a.sub(&b.scale(&q(1, 2)))))
                } else {
                    bb(s, r).and_then(|a| bb(s + 1, r - 1).and_then(|c| ty2.map(|b| a.sub(&b).sub(&c))))
                };
                let name = key(&[("bbalt", String::new()), ("i", (i + 1).to_string()), ("s", s.to_string()), ("r", r.to_string())]);
                check(&mut rep, name, v);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for r in 0..=k {
                for s in (1..=k.max(1)).step_by(2) {
                    let bh = |r, s| el(Family::BhAlt, cartan, RelIndices::new(i, j, r, s, &[]));
                    let name = |what: &str| {
                        key(&[("bhalt", what.to_string()), ("i", (i + 1).to_string()), ("j", (j + 1).to_string()), ("r", r.to_string()), ("s", s.to_string())])
                    };
                    if s == 1 {
                        let v = bh(r, 1).and_then(|a| el(Family::Ty5, cartan, RelIndices::new(i, j, r, 0, &[])).map(|b| a.add(&b)));
                        check(&mut rep, name("base"), v);
                    }
                    let v = bh(r, s + 2).and_then(|a| {
                        bh(r + 2, s).and_then(|c| el(Family::Ty1, cartan, RelIndices::new(i, j, r, s, &[])).map(|b| a.sub(&c).sub(&b)))
                    });
                    check(&mut rep, name("step"), v);
                }
            }
        }
    }
    rep.finish(t)
}
