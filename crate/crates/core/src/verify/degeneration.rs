use super::{key, Status, VerificationReport};
use crate::currentalg::{CurrentAlgebra, CurrentLieElement, Truncation};
use crate::liealg::{build_lie_algebra, LieElement};
use crate::loopalg::{LoopAlgebra, LoopElement};
use crate::rootdata::CartanData;
use crate::scalars::{int, sign};
use serde::Serialize;
use std::sync::Arc;
use std::time::Instant;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DegenerationBounds {
    /// filtration degrees r ≤ r_max (and r + s ≤ r_max for brackets)
    pub r_max: u32,
    /// shifts |k| ≤ k_max
    pub k_max: i32,
    /// loop window |degree| ≤ M; derived from the other bounds when unset
    #[serde(skip_serializing_if = "Option::is_none")]
    pub loop_bound: Option<i32>,
}

impl Default for DegenerationBounds {
    fn default() -> Self {
        Self { r_max: 4, k_max: 2, loop_bound: None }
    }
}

fn verdict(rep: &mut VerificationReport, name: String, r: Result<bool, String>) {
    match r {
        Ok(true) => rep.push(name, Status::Pass, "0"),
        Ok(false) => rep.push(name, Status::Fail, "identity fails"),
        Err(e) => rep.push(name, Status::Inconclusive, e),
    }
}

pub fn suite_degeneration(cartan: &CartanData, b: DegenerationBounds) -> VerificationReport {
    let t = Instant::now();
    let m = b.loop_bound.unwrap_or(2 * b.r_max as i32 + 2 * b.k_max + 2);
    let mut rep = VerificationReport::new("degeneration", &cartan.label).param("bounds", b).param("M", m);
    let lie = Arc::new(build_lie_algebra(cartan).expect("valid cartan"));
    let lp = LoopAlgebra::new(lie.clone(), m);
    let cur = CurrentAlgebra::new(lie.clone(), b.r_max + lie.rootsys.max_height(), Truncation::Strict);
    let ks: Vec<i32> = (-b.k_max..=b.k_max).collect();
    let err = |e: crate::loopalg::LoopError| e.to_string();

    // bracket identity on basis pairs
    for za in 0..lie.dim() {
        for ya in 0..lie.dim() {
            let (z, y) = (LieElement::basis(za), LieElement::basis(ya));
            let mut ok = Ok(true);
            'outer: for r in 0..=b.r_max {
                for s in 0..=b.r_max - r {
                    for &k in &ks {
                        for &l in &ks {
                            match lp.check_bracket_identity(&z, &y, r, s, k, l) {
                                Ok(true) => {}
                                other => {
                                    ok = other.map_err(err).map(|_| false);
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
            verdict(&mut rep, key(&[("xy", lie.label_name(za)), ("with", lie.label_name(ya))]), ok);
        }
    }

    let two_h = |i: usize, r: u32| CurrentLieElement::from_lie(&lie.h(i).scale(&int(2)), r);
    for i in 0..lie.rank() {
        for r in 0..=b.r_max {
            for &k in &ks {
                let id = |what: &str| key(&[(what, String::new()), ("i", (i + 1).to_string()), ("r", r.to_string()), ("k", k.to_string())]);
                // closed forms are asserted inside the constructors
                let th = lp.theta_filtered(i, r, k);
                let be = lp.beta_filtered(i, r, k);
                verdict(&mut rep, id("closed theta"), th.as_ref().map(|_| true).map_err(|e| e.to_string()));
                verdict(&mut rep, id("closed beta"), be.as_ref().map(|_| true).map_err(|e| e.to_string()));
                let (Ok(th), Ok(be)) = (th, be) else { continue };
                // leading terms at order r
                let want_th = if r % 2 == 0 { CurrentLieElement::zero() } else { two_h(i, r) };
                verdict(&mut rep, id("lead theta"), lp.kappa_leading_term(&th, r).map(|x| x == want_th).map_err(err));
                let want_be = CurrentLieElement::from_lie(&lie.f_simple(i).scale(&sign(r as i64)).sub(&lie.e_simple(i)), r);
                verdict(&mut rep, id("lead beta"), lp.kappa_leading_term(&be, r).map(|x| x == want_be).map_err(err));
                // binomial recursions
                if r < b.r_max && k < b.k_max {
                    let rec = |a: Result<LoopElement, _>, c: Result<LoopElement, _>, d: Result<LoopElement, _>| -> Result<bool, String> {
                        Ok(a.map_err(err)? == c.map_err(err)?.sub(&d.map_err(err)?))
                    };
                    verdict(&mut rep, id("recursion theta"), rec(lp.theta_filtered(i, r + 1, k), lp.theta_filtered(i, r, k + 1), lp.theta_filtered(i, r, k)));
                    verdict(&mut rep, id("recursion beta"), rec(lp.beta_filtered(i, r + 1, k), lp.beta_filtered(i, r, k + 1), lp.beta_filtered(i, r, k)));
                }
            }
        }
    }
    // root elements: leading order m, fixed by the current involution
    for root in 0..lie.num_positive() {
        for mm in 0..=b.r_max {
            for &l in &ks {
                let name = key(&[("root beta", String::new()), ("root", root.to_string()), ("m", mm.to_string()), ("l", l.to_string())]);
                let res = lp
                    .beta_root_filtered(root, mm, l)
                    .and_then(|x| lp.kappa_leading_term(&x, mm))
                    .map_err(err)
                    .map(|x| !x.is_zero() && cur.omega_check(&x) == x);
                verdict(&mut rep, name, res);
            }
        }
    }
    rep.finish(t)
}
