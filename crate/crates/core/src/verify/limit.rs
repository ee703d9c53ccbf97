use super::classical::truncation_for;
use super::{Status, VerificationReport};
use crate::currentalg::{CurrentAlgebra, Truncation};
use crate::freealg::FreeElement;
use crate::grobner::{ideal_span, Alphabet, SpanOptions, TruncationWindow};
use crate::liealg::build_lie_algebra;
use crate::presentations::{
    bounded_instances, family_instances, instantiate, normalize_cartan_right, Family, RelIndices, RelationInstance,
};
use crate::rootdata::CartanData;
use crate::scalars::{q, Rational};
use rayon::prelude::*;
use std::sync::Arc;
use std::time::Instant;

pub(super) const TY_FAMILIES: &[Family] = &[
    Family::Ty0,
    Family::Ty5,
    Family::Ty1,
    Family::Ty2,
    Family::Ty3,
    Family::Ty4,
    Family::Ty6,
    Family::FSerre0,
    Family::FSerre1,
    Family::FSerre2,
    Family::TyG2_1,
    Family::TyG2_2,
];

/// Classical combination that a ty instance degenerates to at ħ = 0 after
/// H ↦ 2T, B ↦ X.  Empty: the image is a consequence of the [t, x]
/// relations alone.
pub fn classical_counterpart(family: Family, idx: &RelIndices) -> Vec<(Rational, Family, RelIndices)> {
    use Family::*;
    let (i, j, r, s) = (idx.i, idx.j, idx.r, idx.s);
    let one = || q(1, 1);
    match family {
        Ty0 => vec![(q(4, 1), Classical1, RelIndices::new(i, j, s, r, &[]))],
        Ty5 => vec![(q(2, 1), Classical2, RelIndices::new(i, j, 1, r, &[]))],
        Ty1 => vec![],
        Ty2 => vec![(one(), Classical3, RelIndices::new(i, j, r, s, &[]))],
        Ty3 => vec![(one(), Classical4Prime, RelIndices::new(i, j, r, 0, &[s]))],
        Ty4 => vec![(one(), Classical4, idx.clone())],
        Ty6 => vec![(one(), Classical5, idx.clone())],
        FSerre0 => vec![(one(), Classical7a, RelIndices::pair(i, j))],
        FSerre1 => vec![(one(), Classical7, RelIndices::pair(i, j))],
        FSerre2 => vec![(one(), Classical8, RelIndices::pair(i, j))],
        TyG2_1 => vec![(q(1, 2), Classical4, RelIndices::new(i, j, r, 0, &[0, 0]))],
        TyG2_2 => vec![(q(1, 24), Classical6, RelIndices::new(i, j, r, 0, &[0, 0, 0, 0]))],
        _ => vec![],
    }
}

fn classical_image(x: &RelationInstance) -> FreeElement {
    normalize_cartan_right(&x.expr.classical().expand(), &x.cartan)
}

/// Membership of a classical element in the ideal of the [t,t], [t,x] and
/// [x,x] relations, at its own degree and length plus slack.
pub(super) fn in_classical_core(x: &FreeElement, cartan: &CartanData) -> Result<bool, String> {
    let Some(n) = x.homogeneous_degree() else { return Err("inhomogeneous".into()) };
    let rels: Vec<FreeElement> = [Family::Classical1, Family::Classical2, Family::Classical3]
        .iter()
        .flat_map(|f| family_instances(*f, cartan, n))
        .map(|r| r.element)
        .collect();
    let mask = 1u64 << crate::grobner::element_parity(x);
    for slack in 2..=4 {
        let w = TruncationWindow { n, max_length: x.max_length(), slack };
        let basis = ideal_span(&rels, Alphabet::Classical { rank: cartan.rank() }, w, SpanOptions { parity_mask: mask, ..Default::default() })
            .map_err(|e| e.to_string())?;
        if basis.contains(x) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Outcome for one ty instance: symbolwise, modulo the core classical
/// relations, or failing with the rendered difference.
pub fn compare_with_classical(inst: &RelationInstance) -> (Status, String) {
    let mut expected = FreeElement::zero();
    for (c, fam, idx) in classical_counterpart(inst.family, &inst.indices) {
        match instantiate(fam, &inst.cartan, &idx) {
            Ok(ci) => expected.add_assign(&ci.element.scale(&c)),
            Err(e) => return (Status::Fail, format!("counterpart {fam} {idx}: {e}")),
        }
    }
    let diff = classical_image(inst).sub(&normalize_cartan_right(&expected, &inst.cartan));
    if diff.is_zero() {
        return (Status::Pass, "0".into());
    }
    match in_classical_core(&diff, &inst.cartan) {
        Ok(true) => (Status::Pass, "0 mod [t,t],[t,x],[x,x]".into()),
        Ok(false) => (Status::Fail, diff.to_string()),
        Err(e) => (Status::Inconclusive, e),
    }
}

/// ty instances with indices ≤ k: ħ → 0 image against the classical
/// counterpart, then the realization of that image.
pub fn suite_yangian_classical_limit(cartan: &CartanData, k: u32) -> VerificationReport {
    suite_yangian_classical_limit_at(cartan, k, truncation_for(cartan, k))
}

/// As above with an explicit truncation degree d.
pub fn suite_yangian_classical_limit_at(cartan: &CartanData, k: u32, d: u32) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("limit", &cartan.label).param("K", k).param("D", d);
    let lie = Arc::new(build_lie_algebra(cartan).expect("valid cartan"));
    let alg = CurrentAlgebra::new(lie, d, Truncation::Strict);
    let instances: Vec<RelationInstance> = TY_FAMILIES.iter().flat_map(|f| bounded_instances(*f, cartan, k)).collect();
    let recs: Vec<Vec<(String, Status, String)>> = instances
        .par_iter()
        .map(|inst| {
            let base = format!("{} {}", inst.family, inst.indices);
            let (st, res) = compare_with_classical(inst);
            let mut out = vec![(format!("{base} symbol"), st, res)];
            let rho = match inst.expr.classical().rho(&alg) {
                Ok(v) if v.is_zero() => (Status::Pass, "0".to_string()),
                Ok(v) => (Status::Fail, v.to_string()),
                Err(e) => (Status::Inconclusive, e.to_string()),
            };
            out.push((format!("{base} rho"), rho.0, rho.1));
            out
        })
        .collect();
    for (key, st, res) in recs.into_iter().flatten() {
        rep.push(key, st, res);
    }
    rep.finish(t)
}
