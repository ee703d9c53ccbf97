use super::{Status, VerificationReport};
use crate::currentalg::{CurrentAlgebra, Truncation};
use crate::liealg::build_lie_algebra;
use crate::presentations::{bounded_instances, Family, RelationInstance};
use crate::rootdata::{build_root_system, CartanData};
use rayon::prelude::*;
use std::sync::Arc;
use std::time::Instant;

pub(super) const CLASSICAL_FAMILIES: &[Family] = &[
    Family::Classical1,
    Family::Classical2,
    Family::Classical3,
    Family::Classical4Prime,
    Family::Classical4,
    Family::Classical5,
    Family::Classical6,
    Family::Classical7a,
    Family::Classical7,
    Family::Classical8,
    Family::Classical9,
    Family::ClassicalEvenCommute,
    Family::ClassicalTilde,
];

/// Truncation degree that no index tuple ≤ k overflows: the heaviest
/// family carries five levels plus a shift.
pub fn truncation_for(cartan: &CartanData, k: u32) -> u32 {
    let rs = build_root_system(cartan).expect("valid cartan");
    5 * k + rs.max_height() + 1
}

pub(super) fn rho_record(rep: &mut VerificationReport, inst: &RelationInstance, alg: &CurrentAlgebra) {
    let key = format!("{} {}", inst.family, inst.indices);
    match inst.expr.rho(alg) {
        Ok(v) => rep.push_residual(key, v.to_string(), v.is_zero()),
        Err(e) => rep.push(key, Status::Inconclusive, e.to_string()),
    }
}

/// Every classical relation with indices ≤ k, evaluated under the
/// realization in the truncated current algebra.
pub fn suite_classical_realization(cartan: &CartanData, k: u32) -> VerificationReport {
    suite_classical_realization_at(cartan, k, truncation_for(cartan, k))
}

/// As above with an explicit truncation degree d.
pub fn suite_classical_realization_at(cartan: &CartanData, k: u32, d: u32) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("classical", &cartan.label).param("K", k).param("D", d);
    let lie = Arc::new(build_lie_algebra(cartan).expect("valid cartan"));
    let alg = CurrentAlgebra::new(lie, d, Truncation::Strict);
    let instances: Vec<RelationInstance> =
        CLASSICAL_FAMILIES.iter().flat_map(|f| bounded_instances(*f, cartan, k)).collect();
    let parts: Vec<VerificationReport> = instances
        .par_iter()
        .map(|inst| {
            let mut r = VerificationReport::new("", "");
            rho_record(&mut r, inst, &alg);
            r
        })
        .collect();
    for p in parts {
        rep.records.extend(p.records);
    }
    rep.finish(t)
}
