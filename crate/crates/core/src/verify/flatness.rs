use super::{Status, VerificationReport};
use crate::grobner::{flatness_cells, Alphabet, CertificateOptions};
use crate::presentations::{relation_instances, PbwIndex, RelationSet};
use crate::rootdata::{build_root_system, CartanData};
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FlatnessConfig {
    pub n_max: u32,
    pub l_max: usize,
    pub slack: usize,
    pub slack_cap: usize,
}

impl Default for FlatnessConfig {
    fn default() -> Self {
        Self { n_max: 2, l_max: 3, slack: 2, slack_cap: 4 }
    }
}

/// Relations used for the certificate: the G2 presentation when some
/// c_ij = -3, the full current presentation otherwise.
pub fn default_relation_set(cartan: &CartanData) -> RelationSet {
    let n = cartan.rank();
    if (0..n).any(|i| (0..n).any(|j| cartan.cij(i, j) == -3)) {
        RelationSet::G2
    } else {
        RelationSet::FullTy
    }
}

/// Normal-word counts against PBW counts on every cell of the window.
pub fn flatness_certificate(cartan: &CartanData, set: RelationSet, cfg: FlatnessConfig) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("flatness", &cartan.label).param("config", cfg).param("relations", set);
    let rs = match build_root_system(cartan) {
        Ok(rs) => rs,
        Err(e) => {
            rep.push("root system", Status::Fail, e.to_string());
            return rep.finish(t);
        }
    };
    let pbw = PbwIndex::new(&rs, cfg.n_max, true);
    let rels = |m| relation_instances(set, cartan, m).into_iter().map(|x| x.element).collect::<Vec<_>>();
    let opts = CertificateOptions { slack: cfg.slack, slack_cap: cfg.slack_cap, ..Default::default() };
    let alphabet = Alphabet::Yangian { rank: cartan.rank() };
    match flatness_cells(&cartan.label, alphabet, &pbw, &rels, cfg.n_max, cfg.l_max, opts) {
        Ok(cells) => rep.cells = cells,
        Err(e) => rep.push("window", Status::Inconclusive, e.to_string()),
    }
    rep.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_cartan;

    #[test]
    fn a1_cells() {
        let c = build_cartan("A1").unwrap();
        let rep = flatness_certificate(&c, default_relation_set(&c), FlatnessConfig { n_max: 2, l_max: 3, ..Default::default() });
        assert_eq!(rep.cells.len(), 12);
        assert_eq!(rep.status, Status::Pass, "{}", rep.table());
    }
}
