use super::{Status, VerificationReport};
use crate::freealg::FreeElement;
use crate::grobner::{element_parity, ideal_span, Alphabet, IdealBasis, SpanOptions, TruncationWindow};
use crate::presentations::{genfun_relation, relation_instances, window_exponents, GenError, GenFamily, GenWindow, RelationSet};
use crate::rootdata::CartanData;
use std::collections::HashMap;
use std::time::Instant;

/// Linear ℚ[ħ]-spans of relation instances, one per (degree, parity).
struct SpanCache<'a> {
    cartan: &'a CartanData,
    rels: HashMap<u32, Vec<FreeElement>>,
    linear: HashMap<(u32, u32), IdealBasis>,
}

impl<'a> SpanCache<'a> {
    fn relations(&mut self, n: u32) -> Vec<FreeElement> {
        let c = self.cartan;
        self.rels
            .entry(n)
            .or_insert_with(|| relation_instances(RelationSet::FullTy, c, n).into_iter().map(|x| x.element).collect())
            .clone()
    }

    /// "linear" or "ideal S=.." on success, None when not captured.
    fn classify(&mut self, x: &FreeElement) -> Result<Option<String>, String> {
        let n = x.homogeneous_degree().ok_or("inhomogeneous coefficient")?;
        let p = element_parity(x);
        let rank = self.cartan.rank();
        if !self.linear.contains_key(&(n, p)) {
            let rels = self.relations(n);
            // columns come from the rows, so the length bound only filters relations
            let w = TruncationWindow { n, max_length: 64, slack: 0 };
            let opts = SpanOptions { linear_only: true, parity_mask: 1 << p, ..Default::default() };
            let b = ideal_span(&rels, Alphabet::Yangian { rank }, w, opts).map_err(|e| e.to_string())?;
            self.linear.insert((n, p), b);
        }
        if self.linear[&(n, p)].contains(x) {
            return Ok(Some("0 (linear span)".into()));
        }
        let rels = self.relations(n);
        for slack in 2..=4 {
            let w = TruncationWindow { n, max_length: x.max_length(), slack };
            let opts = SpanOptions { parity_mask: 1 << p, ..Default::default() };
            let b = ideal_span(&rels, Alphabet::Yangian { rank }, w, opts).map_err(|e| e.to_string())?;
            if b.contains(x) {
                return Ok(Some(format!("0 (ideal, S={slack})")));
            }
        }
        Ok(None)
    }
}

/// Every in-window coefficient of every generating-function relation
/// applicable to the type, reduced against the defining relations.
pub fn suite_genfun_match(cartan: &CartanData, window: u32) -> VerificationReport {
    let t = Instant::now();
    let gw = GenWindow::new(window);
    let mut rep = VerificationReport::new("genfun", &cartan.label).param("window", window).param("cutoff", gw.cutoff);
    let mut cache = SpanCache { cartan, rels: HashMap::new(), linear: HashMap::new() };
    let n = cartan.rank();
    for fam in GenFamily::ALL {
        for i in 0..n {
            for j in 0..n {
                if fam.required_cij().is_some_and(|c| i == j || cartan.cij(i, j) != c) {
                    continue;
                }
                let base = format!("{fam} i={} j={}", i + 1, j + 1);
                let series = match genfun_relation(fam, cartan, i, j, &gw) {
                    Ok(s) => s,
                    Err(GenError::CartanMismatch { .. }) => continue,
                    Err(e) => {
                        rep.push(base, Status::Inconclusive, e.to_string());
                        continue;
                    }
                };
                for e in window_exponents(fam, window) {
                    let name = format!("{base} e={e:?}");
                    let x = match series.coefficient(&e) {
                        Ok(x) => x,
                        Err(err) => {
                            rep.push(name, Status::Inconclusive, err.to_string());
                            continue;
                        }
                    };
                    if x.is_zero() {
                        rep.push(name, Status::Pass, "0");
                        continue;
                    }
                    match cache.classify(&x) {
                        Ok(Some(how)) => rep.push(name, Status::Pass, how),
                        Ok(None) => rep.push(name, Status::Fail, x.to_string()),
                        Err(err) => rep.push(name, Status::Inconclusive, err),
                    }
                }
            }
        }
    }
    rep.finish(t)
}
