use super::{Status, VerificationReport};
use crate::freealg::FreeElement;
use crate::grobner::{element_parity, ideal_span, Alphabet, IdealBasis, SpanOptions, TruncationWindow};
use crate::presentations::{bounded_instances, instantiate, relation_instances, Family, RelIndices, RelationSet};
use crate::rootdata::CartanData;
use crate::scalars::{q, Rational};
use serde::Serialize;
use std::collections::HashMap;
use std::time::Instant;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ReducedConfig {
    /// every index of a tested Serre instance is ≤ this
    pub index_bound: u32,
    pub slack: usize,
    pub slack_cap: usize,
}

impl Default for ReducedConfig {
    fn default() -> Self {
        Self { index_bound: 1, slack: 2, slack_cap: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// captured at this slack
    Member(usize),
    /// remainder at the slack cap
    NotCaptured(String),
}

/// Ideal spans of one relation set, built per (degree, parity, slack) on
/// demand and kept for reuse.
pub struct MembershipOracle<'a> {
    cartan: &'a CartanData,
    set: RelationSet,
    alphabet: Alphabet,
    rels: HashMap<u32, Vec<FreeElement>>,
    spans: HashMap<(u32, u32, usize, usize), IdealBasis>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(cartan: &'a CartanData, set: RelationSet) -> Self {
        let alphabet = match set {
            RelationSet::Classical => Alphabet::Classical { rank: cartan.rank() },
            _ => Alphabet::Yangian { rank: cartan.rank() },
        };
        Self { cartan, set, alphabet, rels: HashMap::new(), spans: HashMap::new() }
    }

    /// Test x against windows (deg x, len x, S) for S = slack..=cap.
    pub fn check(&mut self, x: &FreeElement, slack: usize, cap: usize) -> Result<Membership, String> {
        if x.is_zero() {
            return Ok(Membership::Member(0));
        }
        let n = x.homogeneous_degree().ok_or("inhomogeneous element")?;
        let p = element_parity(x);
        let len = x.max_length();
        let (c, set) = (self.cartan, self.set);
        let rels = self
            .rels
            .entry(n)
            .or_insert_with(|| relation_instances(set, c, n).into_iter().map(|r| r.element).collect())
            .clone();
        let mut last = x.clone();
        for s in slack..=cap {
            let keyv = (n, p, len, s);
            if !self.spans.contains_key(&keyv) {
                let w = TruncationWindow { n, max_length: len, slack: s };
                let opts = SpanOptions { parity_mask: 1 << p, ..Default::default() };
                let b = ideal_span(&rels, self.alphabet, w, opts).map_err(|e| e.to_string())?;
                self.spans.insert(keyv, b);
            }
            last = self.spans[&keyv].reduce(x);
            if last.is_zero() {
                return Ok(Membership::Member(s));
            }
        }
        Ok(Membership::NotCaptured(last.to_string()))
    }
}

/// One-shot membership with slack escalation.
pub fn membership_with_escalation(
    x: &FreeElement,
    cartan: &CartanData,
    set: RelationSet,
    slack: usize,
    cap: usize,
) -> Result<Membership, String> {
    MembershipOracle::new(cartan, set).check(x, slack, cap)
}

fn record(rep: &mut VerificationReport, name: String, m: Result<Membership, String>) {
    match m {
        Ok(Membership::Member(s)) => rep.push(name, Status::Pass, format!("0 (S={s})")),
        Ok(Membership::NotCaptured(r)) => rep.push(name, Status::Inconclusive, format!("slack cap reached, remainder {r}")),
        Err(e) => rep.push(name, Status::Inconclusive, e),
    }
}

/// Scalar with ty(zero indices) = scalar · fSerre.
fn zero_index_scalar(f: Family) -> Rational {
    match f {
        Family::Ty4 => q(2, 1),
        Family::Ty6 => q(6, 1),
        _ => q(1, 1),
    }
}

/// Both directions of the reduced presentation at truncation: the current
/// Serre relations lie in the ideal of the reduced set, and the finite
/// Serre relations are the current ones at zero indices.
pub fn suite_reduced_presentation(cartan: &CartanData, cfg: ReducedConfig) -> VerificationReport {
    let t = Instant::now();
    let mut rep = VerificationReport::new("reduced", &cartan.label).param("config", cfg);
    let mut oracle = MembershipOracle::new(cartan, RelationSet::Reduced);
    for (ty, fs) in [(Family::Ty3, Family::FSerre0), (Family::Ty4, Family::FSerre1), (Family::Ty6, Family::FSerre2)] {
        for inst in bounded_instances(ty, cartan, cfg.index_bound) {
            let name = format!("forward {} {}", ty, inst.indices);
            let m = oracle.check(&inst.element, cfg.slack, cfg.slack_cap);
            record(&mut rep, name, m);
        }
        for fi in bounded_instances(fs, cartan, 0) {
            let (i, j) = (fi.indices.i, fi.indices.j);
            let zero = RelIndices::new(i, j, 0, 0, &vec![0; ty.k_len()]);
            let name = format!("backward {} {}", fs, fi.indices);
            match instantiate(ty, cartan, &zero) {
                Ok(y) => {
                    let diff = y.element.sub(&fi.element.scale(&zero_index_scalar(ty)));
                    rep.push_residual(name, diff.to_string(), diff.is_zero());
                }
                Err(e) => rep.push(name, Status::Fail, e.to_string()),
            }
        }
    }
    rep.finish(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::build_cartan;

    #[test]
    fn a2_zero_and_one() {
        let rep = suite_reduced_presentation(&build_cartan("A2").unwrap(), ReducedConfig::default());
        assert!(rep.records.iter().any(|r| r.key.starts_with("forward ty4")));
        assert!(rep.records.iter().any(|r| r.key.starts_with("backward f_serre1")));
        for r in &rep.records {
            assert_eq!(r.status, Status::Pass, "{} {}", r.key, r.residual);
        }
    }
}
