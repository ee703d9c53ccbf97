//! Truncated two-sided ideals in the free algebra: exact sparse row reduction
//! of the span of u·rel·w inside a (degree, length) window, normal-word
//! counts, membership, and the flatness comparison against PBW counts.

mod echelon;

use crate::freealg::{FreeElement, Sym, SymKind, Word};
use crate::presentations::PbwIndex;
use crate::scalars::{HbarPoly, Rational};
use echelon::{from_rational, to_rational, Echelon, IntRow, RatRow};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrobnerError {
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(String),
    #[error("window (n={n}, length {len}) needs {rows} product rows, above the ceiling {ceiling}; lower the window or raise the ceiling")]
    Explosion { n: u32, len: usize, rows: usize, ceiling: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TruncationWindow {
    pub n: u32,
    pub max_length: usize,
    pub slack: usize,
}

/// Generator alphabet of the ambient free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Alphabet {
    /// B(i,r), H(i,s) over ℚ[ħ]
    Yangian { rank: usize },
    /// X(i,m), T(i,s) over ℚ
    Classical { rank: usize },
}

impl Alphabet {
    fn letters(&self, max_level: u32) -> Vec<Sym> {
        let (rank, a, b) = match *self {
            Alphabet::Yangian { rank } => (rank, SymKind::B, SymKind::H),
            Alphabet::Classical { rank } => (rank, SymKind::X, SymKind::T),
        };
        let mut out = Vec::new();
        for i in 0..rank {
            for r in 0..=max_level {
                out.push(Sym::new(a, i, r));
            }
            for s in (1..=max_level).step_by(2) {
                out.push(Sym::new(b, i, s));
            }
        }
        out.sort();
        out
    }
    fn has_hbar(&self) -> bool {
        matches!(self, Alphabet::Yangian { .. })
    }
}

/// Node parity of a word: B/X letters contribute their node bit.
fn parity(w: &[Sym]) -> u32 {
    w.iter()
        .filter(|s| matches!(s.kind(), SymKind::B | SymKind::X))
        .fold(0, |acc, s| acc ^ (1 << s.node()))
}

/// All words with Σ level = deg exactly and length ≤ max_len.
fn words_of_degree(letters: &[Sym], deg: u32, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(letters: &[Sym], deg: u32, max_len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if deg == 0 {
            out.push(cur.clone());
        }
        if cur.len() == max_len {
            return;
        }
        for s in letters {
            if s.level() <= deg {
                cur.push(*s);
                rec(letters, deg - s.level(), max_len, cur, out);
                cur.pop();
            }
        }
    }
    rec(letters, deg, max_len, &mut cur, &mut out);
    out
}

/// A monomial ħ^a·w.
type Mono = (u32, Word);

/// Column order: longer words lead; then fewer ħ; then the word.
fn column_key(m: &Mono) -> (usize, std::cmp::Reverse<u32>, &Word) {
    (m.1.len(), std::cmp::Reverse(m.0), &m.1)
}

/// One (degree, parity) block of the ideal computation.
#[derive(Clone, Debug)]
struct Block {
    columns: Vec<Mono>,
    index: HashMap<Mono, u32>,
    echelon: Echelon,
}

impl Block {
    /// Integer row r and factor f with x = f·r.
    fn to_row(&self, x: &FreeElement) -> Option<(IntRow, Rational)> {
        let mut row = Vec::new();
        for (w, c) in x.terms() {
            for (a, v) in c.terms() {
                let id = *self.index.get(&(a, w.clone()))?;
                row.push((id, v.clone()));
            }
        }
        Some(from_rational(row))
    }
    fn element_of(&self, row: &RatRow) -> FreeElement {
        let mut out = FreeElement::zero();
        for (id, c) in row {
            let (a, w) = &self.columns[*id as usize];
            out.add_term(w.clone(), &HbarPoly::monomial(*a, c.clone()));
        }
        out
    }
    fn words_up_to(&self, len: usize) -> u64 {
        self.columns.iter().filter(|m| m.1.len() <= len).count() as u64
    }
    fn rank_up_to(&self, len: usize) -> u64 {
        self.echelon
            .pivot_of
            .keys()
            .filter(|id| self.columns[**id as usize].1.len() <= len)
            .count() as u64
    }
}

#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub relations: Vec<FreeElement>,
    pub window: TruncationWindow,
    pub alphabet: Alphabet,
    blocks: BTreeMap<u32, Block>,
}

#[derive(Clone, Copy, Debug)]
pub struct SpanOptions {
    /// Abort when a block would need more product rows than this.
    pub row_ceiling: usize,
    /// Keep only the relations themselves (no u·rel·w products).
    pub linear_only: bool,
    /// Bit p set: build the parity-p block.  Membership tests only need the
    /// target's block.
    pub parity_mask: u64,
}

impl Default for SpanOptions {
    fn default() -> Self {
        Self { row_ceiling: 3_000_000, linear_only: false, parity_mask: u64::MAX }
    }
}

/// Node-parity class of an element (that of its first term).
pub fn element_parity(x: &FreeElement) -> u32 {
    x.terms().next().map_or(0, |(w, _)| parity(w))
}

/// Span of ħ^a·u·rel·w of degree n whose terms all have length ≤ L+S.
pub fn ideal_span(
    relations: &[FreeElement],
    alphabet: Alphabet,
    window: TruncationWindow,
    opts: SpanOptions,
) -> Result<IdealBasis, GrobnerError> {
    let n = window.n;
    let total_len = window.max_length + window.slack;
    let letters = alphabet.letters(n);
    let hbar_max = if alphabet.has_hbar() { n } else { 0 };
    let mut rels: Vec<(u32, usize, u32, &FreeElement)> = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let d = r.homogeneous_degree().ok_or_else(|| GrobnerError::Inhomogeneous(r.to_string()))?;
        let p = element_parity(r);
        if d <= n && r.max_length() <= total_len {
            rels.push((d, r.max_length(), p, r));
        }
    }
    // columns grouped by parity; a linear window only needs the monomials
    // its rows touch (word counts are then not meaningful)
    let mut cols: BTreeMap<u32, Vec<Mono>> = BTreeMap::new();
    if opts.linear_only {
        let mut seen: BTreeMap<u32, BTreeSet<Mono>> = BTreeMap::new();
        for (d, _, p, rel) in &rels {
            for (w, c) in rel.terms() {
                for (b, _) in c.terms() {
                    for a in 0..=n.saturating_sub(*d) {
                        seen.entry(*p).or_default().insert((a + b, w.clone()));
                    }
                }
            }
        }
        cols = seen.into_iter().map(|(p, s)| (p, s.into_iter().collect())).collect();
    } else {
        for a in 0..=hbar_max {
            for w in words_of_degree(&letters, n - a, total_len) {
                cols.entry(parity(&w)).or_default().push((a, w));
            }
        }
    }
    // cofactor words by (degree, parity)
    let mut cof: HashMap<u32, Vec<Word>> = HashMap::new();
    for d in 0..=n {
        cof.insert(d, if opts.linear_only { if d == 0 { vec![vec![]] } else { vec![] } } else { words_of_degree(&letters, d, total_len) });
    }
    let parities: Vec<u32> = cols.keys().copied().filter(|p| opts.parity_mask >> p & 1 == 1).collect();
    let built: Result<Vec<(u32, Block)>, GrobnerError> = parities
        .into_par_iter()
        .map(|p| {
            let mut columns = cols[&p].clone();
            columns.sort_by(|a, b| column_key(a).cmp(&column_key(b)));
            let index: HashMap<Mono, u32> = columns.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect();
            let mut block = Block { columns, index, echelon: Echelon::default() };
            let mut rows = 0usize;
            let mut products: Vec<FreeElement> = Vec::new();
            for (d, len, rp, rel) in &rels {
                for a in 0..=hbar_max {
                    if d + a > n {
                        break;
                    }
                    let rest = n - d - a;
                    for v in &cof[&rest] {
                        if v.len() + len > total_len || (parity(v) ^ rp) != p {
                            continue;
                        }
                        for cut in 0..=v.len() {
                            rows += 1;
                            if rows > opts.row_ceiling {
                                return Err(GrobnerError::Explosion { n, len: total_len, rows, ceiling: opts.row_ceiling });
                            }
                            let u = FreeElement::monomial(v[..cut].to_vec(), HbarPoly::hbar_pow(a));
                            let w = FreeElement::monomial(v[cut..].to_vec(), HbarPoly::one());
                            products.push(u.mul(rel).mul(&w));
                        }
                    }
                }
            }
            // short rows first keeps fill-in low
            products.sort_by_key(|x| x.len());
            for x in products {
                if let Some((row, _)) = block.to_row(&x) {
                    block.echelon.insert(row);
                }
            }
            Ok((p, block))
        })
        .collect();
    Ok(IdealBasis { relations: relations.to_vec(), window, alphabet, blocks: built?.into_iter().collect() })
}

impl IdealBasis {
    /// Words (with ħ powers) of degree n and length ≤ len.
    pub fn word_count(&self, len: usize) -> u64 {
        self.blocks.values().map(|b| b.words_up_to(len)).sum()
    }
    /// Dimension of the captured ideal slice at length ≤ len.
    pub fn captured_rank(&self, len: usize) -> u64 {
        self.blocks.values().map(|b| b.rank_up_to(len)).sum()
    }
    pub fn normal_word_count(&self, len: usize) -> u64 {
        self.word_count(len) - self.captured_rank(len)
    }

    /// Remainder of x modulo the captured span; zero iff x lies in it.
    /// Terms outside the window are returned unreduced.
    pub fn reduce(&self, x: &FreeElement) -> FreeElement {
        let mut by_block: BTreeMap<u32, FreeElement> = BTreeMap::new();
        let mut outside = FreeElement::zero();
        for (w, c) in x.terms() {
            let deg_ok = c.terms().all(|(a, _)| a + crate::freealg::word_degree(w) == self.window.n);
            let mono = FreeElement::monomial(w.clone(), c.clone());
            if deg_ok && w.len() <= self.window.max_length + self.window.slack {
                by_block.entry(parity(w)).or_default().add_assign(&mono);
            } else {
                outside.add_assign(&mono);
            }
        }
        for (p, part) in by_block {
            match self.blocks.get(&p).and_then(|b| b.to_row(&part).map(|r| (b, r))) {
                Some((b, (row, f))) => {
                    let (rem, g) = b.echelon.reduce(row);
                    outside.add_assign(&b.element_of(&to_rational(&rem, &(f * g))));
                }
                None => outside.add_assign(&part),
            }
        }
        outside
    }

    pub fn contains(&self, x: &FreeElement) -> bool {
        self.reduce(x).is_zero()
    }

    /// Canonical reduced echelon rows, rendered; identical for any ordering
    /// of the input relations.
    pub fn reduced_rows(&self) -> Vec<FreeElement> {
        let mut out = Vec::new();
        for b in self.blocks.values() {
            for r in b.echelon.reduced() {
                out.push(b.element_of(&r));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CellVerdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CellRecord {
    #[serde(rename = "type")]
    pub type_label: String,
    pub n: u32,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "S")]
    pub s: usize,
    pub words: u64,
    pub rank: u64,
    pub normal: u64,
    pub pbw: u64,
    pub verdict: CellVerdict,
}

#[derive(Clone, Copy, Debug)]
pub struct CertificateOptions {
    pub slack: usize,
    pub slack_cap: usize,
    pub span: SpanOptions,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        Self { slack: 2, slack_cap: 4, span: SpanOptions::default() }
    }
}

/// Compare normal-word counts with PBW counts on every cell n ≤ n_max,
/// L ≤ l_max.  `relations_at(n)` lists the homogeneous relations of degree
/// ≤ n.  Cells whose normal count exceeds the PBW count are retried with
/// more slack, up to the cap.
pub fn flatness_cells(
    type_label: &str,
    alphabet: Alphabet,
    pbw: &PbwIndex,
    relations_at: &(dyn Fn(u32) -> Vec<FreeElement> + Sync),
    n_max: u32,
    l_max: usize,
    opts: CertificateOptions,
) -> Result<Vec<CellRecord>, GrobnerError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let rels = relations_at(n);
        let mut pending: Vec<usize> = (0..=l_max).collect();
        let mut slack = opts.slack;
        loop {
            let top = *pending.iter().max().unwrap();
            let w = TruncationWindow { n, max_length: top, slack };
            let basis = ideal_span(&rels, alphabet, w, opts.span)?;
            let mut retry = Vec::new();
            for &l in &pending {
                let words = basis.word_count(l);
                let rank = basis.captured_rank(l);
                let normal = words - rank;
                let expect = pbw.count(n, l);
                // effective slack for a shorter cell is larger
                let s_eff = slack + (top - l);
                let verdict = if normal == expect {
                    CellVerdict::Pass
                } else if normal < expect {
                    CellVerdict::Fail
                } else {
                    CellVerdict::Inconclusive
                };
                if verdict == CellVerdict::Inconclusive && slack < opts.slack_cap {
                    retry.push(l);
                    continue;
                }
                out.push(CellRecord {
                    type_label: type_label.to_string(),
                    n,
                    l,
                    s: s_eff,
                    words,
                    rank,
                    normal,
                    pbw: expect,
                    verdict,
                });
            }
            if retry.is_empty() {
                break;
            }
            pending = retry;
            slack += 1;
        }
    }
    out.sort_by_key(|c| (c.n, c.l));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{relation_instances, RelationSet};
    use crate::rootdata::{build_cartan, build_root_system};
    use crate::scalars::int;

    fn ty_rels(label: &str, set: RelationSet) -> impl Fn(u32) -> Vec<FreeElement> + Sync {
        let c = build_cartan(label).unwrap();
        move |n| relation_instances(set, &c, n).into_iter().map(|x| x.element).collect()
    }

    #[test]
    fn empty_ideal_counts_all_words() {
        let w = TruncationWindow { n: 1, max_length: 1, slack: 0 };
        let b = ideal_span(&[], Alphabet::Yangian { rank: 1 }, w, SpanOptions::default()).unwrap();
        // ħ, ħ·B0, B1, H1
        assert_eq!(b.word_count(1), 4);
        assert_eq!(b.normal_word_count(1), 4);
    }

    #[test]
    fn a1_degree_zero_has_no_relations() {
        let rels = ty_rels("A1", RelationSet::FullTy)(0);
        assert!(rels.is_empty());
        let w = TruncationWindow { n: 0, max_length: 3, slack: 2 };
        let b = ideal_span(&rels, Alphabet::Yangian { rank: 1 }, w, SpanOptions::default()).unwrap();
        assert_eq!(b.captured_rank(3), 0);
        assert_eq!(b.normal_word_count(3), 4);
    }

    #[test]
    fn membership_of_products() {
        let rels = ty_rels("A1", RelationSet::FullTy)(2);
        let w = TruncationWindow { n: 2, max_length: 3, slack: 2 };
        let basis = ideal_span(&rels, Alphabet::Yangian { rank: 1 }, w, SpanOptions::default()).unwrap();
        let deg1: Vec<_> = rels.iter().filter(|r| r.homogeneous_degree() == Some(1)).collect();
        assert!(!deg1.is_empty());
        let x = FreeElement::b(0, 1).mul(deg1[0]).scale(&int(3)).add(&deg1[0].mul(&FreeElement::h(0, 1)));
        assert!(basis.contains(&x));
        assert!(!basis.contains(&FreeElement::b(0, 2)));
        // the remainder is in normal form: reducing again is a no-op
        let y = FreeElement::b(0, 1).mul(&FreeElement::b(0, 0)).mul(&FreeElement::b(0, 1));
        let r = basis.reduce(&y);
        assert_eq!(basis.reduce(&r), r);
        assert!(basis.contains(&y.sub(&r)));
    }

    #[test]
    fn canonical_rows_ignore_input_order() {
        let mut rels = ty_rels("A1", RelationSet::FullTy)(2);
        let w = TruncationWindow { n: 2, max_length: 2, slack: 1 };
        let a = ideal_span(&rels, Alphabet::Yangian { rank: 1 }, w, SpanOptions::default()).unwrap();
        rels.reverse();
        let b = ideal_span(&rels, Alphabet::Yangian { rank: 1 }, w, SpanOptions::default()).unwrap();
        assert_eq!(a.reduced_rows(), b.reduced_rows());
    }

    #[test]
    fn a1_flat_in_low_degree() {
        let c = build_cartan("A1").unwrap();
        let rs = build_root_system(&c).unwrap();
        let pbw = PbwIndex::new(&rs, 3, true);
        let rels = ty_rels("A1", RelationSet::FullTy);
        let cells =
            flatness_cells("A1", Alphabet::Yangian { rank: 1 }, &pbw, &rels, 3, 3, CertificateOptions::default()).unwrap();
        for c in &cells {
            assert_eq!(c.verdict, CellVerdict::Pass, "{c:?}");
        }
    }

    #[test]
    fn ceiling_reports_explosion() {
        let rels = ty_rels("A2", RelationSet::FullTy)(3);
        let w = TruncationWindow { n: 3, max_length: 3, slack: 2 };
        let opts = SpanOptions { row_ceiling: 10, ..Default::default() };
        let e = ideal_span(&rels, Alphabet::Yangian { rank: 2 }, w, opts).unwrap_err();
        assert!(matches!(e, GrobnerError::Explosion { .. }));
    }
}
