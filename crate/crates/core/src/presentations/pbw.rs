//! Ordered monomials in root vectors, Cartan currents and ħ.

use crate::rootdata::RootSystem;
use serde::Serialize;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PbwLetter {
    /// b_{α,r}, α by positive-root index
    Root { root: usize, r: u32 },
    /// h_{i,s}, s odd
    Cartan { i: usize, s: u32 },
    Hbar,
}

#[derive(Clone, Debug, Serialize)]
pub struct PbwIndex {
    /// Letters in their fixed order, each with (degree, length).
    pub alphabet: Vec<(PbwLetter, u32, usize)>,
}

impl fmt::Display for PbwLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PbwLetter::Root { root, r } => write!(f, "b[{}]_{}", root, r),
            PbwLetter::Cartan { i, s } => write!(f, "h{}_{}", i + 1, s),
            PbwLetter::Hbar => write!(f, "ħ"),
        }
    }
}

impl PbwIndex {
    /// Alphabet with all letters of degree ≤ max_degree.  `with_hbar` is off
    /// for the undeformed enveloping algebra.
    pub fn new(rs: &RootSystem, max_degree: u32, with_hbar: bool) -> Self {
        let mut alphabet = Vec::new();
        for (a, ht) in rs.height.iter().enumerate() {
            for r in 0..=max_degree {
                alphabet.push((PbwLetter::Root { root: a, r }, r, *ht as usize));
            }
        }
        for i in 0..rs.rank() {
            for s in (1..=max_degree).step_by(2) {
                alphabet.push((PbwLetter::Cartan { i, s }, s, 1));
            }
        }
        if with_hbar && max_degree >= 1 {
            alphabet.push((PbwLetter::Hbar, 1, 0));
        }
        Self { alphabet }
    }

    /// Number of weakly ordered monomials of the given degree and length at
    /// most `max_length`.
    pub fn count(&self, degree: u32, max_length: usize) -> u64 {
        // table[d][l] over letters processed so far, exact degree and length
        let (dn, ln) = (degree as usize, max_length);
        let mut table = vec![vec![0u64; ln + 1]; dn + 1];
        table[0][0] = 1;
        for (_, dg, len) in &self.alphabet {
            let (dg, len) = (*dg as usize, *len);
            if dg == 0 && len == 0 {
                continue;
            }
            // unbounded multiplicity: forward accumulation
            for d in dg..=dn {
                for l in len..=ln {
                    let add = table[d - dg][l - len];
                    table[d][l] += add;
                }
            }
        }
        table[dn].iter().sum()
    }

    /// Explicit list, in the fixed order.
    pub fn enumerate(&self, degree: u32, max_length: usize) -> Vec<Vec<PbwLetter>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.rec(0, degree, max_length, &mut cur, &mut out);
        out
    }

    fn rec(&self, from: usize, deg: u32, len: usize, cur: &mut Vec<PbwLetter>, out: &mut Vec<Vec<PbwLetter>>) {
        if deg == 0 {
            out.push(cur.clone());
        }
        for (k, (l, dg, ln)) in self.alphabet.iter().enumerate().skip(from) {
            if *dg <= deg && *ln <= len && (*dg > 0 || *ln > 0) {
                cur.push(*l);
                self.rec(k, deg - dg, len - ln, cur, out);
                cur.pop();
            }
        }
    }
}

pub fn pbw_enumerate(index: &PbwIndex, degree: u32, max_length: usize) -> (u64, Vec<Vec<PbwLetter>>) {
    let list = index.enumerate(degree, max_length);
    (list.len() as u64, list)
}
