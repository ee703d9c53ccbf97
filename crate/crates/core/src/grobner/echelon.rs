//! Sparse echelon form over ℤ with primitive rows.  Entries stay in i64
//! until an operation overflows, then move to BigInt.

use crate::scalars::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::{BTreeMap, BinaryHeap, HashMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) enum Int {
    S(i64),
    B(BigInt),
}

impl Int {
    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::S(v),
            None => Int::B(b),
        }
    }
    pub fn big(&self) -> BigInt {
        match self {
            Int::S(v) => BigInt::from(*v),
            Int::B(b) => b.clone(),
        }
    }
    fn is_zero(&self) -> bool {
        matches!(self, Int::S(0))
    }
    fn is_negative(&self) -> bool {
        match self {
            Int::S(v) => *v < 0,
            Int::B(b) => b.is_negative(),
        }
    }
    fn mul(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(v) = a.checked_mul(*b) {
                return Int::S(v);
            }
        }
        Int::from_big(self.big() * o.big())
    }
    fn sub(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(v) = a.checked_sub(*b) {
                return Int::S(v);
            }
        }
        Int::from_big(self.big() - o.big())
    }
    fn neg(&self) -> Int {
        Int::S(0).sub(self)
    }
    /// Nonnegative gcd.
    fn gcd(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            let g = a.unsigned_abs().gcd(&b.unsigned_abs());
            if let Ok(v) = i64::try_from(g) {
                return Int::S(v);
            }
        }
        Int::from_big(self.big().gcd(&o.big()))
    }
    fn div_exact(&self, o: &Int) -> Int {
        if let (Int::S(a), Int::S(b)) = (self, o) {
            if let Some(v) = a.checked_div(*b) {
                return Int::S(v);
            }
        }
        Int::from_big(self.big() / o.big())
    }
    fn is_one(&self) -> bool {
        matches!(self, Int::S(1))
    }
}

/// Entries sorted by descending column.
pub(super) type IntRow = Vec<(u32, Int)>;
pub(super) type RatRow = Vec<(u32, Rational)>;

/// Integer row and factor f with f·row equal to the given rational row.
pub(super) fn from_rational(mut entries: Vec<(u32, Rational)>) -> (IntRow, Rational) {
    entries.sort_by_key(|e| std::cmp::Reverse(e.0));
    let l = entries.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let row = entries.into_iter().map(|(k, c)| (k, Int::from_big(c.numer() * (&l / c.denom())))).collect();
    (row, Rational::new(BigInt::one(), l))
}

pub(super) fn to_rational(row: &IntRow, f: &Rational) -> RatRow {
    row.iter().map(|(k, c)| (*k, f * Rational::from_integer(c.big()))).collect()
}

/// Divide by the content, making the lead positive; returns the divisor.
fn make_primitive(row: &mut IntRow) -> Int {
    let mut g = Int::S(0);
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|e| e.1.is_negative()) {
        g = g.neg();
    }
    if !g.is_one() && !g.is_zero() {
        for e in row.iter_mut() {
            e.1 = e.1.div_exact(&g);
        }
    }
    g
}

#[derive(Clone, Debug, Default)]
pub(super) struct Echelon {
    pub rows: Vec<IntRow>,
    pub pivot_of: HashMap<u32, usize>,
    scratch: Accumulator,
}

/// Dense working row with a max-heap of touched columns.
#[derive(Clone, Debug, Default)]
struct Accumulator {
    dense: Vec<Int>,
    queued: Vec<bool>,
    heap: BinaryHeap<u32>,
}

impl Accumulator {
    fn new(row: &IntRow) -> Self {
        let mut acc = Accumulator::default();
        acc.load(row);
        acc
    }
    /// Requires the accumulator to be empty.
    fn load(&mut self, row: &IntRow) {
        let n = row.first().map_or(0, |e| e.0 as usize + 1);
        if self.dense.len() < n {
            self.dense.resize(n, Int::S(0));
            self.queued.resize(n, false);
        }
        for (k, c) in row {
            self.dense[*k as usize] = c.clone();
            self.queued[*k as usize] = true;
            self.heap.push(*k);
        }
    }
    fn scale(&mut self, a: &Int) {
        for k in self.heap.iter() {
            let e = &mut self.dense[*k as usize];
            *e = e.mul(a);
        }
    }
    /// self −= b·piv (piv's lead column already cleared by the caller)
    fn sub_scaled(&mut self, b: &Int, piv: &IntRow) {
        for (k, v) in &piv[1..] {
            let e = &mut self.dense[*k as usize];
            *e = e.sub(&b.mul(v));
            if !self.queued[*k as usize] {
                self.queued[*k as usize] = true;
                self.heap.push(*k);
            }
        }
    }
    fn pop(&mut self) -> Option<(u32, Int)> {
        while let Some(k) = self.heap.pop() {
            self.queued[k as usize] = false;
            let v = std::mem::replace(&mut self.dense[k as usize], Int::S(0));
            if !v.is_zero() {
                return Some((k, v));
            }
        }
        None
    }
    fn drain(&mut self) -> IntRow {
        let mut out = Vec::new();
        while let Some(e) = self.pop() {
            out.push(e);
        }
        out
    }
}

impl Echelon {
    /// One elimination step against the pivot at `lead`; returns the factor
    /// the working row was multiplied by.
    fn eliminate(&self, acc: &mut Accumulator, p: usize, b: &Int) -> Int {
        let piv = &self.rows[p];
        let a = &piv[0].1;
        let g = a.gcd(b);
        let a = a.div_exact(&g);
        if !a.is_one() {
            acc.scale(&a);
        }
        acc.sub_scaled(&b.div_exact(&g), piv);
        a
    }

    /// Eliminate the row's leading pivots; stores it if something is left.
    pub fn insert(&mut self, row: IntRow) -> bool {
        let mut acc = std::mem::take(&mut self.scratch);
        acc.load(&row);
        let mut stored = false;
        while let Some((lead, c)) = acc.pop() {
            match self.pivot_of.get(&lead) {
                Some(&p) => {
                    self.eliminate(&mut acc, p, &c);
                }
                None => {
                    let mut out = vec![(lead, c)];
                    out.extend(acc.drain());
                    make_primitive(&mut out);
                    self.pivot_of.insert(lead, self.rows.len());
                    self.rows.push(out);
                    stored = true;
                    break;
                }
            }
        }
        self.scratch = acc;
        stored
    }

    /// Full reduction: no remaining entry sits in a pivot column.  Returns
    /// the remainder with the factor that rescales it to the input's class.
    pub fn reduce(&self, row: IntRow) -> (IntRow, Rational) {
        let mut f = Rational::one();
        let mut acc = Accumulator::new(&row);
        let mut rem: IntRow = Vec::new();
        while let Some((col, c)) = acc.pop() {
            match self.pivot_of.get(&col) {
                Some(&p) => {
                    let a = self.eliminate(&mut acc, p, &c);
                    if !a.is_one() {
                        for e in rem.iter_mut() {
                            e.1 = e.1.mul(&a);
                        }
                        f /= Rational::from_integer(a.big());
                    }
                }
                None => rem.push((col, c)),
            }
        }
        let c = make_primitive(&mut rem);
        if !c.is_zero() {
            f *= Rational::from_integer(c.big());
        }
        (rem, f)
    }

    /// Reduced echelon rows over ℚ with unit leads, by leading column.
    pub fn reduced(&self) -> Vec<RatRow> {
        let mut leads: Vec<u32> = self.pivot_of.keys().copied().collect();
        leads.sort();
        let mut done: BTreeMap<u32, RatRow> = BTreeMap::new();
        for lead in leads {
            let src = &self.rows[self.pivot_of[&lead]];
            let mut row = to_rational(src, &Rational::new(BigInt::one(), src[0].1.big()));
            let mut k = 1;
            while k < row.len() {
                let (col, c) = row[k].clone();
                if let Some(p) = done.get(&col) {
                    row = rat_axpy(&row, &c, p);
                } else {
                    k += 1;
                }
            }
            done.insert(lead, row);
        }
        done.into_values().collect()
    }
}

/// row − f·piv
fn rat_axpy(row: &RatRow, f: &Rational, piv: &RatRow) -> RatRow {
    let mut acc: BTreeMap<u32, Rational> = row.iter().cloned().collect();
    for (k, c) in piv {
        let e = acc.entry(*k).or_insert_with(Rational::zero);
        *e -= f * c;
        if e.is_zero() {
            acc.remove(k);
        }
    }
    acc.into_iter().rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::q;
    use proptest::prelude::*;

    #[test]
    fn overflow_moves_to_bigint() {
        let a = Int::S(i64::MAX);
        let p = a.mul(&Int::S(4));
        assert!(matches!(p, Int::B(_)));
        assert_eq!(p.div_exact(&Int::S(4)), a);
        assert_eq!(Int::S(i64::MIN).gcd(&Int::S(0)).big(), BigInt::from(i64::MIN).abs());
    }

    #[test]
    fn reduce_tracks_scale() {
        let mut e = Echelon::default();
        let (r, _) = from_rational(vec![(3, q(2, 1)), (1, q(1, 1))]);
        e.insert(r);
        // (3: 1/2, 0: 1) ≡ −(1/4)·(1) + (0)
        let (x, f) = from_rational(vec![(3, q(1, 2)), (0, q(1, 1))]);
        let (rem, g) = e.reduce(x);
        let got = to_rational(&rem, &(f * g));
        assert_eq!(got, vec![(1, q(-1, 4)), (0, q(1, 1))]);
    }

    proptest! {
        // rank and membership agree with a dense rational oracle
        #[test]
        fn matches_dense_elimination(m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 6), 1..7)) {
            let mut e = Echelon::default();
            let mut rank = 0;
            for r in &m {
                let row: Vec<(u32, Rational)> = r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, v)| (k as u32, q(*v, 1))).collect();
                if e.insert(from_rational(row).0) { rank += 1; }
            }
            // dense Gaussian elimination
            let mut d: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|v| q(*v, 1)).collect()).collect();
            let mut dr = 0;
            for col in 0..6 {
                if let Some(p) = (dr..d.len()).find(|&i| !d[i][col].is_zero()) {
                    d.swap(dr, p);
                    for i in 0..d.len() {
                        if i != dr && !d[i][col].is_zero() {
                            let f = &d[i][col] / &d[dr][col];
                            for c in 0..6 { let t = &f * &d[dr][c]; d[i][c] -= t; }
                        }
                    }
                    dr += 1;
                }
            }
            prop_assert_eq!(rank, dr);
            // every input row reduces to zero
            for r in &m {
                let row: Vec<(u32, Rational)> = r.iter().enumerate().filter(|(_, v)| **v != 0).map(|(k, v)| (k as u32, q(*v, 1))).collect();
                prop_assert!(e.reduce(from_rational(row).0).0.is_empty());
            }
        }
    }
}
