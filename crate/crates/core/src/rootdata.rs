//! Cartan data, symmetrizers and finite root systems with fixed
//! decomposition sequences.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown type label {0:?}")]
    UnknownLabel(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("invalid Cartan matrix: {0}")]
    Invalid(String),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("matrix is not of finite type")]
    NotFinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CartanData {
    pub label: String,
    pub c: Vec<Vec<i64>>,
    pub d: Vec<i64>,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.c.len()
    }
    /// c_{ij} for 0-based node indices.
    pub fn cij(&self, i: usize, j: usize) -> i64 {
        self.c[i][j]
    }
    pub fn di(&self, i: usize) -> i64 {
        self.d[i]
    }
    /// Symmetric bilinear form on simple roots: (α_i, α_j) = d_i c_{ij}.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * b[j] * self.d[i] * self.c[i][j];
            }
        }
        s
    }
    /// ⟨β, α_i^∨⟩ = Σ_k n_k c_{ik}.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|k| beta[k] * self.c[i][k]).sum()
    }
}

/// Standard Cartan matrix by label.  Accepts `A3`, `B2`, `G2`, `G2-paper`,
/// `A1xA1`, and products joined by `x`.
pub fn build_cartan(label: &str) -> Result<CartanData, RootError> {
    let parts: Vec<&str> = label.split(['x', '×']).collect();
    let mut blocks = Vec::new();
    for p in &parts {
        blocks.push(simple_block(p.trim())?);
    }
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut c = vec![vec![0i64; n]; n];
    let mut off = 0;
    for b in &blocks {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                c[off + i][off + j] = *v;
            }
        }
        off += b.len();
    }
    let mut data = from_matrix(c)?;
    data.label = label.to_string();
    Ok(data)
}

fn simple_block(label: &str) -> Result<Vec<Vec<i64>>, RootError> {
    let unknown = || RootError::UnknownLabel(label.to_string());
    if label == "G2-paper" {
        return Ok(vec![vec![2, -1], vec![-3, 2]]);
    }
    if label.len() < 2 {
        return Err(unknown());
    }
    let (kind, rank) = label.split_at(1);
    let n: usize = rank.parse().map_err(|_| unknown())?;
    if n == 0 {
        return Err(RootError::ZeroRank);
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match kind {
        "A" => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
        }
        "B" | "C" if n >= 2 => {
            for i in 1..n {
                link(&mut c, i - 1, i);
            }
            if kind == "B" {
                c[n - 1][n - 2] = -2;
            } else {
                c[n - 2][n - 1] = -2;
            }
        }
        "D" if n >= 4 => {
            for i in 1..n - 1 {
                link(&mut c, i - 1, i);
            }
            link(&mut c, n - 3, n - 1);
        }
        "E" if (6..=8).contains(&n) => {
            link(&mut c, 0, 2);
            link(&mut c, 1, 3);
            for i in 3..n {
                link(&mut c, i - 1, i);
            }
        }
        "F" if n == 4 => {
            link(&mut c, 0, 1);
            link(&mut c, 1, 2);
            link(&mut c, 2, 3);
            c[2][1] = -2;
        }
        "G" if n == 2 => {
            c[0][1] = -3;
            c[1][0] = -1;
        }
        _ => return Err(unknown()),
    }
    Ok(c)
}

/// Validate an explicit matrix, compute its gcd-1 symmetrizer, and check
/// finite type.
pub fn from_matrix(c: Vec<Vec<i64>>) -> Result<CartanData, RootError> {
    let n = c.len();
    if n == 0 {
        return Err(RootError::ZeroRank);
    }
    for (i, row) in c.iter().enumerate() {
        if row.len() != n {
            return Err(RootError::Invalid("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(RootError::Invalid(format!("c[{i}][{i}] != 2")));
        }
        for j in 0..n {
            if i != j && (row[j] > 0 || (row[j] == 0) != (c[j][i] == 0)) {
                return Err(RootError::Invalid(format!("bad off-diagonal entry at ({i},{j})")));
            }
        }
    }
    // d as rationals num/den propagated along edges: d_j = d_i c_ij / c_ji.
    let mut d: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some((1, 1));
        comp[start] = start;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (ni, di) = d[i].unwrap();
            for j in 0..n {
                if i == j || c[i][j] == 0 {
                    continue;
                }
                let num = ni * c[i][j];
                let den = di * c[j][i];
                let g = num.gcd(&den);
                let (num, den) = (num / g * den.signum(), (den / g).abs());
                match d[j] {
                    None => {
                        d[j] = Some((num, den));
                        comp[j] = start;
                        stack.push(j);
                    }
                    Some((a, b)) => {
                        if a * den != num * b {
                            return Err(RootError::NotSymmetrizable);
                        }
                    }
                }
            }
        }
    }
    let mut dint = vec![0i64; n];
    for s in 0..n {
        if comp[s] != s {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|k| comp[*k] == s).collect();
        let l = members.iter().fold(1i64, |acc, k| acc.lcm(&d[*k].unwrap().1));
        let vals: Vec<i64> = members.iter().map(|k| d[*k].unwrap().0 * (l / d[*k].unwrap().1)).collect();
        let g = vals.iter().fold(0i64, |acc, v| acc.gcd(v));
        for (k, v) in members.iter().zip(vals) {
            dint[*k] = v / g;
        }
    }
    if dint.iter().any(|x| *x <= 0) {
        return Err(RootError::NotSymmetrizable);
    }
    let data = CartanData { label: "explicit".into(), c, d: dint };
    if !is_positive_definite(&data) {
        return Err(RootError::NotFinite);
    }
    Ok(data)
}

/// Sylvester's criterion on DC using exact fraction-free elimination.
fn is_positive_definite(data: &CartanData) -> bool {
    let n = data.rank();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (data.d[i] * data.c[i][j]) as i128).collect())
        .collect();
    // Bareiss: leading principal minors are the successive pivots.
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    true
}

pub type Root = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystem {
    pub cartan: CartanData,
    pub positive_roots: Vec<Root>,
    pub height: Vec<u32>,
    pub decomposition: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }
    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }
    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.index.get(r).copied()
    }
    pub fn is_positive_root(&self, r: &[i64]) -> bool {
        self.index.contains_key(r)
    }
    /// Positive or negative root.
    pub fn is_root(&self, r: &[i64]) -> bool {
        if r.iter().all(|x| *x >= 0) {
            self.is_positive_root(r)
        } else if r.iter().all(|x| *x <= 0) {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            self.is_positive_root(&neg)
        } else {
            false
        }
    }
    pub fn simple_index(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        self.index[&e]
    }
    pub fn max_height(&self) -> u32 {
        self.height.iter().copied().max().unwrap_or(0)
    }
    fn rebuild_index(&mut self) {
        self.index = self
            .positive_roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
    }
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        let mut rs: RootSystem = serde_json::from_str(s)?;
        rs.rebuild_index();
        Ok(rs)
    }
}

/// Enumerate positive roots by simple-root strings, order them by height and
/// then by descending coefficient vector, and fix decomposition sequences.
pub fn build_root_system(cartan: &CartanData) -> Result<RootSystem, RootError> {
    let n = cartan.rank();
    let bound = 200usize;
    let mut found: BTreeSet<Root> = BTreeSet::new();
    let mut layer: Vec<Root> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    found.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                let is_simple_i = beta.iter().enumerate().all(|(k, x)| *x == if k == i { 1 } else { 0 });
                if is_simple_i {
                    continue;
                }
                // p = how far the α_i-string extends downward from β.
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] >= 0 && found.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let qq = p - cartan.pairing(beta, i);
                if qq > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !found.contains(&up) {
                        next.insert(up);
                    }
                }
            }
        }
        found.extend(next.iter().cloned());
        if found.len() > bound {
            return Err(RootError::NotFinite);
        }
        layer = next.into_iter().collect();
    }
    let mut roots: Vec<Root> = found.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let height: Vec<u32> = roots.iter().map(|r| r.iter().sum::<i64>() as u32).collect();
    let set: BTreeSet<Root> = roots.iter().cloned().collect();
    let mut decomposition = Vec::with_capacity(roots.len());
    for r in &roots {
        let mut seq = Vec::new();
        let mut cur = r.clone();
        while cur.iter().any(|x| *x != 0) {
            let i = (0..n)
                .find(|i| {
                    let mut rest = cur.clone();
                    rest[*i] -= 1;
                    rest[*i] >= 0 && (rest.iter().all(|x| *x == 0) || set.contains(&rest))
                })
                .expect("every positive root has a simple descent");
            seq.push(i);
            cur[i] -= 1;
        }
        decomposition.push(seq);
    }
    let mut rs = RootSystem {
        cartan: cartan.clone(),
        positive_roots: roots,
        height,
        decomposition,
        index: HashMap::new(),
    };
    rs.rebuild_index();
    Ok(rs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_data() {
        let c = build_cartan("A2").unwrap();
        assert_eq!(c.c, vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(c.d, vec![1, 1]);
        let rs = build_root_system(&c).unwrap();
        assert_eq!(rs.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.height, vec![1, 1, 2]);
        assert_eq!(rs.decomposition[2], vec![0, 1]);
    }

    #[test]
    fn g2_conventions() {
        let p = build_cartan("G2-paper").unwrap();
        assert_eq!((p.c[0][1], p.c[1][0]), (-1, -3));
        assert_eq!(p.d, vec![3, 1]);
        let b = build_cartan("G2").unwrap();
        assert_eq!(b.d, vec![1, 3]);
        let rs = build_root_system(&p).unwrap();
        assert_eq!(rs.num_positive(), 6);
        assert_eq!(rs.max_height(), 5);
    }

    #[test]
    fn b2_symmetrizer() {
        let c = build_cartan("B2").unwrap();
        assert_eq!(c.c, vec![vec![2, -1], vec![-2, 2]]);
        assert_eq!(c.d, vec![2, 1]);
        assert_eq!(build_root_system(&c).unwrap().num_positive(), 4);
    }

    #[test]
    fn explicit_diagonal_and_rejections() {
        let c = from_matrix(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(c.d, vec![1, 1]);
        assert_eq!(build_cartan("A1xA1").unwrap().c, c.c);
        assert_eq!(from_matrix(vec![vec![2, -2], vec![-2, 2]]), Err(RootError::NotFinite));
        assert_eq!(
            from_matrix(vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]]).map(|c| c.d),
            Ok(vec![2, 1, 1])
        );
        assert!(matches!(from_matrix(vec![vec![2, -1], vec![0, 2]]), Err(RootError::Invalid(_))));
        assert_eq!(
            from_matrix(vec![vec![2, -1, -1], vec![-2, 2, -1], vec![-1, -1, 2]]),
            Err(RootError::NotSymmetrizable)
        );
        assert!(build_cartan("Q3").is_err());
    }

    #[test]
    fn classical_root_counts() {
        let cases = [
            ("A1", 1), ("A3", 6), ("A4", 10), ("B3", 9), ("C3", 9), ("B4", 16),
            ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120), ("F4", 24), ("G2", 6),
        ];
        for (l, k) in cases {
            let rs = build_root_system(&build_cartan(l).unwrap()).unwrap();
            assert_eq!(rs.num_positive(), k, "{l}");
        }
    }

    #[test]
    fn decompositions_have_root_suffixes() {
        for l in ["A4", "B3", "C3", "D4", "F4", "G2", "G2-paper", "E6"] {
            let rs = build_root_system(&build_cartan(l).unwrap()).unwrap();
            for (r, seq) in rs.positive_roots.iter().zip(&rs.decomposition) {
                let mut partial = vec![0; rs.rank()];
                for i in seq.iter().rev() {
                    partial[*i] += 1;
                    assert!(rs.is_positive_root(&partial), "{l} {r:?} {seq:?}");
                }
                assert_eq!(&partial, r);
            }
        }
    }

    #[test]
    fn deterministic_and_serializable() {
        let c = build_cartan("F4").unwrap();
        let a = build_root_system(&c).unwrap();
        let b = build_root_system(&c).unwrap();
        assert_eq!(a, b);
        let js = serde_json::to_string(&a).unwrap();
        let back = RootSystem::from_json(&js).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.root_index(&a.positive_roots[5]), Some(5));
    }
}
