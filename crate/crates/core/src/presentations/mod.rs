//! Relation families as free-algebra elements, root vectors, generating
//! functions and PBW enumeration.

mod expr;
mod families;
mod genfun;
mod pbw;
mod normal;

pub use expr::{cyc_expr, sym_expr, Expr};
pub use families::{b_alpha_expr, instantiate, Family, PresentationError, RelIndices, RelationInstance};
pub use genfun::{genfun_relation, window_exponents, GenError, GenFamily, GenWindow};
pub use normal::normalize_cartan_right;
pub use pbw::{pbw_enumerate, PbwIndex, PbwLetter};

use crate::freealg::FreeElement;
use crate::rootdata::{CartanData, RootSystem};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// b_{α,r} as a nested commutator along the stored decomposition of α.
pub fn b_alpha(rs: &RootSystem, root: usize, r: u32) -> FreeElement {
    b_alpha_expr(&rs.decomposition[root], r).expand()
}

/// Every valid instance of `family` of degree ≤ n_max, deduplicated by
/// element.
pub fn family_instances(family: Family, cartan: &CartanData, n_max: u32) -> Vec<RelationInstance> {
    let mut seen = HashSet::new();
    enumerate_instances(family, cartan, n_max + 2, n_max + 2)
        .into_iter()
        .filter(|x| {
            !x.element.is_zero()
                && x.element.homogeneous_degree().is_some_and(|d| d <= n_max)
                && seen.insert(x.element.clone())
        })
        .collect()
}

/// Every valid instance of `family` whose indices are all ≤ bound
/// (variant tags excepted), in enumeration order.
pub fn bounded_instances(family: Family, cartan: &CartanData, bound: u32) -> Vec<RelationInstance> {
    enumerate_instances(family, cartan, bound, u32::MAX)
}

/// Instances with every index ≤ bound and r + s + Σk ≤ sum_bound.
fn enumerate_instances(family: Family, cartan: &CartanData, bound: u32, sum_bound: u32) -> Vec<RelationInstance> {
    use Family::*;
    let uses_s = matches!(
        family,
        Ty0 | Ty1 | Ty2 | Ty3 | BbAlt | BhAlt | Classical1 | Classical2 | Classical3 | ClassicalEvenCommute | ClassicalTilde
    );
    let uses_r = !matches!(family, FSerre0 | FSerre1 | FSerre2 | Classical7a | Classical7 | Classical8 | Classical9);
    let kmax = if family == ClassicalTilde { 3 } else { bound };
    let mut ks: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..family.k_len() {
        ks = ks.into_iter().flat_map(|v| (0..=kmax).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    let n = cartan.rank();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for r in 0..=if uses_r { bound } else { 0 } {
                for s in 0..=if uses_s { bound } else { 0 } {
                    for k in &ks {
                        let ksum: u32 = if family == ClassicalTilde { 0 } else { k.iter().sum() };
                        if r + s + ksum > sum_bound {
                            continue;
                        }
                        if let Ok(inst) = instantiate(family, cartan, &RelIndices::new(i, j, r, s, k)) {
                            out.push(inst);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Relation sets used by the ideal computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationSet {
    /// all current relations plus the Serre-type current families
    FullTy,
    /// current relations with only the finite Serre relations
    Reduced,
    /// the G2 presentation with the two low Serre-type families
    G2,
    /// the classical presentation of the twisted current algebra
    Classical,
}

impl RelationSet {
    pub fn families(self, cartan: &CartanData) -> Vec<Family> {
        use Family::*;
        match self {
            RelationSet::FullTy => vec![Ty0, Ty5, Ty1, Ty2, Ty3, Ty4, Ty6],
            RelationSet::Reduced => vec![Ty0, Ty5, Ty1, Ty2, FSerre0, FSerre1, FSerre2],
            RelationSet::G2 => vec![Ty0, Ty5, Ty1, Ty2, TyG2_1, TyG2_2],
            RelationSet::Classical => {
                let mut f = vec![Classical1, Classical2, Classical3, Classical4Prime, Classical4, Classical5];
                if (0..cartan.rank()).any(|i| (0..cartan.rank()).any(|j| cartan.cij(i, j) == -3)) {
                    f.push(Classical6);
                }
                f
            }
        }
    }
}

pub fn relation_instances(set: RelationSet, cartan: &CartanData, n_max: u32) -> Vec<RelationInstance> {
    set.families(cartan).into_iter().flat_map(|f| family_instances(f, cartan, n_max)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::currentalg::{CurrentAlgebra, Truncation};
    use crate::liealg::build_lie_algebra;
    use crate::rootdata::{build_cartan, build_root_system};
    use crate::scalars::{int, HbarPoly};
    use std::sync::Arc;

    fn b(i: usize, r: u32) -> FreeElement {
        FreeElement::b(i, r)
    }

    #[test]
    fn ty5_and_ty2_rank_one() {
        let a1 = build_cartan("A1").unwrap();
        let t5 = instantiate(Family::Ty5, &a1, &RelIndices::pair(0, 0)).unwrap();
        let h = FreeElement::h(0, 1);
        let expect = h.mul(&b(0, 0)).sub(&b(0, 0).mul(&h)).sub(&b(0, 1).scale(&int(4)));
        assert_eq!(t5.element, expect);
        let t2 = instantiate(Family::Ty2, &a1, &RelIndices::pair(0, 0)).unwrap();
        let expect = b(0, 0)
            .commutator(&b(0, 1))
            .sub(&b(0, 1).commutator(&b(0, 0)))
            .add(&b(0, 0).anticommutator(&b(0, 0)).scale_poly(&HbarPoly::hbar_pow(1)))
            .sub(&h.scale(&int(2)));
        assert_eq!(t2.element, expect);
        assert_eq!(t2.element.homogeneous_degree(), Some(1));
    }

    #[test]
    fn current_serre_at_zero_is_finite_serre() {
        let a2 = build_cartan("A2").unwrap();
        let idx = RelIndices::pair(0, 1).with_k(&[0, 0]);
        let t4 = instantiate(Family::Ty4, &a2, &idx).unwrap();
        let f1 = instantiate(Family::FSerre1, &a2, &RelIndices::pair(0, 1)).unwrap();
        assert_eq!(t4.element, f1.element.scale(&int(2)));
        let b2 = build_cartan("B2").unwrap();
        let (i, j) = (1, 0);
        assert_eq!(b2.cij(i, j), -2);
        let t6 = instantiate(Family::Ty6, &b2, &RelIndices::pair(i, j).with_k(&[0, 0, 0])).unwrap();
        let f2 = instantiate(Family::FSerre2, &b2, &RelIndices::pair(i, j)).unwrap();
        assert_eq!(t6.element, f2.element.scale(&int(6)));
    }

    #[test]
    fn preconditions_are_enforced() {
        let a2 = build_cartan("A2").unwrap();
        assert!(matches!(
            instantiate(Family::Ty6, &a2, &RelIndices::pair(0, 1).with_k(&[0, 0, 0])),
            Err(PresentationError::CartanMismatch { .. })
        ));
        assert!(matches!(
            instantiate(Family::Ty0, &a2, &RelIndices::pair(0, 1).with_r(2).with_s(1)),
            Err(PresentationError::Indices(..))
        ));
    }

    #[test]
    fn root_vectors() {
        let rs = build_root_system(&build_cartan("A2").unwrap()).unwrap();
        let top = rs.root_index(&[1, 1]).unwrap();
        let x = b_alpha(&rs, top, 2);
        let d = &rs.decomposition[top];
        assert_eq!(x, b(d[0], 0).commutator(&b(d[1], 2)));
        assert_eq!(b_alpha(&rs, rs.simple_index(1), 3), b(1, 3));
        let g2 = build_root_system(&build_cartan("G2").unwrap()).unwrap();
        let hi = (0..g2.num_positive()).max_by_key(|a| g2.height[*a]).unwrap();
        let y = b_alpha(&g2, hi, 0);
        assert_eq!((y.min_length(), y.max_length()), (5, 5));
        assert!(!y.is_zero());
    }

    #[test]
    fn pbw_counts() {
        let rs = build_root_system(&build_cartan("A1").unwrap()).unwrap();
        let ix = PbwIndex::new(&rs, 3, true);
        assert_eq!(ix.count(0, 2), 3);
        // ħ, ħ·b_{α,0}, b_{α,1}, h_{1,1}
        assert_eq!(ix.count(1, 1), 4);
        assert_eq!(ix.count(0, 0), 1);
        for n in 0..=3 {
            for l in 0..=3 {
                assert_eq!(pbw_enumerate(&ix, n, l).0, ix.count(n, l));
            }
        }
        let (_, list) = pbw_enumerate(&ix, 1, 1);
        assert!(list.contains(&vec![PbwLetter::Hbar]));
        assert!(list.contains(&vec![PbwLetter::Cartan { i: 0, s: 1 }]));
    }

    fn classical_image(x: &RelationInstance) -> FreeElement {
        normalize_cartan_right(&x.expr.classical().expand(), &x.cartan)
    }

    #[test]
    fn classical_limit_symbolwise() {
        let a2 = build_cartan("A2").unwrap();
        for k1 in 0..3 {
            for k2 in 0..3 {
                for r in 0..2 {
                    let idx = RelIndices::pair(0, 1).with_r(r).with_k(&[k1, k2]);
                    let y = instantiate(Family::Ty4, &a2, &idx).unwrap();
                    let c = instantiate(Family::Classical4, &a2, &idx).unwrap();
                    assert_eq!(classical_image(&y), normalize_cartan_right(&c.element, &a2), "{}", idx);
                }
            }
        }
    }

    #[test]
    fn classical_relations_vanish_under_rho() {
        for (label, fam, i, j, kl) in [("A2", Family::Classical4, 0, 1, 2), ("B2", Family::Classical5, 1, 0, 3)] {
            let cartan = build_cartan(label).unwrap();
            let lie = Arc::new(build_lie_algebra(&cartan).unwrap());
            let alg = CurrentAlgebra::new(lie, 12, Truncation::Strict);
            let mut tuples = vec![vec![]];
            for _ in 0..kl {
                tuples = tuples.into_iter().flat_map(|t: Vec<u32>| (0..3).map(move |x| [t.clone(), vec![x]].concat())).collect();
            }
            for k in tuples {
                for r in 0..3 {
                    let x = instantiate(fam, &cartan, &RelIndices::pair(i, j).with_r(r).with_k(&k)).unwrap();
                    assert!(x.expr.rho(&alg).unwrap().is_zero(), "{:?} {:?}", k, r);
                }
            }
        }
    }
}
