//! Type A structure constants against (n+1)×(n+1) matrix units.

mod common;

use common::type_a::{check_type_a, comm, image_of, images};
use proptest::prelude::*;
use tyang_core::liealg::{build_lie_algebra, LieElement};
use tyang_core::rootdata::build_cartan;
use tyang_core::scalars::int;

#[test]
fn brackets_match_matrix_units() {
    for label in ["A1", "A2", "A3", "A4"] {
        check_type_a(label).unwrap();
    }
}

proptest! {
    #[test]
    fn bracket_of_combinations(cx in prop::collection::vec(-3i64..=3, 15), cy in prop::collection::vec(-3i64..=3, 15)) {
        let g = build_lie_algebra(&build_cartan("A3").unwrap()).unwrap();
        let imgs = images(&g);
        let mk = |c: &[i64]| {
            let mut x = LieElement::zero();
            for (i, v) in c.iter().enumerate() {
                x.add_term(i, &int(*v));
            }
            x
        };
        let (x, y) = (mk(&cx), mk(&cy));
        prop_assert_eq!(image_of(&g.bracket(&x, &y), &imgs), comm(&image_of(&x, &imgs), &image_of(&y, &imgs)));
    }
}
