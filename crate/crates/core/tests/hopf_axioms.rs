use std::sync::Arc;

use proptest::prelude::*;
use qtriang::catalog;
use qtriang::{CycScalar, FiniteGroup, GATensor};

const GROUPS: [&str; 5] = ["Z2", "Z4", "Z2xZ2", "S3", "Q8"];

fn element(g: &Arc<FiniteGroup>, raw: &[(usize, i64)]) -> GATensor {
    let mut x = GATensor::zero(g, 1);
    for &(h, c) in raw {
        x.add_term(vec![h % g.size()], CycScalar::from_integer(c));
    }
    x
}

fn arb_pair() -> impl Strategy<Value = (Arc<FiniteGroup>, GATensor, GATensor, GATensor)> {
    let raw = || prop::collection::vec((0usize..8, -3i64..=3), 0..6);
    (0..GROUPS.len(), raw(), raw(), raw()).prop_map(|(k, a, b, c)| {
        let g = catalog::group(GROUPS[k]).unwrap();
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        (g, x, y, z)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algebra_is_associative_and_unital((g, x, y, z) in arb_pair()) {
        let xy_z = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let x_yz = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(x.multiply(&GATensor::unit(&g, 1)).unwrap(), x);
    }

    #[test]
    fn coproduct_is_coassociative_and_multiplicative((_g, x, y, _z) in arb_pair()) {
        let d = x.coproduct(1).unwrap();
        prop_assert_eq!(d.coproduct(1).unwrap(), d.coproduct(2).unwrap());
        let dxy = x.multiply(&y).unwrap().coproduct(1).unwrap();
        prop_assert_eq!(dxy, d.multiply(&y.coproduct(1).unwrap()).unwrap());
        // cocommutative
        prop_assert_eq!(d.flip().unwrap(), d);
    }

    #[test]
    fn counit_and_antipode_axioms((g, x, _y, _z) in arb_pair()) {
        let d = x.coproduct(1).unwrap();
        prop_assert_eq!(d.counit(2).unwrap(), x.clone());
        prop_assert_eq!(d.counit(1).unwrap(), x.clone());
        let eps = x.counit(1).unwrap().scalar_value();
        let unit = GATensor::unit(&g, 1).scale(&eps);
        prop_assert_eq!(d.antipode(1).unwrap().multiply_legs(), unit.clone());
        prop_assert_eq!(d.antipode(2).unwrap().multiply_legs(), unit);
    }
}
