use cyroots_core::bimodcx::{chain_maps, cone, is_closed, minimize, resolution_of_algebra, shift, tensor_over_a};
use cyroots_core::exactlin::{kernel_basis, random_vector_bounded, rank, Field, Matrix, Scalar};
use cyroots_core::rootpair::{casimir, casimir_homotopic_to_identity, casimir_is_cycle};
use cyroots_core::sample::{random_algebra, random_two_term};
use proptest::prelude::*;

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(5)), Just(Field::Prime(101))]
}

fn matrix(field: Field, rows: usize, cols: usize, cells: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, Scalar::from_i64(field, cells[(i * cols + j) % cells.len()]));
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(f in fields(), rows in 1usize..6, cols in 1usize..6, cells in prop::collection::vec(-3i64..4, 1..36)) {
        let m = matrix(f, rows, cols, &cells);
        prop_assert_eq!(rank(&m) + kernel_basis(&m).dim(), cols);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn scalar_field_laws(a in -50i64..50, b in -50i64..50, c in 1i64..50) {
        for f in [Field::Rational, Field::Prime(7)] {
            let (x, y, z) = (Scalar::from_i64(f, a), Scalar::from_i64(f, b), Scalar::from_i64(f, c));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            if !z.is_zero() {
                prop_assert_eq!(x.div(&z).mul(&z), x.clone());
            }
        }
    }

    #[test]
    fn complexes_square_to_zero(f in fields(), sa in any::<u64>(), sx in any::<u64>(), sy in any::<u64>()) {
        let a = random_algebra(f, sa);
        let x = random_two_term(&a, sx, 3, 0);
        let y = random_two_term(&a, sy, 3, -1);
        prop_assert!(x.validate().is_valid());
        let t = tensor_over_a(&x, &y).complex;
        prop_assert!(t.validate().is_valid());
        prop_assert!(shift(&t, 3).d_squared_is_zero());
    }

    #[test]
    fn cones(f in fields(), sa in any::<u64>(), sx in any::<u64>(), sy in any::<u64>(), sm in any::<u64>()) {
        let a = random_algebra(f, sa);
        let x = random_two_term(&a, sx, 3, 0);
        let id = x.identity_map();
        let c = cone(&x, &x, &id);
        prop_assert!(c.validate().is_valid());
        prop_assert!(c.is_acyclic());
        let y = random_two_term(&a, sy, 3, 0);
        let sp = chain_maps(&x, &y, 0);
        let v = random_vector_bounded(&sp.closed, sm, 3);
        let g = sp.basis.to_map(f, &v);
        prop_assert!(is_closed(&x, &y, &g));
        prop_assert!(cone(&x, &y, &g).d_squared_is_zero());
    }

    #[test]
    fn casimir_is_identity_up_to_homotopy(f in fields(), sa in any::<u64>(), sx in any::<u64>()) {
        let a = random_algebra(f, sa);
        let x = random_two_term(&a, sx, 2, 0);
        let c = casimir(&x);
        prop_assert!(casimir_is_cycle(&x, &c));
        prop_assert!(casimir_homotopic_to_identity(&x, &c));
    }

    #[test]
    fn resolution_recovers_algebra(f in fields(), sa in any::<u64>()) {
        let a = random_algebra(f, sa);
        let r = resolution_of_algebra(&a).unwrap().complex;
        let h = r.cohomology();
        prop_assert!(h.concentrated_in(0));
        let n = a.num_vertices();
        for t in 0..n {
            for s in 0..n {
                prop_assert_eq!(h.corner(0, t, s), a.corner_indices(t, s).len());
            }
        }
    }

    #[test]
    fn minimize_keeps_cohomology(f in fields(), sa in any::<u64>(), sx in any::<u64>(), sy in any::<u64>()) {
        let a = random_algebra(f, sa);
        let x = tensor_over_a(&random_two_term(&a, sx, 3, 0), &random_two_term(&a, sy, 3, 0)).complex;
        let m = minimize(&x);
        prop_assert!(m.len() <= x.len());
        prop_assert_eq!(m.cohomology(), x.cohomology());
    }

    #[test]
    fn tensor_is_associative_on_dimensions(f in fields(), sa in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let a = random_algebra(f, sa);
        let (x, y, z) = (random_two_term(&a, s1, 2, 0), random_two_term(&a, s2, 2, 0), random_two_term(&a, s3, 2, 0));
        let l = tensor_over_a(&tensor_over_a(&x, &y).complex, &z).complex;
        let r = tensor_over_a(&x, &tensor_over_a(&y, &z).complex).complex;
        prop_assert_eq!(l.summand_multiset(), r.summand_multiset());
        prop_assert_eq!(l.cohomology(), r.cohomology());
    }
}
