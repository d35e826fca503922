use proptest::prelude::*;

use rankin_cohen::bracket::{bracket_jacobi, bracket_jacobi_poly};
use rankin_cohen::io::{export_jacobi, import_jacobi};
use rankin_cohen::rational::{format_canonical, parse_canonical, ratio};
use rankin_cohen::series::{add, d_z, heat, mul, scale, theta_q};
use rankin_cohen::{JacobiSeries, Rational};

const TRUNC: u32 = 3;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

/// Arbitrary coefficients on `n <= TRUNC`, `|r| <= 4`.
fn series(weight: i64, index: u32) -> impl Strategy<Value = JacobiSeries> {
    proptest::collection::vec(((0i64..=TRUNC as i64, -4i64..=4), small_rational()), 0..10)
        .prop_map(move |entries| JacobiSeries::from_coeffs(weight, index, TRUNC, entries).unwrap())
}

/// Coefficients depending only on `(4nm - r², r mod 2m)`, restricted to
/// `4nm - r² >= 0`.
fn invariant_series(weight: i64, index: u32) -> impl Strategy<Value = JacobiSeries> {
    let m = i64::from(index);
    proptest::collection::vec(small_rational(), 64).prop_map(move |values| {
        let mut entries = Vec::new();
        for n in 0..=TRUNC as i64 {
            for r in -(2 * n * m)..=(2 * n * m) {
                let disc = 4 * n * m - r * r;
                if disc >= 0 {
                    let class = (disc * 2 * m + r.rem_euclid(2 * m)) as usize % values.len();
                    entries.push(((n, r), values[class].clone()));
                }
            }
        }
        JacobiSeries::from_coeffs(weight, index, TRUNC, entries).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_commutative(f in series(4, 1), g in series(4, 1)) {
        prop_assert_eq!(mul(&f, &g), mul(&g, &f));
    }

    #[test]
    fn product_is_associative(f in series(4, 1), g in series(6, 2), h in series(2, 1)) {
        prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
    }

    #[test]
    fn product_distributes(f in series(4, 1), g in series(6, 2), h in series(6, 2)) {
        let lhs = mul(&f, &add(&g, &h).unwrap());
        let rhs = add(&mul(&f, &g), &mul(&f, &h)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn one_is_neutral(f in series(4, 2)) {
        prop_assert_eq!(mul(&JacobiSeries::one(TRUNC), &f), f);
    }

    #[test]
    fn heat_splits_into_q_and_z_parts(f in series(4, 2)) {
        // heat = 4m theta_q - d_z²
        let four_m = Rational::from_integer((4 * i64::from(f.index())).into());
        let split = add(&scale(&four_m, &theta_q(&f)), &scale(&ratio(-1, 1), &d_z(&d_z(&f)))).unwrap();
        prop_assert_eq!(heat(&f), split);
    }

    #[test]
    fn d_z_is_a_derivation(f in series(4, 1), g in series(4, 2)) {
        let lhs = d_z(&mul(&f, &g));
        let rhs = add(&mul(&d_z(&f), &g), &mul(&f, &d_z(&g))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn heat_preserves_support_and_classes(f in invariant_series(4, 2)) {
        prop_assert!(f.has_holomorphic_support());
        prop_assert!(f.check_disc_class_invariance().unwrap().is_none());
        let h = heat(&f);
        prop_assert!(h.has_holomorphic_support());
        prop_assert!(h.check_disc_class_invariance().unwrap().is_none());
    }

    #[test]
    fn bracket_is_bilinear(
        f1 in series(4, 1), f2 in series(4, 1), g in series(6, 1),
        c in small_rational(), x in small_rational(), v in 0u32..=4,
    ) {
        let lhs = bracket_jacobi(&add(&f1, &scale(&c, &f2)).unwrap(), &g, &x, v);
        let rhs = add(&bracket_jacobi(&f1, &g, &x, v), &scale(&c, &bracket_jacobi(&f2, &g, &x, v))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_commutes_with_truncation(f in series(4, 1), g in series(6, 2), x in small_rational(), v in 0u32..=4) {
        let full = bracket_jacobi(&f, &g, &x, v);
        let low = bracket_jacobi(&f.truncate(1), &g.truncate(2), &x, v);
        prop_assert_eq!(low.trunc(), 1);
        prop_assert_eq!(full.truncate(1), low);
    }

    #[test]
    fn bracket_polynomial_matches_evaluation(f in series(4, 1), g in series(6, 2), x in small_rational(), v in 0u32..=5) {
        let poly = bracket_jacobi_poly(&f, &g, v);
        let mut acc = JacobiSeries::zero(poly[0].weight(), poly[0].index(), poly[0].trunc());
        for p in poly.iter().rev() {
            acc = add(&scale(&x, &acc), p).unwrap();
        }
        prop_assert_eq!(acc, bracket_jacobi(&f, &g, &x, v));
    }

    #[test]
    fn swapping_inputs_negates_odd_brackets(f in series(4, 1), g in series(4, 1), v in 0u32..=5) {
        // Equal weights and indices: [g, f]_(X,v) = (-1)^v [f, g]_(-X,v).
        let x = ratio(1, 3);
        let sign = if v % 2 == 0 { ratio(1, 1) } else { ratio(-1, 1) };
        prop_assert_eq!(
            bracket_jacobi(&g, &f, &x, v),
            scale(&sign, &bracket_jacobi(&f, &g, &-x.clone(), v))
        );
    }

    #[test]
    fn canonical_rationals_round_trip(x in small_rational()) {
        prop_assert_eq!(parse_canonical(&format_canonical(&x)).unwrap(), x);
    }

    #[test]
    fn files_round_trip(f in series(7, 3)) {
        let text = export_jacobi(&f);
        let back = import_jacobi(&text).unwrap();
        prop_assert_eq!(export_jacobi(&back), text);
        prop_assert_eq!(back, f);
    }
}
