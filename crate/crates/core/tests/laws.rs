//! Randomized algebraic laws, 1000 cases each.

mod common;

use common::strategies::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn evaluate_after_normalize_matches_direct_evaluation(
        e in raw(2),
        x in -3.0f64..3.0,
        y in -3.0f64..3.0,
    ) {
        evaluate_normalize(&e, [x, y])?;
    }

    #[test]
    fn bracket_is_bilinear(
        u in field(), v in field(), w in field(),
        a in -5i64..=5, b in 1i64..=3,
        t in point(),
    ) {
        bilinear(&u, &v, &w, (a, b), t)?;
    }

    #[test]
    fn bracket_is_antisymmetric(u in field(), v in field()) {
        antisymmetric(&u, &v)?;
    }

    #[test]
    fn bracket_satisfies_leibniz(u in field(), v in field(), f in scalar(), t in point()) {
        leibniz(&u, &v, &f, t)?;
    }

    #[test]
    fn bracket_satisfies_jacobi(u in field(), v in field(), w in field()) {
        jacobi(&u, &v, &w)?;
    }

    #[test]
    fn derivative_is_a_derivation(u in field(), f in scalar(), g in scalar(), t in point()) {
        derivation(&u, &f, &g, t)?;
    }

    #[test]
    fn d_squared_vanishes(f in scalar(), c in [scalar(), scalar(), scalar(), scalar()]) {
        d_squared(&f, &c)?;
    }
}
