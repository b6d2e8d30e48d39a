use nalgebra::DVector;
use proptest::prelude::*;

use tqrabi::fock::{block_basis, build_parity_block, full_hamiltonian, parity_of};
use tqrabi::linalg::eigen_symmetric;
use tqrabi::output::fmt17;
use tqrabi::poly::{ratio, Monomial, PolyMatrix, RationalPoint, RationalPoly};
use tqrabi::spectrum::populations;
use tqrabi::{ModelParams, Parity};

fn small_poly() -> impl Strategy<Value = RationalPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -20i64..20, 1i64..6), 0..5).prop_map(|terms| {
        RationalPoly::from_terms(
            terms
                .into_iter()
                .map(|((i, j, k), n, d)| (Monomial([i, j, k]), ratio(n, d))),
        )
    })
}

fn point() -> impl Strategy<Value = RationalPoint> {
    (-9i64..9, 1i64..5, -9i64..9, 1i64..5, -9i64..9, 1i64..5).prop_map(|(an, ad, bn, bd, gn, gd)| RationalPoint {
        a: ratio(an, ad),
        b: ratio(bn, bd),
        g: ratio(gn, gd),
    })
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Even), Just(Parity::Odd)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_exact(p in small_poly(), q in small_poly()) {
        prop_assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn evaluation_is_a_ring_map(p in small_poly(), q in small_poly(), pt in point()) {
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
        prop_assert_eq!((&p + &q).eval(&pt), p.eval(&pt) + q.eval(&pt));
    }

    #[test]
    fn bareiss_equals_cofactors(entries in prop::collection::vec(small_poly(), 9)) {
        let m = PolyMatrix::from_fn(3, |i, j| entries[3 * i + j].clone());
        prop_assert_eq!(m.bareiss_determinant(), m.cofactor_determinant());
    }

    #[test]
    fn row_scaling_scales_determinant(
        entries in prop::collection::vec(small_poly(), 9),
        s in prop::collection::vec((1i64..7, 1i64..7), 3),
    ) {
        let m = PolyMatrix::from_fn(3, |i, j| entries[3 * i + j].clone());
        let mut scaled = m.clone();
        let mut factor = RationalPoly::one();
        for (i, (n, d)) in s.iter().enumerate() {
            let c = RationalPoly::constant(ratio(*n, *d));
            scaled.scale_row(i, &c);
            factor = &factor * &c;
        }
        prop_assert_eq!(scaled.bareiss_determinant(), &m.bareiss_determinant() * &factor);
    }

    #[test]
    fn parity_blocks_never_mix(
        d1 in -2.0f64..2.0, d2 in -2.0f64..2.0, g1 in 0.0f64..2.0, g2 in 0.0f64..2.0, cutoff in 1usize..8,
    ) {
        let p = ModelParams::new(d1, d2, g1, g2, 1.0).unwrap();
        let (basis, h) = full_hamiltonian(&p, cutoff);
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if parity_of(&basis[i]) != parity_of(&basis[j]) {
                    prop_assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn block_is_symmetric_tridiagonal(
        d1 in -2.0f64..2.0, d2 in -2.0f64..2.0, g1 in 0.0f64..2.0, g2 in 0.0f64..2.0,
        par in parity(), cutoff in 1usize..12,
    ) {
        let p = ModelParams::new(d1, d2, g1, g2, 1.0).unwrap();
        let block = build_parity_block(&p, par, cutoff).unwrap();
        let h = block.dense();
        prop_assert_eq!(&h, &h.transpose());
        for i in 0..h.nrows() {
            for j in 0..h.ncols() {
                if (i / 2).abs_diff(j / 2) > 1 {
                    prop_assert_eq!(h[(i, j)], 0.0);
                }
            }
        }
    }

    #[test]
    fn sturm_count_matches_dense(
        d1 in -2.0f64..2.0, d2 in -2.0f64..2.0, g1 in 0.0f64..1.5, g2 in 0.0f64..1.5,
        par in parity(), x in -6.0f64..20.0,
    ) {
        let p = ModelParams::new(d1, d2, g1, g2, 1.0).unwrap();
        let block = build_parity_block(&p, par, 14).unwrap();
        let vals = eigen_symmetric(&block.dense(), false).unwrap().values;
        let margin = vals.iter().map(|v| (v - x).abs()).fold(f64::INFINITY, f64::min);
        prop_assume!(margin > 1e-9);
        prop_assert_eq!(block.matrix.count_below(x), vals.iter().filter(|v| **v < x).count());
    }

    #[test]
    fn singlets_are_eigenvectors(d in -2.0f64..2.0, g in 0.0f64..2.0, n in 0usize..8) {
        let (_, h) = full_hamiltonian(&ModelParams::symmetric(d, d, g), 9);
        let mut v = DVector::zeros(h.nrows());
        v[4 * n + 1] = std::f64::consts::FRAC_1_SQRT_2;
        v[4 * n + 2] = -std::f64::consts::FRAC_1_SQRT_2;
        prop_assert!((&h * &v - &v * n as f64).norm() < 1e-12);
    }

    #[test]
    fn populations_sum_to_one(raw in prop::collection::vec(-1.0f64..1.0, 12), par in parity()) {
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-3);
        let v: Vec<f64> = raw.iter().map(|x| x / norm).collect();
        let p = populations(&v, &block_basis(par, 5)).unwrap();
        prop_assert!((p.iter().map(|x| x.1).sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|x| x.1 >= 0.0));
    }

    #[test]
    fn floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        prop_assert_eq!(fmt17(x).parse::<f64>().unwrap(), if x == 0.0 { 0.0 } else { x });
    }
}
