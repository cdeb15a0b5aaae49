//! Property tests for algebraic invariants shared across modules.

use proptest::prelude::*;

use swrecon::bounds::{sw_fer_lower_bound, BoundQuery};
use swrecon::gf2::{
    binary_entropy, inverse_binary_entropy, syndrome, systematize, BitVec, DenseMatrix, Gf2Matrix,
    SparseMatrix,
};
use swrecon::harness::{privacy_amplify, ToeplitzHash};
use swrecon::polar::polar_transform;

fn bits(len: usize) -> impl Strategy<Value = BitVec> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|v| BitVec::from_bools(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = DenseMatrix> {
    proptest::collection::vec(bits(cols), rows)
        .prop_map(move |r| DenseMatrix::from_rows(cols, r).unwrap())
}

proptest! {
    #[test]
    fn syndrome_is_linear((h, a, b) in (matrix(12, 40), bits(40), bits(40))) {
        for m in [Gf2Matrix::from(h.clone()), Gf2Matrix::from(SparseMatrix::from_dense(&h))] {
            let lhs = syndrome(&(&a ^ &b), &m).unwrap();
            let rhs = &syndrome(&a, &m).unwrap() ^ &syndrome(&b, &m).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn systematize_preserves_row_space(
        h in matrix(10, 24),
        priority in Just((0..24).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let sys = systematize(&h, &priority);
        prop_assert_eq!(sys.pivots.len(), h.rank());
        // Each matrix annihilates the other's null space.
        for (x, y) in [(&h, &sys.matrix), (&sys.matrix, &h)] {
            let ns = x.null_space();
            for v in ns.row_vecs() {
                prop_assert!(y.mul_vec(v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn polar_transform_is_involution(u in bits(64)) {
        prop_assert_eq!(polar_transform(&polar_transform(&u).unwrap()).unwrap(), u);
    }

    #[test]
    fn entropy_round_trip(h in 0.0f64..=1.0) {
        let p = inverse_binary_entropy(h).unwrap();
        prop_assert!((0.0..=0.5).contains(&p));
        prop_assert!((binary_entropy(p).unwrap() - h).abs() <= 1e-8);
    }

    #[test]
    fn toeplitz_is_linear((a, b) in (bits(96), bits(96)), seed in any::<u64>()) {
        let t = ToeplitzHash::new(96, 40, seed).unwrap();
        let lhs = privacy_amplify(&(&a ^ &b), &t).unwrap();
        let rhs = &privacy_amplify(&a, &t).unwrap() ^ &privacy_amplify(&b, &t).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bound_is_a_probability(n in 8usize..2048, frac in 0.01f64..1.0, p in 0.001f64..0.499) {
        let m = ((n as f64 * frac) as usize).max(1);
        let b = sw_fer_lower_bound(&BoundQuery::new(n, m, p).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&b));
    }
}
