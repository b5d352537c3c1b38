//! Property tests for the arithmetic invariants: multiplication path
//! agreement, the division identity, evaluation/interpolation inversion,
//! Kronecker packing, matrix route agreement, and evaluator equivalence.

use bieval::bipoly::{self, BiPoly, PointSet};
use bieval::linalg::{FieldMatrix, MatMulStrategy};
use bieval::unipoly::{MulAlgorithm, SubproductTree, UniPoly};
use bieval::{Fe, PrimeField};
use proptest::collection::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn poly(f: PrimeField, raw: &[u64]) -> UniPoly {
    UniPoly::from_u64(f, raw)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mul_paths_agree(a in vec(0u64..65537, 0..260), b in vec(0u64..65537, 0..260)) {
        let f = fp(65537);
        let (a, b) = (poly(f, &a), poly(f, &b));
        let school = a.mul_using(&b, MulAlgorithm::Schoolbook).unwrap();
        prop_assert_eq!(&school, &a.mul_using(&b, MulAlgorithm::Karatsuba).unwrap());
        prop_assert_eq!(&school, &a.mul_using(&b, MulAlgorithm::Ntt).unwrap());
        prop_assert_eq!(&school, &a.mul(&b).unwrap());
        if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
            prop_assert_eq!(school.degree(), Some(da + db));
        }
    }

    #[test]
    fn division_identity(a in vec(0u64..101, 0..200), d in vec(0u64..101, 1..120)) {
        let f = fp(101);
        let (a, d) = (poly(f, &a), poly(f, &d));
        prop_assume!(!d.is_zero());
        let (q, r) = a.divrem(&d).unwrap();
        prop_assert!(r.is_zero() || r.degree() < d.degree());
        prop_assert_eq!(q.mul(&d).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn taylor_shift_round_trip(coeffs in vec(0u64..65537, 1..130), a in 0u64..65537) {
        let f = fp(65537);
        let p = poly(f, &coeffs);
        let a = f.elem(a);
        prop_assert_eq!(p.taylor_shift(a).taylor_shift(f.neg(a)), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn eval_interpolate_inverse_pair(
        raw_xs in vec(0u64..65537, 1..48),
        seed in any::<u64>(),
    ) {
        let f = fp(65537);
        let mut xs: Vec<Fe> = raw_xs.iter().map(|&x| f.elem(x)).collect();
        xs.sort_unstable();
        xs.dedup();
        let n = xs.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ys: Vec<Fe> = (0..n).map(|_| f.sample(&mut rng)).collect();

        let tree = SubproductTree::build(f, &xs);
        let g = tree.interpolate(&ys).unwrap();
        prop_assert!(g.is_zero() || g.degree() < Some(n));
        prop_assert_eq!(tree.evaluate(&g), ys);

        let p = UniPoly::from_elems(f, (0..n + 5).map(|_| f.sample(&mut rng)).collect());
        let vals = tree.evaluate(&p);
        let horner: Vec<Fe> = xs.iter().map(|&x| p.eval(x)).collect();
        prop_assert_eq!(&vals, &horner);
        prop_assert_eq!(tree.interpolate(&vals).unwrap(), p.rem(tree.root()).unwrap());
    }

    #[test]
    fn kronecker_mul_commutes_with_evaluation(
        ac in vec(0u64..101, 1..16),
        bc in vec(0u64..101, 1..16),
        na in 1usize..5,
        nb in 1usize..5,
        x in 0u64..101,
        y in 0u64..101,
    ) {
        let f = fp(101);
        let ma = ac.len().div_ceil(na);
        let mb = bc.len().div_ceil(nb);
        let mut apad = ac.clone();
        apad.resize(na * ma, 0);
        let mut bpad = bc.clone();
        bpad.resize(nb * mb, 0);
        let a = BiPoly::from_u64(f, na, ma, &apad).unwrap();
        let b = BiPoly::from_u64(f, nb, mb, &bpad).unwrap();
        let prod = bipoly::kronecker_mul(&a, &b).unwrap();
        let (x, y) = (f.elem(x), f.elem(y));
        prop_assert_eq!(prod.eval(x, y), f.mul(a.eval(x, y), b.eval(x, y)));
    }

    #[test]
    fn strassen_agrees_with_naive_on_any_shape(
        m in 1usize..20,
        k in 1usize..20,
        n in 1usize..20,
        seed in any::<u64>(),
    ) {
        let f = fp(65537);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FieldMatrix::new(f, m, k, (0..m * k).map(|_| f.sample(&mut rng)).collect()).unwrap();
        let b = FieldMatrix::new(f, k, n, (0..k * n).map(|_| f.sample(&mut rng)).collect()).unwrap();
        let naive = a.mul(&b, &MatMulStrategy::naive()).unwrap();
        let strassen = a.mul(&b, &MatMulStrategy::strassen(2)).unwrap();
        prop_assert_eq!(naive, strassen);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn all_evaluators_match_naive(
        n in 1usize..5,
        m in 1usize..5,
        // At most 10 points: C(10,2) = 45 < 101 bad shear values, so a
        // separating theta always exists over F_101.
        raw_pts in vec((0u64..101, 0u64..101), 0..11),
        seed in any::<u64>(),
    ) {
        let f = fp(101);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = BiPoly::random(f, n, m, &mut rng);
        let pts = PointSet::new(
            f,
            raw_pts.iter().map(|&(x, y)| (f.elem(x), f.elem(y))).collect(),
        );
        let reference = bipoly::naive_multieval(&p, &pts).unwrap();
        prop_assert_eq!(bipoly::multieval_grid_blocks(&p, &pts).unwrap(), reference.clone());
        prop_assert_eq!(bipoly::multieval_any(&p, &pts, seed).unwrap(), reference);

        // Grid evaluation over the distinct coordinates agrees pointwise.
        let mut xs: Vec<Fe> = pts.xs();
        xs.sort_unstable();
        xs.dedup();
        let mut ys: Vec<Fe> = pts.ys();
        ys.sort_unstable();
        ys.dedup();
        if !xs.is_empty() && !ys.is_empty() {
            let grid = bipoly::grid_multieval(&p, &xs, &ys).unwrap();
            for (k, &x) in xs.iter().enumerate() {
                for (l, &y) in ys.iter().enumerate() {
                    prop_assert_eq!(grid[k][l], p.eval(x, y));
                }
            }
        }
    }
}
