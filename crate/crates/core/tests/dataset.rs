use lle_core::dataset::{
    gen_swiss_roll_hole, make_isometric_embedding, read_csv, write_csv, EmbeddingOp, Hole, SwissRollDomain,
};
use lle_core::{PointCloud, StandardEmbedding};
use proptest::prelude::*;

fn roll(n: usize, seed: u64) -> PointCloud {
    gen_swiss_roll_hole(n, seed, Some(Hole::centered(&SwissRollDomain::default()))).unwrap()
}

#[test]
fn extra_dimension_perturbation_is_bounded() {
    let base = roll(500, 1);
    let e1 = StandardEmbedding::E1.apply(&base, 18, 2).unwrap();
    let e2 = StandardEmbedding::E2.apply(&base, 18, 2).unwrap();
    assert_eq!(e2.dim(), 19);
    for i in 0..base.len() {
        let (a, b) = (e1.point(i), e2.point(i));
        let mut d2 = b[18] * b[18];
        for j in 0..18 {
            d2 += (a[j] - b[j]).powi(2);
        }
        assert!(d2.sqrt() <= 0.1);
    }
}

#[test]
fn sine_ops_require_the_isometric_image() {
    let base = roll(10, 0);
    let e1 = make_isometric_embedding(3, 18, 0).unwrap();
    assert!(EmbeddingOp::per_coord_sine(&e1, 0.1).apply(&base).is_err());
    assert!(EmbeddingOp::extra_dim_sine(&e1, 0.1).apply(&base).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isometry_preserves_pairwise_distances(
        seed in 0u64..10_000,
        p in prop::collection::vec(-50.0f64..50.0, 3),
        q in prop::collection::vec(-50.0f64..50.0, 3),
        d_out in 3usize..30,
    ) {
        let op = make_isometric_embedding(3, d_out, seed).unwrap();
        let cloud = PointCloud::from_rows(&[p, q]).unwrap();
        let img = op.apply(&cloud).unwrap();
        let before = (cloud.point(0) - cloud.point(1)).norm();
        let after = (img.point(0) - img.point(1)).norm();
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn csv_round_trip_is_lossless(values in prop::collection::vec(any::<f64>().prop_filter("finite", |v| v.is_finite()), 1..60)) {
        let dim = 3;
        let n = values.len() / dim;
        prop_assume!(n > 0);
        let rows: Vec<Vec<f64>> = values.chunks_exact(dim).map(<[f64]>::to_vec).collect();
        let cloud = PointCloud::from_rows(&rows).unwrap();
        let mut buf = Vec::new();
        write_csv(&cloud, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        prop_assert_eq!(back.points(), cloud.points());
    }

    #[test]
    fn generator_is_deterministic(n in 1usize..200, seed in any::<u64>()) {
        prop_assert_eq!(roll(n, seed), roll(n, seed));
    }
}
