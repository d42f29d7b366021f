mod common;

use proptest::prelude::*;

use common::{random_bipartite_planar, random_planar, rng};
use totalext::planar::EmbeddingError;
use totalext::PlanarEmbedding;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn euler_and_face_darts(seed in any::<u64>(), n in 2usize..40, rate in 0.0f64..0.9) {
        let emb = random_planar(&mut rng(seed), n, rate);
        let (v, e, f) = (emb.vertex_count() as i64, emb.edge_count() as i64, emb.face_count() as i64);
        prop_assert_eq!(v - e + f, 2);
        let total: usize = emb.faces().iter().map(|f| f.len()).sum();
        prop_assert_eq!(total, 2 * emb.edge_count());
        let mut seen = vec![0; emb.dart_count()];
        for face in emb.faces() {
            for &d in &face.darts {
                seen[d] += 1;
                prop_assert_eq!(emb.face_of_dart(d), face.id);
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        for d in 0..emb.dart_count() {
            prop_assert_eq!(emb.twin(emb.twin(d)), d);
            prop_assert_eq!(emb.head(emb.next_in_face(d)) != usize::MAX, true);
            prop_assert_eq!(emb.tail(emb.next_in_face(d)), emb.head(d));
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>(), n in 2usize..30) {
        let emb = random_planar(&mut rng(seed), n, 0.5);
        let again = PlanarEmbedding::parse(&emb.to_text()).unwrap();
        prop_assert_eq!(&again, &emb);
        prop_assert_eq!(again.to_text(), emb.to_text());
    }

    #[test]
    fn bipartite_generator(seed in any::<u64>(), n in 2usize..30) {
        let emb = random_bipartite_planar(&mut rng(seed), n, 0.6);
        prop_assert!(emb.is_bipartite());
        prop_assert_eq!(emb.vertex_count(), n);
        for f in emb.faces() {
            prop_assert_eq!(f.len() % 2, 0);
        }
    }

    #[test]
    fn distances_are_symmetric(seed in any::<u64>(), n in 2usize..20) {
        let emb = random_planar(&mut rng(seed), n, 0.5);
        for u in 0..n {
            let du = emb.distances_from(u);
            for (v, d) in du.iter().enumerate() {
                prop_assert_eq!(*d, emb.distances_from(v)[u]);
                prop_assert!(d.is_some());
            }
        }
    }
}

#[test]
fn k5_rotation_fails_euler() {
    let rot: Vec<Vec<usize>> = (0..5).map(|v| (0..5).filter(|&u| u != v).collect()).collect();
    assert!(matches!(
        PlanarEmbedding::from_rotations(rot),
        Err(EmbeddingError::Euler(_))
    ));
}

#[test]
fn p2_has_one_face_of_length_two() {
    let emb = PlanarEmbedding::parse("planar 1\nvertices 2\nrot 0: 1\nrot 1: 0\n").unwrap();
    assert_eq!(emb.face_count(), 1);
    assert_eq!(emb.faces()[0].len(), 2);
}
