use geosep::cubewiring::{
    box_points, comp, compress, expand, global_movement, local_movement, magn, push_pull, verify_wiring, wire_matching,
    GridPoint, Wiring, WiringInstance,
};
use proptest::prelude::*;
use proptest::sample::subsequence;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Pairwise disjoint unit-step paths that start in layer 1 and end in the
/// top layer, checked without the library verifier.
fn check_paths(w: &Wiring) -> Result<(), String> {
    let mut used = HashSet::new();
    for wire in &w.wires {
        let first = wire.path.first().ok_or("empty wire")?;
        let last = wire.path.last().ok_or("empty wire")?;
        if first[w.d - 1] != 1 || last[w.d - 1] != w.height {
            return Err(format!("wire spans layers {} to {}", first[w.d - 1], last[w.d - 1]));
        }
        if first[..w.d - 1] != wire.origin[..] || last[..w.d - 1] != wire.destination[..] {
            return Err("path endpoints differ from origin/destination".into());
        }
        for (k, p) in wire.path.iter().enumerate() {
            if !used.insert(p.clone()) {
                return Err(format!("{p:?} used twice"));
            }
            if k > 0 && p.iter().zip(&wire.path[k - 1]).map(|(a, b)| (a - b).abs()).sum::<i64>() != 1 {
                return Err(format!("jump into {p:?}"));
            }
        }
    }
    match verify_wiring(w, None).first() {
        Some(v) => Err(v.clone()),
        None => Ok(()),
    }
}

fn sides() -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![prop::collection::vec(1i64..=4, 2), prop::collection::vec(1i64..=2, 3)]
}

fn subset_of_box() -> impl Strategy<Value = (Vec<i64>, Vec<GridPoint>)> {
    sides().prop_flat_map(|n| {
        let pts = box_points(&n);
        let len = pts.len();
        (Just(n), subsequence(pts, 1..=len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_partial_matchings_are_wired(
        (n, ps) in subset_of_box(),
        seed in any::<u64>(),
    ) {
        let mut qs = box_points(&n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        qs.shuffle(&mut rng);
        qs.truncate(ps.len());
        let inst = WiringInstance { d: n.len() + 1, n: n.clone(), pairs: ps.into_iter().zip(qs).collect() };
        let w = wire_matching(&inst).unwrap();
        prop_assert_eq!(check_paths(&w), Ok(()));
        prop_assert!(verify_wiring(&w, Some(&inst)).is_empty());
        prop_assert_eq!(w.sides.clone(), n.iter().map(|s| 36 * s).collect::<Vec<_>>());
        let sum: i64 = n.iter().sum();
        prop_assert!(w.max_length() <= w.length_bound.unwrap());
        prop_assert!(w.height <= 24 * sum + 24, "height {} for Σn {}", w.height, sum);
    }

    #[test]
    fn compression_lands_on_cells((n, xs) in subset_of_box(), k in 2i64..=4) {
        let ps: Vec<GridPoint> = xs.iter().map(|x| magn(x, k, 0)).collect();
        let w = compress(&ps, k, &n).unwrap();
        prop_assert_eq!(check_paths(&w), Ok(()));
        for wire in &w.wires {
            prop_assert_eq!(&wire.destination, &comp(&wire.origin, k));
        }
        let back = expand(&ps, k, &n).unwrap();
        prop_assert_eq!(check_paths(&back), Ok(()));
        for wire in &back.wires {
            prop_assert_eq!(&wire.origin, &comp(&wire.destination, k));
        }
    }

    #[test]
    fn local_movement_stays_in_cells((n, cells) in subset_of_box(), k in 2i64..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let offsets = |rng: &mut ChaCha8Rng| -> Vec<GridPoint> {
            cells
                .iter()
                .map(|c| c.iter().map(|&x| (x - 1) * k + 1 + rand::Rng::gen_range(rng, 0..k)).collect())
                .collect()
        };
        let ps = offsets(&mut rng);
        let qs = offsets(&mut rng);
        let w = local_movement(&ps, &qs, k).unwrap();
        prop_assert_eq!(check_paths(&w), Ok(()));
        prop_assert!(w.height <= 3);
        for wire in &w.wires {
            prop_assert_eq!(comp(&wire.origin, k), comp(&wire.destination, k));
        }
        let _ = n;
    }

    #[test]
    fn global_movement_translates((n, ps) in subset_of_box(), k in 1i64..=3) {
        let w = global_movement(&ps, k, n[0]).unwrap();
        prop_assert_eq!(check_paths(&w), Ok(()));
        prop_assert_eq!(w.height, n[0] + 2);
        for wire in &w.wires {
            let mut want = wire.origin.clone();
            want[0] += k * n[0];
            prop_assert_eq!(&wire.destination, &want);
        }
    }

    #[test]
    fn push_pull_is_lexicographic((n, ps) in subset_of_box(), seed in any::<u64>()) {
        let mut n = n;
        n.sort_unstable_by(|a, b| b.cmp(a));
        let mut all = box_points(&n);
        all.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let ps: Vec<GridPoint> = all[..ps.len()].to_vec();
        let qs: Vec<GridPoint> = all[all.len() - ps.len()..].to_vec();
        let w = push_pull(&ps, &qs, &n).unwrap();
        prop_assert_eq!(check_paths(&w), Ok(()));
        prop_assert!(w.height <= 3 * n[0] + 2);
        let mut sp = ps.clone();
        let mut sq = qs.clone();
        sp.sort();
        sq.sort();
        for wire in &w.wires {
            let i = sp.binary_search(&wire.origin).unwrap();
            prop_assert_eq!(&wire.destination, &sq[i]);
        }
    }
}
