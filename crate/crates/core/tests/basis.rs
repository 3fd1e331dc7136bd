use adiamis_core::basis::IsBasis;
use adiamis_core::graph::{complete, edgeless, gen_gnp, spider, Graph};
use adiamis_core::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn brute_states(g: &Graph) -> Vec<u64> {
    (0u64..1 << g.n()).filter(|&s| g.is_independent(s)).collect()
}

fn brute_hops(states: &[u64]) -> BTreeSet<(u32, u32)> {
    let mut hops = BTreeSet::new();
    for (i, &a) in states.iter().enumerate() {
        for (j, &b) in states.iter().enumerate() {
            if (a ^ b).count_ones() == 1 && b > a {
                hops.insert((i as u32, j as u32));
            }
        }
    }
    hops
}

fn check_basis(g: &Graph) -> Result<(), TestCaseError> {
    let b = IsBasis::build(g).unwrap();
    let states = brute_states(g);
    prop_assert_eq!(b.states(), &states[..]);
    prop_assert_eq!(b.states()[0], 0);
    for (j, &s) in b.states().iter().enumerate() {
        prop_assert_eq!(b.sizes()[j], s.count_ones());
        prop_assert_eq!(b.index_of(s), Some(j));
    }
    let hops: BTreeSet<_> = b.hops().iter().copied().collect();
    prop_assert_eq!(hops.len(), b.hops().len());
    prop_assert_eq!(hops, brute_hops(&states));
    for &(lo, hi) in b.hops() {
        let (lo, hi) = (lo as usize, hi as usize);
        prop_assert_eq!((b.states()[hi] ^ b.states()[lo]).count_ones(), 1);
        prop_assert_eq!(b.states()[hi] & b.states()[lo], b.states()[lo]);
        prop_assert_eq!(b.sizes()[hi], b.sizes()[lo] + 1);
    }
    // every nonempty set is reached from the layer below
    let mut has_parent = vec![false; b.dimension()];
    for &(_, hi) in b.hops() {
        has_parent[hi as usize] = true;
    }
    prop_assert!(has_parent.iter().skip(1).all(|&p| p));
    Ok(())
}

#[test]
fn small_examples() {
    let k3 = IsBasis::build(&complete(3).unwrap()).unwrap();
    assert_eq!(k3.states(), &[0, 1, 2, 4]);
    assert_eq!(k3.hops().len(), 3);
    assert_eq!(k3.mis_indices(), vec![1, 2, 3]);

    let e3 = IsBasis::build(&edgeless(3).unwrap()).unwrap();
    assert_eq!(e3.dimension(), 8);
    assert_eq!(e3.hops().len(), 12);

    let path = IsBasis::build(&spider(1).unwrap()).unwrap();
    assert_eq!(path.states(), &[0b000, 0b001, 0b010, 0b100, 0b101]);
    assert_eq!(path.hops().len(), 5);

    let s2 = IsBasis::build(&spider(2).unwrap()).unwrap();
    assert_eq!(s2.dimension(), 13);
    assert_eq!(s2.mis_indices().len(), 1);

    for n in 1..=10 {
        assert_eq!(IsBasis::build(&edgeless(n).unwrap()).unwrap().dimension(), 1 << n);
    }
}

#[test]
fn cap_is_reported() {
    let err = IsBasis::build_capped(&edgeless(10).unwrap(), 100).unwrap_err();
    match err {
        Error::BasisCap { cap, found } => {
            assert_eq!(cap, 100);
            assert_eq!(found, 100);
        }
        other => panic!("unexpected error {other:?}"),
    }
    assert!(IsBasis::build_capped(&edgeless(10).unwrap(), 1024).is_ok());
}

#[test]
fn spider_families() {
    for legs in 1..=5 {
        check_basis(&spider(legs).unwrap()).unwrap();
    }
}

proptest! {
    #[test]
    fn basis_matches_brute_force(n in 1usize..=12, p in 0.0f64..=1.0, seed: u64) {
        check_basis(&gen_gnp(n, p, seed).unwrap())?;
    }

    #[test]
    fn layer_counts_sum_to_dimension(n in 1usize..=16, p in 0.1f64..=0.9, seed: u64) {
        let b = IsBasis::build(&gen_gnp(n, p, seed).unwrap()).unwrap();
        let layers = b.layer_counts();
        prop_assert_eq!(layers.iter().sum::<usize>(), b.dimension());
        prop_assert_eq!(layers.len(), b.max_size() + 1);
        prop_assert!(layers.iter().all(|&c| c > 0));
    }
}
