mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solweights::element::{GroupElement, Perm};
use solweights::group::{structure_fingerprint, subgroup_conjugation_orbit, FiniteGroup};
use solweights::linalg::FpMatrix;
use solweights::poset::{build_chain_poset, cochain_cohomology, ChainPosetFunctor};
use solweights::robinson::{defect_zero_block_count, two_complement_shortcut};
use solweights::zoo::named_group_str;

const SMALL: [&str; 10] =
    ["S3", "S4", "S5", "A5", "dih(C3xC3)", "x(S3,S3)", "wr(S3,C2)", "GL(3,2)", "m108", "D12"];

fn group(i: usize) -> FiniteGroup {
    named_group_str(SMALL[i % SMALL.len()]).unwrap()
}

/// Conjugates every generator by a random permutation of the points.
fn relabel(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> FiniteGroup {
    let n = match g.identity() {
        GroupElement::Perm(p) => p.degree(),
        _ => unreachable!("zoo groups here are permutation groups"),
    };
    let mut images: Vec<u16> = (0..n as u16).collect();
    images.shuffle(rng);
    let x = GroupElement::Perm(Perm::from_images(images).unwrap());
    let xi = x.inv();
    let gens: Vec<GroupElement> = g.generators().iter().map(|e| e.conj_with(&x, &xi)).collect();
    FiniteGroup::generate(&gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn robinson_rank_is_choice_free(i in 0usize..10, seed in any::<u64>()) {
        let g = group(i);
        let want = defect_zero_block_count(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(common::randomized_count(&g, &mut rng).unwrap(), want);
    }

    #[test]
    fn robinson_rank_survives_relabelling(i in 0usize..10, seed in any::<u64>()) {
        let g = group(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = relabel(&g, &mut rng);
        prop_assert_eq!(defect_zero_block_count(&h).unwrap(), defect_zero_block_count(&g).unwrap());
    }

    #[test]
    fn fingerprint_survives_relabelling(i in 0usize..10, seed in any::<u64>()) {
        let g = group(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = relabel(&g, &mut rng);
        prop_assert_eq!(structure_fingerprint(&h).unwrap(), structure_fingerprint(&g).unwrap());
    }

    #[test]
    fn orbit_times_stabilizer(i in 0usize..10, seed in any::<u64>()) {
        let g = group(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<GroupElement> =
            (0..2).map(|_| g.element(rng.gen_range(0..g.order())).clone()).collect();
        let p = g.subgroup(&gens).unwrap();
        let orbit = subgroup_conjugation_orbit(g.generators(), &p, Some(g.order() as u128)).unwrap();
        let n = g.normalizer(&p).unwrap();
        prop_assert_eq!(orbit.orbit_size * n.order(), g.order());
    }

    #[test]
    fn shortcut_agrees_with_matrix(i in 0usize..10) {
        let g = group(i);
        if let Some(z) = two_complement_shortcut(&g).unwrap() {
            prop_assert_eq!(z, defect_zero_block_count(&g).unwrap());
        }
    }

    #[test]
    fn coboundary_squares_to_zero(n in 2usize..7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..12), up in prop::collection::vec(any::<bool>(), 7), seed in any::<u64>()) {
        // random DAG on n points, edges oriented from smaller to larger index
        let covers: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a < b)
            .collect();
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let poset = build_chain_poset(&labels, &covers).unwrap();
        // F_3 on chains whose top lies in an up-closed set, identities between them
        let reach = |a: usize, b: usize| a == b || poset.id(&[a, b]).is_some();
        let upset: Vec<bool> = (0..n).map(|v| (0..n).any(|u| up[u] && reach(u, v))).collect();
        let mut f = ChainPosetFunctor::zero(poset.clone(), 3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = [1u32, 2][rng.gen_range(0..2)];
        for c in 0..poset.len() {
            if upset[*poset.chains[c].last().unwrap()] {
                f.set_dim(c, 1);
            }
        }
        for c in 0..poset.len() {
            for i in 0..poset.chains[c].len() {
                if poset.length(c) == 0 {
                    continue;
                }
                let face = poset.face(c, i);
                if f.dims[face] == 1 && f.dims[c] == 1 {
                    // a nonzero scalar on singleton-to-pair maps, identity above
                    let s = if poset.length(c) == 1 { scale } else { 1 };
                    let m = FpMatrix::from_rows(3, &[vec![s as i64]]);
                    f.set_map(face, c, m).unwrap();
                }
            }
        }
        if f.check_functoriality().is_ok() {
            let h = cochain_cohomology(&f, 2).unwrap();
            prop_assert!(h.dd_zero);
        }
        // the constant functor always is one
        let h = cochain_cohomology(&ChainPosetFunctor::constant(poset, 3), 2).unwrap();
        prop_assert!(h.dd_zero);
    }

    #[test]
    fn cohomology_ignores_labelling(n in 2usize..7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..12), seed in any::<u64>()) {
        let covers: Vec<(usize, usize)> =
            edges.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a < b).collect();
        let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let base = cochain_cohomology(&ChainPosetFunctor::constant(build_chain_poset(&labels, &covers).unwrap(), 3), 2).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let moved: Vec<(usize, usize)> = covers.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
        let mut relabelled = labels.clone();
        for i in 0..n {
            relabelled[perm[i]] = labels[i].clone();
        }
        let other = cochain_cohomology(&ChainPosetFunctor::constant(build_chain_poset(&relabelled, &moved).unwrap(), 3), 2).unwrap();
        prop_assert_eq!(base.dims, other.dims);
    }
}

#[test]
fn multiplicativity() {
    for (a, b) in [("S3", "dih(C3xC3)"), ("S4", "S3"), ("dih(C3xC3)", "x(S3,S3)")] {
        let z = |s: &str| defect_zero_block_count(&named_group_str(s).unwrap()).unwrap();
        assert_eq!(z(&format!("x({a},{b})")), z(a) * z(b), "{a} x {b}");
    }
}
