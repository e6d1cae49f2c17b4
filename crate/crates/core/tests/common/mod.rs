#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use solweights::element::GroupElement;
use solweights::group::FiniteGroup;
use solweights::robinson::robinson_matrix_with;
use solweights::Result;

/// The same group rebuilt from a shuffled generating set padded with random elements.
pub fn regenerate(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Result<FiniteGroup> {
    let mut gens = g.generators().to_vec();
    for _ in 0..2 {
        gens.push(g.element(rng.gen_range(0..g.order())).clone());
    }
    gens.shuffle(rng);
    FiniteGroup::generate(&gens)
}

/// Block count with random generators, a random Sylow conjugate and random double-coset representatives.
pub fn randomized_count(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Result<usize> {
    let h = regenerate(g, rng)?;
    let x = h.element(rng.gen_range(0..h.order())).clone();
    let xi = x.inv();
    let s0 = h.sylow_subgroup(2)?;
    let conj: Vec<GroupElement> = s0.generators().iter().map(|e| e.conj_with(&x, &xi)).collect();
    let s = if conj.is_empty() { s0 } else { h.subgroup(&conj)? };
    let seed: u64 = rng.gen();
    let pick = move |dz: &[usize]| {
        let k = (seed ^ dz[0] as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 33;
        dz[(k % dz.len() as u64) as usize]
    };
    Ok(robinson_matrix_with(&h, s, &pick)?.count())
}
