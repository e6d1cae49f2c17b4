//! Enumerated finite groups and the standard constructions on them.
//!
//! A [`FiniteGroup`] is a generating set together with the full list of its
//! elements in breadth-first order (identity first). Everything here works on
//! element indices into that list once the group is built.

use std::collections::VecDeque;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use rustc_hash::{FxHashMap, FxHasher};
use serde::Serialize;

use crate::element::{GroupElement, Perm};
use crate::error::{Error, Result};
use crate::util;

/// One conjugacy class.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: GroupElement,
    pub rep_index: usize,
    pub size: usize,
    pub centralizer_order: usize,
}

#[derive(Clone, Debug)]
struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    gens: Vec<GroupElement>,
    elems: Vec<GroupElement>,
    index: FxHashMap<GroupElement, u32>,
    classes: OnceLock<ClassData>,
    orders: OnceLock<Vec<u32>>,
}

/// Enumerates `<generators>` breadth first. Fails once more than `cap` elements appear.
pub fn closure_enumerate(generators: &[GroupElement], cap: usize) -> Result<FiniteGroup> {
    let first = generators.first().ok_or(Error::NoGenerators)?;
    if generators.iter().any(|g| !g.compatible(first)) {
        return Err(Error::IncompatibleGenerators);
    }
    let id = first.identity_like();
    let gens: Vec<GroupElement> = generators.to_vec();
    let mut elems = vec![id.clone()];
    let mut index = FxHashMap::default();
    index.insert(id, 0u32);
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let h = elems[i].mul(g);
            if !index.contains_key(&h) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded { cap });
                }
                index.insert(h.clone(), elems.len() as u32);
                elems.push(h);
            }
        }
        i += 1;
    }
    Ok(FiniteGroup { gens, elems, index, classes: OnceLock::new(), orders: OnceLock::new() })
}

impl FiniteGroup {
    /// Enumerates with the global cap.
    pub fn generate(generators: &[GroupElement]) -> Result<FiniteGroup> {
        closure_enumerate(generators, util::cap())
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elems[i]
    }

    pub fn identity(&self) -> &GroupElement {
        &self.elems[0]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    /// Whether every element of `h` lies in `self` (checked on generators).
    pub fn contains_group(&self, h: &FiniteGroup) -> bool {
        h.gens.iter().all(|g| self.contains(g))
    }

    /// `<gens>` as a subgroup; the generators must lie in `self`.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<FiniteGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::ElementNotInGroup);
        }
        if gens.is_empty() {
            return self.trivial_subgroup();
        }
        closure_enumerate(gens, util::cap())
    }

    pub fn trivial_subgroup(&self) -> Result<FiniteGroup> {
        closure_enumerate(&[self.identity().clone()], 1)
    }

    /// The subgroup whose elements are `members` (indices into `self`), with a
    /// generating set picked greedily in the given order.
    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<FiniteGroup> {
        let mut h = self.trivial_subgroup()?;
        let mut gens: Vec<GroupElement> = Vec::new();
        for &m in members {
            if h.order() == members.len() {
                break;
            }
            let x = &self.elems[m];
            if !h.contains(x) {
                gens.push(x.clone());
                h = closure_enumerate(&gens, members.len())
                    .map_err(|_| Error::Internal("member set is not closed".into()))?;
            }
        }
        if h.order() != members.len() {
            return Err(Error::Internal("member set is not a subgroup".into()));
        }
        Ok(h)
    }

    /// Element orders, indexed like `elements()`.
    pub fn element_orders(&self) -> &[u32] {
        self.orders.get_or_init(|| {
            let mut ord = vec![0u32; self.elems.len()];
            ord[0] = 1;
            for i in 1..self.elems.len() {
                if ord[i] != 0 {
                    continue;
                }
                // walk the cyclic subgroup once and fill in the powers too
                let g = &self.elems[i];
                let mut pw = vec![i];
                let mut x = g.clone();
                while !x.is_identity() {
                    x = x.mul(g);
                    pw.push(self.index[&x] as usize);
                }
                let n = pw.len() as u32;
                for (k, &j) in pw.iter().enumerate() {
                    if ord[j] == 0 {
                        ord[j] = n / util::gcd(n as u64, k as u64 + 1) as u32;
                    }
                }
            }
            ord
        })
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders().iter().fold(1, |e, &o| util::lcm(e, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.elems.len();
            let ginv: Vec<GroupElement> = self.gens.iter().map(|g| g.inv()).collect();
            let mut class_of = vec![u32::MAX; n];
            let mut classes = Vec::new();
            let mut members = Vec::new();
            for i in 0..n {
                if class_of[i] != u32::MAX {
                    continue;
                }
                let c = classes.len() as u32;
                class_of[i] = c;
                let mut orbit = vec![i as u32];
                let mut k = 0;
                while k < orbit.len() {
                    let x = &self.elems[orbit[k] as usize];
                    for (g, gi) in self.gens.iter().zip(&ginv) {
                        let y = self.index[&x.conj_with(g, gi)];
                        if class_of[y as usize] == u32::MAX {
                            class_of[y as usize] = c;
                            orbit.push(y);
                        }
                    }
                    k += 1;
                }
                orbit.sort_unstable();
                classes.push(ConjClass {
                    representative: self.elems[i].clone(),
                    rep_index: i,
                    size: orbit.len(),
                    centralizer_order: n / orbit.len(),
                });
                members.push(orbit);
            }
            ClassData { classes, class_of, members }
        })
    }

    /// Conjugacy classes in order of first appearance.
    pub fn conjugacy_classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    /// Class number of the element with index `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_data().class_of[i] as usize
    }

    /// Sorted element indices of class `c`.
    pub fn class_members(&self, c: usize) -> &[u32] {
        &self.class_data().members[c]
    }

    pub fn centralizer_of(&self, g: &GroupElement) -> Result<FiniteGroup> {
        if !self.contains(g) {
            return Err(Error::ElementNotInGroup);
        }
        let members: Vec<usize> =
            (0..self.order()).filter(|&i| self.elems[i].mul(g) == g.mul(&self.elems[i])).collect();
        self.subgroup_from_members(&members)
    }

    /// Centralizer of a subgroup.
    pub fn centralizer_of_subgroup(&self, p: &FiniteGroup) -> Result<FiniteGroup> {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elems[i];
                p.gens.iter().all(|g| x.mul(g) == g.mul(x))
            })
            .collect();
        self.subgroup_from_members(&members)
    }

    pub fn center(&self) -> Result<FiniteGroup> {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elems[i];
                self.gens.iter().all(|g| x.mul(g) == g.mul(x))
            })
            .collect();
        self.subgroup_from_members(&members)
    }

    /// Whether `g` normalizes `p`.
    pub fn element_normalizes(g: &GroupElement, p: &FiniteGroup) -> bool {
        let gi = g.inv();
        p.gens.iter().all(|x| p.contains(&x.conj_with(g, &gi)))
    }

    pub fn normalizer(&self, p: &FiniteGroup) -> Result<FiniteGroup> {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| Self::element_normalizes(&self.elems[i], p))
            .collect();
        self.subgroup_from_members(&members)
    }

    pub fn is_normal(&self, p: &FiniteGroup) -> bool {
        self.gens.iter().all(|g| Self::element_normalizes(g, p))
    }

    /// Smallest normal subgroup of `self` containing `gens`.
    pub fn normal_closure(&self, gens: &[GroupElement]) -> Result<FiniteGroup> {
        let mut ngens: Vec<GroupElement> = gens.to_vec();
        if ngens.is_empty() {
            return self.trivial_subgroup();
        }
        let mut h = self.subgroup(&ngens)?;
        loop {
            let mut grew = false;
            for i in 0..ngens.len() {
                for g in &self.gens {
                    let y = ngens[i].conj(g);
                    if !h.contains(&y) {
                        ngens.push(y);
                        h = self.subgroup(&ngens)?;
                        grew = true;
                    }
                }
            }
            if !grew {
                return Ok(h);
            }
        }
    }

    pub fn derived_subgroup(&self) -> Result<FiniteGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = GroupElement::commutator(a, b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Orders along `G > G' > G'' > ...` down to the first repeat.
    pub fn derived_series_orders(&self) -> Result<Vec<usize>> {
        let mut out = vec![self.order()];
        let mut cur = self.derived_subgroup()?;
        while cur.order() < *out.last().unwrap() {
            out.push(cur.order());
            cur = cur.derived_subgroup()?;
        }
        Ok(out)
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(*self.derived_series_orders()?.last().unwrap() == 1)
    }

    /// A Sylow `p`-subgroup: grow a `p`-subgroup by the first element (in
    /// enumeration order) that normalizes it, lies outside it and has `p`-th power inside.
    pub fn sylow_subgroup(&self, p: u64) -> Result<FiniteGroup> {
        let target = util::p_part(self.order() as u64, p) as usize;
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut cur = self.trivial_subgroup()?;
        while cur.order() < target {
            let g = self
                .elems
                .iter()
                .find(|g| {
                    !cur.contains(g)
                        && cur.contains(&g.pow(p as i64))
                        && Self::element_normalizes(g, &cur)
                })
                .ok_or_else(|| Error::Internal("no extending element".into()))?;
            gens.push(g.clone());
            cur = self.subgroup(&gens)?;
        }
        Ok(cur)
    }

    /// Largest normal `p`-subgroup: the elements of a Sylow subgroup whose whole class stays inside it.
    pub fn o_p(&self, p: u64) -> Result<FiniteGroup> {
        let s = self.sylow_subgroup(p)?;
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                s.contains(&self.elems[i])
                    && self
                        .class_members(self.class_of(i))
                        .iter()
                        .all(|&j| s.contains(&self.elems[j as usize]))
            })
            .collect();
        self.subgroup_from_members(&members)
    }

    /// Partition into `S`-`S` double cosets; representatives come first in enumeration order.
    pub fn double_coset_partition(&self, s: &FiniteGroup) -> Result<Vec<DoubleCoset>> {
        if !self.contains_group(s) {
            return Err(Error::SubgroupNotContained);
        }
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            let mut members = vec![i as u32];
            let mut k = 0;
            while k < members.len() {
                let x = self.elems[members[k] as usize].clone();
                for g in &s.gens {
                    for y in [g.mul(&x), x.mul(g)] {
                        let j = self.index[&y] as usize;
                        if !seen[j] {
                            seen[j] = true;
                            members.push(j as u32);
                        }
                    }
                }
                k += 1;
            }
            members.sort_unstable();
            out.push(DoubleCoset {
                representative: self.elems[i].clone(),
                rep_index: i,
                size: members.len(),
                members,
            });
        }
        Ok(out)
    }

    /// Multiplication table, `t[i * n + j] = index(e_i e_j)`.
    pub fn cayley_table(&self) -> Vec<u32> {
        let n = self.order();
        let mut t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                t[i * n + j] = self.index[&self.elems[i].mul(&self.elems[j])];
            }
        }
        t
    }

    /// Drops generators that lie in the span of the earlier ones.
    pub fn with_reduced_generators(&self) -> Result<FiniteGroup> {
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut cur = self.trivial_subgroup()?;
        for g in &self.gens {
            if cur.order() == self.order() {
                break;
            }
            if !cur.contains(g) {
                gens.push(g.clone());
                cur = closure_enumerate(&gens, self.order())?;
            }
        }
        if gens.is_empty() {
            gens.push(self.identity().clone());
        }
        let mut out = self.clone();
        out.gens = gens;
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct DoubleCoset {
    pub representative: GroupElement,
    pub rep_index: usize,
    pub size: usize,
    pub members: Vec<u32>,
}

fn coset_key(n: &FiniteGroup, x: &GroupElement) -> GroupElement {
    n.elems.iter().map(|m| m.mul(x)).min().unwrap()
}

/// A quotient `G/N` acting on the right cosets of `N`.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Permutation group on cosets; point 0 is `N` itself.
    pub group: FiniteGroup,
    /// Canonical representative (least element of `N g`) of each coset.
    pub reps: Vec<GroupElement>,
    /// Image of each generator of `G`, in order.
    pub gen_images: Vec<GroupElement>,
    coset_index: FxHashMap<GroupElement, u32>,
    normal: FiniteGroup,
}

impl Quotient {
    pub fn order(&self) -> usize {
        self.reps.len()
    }

    /// Coset number of `x`.
    pub fn coset_of(&self, x: &GroupElement) -> Option<usize> {
        self.coset_index.get(&coset_key(&self.normal, x)).map(|&i| i as usize)
    }

    /// Image of `x` in the quotient.
    pub fn image(&self, x: &GroupElement) -> Result<GroupElement> {
        let mut im = Vec::with_capacity(self.reps.len());
        for r in &self.reps {
            let c = self.coset_of(&r.mul(x)).ok_or(Error::ElementNotInGroup)?;
            im.push(c as u16);
        }
        Ok(GroupElement::Perm(Perm::from_images(im)?))
    }

    /// Canonical representative of the coset a quotient element sends `N` to.
    pub fn representative_of(&self, q: &GroupElement) -> &GroupElement {
        let p = q.as_perm().expect("quotient elements are permutations");
        &self.reps[p.image(0)]
    }
}

/// `<gens> / N` without enumerating `<gens>`; `N` must be normalized by every generator.
pub fn quotient_by_generators(gens: &[GroupElement], n: &FiniteGroup) -> Result<Quotient> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    if !gens.iter().all(|g| FiniteGroup::element_normalizes(g, n)) {
        return Err(Error::NotNormal);
    }
    let cap = util::cap();
    let mut reps = vec![coset_key(n, n.identity())];
    let mut coset_index = FxHashMap::default();
    coset_index.insert(reps[0].clone(), 0u32);
    let mut images: Vec<Vec<u16>> = vec![Vec::new(); gens.len()];
    let mut i = 0;
    while i < reps.len() {
        for (k, g) in gens.iter().enumerate() {
            let key = coset_key(n, &reps[i].mul(g));
            let j = match coset_index.get(&key) {
                Some(&j) => j,
                None => {
                    if reps.len() >= cap || reps.len() >= u16::MAX as usize {
                        return Err(Error::CapExceeded { cap: cap.min(u16::MAX as usize) });
                    }
                    let j = reps.len() as u32;
                    coset_index.insert(key.clone(), j);
                    reps.push(key);
                    j
                }
            };
            images[k].push(j as u16);
        }
        i += 1;
    }
    let gen_images: Vec<GroupElement> = images
        .into_iter()
        .map(|im| Perm::from_images(im).map(GroupElement::Perm))
        .collect::<Result<_>>()?;
    let group = closure_enumerate(&gen_images, cap)?;
    if group.order() != reps.len() {
        return Err(Error::Internal("coset action is not regular".into()));
    }
    Ok(Quotient { group, reps, gen_images, coset_index, normal: n.clone() })
}

/// `G / N` for an enumerated `G`.
pub fn quotient_group(g: &FiniteGroup, n: &FiniteGroup) -> Result<Quotient> {
    if !g.contains_group(n) {
        return Err(Error::SubgroupNotContained);
    }
    let q = quotient_by_generators(&g.gens, n)?;
    debug_assert_eq!(q.order() * n.order(), g.order());
    Ok(q)
}

/// Result of conjugating a subgroup around by a generating set.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupOrbit {
    pub orbit_size: usize,
    pub normalizer_order: Option<u128>,
}

fn slice_hash<K: Hash>(v: &[K]) -> u64 {
    let mut h = FxHasher::default();
    v.hash(&mut h);
    h.finish()
}

fn orbit_generic<K, F>(gens: &[GroupElement], p: &FiniteGroup, key: F) -> Result<usize>
where
    K: Ord + Hash + Clone,
    F: Fn(&GroupElement) -> K,
{
    let cap = util::cap();
    let m = p.order();
    let fingerprint = |c: &GroupElement| -> Vec<K> {
        let ci = c.inv();
        let mut v: Vec<K> = p.elems.iter().map(|x| key(&x.conj_with(c, &ci))).collect();
        v.sort_unstable();
        v
    };
    let mut arena: Vec<K> = fingerprint(p.identity());
    let mut buckets: FxHashMap<u64, Vec<u32>> = FxHashMap::default();
    buckets.entry(slice_hash(&arena)).or_default().push(0);
    let mut conjugators = vec![p.identity().clone()];
    let mut i = 0;
    while i < conjugators.len() {
        for g in gens {
            let c = conjugators[i].mul(g);
            let fp = fingerprint(&c);
            let h = slice_hash(&fp);
            let bucket = buckets.entry(h).or_default();
            if bucket.iter().any(|&j| arena[j as usize * m..(j as usize + 1) * m] == fp[..]) {
                continue;
            }
            if conjugators.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            bucket.push(conjugators.len() as u32);
            arena.extend(fp);
            conjugators.push(c);
        }
        i += 1;
    }
    Ok(conjugators.len())
}

/// Orbit of `p` under conjugation by `<gens>`; conjugates are compared by their sorted element codes.
pub fn subgroup_conjugation_orbit(
    gens: &[GroupElement],
    p: &FiniteGroup,
    group_order: Option<u128>,
) -> Result<SubgroupOrbit> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    let exact = p.elems.iter().all(|x| x.exact_key().is_some())
        && gens.iter().all(|g| g.exact_key().is_some());
    let orbit_size = if exact {
        orbit_generic(gens, p, |x| x.exact_key().unwrap())?
    } else {
        orbit_generic(gens, p, |x| x.clone())?
    };
    let normalizer_order = group_order.map(|n| n / orbit_size as u128);
    Ok(SubgroupOrbit { orbit_size, normalizer_order })
}

/// Permutation of the elements of `p` induced by conjugation with `g`.
pub fn conjugation_action(p: &FiniteGroup, g: &GroupElement) -> Result<Perm> {
    if p.order() > u16::MAX as usize {
        return Err(Error::Precondition("subgroup too large for a permutation action".into()));
    }
    let gi = g.inv();
    let im = p
        .elems
        .iter()
        .map(|x| p.index_of(&x.conj_with(g, &gi)).map(|j| j as u16))
        .collect::<Option<Vec<u16>>>()
        .ok_or(Error::DoesNotNormalize)?;
    Perm::from_images(im)
}

/// `Aut_N(P)`, `Inn(P)` as permutation groups on `P`, and `Out_N(P)` as their quotient.
#[derive(Clone, Debug)]
pub struct OuterAction {
    pub aut: FiniteGroup,
    pub inn: FiniteGroup,
    pub out: Quotient,
}

/// The automorphisms of `p` induced by `n`, modulo the inner ones.
pub fn induced_outer_automorphisms(n: &FiniteGroup, p: &FiniteGroup) -> Result<OuterAction> {
    induced_outer_automorphisms_by(n.generators(), p)
}

/// As [`induced_outer_automorphisms`], from generators of the normalizing group.
pub fn induced_outer_automorphisms_by(gens: &[GroupElement], p: &FiniteGroup) -> Result<OuterAction> {
    let to_perms = |gs: &[GroupElement]| -> Result<Vec<GroupElement>> {
        let mut v: Vec<GroupElement> = Vec::new();
        for g in gs {
            let a = conjugation_action(p, g)?;
            if !a.is_identity() && !v.iter().any(|x| x.as_perm() == Some(&a)) {
                v.push(a.into());
            }
        }
        if v.is_empty() {
            v.push(Perm::identity(p.order()).into());
        }
        Ok(v)
    };
    let inn_gens = to_perms(p.generators())?;
    let mut aut_gens = inn_gens.clone();
    aut_gens.extend(to_perms(gens)?);
    let aut = FiniteGroup::generate(&aut_gens)?;
    let inn = FiniteGroup::generate(&inn_gens)?;
    let out = quotient_group(&aut, &inn)?;
    Ok(OuterAction { aut, inn, out })
}

/// `N / (P C_N(P))`, the same outer group computed inside `N`.
pub fn outer_via_centralizer(n: &FiniteGroup, p: &FiniteGroup) -> Result<Quotient> {
    if !n.generators().iter().all(|g| FiniteGroup::element_normalizes(g, p)) {
        return Err(Error::DoesNotNormalize);
    }
    let c = n.centralizer_of_subgroup(p)?;
    let mut gens = p.generators().to_vec();
    gens.extend(c.with_reduced_generators()?.generators().iter().cloned());
    let pc = n.subgroup(&gens)?;
    quotient_group(n, &pc)
}

/// Isomorphism-invariant summary of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub derived_series: Vec<usize>,
    pub abelian_invariants: Vec<u64>,
    pub exponent: u64,
    /// `(p, |P|)` for each prime divisor.
    pub sylow_orders: Vec<(u64, u64)>,
    /// `(k, #elements of order k)`.
    pub order_counts: Vec<(u64, usize)>,
}

/// Invariant factors `d_1 | d_2 | ...` (all > 1) of an enumerated abelian group.
pub fn abelian_invariants(a: &FiniteGroup) -> Vec<u64> {
    let orders = a.element_orders();
    let n = a.order() as u64;
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for p in util::prime_factors(n) {
        // e_k = log_p #{x : x^(p^k) = 1}; cyclic factors of order >= p^k number e_k - e_{k-1}
        let mut prev = 0u32;
        let mut k = 1u32;
        let mut ge: Vec<u32> = Vec::new();
        loop {
            let pk = p.pow(k);
            let c = orders.iter().filter(|&&o| pk % o as u64 == 0).count() as u64;
            let e = util::log_exact(c, p).expect("p-torsion has prime power order");
            ge.push(e - prev);
            prev = e;
            if c == util::p_part(n, p) {
                break;
            }
            k += 1;
        }
        // ge[k-1] = number of factors of order >= p^k
        let mut divs = Vec::new();
        for k in 1..=ge.len() {
            let here = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
            for _ in 0..here {
                divs.push(p.pow(k as u32));
            }
        }
        divs.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(divs);
    }
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut inv: Vec<u64> = (0..len)
        .map(|i| per_prime.iter().map(|v| v.get(i).copied().unwrap_or(1)).product())
        .collect();
    inv.reverse();
    inv
}

pub fn structure_fingerprint(g: &FiniteGroup) -> Result<Fingerprint> {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
    class_sizes.sort_unstable();
    let derived = g.derived_subgroup()?;
    let ab = quotient_group(g, &derived)?;
    let mut counts: FxHashMap<u64, usize> = FxHashMap::default();
    for &o in g.element_orders() {
        *counts.entry(o as u64).or_default() += 1;
    }
    let mut order_counts: Vec<(u64, usize)> = counts.into_iter().collect();
    order_counts.sort_unstable();
    Ok(Fingerprint {
        order: g.order(),
        class_sizes,
        center_order: g.center()?.order(),
        derived_series: g.derived_series_orders()?,
        abelian_invariants: abelian_invariants(&ab.group),
        exponent: g.exponent(),
        sylow_orders: util::prime_factors(g.order() as u64)
            .into_iter()
            .map(|p| (p, util::p_part(g.order() as u64, p)))
            .collect(),
        order_counts,
    })
}

/// Greedy generating set: repeatedly add the element giving the largest subgroup.
fn small_generating_set(n: usize, table: &[u32]) -> Vec<usize> {
    let close = |gens: &[usize]| -> Vec<bool> {
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            for &g in gens {
                let y = table[x * n + g] as usize;
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        inside
    };
    let mut gens = Vec::new();
    let mut inside = close(&gens);
    while inside.iter().filter(|&&b| b).count() < n {
        let mut best = (0usize, 0usize);
        for x in 0..n {
            if inside[x] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let size = close(&trial).iter().filter(|&&b| b).count();
            if size > best.0 {
                best = (size, x);
            }
        }
        gens.push(best.1);
        inside = close(&gens);
    }
    gens
}

/// Largest order for which [`find_isomorphism`] runs.
pub const ISO_SEARCH_LIMIT: usize = 400;

/// Exhaustive search for an isomorphism `g -> h`. Returns generator images on success.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<(GroupElement, GroupElement)>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let n = g.order();
    if n > ISO_SEARCH_LIMIT {
        return Err(Error::Precondition(format!("isomorphism search limited to order {ISO_SEARCH_LIMIT}")));
    }
    let tg = g.cayley_table();
    let th = h.cayley_table();
    let gens = small_generating_set(n, &tg);
    let og = g.element_orders();
    let oh = h.element_orders();
    let csize_g = |i: usize| g.conjugacy_classes()[g.class_of(i)].size;
    let csize_h = |i: usize| h.conjugacy_classes()[h.class_of(i)].size;
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(k, &x)| {
            (0..n)
                .filter(|&y| og[x] == oh[y] && csize_g(x) == csize_h(y))
                // an inner automorphism of h lets the first image be a class representative
                .filter(|&y| k > 0 || h.conjugacy_classes()[h.class_of(y)].rep_index == y)
                .collect()
        })
        .collect();

    // extend the map over <gens[..=level]>; None on inconsistency
    let consistent = |imgs: &[usize]| -> Option<usize> {
        let mut phi = vec![u32::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for (j, &gj) in gens[..imgs.len()].iter().enumerate() {
                let y = tg[x * n + gj] as usize;
                let im = th[phi[x] as usize * n + imgs[j]];
                if phi[y] == u32::MAX {
                    if used[im as usize] {
                        return None;
                    }
                    phi[y] = im;
                    used[im as usize] = true;
                    count += 1;
                    queue.push_back(y);
                } else if phi[y] != im {
                    return None;
                }
            }
        }
        Some(count)
    };

    fn search(
        level: usize,
        imgs: &mut Vec<usize>,
        candidates: &[Vec<usize>],
        n: usize,
        consistent: &dyn Fn(&[usize]) -> Option<usize>,
    ) -> bool {
        if level == candidates.len() {
            return consistent(imgs) == Some(n);
        }
        for &c in &candidates[level] {
            imgs.push(c);
            if consistent(imgs).is_some() && search(level + 1, imgs, candidates, n, consistent) {
                return true;
            }
            imgs.pop();
        }
        false
    }

    let mut imgs = Vec::new();
    if search(0, &mut imgs, &candidates, n, &consistent) {
        Ok(Some(
            gens.iter()
                .zip(&imgs)
                .map(|(&a, &b)| (g.element(a).clone(), h.element(b).clone()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> GroupElement {
        Perm::from_cycles(n, cycles).into()
    }

    fn sym(n: usize) -> FiniteGroup {
        let c: Vec<usize> = (0..n).collect();
        FiniteGroup::generate(&[perm(n, &[&[0, 1]]), perm(n, &[&c])]).unwrap()
    }

    #[test]
    fn s3_basics() {
        let g = sym(3);
        assert_eq!(g.order(), 6);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert_eq!(g.center().unwrap().order(), 1);
        assert_eq!(g.derived_subgroup().unwrap().order(), 3);
        assert_eq!(g.sylow_subgroup(3).unwrap().order(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let c: Vec<usize> = (0..6).collect();
        let r = closure_enumerate(&[perm(6, &[&[0, 1]]), perm(6, &[&c])], 100);
        assert_eq!(r.unwrap_err(), Error::CapExceeded { cap: 100 });
    }

    #[test]
    fn quotient_of_s4_by_v4() {
        let g = sym(4);
        let v = g.subgroup(&[perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]).unwrap();
        let q = quotient_group(&g, &v).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.group.is_abelian());
        let a3 = g.subgroup(&[perm(4, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(quotient_group(&g, &a3).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn abelian_invariants_small() {
        let c = |n: usize, k: usize| -> GroupElement {
            let cyc: Vec<usize> = (k..k + n).collect();
            perm(12, &[&cyc])
        };
        // C2 x C4 x C3
        let a = FiniteGroup::generate(&[c(2, 0), c(4, 2), c(3, 6)]).unwrap();
        assert_eq!(abelian_invariants(&a), vec![2, 12]);
        let b = FiniteGroup::generate(&[c(2, 0), c(2, 2), c(2, 4)]).unwrap();
        assert_eq!(abelian_invariants(&b), vec![2, 2, 2]);
    }

    #[test]
    fn double_cosets_partition() {
        let g = sym(4);
        let s = g.sylow_subgroup(2).unwrap();
        let dc = g.double_coset_partition(&s).unwrap();
        assert_eq!(dc.iter().map(|d| d.size).sum::<usize>(), 24);
        assert_eq!(dc[0].rep_index, 0);
    }

    #[test]
    fn iso_search() {
        let s3 = sym(3);
        let other = FiniteGroup::generate(&[perm(5, &[&[3, 4]]), perm(5, &[&[0, 1, 2]])]).unwrap();
        let c6 = FiniteGroup::generate(&[perm(5, &[&[0, 1], &[2, 3, 4]])]).unwrap();
        assert!(find_isomorphism(&s3, &other).unwrap().is_none());
        let d6 = FiniteGroup::generate(&[perm(3, &[&[1, 2]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        assert!(find_isomorphism(&s3, &d6).unwrap().is_some());
        assert!(find_isomorphism(&c6, &other).unwrap().is_some());
        assert_ne!(structure_fingerprint(&s3).unwrap(), structure_fingerprint(&c6).unwrap());
    }

    #[test]
    fn outer_of_abelian_self_is_trivial() {
        let v = FiniteGroup::generate(&[perm(4, &[&[0, 1]]), perm(4, &[&[2, 3]])]).unwrap();
        let o = induced_outer_automorphisms(&v, &v).unwrap();
        assert_eq!(o.out.order(), 1);
    }
}
