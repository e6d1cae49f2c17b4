//! Functors on chain posets, their cochain complexes, and the vanishing of the
//! limit of the degree-2 cohomology functor on centric radical chains.
//!
//! A chain class is identified with its sequence of subgroup classes. The
//! length of a chain is one less than its number of members, so `C^0` is
//! indexed by the classes themselves.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::cohomology::{h2_with_spec, odd_h2_kx};
use crate::element::{GroupElement, Perm};
use crate::error::{Error, Result};
use crate::fusion_data::{descriptor_spec, hasse, resolve_out_descriptor, table, table_for, HasseDiagram, System};
use crate::linalg::FpMatrix;
use crate::solmodel::Check;
use crate::zoo::{named_group, GroupSpec};

#[derive(Clone, Debug, Serialize)]
pub struct ChainPoset {
    pub labels: Vec<String>,
    /// Strictly increasing class sequences, sorted by length then lexicographically.
    pub chains: Vec<Vec<usize>>,
    #[serde(skip)]
    index: HashMap<Vec<usize>, usize>,
}

impl ChainPoset {
    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn length(&self, c: usize) -> usize {
        self.chains[c].len() - 1
    }

    pub fn id(&self, seq: &[usize]) -> Option<usize> {
        self.index.get(seq).copied()
    }

    /// Chain id from member labels, smallest first.
    pub fn id_of(&self, labels: &[&str]) -> Option<usize> {
        let seq: Option<Vec<usize>> =
            labels.iter().map(|s| self.labels.iter().position(|l| l == s)).collect();
        self.id(&seq?)
    }

    pub fn of_length(&self, n: usize) -> Vec<usize> {
        (0..self.chains.len()).filter(|&c| self.length(c) == n).collect()
    }

    pub fn name(&self, c: usize) -> String {
        let parts: Vec<&str> = self.chains[c].iter().map(|&i| self.labels[i].as_str()).collect();
        format!("[{}]", parts.join(" < "))
    }

    /// The chain with its `i`th member removed.
    pub fn face(&self, c: usize, i: usize) -> usize {
        let mut s = self.chains[c].clone();
        s.remove(i);
        self.index[&s]
    }
}

/// All chains of the order generated by `covers`, given as `(smaller, larger)`.
pub fn build_chain_poset(labels: &[String], covers: &[(usize, usize)]) -> Result<ChainPoset> {
    let n = labels.len();
    let mut up = vec![Vec::new(); n];
    for &(a, b) in covers {
        if a >= n || b >= n {
            return Err(Error::Precondition(format!("cover ({a}, {b}) out of range")));
        }
        up[a].push(b);
    }
    // transitive closure by DFS from each vertex
    let mut above = vec![vec![false; n]; n];
    for s in 0..n {
        let mut stack = up[s].clone();
        while let Some(v) = stack.pop() {
            if !above[s][v] {
                above[s][v] = true;
                stack.extend(&up[v]);
            }
        }
        if above[s][s] {
            return Err(Error::CyclicInput);
        }
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|i| vec![i]).collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().unwrap();
        for v in (0..n).rev().filter(|&v| above[last][v]) {
            let mut d = c.clone();
            d.push(v);
            stack.push(d);
        }
        chains.push(c);
    }
    chains.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index = chains.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    Ok(ChainPoset { labels: labels.to_vec(), chains, index })
}

pub fn chain_poset_of(d: &HasseDiagram) -> Result<ChainPoset> {
    let labels: Vec<String> = d.nodes.iter().map(|n| n.row.clone()).collect();
    build_chain_poset(&labels, &d.edges)
}

/// A covariant functor into `F_p`-vector spaces, given on face inclusions.
#[derive(Clone, Debug)]
pub struct ChainPosetFunctor {
    pub p: u32,
    pub poset: ChainPoset,
    pub dims: Vec<usize>,
    /// `(face, chain) -> matrix` of shape `dims[chain] x dims[face]`.
    maps: HashMap<(usize, usize), FpMatrix>,
}

impl ChainPosetFunctor {
    pub fn zero(poset: ChainPoset, p: u32) -> Self {
        let dims = vec![0; poset.len()];
        ChainPosetFunctor { p, poset, dims, maps: HashMap::new() }
    }

    /// `F_p` everywhere with identity maps.
    pub fn constant(poset: ChainPoset, p: u32) -> Self {
        let mut f = Self::zero(poset, p);
        f.dims.iter_mut().for_each(|d| *d = 1);
        for c in 0..f.poset.len() {
            for i in 0..f.poset.chains[c].len() {
                if f.poset.length(c) > 0 {
                    let face = f.poset.face(c, i);
                    f.maps.insert((face, c), FpMatrix::identity(p, 1));
                }
            }
        }
        f
    }

    pub fn set_dim(&mut self, c: usize, d: usize) {
        self.dims[c] = d;
    }

    pub fn set_map(&mut self, face: usize, c: usize, m: FpMatrix) -> Result<()> {
        let (a, b) = (&self.poset.chains[face], &self.poset.chains[c]);
        let is_face = b.len() == a.len() + 1 && (0..b.len()).any(|i| self.poset.face(c, i) == face);
        if !is_face {
            return Err(Error::NotAFunctor(format!(
                "{} is not a face of {}",
                self.poset.name(face),
                self.poset.name(c)
            )));
        }
        if m.rows != self.dims[c] || m.cols != self.dims[face] {
            return Err(Error::NotAFunctor(format!("map {} -> {} has the wrong shape", self.poset.name(face), self.poset.name(c))));
        }
        self.maps.insert((face, c), m);
        Ok(())
    }

    /// The map on a face inclusion; zero when either end is zero.
    pub fn face_map(&self, face: usize, c: usize) -> Result<FpMatrix> {
        if let Some(m) = self.maps.get(&(face, c)) {
            return Ok(m.clone());
        }
        if self.dims[face] == 0 || self.dims[c] == 0 {
            return Ok(FpMatrix::zeros(self.p, self.dims[c], self.dims[face]));
        }
        Err(Error::NotAFunctor(format!("no map {} -> {}", self.poset.name(face), self.poset.name(c))))
    }

    /// Every face map is present and each square of face inclusions commutes.
    pub fn check_functoriality(&self) -> Result<()> {
        for c in 0..self.poset.len() {
            let k = self.poset.chains[c].len();
            for i in 0..k {
                if k > 1 {
                    self.face_map(self.poset.face(c, i), c)?;
                }
            }
            if k < 3 {
                continue;
            }
            for j in 1..k {
                for i in 0..j {
                    let (ci, cj) = (self.poset.face(c, i), self.poset.face(c, j));
                    // removing i then j-1 from c_i, or j then i from c_j, leaves the same chain
                    let t = self.poset.face(ci, j - 1);
                    let via_i = self.face_map(ci, c)?.mul(&self.face_map(t, ci)?);
                    let via_j = self.face_map(cj, c)?.mul(&self.face_map(t, cj)?);
                    if via_i != via_j {
                        return Err(Error::NotAFunctor(format!(
                            "square from {} to {} does not commute",
                            self.poset.name(t),
                            self.poset.name(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn offsets(&self, n: usize) -> (Vec<usize>, BTreeMap<usize, usize>, usize) {
        let ids = self.poset.of_length(n);
        let mut off = BTreeMap::new();
        let mut total = 0;
        for &c in &ids {
            off.insert(c, total);
            total += self.dims[c];
        }
        (ids, off, total)
    }

    /// `δ^n : C^n -> C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> Result<FpMatrix> {
        let (_, src, cols) = self.offsets(n);
        let (tgt_ids, tgt, rows) = self.offsets(n + 1);
        let p = self.p;
        let mut d = FpMatrix::zeros(p, rows, cols);
        for &c in &tgt_ids {
            for i in 0..=n + 1 {
                let face = self.poset.face(c, i);
                let m = self.face_map(face, c)?;
                for r in 0..m.rows {
                    for s in 0..m.cols {
                        let v = m.get(r, s);
                        let v = if i % 2 == 1 { (p - v) % p } else { v };
                        let (rr, cc) = (tgt[&c] + r, src[&face] + s);
                        d.set(rr, cc, (d.get(rr, cc) + v) % p);
                    }
                }
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CochainCohomology {
    pub p: u32,
    pub cochain_dims: Vec<usize>,
    pub coboundary_ranks: Vec<usize>,
    /// `dim H^0 .. dim H^max`.
    pub dims: Vec<usize>,
    pub dd_zero: bool,
}

/// `dim H^n` for `n <= max` from the alternating-sum complex, with `δδ = 0` checked.
pub fn cochain_cohomology(f: &ChainPosetFunctor, max: usize) -> Result<CochainCohomology> {
    f.check_functoriality()?;
    let deltas: Vec<FpMatrix> = (0..=max + 1).map(|n| f.coboundary(n)).collect::<Result<_>>()?;
    let dd_zero = deltas.windows(2).all(|w| w[1].mul(&w[0]).is_zero());
    if !dd_zero {
        return Err(Error::NotAFunctor("coboundary does not square to zero".into()));
    }
    let cochain_dims: Vec<usize> = (0..=max + 1).map(|n| f.offsets(n).2).collect();
    let ranks: Vec<usize> = deltas.iter().map(FpMatrix::rank).collect();
    let dims = (0..=max)
        .map(|n| cochain_dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
        .collect();
    Ok(CochainCohomology { p: f.p, cochain_dims, coboundary_ranks: ranks, dims, dd_zero })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "criterion")]
pub enum Criterion {
    /// Zero on every class.
    A,
    /// Nonzero on exactly `x1 < x2`, pinned down through `[x1 < x2]` and `[y < x2]`.
    B { x1: String, x2: String, y: String },
}

fn injective(m: &FpMatrix) -> bool {
    m.rank() == m.cols
}

fn same_image(a: &FpMatrix, b: &FpMatrix) -> bool {
    let ra = a.rank();
    ra == b.rank() && a.transpose().vstack(&b.transpose()).rank() == ra
}

/// The two shortcuts for `lim F = 0`, or `None` when neither applies.
pub fn vanishing_criteria(f: &ChainPosetFunctor) -> Option<Criterion> {
    let singles = f.poset.of_length(0);
    let nonzero: Vec<usize> = singles.iter().copied().filter(|&c| f.dims[c] > 0).collect();
    match nonzero.as_slice() {
        [] => Some(Criterion::A),
        &[a, b] => {
            for (x1, x2) in [(a, b), (b, a)] {
                let (c1, c2) = (f.poset.chains[x1][0], f.poset.chains[x2][0]);
                let Some(pair) = f.poset.id(&[c1, c2]) else { continue };
                let (Ok(m1), Ok(m2)) = (f.face_map(x1, pair), f.face_map(x2, pair)) else { continue };
                if !(injective(&m1) && injective(&m2) && same_image(&m1, &m2)) {
                    continue;
                }
                for &y in &singles {
                    let cy = f.poset.chains[y][0];
                    if y == x1 || y == x2 {
                        continue;
                    }
                    let Some(yc) = f.poset.id(&[cy, c2]) else { continue };
                    if f.face_map(x2, yc).is_ok_and(|m| injective(&m)) {
                        let l = &f.poset.labels;
                        return Some(Criterion::B { x1: l[c1].clone(), x2: l[c2].clone(), y: l[cy].clone() });
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// The normalizer of a four-group moving four points in `A7`.
#[derive(Clone, Debug, Serialize)]
pub struct A7FourGroup {
    pub normalizer_order: usize,
    pub index: usize,
    pub index_prime_to_3: bool,
    pub contains_sylow_3: bool,
    pub h2_a7: usize,
    pub h2_normalizer: usize,
    pub normalizer_path: String,
}

pub fn a7_four_group_check() -> Result<A7FourGroup> {
    let a7 = named_group(&GroupSpec::Alt(7))?;
    let v = a7.subgroup(&[
        GroupElement::Perm(Perm::from_cycles(7, &[&[0, 1], &[2, 3]])),
        GroupElement::Perm(Perm::from_cycles(7, &[&[0, 2], &[1, 3]])),
    ])?;
    let n = a7.normalizer(&v)?;
    let index = a7.order() / n.order();
    let sylow_3 = crate::util::p_part(a7.order() as u64, 3) as usize;
    let ha = h2_with_spec(&a7, Some(&GroupSpec::Alt(7)), 3, "A7")?;
    let hn = h2_with_spec(&n, None, 3, "N_A7(V4)")?;
    Ok(A7FourGroup {
        normalizer_order: n.order(),
        index,
        index_prime_to_3: index % 3 != 0,
        contains_sylow_3: n.order() % sylow_3 == 0,
        h2_a7: ha.dim,
        h2_normalizer: hn.dim,
        normalizer_path: hn.path.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SingletonValue {
    pub label: String,
    pub out: String,
    /// Odd part of `H^2(Out_F(P), k^x)`.
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapDatum {
    pub from: String,
    pub to: String,
    pub kind: String,
    pub justification: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimReport {
    pub l: u32,
    pub criterion: Option<Criterion>,
    pub singleton_values: Vec<SingletonValue>,
    pub maps: Vec<MapDatum>,
    pub lim_dim: usize,
    pub caveats: Vec<String>,
    pub a7: Option<A7FourGroup>,
    pub cochain: Option<CochainCohomology>,
    pub checks: Vec<Check>,
}

impl LimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn singleton_values(l: u32) -> Result<Vec<SingletonValue>> {
    let mut out = Vec::new();
    for row in table(table_for(System::F, l))? {
        let Some(d) = row.out_f.clone() else { continue };
        let spec = descriptor_spec(&d)?;
        let g = resolve_out_descriptor(&d)?;
        let cert = odd_h2_kx(&g, Some(&spec), &d).map_err(|e| {
            Error::MissingCertificate(format!("{}: {d}: {e}", row.label))
        })?;
        if cert.parts.iter().any(|p| p.conclusion == "undetermined") {
            return Err(Error::MissingCertificate(format!("{}: {d}: undetermined", row.label)));
        }
        out.push(SingletonValue { label: row.label, out: d, value: cert.conclusion });
    }
    Ok(out)
}

/// `lim` over the centric radical chains of `H^2(Aut_F(-), k^x)`.
pub fn verify_lim_a2(l: u32) -> Result<LimReport> {
    let values = singleton_values(l)?;
    let poset = chain_poset_of(&hasse(l)?)?;
    let mut caveats = vec![
        "chain classes are identified with class sequences".to_string(),
        "the reduction from centric to centric radical chains is assumed".to_string(),
    ];
    let mut checks = Vec::new();
    let mut f = ChainPosetFunctor::zero(poset, 3);
    let mut maps = Vec::new();
    let mut a7 = None;

    let nonzero: Vec<&SingletonValue> = values.iter().filter(|v| v.value != "0").collect();
    if l == 0 {
        let ok = |s: &SingletonValue| s.value == "C3";
        checks.push(Check::eq(
            "nonzero values",
            l,
            "QR: C3, R: C3",
            {
                let mut v: Vec<String> = nonzero.iter().map(|s| format!("{}: {}", s.label, s.value)).collect();
                v.sort();
                v.join(", ")
            },
        ));
        let check_out = |label: &str, want: &str| {
            values.iter().any(|v| v.label == label && descriptor_spec(&v.out).ok() == want.parse().ok())
        };
        checks.push(Check::holds("Out_F(R) = A7", l, check_out("R", "A7")));
        checks.push(Check::holds("Out_F(QR) = Dih(C3xC3)", l, check_out("QR", "dih(C3xC3)")));
        let four = a7_four_group_check()?;
        checks.push(Check::eq("|N_A7(V4)|", l, 72, four.normalizer_order));
        checks.push(Check::eq("index of N_A7(V4)", l, 35, four.index));
        checks.push(Check::holds("index prime to 3", l, four.index_prime_to_3));
        checks.push(Check::holds("N_A7(V4) contains a Sylow 3-subgroup", l, four.contains_sylow_3));
        checks.push(Check::eq("dim H^2(A7, F3)", l, 1, four.h2_a7));
        checks.push(Check::eq("dim H^2(N_A7(V4), F3)", l, 1, four.h2_normalizer));
        let iso = four.index_prime_to_3 && four.h2_a7 == 1 && four.h2_normalizer == 1;

        let p = &f.poset;
        let ids = (p.id_of(&["R"]), p.id_of(&["QR"]), p.id_of(&["R", "QR"]), p.id_of(&["Q", "QR"]));
        let (Some(r), Some(qr), Some(r_qr), Some(q_qr)) = ids else {
            return Err(Error::Internal("R, QR, Q not in the expected order".into()));
        };
        for v in &nonzero {
            if !ok(v) {
                return Err(Error::Precondition(format!("{} has value {}", v.label, v.value)));
            }
            let c = f.poset.id_of(&[v.label.as_str()]).ok_or_else(|| Error::Internal(v.label.clone()))?;
            f.set_dim(c, 1);
        }
        f.set_dim(r_qr, 1);
        f.set_dim(q_qr, 1);
        let one = FpMatrix::identity(3, 1);
        let zero = FpMatrix::zeros(3, 1, 1);
        f.set_map(qr, r_qr, one.clone())?;
        f.set_map(qr, q_qr, one.clone())?;
        f.set_map(r, r_qr, if iso { one.clone() } else { zero })?;
        maps.push(MapDatum {
            from: "[QR]".into(),
            to: "[R < QR]".into(),
            kind: "identity".into(),
            justification: "R and QR are weakly closed, so Aut_F(R < QR) = Aut_F(QR)".into(),
        });
        maps.push(MapDatum {
            from: "[QR]".into(),
            to: "[Q < QR]".into(),
            kind: "identity".into(),
            justification: "Q and QR are weakly closed, so Aut_F(Q < QR) = Aut_F(QR)".into(),
        });
        maps.push(MapDatum {
            from: "[R]".into(),
            to: "[R < QR]".into(),
            kind: if iso { "isomorphism" } else { "not shown injective" }.into(),
            justification: format!(
                "restriction from A7 to N_A7(V4) of order {} and index {}; H^2 dimensions {} and {}",
                four.normalizer_order, four.index, four.h2_a7, four.h2_normalizer
            ),
        });
        caveats.push("values on chains other than the five around R, Q and QR are set to 0; this can only enlarge the kernel of the first coboundary".into());
        caveats.push("the nonzero maps are fixed up to a scalar, which does not affect the kernel".into());
        a7 = Some(four);
    } else {
        checks.push(Check::eq("nonzero singleton values", l, 0, nonzero.len()));
    }

    let criterion = vanishing_criteria(&f);
    let cochain = cochain_cohomology(&f, 1)?;
    let lim_dim = cochain.dims[0];
    let expected = if l == 0 {
        Criterion::B { x1: "R".into(), x2: "QR".into(), y: "Q".into() }
    } else {
        Criterion::A
    };
    checks.push(Check::eq("criterion", l, format!("{:?}", Some(expected)), format!("{criterion:?}")));
    checks.push(Check::eq("lim by the full complex", l, 0, lim_dim));
    checks.push(Check::holds("delta delta = 0", l, cochain.dd_zero));

    Ok(LimReport {
        l,
        criterion,
        singleton_values: values,
        maps,
        lim_dim,
        caveats,
        a7,
        cochain: Some(cochain),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &[&str]) -> Vec<String> {
        s.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn two_element_poset() {
        let p = build_chain_poset(&labels(&["a", "b"]), &[(0, 1)]).unwrap();
        assert_eq!(p.chains, vec![vec![0], vec![1], vec![0, 1]]);
        assert!(matches!(build_chain_poset(&labels(&["a", "b"]), &[(0, 1), (1, 0)]), Err(Error::CyclicInput)));
    }

    #[test]
    fn restricted_l0_figure() {
        let d = hasse(0).unwrap();
        let keep = ["Q", "R", "QR"];
        let idx: Vec<usize> = keep.iter().map(|k| d.nodes.iter().position(|n| n.row == *k).unwrap()).collect();
        let edges: Vec<(usize, usize)> = d
            .edges
            .iter()
            .filter_map(|&(a, b)| Some((idx.iter().position(|&i| i == a)?, idx.iter().position(|&i| i == b)?)))
            .collect();
        let p = build_chain_poset(&labels(&keep), &edges).unwrap();
        let names: Vec<String> = (0..p.len()).map(|c| p.name(c)).collect();
        assert_eq!(names, vec!["[Q]", "[R]", "[QR]", "[Q < QR]", "[R < QR]"]);
    }

    #[test]
    fn constant_functor_has_one_dimensional_limit() {
        for l in [0, 1] {
            let f = ChainPosetFunctor::constant(chain_poset_of(&hasse(l).unwrap()).unwrap(), 3);
            let h = cochain_cohomology(&f, 2).unwrap();
            assert_eq!(h.dims[0], 1);
            assert!(h.dd_zero);
        }
    }

    #[test]
    fn criterion_absent_for_one_unconstrained_value() {
        let p = build_chain_poset(&labels(&["a", "b"]), &[(0, 1)]).unwrap();
        let mut f = ChainPosetFunctor::zero(p, 3);
        f.set_dim(0, 1);
        assert_eq!(vanishing_criteria(&f), None);
        assert_eq!(cochain_cohomology(&f, 1).unwrap().dims[0], 1);
    }

    #[test]
    fn missing_map_is_reported() {
        let p = build_chain_poset(&labels(&["a", "b"]), &[(0, 1)]).unwrap();
        let mut f = ChainPosetFunctor::zero(p, 2);
        f.set_dim(0, 1);
        f.set_dim(2, 1);
        assert!(matches!(cochain_cohomology(&f, 0), Err(Error::NotAFunctor(_))));
    }

    #[test]
    fn four_group_in_a7() {
        let c = a7_four_group_check().unwrap();
        assert_eq!((c.normalizer_order, c.index, c.h2_a7, c.h2_normalizer), (72, 35, 1, 1));
        assert!(c.contains_sylow_3);
    }

    #[test]
    fn limits_vanish() {
        for l in [0, 1] {
            let r = verify_lim_a2(l).unwrap();
            assert!(r.passed(), "{:#?}", r.checks);
        }
    }
}
