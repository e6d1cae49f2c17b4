//! The group `K = K^/Z(K^)` for `q = 5^(2^l)`, `l` in {0, 1}: three copies of
//! `SL_2(q)` on the diagonal blocks of a 6x6 matrix, the diagonal element
//! `[c,c,c]` with `c` over `F_{q^2}`, and the block permutations `X = S_3`.
//!
//! `K` is never enumerated. Its Sylow 2-subgroup `S = R_0<d, tau>` is, and the
//! normalizers that matter are built from explicit generators and certified
//! by orbit counting against `|K|`.

use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::element::{GroupElement, KElem, Matrix};
use crate::error::{Error, Result};
use crate::group::{
    find_isomorphism, induced_outer_automorphisms_by, outer_via_centralizer, quotient_group,
    structure_fingerprint, subgroup_conjugation_orbit, FiniteGroup, ISO_SEARCH_LIMIT,
};
use crate::zoo::{named_group_str, sl2_with_quaternion_frame, Sl2Frame};

/// One verified statement.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub check: String,
    pub l: u32,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Check {
    /// Passes when the two renderings agree.
    pub fn eq(check: &str, l: u32, expected: impl ToString, computed: impl ToString) -> Check {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Check { check: check.into(), l, pass: expected == computed, expected, computed }
    }

    pub fn holds(check: &str, l: u32, ok: bool) -> Check {
        Check::eq(check, l, true, ok)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub name: String,
    pub l: u32,
    pub checks: Vec<Check>,
    /// Things deliberately not done, e.g. skipped searches.
    pub flags: Vec<String>,
}

impl Report {
    pub fn new(name: &str, l: u32) -> Report {
        Report { name: name.into(), l, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn eq(&mut self, check: &str, expected: impl ToString, computed: impl ToString) {
        self.checks.push(Check::eq(check, self.l, expected, computed));
    }

    fn holds(&mut self, check: &str, ok: bool) {
        self.checks.push(Check::holds(check, self.l, ok));
    }

    pub fn absorb(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.flags.extend(other.flags);
    }
}

/// Multiplication table of an enumerated group, for fast subgroup scans.
pub(crate) struct Table {
    n: usize,
    t: Vec<u32>,
    inv: Vec<u32>,
}

impl Table {
    pub(crate) fn of(g: &FiniteGroup) -> Table {
        let n = g.order();
        let t = g.cayley_table();
        let mut inv = vec![0u32; n];
        for i in 0..n {
            inv[i] = (0..n).find(|&j| t[i * n + j] == 0).unwrap() as u32;
        }
        Table { n, t, inv }
    }

    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.t[a * self.n + b] as usize
    }

    pub(crate) fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g] as usize, a), g)
    }

    /// Sorted members of `<gens>`.
    pub(crate) fn close(&self, gens: &[usize]) -> Vec<u32> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            for &g in gens {
                let y = self.mul(queue[k], g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
            k += 1;
        }
        let mut m: Vec<u32> = queue.into_iter().map(|x| x as u32).collect();
        m.sort_unstable();
        m
    }

    /// Every subgroup, as sorted member lists.
    pub(crate) fn all_subgroups(&self) -> Vec<Vec<u32>> {
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut out: Vec<(Vec<u32>, Vec<usize>)> = vec![(vec![0], Vec::new())];
        seen.insert(vec![0]);
        let mut i = 0;
        while i < out.len() {
            let (members, gens) = out[i].clone();
            let mut inside = vec![false; self.n];
            for &m in &members {
                inside[m as usize] = true;
            }
            for x in 0..self.n {
                if inside[x] {
                    continue;
                }
                let mut g2 = gens.clone();
                g2.push(x);
                let h = self.close(&g2);
                if seen.insert(h.clone()) {
                    out.push((h, g2));
                }
            }
            i += 1;
        }
        out.into_iter().map(|(m, _)| m).collect()
    }
}

/// Largest rank of an elementary abelian section of a 2-group: the maximum
/// over subgroups `H` of the rank of `H / Phi(H)`, with `Phi(H)` generated by squares.
pub fn sectional_rank_2group(g: &FiniteGroup) -> Result<u32> {
    if !g.order().is_power_of_two() {
        return Err(Error::Precondition("sectional rank scan is for 2-groups".into()));
    }
    let tab = Table::of(g);
    let mut best = 0;
    for h in tab.all_subgroups() {
        let squares: Vec<usize> = h.iter().map(|&x| tab.mul(x as usize, x as usize)).collect();
        let phi = tab.close(&squares);
        best = best.max((h.len() / phi.len()).trailing_zeros());
    }
    Ok(best)
}

/// Fingerprint comparison with a zoo group, plus an explicit isomorphism when small enough.
pub fn matches_zoo(g: &FiniteGroup, spec: &str) -> Result<(bool, &'static str)> {
    let target = named_group_str(spec)?;
    if structure_fingerprint(g)? != structure_fingerprint(&target)? {
        return Ok((false, "fingerprint"));
    }
    if g.order() <= ISO_SEARCH_LIMIT {
        Ok((find_isomorphism(g, &target)?.is_some(), "isomorphism"))
    } else {
        Ok((true, "fingerprint"))
    }
}

fn mat(m: &GroupElement) -> Matrix {
    m.as_mat().expect("matrix element").clone()
}

/// The marked objects of `K` and `S`.
#[derive(Debug)]
pub struct SolModel {
    pub l: u32,
    pub frame: Sl2Frame,
    /// Frame matrices re-read over `F_{q^2}`.
    pub x: Matrix,
    pub y: Matrix,
    pub c: Matrix,
    /// `[-1,-1,1]`
    pub z: GroupElement,
    /// `[yc, yc, yc]`
    pub d: GroupElement,
    pub tau: GroupElement,
    pub tau_prime: GroupElement,
    /// 3-cycle of `X`.
    pub rho: GroupElement,
    pub c_diag: GroupElement,
    pub k_generators: Vec<GroupElement>,
    pub s: FiniteGroup,
    pub r0: FiniteGroup,
    pub t: FiniteGroup,
    pub zg: FiniteGroup,
    pub u: FiniteGroup,
    pub e: FiniteGroup,
    pub a: FiniteGroup,
    sl2: OnceLock<FiniteGroup>,
}

impl SolModel {
    pub fn build(l: u32) -> Result<SolModel> {
        if l > 1 {
            return Err(Error::Precondition(format!("model built for l in {{0, 1}}, not {l}")));
        }
        let frame = sl2_with_quaternion_frame(l)?;
        let lv = l + 1;
        let x = mat(&frame.x).lift(lv);
        let y = mat(&frame.y).lift(lv);
        let c = frame.c.as_mat().unwrap().clone();
        let one = Matrix::identity(lv, 2);
        let d3 = |a: &Matrix, b: &Matrix, cc: &Matrix| -> GroupElement { KElem::diag(a, b, cc).into() };
        let yc = y.mul(&c);
        let d = d3(&yc, &yc, &yc);
        let tau: GroupElement = KElem::perm(lv, [1, 0, 2]).into();
        let rho: GroupElement = KElem::perm(lv, [1, 2, 0]).into();
        let tau_prime = d.mul(&tau);
        let z = d3(&one.neg(), &one.neg(), &one);
        let c_diag = d3(&c, &c, &c);

        let mut k_generators = Vec::new();
        for i in 0..3 {
            for g in &frame.generators {
                k_generators.push(Self::block_at(lv, i, &mat(g).lift(lv)));
            }
        }
        k_generators.extend([c_diag.clone(), tau.clone(), rho.clone()]);

        let mut r0_gens = Vec::new();
        for i in 0..3 {
            r0_gens.push(Self::block_at(lv, i, &x));
            r0_gens.push(Self::block_at(lv, i, &y));
        }
        let r0 = FiniteGroup::generate(&r0_gens)?;
        let mut s_gens = r0_gens.clone();
        s_gens.extend([d.clone(), tau.clone()]);
        let s = FiniteGroup::generate(&s_gens)?;
        let t = FiniteGroup::generate(&[
            Self::block_at(lv, 0, &x),
            Self::block_at(lv, 1, &x),
            c_diag.clone(),
        ])?;
        let zg = FiniteGroup::generate(std::slice::from_ref(&z))?;
        let u = FiniteGroup::generate(&[d3(&one.neg(), &one, &one), d3(&one, &one.neg(), &one)])?;
        let inv_members: Vec<usize> =
            (0..t.order()).filter(|&i| t.element_orders()[i] <= 2).collect();
        let e = t.subgroup_from_members(&inv_members)?;
        let mut a_gens = e.generators().to_vec();
        a_gens.push(d.clone());
        let a = FiniteGroup::generate(&a_gens)?;
        Ok(SolModel {
            l,
            frame,
            x,
            y,
            c,
            z,
            d,
            tau,
            tau_prime,
            rho,
            c_diag,
            k_generators,
            s,
            r0,
            t,
            zg,
            u,
            e,
            a,
            sl2: OnceLock::new(),
        })
    }

    fn block_at(lv: u32, i: usize, m: &Matrix) -> GroupElement {
        let one = Matrix::identity(lv, 2);
        let mut b = [&one, &one, &one];
        b[i] = m;
        KElem::diag(b[0], b[1], b[2]).into()
    }

    /// `m` in block `i`, identity elsewhere; `m` may be given over `F_q`.
    pub fn block(&self, i: usize, m: &Matrix) -> GroupElement {
        Self::block_at(self.l + 1, i, &m.lift(self.l + 1))
    }

    fn x_pow(&self, k: i64) -> Matrix {
        mat(&GroupElement::Mat(self.x.clone()).pow(k))
    }

    /// Generators of `Q_i = <x^(2^l), y>`, or of `Q_i' = <x^(2^l), xy>` when `primed`.
    pub fn q_gens(&self, i: usize, primed: bool) -> Vec<GroupElement> {
        let second = if primed { self.x.mul(&self.y) } else { self.y.clone() };
        vec![self.block(i, &self.x_pow(1 << self.l)), self.block(i, &second)]
    }

    pub fn r_gens(&self, i: usize) -> Vec<GroupElement> {
        vec![self.block(i, &self.x), self.block(i, &self.y)]
    }

    /// `SL_2(q)`, enumerated once.
    pub fn sl2(&self) -> Result<&FiniteGroup> {
        if let Some(g) = self.sl2.get() {
            return Ok(g);
        }
        let g = self.frame.group()?;
        Ok(self.sl2.get_or_init(|| g))
    }

    /// `|K| = |SL_2(q)|^3 / 2 * 2 * 6`: `L_0` modulo the central `(-1,-1,-1)`,
    /// the coset of `[c,c,c]` (its square lies in `L_0`), and `X`.
    pub fn k_order(&self) -> Result<u128> {
        let n = self.sl2()?.order() as u128;
        Ok(n * n * n * 6)
    }

    /// Whether `g` lies in `L_0`: no block permutation and all entries in `F_q`.
    pub fn in_l0(&self, g: &GroupElement) -> bool {
        let k = g.as_k().expect("K element");
        let q = crate::field::size(self.l) as u16;
        k.block_perm() == [0, 1, 2] && k.blocks().iter().all(|b| b.iter().all(|&v| v < q))
    }

    /// Elements of `SL_2(q)` normalizing `<gens>`, found by a scan, as a reduced generating set.
    pub fn sl2_normalizer(&self, gens: &[GroupElement]) -> Result<FiniteGroup> {
        let g = self.sl2()?;
        let p = g.subgroup(gens)?;
        g.normalizer(&p)?.with_reduced_generators()
    }

    /// Generators of `prod_i N_{L_i}(P_i)` for per-factor subgroups `<gens_i>` of `SL_2(q)`.
    fn factor_normalizer_gens(&self, factor: &[Vec<GroupElement>; 3]) -> Result<Vec<GroupElement>> {
        let mut out = Vec::new();
        for (i, gens) in factor.iter().enumerate() {
            for h in self.sl2_normalizer(gens)?.generators() {
                out.push(self.block(i, h.as_mat().unwrap()));
            }
        }
        Ok(out)
    }

    /// Relations of the frame and the basic shape of `S`.
    pub fn verify_model(&self) -> Result<Report> {
        let l = self.l;
        let mut r = Report::new("sol-model", l);
        let xe = GroupElement::Mat(self.x.clone());
        let ye = GroupElement::Mat(self.y.clone());
        let ce = GroupElement::Mat(self.c.clone());
        let n = 1i64 << (l + 2);
        r.holds("x^(2^(l+2)) = 1", xe.pow(n).is_identity());
        r.holds("y^2 = x^(2^(l+1))", ye.pow(2) == xe.pow(n / 2));
        r.holds("x^y = x^-1", xe.conj(&ye) == xe.inv());
        r.holds("c^2 = x^-1", ce.pow(2) == xe.inv());
        r.eq("|S|", 1u64 << (10 + 3 * l), self.s.order());
        r.eq("|R_0|", (1u64 << (3 * (l + 3))) / 2, self.r0.order());
        r.eq("|K|", [120u128, 15600][l as usize].pow(3) * 6, self.k_order()?);
        let dt = FiniteGroup::generate(&[self.d.clone(), self.tau.clone()])?;
        r.eq("<d, tau>", "C2xC2", if dt.order() == 4 && dt.exponent() == 2 { "C2xC2" } else { "other" });
        r.holds("<d, tau> meets R_0 trivially", dt.elements().iter().skip(1).all(|g| !self.r0.contains(g)));
        r.holds("d^2 = 1", self.d.pow(2).is_identity() && !self.d.is_identity());
        r.holds("d commutes with tau", self.d.mul(&self.tau) == self.tau.mul(&self.d));
        let one = Matrix::identity(l + 1, 2);
        let alt: GroupElement = KElem::diag(&one, &one, &one.neg()).into();
        r.holds("[-1,-1,1] = [1,1,-1]", alt == self.z);
        let center = self.s.center()?;
        r.eq("|Z(S)|", 2, center.order());
        r.holds("Z(S) = <z>", center.contains(&self.z));
        Ok(r)
    }

    /// Exhaustive counts of normal four-subgroups and of subgroups isomorphic to `T`.
    /// Only run at `l = 0`.
    pub fn uniqueness_searches(&self) -> Result<(usize, bool, usize, bool)> {
        if self.l != 0 {
            return Err(Error::UniquenessSearchSkipped(self.l));
        }
        let tab = Table::of(&self.s);
        let n = tab.n;
        let orders = self.s.element_orders();
        let sgens: Vec<usize> = self.s.generators().iter().map(|g| self.s.index_of(g).unwrap()).collect();
        let normal = |m: &[u32]| {
            sgens.iter().all(|&g| m.iter().all(|&v| m.binary_search(&(tab.conj(v as usize, g) as u32)).is_ok()))
        };
        let commute = |a: usize, b: usize| tab.mul(a, b) == tab.mul(b, a);
        let idx_set = |h: &FiniteGroup| -> Vec<u32> {
            let mut v: Vec<u32> = h.elements().iter().map(|g| self.s.index_of(g).unwrap() as u32).collect();
            v.sort_unstable();
            v
        };

        let invols: Vec<usize> = (1..n).filter(|&i| orders[i] == 2).collect();
        let mut fours: FxHashSet<Vec<u32>> = FxHashSet::default();
        for (k, &a) in invols.iter().enumerate() {
            for &b in &invols[k + 1..] {
                if commute(a, b) {
                    let mut v = vec![0, a as u32, b as u32, tab.mul(a, b) as u32];
                    v.sort_unstable();
                    if normal(&v) {
                        fours.insert(v);
                    }
                }
            }
        }
        let u_is_it = fours.len() == 1 && fours.contains(&idx_set(&self.u));

        // homocyclic rank 3, exponent 2^(l+2) = 4
        let o4: Vec<usize> = (1..n).filter(|&i| orders[i] == 4).collect();
        let mut pairs: FxHashSet<Vec<u32>> = FxHashSet::default();
        for (k, &a) in o4.iter().enumerate() {
            for &b in &o4[k + 1..] {
                if commute(a, b) {
                    let h = tab.close(&[a, b]);
                    if h.len() == 16 {
                        pairs.insert(h);
                    }
                }
            }
        }
        let mut tori: FxHashSet<Vec<u32>> = FxHashSet::default();
        for h in &pairs {
            let hg: Vec<usize> = h.iter().map(|&v| v as usize).collect();
            for &c in &o4 {
                if h.binary_search(&(c as u32)).is_err() && hg.iter().all(|&v| commute(v, c)) {
                    let mut gens = hg.clone();
                    gens.push(c);
                    let big = tab.close(&gens);
                    if big.len() == 64 && big.iter().all(|&v| orders[v as usize] <= 4) {
                        tori.insert(big);
                    }
                }
            }
        }
        let t_is_it = tori.len() == 1 && tori.contains(&idx_set(&self.t));
        Ok((fours.len(), u_is_it, tori.len(), t_is_it))
    }

    /// `T` normal and homocyclic, `S/T = C2 x D8`, `d` inverts `T`, and `Z < U < E < A`.
    pub fn verify_torus_sequence(&self) -> Result<Report> {
        let l = self.l;
        let mut r = Report::new("torus-sequence", l);
        let e = 1u64 << (l + 2);
        r.holds("T <= S", self.s.contains_group(&self.t));
        r.holds("T normal in S", self.s.is_normal(&self.t));
        r.eq("|T|", e * e * e, self.t.order());
        r.holds("T abelian", self.t.is_abelian());
        r.eq("T invariants", format!("{:?}", vec![e; 3]), format!("{:?}", crate::group::abelian_invariants(&self.t)));
        let quot = quotient_group(&self.s, &self.t)?;
        r.eq("|S/T|", 16, quot.order());
        let (ok, how) = matches_zoo(&quot.group, "x(C2,D8)")?;
        r.holds(&format!("S/T = C2 x D8 ({how})"), ok);
        let di = self.d.inv();
        r.holds("d inverts T", self.t.elements().iter().all(|t| t.conj_with(&self.d, &di) == t.inv()));
        for (name, g, ord) in [("Z", &self.zg, 2), ("U", &self.u, 4), ("E", &self.e, 8), ("A", &self.a, 16)] {
            r.eq(&format!("|{name}|"), ord, g.order());
            r.holds(&format!("{name} elementary abelian"), g.is_abelian() && g.exponent() <= 2);
        }
        r.holds("Z < U < E < A", self.u.contains_group(&self.zg) && self.e.contains_group(&self.u) && self.a.contains_group(&self.e));
        r.holds("A <= S", self.s.contains_group(&self.a));
        r.holds("U normal in S", self.s.is_normal(&self.u));
        match self.uniqueness_searches() {
            Ok((fours, u_ok, tori, t_ok)) => {
                r.eq("normal four-subgroups of S", 1, fours);
                r.holds("the normal four-subgroup is U", u_ok);
                r.eq("subgroups of S isomorphic to T", 1, tori);
                r.holds("that subgroup is T", t_ok);
            }
            Err(Error::UniquenessSearchSkipped(_)) => {
                r.flags.push("uniqueness-search-skipped".into());
            }
            Err(err) => return Err(err),
        }
        Ok(r)
    }

    /// `6 <= s(S) <= 6`: lower bound from `R_0 / Phi(R_0)`, upper from `s(T) + s(S/T)`.
    pub fn sectional_rank_certificate(&self) -> Result<SectionalRank> {
        if self.l != 0 {
            return Err(Error::Precondition("sectional rank certificate is computed at l = 0".into()));
        }
        let squares: Vec<GroupElement> = {
            let mut v: Vec<GroupElement> = self.r0.elements().iter().map(|g| g.pow(2)).collect();
            v.sort();
            v.dedup();
            v
        };
        let phi = self.r0.subgroup(&squares)?;
        let frat = quotient_group(&self.r0, &phi)?;
        let frattini_rank = if frat.group.exponent() <= 2 {
            frat.order().trailing_zeros()
        } else {
            return Err(Error::Internal("R_0 / Phi(R_0) not elementary abelian".into()));
        };
        let s_t = sectional_rank_2group(&self.t)?;
        let quot = quotient_group(&self.s, &self.t)?;
        let s_quot = sectional_rank_2group(&quot.group)?;
        Ok(SectionalRank { frattini_rank, s_t, s_quot, lower: frattini_rank, upper: s_t + s_quot })
    }

    /// The five `K`-centric radical classes at `l = 0` and their outer automorphism groups.
    pub fn verify_k_radicals_l0(&self) -> Result<Report> {
        if self.l != 0 {
            return Err(Error::Precondition("K-radical table is computed at l = 0".into()));
        }
        let mut r = Report::new("k-radicals", 0);
        let q_factor: [Vec<GroupElement>; 3] = std::array::from_fn(|_| vec![self.frame.x.clone(), self.frame.y.clone()]);
        let per = self.sl2_normalizer(&q_factor[0])?;
        r.eq("|N_SL2(5)(Q8)|", 24, per.order());
        let mut n_gens = self.factor_normalizer_gens(&q_factor)?;
        n_gens.extend([self.c_diag.clone(), self.tau.clone(), self.rho.clone()]);
        r.holds("generators normalize Q", n_gens.iter().all(|g| FiniteGroup::element_normalizes(g, &self.r0)));
        let n = FiniteGroup::generate(&n_gens)?;
        let orbit = subgroup_conjugation_orbit(&self.k_generators, &self.r0, Some(self.k_order()?))?;
        r.eq("orbit of Q under K", 125, orbit.orbit_size);
        r.eq("|N_K(Q)| from orbit", 82944, orbit.normalizer_order.unwrap());
        r.eq("|<generators>|", 82944, n.order());
        let zq = self.r0.center()?;
        r.eq("|Inn(Q)|", 64, self.r0.order() / zq.order());

        let q = self.r0.clone();
        let sub = |extra: &GroupElement| -> Result<FiniteGroup> {
            let mut g = q.generators().to_vec();
            g.push(extra.clone());
            self.s.subgroup(&g)
        };
        let rows: Vec<(&str, FiniteGroup, usize, &str)> = vec![
            ("S", self.s.clone(), 1, "C1"),
            ("Q", q.clone(), 324, "m324"),
            ("QR", sub(&self.tau)?, 18, "dih(C3xC3)"),
            ("QR*", sub(&self.tau_prime)?, 6, "S3"),
            ("C_S(U)", sub(&self.d)?, 6, "S3"),
        ];
        for (name, p, out_order, target) in rows {
            // P meets L_0 in Q, so N_K(P) <= N_K(Q)
            r.holds(&format!("{name} meets L_0 in Q"), p.elements().iter().filter(|g| self.in_l0(g)).count() == q.order());
            let np = n.normalizer(&p)?;
            let out = outer_via_centralizer(&np, &p)?;
            r.eq(&format!("|Out_K({name})|"), out_order, out.order());
            let (ok, how) = matches_zoo(&out.group, target)?;
            r.holds(&format!("Out_K({name}) = {target} ({how})"), ok);
            if name == "Q" {
                let via_aut = induced_outer_automorphisms_by(&n_gens, &p)?;
                r.eq("|Aut_K(Q)|", 324 * 64, via_aut.aut.order());
            }
        }
        let cs_u = self.s.centralizer_of_subgroup(&self.u)?;
        r.holds("C_S(U) = Q<d>", cs_u.order() == 512 && cs_u.contains(&self.d) && cs_u.contains_group(&q));
        Ok(r)
    }

    /// Spot checks of the `l > 0` table at `l = 1`.
    pub fn spotcheck_l1(&self) -> Result<Report> {
        if self.l != 1 {
            return Err(Error::Precondition("spot checks run on the l = 1 model".into()));
        }
        let mut r = Report::new("l1-spotchecks", 1);
        r.eq("|S|", 8192, self.s.order());

        // per-factor certification inside SL_2(25)
        let x2 = self.frame.x.pow(2);
        let q8 = vec![x2.clone(), self.frame.y.clone()];
        let sl2 = self.sl2()?;
        let q8g = sl2.subgroup(&q8)?;
        let orbit = subgroup_conjugation_orbit(&self.frame.generators, &q8g, Some(sl2.order() as u128))?;
        r.eq("orbit of Q8 under SL2(25)", 325, orbit.orbit_size);
        r.eq("|N_SL2(25)(Q8)| from orbit", 48, orbit.normalizer_order.unwrap());
        let nq = self.sl2_normalizer(&q8)?;
        r.eq("|N_SL2(25)(Q8)| by scan", 48, nq.order());
        let invols = nq.element_orders().iter().filter(|&&o| o == 2).count();
        r.eq("involutions in N_SL2(25)(Q8)", 1, invols);
        let rg = sl2.subgroup(&[self.frame.x.clone(), self.frame.y.clone()])?;
        let orbit_r = subgroup_conjugation_orbit(&self.frame.generators, &rg, Some(sl2.order() as u128))?;
        r.eq("|N_SL2(25)(R)| from orbit", 16, orbit_r.normalizer_order.unwrap());

        // (i) Q1Q2Q3 and the product normalizer
        let q_factor: [Vec<GroupElement>; 3] = std::array::from_fn(|_| q8.clone());
        let mut m_gens = self.factor_normalizer_gens(&q_factor)?;
        m_gens.extend([self.tau.clone(), self.rho.clone()]);
        let p0_gens: Vec<GroupElement> = (0..3).flat_map(|i| self.q_gens(i, false)).collect();
        let p0 = self.s.subgroup(&p0_gens)?;
        r.eq("|Q1Q2Q3|", 256, p0.order());
        let out = induced_outer_automorphisms_by(&m_gens, &p0)?;
        r.eq("|Out_K(Q1Q2Q3)|", 1296, out.out.order());
        let (ok, how) = matches_zoo(&out.out.group, "wr(S3,S3)")?;
        r.holds(&format!("Out_K(Q1Q2Q3) = S3 wr S3 ({how})"), ok);

        // (ii) C_S(U) = R_0<d> inside N_K(R_0) = R_0<[c,c,c]> X
        let mut nr_gens = self.r0.generators().to_vec();
        nr_gens.extend([self.c_diag.clone(), self.tau.clone(), self.rho.clone()]);
        let nr = FiniteGroup::generate(&nr_gens)?;
        let mut cu_gens = self.r0.generators().to_vec();
        cu_gens.push(self.d.clone());
        let cu = self.s.subgroup(&cu_gens)?;
        r.eq("|C_S(U)|", 4096, cu.order());
        r.holds("C_S(U) centralizes U", self.u.generators().iter().all(|g| cu.generators().iter().all(|h| g.mul(h) == h.mul(g))));
        let ncu = nr.normalizer(&cu)?;
        let out_cu = outer_via_centralizer(&ncu, &cu)?;
        let (ok, how) = matches_zoo(&out_cu.group, "S3")?;
        r.holds(&format!("Out_K(C_S(U)) = S3 ({how})"), ok);

        // (iv) P_0<s> with s = [x,1,1] tau: s^2 = [x,x,1], s centralizes the third factor
        let s = self.block(0, &self.x).mul(&self.tau);
        let xx1: GroupElement = KElem::diag(&self.x, &self.x, &Matrix::identity(self.l + 1, 2)).into();
        r.holds("s^2 = [x,x,1]", s.pow(2) == xx1);
        r.holds("s^2 not in P_0, s^4 in P_0", !p0.contains(&s.pow(2)) && p0.contains(&s.pow(4)));
        r.holds("s normalizes P_0", FiniteGroup::element_normalizes(&s, &p0));
        r.holds("s does not centralize U", !self.u.generators().iter().all(|g| g.mul(&s) == s.mul(g)));
        let third: Vec<GroupElement> = self.sl2_normalizer(&q8)?.generators().iter().map(|h| self.block(2, h.as_mat().unwrap())).collect();
        r.holds("s centralizes N_L3(Q3)", third.iter().all(|h| h.mul(&s) == s.mul(h)));
        let mut p_gens = p0_gens.clone();
        p_gens.push(s.clone());
        let p = self.s.subgroup(&p_gens)?;
        r.eq("|P_0<s>|", 1024, p.order());
        r.holds("P_0<s> meets L_0 in P_0<s^2>", p.elements().iter().filter(|g| self.in_l0(g)).count() == 512);
        let out_l3 = induced_outer_automorphisms_by(&third, &p)?;
        r.holds("Out_L3(P_0<s>) not a 2-group", out_l3.out.order() % 3 == 0);
        let m = FiniteGroup::generate(&m_gens)?;
        r.eq("|N_K(Q1Q2Q3)|", 48u64.pow(3) / 2 * 6, m.order());
        let np = m.normalizer(&p)?;
        let out_p = outer_via_centralizer(&np, &p)?;
        let o2 = out_p.group.o_p(2)?;
        r.eq("|O_2(Out_K(P_0<s>))|", 2, o2.order());
        r.flags.push("N_K(P_0<s>) taken inside N_K(P_0)".into());
        r.flags.push("N_K(R_0) and N_K(Q1Q2Q3) certified per factor only".into());
        Ok(r)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SectionalRank {
    pub frattini_rank: u32,
    pub s_t: u32,
    pub s_quot: u32,
    pub lower: u32,
    pub upper: u32,
}

/// Exhaustive checks in `R = <x, y>`, the Sylow 2-subgroup of `SL_2(5^(2^l))`.
pub fn verify_quaternion_lemma(l: u32) -> Result<Report> {
    if !(1..=3).contains(&l) {
        return Err(Error::Precondition(format!("quaternion checks need 1 <= l <= 3, got {l}")));
    }
    let mut r = Report::new("quaternion", l);
    let fr = sl2_with_quaternion_frame(l)?;
    let rg = fr.quaternion()?;
    let n = 1i64 << (l + 2);
    let (x, y) = (fr.x.clone(), fr.y.clone());
    let idx = |g: &GroupElement| rg.index_of(g).unwrap();

    let mut forms: Vec<usize> = Vec::new();
    for i in 0..n {
        for j in 0..2 {
            forms.push(idx(&x.pow(i).mul(&y.pow(j))));
        }
    }
    forms.sort_unstable();
    forms.dedup();
    r.eq("(a) distinct x^i y^j", rg.order(), forms.len());

    let xs = rg.subgroup(std::slice::from_ref(&x))?;
    r.holds("(b) order 4 outside <x>", rg.elements().iter().filter(|g| !xs.contains(g)).all(|g| g.order() == 4));

    let mut conj_ok = true;
    for i in 0..n {
        for j in 0..n {
            let same = rg.class_of(idx(&x.pow(i).mul(&y))) == rg.class_of(idx(&x.pow(j).mul(&y)));
            conj_ok &= same == ((i - j) % 2 == 0);
        }
    }
    r.holds("(c) x^i y ~ x^j y iff i = j mod 2", conj_ok);

    let tab = Table::of(&rg);
    let o4: Vec<usize> = (0..rg.order()).filter(|&i| rg.element_orders()[i] == 4).collect();
    let mut q8s: Vec<Vec<u32>> = Vec::new();
    for &a in &o4 {
        for &b in &o4 {
            if tab.mul(a, b) == tab.mul(b, a) {
                continue;
            }
            let h = tab.close(&[a, b]);
            if h.len() == 8 && !q8s.contains(&h) {
                q8s.push(h);
            }
        }
    }
    r.eq("(d) Q8 subgroups", 1u64 << l, q8s.len());
    let x2l = x.pow(1 << l);
    let named: Vec<Vec<u32>> = (0..(1i64 << l))
        .map(|i| tab.close(&[idx(&x2l), idx(&x.pow(i).mul(&y))]))
        .collect();
    r.holds("(d) they are <x^(2^l), x^i y>", named.iter().all(|h| q8s.contains(h)) && {
        let mut v = named.clone();
        v.sort();
        v.dedup();
        v.len() == q8s.len()
    });

    let rgens: Vec<usize> = rg.generators().iter().map(idx).collect();
    let conj_set = |h: &[u32], g: usize| -> Vec<u32> {
        let mut v: Vec<u32> = h.iter().map(|&e| tab.conj(e as usize, g) as u32).collect();
        v.sort_unstable();
        v
    };
    let mut class_of_q = vec![usize::MAX; q8s.len()];
    let mut sizes = Vec::new();
    for start in 0..q8s.len() {
        if class_of_q[start] != usize::MAX {
            continue;
        }
        let cls = sizes.len();
        let mut stack = vec![start];
        class_of_q[start] = cls;
        let mut size = 0;
        while let Some(k) = stack.pop() {
            size += 1;
            for &g in &rgens {
                let im = conj_set(&q8s[k], g);
                let j = q8s.iter().position(|h| *h == im).unwrap();
                if class_of_q[j] == usize::MAX {
                    class_of_q[j] = cls;
                    stack.push(j);
                }
            }
        }
        sizes.push(size);
    }
    let half = 1usize << (l - 1);
    r.eq("(e) class lengths", format!("{:?}", vec![half, half]), format!("{sizes:?}"));

    let q = rg.subgroup(&[x2l.clone(), y.clone()])?;
    let nq = rg.normalizer(&q)?;
    let expected = rg.subgroup(&[x2l.clone(), y.clone(), x.pow(1 << (l - 1))])?;
    r.holds("(f) N_R(Q) = <Q, x^(2^(l-1))>", nq.order() == expected.order() && nq.contains_group(&expected));

    let lv = l + 1;
    let lift = |g: &GroupElement| GroupElement::Mat(mat(g).lift(lv));
    let c = fr.c.clone();
    r.holds("c^2 = x^-1", c.pow(2) == lift(&x).inv());
    let ci = c.inv();
    let mut qc: Vec<GroupElement> = q.elements().iter().map(|g| lift(g).conj_with(&c, &ci)).collect();
    qc.sort();
    let qp = rg.subgroup(&[x2l.clone(), x.mul(&y)])?;
    let mut qp_l: Vec<GroupElement> = qp.elements().iter().map(lift).collect();
    qp_l.sort();
    r.holds("Q^c = <x^(2^l), xy>", qc == qp_l);
    let qi = tab.close(&[idx(&x2l), idx(&y)]);
    let qpi = tab.close(&[idx(&x2l), idx(&x.mul(&y))]);
    let (a, b) = (q8s.iter().position(|h| *h == qi).unwrap(), q8s.iter().position(|h| *h == qpi).unwrap());
    r.holds("c fuses the two classes", class_of_q[a] != class_of_q[b]);
    Ok(r)
}

/// Everything checked about the model at one level.
pub fn verify_sol(l: u32) -> Result<Report> {
    let m = SolModel::build(l)?;
    let mut r = Report::new("sol", l);
    r.absorb(m.verify_model()?);
    r.absorb(m.verify_torus_sequence()?);
    if l == 0 {
        let sr = m.sectional_rank_certificate()?;
        r.eq("rank of R_0/Phi(R_0)", 6, sr.frattini_rank);
        r.eq("s(T)", 3, sr.s_t);
        r.eq("s(S/T)", 3, sr.s_quot);
        r.eq("s(S) bounds", "6..6", format!("{}..{}", sr.lower, sr.upper));
        r.absorb(m.verify_k_radicals_l0()?);
    } else {
        r.absorb(m.spotcheck_l1()?);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_l0_shape() {
        let m = SolModel::build(0).unwrap();
        assert_eq!(m.s.order(), 1024);
        assert_eq!((m.zg.order(), m.u.order(), m.e.order(), m.a.order()), (2, 4, 8, 16));
        let r = m.verify_model().unwrap();
        assert!(r.passed(), "{:#?}", r.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
    }

    #[test]
    fn quaternion_l1() {
        let r = verify_quaternion_lemma(1).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
    }

    #[test]
    fn sectional_rank_of_small_groups() {
        let c2d8 = named_group_str("x(C2,D8)").unwrap();
        assert_eq!(sectional_rank_2group(&c2d8).unwrap(), 3);
        let q8 = named_group_str("quat(8)").unwrap();
        assert_eq!(sectional_rank_2group(&q8).unwrap(), 2);
    }
}
