//! Stabilizer chains for permutation groups (deterministic Schreier-Sims).
//!
//! Used to get orders and membership for permutation groups without listing
//! their elements.

use crate::element::Perm;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// `transversal[i]` maps the base point to `i`, for `i` in the orbit.
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(base_point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some(Perm::identity(degree));
        Level { base_point, gens: Vec::new(), transversal }
    }

    fn rebuild_orbit(&mut self) {
        let n = self.transversal.len();
        let mut t: Vec<Option<Perm>> = vec![None; n];
        t[self.base_point] = Some(Perm::identity(n));
        let mut queue = vec![self.base_point];
        let mut i = 0;
        while i < queue.len() {
            let pt = queue[i];
            i += 1;
            for g in &self.gens {
                let im = g.image(pt);
                if t[im].is_none() {
                    t[im] = Some(t[pt].as_ref().unwrap().mul(g));
                    queue.push(im);
                }
            }
        }
        self.transversal = t;
    }

    fn orbit_len(&self) -> usize {
        self.transversal.iter().filter(|t| t.is_some()).count()
    }
}

/// Stabilizer chain with strong generators.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm]) -> Self {
        let mut sc = StabChain { degree, levels: Vec::new() };
        for g in gens {
            assert_eq!(g.degree(), degree);
            sc.add_generator(g.clone(), 0);
        }
        sc
    }

    /// Sifts `g`; returns the residue and the level where sifting stopped.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, lv) in self.levels.iter().enumerate().skip(from) {
            let b = h.image(lv.base_point);
            match &lv.transversal[b] {
                Some(t) => h = h.mul(&t.inv()),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    fn add_generator(&mut self, g: Perm, from: usize) {
        let (h, lvl) = self.sift(&g, from);
        if h.is_identity() {
            return;
        }
        if lvl == self.levels.len() {
            let bp = (0..self.degree).find(|&i| h.image(i) != i).unwrap();
            self.levels.push(Level::new(bp, self.degree));
        }
        // h fixes the base points above `lvl`, so it lies in every stabilizer from `from` on.
        for i in from..=lvl {
            self.levels[i].gens.push(h.clone());
            self.levels[i].rebuild_orbit();
        }
        for i in (from..=lvl).rev() {
            let lv = self.levels[i].clone();
            for pt in 0..self.degree {
                let Some(t) = &lv.transversal[pt] else { continue };
                for s in &lv.gens {
                    let im = s.image(pt);
                    let u = lv.transversal[im].as_ref().unwrap();
                    let sg = t.mul(s).mul(&u.inv());
                    if !sg.is_identity() {
                        self.add_generator(sg, i + 1);
                    }
                }
            }
        }
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit_len() as u128).product()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && {
            let (h, _) = self.sift(g, 0);
            h.is_identity()
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        for n in 2..=8usize {
            let t = Perm::from_cycles(n, &[&[0, 1]]);
            let c: Vec<usize> = (0..n).collect();
            let sc = StabChain::new(n, &[t, Perm::from_cycles(n, &[&c])]);
            assert_eq!(sc.order(), (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn membership() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2]]);
        let b = Perm::from_cycles(5, &[&[2, 3, 4]]);
        let sc = StabChain::new(5, &[a, b]);
        assert_eq!(sc.order(), 60);
        assert!(!sc.contains(&Perm::from_cycles(5, &[&[0, 1]])));
        assert!(sc.contains(&Perm::from_cycles(5, &[&[0, 1], &[2, 3]])));
    }
}
