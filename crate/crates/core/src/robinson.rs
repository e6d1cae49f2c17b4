//! Number of 2-blocks of defect zero via the double-coset matrix `N`.
//!
//! `N_ij = |y_i^G ∩ x_j S| mod 2`, where the `y_i` run over the classes with
//! odd centralizer order and the `x_j` over one defect-zero element from each
//! `S`-`S` double coset `D` with `S ∩ S^x = 1`. The block count is the GF(2)
//! rank of `N N^T`.

use rayon::prelude::*;
use serde::Serialize;

use crate::element::GroupElement;
use crate::error::Result;
use crate::group::{ConjClass, DoubleCoset, FiniteGroup};
use crate::linalg::BitMatrix;

pub fn defect_zero_classes(g: &FiniteGroup) -> Vec<ConjClass> {
    g.conjugacy_classes().iter().filter(|c| c.centralizer_order % 2 == 1).cloned().collect()
}

/// Inputs and output of the double-coset computation.
#[derive(Clone, Debug)]
pub struct RobinsonData {
    pub sylow: FiniteGroup,
    /// Defect-zero classes, indexed by row of `n`.
    pub y: Vec<ConjClass>,
    /// Number of elements in defect-zero classes.
    pub y0_size: usize,
    /// Chosen representative of each admissible double coset, indexed by column of `n`.
    pub x: Vec<GroupElement>,
    pub n: BitMatrix,
}

impl RobinsonData {
    pub fn nnt(&self) -> BitMatrix {
        self.n.mul_transpose(&self.n)
    }

    /// The number of blocks of defect zero.
    pub fn count(&self) -> usize {
        self.nnt().rank()
    }

    /// `min(|X|, |Y|)`.
    pub fn bound(&self) -> usize {
        self.x.len().min(self.y.len())
    }
}

/// `S ∩ S^x = 1` for a double coset, read off its size `|S|^2 / |S ∩ S^x|`.
pub fn trivial_intersection(d: &DoubleCoset, s: &FiniteGroup) -> bool {
    d.size == s.order() * s.order()
}

/// Direct check of `S ∩ S^x = 1`.
pub fn trivial_intersection_at(s: &FiniteGroup, x: &GroupElement) -> bool {
    let xi = x.inv();
    s.elements().iter().skip(1).all(|e| !s.contains(&e.conj_with(x, &xi)))
}

pub fn robinson_matrix(g: &FiniteGroup) -> Result<RobinsonData> {
    let s = g.sylow_subgroup(2)?;
    robinson_matrix_with(g, s, &|dz: &[usize]| dz[0])
}

/// As [`robinson_matrix`] with a given Sylow 2-subgroup and choice function;
/// `pick` receives the defect-zero members of a double coset in enumeration order.
pub fn robinson_matrix_with(
    g: &FiniteGroup,
    s: FiniteGroup,
    pick: &(dyn Fn(&[usize]) -> usize + Sync),
) -> Result<RobinsonData> {
    let classes = g.conjugacy_classes();
    let odd: Vec<bool> = classes.iter().map(|c| c.centralizer_order % 2 == 1).collect();
    let y: Vec<ConjClass> = classes.iter().filter(|c| c.centralizer_order % 2 == 1).cloned().collect();
    let mut row_of = vec![usize::MAX; classes.len()];
    for (r, c) in classes.iter().enumerate().filter(|(i, _)| odd[*i]).map(|(i, _)| i).enumerate() {
        row_of[c] = r;
    }
    let y0_size = y.iter().map(|c| c.size).sum();

    let cosets = g.double_coset_partition(&s)?;
    let x: Vec<GroupElement> = cosets
        .iter()
        .filter(|d| trivial_intersection(d, &s))
        .filter_map(|d| {
            let dz: Vec<usize> =
                d.members.iter().map(|&m| m as usize).filter(|&m| odd[g.class_of(m)]).collect();
            (!dz.is_empty()).then(|| g.element(pick(&dz)).clone())
        })
        .collect();

    let columns: Vec<Vec<bool>> = x
        .par_iter()
        .map(|xj| {
            let mut col = vec![false; y.len()];
            for e in s.elements() {
                let i = g.index_of(&xj.mul(e)).expect("x S lies in G");
                let c = g.class_of(i);
                if odd[c] {
                    col[row_of[c]] ^= true;
                }
            }
            col
        })
        .collect();
    let mut n = BitMatrix::zeros(y.len(), x.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, &b) in col.iter().enumerate() {
            n.set(i, j, b);
        }
    }
    Ok(RobinsonData { sylow: s, y, y0_size, x, n })
}

/// Groups with their known numbers of 2-blocks of defect zero: `(name, spec, count)`.
pub const DEFECT_ZERO_TABLE: [(&str, &str, usize); 13] = [
    ("S3", "S3", 1),
    ("S3 x S3", "x(S3,S3)", 1),
    ("S3^3", "x(S3,x(S3,S3))", 1),
    ("S3 wr C2", "wr(S3,C2)", 0),
    ("(C3xC3):-1:C2", "dih(C3xC3)", 4),
    ("(C3)^3:(C2xS3)", "m324", 1),
    ("GL3(2)", "GL(3,2)", 1),
    ("GL4(2)", "GL(4,2)", 1),
    ("S6", "S6", 1),
    ("S3 wr S3", "wr(S3,S3)", 1),
    ("S5", "S5", 0),
    ("A7", "A7", 0),
    ("S7", "S7", 0),
];

pub fn defect_zero_block_count(g: &FiniteGroup) -> Result<usize> {
    Ok(robinson_matrix(g)?.count())
}

/// Largest normal subgroup of odd order, grown class by class.
pub fn o_2prime(g: &FiniteGroup) -> Result<FiniteGroup> {
    let mut h = g.trivial_subgroup()?;
    let orders = g.element_orders();
    for c in g.conjugacy_classes() {
        if orders[c.rep_index].is_multiple_of(2) || h.contains(&c.representative) {
            continue;
        }
        let mut gens = h.generators().to_vec();
        gens.push(c.representative.clone());
        let cand = g.normal_closure(&gens)?;
        if cand.order() % 2 == 1 {
            h = cand;
        }
    }
    Ok(h)
}

/// Defect-zero classes of `G` lying in `O_2'(G)`; a lower bound for the block count.
pub fn o_2prime_defect_zero_classes(g: &FiniteGroup) -> Result<usize> {
    let o = o_2prime(g)?;
    Ok(g.conjugacy_classes()
        .iter()
        .filter(|c| c.centralizer_order % 2 == 1 && o.contains(&c.representative))
        .count())
}

/// Number of defect-zero classes when `G` has a normal 2-complement, else `None`.
pub fn two_complement_shortcut(g: &FiniteGroup) -> Result<Option<usize>> {
    let odd_part = g.order() / crate::util::p_part(g.order() as u64, 2) as usize;
    let o = o_2prime(g)?;
    Ok((o.order() == odd_part).then(|| defect_zero_classes(g).len()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub representative: String,
    pub size: usize,
    pub centralizer_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RobinsonReport {
    pub group: String,
    pub order: usize,
    pub sylow_order: usize,
    pub classes: Vec<ClassRow>,
    pub defect_zero: Vec<ClassRow>,
    pub x_count: usize,
    pub n: Vec<Vec<u8>>,
    pub rank: usize,
    pub count: usize,
}

pub fn report(name: &str, g: &FiniteGroup) -> Result<RobinsonReport> {
    let data = robinson_matrix(g)?;
    let row = |c: &ConjClass| ClassRow {
        representative: c.representative.to_string(),
        size: c.size,
        centralizer_order: c.centralizer_order,
    };
    let rank = data.count();
    Ok(RobinsonReport {
        group: name.to_string(),
        order: g.order(),
        sylow_order: data.sylow.order(),
        classes: g.conjugacy_classes().iter().map(row).collect(),
        defect_zero: data.y.iter().map(row).collect(),
        x_count: data.x.len(),
        n: data.n.to_rows(),
        rank,
        count: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::named_group_str;

    #[test]
    fn s3_and_c2() {
        let s3 = named_group_str("S3").unwrap();
        assert_eq!(defect_zero_block_count(&s3).unwrap(), 1);
        assert_eq!(two_complement_shortcut(&s3).unwrap(), Some(1));
        let c2 = named_group_str("C2").unwrap();
        assert!(defect_zero_classes(&c2).is_empty());
        assert_eq!(defect_zero_block_count(&c2).unwrap(), 0);
    }

    #[test]
    fn trivial_group_has_one_block() {
        let t = named_group_str("C1").unwrap();
        let d = robinson_matrix(&t).unwrap();
        assert_eq!((d.y.len(), d.x.len(), d.count()), (1, 1, 1));
    }

    #[test]
    fn s5_matrix_is_zero() {
        let g = named_group_str("S5").unwrap();
        let d = robinson_matrix(&g).unwrap();
        assert_eq!(d.y.len(), 1);
        assert!(d.n.is_zero());
        assert_eq!(d.count(), 0);
    }
}
