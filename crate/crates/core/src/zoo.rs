//! Named groups, combinators and the quaternion frame in `SL_2(q)`.
//!
//! Group specs use a small grammar: `S<n>`, `A<n>`, `C<n>`, `D<n>` (dihedral of
//! order `n`), `GL(<n>,2)`, `wr(<spec>,<spec>)`, `x(<spec>,<spec>)`,
//! `dih(C3xC3)`, `m108`, `m324`, `SL2(<q>)`, `quat(<2^k>)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::element::{GroupElement, Matrix, Perm};
use crate::error::{Error, Result};
use crate::field::{field_tower, FieldTower, Fe};
use crate::group::FiniteGroup;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    /// `GL_n(2)` on the nonzero vectors.
    Gl2(usize),
    DihC3xC3,
    M108,
    M324,
    Sl2(u64),
    Quat(u64),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "S{n}"),
            GroupSpec::Alt(n) => write!(f, "A{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Gl2(n) => write!(f, "GL({n},2)"),
            GroupSpec::DihC3xC3 => write!(f, "dih(C3xC3)"),
            GroupSpec::M108 => write!(f, "m108"),
            GroupSpec::M324 => write!(f, "m324"),
            GroupSpec::Sl2(q) => write!(f, "SL2({q})"),
            GroupSpec::Quat(n) => write!(f, "quat({n})"),
            GroupSpec::Wreath(a, b) => write!(f, "wr({a},{b})"),
            GroupSpec::Direct(a, b) => write!(f, "x({a},{b})"),
        }
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self) -> Error {
        Error::UnknownSpec(self.s.to_string())
    }

    fn eat(&mut self, t: &str) -> bool {
        if self.s[self.pos..].starts_with(t) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn number(&mut self) -> Result<u64> {
        let rest = &self.s[self.pos..];
        let len = rest.bytes().take_while(|b| b.is_ascii_digit()).count();
        if len == 0 {
            return Err(self.err());
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| self.err())
    }

    fn pair(&mut self) -> Result<(Box<GroupSpec>, Box<GroupSpec>)> {
        let a = self.spec()?;
        self.expect(",")?;
        let b = self.spec()?;
        self.expect(")")?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        if self.eat("wr(") {
            let (a, b) = self.pair()?;
            return Ok(GroupSpec::Wreath(a, b));
        }
        if self.eat("x(") {
            let (a, b) = self.pair()?;
            return Ok(GroupSpec::Direct(a, b));
        }
        if self.eat("dih(C3xC3)") {
            return Ok(GroupSpec::DihC3xC3);
        }
        if self.eat("m108") {
            return Ok(GroupSpec::M108);
        }
        if self.eat("m324") {
            return Ok(GroupSpec::M324);
        }
        if self.eat("GL(") {
            let n = self.number()?;
            self.expect(",2)")?;
            return Ok(GroupSpec::Gl2(n as usize));
        }
        if self.eat("SL2(") {
            let q = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::Sl2(q));
        }
        if self.eat("quat(") {
            let n = self.number()?;
            self.expect(")")?;
            return Ok(GroupSpec::Quat(n));
        }
        for (prefix, ctor) in [
            ("S", GroupSpec::Sym as fn(usize) -> GroupSpec),
            ("A", GroupSpec::Alt),
            ("C", GroupSpec::Cyclic),
            ("D", GroupSpec::Dihedral),
        ] {
            if self.eat(prefix) {
                return Ok(ctor(self.number()? as usize));
            }
        }
        Err(self.err())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &compact, pos: 0 };
        let spec = p.spec()?;
        if p.pos != compact.len() {
            return Err(Error::UnknownSpec(s.to_string()));
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl GroupSpec {
    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::UnknownSpec(format!("{self}: {why}")));
        match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) | GroupSpec::Cyclic(n) if *n == 0 || *n > 60 => {
                bad("degree out of range")
            }
            GroupSpec::Dihedral(n) if *n < 2 || n % 2 != 0 || *n > 120 => bad("needs an even order"),
            GroupSpec::Gl2(n) if *n == 0 || *n > 5 => bad("dimension out of range"),
            GroupSpec::Sl2(q) if ![5, 25, 625, 390_625].contains(q) => bad("q must be 5^(2^l)"),
            GroupSpec::Quat(n) if !(8..=64).contains(n) || !n.is_power_of_two() => {
                bad("order must be 8, 16, 32 or 64")
            }
            GroupSpec::Wreath(a, b) | GroupSpec::Direct(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Order from the closed-form formula.
    pub fn closed_form_order(&self) -> u128 {
        match self {
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => (factorial(*n) / 2).max(1),
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Dihedral(n) => *n as u128,
            GroupSpec::Gl2(n) => (0..*n as u32).map(|i| (1u128 << n) - (1u128 << i)).product(),
            GroupSpec::DihC3xC3 => 18,
            GroupSpec::M108 => 108,
            GroupSpec::M324 => 324,
            GroupSpec::Sl2(q) => {
                let q = *q as u128;
                q * (q - 1) * (q + 1)
            }
            GroupSpec::Quat(n) => *n as u128,
            GroupSpec::Wreath(a, b) => {
                a.closed_form_order().pow(b.degree().unwrap_or(0) as u32) * b.closed_form_order()
            }
            GroupSpec::Direct(a, b) => a.closed_form_order() * b.closed_form_order(),
        }
    }

    /// Number of points of the permutation representation, if there is one.
    pub fn degree(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) | GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => if *n == 4 { 4 } else { (n / 2).max(2) },
            GroupSpec::Gl2(n) => (1 << n) - 1,
            GroupSpec::DihC3xC3 | GroupSpec::M108 | GroupSpec::M324 => 9,
            GroupSpec::Sl2(_) | GroupSpec::Quat(_) => return None,
            GroupSpec::Wreath(a, b) => a.degree()? * b.degree()?,
            GroupSpec::Direct(a, b) => a.degree()? + b.degree()?,
        })
    }

    /// Generators of the fixed construction.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        let p = |n: usize, c: &[&[usize]]| -> GroupElement { Perm::from_cycles(n, c).into() };
        Ok(match self {
            GroupSpec::Sym(n) => {
                let cyc: Vec<usize> = (0..*n).collect();
                if *n < 2 {
                    vec![p(*n, &[])]
                } else {
                    vec![p(*n, &[&[0, 1]]), p(*n, &[&cyc])]
                }
            }
            GroupSpec::Alt(n) => {
                if *n < 3 {
                    vec![p(*n, &[])]
                } else {
                    // 3-cycles (0 1 k) generate A_n
                    (2..*n).map(|k| p(*n, &[&[0, 1, k]])).collect()
                }
            }
            GroupSpec::Cyclic(n) => {
                let cyc: Vec<usize> = (0..*n).collect();
                vec![p(*n, &[&cyc])]
            }
            GroupSpec::Dihedral(order) => {
                let m = order / 2;
                if m == 1 {
                    vec![p(2, &[&[0, 1]])]
                } else if m == 2 {
                    vec![p(4, &[&[0, 1]]), p(4, &[&[2, 3]])]
                } else {
                    let cyc: Vec<usize> = (0..m).collect();
                    let refl: Vec<Vec<usize>> =
                        (1..m).filter(|&i| i < m - i).map(|i| vec![i, m - i]).collect();
                    let refl: Vec<&[usize]> = refl.iter().map(|v| v.as_slice()).collect();
                    vec![p(m, &[&cyc]), p(m, &refl)]
                }
            }
            GroupSpec::Gl2(n) => gl_n_2_generators(*n),
            GroupSpec::DihC3xC3 => {
                // points (a, b) in Z3^2 as 3a + b
                let map = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> GroupElement {
                    let im: Vec<u16> = (0..9)
                        .map(|v| {
                            let (a, b) = f(v / 3, v % 3);
                            (3 * (a % 3) + b % 3) as u16
                        })
                        .collect();
                    Perm::from_images(im).unwrap().into()
                };
                vec![
                    map(&|a, b| (a + 1, b)),
                    map(&|a, b| (a, b + 1)),
                    map(&|a, b| ((3 - a) % 3, (3 - b) % 3)),
                ]
            }
            GroupSpec::M108 | GroupSpec::M324 => {
                let mut g = vec![
                    p(9, &[&[0, 1, 2]]),
                    p(9, &[&[3, 4, 5]]),
                    p(9, &[&[6, 7, 8]]),
                    // simultaneous inversion of the three 3-cycles
                    p(9, &[&[1, 2], &[4, 5], &[7, 8]]),
                    p(9, &[&[0, 3], &[1, 4], &[2, 5]]),
                ];
                if *self == GroupSpec::M324 {
                    g.push(p(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]]));
                }
                g
            }
            GroupSpec::Sl2(q) => {
                let l = (0..4).find(|&l| crate::field::size(l) == *q).unwrap();
                sl2_generators(l)
            }
            GroupSpec::Quat(n) => {
                let l = n.trailing_zeros() - 3;
                let fr = sl2_with_quaternion_frame(l)?;
                vec![fr.x, fr.y]
            }
            GroupSpec::Wreath(a, b) => {
                let base = perm_generators(a)?;
                let top = perm_generators(b)?;
                wreath_generators(&base, &top)?
            }
            GroupSpec::Direct(a, b) => {
                let ga = perm_generators(a)?;
                let gb = perm_generators(b)?;
                direct_generators(&ga, &gb)
            }
        })
    }
}

fn perm_generators(s: &GroupSpec) -> Result<Vec<Perm>> {
    s.generators()?
        .into_iter()
        .map(|g| match g {
            GroupElement::Perm(p) => Ok(p),
            _ => Err(Error::Precondition(format!("{s} is not a permutation group"))),
        })
        .collect()
}

fn gl_n_2_generators(n: usize) -> Vec<GroupElement> {
    // transvections v -> v + v_i e_j, acting on nonzero vectors 1..2^n (point v - 1)
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let im: Vec<u16> = (1..(1u32 << n))
                .map(|v| {
                    let w = if v >> i & 1 == 1 { v ^ (1 << j) } else { v };
                    (w - 1) as u16
                })
                .collect();
            out.push(Perm::from_images(im).unwrap().into());
        }
    }
    if out.is_empty() {
        out.push(Perm::identity(1).into());
    }
    out
}

/// Generators of `base wr top`: a copy of `base` on every block plus `top` permuting the blocks.
pub fn wreath_generators(base: &[Perm], top: &[Perm]) -> Result<Vec<GroupElement>> {
    let m = base.first().ok_or(Error::NoGenerators)?.degree();
    let k = top.first().ok_or(Error::NoGenerators)?.degree();
    let mut out = Vec::new();
    for b in 0..k {
        for g in base {
            let im: Vec<u16> = (0..m * k)
                .map(|x| if x / m == b { (b * m + g.image(x % m)) as u16 } else { x as u16 })
                .collect();
            out.push(Perm::from_images(im)?.into());
        }
    }
    for t in top {
        let im: Vec<u16> = (0..m * k).map(|x| (t.image(x / m) * m + x % m) as u16).collect();
        out.push(Perm::from_images(im)?.into());
    }
    Ok(out)
}

/// Generators of `A x B` on the disjoint union of the point sets.
pub fn direct_generators(a: &[Perm], b: &[Perm]) -> Vec<GroupElement> {
    let na = a[0].degree();
    let nb = b[0].degree();
    let mut out = Vec::new();
    for g in a {
        let im: Vec<u16> = (0..na + nb).map(|x| if x < na { g.image(x) as u16 } else { x as u16 }).collect();
        out.push(Perm::from_images(im).unwrap().into());
    }
    for g in b {
        let im: Vec<u16> =
            (0..na + nb).map(|x| if x < na { x as u16 } else { (na + g.image(x - na)) as u16 }).collect();
        out.push(Perm::from_images(im).unwrap().into());
    }
    out
}

/// `base wr top` for permutation groups.
pub fn wreath_product(base: &FiniteGroup, top: &FiniteGroup) -> Result<FiniteGroup> {
    let as_perms = |g: &FiniteGroup| -> Result<Vec<Perm>> {
        g.generators()
            .iter()
            .map(|x| x.as_perm().cloned().ok_or_else(|| Error::Precondition("not a permutation group".into())))
            .collect()
    };
    FiniteGroup::generate(&wreath_generators(&as_perms(base)?, &as_perms(top)?)?)
}

pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let as_perms = |g: &FiniteGroup| -> Result<Vec<Perm>> {
        g.generators()
            .iter()
            .map(|x| x.as_perm().cloned().ok_or_else(|| Error::Precondition("not a permutation group".into())))
            .collect()
    };
    FiniteGroup::generate(&direct_generators(&as_perms(a)?, &as_perms(b)?))
}

/// Builds the group a spec names.
pub fn named_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    FiniteGroup::generate(&spec.generators()?)
}

pub fn named_group_str(s: &str) -> Result<FiniteGroup> {
    named_group(&s.parse()?)
}

fn mat(level: u32, e: [Fe; 4]) -> Matrix {
    Matrix::new(level, 2, e.to_vec())
}

/// Upper and lower transvections by an F_5-basis of `F_q`, `q = 5^(2^l)`.
pub fn sl2_generators(l: u32) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for i in 0..(1u32 << l) {
        let a = 5u64.pow(i);
        out.push(mat(l, [1, a, 0, 1]).into());
        out.push(mat(l, [1, 0, a, 1]).into());
    }
    out
}

/// `SL_2(q)` with its quaternion Sylow frame.
#[derive(Clone, Debug)]
pub struct Sl2Frame {
    pub tower: FieldTower,
    pub generators: Vec<GroupElement>,
    pub order: u128,
    /// `diag(w, w^-1)`
    pub x: GroupElement,
    /// `[[0, -1], [1, 0]]`
    pub y: GroupElement,
    /// `diag(z^-1, z)` over `F_{q^2}`
    pub c: GroupElement,
}

impl Sl2Frame {
    /// `R = <x, y>`.
    pub fn quaternion(&self) -> Result<FiniteGroup> {
        FiniteGroup::generate(&[self.x.clone(), self.y.clone()])
    }

    /// `SL_2(q)` itself; only feasible for `q <= 25` under the default cap.
    pub fn group(&self) -> Result<FiniteGroup> {
        FiniteGroup::generate(&self.generators)
    }
}

pub fn sl2_with_quaternion_frame(l: u32) -> Result<Sl2Frame> {
    let tower = field_tower(l)?;
    let (fq, fq2) = (tower.fq, tower.fq2);
    let w = tower.omega;
    let m1 = fq.neg(1);
    let x = mat(l, [w, 0, 0, fq.inv(w)]);
    let y = mat(l, [0, m1, 1, 0]);
    let c = mat(l + 1, [fq2.inv(tower.z), 0, 0, tower.z]);
    let q = fq.order() as u128;
    Ok(Sl2Frame {
        generators: sl2_generators(l),
        order: q * (q - 1) * (q + 1),
        x: x.into(),
        y: y.into(),
        c: c.into(),
        tower,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["S7", "A7", "GL(4,2)", "wr(S3,S3)", "x(S3,wr(S3,C2))", "dih(C3xC3)", "m324", "SL2(25)", "quat(16)", "D8"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert!("T7".parse::<GroupSpec>().is_err());
        assert!("wr(S3".parse::<GroupSpec>().is_err());
        assert!("quat(12)".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn registry_orders() {
        for s in ["S3", "A5", "C6", "D8", "GL(3,2)", "dih(C3xC3)", "m108", "m324", "wr(S3,C2)", "x(S3,S3)", "quat(8)", "SL2(5)"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(named_group(&spec).unwrap().order() as u128, spec.closed_form_order(), "{s}");
        }
    }

    #[test]
    fn quaternion_relations() {
        for l in 0..=2 {
            let fr = sl2_with_quaternion_frame(l).unwrap();
            let e = 1i64 << (l + 2);
            assert!(fr.x.pow(e).is_identity());
            assert!(fr.y.pow(4).is_identity());
            assert_eq!(fr.x.pow(e / 2), fr.y.pow(2));
            assert_eq!(fr.x.conj(&fr.y), fr.x.inv());
            let xl = GroupElement::Mat(fr.x.as_mat().unwrap().lift(l + 1));
            assert_eq!(fr.c.pow(2), xl.inv());
            assert_eq!(fr.quaternion().unwrap().order(), 1 << (l + 3));
        }
    }
}
