//! The classification tables of centric radical subgroups, the two Hasse
//! diagrams, and the weight count built from them.
//!
//! Table files are plain text, one record per row:
//! `label | exponent | Out_H | Out_K | Out_F`, with `-` for an absent entry and
//! the exponent of `|P|` an affine expression in `l` such as `9+3l`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::robinson::defect_zero_block_count;
use crate::zoo::{named_group, GroupSpec};

const TABLE_L0: &str = include_str!("../data/table_l0.txt");
const TABLE_K: &str = include_str!("../data/table_k.txt");
const TABLE_H: &str = include_str!("../data/table_h.txt");
const TABLE_F: &str = include_str!("../data/table_f.txt");
const HASSE_L0: &str = include_str!("../data/hasse_l0.txt");
const HASSE_L1: &str = include_str!("../data/hasse_l1.txt");

/// `a + b l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Affine {
    pub a: u32,
    pub b: u32,
}

impl Affine {
    pub fn eval(&self, l: u32) -> u32 {
        self.a + self.b * l
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b {
            0 => write!(f, "{}", self.a),
            1 => write!(f, "{}+l", self.a),
            b => write!(f, "{}+{b}l", self.a),
        }
    }
}

impl std::str::FromStr for Affine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ValidationFailure { row: s.into(), reason: "bad exponent".into() };
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Affine { a: 0, b: 0 };
        for term in s.split('+') {
            if let Some(coef) = term.strip_suffix('l') {
                out.b += if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
            } else {
                out.a += term.parse::<u32>().map_err(|_| bad())?;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TableId {
    /// `l = 0`, all three systems.
    L0,
    K,
    H,
    F,
}

impl TableId {
    pub const ALL: [TableId; 4] = [TableId::L0, TableId::K, TableId::H, TableId::F];

    fn source(self) -> &'static str {
        match self {
            TableId::L0 => TABLE_L0,
            TableId::K => TABLE_K,
            TableId::H => TABLE_H,
            TableId::F => TABLE_F,
        }
    }

    pub fn expected_rows(self) -> usize {
        match self {
            TableId::L0 => 10,
            TableId::K => 11,
            TableId::H => 18,
            TableId::F => 17,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum System {
    H,
    K,
    F,
}

impl std::str::FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" | "h" => Ok(System::H),
            "K" | "k" => Ok(System::K),
            "F" | "f" => Ok(System::F),
            _ => Err(Error::Precondition(format!("unknown fusion system {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionTableRow {
    pub label: String,
    pub exponent: Affine,
    pub out_h: Option<String>,
    pub out_k: Option<String>,
    pub out_f: Option<String>,
    pub caption: String,
}

impl FusionTableRow {
    pub fn out(&self, sys: System) -> Option<&str> {
        match sys {
            System::H => self.out_h.as_deref(),
            System::K => self.out_k.as_deref(),
            System::F => self.out_f.as_deref(),
        }
    }
}

/// Table notation to zoo spec.
const DESCRIPTORS: &[(&str, &str)] = &[
    ("1", "C1"),
    ("S3", "S3"),
    ("S5", "S5"),
    ("S6", "S6"),
    ("S7", "S7"),
    ("A7", "A7"),
    ("GL3(2)", "GL(3,2)"),
    ("GL4(2)", "GL(4,2)"),
    ("(C3)^3:(C2xC2)", "m108"),
    ("(C3)^3:(C2xS3)", "m324"),
    ("(C3xC3):-1:C2", "dih(C3xC3)"),
    ("S3 wr S3", "wr(S3,S3)"),
    ("S3 wr C2", "wr(S3,C2)"),
    ("S3 x S3", "x(S3,S3)"),
    ("S3^3", "x(S3,x(S3,S3))"),
    ("S3 x S3 wr C2", "x(S3,wr(S3,C2))"),
    ("S3 wr C2 x S3", "x(wr(S3,C2),S3)"),
    ("(S3 wr C2) x S3", "x(wr(S3,C2),S3)"),
];

/// Spec for a table descriptor; zoo specs are accepted as they are.
pub fn descriptor_spec(d: &str) -> Result<GroupSpec> {
    let d = d.trim();
    match DESCRIPTORS.iter().find(|(k, _)| *k == d) {
        Some((_, spec)) => spec.parse(),
        None => d.parse(),
    }
}

pub fn resolve_out_descriptor(d: &str) -> Result<FiniteGroup> {
    named_group(&descriptor_spec(d)?)
}

fn z_cache() -> &'static Mutex<HashMap<String, usize>> {
    static CACHE: OnceLock<Mutex<HashMap<String, usize>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Number of 2-blocks of defect zero of the group a descriptor names, memoized by spec.
pub fn z_of_descriptor(d: &str) -> Result<usize> {
    let key = descriptor_spec(d)?.to_string();
    if let Some(&z) = z_cache().lock().unwrap().get(&key) {
        return Ok(z);
    }
    let z = defect_zero_block_count(&resolve_out_descriptor(d)?)?;
    z_cache().lock().unwrap().insert(key, z);
    Ok(z)
}

fn parse_table(id: TableId) -> Result<Vec<FusionTableRow>> {
    let mut caption = String::new();
    let mut rows = Vec::new();
    for line in id.source().lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.starts_with("@table") {
            continue;
        }
        if let Some(c) = line.strip_prefix("@caption") {
            caption = c.trim().to_string();
            continue;
        }
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        if f.len() != 5 {
            return Err(Error::ValidationFailure { row: line.into(), reason: "expected 5 fields".into() });
        }
        let cell = |s: &str| (s != "-").then(|| s.to_string());
        rows.push(FusionTableRow {
            label: f[0].into(),
            exponent: f[1].parse()?,
            out_h: cell(f[2]),
            out_k: cell(f[3]),
            out_f: cell(f[4]),
            caption: caption.clone(),
        });
    }
    Ok(rows)
}

/// Parsed, not yet validated.
pub fn table(id: TableId) -> Result<Vec<FusionTableRow>> {
    parse_table(id)
}

/// All four tables, validated: row counts, resolvable descriptors with the
/// right orders, `Out_F` equal to `Out_K` or `Out_H`, and consistent exponents.
pub fn load_validate_tables() -> Result<Vec<(TableId, Vec<FusionTableRow>)>> {
    let mut out = Vec::new();
    for id in TableId::ALL {
        let rows = parse_table(id)?;
        if rows.len() != id.expected_rows() {
            return Err(Error::ValidationFailure {
                row: format!("{id:?}"),
                reason: format!("{} rows, expected {}", rows.len(), id.expected_rows()),
            });
        }
        for r in &rows {
            let fail = |reason: String| Error::ValidationFailure { row: format!("{id:?}/{}", r.label), reason };
            for d in [&r.out_h, &r.out_k, &r.out_f].into_iter().flatten() {
                let spec = descriptor_spec(d).map_err(|e| fail(e.to_string()))?;
                let g = named_group(&spec).map_err(|e| fail(e.to_string()))?;
                if g.order() as u128 != spec.closed_form_order() {
                    return Err(fail(format!("{d} has order {} not {}", g.order(), spec.closed_form_order())));
                }
            }
            if let Some(f) = &r.out_f {
                let spec = descriptor_spec(f)?;
                let agrees = [&r.out_k, &r.out_h]
                    .into_iter()
                    .flatten()
                    .any(|d| descriptor_spec(d).map(|s| s == spec).unwrap_or(false));
                let has_other = r.out_k.is_some() || r.out_h.is_some();
                if has_other && !agrees {
                    return Err(fail(format!("Out_F = {f} matches neither Out_K nor Out_H")));
                }
            }
            if id == TableId::L0 && r.exponent.b != 0 {
                return Err(fail("l = 0 table has symbolic exponent".into()));
            }
        }
        let mut labels: Vec<&str> = rows.iter().map(|r| r.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != rows.len() {
            return Err(Error::ValidationFailure { row: format!("{id:?}"), reason: "duplicate label".into() });
        }
        out.push((id, rows));
    }
    // same label, same order, across the l > 0 tables
    let mut seen: HashMap<String, Affine> = HashMap::new();
    for (id, rows) in out.iter().filter(|(id, _)| *id != TableId::L0) {
        for r in rows {
            if let Some(e) = seen.insert(r.label.clone(), r.exponent) {
                if e != r.exponent {
                    return Err(Error::ValidationFailure {
                        row: format!("{id:?}/{}", r.label),
                        reason: format!("exponent {} differs from {e}", r.exponent),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The table whose `sys` column gives the classes at level `l`.
pub fn table_for(sys: System, l: u32) -> TableId {
    match (l, sys) {
        (0, _) => TableId::L0,
        (_, System::H) => TableId::H,
        (_, System::K) => TableId::K,
        (_, System::F) => TableId::F,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightRow {
    pub label: String,
    pub out: String,
    pub spec: String,
    pub z: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightReport {
    pub system: System,
    pub l: u32,
    pub rows: Vec<WeightRow>,
    pub total: usize,
}

impl WeightReport {
    pub fn z_vector(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.z).collect()
    }
}

/// Sum of defect-zero block counts of `Out(P)` over the centric radical classes.
pub fn weight_count(sys: System, l: u32) -> Result<WeightReport> {
    let rows = parse_table(table_for(sys, l))?;
    let mut out = Vec::new();
    for r in rows {
        if let Some(d) = r.out(sys) {
            out.push(WeightRow {
                label: r.label.clone(),
                out: d.to_string(),
                spec: descriptor_spec(d)?.to_string(),
                z: z_of_descriptor(d)?,
            });
        }
    }
    let total = out.iter().map(|r| r.z).sum();
    Ok(WeightReport { system: sys, l, rows: out, total })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub l: u32,
    pub weights: usize,
    pub sectional_rank: u32,
    /// Whether the sectional rank was computed here rather than taken as data.
    pub computed: bool,
    pub bound: u64,
    pub pass: bool,
}

/// `w <= 2^s`.
pub fn bound_check(l: u32, weights: usize, sectional_rank: u32, computed: bool) -> BoundCheck {
    let bound = 1u64 << sectional_rank;
    BoundCheck { l, weights, sectional_rank, computed, bound, pass: (weights as u64) <= bound }
}

/// The bound with `s(S)` computed from the model at `l = 0` and taken as 6 otherwise.
pub fn weight_bound(l: u32, weights: usize) -> Result<BoundCheck> {
    if l > 0 {
        return Ok(bound_check(l, weights, 6, false));
    }
    let sr = crate::solmodel::SolModel::build(0)?.sectional_rank_certificate()?;
    if sr.lower != sr.upper {
        return Err(Error::Internal(format!("sectional rank only pinned to {}..{}", sr.lower, sr.upper)));
    }
    Ok(bound_check(l, weights, sr.lower, true))
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseNode {
    pub label: String,
    /// Label of the table row for this class.
    pub row: String,
    pub exponent: Affine,
}

#[derive(Clone, Debug, Serialize)]
pub struct HasseDiagram {
    /// `0` for the first figure, `1` for the one valid for all `l >= 1`.
    pub figure: u32,
    pub nodes: Vec<HasseNode>,
    /// `(smaller, larger)` node indices.
    pub edges: Vec<(usize, usize)>,
}

/// The figure for `l`; every `l >= 1` uses the second one.
pub fn hasse(l: u32) -> Result<HasseDiagram> {
    let (figure, src, tid) = if l == 0 { (0, HASSE_L0, TableId::L0) } else { (1, HASSE_L1, TableId::F) };
    let rows = parse_table(tid)?;
    let mut alias: HashMap<String, String> = HashMap::new();
    let mut pairs: Vec<(String, String)> = Vec::new();
    for line in src.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.starts_with("@hasse") || line.starts_with("@table") {
            continue;
        }
        if let Some(a) = line.strip_prefix("@alias") {
            let (k, v) = a.split_once('=').ok_or_else(|| Error::ValidationFailure { row: line.into(), reason: "bad alias".into() })?;
            alias.insert(k.trim().into(), v.trim().into());
            continue;
        }
        let (a, b) = line
            .split_once("--")
            .ok_or_else(|| Error::ValidationFailure { row: line.into(), reason: "expected an edge".into() })?;
        pairs.push((a.trim().into(), b.trim().into()));
    }
    // nodes in table order, labelled as in the figure
    let mut nodes: Vec<HasseNode> = Vec::new();
    let rev: HashMap<&str, &str> = alias.iter().map(|(k, v)| (v.as_str(), k.as_str())).collect();
    for r in &rows {
        let label = rev.get(r.label.as_str()).map_or(r.label.clone(), |s| s.to_string());
        nodes.push(HasseNode { label, row: r.label.clone(), exponent: r.exponent });
    }
    let find = |s: &str| {
        nodes.iter().position(|n| n.label == s).ok_or_else(|| Error::ValidationFailure {
            row: s.into(),
            reason: "edge endpoint is not a class".into(),
        })
    };
    let mut edges = Vec::new();
    for (a, b) in &pairs {
        edges.push((find(a)?, find(b)?));
    }
    let d = HasseDiagram { figure, nodes, edges };
    d.validate()?;
    Ok(d)
}

impl HasseDiagram {
    /// Levels at which exponents are compared.
    fn sample_levels(&self) -> Vec<u32> {
        if self.figure == 0 {
            vec![0]
        } else {
            (1..=8).collect()
        }
    }

    /// Acyclic, and every edge goes strictly up in order.
    pub fn validate(&self) -> Result<()> {
        for &(a, b) in &self.edges {
            for l in self.sample_levels() {
                if self.nodes[a].exponent.eval(l) >= self.nodes[b].exponent.eval(l) {
                    return Err(Error::ValidationFailure {
                        row: format!("{} -- {}", self.nodes[a].label, self.nodes[b].label),
                        reason: format!("order does not increase at l = {l}"),
                    });
                }
            }
        }
        let mut e = self.edges.clone();
        e.sort_unstable();
        if e.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::ValidationFailure { row: "edges".into(), reason: "repeated edge".into() });
        }
        Ok(())
    }

    /// Node indices sorted by exponent at `l`, then by table order.
    pub fn ranked(&self, l: u32) -> Vec<Vec<usize>> {
        let mut exps: Vec<u32> = self.nodes.iter().map(|n| n.exponent.eval(l)).collect();
        exps.sort_unstable();
        exps.dedup();
        exps.iter()
            .map(|&e| (0..self.nodes.len()).filter(|&i| self.nodes[i].exponent.eval(l) == e).collect())
            .collect()
    }

    pub fn to_dot(&self, l: u32) -> String {
        let mut s = format!("digraph hasse_l{l} {{\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{i} [label=\"{} (2^{})\"];\n", n.label, n.exponent.eval(l)));
        }
        for rank in self.ranked(l) {
            let ids: Vec<String> = rank.iter().map(|i| format!("n{i}")).collect();
            s.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, l: u32) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = self
            .nodes
            .iter()
            .map(|n| {
                serde_json::json!({
                    "label": n.label,
                    "row": n.row,
                    "exponent": n.exponent.to_string(),
                    "order_exponent": n.exponent.eval(l),
                })
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|&(a, b)| serde_json::json!([self.nodes[a].label, self.nodes[b].label]))
            .collect();
        let ranks: Vec<Vec<&str>> = self
            .ranked(l)
            .into_iter()
            .map(|r| r.into_iter().map(|i| self.nodes[i].label.as_str()).collect())
            .collect();
        serde_json::json!({ "l": l, "figure": self.figure, "nodes": nodes, "edges": edges, "ranks": ranks })
    }
}

pub fn hasse_export(l: u32, json: bool) -> Result<String> {
    let d = hasse(l)?;
    Ok(if json { serde_json::to_string_pretty(&d.to_json(l)).unwrap() } else { d.to_dot(l) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_parse() {
        assert_eq!("9+3l".parse::<Affine>().unwrap(), Affine { a: 9, b: 3 });
        assert_eq!("8+l".parse::<Affine>().unwrap().eval(2), 10);
        assert_eq!("4".parse::<Affine>().unwrap().to_string(), "4");
        assert!("x+1".parse::<Affine>().is_err());
    }

    #[test]
    fn tables_validate() {
        let t = load_validate_tables().unwrap();
        let counts: Vec<usize> = t.iter().map(|(_, r)| r.len()).collect();
        assert_eq!(counts, vec![10, 11, 18, 17]);
        let l0 = &t[0].1;
        let cse = l0.iter().find(|r| r.label == "C_S(E)").unwrap();
        assert_eq!(cse.out_f.as_deref(), Some("GL3(2)"));
        let a = t[3].1.iter().find(|r| r.label == "A").unwrap();
        assert_eq!((a.out_f.as_deref(), a.exponent.eval(1)), (Some("GL4(2)"), 4));
    }

    #[test]
    fn descriptors_resolve() {
        assert_eq!(resolve_out_descriptor("S3 wr S3").unwrap().order(), 1296);
        assert_eq!(resolve_out_descriptor("(C3)^3:(C2xS3)").unwrap().order(), 324);
        assert_eq!(resolve_out_descriptor("(C3xC3):-1:C2").unwrap().order(), 18);
        assert!(resolve_out_descriptor("PSL(2,7)").is_err());
    }

    #[test]
    fn hasse_shapes() {
        let d0 = hasse(0).unwrap();
        assert_eq!((d0.nodes.len(), d0.edges.len()), (10, 14));
        let d1 = hasse(1).unwrap();
        assert_eq!((d1.nodes.len(), d1.edges.len()), (17, 29));
        let dot = hasse_export(0, false).unwrap();
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn twelve_weights() {
        let f0 = weight_count(System::F, 0).unwrap();
        assert_eq!(f0.z_vector(), vec![1, 1, 4, 1, 1, 0, 1, 1, 1, 1]);
        for (sys, l) in [(System::H, 0), (System::F, 1), (System::H, 1), (System::F, 2)] {
            assert_eq!(weight_count(sys, l).unwrap().total, 12, "{sys:?} at l = {l}");
        }
    }

    #[test]
    fn bound() {
        assert!(bound_check(0, 12, 6, true).pass);
        assert!(!bound_check(0, 12, 0, true).pass);
    }
}
