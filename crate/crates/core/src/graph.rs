//! Finite graphs of groups for discrete subgroups of `PGL(2, K)` and the
//! analytic deformation dimensions they determine.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{checked_pow, gcd, is_prime, s_of_n};
use crate::deformation::{global_hull_dim, BranchDatum, CurveQuotientData, DimensionReport};
use crate::error::{Error, Result};

/// Finite subgroups of `PGL(2, K)` up to isomorphism, following Dickson.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupLabel {
    Trivial,
    Cyclic(u64),
    /// Dihedral of order `2n`.
    Dihedral(u64),
    /// `(Z/p)^t`.
    ElemAb(u32),
    /// `(Z/p)^t x| Z/n`.
    SemiDir(u32, u64),
    /// `PGL(2, p^t)`.
    ProjGL(u32),
    /// `PSL(2, p^t)`.
    ProjSL(u32),
    Alt4,
    Sym4,
    Alt5,
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::Trivial => write!(f, "1"),
            GroupLabel::Cyclic(n) => write!(f, "Z/{n}"),
            GroupLabel::Dihedral(n) => write!(f, "D_{n}"),
            GroupLabel::ElemAb(t) => write!(f, "(Z/p)^{t}"),
            GroupLabel::SemiDir(t, n) => write!(f, "(Z/p)^{t} x| Z/{n}"),
            GroupLabel::ProjGL(t) => write!(f, "PGL(2,p^{t})"),
            GroupLabel::ProjSL(t) => write!(f, "PSL(2,p^{t})"),
            GroupLabel::Alt4 => write!(f, "A_4"),
            GroupLabel::Sym4 => write!(f, "S_4"),
            GroupLabel::Alt5 => write!(f, "A_5"),
        }
    }
}

fn pow(p: u64, t: u32) -> Result<u64> {
    checked_pow(p, t).ok_or_else(|| Error::InvalidLabel(format!("p^{t} overflows")))
}

fn bad(label: &GroupLabel, p: u64, why: &str) -> Error {
    Error::InvalidLabel(format!("{label} at p = {p}: {why}"))
}

/// Hard parameter constraints; a label failing these has no meaning at `p`.
pub fn check_label(label: &GroupLabel, p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    match *label {
        GroupLabel::Cyclic(n) if n < 2 => Err(bad(label, p, "cyclic order must be at least 2, use the trivial label")),
        GroupLabel::Cyclic(n) if gcd(n, p) != 1 => Err(bad(label, p, "cyclic order must be prime to p")),
        GroupLabel::Dihedral(n) if n < 2 => Err(bad(label, p, "dihedral parameter must be at least 2")),
        GroupLabel::Dihedral(n) if gcd(n, p) != 1 => Err(bad(label, p, "dihedral parameter must be prime to p")),
        GroupLabel::ElemAb(0) | GroupLabel::SemiDir(0, _) | GroupLabel::ProjGL(0) | GroupLabel::ProjSL(0) => {
            Err(bad(label, p, "t must be positive"))
        }
        GroupLabel::SemiDir(t, n) => {
            if n == 0 || gcd(n, p) != 1 {
                return Err(bad(label, p, "n must be prime to p"));
            }
            if (pow(p, t)? - 1) % n != 0 {
                return Err(bad(label, p, "n must divide p^t - 1"));
            }
            Ok(())
        }
        GroupLabel::ProjSL(_) if p == 2 => Err(bad(label, p, "PSL(2, q) needs odd characteristic")),
        GroupLabel::ProjGL(t) | GroupLabel::ProjSL(t) => {
            let q = pow(p, t)?;
            q.checked_mul(q).and_then(|q2| q2.checked_mul(q)).ok_or_else(|| bad(label, p, "group order overflows"))?;
            Ok(())
        }
        _ => Ok(()),
    }
}

pub fn group_order(label: &GroupLabel, p: u64) -> Result<u64> {
    check_label(label, p)?;
    Ok(match *label {
        GroupLabel::Trivial => 1,
        GroupLabel::Cyclic(n) => n,
        GroupLabel::Dihedral(n) => 2 * n,
        GroupLabel::ElemAb(t) => pow(p, t)?,
        GroupLabel::SemiDir(t, n) => n * pow(p, t)?,
        GroupLabel::ProjGL(t) => {
            let q = pow(p, t)?;
            q * (q * q - 1)
        }
        GroupLabel::ProjSL(t) => {
            let q = pow(p, t)?;
            q * (q * q - 1) / 2
        }
        GroupLabel::Alt4 => 12,
        GroupLabel::Sym4 => 24,
        GroupLabel::Alt5 => 60,
    })
}

/// Dimension of the normaliser in `PGL(2)` as an algebraic group.
pub fn nu(label: &GroupLabel, p: u64) -> u32 {
    match *label {
        GroupLabel::Trivial => 3,
        GroupLabel::Cyclic(n) if n > 1 && n % p != 0 => 1,
        GroupLabel::ElemAb(_) | GroupLabel::SemiDir(_, 1) => 2,
        _ => 0,
    }
}

/// Labels that name the same subgroup as a more specific row of the table.
fn canonical(label: &GroupLabel, p: u64) -> GroupLabel {
    match *label {
        GroupLabel::SemiDir(t, 1) => GroupLabel::ElemAb(t),
        GroupLabel::ProjGL(1) if p == 2 => GroupLabel::Dihedral(3),
        GroupLabel::ProjSL(1) if p == 5 => GroupLabel::Alt5,
        other => other,
    }
}

/// `(h(G), t(G))` from the analytic table.
pub fn h_and_t(label: &GroupLabel, p: u64) -> Result<(i64, i64)> {
    check_label(label, p)?;
    Ok(match canonical(label, p) {
        GroupLabel::Trivial => (0, 0),
        GroupLabel::Cyclic(_) => (2, 2),
        GroupLabel::Dihedral(_) if p == 2 => (4, 4),
        GroupLabel::Dihedral(_) => (3, 3),
        GroupLabel::ElemAb(t) => {
            let t = t as i64;
            match p {
                2 if t == 1 => (2, 2),
                2 => (t - 1, t),
                3 => (t, t),
                _ => (t, t + 1),
            }
        }
        GroupLabel::SemiDir(t, n) => {
            if n == 2 && p != 2 && p != 3 {
                (t as i64 + 2, t as i64 + 3)
            } else {
                let r = (t / s_of_n(p, n)?) as i64;
                (r + 2, r + 2)
            }
        }
        GroupLabel::ProjGL(_) | GroupLabel::ProjSL(_) | GroupLabel::Alt4 | GroupLabel::Sym4 => (3, 3),
        GroupLabel::Alt5 if p == 3 => (3, 4),
        GroupLabel::Alt5 => (3, 3),
    })
}

/// Branching data of `P^1 -> P^1 / G` from Dickson's list, or `None` when
/// the label does not occur at `p` in that list.
pub fn dickson_branching(label: &GroupLabel, p: u64) -> Result<Option<Vec<BranchDatum>>> {
    check_label(label, p)?;
    let b = BranchDatum::new;
    Ok(match *label {
        GroupLabel::Trivial => Some(Vec::new()),
        GroupLabel::Cyclic(n) => Some(vec![b(0, n), b(0, n)]),
        GroupLabel::Dihedral(n) if p == 2 => Some(vec![b(1, 1), b(0, n)]),
        GroupLabel::Dihedral(n) => Some(vec![b(0, 2), b(0, 2), b(0, n)]),
        GroupLabel::ElemAb(t) | GroupLabel::SemiDir(t, 1) => Some(vec![b(t, 1)]),
        GroupLabel::SemiDir(t, n) => Some(vec![b(t, n), b(0, n)]),
        GroupLabel::ProjGL(t) => {
            let q = pow(p, t)?;
            Some(vec![b(t, q - 1), b(0, q + 1)])
        }
        GroupLabel::ProjSL(t) => {
            let q = pow(p, t)?;
            (q != 5).then(|| vec![b(t, (q - 1) / 2), b(0, q.div_ceil(2))])
        }
        GroupLabel::Alt4 => (p != 2 && p != 3).then(|| vec![b(0, 2), b(0, 3), b(0, 3)]),
        GroupLabel::Sym4 => (p != 2 && p != 3).then(|| vec![b(0, 2), b(0, 4), b(0, 4)]),
        GroupLabel::Alt5 => match p {
            3 => Some(vec![b(1, 2), b(0, 5)]),
            2 | 5 => None,
            _ => Some(vec![b(0, 2), b(0, 3), b(0, 5)]),
        },
    })
}

/// Soft checks: Dickson validity at `p`.
pub fn label_warnings(label: &GroupLabel, p: u64) -> Vec<String> {
    let mut w = Vec::new();
    match *label {
        GroupLabel::ProjSL(1) if p == 5 => w.push("PSL(2,5) does not occur at p = 5; evaluated as A_5".into()),
        GroupLabel::ProjGL(1) if p == 2 => w.push("PGL(2,2) is evaluated as the dihedral group D_3".into()),
        _ => {}
    }
    if matches!(dickson_branching(label, p), Ok(None)) && !matches!(label, GroupLabel::ProjSL(1)) {
        w.push(format!("{label} does not occur in Dickson's list at p = {p}"));
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeResult {
    pub label: GroupLabel,
    pub p: u64,
    pub algebraic: DimensionReport,
    pub nu: u32,
    pub h: i64,
    pub t: i64,
}

/// Table values re-derived from the algebraic formula on `P^1` plus the
/// normaliser correction `3 - nu`.
pub fn finite_case_bridge(label: &GroupLabel, p: u64) -> Result<Option<BridgeResult>> {
    let Some(branch) = dickson_branching(label, p)? else { return Ok(None) };
    let algebraic = global_hull_dim(&CurveQuotientData::new(p, 0, branch))?;
    let nu = nu(&canonical(label, p), p);
    let corr = 3 - nu as i64;
    Ok(Some(BridgeResult {
        label: *label,
        p,
        h: algebraic.hull_dim + corr,
        t: algebraic.tangent_dim + corr,
        algebraic,
        nu,
    }))
}

/// Every label that occurs in Dickson's list at `p` with `p^t <= grid_cap`
/// and cyclic or dihedral parameter at most `n_cap`.
pub fn dickson_labels(p: u64, grid_cap: u64, n_cap: u64) -> Vec<GroupLabel> {
    let mut out = vec![GroupLabel::Trivial];
    for n in 2..=n_cap {
        if gcd(n, p) == 1 {
            out.push(GroupLabel::Cyclic(n));
            out.push(GroupLabel::Dihedral(n));
        }
    }
    let mut t = 1;
    while let Some(q) = checked_pow(p, t).filter(|&q| q <= grid_cap) {
        out.push(GroupLabel::ElemAb(t));
        for n in crate::arith::divisors(q - 1) {
            if n > 1 {
                out.push(GroupLabel::SemiDir(t, n));
            }
        }
        out.push(GroupLabel::ProjGL(t));
        if p != 2 {
            out.push(GroupLabel::ProjSL(t));
        }
        t += 1;
    }
    out.extend([GroupLabel::Alt4, GroupLabel::Sym4, GroupLabel::Alt5]);
    out.retain(|l| matches!(dickson_branching(l, p), Ok(Some(_))));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub p: u64,
    pub vertices: Vec<GroupLabel>,
    pub edges: Vec<(usize, usize, GroupLabel)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalyticReport {
    pub cyclomatic: i64,
    pub hull_dim: i64,
    pub tangent_dim: i64,
    pub vertex_values: Vec<(i64, i64)>,
    pub edge_values: Vec<(i64, i64)>,
    pub warnings: Vec<String>,
}

impl GraphOfGroups {
    pub fn new(p: u64, vertices: Vec<GroupLabel>, edges: Vec<(usize, usize, GroupLabel)>) -> Self {
        GraphOfGroups { p, vertices, edges }
    }

    /// A single vertex with `g` loops, all groups trivial.
    pub fn rose(p: u64, g: usize) -> Self {
        GraphOfGroups::new(p, vec![GroupLabel::Trivial], vec![(0, 0, GroupLabel::Trivial); g])
    }

    pub fn amalgam(p: u64, a: GroupLabel, b: GroupLabel, edge: GroupLabel) -> Self {
        GraphOfGroups::new(p, vec![a, b], vec![(0, 1, edge)])
    }

    fn check_structure(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        let nv = self.vertices.len();
        if nv == 0 {
            return Err(Error::DisconnectedGraph);
        }
        if let Some(&(a, b, _)) = self.edges.iter().find(|&&(a, b, _)| a >= nv || b >= nv) {
            return Err(Error::BadVertexIndex(a.max(b)));
        }
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        let root = find(&mut parent, 0);
        if (0..nv).any(|v| find(&mut parent, v) != root) {
            return Err(Error::DisconnectedGraph);
        }
        Ok(())
    }

    /// Replaces edge `e` by two edges through a new vertex with the same label.
    pub fn subdivide_edge(&self, e: usize) -> Self {
        let mut g = self.clone();
        let (a, b, label) = g.edges[e];
        let mid = g.vertices.len();
        g.vertices.push(label);
        g.edges[e] = (a, mid, label);
        g.edges.push((mid, b, label));
        g
    }
}

pub fn cyclomatic(g: &GraphOfGroups) -> Result<i64> {
    g.check_structure()?;
    Ok(g.edges.len() as i64 - g.vertices.len() as i64 + 1)
}

/// Non-fatal problems: Lagrange divisibility on edges, parameter
/// constraints and Dickson validity.
pub fn validate_graph(g: &GraphOfGroups) -> Vec<String> {
    let p = g.p;
    let mut w = Vec::new();
    for (i, l) in g.vertices.iter().enumerate() {
        if let Err(e) = check_label(l, p) {
            w.push(format!("vertex {i}: {e}"));
        }
        w.extend(label_warnings(l, p).into_iter().map(|s| format!("vertex {i}: {s}")));
    }
    for (i, &(a, b, l)) in g.edges.iter().enumerate() {
        if let Err(e) = check_label(&l, p) {
            w.push(format!("edge {i}: {e}"));
        }
        w.extend(label_warnings(&l, p).into_iter().map(|s| format!("edge {i}: {s}")));
        let Ok(eo) = group_order(&l, p) else { continue };
        for v in [a, b] {
            let Some(vl) = g.vertices.get(v) else { continue };
            if let Ok(vo) = group_order(vl, p) {
                if vo % eo != 0 {
                    w.push(format!("edge {i}: |{l}| = {eo} does not divide |{vl}| = {vo} at vertex {v}"));
                }
            }
        }
    }
    w
}

pub fn analytic_dims(g: &GraphOfGroups) -> Result<AnalyticReport> {
    let c = cyclomatic(g)?;
    let vertex_values = g.vertices.iter().map(|l| h_and_t(l, g.p)).collect::<Result<Vec<_>>>()?;
    let edge_values = g.edges.iter().map(|(_, _, l)| h_and_t(l, g.p)).collect::<Result<Vec<_>>>()?;
    let sum = |v: &[(i64, i64)], f: fn(&(i64, i64)) -> i64| v.iter().map(f).sum::<i64>();
    let hull_dim = 3 * c - 3 + sum(&vertex_values, |x| x.0) - sum(&edge_values, |x| x.0);
    let tangent_dim = 3 * c - 3 + sum(&vertex_values, |x| x.1) - sum(&edge_values, |x| x.1);
    Ok(AnalyticReport { cyclomatic: c, hull_dim, tangent_dim, vertex_values, edge_values, warnings: validate_graph(g) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub algebraic_hull: i64,
    pub algebraic_tangent: i64,
    pub analytic_hull: i64,
    pub analytic_tangent: i64,
    pub consistent: bool,
}

pub fn consistency_check(alg: &CurveQuotientData, graph: &GraphOfGroups) -> Result<ConsistencyReport> {
    if alg.p != graph.p {
        return Err(Error::Invalid(format!("characteristics differ: {} and {}", alg.p, graph.p)));
    }
    let a = global_hull_dim(alg)?;
    let b = analytic_dims(graph)?;
    Ok(ConsistencyReport {
        algebraic_hull: a.hull_dim,
        algebraic_tangent: a.tangent_dim,
        analytic_hull: b.hull_dim,
        analytic_tangent: b.tangent_dim,
        consistent: a.hull_dim == b.hull_dim && a.tangent_dim == b.tangent_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use GroupLabel::*;

    #[test]
    fn cyclomatic_numbers() {
        assert_eq!(cyclomatic(&GraphOfGroups::new(5, vec![Trivial], vec![])).unwrap(), 0);
        assert_eq!(cyclomatic(&GraphOfGroups::rose(5, 4)).unwrap(), 4);
        assert_eq!(cyclomatic(&GraphOfGroups::amalgam(5, Cyclic(2), Cyclic(2), Trivial)).unwrap(), 0);
        let disc = GraphOfGroups::new(5, vec![Trivial, Trivial], vec![]);
        assert_eq!(cyclomatic(&disc), Err(Error::DisconnectedGraph));
        let badidx = GraphOfGroups::new(5, vec![Trivial], vec![(0, 3, Trivial)]);
        assert_eq!(cyclomatic(&badidx), Err(Error::BadVertexIndex(3)));
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(&Dihedral(4), 5).unwrap(), 8);
        assert_eq!(group_order(&SemiDir(2, 3), 2).unwrap(), 12);
        assert_eq!(group_order(&ProjGL(1), 5).unwrap(), 120);
        assert_eq!(group_order(&ProjSL(1), 5).unwrap(), 60);
        assert!(group_order(&ProjSL(1), 2).is_err());
        assert!(group_order(&SemiDir(1, 3), 5).is_err());
    }

    #[test]
    fn normaliser_dims() {
        assert_eq!(nu(&Cyclic(3), 5), 1);
        assert_eq!(nu(&ElemAb(2), 2), 2);
        assert_eq!(nu(&Sym4, 5), 0);
        assert_eq!(nu(&Trivial, 5), 3);
    }

    #[test]
    fn table_values() {
        assert_eq!(h_and_t(&Cyclic(6), 5).unwrap(), (2, 2));
        assert_eq!(h_and_t(&ElemAb(2), 5).unwrap(), (2, 3));
        assert_eq!(h_and_t(&SemiDir(1, 2), 5).unwrap(), (3, 4));
        assert_eq!(h_and_t(&Alt5, 3).unwrap(), (3, 4));
        assert_eq!(h_and_t(&Dihedral(3), 2).unwrap(), (4, 4));
        assert_eq!(h_and_t(&SemiDir(2, 24), 5).unwrap(), (3, 3));
    }

    #[test]
    fn bridge_examples() {
        for t in 1..=3 {
            let r = finite_case_bridge(&ElemAb(t), 5).unwrap().unwrap();
            assert_eq!((r.algebraic.hull_dim, r.h), (t as i64 - 1, t as i64));
        }
        let r = finite_case_bridge(&Dihedral(3), 2).unwrap().unwrap();
        assert_eq!((r.algebraic.hull_dim, r.h), (1, 4));
        let r = finite_case_bridge(&Cyclic(4), 5).unwrap().unwrap();
        assert_eq!((r.algebraic.hull_dim, r.h), (0, 2));
        assert!(finite_case_bridge(&ProjSL(1), 5).unwrap().is_none());
    }

    #[test]
    fn analytic_examples() {
        let drinfeld = GraphOfGroups::amalgam(5, ProjGL(1), SemiDir(2, 4), SemiDir(1, 4));
        let r = analytic_dims(&drinfeld).unwrap();
        assert_eq!(r.hull_dim, 1);
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        let asm = GraphOfGroups::amalgam(5, SemiDir(1, 4), Dihedral(4), Cyclic(4));
        assert_eq!(analytic_dims(&asm).unwrap().hull_dim, 1);
        assert!(validate_graph(&asm).is_empty());
        for g in 2..=6 {
            assert_eq!(analytic_dims(&GraphOfGroups::rose(5, g)).unwrap().hull_dim, 3 * g as i64 - 3);
        }
    }

    #[test]
    fn validation_warnings() {
        let g = GraphOfGroups::amalgam(5, SemiDir(1, 4), Dihedral(4), Cyclic(8));
        assert!(validate_graph(&g).iter().any(|w| w.contains("does not divide")));
        let g = GraphOfGroups::new(5, vec![SemiDir(1, 3)], vec![]);
        assert_eq!(validate_graph(&g).len(), 1);
        assert!(analytic_dims(&g).is_err());
    }

    #[test]
    fn consistency_examples() {
        let alg = CurveQuotientData::new(5, 0, vec![BranchDatum::new(0, 6), BranchDatum::new(2, 4)]);
        let graph = GraphOfGroups::amalgam(5, ProjGL(1), SemiDir(2, 4), SemiDir(1, 4));
        assert!(consistency_check(&alg, &graph).unwrap().consistent);
        let rose = GraphOfGroups::rose(5, 3);
        let alg = CurveQuotientData::new(5, 3, vec![]);
        let r = consistency_check(&alg, &rose).unwrap();
        assert!(r.consistent);
        assert_eq!(r.analytic_hull, 6);
    }

    #[test]
    fn subdivision_invariance() {
        let g = GraphOfGroups::amalgam(5, SemiDir(1, 4), Dihedral(4), Cyclic(4));
        let s = g.subdivide_edge(0);
        assert_eq!(analytic_dims(&g).unwrap().hull_dim, analytic_dims(&s).unwrap().hull_dim);
    }
}
