//! Standard families pairing algebraic quotient data with graphs of groups.

use alloc::vec;

use crate::arith::checked_pow;
use crate::deformation::{BranchDatum, CurveQuotientData};
use crate::error::{Error, Result};
use crate::graph::{GraphOfGroups, GroupLabel};

/// Writes `q = p^t`, failing when `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    let ps = crate::arith::prime_factors(q);
    match ps.as_slice() {
        [p] => {
            let mut t = 0;
            let mut r = q;
            while r.is_multiple_of(*p) {
                r /= p;
                t += 1;
            }
            Ok((*p, t))
        }
        _ => Err(Error::Invalid(alloc::format!("{q} is not a prime power"))),
    }
}

fn q_of(p: u64, t: u32) -> Result<u64> {
    checked_pow(p, t).ok_or_else(|| Error::Invalid("p^t overflows".into()))
}

/// Drinfeld modular curve of level of degree `d` over `F_q`, `q = p^t`.
pub fn drinfeld_algebraic(p: u64, t: u32, d: u32) -> Result<CurveQuotientData> {
    let q = q_of(p, t)?;
    Ok(CurveQuotientData::new(p, 0, vec![BranchDatum::new(0, q + 1), BranchDatum::new(d * t, q - 1)]))
}

/// The amalgam `PGL(2, q) *_{(Z/p)^t x| Z/(q-1)} (Z/p)^{td} x| Z/(q-1)`.
pub fn drinfeld_graph(p: u64, t: u32, d: u32) -> Result<GraphOfGroups> {
    let q = q_of(p, t)?;
    Ok(GraphOfGroups::amalgam(
        p,
        GroupLabel::ProjGL(t),
        GroupLabel::SemiDir(d * t, q - 1),
        GroupLabel::SemiDir(t, q - 1),
    ))
}

/// The curve `(y^q - y)(x^q - x) = c` with its full automorphism group.
pub fn artin_schreier_algebraic(p: u64, t: u32) -> Result<CurveQuotientData> {
    let q = q_of(p, t)?;
    let wild = BranchDatum::new(t, q - 1);
    let branch = if p == 2 {
        vec![BranchDatum::new(1, 1), wild]
    } else {
        vec![BranchDatum::new(0, 2), BranchDatum::new(0, 2), wild]
    };
    let order = q * q * 2 * (q - 1);
    Ok(CurveQuotientData::new(p, 0, branch).with_group_order(order))
}

/// `((Z/p)^t x| Z/(q-1)) *_{Z/(q-1)} D_{q-1}`.
pub fn artin_schreier_mumford_graph(p: u64, t: u32) -> Result<GraphOfGroups> {
    let q = q_of(p, t)?;
    Ok(GraphOfGroups::amalgam(p, GroupLabel::SemiDir(t, q - 1), GroupLabel::Dihedral(q - 1), GroupLabel::Cyclic(q - 1)))
}

/// A Schottky group of rank `g` with trivial normaliser data, paired with an
/// unramified quotient of genus `g`.
pub fn schottky_rose(p: u64, g: usize) -> (CurveQuotientData, GraphOfGroups) {
    (CurveQuotientData::new(p, g as u64, vec![]), GraphOfGroups::rose(p, g))
}
