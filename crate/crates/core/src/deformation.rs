//! Global deformation dimensions of a curve with a group action, computed
//! from the genus of the quotient and the ramification data over it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::{checked_pow, gcd, is_prime, s_of_n};
use crate::error::{Error, Result};

/// Ramification group `(Z/p)^t x| Z/n` over one branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BranchDatum {
    pub t: u32,
    pub n: u64,
}

impl BranchDatum {
    pub fn new(t: u32, n: u64) -> Self {
        BranchDatum { t, n }
    }

    pub fn validate(&self, p: u64) -> Result<()> {
        if self.n == 0 || gcd(self.n, p) != 1 {
            return Err(Error::NotCoprime { n: self.n, p });
        }
        if self.t > 0 && self.n > 1 {
            let q =
                checked_pow(p, self.t).ok_or_else(|| Error::Invalid(format!("p^t overflows for t = {}", self.t)))?;
            if (q - 1) % self.n != 0 {
                return Err(Error::RamificationConstraint { p, t: self.t, n: self.n });
            }
        }
        Ok(())
    }

    /// `n p^t`.
    pub fn order(&self, p: u64) -> Option<u64> {
        checked_pow(p, self.t)?.checked_mul(self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQuotientData {
    pub p: u64,
    pub g_y: u64,
    pub branch: Vec<BranchDatum>,
    pub group_order: Option<u64>,
}

impl CurveQuotientData {
    pub fn new(p: u64, g_y: u64, branch: Vec<BranchDatum>) -> Self {
        CurveQuotientData { p, g_y, branch, group_order: None }
    }

    pub fn with_group_order(mut self, order: u64) -> Self {
        self.group_order = Some(order);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        self.branch.iter().try_for_each(|d| d.validate(self.p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    /// Contributes 1 to `delta`.
    Tame,
    /// Contributes 2 to `delta`.
    Wild,
}

pub fn classify_point(p: u64, d: &BranchDatum) -> PointClass {
    if d.t == 0 || (p == 2 && d.t == 1) {
        PointClass::Tame
    } else {
        PointClass::Wild
    }
}

pub fn delta(data: &CurveQuotientData) -> u64 {
    data.branch
        .iter()
        .map(|d| match classify_point(data.p, d) {
            PointClass::Tame => 1,
            PointClass::Wild => 2,
        })
        .sum()
}

/// Krull dimension of the local hull at a branch point.
pub fn local_hull_dim(p: u64, d: &BranchDatum) -> Result<i64> {
    d.validate(p)?;
    let t = d.t as i64;
    Ok(match (d.t, d.n) {
        (0, _) => 0,
        (_, 1) if p == 2 && d.t == 1 => 1,
        (_, 1) if p == 2 => t - 2,
        (_, 1) => t - 1,
        (_, 2) if p != 2 && p != 3 => t - 1,
        (_, n) => t / s_of_n(p, n)? as i64 - 1,
    })
}

/// Whether the `d0` class is present and obstructed at this point.
pub fn is_obstructed_point(p: u64, d: &BranchDatum) -> bool {
    match p {
        3 => false,
        2 => d.n == 1 && d.t > 1,
        _ => d.t > 0 && d.n <= 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExceptionalCase {
    /// `p = 2`, `Y = P^1`, two branch points.
    CharTwoTwoPoints = 1,
    /// `X = P^1 -> P^1` tamely branched above two points.
    TameTwoPoints = 2,
    /// `X = P^1 -> P^1` wildly branched above a single point.
    WildOnePoint = 3,
    /// Unramified cover of elliptic curves.
    EllipticUnramified = 4,
}

impl ExceptionalCase {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub delta: u64,
    /// `h^0(T_Y(-Delta))`.
    pub h0_correction: u64,
    pub local_dims: Vec<i64>,
    pub hull_dim: i64,
    pub tangent_dim: i64,
    /// Number of obstructed local classes, `tangent_dim - hull_dim`.
    pub obstructed_points: u64,
    pub exceptional_case: Option<ExceptionalCase>,
    /// Shape of the hull: completed tensor product of local hulls with a
    /// power series ring in `free_parameters` variables.
    pub free_parameters: i64,
    pub warnings: Vec<String>,
}

fn h0_twisted_tangent(g_y: u64, delta: u64) -> u64 {
    match g_y {
        0 => 3u64.saturating_sub(delta),
        1 if delta == 0 => 1,
        _ => 0,
    }
}

fn exceptional_case(data: &CurveQuotientData) -> Option<ExceptionalCase> {
    let b = &data.branch;
    match (data.g_y, b.len()) {
        (1, 0) => Some(ExceptionalCase::EllipticUnramified),
        (0, 2) if b.iter().all(|d| d.t == 0) => Some(ExceptionalCase::TameTwoPoints),
        (0, 2) if data.p == 2 => Some(ExceptionalCase::CharTwoTwoPoints),
        (0, 1) if b[0].t > 0 => Some(ExceptionalCase::WildOnePoint),
        _ => None,
    }
}

fn geometric_warnings(data: &CurveQuotientData) -> Vec<String> {
    let mut w = Vec::new();
    let b = &data.branch;
    if data.g_y == 0 && b.len() == 1 && b[0].t == 0 {
        w.push("a cover of P^1 cannot be branched at a single tame point".into());
    }
    if data.g_y == 0 && b.len() == 1 && b[0].t > 0 && b[0].n != 1 {
        w.push("a cover of P^1 wildly branched at a single point has n = 1".into());
    }
    if data.p != 2 && data.p != 3 {
        let excluded = b.iter().filter(|d| d.t == 0 && d.n <= 2).count();
        if excluded > 0 {
            w.push(format!("{excluded} tame point(s) with n <= 2 excluded from the tangent correction (no local H^1)"));
        }
    }
    w
}

pub fn global_hull_dim(data: &CurveQuotientData) -> Result<DimensionReport> {
    data.validate()?;
    let p = data.p;
    let delta = delta(data);
    let h0 = h0_twisted_tangent(data.g_y, delta);
    let local_dims = data.branch.iter().map(|d| local_hull_dim(p, d)).collect::<Result<Vec<_>>>()?;
    let free = 3 * data.g_y as i64 - 3 + delta as i64 + h0 as i64;
    let hull_dim = free + local_dims.iter().sum::<i64>();
    let obstructed = data.branch.iter().filter(|d| is_obstructed_point(p, d)).count() as u64;
    Ok(DimensionReport {
        delta,
        h0_correction: h0,
        local_dims,
        hull_dim,
        tangent_dim: hull_dim + obstructed as i64,
        obstructed_points: obstructed,
        exceptional_case: exceptional_case(data),
        free_parameters: free,
        warnings: geometric_warnings(data),
    })
}

pub fn global_tangent_dim(data: &CurveQuotientData) -> Result<i64> {
    Ok(global_hull_dim(data)?.tangent_dim)
}

/// Genus of `X` from the Hurwitz formula with ordinary ramification.
pub fn hurwitz_genus(data: &CurveQuotientData) -> Result<u64> {
    data.validate()?;
    let g = data.group_order.ok_or_else(|| Error::Invalid("hurwitz_genus needs a group order".into()))? as i128;
    let p = data.p;
    let mut rhs = g * (2 * data.g_y as i128 - 2);
    for d in &data.branch {
        let e = d.order(p).ok_or_else(|| Error::Invalid("ramification group order overflows".into()))? as i128;
        if g % e != 0 {
            return Err(Error::NonIntegralGenus(format!("ramification group order {e} does not divide |G| = {g}")));
        }
        let pt = e / d.n as i128;
        rhs += (g / e) * (e - 1 + pt - 1);
    }
    if rhs % 2 != 0 || rhs < -2 {
        return Err(Error::NonIntegralGenus(format!("2g - 2 = {rhs}")));
    }
    Ok(((rhs + 2) / 2) as u64)
}

/// The value stated for an exceptional case, computed case by case.
pub fn exceptional_case_value(data: &CurveQuotientData, case: ExceptionalCase) -> Result<i64> {
    let p = data.p;
    Ok(match case {
        ExceptionalCase::CharTwoTwoPoints => local_hull_dim(p, &data.branch[0])? + local_hull_dim(p, &data.branch[1])?,
        ExceptionalCase::TameTwoPoints => 0,
        ExceptionalCase::WildOnePoint => local_hull_dim(p, &data.branch[0])?,
        ExceptionalCase::EllipticUnramified => 1,
    })
}
