//! First cohomology of a local ordinary action with values in `M = k + kx + kx^2`.
//!
//! The group is `G = V x| <tau>` where `V` is a `t`-dimensional `F_p`-subspace of
//! `k` acting by `x -> x/(1-ux)` and `tau` acts by `x -> zeta x`. The action of
//! `u` on `M` (coordinates `(a0, a1, a2)` in the basis `1, x, x^2`) is the lower
//! triangular matrix `Phi(u)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{checked_pow, gcd, lcm, s_of_n};
use crate::error::{Error, Result};
use crate::field::{element_of_order, make_field, ExtField, FieldElement};
use crate::matrix::Matrix;
use crate::ring::{Field, Ring};

const NOT_IN_V: u32 = u32::MAX;

struct SpecData {
    p: u32,
    t: u32,
    n: u64,
    s: u32,
    field: ExtField,
    v_basis: Vec<FieldElement>,
    zeta: FieldElement,
    v_elems: Vec<FieldElement>,
    v_pos: Vec<u32>,
}

/// Local data at one branch point: `(p, t, n)`, the coefficient field, a basis of
/// `V`, and the root of unity `zeta`.
#[derive(Clone)]
pub struct LocalActionSpec {
    d: Arc<SpecData>,
}

impl core::fmt::Debug for LocalActionSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("LocalActionSpec")
            .field("p", &self.d.p)
            .field("t", &self.d.t)
            .field("n", &self.d.n)
            .field("s", &self.d.s)
            .field("m", &self.d.field.degree())
            .finish()
    }
}

impl PartialEq for LocalActionSpec {
    fn eq(&self, other: &Self) -> bool {
        self.d.field == other.d.field
            && self.d.n == other.d.n
            && self.d.v_basis == other.d.v_basis
            && self.d.zeta == other.d.zeta
    }
}

impl LocalActionSpec {
    /// The default spec: `k = F_{p^{lcm(t, s)}}`, `V` the copy of `F_{p^t}` in `k`
    /// with its power basis, and `zeta` the first element of order `n`.
    pub fn new(p: u64, t: u32, n: u64) -> Result<Self> {
        if n == 0 || gcd(n, p) != 1 {
            return Err(Error::NotCoprime { n, p });
        }
        let s = s_of_n(p, n)?;
        if t > 0 && n > 1 {
            let q = checked_pow(p, t).ok_or(Error::FieldTooLarge { p, m: t, cap: crate::field::FIELD_CAP })?;
            if (q - 1) % n != 0 {
                return Err(Error::RamificationConstraint { p, t, n });
            }
        }
        let m = if t > 0 { lcm(t as u64, s as u64) as u32 } else { s };
        let field = make_field(p, m)?;
        let v_basis = if t == 0 {
            Vec::new()
        } else {
            let small = make_field(p, t)?;
            let emb = field.embedding_from(&small)?;
            let x = small.x();
            (0..t).map(|i| emb[small.pow(&x, i as u64).index() as usize]).collect()
        };
        let zeta = element_of_order(&field, n)?;
        Self::with_basis(field, v_basis, n, zeta)
    }

    /// A spec with an explicit basis of `V` and root of unity.
    pub fn with_basis(field: ExtField, v_basis: Vec<FieldElement>, n: u64, zeta: FieldElement) -> Result<Self> {
        let p = field.p();
        let t = v_basis.len() as u32;
        if n == 0 || gcd(n, p as u64) != 1 {
            return Err(Error::NotCoprime { n, p: p as u64 });
        }
        let s = s_of_n(p as u64, n)?;
        if field.mult_order(zeta) != Some(n) {
            return Err(Error::InvalidSpec(format!("zeta does not have order {n}")));
        }
        if t > 0 && n > 1 {
            let q = checked_pow(p as u64, t).unwrap_or(u64::MAX);
            if !(q - 1).is_multiple_of(n) {
                return Err(Error::RamificationConstraint { p: p as u64, t, n });
            }
        }
        let size = checked_pow(p as u64, t)
            .filter(|&q| q <= field.order() as u64)
            .ok_or_else(|| Error::InvalidSpec("V is larger than k".into()))? as usize;

        let mut v_elems = Vec::with_capacity(size);
        v_elems.push(field.zero());
        let mut weight = 1usize;
        for &u in &v_basis {
            for c in 1..p {
                let cu = field.scale_int(&u, c as i64);
                for j in 0..weight {
                    let e = field.add(&v_elems[j], &cu);
                    v_elems.push(e);
                }
            }
            weight *= p as usize;
        }
        let mut v_pos = vec![NOT_IN_V; field.order() as usize];
        for (i, e) in v_elems.iter().enumerate() {
            if v_pos[e.index() as usize] != NOT_IN_V {
                return Err(Error::InvalidSpec("basis of V is not F_p-independent".into()));
            }
            v_pos[e.index() as usize] = i as u32;
        }
        if n > 1 {
            for &u in &v_basis {
                if v_pos[field.mul(&zeta, &u).index() as usize] == NOT_IN_V {
                    return Err(Error::InvalidSpec("V is not stable under zeta".into()));
                }
            }
        }
        Ok(LocalActionSpec { d: Arc::new(SpecData { p, t, n, s, field, v_basis, zeta, v_elems, v_pos }) })
    }

    pub fn p(&self) -> u32 {
        self.d.p
    }
    pub fn t(&self) -> u32 {
        self.d.t
    }
    pub fn n(&self) -> u64 {
        self.d.n
    }
    pub fn s(&self) -> u32 {
        self.d.s
    }
    pub fn field(&self) -> &ExtField {
        &self.d.field
    }
    pub fn v_basis(&self) -> &[FieldElement] {
        &self.d.v_basis
    }
    pub fn zeta(&self) -> FieldElement {
        self.d.zeta
    }

    /// Elements of `V`; position `i` has `F_p`-coordinates given by the base-`p`
    /// digits of `i` with respect to `v_basis`.
    pub fn v_elements(&self) -> &[FieldElement] {
        &self.d.v_elems
    }

    pub fn v_size(&self) -> usize {
        self.d.v_elems.len()
    }

    pub fn position(&self, u: FieldElement) -> Option<usize> {
        match self.d.v_pos.get(u.index() as usize) {
            Some(&i) if i != NOT_IN_V => Some(i as usize),
            _ => None,
        }
    }

    pub fn contains(&self, u: FieldElement) -> bool {
        self.position(u).is_some()
    }

    /// `F_p`-coordinates of `u` in `v_basis`.
    pub fn coords(&self, u: FieldElement) -> Result<Vec<u32>> {
        let mut i = self.position(u).ok_or(Error::OutsideVectorGroup)? as u32;
        let p = self.d.p;
        Ok((0..self.d.t)
            .map(|_| {
                let c = i % p;
                i /= p;
                c
            })
            .collect())
    }

    /// Action of `tau^{-1}` on `M`.
    fn tau_inv_on_m(&self, m: &MElement) -> MElement {
        let f = &self.d.field;
        let z = self.d.zeta;
        let zi = f.inv(&z).expect("zeta is a unit");
        MElement::new(f.mul(&z, &m.a0), m.a1, f.mul(&zi, &m.a2))
    }
}

/// An element `a0 + a1 x + a2 x^2` of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MElement {
    pub a0: FieldElement,
    pub a1: FieldElement,
    pub a2: FieldElement,
}

impl MElement {
    pub fn new(a0: FieldElement, a1: FieldElement, a2: FieldElement) -> Self {
        MElement { a0, a1, a2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn as_array(&self) -> [FieldElement; 3] {
        [self.a0, self.a1, self.a2]
    }

    pub fn from_slice(v: &[FieldElement]) -> Self {
        MElement::new(v[0], v[1], v[2])
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    pub fn add(&self, f: &ExtField, o: &Self) -> Self {
        MElement::new(f.add(&self.a0, &o.a0), f.add(&self.a1, &o.a1), f.add(&self.a2, &o.a2))
    }

    pub fn sub(&self, f: &ExtField, o: &Self) -> Self {
        MElement::new(f.sub(&self.a0, &o.a0), f.sub(&self.a1, &o.a1), f.sub(&self.a2, &o.a2))
    }

    pub fn scale(&self, f: &ExtField, c: &FieldElement) -> Self {
        MElement::new(f.mul(c, &self.a0), f.mul(c, &self.a1), f.mul(c, &self.a2))
    }
}

/// `Phi(u) m` without checking `u` against `V`.
pub fn phi_apply(f: &ExtField, u: &FieldElement, m: &MElement) -> MElement {
    let two_u = f.scale_int(u, 2);
    let a1 = f.sub(&m.a1, &f.mul(&two_u, &m.a0));
    let a2 = f.add(&f.sub(&f.mul(&f.mul(u, u), &m.a0), &f.mul(u, &m.a1)), &m.a2);
    MElement::new(m.a0, a1, a2)
}

fn phi_raw(f: &ExtField, u: &FieldElement) -> Matrix<FieldElement> {
    let (zero, one) = (f.zero(), f.one());
    Matrix::from_rows(
        vec![vec![one, zero, zero], vec![f.neg(&f.scale_int(u, 2)), one, zero], vec![f.mul(u, u), f.neg(u), one]],
        3,
    )
}

/// The matrix of `u` acting on `M` in the basis `1, x, x^2`.
pub fn phi_matrix(spec: &LocalActionSpec, u: FieldElement) -> Result<Matrix<FieldElement>> {
    if !spec.contains(u) {
        return Err(Error::OutsideVectorGroup);
    }
    Ok(phi_raw(spec.field(), &u))
}

/// A map `V -> M` stored as a full table in `V`-position order.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    spec: LocalActionSpec,
    table: Vec<MElement>,
}

impl Cocycle {
    pub fn zero(spec: &LocalActionSpec) -> Self {
        Cocycle { spec: spec.clone(), table: vec![MElement::zero(); spec.v_size()] }
    }

    /// Tabulate an arbitrary map; the result need not satisfy the cocycle identity.
    pub fn from_fn(spec: &LocalActionSpec, mut f: impl FnMut(FieldElement) -> MElement) -> Self {
        let table = spec.v_elements().iter().map(|&u| f(u)).collect();
        Cocycle { spec: spec.clone(), table }
    }

    /// Extend values on `v_basis` by `d(u_i + w) = d(u_i) + Phi(u_i) d(w)`.
    pub fn from_generators(spec: &LocalActionSpec, gens: &[MElement]) -> Self {
        assert_eq!(gens.len(), spec.t() as usize);
        let f = spec.field();
        let p = spec.p() as usize;
        let mut table = vec![MElement::zero(); spec.v_size()];
        for idx in 1..table.len() {
            let (mut i, mut w) = (0usize, 1usize);
            while (idx / w) % p == 0 {
                i += 1;
                w *= p;
            }
            let rest = table[idx - w];
            let ui = spec.v_basis()[i];
            table[idx] = gens[i].add(f, &phi_apply(f, &ui, &rest));
        }
        Cocycle { spec: spec.clone(), table }
    }

    /// `u -> Phi(u) g - g`.
    pub fn coboundary_of(spec: &LocalActionSpec, g: &MElement) -> Self {
        let f = spec.field().clone();
        Self::from_fn(spec, |u| phi_apply(&f, &u, g).sub(&f, g))
    }

    pub fn spec(&self) -> &LocalActionSpec {
        &self.spec
    }

    pub fn table(&self) -> &[MElement] {
        &self.table
    }

    pub fn value(&self, u: FieldElement) -> Result<MElement> {
        self.spec.position(u).map(|i| self.table[i]).ok_or(Error::OutsideVectorGroup)
    }

    pub fn generator_values(&self) -> Vec<MElement> {
        self.spec.v_basis().iter().map(|&u| self.value(u).unwrap()).collect()
    }

    /// Checks `d(0) = 0` and `d(u+v) = d(u) + Phi(u) d(v)` for every pair.
    pub fn is_cocycle(&self) -> bool {
        self.first_failure().is_none()
    }

    /// The first pair `(u, v)` violating the cocycle identity, if any.
    pub fn first_failure(&self) -> Option<(FieldElement, FieldElement)> {
        let f = self.spec.field();
        let els = self.spec.v_elements();
        if !self.table[0].is_zero() {
            return Some((f.zero(), f.zero()));
        }
        for (i, &u) in els.iter().enumerate() {
            for (j, &v) in els.iter().enumerate() {
                let w = self.spec.position(f.add(&u, &v)).expect("V is a group");
                let rhs = self.table[i].add(f, &phi_apply(f, &u, &self.table[j]));
                if self.table[w] != rhs {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.spec.field();
        let table = self.table.iter().zip(&o.table).map(|(a, b)| a.add(f, b)).collect();
        Cocycle { spec: self.spec.clone(), table }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = self.spec.field();
        let table = self.table.iter().zip(&o.table).map(|(a, b)| a.sub(f, b)).collect();
        Cocycle { spec: self.spec.clone(), table }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = self.spec.field();
        let table = self.table.iter().map(|a| a.scale(f, c)).collect();
        Cocycle { spec: self.spec.clone(), table }
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(MElement::is_zero)
    }

    /// All table entries concatenated, `3 |V|` coordinates.
    pub fn to_vector(&self) -> Vec<FieldElement> {
        self.table.iter().flat_map(|m| m.as_array()).collect()
    }

    /// Restriction to the subgroup described by `sub`, which must share the field.
    pub fn restrict(&self, sub: &LocalActionSpec) -> Result<Cocycle> {
        if sub.field() != self.spec.field() {
            return Err(Error::InvalidSpec("restriction requires a common field".into()));
        }
        let table = sub.v_elements().iter().map(|&u| self.value(u)).collect::<Result<Vec<_>>>()?;
        Ok(Cocycle { spec: sub.clone(), table })
    }
}

fn stacked_relations(spec: &LocalActionSpec) -> Matrix<FieldElement> {
    let f = spec.field();
    let t = spec.t() as usize;
    let p = spec.p() as i64;
    let basis = spec.v_basis();
    let mut rel = Matrix::zero(f, 0, 3 * t);
    let put = |row: &mut Vec<FieldElement>, blk: usize, m: &Matrix<FieldElement>, r: usize, sign: bool| {
        for c in 0..3 {
            let v = if sign { f.neg(m.get(r, c)) } else { *m.get(r, c) };
            row[3 * blk + c] = f.add(&row[3 * blk + c], &v);
        }
    };
    for (i, ui) in basis.iter().enumerate() {
        let mut sum = Matrix::zero(f, 3, 3);
        for j in 0..p {
            sum = sum.add(f, &phi_raw(f, &f.scale_int(ui, j)));
        }
        for r in 0..3 {
            let mut row = vec![f.zero(); 3 * t];
            put(&mut row, i, &sum, r, false);
            rel.push_row(row);
        }
    }
    let id = Matrix::identity(f, 3);
    for i in 0..t {
        for j in i + 1..t {
            let ai = id.sub(f, &phi_raw(f, &basis[j]));
            let aj = id.sub(f, &phi_raw(f, &basis[i]));
            for r in 0..3 {
                let mut row = vec![f.zero(); 3 * t];
                put(&mut row, i, &ai, r, false);
                put(&mut row, j, &aj, r, true);
                rel.push_row(row);
            }
        }
    }
    rel
}

/// A `k`-basis of `Z^1(V, M)`, each element tabulated over all of `V` and checked.
pub fn cocycle_space(spec: &LocalActionSpec) -> Result<Vec<Cocycle>> {
    if spec.t() == 0 {
        return Ok(Vec::new());
    }
    let f = spec.field();
    let kernel = stacked_relations(spec).kernel_basis(f);
    kernel
        .iter()
        .map(|v| {
            let gens: Vec<MElement> = v.chunks(3).map(MElement::from_slice).collect();
            let c = Cocycle::from_generators(spec, &gens);
            if c.is_cocycle() {
                Ok(c)
            } else {
                Err(Error::NotACocycle)
            }
        })
        .collect()
}

fn coboundary_generator_matrix(spec: &LocalActionSpec) -> Matrix<FieldElement> {
    let f = spec.field();
    let id = Matrix::identity(f, 3);
    let mut m = Matrix::zero(f, 0, 3);
    for u in spec.v_basis() {
        let blk = phi_raw(f, u).sub(f, &id);
        for r in 0..3 {
            m.push_row(blk.row(r).to_vec());
        }
    }
    m
}

/// A `k`-basis of `B^1(V, M)`.
pub fn coboundary_space(spec: &LocalActionSpec) -> Vec<Cocycle> {
    let f = spec.field();
    let mut out: Vec<Cocycle> = Vec::new();
    let mut rows: Vec<Vec<FieldElement>> = Vec::new();
    let len = 3 * spec.v_size();
    for k in 0..3 {
        let mut g = [f.zero(); 3];
        g[k] = f.one();
        let c = Cocycle::coboundary_of(spec, &MElement::from_slice(&g));
        rows.push(c.to_vector());
        if crate::matrix::span_rank(f, &rows, len) > out.len() {
            out.push(c);
        } else {
            rows.pop();
        }
    }
    out
}

/// The distinguished cocycle `d0` (closed formula for `p >= 5`, basis values
/// `u_i - u_i^2 x` extended by the cocycle identity for `p = 2`).
pub fn d0_cocycle(spec: &LocalActionSpec) -> Result<Cocycle> {
    let f = spec.field().clone();
    match spec.p() {
        3 => Err(Error::ClassUndefined),
        2 => {
            let gens: Vec<MElement> =
                spec.v_basis().iter().map(|u| MElement::new(*u, f.neg(&f.mul(u, u)), f.zero())).collect();
            let c = Cocycle::from_generators(spec, &gens);
            if c.is_cocycle() {
                Ok(c)
            } else {
                Err(Error::NotACocycle)
            }
        }
        _ => {
            let third = f.inv_int(3).unwrap();
            let half = f.inv_int(2).unwrap();
            let sixth = f.inv_int(6).unwrap();
            Ok(Cocycle::from_fn(spec, |u| {
                let u2 = f.mul(&u, &u);
                let u3 = f.mul(&u2, &u);
                let a2 = f.add(&f.add(&f.mul(&third, &u3), &f.mul(&half, &u2)), &f.mul(&sixth, &u));
                MElement::new(f.neg(&u), f.add(&u2, &u), f.neg(&a2))
            }))
        }
    }
}

/// If `c` is a coboundary, some `g` with `c(u) = Phi(u) g - g` for all `u`.
pub fn is_coboundary(spec: &LocalActionSpec, c: &Cocycle) -> Result<Option<MElement>> {
    if !c.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    let f = spec.field();
    let a = coboundary_generator_matrix(spec);
    let rhs: Vec<FieldElement> = c.generator_values().iter().flat_map(|m| m.as_array()).collect();
    let Some(g) = a.solve(f, &rhs) else {
        return Ok(None);
    };
    let g = if g.is_empty() { MElement::zero() } else { MElement::from_slice(&g) };
    if Cocycle::coboundary_of(spec, &g) == *c {
        Ok(Some(g))
    } else {
        Err(Error::NotACocycle)
    }
}

/// `c^tau(u) = tau^{-1} . c(zeta u)`.
pub fn tau_on_cocycle(spec: &LocalActionSpec, c: &Cocycle) -> Result<Cocycle> {
    if spec.n() == 1 {
        return Err(Error::RequiresTamePart);
    }
    let f = spec.field().clone();
    let z = spec.zeta();
    let mut out = Vec::with_capacity(spec.v_size());
    for &u in spec.v_elements() {
        let zu = f.mul(&z, &u);
        out.push(spec.tau_inv_on_m(&c.value(zu)?));
    }
    Ok(Cocycle { spec: spec.clone(), table: out })
}

/// Dimensions of cocycles, coboundaries and first cohomology over `k`.
///
/// For `n > 1` the `dim_z1` field counts cocycles whose class is `tau`-invariant,
/// so that `dim_h1 = dim_z1 - dim_b1` is the dimension of `H^1(G, M)`; the
/// cohomology of `V` alone is reported in `dim_h1_normal`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub p: u32,
    pub t: u32,
    pub n: u64,
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
    pub dim_h1_normal: usize,
    pub dim_h1_invariants: Option<usize>,
    pub d0_nontrivial: bool,
}

fn invariant_dimension(spec: &LocalActionSpec, z: &[Cocycle], b: &[Cocycle]) -> Result<usize> {
    let f = spec.field();
    let len = 3 * spec.v_size();
    let mut cols: Vec<Vec<FieldElement>> = Vec::with_capacity(z.len() + b.len());
    for c in z {
        cols.push(tau_on_cocycle(spec, c)?.sub(c).to_vector());
    }
    for c in b {
        cols.push(c.scale(&f.neg(&f.one())).to_vector());
    }
    if cols.is_empty() {
        return Ok(0);
    }
    let rows = (0..len).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let m = Matrix::from_rows(rows, cols.len());
    let ker = m.kernel_basis(f);
    let proj: Vec<Vec<FieldElement>> = ker.iter().map(|v| v[..z.len()].to_vec()).collect();
    Ok(crate::matrix::span_rank(f, &proj, z.len()))
}

/// Whether `c` represents a `tau`-invariant class.
pub fn is_invariant_class(spec: &LocalActionSpec, c: &Cocycle) -> Result<bool> {
    if spec.n() == 1 {
        return Ok(true);
    }
    let diff = tau_on_cocycle(spec, c)?.sub(c);
    Ok(is_coboundary(spec, &diff)?.is_some())
}

pub fn h1_local(spec: &LocalActionSpec) -> Result<CohomologyReport> {
    let (p, t, n) = (spec.p(), spec.t(), spec.n());
    if t == 0 {
        return Ok(CohomologyReport {
            p,
            t,
            n,
            dim_z1: 0,
            dim_b1: 0,
            dim_h1: 0,
            dim_h1_normal: 0,
            dim_h1_invariants: (n > 1).then_some(0),
            d0_nontrivial: false,
        });
    }
    let z = cocycle_space(spec)?;
    let b = coboundary_space(spec);
    let dim_h1_normal = z.len() - b.len();
    let dim_z1 = if n > 1 { invariant_dimension(spec, &z, &b)? } else { z.len() };
    let dim_h1 = dim_z1 - b.len();
    let d0_nontrivial = match d0_cocycle(spec) {
        Ok(d0) => is_coboundary(spec, &d0)?.is_none() && is_invariant_class(spec, &d0)?,
        Err(Error::ClassUndefined) => false,
        Err(e) => return Err(e),
    };
    Ok(CohomologyReport {
        p,
        t,
        n,
        dim_z1,
        dim_b1: b.len(),
        dim_h1,
        dim_h1_normal,
        dim_h1_invariants: (n > 1).then_some(dim_h1),
        d0_nontrivial,
    })
}

/// Closed-form value of `dim H^1(G, T_O)` for ordinary local data.
pub fn h1_closed_form(p: u32, t: u32, n: u64) -> Result<usize> {
    if t == 0 {
        return Ok(0);
    }
    let t = t as usize;
    if n == 1 {
        return Ok(match p {
            3 => t - 1,
            2 if t == 1 => 1,
            2 => t - 1,
            _ => t,
        });
    }
    if n == 2 && p != 2 && p != 3 {
        return Ok(t);
    }
    let s = s_of_n(p as u64, n)? as usize;
    Ok(t / s - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, t: u32, n: u64) -> LocalActionSpec {
        LocalActionSpec::new(p, t, n).unwrap()
    }

    #[test]
    fn phi_examples() {
        let s = spec(5, 1, 1);
        let f = s.field();
        assert_eq!(phi_matrix(&s, f.zero()).unwrap(), Matrix::identity(f, 3));
        let e = |x| f.from_int(x);
        let expect = Matrix::from_rows(vec![vec![e(1), e(0), e(0)], vec![e(3), e(1), e(0)], vec![e(1), e(4), e(1)]], 3);
        assert_eq!(phi_matrix(&s, f.one()).unwrap(), expect);
    }

    #[test]
    fn phi_is_a_homomorphism_on_v() {
        let s = spec(3, 2, 1);
        let f = s.field();
        for &u in s.v_elements() {
            for &v in s.v_elements() {
                let lhs = phi_matrix(&s, u).unwrap().mul(f, &phi_matrix(&s, v).unwrap());
                assert_eq!(lhs, phi_matrix(&s, f.add(&u, &v)).unwrap());
            }
        }
    }

    #[test]
    fn phi_rejects_outside_v() {
        let s =
            LocalActionSpec::with_basis(make_field(5, 2).unwrap(), vec![], 1, make_field(5, 2).unwrap().one()).unwrap();
        assert_eq!(phi_matrix(&s, s.field().one()).unwrap_err(), Error::OutsideVectorGroup);
    }

    #[test]
    fn cocycle_space_dimensions() {
        assert_eq!(cocycle_space(&spec(5, 1, 1)).unwrap().len(), 3);
        assert_eq!(cocycle_space(&spec(3, 1, 1)).unwrap().len(), 2);
        assert_eq!(cocycle_space(&spec(2, 2, 1)).unwrap().len(), 3);
    }

    #[test]
    fn coboundary_space_dimensions() {
        assert_eq!(coboundary_space(&spec(5, 1, 1)).len(), 2);
        assert_eq!(coboundary_space(&spec(3, 2, 1)).len(), 2);
        assert_eq!(coboundary_space(&spec(2, 1, 1)).len(), 1);
    }

    #[test]
    fn d0_values() {
        let s = spec(5, 1, 1);
        let f = s.field();
        let d0 = d0_cocycle(&s).unwrap();
        let e = |x| f.from_int(x);
        assert_eq!(d0.value(f.one()).unwrap(), MElement::new(e(4), e(2), e(4)));
        assert!(d0.value(f.zero()).unwrap().is_zero());
        assert!(d0_cocycle(&spec(5, 2, 1)).unwrap().is_cocycle());
        assert_eq!(d0_cocycle(&spec(3, 1, 1)).unwrap_err(), Error::ClassUndefined);
        assert!(d0_cocycle(&spec(2, 3, 1)).unwrap().is_cocycle());
    }

    #[test]
    fn coboundary_membership() {
        let s = spec(5, 1, 1);
        let f = s.field();
        assert_eq!(is_coboundary(&s, &Cocycle::zero(&s)).unwrap(), Some(MElement::zero()));
        assert_eq!(is_coboundary(&s, &d0_cocycle(&s).unwrap()).unwrap(), None);
        let g = MElement::new(f.from_int(2), f.from_int(3), f.from_int(1));
        let c = Cocycle::coboundary_of(&s, &g);
        let w = is_coboundary(&s, &c).unwrap().unwrap();
        assert_eq!(Cocycle::coboundary_of(&s, &w), c);
    }

    #[test]
    fn non_cocycle_rejected() {
        let s = spec(5, 1, 1);
        let f = s.field().clone();
        let bad = Cocycle::from_fn(&s, |u| MElement::new(f.zero(), f.zero(), f.mul(&u, &u)));
        assert_eq!(is_coboundary(&s, &bad).unwrap_err(), Error::NotACocycle);
    }

    #[test]
    fn tau_scales_d0_by_zeta_squared() {
        let s = spec(5, 1, 4);
        let f = s.field();
        let d0 = d0_cocycle(&s).unwrap();
        assert!(tau_on_cocycle(&s, &Cocycle::zero(&s)).unwrap().is_zero());
        let z2 = f.mul(&s.zeta(), &s.zeta());
        let diff = tau_on_cocycle(&s, &d0).unwrap().sub(&d0.scale(&z2));
        assert!(is_coboundary(&s, &diff).unwrap().is_some());
        assert_eq!(tau_on_cocycle(&spec(5, 1, 1), &d0).unwrap_err(), Error::RequiresTamePart);
    }

    #[test]
    fn tau_fixes_fq_linear_top_coefficient() {
        let s = spec(5, 2, 4);
        let f = s.field().clone();
        let c = Cocycle::from_fn(&s, |u| MElement::new(f.zero(), f.zero(), f.mul(&f.x(), &u)));
        assert!(c.is_cocycle());
        assert_eq!(tau_on_cocycle(&s, &c).unwrap(), c);
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_local(&spec(5, 2, 1)).unwrap().dim_h1, 2);
        assert_eq!(h1_local(&spec(3, 2, 1)).unwrap().dim_h1, 1);
        assert_eq!(h1_local(&spec(5, 1, 2)).unwrap().dim_h1, 1);
        assert_eq!(h1_local(&spec(5, 1, 4)).unwrap().dim_h1, 0);
        assert_eq!(h1_local(&spec(7, 0, 3)).unwrap().dim_h1, 0);
    }

    #[test]
    fn d0_nontrivial_flags() {
        assert!(h1_local(&spec(5, 1, 1)).unwrap().d0_nontrivial);
        assert!(h1_local(&spec(5, 1, 2)).unwrap().d0_nontrivial);
        assert!(!h1_local(&spec(5, 1, 4)).unwrap().d0_nontrivial);
        assert!(!h1_local(&spec(3, 2, 1)).unwrap().d0_nontrivial);
        assert!(h1_local(&spec(2, 2, 1)).unwrap().d0_nontrivial);
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(LocalActionSpec::new(5, 1, 3), Err(Error::RamificationConstraint { .. })));
        assert!(matches!(LocalActionSpec::new(5, 1, 5), Err(Error::NotCoprime { .. })));
        let f = make_field(5, 2).unwrap();
        let one = f.one();
        let dup = LocalActionSpec::with_basis(f.clone(), vec![one, f.from_int(2)], 1, one);
        assert!(matches!(dup, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn small_grid_matches_closed_form() {
        for (p, t) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let q = p.pow(t);
            for n in crate::arith::divisors(q - 1) {
                let r = h1_local(&spec(p, t, n)).unwrap();
                assert_eq!(r.dim_h1, h1_closed_form(p as u32, t, n).unwrap(), "p={p} t={t} n={n}");
                assert_eq!(r.dim_h1, r.dim_z1 - r.dim_b1);
            }
        }
    }
}
