//! Truncated Chebyshev matrices and their identities.
//!
//! `M^[N]_{alpha,beta}(u)` has entries
//!
//! ```text
//! A = sum_{k<=N}  binom(u+k-1, 2k)   alpha^k
//! C = sum_{k<N}   binom(u+k,   2k+1) alpha^k
//! D = sum_{k<=N}  binom(u+k,   2k)   alpha^k
//! M = [[A, alpha C], [C + beta(u), D]]
//! ```
//!
//! All functions are generic over the coefficient ring, so the same code runs
//! over `Q[u, v, alpha]`, over `F_p`, and over hull rings.

use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Rationals, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Clone> Mat2<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity<R: Ring<Elem = E>>(r: &R) -> Self {
        Mat2::new(r.one(), r.zero(), r.zero(), r.one())
    }

    pub fn mul<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        let dot = |x: &E, y: &E, z: &E, w: &E| r.add(&r.mul(x, y), &r.mul(z, w));
        Mat2::new(
            dot(&self.a, &o.a, &self.b, &o.c),
            dot(&self.a, &o.b, &self.b, &o.d),
            dot(&self.c, &o.a, &self.d, &o.c),
            dot(&self.c, &o.b, &self.d, &o.d),
        )
    }

    pub fn sub<R: Ring<Elem = E>>(&self, r: &R, o: &Self) -> Self {
        Mat2::new(r.sub(&self.a, &o.a), r.sub(&self.b, &o.b), r.sub(&self.c, &o.c), r.sub(&self.d, &o.d))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, r: &R, s: &E) -> Self {
        Mat2::new(r.mul(s, &self.a), r.mul(s, &self.b), r.mul(s, &self.c), r.mul(s, &self.d))
    }

    pub fn det<R: Ring<Elem = E>>(&self, r: &R) -> E {
        r.sub(&r.mul(&self.a, &self.d), &r.mul(&self.b, &self.c))
    }

    pub fn is_zero<R: Ring<Elem = E>>(&self, r: &R) -> bool {
        r.is_zero(&self.a) && r.is_zero(&self.b) && r.is_zero(&self.c) && r.is_zero(&self.d)
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> T) -> Mat2<T> {
        Mat2 { a: f(&self.a), b: f(&self.b), c: f(&self.c), d: f(&self.d) }
    }

    pub fn entries(&self) -> [&E; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

/// `prod_{j < choose} (u + shift - j) / choose!`.
pub fn binomial_poly<R: Ring>(r: &R, u: &R::Elem, shift: i64, choose: u32) -> Result<R::Elem> {
    let mut acc = r.one();
    for j in 0..choose as i64 {
        let factor = r.add(u, &r.from_int(shift - j));
        let inv =
            r.inv_int(j + 1).ok_or(Error::DenominatorNotInvertible { choose, characteristic: r.characteristic() })?;
        acc = r.mul(&r.mul(&acc, &factor), &inv);
    }
    Ok(acc)
}

/// A truncated Chebyshev matrix with its `C` entry kept separately from `beta`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebMatrix<E> {
    pub m: Mat2<E>,
    pub c_entry: E,
    pub order: usize,
}

impl<E: Clone + PartialEq> ChebMatrix<E> {
    /// `B = alpha C` and `A + B = D`.
    pub fn entry_relations_hold<R: Ring<Elem = E>>(&self, r: &R, alpha: &E) -> bool {
        let m = &self.m;
        m.b == r.mul(alpha, &self.c_entry) && r.add(&m.a, &m.b) == m.d
    }
}

pub fn cheb_matrix<R: Ring>(
    r: &R,
    n: usize,
    u: &R::Elem,
    alpha: &R::Elem,
    beta: &R::Elem,
) -> Result<ChebMatrix<R::Elem>> {
    let ch = r.characteristic();
    if ch != 0 && 2 * n as u64 > ch - 1 {
        return Err(Error::DenominatorNotInvertible { choose: 2 * n as u32, characteristic: ch });
    }
    let mut a = r.zero();
    let mut c = r.zero();
    let mut d = r.zero();
    let mut pw = r.one();
    for k in 0..=n {
        let kk = k as i64;
        a = r.add(&a, &r.mul(&binomial_poly(r, u, kk - 1, 2 * k as u32)?, &pw));
        d = r.add(&d, &r.mul(&binomial_poly(r, u, kk, 2 * k as u32)?, &pw));
        if k < n {
            c = r.add(&c, &r.mul(&binomial_poly(r, u, kk, 2 * k as u32 + 1)?, &pw));
        }
        pw = r.mul(&pw, alpha);
    }
    let b = r.mul(alpha, &c);
    let lower = r.add(&c, beta);
    Ok(ChebMatrix { m: Mat2::new(a, b, lower, d), c_entry: c, order: n })
}

/// The coefficient of `alpha^N` in the lower-left entry of `M(u) M(v)`, as the
/// displayed double sum of binomials.
pub fn obstruction_coefficient<R: Ring>(r: &R, n: usize, u: &R::Elem, v: &R::Elem) -> Result<R::Elem> {
    let mut acc = r.zero();
    let n = n as i64;
    for k in 0..n {
        let choose_odd = (2 * k + 1) as u32;
        let choose_even = (2 * (n - k)) as u32;
        let t1 = r.mul(&binomial_poly(r, u, k, choose_odd)?, &binomial_poly(r, v, n - k - 1, choose_even)?);
        let t2 = r.mul(&binomial_poly(r, v, k, choose_odd)?, &binomial_poly(r, u, n - k, choose_even)?);
        acc = r.add(&acc, &r.add(&t1, &t2));
    }
    Ok(acc)
}

/// The same coefficient read off a full symbolic expansion of `M(u) M(v)` over
/// `Q[alpha]` at integer `u`, `v`.
pub fn obstruction_by_expansion(n: usize, u: i64, v: i64) -> BigRational {
    let q = PolyRing::new(Rationals, &["alpha"]);
    let alpha = q.var(0);
    let zero = q.zero();
    let mu = cheb_matrix(&q, n, &q.from_int(u), &alpha, &zero).expect("characteristic 0");
    let mv = cheb_matrix(&q, n, &q.from_int(v), &alpha, &zero).expect("characteristic 0");
    let prod = mu.m.mul(&q, &mv.m);
    q.coeff(&prod.c, &[n as u16])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebIdentityReport {
    pub order: usize,
    pub characteristic: u64,
    pub entry_relations: bool,
    pub commutation: bool,
    pub homomorphism_mod_alpha_n: bool,
    pub det_mod_alpha_n1: bool,
    pub obstruction_matches_expansion: bool,
    /// With independent symbols `beta(u)`, `beta(v)`, commutation must fail.
    pub generic_beta_commutes: bool,
    /// The generic-beta commutator equals `alpha (beta(v) C(u) - beta(u) C(v)) [[1, 0], [1, -1]]`.
    pub generic_beta_residual_matches: bool,
}

impl ChebIdentityReport {
    pub fn all_pass(&self) -> bool {
        self.entry_relations
            && self.commutation
            && self.homomorphism_mod_alpha_n
            && self.det_mod_alpha_n1
            && self.obstruction_matches_expansion
            && !self.generic_beta_commutes
            && self.generic_beta_residual_matches
    }
}

fn identity_report<F: Field + Clone>(field: F, n: usize) -> Result<ChebIdentityReport> {
    let r = PolyRing::new(field, &["u", "v", "alpha", "bu", "bv"]);
    let (u, v, alpha, bu, bv) = (r.var(0), r.var(1), r.var(2), r.var(3), r.var(4));
    let zero = r.zero();
    let mu = cheb_matrix(&r, n, &u, &alpha, &zero)?;
    let mv = cheb_matrix(&r, n, &v, &alpha, &zero)?;
    let muv = cheb_matrix(&r, n, &r.add(&u, &v), &alpha, &zero)?;

    let entry_relations = [&mu, &mv, &muv].iter().all(|m| m.entry_relations_hold(&r, &alpha));
    let uv = mu.m.mul(&r, &mv.m);
    let vu = mv.m.mul(&r, &mu.m);
    let commutation = uv == vu;
    let diff = uv.sub(&r, &muv.m);
    let homomorphism_mod_alpha_n = diff.map(|e| r.truncate_var(e, 2, n as u16)).is_zero(&r);
    let det_diff = r.sub(&mu.m.det(&r), &r.one());
    let det_mod_alpha_n1 = r.truncate_var(&det_diff, 2, n as u16 + 1).is_zero();

    let expanded = r.coeff_in_var(&diff.c, 2, n as u16);
    let obstruction_matches_expansion = expanded == obstruction_coefficient(&r, n, &u, &v)?;

    let gu = cheb_matrix(&r, n, &u, &alpha, &bu)?;
    let gv = cheb_matrix(&r, n, &v, &alpha, &bv)?;
    let comm = gu.m.mul(&r, &gv.m).sub(&r, &gv.m.mul(&r, &gu.m));
    let generic_beta_commutes = comm.is_zero(&r);
    let rho = r.mul(&alpha, &r.sub(&r.mul(&bv, &mu.c_entry), &r.mul(&bu, &mv.c_entry)));
    let expected = Mat2::new(rho.clone(), r.zero(), rho.clone(), r.neg(&rho));
    let generic_beta_residual_matches = comm == expected;

    Ok(ChebIdentityReport {
        order: n,
        characteristic: r.characteristic(),
        entry_relations,
        commutation,
        homomorphism_mod_alpha_n,
        det_mod_alpha_n1,
        obstruction_matches_expansion,
        generic_beta_commutes,
        generic_beta_residual_matches,
    })
}

/// Checks the identities as exact polynomial identities over `Q[u, v, alpha]`.
pub fn verify_cheb_identities(n: usize) -> ChebIdentityReport {
    identity_report(Rationals, n).expect("characteristic 0 has no denominator obstruction")
}

/// The same identities over `F_p[u, v, alpha]`, requiring `2N <= p - 1`.
pub fn verify_cheb_identities_mod_p(n: usize, p: u64) -> Result<ChebIdentityReport> {
    identity_report(crate::field::make_field(p, 1)?, n)
}

/// Chebyshev polynomials of the second kind `S_{-1}, S_0, ..., S_max` over `Q[x]`.
pub fn chebyshev_s(r: &PolyRing<Rationals>, max: usize) -> Vec<Poly<BigRational>> {
    let x2 = r.scale(&r.var(0), &r.field().from_int(2));
    let mut s = Vec::with_capacity(max + 2);
    s.push(r.zero());
    s.push(r.one());
    for m in 1..=max {
        let next = r.sub(&r.mul(&x2, &s[m]), &s[m - 1]);
        s.push(next);
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigReport {
    pub checked: usize,
    pub identity_i: bool,
    pub identity_ii: bool,
    pub identity_iii: bool,
    /// `(identity, u, v)` for the first failure.
    pub first_failure: Option<(u8, usize, usize)>,
}

impl TrigReport {
    pub fn all_pass(&self) -> bool {
        self.identity_i && self.identity_ii && self.identity_iii
    }
}

pub fn verify_trig_identities(max_u: usize, max_v: usize) -> TrigReport {
    let r = PolyRing::new(Rationals, &["x"]);
    let table = chebyshev_s(&r, max_u + max_v + 1);
    let s = |m: i64| &table[(m + 1) as usize];
    let x2 = r.scale(&r.var(0), &r.field().from_int(2));
    let mut rep =
        TrigReport { checked: 0, identity_i: true, identity_ii: true, identity_iii: true, first_failure: None };
    let fail = |rep: &mut TrigReport, id: u8, u: usize, v: usize| {
        match id {
            1 => rep.identity_i = false,
            2 => rep.identity_ii = false,
            _ => rep.identity_iii = false,
        }
        rep.first_failure.get_or_insert((id, u, v));
    };
    for u in 0..=max_u {
        let ui = u as i64;
        for v in 0..=max_v {
            let vi = v as i64;
            let lhs = r.add(s(ui + vi), &r.mul(s(ui - 1), s(vi - 1)));
            if lhs != r.mul(s(ui), s(vi)) {
                fail(&mut rep, 1, u, v);
            }
            let lhs = r.add(s(ui + vi - 1), &r.mul(&x2, &r.mul(s(ui - 1), s(vi - 1))));
            let rhs = r.add(&r.mul(s(ui - 1), s(vi)), &r.mul(s(ui), s(vi - 1)));
            if lhs != rhs {
                fail(&mut rep, 2, u, v);
            }
            rep.checked += 2;
        }
        let su = s(ui);
        let sm = s(ui - 1);
        let val = r.add(&r.sub(&r.mul(su, su), &r.mul(&x2, &r.mul(su, sm))), &r.mul(sm, sm));
        if val != r.one() {
            fail(&mut rep, 3, u, 0);
        }
        rep.checked += 1;
    }
    rep
}
