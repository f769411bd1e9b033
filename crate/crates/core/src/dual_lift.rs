//! First-order liftings of a local action over the dual numbers `k[eps]`.
//!
//! A cocycle `c : V -> M` gives the lift `x -> F_u + eps c_u(x) F_u'(x)` with
//! `F_u = x/(1-ux)`. Automorphisms act on `x`, and `rho_a . rho_b` sends `x` to
//! `P_b(P_a(x))`.

use alloc::format;
use alloc::vec::Vec;

use crate::cohomology::{is_coboundary, tau_on_cocycle, Cocycle, LocalActionSpec, MElement};
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::matrix::Matrix;
use crate::ring::{Field, Ring};
use crate::series::{DualSeries, TruncatedSeries};

pub const DEFAULT_CAP: usize = 8;

/// `x/(1-ux)` modulo `x^cap`.
pub fn base_action(spec: &LocalActionSpec, u: FieldElement, cap: usize) -> Result<TruncatedSeries> {
    if !spec.contains(u) {
        return Err(Error::OutsideVectorGroup);
    }
    Ok(base_series(spec.field(), u, cap))
}

fn base_series(f: &ExtField, u: FieldElement, cap: usize) -> TruncatedSeries {
    let mut c = Vec::with_capacity(cap);
    let mut pw = f.one();
    c.push(f.zero());
    for _ in 1..cap {
        c.push(pw);
        pw = f.mul(&pw, &u);
    }
    TruncatedSeries::from_coeffs(f, cap, &c)
}

fn m_series(f: &ExtField, cap: usize, m: &MElement) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(f, cap, &m.as_array())
}

/// `(1 - ux)^2`, the reciprocal of `F_u'`.
fn inv_derivative(f: &ExtField, u: FieldElement, cap: usize) -> TruncatedSeries {
    let c = [f.one(), f.neg(&f.scale_int(&u, 2)), f.mul(&u, &u)];
    TruncatedSeries::from_coeffs(f, cap, &c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftedAction {
    spec: LocalActionSpec,
    cap: usize,
    images: Vec<DualSeries>,
    tau: Option<DualSeries>,
}

impl LiftedAction {
    pub fn spec(&self) -> &LocalActionSpec {
        &self.spec
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn image(&self, u: FieldElement) -> Result<&DualSeries> {
        self.spec.position(u).map(|i| &self.images[i]).ok_or(Error::OutsideVectorGroup)
    }

    pub fn images(&self) -> &[DualSeries] {
        &self.images
    }

    pub fn tau_image(&self) -> Option<&DualSeries> {
        self.tau.as_ref()
    }

    /// Whether every image reduces modulo `eps` to the unlifted action.
    pub fn reduces_to_base(&self) -> bool {
        let f = self.spec.field();
        let base_ok =
            self.spec.v_elements().iter().zip(&self.images).all(|(u, img)| img.main == base_series(f, *u, self.cap));
        let tau_ok =
            self.tau.as_ref().is_none_or(|t| t.main == TruncatedSeries::monomial(f, self.cap, 1, self.spec.zeta()));
        base_ok && tau_ok
    }
}

/// The lift attached to an arbitrary map `c : V -> M`.
///
/// When `n > 1`, `tau` is lifted to `zeta x` with no `eps` part; the result is a
/// homomorphism on `G` exactly when `c` is a `tau`-invariant cocycle.
pub fn lift_from_cocycle(spec: &LocalActionSpec, c: &Cocycle, cap: usize) -> LiftedAction {
    let f = spec.field();
    let images = spec
        .v_elements()
        .iter()
        .zip(c.table())
        .map(|(&u, m)| {
            let fu = base_series(f, u, cap);
            let eps = m_series(f, cap, m).mul(&fu.derivative());
            DualSeries::new(fu, eps)
        })
        .collect();
    let tau = (spec.n() > 1).then(|| DualSeries::pure(TruncatedSeries::monomial(f, cap, 1, spec.zeta())));
    LiftedAction { spec: spec.clone(), cap, images, tau }
}

/// First pair `(u, v)` where `rho_u . rho_v != rho_{u+v}`, or a `tau` failure.
pub fn homomorphism_failure(action: &LiftedAction) -> Option<(FieldElement, FieldElement)> {
    let spec = &action.spec;
    let f = spec.field();
    let els = spec.v_elements();
    for (i, &u) in els.iter().enumerate() {
        for (j, &v) in els.iter().enumerate() {
            let w = spec.position(f.add(&u, &v)).expect("V is a group");
            let comp = action.images[j].compose(&action.images[i]);
            if comp != action.images[w] {
                return Some((u, v));
            }
        }
    }
    if let Some(tau) = &action.tau {
        let zi = f.inv(&spec.zeta()).expect("zeta is a unit");
        let tau_inv = DualSeries::pure(TruncatedSeries::monomial(f, action.cap, 1, zi));
        if tau_inv.compose(tau) != DualSeries::pure(TruncatedSeries::x(f, action.cap)) {
            return Some((spec.zeta(), spec.zeta()));
        }
        for (i, &u) in els.iter().enumerate() {
            let zu = f.mul(&spec.zeta(), &u);
            let Some(k) = spec.position(zu) else {
                return Some((spec.zeta(), u));
            };
            let conj = tau_inv.compose(&action.images[i].compose(tau));
            if conj != action.images[k] {
                return Some((spec.zeta(), u));
            }
        }
    }
    None
}

pub fn verify_homomorphism(action: &LiftedAction) -> bool {
    homomorphism_failure(action).is_none()
}

/// The `M`-valued cocycle read off a lift, with the `x^3 O` correction that was
/// removed before reading coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtractedCocycle {
    pub cocycle: Cocycle,
    /// Coefficients of `h = sum h_j x^{j+3}`; the subtracted coboundary is `u -> Ad_u(h) - h`.
    pub correction: Vec<FieldElement>,
}

impl ExtractedCocycle {
    pub fn corrected(&self) -> bool {
        self.correction.iter().any(|c| *c != FieldElement::ZERO)
    }
}

/// `Ad_u(h) - h = h(F_u)(1-ux)^2 - h` for a series `h`.
fn adjoint_difference(f: &ExtField, u: FieldElement, h: &TruncatedSeries) -> TruncatedSeries {
    let cap = h.cap();
    h.compose(&base_series(f, u, cap)).mul(&inv_derivative(f, u, cap)).sub(h)
}

pub fn cocycle_from_lift(action: &LiftedAction) -> Result<ExtractedCocycle> {
    let spec = &action.spec;
    let f = spec.field();
    let cap = action.cap;
    let eps_cap = cap - 1;
    let raw: Vec<TruncatedSeries> = spec
        .v_elements()
        .iter()
        .zip(&action.images)
        .map(|(&u, img)| {
            let mut c = img.eps.mul(&inv_derivative(f, u, cap)).coeffs().to_vec();
            c.truncate(eps_cap);
            TruncatedSeries::from_coeffs(f, cap, &c)
        })
        .collect();

    let high_lo = 3usize;
    let unknowns = eps_cap.saturating_sub(1 + high_lo);
    let mut correction = Vec::new();
    let mut adjusted = raw.clone();
    let has_high = raw.iter().any(|s| s.coeffs().iter().skip(high_lo).any(|c| !f.is_zero(c)));
    if has_high {
        if unknowns == 0 {
            return Err(Error::NotDerivationImage("no room for a correction".into()));
        }
        let mut a = Matrix::zero(f, 0, unknowns);
        let mut b = Vec::new();
        let basis: Vec<Vec<TruncatedSeries>> = (0..unknowns)
            .map(|j| {
                let h = TruncatedSeries::monomial(f, cap, high_lo + j, f.one());
                spec.v_elements().iter().map(|&u| adjoint_difference(f, u, &h)).collect()
            })
            .collect();
        for (pos, series) in raw.iter().enumerate() {
            for deg in high_lo..eps_cap {
                a.push_row((0..unknowns).map(|j| basis[j][pos].coeff(deg)).collect());
                b.push(series.coeff(deg));
            }
        }
        let sol =
            a.solve(f, &b).ok_or_else(|| Error::NotDerivationImage("higher-order part is not a coboundary".into()))?;
        let mut hc = alloc::vec![f.zero(); high_lo];
        hc.extend_from_slice(&sol);
        let h = TruncatedSeries::from_coeffs(f, cap, &hc);
        for (s, &u) in adjusted.iter_mut().zip(spec.v_elements()) {
            let mut c = s.sub(&adjoint_difference(f, u, &h)).coeffs().to_vec();
            c.truncate(eps_cap);
            *s = TruncatedSeries::from_coeffs(f, cap, &c);
        }
        correction = sol;
    }
    for (s, u) in adjusted.iter().zip(spec.v_elements()) {
        if s.coeffs().iter().skip(high_lo).any(|c| !f.is_zero(c)) {
            return Err(Error::NotDerivationImage(format!("residual higher-order terms at u = {:?}", f.coeffs(*u))));
        }
    }
    let table: Vec<MElement> = adjusted.iter().map(|s| MElement::new(s.coeff(0), s.coeff(1), s.coeff(2))).collect();
    let cocycle = Cocycle::from_fn(spec, {
        let mut it = table.into_iter();
        move |_| it.next().expect("one value per element")
    });
    if !cocycle.table()[0].is_zero() {
        return Err(Error::NotDerivationImage("value at 0 is nonzero".into()));
    }
    Ok(ExtractedCocycle { cocycle, correction })
}

/// `psi^{-1} . rho_u . psi` with `psi(x) = x + delta(x) eps`; the cocycle of the
/// result differs from the original by `u -> Ad_u(delta) - delta`.
pub fn conjugate_by_inner(action: &LiftedAction, delta: &TruncatedSeries) -> LiftedAction {
    let f = action.spec.field();
    let cap = action.cap;
    let x = TruncatedSeries::x(f, cap);
    let psi = DualSeries::new(x.clone(), delta.clone());
    let psi_inv = DualSeries::new(x, delta.neg());
    let conj = |img: &DualSeries| psi.compose(&img.compose(&psi_inv));
    LiftedAction {
        spec: action.spec.clone(),
        cap,
        images: action.images.iter().map(conj).collect(),
        tau: action.tau.as_ref().map(conj),
    }
}

/// An element `delta` of `M` with `conjugate_by_inner(a, delta) == b`, if the two
/// lifts are isomorphic through such an inner automorphism.
pub fn inner_equivalence(a: &LiftedAction, b: &LiftedAction) -> Result<Option<MElement>> {
    let spec = &a.spec;
    let ca = cocycle_from_lift(a)?.cocycle;
    let cb = cocycle_from_lift(b)?.cocycle;
    let Some(g) = is_coboundary(spec, &cb.sub(&ca))? else {
        return Ok(None);
    };
    let delta = m_series(spec.field(), a.cap, &g);
    Ok((conjugate_by_inner(a, &delta) == *b).then_some(g))
}

/// `(1/n) sum_k tau^k c`, an exactly `tau`-invariant representative.
pub fn average_over_h(spec: &LocalActionSpec, c: &Cocycle) -> Result<Cocycle> {
    if spec.n() == 1 {
        return Ok(c.clone());
    }
    let f = spec.field();
    let mut acc = c.clone();
    let mut cur = c.clone();
    for _ in 1..spec.n() {
        cur = tau_on_cocycle(spec, &cur)?;
        acc = acc.add(&cur);
    }
    let inv_n = f.inv_int(spec.n() as i64).ok_or(Error::NotCoprime { n: spec.n(), p: spec.p() as u64 })?;
    Ok(acc.scale(&inv_n))
}

/// The explicit fractional-linear lift `(a x + b)/(c x + d)` for `alpha = a0 eps`,
/// `beta = -eps phi(u)`.
pub fn explicit_fraction(
    spec: &LocalActionSpec,
    u: FieldElement,
    a0: FieldElement,
    phi_u: FieldElement,
    cap: usize,
) -> Result<DualSeries> {
    if spec.p() < 5 {
        return Err(Error::Invalid("the explicit fraction needs p >= 5".into()));
    }
    let f = spec.field();
    let half = f.inv_int(2).unwrap();
    let sixth = f.inv_int(6).unwrap();
    let u2 = f.mul(&u, &u);
    let c = |v: FieldElement| TruncatedSeries::constant(f, cap, v);
    let x = TruncatedSeries::x(f, cap);
    let zero = TruncatedSeries::zero(f, cap);
    let dual = |m: TruncatedSeries, e: TruncatedSeries| DualSeries::new(m, e);

    let a_eps = f.mul(&f.mul(&half, &f.mul(&u, &f.add(&u, &f.one()))), &a0);
    let num = dual(x.clone(), x.scale(&a_eps).sub(&c(f.mul(&u, &a0))));
    let cubic = f.mul(&f.mul(&sixth, &f.mul(&u, &f.sub(&u2, &f.one()))), &a0);
    let lin_eps = f.sub(&cubic, &phi_u);
    let const_eps = f.mul(&f.mul(&half, &f.mul(&u, &f.sub(&u, &f.one()))), &a0);
    let den = dual(c(f.one()).sub(&x.scale(&u)), zero.sub(&x.scale(&lin_eps)).add(&c(const_eps)));
    Ok(num.mul(&den.inv().expect("constant term is 1")))
}
