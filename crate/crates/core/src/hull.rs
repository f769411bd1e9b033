//! Hull rings of local actions and verification of their explicit liftings.
//!
//! Each hull is realised as a quotient of a polynomial ring over `k = F_{p^t}`
//! by a monomial ideal, truncated at a total degree `D`. The linear relation
//! `x_1 + ... + x_r = 0` is eliminated up front by substituting for `x_r`.
//! In characteristic 2 the relations `x_0 (x_i u_j - x_j u_i)` become
//! monomial after a linear change of the remaining coordinates.
//!
//! A lifting is verified by computing the lifted matrix of every `u in V` and
//! comparing products for all pairs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::chebyshev::{cheb_matrix, Mat2};
use crate::cohomology::LocalActionSpec;
use crate::error::{Error, Result};
use crate::field::{ExtField, FieldElement};
use crate::matrix::Matrix;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Field, Ring};

type Elem = Poly<FieldElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullCase {
    /// `p >= 5` with `n` in `{1, 2}`: the `d0` direction is present and obstructed.
    Obstructed,
    /// Only linear directions occur and `alpha = 0`.
    Unobstructed,
    /// `p = 2`, `n = 1`: involution generators lifted one basis vector at a time.
    CharTwo,
}

impl HullCase {
    pub fn name(self) -> &'static str {
        match self {
            HullCase::Obstructed => "obstructed",
            HullCase::Unobstructed => "unobstructed",
            HullCase::CharTwo => "char-two",
        }
    }
}

/// Which variant of the hull relations to impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingVariant {
    Hull,
    /// The nilpotence of `x_0` weakened by one degree. In characteristic 2
    /// the relations `x_0 (x_i u_j - x_j u_i)` are dropped instead.
    Weakened,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct HullOptions {
    /// Total-degree cap; `None` picks `p` for odd `p` and `3` for `p = 2`.
    pub degree_cap: Option<u32>,
    /// Run the positive check in the weakened ring.
    pub nilpotence_slack: bool,
}

pub fn default_degree_cap(p: u32) -> u32 {
    if p == 2 {
        3
    } else {
        p
    }
}

/// A hull ring together with the specialisation of `alpha` and `beta`.
#[derive(Clone, Debug)]
pub struct HullRing {
    spec: LocalActionSpec,
    case: HullCase,
    variant: RingVariant,
    ring: PolyRing<ExtField>,
    /// Index of `x_0`, when present.
    alpha_var: Option<usize>,
    /// Exponent `e` with `x_0^e = 0`, when `x_0` is present.
    alpha_nilpotence: Option<u16>,
    /// `beta(u)` for every `u in V`, by position.
    betas: Vec<Elem>,
    /// The `F_q`-basis `w_1, ..., w_r` of `V` used for `beta`.
    q_basis: Vec<FieldElement>,
    /// Truncation order of the Chebyshev matrices, `(p - 1) / 2`.
    order: usize,
}

fn q_coordinates(
    f: &ExtField,
    spec: &LocalActionSpec,
    sub: &[FieldElement],
) -> (Vec<FieldElement>, Vec<Vec<FieldElement>>) {
    let zero = f.zero();
    let mut basis: Vec<FieldElement> = Vec::new();
    let mut coords: Vec<Option<Vec<FieldElement>>> = vec![None; f.order() as usize];
    coords[zero.index() as usize] = Some(Vec::new());
    let mut span = vec![zero];
    for &w in spec.v_elements() {
        if coords[w.index() as usize].is_some() {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * sub.len());
        for &c in sub {
            for &a in &span {
                let e = f.add(&a, &f.mul(&c, &w));
                let mut cs = coords[a.index() as usize].clone().unwrap();
                cs.push(c);
                next.push((e, cs));
            }
        }
        span.clear();
        for (e, cs) in next {
            coords[e.index() as usize] = Some(cs);
            span.push(e);
        }
        basis.push(w);
    }
    let r = basis.len();
    let table = spec
        .v_elements()
        .iter()
        .map(|u| {
            let mut cs = coords[u.index() as usize].clone().expect("V is spanned");
            cs.resize(r, zero);
            cs
        })
        .collect();
    (basis, table)
}

impl HullRing {
    pub fn new(p: u64, t: u32, n: u64, degree_cap: u32, variant: RingVariant) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidSpec("the hull needs a nontrivial wild part".into()));
        }
        let spec = LocalActionSpec::new(p, t, n)?;
        let f = spec.field().clone();
        let p32 = spec.p();
        let case = if p32 == 2 {
            if n == 1 {
                HullCase::CharTwo
            } else {
                HullCase::Unobstructed
            }
        } else if p32 == 3 || n > 2 {
            HullCase::Unobstructed
        } else {
            HullCase::Obstructed
        };
        let sub = f.subfield(spec.s())?;
        let (q_basis, coords) = q_coordinates(&f, &spec, &sub);
        let r = q_basis.len();
        let order = ((p32 - 1) / 2) as usize;

        // `beta(w_j)` as a linear form in `x_1, ..., x_{r-1}`.
        let mut forms: Vec<Vec<FieldElement>> = (0..r)
            .map(|j| {
                let mut v = vec![f.zero(); r - 1];
                if j + 1 < r {
                    v[j] = f.one();
                } else {
                    v.iter_mut().for_each(|c| *c = f.neg(&f.one()));
                }
                v
            })
            .collect();

        let with_x0 = match case {
            HullCase::Obstructed | HullCase::CharTwo => true,
            HullCase::Unobstructed => variant == RingVariant::Weakened && p32 != 2,
        };
        let mut names: Vec<String> = Vec::new();
        if with_x0 {
            names.push("x0".into());
        }
        let letter = if case == HullCase::CharTwo { "y" } else { "x" };
        for i in 1..r {
            names.push(format!("{letter}{i}"));
        }
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let nv = names.len();
        let off = usize::from(with_x0);
        let mut ring = PolyRing::new(f.clone(), &name_refs).with_degree_cap(degree_cap);

        let mut alpha_nilpotence = None;
        match case {
            HullCase::Obstructed | HullCase::Unobstructed if with_x0 => {
                let e = match (case, variant) {
                    (HullCase::Obstructed, RingVariant::Hull) => order as u16,
                    (HullCase::Obstructed, RingVariant::Weakened) => order as u16 + 1,
                    _ => 2,
                };
                let mut ex = vec![0u16; nv];
                ex[0] = e;
                ring = ring.forbid(ex);
                alpha_nilpotence = Some(e);
                for i in 1..nv {
                    let mut ex = vec![0u16; nv];
                    ex[0] = 1;
                    ex[i] = 1;
                    ring = ring.forbid(ex);
                }
            }
            HullCase::CharTwo => {
                // Forms `x_i u_j - x_j u_i` with `x_r` eliminated.
                let mut rows: Vec<Vec<FieldElement>> = Vec::new();
                for i in 0..r {
                    for j in (i + 1)..r {
                        let row = (0..r - 1)
                            .map(|k| {
                                let a = f.mul(&forms[i][k], &q_basis[j]);
                                let b = f.mul(&forms[j][k], &q_basis[i]);
                                f.sub(&a, &b)
                            })
                            .collect();
                        rows.push(row);
                    }
                }
                let mut change: Vec<Vec<FieldElement>> = Vec::new();
                let mut rank = 0;
                if r > 1 && !rows.is_empty() {
                    let (red, pivots) = Matrix::from_rows(rows, r - 1).rref(&f);
                    rank = pivots.len();
                    for i in 0..rank {
                        change.push(red.row(i).to_vec());
                    }
                    for k in 0..r - 1 {
                        if !pivots.contains(&k) {
                            let mut e = vec![f.zero(); r - 1];
                            e[k] = f.one();
                            change.push(e);
                        }
                    }
                    let inv = Matrix::from_rows(change, r - 1).inverse(&f).expect("completed basis is invertible");
                    for form in forms.iter_mut() {
                        let new: Vec<FieldElement> = (0..r - 1)
                            .map(|l| (0..r - 1).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(&form[k], inv.get(k, l)))))
                            .collect();
                        *form = new;
                    }
                }
                if variant == RingVariant::Hull {
                    for l in 0..rank {
                        let mut ex = vec![0u16; nv];
                        ex[0] = 1;
                        ex[off + l] = 1;
                        ring = ring.forbid(ex);
                    }
                }
            }
            _ => {}
        }

        let basis_betas: Vec<Elem> = forms
            .iter()
            .map(|form| {
                form.iter()
                    .enumerate()
                    .fold(ring.zero(), |acc, (k, c)| ring.add(&acc, &ring.scale(&ring.var(off + k), c)))
            })
            .collect();
        let betas = coords
            .iter()
            .map(|cs| cs.iter().zip(&basis_betas).fold(ring.zero(), |acc, (c, b)| ring.add(&acc, &ring.scale(b, c))))
            .collect();

        Ok(HullRing {
            spec,
            case,
            variant,
            ring,
            alpha_var: with_x0.then_some(0),
            alpha_nilpotence,
            betas,
            q_basis,
            order,
        })
    }

    pub fn spec(&self) -> &LocalActionSpec {
        &self.spec
    }

    pub fn case(&self) -> HullCase {
        self.case
    }

    pub fn variant(&self) -> RingVariant {
        self.variant
    }

    pub fn ring(&self) -> &PolyRing<ExtField> {
        &self.ring
    }

    pub fn q_basis(&self) -> &[FieldElement] {
        &self.q_basis
    }

    pub fn alpha_nilpotence(&self) -> Option<u16> {
        self.alpha_nilpotence
    }

    pub fn alpha(&self) -> Elem {
        match self.alpha_var {
            Some(i) => self.ring.var(i),
            None => self.ring.zero(),
        }
    }

    pub fn beta(&self, u: FieldElement) -> Result<Elem> {
        let pos = self.spec.position(u).ok_or(Error::OutsideVectorGroup)?;
        Ok(self.betas[pos].clone())
    }

    /// Number of variables after elimination.
    pub fn num_vars(&self) -> usize {
        self.ring.nvars()
    }

    /// Human-readable presentation, for example `F_5[[x0]] / (x0^2) mod deg 5`.
    pub fn describe(&self) -> String {
        let f = self.spec.field();
        let k = if f.degree() == 1 { format!("F_{}", f.p()) } else { format!("F_{}", f.order()) };
        let vars = self.ring.names().join(", ");
        let rels: Vec<String> = self
            .ring
            .forbidden()
            .iter()
            .map(|ex| {
                let parts: Vec<String> = ex
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let n = &self.ring.names()[i];
                        if e == 1 {
                            n.clone()
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
                parts.join("*")
            })
            .collect();
        let cap = self.ring.degree_cap().unwrap_or(0);
        if rels.is_empty() {
            format!("{k}[[{vars}]] mod deg {cap}")
        } else {
            format!("{k}[[{vars}]] / ({}) mod deg {cap}", rels.join(", "))
        }
    }

    fn lifted_matrix(&self, u: FieldElement) -> Result<Mat2<Elem>> {
        let r = &self.ring;
        let f = self.spec.field();
        let w = f.neg(&u);
        let beta = self.beta(w)?;
        let wc = r.constant(w);
        if self.alpha_var.is_none() && self.spec.p() == 2 {
            return Ok(Mat2::new(r.one(), r.zero(), r.add(&wc, &beta), r.one()));
        }
        Ok(cheb_matrix(r, self.order, &wc, &self.alpha(), &beta)?.m)
    }

    /// The involution generator for the basis vector `u_i` in characteristic 2.
    fn char_two_generator(&self, i: usize) -> Mat2<Elem> {
        let r = &self.ring;
        let ui = self.q_basis[i];
        let uc = r.constant(ui);
        let lower = r.add(&uc, &self.betas[self.spec.position(ui).unwrap()]);
        Mat2::new(r.one(), r.mul(&self.alpha(), &uc), lower, r.one())
    }

    fn tau_conjugation(&self) -> (Mat2<Elem>, Mat2<Elem>) {
        let r = &self.ring;
        let f = self.spec.field();
        let z = self.spec.zeta();
        let zi = f.inv(&z).expect("zeta is a unit");
        let a = self.alpha();
        let t = Mat2::new(r.constant(z), r.scale(&a, &z), r.zero(), r.one());
        let ti = Mat2::new(r.constant(zi), r.neg(&a), r.zero(), r.one());
        (t, ti)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCheck {
    pub ring: String,
    pub pairs_checked: usize,
    /// `M(-u) M(-v) = M(-u-v)` for all pairs; projectively in characteristic 2.
    pub homomorphism: bool,
    /// The first failing pair as indices into `V`.
    pub first_failure: Option<(usize, usize)>,
    /// A rendering of the first nonzero residual entry.
    pub residual: Option<String>,
    /// Generators commute literally (characteristic 2 only).
    pub generators_commute: Option<bool>,
    /// Generators square to a scalar (characteristic 2 only).
    pub involutions: Option<bool>,
    /// `T^{-1} M(-u) T = M(-zeta u)` for all `u` (only when `n > 1`).
    pub semidirect: Option<bool>,
}

impl HullCheck {
    pub fn passes(&self) -> bool {
        self.homomorphism
            && self.generators_commute != Some(false)
            && self.involutions != Some(false)
            && self.semidirect != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullLiftReport {
    pub p: u32,
    pub t: u32,
    pub n: u64,
    pub degree_cap: u32,
    pub case: HullCase,
    pub positive: HullCheck,
    /// `None` when no weakened ring exists for this case.
    pub negative: Option<HullCheck>,
}

impl HullLiftReport {
    pub fn negative_control_fails(&self) -> Option<bool> {
        self.negative.as_ref().map(|c| !c.passes())
    }

    pub fn passes(&self) -> bool {
        self.positive.passes() && self.negative_control_fails() != Some(false)
    }
}

fn render_elem(f: &ExtField, c: &FieldElement) -> String {
    match f.as_prime(*c) {
        Some(v) => format!("{v}"),
        None => format!("g^{}", f.log(*c).unwrap_or(0)),
    }
}

fn first_residual(h: &HullRing, a: &Mat2<Elem>, b: &Mat2<Elem>) -> Option<String> {
    let r = &h.ring;
    let d = a.sub(r, b);
    let labels = ["upper-left", "upper-right", "lower-left", "lower-right"];
    d.entries()
        .iter()
        .zip(labels)
        .find(|(e, _)| !e.is_zero())
        .map(|(e, l)| format!("{l}: {}", r.render(e, |c| render_elem(h.spec.field(), c))))
}

/// Projective equality `a = gamma b` with `b` having a unit entry.
fn projectively_equal(h: &HullRing, a: &Mat2<Elem>, b: &Mat2<Elem>) -> bool {
    let r = &h.ring;
    let Some(inv) = r.inv_unit(&b.d) else { return false };
    let gamma = r.mul(&a.d, &inv);
    *a == b.scale(r, &gamma)
}

fn check_ring(h: &HullRing) -> Result<HullCheck> {
    let r = &h.ring;
    let spec = &h.spec;
    let v = spec.v_elements();
    let f = spec.field();

    let mut generators_commute = None;
    let mut involutions = None;
    let mats: Vec<Mat2<Elem>> = if h.case == HullCase::CharTwo {
        let gens: Vec<Mat2<Elem>> = (0..h.q_basis.len()).map(|i| h.char_two_generator(i)).collect();
        let mut comm = true;
        let mut inv = true;
        for (i, g) in gens.iter().enumerate() {
            let sq = g.mul(r, g);
            if !(sq.b.is_zero() && sq.c.is_zero() && sq.a == sq.d) {
                inv = false;
            }
            for g2 in &gens[i + 1..] {
                if g.mul(r, g2) != g2.mul(r, g) {
                    comm = false;
                }
            }
        }
        generators_commute = Some(comm);
        involutions = Some(inv);
        // Lift of `-u = u` as the ordered product of generators.
        let (_, coords) = q_coordinates(f, spec, &f.subfield(1)?);
        coords
            .iter()
            .map(|cs| {
                cs.iter().zip(&gens).fold(
                    Mat2::identity(r),
                    |acc, (c, g)| {
                        if *c == f.zero() {
                            acc
                        } else {
                            acc.mul(r, g)
                        }
                    },
                )
            })
            .collect()
    } else {
        v.iter().map(|&u| h.lifted_matrix(u)).collect::<Result<_>>()?
    };

    let mut homomorphism = true;
    let mut first_failure = None;
    let mut residual = None;
    let mut pairs = 0;
    for (i, &u) in v.iter().enumerate() {
        for (j, &w) in v.iter().enumerate() {
            pairs += 1;
            let k = spec.position(f.add(&u, &w)).expect("V is closed under addition");
            let prod = mats[i].mul(r, &mats[j]);
            let ok = if h.case == HullCase::CharTwo { projectively_equal(h, &prod, &mats[k]) } else { prod == mats[k] };
            if !ok && homomorphism {
                homomorphism = false;
                first_failure = Some((i, j));
                residual = first_residual(h, &prod, &mats[k]);
            }
        }
    }

    let semidirect = if spec.n() > 1 {
        let (t, ti) = h.tau_conjugation();
        let z = spec.zeta();
        let mut ok = true;
        for (i, &u) in v.iter().enumerate() {
            let zu = spec.position(f.mul(&z, &u)).ok_or(Error::OutsideVectorGroup)?;
            let conj = ti.mul(r, &mats[i]).mul(r, &t);
            if conj != mats[zu] {
                if ok && residual.is_none() {
                    residual = first_residual(h, &conj, &mats[zu]);
                }
                ok = false;
            }
        }
        Some(ok)
    } else {
        None
    };

    Ok(HullCheck {
        ring: h.describe(),
        pairs_checked: pairs,
        homomorphism,
        first_failure,
        residual,
        generators_commute,
        involutions,
        semidirect,
    })
}

pub fn build_hull_ring(p: u64, t: u32, n: u64, degree_cap: Option<u32>) -> Result<HullRing> {
    let cap = degree_cap.unwrap_or_else(|| default_degree_cap(p as u32));
    HullRing::new(p, t, n, cap, RingVariant::Hull)
}

fn has_weakened(h: &HullRing) -> bool {
    match h.case {
        HullCase::Obstructed => true,
        HullCase::Unobstructed => h.spec.p() != 2,
        HullCase::CharTwo => h.q_basis.len() >= 2,
    }
}

pub fn verify_hull_lift(p: u64, t: u32, n: u64, degree_cap: Option<u32>) -> Result<HullLiftReport> {
    verify_hull_lift_with(p, t, n, HullOptions { degree_cap, nilpotence_slack: false })
}

pub fn verify_hull_lift_with(p: u64, t: u32, n: u64, opts: HullOptions) -> Result<HullLiftReport> {
    let cap = opts.degree_cap.unwrap_or_else(|| default_degree_cap(p as u32));
    let hull = HullRing::new(p, t, n, cap, RingVariant::Hull)?;
    let negative = if has_weakened(&hull) { Some(HullRing::new(p, t, n, cap, RingVariant::Weakened)?) } else { None };
    let positive_ring = match (&negative, opts.nilpotence_slack) {
        (Some(w), true) => w,
        _ => &hull,
    };
    let positive = check_ring(positive_ring)?;
    let negative = negative.as_ref().map(check_ring).transpose()?;
    Ok(HullLiftReport { p: hull.spec.p(), t, n, degree_cap: cap, case: hull.case, positive, negative })
}
