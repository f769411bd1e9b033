//! Multivariate polynomials modulo a monomial ideal and a total-degree cap.
//!
//! Because the ideal is generated by monomials, the normal form of a polynomial
//! is obtained by discarding every term divisible by a forbidden monomial or of
//! total degree at least the cap. With no relations and no cap this is the
//! ordinary polynomial ring, used for symbolic identities over `Q`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::ring::{Field, Ring};

pub type Exponents = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<E> {
    terms: BTreeMap<Exponents, E>,
}

impl<E> Poly<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    forbidden: Vec<Exponents>,
    degree_cap: Option<u32>,
}

impl<F: Field + Clone> PolyRing<F> {
    pub fn new(field: F, names: &[&str]) -> Self {
        PolyRing {
            field,
            names: names.iter().map(|s| s.to_string()).collect(),
            forbidden: Vec::new(),
            degree_cap: None,
        }
    }

    /// Adds the monomial `prod x_i^{e_i}` to the ideal.
    pub fn forbid(mut self, exps: Exponents) -> Self {
        assert_eq!(exps.len(), self.names.len());
        self.forbidden.push(exps);
        self
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn forbidden(&self) -> &[Exponents] {
        &self.forbidden
    }

    pub fn degree_cap(&self) -> Option<u32> {
        self.degree_cap
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether a monomial survives reduction.
    pub fn is_standard(&self, exps: &[u16]) -> bool {
        if let Some(cap) = self.degree_cap {
            if exps.iter().map(|&e| e as u32).sum::<u32>() >= cap {
                return false;
            }
        }
        !self.forbidden.iter().any(|f| f.iter().zip(exps).all(|(a, b)| a <= b))
    }

    pub fn monomial(&self, exps: Exponents, c: F::Elem) -> Poly<F::Elem> {
        let mut terms = BTreeMap::new();
        if !self.field.is_zero(&c) && self.is_standard(&exps) {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.monomial(vec![0; self.nvars()], c)
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        let mut e = vec![0; self.nvars()];
        e[i] = 1;
        self.monomial(e, self.field.one())
    }

    /// The coefficient of a monomial in the normal form.
    pub fn coeff(&self, p: &Poly<F::Elem>, exps: &[u16]) -> F::Elem {
        p.terms.get(exps).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, p: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        let mut terms = BTreeMap::new();
        for (e, a) in &p.terms {
            let v = self.field.mul(a, c);
            if !self.field.is_zero(&v) {
                terms.insert(e.clone(), v);
            }
        }
        Poly { terms }
    }

    /// Drops every term whose exponent of `var` is at least `k`, i.e. reduction modulo `x_var^k`.
    pub fn truncate_var(&self, p: &Poly<F::Elem>, var: usize, k: u16) -> Poly<F::Elem> {
        Poly { terms: p.terms.iter().filter(|(e, _)| e[var] < k).map(|(e, c)| (e.clone(), c.clone())).collect() }
    }

    /// Coefficient of `x_var^k` as a polynomial in the remaining variables.
    pub fn coeff_in_var(&self, p: &Poly<F::Elem>, var: usize, k: u16) -> Poly<F::Elem> {
        let mut terms = BTreeMap::new();
        for (e, c) in &p.terms {
            if e[var] == k {
                let mut e2 = e.clone();
                e2[var] = 0;
                terms.insert(e2, c.clone());
            }
        }
        Poly { terms }
    }

    pub fn degree_in(&self, p: &Poly<F::Elem>, var: usize) -> Option<u16> {
        p.terms.keys().map(|e| e[var]).max()
    }

    /// Substitutes `values[i]` for `x_i`, evaluating in `target`.
    pub fn substitute<G: Field + Clone>(
        &self,
        p: &Poly<F::Elem>,
        target: &PolyRing<G>,
        coeff_map: impl Fn(&F::Elem) -> G::Elem,
        values: &[Poly<G::Elem>],
    ) -> Poly<G::Elem> {
        assert_eq!(values.len(), self.nvars());
        let mut acc = target.zero();
        for (e, c) in &p.terms {
            let mut term = target.constant(coeff_map(c));
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = target.mul(&term, &target.pow(&values[i], k as u64));
                }
            }
            acc = target.add(&acc, &term);
        }
        acc
    }

    /// Inverse of a polynomial with invertible constant term when every
    /// non-constant monomial is nilpotent (guaranteed by a degree cap).
    pub fn inv_unit(&self, p: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let cap = self.degree_cap?;
        let c0 = self.coeff(p, &vec![0; self.nvars()]);
        let c0i = self.field.inv(&c0)?;
        let unit = self.scale(p, &c0i);
        let nil = self.sub(&self.one(), &unit);
        let mut acc = self.one();
        let mut pw = self.one();
        for _ in 1..cap {
            pw = self.mul(&pw, &nil);
            acc = self.add(&acc, &pw);
        }
        Some(self.scale(&acc, &c0i))
    }

    /// Renders `p` using `fmt_coeff` for coefficients.
    pub fn render(&self, p: &Poly<F::Elem>, fmt_coeff: impl Fn(&F::Elem) -> String) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in p.terms.iter().enumerate() {
            if idx > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.names[i].clone() } else { alloc::format!("{}^{}", self.names[i], k) })
                .collect();
            let cs = fmt_coeff(c);
            if mono.is_empty() {
                out.push_str(&cs);
            } else if c == &self.field.one() {
                out.push_str(&mono.join("*"));
            } else {
                let _ = write!(out, "({})*{}", cs, mono.join("*"));
            }
        }
        out
    }
}

impl<F: Field + Clone> Ring for PolyRing<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Poly<F::Elem> {
        Poly { terms: BTreeMap::new() }
    }

    fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            let v = match terms.get(e) {
                Some(x) => self.field.add(x, c),
                None => c.clone(),
            };
            if self.field.is_zero(&v) {
                terms.remove(e);
            } else {
                terms.insert(e.clone(), v);
            }
        }
        Poly { terms }
    }

    fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { terms: a.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect() }
    }

    fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut terms: BTreeMap<Exponents, F::Elem> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if !self.is_standard(&e) {
                    continue;
                }
                let prod = self.field.mul(ca, cb);
                let entry = terms.entry(e).or_insert_with(|| self.field.zero());
                *entry = self.field.add(entry, &prod);
            }
        }
        terms.retain(|_, c| !self.field.is_zero(c));
        Poly { terms }
    }

    fn is_zero(&self, a: &Poly<F::Elem>) -> bool {
        a.terms.is_empty()
    }

    fn from_int(&self, n: i64) -> Poly<F::Elem> {
        self.constant(self.field.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    fn inv_int(&self, d: i64) -> Option<Poly<F::Elem>> {
        self.field.inv_int(d).map(|c| self.constant(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::ring::Rationals;

    #[test]
    fn monomial_ideal_reduction() {
        let f = make_field(5, 1).unwrap();
        let r = PolyRing::new(f.clone(), &["x0", "x1"]).forbid(vec![2, 0]).forbid(vec![1, 1]).with_degree_cap(5);
        let x0 = r.var(0);
        let x1 = r.var(1);
        assert!(r.mul(&x0, &x0).is_zero());
        assert!(r.mul(&x0, &x1).is_zero());
        let s = r.add(&x0, &x1);
        let s4 = r.pow(&s, 4);
        assert_eq!(s4, r.pow(&x1, 4));
        assert!(r.pow(&x1, 5).is_zero());
    }

    #[test]
    fn associativity_after_reduction() {
        let f = make_field(3, 2).unwrap();
        let r = PolyRing::new(f.clone(), &["a", "b", "c"]).forbid(vec![0, 2, 0]).with_degree_cap(4);
        let a = r.add(&r.var(0), &r.constant(f.x()));
        let b = r.add(&r.var(1), &r.var(2));
        let c = r.add(&r.var(0), &r.scale(&r.var(1), &f.from_int(2)));
        assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
    }

    #[test]
    fn unit_inverse() {
        let f = make_field(7, 1).unwrap();
        let r = PolyRing::new(f.clone(), &["x"]).with_degree_cap(6);
        let u = r.add(&r.from_int(3), &r.var(0));
        let ui = r.inv_unit(&u).unwrap();
        assert_eq!(r.mul(&u, &ui), r.one());
    }

    #[test]
    fn rational_polynomials() {
        let q = PolyRing::new(Rationals, &["u"]);
        let u = q.var(0);
        let sq = q.mul(&q.add(&u, &q.one()), &q.sub(&u, &q.one()));
        assert_eq!(sq, q.sub(&q.mul(&u, &u), &q.one()));
        assert_eq!(q.render(&sq, |c| alloc::format!("{c}")), "-1 + u^2");
    }
}
