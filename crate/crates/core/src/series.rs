//! Truncated power series `k[x]/(x^D)` and their dual-number extension.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{ExtField, FieldElement};
use crate::ring::{Field, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries {
    field: ExtField,
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn zero(field: &ExtField, cap: usize) -> Self {
        TruncatedSeries { field: field.clone(), coeffs: vec![field.zero(); cap] }
    }

    pub fn constant(field: &ExtField, cap: usize, c: FieldElement) -> Self {
        let mut s = Self::zero(field, cap);
        if cap > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn x(field: &ExtField, cap: usize) -> Self {
        Self::monomial(field, cap, 1, field.one())
    }

    pub fn monomial(field: &ExtField, cap: usize, deg: usize, c: FieldElement) -> Self {
        let mut s = Self::zero(field, cap);
        if deg < cap {
            s.coeffs[deg] = c;
        }
        s
    }

    /// Coefficients beyond `cap` are discarded.
    pub fn from_coeffs(field: &ExtField, cap: usize, c: &[FieldElement]) -> Self {
        let mut s = Self::zero(field, cap);
        for (dst, src) in s.coeffs.iter_mut().zip(c) {
            *dst = *src;
        }
        s
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == FieldElement::ZERO)
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f.add(a, b)).collect();
        TruncatedSeries { field: f.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = &self.field;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| f.sub(a, b)).collect();
        TruncatedSeries { field: f.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        TruncatedSeries { field: f.clone(), coeffs: self.coeffs.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let f = &self.field;
        TruncatedSeries { field: f.clone(), coeffs: self.coeffs.iter().map(|a| f.mul(c, a)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = &self.field;
        let d = self.cap();
        let mut out = vec![f.zero(); d];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(d - i) {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        TruncatedSeries { field: f.clone(), coeffs: out }
    }

    /// Multiplicative inverse, defined exactly when the constant term is nonzero.
    pub fn inv(&self) -> Option<Self> {
        let f = &self.field;
        let d = self.cap();
        let c0 = f.inv(&self.coeff(0))?;
        let mut out = vec![f.zero(); d];
        if d == 0 {
            return Some(self.clone());
        }
        out[0] = c0;
        for k in 1..d {
            let mut acc = f.zero();
            for j in 1..=k {
                acc = f.add(&acc, &f.mul(&self.coeffs[j], &out[k - j]));
            }
            out[k] = f.neg(&f.mul(&c0, &acc));
        }
        Some(TruncatedSeries { field: f.clone(), coeffs: out })
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let d = self.cap();
        let mut out = vec![f.zero(); d];
        for i in 1..d {
            out[i - 1] = f.scale_int(&self.coeffs[i], i as i64);
        }
        TruncatedSeries { field: f.clone(), coeffs: out }
    }

    /// `self(g)`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Self {
        assert!(g.field.is_zero(&g.coeff(0)), "inner series must vanish at 0");
        let mut acc = Self::zero(&self.field, self.cap());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g);
            acc.coeffs[0] = self.field.add(&acc.coeffs[0], c);
        }
        acc
    }

    /// Least degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != FieldElement::ZERO)
    }
}

/// `main + eps * epsilon` with `epsilon^2 = 0`, taken modulo `x^D` and
/// `epsilon x^{D-1}`.
///
/// Substituting into a series needs its derivative, which a truncated series
/// only knows modulo `x^{D-1}`; the epsilon part is therefore kept one degree
/// shorter so that composition stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSeries {
    pub main: TruncatedSeries,
    pub eps: TruncatedSeries,
}

impl DualSeries {
    pub fn new(main: TruncatedSeries, mut eps: TruncatedSeries) -> Self {
        assert_eq!(main.cap(), eps.cap());
        if let Some(top) = eps.coeffs.last_mut() {
            *top = FieldElement::ZERO;
        }
        DualSeries { main, eps }
    }

    pub fn pure(main: TruncatedSeries) -> Self {
        let eps = TruncatedSeries::zero(main.field(), main.cap());
        DualSeries::new(main, eps)
    }

    pub fn cap(&self) -> usize {
        self.main.cap()
    }

    pub fn add(&self, o: &Self) -> Self {
        DualSeries::new(self.main.add(&o.main), self.eps.add(&o.eps))
    }

    pub fn sub(&self, o: &Self) -> Self {
        DualSeries::new(self.main.sub(&o.main), self.eps.sub(&o.eps))
    }

    pub fn mul(&self, o: &Self) -> Self {
        DualSeries::new(self.main.mul(&o.main), self.main.mul(&o.eps).add(&self.eps.mul(&o.main)))
    }

    pub fn inv(&self) -> Option<Self> {
        let mi = self.main.inv()?;
        let eps = mi.mul(&mi).mul(&self.eps).neg();
        Some(DualSeries::new(mi, eps))
    }

    /// `self(g)` for an automorphism image `g` whose main part vanishes at 0.
    pub fn compose(&self, g: &Self) -> Self {
        let main = self.main.compose(&g.main);
        let eps = self.main.derivative().compose(&g.main).mul(&g.eps).add(&self.eps.compose(&g.main));
        DualSeries::new(main, eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn inverse_and_composition() {
        let f = make_field(5, 1).unwrap();
        let one = TruncatedSeries::constant(&f, 6, f.one());
        let x = TruncatedSeries::x(&f, 6);
        let g = one.sub(&x.scale(&f.from_int(2)));
        let gi = g.inv().unwrap();
        assert_eq!(g.mul(&gi), one);
        assert!(x.inv().is_none());
        let sq = x.mul(&x);
        let xpx2 = x.add(&sq);
        let c = sq.compose(&xpx2);
        let expected = xpx2.mul(&xpx2);
        assert_eq!(c, expected);
    }

    #[test]
    fn dual_inverse() {
        let f = make_field(7, 1).unwrap();
        let a = DualSeries::new(
            TruncatedSeries::from_coeffs(&f, 5, &[f.one(), f.from_int(3)]),
            TruncatedSeries::from_coeffs(&f, 5, &[f.from_int(2), f.zero(), f.one()]),
        );
        let one = DualSeries::pure(TruncatedSeries::constant(&f, 5, f.one()));
        assert_eq!(a.mul(&a.inv().unwrap()), one);
    }
}
