//! Finite fields `F_{p^m}` with a deterministic defining polynomial.
//!
//! An element is stored as the integer whose base-`p` digits are the
//! coefficients of its polynomial representative, lowest degree first.
//! Enumeration order of the field is therefore the natural order on these
//! indices. Multiplication goes through discrete log tables built from the
//! first primitive element; addition uses a table for small fields.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{checked_pow, gcd, is_prime};
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Largest field order the table-driven implementation will build.
pub const FIELD_CAP: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub fn index(self) -> u32 {
        self.0
    }
}

struct Tables {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    digit_weights: Vec<u32>,
}

#[derive(Clone)]
pub struct ExtField {
    t: Arc<Tables>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.t.p, self.t.m, self.t.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.t.p == other.t.p && self.t.m == other.t.m
    }
}

impl Eq for ExtField {}

fn poly_rem(a: &mut Vec<u32>, b: &[u32], p: u32) {
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = (a[top] as u64 * lead_inv as u64 % p as u64) as u32;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                a[idx] = ((a[idx] as u64 + p as u64 - c as u64 * bi as u64 % p as u64) % p as u64) as u32;
            }
        }
        a.pop();
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for d in out.iter_mut() {
        *d = (idx % p as u64) as u32;
        idx /= p as u64;
    }
    out
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        let count = checked_pow(p as u64, d as u32).unwrap();
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            let mut r = f.to_vec();
            poly_rem(&mut r, &g, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree `m` over `F_p`,
/// with coefficients listed lowest degree first.
pub fn conway_like_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let count = checked_pow(p as u64, m).unwrap();
    for low in 0..count {
        let mut f = digits(low, p, m as usize);
        if f[0] == 0 {
            continue;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.resize(modulus.len() - 1, 0);
    prod
}

/// Build `F_{p^m}`.
pub fn make_field(p: u64, m: u32) -> Result<ExtField> {
    ExtField::new(p, m)
}

impl ExtField {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = match checked_pow(p, m) {
            Some(q) if q <= FIELD_CAP => q as u32,
            _ => return Err(Error::FieldTooLarge { p, m, cap: FIELD_CAP }),
        };
        let p = p as u32;
        let modulus = conway_like_modulus(p, m);
        let digit_weights: Vec<u32> = (0..m).map(|i| p.pow(i)).collect();
        let to_index = |c: &[u32]| -> u32 { c.iter().zip(&digit_weights).map(|(a, w)| a * w).sum() };

        let group = (order - 1) as u64;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![0u32; order as usize];
        let mut found = false;
        for cand in 1..order {
            let g = digits(cand as u64, p, m as usize);
            let mut cur = vec![0u32; m as usize];
            cur[0] = 1;
            let mut ok = true;
            for k in 0..group {
                let idx = to_index(&cur);
                if k > 0 && idx == 1 {
                    ok = false;
                    break;
                }
                exp[k as usize] = idx;
                log[idx as usize] = k as u32;
                cur = mulmod(&cur, &g, &modulus, p);
            }
            if ok {
                found = true;
                break;
            }
        }
        debug_assert!(found);
        exp[group as usize] = 1;

        let add = (order <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (order * order) as usize];
            for a in 0..order {
                let da = digits(a as u64, p, m as usize);
                for b in 0..order {
                    let db = digits(b as u64, p, m as usize);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * order + b) as usize] = to_index(&s);
                }
            }
            t
        });

        Ok(ExtField { t: Arc::new(Tables { p, m, order, modulus, exp, log, add, digit_weights }) })
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn degree(&self) -> u32 {
        self.t.m
    }

    pub fn order(&self) -> u32 {
        self.t.order
    }

    /// Defining polynomial, coefficients lowest degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.t.order).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.t.order, "index {index} out of range");
        FieldElement(index)
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(a.0 as u64, self.t.p, self.t.m as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FieldElement {
        let mut acc = self.zero();
        let mut power = self.one();
        let x = self.x();
        for &ci in c {
            let term = self.scale_int(&power, ci as i64);
            acc = self.add(&acc, &term);
            power = self.mul(&power, &x);
        }
        acc
    }

    /// Residue class of the polynomial variable.
    pub fn x(&self) -> FieldElement {
        if self.t.m == 1 {
            FieldElement(0)
        } else {
            FieldElement(self.t.p)
        }
    }

    /// The primitive element used to build the log tables.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.t.exp[1 % self.t.exp.len()])
    }

    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.t.log[a.0 as usize])
    }

    pub fn mult_order(&self, a: FieldElement) -> Option<u64> {
        let g = (self.t.order - 1) as u64;
        self.log(a).map(|l| g / gcd(l as u64, g))
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(&a, self.t.p as u64)
    }

    /// Whether `a` lies in the subfield `F_{p^s}`.
    pub fn in_subfield(&self, a: FieldElement, s: u32) -> bool {
        let q = checked_pow(self.t.p as u64, s).unwrap();
        self.pow(&a, q) == a
    }

    /// Elements of the subfield `F_{p^s}`, in index order. Requires `s | m`.
    pub fn subfield(&self, s: u32) -> Result<Vec<FieldElement>> {
        if s == 0 || !self.t.m.is_multiple_of(s) {
            return Err(Error::Invalid(alloc::format!("F_{}^{} has no subfield of degree {s}", self.t.p, self.t.m)));
        }
        Ok(self.elements().filter(|&a| self.in_subfield(a, s)).collect())
    }

    /// A field embedding `small -> self`, given as the image of every element of
    /// `small` in index order. The image of the generator `x` of `small` is the
    /// least root of its defining polynomial.
    pub fn embedding_from(&self, small: &ExtField) -> Result<Vec<FieldElement>> {
        if small.t.p != self.t.p || !self.t.m.is_multiple_of(small.t.m) {
            return Err(Error::Invalid(alloc::format!("cannot embed {small:?} into {self:?}")));
        }
        let root = if small.t.m == 1 {
            self.zero()
        } else {
            self.elements()
                .find(|&r| {
                    let mut acc = self.zero();
                    for &c in small.t.modulus.iter().rev() {
                        acc = self.add(&self.mul(&acc, &r), &self.from_int(c as i64));
                    }
                    acc == self.zero()
                })
                .ok_or_else(|| Error::Invalid("no root of the defining polynomial".into()))?
        };
        Ok(small
            .elements()
            .map(|a| {
                let mut acc = self.zero();
                for &c in small.coeffs(a).iter().rev() {
                    acc = self.add(&self.mul(&acc, &root), &self.from_int(c as i64));
                }
                acc
            })
            .collect())
    }

    /// Coordinates of `a` over the prime field, as integers `0..p`.
    pub fn prime_coords(&self, a: FieldElement) -> Vec<u32> {
        self.coeffs(a)
    }

    /// For an element of the prime field, its integer representative in `0..p`.
    pub fn as_prime(&self, a: FieldElement) -> Option<u32> {
        (a.0 < self.t.p).then_some(a.0)
    }
}

/// The first element (in index order) of multiplicative order exactly `n`.
pub fn element_of_order(field: &ExtField, n: u64) -> Result<FieldElement> {
    let group = (field.order() - 1) as u64;
    if n == 0 || !group.is_multiple_of(n) {
        return Err(Error::OrderNotDividing { n, order: group });
    }
    field.elements().find(|&a| field.mult_order(a) == Some(n)).ok_or(Error::OrderNotDividing { n, order: group })
}

impl Ring for ExtField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let t = &self.t;
        if let Some(table) = &t.add {
            return FieldElement(table[(a.0 * t.order + b.0) as usize]);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &w in &t.digit_weights {
            out += ((x % t.p + y % t.p) % t.p) * w;
            x /= t.p;
            y /= t.p;
        }
        FieldElement(out)
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let t = &self.t;
        let (mut x, mut out) = (a.0, 0u32);
        for &w in &t.digit_weights {
            out += ((t.p - x % t.p) % t.p) * w;
            x /= t.p;
        }
        FieldElement(out)
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let t = &self.t;
        let g = t.order - 1;
        let l = (t.log[a.0 as usize] + t.log[b.0 as usize]) % g;
        FieldElement(t.exp[l as usize])
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.0 == 0
    }

    fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.t.p as i64) as u32)
    }

    fn characteristic(&self) -> u64 {
        self.t.p as u64
    }

    fn inv_int(&self, d: i64) -> Option<FieldElement> {
        self.inv(&self.from_int(d))
    }

    fn pow(&self, a: &FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return FieldElement(0);
        }
        let g = (self.t.order - 1) as u64;
        let l = (self.t.log[a.0 as usize] as u64 * (e % g)) % g;
        FieldElement(self.t.exp[l as usize])
    }
}

impl Field for ExtField {
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let g = self.t.order - 1;
        let l = (g - self.t.log[a.0 as usize]) % g;
        Some(FieldElement(self.t.exp[l as usize]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_are_least_irreducibles() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(make_field(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn element_orders() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(element_of_order(&f5, 4).unwrap(), f5.from_int(2));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(element_of_order(&f4, 3).unwrap(), f4.x());
        assert!(element_of_order(&f5, 3).is_err());
    }

    #[test]
    fn field_axioms_small() {
        for (p, m) in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 1), (2, 4)] {
            let f = make_field(p, m).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                if a != f.zero() {
                    assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
                }
                for &b in &els {
                    assert_eq!(f.add(&a, &b), f.add(&b, &a));
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    for &c in els.iter().step_by(3) {
                        let lhs = f.mul(&a, &f.add(&b, &c));
                        let rhs = f.add(&f.mul(&a, &b), &f.mul(&a, &c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn digit_addition_matches_table() {
        let f = make_field(3, 7).unwrap();
        assert!(f.t.add.is_none());
        let a = f.element(1234);
        let b = f.element(999);
        let ca = f.coeffs(a);
        let cb = f.coeffs(b);
        let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
        assert_eq!(f.coeffs(f.add(&a, &b)), sum);
    }

    #[test]
    fn coeffs_roundtrip_and_x() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        }
        let x = f.x();
        assert_eq!(f.mul(&x, &x), f.from_int(-1));
    }

    #[test]
    fn subfield_embedding() {
        let big = make_field(2, 4).unwrap();
        let small = make_field(2, 2).unwrap();
        let emb = big.embedding_from(&small).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                let s = small.mul(&a, &b);
                assert_eq!(emb[s.index() as usize], big.mul(&emb[a.index() as usize], &emb[b.index() as usize]));
                let s = small.add(&a, &b);
                assert_eq!(emb[s.index() as usize], big.add(&emb[a.index() as usize], &emb[b.index() as usize]));
            }
        }
        assert_eq!(big.subfield(2).unwrap().len(), 4);
        assert!(big.subfield(3).is_err());
    }
}
