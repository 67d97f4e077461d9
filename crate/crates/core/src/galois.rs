//! Arithmetic in GF(q) for prime powers 3 <= q <= 64.
//!
//! Units are stored as discrete logarithms relative to a fixed primitive
//! element α, so multiplication is index addition mod q-1. Addition goes
//! through a Zech-logarithm table, `zech[n] = log(1 + α^n)`, built once per
//! field.
//!
//! Elements also have an *integer* form: the coefficient vector of the
//! polynomial representative over GF(p), read as base-p digits (low degree
//! first). For prime fields this is just the residue mod p.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 64;

/// Pinned primitive polynomials for the supported extension fields, as
/// `(q, p, coefficients low-to-high including the leading 1)`.
const PRIMITIVE_POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (4, 2, &[1, 1, 1]),
    (8, 2, &[1, 1, 0, 1]),
    (9, 3, &[2, 2, 1]),
    (16, 2, &[1, 1, 0, 0, 1]),
    (25, 5, &[2, 4, 1]),
    (27, 3, &[1, 2, 0, 1]),
    (32, 2, &[1, 0, 1, 0, 0, 1]),
    (49, 7, &[3, 6, 1]),
    (64, 2, &[1, 1, 0, 0, 0, 0, 1]),
];

/// An element of GF(q): either zero or `α^log` with `log` in `[0, q-2]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(u8::MAX);
    pub const ONE: FieldElement = FieldElement(0);

    pub fn is_zero(self) -> bool {
        self.0 == u8::MAX
    }

    /// Discrete log relative to α, `None` for zero.
    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0 as u32)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => write!(f, "0"),
            Some(l) => write!(f, "α^{l}"),
        }
    }
}

/// GF(q) with its exp/log/Zech tables. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// `exp[i]` = integer form of α^i, i in [0, q-2].
    exp: Vec<u32>,
    /// `log[v]` for v in [1, q-1] (integer form); `log[0]` unused.
    log: Vec<u8>,
    /// `zech[n]` = log(1 + α^n), or `None` when α^n = -1.
    zech: Vec<Option<u8>>,
    /// Log of -1.
    neg_one: u8,
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Builds GF(q).
///
/// Prime fields use arithmetic mod p with the smallest primitive root as α
/// (stored as the degree-one modulus `x - g`). Extension fields use a pinned
/// primitive polynomial so that tables and column orders are reproducible.
pub fn make_field(q: u32) -> Result<FieldSpec> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if !(3..=MAX_ORDER).contains(&q) {
        return Err(Error::UnsupportedOrder(q));
    }
    let modulus = if m == 1 {
        let g = smallest_primitive_root(p);
        vec![(p - g) % p, 1]
    } else {
        PRIMITIVE_POLYNOMIALS
            .iter()
            .find(|(order, _, _)| *order == q)
            .map(|(_, _, coeffs)| coeffs.to_vec())
            .ok_or(Error::UnsupportedOrder(q))?
    };
    FieldSpec::from_modulus(p, m, modulus)
}

fn smallest_primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| {
            let mut x = 1u32;
            for i in 1..p - 1 {
                x = x * g % p;
                if x == 1 {
                    return i == p - 1;
                }
            }
            true
        })
        .unwrap_or(1)
}

impl FieldSpec {
    fn from_modulus(p: u32, m: u32, modulus: Vec<u32>) -> Result<FieldSpec> {
        let q = p.pow(m);
        let units = (q - 1) as usize;
        let mut exp = Vec::with_capacity(units);
        let mut log = vec![u8::MAX; q as usize];
        let mut coeffs = vec![0u32; m as usize];
        coeffs[0] = 1;
        for i in 0..units {
            let v = digits_to_int(&coeffs, p);
            if log[v as usize] != u8::MAX {
                // α has order < q-1.
                return Err(Error::UnsupportedOrder(q));
            }
            log[v as usize] = i as u8;
            exp.push(v);
            times_x(&mut coeffs, &modulus, p);
        }
        if digits_to_int(&coeffs, p) != 1 {
            return Err(Error::UnsupportedOrder(q));
        }

        let mut field = FieldSpec {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            zech: Vec::new(),
            neg_one: 0,
        };
        let minus_one = field.int_neg(1);
        field.neg_one = field.log[minus_one as usize];
        field.zech = (0..units)
            .map(|n| {
                let sum = field.int_add(1, field.exp[n]);
                (sum != 0).then(|| field.log[sum as usize])
            })
            .collect();
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Order of the unit group, q - 1.
    pub fn alpha_order(&self) -> u32 {
        self.q - 1
    }

    /// Primitive polynomial coefficients, low degree first. For prime fields
    /// this is `x - α`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn alpha(&self) -> FieldElement {
        FieldElement(1 % (self.q - 1) as u8)
    }

    /// α^i for any integer i.
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        FieldElement(i.rem_euclid((self.q - 1) as i64) as u8)
    }

    /// Element from its integer form (reduced mod q).
    pub fn from_int(&self, v: u32) -> FieldElement {
        let v = v % self.q;
        if v == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.log[v as usize])
        }
    }

    pub fn to_int(&self, a: FieldElement) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.exp[l as usize],
        }
    }

    /// All q elements, zero first then α^0, α^1, ...
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        std::iter::once(FieldElement::ZERO).chain(self.units())
    }

    /// The units α^0, ..., α^(q-2) in log order.
    pub fn units(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q - 1).map(|i| FieldElement(i as u8))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (Some(la), Some(lb)) = (a.log(), b.log()) else {
            return if a.is_zero() { b } else { a };
        };
        let order = self.q - 1;
        let diff = (lb + order - la) % order;
        match self.zech[diff as usize] {
            None => FieldElement::ZERO,
            Some(z) => FieldElement(((la + z as u32) % order) as u8),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match a.log() {
            None => a,
            Some(l) => FieldElement(((l + self.neg_one as u32) % (self.q - 1)) as u8),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match (a.log(), b.log()) {
            (Some(la), Some(lb)) => FieldElement(((la + lb) % (self.q - 1)) as u8),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        let l = a.log().ok_or(Error::DivisionByZero)?;
        let order = self.q - 1;
        Ok(FieldElement(((order - l) % order) as u8))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer e. Exponents on units are reduced mod q-1;
    /// `0^0 = 1` and negative powers of zero fail.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        match a.log() {
            Some(l) => Ok(self.alpha_pow(l as i64 * e)),
            None if e == 0 => Ok(FieldElement::ONE),
            None if e > 0 => Ok(FieldElement::ZERO),
            None => Err(Error::DivisionByZero),
        }
    }

    /// All units y with y^t = a. Either empty or of size gcd(t, q-1).
    pub fn solve_power(&self, t: u32, a: FieldElement) -> Result<Vec<FieldElement>> {
        let target = a.log().ok_or(Error::ZeroArgument)?;
        if t == 0 {
            return Err(Error::InvalidParams("power exponent must be >= 1".into()));
        }
        let order = self.q - 1;
        let g = t.gcd(&order);
        if target % g != 0 {
            return Ok(Vec::new());
        }
        // t*y ≡ target (mod order): one solution mod order/g, then g lifts.
        let reduced = order / g;
        let base = if reduced == 1 {
            0
        } else {
            let inv = mod_inverse((t / g) as i64, reduced as i64).unwrap_or(0);
            ((target / g) as i64 * inv).rem_euclid(reduced as i64) as u32
        };
        Ok((0..g)
            .map(|j| FieldElement((base + j * reduced) as u8))
            .collect())
    }

    /// The image of the power map y -> y^t on the unit group, in log order.
    ///
    /// This is the subgroup of index gcd(t, q-1). The map is a group
    /// homomorphism of the units; it is a field automorphism only when t is
    /// a power of p.
    pub fn power_image(&self, t: u32) -> Vec<FieldElement> {
        let g = t.gcd(&(self.q - 1));
        (0..self.q - 1)
            .filter(|l| l % g == 0)
            .map(|l| FieldElement(l as u8))
            .collect()
    }

    /// Index used by the lookup-table kernels: log for units, q-1 for zero.
    #[inline]
    pub(crate) fn slot(&self, a: FieldElement) -> u8 {
        if a.is_zero() {
            (self.q - 1) as u8
        } else {
            a.0
        }
    }

    #[inline]
    pub(crate) fn slot_element(&self, s: u8) -> FieldElement {
        if s as u32 == self.q - 1 {
            FieldElement::ZERO
        } else {
            FieldElement(s)
        }
    }

    /// Dense q x q addition and multiplication tables over slots.
    pub(crate) fn slot_tables(&self) -> SlotTables {
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let ea = self.slot_element(a as u8);
                let eb = self.slot_element(b as u8);
                add[a * q + b] = self.slot(self.add(ea, eb));
                mul[a * q + b] = self.slot(self.mul(ea, eb));
            }
        }
        SlotTables {
            q,
            zero: (q - 1) as u8,
            add,
            mul,
        }
    }

    fn int_add(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn int_neg(&self, a: u32) -> u32 {
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }
}

pub(crate) struct SlotTables {
    q: usize,
    pub(crate) zero: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
}

impl SlotTables {
    #[inline(always)]
    pub(crate) fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub(crate) fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }
}

fn digits_to_int(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// coeffs <- coeffs * x mod `modulus` (monic, degree = coeffs.len()).
fn times_x(coeffs: &mut [u32], modulus: &[u32], p: u32) {
    let m = coeffs.len();
    let top = coeffs[m - 1];
    for i in (1..m).rev() {
        coeffs[i] = coeffs[i - 1];
    }
    coeffs[0] = 0;
    for i in 0..m {
        coeffs[i] = (coeffs[i] + (p - top * modulus[i] % p)) % p;
    }
}

/// Inverse of a mod n, if it exists.
pub fn mod_inverse(a: i64, n: i64) -> Option<i64> {
    if n == 1 {
        return Some(0);
    }
    let egcd = a.rem_euclid(n).extended_gcd(&n);
    (egcd.gcd == 1).then(|| egcd.x.rem_euclid(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        make_field(q).unwrap()
    }

    #[test]
    fn gf5_alpha_is_two() {
        let f = gf(5);
        let powers: Vec<u32> = (0..4).map(|i| f.to_int(f.alpha_pow(i))).collect();
        assert_eq!(powers, vec![1, 2, 4, 3]);
    }

    #[test]
    fn rejects_non_prime_powers_and_out_of_range() {
        assert!(matches!(make_field(6), Err(Error::NotPrimePower(6))));
        assert!(matches!(make_field(12), Err(Error::NotPrimePower(12))));
        assert!(matches!(make_field(1), Err(Error::NotPrimePower(1))));
        assert!(matches!(make_field(2), Err(Error::UnsupportedOrder(2))));
        assert!(matches!(make_field(67), Err(Error::UnsupportedOrder(67))));
        assert!(matches!(make_field(81), Err(Error::UnsupportedOrder(81))));
    }

    #[test]
    fn gf8_uses_x3_x_1() {
        let f = gf(8);
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.alpha_order(), 7);
        // x generates all seven units: check by polynomial arithmetic on bit
        // patterns, independent of the tables.
        let mut v = 1u32;
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..7 {
            seen.insert(v);
            v <<= 1;
            if v & 0b1000 != 0 {
                v ^= 0b1011;
            }
        }
        assert_eq!(v, 1);
        assert_eq!(seen.len(), 7);
        for (i, &e) in f.exp.iter().enumerate() {
            assert_eq!(f.from_int(e), f.alpha_pow(i as i64));
        }
    }

    #[test]
    fn every_supported_order_builds() {
        for q in 3..=MAX_ORDER {
            match make_field(q) {
                Ok(f) => {
                    assert_eq!(f.order(), q);
                    let distinct: std::collections::BTreeSet<_> = f.exp.iter().collect();
                    assert_eq!(distinct.len() as u32, q - 1, "q={q}");
                }
                Err(Error::NotPrimePower(_)) => assert!(prime_power(q).is_none()),
                Err(e) => panic!("q={q}: {e}"),
            }
        }
    }

    #[test]
    fn inverse_and_power_examples() {
        let f = gf(5);
        let two = f.from_int(2);
        assert_eq!(f.to_int(f.pow(two, -1).unwrap()), 3);
        assert_eq!(f.to_int(f.inv(two).unwrap()), 3);
        assert!(matches!(
            f.inv(FieldElement::ZERO),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            f.pow(FieldElement::ZERO, -2),
            Err(Error::DivisionByZero)
        ));
        assert_eq!(f.pow(FieldElement::ZERO, 0).unwrap(), FieldElement::ONE);
        for x in f.units() {
            assert_eq!(f.pow(x, 0).unwrap(), FieldElement::ONE);
        }
        let f7 = gf(7);
        assert_eq!(f7.pow(f7.from_int(3), 6).unwrap(), FieldElement::ONE);
    }

    #[test]
    fn prime_field_matches_integer_arithmetic() {
        for q in [3u32, 5, 7, 11, 13] {
            let f = gf(q);
            for a in 0..q {
                for b in 0..q {
                    let (ea, eb) = (f.from_int(a), f.from_int(b));
                    assert_eq!(f.to_int(f.add(ea, eb)), (a + b) % q);
                    assert_eq!(f.to_int(f.mul(ea, eb)), (a * b) % q);
                    assert_eq!(f.to_int(f.sub(ea, eb)), (a + q - b) % q);
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let f = gf(q);
            let all: Vec<_> = f.elements().collect();
            for &a in &all {
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                    assert_eq!(f.alpha_pow(a.log().unwrap() as i64), a);
                }
                for &b in &all {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for &c in &all {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs, "q={q}");
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn solve_power_examples() {
        let f = gf(7);
        let ints = |v: Vec<FieldElement>| {
            let mut out: Vec<u32> = v.into_iter().map(|e| f.to_int(e)).collect();
            out.sort();
            out
        };
        assert_eq!(ints(f.solve_power(2, f.from_int(2)).unwrap()), vec![3, 4]);
        assert!(f.solve_power(2, f.from_int(3)).unwrap().is_empty());
        assert!(matches!(
            f.solve_power(2, FieldElement::ZERO),
            Err(Error::ZeroArgument)
        ));
        let f5 = gf(5);
        let sols = f5.solve_power(1, f5.from_int(4)).unwrap();
        assert_eq!(
            sols.iter().map(|&e| f5.to_int(e)).collect::<Vec<_>>(),
            vec![4]
        );
    }

    #[test]
    fn power_image_examples() {
        let f = gf(7);
        let mut cubes: Vec<u32> = f.power_image(3).into_iter().map(|e| f.to_int(e)).collect();
        cubes.sort();
        assert_eq!(cubes, vec![1, 6]);
        assert_eq!(gf(5).power_image(3).len(), 4);
        let f9 = gf(9);
        let squares: std::collections::BTreeSet<_> = f9.units().map(|y| f9.mul(y, y)).collect();
        let image: std::collections::BTreeSet<_> = f9.power_image(2).into_iter().collect();
        assert_eq!(image, squares);
        assert_eq!(image.len(), 4);
    }

    #[test]
    fn solve_power_matches_enumeration() {
        for q in [4u32, 5, 7, 8, 9, 13, 16] {
            let f = gf(q);
            for t in 1..=2 * q {
                let g = t.gcd(&(q - 1)) as usize;
                let mut total = 0;
                for a in f.units() {
                    let mut brute: Vec<_> = f
                        .units()
                        .filter(|&y| f.pow(y, t as i64).unwrap() == a)
                        .collect();
                    let mut got = f.solve_power(t, a).unwrap();
                    brute.sort();
                    got.sort();
                    assert_eq!(got, brute, "q={q} t={t}");
                    assert!(got.is_empty() || got.len() == g);
                    total += got.len();
                }
                assert_eq!(total as u32, q - 1);
                assert_eq!(f.power_image(t), f.power_image(g as u32));
            }
        }
    }
}
