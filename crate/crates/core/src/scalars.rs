//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! An element is stored by its coordinates in the power basis
//! `1, ζ, …, ζ^(φ(n)−1)` of `Q[x]/(Φ_n(x))`. Coordinates are always reduced,
//! so equality of two elements of the same order is coordinate equality.
//! Elements of different orders are compared and combined after lifting both
//! to the cyclotomic field of the least common multiple of the orders.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{impl_ring_ops, Domain, Field, Ring};

type Q = BigRational;

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    assert!(n > 0, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d(x)
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = int_exact_div(&p, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(p);
    cache.write().expect("cyclotomic cache poisoned").insert(n, p.clone());
    p
}

/// Euler's totient, the degree of Φ_n.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn int_exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Reduce a dense rational polynomial modulo the monic integer polynomial `modulus`.
fn reduce_mod(mut p: Vec<Q>, modulus: &[i64]) -> Vec<Q> {
    let d = modulus.len() - 1;
    if p.len() > d {
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = p[k].clone();
            for (j, &mj) in modulus.iter().enumerate().take(d) {
                if mj != 0 {
                    p[k - d + j] -= &c * Q::from_integer(BigInt::from(mj));
                }
            }
            p[k] = Q::zero();
        }
    }
    p.resize(d, Q::zero());
    p
}

fn trim(p: &mut Vec<Q>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Division with remainder of dense rational polynomials; `den` must be nonzero and trimmed.
fn qpoly_div_rem(num: &[Q], den: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut rem = num.to_vec();
    trim(&mut rem);
    let dd = den.len() - 1;
    let lead_inv = den[dd].recip();
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Q::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dd] * &lead_inv;
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    trim(&mut rem);
    (quot, rem)
}

fn qpoly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    out
}

fn qpoly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    trim(&mut out);
    out
}

/// An exact element of the cyclotomic field Q(ζ_n).
#[derive(Clone)]
pub struct CycloNumber {
    order: u32,
    coords: Vec<Q>,
}

impl CycloNumber {
    /// Build from power-basis coordinates of arbitrary length; reduces modulo Φ_n.
    pub fn from_coords(order: u32, coords: Vec<Q>) -> Self {
        let phi = cyclotomic_polynomial(order);
        CycloNumber { order, coords: reduce_mod(coords, &phi) }
    }

    pub fn from_rational(q: Q) -> Self {
        CycloNumber { order: 1, coords: vec![q] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Q::new(BigInt::from(num), BigInt::from(den)))
    }

    /// ζ_n^k for any integer k.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut coords = vec![Q::zero(); e + 1];
        coords[e] = Q::one();
        Self::from_coords(order, coords)
    }

    /// The primitive root ζ_n = exp(2πi/n).
    pub fn zeta(order: u32) -> Self {
        Self::root_of_unity(order, 1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// The rational value, if this element lies in Q.
    pub fn to_rational(&self) -> Option<Q> {
        // 1 is the only power-basis element in Q for n > 2; for n ≤ 2 the basis is {1}.
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords.first().cloned().unwrap_or_else(Q::zero))
        } else {
            None
        }
    }

    /// Embed into Q(ζ_target). `target` must be a multiple of the current order.
    pub fn lift(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "cannot lift order {} to {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut coords = vec![Q::zero(); (self.coords.len().max(1) - 1) * step + 1];
        for (k, c) in self.coords.iter().enumerate() {
            coords[k * step] = c.clone();
        }
        Self::from_coords(target, coords)
    }

    /// Recover the representative in Q(ζ_target) of an element known to lie in that subfield.
    /// `target` must divide the current order; returns `None` if the element is not in the subfield.
    pub fn project(&self, target: u32) -> Option<Self> {
        if self.order % target != 0 {
            return None;
        }
        if target == self.order {
            return Some(self.clone());
        }
        let small = totient(target);
        let big = totient(self.order);
        // columns: lifts of the basis powers of the subfield
        let columns: Vec<Vec<Q>> =
            (0..small).map(|j| Self::root_of_unity(target, j as i64).lift(self.order).coords).collect();
        // augmented system big × (small + 1), Gaussian elimination over Q
        let mut rows: Vec<Vec<Q>> = (0..big)
            .map(|r| {
                let mut row: Vec<Q> = columns.iter().map(|c| c[r].clone()).collect();
                row.push(self.coords[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..small {
            let Some(p) = (pivot_row..big).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(pivot_row, p);
            let inv = rows[pivot_row][col].recip();
            for v in rows[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..big {
                if r != pivot_row && !rows[r][col].is_zero() {
                    let f = rows[r][col].clone();
                    for c in 0..=small {
                        let delta = &f * &rows[pivot_row][c];
                        rows[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|r| !r[small].is_zero()) {
            return None;
        }
        let mut coords = vec![Q::zero(); small];
        for (r, &col) in pivots.iter().enumerate() {
            coords[col] = rows[r][small].clone();
        }
        Some(CycloNumber { order: target, coords })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            (self.clone(), other.clone())
        } else {
            let l = lcm(self.order, other.order);
            (self.lift(l), other.lift(l))
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        if self.order == other.order {
            let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect();
            return CycloNumber { order: self.order, coords };
        }
        let (a, b) = self.aligned(other);
        a.zip_with(&b, f)
    }

    /// The automorphism ζ ↦ ζ⁻¹, i.e. complex conjugation under every embedding.
    pub fn conjugate(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut coords = vec![Q::zero(); n];
        for (k, c) in self.coords.iter().enumerate() {
            coords[(n - k) % n] += c;
        }
        Self::from_coords(self.order, coords)
    }

    pub fn scale(&self, q: &Q) -> Self {
        CycloNumber { order: self.order, coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(CycloNumber { order: self.order, coords: reduce_mod(vec![q.recip()], &cyclotomic_polynomial(self.order)) });
        }
        let phi: Vec<Q> = cyclotomic_polynomial(self.order).iter().map(|&c| Q::from_integer(c.into())).collect();
        let mut a = self.coords.clone();
        trim(&mut a);
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1): (Vec<Q>, Vec<Q>) = (Vec::new(), vec![Q::one()]);
        while !r1.is_empty() {
            let (q, r) = qpoly_div_rem(&r0, &r1);
            let s2 = qpoly_sub(&s0, &qpoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible
        if r0.len() != 1 {
            return Err(Error::Internal("cyclotomic inverse: gcd with Φ_n is not constant".into()));
        }
        let c = r0[0].recip();
        let s = s0.into_iter().map(|v| v * &c).collect();
        Ok(Self::from_coords(self.order, s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(Ring::mul(self, &other.try_inv()?))
    }

    /// Parse a literal such as `"1/2 + 1/2*z^2"`, where `z` denotes ζ_order.
    pub fn parse(order: u32, text: &str) -> Result<Self> {
        parse_literal(order, text)
    }
}

impl Ring for CycloNumber {
    fn zero() -> Self {
        CycloNumber { order: 1, coords: vec![Q::zero()] }
    }
    fn one() -> Self {
        CycloNumber { order: 1, coords: vec![Q::one()] }
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }
    fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }
    fn mul(&self, other: &Self) -> Self {
        if self.order != other.order {
            let (a, b) = self.aligned(other);
            return Ring::mul(&a, &b);
        }
        if self.coords.len() == 1 {
            return other.scale(&self.coords[0]);
        }
        if other.coords.len() == 1 {
            return self.scale(&other.coords[0]);
        }
        let prod = qpoly_mul(&self.coords, &other.coords);
        CycloNumber { order: self.order, coords: reduce_mod(prod, &cyclotomic_polynomial(self.order)) }
    }
    fn neg(&self) -> Self {
        CycloNumber { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }
    fn is_one(&self) -> bool {
        self.coords.first().is_some_and(One::is_one) && self.coords.iter().skip(1).all(Zero::is_zero)
    }
}

impl Domain for CycloNumber {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.try_div(divisor).ok()
    }
    fn size_hint(&self) -> usize {
        0
    }
}

impl Field for CycloNumber {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl_ring_ops!(CycloNumber);

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coords == other.coords
        } else {
            let (a, b) = self.aligned(other);
            a.coords == b.coords
        }
    }
}

impl Eq for CycloNumber {}

impl From<i64> for CycloNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Q> for CycloNumber {
    fn from(q: Q) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&power)?,
                _ => write!(f, "{mag}*{power}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "{self}")
        } else {
            write!(f, "[{self}]_{}", self.order)
        }
    }
}

/// Parse a decimal rational `a`, `a/b`, or `-a/b`.
pub(crate) fn parse_rational(text: &str) -> Option<Q> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

fn parse_literal(order: u32, text: &str) -> Result<CycloNumber> {
    if order == 0 {
        return Err(Error::parse(text, "cyclotomic order must be positive"));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse(text, "empty cyclotomic literal"));
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);

    let mut acc = vec![Q::zero(); 1];
    for raw in terms {
        let (sign, body) = match raw.strip_prefix('-') {
            Some(rest) => (-Q::one(), rest),
            None => (Q::one(), raw.strip_prefix('+').unwrap_or(&raw)),
        };
        if body.is_empty() {
            return Err(Error::parse(text, format!("dangling sign in {raw:?}")));
        }
        let (coef, power) = match body.find('z') {
            None => (
                parse_rational(body).ok_or_else(|| Error::parse(text, format!("bad rational {body:?}")))?,
                0usize,
            ),
            Some(pos) => {
                let coef_part = body[..pos].trim_end_matches('*');
                let coef = if coef_part.is_empty() {
                    Q::one()
                } else {
                    parse_rational(coef_part).ok_or_else(|| Error::parse(text, format!("bad coefficient {coef_part:?}")))?
                };
                let rest = &body[pos + 1..];
                let power = if rest.is_empty() {
                    1i64
                } else {
                    let exp = rest.strip_prefix('^').ok_or_else(|| Error::parse(text, format!("unexpected {rest:?}")))?;
                    exp.parse::<i64>().map_err(|_| Error::parse(text, format!("bad exponent {exp:?}")))?
                };
                (coef, power.rem_euclid(order as i64) as usize)
            }
        };
        if acc.len() <= power {
            acc.resize(power + 1, Q::zero());
        }
        acc[power] += sign * coef;
    }
    Ok(CycloNumber::from_coords(order, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, s: &str) -> CycloNumber {
        CycloNumber::parse(n, s).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(105), 48);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloNumber::zeta(4);
        assert_eq!(&i * &i, CycloNumber::from_int(-1));
    }

    #[test]
    fn additive_identity() {
        let a = z(5, "1/2 + 3*z^3");
        assert_eq!(&a + &CycloNumber::zero(), a);
    }

    #[test]
    fn one_plus_zeta3_times_conjugate() {
        // (1+ζ)(1+ζ²) = 1 + ζ + ζ² + ζ³ = 1 + (ζ + ζ² + 1) = 1 mod Φ₃
        let a = z(3, "1 + z");
        let b = z(3, "1 + z^2");
        assert_eq!(&a * &b, CycloNumber::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(CycloNumber::one().try_div(&CycloNumber::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = z(7, "2 - z + 1/3*z^4");
        let inv = a.try_inv().unwrap();
        assert_eq!(&a * &inv, CycloNumber::one());
    }

    #[test]
    fn conjugation() {
        let i = CycloNumber::zeta(4);
        assert_eq!(i.conjugate(), -&i);
        let q = CycloNumber::from_ratio(3, 7);
        assert_eq!(q.conjugate(), q);
        let a = z(9, "1 + 2*z - z^5");
        assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn mixed_orders_lift_to_lcm() {
        let w = CycloNumber::zeta(3);
        let i = CycloNumber::zeta(4);
        let p = &w * &i;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycloNumber::root_of_unity(12, 7));
        // ζ₆² = ζ₃
        assert_eq!(CycloNumber::root_of_unity(6, 2), w);
    }

    #[test]
    fn lift_then_project() {
        let a = z(3, "1/2 - 5*z");
        let lifted = a.lift(15);
        assert_eq!(lifted.order(), 15);
        assert_eq!(lifted.project(3).unwrap().coords(), a.coords());
        assert!(CycloNumber::zeta(5).lift(15).project(3).is_none());
    }

    #[test]
    fn literal_parsing_and_printing() {
        let a = z(4, "1/2 + 1/2*z^2");
        // z^2 = -1 in Q(i)
        assert_eq!(a, CycloNumber::zero());
        let b = z(5, "-z + 3/4 - 2z^3");
        assert_eq!(b.to_string(), "3/4 - z - 2*z^3");
        assert_eq!(z(3, "z^-1"), z(3, "z^2"));
        assert!(CycloNumber::parse(3, "1 + y").is_err());
        assert!(CycloNumber::parse(3, "1/0").is_err());
        assert_eq!(z(8, "z^4").to_string(), "-1");
    }
}
