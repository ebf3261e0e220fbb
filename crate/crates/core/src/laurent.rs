//! Laurent polynomials Λ = K[t, t⁻¹] over a cyclotomic field K and their fraction field K(t).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{impl_ring_ops, Domain, Field, Ring};
use crate::scalars::CycloNumber;

/// An element of Λ: `coeffs[i]` is the coefficient of `t^(min_exp + i)`.
///
/// Always trimmed: the first and last coefficients are nonzero, and the zero
/// polynomial has no coefficients and `min_exp == 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<CycloNumber>,
}

impl LaurentPoly {
    pub fn new(min_exp: i64, coeffs: Vec<CycloNumber>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    /// Integer coefficients, lowest power first.
    pub fn from_ints(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| CycloNumber::from_int(c)).collect())
    }

    pub fn constant(c: CycloNumber) -> Self {
        Self::new(0, vec![c])
    }

    pub fn monomial(c: CycloNumber, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        Self::monomial(CycloNumber::one(), 1)
    }

    /// t − c.
    pub fn t_minus(c: CycloNumber) -> Self {
        Self::new(0, vec![-c, CycloNumber::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_exp += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Highest exponent; `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[CycloNumber] {
        &self.coeffs
    }

    /// Coefficient of t^k.
    pub fn coeff(&self, k: i64) -> CycloNumber {
        let idx = k - self.min_exp;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            CycloNumber::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Width of the exponent range; 0 for constants and monomials.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `true` for c·t^k with c ≠ 0, the units of Λ.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// `true` when the polynomial lies in K[t].
    pub fn is_polynomial(&self) -> bool {
        self.min_exp >= 0
    }

    pub fn leading_coeff(&self) -> CycloNumber {
        self.coeffs.last().cloned().unwrap_or_else(CycloNumber::zero)
    }

    pub fn lowest_coeff(&self) -> CycloNumber {
        self.coeffs.first().cloned().unwrap_or_else(CycloNumber::zero)
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { min_exp: self.min_exp + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Split off the power of t: `self = t^k · rest` with `rest` having min_exp 0.
    pub fn strip_t(&self) -> (i64, LaurentPoly) {
        (self.min_exp, self.shift(-self.min_exp))
    }

    /// Apply complex conjugation to every coefficient (t is fixed).
    pub fn conjugate(&self) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(CycloNumber::conjugate).collect())
    }

    /// Least common cyclotomic order of the coefficients.
    pub fn cyclotomic_order(&self) -> u32 {
        use num_integer::Integer;
        self.coeffs.iter().fold(1u32, |acc, c| acc.lcm(&c.order()))
    }

    pub fn eval(&self, x: &CycloNumber) -> Result<CycloNumber> {
        if self.is_zero() {
            return Ok(CycloNumber::zero());
        }
        // Horner on the polynomial part, then multiply by x^min_exp
        let mut acc = CycloNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        let base = if self.min_exp >= 0 { x.clone() } else { x.try_inv()? };
        let mut power = CycloNumber::one();
        for _ in 0..self.min_exp.unsigned_abs() {
            power = &power * &base;
        }
        Ok(&acc * &power)
    }

    /// Value at t = 1.
    pub fn eval_at_one(&self) -> CycloNumber {
        self.coeffs.iter().fold(CycloNumber::zero(), |acc, c| &acc + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &CycloNumber::from_int(self.min_exp + i as i64))
            .collect();
        Self::new(self.min_exp - 1, coeffs)
    }

    /// Scale so the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().try_inv().expect("nonzero leading coefficient");
        self.scale(&inv)
    }

    /// Division with remainder in K[t]. Both operands must be polynomials and `d` nonzero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        debug_assert!(self.is_polynomial() && d.is_polynomial(), "div_rem expects K[t] operands");
        let num_deg = match self.max_exp() {
            None => return Ok((Self::zero(), Self::zero())),
            Some(e) => e,
        };
        let den_deg = d.max_exp().expect("nonzero");
        if num_deg < den_deg {
            return Ok((Self::zero(), self.clone()));
        }
        let dense = |p: &Self, len: usize| -> Vec<CycloNumber> {
            (0..len as i64).map(|k| p.coeff(k)).collect()
        };
        let mut rem = dense(self, num_deg as usize + 1);
        let den = dense(d, den_deg as usize + 1);
        let lead_inv = d.leading_coeff().try_inv()?;
        let dd = den_deg as usize;
        let mut quot = vec![CycloNumber::zero(); num_deg as usize - dd + 1];
        for k in (0..quot.len()).rev() {
            if rem[k + dd].is_zero() {
                continue;
            }
            let c = &rem[k + dd] * &lead_inv;
            for (j, dj) in den.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = &rem[k + j] - &(&c * dj);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(0, quot), Self::new(0, rem)))
    }

    /// Monic greatest common divisor in K[t] of the t-stripped parts; this is also a Λ-gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let (_, mut a) = self.strip_t();
        let (_, mut b) = other.strip_t();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r.strip_t().1.monic());
        }
        a.monic()
    }

    /// Multiplicity of the root t = c.
    pub fn root_multiplicity(&self, c: &CycloNumber) -> usize {
        let mut p = self.strip_t().1;
        let lin = Self::t_minus(c.clone());
        let mut m = 0;
        while !p.is_zero() && p.eval(c).map(|v| v.is_zero()).unwrap_or(false) {
            p = p.div_rem(&lin).expect("linear divisor").0;
            m += 1;
        }
        m
    }

    pub fn to_json(&self) -> PolyJson {
        let order = self.cyclotomic_order();
        PolyJson {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.lift(order).to_string()).collect(),
            cyclotomic_order: order,
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<Self> {
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| CycloNumber::parse(json.cyclotomic_order, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(json.min_exp, coeffs))
    }
}

/// Wire form of a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub min_exp: i64,
    pub coeffs: Vec<String>,
    pub cyclotomic_order: u32,
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(CycloNumber::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let coeffs = (lo..=hi).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Self::new(lo, coeffs)
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![CycloNumber::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.min_exp + other.min_exp, coeffs)
    }
    fn neg(&self) -> Self {
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Domain for LaurentPoly {
    /// Exact division in Λ.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (ka, a) = self.strip_t();
        let (kb, b) = divisor.strip_t();
        let (q, r) = a.div_rem(&b).ok()?;
        r.is_zero().then(|| q.shift(ka - kb))
    }
    fn size_hint(&self) -> usize {
        self.span()
    }
}

impl_ring_ops!(LaurentPoly);

impl From<CycloNumber> for LaurentPoly {
    fn from(c: CycloNumber) -> Self {
        Self::constant(c)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &CycloNumber, first: bool, is_const: bool) -> fmt::Result {
    let text = c.to_string();
    let compound = text.contains(" + ") || text.contains(" - ");
    let (negative, mag) = match (compound, text.strip_prefix('-')) {
        (false, Some(rest)) => (true, rest.to_string()),
        _ => (false, text.clone()),
    };
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else {
        f.write_str(if negative { " - " } else { " + " })?;
    }
    if compound {
        write!(f, "({mag})")?;
        if !is_const {
            f.write_str("*")?;
        }
    } else if mag != "1" || is_const {
        f.write_str(&mag)?;
        if !is_const {
            f.write_str("*")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            write_coeff(f, c, first, e == 0)?;
            first = false;
            match e {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        let order = self.cyclotomic_order();
        if order > 1 {
            write!(f, " [z = ζ_{order}]")?;
        }
        Ok(())
    }
}

/// An element of K(t), kept in lowest terms with a monic denominator in K[t].
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (kn, n) = num.strip_t();
        let (kd, d) = den.strip_t();
        let g = n.gcd(&d);
        let n = n.exact_div(&g).expect("gcd divides numerator");
        let d = d.exact_div(&g).expect("gcd divides denominator");
        let lead = d.leading_coeff().try_inv()?;
        Ok(RatFunc { num: n.scale(&lead).shift(kn - kd), den: d.scale(&lead) })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// `true` when the value is a unit c·t^k of Λ.
    pub fn is_unit(&self) -> bool {
        self.num.is_unit() && self.den.is_one()
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.num.conjugate(), self.den.conjugate()).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &CycloNumber) -> Result<CycloNumber> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.num.eval(x)?.try_div(&d)
    }

    pub fn try_inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(Ring::mul(self, &other.try_inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> RatFuncJson {
        RatFuncJson { num: self.num.to_json(), den: self.den.to_json() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }
    fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(&self.num + &other.num, self.den.clone()).expect("nonzero denominator");
        }
        Self::new(&(&self.num * &other.den) + &(&other.num * &self.den), &self.den * &other.den)
            .expect("nonzero denominator")
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominator")
    }
    fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Domain for RatFunc {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.try_div(divisor).ok()
    }
    fn size_hint(&self) -> usize {
        self.num.span() + self.den.span()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }
}

impl_ring_ops!(RatFunc);

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &LaurentPoly| {
            let s = p.to_string();
            if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        let order = self.num.cyclotomic_order().max(self.den.cyclotomic_order());
        if order > 1 {
            write!(f, " [z = ζ_{order}]")?;
        }
        Ok(())
    }
}

/// The unit class `c·t^k` separating a rational function from its canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitClass {
    pub k: i64,
    pub c: CycloNumber,
}

fn strip_root_at_one(p: &LaurentPoly) -> (usize, LaurentPoly) {
    let mut rest = p.strip_t().1;
    let lin = LaurentPoly::t_minus(CycloNumber::one());
    let mut m = 0;
    while rest.eval_at_one().is_zero() {
        rest = rest.div_rem(&lin).expect("linear divisor").0;
        m += 1;
    }
    (m, rest)
}

/// Multiplicity of (t − 1) in the numerator minus its multiplicity in the denominator.
pub fn order_at_one(f: &RatFunc) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroInput("order_at_one"));
    }
    let (a, _) = strip_root_at_one(&f.num);
    let (b, _) = strip_root_at_one(&f.den);
    Ok(a as i64 - b as i64)
}

/// The value of (t − 1)^(−ord) · f at t = 1.
pub fn leading_at_one(f: &RatFunc) -> Result<CycloNumber> {
    if f.is_zero() {
        return Err(Error::ZeroInput("leading_at_one"));
    }
    let (_, n) = strip_root_at_one(&f.num);
    let (_, d) = strip_root_at_one(&f.den);
    // t-powers evaluate to 1 at t = 1
    n.eval_at_one().try_div(&d.eval_at_one())
}

/// Canonical representative modulo units: numerator and denominator in K[t]
/// with nonzero constant term and leading coefficient 1; `f = c·t^k · canonical`.
pub fn unit_normalize(f: &RatFunc) -> Result<(RatFunc, UnitClass)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("unit_normalize"));
    }
    let (k, rest) = f.num.strip_t();
    let c = rest.leading_coeff();
    let canonical = RatFunc { num: rest.monic(), den: f.den.clone() };
    Ok((canonical, UnitClass { k, c }))
}

/// `true` when `a / b` is a unit of Λ.
pub fn unit_equal(a: &RatFunc, b: &RatFunc) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (false, false) => a.try_div(b).map(|q| q.is_unit()).unwrap_or(false),
        _ => false,
    }
}
