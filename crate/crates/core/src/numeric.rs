//! Multiprecision complex numbers for magnitude reporting.
//!
//! Exact values are only converted to floating point at the very end, to
//! compare absolute values such as |δ|, |τ| or truncated Euler products.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_rational::BigRational;

use crate::scalars::CycloNumber;

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra working bits carried on top of the requested precision.
pub const GUARD_BITS: usize = 64;

/// Default precision for reported magnitudes.
pub const DEFAULT_PRECISION_BITS: usize = 128;

/// Precision plus the constant cache astro-float needs for transcendental functions.
pub struct NumericContext {
    bits: usize,
    consts: Consts,
}

impl fmt::Debug for NumericContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumericContext").field("bits", &self.bits).finish()
    }
}

#[derive(Clone, Debug)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl NumericContext {
    /// `precision_bits` below 53 is raised to 53.
    pub fn new(precision_bits: usize) -> Self {
        let consts = Consts::new().expect("astro-float constant cache");
        NumericContext { bits: precision_bits.max(53), consts }
    }

    pub fn precision_bits(&self) -> usize {
        self.bits
    }

    fn wp(&self) -> usize {
        self.bits + GUARD_BITS
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_i32(0, self.wp())
    }

    pub fn one(&self) -> BigFloat {
        BigFloat::from_i32(1, self.wp())
    }

    pub fn from_i64(&self, v: i64) -> BigFloat {
        BigFloat::from_i64(v, self.wp())
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.wp())
    }

    /// Parse a decimal string such as `"1.25"` or `"3e-4"`.
    pub fn parse(&mut self, text: &str) -> Option<BigFloat> {
        let v = BigFloat::parse(text.trim(), Radix::Dec, self.wp(), RM, &mut self.consts);
        (!v.is_nan()).then_some(v)
    }

    pub fn rational(&mut self, q: &BigRational) -> BigFloat {
        let num = BigFloat::parse(&q.numer().to_string(), Radix::Dec, self.wp(), RM, &mut self.consts);
        let den = BigFloat::parse(&q.denom().to_string(), Radix::Dec, self.wp(), RM, &mut self.consts);
        num.div(&den, self.wp(), RM)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.wp(), RM)
    }

    /// exp(2πi k/n), exact at multiples of a quarter turn.
    pub fn root_of_unity(&mut self, n: u32, k: u32) -> BigComplex {
        let k = k % n;
        if (4 * k) % n == 0 {
            let (re, im) = match 4 * k / n {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return BigComplex { re: self.from_i64(re), im: self.from_i64(im) };
        }
        let p = self.wp();
        let angle = self.pi().mul(&self.from_i64(2 * k as i64), p, RM).div(&self.from_i64(n as i64), p, RM);
        BigComplex { re: angle.cos(p, RM, &mut self.consts), im: angle.sin(p, RM, &mut self.consts) }
    }

    /// Evaluate at ζ_n = exp(2πi/n).
    pub fn embed(&mut self, a: &CycloNumber) -> BigComplex {
        let n = a.order();
        let mut acc = self.complex_zero();
        for (k, c) in a.coords().iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            let w = self.root_of_unity(n, k as u32);
            let c = self.rational(c);
            acc = self.add(&acc, &self.scale(&w, &c));
        }
        acc
    }

    /// |a| under the standard embedding.
    pub fn abs_cyclo(&mut self, a: &CycloNumber) -> BigFloat {
        let z = self.embed(a);
        self.abs(&z)
    }

    pub fn complex_zero(&self) -> BigComplex {
        BigComplex { re: self.zero(), im: self.zero() }
    }

    pub fn complex_one(&self) -> BigComplex {
        BigComplex { re: self.one(), im: self.zero() }
    }

    pub fn add(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.wp();
        BigComplex { re: a.re.add(&b.re, p, RM), im: a.im.add(&b.im, p, RM) }
    }

    pub fn sub(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.wp();
        BigComplex { re: a.re.sub(&b.re, p, RM), im: a.im.sub(&b.im, p, RM) }
    }

    pub fn mul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.wp();
        let re = a.re.mul(&b.re, p, RM).sub(&a.im.mul(&b.im, p, RM), p, RM);
        let im = a.re.mul(&b.im, p, RM).add(&a.im.mul(&b.re, p, RM), p, RM);
        BigComplex { re, im }
    }

    pub fn scale(&self, a: &BigComplex, s: &BigFloat) -> BigComplex {
        let p = self.wp();
        BigComplex { re: a.re.mul(s, p, RM), im: a.im.mul(s, p, RM) }
    }

    pub fn powi(&self, a: &BigComplex, n: u64) -> BigComplex {
        let mut result = self.complex_one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        result
    }

    pub fn abs(&self, a: &BigComplex) -> BigFloat {
        let p = self.wp();
        a.re.mul(&a.re, p, RM).add(&a.im.mul(&a.im, p, RM), p, RM).sqrt(p, RM)
    }

    /// e^z for complex z.
    pub fn exp(&mut self, z: &BigComplex) -> BigComplex {
        let p = self.wp();
        let m = z.re.exp(p, RM, &mut self.consts);
        BigComplex {
            re: m.mul(&z.im.cos(p, RM, &mut self.consts), p, RM),
            im: m.mul(&z.im.sin(p, RM, &mut self.consts), p, RM),
        }
    }

    pub fn real_mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.wp(), RM)
    }

    pub fn real_div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.wp(), RM)
    }

    pub fn real_sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.wp(), RM)
    }

    /// |a − b| / |b|, or |a| when b = 0.
    pub fn relative_error(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        let diff = self.real_sub(a, b).abs();
        if b.is_zero() {
            diff
        } else {
            self.real_div(&diff, &b.abs())
        }
    }

    /// `true` when the relative error of `a` against `b` is below `10^-digits`.
    pub fn agrees(&mut self, a: &BigFloat, b: &BigFloat, digits: u32) -> bool {
        let tol = self.parse(&format!("1e-{digits}")).expect("tolerance literal");
        self.relative_error(a, b).cmp(&tol).is_some_and(|c| c < 0)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(&mut self, v: &BigFloat, digits: usize) -> String {
        if v.is_zero() {
            return "0".into();
        }
        // bits ≈ digits · log2(10)
        let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 8;
        let mut r = v.clone();
        let _ = r.set_precision(bits, RM);
        let text = r.format(Radix::Dec, RM, &mut self.consts).unwrap_or_else(|_| "NaN".into());
        truncate_digits(&text, digits.max(1))
    }

    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        self.to_decimal(v, 20).parse().unwrap_or(f64::NAN)
    }
}

/// Keep `digits` significant digits of a mantissa in `d.ddde±x` form, rounding half up.
fn truncate_digits(text: &str, digits: usize) -> String {
    let (mantissa, exp) = match text.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => return text.to_string(),
    };
    let (sign, body) = mantissa.strip_prefix('-').map_or(("", mantissa), |b| ("-", b));
    let mut ds: Vec<u8> = body.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    if ds.is_empty() {
        return text.to_string();
    }
    let round_up = ds.get(digits).is_some_and(|&d| d >= 5);
    ds.resize(digits, 0);
    let mut exp = exp;
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                ds.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    while ds.len() > 1 && ds.last() == Some(&0) {
        ds.pop();
    }
    let rest: String = ds[1..].iter().map(|d| char::from(b'0' + d)).collect();
    let dot = if rest.is_empty() { "" } else { "." };
    format!("{sign}{}{dot}{rest}e{exp}", ds[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn decimal_rendering_keeps_requested_digits() {
        assert_eq!(truncate_digits("5.7735026918962576450e-1", 5), "5.7735e-1");
        assert_eq!(truncate_digits("9.99996e+0", 5), "1e1");
        assert_eq!(truncate_digits("-1.25e+2", 2), "-1.3e2");
        let mut ctx = NumericContext::new(128);
        let third = ctx.real_div(&ctx.one(), &ctx.from_i64(3));
        assert_eq!(ctx.to_decimal(&third, 10), "3.333333333e-1");
    }

    #[test]
    fn embeds_i_exactly() {
        let mut ctx = NumericContext::new(128);
        let z = ctx.embed(&CycloNumber::zeta(4));
        assert!(z.re.is_zero());
        assert_eq!(z.im.cmp(&ctx.one()), Some(0));
    }

    #[test]
    fn embeds_half_exactly() {
        let mut ctx = NumericContext::new(128);
        let z = ctx.embed(&CycloNumber::from_ratio(1, 2));
        assert_eq!(z.re.cmp(&ctx.from_f64(0.5)), Some(0));
        assert!(z.im.is_zero());
    }

    #[test]
    fn modulus_of_one_plus_i() {
        let mut ctx = NumericContext::new(128);
        let a = CycloNumber::one() + CycloNumber::zeta(4);
        let abs = ctx.abs_cyclo(&a);
        let two = ctx.from_i64(2);
        let sqrt2 = two.sqrt(ctx.wp(), RM);
        assert!(ctx.agrees(&abs, &sqrt2, 36));
    }

    #[test]
    fn primitive_cube_root() {
        let mut ctx = NumericContext::new(160);
        // 1 + ζ₃ + ζ₃² = 0, evaluated numerically
        let w = ctx.embed(&CycloNumber::zeta(3));
        let w2 = ctx.mul(&w, &w);
        let s = ctx.add(&ctx.add(&ctx.complex_one(), &w), &w2);
        let bound = ctx.parse("1e-45").unwrap();
        assert_eq!(ctx.abs(&s).cmp(&bound), Some(-1));
    }

    #[test]
    fn decimal_rendering() {
        let mut ctx = NumericContext::new(128);
        let third = ctx.rational(&BigRational::new(1.into(), 3.into()));
        assert!(ctx.to_decimal(&third, 10).starts_with("3.33333333"));
        assert!((ctx.to_f64(&third) - 1.0 / 3.0).abs() < 1e-15);
    }
}
