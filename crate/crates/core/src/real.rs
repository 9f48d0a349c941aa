//! Arbitrary-precision reals carrying an error radius.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Rational};

pub const DEFAULT_BITS: u32 = 128;

/// A value `mantissa ± radius`. Radii come from tail models and quadrature
/// error estimates; they are estimates, not certified bounds.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproxReal {
    pub value: Float,
    pub radius: f64,
}

fn ulp_radius(v: &Float) -> f64 {
    // Half a unit in the last place, generously rounded up.
    let prec = v.prec() as i32;
    let mag = v.to_f64().abs();
    if mag == 0.0 {
        0.0
    } else {
        mag * 2f64.powi(-(prec - 2))
    }
}

fn up(x: f64) -> f64 {
    x * (1.0 + 4.0 * f64::EPSILON)
}

impl ApproxReal {
    pub fn new(value: Float, radius: f64) -> Self {
        ApproxReal { value, radius }
    }

    pub fn exact(value: Float) -> Self {
        ApproxReal { value, radius: 0.0 }
    }

    pub fn zero(prec: u32) -> Self {
        Self::exact(Float::new(prec))
    }

    pub fn from_int(prec: u32, v: i64) -> Self {
        Self::exact(Float::with_val(prec, v))
    }

    pub fn from_rational(prec: u32, q: &Rational) -> Self {
        let v = Float::with_val(prec, q);
        let r = ulp_radius(&v);
        ApproxReal::new(v, r)
    }

    pub fn from_f64(prec: u32, x: f64) -> Self {
        Self::exact(Float::with_val(prec, x))
    }

    pub fn pi(prec: u32) -> Self {
        let v = Float::with_val(prec, Constant::Pi);
        let r = ulp_radius(&v);
        ApproxReal::new(v, r)
    }

    pub fn log2(prec: u32) -> Self {
        let v = Float::with_val(prec, Constant::Log2);
        let r = ulp_radius(&v);
        ApproxReal::new(v, r)
    }

    /// Riemann zeta at an integer `s >= 2` (MPFR).
    pub fn riemann_zeta(prec: u32, s: u32) -> Self {
        assert!(s >= 2);
        let v = Float::with_val(prec, Float::zeta_u(s));
        let r = ulp_radius(&v);
        ApproxReal::new(v, r)
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn abs_value(&self) -> f64 {
        self.value.to_f64().abs()
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let v = Float::with_val(self.prec(), &self.value * q);
        let qf = q.to_f64().abs();
        let r = up(self.radius * qf + ulp_radius(&v));
        ApproxReal::new(v, r)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&Rational::from(k))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ApproxReal::from_int(self.prec(), 1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn ln(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.ln_ref());
        let r = up(self.radius / self.abs_value() + ulp_radius(&v));
        ApproxReal::new(v, r)
    }

    pub fn recip(&self) -> Self {
        let v = Float::with_val(self.prec(), self.value.recip_ref());
        let a = self.abs_value();
        let r = up(self.radius / (a * (a - self.radius)).max(f64::MIN_POSITIVE) + ulp_radius(&v));
        ApproxReal::new(v, r)
    }

    /// `|self - other|` as an f64.
    pub fn distance(&self, other: &ApproxReal) -> f64 {
        Float::with_val(self.prec().max(other.prec()), &self.value - &other.value)
            .abs()
            .to_f64_round(Round::Up)
    }

    /// Decimal rendering with `floor(bits * 0.3)` significant digits.
    pub fn digits(&self) -> usize {
        ((self.prec() as f64) * 0.3).floor() as usize
    }

    pub fn to_decimal(&self) -> String {
        let d = self.digits().max(1);
        if self.value.is_zero() {
            return "0".into();
        }
        normalize_decimal(self.value.to_string_radix_round(10, Some(d), Round::Nearest))
    }
}

/// Turns MPFR's `d.ddddde±x` into plain positional notation when the
/// exponent is modest, keeping scientific form otherwise.
fn normalize_decimal(s: String) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.clone(), 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m.to_string()),
        None => (false, mant),
    };
    let (int_part, frac_part) = mant.split_once('.').map_or((mant.clone(), String::new()), |(a, b)| (a.to_string(), b.to_string()));
    let digits: String = format!("{int_part}{frac_part}");
    let point = int_part.len() as i64 + exp;
    if !(-8..=30).contains(&point) {
        return format!("{}{}", if neg { "-" } else { "" }, s.trim_start_matches('-'));
    }
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    format!("{}{}", if neg { "-" } else { "" }, body)
}

impl fmt::Display for ApproxReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.1e}", self.to_decimal(), self.radius)
    }
}

impl<'a> Add<&'a ApproxReal> for &'a ApproxReal {
    type Output = ApproxReal;
    fn add(self, o: &ApproxReal) -> ApproxReal {
        let p = self.prec().max(o.prec());
        let v = Float::with_val(p, &self.value + &o.value);
        let r = up(self.radius + o.radius + ulp_radius(&v));
        ApproxReal::new(v, r)
    }
}

impl<'a> Sub<&'a ApproxReal> for &'a ApproxReal {
    type Output = ApproxReal;
    fn sub(self, o: &ApproxReal) -> ApproxReal {
        let p = self.prec().max(o.prec());
        let v = Float::with_val(p, &self.value - &o.value);
        let r = up(self.radius + o.radius + ulp_radius(&v));
        ApproxReal::new(v, r)
    }
}

impl<'a> Mul<&'a ApproxReal> for &'a ApproxReal {
    type Output = ApproxReal;
    fn mul(self, o: &ApproxReal) -> ApproxReal {
        let p = self.prec().max(o.prec());
        let v = Float::with_val(p, &self.value * &o.value);
        let a = self.abs_value();
        let b = o.abs_value();
        let r = up(a * o.radius + b * self.radius + self.radius * o.radius + ulp_radius(&v));
        ApproxReal::new(v, r)
    }
}

impl Neg for &ApproxReal {
    type Output = ApproxReal;
    fn neg(self) -> ApproxReal {
        ApproxReal::new(Float::with_val(self.prec(), -&self.value), self.radius)
    }
}

impl Add for ApproxReal {
    type Output = ApproxReal;
    fn add(self, o: ApproxReal) -> ApproxReal {
        &self + &o
    }
}

impl Sub for ApproxReal {
    type Output = ApproxReal;
    fn sub(self, o: ApproxReal) -> ApproxReal {
        &self - &o
    }
}

impl Mul for ApproxReal {
    type Output = ApproxReal;
    fn mul(self, o: ApproxReal) -> ApproxReal {
        &self * &o
    }
}

impl Neg for ApproxReal {
    type Output = ApproxReal;
    fn neg(self) -> ApproxReal {
        -&self
    }
}

/// Sum of a list of values.
pub fn sum_all<'a>(prec: u32, items: impl IntoIterator<Item = &'a ApproxReal>) -> ApproxReal {
    items.into_iter().fold(ApproxReal::zero(prec), |acc, x| &acc + x)
}

/// `2^e` for a possibly negative exponent, exactly.
pub fn pow2(e: i32) -> Rational {
    if e >= 0 {
        Rational::from(rug::Integer::from(1) << e as u32)
    } else {
        Rational::from((1, rug::Integer::from(2).pow(e.unsigned_abs())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constants() {
        let z2 = ApproxReal::riemann_zeta(128, 2);
        let pi = ApproxReal::pi(128);
        let pi2_6 = (&pi * &pi).scale_rational(&Rational::from((1, 6)));
        assert!(z2.distance(&pi2_6) < 1e-35);
    }

    #[test]
    fn decimal_rendering() {
        let x = ApproxReal::log2(64);
        assert_eq!(x.digits(), 19);
        assert_eq!(x.to_decimal(), "0.6931471805599453094");
        let y = ApproxReal::from_int(64, -3);
        assert_eq!(y.to_decimal(), "-3.000000000000000000");
        let z = ApproxReal::from_f64(64, 1234.5);
        assert_eq!(z.to_decimal(), "1234.500000000000000");
    }

    #[test]
    fn pow2_values() {
        assert_eq!(pow2(3), Rational::from(8));
        assert_eq!(pow2(-2), Rational::from((1, 4)));
    }

    proptest! {
        #[test]
        fn radii_subadditive(a in -10.0f64..10.0, b in -10.0f64..10.0, ra in 0.0f64..1e-3, rb in 0.0f64..1e-3) {
            let x = ApproxReal::new(Float::with_val(128, a), ra);
            let y = ApproxReal::new(Float::with_val(128, b), rb);
            let s = &x + &y;
            prop_assert!(s.radius >= ra + rb);
            prop_assert!(s.radius <= (ra + rb) * (1.0 + 1e-12) + 1e-30);
            let p = &x * &y;
            // Any pair of points within the input balls multiplies into the output ball.
            for (da, db) in [(ra, rb), (-ra, rb), (ra, -rb), (-ra, -rb)] {
                let q = (a + da) * (b + db);
                prop_assert!((q - a * b).abs() <= p.radius * (1.0 + 1e-9) + 1e-12);
            }
        }
    }
}
