//! Exact rational coordinates.
//!
//! Values that fit in a pair of `i64` stay inline and are combined with
//! `i128` intermediates; anything larger is promoted to a boxed
//! [`BigRational`]. Both representations are always kept in lowest terms
//! with a positive denominator, and a value is never stored as `Big` when it
//! fits the inline form, so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone)]
pub struct ExactCoord(Repr);

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl ExactCoord {
    pub fn zero() -> Self {
        ExactCoord(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        ExactCoord(Repr::Small { num: 1, den: 1 })
    }

    pub fn from_int(v: i64) -> Self {
        ExactCoord(Repr::Small { num: v, den: 1 })
    }

    /// `num / den`; panics when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_big(BigRational::new(num, den))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let (mut num, mut den) = if den < 0 {
            match (num.checked_neg(), den.checked_neg()) {
                (Some(n), Some(d)) => (n, d),
                _ => {
                    return Self::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
                }
            }
        } else {
            (num, den)
        };
        let g = if den == 1 { 1 } else { gcd_u128(num.unsigned_abs(), den as u128) };
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => ExactCoord(Repr::Small { num: n, den: d }),
            _ => ExactCoord(Repr::Big(Box::new(BigRational::new_raw(
                BigInt::from(num),
                BigInt::from(den),
            )))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        // BigRational::new already reduced; demote when it fits.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return ExactCoord(Repr::Small { num: n, den: d });
        }
        ExactCoord(Repr::Big(Box::new(r)))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(b) => {
                if b.is_positive() {
                    1
                } else if b.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small { den, .. } => *den == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.to_big().ceil().to_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    /// Nearest `f64`; only for display and sanity checks.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Numerator and denominator as decimal strings.
    pub fn to_decimal_parts(&self) -> (String, String) {
        (self.numer().to_string(), self.denom().to_string())
    }

    pub fn from_decimal_parts(num: &str, den: &str) -> Result<Self, String> {
        let n = BigInt::from_str(num).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Self::from_bigints(n, d))
    }

    pub fn recip(&self) -> Self {
        Self::one() / self
    }

    /// Sign of `a*b - c*d` computed exactly.
    pub fn det2_sign(a: &Self, b: &Self, c: &Self, d: &Self) -> Ordering {
        if let (
            Repr::Small { num: an, den: ad },
            Repr::Small { num: bn, den: bd },
            Repr::Small { num: cn, den: cd },
            Repr::Small { num: dn, den: dd },
        ) = (&a.0, &b.0, &c.0, &d.0)
        {
            // sign(an*bn/(ad*bd) - cn*dn/(cd*dd)) with positive denominators
            let lhs = (*an as i128)
                .checked_mul(*bn as i128)
                .and_then(|v| v.checked_mul((*cd as i128).checked_mul(*dd as i128)?));
            let rhs = (*cn as i128)
                .checked_mul(*dn as i128)
                .and_then(|v| v.checked_mul((*ad as i128).checked_mul(*bd as i128)?));
            if let (Some(l), Some(r)) = (lhs, rhs) {
                return l.cmp(&r);
            }
        }
        (a * b).cmp(&(c * d))
    }
}

impl ExactCoord {
    /// Compares `y` with `a*x + b` exactly.
    pub fn cmp_affine(y: &Self, a: &Self, x: &Self, b: &Self) -> Ordering {
        if let (
            Repr::Small { num: yn, den: yd },
            Repr::Small { num: an, den: ad },
            Repr::Small { num: xn, den: xd },
            Repr::Small { num: bn, den: bd },
        ) = (&y.0, &a.0, &x.0, &b.0)
        {
            // scale everything by yd*bd*ad*xd > 0
            let (yn, yd, an, ad, xn, xd, bn, bd) =
                (*yn as i128, *yd as i128, *an as i128, *ad as i128, *xn as i128, *xd as i128, *bn as i128, *bd as i128);
            let lhs = ad.checked_mul(xd).and_then(|axd| {
                let t1 = yn.checked_mul(bd)?.checked_mul(axd)?;
                let t2 = bn.checked_mul(yd)?.checked_mul(axd)?;
                t1.checked_sub(t2)
            });
            let rhs = an.checked_mul(xn).and_then(|v| v.checked_mul(yd.checked_mul(bd)?));
            if let (Some(l), Some(r)) = (lhs, rhs) {
                return l.cmp(&r);
            }
        }
        y.cmp(&(&(a * x) + b))
    }
}

impl ExactCoord {
    /// Meeting point of `y = a1 x + b1` and `y = a2 x + b2` when all four are
    /// inline integers: `None` if that fast path does not apply, `Some(None)`
    /// for parallel lines.
    pub(crate) fn cramer(a1: &Self, b1: &Self, a2: &Self, b2: &Self) -> Option<Option<(Self, Self)>> {
        let (
            Repr::Small { num: a1, den: 1 },
            Repr::Small { num: b1, den: 1 },
            Repr::Small { num: a2, den: 1 },
            Repr::Small { num: b2, den: 1 },
        ) = (&a1.0, &b1.0, &a2.0, &b2.0)
        else {
            return None;
        };
        let (a1, b1, a2, b2) = (*a1 as i128, *b1 as i128, *a2 as i128, *b2 as i128);
        let d = a1 - a2;
        if d == 0 {
            return Some(None);
        }
        let x = Self::from_i128(b2 - b1, d);
        let y = Self::from_i128(a1.checked_mul(b2)?.checked_sub(a2.checked_mul(b1)?)?, d);
        Some(Some((x, y)))
    }
}

impl Default for ExactCoord {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for ExactCoord {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<i32> for ExactCoord {
    fn from(v: i32) -> Self {
        Self::from_int(v as i64)
    }
}

impl From<BigRational> for ExactCoord {
    fn from(r: BigRational) -> Self {
        Self::from_big(r)
    }
}

impl From<BigInt> for ExactCoord {
    fn from(v: BigInt) -> Self {
        Self::from_big(BigRational::from_integer(v))
    }
}

impl PartialEq for ExactCoord {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => a == c && b == d,
            (Repr::Big(a), Repr::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for ExactCoord {}

impl Hash for ExactCoord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small { num, den } => {
                0u8.hash(state);
                num.hash(state);
                den.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for ExactCoord {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: b }, Repr::Small { num: c, den: d }) => {
                if b == d {
                    a.cmp(c)
                } else {
                    ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for ExactCoord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn add_impl(a: &ExactCoord, b: &ExactCoord, negate_b: bool) -> ExactCoord {
    if let (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) = (&a.0, &b.0) {
        let bn = if negate_b { -(*bn as i128) } else { *bn as i128 };
        if ad == bd {
            return ExactCoord::from_i128(*an as i128 + bn, *ad as i128);
        }
        let l = (*an as i128) * (*bd as i128);
        let r = bn * (*ad as i128);
        if let Some(n) = l.checked_add(r) {
            return ExactCoord::from_i128(n, (*ad as i128) * (*bd as i128));
        }
    }
    let (x, y) = (a.to_big(), b.to_big());
    ExactCoord::from_big(if negate_b { x - y } else { x + y })
}

fn mul_impl(a: &ExactCoord, b: &ExactCoord) -> ExactCoord {
    if let (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) = (&a.0, &b.0) {
        return ExactCoord::from_i128((*an as i128) * (*bn as i128), (*ad as i128) * (*bd as i128));
    }
    ExactCoord::from_big(a.to_big() * b.to_big())
}

fn div_impl(a: &ExactCoord, b: &ExactCoord) -> ExactCoord {
    assert!(!b.is_zero(), "division by zero");
    if let (Repr::Small { num: an, den: ad }, Repr::Small { num: bn, den: bd }) = (&a.0, &b.0) {
        return ExactCoord::from_i128((*an as i128) * (*bd as i128), (*ad as i128) * (*bn as i128));
    }
    ExactCoord::from_big(a.to_big() / b.to_big())
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b ExactCoord> for &'a ExactCoord {
            type Output = ExactCoord;
            fn $m(self, rhs: &'b ExactCoord) -> ExactCoord {
                $body(self, rhs)
            }
        }
        impl $tr<ExactCoord> for ExactCoord {
            type Output = ExactCoord;
            fn $m(self, rhs: ExactCoord) -> ExactCoord {
                $body(&self, &rhs)
            }
        }
        impl<'b> $tr<&'b ExactCoord> for ExactCoord {
            type Output = ExactCoord;
            fn $m(self, rhs: &'b ExactCoord) -> ExactCoord {
                $body(&self, rhs)
            }
        }
        impl<'a> $tr<ExactCoord> for &'a ExactCoord {
            type Output = ExactCoord;
            fn $m(self, rhs: ExactCoord) -> ExactCoord {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl Neg for &ExactCoord {
    type Output = ExactCoord;
    fn neg(self) -> ExactCoord {
        match &self.0 {
            Repr::Small { num, den } => match num.checked_neg() {
                Some(n) => ExactCoord(Repr::Small { num: n, den: *den }),
                None => ExactCoord::from_big(-self.to_big()),
            },
            Repr::Big(b) => ExactCoord::from_big(-(**b).clone()),
        }
    }
}

impl Neg for ExactCoord {
    type Output = ExactCoord;
    fn neg(self) -> ExactCoord {
        -&self
    }
}

impl fmt::Display for ExactCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for ExactCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    n: String,
    d: String,
}

impl Serialize for ExactCoord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (n, d) = self.to_decimal_parts();
        Wire { n, d }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactCoord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        ExactCoord::from_decimal_parts(&w.n, &w.d).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalizes() {
        let a = ExactCoord::from_ratio(6, -4);
        assert_eq!(a.to_decimal_parts(), ("-3".to_string(), "2".to_string()));
        assert_eq!(ExactCoord::from_ratio(0, -7), ExactCoord::zero());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = ExactCoord::from_int(i64::MAX);
        let sq = &m * &m;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &m;
        assert_eq!(back, m);
        assert!(matches!(back.0, Repr::Small { .. }));
        let neg = -ExactCoord::from_int(i64::MIN);
        assert_eq!(neg.numer(), -BigInt::from(i64::MIN));
    }

    #[test]
    fn wire_format() {
        let v = ExactCoord::from_ratio(-5, 3);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"n":"-5","d":"3"}"#);
        let w: ExactCoord = serde_json::from_str(&s).unwrap();
        assert_eq!(v, w);
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(an in any::<i64>(), ad in 1i64..i64::MAX,
                                   bn in any::<i64>(), bd in 1i64..i64::MAX) {
            let (a, b) = (ExactCoord::from_ratio(an, ad), ExactCoord::from_ratio(bn, bd));
            let (x, y) = (big(an, ad), big(bn, bd));
            prop_assert_eq!((&a + &b).to_big(), &x + &y);
            prop_assert_eq!((&a - &b).to_big(), &x - &y);
            prop_assert_eq!((&a * &b).to_big(), &x * &y);
            if bn != 0 {
                prop_assert_eq!((&a / &b).to_big(), &x / &y);
            }
            prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        }

        #[test]
        fn affine_matches_arithmetic(v in proptest::collection::vec((any::<i64>(), 1i64..i64::MAX), 4)) {
            let c: Vec<ExactCoord> = v.iter().map(|&(n, d)| ExactCoord::from_ratio(n, d)).collect();
            let expect = c[0].cmp(&(&(&c[1] * &c[2]) + &c[3]));
            prop_assert_eq!(ExactCoord::cmp_affine(&c[0], &c[1], &c[2], &c[3]), expect);
        }

        #[test]
        fn det2_matches_products(v in proptest::collection::vec((-1_000_000_000i64..1_000_000_000, 1i64..1_000_000), 4)) {
            let c: Vec<ExactCoord> = v.iter().map(|&(n, d)| ExactCoord::from_ratio(n, d)).collect();
            let expect = (&c[0] * &c[1]).cmp(&(&c[2] * &c[3]));
            prop_assert_eq!(ExactCoord::det2_sign(&c[0], &c[1], &c[2], &c[3]), expect);
        }
    }
}
