//! Exact scalars over the rationals or a prime field.
//!
//! A [`Scalar`] carries its own field tag. Mixing a rational with a residue,
//! or residues of different moduli, is a programming error and panics: every
//! object in a session lives over the single [`Field`] it was built with.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field `F_p`. Rejects composite moduli and `p >= 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a supported prime modulus")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(p as i64) as u64, p),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        self.from_i64(num) / self.from_i64(den)
    }

    /// Parses `"a"`, `"-a"` or `"a/b"`. Over `F_p` the fraction is reduced mod p.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Input(format!("malformed scalar {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |v: &BigInt| -> u64 {
                    let r = v.mod_floor(&pb);
                    r.to_string().parse().expect("residue fits in u64")
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(Error::Input(format!("denominator of {text:?} vanishes mod {p}")));
                }
                Ok(Scalar::Mod(reduce(&num), p) / Scalar::Mod(d, p))
            }
        }
    }

    /// A primitive `n`-th root of unity, if the field has one.
    pub fn primitive_root_of_unity(self, n: u64) -> Option<Scalar> {
        match self {
            Field::Rational => match n {
                1 => Some(self.one()),
                2 => Some(self.from_i64(-1)),
                _ => None,
            },
            Field::Prime(p) => {
                if n == 0 || (p - 1) % n != 0 {
                    return None;
                }
                (1..p).map(|v| Scalar::Mod(v, p)).find(|z| {
                    z.pow(n).is_one() && (1..n).all(|d| n % d != 0 || !z.pow(d).is_one())
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Residue `value mod p`, with `value < p`.
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(mod_pow(*v, p - 2, *p), *p),
        }
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Serialized form: `"a"` or `"a/b"` for rationals, the residue for `F_p`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod((a + b) % p, *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod((a + p - b) % p, *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => Scalar::Mod(mul_mod(*a, *b, *p), *p),
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a, p) => Scalar::Mod((p - a) % p, *p),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => *a = (*a + b) % *p,
            _ => mismatch(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => *a -= b,
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) if p == q => *a = (*a + *p - b) % *p,
            _ => mismatch(self, rhs),
        }
    }
}

impl Scalar {
    /// `self += a * b`, the inner step of every elimination loop.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (Scalar::Mod(s, p), Scalar::Mod(x, _), Scalar::Mod(y, _)) => {
                *s = ((*s as u128 + *x as u128 * *y as u128) % *p as u128) as u64
            }
            _ => *self += &(a * b),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_print() {
        let q = Field::Rational;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse("7").unwrap().to_string(), "7");
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!((&a * &a.inv()), f.one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f = Field::prime(7).unwrap();
        let q = f.primitive_root_of_unity(3).unwrap();
        assert!(q.pow(3).is_one() && !q.is_one());
        assert_eq!(q, f.from_i64(2));
        assert!(Field::prime(5).unwrap().primitive_root_of_unity(3).is_none());
        assert_eq!(Field::Rational.primitive_root_of_unity(2), Some(Field::Rational.from_i64(-1)));
    }
}
