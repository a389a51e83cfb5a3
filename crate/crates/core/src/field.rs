//! Exact scalars over the rationals and prime fields.
//!
//! A [`Field`] describes where scalars live; a [`Scalar`] is one exact value.
//! Rationals are kept in lowest terms with a positive denominator and residues
//! are always reduced, so structural equality is field equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// The field a scalar lives in: ℚ or GF(p) for a verified prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Field(Kind);

impl Field {
    pub const fn rationals() -> Self {
        Field(Kind::Rationals)
    }

    /// GF(p). Fails with [`Error::NonPrimeModulus`] unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field(Kind::Prime(p)))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.0, Kind::Rationals)
    }

    /// The prime modulus, or `None` over ℚ.
    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    /// Number of elements, `None` for ℚ.
    pub fn order(&self) -> Option<u64> {
        self.modulus()
    }

    pub fn zero(&self) -> Scalar {
        match self.0 {
            Kind::Rationals => Scalar::Rational(BigRational::zero()),
            Kind::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self.0 {
            Kind::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
            Kind::Prime(p) => Scalar::Residue {
                value: (k as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// The rational `num/den` mapped into this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.0 {
            Kind::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Kind::Prime(p) => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                let d = Scalar::Residue { value: d, modulus: p }.inv()?;
                Ok(&Scalar::Residue { value: n, modulus: p } * &d)
            }
        }
    }

    /// All elements of a finite field in residue order; `None` over ℚ.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        self.modulus().map(|p| {
            (0..p)
                .map(|value| Scalar::Residue { value, modulus: p })
                .collect()
        })
    }

    /// Parse a scalar in the `a` / `a/b` grammar and map it into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let (num, den) = parse_fraction(text)?;
        self.from_fraction(&num, &den)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => write!(f, "q"),
            Kind::Prime(p) => write!(f, "gf {p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `Q`, `gf 7`, `gf7`, `GF(7)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect::<String>()
            .to_ascii_lowercase();
        if t == "q" || t == "rationals" {
            return Ok(Field::rationals());
        }
        if let Some(rest) = t.strip_prefix("gf") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad field modulus in `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::InvalidArgument(format!(
            "unknown field `{s}` (expected `q` or `gf <p>`)"
        )))
    }
}

fn parse_fraction(text: &str) -> Result<(BigInt, BigInt)> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("malformed scalar `{text}`"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits_ok = |s: &str, allow_sign: bool| {
        let body = if allow_sign {
            s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(n, true) {
        return Err(bad());
    }
    let num: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
    let den: BigInt = match d {
        Some(d) if digits_ok(d, false) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((num, den))
}

fn reduce_bigint(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::rationals(),
            Scalar::Residue { modulus, .. } => Field(Kind::Prime(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::FieldMismatch {
            left: self.field().to_string(),
            right: other.field().to_string(),
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                Ok(Scalar::Residue {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                })
            }
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, *modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.inv()?)
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

    /// A square root if one exists in the field.
    ///
    /// Over GF(p) the smaller of the two residues is returned; over ℚ the
    /// non-negative root.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_isqrt(r.numer())?;
                let d = exact_isqrt(r.denom())?;
                Some(Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Residue { value, modulus } => {
                let root = sqrt_mod(*value, *modulus)?;
                let other = (*modulus - root) % *modulus;
                Some(Scalar::Residue {
                    value: root.min(other),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    /// Residue value, or `None` over ℚ.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar field mismatch")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar field mismatch")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n == w {
            return true;
        }
        if n.is_multiple_of(w) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Some square root of `a` modulo the prime `p`, via Euler's criterion and
/// Tonelli–Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    // p - 1 = q * 2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}
