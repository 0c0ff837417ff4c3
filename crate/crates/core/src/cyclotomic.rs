//! Exact arithmetic in the cyclotomic field `Q(w)`, `w` a primitive p-th root of
//! unity, `p` prime.
//!
//! Elements are stored in the basis `1, w, ..., w^(p-2)`; products are reduced
//! with `w^(p-1) = -(1 + w + ... + w^(p-2))`. For `p = 2` the field is `Q` and
//! `w = -1`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("conductor {0} is not prime")]
    NotPrime(u32),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse cyclotomic number {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    p: u32,
    coeffs: Vec<BigRational>,
}

fn check_prime(p: u32) -> Result<(), CyclotomicError> {
    if crate::is_prime(p as u64) {
        Ok(())
    } else {
        Err(CyclotomicError::NotPrime(p))
    }
}

impl Cyclotomic {
    pub fn zero(p: u32) -> Result<Self, CyclotomicError> {
        check_prime(p)?;
        Ok(Self::zero_unchecked(p))
    }

    pub(crate) fn zero_unchecked(p: u32) -> Self {
        Cyclotomic { p, coeffs: vec![BigRational::zero(); (p - 1) as usize] }
    }

    pub fn one(p: u32) -> Result<Self, CyclotomicError> {
        Self::from_rational(p, BigRational::one())
    }

    pub fn from_rational(p: u32, q: BigRational) -> Result<Self, CyclotomicError> {
        check_prime(p)?;
        let mut x = Self::zero_unchecked(p);
        x.coeffs[0] = q;
        Ok(x)
    }

    pub fn from_integer(p: u32, n: i64) -> Result<Self, CyclotomicError> {
        Self::from_rational(p, BigRational::from_integer(BigInt::from(n)))
    }

    /// `w^e`, with `e` taken modulo `p`.
    pub fn root_of_unity(p: u32, e: i64) -> Result<Self, CyclotomicError> {
        check_prime(p)?;
        Ok(Self::root_unchecked(p, e.rem_euclid(p as i64) as u32))
    }

    pub(crate) fn root_unchecked(p: u32, e: u32) -> Self {
        let mut x = Self::zero_unchecked(p);
        let e = (e % p) as usize;
        if e < (p - 1) as usize {
            x.coeffs[e] = BigRational::one();
        } else {
            for c in x.coeffs.iter_mut() {
                *c = -BigRational::one();
            }
        }
        x
    }

    /// Builds `sum_i coeffs[i] w^i` for an arbitrary number of terms; exponents
    /// are reduced modulo `p` and then canonicalized.
    pub fn from_power_coeffs(p: u32, coeffs: &[BigRational]) -> Result<Self, CyclotomicError> {
        check_prime(p)?;
        let mut full = vec![BigRational::zero(); p as usize];
        for (i, c) in coeffs.iter().enumerate() {
            full[i % p as usize] += c;
        }
        Ok(Self::from_full(p, full))
    }

    /// `full` holds `p` coefficients of `1, w, ..., w^(p-1)`.
    fn from_full(p: u32, mut full: Vec<BigRational>) -> Self {
        let top = full.pop().expect("p >= 2");
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Cyclotomic { p, coeffs: full }
    }

    pub fn conductor(&self) -> u32 {
        self.p
    }

    /// Coordinates in the basis `1, w, ..., w^(p-2)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Brings `other` to this conductor when possible; rationals embed everywhere.
    fn align(&self, other: &Cyclotomic) -> Result<Option<Cyclotomic>, CyclotomicError> {
        if self.p == other.p {
            return Ok(None);
        }
        if other.is_rational() {
            let mut x = Self::zero_unchecked(self.p);
            x.coeffs[0] = other.coeffs[0].clone();
            return Ok(Some(x));
        }
        Err(CyclotomicError::ConductorMismatch(self.p, other.p))
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic, CyclotomicError> {
        if self.p != other.p && self.is_rational() && !other.is_rational() {
            return other.try_add(self);
        }
        let aligned = self.align(other)?;
        let other = aligned.as_ref().unwrap_or(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Cyclotomic { p: self.p, coeffs })
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic, CyclotomicError> {
        if self.p != other.p && self.is_rational() && !other.is_rational() {
            return other.try_mul(self);
        }
        let aligned = self.align(other)?;
        let other = aligned.as_ref().unwrap_or(other);
        Ok(self.mul_same(other))
    }

    fn mul_same(&self, other: &Cyclotomic) -> Cyclotomic {
        let p = self.p as usize;
        if p == 2 {
            return Cyclotomic { p: 2, coeffs: vec![&self.coeffs[0] * &other.coeffs[0]] };
        }
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[(i + j) % p] += a * b;
            }
        }
        Self::from_full(self.p, full)
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    /// Multiplies by `w^e`.
    pub fn mul_root(&self, e: u32) -> Cyclotomic {
        let p = self.p as usize;
        let e = e as usize % p;
        if e == 0 {
            return self.clone();
        }
        let mut full = vec![BigRational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate() {
            full[(i + e) % p] = a.clone();
        }
        Self::from_full(self.p, full)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// `Phi_p(x) = 1 + x + ... + x^(p-1)`.
    pub fn inverse(&self) -> Result<Cyclotomic, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            let mut x = Self::zero_unchecked(self.p);
            x.coeffs[0] = q.recip();
            return Ok(x);
        }
        let phi: Vec<BigRational> = vec![BigRational::one(); self.p as usize];
        let a = trim(self.coeffs.clone());
        // invariant: r_i = s_i * a (mod phi)
        let (mut r0, mut r1) = (phi, a);
        let (mut s0, mut s1) = (vec![], vec![BigRational::one()]);
        while !(r1.len() == 1) {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "Phi_p is irreducible, gcd must be constant");
        }
        let c = r1[0].recip();
        let coeffs: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Ok(Self::from_power_coeffs(self.p, &coeffs).expect("prime conductor"))
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic, CyclotomicError> {
        self.try_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut n: u32) -> Cyclotomic {
        let mut base = self.clone();
        let mut acc = Self::root_unchecked(self.p, 0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            n >>= 1;
        }
        acc
    }

    /// Parses `"a0 + a1*w + a2*w^2 ..."` with rational coefficients `n/d`.
    pub fn parse(p: u32, s: &str) -> Result<Cyclotomic, CyclotomicError> {
        check_prime(p)?;
        let err = || CyclotomicError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms: Vec<String> = Vec::new();
        let mut cur = String::new();
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut full = vec![BigRational::zero(); p as usize];
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, exp) = match body.find('w') {
                None => (body, 0u32),
                Some(pos) => {
                    let coef = body[..pos].trim_end_matches('*');
                    let rest = &body[pos + 1..];
                    let exp = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())?
                    };
                    (coef, exp)
                }
            };
            let q = if coef.is_empty() {
                BigRational::one()
            } else {
                BigRational::from_str(coef).map_err(|_| err())?
            };
            full[(exp % p) as usize] += q * BigRational::from_integer(BigInt::from(sign));
        }
        Ok(Self::from_full(p, full))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "w")?,
                1 => write!(f, "{mag}*w")?,
                _ if mag.is_one() => write!(f, "w^{i}")?,
                _ => write!(f, "{mag}*w^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic<{}>({})", self.p, self)
    }
}

// Operator impls panic on conductor mismatch; use the `try_*` methods when the
// operands may come from different fields.
impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_add(rhs).expect("cyclotomic add")
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.p == rhs.p {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.p == rhs.p {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.try_mul(rhs).expect("cyclotomic mul")
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u32, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(p, e).unwrap()
    }

    fn int(p: u32, n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(p, n).unwrap()
    }

    #[test]
    fn roots_of_unity() {
        assert!(w(3, 0).is_one());
        assert!((w(3, 1) * w(3, 2)).is_one());
        assert_eq!(w(3, 4), w(3, 1));
        assert_eq!(w(3, -1), w(3, 2));
        let sum = (0..5).fold(int(5, 0), |acc, e| acc + w(5, e));
        assert!(sum.is_zero());
        assert!(matches!(Cyclotomic::root_of_unity(4, 1), Err(CyclotomicError::NotPrime(4))));
    }

    #[test]
    fn norm_of_one_minus_omega() {
        let one = int(3, 1);
        let x = &one - &w(3, 1);
        let y = &one - &w(3, 2);
        assert_eq!(x * y, int(3, 3));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(w(5, 1).inverse().unwrap(), w(5, 4));
        let x = int(7, 1) + w(7, 3) + w(7, 3) + w(7, 5);
        assert!((&x * &x.inverse().unwrap()).is_one());
        assert_eq!(int(3, 0).inverse(), Err(CyclotomicError::DivisionByZero));
    }

    #[test]
    fn p_equals_two_is_the_rationals() {
        assert_eq!(w(2, 1), int(2, -1));
        assert!((w(2, 1) * w(2, 1)).is_one());
    }

    #[test]
    fn conductor_mismatch() {
        assert_eq!(
            w(3, 1).try_add(&w(5, 1)),
            Err(CyclotomicError::ConductorMismatch(3, 5))
        );
        // rationals embed at any conductor
        let q = int(5, 2);
        assert_eq!(w(3, 1).try_mul(&q).unwrap(), w(3, 1) + w(3, 1));
    }

    #[test]
    fn display_and_parse() {
        let x = Cyclotomic::parse(5, "1/2 - 3*w + w^3").unwrap();
        assert_eq!(x.to_string(), "1/2 - 3*w + w^3");
        assert_eq!(Cyclotomic::parse(5, &x.to_string()).unwrap(), x);
        assert_eq!(Cyclotomic::parse(3, "w^2").unwrap(), w(3, 2));
        assert_eq!(w(3, 2).to_string(), "-1 - w");
        assert!(Cyclotomic::parse(3, "2*q").is_err());
    }

    #[test]
    fn omega_power_p_is_one() {
        for p in [2u32, 3, 5, 7] {
            assert!(w(p as u32, 1).pow(p).is_one());
        }
    }
}
