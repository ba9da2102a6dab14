//! Prime splitting in ℤ[i] and ℤ[ω], normalised to primary associates.
//!
//! The primary conventions are π ≡ 1 (mod (1+i)³) in ℤ[i] and π ≡ -1 (mod 3)
//! in ℤ[ω]. Jacobi-sum eigenvalue formulas downstream presuppose primary
//! elements; the conventions are validated against point counts in the zeta
//! module tests.

use super::{is_probable_prime, jacobi_symbol, QnumError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Gaussian integer a + bi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> GaussianInt {
        GaussianInt::new(self.re.clone(), -&self.im)
    }

    pub fn mul(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn pow(&self, e: u32) -> GaussianInt {
        let mut acc = GaussianInt::new(1, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division with remainder of norm at most half the divisor's.
    fn div_round(&self, other: &GaussianInt) -> GaussianInt {
        let n = other.norm();
        let c = self.mul(&other.conj());
        GaussianInt::new(round_div(&c.re, &n), round_div(&c.im, &n))
    }

    fn sub(&self, other: &GaussianInt) -> GaussianInt {
        GaussianInt::new(&self.re - &other.re, &self.im - &other.im)
    }

    fn gcd(&self, other: &GaussianInt) -> GaussianInt {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    /// The unique associate ≡ 1 (mod (1+i)³), defined for odd norm.
    pub fn primary_associate(&self) -> GaussianInt {
        let i = GaussianInt::new(0, 1);
        let mut z = self.clone();
        for _ in 0..4 {
            if z.is_primary() {
                return z;
            }
            z = z.mul(&i);
        }
        unreachable!("an element of odd norm has a primary associate");
    }

    fn is_primary(&self) -> bool {
        // z ≡ 1 mod (1+i)³ = -2+2i  ⟺  (z-1)(−2−2i)/8 ∈ ℤ[i].
        let shifted = GaussianInt::new(&self.re - 1, self.im.clone());
        let prod = shifted.mul(&GaussianInt::new(-2, -2));
        let eight = BigInt::from(8);
        (&prod.re % &eight).is_zero() && (&prod.im % &eight).is_zero()
    }
}

/// An Eisenstein integer a + bω for ω a primitive cube root of unity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl EisensteinInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        EisensteinInt {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Complex conjugate: a + bω̄ = (a-b) - bω.
    pub fn conj(&self) -> EisensteinInt {
        EisensteinInt::new(&self.a - &self.b, -&self.b)
    }

    /// Uses ω² = -1 - ω.
    pub fn mul(&self, other: &EisensteinInt) -> EisensteinInt {
        let bd = &self.b * &other.b;
        EisensteinInt::new(
            &self.a * &other.a - &bd,
            &self.a * &other.b + &self.b * &other.a - &bd,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn pow(&self, e: u32) -> EisensteinInt {
        let mut acc = EisensteinInt::new(1, 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// z + z̄ = 2a - b, the rational trace.
    pub fn trace(&self) -> BigInt {
        2 * &self.a - &self.b
    }

    fn sub(&self, other: &EisensteinInt) -> EisensteinInt {
        EisensteinInt::new(&self.a - &other.a, &self.b - &other.b)
    }

    fn div_round(&self, other: &EisensteinInt) -> EisensteinInt {
        let n = other.norm();
        // self / other = self * other.conj_over_norm; conj in the ring sense
        // for division is the norm-completing factor ā = conj(other).
        let c = self.mul(&other.conj());
        EisensteinInt::new(round_div(&c.a, &n), round_div(&c.b, &n))
    }

    fn gcd(&self, other: &EisensteinInt) -> EisensteinInt {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let q = a.div_round(&b);
            let r = a.sub(&q.mul(&b));
            a = b;
            b = r;
        }
        a
    }

    /// The unique associate ≡ -1 (mod 3), defined for norm coprime to 3.
    pub fn primary_associate(&self) -> EisensteinInt {
        let units = [
            EisensteinInt::new(1, 0),
            EisensteinInt::new(0, 1),          // ω
            EisensteinInt::new(-1, -1),        // ω²
            EisensteinInt::new(-1, 0),
            EisensteinInt::new(0, -1),
            EisensteinInt::new(1, 1),
        ];
        let three = BigInt::from(3);
        for u in &units {
            let z = self.mul(u);
            if (&z.a + BigInt::one()).mod_floor(&three).is_zero() && z.b.mod_floor(&three).is_zero() {
                return z;
            }
        }
        unreachable!("an element of norm coprime to 3 has a primary associate");
    }
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // Nearest integer to num/den, den > 0.
    debug_assert!(den.is_positive());
    let (q, r) = num.div_mod_floor(den);
    if 2 * r >= *den {
        q + 1
    } else {
        q
    }
}

/// Square root of `a` modulo an odd prime p (Tonelli-Shanks), if one exists.
fn sqrt_mod(a: &BigInt, p: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    if jacobi_symbol(&a, p).ok()? != 1 {
        return None;
    }
    let one = BigInt::one();
    let two = BigInt::from(2);
    if (p % 4u8).to_u8().unwrap() == 3 {
        let e = (p + 1u8) >> 2;
        return Some(a.modpow(&e, p));
    }
    // Tonelli-Shanks. Find a quadratic nonresidue deterministically.
    let mut n = BigInt::from(2);
    while jacobi_symbol(&n, p).ok()? != -1 {
        n += 1;
    }
    let p_minus_1 = p - &one;
    let s = p_minus_1.trailing_zeros().unwrap();
    let q = &p_minus_1 >> s;
    let mut m = s;
    let mut c = n.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u8) >> 1), p);
    while !t.is_one() {
        let mut i = 0u64;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = tt.modpow(&two, p);
            i += 1;
            if i == m {
                return None;
            }
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = b.modpow(&two, p);
        }
        m = i;
        c = b.modpow(&two, p);
        t = (t * &c).mod_floor(p);
        r = (r * b).mod_floor(p);
    }
    Some(r)
}

/// Splits p ≡ 1 (mod 4) in ℤ[i], returning the primary π with ππ̄ = p.
pub fn gaussian_factor(p: &BigInt) -> Result<GaussianInt, QnumError> {
    let bad = || QnumError::BadSplitPrime(p.clone(), 4);
    if (p % 4u8).to_u8().unwrap() != 1 || !is_probable_prime(&p.to_biguint().ok_or_else(bad)?) {
        return Err(bad());
    }
    let x = sqrt_mod(&BigInt::from(-1), p).ok_or_else(bad)?;
    let pi = GaussianInt::new(p.clone(), BigInt::zero()).gcd(&GaussianInt::new(x, BigInt::one()));
    debug_assert_eq!(pi.norm(), *p);
    Ok(pi.primary_associate())
}

/// Splits p ≡ 1 (mod 3) in ℤ[ω], returning the primary π of norm p.
pub fn eisenstein_factor(p: &BigInt) -> Result<EisensteinInt, QnumError> {
    let bad = || QnumError::BadSplitPrime(p.clone(), 3);
    if (p % 3u8).to_u8().unwrap() != 1 || !is_probable_prime(&p.to_biguint().ok_or_else(bad)?) {
        return Err(bad());
    }
    // ω lifts to (-1 + √-3)/2 mod p.
    let s = sqrt_mod(&BigInt::from(-3), p).ok_or_else(bad)?;
    let half: BigInt = (p + 1u8) >> 1;
    let w = ((s - BigInt::one()) * half).mod_floor(p);
    let pi = EisensteinInt::new(p.clone(), BigInt::zero())
        .gcd(&EisensteinInt::new(w, -BigInt::one()));
    debug_assert_eq!(pi.norm(), *p);
    Ok(pi.primary_associate())
}

/// True iff a is a cubic residue modulo a prime p ≡ 1 (mod 3) with p ∤ a,
/// decided by a^((p-1)/3) ≡ 1.
pub fn cubic_residue(a: &BigInt, p: &BigInt) -> Result<bool, QnumError> {
    if (p % 3u8).to_u8().unwrap() != 1 {
        return Err(QnumError::BadSplitPrime(p.clone(), 3));
    }
    let a = a.mod_floor(p);
    if a.is_zero() {
        return Err(QnumError::RamifiedSymbol {
            delta: BigInt::zero(),
            p: p.clone(),
        });
    }
    let e = (p - 1u8) / 3u8;
    Ok(a.modpow(&e, p).is_one())
}
