//! Exact number-theory kernel: square classes in ℚ*/(ℚ*)², Jacobi symbols,
//! integer factorisation with an explicit effort budget, primality testing
//! and the splitting of rational primes in ℤ[i] and ℤ[ω].

mod gauss;

pub use gauss::{
    cubic_residue, eisenstein_factor, gaussian_factor, EisensteinInt, GaussianInt,
};

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

/// Trial division bound used before switching to Pollard rho.
const TRIAL_DIVISION_BOUND: u64 = 1_000_000;
/// Number of Pollard rho restarts before giving up on a cofactor.
const RHO_RESTARTS: u32 = 20;
/// Miller-Rabin rounds for arbitrary-precision candidates.
const MILLER_RABIN_ROUNDS: u32 = 64;

#[derive(Debug, thiserror::Error)]
pub enum QnumError {
    #[error("0 has no square class")]
    ZeroHasNoClass,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("Jacobi symbol requires an odd positive modulus, got {0}")]
    BadJacobiModulus(BigInt),
    #[error("quadratic symbol undefined: {p} divides {delta}")]
    RamifiedSymbol { delta: BigInt, p: BigInt },
    #[error("cannot factor 0")]
    FactorZero,
    #[error("incomplete factorization: composite cofactor {cofactor} exceeds effort budget")]
    IncompleteFactorization { cofactor: BigInt },
    #[error("{0} is not a prime congruent to 1 mod {1}")]
    BadSplitPrime(BigInt, u32),
}

/// An element of ℚ*/(ℚ*)², stored as its unique signed squarefree
/// representative. `1` is the trivial class; `-1` plays the role of the
/// "prime" q₀ in the character algorithms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass(BigInt);

impl SquareClass {
    /// The trivial class.
    pub fn one() -> Self {
        SquareClass(BigInt::one())
    }

    pub fn minus_one() -> Self {
        SquareClass(-BigInt::one())
    }

    /// Wraps a value that is already known to be signed squarefree.
    /// Intended for small literals in tests and algorithm internals;
    /// panics on 0 or a non-squarefree value.
    pub fn from_squarefree(v: impl Into<BigInt>) -> Self {
        let v = v.into();
        assert!(!v.is_zero(), "0 has no square class");
        let sq = square_class(&v, &BigInt::one()).expect("squarefree literal within budget");
        assert_eq!(sq.0, v, "{v} is not squarefree");
        sq
    }

    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_one()
    }

    /// Class multiplication. Exact without refactoring: for squarefree a, b
    /// the squarefree part of ab is (a/g)(b/g) with g = gcd(a, b).
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        let g = self.0.gcd(&other.0);
        SquareClass((&self.0 / &g) * (&other.0 / &g))
    }

    /// Evaluates the quadratic character (self/p) at an odd prime p not
    /// dividing the representative.
    pub fn symbol_at(&self, p: &BigInt) -> Result<i8, QnumError> {
        symbol_at(self, p)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.0)
    }
}

/// Returns the square class of num/den, i.e. the signed squarefree part.
///
/// Fails on num = 0 (0 has no class) and propagates the factorisation
/// effort budget: a cofactor that resists trial division and Pollard rho is
/// reported instead of being silently treated as prime, since a wrong
/// squarefree part corrupts every downstream character.
pub fn square_class(num: &BigInt, den: &BigInt) -> Result<SquareClass, QnumError> {
    if den.is_zero() {
        return Err(QnumError::ZeroDenominator);
    }
    if num.is_zero() {
        return Err(QnumError::ZeroHasNoClass);
    }
    // num/den and num*den differ by the square den².
    let prod = num * den;
    let f = factorize(&prod)?;
    let mut out = BigInt::from(f.sign);
    for (p, e) in &f.factors {
        if e % 2 == 1 {
            out *= p;
        }
    }
    Ok(SquareClass(out))
}

/// The Jacobi symbol (a/n) for odd positive n; 0 iff gcd(a, n) > 1.
pub fn jacobi_symbol(a: &BigInt, n: &BigInt) -> Result<i8, QnumError> {
    if !n.is_positive() || n.is_even() {
        return Err(QnumError::BadJacobiModulus(n.clone()));
    }
    let mut num = a.mod_floor(n);
    let mut den = n.clone();
    let mut acc = 1i8;
    loop {
        num = num.mod_floor(&den);
        if num.is_zero() {
            return Ok(if den.is_one() { acc } else { 0 });
        }
        // Pull out factors of two: (2/den) depends on den mod 8.
        let twos = num.trailing_zeros().unwrap_or(0);
        if twos > 0 {
            num >>= twos;
            if twos % 2 == 1 {
                let d8 = (&den % 8u8).to_u8().unwrap();
                if d8 == 3 || d8 == 5 {
                    acc = -acc;
                }
            }
        }
        if num.is_one() {
            return Ok(acc);
        }
        // Quadratic reciprocity for odd coprime num, den.
        if (&num % 4u8).to_u8().unwrap() == 3 && (&den % 4u8).to_u8().unwrap() == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// Evaluates (delta/p) at an odd prime p, including the sign part via
/// (-1/p) = (-1)^((p-1)/2). Errors at ramified primes p | delta.
pub fn symbol_at(delta: &SquareClass, p: &BigInt) -> Result<i8, QnumError> {
    let s = jacobi_symbol(delta.value(), p)?;
    if s == 0 {
        return Err(QnumError::RamifiedSymbol {
            delta: delta.value().clone(),
            p: p.clone(),
        });
    }
    Ok(s)
}

/// A complete factorisation `sign * Π p_i^{e_i}` with p_i strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// The primes dividing the value, in increasing order.
    pub fn support(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }
}

/// Factors a nonzero integer completely: trial division up to 10⁶, then
/// Pollard rho with a bounded number of restarts on each composite cofactor.
/// A cofactor that survives the budget yields `IncompleteFactorization`.
pub fn factorize(n: &BigInt) -> Result<Factorization, QnumError> {
    if n.is_zero() {
        return Err(QnumError::FactorZero);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs().to_biguint().unwrap();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigUint, e: u32, factors: &mut Vec<(BigInt, u32)>| {
        factors.push((BigInt::from(p), e));
    };

    // Trial division.
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND {
        let db = BigUint::from(d);
        if &db * &db > m {
            break;
        }
        if (&m % &db).is_zero() {
            let mut e = 0u32;
            while (&m % &db).is_zero() {
                m /= &db;
                e += 1;
            }
            push(db, e, &mut factors);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if m.is_one() {
        return Ok(Factorization { sign, factors });
    }
    if factors.is_empty() || m > BigUint::from(TRIAL_DIVISION_BOUND) * TRIAL_DIVISION_BOUND {
        // m may still be composite; split it recursively.
        let mut stack = vec![m];
        let mut found: Vec<BigUint> = Vec::new();
        while let Some(c) = stack.pop() {
            if is_probable_prime(&c) {
                found.push(c);
                continue;
            }
            match pollard_rho(&c) {
                Some(d) => {
                    stack.push(&c / &d);
                    stack.push(d);
                }
                None => {
                    return Err(QnumError::IncompleteFactorization {
                        cofactor: BigInt::from(c),
                    })
                }
            }
        }
        found.sort();
        let mut i = 0;
        while i < found.len() {
            let mut e = 1u32;
            while i + 1 < found.len() && found[i + 1] == found[i] {
                e += 1;
                i += 1;
            }
            push(found[i].clone(), e, &mut factors);
            i += 1;
        }
    } else {
        // Below the square of the trial bound and not divisible by any prime
        // up to the bound: m is prime.
        push(m, 1, &mut factors);
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    // Merge duplicates that can arise when rho-found primes coincide with
    // trial-division primes (cannot happen, but keep the output canonical).
    let mut merged: Vec<(BigInt, u32)> = Vec::new();
    for (p, e) in factors {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization {
        sign,
        factors: merged,
    })
}

/// Miller-Rabin with 64 pseudo-random rounds (fixed seed, so runs are
/// reproducible). Deterministic for u64 inputs via the standard base set.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let two = BigUint::from(2u8);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u8;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b33_6a75_6d70_u64);
    'witness: for _ in 0..MILLER_RABIN_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic Miller-Rabin for u64 (valid for all inputs below 3.3·10²⁴).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, a, m);
        }
        a = mul_mod_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Pollard rho (Brent variant) with a fixed deterministic restart schedule.
fn pollard_rho(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x7268_6f32_30_u64);
    let one = BigUint::one();
    for _ in 0..RHO_RESTARTS {
        let c = rng.gen_biguint_range(&one, n);
        let mut x = rng.gen_biguint_range(&one, n);
        let mut y = x.clone();
        let mut d = BigUint::one();
        let mut steps = 0u64;
        let max_steps = 1u64 << 22;
        while d.is_one() && steps < max_steps {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            steps += 1;
        }
        if !d.is_one() && &d != n {
            return Some(d);
        }
    }
    None
}

/// Ascending iterator over all primes, starting from 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime_u64(n))
}

/// All primes up to and including `bound`.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2usize;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}
