//! Finite fields F_{p^k} with a deterministic modulus choice, and bit-packed
//! linear algebra over GF(2).
//!
//! Field elements are dense coefficient vectors of length k with schoolbook
//! multiplication and reduction; at the field sizes used for point counting
//! (p^k up to about a million) this is plenty, and the counting module builds
//! its own index-based tables on top.

mod gf2;

pub use gf2::GF2Matrix;

use crate::qnum::is_prime_u64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("field F_{p}^{k} has more than {max} elements")]
    TooLarge { p: u64, k: u32, max: u64 },
}

/// Largest field order for which element enumeration tables are built.
pub const MAX_ENUMERABLE_ORDER: u64 = 1 << 21;

/// The field F_{p^k}, as F_p[x] / (modulus).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpK {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible of degree k; coefficient i of x^i, length k+1.
    modulus: Vec<u64>,
}

/// An element as its dense coefficient vector of length k.
pub type Elem = Vec<u64>;

impl FpK {
    /// Constructs F_{p^k} with the deterministic modulus: the first monic
    /// polynomial x^k + t with t ranging over lower-degree tails in graded-lex
    /// order (total degree ascending, then coefficient tuples from the
    /// leading coefficient down) that is irreducible.
    pub fn new(p: u64, k: u32) -> Result<FpK, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::BadDegree);
        }
        let q = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p)).ok_or(
            FieldError::TooLarge {
                p,
                k,
                max: MAX_ENUMERABLE_ORDER,
            },
        )?;
        if k == 1 {
            return Ok(FpK {
                p,
                k,
                q,
                modulus: vec![0, 1],
            });
        }
        let mut field = FpK {
            p,
            k,
            q,
            modulus: vec![0; k as usize + 1],
        };
        field.modulus[k as usize] = 1;
        // Tail enumeration: the zero tail first, then degree 0, 1, ...
        let mut tails = TailIter::new(p, k);
        loop {
            let tail = tails.next().expect("an irreducible polynomial exists");
            for i in 0..k as usize {
                field.modulus[i] = tail.get(i).copied().unwrap_or(0);
            }
            if field.modulus_is_irreducible() {
                return Ok(field);
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// The order p^k.
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.k as usize]
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// Embeds a residue of F_p.
    pub fn scalar(&self, c: u64) -> Elem {
        let mut e = self.zero();
        e[0] = c % self.p;
        e
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect()
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
            .collect()
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        a.iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let k = self.k as usize;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] += x as u128 * y as u128;
            }
        }
        let mut prod: Vec<u64> = prod.iter().map(|&v| (v % self.p as u128) as u64).collect();
        // Reduce by the monic modulus: x^k = -(lower part).
        for i in (k..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = self.modulus[j];
                if m == 0 {
                    continue;
                }
                let sub = (c as u128 * m as u128 % self.p as u128) as u64;
                let idx = i - k + j;
                prod[idx] = (prod[idx] + self.p - sub) % self.p;
            }
        }
        prod.truncate(k);
        prod
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element, via a^(q-2).
    pub fn inv(&self, a: &Elem) -> Elem {
        debug_assert!(!self.is_zero(a));
        self.pow(a, self.q - 2)
    }

    /// Element -> index in [0, q), base-p digits with coefficient 0 least
    /// significant. Defines the enumeration order of the whole field.
    pub fn to_index(&self, a: &Elem) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, mut idx: u64) -> Elem {
        let mut e = self.zero();
        for c in e.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        e
    }

    /// True iff the fixed modulus is irreducible: x^(p^k) ≡ x (mod f) and
    /// gcd(x^(p^(k/r)) - x, f) = 1 for every prime r | k.
    fn modulus_is_irreducible(&self) -> bool {
        let k = self.k;
        let x = vec![0, 1];
        let frob = |e: u32| -> Vec<u64> {
            let mut acc = x.clone();
            for _ in 0..e {
                acc = poly_powmod(&acc, self.p, &self.modulus, self.p);
            }
            acc
        };
        let xq = frob(k);
        if !poly_trim(&poly_sub(&xq, &x, self.p)).is_empty() {
            return false;
        }
        let mut m = k;
        let mut r = 2;
        let mut prime_divisors = Vec::new();
        while m > 1 {
            if m % r == 0 {
                prime_divisors.push(r);
                while m % r == 0 {
                    m /= r;
                }
            }
            r += 1;
        }
        for r in prime_divisors {
            let xe = frob(k / r);
            let diff = poly_trim(&poly_sub(&xe, &x, self.p));
            if poly_gcd(&diff, &self.modulus, self.p).len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Enumerates modulus tails: the zero tail, then tails of degree 0, 1, ...,
/// k-1; within a degree, coefficient tuples ascending with the leading
/// coefficient most significant.
struct TailIter {
    p: u64,
    k: u32,
    deg: i64,
    counter: u64,
}

impl TailIter {
    fn new(p: u64, k: u32) -> Self {
        TailIter {
            p,
            k,
            deg: -1,
            counter: 0,
        }
    }
}

impl Iterator for TailIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.deg < 0 {
            self.deg = 0;
            self.counter = 0;
            return Some(vec![]);
        }
        loop {
            if self.deg >= self.k as i64 {
                return None;
            }
            let d = self.deg as usize;
            let count = (self.p - 1) * self.p.pow(d as u32);
            if self.counter >= count {
                self.deg += 1;
                self.counter = 0;
                continue;
            }
            let mut c = self.counter;
            self.counter += 1;
            let mut tail = vec![0u64; d + 1];
            for coeff in tail.iter_mut().take(d) {
                *coeff = c % self.p;
                c /= self.p;
            }
            tail[d] = 1 + c;
            return Some(tail);
        }
    }
}

// Dense univariate polynomial helpers over F_p (little-endian coefficients).

fn poly_trim(a: &[u64]) -> Vec<u64> {
    let mut v = a.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect()
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut wide = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            wide[i + j] += x as u128 * y as u128;
        }
    }
    let mut prod: Vec<u64> = wide.iter().map(|&v| (v % p as u128) as u64).collect();
    let df = f.len() - 1;
    for i in (df..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..df {
            if f[j] == 0 {
                continue;
            }
            let sub = (c as u128 * f[j] as u128 % p as u128) as u64;
            prod[i - df + j] = (prod[i - df + j] + p - sub) % p;
        }
    }
    prod.truncate(df);
    poly_trim(&prod)
}

fn poly_powmod(a: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a);
    let mut b = poly_trim(b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = crate::qnum::pow_mod_u64(lead, p - 2, p);
        for c in a.iter_mut() {
            *c = crate::qnum::mul_mod_u64(*c, inv, p);
        }
    }
    a
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = poly_trim(a);
    let db = b.len() - 1;
    let lead_inv = crate::qnum::pow_mod_u64(b[db], p - 2, p);
    while r.len() > db {
        let c = crate::qnum::mul_mod_u64(*r.last().unwrap(), lead_inv, p);
        let dr = r.len() - 1;
        if c != 0 {
            for j in 0..=db {
                let sub = crate::qnum::mul_mod_u64(c, b[j], p);
                r[dr - db + j] = (r[dr - db + j] + p - sub) % p;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}
