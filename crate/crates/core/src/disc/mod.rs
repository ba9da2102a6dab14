//! Elimination-theoretic discriminants: Macaulay resultants, the divided
//! discriminant of ternary forms, the special-quartic factorisation, double
//! cover discriminants with their canonical sign, and the degree/Betti
//! bookkeeping formulas.
//!
//! Normalisations are anchored numerically: the divided discriminant divides
//! the resultant of the partials by d^(d²-3d+3), which is pinned by
//! δ(X0⁴+X1⁴+X2⁴) = 2⁴⁰ for quartics and Δ₆(X0⁶+X1⁶+X2⁶) = 2⁵⁴·3⁵⁴ for
//! sextics (with Δ₆ < 0 on the negative-definite diagonal form as the sign
//! anchor); the special-quartic factor 2⁻⁵² is pinned by the diagonal
//! surface having discriminant 2¹⁷⁶.

mod bareiss;
mod macaulay;

pub use bareiss::determinant;
pub use macaulay::macaulay_resultant;

use crate::count::Surface;
use crate::mpoly::MultiPoly;
use crate::qnum::{factorize, QnumError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, thiserror::Error)]
pub enum DiscError {
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("zero discriminant: the generic fibre is singular")]
    ZeroDiscriminant,
    #[error("normalisation division not exact ({0}): implementation bug or invalid input")]
    NormalizationNotExact(&'static str),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Qnum(#[from] QnumError),
}

/// Demazure's divided discriminant of a ternary form of degree d:
/// Res(∂f/∂X0, ∂f/∂X1, ∂f/∂X2) / d^(d²-3d+3), an integer for integer f.
pub fn divided_discriminant_ternary(f: &MultiPoly, d: u32) -> Result<BigInt, DiscError> {
    if f.nvars() != 3 || f.is_zero() || f.homogeneous_degree() != Some(d) {
        return Err(DiscError::BadInput(format!(
            "expected a nonzero ternary form of degree {d}"
        )));
    }
    let partials: Vec<MultiPoly> = (0..3)
        .map(|v| f.partial_derivative(v).expect("var in range"))
        .collect();
    if partials.iter().any(|p| p.is_zero()) {
        // A vanishing partial means f is independent of one variable, hence
        // singular where the remaining two partials meet in P².
        return Ok(BigInt::zero());
    }
    let res = macaulay_resultant(&partials)?;
    let divisor = BigInt::from(d).pow(d * d - 3 * d + 3);
    let (q, r) = res.div_rem(&divisor);
    if !r.is_zero() {
        return Err(DiscError::NormalizationNotExact("d^(d²-3d+3)"));
    }
    Ok(q)
}

/// The divided discriminant δ of a plane quartic (degree 27 in the
/// coefficients; δ(X0⁴+X1⁴+X2⁴) = 2⁴⁰).
pub fn delta_ternary_quartic(f4: &MultiPoly) -> Result<BigInt, DiscError> {
    divided_discriminant_ternary(f4, 4)
}

/// δ(f2² - 4c·f4) / c¹⁴, the degree-two del Pezzo factor of the special
/// quartic discriminant. The division is exact for every integer c.
pub fn delta_dp(c: &BigInt, f2: &MultiPoly, f4: &MultiPoly) -> Result<BigInt, DiscError> {
    if c.is_zero() {
        return Err(DiscError::BadInput("c must be nonzero".into()));
    }
    let g = special_quartic_branch_form(c, f2, f4)?;
    let delta = delta_ternary_quartic(&g)?;
    let (q, r) = delta.div_rem(&c.pow(14));
    if !r.is_zero() {
        return Err(DiscError::NormalizationNotExact("c^14"));
    }
    Ok(q)
}

/// f2² - 4c·f4 with shape checks (f2 ternary quadratic or zero, f4 ternary
/// quartic).
fn special_quartic_branch_form(
    c: &BigInt,
    f2: &MultiPoly,
    f4: &MultiPoly,
) -> Result<MultiPoly, DiscError> {
    if f2.nvars() != 3 || (!f2.is_zero() && f2.homogeneous_degree() != Some(2)) {
        return Err(DiscError::BadInput(
            "f2 must be a ternary quadratic form (possibly zero)".into(),
        ));
    }
    if f4.nvars() != 3 || f4.is_zero() || f4.homogeneous_degree() != Some(4) {
        return Err(DiscError::BadInput(
            "f4 must be a nonzero ternary quartic form".into(),
        ));
    }
    f2.pow(2)
        .sub(&f4.scale(&(4 * c)))
        .map_err(|e| DiscError::Internal(e.to_string()))
}

/// The discriminant of the special quartic c·X3⁴ + f2·X3² + f4, through its
/// factorisation 2⁻⁵²·c·δ(f4)·δ_dP(c,f2,f4)².
pub fn special_quartic_disc(
    c: &BigInt,
    f2: &MultiPoly,
    f4: &MultiPoly,
) -> Result<BigInt, DiscError> {
    let ddp = delta_dp(c, f2, f4)?;
    let df4 = delta_ternary_quartic(f4)?;
    let prod = c * df4 * (&ddp * &ddp);
    let (q, r) = prod.div_rem(&BigInt::from(2).pow(52));
    if !r.is_zero() {
        return Err(DiscError::NormalizationNotExact("2^52"));
    }
    Ok(q)
}

/// The normalised discriminant (-1)^(nd/4)·t·Δ_d(s) of the double cover
/// t·w² = s(X0..Xn), for n, d even. Only (n, d) = (2, 4) and (2, 6) have
/// their divided discriminant Δ_d implemented.
pub fn double_cover_disc(
    t: &BigInt,
    s: &MultiPoly,
    n: u32,
    d: u32,
) -> Result<BigInt, DiscError> {
    if n % 2 != 0 || d % 2 != 0 {
        return Err(DiscError::BadInput("n and d must be even".into()));
    }
    if !(n == 2 && (d == 4 || d == 6)) {
        return Err(DiscError::NotImplemented(format!(
            "double cover discriminant for (n, d) = ({n}, {d}); only (2, 4) and (2, 6) are supported"
        )));
    }
    let delta_d = divided_discriminant_ternary(s, d)?;
    let sign = if (n * d / 4) % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    Ok(sign * t * delta_d)
}

/// Boole's degree of the discriminant of degree-d hypersurfaces in P^n:
/// (d-1)^n·(n+1).
pub fn boole_degree(n: u32, d: u32) -> BigInt {
    BigInt::from(d - 1).pow(n) * BigInt::from(n + 1)
}

/// Middle Betti number of a smooth complete intersection of multidegree
/// `degrees` in P^n (Hirzebruch's formula).
pub fn middle_betti_ci(n: u32, degrees: &[u32]) -> Result<BigInt, DiscError> {
    let c = degrees.len() as u32;
    if c == 0 || c > n || degrees.iter().any(|&d| d < 2) {
        return Err(DiscError::BadInput(
            "need 1 <= c <= n forms of degree >= 2".into(),
        ));
    }
    let m = n - c;
    let mut sum = BigInt::zero();
    for comp in compositions(m, c + 1) {
        let mut term = BigInt::from(comp[0] + 1);
        for (i, &d) in degrees.iter().enumerate() {
            term *= (BigInt::one() - BigInt::from(d)).pow(comp[i + 1]);
        }
        sum += term;
    }
    let d_prod = degrees
        .iter()
        .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d));
    let parity_term = if m % 2 == 0 {
        BigInt::zero()
    } else {
        -BigInt::one()
    };
    let inner = d_prod * sum - BigInt::from(n) + BigInt::from(c) + parity_term;
    Ok(if m % 2 == 0 { inner } else { -inner })
}

/// Middle Betti number of a smooth double cover of P^n ramified at a
/// degree-d hypersurface (n arbitrary, d even).
pub fn middle_betti_dc(n: u32, d: u32) -> Result<BigInt, DiscError> {
    if d % 2 != 0 || d < 2 || n < 1 {
        return Err(DiscError::BadInput("need n >= 1 and even d >= 2".into()));
    }
    let mut sum = BigInt::zero();
    for e0 in 0..n {
        let e1 = n - 1 - e0;
        sum += BigInt::from(e0 + 1) * (BigInt::one() - BigInt::from(d)).pow(e1);
    }
    let three_plus = if n % 2 == 0 { 2u32 } else { 1u32 }; // (3+(-1)^n)/2
    let inner = BigInt::from(n) + BigInt::from(three_plus) - BigInt::from(d) * sum;
    Ok(if n % 2 == 0 { inner } else { -inner })
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative parts.
fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; parts as usize];
    fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            return;
        }
        for e in 0..=remaining {
            current[pos] = e;
            fill(out, current, pos + 1, remaining - e);
        }
    }
    fill(&mut out, &mut current, 0, total);
    out
}

/// Prime support of the normalised discriminant of the given integral
/// model, always including 2. A superset of the true bad primes in general;
/// exact for the worked examples.
pub fn bad_primes(surface: &Surface) -> Result<Vec<BigInt>, DiscError> {
    let disc = match surface {
        Surface::SpecialQuartic { c, f2, f4 } => special_quartic_disc(c, f2, f4)?,
        Surface::DoubleSextic { f6 } => double_cover_disc(&BigInt::one(), f6, 2, 6)?,
        Surface::Quartic3 { .. } => {
            return Err(DiscError::NotImplemented(
                "bad primes of a general space quartic need the degree-108 discriminant; \
                 rewrite the surface as a special quartic if it has that shape"
                    .into(),
            ))
        }
    };
    if disc.is_zero() {
        return Err(DiscError::ZeroDiscriminant);
    }
    let mut support = factorize(&disc)?.support();
    let two = BigInt::from(2);
    if !support.contains(&two) {
        support.push(two);
        support.sort();
    }
    Ok(support)
}

/// Signed-squarefree class of an integer discriminant, as a convenience
/// re-export of the qnum computation.
pub fn square_class_of(disc: &BigInt) -> Result<crate::qnum::SquareClass, DiscError> {
    Ok(crate::qnum::square_class(disc, &BigInt::one())?)
}
