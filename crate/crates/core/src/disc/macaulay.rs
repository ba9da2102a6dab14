//! The classical Macaulay resultant of n+1 homogeneous forms in n+1
//! variables, as the exact ratio of two determinants.
//!
//! At the critical degree t = Σ(d_i - 1) + 1 every monomial of degree t is
//! divisible by X_i^{d_i} for at least one i. The numerator matrix has one
//! row per such monomial m: the coefficients of (m / X_i^{d_i})·F_i, for i
//! the smallest admissible index. The denominator is the minor on the
//! monomials admitting more than one such i. With this prescription the
//! ratio is the resultant normalised by Res(X_0^{d_0}, ..., X_n^{d_n}) = 1,
//! which pins its sign.
//!
//! For special coefficient values the denominator minor can vanish even
//! though the resultant does not; a deterministic sequence of determinant-1
//! shears (which leave the resultant invariant) is tried before concluding
//! that the forms share a common zero.

use super::bareiss::determinant;
use super::DiscError;
use crate::mpoly::{Monomial, MultiPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::HashMap;

const MAX_SHEAR_RETRIES: usize = 16;

/// The Macaulay resultant of `forms`, which must be n+1 nonzero homogeneous
/// forms in n+1 variables. Returns 0 when the forms have a common projective
/// zero over the algebraic closure.
pub fn macaulay_resultant(forms: &[MultiPoly]) -> Result<BigInt, DiscError> {
    let nvars = forms
        .first()
        .map(|f| f.nvars())
        .ok_or_else(|| DiscError::BadInput("no forms given".into()))?;
    if forms.len() != nvars {
        return Err(DiscError::BadInput(format!(
            "need as many forms as variables, got {} forms in {} variables",
            forms.len(),
            nvars
        )));
    }
    let mut degrees = Vec::with_capacity(forms.len());
    for f in forms {
        if f.nvars() != nvars {
            return Err(DiscError::BadInput("mixed variable counts".into()));
        }
        match f.homogeneous_degree() {
            Some(d) if d >= 1 && !f.is_zero() => degrees.push(d),
            _ => {
                return Err(DiscError::BadInput(
                    "forms must be nonzero and homogeneous of degree >= 1".into(),
                ))
            }
        }
    }

    let mut current: Vec<MultiPoly> = forms.to_vec();
    for attempt in 0..=MAX_SHEAR_RETRIES {
        if let Some(res) = try_resultant(&current, &degrees)? {
            return Ok(res);
        }
        if attempt == MAX_SHEAR_RETRIES {
            break;
        }
        // X_a -> X_a + X_b, determinant 1; cycle through variable pairs.
        let a = attempt % nvars;
        let b = (attempt + 1) % nvars;
        let shear = MultiPoly::var(nvars, a)
            .unwrap()
            .add(&MultiPoly::var(nvars, b).unwrap())
            .unwrap();
        current = current
            .iter()
            .map(|f| f.substitute(a, &shear).expect("same arity"))
            .collect();
    }
    // Every shear left the denominator minor singular. The numerator
    // determinant vanishes along with it, which for honest inputs means a
    // common zero; report resultant 0.
    Ok(BigInt::zero())
}

/// One attempt at the determinant ratio; None signals a vanishing
/// denominator minor.
fn try_resultant(forms: &[MultiPoly], degrees: &[u32]) -> Result<Option<BigInt>, DiscError> {
    let nvars = forms[0].nvars();
    let t: u32 = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
    let monomials = monomials_of_degree(nvars, t);
    let index: HashMap<&[u16], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.exps(), i))
        .collect();
    let dim = monomials.len();

    let mut numerator: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); dim]; dim];
    let mut non_reduced = Vec::new();
    for (row, m) in monomials.iter().enumerate() {
        let divisible: Vec<usize> = (0..nvars)
            .filter(|&i| m.exps()[i] as u32 >= degrees[i])
            .collect();
        debug_assert!(
            !divisible.is_empty(),
            "critical degree guarantees a divisor"
        );
        if divisible.len() > 1 {
            non_reduced.push(row);
        }
        let i = divisible[0];
        // Row = coefficients of (m / X_i^{d_i}) * F_i.
        let mut shifted = m.exps().to_vec();
        shifted[i] -= degrees[i] as u16;
        for (fm, c) in forms[i].terms() {
            let col_exps: Vec<u16> = fm
                .exps()
                .iter()
                .zip(&shifted)
                .map(|(a, b)| a + b)
                .collect();
            let col = index[&col_exps[..]];
            numerator[row][col] = c.clone();
        }
    }

    let minor: Vec<Vec<BigInt>> = non_reduced
        .iter()
        .map(|&r| {
            non_reduced
                .iter()
                .map(|&c| numerator[r][c].clone())
                .collect()
        })
        .collect();
    let den = determinant(minor);
    if den.is_zero() {
        return Ok(None);
    }
    let num = determinant(numerator);
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    if !rem.is_zero() {
        return Err(DiscError::Internal(
            "Macaulay denominator does not divide the numerator".into(),
        ));
    }
    Ok(Some(quot))
}

/// All exponent vectors of total degree t in `nvars` variables, in
/// descending graded-lex order (the documented ordering; the determinant
/// ratio is independent of it since rows and columns permute together).
pub(crate) fn monomials_of_degree(nvars: usize, t: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u16; nvars];
    fill(&mut out, &mut current, 0, t);
    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u16>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining as u16;
            out.push(Monomial::new(current.clone()));
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e as u16;
            fill(out, current, pos + 1, remaining - e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse;

    #[test]
    fn linear_forms_give_coefficient_determinants() {
        // (aX+bY, cX+dY) -> ad - bc.
        let f = parse("3*X0+5*X1", 2).unwrap();
        let g = parse("2*X0+4*X1", 2).unwrap();
        assert_eq!(
            macaulay_resultant(&[f, g]).unwrap(),
            BigInt::from(3 * 4 - 5 * 2)
        );
        // Three ternary linear forms -> 3x3 determinant.
        let forms = [
            parse("X0+2*X1+3*X2", 3).unwrap(),
            parse("4*X0+5*X1+6*X2", 3).unwrap(),
            parse("7*X0+8*X1+10*X2", 3).unwrap(),
        ];
        // det [[1,2,3],[4,5,6],[7,8,10]] = -3.
        assert_eq!(macaulay_resultant(&forms).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn monomial_basis_normalisation() {
        // Res(X^a, Y^b, Z^c) = 1 fixes scale and sign.
        let forms = [
            parse("X0^3", 3).unwrap(),
            parse("X1^3", 3).unwrap(),
            parse("X2^3", 3).unwrap(),
        ];
        assert_eq!(macaulay_resultant(&forms).unwrap(), BigInt::from(1));
        // Scaling form i multiplies the resultant by lambda^(prod of the
        // other degrees): Res(4X^3, 4Y^3, 4Z^3) = 4^27.
        let scaled = [
            parse("4*X0^3", 3).unwrap(),
            parse("4*X1^3", 3).unwrap(),
            parse("4*X2^3", 3).unwrap(),
        ];
        assert_eq!(
            macaulay_resultant(&scaled).unwrap(),
            BigInt::from(4).pow(27)
        );
    }

    #[test]
    fn common_zero_gives_zero() {
        // Both vanish at (0:1).
        let f = parse("X0^2", 2).unwrap();
        let g = parse("X0*X1", 2).unwrap();
        assert_eq!(macaulay_resultant(&[f, g]).unwrap(), BigInt::zero());
    }

    #[test]
    fn classical_binary_resultant() {
        // Res(x^2 - y^2, x - y) vanishes; Res(x^2 - y^2, x - 2y) = (4-1)y^2...
        // evaluate: roots of f are x=±y; g(x=2y) nonzero. For binary forms
        // Res(f, g) = prod of g at the roots of f (up to leading coeffs):
        // g(1,1)*g(-1,1) = (1-2)(-1-2) = 3.
        let f = parse("X0^2-X1^2", 2).unwrap();
        let g0 = parse("X0-X1", 2).unwrap();
        let g = parse("X0-2*X1", 2).unwrap();
        assert_eq!(macaulay_resultant(&[f.clone(), g0]).unwrap(), BigInt::zero());
        assert_eq!(macaulay_resultant(&[f, g]).unwrap(), BigInt::from(3));
    }

    #[test]
    fn binary_quadratic_pair_matches_sylvester() {
        // Res(x^2+y^2, xy) = 1 by the Sylvester determinant.
        let f = parse("X0^2+X1^2", 2).unwrap();
        let g = parse("X0*X1", 2).unwrap();
        assert_eq!(macaulay_resultant(&[f, g]).unwrap(), BigInt::from(1));
    }

    #[test]
    fn invariant_under_determinant_one_shears() {
        let forms = [
            parse("X0^2+2*X1*X2", 3).unwrap(),
            parse("X1^2-X0*X2+X2^2", 3).unwrap(),
            parse("3*X0*X1+X2^2", 3).unwrap(),
        ];
        let base = macaulay_resultant(&forms).unwrap();
        // Apply X1 -> X1 + X2 by hand and recompute.
        let shear = parse("X1+X2", 3).unwrap();
        let sheared: Vec<MultiPoly> = forms
            .iter()
            .map(|f| f.substitute(1, &shear).unwrap())
            .collect();
        assert_eq!(macaulay_resultant(&sheared).unwrap(), base);
        assert_ne!(base, BigInt::zero());
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 7).len(), 36);
        assert_eq!(monomials_of_degree(3, 13).len(), 105);
        // Descending graded-lex: first is X0^t.
        let ms = monomials_of_degree(3, 4);
        assert_eq!(ms[0].exps(), &[4, 0, 0]);
        assert_eq!(ms.last().unwrap().exps(), &[0, 0, 4]);
    }
}
