//! Reduced Burau representation, Alexander polynomial, and link determinant.
//!
//! This is the independent verification engine: braid closures are checked
//! against Conway-side predictions through `det`, never the other way
//! around. All arithmetic is exact.

use crate::braid::BraidWord;
use crate::laurent::{Coeff, LaurentMatrix, LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("exact division left a remainder while normalizing: {0}")]
    Division(#[from] PolyError),
}

/// Reduced Burau matrix of one generator (or inverse) on `n` strands.
fn generator_matrix<C: Coeff>(n: usize, index: u8, positive: bool) -> LaurentMatrix<C> {
    let dim = n - 1;
    let mut m = LaurentMatrix::identity(dim);
    let r = index as usize - 1;
    if positive {
        // row r: [.. t, -t, 1 ..]
        m[(r, r)] = LaurentPoly::monomial(1, -C::one());
        if r > 0 {
            m[(r, r - 1)] = LaurentPoly::monomial(1, C::one());
        }
        if r + 1 < dim {
            m[(r, r + 1)] = LaurentPoly::one();
        }
    } else {
        // row r: [.. 1, -t^-1, t^-1 ..]
        m[(r, r)] = LaurentPoly::monomial(-1, -C::one());
        if r > 0 {
            m[(r, r - 1)] = LaurentPoly::one();
        }
        if r + 1 < dim {
            m[(r, r + 1)] = LaurentPoly::monomial(-1, C::one());
        }
    }
    m
}

/// Product of reduced Burau generator matrices in word order; degree `d`
/// contributes the `d`-th matrix power.
pub fn burau_reduced<C: Coeff>(word: &BraidWord) -> LaurentMatrix<C> {
    let n = word.strands();
    let dim = n.saturating_sub(1);
    let mut acc = LaurentMatrix::identity(dim);
    for l in word.letters() {
        let g = generator_matrix::<C>(n, l.index, l.positive);
        for _ in 0..l.degree {
            acc = acc.mul(&g);
        }
    }
    acc
}

/// Alexander polynomial of the closure, normalized so the lowest exponent
/// is 0 and the leading coefficient is positive.
///
/// Computed as `det(burau(w) - I)` divided exactly by `1 + t + ... +
/// t^(n-1)`; a nonzero remainder signals an implementation bug.
pub fn alexander<C: Coeff>(word: &BraidWord) -> Result<LaurentPoly<C>, InvariantError> {
    let n = word.strands();
    if n <= 1 {
        return Ok(LaurentPoly::one());
    }
    let m = burau_reduced::<C>(word);
    let det = m.sub_identity().det();
    let divisor = LaurentPoly::<C>::cyclotomic_like(n);
    let quotient = det.div_exact(&divisor)?;
    Ok(quotient.normalized())
}

/// Link determinant `|Delta(-1)|`, evaluated after the exact division.
pub fn determinant(word: &BraidWord) -> Result<u64, InvariantError> {
    let delta = alexander::<i64>(word)?;
    Ok(delta.eval_at_unit(-1).unsigned_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly<i64> {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn w(s: &str) -> BraidWord {
        parse_braid(s).unwrap()
    }

    #[test]
    fn burau_base_cases() {
        let m = burau_reduced::<i64>(&w("A"));
        assert_eq!(m.n, 1);
        assert_eq!(m[(0, 0)], poly(&[(1, -1)]));
        // Inverse pairs cancel.
        let id = burau_reduced::<i64>(&w("Aa"));
        assert_eq!(id, LaurentMatrix::identity(1));
        let id3 = burau_reduced::<i64>(&w("BbAa"));
        assert_eq!(id3, LaurentMatrix::identity(2));
    }

    #[test]
    fn burau_is_homomorphism() {
        let u = w("AbA");
        let v = w("bCa");
        let mut uv_letters = u.letters().to_vec();
        uv_letters.extend_from_slice(v.letters());
        let uv = BraidWord::new(uv_letters);
        // Pad to common strand count by embedding in 4 strands.
        let n = uv.strands();
        let pad = |word: &BraidWord| -> LaurentMatrix<i64> {
            let dim = n - 1;
            let mut acc = LaurentMatrix::identity(dim);
            for l in word.letters() {
                let g = generator_matrix::<i64>(n, l.index, l.positive);
                for _ in 0..l.degree {
                    acc = acc.mul(&g);
                }
            }
            acc
        };
        assert_eq!(pad(&u).mul(&pad(&v)), pad(&uv));
    }

    #[test]
    fn alexander_oracle_values() {
        // Unknot closure
        assert_eq!(alexander::<i64>(&w("A")).unwrap(), poly(&[(0, 1)]));
        // Trefoil: det(-t^3 - 1) / (1 + t) -> t^2 - t + 1
        assert_eq!(alexander::<i64>(&w("A^3")).unwrap(), poly(&[(2, 1), (1, -1), (0, 1)]));
        // Figure-eight: t^2 - 3t + 1
        assert_eq!(alexander::<i64>(&w("AbAb")).unwrap(), poly(&[(2, 1), (1, -3), (0, 1)]));
        // Empty word: one-strand unknot
        assert_eq!(alexander::<i64>(&BraidWord::empty()).unwrap(), poly(&[(0, 1)]));
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&w("AbAb")).unwrap(), 5);
        assert_eq!(determinant(&w("A^3")).unwrap(), 3);
        assert_eq!(determinant(&w("A^2bAb")).unwrap(), 8);
    }

    #[test]
    fn alexander_invariant_under_rotation_and_flip() {
        for s in ["AbACbC", "A^2bAb^2", "AbAbCbC", "A^3bAb"] {
            let word = w(s);
            let base = alexander::<i64>(&word).unwrap();
            for k in 0..word.letter_count() {
                assert_eq!(alexander::<i64>(&word.rotated(k)).unwrap(), base, "{} rot {}", s, k);
            }
            assert_eq!(alexander::<i64>(&word.flipped()).unwrap(), base, "{} flip", s);
            assert_eq!(alexander::<i64>(&word.reversed()).unwrap(), base, "{} rev", s);
        }
    }

    #[test]
    fn knot_alexander_is_palindromic() {
        for s in ["A^3", "AbAb", "A^2bAb^2", "AbAbAb^2"] {
            let word = w(s);
            if word.component_count() != 1 {
                continue;
            }
            let delta = alexander::<i64>(&word).unwrap();
            let coeffs: Vec<i64> =
                (0..=delta.max_exp().unwrap()).map(|e| delta.coeff(e)).collect();
            let mut rev = coeffs.clone();
            rev.reverse();
            assert_eq!(coeffs, rev, "{}", s);
        }
    }
}
