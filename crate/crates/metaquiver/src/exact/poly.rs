//! Dense univariate polynomials over ℚ, coefficients stored low degree first.

use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Rational> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Rational::zero(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let q = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate().take(db + 1) {
            if !c.is_zero() {
                rem[i + shift] -= &q * c;
            }
        }
        quo[shift] = q;
        trim(&mut rem);
    }
    trim(&mut quo);
    (quo, rem)
}

/// Inverse of `a` modulo `modulus` via the extended Euclidean algorithm.
/// Returns `None` when gcd(a, modulus) ≠ 1.
pub(crate) fn inverse_mod(a: &[Rational], modulus: &[Rational]) -> Option<Vec<Rational>> {
    let (mut r0, mut r1) = (modulus.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut t0, mut t1): (Vec<Rational>, Vec<Rational>) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is the gcd, t0·a ≡ r0.
    if degree(&r0) != Some(0) {
        return None;
    }
    let scale = Rational::one() / &r0[0];
    let mut inv: Vec<Rational> = t0.into_iter().map(|c| c * &scale).collect();
    let (_, rem) = divrem(&inv, modulus);
    inv = rem;
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> Rational {
        Rational::from_integer(BigInt::from(v))
    }

    #[test]
    fn divrem_reconstructs_dividend() {
        let a = vec![q(1), q(-3), q(0), q(2)];
        let b = vec![q(1), q(1)];
        let (quo, rem) = divrem(&a, &b);
        let mut back = mul(&quo, &b);
        back.resize(a.len(), q(0));
        for (i, c) in rem.iter().enumerate() {
            back[i] += c;
        }
        assert_eq!(back, a);
    }

    #[test]
    fn inverse_of_x_modulo_x2_plus_1() {
        let inv = inverse_mod(&[q(0), q(1)], &[q(1), q(0), q(1)]).unwrap();
        assert_eq!(inv, vec![q(0), q(-1)]);
    }

    #[test]
    fn non_coprime_has_no_inverse() {
        assert!(inverse_mod(&[q(-1), q(1)], &[q(-1), q(0), q(1)]).is_none());
    }
}
