//! Exact scalars: rationals and cyclotomic numbers.

mod cyclotomic;
mod matrix;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, field, CycField, CycNum, RootCounter, RootSum};
pub use matrix::{CycMatrix, RowReducer};

use thiserror::Error;

/// Arbitrary-precision rational with reduced, positive-denominator normal form.
pub type Rational = num_rational::BigRational;

/// Integer as a [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d` as a [`Rational`]; `d` must be nonzero.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u64, u64),
    #[error("expected {expected} coefficients, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("shape mismatch: {0}x{1} times {2}x{3}")]
    Shape(usize, usize, usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic with order checking.
pub fn cyc_arith(a: &CycNum, b: &CycNum, op: ArithOp) -> Result<CycNum, ExactError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

/// ζ_M^k in canonical form.
pub fn root_of_unity(order: u64, k: i64) -> CycNum {
    CycNum::root_of_unity(order, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![rat(-1), rat(1)]);
        assert_eq!(cyclotomic_polynomial(3), vec![rat(1), rat(1), rat(1)]);
        assert_eq!(cyclotomic_polynomial(2), vec![rat(1), rat(1)]);
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(root_of_unity(4, 2), CycNum::from_integer(4, -1));
        assert!(root_of_unity(9, 0).is_one());
        assert!((&root_of_unity(12, 4) * &root_of_unity(12, 8)).is_one());
        assert_eq!(root_of_unity(12, 17), root_of_unity(12, 5));
        assert_eq!(root_of_unity(12, -1), root_of_unity(12, 11));
    }

    #[test]
    fn phi3_relation() {
        let one_plus = &CycNum::one(3) + &root_of_unity(3, 1);
        assert!((&one_plus + &root_of_unity(3, 2)).is_zero());
    }

    #[test]
    fn inverse_times_root() {
        for m in [5u64, 12, 63] {
            let z = root_of_unity(m, 1);
            assert!((&z * &root_of_unity(m, m as i64 - 1)).is_one());
        }
    }

    #[test]
    fn division_errors() {
        let z = CycNum::zero(5);
        assert_eq!(CycNum::one(5).try_div(&z), Err(ExactError::DivisionByZero));
        assert_eq!(
            cyc_arith(&CycNum::one(5), &CycNum::one(7), ArithOp::Add),
            Err(ExactError::OrderMismatch(5, 7))
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(CycNum::from_rational(9, frac(-2, 3)).to_string(), "-2/3");
        assert_eq!(root_of_unity(63, 21).scale(&frac(1, 3)).to_string(), "1/3*z3^1");
        assert_eq!(root_of_unity(4, 3).to_string(), "z4^3");
    }

    #[test]
    fn scaled_root_detection() {
        let x = root_of_unity(63, 50).scale(&frac(1, 3));
        assert_eq!(x.as_scaled_root(), Some((frac(1, 3), 50)));
        let y = &root_of_unity(63, 1) + &CycNum::one(63);
        assert_eq!(y.as_scaled_root(), None);
    }

    #[test]
    fn json_round_trip() {
        let x = &root_of_unity(12, 7).scale(&frac(5, 4)) + &CycNum::from_integer(12, 3);
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with("{\"order\":12,\"coeffs\":[[\"3\",\"1\"]"));
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn conj_inverts_roots() {
        assert_eq!(root_of_unity(21, 5).conj(), root_of_unity(21, 16));
    }

    #[test]
    fn root_sum_reduces_like_cycnum() {
        let a = RootSum::monomial(12, 5, frac(1, 2)).add(&RootSum::root(12, 11));
        let b = RootSum::root(12, 4);
        let lhs = a.mul(&b).to_cyc();
        let rhs = &a.to_cyc() * &b.to_cyc();
        assert_eq!(lhs, rhs);
    }
}
