//! Cyclotomic fields ℚ(ζ_M) in canonical residue form modulo Φ_M.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{poly, ExactError, Rational};

/// Precomputed data for ℚ(ζ_M): Φ_M and the residues of x^k for 0 ≤ k < M.
#[derive(Debug)]
pub struct CycField {
    order: u64,
    phi: Vec<BigInt>,
    powers: Vec<Vec<(usize, BigInt)>>,
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![BigInt::zero(); num.len() - dd];
    for shift in (0..quo.len()).rev() {
        let q = rem[shift + dd].clone();
        if q.is_zero() {
            continue;
        }
        for (i, c) in den.iter().enumerate() {
            if !c.is_zero() {
                rem[shift + i] -= &q * c;
            }
        }
        quo[shift] = q;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quo
}

fn integer_cyclotomic(order: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&order) {
        return p.clone();
    }
    // x^M − 1 = Π_{d | M} Φ_d
    let mut p = vec![BigInt::zero(); order as usize + 1];
    p[0] = BigInt::from(-1);
    p[order as usize] = BigInt::one();
    for d in 1..order {
        if order % d == 0 {
            let phi_d = integer_cyclotomic(d, memo);
            p = exact_div_monic(&p, &phi_d);
        }
    }
    memo.insert(order, p.clone());
    p
}

impl CycField {
    fn build(order: u64) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = integer_cyclotomic(order, &mut HashMap::new());
        let d = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); d];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, c.clone()))
                    .collect(),
            );
            let carry = cur[d - 1].clone();
            for i in (1..d).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !carry.is_zero() {
                for i in 0..d {
                    if !phi[i].is_zero() {
                        cur[i] -= &carry * &phi[i];
                    }
                }
            }
        }
        CycField { order, phi, powers }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// deg Φ_M = φ(M).
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    fn reduce_into(&self, acc: &mut [Rational], exp: usize, coeff: &Rational) {
        for (i, c) in &self.powers[exp % self.order as usize] {
            acc[*i] += coeff * Rational::from_integer(c.clone());
        }
    }
}

/// Shared field context for order `order`; built once per process.
pub fn field(order: u64) -> Arc<CycField> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().expect("field cache poisoned").get(&order) {
        return f.clone();
    }
    let built = Arc::new(CycField::build(order));
    cache
        .lock()
        .expect("field cache poisoned")
        .entry(order)
        .or_insert(built)
        .clone()
}

/// Coefficients of Φ_M, low degree first.
pub fn cyclotomic_polynomial(order: u64) -> Vec<Rational> {
    field(order)
        .phi
        .iter()
        .map(|c| Rational::from_integer(c.clone()))
        .collect()
}

/// An element of ℚ(ζ_M), stored as its canonical residue modulo Φ_M.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero(order: u64) -> Self {
        let field = field(order);
        let coeffs = vec![Rational::zero(); field.degree()];
        CycNum { field, coeffs }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u64, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_integer(order: u64, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    /// ζ_M^k; `k` is reduced modulo M.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        let field = field(order);
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Rational::zero(); field.degree()];
        field.reduce_into(&mut coeffs, e, &Rational::one());
        CycNum { field, coeffs }
    }

    /// Reduces Σ c_k x^k (any degree) modulo Φ_M.
    pub fn from_poly(order: u64, poly: &[Rational]) -> Self {
        let field = field(order);
        let mut coeffs = vec![Rational::zero(); field.degree()];
        for (k, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                field.reduce_into(&mut coeffs, k, c);
            }
        }
        CycNum { field, coeffs }
    }

    /// Canonical coefficients; rejects sequences of the wrong length.
    pub fn from_coeffs(order: u64, coeffs: Vec<Rational>) -> Result<Self, ExactError> {
        let field = field(order);
        if coeffs.len() != field.degree() {
            return Err(ExactError::BadLength {
                expected: field.degree(),
                found: coeffs.len(),
            });
        }
        Ok(CycNum { field, coeffs })
    }

    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it lies in ℚ.
    pub fn to_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<(), ExactError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(ExactError::OrderMismatch(self.order(), other.order()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        let d = self.field.degree();
        let lhs: Vec<(usize, &Rational)> = nonzero(&self.coeffs);
        let rhs: Vec<(usize, &Rational)> = nonzero(&other.coeffs);
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in &lhs {
            for (j, b) in &rhs {
                prod[i + j] += *a * *b;
            }
        }
        let mut coeffs: Vec<Rational> = prod.drain(..d).collect();
        for (k, c) in prod.iter().enumerate() {
            if !c.is_zero() {
                self.field.reduce_into(&mut coeffs, k + d, c);
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let modulus: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let inv = poly::inverse_mod(&self.coeffs, &modulus).ok_or(ExactError::DivisionByZero)?;
        let mut coeffs = vec![Rational::zero(); self.field.degree()];
        for (i, c) in inv.into_iter().enumerate() {
            coeffs[i] = c;
        }
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplication by ζ_M^k.
    pub fn mul_root(&self, k: i64) -> Self {
        let m = self.order() as i64;
        let mut coeffs = vec![Rational::zero(); self.field.degree()];
        for (i, c) in nonzero(&self.coeffs) {
            let e = (i as i64 + k).rem_euclid(m) as usize;
            self.field.reduce_into(&mut coeffs, e, c);
        }
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Complex conjugation ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        let m = self.order() as usize;
        let mut coeffs = vec![Rational::zero(); self.field.degree()];
        for (i, c) in nonzero(&self.coeffs) {
            self.field.reduce_into(&mut coeffs, (m - i) % m, c);
        }
        CycNum {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Writes the value as q·ζ_M^k when it has that shape, preferring q > 0.
    pub fn as_scaled_root(&self) -> Option<(Rational, u64)> {
        if self.is_zero() {
            return None;
        }
        let (q, k) = (0..self.order()).find_map(|k| {
            self.mul_root(-(k as i64))
                .to_rational()
                .map(|q| (q, k))
        })?;
        let m = self.order();
        if q.is_negative() && m % 2 == 0 {
            return Some((-q, (k + m / 2) % m));
        }
        Some((q, k))
    }
}

fn nonzero(v: &[Rational]) -> Vec<(usize, &Rational)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.coeffs == other.coeffs
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics when the orders differ; use the `try_` form to get an error instead.
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.order();
        if let Some(q) = self.to_rational() {
            return f.write_str(&fmt_rational(&q));
        }
        if let Some((q, k)) = self.as_scaled_root() {
            // reduce ζ_M^k to a primitive root of the smallest order
            let g = k.gcd(&m);
            let (k, m) = (k / g, m / g);
            let root = format!("z{m}^{k}");
            return if q.is_one() {
                f.write_str(&root)
            } else if q == -Rational::one() {
                write!(f, "-{root}")
            } else {
                write!(f, "{}*{root}", fmt_rational(&q))
            };
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = fmt_rational(&c.abs());
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.as_str()) {
                (0, _) => f.write_str(&mag)?,
                (_, "1") => write!(f, "z{m}^{i}")?,
                _ => write!(f, "{mag}*z{m}^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    order: u64,
    coeffs: Vec<(String, String)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycNumJson {
            order: self.order(),
            coeffs: self
                .coeffs
                .iter()
                .map(|c| (c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = CycNumJson::deserialize(deserializer)?;
        if raw.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|(n, d)| {
                let n: BigInt = n.parse().map_err(D::Error::custom)?;
                let d: BigInt = d.parse().map_err(D::Error::custom)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rational::new(n, d))
            })
            .collect::<Result<Vec<_>, _>>()?;
        CycNum::from_coeffs(raw.order, coeffs).map_err(D::Error::custom)
    }
}

/// A finite sum Σ q_k ζ_M^k kept unreduced, in the group ring ℚ[ℤ/M].
///
/// Cheap to multiply when the terms are few; `to_cyc` produces the canonical value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSum {
    order: u64,
    // sorted by exponent, no zero coefficients
    terms: Vec<(u64, Rational)>,
}

impl RootSum {
    pub fn zero(order: u64) -> Self {
        RootSum {
            order,
            terms: Vec::new(),
        }
    }

    pub fn one(order: u64) -> Self {
        Self::monomial(order, 0, Rational::one())
    }

    pub fn root(order: u64, k: i64) -> Self {
        Self::monomial(order, k, Rational::one())
    }

    pub fn monomial(order: u64, k: i64, q: Rational) -> Self {
        let terms = if q.is_zero() {
            Vec::new()
        } else {
            vec![(k.rem_euclid(order as i64) as u64, q)]
        };
        RootSum { order, terms }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }

    /// True when no terms remain; a nonempty sum may still be zero in the field.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn normalise(mut terms: Vec<(u64, Rational)>, order: u64) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut out: Vec<(u64, Rational)> = Vec::with_capacity(terms.len());
        for (k, q) in terms {
            match out.last_mut() {
                Some((lk, lq)) if *lk == k => *lq += q,
                _ => out.push((k, q)),
            }
        }
        out.retain(|(_, q)| !q.is_zero());
        RootSum { order, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "root sums of different orders");
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Self::normalise(terms, self.order)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "root sums of different orders");
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, p) in &self.terms {
            for (b, q) in &other.terms {
                terms.push(((a + b) % self.order, p * q));
            }
        }
        Self::normalise(terms, self.order)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (*k, c * q)).collect();
        Self::normalise(terms, self.order)
    }

    pub fn to_cyc(&self) -> CycNum {
        let field = field(self.order);
        let mut coeffs = vec![Rational::zero(); field.degree()];
        for (k, q) in &self.terms {
            field.reduce_into(&mut coeffs, *k as usize, q);
        }
        CycNum { field, coeffs }
    }
}

/// Accumulates integer multiples of roots of unity without intermediate reduction.
#[derive(Clone, Debug)]
pub struct RootCounter {
    counts: Vec<BigInt>,
}

impl RootCounter {
    pub fn new(order: u64) -> Self {
        RootCounter {
            counts: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn bump(&mut self, k: u64, by: i64) {
        let idx = (k % self.counts.len() as u64) as usize;
        self.counts[idx] += by;
    }

    pub fn to_cyc(&self) -> CycNum {
        let order = self.counts.len() as u64;
        let field = field(order);
        let mut coeffs = vec![Rational::zero(); field.degree()];
        for (k, c) in self.counts.iter().enumerate() {
            if !c.is_zero() {
                field.reduce_into(&mut coeffs, k, &Rational::from_integer(c.clone()));
            }
        }
        CycNum { field, coeffs }
    }
}
