//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycScalar`] carries its own order `N` and its coordinates in the power
//! basis `1, ζ_N, …, ζ_N^{φ(N)-1}`. Binary operations embed both operands into
//! `Q(ζ_lcm)` first, so scalars from different fields mix freely.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported cyclotomic order.
pub const MAX_ORDER: u32 = 360;

/// Returns the coefficients (constant term first) of the `n`-th cyclotomic
/// polynomial, computed by dividing `x^n - 1` by `Φ_d` for every proper
/// divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

struct Field {
    phi: usize,
    modulus: Vec<BigRational>,
    // powers[j] = canonical coordinates of ζ^j, 0 <= j < N
    powers: Vec<Vec<BigRational>>,
}

impl Field {
    fn new(n: u32) -> Field {
        let modulus: Vec<BigRational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        let phi = modulus.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![BigRational::zero(); phi];
        cur[0] = BigRational::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x, then reduce the overflowing x^phi term
            let top = cur[phi - 1].clone();
            let mut next = vec![BigRational::zero(); phi];
            next[1..phi].clone_from_slice(&cur[..(phi - 1)]);
            if !top.is_zero() {
                for (i, m) in modulus.iter().take(phi).enumerate() {
                    next[i] -= &top * m;
                }
            }
            cur = next;
        }
        Field { phi, modulus, powers }
    }
}

fn field(n: u32) -> Arc<Field> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().unwrap().get(&n) {
        return f.clone();
    }
    if n == 0 || n > MAX_ORDER {
        panic!("{}", Error::OrderTooLarge(n));
    }
    let f = Arc::new(Field::new(n));
    cache.write().unwrap().entry(n).or_insert(f).clone()
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycScalar {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycScalar {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// Builds a scalar from raw power-basis coordinates at order `n`,
    /// reducing when more than `φ(n)` coordinates are supplied.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let f = field(n);
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[k % n as usize]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(CycScalar { order: n, coeffs: out })
    }

    /// `ζ_n^k` in canonical form.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field(n);
        let j = k.rem_euclid(n as i64) as usize;
        CycScalar {
            order: n,
            coeffs: f.powers[j].clone(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            // for N > 2 the power basis starts 1, ζ, ..., so a rational has
            // all higher coordinates zero; orders 1 and 2 have φ = 1
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Re-expresses the scalar in `Q(ζ_m)`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrder {
                from: self.order,
                to: m,
            });
        }
        if m > MAX_ORDER {
            return Err(Error::OrderTooLarge(m));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let f = field(m);
        let mut out = vec![BigRational::zero(); f.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&f.powers[(k * step) % m as usize]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        Ok(CycScalar { order: m, coeffs: out })
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (
            self.embed(m).expect("lcm embedding"),
            other.embed(m).expect("lcm embedding"),
        )
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        if self.order == other.order {
            let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
            return CycScalar {
                order: self.order,
                coeffs,
            };
        }
        let (a, b) = self.common(other);
        a.zip_with(&b, f)
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul_ref(&b);
        }
        let n = self.order as usize;
        let f = field(self.order);
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (o, p) in out.iter_mut().zip(&f.powers[(i + j) % n]) {
                    if !p.is_zero() {
                        *o += &ab * p;
                    }
                }
            }
        }
        CycScalar {
            order: self.order,
            coeffs: out,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo `Φ_N`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return CycScalar::from_rational(q.recip()).embed(self.order);
        }
        let f = field(self.order);
        let a = trim(self.coeffs.clone());
        let m = trim(f.modulus.clone());
        // s*a + t*m = g, with g a nonzero constant since Φ_N is irreducible
        let (g, s) = ext_gcd(m, a);
        debug_assert_eq!(g.len(), 1);
        let c = g[0].recip();
        let coeffs = s.into_iter().map(|x| x * &c).collect();
        CycScalar::from_coeffs(self.order, coeffs)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl CycScalar {
    /// The same value expressed in the smallest `Q(ζ_m)`, `m | N`, containing
    /// it; equal values get identical representations.
    pub fn canonical(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return CycScalar::from_rational(q.clone());
        }
        (3..self.order)
            .filter(|m| self.order.is_multiple_of(*m))
            .find_map(|m| self.restrict(m))
            .unwrap_or_else(|| self.clone())
    }

    // Solves Σ c_k ζ_m^k = self over Q, k < φ(m), by exact elimination.
    fn restrict(&self, m: u32) -> Option<Self> {
        let phi = field(m).phi;
        let step = (self.order / m) as i64;
        let basis: Vec<CycScalar> = (0..phi)
            .map(|k| CycScalar::root_of_unity(self.order, k as i64 * step))
            .collect();
        let mut rows: Vec<Vec<BigRational>> = (0..self.coeffs.len())
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..phi {
            let Some(p) = (top..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(top, p);
            let inv = rows[top][col].recip();
            let pivot: Vec<BigRational> = rows[top].iter().map(|x| x * &inv).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != top && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            rows[top] = pivot;
            pivots.push(col);
            top += 1;
        }
        if rows[top..].iter().any(|r| !r[phi].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); phi];
        for (r, &col) in pivots.iter().enumerate() {
            coeffs[col] = rows[r][phi].clone();
        }
        Some(CycScalar { order: m, coeffs })
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / &lead;
        for (i, d) in b.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(b.len() - 1);
    if rem.is_empty() {
        rem.push(BigRational::zero());
    }
    (quot, trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Returns `(g, s)` with `s*b ≡ g (mod a)`.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let is_zero = |p: &[BigRational]| p.iter().all(Zero::is_zero);
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !is_zero(&r1) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycScalar {}

impl<'a> Add<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a CycScalar> for &'a CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl std::iter::Sum for CycScalar {
    fn sum<I: Iterator<Item = CycScalar>>(iter: I) -> Self {
        iter.fold(CycScalar::zero(), |a, b| a + b)
    }
}

impl From<i64> for CycScalar {
    fn from(n: i64) -> Self {
        CycScalar::from_integer(n)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // independent oracle: naive long division of x^n - 1 by every Φ_d, d | n, d < n
    fn oracle_phi(n: u32) -> Vec<i64> {
        let mut p = vec![0i64; n as usize + 1];
        p[0] = -1;
        p[n as usize] = 1;
        for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
            let q = oracle_phi(d);
            let mut out = vec![0i64; p.len() - q.len() + 1];
            let mut r = p.clone();
            for k in (0..out.len()).rev() {
                out[k] = r[k + q.len() - 1];
                for (i, c) in q.iter().enumerate() {
                    r[k + i] -= out[k] * c;
                }
            }
            p = out;
        }
        p
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), oracle_phi(4));
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n), "degree of Φ_{n}");
        }
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycScalar::root_of_unity(2, 1), CycScalar::from_integer(-1));
        let z4 = CycScalar::root_of_unity(4, 1);
        assert_eq!(&z4 * &z4, CycScalar::from_integer(-1));
        assert_eq!(CycScalar::root_of_unity(4, 2), CycScalar::from_integer(-1));
        assert!(CycScalar::root_of_unity(3, 3).is_one());
        assert!(CycScalar::root_of_unity(7, 0).is_one());
    }

    #[test]
    fn arithmetic_examples() {
        let z3 = CycScalar::root_of_unity(3, 1);
        let z3sq = CycScalar::root_of_unity(3, 2);
        assert!((&z3 * &z3sq).is_one());
        let half = CycScalar::from_ratio(1, 2);
        assert!((&half + &half).is_one());
        let z4 = CycScalar::root_of_unity(4, 1);
        assert!(z4.checked_div(&z4).unwrap().is_one());
        assert_eq!(z4.checked_div(&CycScalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn embedding_examples() {
        let m1 = CycScalar::from_integer(-1).embed(2).unwrap().embed(4).unwrap();
        assert_eq!(m1.order(), 4);
        assert_eq!(
            m1.coeffs(),
            &[BigRational::from_integer((-1).into()), BigRational::zero()]
        );
        let z6 = CycScalar::root_of_unity(6, 1);
        let z3 = CycScalar::root_of_unity(3, 1).embed(6).unwrap();
        assert_eq!(z3.order(), 6);
        assert_eq!(z3, &z6 * &z6);
        assert!(CycScalar::one().embed(12).unwrap().is_one());
        assert!(matches!(
            CycScalar::root_of_unity(3, 1).embed(4),
            Err(Error::IncompatibleOrder { from: 3, to: 4 })
        ));
    }

    #[test]
    fn roots_sum_to_zero() {
        for n in 2..=24u32 {
            let z = CycScalar::root_of_unity(n, 1);
            assert!(z.pow(n).is_one());
            let s: CycScalar = (0..n as i64).map(|k| CycScalar::root_of_unity(n, k)).sum();
            assert!(s.is_zero(), "sum of {n}-th roots");
        }
    }

    #[test]
    fn mixed_orders_compare_equal() {
        let a = CycScalar::root_of_unity(4, 2);
        assert_eq!(a, CycScalar::from_integer(-1));
        assert_eq!(CycScalar::root_of_unity(12, 4), CycScalar::root_of_unity(3, 1));
    }

    #[test]
    fn canonical_form_is_the_smallest_field() {
        let half = CycScalar::from_ratio(1, 2);
        let c = half.embed(2).unwrap().canonical();
        assert_eq!((c.order(), c.coeffs()), (1, half.coeffs()));
        let i = CycScalar::root_of_unity(4, 1);
        assert_eq!(i.embed(8).unwrap().canonical().order(), 4);
        // −ζ_3² = ζ_6 lives in Q(ζ_3)
        let z6 = CycScalar::root_of_unity(6, 1);
        let c = z6.canonical();
        assert_eq!(c.order(), 3);
        assert_eq!(c, z6);
        let s = CycScalar::root_of_unity(8, 1) + CycScalar::root_of_unity(8, 7);
        // ζ_8 + ζ_8⁻¹ = √2 needs all of Q(ζ_8)
        assert_eq!(s.canonical().order(), 8);
        for n in [5u32, 12, 24] {
            let x = CycScalar::root_of_unity(n, 1);
            let y = x.embed(2 * n).unwrap().canonical();
            assert_eq!((y.order(), y.coeffs()), (x.order(), x.coeffs()));
        }
    }

    #[test]
    fn display() {
        assert_eq!(CycScalar::from_ratio(-1, 2).to_string(), "-1/2");
        let x = &CycScalar::from_integer(2) * &CycScalar::root_of_unity(5, 2);
        assert_eq!(x.to_string(), "2*z5^2");
        assert_eq!(CycScalar::zero().to_string(), "0");
    }
}
