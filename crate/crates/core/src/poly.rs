//! Dense univariate polynomials over an exact scalar, plus rational
//! functions and integer interpolation.
//!
//! The polynomial type is generic over its coefficient ring through
//! `num-traits` bounds; the crate root exports the concrete alias
//! [`crate::QPoly`] = `Poly<BigInt>` used for all q-analogs and Hall
//! polynomials. Nesting works too: `Poly<Poly<Int>>` is a valid scalar for
//! fraction-free elimination.

use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Coefficient ring bound: a commutative ring with exact equality.
pub trait Coeff:
    Clone
    + Eq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
{
}

/// Exact division in a ring: `Some(q)` iff `self = q * rhs` exactly.
pub trait ExactDiv: Sized {
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

impl ExactDiv for Int {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        r.is_zero().then_some(q)
    }
}

/// Dense polynomial with coefficients of low degree first and no trailing
/// zeros; the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

// On the wire a q-polynomial is a plain JSON integer array, low degree
// first. Desk-scale coefficients fit in i128 comfortably; anything larger is
// a serialization error rather than a silent format change.
impl serde::Serialize for Poly<Int> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::{Error as _, SerializeSeq};
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            let v = i128::try_from(c.clone())
                .map_err(|_| S::Error::custom("coefficient exceeds i128"))?;
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for Poly<Int> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<i128>::deserialize(d)?;
        Ok(Poly::from_coeffs(coeffs.into_iter().map(Int::from).collect()))
    }
}

impl<T: Coeff> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }

    pub fn constant(c: T) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.normalize();
        p
    }

    /// The monomial `c · q^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let mut coeffs = vec![T::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c.clone();
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.clone().neg())
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }
}

impl<T: Coeff + ExactDiv> Poly<T> {
    /// Exact long division: `Some((quot, rem))` with every coefficient
    /// division exact, `None` when a leading-coefficient division fails.
    pub fn div_rem_exact(&self, rhs: &Self) -> Option<(Self, Self)> {
        let d = rhs.degree()?; // None for zero divisor
        let lead = rhs.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading().unwrap().exact_div(lead)?;
            quot[rd - d] = factor.clone();
            let sub = rhs.mul_ref(&Poly::monomial(factor, rd - d));
            rem = rem.sub_ref(&sub);
        }
        Some((Poly::from_coeffs(quot), rem))
    }

    /// Exact division with zero remainder required.
    pub fn exact_div_poly(&self, rhs: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_exact(rhs)?;
        r.is_zero().then_some(q)
    }
}

impl<T: Coeff + ExactDiv> ExactDiv for Poly<T> {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
}

impl<T: Coeff> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Self {
        self.add_ref(&rhs)
    }
}

impl<T: Coeff> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Self {
        self.sub_ref(&rhs)
    }
}

impl<T: Coeff> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Self {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Coeff> AddAssign for Poly<T> {
    fn add_assign(&mut self, rhs: Self) {
        *self = self.add_ref(&rhs);
    }
}

impl<T: Coeff> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

impl Poly<Int> {
    /// Evaluates at an `i64` point.
    pub fn eval_i64(&self, x: i64) -> Int {
        self.eval(&Int::from(x))
    }

    /// Evaluates at a rational point.
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + Rat::from_integer(c.clone());
        }
        acc
    }
}

impl fmt::Display for Poly<Int> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if i >= 1 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "q")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl<T: Coeff + fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Reduced rational function `num/den` in `q` with integer coefficients.
///
/// The denominator is nonzero, `gcd(num, den)` is constant, and the leading
/// coefficient of the denominator is positive.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct QRational {
    num: Poly<Int>,
    den: Poly<Int>,
}

impl QRational {
    pub fn new(num: Poly<Int>, den: Poly<Int>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let mut r = QRational { num, den };
        r.reduce();
        Ok(r)
    }

    pub fn from_poly(p: Poly<Int>) -> Self {
        QRational {
            num: p,
            den: Poly::one(),
        }
    }

    /// `q^k` for any integer `k`, negative exponents allowed.
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            QRational::from_poly(Poly::monomial(Int::one(), k as usize))
        } else {
            QRational {
                num: Poly::one(),
                den: Poly::monomial(Int::one(), (-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &Poly<Int> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Int> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(num)` when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<Int>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add_ref(&self, rhs: &Self) -> Self {
        let num = self.num.mul_ref(&rhs.den).add_ref(&rhs.num.mul_ref(&self.den));
        let den = self.den.mul_ref(&rhs.den);
        let mut r = QRational { num, den };
        r.reduce();
        r
    }

    pub fn mul_ref(&self, rhs: &Self) -> Self {
        let mut r = QRational {
            num: self.num.mul_ref(&rhs.num),
            den: self.den.mul_ref(&rhs.den),
        };
        r.reduce();
        r
    }

    /// Evaluates at a rational point; `None` when the denominator vanishes.
    pub fn eval_rat(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(x) / d)
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one();
            return;
        }
        let g = poly_gcd(&self.num, &self.den);
        self.num = self.num.exact_div_poly(&g).expect("gcd divides");
        self.den = self.den.exact_div_poly(&g).expect("gcd divides");
        // content reduction and sign normalization
        let cn = content(&self.num);
        let cd = content(&self.den);
        let c = num_integer::Integer::gcd(&cn, &cd);
        if !c.is_one() {
            self.num = Poly::from_coeffs(
                self.num.coeffs().iter().map(|a| a.exact_div(&c).unwrap()).collect(),
            );
            self.den = Poly::from_coeffs(
                self.den.coeffs().iter().map(|a| a.exact_div(&c).unwrap()).collect(),
            );
        }
        if self.den.leading().map_or(false, Signed::is_negative) {
            self.num = self.num.clone().neg();
            self.den = self.den.clone().neg();
        }
    }
}

impl fmt::Display for QRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

fn content(p: &Poly<Int>) -> Int {
    let mut g = Int::zero();
    for c in p.coeffs() {
        g = num_integer::Integer::gcd(&g, c);
    }
    if g.is_zero() {
        Int::one()
    } else {
        g
    }
}

/// Primitive-part gcd of integer polynomials via the subresultant-flavored
/// Euclid on primitive parts; result is primitive with positive leading
/// coefficient (1 for coprime inputs).
fn poly_gcd(a: &Poly<Int>, b: &Poly<Int>) -> Poly<Int> {
    fn primitive(p: &Poly<Int>) -> Poly<Int> {
        let c = content(p);
        Poly::from_coeffs(p.coeffs().iter().map(|a| a.exact_div(&c).unwrap()).collect())
    }
    let mut a = primitive(a);
    let mut b = primitive(b);
    while !b.is_zero() {
        // pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b divides exactly
        let da = a.degree().unwrap_or(0);
        let db = b.degree().unwrap();
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let mut lead_pow = Int::one();
        for _ in 0..=(da - db) {
            lead_pow = lead_pow * b.leading().unwrap().clone();
        }
        let scaled = a.scale(&lead_pow);
        let (_, r) = scaled.div_rem_exact(&b).expect("pseudo-division is exact");
        a = b;
        b = if r.is_zero() { Poly::zero() } else { primitive(&r) };
    }
    if a.leading().map_or(false, Signed::is_negative) {
        a = a.neg();
    }
    a
}

/// Interpolates the unique integer polynomial of degree ≤ `degree_bound`
/// through `samples`, using the first `degree_bound + 1` samples and checking
/// the remaining ones.
///
/// Fails if sample points repeat, fewer than `degree_bound + 1` samples are
/// given, the interpolant has a non-integer coefficient, or a later sample
/// disagrees — each of which signals wrong counts or a wrong degree bound.
pub fn interpolate_integer_poly(samples: &[(i64, Int)], degree_bound: usize) -> Result<Poly<Int>> {
    if samples.len() < degree_bound + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} samples for degree bound {degree_bound}, got {}",
            degree_bound + 1,
            samples.len()
        )));
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(x2, _)| x2 == x) {
            return Err(Error::InvalidArgument(format!(
                "duplicate sample point {x}"
            )));
        }
    }
    let fit = &samples[..degree_bound + 1];
    // Newton's divided differences over exact rationals.
    let mut diffs: Vec<Rat> = fit
        .iter()
        .map(|(_, y)| Rat::from_integer(y.clone()))
        .collect();
    for level in 1..fit.len() {
        for i in (level..fit.len()).rev() {
            let dx = Int::from(fit[i].0) - Int::from(fit[i - level].0);
            diffs[i] = (diffs[i].clone() - diffs[i - 1].clone()) / Rat::from_integer(dx);
        }
    }
    // expand Newton form to monomial coefficients
    let mut poly_rat: Vec<Rat> = vec![];
    let mut basis: Vec<Rat> = vec![Rat::one()]; // Π (x - x_j)
    for (i, d) in diffs.iter().enumerate() {
        if poly_rat.len() < basis.len() {
            poly_rat.resize(basis.len(), Rat::zero());
        }
        for (k, b) in basis.iter().enumerate() {
            poly_rat[k] += d.clone() * b.clone();
        }
        // basis *= (x - x_i)
        let xi = Rat::from_integer(Int::from(fit[i].0));
        let mut next = vec![Rat::zero(); basis.len() + 1];
        for (k, b) in basis.iter().enumerate() {
            next[k + 1] += b.clone();
            next[k] -= b.clone() * xi.clone();
        }
        basis = next;
    }
    let mut coeffs = Vec::with_capacity(poly_rat.len());
    for (k, c) in poly_rat.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::NonIntegerInterpolant(format!(
                "coefficient of q^{k} is {c}"
            )));
        }
        coeffs.push(c.to_integer());
    }
    let poly = Poly::from_coeffs(coeffs);
    for (x, y) in &samples[degree_bound + 1..] {
        let got = poly.eval_i64(*x);
        if got != *y {
            return Err(Error::ValidationMismatch(format!(
                "poly({x}) = {got}, sample says {y}"
            )));
        }
    }
    Ok(poly)
}
