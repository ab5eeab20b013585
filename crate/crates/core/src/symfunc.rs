//! The ring of symmetric functions on the monomial and elementary bases,
//! transition matrices, and the Hall algebra isomorphisms into it.
//!
//! Symmetric functions are stored basis-indexed (a finitely supported map
//! from partitions to coefficients). A bounded-variable polynomial expansion
//! — valid by monomial stability once the variable count reaches the degree
//! — serves as the independent oracle for products and basis changes.

use crate::error::{Error, Result};
use crate::f1::{count_zero_one_matrices, elementary_product_expansion};
use crate::partition::{dominance_leq, partitions_of, Partition};
use crate::poly::Coeff;
use crate::zelevinsky::b_polynomial;
use crate::{Int, QPoly};
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use std::collections::BTreeMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Monomial,
    Elementary,
}

/// A symmetric function presented on a named basis with exact coefficients.
/// The scalar is generic; `Int` and [`QPoly`] are the two used in practice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc<C> {
    pub basis: Basis,
    terms: BTreeMap<Partition, C>,
}

impl<C: Coeff> SymFunc<C> {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(basis: Basis, part: Partition, coeff: C) -> Self {
        let mut s = Self::zero(basis);
        s.add_term(part, coeff);
        s
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Partition, C)>) -> Self {
        let mut s = Self::zero(basis);
        for (p, c) in terms {
            s.add_term(p, c);
        }
        s
    }

    pub fn add_term(&mut self, part: Partition, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(part);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, C> {
        &self.terms
    }

    pub fn coeff(&self, part: &Partition) -> C {
        self.terms.get(part).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> SymFunc<D> {
        SymFunc::from_terms(self.basis, self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }
}

// JSON: {"basis":"m"|"e","terms":[{"part":[…],"coeff":[…]}]} with QPoly
// coefficient arrays.
impl serde::Serialize for SymFunc<QPoly> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        struct Term<'a> {
            part: &'a Partition,
            coeff: &'a QPoly,
        }
        let mut st = s.serialize_struct("SymFunc", 2)?;
        st.serialize_field(
            "basis",
            match self.basis {
                Basis::Monomial => "m",
                Basis::Elementary => "e",
            },
        )?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(p, c)| Term { part: p, coeff: c })
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Bounded-variable symmetric polynomial: exponent vectors of fixed length
/// mapped to integer coefficients. This is the literal expansion oracle.
pub type MultiPoly = BTreeMap<Vec<u32>, Int>;

/// `m_λ(x_1, …, x_n)` as an explicit polynomial: the sum over distinct
/// permutations of the padded exponent vector.
pub fn monomial_in_vars(lambda: &Partition, n: usize) -> Result<MultiPoly> {
    if lambda.len() > n {
        return Err(Error::InvalidArgument(format!(
            "m_{lambda} needs at least {} variables, got {n}",
            lambda.len()
        )));
    }
    let mut padded = lambda.parts().to_vec();
    padded.resize(n, 0);
    let mut out = MultiPoly::new();
    for perm in crate::zelevinsky::distinct_permutations(&padded) {
        out.insert(perm, Int::one());
    }
    Ok(out)
}

pub fn multi_mul(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let mut out = MultiPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let exp: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
            let entry = out.entry(exp).or_insert_with(Int::zero);
            *entry += ca.clone() * cb.clone();
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Reads a symmetric polynomial in `n` variables back into monomial-basis
/// coordinates, verifying symmetry on the way.
pub fn read_symmetric(p: &MultiPoly) -> Result<SymFunc<Int>> {
    let mut out = SymFunc::zero(Basis::Monomial);
    for (exp, coeff) in p {
        let sorted = Partition::from_unsorted(exp.clone());
        let mut key = sorted.parts().to_vec();
        key.resize(exp.len(), 0);
        if *exp == key {
            out.add_term(sorted, coeff.clone());
        } else {
            // non-dominant exponent: its coefficient must match the sorted one
            let rep = p.get(&key).cloned().unwrap_or_else(Int::zero);
            if rep != *coeff {
                return Err(Error::CrossCheckMismatch(format!(
                    "polynomial is not symmetric at exponent {exp:?}"
                )));
            }
        }
    }
    Ok(out)
}

/// Maximal degree for [`monomial_product`].
pub const MONOMIAL_PRODUCT_BOUND: u32 = 12;

/// Expansion of `m_λ · m_μ` in the monomial basis, by literal multiplication
/// of monomial symmetric polynomials in `|λ| + |μ|` variables.
pub fn monomial_product(lambda: &Partition, mu: &Partition) -> Result<SymFunc<Int>> {
    let degree = lambda.size() + mu.size();
    if degree > MONOMIAL_PRODUCT_BOUND {
        return Err(Error::BoundExceeded(format!(
            "monomial product degree {degree} exceeds {MONOMIAL_PRODUCT_BOUND}"
        )));
    }
    let n = (degree as usize).max(1);
    let pa = monomial_in_vars(lambda, n)?;
    let pb = monomial_in_vars(mu, n)?;
    read_symmetric(&multi_mul(&pa, &pb))
}

/// Maximal size for [`elementary_to_monomial`].
pub const ELEMENTARY_BOUND: u32 = 10;

/// `e_λ = Σ_μ a_{λμ} m_μ` with coefficients from the {0,1}-matrix count,
/// cross-checked against the literal polynomial expansion of
/// `Π_i m_{(1^{λ_i})}`.
pub fn elementary_to_monomial(lambda: &Partition) -> Result<SymFunc<Int>> {
    if lambda.size() > ELEMENTARY_BOUND {
        return Err(Error::BoundExceeded(format!(
            "elementary_to_monomial bound |λ| ≤ {ELEMENTARY_BOUND}"
        )));
    }
    let mut by_matrices = SymFunc::zero(Basis::Monomial);
    for mu in partitions_of(lambda.size())? {
        let a = count_zero_one_matrices(lambda, &mu)?;
        by_matrices.add_term(mu, a);
    }
    // independent oracle: expand the product of e_r = m_{(1^r)} literally
    let n = (lambda.size() as usize).max(1);
    let mut prod: MultiPoly = MultiPoly::new();
    prod.insert(vec![0; n], Int::one());
    for &part in lambda.parts() {
        let factor = monomial_in_vars(&Partition::column(part), n)?;
        prod = multi_mul(&prod, &factor);
    }
    let expanded = read_symmetric(&prod)?;
    if expanded != by_matrices {
        return Err(Error::CrossCheckMismatch(format!(
            "e_{lambda}: matrix-count and polynomial expansions disagree"
        )));
    }
    Ok(by_matrices)
}

/// Maximal size for [`phi_image`].
pub const PHI_BOUND: u32 = 8;

/// Writes `u_λ` of `Hall(F_1[[t]])` as an integer polynomial in the column
/// generators `u_{(1^r)}`, i.e. as a linear combination of the products
/// `E_π = u_{(1^{π_1})} u_{(1^{π_2})} …`, by inverting the unitriangular
/// expansion system.
fn u_in_elementary_products(lambda: &Partition) -> Result<BTreeMap<Partition, Int>> {
    // E_{λ'} = u_λ + Σ_{μ <d λ} a_{λ'μ} u_μ, so solve downward along
    // dominance by recursion.
    fn solve(
        lambda: &Partition,
        memo: &mut BTreeMap<Partition, BTreeMap<Partition, Int>>,
    ) -> Result<BTreeMap<Partition, Int>> {
        if let Some(hit) = memo.get(lambda) {
            return Ok(hit.clone());
        }
        let expansion = elementary_product_expansion(&lambda.conjugate())?;
        let diag = expansion.get(lambda).cloned().unwrap_or_else(Int::zero);
        if !diag.is_one() {
            return Err(Error::CrossCheckMismatch(format!(
                "unitriangular diagonal at {lambda} is {diag}, expected 1"
            )));
        }
        let mut result: BTreeMap<Partition, Int> = BTreeMap::new();
        result.insert(lambda.conjugate(), Int::one());
        for (mu, a) in &expansion {
            if mu == lambda {
                continue;
            }
            debug_assert!(dominance_leq(mu, lambda), "support outside dominance");
            let inner = solve(mu, memo)?;
            for (pi, c) in inner {
                let entry = result.entry(pi).or_insert_with(Int::zero);
                *entry -= a.clone() * c;
            }
        }
        result.retain(|_, c| !c.is_zero());
        memo.insert(lambda.clone(), result.clone());
        Ok(result)
    }
    let mut memo = BTreeMap::new();
    solve(lambda, &mut memo)
}

/// `φ(u_λ)` under the isomorphism `Hall(F_1[[t]]) ≅ Λ` sending
/// `u_{(1^r)} ↦ e_r`; the result is asserted to be exactly `m_λ`.
pub fn phi_image(lambda: &Partition) -> Result<SymFunc<Int>> {
    if lambda.size() > PHI_BOUND {
        return Err(Error::BoundExceeded(format!(
            "phi_image bound |λ| ≤ {PHI_BOUND}"
        )));
    }
    let combo = u_in_elementary_products(lambda)?;
    let mut out = SymFunc::zero(Basis::Monomial);
    for (pi, c) in combo {
        let e_pi = elementary_to_monomial(&pi)?;
        for (mu, a) in e_pi.terms() {
            out.add_term(mu.clone(), c.clone() * a.clone());
        }
    }
    let expected = SymFunc::single(Basis::Monomial, lambda.clone(), Int::one());
    if out != expected {
        return Err(Error::CrossCheckMismatch(format!(
            "φ(u_{lambda}) expanded to {out:?}, not m_{lambda}"
        )));
    }
    Ok(out)
}

/// Maximal size for [`hall_littlewood_image`].
pub const HL_BOUND: u32 = 6;

/// `ψ(u_λ)` under the isomorphism `Hall(R) ≅ Λ` with `u_{(1^r)} ↦ e_r`,
/// expressed on the monomial basis with coefficients in `Z[t]`. Inverts the
/// `b_{λμ}(t)` system by unitriangular back-substitution (diagonal entries
/// asserted to be 1) and checks that the specialization `t = 1` is `m_λ`.
pub fn hall_littlewood_image(lambda: &Partition) -> Result<SymFunc<QPoly>> {
    if lambda.size() > HL_BOUND {
        return Err(Error::BoundExceeded(format!(
            "hall_littlewood_image bound |λ| ≤ {HL_BOUND}"
        )));
    }
    fn solve(
        lambda: &Partition,
        memo: &mut BTreeMap<Partition, BTreeMap<Partition, QPoly>>,
    ) -> Result<BTreeMap<Partition, QPoly>> {
        if let Some(hit) = memo.get(lambda) {
            return Ok(hit.clone());
        }
        let conj = lambda.conjugate();
        let diag = b_polynomial(&conj, lambda, None)?;
        if !diag.is_one() {
            return Err(Error::CrossCheckMismatch(format!(
                "b-matrix diagonal at {lambda} is {diag}, expected 1"
            )));
        }
        let mut result: BTreeMap<Partition, QPoly> = BTreeMap::new();
        result.insert(conj.clone(), QPoly::one());
        for mu in partitions_of(lambda.size())? {
            if mu == *lambda {
                continue;
            }
            let b = b_polynomial(&conj, &mu, None)?;
            if b.is_zero() {
                continue;
            }
            let inner = solve(&mu, memo)?;
            for (pi, c) in inner {
                let entry = result.entry(pi).or_insert_with(QPoly::zero);
                *entry = entry.sub_ref(&b.mul_ref(&c));
            }
        }
        result.retain(|_, c| !c.is_zero());
        memo.insert(lambda.clone(), result.clone());
        Ok(result)
    }
    let mut memo = BTreeMap::new();
    let combo = solve(lambda, &mut memo)?;
    let mut out: SymFunc<QPoly> = SymFunc::zero(Basis::Monomial);
    for (pi, c) in combo {
        let e_pi = elementary_to_monomial(&pi)?;
        for (mu, a) in e_pi.terms() {
            out.add_term(mu.clone(), c.mul_ref(&QPoly::constant(a.clone())));
        }
    }
    // specialization t = 1 must reproduce the monomial symmetric function
    let at_one = out.map_coeffs(|c| c.eval_i64(1));
    let expected = SymFunc::single(Basis::Monomial, lambda.clone(), Int::one());
    if at_one != expected {
        return Err(Error::ValidationMismatch(format!(
            "ψ(u_{lambda}) at t = 1 is {at_one:?}, not m_{lambda}"
        )));
    }
    Ok(out)
}
