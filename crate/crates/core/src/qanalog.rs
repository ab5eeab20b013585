//! q-analogs and their statistical partition functions.
//!
//! The q-binomial is computed by the factorial product formula with exact
//! polynomial division; the Pascal-type recursion and the two enumerative
//! statistics (permutation inversions, lattice-path area) are kept as
//! independent routes and only meet in tests and verification suites.

use crate::error::{Error, Result};
use crate::{Int, QPoly};
use num_traits::One;

/// `[n]_q = 1 + q + … + q^{n-1}`, with `[0]_q = 0`.
pub fn q_int(n: u32) -> QPoly {
    QPoly::from_coeffs(vec![Int::one(); n as usize])
}

/// `[n]_q! = [n]_q [n-1]_q … [1]_q`; the empty product is 1.
pub fn q_factorial(n: u32) -> QPoly {
    let mut acc = QPoly::one();
    for k in 1..=n {
        acc = acc.mul_ref(&q_int(k));
    }
    acc
}

/// Gaussian binomial `[n choose m]_q = [n]_q! / ([m]_q! [n-m]_q!)`.
///
/// Exact polynomial division; a nonzero remainder would be a bug and panics.
pub fn q_binomial(n: u32, m: u32) -> Result<QPoly> {
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "q_binomial({n}, {m}): m > n"
        )));
    }
    let num = q_factorial(n);
    let den = q_factorial(m).mul_ref(&q_factorial(n - m));
    Ok(num
        .exact_div_poly(&den)
        .expect("q-factorial quotient is a polynomial"))
}

/// Maximal `n` accepted by [`inversion_partition_function`].
pub const INVERSION_BOUND: u32 = 9;

/// `Σ_{σ ∈ S_n} q^{inv(σ)}` by literal enumeration of all permutations.
pub fn inversion_partition_function(n: u32) -> Result<QPoly> {
    if n > INVERSION_BOUND {
        return Err(Error::BoundExceeded(format!(
            "inversion statistic enumerates {n}! permutations, bound is {INVERSION_BOUND}"
        )));
    }
    let mut by_inv = vec![Int::from(0); n as usize * (n as usize).saturating_sub(1) / 2 + 1];
    let mut perm: Vec<u32> = (0..n).collect();
    loop {
        let mut inv = 0usize;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        by_inv[inv] += Int::one();
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(QPoly::from_coeffs(by_inv))
}

fn next_permutation(perm: &mut [u32]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Maximal `n + m` accepted by [`lattice_area_partition_function`].
pub const LATTICE_AREA_BOUND: u32 = 24;

/// `Σ_{K ∈ P(m, n+m)} q^{a(K)}` over the m-subsets of `{1, …, n+m}`, where
/// `a(K)` is the area above the monotone lattice path encoded by `K` in the
/// `n × m` rectangle (step i goes north iff `i ∈ K`).
pub fn lattice_area_partition_function(m: u32, n: u32) -> Result<QPoly> {
    let total = n + m;
    if total > LATTICE_AREA_BOUND {
        return Err(Error::BoundExceeded(format!(
            "lattice area enumerates C({total}, {m}) subsets, bound is n+m <= {LATTICE_AREA_BOUND}"
        )));
    }
    let mut by_area = vec![Int::from(0); (n * m) as usize + 1];
    let mut subset: Vec<u32> = (1..=m).collect();
    loop {
        // area above the path: each north step at position k has n - (east
        // steps before it) cells of the rectangle above-left remaining; the
        // area above the path is Σ over north steps of (east steps after it).
        let mut area = 0usize;
        for (idx, &pos) in subset.iter().enumerate() {
            let east_before = pos - 1 - idx as u32;
            area += (n - east_before) as usize;
        }
        by_area[area] += Int::one();
        if !next_subset(&mut subset, total) {
            break;
        }
    }
    Ok(QPoly::from_coeffs(by_area))
}

fn next_subset(subset: &mut [u32], n: u32) -> bool {
    let m = subset.len();
    if m == 0 {
        return false;
    }
    let mut i = m;
    loop {
        if i == 0 {
            return false;
        }
        i -= 1;
        if subset[i] < n - (m - 1 - i) as u32 {
            subset[i] += 1;
            for j in i + 1..m {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
}
