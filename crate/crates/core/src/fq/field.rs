//! Table-based arithmetic for the small finite fields `F_q`, `q = p^e`.

use crate::error::{Error, Result};

/// Largest field order accepted by default.
pub const MAX_Q: u32 = 16;

/// A validated prime power `q = p^e ≤ 16`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PrimePower {
    pub p: u32,
    pub e: u32,
    pub q: u32,
}

impl PrimePower {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || q > MAX_Q {
            return Err(Error::BoundExceeded(format!(
                "field order {q} outside 2..={MAX_Q}"
            )));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        let mut e = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidArgument(format!("{q} is not a prime power")));
        }
        Ok(PrimePower { p, e, q })
    }

    /// All prime powers `2 ≤ q ≤ MAX_Q` in increasing order.
    pub fn all() -> Vec<PrimePower> {
        (2..=MAX_Q).filter_map(|q| PrimePower::new(q).ok()).collect()
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// The field `F_q` with full operation tables. Elements are `0..q` encoded
/// as base-p digit vectors of the residue polynomial, so `0` and `1` are the
/// additive and multiplicative units.
#[derive(Clone, Debug)]
pub struct Gf {
    pub pp: PrimePower,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Coefficients of the chosen irreducible polynomial (constant first,
    /// monic of degree e), kept for reproducibility checks.
    pub modulus: Vec<u32>,
}

impl Gf {
    pub fn new(pp: PrimePower) -> Self {
        let (p, e, q) = (pp.p, pp.e, pp.q);
        let modulus = lowest_irreducible(p, e);
        let idx = |a: u32, b: u32| (a * q + b) as usize;

        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        let mut neg = vec![0u8; q as usize];
        let mut inv = vec![0u8; q as usize];
        for a in 0..q {
            let da = digits(a, p, e);
            let mut na = vec![0u32; e as usize];
            for i in 0..e as usize {
                na[i] = (p - da[i]) % p;
            }
            neg[a as usize] = undigits(&na, p) as u8;
            for b in 0..q {
                let db = digits(b, p, e);
                let mut ds = vec![0u32; e as usize];
                for i in 0..e as usize {
                    ds[i] = (da[i] + db[i]) % p;
                }
                add[idx(a, b)] = undigits(&ds, p) as u8;
                let prod = poly_mul_mod(&da, &db, &modulus, p);
                mul[idx(a, b)] = undigits(&prod, p) as u8;
            }
        }
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[idx(a, b)] == 1)
                .expect("field element has an inverse");
            inv[a as usize] = b as u8;
        }
        let gf = Gf {
            pp,
            add,
            mul,
            neg,
            inv,
            modulus,
        };
        gf.self_check();
        gf
    }

    pub fn q(&self) -> u32 {
        self.pp.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[(a as u32 * self.pp.q + b as u32) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[(a as u32 * self.pp.q + b as u32) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    /// Consistency of the generated tables: associativity, distributivity,
    /// units, and inverses over all triples (q ≤ 16 keeps this instant).
    fn self_check(&self) {
        let q = self.pp.q as u8;
        for a in 0..q {
            assert_eq!(self.add(a, 0), a);
            assert_eq!(self.mul(a, 1), a);
            assert_eq!(self.mul(a, 0), 0);
            assert_eq!(self.add(a, self.neg(a)), 0);
            if a != 0 {
                assert_eq!(self.mul(a, self.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(self.add(a, b), self.add(b, a));
                assert_eq!(self.mul(a, b), self.mul(b, a));
                for c in 0..q {
                    assert_eq!(self.add(self.add(a, b), c), self.add(a, self.add(b, c)));
                    assert_eq!(self.mul(self.mul(a, b), c), self.mul(a, self.mul(b, c)));
                    assert_eq!(
                        self.mul(a, self.add(b, c)),
                        self.add(self.mul(a, b), self.mul(a, c))
                    );
                }
            }
        }
    }
}

fn digits(mut v: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = vec![0u32; e as usize];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = a.len();
    let mut prod = vec![0u32; 2 * e];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce modulo the monic modulus of degree e
    for d in (e..2 * e).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for (k, &mk) in modulus.iter().enumerate().take(e) {
                let pos = d - e + k;
                prod[pos] = (prod[pos] + c * ((p - mk) % p)) % p;
            }
        }
    }
    prod.truncate(e);
    prod
}

/// The monic irreducible polynomial of degree `e` over `F_p` whose
/// non-leading coefficient vector has the smallest base-p integer encoding.
/// Deterministic, so field tables are reproducible across runs and
/// implementations.
fn lowest_irreducible(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        // modulus x - 0 is enough: arithmetic is plain mod p
        return vec![0];
    }
    let total = p.pow(e);
    for enc in 0..total {
        let coeffs = digits(enc, p, e); // constant term first, degree e-1 last
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p");
}

/// Irreducibility of the monic polynomial x^e + Σ coeffs[i] x^i by trial
/// division by all monic polynomials of degree 1..=e/2.
fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let e = coeffs.len() as u32;
    let mut full: Vec<u32> = coeffs.to_vec();
    full.push(1); // monic of degree e
    for d in 1..=e / 2 {
        let count = p.pow(d);
        for enc in 0..count {
            let mut div = digits(enc, p, d);
            div.push(1);
            if poly_rem_is_zero(&full, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    let mut rem: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = *rem.last().unwrap();
        if lead != 0 {
            let shift = rem.len() - 1 - dd;
            for (k, &dk) in den.iter().enumerate() {
                let pos = shift + k;
                rem[pos] = (rem[pos] + lead * ((p - dk) % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}
