//! Explicit finite modules over `R_N = F_q[t]/(t^N)` with element-level
//! enumeration of submodules.
//!
//! Elements of `⊕_i R/(t^{λ_i})` are tuples of truncated polynomials,
//! flattened to base-q digit codes. Submodule enumeration closes generated
//! subsets over a canonical element order with dedup by sorted element
//! lists — the simplest provably exhaustive method, kept as the oracle that
//! the echelon-walk census is checked against.

use super::field::{Gf, PrimePower};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Default cap on the element count of an explicitly enumerated module.
pub const ELEMENT_BOUND: u64 = 1 << 20;

/// Cap on the element count for closure-based submodule enumeration, which
/// touches all pairs (submodule, element).
pub const CLOSURE_BOUND: u64 = 1 << 12;

/// An explicit module `⊕_i R_N/(t^{λ_i})` over `R_N = F_q[t]/(t^N)` with
/// element enumeration.
#[derive(Clone, Debug)]
pub struct FqModule {
    pub q: PrimePower,
    pub gf: Gf,
    /// Nilpotency order of the ambient ring.
    pub n_order: u32,
    type_: Partition,
    /// Start offset of each cyclic summand in the flattened digit vector.
    offsets: Vec<usize>,
    dim: usize,
}

impl FqModule {
    /// Builds the module of the given type; `λ_1 ≤ N` and `q^{|λ|}` within
    /// the element bound are required.
    pub fn of_type(q: PrimePower, lambda: &Partition, n_order: u32) -> Result<Self> {
        if lambda.first() > n_order {
            return Err(Error::InvalidArgument(format!(
                "type {lambda} has a part exceeding the nilpotency order {n_order}"
            )));
        }
        let dim = lambda.size() as usize;
        let count = (q.q as u64)
            .checked_pow(dim as u32)
            .filter(|&c| c <= ELEMENT_BOUND);
        if count.is_none() {
            return Err(Error::BoundExceeded(format!(
                "module of type {lambda} over F_{} has more than {ELEMENT_BOUND} elements",
                q.q
            )));
        }
        let mut offsets = Vec::with_capacity(lambda.len());
        let mut off = 0usize;
        for &part in lambda.parts() {
            offsets.push(off);
            off += part as usize;
        }
        Ok(FqModule {
            q,
            gf: Gf::new(q),
            n_order,
            type_: lambda.clone(),
            offsets,
            dim,
        })
    }

    pub fn stored_type(&self) -> &Partition {
        &self.type_
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn element_count(&self) -> u64 {
        (self.q.q as u64).pow(self.dim as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.element_count()
    }

    pub fn decode(&self, code: u64) -> Vec<u8> {
        let q = self.q.q as u64;
        let mut v = Vec::with_capacity(self.dim);
        let mut c = code;
        for _ in 0..self.dim {
            v.push((c % q) as u8);
            c /= q;
        }
        v
    }

    pub fn encode(&self, digits: &[u8]) -> u64 {
        let q = self.q.q as u64;
        digits.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u8> = da
            .iter()
            .zip(db.iter())
            .map(|(&x, &y)| self.gf.add(x, y))
            .collect();
        self.encode(&sum)
    }

    pub fn scalar_mul(&self, c: u8, a: u64) -> u64 {
        let da = self.decode(a);
        let out: Vec<u8> = da.iter().map(|&x| self.gf.mul(c, x)).collect();
        self.encode(&out)
    }

    /// The t-action: shift each summand's coefficients up one degree,
    /// dropping the top one.
    pub fn t_act(&self, a: u64) -> u64 {
        let da = self.decode(a);
        let mut out = vec![0u8; self.dim];
        for (i, &off) in self.offsets.iter().enumerate() {
            let len = self.type_.part(i) as usize;
            for j in 0..len - 1 {
                out[off + j + 1] = da[off + j];
            }
        }
        self.encode(&out)
    }

    /// Least `k ≥ 0` with `t^k a = 0`.
    pub fn t_order(&self, a: u64) -> u32 {
        let mut x = a;
        let mut k = 0;
        while x != 0 {
            x = self.t_act(x);
            k += 1;
        }
        k
    }

    /// The cyclic submodule `R·a` as a sorted element list.
    pub fn cyclic_span(&self, a: u64) -> Vec<u64> {
        // R·a = { Σ_j c_j t^j a }: span of the t-orbit of a.
        let mut orbit = Vec::new();
        let mut x = a;
        while x != 0 {
            orbit.push(x);
            x = self.t_act(x);
        }
        let mut set = vec![0u64];
        for gen in orbit {
            let mut next = Vec::with_capacity(set.len() * self.q.q as usize);
            for c in 0..self.q.q as u8 {
                let scaled = self.scalar_mul(c, gen);
                for &s in &set {
                    next.push(self.add(s, scaled));
                }
            }
            next.sort_unstable();
            next.dedup();
            set = next;
        }
        set
    }

    /// Recomputes the type from the element sets `t^i M`, independently of
    /// the stored type.
    pub fn recomputed_type(&self) -> Partition {
        type_from_images(self, &self.elements().collect::<Vec<_>>())
    }
}

/// Type of a submodule given by its sorted element list, read off the sizes
/// of the images `t^i S`.
fn type_from_images(m: &FqModule, elements: &[u64]) -> Partition {
    let q = m.q.q as u64;
    let mut sizes = Vec::new();
    let mut current: Vec<u64> = elements.to_vec();
    loop {
        sizes.push(current.len() as u64);
        if current.len() == 1 {
            break;
        }
        let mut next: Vec<u64> = current.iter().map(|&x| m.t_act(x)).collect();
        next.sort_unstable();
        next.dedup();
        current = next;
    }
    // sizes[i] = q^{dim t^i S}; drops of the dims give the conjugate type
    let mut conj = Vec::new();
    for w in sizes.windows(2) {
        let mut ratio = w[0] / w[1];
        let mut drop = 0u32;
        while ratio > 1 {
            ratio /= q;
            drop += 1;
        }
        if drop > 0 {
            conj.push(drop);
        }
    }
    Partition::new(conj)
        .expect("image dims drop weakly decreasingly")
        .conjugate()
}

/// A submodule captured as an explicit element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub generators: Vec<u64>,
    /// Sorted canonical element enumeration, always containing 0.
    pub elements: Vec<u64>,
}

impl Submodule {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn type_in(&self, m: &FqModule) -> Partition {
        type_from_images(m, &self.elements)
    }

    /// Type of `M/S` from the sizes of `t^i M + S`, with no quotient
    /// representation built.
    pub fn quotient_type_in(&self, m: &FqModule) -> Partition {
        let q = m.q.q as u64;
        let mut sizes = Vec::new();
        let mut image: Vec<u64> = m.elements().collect();
        loop {
            // |t^i M + S| via the sum set
            let mut sum: Vec<u64> = Vec::with_capacity(image.len() * self.elements.len());
            for &y in &image {
                for &s in &self.elements {
                    sum.push(m.add(y, s));
                }
            }
            sum.sort_unstable();
            sum.dedup();
            sizes.push(sum.len() as u64 / self.elements.len() as u64);
            if *sizes.last().unwrap() == 1 {
                break;
            }
            let mut next: Vec<u64> = image.iter().map(|&x| m.t_act(x)).collect();
            next.sort_unstable();
            next.dedup();
            image = next;
        }
        let mut conj = Vec::new();
        for w in sizes.windows(2) {
            let mut ratio = w[0] / w[1];
            let mut drop = 0u32;
            while ratio > 1 {
                ratio /= q;
                drop += 1;
            }
            if drop > 0 {
                conj.push(drop);
            }
        }
        Partition::new(conj)
            .expect("quotient image dims drop weakly decreasingly")
            .conjugate()
    }
}

/// Enumerates every submodule of `M` exactly once by closing generated
/// subsets, optionally filtered by submodule type and quotient type.
/// Output is sorted by element list, so the order is deterministic.
pub fn enumerate_submodules(
    m: &FqModule,
    sub_type: Option<&Partition>,
    quot_type: Option<&Partition>,
) -> Result<Vec<Submodule>> {
    if m.element_count() > CLOSURE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "closure enumeration over {} elements exceeds {CLOSURE_BOUND}; use the census walk",
            m.element_count()
        )));
    }
    let all: Vec<u64> = m.elements().collect();
    let zero = Submodule {
        generators: vec![],
        elements: vec![0],
    };
    let mut seen = std::collections::HashSet::new();
    seen.insert(vec![0u64]);
    let mut queue = vec![zero.clone()];
    let mut found = vec![zero];
    while let Some(s) = queue.pop() {
        for &x in &all {
            if s.elements.binary_search(&x).is_ok() {
                continue;
            }
            // closure(S ∪ {x}) = S + R·x, already closed under + and t
            let span = m.cyclic_span(x);
            let mut bigger: Vec<u64> = Vec::with_capacity(s.elements.len() * span.len());
            for &a in &s.elements {
                for &b in &span {
                    bigger.push(m.add(a, b));
                }
            }
            bigger.sort_unstable();
            bigger.dedup();
            if seen.insert(bigger.clone()) {
                let mut gens = s.generators.clone();
                gens.push(x);
                let sub = Submodule {
                    generators: gens,
                    elements: bigger,
                };
                queue.push(sub.clone());
                found.push(sub);
            }
        }
    }
    found.retain(|s| {
        sub_type.map_or(true, |t| s.type_in(m) == *t)
            && quot_type.map_or(true, |t| s.quotient_type_in(m) == *t)
    });
    found.sort_by(|a, b| a.elements.cmp(&b.elements));
    Ok(found)
}
