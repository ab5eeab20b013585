//! Submodule census by echelon-form walk.
//!
//! A finite module over `R_N = F_q[t]/(t^N)` is presented as `(d, T)`: the
//! underlying space `F_q^d` with a nilpotent matrix `T` giving the t-action.
//! Submodules are exactly the T-invariant subspaces, which the walk
//! enumerates cell by cell in reduced echelon form, classifying each by its
//! own type and the type of the quotient. This is the accelerator route;
//! it is cross-checked against the element-level closure enumeration of
//! [`super::module`].

use super::field::Gf;
use super::linalg::{self, Mat, Subspace};
use crate::partition::Partition;
use crate::Int;
use num_traits::{One, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Census of submodules keyed by `(quotient type, submodule type)`.
pub type Census = BTreeMap<(Partition, Partition), Int>;

/// A module over `R_N` in linear-algebra presentation.
#[derive(Clone, Debug)]
pub struct NilModule {
    pub gf: Gf,
    pub dim: usize,
    pub t: Mat,
    /// Powers of t: `t_pows[i] = T^i`, up to the first zero power.
    t_pows: Vec<Mat>,
}

impl NilModule {
    /// The standard model `⊕_i R/(t^{λ_i})`: coordinates grouped by part,
    /// `t` shifting each cyclic block down by one level.
    pub fn of_type(gf: Gf, lambda: &Partition) -> Self {
        let d = lambda.size() as usize;
        let mut t = vec![vec![0u8; d]; d];
        let mut offset = 0usize;
        for &part in lambda.parts() {
            for j in 0..(part as usize - 1) {
                t[offset + j + 1][offset + j] = 1;
            }
            offset += part as usize;
        }
        Self::new(gf, d, t)
    }

    pub fn new(gf: Gf, dim: usize, t: Mat) -> Self {
        let mut t_pows = vec![identity(dim)];
        loop {
            let next = linalg::mat_mul(&gf, &t, t_pows.last().unwrap());
            if next.iter().all(|row| row.iter().all(|&x| x == 0)) {
                break;
            }
            t_pows.push(next);
            assert!(
                t_pows.len() <= dim + 1,
                "t-action is not nilpotent on a {dim}-dimensional module"
            );
        }
        NilModule { gf, dim, t, t_pows }
    }

    /// Nilpotency order: least `N` with `T^N = 0`.
    pub fn nilpotency_order(&self) -> usize {
        self.t_pows.len()
    }

    pub fn is_vector_space(&self) -> bool {
        self.t_pows.len() <= 1
    }

    /// The isomorphism type, read off from `dim t^{i-1}M / t^iM`, which is
    /// the conjugate partition.
    pub fn module_type(&self) -> Partition {
        let mut dims = Vec::new();
        for i in 0..=self.t_pows.len() {
            dims.push(self.power_image_dim(i));
        }
        conjugate_of_drops(&dims)
    }

    fn power_image_dim(&self, i: usize) -> usize {
        match self.t_pows.get(i) {
            None => 0,
            Some(m) => linalg::rank(&self.gf, m),
        }
    }

    /// Type of the submodule spanned by the (t-invariant) subspace.
    pub fn sub_type(&self, v: &Subspace) -> Partition {
        let mut dims = vec![v.dim()];
        let mut rows = v.rows.clone();
        loop {
            rows = rows
                .iter()
                .map(|r| linalg::apply(&self.gf, &self.t, r))
                .collect();
            let d = linalg::rank(&self.gf, &rows);
            dims.push(d);
            if d == 0 {
                break;
            }
        }
        conjugate_of_drops(&dims)
    }

    /// Type of `M/V`, computed from ranks without materializing quotient
    /// elements: `dim t^i(M/V) = rank[im T^i ; V] − dim V`, the image of
    /// `T^i` being its column space.
    pub fn quot_type(&self, v: &Subspace) -> Partition {
        let k = v.dim();
        let mut dims = Vec::new();
        for i in 0.. {
            let dim_i = match self.t_pows.get(i) {
                None => 0,
                Some(m) => {
                    let cols = transpose(m);
                    linalg::rank_stacked(&self.gf, &cols, &v.rows) - k
                }
            };
            dims.push(dim_i);
            if dim_i == 0 {
                break;
            }
        }
        conjugate_of_drops(&dims)
    }

    /// True iff `T·V ⊆ V`.
    pub fn is_invariant(&self, v: &Subspace) -> bool {
        if self.is_vector_space() {
            return true;
        }
        v.rows.iter().all(|r| {
            let w = linalg::apply(&self.gf, &self.t, r);
            linalg::in_span(&self.gf, &v.rows, &v.pivots, &w)
        })
    }

    /// The submodule `V` as a module in its own right: `T` restricted to `V`
    /// in the echelon basis of `V`.
    pub fn restrict(&self, v: &Subspace) -> NilModule {
        let k = v.dim();
        // row r of V maps to Σ_s coeffs[s] row_s; as a matrix on column
        // vectors this is the transpose of the coefficient array.
        let mut t = vec![vec![0u8; k]; k];
        for (r, row) in v.rows.iter().enumerate() {
            let w = linalg::apply(&self.gf, &self.t, row);
            let (res, coeffs) = linalg::reduce_with_coeffs(&self.gf, &v.rows, &v.pivots, &w);
            assert!(
                res.iter().all(|&x| x == 0),
                "restricting to a non-invariant subspace"
            );
            for s in 0..k {
                t[s][r] = coeffs[s];
            }
        }
        NilModule::new(self.gf.clone(), k, t)
    }

    /// Visits every t-invariant subspace (submodule) of every dimension.
    pub fn visit_submodules(&self, mut visit: impl FnMut(&Subspace)) {
        for k in 0..=self.dim {
            linalg::visit_subspaces_of_dim(&self.gf, self.dim, k, |s| {
                if self.is_invariant(s) {
                    visit(s);
                }
            });
        }
    }

    /// Full census: counts submodules grouped by `(quotient type, sub type)`.
    ///
    /// Work is partitioned by Schubert cell (pivot-column set) and aggregated
    /// order-independently, so the result is deterministic. For plain vector
    /// spaces (`T = 0`) the cells are counted wholesale instead of visited.
    pub fn census(&self) -> Census {
        if self.is_vector_space() {
            let q = Int::from(self.gf.q());
            let mut out = Census::new();
            for k in 0..=self.dim {
                let mut count = Int::zero();
                for pivots in linalg::combinations(self.dim, k) {
                    let mut cell = Int::one();
                    for _ in 0..linalg::cell_free_count(self.dim, &pivots) {
                        cell *= q.clone();
                    }
                    count += cell;
                }
                out.insert(
                    (
                        Partition::column((self.dim - k) as u32),
                        Partition::column(k as u32),
                    ),
                    count,
                );
            }
            return out;
        }
        let mut cells: Vec<(usize, Vec<usize>)> = Vec::new();
        for k in 0..=self.dim {
            for pivots in linalg::combinations(self.dim, k) {
                cells.push((k, pivots));
            }
        }
        cells
            .par_iter()
            .map(|(_, pivots)| {
                let mut local = Census::new();
                let mut visit = |s: &Subspace| {
                    if self.is_invariant(s) {
                        let key = (self.quot_type(s), self.sub_type(s));
                        *local.entry(key).or_insert_with(Int::zero) += Int::one();
                    }
                };
                linalg::visit_cell(&self.gf, self.dim, pivots, &mut visit);
                local
            })
            .reduce(Census::new, merge_census)
    }

    /// Number of chains `M = M_0 ⊇ M_1 ⊇ … ⊇ M_s = 0` with
    /// `type(M_{i-1}/M_i) = quots[i-1]`, by literal recursive enumeration of
    /// invariant subspaces.
    pub fn flag_count(&self, quots: &[Partition]) -> Int {
        match quots.split_first() {
            None => {
                if self.dim == 0 {
                    Int::one()
                } else {
                    Int::zero()
                }
            }
            Some((first, rest)) => {
                let total: u32 = quots.iter().map(Partition::size).sum();
                if total != self.dim as u32 {
                    return Int::zero();
                }
                let k = self.dim - first.size() as usize;
                let mut acc = Int::zero();
                linalg::visit_subspaces_of_dim(&self.gf, self.dim, k, |s| {
                    if self.is_invariant(s) && self.quot_type(s) == *first {
                        acc += self.restrict(s).flag_count(rest);
                    }
                });
                acc
            }
        }
    }
}

fn merge_census(mut a: Census, b: Census) -> Census {
    for (k, v) in b {
        *a.entry(k).or_insert_with(Int::zero) += v;
    }
    a
}

fn transpose(m: &Mat) -> Mat {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}

fn identity(d: usize) -> Mat {
    let mut m = vec![vec![0u8; d]; d];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

/// Builds the partition whose conjugate is the drop sequence of `dims`
/// (`dims[i] = dim t^i X`, strictly decreasing to 0).
fn conjugate_of_drops(dims: &[usize]) -> Partition {
    let mut conj = Vec::new();
    for w in dims.windows(2) {
        let drop = w[0] - w[1];
        if drop > 0 {
            conj.push(drop as u32);
        } else if w[0] == 0 {
            break;
        }
    }
    Partition::new(conj)
        .expect("image dimension drops are weakly decreasing")
        .conjugate()
}
