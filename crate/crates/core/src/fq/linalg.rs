//! Row-echelon linear algebra over the table-based fields, plus the
//! echelon-form walk over all subspaces of `F_q^d`.

use super::field::Gf;

pub type Vecf = Vec<u8>;
pub type Mat = Vec<Vecf>;

/// `M · v` for a d×d matrix acting on column vectors.
pub fn apply(gf: &Gf, m: &Mat, v: &[u8]) -> Vecf {
    let d = m.len();
    let mut out = vec![0u8; d];
    for i in 0..d {
        let mut acc = 0u8;
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0 && m[i][j] != 0 {
                acc = gf.add(acc, gf.mul(m[i][j], vj));
            }
        }
        out[i] = acc;
    }
    out
}

pub fn mat_mul(gf: &Gf, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0u8; m]; n];
    for i in 0..n {
        for j in 0..m {
            let mut acc = 0u8;
            for l in 0..k {
                if a[i][l] != 0 && b[l][j] != 0 {
                    acc = gf.add(acc, gf.mul(a[i][l], b[l][j]));
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// In-place reduction of `rows` to reduced row-echelon form; returns the
/// pivot columns. Zero rows are dropped.
pub fn rref(gf: &Gf, rows: &mut Mat) -> Vec<usize> {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) {
            rows.swap(r, pr);
            let inv = gf.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = gf.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..width {
                        let s = gf.mul(f, rows[r][j]);
                        rows[i][j] = gf.sub(rows[i][j], s);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(gf: &Gf, rows: &Mat) -> usize {
    let mut m = rows.clone();
    rref(gf, &mut m).len()
}

/// Rank of the stacked matrix `[a; b]` without copying into echelon form
/// twice.
pub fn rank_stacked(gf: &Gf, a: &Mat, b: &Mat) -> usize {
    let mut m: Mat = a.clone();
    m.extend(b.iter().cloned());
    rank(gf, &m)
}

/// Reduces `v` against echelon rows (with the given pivot columns),
/// returning the residue and the coefficients used per row.
pub fn reduce_with_coeffs(gf: &Gf, rows: &Mat, pivots: &[usize], v: &[u8]) -> (Vecf, Vecf) {
    let mut res = v.to_vec();
    let mut coeffs = vec![0u8; rows.len()];
    for (r, &pc) in pivots.iter().enumerate() {
        let c = res[pc];
        if c != 0 {
            coeffs[r] = c;
            for j in 0..res.len() {
                let s = gf.mul(c, rows[r][j]);
                res[j] = gf.sub(res[j], s);
            }
        }
    }
    (res, coeffs)
}

/// Membership of `v` in the row space of an echelon basis.
pub fn in_span(gf: &Gf, rows: &Mat, pivots: &[usize], v: &[u8]) -> bool {
    reduce_with_coeffs(gf, rows, pivots, v).0.iter().all(|&x| x == 0)
}

/// An echelon-form subspace basis: RREF rows plus their pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub rows: Mat,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero() -> Self {
        Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows(gf: &Gf, rows: Mat) -> Self {
        let mut rows = rows;
        let pivots = rref(gf, &mut rows);
        Subspace { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, gf: &Gf, v: &[u8]) -> bool {
        in_span(gf, &self.rows, &self.pivots, v)
    }

    pub fn contains_subspace(&self, gf: &Gf, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(gf, r))
    }
}

/// Calls `visit` once per k-dimensional subspace of `F_q^d`, presented by its
/// unique reduced echelon basis. The walk is organized by pivot-column sets
/// (Schubert cells), so a caller may also partition work cell by cell.
pub fn visit_subspaces_of_dim(gf: &Gf, d: usize, k: usize, mut visit: impl FnMut(&Subspace)) {
    for pivots in combinations(d, k) {
        visit_cell(gf, d, &pivots, &mut visit);
    }
}

/// All pivot-column sets for dimension-k subspaces of `F_q^d`.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            if d - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

/// Visits every subspace in the Schubert cell of a fixed pivot set: free
/// entries are the positions right of each pivot that are not pivots
/// themselves.
pub fn visit_cell(gf: &Gf, d: usize, pivots: &[usize], visit: &mut impl FnMut(&Subspace)) {
    let k = pivots.len();
    let mut free: Vec<(usize, usize)> = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..d {
            if !pivots.contains(&c) {
                free.push((r, c));
            }
        }
    }
    let q = gf.q() as u8;
    let mut rows: Mat = vec![vec![0u8; d]; k];
    for (r, &pc) in pivots.iter().enumerate() {
        rows[r][pc] = 1;
    }
    let sub = Subspace {
        rows,
        pivots: pivots.to_vec(),
    };
    let mut sub = sub;
    if free.is_empty() {
        visit(&sub);
        return;
    }
    let mut odometer = vec![0u8; free.len()];
    loop {
        visit(&sub);
        // increment
        let mut i = 0;
        loop {
            if i == odometer.len() {
                return;
            }
            let (r, c) = free[i];
            if odometer[i] + 1 < q {
                odometer[i] += 1;
                sub.rows[r][c] = odometer[i];
                break;
            }
            odometer[i] = 0;
            sub.rows[r][c] = 0;
            i += 1;
        }
    }
}

/// Number of free entries in the Schubert cell of a pivot set (the cell has
/// `q^free` subspaces).
pub fn cell_free_count(d: usize, pivots: &[usize]) -> usize {
    let mut free = 0;
    for (r, &pc) in pivots.iter().enumerate() {
        let _ = r;
        for c in pc + 1..d {
            if !pivots.contains(&c) {
                free += 1;
            }
        }
    }
    free
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::field::PrimePower;
    use crate::Int;
    use num_traits::One;

    fn gf(q: u32) -> Gf {
        Gf::new(PrimePower::new(q).unwrap())
    }

    #[test]
    fn rref_and_rank() {
        let g = gf(3);
        let mut m = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]];
        let pivots = rref(&g, &mut m);
        assert_eq!(pivots, vec![0, 1, 2]);
        // [2,1,0] = 2·[1,2,0] over F_3
        assert_eq!(rank(&g, &vec![vec![1, 2, 0], vec![2, 1, 0]]), 1);
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u32, 3] {
            let g = gf(q);
            for d in 0..=4usize {
                for k in 0..=d {
                    let mut count = 0u64;
                    let mut seen = std::collections::HashSet::new();
                    visit_subspaces_of_dim(&g, d, k, |s| {
                        count += 1;
                        assert!(seen.insert(s.rows.clone()), "duplicate rref basis");
                        assert_eq!(s.dim(), k);
                    });
                    let expected = crate::qanalog::q_binomial(d as u32, k as u32)
                        .unwrap()
                        .eval_i64(q as i64);
                    assert_eq!(Int::from(count), expected, "q={q} d={d} k={k}");
                }
            }
        }
    }

    #[test]
    fn cell_counts_sum_to_cells_visited() {
        let g = gf(2);
        for k in 0..=3usize {
            for pivots in combinations(4, k) {
                let mut n = 0u64;
                visit_cell(&g, 4, &pivots, &mut |_| n += 1);
                assert_eq!(n, 2u64.pow(cell_free_count(4, &pivots) as u32));
            }
        }
        let _ = Int::one();
    }

    #[test]
    fn reduce_and_span() {
        let g = gf(2);
        let s = Subspace::from_rows(&g, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(s.contains(&g, &[1, 1, 0]));
        assert!(!s.contains(&g, &[1, 0, 0]));
        let (res, coeffs) = reduce_with_coeffs(&g, &s.rows, &s.pivots, &[1, 1, 0]);
        assert!(res.iter().all(|&x| x == 0));
        assert_eq!(coeffs, vec![1, 1]);
    }
}
