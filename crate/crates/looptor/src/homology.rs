//! Integer chain-complex homology through Smith normal form.
//!
//! Matrices here are small (at most a few thousand entries), so a dense
//! greedy-pivot reduction is enough. The inner loop runs over `BigInt`:
//! intermediate entries can explode even when the input is tiny.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("boundary matrices are not composable at degree {0}")]
    Shape(usize),
    #[error("d∘d ≠ 0 at degree {degree} (entry [{row}, {col}] = {value})")]
    NotAComplex { degree: usize, row: usize, col: usize, value: i64 },
}

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }
}

/// Invariant factors and rank of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_r`, all positive.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Diagonalise by unimodular row/column operations, greedy minimal pivot.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let rows = m.rows;
    let cols = m.cols;
    let mut factors: Vec<BigInt> = Vec::new();
    let mut t = 0usize;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // clear row and column; a fresh remainder becomes the new pivot
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[i][t], &a[t][t]);
                if !q.is_zero() {
                    for j in t..cols {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = div_nearest(&a[t][j], &a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut().take(rows).skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if !dirty
                && a.iter().take(rows).skip(t + 1).all(|r| r[t].is_zero())
                && a[t][t + 1..cols].iter().all(|v| v.is_zero())
            {
                break;
            }
        }
        if a[t][t].is_negative() {
            let v = -a[t][t].clone();
            a[t][t] = v;
        }
        factors.push(a[t][t].clone());
        t += 1;
    }
    // repair the divisibility chain
    let r = factors.len();
    if r > 1 {
        loop {
            let mut changed = false;
            for i in 0..r - 1 {
                let (lo, hi) = factors.split_at_mut(i + 1);
                let d1 = &mut lo[i];
                for d2 in hi.iter_mut() {
                    if !(&*d2 % &*d1).is_zero() {
                        let g = d1.gcd(d2);
                        let l = &*d1 / &g * &*d2;
                        *d1 = g;
                        *d2 = l;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
    }
    SmithForm { rank: factors.len(), factors }
}

/// Division rounded to nearest, which keeps remainders at most half the
/// divisor and bounds coefficient growth.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    if &r.abs() * 2 > d.abs() {
        if r.is_negative() == d.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Rank of the matrix over the field with `p` elements, by Gaussian
/// elimination. Independent of the Smith reduction path.
pub fn modp_rank(m: &IntMatrix, p: i64) -> usize {
    assert!(p >= 2);
    let mut a: Vec<Vec<i64>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).rem_euclid(p)).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..m.cols {
        let Some(pivot_row) = (rank..m.rows).find(|&i| a[i][col] % p != 0) else {
            continue;
        };
        a.swap(rank, pivot_row);
        let inv = mod_inverse(a[rank][col], p);
        for j in col..m.cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for i in 0..m.rows {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in col..m.cols {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
        if rank == m.rows {
            break;
        }
    }
    rank
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // p is a small prime here; Fermat is plenty
    let mut result = 1i64;
    let mut base = a.rem_euclid(p);
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// The homology of one degree: free rank plus invariant factors `> 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Per-degree basis labels plus integer boundary matrices.
/// `boundaries[k]` is the matrix of `∂_k : C_k -> C_{k-1}`; the
/// constructor checks `∂_k ∘ ∂_{k+1} = 0`.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub bases: Vec<Vec<String>>,
    pub boundaries: Vec<IntMatrix>,
}

impl GradedComplex {
    pub fn new(bases: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Result<Self, ComplexError> {
        assert_eq!(bases.len(), boundaries.len());
        for (k, b) in boundaries.iter().enumerate() {
            assert_eq!(b.cols, bases[k].len(), "degree {k} boundary has wrong column count");
            let target_rows = if k == 0 { 0 } else { bases[k - 1].len() };
            assert_eq!(b.rows, target_rows, "degree {k} boundary has wrong row count");
        }
        for k in 1..boundaries.len() {
            let lo = &boundaries[k - 1];
            let hi = &boundaries[k];
            if lo.rows == 0 || hi.cols == 0 {
                continue;
            }
            if lo.cols != hi.rows {
                return Err(ComplexError::Shape(k));
            }
            for i in 0..lo.rows {
                for j in 0..hi.cols {
                    let mut acc: i128 = 0;
                    for t in 0..lo.cols {
                        acc += lo.get(i, t) as i128 * hi.get(t, j) as i128;
                    }
                    if acc != 0 {
                        return Err(ComplexError::NotAComplex {
                            degree: k,
                            row: i,
                            col: j,
                            value: acc as i64,
                        });
                    }
                }
            }
        }
        Ok(GradedComplex { bases, boundaries })
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map(|b| b.len()).unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len().saturating_sub(1)
    }

    /// `H_k` via ranks and invariant factors. Degrees outside the stored
    /// range count as zero chain groups.
    pub fn homology(&self, k: usize) -> HomologyGroup {
        let dim_k = self.dim(k);
        if dim_k == 0 {
            return HomologyGroup::free(0);
        }
        let rank_out = if k == 0 {
            0
        } else {
            smith_normal_form(&self.boundaries[k]).rank
        };
        let incoming = if k + 1 < self.boundaries.len() {
            Some(smith_normal_form(&self.boundaries[k + 1]))
        } else {
            None
        };
        let rank_in = incoming.as_ref().map_or(0, |s| s.rank);
        let betti = dim_k - rank_out - rank_in;
        let torsion = incoming
            .map(|s| s.factors.into_iter().filter(|f| f > &BigInt::one()).collect())
            .unwrap_or_default();
        HomologyGroup { betti, torsion }
    }

    pub fn homology_table(&self, max_degree: usize) -> Vec<HomologyGroup> {
        (0..=max_degree).map(|k| self.homology(k)).collect()
    }

    /// `dim_{F_p} H_k(C; F_p)`, computed purely with mod-p ranks.
    pub fn modp_homology_dim(&self, k: usize, p: i64) -> usize {
        let dim_k = self.dim(k);
        if dim_k == 0 {
            return 0;
        }
        let rank_out = if k == 0 { 0 } else { modp_rank(&self.boundaries[k], p) };
        let rank_in = if k + 1 < self.boundaries.len() {
            modp_rank(&self.boundaries[k + 1], p)
        } else {
            0
        };
        dim_k - rank_out - rank_in
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf_factors(rows: Vec<Vec<i64>>) -> Vec<i64> {
        smith_normal_form(&IntMatrix::from_rows(rows))
            .factors
            .iter()
            .map(|f| i64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(snf_factors(vec![vec![2]]), vec![2]);
        assert_eq!(snf_factors(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
        // hand-reduced: r2 -= 3 r1, then c2 -= 2 c1 leaves diag(2, -4)
        assert_eq!(snf_factors(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(snf_factors(vec![vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
    }

    #[test]
    fn divisibility_chain() {
        assert_eq!(snf_factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        let f = snf_factors(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn circle_complex() {
        // one vertex, one loop: boundary of the edge is v - v = 0
        let c = GradedComplex::new(
            vec![vec!["v".into()], vec!["e".into()]],
            vec![IntMatrix::zero(0, 1), IntMatrix::zero(1, 1)],
        )
        .unwrap();
        assert_eq!(c.homology(0), HomologyGroup::free(1));
        assert_eq!(c.homology(1), HomologyGroup::free(1));
        assert_eq!(c.homology(2), HomologyGroup::free(0));
    }

    #[test]
    fn single_torsion_class() {
        let c = GradedComplex::new(
            vec![vec!["a".into()], vec!["b".into()]],
            vec![IntMatrix::zero(0, 1), IntMatrix::from_rows(vec![vec![2]])],
        )
        .unwrap();
        let h0 = c.homology(0);
        assert_eq!(h0.betti, 0);
        assert_eq!(h0.torsion, vec![BigInt::from(2)]);
        assert_eq!(c.homology(1), HomologyGroup::free(0));
    }

    #[test]
    fn rejects_non_complexes() {
        let r = GradedComplex::new(
            vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]],
            vec![
                IntMatrix::zero(0, 1),
                IntMatrix::from_rows(vec![vec![1]]),
                IntMatrix::from_rows(vec![vec![1]]),
            ],
        );
        assert!(matches!(r, Err(ComplexError::NotAComplex { degree: 2, .. })));
    }

    #[test]
    fn basis_permutation_invariance() {
        // permuting the dim-1 basis of a two-edge circle leaves homology alone
        let m = IntMatrix::from_rows(vec![vec![1, -1], vec![-1, 1]]);
        let m_perm = IntMatrix::from_rows(vec![vec![-1, 1], vec![1, -1]]);
        let mk = |b: IntMatrix| {
            GradedComplex::new(
                vec![vec!["v".into(), "w".into()], vec!["e".into(), "f".into()]],
                vec![IntMatrix::zero(0, 2), b],
            )
            .unwrap()
        };
        for k in 0..=1 {
            assert_eq!(mk(m.clone()).homology(k), mk(m_perm.clone()).homology(k));
        }
    }

    #[test]
    fn modp_matches_uct_on_fixed_cases() {
        // boundary [[2]]: H_0 = Z/2, so dim H_0(F_2) = 1 and H_1(F_2)
        // picks up the matching extra dimension from the same factor
        let c = GradedComplex::new(
            vec![vec!["a".into()], vec!["b".into()]],
            vec![IntMatrix::zero(0, 1), IntMatrix::from_rows(vec![vec![2]])],
        )
        .unwrap();
        assert_eq!(c.modp_homology_dim(0, 2), 1);
        assert_eq!(c.modp_homology_dim(1, 2), 1);
        assert_eq!(c.modp_homology_dim(0, 3), 0);
        assert_eq!(c.modp_homology_dim(1, 3), 0);
    }
}
