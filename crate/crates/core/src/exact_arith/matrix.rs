//! Dense matrices over exact scalars.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Scalar;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of elimination: the rank and which original rows and columns
/// carried pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_rows(idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Scalar::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if !a.is_zero() {
                        acc = &acc + &(a * other.get(k, j));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Fraction-free (Bareiss) elimination with full pivoting.
    ///
    /// Each update divides by the previous pivot, which is exact. Returns the
    /// eliminated working copy, the profile and the sign of the permutation.
    fn bareiss(&self) -> (Vec<Vec<Scalar>>, RankProfile, bool) {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.to_rows();
        let mut row_ids: Vec<usize> = (0..r).collect();
        let mut col_ids: Vec<usize> = (0..c).collect();
        let mut prev = Scalar::one();
        let mut negated = false;
        let mut k = 0;
        while k < r.min(c) {
            let pivot = (k..r).find_map(|i| (k..c).find(|&j| !a[i][j].is_zero()).map(|j| (i, j)));
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                a.swap(pi, k);
                row_ids.swap(pi, k);
                negated = !negated;
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                col_ids.swap(pj, k);
                negated = !negated;
            }
            let akk = a[k][k].clone();
            for i in k + 1..r {
                let aik = a[i][k].clone();
                for j in k + 1..c {
                    let v = &(&akk * &a[i][j]) - &(&aik * &a[k][j]);
                    a[i][j] = &v / &prev;
                }
                a[i][k] = Scalar::zero();
            }
            prev = akk;
            k += 1;
        }
        let profile = RankProfile {
            rank: k,
            pivot_rows: row_ids[..k].to_vec(),
            pivot_cols: col_ids[..k].to_vec(),
        };
        (a, profile, negated)
    }

    pub fn rank(&self) -> usize {
        self.bareiss().1.rank
    }

    /// Rank together with the original indices of the pivot rows, which are
    /// linearly independent.
    pub fn rank_profile(&self) -> RankProfile {
        let mut p = self.bareiss().1;
        p.pivot_rows.sort_unstable();
        p.pivot_cols.sort_unstable();
        p
    }

    /// The lexicographically first set of linearly independent rows that
    /// spans the row space.
    pub fn independent_rows(&self) -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..self.rows {
            let mut trial = chosen.clone();
            trial.push(i);
            if self.select_rows(&trial).rank() == trial.len() {
                chosen = trial;
            }
        }
        chosen
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Scalar::one();
        }
        let (a, profile, negated) = self.bareiss();
        if profile.rank < self.rows {
            return Scalar::zero();
        }
        let d = a[self.rows - 1][self.rows - 1].clone();
        if negated {
            -d
        } else {
            d
        }
    }

    /// A basis of the right kernel {x : Mx = 0}.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut a = self.to_rows();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(p) = (row..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, row);
            let inv = a[row][col].try_inv().expect("nonzero pivot");
            for j in 0..self.cols {
                a[row][j] = &a[row][j] * &inv;
            }
            for i in 0..self.rows {
                if i != row && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..self.cols {
                        let v = &a[i][j] - &(&f * &a[row][j]);
                        a[i][j] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&a[r][f];
                }
                v
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rank() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 5).rank(), 0);
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = Matrix::from_ints(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3−2) − 0 + 1(1−3) = 0
        assert_eq!(m.determinant(), Scalar::from_int(0));
        let m = Matrix::from_ints(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        // 0(0+9) − 1(8−12) + 2(−3−0) = −2
        assert_eq!(m.determinant(), Scalar::from_int(-2));
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = Matrix::from_ints(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            let col = Matrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect());
            assert!(m.mul(&col).to_rows().iter().flatten().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn independent_rows_lexicographic() {
        let m = Matrix::from_ints(&[&[1, 0], &[2, 0], &[0, 1], &[1, 1]]);
        assert_eq!(m.independent_rows(), vec![0, 2]);
        let p = m.rank_profile();
        assert_eq!(p.rank, 2);
        assert_eq!(m.select_rows(&p.pivot_rows).rank(), 2);
    }
}
