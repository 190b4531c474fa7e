//! Small dense matrices over a [`Scalar`] and Gaussian elimination for the
//! overdetermined systems of the intertwiner construction.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(i, j)].clone() + a.clone() * b.clone();
                    out[(i, j)] = v;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.approx_eq(b, 1.0))
    }

    /// If every row has a single nonzero entry equal to ±1, returns for each
    /// row `(column, sign)`.
    pub fn as_signed_permutation(&self) -> Option<Vec<(usize, bool)>> {
        let one = S::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut found = None;
            for (j, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if found.is_some() {
                    return None;
                }
                if *a == one {
                    found = Some((j, false));
                } else if *a == -one.clone() {
                    found = Some((j, true));
                } else {
                    return None;
                }
            }
            out.push(found?);
        }
        Some(out)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{:?}", self.data[i * self.cols + j]))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of solving `A X = B` for an overdetermined `A` with full column
/// rank.
#[derive(Debug)]
pub enum SolveOutcome<S> {
    Solved(Matrix<S>),
    /// Column rank deficit: the solution is not unique.
    RankDeficient { rank: usize },
    /// Some equation outside the pivot rows is violated; carries the largest
    /// residual magnitude.
    Inconsistent { residual: f64 },
}

/// Solves `A X = B` by Gaussian elimination on the augmented matrix. The
/// pivot rows determine `X`; every remaining row is then checked, so an
/// inconsistent system is reported instead of silently least-squared.
pub fn solve_full_column_rank<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> SolveOutcome<S> {
    assert_eq!(a.rows, b.rows);
    let (m, n, r) = (a.rows, a.cols, b.cols);
    let width = n + r;
    let mut aug: Vec<Vec<S>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.extend_from_slice(b.row(i));
            row
        })
        .collect();
    let scale = a
        .data
        .iter()
        .chain(&b.data)
        .map(|v| v.to_f64().abs())
        .fold(1.0f64, f64::max);

    let mut pivot_row = 0;
    for col in 0..n {
        // exact: first nonzero; float: partial pivoting by magnitude
        let mut candidates = (pivot_row..m).filter(|&i| {
            if S::EXACT {
                !aug[i][col].is_zero()
            } else {
                !aug[i][col].negligible(scale)
            }
        });
        let best = if S::EXACT {
            candidates.next()
        } else {
            candidates.max_by(|&i, &j| {
                let (a, b) = (aug[i][col].to_f64().abs(), aug[j][col].to_f64().abs());
                a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
            })
        };
        let Some(p) = best else {
            return SolveOutcome::RankDeficient { rank: pivot_row };
        };
        aug.swap(pivot_row, p);
        let inv = S::one() / aug[pivot_row][col].clone();
        for v in aug[pivot_row].iter_mut().skip(col) {
            *v = v.clone() * inv.clone();
        }
        let prow = aug[pivot_row].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == pivot_row || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..width {
                if prow[j].is_zero() {
                    continue;
                }
                row[j] = row[j].clone() - f.clone() * prow[j].clone();
            }
        }
        pivot_row += 1;
    }

    let mut bad = false;
    let mut worst = 0.0f64;
    for row in aug.iter().skip(n) {
        for v in &row[n..] {
            if !v.negligible(scale) {
                bad = true;
                worst = worst.max(v.to_f64().abs());
            }
        }
    }
    if bad {
        return SolveOutcome::Inconsistent { residual: worst };
    }
    let mut x = Matrix::zeros(n, r);
    for (i, row) in aug.iter().take(n).enumerate() {
        for j in 0..r {
            x[(i, j)] = row[n + j].clone();
        }
    }
    SolveOutcome::Solved(x)
}

/// Solves a square system with LU decomposition in double precision.
pub fn solve_square_f64(a: &Matrix<f64>, b: &Matrix<f64>) -> Option<Matrix<f64>> {
    assert_eq!(a.rows, a.cols);
    let am = nalgebra::DMatrix::from_row_slice(a.rows, a.cols, &a.data);
    let bm = nalgebra::DMatrix::from_row_slice(b.rows, b.cols, &b.data);
    let x = am.lu().solve(&bm)?;
    let mut out = Matrix::zeros(b.rows, b.cols);
    for i in 0..b.rows {
        for j in 0..b.cols {
            out[(i, j)] = x[(i, j)];
        }
    }
    Some(out)
}

/// Rank of a matrix by elimination (exact for rationals, relative tolerance
/// for floats).
pub fn rank<S: Scalar>(a: &Matrix<S>) -> usize {
    let mut rows: Vec<Vec<S>> = (0..a.rows).map(|i| a.row(i).to_vec()).collect();
    let scale = a.data.iter().map(|v| v.to_f64().abs()).fold(1.0, f64::max);
    let mut r = 0;
    for col in 0..a.cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].negligible(scale)) else {
            continue;
        };
        rows.swap(r, p);
        let pv = rows[r][col].clone();
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone() / pv.clone();
            for j in col..a.cols {
                row[j] = row[j].clone() - f.clone() * prow[j].clone();
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int, Rational};

    #[test]
    fn solves_consistent_overdetermined_system() {
        // x + y = 3, x - y = 1, 2x = 4
        let a = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1)],
            vec![rat_int(2), rat_int(0)],
        ]);
        let b = Matrix::from_rows(vec![vec![rat_int(3)], vec![rat_int(1)], vec![rat_int(4)]]);
        match solve_full_column_rank(&a, &b) {
            SolveOutcome::Solved(x) => {
                assert_eq!(x[(0, 0)], rat_int(2));
                assert_eq!(x[(1, 0)], rat_int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_inconsistency_and_rank_deficit() {
        let a = Matrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(2)]]);
        let b = Matrix::from_rows(vec![vec![rat_int(1)], vec![rat(5, 2)]]);
        assert!(matches!(
            solve_full_column_rank(&a, &b),
            SolveOutcome::Inconsistent { .. }
        ));
        let a: Matrix<Rational> =
            Matrix::from_rows(vec![vec![rat_int(1), rat_int(2)], vec![rat_int(2), rat_int(4)]]);
        let b = Matrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(2)]]);
        assert!(matches!(
            solve_full_column_rank(&a, &b),
            SolveOutcome::RankDeficient { rank: 1 }
        ));
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn float_pivoting() {
        let a = Matrix::from_rows(vec![vec![1e-12, 1.0], vec![1.0, 1.0], vec![2.0, 1.0]]);
        let b = Matrix::from_rows(vec![vec![1.0], vec![2.0], vec![3.0]]);
        match solve_full_column_rank(&a, &b) {
            SolveOutcome::Solved(x) => {
                assert!((x[(0, 0)] - 1.0).abs() < 1e-9);
                assert!((x[(1, 0)] - 1.0).abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
