//! Matrices of polynomials and the exact linear algebra used by every check.
//!
//! Ranks and determinants over the fraction field of the parameter ring are
//! computed by fraction-free (Bareiss) elimination, so no rational-function
//! arithmetic and no polynomial gcds are ever needed: every division in the
//! elimination is exact by the Sylvester determinant identity.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, Rat, VariableContext};

/// Rectangular matrix with polynomial entries over one shared context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    ctx: Arc<VariableContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(ctx: &Arc<VariableContext>, rows: Vec<Vec<Polynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged matrix rows");
            for e in &row {
                assert!(
                    Arc::ptr_eq(e.context(), ctx) || e.context() == ctx,
                    "matrix entry from a different context"
                );
            }
            entries.extend(row);
        }
        PolyMatrix {
            ctx: ctx.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn zero(ctx: &Arc<VariableContext>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &Arc<VariableContext>, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Polynomial::one(ctx));
        }
        m
    }

    /// Constant matrix from rational entries.
    pub fn from_rationals(ctx: &Arc<VariableContext>, rows: &[Vec<Rat>]) -> Self {
        PolyMatrix::from_rows(
            ctx,
            rows.iter()
                .map(|r| r.iter().map(|c| Polynomial::constant(ctx, c.clone())).collect())
                .collect(),
        )
    }

    pub fn context(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> PolyMatrix {
        PolyMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise image under a context-changing polynomial map.
    pub fn map_entries<F>(&self, target: &Arc<VariableContext>, f: F) -> Result<PolyMatrix>
    where
        F: Fn(&Polynomial) -> Result<Polynomial>,
    {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(PolyMatrix {
            ctx: target.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn matmul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        let mut out = PolyMatrix::zero(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero(&self.ctx);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Apply to a column vector of polynomials.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(&self.ctx);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * &v[k]);
                }
                acc
            })
            .collect()
    }

    /// Apply to a rational point, giving polynomial coordinates.
    pub fn apply_point(&self, v: &[Rat]) -> Vec<Polynomial> {
        let poly: Vec<Polynomial> = v
            .iter()
            .map(|c| Polynomial::constant(&self.ctx, c.clone()))
            .collect();
        self.apply(&poly)
    }

    /// Rank over the fraction field of the full polynomial ring, computed by
    /// fraction-free elimination with row/column pivot search. Exact; no
    /// specialization of parameters takes place.
    pub fn rank_over_fractions(&self) -> usize {
        let mut m: Vec<Vec<Polynomial>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let one = Polynomial::one(&self.ctx);
        let mut prev = one;
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pivot);
            for r in row + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &(&m[row][col] * &m[r][c]) - &(&m[r][col] * &m[row][c]);
                    m[r][c] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                }
                m[r][col] = Polynomial::zero(&self.ctx);
            }
            prev = m[row][col].clone();
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Polynomial {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Polynomial::one(&self.ctx);
        }
        let mut m: Vec<Vec<Polynomial>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Polynomial::one(&self.ctx);
        let mut sign = false;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return Polynomial::zero(&self.ctx);
            };
            if pivot != col {
                m.swap(col, pivot);
                sign = !sign;
            }
            for r in col + 1..n {
                for c in col + 1..n {
                    let num = &(&m[col][col] * &m[r][c]) - &(&m[r][col] * &m[col][c]);
                    m[r][c] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination divides exactly");
                }
                m[r][col] = Polynomial::zero(&self.ctx);
            }
            prev = m[col][col].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign {
            -det
        } else {
            det
        }
    }

    fn minor_matrix(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let rows: Vec<Vec<Polynomial>> = (0..self.rows)
            .filter(|&i| i != skip_row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(&self.ctx, rows)
    }

    /// Adjugate matrix: `self * adjugate = det * identity`.
    pub fn adjugate(&self) -> PolyMatrix {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return self.clone();
        }
        let mut adj = PolyMatrix::zero(&self.ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor_matrix(i, j).determinant();
                let signed = if (i + j) % 2 == 0 { cof } else { -cof };
                adj.set(j, i, signed);
            }
        }
        adj
    }

    /// Inverse as an (adjugate, determinant) pair, keeping entries polynomial.
    pub fn inverse(&self) -> Result<MatrixInverse> {
        if !self.is_square() {
            return Err(Error::BadMatrixShape(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let det = self.determinant();
        if det.is_zero() {
            return Err(Error::NotInvertible {
                determinant: det.to_string(),
            });
        }
        Ok(MatrixInverse {
            adjugate: self.adjugate(),
            det,
        })
    }

    /// Projective equality: equal up to one common scalar from the fraction
    /// field, optionally modulo the relation `s*t = 1` between two variables.
    pub fn projectively_equal(
        &self,
        other: &PolyMatrix,
        inverse_pair: Option<(usize, usize)>,
    ) -> ProjectiveEq {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        let reduce = |p: &Polynomial| match inverse_pair {
            Some((s, t)) => p.cancel_inverse_pair(s, t),
            None => p.clone(),
        };
        let base = (0..self.rows * self.cols)
            .map(|k| (k / self.cols, k % self.cols))
            .find(|&(i, j)| !reduce(other.get(i, j)).is_zero());
        let Some((bi, bj)) = base else {
            // other is the zero matrix
            let equal = self.entries.iter().all(|e| reduce(e).is_zero());
            return ProjectiveEq {
                equal,
                scalar: None,
                offending: None,
            };
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let lhs = self.get(i, j) * other.get(bi, bj);
                let rhs = self.get(bi, bj) * other.get(i, j);
                if !reduce(&(&lhs - &rhs)).is_zero() {
                    return ProjectiveEq {
                        equal: false,
                        scalar: None,
                        offending: Some(((i, j), (bi, bj))),
                    };
                }
            }
        }
        ProjectiveEq {
            equal: true,
            scalar: Some((
                reduce(self.get(bi, bj)),
                reduce(other.get(bi, bj)),
            )),
            offending: None,
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Inverse kept in polynomial form: `matrix * adjugate = det * identity`.
#[derive(Debug, Clone)]
pub struct MatrixInverse {
    pub adjugate: PolyMatrix,
    pub det: Polynomial,
}

/// Outcome of a projective matrix comparison.
#[derive(Debug, Clone)]
pub struct ProjectiveEq {
    pub equal: bool,
    /// Common scalar as a (numerator, denominator) pair when equal.
    pub scalar: Option<(Polynomial, Polynomial)>,
    /// First offending entry pair when unequal: the cross product of these
    /// two positions does not vanish.
    pub offending: Option<((usize, usize), (usize, usize))>,
}

// ---------------------------------------------------------------------------
// exact rational row reduction, used for graded-piece linear algebra over Q
// ---------------------------------------------------------------------------

/// Reduced row echelon form over Q with pivot bookkeeping.
pub struct Rref {
    pub rows: Vec<Vec<Rat>>,
    /// Column of the pivot of each reduced row.
    pub pivots: Vec<usize>,
    /// Expression of each reduced row as a combination of the input rows.
    pub transform: Vec<Vec<Rat>>,
}

/// Gauss-Jordan elimination over the rationals.
pub fn rref(input: &[Vec<Rat>]) -> Rref {
    let nrows = input.len();
    let ncols = input.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<Rat>> = input.to_vec();
    let mut transform: Vec<Vec<Rat>> = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r >= nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        transform.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for v in transform[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..ncols {
                let t = &rows[r][j] * &factor;
                rows[i][j] -= t;
            }
            for j in 0..nrows {
                let t = &transform[r][j] * &factor;
                transform[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    transform.truncate(r);
    Rref {
        rows,
        pivots,
        transform,
    }
}

/// Rank of a rational matrix.
pub fn rank_q(rows: &[Vec<Rat>]) -> usize {
    rref(rows).rows.len()
}

/// Basis of the right kernel of a rational matrix.
pub fn nullspace(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let red = rref(rows);
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (r, &c) in red.pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![Rat::zero(); ncols];
        vec[free] = Rat::one();
        for (r, &c) in red.pivots.iter().enumerate() {
            vec[c] = -red.rows[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}
