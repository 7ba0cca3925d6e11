//! Exact integer matrix algebra: Smith normal form with unimodular
//! transformation matrices, and integer linear system solving.
//!
//! Everything here runs over arbitrary-precision integers; there is no
//! modular or floating-point fallback. Pivoting always selects the
//! smallest nonzero entry in absolute value (ties broken by lowest row,
//! then lowest column) so that repeated runs produce identical output.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.iter().flat_map(|row| row.iter().map(|&x| BigInt::from(x))).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Horizontal concatenation [self | other].
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = &num / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.entries.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.rows {
            self.entries.swap(k * self.cols + i, k * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let e = &mut self[(i, k)];
            *e = -std::mem::take(e);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for k in 0..self.rows {
            let e = &mut self[(k, j)];
            *e = -std::mem::take(e);
        }
    }

    /// row[i] += c * row[j]
    fn add_row_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.cols {
            let add = c * &self[(j, k)];
            self[(i, k)] += add;
        }
    }

    /// col[i] += c * col[j]
    fn add_col_multiple(&mut self, i: usize, j: usize, c: &BigInt) {
        for k in 0..self.rows {
            let add = c * &self[(k, j)];
            self[(k, i)] += add;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

/// Smith normal form `A = U * S * V` with `U`, `V` unimodular and `S`
/// diagonal, nonnegative, with each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

/// Full decomposition that also carries the inverses of `U` and `V`.
/// The inverses come for free from the reduction and are what the
/// solvers actually consume.
#[derive(Clone, Debug)]
pub struct SnfFull {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SnfFull {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct SnfState {
    s: IntMatrix,
    // u tracks the inverse of the accumulated row operations, so that
    // u * s_current * v reproduces the original matrix at every step.
    u: IntMatrix,
    v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfState {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.s.swap_rows(i, j);
        self.u.swap_cols(i, j);
        self.u_inv.swap_rows(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.s.swap_cols(i, j);
        self.v.swap_rows(i, j);
        self.v_inv.swap_cols(i, j);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_col(i);
        self.u_inv.negate_row(i);
    }

    /// s.row[i] += c * s.row[j]
    fn shear_row(&mut self, i: usize, j: usize, c: &BigInt) {
        self.s.add_row_multiple(i, j, c);
        let neg = -c.clone();
        self.u.add_col_multiple(j, i, &neg);
        self.u_inv.add_row_multiple(i, j, c);
    }

    /// s.col[i] += c * s.col[j]
    fn shear_col(&mut self, i: usize, j: usize, c: &BigInt) {
        self.s.add_col_multiple(i, j, c);
        let neg = -c.clone();
        self.v.add_row_multiple(j, i, &neg);
        self.v_inv.add_col_multiple(i, j, c);
    }
}

/// Smallest-|entry| nonzero pivot in the trailing submatrix starting at
/// `(t, t)`; ties broken by lowest row then lowest column.
fn find_pivot(s: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if s[(i, j)].abs() < s[(bi, bj)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form with both transformation matrices and their inverses.
pub fn smith_normal_form_full(a: &IntMatrix) -> SnfFull {
    let (r, c) = (a.rows(), a.cols());
    let mut st = SnfState {
        s: a.clone(),
        u: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        u_inv: IntMatrix::identity(r),
        v_inv: IntMatrix::identity(c),
    };
    let mut t = 0;
    while t < r && t < c {
        let Some((pi, pj)) = find_pivot(&st.s, t) else { break };
        st.swap_rows(t, pi);
        st.swap_cols(t, pj);
        // Reduce until the pivot divides its whole row and column.
        loop {
            let mut again = false;
            for i in t + 1..r {
                if st.s[(i, t)].is_zero() {
                    continue;
                }
                let q = div_nearest(&st.s[(i, t)], &st.s[(t, t)]);
                let negq = -q;
                st.shear_row(i, t, &negq);
                if !st.s[(i, t)].is_zero() {
                    // Remainder is strictly smaller: promote it to pivot.
                    st.swap_rows(t, i);
                    again = true;
                }
            }
            for j in t + 1..c {
                if st.s[(t, j)].is_zero() {
                    continue;
                }
                let q = div_nearest(&st.s[(t, j)], &st.s[(t, t)]);
                let negq = -q;
                st.shear_col(j, t, &negq);
                if !st.s[(t, j)].is_zero() {
                    st.swap_cols(t, j);
                    again = true;
                }
            }
            if !again {
                break;
            }
        }
        // Pivot must divide every remaining entry; if not, fold the
        // offending row in and redo this pivot.
        let mut offender = None;
        'scan: for i in t + 1..r {
            for j in t + 1..c {
                if !(&st.s[(i, j)] % &st.s[(t, t)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            let one = BigInt::one();
            st.shear_row(t, i, &one);
            continue;
        }
        if st.s[(t, t)].is_negative() {
            st.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    SnfFull { u: st.u, s: st.s, v: st.v, u_inv: st.u_inv, v_inv: st.v_inv, rank }
}

/// Smith normal form `A = U * S * V`.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let full = smith_normal_form_full(a);
    SnfDecomposition { u: full.u, s: full.s, v: full.v, rank: full.rank }
}

/// Quotient rounded to nearest, so the remainder is at most |d|/2.
fn div_nearest(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = n.div_rem(d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.is_negative()) != (d.is_negative()) {
            q -= 1;
        } else {
            q += 1;
        }
    }
    q
}

/// Solution of `A x = b` over the integers: one particular solution plus
/// a basis of the integer kernel of `A`.
#[derive(Clone, Debug)]
pub struct LinearSolution {
    pub particular: Vec<BigInt>,
    pub kernel_basis: Vec<Vec<BigInt>>,
}

/// Solves `A x = b` over ℤ. Returns `None` when no integer solution
/// exists; a mismatched right-hand-side length is a usage error.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<Option<LinearSolution>, Error> {
    if b.len() != a.rows() {
        return Err(Error::Usage(format!(
            "solve_linear: rhs length {} does not match {} rows",
            b.len(),
            a.rows()
        )));
    }
    let snf = smith_normal_form_full(a);
    Ok(solve_with_snf(&snf, a.cols(), b))
}

/// Same as [`solve_linear`] but reuses a precomputed decomposition.
pub fn solve_with_snf(snf: &SnfFull, cols: usize, b: &[BigInt]) -> Option<LinearSolution> {
    let c = snf.u_inv.mul_vec(b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = ci.div_rem(&snf.s[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    let particular = snf.v_inv.mul_vec(&y);
    let kernel_basis = (snf.rank..cols).map(|j| snf.v_inv.column(j)).collect();
    Some(LinearSolution { particular, kernel_basis })
}
