//! Exact integer linear algebra: Smith Normal Form, lattice spanning and
//! membership tests, and an incremental SNF that absorbs one vector at a time.
//!
//! Cycle sums are stored as the columns of a translational matrix `A` with
//! `n` rows. The incremental form works on `Aᵀ` (one added vector per row)
//! and tracks only the right transform and the invariant factors; factors of
//! `A` and `Aᵀ` coincide.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x.into();
            }
        }
        m
    }

    /// Matrix whose columns are `columns`, each of length `rows`.
    pub fn from_columns<T: Into<BigInt> + Copy>(rows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, &x) in col.iter().enumerate() {
                m[(i, j)] = x.into();
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
        self.data.iter().all(Zero::is_zero)
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

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
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
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += q · row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * q;
            self[(dst, j)] += v;
        }
    }

    /// `(row[a], row[b]) ← (x·row[a] + y·row[b], p·row[a] + q·row[b])`
    fn mix_rows(&mut self, a: usize, b: usize, [x, y, p, q]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let (u, v) = (&self[(a, j)], &self[(b, j)]);
            let new_a = x * u + y * v;
            let new_b = p * u + q * v;
            self[(a, j)] = new_a;
            self[(b, j)] = new_b;
        }
    }

    fn mix_cols(&mut self, a: usize, b: usize, [x, y, p, q]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let (u, v) = (&self[(i, a)], &self[(i, b)]);
            let new_a = x * u + y * v;
            let new_b = p * u + q * v;
            self[(i, a)] = new_a;
            self[(i, b)] = new_b;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

/// `left · A · right = diagonal` with unimodular `left`, `right`.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    /// Diagonal entries, `min(rows, cols)` of them: positive ones forming a
    /// divisibility chain, then zeros.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.iter().take_while(|f| !f.is_zero()).count()
    }
}

/// Smith Normal Form by gcd pivoting with row and column operations.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = min_abs_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let m = eliminator(&d[(t, t)], &d[(i, t)]);
                    d.mix_rows(t, i, &m);
                    left.mix_rows(t, i, &m);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let m = eliminator(&d[(t, t)], &d[(t, j)]);
                    d.mix_cols(t, j, &m);
                    right.mix_cols(t, j, &m);
                    dirty = true;
                }
            }
            // Column operations may refill column t.
            if dirty && (t + 1..rows).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // Pivot must divide the whole trailing block; otherwise pull an
            // offending row into row t and reduce again.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
    }

    let factors = (0..steps).map(|i| d[(i, i)].clone()).collect();
    SnfResult {
        left,
        diagonal: d,
        right,
        factors,
    }
}

/// Unimodular `[x, y, p, q]` sending `(a, b)` to `(gcd(a, b), 0)`.
fn eliminator(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if b.is_multiple_of(a) {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let e = a.extended_gcd(b);
    [e.x, e.y, -(b / &e.gcd), a / &e.gcd]
}

fn min_abs_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Whether the columns of `a` generate all of `ℤⁿ` (`n = a.rows()`).
pub fn spans_lattice(a: &IntMatrix) -> bool {
    let n = a.rows();
    if a.cols() < n {
        return false;
    }
    let res = snf(a);
    res.factors.len() == n && res.factors.iter().all(One::is_one)
}

/// Whether `c` is an integer combination of the columns of `a`.
pub fn in_span(a: &IntMatrix, c: &[i64]) -> bool {
    assert_eq!(a.rows(), c.len(), "vector length must match the row count");
    if a.cols() == 0 {
        return c.iter().all(|&x| x == 0);
    }
    let res = snf(a);
    let c: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    let lc = res.left.mul_vec(&c);
    let rank = res.rank();
    lc.iter().enumerate().all(|(i, x)| {
        if i < rank {
            x.is_multiple_of(&res.factors[i])
        } else {
            x.is_zero()
        }
    })
}

/// Smith form of a growing list of vectors, updated one vector at a time.
#[derive(Debug, Clone)]
pub struct OnlineSnfState {
    dim: usize,
    /// Nonzero invariant factors, in divisibility order.
    factors: Vec<BigInt>,
    /// Right transform: `L · V · right = [diag(factors); 0]` for the matrix
    /// `V` whose rows are the absorbed vectors.
    right: IntMatrix,
    absorbed: usize,
}

impl OnlineSnfState {
    pub fn new(dim: usize) -> Self {
        OnlineSnfState {
            dim,
            factors: Vec::new(),
            right: IntMatrix::identity(dim),
            absorbed: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn right(&self) -> &IntMatrix {
        &self.right
    }

    /// Number of vectors that changed the state.
    pub fn absorbed(&self) -> usize {
        self.absorbed
    }

    /// Whether `v` already lies in the integer span of the absorbed vectors.
    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).is_none()
    }

    /// `v · right`, or `None` when every coordinate is divisible by its
    /// factor (and coordinates past the rank vanish).
    fn reduce(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector dimension");
        let row: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        let x: Vec<BigInt> = (0..self.dim)
            .map(|j| (0..self.dim).map(|k| &row[k] * &self.right[(k, j)]).sum())
            .collect();
        let inside = x.iter().enumerate().all(|(i, xi)| match self.factors.get(i) {
            Some(f) => xi.is_multiple_of(f),
            None => xi.is_zero(),
        });
        if inside {
            None
        } else {
            Some(x)
        }
    }

    /// Absorbs `v`; returns `false` when the span is unchanged.
    pub fn add(&mut self, v: &[i64]) -> bool {
        let Some(x) = self.reduce(v) else {
            return false;
        };
        // Current form is diag(F) stacked on x; re-reduce that small matrix
        // and fold its column operations into `right`.
        let r = self.factors.len();
        let mut m = IntMatrix::zeros(r + 1, self.dim);
        for (i, f) in self.factors.iter().enumerate() {
            m[(i, i)] = f.clone();
        }
        for (j, xj) in x.into_iter().enumerate() {
            m[(r, j)] = xj;
        }
        let res = snf(&m);
        self.right = self.right.mul(&res.right);
        self.factors = res.factors.into_iter().filter(|f| !f.is_zero()).collect();
        self.absorbed += 1;
        true
    }

    /// `n` invariant factors, all equal to one.
    pub fn is_complete(&self) -> bool {
        self.factors.len() == self.dim && self.factors.iter().all(One::is_one)
    }
}
