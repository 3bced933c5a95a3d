//! Exact matrices: integer matrices with Hermite normal form and lattice
//! kernels, and dense matrices over a scalar field with echelon subspaces.

use crate::scalar::Field;
use num::traits::Euclid;
use num::{BigInt, One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&v| BigInt::from(v)));
        }
        IntMatrix::new(r, c, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *out.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.at(k, j);
                    *out.at_mut(i, j) += prod;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            let i = a * self.cols + c;
            let j = b * self.cols + c;
            self.entries.swap(i, j);
        }
    }

    /// row(dst) += k * row(src)
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = self.at(src, c) * k;
            *self.at_mut(dst, c) += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// Determinant by fraction-free Bareiss elimination. Square only.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let pivot = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
                match pivot {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / &prev;
                    *m.at_mut(i, j) = v;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        sign * m.at(n - 1, n - 1).clone()
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            for r in row + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let a = m.at(row, col).clone();
                let b = m.at(r, col).clone();
                for c in 0..m.cols {
                    let v = m.at(r, c) * &a - m.at(row, c) * &b;
                    *m.at_mut(r, c) = v;
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }
}

/// Row-style Hermite normal form: returns (H, U) with U unimodular,
/// U * A = H, pivots positive, entries above each pivot reduced into
/// [0, pivot).
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    assert!(a.rows > 0 && a.cols > 0, "HNF of empty matrix");
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Clear the column below pivot_row by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows {
                if h.at(r, col).is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        if h.at(r, col).magnitude() < h.at(b, col).magnitude() {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..h.rows {
                if h.at(r, col).is_zero() {
                    continue;
                }
                let q = -(h.at(r, col) / h.at(pivot_row, col));
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
                if !h.at(r, col).is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h.at(pivot_row, col).is_zero() {
            continue;
        }
        if h.at(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        // Reduce entries above the pivot into [0, pivot).
        for r in 0..pivot_row {
            let p = h.at(pivot_row, col).clone();
            let v = h.at(r, col).clone();
            let q = -v.div_euclid(&p);
            if !q.is_zero() {
                h.add_row_multiple(r, pivot_row, &q);
                u.add_row_multiple(r, pivot_row, &q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Lattice basis of ker(A) ∩ Z^cols: the rows of U matching zero rows of
/// the HNF of A^T. Unimodularity of U makes the basis saturated.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    if a.cols == 0 {
        return vec![];
    }
    if a.rows == 0 {
        return (0..a.cols)
            .map(|i| {
                let mut v = vec![BigInt::zero(); a.cols];
                v[i] = BigInt::one();
                v
            })
            .collect();
    }
    let (h, u) = hermite_normal_form(&a.transpose());
    let mut out = vec![];
    for r in 0..h.rows {
        if h.row(r).iter().all(|x| x.is_zero()) {
            out.push(u.row(r).to_vec());
        }
    }
    out
}

/// Dense matrix over a scalar field.
#[derive(Clone, PartialEq, Debug)]
pub struct FieldMatrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<F>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        FieldMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        FieldMatrix::new(rows, cols, vec![F::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = F::one();
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = FieldMatrix::<F>::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j).add(&a.mul(other.at(k, j)));
                    *out.at_mut(i, j) = v;
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: usize) -> Self {
        assert_eq!(self.rows, self.cols, "power of non-square matrix");
        let mut base = self.clone();
        let mut acc = FieldMatrix::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    if v[j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        FieldMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e.mul(c)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        FieldMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    /// Kernel as a canonical subspace.
    pub fn kernel(&self) -> Subspace<F> {
        // Row-reduce a copy, tracking pivot columns.
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
        let mut row = 0;
        for col in 0..m.cols {
            let p = (row..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = p else { continue };
            if p != row {
                for c in 0..m.cols {
                    let a = m.at(p, c).clone();
                    let b = m.at(row, c).clone();
                    *m.at_mut(p, c) = b;
                    *m.at_mut(row, c) = a;
                }
            }
            let inv = m.at(row, col).inv();
            for c in 0..m.cols {
                let v = m.at(row, c).mul(&inv);
                *m.at_mut(row, c) = v;
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let k = m.at(r, col).clone();
                for c in 0..m.cols {
                    let v = m.at(r, c).sub(&k.mul(m.at(row, c)));
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = vec![];
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![F::zero(); m.cols];
            v[free] = F::one();
            for &(r, c) in &pivots {
                v[c] = m.at(r, free).neg();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    pub fn rank(&self) -> usize {
        self.cols - self.kernel().dim()
    }
}

/// A linear subspace with a canonical reduced-echelon basis: each basis
/// vector's first nonzero entry is 1, pivot positions strictly increase,
/// and pivot positions are zero in every other basis vector. Equal
/// subspaces therefore compare equal structurally.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F: Field> {
    pub ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: vec![],
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut basis = vec![];
        for i in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            basis.push(v);
        }
        Subspace { ambient, basis }
    }

    /// Canonicalize a spanning set into the reduced echelon basis.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut basis: Vec<Vec<F>> = vec![];
        for v in vectors {
            assert_eq!(v.len(), ambient, "ambient dimension mismatch");
            let mut v = v;
            reduce_against(&mut v, &basis);
            if let Some(p) = first_nonzero(&v) {
                let inv = v[p].inv();
                for e in v.iter_mut() {
                    *e = e.mul(&inv);
                }
                for b in basis.iter_mut() {
                    if !b[p].is_zero() {
                        let k = b[p].clone();
                        for (be, ve) in b.iter_mut().zip(&v) {
                            *be = be.sub(&k.mul(ve));
                        }
                    }
                }
                basis.push(v);
            }
        }
        basis.sort_by_key(|v| first_nonzero(v).unwrap());
        Subspace { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        reduce_against(&mut v, &self.basis);
        first_nonzero(&v).is_none()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Image of this subspace under a matrix.
    pub fn image_under(&self, m: &FieldMatrix<F>) -> Subspace<F> {
        let vectors = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::from_spanning(m.rows, vectors)
    }
}

fn first_nonzero<F: Field>(v: &[F]) -> Option<usize> {
    v.iter().position(|e| !e.is_zero())
}

fn reduce_against<F: Field>(v: &mut [F], basis: &[Vec<F>]) {
    for b in basis {
        let p = first_nonzero(b).expect("zero vector in basis");
        if !v[p].is_zero() {
            let k = v[p].clone();
            for (ve, be) in v.iter_mut().zip(b) {
                *ve = ve.sub(&k.mul(be));
            }
        }
    }
}

/// Solve A x = b exactly over the rationals. Returns a particular solution
/// (free variables set to zero) and a kernel basis, or None if inconsistent.
/// Pivot columns are chosen in the order given by `col_order`; earlier
/// entries are preferred as pivots (and thus eliminated).
pub fn rational_solve_ordered(
    a: &[Vec<num::BigRational>],
    b: &[num::BigRational],
    col_order: &[usize],
) -> Option<(Vec<num::BigRational>, Vec<Vec<num::BigRational>>)> {
    use num::BigRational;
    let rows = a.len();
    assert_eq!(rows, b.len(), "rhs length mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged rows");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = vec![]; // (row, col)
    let mut row = 0;
    for &col in col_order {
        if row == rows {
            break;
        }
        let p = (row..rows).find(|&r| !Zero::is_zero(&m[r][col]));
        let Some(p) = p else { continue };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for e in m[row].iter_mut() {
            *e = &*e * &inv;
        }
        for r in 0..rows {
            if r == row || Zero::is_zero(&m[r][col]) {
                continue;
            }
            let k = m[r][col].clone();
            for c in 0..=cols {
                let v = &m[r][c] - &k * &m[row][c];
                m[r][c] = v;
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // Inconsistent if some zero row has nonzero rhs.
    for r in row..rows {
        if !Zero::is_zero(&m[r][cols]) {
            return None;
        }
    }
    let mut particular = vec![<BigRational as Zero>::zero(); cols];
    for &(r, c) in &pivots {
        particular[c] = m[r][cols].clone();
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut kernel = vec![];
    for &free in col_order {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![<BigRational as Zero>::zero(); cols];
        v[free] = <BigRational as One>::one();
        for &(r, c) in &pivots {
            v[c] = -m[r][free].clone();
        }
        kernel.push(v);
    }
    Some((particular, kernel))
}

/// rational_solve_ordered with the natural left-to-right column order.
pub fn rational_solve(
    a: &[Vec<num::BigRational>],
    b: &[num::BigRational],
) -> Option<(Vec<num::BigRational>, Vec<Vec<num::BigRational>>)> {
    let cols = a.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..cols).collect();
    rational_solve_ordered(a, b, &order)
}

/// ker(M^d) as a canonical subspace.
pub fn kernel_of_power<F: Field>(m: &FieldMatrix<F>, d: usize) -> Subspace<F> {
    assert_eq!(m.rows, m.cols, "kernel_of_power needs a square matrix");
    assert!(d >= 1, "power must be at least 1");
    m.pow(d).kernel()
}

/// Smallest n <= dim with M^n = 0, or None when M is not nilpotent.
pub fn nilpotency_index<F: Field>(m: &FieldMatrix<F>) -> Option<usize> {
    assert_eq!(m.rows, m.cols, "nilpotency of non-square matrix");
    let d = m.rows;
    if d == 0 {
        return Some(1); // the empty matrix is zero
    }
    let mut acc = FieldMatrix::identity(d);
    for n in 1..=d {
        acc = acc.mul(m);
        if acc.is_zero() {
            return Some(n);
        }
    }
    None
}
