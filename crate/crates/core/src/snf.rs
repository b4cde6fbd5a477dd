//! Integer matrices and their Smith normal form.
//!
//! Arithmetic is arbitrary precision throughout. [`smith_normal_form`] keeps
//! the unimodular transforms (and their inverses) so that homology classes
//! can be written in coordinates; [`invariant_factors`] only wants the
//! diagonal and first clears unit pivots on a sparse copy, which disposes of
//! almost all of a boundary matrix before any dense work happens.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for (k, row) in self.data.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.data[k][k] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r][c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[c].clone()).collect()
    }

    /// The diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|k| self.data[k][k].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Determinant by fraction-free elimination (square matrices only).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.data {
            row.swap(i, j);
        }
    }

    /// `row_i += k * row_j`
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let (src, dst) = if i < j {
            let (a, b) = self.data.split_at_mut(j);
            (&b[0], &mut a[i])
        } else {
            let (a, b) = self.data.split_at_mut(i);
            (&a[j], &mut b[0])
        };
        for (d, s) in dst.iter_mut().zip(src) {
            if !s.is_zero() {
                *d += k * s;
            }
        }
    }

    /// `col_i += k * col_j`
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for row in &mut self.data {
            if !row[j].is_zero() {
                let v = k * &row[j];
                row[i] += v;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -std::mem::take(x);
        }
    }
}

/// `d = s · m · t` with `s`, `t` unimodular and `d` diagonal, each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: Matrix,
    pub s: Matrix,
    pub t: Matrix,
    pub s_inv: Matrix,
    pub t_inv: Matrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn factors(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.factors().len()
    }
}

struct Tracked {
    m: Matrix,
    s: Matrix,
    s_inv: Matrix,
    t: Matrix,
    t_inv: Matrix,
}

impl Reduce for Tracked {
    fn m(&self) -> &Matrix {
        &self.m
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.m.swap_rows(i, j);
            self.s.swap_rows(i, j);
            self.s_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            self.m.swap_cols(i, j);
            self.t.swap_cols(i, j);
            self.t_inv.swap_rows(i, j);
        }
    }

    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_row(i, j, k);
        self.s.add_row(i, j, k);
        self.s_inv.add_col(j, i, &-k);
    }

    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        self.m.add_col(i, j, k);
        self.t.add_col(i, j, k);
        self.t_inv.add_row(j, i, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.m.negate_row(i);
        self.s.negate_row(i);
        for row in &mut self.s_inv.data {
            row[i] = -std::mem::take(&mut row[i]);
        }
    }
}

/// Row and column operations the reduction needs; implemented by a bare
/// matrix and by one that records its transforms.
trait Reduce {
    fn m(&self) -> &Matrix;
    fn swap_rows(&mut self, i: usize, j: usize);
    fn swap_cols(&mut self, i: usize, j: usize);
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt);
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt);
    fn negate_row(&mut self, i: usize);
}

impl Reduce for Matrix {
    fn m(&self) -> &Matrix {
        self
    }
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        Matrix::swap_cols(self, i, j)
    }
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        Matrix::add_row(self, i, j, k)
    }
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        Matrix::add_col(self, i, j, k)
    }
    fn negate_row(&mut self, i: usize) {
        Matrix::negate_row(self, i)
    }
}

fn reduce<W: Reduce>(w: &mut W) {
    let (rows, cols) = (w.m().rows, w.m().cols);
    for p in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in p..rows {
            for j in p..cols {
                let x = &w.m().data[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.m().data[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(p, bi);
        w.swap_cols(p, bj);
        loop {
            let mut clean = true;
            for i in p + 1..rows {
                if w.m().data[i][p].is_zero() {
                    continue;
                }
                let q = w.m().data[i][p].div_floor(&w.m().data[p][p]);
                w.add_row(i, p, &-q);
                if !w.m().data[i][p].is_zero() {
                    w.swap_rows(p, i);
                    clean = false;
                }
            }
            for j in p + 1..cols {
                if w.m().data[p][j].is_zero() {
                    continue;
                }
                let q = w.m().data[p][j].div_floor(&w.m().data[p][p]);
                w.add_col(j, p, &-q);
                if !w.m().data[p][j].is_zero() {
                    w.swap_cols(p, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold a bad row into the pivot row and go again
            let pivot = w.m().data[p][p].clone();
            let bad = (p + 1..rows).find(|&i| (p + 1..cols).any(|j| !w.m().data[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => w.add_row(p, i, &BigInt::one()),
                None => break,
            }
        }
        if w.m().data[p][p].is_negative() {
            w.negate_row(p);
        }
    }
}

pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let mut w = Tracked {
        m: m.clone(),
        s: Matrix::identity(m.rows),
        s_inv: Matrix::identity(m.rows),
        t: Matrix::identity(m.cols),
        t_inv: Matrix::identity(m.cols),
    };
    reduce(&mut w);
    SmithForm { d: w.m, s: w.s, t: w.t, s_inv: w.s_inv, t_inv: w.t_inv }
}

/// The nonzero invariant factors of a matrix given by its nonzero entries.
/// Unit pivots are eliminated sparsely first; the rest goes through
/// [`smith_normal_form`].
pub fn invariant_factors(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<BigInt> {
    let mut row_data: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for &(r, c, v) in entries {
        let e = row_data[r].entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            row_data[r].remove(&c);
            col_rows[c].remove(&r);
        } else {
            col_rows[c].insert(r);
        }
    }
    let mut alive = vec![true; rows];
    let mut units = 0usize;
    loop {
        // a unit entry in the shortest row that has one
        let mut pick: Option<(usize, usize, usize)> = None;
        for (r, row) in row_data.iter().enumerate() {
            if !alive[r] || row.is_empty() || pick.is_some_and(|(_, _, len)| row.len() >= len) {
                continue;
            }
            if let Some((&c, _)) = row.iter().find(|(_, v)| v.abs().is_one()) {
                pick = Some((r, c, row.len()));
            }
        }
        let Some((pr, pc, _)) = pick else { break };
        let pivot_row = std::mem::take(&mut row_data[pr]);
        alive[pr] = false;
        for &c in pivot_row.keys() {
            col_rows[c].remove(&pr);
        }
        let pv = pivot_row[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in others {
            let factor = &row_data[r][&pc] * &pv; // pv = ±1, so this is entry / pv
            for (&c, v) in &pivot_row {
                let e = row_data[r].entry(c).or_insert_with(BigInt::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    row_data[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    col_rows[c].insert(r);
                }
            }
        }
        debug_assert!(col_rows[pc].is_empty());
        units += 1;
    }
    let rest_rows: Vec<usize> = (0..rows).filter(|&r| alive[r] && !row_data[r].is_empty()).collect();
    let rest_cols: Vec<usize> = (0..cols).filter(|&c| !col_rows[c].is_empty()).collect();
    let mut factors = vec![BigInt::one(); units];
    if !rest_rows.is_empty() {
        let col_pos: BTreeMap<usize, usize> = rest_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut dense = Matrix::zeros(rest_rows.len(), rest_cols.len());
        for (k, &r) in rest_rows.iter().enumerate() {
            for (c, v) in &row_data[r] {
                dense.data[k][col_pos[c]] = v.clone();
            }
        }
        factors.extend(diagonal_only(dense));
    }
    factors
}

/// Smith diagonal without transforms.
fn diagonal_only(mut m: Matrix) -> Vec<BigInt> {
    reduce(&mut m);
    m.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
}
