//! Dense matrices over ℚ(ζ_M) and incremental row reduction.

use std::fmt;

use super::{CycNum, ExactError};

#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    order: u64,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(order: u64, rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            order,
            data: vec![CycNum::zero(order); rows * cols],
        }
    }

    pub fn identity(order: u64, n: usize) -> Self {
        let mut m = Self::zeros(order, n, n);
        for i in 0..n {
            m.set(i, i, CycNum::one(order));
        }
        m
    }

    pub fn from_rows(order: u64, rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        CycMatrix {
            rows: r,
            cols: c,
            order,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn get(&self, r: usize, c: usize) -> &CycNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = Self::zeros(self.order, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).try_add(&a.try_mul(b)?)?;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; row index of the result is (row of self)·other.rows + row of other.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.order, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u64) -> Result<Self, ExactError> {
        let mut acc = Self::identity(self.order, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> CycNum {
        (0..self.rows.min(self.cols)).fold(CycNum::zero(self.order), |acc, i| &acc + self.get(i, i))
    }

    pub fn rank(&self) -> usize {
        let mut red = RowReducer::new(self.order, self.cols);
        (0..self.rows)
            .filter(|&r| red.insert(self.row(r).to_vec()))
            .count()
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over Q(z{})]", self.rows, self.cols, self.order)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Row echelon basis grown one vector at a time; pivots are normalised to 1.
#[derive(Clone, Debug)]
pub struct RowReducer {
    order: u64,
    width: usize,
    basis: Vec<(usize, Vec<CycNum>)>,
}

impl RowReducer {
    pub fn new(order: u64, width: usize) -> Self {
        RowReducer {
            order,
            width,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `v` against the current basis.
    pub fn reduce(&self, mut v: Vec<CycNum>) -> Vec<CycNum> {
        assert_eq!(v.len(), self.width, "vector width mismatch");
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot].clone();
            for (j, x) in row.iter().enumerate().skip(*pivot) {
                if !x.is_zero() {
                    v[j] = &v[j] - &(&f * x);
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns true when it was independent.
    pub fn insert(&mut self, v: Vec<CycNum>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("nonzero pivot is invertible");
        let row: Vec<CycNum> = v.iter().map(|x| x * &inv).collect();
        // keep every stored row reduced at the new pivot so later reductions stay one pass
        for (_, other) in &mut self.basis {
            if !other[pivot].is_zero() {
                let f = other[pivot].clone();
                for (j, x) in row.iter().enumerate().skip(pivot) {
                    if !x.is_zero() {
                        other[j] = &other[j] - &(&f * x);
                    }
                }
            }
        }
        self.basis.push((pivot, row));
        self.basis.sort_by_key(|(p, _)| *p);
        true
    }

    pub fn contains(&self, v: Vec<CycNum>) -> bool {
        self.reduce(v).iter().all(CycNum::is_zero)
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}
