//! Small dense matrices over a [`FieldCtx`], enough linear algebra for
//! Hom-space and cocycle computations.

use crate::gf::{FieldCtx, FieldElem};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElem>,
}

impl FMat {
    pub fn zero(rows: usize, cols: usize) -> FMat {
        FMat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FMat {
        let mut m = FMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> FMat {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend_from_slice(row);
        }
        FMat { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &FMat, ctx: &FieldCtx) -> FMat {
        assert_eq!(self.cols, other.rows);
        let mut out = FMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ctx.mul(a, other.get(k, j));
                    out.set(i, j, ctx.add(out.get(i, j), t));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FMat, ctx: &FieldCtx) -> FMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = ctx.add(*a, b);
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem], ctx: &FieldCtx) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = ctx.add(acc, ctx.mul(self.get(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    /// Kronecker product.
    pub fn tensor(&self, other: &FMat, ctx: &FieldCtx) -> FMat {
        let mut out = FMat::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            ctx.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> FMat {
        let mut out = FMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn is_invertible(&self, ctx: &FieldCtx) -> bool {
        self.rows == self.cols && rank(self, ctx) == self.rows
    }
}

/// Row rank by Gaussian elimination.
pub fn rank(m: &FMat, ctx: &FieldCtx) -> usize {
    let mut a = m.clone();
    let mut r = 0usize;
    for col in 0..a.cols {
        if r >= a.rows {
            break;
        }
        let pivot = (r..a.rows).find(|&i| a.get(i, col) != 0);
        let Some(p) = pivot else { continue };
        for j in 0..a.cols {
            let t = a.get(r, j);
            a.set(r, j, a.get(p, j));
            a.set(p, j, t);
        }
        let inv = ctx.inv(a.get(r, col)).unwrap();
        for j in 0..a.cols {
            a.set(r, j, ctx.mul(a.get(r, j), inv));
        }
        for i in 0..a.rows {
            if i != r && a.get(i, col) != 0 {
                let f = a.get(i, col);
                for j in 0..a.cols {
                    let t = ctx.sub(a.get(i, j), ctx.mul(f, a.get(r, j)));
                    a.set(i, j, t);
                }
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right nullspace {x : m x = 0}.
pub fn nullspace(m: &FMat, ctx: &FieldCtx) -> Vec<Vec<FieldElem>> {
    let mut a = m.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..a.cols {
        if r >= a.rows {
            break;
        }
        let pivot = (r..a.rows).find(|&i| a.get(i, col) != 0);
        let Some(p) = pivot else { continue };
        for j in 0..a.cols {
            let t = a.get(r, j);
            a.set(r, j, a.get(p, j));
            a.set(p, j, t);
        }
        let inv = ctx.inv(a.get(r, col)).unwrap();
        for j in 0..a.cols {
            a.set(r, j, ctx.mul(a.get(r, j), inv));
        }
        for i in 0..a.rows {
            if i != r && a.get(i, col) != 0 {
                let f = a.get(i, col);
                for j in 0..a.cols {
                    let t = ctx.sub(a.get(i, j), ctx.mul(f, a.get(r, j)));
                    a.set(i, j, t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in 0..a.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut x = vec![0; a.cols];
        x[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = ctx.neg(a.get(row, free));
        }
        basis.push(x);
    }
    basis
}
