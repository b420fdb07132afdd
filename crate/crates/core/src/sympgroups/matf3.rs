//! Dense 4x4 matrices over F3 with the symplectic form bookkeeping used by
//! the group-table builders.

/// Entries in 0..3, row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat4F3(pub [[u8; 4]; 4]);

/// The fixed symplectic form: antidiagonal blocks, J = [[0, S], [-S, 0]]
/// with S the 2x2 antidiagonal identity.
pub const J4: Mat4F3 = Mat4F3([[0, 0, 0, 1], [0, 0, 1, 0], [0, 2, 0, 0], [2, 0, 0, 0]]);

pub const fn f3_neg(a: u8) -> u8 {
    (3 - a) % 3
}

impl Mat4F3 {
    pub const IDENTITY: Mat4F3 = Mat4F3([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);

    pub fn mul(&self, other: &Mat4F3) -> Mat4F3 {
        let mut out = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = 0u16;
                for k in 0..4 {
                    acc += (self.0[i][k] * other.0[k][j]) as u16;
                }
                out[i][j] = (acc % 3) as u8;
            }
        }
        Mat4F3(out)
    }

    pub fn transpose(&self) -> Mat4F3 {
        let mut out = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = self.0[j][i];
            }
        }
        Mat4F3(out)
    }

    pub fn neg(&self) -> Mat4F3 {
        let mut out = self.0;
        for row in out.iter_mut() {
            for e in row.iter_mut() {
                *e = f3_neg(*e);
            }
        }
        Mat4F3(out)
    }

    pub fn add(&self, other: &Mat4F3) -> Mat4F3 {
        let mut out = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (self.0[i][j] + other.0[i][j]) % 3;
            }
        }
        Mat4F3(out)
    }

    pub fn scale(&self, c: u8) -> Mat4F3 {
        let mut out = [[0u8; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (self.0[i][j] * c) % 3;
            }
        }
        Mat4F3(out)
    }

    pub fn mul_vec(&self, v: &[u8; 4]) -> [u8; 4] {
        let mut out = [0u8; 4];
        for i in 0..4 {
            let mut acc = 0u16;
            for k in 0..4 {
                acc += (self.0[i][k] * v[k]) as u16;
            }
            out[i] = (acc % 3) as u8;
        }
        out
    }

    /// Pack into 32 bits, 2 bits per entry, row-major.
    pub fn encode(&self) -> u32 {
        let mut x = 0u32;
        for i in 0..4 {
            for j in 0..4 {
                x |= (self.0[i][j] as u32) << (2 * (4 * i + j));
            }
        }
        x
    }

    pub fn decode(x: u32) -> Mat4F3 {
        let mut out = [[0u8; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = ((x >> (2 * (4 * i + j))) & 3) as u8;
            }
        }
        Mat4F3(out)
    }

    pub fn pow(&self, e: u32) -> Mat4F3 {
        let mut acc = Mat4F3::IDENTITY;
        let mut base = *self;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order (panics past 1000; group elements are small).
    pub fn order(&self) -> u32 {
        let mut cur = *self;
        for k in 1..=1000 {
            if cur == Mat4F3::IDENTITY {
                return k;
            }
            cur = cur.mul(self);
        }
        panic!("order not found");
    }

    /// Least k with self^k scalar (+-I); the order of the image in the
    /// projective group.
    pub fn projective_order(&self) -> u32 {
        let mut cur = *self;
        for k in 1..=1000 {
            if cur == Mat4F3::IDENTITY || cur == Mat4F3::IDENTITY.neg() {
                return k;
            }
            cur = cur.mul(self);
        }
        panic!("projective order not found");
    }

    /// Similitude factor nu with g^T J g = nu J, if any.
    pub fn similitude(&self) -> Option<u8> {
        let gjg = self.transpose().mul(&J4).mul(self);
        for nu in [1u8, 2] {
            if gjg == J4.scale(nu) {
                return Some(nu);
            }
        }
        None
    }

    /// Characteristic polynomial det(xI - A), ascending coefficients c0..c4.
    pub fn charpoly(&self) -> [u8; 5] {
        // permutation expansion of the 4x4 determinant with linear entries
        const PERMS: [([usize; 4], bool); 24] = perms4();
        let mut out = [0i32; 5];
        for (perm, even) in PERMS {
            // product over i of (x * delta(i, perm[i]) - a[i][perm[i]])
            let mut prod = [0i32; 5];
            prod[0] = 1;
            let mut deg = 0usize;
            for (i, &pi) in perm.iter().enumerate() {
                let c1 = if i == pi { 1i32 } else { 0 };
                let c0 = -(self.0[i][pi] as i32);
                let mut next = [0i32; 5];
                for d in 0..=deg {
                    next[d] += prod[d] * c0;
                    next[d + 1] += prod[d] * c1;
                }
                prod = next;
                deg += 1;
            }
            let sign = if even { 1 } else { -1 };
            for d in 0..5 {
                out[d] += sign * prod[d];
            }
        }
        let mut res = [0u8; 5];
        for (d, r) in res.iter_mut().enumerate() {
            *r = (out[d].rem_euclid(3)) as u8;
        }
        debug_assert_eq!(res[4], 1);
        res
    }

    /// dim ker(self - I).
    pub fn fixed_space_dim(&self) -> u32 {
        let mut m = self.0;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = (row[i] + 2) % 3; // subtract identity
        }
        4 - rank4(&m)
    }

    pub fn inverse(&self) -> Option<Mat4F3> {
        // Gauss-Jordan on [A | I]
        let mut a = self.0;
        let mut inv = Mat4F3::IDENTITY.0;
        for col in 0..4 {
            let pivot = (col..4).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pinv = if a[col][col] == 1 { 1 } else { 2 };
            for j in 0..4 {
                a[col][j] = (a[col][j] * pinv) % 3;
                inv[col][j] = (inv[col][j] * pinv) % 3;
            }
            for r in 0..4 {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for j in 0..4 {
                        a[r][j] = (a[r][j] + 3 - (factor * a[col][j]) % 3) % 3;
                        inv[r][j] = (inv[r][j] + 3 - (factor * inv[col][j]) % 3) % 3;
                    }
                }
            }
        }
        Some(Mat4F3(inv))
    }
}

const fn perms4() -> [([usize; 4], bool); 24] {
    // all permutations of {0,1,2,3} with parity, generated at compile time
    let mut out = [([0usize; 4], false); 24];
    let mut idx = 0;
    let mut i0 = 0;
    while i0 < 4 {
        let mut i1 = 0;
        while i1 < 4 {
            let mut i2 = 0;
            while i2 < 4 {
                let mut i3 = 0;
                while i3 < 4 {
                    if i0 != i1 && i0 != i2 && i0 != i3 && i1 != i2 && i1 != i3 && i2 != i3 {
                        let p = [i0, i1, i2, i3];
                        // parity by counting inversions
                        let mut inv = 0;
                        let mut a = 0;
                        while a < 4 {
                            let mut b = a + 1;
                            while b < 4 {
                                if p[a] > p[b] {
                                    inv += 1;
                                }
                                b += 1;
                            }
                            a += 1;
                        }
                        out[idx] = (p, inv % 2 == 0);
                        idx += 1;
                    }
                    i3 += 1;
                }
                i2 += 1;
            }
            i1 += 1;
        }
        i0 += 1;
    }
    out
}

/// Row rank of a 4x4 matrix over F3.
pub fn rank4(m: &[[u8; 4]; 4]) -> u32 {
    let mut a = *m;
    let mut rank = 0usize;
    for col in 0..4 {
        if let Some(pivot) = (rank..4).find(|&r| a[r][col] != 0) {
            a.swap(rank, pivot);
            let pinv = if a[rank][col] == 1 { 1 } else { 2 };
            for j in 0..4 {
                a[rank][j] = (a[rank][j] * pinv) % 3;
            }
            for r in 0..4 {
                if r != rank && a[r][col] != 0 {
                    let factor = a[r][col];
                    for j in 0..4 {
                        a[r][j] = (a[r][j] + 3 - (factor * a[rank][j]) % 3) % 3;
                    }
                }
            }
            rank += 1;
        }
    }
    rank as u32
}

/// Symplectic transvection x -> x + lambda <x, v> v with <x, v> = x^T J v.
pub fn transvection(v: &[u8; 4], lambda: u8) -> Mat4F3 {
    // matrix I + lambda * v * (J v)^T ... <x,v> = x^T J v = (J^T v)^T x;
    // T x = x + lambda (w^T x) v with w = J^T v
    let jt = J4.transpose();
    let w = jt.mul_vec(v);
    let mut out = Mat4F3::IDENTITY.0;
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (out[i][j] + lambda * v[i] % 3 * w[j]) % 3;
        }
    }
    Mat4F3(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvections_are_symplectic() {
        for v in [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 1], [2, 1, 1, 1]] {
            for lambda in [1, 2] {
                let t = transvection(&v, lambda);
                assert_eq!(t.similitude(), Some(1), "v={v:?} lambda={lambda}");
            }
        }
    }

    #[test]
    fn similitude_of_diagonal() {
        let d = Mat4F3([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]);
        assert_eq!(d.similitude(), Some(2)); // nu = -1
    }

    #[test]
    fn charpoly_of_identity() {
        // (x-1)^4 = x^4 - 4x^3 + 6x^2 - 4x + 1 = x^4+2x^3+2x+1 mod 3
        assert_eq!(Mat4F3::IDENTITY.charpoly(), [1, 2, 0, 2, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let t = transvection(&[1, 2, 0, 1], 1);
        let ti = t.inverse().unwrap();
        assert_eq!(t.mul(&ti), Mat4F3::IDENTITY);
    }

    #[test]
    fn encode_decode() {
        let t = transvection(&[1, 2, 1, 1], 2);
        assert_eq!(Mat4F3::decode(t.encode()), t);
    }
}
