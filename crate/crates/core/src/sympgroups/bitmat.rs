//! Square matrices over F2, up to 8x8, one row per byte.

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BitMat {
    pub n: u8,
    /// rows[i] bit j = entry (i, j)
    pub rows: [u8; 8],
}

impl BitMat {
    pub fn zero(n: u8) -> BitMat {
        BitMat { n, rows: [0; 8] }
    }

    pub fn identity(n: u8) -> BitMat {
        let mut m = BitMat::zero(n);
        for i in 0..n as usize {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(rows: &[&[u8]]) -> BitMat {
        let n = rows.len() as u8;
        let mut m = BitMat::zero(n);
        for (i, r) in rows.iter().enumerate() {
            for (j, &e) in r.iter().enumerate() {
                if e & 1 == 1 {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        (self.rows[i] >> j) & 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        if v & 1 == 1 {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn mul(&self, other: &BitMat) -> BitMat {
        let mut out = BitMat::zero(self.n);
        for i in 0..self.n as usize {
            let mut row = 0u8;
            let mut bits = self.rows[i];
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                row ^= other.rows[k];
                bits &= bits - 1;
            }
            out.rows[i] = row;
        }
        out
    }

    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::zero(self.n);
        for i in 0..self.n as usize {
            for j in 0..self.n as usize {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &BitMat) -> BitMat {
        let mut out = *self;
        for i in 0..self.n as usize {
            out.rows[i] ^= other.rows[i];
        }
        out
    }

    pub fn mul_vec(&self, v: u8) -> u8 {
        let mut out = 0u8;
        for i in 0..self.n as usize {
            if (self.rows[i] & v).count_ones() % 2 == 1 {
                out |= 1 << i;
            }
        }
        out
    }

    pub fn encode(&self) -> u64 {
        let mut x = 0u64;
        for i in 0..self.n as usize {
            x |= (self.rows[i] as u64) << (8 * i);
        }
        x
    }

    pub fn decode(n: u8, x: u64) -> BitMat {
        let mut m = BitMat::zero(n);
        for i in 0..n as usize {
            m.rows[i] = ((x >> (8 * i)) & 0xff) as u8;
        }
        m
    }


    /// Inverse via the element order (finite group elements only).
    pub fn pow_order_inverse(&self) -> BitMat {
        let ord = self.order();
        let mut out = BitMat::identity(self.n);
        for _ in 0..ord - 1 {
            out = out.mul(self);
        }
        out
    }

    pub fn order(&self) -> u32 {
        let id = BitMat::identity(self.n);
        let mut cur = *self;
        for k in 1..=10_000 {
            if cur == id {
                return k;
            }
            cur = cur.mul(self);
        }
        panic!("order not found");
    }

    pub fn rank(&self) -> u32 {
        let mut rows: Vec<u8> = self.rows[..self.n as usize].to_vec();
        let mut rank = 0;
        for col in 0..self.n {
            if let Some(p) = (rank..self.n as usize).find(|&r| (rows[r] >> col) & 1 == 1) {
                rows.swap(rank as usize, p);
                for r in 0..self.n as usize {
                    if r != rank as usize && (rows[r] >> col) & 1 == 1 {
                        rows[r] ^= rows[rank as usize];
                    }
                }
                rank += 1;
            }
        }
        rank as u32
    }

    pub fn is_involution(&self) -> bool {
        *self != BitMat::identity(self.n) && self.mul(self) == BitMat::identity(self.n)
    }

    /// Any nonzero diagonal entry?
    pub fn has_nonzero_diagonal(&self) -> bool {
        (0..self.n as usize).any(|i| self.get(i, i) == 1)
    }

    pub fn charpoly(&self) -> Vec<u8> {
        // det(xI - A) over F2 by expansion over permutations is fine for n <= 6
        let n = self.n as usize;
        let mut out = vec![0i32; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        permute_det(&mut perm, 0, self, &mut out);
        out.iter().map(|&c| (c.rem_euclid(2)) as u8).collect()
    }
}

fn permute_det(perm: &mut Vec<usize>, k: usize, m: &BitMat, out: &mut [i32]) {
    let n = perm.len();
    if k == n {
        // product of (x delta - a) over F2: signs are irrelevant mod 2
        let mut prod = vec![0i32; n + 1];
        prod[0] = 1;
        let mut deg = 0;
        for (i, &pi) in perm.iter().enumerate() {
            let c1 = if i == pi { 1 } else { 0 };
            let c0 = m.get(i, pi) as i32;
            let mut next = vec![0i32; n + 1];
            for d in 0..=deg {
                next[d] += prod[d] * c0;
                if d + 1 <= n {
                    next[d + 1] += prod[d] * c1;
                }
            }
            prod = next;
            deg += 1;
        }
        for d in 0..=n {
            out[d] += prod[d];
        }
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute_det(perm, k + 1, m, out);
        perm.swap(k, i);
    }
}

/// The symplectic form on F2^(2n): antidiagonal ones.
pub fn j2n(n: u8) -> BitMat {
    let dim = 2 * n;
    let mut m = BitMat::zero(dim);
    for i in 0..dim as usize {
        m.set(i, dim as usize - 1 - i, 1);
    }
    m
}

/// Is g symplectic with respect to j2n?
pub fn is_symplectic(g: &BitMat) -> bool {
    let j = j2n(g.n / 2);
    g.transpose().mul(&j).mul(g) == j
}

/// Symplectic transvection over F2: x -> x + <x, v> v.
pub fn transvection2(n: u8, v: u8) -> BitMat {
    let j = j2n(n);
    let dim = 2 * n;
    let w = j.transpose().mul_vec(v);
    let mut out = BitMat::identity(dim);
    for i in 0..dim as usize {
        if (v >> i) & 1 == 1 {
            out.rows[i] ^= w;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvections_symplectic() {
        for v in 1u8..16 {
            let t = transvection2(2, v);
            assert!(is_symplectic(&t));
            assert_eq!(t.mul(&t), BitMat::identity(4));
        }
    }

    #[test]
    fn rank_and_involution() {
        let id = BitMat::identity(4);
        assert_eq!(id.rank(), 4);
        assert!(!id.is_involution());
        let t = transvection2(2, 0b0001);
        assert!(t.is_involution());
        assert_eq!(t.add(&id).rank(), 1);
    }

    #[test]
    fn charpoly_identity() {
        // (x+1)^4 = x^4 + 4x^3 + ... mod 2 = x^4 + 1... careful: (x+1)^4 = x^4+1 mod 2? No:
        // (x+1)^2 = x^2+1, (x^2+1)^2 = x^4+1 mod 2. Wait: (x+1)^2 = x^2+2x+1 = x^2+1 mod 2. Yes.
        assert_eq!(BitMat::identity(4).charpoly(), vec![1, 0, 0, 0, 1]);
    }
}
