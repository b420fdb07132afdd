//! Alternating forms over F3: the space of forms inverted by a similitude
//! (g^T M g = -M), nondegenerate representatives, and the change of basis
//! taking a nondegenerate alternating form to the standard J.

use crate::error::{Error, Result};

use super::matf3::{f3_neg, rank4, Mat4F3, J4};

/// Basis (as matrices) of the solution space { M : M^T = -M, g^T M g = -M }.
pub fn invariant_form_space(g: &Mat4F3) -> Vec<Mat4F3> {
    // unknowns x_{ij} for i < j; M = sum x_{ij} (E_ij - E_ji)
    let pairs: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    // rows: 16 equations from g^T M g + M = 0
    let mut rows: Vec<[u8; 6]> = Vec::new();
    let gt = g.transpose();
    for r in 0..4 {
        for c in 0..4 {
            let mut row = [0u8; 6];
            for (u, &(i, j)) in pairs.iter().enumerate() {
                // contribution of basis form B = E_ij - E_ji to (g^T B g + B)[r][c]
                let gbg = (gt.0[r][i] * g.0[j][c]) % 3;
                let gbg2 = (gt.0[r][j] * g.0[i][c]) % 3;
                let b = if r == i && c == j {
                    1
                } else if r == j && c == i {
                    2
                } else {
                    0
                };
                row[u] = (gbg + (3 - gbg2) + b) % 3;
            }
            rows.push(row);
        }
    }
    // nullspace of the 16x6 system over F3
    let mut mat = rows;
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..6 {
        if let Some(p) = (rank..mat.len()).find(|&r| mat[r][col] != 0) {
            mat.swap(rank, p);
            let pinv = mat[rank][col]; // self-inverse in F3
            for x in mat[rank].iter_mut() {
                *x = (*x * pinv) % 3;
            }
            for r in 0..mat.len() {
                if r != rank && mat[r][col] != 0 {
                    let f = mat[r][col];
                    for cc in 0..6 {
                        mat[r][cc] = (mat[r][cc] + 3 - (f * mat[rank][cc]) % 3) % 3;
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
    }
    let mut basis = Vec::new();
    for free_col in 0..6 {
        if pivot_cols.contains(&free_col) {
            continue;
        }
        let mut x = [0u8; 6];
        x[free_col] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = (3 - (mat[r][free_col])) % 3;
        }
        let mut m = [[0u8; 4]; 4];
        for (u, &(i, j)) in pairs.iter().enumerate() {
            m[i][j] = x[u];
            m[j][i] = f3_neg(x[u]);
        }
        basis.push(Mat4F3(m));
    }
    basis
}

/// All nondegenerate members of the span of `basis`, one per scalar class
/// (first nonzero coordinate normalized to 1).
pub fn nondegenerate_members(basis: &[Mat4F3]) -> Vec<Mat4F3> {
    let d = basis.len();
    let mut out = Vec::new();
    let total = 3usize.pow(d as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut rem = code;
        for _ in 0..d {
            coeffs.push((rem % 3) as u8);
            rem /= 3;
        }
        // scalar normalization: first nonzero coefficient is 1
        match coeffs.iter().find(|&&c| c != 0) {
            Some(1) => {}
            _ => continue,
        }
        let mut m = Mat4F3([[0; 4]; 4]);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                m = m.add(&b.scale(*c));
            }
        }
        if rank4(&m.0) == 4 {
            out.push(m);
        }
    }
    out
}

/// Change of basis P with P^T M P = J, for nondegenerate alternating M.
pub fn symplectic_basis(m: &Mat4F3) -> Result<Mat4F3> {
    // checks
    if m.transpose() != m.neg() || (0..4).any(|i| m.0[i][i] != 0) {
        return Err(Error::parameter("form is not alternating"));
    }
    if rank4(&m.0) != 4 {
        return Err(Error::parameter("form is degenerate"));
    }
    let pair = |m: &Mat4F3, a: &[u8; 4], b: &[u8; 4]| -> u8 {
        let mut acc = 0u16;
        for i in 0..4 {
            for j in 0..4 {
                acc += (a[i] * m.0[i][j] % 3 * b[j]) as u16;
            }
        }
        (acc % 3) as u8
    };
    let all_vectors = || {
        (1u32..81).map(|code| {
            [
                (code % 3) as u8,
                (code / 3 % 3) as u8,
                (code / 9 % 3) as u8,
                (code / 27 % 3) as u8,
            ]
        })
    };
    // first hyperbolic pair
    let v1 = all_vectors()
        .find(|v| all_vectors().any(|w| pair(m, v, &w) != 0))
        .ok_or_else(|| Error::diagnostic("zero form"))?;
    let mut w1 = all_vectors().find(|w| pair(m, &v1, w) != 0).unwrap();
    if pair(m, &v1, &w1) == 2 {
        w1 = [f3_neg(w1[0]), f3_neg(w1[1]), f3_neg(w1[2]), f3_neg(w1[3])];
    }
    // orthogonal complement of span(v1, w1): 2-dimensional
    let mut comp: Vec<[u8; 4]> = Vec::new();
    for z in all_vectors() {
        if pair(m, &v1, &z) == 0 && pair(m, &w1, &z) == 0 {
            // keep only vectors independent of current comp
            let mut rows = comp.clone();
            rows.push(z);
            if rank_of(&rows) as usize == rows.len() {
                comp.push(z);
            }
        }
        if comp.len() == 2 {
            break;
        }
    }
    if comp.len() != 2 {
        return Err(Error::diagnostic("complement not 2-dimensional"));
    }
    let v2 = comp[0];
    let mut w2 = comp[1];
    let p22 = pair(m, &v2, &w2);
    if p22 == 0 {
        return Err(Error::diagnostic("degenerate restriction"));
    }
    if p22 == 2 {
        w2 = [f3_neg(w2[0]), f3_neg(w2[1]), f3_neg(w2[2]), f3_neg(w2[3])];
    }
    // columns (v1, v2, w2, w1) give P^T M P = J
    let mut p = [[0u8; 4]; 4];
    for i in 0..4 {
        p[i][0] = v1[i];
        p[i][1] = v2[i];
        p[i][2] = w2[i];
        p[i][3] = w1[i];
    }
    let pm = Mat4F3(p);
    debug_assert_eq!(pm.transpose().mul(m).mul(&pm), J4);
    Ok(pm)
}

fn rank_of(rows: &[[u8; 4]]) -> u32 {
    let mut m = [[0u8; 4]; 4];
    for (i, r) in rows.iter().take(4).enumerate() {
        m[i] = *r;
    }
    rank4(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symplectic_basis_of_j_is_identity_conjugate() {
        let p = symplectic_basis(&J4).unwrap();
        assert_eq!(p.transpose().mul(&J4).mul(&p), J4);
    }

    #[test]
    fn scaled_j_has_basis() {
        let m = J4.scale(2);
        let p = symplectic_basis(&m).unwrap();
        assert_eq!(p.transpose().mul(&m).mul(&p), J4);
    }

    #[test]
    fn random_alternating_forms() {
        // exhaustive over a deterministic pseudo-random sample of alternating
        // nondegenerate forms
        let mut seed = 1u64;
        let mut tested = 0;
        while tested < 100 {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let mut m = [[0u8; 4]; 4];
            let mut s = seed;
            for i in 0..4 {
                for j in (i + 1)..4 {
                    let c = (s % 3) as u8;
                    s /= 3;
                    m[i][j] = c;
                    m[j][i] = f3_neg(c);
                }
            }
            let mat = Mat4F3(m);
            if rank4(&m) != 4 {
                continue;
            }
            let p = symplectic_basis(&mat).unwrap();
            assert_eq!(p.transpose().mul(&mat).mul(&p), J4);
            tested += 1;
        }
    }

    #[test]
    fn degenerate_is_rejected() {
        let m = Mat4F3([[0, 1, 0, 0], [2, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]);
        assert!(symplectic_basis(&m).is_err());
    }
}
