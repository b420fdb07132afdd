//! Matrix-group predicates over F3: absolute irreducibility (Burnside span)
//! and regular semisimple witnesses, split by the similitude being a square.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::atlas::charpoly_is_squarefree_f3;
use super::matf3::Mat4F3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupPredicates {
    pub absolutely_irreducible: bool,
    pub has_reg_ss: bool,
    pub has_reg_ss_outside_sp4: bool,
}

/// Close the generators, then test: (1) the F3-span of the group is the full
/// 4x4 matrix algebra; (2) a regular semisimple element with square
/// similitude exists; (3) one with non-square similitude exists.
pub fn matrix_group_predicates(gens: &[Mat4F3]) -> Result<GroupPredicates> {
    if gens.is_empty() {
        return Err(Error::parameter("empty generator list"));
    }
    for g in gens {
        if g.similitude().is_none() {
            return Err(Error::parameter("generator not in GSp4(F3)"));
        }
    }
    // subgroup closure
    let mut elems: Vec<Mat4F3> = vec![Mat4F3::IDENTITY];
    let mut index: HashMap<u32, ()> = HashMap::new();
    index.insert(Mat4F3::IDENTITY.encode(), ());
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head];
        head += 1;
        for g in gens {
            let next = cur.mul(g);
            if index.insert(next.encode(), ()).is_none() {
                elems.push(next);
            }
        }
        if elems.len() > 103_680 {
            return Err(Error::diagnostic("closure exceeded |GSp4(F3)|"));
        }
    }

    // Burnside: span of the group elements inside M_4(F3)
    let mut basis: Vec<[u8; 16]> = Vec::new();
    for e in &elems {
        let mut v = [0u8; 16];
        for i in 0..4 {
            for j in 0..4 {
                v[4 * i + j] = e.0[i][j];
            }
        }
        reduce_into_basis(&mut basis, v);
        if basis.len() == 16 {
            break;
        }
    }
    let absolutely_irreducible = basis.len() == 16;

    let mut has_reg_ss = false;
    let mut has_outside = false;
    for e in &elems {
        if has_reg_ss && has_outside {
            break;
        }
        if !charpoly_is_squarefree_f3(&e.charpoly()) {
            continue;
        }
        match e.similitude() {
            Some(1) => has_reg_ss = true,
            Some(2) => has_outside = true,
            _ => {}
        }
    }
    Ok(GroupPredicates {
        absolutely_irreducible,
        has_reg_ss,
        has_reg_ss_outside_sp4: has_outside,
    })
}

fn reduce_into_basis(basis: &mut Vec<[u8; 16]>, mut v: [u8; 16]) {
    for b in basis.iter() {
        let pivot = b.iter().position(|&c| c != 0).unwrap();
        if v[pivot] != 0 {
            // v -= v[pivot]/b[pivot] * b
            let factor = (v[pivot] * inv3(b[pivot])) % 3;
            for i in 0..16 {
                v[i] = (v[i] + 3 - (factor * b[i]) % 3) % 3;
            }
        }
    }
    if v.iter().any(|&c| c != 0) {
        // normalize pivot to 1
        let pivot = v.iter().position(|&c| c != 0).unwrap();
        let factor = inv3(v[pivot]);
        for c in v.iter_mut() {
            *c = (*c * factor) % 3;
        }
        basis.push(v);
        basis.sort_by_key(|b| b.iter().position(|&c| c != 0));
    }
}

fn inv3(a: u8) -> u8 {
    debug_assert!(a == 1 || a == 2);
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sympgroups::matf3::transvection;

    #[test]
    fn upper_triangular_generators_are_reducible() {
        // transvections along e1 fix the line spanned by e1
        let g = transvection(&[1, 0, 0, 0], 1);
        let p = matrix_group_predicates(&[g]).unwrap();
        assert!(!p.absolutely_irreducible);
    }

    #[test]
    fn rejects_non_symplectic() {
        let bad = Mat4F3([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        assert!(bad.similitude().is_none());
        assert!(matrix_group_predicates(&[bad]).is_err());
    }
}
