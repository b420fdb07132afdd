//! Brute-force generation of the small symplectic groups by breadth-first
//! closure from explicit generator sets, with conjugacy classes computed by
//! orbit closure under conjugation.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::bitmat::{is_symplectic, transvection2, BitMat};
use super::matf3::{transvection, Mat4F3};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    GSp4F3,
    Sp4F3,
    Sp4F2,
    Sp6F2,
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub rep: u32,
    pub size: u32,
    pub order: u32,
    /// ascending charpoly coefficients (length 5)
    pub charpoly: [u8; 5],
    /// similitude factor of the representative (1 or 2)
    pub nu: u8,
}

/// Full element list with conjugacy data for GSp4(F3) or Sp4(F3).
pub struct F3Table {
    pub kind: GroupKind,
    pub elems: Vec<Mat4F3>,
    pub index: HashMap<u32, u32>,
    pub class_of: Vec<u32>,
    pub classes: Vec<ClassInfo>,
    pub generators: Vec<Mat4F3>,
}

impl F3Table {
    pub fn index_of(&self, g: &Mat4F3) -> Option<u32> {
        self.index.get(&g.encode()).copied()
    }

    pub fn contains(&self, g: &Mat4F3) -> bool {
        self.index.contains_key(&g.encode())
    }

    pub fn class_of_elem(&self, g: &Mat4F3) -> Option<u32> {
        self.index_of(g).map(|i| self.class_of[i as usize])
    }
}

fn sp4f3_generator_vectors() -> Vec<[u8; 4]> {
    vec![
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [0, 1, 1, 0],
        [0, 0, 1, 1],
        [1, 0, 1, 0],
        [0, 1, 0, 1],
        [1, 0, 0, 1],
        [1, 1, 1, 1],
    ]
}

/// Generate GSp4(F3) или Sp4(F3): symplectic transvections, plus one
/// similitude-2 diagonal for the full group. Orders are certified after the
/// closure (103680 and 51840).
pub fn generate_f3(kind: GroupKind) -> Result<F3Table> {
    let mut gens: Vec<Mat4F3> = sp4f3_generator_vectors()
        .iter()
        .map(|v| transvection(v, 1))
        .collect();
    let expected = match kind {
        GroupKind::Sp4F3 => 51840,
        GroupKind::GSp4F3 => {
            gens.push(Mat4F3([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]]));
            103680
        }
        _ => return Err(Error::parameter("generate_f3 builds the F3 groups")),
    };
    for g in &gens {
        if g.similitude().is_none() {
            return Err(Error::diagnostic(
                "generator does not preserve J up to similitude",
            ));
        }
    }

    let mut elems: Vec<Mat4F3> = vec![Mat4F3::IDENTITY];
    let mut index: HashMap<u32, u32> = HashMap::with_capacity(expected);
    index.insert(Mat4F3::IDENTITY.encode(), 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head];
        head += 1;
        for g in &gens {
            let next = cur.mul(g);
            let code = next.encode();
            if !index.contains_key(&code) {
                index.insert(code, elems.len() as u32);
                elems.push(next);
            }
        }
    }
    if elems.len() != expected {
        return Err(Error::diagnostic(format!(
            "group closure has order {} (expected {expected})",
            elems.len()
        )));
    }

    // conjugacy classes by orbit closure under conjugation by generators
    let gen_pairs: Vec<(Mat4F3, Mat4F3)> = gens
        .iter()
        .map(|g| (*g, g.inverse().expect("invertible")))
        .collect();
    let mut class_of = vec![u32::MAX; elems.len()];
    let mut classes: Vec<ClassInfo> = Vec::new();
    for start in 0..elems.len() {
        if class_of[start] != u32::MAX {
            continue;
        }
        let cid = classes.len() as u32;
        let mut orbit = vec![start as u32];
        class_of[start] = cid;
        let mut head = 0usize;
        while head < orbit.len() {
            let x = elems[orbit[head] as usize];
            head += 1;
            for (g, ginv) in &gen_pairs {
                let y = g.mul(&x).mul(ginv);
                let yi = index[&y.encode()];
                if class_of[yi as usize] == u32::MAX {
                    class_of[yi as usize] = cid;
                    orbit.push(yi);
                }
            }
        }
        let rep = elems[start];
        classes.push(ClassInfo {
            rep: start as u32,
            size: orbit.len() as u32,
            order: rep.order(),
            charpoly: rep.charpoly(),
            nu: rep.similitude().expect("closed under similitude"),
        });
    }
    debug_assert_eq!(
        classes.iter().map(|c| c.size as usize).sum::<usize>(),
        elems.len()
    );

    Ok(F3Table {
        kind,
        elems,
        index,
        class_of,
        classes,
        generators: gens,
    })
}

/// Full element list of Sp4(F2) or Sp6(F2).
pub struct F2Table {
    pub kind: GroupKind,
    pub n: u8,
    pub elems: Vec<BitMat>,
    pub index: HashMap<u64, u32>,
}

impl F2Table {
    pub fn contains(&self, g: &BitMat) -> bool {
        self.index.contains_key(&g.encode())
    }
}

pub fn generate_f2(kind: GroupKind) -> Result<F2Table> {
    let (half_n, expected): (u8, usize) = match kind {
        GroupKind::Sp4F2 => (2, 720),
        GroupKind::Sp6F2 => (3, 1_451_520),
        _ => return Err(Error::parameter("generate_f2 builds the F2 groups")),
    };
    let dim = 2 * half_n;
    // transvections over all nonzero vectors generate the group; the first
    // 2*dim suffice for Sp4 but Sp6 needs the full set
    let cap = match kind {
        GroupKind::Sp4F2 => 2 * dim as usize,
        _ => (1usize << dim) - 1,
    };
    let mut gens: Vec<BitMat> = Vec::new();
    for v in 1u8..(1 << dim) {
        gens.push(transvection2(half_n, v));
        if gens.len() >= cap {
            break;
        }
    }
    for g in &gens {
        if !is_symplectic(g) {
            return Err(Error::diagnostic("non-symplectic generator"));
        }
    }
    let id = BitMat::identity(dim);
    let mut elems = vec![id];
    let mut index: HashMap<u64, u32> = HashMap::with_capacity(expected);
    index.insert(id.encode(), 0);
    let mut head = 0usize;
    while head < elems.len() {
        let cur = elems[head];
        head += 1;
        for g in &gens {
            let next = cur.mul(g);
            let code = next.encode();
            if !index.contains_key(&code) {
                index.insert(code, elems.len() as u32);
                elems.push(next);
            }
        }
    }
    if elems.len() != expected {
        return Err(Error::diagnostic(format!(
            "Sp{dim}(F2) closure has order {} (expected {expected})",
            elems.len()
        )));
    }
    Ok(F2Table {
        kind,
        n: dim,
        elems,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::super::bitmat::j2n;
    use super::*;

    #[test]
    fn sp4f2_order_720() {
        let t = generate_f2(GroupKind::Sp4F2).unwrap();
        assert_eq!(t.elems.len(), 720);
        let j = j2n(2);
        assert!(t.elems.iter().all(|g| g.transpose().mul(&j).mul(g) == j));
    }

    #[test]
    fn sp4f3_order() {
        let t = generate_f3(GroupKind::Sp4F3).unwrap();
        assert_eq!(t.elems.len(), 51840);
        assert!(t.classes.iter().all(|c| c.nu == 1));
    }

    #[test]
    fn gsp4f3_order_and_split() {
        let t = generate_f3(GroupKind::GSp4F3).unwrap();
        assert_eq!(t.elems.len(), 103680);
        let outer: usize = t
            .classes
            .iter()
            .filter(|c| c.nu == 2)
            .map(|c| c.size as usize)
            .sum();
        assert_eq!(outer, 51840);
        // class sizes divide the group order
        for c in &t.classes {
            assert_eq!(103680 % c.size, 0);
        }
    }
}
