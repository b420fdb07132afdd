//! The permutation dictionary S6 = GSp4(F2), built from the intersection
//! pairing #({i,j} n {k,l}) mod 2 on differences of the six ramification
//! points, in the basis e1 = r1-r2, e2 = r3-r4, e3 = r3-r5, e4 = r1-r6.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::bitmat::{j2n, BitMat};
use super::table::F2Table;

/// Permutation of {0..5}; entry i is the image of i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Perm6(pub [u8; 6]);

impl Perm6 {
    pub const IDENTITY: Perm6 = Perm6([0, 1, 2, 3, 4, 5]);

    /// Build from disjoint cycles in 1-based notation, e.g. &[&[1,2],&[3,4]].
    pub fn from_cycles(cycles: &[&[u8]]) -> Perm6 {
        let mut p = Perm6::IDENTITY.0;
        for cyc in cycles {
            for w in 0..cyc.len() {
                let a = (cyc[w] - 1) as usize;
                let b = (cyc[(w + 1) % cyc.len()] - 1) as usize;
                p[a] = b as u8;
            }
        }
        Perm6(p)
    }

    /// self after other (apply `other` first).
    pub fn compose(&self, other: &Perm6) -> Perm6 {
        let mut out = [0u8; 6];
        for i in 0..6 {
            out[i] = self.0[other.0[i] as usize];
        }
        Perm6(out)
    }

    pub fn inverse(&self) -> Perm6 {
        let mut out = [0u8; 6];
        for i in 0..6 {
            out[self.0[i] as usize] = i as u8;
        }
        Perm6(out)
    }

    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = [false; 6];
        let mut out = Vec::new();
        for start in 0..6 {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                len += 1;
                cur = self.0[cur] as usize;
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_type().iter().map(|&c| c - 1).sum::<u32>() % 2 == 0
    }

    pub fn order(&self) -> u32 {
        self.cycle_type()
            .iter()
            .fold(1u64, |acc, &c| num_integer::lcm(acc, c as u64)) as u32
    }
}

/// All 720 permutations, in a fixed deterministic order.
pub fn s6_elements() -> Vec<Perm6> {
    let mut out = Vec::with_capacity(720);
    let mut items: Vec<u8> = (0..6).collect();
    heap_permute(&mut items, 6, &mut out);
    out.sort_by_key(|p| p.0);
    out
}

fn heap_permute(items: &mut Vec<u8>, k: usize, out: &mut Vec<Perm6>) {
    if k == 1 {
        let mut arr = [0u8; 6];
        arr.copy_from_slice(items);
        out.push(Perm6(arr));
        return;
    }
    for i in 0..k {
        heap_permute(items, k - 1, out);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

/// The point stabilizer S5(b) (fixing the last point), 120 elements.
pub fn s5b_elements() -> Vec<Perm6> {
    s6_elements().into_iter().filter(|p| p.0[5] == 5).collect()
}

/// The even part A5(b) of the point stabilizer, 60 elements.
pub fn a5b_elements() -> Vec<Perm6> {
    s5b_elements().into_iter().filter(|p| p.is_even()).collect()
}

pub fn perm_cycle_type(p: &Perm6) -> Vec<u32> {
    p.cycle_type()
}

/// The matrix of a permutation acting on U^0/L in the fixed basis.
pub fn perm_to_gsp4(p: &Perm6) -> BitMat {
    // basis vectors as 6-bit index sets
    const E: [u8; 4] = [0b000011, 0b001100, 0b010100, 0b100001];
    let mut m = BitMat::zero(4);
    for (j, &e) in E.iter().enumerate() {
        // image of the index set under the permutation
        let mut img = 0u8;
        for i in 0..6 {
            if (e >> i) & 1 == 1 {
                img |= 1 << p.0[i];
            }
        }
        let coords = quotient_coords(img);
        for i in 0..4 {
            m.set(i, j, (coords >> i) & 1);
        }
    }
    m
}

/// Coordinates of a trace-zero vector modulo the all-ones line, in the basis
/// above: w = (a+d, a, b+c, b, c, d) for coords (a, b, c, d).
fn quotient_coords(w: u8) -> u8 {
    debug_assert_eq!((w & 0b111111).count_ones() % 2, 0, "trace zero");
    for cand in [w, w ^ 0b111111] {
        let a = (cand >> 1) & 1;
        let b = (cand >> 3) & 1;
        let c = (cand >> 4) & 1;
        let d = (cand >> 5) & 1;
        if (cand & 1) == (a ^ d) && ((cand >> 2) & 1) == (b ^ c) {
            return a | (b << 1) | (c << 2) | (d << 3);
        }
    }
    unreachable!("one representative always matches the parametrization");
}

pub struct DictionaryData {
    /// image of every S6 element, in s6_elements() order
    pub images: Vec<(Perm6, BitMat)>,
    pub perm_of: HashMap<u64, Perm6>,
}

/// Build the full dictionary and certify it is a bijective homomorphism
/// whose image preserves the symplectic form.
pub fn s6_gsp4_dictionary() -> Result<DictionaryData> {
    let perms = s6_elements();
    let mut images = Vec::with_capacity(720);
    let mut perm_of = HashMap::with_capacity(720);
    let j = j2n(2);
    for p in &perms {
        let m = perm_to_gsp4(p);
        if m.transpose().mul(&j).mul(&m) != j {
            return Err(Error::diagnostic("dictionary image not symplectic"));
        }
        perm_of.insert(m.encode(), *p);
        images.push((*p, m));
    }
    if perm_of.len() != 720 {
        return Err(Error::diagnostic("dictionary not injective"));
    }
    Ok(DictionaryData { images, perm_of })
}

impl DictionaryData {
    pub fn image(&self, p: &Perm6) -> BitMat {
        perm_to_gsp4(p)
    }

    pub fn preimage(&self, m: &BitMat) -> Option<Perm6> {
        self.perm_of.get(&m.encode()).copied()
    }
}

#[derive(Debug)]
pub struct SiegelReport {
    pub stabilizer_order: usize,
    pub equals_centralizer_of_unipotent: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub derived_is_a4_profile: bool,
    pub quotient_is_s4_profile: bool,
    pub central_is_triple_transposition: bool,
    pub order3_shapes_are_3_3: bool,
    pub s5b_intersection_is_2_group: bool,
}

/// Facts about the stabilizer of the standard isotropic plane in Sp4(F2):
/// order 48, the centralizer of the fixed unipotent, S4 x S2 structure, and
/// its interaction with the point stabilizer S5(b).
pub fn siegel_parabolic_facts(table: &F2Table, dict: &DictionaryData) -> Result<SiegelReport> {
    if table.n != 4 {
        return Err(Error::parameter("expects the Sp4(F2) table"));
    }
    // stabilizer of span(e1, e2): columns 0,1 supported on rows 0,1
    let stab: Vec<BitMat> = table
        .elems
        .iter()
        .copied()
        .filter(|m| (0..2).all(|j| m.get(2, j) == 0 && m.get(3, j) == 0))
        .collect();
    let central = BitMat::from_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    let centralizer: Vec<BitMat> = table
        .elems
        .iter()
        .copied()
        .filter(|m| m.mul(&central) == central.mul(m))
        .collect();
    let stab_set: std::collections::HashSet<u64> = stab.iter().map(|m| m.encode()).collect();
    let cent_set: std::collections::HashSet<u64> = centralizer.iter().map(|m| m.encode()).collect();

    // center and derived subgroup of the order-48 group
    let center: Vec<BitMat> = stab
        .iter()
        .copied()
        .filter(|z| stab.iter().all(|g| z.mul(g) == g.mul(z)))
        .collect();
    let mut derived: HashMap<u64, BitMat> = HashMap::new();
    let mut frontier: Vec<BitMat> = Vec::new();
    for a in &stab {
        for b in &stab {
            // a b a^-1 b^-1; involutive-friendly: compute via order search
            let inv = |m: &BitMat| m.pow_order_inverse();
            let comm = a.mul(b).mul(&inv(a)).mul(&inv(b));
            if derived.insert(comm.encode(), comm).is_none() {
                frontier.push(comm);
            }
        }
    }
    // close under multiplication
    let mut head = 0;
    let mut elems: Vec<BitMat> = frontier.clone();
    while head < elems.len() {
        let cur = elems[head];
        head += 1;
        for g in frontier.clone() {
            let next = cur.mul(&g);
            if derived.insert(next.encode(), next).is_none() {
                elems.push(next);
            }
        }
    }
    let derived_orders = order_profile(derived.values());
    // A4: 1 identity, 3 involutions, 8 of order 3
    let derived_is_a4 = derived.len() == 12
        && derived_orders == vec![(1, 1), (2, 3), (3, 8)];

    // quotient by the center: order profile of S4 is 1,9,8,6 (orders 1,2,3,4)
    let quotient_is_s4 = {
        if center.len() != 2 {
            false
        } else {
            let z = center.iter().find(|m| **m != BitMat::identity(4)).unwrap();
            let mut reps: HashMap<u64, BitMat> = HashMap::new();
            for g in &stab {
                let gz = g.mul(z);
                let key = g.encode().min(gz.encode());
                reps.entry(key).or_insert(*g);
            }
            let mut profile: HashMap<u32, u32> = HashMap::new();
            for g in reps.values() {
                // order in the quotient: least k with g^k central
                let mut cur = *g;
                let mut ord = 1;
                while cur != BitMat::identity(4) && cur != *z {
                    cur = cur.mul(g);
                    ord += 1;
                }
                *profile.entry(ord).or_default() += 1;
            }
            let mut prof: Vec<(u32, u32)> = profile.into_iter().collect();
            prof.sort_unstable();
            prof == vec![(1, 1), (2, 9), (3, 8), (4, 6)]
        }
    };

    // dictionary checks
    let central_perm = dict
        .preimage(&central)
        .ok_or_else(|| Error::diagnostic("central element outside dictionary image"))?;
    let central_is_triple = central_perm.cycle_type() == vec![2, 2, 2];
    let order3_shapes = centralizer
        .iter()
        .filter(|m| m.order() == 3)
        .all(|m| dict.preimage(m).map(|p| p.cycle_type()) == Some(vec![3, 3]));
    let s5b_imgs: std::collections::HashSet<u64> = s5b_elements()
        .iter()
        .map(|p| perm_to_gsp4(p).encode())
        .collect();
    let s5b_meet_2group = centralizer
        .iter()
        .filter(|m| s5b_imgs.contains(&m.encode()))
        .all(|m| m.order().is_power_of_two());

    Ok(SiegelReport {
        stabilizer_order: stab.len(),
        equals_centralizer_of_unipotent: stab_set == cent_set,
        center_order: center.len(),
        derived_order: derived.len(),
        derived_is_a4_profile: derived_is_a4,
        quotient_is_s4_profile: quotient_is_s4,
        central_is_triple_transposition: central_is_triple,
        order3_shapes_are_3_3: order3_shapes,
        s5b_intersection_is_2_group: s5b_meet_2group,
    })
}

fn order_profile<'a>(elems: impl Iterator<Item = &'a BitMat>) -> Vec<(u32, u32)> {
    let mut profile: HashMap<u32, u32> = HashMap::new();
    for g in elems {
        *profile.entry(g.order()).or_default() += 1;
    }
    let mut out: Vec<(u32, u32)> = profile.into_iter().collect();
    out.sort_unstable();
    out
}
