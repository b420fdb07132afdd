//! The ten outer conjugacy classes of PGSp4(F3): construction from the
//! GSp4(F3) group table, invariant-signature classification with a
//! ground-truth fallback, the 40-point permutation cycle types, and the
//! regular semisimple class inventory.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{field_make, FPoly};

use super::matf3::Mat4F3;
use super::table::F3Table;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ClassLabel {
    TwoC,
    TwoD,
    FourC,
    FourD,
    SixG,
    SixH,
    SixI,
    EightA,
    TenA,
    TwelveC,
}

impl std::fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ClassLabel::TwoC => "2C",
            ClassLabel::TwoD => "2D",
            ClassLabel::FourC => "4C",
            ClassLabel::FourD => "4D",
            ClassLabel::SixG => "6G",
            ClassLabel::SixH => "6H",
            ClassLabel::SixI => "6I",
            ClassLabel::EightA => "8A",
            ClassLabel::TenA => "10A",
            ClassLabel::TwelveC => "12C",
        };
        write!(f, "{s}")
    }
}

impl ClassLabel {
    pub fn parse(s: &str) -> Option<ClassLabel> {
        Some(match s {
            "2C" => ClassLabel::TwoC,
            "2D" => ClassLabel::TwoD,
            "4C" => ClassLabel::FourC,
            "4D" => ClassLabel::FourD,
            "6G" => ClassLabel::SixG,
            "6H" => ClassLabel::SixH,
            "6I" => ClassLabel::SixI,
            "8A" => ClassLabel::EightA,
            "10A" => ClassLabel::TenA,
            "12C" => ClassLabel::TwelveC,
            _ => return None,
        })
    }
}

/// Conjugation- and sign-invariant signature of an outer element: the
/// (sorted) pair of lift charpolys, the projective order, and for each power
/// the sorted pair of fixed-space dimensions of +-g^k.
pub type Signature = (Vec<[u8; 5]>, u32, Vec<(u32, u32)>);

pub fn element_signature(g: &Mat4F3) -> Signature {
    let mut pair = vec![g.charpoly(), g.neg().charpoly()];
    pair.sort_unstable();
    pair.dedup();
    let proj = g.projective_order();
    let mut dims = Vec::new();
    let mut cur = *g;
    for _ in 1..=24 {
        let d_plus = cur.fixed_space_dim();
        let d_minus = cur.neg().fixed_space_dim();
        dims.push((d_plus.min(d_minus), d_plus.max(d_minus)));
        cur = cur.mul(g);
    }
    (pair, proj, dims)
}

#[derive(Clone, Debug)]
pub struct OuterClass {
    pub label: ClassLabel,
    /// Size of the class in PGSp4(F3).
    pub size: u32,
    pub proj_order: u32,
    /// Sorted distinct lift charpolys (ascending coefficients).
    pub charpolys: Vec<[u8; 5]>,
    /// The one or two GSp4(F3) class ids covering the lifts.
    pub gsp_class_ids: Vec<u32>,
    pub rep: Mat4F3,
}

pub struct OuterAtlas {
    pub classes: Vec<OuterClass>,
    gsp_class_to_outer: HashMap<u32, usize>,
    sig_to_outer: HashMap<Signature, Vec<usize>>,
    /// Indices of the two size-1440 classes that share every invariant
    /// signature; label assignment between them requires the curve anchor.
    pub ambiguous_pair: Option<(usize, usize)>,
    pub ambiguous_resolved: bool,
}

/// Partition the similitude-non-square part of PGSp4(F3) into its ten outer
/// classes and attach labels. The 6G/6H pair is provisionally ordered by
/// class id and must be resolved against a curve-derived anchor before
/// classification may distinguish them.
pub fn pgsp_outer_atlas(table: &F3Table) -> Result<OuterAtlas> {
    let mut seen: HashMap<u32, ()> = HashMap::new();
    let mut classes: Vec<OuterClass> = Vec::new();
    for (cid, cinfo) in table.classes.iter().enumerate() {
        let cid = cid as u32;
        if cinfo.nu != 2 || seen.contains_key(&cid) {
            continue;
        }
        let rep = table.elems[cinfo.rep as usize];
        let neg_cid = table
            .class_of_elem(&rep.neg())
            .ok_or_else(|| Error::diagnostic("negation left the group"))?;
        seen.insert(cid, ());
        seen.insert(neg_cid, ());
        let (size, ids) = if neg_cid == cid {
            (cinfo.size / 2, vec![cid])
        } else {
            (cinfo.size, vec![cid.min(neg_cid), cid.max(neg_cid)])
        };
        let mut charpolys = vec![rep.charpoly(), rep.neg().charpoly()];
        charpolys.sort_unstable();
        charpolys.dedup();
        classes.push(OuterClass {
            label: ClassLabel::TwoC, // placeholder, assigned below
            size,
            proj_order: rep.projective_order(),
            charpolys,
            gsp_class_ids: ids,
            rep,
        });
    }
    if classes.len() != 10 {
        return Err(Error::diagnostic(format!(
            "expected 10 outer classes, found {}",
            classes.len()
        )));
    }
    classes.sort_by_key(|c| (c.proj_order, c.size, c.gsp_class_ids[0]));

    // label by (projective order, size); the only collision is the 6G/6H pair
    let mut ambiguous = Vec::new();
    for (i, c) in classes.iter_mut().enumerate() {
        c.label = match (c.proj_order, c.size) {
            (2, 36) => ClassLabel::TwoC,
            (2, 540) => ClassLabel::TwoD,
            (4, 540) => ClassLabel::FourC,
            (4, 1620) => ClassLabel::FourD,
            (6, 1440) => {
                ambiguous.push(i);
                ClassLabel::SixG // provisional; the second one becomes 6H
            }
            (6, 4320) => ClassLabel::SixI,
            (8, 6480) => ClassLabel::EightA,
            (10, 5184) => ClassLabel::TenA,
            (12, 4320) => ClassLabel::TwelveC,
            other => {
                return Err(Error::diagnostic(format!(
                    "unexpected outer class invariants {other:?}"
                )))
            }
        };
    }
    if ambiguous.len() != 2 {
        return Err(Error::diagnostic("expected exactly two size-1440 order-6 classes"));
    }
    classes[ambiguous[1]].label = ClassLabel::SixH;

    let total: u32 = classes.iter().map(|c| c.size).sum();
    if total != 25920 {
        return Err(Error::diagnostic(format!(
            "outer class sizes sum to {total}, expected 25920"
        )));
    }

    let mut gsp_class_to_outer = HashMap::new();
    let mut sig_to_outer: HashMap<Signature, Vec<usize>> = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for &cid in &c.gsp_class_ids {
            gsp_class_to_outer.insert(cid, i);
        }
        sig_to_outer.entry(element_signature(&c.rep)).or_default().push(i);
    }
    Ok(OuterAtlas {
        classes,
        gsp_class_to_outer,
        sig_to_outer,
        ambiguous_pair: Some((ambiguous[0], ambiguous[1])),
        ambiguous_resolved: false,
    })
}

impl OuterAtlas {
    pub fn class(&self, label: ClassLabel) -> &OuterClass {
        self.classes.iter().find(|c| c.label == label).unwrap()
    }

    /// Ground-truth label of an element via the conjugacy partition.
    pub fn label_by_membership(&self, g: &Mat4F3, table: &F3Table) -> Result<ClassLabel> {
        let cid = table
            .class_of_elem(g)
            .ok_or_else(|| Error::usage("element not in the group table"))?;
        let idx = self
            .gsp_class_to_outer
            .get(&cid)
            .ok_or_else(|| Error::usage("element has square similitude (inner)"))?;
        Ok(self.classes[*idx].label)
    }

    /// Fix the 6G/6H assignment: `anchor` is an element known (from curve
    /// data) to lie in class 6H.
    pub fn resolve_6h(&mut self, anchor: &Mat4F3, table: &F3Table) -> Result<()> {
        let (i, j) = self
            .ambiguous_pair
            .ok_or_else(|| Error::diagnostic("no ambiguous pair recorded"))?;
        let cid = table
            .class_of_elem(anchor)
            .ok_or_else(|| Error::usage("anchor not in group table"))?;
        let idx = *self
            .gsp_class_to_outer
            .get(&cid)
            .ok_or_else(|| Error::usage("anchor is inner"))?;
        if idx == i {
            self.classes[i].label = ClassLabel::SixH;
            self.classes[j].label = ClassLabel::SixG;
        } else if idx == j {
            self.classes[i].label = ClassLabel::SixG;
            self.classes[j].label = ClassLabel::SixH;
        } else {
            return Err(Error::diagnostic(
                "6H anchor does not land in a size-1440 order-6 class",
            ));
        }
        self.ambiguous_resolved = true;
        Ok(())
    }
}

/// Classify an outer element. The invariant signature is used when it pins a
/// unique class; otherwise (the 6G/6H pair, as certified by
/// [`signature_oracle`]) the ground-truth conjugacy partition decides.
pub fn classify_class(g: &Mat4F3, table: &F3Table, atlas: &OuterAtlas) -> Result<ClassLabel> {
    if g.similitude() != Some(2) {
        return Err(Error::parameter("classify_class requires similitude -1"));
    }
    let sig = element_signature(g);
    match atlas.sig_to_outer.get(&sig) {
        Some(idxs) if idxs.len() == 1 => Ok(atlas.classes[idxs[0]].label),
        Some(idxs) => {
            if !atlas.ambiguous_resolved
                && idxs
                    .iter()
                    .any(|&i| matches!(atlas.classes[i].label, ClassLabel::SixG | ClassLabel::SixH))
            {
                return Err(Error::diagnostic(
                    "6G/6H labels not yet anchored to curve data",
                ));
            }
            atlas.label_by_membership(g, table)
        }
        None => Err(Error::diagnostic("unclassified signature")),
    }
}

/// Report on whether the invariant signature separates all ten classes.
#[derive(Debug)]
pub struct SignatureOracle {
    pub separates_all: bool,
    /// Labels that share a signature with another class.
    pub colliding_labels: Vec<ClassLabel>,
}

pub fn signature_oracle(atlas: &OuterAtlas) -> SignatureOracle {
    let mut colliding = Vec::new();
    for idxs in atlas.sig_to_outer.values() {
        if idxs.len() > 1 {
            for &i in idxs {
                colliding.push(atlas.classes[i].label);
            }
        }
    }
    colliding.sort_unstable();
    SignatureOracle {
        separates_all: colliding.is_empty(),
        colliding_labels: colliding,
    }
}

/// Orbit-size partition of <g, -1> acting on the 40 points (F3^4 - 0)/{+-1},
/// sorted ascending.
pub fn s40_cycle_type(g: &Mat4F3) -> Vec<u32> {
    // canonical representative: first nonzero coordinate equals 1
    fn canon(v: [u8; 4]) -> [u8; 4] {
        for &c in &v {
            if c == 1 {
                return v;
            }
            if c == 2 {
                return [
                    super::matf3::f3_neg(v[0]),
                    super::matf3::f3_neg(v[1]),
                    super::matf3::f3_neg(v[2]),
                    super::matf3::f3_neg(v[3]),
                ];
            }
        }
        v
    }
    let mut points = Vec::with_capacity(40);
    for code in 1..81u32 {
        let v = [
            (code % 3) as u8,
            (code / 3 % 3) as u8,
            (code / 9 % 3) as u8,
            (code / 27 % 3) as u8,
        ];
        if canon(v) == v {
            points.push(v);
        }
    }
    debug_assert_eq!(points.len(), 40);
    let index: HashMap<[u8; 4], usize> =
        points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut visited = vec![false; 40];
    let mut cycles = Vec::new();
    for start in 0..40 {
        if visited[start] {
            continue;
        }
        let mut len = 0u32;
        let mut cur = start;
        while !visited[cur] {
            visited[cur] = true;
            len += 1;
            cur = index[&canon(g.mul_vec(&points[cur]))];
        }
        cycles.push(len);
    }
    cycles.sort_unstable();
    cycles
}

/// Regular semisimple classes of GSp4(F3), split by whether the similitude
/// is a square: returns (inner class ids, outer class ids).
pub fn reg_ss_classes(table: &F3Table) -> (Vec<u32>, Vec<u32>) {
    let f3 = field_make(3, 1).expect("F3");
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for (cid, c) in table.classes.iter().enumerate() {
        let q = FPoly::from_scalars(&c.charpoly, &f3);
        let qp = q.derivative(&f3);
        let squarefree = !qp.is_zero() && q.gcd(&qp, &f3).degree() == 0;
        if !squarefree {
            continue;
        }
        if c.nu == 1 {
            inner.push(cid as u32);
        } else {
            outer.push(cid as u32);
        }
    }
    (inner, outer)
}

/// Is the class charpoly squarefree over F3 (regular semisimple)?
pub fn charpoly_is_squarefree_f3(charpoly: &[u8; 5]) -> bool {
    let f3 = field_make(3, 1).expect("F3");
    let q = FPoly::from_scalars(charpoly, &f3);
    let qp = q.derivative(&f3);
    !qp.is_zero() && q.gcd(&qp, &f3).degree() == 0
}
