//! Involution classes in Sp_2n(F2) and the strong-oddness predicate: an
//! involution A is odd when A * J_2n has a nonzero diagonal entry (its
//! symmetric form is non-alternating).

use crate::error::{Error, Result};

use super::bitmat::{j2n, BitMat};
use super::table::{generate_f2, GroupKind};

/// A J_2n has a nonzero diagonal entry.
pub fn is_strongly_odd(a: &BitMat) -> bool {
    let j = j2n(a.n / 2);
    a.mul(&j).has_nonzero_diagonal()
}

#[derive(Debug, Clone)]
pub struct InvolutionClassReport {
    pub n: u8,
    /// (rank of A - I, odd flag, count), sorted; rank 0 is the identity.
    pub classes: Vec<(u32, bool, usize)>,
}

impl InvolutionClassReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
    pub fn odd_class_count(&self) -> usize {
        self.classes.iter().filter(|&&(_, odd, _)| odd).count()
    }
}

/// Bucket the order-(dividing-2) elements of Sp_2n(F2) by
/// (rank(A - I), oddness); this pair is a complete conjugacy invariant for
/// involutions, giving n + 1 + floor(n/2) classes.
pub fn involution_oddness(n: u8) -> Result<InvolutionClassReport> {
    let kind = match n {
        1 => None,
        2 => Some(GroupKind::Sp4F2),
        3 => Some(GroupKind::Sp6F2),
        _ => return Err(Error::parameter("n must be 1, 2, or 3")),
    };
    let elems: Vec<BitMat> = match kind {
        Some(k) => generate_f2(k)?.elems,
        None => sp2f2_elements(),
    };
    let id = BitMat::identity(2 * n);
    let mut buckets: std::collections::BTreeMap<(u32, bool), usize> = Default::default();
    for a in &elems {
        if a.mul(a) != id {
            continue;
        }
        let r = a.add(&id).rank();
        let odd = *a != id && is_strongly_odd(a);
        *buckets.entry((r, odd)).or_default() += 1;
    }
    let classes: Vec<(u32, bool, usize)> =
        buckets.into_iter().map(|((r, odd), c)| (r, odd, c)).collect();
    let expected = n as usize + 1 + n as usize / 2;
    if classes.len() != expected {
        return Err(Error::diagnostic(format!(
            "found {} involution buckets in Sp{}(F2), expected {expected}",
            classes.len(),
            2 * n
        )));
    }
    Ok(InvolutionClassReport { n, classes })
}

fn sp2f2_elements() -> Vec<BitMat> {
    // Sp2(F2) = SL2(F2), all invertible 2x2 matrices over F2 (order 6)
    let mut out = Vec::new();
    for code in 0u64..16 {
        let m = BitMat::decode(2, (code & 3) | ((code >> 2) << 8));
        let det = (m.get(0, 0) & m.get(1, 1)) ^ (m.get(0, 1) & m.get(1, 0));
        if det == 1 {
            out.push(m);
        }
    }
    debug_assert_eq!(out.len(), 6);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remark_representatives() {
        // the two odd representatives and the non-odd one
        let odd1 = BitMat::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let odd2 = BitMat::from_rows(&[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        let even = BitMat::from_rows(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
        for m in [&odd1, &odd2, &even] {
            assert!(super::super::bitmat::is_symplectic(m));
            assert!(m.is_involution());
        }
        assert!(is_strongly_odd(&odd1));
        assert!(is_strongly_odd(&odd2));
        assert!(!is_strongly_odd(&even));
        // identity is non-odd by convention (rank 0)
        let report = involution_oddness(2).unwrap();
        assert_eq!(report.class_count(), 4);
        assert_eq!(report.odd_class_count(), 2);
    }

    #[test]
    fn n1_counts() {
        let report = involution_oddness(1).unwrap();
        assert_eq!(report.class_count(), 2);
        assert_eq!(report.odd_class_count(), 1);
    }
}
