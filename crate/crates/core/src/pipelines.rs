//! End-to-end enumerations: the full F2 sweep with outer-class
//! classification, the F3 sweep with its per-polynomial table, the Weil
//! polynomial bucket map, and the density computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::curves::{
    frobenius_charpoly, has_rational_weierstrass_point_field, is_smooth_genus2,
    weil_poly_enumerate, FrobeniusSummary, HyperellipticModel,
};
use crate::error::{Error, Result};
use crate::gf::{field_make, FPoly, FieldCtx};
use crate::jacobian::{sylow3_structure, three_torsion_module};
use crate::sympgroups::{
    classify_class, generate_f3, pgsp_outer_atlas, ClassLabel, F3Table, GroupKind, OuterAtlas,
};

/// Shared group-theory resources: the GSp4(F3) table and the outer atlas
/// with the 6G/6H pair anchored by the fixture curve
/// y^2 + (x^2+x) y = x^5 + x^3 + 1 over F2, whose Frobenius class is 6H.
pub struct Resources {
    pub table: F3Table,
    pub atlas: OuterAtlas,
}

impl Resources {
    pub fn build() -> Result<Resources> {
        let table = generate_f3(GroupKind::GSp4F3)?;
        let mut atlas = pgsp_outer_atlas(&table)?;
        let f2 = field_make(2, 1)?;
        let anchor_model = HyperellipticModel {
            f: FPoly::from_scalars(&[1, 0, 0, 1, 0, 1], &f2),
            h: FPoly::from_scalars(&[0, 1, 1], &f2),
        };
        let module = three_torsion_module(&anchor_model, &f2, 0)?;
        atlas.resolve_6h(&module.frobenius, &table)?;
        Ok(Resources { table, atlas })
    }
}

/// splitmix64, for deterministic per-model seeds.
fn mix_seed(base: u64, idx: u64) -> u64 {
    let mut z = base ^ idx.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Serialize)]
pub struct F2Report {
    pub total: u32,
    pub smooth: u32,
    pub ordinary: u32,
    pub ordinary_classes: BTreeMap<String, u32>,
    pub non_ordinary_classes: BTreeMap<String, u32>,
    /// ordinary charpoly histogram, keyed by "a,b"
    pub ordinary_charpolys: BTreeMap<String, u32>,
    /// count of torsion modules built (the 6G/6H-ambiguous population)
    pub modules_built: u32,
}

/// Classify the Frobenius of a smooth model over F2 into its outer class,
/// escalating charpoly buckets through torsion ranks to the full torsion
/// module only where needed.
pub fn classify_f2_model(
    m: &HyperellipticModel,
    s: &FrobeniusSummary,
    prime: &FieldCtx,
    res: &Resources,
    seed: u64,
) -> Result<ClassLabel> {
    let qbar: Vec<u8> = s.charpoly().reduce_mod(3);
    let mut qarr = [0u8; 5];
    qarr.copy_from_slice(&qbar[..5]);
    let candidates: Vec<ClassLabel> = res
        .atlas
        .classes
        .iter()
        .filter(|c| c.charpolys.contains(&qarr))
        .map(|c| c.label)
        .collect();
    match candidates.len() {
        0 => Err(Error::diagnostic(format!(
            "no outer class matches charpoly {qarr:?}"
        ))),
        1 => Ok(candidates[0]),
        _ => {
            // refinement by the 3-torsion rank over an extension:
            // order-2/order-4 classes have full rank where the 6-/12-classes
            // have rank 2
            let is_4c12c = candidates.contains(&ClassLabel::FourC);
            let k = if is_4c12c { 8 } else { 4 };
            let rank = sylow3_structure(m, prime, k, seed)?.torsion_rank;
            if is_4c12c {
                return Ok(if rank == 4 {
                    ClassLabel::FourC
                } else {
                    ClassLabel::TwelveC
                });
            }
            if candidates.contains(&ClassLabel::SixI) {
                return Ok(if rank == 4 {
                    ClassLabel::TwoD
                } else {
                    ClassLabel::SixI
                });
            }
            // {2C, 6G, 6H}
            if rank == 4 {
                return Ok(ClassLabel::TwoC);
            }
            let module = three_torsion_module(m, prime, seed)?;
            classify_class(&module.frobenius, &res.table, &res.atlas)
        }
    }
}

/// Sharded variant: identical output for any worker count (models are
/// partitioned by index and the aggregation is canonical).
pub fn enumerate_f2_sharded(res: &Resources, seed: u64, threads: usize) -> Result<F2Report> {
    if threads <= 1 {
        return enumerate_f2(res, seed);
    }
    let indices: Vec<u32> = (0..2048).collect();
    let chunk = indices.len().div_ceil(threads);
    let partials: Vec<Result<Vec<(u32, ModelOutcome)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = indices
            .chunks(chunk)
            .map(|slice| {
                let slice = slice.to_vec();
                scope.spawn(move || {
                    let f2 = field_make(2, 1)?;
                    let mut out = Vec::new();
                    for idx in slice {
                        if let Some(o) = classify_f2_index(idx, &f2, res, seed)? {
                            out.push((idx, o));
                        }
                    }
                    Ok(out)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut all: Vec<(u32, ModelOutcome)> = Vec::new();
    for p in partials {
        all.extend(p?);
    }
    all.sort_by_key(|(i, _)| *i);
    aggregate_f2(all.into_iter().map(|(_, o)| o))
}

struct ModelOutcome {
    a: i64,
    b: i64,
    ordinary: bool,
    label: ClassLabel,
}

fn classify_f2_index(
    idx: u32,
    f2: &FieldCtx,
    res: &Resources,
    seed: u64,
) -> Result<Option<ModelOutcome>> {
    let fbits = idx / 16;
    let hbits = idx % 16;
    let f: Vec<u8> = (0..7).map(|i| ((fbits >> i) & 1) as u8).collect();
    let h: Vec<u8> = (0..4).map(|i| ((hbits >> i) & 1) as u8).collect();
    let m = HyperellipticModel {
        f: FPoly::from_scalars(&f, f2),
        h: FPoly::from_scalars(&h, f2),
    };
    if !is_smooth_genus2(&m, f2) {
        return Ok(None);
    }
    let s = frobenius_charpoly(&m, f2)?;
    let label = classify_f2_model(&m, &s, f2, res, mix_seed(seed, idx as u64))?;
    Ok(Some(ModelOutcome {
        a: s.a,
        b: s.b,
        ordinary: s.ordinary,
        label,
    }))
}

fn aggregate_f2(outcomes: impl Iterator<Item = ModelOutcome>) -> Result<F2Report> {
    let weil = weil_poly_enumerate(2);
    let mut report = F2Report {
        total: 2048,
        smooth: 0,
        ordinary: 0,
        ordinary_classes: BTreeMap::new(),
        non_ordinary_classes: BTreeMap::new(),
        ordinary_charpolys: BTreeMap::new(),
        modules_built: 0,
    };
    for o in outcomes {
        report.smooth += 1;
        if o.ordinary {
            report.ordinary += 1;
            if !weil.contains(&(o.a, o.b)) {
                return Err(Error::diagnostic("ordinary charpoly missing from Weil list"));
            }
            *report
                .ordinary_charpolys
                .entry(format!("{},{}", o.a, o.b))
                .or_default() += 1;
            *report
                .ordinary_classes
                .entry(o.label.to_string())
                .or_default() += 1;
            if (o.a, o.b) == (0, -1) && o.label != ClassLabel::SixH {
                return Err(Error::diagnostic("curve with charpoly x^4-x^2+4 not 6H"));
            }
        } else {
            *report
                .non_ordinary_classes
                .entry(o.label.to_string())
                .or_default() += 1;
            if o.label == ClassLabel::FourC {
                return Err(Error::diagnostic("non-ordinary curve classified as 4C"));
            }
        }
        if o.label == ClassLabel::SixG || o.label == ClassLabel::SixH {
            report.modules_built += 1;
        }
    }
    Ok(report)
}

/// Iterate all 2^11 (f, h) pairs over F2.
pub fn enumerate_f2(res: &Resources, seed: u64) -> Result<F2Report> {
    let f2 = field_make(2, 1)?;
    let weil = weil_poly_enumerate(2);
    let mut report = F2Report {
        total: 0,
        smooth: 0,
        ordinary: 0,
        ordinary_classes: BTreeMap::new(),
        non_ordinary_classes: BTreeMap::new(),
        ordinary_charpolys: BTreeMap::new(),
        modules_built: 0,
    };
    for fbits in 0u32..128 {
        for hbits in 0u32..16 {
            report.total += 1;
            let f: Vec<u8> = (0..7).map(|i| ((fbits >> i) & 1) as u8).collect();
            let h: Vec<u8> = (0..4).map(|i| ((hbits >> i) & 1) as u8).collect();
            let m = HyperellipticModel {
                f: FPoly::from_scalars(&f, &f2),
                h: FPoly::from_scalars(&h, &f2),
            };
            if !is_smooth_genus2(&m, &f2) {
                continue;
            }
            report.smooth += 1;
            let s = frobenius_charpoly(&m, &f2)?;
            let idx = (fbits * 16 + hbits) as u64;
            let label = classify_f2_model(&m, &s, &f2, res, mix_seed(seed, idx))?;
            if s.ordinary {
                report.ordinary += 1;
                if !weil.contains(&(s.a, s.b)) {
                    return Err(Error::diagnostic(format!(
                        "ordinary charpoly (a,b)=({},{}) missing from the Weil list",
                        s.a, s.b
                    )));
                }
                *report
                    .ordinary_charpolys
                    .entry(format!("{},{}", s.a, s.b))
                    .or_default() += 1;
                *report
                    .ordinary_classes
                    .entry(label.to_string())
                    .or_default() += 1;
                if label == ClassLabel::SixG || label == ClassLabel::SixH {
                    report.modules_built += 1;
                }
                // cross-pipeline fact: every ordinary curve with
                // Q = x^4 - x^2 + 4 is of class 6H
                if (s.a, s.b) == (0, -1) && label != ClassLabel::SixH {
                    return Err(Error::diagnostic(
                        "curve with charpoly x^4-x^2+4 not of class 6H",
                    ));
                }
            } else {
                *report
                    .non_ordinary_classes
                    .entry(label.to_string())
                    .or_default() += 1;
                if label == ClassLabel::SixG || label == ClassLabel::SixH {
                    report.modules_built += 1;
                }
                // non-ordinary 4C/12C bucket must always resolve to 12C
                if label == ClassLabel::FourC {
                    return Err(Error::diagnostic("non-ordinary curve classified as 4C"));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Table1Row {
    pub a: i64,
    pub b: i64,
    /// reduction mod 3 as "a mod 3, b mod 3"
    pub mod3: (u8, u8),
    /// some curve with this charpoly has a rational Weierstrass point
    pub jac_wp: bool,
    /// some curve has this charpoly
    pub jac_any: bool,
    pub count: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct F3Report {
    pub total: u32,
    pub smooth: u32,
    pub ordinary: u32,
    pub non_distinguished: u32,
    pub rows: Vec<Table1Row>,
    /// non-distinguished charpoly histogram keyed by "a,b"
    pub non_distinguished_charpolys: BTreeMap<String, u32>,
    pub generalized: bool,
}

/// Iterate the 3^7 models y^2 = f (generalized = false) or all 3^11 (f, h)
/// pairs (generalized = true).
pub fn enumerate_f3(generalized: bool) -> Result<F3Report> {
    let f3 = field_make(3, 1)?;
    let weil = weil_poly_enumerate(3);
    let mut counts: BTreeMap<(i64, i64), u32> = BTreeMap::new();
    let mut wp_flags: BTreeMap<(i64, i64), bool> = BTreeMap::new();
    let mut report = F3Report {
        total: 0,
        smooth: 0,
        ordinary: 0,
        non_distinguished: 0,
        rows: Vec::new(),
        non_distinguished_charpolys: BTreeMap::new(),
        generalized,
    };
    let h_range = if generalized { 81u32 } else { 1 };
    // sub-counters for the h = 0 slice, used to assert the exact
    // proportionality of the generalized sweep
    let mut base = (0u32, 0u32, 0u32, 0u32);
    for hidx in 0..h_range {
        let mut hrem = hidx;
        let mut hco = [0u8; 4];
        for c in hco.iter_mut() {
            *c = (hrem % 3) as u8;
            hrem /= 3;
        }
        for fidx in 0u32..2187 {
            report.total += 1;
            if hidx == 0 {
                base.0 += 1;
            }
            let mut rem = fidx;
            let mut fco = [0u8; 7];
            for c in fco.iter_mut() {
                *c = (rem % 3) as u8;
                rem /= 3;
            }
            let m = HyperellipticModel {
                f: FPoly::from_scalars(&fco, &f3),
                h: FPoly::from_scalars(&hco[..if generalized { 4 } else { 0 }], &f3),
            };
            if !is_smooth_genus2(&m, &f3) {
                continue;
            }
            report.smooth += 1;
            if hidx == 0 {
                base.1 += 1;
            }
            let s = frobenius_charpoly(&m, &f3)?;
            if !s.ordinary {
                continue;
            }
            report.ordinary += 1;
            if hidx == 0 {
                base.2 += 1;
            }
            if !weil.contains(&(s.a, s.b)) {
                return Err(Error::diagnostic(format!(
                    "ordinary charpoly (a,b)=({},{}) missing from the Weil list",
                    s.a, s.b
                )));
            }
            if !s.distinguished {
                report.non_distinguished += 1;
                if hidx == 0 {
                    base.3 += 1;
                }
                *report
                    .non_distinguished_charpolys
                    .entry(format!("{},{}", s.a, s.b))
                    .or_default() += 1;
                // such a curve must not have a rational Weierstrass point
                if !generalized && has_rational_weierstrass_point_field(&m, &f3)? {
                    return Err(Error::diagnostic(
                        "non-distinguished ordinary curve with a rational Weierstrass point",
                    ));
                }
            }
            if !generalized {
                *counts.entry((s.a, s.b)).or_default() += 1;
                if has_rational_weierstrass_point_field(&m, &f3)? {
                    wp_flags.insert((s.a, s.b), true);
                }
            }
        }
    }
    if generalized
        && (report.total, report.smooth, report.ordinary, report.non_distinguished)
            != (81 * base.0, 81 * base.1, 81 * base.2, 81 * base.3)
    {
        return Err(Error::diagnostic(
            "generalized sweep does not preserve the exact ratios",
        ));
    }
    if !generalized {
        for &(a, b) in &weil {
            let count = counts.get(&(a, b)).copied().unwrap_or(0);
            report.rows.push(Table1Row {
                a,
                b,
                mod3: (a.rem_euclid(3) as u8, b.rem_euclid(3) as u8),
                jac_wp: wp_flags.get(&(a, b)).copied().unwrap_or(false),
                jac_any: count > 0,
                count,
            });
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct BucketRow {
    pub a: i64,
    pub b: i64,
    /// mod-3 reduction, ascending coefficients
    pub reduction: [u8; 5],
    pub labels: Vec<String>,
}

/// Group the 16 ordinary p=2 Weil polynomials by mod-3 reduction, attaching
/// the candidate outer classes.
pub fn weil_bucket_table(res: &Resources) -> Vec<BucketRow> {
    weil_poly_enumerate(2)
        .into_iter()
        .map(|(a, b)| {
            let q = crate::gf::ZPoly::from_i64(&[4, 2 * a, b, a, 1]);
            let red = q.reduce_mod(3);
            let mut reduction = [0u8; 5];
            reduction.copy_from_slice(&red[..5]);
            let labels: Vec<String> = res
                .atlas
                .classes
                .iter()
                .filter(|c| c.charpolys.contains(&reduction))
                .map(|c| c.label.to_string())
                .collect();
            BucketRow {
                a,
                b,
                reduction,
                labels,
            }
        })
        .collect()
}

/// The density of curves meeting the local conditions, computed exactly
/// from the two enumeration reports.
pub fn density_theorem_applicability(
    f2_report: &F2Report,
    f3_report: &F3Report,
) -> Result<BigRational> {
    let excluded2: u32 = f2_report
        .non_ordinary_classes
        .get("4C")
        .copied()
        .unwrap_or(0)
        + f2_report
            .non_ordinary_classes
            .get("12C")
            .copied()
            .unwrap_or(0)
        + f2_report.ordinary_classes.get("4C").copied().unwrap_or(0)
        + f2_report.ordinary_classes.get("12C").copied().unwrap_or(0);
    let num1 = BigInt::from(f2_report.smooth - excluded2);
    let den1 = BigInt::from(f2_report.total);
    let num2 = BigInt::from(f3_report.ordinary - f3_report.non_distinguished);
    let den2 = BigInt::from(f3_report.total);
    Ok(BigRational::new(num1, den1) * BigRational::new(num2, den2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bucket_table_shape() {
        // check bucket contents without building the full table: reductions
        let rows: Vec<((i64, i64), [u8; 5])> = weil_poly_enumerate(2)
            .into_iter()
            .map(|(a, b)| {
                let q = crate::gf::ZPoly::from_i64(&[4, 2 * a, b, a, 1]);
                let red = q.reduce_mod(3);
                let mut arr = [0u8; 5];
                arr.copy_from_slice(&red[..5]);
                ((a, b), arr)
            })
            .collect();
        let find = |a: i64, b: i64| rows.iter().find(|(k, _)| *k == (a, b)).unwrap().1;
        // x^4 - x^2 + 4 -> x^4 + 2x^2 + 1
        assert_eq!(find(0, -1), [1, 0, 2, 0, 1]);
        // (x^2-x+2)^2 = x^4-2x^3+5x^2-4x+4 -> x^4+x^3+2x^2+2x+1
        assert_eq!(find(-2, 5), [1, 2, 2, 1, 1]);
        // x^4+x^3+x^2+2x+4 -> x^4+x^3+x^2+2x+1
        assert_eq!(find(1, 1), [1, 2, 1, 1, 1]);
        // nine distinct buckets
        let mut reds: Vec<[u8; 5]> = rows.iter().map(|(_, r)| *r).collect();
        reds.sort_unstable();
        reds.dedup();
        assert_eq!(reds.len(), 9);
    }
}
