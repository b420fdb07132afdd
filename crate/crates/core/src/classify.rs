//! The theorem-applicability rule engine for genus-2 curves over Q given by
//! integral Weierstrass data: local checks of the supplied model at 2 and 3,
//! the Frobenius class at 2 through the classification pipeline, a
//! documented one-sided heuristic for the size of the mod-3 image, and the
//! pure rule evaluation combining them.
//!
//! Scoping: "good reduction at p" always means "the supplied model is smooth
//! mod p" (no minimal-model search), and global conditions are external
//! assertions fed through the assumptions channel.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::curves::{
    frobenius_charpoly, is_smooth_genus2, IntegralModel,
};
use crate::error::{Error, Result};
use crate::gf::{field_make, zpoly_is_squarefree, ZPoly};
use crate::pipelines::{classify_f2_model, Resources};

/// A genus-2 curve over Q with integer Weierstrass data.
#[derive(Clone, Debug)]
pub struct CurveOverQ {
    pub label: Option<String>,
    pub model: IntegralModel,
}

impl CurveOverQ {
    pub fn new(label: Option<String>, f: ZPoly, h: ZPoly) -> Result<CurveOverQ> {
        let model = IntegralModel::new(f, h)?;
        let g = model.completed_square();
        if g.is_zero() || !(5..=6).contains(&g.degree()) {
            return Err(Error::parameter(
                "completed square 4f + h^2 must have degree 5 or 6",
            ));
        }
        if !zpoly_is_squarefree(&g)? {
            return Err(Error::parameter("curve is not geometrically integral"));
        }
        Ok(CurveOverQ { label, model })
    }

    /// Degree of the odd-characteristic form; 5 means a rational Weierstrass
    /// point at infinity.
    pub fn squared_degree(&self) -> i64 {
        self.model.completed_square().degree()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    GoodOrdinary,
    GoodNonOrdinary,
    ModelSingular,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalAt3 {
    pub smooth: bool,
    pub ordinary: bool,
    pub distinguished: bool,
    /// (a, b) of x^4 + a x^3 + b x^2 + 3a x + 9 when smooth
    pub charpoly: Option<(i64, i64)>,
}

/// Evaluate the supplied model mod 3.
pub fn check_local_at_3(c: &CurveOverQ) -> Result<LocalAt3> {
    let f3 = field_make(3, 1)?;
    let m = c.model.reduce_mod_p(3, &f3)?;
    if !is_smooth_genus2(&m, &f3) {
        return Ok(LocalAt3 {
            smooth: false,
            ordinary: false,
            distinguished: false,
            charpoly: None,
        });
    }
    let s = frobenius_charpoly(&m, &f3)?;
    Ok(LocalAt3 {
        smooth: true,
        ordinary: s.ordinary,
        distinguished: s.distinguished,
        charpoly: Some((s.a, s.b)),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalAt2 {
    pub kind: ReductionKind,
    pub charpoly: Option<(i64, i64)>,
    pub frob2_class: Option<String>,
}

/// Evaluate the supplied model mod 2; when smooth, classify the Frobenius
/// through the full pipeline (ordinary or not).
pub fn check_local_at_2(c: &CurveOverQ, res: &Resources, seed: u64) -> Result<LocalAt2> {
    let f2 = field_make(2, 1)?;
    let m = c.model.reduce_mod_p(2, &f2)?;
    if !is_smooth_genus2(&m, &f2) {
        return Ok(LocalAt2 {
            kind: ReductionKind::ModelSingular,
            charpoly: None,
            frob2_class: None,
        });
    }
    let s = frobenius_charpoly(&m, &f2)?;
    let label = classify_f2_model(&m, &s, &f2, res, seed)?;
    Ok(LocalAt2 {
        kind: if s.ordinary {
            ReductionKind::GoodOrdinary
        } else {
            ReductionKind::GoodNonOrdinary
        },
        charpoly: Some((s.a, s.b)),
        frob2_class: Some(label.to_string()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImageEvidence {
    WitnessedLarge,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    pub evidence: ImageEvidence,
    /// (prime, reduced charpoly as "a,b", note)
    pub witnesses: Vec<(u64, String, String)>,
}

/// One-sided heuristic for condition (1): charpolys of Frobenius mod 3 at
/// good primes up to the bound, looking for a regular semisimple witness of
/// order 5 or 10 (inside Sp4) together with a regular semisimple witness
/// with non-square similitude. Evidence, never proof.
pub fn heuristic_image_mod3(c: &CurveOverQ, bound: u64) -> Result<ImageReport> {
    let mut witnesses = Vec::new();
    let mut has_order5 = false;
    let mut has_outer = false;
    for ell in primes_up_to(bound) {
        if ell == 3 {
            continue;
        }
        let red = match charpoly_at_prime(c, ell)? {
            Some(ab) => ab,
            None => continue, // bad reduction of the supplied model
        };
        let (a, b) = red;
        // reduction mod 3 of x^4 + a x^3 + b x^2 + ell a x + ell^2
        let q3: Vec<u8> = ZPoly::from_i64(&[
            (ell * ell) as i64,
            ell as i64 * a,
            b,
            a,
            1,
        ])
        .reduce_mod(3);
        let mut arr = [0u8; 5];
        arr.copy_from_slice(&q3[..5]);
        // order-5 and order-10 witnesses (regular semisimple, nu = 1)
        if arr == [1, 1, 1, 1, 1] || arr == [1, 2, 1, 2, 1] {
            has_order5 = true;
            witnesses.push((ell, format!("{a},{b}"), "order-5-or-10".into()));
        }
        // outer regular semisimple witness: ell = 2 mod 3 and squarefree
        if ell % 3 == 2 && crate::sympgroups::charpoly_is_squarefree_f3(&arr) {
            has_outer = true;
            witnesses.push((ell, format!("{a},{b}"), "outer-regular-semisimple".into()));
        }
    }
    Ok(ImageReport {
        evidence: if has_order5 && has_outer {
            ImageEvidence::WitnessedLarge
        } else {
            ImageEvidence::Inconclusive
        },
        witnesses,
    })
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let mut sieve = vec![true; (n + 1).max(2) as usize];
    sieve[0] = false;
    sieve[1] = false;
    for i in 2..=n as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
    }
    (2..=n as usize).filter(|&i| sieve[i]).map(|i| i as u64).collect()
}

/// Frobenius charpoly (a, b) of the supplied model at a good prime, None if
/// the reduced model is singular. Uses the binary/ternary machinery at 2
/// and 3 and direct small-prime counting otherwise.
pub fn charpoly_at_prime(c: &CurveOverQ, ell: u64) -> Result<Option<(i64, i64)>> {
    if ell == 2 || ell == 3 {
        let ctx = field_make(ell as u8, 1)?;
        let m = c.model.reduce_mod_p(ell as u8, &ctx)?;
        if !is_smooth_genus2(&m, &ctx) {
            return Ok(None);
        }
        let s = frobenius_charpoly(&m, &ctx)?;
        return Ok(Some((s.a, s.b)));
    }
    // odd prime: y^2 = g with g = 4f + h^2
    let g = c.model.completed_square();
    let gmod: Vec<u64> = g
        .coeffs()
        .iter()
        .map(|co| {
            let r = ((co % BigInt::from(ell)) + BigInt::from(ell)) % BigInt::from(ell);
            r.to_u64().unwrap()
        })
        .collect();
    let mut gv = gmod;
    while gv.last() == Some(&0) {
        gv.pop();
    }
    if gv.len() < 6 {
        return Ok(None); // degree dropped: treat as bad for the heuristic
    }
    if !squarefree_mod_ell(&gv, ell) {
        return Ok(None);
    }
    let n1 = count_points_odd(&gv, ell, 1);
    let n2 = count_points_odd(&gv, ell, 2);
    let s1 = ell as i64 + 1 - n1 as i64;
    let s2 = (ell * ell) as i64 + 1 - n2 as i64;
    let a = -s1;
    let b = (s1 * s1 - s2) / 2;
    Ok(Some((a, b)))
}

fn squarefree_mod_ell(g: &[u64], ell: u64) -> bool {
    // gcd(g, g') over F_ell
    let dg: Vec<u64> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (c * (i as u64 % ell)) % ell)
        .collect();
    let deg = |v: &[u64]| v.iter().rposition(|&c| c != 0).map(|d| d as i64).unwrap_or(-1);
    let mut a = g.to_vec();
    let mut b = dg;
    while deg(&b) >= 0 {
        // a mod b
        let db = deg(&b) as usize;
        let lead_inv = pow_mod(b[db], ell - 2, ell);
        while deg(&a) >= db as i64 {
            let da = deg(&a) as usize;
            let factor = (a[da] * lead_inv) % ell;
            for i in 0..=db {
                let idx = da - db + i;
                a[idx] = (a[idx] + ell - (factor * b[i]) % ell) % ell;
            }
            if deg(&a) == da as i64 {
                a[da] = 0;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    deg(&a) == 0
}

fn pow_mod(mut x: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * x % m;
        }
        x = x * x % m;
        e >>= 1;
    }
    acc
}

/// Points of y^2 = g over F_{ell^k}, k in {1, 2}, by direct counting.
fn count_points_odd(g: &[u64], ell: u64, k: u32) -> u64 {
    assert!(g.len() == 7 && *g.last().unwrap() != 0 || g.len() == 6);
    let sqrt_count = |a: u64| -> u64 {
        if a == 0 {
            1
        } else if pow_mod(a, (ell - 1) / 2, ell) == 1 {
            2
        } else {
            0
        }
    };
    if k == 1 {
        let mut n = 0u64;
        for x in 0..ell {
            n += sqrt_count(eval_mod(g, x, ell));
        }
        // infinity: deg 6: 0 or 2 points (g6 nonzero); deg 5: 1
        n + if g.len() == 7 { sqrt_count(g[6]) } else { 1 }
    } else {
        // F_{ell^2} = F_ell[d]/(d^2 - r) for the least non-residue r
        let r = (2..ell)
            .find(|&t| pow_mod(t, (ell - 1) / 2, ell) == ell - 1)
            .expect("non-residue exists");
        let q = ell * ell;
        let mul = |a: (u64, u64), b: (u64, u64)| -> (u64, u64) {
            (
                (a.0 * b.0 + a.1 * b.1 % ell * r) % ell,
                (a.0 * b.1 + a.1 * b.0) % ell,
            )
        };
        let is_square = |a: (u64, u64)| -> i64 {
            if a == (0, 0) {
                return 0;
            }
            // Euler: a^((q-1)/2)
            let mut acc = (1u64, 0u64);
            let mut base = a;
            let mut e = (q - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                e >>= 1;
            }
            if acc == (1, 0) {
                1
            } else {
                -1
            }
        };
        let mut n = 0u64;
        for a0 in 0..ell {
            for a1 in 0..ell {
                let x = (a0, a1);
                // evaluate g at x
                let mut acc = (0u64, 0u64);
                for &c in g.iter().rev() {
                    acc = mul(acc, x);
                    acc.0 = (acc.0 + c) % ell;
                }
                n += (1 + is_square(acc)) as u64;
            }
        }
        n + if g.len() == 7 {
            (1 + is_square((g[6], 0))) as u64
        } else {
            1
        }
    }
}

fn eval_mod(g: &[u64], x: u64, ell: u64) -> u64 {
    let mut acc = 0u64;
    for &c in g.iter().rev() {
        acc = (acc * x + c) % ell;
    }
    acc
}

/// External facts supplied by the caller; never computed here.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Assumptions {
    /// the mod-3 representation is unramified at 2
    pub unramified_at_2: bool,
    /// the mod-3 image is one of the allowed (large) subgroups
    pub image_large: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    /// all conditions verified on the good-at-2 route
    AppliesMainRoute,
    /// bad reduction at 2 with asserted unramifiedness: the class condition
    /// holds automatically
    AppliesBadAtTwoRoute,
    ConditionsFail,
    InsufficientLocalData,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub label: Option<String>,
    pub good_ordinary_at_3: Status,
    pub distinguished_at_3: Status,
    pub charpoly_at_3: Option<(i64, i64)>,
    pub reduction_at_2: ReductionKind,
    pub frob2_class: Option<String>,
    pub frob2_class_allowed: Status,
    pub unramified_at_2: Status,
    pub image_mod3: ImageEvidence,
    pub image_witnesses: Vec<(u64, String, String)>,
    pub deg5_route: bool,
    pub overall: Overall,
}

/// Pure rule evaluation of the modularity-criteria hypotheses on the
/// supplied model, with external assumptions filling the global conditions.
pub fn theorem_applies(
    c: &CurveOverQ,
    assumptions: Assumptions,
    res: &Resources,
    seed: u64,
    heuristic_bound: u64,
) -> Result<Verdict> {
    let at3 = check_local_at_3(c)?;
    let at2 = check_local_at_2(c, res, seed)?;
    let image = heuristic_image_mod3(c, heuristic_bound)?;
    let deg5 = c.squared_degree() == 5;

    let good_ordinary_at_3 = if at3.smooth && at3.ordinary {
        Status::Pass
    } else {
        Status::Fail
    };
    // the degree-5 route derives distinguishedness from ordinariness
    let distinguished_at_3 = if at3.smooth && at3.ordinary && (at3.distinguished || deg5) {
        if deg5 && !at3.distinguished {
            return Err(Error::diagnostic(
                "degree-5 model ordinary at 3 but not distinguished",
            ));
        }
        Status::Pass
    } else if at3.smooth && at3.ordinary {
        Status::Fail
    } else {
        Status::Unknown
    };

    let frob2_class_allowed = match at2.kind {
        ReductionKind::GoodOrdinary | ReductionKind::GoodNonOrdinary => {
            let label = at2.frob2_class.as_deref().unwrap();
            if label == "4C" || label == "12C" {
                Status::Fail
            } else {
                Status::Pass
            }
        }
        ReductionKind::ModelSingular => {
            if assumptions.unramified_at_2 {
                // bad reduction plus unramifiedness forces an allowed class
                Status::Pass
            } else {
                Status::Unknown
            }
        }
    };
    let unramified_at_2 = match at2.kind {
        ReductionKind::GoodOrdinary | ReductionKind::GoodNonOrdinary => Status::Pass,
        ReductionKind::ModelSingular => {
            if assumptions.unramified_at_2 {
                Status::Pass
            } else {
                Status::Unknown
            }
        }
    };
    let image_status = if assumptions.image_large {
        Status::Pass
    } else {
        Status::Unknown
    };

    let locals_pass = good_ordinary_at_3 == Status::Pass && distinguished_at_3 == Status::Pass;
    let overall = if good_ordinary_at_3 == Status::Fail
        || distinguished_at_3 == Status::Fail
        || frob2_class_allowed == Status::Fail
    {
        Overall::ConditionsFail
    } else if locals_pass && frob2_class_allowed == Status::Pass && image_status == Status::Pass {
        if at2.kind == ReductionKind::ModelSingular {
            Overall::AppliesBadAtTwoRoute
        } else {
            Overall::AppliesMainRoute
        }
    } else {
        Overall::InsufficientLocalData
    };

    Ok(Verdict {
        label: c.label.clone(),
        good_ordinary_at_3,
        distinguished_at_3,
        charpoly_at_3: at3.charpoly,
        reduction_at_2: at2.kind,
        frob2_class: at2.frob2_class,
        frob2_class_allowed,
        unramified_at_2,
        image_mod3: image.evidence,
        image_witnesses: image.witnesses,
        deg5_route: deg5,
        overall,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(f: &[i64], h: &[i64]) -> CurveOverQ {
        CurveOverQ::new(None, ZPoly::from_i64(f), ZPoly::from_i64(h)).unwrap()
    }

    #[test]
    fn local_at_3_fixture_rows() {
        // x^5 + 2x + 1: Q = x^4 + 3x^3 + 7x^2 + 9x + 9
        let c = curve(&[1, 2, 0, 0, 0, 1], &[]);
        let r = check_local_at_3(&c).unwrap();
        assert!(r.smooth && r.ordinary && r.distinguished);
        assert_eq!(r.charpoly, Some((3, 7)));
        // x^5 + x^3 + x + 1: Q = x^4 + 3x^3 + 5x^2 + 9x + 9
        let c = curve(&[1, 1, 0, 1, 0, 1], &[]);
        assert_eq!(check_local_at_3(&c).unwrap().charpoly, Some((3, 5)));
        // x^5 + x^2 + x: Q = x^4 - x^3 + 2x^2 - 3x + 9
        let c = curve(&[0, 1, 1, 0, 0, 1], &[]);
        assert_eq!(check_local_at_3(&c).unwrap().charpoly, Some((-1, 2)));
        // x^5 + x^4 + x^2 + 1: Q = x^4 + x^3 + x^2 + 3x + 9
        let c = curve(&[1, 0, 1, 0, 1, 1], &[]);
        assert_eq!(check_local_at_3(&c).unwrap().charpoly, Some((1, 1)));
    }

    #[test]
    fn charpoly_at_odd_primes() {
        // x^5 + 2x + 1 at ell = 5, 7: Weil bounds must hold and the
        // functional equation is built in; spot-check determinism
        let c = curve(&[1, 2, 0, 0, 0, 1], &[]);
        for ell in [5u64, 7, 11, 13] {
            if let Some((a, b)) = charpoly_at_prime(&c, ell).unwrap() {
                assert!((a * a) as f64 <= 16.0 * ell as f64);
                let _ = b;
            }
        }
    }

    #[test]
    fn singular_mod_3_reported() {
        // f = x^6 + 3x^3 + 9 is x^6 mod 3: not squarefree
        let c = curve(&[9, 0, 0, 3, 0, 0, 1], &[]);
        let r = check_local_at_3(&c).unwrap();
        assert!(!r.smooth);
    }
}
