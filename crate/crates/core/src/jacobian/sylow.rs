//! Exact Jacobian orders from the Frobenius characteristic polynomial, and
//! 3-Sylow subgroups by seeded random sampling: abelian invariants, the
//! 3-torsion subgroup, and quadratic-extension descent for models whose
//! points at infinity are not rational.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curves::{is_smooth_genus2, lift_poly, HyperellipticModel};
use crate::error::{Error, Result};
use crate::gf::{field_make, FieldCtx, ZPoly};

use super::divisor::{shift_to_degree5, Divisor, Jacobian};

/// #Jac(F_{q^k}) = det(I - C^k) for the companion matrix C of the degree-4
/// Frobenius charpoly over F_q; exact arbitrary-precision integers.
pub fn jac_order_from_charpoly(q_poly: &ZPoly, k: u32) -> BigUint {
    assert_eq!(q_poly.degree(), 4);
    assert!(q_poly.is_monic());
    // companion matrix of x^4 + a3 x^3 + a2 x^2 + a1 x + a0
    let a: Vec<BigInt> = (0..4).map(|i| q_poly.coeff(i)).collect();
    let mut c = [[BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
        [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()]];
    for i in 1..4 {
        c[i][i - 1] = BigInt::one();
    }
    for i in 0..4 {
        c[i][3] = -a[i].clone();
    }
    // C^k
    let mut acc = identity4();
    let mut base = c;
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    // det(I - C^k)
    let mut m = acc;
    for (i, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = -x.clone();
            if i == j {
                *x += 1;
            }
        }
    }
    let det = det4(&m);
    assert!(det > BigInt::zero(), "Jacobian order must be positive");
    det.to_biguint().unwrap()
}

type Mat4Z = [[BigInt; 4]; 4];

fn identity4() -> Mat4Z {
    let mut m: Mat4Z = Default::default();
    for i in 0..4 {
        m[i][i] = BigInt::one();
    }
    m
}

fn mat_mul(a: &Mat4Z, b: &Mat4Z) -> Mat4Z {
    let mut out: Mat4Z = Default::default();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = BigInt::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += &a[i][k] * &bk[j];
            }
            out[i][j] = acc;
        }
    }
    out
}

fn det4(m: &Mat4Z) -> BigInt {
    // cofactor expansion along the first row
    let minor = |m: &Mat4Z, skip_r: usize, skip_c: usize| -> [[BigInt; 3]; 3] {
        let mut out: [[BigInt; 3]; 3] = Default::default();
        let mut r = 0;
        for i in 0..4 {
            if i == skip_r {
                continue;
            }
            let mut c = 0;
            for j in 0..4 {
                if j == skip_c {
                    continue;
                }
                out[r][c] = m[i][j].clone();
                c += 1;
            }
            r += 1;
        }
        out
    };
    let det3 = |m: &[[BigInt; 3]; 3]| -> BigInt {
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    };
    let mut acc = BigInt::zero();
    for j in 0..4 {
        let term = &m[0][j] * det3(&minor(m, 0, j));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Explicit 3-Sylow data of Jac(F_{q^k}).
#[derive(Debug)]
pub struct SylowData {
    /// Exponents e_1 >= e_2 >= ... with the Sylow isomorphic to
    /// prod Z/3^{e_i}; empty when v_3(N) = 0.
    pub invariants: Vec<u32>,
    /// All 3^{v_3(N)} Sylow elements (for the working Jacobian engine).
    pub elements: Vec<Divisor>,
    /// The subgroup of elements killed by 3 and its rank.
    pub three_torsion: Vec<Divisor>,
    pub torsion_rank: u32,
}

/// Build the Sylow subgroup of a Jacobian whose full group order is `n`.
pub fn sylow3(jac: &Jacobian, n: &BigUint, seed: u64, budget: usize) -> Result<SylowData> {
    let three = BigUint::from(3u32);
    let mut v3 = 0u32;
    let mut cof = n.clone();
    while (&cof % &three).is_zero() {
        cof /= &three;
        v3 += 1;
    }
    let target = three.pow(v3).to_usize().ok_or_else(|| Error::diagnostic("Sylow too large"))?;
    let mut set: HashMap<(Vec<u64>, Vec<u64>, i32), Divisor> = HashMap::new();
    let zero = jac.zero();
    set.insert(zero.key(), zero);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0usize;
    while set.len() < target {
        tries += 1;
        if tries > budget {
            return Err(Error::diagnostic(format!(
                "Sylow sampling budget exhausted at {}/{target}",
                set.len()
            )));
        }
        let d = jac.random_divisor(&mut rng);
        let s = jac.smul(&d, &cof);
        if set.contains_key(&s.key()) {
            continue;
        }
        // set is a subgroup; extend it to set + <s> by translating with the
        // multiples of s that are not yet covered
        let mut shifts = Vec::new();
        let mut js = s.clone();
        while !set.contains_key(&js.key()) {
            shifts.push(js.clone());
            js = jac.add(&js, &s);
        }
        let base: Vec<Divisor> = set.values().cloned().collect();
        for sh in shifts {
            for b in &base {
                let e = jac.add(b, &sh);
                set.insert(e.key(), e);
            }
        }
        debug_assert!(target % set.len() == 0);
    }
    let elements: Vec<Divisor> = set.into_values().collect();
    finish_sylow(jac, elements, v3)
}

fn finish_sylow(jac: &Jacobian, elements: Vec<Divisor>, v3: u32) -> Result<SylowData> {
    // order-dividing-3^j counts give the abelian invariants
    let mut counts = vec![0usize; v3 as usize + 1];
    let mut three_torsion = Vec::new();
    for d in &elements {
        let mut j = 0u32;
        let mut cur = d.clone();
        while !jac.is_zero(&cur) {
            cur = jac.smul_u64(&cur, 3);
            j += 1;
        }
        for jj in j..=v3 {
            counts[jj as usize] += 1;
        }
        if j <= 1 {
            three_torsion.push(d.clone());
        }
    }
    // r_j := #{invariant factors with exponent >= j} = log_3(counts[j]/counts[j-1])
    let mut survivors = Vec::new();
    for j in 1..=v3 as usize {
        debug_assert!(counts[j] % counts[j - 1] == 0);
        let mut r = counts[j] / counts[j - 1];
        let mut log = 0u32;
        while r > 1 {
            debug_assert_eq!(r % 3, 0);
            r /= 3;
            log += 1;
        }
        survivors.push(log);
    }
    let mut exps = Vec::new();
    if let Some(&rank) = survivors.first() {
        for i in 0..rank {
            exps.push(survivors.iter().filter(|&&c| c > i).count() as u32);
        }
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let torsion_rank = exps.len() as u32;
    debug_assert_eq!(3usize.pow(torsion_rank), three_torsion.len());
    debug_assert_eq!(exps.iter().sum::<u32>(), v3);
    Ok(SylowData {
        invariants: exps,
        elements,
        three_torsion,
        torsion_rank,
    })
}

/// Normalize a prime-field model so its Jacobian engine exists over prime-
/// field extensions: characteristic-2 weighted-degree-6 models with h3 = 0
/// are shifted to degree 5, and odd-characteristic models are rewritten as
/// y^2 = g by completing the square (both isomorphisms over the base field).
pub fn normalize_model(m: &HyperellipticModel, prime: &FieldCtx) -> Result<HyperellipticModel> {
    if !is_smooth_genus2(m, prime) {
        return Err(Error::usage("Sylow machinery requires a smooth model"));
    }
    if prime.characteristic() == 2 {
        if m.weighted_degree() == 6 && m.h.coeff(3) == 0 {
            let (f, h) = shift_to_degree5(&m.f, &m.h, prime)?;
            return Ok(HyperellipticModel { f, h });
        }
        return Ok(m.clone());
    }
    let inv4 = prime.inv(prime.scalar(4 % prime.characteristic())).unwrap();
    let g = m
        .f
        .add(&m.h.mul(&m.h, prime).scale(inv4, prime), prime);
    Ok(HyperellipticModel {
        f: g,
        h: crate::gf::FPoly::zero(),
    })
}

/// Result of [`sylow3_structure`]: abelian invariants plus torsion rank over
/// the requested extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowSummary {
    pub invariants: Vec<u32>,
    pub torsion_rank: u32,
}

/// Abelian invariants of the 3-Sylow of Jac(F_{p^k}) for a smooth model over
/// the prime field, by seeded sampling. Models that are inert at infinity
/// over F_{p^k} are handled by computing over F_{p^{2k}} and taking the
/// Frobenius-fixed subgroup.
pub fn sylow3_structure(
    m: &HyperellipticModel,
    prime: &FieldCtx,
    k: u32,
    seed: u64,
) -> Result<SylowSummary> {
    let m = normalize_model(m, prime)?;
    let n = {
        let s = crate::curves::frobenius_charpoly(&m, prime)?;
        jac_order_from_charpoly(&s.charpoly(), k)
    };
    let ctx = field_make(prime.characteristic(), k)?;
    let f = lift_poly(&m.f, prime, &ctx);
    let h = lift_poly(&m.h, prime, &ctx);
    match Jacobian::new(f, h, &ctx) {
        Ok(jac) => {
            let data = sylow3(&jac, &n, seed, 4096)?;
            Ok(SylowSummary {
                invariants: data.invariants,
                torsion_rank: data.torsion_rank,
            })
        }
        Err(_) => {
            // inert at infinity: descend from the quadratic extension
            let (_, fixed) = sylow3_descent(&m, prime, k, seed)?;
            Ok(fixed)
        }
    }
}

/// Sylow of Jac(F_{p^k}) as the Frobenius-fixed subgroup of the Sylow over
/// F_{p^{2k}}; returns (extension data, fixed-subgroup summary).
fn sylow3_descent(
    m: &HyperellipticModel,
    prime: &FieldCtx,
    k: u32,
    seed: u64,
) -> Result<(SylowData, SylowSummary)> {
    let ctx = field_make(prime.characteristic(), 2 * k)?;
    let f = lift_poly(&m.f, prime, &ctx);
    let h = lift_poly(&m.h, prime, &ctx);
    let jac = Jacobian::new(f, h, &ctx)
        .map_err(|e| Error::diagnostic(format!("quadratic extension still unusable: {e}")))?;
    let s = crate::curves::frobenius_charpoly(m, prime)?;
    let n2 = jac_order_from_charpoly(&s.charpoly(), 2 * k);
    let data = sylow3(&jac, &n2, seed, 4096)?;
    // fixed subgroup under x -> x^(p^k)
    let fixed: Vec<Divisor> = data
        .elements
        .iter()
        .filter(|d| jac.frobenius_divisor(d, k) == **d)
        .cloned()
        .collect();
    let fixed_set: HashSet<_> = fixed.iter().map(|d| d.key()).collect();
    debug_assert!(fixed_set.len() == fixed.len());
    let mut v3 = 0u32;
    let mut sz = fixed.len();
    while sz > 1 {
        debug_assert_eq!(sz % 3, 0);
        sz /= 3;
        v3 += 1;
    }
    let summary = finish_sylow(&jac, fixed, v3)?;
    Ok((
        data,
        SylowSummary {
            invariants: summary.invariants,
            torsion_rank: summary.torsion_rank,
        },
    ))
}
