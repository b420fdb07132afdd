//! Genus-2 Weierstrass models y^2 + h(x) y = f(x) over small finite fields
//! and over the integers: smoothness, point counting, Frobenius
//! characteristic polynomials, ordinariness/distinguishedness, rational
//! Weierstrass points, reduction mod p, and the enumeration of ordinary
//! weight-one Weil polynomials.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf::{poly_roots, zpoly_is_squarefree, FPoly, FieldCtx, ZPoly};

/// A (possibly generalized) Weierstrass model over a finite field.
#[derive(Clone, Debug)]
pub struct HyperellipticModel {
    pub f: FPoly,
    pub h: FPoly,
}

/// A Weierstrass model with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralModel {
    pub f: ZPoly,
    pub h: ZPoly,
}

impl HyperellipticModel {
    pub fn new(f: FPoly, h: FPoly, _ctx: &FieldCtx) -> Result<Self> {
        if f.degree() > 6 || h.degree() > 3 {
            return Err(Error::parameter("degree bounds: deg f <= 6, deg h <= 3"));
        }
        Ok(HyperellipticModel { f, h })
    }

    /// max(2 deg h, deg f); the weighted degree governing the points at
    /// infinity. Negative degrees count as unbounded-below.
    pub fn weighted_degree(&self) -> i64 {
        (2 * self.h.degree()).max(self.f.degree())
    }
}

impl IntegralModel {
    pub fn new(f: ZPoly, h: ZPoly) -> Result<Self> {
        if f.degree() > 6 || h.degree() > 3 {
            return Err(Error::parameter("degree bounds: deg f <= 6, deg h <= 3"));
        }
        Ok(IntegralModel { f, h })
    }

    /// The odd-characteristic form 4f + h^2 obtained by completing the square.
    pub fn completed_square(&self) -> ZPoly {
        let four_f = ZPoly::new(self.f.coeffs().iter().map(|c| c * 4).collect());
        four_f.add(&self.h.mul(&self.h))
    }

    /// Coefficient-wise reduction mod p.
    pub fn reduce_mod_p(&self, p: u8, ctx: &FieldCtx) -> Result<HyperellipticModel> {
        assert_eq!(ctx.characteristic(), p);
        let f = FPoly::from_scalars(&self.f.reduce_mod(p), ctx);
        let h = FPoly::from_scalars(&self.h.reduce_mod(p), ctx);
        HyperellipticModel::new(f, h, ctx)
    }
}

/// Point counts and the degree-4 Frobenius characteristic polynomial of a
/// smooth genus-2 model over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSummary {
    pub q: u64,
    pub n1: u64,
    pub n2: u64,
    /// x^4 + a x^3 + b x^2 + qa x + q^2
    pub a: i64,
    pub b: i64,
    pub ordinary: bool,
    pub distinguished: bool,
}

impl FrobeniusSummary {
    pub fn charpoly(&self) -> ZPoly {
        let q = self.q as i64;
        ZPoly::from_i64(&[q * q, q * self.a, self.b, self.a, 1])
    }
}

/// True iff the model defines a smooth projective genus-2 curve.
///
/// Affine smoothness is decided by base-field gcds; the points at infinity
/// come from the second chart of the weighted closure (two points when the
/// leading form splits, one when the weighted degree is 5 or the infinite
/// point is a ramification point).
pub fn is_smooth_genus2(m: &HyperellipticModel, ctx: &FieldCtx) -> bool {
    let d = m.weighted_degree();
    if d != 5 && d != 6 {
        return false;
    }
    if ctx.characteristic() == 2 {
        smooth_affine_char2(m, ctx) && smooth_infinity_char2(m, ctx)
    } else {
        // odd characteristic: complete the square; y^2 = g with g = f + h^2/4
        let g = completed_square_field(m, ctx);
        let dg = g.degree();
        if dg != 5 && dg != 6 {
            return false;
        }
        let gp = g.derivative(ctx);
        if gp.is_zero() {
            return false; // perfect p-th power, not squarefree
        }
        g.gcd(&gp, ctx).degree() == 0
    }
}

fn completed_square_field(m: &HyperellipticModel, ctx: &FieldCtx) -> FPoly {
    // f + h^2 / 4; in char 3, 1/4 = 1
    debug_assert_ne!(ctx.characteristic(), 2);
    let inv4 = ctx.inv(ctx.scalar(4 % ctx.characteristic())).unwrap();
    m.f.add(&m.h.mul(&m.h, ctx).scale(inv4, ctx), ctx)
}

fn smooth_affine_char2(m: &HyperellipticModel, ctx: &FieldCtx) -> bool {
    let fp = m.f.derivative(ctx);
    if m.h.is_zero() {
        // singular iff f' has a root in the closure (or f' = 0)
        return fp.degree() == 0;
    }
    // singular at x0 iff h(x0) = 0 and h'(x0)^2 f(x0) = f'(x0)^2
    let hp = m.h.derivative(ctx);
    let r = hp
        .mul(&hp, ctx)
        .mul(&m.f, ctx)
        .add(&fp.mul(&fp, ctx), ctx);
    if r.is_zero() {
        return m.h.degree() == 0;
    }
    m.h.gcd(&r, ctx).degree() == 0
}

fn smooth_infinity_char2(m: &HyperellipticModel, ctx: &FieldCtx) -> bool {
    let d = m.weighted_degree();
    if d == 5 {
        return true;
    }
    // d = 6; chart v^2 + h~(u) v = f~(u) at u = 0
    let h3 = m.h.coeff(3);
    if h3 != 0 {
        return true; // dv-partial nonzero at both points
    }
    // ramified infinite point: need h2^2 f6 != f5^2
    let h2 = m.h.coeff(2);
    let f6 = m.f.coeff(6);
    let f5 = m.f.coeff(5);
    ctx.mul(ctx.mul(h2, h2), f6) != ctx.mul(f5, f5)
}

/// Number of points at infinity on the smooth model over the context field.
pub fn points_at_infinity(m: &HyperellipticModel, ctx: &FieldCtx) -> u64 {
    if ctx.characteristic() == 2 {
        if m.weighted_degree() == 5 {
            return 1;
        }
        let h3 = m.h.coeff(3);
        let f6 = m.f.coeff(6);
        if h3 == 0 {
            1 // single ramified point, sqrt(f6) always rational
        } else {
            // v^2 + h3 v + f6: two points iff Tr(f6 / h3^2) = 0
            let w = ctx
                .div(f6, ctx.mul(h3, h3))
                .expect("h3 nonzero");
            if ctx.trace(w) == 0 {
                2
            } else {
                0
            }
        }
    } else {
        // odd characteristic: the infinity structure is that of y^2 = g for
        // the completed square g (whose degree can drop below the weighted
        // degree when the leading terms cancel)
        let g = completed_square_field(m, ctx);
        if g.degree() == 5 {
            return 1;
        }
        let g6 = g.coeff(6);
        debug_assert_ne!(g6, 0);
        if ctx.sqrt(g6).is_some() {
            2
        } else {
            0
        }
    }
}

/// Exact number of projective points of the smooth model over the extension
/// of degree `ext` of the context field's prime field. The model must be
/// given over the prime field.
pub fn count_points(m: &HyperellipticModel, prime_ctx: &FieldCtx, ext: u32) -> Result<u64> {
    if !is_smooth_genus2(m, prime_ctx) {
        return Err(Error::usage("point count on a non-smooth model"));
    }
    let ctx = crate::gf::field_make(prime_ctx.characteristic(), ext)?;
    let f = lift_poly(&m.f, prime_ctx, &ctx);
    let h = lift_poly(&m.h, prime_ctx, &ctx);
    let lifted = HyperellipticModel { f, h };
    Ok(count_points_direct(&lifted, &ctx))
}

/// Lift a polynomial with prime-field coefficients into an extension.
pub fn lift_poly(p: &FPoly, from: &FieldCtx, to: &FieldCtx) -> FPoly {
    debug_assert_eq!(from.characteristic(), to.characteristic());
    debug_assert_eq!(from.degree(), 1, "lift from the prime field only");
    FPoly::new(
        p.coeffs().iter().map(|&c| to.scalar(c as u8)).collect(),
        to,
    )
}

/// Count points over the field of the given context (model already lifted).
pub fn count_points_direct(m: &HyperellipticModel, ctx: &FieldCtx) -> u64 {
    let mut n = points_at_infinity(m, ctx);
    if ctx.characteristic() == 2 {
        for x in ctx.elements() {
            let hx = m.h.eval(x, ctx);
            let fx = m.f.eval(x, ctx);
            if hx == 0 {
                n += 1; // unique y = sqrt(fx)
            } else {
                // y = h z; z^2 + z = f / h^2
                let w = ctx.div(fx, ctx.mul(hx, hx)).unwrap();
                if ctx.trace(w) == 0 {
                    n += 2;
                }
            }
        }
    } else {
        let g = completed_square_field(m, ctx);
        for x in ctx.elements() {
            let gx = g.eval(x, ctx);
            if gx == 0 {
                n += 1;
            } else if ctx.sqrt(gx).is_some() {
                n += 2;
            }
        }
    }
    n
}

/// Frobenius characteristic polynomial of a smooth genus-2 model over the
/// prime field F_p, from point counts over F_p and F_{p^2}.
pub fn frobenius_charpoly(m: &HyperellipticModel, prime_ctx: &FieldCtx) -> Result<FrobeniusSummary> {
    let p = prime_ctx.characteristic();
    let n1 = count_points(m, prime_ctx, 1)?;
    let n2 = count_points(m, prime_ctx, 2)?;
    Ok(summary_from_counts(p as u64, n1, n2))
}

/// Assemble the summary from N1, N2 via Newton's identities and the
/// functional equation.
pub fn summary_from_counts(q: u64, n1: u64, n2: u64) -> FrobeniusSummary {
    let s1 = q as i64 + 1 - n1 as i64;
    let s2 = (q * q) as i64 + 1 - n2 as i64;
    let a = -s1;
    let b = (s1 * s1 - s2) / 2;
    debug_assert_eq!((s1 * s1 - s2) % 2, 0);
    let charpoly = ZPoly::from_i64(&[(q * q) as i64, q as i64 * a, b, a, 1]);
    let ordinary = num_integer::Integer::gcd(&b, &(q_char(q) as i64)) == 1;
    let distinguished = zpoly_is_squarefree(&charpoly).expect("nonzero quartic");
    FrobeniusSummary {
        q,
        n1,
        n2,
        a,
        b,
        ordinary,
        distinguished,
    }
}

fn q_char(q: u64) -> u64 {
    if q % 2 == 0 {
        2
    } else {
        3
    }
}

/// Ordinary: the middle coefficient is coprime to the characteristic.
pub fn is_ordinary(s: &FrobeniusSummary) -> bool {
    s.ordinary
}

/// p-distinguished: the characteristic polynomial is squarefree over Z.
pub fn is_p_distinguished(s: &FrobeniusSummary) -> bool {
    s.distinguished
}

/// Is x^4 + ax^3 + bx^2 + pax + p^2 a perfect square of a quadratic?
pub fn charpoly_is_perfect_square(a: i64, b: i64, q: u64) -> bool {
    // (x^2 + cx + d)^2 = x^4 + 2c x^3 + (c^2 + 2d) x^2 + 2cd x + d^2
    if a % 2 != 0 {
        return false;
    }
    let c = a / 2;
    let rem = b - c * c;
    if rem % 2 != 0 {
        return false;
    }
    let d = rem / 2;
    d * d == (q * q) as i64 && 2 * c * d == q as i64 * a
}

/// Whether the (odd-characteristic or integral) model has a rational
/// Weierstrass point: a root of the squared form in the base field, or
/// degree 5 (point at infinity).
pub fn has_rational_weierstrass_point_field(
    m: &HyperellipticModel,
    ctx: &FieldCtx,
) -> Result<bool> {
    if ctx.characteristic() == 2 {
        return Err(Error::parameter(
            "rational Weierstrass points are not defined for char-2 models here",
        ));
    }
    let g = completed_square_field(m, ctx);
    if g.degree() == 5 {
        return Ok(true);
    }
    Ok(!poly_roots(&g, ctx)?.is_empty())
}

/// Same predicate for an integral model over Q (odd-characteristic form).
pub fn has_rational_weierstrass_point_q(m: &IntegralModel) -> Result<bool> {
    let g = m.completed_square();
    if g.degree() == 5 {
        return Ok(true);
    }
    if g.is_zero() {
        return Err(Error::parameter("degenerate model"));
    }
    // rational roots of g: integer roots of the primitive part scaled; check
    // candidates p/q with p | g(0), q | lead via the rational root theorem.
    let g = crate::gf::zpoly_content_free(&g);
    let c0 = g.coeff(0);
    if c0.is_zero() {
        return Ok(true); // x = 0 is a root
    }
    let lead = g.leading();
    let num_divs = divisors(&c0.abs());
    let den_divs = divisors(&lead.abs());
    for n in &num_divs {
        for d in &den_divs {
            for sign in [1i64, -1] {
                // g(n/d) = 0 <=> sum g_i n^i d^(deg-i) = 0
                let mut acc = BigInt::zero();
                let deg = g.degree() as usize;
                for (i, c) in g.coeffs().iter().enumerate() {
                    let mut term = c.clone();
                    term *= n.pow(i as u32);
                    term *= BigInt::from(sign).pow(i as u32);
                    term *= d.pow((deg - i) as u32);
                    acc += term;
                }
                if acc.is_zero() {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // small-ish fixture coefficients; trial division is fine
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
        if out.len() > 4096 {
            break; // cap; huge leading coefficients only need small roots
        }
    }
    if out.is_empty() {
        out.push(BigInt::one());
    }
    out.sort();
    out.dedup();
    out
}

/// Exact validity test for an ordinary weight-one Weil polynomial
/// x^4 + ax^3 + bx^2 + pax + p^2: all roots on |z| = sqrt(p) and (b, p) = 1.
///
/// Via t = x + p/x the condition becomes: q(t) = t^2 + at + (b - 2p) has
/// both roots real in [-2 sqrt(p), 2 sqrt(p)], decided by exact integer sign
/// tests.
pub fn weil_poly_is_valid(a: i64, b: i64, p: u64) -> bool {
    if num_integer::Integer::gcd(&b, &(p as i64)) != 1 {
        return false;
    }
    let p = p as i64;
    // discriminant of q: a^2 - 4(b - 2p) >= 0
    let disc = a * a - 4 * (b - 2 * p);
    if disc < 0 {
        return false;
    }
    // q(2 sqrt p) = (b + 2p) + 2a sqrt p >= 0 and q(-2 sqrt p) = (b + 2p) - 2a sqrt p >= 0
    let x = b + 2 * p;
    for y in [2 * a, -2 * a] {
        // need x + y sqrt(p) >= 0
        let nonneg = if y >= 0 {
            x >= 0 || y * y * p >= x * x
        } else {
            x >= 0 && x * x >= y * y * p
        };
        if !nonneg {
            return false;
        }
    }
    // vertex -a/2 in [-2 sqrt p, 2 sqrt p]: a^2 <= 16 p
    a * a <= 16 * p
}

/// The complete sorted list of ordinary weight-one Weil polynomials for p,
/// as (a, b) pairs.
pub fn weil_poly_enumerate(p: u64) -> Vec<(i64, i64)> {
    assert!(p == 2 || p == 3);
    let mut out = Vec::new();
    // |a| <= 4 sqrt p and |b - 2p| <= 4p give safe scan bounds
    let amax = 4 * (p as i64);
    let bmax = 6 * (p as i64) + 1;
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            if weil_poly_is_valid(a, b, p) {
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Quadratic twist of an odd-characteristic model y^2 = g by the scalar c:
/// y^2 = c g(x) after renormalizing, realized as (f, h) = (c*g-ish, 0).
/// Used for exhaustive twist checks over F3.
pub fn quadratic_twist_odd(m: &HyperellipticModel, c: u64, ctx: &FieldCtx) -> HyperellipticModel {
    debug_assert_ne!(ctx.characteristic(), 2);
    let g = completed_square_field(m, ctx);
    HyperellipticModel {
        f: g.scale(c, ctx),
        h: FPoly::zero(),
    }
}
