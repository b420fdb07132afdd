//! The 3-Weil pairing on genus-2 Jacobians over binary fields, computed
//! exactly from explicit principal-divisor function chains.
//!
//! Works on imaginary models (one point at infinity). For a 3-torsion class
//! D we build a function with divisor 3(E_A + iota(E_R) - Z_c), where
//! A = D + R for a random R, Z_c is the pullback of a random monic
//! quadratic c(x), and the infinity parts cancel by the degree choice. All
//! evaluations reduce to resultants against degree-<=2 monic polynomials,
//! so no field extensions are needed, and in characteristic 2 no sign
//! corrections arise.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FPoly, FieldElem};

use super::divisor::{Divisor, Jacobian, ModelKind};

/// A factor of a function on the curve: a polynomial in x, or y - v(x).
#[derive(Clone, Debug)]
enum Factor {
    Poly(FPoly),
    Line(FPoly),
}

type Chain = Vec<(Factor, i32)>;

pub struct WeilContext<'a, 'b> {
    pub jac: &'b Jacobian<'a>,
}

impl<'a, 'b> WeilContext<'a, 'b> {
    pub fn new(jac: &'b Jacobian<'a>) -> Result<Self> {
        if jac.kind != ModelKind::Imaginary {
            return Err(Error::parameter("pairing requires an imaginary model"));
        }
        if jac.ctx.characteristic() != 2 {
            return Err(Error::parameter("pairing implemented for characteristic 2"));
        }
        Ok(WeilContext { jac })
    }

    /// Cantor addition that records the principal-divisor factors relating
    /// rep(d1) + rep(d2) to the reduced output: d1 + d2 = out + div(chain).
    fn add_with_chain(&self, d1: &Divisor, d2: &Divisor, chain: &mut Chain) -> Divisor {
        let jac = self.jac;
        let ctx = jac.ctx;
        // composition (re-derives the gcd chain to capture the stripped part)
        let (d0, a1, a2) = d1.u.xgcd(&d2.u, ctx);
        let sum = d1.v.add(&d2.v, ctx).add(&jac.h, ctx);
        let (d, b1, b2) = d0.xgcd(&sum, ctx);
        if d.degree() > 0 {
            chain.push((Factor::Poly(d.clone()), 1));
        }
        let s1 = b1.mul(&a1, ctx);
        let s2 = b1.mul(&a2, ctx);
        let s3 = b2;
        let u12 = d1.u.mul(&d2.u, ctx);
        let (mut u, rem) = u12.divrem(&d.mul(&d, ctx), ctx);
        debug_assert!(rem.is_zero());
        u = u.monic(ctx);
        let num = s1
            .mul(&d1.u, ctx)
            .mul(&d2.v, ctx)
            .add(&s2.mul(&d2.u, ctx).mul(&d1.v, ctx), ctx)
            .add(&s3.mul(&d1.v.mul(&d2.v, ctx).add(&jac.f, ctx), ctx), ctx);
        let (vbig, rem2) = num.divrem(&d, ctx);
        debug_assert!(rem2.is_zero());
        let mut v = vbig.rem(&u, ctx);
        // reduction steps, each contributing (y - v) / u_new
        while u.degree() > 2 {
            let numer = v
                .mul(&v, ctx)
                .add(&v.mul(&jac.h, ctx), ctx)
                .sub(&jac.f, ctx);
            let (upre, r3) = numer.divrem(&u, ctx);
            debug_assert!(r3.is_zero());
            let unew = upre.monic(ctx);
            chain.push((Factor::Line(v.clone()), 1));
            if unew.degree() > 0 {
                chain.push((Factor::Poly(unew.clone()), -1));
            }
            let vnew = jac.h.neg(ctx).sub(&v, ctx).rem(&unew, ctx);
            u = unew;
            v = vnew;
        }
        Divisor { u, v, n: 0 }
    }

    /// Chain with div(chain) = 3 rep(d) - rep(out), out = reduced(3 d).
    fn triple_chain(&self, d: &Divisor) -> (Divisor, Chain) {
        let mut chain = Chain::new();
        let d2 = self.add_with_chain(d, d, &mut chain);
        let d3 = self.add_with_chain(&d2, d, &mut chain);
        (d3, chain)
    }

    /// e_3(d1, d2) as an element of mu_3 in the working field; errors only
    /// if the randomized support separation keeps failing.
    pub fn pairing(&self, d1: &Divisor, d2: &Divisor, rng: &mut impl Rng) -> Result<FieldElem> {
        let jac = self.jac;
        debug_assert!(jac.is_zero(&jac.smul_u64(d1, 3)), "first argument not 3-torsion");
        debug_assert!(jac.is_zero(&jac.smul_u64(d2, 3)), "second argument not 3-torsion");
        'attempt: for _ in 0..64 {
            let (g1, f1) = match self.randomized_side(d1, rng) {
                Some(x) => x,
                None => continue,
            };
            let (g2, f2) = match self.randomized_side(d2, rng) {
                Some(x) => x,
                None => continue,
            };
            let e1 = match self.evaluate(&f1, &g2) {
                Some(x) => x,
                None => continue 'attempt,
            };
            let e2 = match self.evaluate(&f2, &g1) {
                Some(x) => x,
                None => continue 'attempt,
            };
            if e2 == 0 {
                continue;
            }
            let value = jac.ctx.div(e1, e2)?;
            if jac.ctx.pow(value, 3) != 1 {
                return Err(Error::diagnostic("pairing value not a cube root of unity"));
            }
            return Ok(value);
        }
        Err(Error::diagnostic("pairing support separation failed"))
    }

    /// Build (G, f) with div(f) = 3G, G affine and representing the class of
    /// `d`: G = E_A + iota(E_R) - Z_c.
    fn randomized_side(
        &self,
        d: &Divisor,
        rng: &mut impl Rng,
    ) -> Option<(EvalDivisor, Chain)> {
        let jac = self.jac;
        let ctx = jac.ctx;
        let r = jac.random_divisor(rng);
        if r.u.degree() != 2 {
            return None;
        }
        let a = jac.add(d, &r);
        if a.u.degree() != 2 {
            return None;
        }
        // random monic quadratic c
        let c = FPoly::new(
            vec![
                ctx.nth_element(rng.gen_range(0..ctx.order())),
                ctx.nth_element(rng.gen_range(0..ctx.order())),
                1,
            ],
            ctx,
        );
        let (s_a, chain_a) = self.triple_chain(&a);
        let (s_r, chain_r) = self.triple_chain(&r);
        if s_a != s_r {
            // holds exactly when d is 3-torsion
            return None;
        }
        let mut f: Chain = chain_a;
        for (factor, e) in chain_r {
            f.push((factor, -e));
        }
        f.push((Factor::Poly(r.u.clone()), 3));
        f.push((Factor::Poly(c.clone()), -3));
        let iota_v = jac.h.neg(ctx).sub(&r.v, ctx).rem(&r.u, ctx);
        let g = EvalDivisor {
            mumford_parts: vec![(a.u.clone(), a.v.clone(), 1), (r.u, iota_v, 1)],
            fiber_parts: vec![(c, -1)],
        };
        Some((g, f))
    }

    /// Evaluate a function chain at an affine divisor; None on any support
    /// collision (zero value or zero denominator).
    fn evaluate(&self, chain: &Chain, g: &EvalDivisor) -> Option<FieldElem> {
        let ctx = self.jac.ctx;
        let mut num = ctx.one();
        let mut den = ctx.one();
        for (factor, exp) in chain {
            let mut val = ctx.one();
            for (u, v, mult) in &g.mumford_parts {
                let base = match factor {
                    Factor::Poly(c) => resultant_monic_small(u, c, ctx),
                    Factor::Line(l) => {
                        let diff = v.sub(l, ctx);
                        resultant_monic_small(u, &diff, ctx)
                    }
                };
                if base == 0 {
                    return None;
                }
                let contrib = if *mult >= 0 {
                    ctx.pow(base, *mult as u64)
                } else {
                    ctx.inv(ctx.pow(base, (-mult) as u64)).ok()?
                };
                val = ctx.mul(val, contrib);
            }
            for (c, mult) in &g.fiber_parts {
                // both y-branches over the roots of c
                let base = match factor {
                    Factor::Poly(p) => {
                        let r = resultant_monic_small(c, p, ctx);
                        ctx.mul(r, r)
                    }
                    Factor::Line(l) => {
                        // product over branches: l^2 + h l - f at each root
                        let norm = l
                            .mul(l, ctx)
                            .add(&l.mul(&self.jac.h, ctx), ctx)
                            .sub(&self.jac.f, ctx);
                        resultant_monic_small(c, &norm, ctx)
                    }
                };
                if base == 0 {
                    return None;
                }
                let contrib = if *mult >= 0 {
                    ctx.pow(base, *mult as u64)
                } else {
                    ctx.inv(ctx.pow(base, (-mult) as u64)).ok()?
                };
                val = ctx.mul(val, contrib);
            }
            if *exp >= 0 {
                num = ctx.mul(num, ctx.pow(val, *exp as u64));
            } else {
                den = ctx.mul(den, ctx.pow(val, (-exp) as u64));
            }
        }
        if den == 0 {
            return None;
        }
        ctx.div(num, den).ok()
    }
}

/// An affine evaluation divisor: Mumford parts (u, v) with multiplicity,
/// plus full fibers over the roots of monic polynomials.
struct EvalDivisor {
    mumford_parts: Vec<(FPoly, FPoly, i32)>,
    fiber_parts: Vec<(FPoly, i32)>,
}

/// Product of c over the roots of the monic u with deg u <= 2.
fn resultant_monic_small(u: &FPoly, c: &FPoly, ctx: &crate::gf::FieldCtx) -> FieldElem {
    match u.degree() {
        d if d <= 0 => 1,
        1 => {
            // root is -u0
            c.eval(ctx.neg(u.coeff(0)), ctx)
        }
        2 => {
            let r = c.rem(u, ctx);
            let r0 = r.coeff(0);
            let r1 = r.coeff(1);
            // (r1 x1 + r0)(r1 x2 + r0) with x1+x2 = -u1, x1 x2 = u0
            let t1 = ctx.mul(ctx.mul(r1, r1), u.coeff(0));
            let t2 = ctx.mul(ctx.mul(r1, r0), u.coeff(1));
            let t3 = ctx.mul(r0, r0);
            ctx.add(ctx.sub(t1, t2), t3)
        }
        _ => unreachable!("evaluation divisors have degree <= 2"),
    }
}

/// Gram matrix of the 3-Weil pairing on a basis of Jac[3], with entries in
/// F3 via the discrete log against a fixed primitive cube root of unity.
pub fn weil_pairing_gram(
    wc: &WeilContext,
    basis: &[Divisor; 4],
    rng: &mut impl Rng,
) -> Result<crate::sympgroups::Mat4F3> {
    let ctx = wc.jac.ctx;
    let q = ctx.order();
    assert_eq!((q - 1) % 3, 0, "working field must contain mu_3");
    // deterministic primitive cube root of unity
    let zeta = (2..q)
        .map(|i| ctx.pow(ctx.nth_element(i), (q - 1) / 3))
        .find(|&z| z != 1)
        .ok_or_else(|| Error::diagnostic("no cube root of unity found"))?;
    let zeta2 = ctx.mul(zeta, zeta);
    let dlog = |v: FieldElem| -> Result<u8> {
        if v == 1 {
            Ok(0)
        } else if v == zeta {
            Ok(1)
        } else if v == zeta2 {
            Ok(2)
        } else {
            Err(Error::diagnostic("pairing value outside mu_3"))
        }
    };
    let mut m = [[0u8; 4]; 4];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let e = wc.pairing(&basis[i], &basis[j], rng)?;
            let x = dlog(e)?;
            m[i][j] = x;
            m[j][i] = (3 - x) % 3;
        }
    }
    Ok(crate::sympgroups::Mat4F3(m))
}
