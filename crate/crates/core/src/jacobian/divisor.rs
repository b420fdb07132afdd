//! Cantor group law on genus-2 Jacobians in Mumford representation, in the
//! unified form y^2 + h(x) y = f(x) (characteristic 2 with h != 0 and odd
//! characteristic alike).
//!
//! Two engines share the code path:
//!  * imaginary models (weighted degree 5: one point at infinity) use the
//!    classic compose/reduce loop;
//!  * split real models (degree 6 whose two points at infinity are rational)
//!    use balanced representatives (u, v, n) carrying the multiplicity of
//!    the first infinite point, with reduction steps adapted to either
//!    infinite point and a final balancing walk.
//!
//! Models whose points at infinity are conjugate (inert) are rejected here;
//! callers work over the quadratic extension and descend.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{FPoly, FieldCtx, FieldElem};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelKind {
    /// One rational point at infinity (weighted degree 5).
    Imaginary,
    /// Two rational points at infinity (split degree 6).
    RealSplit,
}

/// A genus-2 Jacobian over a fixed finite field.
pub struct Jacobian<'a> {
    pub ctx: &'a FieldCtx,
    pub f: FPoly,
    pub h: FPoly,
    pub kind: ModelKind,
    /// Split models: polynomial branch of y at the first infinite point
    /// (degree 3, with deg(vplus^2 + h vplus - f) <= 2).
    pub vplus: FPoly,
    pub vminus: FPoly,
}

/// Reduced balanced Mumford representative. For imaginary models `n` is 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Divisor {
    pub u: FPoly,
    pub v: FPoly,
    pub n: i32,
}

impl Divisor {
    pub fn key(&self) -> (Vec<FieldElem>, Vec<FieldElem>, i32) {
        (self.u.coeffs().to_vec(), self.v.coeffs().to_vec(), self.n)
    }
}

impl<'a> Jacobian<'a> {
    /// Build the engine for a smooth genus-2 model over the context field.
    ///
    /// Weighted-degree-6 models must be split at infinity; characteristic-2
    /// models with h3 = 0 should be shifted to degree 5 beforehand (see
    /// [`crate::jacobian::shift_to_degree5`]).
    pub fn new(f: FPoly, h: FPoly, ctx: &'a FieldCtx) -> Result<Jacobian<'a>> {
        let d = (2 * h.degree()).max(f.degree());
        match d {
            5 => Ok(Jacobian {
                ctx,
                f,
                h,
                kind: ModelKind::Imaginary,
                vplus: FPoly::zero(),
                vminus: FPoly::zero(),
            }),
            6 => {
                let vplus = branch_at_infinity(&f, &h, ctx)?;
                let vminus = h.neg(ctx).sub(&vplus, ctx);
                Ok(Jacobian {
                    ctx,
                    f,
                    h,
                    kind: ModelKind::RealSplit,
                    vplus,
                    vminus,
                })
            }
            _ => Err(Error::parameter("weighted degree must be 5 or 6")),
        }
    }

    pub fn zero(&self) -> Divisor {
        Divisor {
            u: FPoly::one(),
            v: FPoly::zero(),
            n: if self.kind == ModelKind::RealSplit { 1 } else { 0 },
        }
    }

    pub fn is_zero(&self, d: &Divisor) -> bool {
        *d == self.zero()
    }

    /// The class of a single affine point; for split models `branch` selects
    /// which infinite point carries the balancing weight.
    pub fn point_divisor(&self, x: FieldElem, y: FieldElem, branch: bool) -> Divisor {
        let ctx = self.ctx;
        debug_assert_eq!(
            ctx.add(ctx.mul(y, y), ctx.mul(self.h.eval(x, ctx), y)),
            self.f.eval(x, ctx)
        );
        let u = FPoly::new(vec![ctx.neg(x), 1], ctx);
        let v = FPoly::constant(y);
        let n = if self.kind == ModelKind::RealSplit {
            if branch {
                1
            } else {
                0
            }
        } else {
            0
        };
        Divisor { u, v, n }
    }

    /// The class of the divisor difference of the two infinite points
    /// (split models): [inf+ - inf-].
    pub fn infinity_difference(&self) -> Divisor {
        debug_assert_eq!(self.kind, ModelKind::RealSplit);
        Divisor {
            u: FPoly::one(),
            v: FPoly::zero(),
            n: 2,
        }
    }

    pub fn neg(&self, d: &Divisor) -> Divisor {
        let ctx = self.ctx;
        let v = self.h.neg(ctx).sub(&d.v, ctx).rem(&d.u, ctx);
        let n = match self.kind {
            ModelKind::Imaginary => 0,
            ModelKind::RealSplit => 2 - d.u.degree() as i32 - d.n,
        };
        Divisor {
            u: d.u.clone(),
            v,
            n,
        }
    }

    /// Cantor composition: semi-reduced (u, v) plus the count of stripped
    /// conjugate pairs.
    fn compose(&self, d1: &Divisor, d2: &Divisor) -> (FPoly, FPoly, i64) {
        let ctx = self.ctx;
        let (u1, v1) = (&d1.u, &d1.v);
        let (u2, v2) = (&d2.u, &d2.v);
        if u1.degree() == 0 {
            return (u2.clone(), v2.clone(), 0);
        }
        if u2.degree() == 0 {
            return (u1.clone(), v1.clone(), 0);
        }
        let (d0, a1, a2) = u1.xgcd(u2, ctx);
        let sum = v1.add(v2, ctx).add(&self.h, ctx);
        let (d, b1, b2) = d0.xgcd(&sum, ctx);
        // d = b1 (a1 u1 + a2 u2) + b2 (v1 + v2 + h)
        let s1 = b1.mul(&a1, ctx);
        let s2 = b1.mul(&a2, ctx);
        let s3 = b2;
        let u12 = u1.mul(u2, ctx);
        let (u_big, rem) = u12.divrem(&d.mul(&d, ctx), ctx);
        debug_assert!(rem.is_zero());
        let num = s1
            .mul(u1, ctx)
            .mul(v2, ctx)
            .add(&s2.mul(u2, ctx).mul(v1, ctx), ctx)
            .add(&s3.mul(&v1.mul(v2, ctx).add(&self.f, ctx), ctx), ctx);
        let (v_big, rem2) = num.divrem(&d, ctx);
        debug_assert!(rem2.is_zero());
        let u_monic = u_big.monic(ctx);
        let v_red = v_big.rem(&u_monic, ctx);
        (u_monic, v_red, d.degree())
    }

    /// One reduction step for imaginary models.
    fn reduce_step_imaginary(&self, u: &FPoly, v: &FPoly) -> (FPoly, FPoly) {
        let ctx = self.ctx;
        let num = v
            .mul(v, ctx)
            .add(&v.mul(&self.h, ctx), ctx)
            .sub(&self.f, ctx);
        let (upre, rem) = num.divrem(u, ctx);
        debug_assert!(rem.is_zero());
        let unew = upre.monic(ctx);
        let vnew = self.h.neg(ctx).sub(v, ctx).rem(&unew, ctx);
        (unew, vnew)
    }

    /// One reduction step for split models, adapted to the infinite point
    /// selected by `toward_plus`. Input and output are in the bookkeeping
    /// form D = div(u, v) + n inf+ + m inf- - k Dinf.
    #[allow(clippy::too_many_arguments)]
    fn reduce_step_split(
        &self,
        u: &FPoly,
        v: &FPoly,
        n: i64,
        m: i64,
        k: i64,
        toward_plus: bool,
    ) -> (FPoly, FPoly, i64, i64, i64) {
        let ctx = self.ctx;
        let vt = if toward_plus { &self.vplus } else { &self.vminus };
        // v~ = V_t + ((v - V_t) mod u)
        let vtil = vt.add(&v.sub(vt, ctx).rem(u, ctx), ctx);
        let num = vtil
            .mul(&vtil, ctx)
            .add(&vtil.mul(&self.h, ctx), ctx)
            .sub(&self.f, ctx);
        let (upre, rem) = num.divrem(u, ctx);
        debug_assert!(rem.is_zero(), "semi-reduced invariant");
        let unew = upre.monic(ctx);
        let vnew = self.h.neg(ctx).sub(&vtil, ctx).rem(&unew, ctx);
        // pole orders of (y - v~) at the two infinite points
        let r_def = self.residual_degree();
        let wp = vtil.sub(&self.vplus, ctx);
        let wm = vtil.sub(&self.vminus, ctx);
        let ord_plus = if wp.is_zero() { 3 - r_def } else { -wp.degree() };
        let ord_minus = if wm.is_zero() { 3 - r_def } else { -wm.degree() };
        debug_assert_eq!(ord_plus + ord_minus, -num.degree());
        (
            unew,
            vnew,
            n - ord_plus,
            m - ord_minus,
            k + upre.degree().max(0),
        )
    }

    /// deg(vplus^2 + h vplus - f) (at most 2 on a smooth split model).
    fn residual_degree(&self) -> i64 {
        let ctx = self.ctx;
        self.vplus
            .mul(&self.vplus, ctx)
            .add(&self.vplus.mul(&self.h, ctx), ctx)
            .sub(&self.f, ctx)
            .degree()
    }

    pub fn add(&self, d1: &Divisor, d2: &Divisor) -> Divisor {
        let (mut u, mut v, stripped) = self.compose(d1, d2);
        match self.kind {
            ModelKind::Imaginary => {
                while u.degree() > 2 {
                    let (unew, vnew) = self.reduce_step_imaginary(&u, &v);
                    u = unew;
                    v = vnew;
                }
                Divisor { u, v, n: 0 }
            }
            ModelKind::RealSplit => {
                let m1 = 2 - d1.u.degree() - d1.n as i64;
                let m2 = 2 - d2.u.degree() - d2.n as i64;
                let mut n = d1.n as i64 + d2.n as i64;
                let mut m = m1 + m2;
                let mut k = 2 - stripped;
                debug_assert_eq!(u.degree() + n + m, 2 * k);
                let mut guard = 0;
                loop {
                    // renormalize k to 1
                    let t = k - 1;
                    n -= t;
                    m -= t;
                    k = 1;
                    if u.degree() <= 2 && n >= 0 && m >= 0 {
                        break;
                    }
                    // choose the step direction: shrink excess n with an
                    // inf+ step, excess m with an inf- step
                    let toward_plus = if u.degree() > 2 { n >= m } else { m < 0 };
                    let (unew, vnew, nnew, mnew, knew) =
                        self.reduce_step_split(&u, &v, n, m, k, toward_plus);
                    u = unew;
                    v = vnew;
                    n = nnew;
                    m = mnew;
                    k = knew;
                    guard += 1;
                    assert!(guard < 64, "balancing did not terminate");
                }
                debug_assert_eq!(u.degree() + n + m, 2);
                Divisor {
                    u,
                    v,
                    n: n as i32,
                }
            }
        }
    }

    pub fn sub(&self, d1: &Divisor, d2: &Divisor) -> Divisor {
        self.add(d1, &self.neg(d2))
    }

    pub fn smul(&self, d: &Divisor, e: &BigUint) -> Divisor {
        let mut acc = self.zero();
        if e.is_zero() {
            return acc;
        }
        let bits = e.bits();
        let mut base = d.clone();
        for i in 0..bits {
            if e.bit(i) {
                acc = self.add(&acc, &base);
            }
            if i + 1 < bits {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn smul_u64(&self, d: &Divisor, e: u64) -> Divisor {
        self.smul(d, &BigUint::from(e))
    }

    /// Is the Mumford pair a valid reduced representative?
    pub fn is_valid(&self, d: &Divisor) -> bool {
        let ctx = self.ctx;
        if d.u.is_zero() || d.u.degree() > 2 || d.u.leading() != 1 || d.v.degree() >= d.u.degree()
        {
            return false;
        }
        let check = d
            .v
            .mul(&d.v, ctx)
            .add(&d.v.mul(&self.h, ctx), ctx)
            .sub(&self.f, ctx)
            .rem(&d.u, ctx);
        if !check.is_zero() {
            return false;
        }
        match self.kind {
            ModelKind::Imaginary => d.n == 0,
            ModelKind::RealSplit => d.n >= 0 && (d.n as i64) <= 2 - d.u.degree(),
        }
    }

    /// Solve for y over the curve at x; returns up to two candidates.
    pub fn lift_x(&self, x: FieldElem) -> Vec<FieldElem> {
        let ctx = self.ctx;
        let hx = self.h.eval(x, ctx);
        let fx = self.f.eval(x, ctx);
        if ctx.characteristic() == 2 {
            if hx == 0 {
                vec![ctx.sqrt(fx).expect("char-2 sqrt")]
            } else {
                let w = ctx.div(fx, ctx.mul(hx, hx)).unwrap();
                match ctx.solve_artin_schreier(w) {
                    Some(z) => {
                        let y0 = ctx.mul(hx, z);
                        let y1 = ctx.add(y0, hx);
                        vec![y0, y1]
                    }
                    None => vec![],
                }
            }
        } else {
            // y^2 + h y - f = 0: discriminant h^2 + 4f
            let inv2 = ctx.inv(ctx.scalar(2)).unwrap();
            let disc = ctx.add(ctx.mul(hx, hx), ctx.mul(ctx.scalar(4 % 3), fx));
            match ctx.sqrt(disc) {
                Some(s) => {
                    let y0 = ctx.mul(ctx.sub(s, hx), inv2);
                    let y1 = ctx.mul(ctx.sub(ctx.neg(s), hx), inv2);
                    if y0 == y1 {
                        vec![y0]
                    } else {
                        vec![y0, y1]
                    }
                }
                None => vec![],
            }
        }
    }

    /// Deterministic random divisor from the seeded RNG: solve the curve
    /// equation v^2 + h v = f in the quadratic algebra F_q[x]/(u) for a
    /// random monic u, which reaches conjugate point pairs as well as
    /// rational ones (some curves have no affine rational points at all).
    pub fn random_divisor(&self, rng: &mut impl Rng) -> Divisor {
        let ctx = self.ctx;
        let mut guard = 0usize;
        loop {
            guard += 1;
            assert!(guard < 10_000, "divisor sampling failed");
            let deg2 = guard % 8 != 0; // mostly quadratic supports
            let u = if deg2 {
                FPoly::new(
                    vec![
                        ctx.nth_element(rng.gen_range(0..ctx.order())),
                        ctx.nth_element(rng.gen_range(0..ctx.order())),
                        1,
                    ],
                    ctx,
                )
            } else {
                FPoly::new(vec![ctx.nth_element(rng.gen_range(0..ctx.order())), 1], ctx)
            };
            let solutions = self.solve_v_mod_u(&u);
            if solutions.is_empty() {
                continue;
            }
            let v = solutions[rng.gen_range(0..solutions.len())].clone();
            let n = match self.kind {
                ModelKind::Imaginary => 0,
                ModelKind::RealSplit => {
                    if u.degree() == 2 {
                        0
                    } else {
                        rng.gen_range(0..2)
                    }
                }
            };
            let mut d = Divisor { u, v, n };
            debug_assert!(self.is_valid(&d));
            if self.kind == ModelKind::RealSplit && rng.gen_range(0..4) == 0 {
                d = self.add(&d, &self.infinity_difference());
            }
            return d;
        }
    }

    /// All v with deg v < deg u and v^2 + h v = f (mod u).
    fn solve_v_mod_u(&self, u: &FPoly) -> Vec<FPoly> {
        let ctx = self.ctx;
        let du = u.degree().max(0) as usize;
        let fbar = self.f.rem(u, ctx);
        let hbar = self.h.rem(u, ctx);
        if ctx.characteristic() == 2 {
            // y -> y^2 + h y is F2-linear on the algebra; solve by Gaussian
            // elimination over the F2-basis {b_j x^i}
            let k = ctx.degree() as usize;
            let width = k * du;
            let coords = |p: &FPoly| -> u64 {
                let mut bits = 0u64;
                for i in 0..du {
                    let c = p.coeff(i);
                    for j in 0..k {
                        if (c >> j) & 1 == 1 {
                            bits |= 1 << (i * k + j);
                        }
                    }
                }
                bits
            };
            // columns of the map
            let mut cols = Vec::with_capacity(width);
            for i in 0..du {
                for j in 0..k {
                    let mut coeffs = vec![0u64; du];
                    coeffs[i] = 1 << j;
                    let e = FPoly::new(coeffs, ctx);
                    let te = e
                        .mul(&e, ctx)
                        .add(&e.mul(&hbar, ctx), ctx)
                        .rem(u, ctx);
                    cols.push(coords(&te));
                }
            }
            // solve sum c_j col_j = coords(fbar) over F2
            let target = coords(&fbar);
            let mut pivot: Vec<(usize, u64, u64)> = Vec::new(); // (low bit, column, variables)
            for (jvar, col) in cols.iter().enumerate() {
                let mut c = *col;
                let mut vars = 1u64 << jvar;
                for &(bit, pc, pv) in &pivot {
                    if (c >> bit) & 1 == 1 {
                        c ^= pc;
                        vars ^= pv;
                    }
                }
                if c != 0 {
                    let bit = c.trailing_zeros() as usize;
                    pivot.push((bit, c, vars));
                    pivot.sort_by_key(|&(b, _, _)| b);
                }
            }
            let mut rhs = target;
            let mut sol = 0u64;
            for &(bit, pc, pv) in &pivot {
                if (rhs >> bit) & 1 == 1 {
                    rhs ^= pc;
                    sol ^= pv;
                }
            }
            if rhs != 0 {
                return Vec::new(); // no solution in this algebra
            }
            // one solution; the solution set is sol + kernel, but one
            // representative is enough for sampling
            let mut coeffs = vec![0u64; du];
            for i in 0..du {
                for j in 0..k {
                    if (sol >> (i * k + j)) & 1 == 1 {
                        coeffs[i] |= 1 << j;
                    }
                }
            }
            let v = FPoly::new(coeffs, ctx);
            debug_assert!(v
                .mul(&v, ctx)
                .add(&v.mul(&hbar, ctx), ctx)
                .sub(&fbar, ctx)
                .rem(u, ctx)
                .is_zero());
            vec![v]
        } else {
            // odd characteristic, tiny fields: enumerate the algebra
            let q = ctx.order();
            let total = q.pow(du as u32);
            let mut out = Vec::new();
            for code in 0..total {
                let mut rem = code;
                let mut coeffs = Vec::with_capacity(du);
                for _ in 0..du {
                    coeffs.push(ctx.nth_element(rem % q));
                    rem /= q;
                }
                let v = FPoly::new(coeffs, ctx);
                let lhs = v
                    .mul(&v, ctx)
                    .add(&v.mul(&hbar, ctx), ctx)
                    .sub(&fbar, ctx)
                    .rem(u, ctx);
                if lhs.is_zero() {
                    out.push(v);
                }
            }
            out
        }
    }

    /// Apply the q0-power Frobenius (coefficient-wise x -> x^(p^j)) to a
    /// divisor of a model defined over the degree-j subfield.
    pub fn frobenius_divisor(&self, d: &Divisor, j: u32) -> Divisor {
        let ctx = self.ctx;
        let u = d.u.map_frobenius_iter(j, ctx);
        let v = d.v.map_frobenius_iter(j, ctx);
        let n = if self.kind == ModelKind::RealSplit && self.frobenius_swaps_infinity(j) {
            2 - d.u.degree() as i32 - d.n
        } else {
            d.n
        };
        Divisor { u, v, n }
    }

    /// Does x -> x^(p^j) swap the two infinite points?
    pub fn frobenius_swaps_infinity(&self, j: u32) -> bool {
        if self.kind != ModelKind::RealSplit {
            return false;
        }
        let ctx = self.ctx;
        let c = self.vplus.coeff(3);
        let cj = ctx.frobenius_iter(c, j);
        cj != c
    }
}

/// Solve for the degree-3 polynomial branch of y at infinity on a split
/// degree-6 model: V with deg(V^2 + hV - f) <= 2. Errors when the model is
/// inert (no rational branch).
fn branch_at_infinity(f: &FPoly, h: &FPoly, ctx: &FieldCtx) -> Result<FPoly> {
    let h3 = h.coeff(3);
    let f6 = f.coeff(6);
    // leading coefficient: c^2 + h3 c = f6
    let c3 = if ctx.characteristic() == 2 {
        if h3 == 0 {
            return Err(Error::parameter(
                "ramified infinity (char 2, h3 = 0): shift to degree 5 first",
            ));
        }
        let w = ctx.div(f6, ctx.mul(h3, h3)).unwrap();
        match ctx.solve_artin_schreier(w) {
            Some(z) => ctx.mul(h3, z),
            None => return Err(Error::parameter("inert at infinity over this field")),
        }
    } else {
        // c = (-h3 +- sqrt(h3^2 + 4 f6)) / 2
        let disc = ctx.add(ctx.mul(h3, h3), ctx.mul(ctx.scalar(4 % 3), f6));
        let s = ctx
            .sqrt(disc)
            .ok_or_else(|| Error::parameter("inert at infinity over this field"))?;
        if s == 0 {
            return Err(Error::parameter("degenerate leading form"));
        }
        let inv2 = ctx.inv(ctx.scalar(2)).unwrap();
        ctx.mul(ctx.sub(s, h3), inv2)
    };
    // lower coefficients: match x^5, x^4, x^3 of V^2 + hV - f
    // linear in each unknown with pivot (2 c3 + h3), nonzero on split models
    let pivot = ctx.add(ctx.add(c3, c3), h3);
    if pivot == 0 {
        return Err(Error::parameter("degenerate branch pivot"));
    }
    let pivot_inv = ctx.inv(pivot).unwrap();
    let mut v = vec![0u64, 0, 0, c3];
    for target in (3..=5).rev() {
        // coefficient of x^target in V^2 + hV - f, with unknown v[target-3]
        let vc = FPoly::new(v.clone(), ctx);
        let expr = vc
            .mul(&vc, ctx)
            .add(&vc.mul(h, ctx), ctx)
            .sub(f, ctx);
        let cur = expr.coeff(target);
        // d(expr)/d(v_j) at x^target = 2 c3 + h3 (j = target - 3)
        let correction = ctx.mul(ctx.neg(cur), pivot_inv);
        v[target - 3] = ctx.add(v[target - 3], correction);
    }
    let vpoly = FPoly::new(v, ctx);
    let resid = vpoly
        .mul(&vpoly, ctx)
        .add(&vpoly.mul(h, ctx), ctx)
        .sub(f, ctx);
    if resid.degree() > 2 {
        return Err(Error::diagnostic("branch solve failed"));
    }
    if resid.is_zero() {
        return Err(Error::diagnostic("reducible model"));
    }
    Ok(vpoly)
}

/// Characteristic-2 degree-6 models with h3 = 0 (ramified infinity) are
/// isomorphic to degree-5 models via y -> y + sqrt(f6) x^3; returns the new
/// (f, h). The substitution is rational over the coefficient field.
pub fn shift_to_degree5(f: &FPoly, h: &FPoly, ctx: &FieldCtx) -> Result<(FPoly, FPoly)> {
    if ctx.characteristic() != 2 || h.coeff(3) != 0 || f.degree() != 6 {
        return Err(Error::parameter("shift applies to char-2, h3 = 0, deg f = 6"));
    }
    let w = FPoly::new(vec![0, 0, 0, ctx.sqrt(f.coeff(6)).unwrap()], ctx);
    // y = y' + w: f' = f - w^2 - h w
    let fnew = f.sub(&w.mul(&w, ctx), ctx).sub(&h.mul(&w, ctx), ctx);
    if fnew.degree() != 5 {
        return Err(Error::diagnostic("shift did not reach degree 5"));
    }
    Ok((fnew, h.clone()))
}
