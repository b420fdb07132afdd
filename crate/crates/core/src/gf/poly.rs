//! Dense univariate polynomials over a [`FieldCtx`].
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial has an empty coefficient vector and degree -1.

use super::{FieldCtx, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FPoly {
    coeffs: Vec<FieldElem>,
}

impl std::fmt::Debug for FPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FPoly{:?}", self.coeffs)
    }
}

impl FPoly {
    pub fn new(mut coeffs: Vec<FieldElem>, _ctx: &FieldCtx) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    /// Build from prime-field scalars (ascending), reducing mod p.
    pub fn from_scalars(scalars: &[u8], ctx: &FieldCtx) -> Self {
        FPoly::new(scalars.iter().map(|&c| ctx.scalar(c)).collect(), ctx)
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FPoly { coeffs: vec![1] }
    }

    pub fn x(_ctx: &FieldCtx) -> Self {
        FPoly { coeffs: vec![0, 1] }
    }

    pub fn constant(c: FieldElem) -> Self {
        if c == 0 {
            FPoly::zero()
        } else {
            FPoly { coeffs: vec![c] }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &FPoly, ctx: &FieldCtx) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.add(self.coeff(i), other.coeff(i)));
        }
        FPoly::new(out, ctx)
    }

    pub fn sub(&self, other: &FPoly, ctx: &FieldCtx) -> FPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.sub(self.coeff(i), other.coeff(i)));
        }
        FPoly::new(out, ctx)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> FPoly {
        FPoly::new(self.coeffs.iter().map(|&c| ctx.neg(c)).collect(), ctx)
    }

    pub fn scale(&self, c: FieldElem, ctx: &FieldCtx) -> FPoly {
        FPoly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect(), ctx)
    }

    pub fn mul(&self, other: &FPoly, ctx: &FieldCtx) -> FPoly {
        if self.is_zero() || other.is_zero() {
            return FPoly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        FPoly::new(out, ctx)
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn divrem(&self, divisor: &FPoly, ctx: &FieldCtx) -> (FPoly, FPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if self.degree() < divisor.degree() {
            return (FPoly::zero(), self.clone());
        }
        let dlead_inv = ctx.inv(divisor.leading()).expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        let dq = divisor.coeffs.len() - 1;
        let mut quot = vec![0u64; rem.len() - dq];
        for i in (dq..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = ctx.mul(c, dlead_inv);
            quot[i - dq] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dq + j;
                rem[idx] = ctx.sub(rem[idx], ctx.mul(factor, dc));
            }
        }
        (FPoly::new(quot, ctx), FPoly::new(rem, ctx))
    }

    pub fn rem(&self, divisor: &FPoly, ctx: &FieldCtx) -> FPoly {
        self.divrem(divisor, ctx).1
    }

    pub fn monic(&self, ctx: &FieldCtx) -> FPoly {
        if self.is_zero() {
            return FPoly::zero();
        }
        let inv = ctx.inv(self.leading()).unwrap();
        self.scale(inv, ctx)
    }

    /// Monic gcd; gcd(f, 0) = monic f.
    pub fn gcd(&self, other: &FPoly, ctx: &FieldCtx) -> FPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, ctx);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Extended gcd: returns (g, s, t) with g = s*self + t*other, g monic.
    pub fn xgcd(&self, other: &FPoly, ctx: &FieldCtx) -> (FPoly, FPoly, FPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = FPoly::one();
        let mut s1 = FPoly::zero();
        let mut t0 = FPoly::zero();
        let mut t1 = FPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, ctx);
            let ns = s0.sub(&q.mul(&s1, ctx), ctx);
            let nt = t0.sub(&q.mul(&t1, ctx), ctx);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = ns;
            t0 = t1;
            t1 = nt;
        }
        if r0.is_zero() {
            return (FPoly::zero(), FPoly::zero(), FPoly::zero());
        }
        let lead_inv = ctx.inv(r0.leading()).unwrap();
        (
            r0.scale(lead_inv, ctx),
            s0.scale(lead_inv, ctx),
            t0.scale(lead_inv, ctx),
        )
    }

    pub fn derivative(&self, ctx: &FieldCtx) -> FPoly {
        if self.coeffs.len() <= 1 {
            return FPoly::zero();
        }
        let p = ctx.characteristic() as u64;
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let m = (i as u64) % p;
            let mut term = 0u64;
            for _ in 0..m {
                term = ctx.add(term, c);
            }
            out.push(term);
        }
        FPoly::new(out, ctx)
    }

    /// p-th root of a polynomial in x^p (requires all exponents divisible by p).
    pub fn pth_root(&self, ctx: &FieldCtx) -> FPoly {
        let p = ctx.characteristic() as usize;
        let mut out = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                // coefficient root: c^(p^(k-1)) inverts Frobenius
                let mut r = c;
                for _ in 0..ctx.degree().saturating_sub(1) {
                    r = ctx.pow(r, ctx.characteristic() as u64);
                }
                out.push(r);
            } else {
                debug_assert_eq!(c, 0, "pth_root of a non-p-power polynomial");
            }
        }
        FPoly::new(out, ctx)
    }

    /// self^e mod m.
    pub fn modpow(&self, e: u64, m: &FPoly, ctx: &FieldCtx) -> FPoly {
        let mut acc = FPoly::one().rem(m, ctx);
        let mut base = self.rem(m, ctx);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, ctx).rem(m, ctx);
            }
            base = base.mul(&base, ctx).rem(m, ctx);
            e >>= 1;
        }
        acc
    }

    /// The product of the linear factors of self (with multiplicity one):
    /// gcd(f, x^q - x), computed via modular exponentiation.
    pub fn linear_part(&self, ctx: &FieldCtx) -> FPoly {
        let x = FPoly::x(ctx);
        let xq = x.modpow(ctx.order(), self, ctx);
        xq.sub(&x, ctx).gcd(self, ctx)
    }

    pub fn eval(&self, x: FieldElem, ctx: &FieldCtx) -> FieldElem {
        ctx.eval(&self.coeffs, x)
    }

    /// Map coefficients through the arithmetic Frobenius of the context.
    pub fn map_frobenius(&self, ctx: &FieldCtx) -> FPoly {
        FPoly::new(self.coeffs.iter().map(|&c| ctx.frobenius(c)).collect(), ctx)
    }

    /// Map coefficients through x -> x^(p^j).
    pub fn map_frobenius_iter(&self, j: u32, ctx: &FieldCtx) -> FPoly {
        FPoly::new(
            self.coeffs.iter().map(|&c| ctx.frobenius_iter(c, j)).collect(),
            ctx,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::field_make;

    #[test]
    fn divrem_roundtrip() {
        let ctx = field_make(3, 2).unwrap();
        let f = FPoly::from_scalars(&[1, 2, 0, 1, 1], &ctx);
        let g = FPoly::from_scalars(&[2, 1, 1], &ctx);
        let (q, r) = f.divrem(&g, &ctx);
        let back = q.mul(&g, &ctx).add(&r, &ctx);
        assert_eq!(back, f);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn gcd_examples() {
        let ctx = field_make(3, 1).unwrap();
        let f = FPoly::from_scalars(&[1, 0, 1], &ctx); // x^2+1
        assert_eq!(f.gcd(&f, &ctx), f.monic(&ctx));
        // gcd of coprime polynomials is 1
        let g = FPoly::from_scalars(&[1, 1], &ctx);
        assert_eq!(f.gcd(&g, &ctx).degree(), 0);
    }

    #[test]
    fn xgcd_identity() {
        let ctx = field_make(2, 4).unwrap();
        let f = FPoly::new(vec![3, 5, 1, 9], &ctx);
        let g = FPoly::new(vec![7, 1, 4], &ctx);
        let (d, s, t) = f.xgcd(&g, &ctx);
        let lhs = s.mul(&f, &ctx).add(&t.mul(&g, &ctx), &ctx);
        assert_eq!(lhs, d);
    }

    #[test]
    fn derivative_char_p() {
        let ctx = field_make(3, 1).unwrap();
        // d/dx (x^3 + x) = 1 in char 3
        let f = FPoly::from_scalars(&[0, 1, 0, 1], &ctx);
        assert_eq!(f.derivative(&ctx), FPoly::one());
    }

    #[test]
    fn pth_root_char2() {
        let ctx = field_make(2, 3).unwrap();
        let g = FPoly::new(vec![3, 1, 5], &ctx);
        let g2 = g.mul(&g, &ctx);
        assert_eq!(g2.pth_root(&ctx), g);
    }
}
