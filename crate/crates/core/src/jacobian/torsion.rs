//! Full 3-torsion of the Jacobian of a smooth curve over F2: the 81 points
//! over the working extension, the matrix of the arithmetic Frobenius in a
//! chosen F3-basis, and the Weil-pairing Gram matrix — assembled into a
//! symplectized Frobenius matrix ready for outer-class classification.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{frobenius_charpoly, lift_poly, HyperellipticModel};
use crate::error::{Error, Result};
use crate::gf::{field_make, poly_roots, FPoly, FieldCtx, FieldElem};
use crate::sympgroups::{invariant_form_space, rank4, symplectic_basis, Mat4F3, J4};

use super::divisor::{Divisor, Jacobian, ModelKind};
use super::pairing::{weil_pairing_gram, WeilContext};
use super::sylow::{jac_order_from_charpoly, normalize_model, sylow3};

/// The 3-torsion module of a smooth genus-2 curve over F2.
pub struct TorsionModule {
    /// Degree of the working extension F_{2^m0} (the order of Frobenius on
    /// the 3-torsion).
    pub m0: u32,
    /// Frobenius matrix in a symplectic basis: g^T J g = -J.
    pub frobenius: Mat4F3,
    /// Frobenius matrix in the raw point basis.
    pub frobenius_raw: Mat4F3,
    /// Weil-pairing Gram matrix in the raw basis.
    pub gram: Mat4F3,
    /// Dimension of the solution space of {M alternating, g^T M g = -M};
    /// the Gram matrix is checked to lie in it.
    pub form_space_dim: usize,
    /// The chosen ordered F3-basis, as divisors over F_{2^m0} (on the
    /// normalized model).
    pub basis: [Divisor; 4],
    /// All 81 points of Jac[3] over F_{2^m0}.
    pub points: Vec<Divisor>,
    /// Number of 3-torsion points found (always 81).
    pub point_count: usize,
}

/// Compute the full torsion module. `seed` drives all sampling.
pub fn three_torsion_module(
    m: &HyperellipticModel,
    prime: &FieldCtx,
    seed: u64,
) -> Result<TorsionModule> {
    if prime.characteristic() != 2 || prime.degree() != 1 {
        return Err(Error::parameter("torsion modules are built for curves over F2"));
    }
    let m = normalize_model(m, prime)?;
    let summary = frobenius_charpoly(&m, prime)?;
    let q_poly = summary.charpoly();

    // order of the semisimple part: lcm of the multiplicative orders of the
    // roots of Q mod 3 (all roots lie in F81 for similitude -1 elements)
    let f3 = field_make(3, 1)?;
    let f81 = field_make(3, 4)?;
    let qbar3 = FPoly::from_scalars(&q_poly.reduce_mod(3), &f3);
    let qbar81 = lift_poly(&qbar3, &f3, &f81);
    let roots = poly_roots(&qbar81, &f81)?;
    if roots.len() != 4 {
        return Err(Error::diagnostic("charpoly mod 3 must split over F81"));
    }
    let mut s = 1u64;
    for &r in &roots {
        if r == 0 {
            return Err(Error::diagnostic("charpoly mod 3 has root 0"));
        }
        s = num_integer::lcm(s, f81.mult_order(r));
    }
    // Frobenius order on Jac[3] is s or 3s; decide by the torsion rank
    let mut m0 = s as u32;
    let mut data = torsion_points(&m, prime, m0, seed)?;
    if data.three_torsion.len() != 81 {
        m0 = 3 * s as u32;
        if m0 > 24 {
            return Err(Error::diagnostic("working extension exceeds 2^24"));
        }
        data = torsion_points(&m, prime, m0, seed)?;
        if data.three_torsion.len() != 81 {
            return Err(Error::diagnostic("full 3-torsion not found"));
        }
    }
    let ctx = field_make(2, m0)?;
    let fl = lift_poly(&m.f, prime, &ctx);
    let hl = lift_poly(&m.h, prime, &ctx);
    let jac = Jacobian::new(fl, hl, &ctx)?;

    // basis and coordinates
    let (basis, coords) = torsion_basis(&jac, &data.three_torsion)?;

    // Frobenius matrix: columns are coordinates of the Frobenius images
    let mut g = [[0u8; 4]; 4];
    for (j, b) in basis.iter().enumerate() {
        let fb = jac.frobenius_divisor(b, 1);
        let c = coords
            .get(&fb.key())
            .ok_or_else(|| Error::diagnostic("Frobenius image left the torsion group"))?;
        for i in 0..4 {
            g[i][j] = c[i];
        }
    }
    let g = Mat4F3(g);
    debug_assert_eq!(g.pow(m0), Mat4F3::IDENTITY);

    // Weil pairing Gram matrix, on a pairing-capable model
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let gram = match jac.kind {
        ModelKind::Imaginary => {
            let wc = WeilContext::new(&jac)?;
            weil_pairing_gram(&wc, &basis, &mut rng)?
        }
        ModelKind::RealSplit => {
            let transport = MobiusTransport::new(&jac, &mut rng)?;
            let moved: Vec<Divisor> = basis
                .iter()
                .map(|b| transport.transport(b, &mut rng))
                .collect::<Result<Vec<_>>>()?;
            let moved: [Divisor; 4] = moved.try_into().expect("four basis points");
            let jac2 = Jacobian::new(transport.f2.clone(), transport.h2.clone(), &ctx)?;
            for b in &moved {
                if !jac2.is_zero(&jac2.smul_u64(b, 3)) {
                    return Err(Error::diagnostic("transport broke 3-torsion"));
                }
            }
            let wc = WeilContext::new(&jac2)?;
            weil_pairing_gram(&wc, &moved, &mut rng)?
        }
    };

    // cross-checks: alternating, nondegenerate, inverted by Frobenius
    if gram.transpose() != gram.neg() {
        return Err(Error::diagnostic("Gram matrix not alternating"));
    }
    if rank4(&gram.0) != 4 {
        return Err(Error::diagnostic("Gram matrix degenerate"));
    }
    if g.transpose().mul(&gram).mul(&g) != gram.neg() {
        return Err(Error::diagnostic(
            "Gram matrix is not inverted by Frobenius (pairing inconsistency)",
        ));
    }
    let form_space = invariant_form_space(&g);
    let form_space_dim = form_space.len();

    let p = symplectic_basis(&gram)?;
    let p_inv = p.inverse().ok_or_else(|| Error::diagnostic("singular basis change"))?;
    let g_symp = p_inv.mul(&g).mul(&p);
    if g_symp.transpose().mul(&J4).mul(&g_symp) != J4.scale(2) {
        return Err(Error::diagnostic("symplectized Frobenius has wrong similitude"));
    }

    Ok(TorsionModule {
        m0,
        frobenius: g_symp,
        frobenius_raw: g,
        gram,
        form_space_dim,
        point_count: data.three_torsion.len(),
        basis,
        points: data.three_torsion,
    })
}

struct TorsionData {
    three_torsion: Vec<Divisor>,
}

fn torsion_points(
    m: &HyperellipticModel,
    prime: &FieldCtx,
    k: u32,
    seed: u64,
) -> Result<TorsionData> {
    let summary = frobenius_charpoly(m, prime)?;
    let n = jac_order_from_charpoly(&summary.charpoly(), k);
    let ctx = field_make(2, k)?;
    let fl = lift_poly(&m.f, prime, &ctx);
    let hl = lift_poly(&m.h, prime, &ctx);
    let jac = Jacobian::new(fl, hl, &ctx)?;
    let data = sylow3(&jac, &n, seed, 4096)?;
    // keep only the points; they must be recreated against the caller's ctx
    Ok(TorsionData {
        three_torsion: data.three_torsion,
    })
}

/// Choose 4 independent basis points and tabulate coordinates of all 81
/// combinations.
fn torsion_basis(
    jac: &Jacobian,
    points: &[Divisor],
) -> Result<([Divisor; 4], HashMap<(Vec<FieldElem>, Vec<FieldElem>, i32), [u8; 4]>)> {
    if points.len() != 81 {
        return Err(Error::diagnostic("need the full 81-point group"));
    }
    let mut basis: Vec<Divisor> = Vec::new();
    let mut span: HashMap<(Vec<FieldElem>, Vec<FieldElem>, i32), [u8; 4]> = HashMap::new();
    span.insert(jac.zero().key(), [0, 0, 0, 0]);
    let mut sorted: Vec<&Divisor> = points.iter().collect();
    sorted.sort_by_key(|d| d.key());
    for cand in sorted {
        if basis.len() == 4 {
            break;
        }
        if span.contains_key(&cand.key()) {
            continue;
        }
        // extend the span by cand
        let idx = basis.len();
        basis.push(cand.clone());
        let existing: Vec<(Divisor, [u8; 4])> = span
            .iter()
            .map(|(_, c)| c)
            .cloned()
            .zip(std::iter::repeat(()))
            .map(|(c, _)| c)
            .collect::<Vec<[u8; 4]>>()
            .into_iter()
            .map(|c| (reconstruct(jac, &basis, &c), c))
            .collect();
        for (d, c) in existing {
            for mult in 1..=2u8 {
                let mut cc = c;
                cc[idx] = mult;
                let nd = if mult == 1 {
                    jac.add(&d, cand)
                } else {
                    jac.add(&jac.add(&d, cand), cand)
                };
                span.insert(nd.key(), cc);
            }
        }
    }
    if basis.len() != 4 || span.len() != 81 {
        return Err(Error::diagnostic("torsion points do not span (Z/3)^4"));
    }
    let basis: [Divisor; 4] = basis.try_into().unwrap();
    Ok((basis, span))
}

fn reconstruct(jac: &Jacobian, basis: &[Divisor], coords: &[u8; 4]) -> Divisor {
    let mut acc = jac.zero();
    for (b, &c) in basis.iter().zip(coords.iter()) {
        for _ in 0..c {
            acc = jac.add(&acc, b);
        }
    }
    acc
}

/// Transport of divisor classes from a split real model to the imaginary
/// model obtained by moving a rational Weierstrass point (a root of h in the
/// working field) to infinity: x -> 1/(x - a), y -> y / (x - a)^3, followed
/// by the degree-5 shift when needed.
struct MobiusTransport<'a, 'b> {
    jac: &'b Jacobian<'a>,
    a: FieldElem,
    /// shift added to z after the substitution (sqrt of the leading
    /// coefficient when the transformed model is ramified at infinity)
    s6: FieldElem,
    f2: FPoly,
    h2: FPoly,
    /// class correction: the sum of the images of the two infinite points
    /// as a divisor on the target model
    cinf: Divisor,
}

impl<'a, 'b> MobiusTransport<'a, 'b> {
    fn new(jac: &'b Jacobian<'a>, _rng: &mut impl Rng) -> Result<Self> {
        let ctx = jac.ctx;
        debug_assert_eq!(jac.kind, ModelKind::RealSplit);
        let roots = poly_roots(&jac.h, ctx)?;
        let a = *roots
            .iter()
            .min()
            .ok_or_else(|| Error::diagnostic("h has no root in the working field"))?;
        // H(t) = sum h_i t^(3-i) (1 + a t)^i, F(t) = sum f_i t^(6-i) (1+at)^i
        let lin = FPoly::new(vec![1, a], ctx); // 1 + a t
        let hterm = |coeffs: &FPoly, total: usize| -> FPoly {
            let mut acc = FPoly::zero();
            for (i, &c) in coeffs.coeffs().iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut term = FPoly::constant(c);
                for _ in 0..(total - i) {
                    term = term.mul(&FPoly::x(ctx), ctx);
                }
                for _ in 0..i {
                    term = term.mul(&lin, ctx);
                }
                acc = acc.add(&term, ctx);
            }
            acc
        };
        let hh = hterm(&jac.h, 3);
        let mut ff = hterm(&jac.f, 6);
        if hh.degree() > 2 {
            return Err(Error::diagnostic("transported h has degree > 2"));
        }
        // If deg F = 6 the new model is ramified at infinity (new h3 = 0):
        // shift z -> z + sqrt(F6) t^3.
        let mut s6 = 0;
        if ff.degree() == 6 {
            s6 = ctx.sqrt(ff.coeff(6)).unwrap();
            let w = FPoly::new(vec![0, 0, 0, s6], ctx);
            ff = ff.sub(&w.mul(&w, ctx), ctx).sub(&hh.mul(&w, ctx), ctx);
        }
        if (2 * hh.degree()).max(ff.degree()) != 5 {
            return Err(Error::diagnostic("transport did not reach an imaginary model"));
        }
        let jac2 = Jacobian::new(ff.clone(), hh.clone(), ctx)?;
        // images of the infinite points: the shift term s6 t^3 vanishes at
        // t = 0, so these are (0, c_branch) for the branch leading coeffs
        let cp = jac.vplus.coeff(3);
        let cm = jac.vminus.coeff(3);
        let d1 = jac2.point_divisor(0, cp, false);
        let d2 = jac2.point_divisor(0, cm, false);
        let cinf = jac2.add(&d1, &d2);
        Ok(MobiusTransport {
            jac,
            a,
            s6,
            f2: ff,
            h2: hh,
            cinf,
        })
    }

    /// Is the canonical representative directly transportable (affine
    /// support of degree 2 avoiding the moved point)?
    fn clean(&self, d: &Divisor) -> bool {
        d.u.degree() == 2 && d.u.eval(self.a, self.jac.ctx) != 0
    }

    /// Pointwise image of a clean representative.
    fn direct(&self, d: &Divisor) -> Result<Divisor> {
        let ctx = self.jac.ctx;
        let ua = d.u.eval(self.a, ctx);
        let ua_inv = ctx.inv(ua)?;
        // u'(t) = t^2 + ((u1 + 2a)/u(a)) t + 1/u(a)
        let u1 = d.u.coeff(1);
        let mid = ctx.mul(ctx.add(u1, ctx.add(self.a, self.a)), ua_inv);
        let u2 = FPoly::new(vec![ua_inv, mid, 1], ctx);
        // z(t) = sum v_j t^(3-j) (1+at)^j + s6 t^3, reduced mod u'
        let lin = FPoly::new(vec![1, self.a], ctx);
        let mut z = FPoly::new(vec![0, 0, 0, self.s6], ctx);
        for (j, &c) in d.v.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut term = FPoly::constant(c);
            for _ in 0..(3 - j) {
                term = term.mul(&FPoly::x(ctx), ctx);
            }
            for _ in 0..j {
                term = term.mul(&lin, ctx);
            }
            z = z.add(&term, ctx);
        }
        let v2 = z.rem(&u2, ctx);
        let jac2 = Jacobian::new(self.f2.clone(), self.h2.clone(), self.jac.ctx)?;
        let dd = Divisor { u: u2, v: v2, n: 0 };
        if !jac2.is_valid(&dd) {
            return Err(Error::diagnostic("transported pair not on the target curve"));
        }
        // class = [E' - 2 inf'] minus the images of the two infinite points
        Ok(jac2.sub(&dd, &self.cinf))
    }

    /// Transport an arbitrary class, shifting by a random clean divisor when
    /// the representative is not directly transportable.
    fn transport(&self, d: &Divisor, rng: &mut impl Rng) -> Result<Divisor> {
        if self.clean(d) {
            return self.direct(d);
        }
        let jac2 = Jacobian::new(self.f2.clone(), self.h2.clone(), self.jac.ctx)?;
        for _ in 0..64 {
            let t = self.jac.random_divisor(rng);
            let shifted = self.jac.add(d, &t);
            if self.clean(&t) && self.clean(&shifted) {
                let img = jac2.sub(&self.direct(&shifted)?, &self.direct(&t)?);
                return Ok(img);
            }
        }
        Err(Error::diagnostic("no clean shift found for transport"))
    }
}
