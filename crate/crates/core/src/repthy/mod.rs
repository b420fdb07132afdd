//! Mod-2 representation theory of A5: the four irreducibles over F4, the
//! Brauer character verification, weak and near adequacy, first group
//! cohomology by linear algebra over the full cocycle system, socles, and
//! the Sym^3 / projectivity identifications.

mod fmat;

pub use fmat::{nullspace, rank, FMat};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{field_make, poly_roots, FPoly, FieldCtx, FieldElem};
use crate::sympgroups::{a5b_elements, perm_to_gsp4, Perm6};

/// A representation of A5 (as the point-stabilized copy inside S6) by
/// matrices over F2 or F4.
pub struct FiniteGroupRep {
    pub name: &'static str,
    pub dim: usize,
    /// 1 for F2, 2 for F4
    pub field_degree: u32,
    pub mats: HashMap<[u8; 6], FMat>,
}

impl FiniteGroupRep {
    pub fn mat(&self, p: &Perm6) -> &FMat {
        &self.mats[&p.0]
    }
}

pub struct A5Reps {
    pub group: Vec<Perm6>,
    pub f2: FieldCtx,
    pub f4: FieldCtx,
    pub k: FiniteGroupRep,
    pub u: FiniteGroupRep,
    pub u_sigma: FiniteGroupRep,
    /// V over F2 (the restriction of the 4-dimensional symplectic
    /// representation through the S6 dictionary).
    pub v: FiniteGroupRep,
}

/// Standard conjugacy-class representatives of A5(b) (1-based cycles
/// omitting the fixed point 6).
pub fn class_representatives() -> [(&'static str, Perm6); 5] {
    [
        ("1", Perm6::IDENTITY),
        ("(12)(34)", Perm6::from_cycles(&[&[1, 2], &[3, 4]])),
        ("(123)", Perm6::from_cycles(&[&[1, 2, 3]])),
        ("(12345)", Perm6::from_cycles(&[&[1, 2, 3, 4, 5]])),
        ("(13524)", Perm6::from_cycles(&[&[1, 3, 5, 2, 4]])),
    ]
}

/// Build {k, U, U^sigma, V}: the trivial representation, the two
/// 2-dimensional representations over F4 via an explicit identification
/// A5 = SL2(F4), and the 4-dimensional representation over F2.
pub fn build_a5_reps() -> Result<A5Reps> {
    let f2 = field_make(2, 1)?;
    let f4 = field_make(2, 2)?;
    let group = a5b_elements();
    assert_eq!(group.len(), 60);

    // trivial representation
    let mut k_mats = HashMap::new();
    for p in &group {
        k_mats.insert(p.0, FMat::identity(1));
    }

    // V over F2 via the dictionary
    let mut v_mats = HashMap::new();
    for p in &group {
        let bm = perm_to_gsp4(p);
        let mut m = FMat::zero(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, bm.get(i, j) as u64);
            }
        }
        v_mats.insert(p.0, m);
    }

    // U over F4: find SL2(F4) images for the generators (12345), (123)
    // consistent on the whole group
    let sigma = Perm6::from_cycles(&[&[1, 2, 3, 4, 5]]);
    let tau = Perm6::from_cycles(&[&[1, 2, 3]]);
    let sl2: Vec<FMat> = sl2_f4(&f4);
    let mut u_mats: Option<HashMap<[u8; 6], FMat>> = None;
    'search: for a in sl2.iter().filter(|m| mat_order(m, &f4) == 5) {
        for b in sl2.iter().filter(|m| mat_order(m, &f4) == 3) {
            if let Some(map) = try_parallel_closure(&group, &sigma, &tau, a, b, &f4) {
                u_mats = Some(map);
                break 'search;
            }
        }
    }
    let u_mats =
        u_mats.ok_or_else(|| Error::diagnostic("no SL2(F4) identification found"))?;

    // U^sigma: Frobenius on entries
    let mut us_mats = HashMap::new();
    for (p, m) in &u_mats {
        let mut mm = m.clone();
        for e in mm.data.iter_mut() {
            *e = f4.frobenius(*e);
        }
        us_mats.insert(*p, mm);
    }

    let reps = A5Reps {
        group,
        f2,
        f4,
        k: FiniteGroupRep {
            name: "k",
            dim: 1,
            field_degree: 1,
            mats: k_mats,
        },
        u: FiniteGroupRep {
            name: "U",
            dim: 2,
            field_degree: 2,
            mats: u_mats,
        },
        u_sigma: FiniteGroupRep {
            name: "U_sigma",
            dim: 2,
            field_degree: 2,
            mats: us_mats,
        },
        v: FiniteGroupRep {
            name: "V",
            dim: 4,
            field_degree: 1,
            mats: v_mats,
        },
    };
    Ok(reps)
}

fn sl2_f4(f4: &FieldCtx) -> Vec<FMat> {
    let mut out = Vec::new();
    for a in f4.elements() {
        for b in f4.elements() {
            for c in f4.elements() {
                for d in f4.elements() {
                    let det = f4.sub(f4.mul(a, d), f4.mul(b, c));
                    if det == 1 {
                        out.push(FMat::from_rows(&[vec![a, b], vec![c, d]]));
                    }
                }
            }
        }
    }
    assert_eq!(out.len(), 60);
    out
}

fn mat_order(m: &FMat, ctx: &FieldCtx) -> u32 {
    let id = FMat::identity(m.rows);
    let mut cur = m.clone();
    for k in 1..=16 {
        if cur == id {
            return k;
        }
        cur = cur.mul(m, ctx);
    }
    17
}

/// Parallel closure: grow the group from (sigma, tau) while mapping to
/// (a, b); None on the first inconsistency.
fn try_parallel_closure(
    group: &[Perm6],
    sigma: &Perm6,
    tau: &Perm6,
    a: &FMat,
    b: &FMat,
    ctx: &FieldCtx,
) -> Option<HashMap<[u8; 6], FMat>> {
    let mut map: HashMap<[u8; 6], FMat> = HashMap::new();
    map.insert(Perm6::IDENTITY.0, FMat::identity(2));
    let mut frontier = vec![Perm6::IDENTITY];
    while let Some(p) = frontier.pop() {
        let pm = map[&p.0].clone();
        for (gen, image) in [(sigma, a), (tau, b)] {
            let q = gen.compose(&p);
            let qm = image.mul(&pm, ctx);
            match map.get(&q.0) {
                Some(existing) => {
                    if *existing != qm {
                        return None;
                    }
                }
                None => {
                    map.insert(q.0, qm);
                    frontier.push(q);
                }
            }
        }
    }
    if map.len() == group.len() {
        Some(map)
    } else {
        None
    }
}

/// Exponent multiset (discrete logs against a fixed generator of F16^x) of
/// the eigenvalues of the representing matrix, computed over F16.
fn eigen_exponents(rep: &FiniteGroupRep, p: &Perm6, reps: &A5Reps) -> Result<Vec<u64>> {
    let f16 = field_make(2, 4)?;
    let m = rep.mat(p);
    // charpoly over the rep's field, then lift coefficients to F16
    let small_ctx = if rep.field_degree == 1 { &reps.f2 } else { &reps.f4 };
    let cp = charpoly_generic(m, small_ctx);
    let lifted: Vec<FieldElem> = cp
        .iter()
        .map(|&c| f16.embed_from(small_ctx, c))
        .collect::<Result<_>>()?;
    let poly = FPoly::new(lifted, &f16);
    let roots = poly_roots(&poly, &f16)?;
    if roots.len() != rep.dim {
        return Err(Error::diagnostic("representation eigenvalues not all in F16"));
    }
    // generator of F16^x: least element of multiplicative order 15
    let gen = f16
        .elements()
        .find(|&x| x != 0 && f16.mult_order(x) == 15)
        .unwrap();
    let mut exps = Vec::new();
    for r in roots {
        let mut e = 0u64;
        let mut cur = f16.one();
        while cur != r {
            cur = f16.mul(cur, gen);
            e += 1;
            assert!(e < 16);
        }
        exps.push(e);
    }
    exps.sort_unstable();
    Ok(exps)
}

fn charpoly_generic(m: &FMat, ctx: &FieldCtx) -> Vec<FieldElem> {
    // det(xI - M) by recursive expansion with polynomial entries
    let n = m.rows;
    let entries: Vec<Vec<FPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = ctx.neg(m.get(i, j));
                    if i == j {
                        FPoly::new(vec![c, 1], ctx)
                    } else {
                        FPoly::new(vec![c], ctx)
                    }
                })
                .collect()
        })
        .collect();
    fn det(entries: &[Vec<FPoly>], rows: &[usize], cols: &[usize], ctx: &FieldCtx) -> FPoly {
        if rows.len() == 1 {
            return entries[rows[0]][cols[0]].clone();
        }
        let mut acc = FPoly::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let sub_rows = &rows[1..];
            let sub_cols: Vec<usize> = cols
                .iter()
                .copied()
                .filter(|&cc| cc != c)
                .collect();
            let term = entries[rows[0]][c].mul(&det(entries, sub_rows, &sub_cols, ctx), ctx);
            // signs: in characteristic 2 they vanish; for odd characteristic
            // alternate
            if ctx.characteristic() == 2 || idx % 2 == 0 {
                acc = acc.add(&term, ctx);
            } else {
                acc = acc.sub(&term, ctx);
            }
        }
        acc
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    let p = det(&entries, &rows, &cols, ctx);
    (0..=n).map(|i| p.coeff(i)).collect()
}

/// Verify the Brauer character row of a representation: there must exist an
/// embedding choice (a unit c mod 5) under which the eigenvalue multisets at
/// every odd-order class lift to the table's values; for U and U^sigma the
/// same c must work across both 5-classes, with the two 5-rows swapped
/// between the two representations.
pub fn brauer_check(rep: &FiniteGroupRep, reps: &A5Reps) -> Result<bool> {
    let classes = class_representatives();
    let odd: Vec<&(&str, Perm6)> = classes
        .iter()
        .filter(|(n, _)| *n != "(12)(34)")
        .collect();
    // exponent multisets: mu5 exponents are multiples of 3, mu3 of 5
    let data: HashMap<&str, Vec<u64>> = odd
        .iter()
        .map(|(n, p)| Ok((*n, eigen_exponents(rep, p, reps)?)))
        .collect::<Result<_>>()?;
    let zeta5 = |j: u64| (3 * j) % 15;
    let omega = |j: u64| (5 * j) % 15;
    let sorted = |mut v: Vec<u64>| {
        v.sort_unstable();
        v
    };
    let ok = match rep.name {
        "k" => odd.iter().all(|(n, _)| data[*n] == vec![0]),
        "V" => {
            data["1"] == vec![0, 0, 0, 0]
                && data["(123)"] == sorted(vec![0, 0, omega(1), omega(2)])
                && data["(12345)"] == sorted(vec![zeta5(1), zeta5(2), zeta5(3), zeta5(4)])
                && data["(13524)"] == sorted(vec![zeta5(1), zeta5(2), zeta5(3), zeta5(4)])
        }
        "U" | "U_sigma" => {
            if data["1"] != vec![0, 0] || data["(123)"] != sorted(vec![omega(1), omega(2)]) {
                false
            } else {
                // exactly one embedding c must put (12345) at {zeta^c, zeta^-c}
                // and (13524) at {zeta^2c, zeta^-2c}
                let matches: Vec<u64> = (1..5)
                    .filter(|&c| {
                        data["(12345)"] == sorted(vec![zeta5(c), zeta5(5 - c)])
                            && data["(13524)"]
                                == sorted(vec![zeta5(2 * c % 5), zeta5((5 - 2 * c % 5) % 5)])
                    })
                    .collect();
                matches.len() == 2 // c and 5 - c give the same multisets
            }
        }
        _ => false,
    };
    Ok(ok)
}

/// A module for the cocycle machinery: an F2-linear action of A5 given by
/// one F2-matrix per group element.
pub struct Module {
    pub dim_f2: usize,
    /// declared field degree (1 or 2): the reported dimensions are divided
    /// by this
    pub field_degree: u32,
    pub action: HashMap<[u8; 6], FMat>,
}

impl Module {
    /// Restrict scalars of a representation to F2.
    pub fn from_rep(rep: &FiniteGroupRep, reps: &A5Reps) -> Module {
        if rep.field_degree == 1 {
            return Module {
                dim_f2: rep.dim,
                field_degree: 1,
                action: rep.mats.clone(),
            };
        }
        // each F4 entry becomes the 2x2 multiplication matrix over F2
        let f4 = &reps.f4;
        let mut action = HashMap::new();
        for (p, m) in &rep.mats {
            let mut big = FMat::zero(2 * m.rows, 2 * m.cols);
            for i in 0..m.rows {
                for j in 0..m.cols {
                    let a = m.get(i, j);
                    // columns: coordinates of a*1 and a*x in the F2-basis
                    for (bi, basis) in [1u64, 2u64].iter().enumerate() {
                        let prod = f4.mul(a, *basis);
                        let coords = f4.coeffs(prod);
                        for (bj, &c) in coords.iter().enumerate() {
                            big.set(2 * i + bj, 2 * j + bi, c as u64);
                        }
                    }
                }
            }
            action.insert(*p, big);
        }
        Module {
            dim_f2: 2 * rep.dim,
            field_degree: 2,
            action,
        }
    }

    /// Tensor product of two F2 modules.
    pub fn tensor(a: &Module, b: &Module, f2: &FieldCtx) -> Module {
        let mut action = HashMap::new();
        for (p, ma) in &a.action {
            action.insert(*p, ma.tensor(&b.action[p], f2));
        }
        Module {
            dim_f2: a.dim_f2 * b.dim_f2,
            field_degree: 1,
            action,
        }
    }

    /// Direct sum.
    pub fn direct_sum(a: &Module, b: &Module) -> Module {
        let mut action = HashMap::new();
        for (p, ma) in &a.action {
            let mb = &b.action[p];
            let mut m = FMat::zero(a.dim_f2 + b.dim_f2, a.dim_f2 + b.dim_f2);
            for i in 0..ma.rows {
                for j in 0..ma.cols {
                    m.set(i, j, ma.get(i, j));
                }
            }
            for i in 0..mb.rows {
                for j in 0..mb.cols {
                    m.set(a.dim_f2 + i, a.dim_f2 + j, mb.get(i, j));
                }
            }
            action.insert(*p, m);
        }
        Module {
            dim_f2: a.dim_f2 + b.dim_f2,
            field_degree: 1,
            action,
        }
    }

    /// The adjoint module ad V = V (x) V^* for the self-dual V, realized as
    /// conjugation action on 4x4 matrices over F2.
    pub fn adjoint_of_v(reps: &A5Reps) -> Module {
        // basis E_{ij}; g . E = g E g^{-1}
        let f2 = &reps.f2;
        let mut action = HashMap::new();
        for p in &reps.group {
            let g = reps.v.mat(p);
            let ginv = reps.v.mat(&p.inverse());
            let mut m = FMat::zero(16, 16);
            for i in 0..4 {
                for j in 0..4 {
                    // image of E_{ij}: g E_{ij} g^{-1} has (r, s) entry
                    // g[r][i] * ginv[j][s]
                    for r in 0..4 {
                        for s in 0..4 {
                            let val = f2.mul(g.get(r, i), ginv.get(j, s));
                            m.set(4 * r + s, 4 * i + j, val);
                        }
                    }
                }
            }
            action.insert(p.0, m);
        }
        Module {
            dim_f2: 16,
            field_degree: 1,
            action,
        }
    }

    /// Quotient of the adjoint by the scalar line.
    pub fn adjoint_mod_scalars(reps: &A5Reps) -> Module {
        let ad = Module::adjoint_of_v(reps);
        let f2 = &reps.f2;
        // complement basis: E_ij (i != j) and E_ii - E_00 (i > 0);
        // coordinates of a 16-vector modulo the identity line: subtract
        // x_00 * I then read off the complement coordinates
        let basis_index: Vec<(usize, usize)> = {
            let mut v = Vec::new();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        v.push((i, j));
                    }
                }
            }
            for i in 1..4 {
                v.push((i, i));
            }
            v
        };
        let coords = |vec16: &[FieldElem], f2: &FieldCtx| -> Vec<FieldElem> {
            let x00 = vec16[0];
            basis_index
                .iter()
                .map(|&(i, j)| {
                    if i == j {
                        f2.sub(vec16[4 * i + j], x00)
                    } else {
                        vec16[4 * i + j]
                    }
                })
                .collect()
        };
        let embed = |c: &[FieldElem]| -> Vec<FieldElem> {
            // lift complement coordinates back to a 16-vector (choice with
            // E_00 coefficient zero)
            let mut v = vec![0; 16];
            for (idx, &(i, j)) in basis_index.iter().enumerate() {
                v[4 * i + j] = c[idx];
            }
            v
        };
        let mut action = HashMap::new();
        for (p, m) in &ad.action {
            let mut q = FMat::zero(15, 15);
            for (col, &(i, j)) in basis_index.iter().enumerate() {
                let mut unit = vec![0; 15];
                unit[col] = 1;
                let lifted = embed(&unit);
                let image = m.mul_vec(&lifted, f2);
                let c = coords(&image, f2);
                for (row, &val) in c.iter().enumerate() {
                    q.set(row, col, val);
                }
                let _ = (i, j);
            }
            action.insert(*p, q);
        }
        Module {
            dim_f2: 15,
            field_degree: 1,
            action,
        }
    }
}

/// Dimensions of cocycles, coboundaries and H^1, over the module's declared
/// field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CohomologySpace {
    pub z1: u32,
    pub b1: u32,
    pub h1: u32,
}

/// H^1(A5, M) by the full-pairs cocycle system: unknowns phi(g) for all g,
/// equations phi(gh) = phi(g) + g phi(h) over every pair, solved as an
/// F2-linear system with bitset rows.
pub fn h1(group: &[Perm6], module: &Module, f2: &FieldCtx) -> Result<CohomologySpace> {
    let dim = module.dim_f2;
    let n = group.len();
    let width = n * dim;
    if width > 4096 {
        return Err(Error::parameter("cocycle system too large"));
    }
    let words = width.div_ceil(64);
    let index: HashMap<[u8; 6], usize> =
        group.iter().enumerate().map(|(i, p)| (p.0, i)).collect();

    // incremental row reduction over F2
    let mut pivots: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot bit, row)
    let mut insert_row = |mut row: Vec<u64>| {
        loop {
            let Some(lead) = leading_bit(&row) else { return };
            match pivots.binary_search_by(|(p, _)| p.cmp(&lead)) {
                Ok(pos) => {
                    let prow = pivots[pos].1.clone();
                    for (a, b) in row.iter_mut().zip(prow.iter()) {
                        *a ^= b;
                    }
                }
                Err(pos) => {
                    pivots.insert(pos, (lead, row));
                    return;
                }
            }
        }
    };

    for g in group {
        let gi = index[&g.0];
        let gm = &module.action[&g.0];
        for h in group {
            let hi = index[&h.0];
            let gh = g.compose(h);
            let ghi = index[&gh.0];
            // phi(gh) - phi(g) - g phi(h) = 0: dim equations
            for r in 0..dim {
                let mut row = vec![0u64; words];
                toggle(&mut row, ghi * dim + r);
                toggle(&mut row, gi * dim + r);
                for c in 0..dim {
                    if gm.get(r, c) != 0 {
                        toggle(&mut row, hi * dim + c);
                    }
                }
                insert_row(row);
            }
        }
    }
    let rank = pivots.len();
    let z1_f2 = (width - rank) as u32;

    // B^1 = M / M^G: fixed subspace via the kernel of the stacked (g - 1)
    let mut stacked_rows: Vec<Vec<FieldElem>> = Vec::new();
    for g in group {
        let gm = &module.action[&g.0];
        for r in 0..dim {
            let mut row: Vec<FieldElem> = (0..dim).map(|c| gm.get(r, c)).collect();
            row[r] = f2.sub(row[r], 1);
            stacked_rows.push(row);
        }
    }
    let stacked = FMat::from_rows(&stacked_rows);
    let fixed_dim = nullspace(&stacked, f2).len();
    let b1_f2 = (dim - fixed_dim) as u32;

    let fd = module.field_degree;
    if z1_f2 % fd != 0 || b1_f2 % fd != 0 {
        return Err(Error::diagnostic("dimensions not divisible by the field degree"));
    }
    Ok(CohomologySpace {
        z1: z1_f2 / fd,
        b1: b1_f2 / fd,
        h1: (z1_f2 - b1_f2) / fd,
    })
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    for (w, &x) in row.iter().enumerate() {
        if x != 0 {
            return Some(w * 64 + x.trailing_zeros() as usize);
        }
    }
    None
}

fn toggle(row: &mut [u64], bit: usize) {
    row[bit / 64] ^= 1 << (bit % 64);
}

/// Weak adequacy: the span of the images of the odd-order elements is the
/// full endomorphism algebra of the representation.
pub fn weakly_adequate(
    group: &[Perm6],
    rep: &FiniteGroupRep,
    ctx: &FieldCtx,
) -> bool {
    let dim = rep.dim;
    let mut rows = Vec::new();
    for p in group {
        let ord = p.order();
        if ord % 2 == 0 {
            continue;
        }
        let m = rep.mat(p);
        rows.push(m.data.clone());
    }
    let mat = FMat::from_rows(&rows);
    rank(&mat, ctx) == dim * dim
}

/// Multiplicity of each simple in the socle: dim_F4 Hom_G(S, M).
pub fn socle(module_mats: &HashMap<[u8; 6], FMat>, module_dim: usize, reps: &A5Reps) -> Vec<(String, usize)> {
    let f4 = &reps.f4;
    let simples: [(&str, &FiniteGroupRep); 4] = [
        ("k", &reps.k),
        ("U", &reps.u),
        ("U_sigma", &reps.u_sigma),
        ("V", &reps.v),
    ];
    let mut out = Vec::new();
    for (name, s) in simples {
        // lift simple matrices to F4 when defined over F2
        let d = hom_dimension(module_mats, module_dim, s, reps, f4);
        if d > 0 {
            out.push((name.to_string(), d));
        }
    }
    out
}

/// dim_F4 of Hom_{A5}(S, M) for M given by F4-matrices.
fn hom_dimension(
    module_mats: &HashMap<[u8; 6], FMat>,
    module_dim: usize,
    s: &FiniteGroupRep,
    reps: &A5Reps,
    f4: &FieldCtx,
) -> usize {
    // unknowns T (module_dim x s.dim) with T s(g) = M(g) T for generators
    let gens = [
        Perm6::from_cycles(&[&[1, 2, 3, 4, 5]]),
        Perm6::from_cycles(&[&[1, 2, 3]]),
    ];
    let unknowns = module_dim * s.dim;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    for g in &gens {
        let sg = lift_to_f4(s.mat(g), s.field_degree, reps, f4);
        let mg = &module_mats[&g.0];
        // (T sg - mg T)[i][j] = 0
        for i in 0..module_dim {
            for j in 0..s.dim {
                let mut row = vec![0; unknowns];
                for l in 0..s.dim {
                    // T[i][l] * sg[l][j]
                    let idx = i * s.dim + l;
                    row[idx] = f4.add(row[idx], sg.get(l, j));
                }
                for l in 0..module_dim {
                    let idx = l * s.dim + j;
                    row[idx] = f4.sub(row[idx], mg.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let system = FMat::from_rows(&rows);
    nullspace(&system, f4).len()
}

/// Interpret F2 matrices inside F4 (entries 0/1 embed directly).
pub fn lift_to_f4(m: &FMat, field_degree: u32, _reps: &A5Reps, _f4: &FieldCtx) -> FMat {
    let _ = field_degree;
    m.clone()
}

/// V (x) V over F4 (V lifted entry-wise).
pub fn v_tensor_v_f4(reps: &A5Reps) -> (HashMap<[u8; 6], FMat>, usize) {
    let f4 = &reps.f4;
    let mut out = HashMap::new();
    for p in &reps.group {
        let m = reps.v.mat(p);
        out.insert(p.0, m.tensor(m, f4));
    }
    (out, 16)
}

/// Nearly adequate: weakly adequate, H^1(H, k) = 0, and H^1(H, ad) = 0.
pub fn nearly_adequate(group: &[Perm6], rep: &FiniteGroupRep, reps: &A5Reps) -> Result<bool> {
    let f2 = &reps.f2;
    if !weakly_adequate(group, rep, if rep.field_degree == 1 { f2 } else { &reps.f4 }) {
        return Ok(false);
    }
    let triv = Module {
        dim_f2: 1,
        field_degree: 1,
        action: group
            .iter()
            .map(|p| (p.0, FMat::identity(1)))
            .collect(),
    };
    if h1(group, &triv, f2)?.h1 != 0 {
        return Ok(false);
    }
    // adjoint of the representation as an F2 module (conjugation action)
    let m = Module::from_rep(rep, reps);
    let dim = m.dim_f2;
    let mut action = HashMap::new();
    for p in group {
        let g = &m.action[&p.0];
        let ginv = &m.action[&p.inverse().0];
        let mut big = FMat::zero(dim * dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for r in 0..dim {
                    for s in 0..dim {
                        let val = f2.mul(g.get(r, i), ginv.get(j, s));
                        big.set(dim * r + s, dim * i + j, val);
                    }
                }
            }
        }
        action.insert(p.0, big);
    }
    let ad = Module {
        dim_f2: dim * dim,
        field_degree: 1,
        action,
    };
    if ad.dim_f2 * group.len() > 4096 {
        return Err(Error::parameter("adjoint module too large"));
    }
    Ok(h1(group, &ad, f2)?.h1 == 0)
}

#[derive(Debug, Clone)]
pub struct Sym3Report {
    /// dim Hom(Sym^3 U, V) over F4 and whether a basis Hom is invertible
    pub sym3_hom_dim: usize,
    pub sym3_is_isomorphism: bool,
    /// V restricted to the Klein four-group has a free generator
    pub v_klein_free: bool,
    /// the 4-dimensional trivial module does not (control)
    pub trivial_klein_free: bool,
}

/// Identify Sym^3 U with V and verify the Sylow-2 freeness of V.
pub fn sym3_and_projectivity_checks(reps: &A5Reps) -> Result<Sym3Report> {
    let f4 = &reps.f4;
    let f2 = &reps.f2;
    // Hom(Sym^3 U, V) over F4
    let gens = [
        Perm6::from_cycles(&[&[1, 2, 3, 4, 5]]),
        Perm6::from_cycles(&[&[1, 2, 3]]),
    ];
    let mut rows = Vec::new();
    for g in &gens {
        let sg = sym3(reps.u.mat(g), f4);
        let vg = reps.v.mat(g);
        for i in 0..4 {
            for j in 0..4 {
                let mut row = vec![0u64; 16];
                for l in 0..4 {
                    row[i * 4 + l] = f4.add(row[i * 4 + l], sg.get(l, j));
                }
                for l in 0..4 {
                    row[l * 4 + j] = f4.sub(row[l * 4 + j], vg.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let ns = nullspace(&FMat::from_rows(&rows), f4);
    let iso = ns.first().map_or(false, |t| {
        let mut m = FMat::zero(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                m.set(i, j, t[i * 4 + j]);
            }
        }
        m.is_invertible(f4)
    });
    // Klein-four freeness
    let g1 = Perm6::from_cycles(&[&[1, 2], &[3, 4]]);
    let g2 = Perm6::from_cycles(&[&[1, 3], &[2, 4]]);
    let g3 = Perm6::from_cycles(&[&[1, 4], &[2, 3]]);
    let mats = [
        FMat::identity(4),
        reps.v.mat(&g1).clone(),
        reps.v.mat(&g2).clone(),
        reps.v.mat(&g3).clone(),
    ];
    let free = (0u64..16).any(|wbits| {
        let w: Vec<u64> = (0..4).map(|i| (wbits >> i) & 1).collect();
        let orbit: Vec<Vec<u64>> = mats.iter().map(|m| m.mul_vec(&w, f2)).collect();
        rank(&FMat::from_rows(&orbit), f2) == 4
    });
    let trivial_free = (0u64..16).any(|wbits| {
        let w: Vec<u64> = (0..4).map(|i| (wbits >> i) & 1).collect();
        let orbit: Vec<Vec<u64>> = (0..4).map(|_| w.clone()).collect();
        rank(&FMat::from_rows(&orbit), f2) == 4
    });
    Ok(Sym3Report {
        sym3_hom_dim: ns.len(),
        sym3_is_isomorphism: iso,
        v_klein_free: free,
        trivial_klein_free: trivial_free,
    })
}

/// Sym^3 of a 2x2 matrix over F4, in the basis e1^3, e1^2 e2, e1 e2^2, e2^3.
pub fn sym3(m: &FMat, ctx: &FieldCtx) -> FMat {
    let a = m.get(0, 0);
    let b = m.get(0, 1);
    let c = m.get(1, 0);
    let d = m.get(1, 1);
    // images of e1 -> a e1 + c e2, e2 -> b e1 + d e2; characteristic 2
    // binomials: (x + y)^3 = x^3 + x^2 y + x y^2 + y^3, and the middle
    // monomial expansions keep all cross terms (multiplicities 1 mod 2
    // computed explicitly below)
    let cube = |x: FieldElem| ctx.mul(ctx.mul(x, x), x);
    let sq = |x: FieldElem| ctx.mul(x, x);
    let mut out = FMat::zero(4, 4);
    // column 0: (a e1 + c e2)^3
    out.set(0, 0, cube(a));
    out.set(1, 0, ctx.mul(sq(a), c)); // 3 a^2 c = a^2 c mod 2
    out.set(2, 0, ctx.mul(a, sq(c)));
    out.set(3, 0, cube(c));
    // column 3: (b e1 + d e2)^3
    out.set(0, 3, cube(b));
    out.set(1, 3, ctx.mul(sq(b), d));
    out.set(2, 3, ctx.mul(b, sq(d)));
    out.set(3, 3, cube(d));
    // column 1: (a e1 + c e2)^2 (b e1 + d e2)
    // = a^2 b e1^3 + a^2 d e1^2 e2 + c^2 b e1 e2^2 + c^2 d e2^3
    out.set(0, 1, ctx.mul(sq(a), b));
    out.set(1, 1, ctx.mul(sq(a), d));
    out.set(2, 1, ctx.mul(sq(c), b));
    out.set(3, 1, ctx.mul(sq(c), d));
    // column 2: (a e1 + c e2)(b e1 + d e2)^2
    out.set(0, 2, ctx.mul(a, sq(b)));
    out.set(1, 2, ctx.mul(sq(b), c));
    out.set(2, 2, ctx.mul(a, sq(d)));
    out.set(3, 2, ctx.mul(c, sq(d)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nearly_adequate_examples() {
        let reps = build_a5_reps().unwrap();
        assert!(nearly_adequate(&reps.group, &reps.v, &reps).unwrap());
        // an odd-order subgroup acting reducibly is not even weakly adequate
        let c3 = Perm6::from_cycles(&[&[1, 2, 3]]);
        let sub = vec![Perm6::IDENTITY, c3, c3.compose(&c3)];
        assert!(!nearly_adequate(&sub, &reps.v, &reps).unwrap());
    }

    #[test]
    fn sym3_report() {
        let reps = build_a5_reps().unwrap();
        let r = sym3_and_projectivity_checks(&reps).unwrap();
        assert_eq!(r.sym3_hom_dim, 1);
        assert!(r.sym3_is_isomorphism);
        assert!(r.v_klein_free);
        assert!(!r.trivial_klein_free);
    }

    #[test]
    fn sym3_is_multiplicative() {
        let f4 = field_make(2, 2).unwrap();
        let reps = build_a5_reps().unwrap();
        let s = Perm6::from_cycles(&[&[1, 2, 3, 4, 5]]);
        let t = Perm6::from_cycles(&[&[1, 2, 3]]);
        let st = s.compose(&t);
        let ms = sym3(reps.u.mat(&s), &f4);
        let mt = sym3(reps.u.mat(&t), &f4);
        let mst = sym3(reps.u.mat(&st), &f4);
        assert_eq!(ms.mul(&mt, &f4), mst);
    }
}
