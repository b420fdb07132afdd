//! Exact arithmetic in the small finite fields GF(2^k) (k <= 24) and
//! GF(3^k) (k <= 4), plus univariate polynomial algebra over them.
//!
//! Elements are stored packed in a `u64`: one bit per coefficient in
//! characteristic 2, two bits per coefficient in characteristic 3. All
//! arithmetic goes through a [`FieldCtx`], which fixes a deterministic
//! modulus (the lexicographically least monic irreducible polynomial of the
//! requested degree) so that element encodings are stable across runs.
//!
//! Fields with at most 2^16 elements carry dense exp/log tables; the larger
//! binary fields (2^17..2^24 elements) fall back to shift-and-xor polynomial
//! multiplication with a precomputed reduction table.

mod poly;
mod zpoly;

pub use poly::FPoly;
pub use zpoly::{zpoly_content_free, zpoly_derivative, zpoly_gcd, zpoly_is_squarefree, ZPoly};

use crate::error::{Error, Result};

/// Packed field element. Only meaningful relative to the [`FieldCtx`] that
/// produced it.
pub type FieldElem = u64;

const TABLE_LIMIT: u64 = 1 << 16;

/// Arithmetic context for GF(p^k), p in {2, 3}.
pub struct FieldCtx {
    p: u8,
    k: u32,
    q: u64,
    /// Modulus coefficients, ascending, length k+1, monic.
    modulus: Vec<u8>,
    /// exp[i] = g^i for a fixed generator g, length q-1 (empty when untabled).
    exp: Vec<u64>,
    /// log[enc(x)] for x != 0 (garbage at 0), empty when untabled.
    log: Vec<u32>,
    /// char 2 only: reduction[i] = x^(k+i) mod modulus, i in 0..k.
    reduction: Vec<u64>,
    /// Solver for z^2 + z = w (char 2): row-reduced basis of the image of
    /// the F2-linear map z -> z^2 + z, with matching preimages.
    as_rows: Vec<(u64, u64)>,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(GF({}^{}))", self.p, self.k)
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for FieldCtx {}

/// Build the context for GF(p^k) with the fixed deterministic modulus.
pub fn field_make(p: u8, k: u32) -> Result<FieldCtx> {
    let ok = match p {
        2 => (1..=24).contains(&k),
        3 => (1..=4).contains(&k),
        _ => false,
    };
    if !ok {
        return Err(Error::parameter(format!("unsupported field GF({p}^{k})")));
    }
    let q = (p as u64).pow(k);
    let modulus = least_irreducible(p, k);
    let mut ctx = FieldCtx {
        p,
        k,
        q,
        modulus,
        exp: Vec::new(),
        log: Vec::new(),
        reduction: Vec::new(),
        as_rows: Vec::new(),
    };
    if p == 2 {
        ctx.reduction = ctx.build_reduction();
    }
    if q <= TABLE_LIMIT {
        ctx.build_tables();
    }
    if p == 2 {
        ctx.as_rows = ctx.build_artin_schreier_rows();
    }
    Ok(ctx)
}

/// Lexicographically least monic irreducible polynomial of degree k over F_p,
/// comparing coefficient vectors (c_{k-1}, ..., c_0) with 0 < 1 < 2.
fn least_irreducible(p: u8, k: u32) -> Vec<u8> {
    if k == 1 {
        // x itself
        return vec![0, 1];
    }
    let pk = (p as u64).pow(k);
    let mut lower = 0u64;
    while lower < pk {
        // `lower` enumerates (c_{k-1}, ..., c_0) lexicographically when read
        // as a base-p number with c_{k-1} as the most significant digit.
        let mut coeffs = vec![0u8; k as usize + 1];
        coeffs[k as usize] = 1;
        let mut rem = lower;
        for i in (0..k as usize).rev() {
            // most significant digit first -> highest coefficient index first
            let digit = (rem / (p as u64).pow(i as u32)) % p as u64;
            coeffs[i] = digit as u8;
            rem %= (p as u64).pow(i as u32);
        }
        if dense_irreducible(p, &coeffs) {
            return coeffs;
        }
        lower += 1;
    }
    unreachable!("irreducible polynomial of degree {k} over F_{p} exists");
}

/// Irreducibility over the prime field by trial division (degrees <= 24,
/// coefficients ascending, monic).
fn dense_irreducible(p: u8, f: &[u8]) -> bool {
    let n = f.len() - 1;
    // x^(p^d) mod f built by repeated Frobenius; f irreducible iff
    // gcd(f, x^(p^d) - x) = 1 for all d <= n/2 and x^(p^n) == x mod f.
    let mul = |a: &[u8], b: &[u8]| -> Vec<u8> {
        let mut out = vec![0u8; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u16 + ai as u16 * bj as u16) % p as u16) as u8;
            }
        }
        out
    };
    let rem = |mut a: Vec<u8>, m: &[u8]| -> Vec<u8> {
        // m must be monic
        let dm = m.len() - 1;
        while a.len() > dm {
            let lead = *a.last().unwrap();
            let da = a.len() - 1;
            if lead != 0 {
                for i in 0..=dm {
                    let idx = da - dm + i;
                    let sub = (lead as u16 * m[i] as u16) % p as u16;
                    a[idx] = ((a[idx] as u16 + p as u16 * p as u16 - sub) % p as u16) as u8;
                }
            }
            a.pop();
        }
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    };
    let polygcd = |mut a: Vec<u8>, mut b: Vec<u8>| -> Vec<u8> {
        let trim = |v: &mut Vec<u8>| {
            while v.last() == Some(&0) {
                v.pop();
            }
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // make b monic
            let lead = *b.last().unwrap();
            if lead != 1 {
                let inv = (1..p).find(|&t| (t * lead) % p == 1).unwrap();
                for c in b.iter_mut() {
                    *c = (*c * inv) % p;
                }
            }
            let r = rem(a.clone(), &b);
            a = b;
            b = r;
            trim(&mut b);
        }
        a
    };
    // frobenius powers of x
    let mut xp = vec![0u8, 1]; // x
    for d in 1..=n {
        // xp = xp^p mod f
        let mut acc = xp.clone();
        for _ in 1..p {
            acc = rem(mul(&acc, &xp), f);
        }
        xp = acc;
        if d <= n / 2 {
            // gcd(f, xp - x)
            let mut diff = xp.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let g = polygcd(f.to_vec(), diff);
            if g.len() > 1 {
                return false;
            }
        }
    }
    xp.len() == 2 && xp[0] == 0 && xp[1] == 1
}

impl FieldCtx {
    pub fn characteristic(&self) -> u8 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        0
    }
    pub fn one(&self) -> FieldElem {
        1
    }

    /// Embed a prime-field scalar 0..p.
    pub fn scalar(&self, c: u8) -> FieldElem {
        (c % self.p) as u64
    }

    fn digits(&self, x: FieldElem) -> [u8; 24] {
        let mut out = [0u8; 24];
        match self.p {
            2 => {
                for (i, o) in out.iter_mut().enumerate().take(self.k as usize) {
                    *o = ((x >> i) & 1) as u8;
                }
            }
            _ => {
                for (i, o) in out.iter_mut().enumerate().take(self.k as usize) {
                    *o = ((x >> (2 * i)) & 3) as u8;
                }
            }
        }
        out
    }

    fn from_digits(&self, d: &[u8]) -> FieldElem {
        let mut x = 0u64;
        match self.p {
            2 => {
                for (i, &c) in d.iter().enumerate().take(self.k as usize) {
                    x |= ((c & 1) as u64) << i;
                }
            }
            _ => {
                for (i, &c) in d.iter().enumerate().take(self.k as usize) {
                    x |= ((c % 3) as u64) << (2 * i);
                }
            }
        }
        x
    }

    /// Coefficient vector over the prime field, length = degree.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u8> {
        self.digits(x)[..self.k as usize].to_vec()
    }

    /// Build an element from prime-field coefficients (ascending).
    pub fn from_coeffs(&self, c: &[u8]) -> FieldElem {
        self.from_digits(c)
    }

    /// Iterate all q elements in a fixed deterministic order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(move |i| self.nth_element(i))
    }

    /// The i-th element (bijective with 0..q).
    pub fn nth_element(&self, i: u64) -> FieldElem {
        match self.p {
            2 => i,
            _ => {
                let mut x = 0u64;
                let mut rem = i;
                for d in 0..self.k {
                    x |= (rem % 3) << (2 * d);
                    rem /= 3;
                }
                x
            }
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match self.p {
            2 => a ^ b,
            _ => {
                let da = self.digits(a);
                let db = self.digits(b);
                let mut out = [0u8; 24];
                for i in 0..self.k as usize {
                    out[i] = (da[i] + db[i]) % 3;
                }
                self.from_digits(&out)
            }
        }
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        match self.p {
            2 => a,
            _ => {
                let da = self.digits(a);
                let mut out = [0u8; 24];
                for i in 0..self.k as usize {
                    out[i] = (3 - da[i]) % 3;
                }
                self.from_digits(&out)
            }
        }
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let la = self.log[a as usize] as u64;
            let lb = self.log[b as usize] as u64;
            return self.exp[((la + lb) % (self.q - 1)) as usize];
        }
        // untabled: char 2 only (q > 2^16 occurs only for p = 2)
        debug_assert_eq!(self.p, 2);
        let mut prod: u64 = 0;
        let mut aa = a;
        let mut i = 0;
        while aa != 0 {
            if aa & 1 == 1 {
                prod ^= b << i;
            }
            aa >>= 1;
            i += 1;
        }
        self.reduce2(prod)
    }

    /// Reduce a raw xor-product of degree < 2k (char 2).
    fn reduce2(&self, mut x: u64) -> u64 {
        let k = self.k;
        for i in (k..2 * k).rev() {
            if (x >> i) & 1 == 1 {
                x ^= 1 << i;
                x ^= self.reduction[(i - k) as usize];
            }
        }
        x
    }

    fn build_reduction(&self) -> Vec<u64> {
        // x^(k+i) mod modulus, i in 0..k (char 2)
        let k = self.k;
        let m: u64 = self
            .modulus
            .iter()
            .enumerate()
            .take(k as usize)
            .fold(0u64, |acc, (i, &c)| acc | ((c as u64 & 1) << i));
        let mut out = Vec::with_capacity(k as usize);
        let mut cur = m; // x^k == m (mod modulus)
        out.push(cur);
        for _ in 1..k {
            cur <<= 1;
            if (cur >> k) & 1 == 1 {
                cur ^= 1 << k;
                cur ^= m;
            }
            out.push(cur);
        }
        out
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        // schoolbook multiply + reduce, used only while building tables
        if a == 0 || b == 0 {
            return 0;
        }
        match self.p {
            2 => {
                let mut prod: u64 = 0;
                let mut aa = a;
                let mut i = 0;
                while aa != 0 {
                    if aa & 1 == 1 {
                        prod ^= b << i;
                    }
                    aa >>= 1;
                    i += 1;
                }
                self.reduce2(prod)
            }
            _ => {
                let da = self.digits(a);
                let db = self.digits(b);
                let k = self.k as usize;
                let mut prod = [0u8; 48];
                for i in 0..k {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % 3;
                    }
                }
                // reduce by modulus
                for d in (k..2 * k).rev() {
                    let c = prod[d];
                    if c == 0 {
                        continue;
                    }
                    prod[d] = 0;
                    for (i, &mc) in self.modulus.iter().enumerate().take(k) {
                        let idx = d - k + i;
                        prod[idx] = (prod[idx] + 3 - (c * mc) % 3 % 3) % 3;
                    }
                }
                self.from_digits(&prod[..k])
            }
        }
    }

    fn build_tables(&mut self) {
        let q = self.q;
        // find a generator: try elements in encoding order
        let factors = prime_factors(q - 1);
        let mut gen = 0u64;
        'outer: for cand in 1..q {
            let x = self.nth_element(cand);
            if x == 0 {
                continue;
            }
            for &f in &factors {
                if self.pow_slow(x, (q - 1) / f) == 1 {
                    continue 'outer;
                }
            }
            gen = x;
            break;
        }
        assert_ne!(gen, 0, "multiplicative generator exists");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![0u32; self.max_encoding() as usize + 1];
        let mut cur = 1u64;
        for i in 0..(q - 1) {
            exp.push(cur);
            log[cur as usize] = i as u32;
            cur = self.mul_slow(cur, gen);
        }
        debug_assert_eq!(cur, 1);
        self.exp = exp;
        self.log = log;
    }

    fn max_encoding(&self) -> u64 {
        match self.p {
            2 => self.q - 1,
            _ => {
                // all-2 digit pattern
                let mut x = 0u64;
                for d in 0..self.k {
                    x |= 2 << (2 * d);
                }
                x
            }
        }
    }

    fn pow_slow(&self, x: FieldElem, e: u64) -> FieldElem {
        let mut acc = 1u64;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, x: FieldElem, e: u64) -> FieldElem {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if !self.exp.is_empty() {
            let l = self.log[x as usize] as u128;
            let idx = (l * (e as u128 % (self.q as u128 - 1))) % (self.q as u128 - 1);
            return self.exp[idx as usize];
        }
        let mut acc = 1u64;
        let mut base = x;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x == 0 {
            return Err(Error::usage("inverse of zero"));
        }
        if !self.exp.is_empty() {
            let l = self.log[x as usize] as u64;
            return Ok(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]);
        }
        Ok(self.pow(x, self.q - 2))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Arithmetic Frobenius x -> x^p.
    pub fn frobenius(&self, x: FieldElem) -> FieldElem {
        self.pow(x, self.p as u64)
    }

    /// q0-power Frobenius iterated: x -> x^(p^j).
    pub fn frobenius_iter(&self, x: FieldElem, j: u32) -> FieldElem {
        let mut y = x;
        for _ in 0..(j % self.k.max(1)) {
            y = self.frobenius(y);
        }
        y
    }

    /// Absolute trace to the prime field, returned as 0..p.
    pub fn trace(&self, x: FieldElem) -> u8 {
        let mut acc = 0u64;
        let mut cur = x;
        for _ in 0..self.k {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        debug_assert!(acc < self.p as u64);
        acc as u8
    }

    /// Square root. In char 2 this is the inverse Frobenius (always exists);
    /// in char 3 returns None for non-squares.
    pub fn sqrt(&self, x: FieldElem) -> Option<FieldElem> {
        if x == 0 {
            return Some(0);
        }
        match self.p {
            2 => {
                let mut y = x;
                for _ in 0..self.k - 1 {
                    y = self.mul(y, y);
                }
                debug_assert_eq!(self.mul(y, y), x);
                Some(y)
            }
            _ => {
                let l = self.log[x as usize] as u64;
                if l % 2 != 0 {
                    return None;
                }
                Some(self.exp[(l / 2) as usize])
            }
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, x: FieldElem) -> u64 {
        assert_ne!(x, 0);
        let mut n = self.q - 1;
        for f in prime_factors(self.q - 1) {
            while n % f == 0 && self.pow(x, n / f) == 1 {
                n /= f;
            }
        }
        n
    }

    fn build_artin_schreier_rows(&self) -> Vec<(u64, u64)> {
        // Row-reduced (image, preimage) pairs for z -> z^2 + z over the F2
        // basis 1, x, x^2, ...: lets solve_artin_schreier run in O(k) xors.
        let mut rows: Vec<(u64, u64)> = Vec::new();
        for i in 0..self.k {
            let z = 1u64 << i;
            let mut im = self.add(self.mul(z, z), z);
            let mut pre = z;
            // reduce against existing rows
            for &(rim, rpre) in &rows {
                let pivot = 63 - rim.leading_zeros();
                if im >> pivot & 1 == 1 {
                    im ^= rim;
                    pre ^= rpre;
                }
            }
            if im != 0 {
                rows.push((im, pre));
                rows.sort_by_key(|&(rim, _)| std::cmp::Reverse(rim));
            }
        }
        rows
    }

    /// Solve z^2 + z = w in char 2. Exists iff trace(w) = 0; the two
    /// solutions are z and z+1, the one with lowest encoding is returned.
    pub fn solve_artin_schreier(&self, w: FieldElem) -> Option<FieldElem> {
        debug_assert_eq!(self.p, 2);
        let mut rem = w;
        let mut z = 0u64;
        for &(rim, rpre) in &self.as_rows {
            let pivot = 63 - rim.leading_zeros();
            if rem >> pivot & 1 == 1 {
                rem ^= rim;
                z ^= rpre;
            }
        }
        if rem != 0 {
            return None;
        }
        debug_assert_eq!(self.add(self.mul(z, z), z), w);
        Some(z.min(z ^ 1))
    }

    /// Evaluate a polynomial given by ascending field coefficients.
    pub fn eval(&self, coeffs: &[FieldElem], x: FieldElem) -> FieldElem {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Embedding of a subfield context (degree d | k) into this field,
    /// sending the subfield generator to the lexicographically least root of
    /// the subfield modulus. Returns the image of `x`.
    pub fn embed_from(&self, sub: &FieldCtx, x: FieldElem) -> Result<FieldElem> {
        if sub.p != self.p || self.k % sub.k != 0 {
            return Err(Error::parameter("not a subfield"));
        }
        if sub.k == 1 {
            return Ok(self.scalar(x as u8));
        }
        let root = self.subfield_generator_image(sub)?;
        // x = sum c_i * g^i in the subfield; map g -> root
        let coeffs = sub.coeffs(x);
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, root), self.scalar(c));
        }
        Ok(acc)
    }

    fn subfield_generator_image(&self, sub: &FieldCtx) -> Result<FieldElem> {
        // least root (in element iteration order) of sub.modulus in self
        let mcoeffs: Vec<FieldElem> = sub.modulus.iter().map(|&c| self.scalar(c)).collect();
        let f = FPoly::new(mcoeffs, self);
        let roots = poly_roots(&f, self)?;
        roots
            .into_iter()
            .min()
            .ok_or_else(|| Error::diagnostic("subfield modulus has no root in superfield"))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All roots of `f` in the context field, with multiplicity.
///
/// Fields of at most 2^16 elements are scanned exhaustively; larger fields
/// first split off the product of linear factors with gcd(f, x^q - x) and
/// then extract roots by trace-based splitting.
pub fn poly_roots(f: &FPoly, ctx: &FieldCtx) -> Result<Vec<FieldElem>> {
    if f.is_zero() {
        return Err(Error::parameter("roots of the zero polynomial"));
    }
    let mut roots = Vec::new();
    if ctx.order() <= TABLE_LIMIT {
        for x in ctx.elements() {
            if ctx.eval(f.coeffs(), x) == 0 {
                // multiplicity by repeated division
                let mut g = f.clone();
                loop {
                    let (q, r) = g.divrem(&FPoly::new(vec![ctx.neg(x), 1], ctx), ctx);
                    if !r.is_zero() {
                        break;
                    }
                    roots.push(x);
                    g = q;
                    if ctx.eval(g.coeffs(), x) != 0 {
                        break;
                    }
                }
            }
        }
        roots.sort_unstable();
        return Ok(roots);
    }
    // Large binary field: linear-factor extraction.
    let lin = f.linear_part(ctx);
    let mut stack = vec![lin];
    let mut found: Vec<FieldElem> = Vec::new();
    let mut seed_elem: u64 = 1;
    while let Some(g) = stack.pop() {
        if g.degree() <= 0 {
            continue;
        }
        if g.degree() == 1 {
            // root of c0 + c1 x
            let c0 = g.coeffs()[0];
            let c1 = g.coeffs()[1];
            found.push(ctx.div(ctx.neg(c0), c1)?);
            continue;
        }
        // trace splitting: T(r*x) = sum (r*x)^(2^i), gcd with g
        let mut split = None;
        for _ in 0..64 {
            let r = seed_elem;
            seed_elem = seed_elem.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(1) % ctx.order();
            if r == 0 {
                continue;
            }
            let rx = FPoly::new(vec![0, r], ctx);
            let mut term = rx.rem(&g, ctx);
            let mut acc = term.clone();
            for _ in 1..ctx.degree() {
                term = term.mul(&term, ctx).rem(&g, ctx);
                acc = acc.add(&term, ctx);
            }
            let d = acc.gcd(&g, ctx);
            if d.degree() > 0 && d.degree() < g.degree() {
                let (quot, rem) = g.divrem(&d, ctx);
                debug_assert!(rem.is_zero());
                split = Some((d, quot));
                break;
            }
        }
        match split {
            Some((a, b)) => {
                stack.push(a);
                stack.push(b);
            }
            None => return Err(Error::diagnostic("root splitting did not converge")),
        }
    }
    // multiplicities
    for r in found {
        let lin = FPoly::new(vec![ctx.neg(r), 1], ctx);
        let mut g = f.clone();
        loop {
            let (q, rem) = g.divrem(&lin, ctx);
            if !rem.is_zero() {
                break;
            }
            roots.push(r);
            g = q;
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

/// Sorted multiset of degrees of the irreducible factors of `f` (with
/// multiplicity), by squarefree decomposition then distinct-degree splitting.
pub fn poly_factor_degrees(f: &FPoly, ctx: &FieldCtx) -> Result<Vec<u32>> {
    if f.is_zero() {
        return Err(Error::parameter("factoring the zero polynomial"));
    }
    let mut out: Vec<u32> = Vec::new();
    for (g, mult) in squarefree_decomposition(f, ctx) {
        for (d, count) in distinct_degree_counts(&g, ctx) {
            for _ in 0..count * mult {
                out.push(d);
            }
        }
    }
    out.sort_unstable();
    debug_assert_eq!(out.iter().sum::<u32>(), f.degree().max(0) as u32);
    Ok(out)
}

/// Decompose f (up to leading unit) as prod g_i^{m_i} with g_i squarefree and
/// pairwise coprime; returns (g_i, m_i) pairs. Handles the char-p collapse
/// f' = 0 via p-th root descent.
pub fn squarefree_decomposition(f: &FPoly, ctx: &FieldCtx) -> Vec<(FPoly, u32)> {
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    squarefree_rec(&f.monic(ctx), 1, ctx, &mut out);
    out
}

fn squarefree_rec(f: &FPoly, scale: u32, ctx: &FieldCtx, out: &mut Vec<(FPoly, u32)>) {
    if f.degree() <= 0 {
        return;
    }
    let fp = f.derivative(ctx);
    if fp.is_zero() {
        // f = g(x^p): take p-th root and recurse with multiplicity * p
        let g = f.pth_root(ctx);
        squarefree_rec(&g, scale * ctx.characteristic() as u32, ctx, out);
        return;
    }
    let mut c = f.gcd(&fp, ctx); // product of repeated parts (with char-p caveats)
    let mut w = f.divrem(&c, ctx).0; // squarefree part * (unit)
    let mut mult = 1u32;
    // classic Musser loop
    while w.degree() > 0 {
        let y = w.gcd(&c, ctx);
        let fac = w.divrem(&y, ctx).0;
        if fac.degree() > 0 {
            out.push((fac.monic(ctx), mult * scale));
        }
        w = y;
        c = c.divrem(&w, ctx).0;
        mult += 1;
    }
    if c.degree() > 0 {
        // leftover p-th power content
        squarefree_rec(&c, scale, ctx, out);
    }
}

/// (degree, count) pairs for the irreducible factors of squarefree `f`.
fn distinct_degree_counts(f: &FPoly, ctx: &FieldCtx) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut g = f.monic(ctx);
    let q = ctx.order();
    // h = x^(q^d) mod g, iterated
    let mut h = FPoly::new(vec![0, 1], ctx).rem(&g, ctx);
    let mut d = 0u32;
    while g.degree() > 0 {
        d += 1;
        if (g.degree() as u32) < 2 * d {
            // remainder is irreducible
            out.push((g.degree() as u32, 1));
            break;
        }
        h = h.modpow(q, &g, ctx);
        let diff = h.sub(&FPoly::new(vec![0, 1], ctx), ctx);
        let factor = diff.gcd(&g, ctx);
        if factor.degree() > 0 {
            out.push((d, factor.degree() as u32 / d));
            g = g.divrem(&factor, ctx).0;
            h = h.rem(&g, ctx);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_make_rejects_unsupported() {
        assert!(field_make(5, 1).is_err());
        assert!(field_make(2, 25).is_err());
        assert!(field_make(3, 5).is_err());
        assert!(field_make(2, 0).is_err());
    }

    #[test]
    fn f2_prime_field() {
        let f2 = field_make(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.add(1, 1), 0);
        assert_eq!(f2.mul(1, 1), 1);
        // x^2 = x for all x in F2
        for x in f2.elements() {
            assert_eq!(f2.frobenius(x), x);
        }
    }

    #[test]
    fn f4_fixed_modulus_and_frobenius() {
        let f4 = field_make(2, 2).unwrap();
        // lexicographically least irreducible quadratic over F2 is x^2+x+1
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // generator g (= x, encoding 2): g^2 = g + 1
        let g = 2u64;
        assert_eq!(f4.frobenius(g), f4.add(g, 1));
        assert_eq!(f4.mult_order(g), 3);
    }

    #[test]
    fn f9_properties() {
        let f9 = field_make(3, 2).unwrap();
        assert_eq!(f9.order(), 9);
        // modulus x^2 + 1 (lex-least irreducible over F3)
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        // multiplicative group has order 8: find a generator
        let gen = f9.elements().find(|&x| x != 0 && f9.mult_order(x) == 8);
        assert!(gen.is_some());
        // frobenius is x -> x^3 with (x^3)^3 = x
        for x in f9.elements() {
            let y = f9.frobenius(x);
            assert_eq!(f9.frobenius(y), x);
        }
    }

    #[test]
    fn exhaustive_field_axioms_small() {
        // a^(p^k) = a and cyclic multiplicative group, for all fields <= 2^12
        for (p, k) in [(2u8, 1u32), (2, 2), (2, 4), (2, 8), (2, 12), (3, 1), (3, 2), (3, 3), (3, 4)] {
            let ctx = field_make(p, k).unwrap();
            for x in ctx.elements() {
                assert_eq!(ctx.pow(x, ctx.order()), x, "a^q = a in GF({p}^{k})");
            }
            let target = ctx.order() - 1;
            let has_gen = ctx.elements().any(|x| x != 0 && ctx.mult_order(x) == target);
            assert!(has_gen, "cyclic of order {target}");
        }
    }

    #[test]
    fn large_binary_field_arithmetic() {
        let ctx = field_make(2, 20).unwrap();
        let a = 0xabcde;
        let b = 0x12345;
        let ab = ctx.mul(a, b);
        assert_eq!(ctx.mul(ab, ctx.inv(b).unwrap()), a);
        assert_eq!(ctx.pow(a, ctx.order() - 1), 1);
        let f24 = field_make(2, 24).unwrap();
        let x = 0xfedcba;
        assert_eq!(f24.mul(x, f24.inv(x).unwrap()), 1);
        assert_eq!(f24.pow(x, f24.order()), x);
    }

    #[test]
    fn artin_schreier_solutions() {
        for k in [1u32, 2, 3, 4, 6, 8, 12] {
            let ctx = field_make(2, k).unwrap();
            for w in ctx.elements().take(256) {
                match ctx.solve_artin_schreier(w) {
                    Some(z) => {
                        assert_eq!(ctx.add(ctx.mul(z, z), z), w);
                        assert_eq!(ctx.trace(w), 0);
                    }
                    None => assert_eq!(ctx.trace(w), 1),
                }
            }
        }
    }

    #[test]
    fn sqrt_char3() {
        let f81 = field_make(3, 4).unwrap();
        let mut squares = 0;
        for x in f81.elements() {
            if let Some(s) = f81.sqrt(x) {
                assert_eq!(f81.mul(s, s), x);
                squares += 1;
            }
        }
        assert_eq!(squares, 41); // 0 plus (81-1)/2 nonzero squares
    }

    #[test]
    fn embeddings_commute_with_arithmetic() {
        let pairs = [
            (field_make(2, 2).unwrap(), field_make(2, 4).unwrap()),
            (field_make(2, 2).unwrap(), field_make(2, 8).unwrap()),
            (field_make(2, 3).unwrap(), field_make(2, 12).unwrap()),
            (field_make(3, 2).unwrap(), field_make(3, 4).unwrap()),
        ];
        for (sub, sup) in &pairs {
            for a in sub.elements() {
                for b in sub.elements() {
                    let ea = sup.embed_from(sub, a).unwrap();
                    let eb = sup.embed_from(sub, b).unwrap();
                    assert_eq!(sup.add(ea, eb), sup.embed_from(sub, sub.add(a, b)).unwrap());
                    assert_eq!(sup.mul(ea, eb), sup.embed_from(sub, sub.mul(a, b)).unwrap());
                }
            }
            // injectivity on a sample
            let images: std::collections::HashSet<_> =
                sub.elements().map(|a| sup.embed_from(sub, a).unwrap()).collect();
            assert_eq!(images.len() as u64, sub.order());
        }
    }

    #[test]
    fn roots_examples() {
        let f2 = field_make(2, 1).unwrap();
        // x^2 + x over F2 -> {0, 1}
        let f = FPoly::new(vec![0, 1, 1], &f2);
        assert_eq!(poly_roots(&f, &f2).unwrap(), vec![0, 1]);

        let f3 = field_make(3, 1).unwrap();
        // x^2 + 1 over F3 -> no roots
        let g = FPoly::new(vec![1, 0, 1], &f3);
        assert!(poly_roots(&g, &f3).unwrap().is_empty());

        // x^5 + 2x + 1 over F3 is irreducible (exhaustive evaluation finds no
        // roots; factor-degree partition {5})
        let h = FPoly::new(vec![1, 2, 0, 0, 0, 1], &f3);
        let degs = poly_factor_degrees(&h, &f3).unwrap();
        assert_eq!(degs, vec![5]);
        let roots = poly_roots(&h, &f3).unwrap();
        assert!(roots.is_empty());

        // zero polynomial is a parameter error
        assert!(poly_roots(&FPoly::zero(), &f3).is_err());
    }

    #[test]
    fn roots_large_field_via_splitting() {
        let ctx = field_make(2, 20).unwrap();
        // (x - a)(x - b)(x - c) * irreducible quadratic
        let a = 123456u64;
        let b = 7890u64;
        let c = 1u64;
        let lin = |r: u64| FPoly::new(vec![ctx.neg(r), 1], &ctx);
        let mut f = lin(a).mul(&lin(b), &ctx).mul(&lin(c), &ctx);
        // x^2 + x + n with trace(n) = 1 is irreducible
        let n = ctx.elements().find(|&n| ctx.trace(n) == 1).unwrap();
        f = f.mul(&FPoly::new(vec![n, 1, 1], &ctx), &ctx);
        let mut roots = poly_roots(&f, &ctx).unwrap();
        roots.sort_unstable();
        let mut expect = vec![a, b, c];
        expect.sort_unstable();
        assert_eq!(roots, expect);
    }

    #[test]
    fn factor_degrees_fixture_rows() {
        let f3 = field_make(3, 1).unwrap();
        // x^6+2x^5+3x^4-x^2+2x+1 mod 3 -> {1,5}
        let f = FPoly::new(vec![1, 2, 2, 0, 0, 2, 1], &f3);
        assert_eq!(poly_factor_degrees(&f, &f3).unwrap(), vec![1, 5]);
        // x^6+4x^4+6x^3-8x^2+1 mod 3 -> {2,2,2}
        let g = FPoly::new(vec![1, 0, 1, 0, 1, 0, 1], &f3);
        assert_eq!(poly_factor_degrees(&g, &f3).unwrap(), vec![2, 2, 2]);
        // x^2 over F2 -> {1,1}
        let f2 = field_make(2, 1).unwrap();
        let h = FPoly::new(vec![0, 0, 1], &f2);
        assert_eq!(poly_factor_degrees(&h, &f2).unwrap(), vec![1, 1]);
    }

    proptest! {
        #[test]
        fn frobenius_is_ring_hom_f16(a in 0u64..16, b in 0u64..16) {
            let ctx = field_make(2, 4).unwrap();
            prop_assert_eq!(ctx.frobenius(ctx.add(a, b)), ctx.add(ctx.frobenius(a), ctx.frobenius(b)));
            prop_assert_eq!(ctx.frobenius(ctx.mul(a, b)), ctx.mul(ctx.frobenius(a), ctx.frobenius(b)));
        }

        #[test]
        fn frobenius_is_ring_hom_f81(ai in 0u64..81, bi in 0u64..81) {
            let ctx = field_make(3, 4).unwrap();
            let a = ctx.nth_element(ai);
            let b = ctx.nth_element(bi);
            prop_assert_eq!(ctx.frobenius(ctx.add(a, b)), ctx.add(ctx.frobenius(a), ctx.frobenius(b)));
            prop_assert_eq!(ctx.frobenius(ctx.mul(a, b)), ctx.mul(ctx.frobenius(a), ctx.frobenius(b)));
        }

        #[test]
        fn factor_degrees_sum_to_degree(coeffs in proptest::collection::vec(0u64..3, 1..8)) {
            let f3 = field_make(3, 1).unwrap();
            let f = FPoly::new(coeffs, &f3);
            if !f.is_zero() {
                let degs = poly_factor_degrees(&f, &f3).unwrap();
                prop_assert_eq!(degs.iter().sum::<u32>(), f.degree() as u32);
            }
        }

        #[test]
        fn squarefree_decomposition_reassembles(coeffs in proptest::collection::vec(0u64..3, 2..9)) {
            let f3 = field_make(3, 1).unwrap();
            let f = FPoly::new(coeffs, &f3);
            if f.degree() > 0 {
                let parts = squarefree_decomposition(&f, &f3);
                let mut prod = FPoly::one();
                for (g, m) in &parts {
                    for _ in 0..*m {
                        prod = prod.mul(g, &f3);
                    }
                }
                prop_assert_eq!(prod, f.monic(&f3));
            }
        }
    }
}
