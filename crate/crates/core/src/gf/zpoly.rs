//! Exact integer polynomials (arbitrary precision, ascending coefficients).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        ZPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }

    /// Coefficient-wise reduction mod p, returned as prime-field scalars.
    pub fn reduce_mod(&self, p: u8) -> Vec<u8> {
        let p_big = BigInt::from(p);
        self.coeffs
            .iter()
            .map(|c| {
                let r = ((c % &p_big) + &p_big) % &p_big;
                let digits = r.to_u32_digits();
                if digits.1.is_empty() {
                    0
                } else {
                    digits.1[0] as u8
                }
            })
            .collect()
    }
}

pub fn zpoly_derivative(f: &ZPoly) -> ZPoly {
    if f.coeffs.len() <= 1 {
        return ZPoly::zero();
    }
    ZPoly::new(
        f.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

fn content(f: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in &f.coeffs {
        g = num_integer::Integer::gcd(&g, c);
    }
    g
}

/// Divide out the integer content and normalize the leading sign.
pub fn zpoly_content_free(f: &ZPoly) -> ZPoly {
    if f.is_zero() {
        return ZPoly::zero();
    }
    let mut c = content(f);
    if f.leading().is_negative() {
        c = -c;
    }
    ZPoly::new(f.coeffs.iter().map(|a| a / &c).collect())
}

/// Primitive gcd over the integers via the rational Euclidean algorithm.
/// Degree 0 result is normalized to the constant 1.
pub fn zpoly_gcd(f: &ZPoly, g: &ZPoly) -> Result<ZPoly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::parameter("gcd of two zero polynomials"));
    }
    if f.is_zero() {
        return Ok(zpoly_content_free(g));
    }
    if g.is_zero() {
        return Ok(zpoly_content_free(f));
    }
    let to_rat = |p: &ZPoly| -> Vec<BigRational> {
        p.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().map(|c| c.is_zero()).unwrap_or(false) {
            v.pop();
        }
    };
    let mut a = to_rat(f);
    let mut b = to_rat(g);
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let blead = b[db].clone();
        while a.len() > db && !a.is_empty() {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let factor = &a[da] / &blead;
            for (i, bc) in b.iter().enumerate() {
                let idx = da - db + i;
                let sub = &factor * bc;
                a[idx] = &a[idx] - sub;
            }
            trim(&mut a);
            if a.len() <= db {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    // clear denominators of a
    let mut denom_lcm = BigInt::one();
    for c in &a {
        denom_lcm = num_integer::Integer::lcm(&denom_lcm, c.denom());
    }
    let ints = ZPoly::new(
        a.iter()
            .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
            .collect(),
    );
    if ints.degree() <= 0 {
        return Ok(ZPoly::new(vec![BigInt::one()]));
    }
    Ok(zpoly_content_free(&ints))
}

/// Squarefree over Z: gcd(f, f') is constant.
pub fn zpoly_is_squarefree(f: &ZPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::parameter("squarefree test on zero polynomial"));
    }
    let d = zpoly_derivative(f);
    if d.is_zero() {
        return Ok(f.degree() == 0);
    }
    Ok(zpoly_gcd(f, &d)?.degree() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_square_has_common_factor_with_derivative() {
        // (x^2 - x + 2)^2
        let base = ZPoly::from_i64(&[2, -1, 1]);
        let sq = base.mul(&base);
        let d = zpoly_derivative(&sq);
        let g = zpoly_gcd(&sq, &d).unwrap();
        assert!(g.degree() > 0);
        assert!(!zpoly_is_squarefree(&sq).unwrap());
    }

    #[test]
    fn squarefree_quartic() {
        // x^4 + x^2 + 4 is squarefree
        let f = ZPoly::from_i64(&[4, 0, 1, 0, 1]);
        let d = zpoly_derivative(&f);
        assert_eq!(zpoly_gcd(&f, &d).unwrap().degree(), 0);
        assert!(zpoly_is_squarefree(&f).unwrap());
    }

    #[test]
    fn reduce_mod_handles_negatives() {
        let f = ZPoly::from_i64(&[-1, 5, -3]);
        assert_eq!(f.reduce_mod(3), vec![2, 2, 0]);
        assert_eq!(f.reduce_mod(2), vec![1, 1, 1]);
    }

    #[test]
    fn both_zero_is_error() {
        assert!(zpoly_gcd(&ZPoly::zero(), &ZPoly::zero()).is_err());
    }
}
