//! Small finite fields F_{q^m} and truncated power series over them.
//!
//! Elements are table-driven indices (base-q digit encodings of polynomials
//! in a fixed irreducible modulus), sized for the brute-force window
//! enumerations: q prime up to 7, extension degree up to 4. Series live in
//! F_{q^m}[t]/(t^prec) with coefficient vectors of fixed length.

use crate::error::{Error, Result};
use smallvec::SmallVec;
use std::sync::Arc;

/// F_{q^m} with dense operation tables.
pub struct FiniteField {
    pub q: u64,
    pub m: usize,
    pub size: usize,
    /// Monic irreducible modulus, low-to-high coefficients, length m+1.
    pub modulus: Vec<u64>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    frob_t: Vec<u16>,
}

const MAX_SIZE: usize = 2401;

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).all(|d| q % d != 0)
}

fn poly_mod_mul(a: &[u64], b: &[u64], modulus: &[u64], q: u64) -> Vec<u64> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    // reduce by the monic modulus
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..m {
            let sub = (c * modulus[k]) % q;
            prod[d - m + k] = (prod[d - m + k] + q * q - sub) % q;
        }
    }
    prod.truncate(m.max(1));
    prod
}

fn poly_rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    // remainder of a by monic-normalized b
    let mut r: Vec<u64> = a.to_vec();
    let db = b.iter().rposition(|&c| c != 0).unwrap();
    let lead_inv = (1..q).find(|&x| (x * b[db]) % q == 1).unwrap();
    while let Some(dr) = r.iter().rposition(|&c| c != 0) {
        if dr < db {
            break;
        }
        let f = (r[dr] * lead_inv) % q;
        for k in 0..=db {
            let sub = (f * b[k]) % q;
            r[dr - db + k] = (r[dr - db + k] + q * q - sub) % q;
        }
    }
    r
}

fn is_irreducible(p: &[u64], q: u64) -> bool {
    let deg = p.len() - 1;
    if deg == 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = q.pow(d as u32);
        for c in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut cc = c;
            for k in div.iter_mut().take(d) {
                *k = cc % q;
                cc /= q;
            }
            div[d] = 1;
            let r = poly_rem(p, &div, q);
            if r.iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u64, m: usize) -> Result<FiniteField> {
        if !is_prime(q) || q > 7 {
            return Err(Error::InvalidInput("field characteristic must be a prime <= 7".into()));
        }
        if m == 0 || m > 4 {
            return Err(Error::InvalidInput("extension degree must be in 1..=4".into()));
        }
        let size = (q as usize).pow(m as u32);
        if size > MAX_SIZE {
            return Err(Error::ResourceExhausted("field too large for table arithmetic".into()));
        }
        // smallest monic irreducible of degree m in base-q counter order
        let mut modulus = None;
        let count = q.pow(m as u32);
        for c in 0..count {
            let mut p = vec![0u64; m + 1];
            let mut cc = c;
            for k in p.iter_mut().take(m) {
                *k = cc % q;
                cc /= q;
            }
            p[m] = 1;
            if is_irreducible(&p, q) {
                modulus = Some(p);
                break;
            }
        }
        let modulus = modulus.ok_or_else(|| Error::Internal("no irreducible polynomial found".into()))?;

        let digits = |e: usize| -> Vec<u64> {
            let mut v = vec![0u64; m];
            let mut cc = e as u64;
            for k in v.iter_mut() {
                *k = cc % q;
                cc /= q;
            }
            v
        };
        let encode = |v: &[u64]| -> u16 {
            let mut e = 0u64;
            for k in (0..m).rev() {
                e = e * q + v.get(k).copied().unwrap_or(0) % q;
            }
            e as u16
        };

        let mut add_t = vec![0u16; size * size];
        let mut mul_t = vec![0u16; size * size];
        let mut neg_t = vec![0u16; size];
        for a in 0..size {
            let da = digits(a);
            let neg: Vec<u64> = da.iter().map(|&x| (q - x) % q).collect();
            neg_t[a] = encode(&neg);
            for b in 0..size {
                let db = digits(b);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % q).collect();
                add_t[a * size + b] = encode(&sum);
                mul_t[a * size + b] = encode(&poly_mod_mul(&da, &db, &modulus, q));
            }
        }
        let mut inv_t = vec![0u16; size];
        for a in 1..size {
            let mut found = None;
            for b in 1..size {
                if mul_t[a * size + b] == 1 {
                    found = Some(b as u16);
                    break;
                }
            }
            inv_t[a] = found.ok_or_else(|| Error::Internal("element without inverse".into()))?;
        }
        let mut frob_t = vec![0u16; size];
        for a in 0..size {
            let mut acc = a as u16;
            for _ in 1..q {
                acc = mul_t[acc as usize * size + a];
            }
            frob_t[a] = acc;
        }
        Ok(FiniteField { q, m, size, modulus, add_t, mul_t, neg_t, inv_t, frob_t })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add_t[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg_t[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul_t[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg_t[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv_t[a as usize]
    }

    /// q-power Frobenius (generates Gal(F_{q^m}/F_q)).
    #[inline]
    pub fn frob(&self, a: u16) -> u16 {
        self.frob_t[a as usize]
    }
}

/// F_{q^m}[t]/(t^prec). Series are coefficient vectors of length `prec`,
/// low degree first. The inline capacity covers the window precisions used
/// by the enumerations, keeping the hot path allocation-free. The field
/// tables are shared, so precision changes are cheap.
pub struct SeriesRing {
    pub field: Arc<FiniteField>,
    pub prec: usize,
}

pub type Ser = SmallVec<[u16; 24]>;

impl SeriesRing {
    pub fn new(q: u64, m: usize, prec: usize) -> Result<SeriesRing> {
        if prec == 0 || prec > 4096 {
            return Err(Error::InvalidInput("series precision must be in 1..=4096".into()));
        }
        Ok(SeriesRing { field: Arc::new(FiniteField::new(q, m)?), prec })
    }

    /// Same field, different truncation depth; the tables are shared.
    pub fn with_prec(&self, prec: usize) -> Result<SeriesRing> {
        if prec == 0 || prec > 4096 {
            return Err(Error::InvalidInput("series precision must be in 1..=4096".into()));
        }
        Ok(SeriesRing { field: self.field.clone(), prec })
    }

    pub fn zero(&self) -> Ser {
        SmallVec::from_elem(0, self.prec)
    }

    pub fn one(&self) -> Ser {
        let mut s = self.zero();
        s[0] = 1;
        s
    }

    /// t^k (zero when k >= prec).
    pub fn t_pow(&self, k: usize) -> Ser {
        let mut s = self.zero();
        if k < self.prec {
            s[k] = 1;
        }
        s
    }

    pub fn from_coeffs(&self, coeffs: &[u16]) -> Ser {
        let mut s = self.zero();
        for (i, &c) in coeffs.iter().enumerate().take(self.prec) {
            debug_assert!((c as usize) < self.field.size);
            s[i] = c;
        }
        s
    }

    /// Re-truncate a series from another precision into this ring.
    pub fn resize(&self, a: &Ser) -> Ser {
        let mut s = self.zero();
        for i in 0..self.prec.min(a.len()) {
            s[i] = a[i];
        }
        s
    }

    pub fn is_zero(&self, a: &Ser) -> bool {
        a.iter().all(|&c| c == 0)
    }

    /// t-adic valuation; None for (truncated) zero.
    pub fn val(&self, a: &Ser) -> Option<usize> {
        a.iter().position(|&c| c != 0)
    }

    pub fn add(&self, a: &Ser, b: &Ser) -> Ser {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &Ser, b: &Ser) -> Ser {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn neg(&self, a: &Ser) -> Ser {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    /// The single (position, coefficient) of a monomial, if it is one.
    fn monomial(a: &Ser) -> Option<(usize, u16)> {
        let mut found = None;
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, c));
            }
        }
        found
    }

    pub fn mul(&self, a: &Ser, b: &Ser) -> Ser {
        if let Some((i, c)) = Self::monomial(a) {
            let mut out = self.shift_t(b, i as i64);
            if c != 1 {
                for x in out.iter_mut() {
                    *x = self.field.mul(*x, c);
                }
            }
            return out;
        }
        let mut out = self.zero();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j >= self.prec {
                    break;
                }
                if y != 0 {
                    out[i + j] = self.field.add(out[i + j], self.field.mul(x, y));
                }
            }
        }
        out
    }

    pub fn scale(&self, a: &Ser, c: u16) -> Ser {
        a.iter().map(|&x| self.field.mul(x, c)).collect()
    }

    /// Multiply by t^k (k may be negative only if it divides exactly; the
    /// caller must know val(a) >= -k).
    pub fn shift_t(&self, a: &Ser, k: i64) -> Ser {
        let mut out = self.zero();
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let j = i as i64 + k;
            debug_assert!(j >= 0, "negative valuation after shift");
            if j >= 0 && (j as usize) < self.prec {
                out[j as usize] = c;
            }
        }
        out
    }

    /// Inverse of a unit (val 0) by Newton-free forward recurrence.
    pub fn inv_unit(&self, a: &Ser) -> Result<Ser> {
        if a[0] == 0 {
            return Err(Error::Precondition("series is not a unit".into()));
        }
        let c0 = self.field.inv(a[0]);
        let mut out = self.zero();
        out[0] = c0;
        for k in 1..self.prec {
            // coefficient k of a*out must vanish
            let mut acc = 0u16;
            for j in 0..k {
                acc = self.field.add(acc, self.field.mul(a[k - j], out[j]));
            }
            out[k] = self.field.mul(self.field.neg(acc), c0);
        }
        Ok(out)
    }

    /// Exact division a/b when val(a) >= val(b); None when not divisible
    /// within precision.
    pub fn div_exact(&self, a: &Ser, b: &Ser) -> Result<Ser> {
        let vb = self
            .val(b)
            .ok_or_else(|| Error::Precondition("division by truncated zero".into()))?;
        if let Some(va) = self.val(a) {
            if va < vb {
                return Err(Error::Precondition("division is not exact".into()));
            }
        } else {
            return Ok(self.zero());
        }
        let a_shift: Ser = {
            let mut u = self.zero();
            for i in vb..self.prec {
                u[i - vb] = a[i];
            }
            u
        };
        // canonical pivots are plain powers of t: division is then a shift
        if let Some((i, c)) = Self::monomial(b) {
            debug_assert_eq!(i, vb);
            if c == 1 {
                return Ok(a_shift);
            }
            let cinv = self.field.inv(c);
            return Ok(a_shift.iter().map(|&x| self.field.mul(x, cinv)).collect());
        }
        let b_unit: Ser = {
            let mut u = self.zero();
            for i in vb..self.prec {
                u[i - vb] = b[i];
            }
            u
        };
        Ok(self.mul(&a_shift, &self.inv_unit(&b_unit)?))
    }

    /// Coefficientwise q-power Frobenius (fixes t).
    pub fn frob(&self, a: &Ser) -> Ser {
        a.iter().map(|&c| self.field.frob(c)).collect()
    }

    /// Truncate a polynomial: drop coefficients at degree >= deg.
    pub fn reduce_deg(&self, a: &Ser, deg: usize) -> Ser {
        let mut out = a.clone();
        for c in out.iter_mut().skip(deg.min(self.prec)) {
            *c = 0;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_is_a_field() {
        let f = FiniteField::new(2, 3).unwrap();
        assert_eq!(f.size, 8);
        for a in 0..8u16 {
            for b in 0..8u16 {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..8u16 {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    assert_eq!(
                        f.mul(a, f.add(b, c)),
                        f.add(f.mul(a, b), f.mul(a, c))
                    );
                }
            }
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism_of_order_m() {
        let f = FiniteField::new(2, 3).unwrap();
        for a in 0..8u16 {
            for b in 0..8u16 {
                assert_eq!(f.frob(f.add(a, b)), f.add(f.frob(a), f.frob(b)));
                assert_eq!(f.frob(f.mul(a, b)), f.mul(f.frob(a), f.frob(b)));
            }
            // x -> x^2 has order 3 on F_8
            assert_eq!(f.frob(f.frob(f.frob(a))), a);
        }
        let f9 = FiniteField::new(3, 2).unwrap();
        for a in 0..9u16 {
            assert_eq!(f9.frob(f9.frob(a)), a);
        }
    }

    #[test]
    fn series_unit_inversion() {
        let r = SeriesRing::new(2, 1, 8).unwrap();
        let mut a = r.one();
        a[1] = 1; // 1 + t
        let inv = r.inv_unit(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());
        // geometric series over F_2: all coefficients 1
        assert!(inv.iter().all(|&c| c == 1));
    }

    #[test]
    fn exact_division_round_trips() {
        let r = SeriesRing::new(3, 1, 10).unwrap();
        let mut a = r.t_pow(2);
        a[3] = 2; // t^2 + 2t^3
        let mut b = r.t_pow(1);
        b[2] = 1; // t + t^2
        let q = r.div_exact(&r.mul(&a, &b), &b).unwrap();
        assert_eq!(q, a);
        assert!(r.div_exact(&r.t_pow(1), &r.t_pow(2)).is_err());
    }

    #[test]
    fn smallest_irreducible_is_deterministic() {
        let f = FiniteField::new(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(f.modulus, vec![1, 1, 1]);
        let f3 = FiniteField::new(2, 3).unwrap();
        // x^3 + x + 1 precedes x^3 + x^2 + 1 in counter order
        assert_eq!(f3.modulus, vec![1, 1, 0, 1]);
    }
}
