use crate::error::{Error, Result};

/// Largest field order the tables are built for.
pub const MAX_FIELD_ORDER: u64 = 64;

/// `q = p^k` with `p` prime and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
    pub q: u64,
}

pub fn factor_prime_power(q: u64) -> Result<PrimePower> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // no factor up to sqrt(q): q is prime
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok(PrimePower { p, k, q })
}

/// Monic moduli for the non-prime orders, coefficients from the constant term
/// upward with the leading 1 omitted. These are the Conway polynomials.
fn modulus(q: u64) -> Option<&'static [u8]> {
    Some(match q {
        4 => &[1, 1],
        8 => &[1, 1, 0],
        16 => &[1, 1, 0, 0],
        32 => &[1, 0, 1, 0, 0],
        64 => &[1, 1, 0, 1, 1, 0],
        9 => &[2, 2],
        27 => &[1, 2, 0],
        25 => &[2, 4],
        49 => &[3, 6],
        _ => return None,
    })
}

/// Operation tables for `GF(q)`.
///
/// Elements are indices `0..q`. For `q = p^k` with `k > 1`, index
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` is the residue class of the polynomial
/// `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTables {
    pub order: PrimePower,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl FieldTables {
    pub const ZERO: usize = 0;
    pub const ONE: usize = 1;

    pub fn q(&self) -> usize {
        self.order.q as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q() + b] as usize
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| self.inv[a] as usize)
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q())
            .find(|&b| self.add(a, b) == Self::ZERO)
            .expect("additive group")
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.q()
    }
}

fn digits(mut x: usize, p: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[usize], p: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn poly_mul_mod(a: &[usize], b: &[usize], m: &[u8], p: usize) -> Vec<usize> {
    let k = m.len();
    let mut prod = vec![0usize; 2 * k - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c * mi as usize) % p;
            let slot = &mut prod[deg - k + i];
            *slot = (*slot + p - sub) % p;
        }
    }
    prod.truncate(k);
    prod
}

pub fn build_field(pp: PrimePower) -> Result<FieldTables> {
    if pp.q > MAX_FIELD_ORDER {
        return Err(Error::UnsupportedOrder(pp.q));
    }
    let q = pp.q as usize;
    let p = pp.p as usize;
    let k = pp.k as usize;
    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    if k == 1 {
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % p) as u8;
                mul[a * q + b] = ((a * b) % p) as u8;
            }
        }
    } else {
        let m = modulus(pp.q).ok_or(Error::UnsupportedOrder(pp.q))?;
        let digs: Vec<Vec<usize>> = (0..q).map(|x| digits(x, p, k)).collect();
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<usize> = digs[a]
                    .iter()
                    .zip(&digs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = undigits(&sum, p) as u8;
                mul[a * q + b] = undigits(&poly_mul_mod(&digs[a], &digs[b], m, p), p) as u8;
            }
        }
    }
    let mut inv = vec![0u8; q];
    for a in 1..q {
        let b = (1..q)
            .find(|&b| mul[a * q + b] == 1)
            .ok_or(Error::UnsupportedOrder(pp.q))?;
        inv[a] = b as u8;
    }
    Ok(FieldTables {
        order: pp,
        add,
        mul,
        inv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> FieldTables {
        build_field(factor_prime_power(q).unwrap()).unwrap()
    }

    #[test]
    fn factors_prime_powers() {
        assert_eq!(
            factor_prime_power(9).unwrap(),
            PrimePower { p: 3, k: 2, q: 9 }
        );
        assert_eq!(
            factor_prime_power(7).unwrap(),
            PrimePower { p: 7, k: 1, q: 7 }
        );
        assert_eq!(factor_prime_power(64).unwrap().k, 6);
        assert_eq!(factor_prime_power(6), Err(Error::NotPrimePower(6)));
        assert_eq!(factor_prime_power(1), Err(Error::NotPrimePower(1)));
        assert_eq!(factor_prime_power(0), Err(Error::NotPrimePower(0)));
        assert_eq!(factor_prime_power(12), Err(Error::NotPrimePower(12)));
    }

    #[test]
    fn small_field_examples() {
        assert_eq!(field(2).add(1, 1), 0);
        assert_eq!(field(5).mul(2, 3), 1);
        // x * x = x + 1 modulo x^2 + x + 1; x is index 2, x + 1 is index 3
        assert_eq!(field(4).mul(2, 2), 3);
    }

    #[test]
    fn rejects_large_or_untabulated_orders() {
        assert_eq!(
            build_field(factor_prime_power(81).unwrap()),
            Err(Error::UnsupportedOrder(81))
        );
        assert_eq!(
            build_field(factor_prime_power(67).unwrap()),
            Err(Error::UnsupportedOrder(67))
        );
    }

    fn check_axioms(f: &FieldTables) {
        let q = f.q();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.mul(a, 0), 0);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold_exhaustively_up_to_16() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            check_axioms(&field(q));
        }
    }

    #[test]
    fn every_supported_order_is_a_field() {
        // a zero-divisor-free multiplication table means the modulus is irreducible
        for q in 2..=MAX_FIELD_ORDER {
            let Ok(pp) = factor_prime_power(q) else {
                continue;
            };
            let f = build_field(pp).unwrap();
            for a in 1..f.q() {
                for b in 1..f.q() {
                    assert_ne!(f.mul(a, b), 0, "zero divisor in GF({q})");
                }
            }
        }
    }
}
