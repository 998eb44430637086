use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

/// Trial-division limit used by [`factorize`].
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn next_prime(n: u64) -> u64 {
    let mut m = n + 1;
    while !is_prime(m) {
        m += 1;
    }
    m
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Factors `|n|` (nonzero) into ascending `(prime, exponent)` pairs.
pub fn factorize(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    factorize_with_bound(n, DEFAULT_FACTOR_BOUND)
}

/// Trial division by all `d ≤ bound`; a leftover cofactor is accepted only
/// when it is provably prime, i.e. smaller than `bound²`.
pub fn factorize_with_bound(n: &BigInt, bound: u64) -> Result<Vec<(u64, u32)>> {
    if n.is_zero() {
        return Err(invalid("cannot factor zero"));
    }
    let mut m = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= bound {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&bd);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let bb = BigInt::from(bound) * BigInt::from(bound);
        if m >= bb {
            return Err(invalid(format!("cofactor {m} exceeds the trial-division bound {bound}")));
        }
        let last = m
            .to_u64()
            .ok_or_else(|| invalid(format!("prime factor {m} does not fit in 64 bits")))?;
        out.push((last, 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorizations() {
        assert_eq!(factorize(&BigInt::from(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(&BigInt::from(-97)).unwrap(), vec![(97, 1)]);
        assert_eq!(factorize(&BigInt::from(1)).unwrap(), vec![]);
        assert!(factorize(&BigInt::zero()).is_err());
    }

    #[test]
    fn bound_is_enforced() {
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        assert!(factorize(&big).is_err());
        let ok = BigInt::from(7) * BigInt::from(1_000_003u64);
        assert_eq!(factorize(&ok).unwrap(), vec![(7, 1), (1_000_003, 1)]);
        assert!(factorize_with_bound(&ok, 100).is_err());
    }

    #[test]
    fn primality() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(next_prime(13), 17);
        assert!(!is_prime(1) && !is_prime(91));
    }
}
