//! Arithmetic in the prime field `F_p` for `2 <= p < 2^31`.
//!
//! Elements are canonical residues stored as `u32`. All operations take the
//! modulus explicitly; nothing here allocates.

/// A prime modulus. Constructors of [`crate::ring::PolyRing`] validate primality.
pub type Prime = u32;

#[inline]
pub fn add(p: Prime, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    if s >= p as u64 {
        (s - p as u64) as u32
    } else {
        s as u32
    }
}

#[inline]
pub fn sub(p: Prime, a: u32, b: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(p: Prime, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(p: Prime, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow(p: Prime, mut base: u32, mut exp: u64) -> u32 {
    let mut acc = 1u32;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(p, acc, base);
        }
        base = mul(p, base, base);
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse via Fermat's little theorem. Panics on zero.
#[inline]
pub fn inv(p: Prime, a: u32) -> u32 {
    assert!(a % p != 0, "division by zero in F_{}", p);
    pow(p, a, p as u64 - 2)
}

#[inline]
pub fn div(p: Prime, a: u32, b: u32) -> u32 {
    mul(p, a, inv(p, b))
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_field_tables() {
        let p = 5;
        assert_eq!(add(p, 3, 4), 2);
        assert_eq!(sub(p, 1, 3), 3);
        assert_eq!(mul(p, 3, 4), 2);
        assert_eq!(inv(p, 2), 3);
        assert_eq!(div(p, 1, 4), 4);
    }

    #[test]
    fn inverses_over_larger_prime() {
        let p = 2147483647; // 2^31 - 1
        for a in [1u32, 2, 12345, p - 1] {
            assert_eq!(mul(p, a, inv(p, a)), 1);
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(!is_prime(91));
    }
}
