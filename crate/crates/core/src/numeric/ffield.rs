//! Arithmetic in the prime field F_p on `u64` residues.

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// First `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2;
    while out.len() < k {
        if is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - (b % p) as u128) % p as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Power with a signed exponent; `a` must be nonzero.
pub fn pow_mod_signed(a: u64, e: i64, p: u64) -> u64 {
    let r = pow_mod(a, e.unsigned_abs(), p);
    if e < 0 {
        inv_mod(r, p)
    } else {
        r
    }
}

/// Reduce a signed integer into `0..p`.
pub fn reduce_i64(v: i64, p: u64) -> u64 {
    v.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
        assert!(is_prime(17) && !is_prime(1) && !is_prime(91));
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 17] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
        assert_eq!(pow_mod_signed(3, -1, 7), 5);
    }
}
