//! Small rational-prime utilities: primality, prime lists, Legendre's formula
//! and the Kronecker symbol of a discriminant.

/// Deterministic trial division. Inputs here stay far below 2^32.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Exponent of the prime `q` in `m!` (Legendre: sum of floor(m / q^i)).
pub fn factorial_valuation(m: u64, q: u64) -> u64 {
    let mut total = 0;
    let mut power = q;
    while power <= m {
        total += m / power;
        match power.checked_mul(q) {
            Some(next) => power = next,
            None => break,
        }
    }
    total
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Threshold below which quadratic residuosity is decided by enumerating squares.
pub const EXHAUSTIVE_RESIDUE_LIMIT: u64 = 10_000;

/// Kronecker symbol `(disc / p)` for a prime `p`.
///
/// Odd `p`: 0 if `p | disc`, otherwise +1 iff `disc` is a square mod `p`.
/// `p = 2`: 0 for even `disc`, +1 for `disc = ±1 mod 8`, -1 for `±3 mod 8`.
pub fn kronecker(disc: i64, p: u64) -> i8 {
    debug_assert!(is_prime(p));
    let r = disc.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if p == 2 {
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let residue = if p < EXHAUSTIVE_RESIDUE_LIMIT {
        (1..=p / 2).any(|x| (x * x) % p == r)
    } else {
        mod_pow(r, (p - 1) / 2, p) == 1
    };
    if residue {
        1
    } else {
        -1
    }
}
