//! Elementary number theory on machine integers.

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Non-negative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: u64) -> u64 {
    let m = m as i128;
    ((a as i128 % m + m) % m) as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Euler's totient.
pub fn euler_phi(k: u64) -> u64 {
    assert!(k >= 1, "euler_phi requires k >= 1");
    let mut result = k;
    for p in prime_factors(k) {
        result = result / p * (p - 1);
    }
    result
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(((old_s % m as i128 + m as i128) % m as i128) as u64)
}

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1). Order mod 1 is 1.
pub fn mult_order(a: u64, n: u64) -> u64 {
    assert!(
        gcd(a % n.max(1), n) == 1 || n == 1,
        "mult_order needs a unit"
    );
    if n == 1 {
        return 1;
    }
    let mut e = 1u64;
    let mut x = a % n;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        e += 1;
    }
    e
}

/// Order of the element `j` in the additive group ℤ_r.
pub fn additive_order(j: u64, r: u64) -> u64 {
    r / gcd(j % r, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(3), 2);
        let brute = (1..=12u64).filter(|a| gcd(*a, 12) == 1).count() as u64;
        assert_eq!(euler_phi(12), brute);
        assert_eq!(euler_phi(49), 42);
    }

    #[test]
    fn orders() {
        assert_eq!(mult_order(2, 27), 18);
        assert_eq!(mult_order(3, 49), 42);
        assert_eq!(mult_order(2, 3), 2);
        assert_eq!(mult_order(5, 1), 1);
    }

    #[test]
    fn inverses_and_divisors() {
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
        assert_eq!(modulo(-3, 7), 4);
    }
}
