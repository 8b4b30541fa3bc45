//! Integer helpers: primality, factorization, multiplicative orders and
//! divisor bookkeeping. Everything here works on `u64` values of desk scale.

use num_integer::Integer;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut twos = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        twos += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..twos {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    let mut rest = n;
    let mut q = 2u64;
    while q <= 1000 && q * q <= rest {
        while rest.is_multiple_of(q) {
            primes.push(q);
            rest /= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (q, e) in factorize(n) {
        let len = divs.len();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= q;
            for i in 0..len {
                divs.push(divs[i] * pw);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (q, _)| acc / q * (q - 1))
}

/// Multiplicative order of `q` modulo `j`; requires `gcd(q, j) = 1`. `ord_1(q) = 1`.
pub fn multiplicative_order(q: u64, j: u64) -> u64 {
    assert!(j >= 1 && q.gcd(&j) == 1, "order of {q} mod {j} is undefined");
    if j == 1 {
        return 1;
    }
    let mut ord = euler_phi(j);
    for (prime, _) in factorize(ord) {
        while ord.is_multiple_of(prime) && pow_mod(q, ord / prime, j) == 1 {
            ord /= prime;
        }
    }
    ord
}

/// Splits `q = p^k` with `p` prime and `k >= 1`.
pub fn as_prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q.max(1)).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// `base^exp` or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Chinese remaindering for coprime moduli.
pub fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if m == 1 {
        return b % n;
    }
    if n == 1 {
        return a % m;
    }
    let inv = inverse_mod(m % n, n).expect("moduli must be coprime");
    let t = mul_mod((b + n - a % n) % n, inv, n);
    (a as u128 + m as u128 * t as u128) as u64 % (m * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factorizations() {
        assert!(is_prime(2) && is_prime(97) && is_prime(1_000_000_007));
        assert!(!is_prime(1) && !is_prime(91) && !is_prime(561));
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize((1u64 << 48) - 1), vec![(3, 2), (5, 1), (7, 1), (13, 1), (17, 1), (97, 1), (241, 1), (257, 1), (673, 1)]);
        let big = 4_294_967_291u64 * 65_521;
        assert_eq!(factorize(big), vec![(65_521, 1), (4_294_967_291, 1)]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 7), 3);
        assert_eq!(multiplicative_order(2, 5), 4);
        assert_eq!(multiplicative_order(4, 3), 1);
        assert_eq!(multiplicative_order(3, 1), 1);
        for j in 2..200u64 {
            for q in [2u64, 3, 4, 5, 8, 9] {
                if q.gcd(&j) != 1 {
                    continue;
                }
                let brute = (1..=j).find(|&t| pow_mod(q, t, j) == 1).unwrap();
                assert_eq!(multiplicative_order(q, j), brute, "ord_{j}({q})");
            }
        }
    }

    #[test]
    fn misc() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(7), 6);
        assert_eq!(as_prime_power(8), Some((2, 3)));
        assert_eq!(as_prime_power(12), None);
        assert_eq!(crt(1, 3, 2, 4), 10);
        assert_eq!(inverse_mod(3, 4), Some(3));
    }
}
