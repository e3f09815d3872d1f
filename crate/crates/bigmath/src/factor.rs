use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::modint::{mul_mod_u64, pow_mod_u64};

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// These bases make Miller-Rabin deterministic for every n < 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in SMALL_PRIMES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primality test. Exact below 2^64; above that a fixed set of 20
/// Miller-Rabin bases is used, so the answer is reproducible.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut base = 2u64;
    let mut rounds = 0;
    'outer: while rounds < 20 {
        if !is_prime_u64(base) {
            base += 1;
            continue;
        }
        rounds += 1;
        let a = BigUint::from(base);
        base += 1;
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn next_prime_u64(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

fn rho(n: &BigUint) -> BigUint {
    // Brent's variant with batched gcds; c walks upward until a split is found.
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Prime factorization as sorted (prime, exponent) pairs. Trial division
/// clears small factors and Pollard-Brent rho splits the rest.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut m = n.clone();
    let mut p = 2u64;
    while p < 10_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut e = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = Vec::new();
    if !m.is_one() {
        stack.push(m);
    }
    let mut big: Vec<BigUint> = Vec::new();
    while let Some(x) = stack.pop() {
        if is_prime(&x) {
            big.push(x);
            continue;
        }
        if let Some(r) = perfect_square_root(&x) {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = rho(&x);
        stack.push(&x / &d);
        stack.push(d);
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

fn perfect_square_root(x: &BigUint) -> Option<BigUint> {
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    factor(&BigUint::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().expect("factor of u64 fits"), e))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let ps: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn big_prime_and_factor() {
        let p: BigUint = "170141183460469231731687303715884105727".parse().unwrap();
        assert!(is_prime(&p));
        let q = BigUint::from(1_000_000_007u64);
        let n = &p * &q * &q;
        assert_eq!(factor(&n), vec![(q, 2), (p, 1)]);
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor_u64(1), vec![]);
    }

    #[test]
    fn rho_splits_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(999_983u64);
        let f = factor(&n);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, BigUint::from(999_983u64));
    }
}
