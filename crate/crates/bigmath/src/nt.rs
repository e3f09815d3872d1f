use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::factor::{factor, factor_u64};
use crate::modint::pow_mod_u64;
use crate::{MathError, Rational};

/// Recovers n/d from `residue` mod `modulus` with |n| ≤ bound and 0 < d ≤ bound.
/// Without an explicit bound the symmetric choice floor(sqrt(M/2)) is used.
pub fn rational_reconstruct(
    residue: &BigInt,
    modulus: &BigInt,
    bound: Option<&BigInt>,
) -> Result<Option<Rational>, MathError> {
    let b = match bound {
        Some(b) => b.clone(),
        None => (modulus / 2u32).sqrt(),
    };
    rational_reconstruct_bounds(residue, modulus, &b, &b)
}

/// Reconstruction with separate numerator and denominator bounds. The answer
/// is unique whenever 2·N·D ≤ M, which is required.
pub fn rational_reconstruct_bounds(
    residue: &BigInt,
    modulus: &BigInt,
    num_bound: &BigInt,
    den_bound: &BigInt,
) -> Result<Option<Rational>, MathError> {
    if !num_bound.is_positive() || !den_bound.is_positive() {
        return Err(MathError::Precondition("bounds must be positive".into()));
    }
    if BigInt::from(2) * num_bound * den_bound > *modulus {
        return Err(MathError::Precondition(format!(
            "2·{num_bound}·{den_bound} exceeds modulus {modulus}"
        )));
    }
    let mut r0 = modulus.clone();
    let mut r1 = residue.mod_floor(modulus);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while &r1 > num_bound {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_negative() {
        t1 = -t1;
        r1 = -r1;
    }
    if &t1 > den_bound || !r1.gcd(&t1).is_one() || !t1.gcd(modulus).is_one() {
        return Ok(None);
    }
    Rational::new(r1, t1).map(Some)
}

pub fn euler_phi_u64(n: u64) -> u64 {
    factor_u64(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of a modulo n.
pub fn mult_order(a: &BigInt, n: u64) -> Result<u64, MathError> {
    if n < 2 {
        return Err(MathError::Domain(format!("modulus {n} < 2")));
    }
    let a = a.mod_floor(&BigInt::from(n));
    let a: u64 = a.try_into().expect("reduced value fits");
    if a.gcd(&n) != 1 {
        return Err(MathError::Domain(format!("gcd({a}, {n}) ≠ 1")));
    }
    let phi = euler_phi_u64(n);
    let mut ord = phi;
    for (r, _) in factor_u64(phi) {
        while ord % r == 0 && pow_mod_u64(a, ord / r, n) == 1 {
            ord /= r;
        }
    }
    Ok(ord)
}

pub fn is_primitive_root(q: &BigInt, n: u64) -> Result<bool, MathError> {
    Ok(mult_order(q, n)? == euler_phi_u64(n))
}

/// Squarefree s with n = s·t², sign preserved.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt, MathError> {
    if n.is_zero() {
        return Err(MathError::Domain("squarefree part of 0".into()));
    }
    let s: BigUint = factor(n.magnitude())
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(p, _)| p)
        .product();
    Ok(BigInt::from_biguint(n.sign(), s))
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32, MathError> {
    if !n.is_positive() || n.is_even() {
        return Err(MathError::Domain(format!("jacobi modulus {n} must be odd and positive")));
    }
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut res = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                res = -res;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            res = -res;
        }
        a = a.mod_floor(&n);
    }
    Ok(if n.is_one() { res } else { 0 })
}

/// Smallest r ≥ 0 with r^k ≥ x.
pub fn ceil_nth_root(x: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1);
    let r = x.nth_root(k);
    if Pow::pow(&r, k) < *x {
        r + 1u32
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn reconstruct_examples() {
        let r = rational_reconstruct(&bi(33), &bi(97), Some(&bi(6))).unwrap();
        assert_eq!(r, Some(Rational::frac(2, 3)));
        let r = rational_reconstruct(&bi(0), &bi(101), Some(&bi(7))).unwrap();
        assert_eq!(r, Some(Rational::zero()));
        assert_eq!(rational_reconstruct(&bi(5), &bi(97), Some(&bi(2))).unwrap(), None);
        assert!(rational_reconstruct(&bi(5), &bi(97), Some(&bi(7))).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(mult_order(&bi(2), 7).unwrap(), 3);
        assert_eq!(mult_order(&bi(2), 11).unwrap(), 10);
        assert_eq!(mult_order(&bi(1), 5).unwrap(), 1);
        assert!(mult_order(&bi(3), 6).is_err());
        assert!(is_primitive_root(&bi(2), 11).unwrap());
        assert!(!is_primitive_root(&bi(3), 11).unwrap());
        assert!(is_primitive_root(&bi(2), 3).unwrap());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&bi(12)).unwrap(), bi(3));
        assert_eq!(squarefree_part(&bi(-59 * 196)).unwrap(), bi(-59));
        assert_eq!(squarefree_part(&bi(-1)).unwrap(), bi(-1));
        assert!(squarefree_part(&bi(0)).is_err());
    }

    #[test]
    fn jacobi_and_roots() {
        assert_eq!(jacobi(&bi(2), &bi(7)).unwrap(), 1);
        assert_eq!(jacobi(&bi(3), &bi(7)).unwrap(), -1);
        assert_eq!(jacobi(&bi(14), &bi(7)).unwrap(), 0);
        assert_eq!(ceil_nth_root(&BigUint::from(27u32), 3), BigUint::from(3u32));
        assert_eq!(ceil_nth_root(&BigUint::from(28u32), 3), BigUint::from(4u32));
    }
}
