use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::MathError;

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Residue class modulo `modulus`, stored canonically in `[0, modulus)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModularInt {
    value: BigUint,
    modulus: BigUint,
}

impl ModularInt {
    pub fn new(value: &BigInt, modulus: &BigUint) -> Result<Self, MathError> {
        if modulus < &BigUint::from(2u32) {
            return Err(MathError::Domain(format!("modulus {modulus} < 2")));
        }
        let m = BigInt::from(modulus.clone());
        let v = value.mod_floor(&m).to_biguint().expect("non-negative after mod_floor");
        Ok(ModularInt { value: v, modulus: modulus.clone() })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    fn same(&self, o: &Self) {
        assert_eq!(self.modulus, o.modulus, "mixed moduli");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same(o);
        ModularInt { value: (&self.value + &o.value) % &self.modulus, modulus: self.modulus.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same(o);
        let v = (&self.value + &self.modulus - &o.value) % &self.modulus;
        ModularInt { value: v, modulus: self.modulus.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same(o);
        ModularInt { value: (&self.value * &o.value) % &self.modulus, modulus: self.modulus.clone() }
    }

    pub fn neg(&self) -> Self {
        if self.value.is_zero() {
            return self.clone();
        }
        ModularInt { value: &self.modulus - &self.value, modulus: self.modulus.clone() }
    }

    pub fn pow(&self, e: &BigUint) -> Self {
        ModularInt { value: self.value.modpow(e, &self.modulus), modulus: self.modulus.clone() }
    }

    pub fn inv(&self) -> Result<Self, MathError> {
        let a = BigInt::from(self.value.clone());
        let m = BigInt::from(self.modulus.clone());
        let g = a.extended_gcd(&m);
        if !g.gcd.is_one() {
            return Err(MathError::Domain(format!("{} is not a unit mod {}", self.value, self.modulus)));
        }
        let x = g.x.mod_floor(&m);
        debug_assert!(!x.is_negative());
        Ok(ModularInt { value: x.to_biguint().unwrap(), modulus: self.modulus.clone() })
    }
}

impl fmt::Debug for ModularInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u64_helpers() {
        assert_eq!(pow_mod_u64(2, 10, 1000), 24);
        assert_eq!(inv_mod_u64(3, 7), Some(5));
        assert_eq!(inv_mod_u64(6, 9), None);
        assert_eq!(mul_mod_u64(u64::MAX - 1, u64::MAX - 1, u64::MAX), 1);
    }

    #[test]
    fn modular_int_ops() {
        let m = BigUint::from(97u32);
        let a = ModularInt::new(&BigInt::from(-2), &m).unwrap();
        assert_eq!(a.value(), &BigUint::from(95u32));
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b).value(), &BigUint::from(1u32));
        assert!(ModularInt::new(&BigInt::from(1), &BigUint::from(1u32)).is_err());
        let z = ModularInt::new(&BigInt::from(0), &m).unwrap();
        assert!(z.inv().is_err());
    }
}
