use crate::error::Error;
use num::BigInt;
use std::fmt;

/// Base ring of a computation: ℤ, ℤ/m (m ≥ 2), a prime field 𝔽_p, or ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Int,
    /// Integers mod m, m ≥ 2 and not required to be prime.
    Mod(u64),
    /// Prime field 𝔽_p; primality is checked at construction.
    PrimeField(u64),
    Rat,
}

impl BaseRing {
    pub fn integers() -> Self {
        BaseRing::Int
    }

    pub fn modular(m: u64) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("Z/{m} requires m >= 2")));
        }
        Ok(BaseRing::Mod(m))
    }

    pub fn prime_field(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("F{p} requires p prime")));
        }
        Ok(BaseRing::PrimeField(p))
    }

    pub fn rationals() -> Self {
        BaseRing::Rat
    }

    /// Characteristic used when lifting computations to ℤ; `None` for the
    /// characteristic-zero rings.
    pub fn lift_modulus(&self) -> Option<u64> {
        match self {
            BaseRing::Int | BaseRing::Rat => None,
            BaseRing::Mod(m) => Some(*m),
            BaseRing::PrimeField(p) => Some(*p),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, BaseRing::PrimeField(_) | BaseRing::Rat)
    }

    /// Every finitely generated module over the ring has finitely many
    /// elements exactly when the ring itself is finite.
    pub fn is_finite(&self) -> bool {
        self.lift_modulus().is_some()
    }

    /// Integer annihilator of a canonical invariant factor: factor 0 means a
    /// free rank-1 summand, whose annihilator is the lift modulus (or 0 in
    /// characteristic zero).
    pub fn ann_of_factor(&self, factor: &BigInt) -> BigInt {
        if factor == &BigInt::from(0) {
            match self.lift_modulus() {
                Some(m) => BigInt::from(m),
                None => BigInt::from(0),
            }
        } else {
            factor.clone()
        }
    }

    pub fn same(&self, other: &BaseRing) -> Result<(), Error> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Int => write!(f, "Z"),
            BaseRing::Mod(m) => write!(f, "Z/{m}"),
            BaseRing::PrimeField(p) => write!(f, "F{p}"),
            BaseRing::Rat => write!(f, "Q"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= p).unwrap_or(false) {
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
    fn modulus_must_be_at_least_two() {
        assert!(BaseRing::modular(1).is_err());
        assert!(BaseRing::modular(2).is_ok());
    }

    #[test]
    fn primality_checked_at_construction() {
        assert!(BaseRing::prime_field(2).is_ok());
        assert!(BaseRing::prime_field(97).is_ok());
        assert!(BaseRing::prime_field(1).is_err());
        assert!(BaseRing::prime_field(91).is_err()); // 7 * 13
    }

    #[test]
    fn display_names() {
        assert_eq!(BaseRing::Int.to_string(), "Z");
        assert_eq!(BaseRing::Mod(6).to_string(), "Z/6");
        assert_eq!(BaseRing::PrimeField(3).to_string(), "F3");
        assert_eq!(BaseRing::Rat.to_string(), "Q");
    }
}
