use std::fmt;

use num_bigint::BigInt;

use super::{order_m0, residue_order, PadicInt, Valuation};
use crate::error::{domain, Result};

/// Class of a 3-adic principal unit modulo 9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mod9Class {
    /// `q ≡ 7 (mod 9)`
    Seven,
    /// `q ≡ 4 (mod 9)`
    Four,
    /// `q ≡ 1 (mod 9)`
    Deep,
}

impl fmt::Display for Mod9Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mod9Class::Seven => "seven",
            Mod9Class::Four => "four",
            Mod9Class::Deep => "deep",
        })
    }
}

/// A unit `q` together with the invariants every cocycle computation needs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QParameter {
    value: PadicInt,
    m0: Valuation,
    l0: Option<Valuation>,
    class: Option<Mod9Class>,
    residue_order: u64,
}

impl QParameter {
    pub fn new(value: PadicInt) -> Result<Self> {
        if !value.is_unit() {
            return Err(domain(format!("q = {value} is not a unit")));
        }
        let m0 = value.add_int(-1).valuation();
        let l0 = (value.prime() == 2).then(|| value.add_int(1).valuation());
        let class = if value.prime() != 3 {
            None
        } else {
            match m0 {
                Valuation::Finite(0) => None,
                Valuation::Finite(1) if value.digit(1) == 2 => Some(Mod9Class::Seven),
                Valuation::Finite(1) => Some(Mod9Class::Four),
                // q ≡ 1 (mod 3) known to one digit only: the class mod 9 is open
                Valuation::Infinite if value.precision() < 2 => None,
                _ => Some(Mod9Class::Deep),
            }
        };
        let residue_order = residue_order(&value)?;
        Ok(QParameter {
            value,
            m0,
            l0,
            class,
            residue_order,
        })
    }

    pub fn from_int(q: impl Into<BigInt>, prime: u64, precision: u32) -> Result<Self> {
        Self::new(PadicInt::from_int(q, prime, precision)?)
    }

    pub fn value(&self) -> &PadicInt {
        &self.value
    }

    pub fn prime(&self) -> u64 {
        self.value.prime()
    }

    pub fn precision(&self) -> u32 {
        self.value.precision()
    }

    /// `v_p(q - 1)`.
    pub fn m0(&self) -> Valuation {
        self.m0
    }

    /// `v_2(q + 1)`, present only for `p = 2`.
    pub fn l0(&self) -> Option<Valuation> {
        self.l0
    }

    /// Class mod 9, present only for `p = 3` and `q ≡ 1 (mod 3)`.
    pub fn class(&self) -> Option<Mod9Class> {
        self.class
    }

    /// `o_p`, the order of `q` modulo `p`.
    pub fn residue_order(&self) -> u64 {
        self.residue_order
    }

    /// `v_p(q^{o_p} - 1)`: equals `m0` for principal units.
    pub fn order_m0(&self) -> Valuation {
        if self.is_principal() {
            self.m0
        } else {
            order_m0(&self.value).expect("q is a unit")
        }
    }

    /// `q ≡ 1 (mod p)`.
    pub fn is_principal(&self) -> bool {
        self.m0.at_least(1)
    }

    /// `q ≡ 1 (mod p^2)`, decided from the available digits.
    pub fn is_deep(&self) -> bool {
        self.m0 != Valuation::Finite(0) && self.m0 != Valuation::Finite(1) && self.precision() >= 2
    }

    /// Same parameter with fewer digits.
    pub fn truncate(&self, precision: u32) -> Result<Self> {
        Self::new(self.value.truncate(precision)?)
    }
}

impl fmt::Display for QParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metadata() {
        let q = QParameter::from_int(4, 3, 6).unwrap();
        assert_eq!(q.m0(), Valuation::Finite(1));
        assert_eq!(q.class(), Some(Mod9Class::Four));
        assert_eq!(q.l0(), None);
        let q = QParameter::from_int(7, 3, 6).unwrap();
        assert_eq!(q.class(), Some(Mod9Class::Seven));
        let q = QParameter::from_int(10, 3, 6).unwrap();
        assert_eq!(q.class(), Some(Mod9Class::Deep));
        assert_eq!(q.m0(), Valuation::Finite(2));
        let q = QParameter::from_int(1, 3, 6).unwrap();
        assert_eq!(q.m0(), Valuation::Infinite);
        assert_eq!(q.class(), Some(Mod9Class::Deep));
        assert_eq!(QParameter::from_int(4, 3, 1).unwrap().class(), None);
        let q = QParameter::from_int(3, 2, 6).unwrap();
        assert_eq!(q.m0(), Valuation::Finite(1));
        assert_eq!(q.l0(), Some(Valuation::Finite(2)));
        assert!(!q.is_deep());
        let q = QParameter::from_int(2, 5, 3).unwrap();
        assert_eq!(q.residue_order(), 4);
        assert_eq!(q.m0(), Valuation::Finite(0));
        assert_eq!(q.order_m0(), Valuation::Finite(1));
        assert!(QParameter::from_int(6, 3, 4).is_err());
    }
}
