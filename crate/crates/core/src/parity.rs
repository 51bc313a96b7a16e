use crate::error::{Error, Result};

/// Parity index in Z/2. Everything in the signed-Mellin machinery carries
/// one of these: test functions, transform lines, Kloosterman foldings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_index(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// (-1)^eta as a float, the sign that parity contributes to foldings.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Sum in Z/2 (parity of a product of two functions' sign characters).
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn require(self, required: Parity) -> Result<()> {
        if self == required {
            Ok(())
        } else {
            Err(Error::ParityMismatch {
                required: required.index(),
                found: self.index(),
            })
        }
    }
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_arithmetic_matches_signs() {
        assert_eq!(Parity::from_index(-3), Parity::Odd);
        assert_eq!(Parity::from_index(4), Parity::Even);
        assert_eq!(Parity::Even.sign(), 1.0);
        assert_eq!(Parity::Odd.sign(), -1.0);
        assert_eq!(Parity::Odd.add(Parity::Odd), Parity::Even);
        assert_eq!(Parity::Odd.add(Parity::Even), Parity::Odd);
        assert_eq!(Parity::Even.flip(), Parity::Odd);
    }

    #[test]
    fn require_reports_both_sides() {
        let err = Parity::Odd.require(Parity::Even).unwrap_err();
        match err {
            crate::Error::ParityMismatch { required, found } => {
                assert_eq!((required, found), (0, 1));
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
