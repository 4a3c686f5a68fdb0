//! Extended reals `R ∪ {-∞, +∞}` with inf-addition and its residual.
//!
//! Addition is biased towards `+∞`: the sum is `+∞` as soon as one summand is
//! `+∞`, even against `-∞`. With that convention the extended reals are a
//! complete lattice with a residuated, commutative, associative addition, and
//! they serve as the one-dimensional oracle for the upper-set lattice under
//! the identification `[r, ∞) ↔ r`, `R ↔ -∞`, `∅ ↔ +∞`.

use crate::rational::{fmt_rational, Rational};
use num_traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtReal {
    MinusInf,
    Finite(Rational),
    PlusInf,
}

use ExtReal::{Finite, MinusInf, PlusInf};

impl ExtReal {
    pub fn zero() -> Self {
        Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Inf-addition: `+∞` absorbs everything, otherwise `-∞` absorbs,
    /// otherwise ordinary addition.
    pub fn inf_add(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (PlusInf, _) | (_, PlusInf) => PlusInf,
            (MinusInf, _) | (_, MinusInf) => MinusInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Residual of inf-addition: `r ⊖ s = inf { t ∈ R̄ : r ≤ s ⊕ t }`
    /// (with `inf ∅ = +∞` and `inf R̄ = -∞`). Satisfies the adjunction
    /// `r ≤ s ⊕ t  ⟺  r ⊖ s ≤ t` for all arguments.
    pub fn residual(&self, s: &ExtReal) -> ExtReal {
        match (self, s) {
            (_, PlusInf) => MinusInf,
            (MinusInf, _) => MinusInf,
            (r, MinusInf) => {
                debug_assert!(*r > MinusInf);
                PlusInf
            }
            (PlusInf, Finite(_)) => PlusInf,
            (Finite(r), Finite(b)) => Finite(r - b),
        }
    }

    /// Multiplication by a strictly positive rational; fixes both infinities.
    pub fn scale_pos(&self, t: &Rational) -> ExtReal {
        assert!(t.is_positive(), "scale_pos needs t > 0");
        match self {
            PlusInf => PlusInf,
            MinusInf => MinusInf,
            Finite(r) => Finite(r * t),
        }
    }

    pub fn neg(&self) -> ExtReal {
        match self {
            PlusInf => MinusInf,
            MinusInf => PlusInf,
            Finite(r) => Finite(-r),
        }
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<Rational> for ExtReal {
    fn from(r: Rational) -> Self {
        Finite(r)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinusInf => write!(f, "-inf"),
            PlusInf => write!(f, "+inf"),
            Finite(r) => write!(f, "{}", fmt_rational(r)),
        }
    }
}

use num_traits::Signed;
