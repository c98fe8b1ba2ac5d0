//! Complex numbers over the exact radical ring, used only while conjugating
//! complex-basis operators into the real harmonic basis. Results are checked
//! to be real and the imaginary parts discarded.

use crate::exact::{MultiRadical, RadicalScalar, Rat};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct CScalar {
    pub re: MultiRadical,
    pub im: MultiRadical,
}

impl CScalar {
    pub fn zero() -> Self {
        CScalar {
            re: MultiRadical::zero(),
            im: MultiRadical::zero(),
        }
    }

    pub fn from_real(re: MultiRadical) -> Self {
        CScalar {
            re,
            im: MultiRadical::zero(),
        }
    }

    pub fn from_radical(r: &RadicalScalar) -> Self {
        Self::from_real(MultiRadical::from_radical(r))
    }

    /// `i^k` for any integer k.
    pub fn i_pow(k: i64) -> Self {
        let one = MultiRadical::from_rat(Rat::from_integer(1.into()));
        let zero = MultiRadical::zero();
        match k.rem_euclid(4) {
            0 => CScalar { re: one, im: zero },
            1 => CScalar { re: zero, im: one },
            2 => CScalar {
                re: one.neg(),
                im: zero,
            },
            _ => CScalar {
                re: zero,
                im: one.neg(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CScalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CScalar {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        CScalar {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_radical(&self, s: &RadicalScalar) -> Self {
        CScalar {
            re: self.re.mul_radical(s),
            im: self.im.mul_radical(s),
        }
    }

    pub fn scale(&self, q: &Rat) -> Self {
        CScalar {
            re: self.re.scale(q),
            im: self.im.scale(q),
        }
    }
}
