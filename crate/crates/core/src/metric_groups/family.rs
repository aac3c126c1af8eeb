use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linalg::{gcd, is_prime, jacobi_symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Family {
    pub fn from_char(c: char) -> Option<Family> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            _ => return None,
        })
    }

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
        }
    }
}

/// One of the eight prime families, with its optional numerator parameter.
///
/// For odd `p`, `param` is `m` in `q(1) = m / p^r` (A needs `(2m/p) = 1`,
/// B needs `(2m/p) = -1`); it defaults to the smallest admissible value.
/// The 2-adic families carry no parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFamilySpec {
    pub family: Family,
    pub p: u64,
    pub r: u32,
    pub param: Option<u64>,
}

impl PrimeFamilySpec {
    pub fn new(family: Family, p: u64, r: u32) -> Result<Self> {
        let s = PrimeFamilySpec { family, p, r, param: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_param(family: Family, p: u64, r: u32, m: u64) -> Result<Self> {
        let s = PrimeFamilySpec { family, p, r, param: Some(m) };
        s.validate()?;
        Ok(s)
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// Group order `|A|`.
    pub fn order(&self) -> u64 {
        match self.family {
            Family::E | Family::F => self.modulus() * self.modulus(),
            _ => self.modulus(),
        }
    }

    pub fn is_odd_prime(&self) -> bool {
        self.p != 2
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        if self.r == 0 {
            return bad(format!("{self}: exponent must be positive"));
        }
        if !is_prime(self.p) {
            return bad(format!("{} is not prime", self.p));
        }
        if self.p.checked_pow(self.r).is_none_or(|m| m > (1 << 40)) {
            return bad(format!("{self}: modulus too large"));
        }
        match self.family {
            Family::A | Family::B if self.p != 2 => {
                if let Some(m) = self.param {
                    let pr = self.modulus();
                    if m == 0 || m >= pr || gcd(m, self.p) != 1 {
                        return bad(format!("{self}: parameter {m} must be a unit below {pr}"));
                    }
                    let want = if self.family == Family::A { 1 } else { -1 };
                    if jacobi_symbol(2 * m as i64, self.p as i64)? != want {
                        return bad(format!("{self}: (2*{m}/{}) must be {want}", self.p));
                    }
                }
            }
            Family::A | Family::B => {
                if self.param.is_some() {
                    return bad(format!("{self}: 2-adic families take no parameter"));
                }
            }
            Family::C | Family::D => {
                if self.p != 2 {
                    return bad(format!("{self}: family {} needs p = 2", self.family.letter()));
                }
                if self.r < 2 {
                    return bad(format!("{self}: family {} needs r >= 2", self.family.letter()));
                }
                if self.param.is_some() {
                    return bad(format!("{self}: 2-adic families take no parameter"));
                }
            }
            Family::E | Family::F => {
                if self.p != 2 {
                    return bad(format!("{self}: family {} needs p = 2", self.family.letter()));
                }
                if self.param.is_some() {
                    return bad(format!("{self}: 2-adic families take no parameter"));
                }
            }
        }
        Ok(())
    }

    /// The numerator `m` of `q(1) = m/p^r` for odd `p` (explicit or the
    /// smallest admissible one).
    pub fn odd_numerator(&self) -> Option<u64> {
        if self.p == 2 || !matches!(self.family, Family::A | Family::B) {
            return None;
        }
        if let Some(m) = self.param {
            return Some(m);
        }
        let want = if self.family == Family::A { 1 } else { -1 };
        (1..self.p).find(|&m| jacobi_symbol(2 * m as i64, self.p as i64) == Ok(want))
    }

    /// The spec of the conjugate model `(A, -q)`.
    pub fn conjugate(&self) -> PrimeFamilySpec {
        let swap = |f| match f {
            Family::A => Family::B,
            Family::B => Family::A,
            Family::C => Family::D,
            Family::D => Family::C,
            other => other,
        };
        let family = match self.family {
            Family::A | Family::B if self.p != 2 => {
                if self.p % 4 == 1 {
                    self.family
                } else {
                    swap(self.family)
                }
            }
            f => swap(f),
        };
        let param = self.param.map(|m| self.modulus() - m);
        PrimeFamilySpec { family, p: self.p, r: self.r, param }
    }
}

impl fmt::Display for PrimeFamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 1 {
            write!(f, "{}[{}]", self.family.letter(), self.p)
        } else if self.p == 2 {
            write!(f, "{}[{}]", self.family.letter(), self.modulus())
        } else {
            write!(f, "{}[{}^{}]", self.family.letter(), self.p, self.r)
        }
    }
}

/// Central charge mod 8 from the closed-form table.
pub fn central_charge_closed(spec: &PrimeFamilySpec) -> Result<u8> {
    spec.validate()?;
    let r_even = spec.r.is_multiple_of(2);
    Ok(match spec.family {
        Family::A | Family::B if spec.p != 2 => {
            if r_even {
                0
            } else {
                let (a, b) = match spec.p % 8 {
                    1 => (0, 4),
                    7 => (2, 6),
                    5 => (4, 0),
                    _ => (6, 2),
                };
                if spec.family == Family::A {
                    a
                } else {
                    b
                }
            }
        }
        Family::A => 1,
        Family::B => 7,
        Family::C => {
            if r_even {
                5
            } else {
                1
            }
        }
        Family::D => {
            if r_even {
                3
            } else {
                7
            }
        }
        Family::E => 0,
        Family::F => {
            if r_even {
                0
            } else {
                4
            }
        }
    })
}
