//! Dual rationals `a + αε` with `ε² = 0`, the shadow Markoff equation
//! `A² + B² + C² = (3 − σε)ABC` and the elementary mutations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// `body + shadow·ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualRational {
    pub body: Rational,
    pub shadow: Rational,
}

impl DualRational {
    pub fn new(body: Rational, shadow: Rational) -> Self {
        Self { body, shadow }
    }

    pub fn from_ints(body: i64, shadow: i64) -> Self {
        Self::new(
            Rational::from_integer(body.into()),
            Rational::from_integer(shadow.into()),
        )
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    /// Multiplicative inverse; defined whenever the body is nonzero.
    pub fn recip(&self) -> Result<Self> {
        if self.body.is_zero() {
            return Err(Error::DivisionByZero("dual number with zero body"));
        }
        let inv = self.body.recip();
        let shadow = -&self.shadow * &inv * &inv;
        Ok(Self::new(inv, shadow))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.body * k, &self.shadow * k)
    }
}

impl fmt::Display for DualRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}ε", self.body, self.shadow)
    }
}

pub fn dual_add(x: &DualRational, y: &DualRational) -> DualRational {
    DualRational::new(&x.body + &y.body, &x.shadow + &y.shadow)
}

pub fn dual_mul(x: &DualRational, y: &DualRational) -> DualRational {
    DualRational::new(
        &x.body * &y.body,
        &x.body * &y.shadow + &y.body * &x.shadow,
    )
}

impl<'a> Add<&'a DualRational> for &'a DualRational {
    type Output = DualRational;
    fn add(self, rhs: &'a DualRational) -> DualRational {
        dual_add(self, rhs)
    }
}

impl<'a> Sub<&'a DualRational> for &'a DualRational {
    type Output = DualRational;
    fn sub(self, rhs: &'a DualRational) -> DualRational {
        DualRational::new(&self.body - &rhs.body, &self.shadow - &rhs.shadow)
    }
}

impl<'a> Mul<&'a DualRational> for &'a DualRational {
    type Output = DualRational;
    fn mul(self, rhs: &'a DualRational) -> DualRational {
        dual_mul(self, rhs)
    }
}

impl Neg for &DualRational {
    type Output = DualRational;
    fn neg(self) -> DualRational {
        DualRational::new(-&self.body, -&self.shadow)
    }
}

/// Sum of the root shadows; the constant in `(3 − σε)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sigma(pub Rational);

impl Sigma {
    pub fn value(&self) -> &Rational {
        &self.0
    }
}

pub fn sigma_of_root(alpha: &Rational, beta: &Rational, gamma: &Rational) -> Sigma {
    Sigma(alpha + beta + gamma)
}

/// One of the three positions of a triple, 1-based as in `(A, B, C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    First,
    Second,
    Third,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::First, Slot::Second, Slot::Third];

    pub fn from_index(slot: usize) -> Result<Self> {
        match slot {
            1 => Ok(Slot::First),
            2 => Ok(Slot::Second),
            3 => Ok(Slot::Third),
            other => Err(Error::InvalidSlot(other)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Slot::First => 0,
            Slot::Second => 1,
            Slot::Third => 2,
        }
    }

    /// The other two slots, in increasing order.
    fn others(self) -> (usize, usize) {
        match self {
            Slot::First => (1, 2),
            Slot::Second => (0, 2),
            Slot::Third => (0, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShadowTriple {
    pub first: DualRational,
    pub second: DualRational,
    pub third: DualRational,
}

impl ShadowTriple {
    pub fn new(first: DualRational, second: DualRational, third: DualRational) -> Self {
        Self {
            first,
            second,
            third,
        }
    }

    /// The initial triple `(1 + αε, 1 + βε, 1 + γε)`.
    pub fn root(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        Self::new(
            DualRational::new(Rational::one(), alpha),
            DualRational::new(Rational::one(), beta),
            DualRational::new(Rational::one(), gamma),
        )
    }

    pub fn from_parts(bodies: [Rational; 3], shadows: [Rational; 3]) -> Self {
        let [a, b, c] = bodies;
        let [x, y, z] = shadows;
        Self::new(
            DualRational::new(a, x),
            DualRational::new(b, y),
            DualRational::new(c, z),
        )
    }

    pub fn get(&self, slot: Slot) -> &DualRational {
        match slot {
            Slot::First => &self.first,
            Slot::Second => &self.second,
            Slot::Third => &self.third,
        }
    }

    fn as_array(&self) -> [&DualRational; 3] {
        [&self.first, &self.second, &self.third]
    }

    pub fn bodies(&self) -> [Rational; 3] {
        self.as_array().map(|d| d.body.clone())
    }

    pub fn shadows(&self) -> [Rational; 3] {
        self.as_array().map(|d| d.shadow.clone())
    }

    fn with(&self, slot: Slot, value: DualRational) -> Self {
        let mut out = self.clone();
        match slot {
            Slot::First => out.first = value,
            Slot::Second => out.second = value,
            Slot::Third => out.third = value,
        }
        out
    }
}

/// Whether `A² + B² + C² = (3 − σε)ABC` holds exactly in the dual algebra.
pub fn check_shadow_equation(t: &ShadowTriple, sigma: &Sigma) -> bool {
    let lhs = &(&(&t.first * &t.first) + &(&t.second * &t.second)) + &(&t.third * &t.third);
    let coefficient = DualRational::new(Rational::from_integer(3.into()), -sigma.value());
    let rhs = &(&(&coefficient * &t.first) * &t.second) * &t.third;
    lhs == rhs
}

/// Classical mutation `a ↦ (b² + c²)/a` on an integer triple.
pub fn classical_mutate(t: [BigInt; 3], slot: usize) -> Result<[BigInt; 3]> {
    let slot = Slot::from_index(slot)?;
    let i = slot.index();
    let (j, k) = slot.others();
    if t[i].is_zero() {
        return Err(Error::DivisionByZero("classical mutation at a zero entry"));
    }
    let numerator = &t[j] * &t[j] + &t[k] * &t[k];
    let (q, r) = numerator.div_rem(&t[i]);
    if !r.is_zero() {
        return Err(Error::NonIntegral {
            numerator: numerator.to_string(),
            divisor: t[i].to_string(),
        });
    }
    let mut out = t;
    out[i] = q;
    Ok(out)
}

/// Pure mutation at `slot`, no permutation:
/// `a' = (b² + c²)/a`, `α' = (−a'α + 2bβ + 2cγ)/a`.
pub fn mutate_at(t: &ShadowTriple, slot: Slot) -> Result<ShadowTriple> {
    let entries = t.as_array();
    let (j, k) = slot.others();
    let x = entries[slot.index()];
    let (y, z) = (entries[j], entries[k]);
    if x.body.is_zero() {
        return Err(Error::DivisionByZero("mutation at a zero body"));
    }
    let two = Rational::from_integer(2.into());
    let body = (&y.body * &y.body + &z.body * &z.body) / &x.body;
    let shadow = (-(&body * &x.shadow) + &two * &y.body * &y.shadow + &two * &z.body * &z.shadow)
        / &x.body;
    Ok(t.with(slot, DualRational::new(body, shadow)))
}
