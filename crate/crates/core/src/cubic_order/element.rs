use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `x + y*rho + z*rho^2` with integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrderElement {
    #[serde(with = "crate::serde_int")]
    pub x: BigInt,
    #[serde(with = "crate::serde_int")]
    pub y: BigInt,
    #[serde(with = "crate::serde_int")]
    pub z: BigInt,
}

impl OrderElement {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    pub fn rho() -> Self {
        Self::new(0, 1, 0)
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&BigInt; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            x: &self.x * k,
            y: &self.y * k,
            z: &self.z * k,
        }
    }
}

impl From<[i64; 3]> for OrderElement {
    fn from(c: [i64; 3]) -> Self {
        Self::new(c[0], c[1], c[2])
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &OrderElement {
    type Output = OrderElement;
    fn add(self, rhs: &OrderElement) -> OrderElement {
        OrderElement {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Sub for &OrderElement {
    type Output = OrderElement;
    fn sub(self, rhs: &OrderElement) -> OrderElement {
        OrderElement {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &OrderElement {
    type Output = OrderElement;
    fn neg(self) -> OrderElement {
        OrderElement {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

/// A field element `x + y*rho + z*rho^2` with rational coordinates.
///
/// `BigRational` keeps every coordinate reduced with a positive denominator,
/// so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldVector {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl FieldVector {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::from(&OrderElement::zero())
    }

    pub fn one() -> Self {
        Self::from(&OrderElement::one())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Splits into `(numerator, d)` with `self = numerator / d` and `d >= 1`
    /// the least common denominator.
    pub fn to_scaled(&self) -> (OrderElement, BigInt) {
        let d = self
            .x
            .denom()
            .lcm(self.y.denom())
            .lcm(self.z.denom());
        let lift = |c: &BigRational| c.numer() * (&d / c.denom());
        (OrderElement::new(lift(&self.x), lift(&self.y), lift(&self.z)), d)
    }

    pub fn from_scaled(num: &OrderElement, d: &BigInt) -> Self {
        let q = |c: &BigInt| BigRational::new(c.clone(), d.clone());
        Self::new(q(&num.x), q(&num.y), q(&num.z))
    }

    /// The element as an `OrderElement` when all coordinates are integers.
    pub fn to_order_element(&self) -> Option<OrderElement> {
        let (num, d) = self.to_scaled();
        d.is_one().then_some(num)
    }
}

impl From<&OrderElement> for FieldVector {
    fn from(e: &OrderElement) -> Self {
        let q = |c: &BigInt| BigRational::from_integer(c.clone());
        Self::new(q(&e.x), q(&e.y), q(&e.z))
    }
}

impl From<OrderElement> for FieldVector {
    fn from(e: OrderElement) -> Self {
        Self::from(&e)
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for &FieldVector {
    type Output = FieldVector;
    fn add(self, rhs: &FieldVector) -> FieldVector {
        FieldVector::new(&self.x + &rhs.x, &self.y + &rhs.y, &self.z + &rhs.z)
    }
}

impl Sub for &FieldVector {
    type Output = FieldVector;
    fn sub(self, rhs: &FieldVector) -> FieldVector {
        FieldVector::new(&self.x - &rhs.x, &self.y - &rhs.y, &self.z - &rhs.z)
    }
}

impl Neg for &FieldVector {
    type Output = FieldVector;
    fn neg(self) -> FieldVector {
        FieldVector::new(-&self.x, -&self.y, -&self.z)
    }
}
