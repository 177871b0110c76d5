//! Exact rational coefficients.
//!
//! Most coefficients met while manipulating point transformations stay small,
//! so [`Q`] keeps a machine-word representation and only promotes to
//! arbitrary precision when an intermediate result overflows `i64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
///
/// `Small(n, d)` is always reduced with `d > 0`; `Big` is used only when the
/// reduced value does not fit in `i64` halves.
#[derive(Clone, Debug)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(0, 1)
    }

    pub fn one() -> Q {
        Q::Small(1, 1)
    }

    pub fn from_int(n: i64) -> Q {
        Q::from_i128_pair(n as i128, 1)
    }

    /// Builds `n / d`; panics on `d == 0`.
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128_pair(n as i128, d as i128)
    }

    fn from_i128_pair(mut n: i128, mut d: i128) -> Q {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Q::Small(0, 1);
        }
        // i64::MIN is excluded so that negation never overflows.
        if n > i64::MIN as i128 && n <= i64::MAX as i128 && d <= i64::MAX as i128 {
            Q::Small(n as i64, d as i64)
        } else {
            Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))
        }
    }

    pub fn from_big(r: BigRational) -> Q {
        // BigRational is kept reduced by its own constructors.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Q::Small(n, d);
            }
        }
        Q::Big(Box::new(r))
    }

    pub fn from_bigint(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::Small(n, _) => n.signum() as i32,
            Q::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Q {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Q::from_i128_pair(*d as i128, *n as i128)
            }
            Q::Big(b) => Q::from_big(b.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Q {
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            // Normalization guarantees a Big never equals a Small.
            (Q::Big(a), Q::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl std::hash::Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Q::Big(b) => {
                b.numer().hash(state);
                b.denom().hash(state);
            }
        }
    }
}

impl<'a> Add<&'a Q> for &'a Q {
    type Output = Q;
    fn add(self, rhs: &Q) -> Q {
        match (self, rhs) {
            (Q::Small(a, 1), Q::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) if s != i64::MIN => Q::Small(s, 1),
                _ => Q::from_i128_pair(*a as i128 + *c as i128, 1),
            },
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Q::from_i128_pair(a + c, b)
                } else {
                    Q::from_i128_pair(a * d + c * b, b * d)
                }
            }
            _ => Q::from_big(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Q> for &'a Q {
    type Output = Q;
    fn sub(self, rhs: &Q) -> Q {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Q> for &'a Q {
    type Output = Q;
    fn mul(self, rhs: &Q) -> Q {
        match (self, rhs) {
            (Q::Small(a, 1), Q::Small(c, 1)) => match a.checked_mul(*c) {
                Some(p) if p != i64::MIN => Q::Small(p, 1),
                _ => Q::from_i128_pair(*a as i128 * *c as i128, 1),
            },
            (Q::Small(a, b), Q::Small(c, d)) => {
                // Cross-cancel first so the i128 products stay small.
                let g1 = a.gcd(d).max(1);
                let g2 = c.gcd(b).max(1);
                let n = (*a / g1) as i128 * (*c / g2) as i128;
                let dd = (*b / g2) as i128 * (*d / g1) as i128;
                Q::from_i128_pair(n, dd)
            }
            _ => Q::from_big(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Q) -> Q {
        self * &rhs.recip()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => Q::Small(-n, *d),
            Q::Big(b) => Q::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Q> for Q {
            type Output = Q;
            fn $m(self, rhs: Q) -> Q {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Q> for Q {
            type Output = Q;
            fn $m(self, rhs: &'a Q) -> Q {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Q> for Q {
    fn add_assign(&mut self, rhs: &Q) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Q> for Q {
    fn sub_assign(&mut self, rhs: &Q) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Q> for Q {
    fn mul_assign(&mut self, rhs: &Q) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::from_int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl FromStr for Q {
    type Err = String;

    /// Accepts `p` or `p/q` with optional leading minus.
    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("invalid rational `{s}`"))?;
        let d: BigInt = d.parse().map_err(|_| format!("invalid rational `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

/// Greatest common divisor of the numerators and lcm of the denominators of a
/// coefficient list, returned as the rational content (always positive).
pub fn content<'a>(coeffs: impl IntoIterator<Item = &'a Q>) -> Q {
    let mut g = BigInt::zero();
    let mut l = BigInt::one();
    for c in coeffs {
        g = g.gcd(&c.numer());
        l = l.lcm(&c.denom());
    }
    if g.is_zero() {
        return Q::one();
    }
    Q::from_big(BigRational::new(g, l))
}
