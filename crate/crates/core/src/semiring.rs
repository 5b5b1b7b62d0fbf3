//! Semiring carriers: Booleans, arbitrary-precision naturals and
//! (extended rational, natural) pairs under min-with-tie-count.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `(A, +, x, 0, 1)`.
pub trait Semiring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn add_assign(&mut self, other: &Self) {
        *self = self.add(other);
    }

    fn from_value(value: &SemiringValue) -> Option<Self>;
    fn into_value(self) -> SemiringValue;
}

impl Semiring for bool {
    fn zero() -> Self {
        false
    }
    fn one() -> Self {
        true
    }
    fn add(&self, other: &Self) -> Self {
        *self || *other
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
    fn is_zero(&self) -> bool {
        !*self
    }
    fn add_assign(&mut self, other: &Self) {
        *self |= *other;
    }
    fn from_value(value: &SemiringValue) -> Option<Self> {
        match value {
            SemiringValue::Bool(b) => Some(*b),
            _ => None,
        }
    }
    fn into_value(self) -> SemiringValue {
        SemiringValue::Bool(self)
    }
}

/// A natural number, stored inline while it fits in 64 bits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Nat {
    Small(u64),
    Big(Box<BigUint>),
}

impl Nat {
    fn from_big(b: BigUint) -> Nat {
        match b.to_u64() {
            Some(x) => Nat::Small(x),
            None => Nat::Big(Box::new(b)),
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        match self {
            Nat::Small(x) => BigUint::from(*x),
            Nat::Big(b) => (**b).clone(),
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self {
            Nat::Small(x) => Some(*x),
            Nat::Big(_) => None,
        }
    }
}

impl From<u64> for Nat {
    fn from(x: u64) -> Self {
        Nat::Small(x)
    }
}

impl From<BigUint> for Nat {
    fn from(b: BigUint) -> Self {
        Nat::from_big(b)
    }
}

impl PartialOrd for Nat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Nat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Nat::Small(a), Nat::Small(b)) => a.cmp(b),
            _ => self.to_biguint().cmp(&other.to_biguint()),
        }
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nat::Small(x) => write!(f, "{x}"),
            Nat::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Nat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        s.parse::<BigUint>()
            .map(Nat::from_big)
            .map_err(|e| format!("bad natural {s:?}: {e}"))
    }
}

impl Semiring for Nat {
    fn zero() -> Self {
        Nat::Small(0)
    }
    fn one() -> Self {
        Nat::Small(1)
    }
    fn add(&self, other: &Self) -> Self {
        if let (Nat::Small(a), Nat::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(*b) {
                return Nat::Small(c);
            }
        }
        Nat::from_big(self.to_biguint() + other.to_biguint())
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Nat::Small(a), Nat::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(*b) {
                return Nat::Small(c);
            }
        }
        Nat::from_big(self.to_biguint() * other.to_biguint())
    }
    fn is_zero(&self) -> bool {
        matches!(self, Nat::Small(0))
    }
    fn add_assign(&mut self, other: &Self) {
        if let (Nat::Small(a), Nat::Small(b)) = (&mut *self, other) {
            if let Some(c) = a.checked_add(*b) {
                *a = c;
                return;
            }
        }
        *self = self.add(other);
    }
    fn from_value(value: &SemiringValue) -> Option<Self> {
        match value {
            SemiringValue::Nat(n) => Some(n.clone()),
            _ => None,
        }
    }
    fn into_value(self) -> SemiringValue {
        SemiringValue::Nat(self)
    }
}

/// An exact rational, held in machine words while numerator and denominator
/// fit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

// Always reduced, and `Big` only when the value does not fit `Small`, so the
// derived equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Rational {
    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(p), Some(q)) => Rational(Repr::Small(Ratio::new_raw(p, q))),
            _ => Rational(Repr::Big(Box::new(r))),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => BigRational::new_raw((*r.numer()).into(), (*r.denom()).into()),
            Repr::Big(r) => (**r).clone(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &other.0) {
            if let Some(c) = num_traits::CheckedAdd::checked_add(a, b) {
                return Rational(Repr::Small(c));
            }
        }
        Rational::from_big(self.to_big() + other.to_big())
    }

    fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_big();
        if r.is_integer() {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}

/// An exact rational or `+inf`. Variant order gives `Finite < Infinite`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    Finite(Rational),
    Infinite,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::from_integer(0)
    }

    pub fn from_integer(x: i64) -> Self {
        ExtRational::Finite(Rational(Repr::Small(Ratio::from_integer(x))))
    }

    /// `num / den`; panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRational::Finite(Rational::from_big(BigRational::new(num.into(), den.into())))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRational::Infinite)
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_negative())
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (ExtRational::Finite(a), ExtRational::Finite(b)) => ExtRational::Finite(a.add(b)),
            _ => ExtRational::Infinite,
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::Infinite => write!(f, "inf"),
            ExtRational::Finite(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExtRational {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ExtRational::Infinite);
        }
        let bad = |e: &dyn fmt::Display| format!("bad rational {s:?}: {e}");
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.parse().map_err(|e| bad(&e))?;
                let q: num_bigint::BigInt = q.parse().map_err(|e| bad(&e))?;
                if q.is_zero() {
                    return Err(bad(&"zero denominator"));
                }
                Ok(ExtRational::Finite(Rational::from_big(BigRational::new(p, q))))
            }
            None => Ok(ExtRational::Finite(Rational::from_big(BigRational::from_integer(s.parse().map_err(|e| bad(&e))?)))),
        }
    }
}

/// `(cost, count)` under `min` with tie-summed counts and `(+, x)`. Pairs
/// with infinite cost or zero count are normalized to the zero `(+inf, 0)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CostCount {
    cost: ExtRational,
    count: Nat,
}

impl CostCount {
    pub fn new(cost: ExtRational, count: Nat) -> Self {
        if cost.is_infinite() || count.is_zero() {
            Self::zero()
        } else {
            CostCount { cost, count }
        }
    }

    pub fn cost(&self) -> &ExtRational {
        &self.cost
    }

    pub fn count(&self) -> &Nat {
        &self.count
    }
}

impl fmt::Display for CostCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.cost, self.count)
    }
}

impl fmt::Debug for CostCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.cost, self.count)
    }
}

impl Semiring for CostCount {
    fn zero() -> Self {
        CostCount {
            cost: ExtRational::Infinite,
            count: Nat::Small(0),
        }
    }
    fn one() -> Self {
        CostCount {
            cost: ExtRational::zero(),
            count: Nat::Small(1),
        }
    }
    fn add(&self, other: &Self) -> Self {
        match self.cost.cmp(&other.cost) {
            std::cmp::Ordering::Less => self.clone(),
            std::cmp::Ordering::Greater => other.clone(),
            std::cmp::Ordering::Equal => CostCount {
                cost: self.cost.clone(),
                count: self.count.add(&other.count),
            },
        }
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        CostCount {
            cost: self.cost.add(&other.cost),
            count: self.count.mul(&other.count),
        }
    }
    fn is_zero(&self) -> bool {
        self.count.is_zero()
    }
    fn add_assign(&mut self, other: &Self) {
        match self.cost.cmp(&other.cost) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Greater => *self = other.clone(),
            std::cmp::Ordering::Equal => self.count.add_assign(&other.count),
        }
    }
    fn from_value(value: &SemiringValue) -> Option<Self> {
        match value {
            SemiringValue::Pair(p) => Some(p.clone()),
            _ => None,
        }
    }
    fn into_value(self) -> SemiringValue {
        SemiringValue::Pair(self)
    }
}

/// Which semiring a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Bool,
    Nat,
    Pair,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Carrier::Bool => "bool",
            Carrier::Nat => "nat",
            Carrier::Pair => "pair",
        })
    }
}

/// A value of one of the implemented semirings, with the one-line text form
/// `bool:<true|false>`, `nat:<n>` or `pair:<cost>,<count>`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SemiringValue {
    Bool(bool),
    Nat(Nat),
    Pair(CostCount),
}

impl SemiringValue {
    pub fn carrier(&self) -> Carrier {
        match self {
            SemiringValue::Bool(_) => Carrier::Bool,
            SemiringValue::Nat(_) => Carrier::Nat,
            SemiringValue::Pair(_) => Carrier::Pair,
        }
    }

    pub fn zero(carrier: Carrier) -> Self {
        match carrier {
            Carrier::Bool => SemiringValue::Bool(false),
            Carrier::Nat => SemiringValue::Nat(Nat::Small(0)),
            Carrier::Pair => SemiringValue::Pair(CostCount::zero()),
        }
    }

    pub fn one(carrier: Carrier) -> Self {
        match carrier {
            Carrier::Bool => SemiringValue::Bool(true),
            Carrier::Nat => SemiringValue::Nat(Nat::Small(1)),
            Carrier::Pair => SemiringValue::Pair(<CostCount as Semiring>::one()),
        }
    }

    pub fn nat(x: u64) -> Self {
        SemiringValue::Nat(Nat::from(x))
    }

    pub fn pair(cost: ExtRational, count: u64) -> Self {
        SemiringValue::Pair(CostCount::new(cost, Nat::from(count)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            SemiringValue::Bool(b) => !b,
            SemiringValue::Nat(n) => n.is_zero(),
            SemiringValue::Pair(p) => p.is_zero(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch(format!(
                "cannot combine {} and {} values",
                self.carrier(),
                other.carrier()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (self, other) {
            (SemiringValue::Bool(a), SemiringValue::Bool(b)) => a.add(b).into_value(),
            (SemiringValue::Nat(a), SemiringValue::Nat(b)) => a.add(b).into_value(),
            (SemiringValue::Pair(a), SemiringValue::Pair(b)) => a.add(b).into_value(),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(match (self, other) {
            (SemiringValue::Bool(a), SemiringValue::Bool(b)) => Semiring::mul(a, b).into_value(),
            (SemiringValue::Nat(a), SemiringValue::Nat(b)) => Semiring::mul(a, b).into_value(),
            (SemiringValue::Pair(a), SemiringValue::Pair(b)) => Semiring::mul(a, b).into_value(),
            _ => unreachable!(),
        })
    }
}

impl fmt::Display for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiringValue::Bool(b) => write!(f, "bool:{b}"),
            SemiringValue::Nat(n) => write!(f, "nat:{n}"),
            SemiringValue::Pair(p) => write!(f, "pair:{p}"),
        }
    }
}

impl fmt::Debug for SemiringValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SemiringValue {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (tag, body) = s.trim().split_once(':').ok_or_else(|| format!("untagged value {s:?}"))?;
        match tag {
            "bool" => match body {
                "true" => Ok(SemiringValue::Bool(true)),
                "false" => Ok(SemiringValue::Bool(false)),
                _ => Err(format!("bad boolean {body:?}")),
            },
            "nat" => Ok(SemiringValue::Nat(body.parse()?)),
            "pair" => {
                let (c, n) = body.split_once(',').ok_or_else(|| format!("bad pair {body:?}"))?;
                let cost: ExtRational = c.parse()?;
                let count: Nat = n.parse()?;
                let p = CostCount::new(cost.clone(), count.clone());
                if p.cost != cost || p.count != count {
                    return Err(format!("pair {body:?} is not normalized"));
                }
                Ok(SemiringValue::Pair(p))
            }
            _ => Err(format!("unknown value tag {tag:?}")),
        }
    }
}
