//! Extended reals and closed intervals of them.
//!
//! [`ExtReal`] is the two-point compactification of the reals: every f64
//! except NaN, with `-inf < finite < +inf`. Excluding NaN makes the order
//! total, so `min`/`max` over neighborhoods need no special cases even when
//! infinities flow through them.
//!
//! [`Interval`] is a closed, possibly degenerate interval `[lo, hi]` with
//! `lo <= hi` enforced at construction. Two relations matter downstream and
//! must not be confused:
//!
//! * the componentwise order [`Interval::leq`]: `[a,b] <= [c,d]` iff
//!   `a <= c` and `b <= d` (a *partial* order — function lattices are built
//!   on its pointwise extension);
//! * containment [`Interval::subset`]: `[a,b]` is contained in `[c,d]` iff
//!   `c <= a` and `b <= d`.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Unexpected};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// An extended real number: any f64 value except NaN.
#[derive(Clone, Copy, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INFINITY: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const INFINITY: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a float, rejecting NaN.
    pub fn new(v: f64) -> Result<ExtReal> {
        if v.is_nan() {
            return Err(Error::NanValue);
        }
        Ok(ExtReal(v))
    }

    /// The raw float (finite, or one of the two infinities).
    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

// NaN is excluded by construction, so the order is total.
impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).expect("ExtReal is never NaN")
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i32> for ExtReal {
    fn from(v: i32) -> Self {
        ExtReal(f64::from(v))
    }
}

impl TryFrom<f64> for ExtReal {
    type Error = Error;

    fn try_from(v: f64) -> Result<Self> {
        ExtReal::new(v)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire format: finite values are JSON numbers, infinities the strings
// "inf" / "-inf" (JSON itself has no infinity literal).
impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 == f64::INFINITY {
            serializer.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            serializer.serialize_str("-inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;

        impl<'de> de::Visitor<'de> for Visitor {
            type Value = ExtReal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"inf\" / \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<ExtReal, E> {
                ExtReal::new(v).map_err(|_| E::invalid_value(Unexpected::Float(v), &self))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<ExtReal, E> {
                Ok(ExtReal(v as f64))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<ExtReal, E> {
                match s {
                    "inf" => Ok(ExtReal::INFINITY),
                    "-inf" => Ok(ExtReal::NEG_INFINITY),
                    _ => Err(E::invalid_value(Unexpected::Str(s), &self)),
                }
            }
        }

        deserializer.deserialize_any(Visitor)
    }
}

/// A closed interval `[lo, hi]` of extended reals with `lo <= hi`.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
}

impl Interval {
    /// Builds `[lo, hi]`, rejecting `lo > hi` rather than silently swapping:
    /// a reversed pair is a caller bug worth surfacing.
    pub fn new(lo: ExtReal, hi: ExtReal) -> Result<Interval> {
        if lo > hi {
            return Err(Error::EmptyInterval {
                lo: lo.get(),
                hi: hi.get(),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// The degenerate interval `[v, v]`. Defined for every extended real,
    /// including the infinities.
    pub fn point(v: ExtReal) -> Interval {
        Interval { lo: v, hi: v }
    }

    pub fn lo(self) -> ExtReal {
        self.lo
    }

    pub fn hi(self) -> ExtReal {
        self.hi
    }

    /// True iff the interval is degenerate (`lo == hi`).
    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    /// `hi - lo`, with degenerate intervals reporting 0 even at infinity.
    pub fn width(self) -> f64 {
        if self.is_point() {
            0.0
        } else {
            self.hi.get() - self.lo.get()
        }
    }

    /// Componentwise order: `self <= other` iff both endpoints are.
    pub fn leq(self, other: Interval) -> bool {
        self.lo <= other.lo && self.hi <= other.hi
    }

    /// Containment: `self` is a subset of `other`.
    pub fn subset(self, other: Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire format: the two-element array [lo, hi].
impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.lo)?;
        t.serialize_element(&self.hi)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (lo, hi) = <(ExtReal, ExtReal)>::deserialize(deserializer)?;
        Interval::new(lo, hi).map_err(de::Error::custom)
    }
}
