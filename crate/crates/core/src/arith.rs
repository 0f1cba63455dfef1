//! Exact scalars: rationals, the min-plus semiring and its supertropical
//! extension with ghost elements.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-3"`, `"7/2"` or `" 4 "`. Non-canonical input such as `"2/4"` is
/// reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"-3"` or `"7/2"`.
pub fn render_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses a comma separated list of rationals, e.g. `"1/2,-3"`.
pub fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

pub fn render_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(render_rational).collect()
}

/// Lossy conversion used only for drawing.
pub fn to_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Serde adapter storing a rational as its canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    /// Accepts both `"7/2"` and bare JSON integers.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RationalRepr {
        Int(i64),
        Text(String),
    }

    impl RationalRepr {
        pub(crate) fn into_rational(self) -> Result<Rational> {
            match self {
                RationalRepr::Int(n) => Ok(rat(n)),
                RationalRepr::Text(s) => parse_rational(&s),
            }
        }
    }
}

/// Same as [`serde_rational`] for vectors.
pub mod serde_rational_vec {
    use super::serde_rational::RationalRepr;
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&render_rational(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Element of the tropical semiring `(Q ∪ {∞}, min, +)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TropValue {
    Finite(Rational),
    Infinity,
}

impl TropValue {
    pub fn zero() -> Self {
        TropValue::Infinity
    }

    pub fn one() -> Self {
        TropValue::Finite(Rational::zero())
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, TropValue::Infinity)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            TropValue::Finite(x) => Some(x),
            TropValue::Infinity => None,
        }
    }
}

impl From<Rational> for TropValue {
    fn from(x: Rational) -> Self {
        TropValue::Finite(x)
    }
}

impl PartialOrd for TropValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TropValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TropValue::Finite(a), TropValue::Finite(b)) => a.cmp(b),
            (TropValue::Finite(_), TropValue::Infinity) => Ordering::Less,
            (TropValue::Infinity, TropValue::Finite(_)) => Ordering::Greater,
            (TropValue::Infinity, TropValue::Infinity) => Ordering::Equal,
        }
    }
}

/// Tropical sum, `a ⊕ b = min(a, b)`.
pub fn trop_add(a: &TropValue, b: &TropValue) -> TropValue {
    std::cmp::min(a, b).clone()
}

/// Tropical product, `a ⊙ b = a + b`; `∞` absorbs.
pub fn trop_mul(a: &TropValue, b: &TropValue) -> TropValue {
    match (a, b) {
        (TropValue::Finite(x), TropValue::Finite(y)) => TropValue::Finite(x + y),
        _ => TropValue::Infinity,
    }
}

impl fmt::Display for TropValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropValue::Finite(x) => f.write_str(&render_rational(x)),
            TropValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for TropValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" => Ok(TropValue::Infinity),
            other => parse_rational(other).map(TropValue::Finite),
        }
    }
}

/// Element of the supertropical semiring: a tangible value, its ghost copy,
/// or the additive identity `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SuperValue {
    Tangible(Rational),
    Ghost(Rational),
    Infinity,
}

impl SuperValue {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            SuperValue::Tangible(x) | SuperValue::Ghost(x) => Some(x),
            SuperValue::Infinity => None,
        }
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self, SuperValue::Ghost(_))
    }

    /// Membership in the ghost ideal, which contains the additive identity.
    pub fn in_ghost_ideal(&self) -> bool {
        !matches!(self, SuperValue::Tangible(_))
    }

    /// Forgets the layer.
    pub fn project(&self) -> TropValue {
        match self.value() {
            Some(x) => TropValue::Finite(x.clone()),
            None => TropValue::Infinity,
        }
    }
}

/// Supertropical sum: the smaller value wins with its layer, ties become ghosts.
pub fn super_add(a: &SuperValue, b: &SuperValue) -> SuperValue {
    match (a.value(), b.value()) {
        (None, _) => b.clone(),
        (_, None) => a.clone(),
        (Some(x), Some(y)) => match x.cmp(y) {
            Ordering::Less => a.clone(),
            Ordering::Greater => b.clone(),
            Ordering::Equal => SuperValue::Ghost(x.clone()),
        },
    }
}

/// Supertropical product: values add, ghosts absorb tangibles, `∞` absorbs all.
pub fn super_mul(a: &SuperValue, b: &SuperValue) -> SuperValue {
    match (a, b) {
        (SuperValue::Infinity, _) | (_, SuperValue::Infinity) => SuperValue::Infinity,
        (SuperValue::Tangible(x), SuperValue::Tangible(y)) => SuperValue::Tangible(x + y),
        (SuperValue::Tangible(x) | SuperValue::Ghost(x), SuperValue::Tangible(y) | SuperValue::Ghost(y)) => {
            SuperValue::Ghost(x + y)
        }
    }
}

impl fmt::Display for SuperValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuperValue::Tangible(x) => f.write_str(&render_rational(x)),
            SuperValue::Ghost(x) => write!(f, "g:{}", render_rational(x)),
            SuperValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for SuperValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            Ok(SuperValue::Infinity)
        } else if let Some(rest) = s.strip_prefix("g:") {
            parse_rational(rest).map(SuperValue::Ghost)
        } else {
            parse_rational(s).map(SuperValue::Tangible)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(n: i64, d: i64) -> TropValue {
        TropValue::Finite(ratio(n, d))
    }

    #[test]
    fn trop_add_examples() {
        assert_eq!(trop_add(&fin(3, 1), &fin(5, 1)), fin(3, 1));
        assert_eq!(trop_add(&TropValue::Infinity, &fin(7, 1)), fin(7, 1));
        assert_eq!(trop_add(&fin(-1, 2), &fin(-1, 2)), fin(-1, 2));
    }

    #[test]
    fn trop_mul_examples() {
        assert_eq!(trop_mul(&fin(3, 1), &fin(5, 1)), fin(8, 1));
        assert_eq!(trop_mul(&TropValue::one(), &fin(-7, 3)), fin(-7, 3));
        assert_eq!(trop_mul(&TropValue::Infinity, &fin(5, 1)), TropValue::Infinity);
    }

    #[test]
    fn super_add_examples() {
        use SuperValue::*;
        assert_eq!(super_add(&Tangible(rat(2)), &Tangible(rat(2))), Ghost(rat(2)));
        assert_eq!(super_add(&Tangible(rat(1)), &Tangible(rat(3))), Tangible(rat(1)));
        assert_eq!(super_add(&Ghost(rat(1)), &Tangible(rat(3))), Ghost(rat(1)));
        assert_eq!(super_add(&Ghost(rat(1)), &Tangible(rat(1))), Ghost(rat(1)));
        assert_eq!(super_add(&Infinity, &Tangible(rat(4))), Tangible(rat(4)));
    }

    #[test]
    fn super_mul_examples() {
        use SuperValue::*;
        assert_eq!(super_mul(&Tangible(rat(2)), &Tangible(rat(3))), Tangible(rat(5)));
        assert_eq!(super_mul(&Ghost(rat(2)), &Tangible(rat(3))), Ghost(rat(5)));
        assert_eq!(super_mul(&Infinity, &Ghost(rat(1))), Infinity);
    }

    #[test]
    fn text_forms() {
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("7/2").unwrap(), ratio(7, 2));
        assert_eq!(parse_rational("4/-8").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(render_rational(&ratio(14, 4)), "7/2");
        assert_eq!("inf".parse::<TropValue>().unwrap(), TropValue::Infinity);
        assert_eq!("g:-1/3".parse::<SuperValue>().unwrap(), SuperValue::Ghost(ratio(-1, 3)));
        assert_eq!(SuperValue::Ghost(rat(4)).to_string(), "g:4");
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..6).prop_map(|(n, d)| ratio(n, d))
    }

    fn trop_value() -> impl Strategy<Value = TropValue> {
        prop_oneof![
            1 => Just(TropValue::Infinity),
            6 => small_rational().prop_map(TropValue::Finite),
        ]
    }

    fn super_value() -> impl Strategy<Value = SuperValue> {
        prop_oneof![
            1 => Just(SuperValue::Infinity),
            4 => (-4i64..4).prop_map(|n| SuperValue::Tangible(rat(n))),
            4 => (-4i64..4).prop_map(|n| SuperValue::Ghost(rat(n))),
        ]
    }

    proptest! {
        #[test]
        fn tropical_semiring_axioms(a in trop_value(), b in trop_value(), c in trop_value()) {
            prop_assert_eq!(trop_add(&a, &b), trop_add(&b, &a));
            prop_assert_eq!(trop_mul(&a, &b), trop_mul(&b, &a));
            prop_assert_eq!(trop_add(&trop_add(&a, &b), &c), trop_add(&a, &trop_add(&b, &c)));
            prop_assert_eq!(trop_mul(&trop_mul(&a, &b), &c), trop_mul(&a, &trop_mul(&b, &c)));
            prop_assert_eq!(
                trop_mul(&a, &trop_add(&b, &c)),
                trop_add(&trop_mul(&a, &b), &trop_mul(&a, &c))
            );
            prop_assert_eq!(trop_add(&a, &a), a);
        }

        #[test]
        fn forgetting_layers_is_a_morphism(a in super_value(), b in super_value()) {
            prop_assert_eq!(super_add(&a, &b).project(), trop_add(&a.project(), &b.project()));
            prop_assert_eq!(super_mul(&a, &b).project(), trop_mul(&a.project(), &b.project()));
        }

        #[test]
        fn supertropical_operations_commute_and_associate(
            a in super_value(), b in super_value(), c in super_value()
        ) {
            prop_assert_eq!(super_add(&a, &b), super_add(&b, &a));
            prop_assert_eq!(super_mul(&a, &b), super_mul(&b, &a));
            prop_assert_eq!(super_add(&super_add(&a, &b), &c), super_add(&a, &super_add(&b, &c)));
            prop_assert_eq!(super_mul(&super_mul(&a, &b), &c), super_mul(&a, &super_mul(&b, &c)));
        }

        #[test]
        fn rational_text_round_trip(x in small_rational()) {
            prop_assert_eq!(parse_rational(&render_rational(&x)).unwrap(), x);
        }
    }
}
