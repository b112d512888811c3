//! Commutative semirings used as value sets for arrays.
//!
//! A [`Semiring`] is a small runtime descriptor; its elements are [`Value`]s.
//! Exact semirings (`boolean`, `nat64`, `int-mod:<m>`, `min-plus`) compare with
//! `==`. `float64` is for demonstration only and compares with a relative
//! tolerance of `1e-9`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Relative tolerance used when comparing `float64` values.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiringError {
    #[error("unknown semiring kind `{0}`")]
    UnknownKind(String),
    #[error("int-mod requires a modulus >= 2")]
    InvalidModulus,
    #[error("modulus given for a semiring kind that does not take one")]
    UnexpectedModulus,
    #[error("nat64 overflow in {0}")]
    Overflow(&'static str),
    #[error("value {value} is not an element of {semiring}")]
    InvalidElement { value: String, semiring: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SemiringKind {
    Boolean,
    Nat64,
    IntMod,
    MinPlus,
    Float64,
}

impl FromStr for SemiringKind {
    type Err = SemiringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "boolean" => Ok(Self::Boolean),
            "nat64" => Ok(Self::Nat64),
            "int-mod" | "int_mod" => Ok(Self::IntMod),
            "min-plus" | "min_plus" => Ok(Self::MinPlus),
            "float64" => Ok(Self::Float64),
            other => Err(SemiringError::UnknownKind(other.to_string())),
        }
    }
}

/// A semiring element. Which variants are valid depends on the semiring:
/// `Int` for boolean (0/1), nat64 and int-mod; `Int` or `Inf` for min-plus;
/// `Real` for float64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Int(u64),
    Inf,
    Real(f64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Inf => f.write_str("inf"),
            Value::Real(x) => write!(f, "{x}"),
        }
    }
}

/// Descriptor of a commutative semiring. Immutable and `Copy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semiring {
    /// `({0,1}, OR, AND)`
    Boolean,
    /// Naturals with checked `+` and `*`; overflow is an error.
    Nat64,
    /// Integers modulo `m`.
    IntMod(u64),
    /// `(N ∪ {∞}, min, +)` with saturating addition.
    MinPlus,
    /// IEEE doubles; inexact.
    Float64,
}

/// Build a semiring descriptor, validating the modulus.
pub fn make_semiring(kind: SemiringKind, modulus: Option<u64>) -> Result<Semiring, SemiringError> {
    match (kind, modulus) {
        (SemiringKind::IntMod, Some(m)) if m >= 2 => Ok(Semiring::IntMod(m)),
        (SemiringKind::IntMod, _) => Err(SemiringError::InvalidModulus),
        (_, Some(_)) => Err(SemiringError::UnexpectedModulus),
        (SemiringKind::Boolean, None) => Ok(Semiring::Boolean),
        (SemiringKind::Nat64, None) => Ok(Semiring::Nat64),
        (SemiringKind::MinPlus, None) => Ok(Semiring::MinPlus),
        (SemiringKind::Float64, None) => Ok(Semiring::Float64),
    }
}

impl Semiring {
    pub fn kind(&self) -> SemiringKind {
        match self {
            Semiring::Boolean => SemiringKind::Boolean,
            Semiring::Nat64 => SemiringKind::Nat64,
            Semiring::IntMod(_) => SemiringKind::IntMod,
            Semiring::MinPlus => SemiringKind::MinPlus,
            Semiring::Float64 => SemiringKind::Float64,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Semiring::Float64)
    }

    pub fn zero(&self) -> Value {
        match self {
            Semiring::MinPlus => Value::Inf,
            Semiring::Float64 => Value::Real(0.0),
            _ => Value::Int(0),
        }
    }

    pub fn one(&self) -> Value {
        match self {
            Semiring::MinPlus => Value::Int(0),
            Semiring::Float64 => Value::Real(1.0),
            _ => Value::Int(1),
        }
    }

    pub fn contains(&self, v: &Value) -> bool {
        match (self, v) {
            (Semiring::Boolean, Value::Int(n)) => *n <= 1,
            (Semiring::Nat64, Value::Int(_)) => true,
            (Semiring::IntMod(m), Value::Int(n)) => n < m,
            (Semiring::MinPlus, Value::Int(_) | Value::Inf) => true,
            (Semiring::Float64, Value::Real(x)) => x.is_finite(),
            _ => false,
        }
    }

    pub fn check(&self, v: &Value) -> Result<(), SemiringError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(SemiringError::InvalidElement {
                value: v.to_string(),
                semiring: self.to_string(),
            })
        }
    }

    pub fn add(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        use Value::*;
        Ok(match (self, a, b) {
            (Semiring::Boolean, Int(x), Int(y)) => Int((x | y) & 1),
            (Semiring::Nat64, Int(x), Int(y)) => {
                Int(x.checked_add(*y).ok_or(SemiringError::Overflow("add"))?)
            }
            (Semiring::IntMod(m), Int(x), Int(y)) => Int(((*x as u128 + *y as u128) % *m as u128) as u64),
            (Semiring::MinPlus, Inf, other) | (Semiring::MinPlus, other, Inf) => *other,
            (Semiring::MinPlus, Int(x), Int(y)) => Int(*x.min(y)),
            (Semiring::Float64, Real(x), Real(y)) => Real(x + y),
            _ => return Err(self.mixed(a, b)),
        })
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        use Value::*;
        Ok(match (self, a, b) {
            (Semiring::Boolean, Int(x), Int(y)) => Int(x & y & 1),
            (Semiring::Nat64, Int(x), Int(y)) => {
                Int(x.checked_mul(*y).ok_or(SemiringError::Overflow("mul"))?)
            }
            (Semiring::IntMod(m), Int(x), Int(y)) => Int(((*x as u128 * *y as u128) % *m as u128) as u64),
            (Semiring::MinPlus, Inf, _) | (Semiring::MinPlus, _, Inf) => Inf,
            (Semiring::MinPlus, Int(x), Int(y)) => x.checked_add(*y).map_or(Inf, Int),
            (Semiring::Float64, Real(x), Real(y)) => Real(x * y),
            _ => return Err(self.mixed(a, b)),
        })
    }

    fn mixed(&self, a: &Value, b: &Value) -> SemiringError {
        let bad = if self.contains(a) { b } else { a };
        SemiringError::InvalidElement {
            value: bad.to_string(),
            semiring: self.to_string(),
        }
    }

    /// Semiring equality: exact, except for `float64` (relative tolerance).
    pub fn same(&self, a: &Value, b: &Value) -> bool {
        match (self, a, b) {
            (Semiring::Float64, Value::Real(x), Value::Real(y)) => {
                let scale = x.abs().max(y.abs()).max(1.0);
                (x - y).abs() <= FLOAT_TOLERANCE * scale
            }
            _ => a == b,
        }
    }

    pub fn is_zero(&self, v: &Value) -> bool {
        self.same(v, &self.zero())
    }

    /// Every element, for the finite semirings (boolean and int-mod).
    pub fn carrier(&self) -> Option<Vec<Value>> {
        match self {
            Semiring::Boolean => Some(vec![Value::Int(0), Value::Int(1)]),
            Semiring::IntMod(m) => Some((0..*m).map(Value::Int).collect()),
            _ => None,
        }
    }

    /// A random element. `bound` caps naturals for nat64 and min-plus.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Value {
        match self {
            Semiring::Boolean => Value::Int(rng.gen_range(0..2)),
            Semiring::Nat64 => Value::Int(rng.gen_range(0..=bound)),
            Semiring::IntMod(m) => Value::Int(rng.gen_range(0..*m)),
            Semiring::MinPlus => {
                if rng.gen_range(0..=bound + 1) == 0 {
                    Value::Inf
                } else {
                    Value::Int(rng.gen_range(0..=bound))
                }
            }
            Semiring::Float64 => Value::Real(rng.gen::<f64>()),
        }
    }

    /// Parse an element from its JSON form: integers, `"inf"` for min-plus,
    /// numbers for float64.
    pub fn value_from_json(&self, v: &serde_json::Value) -> Result<Value, SemiringError> {
        let invalid = || SemiringError::InvalidElement {
            value: v.to_string(),
            semiring: self.to_string(),
        };
        let value = match (self, v) {
            (Semiring::Float64, serde_json::Value::Number(n)) => Value::Real(n.as_f64().ok_or_else(invalid)?),
            (Semiring::MinPlus, serde_json::Value::String(s)) if s == "inf" => Value::Inf,
            (_, serde_json::Value::Number(n)) => Value::Int(n.as_u64().ok_or_else(invalid)?),
            _ => return Err(invalid()),
        };
        self.check(&value)?;
        Ok(value)
    }

    pub fn value_to_json(&self, v: &Value) -> serde_json::Value {
        match v {
            Value::Int(n) => serde_json::Value::from(*n),
            Value::Inf => serde_json::Value::from("inf"),
            Value::Real(x) => serde_json::Value::from(*x),
        }
    }
}

impl fmt::Display for Semiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semiring::Boolean => f.write_str("boolean"),
            Semiring::Nat64 => f.write_str("nat64"),
            Semiring::IntMod(m) => write!(f, "int-mod:{m}"),
            Semiring::MinPlus => f.write_str("min-plus"),
            Semiring::Float64 => f.write_str("float64"),
        }
    }
}

impl FromStr for Semiring {
    type Err = SemiringError;

    /// Parses `boolean`, `nat64`, `int-mod:<m>`, `min-plus`, `float64`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some((kind, modulus)) => {
                let kind: SemiringKind = kind.parse()?;
                let m = modulus.parse::<u64>().map_err(|_| SemiringError::InvalidModulus)?;
                make_semiring(kind, Some(m))
            }
            None => make_semiring(s.parse()?, None),
        }
    }
}

/// The laws checked by [`check_semiring_axioms`], in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemiringLaw {
    AdditiveIdentity,
    MultiplicativeIdentity,
    ZeroAbsorbing,
    AddCommutative,
    MulCommutative,
    AddAssociative,
    MulAssociative,
    Distributive,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AxiomVerdict {
    Ok,
    Counterexample { law: SemiringLaw, elements: Vec<Value> },
}

impl AxiomVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, AxiomVerdict::Ok)
    }
}

/// The operations a law check needs. Implemented by [`Semiring`]; tests use it
/// to feed deliberately broken operation tables to the checker.
pub trait SemiringOps {
    fn zero(&self) -> Value;
    fn one(&self) -> Value;
    fn add(&self, a: &Value, b: &Value) -> Result<Value, SemiringError>;
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemiringError>;
    fn same(&self, a: &Value, b: &Value) -> bool;
}

impl SemiringOps for Semiring {
    fn zero(&self) -> Value {
        Semiring::zero(self)
    }
    fn one(&self) -> Value {
        Semiring::one(self)
    }
    fn add(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        Semiring::add(self, a, b)
    }
    fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
        Semiring::mul(self, a, b)
    }
    fn same(&self, a: &Value, b: &Value) -> bool {
        Semiring::same(self, a, b)
    }
}

/// Check every semiring law over all pairs and triples of the given
/// elements. For boolean and int-mod the full carrier is used instead of
/// `samples`. Overflow while checking is an error, never a verdict.
pub fn check_semiring_axioms(s: &Semiring, samples: &[Value]) -> Result<AxiomVerdict, SemiringError> {
    let elems = s.carrier().unwrap_or_else(|| samples.to_vec());
    for e in &elems {
        s.check(e)?;
    }
    check_laws(s, &elems)
}

/// Law checker over arbitrary operations; see [`check_semiring_axioms`].
pub fn check_laws<S: SemiringOps + ?Sized>(s: &S, elems: &[Value]) -> Result<AxiomVerdict, SemiringError> {
    let zero = s.zero();
    let one = s.one();
    let fail = |law, elements: &[Value]| {
        Ok(AxiomVerdict::Counterexample {
            law,
            elements: elements.to_vec(),
        })
    };

    for a in elems {
        if !s.same(&s.add(&zero, a)?, a) || !s.same(&s.add(a, &zero)?, a) {
            return fail(SemiringLaw::AdditiveIdentity, &[*a]);
        }
    }
    for a in elems {
        if !s.same(&s.mul(&one, a)?, a) || !s.same(&s.mul(a, &one)?, a) {
            return fail(SemiringLaw::MultiplicativeIdentity, &[*a]);
        }
    }
    for a in elems {
        if !s.same(&s.mul(&zero, a)?, &zero) || !s.same(&s.mul(a, &zero)?, &zero) {
            return fail(SemiringLaw::ZeroAbsorbing, &[*a]);
        }
    }
    for a in elems {
        for b in elems {
            if !s.same(&s.add(a, b)?, &s.add(b, a)?) {
                return fail(SemiringLaw::AddCommutative, &[*a, *b]);
            }
            if !s.same(&s.mul(a, b)?, &s.mul(b, a)?) {
                return fail(SemiringLaw::MulCommutative, &[*a, *b]);
            }
        }
    }
    for a in elems {
        for b in elems {
            for c in elems {
                let triple = [*a, *b, *c];
                if !s.same(&s.add(&s.add(a, b)?, c)?, &s.add(a, &s.add(b, c)?)?) {
                    return fail(SemiringLaw::AddAssociative, &triple);
                }
                if !s.same(&s.mul(&s.mul(a, b)?, c)?, &s.mul(a, &s.mul(b, c)?)?) {
                    return fail(SemiringLaw::MulAssociative, &triple);
                }
                let lhs = s.mul(a, &s.add(b, c)?)?;
                let rhs = s.add(&s.mul(a, b)?, &s.mul(a, c)?)?;
                if !s.same(&lhs, &rhs) {
                    return fail(SemiringLaw::Distributive, &triple);
                }
            }
        }
    }
    Ok(AxiomVerdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: u64) -> Value {
        Value::Int(n)
    }

    #[test]
    fn boolean_ops() {
        let s = make_semiring(SemiringKind::Boolean, None).unwrap();
        assert_eq!(s.add(&int(1), &int(1)).unwrap(), int(1));
        assert_eq!(s.mul(&int(1), &int(0)).unwrap(), int(0));
    }

    #[test]
    fn int_mod_ops() {
        let s = make_semiring(SemiringKind::IntMod, Some(5)).unwrap();
        assert_eq!(s.add(&int(3), &int(4)).unwrap(), int(2));
        assert_eq!(s.mul(&int(3), &int(4)).unwrap(), int(2));
    }

    #[test]
    fn min_plus_ops() {
        let s = make_semiring(SemiringKind::MinPlus, None).unwrap();
        assert_eq!(s.add(&int(3), &int(7)).unwrap(), int(3));
        assert_eq!(s.mul(&int(3), &int(7)).unwrap(), int(10));
        assert_eq!(s.mul(&int(3), &Value::Inf).unwrap(), Value::Inf);
        assert_eq!(s.add(&Value::Inf, &int(3)).unwrap(), int(3));
        assert_eq!(s.mul(&int(u64::MAX), &int(1)).unwrap(), Value::Inf);
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(make_semiring(SemiringKind::IntMod, None), Err(SemiringError::InvalidModulus));
        assert_eq!(make_semiring(SemiringKind::IntMod, Some(1)), Err(SemiringError::InvalidModulus));
        assert_eq!(
            make_semiring(SemiringKind::Boolean, Some(3)),
            Err(SemiringError::UnexpectedModulus)
        );
        assert!(matches!("tropical".parse::<Semiring>(), Err(SemiringError::UnknownKind(_))));
    }

    #[test]
    fn names_round_trip() {
        for name in ["boolean", "nat64", "int-mod:7", "min-plus", "float64"] {
            let s: Semiring = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
    }

    #[test]
    fn nat64_overflow_is_an_error() {
        let s = Semiring::Nat64;
        assert_eq!(s.add(&int(u64::MAX), &int(1)), Err(SemiringError::Overflow("add")));
        assert_eq!(s.mul(&int(u64::MAX), &int(2)), Err(SemiringError::Overflow("mul")));
    }

    #[test]
    fn exhaustive_axioms_small_carriers() {
        assert!(check_semiring_axioms(&Semiring::Boolean, &[]).unwrap().is_ok());
        for m in 2..=7 {
            let s = Semiring::IntMod(m);
            assert!(check_semiring_axioms(&s, &[]).unwrap().is_ok(), "int-mod:{m}");
        }
    }

    #[test]
    fn sampled_axioms_infinite_carriers() {
        let nat: Vec<Value> = (0..6).map(int).collect();
        assert!(check_semiring_axioms(&Semiring::Nat64, &nat).unwrap().is_ok());
        let mut tropical = nat.clone();
        tropical.push(Value::Inf);
        assert!(check_semiring_axioms(&Semiring::MinPlus, &tropical).unwrap().is_ok());
        let reals: Vec<Value> = [0.0, 1.0, 0.1, 0.7, 3.25].iter().map(|x| Value::Real(*x)).collect();
        assert!(check_semiring_axioms(&Semiring::Float64, &reals).unwrap().is_ok());
    }

    /// nat64 with `1 + 1` forced to `0`.
    struct Corrupted;

    impl SemiringOps for Corrupted {
        fn zero(&self) -> Value {
            int(0)
        }
        fn one(&self) -> Value {
            int(1)
        }
        fn add(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
            if *a == int(1) && *b == int(1) {
                Ok(int(0))
            } else {
                Semiring::Nat64.add(a, b)
            }
        }
        fn mul(&self, a: &Value, b: &Value) -> Result<Value, SemiringError> {
            Semiring::Nat64.mul(a, b)
        }
        fn same(&self, a: &Value, b: &Value) -> bool {
            a == b
        }
    }

    #[test]
    fn corrupted_table_reports_counterexample() {
        let samples: Vec<Value> = (0..4).map(int).collect();
        let verdict = check_laws(&Corrupted, &samples).unwrap();
        // identities, absorption and commutativity survive; (1+1)+2 != 1+(1+2)
        assert_eq!(
            verdict,
            AxiomVerdict::Counterexample {
                law: SemiringLaw::AddAssociative,
                elements: vec![int(1), int(1), int(2)],
            }
        );
    }

    #[test]
    fn overflow_during_check_is_reported() {
        let samples = [int(u64::MAX), int(2)];
        assert!(check_semiring_axioms(&Semiring::Nat64, &samples).is_err());
    }

    #[test]
    fn float_tolerance() {
        let s = Semiring::Float64;
        assert!(s.same(&Value::Real(1.0), &Value::Real(1.0 + 1e-12)));
        assert!(!s.same(&Value::Real(1.0), &Value::Real(1.0 + 1e-6)));
        assert!(!s.is_exact());
    }

    #[test]
    fn json_values() {
        let s = Semiring::MinPlus;
        assert_eq!(s.value_from_json(&serde_json::json!("inf")).unwrap(), Value::Inf);
        assert_eq!(s.value_from_json(&serde_json::json!(4)).unwrap(), int(4));
        assert!(Semiring::Boolean.value_from_json(&serde_json::json!(2)).is_err());
        assert!(Semiring::IntMod(3).value_from_json(&serde_json::json!(-1)).is_err());
    }
}
