//! Exact scalars: rationals and elements of quadratic extensions `Q(θ)` with
//! `θ² = pθ + q`.
//!
//! Every field carries an optional real embedding. When `p² + 4q ≥ 0` the
//! generator `θ` denotes the larger real root `(p + √(p² + 4q)) / 2` and
//! scalars can be compared with zero exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("scalars belong to different fields ({0} vs {1})")]
    MixedFields(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field {0} has no real embedding")]
    NoRealEmbedding(String),
    #[error("θ² = {p}θ + {q} is reducible over Q; Q(θ) is not a field")]
    ReducibleExtension { p: String, q: String },
    #[error("invalid scalar `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("unsupported field declaration `{0}`")]
    UnsupportedField(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Quadratic,
}

/// Description of a scalar field. `p` and `q` are zero for the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub p: BigRational,
    pub q: BigRational,
    pub real_embedding: bool,
}

impl FieldSpec {
    fn discriminant(&self) -> BigRational {
        &self.p * &self.p + BigRational::from_integer(4.into()) * &self.q
    }
}

/// Shared handle to a [`FieldSpec`]. Equality compares the underlying spec.
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({self})")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Quadratic => write!(f, "quad {} {}", self.0.p, self.0.q),
        }
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field(Arc::new(FieldSpec {
            kind: FieldKind::Rationals,
            p: BigRational::zero(),
            q: BigRational::zero(),
            real_embedding: true,
        }))
    }

    /// `Q(θ)` with `θ² = pθ + q`. The polynomial must be irreducible.
    pub fn quadratic(p: BigRational, q: BigRational) -> Result<Self, ScalarError> {
        let spec = FieldSpec {
            kind: FieldKind::Quadratic,
            real_embedding: false,
            p,
            q,
        };
        let disc = spec.discriminant();
        if is_rational_square(&disc) {
            return Err(ScalarError::ReducibleExtension {
                p: spec.p.to_string(),
                q: spec.q.to_string(),
            });
        }
        let real_embedding = !disc.is_negative();
        Ok(Field(Arc::new(FieldSpec {
            real_embedding,
            ..spec
        })))
    }

    pub fn quadratic_int(p: i64, q: i64) -> Result<Self, ScalarError> {
        Self::quadratic(rat(p), rat(q))
    }

    /// `Q(√d)`, i.e. `θ² = d`.
    pub fn sqrt(d: i64) -> Result<Self, ScalarError> {
        Self::quadratic_int(0, d)
    }

    /// `Q(ω)` with `ω² = ω − 1` (a primitive sixth root of unity).
    pub fn eisenstein() -> Self {
        Self::quadratic_int(1, -1).expect("x² - x + 1 is irreducible")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn is_rationals(&self) -> bool {
        self.0.kind == FieldKind::Rationals
    }

    pub fn has_real_embedding(&self) -> bool {
        self.0.real_embedding
    }

    pub fn zero(&self) -> Scalar {
        Scalar::new(BigRational::zero(), BigRational::zero(), self.clone())
    }

    pub fn one(&self) -> Scalar {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::new(rat(n), BigRational::zero(), self.clone())
    }

    pub fn rational(&self, r: BigRational) -> Scalar {
        Scalar::new(r, BigRational::zero(), self.clone())
    }

    pub fn frac(&self, num: i64, den: i64) -> Scalar {
        self.rational(BigRational::new(num.into(), den.into()))
    }

    /// The generator θ. Zero coefficient on θ is enforced for the rationals.
    pub fn theta(&self) -> Result<Scalar, ScalarError> {
        if self.is_rationals() {
            return Err(ScalarError::Parse {
                text: "T".into(),
                reason: "the rational field has no generator T".into(),
            });
        }
        Ok(Scalar::new(BigRational::zero(), BigRational::one(), self.clone()))
    }

    pub fn element(&self, a: BigRational, b: BigRational) -> Result<Scalar, ScalarError> {
        if self.is_rationals() && !b.is_zero() {
            return Err(ScalarError::Parse {
                text: format!("{a}+{b}*T"),
                reason: "the rational field has no generator T".into(),
            });
        }
        Ok(Scalar::new(a, b, self.clone()))
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let (a, b) = parse_pair(text)?;
        self.element(a, b)
    }

    /// Parses `Q` or `quad p q`.
    pub fn parse_decl(text: &str) -> Result<Self, ScalarError> {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["Q"] => Ok(Self::rationals()),
            ["quad", p, q] => {
                let p = parse_rational(p)?;
                let q = parse_rational(q)?;
                Self::quadratic(p, q)
            }
            _ => Err(ScalarError::UnsupportedField(text.trim().to_string())),
        }
    }
}

/// An element `a + bθ` of a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    field: Field,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (x, y) if x == y => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl Scalar {
    fn new(a: BigRational, b: BigRational, field: Field) -> Self {
        Scalar { a, b, field }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn theta_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.a.clone())
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(ScalarError::MixedFields(
                self.field.to_string(),
                other.field.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(Scalar::new(&self.a + &other.a, &self.b + &other.b, self.field.clone()))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(Scalar::new(&self.a - &other.a, &self.b - &other.b, self.field.clone()))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(Scalar::new(&self.a * &other.a, BigRational::zero(), self.field.clone()));
        }
        // (a + bθ)(c + dθ) = ac + (ad + bc)θ + bd(pθ + q)
        let spec = self.field.spec();
        let bd = &self.b * &other.b;
        let a = &self.a * &other.a + &bd * &spec.q;
        let b = &self.a * &other.b + &self.b * &other.a + &bd * &spec.p;
        Ok(Scalar::new(a, b, self.field.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse, via the norm `N(a + bθ) = a² + abp − b²q`.
    pub fn inverse(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Scalar::new(self.a.recip(), BigRational::zero(), self.field.clone()));
        }
        let spec = self.field.spec();
        let norm = &self.a * &self.a + &self.a * &self.b * &spec.p - &self.b * &self.b * &spec.q;
        // conjugate: a + b(p − θ)
        let ca = &self.a + &self.b * &spec.p;
        let cb = -&self.b;
        Ok(Scalar::new(ca / &norm, cb / norm, self.field.clone()))
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut result = self.field.one();
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        let k = rat(k);
        Scalar::new(&self.a * &k, &self.b * &k, self.field.clone())
    }

    /// Exact sign under the designated real embedding.
    pub fn sign(&self) -> Result<Sign, ScalarError> {
        if !self.field.has_real_embedding() {
            return Err(ScalarError::NoRealEmbedding(self.field.to_string()));
        }
        if self.b.is_zero() {
            return Ok(Sign::from_ordering(self.a.cmp(&BigRational::zero())));
        }
        // a + bθ = u + v√D with u = a + bp/2, v = b/2, D = p² + 4q (not a square)
        let spec = self.field.spec();
        let two = rat(2);
        let u = &self.a + &self.b * &spec.p / &two;
        let v = &self.b / &two;
        let d = spec.discriminant();
        let su = u.cmp(&BigRational::zero());
        let sv = v.cmp(&BigRational::zero());
        let sign = match (su, sv) {
            (Ordering::Equal, s) => s,
            (s, Ordering::Equal) => s,
            (s, t) if s == t => s,
            (s, _) => {
                // u and v√D have opposite signs: the larger magnitude wins
                let lhs = &u * &u;
                let rhs = &v * &v * &d;
                match lhs.cmp(&rhs) {
                    Ordering::Greater => s,
                    Ordering::Less => s.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        };
        Ok(Sign::from_ordering(sign))
    }

    pub fn is_positive(&self) -> Result<bool, ScalarError> {
        Ok(self.sign()? == Sign::Positive)
    }

    /// Floating-point approximation under the real embedding, for heuristics only.
    pub fn approx(&self) -> Option<f64> {
        if !self.field.has_real_embedding() {
            return None;
        }
        let spec = self.field.spec();
        let theta = if self.field.is_rationals() {
            0.0
        } else {
            let p = ratio_to_f64(&spec.p);
            let d = ratio_to_f64(&spec.discriminant());
            (p + d.sqrt()) / 2.0
        };
        Some(ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * theta)
    }

    /// Re-embeds this scalar into another field, provided it is rational.
    pub fn coerce(&self, field: &Field) -> Result<Scalar, ScalarError> {
        if self.field == *field {
            return Ok(self.clone());
        }
        if !self.b.is_zero() {
            return Err(ScalarError::MixedFields(
                self.field.to_string(),
                field.to_string(),
            ));
        }
        Ok(field.rational(self.a.clone()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b_text = if self.b.is_one() {
            "T".to_string()
        } else if (-&self.b).is_one() {
            "-T".to_string()
        } else {
            format!("{}*T", self.b)
        };
        if self.a.is_zero() {
            write!(f, "{b_text}")
        } else if b_text.starts_with('-') {
            write!(f, "{}{}", self.a, b_text)
        } else {
            write!(f, "{}+{}", self.a, b_text)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands in different fields")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.a, -&self.b, self.field.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Applies one of the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(x: &Scalar, y: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => x.checked_add(y),
        ArithOp::Sub => x.checked_sub(y),
        ArithOp::Mul => x.checked_mul(y),
        ArithOp::Div => x.checked_div(y),
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn is_integer_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn is_rational_square(r: &BigRational) -> bool {
    // reduced fraction: square iff numerator and denominator are squares
    is_integer_square(r.numer()) && is_integer_square(r.denom())
}

pub fn parse_rational(text: &str) -> Result<BigRational, ScalarError> {
    let err = |reason: &str| ScalarError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(err("empty number"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num = BigInt::from_str(num.trim()).map_err(|_| err("expected an integer numerator"))?;
    let den = match den {
        Some(d) => BigInt::from_str(d.trim()).map_err(|_| err("expected an integer denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

/// Parses `a`, `a/b`, `a+b*T`, `a/b+c/d*T`, `T`, `-T`, `c*T-a`, ... into `(a, b)`.
pub fn parse_pair(text: &str) -> Result<(BigRational, BigRational), ScalarError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |reason: &str| ScalarError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    if compact.is_empty() {
        return Err(err("empty scalar"));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);

    let mut a = BigRational::zero();
    let mut b = BigRational::zero();
    for term in terms {
        let (negative, body) = match term.as_bytes().first() {
            Some(b'+') => (false, &term[1..]),
            Some(b'-') => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(err("dangling sign"));
        }
        let (value, is_theta) = if body == "T" {
            (BigRational::one(), true)
        } else if let Some(coef) = body.strip_suffix("*T") {
            (parse_rational(coef).map_err(|_| err("bad coefficient of T"))?, true)
        } else if body.contains('T') {
            return Err(err("T must appear as `T` or `c*T`"));
        } else {
            (parse_rational(body)?, false)
        };
        let value = if negative { -value } else { value };
        if is_theta {
            b += value;
        } else {
            a += value;
        }
    }
    Ok((a, b))
}
