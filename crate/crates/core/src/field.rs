//! Exact coefficient fields: the rationals, prime fields and rational
//! function fields over either of them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = 1 << 31;

/// Deepest allowed nesting of rational function fields.
pub const MAX_FRACTION_DEPTH: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("rational function fields nest at most {MAX_FRACTION_DEPTH} deep")]
    TooDeep,
    #[error("invalid parameter name {0:?}")]
    BadParameter(String),
    #[error("{0} is not invertible in this field")]
    NotInvertible(String),
}

/// Descriptor of a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
    /// `base(param)`, the field of rational functions in one parameter.
    Fractions { base: Box<Field>, param: String },
}

/// An element of a [`Field`]. Every variant is kept in canonical form so
/// that structural equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldValue {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
    Fraction(Box<RatFun>),
}

/// Reduced quotient of univariate polynomials with a monic denominator.
/// Coefficient vectors are dense, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    base: Field,
    num: Vec<FieldValue>,
    den: Vec<FieldValue>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= MAX_PRIME || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn fractions(base: Field, param: &str) -> Result<Field, FieldError> {
        let ok = param.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && param.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(FieldError::BadParameter(param.to_string()));
        }
        if base.depth() + 1 > MAX_FRACTION_DEPTH {
            return Err(FieldError::TooDeep);
        }
        if base.parameters().contains(&param) {
            return Err(FieldError::BadParameter(param.to_string()));
        }
        Ok(Field::Fractions { base: Box::new(base), param: param.to_string() })
    }

    pub fn depth(&self) -> usize {
        match self {
            Field::Fractions { base, .. } => 1 + base.depth(),
            _ => 0,
        }
    }

    /// Parameter names, innermost first.
    pub fn parameters(&self) -> Vec<&str> {
        match self {
            Field::Fractions { base, param } => {
                let mut v = base.parameters();
                v.push(param);
                v
            }
            _ => Vec::new(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
            Field::Fractions { base, .. } => base.characteristic(),
        }
    }

    pub fn prime_subfield(&self) -> Field {
        match self {
            Field::Fractions { base, .. } => base.prime_subfield(),
            f => f.clone(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::zero()),
            Field::Prime(p) => FieldValue::Residue { value: 0, modulus: *p },
            Field::Fractions { base, .. } => FieldValue::Fraction(Box::new(RatFun {
                base: (**base).clone(),
                num: Vec::new(),
                den: vec![base.one()],
            })),
        }
    }

    pub fn one(&self) -> FieldValue {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldValue {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                FieldValue::Residue { value: r.to_u32().unwrap(), modulus: *p }
            }
            Field::Fractions { base, .. } => RatFun::constant(base, base.from_bigint(n)),
        }
    }

    /// Image of the rational number `q`; fails when the denominator vanishes
    /// in this field.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldValue, FieldError> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        n.checked_div(&d).ok_or_else(|| FieldError::NotInvertible(q.denom().to_string()))
    }

    /// The parameter `param` of a rational function field, as an element.
    pub fn parameter_value(&self, name: &str) -> Option<FieldValue> {
        match self {
            Field::Fractions { base, param } => {
                if param == name {
                    Some(FieldValue::Fraction(Box::new(RatFun {
                        base: (**base).clone(),
                        num: vec![base.zero(), base.one()],
                        den: vec![base.one()],
                    })))
                } else {
                    base.parameter_value(name).map(|v| RatFun::constant(base, v))
                }
            }
            _ => None,
        }
    }

    /// Lift an element of a subfield (the base of a tower) into this field.
    pub fn lift(&self, v: &FieldValue) -> FieldValue {
        if self.contains(v) {
            return v.clone();
        }
        match self {
            Field::Fractions { base, .. } => RatFun::constant(base, base.lift(v)),
            _ => panic!("value {v:?} does not belong to a subfield of {self}"),
        }
    }

    pub fn contains(&self, v: &FieldValue) -> bool {
        match (self, v) {
            (Field::Rationals, FieldValue::Rational(_)) => true,
            (Field::Prime(p), FieldValue::Residue { modulus, .. }) => p == modulus,
            (Field::Fractions { base, .. }, FieldValue::Fraction(r)) => **base == r.base,
            _ => false,
        }
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<FieldValue>> {
        match self {
            Field::Prime(p) => {
                Some((0..*p).map(|value| FieldValue::Residue { value, modulus: *p }).collect())
            }
            _ => None,
        }
    }

    /// All `n`-th roots of `v` that lie in this field. `None` when the field
    /// offers no root-finding procedure.
    pub fn nth_roots(&self, v: &FieldValue, n: u32) -> Option<Vec<FieldValue>> {
        assert!(n >= 1);
        match (self, v) {
            (Field::Rationals, FieldValue::Rational(q)) => Some(rational_nth_roots(q, n)),
            (Field::Prime(_), _) => Some(
                self.elements()
                    .unwrap()
                    .into_iter()
                    .filter(|x| x.pow(n as u64) == *v)
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn format_value(&self, v: &FieldValue) -> String {
        let r = self.render(v);
        if r.negative {
            format!("-{}", r.text)
        } else {
            r.text
        }
    }

    /// Split a value into sign and magnitude text for the term printer.
    pub(crate) fn render(&self, v: &FieldValue) -> Rendered {
        match (self, v) {
            (Field::Rationals, FieldValue::Rational(q)) => {
                let a = q.abs();
                Rendered { negative: q.is_negative(), unit: a.is_one(), text: a.to_string() }
            }
            (Field::Prime(_), FieldValue::Residue { value, .. }) => {
                Rendered { negative: false, unit: *value == 1, text: value.to_string() }
            }
            (Field::Fractions { base, param }, FieldValue::Fraction(r)) => {
                let den_one = r.den.len() == 1;
                if den_one && r.num.len() <= 1 {
                    let c = r.num.first().cloned().unwrap_or_else(|| base.zero());
                    return base.render(&c);
                }
                let num = format_dense(base, param, &r.num);
                if den_one {
                    let single = r.num.iter().filter(|c| !c.is_zero()).count() == 1;
                    if single {
                        let lead = base.render(r.num.last().unwrap());
                        let text = format_dense(base, param, &neg_if(&r.num, lead.negative));
                        return Rendered { negative: lead.negative, unit: false, text };
                    }
                    return Rendered { negative: false, unit: false, text: format!("({num})") };
                }
                let den = format_dense(base, param, &r.den);
                Rendered { negative: false, unit: false, text: format!("({num})/({den})") }
            }
            _ => panic!("value {v:?} does not belong to {self}"),
        }
    }
}

fn neg_if(c: &[FieldValue], flip: bool) -> Vec<FieldValue> {
    if flip {
        c.iter().map(|x| x.neg()).collect()
    } else {
        c.to_vec()
    }
}

fn format_dense(base: &Field, param: &str, coeffs: &[FieldValue]) -> String {
    let terms = coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        let mono = match i {
            0 => String::new(),
            1 => param.to_string(),
            _ => format!("{param}^{i}"),
        };
        (base.render(c), mono)
    });
    write_sum(terms)
}

pub(crate) struct Rendered {
    pub negative: bool,
    pub unit: bool,
    pub text: String,
}

/// Join signed terms as `a - b + c`. Each monomial text is empty for the
/// constant term.
pub(crate) fn write_sum(terms: impl Iterator<Item = (Rendered, String)>) -> String {
    let mut out = String::new();
    for (i, (r, mono)) in terms.enumerate() {
        match (i, r.negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mono.is_empty() {
            out.push_str(&r.text);
        } else if r.unit {
            out.push_str(&mono);
        } else {
            out.push_str(&r.text);
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn rational_nth_roots(q: &BigRational, n: u32) -> Vec<FieldValue> {
    if q.is_zero() {
        return vec![FieldValue::Rational(q.clone())];
    }
    let even = n.is_multiple_of(2);
    if even && q.is_negative() {
        return Vec::new();
    }
    let root = |x: &BigInt| -> Option<BigInt> {
        let r = x.abs().nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == x.abs()).then_some(r)
    };
    let (Some(a), Some(b)) = (root(q.numer()), root(q.denom())) else {
        return Vec::new();
    };
    let mut r = BigRational::new(a, b);
    if q.is_negative() {
        r = -r;
    }
    if even {
        vec![FieldValue::Rational(r.clone()), FieldValue::Rational(-r)]
    } else {
        vec![FieldValue::Rational(r)]
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
            Field::Fractions { base, param } => write!(f, "{base}({param})"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = FieldError;

    /// Accepts `Q`, `Fp:<p>` and either followed by `(name)` suffixes.
    fn from_str(s: &str) -> Result<Field, FieldError> {
        let s = s.trim();
        if let Some(stripped) = s.strip_suffix(')') {
            if let Some(open) = stripped.rfind('(') {
                let base: Field = stripped[..open].parse()?;
                return Field::fractions(base, stripped[open + 1..].trim());
            }
        }
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rationals);
        }
        let digits = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("F")).unwrap_or(s);
        match digits.parse::<u64>() {
            Ok(p) => Field::prime(p),
            Err(_) => Err(FieldError::BadParameter(s.to_string())),
        }
    }
}

fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    Some(t.rem_euclid(p as i64) as u32)
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_zero(),
            FieldValue::Residue { value, .. } => *value == 0,
            FieldValue::Fraction(r) => r.num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldValue::Rational(q) => q.is_one(),
            FieldValue::Residue { value, .. } => *value == 1,
            FieldValue::Fraction(r) => r.den.len() == 1 && r.num.len() == 1 && r.num[0].is_one(),
        }
    }

    pub fn zero_like(&self) -> FieldValue {
        match self {
            FieldValue::Rational(_) => FieldValue::Rational(BigRational::zero()),
            FieldValue::Residue { modulus, .. } => FieldValue::Residue { value: 0, modulus: *modulus },
            FieldValue::Fraction(r) => {
                FieldValue::Fraction(Box::new(RatFun { base: r.base.clone(), num: vec![], den: vec![r.base.one()] }))
            }
        }
    }

    pub fn one_like(&self) -> FieldValue {
        match self {
            FieldValue::Rational(_) => FieldValue::Rational(BigRational::one()),
            FieldValue::Residue { modulus, .. } => FieldValue::Residue { value: 1 % modulus, modulus: *modulus },
            FieldValue::Fraction(r) => RatFun::constant(&r.base, r.base.one()),
        }
    }

    pub fn neg(&self) -> FieldValue {
        match self {
            FieldValue::Rational(q) => FieldValue::Rational(-q),
            FieldValue::Residue { value, modulus } => {
                FieldValue::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
            FieldValue::Fraction(r) => FieldValue::Fraction(Box::new(RatFun {
                base: r.base.clone(),
                num: r.num.iter().map(|c| c.neg()).collect(),
                den: r.den.clone(),
            })),
        }
    }

    pub fn add(&self, o: &FieldValue) -> FieldValue {
        match (self, o) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a + b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2);
                let s = (*a as u64 + *b as u64) % *modulus as u64;
                FieldValue::Residue { value: s as u32, modulus: *modulus }
            }
            (FieldValue::Fraction(a), FieldValue::Fraction(b)) => a.add(b),
            _ => panic!("mixed field values {self:?} and {o:?}"),
        }
    }

    pub fn sub(&self, o: &FieldValue) -> FieldValue {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FieldValue) -> FieldValue {
        match (self, o) {
            (FieldValue::Rational(a), FieldValue::Rational(b)) => FieldValue::Rational(a * b),
            (FieldValue::Residue { value: a, modulus }, FieldValue::Residue { value: b, modulus: m2 }) => {
                debug_assert_eq!(modulus, m2);
                let s = (*a as u64 * *b as u64) % *modulus as u64;
                FieldValue::Residue { value: s as u32, modulus: *modulus }
            }
            (FieldValue::Fraction(a), FieldValue::Fraction(b)) => a.mul(b),
            _ => panic!("mixed field values {self:?} and {o:?}"),
        }
    }

    pub fn inv(&self) -> Option<FieldValue> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldValue::Rational(q) => FieldValue::Rational(q.recip()),
            FieldValue::Residue { value, modulus } => {
                FieldValue::Residue { value: inv_mod(*value, *modulus)?, modulus: *modulus }
            }
            FieldValue::Fraction(r) => RatFun::reduced(&r.base, r.den.clone(), r.num.clone()),
        })
    }

    pub fn checked_div(&self, o: &FieldValue) -> Option<FieldValue> {
        o.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> FieldValue {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldValue::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u32> {
        match self {
            FieldValue::Residue { value, .. } => Some(*value),
            _ => None,
        }
    }

    pub fn as_fraction(&self) -> Option<&RatFun> {
        match self {
            FieldValue::Fraction(r) => Some(r),
            _ => None,
        }
    }
}

fn trim(v: &mut Vec<FieldValue>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_add(a: &[FieldValue], b: &[FieldValue]) -> Vec<FieldValue> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

fn dense_mul(base: &Field, a: &[FieldValue], b: &[FieldValue]) -> Vec<FieldValue> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![base.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of dense polynomials; `b` must be nonzero.
fn dense_divrem(base: &Field, a: &[FieldValue], b: &[FieldValue]) -> (Vec<FieldValue>, Vec<FieldValue>) {
    let mut r = a.to_vec();
    let lead_inv = b.last().expect("division by zero polynomial").inv().unwrap();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![base.zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul(&lead_inv);
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(y));
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn dense_gcd(base: &Field, a: &[FieldValue], b: &[FieldValue]) -> Vec<FieldValue> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let (_, r) = dense_divrem(base, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(l) = a.last() {
        let li = l.inv().unwrap();
        a = a.iter().map(|c| c.mul(&li)).collect();
    }
    a
}

impl RatFun {
    fn constant(base: &Field, c: FieldValue) -> FieldValue {
        let mut num = vec![c];
        trim(&mut num);
        FieldValue::Fraction(Box::new(RatFun { base: base.clone(), num, den: vec![base.one()] }))
    }

    fn reduced(base: &Field, num: Vec<FieldValue>, den: Vec<FieldValue>) -> FieldValue {
        assert!(!den.is_empty(), "zero denominator");
        if num.is_empty() {
            return FieldValue::Fraction(Box::new(RatFun { base: base.clone(), num, den: vec![base.one()] }));
        }
        let g = dense_gcd(base, &num, &den);
        let (mut num, _) = dense_divrem(base, &num, &g);
        let (mut den, _) = dense_divrem(base, &den, &g);
        let li = den.last().unwrap().inv().unwrap();
        if !li.is_one() {
            num = num.iter().map(|c| c.mul(&li)).collect();
            den = den.iter().map(|c| c.mul(&li)).collect();
        }
        FieldValue::Fraction(Box::new(RatFun { base: base.clone(), num, den }))
    }

    fn add(&self, o: &RatFun) -> FieldValue {
        if self.den == o.den {
            return RatFun::reduced(&self.base, dense_add(&self.num, &o.num), self.den.clone());
        }
        let n = dense_add(&dense_mul(&self.base, &self.num, &o.den), &dense_mul(&self.base, &o.num, &self.den));
        RatFun::reduced(&self.base, n, dense_mul(&self.base, &self.den, &o.den))
    }

    fn mul(&self, o: &RatFun) -> FieldValue {
        RatFun::reduced(
            &self.base,
            dense_mul(&self.base, &self.num, &o.num),
            dense_mul(&self.base, &self.den, &o.den),
        )
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// Numerator coefficients, lowest degree first.
    pub fn numerator(&self) -> &[FieldValue] {
        &self.num
    }

    /// Monic denominator coefficients, lowest degree first.
    pub fn denominator(&self) -> &[FieldValue] {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }

    /// Build `num/den` from dense coefficient vectors over `base`.
    pub fn from_parts(base: &Field, mut num: Vec<FieldValue>, mut den: Vec<FieldValue>) -> Option<FieldValue> {
        trim(&mut num);
        trim(&mut den);
        if den.is_empty() {
            return None;
        }
        Some(RatFun::reduced(base, num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldValue {
        FieldValue::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(7).is_ok());
        assert_eq!(Field::prime(9), Err(FieldError::NotPrime(9)));
        assert!(Field::prime(2147483647).is_ok());
        assert!(Field::prime(2147483659).is_err());
        
    }

    #[test]
    fn residue_arithmetic() {
        let f = Field::prime(5).unwrap();
        let a = f.from_i64(3);
        assert_eq!(a.add(&f.from_i64(4)), f.from_i64(2));
        assert_eq!(a.inv().unwrap(), f.from_i64(2));
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert!(f.from_rational(&BigRational::new(1.into(), 5.into())).is_err());
        assert_eq!(f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap(), f.from_i64(3));
    }

    #[test]
    fn rational_roots() {
        let f = Field::Rationals;
        assert_eq!(f.nth_roots(&q(8, 27), 3).unwrap(), vec![q(2, 3)]);
        assert_eq!(f.nth_roots(&q(-8, 27), 3).unwrap(), vec![q(-2, 3)]);
        assert_eq!(f.nth_roots(&q(4, 9), 2).unwrap(), vec![q(2, 3), q(-2, 3)]);
        assert!(f.nth_roots(&q(2, 1), 2).unwrap().is_empty());
        assert!(f.nth_roots(&q(-4, 1), 2).unwrap().is_empty());
    }

    #[test]
    fn fractions_reduce() {
        let k = Field::fractions(Field::prime(3).unwrap(), "T").unwrap();
        let t = k.parameter_value("T").unwrap();
        let one = k.one();
        let a = t.add(&one); // T + 1
        let b = t.mul(&t).sub(&one); // T^2 - 1
        let r = b.checked_div(&a).unwrap();
        assert_eq!(r, t.sub(&one));
        assert_eq!(k.format_value(&r), "(T + 2)");
        let s = one.checked_div(&a).unwrap();
        assert_eq!(k.format_value(&s), "(1)/(T + 1)");
        assert_eq!(s.mul(&a), one);
    }

    #[test]
    fn field_strings_round_trip() {
        for s in ["Q", "Fp:5", "Fp:2(T)", "Q(t)", "Fp:3(a)(b)"] {
            let f: Field = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("Fp:4".parse::<Field>().is_err());
        assert!("Q(a)(b)(c)".parse::<Field>().is_err());
    }
}
