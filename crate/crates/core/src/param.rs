//! Formal parameters: polynomials and rational functions over the rationals
//! in named symbols, and the affine weight parameters built from them.
//!
//! Module actions on families with generic shifts (the `t^λ C[t, 1/t]`
//! factors and the Laurent gl(n) modules) have coefficients such as `λ + k`.
//! Those symbols are never specialized behind the caller's back, so all zero
//! tests stay exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::scalar::Scalar;

/// A monomial in the formal symbols, `(name, exponent)` pairs sorted by name
/// with positive exponents. Ordered lexicographically with the
/// alphabetically first symbol most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PMono(Vec<(String, u32)>);

impl PMono {
    pub fn one() -> Self {
        PMono(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        PMono(vec![(name.to_string(), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &PMono) -> PMono {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    Ordering::Less => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push(b.clone());
                        j += 1;
                    }
                    Ordering::Equal => {
                        out.push((a.0.clone(), a.1 + b.1));
                        i += 1;
                        j += 1;
                    }
                },
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(b.clone());
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        PMono(out)
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &PMono) -> Option<PMono> {
        let mut out = Vec::new();
        let mut j = 0;
        for (name, e) in &self.0 {
            let mut d = 0;
            if let Some((oname, oe)) = other.0.get(j) {
                match oname.cmp(name) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        d = *oe;
                        j += 1;
                    }
                    Ordering::Greater => {}
                }
            }
            if d > *e {
                return None;
            }
            if *e > d {
                out.push((name.clone(), e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(PMono(out))
    }

    /// Componentwise minimum exponent.
    fn gcd(&self, other: &PMono) -> PMono {
        let mut out = Vec::new();
        for (name, e) in &self.0 {
            if let Some((_, oe)) = other.0.iter().find(|(n, _)| n == name) {
                out.push((name.clone(), (*e).min(*oe)));
            }
        }
        PMono(out)
    }

    fn degree_in(&self, name: &str) -> u32 {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map_or(0, |(_, e)| *e)
    }
}

impl Ord for PMono {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(a), Some(b)) => match a.0.cmp(&b.0) {
                    // `a` carries a symbol that `other` lacks entirely
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if a.1 != b.1 {
                            return a.1.cmp(&b.1);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for PMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients in the formal symbols.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ParamPoly {
    terms: BTreeMap<PMono, Scalar>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = ParamPoly::zero();
        if !c.is_zero() {
            p.terms.insert(PMono::one(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = ParamPoly::zero();
        p.terms.insert(PMono::var(name), Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial has no symbolic part.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&PMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PMono, &Scalar)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: PMono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn leading(&self) -> Option<(&PMono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &ParamPoly) -> Option<ParamPoly> {
        let (dm, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Division with remainder in one symbol (all terms must be univariate in
    /// `name`).
    fn univariate_divmod(&self, d: &ParamPoly, name: &str) -> (ParamPoly, ParamPoly) {
        let (dm, dc) = d.leading().expect("division by zero polynomial");
        let ddeg = dm.degree_in(name);
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let rdeg = rm.degree_in(name);
            if rdeg < ddeg {
                break;
            }
            let qm = if rdeg == ddeg {
                PMono::one()
            } else {
                PMono(vec![(name.to_string(), rdeg - ddeg)])
            };
            let qc = rc / dc;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            quot.add_term(qm, qc);
        }
        (quot, rem)
    }

    fn monic(&self) -> ParamPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    fn univariate_gcd(a: &ParamPoly, b: &ParamPoly, name: &str) -> ParamPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.univariate_divmod(&y, name);
            x = y;
            y = r;
        }
        x.monic()
    }

    fn monomial_content(&self) -> PMono {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return PMono::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    fn div_monomial(&self, m: &PMono) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.div(m).expect("monomial content divides"), v.clone()))
                .collect(),
        }
    }

    /// Substitute rational values for some symbols.
    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut rest = Vec::new();
            for (name, e) in &m.0 {
                match values.get(name) {
                    Some(v) => {
                        for _ in 0..*e {
                            coef *= v;
                        }
                    }
                    None => rest.push((name.clone(), *e)),
                }
            }
            out.add_term(PMono(rest), coef);
        }
        out
    }
}

impl<'a> Add<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a ParamPoly> for &'a ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &'a ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A quotient of formal polynomials. The denominator is monic and never a
/// constant other than one; common factors are cancelled when the
/// computation is univariate and by exact division otherwise.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    fn normalized(num: ParamPoly, den: ParamPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: ParamPoly::constant(Scalar::one()),
            };
        }
        let (mut num, mut den) = (num, den);
        let mc = num.monomial_content().gcd(&den.monomial_content());
        if !mc.is_one() {
            num = num.div_monomial(&mc);
            den = den.div_monomial(&mc);
        }
        if den.as_constant().is_none() {
            if let Some(q) = num.exact_div(&den) {
                num = q;
                den = ParamPoly::constant(Scalar::one());
            } else {
                let mut syms = num.symbols();
                syms.extend(den.symbols());
                syms.sort();
                syms.dedup();
                if syms.len() == 1 {
                    let g = ParamPoly::univariate_gcd(&num, &den, &syms[0]);
                    if g.as_constant().is_none() {
                        num = num.exact_div(&g).expect("gcd divides numerator");
                        den = den.exact_div(&g).expect("gcd divides denominator");
                    }
                }
            }
        }
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn numer(&self) -> &ParamPoly {
        &self.num
    }

    pub fn denom(&self) -> &ParamPoly {
        &self.den
    }
}

/// A coefficient of a module action: a rational number, or a rational
/// function of the formal symbols when the module carries generic shifts.
#[derive(Clone, Debug)]
pub enum Coeff {
    Num(Scalar),
    Frac(Box<RatFunc>),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Num(Scalar::zero())
    }

    pub fn one() -> Self {
        Coeff::Num(Scalar::one())
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::Num(Scalar::from_int(n))
    }

    pub fn var(name: &str) -> Self {
        Coeff::from_poly(ParamPoly::var(name))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Coeff::from_frac(p, ParamPoly::constant(Scalar::one()))
    }

    fn from_frac(num: ParamPoly, den: ParamPoly) -> Self {
        let r = RatFunc::normalized(num, den);
        match (r.num.as_constant(), r.den.as_constant()) {
            (Some(a), Some(b)) => Coeff::Num(a / b),
            _ => Coeff::Frac(Box::new(r)),
        }
    }

    fn parts(&self) -> (ParamPoly, ParamPoly) {
        match self {
            Coeff::Num(s) => (
                ParamPoly::constant(s.clone()),
                ParamPoly::constant(Scalar::one()),
            ),
            Coeff::Frac(r) => (r.num.clone(), r.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Num(s) => s.is_zero(),
            Coeff::Frac(r) => r.num.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Num(s) if s.is_one())
    }

    pub fn as_scalar(&self) -> Option<&Scalar> {
        match self {
            Coeff::Num(s) => Some(s),
            Coeff::Frac(_) => None,
        }
    }

    /// Polynomial view, if the denominator is one.
    pub fn as_poly(&self) -> Option<ParamPoly> {
        match self {
            Coeff::Num(s) => Some(ParamPoly::constant(s.clone())),
            Coeff::Frac(r) => r.den.as_constant().map(|_| r.num.clone()),
        }
    }

    pub fn recip(&self) -> Coeff {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Coeff::Num(s) => Coeff::Num(s.recip()),
            Coeff::Frac(r) => Coeff::from_frac(r.den.clone(), r.num.clone()),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Coeff {
        match self {
            Coeff::Num(s) => Coeff::Num(s * c),
            Coeff::Frac(r) => {
                if c.is_zero() {
                    Coeff::zero()
                } else {
                    Coeff::Frac(Box::new(RatFunc {
                        num: r.num.scale(c),
                        den: r.den.clone(),
                    }))
                }
            }
        }
    }

    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> Coeff {
        match self {
            Coeff::Num(_) => self.clone(),
            Coeff::Frac(r) => Coeff::from_frac(r.num.substitute(values), r.den.substitute(values)),
        }
    }
}

impl From<Scalar> for Coeff {
    fn from(s: Scalar) -> Self {
        Coeff::Num(s)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Coeff::Num(a), Coeff::Num(b)) => a == b,
            _ => {
                let (a, b) = self.parts();
                let (c, d) = other.parts();
                &a * &d == &b * &c
            }
        }
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Num(a), Coeff::Num(b)) => Coeff::Num(a + b),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                if b == d {
                    Coeff::from_frac(&a + &c, b)
                } else {
                    Coeff::from_frac(&(&a * &d) + &(&c * &b), &b * &d)
                }
            }
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &'a Coeff) -> Coeff {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &'a Coeff) -> Coeff {
        match (self, rhs) {
            (Coeff::Num(a), Coeff::Num(b)) => Coeff::Num(a * b),
            (Coeff::Num(a), other) | (other, Coeff::Num(a)) => other.scale(a),
            _ => {
                let (a, b) = self.parts();
                let (c, d) = rhs.parts();
                Coeff::from_frac(&a * &c, &b * &d)
            }
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, rhs: &'a Coeff) -> Coeff {
        self * &rhs.recip()
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        &self + &rhs
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        &self - &rhs
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -&self
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Num(s) => write!(f, "{}", s.to_pq()),
            Coeff::Frac(r) => {
                if r.den.as_constant().is_some() {
                    write!(f, "{}", r.num)
                } else {
                    write!(f, "({})/({})", r.num, r.den)
                }
            }
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One coordinate of a weight: a rational number plus a rational combination
/// of formal symbols, e.g. `l1 + 3/2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightParam {
    constant: Scalar,
    symbolic: BTreeMap<String, Scalar>,
}

impl WeightParam {
    pub fn zero() -> Self {
        WeightParam::default()
    }

    pub fn from_int(n: i64) -> Self {
        WeightParam::rational(Scalar::from_int(n))
    }

    pub fn rational(c: Scalar) -> Self {
        WeightParam {
            constant: c,
            symbolic: BTreeMap::new(),
        }
    }

    pub fn symbol(name: &str) -> Self {
        let mut symbolic = BTreeMap::new();
        symbolic.insert(name.to_string(), Scalar::one());
        WeightParam {
            constant: Scalar::zero(),
            symbolic,
        }
    }

    pub fn constant(&self) -> &Scalar {
        &self.constant
    }

    pub fn is_rational(&self) -> bool {
        self.symbolic.is_empty()
    }

    /// True when the value is a rational integer. A nonzero formal part is
    /// generic and hence never integral.
    pub fn is_integer(&self) -> bool {
        self.symbolic.is_empty() && self.constant.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.symbolic.is_empty() && self.constant.is_zero()
    }

    /// Integer difference `self - other`, if it is one.
    pub fn integer_offset(&self, other: &WeightParam) -> Option<i64> {
        let d = self - other;
        if d.is_integer() {
            d.constant.to_i64()
        } else {
            None
        }
    }

    pub fn shift(&self, k: i64) -> WeightParam {
        let mut out = self.clone();
        out.constant += Scalar::from_int(k);
        out
    }

    pub fn to_coeff(&self) -> Coeff {
        let mut p = ParamPoly::constant(self.constant.clone());
        for (name, c) in &self.symbolic {
            p = &p + &ParamPoly::var(name).scale(c);
        }
        Coeff::from_poly(p)
    }

    pub fn substitute(&self, values: &BTreeMap<String, Scalar>) -> WeightParam {
        let mut out = WeightParam::rational(self.constant.clone());
        for (name, c) in &self.symbolic {
            match values.get(name) {
                Some(v) => out.constant += c * v,
                None => {
                    out.symbolic.insert(name.clone(), c.clone());
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a WeightParam> for &'a WeightParam {
    type Output = WeightParam;
    fn add(self, rhs: &'a WeightParam) -> WeightParam {
        let mut out = self.clone();
        out.constant += &rhs.constant;
        for (name, c) in &rhs.symbolic {
            let e = out
                .symbolic
                .entry(name.clone())
                .or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                out.symbolic.remove(name);
            }
        }
        out
    }
}

impl Neg for &WeightParam {
    type Output = WeightParam;
    fn neg(self) -> WeightParam {
        WeightParam {
            constant: -&self.constant,
            symbolic: self.symbolic.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl<'a> Sub<&'a WeightParam> for &'a WeightParam {
    type Output = WeightParam;
    fn sub(self, rhs: &'a WeightParam) -> WeightParam {
        self + &(-rhs)
    }
}

impl fmt::Display for WeightParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (name, c) in &self.symbolic {
            if !first {
                write!(f, "{}", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{a}*{name}")?;
            }
            first = false;
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            let sign = if self.constant.is_negative() {
                "-"
            } else {
                "+"
            };
            write!(f, "{sign}{}", self.constant.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for WeightParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for WeightParam {
    type Err = ParseError;

    /// Accepts sums of terms `q`, `name` and `q*name`, e.g. `l1+1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::WeightParam(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut out = WeightParam::zero();
        let mut term = String::new();
        let mut pieces = Vec::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(std::mem::take(&mut term));
            }
            term.push(ch);
        }
        pieces.push(term);
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef, name) = match body.split_once('*') {
                Some((c, n)) => (c.parse::<Scalar>().map_err(|_| bad())?, Some(n)),
                None => match body.parse::<Scalar>() {
                    Ok(c) => (c, None),
                    Err(_) => (Scalar::one(), Some(body)),
                },
            };
            let coef = if neg { -coef } else { coef };
            let term = match name {
                None => WeightParam::rational(coef),
                Some(n) => {
                    let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
                    if !valid {
                        return Err(bad());
                    }
                    let mut w = WeightParam::zero();
                    w.symbolic.insert(n.to_string(), coef);
                    w
                }
            };
            out = &out + &term;
        }
        Ok(out)
    }
}

impl Serialize for WeightParam {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for WeightParam {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn generic_shift_is_never_integral() {
        let l = WeightParam::symbol("l1");
        assert!(!l.is_integer());
        assert!(!l.shift(3).is_integer());
        assert_eq!(l.shift(3).integer_offset(&l), Some(3));
        assert_eq!(l.integer_offset(&WeightParam::symbol("l2")), None);
        assert_ne!(l, l.shift(1));
    }

    #[test]
    fn weight_param_parse_and_print() {
        let w: WeightParam = "l1+3/2".parse().unwrap();
        assert_eq!(w.to_string(), "l1+3/2");
        let w: WeightParam = "-2*g1+1".parse().unwrap();
        assert_eq!(
            w,
            &WeightParam::from_int(1) - &(&WeightParam::symbol("g1") + &WeightParam::symbol("g1"))
        );
        assert!("1+".parse::<WeightParam>().is_err());
        assert!("3x".parse::<WeightParam>().is_err());
    }

    #[test]
    fn rational_functions_cancel() {
        let x = Coeff::var("x");
        let one = Coeff::one();
        let xp1 = &x + &one;
        let sq = &xp1 * &xp1;
        let r = &sq / &xp1;
        assert_eq!(r, xp1);
        assert!(r.as_poly().is_some());
        let inv = &one / &xp1;
        assert!(inv.as_poly().is_none());
        let back = &inv * &xp1;
        assert!(back.is_one());
        assert!((&back - &one).is_zero());
    }

    #[test]
    fn multivariate_exact_division() {
        let x = ParamPoly::var("x");
        let y = ParamPoly::var("y");
        let p = &(&x * &y) + &x.scale(&q(1, 2));
        let yh = &y + &ParamPoly::constant(q(1, 2));
        assert_eq!(p.exact_div(&x).unwrap(), yh);
        assert_eq!(p.exact_div(&yh).unwrap(), x);
        assert!(p.exact_div(&(&x + &y)).is_none());
    }

    #[test]
    fn substitution() {
        let w: WeightParam = "l1+1".parse().unwrap();
        let mut vals = BTreeMap::new();
        vals.insert("l1".to_string(), q(1, 2));
        assert_eq!(w.substitute(&vals), WeightParam::rational(q(3, 2)));
        let c = w.to_coeff();
        assert_eq!(c.substitute(&vals), Coeff::Num(q(3, 2)));
    }
}
