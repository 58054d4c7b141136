//! The cyclotomic field `Q(zeta_L)` for one process-wide level `L`.
//!
//! An element is a coefficient vector in the power basis `1, z, ..., z^(phi-1)`
//! with `z = zeta_L`, reduced modulo the `L`-th cyclotomic polynomial. Trailing
//! zero coefficients are trimmed, so zero is the empty vector and rationals have
//! at most one coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::OnceLock;

use smallvec::SmallVec;

use super::rational::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_LEVEL: u32 = 12;

/// A dense polynomial over the rationals, lowest degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub coeffs: Vec<Rational>,
}

impl Poly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    /// Exact quotient; `None` if the division leaves a remainder.
    fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        if dl == 0 || r.len() < dl {
            return None;
        }
        let lead = d.coeffs[dl - 1].inv().ok()?;
        let mut q = vec![Rational::zero(); r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let c = &r[i + dl - 1] * &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] -= &(&c * dc);
            }
            q[i] = c;
        }
        r.iter().all(Rational::is_zero).then(|| Poly { coeffs: q }.trim())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "x")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Rational], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        match (a.is_one(), mono.is_empty()) {
            (true, true) => f.write_str("1")?,
            (true, false) => f.write_str(&mono)?,
            (false, true) => write!(f, "{a}")?,
            (false, false) => write!(f, "{a}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclotomic order must be positive".into()));
    }
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = Rational::from_int(-1);
    p[n as usize] = Rational::one();
    let mut p = Poly { coeffs: p };
    for d in (1..n).filter(|d| n % d == 0) {
        p = p.div_exact(&cyclotomic_polynomial(d)?).expect("cyclotomic divisor");
    }
    Ok(p)
}

pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u32
}

struct FieldData {
    level: u32,
    phi: usize,
    /// `powers[e]` is `z^e` for `0 <= e < level`, reduced.
    powers: Vec<Vec<Rational>>,
}

impl FieldData {
    fn new(level: u32) -> Self {
        let phi = euler_phi(level) as usize;
        let modulus = cyclotomic_polynomial(level).expect("positive level");
        let mut powers = Vec::with_capacity(level as usize);
        let mut cur = vec![Rational::zero(); phi];
        cur[0] = Rational::one();
        for _ in 0..level {
            powers.push(cur.clone());
            // multiply by z: shift, then fold z^phi = -(c_0 + ... + c_{phi-1} z^{phi-1})
            let top = cur[phi - 1].clone();
            for k in (1..phi).rev() {
                cur[k] = cur[k - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for k in 0..phi {
                    cur[k] -= &(&top * &modulus.coeffs[k]);
                }
            }
        }
        FieldData { level, phi, powers }
    }
}

static FIELD: OnceLock<FieldData> = OnceLock::new();

fn field() -> &'static FieldData {
    FIELD.get_or_init(|| FieldData::new(DEFAULT_LEVEL))
}

/// Fixes the process-wide level. Succeeds if unset or already equal.
pub fn set_session_level(level: u32) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let current = FIELD.get_or_init(|| FieldData::new(level)).level;
    if current == level {
        Ok(())
    } else {
        Err(Error::LevelFixed { current, requested: level })
    }
}

pub fn session_level() -> u32 {
    field().level
}

/// Dimension of the field over the rationals.
pub fn field_degree() -> usize {
    field().phi
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    c: SmallVec<[Rational; 4]>,
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { c: SmallVec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = SmallVec::new();
        if !r.is_zero() {
            c.push(r);
        }
        CycNum { c }
    }

    /// Builds from power-basis coefficients; longer inputs are reduced.
    pub fn from_coeffs(coeffs: &[Rational]) -> Self {
        let fd = field();
        if coeffs.len() <= fd.phi {
            return CycNum { c: coeffs.iter().cloned().collect() }.trimmed();
        }
        let mut acc = vec![Rational::zero(); fd.phi];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, p) in fd.powers[e % fd.level as usize].iter().enumerate() {
                if !p.is_zero() {
                    acc[k] += &(c * p);
                }
            }
        }
        CycNum { c: acc.into_iter().collect() }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    /// Power-basis coefficients, padded to the field degree.
    pub fn coeffs(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.c.iter().cloned().collect();
        v.resize(field().phi, Rational::zero());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self.c.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Integer value when the element is a rational integer fitting in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        self.to_rational()?.to_i64()
    }

    /// Size measure used for pivot selection.
    pub fn height(&self) -> u64 {
        self.c.iter().map(Rational::height).sum::<u64>() + 8 * self.c.len().saturating_sub(1) as u64
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum { c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.c[0].inv()?));
        }
        // solve (self * b) = 1 with the multiplication-by-self matrix
        let phi = field().phi;
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi);
        for k in 0..phi {
            let mut e = vec![Rational::zero(); k + 1];
            e[k] = Rational::one();
            cols.push((self * &CycNum::from_coeffs(&e)).coeffs());
        }
        let mut m: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = (0..phi).map(|k| cols[k][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let p = (col..phi).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
            m.swap(col, p);
            let inv = m[col][col].inv()?;
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=phi {
                        let d = &f * &m[col][k];
                        m[r][k] -= &d;
                    }
                }
            }
        }
        let sol: Vec<Rational> = m.into_iter().map(|r| r[phi].clone()).collect();
        Ok(CycNum::from_coeffs(&sol))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycNum::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Square root when it lies in the field and is found among the
    /// candidates `r`, `r * zeta^k` for rational `r` and `k < level`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(CycNum::zero());
        }
        let fd = field();
        for e in 0..fd.level as i64 {
            let z = root_of_unity(fd.level, e).ok()?;
            let q = self * &z.pow(-2).ok()?;
            if let Some(r) = q.to_rational().and_then(|q| q.sqrt()) {
                return Some(&CycNum::from_rational(r) * &z);
            }
        }
        None
    }
}

/// `zeta_order^k` inside the session field.
pub fn root_of_unity(order: u32, k: i64) -> Result<CycNum> {
    let fd = field();
    if order == 0 || fd.level % order != 0 {
        return Err(Error::LevelMismatch { requested: order, level: fd.level });
    }
    let e = (k.rem_euclid(order as i64) as u32 * (fd.level / order)) % fd.level;
    Ok(CycNum::from_coeffs(&fd.powers[e as usize]))
}

/// The imaginary unit, available when 4 divides the level.
pub fn imaginary_unit() -> Result<CycNum> {
    root_of_unity(4, 1)
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (long, short) = if self.c.len() >= rhs.c.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.c.clone();
        for (x, y) in c.iter_mut().zip(short.c.iter()) {
            *x += y;
        }
        CycNum { c }.trimmed()
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|k| match (self.c.get(k), rhs.c.get(k)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            })
            .collect();
        CycNum { c }.trimmed()
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if self.c.len() == 1 {
            return rhs.scale(&self.c[0]);
        }
        if rhs.c.len() == 1 {
            return self.scale(&rhs.c[0]);
        }
        let mut prod = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        CycNum::from_coeffs(&prod)
    }
}

impl<'a> Div<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    /// Panics on division by zero; use [`CycNum::inv`] for a fallible form.
    fn div(self, rhs: &CycNum) -> CycNum {
        self * &rhs.inv().expect("cyclotomic division by zero")
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum { c: self.c.iter().map(|x| -x).collect() }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &'a CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        CycNum::from_int(n)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

/// A total order on coefficient vectors, for use as map keys. It is not a
/// field order.
impl Ord for CycNum {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.c.len().max(other.c.len());
        let zero = Rational::zero();
        for k in 0..n {
            let o = self.c.get(k).unwrap_or(&zero).cmp(other.c.get(k).unwrap_or(&zero));
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for CycNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.c, "z")
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses sums of products of `q`, `zeta(n,k)`, `i` and `z^k`, where `q` is a
/// rational such as `-3/2` and `z` is the primitive root of the session level,
/// so that displayed values parse back.
impl FromStr for CycNum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        let mut terms = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && i > start && !s[..i].ends_with(['*', '/']) => {
                    terms.push(&s[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&s[start..]);
        let mut acc = CycNum::zero();
        for t in terms {
            acc += &parse_term(t)?;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Result<CycNum> {
    let (sign, body) = match t.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let mut value = CycNum::from_int(sign);
    for factor in body.split('*') {
        let f = if factor == "i" {
            imaginary_unit()?
        } else if factor == "z" {
            root_of_unity(session_level(), 1)?
        } else if let Some(k) = factor.strip_prefix("z^") {
            let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            root_of_unity(session_level(), k)?
        } else if let Some(args) = factor.strip_prefix("zeta(").and_then(|a| a.strip_suffix(')')) {
            let (n, k) = args
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad root of unity {factor:?}")))?;
            let n: u32 = n.parse().map_err(|_| Error::Parse(format!("bad order in {factor:?}")))?;
            let k: i64 = k.parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
            root_of_unity(n, k)?
        } else {
            CycNum::from_rational(factor.parse()?)
        };
        value = &value * &f;
    }
    Ok(value)
}

impl serde::Serialize for CycNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycNum", 2)?;
        st.serialize_field("level", &session_level())?;
        st.serialize_field("coeffs", &self.coeffs())?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for CycNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
            Coeffs { level: u32, coeffs: Vec<Rational> },
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(CycNum::from_int(n)),
            Repr::Str(s) => s.parse().map_err(D::Error::custom),
            Repr::Coeffs { level, coeffs } => {
                if level != session_level() {
                    return Err(D::Error::custom(Error::LevelMismatch { requested: level, level: session_level() }));
                }
                Ok(CycNum::from_coeffs(&coeffs))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &Poly) -> Vec<i64> {
        p.coeffs.iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1).unwrap()), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4).unwrap()), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6).unwrap()), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12).unwrap()), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12).unwrap().to_string(), "x^4 - x^2 + 1");
        assert_eq!(cyclotomic_polynomial(105).unwrap().degree(), 48);
    }

    #[test]
    fn roots_of_unity_have_their_order() {
        let i = root_of_unity(4, 1).unwrap();
        assert_eq!(&i * &i, CycNum::from_int(-1));
        let w = root_of_unity(3, 1).unwrap();
        assert_eq!(&(&w * &w) + &(&w + &CycNum::one()), CycNum::zero());
        assert!(root_of_unity(12, 1).unwrap().pow(6).unwrap() == CycNum::from_int(-1));
        assert!(matches!(root_of_unity(5, 1), Err(Error::LevelMismatch { .. })));
    }

    #[test]
    fn inverse_round_trips() {
        let x: CycNum = "1 + 2*zeta(12,1) - 1/3*zeta(3,1)".parse().unwrap();
        assert_eq!(&x * &x.inv().unwrap(), CycNum::one());
    }

    #[test]
    fn sqrt_of_minus_one_is_unit() {
        let r = CycNum::from_int(-4).sqrt().unwrap();
        assert_eq!(&r * &r, CycNum::from_int(-4));
    }

    #[test]
    fn parse_forms() {
        let i = imaginary_unit().unwrap();
        assert_eq!("i".parse::<CycNum>().unwrap(), i);
        assert_eq!("-i".parse::<CycNum>().unwrap(), -&i);
        assert_eq!("1/2-3/4*i".parse::<CycNum>().unwrap(), &CycNum::from_rational("1/2".parse().unwrap()) - &i.scale(&"3/4".parse().unwrap()));
        let json = serde_json::to_string(&i).unwrap();
        assert_eq!(serde_json::from_str::<CycNum>(&json).unwrap(), i);
    }
}
