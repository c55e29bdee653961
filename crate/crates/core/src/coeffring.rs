//! The coefficient ring `Q[v, v^-1]`, where `v` stands for a formal square
//! root of `q`.
//!
//! Every parameter of the algebras in this crate (`q^t`, `q^r`, `q^s`,
//! `sqrt(q)^(r+-s)`) is a monomial in `v`, so all structure constants live
//! here exactly. Rationals are arbitrary precision.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number with a machine-integer fast path.
///
/// Almost every coefficient met in practice is a small integer, and the
/// allocation plus gcd normalisation of `BigRational` dominates module
/// actions otherwise. `Big` never holds a value that fits `Small`.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Q {
    Small(i64),
    Big(BigRational),
}

impl Q {
    fn from_big(a: BigRational) -> Q {
        if a.is_integer() {
            if let Some(k) = a.numer().to_i64() {
                return Q::Small(k);
            }
        }
        Q::Big(a)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(k) => BigRational::from_integer(BigInt::from(*k)),
            Q::Big(a) => a.clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0))
    }

    fn add(&self, other: &Q) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(*b) {
                return Q::Small(c);
            }
        }
        Q::from_big(self.to_big() + other.to_big())
    }

    fn mul(&self, other: &Q) -> Q {
        if let (Q::Small(a), Q::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(*b) {
                return Q::Small(c);
            }
        }
        Q::from_big(self.to_big() * other.to_big())
    }

    fn neg(&self) -> Q {
        match self {
            Q::Small(a) => match a.checked_neg() {
                Some(c) => Q::Small(c),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(a) => Q::from_big(-a),
        }
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact Laurent polynomial in `v` with rational coefficients.
///
/// Stored sparsely as exponent-sorted pairs; no zero coefficient is ever
/// kept, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coefficient {
    terms: Vec<(i32, Q)>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_q(Q::Small(k), 0)
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::term(a, 0)
    }

    fn from_q(a: Q, k: i32) -> Self {
        let terms = if a.is_zero() { Vec::new() } else { vec![(k, a)] };
        Coefficient { terms }
    }

    /// `a * v^k`.
    pub fn term(a: BigRational, k: i32) -> Self {
        Self::from_q(Q::from_big(a), k)
    }

    /// `v^k`.
    pub fn v_pow(k: i32) -> Self {
        Self::from_q(Q::Small(1), k)
    }

    /// `q^k = v^(2k)`.
    pub fn q_pow(k: i32) -> Self {
        Self::v_pow(2 * k)
    }

    /// Build from `(exponent, rational)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(it: I) -> Self {
        let mut out = Coefficient::zero();
        for (k, a) in it {
            out.add_q(k, &Q::from_big(a));
        }
        out
    }

    fn add_q(&mut self, k: i32, a: &Q) {
        if a.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(pos) => {
                let sum = self.terms[pos].1.add(a);
                if sum.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = sum;
                }
            }
            Err(pos) => self.terms.insert(pos, (k, a.clone())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(0, Q::Small(1))])
    }

    /// Iterate `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, BigRational)> + '_ {
        self.terms.iter().map(|(k, a)| (*k, a.to_big()))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        match self.terms.binary_search_by_key(&k, |t| t.0) {
            Ok(pos) => self.terms[pos].1.to_big(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// The rational value if this is a constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, a)] => Some(a.to_big()),
            _ => None,
        }
    }

    /// A single term `a * v^k`.
    pub fn as_monomial(&self) -> Option<(BigRational, i32)> {
        match self.terms.as_slice() {
            [(k, a)] => Some((a.to_big(), *k)),
            _ => None,
        }
    }

    pub fn scale(&self, a: &BigRational) -> Self {
        self.scale_q(&Q::from_big(a.clone()))
    }

    fn scale_q(&self, a: &Q) -> Self {
        if a.is_zero() {
            return Coefficient::zero();
        }
        Coefficient {
            terms: self.terms.iter().map(|(k, b)| (*k, b.mul(a))).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Coefficient {
            terms: self.terms.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Coefficient::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Units of `Q[v, v^-1]` are exactly the nonzero monomials.
    pub fn inverse(&self) -> Option<Self> {
        let (a, k) = self.as_monomial()?;
        Some(Self::term(a.recip(), -k))
    }

    /// Exact quotient `self / d`, or an error when `d` does not divide.
    pub fn div_exact(&self, d: &Coefficient) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InexactDivision("division by zero coefficient".into()));
        }
        if let Some(inv) = d.inverse() {
            return Ok(self * &inv);
        }
        if self.is_zero() {
            return Ok(Coefficient::zero());
        }
        let smin = self.min_exp().unwrap();
        let dmin = d.min_exp().unwrap();
        let mut rem = self.shift(-smin);
        let den = d.shift(-dmin);
        let dtop = den.max_exp().unwrap();
        let dlead = den.coeff(dtop);
        let mut quot = Coefficient::zero();
        while let Some(top) = rem.max_exp() {
            if top < dtop {
                return Err(Error::InexactDivision(format!("{self} / {d}")));
            }
            let factor = Coefficient::term(rem.coeff(top) / &dlead, top - dtop);
            rem -= &(&factor * &den);
            quot += &factor;
        }
        Ok(quot.shift(smin - dmin))
    }

    /// Exact square root with positive leading coefficient, if one exists in
    /// `Q[v, v^-1]`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Coefficient::zero());
        }
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        if lo % 2 != 0 || hi % 2 != 0 {
            return None;
        }
        let lead = rational_sqrt(&self.coeff(hi))?;
        let top = hi / 2;
        let bottom = lo / 2;
        let mut root: std::collections::BTreeMap<i32, BigRational> = Default::default();
        root.insert(top, lead.clone());
        let two_lead = &lead * BigRational::from_integer(BigInt::from(2));
        for k in (bottom..top).rev() {
            // coefficient of v^(top + k) in root^2, excluding the 2*lead*root[k] part
            let mut acc = BigRational::zero();
            for (i, a) in root.iter() {
                let j = top + k - i;
                if j <= k || j >= top {
                    continue;
                }
                if let Some(b) = root.get(&j) {
                    acc += a * b;
                }
            }
            let x = (self.coeff(top + k) - acc) / &two_lead;
            if !x.is_zero() {
                root.insert(k, x);
            }
        }
        let candidate = Coefficient::from_terms(root);
        (&candidate * &candidate == *self).then_some(candidate)
    }

    /// Substitute `v = v0`.
    pub fn eval(&self, v0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, a) in self.terms() {
            acc += a * pow_rational(v0, k);
        }
        acc
    }

    /// Merge `self + sign * rhs` in one pass over both sorted term lists.
    fn merge(&self, rhs: &Coefficient, negate: bool) -> Coefficient {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        let signed = |q: &Q| if negate { q.neg() } else { q.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, signed(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let sum = a[i].1.add(&signed(&b[j].1));
                    if !sum.is_zero() {
                        out.push((a[i].0, sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(k, q)| (*k, signed(q))));
        Coefficient { terms: out }
    }
}

fn pow_rational(x: &BigRational, k: i32) -> BigRational {
    let mut base = if k < 0 { x.recip() } else { x.clone() };
    let mut e = k.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

fn rational_sqrt(a: &BigRational) -> Option<BigRational> {
    if a.is_negative() {
        return None;
    }
    let n = a.numer().sqrt();
    let d = a.denom().sqrt();
    (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        if self.terms.is_empty() {
            self.terms = rhs.terms.clone();
        } else if rhs.terms.len() == 1 {
            self.add_q(rhs.terms[0].0, &rhs.terms[0].1);
        } else {
            *self = self.merge(rhs, false);
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        *self = self.merge(rhs, true);
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        self.merge(rhs, false)
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        self.merge(rhs, true)
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        let (small, big) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        match small.terms.as_slice() {
            [] => Coefficient::zero(),
            // monomial factors are the common case and keep the order intact
            [(k, a)] => Coefficient {
                terms: big.terms.iter().map(|(e, b)| (e + k, a.mul(b))).collect(),
            },
            _ => {
                // dense accumulation over the exponent range
                let lo = small.terms[0].0 + big.terms[0].0;
                let hi = small.terms.last().unwrap().0 + big.terms.last().unwrap().0;
                let mut acc: Vec<Q> = vec![Q::Small(0); (hi - lo + 1) as usize];
                for (i, a) in &small.terms {
                    for (j, b) in &big.terms {
                        let slot = &mut acc[(i + j - lo) as usize];
                        *slot = slot.add(&a.mul(b));
                    }
                }
                Coefficient {
                    terms: acc
                        .into_iter()
                        .enumerate()
                        .filter(|(_, q)| !q.is_zero())
                        .map(|(idx, q)| (lo + idx as i32, q))
                        .collect(),
                }
            }
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            terms: self.terms.iter().map(|(k, a)| (*k, a.neg())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: Coefficient) -> Coefficient { (&self).$m(&rhs) }
        }
        impl $tr<&Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $m(self, rhs: &Coefficient) -> Coefficient { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        -&self
    }
}

fn fmt_rational(a: &BigRational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn fmt_v_power(k: i32) -> Option<String> {
    match k {
        0 => None,
        1 => Some("v".to_string()),
        _ => Some(format!("v^{k}")),
    }
}

impl Coefficient {
    /// Terms rendered with their signs split off, highest exponent first.
    pub(crate) fn signed_parts(&self) -> Vec<(bool, String)> {
        self.terms()
            .rev()
            .map(|(k, a)| {
                let neg = a.is_negative();
                let mag = a.abs();
                let body = match fmt_v_power(k) {
                    None => fmt_rational(&mag),
                    Some(vp) if mag.is_one() => vp,
                    Some(vp) => format!("{}*{}", fmt_rational(&mag), vp),
                };
                (neg, body)
            })
            .collect()
    }
}

/// Renders `a_k*v^k + ... ` with exponents in decreasing order.
impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.signed_parts();
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (idx, (neg, body)) in parts.iter().enumerate() {
            match (idx, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coefficient({self})")
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for Coefficient {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_coefficient(s)
    }
}

/// Derived constants for parameters `(t, r, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamConstants {
    pub t: u32,
    pub r: u32,
    pub s: u32,
    pub qt: Coefficient,
    pub qr: Coefficient,
    pub qs: Coefficient,
    /// `q^r - 1`
    pub b: Coefficient,
    /// `v^(r+s) - v^(r-s)`
    pub c: Coefficient,
    /// `v^(r+s)`
    pub half_rs_plus: Coefficient,
    /// `v^(r-s)`
    pub half_rs_minus: Coefficient,
}

pub fn param_constants(t: u32, r: u32, s: u32) -> Result<ParamConstants> {
    if t == 0 {
        return Err(Error::InvalidParams("t must be positive".into()));
    }
    if r < s {
        return Err(Error::InvalidParams(format!("need r >= s, got r = {r}, s = {s}")));
    }
    let (ti, ri, si) = (t as i32, r as i32, s as i32);
    let qr = Coefficient::q_pow(ri);
    let plus = Coefficient::v_pow(ri + si);
    let minus = Coefficient::v_pow(ri - si);
    Ok(ParamConstants {
        t,
        r,
        s,
        qt: Coefficient::q_pow(ti),
        qs: Coefficient::q_pow(si),
        b: &qr - &Coefficient::one(),
        c: &plus - &minus,
        qr,
        half_rs_plus: plus,
        half_rs_minus: minus,
    })
}
