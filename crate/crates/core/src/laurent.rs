//! The commutative algebra `A = C[X_1^+-, .., X_n^+-]` with coefficients in
//! [`Coefficient`], together with the Weyl group action, the two divided
//! differences of the Bernstein relations, and character evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::weyl::SignedPermutation;

/// Exponent vector, always of length `n`.
pub type Exponent = Vec<i32>;

/// Sparse Laurent polynomial in `n` variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, Coefficient>,
}

/// Which finite Weyl group acts: `S_n` (type A) or `W(C_n)` (type C).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeylKind {
    A,
    C,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Coefficient::one())
    }

    pub fn constant(n: usize, c: Coefficient) -> Self {
        Self::monomial(vec![0; n], c)
    }

    pub fn monomial(exps: Exponent, c: Coefficient) -> Self {
        let n = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { n, terms }
    }

    /// `X_i^k`, one-based `i`.
    pub fn var_pow(n: usize, i: usize, k: i32) -> Self {
        assert!(i >= 1 && i <= n, "variable X{i} out of range for n = {n}");
        let mut e = vec![0; n];
        e[i - 1] = k;
        Self::monomial(e, Coefficient::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::var_pow(n, i, 1)
    }

    /// `(X_1 ... X_n)^k`.
    pub fn det_pow(n: usize, k: i32) -> Self {
        Self::monomial(vec![k; n], Coefficient::one())
    }

    /// Univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate<I: IntoIterator<Item = (i32, Coefficient)>>(it: I) -> Self {
        Self::from_terms(1, it.into_iter().map(|(k, c)| (vec![k], c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Coefficient)>>(n: usize, it: I) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: &Coefficient) {
        debug_assert_eq!(e.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> Coefficient {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The coefficient if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&vec![0; self.n]).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.add_term(e.clone(), &(a * c));
        }
        out
    }

    /// Multiply by the monomial `X^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    fn map_exponents(&self, f: impl Fn(&[i32]) -> Exponent) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    /// `f^{s_i}`: swap `X_i` and `X_{i+1}`.
    pub fn poly_swap(&self, i: usize) -> Result<Self> {
        if i == 0 || i >= self.n {
            return Err(Error::InvalidIndex { index: i, reason: format!("swap needs 1 <= i <= {}", self.n.saturating_sub(1)) });
        }
        Ok(self.map_exponents(|e| {
            let mut e = e.to_vec();
            e.swap(i - 1, i);
            e
        }))
    }

    /// `f^vee`: substitute `X_n -> 1/X_n`.
    pub fn poly_invert_last(&self) -> Self {
        if self.n == 0 {
            return self.clone();
        }
        let last = self.n - 1;
        self.map_exponents(|e| {
            let mut e = e.to_vec();
            e[last] = -e[last];
            e
        })
    }

    pub fn weyl_act(&self, w: &SignedPermutation) -> Self {
        assert_eq!(w.rank(), self.n, "rank mismatch in Weyl action");
        self.map_exponents(|e| w.act_on_exponents(e))
    }

    /// Split by the exponent of `X_var` (zero-based): `f = sum_k F_k X_var^k`.
    fn split_by_var(&self, var: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = std::mem::replace(&mut rest[var], 0);
            out.entry(k).or_insert_with(|| Self::zero(self.n)).add_term(rest, c);
        }
        out
    }

    /// Exact quotient by `X_var - y` where `y` does not involve `X_var`
    /// (zero-based `var`); synthetic division from the top degree down.
    fn div_by_linear(&self, var: usize, y: &LaurentPoly) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let parts = self.split_by_var(var);
        let kmin = *parts.keys().next().unwrap();
        let kmax = *parts.keys().next_back().unwrap();
        let mut quotient = Self::zero(self.n);
        let mut carry = Self::zero(self.n);
        for k in (kmin..=kmax).rev() {
            let fk = parts.get(&k).cloned().unwrap_or_else(|| Self::zero(self.n));
            // Q_{k-1} = F_k + y Q_k; at k = kmin this is the remainder.
            let next = &fk + &(y * &carry);
            if k == kmin {
                if !next.is_zero() {
                    return Err(Error::InexactDivision(format!("({self}) / (X{} - ({y}))", var + 1)));
                }
            } else {
                let mut shift = vec![0; self.n];
                shift[var] = k - 1;
                quotient = &quotient + &next.shift(&shift);
                carry = next;
            }
        }
        Ok(quotient)
    }

    /// `(f - f^{s_i}) / (1 - X_{i+1}/X_i)`, exact.
    pub fn divided_diff_a(&self, i: usize) -> Result<Self> {
        let swapped = self.poly_swap(i)?;
        let num = (self - &swapped).shift(&unit_vec(self.n, i - 1, 1));
        num.div_by_linear(i - 1, &Self::var(self.n, i + 1))
    }

    /// `(f - f^vee) / (1 - 1/X_n^2)`, exact.
    pub fn divided_diff_c(&self) -> Result<Self> {
        let n = self.n;
        let num = (self - &self.poly_invert_last()).shift(&unit_vec(n, n - 1, 2));
        let one = Self::one(n);
        num.div_by_linear(n - 1, &one)?.div_by_linear(n - 1, &-&one)
    }

    /// `self += c * other`, in place.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &Coefficient) {
        assert_eq!(self.n, other.n, "variable count mismatch");
        if c.is_zero() {
            return;
        }
        for (e, a) in &other.terms {
            let prod = a * c;
            match self.terms.get_mut(e) {
                Some(slot) => {
                    *slot += &prod;
                    if slot.is_zero() {
                        self.terms.remove(e);
                    }
                }
                None => {
                    self.terms.insert(e.clone(), prod);
                }
            }
        }
    }

    /// Fixed by every simple reflection of the given Weyl group.
    pub fn is_w_invariant(&self, kind: WeylKind) -> bool {
        for i in 1..self.n {
            if self.poly_swap(i).unwrap() != *self {
                return false;
            }
        }
        kind == WeylKind::A || self.n == 0 || self.poly_invert_last() == *self
    }

    /// Ring homomorphism `A -> Q[v^+-]`.
    pub fn eval_character(&self, chi: &Character) -> Result<Coefficient> {
        if chi.values.len() != self.n {
            return Err(Error::InvalidParams(format!(
                "character on {} variables applied to a polynomial in {}",
                chi.values.len(),
                self.n
            )));
        }
        let mut acc = Coefficient::zero();
        for (e, c) in &self.terms {
            let mut sign = 1i64;
            let mut vexp = 0i32;
            for (k, &(zeta, m)) in e.iter().zip(&chi.values) {
                if zeta < 0 && k.rem_euclid(2) == 1 {
                    sign = -sign;
                }
                vexp += m * k;
            }
            acc += &(c * &Coefficient::term(num_rational::BigRational::from_integer(sign.into()), vexp));
        }
        Ok(acc)
    }

    /// `(min, max)` exponent of the one-based variable `X_i`.
    pub fn degree_bounds(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i - 1]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    /// Regard a univariate polynomial as a polynomial in `X_n` among `n`
    /// variables.
    pub fn embed_last(&self, n: usize) -> Self {
        assert_eq!(self.n, 1, "embed_last expects a univariate polynomial");
        self.map_to(n, |e| unit_vec(n, n - 1, e[0]))
    }

    /// Inverse of [`embed_last`](Self::embed_last) when only `X_n` occurs.
    pub fn restrict_to_last(&self) -> Option<Self> {
        let n = self.n;
        if self.terms.keys().any(|e| e[..n - 1].iter().any(|&k| k != 0)) {
            return None;
        }
        Some(self.map_to(1, |e| vec![e[n - 1]]))
    }

    fn map_to(&self, n: usize, f: impl Fn(&[i32]) -> Exponent) -> Self {
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    /// Substitute a constant for the zero-based variable `var`; the
    /// variable must occur with non-negative exponents only.
    pub fn substitute(&self, var: usize, value: &Coefficient) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let k = e[var];
            assert!(k >= 0, "substitute expects polynomial dependence");
            let mut rest = e.clone();
            rest[var] = 0;
            out.add_term(rest, &(c * &value.pow(k as u32)));
        }
        out
    }

    /// `lambda` with `self = lambda * g`, if it exists in the coefficient ring.
    pub fn scalar_ratio(&self, g: &LaurentPoly) -> Option<Coefficient> {
        let (e, lead) = g.terms.iter().next()?;
        let lambda = self.coeff(e).div_exact(lead).ok()?;
        (g.scale(&lambda) == *self).then_some(lambda)
    }

    /// Terms sorted by graded lexicographic order, largest first.
    pub fn sorted_terms(&self) -> Vec<(&Exponent, &Coefficient)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        v
    }

    /// Render with a single variable named `name` when univariate (used for
    /// solutions of the star equation, written in `X`).
    pub fn render(&self, univariate_name: Option<&str>) -> String {
        render_poly(self, univariate_name)
    }
}

fn unit_vec(n: usize, idx: usize, k: i32) -> Exponent {
    let mut e = vec![0; n];
    e[idx] = k;
    e
}

/// `R_d = b X^{2d} + c X^{2d-1} + ... + b X^2 + c X` in one variable.
pub fn build_r_d(d: u32, b: &Coefficient, c: &Coefficient) -> LaurentPoly {
    LaurentPoly::univariate((1..=d as i32).flat_map(|k| [(2 * k, b.clone()), (2 * k - 1, c.clone())]))
}

/// A character of `A`: `X_j -> zeta_j * v^{m_j}` with `zeta_j = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    pub values: Vec<(i8, i32)>,
}

impl Character {
    pub fn new(values: Vec<(i8, i32)>) -> Result<Self> {
        if values.iter().any(|(z, _)| *z != 1 && *z != -1) {
            return Err(Error::InvalidParams("character signs must be +1 or -1".into()));
        }
        Ok(Character { values })
    }

    /// Value on `X_j` (one-based).
    pub fn value(&self, j: usize) -> Coefficient {
        let (z, m) = self.values[j - 1];
        Coefficient::term(num_rational::BigRational::from_integer((z as i64).into()), m)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, rhs.n, "variable count mismatch");
        let mut out = LaurentPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly { (&self).$m(&rhs) }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn render_monomial(e: &[i32], univariate_name: Option<&str>) -> Option<String> {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, k)| **k != 0)
        .map(|(j, k)| {
            let name = match (univariate_name, e.len()) {
                (Some(nm), 1) => nm.to_string(),
                _ => format!("X{}", j + 1),
            };
            if *k == 1 {
                name
            } else {
                format!("{name}^{k}")
            }
        })
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

fn render_poly(p: &LaurentPoly, univariate_name: Option<&str>) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for (e, c) in p.sorted_terms() {
        match render_monomial(e, univariate_name) {
            None => pieces.extend(c.signed_parts()),
            Some(mono) => {
                if c.num_terms() == 1 {
                    let (neg, body) = c.signed_parts().remove(0);
                    let text = if body == "1" { mono } else { format!("{body}*{mono}") };
                    pieces.push((neg, text));
                } else {
                    pieces.push((false, format!("({c})*{mono}")));
                }
            }
        }
    }
    if pieces.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (neg, body)) in pieces.iter().enumerate() {
        match (idx, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_poly(self, None))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[n={}]({})", self.n, self)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
