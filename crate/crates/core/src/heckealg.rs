//! The Hecke algebra `H = A (x) H_0` in its Bernstein presentation.
//!
//! Elements are finite sums `sum_w f_w T_w` with `f_w` in `A` written to the
//! left and `w` in the finite Weyl group (`S_n` for type A, `W(C_n)` for type
//! C). Products are normalized by pushing generators of the left factor, one
//! at a time, across the right factor using
//!
//! ```text
//! T_i f = f^{s_i} T_i + (q^t - 1) (f - f^{s_i}) / (1 - X_{i+1}/X_i)      i < n
//! T_n f = f^vee T_n + (b + c/X_n) (f - f^vee) / (1 - 1/X_n^2)
//! T_i T_w = T_{s_i w}                   if l(s_i w) > l(w)
//!         = (p - 1) T_w + p T_{s_i w}    otherwise
//! ```
//!
//! with `p = q^t` for `i < n` and `p = q^r` for `i = n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::coeffring::{param_constants, Coefficient, ParamConstants};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::laurent::{LaurentPoly, WeylKind};
use crate::weyl::SignedPermutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// Type `A~_{n-1}`, equal parameters `t`.
    A,
    /// Type `C~_n`, parameters `s` (node 0), `t`, `r` (node n).
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HeckeParams {
    pub case_tag: CaseTag,
    pub n: usize,
    pub t: u32,
    pub r: u32,
    pub s: u32,
}

impl HeckeParams {
    pub fn type_a(n: usize, t: u32) -> Result<Self> {
        Self::new(CaseTag::A, n, t, 0, 0)
    }

    pub fn type_c(n: usize, t: u32, r: u32, s: u32) -> Result<Self> {
        Self::new(CaseTag::C, n, t, r, s)
    }

    pub fn new(case_tag: CaseTag, n: usize, t: u32, r: u32, s: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if case_tag == CaseTag::A && (r != 0 || s != 0) {
            return Err(Error::InvalidParams("type A has no parameters r, s".into()));
        }
        param_constants(t, r, s)?;
        Ok(HeckeParams { case_tag, n, t, r, s })
    }

    pub fn constants(&self) -> ParamConstants {
        param_constants(self.t, self.r, self.s).expect("validated at construction")
    }

    pub fn weyl_kind(&self) -> WeylKind {
        match self.case_tag {
            CaseTag::A => WeylKind::A,
            CaseTag::C => WeylKind::C,
        }
    }

    /// The degenerate type C case `r = s = 0`.
    pub fn is_case_ii(&self) -> bool {
        self.case_tag == CaseTag::C && self.r == 0 && self.s == 0
    }

    /// Generators `T_1 .. T_{n-1}` (and `T_n` in type C) of `H_0`.
    pub fn finite_generators(&self) -> Vec<usize> {
        match self.case_tag {
            CaseTag::A => (1..self.n).collect(),
            CaseTag::C => (1..=self.n).collect(),
        }
    }

    pub fn check_finite_index(&self, i: usize) -> Result<()> {
        let ok = match self.case_tag {
            CaseTag::A => i >= 1 && i < self.n,
            CaseTag::C => i >= 1 && i <= self.n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidIndex {
                index: i,
                reason: match self.case_tag {
                    CaseTag::A => format!("type A~_{} has generators T_1..T_{}", self.n - 1, self.n - 1),
                    CaseTag::C => format!("type C~_{} has generators T_0..T_{}", self.n, self.n),
                },
            })
        }
    }

    /// Quadratic parameter `p` with `(T_i + 1)(T_i - p) = 0`.
    pub fn quadratic_param(&self, i: usize) -> Coefficient {
        let k = self.constants();
        match (self.case_tag, i) {
            (CaseTag::C, 0) => k.qs,
            (CaseTag::C, i) if i == self.n => k.qr,
            _ => k.qt,
        }
    }

    pub fn finite_weyl_group(&self) -> Vec<SignedPermutation> {
        SignedPermutation::all(self.n, self.case_tag == CaseTag::C)
    }
}

/// Which power of `sqrt(q)` multiplies `X_1 T_w^{-1}` in `T_0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
pub enum T0Exponent {
    /// `s + 2t(n-1) + r`
    #[default]
    Standard,
    /// `s + t(n-1) + r`
    RemarkB,
}

impl T0Exponent {
    pub fn v_exponent(self, p: &HeckeParams) -> i32 {
        let nm1 = p.n as i32 - 1;
        let (t, r, s) = (p.t as i32, p.r as i32, p.s as i32);
        match self {
            T0Exponent::Standard => s + 2 * t * nm1 + r,
            T0Exponent::RemarkB => s + t * nm1 + r,
        }
    }
}

/// The palindromic word `1, 2, .., n-1, n, n-1, .., 1` of `T_w`.
pub fn longest_root_word(n: usize) -> Vec<usize> {
    (1..n).chain(std::iter::once(n)).chain((1..n).rev()).collect()
}

/// `sum_w f_w T_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeckeElement {
    params: HeckeParams,
    terms: BTreeMap<SignedPermutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(params: HeckeParams) -> Self {
        HeckeElement { params, terms: BTreeMap::new() }
    }

    pub fn one(params: HeckeParams) -> Self {
        Self::from_poly(params, LaurentPoly::one(params.n))
    }

    pub fn constant(params: HeckeParams, c: Coefficient) -> Self {
        Self::from_poly(params, LaurentPoly::constant(params.n, c))
    }

    /// `f` embedded as `f T_1`.
    pub fn from_poly(params: HeckeParams, f: LaurentPoly) -> Self {
        Self::term(params, SignedPermutation::identity(params.n), f)
    }

    /// `f T_w`.
    pub fn term(params: HeckeParams, w: SignedPermutation, f: LaurentPoly) -> Self {
        assert_eq!(f.nvars(), params.n, "polynomial has the wrong number of variables");
        let mut out = Self::zero(params);
        out.add_term(w, &f);
        out
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SignedPermutation, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &SignedPermutation) -> LaurentPoly {
        self.terms.get(w).cloned().unwrap_or_else(|| LaurentPoly::zero(self.params.n))
    }

    fn add_term(&mut self, w: SignedPermutation, f: &LaurentPoly) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(slot) => {
                *slot = &*slot + f;
                if slot.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, f.clone());
            }
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        let mut out = Self::zero(self.params);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), &f.scale(c));
        }
        out
    }

    /// `f * self` for `f` in `A`.
    pub fn left_poly_mul(&self, f: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.params);
        for (w, g) in &self.terms {
            out.add_term(w.clone(), &(f * g));
        }
        out
    }

    /// `T_i * self` for a finite generator `i`.
    pub fn left_gen_mul(&self, i: usize) -> Result<Self> {
        self.params.check_finite_index(i)?;
        let n = self.params.n;
        let k = self.params.constants();
        let p = self.params.quadratic_param(i);
        let pm1 = &p - &Coefficient::one();
        let si = SignedPermutation::simple(n, i)?;
        let mut out = Self::zero(self.params);
        for (x, h) in &self.terms {
            let (h_twisted, correction) = if i < n {
                (h.poly_swap(i)?, h.divided_diff_a(i)?.scale(&k.qt.clone().sub(Coefficient::one())))
            } else {
                let factor = LaurentPoly::from_terms(n, [
                    (vec![0; n], k.b.clone()),
                    (unit_last(n, -1), k.c.clone()),
                ]);
                (h.poly_invert_last(), &factor * &h.divided_diff_c()?)
            };
            out.add_term(x.clone(), &correction);
            let six = si.compose(x);
            if x.left_mul_lengthens(i) {
                out.add_term(six, &h_twisted);
            } else {
                out.add_term(x.clone(), &h_twisted.scale(&pm1));
                out.add_term(six, &h_twisted.scale(&p));
            }
        }
        Ok(out)
    }

    /// `T_w * self`, memoized along reduced words.
    fn left_word_mul(&self, w: &SignedPermutation, memo: &mut HashMap<SignedPermutation, HeckeElement>) -> Result<Self> {
        if w.is_identity() {
            return Ok(self.clone());
        }
        if let Some(hit) = memo.get(w) {
            return Ok(hit.clone());
        }
        let first = w.reduced_word()[0];
        let rest = SignedPermutation::simple(self.params.n, first)?.compose(w);
        let out = self.left_word_mul(&rest, memo)?.left_gen_mul(first)?;
        memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn mul(&self, rhs: &HeckeElement) -> Result<HeckeElement> {
        if self.params != rhs.params {
            return Err(Error::ParamMismatch);
        }
        let mut memo = HashMap::new();
        let mut out = Self::zero(self.params);
        for (w, f) in &self.terms {
            let tw_rhs = rhs.left_word_mul(w, &mut memo)?;
            out = &out + &tw_rhs.left_poly_mul(f);
        }
        Ok(out)
    }

    pub fn mul_all(params: HeckeParams, factors: &[&HeckeElement]) -> Result<HeckeElement> {
        let mut acc = Self::one(params);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Terms ordered by `(length, reduced word)`.
    pub fn sorted_terms(&self) -> Vec<(&SignedPermutation, &LaurentPoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(w, _)| w.display_key());
        v
    }
}

fn unit_last(n: usize, k: i32) -> Vec<i32> {
    let mut e = vec![0; n];
    e[n - 1] = k;
    e
}

impl Add for &HeckeElement {
    type Output = HeckeElement;
    fn add(self, rhs: &HeckeElement) -> HeckeElement {
        assert_eq!(self.params, rhs.params, "adding elements of different algebras");
        let mut out = self.clone();
        for (w, f) in &rhs.terms {
            out.add_term(w.clone(), f);
        }
        out
    }
}

impl Sub for &HeckeElement {
    type Output = HeckeElement;
    fn sub(self, rhs: &HeckeElement) -> HeckeElement {
        self + &-rhs
    }
}

impl Neg for &HeckeElement {
    type Output = HeckeElement;
    fn neg(self) -> HeckeElement {
        HeckeElement { params: self.params, terms: self.terms.iter().map(|(w, f)| (w.clone(), -f)).collect() }
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .sorted_terms()
            .into_iter()
            .map(|(w, p)| {
                if w.is_identity() {
                    format!("({p})")
                } else {
                    let word: Vec<String> = w.reduced_word().iter().map(|i| format!("T{i}")).collect();
                    format!("({p})*{}", word.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement({self})")
    }
}

/// The basis element `T_{s_i}`, or `T_0` for `i = 0`.
pub fn gen(params: HeckeParams, i: usize) -> Result<HeckeElement> {
    if i == 0 {
        return t0_element(params);
    }
    params.check_finite_index(i)?;
    Ok(HeckeElement::term(params, SignedPermutation::simple(params.n, i)?, LaurentPoly::one(params.n)))
}

/// `T_i^{-1} = p^{-1} (T_i - (p - 1))`.
pub fn gen_inverse(params: HeckeParams, i: usize) -> Result<HeckeElement> {
    params.check_finite_index(i)?;
    let p = params.quadratic_param(i);
    let pinv = p.inverse().expect("quadratic parameters are powers of v");
    let shifted = &gen(params, i)? - &HeckeElement::constant(params, &p - &Coefficient::one());
    Ok(shifted.scale(&pinv))
}

pub fn t0_element(params: HeckeParams) -> Result<HeckeElement> {
    t0_element_with(params, T0Exponent::Standard)
}

/// `T_0 = sqrt(q)^e X_1 T_w^{-1}` with `T_w = T_1 .. T_{n-1} T_n T_{n-1} .. T_1`.
pub fn t0_element_with(params: HeckeParams, exponent: T0Exponent) -> Result<HeckeElement> {
    if params.case_tag != CaseTag::C {
        return Err(Error::InvalidIndex { index: 0, reason: "T_0 exists only in type C~".into() });
    }
    let n = params.n;
    let mut acc = HeckeElement::from_poly(
        params,
        LaurentPoly::var(n, 1).scale(&Coefficient::v_pow(exponent.v_exponent(&params))),
    );
    // T_w^{-1} is the same palindromic word in the inverses
    for i in longest_root_word(n) {
        acc = acc.mul(&gen_inverse(params, i)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub passed: bool,
    /// Canonical text of `lhs - rhs` when the relation fails.
    pub difference: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub params: HeckeParams,
    pub t0_exponent: T0Exponent,
    pub t0_v_exponent: Option<i32>,
    pub checks: Vec<RelationCheck>,
    pub all_passed: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
enum Relation {
    Quadratic(usize),
    Braid { i: usize, j: usize, m: usize },
    Bernstein(usize),
}

impl Relation {
    fn name(&self) -> String {
        match self {
            Relation::Quadratic(i) => format!("quadratic T{i}"),
            Relation::Braid { i, j, m: 2 } => format!("commute T{i} T{j}"),
            Relation::Braid { i, j, m } => format!("braid T{i} T{j} (m = {m})"),
            Relation::Bernstein(i) => format!("bernstein commutation T{i}"),
        }
    }
}

fn relation_list(params: &HeckeParams) -> Vec<Relation> {
    let n = params.n;
    let mut gens: Vec<usize> = params.finite_generators();
    if params.case_tag == CaseTag::C {
        gens.insert(0, 0);
    }
    let mut rels: Vec<Relation> = gens.iter().map(|&i| Relation::Quadratic(i)).collect();
    for (a, &i) in gens.iter().enumerate() {
        for &j in &gens[a + 1..] {
            let m = match (params.case_tag, i, j) {
                (CaseTag::C, 0, 1) => {
                    if n == 1 {
                        continue; // infinite dihedral: no relation
                    }
                    4
                }
                (CaseTag::C, 0, _) => 2,
                (CaseTag::C, i, j) if j == n && i + 1 == n => 4,
                (_, i, j) if i + 1 == j => 3,
                _ => 2,
            };
            rels.push(Relation::Braid { i, j, m });
        }
    }
    rels.extend(params.finite_generators().into_iter().map(Relation::Bernstein));
    rels
}

fn alternating(a: &HeckeElement, b: &HeckeElement, m: usize) -> Result<HeckeElement> {
    let mut acc = HeckeElement::one(*a.params());
    for k in 0..m {
        acc = acc.mul(if k % 2 == 0 { a } else { b })?;
    }
    Ok(acc)
}

fn panel(n: usize) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    for j in 1..=n {
        out.push(LaurentPoly::var(n, j));
        out.push(LaurentPoly::var_pow(n, j, -1));
    }
    let mut mixed = LaurentPoly::det_pow(n, 1);
    mixed = &mixed + &LaurentPoly::var_pow(n, n, -2).scale(&Coefficient::from_int(3));
    mixed = &mixed + &LaurentPoly::var_pow(n, 1, 2).scale(&Coefficient::v_pow(1));
    out.push(mixed);
    out
}

/// Correction term of the Bernstein relation for generator `i`.
pub fn bernstein_correction(params: &HeckeParams, i: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
    params.check_finite_index(i)?;
    let n = params.n;
    let k = params.constants();
    if i < n {
        Ok(f.divided_diff_a(i)?.scale(&(&k.qt - &Coefficient::one())))
    } else {
        let factor = LaurentPoly::from_terms(n, [(vec![0; n], k.b.clone()), (unit_last(n, -1), k.c.clone())]);
        Ok(&factor * &f.divided_diff_c()?)
    }
}

fn check_relation(params: HeckeParams, exponent: T0Exponent, rel: &Relation) -> Result<RelationCheck> {
    let g = |i: usize| -> Result<HeckeElement> {
        if i == 0 {
            t0_element_with(params, exponent)
        } else {
            gen(params, i)
        }
    };
    let diff = match rel {
        Relation::Quadratic(i) => {
            let t = g(*i)?;
            let p = params.quadratic_param(*i);
            let plus = &t + &HeckeElement::one(params);
            let minus = &t - &HeckeElement::constant(params, p);
            plus.mul(&minus)?
        }
        Relation::Braid { i, j, m } => {
            let (a, b) = (g(*i)?, g(*j)?);
            &alternating(&a, &b, *m)? - &alternating(&b, &a, *m)?
        }
        Relation::Bernstein(i) => {
            // both spellings: T_i f - f^s T_i and f T_i - T_i f^s
            let t = g(*i)?;
            let mut acc = HeckeElement::zero(params);
            for f in panel(params.n) {
                let twisted = if *i < params.n { f.poly_swap(*i)? } else { f.poly_invert_last() };
                let corr = HeckeElement::from_poly(params, bernstein_correction(&params, *i, &f)?);
                let fe = HeckeElement::from_poly(params, f.clone());
                let te = HeckeElement::from_poly(params, twisted);
                let left = &(&t.mul(&fe)? - &te.mul(&t)?) - &corr;
                let right = &(&fe.mul(&t)? - &t.mul(&te)?) - &corr;
                acc = &(&acc + &left) + &right;
            }
            acc
        }
    };
    Ok(RelationCheck {
        name: rel.name(),
        passed: diff.is_zero(),
        difference: (!diff.is_zero()).then(|| diff.to_string()),
    })
}

/// Check the quadratic, braid, commutation and Bernstein relations as exact
/// identities in the algebra.
pub fn verify_relations(params: HeckeParams, exponent: T0Exponent, exec: Exec) -> Result<RelationReport> {
    let rels = relation_list(&params);
    let results = exec.map(&rels, |rel| check_relation(params, exponent, rel));
    let checks = results.into_iter().collect::<Result<Vec<_>>>()?;
    let all_passed = checks.iter().all(|c| c.passed);
    let mut notes = Vec::new();
    if params.case_tag == CaseTag::C && params.n >= 2 {
        let other = match exponent {
            T0Exponent::Standard => T0Exponent::RemarkB,
            T0Exponent::RemarkB => T0Exponent::Standard,
        };
        notes.push(format!(
            "T0 uses sqrt(q)^{} ({:?}); the alternative exponent {} ({:?}) differs for n >= 2",
            exponent.v_exponent(&params),
            exponent,
            other.v_exponent(&params),
            other
        ));
    }
    Ok(RelationReport {
        params,
        t0_exponent: exponent,
        t0_v_exponent: (params.case_tag == CaseTag::C).then(|| exponent.v_exponent(&params)),
        checks,
        all_passed,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use proptest::prelude::*;

    fn c(n: usize, t: u32, r: u32, s: u32) -> HeckeParams {
        HeckeParams::type_c(n, t, r, s).unwrap()
    }

    fn poly(p: &HeckeParams, s: &str) -> HeckeElement {
        HeckeElement::from_poly(*p, parse_poly(s, p.n).unwrap())
    }

    #[test]
    fn generator_indices() {
        let a = HeckeParams::type_a(3, 1).unwrap();
        assert!(gen(a, 1).is_ok());
        assert!(gen(a, 3).is_err());
        assert!(gen(a, 0).is_err());
        assert!(gen(c(2, 1, 2, 1), 2).is_ok());
        assert!(gen(c(2, 1, 2, 1), 3).is_err());
        assert!(HeckeParams::type_c(2, 1, 1, 2).is_err());
        assert!(HeckeParams::type_c(0, 1, 1, 0).is_err());
    }

    #[test]
    fn quadratic_relations() {
        let p = c(2, 1, 2, 1);
        for i in 1..=2 {
            let t = gen(p, i).unwrap();
            let q = p.quadratic_param(i);
            let prod = (&t + &HeckeElement::one(p)).mul(&(&t - &HeckeElement::constant(p, q))).unwrap();
            assert!(prod.is_zero(), "T{i}: {prod}");
        }
    }

    #[test]
    fn tn_times_xn() {
        let p = c(2, 1, 2, 1);
        let k = p.constants();
        let lhs = gen(p, 2).unwrap().mul(&poly(&p, "X2")).unwrap();
        let expected = &HeckeElement::term(p, SignedPermutation::simple(2, 2).unwrap(), parse_poly("X2^-1", 2).unwrap())
            + &HeckeElement::from_poly(
                p,
                LaurentPoly::from_terms(2, [(vec![0, 1], k.b.clone()), (vec![0, 0], k.c.clone())]),
            );
        assert_eq!(lhs, expected);
    }

    #[test]
    fn inverses() {
        for p in [c(2, 1, 2, 1), c(2, 2, 0, 0), HeckeParams::type_a(3, 2).unwrap()] {
            for i in p.finite_generators() {
                let prod = gen_inverse(p, i).unwrap().mul(&gen(p, i).unwrap()).unwrap();
                assert_eq!(prod, HeckeElement::one(p));
                let prod = gen(p, i).unwrap().mul(&gen_inverse(p, i).unwrap()).unwrap();
                assert_eq!(prod, HeckeElement::one(p));
            }
        }
        let p = c(2, 1, 0, 0);
        assert_eq!(gen_inverse(p, 2).unwrap(), gen(p, 2).unwrap());
    }

    #[test]
    fn inverse_pushes_x_across() {
        // T_i^{-1} X_{i+1}^{-1} = q^{-t} X_i^{-1} T_i
        for p in [c(3, 1, 2, 1), c(3, 2, 1, 1), HeckeParams::type_a(3, 2).unwrap()] {
            let qinv = Coefficient::q_pow(-(p.t as i32));
            for i in 1..p.n {
                let lhs = gen_inverse(p, i).unwrap().mul(&HeckeElement::from_poly(p, LaurentPoly::var_pow(p.n, i + 1, -1))).unwrap();
                let rhs = HeckeElement::from_poly(p, LaurentPoly::var_pow(p.n, i, -1).scale(&qinv))
                    .mul(&gen(p, i).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn t0_rank_one() {
        let p = c(1, 1, 2, 1);
        let k = p.constants();
        let t0 = t0_element(p).unwrap();
        // v^{s-r} X_1 (T_1 - b)
        let x = LaurentPoly::var(1, 1).scale(&Coefficient::v_pow(-1));
        let expected = &HeckeElement::term(p, SignedPermutation::simple(1, 1).unwrap(), x.clone())
            - &HeckeElement::from_poly(p, x.scale(&k.b));
        assert_eq!(t0, expected);
        // r = s = 0: T_0 = X_1 T_1
        let p = c(1, 1, 0, 0);
        assert_eq!(
            t0_element(p).unwrap(),
            HeckeElement::term(p, SignedPermutation::simple(1, 1).unwrap(), LaurentPoly::var(1, 1))
        );
        assert!(t0_element(HeckeParams::type_a(2, 1).unwrap()).is_err());
    }

    #[test]
    fn t0_quadratic_and_exponent_variants() {
        for n in 1..=3 {
            let p = c(n, 1, 2, 1);
            let t0 = t0_element(p).unwrap();
            let q = p.quadratic_param(0);
            let prod = (&t0 + &HeckeElement::one(p)).mul(&(&t0 - &HeckeElement::constant(p, q.clone()))).unwrap();
            assert!(prod.is_zero(), "n = {n}");
            let alt = t0_element_with(p, T0Exponent::RemarkB).unwrap();
            let prod = (&alt + &HeckeElement::one(p)).mul(&(&alt - &HeckeElement::constant(p, q))).unwrap();
            assert_eq!(prod.is_zero(), n == 1, "n = {n}");
        }
    }

    #[test]
    fn relation_reports() {
        let r = verify_relations(HeckeParams::type_a(3, 1).unwrap(), T0Exponent::Standard, Exec::Sequential).unwrap();
        assert!(r.all_passed, "{r:?}");
        let r = verify_relations(c(2, 1, 2, 1), T0Exponent::Standard, Exec::Parallel).unwrap();
        assert!(r.all_passed, "{r:?}");
        let r = verify_relations(c(2, 1, 0, 0), T0Exponent::Standard, Exec::Parallel).unwrap();
        assert!(r.all_passed);
        let t0 = t0_element(c(2, 1, 0, 0)).unwrap();
        assert_eq!(t0.mul(&t0).unwrap(), HeckeElement::one(c(2, 1, 0, 0)));
        let r = verify_relations(c(2, 1, 2, 1), T0Exponent::RemarkB, Exec::Sequential).unwrap();
        assert!(!r.all_passed);
        let failing: Vec<_> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failing.contains(&"quadratic T0"));
        assert!(r.checks.iter().find(|c| !c.passed).unwrap().difference.is_some());
    }

    #[test]
    fn rendering_is_ordered() {
        let p = c(2, 1, 2, 1);
        let t0 = t0_element(p).unwrap();
        let text = t0.to_string();
        assert!(text.starts_with('('));
        assert_eq!(text, t0.clone().to_string());
    }

    fn arb_element(p: HeckeParams) -> impl Strategy<Value = HeckeElement> {
        let group = p.finite_weyl_group();
        let gl = group.len();
        prop::collection::vec((0..gl, prop::collection::vec(-1i32..=1, p.n), -2i64..=2), 1..4).prop_map(move |ts| {
            let mut acc = HeckeElement::zero(p);
            for (w, e, a) in ts {
                acc = &acc + &HeckeElement::term(p, group[w].clone(), LaurentPoly::monomial(e, Coefficient::from_int(a)));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn associativity_type_c(a in arb_element(c(2, 1, 2, 1)), b in arb_element(c(2, 1, 2, 1)), d in arb_element(c(2, 1, 2, 1))) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
        }

        #[test]
        fn associativity_type_a(a in arb_element(HeckeParams::type_a(3, 1).unwrap()), b in arb_element(HeckeParams::type_a(3, 1).unwrap()), d in arb_element(HeckeParams::type_a(3, 1).unwrap())) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&d).unwrap(), a.mul(&b.mul(&d).unwrap()).unwrap());
        }

        #[test]
        fn unit_and_commutative_subalgebra(a in arb_element(c(2, 1, 3, 2)), e1 in prop::collection::vec(-2i32..=2, 2), e2 in prop::collection::vec(-2i32..=2, 2)) {
            let p = c(2, 1, 3, 2);
            let one = HeckeElement::one(p);
            prop_assert_eq!(one.mul(&a).unwrap(), a.clone());
            prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            let f = HeckeElement::from_poly(p, LaurentPoly::monomial(e1, Coefficient::from_int(2)));
            let g = HeckeElement::from_poly(p, LaurentPoly::monomial(e2, Coefficient::v_pow(1)));
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        }

        #[test]
        fn bernstein_displays(e in prop::collection::vec(-2i32..=2, 2), i in 1usize..=2) {
            let p = c(2, 1, 2, 1);
            let f = LaurentPoly::monomial(e, Coefficient::one());
            let t = gen(p, i).unwrap();
            let fe = HeckeElement::from_poly(p, f.clone());
            let twisted = HeckeElement::from_poly(p, if i < 2 { f.poly_swap(i).unwrap() } else { f.poly_invert_last() });
            let corr = HeckeElement::from_poly(p, bernstein_correction(&p, i, &f).unwrap());
            if i < 2 {
                prop_assert_eq!(&t.mul(&fe).unwrap() - &twisted.mul(&t).unwrap(), corr);
            } else {
                prop_assert_eq!(&fe.mul(&t).unwrap() - &t.mul(&twisted).unwrap(), corr);
            }
        }

        #[test]
        fn invariants_are_central(e in prop::collection::vec(-2i32..=2, 2)) {
            let p = c(2, 1, 2, 1);
            let m = LaurentPoly::monomial(e, Coefficient::one());
            let mut orbit = LaurentPoly::zero(2);
            for w in p.finite_weyl_group() {
                orbit = &orbit + &m.weyl_act(&w);
            }
            prop_assert!(orbit.is_w_invariant(WeylKind::C));
            let f = HeckeElement::from_poly(p, orbit);
            for i in 0..=2 {
                let t = gen(p, i).unwrap();
                prop_assert_eq!(f.mul(&t).unwrap(), t.mul(&f).unwrap());
            }
        }
    }
}
