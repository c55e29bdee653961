//! Which induced module describes the Gelfand–Graev component: evaluate the
//! generators on the one-dimensional modules of the two generic
//! representations `pi`, `pi^-` and compare.
//!
//! The intertwining operators vanish on these modules (cases I and III) and
//! `T_n` acts trivially in case II under the Whittaker normalization; those
//! values are taken as given here.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::heckealg::{HeckeParams, T0Exponent};
use crate::laurent::{Character, LaurentPoly};
use crate::modules::{InducedModule, OneDimRep, Subalgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GGCase {
    I,
    II,
    III,
}

impl fmt::Display for GGCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GGCase::I => "I",
            GGCase::II => "II",
            GGCase::III => "III",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GGInput {
    pub case: GGCase,
    pub n: usize,
    pub t: u32,
    pub alpha: BigRational,
    pub beta: BigRational,
}

fn as_int(x: &BigRational, what: &str) -> Result<i32> {
    if !x.is_integer() {
        return Err(Error::InvalidParams(format!("{what} = {x} is not an integer")));
    }
    x.to_integer().to_i32().ok_or_else(|| Error::InvalidParams(format!("{what} = {x} out of range")))
}

impl GGInput {
    pub fn new(case: GGCase, n: usize, t: u32, alpha: BigRational, beta: BigRational) -> Result<Self> {
        let input = GGInput { case, n, t, alpha, beta };
        input.validate()?;
        Ok(input)
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.t == 0 {
            return Err(Error::InvalidParams("n and t must be positive".into()));
        }
        let (a, b) = (&self.alpha, &self.beta);
        match self.case {
            GGCase::I => Ok(()),
            GGCase::II => {
                if !a.is_zero() || !b.is_zero() {
                    return Err(Error::InvalidParams("case II has alpha = beta = 0".into()));
                }
                Ok(())
            }
            GGCase::III => {
                if !a.is_positive() || b > a || b.is_negative() {
                    return Err(Error::InvalidParams(format!("case III needs alpha > 0 and alpha >= beta >= 0, got {a}, {b}")));
                }
                let two_t = BigRational::from_integer((2 * self.t).into());
                as_int(&(a * &two_t), "2t alpha")?;
                as_int(&(b * &two_t), "2t beta")?;
                let (r, s) = self.rs()?;
                if b.is_zero() {
                    // at X_n = -1 the T_n formula is 0/0 and its limit is not
                    // a root of the quadratic
                    return Err(Error::FormulaPole(format!(
                        "beta = 0 puts chi(X_n) = -1 on the pole of the T_n formula (r = {r}, s = {s})"
                    )));
                }
                Ok(())
            }
        }
    }

    /// `(r, s) = (t(alpha + beta), t(alpha - beta))`.
    pub fn rs(&self) -> Result<(u32, u32)> {
        let t = BigRational::from_integer(self.t.into());
        let r = as_int(&(&t * (&self.alpha + &self.beta)), "r = t(alpha + beta)")?;
        let s = as_int(&(&t * (&self.alpha - &self.beta)), "s = t(alpha - beta)")?;
        Ok((r as u32, s as u32))
    }

    pub fn hecke_params(&self) -> Result<HeckeParams> {
        match self.case {
            GGCase::I => HeckeParams::type_a(self.n, self.t),
            GGCase::II => HeckeParams::type_c(self.n, self.t, 0, 0),
            GGCase::III => {
                let (r, s) = self.rs()?;
                HeckeParams::type_c(self.n, self.t, r, s)
            }
        }
    }

    fn v_exp(&self, x: &BigRational) -> Result<i32> {
        as_int(&(x * BigRational::from_integer((2 * self.t).into())), "v-exponent")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericCharacters {
    pub chi_pi: Character,
    pub chi_pi_minus: Option<Character>,
}

pub fn generic_characters(input: &GGInput) -> Result<GenericCharacters> {
    input.validate()?;
    let n = input.n as i32;
    let t = input.t as i32;
    match input.case {
        // only the ratio chi(X_i / X_{i+1}) = q^t matters; centre the exponents
        GGCase::I => Ok(GenericCharacters {
            chi_pi: Character::new((1..=n).map(|i| (1, t * (n + 1 - 2 * i))).collect())?,
            chi_pi_minus: None,
        }),
        GGCase::II | GGCase::III => {
            let a = input.v_exp(&input.alpha)?;
            let b = input.v_exp(&input.beta)?;
            Ok(GenericCharacters {
                chi_pi: Character::new((1..=n).map(|i| (1, a + 2 * t * (n - i))).collect())?,
                chi_pi_minus: Some(Character::new((1..=n).map(|i| (-1, b + 2 * t * (n - i))).collect())?),
            })
        }
    }
}

fn eval_x(input: &GGInput, chi: &Character, i: usize) -> Result<Coefficient> {
    LaurentPoly::var(input.n, i).eval_character(chi)
}

/// Generator index (0 for `T_0`) to scalar.
pub type ScalarTable = BTreeMap<usize, Coefficient>;

pub fn scalar_table(input: &GGInput, chi: &Character) -> Result<ScalarTable> {
    scalar_table_with_tn(input, chi, None)
}

/// As [`scalar_table`], optionally overriding the `T_n` scalar (case II
/// renormalizations).
fn scalar_table_with_tn(input: &GGInput, chi: &Character, tn_override: Option<Coefficient>) -> Result<ScalarTable> {
    let params = input.hecke_params()?;
    let k = params.constants();
    let n = input.n;
    let one = Coefficient::one();
    let mut table = ScalarTable::new();
    for i in 1..n {
        let x = eval_x(input, chi, i)?.div_exact(&eval_x(input, chi, i + 1)?)?;
        if x == one {
            return Err(Error::FormulaPole(format!("chi(X_{i} / X_{}) = 1", i + 1)));
        }
        table.insert(i, (&(&k.qt - &one) * &x).div_exact(&(&x - &one))?);
    }
    if input.case == GGCase::I {
        return Ok(table);
    }
    let tn = match (input.case, tn_override) {
        (_, Some(c)) => c,
        (GGCase::II, None) => one.clone(),
        _ => {
            let y = eval_x(input, chi, n)?;
            let den = &(&y * &y) - &one;
            if den.is_zero() {
                return Err(Error::FormulaPole(format!("chi(X_{n})^2 = 1")));
            }
            let qa = Coefficient::v_pow(input.v_exp(&input.alpha)?);
            let qb = Coefficient::v_pow(input.v_exp(&input.beta)?);
            // y ((q^r - 1) y - (q^(t beta) - q^(t alpha))) / (y^2 - 1)
            let num = &y * &(&(&k.b * &y) - &(&qb - &qa));
            num.div_exact(&den)?
        }
    };
    table.insert(n, tn.clone());
    // T_0 = v^e X_1 T_w^{-1} acts by v^e chi(X_1) / (prod_{i<n} tau_i^2 * tau_n)
    let mut den = tn;
    for i in 1..n {
        den = &den * &(&table[&i] * &table[&i]);
    }
    let t0 = (&Coefficient::v_pow(T0Exponent::Standard.v_exponent(&params)) * &eval_x(input, chi, 1)?).div_exact(&den)?;
    table.insert(0, t0);
    Ok(table)
}

fn check_roots(params: &HeckeParams, table: &ScalarTable, label: &str) -> Result<()> {
    let minus = -Coefficient::one();
    for (&i, x) in table {
        let p = params.quadratic_param(i);
        if *x != minus && *x != p {
            return Err(Error::InconsistentTables(format!("T{i} acts on {label} by {x}, not a root of (x + 1)(x - {p})")));
        }
    }
    Ok(())
}

/// The comparison of the two tables.
fn decide(params: &HeckeParams, pi: &ScalarTable, pi_minus: Option<&ScalarTable>) -> Result<OneDimRep> {
    let n = params.n;
    let lambda_a = if n > 1 { Some(pi[&1].clone()) } else { None };
    for i in 1..n {
        if pi[&i] != pi[&1] || pi_minus.is_some_and(|m| m[&i] != pi[&i]) {
            return Err(Error::InconsistentTables("T_1 .. T_{n-1} do not act by one common scalar".into()));
        }
    }
    let Some(minus) = pi_minus else {
        return Ok(OneDimRep { subalgebra: Subalgebra::HSn, lambda_a, lambda_end: None });
    };
    match (pi[&0] != minus[&0], pi[&n] != minus[&n]) {
        // T_0 separates pi from pi^-, so Pi is induced from H_0
        (true, false) => Ok(OneDimRep { subalgebra: Subalgebra::H0, lambda_a, lambda_end: Some(pi[&n].clone()) }),
        (false, true) => Ok(OneDimRep { subalgebra: Subalgebra::Hn, lambda_a, lambda_end: Some(pi[&0].clone()) }),
        _ => Err(Error::InconsistentTables("exactly one of T_0, T_n must separate pi and pi^-".into())),
    }
}

fn named(table: &ScalarTable) -> BTreeMap<String, Coefficient> {
    table.iter().map(|(i, c)| (format!("T{i}"), c.clone())).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    /// Sign exponent `e` in `T_n' = (-1)^e X_n^f T_n`.
    pub e: u8,
    /// Parity of `f`.
    pub f: u8,
    pub pi: BTreeMap<String, Coefficient>,
    pub pi_minus: BTreeMap<String, Coefficient>,
    pub structure: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GGReport {
    pub case: GGCase,
    pub n: usize,
    pub t: u32,
    pub alpha: String,
    pub beta: String,
    pub r: u32,
    pub s: u32,
    pub pi: BTreeMap<String, Coefficient>,
    pub pi_minus: Option<BTreeMap<String, Coefficient>>,
    pub decision: OneDimRep,
    pub structure: String,
    /// `eigencheck` at `1` in the chosen induced module reproduces the `pi`
    /// scalars of the inducing generators.
    pub module_cross_check: bool,
    /// Case II: how the possible renormalizations of `T_n` move the answer.
    pub normalizations: Vec<Normalization>,
    pub notes: Vec<String>,
}

pub fn determine(input: &GGInput) -> Result<GGReport> {
    let params = input.hecke_params()?;
    let chars = generic_characters(input)?;
    let pi = scalar_table(input, &chars.chi_pi)?;
    check_roots(&params, &pi, "pi")?;
    let pi_minus = match &chars.chi_pi_minus {
        Some(chi) => {
            let t = scalar_table(input, chi)?;
            check_roots(&params, &t, "pi^-")?;
            Some(t)
        }
        None => None,
    };
    let decision = decide(&params, &pi, pi_minus.as_ref())?;

    let module = InducedModule::new(params, decision.clone())?;
    let gens = module.inducing_generators();
    let one = LaurentPoly::one(params.n);
    let cross = module.eigencheck(&one, &gens)?;
    let module_cross_check = cross.is_some_and(|t| gens.iter().all(|g| t[g] == pi[g]));

    let mut normalizations = Vec::new();
    let mut notes = Vec::new();
    if input.case == GGCase::II {
        let minus_chi = chars.chi_pi_minus.as_ref().expect("case II has pi^-");
        for (e, f) in [(0u8, 0u8), (1, 0), (0, 1), (1, 1)] {
            let sign = if e == 1 { -Coefficient::one() } else { Coefficient::one() };
            // X_n acts by 1 on pi and by -1 on pi^-
            let on_minus = if f == 1 { -&sign } else { sign.clone() };
            let a = scalar_table_with_tn(input, &chars.chi_pi, Some(sign))?;
            let b = scalar_table_with_tn(input, minus_chi, Some(on_minus))?;
            let rep = decide(&params, &a, Some(&b))?;
            normalizations.push(Normalization { e, f, pi: named(&a), pi_minus: named(&b), structure: rep.describe() });
        }
        notes.push("T_n acts trivially on pi and pi^- (normalization e = 0, f even)".into());
    }
    if input.case == GGCase::I {
        notes.push("chi(X_i) centred so that chi(X_i / X_{i+1}) = q^t; only the ratio enters".into());
    }
    let (r, s) = match input.case {
        GGCase::I => (0, 0),
        _ => (params.r, params.s),
    };
    Ok(GGReport {
        case: input.case,
        n: input.n,
        t: input.t,
        alpha: input.alpha.to_string(),
        beta: input.beta.to_string(),
        r,
        s,
        pi: named(&pi),
        pi_minus: pi_minus.as_ref().map(named),
        structure: decision.describe(),
        decision,
        module_cross_check,
        normalizations,
        notes,
    })
}

/// `BigRational` from `num/den`; a convenience for callers.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
