//! Rank-one `H`-structures on `A`: modules whose underlying space is the
//! Laurent ring itself, generated by `1`, with `T_1 .. T_{n-1}` acting on
//! `1` by a common scalar and `T_n` acting on `1` by a polynomial in `X_n`.
//!
//! The induced modules `H (x)_{H'} eps` for `H' = H_{S_n}, H_0, H_n` are the
//! special cases where `T_n . 1` is a constant (`H_0`) or the rank-one star
//! solution that makes `1` a `T_0`-eigenvector (`H_n`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::coeffring::Coefficient;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::heckealg::{longest_root_word, CaseTag, HeckeElement, HeckeParams, T0Exponent};
use crate::laurent::{Exponent, LaurentPoly};
use crate::starsolver::{check_star, enumerate_solutions, families_in_window, family_poly, identify_family, Sign, SolutionFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Subalgebra {
    /// Generated by `T_1 .. T_{n-1}`.
    HSn,
    /// The finite Hecke algebra `T_1 .. T_n`.
    H0,
    /// Generated by `T_0 .. T_{n-1}`.
    Hn,
}

/// A character of a parabolic subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OneDimRep {
    pub subalgebra: Subalgebra,
    /// Common scalar of `T_1 .. T_{n-1}`; absent when `n = 1`.
    pub lambda_a: Option<Coefficient>,
    /// Scalar of `T_n` (for `H0`) or `T_0` (for `Hn`); absent for `HSn`.
    pub lambda_end: Option<Coefficient>,
}

impl OneDimRep {
    pub fn describe(&self) -> String {
        let show = |c: &Option<Coefficient>| c.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "-".into());
        match self.subalgebra {
            Subalgebra::HSn => format!("H (x)_HSn eps[{}]", show(&self.lambda_a)),
            Subalgebra::H0 => format!("H (x)_H0 eps[Tn={}, Ti={}]", show(&self.lambda_end), show(&self.lambda_a)),
            Subalgebra::Hn => format!("H (x)_Hn eps[T0={}, Ti={}]", show(&self.lambda_end), show(&self.lambda_a)),
        }
    }

    fn validate(&self, params: &HeckeParams) -> Result<()> {
        let k = params.constants();
        let minus_one = -Coefficient::one();
        let root_of = |x: &Coefficient, p: &Coefficient| *x == minus_one || x == p;
        let bad = |what: &str| Err(Error::InvalidParams(format!("{what} for {}", self.describe())));
        match (params.n > 1, &self.lambda_a) {
            (true, None) => return bad("missing T_i scalar"),
            (false, Some(_)) => return bad("n = 1 has no T_i scalar"),
            (true, Some(l)) if !root_of(l, &k.qt) => return bad("T_i scalar is not -1 or q^t"),
            _ => {}
        }
        match (params.case_tag, self.subalgebra, &self.lambda_end) {
            (CaseTag::A, Subalgebra::HSn, None) => Ok(()),
            (CaseTag::C, Subalgebra::H0, Some(l)) if root_of(l, &k.qr) => Ok(()),
            (CaseTag::C, Subalgebra::Hn, Some(l)) if root_of(l, &k.qs) => Ok(()),
            _ => bad("subalgebra or end scalar does not fit the algebra"),
        }
    }
}

/// `A` with `T_i . 1 = lambda_A` (`i < n`) and `T_n . 1 = tn_on_one`.
pub struct RankOneModule {
    params: HeckeParams,
    lambda_a: Coefficient,
    tn_on_one: LaurentPoly,
    /// Generator images of monomials; the action is linear, and braid words
    /// revisit the same monomials constantly.
    cache: RwLock<HashMap<(usize, Exponent), Arc<LaurentPoly>>>,
}

impl Clone for RankOneModule {
    fn clone(&self) -> Self {
        RankOneModule {
            params: self.params,
            lambda_a: self.lambda_a.clone(),
            tn_on_one: self.tn_on_one.clone(),
            cache: RwLock::default(),
        }
    }
}

impl PartialEq for RankOneModule {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.lambda_a == other.lambda_a && self.tn_on_one == other.tn_on_one
    }
}

impl Eq for RankOneModule {}

impl fmt::Debug for RankOneModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RankOneModule")
            .field("params", &self.params)
            .field("lambda_a", &self.lambda_a)
            .field("tn_on_one", &self.tn_on_one)
            .finish()
    }
}

impl RankOneModule {
    /// `tn_on_one` is univariate (read as a polynomial in `X_n`) and must
    /// solve the star equation; ignored in type A.
    pub fn new(params: HeckeParams, lambda_a: Option<Coefficient>, tn_on_one: &LaurentPoly) -> Result<Self> {
        let k = params.constants();
        if params.case_tag == CaseTag::C && !check_star(tn_on_one, &k) {
            return Err(Error::NotASolution(tn_on_one.render(Some("X"))));
        }
        Ok(RankOneModule {
            params,
            // with n = 1 there is no T_i, so the value never enters
            lambda_a: lambda_a.unwrap_or_else(|| k.qt.clone()),
            tn_on_one: tn_on_one.embed_last(params.n),
            cache: RwLock::default(),
        })
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn tn_on_one(&self) -> &LaurentPoly {
        &self.tn_on_one
    }

    /// `T_i . f` for `i` in `0..=n` (`1..n` in type A).
    pub fn act_gen(&self, i: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        if i == 0 {
            if self.params.case_tag != CaseTag::C {
                return Err(Error::InvalidIndex { index: 0, reason: "T_0 exists only in type C~".into() });
            }
        } else {
            self.params.check_finite_index(i)?;
        }
        let mut acc = LaurentPoly::zero(self.params.n);
        for (e, c) in f.terms() {
            acc.add_scaled(&*self.act_gen_monomial(i, e)?, c);
        }
        Ok(acc)
    }

    fn act_gen_monomial(&self, i: usize, e: &Exponent) -> Result<Arc<LaurentPoly>> {
        let key = (i, e.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(hit.clone());
        }
        let m = LaurentPoly::monomial(e.clone(), Coefficient::one());
        let image = Arc::new(if i == 0 { self.act_t0(&m)? } else { self.act_gen_direct(i, &m)? });
        self.cache.write().expect("cache lock").insert(key, Arc::clone(&image));
        Ok(image)
    }

    fn act_gen_direct(&self, i: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        let n = self.params.n;
        let k = self.params.constants();
        if i < n {
            Ok(&f.poly_swap(i)?.scale(&self.lambda_a) + &f.divided_diff_a(i)?.scale(&(&k.qt - &Coefficient::one())))
        } else {
            let mut e = vec![0; n];
            e[n - 1] = -1;
            let factor = LaurentPoly::from_terms(n, [(vec![0; n], k.b.clone()), (e, k.c.clone())]);
            Ok(&(&f.poly_invert_last() * &self.tn_on_one) + &(&factor * &f.divided_diff_c()?))
        }
    }

    /// `T_i^{-1} . f = p^{-1} (T_i . f - (p - 1) f)`.
    pub fn act_gen_inverse(&self, i: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        let p = self.params.quadratic_param(i);
        let pinv = p.inverse().expect("quadratic parameters are powers of v");
        let shifted = &self.act_gen(i, f)? - &f.scale(&(&p - &Coefficient::one()));
        Ok(shifted.scale(&pinv))
    }

    fn act_t0(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        let n = self.params.n;
        let mut h = f.clone();
        for i in longest_root_word(n).into_iter().rev() {
            h = self.act_gen_inverse(i, &h)?;
        }
        let coeff = Coefficient::v_pow(T0Exponent::Standard.v_exponent(&self.params));
        Ok((&LaurentPoly::var(n, 1) * &h).scale(&coeff))
    }

    /// Extend the generator action linearly along reduced words.
    pub fn act_element(&self, h: &HeckeElement, f: &LaurentPoly) -> Result<LaurentPoly> {
        if *h.params() != self.params {
            return Err(Error::ParamMismatch);
        }
        let mut acc = LaurentPoly::zero(self.params.n);
        for (w, p) in h.terms() {
            let mut g = f.clone();
            for i in w.reduced_word().into_iter().rev() {
                g = self.act_gen(i, &g)?;
            }
            acc = &acc + &(p * &g);
        }
        Ok(acc)
    }

    /// The scalar table of `g` when it is a common eigenvector of `gens`.
    pub fn eigencheck(&self, g: &LaurentPoly, gens: &[usize]) -> Result<Option<BTreeMap<usize, Coefficient>>> {
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let mut table = BTreeMap::new();
        for &i in gens {
            match self.act_gen(i, g)?.scalar_ratio(g) {
                Some(l) => {
                    table.insert(i, l);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(table))
    }

    /// Whether multiplication by `f` commutes with `T_1 .. T_n` on every
    /// monomial with exponents in `[-degree, degree]`. Together with
    /// commuting with `A` this makes it an endomorphism (`T_0` lies in the
    /// algebra they generate).
    pub fn center_check(&self, f: &LaurentPoly, degree: i32, exec: Exec) -> Result<bool> {
        let panel = monomial_panel(self.params.n, degree);
        let results = exec.map(&panel, |m| -> Result<bool> {
            for i in self.params.finite_generators() {
                if self.act_gen(i, &(f * m))? != f * &self.act_gen(i, m)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// All monomials with exponents in `[-degree, degree]`.
pub fn monomial_panel(n: usize, degree: i32) -> Vec<LaurentPoly> {
    let mut exps: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|e| (-degree..=degree).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    exps.into_iter().map(|e| LaurentPoly::monomial(e, Coefficient::one())).collect()
}

/// `H (x)_{H'} eps` realized on `A` via `a (x) 1 <-> a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedModule {
    pub rep: OneDimRep,
    pub module: RankOneModule,
}

impl InducedModule {
    pub fn new(params: HeckeParams, rep: OneDimRep) -> Result<Self> {
        rep.validate(&params)?;
        let tn_on_one = match rep.subalgebra {
            Subalgebra::HSn => LaurentPoly::one(1),
            Subalgebra::H0 => LaurentPoly::constant(1, rep.lambda_end.clone().expect("validated")),
            Subalgebra::Hn => hn_tn_on_one(params, rep.lambda_a.clone(), rep.lambda_end.as_ref().expect("validated"))?,
        };
        let module = RankOneModule::new(params, rep.lambda_a.clone(), &tn_on_one)?;
        Ok(InducedModule { rep, module })
    }

    pub fn act_gen(&self, i: usize, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.module.act_gen(i, f)
    }

    pub fn act_element(&self, h: &HeckeElement, f: &LaurentPoly) -> Result<LaurentPoly> {
        self.module.act_element(h, f)
    }

    pub fn eigencheck(&self, g: &LaurentPoly, gens: &[usize]) -> Result<Option<BTreeMap<usize, Coefficient>>> {
        self.module.eigencheck(g, gens)
    }

    pub fn center_check(&self, f: &LaurentPoly, degree: i32, exec: Exec) -> Result<bool> {
        self.module.center_check(f, degree, exec)
    }

    /// Generators of the inducing subalgebra, on which `1` is an eigenvector.
    pub fn inducing_generators(&self) -> Vec<usize> {
        let n = self.module.params.n;
        let mut gens: Vec<usize> = (1..n).collect();
        match self.rep.subalgebra {
            Subalgebra::HSn => {}
            Subalgebra::H0 => gens.push(n),
            Subalgebra::Hn => gens.insert(0, 0),
        }
        gens
    }
}

/// The `T_n`-action on `1` in the `H_n`-induced module: the rank-one star
/// solution of support in `[-1, 1]` on which `T_0 . 1 = mu`. It is found by
/// search rather than assumed, and must be unique.
fn hn_tn_on_one(params: HeckeParams, lambda_a: Option<Coefficient>, mu: &Coefficient) -> Result<LaurentPoly> {
    let k = params.constants();
    let one = LaurentPoly::one(params.n);
    let mut hits = Vec::new();
    for f in enumerate_solutions(&k, -1, 1, Exec::Sequential)? {
        let m = RankOneModule::new(params, lambda_a.clone(), &f)?;
        if m.act_gen(0, &one)? == LaurentPoly::constant(params.n, mu.clone()) {
            hits.push(f);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().expect("one hit")),
        c => Err(Error::InconsistentTables(format!("{c} rank-one T_n actions make 1 a T_0-eigenvector with eigenvalue {mu}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub input: String,
    pub family: String,
    pub rep: OneDimRep,
    pub structure: String,
    /// `g_1 = (X_1 .. X_n)^shift`.
    pub shift: i32,
    /// `T_n . g_1 = tn_on_g1 * g_1`.
    pub tn_on_g1: String,
    /// Eigenvalue of `T_0` on `g_1` (the `H_n` case).
    pub mu: Option<Coefficient>,
    pub eigenvalues: BTreeMap<String, Coefficient>,
    /// `a -> a g_1` intertwines the induced module with the given one on a
    /// monomial panel.
    pub isomorphism_verified: bool,
    pub notes: Vec<String>,
}

fn shift_for(fam: SolutionFamily) -> i32 {
    match fam {
        SolutionFamily::ConstMinusOne | SolutionFamily::ConstQr => 0,
        SolutionFamily::FamI(d) | SolutionFamily::FamII(d) | SolutionFamily::FamIII(d, _) => -(d as i32),
        SolutionFamily::FamV(d) | SolutionFamily::FamVI(d) => d as i32,
        SolutionFamily::FamIV(d, _) => d as i32 + 1,
    }
}

/// Classify the module `A` with `T_i . 1 = lambda_A`, `T_n . 1 = f`.
pub fn classify(params: HeckeParams, f: &LaurentPoly, lambda_a: Option<Coefficient>) -> Result<Classification> {
    if params.case_tag != CaseTag::C {
        return Err(Error::InvalidParams("classification concerns type C~".into()));
    }
    let k = params.constants();
    let n = params.n;
    if f.nvars() != 1 {
        return Err(Error::InvalidParams("f must be a polynomial in X alone".into()));
    }
    if !check_star(f, &k) {
        return Err(Error::NotASolution(f.render(Some("X"))));
    }
    let fam = identify_family(f, &k)
        .ok_or_else(|| Error::InconsistentTables(format!("solution {} is outside the catalogue", f.render(Some("X")))))?;
    let pi = RankOneModule::new(params, lambda_a.clone(), f)?;
    let shift = shift_for(fam);
    let g1 = LaurentPoly::det_pow(n, shift);

    let tn_g1 = pi.act_gen(n, &g1)?;
    let ratio = (&tn_g1 * &LaurentPoly::det_pow(n, -shift))
        .restrict_to_last()
        .ok_or_else(|| Error::InconsistentTables("T_n g_1 / g_1 involves X_1 .. X_{n-1}".into()))?;
    let mut notes = Vec::new();
    let (rep, mu, gens) = if let Some(lambda_end) = ratio.as_constant() {
        let rep = OneDimRep { subalgebra: Subalgebra::H0, lambda_a: lambda_a.clone(), lambda_end: Some(lambda_end.clone()) };
        if lambda_end == k.qr && k.qr != k.qt {
            notes.push(format!("T_n acts on g_1 by q^r = {}, the root of its quadratic (not q^t)", k.qr));
        }
        let gens: Vec<usize> = (1..=n).collect();
        (rep, None, gens)
    } else {
        let base = [Sign::Plus, Sign::Minus]
            .into_iter()
            .find(|&sg| family_poly(SolutionFamily::FamIII(0, sg), &k).ok().as_ref() == Some(&ratio))
            .ok_or_else(|| Error::InconsistentTables(format!("T_n g_1 / g_1 = {} is not of the form b +- v^(r+-s)/X", ratio.render(Some("X")))))?;
        let table = pi
            .eigencheck(&g1, &[0])?
            .ok_or_else(|| Error::InconsistentTables("g_1 is not a T_0-eigenvector".into()))?;
        let mu = table[&0].clone();
        notes.push(format!("T_n acts on g_1 by III(0,{}); T_0 eigenvalue {mu}", if base == Sign::Plus { '+' } else { '-' }));
        let rep = OneDimRep { subalgebra: Subalgebra::Hn, lambda_a: lambda_a.clone(), lambda_end: Some(mu.clone()) };
        let gens: Vec<usize> = (0..n).collect();
        (rep, Some(mu), gens)
    };
    rep.validate(&params)?;
    let table = pi
        .eigencheck(&g1, &gens)?
        .ok_or_else(|| Error::InconsistentTables("g_1 is not a common eigenvector".into()))?;
    let induced = InducedModule::new(params, rep.clone())?;
    let mut isomorphic = true;
    // a (x) 1 -> a g_1 must commute with every generator
    'panel: for a in monomial_panel(n, 1) {
        for i in 0..=n {
            if pi.act_gen(i, &(&a * &g1))? != &induced.act_gen(i, &a)? * &g1 {
                isomorphic = false;
                break 'panel;
            }
        }
    }
    Ok(Classification {
        input: f.render(Some("X")),
        family: fam.to_string(),
        structure: rep.describe(),
        rep,
        shift,
        tn_on_g1: ratio.render(Some("X")),
        mu,
        eigenvalues: table.into_iter().map(|(i, c)| (format!("T{i}"), c)).collect(),
        isomorphism_verified: isomorphic,
        notes,
    })
}

/// `T_0 . 1` when `T_n . 1 = b +- v^(r+-s) X_n^-1`; must be a scalar.
pub fn verify_t0_lemma(params: HeckeParams, lambda_a: Option<Coefficient>, sign: Sign) -> Result<Coefficient> {
    if params.case_tag != CaseTag::C {
        return Err(Error::InvalidParams("T_0 exists only in type C~".into()));
    }
    let k = params.constants();
    let m = RankOneModule::new(params, lambda_a, &family_poly(SolutionFamily::FamIII(0, sign), &k)?)?;
    let one = LaurentPoly::one(params.n);
    let table = m
        .eigencheck(&one, &[0])?
        .ok_or_else(|| Error::InconsistentTables("1 is not a T_0-eigenvector".into()))?;
    let mu = table[&0].clone();
    if mu != k.qs && mu != -Coefficient::one() {
        return Err(Error::InconsistentTables(format!("T_0 eigenvalue {mu} is not a root of (x - q^s)(x + 1)")));
    }
    Ok(mu)
}

/// The `T_i` scalars to try: both roots when `n > 1`, none otherwise.
pub fn lambda_a_choices(params: &HeckeParams) -> Vec<Option<Coefficient>> {
    if params.n == 1 {
        vec![None]
    } else {
        vec![Some(-Coefficient::one()), Some(params.constants().qt)]
    }
}

/// Distinct structures reached by classifying every catalogued solution
/// with support in `[-window, window]` under every `T_i` scalar.
pub fn all_structures(params: HeckeParams, window: i32, exec: Exec) -> Result<Vec<OneDimRep>> {
    let k = params.constants();
    let mut jobs = Vec::new();
    for fam in families_in_window(&k, -window, window) {
        for la in lambda_a_choices(&params) {
            jobs.push((family_poly(fam, &k)?, la));
        }
    }
    let results = exec.map(&jobs, |(f, la)| classify(params, f, la.clone()));
    let mut reps = BTreeSet::new();
    for r in results {
        let c = r?;
        if !c.isomorphism_verified {
            return Err(Error::InconsistentTables(format!("isomorphism check failed for {}", c.input)));
        }
        reps.insert(c.rep);
    }
    Ok(reps.into_iter().collect())
}
