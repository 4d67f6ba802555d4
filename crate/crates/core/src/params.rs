//! The parameter space of irreducible admissible representations.
//!
//! A parameter is a pair `(λ, ν)` with `λ ∈ P` and `ν` a class in
//! `X = h*/(2πi/log q)·Q^∨`. With the imaginary part stored in units of
//! `2π/|log q|`, the lattice shift becomes an integral shift of `ν.im` by
//! `Q^∨` (embedded in `h*` through the form), so every condition below is an
//! exact rational check.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{frac, rat, Rat};
use crate::qnum::QParam;
use crate::rootsys::{Root, RootSystem, Series};
use crate::weight::{ComplexWeight, Weight};
use crate::weyl::{
    apply_unchecked, dominant_representative, orbit_words, reduced_word, WeylAction, WeylWord,
    DEFAULT_ORBIT_BOUND,
};

/// `(λ, ν)` labelling `V_q(λ, ν)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamPair {
    pub lambda: Weight,
    pub nu: ComplexWeight,
}

impl ParamPair {
    pub fn new(lambda: Weight, nu: ComplexWeight) -> Self {
        ParamPair { lambda, nu }
    }

    pub fn check(&self, rs: &RootSystem) -> Result<()> {
        self.lambda.check_rank(rs.rank())?;
        self.nu.check_rank(rs.rank())?;
        if !self.lambda.is_integral() {
            return Err(Error::NotIntegral(self.lambda.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(λ = {}, ν = {})", self.lambda, self.nu)
    }
}

/// `(Λ, Λ')` with `Ψ_Λ(M(Λ')) ≃ L(Λ − Λ', −Λ − Λ' − 2ρ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryOParam {
    pub big_lambda: ComplexWeight,
    pub lambda_prime: ComplexWeight,
}

/// How the imaginary part of `ν` is compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImagMode {
    /// Modulo `Q^∨` (the quotient `X`, `0 < q < 1`).
    Periodic,
    /// Exactly (`q = 1`, where `X = h*`).
    Exact,
}

impl ImagMode {
    pub fn for_q(q: &QParam) -> Self {
        if q.is_classical() {
            ImagMode::Exact
        } else {
            ImagMode::Periodic
        }
    }

    pub(crate) fn normalize(self, rs: &RootSystem, nu: ComplexWeight) -> ComplexWeight {
        match self {
            ImagMode::Periodic => x_reduce(rs, &nu),
            ImagMode::Exact => nu,
        }
    }
}

/// `(ν, α^∨) ∉ Z_{<0} + (2πi/log q_α)·Z` for every positive root `α`.
pub fn is_dominant(rs: &RootSystem, q: &QParam, nu: &ComplexWeight) -> bool {
    rs.positive_roots().iter().all(|b| {
        let re = b.coroot_pairing(&nu.re);
        if !(re.is_integer() && re.is_negative()) {
            return true;
        }
        let im = b.coroot_pairing(&nu.im);
        let on_lattice = if q.is_classical() {
            im.is_zero()
        } else {
            (im * &b.q_exponent).is_integer()
        };
        !on_lattice
    })
}

/// `(x, α) < 1` for every root `α`.
pub fn is_small(rs: &RootSystem, x: &Weight) -> bool {
    let one = rat(1);
    rs.positive_roots().iter().all(|b| {
        let p = b.coroot_pairing(x) * &b.q_exponent;
        p.abs() < one
    })
}

/// `log(q)/2π · Im ν` small; in the stored units this is `ν.im` small.
pub fn is_almost_real(rs: &RootSystem, nu: &ComplexWeight) -> bool {
    is_small(rs, &nu.im)
}

/// Canonical representative of `x` modulo the embedded coroot lattice, in
/// the half-open parallelepiped `[0,1)^rank` spanned by the `α_i^∨`.
pub fn x_reduce_weight(rs: &RootSystem, x: &Weight) -> Weight {
    if x.is_zero() {
        return x.clone();
    }
    let simple = rs.simple_root_coords(x);
    let mut out = Weight::zero(rs.rank());
    for (i, c) in simple.iter().enumerate() {
        // Coefficient of α_i^∨ is d_i times the coefficient of α_i.
        let t = frac(&(c * rat(rs.symmetrizer()[i])));
        if !t.is_zero() {
            out = &out + &rs.simple_coroot_vector(i + 1).scale(&t);
        }
    }
    out
}

/// Canonical element of the class of `ν` in `X`.
pub fn x_reduce(rs: &RootSystem, nu: &ComplexWeight) -> ComplexWeight {
    ComplexWeight::new(nu.re.clone(), x_reduce_weight(rs, &nu.im))
}

struct Reduced {
    dominant: Weight,
    word: WeylWord,
    nu: ComplexWeight,
    stabilizer: Vec<usize>,
}

fn dominate(rs: &RootSystem, p: &ParamPair, mode: ImagMode) -> Result<Reduced> {
    p.check(rs)?;
    let (dominant, word) = dominant_representative(rs, &p.lambda)?;
    let nu = mode.normalize(rs, apply_unchecked(rs, &word, &p.nu));
    let stabilizer = (1..=rs.rank())
        .filter(|&i| dominant.coords()[i - 1].is_zero())
        .collect();
    Ok(Reduced {
        dominant,
        word,
        nu,
        stabilizer,
    })
}

fn stabilizer_orbit(
    rs: &RootSystem,
    r: &Reduced,
    mode: ImagMode,
) -> Result<Vec<(ComplexWeight, WeylWord)>> {
    orbit_words(
        rs,
        r.nu.clone(),
        &r.stabilizer,
        |i, y| mode.normalize(rs, y.reflect_simple(rs, i)),
        DEFAULT_ORBIT_BOUND,
    )
}

/// `V(λ,ν) ≃ V(λ',ν')` iff `(λ,ν) = (wλ', wν')` in `P × X` for some `w`.
pub fn equivalent(rs: &RootSystem, p1: &ParamPair, p2: &ParamPair) -> Result<bool> {
    equivalent_in(rs, p1, p2, ImagMode::Periodic)
}

pub fn equivalent_in(
    rs: &RootSystem,
    p1: &ParamPair,
    p2: &ParamPair,
    mode: ImagMode,
) -> Result<bool> {
    let r1 = dominate(rs, p1, mode)?;
    let r2 = dominate(rs, p2, mode)?;
    if r1.dominant != r2.dominant {
        return Ok(false);
    }
    Ok(stabilizer_orbit(rs, &r2, mode)?
        .iter()
        .any(|(y, _)| *y == r1.nu))
}

/// Canonical representative of the `W`-orbit of `p`, and a word `w` with
/// `w·p` equal to it.
///
/// `λ` is made dominant first; then, over the stabilizer of `λ`, `ν.re` is
/// minimized lexicographically in `ω` coordinates, ties broken by the
/// reduced `ν.im`.
pub fn canonicalize(rs: &RootSystem, p: &ParamPair) -> Result<(ParamPair, WeylWord)> {
    let r = dominate(rs, p, ImagMode::Periodic)?;
    let orbit = stabilizer_orbit(rs, &r, ImagMode::Periodic)?;
    let (nu, s) = orbit
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("orbit contains its start");
    Ok((ParamPair::new(r.dominant, nu), s.then(&r.word)))
}

/// Some `w` with `wλ = λ` and `wν = −ν̄` in `X`, as a reduced word.
pub fn hermitian_exists(rs: &RootSystem, p: &ParamPair) -> Result<Option<WeylWord>> {
    hermitian_witness(rs, p, ImagMode::Periodic)
}

pub fn hermitian_witness(
    rs: &RootSystem,
    p: &ParamPair,
    mode: ImagMode,
) -> Result<Option<WeylWord>> {
    let r = dominate(rs, p, mode)?;
    let target = mode.normalize(rs, r.nu.neg_conj());
    let orbit = stabilizer_orbit(rs, &r, mode)?;
    let Some((_, s)) = orbit.into_iter().find(|(y, _)| *y == target) else {
        return Ok(None);
    };
    // u λ = d and s fixes d, so u⁻¹ s u fixes λ.
    let w = r.word.inverse().then(&s).then(&r.word);
    reduced_word(rs, &w).map(Some)
}

/// `λ ∈ P^∨` with `x − λ` small, for type `A_{n−1}`.
///
/// Lifts `x` to `R^n/R(1,…,1)`, floors every coordinate and projects back.
#[allow(non_snake_case)]
pub fn reduce_small_typeA(rs: &RootSystem, x: &Weight) -> Result<Weight> {
    if rs.series() != Series::A {
        return Err(Error::WrongType {
            expected: "A".into(),
            got: rs.label(),
        });
    }
    x.check_rank(rs.rank())?;
    let c = x.coords();
    let n = c.len() + 1;
    // ω_i = e_1 + … + e_i, so the lift has v_j = Σ_{i ≥ j} x_i and v_n = 0.
    let mut lift = vec![Rat::zero(); n];
    for j in (0..n - 1).rev() {
        lift[j] = &lift[j + 1] + &c[j];
    }
    let floors: Vec<Rat> = lift.iter().map(|v| v.floor()).collect();
    Ok(Weight::new(
        (0..n - 1).map(|i| &floors[i] - &floors[i + 1]).collect(),
    ))
}

/// Searches the coroot lattice ball `Σ|c_i| ≤ height_bound` for a nonzero
/// `x = Σ c_i α_i^∨` with `(x, α) < 2` for every root `α`; true if none exists.
pub fn coweight_gap_oracle(rs: &RootSystem, height_bound: u32) -> bool {
    let n = rs.rank();
    let rows: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|b| b.weight.to_ints().expect("integral"))
        .collect();
    let mut c = vec![0i64; n];
    fn search(rows: &[Vec<i64>], c: &mut Vec<i64>, k: usize, budget: i64) -> bool {
        if k == c.len() {
            if c.iter().all(|&x| x == 0) {
                return true;
            }
            // (Σ c_i α_i^∨, β) = Σ c_i (β, α_i^∨).
            let blocked = rows.iter().any(|row| {
                let p: i64 = row.iter().zip(c.iter()).map(|(a, b)| a * b).sum();
                p.abs() >= 2
            });
            return blocked;
        }
        for v in -budget..=budget {
            c[k] = v;
            if !search(rows, c, k + 1, budget - v.abs()) {
                return false;
            }
        }
        c[k] = 0;
        true
    }
    search(&rows, &mut c, 0, height_bound as i64)
}

/// `(λ, ν) = (Λ − Λ', −Λ − Λ' − 2ρ)`.
pub fn from_category_o(rs: &RootSystem, c: &CategoryOParam) -> Result<ParamPair> {
    c.big_lambda.check_rank(rs.rank())?;
    c.lambda_prime.check_rank(rs.rank())?;
    let diff = &c.big_lambda - &c.lambda_prime;
    if !diff.im.is_zero() || !diff.re.is_integral() {
        return Err(Error::NonIntegralDifference(diff.to_string()));
    }
    let sum = &c.big_lambda + &c.lambda_prime;
    let two_rho = rs.rho().scale(&rat(2));
    let nu = ComplexWeight::new(&(-&sum.re) - &two_rho, -&sum.im);
    Ok(ParamPair::new(diff.re, x_reduce(rs, &nu)))
}

/// `Λ = (λ − ν)/2 − ρ`, `Λ' = (−λ − ν)/2 − ρ`.
pub fn to_category_o(rs: &RootSystem, p: &ParamPair) -> Result<CategoryOParam> {
    p.check(rs)?;
    let half = Rat::new(1.into(), 2.into());
    let lam = ComplexWeight::real(p.lambda.clone());
    let minus = |v: ComplexWeight| {
        let h = v.scale(&half);
        ComplexWeight::new(&h.re - rs.rho(), h.im)
    };
    Ok(CategoryOParam {
        big_lambda: minus(&lam - &p.nu),
        lambda_prime: minus(&(-&lam) - &p.nu),
    })
}

/// Outcome of the nonvanishing test for `Ψ_Λ(V(Λ'))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiOutcome {
    /// `Ψ_Λ(V(Λ')) ≃ V(λ, ν)`.
    Nonzero,
    /// A positive root with `(Λ+ρ, α^∨) = 0` and `(Λ'+ρ, α^∨) ∈ Z_{≥0}`.
    Vanishes(Root),
}

pub fn psi_nonvanishing(rs: &RootSystem, c: &CategoryOParam) -> Result<PsiOutcome> {
    c.big_lambda.check_rank(rs.rank())?;
    c.lambda_prime.check_rank(rs.rank())?;
    let big = ComplexWeight::new(&c.big_lambda.re + rs.rho(), c.big_lambda.im.clone());
    let prime = ComplexWeight::new(&c.lambda_prime.re + rs.rho(), c.lambda_prime.im.clone());
    for b in rs.positive_roots() {
        let fixes_big = b.coroot_pairing(&big.re).is_zero() && b.coroot_pairing(&big.im).is_zero();
        if !fixes_big {
            continue;
        }
        let re = b.coroot_pairing(&prime.re);
        if re.is_integer() && !re.is_negative() && b.coroot_pairing(&prime.im).is_zero() {
            return Ok(PsiOutcome::Vanishes(b.clone()));
        }
    }
    Ok(PsiOutcome::Nonzero)
}

/// The minimal K-type `|λ|` of `L(λ, ν)`.
pub fn minimal_ktype(rs: &RootSystem, lam: &Weight) -> Result<Weight> {
    if !lam.is_integral() {
        return Err(Error::NotIntegral(lam.to_string()));
    }
    Ok(dominant_representative(rs, lam)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingDirection {
    /// `V(λ,ν)` is a submodule of `L(λ,ν)`.
    Sub,
    /// `V(λ,ν)` is a quotient of `L(λ,ν)`.
    Quot,
    Both,
    Neither,
}

impl fmt::Display for EmbeddingDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EmbeddingDirection::Sub => "Sub",
            EmbeddingDirection::Quot => "Quot",
            EmbeddingDirection::Both => "Both",
            EmbeddingDirection::Neither => "Neither",
        };
        f.write_str(s)
    }
}

/// Sub iff `½(λ−ν) − ρ` is dominant; Quot iff `−½(λ−ν) − ρ` is.
pub fn embedding_direction(
    rs: &RootSystem,
    q: &QParam,
    p: &ParamPair,
) -> Result<EmbeddingDirection> {
    p.check(rs)?;
    let half = Rat::new(1.into(), 2.into());
    let diff = (&ComplexWeight::real(p.lambda.clone()) - &p.nu).scale(&half);
    let shift = |v: ComplexWeight| ComplexWeight::new(&v.re - rs.rho(), v.im);
    let sub = is_dominant(rs, q, &shift(diff.clone()));
    let quot = is_dominant(rs, q, &shift(-&diff));
    Ok(match (sub, quot) {
        (true, true) => EmbeddingDirection::Both,
        (true, false) => EmbeddingDirection::Sub,
        (false, true) => EmbeddingDirection::Quot,
        (false, false) => EmbeddingDirection::Neither,
    })
}
