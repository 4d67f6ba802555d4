//! Intertwiner determinants and unitarity decisions.
//!
//! The rank-one operator for a simple root `α` acts on the spin-`s` part of
//! a K-type by `∏_{k=|m|+1}^{s} (k−z)_{q_α}/(k+z)_{q_α}` with
//! `z = ½(ν, α^∨)` and `m = ½(λ, α^∨)`. Longer Weyl elements compose these
//! right to left along a reduced word, transporting `(λ, ν)` at each step.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::number::{fmt_rat, ratio, ComplexScalar, HalfInt, Rat};
use crate::params::{
    hermitian_witness, is_almost_real, reduce_small_typeA, ImagMode, ParamPair,
};
use crate::qnum::{QFactors, QParam, QValue, Sign};
use crate::rootsys::{RootSystem, Series};
use crate::weight::{ComplexWeight, Weight};
use crate::weights::{ktype_multiplicity, ktypes_up_to, sl2_spin_content};
use crate::weyl::{dominant_representative, element_length, WeylAction, WeylWord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Unitary,
    NotUnitary,
    NoHermitianForm,
    UnknownAtCutoff,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Unitary => "Unitary",
            VerdictKind::NotUnitary => "NotUnitary",
            VerdictKind::NoHermitianForm => "NoHermitianForm",
            VerdictKind::UnknownAtCutoff => "UnknownAtCutoff",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitarityVerdict {
    pub kind: VerdictKind,
    /// K-type and path point `t ∈ [0, 1]` where positivity fails.
    pub witness: Option<(Weight, Rat)>,
    /// `None` for exact decisions valid on every K-type.
    pub cutoff: Option<u32>,
    pub certified_ktypes: usize,
}

impl UnitarityVerdict {
    fn exact(kind: VerdictKind) -> Self {
        UnitarityVerdict {
            kind,
            witness: None,
            cutoff: None,
            certified_ktypes: 0,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.kind != VerdictKind::UnknownAtCutoff
    }
}

fn push_rank_one(
    out: &mut QFactors,
    d: &Rat,
    m: HalfInt,
    s: HalfInt,
    z: &ComplexScalar,
    e: i64,
) -> Result<()> {
    if s.doubled() < m.abs().doubled() || (s.doubled() - m.doubled()) % 2 != 0 {
        return Err(Error::NotHalfInteger(format!("spin {s} against m = {m}")));
    }
    let mut k = m.abs().to_rat() + Rat::one();
    let top = s.to_rat();
    while k <= top {
        let kk = ComplexScalar::real(k.clone());
        out.push(d, &(&kk - z), e)?;
        out.push(d, &(&kk + z), -e)?;
        k += Rat::one();
    }
    Ok(())
}

/// `c_s(z) = ∏_{k=|m|+1}^{s} (k−z)_{q_α}/(k+z)_{q_α}` with `q_α = q^{|α|²/2}`.
pub fn rank_one_eigenvalue(
    q: &QParam,
    alpha_len_sq: &Rat,
    m: HalfInt,
    s: HalfInt,
    z: &ComplexScalar,
) -> Result<QValue> {
    let mut f = QFactors::new(q.clone());
    push_rank_one(&mut f, &(alpha_len_sq * ratio(1, 2)), m, s, z, 1)?;
    Ok(f.value())
}

fn check_ktype(mu: &Weight) -> Result<()> {
    if !(mu.is_integral() && mu.is_dominant()) {
        return Err(Error::NotDominant(mu.to_string()));
    }
    Ok(())
}

fn push_rank_one_det(
    out: &mut QFactors,
    rs: &RootSystem,
    mu: &Weight,
    lam: &Weight,
    i: usize,
    z: &ComplexScalar,
) -> Result<()> {
    let spins = sl2_spin_content(rs, mu, lam, i)?;
    let m = HalfInt::from_rat(&(&lam.coords()[i - 1] * ratio(1, 2)))?;
    let d = &rs.simple_root(i).q_exponent;
    for (s, n) in spins.iter() {
        push_rank_one(out, d, m, s, z, n as i64)?;
    }
    Ok(())
}

/// Determinant of the rank-one operator for `α_i` on the `μ`-isotypic
/// multiplicity space `V(μ)_λ`.
pub fn rank_one_det(
    rs: &RootSystem,
    q: &QParam,
    mu: &Weight,
    lam: &Weight,
    i: usize,
    z: &ComplexScalar,
) -> Result<QValue> {
    check_ktype(mu)?;
    let mut f = QFactors::new(q.clone());
    push_rank_one_det(&mut f, rs, mu, lam, i, z)?;
    Ok(f.value())
}

/// `z = ½(ν, α_i^∨)`.
fn spectral(nu: &ComplexWeight, i: usize) -> ComplexScalar {
    ComplexScalar::new(&nu.re.coords()[i - 1] * ratio(1, 2), &nu.im.coords()[i - 1] * ratio(1, 2))
}

/// Factorized determinant of `T^w` on the K-type `μ`.
pub fn intertwiner_factors(
    rs: &RootSystem,
    q: &QParam,
    mu: &Weight,
    p: &ParamPair,
    word: &WeylWord,
) -> Result<QFactors> {
    check_ktype(mu)?;
    mu.check_rank(rs.rank())?;
    p.check(rs)?;
    let len = element_length(rs, word)?;
    if len != word.len() {
        return Err(Error::NotReduced {
            word: word.to_string(),
            len: word.len(),
            reduced: len,
        });
    }
    let mut out = QFactors::new(q.clone());
    let mut lam = p.lambda.clone();
    let mut nu = p.nu.clone();
    for &i in word.letters().iter().rev() {
        push_rank_one_det(&mut out, rs, mu, &lam, i, &spectral(&nu, i))?;
        lam = lam.reflect_simple(rs, i);
        nu = nu.reflect_simple(rs, i);
    }
    Ok(out)
}

pub fn intertwiner_det(
    rs: &RootSystem,
    q: &QParam,
    mu: &Weight,
    p: &ParamPair,
    word: &WeylWord,
) -> Result<QValue> {
    Ok(intertwiner_factors(rs, q, mu, p, word)?.value())
}

/// Exact decision in rank one.
pub fn signature_rank1(
    rs: &RootSystem,
    q: &QParam,
    p: &ParamPair,
    cutoff: u32,
) -> Result<UnitarityVerdict> {
    if rs.series() != Series::A || rs.rank() != 1 {
        return Err(Error::WrongType {
            expected: "A1".into(),
            got: rs.label(),
        });
    }
    p.check(rs)?;
    let Some(w) = hermitian_witness(rs, p, ImagMode::for_q(q))? else {
        return Ok(UnitarityVerdict::exact(VerdictKind::NoHermitianForm));
    };
    if w.is_empty() {
        // ν ≡ −ν̄ forces ν.re = 0: every factor has unit modulus.
        return Ok(UnitarityVerdict::exact(VerdictKind::Unitary));
    }
    // w = s, so λ = 0 and ν.im ∈ {0, ω₁} modulo the lattice; the half-period
    // flips numerator and denominator alike, leaving the real case z = x.
    let x = (&p.nu.re.coords()[0] * ratio(1, 2)).abs();
    let z = ComplexScalar::real(x.clone());
    let last = std::cmp::max(cutoff as i64, x.ceil().to_integer().try_into().unwrap_or(i64::MAX) + 1);
    let mut certified = 0usize;
    let mut running = QFactors::new(q.clone());
    for s in 1..=last {
        let mut step = QFactors::new(q.clone());
        push_rank_one(&mut step, &Rat::one(), HalfInt::from_int(s - 1), HalfInt::from_int(s), &z, 1)?;
        running.extend(&step, 1)?;
        match running.exact_sign() {
            Some(Sign::Negative) => {
                return Ok(UnitarityVerdict {
                    kind: VerdictKind::NotUnitary,
                    witness: Some((Weight::from_ints(&[2 * s]), Rat::one())),
                    cutoff: None,
                    certified_ktypes: certified,
                });
            }
            Some(Sign::Positive) => certified += 1,
            // The annihilator of the form: excluded from V.
            Some(Sign::Zero) => {}
            None => unreachable!("real spectral parameter"),
        }
    }
    Ok(UnitarityVerdict {
        kind: VerdictKind::Unitary,
        witness: None,
        cutoff: None,
        certified_ktypes: certified,
    })
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub cutoff: u32,
    pub steps: u32,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cutoff: 12,
            steps: 64,
            jobs: None,
        }
    }
}

enum KtypeOutcome {
    Certified,
    Excluded,
    Uncertain,
    Vanishing,
    Negative(Rat),
}

/// `(k + slope·t + i·im)_{q^d}^e` along the path.
struct LinearFactor {
    d: Rat,
    k: Rat,
    slope: Rat,
    im: Rat,
    e: i64,
}

fn collect_linear(
    rs: &RootSystem,
    mu: &Weight,
    p: &ParamPair,
    word: &WeylWord,
) -> Result<Vec<LinearFactor>> {
    let mut out = Vec::new();
    let mut lam = p.lambda.clone();
    let mut nu = p.nu.clone();
    for &i in word.letters().iter().rev() {
        let spins = sl2_spin_content(rs, mu, &lam, i)?;
        let m = HalfInt::from_rat(&(&lam.coords()[i - 1] * ratio(1, 2)))?;
        let z = spectral(&nu, i);
        let d = rs.simple_root(i).q_exponent.clone();
        for (s, n) in spins.iter() {
            let mut k = m.abs().to_rat() + Rat::one();
            while k <= s.to_rat() {
                for (sign, e) in [(-1i64, n as i64), (1, -(n as i64))] {
                    let sg = Rat::from_integer(sign.into());
                    out.push(LinearFactor {
                        d: d.clone(),
                        k: k.clone(),
                        slope: &sg * &z.re,
                        im: &sg * &z.im,
                        e,
                    });
                }
                k += Rat::one();
            }
        }
        lam = lam.reflect_simple(rs, i);
        nu = nu.reflect_simple(rs, i);
    }
    Ok(out)
}

/// Exact sign model of a product of linear factors along the path.
///
/// Denominators have positive real part on the whole path once `ν.re` is
/// dominant, and complex factors must pair with their conjugates, so the sign
/// at `t` is decided by the real numerators and denominators alone.
struct PathSign {
    /// `(k, slope, flipped, exponent)` with odd exponent parity kept exactly.
    real: Vec<(Rat, Rat, bool, i64)>,
    paired: bool,
}

impl PathSign {
    fn new(q: &QParam, factors: &[LinearFactor]) -> Self {
        let mut merged: BTreeMap<(Rat, Rat, Rat, Rat), i64> = BTreeMap::new();
        for f in factors {
            let d = if q.is_classical() { Rat::one() } else { f.d.clone() };
            *merged
                .entry((d, f.k.clone(), f.slope.clone(), f.im.clone()))
                .or_insert(0) += f.e;
        }
        merged.retain(|_, e| *e != 0);
        let mut real = Vec::new();
        let mut paired = true;
        for ((d, k, slope, im), &e) in &merged {
            let twice = d * im * Rat::from_integer(2.into());
            let is_real = if q.is_classical() { im.is_zero() } else { twice.is_integer() };
            if is_real {
                let flipped = !q.is_classical() && num_integer::Integer::is_odd(&twice.to_integer());
                real.push((k.clone(), slope.clone(), flipped, e));
            } else if merged.get(&(d.clone(), k.clone(), slope.clone(), -im)) != Some(&e) {
                paired = false;
            }
        }
        PathSign { real, paired }
    }

    fn sign_at(&self, t: &Rat) -> Result<Option<Sign>> {
        let mut sign = Sign::Positive;
        for (k, slope, flipped, e) in &self.real {
            let mut s = Sign::of(&(k + slope * t));
            if s == Sign::Zero {
                if *e < 0 {
                    return Err(Error::PoleOnPath(fmt_rat(t)));
                }
                return Ok(Some(Sign::Zero));
            }
            if *flipped {
                s = s.flip();
            }
            if e.rem_euclid(2) == 1 {
                sign = sign.times(s);
            }
        }
        Ok(self.paired.then_some(sign))
    }

    /// Real zeros of numerator factors in `(0, 1)`; a denominator zero on
    /// `[0, 1]` is a pole.
    fn interior_zero(&self) -> Result<bool> {
        let one = Rat::one();
        let mut found = false;
        for (k, slope, _, e) in &self.real {
            if slope.is_zero() {
                continue;
            }
            let t = -(k / slope);
            if t.is_negative() || t > one {
                continue;
            }
            if *e < 0 {
                return Err(Error::PoleOnPath(fmt_rat(&t)));
            }
            if t.is_positive() && t < one {
                found = true;
            }
        }
        Ok(found)
    }
}

fn scan_ktype(
    rs: &RootSystem,
    q: &QParam,
    mu: &Weight,
    p: &ParamPair,
    word: &WeylWord,
    steps: u32,
) -> Result<KtypeOutcome> {
    let dim = ktype_multiplicity(rs, mu, &p.lambda)?;
    let model = PathSign::new(q, &collect_linear(rs, mu, p, word)?);
    let interior_zero = model.interior_zero()?;
    let end = model.sign_at(&Rat::one())?;
    // Samples: the sign must be constant between exact zeros.
    let mut previous = None;
    for j in 0..=steps {
        let t = ratio(j as i64, steps.max(1) as i64);
        let sign = model.sign_at(&t)?;
        if j == 0 && sign != Some(Sign::Positive) {
            return Ok(KtypeOutcome::Uncertain);
        }
        match sign {
            None => return Ok(KtypeOutcome::Uncertain),
            Some(Sign::Zero) => {}
            Some(s) => {
                if previous.is_some_and(|p| p != s) && !interior_zero {
                    return Ok(KtypeOutcome::Uncertain);
                }
                previous = Some(s);
            }
        }
    }
    Ok(match end {
        None => KtypeOutcome::Uncertain,
        Some(Sign::Negative) => KtypeOutcome::Negative(Rat::one()),
        Some(Sign::Zero) if dim == 1 => KtypeOutcome::Excluded,
        Some(Sign::Zero) => KtypeOutcome::Vanishing,
        Some(Sign::Positive) if dim == 1 || !interior_zero => KtypeOutcome::Certified,
        Some(Sign::Positive) => KtypeOutcome::Uncertain,
    })
}

/// Signature tracking from the unitary axis `ν.re = 0` to `ν` over the
/// K-types at most `cutoff` root-heights above the minimal one.
pub fn unitarity_scan(
    rs: &RootSystem,
    q: &QParam,
    p: &ParamPair,
    cutoff: u32,
    steps: u32,
) -> Result<UnitarityVerdict> {
    unitarity_scan_with(
        rs,
        q,
        p,
        &ScanOptions {
            cutoff,
            steps,
            jobs: None,
        },
    )
}

pub fn unitarity_scan_with(
    rs: &RootSystem,
    q: &QParam,
    p: &ParamPair,
    opts: &ScanOptions,
) -> Result<UnitarityVerdict> {
    p.check(rs)?;
    let mode = ImagMode::for_q(q);
    if hermitian_witness(rs, p, mode)?.is_none() {
        return Ok(UnitarityVerdict::exact(VerdictKind::NoHermitianForm));
    }
    if !is_almost_real(rs, &p.nu) {
        return Err(Error::NotAlmostReal);
    }
    // Conjugate so that ν.re is dominant: every crossed root then has
    // z ≥ 0 along the path and no denominator can vanish.
    let (_, u) = dominant_representative(rs, &p.nu.re)?;
    let conj = ParamPair::new(
        crate::weyl::apply_word(rs, &u, &p.lambda)?,
        mode.normalize(rs, crate::weyl::apply_word(rs, &u, &p.nu)?),
    );
    let word = hermitian_witness(rs, &conj, mode)?.expect("conjugate of a hermitian parameter");
    let ktypes: Vec<Weight> = ktypes_up_to(rs, &conj.lambda, opts.cutoff)?
        .into_iter()
        .filter(|mu| ktype_multiplicity(rs, mu, &conj.lambda).map_or(true, |m| m > 0))
        .collect();
    let run = || -> Result<Vec<KtypeOutcome>> {
        ktypes
            .par_iter()
            .map(|mu| scan_ktype(rs, q, mu, &conj, &word, opts.steps))
            .collect()
    };
    let outcomes = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Parse(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let mut certified = 0;
    let mut uncertain = false;
    let mut vanishing = 0;
    for (mu, o) in ktypes.iter().zip(&outcomes) {
        match o {
            KtypeOutcome::Negative(t) => {
                return Ok(UnitarityVerdict {
                    kind: VerdictKind::NotUnitary,
                    witness: Some((mu.clone(), t.clone())),
                    cutoff: Some(opts.cutoff),
                    certified_ktypes: certified,
                });
            }
            KtypeOutcome::Certified => certified += 1,
            KtypeOutcome::Excluded => {}
            KtypeOutcome::Vanishing => vanishing += 1,
            KtypeOutcome::Uncertain => uncertain = true,
        }
    }
    // Total vanishing beyond the trivial K-type: the trivial representation.
    let trivial = conj.lambda.is_zero()
        && ktypes
            .iter()
            .zip(&outcomes)
            .all(|(mu, o)| mu.is_zero() || matches!(o, KtypeOutcome::Excluded | KtypeOutcome::Vanishing));
    let kind = if trivial {
        VerdictKind::Unitary
    } else if uncertain || vanishing > 0 {
        VerdictKind::UnknownAtCutoff
    } else {
        VerdictKind::Unitary
    };
    Ok(UnitarityVerdict {
        kind,
        witness: None,
        cutoff: Some(opts.cutoff),
        certified_ktypes: certified,
    })
}

/// Rank one goes to the exact decision, type A parameters that are not
/// almost real are first shifted by a central character, everything else
/// is scanned.
pub fn decide(
    rs: &RootSystem,
    q: &QParam,
    p: &ParamPair,
    opts: &ScanOptions,
) -> Result<UnitarityVerdict> {
    if rs.rank() == 1 {
        return signature_rank1(rs, q, p, opts.cutoff);
    }
    if rs.series() == Series::A && !is_almost_real(rs, &p.nu) {
        let shifted = typeA_shift_reduce(rs, p)?;
        return unitarity_scan_with(rs, q, &shifted, opts);
    }
    unitarity_scan_with(rs, q, p, opts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QComparison {
    /// One verdict per `q`, the classical point last.
    pub verdicts: Vec<(QParam, UnitarityVerdict)>,
    /// No two certified verdicts differ.
    pub agree: bool,
}

pub fn compare_q_classical(
    rs: &RootSystem,
    p: &ParamPair,
    qs: &[QParam],
    opts: &ScanOptions,
) -> Result<QComparison> {
    if !is_almost_real(rs, &p.nu) {
        return Err(Error::NotAlmostReal);
    }
    let mut all: Vec<QParam> = qs.iter().filter(|q| !q.is_classical()).cloned().collect();
    all.push(QParam::classical());
    let verdicts = all
        .into_iter()
        .map(|q| decide(rs, &q, p, opts).map(|v| (q, v)))
        .collect::<Result<Vec<_>>>()?;
    let certified: Vec<VerdictKind> = verdicts
        .iter()
        .filter(|(_, v)| v.is_certified())
        .map(|(_, v)| v.kind)
        .collect();
    let agree = certified.windows(2).all(|w| w[0] == w[1]);
    Ok(QComparison { verdicts, agree })
}

/// `(λ, ν − χ)` with `χ ∈ P^∨` chosen so that the result is almost real.
#[allow(non_snake_case)]
pub fn typeA_shift_reduce(rs: &RootSystem, p: &ParamPair) -> Result<ParamPair> {
    p.check(rs)?;
    let chi = reduce_small_typeA(rs, &p.nu.im)?;
    Ok(ParamPair::new(
        p.lambda.clone(),
        ComplexWeight::new(p.nu.re.clone(), &p.nu.im - &chi),
    ))
}
