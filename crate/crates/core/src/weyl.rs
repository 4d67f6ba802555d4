//! Weyl group actions, represented by words in the simple reflections.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::Rat;
use crate::rootsys::{Root, RootSystem};
use crate::weight::{ComplexWeight, Weight};

/// Default bound on `|W|` for full enumerations.
pub const DEFAULT_ORBIT_BOUND: u128 = 10_000_000;

/// `s_{w_1} s_{w_2} ... s_{w_k}`; letters are 1-based simple indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord(Vec<usize>);

impl WeylWord {
    pub fn identity() -> Self {
        WeylWord(Vec::new())
    }

    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord(letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word for the inverse element.
    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// `self · other` as group elements.
    pub fn then(&self, other: &WeylWord) -> Self {
        WeylWord(self.0.iter().chain(&other.0).copied().collect())
    }

    fn check(&self, rs: &RootSystem) -> Result<()> {
        self.0.iter().try_for_each(|&i| rs.check_index(i))
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for WeylWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(WeylWord::identity());
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad Weyl word letter {t:?}")))
            })
            .collect::<Result<_>>()
            .map(WeylWord)
    }
}

/// Anything the simple reflections act on.
pub trait WeylAction: Sized {
    fn reflect_simple(&self, rs: &RootSystem, i: usize) -> Self;
    fn check_rank(&self, rank: usize) -> Result<()>;
}

impl WeylAction for Weight {
    fn reflect_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let c = self.coords()[i - 1].clone();
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        for (x, a) in out.coords_mut().iter_mut().zip(rs.simple_root_column(i)) {
            if a != 0 {
                *x -= &c * Rat::from_integer(a.into());
            }
        }
        out
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        Weight::check_rank(self, rank)
    }
}

impl WeylAction for ComplexWeight {
    fn reflect_simple(&self, rs: &RootSystem, i: usize) -> Self {
        ComplexWeight::new(self.re.reflect_simple(rs, i), self.im.reflect_simple(rs, i))
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        ComplexWeight::check_rank(self, rank)
    }
}

/// `s_i x = x − (x, α_i^∨) α_i`.
pub fn reflect<T: WeylAction>(rs: &RootSystem, i: usize, x: &T) -> Result<T> {
    rs.check_index(i)?;
    x.check_rank(rs.rank())?;
    Ok(x.reflect_simple(rs, i))
}

/// `w x` where `w = s_{w_1} ⋯ s_{w_k}`: the last letter acts first.
pub fn apply_word<T: WeylAction + Clone>(rs: &RootSystem, w: &WeylWord, x: &T) -> Result<T> {
    w.check(rs)?;
    x.check_rank(rs.rank())?;
    Ok(apply_unchecked(rs, w, x))
}

pub(crate) fn apply_unchecked<T: WeylAction + Clone>(rs: &RootSystem, w: &WeylWord, x: &T) -> T {
    w.0.iter()
        .rev()
        .fold(x.clone(), |acc, &i| acc.reflect_simple(rs, i))
}

/// Reflection in an arbitrary root: `s_β x = x − (x, β^∨) β`.
pub fn reflect_root(x: &Weight, beta: &Root) -> Weight {
    let p = beta.coroot_pairing(x);
    x - &beta.weight.scale(&p)
}

/// Dominant element `d` of the orbit of `x` and a word `w` with `w x = d`.
///
/// Always reflects at the lowest index with a negative coordinate.
pub fn dominant_representative(rs: &RootSystem, x: &Weight) -> Result<(Weight, WeylWord)> {
    x.check_rank(rs.rank())?;
    let mut cur = x.clone();
    let mut applied = Vec::new();
    while let Some(i) = cur.coords().iter().position(|c| c.is_negative()) {
        cur = cur.reflect_simple(rs, i + 1);
        applied.push(i + 1);
    }
    applied.reverse();
    Ok((cur, WeylWord(applied)))
}

/// Integral variant of [`dominant_representative`] without the word.
pub(crate) fn dominant_int(rs: &RootSystem, x: &mut [i64]) {
    while let Some(i) = x.iter().position(|&c| c < 0) {
        let c = x[i];
        for (k, a) in rs.simple_root_column(i + 1).enumerate() {
            x[k] -= c * a;
        }
    }
}

/// `w.x = w(x + ρ) − ρ`.
pub fn dot_apply<T: DotAction>(rs: &RootSystem, w: &WeylWord, x: &T) -> Result<T> {
    let shifted = x.shift_by_rho(rs, true);
    let moved = apply_word(rs, w, &shifted)?;
    Ok(moved.shift_by_rho(rs, false))
}

pub trait DotAction: WeylAction + Clone {
    fn shift_by_rho(&self, rs: &RootSystem, add: bool) -> Self;
}

impl DotAction for Weight {
    fn shift_by_rho(&self, rs: &RootSystem, add: bool) -> Self {
        if add {
            self + rs.rho()
        } else {
            self - rs.rho()
        }
    }
}

impl DotAction for ComplexWeight {
    fn shift_by_rho(&self, rs: &RootSystem, add: bool) -> Self {
        ComplexWeight::new(self.re.shift_by_rho(rs, add), self.im.clone())
    }
}

/// Full `W`-orbit of `x`, sorted.
pub fn orbit(rs: &RootSystem, x: &Weight) -> Result<BTreeSet<Weight>> {
    orbit_with_bound(rs, x, DEFAULT_ORBIT_BOUND)
}

pub fn orbit_with_bound(rs: &RootSystem, x: &Weight, bound: u128) -> Result<BTreeSet<Weight>> {
    x.check_rank(rs.rank())?;
    check_order(rs, bound)?;
    let gens: Vec<usize> = (1..=rs.rank()).collect();
    let pts = orbit_words(rs, x.clone(), &gens, |i, y| y.reflect_simple(rs, i), bound)?;
    Ok(pts.into_iter().map(|(y, _)| y).collect())
}

pub(crate) fn check_order(rs: &RootSystem, bound: u128) -> Result<()> {
    if rs.weyl_order() > bound {
        Err(Error::OrbitTooLarge {
            order: rs.weyl_order(),
            bound,
        })
    } else {
        Ok(())
    }
}

/// Breadth-first orbit of `start` under the subgroup generated by `gens`,
/// with a word `v` for each point `y = v·start`. The start comes first with
/// the empty word; words are of minimal length.
pub(crate) fn orbit_words<T, F>(
    rs: &RootSystem,
    start: T,
    gens: &[usize],
    act: F,
    bound: u128,
) -> Result<Vec<(T, WeylWord)>>
where
    T: Clone + Eq + Hash,
    F: Fn(usize, &T) -> T,
{
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut out: Vec<(T, WeylWord)> = vec![(start.clone(), WeylWord::identity())];
    index.insert(start, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for &i in gens {
            let y = act(i, &out[k].0);
            if !index.contains_key(&y) {
                if out.len() as u128 >= bound {
                    return Err(Error::OrbitTooLarge {
                        order: rs.weyl_order(),
                        bound,
                    });
                }
                let mut word = vec![i];
                word.extend_from_slice(out[k].1.letters());
                index.insert(y.clone(), out.len());
                queue.push_back(out.len());
                out.push((y, WeylWord(word)));
            }
        }
    }
    Ok(out)
}

/// Every element of `W` as a reduced word, in breadth-first order.
pub fn elements(rs: &RootSystem) -> Result<Vec<WeylWord>> {
    check_order(rs, DEFAULT_ORBIT_BOUND)?;
    let gens: Vec<usize> = (1..=rs.rank()).collect();
    let pts = orbit_words(
        rs,
        rs.rho().clone(),
        &gens,
        |i, y| y.reflect_simple(rs, i),
        DEFAULT_ORBIT_BOUND,
    )?;
    Ok(pts.into_iter().map(|(_, w)| w).collect())
}

/// A reduced word for `w_0`; built as the descent path from `−ρ` to `ρ`.
pub fn longest_word(rs: &RootSystem) -> WeylWord {
    let (_, w) = dominant_representative(rs, &-rs.rho()).expect("rank matches");
    w
}

/// `ℓ(w) = #{β > 0 : wβ < 0}`.
pub fn element_length(rs: &RootSystem, w: &WeylWord) -> Result<usize> {
    let x = apply_word(rs, &w.inverse(), rs.rho())?;
    Ok(rs
        .positive_roots()
        .iter()
        .filter(|b| b.coroot_pairing(&x).is_negative())
        .count())
}

pub fn is_reduced(rs: &RootSystem, w: &WeylWord) -> Result<bool> {
    Ok(element_length(rs, w)? == w.len())
}

/// A reduced word for the element represented by `w`.
pub fn reduced_word(rs: &RootSystem, w: &WeylWord) -> Result<WeylWord> {
    let x = apply_word(rs, w, rs.rho())?;
    let (_, v) = dominant_representative(rs, &x)?;
    Ok(v.inverse())
}

/// Equality of group elements, tested on the regular weight `ρ`.
pub fn same_element(rs: &RootSystem, a: &WeylWord, b: &WeylWord) -> Result<bool> {
    Ok(apply_word(rs, a, rs.rho())? == apply_word(rs, b, rs.rho())?)
}

/// All reduced words of the element `w`.
pub fn reduced_words(rs: &RootSystem, w: &WeylWord) -> Result<Vec<WeylWord>> {
    let target = apply_word(rs, w, rs.rho())?;
    let mut out = Vec::new();
    // Peel left descents: s_i w < w iff (w ρ, α_i^∨) < 0.
    fn go(rs: &RootSystem, x: &Weight, prefix: &mut Vec<usize>, out: &mut Vec<WeylWord>) {
        if x == rs.rho() {
            out.push(WeylWord(prefix.clone()));
            return;
        }
        for i in 1..=rs.rank() {
            if x.coords()[i - 1].is_negative() {
                prefix.push(i);
                go(rs, &x.reflect_simple(rs, i), prefix, out);
                prefix.pop();
            }
        }
    }
    go(rs, &target, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// `‖Λ − s_α.Λ'‖² − ‖Λ − Λ'‖²`, evaluated exactly.
pub fn dot_reflection_gap(
    rs: &RootSystem,
    big_lambda: &Weight,
    lambda_prime: &Weight,
    alpha: &Root,
) -> Result<Rat> {
    big_lambda.check_rank(rs.rank())?;
    lambda_prime.check_rank(rs.rank())?;
    let moved = &reflect_root(&(lambda_prime + rs.rho()), alpha) - rs.rho();
    let far = big_lambda - &moved;
    let near = big_lambda - lambda_prime;
    Ok(rs.pairing_unchecked(&far, &far) - rs.pairing_unchecked(&near, &near))
}
