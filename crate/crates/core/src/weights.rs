//! Weight multiplicities of finite-dimensional irreducibles, K-type
//! multiplicities of principal series, and `sl₂` string content.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::number::{HalfInt, Rat};
use crate::rootsys::RootSystem;
use crate::weight::Weight;
use crate::weyl::dominant_int;

/// Multiplicities of the dominant weights of `V(μ)`.
#[derive(Debug, Clone)]
pub struct WeightTable {
    highest: Vec<i64>,
    mults: HashMap<Vec<i64>, u64>,
    /// Dominant weights by increasing depth below `μ`.
    order: Vec<Vec<i64>>,
}

impl WeightTable {
    pub fn highest(&self) -> &[i64] {
        &self.highest
    }

    /// Dominant weights with their multiplicities, highest first.
    pub fn dominant(&self) -> impl Iterator<Item = (&[i64], u64)> {
        self.order.iter().map(|w| (w.as_slice(), self.mults[w]))
    }

    /// `dim V(μ)_λ` for an arbitrary integral `λ`.
    pub fn multiplicity(&self, rs: &RootSystem, lam: &[i64]) -> u64 {
        let mut d = lam.to_vec();
        dominant_int(rs, &mut d);
        self.mults.get(&d).copied().unwrap_or(0)
    }
}

fn build_table(rs: &RootSystem, mu: &[i64]) -> WeightTable {
    let roots: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|b| b.weight.to_ints().expect("roots are integral"))
        .collect();
    let heights: Vec<i64> = rs.positive_roots().iter().map(|b| b.height()).collect();

    // Dominant weights below μ: every such weight is reached from μ by
    // subtracting positive roots without leaving the dominant chamber.
    let mut depth: HashMap<Vec<i64>, i64> = HashMap::from([(mu.to_vec(), 0)]);
    let mut queue = VecDeque::from([mu.to_vec()]);
    while let Some(lam) = queue.pop_front() {
        let d = depth[&lam];
        for (b, h) in roots.iter().zip(&heights) {
            let next: Vec<i64> = lam.iter().zip(b).map(|(x, y)| x - y).collect();
            if next.iter().all(|&c| c >= 0) && !depth.contains_key(&next) {
                depth.insert(next.clone(), d + h);
                queue.push_back(next);
            }
        }
    }
    let mut order: Vec<Vec<i64>> = depth.keys().cloned().collect();
    order.sort_by(|a, b| depth[a].cmp(&depth[b]).then_with(|| b.cmp(a)));

    let rho: Vec<i64> = vec![1; mu.len()];
    let shifted = |x: &[i64]| -> Vec<i64> { x.iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let mu_rho = shifted(mu);
    let top = rs.pairing_scaled(&mu_rho, &mu_rho);

    let mut table = WeightTable {
        highest: mu.to_vec(),
        mults: HashMap::with_capacity(order.len()),
        order: Vec::new(),
    };
    table.mults.insert(mu.to_vec(), 1);
    for lam in order.iter().skip(1) {
        let mut num: i64 = 0;
        for b in &roots {
            let mut cur = lam.clone();
            loop {
                for (c, x) in cur.iter_mut().zip(b) {
                    *c += x;
                }
                let m = table.multiplicity(rs, &cur);
                if m == 0 {
                    break;
                }
                num += m as i64 * rs.pairing_scaled(&cur, b);
            }
        }
        let lam_rho = shifted(lam);
        let den = top - rs.pairing_scaled(&lam_rho, &lam_rho);
        debug_assert!(den > 0 && (2 * num) % den == 0);
        table.mults.insert(lam.clone(), (2 * num / den) as u64);
    }
    table.order = order;
    table
}

fn dominant_ints(mu: &Weight) -> Result<Vec<i64>> {
    match mu.to_ints() {
        Some(v) if v.iter().all(|&c| c >= 0) => Ok(v),
        _ => Err(Error::NotDominant(mu.to_string())),
    }
}

/// The memoized multiplicity table of `V(μ)`.
pub fn weight_table(rs: &RootSystem, mu: &Weight) -> Result<Arc<WeightTable>> {
    mu.check_rank(rs.rank())?;
    let key = dominant_ints(mu)?;
    if let Some(t) = rs.tables.lock().expect("cache lock").get(&key) {
        return Ok(Arc::clone(t));
    }
    // Concurrent first use may build twice; both results are identical.
    let table = Arc::new(build_table(rs, &key));
    let mut cache = rs.tables.lock().expect("cache lock");
    Ok(Arc::clone(cache.entry(key).or_insert(table)))
}

/// `dim V(μ)_λ` by the Freudenthal recursion.
pub fn freudenthal_multiplicity(rs: &RootSystem, mu: &Weight, lam: &Weight) -> Result<u64> {
    lam.check_rank(rs.rank())?;
    let table = weight_table(rs, mu)?;
    let lam = lam
        .to_ints()
        .ok_or_else(|| Error::NotIntegral(lam.to_string()))?;
    Ok(table.multiplicity(rs, &lam))
}

/// `dim V(μ) = ∏_{β>0} (μ+ρ, β)/(ρ, β)`.
pub fn weyl_dimension(rs: &RootSystem, mu: &Weight) -> Result<u128> {
    mu.check_rank(rs.rank())?;
    dominant_ints(mu)?;
    let shifted = mu + rs.rho();
    let mut acc = Rat::one();
    for b in rs.positive_roots() {
        acc *= b.coroot_pairing(&shifted) / b.coroot_pairing(rs.rho());
    }
    debug_assert!(acc.is_integer());
    Ok(acc.to_integer().to_u128().expect("dimension fits in u128"))
}

/// Multiplicity of the K-type `V(μ)` in the principal series with
/// parameter `λ`; independent of `ν` and of `q`.
pub fn ktype_multiplicity(rs: &RootSystem, mu: &Weight, lam: &Weight) -> Result<u64> {
    freudenthal_multiplicity(rs, mu, lam)
}

/// Spins occurring in `V(μ)_λ` under the `sl₂` of a simple root, with
/// multiplicities `N_s`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpinMultiset {
    entries: BTreeMap<HalfInt, u64>,
}

impl SpinMultiset {
    pub fn get(&self, s: HalfInt) -> u64 {
        self.entries.get(&s).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (HalfInt, u64)> + '_ {
        self.entries.iter().map(|(s, n)| (*s, *n))
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every spin occurs at most once.
    pub fn is_multiplicity_free(&self) -> bool {
        self.entries.values().all(|&n| n <= 1)
    }
}

impl FromIterator<(HalfInt, u64)> for SpinMultiset {
    fn from_iter<I: IntoIterator<Item = (HalfInt, u64)>>(iter: I) -> Self {
        SpinMultiset {
            entries: iter.into_iter().filter(|(_, n)| *n > 0).collect(),
        }
    }
}

/// `sl₂,α_i` decomposition of the weight space `V(μ)_λ`.
///
/// With `m = ½(λ, α_i^∨)`, the number of spin-`s` strings through `λ` is
/// `dim V(μ)_{λ+(s−m)α_i} − dim V(μ)_{λ+(s−m+1)α_i}`.
pub fn sl2_spin_content(
    rs: &RootSystem,
    mu: &Weight,
    lam: &Weight,
    i: usize,
) -> Result<SpinMultiset> {
    rs.check_index(i)?;
    lam.check_rank(rs.rank())?;
    let table = weight_table(rs, mu)?;
    let lam = lam
        .to_ints()
        .ok_or_else(|| Error::NotIntegral(lam.to_string()))?;
    Ok(spin_content_int(rs, &table, &lam, i))
}

pub(crate) fn spin_content_int(
    rs: &RootSystem,
    table: &WeightTable,
    lam: &[i64],
    i: usize,
) -> SpinMultiset {
    let alpha: Vec<i64> = rs.simple_root_column(i).collect();
    let two_m = lam[i - 1];
    // Start at the top of the shortest string: sl₂ weight 2|m|.
    let start_steps = if two_m < 0 { -two_m } else { 0 };
    let at = |steps: i64| -> Vec<i64> {
        lam.iter()
            .zip(&alpha)
            .map(|(x, a)| x + steps * a)
            .collect()
    };
    let mut entries = BTreeMap::new();
    let mut steps = start_steps;
    let mut cur = table.multiplicity(rs, &at(steps));
    while cur > 0 {
        let next = table.multiplicity(rs, &at(steps + 1));
        if cur > next {
            // sl₂ weight at this point is 2m + 2·steps = 2s.
            entries.insert(HalfInt::from_doubled(two_m + 2 * steps), cur - next);
        }
        cur = next;
        steps += 1;
    }
    SpinMultiset { entries }
}

/// Sum of `dim V(μ)_λ` over all weights, counted through the orbits of the
/// dominant ones. Test and diagnostic helper.
pub fn total_multiplicity(rs: &RootSystem, mu: &Weight) -> Result<u128> {
    let table = weight_table(rs, mu)?;
    let mut total = 0u128;
    for (w, m) in table.dominant() {
        let orbit = orbit_size_int(rs, w);
        total += orbit as u128 * m as u128;
    }
    Ok(total)
}

fn orbit_size_int(rs: &RootSystem, x: &[i64]) -> usize {
    let mut seen: HashSet<Vec<i64>> = HashSet::from([x.to_vec()]);
    let mut queue = VecDeque::from([x.to_vec()]);
    while let Some(y) = queue.pop_front() {
        for i in 1..=rs.rank() {
            let c = y[i - 1];
            if c == 0 {
                continue;
            }
            let z: Vec<i64> = y
                .iter()
                .zip(rs.simple_root_column(i))
                .map(|(v, a)| v - c * a)
                .collect();
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen.len()
}

/// `K`-type parameters `μ` of the principal series with parameter `λ` lying at
/// most `levels` root-heights above the minimal K-type `|λ|`.
pub fn ktypes_up_to(rs: &RootSystem, lam: &Weight, levels: u32) -> Result<Vec<Weight>> {
    lam.check_rank(rs.rank())?;
    let base = lam
        .to_ints()
        .ok_or_else(|| Error::NotIntegral(lam.to_string()))?;
    let mut base = base;
    dominant_int(rs, &mut base);
    let simple: Vec<Vec<i64>> = (1..=rs.rank())
        .map(|i| rs.simple_root_column(i).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([base.clone()]);
    let mut frontier = vec![base];
    let mut all = frontier.clone();
    for _ in 0..levels {
        let mut next = Vec::new();
        for x in &frontier {
            for a in &simple {
                let y: Vec<i64> = x.iter().zip(a).map(|(u, v)| u + v).collect();
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        all.extend(next.iter().filter(|y| y.iter().all(|&c| c >= 0)).cloned());
        frontier = next;
    }
    let mut out: Vec<Weight> = all.iter().map(|v| Weight::from_ints(v)).collect();
    out.sort_by(|a, b| {
        rs.height(a)
            .cmp(&rs.height(b))
            .then_with(|| a.cmp(b))
    });
    Ok(out)
}
