//! Finite root data.
//!
//! Everything is stored in the fundamental-weight basis: the coordinate `i`
//! of a weight `x` is `(x, α_i^∨)`. The invariant form is normalized so that
//! short roots have `(α, α) = 2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::number::{lcm_denominators, rat, to_i64, Rat};
use crate::weight::Weight;
use crate::weights::WeightTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" | "a" => Series::A,
            "B" | "b" => Series::B,
            "C" | "c" => Series::C,
            "D" | "d" => Series::D,
            "E" | "e" => Series::E,
            "F" | "f" => Series::F,
            "G" | "g" => Series::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        })
    }
}

/// `"A2"`, `"G2"`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = s.chars();
        let series: Series = chars.next().ok_or_else(bad)?.to_string().parse()?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Ok(CartanType { series, rank })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Coordinates in the `ω` basis.
    pub weight: Weight,
    /// Coefficients in the simple-root basis.
    pub simple_coeffs: Vec<i64>,
    /// Coefficients of `α^∨` in the simple-coroot basis.
    pub coroot_coeffs: Vec<i64>,
    /// `(α, α)`.
    pub length_sq: Rat,
    /// `(α, α)/2`, so that `q_α = q^{q_exponent}`.
    pub q_exponent: Rat,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }

    /// `(x, α^∨)`.
    pub fn coroot_pairing(&self, x: &Weight) -> Rat {
        x.coords()
            .iter()
            .zip(&self.coroot_coeffs)
            .map(|(c, &k)| c * rat(k))
            .sum()
    }

    /// `(α, α)/2` as an integer (1, 2 or 3).
    pub fn half_length_sq(&self) -> i64 {
        to_i64(&self.q_exponent).expect("root lengths are even integers")
    }
}

/// Immutable Cartan datum plus a memo table for weight multiplicities.
pub struct RootSystem {
    cartan_type: CartanType,
    /// `a_ij = (α_i^∨, α_j)`.
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Rat>>,
    /// `(ω_i, ω_j)`.
    form: Vec<Vec<Rat>>,
    form_scaled: Vec<Vec<i64>>,
    form_den: i64,
    symmetrizer: Vec<i64>,
    simple_roots: Vec<Root>,
    positive_roots: Vec<Root>,
    rho: Weight,
    weyl_order: u128,
    pub(crate) tables: Mutex<HashMap<Vec<i64>, Arc<WeightTable>>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.cartan_type.to_string())
            .field("cartan", &self.cartan)
            .finish_non_exhaustive()
    }
}

impl Clone for RootSystem {
    fn clone(&self) -> Self {
        build_root_system(self.cartan_type.series, self.cartan_type.rank)
            .expect("type was valid when first built")
    }
}

/// Gram matrix of the simple roots, `(α_i, α_j)`, short roots of length 2.
fn simple_root_gram(series: Series, n: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = || Error::InvalidType(format!("{}{}", series.letter(), n));
    let valid = match series {
        Series::A => n >= 1,
        Series::B | Series::C => n >= 2,
        Series::D => n >= 4,
        Series::E => (6..=8).contains(&n),
        Series::F => n == 4,
        Series::G => n == 2,
    };
    if !valid {
        return Err(invalid());
    }
    let mut b = vec![vec![0i64; n]; n];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match series {
        Series::A => {
            for i in 0..n {
                b[i][i] = 2;
                if i + 1 < n {
                    link(&mut b, i, i + 1, -1);
                }
            }
        }
        Series::B => {
            // α_n short.
            for i in 0..n {
                b[i][i] = if i + 1 == n { 2 } else { 4 };
                if i + 1 < n {
                    link(&mut b, i, i + 1, -2);
                }
            }
        }
        Series::C => {
            // α_n long.
            for i in 0..n {
                b[i][i] = if i + 1 == n { 4 } else { 2 };
                if i + 2 < n {
                    link(&mut b, i, i + 1, -1);
                } else if i + 2 == n {
                    link(&mut b, i, i + 1, -2);
                }
            }
        }
        Series::D => {
            for i in 0..n {
                b[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 3, n - 1, -1);
        }
        Series::E => {
            // Bourbaki labels: 1-3-4-5-6-7-8 chain, 2 attached to 4.
            for i in 0..n {
                b[i][i] = 2;
            }
            link(&mut b, 0, 2, -1);
            link(&mut b, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut b, i, i + 1, -1);
            }
        }
        Series::F => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
        }
        Series::G => {
            // α_1 short, α_2 long.
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 0, 1, -3);
        }
    }
    Ok(b)
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let f = &a[r][col] / &p;
            for j in col..n {
                let t = &f * &a[col][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Builds the root system of type `series` and rank `rank`.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem> {
    let n = rank;
    let gram = simple_root_gram(series, n)?;
    let sym: Vec<i64> = (0..n).map(|i| gram[i][i] / 2).collect();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| gram[i][j] / sym[i]).collect())
        .collect();
    let cartan_rat: Vec<Vec<Rat>> = cartan
        .iter()
        .map(|row| row.iter().map(|&a| rat(a)).collect())
        .collect();
    let inv_cartan = invert(&cartan_rat).expect("Cartan matrices are invertible");
    // G A = D with G the ω-Gram matrix and D = diag((α_i,α_i)/2).
    let form: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| &inv_cartan[i][j] * rat(sym[i])).collect())
        .collect();
    let den = lcm_denominators(form.iter().flatten());
    let den_i = to_i64(&Rat::from_integer(den.clone())).expect("small denominators");
    let form_scaled = form
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| to_i64(&(g * Rat::from_integer(den.clone()))).expect("integral"))
                .collect()
        })
        .collect();

    let make_root = |c: &[i64]| -> Root {
        let len: i64 = (0..n)
            .map(|i| (0..n).map(|j| c[i] * gram[i][j] * c[j]).sum::<i64>())
            .sum();
        let half = len / 2;
        let weight = Weight::new(
            (0..n)
                .map(|i| rat((0..n).map(|j| cartan[i][j] * c[j]).sum()))
                .collect(),
        );
        Root {
            weight,
            simple_coeffs: c.to_vec(),
            coroot_coeffs: (0..n).map(|i| c[i] * sym[i] / half).collect(),
            length_sq: rat(len),
            q_exponent: rat(half),
        }
    };

    // Positive roots: closure of the simple roots under simple reflections.
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(c) = queue.pop_front() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| cartan[i][j] * c[j]).sum();
            let mut r = c.clone();
            r[i] -= p;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut coeffs: Vec<Vec<i64>> = seen.into_iter().collect();
    coeffs.sort_by(|a, b| {
        let (ha, hb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let positive_roots: Vec<Root> = coeffs.iter().map(|c| make_root(c)).collect();
    let simple_roots: Vec<Root> = positive_roots[..n].to_vec();

    // Exponents are the dual partition of the root-height counts.
    let max_h = positive_roots.iter().map(Root::height).max().unwrap_or(0);
    let count = |h: i64| positive_roots.iter().filter(|r| r.height() == h).count() as i64;
    let mut weyl_order: u128 = 1;
    for h in 1..=max_h {
        let k = count(h) - count(h + 1);
        for _ in 0..k {
            weyl_order *= (h + 1) as u128;
        }
    }

    Ok(RootSystem {
        cartan_type: CartanType { series, rank },
        cartan,
        inv_cartan,
        form,
        form_scaled,
        form_den: den_i,
        symmetrizer: sym,
        simple_roots,
        positive_roots,
        rho: Weight::from_ints(&vec![1; n]),
        weyl_order,
        tables: Mutex::new(HashMap::new()),
    })
}

/// `(x, y)`.
pub fn pairing(rs: &RootSystem, x: &Weight, y: &Weight) -> Result<Rat> {
    x.check_rank(rs.rank())?;
    y.check_rank(rs.rank())?;
    Ok(rs.pairing_unchecked(x, y))
}

/// `(x, α^∨) = 2(x, α)/(α, α)`.
pub fn coroot_pairing(rs: &RootSystem, x: &Weight, alpha: &Root) -> Result<Rat> {
    x.check_rank(rs.rank())?;
    alpha.weight.check_rank(rs.rank())?;
    Ok(alpha.coroot_pairing(x))
}

/// All positive roots, simple roots first, then by height.
pub fn positive_roots(rs: &RootSystem) -> &[Root] {
    &rs.positive_roots
}

impl RootSystem {
    pub fn parse(label: &str) -> Result<Self> {
        let t: CartanType = label.parse()?;
        build_root_system(t.series, t.rank)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn label(&self) -> String {
        self.cartan_type.to_string()
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn series(&self) -> Series {
        self.cartan_type.series
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn form(&self) -> &[Vec<Rat>] {
        &self.form
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// `α_i`, 1-based.
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple_roots[i - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().expect("nonempty")
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn weyl_order(&self) -> u128 {
        self.weyl_order
    }

    pub fn form_determinant(&self) -> Rat {
        determinant(&self.form)
    }

    pub(crate) fn pairing_unchecked(&self, x: &Weight, y: &Weight) -> Rat {
        let (x, y) = (x.coords(), y.coords());
        let mut acc = Rat::zero();
        for i in 0..x.len() {
            if x[i].is_zero() {
                continue;
            }
            let row: Rat = (0..y.len()).map(|j| &self.form[i][j] * &y[j]).sum();
            acc += &x[i] * row;
        }
        acc
    }

    /// `den · (x, y)` for integral `x, y`; see [`RootSystem::form_den`].
    pub(crate) fn pairing_scaled(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            acc += x[i] * (0..y.len()).map(|j| self.form_scaled[i][j] * y[j]).sum::<i64>();
        }
        acc
    }

    #[allow(dead_code)]
    pub(crate) fn form_den(&self) -> i64 {
        self.form_den
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            })
        }
    }

    /// Coefficients of `x` in the simple-root basis.
    pub fn simple_root_coords(&self, x: &Weight) -> Vec<Rat> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| &self.inv_cartan[i][j] * &x.coords()[j]).sum())
            .collect()
    }

    /// Sum of the simple-root coefficients, i.e. `(x, ρ^∨)`.
    pub fn height(&self, x: &Weight) -> Rat {
        self.simple_root_coords(x).into_iter().sum()
    }

    /// True iff `x ∈ Q`.
    pub fn in_root_lattice(&self, x: &Weight) -> bool {
        self.simple_root_coords(x).iter().all(|c| c.is_integer())
    }

    /// `α_i^∨` viewed in `h*` through the form, in `ω` coordinates.
    pub fn simple_coroot_vector(&self, i: usize) -> Weight {
        let d = rat(self.symmetrizer[i - 1]);
        Weight::new(
            (0..self.rank())
                .map(|k| rat(self.cartan[k][i - 1]) / &d)
                .collect(),
        )
    }

    /// Column `i` of the Cartan matrix: `α_i` in `ω` coordinates.
    pub(crate) fn simple_root_column(&self, i: usize) -> impl Iterator<Item = i64> + '_ {
        self.cartan.iter().map(move |row| row[i - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::ratio;

    fn rs(label: &str) -> RootSystem {
        RootSystem::parse(label).unwrap()
    }

    #[test]
    fn a1_datum() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.rho(), &Weight::from_ints(&[1]));
        assert_eq!(a1.simple_root(1).length_sq, rat(2));
        let w1 = Weight::fundamental(1, 1);
        assert_eq!(pairing(&a1, &w1, &w1).unwrap(), ratio(1, 2));
    }

    #[test]
    fn root_counts() {
        for (label, count) in [
            ("A2", 3),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
        ] {
            assert_eq!(rs(label).positive_roots().len(), count, "{label}");
        }
    }

    #[test]
    fn weyl_orders() {
        for (label, order) in [
            ("A1", 2u128),
            ("A2", 6),
            ("A4", 120),
            ("B2", 8),
            ("B3", 48),
            ("D4", 192),
            ("G2", 12),
            ("F4", 1152),
            ("E6", 51840),
            ("E8", 696729600),
        ] {
            assert_eq!(rs(label).weyl_order(), order, "{label}");
        }
    }

    #[test]
    fn g2_long_roots() {
        let g2 = rs("G2");
        let lens: Vec<Rat> = g2.positive_roots().iter().map(|r| r.length_sq.clone()).collect();
        assert_eq!(lens.iter().filter(|l| **l == rat(6)).count(), 3);
        assert_eq!(lens.iter().filter(|l| **l == rat(2)).count(), 3);
        assert_eq!(g2.highest_root().weight, Weight::from_ints(&[0, 1]));
    }

    #[test]
    fn a2_pairings() {
        let a2 = rs("A2");
        let w1 = Weight::fundamental(2, 1);
        assert_eq!(pairing(&a2, &w1, &w1).unwrap(), ratio(2, 3));
        let theta = a2.highest_root();
        assert_eq!(coroot_pairing(&a2, a2.rho(), theta).unwrap(), rat(2));
        assert!(pairing(&a2, &w1, &Weight::zero(3)).is_err());
    }

    #[test]
    fn invalid_types() {
        for label in ["B1", "D3", "E5", "E9", "F3", "G3", "A0", "X2", "A"] {
            assert!(RootSystem::parse(label).is_err(), "{label}");
        }
    }

    #[test]
    fn structural_invariants() {
        for label in ["A1", "A3", "B2", "B4", "C3", "D4", "D5", "E6", "F4", "G2"] {
            let r = rs(label);
            let n = r.rank();
            // Short roots have length 2, all lengths in {2,4,6}.
            let min = r.positive_roots().iter().map(|b| b.length_sq.clone()).min().unwrap();
            assert_eq!(min, rat(2), "{label}");
            for b in r.positive_roots() {
                assert!([2, 4, 6].map(rat).contains(&b.length_sq));
                assert_eq!(b.q_exponent, &b.length_sq / rat(2));
                // Coroot pairing agrees with 2(x,β)/(β,β).
                let direct = rat(2) * r.pairing_unchecked(r.rho(), &b.weight) / &b.length_sq;
                assert_eq!(b.coroot_pairing(r.rho()), direct);
            }
            // (α_i^∨, α_j) recovers the Cartan matrix; (ρ, α_i^∨) = 1.
            for i in 1..=n {
                for j in 1..=n {
                    let aij = r.simple_root(i).coroot_pairing(&r.simple_root(j).weight);
                    assert_eq!(aij, rat(r.cartan()[i - 1][j - 1]));
                }
                assert_eq!(r.simple_root(i).coroot_pairing(r.rho()), rat(1));
            }
            // Form symmetric, positive definite.
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(r.form()[i][j], r.form()[j][i]);
                }
            }
            assert!(r.form_determinant() > Rat::zero());
            // Σ β = 2ρ.
            let sum = r
                .positive_roots()
                .iter()
                .fold(Weight::zero(n), |acc, b| &acc + &b.weight);
            assert_eq!(sum, r.rho().scale(&rat(2)), "{label}");
        }
    }

    #[test]
    fn reflections_permute_roots() {
        for label in ["A3", "B3", "C3", "G2", "F4"] {
            let r = rs(label);
            let all: HashSet<Weight> = r
                .positive_roots()
                .iter()
                .flat_map(|b| [b.weight.clone(), -&b.weight])
                .collect();
            for b in r.positive_roots() {
                for a in r.simple_roots() {
                    let p = a.coroot_pairing(&b.weight);
                    let img = &b.weight - &a.weight.scale(&p);
                    assert!(all.contains(&img));
                }
            }
        }
    }

    #[test]
    fn type_a_coweights_are_weights() {
        // With (α,α) = 2 everywhere, α^∨ = α, so Q^∨ = Q and P^∨ = P.
        let a3 = rs("A3");
        for i in 1..=3 {
            assert_eq!(a3.simple_coroot_vector(i), a3.simple_root(i).weight);
        }
    }
}
