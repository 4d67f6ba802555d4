//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Seeds are fixed so the log is reproducible.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdual_core::number::{rat, ratio, Rat};
use qdual_core::params::{
    coweight_gap_oracle, from_category_o, hermitian_exists, is_almost_real, is_small, psi_nonvanishing,
    reduce_small_typeA, to_category_o, x_reduce, x_reduce_weight, PsiOutcome,
};
use qdual_core::unitarity::{
    decide, intertwiner_factors, signature_rank1, ScanOptions, VerdictKind,
};
use qdual_core::weights::{sl2_spin_content, total_multiplicity, weight_table, weyl_dimension, ktypes_up_to};
use qdual_core::weyl::{
    apply_word, dot_reflection_gap, elements, longest_word, orbit, reduced_words, same_element,
};
use qdual_core::{CategoryOParam, ComplexWeight, ParamPair, QParam, RootSystem, Weight, WeylWord};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// ` (first: x)` for a nonempty failure list.
fn first<T: std::fmt::Debug>(items: &[T]) -> String {
    items.first().map_or(String::new(), |x| format!(" (first: {x:?})"))
}

fn rs(label: &str) -> RootSystem {
    RootSystem::parse(label).unwrap()
}

fn q(n: i64, d: i64) -> QParam {
    QParam::new(ratio(n, d)).unwrap()
}

fn rand_rat(rng: &mut ChaCha8Rng, bound: i64, max_den: i64) -> Rat {
    let d = rng.gen_range(1..=max_den);
    ratio(rng.gen_range(-bound * d..=bound * d), d)
}

fn rand_weight(rng: &mut ChaCha8Rng, rank: usize, bound: i64, max_den: i64) -> Weight {
    Weight::new((0..rank).map(|_| rand_rat(rng, bound, max_den)).collect())
}

fn rand_int_weight(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> Weight {
    Weight::new((0..rank).map(|_| rat(rng.gen_range(-bound..=bound))).collect())
}

fn max_root_pairing(rs: &RootSystem, x: &Weight) -> Rat {
    rs.positive_roots()
        .iter()
        .map(|b| (b.coroot_pairing(x) * &b.q_exponent).abs())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// `(λ, ν)` with `wλ = λ`, `wν = −ν̄` exactly for an involution `w`, ν almost
/// real, then moved by a random Weyl element.
fn hermitian_sample(rng: &mut ChaCha8Rng, rs: &RootSystem, all: &[WeylWord]) -> ParamPair {
    let n = rs.rank();
    let dominant = Weight::new((0..n).map(|_| rat(if rng.gen_bool(0.5) { 0 } else { rng.gen_range(0..=2) })).collect());
    let involutions: Vec<&WeylWord> = all
        .iter()
        .filter(|w| apply_word(rs, w, &dominant).unwrap() == dominant)
        .filter(|w| same_element(rs, &w.then(w), &WeylWord::identity()).unwrap())
        .collect();
    let w = *involutions.choose(rng).unwrap();
    let x = rand_weight(rng, n, 3, 6);
    let re = (&x - &apply_word(rs, w, &x).unwrap()).scale(&ratio(1, 2));
    let im = if rng.gen_bool(0.3) {
        let y = rand_weight(rng, n, 1, 5);
        let y = (&y + &apply_word(rs, w, &y).unwrap()).scale(&ratio(1, 2));
        let m = max_root_pairing(rs, &y);
        if m.is_zero() {
            y
        } else {
            y.scale(&(ratio(1, 2) / m))
        }
    } else {
        Weight::zero(n)
    };
    let u = all.choose(rng).unwrap();
    let nu = ComplexWeight::new(re, im);
    ParamPair::new(
        apply_word(rs, u, &dominant).unwrap(),
        apply_word(rs, u, &nu).unwrap(),
    )
}

fn ac1() -> Outcome {
    let a1 = rs("A1");
    let qs = [q(3, 10), q(7, 10), QParam::classical()];
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for lam in [0i64, 2, 4] {
        for k in -25i64..=25 {
            // z = ½(ν, α^∨) = ν/2 in ω coordinates.
            let cases = [
                (ComplexWeight::real(Weight::new(vec![ratio(k, 5)])), k == 0 || (lam == 0 && k.abs() <= 10)),
                (ComplexWeight::new(Weight::zero(1), Weight::new(vec![ratio(k, 5)])), true),
            ];
            for (nu, expect) in cases {
                let p = ParamPair::new(Weight::from_ints(&[lam]), nu);
                for qq in &qs {
                    let v = signature_rank1(&a1, qq, &p, 12).unwrap();
                    checked += 1;
                    if (v.kind == VerdictKind::Unitary) != expect {
                        mismatches.push(format!("λ={lam} k={k} q={qq}: {}", v.kind));
                    }
                }
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{checked} decisions, {} off the expected locus{}", mismatches.len(), first(&mismatches)),
    )
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let opts = ScanOptions {
        cutoff: 12,
        steps: 64,
        jobs: None,
    };
    let qs = [q(3, 10), q(7, 10), QParam::classical()];
    let mut disagreements = Vec::new();
    let mut rank2 = 0usize;
    let mut rank2_unknown = 0usize;
    let mut counts = std::collections::BTreeMap::new();
    let labels = ["A1", "A2", "B2"];
    for j in 0..200 {
        let r = rs(labels[j % 3]);
        let all = elements(&r).unwrap();
        let p = hermitian_sample(&mut rng, &r, &all);
        assert!(is_almost_real(&r, &p.nu));
        let verdicts: Vec<_> = qs.iter().map(|qq| decide(&r, qq, &p, &opts).unwrap()).collect();
        for v in &verdicts {
            *counts.entry(v.kind.to_string()).or_insert(0) += 1;
        }
        let certified: Vec<_> = verdicts.iter().filter(|v| v.is_certified()).map(|v| v.kind).collect();
        if certified.windows(2).any(|w| w[0] != w[1]) {
            disagreements.push(format!("{} {p}", r.label()));
        }
        if r.rank() == 2 {
            rank2 += 1;
            if verdicts.iter().any(|v| !v.is_certified()) {
                rank2_unknown += 1;
            }
        }
    }
    let frac = rank2_unknown as f64 / rank2 as f64;
    outcome(
        disagreements.is_empty() && frac < 0.4,
        format!(
            "200 params x 3 q: certified disagreements {}{}; rank-2 Unknown {rank2_unknown}/{rank2} = {:.1}% (< 40%); verdicts {counts:?}",
            disagreements.len(),
            first(&disagreements),
            100.0 * frac
        ),
    )
}

fn ac3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut compared = 0usize;
    let mut bad = Vec::new();
    for label in ["A2", "B2"] {
        let r = rs(label);
        let words = reduced_words(&r, &longest_word(&r)).unwrap();
        assert_eq!(words.len(), 2);
        for _ in 0..50 {
            let lam = rand_int_weight(&mut rng, 2, 2);
            let nu = ComplexWeight::real(rand_weight(&mut rng, 2, 3, 9));
            let p = ParamPair::new(lam.clone(), nu);
            for mu in ktypes_up_to(&r, &lam, 10).unwrap() {
                for qq in [QParam::classical(), q(3, 10)] {
                    let a = intertwiner_factors(&r, &qq, &mu, &p, &words[0]);
                    let b = intertwiner_factors(&r, &qq, &mu, &p, &words[1]);
                    let (a, b) = match (a, b) {
                        (Ok(a), Ok(b)) => (a, b),
                        // A pole on one word must be a pole on the other.
                        (Err(_), Err(_)) => continue,
                        _ => {
                            bad.push(format!("{label} {p} μ={mu}: pole on one word only"));
                            continue;
                        }
                    };
                    compared += 1;
                    let same = if qq.is_classical() {
                        a.exact().is_some() && a.exact() == b.exact()
                    } else {
                        a.value().agrees_with(&b.value(), 1e-12)
                    };
                    if !same {
                        bad.push(format!("{label} {p} μ={mu} q={qq}"));
                    }
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{compared} determinant pairs over w0 words, {} mismatches{}", bad.len(), first(&bad)),
    )
}

fn ac4() -> Outcome {
    let results: Vec<(&str, bool)> = ["A1", "A2", "A3", "B2", "G2"]
        .iter()
        .map(|l| (*l, coweight_gap_oracle(&rs(l), 10)))
        .collect();
    outcome(results.iter().all(|(_, b)| *b), format!("height bound 10: {results:?}"))
}

fn ac5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let systems = [rs("A1"), rs("A2"), rs("A4")];
    let mut failures = 0;
    for j in 0..1000 {
        let r = &systems[j % 3];
        let x = rand_weight(&mut rng, r.rank(), 6, 12);
        let lam = reduce_small_typeA(r, &x).unwrap();
        let rem = &x - &lam;
        let ok = lam.is_integral()
            && is_small(r, &rem)
            && reduce_small_typeA(r, &rem).unwrap().is_zero();
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("1000 samples in A1/A2/A4, {failures} failures"))
}

fn ac6() -> Outcome {
    let mut problems = Vec::new();
    let mut checked = 0;
    for label in ["A2", "B2", "G2"] {
        let r = rs(label);
        for a in 0..=3 {
            for b in 0..=3 {
                let mu = Weight::from_ints(&[a, b]);
                let total = total_multiplicity(&r, &mu).unwrap();
                let dim = weyl_dimension(&r, &mu).unwrap();
                if total != dim {
                    problems.push(format!("{label} {mu}: {total} vs {dim}"));
                }
                let table = weight_table(&r, &mu).unwrap();
                for (dom, m) in table.dominant() {
                    for lam in orbit(&r, &Weight::from_ints(dom)).unwrap() {
                        for i in 1..=2 {
                            checked += 1;
                            let spins = sl2_spin_content(&r, &mu, &lam, i).unwrap();
                            if spins.total() != m {
                                problems.push(format!("{label} {mu} {lam} α{i}"));
                            }
                        }
                    }
                }
            }
        }
    }
    let a2 = rs("A2");
    let adj = weight_table(&a2, &Weight::from_ints(&[1, 1])).unwrap();
    let zero_mult = adj.multiplicity(&a2, &[0, 0]);
    let g2_adj = weyl_dimension(&rs("G2"), &rs("G2").highest_root().weight).unwrap();
    outcome(
        problems.is_empty() && zero_mult == 2 && g2_adj == 14,
        format!(
            "48 highest weights, {checked} spin totals, {} problems; A2 adjoint zero weight {zero_mult}; G2 adjoint dim {g2_adj}",
            problems.len()
        ),
    )
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let labels = ["A1", "A2", "B2", "G2"];
    for j in 0..100 {
        let r = rs(labels[j % 4]);
        let lam = rand_int_weight(&mut rng, r.rank(), 3);
        let nu = x_reduce(
            &r,
            &ComplexWeight::new(rand_weight(&mut rng, r.rank(), 3, 7), rand_weight(&mut rng, r.rank(), 2, 7)),
        );
        let p = ParamPair::new(lam, nu);
        let c = to_category_o(&r, &p).unwrap();
        if from_category_o(&r, &c).unwrap() != p {
            failures.push(format!("{} {p}", r.label()));
        }
    }
    let a2 = rs("A2");
    let m2 = ComplexWeight::real(a2.rho().scale(&rat(-2)));
    let trivial = from_category_o(
        &a2,
        &CategoryOParam {
            big_lambda: m2.clone(),
            lambda_prime: m2,
        },
    )
    .unwrap();
    let trivial_ok = trivial
        == ParamPair::new(Weight::zero(2), ComplexWeight::real(a2.rho().scale(&rat(2))));
    let a1 = rs("A1");
    let cat = |a: Rat, b: Rat| CategoryOParam {
        big_lambda: ComplexWeight::real(Weight::new(vec![a])),
        lambda_prime: ComplexWeight::real(Weight::new(vec![b])),
    };
    let psi = [
        (cat(rat(-1), rat(0)), false),
        (cat(rat(-1), rat(-1)), false),
        (cat(rat(-1), rat(-2)), true),
        (cat(rat(-1), ratio(-3, 2)), true),
        (cat(rat(0), rat(0)), true),
        (cat(rat(2), rat(-3)), true),
    ];
    let psi_ok = psi.iter().all(|(c, nonzero)| {
        (psi_nonvanishing(&a1, c).unwrap() == PsiOutcome::Nonzero) == *nonzero
    });
    outcome(
        failures.is_empty() && trivial_ok && psi_ok,
        format!(
            "100 round trips, {} failures; (−2ρ,−2ρ) ↦ {trivial}; rank-1 Ψ instances {}",
            failures.len(),
            if psi_ok { "ok" } else { "wrong" }
        ),
    )
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut mismatches = Vec::new();
    let mut witness_failures = 0;
    let mut hermitian = 0;
    for j in 0..200 {
        let r = rs(if j % 2 == 0 { "A2" } else { "B2" });
        let all = elements(&r).unwrap();
        let p = if j % 4 < 2 {
            hermitian_sample(&mut rng, &r, &all)
        } else {
            let nu = ComplexWeight::new(
                rand_weight(&mut rng, 2, 2, 3),
                if rng.gen_bool(0.5) { Weight::zero(2) } else { rand_weight(&mut rng, 2, 1, 3) },
            );
            ParamPair::new(rand_int_weight(&mut rng, 2, 2), nu)
        };
        let target = x_reduce(&r, &p.nu.neg_conj());
        let brute = all.iter().any(|w| {
            apply_word(&r, w, &p.lambda).unwrap() == p.lambda
                && x_reduce(&r, &apply_word(&r, w, &p.nu).unwrap()) == target
        });
        let found = hermitian_exists(&r, &p).unwrap();
        if brute != found.is_some() {
            mismatches.push(format!("{} {p}", r.label()));
        }
        if let Some(w) = found {
            hermitian += 1;
            if is_almost_real(&r, &p.nu) {
                let moved = apply_word(&r, &w, &p.nu).unwrap();
                let ok = moved.re == -&p.nu.re
                    && x_reduce_weight(&r, &(&moved.im - &p.nu.im)).is_zero()
                    && apply_word(&r, &w, &p.lambda).unwrap() == p.lambda;
                if !ok {
                    witness_failures += 1;
                }
            }
        }
    }
    outcome(
        mismatches.is_empty() && witness_failures == 0,
        format!(
            "200 params ({hermitian} hermitian), {} brute-force mismatches{}, {witness_failures} bad witnesses",
            mismatches.len(),
            first(&mismatches)
        ),
    )
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let systems = [rs("A2"), rs("B2"), rs("G2"), rs("A3")];
    let mut violations = 0;
    let mut constants = std::collections::BTreeSet::new();
    let mut equalities = 0;
    for j in 0..500 {
        let r = &systems[j % systems.len()];
        let n = r.rank();
        let big = Weight::new((0..n).map(|_| rand_rat(&mut rng, 3, 4).abs()).collect());
        let alpha = r.positive_roots().choose(&mut rng).unwrap().clone();
        let mut prime = rand_weight(&mut rng, n, 3, 4);
        if j % 5 == 0 {
            // Force a wall: (Λ'+ρ, α^∨) = 0.
            let c = alpha.coroot_pairing(&(&prime + r.rho()));
            prime = &prime - &alpha.weight.scale(&(c * ratio(1, 2)));
        }
        let a = alpha.coroot_pairing(&(&prime + r.rho()));
        if a.is_negative() {
            prime = &(&(&prime + r.rho()) - &alpha.weight.scale(&a)) - r.rho();
        }
        let a = alpha.coroot_pairing(&(&prime + r.rho()));
        assert!(!a.is_negative());
        let gap = dot_reflection_gap(r, &big, &prime, &alpha).unwrap();
        // (Λ+ρ, α) = (Λ+ρ, α^∨)·(α,α)/2.
        let b = alpha.coroot_pairing(&(&big + r.rho())) * &alpha.q_exponent;
        let product = &a * &b;
        if gap.is_negative() || (gap.is_zero() != a.is_zero()) {
            violations += 1;
        }
        if gap.is_zero() {
            equalities += 1;
        } else {
            constants.insert(qdual_core::number::fmt_rat(&(gap / product)));
        }
    }
    outcome(
        violations == 0 && constants.len() == 1 && constants.contains("2"),
        format!("500 triples, {violations} violations, {equalities} equalities; measured gap constant {constants:?}"),
    )
}

fn main() -> ExitCode {
    type Check = (&'static str, &'static str, fn() -> Outcome, Option<Duration>);
    let checks: [Check; 9] = [
        ("AC1", "rank-1 unitary dual", ac1, Some(Duration::from_secs(5))),
        ("AC2", "q-vs-classical agreement", ac2, None),
        ("AC3", "reduced-word independence", ac3, None),
        ("AC4", "coroot-lattice gap lemma", ac4, Some(Duration::from_secs(10))),
        ("AC5", "type-A small reduction", ac5, Some(Duration::from_secs(2))),
        ("AC6", "multiplicity cross-checks", ac6, None),
        ("AC7", "category O translation", ac7, None),
        ("AC8", "hermitian criterion vs brute force", ac8, None),
        ("AC9", "Weyl-gap lemma", ac9, None),
    ];
    let mut failed = 0;
    for (id, name, run, limit) in checks {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let pass = o.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = limit.map(|l| format!(" / limit {:.0}s", l.as_secs_f64())).unwrap_or_default();
        println!(
            "[{}] {id} {name}: {} ({:.2}s{budget})",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("acceptance: all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
