//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//! Expected values come from the reference code in `common`, never from the
//! library's own closed forms.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use common::{all_vectors, binom, columns_of, distinct, matrix_rows, multinomial, RefField};
use kuniform_core::constructions::{
    build_affine_family, build_coweight_family, build_dual_hamming, build_labeled_family, build_weight_family,
    ConstructionReport,
};
use kuniform_core::formulas::{count_orthogonal_nonzero, spacecount, DotTarget};
use kuniform_core::search::{check_uniqueness, run_oracle, verify_recursion, OracleConfig, OracleQuery, OracleResult};
use kuniform_core::vectors::downset_closure;
use kuniform_core::{field, Count, LabelSystem, ProfileDownSet, WeightProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(v: u128) -> Count {
    Count::from(v)
}

// ---------------------------------------------------------------- criterion 1

fn field_correctness() -> Outcome {
    let qs = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16];
    let mut checked = 0u64;
    for q in qs {
        let lib = field(q).map_err(|e| e.to_string())?;
        let rf = RefField::like_library(q);
        ensure(common::is_irreducible(&rf.modulus, rf.p), || {
            format!("GF({q}) modulus {:?} is reducible", rf.modulus)
        })?;
        ensure(lib.characteristic() as u64 == rf.p && lib.degree() == rf.e, || {
            format!("GF({q}) has wrong characteristic or degree")
        })?;
        let el = |v: u64| lib.element(v).unwrap();
        for a in 0..q {
            for b in 0..q {
                checked += 1;
                ensure(lib.add(el(a), el(b)).value() as u64 == rf.add(a, b), || {
                    format!("GF({q}): {a} + {b}")
                })?;
                ensure(lib.mul(el(a), el(b)).value() as u64 == rf.mul(a, b), || {
                    format!("GF({q}): {a} * {b}")
                })?;
                for c in 0..q {
                    let (x, y, z) = (el(a), el(b), el(c));
                    ensure(lib.add(lib.add(x, y), z) == lib.add(x, lib.add(y, z)), || {
                        format!("GF({q}): additive associativity at {a},{b},{c}")
                    })?;
                    ensure(lib.mul(lib.mul(x, y), z) == lib.mul(x, lib.mul(y, z)), || {
                        format!("GF({q}): multiplicative associativity at {a},{b},{c}")
                    })?;
                    ensure(
                        lib.mul(x, lib.add(y, z)) == lib.add(lib.mul(x, y), lib.mul(x, z)),
                        || format!("GF({q}): distributivity at {a},{b},{c}"),
                    )?;
                }
            }
            let x = el(a);
            ensure(lib.add(x, lib.neg(x)).is_zero(), || format!("GF({q}): -{a}"))?;
            ensure(lib.times(x, rf.p).is_zero(), || format!("GF({q}): p * {a}"))?;
            if a != 0 {
                ensure(lib.mul(x, lib.inv(x).unwrap()) == lib.one(), || {
                    format!("GF({q}): {a}^-1")
                })?;
                // the multiplicative group has order q - 1
                ensure(lib.pow(x, q - 1) == lib.one(), || format!("GF({q}): {a}^(q-1)"))?;
            }
        }
        ensure(lib.inv(lib.zero()).is_err(), || format!("GF({q}): 0 has an inverse"))?;
        let suite = kuniform_core::checks::field_axioms(q).map_err(|e| e.to_string())?;
        ensure(suite.passed(), || {
            format!("GF({q}) axiom suite: {:?}", suite.failures.first())
        })?;
    }
    Ok(format!(
        "{} fields, {checked} element pairs against reference arithmetic",
        qs.len()
    ))
}

// ---------------------------------------------------------------- criterion 2

fn counting_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut cases = 0;
    for q in [2u64, 3, 4, 5] {
        let rf = RefField::like_library(q);
        for n in 1..=8usize {
            let nowhere_zero: Vec<Vec<u64>> = all_vectors(q - 1, n)
                .into_iter()
                .map(|v| v.into_iter().map(|x| x + 1).collect())
                .collect();
            let expect0: Count = count_orthogonal_nonzero(q, n as u64, DotTarget::Zero);
            let expect1: Count = count_orthogonal_nonzero(q, n as u64, DotTarget::One);
            // independent closed form, cleared of the division
            let qm1 = (q - 1) as i128;
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let ref0 = (qm1.pow(n as u32) + sign * qm1) / q as i128;
            let ref1 = (qm1.pow(n as u32) - sign) / q as i128;
            ensure(expect0 == Count::from(ref0) && expect1 == Count::from(ref1), || {
                format!("closed form q={q} n={n}: {expect0}/{expect1} vs {ref0}/{ref1}")
            })?;
            for _ in 0..20 {
                let u: Vec<u64> = (0..n).map(|_| rng.gen_range(1..q)).collect();
                let (mut zero, mut one) = (0i128, 0i128);
                for x in &nowhere_zero {
                    match rf.dot(x, &u) {
                        0 => zero += 1,
                        1 => one += 1,
                        _ => {}
                    }
                }
                ensure(zero == ref0 && one == ref1, || {
                    format!("q={q} n={n} u={u:?}: counted {zero}/{one}, expected {ref0}/{ref1}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} coefficient vectors, exact"))
}

// ---------------------------------------------------------------- criterion 3

fn spacecount_lemma() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let (mut cases, mut bound_cases) = (0, 0);
    for q in [3u64, 4] {
        let rf = RefField::like_library(q);
        for r in 2..=8usize {
            let space = all_vectors(q, r);
            for i in 2..=r {
                let mut per_k: Vec<Option<u128>> = vec![None; r + 1];
                for _ in 0..10 {
                    let mut v = vec![0u64; r];
                    let mut pos: Vec<usize> = (0..r).collect();
                    for t in 0..i {
                        let j = rng.gen_range(t..r);
                        pos.swap(t, j);
                        v[pos[t]] = rng.gen_range(1..q);
                    }
                    let mut counts = vec![0u128; r + 1];
                    for x in &space {
                        if rf.dot(x, &v) == 0 {
                            counts[x.iter().filter(|&&c| c == 0).count()] += 1;
                        }
                    }
                    for k in 0..=r {
                        let formula: Count = spacecount(q, r as u64, k as u64, i as u64).map_err(|e| e.to_string())?;
                        ensure(formula == big(counts[k]), || {
                            format!(
                                "q={q} r={r} k={k} i={i} v={v:?}: formula {formula}, counted {}",
                                counts[k]
                            )
                        })?;
                        if let Some(prev) = per_k[k] {
                            ensure(prev == counts[k], || {
                                format!("count depends on v at q={q} r={r} k={k} i={i}")
                            })?;
                        }
                        per_k[k] = Some(counts[k]);
                        cases += 1;
                    }
                }
                for k in 0..=r as u64 {
                    let (rr, qq) = (r as u64, q);
                    // r >= max(sqrt(q) k^{3/2}, q k), squared to stay in integers
                    if rr * rr >= qq * k * k * k && rr >= qq * k {
                        let count = per_k[k as usize].unwrap();
                        let lhs = count * (q * (q - 1)) as u128;
                        let rhs = binom(rr, k) * ((q - 1) as u128).pow((rr - k) as u32) * (q - 2) as u128;
                        ensure(lhs >= rhs, || format!("lower bound fails at q={q} r={r} k={k} i={i}"))?;
                        bound_cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{cases} (v, k) counts exact, lower bound checked at {bound_cases} (r, k, i)"
    ))
}

// ---------------------------------------------------- criteria 4 and 6 (shared runs)

/// Every oracle result of the exact-for-all-r grid, kept for the bound check.
struct Grid {
    runs: Vec<(String, OracleResult, Count)>,
}

fn weight_bound(q: u64, r: u64, k: u64) -> u128 {
    (0..=k.min(r))
        .map(|i| binom(r, i) * ((q - 1) as u128).pow(i as u32))
        .sum()
}

fn coweight_bound(q: u64, r: u64, k: u64) -> u128 {
    (0..=k.min(r))
        .map(|i| binom(r, i) * ((q - 1) as u128).pow((r - i) as u32))
        .sum()
}

fn downset_sum(sizes: &[usize], r: u64, set: &ProfileDownSet) -> u128 {
    set.iter()
        .map(|kappa| {
            let power: u128 = kappa
                .counts()
                .iter()
                .zip(sizes)
                .map(|(&k, &s)| (s as u128).pow(k as u32))
                .product();
            multinomial(r, kappa.counts()) * power
        })
        .sum()
}

fn exact_for_all_r(grid: &mut Grid) -> Outcome {
    let cfg = OracleConfig::default();
    let mut checked = 0;
    for q in [2u64, 3] {
        let f = field(q).unwrap();
        let mut systems = vec![(LabelSystem::full(f.clone()), Vec::new())];
        if q == 3 {
            let split = LabelSystem::from_values(f.clone(), &[vec![1], vec![2]]).unwrap();
            let gens = vec![
                vec![WeightProfile::new(vec![1, 1])],
                vec![WeightProfile::new(vec![2, 0]), WeightProfile::new(vec![0, 1])],
                vec![WeightProfile::new(vec![2, 1])],
            ];
            systems.push((split, gens));
        }
        for (labels, gens) in &systems {
            let sizes = labels.list_sizes();
            for r in 1..=4usize {
                let mut sets: Vec<(String, ProfileDownSet)> = if labels.len() == 1 {
                    (0..=r)
                        .map(|k| (format!("<= {k}"), ProfileDownSet::at_most(k)))
                        .collect()
                } else {
                    gens.iter()
                        .map(|g| {
                            let name = g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ");
                            (format!("below {name}"), downset_closure(g.clone()).unwrap())
                        })
                        .collect()
                };
                sets.push(("{}".into(), ProfileDownSet::new(Vec::new()).unwrap()));
                for (name, set) in sets {
                    let query =
                        OracleQuery::downset(labels.clone(), r, set.clone(), None).map_err(|e| e.to_string())?;
                    let res = run_oracle(&query, &cfg).map_err(|e| e.to_string())?;
                    let expected = downset_sum(&sizes, r as u64, &set);
                    ensure(res.max_count as u128 == expected, || {
                        format!(
                            "downset q={q} lists={sizes:?} r={r} S {name}: oracle {}, sum {expected}",
                            res.max_count
                        )
                    })?;
                    checked += 1;
                    grid.runs.push((
                        format!("downset q={q} lists={sizes:?} r={r} S {name}"),
                        res,
                        big(expected),
                    ));
                }
            }
        }
    }
    for r in 0..=3usize {
        let res = run_oracle(&OracleQuery::coweight(3, r, 0, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
        let expected = 2u128.pow(r as u32);
        ensure(res.max_count as u128 == expected, || {
            format!("coex q=3 r={r} k=0: oracle {}, expected {expected}", res.max_count)
        })?;
        checked += 1;
        grid.runs.push((
            format!("coweight q=3 r={r} k=0"),
            res,
            big(coweight_bound(3, r as u64, 0)),
        ));
    }
    for r in 2..=4usize {
        let res = run_oracle(&OracleQuery::weight(2, r, 2, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
        let expected = binom(r as u64 + 1, 2);
        ensure(res.max_count as u128 == expected, || {
            format!("ex q=2 r={r} k=2: oracle {}, expected {expected}", res.max_count)
        })?;
        checked += 1;
        grid.runs
            .push((format!("weight q=2 r={r} k=2"), res, big(weight_bound(2, r as u64, 2))));
    }
    Ok(format!("{checked} oracle values equal their all-r closed forms"))
}

fn upper_bound_soundness(grid: &mut Grid) -> Outcome {
    let cfg = OracleConfig::default();
    // the full weight / co-weight grid on top of criterion 4's runs
    for q in [2u64, 3] {
        for r in 1..=4usize {
            for k in 0..=r {
                let res = run_oracle(&OracleQuery::weight(q, r, k, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
                grid.runs.push((
                    format!("weight q={q} r={r} k={k}"),
                    res,
                    big(weight_bound(q, r as u64, k as u64)),
                ));
                if r <= 3 {
                    let res =
                        run_oracle(&OracleQuery::coweight(q, r, k, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
                    grid.runs.push((
                        format!("coweight q={q} r={r} k={k}"),
                        res,
                        big(coweight_bound(q, r as u64, k as u64)),
                    ));
                }
            }
        }
    }
    let split = LabelSystem::from_values(field(3).unwrap(), &[vec![1], vec![2]]).unwrap();
    for r in 1..=3usize {
        for counts in [[1usize, 0], [1, 1], [2, 1], [0, 2]] {
            let kappa = WeightProfile::new(counts.to_vec());
            let res = run_oracle(
                &OracleQuery::labeled(split.clone(), r, kappa.clone(), None).unwrap(),
                &cfg,
            )
            .map_err(|e| e.to_string())?;
            let bound = downset_sum(&[1, 1], r as u64, &downset_closure([kappa.clone()]).unwrap());
            grid.runs.push((
                format!("labeled q=3 ({{1}},{{2}}) r={r} kappa={kappa}"),
                res,
                big(bound),
            ));
        }
    }
    let mut per_n = 0;
    for (name, res, bound) in &grid.runs {
        for p in &res.per_n {
            per_n += 1;
            ensure(Count::from(p.max_count) <= *bound, || {
                format!("{name} n={}: oracle {} exceeds bound {bound}", p.n, p.max_count)
            })?;
        }
    }
    Ok(format!(
        "{} runs, {per_n} per-length maxima within their bound sums",
        grid.runs.len()
    ))
}

// ---------------------------------------------------------------- criterion 5

fn certify(
    rep: &ConstructionReport,
    rf: &RefField,
    expected_cols: u128,
    rank_cap: usize,
    what: &str,
) -> Result<(), String> {
    let rows = matrix_rows(&rep.matrix);
    let cols = columns_of(&rows);
    let n_cols = rep.matrix.n_cols();
    ensure(distinct(&cols), || format!("{what}: repeated columns"))?;
    ensure(
        n_cols as u128 == expected_cols && rep.claims.columns as u128 == expected_cols,
        || {
            format!(
                "{what}: {n_cols} columns, claimed {}, expected {expected_cols}",
                rep.claims.columns
            )
        },
    )?;
    let rank = rf.rank(&rows);
    let arank = rf.a_rank(&rows, n_cols);
    ensure(rank == rep.claims.rank && arank == rep.claims.arank, || {
        format!(
            "{what}: rank {rank} / a-rank {arank}, claimed {} / {}",
            rep.claims.rank, rep.claims.arank
        )
    })?;
    // affine families are bounded in a-rank, the others in rank
    let bounded = if what.starts_with("affine") { arank } else { rank };
    ensure(bounded <= rank_cap, || {
        format!("{what}: exceeds the rank budget {rank_cap}")
    })?;
    let v = rep.verify().map_err(|e| e.to_string())?;
    ensure(v.matches_claims, || format!("{what}: self-verification failed: {v:?}"))?;
    Ok(())
}

fn profiles_up_to(width: usize, max_norm: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=max_norm).map(move |k| {
                    let mut p = p.clone();
                    p.push(k);
                    p
                })
            })
            .filter(|p| p.iter().sum::<usize>() <= max_norm)
            .collect();
    }
    out
}

fn construction_certification() -> Outcome {
    let mut built = 0;
    for q in [2u64, 3, 4] {
        let rf = RefField::like_library(q);
        for r in 1..=6usize {
            for k in 0..=3usize {
                let m = if q == 2 && k % 2 == 0 { r + 1 } else { r };
                if k > m {
                    continue;
                }
                let rep = build_weight_family(q, r, k).map_err(|e| e.to_string())?;
                let expected = binom(m as u64, k as u64) * ((q - 1) as u128).pow(k as u32);
                certify(&rep, &rf, expected, r, &format!("weight q={q} r={r} k={k}"))?;
                ensure(
                    columns_of(&matrix_rows(&rep.matrix))
                        .iter()
                        .all(|c| c.iter().filter(|&&x| x != 0).count() == k),
                    || format!("weight q={q} r={r} k={k}: column of the wrong weight"),
                )?;
                built += 1;
            }
            for k in 0..=3usize.min(r) {
                if q == 2 && k > 0 {
                    continue;
                }
                let rep = build_coweight_family(q, r, k).map_err(|e| e.to_string())?;
                let expected = binom(r as u64, k as u64) * ((q - 1) as u128).pow((r - k) as u32);
                certify(&rep, &rf, expected, r, &format!("coweight q={q} r={r} k={k}"))?;
                ensure(
                    columns_of(&matrix_rows(&rep.matrix))
                        .iter()
                        .all(|c| c.iter().filter(|&&x| x == 0).count() == k),
                    || format!("coweight q={q} r={r} k={k}: column with the wrong number of zeros"),
                )?;
                built += 1;
            }
        }
    }
    let systems: Vec<(u64, Vec<Vec<u64>>)> = vec![
        (2, vec![vec![1]]),
        (3, vec![vec![1], vec![2]]),
        (3, vec![vec![1, 2]]),
        (3, vec![vec![2]]),
        (4, vec![vec![1], vec![2], vec![3]]),
        (4, vec![vec![1, 2], vec![3]]),
    ];
    let mut closed_shape = 0;
    for (q, lists) in &systems {
        let rf = RefField::like_library(*q);
        let labels = LabelSystem::from_values(field(*q).unwrap(), lists).unwrap();
        let sizes = labels.list_sizes();
        let singletons = sizes.iter().all(|&s| s == 1);
        for r in 1..=6usize {
            for counts in profiles_up_to(lists.len(), 3.min(r)) {
                let kappa = WeightProfile::new(counts.clone());
                let power: u128 = counts
                    .iter()
                    .zip(&sizes)
                    .map(|(&k, &s)| (s as u128).pow(k as u32))
                    .product();
                let sigma = lists
                    .iter()
                    .zip(&counts)
                    .fold(0u64, |acc, (l, &k)| rf.add(acc, rf.mul(l[0], k as u64 % rf.p)));
                let zero_sum = singletons && sigma == 0;
                let what = format!("labeled q={q} lists={lists:?} r={r} kappa={counts:?}");
                let m = if zero_sum { r + 1 } else { r };
                let rep = build_labeled_family(&labels, r, &kappa).map_err(|e| format!("{what}: {e}"))?;
                certify(&rep, &rf, multinomial(m as u64, &counts) * power, r, &what)?;
                built += 1;

                let m = if singletons { r } else { r - 1 };
                if kappa.norm() > m {
                    continue;
                }
                let what = format!("affine q={q} lists={lists:?} r={r} kappa={counts:?}");
                let rep = build_affine_family(&labels, r, &kappa).map_err(|e| format!("{what}: {e}"))?;
                certify(&rep, &rf, multinomial(m as u64, &counts) * power, r, &what)?;
                built += 1;
                if singletons && rep.matrix.n_cols() > 1 {
                    // all singleton-list vectors of length r: rank r - 1 exactly when
                    // sum l_i k_i = 0, else r; a-rank r either way
                    let rows = matrix_rows(&rep.matrix);
                    let rank = rf.rank(&rows);
                    let arank = rf.a_rank(&rows, rep.matrix.n_cols());
                    let want = if sigma == 0 { r - 1 } else { r };
                    ensure(rank == want && arank == r, || {
                        format!("{what}: rank {rank} a-rank {arank}, expected {want} and {r}")
                    })?;
                    closed_shape += 1;
                }
            }
        }
    }
    for (q, r) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3)] {
        let rf = RefField::like_library(q);
        let rep = build_dual_hamming(q, r, 1 << 20).map_err(|e| e.to_string())?;
        let rows = matrix_rows(&rep.matrix);
        let cols = columns_of(&rows);
        let want_cols = q.pow(r as u32) - 1;
        let want_weight = (q - 1) * q.pow(r as u32 - 1);
        ensure(cols.len() as u64 == want_cols && distinct(&cols), || {
            format!("dual Hamming ({q},{r}): {} columns", cols.len())
        })?;
        ensure(
            cols.iter()
                .all(|c| c.iter().filter(|&&x| x != 0).count() as u64 == want_weight),
            || format!("dual Hamming ({q},{r}): a column is not of weight {want_weight}"),
        )?;
        ensure(rf.rank(&rows) == r, || {
            format!("dual Hamming ({q},{r}): rank {}", rf.rank(&rows))
        })?;
        ensure(rep.is_certified(), || {
            format!("dual Hamming ({q},{r}): claims do not verify")
        })?;
        built += 1;
    }
    Ok(format!(
        "{built} matrices certified; affine rank/a-rank shape checked on {closed_shape} singleton families"
    ))
}

// ---------------------------------------------------------------- criterion 7

fn uniqueness() -> Outcome {
    let cfg = OracleConfig {
        witness_limit: usize::MAX,
        ..OracleConfig::default()
    };
    let mut gated = Vec::new();
    for r in 2..=4usize {
        let res = run_oracle(&OracleQuery::weight(2, r, 2, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
        ensure(res.max_count as u128 == binom(r as u64 + 1, 2), || {
            format!("q=2 k=2 r={r} not extremal")
        })?;
        let rep = check_uniqueness(&res, r + 1).map_err(|e| e.to_string())?;
        ensure(
            !rep.truncated && rep.supports_match && rep.unique_up_to_symmetry == Some(true),
            || {
                format!(
                    "q=2 k=2 r={r}: supports {:?}, orbits {:?}",
                    rep.supports, rep.orbit_count
                )
            },
        )?;
        gated.push(format!("q=2 k=2 r={r}: {} witnesses", res.witness_count));
    }
    for r in 1..=3usize {
        // exactly r rows: the support is all r of them
        let res =
            run_oracle(&OracleQuery::coweight(3, r, 0, Some(vec![r])).unwrap(), &cfg).map_err(|e| e.to_string())?;
        ensure(res.max_count == 1 << r, || format!("q=3 k=0 r={r} not extremal"))?;
        let rep = check_uniqueness(&res, r).map_err(|e| e.to_string())?;
        ensure(rep.supports_match && rep.unique_up_to_symmetry == Some(true), || {
            format!("q=3 k=0 r={r} n={r}: supports {:?}", rep.supports)
        })?;
        // extra rows: every row is a multiple of one of r rows
        let res = run_oracle(&OracleQuery::coweight(3, r, 0, Some(vec![r, r + 1])).unwrap(), &cfg)
            .map_err(|e| e.to_string())?;
        let rep = check_uniqueness(&res, r).map_err(|e| e.to_string())?;
        ensure(
            !rep.truncated && rep.row_classes_match && rep.unique_up_to_symmetry == Some(true),
            || format!("q=3 k=0 r={r} n<={}: row classes {:?}", r + 1, rep.row_classes),
        )?;
        gated.push(format!("q=3 k=0 r={r}: {} witnesses", res.witness_count));
    }
    // other small-r equalities: reported, not gated
    let mut findings = Vec::new();
    for q in [2u64, 3] {
        for r in 1..=3usize {
            for k in 1..=r {
                if q == 2 && k == 2 {
                    continue;
                }
                let m = if q == 2 && k % 2 == 0 { r + 1 } else { r };
                let formula = binom(m as u64, k as u64) * ((q - 1) as u128).pow(k as u32);
                let res = run_oracle(&OracleQuery::weight(q, r, k, None).unwrap(), &cfg).map_err(|e| e.to_string())?;
                if res.max_count as u128 == formula {
                    let rep = check_uniqueness(&res, m).map_err(|e| e.to_string())?;
                    if !rep.supports_match {
                        findings.push(format!(
                            "q={q} r={r} k={k} supports {:?}",
                            rep.supports.iter().collect::<HashSet<_>>()
                        ));
                    }
                }
            }
        }
    }
    let note = if findings.is_empty() {
        String::new()
    } else {
        format!("; findings outside the all-r families: {}", findings.join(", "))
    };
    Ok(format!("{}{note}", gated.join(", ")))
}

// ---------------------------------------------------------------- criterion 8

fn recursion() -> Outcome {
    let labels = LabelSystem::from_values(field(2).unwrap(), &[vec![1]]).unwrap();
    let cfg = OracleConfig::default();
    let mut rows = Vec::new();
    for k in [2usize, 3] {
        let kappa = WeightProfile::single(k);
        let rep = verify_recursion(&labels, &kappa, k + 2..=5, &cfg).map_err(|e| e.to_string())?;
        ensure(rep.rows.len() == 4 - k, || format!("kappa=({k}): wrong range"))?;
        for row in &rep.rows {
            // independent recomputation of the right-hand side
            ensure(
                row.rhs == row.same_profile + row.lowered.iter().map(|&(_, s, v)| s as u64 * v).sum::<u64>(),
                || format!("kappa=({k}) r={}: inconsistent right-hand side", row.r),
            )?;
            ensure(row.in_range && row.holds, || {
                format!("kappa=({k}) r={}: {} > {}", row.r, row.lhs, row.rhs)
            })?;
            rows.push(format!("({k}) r={}: {}<={}", row.r, row.lhs, row.rhs));
        }
    }
    Ok(rows.join(", "))
}

// ---------------------------------------------------------------------- main

fn main() {
    let mut grid = Grid { runs: Vec::new() };
    let mut results: BTreeMap<u32, bool> = BTreeMap::new();
    let mut report = |id: u32, name: &str, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        println!(
            "criterion {id} [{}] {name}: {detail} ({:.2}s, limit {}s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
        results.insert(id, ok);
    };
    report(1, "field correctness", Duration::from_secs(5), &mut field_correctness);
    report(
        2,
        "orthogonal nowhere-zero counting",
        Duration::from_secs(30),
        &mut counting_lemma,
    );
    report(
        3,
        "co-weight vectors orthogonal to a weight-i vector",
        Duration::from_secs(120),
        &mut spacecount_lemma,
    );
    let timer = Instant::now();
    report(4, "exact-for-all-r values", Duration::from_secs(600), &mut || {
        exact_for_all_r(&mut grid)
    });
    let c4 = timer.elapsed();
    report(
        5,
        "construction certification",
        Duration::from_secs(60),
        &mut construction_certification,
    );
    // criterion 6 shares criterion 4's ten-minute allowance
    let remaining = Duration::from_secs(600).saturating_sub(c4);
    report(6, "upper-bound soundness", remaining, &mut || {
        upper_bound_soundness(&mut grid)
    });
    report(
        7,
        "uniqueness at verified equalities",
        Duration::from_secs(300),
        &mut uniqueness,
    );
    report(8, "affine recursion", Duration::from_secs(600), &mut recursion);
    let failed: Vec<u32> = results.iter().filter(|(_, &ok)| !ok).map(|(&id, _)| id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
