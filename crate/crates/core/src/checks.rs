//! Verification suites: exhaustive or seeded-random comparisons of closed forms
//! against direct enumeration. Each returns a [`SuiteReport`] listing every mismatch.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::formulas::{
    bound_sums, coex_formula, count_orthogonal_nonzero, downset_count, ex_formula, spacecount,
    spacecount_bound_applies, spacecount_meets_lower_bound, CountMode, DotTarget,
};
use crate::gf::{field, FieldSpec};
use crate::search::{run_oracle, OracleConfig, OracleQuery};
use crate::subspace::odometer_next;
use crate::vectors::{LabelSystem, ProfileDownSet};
use crate::Count;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub case: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub failures: Vec<Finding>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<T: PartialEq + ToString>(&mut self, case: impl FnOnce() -> String, expected: T, got: T) {
        self.checks += 1;
        if expected != got {
            self.failures.push(Finding {
                case: case(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// Every field axiom over all pairs and triples, plus additive and multiplicative
/// group orders, the characteristic and the Frobenius map.
pub fn field_axioms(q: u64) -> Result<SuiteReport> {
    let f = field(q)?;
    let mut rep = SuiteReport::new(&format!("field-axioms q={q}"));
    let els: Vec<_> = f.elements().collect();
    let p = f.characteristic() as u64;
    let (zero, one) = (f.zero(), f.one());
    for &a in &els {
        rep.check(|| format!("{a} + 0"), a, f.add(a, zero));
        rep.check(|| format!("{a} * 1"), a, f.mul(a, one));
        rep.check(|| format!("{a} + -{a}"), zero, f.add(a, f.neg(a)));
        rep.check(|| format!("{a} * 0"), zero, f.mul(a, zero));
        rep.check(|| format!("p * {a}"), zero, f.times(a, p));
        if !a.is_zero() {
            let inv = f.inv(a)?;
            rep.check(|| format!("{a} * {a}^-1"), one, f.mul(a, inv));
            rep.check(|| format!("{a}^(q-1)"), one, f.pow(a, q - 1));
        }
        for &b in &els {
            rep.check(|| format!("{a} + {b} commutes"), f.add(a, b), f.add(b, a));
            rep.check(|| format!("{a} * {b} commutes"), f.mul(a, b), f.mul(b, a));
            rep.check(
                || format!("Frobenius on {a} + {b}"),
                f.add(f.pow(a, p), f.pow(b, p)),
                f.pow(f.add(a, b), p),
            );
            if !a.is_zero() && !b.is_zero() {
                rep.check(|| format!("{a} * {b} nonzero"), true, !f.mul(a, b).is_zero());
            }
            for &c in &els {
                rep.check(
                    || format!("({a} + {b}) + {c}"),
                    f.add(f.add(a, b), c),
                    f.add(a, f.add(b, c)),
                );
                rep.check(
                    || format!("({a} * {b}) * {c}"),
                    f.mul(f.mul(a, b), c),
                    f.mul(a, f.mul(b, c)),
                );
                rep.check(
                    || format!("{a} * ({b} + {c})"),
                    f.add(f.mul(a, b), f.mul(a, c)),
                    f.mul(a, f.add(b, c)),
                );
            }
        }
    }
    rep.check(|| "p^e = q".into(), q, p.pow(f.degree()));
    Ok(rep)
}

fn random_nonzero(f: &FieldSpec, rng: &mut ChaCha8Rng) -> u8 {
    rng.gen_range(1..f.order()) as u8
}

fn dot(f: &FieldSpec, x: &[u8], y: &[u8]) -> u8 {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add_u8(acc, f.mul_u8(a, b)))
}

/// Nowhere-zero solutions of `x . u = 0` and `x . u = 1` for random nowhere-zero `u`,
/// counted directly and compared with the closed form, for `1 <= n <= max_n`.
pub fn counting_lemma(q: u64, max_n: usize, samples: usize, seed: u64) -> Result<SuiteReport> {
    let f = field(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(&format!("counting-lemma q={q}"));
    for n in 1..=max_n {
        let expected0: Count = count_orthogonal_nonzero(q, n as u64, DotTarget::Zero);
        let expected1: Count = count_orthogonal_nonzero(q, n as u64, DotTarget::One);
        for _ in 0..samples {
            let u: Vec<u8> = (0..n).map(|_| random_nonzero(&f, &mut rng)).collect();
            let (mut zero, mut one) = (0u64, 0u64);
            let mut digits = vec![0u8; n];
            loop {
                let x: Vec<u8> = digits.iter().map(|d| d + 1).collect();
                match dot(&f, &x, &u) {
                    0 => zero += 1,
                    1 => one += 1,
                    _ => {}
                }
                if !odometer_next(&mut digits, f.order() - 1) {
                    break;
                }
            }
            rep.check(|| format!("n={n} u={u:?} beta=0"), expected0.clone(), Count::from(zero));
            rep.check(|| format!("n={n} u={u:?} beta=1"), expected1.clone(), Count::from(one));
        }
    }
    Ok(rep)
}

/// For random weight-i vectors `v` of length r, counts co-weight-k vectors
/// orthogonal to `v` by enumeration of GF(q)^r, for every `k <= r` and `2 <= i <= r`,
/// `r <= max_r`; also checks the lower bound wherever it is guaranteed.
pub fn spacecount_suite(q: u64, max_r: usize, samples: usize, seed: u64) -> Result<SuiteReport> {
    let f = field(q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = SuiteReport::new(&format!("spacecount q={q}"));
    for r in 2..=max_r {
        for i in 2..=r {
            for _ in 0..samples {
                let v = random_weight_vector(&f, r, i, &mut rng);
                let mut by_zeros = vec![0u64; r + 1];
                let mut x = vec![0u8; r];
                loop {
                    if dot(&f, &x, &v) == 0 {
                        by_zeros[x.iter().filter(|&&e| e == 0).count()] += 1;
                    }
                    if !odometer_next(&mut x, f.order()) {
                        break;
                    }
                }
                for (k, &got) in by_zeros.iter().enumerate() {
                    let expected: Count = spacecount(q, r as u64, k as u64, i as u64)?;
                    rep.check(|| format!("r={r} k={k} i={i} v={v:?}"), expected, Count::from(got));
                }
            }
            if q >= 3 {
                for k in 0..=r as u64 {
                    if spacecount_bound_applies(q, r as u64, k) {
                        let ok = spacecount_meets_lower_bound::<Count>(q, r as u64, k, i as u64)?;
                        rep.check(|| format!("lower bound r={r} k={k} i={i}"), true, ok);
                    }
                }
            }
        }
    }
    Ok(rep)
}

fn random_weight_vector(f: &FieldSpec, r: usize, i: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let mut positions: Vec<usize> = (0..r).collect();
    for t in 0..i {
        let j = rng.gen_range(t..r);
        positions.swap(t, j);
    }
    let mut v = vec![0u8; r];
    for &p in &positions[..i] {
        v[p] = random_nonzero(f, rng);
    }
    v
}

/// The all-r identities compared against exhaustive oracles on a small grid:
/// down-set sums, the nowhere-zero co-weight count and the binary weight-2 count,
/// plus the upper-bound sums at every scanned length.
pub fn formula_vs_oracle(qs: &[u64], max_r: usize, config: &OracleConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("formula-vs-oracle");
    for &q in qs {
        let labels = LabelSystem::full(field(q)?);
        for r in 1..=max_r {
            for k in 0..=r {
                let set = ProfileDownSet::at_most(k);
                let res = run_oracle(&OracleQuery::downset(labels.clone(), r, set.clone(), None)?, config)?;
                let expected: Count = downset_count(&labels, r as u64, &set)?;
                rep.check(
                    || format!("downset q={q} r={r} k<={k}"),
                    expected,
                    Count::from(res.max_count),
                );
            }
            for k in 0..=r {
                let res = run_oracle(&OracleQuery::weight(q, r, k, None)?, config)?;
                let bound: Count = bound_sums(q, r as u64, k as u64, CountMode::Weight);
                for p in &res.per_n {
                    rep.check(
                        || format!("weight bound q={q} r={r} k={k} n={}", p.n),
                        true,
                        Count::from(p.max_count) <= bound,
                    );
                }
                if q == 2 && k == 2 || k == 0 {
                    let expected = ex_formula::<Count>(q, r as u64, k as u64)?.value;
                    rep.check(|| format!("ex q={q} r={r} k={k}"), expected, Count::from(res.max_count));
                }
            }
            for k in 0..=r {
                let res = run_oracle(&OracleQuery::coweight(q, r, k, None)?, config)?;
                let bound: Count = bound_sums(q, r as u64, k as u64, CountMode::Coweight);
                for p in &res.per_n {
                    rep.check(
                        || format!("co-weight bound q={q} r={r} k={k} n={}", p.n),
                        true,
                        Count::from(p.max_count) <= bound,
                    );
                }
                if k == 0 && q >= 3 {
                    let expected = coex_formula::<Count>(q, r as u64, 0)?.value;
                    rep.check(|| format!("coex q={q} r={r} k=0"), expected, Count::from(res.max_count));
                }
            }
        }
    }
    Ok(rep)
}
