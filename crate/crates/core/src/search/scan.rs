use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::{Mode, OracleConfig, OracleQuery, OracleResult, PerN, Witness};
use crate::error::{Error, Result};
use crate::formulas::{binomial, gaussian_binomial};
use crate::gf::Field;
use crate::linalg::{GfMatrix, GfVector};
use crate::subspace::{odometer_next, pivot_sets, MemberCursor, PivotProfile, Subspace};
use crate::vectors::raw_profile_into;
use crate::Count;

/// Membership test on raw entries (the tail, for affine queries).
enum Predicate {
    Weight(usize),
    Coweight(usize),
    Profile {
        owner: Vec<Option<usize>>,
        kappa: Vec<usize>,
    },
    DownSet {
        owner: Vec<Option<usize>>,
        width: usize,
        set: HashSet<Vec<usize>>,
    },
}

impl Predicate {
    fn from_mode(mode: &Mode) -> Self {
        match mode {
            Mode::Weight { k } => Predicate::Weight(*k),
            Mode::Coweight { k } => Predicate::Coweight(*k),
            Mode::Labeled { labels, kappa } | Mode::Affine { labels, kappa } => Predicate::Profile {
                owner: labels.owner_table().to_vec(),
                kappa: kappa.counts().to_vec(),
            },
            Mode::DownSet { labels, set } => Predicate::DownSet {
                owner: labels.owner_table().to_vec(),
                width: labels.len(),
                set: set.iter().map(|p| p.counts().to_vec()).collect(),
            },
        }
    }

    fn scratch(&self) -> Vec<usize> {
        match self {
            Predicate::Profile { kappa, .. } => vec![0; kappa.len()],
            Predicate::DownSet { width, .. } => vec![0; *width],
            _ => Vec::new(),
        }
    }

    #[inline]
    fn accepts(&self, v: &[u8], scratch: &mut [usize]) -> bool {
        match self {
            Predicate::Weight(k) => v.iter().filter(|&&x| x != 0).count() == *k,
            Predicate::Coweight(k) => v.iter().filter(|&&x| x == 0).count() == *k,
            Predicate::Profile { owner, kappa } => raw_profile_into(v, owner, scratch) && scratch == &kappa[..],
            Predicate::DownSet { owner, set, .. } => raw_profile_into(v, owner, scratch) && set.contains(&*scratch),
        }
    }

    /// Admissible columns of length `n` that vanish on the first `lead` coordinates.
    fn ambient_bound(&self, q: u64, n: usize, lead: usize) -> u64 {
        let free = (n - lead) as u64;
        let count: Count = match self {
            Predicate::Weight(k) => binomial::<Count>(free, *k as u64) * Count::from(q - 1).pow(*k as u32),
            Predicate::Coweight(k) => {
                if *k < lead || *k > n {
                    return 0;
                }
                binomial::<Count>(free, (*k - lead) as u64) * Count::from(q - 1).pow((n - k) as u32)
            }
            Predicate::Profile { kappa, .. } => {
                if kappa.iter().sum::<usize>() > n - lead {
                    return 0;
                }
                return u64::MAX;
            }
            Predicate::DownSet { .. } => return u64::MAX,
        };
        count.to_u64().unwrap_or(u64::MAX)
    }
}

struct Tally {
    max: u64,
    count: u64,
    /// Raw RREF bases of maximizing subspaces, ascending, at most `limit`.
    bases: Vec<(Vec<usize>, Vec<u8>)>,
}

impl Tally {
    fn empty() -> Self {
        Tally {
            max: 0,
            count: 0,
            bases: Vec::new(),
        }
    }

    fn merge(mut self, other: Tally, limit: usize) -> Tally {
        if other.max > self.max {
            return other;
        }
        if other.max == self.max {
            self.count += other.count;
            self.bases.extend(other.bases);
            self.bases.sort_by(|a, b| a.1.cmp(&b.1));
            self.bases.truncate(limit);
        }
        self
    }
}

struct Scan<'a> {
    field: &'a Field,
    pred: &'a Predicate,
    affine: bool,
    ambient: usize,
    dim: usize,
    limit: usize,
}

impl Scan<'_> {
    fn count(&self, cursor: &mut MemberCursor, scratch: &mut [usize]) -> u64 {
        let mut hits = 0;
        loop {
            let m = cursor.member();
            let ok = if self.affine {
                m[0] == 1 && self.pred.accepts(&m[1..], scratch)
            } else {
                self.pred.accepts(m, scratch)
            };
            hits += ok as u64;
            if !cursor.advance() {
                return hits;
            }
        }
    }

    fn bound(&self, pivots: &[usize]) -> u64 {
        let q = self.field.order() as u64;
        let lead = pivots.first().copied().unwrap_or(self.ambient);
        if self.affine {
            if lead != 0 {
                return 0;
            }
            // first coordinates of members are uniform over the field
            let members = q.saturating_pow(self.dim as u32 - 1);
            return members.min(self.pred.ambient_bound(q, self.ambient - 1, 0));
        }
        let members = q.saturating_pow(self.dim as u32);
        members.min(self.pred.ambient_bound(q, self.ambient, lead))
    }

    fn profile(&self, pivots: Vec<usize>, incumbent: &AtomicU64) -> Tally {
        let bound = self.bound(&pivots);
        if bound == 0 || bound < incumbent.load(Ordering::Relaxed) {
            return Tally::empty();
        }
        let q = self.field.order();
        let profile = PivotProfile::new(self.ambient, pivots);
        let mut values = vec![0u8; profile.free.len()];
        let mut basis = profile.base_basis();
        let mut scratch = self.pred.scratch();
        let mut tally = Tally::empty();
        loop {
            profile.write_free(&mut basis, &values);
            let mut cursor = MemberCursor::new(self.field, &basis, self.dim, self.ambient);
            let hits = self.count(&mut cursor, &mut scratch);
            if hits > 0 && hits >= tally.max {
                if hits > tally.max {
                    tally = Tally::empty();
                    tally.max = hits;
                    incumbent.fetch_max(hits, Ordering::Relaxed);
                }
                tally.count += 1;
                if tally.bases.len() < self.limit {
                    tally.bases.push((profile.pivots.clone(), basis.clone()));
                }
            }
            if !odometer_next(&mut values, q) {
                return tally;
            }
        }
    }

    fn run(&self) -> Tally {
        let incumbent = AtomicU64::new(0);
        let sets: Vec<Vec<usize>> = pivot_sets(self.ambient, self.dim).collect();
        let limit = self.limit;
        sets.into_par_iter()
            .map(|p| self.profile(p, &incumbent))
            .reduce(Tally::empty, |a, b| a.merge(b, limit))
    }
}

fn check_budgets(query: &OracleQuery, config: &OracleConfig) -> Result<()> {
    let q = query.field.order() as u64;
    let mut total = Count::from(0);
    for &n in &query.n_list {
        total += gaussian_binomial::<Count>(q, query.ambient(n) as u64, query.r as u64);
    }
    if total > Count::from(config.subspace_budget) {
        return Err(Error::budget("subspaces", total, config.subspace_budget));
    }
    let members = Count::from(q).pow(query.r as u32);
    if members > Count::from(config.member_budget) {
        return Err(Error::budget("subspace members", members, config.member_budget));
    }
    Ok(())
}

fn witness(query: &OracleQuery, pred: &Predicate, n: usize, pivots: Vec<usize>, basis: Vec<u8>) -> Witness {
    let ambient = query.ambient(n);
    let affine = query.mode.is_affine();
    let subspace = Subspace::from_rref_raw(query.field.clone(), ambient, pivots, basis);
    let mut cursor = MemberCursor::new(&query.field, subspace.basis().raw(), query.r, ambient);
    let mut scratch = pred.scratch();
    let mut columns = Vec::new();
    loop {
        let m = cursor.member();
        let tail = if affine { &m[1..] } else { m };
        if (!affine || m[0] == 1) && pred.accepts(tail, &mut scratch) {
            columns.push(GfVector::from_raw(query.field.clone(), tail));
        }
        if !cursor.advance() {
            break;
        }
    }
    let support = (0..n)
        .filter(|&i| columns.iter().any(|c| !c.get(i).is_zero()))
        .collect();
    let columns = GfMatrix::from_columns(query.field.clone(), n, &columns).expect("columns have length n");
    Witness {
        n,
        subspace,
        columns,
        support,
    }
}

pub(super) fn run(query: &OracleQuery, config: &OracleConfig) -> Result<OracleResult> {
    check_budgets(query, config)?;
    let pred = Predicate::from_mode(&query.mode);
    let mut per_n = Vec::with_capacity(query.n_list.len());
    let mut tallies = Vec::with_capacity(query.n_list.len());
    for &n in &query.n_list {
        let scan = Scan {
            field: &query.field,
            pred: &pred,
            affine: query.mode.is_affine(),
            ambient: query.ambient(n),
            dim: query.r,
            limit: config.witness_limit,
        };
        let tally = if query.r == 0 {
            // the zero subspace alone
            let zero = vec![0u8; scan.ambient];
            let hit = !scan.affine && pred.accepts(&zero, &mut pred.scratch());
            Tally {
                max: hit as u64,
                count: hit as u64,
                bases: if hit && config.witness_limit > 0 {
                    vec![(Vec::new(), Vec::new())]
                } else {
                    Vec::new()
                },
            }
        } else {
            scan.run()
        };
        per_n.push(PerN {
            n,
            max_count: tally.max,
            witness_count: tally.count,
        });
        tallies.push((n, tally));
    }
    let max_count = per_n.iter().map(|p| p.max_count).max().unwrap_or(0);
    let best_n = per_n
        .iter()
        .find(|p| p.max_count == max_count)
        .map(|p| p.n)
        .unwrap_or(query.n_list[0]);
    let mut witnesses = Vec::new();
    let mut witness_count = 0;
    if max_count > 0 {
        for (n, tally) in tallies {
            if tally.max != max_count {
                continue;
            }
            witness_count += tally.count;
            for (pivots, basis) in tally.bases {
                if witnesses.len() < config.witness_limit {
                    witnesses.push(witness(query, &pred, n, pivots, basis));
                }
            }
        }
    }
    Ok(OracleResult {
        query: query.clone(),
        max_count,
        best_n,
        per_n,
        truncated: (witnesses.len() as u64) < witness_count,
        witnesses,
        witness_count,
        exhaustive: true,
    })
}
