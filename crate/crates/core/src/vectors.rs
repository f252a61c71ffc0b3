//! Label systems, weight profiles and (L, kappa)-vectors.
//!
//! A label system is a tuple of disjoint, nonempty sets of nonzero field elements.
//! A vector is an (L, kappa)-vector when it has exactly `kappa[i]` entries drawn from
//! list `i` and zeros everywhere else.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};
use crate::linalg::{same_field, GfVector};

#[derive(Clone, PartialEq, Eq)]
pub struct LabelSystem {
    field: Field,
    lists: Vec<Vec<FieldElement>>,
    /// list index for each field element, by element value
    owner: Vec<Option<usize>>,
}

impl fmt::Debug for LabelSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelSystem(GF({}), {:?})", self.field.order(), self.lists)
    }
}

impl LabelSystem {
    pub fn new(field: Field, lists: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut owner = vec![None; field.order()];
        for (i, list) in lists.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidLabels(format!("list {i} is empty")));
            }
            for &e in list {
                if !field.contains(e) {
                    return Err(Error::ElementOutOfRange {
                        value: e.value() as u64,
                        q: field.order(),
                    });
                }
                if e.is_zero() {
                    return Err(Error::InvalidLabels(format!("list {i} contains 0")));
                }
                if let Some(j) = owner[e.value()] {
                    return Err(Error::InvalidLabels(format!("label {e} appears in lists {j} and {i}")));
                }
                owner[e.value()] = Some(i);
            }
        }
        let lists = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        Ok(LabelSystem { field, lists, owner })
    }

    pub fn from_values(field: Field, lists: &[Vec<u64>]) -> Result<Self> {
        let lists = lists
            .iter()
            .map(|l| l.iter().map(|&v| field.element(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        LabelSystem::new(field, lists)
    }

    /// The single list of all nonzero elements; (L, (k))-vectors are then weight-k vectors.
    pub fn full(field: Field) -> Self {
        let all = field.nonzero_elements();
        LabelSystem::new(field, vec![all]).expect("nonzero elements form a valid list")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Number of lists `s`.
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn lists(&self) -> &[Vec<FieldElement>] {
        &self.lists
    }

    pub fn list_sizes(&self) -> Vec<usize> {
        self.lists.iter().map(Vec::len).collect()
    }

    /// Index of the list holding `e`, if any.
    pub fn list_of(&self, e: FieldElement) -> Option<usize> {
        self.owner.get(e.value()).copied().flatten()
    }

    pub(crate) fn owner_table(&self) -> &[Option<usize>] {
        &self.owner
    }

    pub fn is_singletons(&self) -> bool {
        self.lists.iter().all(|l| l.len() == 1)
    }

    /// `sum_i l_i k_i` evaluated in the field when every list is a singleton.
    /// The integer multiplicities act through the characteristic.
    pub fn singleton_sum(&self, kappa: &WeightProfile) -> Option<FieldElement> {
        if !self.is_singletons() || kappa.len() != self.len() {
            return None;
        }
        let f = &self.field;
        Some(
            self.lists
                .iter()
                .zip(kappa.counts())
                .fold(FieldElement::ZERO, |acc, (l, &k)| f.add(acc, f.times(l[0], k as u64))),
        )
    }

    /// Singleton lists with `sum_i l_i k_i = 0`: the case where all (L, kappa)-vectors
    /// lie in the hyperplane orthogonal to the all-ones vector.
    pub fn is_zero_sum(&self, kappa: &WeightProfile) -> bool {
        self.singleton_sum(kappa).is_some_and(FieldElement::is_zero)
    }

    pub(crate) fn check_profile(&self, kappa: &WeightProfile) -> Result<()> {
        if kappa.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                got: kappa.len(),
            });
        }
        Ok(())
    }
}

/// Counts `(k_1, ..., k_s)` of entries per label list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightProfile(Vec<usize>);

impl WeightProfile {
    pub fn new(counts: Vec<usize>) -> Self {
        WeightProfile(counts)
    }

    pub fn single(k: usize) -> Self {
        WeightProfile(vec![k])
    }

    pub fn zeros(s: usize) -> Self {
        WeightProfile(vec![0; s])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `||kappa|| = sum k_i`.
    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// Coordinatewise order.
    pub fn le(&self, other: &WeightProfile) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `kappa - e_i`, or `None` when `k_i = 0`.
    pub fn minus_unit(&self, i: usize) -> Option<WeightProfile> {
        let k = *self.0.get(i)?;
        (k > 0).then(|| {
            let mut c = self.0.clone();
            c[i] -= 1;
            WeightProfile(c)
        })
    }

    /// Every profile below or equal to this one.
    pub fn lower_set(&self) -> Vec<WeightProfile> {
        if self.0.is_empty() {
            return vec![WeightProfile(Vec::new())];
        }
        self.0
            .iter()
            .map(|&k| 0..=k)
            .multi_cartesian_product()
            .map(WeightProfile)
            .collect()
    }
}

impl From<Vec<usize>> for WeightProfile {
    fn from(v: Vec<usize>) -> Self {
        WeightProfile(v)
    }
}

impl fmt::Display for WeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A finite set of profiles closed under the coordinatewise order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ProfileDownSet {
    profiles: BTreeSet<WeightProfile>,
}

impl ProfileDownSet {
    /// Validates that `profiles` is already closed downward.
    pub fn new(profiles: impl IntoIterator<Item = WeightProfile>) -> Result<Self> {
        let profiles: BTreeSet<_> = profiles.into_iter().collect();
        check_lengths(&profiles)?;
        for p in &profiles {
            if let Some(missing) = p.lower_set().into_iter().find(|lower| !profiles.contains(lower)) {
                return Err(Error::NotADownSet(missing.to_string()));
            }
        }
        Ok(ProfileDownSet { profiles })
    }

    /// `{(0), (1), ..., (k)}`, the down-set behind "weight at most k".
    pub fn at_most(k: usize) -> Self {
        ProfileDownSet {
            profiles: (0..=k).map(WeightProfile::single).collect(),
        }
    }

    pub fn contains(&self, kappa: &WeightProfile) -> bool {
        self.profiles.contains(kappa)
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeightProfile> {
        self.profiles.iter()
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    /// Profile length shared by all members; `None` for the empty set.
    pub fn width(&self) -> Option<usize> {
        self.profiles.iter().next().map(WeightProfile::len)
    }

    pub fn max_norm(&self) -> usize {
        self.profiles.iter().map(WeightProfile::norm).max().unwrap_or(0)
    }
}

fn check_lengths(profiles: &BTreeSet<WeightProfile>) -> Result<()> {
    let mut it = profiles.iter();
    if let Some(first) = it.next() {
        if let Some(bad) = it.find(|p| p.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                got: bad.len(),
            });
        }
    }
    Ok(())
}

/// Smallest down-set containing `profiles`.
pub fn downset_closure(profiles: impl IntoIterator<Item = WeightProfile>) -> Result<ProfileDownSet> {
    let seeds: BTreeSet<_> = profiles.into_iter().collect();
    check_lengths(&seeds)?;
    let profiles = seeds.iter().flat_map(WeightProfile::lower_set).collect();
    Ok(ProfileDownSet { profiles })
}

pub fn weight(v: &GfVector) -> usize {
    v.weight()
}

pub fn coweight(v: &GfVector) -> usize {
    v.coweight()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelMatch {
    Profile(WeightProfile),
    /// Some nonzero entry belongs to no list.
    NotLKappa,
}

impl LabelMatch {
    pub fn profile(self) -> Option<WeightProfile> {
        match self {
            LabelMatch::Profile(p) => Some(p),
            LabelMatch::NotLKappa => None,
        }
    }
}

pub fn profile_of(v: &GfVector, labels: &LabelSystem) -> Result<LabelMatch> {
    same_field(v.field(), labels.field())?;
    let mut counts = vec![0; labels.len()];
    for &e in v.entries() {
        if e.is_zero() {
            continue;
        }
        match labels.list_of(e) {
            Some(i) => counts[i] += 1,
            None => return Ok(LabelMatch::NotLKappa),
        }
    }
    Ok(LabelMatch::Profile(WeightProfile(counts)))
}

/// Profile of a raw entry slice; `None` when some nonzero entry is unlabeled.
#[inline]
pub(crate) fn raw_profile_into(entries: &[u8], owner: &[Option<usize>], counts: &mut [usize]) -> bool {
    counts.iter_mut().for_each(|c| *c = 0);
    for &e in entries {
        if e == 0 {
            continue;
        }
        match owner[e as usize] {
            Some(i) => counts[i] += 1,
            None => return false,
        }
    }
    true
}

/// Every (L, kappa)-vector of length `n`: supports in lexicographic order, then the
/// split of each support among the lists (list 0 first, each block lexicographic),
/// then the labels by position.
pub fn enumerate_profile_vectors(
    n: usize,
    labels: &LabelSystem,
    kappa: &WeightProfile,
) -> Result<impl Iterator<Item = GfVector>> {
    labels.check_profile(kappa)?;
    if kappa.norm() > n {
        return Err(Error::ProfileTooHeavy {
            norm: kappa.norm() as u64,
            len: n as u64,
        });
    }
    let field = labels.field().clone();
    let lists = labels.lists().to_vec();
    let counts = kappa.counts().to_vec();
    Ok((0..n).combinations(kappa.norm()).flat_map(move |support| {
        let field = field.clone();
        let lists = lists.clone();
        split_support(support, &counts).flat_map(move |assignment| {
            // assignment[pos] = list index, in ascending position order
            let choices: Vec<Vec<FieldElement>> = assignment.iter().map(|&(_, l)| lists[l].clone()).collect();
            let positions: Vec<usize> = assignment.iter().map(|&(p, _)| p).collect();
            let field = field.clone();
            label_products(choices).map(move |labels| {
                let mut entries = vec![FieldElement::ZERO; n];
                for (&p, &e) in positions.iter().zip(&labels) {
                    entries[p] = e;
                }
                GfVector::new(field.clone(), entries).expect("labels belong to the field")
            })
        })
    }))
}

/// Every length-n vector with exactly `k` zeros.
pub fn enumerate_coweight_vectors(n: usize, field: &Field, k: usize) -> Result<impl Iterator<Item = GfVector>> {
    if k > n {
        return Err(Error::ProfileTooHeavy {
            norm: k as u64,
            len: n as u64,
        });
    }
    enumerate_profile_vectors(n, &LabelSystem::full(field.clone()), &WeightProfile::single(n - k))
}

/// Ways to hand out the positions of `support` to the lists, `counts[i]` to list i.
/// Each item is (position, list) sorted by position.
fn split_support(support: Vec<usize>, counts: &[usize]) -> Box<dyn Iterator<Item = Vec<(usize, usize)>>> {
    fn go(
        remaining: Vec<usize>,
        counts: Vec<usize>,
        list: usize,
        acc: Vec<(usize, usize)>,
    ) -> Box<dyn Iterator<Item = Vec<(usize, usize)>>> {
        if list == counts.len() {
            let mut acc = acc;
            acc.sort_unstable();
            return Box::new(std::iter::once(acc));
        }
        let k = counts[list];
        Box::new(remaining.clone().into_iter().combinations(k).flat_map(move |block| {
            let rest: Vec<usize> = remaining.iter().copied().filter(|p| !block.contains(p)).collect();
            let mut next = acc.clone();
            next.extend(block.iter().map(|&p| (p, list)));
            go(rest, counts.clone(), list + 1, next)
        }))
    }
    go(support, counts.to_vec(), 0, Vec::new())
}

fn label_products(choices: Vec<Vec<FieldElement>>) -> Box<dyn Iterator<Item = Vec<FieldElement>>> {
    if choices.is_empty() {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(choices.into_iter().multi_cartesian_product())
    }
}
