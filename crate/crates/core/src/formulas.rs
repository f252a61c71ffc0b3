//! Closed-form extremal values and counting identities, in exact integer arithmetic.
//!
//! Every function is generic over the integer scalar; [`crate::Count`] (`BigInt`) is
//! what the rest of the crate uses. No floating point is involved anywhere: the
//! alternating sums in [`spacecount`] cancel far too much for that.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::num::ExactInt;
use crate::vectors::{LabelSystem, ProfileDownSet, WeightProfile};

/// Which branch of which closed form produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// q = 2, k even: all weight-k vectors on r + 1 coordinates.
    ExBinaryEven,
    ExGeneric,
    /// k = 0 zeros: all nowhere-zero vectors on r coordinates.
    CoexNoZeros,
    CoexGeneric,
    /// Singleton lists with `sum l_i k_i = 0`.
    LabeledZeroSum,
    LabeledGeneric,
    AffineSingletons,
    AffineGeneric,
    DownSetSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Applicability {
    /// The equality is only established beyond an unspecified rank threshold.
    ProvenForLargeR,
    ExactForAllR,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound(serialize = "T: std::fmt::Display"))]
pub struct ExtremalValue<T> {
    #[serde(serialize_with = "decimal")]
    pub value: T,
    pub regime: Regime,
    pub applicability: Applicability,
}

fn decimal<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMode {
    /// Count by number of nonzero entries.
    Weight,
    /// Count by number of zero entries.
    Coweight,
}

/// Right-hand side of `x . u = beta` in [`count_orthogonal_nonzero`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DotTarget {
    Zero,
    One,
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

fn pow<T: ExactInt>(base: u64, exp: u64) -> T {
    T::pow_u64(base, exp)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial<T: ExactInt>(n: u64, k: u64) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * <T as ExactInt>::from_u64(n - i) / <T as ExactInt>::from_u64(i + 1);
    }
    acc
}

/// `r! / (k_1! ... k_s! (r - sum k_i)!)`.
pub fn multinomial<T: ExactInt>(r: u64, kappa: &WeightProfile) -> Result<T> {
    let norm = kappa.norm() as u64;
    if norm > r {
        return Err(Error::ProfileTooHeavy { norm, len: r });
    }
    let mut left = r;
    let mut acc = T::one();
    for &k in kappa.counts() {
        acc = acc * binomial::<T>(left, k as u64);
        left -= k as u64;
    }
    Ok(acc)
}

/// Like [`multinomial`] but zero instead of an error when the profile does not fit.
fn multinomial_or_zero<T: ExactInt>(r: u64, kappa: &WeightProfile) -> T {
    multinomial(r, kappa).unwrap_or_else(|_| T::zero())
}

/// Number of r-dimensional subspaces of GF(q)^n.
pub fn gaussian_binomial<T: ExactInt>(q: u64, n: u64, r: u64) -> T {
    if r > n {
        return T::zero();
    }
    let mut num = T::one();
    let mut den = T::one();
    for i in 0..r {
        num = num * (pow::<T>(q, n - i) - T::one());
        den = den * (pow::<T>(q, i + 1) - T::one());
    }
    num / den
}

/// `prod_i |L_i|^{k_i}`.
pub fn label_power<T: ExactInt>(labels: &LabelSystem, kappa: &WeightProfile) -> T {
    labels
        .list_sizes()
        .iter()
        .zip(kappa.counts())
        .fold(T::one(), |acc, (&size, &k)| acc * pow::<T>(size as u64, k as u64))
}

/// Large-r value of the weight-k problem.
pub fn ex_formula<T: ExactInt>(q: u64, r: u64, k: u64) -> Result<ExtremalValue<T>> {
    check_q(q)?;
    let exact = k == 0 || (q == 2 && k == 2);
    let applicability = if exact {
        Applicability::ExactForAllR
    } else {
        Applicability::ProvenForLargeR
    };
    Ok(if q == 2 && k.is_multiple_of(2) {
        ExtremalValue {
            value: binomial(r + 1, k),
            regime: Regime::ExBinaryEven,
            applicability,
        }
    } else {
        ExtremalValue {
            value: binomial::<T>(r, k) * pow::<T>(q - 1, k),
            regime: Regime::ExGeneric,
            applicability,
        }
    })
}

/// Large-r value of the k-zeros problem. Needs q > 2 unless k = 0.
pub fn coex_formula<T: ExactInt>(q: u64, r: u64, k: u64) -> Result<ExtremalValue<T>> {
    check_q(q)?;
    if q == 2 && k >= 1 {
        return Err(Error::UnsupportedField { q, k });
    }
    if k > r {
        return Err(Error::BadArguments(format!("k = {k} zeros exceeds r = {r}")));
    }
    let value = binomial::<T>(r, k) * pow::<T>(q - 1, r - k);
    Ok(if k == 0 {
        ExtremalValue {
            value,
            regime: Regime::CoexNoZeros,
            applicability: Applicability::ExactForAllR,
        }
    } else {
        ExtremalValue {
            value,
            regime: Regime::CoexGeneric,
            applicability: Applicability::ProvenForLargeR,
        }
    })
}

/// Large-r value of the (L, kappa) problem under a rank bound.
pub fn ex_labeled_formula<T: ExactInt>(
    labels: &LabelSystem,
    r: u64,
    kappa: &WeightProfile,
) -> Result<ExtremalValue<T>> {
    labels.check_profile(kappa)?;
    let norm = kappa.norm() as u64;
    if norm > r {
        return Err(Error::ProfileTooHeavy { norm, len: r });
    }
    Ok(if labels.is_zero_sum(kappa) {
        ExtremalValue {
            value: multinomial(r + 1, kappa)?,
            regime: Regime::LabeledZeroSum,
            applicability: Applicability::ProvenForLargeR,
        }
    } else {
        ExtremalValue {
            value: label_power::<T>(labels, kappa) * multinomial::<T>(r, kappa)?,
            regime: Regime::LabeledGeneric,
            applicability: Applicability::ProvenForLargeR,
        }
    })
}

/// Large-r value of the (L, kappa) problem under an affine-rank bound.
pub fn aex_formula<T: ExactInt>(labels: &LabelSystem, r: u64, kappa: &WeightProfile) -> Result<ExtremalValue<T>> {
    labels.check_profile(kappa)?;
    let norm = kappa.norm() as u64;
    if norm > r {
        return Err(Error::ProfileTooHeavy { norm, len: r });
    }
    Ok(if labels.is_singletons() {
        ExtremalValue {
            value: multinomial(r, kappa)?,
            regime: Regime::AffineSingletons,
            applicability: Applicability::ProvenForLargeR,
        }
    } else {
        ExtremalValue {
            value: label_power::<T>(labels, kappa) * multinomial_or_zero::<T>(r.saturating_sub(1), kappa),
            regime: Regime::AffineGeneric,
            applicability: Applicability::ProvenForLargeR,
        }
    })
}

/// `sum_{kappa' in S} C(r; kappa') L^{kappa'}`: exact for every r.
pub fn downset_count<T: ExactInt>(labels: &LabelSystem, r: u64, set: &ProfileDownSet) -> Result<T> {
    let mut acc = T::zero();
    for kappa in set.iter() {
        labels.check_profile(kappa)?;
        acc = acc + label_power::<T>(labels, kappa) * multinomial_or_zero::<T>(r, kappa);
    }
    Ok(acc)
}

/// Upper bound `sum_{kappa' <= kappa} C(r; kappa') L^{kappa'}` for a single profile.
pub fn labeled_bound_sum<T: ExactInt>(labels: &LabelSystem, r: u64, kappa: &WeightProfile) -> Result<T> {
    labels.check_profile(kappa)?;
    let mut acc = T::zero();
    for lower in kappa.lower_set() {
        acc = acc + label_power::<T>(labels, &lower) * multinomial_or_zero::<T>(r, &lower);
    }
    Ok(acc)
}

/// `sum_{i <= k} C(r, i) (q-1)^i` (weight) or `sum_{i <= k} C(r, i) (q-1)^{r-i}` (co-weight).
pub fn bound_sums<T: ExactInt>(q: u64, r: u64, k: u64, mode: CountMode) -> T {
    (0..=k.min(r)).fold(T::zero(), |acc, i| {
        let exp = match mode {
            CountMode::Weight => i,
            CountMode::Coweight => r - i,
        };
        acc + binomial::<T>(r, i) * pow::<T>(q - 1, exp)
    })
}

/// Number of `x` in `(F_q^x)^n` with `x . u = beta`, for any `u` with all entries nonzero.
pub fn count_orthogonal_nonzero<T: ExactInt>(q: u64, n: u64, beta: DotTarget) -> T {
    let sign = |e: u64| if e.is_multiple_of(2) { T::one() } else { -T::one() };
    let main = pow::<T>(q - 1, n);
    let qt = <T as ExactInt>::from_u64(q);
    match beta {
        DotTarget::Zero => (main + sign(n) * <T as ExactInt>::from_u64(q - 1)) / qt,
        DotTarget::One => (main + sign(n + 1)) / qt,
    }
}

fn check_spacecount(q: u64, r: u64, k: u64, i: u64) -> Result<()> {
    check_q(q)?;
    if i < 2 || i > r || k > r {
        return Err(Error::BadArguments(format!(
            "spacecount needs 2 <= i <= r and k <= r (q = {q}, r = {r}, k = {k}, i = {i})"
        )));
    }
    Ok(())
}

/// Number of vectors of GF(q)^r with exactly k zeros orthogonal to a fixed vector of
/// weight i (the count does not depend on which one).
pub fn spacecount<T: ExactInt>(q: u64, r: u64, k: u64, i: u64) -> Result<T> {
    check_spacecount(q, r, k, i)?;
    // Zero sets S with |S ∩ supp(v)| = s contribute
    // ((q-1)^{r-k} + (-1)^{i+s} (q-1)^{r-i-k+s+1}) / q each; only s with
    // k - s <= r - i occur, which keeps every exponent nonnegative.
    let mut acc = binomial::<T>(r, k) * pow::<T>(q - 1, r - k);
    for s in 0..=k.min(i) {
        if k - s > r - i {
            continue;
        }
        let term = binomial::<T>(i, s) * binomial::<T>(r - i, k - s) * pow::<T>(q - 1, (r - i) - (k - s) + 1);
        if (i + s).is_multiple_of(2) {
            acc = acc + term;
        } else {
            acc = acc - term;
        }
    }
    Ok(acc / <T as ExactInt>::from_u64(q))
}

/// `a_s = C(i, s) C(r - i, k - s) (q-1)^s` for `s = 0..=k`.
pub fn spacecount_terms<T: ExactInt>(q: u64, r: u64, k: u64, i: u64) -> Result<Vec<T>> {
    check_spacecount(q, r, k, i)?;
    Ok((0..=k)
        .map(|s| binomial::<T>(i, s) * binomial::<T>(r - i, k - s) * pow::<T>(q - 1, s))
        .collect())
}

/// Whether `r >= max(sqrt(q) k^{3/2}, q k)`, the range where [`spacecount`] is
/// guaranteed to meet its lower bound.
pub fn spacecount_bound_applies(q: u64, r: u64, k: u64) -> bool {
    let (q, r, k) = (q as u128, r as u128, k as u128);
    r * r >= q * k * k * k && r >= q * k
}

/// Checks `spacecount >= (1/q) C(r,k) (q-1)^{r-k} (1 - 1/(q-1))`, cleared of denominators.
pub fn spacecount_meets_lower_bound<T: ExactInt>(q: u64, r: u64, k: u64, i: u64) -> Result<bool> {
    if q < 3 {
        return Err(Error::BadArguments("the lower bound needs q >= 3".into()));
    }
    let count: T = spacecount(q, r, k, i)?;
    let lhs = count * <T as ExactInt>::from_u64(q * (q - 1));
    let rhs = binomial::<T>(r, k) * pow::<T>(q - 1, r - k) * <T as ExactInt>::from_u64(q - 2);
    Ok(lhs >= rhs)
}

/// `(q^r - 1, (q-1) q^{r-1})`: column count and common column weight of the dual
/// Hamming family.
pub fn hamming_params<T: ExactInt>(q: u64, r: u64) -> Result<(T, T)> {
    check_q(q)?;
    if r == 0 {
        return Err(Error::BadArguments("dual Hamming family needs r >= 1".into()));
    }
    Ok((
        pow::<T>(q, r) - T::one(),
        <T as ExactInt>::from_u64(q - 1) * pow::<T>(q, r - 1),
    ))
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal<T: Ord>(seq: &[T]) -> bool {
    let peak = seq
        .windows(2)
        .position(|w| w[1] < w[0])
        .unwrap_or(seq.len().saturating_sub(1));
    seq[peak..].windows(2).all(|w| w[1] <= w[0])
}
