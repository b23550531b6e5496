//! Sumsets, the exhaustive small-case checks of Cauchy–Davenport and of
//! the nonzero subset-sum lemma, and incidence counting for the indexed
//! families `{x, 2x, ..., m·x}` behind the double-counting bounds.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ambient::{Ambient, DenseSet};
use crate::constructions::{layer_decomposition, LayerContext};
use crate::error::{Error, Result};
use crate::is_prime;

/// Largest prime accepted by [`cauchy_davenport_check`]; the check visits
/// `(2^p − 1)^2` pairs.
pub const CAUCHY_DAVENPORT_MAX_PRIME: u64 = 13;

/// Largest modulus accepted by [`verify_s_t_lemma`].
pub const SUBSET_SUM_MAX_MODULUS: u32 = 12;

/// `A + B` in `Z_p`.
pub fn sumset(a: &DenseSet, b: &DenseSet) -> Result<DenseSet> {
    a.ambient().require_same(&b.ambient())?;
    a.ambient().require_cyclic("sumset")?;
    let ambient = a.ambient();
    let mut out = DenseSet::empty(ambient);
    for x in a {
        for y in b {
            out.insert(ambient.reduce(x as u64 + y as u64).expect("cyclic"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CauchyDavenportReport {
    pub p: u64,
    pub pairs_checked: u64,
    pub counterexample: Option<(Vec<u32>, Vec<u32>)>,
}

impl CauchyDavenportReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `|A + B| >= min(|A| + |B| − 1, p)` for every pair of nonempty
/// subsets of `Z_p`.
pub fn cauchy_davenport_check(p: u64) -> Result<CauchyDavenportReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > CAUCHY_DAVENPORT_MAX_PRIME {
        return Err(Error::invalid(format!(
            "exhaustive check supports p <= {CAUCHY_DAVENPORT_MAX_PRIME}, got {p}"
        )));
    }
    let full: u32 = (1 << p) - 1;
    let rotate = |mask: u32, by: u64| -> u32 {
        if by == 0 {
            mask
        } else {
            ((mask << by) | (mask >> (p - by))) & full
        }
    };
    let mut pairs_checked = 0;
    let mut counterexample = None;
    'outer: for a in 1..=full {
        for b in 1..=full {
            pairs_checked += 1;
            let mut sum = 0;
            let mut rest = a;
            while rest != 0 {
                let x = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                sum |= rotate(b, x);
            }
            let need = (a.count_ones() + b.count_ones() - 1).min(p as u32);
            if sum.count_ones() < need {
                let elems = |m: u32| (0..p as u32).filter(|i| m >> i & 1 == 1).collect();
                counterexample = Some((elems(a), elems(b)));
                break 'outer;
            }
        }
    }
    Ok(CauchyDavenportReport {
        p,
        pairs_checked,
        counterexample,
    })
}

/// Nonempty subset sums of a coefficient sequence in `Z_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetSumProfile {
    pub modulus: u32,
    pub coefficients: Vec<u32>,
    pub achieved: DenseSet,
}

impl SubsetSumProfile {
    pub fn contains_zero(&self) -> bool {
        self.achieved.contains(0)
    }
}

fn check_coefficients(coefficients: &[u32], d: u32) -> Result<Ambient> {
    if d < 2 {
        return Err(Error::invalid(format!("modulus must be >= 2, got {d}")));
    }
    if coefficients.len() > d as usize {
        return Err(Error::invalid(format!(
            "{} coefficients exceed the modulus {d}",
            coefficients.len()
        )));
    }
    if let Some(bad) = coefficients.iter().find(|&&a| a % d == 0) {
        return Err(Error::invalid(format!("coefficient {bad} is zero mod {d}")));
    }
    Ambient::cyclic(d as u64)
}

/// The achieved set, built by the doubling step `P ↦ P ∪ (P + a) ∪ {a}`.
pub fn s_t_set(coefficients: &[u32], d: u32) -> Result<SubsetSumProfile> {
    let ambient = check_coefficients(coefficients, d)?;
    let mut achieved = DenseSet::empty(ambient);
    for &a in coefficients {
        let a = a % d;
        let previous = achieved.clone();
        achieved.insert(a);
        for s in &previous {
            achieved.insert((s + a) % d);
        }
    }
    Ok(SubsetSumProfile {
        modulus: d,
        coefficients: coefficients.to_vec(),
        achieved,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetSumLemmaReport {
    pub d: u32,
    pub t_max: u32,
    pub tuples_checked: u64,
    /// Tuples whose subset sums avoid zero.
    pub zero_free: u64,
    pub counterexample: Option<Vec<u32>>,
}

impl SubsetSumLemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// For every tuple of `t <= t_max` nonzero residues mod `d`: if zero is not
/// a nonempty subset sum then there are at least `t` distinct subset sums.
pub fn verify_s_t_lemma(d: u32, t_max: u32) -> Result<SubsetSumLemmaReport> {
    if !(2..=SUBSET_SUM_MAX_MODULUS).contains(&d) {
        return Err(Error::invalid(format!(
            "modulus must lie in 2..={SUBSET_SUM_MAX_MODULUS}, got {d}"
        )));
    }
    if t_max > d {
        return Err(Error::invalid(format!("t_max {t_max} exceeds d = {d}")));
    }
    let mut report = SubsetSumLemmaReport {
        d,
        t_max,
        tuples_checked: 0,
        zero_free: 0,
        counterexample: None,
    };
    let mut tuple = Vec::with_capacity(t_max as usize);
    lemma_dfs(d, t_max, 0, &mut tuple, &mut report);
    Ok(report)
}

fn lemma_dfs(
    d: u32,
    t_max: u32,
    sums: u64,
    tuple: &mut Vec<u32>,
    report: &mut SubsetSumLemmaReport,
) {
    if tuple.len() as u32 == t_max || report.counterexample.is_some() {
        return;
    }
    let full = (1u64 << d) - 1;
    for a in 1..d {
        let shifted = ((sums << a) | (sums >> (d - a))) & full;
        let next = sums | shifted | 1 << a;
        tuple.push(a);
        report.tuples_checked += 1;
        if next & 1 == 0 {
            report.zero_free += 1;
            if (next.count_ones() as usize) < tuple.len() {
                report.counterexample = Some(tuple.clone());
                return;
            }
        }
        lemma_dfs(d, t_max, next, tuple, report);
        tuple.pop();
        if report.counterexample.is_some() {
            return;
        }
    }
}

/// Lexicographically smallest nonempty set of 0-based indices whose
/// residues sum to 0 mod `d`. Exactly `d` nonzero residues are required;
/// such a set then always exists.
pub fn zero_subset_sum(residues: &[u32], d: u32) -> Result<Vec<usize>> {
    if residues.len() != d as usize {
        return Err(Error::invalid(format!(
            "expected exactly {d} residues, got {}",
            residues.len()
        )));
    }
    check_coefficients(residues, d)?;
    let mut chosen = Vec::new();
    if zero_dfs(residues, d, 0, 0, &mut chosen) {
        Ok(chosen)
    } else {
        unreachable!("{d} nonzero residues always have a zero subset sum")
    }
}

fn zero_dfs(residues: &[u32], d: u32, start: usize, sum: u32, chosen: &mut Vec<usize>) -> bool {
    for i in start..residues.len() {
        let s = (sum + residues[i]) % d;
        chosen.push(i);
        if s == 0 || zero_dfs(residues, d, i + 1, s, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub index: u32,
    pub set: DenseSet,
}

/// Sets `{x, 2x, ..., m·x}` indexed by `x`; equal sets at different indices
/// are kept separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexedFamily {
    pub id: String,
    pub modulus: u64,
    pub multipliers: u64,
    pub members: Vec<FamilyMember>,
    /// The elements the family is expected to cover.
    pub support: DenseSet,
}

impl IndexedFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn build(
        id: String,
        ambient: Ambient,
        multipliers: u64,
        index: &DenseSet,
        support: DenseSet,
    ) -> Self {
        let members = index
            .iter()
            .map(|x| {
                let mut set = DenseSet::empty(ambient);
                for j in 1..=multipliers {
                    set.insert(ambient.reduce(j * x as u64).expect("cyclic"));
                }
                FamilyMember { index: x, set }
            })
            .collect();
        IndexedFamily {
            id,
            modulus: ambient.order() as u64,
            multipliers,
            members,
            support,
        }
    }
}

/// `{x, 2x, ..., (d−1)x}` for every nonzero `x ∈ Z_N`.
pub fn family_diagonal(n: u64, d: u64) -> Result<IndexedFamily> {
    if d < 2 {
        return Err(Error::invalid(format!("d must be >= 2, got {d}")));
    }
    let ambient = Ambient::cyclic(n)?;
    let mut nonzero = DenseSet::full(ambient);
    nonzero.remove(0);
    Ok(IndexedFamily::build(
        format!("diagonal(N={n},d={d})"),
        ambient,
        d - 1,
        &nonzero,
        nonzero.clone(),
    ))
}

/// `{x, 2x, ..., (p^d − 1)x}` for every `x` in layer `a` of `Z_{p^l}`,
/// supported on layers `a..=a+d−1`.
pub fn family_prime_power(p: u64, l: u32, d: u32, a: u32) -> Result<IndexedFamily> {
    if d == 0 {
        return Err(Error::invalid("d must be >= 1"));
    }
    if a == 0 || a + d > l + 1 {
        return Err(Error::invalid(format!(
            "layer index {a} outside 1..={} for l = {l}, d = {d}",
            (l + 1).saturating_sub(d)
        )));
    }
    let layers = layer_decomposition(LayerContext::PrimePower { p, l })?;
    let ambient = layers.layers[0].ambient();
    let multipliers = p
        .checked_pow(d)
        .filter(|&m| m <= crate::ambient::MAX_ORDER)
        .ok_or_else(|| Error::invalid("p^d too large"))?
        - 1;
    let support = layers.range(a as usize, (a + d - 1) as usize);
    Ok(IndexedFamily::build(
        format!("prime_power(p={p},l={l},d={d},a={a})"),
        ambient,
        multipliers,
        layers.layer(a as usize).expect("a <= l"),
        support,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IncidenceReport {
    pub family: String,
    pub family_size: u64,
    pub expected_set_size: u64,
    pub expected_multiplicity: u64,
    pub support_size: u64,
    /// Multiplicity -> number of ambient elements with that multiplicity.
    pub multiplicity_histogram: BTreeMap<u64, u64>,
    pub incidences: u64,
    /// `expected_set_size · |family|`
    pub identity_lhs: u64,
    /// `expected_multiplicity · |support|`
    pub identity_rhs: u64,
    pub passed: bool,
    pub offending_index: Option<u32>,
    pub offending_element: Option<u32>,
}

/// Counts, for each element, how many indexed members contain it, and
/// checks member sizes, multiplicities on the support and the resulting
/// double-counting identity.
pub fn incidence_report(
    family: &IndexedFamily,
    expected_multiplicity: u64,
    expected_set_size: u64,
) -> IncidenceReport {
    let ambient = family.support.ambient();
    let mut multiplicity = vec![0u64; ambient.order() as usize];
    let mut offending_index = None;
    for member in &family.members {
        if member.set.len() as u64 != expected_set_size && offending_index.is_none() {
            offending_index = Some(member.index);
        }
        for e in &member.set {
            multiplicity[ambient.index_of(e)] += 1;
        }
    }
    let incidences: u64 = family.members.iter().map(|m| m.set.len() as u64).sum();
    debug_assert_eq!(incidences, multiplicity.iter().sum::<u64>());

    let mut histogram = BTreeMap::new();
    let mut offending_element = None;
    for (i, &m) in multiplicity.iter().enumerate() {
        *histogram.entry(m).or_insert(0) += 1;
        let e = ambient.element_at(i);
        let expected = if family.support.contains(e) {
            expected_multiplicity
        } else {
            0
        };
        if m != expected && offending_element.is_none() {
            offending_element = Some(e);
        }
    }
    let family_size = family.len() as u64;
    let support_size = family.support.len() as u64;
    let identity_lhs = expected_set_size * family_size;
    let identity_rhs = expected_multiplicity * support_size;
    IncidenceReport {
        family: family.id.clone(),
        family_size,
        expected_set_size,
        expected_multiplicity,
        support_size,
        multiplicity_histogram: histogram,
        incidences,
        identity_lhs,
        identity_rhs,
        passed: offending_index.is_none()
            && offending_element.is_none()
            && identity_lhs == identity_rhs
            && incidences == identity_lhs,
        offending_index,
        offending_element,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64, elems: &[u32]) -> DenseSet {
        DenseSet::from_elements(Ambient::cyclic(n).unwrap(), elems.iter().copied()).unwrap()
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(
            sumset(&z(5, &[0, 1]), &z(5, &[0, 1])).unwrap(),
            z(5, &[0, 1, 2])
        );
        let b = z(5, &[1, 3, 4]);
        assert_eq!(sumset(&z(5, &[0]), &b).unwrap(), b);
        assert_eq!(
            sumset(&z(3, &[0, 1, 2]), &z(3, &[1])).unwrap(),
            z(3, &[0, 1, 2])
        );
        assert!(sumset(&z(3, &[0]), &z(5, &[0])).is_err());
    }

    #[test]
    fn cauchy_davenport_examples() {
        for (p, pairs) in [(2, 9), (3, 49), (5, 961), (7, 16129)] {
            let r = cauchy_davenport_check(p).unwrap();
            assert!(r.passed());
            assert_eq!(r.pairs_checked, pairs);
        }
        assert_eq!(cauchy_davenport_check(4), Err(Error::NotPrime(4)));
        assert!(cauchy_davenport_check(17).is_err());
    }

    #[test]
    fn cauchy_davenport_matches_direct_sumsets() {
        for p in [2u64, 3, 5, 7] {
            let amb = Ambient::cyclic(p).unwrap();
            for a in 1u128..(1 << p) {
                for b in 1u128..(1 << p) {
                    let (a, b) = (DenseSet::from_mask(amb, a), DenseSet::from_mask(amb, b));
                    let s = sumset(&a, &b).unwrap();
                    assert!(s.len() >= (a.len() + b.len() - 1).min(p as usize));
                }
            }
        }
    }

    #[test]
    fn cauchy_davenport_fails_for_composites_in_spirit() {
        // In Z_4 the subgroup {0, 2} gives |A + A| = 2 < 3, which is why
        // the check insists on a prime modulus.
        let a = z(4, &[0, 2]);
        assert_eq!(sumset(&a, &a).unwrap().len(), 2);
    }

    #[test]
    fn s_t_examples() {
        assert_eq!(s_t_set(&[1, 1], 3).unwrap().achieved.to_vec(), [1, 2]);
        assert_eq!(s_t_set(&[1, 2], 3).unwrap().achieved.to_vec(), [0, 1, 2]);
        assert_eq!(s_t_set(&[2, 2, 2], 4).unwrap().achieved.to_vec(), [0, 2]);
        assert!(s_t_set(&[1, 3], 3).is_err());
        assert!(s_t_set(&[1, 1, 1, 1], 3).is_err());
    }

    fn brute_subset_sums(coeffs: &[u32], d: u32) -> Vec<u32> {
        let mut out: Vec<u32> = (1u32..1 << coeffs.len())
            .map(|mask| {
                coeffs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &a)| a)
                    .sum::<u32>()
                    % d
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn doubling_matches_power_set(d in 2u32..=12, raw in proptest::collection::vec(1u32..1000, 0..=12)) {
            let coeffs: Vec<u32> = raw.iter().map(|a| 1 + a % (d - 1)).take(d as usize).collect();
            let profile = s_t_set(&coeffs, d).unwrap();
            prop_assert_eq!(profile.achieved.to_vec(), brute_subset_sums(&coeffs, d));
        }
    }

    #[test]
    fn s_t_lemma_examples() {
        let r = verify_s_t_lemma(3, 3).unwrap();
        assert!(r.passed());
        assert_eq!(r.tuples_checked, 2 + 4 + 8);
        assert!(verify_s_t_lemma(2, 2).unwrap().passed());
        let r = verify_s_t_lemma(6, 6).unwrap();
        assert!(r.passed());
        assert_eq!(r.tuples_checked, 5 + 25 + 125 + 625 + 3125 + 15625);
        assert!(verify_s_t_lemma(3, 4).is_err());
    }

    #[test]
    fn s_t_lemma_holds_up_to_seven() {
        for d in 2..=7 {
            let r = verify_s_t_lemma(d, d).unwrap();
            assert!(r.passed(), "d={d}: {:?}", r.counterexample);
            let expected: u64 = (1..=d).map(|t| ((d - 1) as u64).pow(t)).sum();
            assert_eq!(r.tuples_checked, expected);
        }
    }

    #[test]
    fn zero_subset_sum_examples() {
        assert_eq!(zero_subset_sum(&[1, 1, 1], 3).unwrap(), [0, 1, 2]);
        assert_eq!(zero_subset_sum(&[1, 2, 1], 3).unwrap(), [0, 1]);
        assert_eq!(zero_subset_sum(&[1, 3, 2, 2], 4).unwrap(), [0, 1]);
        assert!(zero_subset_sum(&[1, 1], 3).is_err());
        assert!(zero_subset_sum(&[1, 0, 1], 3).is_err());
    }

    #[test]
    fn zero_subset_sum_always_exists() {
        for d in 2u32..=6 {
            let total = (d - 1).pow(d);
            for code in 0..total {
                let residues: Vec<u32> = (0..d)
                    .map(|i| 1 + code / (d - 1).pow(i) % (d - 1))
                    .collect();
                let idx = zero_subset_sum(&residues, d).unwrap();
                assert!(!idx.is_empty());
                assert!(idx.windows(2).all(|w| w[0] < w[1]));
                assert_eq!(idx.iter().map(|&i| residues[i]).sum::<u32>() % d, 0);
            }
        }
    }

    #[test]
    fn family_diagonal_examples() {
        let f = family_diagonal(5, 3).unwrap();
        let sets: Vec<Vec<u32>> = f.members.iter().map(|m| m.set.to_vec()).collect();
        assert_eq!(sets, vec![vec![1, 2], vec![2, 4], vec![1, 3], vec![3, 4]]);
        let f = family_diagonal(4, 2).unwrap();
        assert!(f.members.iter().all(|m| m.set.to_vec() == vec![m.index]));
        let f = family_diagonal(25, 5).unwrap();
        assert_eq!(f.len(), 24);
        assert!(f.members.iter().all(|m| m.set.len() == 4));
        // distinct indices, identical sets
        assert_eq!(f.members[4].set, f.members[9].set);
    }

    #[test]
    fn family_prime_power_examples() {
        let f = family_prime_power(2, 3, 2, 1).unwrap();
        let sets: Vec<Vec<u32>> = f.members.iter().map(|m| m.set.to_vec()).collect();
        assert_eq!(
            sets,
            vec![vec![1, 2, 3], vec![1, 3, 6], vec![2, 5, 7], vec![5, 6, 7]]
        );
        let f = family_prime_power(3, 2, 1, 1).unwrap();
        assert_eq!(f.multipliers, 2);
        for m in &f.members {
            assert_eq!(m.set.to_vec().len(), 2);
            assert!(m.set.contains(m.index) && m.set.contains(2 * m.index % 9));
        }
        let f = family_prime_power(2, 2, 2, 1).unwrap();
        let sets: Vec<Vec<u32>> = f.members.iter().map(|m| m.set.to_vec()).collect();
        assert_eq!(sets, vec![vec![1, 2, 3], vec![1, 2, 3]]);
        assert!(family_prime_power(2, 3, 2, 3).is_err());
        assert!(family_prime_power(2, 3, 2, 0).is_err());
    }

    #[test]
    fn incidence_examples() {
        let r = incidence_report(&family_diagonal(25, 5).unwrap(), 4, 4);
        assert!(r.passed, "{r:?}");
        assert_eq!((r.identity_lhs, r.identity_rhs), (96, 96));
        assert_eq!(r.multiplicity_histogram.get(&4), Some(&24));

        let r = incidence_report(&family_prime_power(2, 3, 2, 1).unwrap(), 2, 3);
        assert!(r.passed, "{r:?}");
        assert_eq!((r.identity_lhs, r.identity_rhs), (12, 12));

        let r = incidence_report(&family_diagonal(5, 3).unwrap(), 2, 2);
        assert!(r.passed);
        assert_eq!(r.multiplicity_histogram, BTreeMap::from([(0, 1), (2, 4)]));
    }

    #[test]
    fn incidence_flags_wrong_expectations() {
        // d = 3 is not the smallest prime factor of 10: x = 5 gives {5, 0}
        let r = incidence_report(&family_diagonal(10, 3).unwrap(), 2, 2);
        assert!(!r.passed);
        let r = incidence_report(&family_diagonal(7, 3).unwrap(), 3, 2);
        assert!(!r.passed);
        assert_eq!(r.offending_element, Some(1));
    }

    #[test]
    fn incidence_totals_balance() {
        for n in 2..=40 {
            for d in 2..=6 {
                let f = family_diagonal(n, d).unwrap();
                let r = incidence_report(&f, d - 1, d - 1);
                let weighted: u64 = r.multiplicity_histogram.iter().map(|(m, c)| m * c).sum();
                assert_eq!(weighted, r.incidences);
                let spf = crate::smallest_prime_factor(n).unwrap();
                if d == spf {
                    assert!(r.passed, "N={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn prime_power_members_have_full_size() {
        for (p, l) in [(2u64, 3u32), (2, 4), (2, 6), (3, 3), (3, 4), (5, 3)] {
            for d in 1..=l {
                for a in 1..=l + 1 - d {
                    let f = family_prime_power(p, l, d, a).unwrap();
                    let mult = (p - 1) * p.pow(d - 1);
                    let r = incidence_report(&f, mult, p.pow(d) - 1);
                    assert!(r.passed, "p={p} l={l} d={d} a={a}: {r:?}");
                }
            }
        }
    }
}
