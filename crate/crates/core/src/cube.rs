//! Projective cubes and cube-freeness.
//!
//! The projective cube of a multiset `S = {a_1, ..., a_d}` is the set of all
//! sums over nonempty index subsets of `S` (the full index set included).
//! A set is `d`-cube-free when no multiset of size `d` has its whole cube
//! inside the set.

use serde::Serialize;

use crate::ambient::{Ambient, DenseSet};
use crate::error::{Error, Result};

/// A size-`d` multiset of ambient elements, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorMultiset {
    ambient: Ambient,
    entries: Vec<u32>,
}

impl Serialize for GeneratorMultiset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl GeneratorMultiset {
    pub fn new<I>(ambient: Ambient, entries: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut entries = entries
            .into_iter()
            .map(|e| ambient.check_element(e.into()))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::invalid(
                "a generator multiset needs at least one entry",
            ));
        }
        entries.sort_unstable();
        Ok(GeneratorMultiset { ambient, entries })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// All nonempty subset sums, reduced into the ambient. Interval sums
    /// above `N` are dropped.
    pub fn project_cube(&self) -> DenseSet {
        let mut cube = DenseSet::empty(self.ambient);
        for &a in &self.entries {
            let previous: Vec<u32> = cube.iter().collect();
            cube.insert(a);
            for s in previous {
                if let Some(t) = self.ambient.reduce(s as u64 + a as u64) {
                    cube.insert(t);
                }
            }
        }
        cube
    }
}

/// See [`GeneratorMultiset::project_cube`].
pub fn project_cube(generator: &GeneratorMultiset) -> DenseSet {
    generator.project_cube()
}

/// A generator whose whole cube lies inside the tested set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeWitness {
    pub generator: GeneratorMultiset,
    pub cube: DenseSet,
}

/// Finds the lexicographically smallest generator of size `d` whose cube is
/// contained in `set`, or `None` when `set` is `d`-cube-free.
///
/// Generators are grown one entry at a time in nondecreasing order; a prefix
/// is abandoned as soon as one of its subset sums falls outside `set`, since
/// every prefix sum is also a subset sum of any completion.
pub fn find_cube(set: &DenseSet, d: usize) -> Option<CubeWitness> {
    assert!(d >= 1, "cube dimension must be at least 1");
    let candidates = set.to_vec();
    let mut generator = Vec::with_capacity(d);
    if extend(set, d, &candidates, 0, &mut generator, &[]) {
        let generator = GeneratorMultiset {
            ambient: set.ambient(),
            entries: generator,
        };
        let cube = generator.project_cube();
        debug_assert!(cube.is_subset(set));
        Some(CubeWitness { generator, cube })
    } else {
        None
    }
}

fn extend(
    set: &DenseSet,
    d: usize,
    candidates: &[u32],
    start: usize,
    generator: &mut Vec<u32>,
    sums: &[u32],
) -> bool {
    let ambient = set.ambient();
    let mut next = Vec::with_capacity(2 * sums.len() + 1);
    for (i, &a) in candidates.iter().enumerate().skip(start) {
        next.clear();
        next.extend_from_slice(sums);
        next.push(a);
        let mut inside = true;
        for &s in sums {
            match ambient.reduce(s as u64 + a as u64) {
                Some(t) if set.contains(t) => next.push(t),
                _ => {
                    inside = false;
                    break;
                }
            }
        }
        if !inside {
            continue;
        }
        generator.push(a);
        if generator.len() == d {
            return true;
        }
        next.sort_unstable();
        next.dedup();
        if extend(set, d, candidates, i, generator, &next) {
            return true;
        }
        generator.pop();
    }
    false
}

pub fn is_cube_free(set: &DenseSet, d: usize) -> bool {
    find_cube(set, d).is_none()
}

/// `A ∩ (A − x) ∩ (A − 2x) ∩ ... ∩ (A − (d−1)x)` in `Z_N`.
pub fn shifted_intersection(set: &DenseSet, x: u32, d: usize) -> Result<DenseSet> {
    let ambient = set.ambient();
    ambient.require_cyclic("shifted_intersection")?;
    let n = ambient.order() as u64;
    let mut acc = set.clone();
    for j in 1..d as u64 {
        acc = acc.intersection(&set.translate(j * x as u64 % n)?)?;
    }
    Ok(acc)
}

/// Smallest `x` with `{x, 2x, ..., (d−1)x} ⊆ set`.
///
/// `x = 0` is only considered when `include_zero` is set. In `[N]`
/// multiples above `N` never belong to the set.
pub fn diagonal_witness(set: &DenseSet, d: usize, include_zero: bool) -> Result<Option<u32>> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "diagonal patterns need d >= 2, got {d}"
        )));
    }
    let ambient = set.ambient();
    let found = set.iter().find(|&x| {
        (include_zero || x != 0)
            && (2..d as u64).all(|j| {
                ambient
                    .reduce(j * x as u64)
                    .is_some_and(|m| set.contains(m))
            })
    });
    Ok(found)
}
