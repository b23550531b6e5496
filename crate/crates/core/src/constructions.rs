//! Explicit sets and decompositions: the residue construction, the
//! upper-interval example, geometric chains, valuation layers, prime-power
//! blocks and the chain matrix coordinates.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::ambient::{factorize, Ambient, DenseSet};
use crate::error::{Error, Result};
use crate::is_prime;

/// `{a ∈ Z_N : a ≢ 0 (mod d)}`, of size `(d−1)N/d`.
pub fn residue_construction(n: u64, d: u64) -> Result<DenseSet> {
    if d < 2 {
        return Err(Error::invalid(format!("modulus d must be >= 2, got {d}")));
    }
    if !n.is_multiple_of(d) {
        return Err(Error::invalid(format!("{d} does not divide {n}")));
    }
    let ambient = Ambient::cyclic(n)?;
    let mut set = DenseSet::empty(ambient);
    for a in ambient
        .elements()
        .filter(|&a| !(a as u64).is_multiple_of(d))
    {
        set.insert(a);
    }
    Ok(set)
}

/// `(N/3, N]` placed in the given ambient; in `Z_N` the element `N` is 0.
pub fn interval_construction(ambient: Ambient) -> Result<DenseSet> {
    let n = ambient.order() as u64;
    if !n.is_multiple_of(3) {
        return Err(Error::invalid(format!("3 does not divide {n}")));
    }
    let mut set = DenseSet::empty(ambient);
    for x in n / 3 + 1..=n {
        set.insert(ambient.reduce(x).expect("x lies in [N]"));
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub starter: u64,
    pub elements: Vec<u64>,
}

/// The chains `l, dl, d²l, ...` cut to `[N]`, one per `l` with `d ∤ l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainDecomposition {
    pub ratio: u64,
    pub limit: u64,
    pub chains: Vec<Chain>,
}

pub fn chain_decomposition(n: u64, d: u64) -> Result<ChainDecomposition> {
    if d < 2 {
        return Err(Error::invalid(format!("chain ratio must be >= 2, got {d}")));
    }
    Ambient::interval(n)?;
    let chains = (1..=n)
        .filter(|l| l % d != 0)
        .map(|starter| {
            let mut elements = vec![starter];
            let mut m = starter;
            while let Some(next) = m.checked_mul(d).filter(|&v| v <= n) {
                elements.push(next);
                m = next;
            }
            Chain { starter, elements }
        })
        .collect();
    Ok(ChainDecomposition {
        ratio: d,
        limit: n,
        chains,
    })
}

/// Position of `m = d^s·l` in the chain matrix: row `s + 1`, column `l − ⌊l/d⌋`.
pub fn matrix_coord(m: u64, d: u64) -> Result<(u64, u64)> {
    let f = factorize(m, d)?;
    Ok((f.exponent as u64 + 1, f.cofactor - f.cofactor / d))
}

/// Inverse of [`matrix_coord`]: the column is the rank of `l` among
/// positive integers not divisible by `d`.
pub fn matrix_coord_inverse(row: u64, col: u64, d: u64) -> Result<u64> {
    if d < 2 {
        return Err(Error::invalid(format!("matrix base must be >= 2, got {d}")));
    }
    if row == 0 || col == 0 {
        return Err(Error::invalid("matrix coordinates start at 1"));
    }
    let l = col + (col - 1) / (d - 1);
    u32::try_from(row - 1)
        .ok()
        .and_then(|s| d.checked_pow(s))
        .and_then(|p| p.checked_mul(l))
        .ok_or_else(|| Error::invalid(format!("({row}, {col}) overflows for d = {d}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "context", rename_all = "snake_case")]
pub enum LayerContext {
    /// Layers of `[N]` by `d`-adic valuation.
    Integers { n: u64, d: u64 },
    /// Layers of `Z_{p^l}` by `p`-adic valuation, with `{0}` as layer `l + 1`.
    PrimePower { p: u64, l: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub context: LayerContext,
    /// `layers[i]` is layer `i + 1`.
    pub layers: Vec<DenseSet>,
}

impl LayerDecomposition {
    /// Layer by its 1-based index.
    pub fn layer(&self, index: usize) -> Option<&DenseSet> {
        index.checked_sub(1).and_then(|i| self.layers.get(i))
    }

    /// Union of layers `first..=last`, clamped to the layers that exist.
    pub fn range(&self, first: usize, last: usize) -> DenseSet {
        let ambient = self.layers[0].ambient();
        let mut out = DenseSet::empty(ambient);
        for i in first.max(1)..=last.min(self.layers.len()) {
            for e in &self.layers[i - 1] {
                out.insert(e);
            }
        }
        out
    }

    /// Layer index -> elements, keyed from 1.
    pub fn to_map(&self) -> BTreeMap<usize, Vec<u32>> {
        self.layers
            .iter()
            .enumerate()
            .map(|(i, l)| (i + 1, l.to_vec()))
            .collect()
    }
}

impl Serialize for LayerDecomposition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            #[serde(flatten)]
            context: &'a LayerContext,
            layers: BTreeMap<usize, Vec<u32>>,
        }
        Repr {
            context: &self.context,
            layers: self.to_map(),
        }
        .serialize(s)
    }
}

fn valuation(mut x: u64, base: u64) -> u32 {
    let mut v = 0;
    while x.is_multiple_of(base) {
        x /= base;
        v += 1;
    }
    v
}

pub fn prime_power_order(p: u64, l: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if l == 0 {
        return Err(Error::invalid("prime-power exponent must be >= 1"));
    }
    p.checked_pow(l)
        .filter(|&n| n <= crate::ambient::MAX_ORDER)
        .ok_or(Error::OrderTooLarge {
            order: u64::MAX,
            max: crate::ambient::MAX_ORDER,
        })
}

pub fn layer_decomposition(context: LayerContext) -> Result<LayerDecomposition> {
    let layers = match context {
        LayerContext::Integers { n, d } => {
            if d < 2 {
                return Err(Error::invalid(format!("layer base must be >= 2, got {d}")));
            }
            let ambient = Ambient::interval(n)?;
            let mut layers: Vec<DenseSet> = Vec::new();
            for x in ambient.elements() {
                let i = valuation(x as u64, d) as usize;
                while layers.len() <= i {
                    layers.push(DenseSet::empty(ambient));
                }
                layers[i].insert(x);
            }
            layers
        }
        LayerContext::PrimePower { p, l } => {
            let ambient = Ambient::cyclic(prime_power_order(p, l)?)?;
            let mut layers = vec![DenseSet::empty(ambient); l as usize + 1];
            for x in ambient.elements() {
                let i = if x == 0 {
                    l as usize
                } else {
                    valuation(x as u64, p) as usize
                };
                layers[i].insert(x);
            }
            layers
        }
    };
    Ok(LayerDecomposition { context, layers })
}

/// Union of the odd-indexed layers of `[N]`: every chain keeps its odd
/// positions, so no element sits next to its `d`-multiple.
pub fn alternating_chain_set(n: u64, d: u64) -> Result<DenseSet> {
    let layers = layer_decomposition(LayerContext::Integers { n, d })?;
    let mut out = DenseSet::empty(Ambient::interval(n)?);
    for layer in layers.layers.iter().step_by(2) {
        for x in layer {
            out.insert(x);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub first_layer: usize,
    pub last_layer: usize,
    pub elements: DenseSet,
}

/// `Z_{p^l}` split into runs of `d` consecutive layers, the final run
/// holding whatever layers remain up to `l + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub p: u64,
    pub l: u32,
    pub d: u32,
    pub q: u32,
    pub blocks: Vec<Block>,
}

pub fn block_partition(p: u64, l: u32, d: u32) -> Result<BlockPartition> {
    if d == 0 {
        return Err(Error::invalid("block width must be >= 1"));
    }
    let layers = layer_decomposition(LayerContext::PrimePower { p, l })?;
    let top = l as usize + 1;
    let width = d as usize;
    let q = (top / width) as u32;
    let mut ranges: Vec<(usize, usize)> = (0..q as usize)
        .map(|k| (k * width + 1, (k + 1) * width))
        .collect();
    if q as usize * width < top {
        ranges.push((q as usize * width + 1, top));
    }
    let blocks = ranges
        .into_iter()
        .map(|(first_layer, last_layer)| Block {
            first_layer,
            last_layer,
            elements: layers.range(first_layer, last_layer),
        })
        .collect();
    Ok(BlockPartition { p, l, d, q, blocks })
}
