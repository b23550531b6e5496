use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::{is_prime, prime_power};

/// Closed-form upper bounds on maximum pattern-free sets, as exact rationals.
/// Callers floor them for comparison with integer maxima.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// `(d−1)N/d` for `d`-cube-free subsets of `Z_N` with `d | N`.
    CubeFree { n: u64, d: u64 },
    /// `2N/3` for 3-cube-free subsets of any `Z_N`.
    CubeFreeThree { n: u64 },
    /// `dN/(d+1)`, the main term for `{x, dx}`-free subsets of `[N]`.
    PairFreeInterval { n: u64, d: u64 },
    /// `kN/(k+1)` with `k = gcd(d, N)` for `{x, dx}`-free subsets of `Z_N`.
    PairFreeCyclic { n: u64, d: u64 },
    /// `kN/(k+1)` with `k = gcd(d−1, N)` for `{x, (d−1)x}`-free subsets of
    /// `Z_N` with `d | N`; never above `(d−1)N/d`.
    PairFreeShifted { n: u64, d: u64 },
    /// `(1 − 1/(p^d − 1))·p^l` for `{x, ..., (p^d − 1)x}`-free subsets of `Z_{p^l}`.
    PrimePowerDiagonal { p: u64, l: u32, d: u32 },
}

/// Named parameters for [`Bound::from_id`].
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundParams {
    pub n: Option<u64>,
    pub d: Option<u64>,
    pub p: Option<u64>,
    pub l: Option<u32>,
}

impl Bound {
    pub const IDS: [&'static str; 6] = [
        "cube-free",
        "cube-free-3",
        "pair-free-interval",
        "pair-free-cyclic",
        "pair-free-shifted",
        "diagonal-prime-power",
    ];

    pub fn from_id(id: &str, params: BoundParams) -> Result<Self> {
        let need = |v: Option<u64>, name: &str| {
            v.ok_or_else(|| Error::invalid(format!("bound `{id}` needs parameter {name}")))
        };
        Ok(match id {
            "cube-free" => Bound::CubeFree {
                n: need(params.n, "N")?,
                d: need(params.d, "d")?,
            },
            "cube-free-3" => Bound::CubeFreeThree {
                n: need(params.n, "N")?,
            },
            "pair-free-interval" => Bound::PairFreeInterval {
                n: need(params.n, "N")?,
                d: need(params.d, "d")?,
            },
            "pair-free-cyclic" => Bound::PairFreeCyclic {
                n: need(params.n, "N")?,
                d: need(params.d, "d")?,
            },
            "pair-free-shifted" => Bound::PairFreeShifted {
                n: need(params.n, "N")?,
                d: need(params.d, "d")?,
            },
            "diagonal-prime-power" => Bound::PrimePowerDiagonal {
                p: need(params.p, "p")?,
                l: need(params.l.map(u64::from), "l")? as u32,
                d: need(params.d, "d")? as u32,
            },
            other => return Err(Error::UnknownBound(other.to_string())),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Bound::CubeFree { .. } => Self::IDS[0],
            Bound::CubeFreeThree { .. } => Self::IDS[1],
            Bound::PairFreeInterval { .. } => Self::IDS[2],
            Bound::PairFreeCyclic { .. } => Self::IDS[3],
            Bound::PairFreeShifted { .. } => Self::IDS[4],
            Bound::PrimePowerDiagonal { .. } => Self::IDS[5],
        }
    }

    pub fn value(&self) -> Result<Ratio<u64>> {
        let positive = |v: u64, name: &str| {
            if v == 0 {
                Err(Error::invalid(format!("{name} must be positive")))
            } else {
                Ok(v)
            }
        };
        Ok(match *self {
            Bound::CubeFree { n, d } => {
                let d = positive(d, "d")?;
                if n % d != 0 {
                    return Err(Error::invalid(format!("{d} does not divide {n}")));
                }
                Ratio::new((d - 1) * n, d)
            }
            Bound::CubeFreeThree { n } => Ratio::new(2 * positive(n, "N")?, 3),
            Bound::PairFreeInterval { n, d } => {
                let d = positive(d, "d")?;
                Ratio::new(d * positive(n, "N")?, d + 1)
            }
            Bound::PairFreeCyclic { n, d } => {
                let k = d.gcd(&positive(n, "N")?);
                Ratio::new(k * n, k + 1)
            }
            Bound::PairFreeShifted { n, d } => {
                if d < 2 || n % d != 0 {
                    return Err(Error::invalid(format!(
                        "need d >= 2 dividing N, got d={d} N={n}"
                    )));
                }
                let k = (d - 1).gcd(&n);
                Ratio::new(k * n, k + 1)
            }
            Bound::PrimePowerDiagonal { p, l, d } => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                let n = p
                    .checked_pow(l)
                    .ok_or_else(|| Error::invalid("p^l overflows"))?;
                let m = p
                    .checked_pow(positive(d as u64, "d")? as u32)
                    .ok_or_else(|| Error::invalid("p^d overflows"))?
                    - 1;
                debug_assert_eq!(prime_power(n), (l > 0).then_some((p, l)));
                Ratio::new((m - 1) * n, m)
            }
        })
    }

    /// `⌊value⌋`.
    pub fn floor(&self) -> Result<u64> {
        Ok(self.value()?.to_integer())
    }
}
