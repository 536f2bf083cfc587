//! Numerical presentations of vector bundles on a curve.
//!
//! A bundle is seen only through its Harder–Narasimhan type: the ordered list
//! of `(rank, degree)` pairs of the subquotients `E_i / E_{i-1}`, with slopes
//! strictly decreasing. Split bundles (direct sums of powers of one degree-one
//! line bundle) are given by their exponent multiset, and a characteristic-`p`
//! bundle by the stabilized filtration of its `δ`-th Frobenius pullback.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{check_range, Error, Result};
use crate::rational::Rational;

/// One subquotient of a Harder–Narasimhan filtration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HnBlock {
    rank: usize,
    degree: BigInt,
}

impl HnBlock {
    pub fn new(rank: usize, degree: impl Into<BigInt>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::validation(
                "rank",
                "a block must have rank at least 1",
            ));
        }
        Ok(HnBlock {
            rank,
            degree: degree.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    pub fn slope(&self) -> Rational {
        slope(self)
    }
}

impl fmt::Display for HnBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rank, self.degree)
    }
}

/// `degree / rank` of a block, in lowest terms.
pub fn slope(block: &HnBlock) -> Rational {
    Rational::new(block.degree.clone(), BigInt::from(block.rank))
}

/// Harder–Narasimhan type: blocks ordered by strictly decreasing slope,
/// total rank at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HnType {
    blocks: Vec<HnBlock>,
}

impl HnType {
    /// Validates the block list. Slopes that fail to decrease are rejected,
    /// never re-sorted.
    pub fn new(blocks: Vec<HnBlock>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::validation(
                "blocks",
                "the filtration must have at least one block",
            ));
        }
        for (i, (prev, next)) in blocks.iter().tuple_windows().enumerate() {
            let (a, b) = (prev.slope(), next.slope());
            if b >= a {
                return Err(Error::validation(
                    format!("blocks[{}]", i + 1),
                    format!("slopes must be strictly decreasing, but slope {b} follows slope {a}"),
                ));
            }
        }
        let total: usize = blocks.iter().map(HnBlock::rank).sum();
        if total < 2 {
            return Err(Error::validation(
                "blocks",
                format!("total rank must be at least 2, got {total}"),
            ));
        }
        Ok(HnType { blocks })
    }

    /// Convenience constructor from `(rank, degree)` pairs.
    pub fn from_pairs<I, D>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, D)>,
        D: Into<BigInt>,
    {
        let blocks = pairs
            .into_iter()
            .map(|(r, d)| HnBlock::new(r, d))
            .collect::<Result<Vec<_>>>()?;
        HnType::new(blocks)
    }

    pub fn blocks(&self) -> &[HnBlock] {
        &self.blocks
    }

    /// Number of blocks, `m` (or `n_δ` for a stabilized filtration).
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(HnBlock::rank).sum()
    }

    pub fn total_degree(&self) -> BigInt {
        self.blocks.iter().map(HnBlock::degree).sum()
    }

    /// Cumulative `(rank, degree)` of `E_0 ⊂ E_1 ⊂ … ⊂ E_m`, starting at `E_0 = 0`.
    pub fn partial_sums(&self) -> Vec<(usize, BigInt)> {
        let mut out = Vec::with_capacity(self.blocks.len() + 1);
        let (mut rank, mut degree) = (0usize, BigInt::from(0));
        out.push((rank, degree.clone()));
        for b in &self.blocks {
            rank += b.rank;
            degree += &b.degree;
            out.push((rank, degree.clone()));
        }
        out
    }

    /// The 1-based index `ℓ` with `rank(E_{ℓ-1}) < r <= rank(E_ℓ)`.
    pub fn block_index(&self, r: usize) -> Result<usize> {
        check_range("r", r, 1, self.total_rank())?;
        let mut cumulative = 0;
        for (i, b) in self.blocks.iter().enumerate() {
            if r <= cumulative + b.rank {
                return Ok(i + 1);
            }
            cumulative += b.rank;
        }
        unreachable!("r was checked against the total rank")
    }

    fn scaled(&self, factor: &BigInt) -> HnType {
        HnType {
            blocks: self
                .blocks
                .iter()
                .map(|b| HnBlock {
                    rank: b.rank,
                    degree: &b.degree * factor,
                })
                .collect(),
        }
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.blocks.iter().join(","))
    }
}

/// Exponents `a_1, …, a_N` of `⊕ L^{a_i}` for a fixed degree-one line bundle `L`.
///
/// Stored in the order given; [`SplitBundle::canonical`] yields the sorted form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitBundle {
    exponents: Vec<BigInt>,
}

impl SplitBundle {
    pub fn new(exponents: Vec<BigInt>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::validation(
                "exponents",
                format!("a bundle needs rank at least 2, got {}", exponents.len()),
            ));
        }
        Ok(SplitBundle { exponents })
    }

    pub fn from_i64s(exponents: &[i64]) -> Result<Self> {
        SplitBundle::new(exponents.iter().copied().map(BigInt::from).collect())
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn total_degree(&self) -> BigInt {
        self.exponents.iter().sum()
    }

    /// Exponents sorted descending; stable, so equal entries keep input order.
    pub fn canonical(&self) -> Vec<BigInt> {
        sorted_descending(&self.exponents)
    }
}

impl fmt::Display for SplitBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.exponents.iter().join(","))
    }
}

pub(crate) fn sorted_descending(values: &[BigInt]) -> Vec<BigInt> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    v
}

/// Characteristic-`p` data: the stabilized HN filtration of `(F^δ)^* E`.
///
/// `δ` is trusted input; it is never computed here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrongHnData {
    characteristic: u64,
    delta: u32,
    hn: HnType,
}

impl StrongHnData {
    pub fn new(characteristic: u64, delta: u32, hn: HnType) -> Result<Self> {
        if !is_prime(characteristic) {
            return Err(Error::validation(
                "characteristic",
                format!("{characteristic} is not a prime"),
            ));
        }
        Ok(StrongHnData {
            characteristic,
            delta,
            hn,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn hn(&self) -> &HnType {
        &self.hn
    }

    /// `p^δ`, the degree of the `δ`-fold Frobenius.
    pub fn frobenius_degree(&self) -> BigInt {
        BigInt::from(self.characteristic).pow(self.delta)
    }
}

/// Any of the accepted bundle presentations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BundleDescriptor {
    CharZero(HnType),
    /// `characteristic` is 0 or a prime.
    Split {
        bundle: SplitBundle,
        characteristic: u64,
    },
    Strong(StrongHnData),
}

impl BundleDescriptor {
    pub fn split(bundle: SplitBundle, characteristic: u64) -> Result<Self> {
        if characteristic != 0 && !is_prime(characteristic) {
            return Err(Error::validation(
                "characteristic",
                format!("{characteristic} is neither 0 nor a prime"),
            ));
        }
        Ok(BundleDescriptor::Split {
            bundle,
            characteristic,
        })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            BundleDescriptor::CharZero(_) => 0,
            BundleDescriptor::Split { characteristic, .. } => *characteristic,
            BundleDescriptor::Strong(d) => d.characteristic,
        }
    }

    pub fn total_rank(&self) -> usize {
        match self {
            BundleDescriptor::CharZero(hn) => hn.total_rank(),
            BundleDescriptor::Split { bundle, .. } => bundle.rank(),
            BundleDescriptor::Strong(d) => d.hn.total_rank(),
        }
    }

    /// The HN type the λ formula reads: the given one, the split one, or the
    /// stabilized one of `(F^δ)^* E`.
    pub fn hn(&self) -> HnType {
        match self {
            BundleDescriptor::CharZero(hn) => hn.clone(),
            BundleDescriptor::Split { bundle, .. } => hn_of_split(bundle),
            BundleDescriptor::Strong(d) => d.hn.clone(),
        }
    }

    /// λ for this presentation, `1 <= r <= N`. Split bundles have `δ = 0`.
    pub fn lambda(&self, r: usize) -> Result<Rational> {
        match self {
            BundleDescriptor::CharZero(hn) => lambda_char0(hn, r),
            BundleDescriptor::Split { bundle, .. } => lambda_char0(&hn_of_split(bundle), r),
            BundleDescriptor::Strong(d) => lambda_strong(d, r),
        }
    }

    /// Presents the bundle as stabilized characteristic-`p` data, if it has a
    /// prime characteristic. Split bundles stabilize at `δ = 0`.
    pub fn to_strong(&self) -> Option<StrongHnData> {
        match self {
            BundleDescriptor::CharZero(_) => None,
            BundleDescriptor::Split {
                bundle,
                characteristic,
            } => StrongHnData::new(*characteristic, 0, hn_of_split(bundle)).ok(),
            BundleDescriptor::Strong(d) => Some(d.clone()),
        }
    }
}

/// HN filtration of a split bundle: equal exponents grouped, groups in
/// strictly descending order.
pub fn hn_of_split(e: &SplitBundle) -> HnType {
    let blocks = e
        .canonical()
        .into_iter()
        .chunk_by(|a| a.clone())
        .into_iter()
        .map(|(a, group)| {
            let rank = group.count();
            HnBlock {
                rank,
                degree: a * BigInt::from(rank),
            }
        })
        .collect();
    HnType { blocks }
}

/// `deg(E_{ℓ-1}) + (r - rank(E_{ℓ-1})) · μ(E_ℓ / E_{ℓ-1})`.
pub fn lambda_char0(hn: &HnType, r: usize) -> Result<Rational> {
    let ell = hn.block_index(r)?;
    let sums = hn.partial_sums();
    let (prev_rank, prev_degree) = &sums[ell - 1];
    let mu = hn.blocks[ell - 1].slope();
    Ok(Rational::from(prev_degree) + Rational::from(BigInt::from(r - prev_rank)) * mu)
}

/// The characteristic-0 expression evaluated on `(F^δ)^* E`, divided by `p^δ`.
pub fn lambda_strong(d: &StrongHnData, r: usize) -> Result<Rational> {
    let base = lambda_char0(&d.hn, r)?;
    Ok(base / Rational::from(d.frobenius_degree()))
}

/// `(F^j)^* E` for split `E`: every exponent times `p^j`.
pub fn frobenius_split(e: &SplitBundle, p: u64, j: u32) -> Result<SplitBundle> {
    if !is_prime(p) {
        return Err(Error::validation(
            "characteristic",
            format!("{p} is not a prime"),
        ));
    }
    let factor = BigInt::from(p).pow(j);
    Ok(SplitBundle {
        exponents: e.exponents.iter().map(|a| a * &factor).collect(),
    })
}

/// Moves the stabilized filtration `j` Frobenius steps further: `δ ↦ δ + j`,
/// block degrees times `p^j`, ranks unchanged.
pub fn shift_strong(d: &StrongHnData, j: u32) -> StrongHnData {
    let factor = BigInt::from(d.characteristic).pow(j);
    StrongHnData {
        characteristic: d.characteristic,
        delta: d.delta + j,
        hn: d.hn.scaled(&factor),
    }
}

/// The dual bundle: every exponent negated.
pub fn dual_split(e: &SplitBundle) -> SplitBundle {
    SplitBundle {
        exponents: e.exponents.iter().map(|a| -a).collect(),
    }
}

/// Exponents of `⋀^r` of a split bundle: one `r`-subset sum per subset,
/// subsets taken lexicographically over the descending-sorted exponents.
///
/// Works on a bare exponent list because `⋀^N` is a line bundle.
pub fn exterior_power_split(exponents: &[BigInt], r: usize) -> Result<Vec<BigInt>> {
    check_range("r", r, 1, exponents.len())?;
    let sorted = sorted_descending(exponents);
    Ok(sorted
        .iter()
        .combinations(r)
        .map(|subset| subset.into_iter().sum())
        .collect())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
