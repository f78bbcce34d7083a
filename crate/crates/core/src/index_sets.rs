//! The index set `I = {m ≥ 1 : α_m < ρ}` and its block structure.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rho::{Regime, RhoParam};

/// A closed integer range `[lo, hi]` labelled by its block number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub k: u64,
    pub lo: u64,
    pub hi: u64,
}

impl Block {
    pub fn len(&self) -> u64 {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

/// `⌊a·x/y⌋` for nonnegative operands.
pub(crate) fn mul_div_floor(a: u64, x: &BigInt, y: &BigInt) -> u64 {
    if let (Some(xi), Some(yi)) = (x.to_i128(), y.to_i128()) {
        if let Some(v) = (a as i128).checked_mul(xi) {
            return v.div_euclid(yi) as u64;
        }
    }
    (BigInt::from(a) * x).div_floor(y).to_u64().expect("floor fits u64")
}

/// `N_k = ⌊(k+1)/(1−ρ)⌋ − 1` (ρ > 1/2).
pub fn n_high(rho: &RhoParam, k: u64) -> u64 {
    let q = rho.denom();
    mul_div_floor(k + 1, q, &(q - rho.numer())) - 1
}

/// `N′_k = ⌊k/ρ⌋` (ρ < 1/2).
pub fn n_prime(rho: &RhoParam, k: u64) -> u64 {
    mul_div_floor(k, rho.denom(), rho.numer())
}

/// `M_j = ⌊jρ/(1 − ⌊1/ρ⌋ρ)⌋` (ρ < 1/2).
pub fn m_seq(rho: &RhoParam, j: u64) -> u64 {
    let t = BigInt::from(rho.floor_inv());
    let p = rho.numer();
    mul_div_floor(j, p, &(rho.denom() - t * p))
}

/// `s = 1 − ⌊1/ρ⌋ρ`.
pub fn s_rho(rho: &RhoParam) -> BigRational {
    let t = BigInt::from(rho.floor_inv());
    BigRational::new(rho.denom() - t * rho.numer(), rho.denom().clone())
}

/// Blocks `I_k = [N_{k−1}+2, N_k]` of the high regime.
#[derive(Clone, Debug, Serialize)]
pub struct BlockDecompositionHigh {
    #[serde(skip)]
    pub rho: RhoParam,
    pub blocks: Vec<Block>,
    pub n_max: Vec<u64>,
    /// Block `k_max + 1` cut at the coverage bound, when present.
    pub tail: Option<Block>,
    pub coverage: u64,
}

/// The singleton structure `I = {N′_k}` of the low regime with blocks
/// `Y_j = [M_{j−1}+1, M_j]` of `k`.
#[derive(Clone, Debug, Serialize)]
pub struct BlockDecompositionLow {
    #[serde(skip)]
    pub rho: RhoParam,
    pub t: u64,
    pub s: (String, String),
    /// `n_prime[k−1] = N′_k`
    pub n_prime: Vec<u64>,
    /// `m_seq[j] = M_j`, starting at `M_0 = 0`
    pub m_seq: Vec<u64>,
    pub y_blocks: Vec<Block>,
    pub tail: Option<Block>,
    pub coverage: u64,
}

fn require_regime(rho: &RhoParam, want: Regime) -> Result<()> {
    if rho.regime() != want {
        return Err(Error::Regime(format!("expected the {want} regime, rho = {rho} is {}", rho.regime())));
    }
    Ok(())
}

fn check_high_block(rho: &RhoParam, b: &Block) -> Result<()> {
    // α steps by 1−ρ across the block and starts at k+1−(N_{k−1}+2)ρ's fraction
    let step = rho.denom() - rho.numer();
    let mut prev = rho.alpha_scaled(b.lo);
    for m in b.lo + 1..=b.hi {
        let a = rho.alpha_scaled(m);
        if &a - &prev != step {
            return Err(Error::Inconsistent(format!("alpha does not step by 1-rho at m = {m}")));
        }
        prev = a;
    }
    Ok(())
}

/// Blocks `k = 0..=k_max` of the high regime, closed forms checked against
/// the α step structure.
pub fn blocks_high(rho: &RhoParam, k_max: u64) -> Result<BlockDecompositionHigh> {
    require_regime(rho, Regime::High)?;
    let top = n_high(rho, k_max);
    rho.check_index(top)?;
    let mut blocks = Vec::with_capacity(k_max as usize + 1);
    let mut n_max = Vec::with_capacity(k_max as usize + 1);
    let mut lo = 1;
    for k in 0..=k_max {
        let hi = n_high(rho, k);
        let b = Block { k, lo, hi };
        check_high_block(rho, &b)?;
        blocks.push(b);
        n_max.push(hi);
        lo = hi + 2;
    }
    Ok(BlockDecompositionHigh { rho: rho.clone(), blocks, n_max, tail: None, coverage: top })
}

/// High-regime blocks covering `[1, bound]`, the last one possibly cut.
pub fn blocks_high_covering(rho: &RhoParam, bound: u64) -> Result<BlockDecompositionHigh> {
    require_regime(rho, Regime::High)?;
    rho.check_index(bound)?;
    let mut k_max = None;
    let mut k = 0;
    while n_high(rho, k) <= bound {
        k_max = Some(k);
        k += 1;
    }
    let mut dec = match k_max {
        Some(k) => blocks_high(rho, k)?,
        None => BlockDecompositionHigh { rho: rho.clone(), blocks: vec![], n_max: vec![], tail: None, coverage: 0 },
    };
    let lo = dec.blocks.last().map_or(1, |b| b.hi + 2);
    if lo <= bound {
        let b = Block { k: k_max.map_or(0, |k| k + 1), lo, hi: bound };
        check_high_block(rho, &b)?;
        dec.tail = Some(b);
    }
    dec.coverage = bound;
    Ok(dec)
}

impl BlockDecompositionHigh {
    /// Members of `I` within coverage, ascending.
    pub fn members(&self) -> Vec<u64> {
        self.blocks
            .iter()
            .chain(self.tail.iter())
            .flat_map(|b| b.lo..=b.hi)
            .collect()
    }

    /// `k(N_0+1)+N_0 ≤ N_k ≤ k(N_0+2)+N_0` for every stored `k`.
    pub fn bounds_hold(&self) -> bool {
        let Some(&n0) = self.n_max.first() else { return true };
        self.n_max.iter().enumerate().all(|(k, &nk)| {
            let k = k as u64;
            k * (n0 + 1) + n0 <= nk && nk <= k * (n0 + 2) + n0
        })
    }
}

/// Low-regime decomposition for `j = 1..=j_max`.
pub fn blocks_low(rho: &RhoParam, j_max: u64) -> Result<BlockDecompositionLow> {
    require_regime(rho, Regime::Low)?;
    if j_max == 0 {
        return Err(Error::Invalid("j_max must be positive".into()));
    }
    let top = n_prime(rho, m_seq(rho, j_max));
    rho.check_index(top)?;
    build_low(rho, j_max, None, top)
}

/// Low-regime decomposition covering `[1, bound]`.
pub fn blocks_low_covering(rho: &RhoParam, bound: u64) -> Result<BlockDecompositionLow> {
    require_regime(rho, Regime::Low)?;
    rho.check_index(bound)?;
    let mut j_max = 0;
    while n_prime(rho, m_seq(rho, j_max + 1)) <= bound {
        j_max += 1;
    }
    let k_top = mul_div_floor(bound + 1, rho.numer(), rho.denom());
    // largest k with ⌊k/ρ⌋ ≤ bound
    let k_top = (k_top.saturating_sub(2)..=k_top + 1)
        .filter(|&k| n_prime(rho, k) <= bound)
        .max()
        .unwrap_or(0);
    build_low(rho, j_max, Some(k_top), bound)
}

fn build_low(rho: &RhoParam, j_max: u64, k_top: Option<u64>, coverage: u64) -> Result<BlockDecompositionLow> {
    let t = rho.floor_inv();
    let s = s_rho(rho);
    let s_scaled = rho.denom() - BigInt::from(t) * rho.numer();
    let m: Vec<u64> = (0..=j_max).map(|j| m_seq(rho, j)).collect();
    let last_k = k_top.unwrap_or(m[j_max as usize]);
    let mut y_blocks = Vec::new();
    for j in 1..=j_max {
        y_blocks.push(Block { k: j, lo: m[j as usize - 1] + 1, hi: m[j as usize] });
    }
    let tail_lo = m[j_max as usize] + 1;
    let tail = (k_top.is_some() && tail_lo <= last_k).then(|| Block { k: j_max + 1, lo: tail_lo, hi: last_k });
    let mut n_primes = Vec::with_capacity(last_k as usize);
    for b in y_blocks.iter().chain(tail.iter()) {
        let i = b.k;
        for k in b.lo..=b.hi {
            let n = n_prime(rho, k);
            if n != k * t + i - 1 {
                return Err(Error::Inconsistent(format!("N'_{k} = {n} differs from k*t+i-1 in Y_{i}")));
            }
            let want = BigInt::from(k) * &s_scaled - BigInt::from(i - 1) * rho.numer();
            if rho.alpha_scaled(n) != want {
                return Err(Error::Inconsistent(format!("alpha at N'_{k} differs from k*s-(i-1)*rho")));
            }
            n_primes.push(n);
        }
    }
    Ok(BlockDecompositionLow {
        rho: rho.clone(),
        t,
        s: (s.numer().to_string(), s.denom().to_string()),
        n_prime: n_primes,
        m_seq: m,
        y_blocks,
        tail,
        coverage,
    })
}

impl BlockDecompositionLow {
    /// Members of `I` within coverage, ascending.
    pub fn members(&self) -> Vec<u64> {
        self.n_prime.iter().copied().filter(|&n| n <= self.coverage).collect()
    }

    /// `j·M_1 ≤ M_j ≤ j·M_1 + j − 1` for every stored `j ≥ 1`.
    pub fn bounds_hold(&self) -> bool {
        let m1 = self.m_seq.get(1).copied().unwrap_or(0);
        self.m_seq.iter().enumerate().skip(1).all(|(j, &mj)| {
            let j = j as u64;
            j * m1 <= mj && mj < j * m1 + j
        })
    }

    /// `J′_k = [⌊(k−1)/ρ⌋+1, ⌊k/ρ⌋]`
    pub fn j_prime(&self, k: u64) -> Block {
        Block { k, lo: n_prime(&self.rho, k - 1) + 1, hi: n_prime(&self.rho, k) }
    }
}

/// Members of `I ∩ [1, bound]` from the closed forms of the right regime.
pub fn closed_form_members(rho: &RhoParam, bound: u64) -> Result<Vec<u64>> {
    Ok(match rho.regime() {
        Regime::High => blocks_high_covering(rho, bound)?.members(),
        Regime::Low => blocks_low_covering(rho, bound)?.members(),
    })
}

/// `{m ≤ bound : α_m < ρ}` by direct evaluation of every α.
pub fn scan_oracle(rho: &RhoParam, bound: u64) -> Result<Vec<u64>> {
    rho.check_index(bound)?;
    Ok((1..=bound).filter(|&m| rho.member_unchecked(m)).collect())
}

/// `{⌊k/(1−ρ)⌋ : k ≥ 1} ∩ [1, bound]`, the complement of `I` when ρ > 1/2.
pub fn beatty_complement(rho: &RhoParam, bound: u64) -> Vec<u64> {
    let q = rho.denom();
    let qp = q - rho.numer();
    (1..)
        .map(|k| mul_div_floor(k, q, &qp))
        .take_while(|&v| v <= bound)
        .collect()
}
