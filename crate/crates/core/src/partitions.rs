//! Integer partitions: counting functions, the admissibility injection,
//! conjugation, the lower-bound partition count and the upper-bound counts.
//!
//! Partitions are weakly increasing lists of positive parts. Counting uses
//! exact recurrences; streaming enumeration is kept for cross-checks.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::families::PontNeufParams;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Parts must be positive and weakly increasing.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidPartition("parts must be weakly increasing".into()));
        }
        Ok(Partition { parts })
    }

    /// Sorts the parts; zero parts are dropped.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable();
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        conjugate_partition(self)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn conjugate_partition(q: &Partition) -> Partition {
    let max = q.largest().unwrap_or(0);
    let mut parts: Vec<u32> = (1..=max)
        .map(|i| q.parts.iter().filter(|&&x| x >= i).count() as u32)
        .collect();
    parts.reverse();
    Partition { parts }
}

/// Streams the partitions of `n` with every part at least `min_part`, in
/// ascending lexicographic order (ascending-composition generation).
pub struct Partitions {
    a: Vec<u32>,
    k: usize,
    empty_pending: bool,
}

pub fn partitions(n: u32, min_part: u32) -> Partitions {
    let min_part = min_part.max(1);
    let mut a = vec![0; n as usize + 2];
    let mut k = 0;
    if n >= min_part {
        a[0] = min_part - 1;
        a[1] = n - (min_part - 1);
        k = 1;
    }
    Partitions { a, k, empty_pending: n == 0 }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Partition::default());
        }
        if self.k == 0 {
            return None;
        }
        let a = &mut self.a;
        let mut k = self.k;
        let x = a[k - 1] + 1;
        let mut y = a[k] - 1;
        k -= 1;
        while x <= y {
            a[k] = x;
            y -= x;
            k += 1;
        }
        a[k] = x + y;
        let out = Partition { parts: a[..=k].to_vec() };
        self.k = k;
        Some(out)
    }
}

/// `p(0..=max)` by the pentagonal-number recurrence.
pub fn partition_numbers(max: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::zero(); max + 1];
    p[0] = BigInt::one();
    for i in 1..=max {
        let mut s = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[i - g1].clone();
            if g2 <= i {
                term += &p[i - g2];
            }
            if k % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        p[i] = s;
    }
    p.into_iter().map(|x| x.to_biguint().expect("p(n) is non-negative")).collect()
}

pub fn p(n: usize) -> BigUint {
    partition_numbers(n).pop().unwrap()
}

/// Partitions with every part at least 2, as `p(n) − p(n−1)`.
pub fn p2(n: usize) -> BigUint {
    p2_from_table(&partition_numbers(n), n)
}

pub fn p2_from_table(p: &[BigUint], n: usize) -> BigUint {
    if n == 0 {
        p[0].clone()
    } else {
        &p[n] - &p[n - 1]
    }
}

pub fn count_enumerated(n: u32, min_part: u32) -> u64 {
    partitions(n, min_part).count() as u64
}

/// Parts all at least 2 and `n` minus the largest part even. The empty
/// partition of 0 counts as admissible.
pub fn is_admissible(q: &Partition) -> bool {
    match q.largest() {
        None => true,
        Some(top) => q.smallest().unwrap() >= 2 && (q.total() - top) % 2 == 0,
    }
}

/// For each total `t ≤ max_total`: partitions of `t` into parts ≥ 2 whose
/// largest part `m` has `t + offset − m` even. One pass over the largest part.
fn min2_largest_parity_table(max_total: usize, offset: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); max_total + 1];
    out[0] = BigUint::one();
    // ways[s]: partitions of s into parts in [2, m]
    let mut ways = vec![BigUint::zero(); max_total + 1];
    ways[0] = BigUint::one();
    for m in 2..=max_total {
        for s in m..=max_total {
            let add = ways[s - m].clone();
            ways[s] += add;
        }
        // largest part exactly m: m plus a partition of t − m into parts in [2, m]
        for t in m..=max_total {
            if (t + offset - m) % 2 == 0 {
                out[t] += &ways[t - m];
            }
        }
    }
    out
}

/// `adm2(0..=max)`.
pub fn adm2_table(max: usize) -> Vec<BigUint> {
    min2_largest_parity_table(max, 0)
}

pub fn adm2(n: usize) -> BigUint {
    adm2_table(n).pop().unwrap()
}

pub fn adm2_enumerated(n: u32) -> u64 {
    partitions(n, 2).filter(is_admissible).count() as u64
}

/// Lowers the first part that is at least 3 by one and raises the largest
/// part by one. Maps non-admissible partitions (parts ≥ 2) to admissible ones.
pub fn injection_to_admissible(q: &Partition) -> Result<Partition> {
    if q.smallest().is_some_and(|s| s < 2) {
        return Err(Error::InvalidPartition("parts must be at least 2".into()));
    }
    if is_admissible(q) {
        return Err(Error::AlreadyAdmissible);
    }
    let k = q.len();
    // n − a_k odd forces an odd part ≥ 3 before the last position
    let l = q.parts.iter().position(|&x| x >= 3).filter(|&l| l < k - 1).ok_or_else(|| {
        Error::InvalidPartition("no part ≥ 3 before the largest".into())
    })?;
    let mut parts = q.parts.clone();
    parts[l] -= 1;
    parts[k - 1] += 1;
    Ok(Partition::from_unsorted(parts))
}

/// Exhaustive behaviour of [`injection_to_admissible`] on all partitions of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectionCensus {
    pub n: u32,
    pub domain: u64,
    pub image: u64,
    pub non_admissible_images: u64,
    /// Images hit by two or more domain elements.
    pub collisions: u64,
    /// First collision in enumeration order: `(image, first preimage, second preimage)`.
    pub example: Option<(Partition, Partition, Partition)>,
}

impl InjectionCensus {
    pub fn injective(&self) -> bool {
        self.collisions == 0
    }
}

pub fn injection_census_enumerated(n: u32) -> InjectionCensus {
    let mut seen: HashMap<Partition, (Partition, u32)> = HashMap::new();
    let mut domain = 0;
    let mut non_admissible_images = 0;
    let mut collisions = 0;
    let mut example = None;
    for q in partitions(n, 2).filter(|q| !is_admissible(q)) {
        domain += 1;
        let img = injection_to_admissible(&q).expect("domain element");
        if !is_admissible(&img) || img.total() != n {
            non_admissible_images += 1;
        }
        match seen.get_mut(&img) {
            Some((first, hits)) => {
                *hits += 1;
                if *hits == 2 {
                    collisions += 1;
                    if example.is_none() {
                        example = Some((img.clone(), first.clone(), q.clone()));
                    }
                }
            }
            None => {
                seen.insert(img, (q, 1));
            }
        }
    }
    InjectionCensus {
        n,
        domain,
        image: seen.len() as u64,
        non_admissible_images,
        collisions,
        example,
    }
}

/// Domain, image and collision counts of the injection, counted without
/// enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountedCensus {
    pub n: usize,
    pub domain: u128,
    pub image: u128,
    pub collisions: u128,
}

/// Counted census for every `n ≤ max_n` (`max_n ≤ 400` keeps counts in `u128`).
///
/// Write an image as `b = (2^m, c_1, ..., c_r)` with every `c_i ≥ 3`. A
/// preimage raises one part and lowers the largest; only positions `m` and
/// `m + 1` can be raised, so each image has at most two preimages. Both
/// exist exactly when `m ≥ 1`, `r ≥ 2`, `c_{r-1} < c_r`, and `c_2 ≥ c_1 + 2`
/// (`r = 2`) or `c_2 ≥ c_1 + 1` (`r ≥ 3`).
pub fn injection_census_counted(max_n: usize) -> Vec<CountedCensus> {
    assert!(max_n <= 400, "u128 counts are only guaranteed up to n = 400");
    let p = partition_numbers(max_n);
    let adm = adm2_table(max_n);
    let mut collisions = vec![0u128; max_n + 1];
    // middle parts live in [c1 + 1, top − 1]; table[hi][s] counts partitions
    // of s into parts in [lo, hi]
    for c1 in 3..=max_n {
        // smallest collision with this c1 is (2, c1, c1 + 2)
        if 2 + c1 + c1 + 2 > max_n {
            break;
        }
        let lo = c1 + 1;
        let mut table: Vec<Vec<u128>> = Vec::new();
        let mut row = vec![0u128; max_n + 1];
        row[0] = 1;
        // hi = lo − 1: only the empty partition
        table.push(row.clone());
        for hi in lo..=max_n {
            for s in hi..=max_n {
                row[s] += row[s - hi];
            }
            table.push(row.clone());
        }
        let q = |s: usize, hi: usize| -> u128 {
            if hi < lo {
                u128::from(s == 0)
            } else {
                table[hi - lo + 1][s]
            }
        };
        for n in 0..=max_n {
            for top in (c1 + 2)..=n {
                if (n - top) % 2 != 0 {
                    continue;
                }
                let mut m = 1;
                while 2 * m + c1 + top <= n {
                    let s = n - top - 2 * m - c1;
                    collisions[n] += if s == 0 { 1 } else { q(s, top - 1) };
                    m += 1;
                }
            }
        }
    }
    (0..=max_n)
        .map(|n| {
            let p2 = p2_from_table(&p, n);
            let domain = (p2 - &adm[n]).to_u128().unwrap();
            CountedCensus {
                n,
                domain,
                image: domain - collisions[n],
                collisions: collisions[n],
            }
        })
        .collect()
}

/// Partitions of `n + 2` into parts ≥ 2 with `n` minus the largest part even.
pub fn lower_bound_set(n: u32) -> Vec<Partition> {
    partitions(n + 2, 2)
        .filter(|q| q.largest().is_some_and(|top| (n + top) % 2 == 0))
        .collect()
}

/// `LB(n)` by direct enumeration.
pub fn lower_bound(n: u32) -> u64 {
    partitions(n + 2, 2)
        .filter(|q| q.largest().is_some_and(|top| (n + top) % 2 == 0))
        .count() as u64
}

/// `LB(0..=max_n)` by the largest-part recurrence, parity anchored at `n`.
pub fn lower_bound_table(max_n: usize) -> Vec<BigUint> {
    // (n + 2) − m ≡ n − m, so anchoring at n + 2 with offset 0 is the same parity
    let t = min2_largest_parity_table(max_n + 2, 0);
    t[2..].to_vec()
}

/// Image of `(a; b)` under shift-by-one followed by conjugation.
pub fn lower_bound_image(params: &PontNeufParams) -> Partition {
    let mut parts: Vec<u32> = params.a().iter().map(|&x| x + 1).collect();
    parts.extend([params.b() + 1, params.b() + 1]);
    Partition::from_unsorted(parts).conjugate()
}

pub const HR_EXPONENT: f64 = 2.565_099_660_323_728; // π √(2/3)

pub fn hr_estimate_p(n: usize) -> f64 {
    let n = n as f64;
    (HR_EXPONENT * n.sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}

pub fn hr_estimate_p2(n: usize) -> f64 {
    let n = n as f64;
    PI * 2f64.sqrt() / (24.0 * n * n.sqrt()) * (HR_EXPONENT * n.sqrt()).exp()
}

pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln LB(n) / √n`.
pub fn growth_exponent(lb: &BigUint, n: usize) -> f64 {
    ln_big(lb) / (n as f64).sqrt()
}

/// `U(0..=max)`: multisets `{j_1 ≤ ... ≤ j_r}` with `j_i ≥ 0`, `r ≤ n`, `Σ j ≤ n`.
/// `r = 0` (the constant monomial) is included.
pub fn upper_bound_table(max: usize) -> Vec<BigUint> {
    // fit[m][r]: partitions of m into at most r positive parts
    let mut fit = vec![vec![BigUint::zero(); max + 1]; max + 1];
    for r in 0..=max {
        fit[0][r] = BigUint::one();
    }
    for r in 1..=max {
        for m in 1..=max {
            let mut v = fit[m][r - 1].clone();
            if m >= r {
                v += &fit[m - r][r];
            }
            fit[m][r] = v;
        }
    }
    (0..=max)
        .map(|n| {
            let mut total = BigUint::zero();
            for row in fit.iter().take(n + 1) {
                for x in row.iter().take(n + 1) {
                    total += x;
                }
            }
            total
        })
        .collect()
}

pub fn upper_bound_u(n: usize) -> BigUint {
    upper_bound_table(n).pop().unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub n: usize,
    pub u: BigUint,
    pub n2p: BigUint,
    pub n2p_ok: bool,
    pub cumulative: BigUint,
    pub n3p: BigUint,
    pub n3p_ok: bool,
}

/// `U(n) ≤ n² p(n)` and `Σ_{k=0}^{n} U(n − k) ≤ n³ p(n)` for each `1 ≤ n ≤ max`.
pub fn bound_checks(max: usize) -> Vec<BoundCheck> {
    let p = partition_numbers(max);
    let u = upper_bound_table(max);
    let mut cumulative = BigUint::zero();
    let mut out = Vec::new();
    for n in 0..=max {
        cumulative += &u[n];
        if n == 0 {
            continue;
        }
        let n_big = BigUint::from(n);
        let n2p = &n_big * &n_big * &p[n];
        let n3p = &n2p * &n_big;
        out.push(BoundCheck {
            n,
            n2p_ok: u[n] <= n2p,
            n3p_ok: cumulative <= n3p,
            u: u[n].clone(),
            n2p,
            cumulative: cumulative.clone(),
            n3p,
        });
    }
    out
}
