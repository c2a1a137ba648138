//! Balls into bins: `k` balls land independently and uniformly in `n` bins.

use std::collections::BTreeMap;

use rand::distr::{Distribution, Uniform};
use rand::Rng;

use crate::error::{Error, Result};
use crate::seed::rng_from_seed;

/// Bin index of each ball, bins numbered `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocationVector {
    n: usize,
    entries: Vec<usize>,
}

impl LocationVector {
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "at least one bin is required".into(),
            ));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::InvalidArgument(format!("bin {bad} outside 1..={n}")));
        }
        Ok(LocationVector { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of balls.
    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<usize> {
        self.entries
    }
}

/// Number of balls per bin; index 0 is bin 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadVector {
    loads: Vec<usize>,
}

impl LoadVector {
    pub fn loads(&self) -> &[usize] {
        &self.loads
    }

    pub fn total(&self) -> usize {
        self.loads.iter().sum()
    }

    /// Λ, the maximum load.
    pub fn max_load(&self) -> usize {
        self.loads.iter().copied().max().unwrap_or(0)
    }

    /// Λ_t, the maximum load among bins `1..=t`.
    pub fn max_load_prefix(&self, t: usize) -> Result<usize> {
        if t == 0 || t > self.loads.len() {
            return Err(Error::InvalidArgument(format!(
                "prefix length {t} outside 1..={}",
                self.loads.len()
            )));
        }
        Ok(self.loads[..t].iter().copied().max().unwrap_or(0))
    }

    /// Number of bins with each load (`X^(l)`), zero counts omitted.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for &l in &self.loads {
            *out.entry(l).or_insert(0) += 1;
        }
        out
    }
}

/// Throws `k` balls into `n` bins with the caller's generator.
pub fn throw_with<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<LocationVector> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "at least one bin is required".into(),
        ));
    }
    let bins = Uniform::new_inclusive(1, n).expect("1 <= n");
    let entries = (0..k).map(|_| bins.sample(rng)).collect();
    Ok(LocationVector { n, entries })
}

/// Throws `k` balls into `n` bins; deterministic in `seed`.
pub fn throw(n: usize, k: usize, seed: u64) -> Result<LocationVector> {
    throw_with(&mut rng_from_seed(seed), n, k)
}

pub fn loads(loc: &LocationVector) -> LoadVector {
    let mut loads = vec![0usize; loc.n];
    for &e in &loc.entries {
        loads[e - 1] += 1;
    }
    LoadVector { loads }
}

pub fn max_load(loc: &LocationVector) -> usize {
    loads(loc).max_load()
}

pub fn max_load_prefix(loc: &LocationVector, t: usize) -> Result<usize> {
    loads(loc).max_load_prefix(t)
}

pub fn census(loc: &LocationVector) -> BTreeMap<usize, usize> {
    loads(loc).census()
}

/// Natural log of `C(k, l)` via log-gamma.
fn ln_binomial(k: usize, l: usize) -> f64 {
    let (k, l) = (k as f64, l as f64);
    libm::lgamma(k + 1.0) - libm::lgamma(l + 1.0) - libm::lgamma(k - l + 1.0)
}

/// μ(l) = n·C(k, l)·(1/n)^l·(1 − 1/n)^(k−l), the expected number of bins
/// holding exactly `l` balls. Evaluated in log space.
pub fn expected_census(n: usize, k: usize, l: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "at least one bin is required".into(),
        ));
    }
    if l > k {
        return Err(Error::InvalidArgument(format!(
            "load {l} exceeds ball count {k}"
        )));
    }
    if n == 1 {
        return Ok(if l == k { 1.0 } else { 0.0 });
    }
    let nf = n as f64;
    let ln_mu =
        nf.ln() + ln_binomial(k, l) - l as f64 * nf.ln() + (k - l) as f64 * (-1.0 / nf).ln_1p();
    Ok(ln_mu.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bin_and_empty() {
        let loc = throw(1, 17, 3).unwrap();
        assert!(loc.entries().iter().all(|&e| e == 1));
        assert!(throw(5, 0, 3).unwrap().entries().is_empty());
        assert!(throw(0, 3, 3).is_err());
    }

    #[test]
    fn fair_coin() {
        let loc = throw(2, 1_000_000, 11).unwrap();
        let ones = loc.entries().iter().filter(|&&e| e == 1).count() as f64;
        assert!((ones / 1e6 - 0.5).abs() < 0.01);
    }

    #[test]
    fn load_examples() {
        let loc = LocationVector::new(3, vec![1, 1, 2]).unwrap();
        let lv = loads(&loc);
        assert_eq!(lv.loads(), &[2, 1, 0]);
        assert_eq!(lv.max_load(), 2);
        assert_eq!(lv.max_load_prefix(1).unwrap(), 2);
        assert_eq!(census(&loc), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!(
            loads(&LocationVector::new(4, vec![]).unwrap()).loads(),
            &[0; 4]
        );

        let one = LocationVector::new(1, vec![1]).unwrap();
        assert_eq!(max_load(&one), 1);

        let loc = LocationVector::new(3, vec![2, 2, 2, 2, 2, 3]).unwrap();
        assert_eq!(max_load_prefix(&loc, 1).unwrap(), 0);
        assert!(max_load_prefix(&loc, 0).is_err());
        assert!(max_load_prefix(&loc, 4).is_err());
    }

    #[test]
    fn all_distinct_census() {
        let loc = LocationVector::new(10, vec![3, 1, 7]).unwrap();
        assert_eq!(census(&loc), BTreeMap::from([(0, 7), (1, 3)]));
    }

    #[test]
    fn location_vector_validation() {
        assert!(LocationVector::new(3, vec![4]).is_err());
        assert!(LocationVector::new(3, vec![0]).is_err());
        assert!(LocationVector::new(0, vec![]).is_err());
    }

    #[test]
    fn expected_census_closed_forms() {
        for (n, k) in [(7usize, 5usize), (100, 100), (3, 12)] {
            let nf = n as f64;
            let all = expected_census(n, k, k).unwrap();
            assert!((all / nf.powi(1 - k as i32) - 1.0).abs() < 1e-10);
            let empty = expected_census(n, k, 0).unwrap();
            assert!((empty / (nf * (1.0 - 1.0 / nf).powi(k as i32)) - 1.0).abs() < 1e-12);
        }
        assert!(expected_census(4, 2, 3).is_err());
        assert_eq!(expected_census(1, 4, 4).unwrap(), 1.0);
        assert_eq!(expected_census(1, 4, 2).unwrap(), 0.0);
    }

    #[test]
    fn expected_census_sums_to_n() {
        let (n, k) = (50usize, 80usize);
        let total: f64 = (0..=k).map(|l| expected_census(n, k, l).unwrap()).sum();
        assert!((total - n as f64).abs() < 1e-9);
    }

    #[test]
    fn expected_census_large_k_is_finite() {
        let mu = expected_census(1_000_000, 1_000_000, 5).unwrap();
        assert!(mu.is_finite() && mu > 0.0);
    }
}
