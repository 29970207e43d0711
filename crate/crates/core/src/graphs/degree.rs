use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

/// A prescribed degree for each of `n ≥ 1` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::invalid("degree sequence must have at least one vertex"));
        }
        Ok(Self { degrees })
    }

    /// `n` copies of `d`.
    pub fn regular(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    /// `‖d‖₁`, the number of half-edges.
    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// `‖d‖_∞`.
    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn has_even_sum(&self) -> bool {
        self.total() % 2 == 0
    }

    /// Erdős–Gallai test: is there a simple graph with these degrees?
    pub fn is_graphical(&self) -> bool {
        if !self.has_even_sum() {
            return false;
        }
        let mut d = self.degrees.clone();
        d.sort_unstable_by(|a, b| b.cmp(a));
        let n = d.len();
        let mut prefix = 0usize;
        for k in 1..=n {
            prefix += d[k - 1];
            let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
            if prefix > k * (k - 1) + tail {
                return false;
            }
        }
        true
    }

    /// One integer per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degrees = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let d = line
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            degrees.push(d);
        }
        Self::new(degrees)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.degrees.len() * 3);
        for d in &self.degrees {
            s.push_str(&d.to_string());
            s.push('\n');
        }
        s
    }
}

/// The size-biased law of `d_v − 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OffspringDistribution {
    support: Vec<usize>,
    probabilities: Vec<f64>,
}

impl OffspringDistribution {
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn prob(&self, x: usize) -> f64 {
        match self.support.binary_search(&x) {
            Ok(i) => self.probabilities[i],
            Err(_) => 0.0,
        }
    }

    pub fn mean(&self) -> f64 {
        self.moment(1)
    }

    /// `E[D^k]`.
    pub fn moment(&self, k: i32) -> f64 {
        self.support
            .iter()
            .zip(&self.probabilities)
            .map(|(&x, &p)| p * (x as f64).powi(k))
            .sum()
    }

    /// Inverse-CDF draw from a uniform in [0, 1).
    pub fn sample_from_uniform(&self, u: f64) -> usize {
        let mut acc = 0.0;
        for (&x, &p) in self.support.iter().zip(&self.probabilities) {
            acc += p;
            if u < acc {
                return x;
            }
        }
        *self.support.last().expect("non-empty support")
    }
}

/// `P(x) = Σ_v (x+1)·1{d_v = x+1} / Σ_v d_v`.
pub fn effective_offspring(dn: &DegreeSequence) -> Result<OffspringDistribution> {
    let total = dn.total();
    if total == 0 {
        return Err(Error::invalid("effective offspring of an all-zero degree sequence"));
    }
    let max = dn.max_degree();
    let mut mass = vec![0usize; max + 1];
    for &d in dn.degrees() {
        mass[d] += d;
    }
    let mut support = Vec::new();
    let mut probabilities = Vec::new();
    for (d, &m) in mass.iter().enumerate().skip(1) {
        if m > 0 {
            support.push(d - 1);
            probabilities.push(m as f64 / total as f64);
        }
    }
    Ok(OffspringDistribution {
        support,
        probabilities,
    })
}

/// Removes the `⌈2√n⌉` smallest entries (multiset difference).
pub fn truncated_sequence(dn: &DegreeSequence) -> Result<DegreeSequence> {
    let n = dn.len();
    let remove = (2.0 * (n as f64).sqrt()).ceil() as usize;
    if remove >= n {
        return Err(Error::invalid(format!(
            "truncation removes {remove} of {n} entries; need more vertices"
        )));
    }
    let mut d = dn.degrees().to_vec();
    d.sort_unstable();
    DegreeSequence::new(d.split_off(remove))
}
