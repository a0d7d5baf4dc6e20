//! Tensor products (Klimyk) and symmetric/exterior powers (character
//! symmetrisation followed by peeling off highest weights).

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::weights::{dominant_multiplicities, weight_list, weight_multiplicities};
use super::{RootSystem, Weight};
use crate::arith::Q;
use crate::error::{Error, Result};

/// Multiset of dominant highest weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    terms: BTreeMap<Weight, u64>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(hw: Weight) -> Self {
        let mut d = Self::new();
        d.add(hw, 1);
        d
    }

    pub fn add(&mut self, hw: Weight, mult: u64) {
        if mult > 0 {
            *self.terms.entry(hw).or_insert(0) += mult;
        }
    }

    pub fn set(&mut self, hw: Weight, mult: u64) {
        if mult == 0 {
            self.terms.remove(&hw);
        } else {
            self.terms.insert(hw, mult);
        }
    }

    pub fn merge(&mut self, other: &Decomposition) {
        for (w, m) in &other.terms {
            self.add(w.clone(), *m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Weight, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, hw: &Weight) -> u64 {
        self.terms.get(hw).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of irreducible summands counted with multiplicity.
    pub fn num_summands(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn dimension(&self, rs: &RootSystem) -> Result<u64> {
        let mut total = 0u64;
        for (w, m) in &self.terms {
            total = total
                .checked_add(rs.weyl_dimension(w)? * m)
                .ok_or_else(|| Error::Overflow("decomposition dimension".into()))?;
        }
        Ok(total)
    }
}

fn height(rs: &RootSystem, w: &Weight) -> Q {
    rs.weight_to_root_coords(w).into_iter().sum()
}

/// Decomposes a (Weyl-invariant) character into irreducibles. Only the
/// dominant part of `character` is read.
pub fn decompose_character(
    rs: &RootSystem,
    character: &HashMap<Weight, i64>,
) -> Result<Decomposition> {
    let mut rest: BTreeMap<Weight, i64> = character
        .iter()
        .filter(|(w, m)| w.is_dominant() && **m != 0)
        .map(|(w, m)| (w.clone(), *m))
        .collect();
    let mut out = Decomposition::new();
    while !rest.is_empty() {
        let top = rest
            .keys()
            .max_by(|a, b| height(rs, a).cmp(&height(rs, b)).then_with(|| a.cmp(b)))
            .unwrap()
            .clone();
        let m = rest[&top];
        if m < 0 {
            return Err(Error::Inconsistent(format!(
                "character is not effective: coefficient {m} at {top}"
            )));
        }
        for (w, k) in dominant_multiplicities(rs, &top)? {
            let e = rest.entry(w.clone()).or_insert(0);
            *e -= m * k as i64;
            if *e == 0 {
                rest.remove(&w);
            }
        }
        out.add(top, m as u64);
    }
    Ok(out)
}

/// `V(hw1) (x) V(hw2)` by Klimyk's formula.
pub fn tensor_decompose(rs: &RootSystem, hw1: &Weight, hw2: &Weight) -> Result<Decomposition> {
    for hw in [hw1, hw2] {
        if !hw.is_dominant() {
            return Err(Error::NotDominant(hw.clone()));
        }
    }
    // run over the weights of the smaller factor
    let (big, small) = if rs.weyl_dimension(hw1)? >= rs.weyl_dimension(hw2)? {
        (hw1, hw2)
    } else {
        (hw2, hw1)
    };
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, m) in weight_multiplicities(rs, small)? {
        if let Some((len, dom)) = rs.rho_shift_resolve(&big.add(&nu)) {
            let sign = if len % 2 == 0 { 1 } else { -1 };
            *acc.entry(dom).or_insert(0) += sign * m as i64;
        }
    }
    let mut out = Decomposition::new();
    for (w, m) in acc {
        if m < 0 {
            return Err(Error::Inconsistent(format!(
                "negative Klimyk coefficient at {w}"
            )));
        }
        out.add(w, m as u64);
    }
    Ok(out)
}

/// Character of the k-th symmetric (or exterior) power of a module given by
/// its weight list; only weights accepted by `keep` are recorded.
pub fn power_character(
    weights: &[Weight],
    k: usize,
    symmetric: bool,
    keep: impl Fn(&Weight) -> bool,
) -> HashMap<Weight, i64> {
    let mut out: HashMap<Weight, i64> = HashMap::new();
    let n = weights.len();
    if k == 0 {
        if let Some(w) = weights.first() {
            out.insert(Weight::zero(w.rank()), 1);
        }
        return out;
    }
    let mut idx = vec![0usize; k];
    if !symmetric {
        if k > n {
            return out;
        }
        for (i, x) in idx.iter_mut().enumerate() {
            *x = i;
        }
    }
    loop {
        let mut w = weights[idx[0]].clone();
        for &i in &idx[1..] {
            w = w.add(&weights[i]);
        }
        if keep(&w) {
            *out.entry(w).or_insert(0) += 1;
        }
        // next multiset / subset in lexicographic order
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            let limit = if symmetric { n - 1 } else { n - k + pos };
            if idx[pos] < limit {
                idx[pos] += 1;
                let base = idx[pos];
                for (off, j) in (pos + 1..k).enumerate() {
                    idx[j] = if symmetric { base } else { base + off + 1 };
                }
                break;
            }
        }
    }
}

pub fn symmetric_power_decompose(rs: &RootSystem, hw: &Weight, k: usize) -> Result<Decomposition> {
    if !(1..=3).contains(&k) {
        return Err(Error::Invalid(format!(
            "symmetric power {k} not supported (1..=3)"
        )));
    }
    let ws = weight_list(rs, hw)?;
    decompose_character(rs, &power_character(&ws, k, true, Weight::is_dominant))
}

pub fn exterior_power_decompose(rs: &RootSystem, hw: &Weight, k: usize) -> Result<Decomposition> {
    let ws = weight_list(rs, hw)?;
    decompose_character(rs, &power_character(&ws, k, false, Weight::is_dominant))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn clebsch_gordan() {
        let rs = RootSystem::from_dynkin("A1").unwrap();
        let d = tensor_decompose(&rs, &Weight(vec![1]), &Weight(vec![1])).unwrap();
        assert_eq!(d.terms().len(), 2);
        assert_eq!(d.multiplicity(&Weight(vec![2])), 1);
        assert_eq!(d.multiplicity(&Weight(vec![0])), 1);
        let d = tensor_decompose(&rs, &Weight(vec![3]), &Weight(vec![2])).unwrap();
        let hws: Vec<i64> = d.terms().keys().map(|w| w.0[0]).collect();
        assert_eq!(hws, vec![1, 3, 5]);
    }

    #[test]
    fn trivial_factor() {
        let rs = RootSystem::from_dynkin("E6").unwrap();
        let hw = Weight(vec![1, 0, 0, 0, 0, 1]);
        let d = tensor_decompose(&rs, &hw, &Weight::zero(6)).unwrap();
        assert_eq!(d, Decomposition::single(hw));
    }

    #[test]
    fn e6_27_squared() {
        let rs = RootSystem::from_dynkin("E6").unwrap();
        let w1 = Weight::fundamental(6, 1);
        let d = tensor_decompose(&rs, &w1, &w1).unwrap();
        assert_eq!(d.dimension(&rs).unwrap(), 729);
        // each summand's weight system must account for the product character
        let mut total: u64 = 0;
        for (hw, m) in d.terms() {
            total += m * weight_multiplicities(&rs, hw)
                .unwrap()
                .values()
                .sum::<u64>();
        }
        assert_eq!(total, 729);
        assert_eq!(d.num_summands(), 3);
        let s2 = symmetric_power_decompose(&rs, &w1, 2).unwrap();
        let a2 = exterior_power_decompose(&rs, &w1, 2).unwrap();
        assert_eq!(s2.num_summands(), 2);
        assert_eq!(s2.dimension(&rs).unwrap(), 378);
        assert_eq!(a2.dimension(&rs).unwrap(), 351);
        let mut both = s2.clone();
        both.merge(&a2);
        assert_eq!(both, d);
        let s3 = symmetric_power_decompose(&rs, &w1, 3).unwrap();
        assert_eq!(s3.num_summands(), 3);
        assert_eq!(s3.dimension(&rs).unwrap(), binom(29, 3));
    }

    #[test]
    fn sl2_symmetric_square_of_doublet() {
        let rs = RootSystem::from_dynkin("A1").unwrap();
        let d = symmetric_power_decompose(&rs, &Weight(vec![1]), 2).unwrap();
        assert_eq!(d, Decomposition::single(Weight(vec![2])));
        assert!(symmetric_power_decompose(&rs, &Weight(vec![1]), 4).is_err());
    }

    #[test]
    fn power_character_counts() {
        let ws: Vec<Weight> = (0..5).map(|i| Weight(vec![i])).collect();
        let s: i64 = power_character(&ws, 3, true, |_| true).values().sum();
        assert_eq!(s as u64, binom(7, 3));
        let a: i64 = power_character(&ws, 3, false, |_| true).values().sum();
        assert_eq!(a as u64, binom(5, 3));
    }
}
