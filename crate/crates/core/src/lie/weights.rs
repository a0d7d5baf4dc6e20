//! Weight systems via Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap};

use malachite_base::num::basic::traits::Zero;

use super::{RootSystem, Weight};
use crate::arith::{to_i64, Q};
use crate::error::{Error, Result};

/// Multiplicities of the dominant weights of the irreducible module `V(hw)`.
pub fn dominant_multiplicities(rs: &RootSystem, hw: &Weight) -> Result<BTreeMap<Weight, u64>> {
    if !hw.is_dominant() {
        return Err(Error::NotDominant(hw.clone()));
    }
    // dominant weights below hw, reached by subtracting positive roots
    let pos_weights: Vec<Weight> = rs
        .positive_roots()
        .iter()
        .map(|r| rs.root_to_weight(r))
        .collect();
    let mut depth: HashMap<Weight, i64> = HashMap::new();
    depth.insert(hw.clone(), 0);
    let mut frontier = vec![hw.clone()];
    while let Some(mu) = frontier.pop() {
        for a in &pos_weights {
            let nu = mu.sub(a);
            if nu.is_dominant() && !depth.contains_key(&nu) {
                let h = rs
                    .weight_to_root_coords(&hw.sub(&nu))
                    .iter()
                    .map(|c| to_i64(c).expect("integral depth"))
                    .sum();
                depth.insert(nu.clone(), h);
                frontier.push(nu);
            }
        }
    }
    let mut order: Vec<(i64, Weight)> = depth.into_iter().map(|(w, h)| (h, w)).collect();
    order.sort();

    let shifted_norm = |w: &Weight| {
        let s = w.add(rs.rho());
        rs.inner_weights(&s, &s)
    };
    let top = shifted_norm(hw);
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (h, mu) in order {
        if h == 0 {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc = Q::ZERO;
        for (a, aw) in rs.positive_roots().iter().zip(&pos_weights) {
            let mut nu = mu.add(aw);
            loop {
                let m = *mult.get(&rs.dominant_conjugate(&nu).0).unwrap_or(&0);
                if m == 0 {
                    break;
                }
                acc += Q::from(m) * rs.inner_weight_root(&nu, a);
                nu = nu.add(aw);
            }
        }
        let m = Q::from(2) * acc / (&top - shifted_norm(&mu));
        let m = to_i64(&m)
            .filter(|&x| x >= 0)
            .ok_or_else(|| Error::Inconsistent(format!("Freudenthal produced {m} at {mu}")))?;
        if m > 0 {
            mult.insert(mu, m as u64);
        }
    }
    Ok(mult)
}

/// Full weight system of `V(hw)` with multiplicities.
pub fn weight_multiplicities(rs: &RootSystem, hw: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let dom = dominant_multiplicities(rs, hw)?;
    let mut out = BTreeMap::new();
    for (w, m) in dom {
        for x in rs.weyl_orbit(&w) {
            out.insert(x, m);
        }
    }
    Ok(out)
}

/// Weights of `V(hw)` listed with repetition, in a deterministic order.
pub fn weight_list(rs: &RootSystem, hw: &Weight) -> Result<Vec<Weight>> {
    Ok(weight_multiplicities(rs, hw)?
        .into_iter()
        .flat_map(|(w, m)| std::iter::repeat_n(w, m as usize))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_string() {
        let rs = RootSystem::from_dynkin("A1").unwrap();
        let m = weight_multiplicities(&rs, &Weight(vec![3])).unwrap();
        let expect: BTreeMap<Weight, u64> = [3, 1, -1, -3]
            .iter()
            .map(|&k| (Weight(vec![k]), 1))
            .collect();
        assert_eq!(m, expect);
    }

    #[test]
    fn e7_minuscule_and_adjoint() {
        let rs = RootSystem::from_dynkin("E7").unwrap();
        let m = weight_multiplicities(&rs, &Weight::fundamental(7, 7)).unwrap();
        assert_eq!(m.len(), 56);
        assert!(m.values().all(|&x| x == 1));
        let adj = weight_multiplicities(&rs, &Weight::fundamental(7, 1)).unwrap();
        assert_eq!(adj[&Weight::zero(7)], 7);
        assert_eq!(adj.values().sum::<u64>(), 133);
    }

    #[test]
    fn multiplicities_sum_to_weyl_dimension() {
        for (label, hws) in [
            ("A2", vec![vec![1, 1], vec![2, 1], vec![3, 0]]),
            ("B2", vec![vec![1, 1], vec![0, 2]]),
            ("G2", vec![vec![1, 1], vec![2, 0]]),
            ("E6", vec![vec![1, 0, 0, 0, 0, 1], vec![0, 1, 0, 0, 0, 0]]),
            ("D4", vec![vec![1, 0, 1, 0]]),
        ] {
            let rs = RootSystem::from_dynkin(label).unwrap();
            for hw in hws {
                let hw = Weight(hw);
                let total: u64 = weight_multiplicities(&rs, &hw).unwrap().values().sum();
                assert_eq!(total, rs.weyl_dimension(&hw).unwrap(), "{label} {hw}");
            }
        }
    }

    #[test]
    fn non_dominant_rejected() {
        let rs = RootSystem::from_dynkin("A2").unwrap();
        assert!(dominant_multiplicities(&rs, &Weight(vec![1, -1])).is_err());
    }
}
