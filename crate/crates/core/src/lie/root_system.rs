use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use malachite_base::num::basic::traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{q, Integer, Natural, Q};
use crate::error::{Error, Result};
use crate::sparse::inverse;

/// Weight in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, node: usize) -> Self {
        let mut w = vec![0; rank];
        w[node - 1] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| k * a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Comma-separated integers, optionally in brackets: `0,0,0,0,0,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        if t.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Invalid(format!("bad weight coordinate {x:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

/// Cartan matrix with `entries[i][j] = <alpha_j, alpha_i^vee>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    /// Dynkin label such as `E7`, when built from one.
    label: Option<String>,
}

impl CartanMatrix {
    /// Validates the generalized-Cartan-matrix axioms; finite type is checked
    /// when the root system is generated.
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::NotFiniteType("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotFiniteType("matrix is not square".into()));
            }
            if row[i] != 2 {
                return Err(Error::NotFiniteType(format!("diagonal entry {i} is not 2")));
            }
            for (j, &a) in row.iter().enumerate() {
                if i != j && a > 0 {
                    return Err(Error::NotFiniteType(format!(
                        "positive off-diagonal ({i},{j})"
                    )));
                }
                if (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::NotFiniteType(format!(
                        "zero pattern not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self {
            entries,
            label: None,
        })
    }

    /// Cartan matrix of a simple Lie algebra from a Dynkin label (`A1`, `E7`, ...),
    /// Bourbaki numbering.
    pub fn from_dynkin(label: &str) -> Result<Self> {
        let label = label.trim();
        let bad = || Error::UnknownType(label.to_string());
        let mut chars = label.chars();
        let kind = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i - 1][j - 1] = -1;
            a[j - 1][i - 1] = -1;
        };
        match (kind, n) {
            ('A', 1..) => (1..n).for_each(|i| link(i, i + 1)),
            ('B', 2..) | ('C', 2..) => (1..n).for_each(|i| link(i, i + 1)),
            ('D', 4..) => {
                (1..n - 1).for_each(|i| link(i, i + 1));
                link(n - 2, n);
            }
            ('E', 6..=8) => {
                link(1, 3);
                link(2, 4);
                (3..n).for_each(|i| link(i, i + 1));
            }
            ('F', 4) => (1..4).for_each(|i| link(i, i + 1)),
            ('G', 2) => link(1, 2),
            _ => return Err(bad()),
        }
        match kind {
            // alpha_n short
            'B' => a[n - 1][n - 2] = -2,
            // alpha_n long
            'C' => a[n - 2][n - 1] = -2,
            'F' => a[2][1] = -2,
            'G' => a[0][1] = -3,
            _ => {}
        }
        let mut m = Self::new(a)?;
        m.label = Some(format!("{kind}{n}"));
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Principal submatrix on the given (0-based) nodes.
    pub fn submatrix(&self, nodes: &[usize]) -> Result<Self> {
        let entries = nodes
            .iter()
            .map(|&i| nodes.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        Self::new(entries)
    }

    /// Integers `d_i = (alpha_i, alpha_i)/2` with `d_i a_ij = d_j a_ji`, short roots 1.
    fn symmetrizer(&self) -> Result<Vec<i64>> {
        let n = self.rank();
        let mut d: Vec<Option<Q>> = vec![None; n];
        d[0] = Some(Q::ONE);
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || self.entries[i][j] == 0 {
                    continue;
                }
                let dj = d[i].clone().unwrap() * Q::from(self.entries[i][j])
                    / Q::from(self.entries[j][i]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if *x != dj => {
                        return Err(Error::NotFiniteType("not symmetrizable".into()))
                    }
                    _ => {}
                }
            }
        }
        let d: Vec<Q> = d
            .into_iter()
            .map(|x| {
                x.ok_or_else(|| Error::NotFiniteType("Dynkin diagram is not connected".into()))
            })
            .collect::<Result<_>>()?;
        let min = d.iter().min().unwrap().clone();
        let scaled: Vec<Q> = d.iter().map(|x| x / &min).collect();
        let lcm = crate::arith::lcm_denominators(&scaled);
        scaled
            .iter()
            .map(|x| {
                crate::arith::to_i64(&(x * Q::from(lcm.clone())))
                    .ok_or_else(|| Error::NotFiniteType("symmetrizer overflow".into()))
            })
            .collect()
    }
}

/// Roots, positive roots, rho and the bilinear-form data of a simple Lie algebra.
///
/// Roots are integer vectors in simple-root coordinates; weights live in the
/// fundamental-weight basis. Positive roots are ordered by height, then
/// lexicographically; `roots()` lists the positive roots followed by their
/// negatives in the same order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanMatrix,
    sym: Vec<i64>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    cartan_inv: Vec<Vec<Q>>,
    rho: Weight,
}

/// Upper bound on positive roots of any finite-type simple algebra of rank <= 8
/// is 120; anything above this cap signals an infinite root system.
const ROOT_CAP: usize = 5000;

pub fn generate_roots(cartan: &CartanMatrix) -> Result<RootSystem> {
    let n = cartan.rank();
    let sym = cartan.symmetrizer()?;
    // positive definiteness of the symmetrized matrix (Sylvester)
    let symmetrized: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Q::from(sym[i] * cartan.entry(i, j)))
                .collect()
        })
        .collect();
    for k in 1..=n {
        let minor: Vec<Vec<Q>> = symmetrized[..k].iter().map(|r| r[..k].to_vec()).collect();
        if determinant(&minor) <= Q::ZERO {
            return Err(Error::NotFiniteType(format!(
                "leading principal minor {k} of the symmetrized matrix is not positive"
            )));
        }
    }
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut positive = simple.clone();
    let mut known: HashMap<Vec<i64>, usize> = positive
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, r)| (r, i))
        .collect();
    let mut level = simple;
    while !level.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &level {
            for i in 0..n {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains_key(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..n).map(|j| cartan.entry(i, j) * beta[j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains_key(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        for r in &next {
            known.insert(r.clone(), positive.len());
            positive.push(r.clone());
        }
        if positive.len() > ROOT_CAP {
            return Err(Error::NotFiniteType("root system does not close".into()));
        }
        level = next;
    }
    positive.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let mut index = HashMap::new();
    for (i, r) in positive.iter().enumerate() {
        index.insert(r.clone(), i);
    }
    let np = positive.len();
    for (i, r) in positive.iter().enumerate() {
        index.insert(r.iter().map(|x| -x).collect(), np + i);
    }
    let a_q: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| Q::from(cartan.entry(i, j))).collect())
        .collect();
    let cartan_inv = inverse(&a_q).ok_or_else(|| Error::NotFiniteType("singular".into()))?;
    Ok(RootSystem {
        cartan: cartan.clone(),
        sym,
        positive,
        index,
        cartan_inv,
        rho: Weight(vec![1; n]),
    })
}

fn determinant(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Q::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != Q::ZERO) else {
            return Q::ZERO;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            if a[r][c] != Q::ZERO {
                let f = &a[r][c] / &a[c][c];
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
    }
    det
}

impl RootSystem {
    pub fn from_dynkin(label: &str) -> Result<Self> {
        generate_roots(&CartanMatrix::from_dynkin(label)?)
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn label(&self) -> String {
        self.cartan
            .label()
            .map(str::to_string)
            .unwrap_or_else(|| format!("rank{}", self.rank()))
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    pub fn dim(&self) -> usize {
        self.num_roots() + self.rank()
    }

    /// Root `k` in the ordering positive roots then negatives.
    pub fn root(&self, k: usize) -> Vec<i64> {
        let np = self.positive.len();
        if k < np {
            self.positive[k].clone()
        } else {
            self.positive[k - np].iter().map(|x| -x).collect()
        }
    }

    pub fn roots(&self) -> Vec<Vec<i64>> {
        (0..self.num_roots()).map(|k| self.root(k)).collect()
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.index.contains_key(coords)
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Index of the negative of root `k`.
    pub fn negate_index(&self, k: usize) -> usize {
        let np = self.positive.len();
        if k < np {
            k + np
        } else {
            k - np
        }
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive.last().unwrap()
    }

    /// `(alpha_i, alpha_i)/2`, normalised so short roots give 1.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.sym
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let n = self.rank();
        Weight(
            (0..n)
                .map(|i| (0..n).map(|j| self.cartan.entry(i, j) * root[j]).sum())
                .collect(),
        )
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan.entry(k, i)).collect())
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root_coords(&self, w: &Weight) -> Vec<Q> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| w.0[j] != 0)
                    .map(|j| &self.cartan_inv[i][j] * Q::from(w.0[j]))
                    .sum()
            })
            .collect()
    }

    /// `Some(c)` if `w` is a nonnegative integer combination of simple roots.
    pub fn as_nonneg_root_combination(&self, w: &Weight) -> Option<Vec<i64>> {
        self.weight_to_root_coords(w)
            .iter()
            .map(|c| crate::arith::to_i64(c).filter(|&x| x >= 0))
            .collect()
    }

    /// `(alpha, beta)` for roots in simple-root coordinates.
    pub fn inner_roots(&self, a: &[i64], b: &[i64]) -> Q {
        let n = self.rank();
        let mut acc = 0i64;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                acc += a[i] * b[j] * self.sym[i] * self.cartan.entry(i, j);
            }
        }
        Q::from(acc)
    }

    /// `(lambda, alpha)` for a weight and a root.
    pub fn inner_weight_root(&self, w: &Weight, root: &[i64]) -> Q {
        Q::from(
            (0..self.rank())
                .map(|j| root[j] * w.0[j] * self.sym[j])
                .sum::<i64>(),
        )
    }

    /// `(lambda, mu)` for two weights: `(omega_i, omega_k) = (A^-1)_{ki} d_k`.
    pub fn inner_weights(&self, a: &Weight, b: &Weight) -> Q {
        let n = self.rank();
        let mut acc = Q::ZERO;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for k in 0..n {
                if b.0[k] == 0 {
                    continue;
                }
                acc += &self.cartan_inv[k][i] * Q::from(self.sym[k] * a.0[i] * b.0[k]);
            }
        }
        acc
    }

    /// `<lambda, alpha^vee>`.
    pub fn coroot_pairing(&self, w: &Weight, root: &[i64]) -> i64 {
        let num = self.inner_weight_root(w, root) * q(2);
        let den = self.inner_roots(root, root);
        crate::arith::to_i64(&(num / den)).expect("coroot pairing of an integral weight")
    }

    /// Simple reflection `s_i` (0-based) on a weight.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i];
        if c == 0 {
            return w.clone();
        }
        Weight(
            (0..self.rank())
                .map(|k| w.0[k] - c * self.cartan.entry(k, i))
                .collect(),
        )
    }

    /// Dominant Weyl conjugate and the length of the element used.
    pub fn dominant_conjugate(&self, w: &Weight) -> (Weight, usize) {
        let mut cur = w.clone();
        let mut len = 0;
        while let Some(i) = cur.0.iter().position(|&x| x < 0) {
            cur = self.reflect(&cur, i);
            len += 1;
        }
        (cur, len)
    }

    /// Orbit of a weight under the Weyl group.
    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let start = self.dominant_conjugate(w).0;
        let mut seen: std::collections::HashSet<Weight> = std::collections::HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            for i in 0..self.rank() {
                if x.0[i] > 0 {
                    let y = self.reflect(&x, i);
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
            out.push(x);
        }
        out.sort();
        out
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, hw: &Weight) -> Result<u64> {
        if !hw.is_dominant() {
            return Err(Error::NotDominant(hw.clone()));
        }
        let shifted = hw.add(&self.rho);
        let mut num = Q::ONE;
        let mut den = Q::ONE;
        for a in &self.positive {
            num *= self.inner_weight_root(&shifted, a);
            den *= self.inner_weight_root(&self.rho, a);
        }
        let d = num / den;
        if d.to_denominator() != Natural::ONE {
            return Err(Error::Inconsistent(format!(
                "non-integral Weyl dimension for {hw}"
            )));
        }
        u64::try_from(&Integer::from(d.to_numerator())).map_err(|_| Error::Overflow(hw.to_string()))
    }

    /// Resolves `lambda + rho`: `None` if it lies on a wall, otherwise the
    /// length `l` of the Weyl element and the dominant weight `w(lambda+rho)-rho`.
    pub fn rho_shift_resolve(&self, w: &Weight) -> Option<(usize, Weight)> {
        let (dom, len) = self.dominant_conjugate(&w.add(&self.rho));
        if dom.0.contains(&0) {
            None
        } else {
            Some((len, dom.sub(&self.rho)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_classical() {
        for (label, n) in [
            ("A1", 2),
            ("A2", 6),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            let rs = RootSystem::from_dynkin(label).unwrap();
            assert_eq!(rs.num_roots(), n, "{label}");
        }
    }

    #[test]
    fn e7_dimension() {
        let rs = RootSystem::from_dynkin("E7").unwrap();
        assert_eq!(rs.dim(), 133);
        assert_eq!(rs.highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(
            rs.root_to_weight(rs.highest_root()),
            Weight::fundamental(7, 1)
        );
    }

    #[test]
    fn non_finite_rejected() {
        // affine A1
        let m = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(generate_roots(&m), Err(Error::NotFiniteType(_))));
        // hyperbolic rank 2
        let m = CartanMatrix::new(vec![vec![2, -3], vec![-2, 2]]).unwrap();
        assert!(generate_roots(&m).is_err());
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::from_dynkin("X3").is_err());
        assert!(CartanMatrix::from_dynkin("E9").is_err());
    }

    #[test]
    fn roots_closed_under_negation_and_rho_pairs_to_one() {
        let rs = RootSystem::from_dynkin("E7").unwrap();
        for r in rs.roots() {
            let neg: Vec<i64> = r.iter().map(|x| -x).collect();
            assert!(rs.is_root(&neg));
        }
        for i in 0..7 {
            let mut a = vec![0; 7];
            a[i] = 1;
            assert_eq!(rs.coroot_pairing(rs.rho(), &a), 1);
        }
        // rho is half the sum of positive roots
        let mut sum = vec![0i64; 7];
        for r in rs.positive_roots() {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        assert_eq!(rs.root_to_weight(&sum), rs.rho().scale(2));
    }

    #[test]
    fn weight_root_conversion_round_trip() {
        let rs = RootSystem::from_dynkin("G2").unwrap();
        for r in rs.roots() {
            let w = rs.root_to_weight(&r);
            let back: Vec<Q> = rs.weight_to_root_coords(&w);
            assert_eq!(back, r.iter().map(|&x| Q::from(x)).collect::<Vec<_>>());
        }
        let rs = RootSystem::from_dynkin("E7").unwrap();
        // omega_7 = (2,3,4,6,5,4,3)/2 in simple roots
        let c = rs.weight_to_root_coords(&Weight::fundamental(7, 7));
        assert_eq!(c[6], crate::arith::frac(3, 2));
        assert_eq!(
            rs.inner_weights(&Weight::fundamental(7, 7), &Weight::fundamental(7, 7)),
            crate::arith::frac(3, 2)
        );
    }

    #[test]
    fn weyl_dimensions() {
        let e7 = RootSystem::from_dynkin("E7").unwrap();
        assert_eq!(e7.weyl_dimension(&Weight::fundamental(7, 7)).unwrap(), 56);
        assert_eq!(e7.weyl_dimension(&Weight::fundamental(7, 1)).unwrap(), 133);
        let e6 = RootSystem::from_dynkin("E6").unwrap();
        assert_eq!(e6.weyl_dimension(&Weight::fundamental(6, 1)).unwrap(), 27);
        let a1 = RootSystem::from_dynkin("A1").unwrap();
        assert_eq!(a1.weyl_dimension(&Weight(vec![5])).unwrap(), 6);
        assert!(matches!(
            a1.weyl_dimension(&Weight(vec![-1])),
            Err(Error::NotDominant(_))
        ));
        let b3 = RootSystem::from_dynkin("B3").unwrap();
        assert_eq!(b3.weyl_dimension(&Weight(vec![0, 0, 1])).unwrap(), 8);
        let g2 = RootSystem::from_dynkin("G2").unwrap();
        assert_eq!(g2.weyl_dimension(&Weight(vec![1, 0])).unwrap(), 7);
        assert_eq!(g2.weyl_dimension(&Weight(vec![0, 1])).unwrap(), 14);
    }

    #[test]
    fn rho_shift_on_p1() {
        let a1 = RootSystem::from_dynkin("A1").unwrap();
        assert_eq!(a1.rho_shift_resolve(&Weight(vec![-1])), None);
        for k in 0..5 {
            assert_eq!(
                a1.rho_shift_resolve(&Weight(vec![k])),
                Some((0, Weight(vec![k])))
            );
        }
        assert_eq!(
            a1.rho_shift_resolve(&Weight(vec![-2])),
            Some((1, Weight(vec![0])))
        );
        // Serre duality: H^1(O(-k)) has the dimension of H^0(O(k-2))
        for k in 2..8 {
            let (l, w) = a1.rho_shift_resolve(&Weight(vec![-k])).unwrap();
            assert_eq!(l, 1);
            assert_eq!(a1.weyl_dimension(&w).unwrap(), (k - 1) as u64);
        }
    }

    #[test]
    fn weight_parsing() {
        let w: Weight = "0,0,0,0,0,0,1".parse().unwrap();
        assert_eq!(w, Weight::fundamental(7, 7));
        assert_eq!("[1,-2]".parse::<Weight>().unwrap(), Weight(vec![1, -2]));
        assert!("1,x".parse::<Weight>().is_err());
        assert_eq!(w.to_string(), "[0,0,0,0,0,0,1]");
    }

    #[test]
    fn weyl_orbit_of_minuscule() {
        let e7 = RootSystem::from_dynkin("E7").unwrap();
        assert_eq!(e7.weyl_orbit(&Weight::fundamental(7, 7)).len(), 56);
        assert_eq!(e7.weyl_orbit(&Weight::fundamental(7, 1)).len(), 126);
    }
}
