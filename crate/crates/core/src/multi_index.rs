use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HboError, Result};

/// Multi-index `beta = (beta_1, .., beta_d)` with `d <= 3`; unused axes hold zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct MultiIndex([u32; 3]);

impl MultiIndex {
    pub fn new(components: &[u32]) -> Result<Self> {
        if components.len() > 3 {
            return Err(HboError::UnsupportedMultiIndex(components.to_vec()));
        }
        let mut c = [0; 3];
        c[..components.len()].copy_from_slice(components);
        Ok(Self(c))
    }

    pub const fn zero() -> Self {
        Self([0; 3])
    }

    /// `e_axis` (0-based axis).
    pub fn unit(axis: usize) -> Self {
        let mut c = [0; 3];
        c[axis] = 1;
        Self(c)
    }

    /// `m e_axis`.
    pub fn pure(axis: usize, m: u32) -> Self {
        let mut c = [0; 3];
        c[axis] = m;
        Self(c)
    }

    pub fn components(&self) -> [u32; 3] {
        self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|beta|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.order() == 0
    }

    /// Whether at most one axis is active.
    pub fn is_pure(&self) -> bool {
        self.0.iter().filter(|&&c| c > 0).count() <= 1
    }

    /// Errors when a component is set beyond dimension `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.0[dim..].iter().any(|&c| c > 0) {
            Err(HboError::UnsupportedMultiIndex(self.0.to_vec()))
        } else {
            Ok(())
        }
    }

    /// Axes listed with multiplicity, e.g. `(2,1,0) -> [0,0,1]`.
    pub fn axes(&self) -> Vec<usize> {
        (0..3)
            .flat_map(|a| std::iter::repeat_n(a, self.0[a] as usize))
            .collect()
    }

    /// `beta!`.
    pub fn factorial(&self) -> f64 {
        self.0.iter().map(|&c| factorial(c)).product()
    }

    /// `x^beta`.
    pub fn monomial(&self, x: &[f64; 3]) -> f64 {
        (0..3).map(|a| x[a].powi(self.0[a] as i32)).product()
    }

    /// `beta <= self` componentwise.
    pub fn dominates(&self, beta: &MultiIndex) -> bool {
        (0..3).all(|a| beta.0[a] <= self.0[a])
    }

    /// `self - beta`; `None` unless `beta <= self`.
    pub fn checked_sub(&self, beta: &MultiIndex) -> Option<MultiIndex> {
        self.dominates(beta)
            .then(|| Self([self.0[0] - beta.0[0], self.0[1] - beta.0[1], self.0[2] - beta.0[2]]))
    }

    /// `(self choose beta) = prod_a C(self_a, beta_a)`.
    pub fn binomial(&self, beta: &MultiIndex) -> f64 {
        (0..3)
            .map(|a| factorial(self.0[a]) / (factorial(beta.0[a]) * factorial(self.0[a] - beta.0[a])))
            .product()
    }

    /// All `beta <= self`, including zero and `self`.
    pub fn lower_set(&self) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for a in 0..=self.0[0] {
            for b in 0..=self.0[1] {
                for c in 0..=self.0[2] {
                    out.push(Self([a, b, c]));
                }
            }
        }
        out
    }

    /// All multi-indices of the given order in dimension `dim`.
    pub fn of_order(order: u32, dim: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for a in 0..=order {
            for b in 0..=(order - a) {
                let c = order - a - b;
                let idx = Self([a, b, c]);
                if idx.check_dim(dim).is_ok() {
                    out.push(idx);
                }
            }
        }
        out.sort();
        out.reverse();
        out
    }

    /// Compact label such as `100` or `021`, trimmed to `dim` digits.
    pub fn label(&self, dim: usize) -> String {
        self.0[..dim].iter().map(|c| c.to_string()).collect()
    }
}

impl std::ops::Add for MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: MultiIndex) -> MultiIndex {
        Self([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1], self.0[2] + rhs.0[2]])
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_set_and_binomials() {
        let g = MultiIndex::new(&[2, 1]).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.lower_set().len(), 6);
        let b = MultiIndex::new(&[1, 1]).unwrap();
        assert_eq!(g.binomial(&b), 2.0);
        assert_eq!(g.checked_sub(&b), Some(MultiIndex::unit(0)));
        assert_eq!(g.axes(), vec![0, 0, 1]);
        assert!(MultiIndex::new(&[1, 0, 0, 0]).is_err());
        assert!(MultiIndex::unit(2).check_dim(2).is_err());
    }

    #[test]
    fn multi_indices_of_order_two_in_the_plane() {
        let all = MultiIndex::of_order(2, 2);
        assert_eq!(all.len(), 3);
        assert!(all.iter().all(|m| m.order() == 2 && m.get(2) == 0));
    }
}
