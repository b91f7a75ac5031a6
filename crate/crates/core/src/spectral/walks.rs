//! Exact walk counts from integer powers of the adjacency matrix.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest exponent accepted by [`matrix_power_entry`].
pub const MAX_WALK_EXPONENT: u32 = 32;

/// Dense square matrix of exact walk counts. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkMatrix {
    n: usize,
    data: Vec<i128>,
}

impl WalkMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[(i - 1) * self.n + (j - 1)]
    }

    /// Sum of the diagonal, the closed-walk count `W_m`.
    pub fn trace(&self) -> i128 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// Sum of all entries, the total walk count `N_m`.
    pub fn total(&self) -> i128 {
        self.data.iter().sum()
    }

    /// Row sums, the vector `A^m u`.
    pub fn row_sums(&self) -> Vec<i128> {
        self.data.chunks(self.n).map(|r| r.iter().sum()).collect()
    }

    /// `A * self`, with overflow reported against `exponent`.
    fn left_mul_adjacency(&self, g: &Graph, exponent: u32) -> Result<Self> {
        let n = self.n;
        let mut data = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                if !g.adj0(i, l) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] =
                        data[i * n + j].checked_add(self.data[l * n + j]).ok_or(Error::Overflow(exponent))?;
                }
            }
        }
        Ok(Self { n, data })
    }
}

/// `A^0, A^1, ..., A^max_exp` as exact integer matrices.
pub fn adjacency_powers(g: &Graph, max_exp: u32) -> Result<Vec<WalkMatrix>> {
    let mut out = Vec::with_capacity(max_exp as usize + 1);
    out.push(WalkMatrix::identity(g.n()));
    for m in 1..=max_exp {
        let next = out[m as usize - 1].left_mul_adjacency(g, m)?;
        out.push(next);
    }
    Ok(out)
}

/// `A^m` for a single exponent.
pub fn adjacency_power(g: &Graph, m: u32) -> Result<WalkMatrix> {
    let mut p = WalkMatrix::identity(g.n());
    for e in 1..=m {
        p = p.left_mul_adjacency(g, e)?;
    }
    Ok(p)
}

/// `(A^m)_{ij}`: the number of walks with `m` hops from node `i` to node `j`.
pub fn matrix_power_entry(g: &Graph, m: u32, i: usize, j: usize) -> Result<i128> {
    g.check_node(i)?;
    g.check_node(j)?;
    if m > MAX_WALK_EXPONENT {
        return Err(Error::Domain(format!("walk exponent {m} exceeds {MAX_WALK_EXPONENT}")));
    }
    Ok(adjacency_power(g, m)?.get(i, j))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    #[test]
    fn basic_counts() {
        let p3 = generate(GraphKind::Path(3), 0).unwrap();
        assert_eq!(matrix_power_entry(&p3, 3, 1, 2).unwrap(), 2);
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(matrix_power_entry(&p3, 0, i, j).unwrap(), i128::from(i == j));
            }
        }
        let g = generate(GraphKind::ErdosRenyi { n: 12, p: 0.4 }, 5).unwrap();
        for j in 1..=12 {
            assert_eq!(matrix_power_entry(&g, 2, j, j).unwrap(), g.degree(j) as i128);
        }
        assert!(matrix_power_entry(&p3, 33, 1, 1).is_err());
        assert!(matrix_power_entry(&p3, 1, 4, 1).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let k = generate(GraphKind::Complete(200), 0).unwrap();
        // 199^32 > 2^127
        assert!(matches!(adjacency_power(&k, 32), Err(Error::Overflow(_))));
    }

    #[test]
    fn powers_agree() {
        let c5 = generate(GraphKind::Cycle(5), 0).unwrap();
        let all = adjacency_powers(&c5, 6).unwrap();
        for (m, p) in all.iter().enumerate() {
            assert_eq!(p, &adjacency_power(&c5, m as u32).unwrap());
        }
        // closed walks on C5: W_2 = 2L = 10, W_3 = 0, W_5 = 10 (two directions per start)
        assert_eq!(all[2].trace(), 10);
        assert_eq!(all[3].trace(), 0);
        assert_eq!(all[5].trace(), 10);
        assert_eq!(all[2].total(), 20);
    }
}
