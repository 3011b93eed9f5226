use crate::Graph;

/// Adjacency matrix with ones on the diagonal, rows and columns in a given node order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedAdjacency {
    bits: Vec<Vec<bool>>,
}

impl AugmentedAdjacency {
    /// `order[i]` is the node at row and column `i`.
    pub fn new(g: &Graph, order: &[usize]) -> Self {
        let bits = order.iter().map(|&u| order.iter().map(|&v| u == v || g.has_edge(u, v)).collect()).collect();
        AugmentedAdjacency { bits }
    }

    pub fn from_rows(bits: Vec<Vec<bool>>) -> Self {
        AugmentedAdjacency { bits }
    }

    pub fn n(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i][j]
    }

    /// Largest row `i` with a one in column `j` followed (circularly) by a zero; `None`
    /// for an all-ones column.
    pub fn last_index(&self, j: usize) -> Option<usize> {
        let n = self.n();
        (0..n).rev().find(|&i| self.bits[i][j] && !self.bits[(i + 1) % n][j])
    }

    /// The matrix whose row and column `p` are row and column `sigma[p]` of this one.
    pub fn apply_perm(&self, sigma: &[usize]) -> Self {
        let bits = sigma.iter().map(|&a| sigma.iter().map(|&b| self.bits[a][b]).collect()).collect();
        AugmentedAdjacency { bits }
    }

    /// The rotation putting row `k` first.
    pub fn shift(n: usize, k: usize) -> Vec<usize> {
        (0..n).map(|p| (p + k) % n).collect()
    }

    /// The reflection putting row `k` first and row `k - 1` second.
    pub fn reflect(n: usize, k: usize) -> Vec<usize> {
        (0..n).map(|p| (k + n - p) % n).collect()
    }

    /// The ones of column `j` form one circular run.
    fn column_is_circular(&self, j: usize) -> bool {
        let n = self.n();
        let ends = (0..n).filter(|&i| self.bits[i][j] && !self.bits[(i + 1) % n][j]).count();
        ends <= 1
    }

    pub fn has_circular_ones(&self) -> bool {
        (0..self.n()).all(|j| self.column_is_circular(j))
    }

    /// Circular ones, and after every rotation or reflection the run of column 0 ends no
    /// later than the run of column 1 (all-ones columns are exempt).
    pub fn has_circularly_compatible_ones(&self) -> bool {
        let n = self.n();
        if !self.has_circular_ones() {
            return false;
        }
        if n < 2 {
            return true;
        }
        (0..n).all(|k| {
            [Self::shift(n, k), Self::reflect(n, k)].iter().all(|sigma| {
                let m = self.apply_perm(sigma);
                match (m.last_index(0), m.last_index(1)) {
                    (Some(a), Some(b)) => a <= b,
                    _ => true,
                }
            })
        })
    }

    /// Length of the run of ones going down column `j` from the diagonal (circularly).
    pub fn down_run(&self, j: usize) -> usize {
        let n = self.n();
        (0..n).take_while(|&d| self.bits[(j + d) % n][j]).count()
    }

    /// Every one is covered by a column run going down from the diagonal or a row run
    /// going right from the diagonal.
    pub fn has_quasi_circular_ones(&self) -> bool {
        let n = self.n();
        let runs: Vec<usize> = (0..n).map(|j| self.down_run(j)).collect();
        let right_run = |i: usize| (0..n).take_while(|&d| self.bits[i][(i + d) % n]).count();
        let row_runs: Vec<usize> = (0..n).map(right_run).collect();
        (0..n).all(|i| (0..n).all(|j| !self.bits[i][j] || (i + n - j) % n < runs[j] || (j + n - i) % n < row_runs[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        Graph::new(n, &e).unwrap()
    }

    #[test]
    fn last_index_is_circular_run_end() {
        let m = AugmentedAdjacency::new(&cycle(5), &[0, 1, 2, 3, 4]);
        // Column 0 has ones at rows 4, 0, 1.
        assert_eq!(m.last_index(0), Some(1));
        assert_eq!(m.last_index(4), Some(0));
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(AugmentedAdjacency::new(&k3, &[0, 1, 2]).last_index(0), None);
    }

    #[test]
    fn dihedral_maps() {
        assert_eq!(AugmentedAdjacency::shift(4, 1), vec![1, 2, 3, 0]);
        assert_eq!(AugmentedAdjacency::reflect(4, 1), vec![1, 0, 3, 2]);
        let m = AugmentedAdjacency::new(&cycle(5), &[0, 1, 2, 3, 4]);
        assert_eq!(m.apply_perm(&AugmentedAdjacency::shift(5, 0)), m);
    }

    #[test]
    fn cycle_in_order_is_compatible_and_quasi_circular() {
        let m = AugmentedAdjacency::new(&cycle(6), &[0, 1, 2, 3, 4, 5]);
        assert!(m.has_circularly_compatible_ones());
        assert!(m.has_quasi_circular_ones());
        let scrambled = AugmentedAdjacency::new(&cycle(6), &[0, 2, 1, 3, 4, 5]);
        assert!(!scrambled.has_circular_ones());
    }
}
