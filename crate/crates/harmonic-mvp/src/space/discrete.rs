//! Finite metric measure spaces: a point list, a full pairwise distance
//! table, and one positive mass per point.

use crate::error::{Error, Result};

/// A finite metric measure space.
///
/// The distance table is symmetric with zero diagonal and satisfies the
/// triangle inequality; constructors either verify this (`from_table`, cost
/// O(n^3)) or guarantee it by construction (`from_positions_1d`,
/// `from_points_2d`, `from_edges`). Optional 1-D positions let analytic
/// catalog functions be evaluated at nodes of grid discretizations.
#[derive(Debug, Clone)]
pub struct DiscreteSpace {
    n: usize,
    dist: Vec<f64>,
    masses: Vec<f64>,
    positions: Option<Vec<f64>>,
}

fn validate_masses(masses: &[f64]) -> Result<()> {
    if masses.is_empty() {
        return Err(Error::InvalidInput("discrete space needs at least one point".into()));
    }
    for (i, &m) in masses.iter().enumerate() {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::InvalidInput(format!(
                "mass of node {i} must be positive and finite, got {m}"
            )));
        }
    }
    Ok(())
}

impl DiscreteSpace {
    /// Build from an explicit distance table. Verifies symmetry, zero
    /// diagonal, nonnegativity and the triangle inequality for all triples.
    pub fn from_table(dist: Vec<Vec<f64>>, masses: Vec<f64>) -> Result<Self> {
        let n = dist.len();
        if n == 0 || dist.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput("distance table must be square and nonempty".into()));
        }
        if masses.len() != n {
            return Err(Error::InvalidInput(format!(
                "mass list length {} does not match point count {n}",
                masses.len()
            )));
        }
        validate_masses(&masses)?;
        let mut flat = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let d = dist[i][j];
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "distance ({i},{j}) must be finite and nonnegative, got {d}"
                    )));
                }
                if i == j && d != 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "diagonal entry ({i},{i}) must be zero, got {d}"
                    )));
                }
                if (dist[i][j] - dist[j][i]).abs() > 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "distance table is not symmetric at ({i},{j})"
                    )));
                }
                if i != j && d == 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "distinct nodes {i} and {j} are at distance zero"
                    )));
                }
                flat[i * n + j] = d;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = flat[i * n + j];
                    let rhs = flat[i * n + k] + flat[k * n + j];
                    if lhs > rhs + 1e-12 * (1.0 + rhs) {
                        return Err(Error::InvalidInput(format!(
                            "triangle inequality fails for ({i},{j},{k}): {lhs} > {rhs}"
                        )));
                    }
                }
            }
        }
        Ok(DiscreteSpace { n, dist: flat, masses, positions: None })
    }

    /// Nodes on the real line; the metric is |x - y|, which needs no check.
    pub fn from_positions_1d(positions: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        let n = positions.len();
        if masses.len() != n {
            return Err(Error::InvalidInput(format!(
                "mass list length {} does not match point count {n}",
                masses.len()
            )));
        }
        validate_masses(&masses)?;
        if positions.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("positions must be finite".into()));
        }
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (positions[i] - positions[j]).abs();
                if d == 0.0 {
                    return Err(Error::InvalidInput(format!(
                        "nodes {i} and {j} share the position {}",
                        positions[i]
                    )));
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(DiscreteSpace { n, dist, masses, positions: Some(positions) })
    }

    /// Nodes in the plane with the Euclidean metric.
    pub fn from_points_2d(points: Vec<[f64; 2]>, masses: Vec<f64>) -> Result<Self> {
        let n = points.len();
        if masses.len() != n {
            return Err(Error::InvalidInput(format!(
                "mass list length {} does not match point count {n}",
                masses.len()
            )));
        }
        validate_masses(&masses)?;
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let dx = points[i][0] - points[j][0];
                let dy = points[i][1] - points[j][1];
                let d = (dx * dx + dy * dy).sqrt();
                if d == 0.0 {
                    return Err(Error::InvalidInput(format!("nodes {i} and {j} coincide")));
                }
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Ok(DiscreteSpace { n, dist, masses, positions: None })
    }

    /// Build the metric as the shortest-path closure of a weighted edge list.
    /// Every node must be connected to every other; the closure is computed
    /// eagerly (Floyd-Warshall) at construction.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)], masses: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("discrete space needs at least one point".into()));
        }
        if masses.len() != n {
            return Err(Error::InvalidInput(format!(
                "mass list length {} does not match point count {n}",
                masses.len()
            )));
        }
        validate_masses(&masses)?;
        let mut dist = vec![f64::INFINITY; n * n];
        for i in 0..n {
            dist[i * n + i] = 0.0;
        }
        for &(a, b, w) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) references a node outside 0..{n}"
                )));
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) must have positive finite weight, got {w}"
                )));
            }
            if a == b {
                continue;
            }
            if w < dist[a * n + b] {
                dist[a * n + b] = w;
                dist[b * n + a] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = dist[i * n + k];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..n {
                    let via = dik + dist[k * n + j];
                    if via < dist[i * n + j] {
                        dist[i * n + j] = via;
                        dist[j * n + i] = via;
                    }
                }
            }
        }
        if dist.iter().any(|d| !d.is_finite()) {
            return Err(Error::InvalidInput(
                "edge list does not connect the space; some distances are infinite".into(),
            ));
        }
        Ok(DiscreteSpace { n, dist, masses, positions: None })
    }

    /// Attach 1-D coordinates to the nodes (used by grid discretizations).
    pub fn with_positions(mut self, positions: Vec<f64>) -> Result<Self> {
        if positions.len() != self.n {
            return Err(Error::InvalidInput("position list length mismatch".into()));
        }
        self.positions = Some(positions);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "node id {i} out of range for a space with {} points",
                self.n
            )))
        }
    }

    /// Distance between two nodes (unchecked; callers validate ids first).
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn mass(&self, i: usize) -> f64 {
        self.masses[i]
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn position(&self, i: usize) -> Option<f64> {
        self.positions.as_ref().map(|p| p[i])
    }

    pub fn positions(&self) -> Option<&[f64]> {
        self.positions.as_deref()
    }

    /// Node ids strictly inside the open ball B(center, r).
    pub fn ball_nodes(&self, center: usize, r: f64) -> Vec<usize> {
        (0..self.n).filter(|&j| self.dist(center, j) < r).collect()
    }

    /// Total mass of the open ball B(center, r).
    pub fn ball_mass(&self, center: usize, r: f64) -> f64 {
        (0..self.n)
            .filter(|&j| self.dist(center, j) < r)
            .map(|j| self.masses[j])
            .sum()
    }

    /// Distance from `i` to the closest node of `set`.
    pub fn dist_to_set(&self, i: usize, set: &[usize]) -> f64 {
        set.iter().map(|&j| self.dist(i, j)).fold(f64::INFINITY, f64::min)
    }

    /// Multiply every mass by `factor(node)`.
    pub fn scaled_masses(&self, factors: &[f64]) -> Result<Self> {
        if factors.len() != self.n {
            return Err(Error::InvalidInput("factor list length mismatch".into()));
        }
        let mut out = self.clone();
        for (m, &f) in out.masses.iter_mut().zip(factors) {
            if !(f > 0.0) || !f.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "reweight factor must be positive and finite, got {f}"
                )));
            }
            *m *= f;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_constructor_rejects_triangle_violation() {
        let table = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        let err = DiscreteSpace::from_table(table, vec![1.0; 3]).unwrap_err();
        assert!(err.to_string().contains("triangle"));
    }

    #[test]
    fn table_constructor_rejects_nonpositive_mass() {
        let table = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(DiscreteSpace::from_table(table, vec![1.0, 0.0]).is_err());
    }

    #[test]
    fn shortest_path_closure_builds_path_metric() {
        let space =
            DiscreteSpace::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)], vec![1.0; 3]).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
        assert_eq!(space.dist(2, 0), 2.0);
        assert_eq!(space.dist(1, 1), 0.0);
    }

    #[test]
    fn disconnected_edge_list_is_rejected() {
        let err = DiscreteSpace::from_edges(3, &[(0, 1, 1.0)], vec![1.0; 3]).unwrap_err();
        assert!(err.to_string().contains("connect"));
    }

    #[test]
    fn ball_membership_is_strict() {
        let space = DiscreteSpace::from_positions_1d(vec![0.0, 1.0, 2.0], vec![1.0; 3]).unwrap();
        // d(0, 1) = 1 is excluded at r = 1 (open ball).
        assert_eq!(space.ball_nodes(0, 1.0), vec![0]);
        assert_eq!(space.ball_nodes(0, 1.0 + 1e-9), vec![0, 1]);
        assert_eq!(space.ball_mass(1, 1.5), 3.0);
    }
}
