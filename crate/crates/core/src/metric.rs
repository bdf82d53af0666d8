//! Finite metric spaces, the bounded metric `min(d, 1)`, set distances and
//! the Hausdorff distance.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::scalar::{self, Scalar};

/// A finite set of named points with a validated metric table.
///
/// The index order of the points is the tie-break order used by every search
/// in the crate.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMetricSpace {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    dist: Vec<Scalar>,
    resolution: Option<Scalar>,
    diameter: Scalar,
}

impl FiniteMetricSpace {
    /// Builds a space from ids and a full distance table, checking the metric
    /// axioms exactly.
    pub fn new(ids: Vec<String>, table: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = ids.len();
        if n == 0 {
            return Err(Error::InvalidMetric("space has no points".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMetric(format!("distance table must be {n}x{n}")));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidMetric(format!("duplicate point id `{id}`")));
            }
        }
        let dist: Vec<Scalar> = table.into_iter().flatten().collect();
        for i in 0..n {
            if !dist[i * n + i].is_zero() {
                return Err(Error::InvalidMetric(format!("d({0}, {0}) is not 0", ids[i])));
            }
            for j in 0..n {
                let d = dist[i * n + j];
                if d != dist[j * n + i] {
                    return Err(Error::InvalidMetric(format!("d({}, {}) is not symmetric", ids[i], ids[j])));
                }
                if i != j && !scalar::is_positive(&d) {
                    return Err(Error::InvalidMetric(format!(
                        "d({}, {}) must be positive for distinct points",
                        ids[i], ids[j]
                    )));
                }
            }
        }
        // Triangle inequality on a common integer grid.
        let den = scalar::common_denominator(&dist);
        let grid: Vec<i128> = dist.iter().map(|d| scalar::on_grid(d, den)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if grid[i * n + k] > grid[i * n + j] + grid[j * n + k] {
                        return Err(Error::InvalidMetric(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            ids[i], ids[j], ids[k]
                        )));
                    }
                }
            }
        }
        let resolution = dist.iter().filter(|d| !d.is_zero()).min().copied();
        let diameter = dist.iter().max().copied().unwrap_or_else(Scalar::zero);
        Ok(FiniteMetricSpace { ids, index, dist, resolution, diameter })
    }

    pub fn from_fn(ids: Vec<String>, d: impl Fn(usize, usize) -> Scalar) -> Result<Self> {
        let n = ids.len();
        let table = (0..n).map(|i| (0..n).map(|j| d(i, j)).collect()).collect();
        Self::new(ids, table)
    }

    /// `n` points `0..n` at mutual distance 1.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::from_fn(numbered(n), |i, j| if i == j { Scalar::zero() } else { Scalar::one() })
    }

    /// Integers `lo..=hi` with the discrete metric, ids are the integers.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidMetric(format!("empty integer range {lo}..={hi}")));
        }
        let ids = (lo..=hi).map(|v| v.to_string()).collect();
        Self::from_fn(ids, |i, j| if i == j { Scalar::zero() } else { Scalar::one() })
    }

    /// `n` points on a cycle, distance = `scale` times the cyclic index gap.
    pub fn cycle(n: usize, scale: Scalar) -> Result<Self> {
        check_scale(&scale)?;
        Self::from_fn(numbered(n), |i, j| scale * scalar::int(cyclic_gap(i, j, n) as i64))
    }

    /// The `n x n` grid on the torus `Z_n^2` with the wrap-around L-infinity
    /// metric times `scale`. Point `(i,j)` has index `i * n + j`.
    pub fn torus_grid(n: usize, scale: Scalar) -> Result<Self> {
        check_scale(&scale)?;
        let ids = (0..n * n).map(|p| format!("({},{})", p / n, p % n)).collect();
        Self::from_fn(ids, |p, q| {
            let gi = cyclic_gap(p / n, q / n, n);
            let gj = cyclic_gap(p % n, q % n, n);
            scale * scalar::int(gi.max(gj) as i64)
        })
    }

    /// Same points, every distance multiplied by `factor`.
    pub fn scaled(&self, factor: Scalar) -> Result<Self> {
        check_scale(&factor)?;
        Self::from_fn(self.ids.clone(), |i, j| self.d(i, j) * factor)
    }

    /// The subspace on `points`, in index order, with its embedding into `self`.
    pub fn subspace(&self, points: &PointSet) -> Result<(Self, Vec<usize>)> {
        let keep = points.to_vec();
        let ids = keep.iter().map(|&i| self.ids[i].clone()).collect();
        let sub = Self::from_fn(ids, |a, b| self.d(keep[a], keep[b]))?;
        Ok((sub, keep))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn check_index(&self, i: usize) -> Result<usize> {
        if i < self.len() {
            Ok(i)
        } else {
            Err(Error::PointOutOfRange { index: i, len: self.len() })
        }
    }

    /// Raw metric `d_X`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> Scalar {
        self.dist[i * self.ids.len() + j]
    }

    /// Bounded metric `min(d_X, 1)`.
    #[inline]
    pub fn bounded(&self, i: usize, j: usize) -> Scalar {
        scalar::min(self.d(i, j), Scalar::one())
    }

    /// Smallest positive distance; `None` for a one-point space.
    pub fn resolution(&self) -> Option<Scalar> {
        self.resolution
    }

    pub fn diameter(&self) -> Scalar {
        self.diameter
    }

    /// Sorted distinct values of the raw metric, including 0.
    pub fn distinct_distances(&self) -> Vec<Scalar> {
        let mut v = self.dist.clone();
        v.sort();
        v.dedup();
        v
    }

    /// Open ball `{q : d(center, q) < radius}`.
    pub fn open_ball(&self, center: usize, radius: &Scalar) -> PointSet {
        PointSet::from_indices(self.len(), (0..self.len()).filter(|&q| self.d(center, q) < *radius))
    }

    /// Open balls of the given radius around every point, indexed by center.
    pub fn open_balls(&self, radius: &Scalar) -> Vec<PointSet> {
        (0..self.len()).map(|c| self.open_ball(c, radius)).collect()
    }

    pub fn bounded_distance(&self, p: &str, q: &str) -> Result<Scalar> {
        Ok(self.bounded(self.index_of(p)?, self.index_of(q)?))
    }

    /// `inf { d^X(a, b) : a in A, b in B }` on the bounded metric.
    pub fn set_distance(&self, a: &PointSet, b: &PointSet) -> Result<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(a.iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.bounded(x, y))
            .min()
            .expect("both sets are nonempty"))
    }

    /// Hausdorff distance between nonempty subsets, on the bounded metric.
    pub fn hausdorff_distance(&self, a: &PointSet, b: &PointSet) -> Result<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        let one_sided = |from: &PointSet, to: &PointSet| {
            from.iter()
                .map(|x| to.iter().map(|y| self.bounded(x, y)).min().expect("nonempty"))
                .max()
                .expect("nonempty")
        };
        Ok(scalar::max(one_sided(a, b), one_sided(b, a)))
    }

    pub fn set_of_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<PointSet> {
        let mut s = PointSet::empty(self.len());
        for id in ids {
            s.insert(self.index_of(id.as_ref())?);
        }
        Ok(s)
    }
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn cyclic_gap(i: usize, j: usize, n: usize) -> usize {
    let g = i.abs_diff(j);
    g.min(n - g)
}

fn check_scale(scale: &Scalar) -> Result<()> {
    if scalar::is_positive(scale) {
        Ok(())
    } else {
        Err(Error::InvalidMetric(format!("scale {} must be positive", scalar::format(scale))))
    }
}
