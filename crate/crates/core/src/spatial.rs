//! Uniform hash grid over points in R³, used to restrict pairwise and
//! point-plane queries to nearby candidates.

use std::collections::HashMap;

use crate::scalar::Real;
use crate::vec3::Vec3;

type Cell = (i64, i64, i64);

pub(crate) struct PointGrid<T> {
    cell: T,
    buckets: HashMap<Cell, Vec<u32>>,
}

impl<T: Real> PointGrid<T> {
    pub fn new(cell: T) -> Self {
        assert!(cell > T::zero(), "grid cell size must be positive");
        Self { cell, buckets: HashMap::new() }
    }

    pub fn build(points: &[Vec3<T>], cell: T) -> Self {
        let mut g = Self::new(cell);
        for (i, p) in points.iter().enumerate() {
            g.insert(*p, i as u32);
        }
        g
    }

    fn key(&self, p: Vec3<T>) -> Cell {
        let k = |x: T| (x / self.cell).floor().to_i64().unwrap_or(i64::MAX);
        (k(p.x), k(p.y), k(p.z))
    }

    pub fn insert(&mut self, p: Vec3<T>, id: u32) {
        let k = self.key(p);
        self.buckets.entry(k).or_default().push(id);
    }

    /// Calls `f` for every stored id whose cell intersects the axis-aligned
    /// box of half-width `radius` around `center`. Callers filter exactly.
    pub fn for_each_near(&self, center: Vec3<T>, radius: T, mut f: impl FnMut(u32)) {
        let r = Vec3::new(radius, radius, radius);
        let lo = self.key(center - r);
        let hi = self.key(center + r);
        let span = (hi.0 - lo.0 + 1) * (hi.1 - lo.1 + 1) * (hi.2 - lo.2 + 1);
        if span as usize > 4 * self.buckets.len() {
            for ids in self.buckets.values() {
                ids.iter().copied().for_each(&mut f);
            }
            return;
        }
        for x in lo.0..=hi.0 {
            for y in lo.1..=hi.1 {
                for z in lo.2..=hi.2 {
                    if let Some(ids) = self.buckets.get(&(x, y, z)) {
                        ids.iter().copied().for_each(&mut f);
                    }
                }
            }
        }
    }
}

/// Merges points closer than `tol` (max-coordinate distance), keeping the
/// first occurrence.
pub(crate) struct Welder<T> {
    grid: PointGrid<T>,
    tol: T,
    pub points: Vec<Vec3<T>>,
}

impl<T: Real> Welder<T> {
    pub fn new(tol: T) -> Self {
        // a tol-sized box spans at most two cells per axis
        Self { grid: PointGrid::new(tol * T::lit(1024.0)), tol, points: Vec::new() }
    }

    /// Index of the stored point matching `p`, inserting it if new. The flag
    /// is true when the point was newly inserted.
    pub fn weld(&mut self, p: Vec3<T>) -> (u32, bool) {
        let mut hit = None;
        let pts = &self.points;
        let tol = self.tol;
        self.grid.for_each_near(p, tol, |id| {
            if hit.is_none() && pts[id as usize].max_abs_diff(p) <= tol {
                hit = Some(id);
            }
        });
        if let Some(id) = hit {
            return (id, false);
        }
        let id = self.points.len() as u32;
        self.points.push(p);
        self.grid.insert(p, id);
        (id, true)
    }
}
