//! Uniform-grid point index answering "nearest stored point within radius r".
//!
//! Every stored point lives in the bucket of its own cell. A query probes the
//! 3×3 block of cells around the query point, which finds every stored point
//! within distance `r` as long as `r <= cell_side`.

use rustc_hash::FxHashMap;

use crate::geom::{dist_sq, Point};

#[derive(Clone, Copy, Debug)]
struct Entry {
    point: Point,
    seq: u64,
}

#[derive(Clone, Debug)]
pub struct RadiusGrid {
    cell_side: f64,
    cells: FxHashMap<(i64, i64), Vec<Entry>>,
    next_seq: u64,
    len: usize,
}

impl RadiusGrid {
    pub fn new(cell_side: f64) -> Self {
        assert!(
            cell_side > 0.0 && cell_side.is_finite(),
            "cell side must be positive"
        );
        RadiusGrid {
            cell_side,
            cells: FxHashMap::default(),
            next_seq: 0,
            len: 0,
        }
    }

    pub fn with_capacity(cell_side: f64, cells: usize) -> Self {
        let mut g = Self::new(cell_side);
        g.cells.reserve(cells);
        g
    }

    pub fn cell_side(&self) -> f64 {
        self.cell_side
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn key(&self, p: Point) -> (i64, i64) {
        (
            (p.x / self.cell_side).floor() as i64,
            (p.y / self.cell_side).floor() as i64,
        )
    }

    pub fn insert(&mut self, p: Point) {
        let key = self.key(p);
        let seq = self.next_seq;
        self.next_seq += 1;
        self.cells
            .entry(key)
            .or_default()
            .push(Entry { point: p, seq });
        self.len += 1;
    }

    /// Removes one stored copy bitwise-equal to `p`. Returns whether one existed.
    pub fn remove(&mut self, p: Point) -> bool {
        let key = self.key(p);
        let Some(bucket) = self.cells.get_mut(&key) else {
            return false;
        };
        let Some(pos) = bucket.iter().position(|e| e.point.bits_eq(&p)) else {
            return false;
        };
        bucket.swap_remove(pos);
        if bucket.is_empty() {
            self.cells.remove(&key);
        }
        self.len -= 1;
        true
    }

    /// Nearest stored point with `dist_sq(q, ·) <= r²`, as `(point, dist_sq)`.
    /// Equal distances resolve to the earliest inserted point.
    pub fn nearest_within(&self, q: Point, r: f64) -> Option<(Point, f64)> {
        assert!(
            r <= self.cell_side,
            "query radius {r} exceeds cell side {}",
            self.cell_side
        );
        let r_sq = r * r;
        let (ci, cj) = self.key(q);
        let mut best: Option<(Entry, f64)> = None;
        for di in -1..=1 {
            for dj in -1..=1 {
                let Some(bucket) = self.cells.get(&(ci + di, cj + dj)) else {
                    continue;
                };
                for e in bucket {
                    let d = dist_sq(q, e.point);
                    if d > r_sq {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((b, bd)) => d < bd || (d == bd && e.seq < b.seq),
                    };
                    if better {
                        best = Some((*e, d));
                    }
                }
            }
        }
        best.map(|(e, d)| (e.point, d))
    }

    /// Whether any stored point lies within distance `r` of `q`.
    pub fn any_within(&self, q: Point, r: f64) -> bool {
        assert!(r <= self.cell_side);
        let r_sq = r * r;
        let (ci, cj) = self.key(q);
        for di in -1..=1 {
            for dj in -1..=1 {
                if let Some(bucket) = self.cells.get(&(ci + di, cj + dj)) {
                    if bucket.iter().any(|e| dist_sq(q, e.point) <= r_sq) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Stored points in unspecified order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.cells.values().flat_map(|b| b.iter().map(|e| e.point))
    }
}
