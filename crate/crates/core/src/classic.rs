//! Strip-of-squares greedy (G-1991) and the two online nearest-center
//! algorithms (CCFM-1997 and DGT-2018).

use std::collections::BTreeMap;

use crate::geom::{Cover, Point, HALF_SQRT_3, SQRT_2, SQRT_3};
use crate::grid_index::RadiusGrid;

/// Covers each horizontal √2-strip left to right with √2×√2 squares, then
/// places the circumscribing unit disk of every square.
///
/// Strips are processed one after another in increasing index. A square's
/// left edge sits at the leftmost uncovered point and it covers every strip
/// point with `x` in the closed interval `[q.x, q.x + √2]`.
pub fn g1991(points: &[Point]) -> Cover {
    let mut strips: BTreeMap<i64, Vec<Point>> = BTreeMap::new();
    for &p in points {
        strips
            .entry((p.y / SQRT_2).floor() as i64)
            .or_default()
            .push(p);
    }

    let mut centers = Vec::new();
    for (iy, mut strip) in strips {
        strip.sort_unstable_by(|a, b| a.x.total_cmp(&b.x));
        let cy = (iy as f64 + 0.5) * SQRT_2;
        let mut idx = 0;
        while idx < strip.len() {
            let left = strip[idx].x;
            let right = left + SQRT_2;
            centers.push(Point::new(left + 0.5 * SQRT_2, cy));
            while idx < strip.len() && strip[idx].x <= right {
                idx += 1;
            }
        }
    }
    Cover::new(centers)
}

/// The six hexagonal offsets at distance √3 around `p`.
pub fn ccfm_spawn_inactive(p: Point) -> [Point; 6] {
    [
        Point::new(p.x + SQRT_3, p.y),
        Point::new(p.x + HALF_SQRT_3, p.y + 1.5),
        Point::new(p.x + HALF_SQRT_3, p.y - 1.5),
        Point::new(p.x - HALF_SQRT_3, p.y + 1.5),
        Point::new(p.x - SQRT_3, p.y),
        Point::new(p.x - HALF_SQRT_3, p.y - 1.5),
    ]
}

/// Active (placed) and inactive (candidate) centers of a CCFM run.
#[derive(Debug)]
pub struct CcfmState {
    pub active: RadiusGrid,
    pub inactive: RadiusGrid,
    /// Active centers in activation order.
    pub order: Vec<Point>,
}

impl Default for CcfmState {
    fn default() -> Self {
        CcfmState {
            active: RadiusGrid::new(1.0),
            inactive: RadiusGrid::new(1.0),
            order: Vec::new(),
        }
    }
}

impl CcfmState {
    fn activate(&mut self, p: Point) {
        self.active.insert(p);
        self.order.push(p);
    }

    fn activate_and_spawn(&mut self, p: Point) {
        self.activate(p);
        for q in ccfm_spawn_inactive(p) {
            self.inactive.insert(q);
        }
    }

    /// Processes one point of the online sequence.
    pub fn step(&mut self, p: Point) {
        if self.active.any_within(p, 1.0) {
            return;
        }
        if self.inactive.is_empty() {
            self.activate_and_spawn(p);
            return;
        }
        match self.inactive.nearest_within(p, 1.0) {
            Some((q, _)) => {
                self.inactive.remove(q);
                self.activate(q);
            }
            None => self.activate_and_spawn(p),
        }
    }

    pub fn into_cover(self) -> Cover {
        Cover::new(self.order)
    }
}

pub fn ccfm1997(points: &[Point]) -> Cover {
    let mut state = CcfmState::default();
    for &p in points {
        state.step(p);
    }
    state.into_cover()
}

/// A point opens a new disk iff no existing center lies within distance 1.
pub fn dgt2018(points: &[Point]) -> Cover {
    let mut grid = RadiusGrid::new(1.0);
    let mut centers = Vec::new();
    for &p in points {
        if !grid.any_within(p, 1.0) {
            grid.insert(p);
            centers.push(p);
        }
    }
    Cover::new(centers)
}
