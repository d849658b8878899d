//! Cover verification and an exact solver for small instances.

use thiserror::Error;

use crate::geom::{dist_sq, Cover, Point};
use crate::grid_index::RadiusGrid;

pub const DEFAULT_EPS: f64 = 1e-9;
/// Largest instance [`optimal_cover`] accepts.
pub const MAX_EXACT_POINTS: usize = 12;
const DEDUP_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("exact solver accepts at most {max} points, got {got}")]
    TooManyPoints { got: usize, max: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Uncovered {
    pub index: usize,
    /// Squared distance to the nearest center, `inf` for an empty cover.
    pub min_dist_sq: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub valid: bool,
    pub uncovered: Vec<Uncovered>,
    pub cover_size: usize,
}

fn center_index(cover: &Cover, eps: f64) -> RadiusGrid {
    let mut grid = RadiusGrid::with_capacity(1.0 + eps, cover.len());
    for &c in cover {
        grid.insert(c);
    }
    grid
}

fn nearest_center_sq(cover: &Cover, p: Point) -> f64 {
    cover
        .iter()
        .map(|&c| dist_sq(p, c))
        .fold(f64::INFINITY, f64::min)
}

fn report(points: &[Point], cover: &Cover, covered: impl Fn(usize) -> bool) -> VerifyReport {
    let uncovered: Vec<Uncovered> = (0..points.len())
        .filter(|&i| !covered(i))
        .map(|index| Uncovered {
            index,
            min_dist_sq: nearest_center_sq(cover, points[index]),
        })
        .collect();
    VerifyReport {
        valid: uncovered.is_empty(),
        uncovered,
        cover_size: cover.len(),
    }
}

/// Single-threaded verification. Point `i` is covered iff some center lies
/// within distance `1 + eps`.
pub fn verify_cover_seq(points: &[Point], cover: &Cover, eps: f64) -> VerifyReport {
    let grid = center_index(cover, eps);
    let r = 1.0 + eps;
    let flags: Vec<bool> = points.iter().map(|&p| grid.any_within(p, r)).collect();
    report(points, cover, |i| flags[i])
}

/// Same result as [`verify_cover_seq`], checking points in parallel.
#[cfg(feature = "parallel")]
pub fn verify_cover_par(points: &[Point], cover: &Cover, eps: f64) -> VerifyReport {
    use rayon::prelude::*;

    let grid = center_index(cover, eps);
    let r = 1.0 + eps;
    let flags: Vec<bool> = points
        .par_iter()
        .with_min_len(4096)
        .map(|&p| grid.any_within(p, r))
        .collect();
    report(points, cover, |i| flags[i])
}

pub fn verify_cover(points: &[Point], cover: &Cover, eps: f64) -> VerifyReport {
    #[cfg(feature = "parallel")]
    {
        if points.len() >= 1 << 15 {
            return verify_cover_par(points, cover, eps);
        }
    }
    verify_cover_seq(points, cover, eps)
}

/// Every input point plus, for each pair at distance in `(0, 2]`, the centers
/// of the unit circles through both points. Near-duplicates are dropped.
pub fn candidate_centers(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    let mut push = |c: Point| {
        if !out
            .iter()
            .any(|q| (q.x - c.x).abs() <= DEDUP_TOL && (q.y - c.y).abs() <= DEDUP_TOL)
        {
            out.push(c);
        }
    };
    for &p in points {
        push(p);
    }
    for (a, &p) in points.iter().enumerate() {
        for &q in &points[a + 1..] {
            let d2 = dist_sq(p, q);
            if d2 == 0.0 || d2 > 4.0 {
                continue;
            }
            let mid = Point::new(0.5 * (p.x + q.x), 0.5 * (p.y + q.y));
            let h2 = 1.0 - d2 / 4.0;
            if h2 <= 0.0 {
                push(mid);
                continue;
            }
            // Unit normal to pq scaled by the half-chord height.
            let s = (h2 / d2).sqrt();
            let (nx, ny) = (-(q.y - p.y) * s, (q.x - p.x) * s);
            push(Point::new(mid.x + nx, mid.y + ny));
            push(Point::new(mid.x - nx, mid.y - ny));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    pub size: usize,
    pub centers: Cover,
}

/// Candidate disks as bitmasks over the (sorted) points, one per distinct mask.
pub(crate) fn candidate_masks(sorted: &[Point]) -> Vec<(u32, Point)> {
    let r2 = (1.0 + DEFAULT_EPS) * (1.0 + DEFAULT_EPS);
    let mut masks: Vec<(u32, Point)> = Vec::new();
    for c in candidate_centers(sorted) {
        let mask = sorted
            .iter()
            .enumerate()
            .filter(|(_, &p)| dist_sq(p, c) <= r2)
            .fold(0u32, |m, (i, _)| m | (1 << i));
        if mask != 0 && !masks.iter().any(|&(m, _)| m == mask) {
            masks.push((mask, c));
        }
    }
    masks
}

struct Search<'a> {
    masks: &'a [(u32, Point)],
    /// Candidate indices covering each point, widest disks first.
    by_point: Vec<Vec<usize>>,
    full: u32,
    best: Vec<usize>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, covered: u32) {
        if covered == self.full {
            if self.stack.len() < self.best.len() {
                self.best = self.stack.clone();
            }
            return;
        }
        if self.stack.len() + 1 >= self.best.len() {
            return;
        }
        let first = (!covered & self.full).trailing_zeros() as usize;
        for ci in 0..self.by_point[first].len() {
            let cand = self.by_point[first][ci];
            self.stack.push(cand);
            self.run(covered | self.masks[cand].0);
            self.stack.pop();
        }
    }
}

/// Minimum number of unit disks covering `points`, by branch and bound over
/// candidate centers. Refuses instances above [`MAX_EXACT_POINTS`].
///
/// Some optimal cover uses only candidate centers: any disk can be translated
/// until it is centered on a point or has two points on its boundary.
pub fn optimal_cover(points: &[Point]) -> Result<OptResult, OracleError> {
    if points.len() > MAX_EXACT_POINTS {
        return Err(OracleError::TooManyPoints {
            got: points.len(),
            max: MAX_EXACT_POINTS,
        });
    }
    if points.is_empty() {
        return Ok(OptResult {
            size: 0,
            centers: Cover::default(),
        });
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));

    let masks = candidate_masks(&sorted);
    let n = sorted.len();
    let by_point = (0..n)
        .map(|i| {
            let mut idx: Vec<usize> = (0..masks.len())
                .filter(|&c| masks[c].0 & (1 << i) != 0)
                .collect();
            idx.sort_by_key(|&c| std::cmp::Reverse(masks[c].0.count_ones()));
            idx
        })
        .collect();

    // Incumbent: one disk per point.
    let initial: Vec<usize> = (0..n)
        .map(|i| {
            masks
                .iter()
                .position(|&(m, _)| m & (1 << i) != 0)
                .expect("each point is its own candidate")
        })
        .collect();
    let mut search = Search {
        masks: &masks,
        by_point,
        full: if n == 32 { u32::MAX } else { (1u32 << n) - 1 },
        best: initial,
        stack: Vec::new(),
    };
    search.run(0);

    let centers = Cover::new(search.best.iter().map(|&c| masks[c].1).collect());
    Ok(OptResult {
        size: centers.len(),
        centers,
    })
}
