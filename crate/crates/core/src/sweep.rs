//! Sorting-based algorithms: the √3-strip stabbing algorithm (LL-2014 and its
//! one-pass variant) and the four-disk sweep (BLMS-2017).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::geom::{dist_sq, Cover, Point, HALF_SQRT_3, SIXTH_SQRT_3, SQRT_3};

/// `f64` with a total order, for ordered collections.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Ordf(f64);

impl Eq for Ordf {}

impl PartialOrd for Ordf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ordf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

fn by_x_then_y(a: &Point, b: &Point) -> Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

/// Vertical segment on a restriction line: the centers on that line whose
/// unit disk contains the generating point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VSegment {
    pub x: f64,
    pub top: f64,
    pub bottom: f64,
}

impl VSegment {
    /// Segment of centers on the vertical line `x = line_x` covering `p`.
    pub fn for_point(p: Point, line_x: f64) -> Self {
        let d = p.x - line_x;
        let half = (1.0 - d * d).max(0.0).sqrt();
        VSegment {
            x: line_x,
            top: p.y + half,
            bottom: p.y - half,
        }
    }

    #[inline]
    pub fn contains(&self, y: f64) -> bool {
        self.bottom <= y && y <= self.top
    }
}

/// Greedy stabbing: take the unstabbed segment with the highest top and stab
/// it at its bottom. Equal tops go lower bottom first. Stab points are
/// returned in the order they were chosen.
pub fn stab_segments(segs: &[VSegment]) -> Vec<Point> {
    let mut order: Vec<&VSegment> = segs.iter().collect();
    order.sort_unstable_by(|a, b| b.top.total_cmp(&a.top).then(a.bottom.total_cmp(&b.bottom)));

    let mut stabs: BTreeSet<Ordf> = BTreeSet::new();
    let mut out = Vec::new();
    for s in order {
        let hit = stabs.range(Ordf(s.bottom)..=Ordf(s.top)).next().is_some();
        if !hit {
            stabs.insert(Ordf(s.bottom));
            out.push(Point::new(s.x, s.bottom));
        }
    }
    out
}

/// Disks from one strip-system pass over x-sorted points. The first strip's
/// right boundary is `sorted[0].x + offset`; strips are √3 wide and empty
/// strips are skipped.
fn ll_pass(sorted: &[Point], offset: f64) -> Vec<Point> {
    let base = sorted[0].x + offset;
    let mut k: i64 = 0;
    let mut right = base;
    let mut current = 0;
    let mut centers = Vec::new();
    let mut segments = Vec::new();

    while current < sorted.len() {
        let next_x = sorted[current].x;
        if next_x >= right {
            // Smallest multiple of √3 putting the next point strictly left of `right`.
            let prev = k;
            k += ((next_x - right) / SQRT_3).floor() as i64 + 1;
            while k - 1 > prev && base + (k - 1) as f64 * SQRT_3 > next_x {
                k -= 1;
            }
            right = base + k as f64 * SQRT_3;
            while next_x >= right {
                k += 1;
                right = base + k as f64 * SQRT_3;
            }
        }
        let index = current;
        while current < sorted.len() && sorted[current].x < right {
            current += 1;
        }
        let line_x = right - HALF_SQRT_3;
        segments.clear();
        segments.extend(
            sorted[index..current]
                .iter()
                .map(|&p| VSegment::for_point(p, line_x)),
        );
        centers.extend(stab_segments(&segments));
    }
    centers
}

/// Strip-stabbing cover with `passes` shifted strip systems (6 for the full
/// algorithm, 1 for the one-pass variant). Pass `i` shifts the strips right by
/// `i·√3/6`; the smallest result wins, ties going to the earliest pass.
pub fn ll2014(points: &[Point], passes: usize) -> Cover {
    assert!((1..=6).contains(&passes), "passes must be between 1 and 6");
    if points.is_empty() {
        return Cover::default();
    }
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(by_x_then_y);

    let mut best: Option<Vec<Point>> = None;
    for i in 0..passes {
        let c = ll_pass(&sorted, i as f64 * SIXTH_SQRT_3);
        if best.as_ref().is_none_or(|b| c.len() < b.len()) {
            best = Some(c);
        }
    }
    Cover::new(best.unwrap_or_default())
}

/// Four disks placed around an anchor: on it, to its right, upper-right and
/// lower-right. Together they cover the right half of the radius-2 disk
/// around the anchor.
#[derive(Clone, Debug, PartialEq)]
pub struct BlmsQuad {
    pub anchor: Point,
    pub centers: [Point; 4],
    pub occupancy: [u32; 4],
}

impl BlmsQuad {
    pub fn new(anchor: Point) -> Self {
        let Point { x, y } = anchor;
        BlmsQuad {
            anchor,
            centers: [
                anchor,
                Point::new(x + SQRT_3, y),
                Point::new(x + HALF_SQRT_3, y + 1.5),
                Point::new(x + HALF_SQRT_3, y - 1.5),
            ],
            occupancy: [0; 4],
        }
    }

    /// Assigns `p` to the first of the four disks containing it. Falls back to
    /// the nearest disk when rounding leaves `p` a hair outside all of them.
    fn assign(&mut self, p: Point) -> usize {
        let slot = match self.centers.iter().position(|&c| dist_sq(p, c) <= 1.0) {
            Some(slot) => slot,
            None => {
                let (slot, d) = self
                    .centers
                    .iter()
                    .map(|&c| dist_sq(p, c))
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("four centers");
                assert!(
                    d <= 1.0 + 1e-9,
                    "point {p} not covered by quad anchored at {}",
                    self.anchor
                );
                slot
            }
        };
        self.occupancy[slot] += 1;
        slot
    }

    pub fn occupied_centers(&self) -> impl Iterator<Item = Point> + '_ {
        self.centers
            .iter()
            .zip(self.occupancy)
            .filter(|(_, n)| *n > 0)
            .map(|(c, _)| *c)
    }
}

/// Anchors within the sweep window, keyed by `(y, creation index)`.
struct AnchorWindow {
    by_y: BTreeMap<(Ordf, usize), Point>,
    anchors: Vec<Point>,
    oldest_live: usize,
}

impl AnchorWindow {
    fn new() -> Self {
        AnchorWindow {
            by_y: BTreeMap::new(),
            anchors: Vec::new(),
            oldest_live: 0,
        }
    }

    /// Retires anchors with `x < sweep_x - 2`. Anchors are created in x order.
    fn advance(&mut self, sweep_x: f64) {
        while self.oldest_live < self.anchors.len()
            && self.anchors[self.oldest_live].x < sweep_x - 2.0
        {
            let a = self.anchors[self.oldest_live];
            self.by_y.remove(&(Ordf(a.y), self.oldest_live));
            self.oldest_live += 1;
        }
    }

    fn push(&mut self, a: Point) -> usize {
        let id = self.anchors.len();
        self.anchors.push(a);
        self.by_y.insert((Ordf(a.y), id), a);
        id
    }

    /// Nearest live anchor within distance 2 of `p`; ties go to the older one.
    fn nearest_within_2(&self, p: Point) -> Option<usize> {
        let lo = (Ordf(p.y - 2.0), 0);
        let hi = (Ordf(p.y + 2.0), usize::MAX);
        let mut best: Option<(usize, f64)> = None;
        for (&(_, id), &a) in self.by_y.range(lo..=hi) {
            if (a.x - p.x).abs() > 2.0 {
                continue;
            }
            let d = dist_sq(a, p);
            if d > 4.0 {
                continue;
            }
            if best.is_none_or(|(bid, bd)| d < bd || (d == bd && id < bid)) {
                best = Some((id, d));
            }
        }
        best.map(|(id, _)| id)
    }
}

/// Runs the four-disk sweep and returns every quad, including empty disks.
pub fn blms2017_quads(points: &[Point]) -> Vec<BlmsQuad> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(by_x_then_y);

    let mut window = AnchorWindow::new();
    let mut quads: Vec<BlmsQuad> = Vec::new();
    for p in sorted {
        window.advance(p.x);
        let id = match window.nearest_within_2(p) {
            Some(id) => id,
            None => {
                let id = window.push(p);
                quads.push(BlmsQuad::new(p));
                id
            }
        };
        quads[id].assign(p);
    }
    quads
}

/// Four-disk sweep with empty disks removed.
pub fn blms2017(points: &[Point]) -> Cover {
    let quads = blms2017_quads(points);
    Cover::new(quads.iter().flat_map(|q| q.occupied_centers()).collect())
}
