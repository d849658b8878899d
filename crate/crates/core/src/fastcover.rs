//! Grid-disk covers: FastCover and its two refinements.
//!
//! * [`fast_cover`] places the circumscribing disk of every nonempty √2 cell.
//! * [`fast_cover_plus`] first checks whether one of the four edge-adjacent
//!   grid-disks already placed covers the point.
//! * [`fast_cover_pp`] additionally tracks, per placed disk, the bounding box
//!   of the points it covers and coalesces adjacent disk pairs whose merged
//!   box has diagonal at most 2.

use rustc_hash::{FxHashMap, FxHashSet};

use crate::geom::{cell_of, dist_sq, grid_disk_center, BBox, Cover, GridKey, Point, SQRT_2};

/// Placed grid-disks keyed by cell, each with the box of points assigned to it.
pub type DiskTable = FxHashMap<GridKey, BBox>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    N,
    S,
    E,
    W,
}

impl Direction {
    /// Probe order used by the neighbor check.
    pub const PROBE_ORDER: [Direction; 4] =
        [Direction::E, Direction::W, Direction::N, Direction::S];

    #[inline]
    pub fn neighbor(self, k: GridKey) -> GridKey {
        match self {
            Direction::N => k.offset(0, 1),
            Direction::S => k.offset(0, -1),
            Direction::E => k.offset(1, 0),
            Direction::W => k.offset(-1, 0),
        }
    }
}

/// Whether `p` lies outside the inner square of its cell on the `dir` side,
/// i.e. whether the `dir` neighbor grid-disk can possibly contain it.
#[inline]
pub fn neighbor_threshold_check(p: Point, k: GridKey, dir: Direction) -> bool {
    let (i, j) = (k.i as f64, k.j as f64);
    match dir {
        Direction::E => p.x >= SQRT_2 * (i + 1.5) - 1.0,
        Direction::W => p.x <= SQRT_2 * (i - 0.5) + 1.0,
        Direction::N => p.y >= SQRT_2 * (j + 1.5) - 1.0,
        Direction::S => p.y <= SQRT_2 * (j - 0.5) + 1.0,
    }
}

/// First edge neighbor of `k`, in E, W, N, S order, whose grid-disk is placed
/// and contains `p`.
#[inline]
fn covering_neighbor(p: Point, k: GridKey, placed: impl Fn(&GridKey) -> bool) -> Option<GridKey> {
    Direction::PROBE_ORDER.into_iter().find_map(|dir| {
        if !neighbor_threshold_check(p, k, dir) {
            return None;
        }
        let nk = dir.neighbor(k);
        (placed(&nk) && dist_sq(p, grid_disk_center(nk)) <= 1.0).then_some(nk)
    })
}

pub fn fast_cover(points: &[Point]) -> Cover {
    let mut placed: FxHashSet<GridKey> = FxHashSet::default();
    let mut centers = Vec::new();
    for &p in points {
        let k = cell_of(p);
        if placed.insert(k) {
            centers.push(grid_disk_center(k));
        }
    }
    Cover::new(centers)
}

pub fn fast_cover_plus(points: &[Point]) -> Cover {
    let mut placed: FxHashSet<GridKey> = FxHashSet::default();
    let mut centers = Vec::new();
    for &p in points {
        let k = cell_of(p);
        if placed.contains(&k) {
            continue;
        }
        if covering_neighbor(p, k, |nk| placed.contains(nk)).is_some() {
            continue;
        }
        placed.insert(k);
        centers.push(grid_disk_center(k));
    }
    Cover::new(centers)
}

/// Neighbor-check pass that records, for every placed grid-disk, the bounding
/// box of the points assigned to it.
pub fn assign_with_boxes(points: &[Point]) -> DiskTable {
    let mut table = DiskTable::default();
    for &p in points {
        let k = cell_of(p);
        if let Some(b) = table.get_mut(&k) {
            b.extend(p);
            continue;
        }
        match covering_neighbor(p, k, |nk| table.contains_key(nk)) {
            Some(nk) => table.get_mut(&nk).expect("neighbor is placed").extend(p),
            None => {
                table.insert(k, BBox::from_point(p));
            }
        }
    }
    table
}

/// One coalescing: grid-disks `a` and `b` replaced by a disk at `center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Merge {
    pub a: GridKey,
    pub b: GridKey,
    pub merged_box: BBox,
    pub center: Point,
}

#[derive(Clone, Debug, Default)]
pub struct Coalesced {
    pub merges: Vec<Merge>,
    /// Grid-disks that survived unmerged, in (i, j) order.
    pub kept: Vec<GridKey>,
}

impl Coalesced {
    pub fn into_cover(self) -> Cover {
        let mut centers = Vec::with_capacity(self.merges.len() + self.kept.len());
        centers.extend(self.merges.iter().map(|m| m.center));
        centers.extend(self.kept.iter().copied().map(grid_disk_center));
        Cover::new(centers)
    }
}

// Row-major over (di, dj), skipping (0, 0).
const NEIGHBORS_8: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Pairs up adjacent grid-disks whose merged box has diagonal at most 2.
///
/// Keys are visited in (i, j) order and each scans its eight neighbors in
/// row-major order, merging with the first eligible one. A merged disk is
/// final and never takes part in a later merge.
pub fn coalesce(mut table: DiskTable) -> Coalesced {
    let mut keys: Vec<GridKey> = table.keys().copied().collect();
    keys.sort_unstable();

    let mut merges = Vec::new();
    for &k in &keys {
        let Some(&bk) = table.get(&k) else {
            continue;
        };
        let partner = NEIGHBORS_8.iter().find_map(|&(di, dj)| {
            let nk = k.offset(di, dj);
            let bn = table.get(&nk)?;
            let merged = bk.union(bn);
            (merged.diagonal_sq() <= 4.0).then_some((nk, merged))
        });
        if let Some((nk, merged_box)) = partner {
            table.remove(&k);
            table.remove(&nk);
            merges.push(Merge {
                a: k,
                b: nk,
                merged_box,
                center: merged_box.center(),
            });
        }
    }

    let kept = keys.into_iter().filter(|k| table.contains_key(k)).collect();
    Coalesced { merges, kept }
}

pub fn coalesce_pass(table: DiskTable) -> Cover {
    coalesce(table).into_cover()
}

pub fn fast_cover_pp(points: &[Point]) -> Cover {
    coalesce_pass(assign_with_boxes(points))
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::geom::{FRAC_1_SQRT_2, SQRT_3};
    use crate::oracle::verify_cover;
    use proptest::prelude::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().copied().map(Point::from).collect()
    }

    #[test]
    fn single_point_one_disk() {
        let c = fast_cover(&pts(&[(0.5, 0.5)]));
        assert_eq!(c.centers, vec![Point::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2)]);
    }

    #[test]
    fn same_cell_one_disk() {
        assert_eq!(fast_cover(&pts(&[(0.1, 0.1), (1.0, 1.0)])).len(), 1);
    }

    #[test]
    fn empty_inputs() {
        assert!(fast_cover(&[]).is_empty());
        assert!(fast_cover_plus(&[]).is_empty());
        assert!(fast_cover_pp(&[]).is_empty());
    }

    #[test]
    fn threshold_examples() {
        let p = Point::new(1.5, 0.7071);
        assert!(neighbor_threshold_check(
            p,
            GridKey::new(1, 0),
            Direction::W
        ));
        let o = Point::new(0.0, 0.0);
        assert!(!neighbor_threshold_check(
            o,
            GridKey::new(0, 0),
            Direction::E
        ));

        for (i, j) in [(0, 0), (3, -2), (-7, 5)] {
            let k = GridKey::new(i, j);
            let c = grid_disk_center(k);
            for dir in Direction::PROBE_ORDER {
                assert!(!neighbor_threshold_check(c, k, dir), "{dir:?} at {k:?}");
            }
        }
    }

    #[test]
    fn inner_square_boundary_is_tangent_to_neighbor_disk() {
        // The east edge of the inner square touches the east grid-disk.
        let k = GridKey::new(0, 0);
        let x = SQRT_2 * 1.5 - 1.0;
        let p = Point::new(x, FRAC_1_SQRT_2);
        assert!((dist_sq(p, grid_disk_center(k.offset(1, 0))) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plus_uses_west_neighbor() {
        let input = pts(&[(0.707_106_78, 0.707_106_78), (1.5, 0.707_106_78)]);
        assert_eq!(fast_cover(&input).len(), 2);
        let c = fast_cover_plus(&input);
        assert_eq!(c.len(), 1);
        let d = dist_sq(input[1], c.centers[0]).sqrt();
        assert!((d - 0.792_893).abs() < 1e-5);
    }

    #[test]
    fn plus_single_point_matches_fast_cover() {
        let p = pts(&[(-3.3, 12.9)]);
        assert_eq!(fast_cover_plus(&p), fast_cover(&p));
        assert_eq!(fast_cover_pp(&p), fast_cover(&p));
    }

    #[test]
    fn interior_points_match_fast_cover() {
        // Cell centers are deep inside their inner squares.
        let input: Vec<Point> = (0..5)
            .flat_map(|i| (0..5).map(move |j| grid_disk_center(GridKey::new(i, j))))
            .collect();
        assert_eq!(fast_cover_plus(&input), fast_cover(&input));
    }

    #[test]
    fn coalesce_merges_close_pair() {
        let input = pts(&[(0.1, 0.1), (2.0, 0.1)]);
        let table = assign_with_boxes(&input);
        assert_eq!(table.len(), 2);
        let c = coalesce_pass(table);
        assert_eq!(c.len(), 1);
        assert!((c.centers[0].x - 1.05).abs() < 1e-12);
        assert!((c.centers[0].y - 0.1).abs() < 1e-12);
        for &p in &input {
            assert!(dist_sq(p, c.centers[0]) <= 0.95 * 0.95 + 1e-12);
        }
        assert_eq!(fast_cover_pp(&input), c);
        assert_eq!(fast_cover_plus(&input).len(), 2);
    }

    #[test]
    fn coalesce_diagonal_exactly_two() {
        let mut table = DiskTable::default();
        table.insert(GridKey::new(0, 0), BBox::from_point(Point::new(0.5, 0.5)));
        table.insert(GridKey::new(1, 0), BBox::from_point(Point::new(2.5, 0.5)));
        let c = coalesce_pass(table);
        assert_eq!(c.centers, vec![Point::new(1.5, 0.5)]);
    }

    #[test]
    fn non_adjacent_never_merge() {
        let mut table = DiskTable::default();
        table.insert(GridKey::new(0, 0), BBox::from_point(Point::new(1.4, 0.5)));
        table.insert(GridKey::new(2, 0), BBox::from_point(Point::new(2.9, 0.5)));
        let c = coalesce(table);
        assert!(c.merges.is_empty());
        assert_eq!(c.kept, vec![GridKey::new(0, 0), GridKey::new(2, 0)]);
    }

    #[test]
    fn merged_disks_are_final() {
        // Three boxes in a row, each pair mergeable; only the first pair merges.
        let mut table = DiskTable::default();
        for i in 0..3 {
            let x = SQRT_2 * i as f64 + 0.7;
            table.insert(GridKey::new(i, 0), BBox::from_point(Point::new(x, 0.7)));
        }
        let c = coalesce(table);
        assert_eq!(c.merges.len(), 1);
        assert_eq!(
            (c.merges[0].a, c.merges[0].b),
            (GridKey::new(0, 0), GridKey::new(1, 0))
        );
        assert_eq!(c.kept, vec![GridKey::new(2, 0)]);
    }

    #[test]
    fn duplicates_are_harmless() {
        let input = pts(&[(0.3, 0.3), (0.3, 0.3), (0.3, 0.3)]);
        assert_eq!(fast_cover(&input).len(), 1);
        assert_eq!(fast_cover_plus(&input).len(), 1);
        assert_eq!(fast_cover_pp(&input).len(), 1);
    }

    #[test]
    fn hex_spacing_points_coalesce() {
        let input = pts(&[(0.0, 0.0), (SQRT_3, 0.0)]);
        assert!(verify_cover(&input, &fast_cover_pp(&input), 1e-9).valid);
    }

    fn point_set() -> impl Strategy<Value = Vec<Point>> {
        prop::collection::vec((-20f64..20.0, -20f64..20.0), 0..400)
            .prop_map(|v| v.into_iter().map(Point::from).collect())
    }

    proptest! {
        #[test]
        fn all_variants_valid_and_ordered(input in point_set()) {
            let a = fast_cover(&input);
            let b = fast_cover_plus(&input);
            let c = fast_cover_pp(&input);
            for cover in [&a, &b, &c] {
                prop_assert!(verify_cover(&input, cover, 1e-9).valid);
                prop_assert!(cover.len() <= input.len());
            }
            prop_assert!(c.len() <= b.len() && b.len() <= a.len());
        }

        #[test]
        fn fast_cover_is_order_insensitive(mut input in point_set(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let sorted = |c: Cover| {
                let mut v: Vec<(u64, u64)> =
                    c.centers.iter().map(|p| (p.x.to_bits(), p.y.to_bits())).collect();
                v.sort_unstable();
                v
            };
            let before = sorted(fast_cover(&input));
            input.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(before, sorted(fast_cover(&input)));
        }

        #[test]
        fn merged_disks_cover_both_parents(input in point_set()) {
            let table = assign_with_boxes(&input);
            let before = table.clone();
            let out = coalesce(table);
            for m in &out.merges {
                let (ba, bb) = (before[&m.a], before[&m.b]);
                prop_assert_eq!(m.merged_box, ba.union(&bb));
                prop_assert!((m.a.i - m.b.i).abs() <= 1 && (m.a.j - m.b.j).abs() <= 1);
                // Every point in either parent's box lies in the merged box,
                // so covering its corners covers them all.
                for corner in m.merged_box.corners() {
                    prop_assert!(dist_sq(corner, m.center) <= 1.0 + 1e-12);
                }
            }
            prop_assert_eq!(out.merges.len() * 2 + out.kept.len(), before.len());
        }
    }
}
