//! Planar points, the √2 grid shared by the grid-based algorithms, and
//! axis-parallel bounding boxes.
//!
//! All coverage tests in the algorithms compare squared distances against 1
//! exactly; tolerance is applied only by the verifier in [`crate::oracle`].

use std::fmt;

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;
pub const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;
pub const SQRT_3: f64 = 1.732_050_807_568_877_2;
pub const HALF_SQRT_3: f64 = 0.866_025_403_784_438_6;
pub const SIXTH_SQRT_3: f64 = 0.288_675_134_594_812_9;
/// Gap between a grid cell's boundary and its inner square, `1 - √2/2`.
pub const INNER_SQUARE_GAP: f64 = 0.292_893_218_813_452_5;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Bitwise coordinate equality. Distinguishes `0.0` from `-0.0`.
    #[inline]
    pub fn bits_eq(&self, other: &Point) -> bool {
        self.x.to_bits() == other.x.to_bits() && self.y.to_bits() == other.y.to_bits()
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[inline]
pub fn dist_sq(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// A set of unit disks, stored as their centers.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Cover {
    pub centers: Vec<Point>,
}

impl Cover {
    pub fn new(centers: Vec<Point>) -> Self {
        Cover { centers }
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.centers.iter()
    }
}

impl From<Vec<Point>> for Cover {
    fn from(centers: Vec<Point>) -> Self {
        Cover { centers }
    }
}

impl<'a> IntoIterator for &'a Cover {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.centers.iter()
    }
}

/// Index `(i, j)` of the half-open cell `[√2·i, √2·(i+1)) × [√2·j, √2·(j+1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridKey {
    pub i: i64,
    pub j: i64,
}

impl GridKey {
    #[inline]
    pub const fn new(i: i64, j: i64) -> Self {
        GridKey { i, j }
    }

    #[inline]
    pub const fn offset(self, di: i64, dj: i64) -> Self {
        GridKey {
            i: self.i + di,
            j: self.j + dj,
        }
    }
}

#[inline]
pub fn cell_of(p: Point) -> GridKey {
    GridKey {
        i: (p.x / SQRT_2).floor() as i64,
        j: (p.y / SQRT_2).floor() as i64,
    }
}

/// Center of the unit disk circumscribing the cell `k`.
#[inline]
pub fn grid_disk_center(k: GridKey) -> Point {
    Point {
        x: SQRT_2 * k.i as f64 + FRAC_1_SQRT_2,
        y: SQRT_2 * k.j as f64 + FRAC_1_SQRT_2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        debug_assert!(xmin <= xmax && ymin <= ymax);
        BBox {
            xmin,
            ymin,
            xmax,
            ymax,
        }
    }

    #[inline]
    pub fn from_point(p: Point) -> Self {
        BBox {
            xmin: p.x,
            ymin: p.y,
            xmax: p.x,
            ymax: p.y,
        }
    }

    #[inline]
    pub fn extend(&mut self, p: Point) {
        self.xmin = self.xmin.min(p.x);
        self.ymin = self.ymin.min(p.y);
        self.xmax = self.xmax.max(p.x);
        self.ymax = self.ymax.max(p.y);
    }

    #[inline]
    pub fn union(&self, other: &BBox) -> BBox {
        BBox {
            xmin: self.xmin.min(other.xmin),
            ymin: self.ymin.min(other.ymin),
            xmax: self.xmax.max(other.xmax),
            ymax: self.ymax.max(other.ymax),
        }
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    #[inline]
    pub fn diagonal_sq(&self) -> f64 {
        let w = self.xmax - self.xmin;
        let h = self.ymax - self.ymin;
        w * w + h * h
    }

    #[inline]
    pub fn center(&self) -> Point {
        Point {
            x: 0.5 * (self.xmin + self.xmax),
            y: 0.5 * (self.ymin + self.ymax),
        }
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin, self.ymin),
            Point::new(self.xmax, self.ymin),
            Point::new(self.xmax, self.ymax),
            Point::new(self.xmin, self.ymax),
        ]
    }
}

#[inline]
pub fn bbox_union_diagonal_sq(a: &BBox, b: &BBox) -> f64 {
    a.union(b).diagonal_sq()
}
