//! Seeded synthetic point sets: uniform in a square, a disk or an annulus,
//! and random convex position.
//!
//! All generators draw from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`,
//! and turn 64-bit outputs into floats as `(u >> 11) · 2⁻⁵³`, so a given
//! `(shape, n, seed)` yields the same points on every platform.

use std::f64::consts::PI;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("area must be positive and finite, got {0}")]
    BadArea(f64),
    #[error("annulus radii must satisfy 0 < inner < outer, got inner={inner} outer={outer}")]
    BadRadii { inner: f64, outer: f64 },
    #[error("convex position needs at least 3 points, got {0}")]
    TooFewConvex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Square { area: f64 },
    Disk { area: f64 },
    Convex { area: f64 },
    Annulus { r_outer: f64, r_inner: f64 },
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::Square { area } => write!(f, "square-a{area}"),
            Shape::Disk { area } => write!(f, "disk-a{area}"),
            Shape::Convex { area } => write!(f, "convex-a{area}"),
            Shape::Annulus { r_outer, r_inner } => write!(f, "annulus-r{r_outer}-{r_inner}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub shape: Shape,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(shape: Shape, n: usize, seed: u64) -> Self {
        GenSpec { shape, n, seed }
    }

    pub fn generate(&self) -> Result<Vec<Point>, GenError> {
        match self.shape {
            Shape::Square { area } => gen_square(self.n, area, self.seed),
            Shape::Disk { area } => gen_disk(self.n, area, self.seed),
            Shape::Convex { area } => gen_convex(self.n, area, self.seed),
            Shape::Annulus { r_outer, r_inner } => gen_annulus(self.n, r_outer, r_inner, self.seed),
        }
    }

    /// Instance label used in benchmark output.
    pub fn instance_name(&self) -> String {
        format!("{}-n{}-s{}", self.shape, self.n, self.seed)
    }
}

/// Uniform float in `[0, 1)`.
#[inline]
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_area(area: f64) -> Result<(), GenError> {
    if area > 0.0 && area.is_finite() {
        Ok(())
    } else {
        Err(GenError::BadArea(area))
    }
}

/// `u · side`, kept strictly below `side`.
#[inline]
fn scale_below(u: f64, side: f64) -> f64 {
    let v = u * side;
    if v >= side {
        side.next_down()
    } else {
        v
    }
}

/// `n` uniform points in `[0, √area)²`.
pub fn gen_square(n: usize, area: f64, seed: u64) -> Result<Vec<Point>, GenError> {
    check_area(area)?;
    let side = area.sqrt();
    let mut rng = rng_for(seed);
    Ok((0..n)
        .map(|_| {
            let x = scale_below(unit(&mut rng), side);
            let y = scale_below(unit(&mut rng), side);
            Point::new(x, y)
        })
        .collect())
}

/// `n` uniform points in the origin-centered disk of radius `√(area/π)`.
pub fn gen_disk(n: usize, area: f64, seed: u64) -> Result<Vec<Point>, GenError> {
    check_area(area)?;
    let radius = (area / PI).sqrt();
    let mut rng = rng_for(seed);
    Ok((0..n)
        .map(|_| {
            let r = radius * unit(&mut rng).sqrt();
            let t = 2.0 * PI * unit(&mut rng);
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect())
}

/// `n` area-uniform points in the origin-centered annulus.
pub fn gen_annulus(
    n: usize,
    r_outer: f64,
    r_inner: f64,
    seed: u64,
) -> Result<Vec<Point>, GenError> {
    if !(r_inner > 0.0 && r_inner < r_outer && r_outer.is_finite()) {
        return Err(GenError::BadRadii {
            inner: r_inner,
            outer: r_outer,
        });
    }
    let (a, b) = (r_inner * r_inner, r_outer * r_outer);
    let mut rng = rng_for(seed);
    Ok((0..n)
        .map(|_| {
            let r = (a + unit(&mut rng) * (b - a))
                .sqrt()
                .clamp(r_inner, r_outer);
            let t = 2.0 * PI * unit(&mut rng);
            Point::new(r * t.cos(), r * t.sin())
        })
        .collect())
}

/// Splits sorted coordinates into two monotone chains from min to max and
/// returns the consecutive differences of both; they sum to zero.
fn chain_steps(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| unit(rng)).collect();
    v.sort_unstable_by(f64::total_cmp);
    let (lo, hi) = (v[0], v[n - 1]);
    let mut steps = Vec::with_capacity(n);
    let (mut last_a, mut last_b) = (lo, lo);
    for &c in &v[1..n - 1] {
        if rng.next_u64() & 1 == 0 {
            steps.push(c - last_a);
            last_a = c;
        } else {
            steps.push(last_b - c);
            last_b = c;
        }
    }
    steps.push(hi - last_a);
    steps.push(last_b - hi);
    steps
}

/// `n` points in convex position inside `[0, √area)²`.
///
/// Random x and y coordinates are each split into a rising and a falling
/// chain; the resulting edge vectors are paired at random, sorted by angle
/// and laid end to end, which closes into a convex polygon. The polygon is
/// then scaled and translated into the square.
pub fn gen_convex(n: usize, area: f64, seed: u64) -> Result<Vec<Point>, GenError> {
    check_area(area)?;
    if n < 3 {
        return Err(GenError::TooFewConvex(n));
    }
    let side = area.sqrt();
    let mut rng = rng_for(seed);
    let xs = chain_steps(&mut rng, n);
    let mut ys = chain_steps(&mut rng, n);
    ys.shuffle(&mut rng);

    let mut edges: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
    edges.sort_unstable_by(|a, b| a.1.atan2(a.0).total_cmp(&b.1.atan2(b.0)));

    let mut verts = Vec::with_capacity(n);
    let (mut x, mut y) = (0.0, 0.0);
    for (dx, dy) in edges {
        verts.push(Point::new(x, y));
        x += dx;
        y += dy;
    }

    let (mut xmin, mut ymin, mut xmax, mut ymax) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &verts {
        xmin = xmin.min(p.x);
        ymin = ymin.min(p.y);
        xmax = xmax.max(p.x);
        ymax = ymax.max(p.y);
    }
    let extent = (xmax - xmin).max(ymax - ymin);
    let scale = side * (1.0 - 1e-12) / extent;
    Ok(verts
        .into_iter()
        .map(|p| {
            Point::new(
                scale_below((p.x - xmin) * scale / side, side),
                scale_below((p.y - ymin) * scale / side, side),
            )
        })
        .collect())
}
