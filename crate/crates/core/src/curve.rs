//! Closed polylines with fast winding-number and distance queries.
//!
//! Membership in the region bounded by a parameter curve is decided by the
//! winding number of the sampled curve around the query point; this stays
//! robust near cusps where radial solves lose accuracy. Segments are bucketed
//! by their vertical span so a winding query only inspects segments whose
//! y-interval contains the query, and sample points are bucketed into a
//! uniform grid so near-curve distance queries stay local.

use crate::complex::ensure_finite;
use crate::{Error, Result};
use num_complex::Complex64;

/// Closed curve given by uniformly dense samples and their parameter values.
#[derive(Debug, Clone)]
pub struct ClosedPolyline {
    points: Vec<Complex64>,
    params: Vec<f64>,
}

impl ClosedPolyline {
    /// The final point connects back to the first; at least three points.
    pub fn new(points: Vec<Complex64>, params: Vec<f64>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::Domain(format!(
                "a closed polyline needs at least 3 points, got {}",
                points.len()
            )));
        }
        if points.len() != params.len() {
            return Err(Error::Domain(
                "points and parameter values must have equal length".into(),
            ));
        }
        for &p in &points {
            ensure_finite(p, "polyline point")?;
        }
        Ok(ClosedPolyline { points, params })
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Nearest-point result of a distance query.
#[derive(Debug, Clone, Copy)]
pub struct NearestPoint {
    /// Distance from the query to the nearest polyline segment.
    pub distance: f64,
    /// Parameter value of the nearest sample point.
    pub param: f64,
}

/// Query structure over a [`ClosedPolyline`].
#[derive(Debug)]
pub struct PolylineIndex {
    line: ClosedPolyline,
    // bounding box
    x_lo: f64,
    x_hi: f64,
    y_lo: f64,
    y_hi: f64,
    // segments bucketed by y-interval
    bin_width: f64,
    bins: Vec<Vec<u32>>,
    // sample points bucketed into a square grid, CSR layout
    cell: f64,
    nx: usize,
    ny: usize,
    cell_start: Vec<u32>,
    cell_points: Vec<u32>,
    // twice the largest sample gap: how far the nearest segment can undercut
    // the nearest sample point
    slack: f64,
}

const Y_BINS: usize = 4096;
const GRID_CELLS: usize = 512;

impl PolylineIndex {
    pub fn new(line: ClosedPolyline) -> Self {
        let xs = line.points().iter().map(|p| p.re);
        let ys = line.points().iter().map(|p| p.im);
        let x_lo = xs.clone().fold(f64::INFINITY, f64::min);
        let x_hi = xs.fold(f64::NEG_INFINITY, f64::max);
        let y_lo = ys.clone().fold(f64::INFINITY, f64::min);
        let y_hi = ys.fold(f64::NEG_INFINITY, f64::max);

        let n = line.len();
        let height = (y_hi - y_lo).max(1e-9);
        let bin_width = height / Y_BINS as f64;
        let mut bins = vec![Vec::new(); Y_BINS];
        for i in 0..n {
            let a = line.points()[i].im;
            let b = line.points()[(i + 1) % n].im;
            let lo = ((a.min(b) - y_lo) / bin_width).floor().max(0.0) as usize;
            let hi = (((a.max(b) - y_lo) / bin_width).floor() as usize).min(Y_BINS - 1);
            for bin in bins.iter_mut().take(hi + 1).skip(lo) {
                bin.push(i as u32);
            }
        }

        let extent = (x_hi - x_lo).max(y_hi - y_lo).max(1e-6);
        let cell = extent / GRID_CELLS as f64;
        let nx = ((x_hi - x_lo) / cell).ceil() as usize + 1;
        let ny = ((y_hi - y_lo) / cell).ceil() as usize + 1;
        let cell_of = |p: Complex64| -> usize {
            let cx = (((p.re - x_lo) / cell) as usize).min(nx - 1);
            let cy = (((p.im - y_lo) / cell) as usize).min(ny - 1);
            cy * nx + cx
        };
        let mut counts = vec![0u32; nx * ny + 1];
        for &p in line.points() {
            counts[cell_of(p) + 1] += 1;
        }
        for k in 1..counts.len() {
            counts[k] += counts[k - 1];
        }
        let mut cell_points = vec![0u32; n];
        let mut cursor = counts.clone();
        for (i, &p) in line.points().iter().enumerate() {
            let c = cell_of(p);
            cell_points[cursor[c] as usize] = i as u32;
            cursor[c] += 1;
        }

        let slack = 2.0
            * (0..n)
                .map(|i| (line.points()[(i + 1) % n] - line.points()[i]).norm())
                .fold(0.0, f64::max);

        PolylineIndex {
            line,
            x_lo,
            x_hi,
            y_lo,
            y_hi,
            bin_width,
            bins,
            cell,
            nx,
            ny,
            cell_start: counts,
            cell_points,
            slack,
        }
    }

    pub fn line(&self) -> &ClosedPolyline {
        &self.line
    }

    /// Signed winding number of the curve around `z`, by counting signed
    /// crossings of the horizontal ray to the right of `z`.
    pub fn winding_number(&self, z: Complex64) -> i32 {
        if z.im < self.y_lo || z.im > self.y_hi {
            return 0;
        }
        let bin = (((z.im - self.y_lo) / self.bin_width) as usize).min(Y_BINS - 1);
        let pts = self.line.points();
        let n = pts.len();
        let mut winding = 0;
        for &si in &self.bins[bin] {
            let p = pts[si as usize];
            let q = pts[(si as usize + 1) % n];
            if (p.im <= z.im) != (q.im <= z.im) {
                let t = (z.im - p.im) / (q.im - p.im);
                let x = p.re + t * (q.re - p.re);
                if x > z.re {
                    winding += if q.im > p.im { 1 } else { -1 };
                }
            }
        }
        winding
    }

    /// Distance to the nearest segment, or `None` when it exceeds `cutoff`.
    pub fn nearest_within(&self, z: Complex64, cutoff: f64) -> Option<NearestPoint> {
        if z.re < self.x_lo - cutoff
            || z.re > self.x_hi + cutoff
            || z.im < self.y_lo - cutoff
            || z.im > self.y_hi + cutoff
        {
            return None;
        }
        let pts = self.line.points();
        let n = pts.len();
        let slack = self.slack;

        let cx = (((z.re - self.x_lo) / self.cell).floor()).clamp(0.0, (self.nx - 1) as f64) as isize;
        let cy = (((z.im - self.y_lo) / self.cell).floor()).clamp(0.0, (self.ny - 1) as f64) as isize;
        let ring_max = ((cutoff + slack) / self.cell).ceil() as isize + 1;

        let mut best = f64::INFINITY;
        let mut best_idx = None;
        let mut candidates: Vec<u32> = Vec::new();
        for ring in 0..=ring_max {
            if (ring - 1) as f64 * self.cell > best.min(cutoff) + slack {
                break;
            }
            self.for_ring_cells(cx, cy, ring, |idx| {
                candidates.push(idx);
                let d = (pts[idx as usize] - z).norm();
                if d < best {
                    best = d;
                    best_idx = Some(idx);
                }
            });
        }
        let best_idx = best_idx?;
        if best > cutoff + slack {
            return None;
        }

        // distance refined over segments adjacent to nearby samples; the
        // reported parameter is that of the nearest sample point
        let mut nearest = f64::INFINITY;
        for &idx in &candidates {
            let i = idx as usize;
            if (pts[i] - z).norm() > best + slack {
                continue;
            }
            let prev = (i + n - 1) % n;
            let next = (i + 1) % n;
            nearest = nearest
                .min(segment_distance(z, pts[prev], pts[i]))
                .min(segment_distance(z, pts[i], pts[next]));
        }
        if nearest <= cutoff {
            Some(NearestPoint {
                distance: nearest,
                param: self.line.params()[best_idx as usize],
            })
        } else {
            None
        }
    }

    fn for_ring_cells(&self, cx: isize, cy: isize, ring: isize, mut visit: impl FnMut(u32)) {
        let mut visit_cell = |x: isize, y: isize| {
            if x < 0 || y < 0 || x >= self.nx as isize || y >= self.ny as isize {
                return;
            }
            let c = y as usize * self.nx + x as usize;
            let lo = self.cell_start[c] as usize;
            let hi = self.cell_start[c + 1] as usize;
            for &idx in &self.cell_points[lo..hi] {
                visit(idx);
            }
        };
        if ring == 0 {
            visit_cell(cx, cy);
            return;
        }
        for x in (cx - ring)..=(cx + ring) {
            visit_cell(x, cy - ring);
            visit_cell(x, cy + ring);
        }
        for y in (cy - ring + 1)..(cy + ring) {
            visit_cell(cx - ring, y);
            visit_cell(cx + ring, y);
        }
    }
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len_sq).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}
