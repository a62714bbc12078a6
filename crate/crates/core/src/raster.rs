//! Rectangular complex-plane rasters.
//!
//! Samples sit on the grid `x_j = re_min + j dx`, `y_i = im_max - i dy` with
//! `dx = width_of(rect)/width`, so doubling the resolution keeps every
//! existing sample point. Grid evaluation runs in parallel when the
//! `parallel` feature is on; [`map_grid_seq`] is always available and
//! produces identical output.

use crate::{Error, Result};
use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Closed rectangle in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let all_finite =
            re_min.is_finite() && re_max.is_finite() && im_min.is_finite() && im_max.is_finite();
        if !all_finite || re_min >= re_max || im_min >= im_max {
            return Err(Error::Domain(format!(
                "degenerate rectangle [{re_min}, {re_max}] x [{im_min}, {im_max}]"
            )));
        }
        Ok(Rect {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    /// The square [-1, 1] x [-1, 1].
    pub fn unit_square() -> Self {
        Rect {
            re_min: -1.0,
            re_max: 1.0,
            im_min: -1.0,
            im_max: 1.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }
}

/// The sample point of pixel (row, col); row 0 is the top edge.
pub fn sample_point(rect: Rect, width: usize, height: usize, col: usize, row: usize) -> Complex64 {
    let dx = rect.width() / width as f64;
    let dy = rect.height() / height as f64;
    Complex64::new(
        rect.re_min + col as f64 * dx,
        rect.im_max - row as f64 * dy,
    )
}

/// The pixel whose sample point is nearest to z, if any.
pub fn pixel_of(rect: Rect, width: usize, height: usize, z: Complex64) -> Option<(usize, usize)> {
    let dx = rect.width() / width as f64;
    let dy = rect.height() / height as f64;
    let col = ((z.re - rect.re_min) / dx).round();
    let row = ((rect.im_max - z.im) / dy).round();
    if col < 0.0 || row < 0.0 || col >= width as f64 || row >= height as f64 {
        return None;
    }
    Some((row as usize, col as usize))
}

/// Row-major pixel grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T> Raster<T> {
    pub fn from_fill(width: usize, height: usize, value: T) -> Self
    where
        T: Clone,
    {
        Raster {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.width + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut T {
        &mut self.data[row * self.width + col]
    }

    pub fn pixels(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    /// Applies a pixel-wise transform, keeping the geometry.
    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Raster<U> {
        Raster {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(f).collect(),
        }
    }
}

fn ensure_resolution(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        Err(Error::Domain("raster needs at least one pixel per side".into()))
    } else {
        Ok(())
    }
}

/// Evaluates f on every sample point of the grid, in parallel when built with
/// the `parallel` feature. Output is identical to [`map_grid_seq`].
#[cfg(feature = "parallel")]
pub fn map_grid<T, F>(rect: Rect, width: usize, height: usize, f: F) -> Result<Raster<T>>
where
    T: Send,
    F: Fn(Complex64) -> Result<T> + Sync,
{
    ensure_resolution(width, height)?;
    let data = (0..width * height)
        .into_par_iter()
        .map(|i| f(sample_point(rect, width, height, i % width, i / width)))
        .collect::<Result<Vec<T>>>()?;
    Ok(Raster {
        width,
        height,
        data,
    })
}

#[cfg(not(feature = "parallel"))]
pub fn map_grid<T, F>(rect: Rect, width: usize, height: usize, f: F) -> Result<Raster<T>>
where
    T: Send,
    F: Fn(Complex64) -> Result<T> + Sync,
{
    map_grid_seq(rect, width, height, f)
}

/// Single-threaded grid evaluation.
pub fn map_grid_seq<T, F>(rect: Rect, width: usize, height: usize, f: F) -> Result<Raster<T>>
where
    F: Fn(Complex64) -> Result<T>,
{
    ensure_resolution(width, height)?;
    let data = (0..width * height)
        .map(|i| f(sample_point(rect, width, height, i % width, i / width)))
        .collect::<Result<Vec<T>>>()?;
    Ok(Raster {
        width,
        height,
        data,
    })
}

/// A point set stamped onto a raster in a fixed color.
#[derive(Debug, Clone)]
pub struct Overlay {
    pub points: Vec<Complex64>,
    pub color: [u8; 3],
}

/// Colors the pixel nearest each overlay point; points outside the rectangle
/// are dropped.
pub fn add_overlay(raster: &mut Raster<[u8; 3]>, rect: Rect, overlay: &Overlay) {
    let (width, height) = (raster.width(), raster.height());
    for &z in &overlay.points {
        if let Some((row, col)) = pixel_of(rect, width, height, z) {
            *raster.get_mut(row, col) = overlay.color;
        }
    }
}

/// Affine grayscale for values in [-1, 1]: -1 maps to 0, +1 to 255, rounding
/// half away from zero. The scaled value is quantized at 1e-6 first so that
/// mathematically exact halves land on the tie rule instead of on float noise.
pub fn gray_level(x: f64) -> u8 {
    let scaled = 255.0 * (x.clamp(-1.0, 1.0) + 1.0) / 2.0;
    let quantized = (scaled * 1e6).round() / 1e6;
    quantized.round().clamp(0.0, 255.0) as u8
}

/// Binary PPM bytes (P6, maximum value 255).
pub fn to_ppm(raster: &Raster<[u8; 3]>) -> Vec<u8> {
    let mut bytes = format!("P6\n{} {}\n255\n", raster.width(), raster.height()).into_bytes();
    bytes.reserve(raster.width() * raster.height() * 3);
    for pixel in raster.pixels() {
        bytes.extend_from_slice(pixel);
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_points_nest_across_resolutions() {
        let rect = Rect::unit_square();
        for row in 0..8 {
            for col in 0..8 {
                let coarse = sample_point(rect, 8, 8, col, row);
                let fine = sample_point(rect, 16, 16, 2 * col, 2 * row);
                assert_eq!(coarse, fine);
            }
        }
    }

    #[test]
    fn grid_runs_match_sequential() {
        let rect = Rect::new(-1.0, 0.5, -0.75, 0.75).unwrap();
        let f = |z: Complex64| Ok(if z.norm() < 0.5 { 1u8 } else { 0 });
        let par = map_grid(rect, 20, 10, f).unwrap();
        let seq = map_grid_seq(rect, 20, 10, f).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn grid_errors_propagate() {
        let rect = Rect::unit_square();
        let out = map_grid(rect, 4, 4, |z| {
            if z.re > 0.0 {
                Err(Error::Domain("right half".into()))
            } else {
                Ok(())
            }
        });
        assert!(out.is_err());
        assert_eq!(map_grid(rect, 0, 4, |_| Ok(())).unwrap_err().code(), "domain");
    }

    #[test]
    fn overlay_stamps_nearest_pixel() {
        let rect = Rect::unit_square();
        let mut raster = Raster::from_fill(4, 4, [255u8; 3]);
        let overlay = Overlay {
            points: vec![
                Complex64::new(-1.0, 1.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(5.0, 5.0),
            ],
            color: [0, 0, 0],
        };
        add_overlay(&mut raster, rect, &overlay);
        assert_eq!(*raster.get(0, 0), [0, 0, 0]);
        assert_eq!(*raster.get(2, 2), [0, 0, 0]);
        assert_eq!(raster.pixels().filter(|p| **p == [0, 0, 0]).count(), 2);
    }

    #[test]
    fn gray_levels() {
        assert_eq!(gray_level(-1.0), 0);
        assert_eq!(gray_level(1.0), 255);
        assert_eq!(gray_level(0.0), 128); // 127.5 rounds away from zero
        assert_eq!(gray_level(2.0 / 3.0), 213);
        // quantization protects exact halves from float noise
        assert_eq!(gray_level(2.0 / 3.0 - 5e-17), 213);
        assert_eq!(gray_level(-0.99), 1);
    }

    #[test]
    fn ppm_layout() {
        let mut raster = Raster::from_fill(2, 2, [0u8, 0, 0]);
        *raster.get_mut(0, 1) = [1, 2, 3];
        let bytes = to_ppm(&raster);
        assert_eq!(&bytes[..11], b"P6\n2 2\n255\n");
        assert_eq!(&bytes[11..], &[0, 0, 0, 1, 2, 3, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn degenerate_rectangles_are_rejected() {
        assert!(Rect::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(Rect::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(Rect::new(f64::NAN, 1.0, 0.0, 1.0).is_err());
    }
}
