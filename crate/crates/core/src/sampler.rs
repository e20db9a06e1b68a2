//! Numerical coamoebas of complex plane curves.
//!
//! The sampler walks a grid in `(log|z|, arg z)`, solves the univariate
//! polynomial `f(z, ·)` at every grid point with a simultaneous-iteration
//! root finder, filters roots through a backward-error residual test, and
//! marks the argument pairs `(arg z, arg w)` in a boolean raster over the
//! fundamental domain `[0, 2π)²` with torus topology. On top of the raster:
//! connected-component counting of the complement (after one morphological
//! closing to seal sampling pinholes) and the flat-torus Hausdorff distance
//! between rasters.
//!
//! The rescaling `H_t` (modulus ↦ modulus^{-1/log t}, argument fixed) and
//! the maximally sparse coefficient family `a ↦ a·(e·t)^{-log‖a‖}` drive the
//! degeneration of an honest curve towards its complex tropical limit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::angle::TAU;
use crate::newton;
use crate::poly::ComplexPolynomial2;

mod roots;

pub use roots::polynomial_roots;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("monomials define no curve in the torus")]
    EmptyCurve,
    #[error("parameter {0} outside its range")]
    OutOfRange(f64),
    #[error("support is not the vertex set of the Newton polytope")]
    NotMaximallySparse,
    #[error("raster sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("empty raster where marks are required")]
    EmptyInput,
    #[error("bad sample configuration: {0}")]
    BadConfig(String),
    #[error("bad raster data: {0}")]
    BadRaster(String),
}

// ---------------------------------------------------------------------------
// Torus rasters
// ---------------------------------------------------------------------------

/// Boolean occupancy grid over `[0, 2π)²`; cell `(i, j)` is centered at
/// `(2π(i+½)/R, 2π(j+½)/R)` and adjacency wraps around.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRaster {
    size: usize,
    cells: Vec<bool>,
}

impl TorusRaster {
    pub fn new(size: usize) -> Self {
        TorusRaster {
            size,
            cells: vec![false; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.size + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[self.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let at = self.idx(i, j);
        self.cells[at] = value;
    }

    /// Cell index of an angle in `[0, 2π)`.
    pub fn cell_of(&self, theta: f64) -> usize {
        let t = crate::angle::wrap(theta);
        ((t / TAU * self.size as f64) as usize).min(self.size - 1)
    }

    /// Center angles of a cell.
    pub fn center(&self, i: usize, j: usize) -> [f64; 2] {
        [
            TAU * (i as f64 + 0.5) / self.size as f64,
            TAU * (j as f64 + 0.5) / self.size as f64,
        ]
    }

    pub fn mark_angles(&mut self, theta1: f64, theta2: f64) {
        let i = self.cell_of(theta1);
        let j = self.cell_of(theta2);
        self.set(i, j, true);
    }

    pub fn marked_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn fraction(&self) -> f64 {
        self.marked_count() as f64 / (self.size * self.size) as f64
    }

    pub fn iter_marked(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(k, _)| (k % n, k / n))
    }

    /// Dilation by the 4-neighbour cross, torus wrap.
    pub fn dilate(&self) -> TorusRaster {
        let n = self.size;
        let mut out = TorusRaster::new(n);
        for j in 0..n {
            for i in 0..n {
                if self.get(i, j) {
                    out.set(i, j, true);
                    out.set((i + 1) % n, j, true);
                    out.set((i + n - 1) % n, j, true);
                    out.set(i, (j + 1) % n, true);
                    out.set(i, (j + n - 1) % n, true);
                }
            }
        }
        out
    }

    /// Erosion by the 4-neighbour cross, torus wrap.
    pub fn erode(&self) -> TorusRaster {
        let n = self.size;
        let mut out = TorusRaster::new(n);
        for j in 0..n {
            for i in 0..n {
                let keep = self.get(i, j)
                    && self.get((i + 1) % n, j)
                    && self.get((i + n - 1) % n, j)
                    && self.get(i, (j + 1) % n)
                    && self.get(i, (j + n - 1) % n);
                out.set(i, j, keep);
            }
        }
        out
    }

    /// One morphological closing (dilate then erode).
    pub fn closing(&self) -> TorusRaster {
        self.dilate().erode()
    }

    /// Reflect the second angle: `(θ1, θ2) ↦ (θ1, 2π - θ2)`; exact on cell
    /// centers.
    pub fn reflect_theta2(&self) -> TorusRaster {
        let n = self.size;
        let mut out = TorusRaster::new(n);
        for j in 0..n {
            for i in 0..n {
                if self.get(i, j) {
                    out.set(i, n - 1 - j, true);
                }
            }
        }
        out
    }

    /// Fraction of cells with equal occupancy.
    pub fn agreement(&self, other: &TorusRaster) -> Result<f64, SamplerError> {
        if self.size != other.size {
            return Err(SamplerError::SizeMismatch(self.size, other.size));
        }
        let same = self
            .cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a == b)
            .count();
        Ok(same as f64 / self.cells.len() as f64)
    }

    // -- PGM (P5) ----------------------------------------------------------

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.size, self.size).into_bytes();
        for j in 0..self.size {
            for i in 0..self.size {
                out.push(if self.get(i, j) { 255 } else { 0 });
            }
        }
        out
    }

    pub fn from_pgm(data: &[u8]) -> Result<TorusRaster, SamplerError> {
        let bad = |m: &str| SamplerError::BadRaster(m.to_string());
        let mut fields: Vec<&[u8]> = Vec::new();
        let mut pos = 0usize;
        while fields.len() < 4 && pos < data.len() {
            while pos < data.len() && data[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < data.len() && data[pos] == b'#' {
                while pos < data.len() && data[pos] != b'\n' {
                    pos += 1;
                }
                continue;
            }
            let start = pos;
            while pos < data.len() && !data[pos].is_ascii_whitespace() {
                pos += 1;
            }
            fields.push(&data[start..pos]);
        }
        if fields.len() < 4 || fields[0] != b"P5" {
            return Err(bad("expected binary PGM (P5)"));
        }
        let parse = |f: &[u8]| -> Result<usize, SamplerError> {
            std::str::from_utf8(f)
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("bad header field"))
        };
        let w = parse(fields[1])?;
        let h = parse(fields[2])?;
        let maxval = parse(fields[3])?;
        if w != h {
            return Err(bad("raster must be square"));
        }
        if maxval != 255 {
            return Err(bad("expected maxval 255"));
        }
        pos += 1; // single whitespace after maxval
        if data.len() < pos + w * h {
            return Err(bad("truncated pixel data"));
        }
        let mut raster = TorusRaster::new(w);
        for j in 0..h {
            for i in 0..w {
                if data[pos + j * w + i] >= 128 {
                    raster.set(i, j, true);
                }
            }
        }
        Ok(raster)
    }
}

/// Summary statistics exported next to a raster.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RasterSummary {
    pub size: usize,
    pub fraction: f64,
    pub components: usize,
}

// ---------------------------------------------------------------------------
// Sampling configuration
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleConfig {
    /// Range of `log|z|`.
    pub log_modulus_range: (f64, f64),
    /// Number of modulus samples.
    pub modulus_count: usize,
    /// Number of argument samples.
    pub argument_count: usize,
    /// Raster side length.
    pub raster_size: usize,
    /// Relative residual acceptance threshold for roots.
    pub root_tolerance: f64,
    pub seed: u64,
    /// Worker threads; results are identical for any value.
    pub threads: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            log_modulus_range: (-6.0, 6.0),
            modulus_count: 512,
            argument_count: 512,
            raster_size: 512,
            root_tolerance: 1e-8,
            seed: 0,
            threads: 1,
        }
    }
}

impl SampleConfig {
    fn validate(&self) -> Result<(), SamplerError> {
        if self.modulus_count < 16 || self.argument_count < 16 {
            return Err(SamplerError::BadConfig(
                "grid needs at least 16 samples per axis".into(),
            ));
        }
        if self.raster_size < 128 {
            return Err(SamplerError::BadConfig("raster size below 128".into()));
        }
        if !(self.root_tolerance > 0.0 && self.root_tolerance <= 1e-6) {
            return Err(SamplerError::BadConfig(
                "root tolerance must lie in (0, 1e-6]".into(),
            ));
        }
        if self.log_modulus_range.0 >= self.log_modulus_range.1 {
            return Err(SamplerError::BadConfig("empty modulus range".into()));
        }
        if self.threads == 0 {
            return Err(SamplerError::BadConfig("need at least one thread".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Coamoeba sampling
// ---------------------------------------------------------------------------

struct CompiledTerm {
    z_exp: i64,
    w_exp: i64,
    coeff: Complex64,
}

fn compile(f: &ComplexPolynomial2) -> Vec<CompiledTerm> {
    f.terms()
        .iter()
        .map(|(alpha, &coeff)| {
            let c = alpha.to_i64s().expect("desk-scale exponents");
            CompiledTerm {
                z_exp: c[0],
                w_exp: c[1],
                coeff,
            }
        })
        .collect()
}

/// `z^k` for `z = e^{m + iφ}` without overflow surprises.
fn z_pow(m: f64, phi: f64, k: i64) -> Complex64 {
    Complex64::from_polar((k as f64 * m).exp(), k as f64 * phi)
}

/// Sample the coamoeba of `f` over the grid in `cfg`. A polynomial that does
/// not depend on the second variable is sampled with the variable roles
/// swapped; a monomial is rejected.
pub fn sample_coamoeba(
    f: &ComplexPolynomial2,
    cfg: &SampleConfig,
) -> Result<TorusRaster, SamplerError> {
    cfg.validate()?;
    if f.terms().len() == 1 {
        return Err(SamplerError::EmptyCurve);
    }
    let terms = compile(f);
    let w_min = terms.iter().map(|t| t.w_exp).min().expect("nonempty");
    let w_max = terms.iter().map(|t| t.w_exp).max().expect("nonempty");
    if w_min == w_max {
        // Swap the roles of the variables and transpose the raster back.
        let swapped = ComplexPolynomial2::new(
            f.terms()
                .iter()
                .map(|(alpha, &c)| {
                    let xs = alpha.to_i64s().expect("desk-scale exponents");
                    (crate::lattice::LatticePoint::from_i64s(&[xs[1], xs[0]]), c)
                })
                .collect(),
        )
        .expect("same coefficients");
        let raster = sample_coamoeba(&swapped, cfg)?;
        let mut out = TorusRaster::new(raster.size());
        for (i, j) in raster.iter_marked() {
            out.set(j, i, true);
        }
        return Ok(out);
    }

    let degree_span = (w_max - w_min) as usize;
    let n = cfg.raster_size;
    let cell = |t: f64| -> usize {
        let t = crate::angle::wrap(t);
        ((t / TAU * n as f64) as usize).min(n - 1)
    };

    // One argument column is one work unit: along the modulus sweep the
    // accepted roots move continuously in `arg w` (away from collisions).
    // Wherever consecutive sweep steps jump farther than the threshold the
    // interval is bisected (fresh root solves, bounded depth); the remaining
    // short jumps are joined by their circular arc — on a fixed column that
    // arc consists of genuine curve points by the intermediate value theorem.
    let arc_threshold = std::f64::consts::FRAC_PI_8;
    let max_refine_depth = 10u32;
    let run_column = |ki: usize| -> Vec<(usize, usize)> {
        // Arguments are sampled on the grid lines (real loci of real-
        // coefficient curves lie exactly there); the column index is computed
        // in integer arithmetic so float rounding cannot shift grid columns
        // across raster cell boundaries.
        let phi = TAU * ki as f64 / cfg.argument_count as f64;
        let i_cell = (ki * n / cfg.argument_count).min(n - 1);
        let (m0, m1) = cfg.log_modulus_range;
        let mut marks: Vec<(usize, usize)> = Vec::new();

        let solve_at = |m: f64, tag: u64, marks: &mut Vec<(usize, usize)>| -> Vec<f64> {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); degree_span + 1];
            for t in &terms {
                coeffs[(t.w_exp - w_min) as usize] += t.coeff * z_pow(m, phi, t.z_exp);
            }
            let found = polynomial_roots(&coeffs, cfg.seed ^ tag);
            let mut args: Vec<f64> = Vec::with_capacity(found.len());
            for w in found {
                if w.norm() == 0.0 || !w.is_finite() {
                    continue;
                }
                // Backward-error residual acceptance.
                let mut value = Complex64::new(0.0, 0.0);
                let mut scale = 0.0f64;
                let mut pw = Complex64::new(1.0, 0.0);
                for c in &coeffs {
                    value += c * pw;
                    scale += c.norm() * pw.norm();
                    pw *= w;
                }
                if scale == 0.0 || value.norm() > cfg.root_tolerance.max(1e-10) * scale {
                    continue;
                }
                marks.push((i_cell, cell(w.arg())));
                args.push(w.arg());
            }
            args
        };

        // Largest circular jump under greedy nearest matching, with the arcs
        // that realize it.
        let matched_arcs = |from: &[f64], to: &[f64]| -> Vec<(f64, f64)> {
            let mut free = from.to_vec();
            let mut arcs = Vec::new();
            for &a in to {
                let Some((best_idx, best_d)) = free
                    .iter()
                    .enumerate()
                    .map(|(idx, &p)| (idx, crate::angle::circle_dist(a, p)))
                    .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite angles"))
                else {
                    continue;
                };
                let start = free.swap_remove(best_idx);
                let _ = best_d;
                arcs.push((start, a));
            }
            arcs
        };

        let fill_arc = |start: f64, end: f64, marks: &mut Vec<(usize, usize)>| {
            let d = crate::angle::circle_dist(end, start);
            let steps = (d / (TAU / n as f64)).ceil() as usize;
            let dir = crate::angle::wrap_signed(end - start);
            for s in 1..steps {
                marks.push((i_cell, cell(start + dir * s as f64 / steps as f64)));
            }
        };

        // Depth-first refinement between two solved sweep positions.
        struct Frame {
            m_lo: f64,
            args_lo: Vec<f64>,
            m_hi: f64,
            args_hi: Vec<f64>,
            depth: u32,
        }
        let refine = |frame: Frame, marks: &mut Vec<(usize, usize)>| {
            let mut stack = vec![frame];
            while let Some(f) = stack.pop() {
                let arcs = matched_arcs(&f.args_lo, &f.args_hi);
                let widest = arcs
                    .iter()
                    .map(|(a, b)| crate::angle::circle_dist(*a, *b))
                    .fold(0.0f64, f64::max);
                if widest <= arc_threshold || f.depth == 0 {
                    for (a, b) in arcs {
                        if crate::angle::circle_dist(a, b) <= arc_threshold {
                            fill_arc(a, b, marks);
                        }
                    }
                    continue;
                }
                let m_mid = 0.5 * (f.m_lo + f.m_hi);
                let tag = (ki as u64) << 40 ^ m_mid.to_bits();
                let args_mid = solve_at(m_mid, tag, marks);
                stack.push(Frame {
                    m_lo: f.m_lo,
                    args_lo: f.args_lo,
                    m_hi: m_mid,
                    args_hi: args_mid.clone(),
                    depth: f.depth - 1,
                });
                stack.push(Frame {
                    m_lo: m_mid,
                    args_lo: args_mid,
                    m_hi: f.m_hi,
                    args_hi: f.args_hi,
                    depth: f.depth - 1,
                });
            }
        };

        let mut previous: Option<(f64, Vec<f64>)> = None;
        for mi in 0..cfg.modulus_count {
            let m = m0 + (m1 - m0) * (mi as f64 + 0.5) / cfg.modulus_count as f64;
            let args = solve_at(m, ((ki as u64) << 32) | mi as u64, &mut marks);
            if let Some((m_prev, args_prev)) = previous.take() {
                refine(
                    Frame {
                        m_lo: m_prev,
                        args_lo: args_prev,
                        m_hi: m,
                        args_hi: args.clone(),
                        depth: max_refine_depth,
                    },
                    &mut marks,
                );
            }
            previous = Some((m, args));
        }
        marks.sort_unstable();
        marks.dedup();
        marks
    };

    let columns: Vec<usize> = (0..cfg.argument_count).collect();
    let per_column: Vec<Vec<(usize, usize)>> = if cfg.threads <= 1 {
        columns.iter().map(|&ki| run_column(ki)).collect()
    } else {
        let workers = cfg.threads.min(columns.len());
        let mut results: Vec<Option<Vec<(usize, usize)>>> = vec![None; columns.len()];
        std::thread::scope(|scope| {
            let chunks: Vec<Vec<usize>> = (0..workers)
                .map(|w| columns.iter().copied().skip(w).step_by(workers).collect())
                .collect();
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    let run_column = &run_column;
                    scope.spawn(move || {
                        chunk
                            .into_iter()
                            .map(|ki| (ki, run_column(ki)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                for (ki, marks) in handle.join().expect("sampler worker panicked") {
                    results[ki] = Some(marks);
                }
            }
        });
        results
            .into_iter()
            .map(|r| r.expect("all columns run"))
            .collect()
    };

    let mut raster = TorusRaster::new(cfg.raster_size);
    for marks in per_column {
        for (i, j) in marks {
            raster.set(i, j, true);
        }
    }
    Ok(raster)
}

// ---------------------------------------------------------------------------
// Rescaling and the maximally sparse family
// ---------------------------------------------------------------------------

/// `H_t`: every modulus is raised to `-1/log t`, arguments are untouched.
/// Defined for `t ∈ (0, 1/e]`; `t = 1/e` is the identity.
pub fn ht_rescale(p: &[Complex64], t: f64) -> Result<Vec<Complex64>, SamplerError> {
    if !(t > 0.0 && t <= (-1.0f64).exp()) {
        return Err(SamplerError::OutOfRange(t));
    }
    let e = -1.0 / t.ln();
    p.iter()
        .map(|z| {
            if z.norm() == 0.0 {
                return Err(SamplerError::EmptyCurve);
            }
            Ok(Complex64::from_polar(z.norm().powf(e), z.arg()))
        })
        .collect()
}

/// The coefficient family of a maximally sparse polynomial:
/// `a ↦ a · (e·t)^{-log‖a‖}`. At `t = 1/e` the factor is 1.
pub fn ft_family(f: &ComplexPolynomial2, t: f64) -> Result<ComplexPolynomial2, SamplerError> {
    if !(t > 0.0 && t <= (-1.0f64).exp()) {
        return Err(SamplerError::OutOfRange(t));
    }
    let support = f.support();
    let polytope = newton::convex_hull(&support).map_err(|_| SamplerError::EmptyCurve)?;
    if polytope.vertices != support {
        return Err(SamplerError::NotMaximallySparse);
    }
    let base = (1.0f64.exp() * t).ln();
    Ok(f.map_coefficients(|_, a| {
        let factor = (-a.norm().ln() * base).exp();
        a * factor
    }))
}

// ---------------------------------------------------------------------------
// Component counting and Hausdorff distance
// ---------------------------------------------------------------------------

/// Number of connected components of the unmarked cells (4-adjacency with
/// wraparound) after one morphological closing of the marked set.
pub fn complement_components(raster: &TorusRaster) -> usize {
    let closed = raster.closing();
    let n = closed.size();
    let mut seen = vec![false; n * n];
    let mut components = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for j0 in 0..n {
        for i0 in 0..n {
            if closed.get(i0, j0) || seen[j0 * n + i0] {
                continue;
            }
            components += 1;
            seen[j0 * n + i0] = true;
            stack.push((i0, j0));
            while let Some((i, j)) = stack.pop() {
                for (ni, nj) in [
                    ((i + 1) % n, j),
                    ((i + n - 1) % n, j),
                    (i, (j + 1) % n),
                    (i, (j + n - 1) % n),
                ] {
                    if !closed.get(ni, nj) && !seen[nj * n + ni] {
                        seen[nj * n + ni] = true;
                        stack.push((ni, nj));
                    }
                }
            }
        }
    }
    components
}

/// Hausdorff distance between the marked sets of two equal-size rasters in
/// the flat torus metric on cell centers.
pub fn raster_hausdorff(a: &TorusRaster, b: &TorusRaster) -> Result<f64, SamplerError> {
    if a.size() != b.size() {
        return Err(SamplerError::SizeMismatch(a.size(), b.size()));
    }
    if a.marked_count() == 0 || b.marked_count() == 0 {
        return Err(SamplerError::EmptyInput);
    }
    let d1 = directed_hausdorff(a, b);
    let d2 = directed_hausdorff(b, a);
    Ok(d1.max(d2))
}

fn directed_hausdorff(from: &TorusRaster, to: &TorusRaster) -> f64 {
    let n = from.size() as i64;
    let cell = TAU / n as f64;
    let mut worst = 0.0f64;
    for (i, j) in from.iter_marked() {
        // Expanding Chebyshev rings; keep scanning until no closer cell can
        // exist.
        let mut best: Option<f64> = None;
        let mut ring = 0i64;
        loop {
            let mut found_this_ring = false;
            let scan = |di: i64, dj: i64, best: &mut Option<f64>, found: &mut bool| {
                let ni = (i as i64 + di).rem_euclid(n) as usize;
                let nj = (j as i64 + dj).rem_euclid(n) as usize;
                if to.get(ni, nj) {
                    let dx = di.unsigned_abs().min((n - di.abs()).unsigned_abs()) as f64;
                    let dy = dj.unsigned_abs().min((n - dj.abs()).unsigned_abs()) as f64;
                    let d = cell * (dx * dx + dy * dy).sqrt();
                    if best.is_none() || d < best.unwrap() {
                        *best = Some(d);
                    }
                    *found = true;
                }
            };
            if ring == 0 {
                scan(0, 0, &mut best, &mut found_this_ring);
            } else {
                for d in -ring..=ring {
                    scan(d, -ring, &mut best, &mut found_this_ring);
                    scan(d, ring, &mut best, &mut found_this_ring);
                }
                for d in (-ring + 1)..ring {
                    scan(-ring, d, &mut best, &mut found_this_ring);
                    scan(ring, d, &mut best, &mut found_this_ring);
                }
            }
            if let Some(b) = best {
                // A ring at distance r contains only cells at metric >= r·cell.
                if (ring as f64) * cell > b || ring > n / 2 {
                    break;
                }
            }
            if ring > n / 2 {
                break;
            }
            ring += 1;
            let _ = found_this_ring;
        }
        if let Some(b) = best {
            if b > worst {
                worst = b;
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coamoeba::line_coamoeba_membership;

    fn line_polynomial() -> ComplexPolynomial2 {
        ComplexPolynomial2::from_i64_terms(&[
            ((0, 0), Complex64::new(1.0, 0.0)),
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((0, 1), Complex64::new(1.0, 0.0)),
        ])
    }

    fn small_cfg() -> SampleConfig {
        SampleConfig {
            modulus_count: 192,
            argument_count: 192,
            raster_size: 128,
            ..SampleConfig::default()
        }
    }

    #[test]
    fn ht_examples() {
        let inv_e = (-1.0f64).exp();
        let p = vec![Complex64::new(4.0, 0.0), Complex64::new(0.0, 1.0)];
        let id = ht_rescale(&p, inv_e).unwrap();
        assert!((id[0] - p[0]).norm() < 1e-12);
        assert!((id[1] - p[1]).norm() < 1e-12);

        let q = ht_rescale(&p, (-2.0f64).exp()).unwrap();
        assert!((q[0].norm() - 2.0).abs() < 1e-12);
        assert!((q[1].norm() - 1.0).abs() < 1e-12);
        assert!((q[0].arg() - p[0].arg()).abs() < 1e-12);
        assert!((q[1].arg() - p[1].arg()).abs() < 1e-12);

        assert!(matches!(
            ht_rescale(&p, 0.9),
            Err(SamplerError::OutOfRange(_))
        ));
    }

    #[test]
    fn ft_examples() {
        let inv_e = (-1.0f64).exp();
        let f = ComplexPolynomial2::from_i64_terms(&[
            ((0, 0), Complex64::new(1.0, 0.0)),
            ((1, 0), Complex64::new(2.0f64.exp(), 0.0)),
            ((0, 1), Complex64::new(1.0, 0.0)),
        ]);
        let same = ft_family(&f, inv_e).unwrap();
        assert_eq!(same, f);

        // Unit moduli never move.
        let unit = line_polynomial();
        assert_eq!(ft_family(&unit, 0.05).unwrap(), unit);

        // ‖a‖ = e² at t = e^{-3} picks up (e^{-2})^{-2} = e^4.
        let moved = ft_family(&f, (-3.0f64).exp()).unwrap();
        let c = moved.terms()[&crate::lattice::LatticePoint::from_i64s(&[1, 0])];
        assert!((c.norm().ln() - 6.0).abs() < 1e-9);

        let sparse_fail = ComplexPolynomial2::from_i64_terms(&[
            ((0, 0), Complex64::new(1.0, 0.0)),
            ((2, 0), Complex64::new(1.0, 0.0)),
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((0, 1), Complex64::new(1.0, 0.0)),
        ]);
        assert!(matches!(
            ft_family(&sparse_fail, 0.05),
            Err(SamplerError::NotMaximallySparse)
        ));
    }

    #[test]
    fn sampled_line_matches_the_exact_coamoeba() {
        let raster = sample_coamoeba(&line_polynomial(), &small_cfg()).unwrap();
        let fraction = raster.fraction();
        assert!(
            (fraction - 0.25).abs() < 0.03,
            "line coamoeba fraction {fraction}"
        );

        // Every marked cell center is within two cells of the closed set.
        let n = raster.size();
        let tol = 2.5 * TAU / n as f64;
        let mut bad = 0;
        for (i, j) in raster.iter_marked() {
            let c = raster.center(i, j);
            let mut ok = line_coamoeba_membership(&c, true).unwrap();
            if !ok {
                'probe: for di in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                    for dj in [-2.0, -1.0, 0.0, 1.0, 2.0] {
                        let p = [c[0] + di * tol / 2.5, c[1] + dj * tol / 2.5];
                        if line_coamoeba_membership(&p, true).unwrap() {
                            ok = true;
                            break 'probe;
                        }
                    }
                }
            }
            if !ok {
                bad += 1;
            }
        }
        assert_eq!(bad, 0, "{bad} marked cells far from the exact set");
    }

    #[test]
    fn line_fraction_at_reference_grid() {
        // Occupancy of the sampled line coamoeba at the reference grid:
        // a quarter of the torus, like the exact membership set.
        let cfg = SampleConfig {
            raster_size: 512,
            modulus_count: 512,
            argument_count: 512,
            threads: 4,
            ..SampleConfig::default()
        };
        let raster = sample_coamoeba(&line_polynomial(), &cfg).unwrap();
        let fraction = raster.fraction();
        assert!((fraction - 0.25).abs() < 0.02, "fraction {fraction}");
    }

    #[test]
    fn sampling_errors() {
        let monomial = ComplexPolynomial2::from_i64_terms(&[((1, 1), Complex64::new(1.0, 0.0))]);
        assert!(matches!(
            sample_coamoeba(&monomial, &small_cfg()),
            Err(SamplerError::EmptyCurve)
        ));

        let mut cfg = small_cfg();
        cfg.raster_size = 64;
        assert!(matches!(
            sample_coamoeba(&line_polynomial(), &cfg),
            Err(SamplerError::BadConfig(_))
        ));
    }

    #[test]
    fn degenerate_w_swaps_roles() {
        // 1 + z + z², no w dependence: vertical argument lines.
        let f = ComplexPolynomial2::from_i64_terms(&[
            ((0, 0), Complex64::new(1.0, 0.0)),
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((2, 0), Complex64::new(1.0, 0.0)),
        ]);
        let raster = sample_coamoeba(&f, &small_cfg()).unwrap();
        assert!(raster.marked_count() > 0);
        // Roots of 1 + z + z² are at arguments ±2π/3; every marked cell sits
        // in one of those two columns, any row.
        let n = raster.size();
        let expect1 = raster.cell_of(2.0 * std::f64::consts::PI / 3.0);
        let expect2 = raster.cell_of(4.0 * std::f64::consts::PI / 3.0);
        for (i, j) in raster.iter_marked() {
            assert!(
                (i as i64 - expect1 as i64).abs() <= 1 || (i as i64 - expect2 as i64).abs() <= 1,
                "unexpected column {i} (rows free: {j}, n = {n})"
            );
        }
    }

    #[test]
    fn thread_counts_agree() {
        let f = line_polynomial();
        let mut cfg = small_cfg();
        cfg.modulus_count = 64;
        cfg.argument_count = 64;
        let one = sample_coamoeba(&f, &cfg).unwrap();
        cfg.threads = 8;
        let eight = sample_coamoeba(&f, &cfg).unwrap();
        assert_eq!(one, eight);
    }

    #[test]
    fn component_examples() {
        let empty = TorusRaster::new(128);
        assert_eq!(complement_components(&empty), 1);

        // Exact-predicate raster of the line coamoeba: its complement is one
        // torus region.
        let mut exact = TorusRaster::new(128);
        for j in 0..128 {
            for i in 0..128 {
                let c = exact.center(i, j);
                if line_coamoeba_membership(&c, true).unwrap() {
                    exact.set(i, j, true);
                }
            }
        }
        assert_eq!(complement_components(&exact), 1);
    }

    #[test]
    fn component_count_is_rotation_invariant() {
        let mut raster = TorusRaster::new(128);
        for j in 0..128 {
            for i in 0..128 {
                let c = raster.center(i, j);
                if line_coamoeba_membership(&c, true).unwrap() {
                    raster.set(i, j, true);
                }
            }
        }
        let base = complement_components(&raster);
        let mut rotated = TorusRaster::new(128);
        for (i, j) in raster.iter_marked() {
            rotated.set((i + 37) % 128, (j + 91) % 128, true);
        }
        assert_eq!(complement_components(&rotated), base);
    }

    #[test]
    fn hausdorff_examples() {
        let mut a = TorusRaster::new(256);
        a.mark_angles(1.0, 2.0);
        assert_eq!(raster_hausdorff(&a, &a).unwrap(), 0.0);

        // Wraparound: marks near 0.1 and 2π - 0.1 in the first angle.
        let mut b = TorusRaster::new(256);
        let mut c = TorusRaster::new(256);
        b.mark_angles(0.1, 0.0);
        c.mark_angles(TAU - 0.1, 0.0);
        let d = raster_hausdorff(&b, &c).unwrap();
        assert!((d - 0.2).abs() < 2.0 * TAU / 256.0, "wrap distance {d}");

        // Strict subset: distance is attained from the larger set.
        let mut big = b.clone();
        big.mark_angles(1.0, 1.0);
        let d_sub = raster_hausdorff(&b, &big).unwrap();
        let mut expected = TorusRaster::new(256);
        expected.mark_angles(1.0, 1.0);
        let d_far = raster_hausdorff(&expected, &b).unwrap();
        assert!((d_sub - d_far).abs() < 1e-9);

        let empty = TorusRaster::new(256);
        assert!(matches!(
            raster_hausdorff(&b, &empty),
            Err(SamplerError::EmptyInput)
        ));
        let wrong = TorusRaster::new(128);
        assert!(matches!(
            raster_hausdorff(&b, &wrong),
            Err(SamplerError::SizeMismatch(_, _))
        ));
    }

    #[test]
    fn positive_rescaling_of_z_leaves_the_raster_stable() {
        let f = line_polynomial();
        let scaled = f.map_coefficients(|alpha, c| {
            // z ↦ 2z changes coefficients by 2^{z-degree}.
            let k = alpha.to_i64s().unwrap()[0];
            c * 2.0f64.powi(k as i32)
        });
        let cfg = small_cfg();
        let a = sample_coamoeba(&f, &cfg).unwrap();
        let b = sample_coamoeba(&scaled, &cfg).unwrap();
        let agreement = a.agreement(&b).unwrap();
        assert!(agreement >= 0.99, "agreement {agreement}");
    }

    #[test]
    fn pgm_round_trip() {
        let mut r = TorusRaster::new(128);
        r.mark_angles(0.3, 5.1);
        r.mark_angles(4.0, 0.01);
        let bytes = r.to_pgm();
        let back = TorusRaster::from_pgm(&bytes).unwrap();
        assert_eq!(back, r);
    }
}
