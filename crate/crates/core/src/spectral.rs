//! Evaluation of group-ring elements on the torus and classification of
//! their zero sets.
//!
//! A polynomial `f` in `Z[Z^d]` is a trigonometric polynomial on `T^d`
//! through `f(t) = sum_m f_m e^{2 pi i <m, t>}` (additive torus coordinates
//! `t in [0,1)^d`; the multiplicative point `(1,...,1)` is `t = 0`). The
//! zero set `Z(f)` governs expansivity — `Z(f)` empty means `f` is
//! invertible in `l^1` — and its dimension feeds the atorality heuristics.
//!
//! The scan is a certified grid sweep: a Lipschitz constant for `f` turns a
//! positive minimum over the grid into a positive minimum over the whole
//! torus. Classification of nonempty zero sets (finite versus positive
//! dimensional) is heuristic, based on cluster geometry across two grid
//! resolutions, and says so in the report; `UNKNOWN` is a valid outcome.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{Float, ToPrimitive, Zero};

use crate::error::Error;
use crate::group_ring::GroupRingElement;
use crate::Result;

const TAU: f64 = core::f64::consts::PI * 2.0;

/// A point of `T^d` in additive coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        TorusPoint {
            coords: coords.into_iter().map(wrap_unit).collect(),
        }
    }

    pub fn origin(dim: usize) -> Self {
        TorusPoint {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Torus `l^inf` distance under the minimum-image convention.
    pub fn linf_distance(&self, other: &TorusPoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = (a - b).abs();
                d.min(1.0 - d)
            })
            .fold(0.0, f64::max)
    }
}

fn wrap_unit(t: f64) -> f64 {
    let r = t - t.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Evaluate `f` at a torus point.
///
/// Self-adjoint elements are evaluated through paired cosines, which keeps
/// the imaginary part exactly zero; at `t = 0` the value is the exact
/// coefficient sum either way.
pub fn evaluate(f: &GroupRingElement, t: &TorusPoint) -> Result<Complex64> {
    if f.dim() != t.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: t.dim(),
        });
    }
    if f.is_self_adjoint() {
        let mut acc = 0.0f64;
        for (m, c) in f.terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            if m.is_identity() {
                acc += c;
                continue;
            }
            // count each {m, -m} pair once
            if m.exps() < m.inverse().exps() {
                continue;
            }
            let phase: f64 = m
                .exps()
                .iter()
                .zip(t.coords())
                .map(|(e, x)| *e as f64 * x)
                .sum();
            acc += 2.0 * c * (TAU * phase).cos();
        }
        return Ok(Complex64::new(acc, 0.0));
    }
    let mut acc = Complex64::zero();
    for (m, c) in f.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let phase: f64 = m
            .exps()
            .iter()
            .zip(t.coords())
            .map(|(e, x)| *e as f64 * x)
            .sum();
        let angle = TAU * phase;
        acc += Complex64::new(c * angle.cos(), c * angle.sin());
    }
    Ok(acc)
}

/// Complex gradient of `f` at `t`: component `k` is
/// `sum_m f_m (2 pi i m_k) e^{2 pi i <m, t>}`.
fn gradient(f: &GroupRingElement, t: &TorusPoint) -> Vec<Complex64> {
    let d = t.dim();
    let mut grad = vec![Complex64::zero(); d];
    for (m, c) in f.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let phase: f64 = m
            .exps()
            .iter()
            .zip(t.coords())
            .map(|(e, x)| *e as f64 * x)
            .sum();
        let angle = TAU * phase;
        let e = Complex64::new(angle.cos(), angle.sin());
        for k in 0..d {
            let factor = Complex64::new(0.0, TAU * m.exps()[k] as f64);
            grad[k] += e * factor * c;
        }
    }
    grad
}

/// Gradient bound `L = 2 pi sum_m ||m||_2 |f_m|`, so that
/// `|f(s) - f(t)| <= L |s - t|_2`.
pub fn lipschitz_constant(f: &GroupRingElement) -> f64 {
    TAU * f
        .terms()
        .map(|(m, c)| m.l2() * c.to_f64().unwrap_or(f64::NAN).abs())
        .sum::<f64>()
}

/// Streaming evaluation of `f` over the uniform `n^d` grid `t = j/n`,
/// visiting cells in row-major order. Per-axis phase tables keep the cost at
/// roughly one complex multiply per term per cell.
pub(crate) struct GridEvaluator {
    n: usize,
    dim: usize,
    coefs: Vec<f64>,
    /// tables[term * dim + axis][j] = e^{2 pi i m_axis j / n}
    tables: Vec<Vec<Complex64>>,
}

impl GridEvaluator {
    pub fn new(f: &GroupRingElement, n: usize) -> Self {
        let dim = f.dim();
        let mut coefs = Vec::new();
        let mut tables = Vec::new();
        for (m, c) in f.terms() {
            coefs.push(c.to_f64().unwrap_or(f64::NAN));
            for axis in 0..dim {
                let e = m.exps()[axis].rem_euclid(n as i64) as usize;
                let tab: Vec<Complex64> = (0..n)
                    .map(|j| {
                        let angle = TAU * ((e * j) % n) as f64 / n as f64;
                        Complex64::new(angle.cos(), angle.sin())
                    })
                    .collect();
                tables.push(tab);
            }
        }
        GridEvaluator {
            n,
            dim,
            coefs,
            tables,
        }
    }

    pub fn cells(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Visit `(flat_index, f(t))` for every grid cell.
    pub fn for_each<F: FnMut(usize, Complex64)>(&self, mut visit: F) {
        let t = self.coefs.len();
        let d = self.dim;
        let n = self.n;
        if t == 0 {
            for idx in 0..self.cells() {
                visit(idx, Complex64::zero());
            }
            return;
        }
        // stack[k * t + term]: product over axes < k, times the coefficient.
        let mut stack = vec![Complex64::zero(); (d + 1) * t];
        for term in 0..t {
            stack[term] = Complex64::new(self.coefs[term], 0.0);
        }
        let mut pos = vec![0usize; d];
        let recompute = |stack: &mut Vec<Complex64>, pos: &[usize], from_axis: usize| {
            for k in from_axis..d {
                for term in 0..t {
                    let tab = &self.tables[term * d + k];
                    stack[(k + 1) * t + term] = stack[k * t + term] * tab[pos[k]];
                }
            }
        };
        recompute(&mut stack, &pos, 0);
        let cells = self.cells();
        for idx in 0..cells {
            let mut acc = Complex64::zero();
            for term in 0..t {
                acc += stack[d * t + term];
            }
            visit(idx, acc);
            // advance the odometer
            let mut axis = d;
            while axis > 0 {
                axis -= 1;
                pos[axis] += 1;
                if pos[axis] < n {
                    break;
                }
                pos[axis] = 0;
                if axis == 0 {
                    return; // wrapped fully: done
                }
            }
            recompute(&mut stack, &pos, axis);
        }
    }

    pub fn point(&self, idx: usize) -> TorusPoint {
        let mut coords = vec![0.0; self.dim];
        let mut i = idx;
        for axis in (0..self.dim).rev() {
            coords[axis] = (i % self.n) as f64 / self.n as f64;
            i /= self.n;
        }
        TorusPoint { coords }
    }
}

/// One refined zero cluster of a finite zero set.
#[derive(Debug, Clone)]
pub struct ZeroCluster {
    pub center: TorusPoint,
    /// `|f|` at the refined center.
    pub residual: f64,
    /// Torus radius of the grid-cell cluster around the center.
    pub cluster_radius: f64,
    /// Number of sub-threshold grid cells merged into this cluster.
    pub grid_cells: usize,
}

/// Extra structure reported for positive-dimensional zero sets.
#[derive(Debug, Clone)]
pub struct PositiveDimensionalInfo {
    /// Box-counting slope between the two grid resolutions.
    pub dimension_estimate: f64,
    /// Number of components: affine-line strata when the tangent
    /// quantization succeeds, connected sub-threshold components otherwise.
    pub components: usize,
    /// Whether `components` came from the line-stratification heuristic.
    pub stratified: bool,
    /// Sub-threshold sample cloud (possibly subsampled).
    pub sample_cloud: Vec<TorusPoint>,
}

/// Zero-set classification outcome.
#[derive(Debug, Clone)]
pub enum ZeroSetClass {
    Empty,
    Finite(Vec<ZeroCluster>),
    PositiveDimensional(PositiveDimensionalInfo),
    Unknown,
}

/// Result of a zero-set scan.
#[derive(Debug, Clone)]
pub struct ZeroSetReport {
    pub classification: ZeroSetClass,
    /// Certified lower bound on `|f|` away from the reported clusters
    /// (global when the classification is `Empty`); 0 when nothing is
    /// certified.
    pub min_abs: f64,
    /// Minimum of `|f|` over the finer grid.
    pub grid_min: f64,
    /// Lipschitz constant used for the certificate.
    pub lipschitz: f64,
    /// Coarse grid resolution (the scan also runs at twice this).
    pub grid: usize,
    /// Sub-threshold cell counts at `grid` and `2 * grid`.
    pub candidate_counts: (usize, usize),
}

/// Cluster-extent shrink factor that still counts as "collapsing to a
/// point" when the grid is refined.
const EXTENT_SHRINK: f64 = 0.85;
/// Largest torus extent a cluster may have and still be considered a point.
const MAX_POINT_EXTENT: f64 = 0.15;
/// Candidate growth ratio at and above which the set scales like a curve.
const GROWTH_POSDIM: f64 = 1.8;
/// Residual below which a refined point counts as a confirmed zero.
pub const ZERO_CONFIRM_RESIDUAL: f64 = 1e-10;

struct ScanPass {
    n: usize,
    grid_min: f64,
    candidates: Vec<usize>,
}

fn scan_pass(f: &GroupRingElement, n: usize, threshold: f64) -> ScanPass {
    let eval = GridEvaluator::new(f, n);
    let mut grid_min = f64::INFINITY;
    let mut candidates = Vec::new();
    eval.for_each(|idx, v| {
        let a = v.norm();
        if a < grid_min {
            grid_min = a;
        }
        if a < threshold {
            candidates.push(idx);
        }
    });
    ScanPass {
        n,
        grid_min,
        candidates,
    }
}

/// Union-find clustering of sub-threshold cells, merging cells within two
/// grid steps (torus metric, diagonal moves included).
fn cluster_cells(pass: &ScanPass, dim: usize) -> Vec<Vec<usize>> {
    let n = pass.n as i64;
    let set: BTreeSet<usize> = pass.candidates.iter().copied().collect();
    let index_of: BTreeMap<usize, usize> = pass
        .candidates
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut parent: Vec<usize> = (0..pass.candidates.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut c = vec![0i64; dim];
        for axis in (0..dim).rev() {
            c[axis] = (idx % pass.n) as i64;
            idx /= pass.n;
        }
        c
    };
    let encode = |c: &[i64]| -> usize {
        let mut idx = 0usize;
        for &x in c {
            idx = idx * pass.n + x.rem_euclid(n) as usize;
        }
        idx
    };
    let mut offsets: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        let mut next = Vec::new();
        for o in &offsets {
            for step in -2i64..=2 {
                let mut v = o.clone();
                v.push(step);
                next.push(v);
            }
        }
        offsets = next;
    }
    for (i, &cell) in pass.candidates.iter().enumerate() {
        let base = decode(cell);
        for off in &offsets {
            if off.iter().all(|&x| x == 0) {
                continue;
            }
            let neigh: Vec<i64> = base.iter().zip(off).map(|(a, b)| a + b).collect();
            let nidx = encode(&neigh);
            if set.contains(&nidx) {
                let j = index_of[&nidx];
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pass.candidates.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(pass.candidates[i]);
    }
    groups.into_values().collect()
}

/// Torus extent (`l^inf` diameter, minimum-image relative to a seed cell) of
/// a cluster, in torus units.
fn cluster_extent(cells: &[usize], n: usize, dim: usize) -> f64 {
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut c = vec![0i64; dim];
        for axis in (0..dim).rev() {
            c[axis] = (idx % n) as i64;
            idx /= n;
        }
        c
    };
    let seed = decode(cells[0]);
    let half = n as i64 / 2;
    let mut lo = vec![i64::MAX; dim];
    let mut hi = vec![i64::MIN; dim];
    for &c in cells {
        let p = decode(c);
        for axis in 0..dim {
            let mut d = p[axis] - seed[axis];
            d = (d + half).rem_euclid(n as i64) - half;
            lo[axis] = lo[axis].min(d);
            hi[axis] = hi[axis].max(d);
        }
    }
    (0..dim)
        .map(|a| (hi[a] - lo[a]) as f64 / n as f64)
        .fold(0.0, f64::max)
}

/// Damped Gauss-Newton descent on `|f|^2` from `start`; returns the refined
/// point and `|f|` there.
fn refine_zero(f: &GroupRingElement, start: &TorusPoint, iters: usize) -> (TorusPoint, f64) {
    let d = start.dim();
    let mut t = start.clone();
    let mut fv = evaluate(f, &t).expect("dims match");
    for _ in 0..iters {
        if fv.norm() < 1e-15 {
            break;
        }
        let grad = gradient(f, &t);
        // Least-squares step for the real 2 x d system
        //   [Re J; Im J] delta = -[Re f; Im f],
        // minimal-norm via the 2x2 Gram matrix of the rows.
        let re: Vec<f64> = grad.iter().map(|g| g.re).collect();
        let im: Vec<f64> = grad.iter().map(|g| g.im).collect();
        let a11: f64 = re.iter().map(|x| x * x).sum();
        let a12: f64 = re.iter().zip(&im).map(|(x, y)| x * y).sum();
        let a22: f64 = im.iter().map(|x| x * x).sum();
        let b1 = -fv.re;
        let b2 = -fv.im;
        let det = a11 * a22 - a12 * a12;
        let scale = (a11 + a22).max(1e-300);
        let (y1, y2) = if det.abs() > 1e-12 * scale * scale {
            ((b1 * a22 - b2 * a12) / det, (b2 * a11 - b1 * a12) / det)
        } else {
            // Rank <= 1: project onto the dominant row.
            if a11 >= a22 {
                (b1 / scale.max(a11), 0.0)
            } else {
                (0.0, b2 / scale.max(a22))
            }
        };
        let mut delta: Vec<f64> = (0..d).map(|k| re[k] * y1 + im[k] * y2).collect();
        // Damping: halve until |f|^2 decreases.
        let mut improved = false;
        for _ in 0..24 {
            let cand = TorusPoint::new(
                t.coords()
                    .iter()
                    .zip(&delta)
                    .map(|(x, dx)| x + dx)
                    .collect(),
            );
            let cand_v = evaluate(f, &cand).expect("dims match");
            if cand_v.norm() < fv.norm() {
                t = cand;
                fv = cand_v;
                improved = true;
                break;
            }
            for dx in delta.iter_mut() {
                *dx *= 0.5;
            }
        }
        if !improved {
            break;
        }
    }
    let r = fv.norm();
    (t, r)
}

/// Scan and classify the zero set of `f` on `T^d`.
///
/// The grid sweep runs at `n` and `2n`. Whatever falls below the Lipschitz
/// threshold is clustered; clusters that collapse as the grid refines are
/// refined by damped Gauss-Newton into `FINITE` zero points, clusters that
/// persist are classified `POSITIVE_DIMENSIONAL` with a box-counting
/// dimension estimate. `UNKNOWN` is returned when the two views disagree.
pub fn zero_scan(f: &GroupRingElement, n: usize, refine_iters: usize) -> Result<ZeroSetReport> {
    if n < 8 {
        return Err(Error::InvalidParameter("grid must be at least 8"));
    }
    let d = f.dim();
    if f.is_zero() {
        // f == 0 vanishes identically.
        return Ok(ZeroSetReport {
            classification: ZeroSetClass::PositiveDimensional(PositiveDimensionalInfo {
                dimension_estimate: d as f64,
                components: 1,
                stratified: false,
                sample_cloud: Vec::new(),
            }),
            min_abs: 0.0,
            grid_min: 0.0,
            lipschitz: 0.0,
            grid: n,
            candidate_counts: (n.pow(d as u32), (2 * n).pow(d as u32)),
        });
    }
    let lip = lipschitz_constant(f);
    let sqrt_d = (d as f64).sqrt();
    let theta = |m: usize| lip * sqrt_d / m as f64;

    let pass1 = scan_pass(f, n, theta(n));
    let pass2 = scan_pass(f, 2 * n, theta(2 * n));
    let counts = (pass1.candidates.len(), pass2.candidates.len());

    // Certified empty: no cell anywhere near zero.
    if pass1.candidates.is_empty() && pass2.candidates.is_empty() {
        let min_abs = (pass2.grid_min - lip * sqrt_d / (4.0 * n as f64)).max(0.0);
        return Ok(ZeroSetReport {
            classification: if min_abs > 0.0 {
                ZeroSetClass::Empty
            } else {
                ZeroSetClass::Unknown
            },
            min_abs,
            grid_min: pass2.grid_min,
            lipschitz: lip,
            grid: n,
            candidate_counts: counts,
        });
    }
    if pass1.candidates.is_empty() || pass2.candidates.is_empty() {
        return Ok(ZeroSetReport {
            classification: ZeroSetClass::Unknown,
            min_abs: 0.0,
            grid_min: pass2.grid_min,
            lipschitz: lip,
            grid: n,
            candidate_counts: counts,
        });
    }

    let clusters1 = cluster_cells(&pass1, d);
    let clusters2 = cluster_cells(&pass2, d);
    let extent1 = clusters1
        .iter()
        .map(|c| cluster_extent(c, n, d))
        .fold(0.0, f64::max);
    let extent2 = clusters2
        .iter()
        .map(|c| cluster_extent(c, 2 * n, d))
        .fold(0.0, f64::max);
    let growth = counts.1 as f64 / counts.0 as f64;

    let finite_like = clusters1.len() == clusters2.len()
        && extent2 <= (EXTENT_SHRINK * extent1).max(8.0 / (2.0 * n as f64))
        && extent2 <= MAX_POINT_EXTENT;
    let posdim_like =
        growth >= GROWTH_POSDIM || (extent2 > EXTENT_SHRINK * extent1 && extent2 > 0.10);

    if finite_like && !posdim_like {
        let eval2 = GridEvaluator::new(f, 2 * n);
        let mut zeros = Vec::new();
        for cells in &clusters2 {
            // refine from the best cell of the cluster
            let best = cells
                .iter()
                .min_by(|&&a, &&b| {
                    let va = evaluate(f, &eval2.point(a)).expect("dims").norm();
                    let vb = evaluate(f, &eval2.point(b)).expect("dims").norm();
                    va.partial_cmp(&vb).expect("finite")
                })
                .expect("cluster nonempty");
            let (center, residual) = refine_zero(f, &eval2.point(*best), refine_iters);
            let radius = cells
                .iter()
                .map(|&c| eval2.point(c).linf_distance(&center))
                .fold(0.0, f64::max);
            zeros.push(ZeroCluster {
                center,
                residual,
                cluster_radius: radius,
                grid_cells: cells.len(),
            });
        }
        // Off-cluster certificate: every non-candidate cell sits at or above
        // the threshold, and off-grid points are Lipschitz-close to a cell.
        let min_abs = (theta(2 * n) - lip * sqrt_d / (4.0 * n as f64)).max(0.0);
        return Ok(ZeroSetReport {
            classification: ZeroSetClass::Finite(zeros),
            min_abs,
            grid_min: pass2.grid_min,
            lipschitz: lip,
            grid: n,
            candidate_counts: counts,
        });
    }

    if posdim_like && !finite_like {
        let dimension_estimate = growth.log2().clamp(0.0, d as f64);
        let eval2 = GridEvaluator::new(f, 2 * n);
        let cloud_cells = subsample(&pass2.candidates, 20_000);
        let cloud: Vec<TorusPoint> = cloud_cells.iter().map(|&c| eval2.point(c)).collect();
        let stratification = if (0.7..1.4).contains(&dimension_estimate) {
            stratify_lines(&cloud, 2 * n, d)
        } else {
            None
        };
        let (components, stratified) = match stratification {
            Some(k) => (k, true),
            None => (clusters2.len(), false),
        };
        return Ok(ZeroSetReport {
            classification: ZeroSetClass::PositiveDimensional(PositiveDimensionalInfo {
                dimension_estimate,
                components,
                stratified,
                sample_cloud: cloud,
            }),
            min_abs: (theta(2 * n) - lip * sqrt_d / (4.0 * n as f64)).max(0.0),
            grid_min: pass2.grid_min,
            lipschitz: lip,
            grid: n,
            candidate_counts: counts,
        });
    }

    Ok(ZeroSetReport {
        classification: ZeroSetClass::Unknown,
        min_abs: 0.0,
        grid_min: pass2.grid_min,
        lipschitz: lip,
        grid: n,
        candidate_counts: counts,
    })
}

fn subsample(cells: &[usize], cap: usize) -> Vec<usize> {
    if cells.len() <= cap {
        return cells.to_vec();
    }
    let stride = cells.len() / cap + 1;
    cells.iter().step_by(stride).copied().collect()
}

/// Try to decompose a 1-dimensional sub-threshold cloud into affine lines
/// with small integer directions. Returns the number of line strata when the
/// points (junction cells excepted) quantize cleanly; `None` otherwise.
fn stratify_lines(cloud: &[TorusPoint], n: usize, d: usize) -> Option<usize> {
    if cloud.is_empty() || d < 2 {
        return None;
    }
    // Integer direction candidates up to l^inf 3, one per +-pair.
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    let mut stack = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &stack {
            for v in -3i64..=3 {
                let mut w = s.clone();
                w.push(v);
                next.push(w);
            }
        }
        stack = next;
    }
    for w in stack {
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        let g = w.iter().fold(0i64, |a, &b| gcd64(a, b));
        if g != 1 {
            continue;
        }
        // one representative per +- direction pair
        if w.iter().find(|&&x| x != 0).map(|&x| x > 0) == Some(true) {
            dirs.push(w);
        }
    }

    let radius = 3.5 / n as f64;
    // Local tangent by PCA over minimum-image displacements to neighbors.
    let mut assignments: Vec<Option<(usize, Vec<f64>)>> = Vec::with_capacity(cloud.len());
    let mut assigned = 0usize;
    for (i, p) in cloud.iter().enumerate() {
        let mut cov = vec![0.0f64; d * d];
        let mut count = 0usize;
        for (j, q) in cloud.iter().enumerate() {
            if i == j || p.linf_distance(q) > radius {
                continue;
            }
            let disp: Vec<f64> = p
                .coords()
                .iter()
                .zip(q.coords())
                .map(|(a, b)| {
                    let mut dd = b - a;
                    if dd > 0.5 {
                        dd -= 1.0;
                    }
                    if dd < -0.5 {
                        dd += 1.0;
                    }
                    dd
                })
                .collect();
            for r in 0..d {
                for c in 0..d {
                    cov[r * d + c] += disp[r] * disp[c];
                }
            }
            count += 1;
        }
        if count < 4 {
            assignments.push(None);
            continue;
        }
        let (v, lam1, lam2) = dominant_eigenvector(&cov, d);
        if lam1 <= 0.0 || lam2 / lam1 > 0.25 {
            // not line-like locally (e.g. a junction of two strata)
            assignments.push(None);
            continue;
        }
        // quantize the tangent to an integer direction
        let mut best: Option<(usize, f64)> = None;
        for (k, w) in dirs.iter().enumerate() {
            let wn: f64 = w.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
            let dot: f64 = w.iter().zip(&v).map(|(&x, y)| x as f64 * y).sum();
            let c = (dot / wn).abs();
            if best.map(|(_, bc)| c > bc).unwrap_or(true) {
                best = Some((k, c));
            }
        }
        let (k, cosine) = best?;
        if cosine < 0.985 {
            assignments.push(None);
            continue;
        }
        // invariants: <z, p> mod 1 for small integer z orthogonal to w
        let w = &dirs[k];
        let mut invs = Vec::new();
        for z in orth_candidates(w, d) {
            let val: f64 = z.iter().zip(p.coords()).map(|(&a, b)| a as f64 * b).sum();
            invs.push(wrap_unit(val));
            if invs.len() == d - 1 {
                break;
            }
        }
        if invs.len() < d - 1 {
            assignments.push(None);
            continue;
        }
        assignments.push(Some((k, invs)));
        assigned += 1;
    }
    // Junctions are expected to fail the line-ness test, but they are a
    // vanishing fraction of the tube cloud.
    if (assigned as f64) < 0.8 * cloud.len() as f64 {
        return None;
    }
    // Group assigned points by direction, then cluster the invariants.
    let delta = 12.0 / n as f64;
    let mut strata = 0usize;
    for k in 0..dirs.len() {
        let pts: Vec<&Vec<f64>> = assignments
            .iter()
            .filter_map(|a| match a {
                Some((kk, invs)) if *kk == k => Some(invs),
                _ => None,
            })
            .collect();
        if pts.is_empty() {
            continue;
        }
        let mut parent: Vec<usize> = (0..pts.len()).collect();
        fn find(p: &mut Vec<usize>, mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let close = pts[i].iter().zip(pts[j]).all(|(a, b)| {
                    let dd = (a - b).abs();
                    dd.min(1.0 - dd) < delta
                });
                if close {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let len = pts.len();
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..len {
            *sizes.entry(find(&mut parent, i)).or_default() += 1;
        }
        // ignore stray micro-groups (junction debris)
        strata += sizes.values().filter(|&&s| s * 20 >= len.max(20)).count();
    }
    if strata == 0 {
        None
    } else {
        Some(strata)
    }
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Small integer vectors orthogonal to `w`, smallest first, keeping only a
/// linearly independent set of size `d - 1`.
fn orth_candidates(w: &[i64], d: usize) -> Vec<Vec<i64>> {
    let mut stack = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &stack {
            for v in -3i64..=3 {
                let mut z = s.clone();
                z.push(v);
                next.push(z);
            }
        }
        stack = next;
    }
    let mut all: Vec<Vec<i64>> = stack
        .into_iter()
        .filter(|z| {
            z.iter().any(|&x| x != 0) && z.iter().zip(w).map(|(&a, &b)| a * b).sum::<i64>() == 0
        })
        .collect();
    all.sort_by_key(|z| z.iter().map(|&x| x * x).sum::<i64>());
    let mut cands: Vec<Vec<i64>> = Vec::new();
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for z in all {
        let zf: Vec<f64> = z.iter().map(|&x| x as f64).collect();
        let mut v = zf.clone();
        for b in &basis {
            let dot: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            let nb: f64 = b.iter().map(|c| c * c).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= dot / nb * bi;
            }
        }
        if v.iter().map(|x| x * x).sum::<f64>() > 1e-9 {
            basis.push(zf);
            cands.push(z);
            if cands.len() == d - 1 {
                break;
            }
        }
    }
    cands
}

/// Dominant eigenvector of a small symmetric matrix by power iteration,
/// plus the top two eigenvalue magnitudes (for a line-ness ratio).
fn dominant_eigenvector(cov: &[f64], d: usize) -> (Vec<f64>, f64, f64) {
    let mul = |v: &[f64]| -> Vec<f64> {
        (0..d)
            .map(|r| (0..d).map(|c| cov[r * d + c] * v[c]).sum())
            .collect()
    };
    let norm = |v: &[f64]| -> f64 { v.iter().map(|x| x * x).sum::<f64>().sqrt() };
    let mut v = vec![1.0 / (d as f64).sqrt(); d];
    let mut lam1 = 0.0;
    for _ in 0..60 {
        let w = mul(&v);
        let nw = norm(&w);
        if nw < 1e-300 {
            return (v, 0.0, 0.0);
        }
        lam1 = nw;
        v = w.into_iter().map(|x| x / nw).collect();
    }
    // deflate and estimate the second eigenvalue
    let mut u: Vec<f64> = (0..d).map(|i| if i == 0 { 1.0 } else { 0.5 }).collect();
    let dot: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    for (ui, vi) in u.iter_mut().zip(&v) {
        *ui -= dot * vi;
    }
    let mut lam2 = 0.0;
    if norm(&u) > 1e-12 {
        for _ in 0..60 {
            let mut w = mul(&u);
            let dot: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi -= dot * vi;
            }
            let nw = norm(&w);
            if nw < 1e-300 {
                break;
            }
            lam2 = nw;
            u = w.into_iter().map(|x| x / nw).collect();
        }
    }
    (v, lam1, lam2)
}

/// Default scan grid per dimension (balances certification strength and
/// runtime).
pub fn default_grid(dim: usize) -> Result<usize> {
    match dim {
        1 => Ok(2048),
        2 => Ok(256),
        3 => Ok(64),
        4 => Ok(20),
        _ => Err(Error::UnsupportedDimension {
            dim,
            reason: "zero-set scans are supported for d <= 4",
        }),
    }
}

/// Certified expansivity test for `Z^d`: the action is expansive exactly
/// when `f` is invertible in `l^1`, i.e. when `Z(f)` is empty.
///
/// `true` needs the certified-empty scan outcome; `false` needs a confirmed
/// zero (refined residual below [`ZERO_CONFIRM_RESIDUAL`]); anything else is
/// an [`Error::ZeroSetUnknown`] rather than a guess.
pub fn is_expansive_zd(f: &GroupRingElement) -> Result<bool> {
    if f.is_zero() {
        return Ok(false);
    }
    let n = default_grid(f.dim())?;
    let report = zero_scan(f, n, 40)?;
    expansivity_from_report(f, &report)
}

/// The decision logic of [`is_expansive_zd`] against an existing report.
pub fn expansivity_from_report(f: &GroupRingElement, report: &ZeroSetReport) -> Result<bool> {
    if f.is_zero() {
        return Ok(false);
    }
    match &report.classification {
        ZeroSetClass::Empty => Ok(true),
        ZeroSetClass::Finite(zeros) => {
            if zeros.iter().any(|z| z.residual < ZERO_CONFIRM_RESIDUAL) {
                Ok(false)
            } else {
                Err(Error::ZeroSetUnknown)
            }
        }
        ZeroSetClass::PositiveDimensional(info) => {
            // confirm a zero by refining the best cloud point
            let best = info
                .sample_cloud
                .iter()
                .min_by(|a, b| {
                    let va = evaluate(f, a).expect("dims").norm();
                    let vb = evaluate(f, b).expect("dims").norm();
                    va.partial_cmp(&vb).expect("finite")
                })
                .ok_or(Error::ZeroSetUnknown)?;
            let (_, residual) = refine_zero(f, best, 60);
            if residual < ZERO_CONFIRM_RESIDUAL {
                Ok(false)
            } else {
                Err(Error::ZeroSetUnknown)
            }
        }
        ZeroSetClass::Unknown => Err(Error::ZeroSetUnknown),
    }
}

/// Atorality verdict of the purely heuristic kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtoralityVerdict {
    ConsistentWithAtoral,
    ToralLooking,
    Inconclusive,
}

/// Report of [`atorality_hint`]. Heuristic; irreducibility is the caller's
/// assertion and is echoed, never checked here.
#[derive(Debug, Clone)]
pub struct AtoralityReport {
    pub verdict: AtoralityVerdict,
    pub dimension_estimate: Option<f64>,
    pub irreducible_asserted: bool,
    pub ambient_dim: usize,
}

/// Map a zero-set classification to an atorality hint: atoral irreducible
/// polynomials have `dim Z(f) <= d - 2`.
pub fn atorality_hint(
    f: &GroupRingElement,
    report: &ZeroSetReport,
    irreducible_asserted: bool,
) -> AtoralityReport {
    let d = f.dim();
    let (verdict, dim_est) = match &report.classification {
        ZeroSetClass::Empty => (AtoralityVerdict::ConsistentWithAtoral, None),
        ZeroSetClass::Finite(_) => {
            // dim 0 <= d - 2 only in d >= 2
            if d >= 2 {
                (AtoralityVerdict::ConsistentWithAtoral, Some(0.0))
            } else {
                (AtoralityVerdict::ToralLooking, Some(0.0))
            }
        }
        ZeroSetClass::PositiveDimensional(info) => {
            let k = info.dimension_estimate;
            let rounded = k.round();
            if rounded <= (d as f64) - 2.0 {
                (AtoralityVerdict::ConsistentWithAtoral, Some(k))
            } else if rounded >= (d as f64) - 1.0 {
                (AtoralityVerdict::ToralLooking, Some(k))
            } else {
                (AtoralityVerdict::Inconclusive, Some(k))
            }
        }
        ZeroSetClass::Unknown => (AtoralityVerdict::Inconclusive, None),
    };
    AtoralityReport {
        verdict,
        dimension_estimate: dim_est,
        irreducible_asserted,
        ambient_dim: d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn gr(dim: usize, terms: &[(&[i64], i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(
            dim,
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
        .unwrap()
    }

    fn fib() -> GroupRingElement {
        gr(1, &[(&[0], -1), (&[1], -1), (&[2], 1)])
    }

    #[test]
    fn evaluate_examples() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        let v = evaluate(&f, &TorusPoint::origin(2)).unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));

        let led = gr(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let w = evaluate(&led, &TorusPoint::new(vec![1.0 / 3.0, 2.0 / 3.0])).unwrap();
        assert!(w.norm() < 1e-14);

        let v0 = evaluate(&fib(), &TorusPoint::origin(1)).unwrap();
        assert!((v0.re + 1.0).abs() < 1e-15 && v0.im.abs() < 1e-15);
    }

    #[test]
    fn evaluate_is_ring_morphism() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, -1], -3), (&[2, 1], 1)]);
        let g = gr(2, &[(&[1, 0], 1), (&[0, 1], 4)]);
        let t = TorusPoint::new(vec![0.137, 0.829]);
        let lhs = evaluate(&f.convolve(&g).unwrap(), &t).unwrap();
        let rhs = evaluate(&f, &t).unwrap() * evaluate(&g, &t).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        // involution evaluates to the conjugate
        let li = evaluate(&f.involution(), &t).unwrap();
        assert!((li - evaluate(&f, &t).unwrap().conj()).norm() < 1e-12);
    }

    #[test]
    fn self_adjoint_evaluates_real() {
        let mut terms: Vec<(Vec<i64>, BigInt)> = vec![(vec![0; 3], BigInt::from(6))];
        for i in 0..3 {
            let mut e = vec![0i64; 3];
            e[i] = 1;
            terms.push((e.clone(), BigInt::from(-1)));
            e[i] = -1;
            terms.push((e, BigInt::from(-1)));
        }
        let lap = GroupRingElement::from_terms(3, terms).unwrap();
        for k in 0..20 {
            let t = TorusPoint::new(vec![0.05 * k as f64, 0.31 * k as f64, 0.77 * k as f64]);
            let v = evaluate(&lap, &t).unwrap();
            assert_eq!(v.im, 0.0);
            assert!(v.re >= -1e-12);
        }
        assert_eq!(evaluate(&lap, &TorusPoint::origin(3)).unwrap().re, 0.0);
    }

    #[test]
    fn grid_evaluator_matches_pointwise() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1), (&[-2, 1], 3)]);
        let n = 16;
        let eval = GridEvaluator::new(&f, n);
        let mut checked = 0;
        eval.for_each(|idx, v| {
            if idx % 37 == 0 {
                let p = eval.point(idx);
                let direct = evaluate(&f, &p).unwrap();
                assert!((v - direct).norm() < 1e-11);
                checked += 1;
            }
        });
        assert!(checked > 3);
    }

    #[test]
    fn scan_empty_fibonacci() {
        let report = zero_scan(&fib(), 512, 30).unwrap();
        assert!(matches!(report.classification, ZeroSetClass::Empty));
        assert!(report.min_abs > 0.0);
        assert!(is_expansive_zd(&fib()).unwrap());
    }

    #[test]
    fn scan_finite_degenerate_origin() {
        // 2 - u1 - u2 vanishes only at the origin, along a flat valley.
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        let report = zero_scan(&f, 128, 40).unwrap();
        match &report.classification {
            ZeroSetClass::Finite(zeros) => {
                assert_eq!(zeros.len(), 1);
                let c = &zeros[0].center;
                assert!(c.linf_distance(&TorusPoint::origin(2)) < 1e-6);
                assert!(zeros[0].residual < ZERO_CONFIRM_RESIDUAL);
            }
            other => panic!("expected finite, got {other:?}"),
        }
        assert!(!is_expansive_zd(&f).unwrap());
    }

    #[test]
    fn scan_finite_harmonic_d2() {
        let f = gr(
            2,
            &[
                (&[0, 0], 4),
                (&[1, 0], -1),
                (&[-1, 0], -1),
                (&[0, 1], -1),
                (&[0, -1], -1),
            ],
        );
        let report = zero_scan(&f, 128, 40).unwrap();
        match &report.classification {
            ZeroSetClass::Finite(zeros) => {
                assert_eq!(zeros.len(), 1);
                assert!(zeros[0].center.linf_distance(&TorusPoint::origin(2)) < 1e-6);
            }
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn scan_ledrappier_two_points() {
        let f = gr(2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let report = zero_scan(&f, 96, 40).unwrap();
        match &report.classification {
            ZeroSetClass::Finite(zeros) => {
                assert_eq!(zeros.len(), 2);
                let a = TorusPoint::new(vec![1.0 / 3.0, 2.0 / 3.0]);
                let b = TorusPoint::new(vec![2.0 / 3.0, 1.0 / 3.0]);
                let hit_a = zeros.iter().any(|z| z.center.linf_distance(&a) < 1e-6);
                let hit_b = zeros.iter().any(|z| z.center.linf_distance(&b) < 1e-6);
                assert!(hit_a && hit_b);
            }
            other => panic!("expected finite, got {other:?}"),
        }
    }

    #[test]
    fn scan_positive_dimensional_circles() {
        let f = gr(
            3,
            &[(&[0, 0, 0], 1), (&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)],
        );
        let report = zero_scan(&f, 48, 20).unwrap();
        match &report.classification {
            ZeroSetClass::PositiveDimensional(info) => {
                assert!((info.dimension_estimate - 1.0).abs() < 0.35);
                assert!(info.stratified, "line stratification should succeed");
                assert_eq!(info.components, 3);
            }
            other => panic!("expected positive-dimensional, got {other:?}"),
        }
    }

    #[test]
    fn cyclotomic_toral_looking() {
        let f = gr(1, &[(&[1], 1), (&[0], -1)]);
        let report = zero_scan(&f, 512, 40).unwrap();
        assert!(matches!(&report.classification, ZeroSetClass::Finite(z) if z.len() == 1));
        let hint = atorality_hint(&f, &report, true);
        assert_eq!(hint.verdict, AtoralityVerdict::ToralLooking);
    }

    #[test]
    fn atorality_catalog_entries() {
        // finite zero set in d = 2: consistent with atoral
        let f = gr(2, &[(&[0, 0], 2), (&[2, 0], -1), (&[0, 1], 1), (&[1, 1], -1)]);
        let report = zero_scan(&f, 128, 40).unwrap();
        match &report.classification {
            ZeroSetClass::Finite(zeros) => assert_eq!(zeros.len(), 2),
            other => panic!("expected finite, got {other:?}"),
        }
        let hint = atorality_hint(&f, &report, true);
        assert_eq!(hint.verdict, AtoralityVerdict::ConsistentWithAtoral);

        let circles = gr(
            3,
            &[(&[0, 0, 0], 1), (&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)],
        );
        let report = zero_scan(&circles, 48, 20).unwrap();
        let hint = atorality_hint(&circles, &report, true);
        assert_eq!(hint.verdict, AtoralityVerdict::ConsistentWithAtoral);
    }

    #[test]
    fn zero_polynomial_not_expansive() {
        assert!(!is_expansive_zd(&GroupRingElement::zero(2)).unwrap());
    }

    #[test]
    fn scan_rejects_tiny_grid() {
        assert!(zero_scan(&fib(), 4, 10).is_err());
    }
}
