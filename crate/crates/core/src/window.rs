//! Finite box windows: approximations of `C_0(Z^d)` and `l^p` elements,
//! torus-valued configuration windows, coset characters, and the pairing
//! functionals built on them.
//!
//! A window holds dense `f64` values on the box `[-R, R]^d` together with
//! certified tail bounds. Window math is floating point with a documented
//! 1e-12 comparison tolerance; every exact decision lives elsewhere
//! (`group_ring`, `goe`). `+inf` is the honest default tail bound for data
//! of unknown provenance.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Float, Signed, ToPrimitive};

use crate::error::Error;
use crate::group_ring::{GroupRingElement, Monomial, RationalGroupRingElement};
use crate::Result;

/// Distance from `t` to the nearest integer, i.e. `min_m |t + m|`, in
/// `[0, 1/2]`. The degenerate half-integer case maps to `1/2`.
pub fn dist_to_int(t: f64) -> f64 {
    (t - t.round()).abs()
}

/// `|e^{2 pi i t} - 1| = 2 |sin(pi t)|`.
pub fn circle_gap(t: f64) -> f64 {
    2.0 * (core::f64::consts::PI * t).sin().abs()
}

/// Geometry of the box `[-R, R]^d` with row-major dense indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxGeometry {
    pub dim: usize,
    pub radius: i64,
}

impl BoxGeometry {
    pub fn new(dim: usize, radius: i64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension {
                dim: 0,
                reason: "ambient dimension must be at least 1",
            });
        }
        if radius < 0 {
            return Err(Error::InvalidParameter("radius must be nonnegative"));
        }
        let side = 2 * radius as u128 + 1;
        let mut len: u128 = 1;
        for _ in 0..dim {
            len = len.saturating_mul(side);
            if len > (1 << 31) {
                return Err(Error::InvalidParameter("window too large"));
            }
        }
        Ok(BoxGeometry { dim, radius })
    }

    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.dim as u32)
    }

    /// Row-major strides, last axis fastest.
    pub fn strides(&self) -> Vec<usize> {
        let side = self.side();
        let mut s = vec![1usize; self.dim];
        for i in (0..self.dim.saturating_sub(1)).rev() {
            s[i] = s[i + 1] * side;
        }
        s
    }

    pub fn contains(&self, coords: &[i64]) -> bool {
        coords.len() == self.dim && coords.iter().all(|c| c.abs() <= self.radius)
    }

    pub fn index(&self, coords: &[i64]) -> Option<usize> {
        if !self.contains(coords) {
            return None;
        }
        let side = self.side();
        let mut idx = 0usize;
        for &c in coords {
            idx = idx * side + (c + self.radius) as usize;
        }
        Some(idx)
    }

    /// Signed flat-index offset of a coordinate displacement. Valid exactly
    /// when both the source and the displaced coordinate lie in the box.
    pub fn flat_offset(&self, delta: &[i64]) -> isize {
        let side = self.side() as isize;
        let mut off = 0isize;
        for &d in delta {
            off = off * side + d as isize;
        }
        off
    }

    pub fn coords(&self, mut idx: usize) -> Vec<i64> {
        let side = self.side();
        let mut out = vec![0i64; self.dim];
        for i in (0..self.dim).rev() {
            out[i] = (idx % side) as i64 - self.radius;
            idx /= side;
        }
        out
    }

    /// Visit every cell as `(flat_index, coordinates)`.
    pub fn for_each<F: FnMut(usize, &[i64])>(&self, mut f: F) {
        let mut coords = vec![-self.radius; self.dim];
        let len = self.len();
        for idx in 0..len {
            f(idx, &coords);
            for axis in (0..self.dim).rev() {
                if coords[axis] < self.radius {
                    coords[axis] += 1;
                    break;
                }
                coords[axis] = -self.radius;
            }
        }
    }
}

/// Real coefficients on `[-R, R]^d` plus certified tail bounds: a finite
/// approximation of an element of `C_0(Z^d)` (and, when `tail_l1_bound` is
/// finite, of `l^1`).
#[derive(Debug, Clone, PartialEq)]
pub struct WindowFunction {
    geometry: BoxGeometry,
    values: Vec<f64>,
    /// Certified bound on `sup_{|g| > R} |value|`; `+inf` when unknown.
    tail_sup_bound: f64,
    /// Certified bound on `sum_{|g| > R} |value|`; `+inf` when unknown.
    tail_l1_bound: f64,
}

impl WindowFunction {
    pub fn zeros(dim: usize, radius: i64) -> Result<Self> {
        let geometry = BoxGeometry::new(dim, radius)?;
        Ok(WindowFunction {
            values: vec![0.0; geometry.len()],
            geometry,
            tail_sup_bound: f64::INFINITY,
            tail_l1_bound: f64::INFINITY,
        })
    }

    /// A multiple of the point mass at the origin, with zero tail.
    pub fn delta(dim: usize, radius: i64, value: f64) -> Result<Self> {
        let mut w = Self::zeros(dim, radius)?;
        let origin = w.geometry.index(&vec![0; dim]).expect("origin in box");
        w.values[origin] = value;
        w.tail_sup_bound = 0.0;
        w.tail_l1_bound = 0.0;
        Ok(w)
    }

    pub fn from_values(
        dim: usize,
        radius: i64,
        values: Vec<f64>,
        tail_sup_bound: f64,
        tail_l1_bound: f64,
    ) -> Result<Self> {
        let geometry = BoxGeometry::new(dim, radius)?;
        if values.len() != geometry.len() {
            return Err(Error::InvalidParameter("value array shape mismatch"));
        }
        if tail_sup_bound < 0.0 || tail_l1_bound < 0.0 {
            return Err(Error::InvalidParameter("tail bounds must be nonnegative"));
        }
        Ok(WindowFunction {
            geometry,
            values,
            tail_sup_bound,
            tail_l1_bound,
        })
    }

    /// Exact window of a group-ring element (zero tail).
    pub fn from_group_ring(f: &GroupRingElement, radius: i64) -> Result<Self> {
        if f.support_extent() > radius {
            return Err(Error::WindowTooSmall {
                required: f.support_extent(),
                got: radius,
            });
        }
        let mut w = Self::zeros(f.dim(), radius)?;
        for (m, c) in f.terms() {
            let idx = w.geometry.index(m.exps()).expect("support fits");
            w.values[idx] = c.to_f64().unwrap_or(f64::NAN);
        }
        w.tail_sup_bound = 0.0;
        w.tail_l1_bound = 0.0;
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim
    }

    pub fn radius(&self) -> i64 {
        self.geometry.radius
    }

    pub fn geometry(&self) -> BoxGeometry {
        self.geometry
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub(crate) fn set_tail_bounds(&mut self, sup: f64, l1: f64) {
        self.tail_sup_bound = sup;
        self.tail_l1_bound = l1;
    }

    pub fn tail_sup_bound(&self) -> f64 {
        self.tail_sup_bound
    }

    pub fn tail_l1_bound(&self) -> f64 {
        self.tail_l1_bound
    }

    /// Value at a coordinate, or `None` outside the box.
    pub fn value(&self, coords: &[i64]) -> Option<f64> {
        self.geometry.index(coords).map(|i| self.values[i])
    }

    /// Reverse the window through the origin: the involution `g -> g*`.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        let g = self.geometry;
        g.for_each(|idx, coords| {
            let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
            let j = g.index(&neg).expect("box is symmetric");
            out.values[j] = self.values[idx];
        });
        out
    }

    /// Max magnitude over the shell `|coords|_inf == s`.
    pub fn shell_max(&self, s: i64) -> f64 {
        let mut m = 0.0f64;
        self.geometry.for_each(|idx, coords| {
            if coords.iter().map(|c| c.abs()).max() == Some(s) {
                m = m.max(self.values[idx].abs());
            }
        });
        m
    }

    /// Window `l^p` norm plus a flag telling whether the tail bounds certify
    /// that what lies outside the window contributes less than `tol`.
    pub fn lp_norm(&self, p: f64, tol: f64) -> Result<(f64, bool)> {
        if p < 1.0 {
            return Err(Error::InvalidParameter("p must be at least 1"));
        }
        if p.is_infinite() {
            let norm = self.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            return Ok((norm, self.tail_sup_bound <= tol));
        }
        let sum: f64 = self.values.iter().map(|v| v.abs().powf(p)).sum();
        let norm = sum.powf(1.0 / p);
        // Conservative tail certificate: when the tail sup is <= 1, each term
        // |v|^p <= |v|, so the l^1 tail bound dominates the p-tail.
        let certified = self.tail_l1_bound <= tol && self.tail_sup_bound <= 1.0;
        Ok((norm, certified))
    }
}

/// Convolution `f * g` of a group-ring element against a window, exact on
/// the shrunken box of radius `R - s` where `s` is the support extent of
/// `f`. Tail bounds are propagated conservatively.
pub fn convolve_window(f: &GroupRingElement, g: &WindowFunction) -> Result<WindowFunction> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            got: f.dim(),
        });
    }
    let s = f.support_extent();
    let r_out = g.radius() - s;
    if r_out < 0 {
        return Err(Error::WindowTooSmall {
            required: s,
            got: g.radius(),
        });
    }
    let parent = g.geometry();
    let mut out = WindowFunction::zeros(f.dim(), r_out)?;
    let terms: Vec<(isize, f64)> = f
        .terms()
        .map(|(m, c)| {
            let neg: Vec<i64> = m.exps().iter().map(|e| -e).collect();
            (parent.flat_offset(&neg), c.to_f64().unwrap_or(f64::NAN))
        })
        .collect();
    let child = out.geometry();
    let gv = g.values();
    let ov = out.values_mut();
    child.for_each(|idx, coords| {
        let base = parent.index(coords).expect("shrunken box fits") as isize;
        let mut acc = 0.0;
        for (off, c) in &terms {
            acc += c * gv[(base + off) as usize];
        }
        ov[idx] = acc;
    });

    let l1: f64 = f.l1_norm().to_f64().unwrap_or(f64::INFINITY);
    // Any output cell beyond radius R-s reads g beyond radius R-2s.
    let mut boundary_sup = 0.0f64;
    let mut boundary_l1 = 0.0f64;
    let inner = g.radius() - 2 * s;
    parent.for_each(|idx, coords| {
        let linf = coords.iter().map(|c| c.abs()).max().unwrap_or(0);
        if linf > inner {
            let v = gv[idx].abs();
            boundary_sup = boundary_sup.max(v);
            boundary_l1 += v;
        }
    });
    out.set_tail_bounds(
        l1 * (g.tail_sup_bound() + boundary_sup),
        l1 * (g.tail_l1_bound() + boundary_l1),
    );
    Ok(out)
}

/// Values in `[0, 1)` on a box: a finite window of a point of the full
/// torus shift, and in particular of points of `X_f`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusConfiguration {
    geometry: BoxGeometry,
    values: Vec<f64>,
}

impl TorusConfiguration {
    pub fn zeros(dim: usize, radius: i64) -> Result<Self> {
        let geometry = BoxGeometry::new(dim, radius)?;
        Ok(TorusConfiguration {
            values: vec![0.0; geometry.len()],
            geometry,
        })
    }

    pub fn from_values(dim: usize, radius: i64, values: Vec<f64>) -> Result<Self> {
        let geometry = BoxGeometry::new(dim, radius)?;
        if values.len() != geometry.len() {
            return Err(Error::InvalidParameter("value array shape mismatch"));
        }
        if values.iter().any(|v| !(0.0..1.0).contains(v)) {
            return Err(Error::InvalidParameter("torus values must lie in [0,1)"));
        }
        Ok(TorusConfiguration { geometry, values })
    }

    /// Constant configuration `x == c` (reduced mod 1).
    pub fn constant(dim: usize, radius: i64, c: f64) -> Result<Self> {
        let geometry = BoxGeometry::new(dim, radius)?;
        Ok(TorusConfiguration {
            values: vec![frac(c); geometry.len()],
            geometry,
        })
    }

    pub fn dim(&self) -> usize {
        self.geometry.dim
    }

    pub fn radius(&self) -> i64 {
        self.geometry.radius
    }

    pub fn geometry(&self) -> BoxGeometry {
        self.geometry
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, coords: &[i64]) -> Option<f64> {
        self.geometry.index(coords).map(|i| self.values[i])
    }

    /// Lift to a plain window (values as stored, unknown tails).
    pub fn as_window(&self) -> WindowFunction {
        let mut w = WindowFunction::zeros(self.dim(), self.radius()).expect("same geometry");
        w.values_mut().copy_from_slice(&self.values);
        w
    }

    /// Largest distance-to-integer over the window.
    pub fn max_dist_to_int(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, &v| a.max(dist_to_int(v)))
    }

    /// Entrywise sum mod 1.
    pub fn add_mod1(&self, other: &Self) -> Result<Self> {
        if self.geometry != other.geometry {
            return Err(Error::InvalidParameter("window geometry mismatch"));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| frac(a + b))
            .collect();
        Ok(TorusConfiguration {
            geometry: self.geometry,
            values,
        })
    }
}

fn frac(v: f64) -> f64 {
    let r = v - v.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Entrywise fractional part: the projection `pi` onto torus configurations.
/// Adding an integer-valued window before projecting changes nothing.
pub fn project_to_torus(g: &WindowFunction) -> TorusConfiguration {
    TorusConfiguration {
        geometry: g.geometry(),
        values: g.values().iter().map(|&v| frac(v)).collect(),
    }
}

/// A character of the principal system: a coset representative `rep` of
/// `rep + Z[Z^d] f` for the modulus `f`. Equality is decided exactly by
/// divisibility of the difference; the stored representative is reduced to
/// the division normal form of its coset for compactness.
#[derive(Debug, Clone)]
pub struct Character {
    rep: GroupRingElement,
    modulus: GroupRingElement,
    /// Normal form of `rep` under division by the modulus over `Q`.
    canonical: RationalGroupRingElement,
}

impl Character {
    pub fn new(rep: GroupRingElement, modulus: GroupRingElement) -> Result<Self> {
        if modulus.is_zero() {
            return Err(Error::ZeroElement);
        }
        if rep.dim() != modulus.dim() {
            return Err(Error::DimensionMismatch {
                expected: modulus.dim(),
                got: rep.dim(),
            });
        }
        let (_, canonical) = rep.to_rational().reduce_mod(&modulus.to_rational())?;
        Ok(Character {
            rep,
            modulus,
            canonical,
        })
    }

    pub fn rep(&self) -> &GroupRingElement {
        &self.rep
    }

    pub fn modulus(&self) -> &GroupRingElement {
        &self.modulus
    }

    pub fn canonical(&self) -> &RationalGroupRingElement {
        &self.canonical
    }
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        if self.modulus != other.modulus {
            return false;
        }
        let diff = &self.rep - &other.rep;
        matches!(self.modulus.divides(&diff), Ok(Some(_)))
    }
}

/// The pairing `<chi, x> = sum_h rep_h x(h) mod 1`, in `[0, 1)`.
pub fn pairing(chi: &Character, x: &TorusConfiguration) -> Result<f64> {
    pairing_raw(chi.rep(), x).map(frac)
}

/// The same sum before reduction mod 1 (useful for defect measurements).
pub fn pairing_raw(rep: &GroupRingElement, x: &TorusConfiguration) -> Result<f64> {
    if rep.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: rep.dim(),
        });
    }
    let mut acc = 0.0f64;
    for (m, c) in rep.terms() {
        let v = x.value(m.exps()).ok_or(Error::SupportExceedsWindow)?;
        acc += c.to_f64().unwrap_or(f64::NAN) * v;
    }
    Ok(acc)
}

/// `Psi_{x,chi}(gamma) = |<gamma x, chi>|` with the distance-to-`Z` metric.
///
/// `(gamma x)(h) = x(h - gamma)`, so the translated support must stay inside
/// the window.
pub fn psi(x: &TorusConfiguration, chi: &Character, gamma: &Monomial) -> Result<f64> {
    Ok(dist_to_int(translated_pairing(x, chi, gamma)?))
}

/// `|Psi'_{x,chi}(gamma)| = |e^{2 pi i <gamma x, chi>} - 1|`.
pub fn psi_prime(x: &TorusConfiguration, chi: &Character, gamma: &Monomial) -> Result<f64> {
    Ok(circle_gap(translated_pairing(x, chi, gamma)?))
}

fn translated_pairing(
    x: &TorusConfiguration,
    chi: &Character,
    gamma: &Monomial,
) -> Result<f64> {
    if gamma.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            got: gamma.dim(),
        });
    }
    let mut acc = 0.0f64;
    for (m, c) in chi.rep().terms() {
        let shifted: Vec<i64> = m
            .exps()
            .iter()
            .zip(gamma.exps())
            .map(|(e, g)| e - g)
            .collect();
        let v = x.value(&shifted).ok_or(Error::SupportExceedsWindow)?;
        acc += c.to_f64().unwrap_or(f64::NAN) * v;
    }
    Ok(acc)
}

/// Verdict of a finite-window `l^p` membership estimate. Never a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpVerdict {
    ConsistentWithLp,
    Inconsistent,
    Inconclusive,
}

/// Windowed estimate of `|| Psi'_{x,chi} ||_p` with a fitted growth/decay
/// diagnostic over nested sub-windows.
#[derive(Debug, Clone)]
pub struct PHomoclinicEstimate {
    /// Partial p-th-power sums over radii `0..=max_radius`.
    pub partial_power_sums: Vec<f64>,
    /// Windowed p-norm (p-th root of the last partial sum).
    pub windowed_norm: f64,
    /// Least-squares slope of `log(shell increment)` against radius.
    pub exp_rate: f64,
    /// Least-squares slope of `log(shell increment)` against `log(radius)`.
    pub power_rate: f64,
    pub verdict: LpVerdict,
}

/// Exponential-decay slope below which shell increments are treated as
/// geometric (certainly summable on any window).
const EXP_DECAY_SLOPE: f64 = -0.05;
/// Power-law slope at or below which `sum s^rate` converges comfortably.
const POWER_SUMMABLE_SLOPE: f64 = -1.1;
/// Power-law slope at or above which increments are clearly not summable.
const POWER_DIVERGENT_SLOPE: f64 = -0.9;
/// Windows smaller than this cannot distinguish slow growth from a
/// pre-asymptotic transient; the verdict degrades to inconclusive.
const MIN_CONCLUSIVE_RADIUS: i64 = 32;

/// Partial `l^p` sums of `Psi'_{x,chi}` over nested windows plus a fitted
/// growth diagnostic. The verdict is "consistent with l^p", "inconsistent",
/// or "inconclusive"; a finite window can never prove membership.
pub fn p_homoclinic_estimate(
    x: &TorusConfiguration,
    p: f64,
    chi: &Character,
) -> Result<PHomoclinicEstimate> {
    if p < 1.0 {
        return Err(Error::InvalidParameter("p must be at least 1"));
    }
    let ext = chi.rep().support_extent();
    let max_radius = x.radius() - ext;
    if max_radius < 0 {
        return Err(Error::WindowTooSmall {
            required: ext,
            got: x.radius(),
        });
    }
    let geom = BoxGeometry::new(x.dim(), max_radius)?;
    let mut shell_sums = vec![0.0f64; (max_radius + 1) as usize];
    let mut err = None;
    geom.for_each(|_, coords| {
        if err.is_some() {
            return;
        }
        let gamma = Monomial::new(coords.to_vec());
        match psi_prime(x, chi, &gamma) {
            Ok(v) => {
                let s = coords.iter().map(|c| c.abs()).max().unwrap_or(0);
                shell_sums[s as usize] += v.powf(p);
            }
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut partial = Vec::with_capacity(shell_sums.len());
    let mut acc = 0.0;
    for s in &shell_sums {
        acc += s;
        partial.push(acc);
    }
    let windowed_norm = acc.powf(1.0 / p);

    // Fit shell increments on the outer half of the window.
    let start = shell_sums.len() / 2;
    let pts: Vec<(f64, f64)> = shell_sums
        .iter()
        .enumerate()
        .skip(start.max(1))
        .filter(|(_, v)| **v > 0.0)
        .map(|(s, v)| (s as f64, v.ln()))
        .collect();
    let exp_rate = slope(pts.iter().map(|&(s, l)| (s, l)));
    let power_rate = slope(pts.iter().map(|&(s, l)| (s.ln(), l)));

    let verdict = if acc == 0.0 || pts.len() < 3 {
        if acc == 0.0 {
            LpVerdict::ConsistentWithLp
        } else {
            LpVerdict::Inconclusive
        }
    } else if exp_rate <= EXP_DECAY_SLOPE {
        LpVerdict::ConsistentWithLp
    } else if power_rate <= POWER_SUMMABLE_SLOPE {
        LpVerdict::ConsistentWithLp
    } else if power_rate >= POWER_DIVERGENT_SLOPE && max_radius >= MIN_CONCLUSIVE_RADIUS {
        LpVerdict::Inconsistent
    } else {
        LpVerdict::Inconclusive
    };

    Ok(PHomoclinicEstimate {
        partial_power_sums: partial,
        windowed_norm,
        exp_rate,
        power_rate,
        verdict,
    })
}

/// Least-squares slope through `(x, y)` pairs; 0 for fewer than two points.
pub(crate) fn slope(pts: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let n = pts.clone().count();
    if n < 2 {
        return 0.0;
    }
    let nf = n as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for (x, y) in pts {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let denom = nf * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        0.0
    } else {
        (nf * sxy - sx * sy) / denom
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

    #[test]
    fn geometry_roundtrip() {
        let g = BoxGeometry::new(3, 2).unwrap();
        assert_eq!(g.len(), 125);
        let mut seen = 0;
        g.for_each(|idx, coords| {
            assert_eq!(g.index(coords), Some(idx));
            assert_eq!(g.coords(idx), coords);
            seen += 1;
        });
        assert_eq!(seen, 125);
        assert_eq!(g.index(&[0, 0, 3]), None);
    }

    #[test]
    fn flat_offset_consistency() {
        let g = BoxGeometry::new(2, 4).unwrap();
        let base = g.index(&[1, -2]).unwrap() as isize;
        let off = g.flat_offset(&[-1, 2]);
        assert_eq!((base + off) as usize, g.index(&[0, 0]).unwrap());
    }

    #[test]
    fn convolve_with_unit_is_identity() {
        let mut g = WindowFunction::zeros(1, 3).unwrap();
        for (i, v) in g.values_mut().iter_mut().enumerate() {
            *v = i as f64 * 0.25 - 0.8;
        }
        g.set_tail_bounds(0.5, 2.0);
        let one = GroupRingElement::one(1);
        let out = convolve_window(&one, &g).unwrap();
        assert_eq!(out.radius(), 3);
        assert_eq!(out.values(), g.values());
    }

    #[test]
    fn convolve_shift_moves_delta() {
        let d = WindowFunction::delta(1, 3, 1.0).unwrap();
        let u = gr(1, &[(&[1], 1)]);
        let out = convolve_window(&u, &d).unwrap();
        assert_eq!(out.radius(), 2);
        // (u * delta_0)_g = delta_0(g - 1): mass moves to +1.
        assert_eq!(out.value(&[1]), Some(1.0));
        assert_eq!(out.value(&[0]), Some(0.0));
        assert_eq!(out.value(&[-1]), Some(0.0));
    }

    #[test]
    fn convolve_window_too_small() {
        let d = WindowFunction::delta(1, 0, 1.0).unwrap();
        let u = gr(1, &[(&[1], 1)]);
        assert!(matches!(
            convolve_window(&u, &d),
            Err(Error::WindowTooSmall { .. })
        ));
    }

    #[test]
    fn projection_examples() {
        let zero = WindowFunction::zeros(2, 1).unwrap();
        let x = project_to_torus(&zero);
        assert!(x.values().iter().all(|&v| v == 0.0));
        let mut w = WindowFunction::zeros(1, 0).unwrap();
        w.values_mut()[0] = 1.75;
        assert_eq!(project_to_torus(&w).value(&[0]), Some(0.75));
        let mut neg = WindowFunction::zeros(1, 0).unwrap();
        neg.values_mut()[0] = -0.25;
        assert_eq!(project_to_torus(&neg).value(&[0]), Some(0.75));
        // pi(lambda g) = frac(lambda g) entrywise.
        let mut g = WindowFunction::zeros(1, 2).unwrap();
        let vals = [0.3, -1.2, 0.9, 2.5, -0.7];
        g.values_mut().copy_from_slice(&vals);
        let mut g3 = WindowFunction::zeros(1, 2).unwrap();
        for (o, v) in g3.values_mut().iter_mut().zip(&vals) {
            *o = 3.0 * v;
        }
        let lhs = project_to_torus(&g3);
        for (o, v) in lhs.values().iter().zip(&vals) {
            assert!((o - frac(3.0 * v)).abs() < 1e-12);
        }
    }

    #[test]
    fn projection_invariant_under_integer_windows() {
        let mut w = WindowFunction::zeros(1, 2).unwrap();
        w.values_mut().copy_from_slice(&[0.1, 0.4, -0.3, 1.9, 0.0]);
        let mut shifted = w.clone();
        for (i, v) in shifted.values_mut().iter_mut().enumerate() {
            *v += (i as f64) - 2.0;
        }
        let a = project_to_torus(&w);
        let b = project_to_torus(&shifted);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn lp_norm_examples() {
        let d = WindowFunction::delta(2, 3, 1.0).unwrap();
        for p in [1.0, 2.0, 7.5, f64::INFINITY] {
            let (n, certified) = d.lp_norm(p, 1e-9).unwrap();
            assert!((n - 1.0).abs() < 1e-15);
            assert!(certified);
        }
        let mut ones = WindowFunction::zeros(1, 1).unwrap();
        ones.values_mut().copy_from_slice(&[1.0, 1.0, 1.0]);
        assert!((ones.lp_norm(1.0, 1e-9).unwrap().0 - 3.0).abs() < 1e-15);
        assert!(!ones.lp_norm(1.0, 1e-9).unwrap().1);

        // geometric window 0.5^|n| at R = 20: l1 norm 3 - 2*0.5^20.
        let r = 20i64;
        let mut geo = WindowFunction::zeros(1, r).unwrap();
        let geom = geo.geometry();
        let vals = geo.values_mut();
        geom.for_each(|idx, c| {
            vals[idx] = 0.5f64.powi(c[0].abs() as i32);
        });
        let tail = 2.0 * 0.5f64.powi(20);
        geo.set_tail_bounds(0.5f64.powi(21), tail);
        let (n, _) = geo.lp_norm(1.0, 1.0).unwrap();
        assert!((n - 3.0).abs() <= tail);
        assert!((n - (3.0 - 2.0 * 0.5f64.powi(20))).abs() < 1e-12);
        assert!(geo.lp_norm(0.5, 1e-9).is_err());
    }

    #[test]
    fn pairing_examples() {
        let f = gr(1, &[(&[0], -1), (&[1], -1), (&[2], 1)]);
        let mut x = TorusConfiguration::zeros(1, 2).unwrap();
        x.values[x.geometry.index(&[0]).unwrap()] = 0.25;
        let chi = Character::new(GroupRingElement::one(1), f.clone()).unwrap();
        assert!((pairing(&chi, &x).unwrap() - 0.25).abs() < 1e-15);
        let chi0 = Character::new(GroupRingElement::zero(1), f.clone()).unwrap();
        assert_eq!(pairing(&chi0, &x).unwrap(), 0.0);
        // support sticking out of the window errors
        let wide = Character::new(gr(1, &[(&[5], 1)]), f).unwrap();
        assert!(matches!(
            pairing(&wide, &x),
            Err(Error::SupportExceedsWindow)
        ));
    }

    #[test]
    fn psi_examples() {
        let f = gr(1, &[(&[0], -1), (&[1], -1), (&[2], 1)]);
        let chi = Character::new(GroupRingElement::one(1), f.clone()).unwrap();
        let zero = TorusConfiguration::zeros(1, 4).unwrap();
        let g0 = Monomial::identity(1);
        assert_eq!(psi(&zero, &chi, &g0).unwrap(), 0.0);
        assert_eq!(psi_prime(&zero, &chi, &g0).unwrap(), 0.0);

        let mut x = TorusConfiguration::zeros(1, 2).unwrap();
        x.values[x.geometry.index(&[0]).unwrap()] = 0.5;
        assert!((psi(&x, &chi, &g0).unwrap() - 0.5).abs() < 1e-15);
        assert!((psi_prime(&x, &chi, &g0).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn psi_prime_identity_against_dist() {
        // |e^{2 pi i t} - 1| == 2 sin(pi |t + Z|) for sampled t.
        for k in 0..200 {
            let t = -3.0 + 0.031 * k as f64;
            let lhs = circle_gap(t);
            let rhs = 2.0 * (core::f64::consts::PI * dist_to_int(t)).sin();
            assert!((lhs - rhs).abs() < 1e-12, "t = {t}");
            assert!(lhs <= 2.0 + 1e-15);
            assert!(dist_to_int(t) <= 0.5 + 1e-15);
        }
    }

    #[test]
    fn p_homoclinic_zero_is_consistent() {
        let f = gr(1, &[(&[0], -1), (&[1], -1), (&[2], 1)]);
        let chi = Character::new(GroupRingElement::one(1), f).unwrap();
        let zero = TorusConfiguration::zeros(1, 16).unwrap();
        let est = p_homoclinic_estimate(&zero, 1.0, &chi).unwrap();
        assert_eq!(est.verdict, LpVerdict::ConsistentWithLp);
        assert_eq!(est.windowed_norm, 0.0);
    }

    #[test]
    fn character_equality_is_coset_equality() {
        let f = gr(1, &[(&[0], -1), (&[1], -1), (&[2], 1)]);
        let a = Character::new(GroupRingElement::one(1), f.clone()).unwrap();
        // 1 + u^-1 f is the same coset even though reps differ wildly.
        let shifted_f = gr(1, &[(&[-1], -1), (&[0], -1), (&[1], 1)]);
        let b = Character::new(&GroupRingElement::one(1) + &shifted_f, f.clone()).unwrap();
        assert_eq!(a, b);
        let c = Character::new(gr(1, &[(&[1], 1)]), f).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn window_reversal() {
        let mut w = WindowFunction::zeros(1, 2).unwrap();
        w.values_mut().copy_from_slice(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let r = w.reversed();
        assert_eq!(r.values(), &[5.0, 4.0, 3.0, 2.0, 1.0]);
    }
}
