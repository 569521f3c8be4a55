//! Univariate helpers: ordinary-polynomial normal form, complex root
//! finding, exact irreducibility over `Q`, and exact companion-matrix
//! arithmetic over the rationals.
//!
//! Everything here is for `d = 1`. A Laurent polynomial is first multiplied
//! by a monomial so that it becomes an ordinary polynomial with nonzero
//! constant term; monomials are units, so this changes no divisibility or
//! root structure away from zero.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::group_ring::GroupRingElement;
use crate::Result;

/// Ordinary-polynomial view of a univariate Laurent polynomial: ascending
/// coefficients with nonzero constant and leading term, plus the monomial
/// shift that was divided out (`f = u^shift * sum coeffs[i] u^i`).
#[derive(Debug, Clone)]
pub struct OrdinaryPoly {
    pub coeffs: Vec<BigInt>,
    pub shift: i64,
}

impl OrdinaryPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Normalize a nonzero univariate element to an ordinary polynomial.
pub fn to_ordinary(f: &GroupRingElement) -> Result<OrdinaryPoly> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let min = f.min_exponents().expect("nonzero")[0];
    let max = f.support().map(|m| m.exps()[0]).max().expect("nonzero");
    let deg = (max - min) as usize;
    let mut coeffs = vec![BigInt::zero(); deg + 1];
    for (m, c) in f.terms() {
        coeffs[(m.exps()[0] - min) as usize] = c.clone();
    }
    Ok(OrdinaryPoly { coeffs, shift: min })
}

/// All complex roots of the ordinary polynomial, by the Durand-Kerner
/// simultaneous iteration. Deterministic start; the residual of the returned
/// roots is checked and an error raised if the iteration stalled.
pub fn roots(poly: &OrdinaryPoly) -> Result<Vec<Complex64>> {
    let n = poly.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = poly.coeffs[n]
        .to_f64()
        .ok_or(Error::InvalidParameter("coefficient overflow"))?;
    let monic: Vec<f64> = poly
        .coeffs
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    if monic.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter("coefficient overflow"));
    }
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + Complex64::new(*c, 0.0);
        }
        acc
    };
    // Standard non-real, non-unit-modulus seed progression.
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..600 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    let worst = zs.iter().map(|&z| eval(z).norm()).fold(0.0, f64::max);
    if worst > 1e-9 {
        return Err(Error::ValidationFailed(format!(
            "root iteration residual {worst:e}"
        )));
    }
    zs.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap()
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    Ok(zs)
}

/// Exact irreducibility over `Q` of a univariate Laurent polynomial, decided
/// by searching for an integer polynomial factor of degree at most `deg/2`
/// (Kronecker interpolation through divisor combinations of sample values).
/// Content and monomial units are divided out first, so this is
/// irreducibility of the primitive part in `Q[u, u^-1]`.
///
/// Degree is capped at 8 and the divisor-combination budget at ~200k; beyond
/// that [`Error::IrreducibilityCheckTooLarge`] is returned rather than an
/// unreliable answer.
pub fn is_irreducible(f: &GroupRingElement) -> Result<bool> {
    let (_, prim) = f.primitive_part()?;
    let poly = to_ordinary(&prim)?;
    let n = poly.degree();
    if n == 0 {
        // A unit: not irreducible by convention.
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if n > 8 {
        return Err(Error::IrreducibilityCheckTooLarge);
    }
    Ok(kronecker_factor(&poly.coeffs, n / 2)?.is_none())
}

/// Search for a nonconstant integer factor of degree <= `max_deg`; returns
/// one if it exists.
fn kronecker_factor(coeffs: &[BigInt], max_deg: usize) -> Result<Option<Vec<BigInt>>> {
    let eval_int = |x: i64| -> BigInt {
        let mut acc = BigInt::zero();
        for c in coeffs.iter().rev() {
            acc = acc * BigInt::from(x) + c;
        }
        acc
    };
    let sample_points: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 4, -4];
    for k in 1..=max_deg {
        // k+1 interpolation points where f does not vanish.
        let mut pts: Vec<(i64, BigInt)> = Vec::new();
        for &x in &sample_points {
            let v = eval_int(x);
            if v.is_zero() {
                // (u - x) divides f.
                return Ok(Some(vec![BigInt::from(-x), BigInt::one()]));
            }
            pts.push((x, v));
            if pts.len() == k + 1 {
                break;
            }
        }
        if pts.len() < k + 1 {
            return Err(Error::IrreducibilityCheckTooLarge);
        }
        let divisor_lists: Vec<Vec<BigInt>> =
            pts.iter().map(|(_, v)| signed_divisors(v)).collect();
        let mut budget = 200_000usize;
        let mut choice = vec![0usize; k + 1];
        loop {
            if budget == 0 {
                return Err(Error::IrreducibilityCheckTooLarge);
            }
            budget -= 1;
            let values: Vec<BigRational> = choice
                .iter()
                .enumerate()
                .map(|(i, &ci)| BigRational::from_integer(divisor_lists[i][ci].clone()))
                .collect();
            if let Some(g) = interpolate_integer(&pts, &values) {
                if g.len() >= 2 && divides_exact(coeffs, &g) {
                    return Ok(Some(g));
                }
            }
            // advance the mixed-radix counter over divisor choices
            let mut pos = 0;
            loop {
                if pos == choice.len() {
                    break;
                }
                choice[pos] += 1;
                if choice[pos] < divisor_lists[pos].len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == choice.len() {
                break;
            }
        }
    }
    Ok(None)
}

fn signed_divisors(v: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let a = v.abs();
    let mut d = BigInt::one();
    while &d * &d <= a {
        if (&a % &d).is_zero() {
            let q = &a / &d;
            out.push(d.clone());
            out.push(-d.clone());
            if q != d {
                out.push(q.clone());
                out.push(-q);
            }
        }
        d += 1;
    }
    out
}

/// Lagrange interpolation; returns ascending integer coefficients if the
/// interpolant is an integer polynomial, `None` otherwise.
fn interpolate_integer(pts: &[(i64, BigInt)], values: &[BigRational]) -> Option<Vec<BigInt>> {
    let k = pts.len();
    let mut acc = vec![BigRational::zero(); k];
    for i in 0..k {
        // Basis polynomial prod_{j != i} (u - x_j)/(x_i - x_j), ascending.
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for j in 0..k {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(BigInt::from(pts[j].0));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (p, c) in basis.iter().enumerate() {
                next[p + 1] = &next[p + 1] + c;
                next[p] = &next[p] - &(c * &xj);
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(pts[i].0)) - xj;
        }
        let w = &values[i] / denom;
        for (p, c) in basis.iter().enumerate() {
            acc[p] = &acc[p] + &(c * &w);
        }
    }
    while acc.len() > 1 && acc.last().map(|c| c.is_zero()) == Some(true) {
        acc.pop();
    }
    let mut out = Vec::with_capacity(acc.len());
    for c in acc {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}

/// Exact division test of ordinary polynomials over `Q`.
fn divides_exact(f: &[BigInt], g: &[BigInt]) -> bool {
    let gd = g.len() - 1;
    let lead = BigRational::from_integer(g[gd].clone());
    if lead.is_zero() {
        return false;
    }
    let mut rem: Vec<BigRational> = f
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let trim = |r: &mut Vec<BigRational>| {
        while r.len() > 1 && r.last().map(|c| c.is_zero()) == Some(true) {
            r.pop();
        }
    };
    trim(&mut rem);
    while rem.len() > gd + 1 || (rem.len() == gd + 1 && !rem.iter().all(|c| c.is_zero())) {
        if rem.len() < g.len() {
            break;
        }
        let q = rem.last().expect("nonempty") / &lead;
        let base = rem.len() - g.len();
        for (i, gc) in g.iter().enumerate() {
            let t = &q * &BigRational::from_integer(gc.clone());
            rem[base + i] = &rem[base + i] - &t;
        }
        trim(&mut rem);
        if rem.len() <= gd {
            break;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

/// Exact dense matrix over `Q`, just big enough for companion-matrix work.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    pub n: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * other.at(k, j);
                    out.data[i * n + j] = &out.data[i * n + j] + &t;
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, s: &BigRational) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = &*a + &(s * b);
        }
    }

    /// Exact determinant by rational Gaussian elimination.
    pub fn det(&self) -> BigRational {
        let n = self.n;
        if n == 0 {
            return BigRational::one();
        }
        let mut m = self.data.clone();
        let mut det = BigRational::one();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m[r * n + k].is_zero());
            let Some(p) = pivot_row else {
                return BigRational::zero();
            };
            if p != k {
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pv = m[k * n + k].clone();
            det *= &pv;
            for r in k + 1..n {
                let factor = &m[r * n + k] / &pv;
                if factor.is_zero() {
                    continue;
                }
                for j in k..n {
                    let t = &factor * &m[k * n + j];
                    m[r * n + j] = &m[r * n + j] - &t;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let p = (k..n).find(|&r| !a[r * n + k].is_zero())?;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let pv = a[k * n + k].clone();
            for j in 0..n {
                a[k * n + j] = &a[k * n + j] / &pv;
                inv.data[k * n + j] = &inv.data[k * n + j] / &pv;
            }
            for r in 0..n {
                if r == k || a[r * n + k].is_zero() {
                    continue;
                }
                let f = a[r * n + k].clone();
                for j in 0..n {
                    let t1 = &f * &a[k * n + j];
                    a[r * n + j] = &a[r * n + j] - &t1;
                    let t2 = &f * &inv.data[k * n + j];
                    inv.data[r * n + j] = &inv.data[r * n + j] - &t2;
                }
            }
        }
        Some(inv)
    }
}

/// Companion matrix of the monic normalization `p / lead(p)`: the matrix of
/// multiplication by `u` on `Q[u]/(p)` in the power basis.
pub fn companion_matrix(poly: &OrdinaryPoly) -> RatMatrix {
    let n = poly.degree();
    let lead = BigRational::from_integer(poly.coeffs[n].clone());
    let mut m = RatMatrix::zero(n);
    for i in 1..n {
        m.set(i, i - 1, BigRational::one());
    }
    for i in 0..n {
        let c = BigRational::from_integer(poly.coeffs[i].clone()) / &lead;
        m.set(i, n - 1, -c);
    }
    m
}

/// Evaluate a univariate Laurent polynomial on an invertible matrix:
/// `sum_k r_k C^k`, negative powers through the exact inverse.
pub fn evaluate_on_matrix(r: &GroupRingElement, c: &RatMatrix) -> Result<RatMatrix> {
    if r.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: r.dim(),
        });
    }
    let n = c.n;
    let mut out = RatMatrix::zero(n);
    if r.is_zero() {
        return Ok(out);
    }
    let min = r.min_exponents().expect("nonzero")[0];
    let max = r.support().map(|m| m.exps()[0]).max().expect("nonzero");
    let mut power = if min >= 0 {
        let mut p = RatMatrix::identity(n);
        for _ in 0..min {
            p = p.mul(c);
        }
        p
    } else {
        let inv = c
            .inverse()
            .ok_or(Error::InvalidParameter("matrix is singular"))?;
        let mut p = RatMatrix::identity(n);
        for _ in 0..(-min) {
            p = p.mul(&inv);
        }
        p
    };
    for e in min..=max {
        let m = crate::group_ring::Monomial::new(vec![e]);
        let coef = r.coefficient(&m);
        if !coef.is_zero() {
            out.add_scaled(&power, &BigRational::from_integer(coef));
        }
        if e < max {
            power = power.mul(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Float;

    fn gr(terms: &[(i64, i64)]) -> GroupRingElement {
        GroupRingElement::from_terms(
            1,
            terms.iter().map(|&(e, c)| (vec![e], BigInt::from(c))),
        )
        .unwrap()
    }

    #[test]
    fn ordinary_normalization() {
        let f = gr(&[(-1, 3), (2, -1)]);
        let p = to_ordinary(&f).unwrap();
        assert_eq!(p.shift, -1);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeffs[0], BigInt::from(3));
        assert_eq!(p.coeffs[3], BigInt::from(-1));
    }

    #[test]
    fn golden_ratio_roots() {
        let f = gr(&[(0, -1), (1, -1), (2, 1)]);
        let rs = roots(&to_ordinary(&f).unwrap()).unwrap();
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let psi = (1.0 - 5.0f64.sqrt()) / 2.0;
        assert!((rs[0].re - psi).abs() < 1e-12 && rs[0].im.abs() < 1e-12);
        assert!((rs[1].re - phi).abs() < 1e-12 && rs[1].im.abs() < 1e-12);
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&gr(&[(0, -1), (1, -1), (2, 1)])).unwrap());
        assert!(is_irreducible(&gr(&[(0, 3), (1, -1)])).unwrap());
        assert!(!is_irreducible(&gr(&[(0, -1), (2, 1)])).unwrap());
        assert!(is_irreducible(&gr(&[(0, -2), (1, -2), (2, 2)])).unwrap());
        assert!(is_irreducible(&gr(&[(0, 1), (1, 1), (2, 1)])).unwrap());
        assert!(!is_irreducible(&gr(&[(0, -6), (1, -1), (2, 1)])).unwrap());
        assert!(is_irreducible(&gr(&[(-3, -1), (-2, -1), (-1, 1)])).unwrap());
        // the mixing-not-weakly-expansive quartic is irreducible over Q
        assert!(is_irreducible(&gr(&[(0, 1), (1, -2), (2, 1), (3, -2), (4, 1)])).unwrap());
    }

    #[test]
    fn companion_and_matrix_eval() {
        let f = gr(&[(0, -1), (1, -1), (2, 1)]);
        let c = companion_matrix(&to_ordinary(&f).unwrap());
        // Cayley-Hamilton: f(C) = 0.
        let fc = evaluate_on_matrix(&f, &c).unwrap();
        assert!(fc.data.iter().all(|v| v.is_zero()));
        let u_inv = gr(&[(-1, 1)]);
        let m = evaluate_on_matrix(&u_inv, &c).unwrap();
        assert_eq!(m.mul(&c), RatMatrix::identity(2));
        let det = evaluate_on_matrix(&gr(&[(0, 2)]), &c).unwrap().det();
        assert_eq!(det, BigRational::from_integer(BigInt::from(4)));
    }
}
