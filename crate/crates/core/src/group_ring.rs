//! Exact sparse arithmetic in the integral and rational group rings of `Z^d`.
//!
//! Group elements of `Z^d` are written additively as exponent vectors, so an
//! element of `Z[Z^d]` is a Laurent polynomial in `d` commuting variables
//! `u_1, ..., u_d` and the ring product is convolution:
//! `(ab)_g = sum_h a_{g-h} b_h`.
//!
//! Coefficients are arbitrary-precision integers ([`num_bigint::BigInt`]) or
//! rationals ([`num_rational::BigRational`]); nothing in this module rounds.
//! Terms are stored sparsely in a `BTreeMap`, so iteration order is canonical
//! and every operation is deterministic.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

mod lattice;

/// A group element of `Z^d` in additive notation: an exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    /// The identity element of `Z^d` (all exponents zero).
    pub fn identity(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    pub fn new(exps: impl Into<Vec<i64>>) -> Self {
        Monomial { exps: exps.into() }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Group operation (vector addition).
    pub fn compose(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Group inverse (vector negation).
    pub fn inverse(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    /// `l^infinity` extent: the largest coordinate magnitude.
    pub fn linf(&self) -> i64 {
        self.exps.iter().map(|e| e.abs()).max().unwrap_or(0)
    }

    /// Euclidean length of the exponent vector.
    pub fn l2(&self) -> f64 {
        let s: i64 = self.exps.iter().map(|e| e * e).sum();
        num_traits::Float::sqrt(s as f64)
    }
}

/// Graded-lexicographic comparison of two nonnegative exponent vectors.
///
/// Only used by the division algorithm, after supports have been translated
/// so every exponent is nonnegative; there it is a genuine monomial order.
fn grlex(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A finitely supported function `Z^d -> C` under convolution: an element of
/// `C[Z^d]` for `C` the integers ([`BigInt`], the default) or the rationals
/// ([`BigRational`], see [`RationalGroupRingElement`]).
///
/// Invariants: no stored zero coefficients; every stored monomial has length
/// `dim`. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement<C = BigInt> {
    dim: usize,
    terms: BTreeMap<Monomial, C>,
}

/// An element of `Q[Z^d]` with reduced exact fractions.
pub type RationalGroupRingElement = GroupRingElement<BigRational>;

impl<C> GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed,
{
    pub fn zero(dim: usize) -> Self {
        GroupRingElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit: coefficient one at the identity.
    pub fn one(dim: usize) -> Self {
        Self::monomial(Monomial::identity(dim), C::one())
    }

    pub fn monomial(m: Monomial, coef: C) -> Self {
        let dim = m.dim();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(m, coef);
        }
        GroupRingElement { dim, terms }
    }

    /// Build from `(exponents, coefficient)` pairs; duplicate exponents are
    /// summed and zero coefficients dropped.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
    {
        let mut out = BTreeMap::new();
        for (exps, coef) in terms {
            if exps.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: exps.len(),
                });
            }
            let m = Monomial::new(exps);
            let entry = out.entry(m).or_insert_with(C::zero);
            *entry = entry.clone() + coef;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement { dim, terms: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient at `m` (zero if absent).
    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    /// Iterate terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    /// The support as monomials, in canonical order.
    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    /// `l^infinity` extent of the support; 0 for the zero element.
    pub fn support_extent(&self) -> i64 {
        self.terms.keys().map(|m| m.linf()).max().unwrap_or(0)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            })
        }
    }

    /// Convolution product `(ab)_g = sum_h a_{g-h} b_h`, exact.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut terms: BTreeMap<Monomial, C> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.compose(mb);
                let entry = terms.entry(m).or_insert_with(C::zero);
                *entry = entry.clone() + ca.clone() * cb.clone();
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            dim: self.dim,
            terms,
        })
    }

    /// The natural involution `(a*)_g = a_{-g}`.
    pub fn involution(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.inverse(), c.clone()))
            .collect();
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }

    /// `l^1` norm: the sum of coefficient magnitudes.
    pub fn l1_norm(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.abs())
    }

    /// `l^infinity` norm: the largest coefficient magnitude.
    pub fn linf_norm(&self) -> C {
        self.terms
            .values()
            .map(|c| c.abs())
            .fold(C::zero(), |acc, c| if c > acc { c } else { acc })
    }

    /// Sum of all coefficients, i.e. the evaluation at the trivial character.
    pub fn coefficient_sum(&self) -> C {
        self.terms
            .values()
            .fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Whether `a == a*`.
    pub fn is_self_adjoint(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| self.terms.get(&m.inverse()) == Some(c))
    }

    /// Multiply by the monomial `u^delta`, translating the support.
    pub fn shifted(&self, delta: &[i64]) -> Self {
        debug_assert_eq!(delta.len(), self.dim);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    Monomial::new(
                        m.exps()
                            .iter()
                            .zip(delta)
                            .map(|(e, d)| e + d)
                            .collect::<Vec<_>>(),
                    ),
                    c.clone(),
                )
            })
            .collect();
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }

    /// Scale every coefficient by `c`.
    pub fn scaled(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, x)| (m.clone(), x.clone() * c.clone()))
            .collect();
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }

    /// Componentwise minimum of the support exponents; `None` for zero.
    pub fn min_exponents(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut mins = first.exps().to_vec();
        for m in it {
            for (lo, e) in mins.iter_mut().zip(m.exps()) {
                if e < lo {
                    *lo = *e;
                }
            }
        }
        Some(mins)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            let entry = terms.entry(m.clone()).or_insert_with(C::zero);
            *entry = entry.clone() + c;
        }
        terms.retain(|_, c| !c.is_zero());
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }
}

impl GroupRingElement<BigInt> {
    /// Convenience constructor from machine-integer terms.
    pub fn from_i64_terms(dim: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::from_terms(
            dim,
            terms
                .iter()
                .map(|(exps, c)| (exps.to_vec(), BigInt::from(*c))),
        )
    }

    /// The gcd of all coefficients (positive). Errors on the zero element.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    /// Whether the content is 1. For nonzero `f` over `Z^d` this is exactly
    /// the connectedness test for the phase space `X_f`.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.content()?.is_one())
    }

    /// Split as `content * primitive_part`, exactly.
    pub fn primitive_part(&self) -> Result<(BigInt, Self)> {
        let content = self.content()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c / &content))
            .collect();
        Ok((
            content,
            GroupRingElement {
                dim: self.dim,
                terms,
            },
        ))
    }

    /// The dominant monomial, if one coefficient outweighs the `l^1` mass of
    /// all the others. Errors on the zero element.
    pub fn dominant_monomial(&self) -> Result<Option<Monomial>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let total = self.l1_norm();
        // |c| > total - |c| for at most one term.
        for (m, c) in &self.terms {
            let a = c.abs();
            if &a + &a > total {
                return Ok(Some(m.clone()));
            }
        }
        Ok(None)
    }

    /// Whether some coefficient strictly dominates the rest in `l^1`.
    pub fn is_lopsided(&self) -> Result<bool> {
        Ok(self.dominant_monomial()?.is_some())
    }

    /// Well-balancedness: coefficients sum to zero, off-identity coefficients
    /// are nonpositive, the element is self-adjoint, and the support spans
    /// `Z^d` as a group (all Smith elementary divisors 1).
    pub fn is_well_balanced(&self) -> bool {
        if !self.coefficient_sum().is_zero() {
            return false;
        }
        for (m, c) in &self.terms {
            if !m.is_identity() && c.is_positive() {
                return false;
            }
        }
        if !self.is_self_adjoint() {
            return false;
        }
        let rows: Vec<Vec<i64>> = self.terms.keys().map(|m| m.exps().to_vec()).collect();
        lattice::spans_lattice(&rows, self.dim)
    }

    /// View in `Q[Z^d]`.
    pub fn to_rational(&self) -> RationalGroupRingElement {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone())))
            .collect();
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }

    /// Decide whether `g` lies in the principal ideal `Q[Z^d] * self`, and
    /// return the quotient when it does.
    ///
    /// Both supports are translated so their componentwise minimum exponent
    /// is zero (monomials are units, so this changes nothing), then ordinary
    /// multivariate division with the graded-lexicographic order runs against
    /// the single divisor; a single polynomial generates its ideal under any
    /// monomial order, so a zero remainder is equivalent to membership.
    ///
    /// Errors when `self` is zero. `divides(f, 0)` is true for every `f != 0`.
    pub fn divides(&self, g: &Self) -> Result<Option<RationalGroupRingElement>> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        self.check_dim(g)?;
        if g.is_zero() {
            return Ok(Some(RationalGroupRingElement::zero(self.dim)));
        }
        let f_min = self.min_exponents().expect("nonzero");
        let g_min = g.min_exponents().expect("nonzero");
        let f_norm = self
            .shifted(&f_min.iter().map(|e| -e).collect::<Vec<_>>())
            .to_rational();
        let g_norm = g
            .shifted(&g_min.iter().map(|e| -e).collect::<Vec<_>>())
            .to_rational();
        let (quot, rem) = poly_div_rem(&g_norm, &f_norm);
        if !rem.is_zero() {
            return Ok(None);
        }
        let delta: Vec<i64> = g_min.iter().zip(&f_min).map(|(a, b)| a - b).collect();
        Ok(Some(quot.shifted(&delta)))
    }
}

impl RationalGroupRingElement {
    /// Reduce `self` modulo the principal ideal generated by `modulus`,
    /// returning `(quotient, remainder)` with
    /// `self = quotient * modulus + remainder` and no remainder term
    /// reducible by the divisor's leading monomial. The remainder is the
    /// canonical normal form of the coset `self + Q[Z^d] * modulus`.
    pub fn reduce_mod(&self, modulus: &Self) -> Result<(Self, Self)> {
        if modulus.is_zero() {
            return Err(Error::ZeroElement);
        }
        self.check_dim(modulus)?;
        if self.is_zero() {
            return Ok((Self::zero(self.dim), Self::zero(self.dim)));
        }
        let f_min = modulus.min_exponents().expect("nonzero");
        let neg_f_min: Vec<i64> = f_min.iter().map(|e| -e).collect();
        let f_norm = modulus.shifted(&neg_f_min);
        // Lift self just enough to make its exponents nonnegative; shifting
        // further would hide reducible terms from the division.
        let g_min = self.min_exponents().expect("nonzero");
        let lift: Vec<i64> = g_min.iter().map(|e| (-e).max(0)).collect();
        let g_norm = self.shifted(&lift);
        let (quot, rem) = poly_div_rem(&g_norm, &f_norm);
        // self = u^{-lift} g_norm and modulus = u^{f_min} f_norm.
        let delta_q: Vec<i64> = lift.iter().zip(&f_min).map(|(l, b)| -l - b).collect();
        let delta_r: Vec<i64> = lift.iter().map(|l| -l).collect();
        Ok((quot.shifted(&delta_q), rem.shifted(&delta_r)))
    }
}

/// Single-divisor multivariate division under graded-lex, for operands whose
/// exponents are all nonnegative. Returns `(quotient, remainder)`.
fn poly_div_rem(
    g: &RationalGroupRingElement,
    f: &RationalGroupRingElement,
) -> (RationalGroupRingElement, RationalGroupRingElement) {
    let dim = g.dim();
    let (lead_m, lead_c) = f
        .terms()
        .max_by(|(a, _), (b, _)| grlex(a.exps(), b.exps()))
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("divisor is nonzero");

    let mut work: BTreeMap<Monomial, BigRational> =
        g.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut quot: BTreeMap<Monomial, BigRational> = BTreeMap::new();
    let mut rem: BTreeMap<Monomial, BigRational> = BTreeMap::new();

    while let Some(lt) = work
        .keys()
        .max_by(|a, b| grlex(a.exps(), b.exps()))
        .cloned()
    {
        let c = work.remove(&lt).expect("present");
        let divisible = lt
            .exps()
            .iter()
            .zip(lead_m.exps())
            .all(|(a, b)| a >= b);
        if !divisible {
            rem.insert(lt, c);
            continue;
        }
        let q_m = Monomial::new(
            lt.exps()
                .iter()
                .zip(lead_m.exps())
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        );
        let q_c = &c / &lead_c;
        // work -= q_c * u^{q_m} * f, skipping the cancelled leading term.
        for (m, fc) in f.terms() {
            if *m == lead_m {
                continue;
            }
            let target = q_m.compose(m);
            let delta = &q_c * fc;
            match work.entry(target) {
                Entry::Occupied(mut e) => {
                    let updated = e.get() - &delta;
                    if updated.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = updated;
                    }
                }
                Entry::Vacant(v) => {
                    v.insert(-delta);
                }
            }
        }
        quot.insert(q_m, q_c);
    }

    (
        GroupRingElement { dim, terms: quot },
        GroupRingElement { dim, terms: rem },
    )
}

impl<C> fmt::Display for GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut printed = false;
            if !mag.is_one() || m.is_identity() {
                write!(f, "{mag}")?;
                printed = true;
            }
            for (i, e) in m.exps().iter().enumerate() {
                if *e != 0 {
                    if printed {
                        write!(f, "*")?;
                    }
                    write!(f, "u{}", i + 1)?;
                    if *e != 1 {
                        write!(f, "^{e}")?;
                    }
                    printed = true;
                }
            }
        }
        Ok(())
    }
}

impl<C> Add for &GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed,
{
    type Output = GroupRingElement<C>;
    fn add(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.add_impl(rhs, false)
    }
}

impl<C> Sub for &GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed,
{
    type Output = GroupRingElement<C>;
    fn sub(self, rhs: Self) -> Self::Output {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.add_impl(rhs, true)
    }
}

impl<C> Mul for &GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed,
{
    type Output = GroupRingElement<C>;
    fn mul(self, rhs: Self) -> Self::Output {
        self.convolve(rhs).expect("dimension mismatch")
    }
}

impl<C> Neg for &GroupRingElement<C>
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed,
{
    type Output = GroupRingElement<C>;
    fn neg(self) -> Self::Output {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        GroupRingElement {
            dim: self.dim,
            terms,
        }
    }
}

/// Render a term list suitable for error dumps.
pub(crate) fn dump<C>(a: &GroupRingElement<C>) -> String
where
    C: Clone + PartialEq + PartialOrd + Zero + One + Neg<Output = C> + Signed + fmt::Display,
{
    use alloc::format;
    format!("{a}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::borrow::ToOwned;

    fn gr(dim: usize, terms: &[(&[i64], i64)]) -> GroupRingElement {
        GroupRingElement::from_i64_terms(dim, terms).unwrap()
    }

    /// Brute-force convolution by enumerating all term products.
    fn convolve_oracle(a: &GroupRingElement, b: &GroupRingElement) -> GroupRingElement {
        let mut pairs: Vec<(Vec<i64>, BigInt)> = Vec::new();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let exps: Vec<i64> = ma.exps().iter().zip(mb.exps()).map(|(x, y)| x + y).collect();
                pairs.push((exps, ca * cb));
            }
        }
        GroupRingElement::from_terms(a.dim(), pairs).unwrap()
    }

    #[test]
    fn convolution_difference_of_squares() {
        let a = gr(1, &[(&[0], 1), (&[1], -1)]);
        let b = gr(1, &[(&[0], 1), (&[1], 1)]);
        let expect = gr(1, &[(&[0], 1), (&[2], -1)]);
        assert_eq!(a.convolve(&b).unwrap(), expect);
    }

    #[test]
    fn convolution_unit() {
        let f = gr(2, &[(&[0, 0], 4), (&[1, 0], -1), (&[0, 1], -1), (&[2, -3], 7)]);
        let one = GroupRingElement::one(2);
        assert_eq!(f.convolve(&one).unwrap(), f);
        assert_eq!(one.convolve(&f).unwrap(), f);
    }

    #[test]
    fn convolution_two_dim_expansion() {
        // (2 - u1 - u2)(2 - u1^-1 - u2^-1)
        let a = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        let b = a.involution();
        let product = a.convolve(&b).unwrap();
        let expect = gr(
            2,
            &[
                (&[0, 0], 6),
                (&[1, 0], -2),
                (&[0, 1], -2),
                (&[-1, 0], -2),
                (&[0, -1], -2),
                (&[1, -1], 1),
                (&[-1, 1], 1),
            ],
        );
        assert_eq!(product, expect);
        assert_eq!(product, convolve_oracle(&a, &b));
    }

    #[test]
    fn convolution_dimension_mismatch() {
        let a = gr(1, &[(&[0], 1)]);
        let b = gr(2, &[(&[0, 0], 1)]);
        assert!(matches!(
            a.convolve(&b),
            Err(Error::DimensionMismatch { expected: 1, got: 2 })
        ));
    }

    #[test]
    fn involution_examples() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        let expect = gr(2, &[(&[0, 0], 2), (&[-1, 0], -1), (&[0, -1], -1)]);
        assert_eq!(f.involution(), expect);
        assert_eq!(f.involution().involution(), f);
        let one = GroupRingElement::<BigInt>::one(3);
        assert_eq!(one.involution(), one);
    }

    #[test]
    fn involution_antihomomorphism() {
        let f = gr(2, &[(&[0, 0], 3), (&[1, 2], -2), (&[-1, 0], 5)]);
        let g = gr(2, &[(&[0, 1], 1), (&[2, -1], 4)]);
        let lhs = f.convolve(&g).unwrap().involution();
        let rhs = g.involution().convolve(&f.involution()).unwrap();
        assert_eq!(lhs, rhs);
        // Abelian: also equals f* g*.
        assert_eq!(lhs, f.involution().convolve(&g.involution()).unwrap());
    }

    #[test]
    fn norms() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(f.l1_norm(), BigInt::from(4));
        assert_eq!(f.linf_norm(), BigInt::from(2));
        assert_eq!(GroupRingElement::<BigInt>::zero(2).l1_norm(), BigInt::zero());
        for d in 1..=3usize {
            let mut terms: Vec<(Vec<i64>, BigInt)> = vec![(vec![0; d], BigInt::from(2 * d as i64))];
            for i in 0..d {
                let mut e = vec![0i64; d];
                e[i] = 1;
                terms.push((e.clone(), BigInt::from(-1)));
                e[i] = -1;
                terms.push((e, BigInt::from(-1)));
            }
            let lap = GroupRingElement::from_terms(d, terms).unwrap();
            assert_eq!(lap.l1_norm(), BigInt::from(4 * d as i64));
        }
    }

    #[test]
    fn content_and_primitivity() {
        let f = gr(1, &[(&[0], 2), (&[1], 2)]);
        assert_eq!(f.content().unwrap(), BigInt::from(2));
        assert!(!f.is_primitive().unwrap());
        let g = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        assert!(g.is_primitive().unwrap());
        let h = gr(1, &[(&[0], 4), (&[1], -2)]);
        assert!(!h.is_primitive().unwrap());
        assert!(matches!(
            GroupRingElement::zero(1).content(),
            Err(Error::ZeroElement)
        ));
        let (c, p) = h.primitive_part().unwrap();
        assert_eq!(c, BigInt::from(2));
        assert!(p.is_primitive().unwrap());
        assert_eq!(p.scaled(&c), h);
    }

    #[test]
    fn lopsidedness() {
        let f = gr(1, &[(&[0], 3), (&[1], -1), (&[2], -1)]);
        assert_eq!(f.dominant_monomial().unwrap(), Some(Monomial::identity(1)));
        let fib = gr(1, &[(&[2], 1), (&[1], -1), (&[0], -1)]);
        assert!(!fib.is_lopsided().unwrap());
        let g = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        assert!(!g.is_lopsided().unwrap());
        assert!(matches!(
            GroupRingElement::zero(1).is_lopsided(),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn well_balanced() {
        // Discrete Laplacian in each dimension.
        for d in 1..=3usize {
            let mut terms: Vec<(Vec<i64>, BigInt)> = vec![(vec![0; d], BigInt::from(2 * d as i64))];
            for i in 0..d {
                let mut e = vec![0i64; d];
                e[i] = 1;
                terms.push((e.clone(), BigInt::from(-1)));
                e[i] = -1;
                terms.push((e, BigInt::from(-1)));
            }
            let lap = GroupRingElement::from_terms(d, terms).unwrap();
            assert!(lap.is_well_balanced(), "d = {d}");
        }
        // Not self-adjoint.
        let g = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        assert!(!g.is_well_balanced());
        // Support spans only the first axis of Z^2.
        let h = gr(2, &[(&[0, 0], 4), (&[1, 0], -2), (&[-1, 0], -2)]);
        assert!(!h.is_well_balanced());
    }

    #[test]
    fn divides_by_construction() {
        let f = gr(2, &[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], -1)]);
        let q = gr(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let g = f.convolve(&q).unwrap();
        let quot = f.divides(&g).unwrap().expect("divisible");
        assert_eq!(quot, q.to_rational());
    }

    #[test]
    fn divides_counterexample_and_zero() {
        let fib = gr(1, &[(&[2], 1), (&[1], -1), (&[0], -1)]);
        let u3 = gr(1, &[(&[3], 1)]);
        assert!(fib.divides(&u3).unwrap().is_none());
        assert!(fib.divides(&GroupRingElement::zero(1)).unwrap().is_some());
        assert!(matches!(
            GroupRingElement::zero(1).divides(&u3),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn divides_handles_laurent_translations() {
        // Divisor with negative exponents, quotient a unit times a binomial.
        let f = gr(2, &[(&[-1, 0], 2), (&[0, -1], -1), (&[1, 1], 3)]);
        let q = gr(2, &[(&[-2, 1], 5), (&[0, 0], -1)]);
        let g = f.convolve(&q).unwrap();
        let quot = f.divides(&g).unwrap().expect("divisible");
        assert_eq!(quot, q.to_rational());
        // Perturb one coefficient: no longer divisible.
        let bad = &g + &gr(2, &[(&[0, 0], 1)]);
        assert!(f.divides(&bad).unwrap().is_none());
    }

    #[test]
    fn reduce_mod_canonical_form() {
        let f = gr(1, &[(&[2], 1), (&[1], -1), (&[0], -1)]).to_rational();
        let g = gr(1, &[(&[5], 1)]).to_rational();
        let (q, r) = g.reduce_mod(&f).unwrap();
        let recomposed = &q.convolve(&f).unwrap() + &r;
        assert_eq!(recomposed, g);
        // Remainder degree < 2 after reduction by a degree-2 divisor.
        assert!(r.support().all(|m| m.exps()[0] < 2));
        // Another representative of the same coset reduces to a remainder in
        // the same coset: the difference of remainders is a multiple of f.
        let h = &g + &f.convolve(&gr(1, &[(&[0], 7), (&[-3], 2)]).to_rational()).unwrap();
        let (_, r2) = h.reduce_mod(&f).unwrap();
        let diff = &r - &r2;
        let fi = gr(1, &[(&[2], 1), (&[1], -1), (&[0], -1)]);
        let diff_int = GroupRingElement::from_terms(
            1,
            diff.terms().map(|(m, c)| {
                assert!(c.is_integer());
                (m.exps().to_vec(), c.to_integer())
            }),
        )
        .unwrap();
        assert!(fi.divides(&diff_int).unwrap().is_some());
    }

    #[test]
    fn display_roundtrip_text() {
        let f = gr(2, &[(&[0, 0], 4), (&[1, 0], -1), (&[-1, 0], -1), (&[0, 1], -1)]);
        assert_eq!(dump(&f), "-u1^-1 + 4 - u2 - u1".to_owned());
    }
}
