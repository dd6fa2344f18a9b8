use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::algebra::{GradedAlgebra, Monomial, Sign};
use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Scalar};

/// A homogeneous element: a sparse combination of basis monomials of one
/// degree. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Element<F: Scalar> {
    algebra: Arc<GradedAlgebra>,
    degree: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Scalar> PartialEq for Element<F> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra)
            && (self.terms == other.terms && (self.degree == other.degree || self.terms.is_empty()))
    }
}

pub(crate) fn same_algebra(a: &Arc<GradedAlgebra>, b: &Arc<GradedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Scalar> Element<F> {
    pub fn zero(algebra: &Arc<GradedAlgebra>, degree: usize) -> Self {
        Self { algebra: Arc::clone(algebra), degree, terms: BTreeMap::new() }
    }

    pub fn scalar(algebra: &Arc<GradedAlgebra>, c: F) -> Self {
        Self::from_monomial(algebra, Monomial::unit(), c)
    }

    pub fn one(algebra: &Arc<GradedAlgebra>) -> Self {
        Self::scalar(algebra, F::one())
    }

    pub fn from_monomial(algebra: &Arc<GradedAlgebra>, m: Monomial, c: F) -> Self {
        let degree = algebra.monomial_degree(&m);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { algebra: Arc::clone(algebra), degree, terms }
    }

    pub fn generator(algebra: &Arc<GradedAlgebra>, index: usize) -> Self {
        Self::from_monomial(algebra, algebra.generator_monomial(index), F::one())
    }

    pub fn named(algebra: &Arc<GradedAlgebra>, name: &str) -> Result<Self> {
        Ok(Self::generator(algebra, algebra.generator_index(name)?))
    }

    /// Product of generators in the order given, with its Koszul sign.
    pub fn product_of(algebra: &Arc<GradedAlgebra>, raw: &[usize], c: F) -> Result<Self> {
        let degree = raw.iter().map(|&g| algebra.generators().get(g).map_or(0, |x| x.degree)).sum();
        let (m, sign) = algebra.canonicalize(raw)?;
        Ok(match sign {
            Sign::Zero => Self::zero(algebra, degree),
            Sign::Plus => Self::from_monomial(algebra, m, c),
            Sign::Minus => Self::from_monomial(algebra, m, -c),
        })
    }

    /// Parses sums like `2 e1*e2 - 1/2 e3*x^2`. All terms must share a degree.
    pub fn parse(algebra: &Arc<GradedAlgebra>, text: &str) -> Result<Self> {
        let err = || Error::Parse(text.to_string());
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut negative = false;
        let mut current = String::new();
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !current.trim().is_empty() && !current.trim_end().ends_with('/') {
                terms.push((negative, std::mem::take(&mut current)));
                negative = ch == '-';
            } else if (ch == '+' || ch == '-') && current.trim().is_empty() {
                if ch == '-' {
                    negative = !negative;
                }
            } else {
                current.push(ch);
            }
        }
        if current.trim().is_empty() {
            return Err(err());
        }
        terms.push((negative, current));
        let mut out: Option<Self> = None;
        for (neg, body) in terms {
            let body = body.trim();
            let mut coeff = F::one();
            let mut rest = body;
            if let Some(first) = body.split_whitespace().next() {
                if let Some(c) = parse_scalar::<F>(first) {
                    coeff = c;
                    rest = body[first.len()..].trim();
                }
            }
            let mut raw = Vec::new();
            if !rest.is_empty() {
                for factor in rest.split('*') {
                    let factor = factor.trim();
                    let (name, power) = match factor.split_once('^') {
                        Some((n, k)) => (n.trim(), k.trim().parse::<usize>().map_err(|_| err())?),
                        None => (factor, 1),
                    };
                    let g = algebra.generator_index(name)?;
                    raw.extend(std::iter::repeat_n(g, power));
                }
            }
            if neg {
                coeff = -coeff;
            }
            let term = Self::product_of(algebra, &raw, coeff)?;
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term).map_err(|e| match e {
                    Error::DegreeMismatch { .. } => Error::Inhomogeneous,
                    e => e,
                })?,
            });
        }
        out.ok_or_else(err)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(Error::MismatchedAlgebras);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree as i64, found: other.degree as i64 });
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }

    pub fn scale(&self, s: &F) -> Self {
        if s.is_zero() {
            return Self::zero(&self.algebra, self.degree);
        }
        Self {
            algebra: Arc::clone(&self.algebra),
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Graded-commutative product. Terms above the algebra's degree cap are
    /// truncated.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&self.algebra, degree);
        if degree > self.algebra.max_degree() {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `self^k`, with `self^0 = 1`.
    pub fn power(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.wedge(self)?;
        }
        Ok(acc)
    }

    /// Coordinates in the monomial basis of this element's degree.
    pub fn to_vector(&self) -> Vec<F> {
        let mut v = vec![F::zero(); self.algebra.dim(self.degree)];
        for (m, c) in &self.terms {
            let i = self.algebra.basis_index(m).expect("term outside basis");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vector(algebra: &Arc<GradedAlgebra>, degree: usize, v: &[F]) -> Self {
        let basis = algebra.basis(degree);
        assert_eq!(basis.len(), v.len(), "vector length does not match basis of degree {degree}");
        let mut out = Self::zero(algebra, degree);
        for (m, c) in basis.iter().zip(v) {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Re-expresses this element in an algebra whose leading generators are
    /// the generators of this element's algebra.
    pub fn rebase(&self, target: &Arc<GradedAlgebra>) -> Result<Self> {
        if !target.extends(&self.algebra) {
            return Err(Error::MismatchedAlgebras);
        }
        let mut out = Self::zero(target, self.degree);
        if self.degree <= target.max_degree() {
            for (m, c) in &self.terms {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }
}

impl<F: Scalar> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = *c < F::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mono = self.algebra.format_monomial(m);
            if m.is_unit() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs} {mono}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(deg {}: {})", self.degree, self)
    }
}
