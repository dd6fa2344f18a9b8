use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Self { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// A canonical product of generators: indices sorted ascending, odd
/// generators at most once, even generators repeated by multiplicity.
///
/// Ordering is lexicographic on the index sequence, which is the fixed
/// monomial order used for bases and echelon pivots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    gens: SmallVec<[u16; 8]>,
    odd: u64,
}

impl Monomial {
    pub fn unit() -> Self {
        Self { gens: SmallVec::new(), odd: 0 }
    }

    pub fn generators(&self) -> &[u16] {
        &self.gens
    }

    /// Bitmask of the odd generators present.
    pub fn odd_mask(&self) -> u64 {
        self.odd
    }

    pub fn is_unit(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Product of two canonical monomials with its Koszul sign, or `None`
    /// when an odd generator would repeat.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.odd & other.odd != 0 {
            return None;
        }
        let mut negative = false;
        let mut rest = other.odd;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            let above = self.odd.checked_shr(b + 1).unwrap_or(0);
            if above.count_ones() % 2 == 1 {
                negative = !negative;
            }
        }
        let mut gens: SmallVec<[u16; 8]> = SmallVec::with_capacity(self.gens.len() + other.gens.len());
        let (mut i, mut j) = (0, 0);
        while i < self.gens.len() || j < other.gens.len() {
            if j == other.gens.len() || (i < self.gens.len() && self.gens[i] <= other.gens[j]) {
                gens.push(self.gens[i]);
                i += 1;
            } else {
                gens.push(other.gens[j]);
                j += 1;
            }
        }
        Some((Monomial { gens, odd: self.odd | other.odd }, negative))
    }
}

/// Sign of reordering a raw generator sequence into canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }
}

/// Free graded-commutative algebra on finitely many generators, truncated
/// above `max_degree`.
#[derive(Clone)]
pub struct GradedAlgebra {
    generators: Vec<Generator>,
    odd_mask: u64,
    max_degree: usize,
    basis: Vec<Vec<Monomial>>,
    index: Vec<HashMap<Monomial, usize>>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.max_degree == other.max_degree && self.generators == other.generators
    }
}

impl Eq for GradedAlgebra {}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}:{}", g.name, g.degree)).collect();
        write!(f, "GradedAlgebra[{}; max degree {}]", gens.join(", "), self.max_degree)
    }
}

impl GradedAlgebra {
    /// `max_degree = None` uses the top degree of the exterior part, which is
    /// only allowed when every generator is odd.
    pub fn new(generators: Vec<Generator>, max_degree: Option<usize>) -> Result<Arc<Self>> {
        if generators.len() > 64 {
            return Err(Error::TooManyGenerators(generators.len()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut odd_mask = 0u64;
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::ZeroDegreeGenerator(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
            if g.is_odd() {
                odd_mask |= 1 << i;
            }
        }
        let max_degree = match max_degree {
            Some(d) => d,
            None => {
                if generators.iter().any(|g| !g.is_odd()) {
                    return Err(Error::Refused("algebras with even generators need an explicit degree cap".into()));
                }
                generators.iter().map(|g| g.degree).sum()
            }
        };
        let mut basis = vec![Vec::new(); max_degree + 1];
        enumerate_monomials(&generators, 0, 0, max_degree, &mut Vec::new(), &mut basis);
        let mut index = Vec::with_capacity(basis.len());
        for mons in basis.iter_mut() {
            mons.sort();
            index.push(mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
        }
        Ok(Arc::new(Self { generators, odd_mask, max_degree, basis, index }))
    }

    /// Exterior algebra on degree-1 generators with the given names.
    pub fn exterior<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| Generator::new(n.as_ref(), 1)).collect(), None)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators.iter().position(|g| g.name == name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// True when every generator has degree one (Chevalley–Eilenberg type).
    pub fn is_exterior(&self) -> bool {
        self.generators.iter().all(|g| g.degree == 1)
    }

    pub fn basis(&self, degree: usize) -> &[Monomial] {
        self.basis.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        let p = self.monomial_degree(m);
        self.index.get(p)?.get(m).copied()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> usize {
        m.gens.iter().map(|&g| self.generators[g as usize].degree).sum()
    }

    pub fn generator_monomial(&self, index: usize) -> Monomial {
        let mut gens = SmallVec::new();
        gens.push(index as u16);
        let odd = if self.odd_mask >> index & 1 == 1 { 1 << index } else { 0 };
        Monomial { gens, odd }
    }

    /// Sorts a raw generator sequence, tracking the Koszul sign.
    pub fn canonicalize(&self, raw: &[usize]) -> Result<(Monomial, Sign)> {
        for &g in raw {
            if g >= self.generators.len() {
                return Err(Error::UnknownGenerator(format!("#{g}")));
            }
        }
        let is_odd = |g: usize| self.odd_mask >> g & 1 == 1;
        let mut negative = false;
        for i in 0..raw.len() {
            if !is_odd(raw[i]) {
                continue;
            }
            for j in i + 1..raw.len() {
                if !is_odd(raw[j]) {
                    continue;
                }
                if raw[i] == raw[j] {
                    return Ok((Monomial::unit(), Sign::Zero));
                }
                if raw[i] > raw[j] {
                    negative = !negative;
                }
            }
        }
        let mut gens: SmallVec<[u16; 8]> = raw.iter().map(|&g| g as u16).collect();
        gens.sort_unstable();
        let odd = raw.iter().filter(|&&g| is_odd(g)).fold(0u64, |acc, &g| acc | 1 << g);
        Ok((Monomial { gens, odd }, if negative { Sign::Minus } else { Sign::Plus }))
    }

    pub fn canonicalize_names(&self, raw: &[&str]) -> Result<(Monomial, Sign)> {
        let idx = raw.iter().map(|n| self.generator_index(n)).collect::<Result<Vec<_>>>()?;
        self.canonicalize(&idx)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < m.gens.len() {
            let g = m.gens[i];
            let mut k = 1;
            while i + k < m.gens.len() && m.gens[i + k] == g {
                k += 1;
            }
            let name = &self.generators[g as usize].name;
            parts.push(if k == 1 { name.clone() } else { format!("{name}^{k}") });
            i += k;
        }
        parts.join("*")
    }

    /// Whether `prefix` has the same leading generators and this algebra
    /// extends it, so monomials of `prefix` are monomials here too.
    pub fn extends(&self, prefix: &GradedAlgebra) -> bool {
        prefix.generators.len() <= self.generators.len()
            && self.generators[..prefix.generators.len()] == prefix.generators[..]
    }
}

fn enumerate_monomials(
    gens: &[Generator],
    start: usize,
    degree: usize,
    max: usize,
    current: &mut Vec<u16>,
    out: &mut [Vec<Monomial>],
) {
    let odd = current.iter().filter(|&&g| gens[g as usize].is_odd()).fold(0u64, |acc, &g| acc | 1 << g);
    out[degree].push(Monomial { gens: current.iter().copied().collect(), odd });
    for i in start..gens.len() {
        let g = &gens[i];
        if degree + g.degree > max {
            continue;
        }
        current.push(i as u16);
        // Even generators may repeat, so recursion restarts at `i` for them.
        let next = if g.is_odd() { i + 1 } else { i };
        enumerate_monomials(gens, next, degree + g.degree, max, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn exterior_dimensions_are_binomial() {
        let a = GradedAlgebra::exterior(&["e1", "e2", "e3", "e4", "e5"]).unwrap();
        assert_eq!(a.max_degree(), 5);
        for p in 0..=5 {
            assert_eq!(a.dim(p), binom(5, p));
        }
        let names: Vec<String> = a.basis(2).iter().map(|m| a.format_monomial(m)).collect();
        assert_eq!(names[..4], ["e1*e2", "e1*e3", "e1*e4", "e1*e5"]);
    }

    #[test]
    fn mixed_degrees() {
        let a = GradedAlgebra::new(vec![Generator::new("x", 1), Generator::new("y", 2)], Some(5)).unwrap();
        // degree 4: y^2 ; degree 5: x*y^2
        assert_eq!(a.dim(4), 1);
        assert_eq!(a.dim(5), 1);
        assert_eq!(a.format_monomial(&a.basis(5)[0]), "x*y^2");
        assert!(GradedAlgebra::new(vec![Generator::new("y", 2)], None).is_err());
    }

    #[test]
    fn canonicalize_signs() {
        let a = GradedAlgebra::exterior(&["e1", "e2", "e3"]).unwrap();
        let (m, s) = a.canonicalize_names(&["e3", "e1"]).unwrap();
        assert_eq!((a.format_monomial(&m).as_str(), s), ("e1*e3", Sign::Minus));
        let (m, s) = a.canonicalize_names(&["e1", "e2"]).unwrap();
        assert_eq!((a.format_monomial(&m).as_str(), s), ("e1*e2", Sign::Plus));
        let (_, s) = a.canonicalize_names(&["e2", "e2", "e1"]).unwrap();
        assert_eq!(s, Sign::Zero);
        assert!(matches!(a.canonicalize_names(&["e9"]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(matches!(
            GradedAlgebra::new(vec![Generator::new("a", 1), Generator::new("a", 1)], None),
            Err(Error::DuplicateGenerator(_))
        ));
        assert!(matches!(GradedAlgebra::new(vec![Generator::new("a", 0)], None), Err(Error::ZeroDegreeGenerator(_))));
    }
}
