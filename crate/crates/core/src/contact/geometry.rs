use std::fmt;

use super::model::{dot, LieModel};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Matrix};
use crate::scalar::Scalar;

/// The first tensor slot at which a check failed, and the offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub check: &'static str,
    pub slot: String,
    pub value: String,
}

impl Witness {
    pub(crate) fn new(check: &'static str, slot: impl Into<String>, value: impl Into<String>) -> Self {
        Self { check, slot: slot.into(), value: value.into() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.check, self.slot, self.value)
    }
}

/// Outcome of a tensor identity: `Err` carries the first failing slot.
pub type Check = std::result::Result<(), Witness>;

/// Renders a vector in the frame `X1..Xd`, e.g. `1/2 X1 - X3`.
pub fn format_vector<F: Scalar>(v: &[F]) -> String {
    format_combination(v, "X")
}

/// Renders a covector in the coframe `e1..ed`.
pub fn format_covector<F: Scalar>(v: &[F]) -> String {
    format_combination(v, "e")
}

fn format_combination<F: Scalar>(v: &[F], prefix: &str) -> String {
    let mut out = String::new();
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = *c < F::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format!("{abs} "));
        }
        out.push_str(&format!("{prefix}{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn pair(i: usize, j: usize) -> String {
    format!("(X{}, X{})", i + 1, j + 1)
}

/// Levi-Civita connection of a left-invariant metric:
/// `∇_{X_i} X_j = Σ_k Γ^k_{ij} X_k`.
#[derive(Clone, Debug)]
pub struct Connection<F: Scalar> {
    dim: usize,
    // gamma[i * dim + j] = ∇_{X_i} X_j
    gamma: Vec<Vec<F>>,
}

impl<F: Scalar> Connection<F> {
    /// `∇_{X_i} X_j`.
    pub fn derivative(&self, i: usize, j: usize) -> &[F] {
        &self.gamma[i * self.dim + j]
    }

    /// `Γ^k_{ij}`.
    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &F {
        &self.gamma[i * self.dim + j][k]
    }

    /// `∇_{X_i} V` for a left-invariant vector field `V`.
    pub fn along(&self, i: usize, v: &[F]) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (o, g) in out.iter_mut().zip(self.derivative(i, j)) {
                *o = o.clone() + vj.clone() * g.clone();
            }
        }
        out
    }

    /// `∇_X Y − ∇_Y X − [X, Y]` on basis pairs.
    pub fn torsion_free(&self, m: &LieModel<F>) -> Check {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let br = m.bracket(&m.basis_vector(i), &m.basis_vector(j));
                let t: Vec<F> = (0..self.dim)
                    .map(|k| self.christoffel(i, j, k).clone() - self.christoffel(j, i, k).clone() - br[k].clone())
                    .collect();
                if !is_zero_vec(&t) {
                    return Err(Witness::new("torsion", pair(i, j), format_vector(&t)));
                }
            }
        }
        Ok(())
    }

    /// `g(∇_{X_i} X_j, X_k) + g(X_j, ∇_{X_i} X_k) = 0`.
    pub fn metric_compatible(&self, m: &LieModel<F>) -> Check {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = m.inner(self.derivative(i, j), &m.basis_vector(k))
                        + m.inner(&m.basis_vector(j), self.derivative(i, k));
                    if !v.is_zero() {
                        return Err(Witness::new("∇g", format!("X{} on {}", i + 1, pair(j, k)), v.to_string()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Connection coefficients from the Koszul formula
/// `2g(∇_{X_i}X_j, X_k) = g([X_i,X_j],X_k) − g([X_j,X_k],X_i) + g([X_k,X_i],X_j)`.
/// The result is checked to be torsion-free and metric.
pub fn levi_civita<F: Scalar>(m: &LieModel<F>) -> Result<Connection<F>> {
    let n = m.dim();
    let e = |i| m.basis_vector(i);
    let half = F::from_frac(1, 2);
    let mut gamma = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let lowered: Vec<F> = (0..n)
                .map(|k| {
                    let a = m.inner(&m.bracket(&e(i), &e(j)), &e(k));
                    let b = m.inner(&m.bracket(&e(j), &e(k)), &e(i));
                    let c = m.inner(&m.bracket(&e(k), &e(i)), &e(j));
                    (a - b + c) * half.clone()
                })
                .collect();
            gamma.push(m.sharp(&lowered));
        }
    }
    let conn = Connection { dim: n, gamma };
    let failed = conn.torsion_free(m).err().or_else(|| conn.metric_compatible(m).err());
    if let Some(w) = failed {
        return Err(Error::InvalidModel(format!("Koszul connection failed a self-check: {w}")));
    }
    Ok(conn)
}

/// `(L_X g)(X_a, X_b) = −g([X, X_a], X_b) − g(X_a, [X, X_b])` on basis pairs.
pub fn killing_check<F: Scalar>(m: &LieModel<F>, x: &[F]) -> Check {
    let n = m.dim();
    for a in 0..n {
        for b in a..n {
            let ea = m.basis_vector(a);
            let eb = m.basis_vector(b);
            let v = -m.inner(&m.bracket(x, &ea), &eb) - m.inner(&ea, &m.bracket(x, &eb));
            if !v.is_zero() {
                return Err(Witness::new("L_ξ g", pair(a, b), v.to_string()));
            }
        }
    }
    Ok(())
}

pub fn is_killing<F: Scalar>(m: &LieModel<F>, x: &[F]) -> bool {
    killing_check(m, x).is_ok()
}

/// A left-invariant tensor whose parallelism can be tested.
#[derive(Debug, Clone, Copy)]
pub enum Tensor<'a, F: Scalar> {
    Vector(&'a [F]),
    Covector(&'a [F]),
    /// A (1,1)-tensor acting on column vectors.
    Endomorphism(&'a Matrix<F>),
}

/// `∇T = 0`, checked along every basis direction.
pub fn parallel_check<F: Scalar>(m: &LieModel<F>, conn: &Connection<F>, t: Tensor<'_, F>) -> Check {
    let n = m.dim();
    for i in 0..n {
        match t {
            Tensor::Vector(v) => {
                let d = conn.along(i, v);
                if !is_zero_vec(&d) {
                    return Err(Witness::new("∇V", format!("X{}", i + 1), format_vector(&d)));
                }
            }
            Tensor::Covector(nu) => {
                for j in 0..n {
                    let v = -dot(nu, conn.derivative(i, j));
                    if !v.is_zero() {
                        return Err(Witness::new("∇ν", pair(i, j), v.to_string()));
                    }
                }
            }
            Tensor::Endomorphism(a) => {
                for j in 0..n {
                    let aj = a.column(j);
                    let first = conn.along(i, &aj);
                    let second = a.mul_vec(conn.derivative(i, j));
                    let d: Vec<F> = first.into_iter().zip(second).map(|(x, y)| x - y).collect();
                    if !is_zero_vec(&d) {
                        return Err(Witness::new("∇J", pair(i, j), format_vector(&d)));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn is_parallel<F: Scalar>(m: &LieModel<F>, conn: &Connection<F>, t: Tensor<'_, F>) -> bool {
    parallel_check(m, conn, t).is_ok()
}

/// Nijenhuis torsion `[J,J](X,Y) = J²[X,Y] + [JX,JY] − J[JX,Y] − J[X,JY]`.
pub fn nijenhuis<F: Scalar>(m: &LieModel<F>, j: &Matrix<F>, x: &[F], y: &[F]) -> Vec<F> {
    let jx = j.mul_vec(x);
    let jy = j.mul_vec(y);
    let a = j.mul_vec(&j.mul_vec(&m.bracket(x, y)));
    let b = m.bracket(&jx, &jy);
    let c = j.mul_vec(&m.bracket(&jx, y));
    let d = j.mul_vec(&m.bracket(x, &jy));
    (0..m.dim()).map(|k| a[k].clone() + b[k].clone() - c[k].clone() - d[k].clone()).collect()
}

/// `[J,J] + 2dη⊗ξ = 0` on basis pairs, where `2dη(X,Y) = Xη(Y) − Yη(X) − η([X,Y])`,
/// which is `−η([X,Y])` on left-invariant fields.
pub fn normality_check<F: Scalar>(m: &LieModel<F>) -> Result<Check> {
    let j = m.require_j()?;
    let xi = m.require_xi()?;
    let eta = m.require_eta()?;
    let n = m.dim();
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (m.basis_vector(a), m.basis_vector(b));
            let nj = nijenhuis(m, j, &x, &y);
            let two_d_eta = -dot(eta, &m.bracket(&x, &y));
            let total: Vec<F> = nj.iter().zip(xi).map(|(t, s)| t.clone() + two_d_eta.clone() * s.clone()).collect();
            if !is_zero_vec(&total) {
                let value = format!("[J,J] = {}, 2dη = {}", format_vector(&nj), two_d_eta);
                return Ok(Err(Witness::new("[J,J] + 2dη⊗ξ", pair(a, b), value)));
            }
        }
    }
    Ok(Ok(()))
}
